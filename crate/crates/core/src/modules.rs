//! Weight modules `M^α_{S,K}[μ]` on the homology of abelian Springer fibres.
//!
//! The small flavor (`K = K_{S,μ}`) has basis `|σ⟩`, `σ ∈ Z^k`, with
//! coefficients in `ℏ` and `y_i` (`i ∈ S`); it is linear over those
//! coefficients. The big flavor (`K = L_{S,μ}`) has basis `|[σ]⟩` indexed
//! by the coarse weight `(σ_i)_{i∉S}` with coefficients in `ℏ` and `x_i`
//! (`i ∈ S`); there the `x_i` act by left multiplication, so `r^λ` moves a
//! coefficient `f(x)` to `f(x - λℏ)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
pub use crate::lattice::{Flavor, ModuleSignature};
use crate::lattice::{dot, lattice_box, Sign, TorusDatum};
use crate::poly::{eval_at_restricted, weight_eigenvalue, GTPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVector {
    sig: Arc<ModuleSignature>,
    entries: BTreeMap<Vec<i64>, GTPoly>,
}

impl ModuleVector {
    pub fn zero(sig: Arc<ModuleSignature>) -> Self {
        Self { sig, entries: BTreeMap::new() }
    }

    pub fn signature(&self) -> &Arc<ModuleSignature> {
        &self.sig
    }

    /// Weight key to coefficient. Keys are `σ` for the small flavor and
    /// `(σ_i)_{i∉S}` for the big one.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<i64>, &GTPoly)> {
        self.entries.iter()
    }

    pub fn coefficient(&self, key: &[i64]) -> Option<&GTPoly> {
        self.entries.get(key)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds `coefficient · |key⟩`, dropping keys outside the support.
    pub fn add_entry(&mut self, key: Vec<i64>, coefficient: GTPoly) {
        if coefficient.is_zero() || !key_in_support(&self.sig, &key) {
            return;
        }
        match self.entries.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        for (k, c) in &other.entries {
            out.add_entry(k.clone(), c.clone());
        }
        out
    }
}

/// Key of the basis vector for the cocharacter `σ`.
pub fn weight_key(sig: &ModuleSignature, sigma: &[i64]) -> Vec<i64> {
    match sig.flavor() {
        Flavor::Small => sigma.to_vec(),
        Flavor::Big => {
            let restricted = sig.datum().restrict(sigma);
            sig.complement().into_iter().map(|i| restricted[i]).collect()
        }
    }
}

fn key_in_support(sig: &ModuleSignature, key: &[i64]) -> bool {
    match sig.flavor() {
        Flavor::Small => sig.in_support(key),
        Flavor::Big => sig
            .complement()
            .into_iter()
            .zip(key)
            .all(|(i, &v)| {
                let a = sig.alpha()[i].value();
                a * v >= a * sig.mu()[i]
            }),
    }
}

/// Restricted weight lookup for a key (only `i ∉ S` for the big flavor).
fn restricted_of_key(sig: &ModuleSignature, key: &[i64]) -> Vec<i64> {
    match sig.flavor() {
        Flavor::Small => sig.datum().restrict(key),
        Flavor::Big => {
            let mut out = vec![0; sig.datum().n()];
            for (i, &v) in sig.complement().into_iter().zip(key) {
                out[i] = v;
            }
            out
        }
    }
}

fn shift_key(sig: &ModuleSignature, key: &[i64], lambda: &[i64], lambda_r: &[i64]) -> Vec<i64> {
    match sig.flavor() {
        Flavor::Small => key.iter().zip(lambda).map(|(a, b)| a + b).collect(),
        Flavor::Big => sig
            .complement()
            .into_iter()
            .zip(key)
            .map(|(i, v)| v + lambda_r[i])
            .collect(),
    }
}

/// `|σ⟩`, or the zero vector when `σ` lies outside the support.
pub fn basis_vector(sig: &Arc<ModuleSignature>, sigma: &[i64]) -> Result<ModuleVector> {
    sig.datum().check_cocharacter(sigma)?;
    let mut v = ModuleVector::zero(sig.clone());
    let n = sig.datum().n();
    v.add_entry(weight_key(sig, sigma), GTPoly::one(n));
    Ok(v)
}

/// `∏_{α_iλ_i<0} [x_i]^{λ_i}`: the Gelfand-Tsetlin factor that `r^λ`
/// produces in front of the target vector.
fn monopole_factor(sig: &ModuleSignature, lambda_r: &[i64]) -> GTPoly {
    let n = sig.datum().n();
    let mut out = GTPoly::one(n);
    for (i, (&l, a)) in lambda_r.iter().zip(sig.alpha()).enumerate() {
        if a.value() * l < 0 {
            out = &out * &GTPoly::bracket(n, i, l);
        }
    }
    out
}

/// Coefficient of `|σ+λ⟩` in `r^λ|σ⟩`, computed even when the target lies
/// outside the support. Expanded, this is
/// `∏_{α_iλ_i<0} ∏_{j=1}^{|λ_i|} (y_iδ_{i∈S} + (λ_i + σ_i + α_i j - μ_i)ℏ)`.
pub fn action_coefficient(sig: &ModuleSignature, sigma: &[i64], lambda: &[i64]) -> Result<GTPoly> {
    sig.datum().check_cocharacter(sigma)?;
    sig.datum().check_cocharacter(lambda)?;
    let lambda_r = sig.datum().restrict(lambda);
    let key = weight_key(sig, sigma);
    let target = shift_key(sig, &key, lambda, &lambda_r);
    let restricted = restricted_of_key(sig, &target);
    Ok(eval_at_restricted(&monopole_factor(sig, &lambda_r), sig, &|i| restricted[i]))
}

/// The action of an algebra element on a module vector.
pub fn act(a: &AlgebraElement, v: &ModuleVector) -> Result<ModuleVector> {
    let sig = v.signature();
    if a.datum() != sig.datum() {
        return Err(Error::DatumMismatch);
    }
    let datum = sig.datum();
    let mut out = ModuleVector::zero(sig.clone());
    for (lambda, p) in a.terms() {
        let lambda_r = datum.restrict(lambda);
        let operator = p * &monopole_factor(sig, &lambda_r);
        let back: Vec<i64> = lambda_r.iter().map(|l| -l).collect();
        for (key, f) in v.entries() {
            let target = shift_key(sig, key, lambda, &lambda_r);
            if !key_in_support(sig, &target) {
                continue;
            }
            let restricted = restricted_of_key(sig, &target);
            let coefficient = eval_at_restricted(&operator, sig, &|i| restricted[i]);
            let carried = match sig.flavor() {
                Flavor::Small => f.clone(),
                Flavor::Big => f.shift_unchecked(&back),
            };
            out.add_entry(target, &coefficient * &carried);
        }
    }
    Ok(out)
}

/// Eigenvalue of `x_i` on `|σ⟩` (zero-based `i`).
pub fn gt_eigenvalue(sig: &ModuleSignature, sigma: &[i64], i: usize) -> Result<GTPoly> {
    let n = sig.datum().n();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i + 1, len: n });
    }
    sig.datum().check_cocharacter(sigma)?;
    if !sig.in_support(sigma) {
        return Err(Error::OutsideSupport(format!("{sigma:?}")));
    }
    if sig.flavor() == Flavor::Big && sig.in_subset(i) {
        return Ok(GTPoly::x(n, i));
    }
    Ok(weight_eigenvalue(sig, i, sig.datum().restrict_weight(i, sigma)?))
}

pub fn is_category_o(sig: &ModuleSignature, chi: &[i64]) -> Result<bool> {
    sig.datum().check_cocharacter(chi)?;
    Ok(sig.support_polytope().is_bounded_above(chi))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Neumann,
    GenericDirichlet,
    ExceptionalDirichlet,
    Other,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VermaStatus {
    Verma,
    CoVerma,
    Neither,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationResult {
    pub label: Label,
    pub in_category_o: bool,
    pub verma_status: VermaStatus,
    pub sigma_max: Option<Vec<i64>>,
}

/// Boundary type of the signature and, for exceptional Dirichlet modules in
/// category 𝒪, the Verma/co-Verma status at the apex `σ_max`.
pub fn classify(sig: &ModuleSignature, chi: &[i64]) -> Result<ClassificationResult> {
    let datum = sig.datum();
    let n = datum.n();
    let in_o = is_category_o(sig, chi)?;
    let label = if sig.subset().len() == n {
        Label::Neumann
    } else if sig.subset().is_empty() {
        Label::GenericDirichlet
    } else if datum.is_basis_complement(sig.subset()) {
        Label::ExceptionalDirichlet
    } else {
        Label::Other
    };
    let mut result = ClassificationResult {
        label,
        in_category_o: in_o,
        verma_status: VermaStatus::NotApplicable,
        sigma_max: None,
    };
    if label == Label::ExceptionalDirichlet && in_o {
        let apex = datum.solve_on_complement(sig.subset(), sig.mu())?;
        let restricted = datum.restrict(&apex);
        // α_i x_i(σ_max) = α_i(σ_i - μ_i) + 1/2 is never zero; compare the
        // doubled value.
        let signs: Vec<i64> = sig
            .subset()
            .iter()
            .map(|&i| {
                let a = sig.alpha()[i].value();
                2 * a * (restricted[i] - sig.mu()[i]) + 1
            })
            .collect();
        result.verma_status = if signs.iter().all(|&s| s < 0) {
            VermaStatus::Verma
        } else if signs.iter().all(|&s| s > 0) {
            VermaStatus::CoVerma
        } else {
            VermaStatus::Neither
        };
        result.sigma_max = Some(apex);
    }
    Ok(result)
}

/// Apex of the support cone of an exceptional subset, after checking the
/// module is in category 𝒪.
fn highest_weight(sig: &ModuleSignature, chi: &[i64]) -> Result<Vec<i64>> {
    let datum = sig.datum();
    if !datum.is_basis_complement(sig.subset()) {
        return Err(Error::Precondition(format!(
            "{{x̄_i : i ∉ S}} is not a basis for S = {}",
            crate::lattice::format_subset(sig.subset())
        )));
    }
    if !is_category_o(sig, chi)? {
        return Err(Error::Precondition(format!("module is not in category O for chi = {chi:?}")));
    }
    datum.solve_on_complement(sig.subset(), sig.mu())
}

/// Eigenvalues of every `x_i` on `|σ_max⟩`, as `(i, eigenvalue)` with
/// zero-based `i`. Also verifies `r^λ|σ_max⟩ = 0` for all `|λ|_∞ <= radius`
/// with `<χ, λ> > 0`.
pub fn highest_weight_table(sig: &Arc<ModuleSignature>, chi: &[i64], radius: u32) -> Result<Vec<(usize, GTPoly)>> {
    let apex = highest_weight(sig, chi)?;
    let top = basis_vector(sig, &apex)?;
    let datum = sig.datum().clone();
    for lambda in lattice_box(datum.k(), radius) {
        if dot(chi, &lambda) <= 0 {
            continue;
        }
        let raised = act(&AlgebraElement::monopole(datum.clone(), &lambda)?, &top)?;
        if !raised.is_zero() {
            return Err(Error::Precondition(format!(
                "r^{lambda:?} does not annihilate the apex {apex:?}"
            )));
        }
    }
    (0..datum.n())
        .map(|i| gt_eigenvalue(sig, &apex, i).map(|e| (i, e)))
        .collect()
}

/// Ranks of the weight spaces `d = 0..=max_degree` levels below the top of
/// the support, counting each lattice point once.
pub fn character_series(sig: &ModuleSignature, chi: &[i64], max_degree: u32) -> Result<Vec<(u32, u64)>> {
    if !is_category_o(sig, chi)? {
        return Err(Error::Unbounded(format!("chi = {chi:?} is unbounded above on the support")));
    }
    let polytope = sig.support_polytope();
    let mut ranks = vec![0u64; max_degree as usize + 1];
    if let Some(top) = polytope.lattice_max(chi)? {
        for p in polytope.points_above(chi, top - max_degree as i64) {
            ranks[(top - dot(chi, &p)) as usize] += 1;
        }
    }
    Ok(ranks.into_iter().enumerate().map(|(d, r)| (d as u32, r)).collect())
}

/// Nonzero-ness of the action coefficient on the specialized module
/// (`y_i = 0`, where it matters only whether the polynomial vanishes).
fn specialized_edge(sig: &ModuleSignature, sigma: &[i64], lambda: &[i64]) -> bool {
    let fine = sig.with_flavor(Flavor::Small);
    action_coefficient(&fine, sigma, lambda)
        .map(|c| !c.drop_y().is_zero())
        .unwrap_or(false)
}

/// Boxed heuristic for simplicity of the specialized module `D_{α,S}[μ]`:
/// is the graph on boxed support points, with an edge `σ → σ+λ`
/// (`0 < |λ|_∞ <= 1`) whenever the action coefficient is nonzero, strongly
/// connected? Works on fine weights for either flavor. Not a proof.
pub fn simplicity_probe(sig: &ModuleSignature, radius: u32) -> bool {
    let points = sig.support_polytope().enumerate(radius);
    if points.len() <= 1 {
        return true;
    }
    let index: BTreeMap<&Vec<i64>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let steps: Vec<Vec<i64>> = lattice_box(sig.datum().k(), 1)
        .filter(|l| l.iter().any(|&v| v != 0))
        .collect();
    let mut forward = vec![Vec::new(); points.len()];
    let mut backward = vec![Vec::new(); points.len()];
    for (i, p) in points.iter().enumerate() {
        for step in &steps {
            let target: Vec<i64> = p.iter().zip(step).map(|(a, b)| a + b).collect();
            if let Some(&j) = index.get(&target) {
                if specialized_edge(sig, p, step) {
                    forward[i].push(j);
                    backward[j].push(i);
                }
            }
        }
    }
    reach(&forward, 0).len() == points.len() && reach(&backward, 0).len() == points.len()
}

fn reach(adjacency: &[Vec<usize>], start: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &w in &adjacency[u] {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Boxed support points reachable from `start` by lowering monopoles
/// (`<χ, λ> < 0`, `|λ|_∞ <= radius`) with nonzero specialized coefficients,
/// staying inside the box.
pub fn lowering_reach(sig: &ModuleSignature, chi: &[i64], start: &[i64], radius: u32) -> BTreeSet<Vec<i64>> {
    let points: BTreeSet<Vec<i64>> = sig.support_polytope().enumerate(radius).into_iter().collect();
    let steps: Vec<Vec<i64>> = lattice_box(sig.datum().k(), radius)
        .filter(|l| dot(chi, l) < 0)
        .collect();
    let mut seen = BTreeSet::new();
    if !points.contains(start) {
        return seen;
    }
    seen.insert(start.to_vec());
    let mut queue = VecDeque::from([start.to_vec()]);
    while let Some(p) = queue.pop_front() {
        for step in &steps {
            let target: Vec<i64> = p.iter().zip(step).map(|(a, b)| a + b).collect();
            if points.contains(&target) && !seen.contains(&target) && specialized_edge(sig, &p, step) {
                seen.insert(target.clone());
                queue.push_back(target);
            }
        }
    }
    seen
}

/// One row per exceptional subset whose module is in category 𝒪: the
/// subset and the highest weight eigenvalue table of `M^α_S[μ]`.
pub fn hikita_fixed_point_table(
    datum: &Arc<TorusDatum>,
    alpha: &[Sign],
    mu: &[i64],
    chi: &[i64],
    radius: u32,
) -> Result<Vec<(BTreeSet<usize>, Vec<(usize, GTPoly)>)>> {
    datum.check_cocharacter(chi)?;
    let mut rows = Vec::new();
    for subset in datum.exceptional_subsets() {
        let sig = Arc::new(ModuleSignature::new(
            datum.clone(),
            alpha.to_vec(),
            subset.clone(),
            mu.to_vec(),
            Flavor::Small,
        )?);
        if is_category_o(&sig, chi)? {
            rows.push((subset, highest_weight_table(&sig, chi, radius)?));
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn half() -> Rational {
        Rational::new(1.into(), 2.into())
    }

    fn sig(iota: Vec<Vec<i64>>, alpha: &str, s: &[usize], mu: Vec<i64>, flavor: Flavor) -> Arc<ModuleSignature> {
        let k = iota[0].len();
        let datum = Arc::new(TorusDatum::new(k, iota).unwrap());
        Arc::new(
            ModuleSignature::new(datum, Sign::parse_vector(alpha).unwrap(), s.iter().copied().collect(), mu, flavor)
                .unwrap(),
        )
    }

    fn sqed(s: &[usize]) -> Arc<ModuleSignature> {
        sig(vec![vec![1]], "-", s, vec![0], Flavor::Small)
    }

    fn pair(s: &[usize], mu: Vec<i64>) -> Arc<ModuleSignature> {
        sig(vec![vec![1], vec![-1]], "--", s, mu, Flavor::Small)
    }

    fn r(sig: &ModuleSignature, l: &[i64]) -> AlgebraElement {
        AlgebraElement::monopole(sig.datum().clone(), l).unwrap()
    }

    #[test]
    fn basis_vectors_respect_support() {
        let m = sqed(&[]);
        assert_eq!(basis_vector(&m, &[-2]).unwrap().coefficient(&[-2]), Some(&GTPoly::one(1)));
        assert!(basis_vector(&m, &[1]).unwrap().is_zero());
        let m = sqed(&[0]);
        assert!(!basis_vector(&m, &[7]).unwrap().is_zero());
    }

    #[test]
    fn sqed_action() {
        let m = sqed(&[]);
        let v = act(&r(&m, &[1]), &basis_vector(&m, &[-1]).unwrap()).unwrap();
        assert_eq!(v.entries().count(), 1);
        assert_eq!(v.coefficient(&[0]), Some(&-GTPoly::h(1)));
        let v = act(&r(&m, &[-1]), &basis_vector(&m, &[0]).unwrap()).unwrap();
        assert_eq!(v.coefficient(&[-1]), Some(&GTPoly::one(1)));
        let v = act(&r(&m, &[1]), &basis_vector(&m, &[0]).unwrap()).unwrap();
        assert!(v.is_zero());
        assert!(action_coefficient(&m, &[0], &[1]).unwrap().is_zero());
    }

    #[test]
    fn faithful_module_reproduces_products() {
        // With S = {1} the support is everything and y_1 is free.
        let m = sqed(&[0]);
        let up_down = r(&m, &[1]).multiply(&r(&m, &[-1])).unwrap();
        for s in -3..=3 {
            let v = basis_vector(&m, &[s]).unwrap();
            let lhs = act(&up_down, &v).unwrap();
            let rhs = act(&r(&m, &[1]), &act(&r(&m, &[-1]), &v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn eigenvalues() {
        let h = GTPoly::h(1);
        assert_eq!(gt_eigenvalue(&sqed(&[]), &[0], 0).unwrap(), -h.scale(&half()));
        assert_eq!(gt_eigenvalue(&sqed(&[0]), &[0], 0).unwrap(), &GTPoly::y(1, 0) - &h.scale(&half()));
        let m = sig(vec![vec![1]], "+", &[], vec![3], Flavor::Small);
        assert_eq!(gt_eigenvalue(&m, &[3], 0).unwrap(), h.scale(&half()));
        assert!(gt_eigenvalue(&sqed(&[]), &[1], 0).is_err());
        assert!(gt_eigenvalue(&sqed(&[]), &[0], 1).is_err());
    }

    #[test]
    fn category_o() {
        assert!(is_category_o(&sqed(&[]), &[1]).unwrap());
        assert!(!is_category_o(&sqed(&[]), &[-1]).unwrap());
        assert!(!is_category_o(&sqed(&[0]), &[1]).unwrap());
        assert!(!is_category_o(&sqed(&[0]), &[-1]).unwrap());
    }

    #[test]
    fn classification() {
        let c = classify(&pair(&[1], vec![0, 0]), &[1]).unwrap();
        assert_eq!(c.label, Label::ExceptionalDirichlet);
        assert!(c.in_category_o);
        assert_eq!(c.verma_status, VermaStatus::CoVerma);
        assert_eq!(c.sigma_max, Some(vec![0]));

        let c = classify(&sqed(&[]), &[1]).unwrap();
        assert_eq!(c.label, Label::GenericDirichlet);
        assert!(simplicity_probe(&sqed(&[]), 3));

        assert_eq!(classify(&sqed(&[0]), &[1]).unwrap().label, Label::Neumann);
        assert_eq!(classify(&pair(&[0, 1], vec![0, 0]), &[1]).unwrap().label, Label::Neumann);
    }

    #[test]
    fn highest_weights() {
        let h = GTPoly::h(1);
        assert_eq!(
            highest_weight_table(&sqed(&[]), &[1], 3).unwrap(),
            vec![(0, -h.scale(&half()))]
        );
        let h = GTPoly::h(2);
        assert_eq!(
            highest_weight_table(&pair(&[1], vec![0, 0]), &[1], 3).unwrap(),
            vec![(0, -h.scale(&half())), (1, &GTPoly::y(2, 1) - &h.scale(&half()))]
        );
        let m = pair(&[1], vec![3, 0]);
        let table = highest_weight_table(&m, &[1], 3).unwrap();
        assert_eq!(classify(&m, &[1]).unwrap().sigma_max, Some(vec![3]));
        assert_eq!(table[0], (0, -h.scale(&half())));
        assert!(highest_weight_table(&sqed(&[]), &[-1], 3).is_err());
    }

    #[test]
    fn characters() {
        assert_eq!(
            character_series(&sqed(&[]), &[1], 3).unwrap(),
            vec![(0, 1), (1, 1), (2, 1), (3, 1)]
        );
        assert_eq!(
            character_series(&pair(&[], vec![0, 0]), &[1], 3).unwrap(),
            vec![(0, 1), (1, 0), (2, 0), (3, 0)]
        );
        assert!(matches!(character_series(&sqed(&[]), &[-1], 3), Err(Error::Unbounded(_))));
    }

    #[test]
    fn simplicity() {
        assert!(!simplicity_probe(&pair(&[1], vec![0, 0]), 3));
        assert!(simplicity_probe(&pair(&[], vec![0, 0]), 3));
    }

    #[test]
    fn lowering_from_apex() {
        // The co-Verma top cannot be lowered; the SQED ray can.
        let m = pair(&[1], vec![0, 0]);
        assert_eq!(lowering_reach(&m, &[1], &[0], 3).len(), 1);
        assert_eq!(lowering_reach(&sqed(&[]), &[1], &[0], 3).len(), 4);
    }

    #[test]
    fn hikita_rows() {
        let datum = Arc::new(TorusDatum::sqed1());
        let rows = hikita_fixed_point_table(&datum, &[Sign::Minus], &[0], &[1], 3).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].0.is_empty());
        assert_eq!(rows[0].1, vec![(0, -GTPoly::h(1).scale(&half()))]);

        let datum = Arc::new(TorusDatum::new(1, vec![vec![1], vec![-1]]).unwrap());
        let minus = [Sign::Minus, Sign::Minus];
        let rows = hikita_fixed_point_table(&datum, &minus, &[0, 0], &[1], 3).unwrap();
        let subsets: Vec<_> = rows.iter().map(|(s, _)| s.clone()).collect();
        assert_eq!(subsets, vec![[1].into_iter().collect::<BTreeSet<_>>()]);
        let plus = [Sign::Plus, Sign::Plus];
        let rows = hikita_fixed_point_table(&datum, &plus, &[0, 0], &[1], 3).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].0, [0].into_iter().collect());
    }

    #[test]
    fn big_flavor_shifts_coefficients() {
        let m = sig(vec![vec![1]], "-", &[0], vec![0], Flavor::Big);
        let v = basis_vector(&m, &[0]).unwrap();
        let a = AlgebraElement::gt(m.datum().clone(), GTPoly::x(1, 0)).unwrap();
        let xv = act(&a, &v).unwrap();
        assert_eq!(xv.coefficient(&[]), Some(&GTPoly::x(1, 0)));
        // r^{-1} x = (x + h) r^{-1}, and r^{-1} carries no bracket factor for α = -.
        let moved = act(&r(&m, &[-1]), &xv).unwrap();
        assert_eq!(moved.coefficient(&[]), Some(&(&GTPoly::x(1, 0) + &GTPoly::h(1))));
        let half_h = GTPoly::h(1).scale(&half());
        let raised = act(&r(&m, &[1]), &xv).unwrap();
        let x = GTPoly::x(1, 0);
        assert_eq!(raised.coefficient(&[]), Some(&(&(&x - &GTPoly::h(1)) * &(&x - &half_h))));
    }
}
