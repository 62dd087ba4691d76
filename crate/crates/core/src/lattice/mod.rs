//! Lattice data of an abelian gauge theory: the embedding of cocharacter
//! lattices, module signatures, support polytopes of Springer fibres and
//! exact polyhedral queries on them.

pub mod fm;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;
use fm::Constraint;

/// The exact sequence `1 -> G -> G~ -> F -> 1` recorded as the integer
/// matrix whose `i`-th row is the restricted weight `x̄_i` of the `i`-th
/// hypermultiplet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusDatum {
    n: usize,
    k: usize,
    iota: Vec<Vec<i64>>,
}

impl TorusDatum {
    pub fn new(k: usize, iota: Vec<Vec<i64>>) -> Result<Self> {
        let problems = Self::violations(k, &iota);
        if let Some(first) = problems.into_iter().next() {
            return Err(first);
        }
        Ok(Self { n: iota.len(), k, iota })
    }

    /// Every violated invariant, in a stable order.
    pub fn violations(k: usize, iota: &[Vec<i64>]) -> Vec<Error> {
        let mut out = Vec::new();
        if iota.is_empty() {
            out.push(Error::Dimension("n must be positive".into()));
            return out;
        }
        if k > iota.len() {
            out.push(Error::Dimension(format!("k = {k} exceeds n = {}", iota.len())));
            return out;
        }
        for (i, row) in iota.iter().enumerate() {
            if row.len() != k {
                out.push(Error::Dimension(format!(
                    "row {} of iota has length {}, expected k = {k}",
                    i + 1,
                    row.len()
                )));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let mut any_nonzero = k == 0;
        for rows in combinations(iota.len(), k) {
            let det = minor(iota, &rows);
            if det != 0 {
                any_nonzero = true;
            }
            if det.abs() > 1 {
                let label = rows
                    .iter()
                    .map(|r| (r + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                out.push(Error::NotUnimodular(label));
            }
        }
        if !any_nonzero {
            out.push(Error::RankDeficient(k));
        }
        out
    }

    /// SQED with one hypermultiplet: `G = G~ = C^*`.
    pub fn sqed1() -> Self {
        Self::new(1, vec![vec![1]]).expect("valid datum")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn iota(&self) -> &[Vec<i64>] {
        &self.iota
    }

    /// `λ_i = <x̄_i, λ>` with `i` zero based.
    pub fn restrict_weight(&self, i: usize, lambda: &[i64]) -> Result<i64> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i + 1, len: self.n });
        }
        self.check_cocharacter(lambda)?;
        Ok(dot(&self.iota[i], lambda))
    }

    /// All restricted weights `(λ_1, ..., λ_n)`.
    pub fn restrict(&self, lambda: &[i64]) -> Vec<i64> {
        debug_assert_eq!(lambda.len(), self.k);
        self.iota.iter().map(|row| dot(row, lambda)).collect()
    }

    pub fn check_cocharacter(&self, lambda: &[i64]) -> Result<()> {
        if lambda.len() != self.k {
            return Err(Error::Dimension(format!(
                "cocharacter has length {}, expected k = {}",
                lambda.len(),
                self.k
            )));
        }
        Ok(())
    }

    /// Is `{x̄_i : i ∉ subset}` a lattice basis of `Z^k`?
    pub fn is_basis_complement(&self, subset: &BTreeSet<usize>) -> bool {
        let rows: Vec<usize> = (0..self.n).filter(|i| !subset.contains(i)).collect();
        rows.len() == self.k && minor(&self.iota, &rows).abs() == 1
    }

    /// Subsets `S` with `|S^c| = k` whose complement rows form a basis.
    /// Complements are enumerated in lexicographic order.
    pub fn exceptional_subsets(&self) -> Vec<BTreeSet<usize>> {
        combinations(self.n, self.k)
            .into_iter()
            .filter(|rows| minor(&self.iota, rows).abs() == 1)
            .map(|rows| (0..self.n).filter(|i| !rows.contains(i)).collect())
            .collect()
    }

    /// The datum of the Lagrangian `N_α` written in its own coordinates:
    /// rows with `α_i = +` are negated.
    pub fn flipped(&self, alpha: &[Sign]) -> Self {
        let iota = self
            .iota
            .iter()
            .zip(alpha)
            .map(|(row, a)| row.iter().map(|v| -a.value() * v).collect())
            .collect();
        Self { n: self.n, k: self.k, iota }
    }

    /// Writes `x̄_j` for `j ∈ subset` in the basis `{x̄_i : i ∉ subset}`.
    /// Returns one row of coefficients (indexed like the complement, in
    /// increasing order) per element of `subset`.
    pub fn basis_coordinates(&self, subset: &BTreeSet<usize>) -> Result<Vec<Vec<i64>>> {
        if !self.is_basis_complement(subset) {
            return Err(Error::NotExceptional(format_subset(subset)));
        }
        let basis: Vec<usize> = (0..self.n).filter(|i| !subset.contains(i)).collect();
        let inverse = integer_inverse(&basis.iter().map(|&i| self.iota[i].clone()).collect::<Vec<_>>());
        Ok(subset
            .iter()
            .map(|&j| {
                // row_j = c . B  =>  c = row_j . B^{-1}
                (0..self.k)
                    .map(|col| (0..self.k).map(|t| self.iota[j][t] * inverse[t][col]).sum())
                    .collect()
            })
            .collect())
    }

    /// The unique cocharacter `σ` with `σ_i = target_i` for all `i ∉ subset`.
    pub fn solve_on_complement(&self, subset: &BTreeSet<usize>, target: &[i64]) -> Result<Vec<i64>> {
        if !self.is_basis_complement(subset) {
            return Err(Error::NotExceptional(format_subset(subset)));
        }
        let basis: Vec<usize> = (0..self.n).filter(|i| !subset.contains(i)).collect();
        let inverse = integer_inverse(&basis.iter().map(|&i| self.iota[i].clone()).collect::<Vec<_>>());
        let rhs: Vec<i64> = basis.iter().map(|&i| target[i]).collect();
        Ok((0..self.k)
            .map(|r| (0..self.k).map(|c| inverse[r][c] * rhs[c]).sum())
            .collect())
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn format_subset(s: &BTreeSet<usize>) -> String {
    let inner = s.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
    format!("{{{inner}}}")
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size <= n {
        rec(0, n, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Determinant of the square submatrix on the given rows (all columns).
fn minor(iota: &[Vec<i64>], rows: &[usize]) -> i128 {
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|&r| iota[r].iter().map(|&v| v as i128).collect())
        .collect();
    bareiss_det(m)
}

fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let size = m.len();
    if size == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for p in 0..size {
        if m[p][p] == 0 {
            match (p + 1..size).find(|&r| m[r][p] != 0) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in p + 1..size {
            for j in p + 1..size {
                m[i][j] = (m[i][j] * m[p][p] - m[i][p] * m[p][j]) / prev;
            }
        }
        prev = m[p][p];
    }
    sign * m[size - 1][size - 1]
}

/// Inverse of a unimodular integer matrix.
fn integer_inverse(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let size = b.len();
    let mut aug: Vec<Vec<Rational>> = b
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&v| Rational::from_integer(v.into())).collect();
            r.extend((0..size).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !aug[r][col].is_zero()).expect("unimodular");
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..size {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (v, p) in aug[r].iter_mut().zip(pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    aug.into_iter()
        .map(|row| {
            row[size..]
                .iter()
                .map(|v| {
                    debug_assert!(v.is_integer());
                    v.to_integer().to_i64().expect("small entries")
                })
                .collect()
        })
        .collect()
}

/// One coordinate of a sign vector `α ∈ {+,-}^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn parse_vector(s: &str) -> Result<Vec<Sign>> {
        s.chars()
            .map(|c| {
                Sign::from_char(c)
                    .ok_or_else(|| Error::Dimension(format!("invalid sign character {c:?} in alpha")))
            })
            .collect()
    }

    pub fn format_vector(alpha: &[Sign]) -> String {
        alpha.iter().map(|s| if *s == Sign::Plus { '+' } else { '-' }).collect()
    }
}

/// Which stabilizer the module is built from: `Small` is `K_{S,μ}` (fine
/// weights, coefficients in `y_i`), `Big` is `L_{S,μ}` (coarse weights,
/// coefficients in `x_i`, `i ∈ S`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Small,
    Big,
}

/// Selects the module `M^α_{S,K}[μ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleSignature {
    datum: Arc<TorusDatum>,
    alpha: Vec<Sign>,
    subset: BTreeSet<usize>,
    mu: Vec<i64>,
    flavor: Flavor,
}

impl ModuleSignature {
    /// `subset` holds zero-based indices.
    pub fn new(
        datum: Arc<TorusDatum>,
        alpha: Vec<Sign>,
        subset: BTreeSet<usize>,
        mu: Vec<i64>,
        flavor: Flavor,
    ) -> Result<Self> {
        let n = datum.n();
        if alpha.len() != n {
            return Err(Error::Dimension(format!("alpha has length {}, expected n = {n}", alpha.len())));
        }
        if mu.len() != n {
            return Err(Error::Dimension(format!("mu has length {}, expected n = {n}", mu.len())));
        }
        if let Some(&bad) = subset.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index: bad + 1, len: n });
        }
        Ok(Self { datum, alpha, subset, mu, flavor })
    }

    pub fn datum(&self) -> &Arc<TorusDatum> {
        &self.datum
    }

    pub fn alpha(&self) -> &[Sign] {
        &self.alpha
    }

    pub fn subset(&self) -> &BTreeSet<usize> {
        &self.subset
    }

    pub fn mu(&self) -> &[i64] {
        &self.mu
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn in_subset(&self, i: usize) -> bool {
        self.subset.contains(&i)
    }

    /// Indices `i ∉ S`, increasing.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.datum.n()).filter(|i| !self.subset.contains(i)).collect()
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        Self { flavor, ..self.clone() }
    }

    pub fn with_subset(&self, subset: BTreeSet<usize>) -> Self {
        Self { subset, ..self.clone() }
    }

    pub fn support_polytope(&self) -> SupportPolytope {
        let constraints = self
            .complement()
            .into_iter()
            .map(|i| {
                let a = self.alpha[i].value();
                let normal: Vec<i64> = self.datum.iota()[i].iter().map(|v| a * v).collect();
                (normal, a * self.mu[i])
            })
            .collect();
        SupportPolytope::from_lattice_constraints(self.datum.k(), constraints)
    }

    /// Direct valuation test: `(z^{-σ} c_{S,μ})_i` has non-negative
    /// valuation in the `N_α` coordinates for every `i ∉ S`.
    pub fn in_support(&self, sigma: &[i64]) -> bool {
        let restricted = self.datum.restrict(sigma);
        self.complement().into_iter().all(|i| {
            let valuation = match self.alpha[i] {
                Sign::Minus => self.mu[i] - restricted[i],
                Sign::Plus => restricted[i] - self.mu[i],
            };
            valuation >= 0
        })
    }
}

/// `{ξ : normal·ξ + offset > 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

/// `{σ ∈ Z^k : normal·σ >= bound}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeConstraint {
    pub normal: Vec<i64>,
    pub bound: i64,
}

/// Polytope whose lattice points index the Springer fibre. Both the strict
/// half-integral form and the equivalent integral form are kept; lattice
/// membership always uses the integral one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPolytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    lattice: Vec<LatticeConstraint>,
}

impl SupportPolytope {
    /// Builds the polytope from integral constraints `a·σ >= b`; the strict
    /// form is `a·ξ - b + 1/2 > 0`.
    pub fn from_lattice_constraints(dim: usize, constraints: Vec<(Vec<i64>, i64)>) -> Self {
        let half = Rational::new(1.into(), 2.into());
        let mut halfspaces = Vec::with_capacity(constraints.len());
        let mut lattice = Vec::with_capacity(constraints.len());
        for (normal, bound) in constraints {
            assert_eq!(normal.len(), dim, "constraint dimension");
            halfspaces.push(Halfspace {
                normal: normal.iter().map(|&v| Rational::from_integer(v.into())).collect(),
                offset: Rational::from_integer((-bound).into()) + &half,
            });
            lattice.push(LatticeConstraint { normal, bound });
        }
        Self { dim, halfspaces, lattice }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn lattice_constraints(&self) -> &[LatticeConstraint] {
        &self.lattice
    }

    pub fn contains(&self, sigma: &[i64]) -> bool {
        self.lattice.iter().all(|c| dot(&c.normal, sigma) >= c.bound)
    }

    /// Membership of a real point in the open polytope.
    pub fn contains_point(&self, xi: &[Rational]) -> bool {
        self.strict_system().iter().all(|c| c.holds_at(xi))
    }

    fn strict_system(&self) -> Vec<Constraint> {
        self.halfspaces
            .iter()
            .map(|h| Constraint::new(h.normal.clone(), h.offset.clone(), true))
            .collect()
    }

    fn closed_system(&self) -> Vec<Constraint> {
        self.lattice
            .iter()
            .map(|c| Constraint::weak_int(&c.normal, -c.bound))
            .collect()
    }

    fn recession_system(&self) -> Vec<Constraint> {
        self.lattice.iter().map(|c| Constraint::weak_int(&c.normal, 0)).collect()
    }

    /// Lattice points in the box `|σ|_∞ <= radius`, lexicographically sorted.
    pub fn enumerate(&self, radius: u32) -> Vec<Vec<i64>> {
        lattice_box(self.dim, radius).filter(|p| self.contains(p)).collect()
    }

    /// Is `sup{χ·ξ}` over the open polytope finite? An empty polytope counts
    /// as bounded. Decided on the recession cone: bounded iff no `d` with
    /// `a_i·d >= 0` for all constraints and `χ·d >= 1`.
    pub fn is_bounded_above(&self, chi: &[i64]) -> bool {
        assert_eq!(chi.len(), self.dim, "character dimension");
        if !fm::is_feasible(&self.strict_system()) {
            return true;
        }
        let mut cone = self.recession_system();
        cone.push(Constraint::weak_int(chi, -1));
        self.dim == 0 || !fm::is_feasible(&cone)
    }

    /// Every level set `{χ·σ = c}` meets the polytope in a bounded set and
    /// `χ` is bounded above, i.e. `χ·d < 0` on the recession cone minus 0.
    pub fn has_finite_level_sets(&self, chi: &[i64]) -> bool {
        let mut cone = self.recession_system();
        cone.push(Constraint::weak_int(chi, 0));
        for j in 0..self.dim {
            for s in [1, -1] {
                let mut unit = vec![0; self.dim];
                unit[j] = s;
                let mut sys = cone.clone();
                sys.push(Constraint::weak_int(&unit, -1));
                if fm::is_feasible(&sys) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether the closed integral relaxation is empty (then no lattice
    /// points exist).
    pub fn closed_is_empty(&self) -> bool {
        !fm::is_feasible(&self.closed_system())
    }

    /// Lattice points with `χ·σ >= floor`, assuming finite level sets.
    pub fn points_above(&self, chi: &[i64], floor: i64) -> Vec<Vec<i64>> {
        let mut sys = self.closed_system();
        sys.push(Constraint::weak_int(chi, -floor));
        let mut ranges = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            match fm::coordinate_bounds(&sys, j) {
                None => return Vec::new(),
                Some((Some(lo), Some(hi))) => {
                    let lo = lo.ceil().to_integer().to_i64().expect("bound fits");
                    let hi = hi.floor().to_integer().to_i64().expect("bound fits");
                    if lo > hi {
                        return Vec::new();
                    }
                    ranges.push((lo, hi));
                }
                Some(_) => panic!("points_above called on a set with infinite level sets"),
            }
        }
        odometer(ranges)
            .filter(|p| self.contains(p) && dot(chi, p) >= floor)
            .collect()
    }

    /// Real supremum of `χ` over the closed relaxation; `None` when empty or
    /// unbounded.
    pub fn closed_supremum(&self, chi: &[i64]) -> Option<Rational> {
        let f: Vec<Rational> = chi.iter().map(|&c| Rational::from_integer(c.into())).collect();
        fm::supremum(&self.closed_system(), &f).flatten()
    }

    /// Largest value of `χ` on a lattice point, `None` if there are none.
    pub fn lattice_max(&self, chi: &[i64]) -> Result<Option<i64>> {
        if self.closed_is_empty() {
            return Ok(None);
        }
        if !self.has_finite_level_sets(chi) {
            return Err(Error::Unbounded(format!("chi = {chi:?}")));
        }
        let sup = match self.closed_supremum(chi) {
            Some(s) => s.floor().to_integer().to_i64().expect("bound fits"),
            None => return Ok(None),
        };
        let mut window: i64 = 1;
        while window <= 1 << 20 {
            if let Some(m) = self.points_above(chi, sup - window).iter().map(|p| dot(chi, p)).max() {
                return Ok(Some(m));
            }
            window *= 2;
        }
        Ok(None)
    }
}

/// Points of `[-radius, radius]^dim` in lexicographic order.
pub fn lattice_box(dim: usize, radius: u32) -> impl Iterator<Item = Vec<i64>> {
    let r = radius as i64;
    odometer(vec![(-r, r); dim])
}

fn odometer(ranges: Vec<(i64, i64)>) -> impl Iterator<Item = Vec<i64>> {
    let empty = ranges.iter().any(|(lo, hi)| lo > hi);
    let mut next: Option<Vec<i64>> = if empty { None } else { Some(ranges.iter().map(|r| r.0).collect()) };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut j = succ.len();
        loop {
            if j == 0 {
                break;
            }
            j -= 1;
            if succ[j] < ranges[j].1 {
                succ[j] += 1;
                for t in j + 1..succ.len() {
                    succ[t] = ranges[t].0;
                }
                next = Some(succ);
                break;
            }
        }
        Some(current)
    })
}

impl fmt::Display for SupportPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .lattice
            .iter()
            .map(|c| format!("{:?}.s >= {}", c.normal, c.bound))
            .collect();
        if parts.is_empty() {
            write!(f, "Z^{}", self.dim)
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}
