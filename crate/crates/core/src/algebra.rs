//! The quantized abelian Coulomb branch algebra (hypertoric enveloping
//! algebra): elements in left normal form `Σ p_λ(ℏ, x) r^λ`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num::One;

use crate::error::{Error, Result};
use crate::lattice::{format_subset, Sign, TorusDatum};
use crate::poly::{GTPoly, Var};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    datum: Arc<TorusDatum>,
    terms: BTreeMap<Vec<i64>, GTPoly>,
}

impl AlgebraElement {
    pub fn zero(datum: Arc<TorusDatum>) -> Self {
        Self { datum, terms: BTreeMap::new() }
    }

    pub fn one(datum: Arc<TorusDatum>) -> Self {
        let k = datum.k();
        Self::monopole(datum, &vec![0; k]).expect("zero cocharacter has length k")
    }

    /// The monopole operator `r^λ`.
    pub fn monopole(datum: Arc<TorusDatum>, lambda: &[i64]) -> Result<Self> {
        datum.check_cocharacter(lambda)?;
        let n = datum.n();
        let mut terms = BTreeMap::new();
        terms.insert(lambda.to_vec(), GTPoly::one(n));
        Ok(Self { datum, terms })
    }

    /// The Gelfand-Tsetlin element `p · r^0`.
    pub fn gt(datum: Arc<TorusDatum>, p: GTPoly) -> Result<Self> {
        Self::term(datum, p, None)
    }

    /// `p · r^λ`; `λ = None` means `r^0`.
    pub fn term(datum: Arc<TorusDatum>, p: GTPoly, lambda: Option<&[i64]>) -> Result<Self> {
        if p.n() != datum.n() {
            return Err(Error::Dimension(format!(
                "polynomial over {} hypermultiplets, datum has n = {}",
                p.n(),
                datum.n()
            )));
        }
        if p.contains_y() {
            return Err(Error::NotGtElement(p.to_string()));
        }
        let lambda = match lambda {
            Some(l) => {
                datum.check_cocharacter(l)?;
                l.to_vec()
            }
            None => vec![0; datum.k()],
        };
        let mut out = Self::zero(datum);
        out.add_term(lambda, p);
        Ok(out)
    }

    pub fn datum(&self) -> &Arc<TorusDatum> {
        &self.datum
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &GTPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, lambda: &[i64]) -> Option<&GTPoly> {
        self.terms.get(lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same normal form read over another datum with the same `n, k`.
    pub fn with_datum(&self, datum: Arc<TorusDatum>) -> Result<Self> {
        if datum.n() != self.datum.n() || datum.k() != self.datum.k() {
            return Err(Error::DatumMismatch);
        }
        Ok(Self { datum, terms: self.terms.clone() })
    }

    fn add_term(&mut self, lambda: Vec<i64>, p: GTPoly) {
        if p.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(p);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &p;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.datum == other.datum {
            Ok(())
        } else {
            Err(Error::DatumMismatch)
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.datum.clone());
        for (l, p) in &self.terms {
            out.add_term(l.clone(), p.scale(c));
        }
        out
    }

    /// Bilinear product. For monomials
    /// `(p r^σ)(q r^λ) = p · q(x - σℏ) · L · R(x - (σ+λ)ℏ) · r^{σ+λ}`
    /// where `L = ∏ [x_i]^{σ_i}` over `λ_iσ_i < 0, |λ_i| >= |σ_i|` and
    /// `R = ∏ [x_i]^{-λ_i}` over `λ_iσ_i < 0, |σ_i| > |λ_i|`; `R` sits to
    /// the right of `r^{σ+λ}` in the defining relation and is moved left
    /// with `r^ν f(x) = f(x - νℏ) r^ν`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.datum.clone());
        for (sigma, p) in &self.terms {
            let sigma_r = self.datum.restrict(sigma);
            let neg_sigma: Vec<i64> = sigma_r.iter().map(|v| -v).collect();
            for (lambda, q) in &other.terms {
                let (structure, sum) = structure_constant(&self.datum, sigma, lambda);
                let moved = q.shift_unchecked(&neg_sigma);
                let coeff = &(p * &moved) * &structure;
                out.add_term(sum, coeff);
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        Ok(&self.multiply(other)? - &other.multiply(self)?)
    }

    /// Transport along the Fourier transform for the Lagrangian `N_α`:
    /// `x_i ↦ -α_i x_i`, `r^λ ↦ ∏_{α_iλ_i<0} (-α_i)^{|λ_i|} r^λ`, with the
    /// restricted weights `λ_i` taken from this element's datum. The result
    /// keeps the same datum; read it over `datum.flipped(α)` to multiply in
    /// the algebra of `N_α`.
    pub fn fourier_transform(&self, alpha: &[Sign]) -> Result<Self> {
        let n = self.datum.n();
        if alpha.len() != n {
            return Err(Error::Dimension(format!("alpha has length {}, expected n = {n}", alpha.len())));
        }
        let mut out = Self::zero(self.datum.clone());
        for (lambda, p) in &self.terms {
            let restricted = self.datum.restrict(lambda);
            let flips: u64 = restricted
                .iter()
                .zip(alpha)
                .filter(|(l, a)| *a == &Sign::Plus && **l < 0)
                .map(|(l, _)| l.unsigned_abs())
                .sum();
            let sign = if flips % 2 == 0 { Rational::one() } else { -Rational::one() };
            let image = p.substitute(|v| match v {
                Var::X(i) if alpha[i] == Sign::Plus => Some(-GTPoly::x(n, i)),
                _ => None,
            });
            out.add_term(lambda.clone(), image.scale(&sign));
        }
        Ok(out)
    }

    /// Splits the element by the `Z`-grading `λ ↦ <χ, λ>`.
    pub fn chi_degree(&self, chi: &[i64]) -> Result<BTreeMap<i64, AlgebraElement>> {
        self.datum.check_cocharacter(chi)?;
        let mut out: BTreeMap<i64, AlgebraElement> = BTreeMap::new();
        for (lambda, p) in &self.terms {
            let d: i64 = chi.iter().zip(lambda).map(|(a, b)| a * b).sum();
            out.entry(d)
                .or_insert_with(|| Self::zero(self.datum.clone()))
                .add_term(lambda.clone(), p.clone());
        }
        Ok(out)
    }

    /// Central specialization. The exceptional subset `splitting` identifies
    /// the centre: for `j ∈ S` the element `x_j - Σ_{i∉S} c_{ji} x_i`, with
    /// `x̄_j = Σ c_{ji} x̄_i`, is central and is set to `ζ_j`. Optionally `ℏ`
    /// is also given a value.
    pub fn specialize(&self, sp: &Specialization, splitting: &BTreeSet<usize>) -> Result<Self> {
        let n = self.datum.n();
        let f_rank = n - self.datum.k();
        if sp.zeta.len() != f_rank {
            return Err(Error::Dimension(format!(
                "zeta has length {}, expected n - k = {f_rank}",
                sp.zeta.len()
            )));
        }
        if splitting.len() != f_rank || !self.datum.is_basis_complement(splitting) {
            return Err(Error::NotExceptional(format_subset(splitting)));
        }
        let coords = self.datum.basis_coordinates(splitting)?;
        let complement: Vec<usize> = (0..n).filter(|i| !splitting.contains(i)).collect();
        let images: BTreeMap<usize, GTPoly> = splitting
            .iter()
            .zip(coords)
            .zip(&sp.zeta)
            .map(|((&j, row), zeta)| {
                let mut img = GTPoly::constant(n, zeta.clone());
                for (&i, c) in complement.iter().zip(row) {
                    img = &img + &GTPoly::x(n, i).scale(&Rational::from_integer(c.into()));
                }
                (j, img)
            })
            .collect();
        let mut out = Self::zero(self.datum.clone());
        for (lambda, p) in &self.terms {
            let mut q = p.substitute(|v| match v {
                Var::X(j) => images.get(&j).cloned(),
                _ => None,
            });
            if let Some(h) = &sp.hbar {
                q = q.evaluate_h(h);
            }
            out.add_term(lambda.clone(), q);
        }
        Ok(out)
    }
}

/// The coefficient `C` with `r^σ r^λ = C · r^{σ+λ}` in left normal form.
pub(crate) fn structure_constant(datum: &TorusDatum, sigma: &[i64], lambda: &[i64]) -> (GTPoly, Vec<i64>) {
    let n = datum.n();
    let s = datum.restrict(sigma);
    let l = datum.restrict(lambda);
    let sum: Vec<i64> = sigma.iter().zip(lambda).map(|(a, b)| a + b).collect();
    let mut left = GTPoly::one(n);
    let mut right = GTPoly::one(n);
    for i in 0..n {
        if l[i] * s[i] < 0 {
            if l[i].abs() >= s[i].abs() {
                left = &left * &GTPoly::bracket(n, i, s[i]);
            } else {
                right = &right * &GTPoly::bracket(n, i, -l[i]);
            }
        }
    }
    let neg_sum: Vec<i64> = s.iter().zip(&l).map(|(a, b)| -(a + b)).collect();
    (&left * &right.shift_unchecked(&neg_sum), sum)
}

/// Values for the central parameters (one per element of the chosen
/// splitting, in increasing index order) and optionally for `ℏ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Specialization {
    pub zeta: Vec<Rational>,
    pub hbar: Option<Rational>,
}

impl Specialization {
    pub fn new(zeta: Vec<Rational>, hbar: Option<Rational>) -> Self {
        Self { zeta, hbar }
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        assert_eq!(self.datum, rhs.datum, "datum mismatch");
        let mut out = self.clone();
        for (l, p) in &rhs.terms {
            out.add_term(l.clone(), p.clone());
        }
        out
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &'a AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Rational::one())
    }
}

/// `r[λ]` written as comma separated integers.
pub(crate) fn format_weight(lambda: &[i64]) -> String {
    lambda.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical string: `<poly> * r[λ]` terms joined by ` + `, with
/// multi-term coefficients parenthesised.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (lambda, p)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            if p.len() > 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "{p}")?;
            }
            write!(f, " * r[{}]", format_weight(lambda))?;
        }
        Ok(())
    }
}

/// A random polynomial in `ℏ, x_1..x_n` of total degree at most
/// `max_degree` with small integer coefficients.
pub fn random_gt_poly<R: rand::Rng + ?Sized>(n: usize, rng: &mut R, max_degree: u32) -> GTPoly {
    let mut p = GTPoly::zero(n);
    for _ in 0..rng.gen_range(1..=3) {
        let mut term = GTPoly::from_int(n, rng.gen_range(-3..=3));
        for _ in 0..rng.gen_range(0..=max_degree) {
            let v = match rng.gen_range(0..=n) {
                0 => Var::H,
                i => Var::X(i - 1),
            };
            term = &term * &GTPoly::var(n, v);
        }
        p = &p + &term;
    }
    p
}

/// A random `p(ℏ, x) r^λ` with `|λ|_∞ <= radius`.
pub fn random_monomial<R: rand::Rng + ?Sized>(
    datum: &Arc<TorusDatum>,
    rng: &mut R,
    radius: i64,
    max_degree: u32,
) -> AlgebraElement {
    let lambda: Vec<i64> = (0..datum.k()).map(|_| rng.gen_range(-radius..=radius)).collect();
    let p = random_gt_poly(datum.n(), rng, max_degree);
    AlgebraElement::term(datum.clone(), p, Some(&lambda)).expect("dimensions match")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqed() -> Arc<TorusDatum> {
        Arc::new(TorusDatum::sqed1())
    }

    fn pair() -> Arc<TorusDatum> {
        Arc::new(TorusDatum::new(1, vec![vec![1], vec![-1]]).unwrap())
    }

    fn half() -> Rational {
        Rational::new(1.into(), 2.into())
    }

    fn r(d: &Arc<TorusDatum>, l: &[i64]) -> AlgebraElement {
        AlgebraElement::monopole(d.clone(), l).unwrap()
    }

    fn gt(d: &Arc<TorusDatum>, p: GTPoly) -> AlgebraElement {
        AlgebraElement::gt(d.clone(), p).unwrap()
    }

    #[test]
    fn monopole_zero_is_unit() {
        let d = sqed();
        let a = &r(&d, &[2]) + &gt(&d, GTPoly::x(1, 0));
        assert_eq!(r(&d, &[0]), AlgebraElement::one(d.clone()));
        assert_eq!(r(&d, &[0]).multiply(&a).unwrap(), a);
        assert_eq!(a.multiply(&r(&d, &[0])).unwrap(), a);
        assert!(AlgebraElement::monopole(d.clone(), &[1, 2]).is_err());
        let two = Arc::new(TorusDatum::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap());
        assert_eq!(r(&two, &[2, -1]).to_string(), "1 * r[2,-1]");
    }

    #[test]
    fn sqed_products() {
        let d = sqed();
        let x = GTPoly::x(1, 0);
        let h = GTPoly::h(1);
        let up_down = r(&d, &[1]).multiply(&r(&d, &[-1])).unwrap();
        assert_eq!(up_down, gt(&d, &x - &h.scale(&half())));
        let down_up = r(&d, &[-1]).multiply(&r(&d, &[1])).unwrap();
        assert_eq!(down_up, gt(&d, &x + &h.scale(&half())));
        assert_eq!(up_down.to_string(), "(1 * x1 - 1/2 * h) * r[0]");
    }

    #[test]
    fn commutators() {
        let d = sqed();
        let x = gt(&d, GTPoly::x(1, 0));
        let c = x.commutator(&r(&d, &[3])).unwrap();
        assert_eq!(c, gt(&d, GTPoly::h(1).scale(&Rational::from_integer(3.into()))).multiply(&r(&d, &[3])).unwrap());
        let c = r(&d, &[1]).commutator(&r(&d, &[-1])).unwrap();
        assert_eq!(c, gt(&d, -GTPoly::h(1)));
        assert_eq!(c.to_string(), "-1 * h * r[0]");
        let p = gt(&d, GTPoly::x(1, 0).pow(2));
        let q = gt(&d, &GTPoly::x(1, 0) + &GTPoly::h(1));
        assert!(p.commutator(&q).unwrap().is_zero());
        let c = &x.multiply(&r(&d, &[1])).unwrap() - &r(&d, &[1]).multiply(&x).unwrap();
        assert_eq!(c, gt(&d, GTPoly::h(1)).multiply(&r(&d, &[1])).unwrap());
    }

    #[test]
    fn fourier_examples() {
        let d = sqed();
        let a = &r(&d, &[-2]) + &gt(&d, GTPoly::x(1, 0));
        assert_eq!(a.fourier_transform(&[Sign::Minus]).unwrap(), a);
        let x = gt(&d, GTPoly::x(1, 0));
        assert_eq!(x.fourier_transform(&[Sign::Plus]).unwrap(), -&x);
        assert_eq!(r(&d, &[1]).fourier_transform(&[Sign::Plus]).unwrap(), r(&d, &[1]));
        assert_eq!(r(&d, &[-1]).fourier_transform(&[Sign::Plus]).unwrap(), -&r(&d, &[-1]));
        assert!(x.fourier_transform(&[]).is_err());
    }

    #[test]
    fn fourier_lands_in_flipped_algebra() {
        let d = sqed();
        let alpha = [Sign::Plus];
        let flipped = Arc::new(d.flipped(&alpha));
        let a = r(&d, &[1]);
        let b = r(&d, &[-1]);
        let lhs = a.multiply(&b).unwrap().fourier_transform(&alpha).unwrap();
        let fa = a.fourier_transform(&alpha).unwrap().with_datum(flipped.clone()).unwrap();
        let fb = b.fourier_transform(&alpha).unwrap().with_datum(flipped.clone()).unwrap();
        assert_eq!(lhs.with_datum(flipped).unwrap(), fa.multiply(&fb).unwrap());
    }

    #[test]
    fn chi_degree_examples() {
        let d = sqed();
        let a = &r(&d, &[1]) + &r(&d, &[-1]);
        let parts = a.chi_degree(&[1]).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1], r(&d, &[1]));
        assert_eq!(parts[&-1], r(&d, &[-1]));
        let g = gt(&d, GTPoly::x(1, 0));
        let parts = g.chi_degree(&[1]).unwrap();
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn specialize_examples() {
        let d = sqed();
        let c = r(&d, &[1]).commutator(&r(&d, &[-1])).unwrap();
        let sp = Specialization::new(vec![], Some(Rational::from_integer(0.into())));
        assert!(c.specialize(&sp, &BTreeSet::new()).unwrap().is_zero());
        let a = &r(&d, &[1]) + &gt(&d, GTPoly::x(1, 0));
        assert_eq!(a.specialize(&Specialization::new(vec![], None), &BTreeSet::new()).unwrap(), a);

        // x1 + x2 is central for charges (1,-1); splitting S = {2} sets x2 = c - x1.
        let d = pair();
        let prod = r(&d, &[1]).multiply(&r(&d, &[-1])).unwrap();
        let c = Rational::from_integer(5.into());
        let s = prod.specialize(&Specialization::new(vec![c.clone()], None), &[1].into_iter().collect()).unwrap();
        let p = s.coefficient(&[0]).unwrap();
        assert!(!p.uses(Var::X(1)));
        // (x1 - h/2)(x2 + h/2) with x2 = 5 - x1
        let h = GTPoly::h(2);
        let x1 = GTPoly::x(2, 0);
        let expected = &(&x1 - &h.scale(&half())) * &(&(&GTPoly::constant(2, c) - &x1) + &h.scale(&half()));
        assert_eq!(p, &expected);
        assert!(prod.specialize(&Specialization::new(vec![c_zero()], None), &BTreeSet::new()).is_err());
    }

    fn c_zero() -> Rational {
        Rational::from_integer(0.into())
    }

    #[test]
    fn pair_product_has_both_brackets() {
        let d = pair();
        let prod = r(&d, &[1]).multiply(&r(&d, &[-1])).unwrap();
        let h = GTPoly::h(2);
        let expected = &(&GTPoly::x(2, 0) - &h.scale(&half())) * &(&GTPoly::x(2, 1) + &h.scale(&half()));
        assert_eq!(prod.coefficient(&[0]), Some(&expected));
    }

    #[test]
    fn rejects_y_and_mismatched_datums() {
        let d = sqed();
        assert!(AlgebraElement::gt(d.clone(), GTPoly::y(1, 0)).is_err());
        let other = pair();
        assert!(r(&d, &[1]).multiply(&r(&other, &[1])).is_err());
    }
}
