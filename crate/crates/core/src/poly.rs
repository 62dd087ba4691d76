//! Sparse polynomials with rational coefficients in `ℏ`, `x_1..x_n` and
//! `y_1..y_n`.
//!
//! The `x_i` generate the Gelfand-Tsetlin subalgebra together with `ℏ`; the
//! `y_i` are equivariant parameters that only appear in coefficients of
//! module vectors.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Flavor, ModuleSignature};
use crate::Rational;

/// A polynomial variable; indices are zero based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    H,
    X(usize),
    Y(usize),
}

impl Var {
    fn slot(self, n: usize) -> usize {
        match self {
            Var::H => 0,
            Var::X(i) => 1 + i,
            Var::Y(i) => 1 + n + i,
        }
    }

    fn from_slot(slot: usize, n: usize) -> Self {
        if slot == 0 {
            Var::H
        } else if slot <= n {
            Var::X(slot - 1)
        } else {
            Var::Y(slot - 1 - n)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::H => write!(f, "h"),
            Var::X(i) => write!(f, "x{}", i + 1),
            Var::Y(i) => write!(f, "y{}", i + 1),
        }
    }
}

/// Exponent vector `[h, x_1..x_n, y_1..y_n]`. Ordered by total degree
/// (highest first), then lexicographically on the exponents, which is also
/// the printing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    fn one(n: usize) -> Self {
        Monomial(vec![0; 1 + 2 * n])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GTPoly {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl GTPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(n), c);
        }
        p
    }

    pub fn from_int(n: usize, c: i64) -> Self {
        Self::constant(n, Rational::from_integer(c.into()))
    }

    pub fn var(n: usize, v: Var) -> Self {
        let mut m = Monomial::one(n);
        m.0[v.slot(n)] = 1;
        let mut p = Self::zero(n);
        p.terms.insert(m, Rational::one());
        p
    }

    pub fn h(n: usize) -> Self {
        Self::var(n, Var::H)
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::var(n, Var::X(i))
    }

    pub fn y(n: usize, i: usize) -> Self {
        Self::var(n, Var::Y(i))
    }

    /// Number of hypermultiplets fixing the variable set.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The constant term if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        let slot = v.slot(self.n);
        self.terms.keys().any(|m| m.0[slot] > 0)
    }

    /// Variables with a positive exponent somewhere.
    pub fn variables(&self) -> Vec<Var> {
        (0..1 + 2 * self.n)
            .filter(|&s| self.terms.keys().any(|m| m.0[s] > 0))
            .map(|s| Var::from_slot(s, self.n))
            .collect()
    }

    pub fn contains_y(&self) -> bool {
        (0..self.n).any(|i| self.uses(Var::Y(i)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.n);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Replaces each variable `v` with `image(v)` when that returns `Some`.
    pub fn substitute(&self, image: impl Fn(Var) -> Option<GTPoly>) -> GTPoly {
        let n = self.n;
        let images: Vec<Option<GTPoly>> = (0..1 + 2 * n).map(|s| image(Var::from_slot(s, n))).collect();
        let mut powers: HashMap<(usize, u32), GTPoly> = HashMap::new();
        let mut out = GTPoly::zero(n);
        for (m, c) in &self.terms {
            let mut kept = Monomial::one(n);
            let mut acc = GTPoly::constant(n, c.clone());
            for (slot, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &images[slot] {
                    None => kept.0[slot] = e,
                    Some(img) => {
                        let pw = powers.entry((slot, e)).or_insert_with(|| img.pow(e));
                        acc = &acc * &*pw;
                    }
                }
            }
            for (am, ac) in acc.terms {
                out.add_term(am.mul(&kept), ac);
            }
        }
        out
    }

    /// `x_i ↦ x_i + δ_i ℏ` for every `i`.
    pub fn shift_substitute(&self, delta: &[i64]) -> Result<GTPoly> {
        if self.contains_y() {
            return Err(Error::NotGtElement(self.to_string()));
        }
        if delta.len() != self.n {
            return Err(Error::Dimension(format!(
                "shift has length {}, expected n = {}",
                delta.len(),
                self.n
            )));
        }
        Ok(self.shift_unchecked(delta))
    }

    pub(crate) fn shift_unchecked(&self, delta: &[i64]) -> GTPoly {
        if delta.iter().all(|&d| d == 0) {
            return self.clone();
        }
        let n = self.n;
        self.substitute(|v| match v {
            Var::X(i) if delta[i] != 0 => {
                Some(&GTPoly::x(n, i) + &GTPoly::h(n).scale(&Rational::from_integer(delta[i].into())))
            }
            _ => None,
        })
    }

    /// Substitutes a rational value for `ℏ`.
    pub fn evaluate_h(&self, value: &Rational) -> GTPoly {
        let n = self.n;
        self.substitute(|v| (v == Var::H).then(|| GTPoly::constant(n, value.clone())))
    }

    /// Substitutes `y_i ↦ 0` for every `i`.
    pub fn drop_y(&self) -> GTPoly {
        let n = self.n;
        self.substitute(|v| matches!(v, Var::Y(_)).then(|| GTPoly::zero(n)))
    }

    /// The shifted factorial `[x_i]^m`: `∏_{j=1}^{m} (x_i - (j - 1/2)ℏ)` for
    /// `m >= 0` and `∏_{j=1}^{|m|} (x_i + (j - 1/2)ℏ)` for `m < 0`.
    pub fn bracket(n: usize, i: usize, m: i64) -> GTPoly {
        let x = GTPoly::x(n, i);
        let h = GTPoly::h(n);
        let sign = if m >= 0 { -1 } else { 1 };
        let mut out = GTPoly::one(n);
        for j in 1..=m.abs() {
            let shift = Rational::new((sign * (2 * j - 1)).into(), 2.into());
            out = &out * &(&x + &h.scale(&shift));
        }
        out
    }
}

/// Evaluates a Gelfand-Tsetlin element on the weight space of `σ`:
/// `x_i ↦ y_i δ_{i∈S} + (σ_i - μ_i + α_i/2) ℏ`. For the big flavor the
/// `x_i` with `i ∈ S` are left alone.
pub fn eval_at_weight(p: &GTPoly, sig: &ModuleSignature, sigma: &[i64]) -> Result<GTPoly> {
    if p.contains_y() {
        return Err(Error::NotGtElement(p.to_string()));
    }
    sig.datum().check_cocharacter(sigma)?;
    let restricted = sig.datum().restrict(sigma);
    Ok(eval_at_restricted(p, sig, &|i| restricted[i]))
}

/// Same substitution, given the restricted weights `σ_i` directly (only
/// the entries for `i ∉ S` are read in the big flavor).
pub(crate) fn eval_at_restricted(
    p: &GTPoly,
    sig: &ModuleSignature,
    restricted: &dyn Fn(usize) -> i64,
) -> GTPoly {
    p.substitute(|v| match v {
        Var::X(i) => {
            if sig.in_subset(i) && sig.flavor() == Flavor::Big {
                return None;
            }
            Some(weight_eigenvalue(sig, i, restricted(i)))
        }
        _ => None,
    })
}

/// `y_i δ_{i∈S} + (σ_i - μ_i + α_i/2) ℏ` for the restricted weight `σ_i`.
pub(crate) fn weight_eigenvalue(sig: &ModuleSignature, i: usize, sigma_i: i64) -> GTPoly {
    let n = sig.datum().n();
    let value = Rational::new((2 * (sigma_i - sig.mu()[i]) + sig.alpha()[i].value()).into(), 2.into());
    let mut out = GTPoly::h(n).scale(&value);
    if sig.in_subset(i) {
        out = &out + &GTPoly::y(n, i);
    }
    out
}

impl<'a> Add<&'a GTPoly> for &'a GTPoly {
    type Output = GTPoly;
    fn add(self, rhs: &'a GTPoly) -> GTPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&GTPoly> for GTPoly {
    fn add_assign(&mut self, rhs: &GTPoly) {
        debug_assert_eq!(self.n, rhs.n);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for GTPoly {
    type Output = GTPoly;
    fn add(mut self, rhs: GTPoly) -> GTPoly {
        self += &rhs;
        self
    }
}

impl<'a> Sub<&'a GTPoly> for &'a GTPoly {
    type Output = GTPoly;
    fn sub(self, rhs: &'a GTPoly) -> GTPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for GTPoly {
    type Output = GTPoly;
    fn sub(self, rhs: GTPoly) -> GTPoly {
        &self - &rhs
    }
}

impl Neg for &GTPoly {
    type Output = GTPoly;
    fn neg(self) -> GTPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for GTPoly {
    type Output = GTPoly;
    fn neg(self) -> GTPoly {
        -&self
    }
}

impl<'a> Mul<&'a GTPoly> for &'a GTPoly {
    type Output = GTPoly;
    fn mul(self, rhs: &'a GTPoly) -> GTPoly {
        debug_assert_eq!(self.n, rhs.n);
        let mut out = GTPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for GTPoly {
    type Output = GTPoly;
    fn mul(self, rhs: GTPoly) -> GTPoly {
        &self * &rhs
    }
}

pub(crate) fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical form: every term carries its coefficient, e.g.
/// `1 * x1 - 1/2 * h` or `-1 * h`.
impl fmt::Display for GTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let shown = if idx == 0 {
                c.clone()
            } else if c.is_negative() {
                write!(f, " - ")?;
                -c.clone()
            } else {
                write!(f, " + ")?;
                c.clone()
            };
            write!(f, "{}", format_rational(&shown))?;
            for (slot, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, " * {}", Var::from_slot(slot, self.n))?,
                    _ => write!(f, " * {}^{}", Var::from_slot(slot, self.n), e)?,
                }
            }
        }
        Ok(())
    }
}
