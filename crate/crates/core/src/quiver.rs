//! Fixed-point combinatorics on the quiver side: torus fixed points of
//! abelianized Springer fibres, Gelfand-Tsetlin patterns, bounded
//! compositions, Drinfeld polynomials and a finite field oracle for
//! invariant subspaces of a nilpotent operator.

use std::fmt;

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::lattice_box;
use crate::Rational;

/// Torus weights `γ_j` of the summands of a loop `c`. The fixed locus is
/// `{μ : ⟨γ_j, μ⟩ ≤ 0 for all j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSystem {
    d: usize,
    functionals: Vec<Vec<i64>>,
}

impl WeightSystem {
    pub fn new(d: usize, functionals: Vec<Vec<i64>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Dimension("torus rank must be positive".into()));
        }
        if functionals.is_empty() {
            return Err(Error::Dimension("weight system is empty".into()));
        }
        if let Some(bad) = functionals.iter().find(|g| g.len() != d) {
            return Err(Error::Dimension(format!(
                "functional of length {} in a rank {} system",
                bad.len(),
                d
            )));
        }
        Ok(Self { d, functionals })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn functionals(&self) -> &[Vec<i64>] {
        &self.functionals
    }

    /// The type A chain `C^1 → C^2 → … → C^n` with standard inclusions.
    ///
    /// Coordinates are `μ^i_j` for `i = 1..n-1`, `j = 1..i`, flattened row by
    /// row. The functionals encode `μ^{i-1}_j ≤ μ^i_j` and `μ^{n-1}_j ≤ 0`.
    pub fn type_a(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension("type A chain needs n >= 2".into()));
        }
        let d = n * (n - 1) / 2;
        let mut functionals = Vec::new();
        for i in 2..n {
            for j in 0..i - 1 {
                let mut g = vec![0; d];
                g[gt_index(i - 1, j)] += 1;
                g[gt_index(i, j)] -= 1;
                functionals.push(g);
            }
        }
        for j in 0..n - 1 {
            let mut g = vec![0; d];
            g[gt_index(n - 1, j)] = 1;
            functionals.push(g);
        }
        Self::new(d, functionals)
    }
}

// Row i (1-based), column j (0-based) in the flattened pattern.
fn gt_index(i: usize, j: usize) -> usize {
    (i - 1) * i / 2 + j
}

/// All `μ ∈ Z^d` in the box of the given radius with `⟨γ_j, μ⟩ ≤ 0`, sorted.
pub fn torus_fixed_points(ws: &WeightSystem, box_radius: u32) -> Vec<Vec<i64>> {
    lattice_box(ws.d, box_radius)
        .filter(|mu| {
            ws.functionals
                .iter()
                .all(|g| g.iter().zip(mu).map(|(a, b)| a * b).sum::<i64>() <= 0)
        })
        .collect()
}

/// Triangular array `μ^1, …, μ^{n-1}` under an implicit zero top row.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GTPattern {
    rows: Vec<Vec<i64>>,
}

impl GTPattern {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        for (idx, row) in rows.iter().enumerate() {
            if row.len() != idx + 1 {
                return Err(Error::Dimension(format!("row {} has length {}", idx + 1, row.len())));
            }
        }
        let p = Self { rows };
        if !p.satisfies_inequalities() {
            return Err(Error::Precondition("column inequalities violated".into()));
        }
        Ok(p)
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len() + 1
    }

    /// `d_i = -Σ_j μ^i_j`.
    pub fn degrees(&self) -> Vec<i64> {
        self.rows.iter().map(|r| -r.iter().sum::<i64>()).collect()
    }

    pub fn flatten(&self) -> Vec<i64> {
        self.rows.iter().flatten().copied().collect()
    }

    fn satisfies_inequalities(&self) -> bool {
        let top = self.rows.len();
        self.rows.iter().enumerate().all(|(idx, row)| {
            row.iter().enumerate().all(|(j, &v)| {
                let above = if idx + 1 == top { 0 } else { self.rows[idx + 1][j] };
                v <= above
            })
        })
    }
}

impl fmt::Display for GTPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("({})", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", rows.join(" "))
    }
}

/// Every pattern for the chain of length `n` with node degrees `degrees`.
pub fn gt_patterns(n: usize, degrees: &[i64]) -> Result<Vec<GTPattern>> {
    if n < 2 || degrees.len() != n - 1 {
        return Err(Error::Dimension(format!(
            "expected {} degrees for n = {}",
            n.saturating_sub(1),
            n
        )));
    }
    if degrees.iter().any(|&d| d < 0) {
        return Err(Error::Precondition("degrees must be non-negative".into()));
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); n - 1];
    fill_rows(n - 1, degrees, &mut rows, &mut out);
    out.sort();
    Ok(out)
}

// Fill row `i` (1-based) given rows above it, then recurse downward.
fn fill_rows(i: usize, degrees: &[i64], rows: &mut Vec<Vec<i64>>, out: &mut Vec<GTPattern>) {
    if i == 0 {
        out.push(GTPattern { rows: rows.clone() });
        return;
    }
    let caps: Vec<i64> = if i == rows.len() { vec![0; i] } else { rows[i][..i].to_vec() };
    let target = -degrees[i - 1];
    let mut row = vec![0; i];
    bounded_rows(&caps, target, 0, &mut row, &mut |r| {
        rows[i - 1] = r.to_vec();
        fill_rows(i - 1, degrees, rows, out);
    });
}

// Rows with row[j] <= caps[j] and sum = target.
fn bounded_rows(caps: &[i64], target: i64, j: usize, row: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
    if j == caps.len() {
        if target == 0 {
            visit(row);
        }
        return;
    }
    let rest_cap: i64 = caps[j + 1..].iter().sum();
    // remaining entries can sum to anything <= rest_cap, so need target - v <= rest_cap
    let lo = target - rest_cap;
    let mut v = caps[j];
    while v >= lo {
        row[j] = v;
        bounded_rows(caps, target - v, j + 1, row, visit);
        v -= 1;
    }
}

/// Torus fixed points of the type A weight system with the given degrees,
/// found by brute force in a box of radius `max(degrees)`.
pub fn type_a_fixed_points(n: usize, degrees: &[i64]) -> Result<Vec<Vec<i64>>> {
    let ws = WeightSystem::type_a(n)?;
    if degrees.len() != n - 1 {
        return Err(Error::Dimension(format!("expected {} degrees", n - 1)));
    }
    let radius = degrees.iter().copied().max().unwrap_or(0).max(0) as u32;
    Ok(torus_fixed_points(&ws, radius)
        .into_iter()
        .filter(|mu| {
            (1..n).all(|i| -(0..i).map(|j| mu[gt_index(i, j)]).sum::<i64>() == degrees[i - 1])
        })
        .collect())
}

/// Number of `(a_i)` with `0 ≤ a_i ≤ μ_i` and `Σ a_i = r`.
pub fn spaltenstein_fixed_count(mu: &[u32], r: u32) -> u64 {
    let mut ways = vec![0u64; r as usize + 1];
    ways[0] = 1;
    for &m in mu {
        let mut next = vec![0u64; r as usize + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for a in 0..=m as usize {
                if s + a > r as usize {
                    break;
                }
                next[s + a] += w;
            }
        }
        ways = next;
    }
    ways[r as usize]
}

/// `(∏(μ_i + 1), ["V(μ_1)", …])`.
pub fn predicted_dimension(mu: &[u32]) -> (u64, Vec<String>) {
    let dim = mu.iter().map(|&m| m as u64 + 1).product();
    (dim, mu.iter().map(|m| format!("V({m})")).collect())
}

/// Dense polynomial in `u` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    /// `u - a`.
    pub fn linear(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `P(u + c)`, by Horner.
    pub fn shift(&self, c: &Rational) -> Self {
        let step = Self::new(vec![c.clone(), Rational::one()]);
        let mut out = Self::new(Vec::new());
        for a in self.coeffs.iter().rev() {
            out = out.mul(&step);
            let mut cs = out.coeffs;
            if cs.is_empty() {
                cs.push(Rational::zero());
            }
            cs[0] += a;
            out = Self::new(cs);
        }
        out
    }

    pub fn evaluate(&self, u: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * u + c)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = crate::poly::format_rational(&c.abs());
            let body = match deg {
                0 => mag,
                1 => format!("{mag} * u"),
                _ => format!("{mag} * u^{deg}"),
            };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " {} {body}", if c.is_negative() { '-' } else { '+' })?;
            }
        }
        Ok(())
    }
}

/// The string `{r + 1, …, r + len}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootString {
    pub r: Rational,
    pub len: u32,
}

impl RootString {
    pub fn elements(&self) -> Vec<Rational> {
        (1..=self.len).map(|t| &self.r + Rational::from_integer(t.into())).collect()
    }

    fn is_empty(&self) -> bool {
        self.len == 0
    }

    // Both strings step by one, so they meet only if the offsets differ by an integer.
    fn meets(&self, other: &Self) -> bool {
        if self.is_empty() || other.is_empty() || !(&self.r - &other.r).is_integer() {
            return false;
        }
        let a_end = &self.r + Rational::from_integer(self.len.into());
        let b_end = &other.r + Rational::from_integer(other.len.into());
        self.r < b_end && other.r < a_end
    }

    fn contains(&self, other: &Self) -> bool {
        if other.is_empty() {
            return true;
        }
        if !(&self.r - &other.r).is_integer() {
            return false;
        }
        let a_end = &self.r + Rational::from_integer(self.len.into());
        let b_end = &other.r + Rational::from_integer(other.len.into());
        self.r <= other.r && b_end <= a_end
    }
}

impl fmt::Display for RootString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.elements().iter().map(crate::poly::format_rational).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootStringSet {
    pub strings: Vec<RootString>,
}

impl RootStringSet {
    pub fn new(strings: Vec<RootString>) -> Self {
        Self { strings }
    }

    pub fn from_parts(r: &[Rational], mu: &[u32]) -> Result<Self> {
        if r.len() != mu.len() {
            return Err(Error::Dimension(format!("{} offsets but {} lengths", r.len(), mu.len())));
        }
        Ok(Self::new(
            r.iter().zip(mu).map(|(r, &len)| RootString { r: r.clone(), len }).collect(),
        ))
    }
}

impl fmt::Display for RootStringSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.strings.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", items.join(" "))
    }
}

/// `P(u) = ∏_i (u - r_i - 1)⋯(u - r_i - μ_i)` together with its strings.
pub fn drinfeld_polynomial(r: &[Rational], mu: &[i64]) -> Result<(UniPoly, RootStringSet)> {
    if let Some(bad) = mu.iter().find(|&&m| m < 0) {
        return Err(Error::Precondition(format!("negative string length {bad}")));
    }
    let lens: Vec<u32> = mu.iter().map(|&m| m as u32).collect();
    let strings = RootStringSet::from_parts(r, &lens)?;
    let mut p = UniPoly::one();
    for s in &strings.strings {
        for root in s.elements() {
            p = p.mul(&UniPoly::linear(&root));
        }
    }
    Ok((p, strings))
}

/// Checks `P(u+1) ∏(u - r_i - μ_i) = P(u) ∏(u - r_i)` as polynomials.
pub fn drinfeld_ratio_holds(p: &UniPoly, strings: &RootStringSet) -> bool {
    let mut lhs = p.shift(&Rational::one());
    let mut rhs = p.clone();
    for s in &strings.strings {
        lhs = lhs.mul(&UniPoly::linear(&(&s.r + Rational::from_integer(s.len.into()))));
        rhs = rhs.mul(&UniPoly::linear(&s.r));
    }
    lhs == rhs
}

/// True when any two strings that meet are nested.
pub fn general_position(strings: &RootStringSet) -> bool {
    let ss = &strings.strings;
    (0..ss.len()).all(|i| {
        (i + 1..ss.len()).all(|j| !ss[i].meets(&ss[j]) || ss[i].contains(&ss[j]) || ss[j].contains(&ss[i]))
    })
}

/// Arithmetic in a field with `q ≤ 9` elements, encoded as `0..q`.
#[derive(Clone, Debug)]
pub struct GaloisField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
}

impl GaloisField {
    pub fn new(q: usize) -> Result<Self> {
        // (p, e, low coefficients of a monic irreducible of degree e)
        let (p, e, modulus): (usize, usize, &[usize]) = match q {
            2 | 3 | 5 | 7 => (q, 1, &[0]),
            4 => (2, 2, &[1, 1]),
            8 => (2, 3, &[1, 1, 0]),
            9 => (3, 2, &[1, 0]),
            _ => return Err(Error::TooLarge(format!("unsupported field size {q}"))),
        };
        let digits = |mut v: usize| -> Vec<usize> {
            (0..e)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[usize]| ds.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u8;
                let mut prod = vec![0usize; 2 * e];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce using u^e = -Σ modulus_t u^t
                for deg in (e..2 * e).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (t, &m) in modulus.iter().enumerate() {
                        prod[deg - e + t] = (prod[deg - e + t] + (p - m % p) % p * c) % p;
                    }
                }
                mul[a * q + b] = encode(&prod[..e]) as u8;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
        Ok(Self { q, add, mul, neg })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }
}

const MAX_DIM: u32 = 6;

/// Brute-force count of `X`-stable subspaces of codimension `r` in `F_q^m`,
/// where `X` is nilpotent of Jordan type `μ`.
///
/// Subspaces are enumerated as reduced row echelon forms, building rows
/// from the largest pivot down. In a Jordan basis where `X` raises the
/// index, stability of the partial span can be checked row by row, which
/// prunes the search exactly.
pub fn invariant_subspace_count(q: usize, mu: &[u32], r: u32) -> Result<u64> {
    let m: u32 = mu.iter().sum();
    if m > MAX_DIM {
        return Err(Error::TooLarge(format!("dimension {m} exceeds {MAX_DIM}")));
    }
    if r > m {
        return Err(Error::Precondition(format!("codimension {r} exceeds dimension {m}")));
    }
    let field = GaloisField::new(q)?;
    let m = m as usize;
    // successor[a] = Some(a + 1) unless a ends a Jordan block
    let mut successor = Vec::with_capacity(m);
    for &size in mu {
        let start = successor.len();
        for t in 0..size as usize {
            successor.push(if t + 1 < size as usize { Some(start + t + 1) } else { None });
        }
    }
    let k = m - r as usize;
    let mut search = Search { field: &field, m, successor, rows: Vec::new(), count: 0 };
    search.extend(m, k);
    Ok(search.count)
}

struct Search<'a> {
    field: &'a GaloisField,
    m: usize,
    successor: Vec<Option<usize>>,
    rows: Vec<(usize, Vec<u8>)>,
    count: u64,
}

impl Search<'_> {
    fn extend(&mut self, upper: usize, remaining: usize) {
        if remaining == 0 {
            self.count += 1;
            return;
        }
        for pivot in (remaining - 1..upper).rev() {
            let free: Vec<usize> = (pivot + 1..self.m)
                .filter(|c| !self.rows.iter().any(|(p, _)| p == c))
                .collect();
            let mut assignment = vec![0u8; free.len()];
            loop {
                let mut v = vec![0u8; self.m];
                v[pivot] = 1;
                for (c, &a) in free.iter().zip(&assignment) {
                    v[*c] = a;
                }
                if self.image_in_span(&v) {
                    self.rows.push((pivot, v));
                    self.extend(pivot, remaining - 1);
                    self.rows.pop();
                }
                if !self.advance(&mut assignment) {
                    break;
                }
            }
        }
    }

    fn advance(&self, digits: &mut [u8]) -> bool {
        for d in digits.iter_mut() {
            if (*d as usize) + 1 < self.field.q() {
                *d += 1;
                return true;
            }
            *d = 0;
        }
        false
    }

    fn image_in_span(&self, v: &[u8]) -> bool {
        let f = self.field;
        let mut w = vec![0u8; self.m];
        for (a, &c) in v.iter().enumerate() {
            if let Some(b) = self.successor[a] {
                w[b] = c;
            }
        }
        for (p, row) in &self.rows {
            let c = w[*p];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (wi, &ri) in w.iter_mut().zip(row) {
                *wi = f.add(*wi, f.mul(nc, ri));
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// Integer polynomial in `q`, lowest degree first.
pub type IntPoly = Vec<i64>;

fn int_mul(a: &[i64], b: &[i64]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn int_add(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn monomial(deg: usize) -> IntPoly {
    let mut out = vec![0; deg + 1];
    out[deg] = 1;
    out
}

/// Gaussian binomial `[n; k]_q`.
pub fn gaussian_binomial(n: u32, k: u32) -> IntPoly {
    if k > n {
        return Vec::new();
    }
    // row[j] = [i; j]_q, built by q-Pascal [i; j] = [i-1; j-1] + q^j [i-1; j]
    let mut row: Vec<IntPoly> = vec![vec![1]];
    for i in 1..=n as usize {
        let mut next = vec![vec![1]];
        for j in 1..=i {
            let left = row.get(j - 1).cloned().unwrap_or_default();
            let right = row.get(j).map(|p| int_mul(&monomial(j), p)).unwrap_or_default();
            next.push(int_add(&left, &right));
        }
        row = next;
    }
    row[k as usize].clone()
}

fn conjugate(mu: &[u32]) -> Vec<u32> {
    let top = mu.iter().copied().max().unwrap_or(0);
    (1..=top).map(|i| mu.iter().filter(|&&m| m >= i).count() as u32).collect()
}

fn partitions_inside(mu: &[u32], size: u32) -> Vec<Vec<u32>> {
    fn go(mu: &[u32], i: usize, cap: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if i == mu.len() {
            return;
        }
        for part in (1..=cap.min(mu[i]).min(left)).rev() {
            cur.push(part);
            go(mu, i + 1, part, left - part, cur, out);
            cur.pop();
        }
    }
    let mut sorted = mu.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    go(&sorted, 0, u32::MAX, size, &mut Vec::new(), &mut out);
    out
}

/// Number of `X`-stable subspaces of codimension `r` as a polynomial in `q`,
/// summing over submodule types `ν ⊆ μ` the count
/// `∏_i q^{ν'_{i+1}(μ'_i - ν'_i)} [μ'_i - ν'_{i+1}; ν'_i - ν'_{i+1}]_q`.
pub fn point_count_polynomial(mu: &[u32], r: u32) -> Result<IntPoly> {
    let m: u32 = mu.iter().sum();
    if r > m {
        return Err(Error::Precondition(format!("codimension {r} exceeds dimension {m}")));
    }
    let mc = conjugate(mu);
    let mut total: IntPoly = Vec::new();
    for nu in partitions_inside(mu, m - r) {
        let nc = conjugate(&nu);
        let at = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
        let mut term = vec![1];
        for i in 0..mc.len() {
            let (mi, ni, ni1) = (at(&mc, i), at(&nc, i), at(&nc, i + 1));
            term = int_mul(&term, &monomial((ni1 * (mi - ni)) as usize));
            term = int_mul(&term, &gaussian_binomial(mi - ni1, ni - ni1));
        }
        total = int_add(&total, &term);
    }
    Ok(total)
}

pub fn eval_int_poly(p: &[i64], q: i64) -> i64 {
    p.iter().rev().fold(0, |acc, c| acc * q + c)
}

/// The point-count table row for `(μ, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCountRow {
    pub mu: Vec<u32>,
    pub r: u32,
    /// `(q, brute-force count)`
    pub counts: Vec<(usize, u64)>,
    pub polynomial: IntPoly,
    /// Closed form agrees with every brute-force count.
    pub fits: bool,
    pub value_at_one: i64,
    pub fixed_count: u64,
}

pub fn point_count_row(mu: &[u32], r: u32, qs: &[usize]) -> Result<PointCountRow> {
    let polynomial = point_count_polynomial(mu, r)?;
    let mut counts = Vec::new();
    for &q in qs {
        counts.push((q, invariant_subspace_count(q, mu, r)?));
    }
    let fits = counts
        .iter()
        .all(|&(q, c)| eval_int_poly(&polynomial, q as i64) == c as i64);
    Ok(PointCountRow {
        mu: mu.to_vec(),
        r,
        counts,
        value_at_one: eval_int_poly(&polynomial, 1),
        polynomial,
        fits,
        fixed_count: spaltenstein_fixed_count(mu, r),
    })
}

/// Lagrange interpolation through the points, exact over the rationals.
pub fn interpolate(points: &[(i64, i64)]) -> UniPoly {
    let mut out = UniPoly::new(Vec::new());
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let mut basis = UniPoly::one();
        let mut denom = Rational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = basis.mul(&UniPoly::linear(&Rational::from_integer(xj.into())));
                denom *= Rational::from_integer((xi - xj).into());
            }
        }
        let scale = Rational::from_integer(yi.into()) / denom;
        let scaled: Vec<Rational> = basis.coeffs.iter().map(|c| c * &scale).collect();
        let len = scaled.len().max(out.coeffs.len());
        let mut sum = vec![Rational::zero(); len];
        for (t, c) in out.coeffs.iter().enumerate() {
            sum[t] += c;
        }
        for (t, c) in scaled.iter().enumerate() {
            sum[t] += c;
        }
        out = UniPoly::new(sum);
    }
    out
}

/// All partitions of `m` in weakly decreasing order.
pub fn partitions(m: u32) -> Vec<Vec<u32>> {
    fn go(left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=cap.min(left)).rev() {
            cur.push(part);
            go(left - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn fixed_points_single_weight() {
        let ws = WeightSystem::new(1, vec![vec![1]]).unwrap();
        assert_eq!(torus_fixed_points(&ws, 2), vec![vec![-2], vec![-1], vec![0]]);
        let ws = WeightSystem::new(1, vec![vec![1], vec![-1]]).unwrap();
        assert_eq!(torus_fixed_points(&ws, 2), vec![vec![0]]);
        assert!(WeightSystem::new(2, vec![vec![1]]).is_err());
        assert!(WeightSystem::new(1, vec![]).is_err());
    }

    #[test]
    fn gt_examples() {
        let p = gt_patterns(2, &[3]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].rows(), &[vec![-3]]);

        let p = gt_patterns(3, &[1, 1]).unwrap();
        assert_eq!(p.len(), 2);
        let tops: BTreeSet<Vec<i64>> = p.iter().map(|g| g.rows()[1].clone()).collect();
        assert_eq!(tops, [vec![0, -1], vec![-1, 0]].into_iter().collect());
        assert!(p.iter().all(|g| g.rows()[0] == vec![-1]));

        assert_eq!(gt_patterns(3, &[0, 0]).unwrap().len(), 1);
    }

    #[test]
    fn gt_matches_weight_system() {
        for n in 2..=4usize {
            let ranges = vec![0..=3i64; n - 1];
            let mut degs = vec![vec![]];
            for rg in ranges {
                degs = degs
                    .into_iter()
                    .flat_map(|d: Vec<i64>| rg.clone().map(move |v| [d.clone(), vec![v]].concat()))
                    .collect();
            }
            for d in degs {
                if n == 4 && d.iter().sum::<i64>() > 6 {
                    continue;
                }
                let pats = gt_patterns(n, &d).unwrap();
                let flat: Vec<Vec<i64>> = pats.iter().map(|p| p.flatten()).collect();
                let mut sorted = flat.clone();
                sorted.sort();
                assert_eq!(sorted, type_a_fixed_points(n, &d).unwrap(), "n={n} d={d:?}");
                assert!(pats.iter().all(|p| p.degrees() == d));
            }
        }
    }

    #[test]
    fn spaltenstein_counts() {
        assert_eq!(spaltenstein_fixed_count(&[2, 1], 1), 2);
        let total: u64 = (0..=3).map(|r| spaltenstein_fixed_count(&[2, 1], r)).sum();
        assert_eq!(total, 6);
        assert_eq!(spaltenstein_fixed_count(&[0, 0], 0), 1);
        assert_eq!(spaltenstein_fixed_count(&[], 0), 1);
    }

    #[test]
    fn predicted_dims() {
        assert_eq!(predicted_dimension(&[2, 1]), (6, vec!["V(2)".into(), "V(1)".into()]));
        assert_eq!(predicted_dimension(&[]), (1, vec![]));
        assert_eq!(predicted_dimension(&[3]).0, 4);
    }

    #[test]
    fn drinfeld_examples() {
        let (p, s) = drinfeld_polynomial(&[q(0)], &[2]).unwrap();
        assert_eq!(p.coeffs(), &[q(2), q(-3), q(1)]);
        assert_eq!(p.to_string(), "1 * u^2 - 3 * u + 2");
        assert_eq!(s.to_string(), "{1,2}");

        let (p, s) = drinfeld_polynomial(&[q(0), q(3)], &[0, 0]).unwrap();
        assert_eq!(p, UniPoly::one());
        assert!(s.strings.iter().all(|x| x.elements().is_empty()));

        let (p, s) = drinfeld_polynomial(&[q(0), q(5)], &[2, 1]).unwrap();
        assert!(drinfeld_ratio_holds(&p, &s));
        assert!(drinfeld_polynomial(&[q(0)], &[-1]).is_err());
        assert!(drinfeld_polynomial(&[q(0)], &[1, 2]).is_err());
    }

    fn general_position_brute(strings: &RootStringSet) -> bool {
        let sets: Vec<BTreeSet<Rational>> =
            strings.strings.iter().map(|s| s.elements().into_iter().collect()).collect();
        (0..sets.len()).all(|i| {
            (0..sets.len()).all(|j| {
                i == j
                    || sets[i].is_disjoint(&sets[j])
                    || sets[i].is_subset(&sets[j])
                    || sets[j].is_subset(&sets[i])
            })
        })
    }

    #[test]
    fn general_position_examples() {
        let set = |v: &[(i64, u32)]| {
            RootStringSet::new(v.iter().map(|&(r, len)| RootString { r: q(r), len }).collect())
        };
        assert!(!general_position(&set(&[(0, 2), (1, 2)])));
        assert!(general_position(&set(&[(0, 3), (1, 1)])));
        assert!(general_position(&set(&[(0, 2), (5, 2)])));
        let half = RootStringSet::new(vec![
            RootString { r: q(0), len: 3 },
            RootString { r: Rational::new(1.into(), 2.into()), len: 3 },
        ]);
        assert!(general_position(&half));
        assert!(general_position_brute(&half));
    }

    #[test]
    fn shift_and_evaluate() {
        let p = UniPoly::new(vec![q(2), q(-3), q(1)]);
        let s = p.shift(&q(1));
        for u in -3..4 {
            assert_eq!(s.evaluate(&q(u)), p.evaluate(&q(u + 1)));
        }
    }

    #[test]
    fn field_axioms() {
        for qq in [2, 3, 4, 5, 7, 8, 9] {
            let f = GaloisField::new(qq).unwrap();
            for a in 0..qq as u8 {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert!((0..qq as u8).any(|b| f.mul(a, b) == 1), "q={qq} a={a}");
                }
                for b in 0..qq as u8 {
                    for c in 0..qq as u8 {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
        assert!(GaloisField::new(6).is_err());
    }

    #[test]
    fn invariant_subspace_examples() {
        assert_eq!(invariant_subspace_count(2, &[1, 1], 1).unwrap(), 3);
        assert_eq!(invariant_subspace_count(3, &[2], 1).unwrap(), 1);
        assert_eq!(invariant_subspace_count(5, &[3, 2], 0).unwrap(), 1);
        assert!(invariant_subspace_count(2, &[4, 3], 1).is_err());
        assert!(invariant_subspace_count(6, &[1], 1).is_err());
    }

    #[test]
    fn zero_operator_counts_grassmannian() {
        for m in 1..=4u32 {
            for r in 0..=m {
                let g = gaussian_binomial(m, r);
                let mu = vec![1; m as usize];
                for qq in [2usize, 3] {
                    assert_eq!(
                        invariant_subspace_count(qq, &mu, r).unwrap() as i64,
                        eval_int_poly(&g, qq as i64)
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_matches_small_cases() {
        for m in 1..=4 {
            for mu in partitions(m) {
                for r in 0..=m {
                    let row = point_count_row(&mu, r, &[2, 3]).unwrap();
                    assert!(row.fits, "{row:?}");
                    assert_eq!(row.value_at_one, row.fixed_count as i64, "{row:?}");
                }
            }
        }
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = vec![1i64, 0, 2, 1];
        let pts: Vec<(i64, i64)> = (2..=5).map(|x| (x, eval_int_poly(&p, x))).collect();
        let f = interpolate(&pts);
        assert_eq!(f.coeffs(), &[q(1), q(0), q(2), q(1)]);
    }

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(partitions(0), vec![Vec::<u32>::new()]);
    }
}
