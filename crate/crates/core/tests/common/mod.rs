//! Shared fixtures and an independent model of the weight modules.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use hypertoric::lattice::{Flavor, ModuleSignature, Sign, TorusDatum};
use hypertoric::{AlgebraElement, GTPoly, Rational, Var};
use rand::Rng;

pub fn sqed() -> Arc<TorusDatum> {
    Arc::new(TorusDatum::new(1, vec![vec![1]]).unwrap())
}

pub fn pair() -> Arc<TorusDatum> {
    Arc::new(TorusDatum::new(1, vec![vec![1], vec![-1]]).unwrap())
}

pub fn rank_two() -> Arc<TorusDatum> {
    Arc::new(TorusDatum::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap())
}

pub fn datums() -> Vec<Arc<TorusDatum>> {
    vec![sqed(), pair(), rank_two()]
}

pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn restricted(datum: &TorusDatum, sigma: &[i64]) -> Vec<i64> {
    datum.iota().iter().map(|row| row.iter().zip(sigma).map(|(a, b)| a * b).sum()).collect()
}

/// `α_i x̄_i(σ) >= α_i μ_i` for every `i ∉ S`.
pub fn direct_support(sig: &ModuleSignature, sigma: &[i64]) -> bool {
    let r = restricted(sig.datum(), sigma);
    (0..sig.datum().n()).all(|i| {
        sig.subset().contains(&i) || {
            let a = sig.alpha()[i].value();
            a * r[i] >= a * sig.mu()[i]
        }
    })
}

/// `y_i δ_{i∈S} + (x̄_i(σ) - μ_i + α_i/2) ℏ`.
pub fn eigenvalue(sig: &ModuleSignature, sigma: &[i64], i: usize) -> GTPoly {
    let n = sig.datum().n();
    let r = restricted(sig.datum(), sigma);
    let a = sig.alpha()[i].value();
    let c = Rational::from_integer((r[i] - sig.mu()[i]).into()) + rat(a, 2);
    let base = GTPoly::h(n).scale(&c);
    if sig.subset().contains(&i) {
        &base + &GTPoly::y(n, i)
    } else {
        base
    }
}

/// Expanded action coefficient
/// `∏_{α_iλ_i<0} ∏_{j=1}^{|λ_i|} (y_iδ_{i∈S} + (λ_i + σ_i + α_i j - μ_i)ℏ)`.
pub fn coefficient(sig: &ModuleSignature, sigma: &[i64], lambda: &[i64]) -> GTPoly {
    let datum = sig.datum();
    let n = datum.n();
    let s = restricted(datum, sigma);
    let l = restricted(datum, lambda);
    let mut out = GTPoly::one(n);
    for i in 0..n {
        let a = sig.alpha()[i].value();
        if a * l[i] >= 0 {
            continue;
        }
        for j in 1..=l[i].abs() {
            let mut f = GTPoly::h(n).scale(&Rational::from_integer((l[i] + s[i] + a * j - sig.mu()[i]).into()));
            if sig.subset().contains(&i) {
                f = &f + &GTPoly::y(n, i);
            }
            out = &out * &f;
        }
    }
    out
}

pub type Model = BTreeMap<Vec<i64>, GTPoly>;

/// The action on the small-flavor module, written directly from the
/// eigenvalue and coefficient formulas.
pub fn model_act(sig: &ModuleSignature, a: &AlgebraElement, v: &Model) -> Model {
    let mut out = Model::new();
    for (lambda, p) in a.terms() {
        for (sigma, f) in v {
            let target: Vec<i64> = sigma.iter().zip(lambda).map(|(x, y)| x + y).collect();
            if !direct_support(sig, &target) {
                continue;
            }
            let value = p.substitute(|var| match var {
                Var::X(i) => Some(eigenvalue(sig, &target, i)),
                _ => None,
            });
            let term = &(&value * &coefficient(sig, sigma, lambda)) * f;
            let slot = out.entry(target).or_insert_with(|| GTPoly::zero(sig.datum().n()));
            *slot = &*slot + &term;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

pub fn model_basis(sig: &ModuleSignature, sigma: &[i64]) -> Model {
    let mut m = Model::new();
    if direct_support(sig, sigma) {
        m.insert(sigma.to_vec(), GTPoly::one(sig.datum().n()));
    }
    m
}

pub fn as_model(v: &hypertoric::ModuleVector) -> Model {
    v.entries().map(|(k, p)| (k.clone(), p.clone())).collect()
}

pub fn random_alpha<R: Rng>(n: usize, rng: &mut R) -> Vec<Sign> {
    (0..n).map(|_| if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus }).collect()
}

pub fn random_subset<R: Rng>(n: usize, rng: &mut R) -> BTreeSet<usize> {
    (0..n).filter(|_| rng.gen_bool(0.4)).collect()
}

pub fn signature(
    datum: &Arc<TorusDatum>,
    alpha: Vec<Sign>,
    subset: BTreeSet<usize>,
    mu: Vec<i64>,
    flavor: Flavor,
) -> Arc<ModuleSignature> {
    Arc::new(ModuleSignature::new(datum.clone(), alpha, subset, mu, flavor).unwrap())
}
