//! Fourier-Motzkin elimination over the rationals.
//!
//! A system is a list of constraints `coeffs . xi + constant > 0` (strict) or
//! `>= 0` (weak). Elimination is exact; systems here have at most a handful of
//! variables so the doubly exponential worst case never matters.

use num::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, constant: Rational, strict: bool) -> Self {
        Self { coeffs, constant, strict }
    }

    pub fn weak_int(coeffs: &[i64], constant: i64) -> Self {
        Self {
            coeffs: coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(),
            constant: Rational::from_integer(constant.into()),
            strict: false,
        }
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn constant_holds(&self) -> bool {
        if self.strict {
            self.constant.is_positive()
        } else {
            !self.constant.is_negative()
        }
    }

    /// Rescale so the largest absolute coefficient is one.
    fn normalized(mut self) -> Self {
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .filter(|m| !m.is_zero());
        if let Some(scale) = scale {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &scale;
            }
            self.constant = &self.constant / &scale;
        }
        self
    }

    pub fn holds_at(&self, point: &[Rational]) -> bool {
        let mut value = self.constant.clone();
        for (c, p) in self.coeffs.iter().zip(point) {
            value += c * p;
        }
        if self.strict {
            value.is_positive()
        } else {
            !value.is_negative()
        }
    }
}

/// Outcome of eliminating a variable: either the reduced system or a proof
/// of infeasibility (a violated constant constraint).
enum Reduced {
    System(Vec<Constraint>),
    Infeasible,
}

fn clean(system: Vec<Constraint>) -> Reduced {
    let mut out: Vec<Constraint> = Vec::with_capacity(system.len());
    for c in system {
        if c.is_constant() {
            if !c.constant_holds() {
                return Reduced::Infeasible;
            }
            continue;
        }
        let c = c.normalized();
        // A weak copy is implied by a strict copy with the same data.
        if let Some(existing) = out
            .iter_mut()
            .find(|e| e.coeffs == c.coeffs && e.constant == c.constant)
        {
            existing.strict |= c.strict;
        } else {
            out.push(c);
        }
    }
    Reduced::System(out)
}

fn eliminate(system: Vec<Constraint>, var: usize) -> Reduced {
    let mut keep = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for c in system {
        let a = &c.coeffs[var];
        if a.is_zero() {
            keep.push(c);
        } else if a.is_positive() {
            lower.push(c);
        } else {
            upper.push(c);
        }
    }
    for lo in &lower {
        for up in &upper {
            // lo: a x + r, up: -b x + s with a, b > 0; combine b*lo + a*up.
            let a = lo.coeffs[var].clone();
            let b = -up.coeffs[var].clone();
            let coeffs = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .enumerate()
                .map(|(j, (l, u))| {
                    if j == var {
                        Rational::zero()
                    } else {
                        &b * l + &a * u
                    }
                })
                .collect();
            let constant = &b * &lo.constant + &a * &up.constant;
            keep.push(Constraint::new(coeffs, constant, lo.strict || up.strict));
        }
    }
    clean(keep)
}

/// Eliminates every variable except those in `retain`.
fn project(system: &[Constraint], retain: &[usize]) -> Reduced {
    let dim = system.first().map_or(0, |c| c.coeffs.len());
    let mut current = match clean(system.to_vec()) {
        Reduced::System(s) => s,
        Reduced::Infeasible => return Reduced::Infeasible,
    };
    for var in (0..dim).filter(|v| !retain.contains(v)) {
        current = match eliminate(current, var) {
            Reduced::System(s) => s,
            Reduced::Infeasible => return Reduced::Infeasible,
        };
    }
    Reduced::System(current)
}

pub fn is_feasible(system: &[Constraint]) -> bool {
    matches!(project(system, &[]), Reduced::System(_))
}

/// Bounds of one coordinate over the solution set, `None` if the system is
/// infeasible. Each side is `None` when unbounded in that direction.
pub fn coordinate_bounds(
    system: &[Constraint],
    var: usize,
) -> Option<(Option<Rational>, Option<Rational>)> {
    let reduced = match project(system, &[var]) {
        Reduced::System(s) => s,
        Reduced::Infeasible => return None,
    };
    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for c in reduced {
        let a = &c.coeffs[var];
        let bound = -&c.constant / a;
        if a.is_positive() {
            lo = Some(match lo {
                Some(l) if l >= bound => l,
                _ => bound,
            });
        } else {
            hi = Some(match hi {
                Some(h) if h <= bound => h,
                _ => bound,
            });
        }
    }
    Some((lo, hi))
}

/// Supremum of `functional . xi` over the solution set. `None` if the
/// system is infeasible, `Some(None)` if unbounded above.
pub fn supremum(system: &[Constraint], functional: &[Rational]) -> Option<Option<Rational>> {
    let dim = functional.len();
    let mut lifted: Vec<Constraint> = system
        .iter()
        .map(|c| {
            let mut coeffs = c.coeffs.clone();
            coeffs.push(Rational::zero());
            Constraint::new(coeffs, c.constant.clone(), c.strict)
        })
        .collect();
    // t == functional . xi, written as two weak inequalities.
    let mut up: Vec<Rational> = functional.iter().map(|f| -f.clone()).collect();
    up.push(Rational::one());
    let down: Vec<Rational> = up.iter().map(|c| -c.clone()).collect();
    lifted.push(Constraint::new(up, Rational::zero(), false));
    lifted.push(Constraint::new(down, Rational::zero(), false));
    coordinate_bounds(&lifted, dim).map(|(_, hi)| hi)
}
