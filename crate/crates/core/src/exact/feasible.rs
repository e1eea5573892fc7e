use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{int, rational_one, AffineSolution, Rational};

/// `coeffs . t + constant > 0` (strict) or `>= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub strict: bool,
}

impl Constraint {
    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn holds_trivially(&self) -> bool {
        if self.strict {
            self.constant.is_positive()
        } else {
            !self.constant.is_negative()
        }
    }

    /// Scales so the leading non-zero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in self.coeffs.iter_mut() {
                *c /= &lead;
            }
            self.constant /= &lead;
        }
        self
    }
}

/// True iff some point of the affine set has every coordinate strictly
/// positive. Decided exactly by Fourier–Motzkin elimination.
pub fn positive_feasible(solset: &AffineSolution) -> bool {
    positive_point(solset).is_some()
}

/// A witness for [`positive_feasible`]: a point of the set with all
/// coordinates `> 0`, or `None` if there is none.
pub fn positive_point(solset: &AffineSolution) -> Option<Vec<Rational>> {
    let dims = solset.kernel.len();
    let system: Vec<Constraint> = (0..solset.dimension())
        .map(|i| Constraint {
            coeffs: solset.kernel.iter().map(|k| k[i].clone()).collect(),
            constant: solset.particular[i].clone(),
            strict: true,
        })
        .collect();
    let coeffs = solve_system(system, dims)?;
    Some(solset.point(&coeffs))
}

/// Finds `t` satisfying every constraint, or `None`.
pub(crate) fn solve_system(system: Vec<Constraint>, vars: usize) -> Option<Vec<Rational>> {
    let mut stages: Vec<Vec<Constraint>> = Vec::with_capacity(vars);
    let mut current = prune(system)?;
    for v in 0..vars {
        let next = eliminate(&current, v);
        stages.push(current);
        current = prune(next)?;
    }
    debug_assert!(current.iter().all(|c| c.is_constant()));

    let mut t: Vec<Rational> = alloc::vec![Rational::zero(); vars];
    for v in (0..vars).rev() {
        t[v] = pick_value(&stages[v], v, &t)?;
    }
    Some(t)
}

fn prune(system: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut out: Vec<Constraint> = Vec::with_capacity(system.len());
    for c in system {
        if c.is_constant() {
            if !c.holds_trivially() {
                return None;
            }
            continue;
        }
        let c = c.normalized();
        if !out.contains(&c) {
            out.push(c);
        }
    }
    Some(out)
}

fn eliminate(system: &[Constraint], v: usize) -> Vec<Constraint> {
    let mut out = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for c in system {
        if c.coeffs[v].is_positive() {
            lower.push(c);
        } else if c.coeffs[v].is_negative() {
            upper.push(c);
        } else {
            out.push(c.clone());
        }
    }
    for p in &lower {
        for n in &upper {
            let wp = -n.coeffs[v].clone();
            let wn = p.coeffs[v].clone();
            let coeffs = p.coeffs.iter().zip(&n.coeffs).map(|(a, b)| &wp * a + &wn * b).collect();
            out.push(Constraint {
                coeffs,
                constant: &wp * &p.constant + &wn * &n.constant,
                strict: p.strict || n.strict,
            });
        }
    }
    out
}

/// Chooses `t[v]` inside the interval cut out by `system` once the later
/// variables are fixed.
fn pick_value(system: &[Constraint], v: usize, t: &[Rational]) -> Option<Rational> {
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for c in system {
        let a = &c.coeffs[v];
        let mut rest = c.constant.clone();
        for (j, coef) in c.coeffs.iter().enumerate().skip(v + 1) {
            rest += coef * &t[j];
        }
        if a.is_zero() {
            continue;
        }
        let bound = -rest / a;
        if a.is_positive() {
            let tighter = match &lo {
                None => true,
                Some((b, s)) => bound > *b || (bound == *b && c.strict && !s),
            };
            if tighter {
                lo = Some((bound, c.strict));
            }
        } else {
            let tighter = match &hi {
                None => true,
                Some((b, s)) => bound < *b || (bound == *b && c.strict && !s),
            };
            if tighter {
                hi = Some((bound, c.strict));
            }
        }
    }
    match (lo, hi) {
        (None, None) => Some(int(0)),
        (Some((l, s)), None) => Some(if s { l + rational_one() } else { l }),
        (None, Some((u, s))) => Some(if s { u - rational_one() } else { u }),
        (Some((l, ls)), Some((u, us))) => {
            if l < u {
                Some((l + u) / int(2))
            } else if l == u && !ls && !us {
                Some(l)
            } else {
                None
            }
        }
    }
}
