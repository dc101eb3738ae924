//! Lattice points of `{a ≥ 0 : deg(x^a) = α}`.
//!
//! The fibre of the degree map over `α` is `a₀ + A·Z^n`, with `a₀` any lift
//! and `A` the ray matrix, so the graded piece is the set of `m ∈ Z^n` with
//! `A·m ≥ −a₀`. The right-hand side is the only part depending on `α`, so the
//! Fourier–Motzkin projections are computed once per variety with every
//! derived inequality remembering the nonnegative combination of original
//! rows it came from.

use super::ClassElement;
use crate::lattice::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    pub class: ClassElement,
    pub monomials: Vec<Vec<u32>>,
}

/// `coeffs · m ≥ weights · (−a₀)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Inequality {
    coeffs: Vec<BigInt>,
    weights: Vec<BigInt>,
}

impl Inequality {
    fn normalized(mut self) -> Self {
        let g = self
            .coeffs
            .iter()
            .chain(&self.weights)
            .fold(BigInt::zero(), |g, v| g.gcd(v));
        if !g.is_zero() && g != BigInt::from(1) {
            for v in self.coeffs.iter_mut().chain(self.weights.iter_mut()) {
                *v /= &g;
            }
        }
        self
    }

    fn rhs(&self, neg_base: &[BigInt]) -> BigInt {
        self.weights.iter().zip(neg_base).map(|(w, b)| w * b).sum()
    }
}

/// `levels[k]` holds the projection onto the first `k` coordinates.
#[derive(Clone, Debug)]
pub(crate) struct Tower {
    levels: Vec<Vec<Inequality>>,
}

impl Tower {
    pub(crate) fn new(rays: &IntMatrix) -> Self {
        let (r, n) = (rays.rows(), rays.cols());
        let mut system: BTreeSet<Inequality> = (0..r)
            .map(|i| {
                let mut weights = vec![BigInt::zero(); r];
                weights[i] = 1.into();
                Inequality {
                    coeffs: rays.row(i).to_vec(),
                    weights,
                }
            })
            .collect();
        let mut levels = vec![Vec::new(); n + 1];
        for k in (0..n).rev() {
            levels[k + 1] = system.iter().cloned().collect();
            let (mut lower, mut upper, mut next) = (Vec::new(), Vec::new(), BTreeSet::new());
            for ineq in system {
                if ineq.coeffs[k].is_positive() {
                    lower.push(ineq);
                } else if ineq.coeffs[k].is_negative() {
                    upper.push(ineq);
                } else {
                    next.insert(ineq);
                }
            }
            for lo in &lower {
                for up in &upper {
                    let (p, q) = (&lo.coeffs[k], -&up.coeffs[k]);
                    let combine = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
                        a.iter().zip(b).map(|(x, y)| x * &q + y * p).collect()
                    };
                    next.insert(
                        Inequality {
                            coeffs: combine(&lo.coeffs, &up.coeffs),
                            weights: combine(&lo.weights, &up.weights),
                        }
                        .normalized(),
                    );
                }
            }
            system = next;
        }
        levels[0] = system.into_iter().collect();
        Tower { levels }
    }

    /// Sorted lattice points, or `None` when the polyhedron is nonempty and
    /// unbounded.
    pub(crate) fn enumerate(&self, base: &[BigInt], rays: &IntMatrix) -> Option<Vec<Vec<u32>>> {
        let neg_base: Vec<BigInt> = base.iter().map(|v| -v).collect();
        if self.levels[0].iter().any(|q| q.rhs(&neg_base).is_positive()) {
            return Some(Vec::new());
        }
        let n = self.levels.len() - 1;
        for k in 0..n {
            let has = |pos: bool| {
                self.levels[k + 1]
                    .iter()
                    .any(|q| if pos { q.coeffs[k].is_positive() } else { q.coeffs[k].is_negative() })
            };
            if !has(true) || !has(false) {
                return None;
            }
        }
        let rhs: Vec<Vec<BigInt>> = self
            .levels
            .iter()
            .map(|level| level.iter().map(|q| q.rhs(&neg_base)).collect())
            .collect();
        let mut out = Vec::new();
        let mut point = Vec::with_capacity(n);
        self.descend(&rhs, &mut point, &mut |m| {
            let a: Vec<BigInt> = rays.mul_vec(m).iter().zip(base).map(|(x, b)| x + b).collect();
            debug_assert!(a.iter().all(|v| !v.is_negative()));
            let exps = a
                .iter()
                .map(|v| u32::try_from(v).expect("exponent exceeds u32"))
                .collect();
            out.push(exps);
        });
        out.sort();
        Some(out)
    }

    fn descend(&self, rhs: &[Vec<BigInt>], point: &mut Vec<BigInt>, emit: &mut impl FnMut(&[BigInt])) {
        let k = point.len();
        if k == self.levels.len() - 1 {
            emit(point);
            return;
        }
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for (q, b) in self.levels[k + 1].iter().zip(&rhs[k + 1]) {
            let c = &q.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let rest: BigInt = b - q.coeffs[..k].iter().zip(point.iter()).map(|(x, y)| x * y).sum::<BigInt>();
            if c.is_positive() {
                let bound = rest.div_ceil(c);
                if lo.as_ref().is_none_or(|l| bound > *l) {
                    lo = Some(bound);
                }
            } else {
                let bound = rest.div_floor(c);
                if hi.as_ref().is_none_or(|h| bound < *h) {
                    hi = Some(bound);
                }
            }
        }
        let (lo, hi) = (lo.expect("bounded"), hi.expect("bounded"));
        let mut v = lo;
        while v <= hi {
            point.push(v.clone());
            self.descend(rhs, point, emit);
            point.pop();
            v += 1;
        }
    }
}
