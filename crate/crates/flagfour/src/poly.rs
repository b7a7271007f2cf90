//! Univariate polynomials over the rationals with Sturm-sequence real-root
//! isolation.
//!
//! Used by the quartic analysis of the `SO(2ℓ)/U(p)×U(ℓ−p)` Einstein system,
//! where the root-counting argument is a sign analysis and therefore needs
//! exact arithmetic.

use crate::rat::{q, to_f64, Q};
use num::{Signed, Zero};

/// Polynomial with ascending rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    /// `coeffs[i]` multiplies `x^i`; trailing zeros trimmed.
    pub coeffs: Vec<Q>,
}

impl Poly {
    /// Build from ascending coefficients (trailing zeros trimmed).
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `true` when identically zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact evaluation (Horner).
    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(q(0), |acc, c| acc * x + c)
    }

    /// Floating-point evaluation (Horner).
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| q(i as i64) * c)
                .collect(),
        )
    }

    /// Exact polynomial remainder of `self / other`.
    fn rem(&self, other: &Poly) -> Poly {
        let dd = other.degree().expect("division by zero polynomial");
        let lead = other.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let rn = r.len() - 1;
            if rn < dd {
                break;
            }
            let factor = r[rn].clone() / &lead;
            if factor.is_zero() {
                r.pop();
                continue;
            }
            for k in 0..=dd {
                let sub = &factor * &other.coeffs[k];
                r[rn - dd + k] -= sub;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }
}

/// The Sturm chain of a polynomial.
pub fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(Poly::new(r.coeffs.iter().map(|c| -c).collect()));
    }
}

fn sign_variations(chain: &[Poly], x: &Q) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                changes += 1;
            }
        }
        last = Some(s);
    }
    changes
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots(chain: &[Poly], a: &Q, b: &Q) -> usize {
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Isolate the distinct real roots of `f` in the open interval `(a, b)` and
/// refine each to `f64` accuracy by bisection. Roots at the endpoints are
/// excluded.
pub fn roots_in_open_interval(f: &Poly, a: &Q, b: &Q) -> Vec<f64> {
    let chain = sturm_chain(f);
    // Shrink endpoints slightly inward if f vanishes exactly there so the
    // open-interval contract holds.
    let mut lo = a.clone();
    let mut hi = b.clone();
    let width = &hi - &lo;
    if f.eval(&lo).is_zero() {
        lo += &width / q(1_000_000);
    }
    if f.eval(&hi).is_zero() {
        hi -= &width / q(1_000_000);
    }
    let mut stack = vec![(lo, hi)];
    let mut isolated: Vec<(Q, Q)> = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        match count_roots(&chain, &lo, &hi) {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                // Split at a point that is not itself a root (try a few
                // ratios; a polynomial has finitely many roots).
                let mid = [(1i64, 2i64), (5, 11), (7, 13), (3, 7), (2, 5)]
                    .iter()
                    .map(|&(n, d)| &lo + (&hi - &lo) * q(n) / q(d))
                    .find(|m| !f.eval(m).is_zero())
                    .expect("some split ratio avoids all roots");
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    let mut roots: Vec<f64> = isolated
        .into_iter()
        .map(|(lo, hi)| {
            // Exact bisection down to a narrow rational interval, then f64.
            let (mut lo, mut hi) = (lo, hi);
            let slo = f.eval(&lo).is_positive();
            for _ in 0..80 {
                let mid = (&lo + &hi) / q(2);
                let v = f.eval(&mid);
                if v.is_zero() {
                    return to_f64(&mid);
                }
                if v.is_positive() == slo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            to_f64(&((&lo + &hi) / q(2)))
        })
        .collect();
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qr;

    #[test]
    fn isolates_quadratic_roots() {
        // (x − 1)(x − 3) = x² − 4x + 3
        let f = Poly::new(vec![q(3), q(-4), q(1)]);
        let roots = roots_in_open_interval(&f, &q(0), &q(10));
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 1.0).abs() < 1e-12);
        assert!((roots[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn counts_respect_interval() {
        let f = Poly::new(vec![qr(-1, 2), q(0), q(1)]); // x² − 1/2
        let chain = sturm_chain(&f);
        assert_eq!(count_roots(&chain, &q(0), &q(1)), 1);
        assert_eq!(count_roots(&chain, &q(-1), &q(1)), 2);
    }
}
