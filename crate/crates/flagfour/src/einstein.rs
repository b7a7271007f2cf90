//! Ricci components of diagonal invariant metrics, the Einstein system, and
//! its complete set of real positive solutions.
//!
//! Solutions come from three routes that are cross-checked against each
//! other: multi-start damped Newton iteration, the closed-form families of
//! the symmetric ansätze, and exact quartic root isolation for
//! `SO(2ℓ)/U(p)×U(ℓ−p)`.

use crate::flagdecomp::TypeTag;
use crate::poly::{roots_in_open_interval, Poly};
use crate::rat::{q, qr, Q};
use crate::structconst::TripleTable;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// Errors from the Einstein-system operations.
#[derive(Debug, Error, PartialEq)]
pub enum EinsteinError {
    /// Metrics must have strictly positive entries.
    #[error("metric entries must be positive")]
    NonPositiveMetric,
    /// Parameter outside a closed-form theorem's stated range.
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    /// The quartic window degenerates at `ℓ = 2p`.
    #[error("quartic analysis undefined at l = 2p")]
    DegenerateWindow,
    /// Type tag without specialized Ricci formulas.
    #[error("unsupported decomposition type")]
    UnsupportedType,
}

/// Diagonal metric parameters `(x1, x2, x3, x4)`.
pub type MetricParams = [f64; 4];

/// Classification of a solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SolutionKind {
    /// Matches the KE metric of the named invariant ordering up to scale.
    KaehlerEinstein(String),
    /// Positive Einstein metric not matching any KE metric.
    NonKaehler,
    /// Proportional to the normal metric `(1,1,1,1)`.
    Normal,
}

/// One real positive Einstein solution.
#[derive(Debug, Clone, Serialize)]
pub struct EinsteinSolution {
    /// Metric normalized to `x1 = 1`.
    pub metric: MetricParams,
    /// The common Ricci value `e` with `Ric = e·g`.
    pub einstein_constant: f64,
    /// Final `max_i |r_i − r_{i+1}|`.
    pub residual: f64,
    /// Kind tag.
    pub kind: SolutionKind,
}

fn check_metric(x: &MetricParams) -> Result<(), EinsteinError> {
    if x.iter().all(|&v| v > 0.0 && v.is_finite()) {
        Ok(())
    } else {
        Err(EinsteinError::NonPositiveMetric)
    }
}

/// Specialized Ricci components for the three four-summand types.
pub fn ricci_components(
    tag: TypeTag,
    dims: &[usize; 4],
    triples: &TripleTable,
    x: &MetricParams,
) -> Result<[f64; 4], EinsteinError> {
    check_metric(x)?;
    let d: [f64; 4] = std::array::from_fn(|i| dims[i] as f64);
    let [x1, x2, x3, x4] = *x;
    let sym = |a: f64, b: f64, c: f64| a / (b * c) - b / (a * c) - c / (a * b);
    let mut r: [f64; 4] = std::array::from_fn(|i| 1.0 / (2.0 * x[i]));
    match tag {
        TypeTag::TypeI => {
            let c112 = triples.get_f64(1, 1, 2);
            let c123 = triples.get_f64(1, 2, 3);
            let c134 = triples.get_f64(1, 3, 4);
            let c224 = triples.get_f64(2, 2, 4);
            r[0] += -c112 / (2.0 * d[0]) * x2 / (x1 * x1)
                + c123 / (2.0 * d[0]) * sym(x1, x2, x3)
                + c134 / (2.0 * d[0]) * sym(x1, x3, x4);
            r[1] += c112 / (4.0 * d[1]) * (x2 / (x1 * x1) - 2.0 / x2)
                + c123 / (2.0 * d[1]) * sym(x2, x1, x3)
                - c224 / (2.0 * d[1]) * x4 / (x2 * x2);
            r[2] += c123 / (2.0 * d[2]) * sym(x3, x1, x2)
                + c134 / (2.0 * d[2]) * sym(x3, x1, x4);
            r[3] += c224 / (4.0 * d[3]) * (x4 / (x2 * x2) - 2.0 / x4)
                + c134 / (2.0 * d[3]) * sym(x4, x1, x3);
        }
        TypeTag::TypeIIa => {
            let c123 = triples.get_f64(1, 2, 3);
            let c234 = triples.get_f64(2, 3, 4);
            r[0] += c123 / (2.0 * d[0]) * sym(x1, x2, x3);
            r[1] += c123 / (2.0 * d[1]) * sym(x2, x1, x3)
                + c234 / (2.0 * d[1]) * sym(x2, x3, x4);
            r[2] += c123 / (2.0 * d[2]) * sym(x3, x1, x2)
                + c234 / (2.0 * d[2]) * sym(x3, x2, x4);
            r[3] += c234 / (2.0 * d[3]) * sym(x4, x2, x3);
        }
        TypeTag::TypeIIb => {
            let c123 = triples.get_f64(1, 2, 3);
            let c134 = triples.get_f64(1, 3, 4);
            r[0] += c123 / (2.0 * d[0]) * sym(x1, x2, x3)
                + c134 / (2.0 * d[0]) * sym(x1, x3, x4);
            r[1] += c123 / (2.0 * d[1]) * sym(x2, x1, x3);
            r[2] += c123 / (2.0 * d[2]) * sym(x3, x1, x2)
                + c134 / (2.0 * d[2]) * sym(x3, x1, x4);
            r[3] += c134 / (2.0 * d[3]) * sym(x4, x1, x3);
        }
        TypeTag::Other(_) => return Err(EinsteinError::UnsupportedType),
    }
    Ok(r)
}

/// Generic Ricci components from the full triple table:
/// `r_k = 1/(2x_k) + (1/(4d_k))Σ_{i,j} (x_k/(x_i x_j))[ijk]
///       − (1/(2d_k))Σ_{i,j} (x_j/(x_k x_i))[kij]`.
pub fn ricci_generic(
    dims: &[usize; 4],
    triples: &TripleTable,
    x: &MetricParams,
) -> Result<[f64; 4], EinsteinError> {
    check_metric(x)?;
    let mut r = [0.0f64; 4];
    for k in 0..4 {
        let dk = dims[k] as f64;
        let mut acc = 1.0 / (2.0 * x[k]);
        for i in 0..4 {
            for j in 0..4 {
                let kij = triples.get_f64(k as u8 + 1, i as u8 + 1, j as u8 + 1);
                if kij != 0.0 {
                    acc += kij / (4.0 * dk) * x[k] / (x[i] * x[j]);
                    acc -= kij / (2.0 * dk) * x[j] / (x[k] * x[i]);
                }
            }
        }
        r[k] = acc;
    }
    Ok(r)
}

/// The Einstein system `(r1 − r2, r2 − r3, r3 − r4)`.
pub fn einstein_residual(
    tag: TypeTag,
    dims: &[usize; 4],
    triples: &TripleTable,
    x: &MetricParams,
) -> Result<[f64; 3], EinsteinError> {
    let r = ricci_components(tag, dims, triples, x)?;
    Ok([r[0] - r[1], r[1] - r[2], r[2] - r[3]])
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, &x| m.max(x.abs()))
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let mut m = a;
    let mut r = b;
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[piv][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, piv);
        r.swap(col, piv);
        for row in 0..3 {
            if row == col {
                continue;
            }
            let f = m[row][col] / m[col][col];
            for k in col..3 {
                m[row][k] -= f * m[col][k];
            }
            r[row] -= f * r[col];
        }
    }
    Some(std::array::from_fn(|i| r[i] / m[i][i]))
}

/// One damped-Newton run from `(x2, x3, x4) = y0` in the `x1 = 1` gauge.
fn newton(
    tag: TypeTag,
    dims: &[usize; 4],
    triples: &TripleTable,
    y0: [f64; 3],
) -> Option<[f64; 3]> {
    let res = |y: &[f64; 3]| -> Option<[f64; 3]> {
        let x = [1.0, y[0], y[1], y[2]];
        einstein_residual(tag, dims, triples, &x).ok()
    };
    let mut y = y0;
    let mut f = res(&y)?;
    for _ in 0..120 {
        if norm_inf(&f) < 1e-13 {
            return Some(y);
        }
        // Finite-difference Jacobian.
        let mut jac = [[0.0f64; 3]; 3];
        for j in 0..3 {
            let h = 1e-7 * y[j].abs().max(1e-3);
            let mut yp = y;
            yp[j] += h;
            let fp = res(&yp)?;
            for i in 0..3 {
                jac[i][j] = (fp[i] - f[i]) / h;
            }
        }
        let d = solve3(jac, f)?;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let yn: [f64; 3] = std::array::from_fn(|i| y[i] - lambda * d[i]);
            if yn.iter().all(|&v| v > 1e-9) {
                if let Some(fn_) = res(&yn) {
                    if norm_inf(&fn_) < norm_inf(&f) {
                        y = yn;
                        f = fn_;
                        accepted = true;
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    (norm_inf(&f) < 1e-11).then_some(y)
}

fn rel_dist(a: &MetricParams, b: &MetricParams) -> f64 {
    (0..4)
        .map(|i| (a[i] - b[i]).abs() / a[i].abs().max(b[i].abs()).max(1.0))
        .fold(0.0, f64::max)
}

/// All real positive Einstein solutions found by `starts` damped-Newton runs
/// from log-uniform samples of `(x2, x3, x4) ∈ [0.05, 20]³` with `x1 = 1`.
/// Results are deduplicated (1e−6 relative), sorted lexicographically, and
/// tagged Kähler-Einstein when they match one of `ke_metrics` up to scale.
pub fn solve_all(
    tag: TypeTag,
    dims: &[usize; 4],
    triples: &TripleTable,
    ke_metrics: &[(String, MetricParams)],
    starts: usize,
    seed: u64,
) -> Vec<EinsteinSolution> {
    assert!(starts >= 1, "need at least one start");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (0.05f64.ln(), 20.0f64.ln());
    let mut found: Vec<MetricParams> = Vec::new();
    for _ in 0..starts {
        let y0: [f64; 3] = std::array::from_fn(|_| (rng.gen_range(lo..hi)).exp());
        if let Some(y) = newton(tag, dims, triples, y0) {
            let x = [1.0, y[0], y[1], y[2]];
            if x.iter().all(|&v| v > 0.0) && !found.iter().any(|m| rel_dist(m, &x) < 1e-6) {
                found.push(x);
            }
        }
    }
    found.sort_by(|a, b| a.partial_cmp(b).unwrap());
    found
        .into_iter()
        .map(|x| {
            let r = ricci_components(tag, dims, triples, &x).expect("positive metric");
            let residual = norm_inf(&[r[0] - r[1], r[1] - r[2], r[2] - r[3]]);
            let einstein_constant = r.iter().sum::<f64>() / 4.0;
            let kind = classify_solution(&x, ke_metrics);
            EinsteinSolution {
                metric: x,
                einstein_constant,
                residual,
                kind,
            }
        })
        .collect()
}

/// Tag a metric as KE (up to scale, 1e−8), normal, or non-Kähler.
pub fn classify_solution(
    x: &MetricParams,
    ke_metrics: &[(String, MetricParams)],
) -> SolutionKind {
    for (id, ke) in ke_metrics {
        let scaled: MetricParams = std::array::from_fn(|i| ke[i] * x[0] / ke[0]);
        if rel_dist(&scaled, x) < 1e-8 {
            return SolutionKind::KaehlerEinstein(id.clone());
        }
    }
    let normal: MetricParams = [x[0]; 4];
    if rel_dist(&normal, x) < 1e-8 {
        return SolutionKind::Normal;
    }
    SolutionKind::NonKaehler
}

/// Spaces with closed-form non-Kähler Einstein metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormSpace {
    /// `SO(2ℓ+1)/U(1)×U(1)×SO(2ℓ−3)`, metrics `x1 = x4 = 1`,
    /// `x2 = x3 = (2ℓ−1 ± √(4ℓ²−12ℓ+5))/4`.
    SO2lPlus1 {
        /// Rank `ℓ ≥ 3`.
        l: usize,
    },
    /// `SO(2ℓ)/U(1)×U(1)×SO(2ℓ−4)`, metrics `x1 = x4 = 1`,
    /// `x2 = x3 = (ℓ−1 ± √(ℓ²−4ℓ+3))/2`.
    SO2lI {
        /// Rank `ℓ ≥ 3`.
        l: usize,
    },
    /// `SO(4p)/U(p)×U(p)`: the symmetric pair `x2 = x4 = 1,
    /// x1 = x3 = (2p−1 ± √(2p−1))/(2(p−1))` and the `x2 = 1` pair with
    /// `x1 = x3 = √(p·x4/(2(p−1)))`.
    SO4p {
        /// Parameter `p ≥ 2` (real roots for `p ≤ 6` in the second pair).
        p: usize,
    },
    /// `Sp(2p)/U(p)×U(p)` (the `ℓ = 2p` symplectic space):
    /// `x2 = x4 = 1`, `x1, x3 = (6p³+11p²+6p+1 ± A)/(2(p+1)²(3p+1))` with
    /// `A = √((p+1)³(6p²+5p+1))`.
    Sp2p {
        /// Parameter `p ≥ 1`.
        p: usize,
    },
}

/// The closed-form non-Kähler Einstein metrics of the symmetric ansätze, in
/// each theorem's own gauge.
pub fn closed_forms(space: ClosedFormSpace) -> Result<Vec<MetricParams>, EinsteinError> {
    match space {
        ClosedFormSpace::SO2lPlus1 { l } => {
            if l < 3 {
                return Err(EinsteinError::ParameterOutOfRange("need l >= 3".into()));
            }
            let lf = l as f64;
            let disc = 4.0 * lf * lf - 12.0 * lf + 5.0;
            if disc < 0.0 {
                return Err(EinsteinError::ParameterOutOfRange("negative discriminant".into()));
            }
            Ok([1.0, -1.0]
                .iter()
                .map(|&s| {
                    let v = (2.0 * lf - 1.0 + s * disc.sqrt()) / 4.0;
                    [1.0, v, v, 1.0]
                })
                .collect())
        }
        ClosedFormSpace::SO2lI { l } => {
            if l < 3 {
                return Err(EinsteinError::ParameterOutOfRange("need l >= 3".into()));
            }
            let lf = l as f64;
            let disc = lf * lf - 4.0 * lf + 3.0;
            Ok([1.0, -1.0]
                .iter()
                .map(|&s| {
                    let v = (lf - 1.0 + s * disc.sqrt()) / 2.0;
                    [1.0, v, v, 1.0]
                })
                .collect())
        }
        ClosedFormSpace::SO4p { p } => {
            if p < 2 {
                return Err(EinsteinError::ParameterOutOfRange("need p >= 2".into()));
            }
            let pf = p as f64;
            let mut out = Vec::new();
            // (sol3): x2 = x4 = 1, x1 = x3 from the quadratic.
            let d3 = (2.0 * pf - 1.0).sqrt();
            for s in [1.0, -1.0] {
                let v = (2.0 * pf - 1.0 + s * d3) / (2.0 * (pf - 1.0));
                out.push([v, 1.0, v, 1.0]);
            }
            // (sol4): x2 = 1, x4 from the quadratic, x1 = x3 = √(p x4 / (2(p−1))).
            let inner = 2.0 * pf * (-pf.powi(3) + 7.0 * pf * pf - 5.0 * pf + 1.0);
            if inner < 0.0 {
                return Err(EinsteinError::ParameterOutOfRange(
                    "(sol4) has no real metrics for this p".into(),
                ));
            }
            let num0 = 7.0 * pf.powi(3) - pf * pf - 3.0 * pf + 1.0;
            let den = (pf - 1.0) * (3.0 * pf - 1.0) * (3.0 * pf - 1.0);
            for s in [1.0, -1.0] {
                let x4 = (num0 + s * 2.0 * (2.0 * pf - 1.0) * inner.sqrt()) / den;
                let x1 = (pf * x4 / (2.0 * (pf - 1.0))).sqrt();
                out.push([x1, 1.0, x1, x4]);
            }
            Ok(out)
        }
        ClosedFormSpace::Sp2p { p } => {
            if p < 1 {
                return Err(EinsteinError::ParameterOutOfRange("need p >= 1".into()));
            }
            let pf = p as f64;
            let a = ((pf + 1.0).powi(3) * (6.0 * pf * pf + 5.0 * pf + 1.0)).sqrt();
            let num = 6.0 * pf.powi(3) + 11.0 * pf * pf + 6.0 * pf + 1.0;
            let den = 2.0 * (pf + 1.0) * (pf + 1.0) * (3.0 * pf + 1.0);
            let (u, v) = ((num + a) / den, (num - a) / den);
            Ok(vec![[u, 1.0, v, 1.0], [v, 1.0, u, 1.0]])
        }
    }
}

/// Convert a metric to the `x1 = 1` gauge.
pub fn normalize_x1(x: &MetricParams) -> MetricParams {
    std::array::from_fn(|i| x[i] / x[0])
}

/// The exact data of the quartic analysis for `SO(2ℓ)/U(p)×U(ℓ−p)`.
#[derive(Debug, Clone)]
pub struct QuarticAnalysis {
    /// Rank `ℓ`.
    pub ell: usize,
    /// Painting parameter `p`.
    pub p: usize,
    /// Interior sign-test point `ζ = (1/2)(1/2 + (ℓ+p−1)/(2(ℓ−p−1)))`.
    pub zeta: Q,
    /// `F(1/2)` (equals `−(p−1)³/2`).
    pub f_at_half: Q,
    /// `F(ζ)` (equals `(ℓ−1)Q/(2(ℓ−p−1)²)`).
    pub f_at_zeta: Q,
    /// `Q(ℓ,p) = (ℓ−1−p)(2p−1)(p−1) − p(3p−1)`.
    pub q_value: Q,
    /// Roots of `F` in the open window `(1/2, (ℓ+p−1)/(2(ℓ−p−1)))`.
    pub roots_in_window: Vec<f64>,
    /// Reconstructed Einstein metrics `(x1, 1, x1, x4)`, one per root.
    pub metrics: Vec<MetricParams>,
}

/// Build the quartic `F` of the reduced Einstein system and isolate its
/// window roots exactly; reconstruct the metric from each root via
/// `x4 = (2x1−1)(ℓ+p−1−2(ℓ−p−1)x1)/(p−1)`.
pub fn quartic_analysis(ell: usize, p: usize) -> Result<QuarticAnalysis, EinsteinError> {
    if ell < 4 || p < 2 || p > ell - 2 {
        return Err(EinsteinError::ParameterOutOfRange(
            "need l >= 4 and 2 <= p <= l-2".into(),
        ));
    }
    if ell == 2 * p {
        return Err(EinsteinError::DegenerateWindow);
    }
    let (l, pp) = (ell as i64, p as i64);
    let c4 = q(-8) * q((l - pp - 1).pow(2)) * q(2 * l - pp - 1);
    let c3 = q(8) * q(l - 1) * q(4 * l - 3 * pp - 1) * q(l - pp - 1);
    let c2 = q(-2)
        * q(12 * l.pow(3) - 11 * pp * l.pow(2) - 25 * l.pow(2) - 2 * pp.pow(2) * l
            + 20 * pp * l
            + 14 * l
            + 2 * pp.pow(3)
            - 2 * pp.pow(2)
            - 6 * pp
            - 2);
    let c1 = q(4) * q(l - 1) * q(2 * l.pow(2) - 2 * l - pp.pow(2) + pp);
    let c0 = q(1 - l) * q(l) * q(l + pp - 1);
    let f = Poly::new(vec![c0, c1, c2, c3, c4]);

    let right = qr(l + pp - 1, 2 * (l - pp - 1));
    let zeta = (qr(1, 2) + &right) / q(2);
    let f_at_half = f.eval(&qr(1, 2));
    let f_at_zeta = f.eval(&zeta);
    let q_value = q(l - 1 - pp) * q(2 * pp - 1) * q(pp - 1) - q(pp) * q(3 * pp - 1);

    let roots_in_window = roots_in_open_interval(&f, &qr(1, 2), &right);
    let metrics: Vec<MetricParams> = roots_in_window
        .iter()
        .map(|&x1| {
            let lf = l as f64;
            let pf = pp as f64;
            let x4 = (2.0 * x1 - 1.0) * (lf + pf - 1.0 - 2.0 * (lf - pf - 1.0) * x1) / (pf - 1.0);
            [x1, 1.0, x1, x4]
        })
        .collect();
    Ok(QuarticAnalysis {
        ell,
        p,
        zeta,
        f_at_half,
        f_at_zeta,
        q_value,
        roots_in_window,
        metrics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_exact_values() {
        for (ell, p) in [(5usize, 2usize), (5, 3), (7, 3), (9, 4)] {
            let qa = quartic_analysis(ell, p).unwrap();
            let pf = p as i64;
            assert_eq!(qa.f_at_half, qr(-(pf - 1).pow(3), 2));
            let lf = ell as i64;
            let expect =
                q(lf - 1) * &qa.q_value / q(2 * (lf - pf - 1).pow(2));
            assert_eq!(qa.f_at_zeta, expect);
        }
    }

    #[test]
    fn degenerate_window_rejected() {
        assert_eq!(
            quartic_analysis(8, 4).err(),
            Some(EinsteinError::DegenerateWindow)
        );
    }
}
