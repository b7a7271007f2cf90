//! The structure-constant triples `[ijk]` of a four-summand decomposition.
//!
//! Two independent routes are implemented and cross-validated:
//!
//! * [`triples_from_ke`] — substitute the Kähler-Einstein metric into the
//!   Einstein conditions and solve the resulting linear system (completed by
//!   the twistor value [`triples_twistor`] for Type I);
//! * [`triples_direct`] — Chevalley summation of squared structure constants
//!   `N²_{α,β} = q(1+p)·(α,α)_B/2` over root pairs.

use crate::flagdecomp::{Decomposition, TypeTag};
use crate::kahler::ke_metric;
use crate::rat::{q, qr, to_f64, Q};
use crate::rootsys::{FamilyKind, Root};
use num::Zero;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

/// Errors from the triple computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TripleError {
    /// The linear solve for the Type II triples degenerated.
    #[error("KE linear system singular; summand order is wrong")]
    SingularSystem,
    /// The redundant Einstein equation did not vanish.
    #[error("redundant Einstein equation nonzero; inconsistent inputs")]
    InconsistentSystem,
    /// Operation defined only for Type I spaces.
    #[error("operation requires a Type I decomposition")]
    NotTypeI,
    /// Operation defined only for four-summand spaces.
    #[error("operation requires a recognized four-summand decomposition")]
    UnsupportedType,
    /// Direct-summation calibration failed.
    #[error("direct-method calibration failed: mu != 1")]
    CalibrationFailure,
}

/// Symmetric table of nonnegative triples keyed by sorted 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TripleTable {
    /// Nonzero entries only.
    pub entries: BTreeMap<[u8; 3], Q>,
}

/// Sort a triple key.
pub fn key(i: u8, j: u8, k: u8) -> [u8; 3] {
    let mut t = [i, j, k];
    t.sort_unstable();
    t
}

impl TripleTable {
    /// `[ijk]` under any index order; zero when absent.
    pub fn get(&self, i: u8, j: u8, k: u8) -> Q {
        self.entries.get(&key(i, j, k)).cloned().unwrap_or_else(|| q(0))
    }

    /// Insert (dropping exact zeros).
    pub fn set(&mut self, i: u8, j: u8, k: u8, v: Q) {
        if v.is_zero() {
            self.entries.remove(&key(i, j, k));
        } else {
            self.entries.insert(key(i, j, k), v);
        }
    }

    /// Sorted keys of the nonzero entries.
    pub fn support(&self) -> Vec<[u8; 3]> {
        self.entries.keys().copied().collect()
    }

    /// `[ijk]` as `f64`.
    pub fn get_f64(&self, i: u8, j: u8, k: u8) -> f64 {
        to_f64(&self.get(i, j, k))
    }
}

/// Ricci components as affine functions of the triples: the constant part
/// and, per triple key, the coefficient vector.
pub type RicciAffine = ([Q; 4], BTreeMap<[u8; 3], [Q; 4]>);

/// The affine Einstein-condition form: `r_i = base_i + Σ_t coeff_i(t)·[t]`.
///
/// These are the specialized Ricci components of Types I, IIa, IIb viewed as
/// linear functions of the (possibly unknown) triples at a fixed metric.
pub fn ricci_affine_q(
    tag: TypeTag,
    dims: &[usize; 4],
    x: &[Q; 4],
) -> Result<RicciAffine, TripleError> {
    let d: Vec<Q> = dims.iter().map(|&v| q(v as i64)).collect();
    let base: [Q; 4] = std::array::from_fn(|i| q(1) / (q(2) * &x[i]));
    let mut coeffs: BTreeMap<[u8; 3], [Q; 4]> = BTreeMap::new();
    let mut add = |t: [u8; 3], i: usize, v: Q| {
        let slot = coeffs.entry(t).or_insert_with(|| std::array::from_fn(|_| q(0)));
        slot[i] += v;
    };
    let (x1, x2, x3, x4) = (&x[0], &x[1], &x[2], &x[3]);
    // `sym(a, b, c)` is the recurring combination x_a/(x_b x_c) − x_b/(x_a x_c) − x_c/(x_a x_b).
    let sym = |a: &Q, b: &Q, c: &Q| a / (b * c) - b / (a * c) - c / (a * b);
    match tag {
        TypeTag::TypeI => {
            add([1, 1, 2], 0, -(x2 / (x1 * x1)) / (q(2) * &d[0]));
            add([1, 2, 3], 0, sym(x1, x2, x3) / (q(2) * &d[0]));
            add([1, 3, 4], 0, sym(x1, x3, x4) / (q(2) * &d[0]));
            add([1, 1, 2], 1, (x2 / (x1 * x1) - q(2) / x2) / (q(4) * &d[1]));
            add([1, 2, 3], 1, sym(x2, x1, x3) / (q(2) * &d[1]));
            add([2, 2, 4], 1, -(x4 / (x2 * x2)) / (q(2) * &d[1]));
            add([1, 2, 3], 2, sym(x3, x1, x2) / (q(2) * &d[2]));
            add([1, 3, 4], 2, sym(x3, x1, x4) / (q(2) * &d[2]));
            add([2, 2, 4], 3, (x4 / (x2 * x2) - q(2) / x4) / (q(4) * &d[3]));
            add([1, 3, 4], 3, sym(x4, x1, x3) / (q(2) * &d[3]));
        }
        TypeTag::TypeIIa => {
            add([1, 2, 3], 0, sym(x1, x2, x3) / (q(2) * &d[0]));
            add([1, 2, 3], 1, sym(x2, x1, x3) / (q(2) * &d[1]));
            add([2, 3, 4], 1, sym(x2, x3, x4) / (q(2) * &d[1]));
            add([1, 2, 3], 2, sym(x3, x1, x2) / (q(2) * &d[2]));
            add([2, 3, 4], 2, sym(x3, x2, x4) / (q(2) * &d[2]));
            add([2, 3, 4], 3, sym(x4, x2, x3) / (q(2) * &d[3]));
        }
        TypeTag::TypeIIb => {
            add([1, 2, 3], 0, sym(x1, x2, x3) / (q(2) * &d[0]));
            add([1, 3, 4], 0, sym(x1, x3, x4) / (q(2) * &d[0]));
            add([1, 2, 3], 1, sym(x2, x1, x3) / (q(2) * &d[1]));
            add([1, 2, 3], 2, sym(x3, x1, x2) / (q(2) * &d[2]));
            add([1, 3, 4], 2, sym(x3, x1, x4) / (q(2) * &d[2]));
            add([1, 3, 4], 3, sym(x4, x1, x3) / (q(2) * &d[3]));
        }
        TypeTag::Other(_) => return Err(TripleError::UnsupportedType),
    }
    Ok((base, coeffs))
}

/// The Type I one-parameter family of triples in `t = [224]`: each entry is
/// `constant + slope·t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeITriplesFamily {
    /// `([112], [123], [134])` as `(constant, slope)` pairs.
    pub affine: [(Q, Q); 3],
}

impl TypeITriplesFamily {
    /// Instantiate the family at `t = [224]`.
    pub fn at(&self, t: &Q) -> TripleTable {
        let mut tab = TripleTable::default();
        let keys = [[1u8, 1, 2], [1, 2, 3], [1, 3, 4]];
        for (k, (c, s)) in keys.iter().zip(&self.affine) {
            tab.set(k[0], k[1], k[2], c + s * t);
        }
        tab.set(2, 2, 4, t.clone());
        tab
    }
}

/// Result of [`triples_from_ke`].
#[derive(Debug, Clone)]
pub enum KeTriples {
    /// Type I: a one-parameter family (completed by [`triples_twistor`]).
    Family(TypeITriplesFamily),
    /// Type II: the fully determined table.
    Table(TripleTable),
}

fn dims4(dec: &Decomposition) -> [usize; 4] {
    let d = dec.dims();
    [d[0], d[1], d[2], d[3]]
}

/// Solve the Einstein conditions at the Kähler-Einstein metric for the
/// unknown triples. Type II spaces have two unknowns and three equations;
/// the redundant equation is verified to vanish exactly. Type I spaces have
/// four unknowns; the solution is returned as a family in `t = [224]`.
pub fn triples_from_ke(dec: &Decomposition) -> Result<KeTriples, TripleError> {
    let dims = dims4(dec);
    match dec.type_tag {
        TypeTag::TypeI => {
            let x: [Q; 4] = std::array::from_fn(|i| q(1 + i as i64));
            let (base, coeffs) = ricci_affine_q(TypeTag::TypeI, &dims, &x)?;
            // Unknowns (c112, c123, c134) with c224 = t as parameter; rows
            // are r_i − r_{i+1} = 0.
            let unknowns = [[1u8, 1, 2], [1, 2, 3], [1, 3, 4]];
            let param = [2u8, 2, 4];
            let row = |t: &[u8; 3], e: usize| -> Q {
                let c = &coeffs[t];
                &c[e] - &c[e + 1]
            };
            let a: Vec<Vec<Q>> = (0..3)
                .map(|e| unknowns.iter().map(|t| row(t, e)).collect())
                .collect();
            let b: Vec<Q> = (0..3).map(|e| &base[e + 1] - &base[e]).collect();
            let pcol: Vec<Q> = (0..3).map(|e| row(&param, e)).collect();
            let constant =
                crate::rat::solve_linear(a.clone(), b).ok_or(TripleError::SingularSystem)?;
            let slope_neg =
                crate::rat::solve_linear(a, pcol).ok_or(TripleError::SingularSystem)?;
            let affine: [(Q, Q); 3] =
                std::array::from_fn(|i| (constant[i].clone(), -&slope_neg[i]));
            Ok(KeTriples::Family(TypeITriplesFamily { affine }))
        }
        TypeTag::TypeIIa | TypeTag::TypeIIb => {
            let ke = ke_metric(dec, &crate::flagdecomp::OrderingSigns::natural());
            let x: [Q; 4] = std::array::from_fn(|i| ke.normalized[i].clone());
            let (base, coeffs) = ricci_affine_q(dec.type_tag, &dims, &x)?;
            let unknowns: [[u8; 3]; 2] = if dec.type_tag == TypeTag::TypeIIa {
                [[1, 2, 3], [2, 3, 4]]
            } else {
                [[1, 2, 3], [1, 3, 4]]
            };
            let row = |t: &[u8; 3], e: usize| -> Q {
                let c = &coeffs[t];
                &c[e] - &c[e + 1]
            };
            // Pick two independent equations out of the three differences.
            for (e1, e2) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let a = vec![
                    vec![row(&unknowns[0], e1), row(&unknowns[1], e1)],
                    vec![row(&unknowns[0], e2), row(&unknowns[1], e2)],
                ];
                let b = vec![&base[e1 + 1] - &base[e1], &base[e2 + 1] - &base[e2]];
                if let Some(sol) = crate::rat::solve_linear(a, b) {
                    // Verify the remaining equation exactly.
                    let e3 = 3 - e1 - e2;
                    let lhs = row(&unknowns[0], e3) * &sol[0] + row(&unknowns[1], e3) * &sol[1];
                    let rhs = &base[e3 + 1] - &base[e3];
                    if lhs != rhs {
                        return Err(TripleError::InconsistentSystem);
                    }
                    let mut tab = TripleTable::default();
                    for (t, v) in unknowns.iter().zip(sol) {
                        tab.set(t[0], t[1], t[2], v);
                    }
                    return Ok(KeTriples::Table(tab));
                }
            }
            Err(TripleError::SingularSystem)
        }
        TypeTag::Other(_) => Err(TripleError::UnsupportedType),
    }
}

/// The twistor value `[224] = c·(c_{22}^4)'` of a Type I space, with
/// `(c_{22}^4)' = d_2 d_4/(d_2 + 4 d_4)` from the fiber flag's summand
/// dimensions (which coincide with `d_2, d_4` of the total space) and the
/// Killing ratio `c = B_{U'}/B_G` from the static table of Eq.-(20) values.
pub fn triples_twistor(dec: &Decomposition) -> Result<Q, TripleError> {
    if dec.type_tag != TypeTag::TypeI {
        return Err(TripleError::NotTypeI);
    }
    let dims = dims4(dec);
    let (d2, d4) = (q(dims[1] as i64), q(dims[3] as i64));
    let fiber = &d2 * &d4 / (&d2 + q(4) * &d4);
    let fam = dec.diagram.root_system.family.family;
    let painted = dec.diagram.painted.clone();
    let c = match (fam, painted.as_slice()) {
        (FamilyKind::F4, [2]) => qr(14, 18),
        (FamilyKind::E7, [3]) => qr(20, 36),
        (FamilyKind::E8, [2]) => qr(28, 60),
        (FamilyKind::E8, [5]) => qr(36, 60),
        _ => return Err(TripleError::NotTypeI),
    };
    Ok(c * fiber)
}

/// Reference triple table: the KE route, completed by the twistor value for
/// Type I.
pub fn triples_reference(dec: &Decomposition) -> Result<TripleTable, TripleError> {
    match triples_from_ke(dec)? {
        KeTriples::Table(t) => Ok(t),
        KeTriples::Family(f) => Ok(f.at(&triples_twistor(dec)?)),
    }
}

/// Direct Chevalley summation. For each unordered triple `{i,j,k}` of
/// summands, sum `N²_{α,β}·s` over ordered pairs `α ∈ ±m_i`, `β ∈ ±m_j` with
/// `α + β ∈ ±m_k`, where `N²_{α,β} = q(1+p)·(α,α)/2`, `s` is the Killing
/// scale, and `(p,q)` is the α-string through β. The global multiplicity
/// constant `μ` relating these raw sums to the paper's `[ijk]` is exactly 1
/// (calibrated once against the F4 table; see [`calibrate_mu`]).
pub fn triples_direct(dec: &Decomposition) -> Result<TripleTable, TripleError> {
    if matches!(dec.type_tag, TypeTag::Other(_)) {
        return Err(TripleError::UnsupportedType);
    }
    let rs = &dec.diagram.root_system;
    // Signed member → summand index map.
    let mut memb: HashMap<Vec<i64>, usize> = HashMap::new();
    for (idx, s) in dec.summands.iter().enumerate() {
        for r in &s.members {
            memb.insert(r.coeffs.clone(), idx);
            memb.insert(r.neg().coeffs, idx);
        }
    }
    let signed: Vec<Vec<Root>> = dec
        .summands
        .iter()
        .map(|s| {
            s.members
                .iter()
                .flat_map(|r| [r.clone(), r.neg()])
                .collect()
        })
        .collect();
    let mut tab = TripleTable::default();
    for i in 0..4 {
        for j in i..4 {
            for k in j..4 {
                let mut tot = q(0);
                for a in &signed[i] {
                    for b in &signed[j] {
                        let c = a.add(b);
                        if memb.get(&c.coeffs) == Some(&k) {
                            let (p, qq) = rs.root_string(a, b).expect("member is a root");
                            tot += q(i64::from(qq) * i64::from(1 + p))
                                * rs.root_len2(a)
                                * &rs.killing_scale
                                / q(2);
                        }
                    }
                }
                tab.set(i as u8 + 1, j as u8 + 1, k as u8 + 1, tot * mu());
            }
        }
    }
    Ok(tab)
}

/// The calibrated multiplicity constant `μ` (exactly 1).
pub fn mu() -> Q {
    q(1)
}

/// Verify the μ calibration: the raw direct sums at F4 must reproduce the
/// known `[112] = 2` without rescaling.
pub fn calibrate_mu() -> Result<Q, TripleError> {
    use crate::flagdecomp::{decompose, PaintedDiagram};
    use crate::rootsys::{build_root_system, LieFamily};
    let rs = build_root_system(LieFamily::new(FamilyKind::F4, 4).unwrap());
    let dec = decompose(PaintedDiagram::new(rs, &[2]).unwrap());
    let tab = triples_direct(&dec)?;
    if tab.get(1, 1, 2) == q(2) {
        Ok(q(1))
    } else {
        Err(TripleError::CalibrationFailure)
    }
}
