//! Root systems of the simple Lie algebras A–G with exact arithmetic.
//!
//! Simple roots are numbered as on the Dynkin diagrams used by the tables in
//! this crate (which for the E-series differ from Bourbaki; see
//! [`LieFamily::bourbaki_permutation`]). All inner products are normalized so
//! long roots have squared length 2; multiply by [`RootSystem::killing_scale`]
//! to obtain Killing-form values.

use crate::rat::{q, qr, Q};
use num::Zero;
use serde::Serialize;
use std::collections::HashSet;
use std::fmt::Write as _;
use thiserror::Error;

/// Errors raised while constructing root systems.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootSysError {
    /// The requested rank is not valid for the family.
    #[error("rank {rank} out of range for family {family:?}")]
    RankOutOfRange {
        /// Requested family.
        family: FamilyKind,
        /// Requested rank.
        rank: usize,
    },
    /// An argument that must be a root is not one.
    #[error("vector is not a root of this system")]
    NotARoot,
    /// Coordinate vectors of mismatched length.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch {
        /// Rank of the system.
        expected: usize,
        /// Length supplied.
        got: usize,
    },
}

/// The nine families of simple Lie algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyKind {
    /// `su(n+1)`
    A,
    /// `so(2n+1)`
    B,
    /// `sp(n)`
    C,
    /// `so(2n)`
    D,
    /// exceptional `e6`
    E6,
    /// exceptional `e7`
    E7,
    /// exceptional `e8`
    E8,
    /// exceptional `f4`
    F4,
    /// exceptional `g2`
    G2,
}

/// A family together with a validated rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LieFamily {
    /// Which family.
    pub family: FamilyKind,
    /// Rank (number of simple roots); fixed for the exceptional families.
    pub rank: usize,
}

impl LieFamily {
    /// Validate and build a family descriptor.
    ///
    /// Rank bounds: `A ≥ 1`, `B, C ≥ 2`, `D ≥ 3`; exceptional ranks are fixed.
    pub fn new(family: FamilyKind, rank: usize) -> Result<Self, RootSysError> {
        let ok = match family {
            FamilyKind::A => rank >= 1,
            FamilyKind::B | FamilyKind::C => rank >= 2,
            FamilyKind::D => rank >= 3,
            FamilyKind::E6 => rank == 6,
            FamilyKind::E7 => rank == 7,
            FamilyKind::E8 => rank == 8,
            FamilyKind::F4 => rank == 4,
            FamilyKind::G2 => rank == 2,
        };
        if ok {
            Ok(LieFamily { family, rank })
        } else {
            Err(RootSysError::RankOutOfRange { family, rank })
        }
    }

    /// Cartan matrix `A[i][j] = 2(α_i, α_j)/(α_j, α_j)` in diagram numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        let mut m = vec![vec![0i64; l]; l];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let edge = |m: &mut Vec<Vec<i64>>, i: usize, j: usize, a: i64, b: i64| {
            m[i][j] = a;
            m[j][i] = b;
        };
        match self.family {
            FamilyKind::A => {
                for i in 0..l.saturating_sub(1) {
                    edge(&mut m, i, i + 1, -1, -1);
                }
            }
            FamilyKind::B => {
                for i in 0..l - 2 {
                    edge(&mut m, i, i + 1, -1, -1);
                }
                edge(&mut m, l - 2, l - 1, -2, -1);
            }
            FamilyKind::C => {
                for i in 0..l - 2 {
                    edge(&mut m, i, i + 1, -1, -1);
                }
                edge(&mut m, l - 2, l - 1, -1, -2);
            }
            FamilyKind::D => {
                for i in 0..l - 3 {
                    edge(&mut m, i, i + 1, -1, -1);
                }
                edge(&mut m, l - 3, l - 2, -1, -1);
                edge(&mut m, l - 3, l - 1, -1, -1);
            }
            FamilyKind::E6 => {
                for i in 0..4 {
                    edge(&mut m, i, i + 1, -1, -1);
                }
                edge(&mut m, 2, 5, -1, -1);
            }
            FamilyKind::E7 => {
                for i in 0..5 {
                    edge(&mut m, i, i + 1, -1, -1);
                }
                edge(&mut m, 3, 6, -1, -1);
            }
            FamilyKind::E8 => {
                for i in 0..6 {
                    edge(&mut m, i, i + 1, -1, -1);
                }
                edge(&mut m, 4, 7, -1, -1);
            }
            FamilyKind::F4 => {
                edge(&mut m, 0, 1, -1, -1);
                edge(&mut m, 1, 2, -2, -1);
                edge(&mut m, 2, 3, -1, -1);
            }
            FamilyKind::G2 => {
                edge(&mut m, 0, 1, -3, -1);
            }
        }
        m
    }

    /// Squared lengths of the simple roots (long roots normalized to 2).
    pub fn simple_root_len2(&self) -> Vec<Q> {
        let l = self.rank;
        match self.family {
            FamilyKind::A | FamilyKind::D | FamilyKind::E6 | FamilyKind::E7 | FamilyKind::E8 => {
                vec![q(2); l]
            }
            FamilyKind::B => {
                let mut v = vec![q(2); l];
                v[l - 1] = q(1);
                v
            }
            FamilyKind::C => {
                let mut v = vec![q(1); l];
                v[l - 1] = q(2);
                v
            }
            FamilyKind::F4 => vec![q(2), q(2), q(1), q(1)],
            FamilyKind::G2 => vec![q(2), qr(2, 3)],
        }
    }

    /// Dual Coxeter number `h∨` (static table).
    pub fn dual_coxeter(&self) -> i64 {
        let n = self.rank as i64;
        match self.family {
            FamilyKind::A => n + 1,
            FamilyKind::B => 2 * n - 1,
            FamilyKind::C => n + 1,
            FamilyKind::D => 2 * n - 2,
            FamilyKind::E6 => 12,
            FamilyKind::E7 => 18,
            FamilyKind::E8 => 30,
            FamilyKind::F4 => 9,
            FamilyKind::G2 => 4,
        }
    }

    /// Expected number of roots (classical count).
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            FamilyKind::A => n * (n + 1),
            FamilyKind::B | FamilyKind::C => 2 * n * n,
            FamilyKind::D => 2 * n * (n - 1),
            FamilyKind::E6 => 72,
            FamilyKind::E7 => 126,
            FamilyKind::E8 => 240,
            FamilyKind::F4 => 48,
            FamilyKind::G2 => 12,
        }
    }

    /// Permutation `p` with `p[i] = j` mapping diagram index `i` (0-based) to
    /// the Bourbaki index `j` (0-based), for the families whose numbering
    /// differs (the E-series); identity elsewhere.
    pub fn bourbaki_permutation(&self) -> Vec<usize> {
        match self.family {
            // Diagram order: chain 1..r-1 with the branch node last; Bourbaki
            // numbers the branch node 2 and interleaves the chain.
            FamilyKind::E6 => vec![0, 2, 3, 4, 5, 1],
            FamilyKind::E7 => vec![0, 2, 3, 4, 5, 6, 1],
            FamilyKind::E8 => vec![0, 2, 3, 4, 5, 6, 7, 1],
            _ => (0..self.rank).collect(),
        }
    }
}

/// A root expressed by its integer coordinates over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    /// Coordinates over `Π`; all entries share a sign.
    pub coeffs: Vec<i64>,
}

impl Root {
    /// Build from coordinates.
    pub fn new(coeffs: Vec<i64>) -> Self {
        Root { coeffs }
    }

    /// Height (coordinate sum).
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Negated root.
    pub fn neg(&self) -> Root {
        Root::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Componentwise sum.
    pub fn add(&self, other: &Root) -> Root {
        Root::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference.
    pub fn sub(&self, other: &Root) -> Root {
        Root::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// A weight expressed over the fundamental-weight basis `Λ_1..Λ_rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weight {
    /// Rational coordinates over `Λ_1..Λ_rank`.
    pub coeffs: Vec<Q>,
}

/// Either basis accepted by [`RootSystem::inner_product`].
#[derive(Debug, Clone)]
pub enum CoordVec {
    /// Rational coordinates over the simple roots.
    RootCoords(Vec<Q>),
    /// Rational coordinates over the fundamental weights.
    WeightCoords(Vec<Q>),
}

impl CoordVec {
    /// Root coordinates of an (integer) root.
    pub fn from_root(r: &Root) -> CoordVec {
        CoordVec::RootCoords(r.coeffs.iter().map(|&c| q(c)).collect())
    }
}

/// A complete root system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    /// Family and rank.
    pub family: LieFamily,
    /// Cartan matrix in diagram numbering.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// All roots (positive then negative), deterministic order.
    pub roots: Vec<Root>,
    /// Positive roots in lexicographic order over `Π`.
    pub positive_roots: Vec<Root>,
    /// The highest root; its coordinates are the diagram heights.
    pub highest_root: Root,
    /// Gram matrix `(α_i, α_j)`, long roots of squared length 2.
    pub gram: Vec<Vec<Q>>,
    /// `s` with `(·,·)_B = s · (·,·)`; equals `1/(2 h∨)`.
    pub killing_scale: Q,
    set: HashSet<Vec<i64>>,
    /// Inverse of the transposed Cartan matrix (weight → root coordinates).
    inv_cartan_t: Vec<Vec<Q>>,
}

/// Construct the full root system of a family by closure from the simple
/// roots: a candidate `β + α_i` is a root iff the `α_i`-string through `β`
/// continues upward (`q = p − ⟨β, α_i∨⟩ ≥ 1`).
pub fn build_root_system(family: LieFamily) -> RootSystem {
    let l = family.rank;
    let cartan = family.cartan_matrix();
    let len2 = family.simple_root_len2();
    let mut gram = vec![vec![q(0); l]; l];
    for i in 0..l {
        for j in 0..l {
            gram[i][j] = q(cartan[i][j]) * &len2[j] / q(2);
        }
    }
    for i in 0..l {
        for j in 0..l {
            debug_assert_eq!(gram[i][j], gram[j][i], "gram must be symmetric");
        }
    }

    let mut pos: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = Vec::new();
    for i in 0..l {
        let mut e = vec![0i64; l];
        e[i] = 1;
        pos.insert(e.clone());
        layer.push(e);
    }
    while !layer.is_empty() {
        let mut next = Vec::new();
        for beta in &layer {
            for i in 0..l {
                // p = number of steps the string continues downward.
                let mut p = 0i64;
                loop {
                    let down: Vec<i64> = beta
                        .iter()
                        .enumerate()
                        .map(|(j, &c)| c - (p + 1) * i64::from(j == i))
                        .collect();
                    if down.iter().all(|&c| c == 0) || !pos.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                let pairing: i64 = (0..l).map(|j| beta[j] * cartan[j][i]).sum();
                if p - pairing >= 1 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if pos.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }

    let mut positive_roots: Vec<Root> = pos.iter().cloned().map(Root::new).collect();
    positive_roots.sort();
    let highest_root = positive_roots
        .iter()
        .max_by_key(|r| (r.height(), r.coeffs.clone()))
        .expect("nonempty root set")
        .clone();
    let mut roots = positive_roots.clone();
    roots.extend(positive_roots.iter().map(Root::neg));

    let mut set = pos;
    let negs: Vec<Vec<i64>> = set
        .iter()
        .map(|r| r.iter().map(|c| -c).collect())
        .collect();
    set.extend(negs);

    // Cartan transpose inverse for weight → root coordinate changes.
    let cartan_t: Vec<Vec<Q>> = (0..l)
        .map(|i| (0..l).map(|j| q(cartan[j][i])).collect())
        .collect();
    let inv_cartan_t = crate::rat::invert(&cartan_t).expect("Cartan matrix is invertible");

    RootSystem {
        family,
        cartan_matrix: cartan,
        roots,
        positive_roots,
        highest_root,
        gram,
        killing_scale: qr(1, 2 * family.dual_coxeter()),
        set,
        inv_cartan_t,
    }
}

impl RootSystem {
    /// Rank shortcut.
    pub fn rank(&self) -> usize {
        self.family.rank
    }

    /// Membership test.
    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        self.set.contains(coeffs)
    }

    /// `(u, v)` under the long-root-length²-2 normalization; accepts root or
    /// weight coordinates and converts weights exactly via the Cartan matrix.
    pub fn inner_product(&self, u: &CoordVec, v: &CoordVec) -> Result<Q, RootSysError> {
        let a = self.to_root_coords(u)?;
        let b = self.to_root_coords(v)?;
        Ok(self.ip_root_coords(&a, &b))
    }

    /// `(a, b)` for rational vectors already in root coordinates.
    pub fn ip_root_coords(&self, a: &[Q], b: &[Q]) -> Q {
        let l = self.rank();
        let mut acc = q(0);
        for i in 0..l {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..l {
                if b[j].is_zero() {
                    continue;
                }
                acc += &a[i] * &self.gram[i][j] * &b[j];
            }
        }
        acc
    }

    /// `(a, a)` for an integer root.
    pub fn root_len2(&self, a: &Root) -> Q {
        let coords: Vec<Q> = a.coeffs.iter().map(|&c| q(c)).collect();
        self.ip_root_coords(&coords, &coords)
    }

    fn to_root_coords(&self, v: &CoordVec) -> Result<Vec<Q>, RootSysError> {
        let l = self.rank();
        let check = |n: usize| {
            if n == l {
                Ok(())
            } else {
                Err(RootSysError::DimensionMismatch {
                    expected: l,
                    got: n,
                })
            }
        };
        match v {
            CoordVec::RootCoords(c) => {
                check(c.len())?;
                Ok(c.clone())
            }
            CoordVec::WeightCoords(w) => {
                check(w.len())?;
                Ok(self.weight_to_root(w))
            }
        }
    }

    /// Root coordinates → fundamental-weight coordinates (`w = Aᵀ c`, from
    /// `α_i = Σ_j A_ij Λ_j`).
    pub fn root_to_weight(&self, c: &[Q]) -> Vec<Q> {
        let l = self.rank();
        (0..l)
            .map(|j| (0..l).map(|i| &c[i] * q(self.cartan_matrix[i][j])).sum())
            .collect()
    }

    /// Fundamental-weight coordinates → root coordinates (exact inverse).
    pub fn weight_to_root(&self, w: &[Q]) -> Vec<Q> {
        let l = self.rank();
        (0..l)
            .map(|i| (0..l).map(|j| &self.inv_cartan_t[i][j] * &w[j]).sum())
            .collect()
    }

    /// The `a`-string through `b`: largest `p`, `q` with `b − p·a` and
    /// `b + q·a` still roots.
    pub fn root_string(&self, a: &Root, b: &Root) -> Result<(u32, u32), RootSysError> {
        if !self.is_root(&a.coeffs) {
            return Err(RootSysError::NotARoot);
        }
        let step = |dir: i64| {
            let mut n = 0u32;
            loop {
                let probe: Vec<i64> = b
                    .coeffs
                    .iter()
                    .zip(&a.coeffs)
                    .map(|(&bc, &ac)| bc + dir * i64::from(n + 1) * ac)
                    .collect();
                if self.set.contains(&probe) {
                    n += 1;
                } else {
                    return n;
                }
            }
        };
        Ok((step(-1), step(1)))
    }

    /// Structured-text dump used by golden-file tests.
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "family {:?} rank {} roots {}",
            self.family.family,
            self.family.rank,
            self.roots.len()
        );
        let _ = writeln!(
            out,
            "highest {:?}",
            self.highest_root.coeffs
        );
        for r in &self.positive_roots {
            let _ = writeln!(out, "+ {:?}", r.coeffs);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_is_trivial() {
        let rs = build_root_system(LieFamily::new(FamilyKind::A, 1).unwrap());
        assert_eq!(rs.roots.len(), 2);
        assert_eq!(rs.highest_root.coeffs, vec![1]);
    }

    #[test]
    fn rank_bounds_enforced() {
        assert!(LieFamily::new(FamilyKind::D, 2).is_err());
        assert!(LieFamily::new(FamilyKind::E6, 7).is_err());
        assert!(LieFamily::new(FamilyKind::B, 2).is_ok());
    }
}
