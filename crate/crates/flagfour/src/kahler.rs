//! Koszul forms and Kähler-Einstein metrics per invariant ordering.
//!
//! Each invariant ordering (t-chamber) carries a complex structure whose
//! Kähler-Einstein metric is obtained by pairing the Koszul form `δ_m` with
//! the lowest weight of each summand.

use crate::flagdecomp::{Decomposition, OrderingSigns, TypeTag};
use crate::rat::{q, qr, Q};
use crate::rootsys::Root;
use num::Signed;

/// The Koszul form of an ordering.
#[derive(Debug, Clone)]
pub struct KoszulForm {
    /// `2δ_m` in simple-root coordinates.
    pub root_coeffs: Vec<Q>,
    /// `δ_m` over the fundamental weights `Λ_1..Λ_rank` (the Koszul numbers
    /// sit at the painted positions).
    pub weight_coeffs: Vec<Q>,
}

/// The Kähler-Einstein metric of an ordering.
#[derive(Debug, Clone)]
pub struct KEMetric {
    /// Raw pairings `g_k = (δ_m, α_low(k))`, one per summand.
    pub values: Vec<Q>,
    /// Scaled so the leading entry matches the presentation used by the
    /// tables (`ℓ/2` for Type IIb, `1` otherwise).
    pub normalized: Vec<Q>,
}

/// Member roots of each summand after applying the ordering's signs.
fn signed_members(dec: &Decomposition, ordering: &OrderingSigns) -> Vec<Vec<Root>> {
    dec.summands
        .iter()
        .zip(ordering.signs)
        .map(|(s, sg)| {
            s.members
                .iter()
                .map(|r| if sg > 0 { r.clone() } else { r.neg() })
                .collect()
        })
        .collect()
}

/// `2δ_m = Σ_{α ∈ R_M^+(ordering)} α`, returned in both coordinate systems.
pub fn koszul_form(dec: &Decomposition, ordering: &OrderingSigns) -> KoszulForm {
    let rs = &dec.diagram.root_system;
    let l = rs.rank();
    let mut two_dm = vec![q(0); l];
    for group in signed_members(dec, ordering) {
        for r in group {
            for i in 0..l {
                two_dm[i] += q(r.coeffs[i]);
            }
        }
    }
    let dm: Vec<Q> = two_dm.iter().map(|c| c / q(2)).collect();
    let weight_coeffs = rs.root_to_weight(&dm);
    if *ordering == OrderingSigns::natural() {
        for &i in &dec.diagram.painted {
            debug_assert!(
                weight_coeffs[i].is_positive(),
                "Koszul numbers are positive for the natural ordering"
            );
        }
    }
    KoszulForm {
        root_coeffs: two_dm,
        weight_coeffs,
    }
}

/// Kähler-Einstein metric of an ordering: pair `δ_m` with each summand's
/// lowest weight, recomputed after the ordering's sign flips.
pub fn ke_metric(dec: &Decomposition, ordering: &OrderingSigns) -> KEMetric {
    let rs = &dec.diagram.root_system;
    let kf = koszul_form(dec, ordering);
    let dm: Vec<Q> = kf.root_coeffs.iter().map(|c| c / q(2)).collect();
    let values: Vec<Q> = signed_members(dec, ordering)
        .into_iter()
        .map(|group| {
            // K-simple member of the flipped summand.
            let lows: Vec<&Root> = group
                .iter()
                .filter(|a| {
                    dec.r_k_plus
                        .iter()
                        .all(|f| !rs.is_root(&a.sub(f).coeffs))
                })
                .collect();
            assert_eq!(lows.len(), 1, "lowest weight must be unique per summand");
            let low: Vec<Q> = lows[0].coeffs.iter().map(|&c| q(c)).collect();
            let g = rs.ip_root_coords(&dm, &low);
            assert!(g.is_positive(), "KE metric entries are positive");
            g
        })
        .collect();
    let leading = if dec.type_tag == TypeTag::TypeIIb {
        qr(rs.rank() as i64, 2)
    } else {
        q(1)
    };
    let scale = leading / &values[0];
    let normalized = values.iter().map(|v| v * &scale).collect();
    KEMetric { values, normalized }
}
