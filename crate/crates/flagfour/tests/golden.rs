//! Golden-value tests: exact pinned data for representative spaces (raw
//! Kähler-Einstein pairings, Koszul forms, triples, root-system counts),
//! per-ordering KE metric sets, and CLI report determinism.

use flagfour::cli::{cmd_analyze, resolve_alias};
use flagfour::flagdecomp::{
    decompose, enumerate_invariant_orderings, weyl_dim, Decomposition, OrderingSigns,
    PaintedDiagram, TypeTag,
};
use flagfour::kahler::{ke_metric, koszul_form};
use flagfour::rat::{q, qr, Q};
use flagfour::rootsys::{build_root_system, FamilyKind, LieFamily};
use flagfour::structconst::triples_direct;

fn dec_for(kind: FamilyKind, rank: usize, painted: &[usize]) -> Decomposition {
    let rs = build_root_system(LieFamily::new(kind, rank).unwrap());
    decompose(PaintedDiagram::new(rs, painted).unwrap())
}

fn qs(v: &[(i64, i64)]) -> Vec<Q> {
    v.iter().map(|&(n, d)| qr(n, d)).collect()
}

#[test]
fn root_system_counts() {
    let cases: [(FamilyKind, usize, usize, i64); 9] = [
        (FamilyKind::A, 5, 30, 6),
        (FamilyKind::B, 5, 50, 9),
        (FamilyKind::C, 5, 50, 6),
        (FamilyKind::D, 5, 40, 8),
        (FamilyKind::E6, 6, 72, 12),
        (FamilyKind::E7, 7, 126, 18),
        (FamilyKind::E8, 8, 240, 30),
        (FamilyKind::F4, 4, 48, 9),
        (FamilyKind::G2, 2, 12, 4),
    ];
    for (kind, rank, count, hv) in cases {
        let fam = LieFamily::new(kind, rank).unwrap();
        let rs = build_root_system(fam);
        assert_eq!(rs.roots.len(), count, "{kind:?}{rank} root count");
        assert_eq!(fam.dual_coxeter(), hv, "{kind:?}{rank} dual Coxeter");
        assert_eq!(rs.positive_roots.len(), count / 2);
    }
}

#[test]
fn weyl_dimension_matches_member_count() {
    for (kind, rank, painted) in [
        (FamilyKind::F4, 4, vec![2]),
        (FamilyKind::E7, 7, vec![3]),
        (FamilyKind::E6, 6, vec![0, 1]),
        (FamilyKind::B, 5, vec![0, 1]),
        (FamilyKind::C, 5, vec![1, 4]),
        (FamilyKind::D, 6, vec![1, 4]),
    ] {
        let dec = dec_for(kind, rank, &painted);
        for k in 0..4 {
            assert_eq!(
                2 * weyl_dim(&dec, k),
                dec.summands[k].dim,
                "{kind:?}{rank} painted {painted:?} summand {k}"
            );
        }
    }
}

/// Pinned raw KE pairings `(δ_m, α_low)`, the full `2δ_m` fundamental-weight
/// vector, and the triples, for one space of each shape at rank 5.
#[test]
fn rank5_golden_rows() {
    struct Row {
        kind: FamilyKind,
        rank: usize,
        painted: Vec<usize>,
        dims: [usize; 4],
        raw_ke: Vec<(i64, i64)>,
        two_dm_weights: Vec<(i64, i64)>,
        triples: Vec<([u8; 3], (i64, i64))>,
    }
    let rows = [
        Row {
            kind: FamilyKind::F4,
            rank: 4,
            painted: vec![2],
            dims: [12, 18, 4, 6],
            raw_ke: vec![(7, 4), (7, 2), (21, 4), (7, 1)],
            two_dm_weights: vec![(0, 1), (0, 1), (7, 1), (0, 1)],
            triples: vec![
                ([1, 1, 2], (2, 1)),
                ([1, 2, 3], (1, 1)),
                ([1, 3, 4], (2, 3)),
                ([2, 2, 4], (2, 1)),
            ],
        },
        Row {
            kind: FamilyKind::B,
            rank: 5,
            painted: vec![0, 1],
            dims: [2, 14, 14, 2],
            raw_ke: vec![(1, 1), (7, 2), (9, 2), (8, 1)],
            two_dm_weights: vec![(2, 1), (7, 1), (0, 1), (0, 1), (0, 1)],
            triples: vec![([1, 2, 3], (7, 9)), ([2, 3, 4], (7, 9))],
        },
        Row {
            kind: FamilyKind::D,
            rank: 5,
            painted: vec![0, 1],
            dims: [2, 12, 12, 2],
            raw_ke: vec![(1, 1), (3, 1), (4, 1), (7, 1)],
            two_dm_weights: vec![(2, 1), (6, 1), (0, 1), (0, 1), (0, 1)],
            triples: vec![([1, 2, 3], (3, 4)), ([2, 3, 4], (3, 4))],
        },
        Row {
            kind: FamilyKind::C,
            rank: 5,
            painted: vec![1, 4],
            dims: [12, 12, 12, 6],
            raw_ke: vec![(5, 4), (2, 1), (13, 4), (9, 2)],
            two_dm_weights: vec![(0, 1), (5, 1), (0, 1), (0, 1), (4, 1)],
            triples: vec![([1, 2, 3], (2, 1)), ([1, 3, 4], (3, 2))],
        },
        Row {
            kind: FamilyKind::C,
            rank: 5,
            painted: vec![2, 4],
            dims: [12, 6, 12, 12],
            raw_ke: vec![(5, 4), (3, 2), (11, 4), (4, 1)],
            two_dm_weights: vec![(0, 1), (0, 1), (5, 1), (0, 1), (3, 1)],
            triples: vec![([1, 2, 3], (3, 2)), ([1, 3, 4], (2, 1))],
        },
        Row {
            kind: FamilyKind::D,
            rank: 5,
            painted: vec![1, 3],
            dims: [12, 6, 12, 2],
            raw_ke: vec![(5, 2), (2, 1), (9, 2), (7, 1)],
            two_dm_weights: vec![(0, 1), (5, 1), (0, 1), (4, 1), (0, 1)],
            triples: vec![([1, 2, 3], (3, 2)), ([1, 3, 4], (3, 4))],
        },
        Row {
            kind: FamilyKind::E6,
            rank: 6,
            painted: vec![0, 1],
            dims: [2, 20, 20, 10],
            raw_ke: vec![(1, 1), (4, 1), (5, 1), (9, 1)],
            two_dm_weights: vec![(2, 1), (8, 1), (0, 1), (0, 1), (0, 1), (0, 1)],
            triples: vec![([1, 2, 3], (5, 6)), ([2, 3, 4], (5, 2))],
        },
    ];
    let natural = OrderingSigns::natural();
    for row in rows {
        let dec = dec_for(row.kind, row.rank, &row.painted);
        assert_eq!(dec.dims(), row.dims.to_vec(), "{:?} dims", row.kind);
        let ke = ke_metric(&dec, &natural);
        assert_eq!(ke.values, qs(&row.raw_ke), "{:?} raw KE", row.kind);
        let kf = koszul_form(&dec, &natural);
        let two_dm: Vec<Q> = kf.weight_coeffs.iter().map(|c| c * q(2)).collect();
        assert_eq!(two_dm, qs(&row.two_dm_weights), "{:?} Koszul", row.kind);
        let tab = triples_direct(&dec).unwrap();
        assert_eq!(tab.support().len(), row.triples.len());
        for (k, (n, d)) in row.triples {
            assert_eq!(tab.get(k[0], k[1], k[2]), qr(n, d), "{:?} [{:?}]", row.kind, k);
        }
    }
}

/// The four representative orderings of the exceptional IIa spaces carry the
/// four KE metrics of the eight-solution theorems, as exact rationals.
#[test]
fn e6_e7_ordering_ke_sets() {
    for (kind, rank, expected) in [
        (
            FamilyKind::E6,
            6usize,
            vec![
                qs(&[(1, 1), (4, 1), (5, 1), (9, 1)]),
                qs(&[(1, 1), (5, 1), (4, 1), (9, 1)]),
                qs(&[(1, 1), (7, 11), (4, 11), (3, 11)]),
                qs(&[(1, 1), (4, 11), (7, 11), (3, 11)]),
            ],
        ),
        (
            FamilyKind::E7,
            7,
            vec![
                qs(&[(1, 1), (6, 1), (7, 1), (13, 1)]),
                qs(&[(1, 1), (7, 1), (6, 1), (13, 1)]),
                qs(&[(1, 1), (11, 17), (6, 17), (5, 17)]),
                qs(&[(1, 1), (6, 17), (11, 17), (5, 17)]),
            ],
        ),
    ] {
        let dec = dec_for(kind, rank, &[0, 1]);
        let orderings = enumerate_invariant_orderings(&dec).unwrap();
        assert_eq!(orderings.len(), 8, "{kind:?} chamber count");
        let mut got: Vec<Vec<Q>> = orderings
            .iter()
            .filter(|o| o.is_representative())
            .map(|o| ke_metric(&dec, o).normalized)
            .collect();
        assert_eq!(got.len(), 4);
        let mut want = expected;
        got.sort();
        want.sort();
        assert_eq!(got, want, "{kind:?} per-ordering KE set");
    }
}

#[test]
fn ordering_cell_counts() {
    for (kind, rank, painted, cells) in [
        (FamilyKind::F4, 4usize, vec![2usize], 2usize),
        (FamilyKind::E8, 8, vec![5], 2),
        (FamilyKind::B, 5, vec![0, 1], 8),
        (FamilyKind::C, 6, vec![1, 5], 8),
        (FamilyKind::D, 6, vec![1, 4], 8),
    ] {
        let dec = dec_for(kind, rank, &painted);
        assert_eq!(
            enumerate_invariant_orderings(&dec).unwrap().len(),
            cells,
            "{kind:?}{rank} painted {painted:?}"
        );
    }
}

/// Analysis reports are deterministic for a fixed seed and round-trip
/// through JSON.
#[test]
fn analyze_report_deterministic_and_roundtrips() {
    let spec = resolve_alias("C:l=4,p=2-IIb").unwrap();
    let a = cmd_analyze(&spec, 400, 7).unwrap();
    let b = cmd_analyze(&spec, 400, 7).unwrap();
    assert_eq!(a, b, "same seed must give identical reports");
    let text = serde_json::to_string(&a).unwrap();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(a, back, "JSON round-trip");
}

/// Degenerate and out-of-scope paintings are classified as `Other`.
#[test]
fn out_of_scope_paintings() {
    assert_eq!(dec_for(FamilyKind::D, 3, &[0, 1]).type_tag, TypeTag::Other(3));
    assert_eq!(dec_for(FamilyKind::A, 4, &[0, 2]).type_tag, TypeTag::Other(3));
    assert_eq!(dec_for(FamilyKind::G2, 2, &[0, 1]).type_tag, TypeTag::Other(6));
    assert_eq!(dec_for(FamilyKind::B, 6, &[0, 3]).type_tag, TypeTag::Other(5));
}
