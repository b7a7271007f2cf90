//! Randomized and exhaustive structural properties: root-system axioms,
//! root-string arithmetic, Ricci homogeneity, specialized-vs-generic
//! agreement, and Sturm root counting.

use flagfour::einstein::{ricci_components, ricci_generic, MetricParams};
use flagfour::flagdecomp::{decompose, Decomposition, PaintedDiagram};
use flagfour::poly::{count_roots, sturm_chain, Poly};
use flagfour::rat::{q, Q};
use flagfour::rootsys::{build_root_system, FamilyKind, LieFamily};
use flagfour::structconst::triples_direct;
use num::Zero;
use proptest::prelude::*;

fn dec_for(kind: FamilyKind, rank: usize, painted: &[usize]) -> Decomposition {
    let rs = build_root_system(LieFamily::new(kind, rank).unwrap());
    decompose(PaintedDiagram::new(rs, painted).unwrap())
}

/// Root systems satisfy the axioms: closure under negation, Cartan integers
/// on the simple roots, and dominance of the highest root.
#[test]
fn root_system_axioms() {
    for fam in [
        LieFamily::new(FamilyKind::A, 4).unwrap(),
        LieFamily::new(FamilyKind::B, 4).unwrap(),
        LieFamily::new(FamilyKind::C, 5).unwrap(),
        LieFamily::new(FamilyKind::D, 6).unwrap(),
        LieFamily::new(FamilyKind::F4, 4).unwrap(),
        LieFamily::new(FamilyKind::G2, 2).unwrap(),
        LieFamily::new(FamilyKind::E6, 6).unwrap(),
    ] {
        let rs = build_root_system(fam);
        let l = rs.rank();
        for r in &rs.roots {
            assert!(rs.is_root(&r.neg().coeffs), "negation closure");
        }
        // Cartan integers: A[i][j] = 2(αi, αj)/(αj, αj).
        for i in 0..l {
            for j in 0..l {
                let ei: Vec<Q> = (0..l).map(|k| q(i64::from(k == i))).collect();
                let ej: Vec<Q> = (0..l).map(|k| q(i64::from(k == j))).collect();
                let num = q(2) * rs.ip_root_coords(&ei, &ej);
                let den = rs.ip_root_coords(&ej, &ej);
                assert_eq!(num / den, q(rs.cartan_matrix[i][j]), "Cartan integer ({i},{j})");
            }
        }
        for r in &rs.positive_roots {
            for k in 0..l {
                assert!(
                    r.coeffs[k] <= rs.highest_root.coeffs[k],
                    "highest-root dominance"
                );
            }
        }
    }
}

/// For any two roots α, β with β ≠ ±α, the α-string through β satisfies
/// `p − q = 2(β, α)/(α, α)`.
#[test]
fn root_string_identity() {
    for fam in [
        LieFamily::new(FamilyKind::C, 4).unwrap(),
        LieFamily::new(FamilyKind::F4, 4).unwrap(),
        LieFamily::new(FamilyKind::G2, 2).unwrap(),
    ] {
        let rs = build_root_system(fam);
        for a in &rs.roots {
            for b in &rs.roots {
                if b.coeffs == a.coeffs || b.coeffs == a.neg().coeffs {
                    continue;
                }
                let (p, qq) = rs.root_string(a, b).unwrap();
                let av: Vec<Q> = a.coeffs.iter().map(|&c| q(c)).collect();
                let bv: Vec<Q> = b.coeffs.iter().map(|&c| q(c)).collect();
                let lhs = q(i64::from(p) - i64::from(qq));
                let rhs = q(2) * rs.ip_root_coords(&bv, &av) / rs.ip_root_coords(&av, &av);
                assert_eq!(lhs, rhs, "string identity in {:?} ({:?},{:?})", fam.family, a, b);
            }
        }
    }
}

/// Triple tables are nonnegative and total interaction is consistent:
/// `Σ_j,k [ijk]` weighted as in the trace identity stays finite and the
/// table's support only involves the four summand indices.
#[test]
fn triples_are_nonnegative() {
    use num::Signed;
    for (kind, rank, painted) in [
        (FamilyKind::F4, 4usize, vec![2usize]),
        (FamilyKind::E6, 6, vec![0, 1]),
        (FamilyKind::B, 6, vec![0, 1]),
        (FamilyKind::C, 6, vec![2, 5]),
        (FamilyKind::D, 7, vec![2, 5]),
    ] {
        let dec = dec_for(kind, rank, &painted);
        let tab = triples_direct(&dec).unwrap();
        for (k, v) in &tab.entries {
            assert!(!v.is_negative(), "negative triple at {k:?}");
            assert!(!v.is_zero(), "stored zero at {k:?}");
            assert!(k.iter().all(|&i| (1..=4).contains(&i)));
        }
    }
}

fn spaces_under_test() -> Vec<(Decomposition, [usize; 4])> {
    [
        (FamilyKind::F4, 4usize, vec![2usize]),
        (FamilyKind::E6, 6, vec![0, 1]),
        (FamilyKind::B, 5, vec![0, 1]),
        (FamilyKind::C, 5, vec![1, 4]),
        (FamilyKind::D, 6, vec![1, 4]),
    ]
    .into_iter()
    .map(|(kind, rank, painted)| {
        let dec = dec_for(kind, rank, &painted);
        let d = dec.dims();
        let dims = [d[0], d[1], d[2], d[3]];
        (dec, dims)
    })
    .collect()
}

proptest! {
    /// Ricci components are homogeneous of degree −1 in the metric.
    #[test]
    fn ricci_degree_minus_one(
        raw in prop::array::uniform4(0.05f64..20.0),
        t in 0.1f64..10.0,
    ) {
        for (dec, dims) in spaces_under_test() {
            let triples = triples_direct(&dec).unwrap();
            let x: MetricParams = raw;
            let xt: MetricParams = std::array::from_fn(|i| t * x[i]);
            let r = ricci_components(dec.type_tag, &dims, &triples, &x).unwrap();
            let rt = ricci_components(dec.type_tag, &dims, &triples, &xt).unwrap();
            for i in 0..4 {
                prop_assert!(
                    (rt[i] - r[i] / t).abs() <= 1e-12 * (r[i].abs() / t).max(1.0),
                    "summand {i}: {} vs {}", rt[i], r[i] / t
                );
            }
        }
    }

    /// The specialized per-type formulas agree with the generic expression.
    #[test]
    fn specialized_matches_generic(raw in prop::array::uniform4(0.05f64..20.0)) {
        for (dec, dims) in spaces_under_test() {
            let triples = triples_direct(&dec).unwrap();
            let rs = ricci_components(dec.type_tag, &dims, &triples, &raw).unwrap();
            let rg = ricci_generic(&dims, &triples, &raw).unwrap();
            for i in 0..4 {
                prop_assert!(
                    (rs[i] - rg[i]).abs() <= 1e-14 * rs[i].abs().max(1.0),
                    "summand {i}: {} vs {}", rs[i], rg[i]
                );
            }
        }
    }

    /// Sturm counting agrees with the construction roots of
    /// `(x − r1)(x − r2)(x − r3)` over a query interval.
    #[test]
    fn sturm_counts_constructed_roots(
        mut roots in prop::collection::vec(-20i64..20, 3),
        a in -25i64..0,
        b in 1i64..25,
    ) {
        roots.sort_unstable();
        roots.dedup();
        let mut f = Poly::new(vec![q(1)]);
        for &r in &roots {
            // Multiply by (x − r).
            let mut c = vec![q(0); f.coeffs.len() + 1];
            for (i, co) in f.coeffs.iter().enumerate() {
                c[i + 1] += co;
                c[i] -= q(r) * co;
            }
            f = Poly::new(c);
        }
        let chain = sturm_chain(&f);
        let want = roots.iter().filter(|&&r| r > a && r <= b).count();
        prop_assert_eq!(count_roots(&chain, &q(a), &q(b)), want);
    }
}
