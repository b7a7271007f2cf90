//! Painted Dynkin diagrams, t-roots, isotropy summands, and the
//! classification of all flag manifolds with four isotropy summands.
//!
//! A painted diagram splits the simple roots into black (`Π_M`) and white
//! (`Π_K`) nodes. Restricting a complementary root to the painted coordinates
//! (the map `κ`) groups `R_M` into isotropy summands, one per t-root.

use crate::rat::{q, Q};
use crate::rootsys::{build_root_system, FamilyKind, LieFamily, Root, RootSystem, RootSysError};
use itertools::Itertools;
use num::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use thiserror::Error;

/// Errors raised by this module.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecompError {
    /// Painted set invalid for the diagram.
    #[error("painted set must be nonempty and within 0..rank")]
    BadPaintedSet,
    /// Orderings are only enumerated for at most two painted nodes.
    #[error("invariant orderings supported only for |painted| <= 2")]
    UnsupportedPaintedSize,
    /// Underlying root-system error.
    #[error(transparent)]
    RootSys(#[from] RootSysError),
}

/// Classification tag of a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TypeTag {
    /// One painted node of height 4; t-roots `ᾱ, 2ᾱ, 3ᾱ, 4ᾱ`.
    TypeI,
    /// Two painted nodes, t-roots `{s, d, s+d, s+2d}` with the non-doubled
    /// root listed first.
    TypeIIa,
    /// Two painted nodes, t-roots `{d, s, d+s, 2d+s}` (doubled root first).
    TypeIIb,
    /// Any other t-root count/pattern (carries the number of t-roots).
    Other(usize),
}

impl TypeTag {
    /// Short label used in reports.
    pub fn label(&self) -> String {
        match self {
            TypeTag::TypeI => "I".into(),
            TypeTag::TypeIIa => "IIa".into(),
            TypeTag::TypeIIb => "IIb".into(),
            TypeTag::Other(n) => format!("Other({n})"),
        }
    }
}

/// A Dynkin diagram with a painted (black) subset of nodes.
#[derive(Debug, Clone)]
pub struct PaintedDiagram {
    /// The ambient root system.
    pub root_system: RootSystem,
    /// Painted simple-root indices `Π_M`, sorted.
    pub painted: Vec<usize>,
    /// White complement `Π_K`, sorted.
    pub white: Vec<usize>,
}

impl PaintedDiagram {
    /// Build a painted diagram; `painted` must be a nonempty subset of
    /// `0..rank`.
    pub fn new(root_system: RootSystem, painted: &[usize]) -> Result<Self, DecompError> {
        let rank = root_system.rank();
        let mut painted: Vec<usize> = painted.to_vec();
        painted.sort_unstable();
        painted.dedup();
        if painted.is_empty() || painted.iter().any(|&i| i >= rank) {
            return Err(DecompError::BadPaintedSet);
        }
        let pset: HashSet<usize> = painted.iter().copied().collect();
        let white = (0..rank).filter(|i| !pset.contains(i)).collect();
        Ok(PaintedDiagram {
            root_system,
            painted,
            white,
        })
    }
}

/// A t-root: restriction of a complementary root to the painted coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TRoot {
    /// Coordinates indexed by the (sorted) painted simple roots.
    pub coeffs: Vec<i64>,
}

/// One irreducible isotropy summand.
#[derive(Debug, Clone, Serialize)]
pub struct IsotropySummand {
    /// The positive t-root indexing the summand.
    pub troot: TRoot,
    /// Positive complementary roots restricting to `troot`.
    pub members: Vec<Root>,
    /// Real dimension, `2·|members|`.
    pub dim: usize,
    /// The unique K-simple member (`α − φ ∉ R` for all `φ ∈ R_K^+`).
    pub lowest_weight: Root,
}

/// The four-summand (or rejected) decomposition of a painted diagram.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// The source diagram.
    pub diagram: PaintedDiagram,
    /// Positive roots of `K` (zero on painted coordinates).
    pub r_k_plus: Vec<Root>,
    /// Positive complementary roots.
    pub r_m_plus: Vec<Root>,
    /// Summands in the canonical order (see module docs); lexicographic by
    /// t-root when the pattern is not canonical.
    pub summands: Vec<IsotropySummand>,
    /// Type classification.
    pub type_tag: TypeTag,
}

/// Restriction map κ: keep the painted coordinates of a root.
pub fn kappa(r: &Root, painted: &[usize]) -> TRoot {
    TRoot {
        coeffs: painted.iter().map(|&i| r.coeffs[i]).collect(),
    }
}

fn canonical_troot_order(
    troots: &HashSet<TRoot>,
    painted_len: usize,
    family: LieFamily,
    painted: &[usize],
) -> Option<(Vec<TRoot>, TypeTag)> {
    if troots.len() != 4 {
        return None;
    }
    if painted_len == 1 {
        let want: Vec<TRoot> = (1..=4).map(|c| TRoot { coeffs: vec![c] }).collect();
        let set: HashSet<TRoot> = want.iter().cloned().collect();
        return (*troots == set).then_some((want, TypeTag::TypeI));
    }
    let t = |a: i64, b: i64| TRoot { coeffs: vec![a, b] };
    let iia: HashSet<TRoot> = [t(1, 0), t(0, 1), t(1, 1), t(1, 2)].into_iter().collect();
    let iib: HashSet<TRoot> = [t(1, 0), t(0, 1), t(1, 1), t(2, 1)].into_iter().collect();
    // `s` is the height-1 (non-doubled) painted root, `d` the height-2 one.
    let (s, d) = if *troots == iia {
        (t(1, 0), t(0, 1))
    } else if *troots == iib {
        (t(0, 1), t(1, 0))
    } else {
        return None;
    };
    let add = |a: &TRoot, b: &TRoot| TRoot {
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
    };
    let sd = add(&s, &d);
    let s2d = add(&add(&s, &d), &d);
    // Sp(ℓ) and SO(2ℓ) paintings touching the special end nodes are of
    // Type IIb and are ordered doubled-root first to match the dimension
    // columns of the tables.
    let special: HashSet<usize> = match family.family {
        FamilyKind::C => [family.rank - 1].into_iter().collect(),
        FamilyKind::D => [family.rank - 2, family.rank - 1].into_iter().collect(),
        _ => HashSet::new(),
    };
    if painted.iter().any(|i| special.contains(i)) {
        Some((vec![d.clone(), s, sd, s2d], TypeTag::TypeIIb))
    } else {
        Some((vec![s, d, sd, s2d], TypeTag::TypeIIa))
    }
}

/// Find the unique K-simple root of a member set.
fn lowest_weight_of(members: &[Root], r_k_plus: &[Root], rs: &RootSystem) -> Root {
    let hits: Vec<&Root> = members
        .iter()
        .filter(|a| r_k_plus.iter().all(|f| !rs.is_root(&a.sub(f).coeffs)))
        .collect();
    assert_eq!(
        hits.len(),
        1,
        "K-simple member must be unique per summand (got {})",
        hits.len()
    );
    hits[0].clone()
}

/// Group the complementary roots by κ and order the summands canonically.
pub fn decompose(pd: PaintedDiagram) -> Decomposition {
    let rs = &pd.root_system;
    let painted = pd.painted.clone();
    let (r_k_plus, r_m_plus): (Vec<Root>, Vec<Root>) = rs
        .positive_roots
        .iter()
        .cloned()
        .partition(|r| painted.iter().all(|&i| r.coeffs[i] == 0));

    let mut groups: BTreeMap<TRoot, Vec<Root>> = BTreeMap::new();
    for r in &r_m_plus {
        groups.entry(kappa(r, &painted)).or_default().push(r.clone());
    }
    let troots: HashSet<TRoot> = groups.keys().cloned().collect();
    let (order, type_tag) =
        match canonical_troot_order(&troots, painted.len(), rs.family, &painted) {
            Some((o, tag)) => (o, tag),
            None => (groups.keys().cloned().collect(), TypeTag::Other(groups.len())),
        };

    let summands = order
        .into_iter()
        .map(|t| {
            let members = groups.remove(&t).expect("ordered t-root present");
            let lowest_weight = lowest_weight_of(&members, &r_k_plus, rs);
            IsotropySummand {
                dim: 2 * members.len(),
                lowest_weight,
                members,
                troot: t,
            }
        })
        .collect();

    Decomposition {
        diagram: pd,
        r_k_plus,
        r_m_plus,
        summands,
        type_tag,
    }
}

impl Decomposition {
    /// Number of positive t-roots.
    pub fn n_troots(&self) -> usize {
        self.summands.len()
    }

    /// Real dimensions of the summands in canonical order.
    pub fn dims(&self) -> Vec<usize> {
        self.summands.iter().map(|s| s.dim).collect()
    }

    /// Structured-text report (t-roots, dims, lowest weights).
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "family {:?} rank {} painted {:?} type {}",
            self.diagram.root_system.family.family,
            self.diagram.root_system.family.rank,
            self.diagram.painted.iter().map(|i| i + 1).collect::<Vec<_>>(),
            self.type_tag.label()
        );
        for s in &self.summands {
            let _ = writeln!(
                out,
                "troot {:?} dim {} lowest {:?}",
                s.troot.coeffs, s.dim, s.lowest_weight.coeffs
            );
        }
        out
    }
}

/// Complex dimension of summand `k` (0-based) by the Weyl dimension formula
/// over the white subsystem: `Π_{α∈R_K^+} (1 + (λ, α)/(δ_K, α))` with `λ` the
/// K-highest member root. Equals `dim/2` of the summand.
pub fn weyl_dim(dec: &Decomposition, k: usize) -> usize {
    let rs = &dec.diagram.root_system;
    let s = &dec.summands[k];
    // K-highest member: adding any positive K-root leaves the root system.
    let highs: Vec<&Root> = s
        .members
        .iter()
        .filter(|a| dec.r_k_plus.iter().all(|f| !rs.is_root(&a.add(f).coeffs)))
        .collect();
    assert_eq!(highs.len(), 1, "K-highest member must be unique");
    let lambda: Vec<Q> = highs[0].coeffs.iter().map(|&c| q(c)).collect();
    let l = rs.rank();
    let mut delta_k = vec![q(0); l];
    for r in &dec.r_k_plus {
        for i in 0..l {
            delta_k[i] += q(r.coeffs[i]) / q(2);
        }
    }
    let mut prod = q(1);
    for alpha in &dec.r_k_plus {
        let a: Vec<Q> = alpha.coeffs.iter().map(|&c| q(c)).collect();
        let num = rs.ip_root_coords(&lambda, &a);
        let den = rs.ip_root_coords(&delta_k, &a);
        prod *= q(1) + num / den;
    }
    assert!(prod.denom().is_one(), "Weyl dimension must be an integer");
    let v: Q = prod;
    assert!(!v.is_zero());
    num::ToPrimitive::to_usize(v.numer()).expect("dimension fits in usize")
}

/// A sign assignment on the four positive t-roots (an invariant ordering,
/// i.e. a t-chamber).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderingSigns {
    /// `+1`/`−1` per summand in canonical order.
    pub signs: [i8; 4],
}

impl OrderingSigns {
    /// The natural ordering `(+,+,+,+)`.
    pub fn natural() -> Self {
        OrderingSigns { signs: [1, 1, 1, 1] }
    }

    /// Compact id such as `"++-+"`.
    pub fn id(&self) -> String {
        self.signs
            .iter()
            .map(|&s| if s > 0 { '+' } else { '-' })
            .collect()
    }

    /// The negated cell.
    pub fn negated(&self) -> Self {
        let mut s = self.signs;
        for v in &mut s {
            *v = -*v;
        }
        OrderingSigns { signs: s }
    }

    /// `true` when this cell is the representative of its negation pair
    /// (first sign positive).
    pub fn is_representative(&self) -> bool {
        self.signs[0] > 0
    }
}

/// All full-dimensional sign cells of the t-chamber space: sign vectors for
/// which the signed t-roots lie in an open half-space.
pub fn enumerate_invariant_orderings(
    dec: &Decomposition,
) -> Result<Vec<OrderingSigns>, DecompError> {
    let dim = dec.diagram.painted.len();
    if dim > 2 || dec.summands.len() != 4 {
        return Err(DecompError::UnsupportedPaintedSize);
    }
    let troots: Vec<&TRoot> = dec.summands.iter().map(|s| &s.troot).collect();
    let mut out = Vec::new();
    for mask in 0..16u8 {
        let signs: [i8; 4] = std::array::from_fn(|i| if mask & (1 << i) == 0 { 1 } else { -1 });
        let vecs: Vec<Vec<i64>> = troots
            .iter()
            .zip(signs)
            .map(|(t, s)| t.coeffs.iter().map(|&c| i64::from(s) * c).collect())
            .collect();
        let feasible = if dim == 1 {
            vecs.iter().all(|v| v[0] > 0) || vecs.iter().all(|v| v[0] < 0)
        } else {
            // Open half-plane test: the largest cyclic angular gap between
            // the direction angles exceeds π.
            let mut angles: Vec<f64> = vecs
                .iter()
                .map(|v| (v[1] as f64).atan2(v[0] as f64))
                .collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let mut max_gap: f64 = 0.0;
            for i in 0..angles.len() {
                let next = if i + 1 == angles.len() {
                    angles[0] + std::f64::consts::TAU
                } else {
                    angles[i + 1]
                };
                max_gap = max_gap.max(next - angles[i]);
            }
            max_gap > std::f64::consts::PI
        };
        if feasible {
            out.push(OrderingSigns { signs });
        }
    }
    Ok(out)
}

/// One row of the four-summand classification.
#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    /// Family and rank.
    pub family: LieFamily,
    /// Painted node indices (0-based), the canonical representative.
    pub painted: Vec<usize>,
    /// Type tag.
    pub type_tag: TypeTag,
    /// Summand dimensions in canonical order.
    pub dims: Vec<usize>,
    /// Equivalent painted sets merged into this row.
    pub aliases: Vec<Vec<usize>>,
    /// Set for the `D_3` row whose flag degenerates (only 3 t-roots).
    pub degenerate: bool,
}

/// Diagram automorphisms of a Cartan matrix (backtracking on rows).
fn diagram_automorphisms(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let l = a.len();
    let mut perms = Vec::new();
    let mut m: Vec<usize> = Vec::with_capacity(l);
    fn bt(a: &[Vec<i64>], m: &mut Vec<usize>, perms: &mut Vec<Vec<usize>>) {
        let l = a.len();
        let i = m.len();
        if i == l {
            perms.push(m.clone());
            return;
        }
        for c in 0..l {
            if m.contains(&c) {
                continue;
            }
            let ok = (0..i).all(|j| a[i][j] == a[c][m[j]] && a[j][i] == a[m[j]][c]);
            if ok {
                m.push(c);
                bt(a, m, perms);
                m.pop();
            }
        }
    }
    bt(a, &mut m, &mut perms);
    perms
}

/// Automorphisms used for intra-family painting deduplication. For `D_ℓ`
/// this is restricted to the fork swap `α_{ℓ−1} ↔ α_ℓ`: the extra `D_4`
/// triality maps would merge paintings that the tables list as distinct
/// spaces.
fn dedup_automorphisms(fam: LieFamily, cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    if fam.family == FamilyKind::D {
        let l = fam.rank;
        let id: Vec<usize> = (0..l).collect();
        let mut swap = id.clone();
        swap.swap(l - 2, l - 1);
        vec![id, swap]
    } else {
        diagram_automorphisms(cartan)
    }
}

/// Canonical form of the white subdiagram: sorted list of connected
/// components, each given by the lexicographically minimal flattening of its
/// Cartan submatrix over all vertex orders.
fn white_subdiagram_canon(cartan: &[Vec<i64>], white: &[usize]) -> Vec<Vec<i64>> {
    // Split into connected components.
    let mut remaining: Vec<usize> = white.to_vec();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    while let Some(start) = remaining.pop() {
        let mut comp = vec![start];
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            let mut i = 0;
            while i < remaining.len() {
                if cartan[v][remaining[i]] != 0 {
                    let u = remaining.swap_remove(i);
                    comp.push(u);
                    frontier.push(u);
                } else {
                    i += 1;
                }
            }
        }
        comps.push(comp);
    }
    let mut canon: Vec<Vec<i64>> = comps
        .iter()
        .map(|comp| {
            let n = comp.len();
            (0..n)
                .permutations(n)
                .map(|perm| {
                    let mut flat = Vec::with_capacity(n * n);
                    for &i in &perm {
                        for &j in &perm {
                            flat.push(cartan[comp[i]][comp[j]]);
                        }
                    }
                    flat
                })
                .min()
                .expect("component is nonempty")
        })
        .collect();
    canon.sort();
    canon
}

/// Enumerate all paintings with one or two painted nodes over every family up
/// to `max_classical_rank` (exceptional families always included) and keep
/// those with exactly four positive t-roots. Paintings are merged when
/// related by the allowed diagram automorphisms, and, for the exceptional
/// families, when their white subdiagrams are isomorphic. The `D_3` painting
/// `{α_1, α_2}` is reported with a degeneracy flag.
pub fn classify_four_summands(max_classical_rank: usize) -> Vec<ClassEntry> {
    assert!(max_classical_rank >= 4, "need max_classical_rank >= 4");
    let mut families: Vec<LieFamily> = Vec::new();
    for l in 1..=max_classical_rank {
        families.push(LieFamily::new(FamilyKind::A, l).unwrap());
    }
    for l in 2..=max_classical_rank {
        families.push(LieFamily::new(FamilyKind::B, l).unwrap());
        families.push(LieFamily::new(FamilyKind::C, l).unwrap());
    }
    for l in 3..=max_classical_rank {
        families.push(LieFamily::new(FamilyKind::D, l).unwrap());
    }
    families.push(LieFamily::new(FamilyKind::E6, 6).unwrap());
    families.push(LieFamily::new(FamilyKind::E7, 7).unwrap());
    families.push(LieFamily::new(FamilyKind::E8, 8).unwrap());
    families.push(LieFamily::new(FamilyKind::F4, 4).unwrap());
    families.push(LieFamily::new(FamilyKind::G2, 2).unwrap());

    let mut out: Vec<ClassEntry> = Vec::new();
    for fam in families {
        let rs = build_root_system(fam);
        let auts = dedup_automorphisms(fam, &rs.cartan_matrix);
        let exceptional = matches!(
            fam.family,
            FamilyKind::E6 | FamilyKind::E7 | FamilyKind::E8 | FamilyKind::F4 | FamilyKind::G2
        );
        let l = fam.rank;
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        // Rows of this family, keyed by white-subdiagram canon when
        // exceptional merging applies.
        let mut fam_rows: Vec<(ClassEntry, Vec<Vec<i64>>)> = Vec::new();
        let paintings = (0..l)
            .map(|i| vec![i])
            .chain((0..l).combinations(2));
        for painted in paintings {
            let canon_painted = auts
                .iter()
                .map(|p| {
                    let mut img: Vec<usize> = painted.iter().map(|&i| p[i]).collect();
                    img.sort_unstable();
                    img
                })
                .min()
                .unwrap();
            if !seen.insert(canon_painted.clone()) {
                continue;
            }
            let pd = PaintedDiagram::new(rs.clone(), &canon_painted).unwrap();
            let dec = decompose(pd);
            let four = dec.n_troots() == 4 && !matches!(dec.type_tag, TypeTag::Other(_));
            let degenerate = fam.family == FamilyKind::D
                && fam.rank == 3
                && canon_painted.as_slice() == [0, 1];
            if !four && !degenerate {
                continue;
            }
            let white: Vec<usize> = dec.diagram.white.clone();
            let wcanon = white_subdiagram_canon(&rs.cartan_matrix, &white);
            if exceptional {
                if let Some((row, _)) = fam_rows
                    .iter_mut()
                    .find(|(r, w)| *w == wcanon && r.painted.len() == canon_painted.len())
                {
                    row.aliases.push(canon_painted);
                    continue;
                }
            }
            fam_rows.push((
                ClassEntry {
                    family: fam,
                    painted: canon_painted,
                    type_tag: dec.type_tag,
                    dims: dec.dims(),
                    aliases: Vec::new(),
                    degenerate,
                },
                wcanon,
            ));
        }
        out.extend(fam_rows.into_iter().map(|(r, _)| r));
    }
    out
}
