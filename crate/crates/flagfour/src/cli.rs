//! Command-line front end producing reproducible, machine-readable reports.
//!
//! Three commands are provided: `classify` (the four-summand inventory),
//! `analyze` (the full pipeline for one space), and `reproduce-tables`
//! (computed-vs-published comparisons with pass/fail flags; exit code 2 on
//! any mismatch).

use crate::einstein::{
    closed_forms, einstein_residual, normalize_x1, quartic_analysis, solve_all, ClosedFormSpace,
    EinsteinSolution, MetricParams, SolutionKind,
};
use crate::flagdecomp::{
    classify_four_summands, decompose, enumerate_invariant_orderings, Decomposition,
    OrderingSigns, PaintedDiagram, TypeTag,
};
use crate::isometry::isometry_report;
use crate::kahler::{ke_metric, koszul_form};
use crate::rat::{fmt_q, to_f64, Q};
use crate::rootsys::{build_root_system, FamilyKind, LieFamily};
use crate::structconst::{
    triples_direct, triples_from_ke, triples_reference, triples_twistor, KeTriples, TripleTable,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Output formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Human-readable text.
    Text,
    /// JSON document.
    Json,
    /// Comma-separated rows (the command's main table).
    Csv,
}

/// Command-line interface.
#[derive(Debug, Parser)]
#[command(
    name = "flagfour",
    about = "Flag manifolds with four isotropy summands: decompositions, structure \
             constants, Kähler-Einstein and Einstein metrics, scale invariants.",
    long_about = None,
    after_help = "Space aliases use the grammar FAMILY[:params]-TYPE, e.g. \"F4-I\", \
                  \"E8:p=3-I\", \"B:l=5-IIa\", \"C:l=6,p=2-IIb\", \"D:l=6,p=2-IIb\". \
                  Ad-hoc paintings: FAMILY:l=<rank>,nodes=<i>+<j> (1-based nodes)."
)]
pub struct Cli {
    /// Subcommand to run.
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Output file (directory for `reproduce-tables`); stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Newton starts for the Einstein solver.
    #[arg(long, global = true, default_value_t = 3000)]
    pub starts: usize,
    /// RNG seed (recorded in the output).
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all four-summand flag manifolds up to a rank bound.
    Classify {
        /// Largest classical rank to scan.
        #[arg(long, default_value_t = 10)]
        max_rank: usize,
    },
    /// Full pipeline report for one space.
    Analyze {
        /// Space alias (see --help for the grammar).
        #[arg(long)]
        space: String,
    },
    /// Recompute the published tables and theorems with pass/fail flags.
    ReproduceTables,
}

/// A resolved space alias.
#[derive(Debug, Clone)]
pub struct SpaceSpec {
    /// The alias as given.
    pub alias: String,
    /// Family and rank.
    pub family: LieFamily,
    /// Painted nodes, 0-based.
    pub painted: Vec<usize>,
}

/// Resolve a space alias to a painted diagram description.
pub fn resolve_alias(s: &str) -> Result<SpaceSpec, String> {
    let (left, ty) = match s.rsplit_once('-') {
        Some((l, t)) if matches!(t, "I" | "IIa" | "IIb") => (l, Some(t)),
        _ => (s, None),
    };
    let (fam_str, params_str) = match left.split_once(':') {
        Some((f, p)) => (f, Some(p)),
        None => (left, None),
    };
    let mut l: Option<usize> = None;
    let mut p: Option<usize> = None;
    let mut nodes: Option<Vec<usize>> = None;
    if let Some(ps) = params_str {
        for kv in ps.split(',') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| format!("bad parameter {kv:?}"))?;
            match k {
                "l" => l = Some(v.parse().map_err(|_| format!("bad l={v}"))?),
                "p" => p = Some(v.parse().map_err(|_| format!("bad p={v}"))?),
                "nodes" => {
                    let ns: Result<Vec<usize>, _> =
                        v.split('+').map(|n| n.parse::<usize>()).collect();
                    let ns = ns.map_err(|_| format!("bad nodes={v}"))?;
                    if ns.contains(&0) {
                        return Err("nodes are 1-based".into());
                    }
                    nodes = Some(ns.iter().map(|&n| n - 1).collect());
                }
                _ => return Err(format!("unknown parameter {k:?}")),
            }
        }
    }
    let (kind, fixed_rank) = match fam_str {
        "A" => (FamilyKind::A, None),
        "B" => (FamilyKind::B, None),
        "C" => (FamilyKind::C, None),
        "D" => (FamilyKind::D, None),
        "E6" => (FamilyKind::E6, Some(6)),
        "E7" => (FamilyKind::E7, Some(7)),
        "E8" => (FamilyKind::E8, Some(8)),
        "F4" => (FamilyKind::F4, Some(4)),
        "G2" => (FamilyKind::G2, Some(2)),
        _ => return Err(format!("unknown family {fam_str:?}")),
    };
    if let (Some(fixed), Some(given)) = (fixed_rank, l) {
        if fixed != given {
            return Err(format!("{fam_str} has rank {fixed}, not {given}"));
        }
    }
    let rank = fixed_rank
        .or(l)
        .ok_or_else(|| "classical families need l=<rank>".to_string())?;
    let family = LieFamily::new(kind, rank).map_err(|e| e.to_string())?;
    let painted: Vec<usize> = if let Some(n) = nodes {
        n
    } else {
        match (kind, ty) {
            (FamilyKind::F4, Some("I")) => vec![2],
            (FamilyKind::E7, Some("I")) => vec![3],
            (FamilyKind::E8, Some("I")) => match p {
                Some(3) => vec![2],
                Some(6) => vec![5],
                _ => return Err("E8 Type I needs p=3 or p=6 (painted node)".into()),
            },
            (FamilyKind::B | FamilyKind::D, Some("IIa")) => vec![0, 1],
            (FamilyKind::E6 | FamilyKind::E7, Some("IIa")) => vec![0, 1],
            (FamilyKind::C, Some("IIb")) => {
                let p = p.ok_or("Sp(l) needs p=<painted>")?;
                if p < 1 || p > rank - 1 {
                    return Err("need 1 <= p <= l-1".into());
                }
                vec![p - 1, rank - 1]
            }
            (FamilyKind::D, Some("IIb")) => {
                let p = p.ok_or("SO(2l) IIb needs p=<painted>")?;
                if p < 2 || p > rank - 2 {
                    return Err("need 2 <= p <= l-2".into());
                }
                vec![p - 1, rank - 2]
            }
            _ => return Err(format!("cannot resolve alias {s:?}")),
        }
    };
    if painted.iter().any(|&i| i >= rank) {
        return Err("painted node out of range".into());
    }
    let spec = SpaceSpec {
        alias: s.to_string(),
        family,
        painted,
    };
    if let Some(ty) = ty {
        let dec = decompose(
            PaintedDiagram::new(build_root_system(family), &spec.painted)
                .map_err(|e| e.to_string())?,
        );
        if dec.type_tag.label() != ty {
            return Err(format!(
                "alias {s:?} resolves to type {}, not {ty}",
                dec.type_tag.label()
            ));
        }
    }
    Ok(spec)
}

fn dims4(dec: &Decomposition) -> [usize; 4] {
    let d = dec.dims();
    [d[0], d[1], d[2], d[3]]
}

fn triple_table_json(t: &TripleTable) -> Value {
    let mut m = serde_json::Map::new();
    for (k, v) in &t.entries {
        m.insert(format!("{}{}{}", k[0], k[1], k[2]), json!(fmt_q(v)));
    }
    Value::Object(m)
}

fn qvec(v: &[Q]) -> Value {
    json!(v.iter().map(fmt_q).collect::<Vec<_>>())
}

/// Representative invariant orderings with their KE metrics (as `f64`, for
/// solution tagging).
pub fn ke_metrics_f64(dec: &Decomposition) -> Vec<(String, MetricParams)> {
    let orderings = enumerate_invariant_orderings(dec).expect("in-scope space");
    orderings
        .iter()
        .filter(|o| o.is_representative())
        .map(|o| {
            let ke = ke_metric(dec, o);
            let m: MetricParams = std::array::from_fn(|i| to_f64(&ke.normalized[i]));
            (o.id(), m)
        })
        .collect()
}

/// Closed-form space descriptor applicable to a decomposition, if any.
pub fn closed_form_space(dec: &Decomposition) -> Option<ClosedFormSpace> {
    let fam = dec.diagram.root_system.family;
    let l = fam.rank;
    let painted = &dec.diagram.painted;
    match (fam.family, dec.type_tag) {
        (FamilyKind::B, TypeTag::TypeIIa) if l >= 3 => Some(ClosedFormSpace::SO2lPlus1 { l }),
        (FamilyKind::D, TypeTag::TypeIIa) if l >= 4 => Some(ClosedFormSpace::SO2lI { l }),
        (FamilyKind::D, TypeTag::TypeIIb) => {
            let p = painted[0] + 1;
            (l == 2 * p).then_some(ClosedFormSpace::SO4p { p })
        }
        (FamilyKind::C, TypeTag::TypeIIb) => {
            let p = painted[0] + 1;
            (l == 2 * p).then_some(ClosedFormSpace::Sp2p { p })
        }
        _ => None,
    }
}

fn solution_json(s: &EinsteinSolution) -> Value {
    let kind = match &s.kind {
        SolutionKind::KaehlerEinstein(id) => format!("kaehler-einstein({id})"),
        SolutionKind::NonKaehler => "non-kaehler".into(),
        SolutionKind::Normal => "normal".into(),
    };
    json!({
        "metric": s.metric,
        "einstein_constant": s.einstein_constant,
        "residual": s.residual,
        "kind": kind,
    })
}

/// The full analysis document for one space.
pub fn cmd_analyze(spec: &SpaceSpec, starts: usize, seed: u64) -> Result<Value, String> {
    if starts == 0 {
        return Err("solver budget must be positive".into());
    }
    let rs = build_root_system(spec.family);
    let pd = PaintedDiagram::new(rs, &spec.painted).map_err(|e| e.to_string())?;
    let dec = decompose(pd);
    if matches!(dec.type_tag, TypeTag::Other(_)) {
        return Err(format!(
            "space has {} positive t-roots; analysis needs a four-summand space",
            dec.n_troots()
        ));
    }
    let dims = dims4(&dec);

    // Triples by both routes.
    let direct = triples_direct(&dec).map_err(|e| e.to_string())?;
    let reference = triples_reference(&dec).map_err(|e| e.to_string())?;
    let mut triples_section = json!({
        "direct": triple_table_json(&direct),
        "from_ke": triple_table_json(&reference),
        "agree": direct == reference,
    });
    if dec.type_tag == TypeTag::TypeI {
        if let Ok(KeTriples::Family(f)) = triples_from_ke(&dec) {
            let fam_repr: Vec<String> = ["112", "123", "134"]
                .iter()
                .zip(&f.affine)
                .map(|(k, (c, s))| format!("[{k}] = {} + ({})*t", fmt_q(c), fmt_q(s)))
                .collect();
            triples_section["type_i_family_in_t_224"] = json!(fam_repr);
        }
        triples_section["twistor_224"] =
            json!(fmt_q(&triples_twistor(&dec).map_err(|e| e.to_string())?));
    }

    // Orderings and KE metrics.
    let orderings = enumerate_invariant_orderings(&dec).map_err(|e| e.to_string())?;
    let ordering_rows: Vec<Value> = orderings
        .iter()
        .filter(|o| o.is_representative())
        .map(|o| {
            let kf = koszul_form(&dec, o);
            let ke = ke_metric(&dec, o);
            json!({
                "id": o.id(),
                "koszul_delta_m_weights": qvec(&kf.weight_coeffs),
                "ke_raw": qvec(&ke.values),
                "ke_normalized": qvec(&ke.normalized),
            })
        })
        .collect();

    // Einstein solutions.
    let kes = ke_metrics_f64(&dec);
    let solutions = solve_all(dec.type_tag, &dims, &direct, &kes, starts, seed);
    let iso = isometry_report(dec.type_tag, &dims, &direct, &solutions)
        .map_err(|e| e.to_string())?;

    let mut doc = json!({
        "space": {
            "alias": spec.alias,
            "family": format!("{:?}", spec.family.family),
            "rank": spec.family.rank,
            "painted_nodes": spec.painted.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "type": dec.type_tag.label(),
        },
        "solver": { "starts": starts, "seed": seed },
        "decomposition": {
            "troots": dec.summands.iter()
                .map(|s| json!(s.troot.coeffs.clone())).collect::<Vec<_>>(),
            "dims": dec.dims(),
            "lowest_weights": dec.summands.iter()
                .map(|s| json!(s.lowest_weight.coeffs.clone())).collect::<Vec<_>>(),
        },
        "triples": triples_section,
        "orderings": {
            "cells": orderings.len(),
            "up_to_negation": ordering_rows,
        },
        "einstein_solutions": solutions.iter().map(solution_json).collect::<Vec<_>>(),
        "isometry": {
            "records": iso.records.iter().map(|r| json!({
                "metric": r.metric, "S": r.s_g, "V": r.v_g, "H": r.h_g,
            })).collect::<Vec<_>>(),
            "groups": iso.groups,
        },
    });

    if let Some(space) = closed_form_space(&dec) {
        let forms = closed_forms(space).map_err(|e| e.to_string())?;
        let rows: Vec<Value> = forms
            .iter()
            .map(|m| {
                let res = einstein_residual(dec.type_tag, &dims, &direct, m)
                    .map(|r| r.iter().fold(0.0f64, |a, &b| a.max(b.abs())))
                    .unwrap_or(f64::NAN);
                json!({ "metric": m, "normalized_x1": normalize_x1(m), "residual": res })
            })
            .collect();
        doc["closed_forms"] = json!(rows);
    }
    if spec.family.family == FamilyKind::D && dec.type_tag == TypeTag::TypeIIb {
        let l = spec.family.rank;
        let p = dec.diagram.painted[0] + 1;
        if l >= 4 && p >= 2 && p <= l - 2 && l != 2 * p {
            let qa = quartic_analysis(l, p).map_err(|e| e.to_string())?;
            doc["quartic"] = json!({
                "zeta": fmt_q(&qa.zeta),
                "F_at_half": fmt_q(&qa.f_at_half),
                "F_at_zeta": fmt_q(&qa.f_at_zeta),
                "Q": fmt_q(&qa.q_value),
                "roots_in_window": qa.roots_in_window,
                "metrics": qa.metrics,
            });
        }
    }
    Ok(doc)
}

/// The classification document.
pub fn cmd_classify(max_rank: usize) -> Value {
    let rows: Vec<Value> = classify_four_summands(max_rank)
        .iter()
        .map(|e| {
            json!({
                "family": format!("{:?}", e.family.family),
                "rank": e.family.rank,
                "painted_nodes": e.painted.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "type": e.type_tag.label(),
                "dims": e.dims.clone(),
                "aliases": e.aliases.iter()
                    .map(|a| a.iter().map(|i| i + 1).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "degenerate": e.degenerate,
            })
        })
        .collect();
    json!({ "max_rank": max_rank, "spaces": rows })
}

/// One computed-vs-expected comparison row.
#[derive(Debug, Clone)]
pub struct CheckRow {
    /// What is being checked.
    pub name: String,
    /// Computed value, rendered.
    pub computed: String,
    /// Expected value, rendered.
    pub expected: String,
    /// Whether they agree within the check's tolerance.
    pub pass: bool,
}

fn check_exact<T: PartialEq + std::fmt::Debug>(name: &str, computed: T, expected: T) -> CheckRow {
    CheckRow {
        name: name.to_string(),
        computed: format!("{computed:?}"),
        expected: format!("{expected:?}"),
        pass: computed == expected,
    }
}

fn check_close(name: &str, computed: f64, expected: f64, tol: f64) -> CheckRow {
    CheckRow {
        name: name.to_string(),
        computed: format!("{computed}"),
        expected: format!("{expected}"),
        pass: (computed - expected).abs() <= tol,
    }
}

fn dec_for(kind: FamilyKind, rank: usize, painted: &[usize]) -> Decomposition {
    let rs = build_root_system(LieFamily::new(kind, rank).unwrap());
    decompose(PaintedDiagram::new(rs, painted).unwrap())
}

/// The four Type I spaces in table order.
pub fn type_i_spaces() -> Vec<(&'static str, Decomposition)> {
    vec![
        ("F4", dec_for(FamilyKind::F4, 4, &[2])),
        ("E7", dec_for(FamilyKind::E7, 7, &[3])),
        ("E8(i)", dec_for(FamilyKind::E8, 8, &[2])),
        ("E8(ii)", dec_for(FamilyKind::E8, 8, &[5])),
    ]
}

fn table5_checks() -> Vec<CheckRow> {
    let expected: [[usize; 4]; 4] = [[12, 18, 4, 6], [48, 36, 16, 6], [96, 60, 32, 6], [84, 70, 28, 14]];
    type_i_spaces()
        .iter()
        .zip(expected)
        .map(|((name, dec), exp)| check_exact(&format!("dims {name}"), dims4(dec), exp))
        .collect()
}

fn table7_checks() -> Vec<CheckRow> {
    use crate::rat::{q, qr};
    let expected: [[Q; 4]; 4] = [
        [q(2), q(1), qr(2, 3), q(2)],
        [q(8), q(4), qr(4, 3), q(2)],
        [q(16), q(8), qr(8, 5), q(2)],
        [q(14), q(7), qr(14, 5), qr(14, 3)],
    ];
    let keys = [[1u8, 1, 2], [1, 2, 3], [1, 3, 4], [2, 2, 4]];
    let mut rows = Vec::new();
    for ((name, dec), exp) in type_i_spaces().iter().zip(expected) {
        for method in ["direct", "from_ke"] {
            let tab = if method == "direct" {
                triples_direct(dec).unwrap()
            } else {
                triples_reference(dec).unwrap()
            };
            let got: Vec<String> = keys.iter().map(|k| fmt_q(&tab.get(k[0], k[1], k[2]))).collect();
            let want: Vec<String> = exp.iter().map(fmt_q).collect();
            rows.push(check_exact(&format!("triples {name} ({method})"), got, want));
        }
    }
    rows
}

/// Symbolic Type II dimension formulas instantiated at `(ℓ, p)`.
pub fn table8_expected(kind: FamilyKind, tag: TypeTag, l: usize, p: usize) -> [usize; 4] {
    match (kind, tag) {
        (FamilyKind::B, _) => [2, 2 * (2 * l - 3), 2 * (2 * l - 3), 2],
        (FamilyKind::D, TypeTag::TypeIIa) => [2, 4 * (l - 2), 4 * (l - 2), 2],
        (FamilyKind::C, _) => [
            2 * p * (l - p),
            (l - p) * (l - p + 1),
            2 * p * (l - p),
            p * (p + 1),
        ],
        (FamilyKind::D, _) => [
            2 * p * (l - p),
            (l - p) * (l - p - 1),
            2 * p * (l - p),
            p * (p - 1),
        ],
        (FamilyKind::E6, _) => [2, 20, 20, 10],
        (FamilyKind::E7, _) => [2, 32, 32, 20],
        _ => unreachable!("no Type II dimension formula for this family"),
    }
}

fn table8_checks(lmax: usize) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    for l in 4..=lmax {
        let b = dec_for(FamilyKind::B, l, &[0, 1]);
        rows.push(check_exact(
            &format!("dims SO({}) IIa", 2 * l + 1),
            dims4(&b),
            table8_expected(FamilyKind::B, TypeTag::TypeIIa, l, 1),
        ));
        let d = dec_for(FamilyKind::D, l, &[0, 1]);
        rows.push(check_exact(
            &format!("dims SO({})(i)", 2 * l),
            dims4(&d),
            table8_expected(FamilyKind::D, TypeTag::TypeIIa, l, 1),
        ));
        for p in 1..l {
            let c = dec_for(FamilyKind::C, l, &[p - 1, l - 1]);
            rows.push(check_exact(
                &format!("dims Sp({l}) p={p}"),
                dims4(&c),
                table8_expected(FamilyKind::C, TypeTag::TypeIIb, l, p),
            ));
        }
        for p in 2..=(l - 2) {
            let dii = dec_for(FamilyKind::D, l, &[p - 1, l - 2]);
            rows.push(check_exact(
                &format!("dims SO({})(ii) p={p}", 2 * l),
                dims4(&dii),
                table8_expected(FamilyKind::D, TypeTag::TypeIIb, l, p),
            ));
        }
    }
    for (name, kind) in [("E6", FamilyKind::E6), ("E7", FamilyKind::E7)] {
        let dec = dec_for(kind, if kind == FamilyKind::E6 { 6 } else { 7 }, &[0, 1]);
        rows.push(check_exact(
            &format!("dims {name} IIa"),
            dims4(&dec),
            table8_expected(kind, TypeTag::TypeIIa, 0, 0),
        ));
    }
    rows
}

/// Expected Kähler-Einstein metrics of Theorems on the natural ordering,
/// in the tables' presentation.
pub fn ke_expected(kind: FamilyKind, tag: TypeTag, l: i64, p: i64) -> Vec<Q> {
    use crate::rat::{q, qr};
    match (kind, tag) {
        (_, TypeTag::TypeI) => vec![q(1), q(2), q(3), q(4)],
        (FamilyKind::B, _) => vec![q(1), qr(2 * l - 3, 2), qr(2 * l - 1, 2), q(2 * l - 2)],
        (FamilyKind::D, TypeTag::TypeIIa) => vec![q(1), q(l - 2), q(l - 1), q(2 * l - 3)],
        (FamilyKind::E6, _) => vec![q(1), q(4), q(5), q(9)],
        (FamilyKind::E7, _) => vec![q(1), q(6), q(7), q(13)],
        (FamilyKind::C, _) => vec![
            qr(l, 2),
            q(l - p + 1),
            qr(3 * l, 2) - q(p - 1),
            q(2 * l - p + 1),
        ],
        (FamilyKind::D, _) => vec![
            qr(l, 2),
            q(l - p - 1),
            qr(3 * l, 2) - q(p + 1),
            q(2 * l - p - 1),
        ],
        _ => unreachable!("no KE table row for this family"),
    }
}

fn ke_checks(lmax: usize) -> Vec<CheckRow> {
    let natural = OrderingSigns::natural();
    let mut rows: Vec<CheckRow> = type_i_spaces()
        .iter()
        .map(|(name, dec)| {
            let ke = ke_metric(dec, &natural);
            check_exact(
                &format!("KE {name}"),
                ke.normalized.iter().map(fmt_q).collect::<Vec<_>>(),
                ke_expected(FamilyKind::F4, TypeTag::TypeI, 0, 0)
                    .iter()
                    .map(fmt_q)
                    .collect(),
            )
        })
        .collect();
    let mut push = |name: String, dec: &Decomposition, exp: Vec<Q>| {
        let ke = ke_metric(dec, &natural);
        rows.push(check_exact(
            &name,
            ke.normalized.iter().map(fmt_q).collect::<Vec<_>>(),
            exp.iter().map(fmt_q).collect(),
        ));
    };
    for l in 3..=lmax {
        let b = dec_for(FamilyKind::B, l, &[0, 1]);
        push(
            format!("KE SO({})", 2 * l + 1),
            &b,
            ke_expected(FamilyKind::B, TypeTag::TypeIIa, l as i64, 1),
        );
        if l >= 4 {
            let d = dec_for(FamilyKind::D, l, &[0, 1]);
            push(
                format!("KE SO({})(i)", 2 * l),
                &d,
                ke_expected(FamilyKind::D, TypeTag::TypeIIa, l as i64, 1),
            );
        }
        for p in 1..l {
            let c = dec_for(FamilyKind::C, l, &[p - 1, l - 1]);
            push(
                format!("KE Sp({l}) p={p}"),
                &c,
                ke_expected(FamilyKind::C, TypeTag::TypeIIb, l as i64, p as i64),
            );
        }
        for p in 2..=(l.saturating_sub(2)) {
            let dii = dec_for(FamilyKind::D, l, &[p - 1, l - 2]);
            push(
                format!("KE SO({})(ii) p={p}", 2 * l),
                &dii,
                ke_expected(FamilyKind::D, TypeTag::TypeIIb, l as i64, p as i64),
            );
        }
    }
    for (name, kind, rank) in [("E6", FamilyKind::E6, 6usize), ("E7", FamilyKind::E7, 7)] {
        let dec = dec_for(kind, rank, &[0, 1]);
        push(
            format!("KE {name} IIa"),
            &dec,
            ke_expected(kind, TypeTag::TypeIIa, 0, 0),
        );
    }
    rows
}

/// Published non-KE solution lists for the Type I spaces (x1 = 1 gauge).
pub fn theorem42_expected() -> Vec<(&'static str, Vec<MetricParams>)> {
    vec![
        ("F4", vec![[1.0, 1.2761, 1.9578, 2.3178], [1.0, 0.9704, 0.2291, 1.0097]]),
        // The x4 of the first E7 metric is printed as 1.3449 in the source
        // table, but the system's root near that point has x4 = 1.34989
        // (the printed point leaves a residual two orders larger than the
        // rounding of the other coordinates; the printed H value matches
        // the corrected root).
        ("E7", vec![[1.0, 0.8233, 1.2942, 1.3499], [1.0, 0.9912, 0.5783, 1.1312]]),
        (
            "E8(i)",
            vec![
                [1.0, 0.6496, 1.1094, 1.0610],
                [1.0, 1.1560, 1.0178, 0.2146],
                [1.0, 1.0970, 0.7703, 1.2969],
                [1.0, 0.7633, 1.0090, 0.1910],
            ],
        ),
        ("E8(ii)", vec![[1.0, 0.9133, 1.4136, 1.5196], [1.0, 0.9663, 0.4898, 1.0809]]),
    ]
}

/// Published eight-solution lists for the exceptional Type IIa spaces.
pub fn theorem52_expected() -> Vec<(&'static str, Vec<MetricParams>)> {
    vec![
        (
            "E6",
            vec![
                [1.0, 0.568845, 0.568845, 0.452648],
                [1.0, 3.81171, 3.81171, 7.45484],
                [1.0, 4.93397, 4.93397, 3.34633],
                [1.0, 0.685474, 0.685474, 1.19063],
                [1.0, 0.636364, 0.363636, 0.272727],
                [1.0, 0.363636, 0.636364, 0.272727],
                [1.0, 4.0, 5.0, 9.0],
                [1.0, 5.0, 4.0, 9.0],
            ],
        ),
        (
            "E7",
            vec![
                [1.0, 7.46064, 7.46064, 5.7877],
                [1.0, 5.79359, 5.79359, 11.4613],
                [1.0, 0.704472, 0.704472, 1.27517],
                [1.0, 0.579765, 0.579765, 0.505408],
                [1.0, 0.352941, 0.647059, 0.294118],
                [1.0, 0.647059, 0.352941, 0.294118],
                [1.0, 6.0, 7.0, 13.0],
                [1.0, 7.0, 6.0, 13.0],
            ],
        ),
    ]
}

fn best_match(sols: &[EinsteinSolution], target: &MetricParams) -> (f64, MetricParams) {
    sols.iter()
        .map(|s| {
            let d = (0..4)
                .map(|i| (s.metric[i] - target[i]).abs())
                .fold(0.0f64, f64::max);
            (d, s.metric)
        })
        .min_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .expect("solution list nonempty")
}

fn solver_checks_type_i(starts: usize, seed: u64) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    // Type I: KE plus two (or four for the first E8 space) other metrics.
    for ((name, dec), (_, expected)) in type_i_spaces().iter().zip(theorem42_expected()) {
        let dims = dims4(dec);
        let triples = triples_direct(dec).unwrap();
        let kes = ke_metrics_f64(dec);
        let sols = solve_all(dec.type_tag, &dims, &triples, &kes, starts, seed);
        rows.push(check_exact(
            &format!("solution count {name}"),
            sols.len(),
            expected.len() + 1,
        ));
        for (i, target) in expected.iter().enumerate() {
            let (d, got) = best_match(&sols, target);
            rows.push(CheckRow {
                name: format!("solution {name} g{}", i + 1),
                computed: format!("{got:?}"),
                expected: format!("{target:?}"),
                pass: d <= 1e-3,
            });
        }
    }
    rows
}

fn solver_checks_iia(starts: usize, seed: u64) -> Vec<CheckRow> {
    let mut rows = Vec::new();
    // Exceptional Type IIa (eight metrics each).
    for (name, expected) in theorem52_expected() {
        let dec = if name == "E6" {
            dec_for(FamilyKind::E6, 6, &[0, 1])
        } else {
            dec_for(FamilyKind::E7, 7, &[0, 1])
        };
        let dims = dims4(&dec);
        let triples = triples_direct(&dec).unwrap();
        let kes = ke_metrics_f64(&dec);
        let sols = solve_all(dec.type_tag, &dims, &triples, &kes, starts, seed);
        rows.push(check_exact(&format!("solution count {name} IIa"), sols.len(), 8));
        for (i, target) in expected.iter().enumerate() {
            let (d, got) = best_match(&sols, target);
            rows.push(CheckRow {
                name: format!("solution {name} ({})", (b'a' + i as u8) as char),
                computed: format!("{got:?}"),
                expected: format!("{target:?}"),
                pass: d <= 1e-4,
            });
        }
    }
    rows
}

fn closed_form_checks() -> Vec<CheckRow> {
    let mut rows = Vec::new();
    let mut push_residuals = |name: String, dec: &Decomposition, space: ClosedFormSpace| {
        let dims = dims4(dec);
        let triples = triples_direct(dec).unwrap();
        match closed_forms(space) {
            Ok(forms) => {
                for (i, m) in forms.iter().enumerate() {
                    let res = einstein_residual(dec.type_tag, &dims, &triples, m)
                        .map(|r| r.iter().fold(0.0f64, |a, &b| a.max(b.abs())))
                        .unwrap_or(f64::NAN);
                    rows.push(CheckRow {
                        name: format!("{name} form {} residual", i + 1),
                        computed: format!("{res:e}"),
                        expected: "<= 1e-10".into(),
                        pass: res <= 1e-10,
                    });
                }
            }
            Err(e) => rows.push(CheckRow {
                name,
                computed: e.to_string(),
                expected: "closed forms".into(),
                pass: false,
            }),
        }
    };
    for l in 3..=10 {
        let b = dec_for(FamilyKind::B, l, &[0, 1]);
        push_residuals(
            format!("Eq.(24) SO({})", 2 * l + 1),
            &b,
            ClosedFormSpace::SO2lPlus1 { l },
        );
        if l >= 4 {
            let d = dec_for(FamilyKind::D, l, &[0, 1]);
            push_residuals(
                format!("Eq.(25) SO({})(i)", 2 * l),
                &d,
                ClosedFormSpace::SO2lI { l },
            );
        }
    }
    for p in 2..=6 {
        let d = dec_for(FamilyKind::D, 2 * p, &[p - 1, 2 * p - 2]);
        push_residuals(format!("(sol3)/(sol4) SO({})", 4 * p), &d, ClosedFormSpace::SO4p { p });
    }
    for p in 1..=6 {
        let c = dec_for(FamilyKind::C, 2 * p, &[p - 1, 2 * p - 1]);
        push_residuals(format!("(sol5) Sp({})", 2 * p), &c, ClosedFormSpace::Sp2p { p });
    }
    rows
}

/// Published Table 9 scale invariants, paired with the paper's metrics.
pub fn table9_expected() -> Vec<(&'static str, MetricParams, f64)> {
    vec![
        ("F4 KE", [1.0, 2.0, 3.0, 4.0], 15.5381),
        ("F4 g1", [1.0, 1.2761, 1.9578, 2.3178], 15.7376),
        ("F4 g2", [1.0, 0.9704, 0.2291, 1.0097], 15.7255),
        ("E7 KE", [1.0, 2.0, 3.0, 4.0], 38.8641),
        ("E7 g1", [1.0, 0.8233, 1.2942, 1.3449], 39.0998),
        ("E7 g2", [1.0, 0.9912, 0.5783, 1.1312], 38.9954),
        ("E8(ii) KE", [1.0, 2.0, 3.0, 4.0], 72.1927),
        ("E8(ii) g1", [1.0, 0.9133, 1.4136, 1.5196], 72.8754),
        ("E8(ii) g2", [1.0, 0.9663, 0.4898, 1.0809], 72.6779),
        ("E8(i) KE", [1.0, 2.0, 3.0, 4.0], 70.9532),
        ("E8(i) g1", [1.0, 0.6496, 1.1094, 1.0610], 70.6326),
        ("E8(i) g2", [1.0, 1.1560, 1.0178, 0.2146], 77.6071),
        ("E8(i) g3", [1.0, 1.0970, 0.7703, 1.2969], 70.6696),
        ("E8(i) g4", [1.0, 0.7633, 1.0090, 0.1910], 77.3436),
    ]
}

/// Published E6 Type IIa scale invariants from the discussion after Table 9,
/// keyed by the metrics of the eight-solution theorem.
pub fn e6_h_expected() -> Vec<(&'static str, MetricParams, f64, f64)> {
    vec![
        ("E6 H(a)", [1.0, 0.568845, 0.568845, 0.452648], 21.0363, 1e-2),
        ("E6 H(b)", [1.0, 3.81171, 3.81171, 7.45484], 20.9202, 1e-2),
        ("E6 H(c)", [1.0, 4.93397, 4.93397, 3.34633], 20.5771, 1e-2),
        ("E6 H(d)", [1.0, 0.685474, 0.685474, 1.19063], 21.1831, 1e-2),
        ("E6 H(e)", [1.0, 0.636364, 0.363636, 0.272727], 21.146, 1e-2),
        ("E6 H(f)", [1.0, 0.363636, 0.636364, 0.272727], 21.146, 1e-2),
        ("E6 H(g)", [1.0, 4.0, 5.0, 9.0], 20.9279, 1e-2),
        ("E6 H(h)", [1.0, 5.0, 4.0, 9.0], 20.9279, 1e-2),
    ]
}

fn table9_checks(starts: usize, seed: u64) -> Vec<CheckRow> {
    use crate::isometry::scale_invariant;
    let mut rows = Vec::new();
    // Solve each Type I space once, then evaluate H on our high-precision
    // solution closest to each published metric.
    for (name, dec) in type_i_spaces() {
        let dims = dims4(&dec);
        let triples = triples_direct(&dec).unwrap();
        let kes = ke_metrics_f64(&dec);
        let sols = solve_all(dec.type_tag, &dims, &triples, &kes, starts, seed);
        for (label, target, expected) in table9_expected() {
            if !label.starts_with(name) {
                continue;
            }
            let (_, metric) = best_match(&sols, &target);
            let h = scale_invariant(dec.type_tag, &dims, &triples, &metric).unwrap();
            rows.push(check_close(label, h, expected, 1e-3));
        }
    }
    // E6 Type IIa values from the isometry discussion.
    let dec = dec_for(FamilyKind::E6, 6, &[0, 1]);
    let dims = dims4(&dec);
    let triples = triples_direct(&dec).unwrap();
    let kes = ke_metrics_f64(&dec);
    let sols = solve_all(dec.type_tag, &dims, &triples, &kes, starts, seed);
    for (label, target, expected, tol) in e6_h_expected() {
        let (_, metric) = best_match(&sols, &target);
        let h = scale_invariant(dec.type_tag, &dims, &triples, &metric).unwrap();
        rows.push(check_close(label, h, expected, tol));
    }
    rows
}

/// All reproduction bundles: `(table name, rows)`.
pub fn cmd_reproduce_tables(starts: usize, seed: u64) -> Vec<(String, Vec<CheckRow>)> {
    vec![
        ("table5".into(), table5_checks()),
        ("table7".into(), table7_checks()),
        ("table8".into(), table8_checks(8)),
        ("ke_metrics".into(), ke_checks(8)),
        ("einstein_type_i".into(), solver_checks_type_i(starts, seed)),
        ("einstein_exceptional_iia".into(), solver_checks_iia(starts, seed)),
        ("closed_forms".into(), closed_form_checks()),
        ("table9".into(), table9_checks(starts, seed)),
    ]
}

fn checks_json(rows: &[CheckRow]) -> Value {
    json!(rows
        .iter()
        .map(|r| json!({
            "name": r.name, "computed": r.computed,
            "expected": r.expected, "pass": r.pass,
        }))
        .collect::<Vec<_>>())
}

fn checks_text(rows: &[CheckRow]) -> String {
    let mut s = String::new();
    for r in rows {
        s.push_str(&format!(
            "[{}] {}: computed {} expected {}\n",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.computed,
            r.expected
        ));
    }
    s
}

fn checks_csv(rows: &[CheckRow]) -> String {
    let mut s = String::from("name,computed,expected,pass\n");
    for r in rows {
        s.push_str(&format!(
            "{:?},{:?},{:?},{}\n",
            r.name, r.computed, r.expected, r.pass
        ));
    }
    s
}

fn classify_text(doc: &Value) -> String {
    let mut s = format!("classification up to rank {}\n", doc["max_rank"]);
    for row in doc["spaces"].as_array().unwrap() {
        s.push_str(&format!(
            "{} l={} painted {} type {} dims {}{}{}\n",
            row["family"].as_str().unwrap(),
            row["rank"],
            row["painted_nodes"],
            row["type"].as_str().unwrap(),
            row["dims"],
            if row["aliases"].as_array().unwrap().is_empty() {
                String::new()
            } else {
                format!(" aliases {}", row["aliases"])
            },
            if row["degenerate"].as_bool().unwrap() {
                " (degenerate flag)"
            } else {
                ""
            },
        ));
    }
    s
}

fn classify_csv(doc: &Value) -> String {
    let mut s = String::from("family,rank,painted_nodes,type,dims,degenerate\n");
    for row in doc["spaces"].as_array().unwrap() {
        s.push_str(&format!(
            "{},{},{:?},{},{:?},{}\n",
            row["family"].as_str().unwrap(),
            row["rank"],
            row["painted_nodes"].to_string(),
            row["type"].as_str().unwrap(),
            row["dims"].to_string(),
            row["degenerate"]
        ));
    }
    s
}

fn analyze_text(doc: &Value) -> String {
    let mut s = String::new();
    let sp = &doc["space"];
    s.push_str(&format!(
        "space {} ({} l={} painted {} type {})\n",
        sp["alias"].as_str().unwrap(),
        sp["family"].as_str().unwrap(),
        sp["rank"],
        sp["painted_nodes"],
        sp["type"].as_str().unwrap()
    ));
    s.push_str(&format!(
        "solver starts {} seed {}\n\n",
        doc["solver"]["starts"], doc["solver"]["seed"]
    ));
    s.push_str(&format!(
        "t-roots {}\ndims {}\nlowest weights {}\n\n",
        doc["decomposition"]["troots"],
        doc["decomposition"]["dims"],
        doc["decomposition"]["lowest_weights"]
    ));
    s.push_str(&format!("triples {}\n\n", doc["triples"]));
    s.push_str("orderings (up to negation):\n");
    for o in doc["orderings"]["up_to_negation"].as_array().unwrap() {
        s.push_str(&format!(
            "  {}: KE normalized {} raw {} Koszul {}\n",
            o["id"].as_str().unwrap(),
            o["ke_normalized"],
            o["ke_raw"],
            o["koszul_delta_m_weights"]
        ));
    }
    s.push_str("\nEinstein solutions (x1 = 1):\n");
    for sol in doc["einstein_solutions"].as_array().unwrap() {
        s.push_str(&format!(
            "  {} e={} residual={} {}\n",
            sol["metric"],
            sol["einstein_constant"],
            sol["residual"],
            sol["kind"].as_str().unwrap()
        ));
    }
    if let Some(cf) = doc.get("closed_forms") {
        s.push_str(&format!("\nclosed forms: {cf}\n"));
    }
    if let Some(qa) = doc.get("quartic") {
        s.push_str(&format!("\nquartic analysis: {qa}\n"));
    }
    s.push_str(&format!("\nisometry: {}\n", doc["isometry"]));
    s
}

fn analyze_csv(doc: &Value) -> String {
    let mut s = String::from("x1,x2,x3,x4,einstein_constant,residual,kind,H\n");
    let sols = doc["einstein_solutions"].as_array().unwrap();
    let recs = doc["isometry"]["records"].as_array().unwrap();
    for (sol, rec) in sols.iter().zip(recs) {
        let m = sol["metric"].as_array().unwrap();
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            m[0], m[1], m[2], m[3],
            sol["einstein_constant"],
            sol["residual"],
            sol["kind"].as_str().unwrap(),
            rec["H"]
        ));
    }
    s
}

fn emit(out: &Option<std::path::PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|e| e.to_string()),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match run_inner(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn run_inner(cli: &Cli) -> Result<i32, String> {
    match &cli.command {
        Command::Classify { max_rank } => {
            if *max_rank < 4 {
                return Err("--max-rank must be at least 4".into());
            }
            let doc = cmd_classify(*max_rank);
            let content = match cli.format {
                Format::Json => serde_json::to_string_pretty(&doc).unwrap() + "\n",
                Format::Text => classify_text(&doc),
                Format::Csv => classify_csv(&doc),
            };
            emit(&cli.out, &content)?;
            Ok(0)
        }
        Command::Analyze { space } => {
            let spec = resolve_alias(space)?;
            let doc = cmd_analyze(&spec, cli.starts, cli.seed)?;
            let content = match cli.format {
                Format::Json => serde_json::to_string_pretty(&doc).unwrap() + "\n",
                Format::Text => analyze_text(&doc),
                Format::Csv => analyze_csv(&doc),
            };
            emit(&cli.out, &content)?;
            Ok(0)
        }
        Command::ReproduceTables => {
            let bundles = cmd_reproduce_tables(cli.starts, cli.seed);
            let all_pass = bundles
                .iter()
                .all(|(_, rows)| rows.iter().all(|r| r.pass));
            if let Some(dir) = &cli.out {
                std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                for (name, rows) in &bundles {
                    let (ext, content) = match cli.format {
                        Format::Json => ("json", serde_json::to_string_pretty(&checks_json(rows)).unwrap() + "\n"),
                        Format::Text => ("txt", checks_text(rows)),
                        Format::Csv => ("csv", checks_csv(rows)),
                    };
                    std::fs::write(dir.join(format!("{name}.{ext}")), content)
                        .map_err(|e| e.to_string())?;
                }
            } else {
                for (name, rows) in &bundles {
                    let content = match cli.format {
                        Format::Json => serde_json::to_string_pretty(&checks_json(rows)).unwrap() + "\n",
                        Format::Text => checks_text(rows),
                        Format::Csv => checks_csv(rows),
                    };
                    println!("== {name} ==");
                    print!("{content}");
                }
            }
            Ok(if all_pass { 0 } else { 2 })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alias_grammar() {
        let s = resolve_alias("F4-I").unwrap();
        assert_eq!(s.painted, vec![2]);
        let s = resolve_alias("B:l=5-IIa").unwrap();
        assert_eq!((s.family.rank, s.painted.clone()), (5, vec![0, 1]));
        let s = resolve_alias("C:l=6,p=2-IIb").unwrap();
        assert_eq!(s.painted, vec![1, 5]);
        let s = resolve_alias("D:l=6,p=2-IIb").unwrap();
        assert_eq!(s.painted, vec![1, 4]);
        let s = resolve_alias("E8:p=6-I").unwrap();
        assert_eq!(s.painted, vec![5]);
        assert!(resolve_alias("E6:l=7-IIa").is_err());
        assert!(resolve_alias("B:l=5-IIb").is_err());
        let s = resolve_alias("E6:nodes=1+2").unwrap();
        assert_eq!(s.painted, vec![0, 1]);
    }
}
