use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};
use weightsys_core::acceptance::{self, dm_quadruples, graph_quadruples};
use weightsys_core::deltamatroids::{
    dm_from_graph, dm_from_ribbon, interlace_dm, skew_char_dm, stanley_dm, transition_dm, DeltaMatroid,
    DmJson,
};
use weightsys_core::diagrams::{
    all_four_term_quadruples, enumerate_diagrams_bounded, DEFAULT_MAX_CHORDS, STRETCH_MAX_CHORDS,
};
use weightsys_core::graphs::MAX_ENUM_VERTICES;
use weightsys_core::hopf::{
    kp_check, quotient_rank_4t, quotient_rank_4t_rational, rank_mod_p, relation_matrix, write_matrix_market,
    Family, UmbralKind, DEFAULT_PRIME, MAX_RANK_CHORDS, MAX_RANK_VERTICES,
};
use weightsys_core::invariants::{
    abel, chromatic, interlace, skew_characteristic, stanley, transition_chord, weighted_chromatic,
    TransitionWeights,
};
use weightsys_core::lie::{
    c5n_closed_form, c5n_series, complete_bipartite_series, complete_graph_cf, projection_egf, w_gl_diagram,
    w_sl2, w_sl_diagram, MAX_BIPARTITE_M,
};
use weightsys_core::{ChordDiagram, FramedGraph, MPoly, TruncSeries, Var};

use crate::error::CliError;
use crate::io::{read_input, render_poly, render_record, render_series, Format};
use crate::tables;

/// Chord count accepted by `lie` for the universal gl/sl systems.
pub const MAX_LIE_CHORDS: usize = 8;
/// Chord count accepted by `lie --algebra sl2`.
pub const MAX_SL2_CHORDS: usize = 12;
/// Vertex count accepted for a single graph invariant evaluation.
pub const MAX_INVARIANT_VERTICES: usize = 12;
/// Largest order accepted by `series`.
pub const MAX_SERIES_ORDER: usize = 40;
/// Vertex bound for delta-matroid 4T sweeps.
pub const MAX_DM_SWEEP: usize = 6;

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Stream canonical chord diagrams with n chords, one per line
    Enumerate(EnumerateArgs),
    /// Evaluate a graph or diagram invariant
    Invariant(InvariantArgs),
    /// Evaluate a Lie algebra weight system on a chord diagram
    Lie(LieArgs),
    /// Coefficient tables of generating series
    Series(SeriesArgs),
    /// Dimension of the grade-n part modulo 4T relations
    Dims(DimsArgs),
    /// Delta-matroid operations
    Dm(DmArgs),
    /// Check every 4T combination of a weight system or 4-invariant
    #[command(name = "verify-4t")]
    Verify4t(VerifyArgs),
    /// Umbral averaging and the first KP equation
    #[command(name = "kp-check")]
    KpCheck(KpArgs),
    /// Render the value tables and compare them with the checked-in golden
    Tables(TablesArgs),
    /// Run the acceptance criteria
    Acceptance(AcceptanceArgs),
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    chords: usize,
    #[arg(long)]
    framed: bool,
    /// Allow up to 9 chords
    #[arg(long)]
    stretch: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum InvariantName {
    Chromatic,
    Stanley,
    WeightedChromatic,
    Abel,
    Interlace,
    Transition,
    SkewChar,
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    #[arg(long)]
    name: InvariantName,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AlgebraName {
    Sl2,
    Gl,
    Sl,
}

#[derive(Args, Debug)]
pub struct LieArgs {
    #[arg(long)]
    algebra: AlgebraName,
    #[arg(long)]
    input: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SeriesName {
    /// Σ w_sl2(K_n) t^n by continued fraction
    CfSl2,
    /// G_m = Σ_n w_sl2(K_{m,n}) t^n
    Gm,
    /// Σ_n w_sl2((C_5, n)) t^n
    C5n,
    /// Closed form of the same series
    C5nClosed,
    /// n! [t^n] log Σ w_sl2(K_n) t^n/n!
    EgfPrimitiveKn,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long)]
    which: SeriesName,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    order: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyName {
    Diagrams,
    Graphs,
}

#[derive(Args, Debug)]
pub struct DimsArgs {
    #[arg(long, default_value = "diagrams")]
    family: FamilyName,
    #[arg(long)]
    chords: usize,
    /// Allow n up to 9 for diagrams
    #[arg(long)]
    stretch: bool,
    #[arg(long, conflicts_with = "rational")]
    prime: Option<u64>,
    /// Exact rational elimination (n <= 5)
    #[arg(long)]
    rational: bool,
    /// Write the relation matrix in Matrix Market format
    #[arg(long)]
    export: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DmOp {
    Check,
    FromGraph,
    FromRibbon,
    Twist,
    Interlace,
    Transition,
    SkewChar,
    Stanley,
    #[value(name = "4t-verify")]
    FourTVerify,
}

#[derive(Args, Debug)]
pub struct DmArgs {
    #[arg(long)]
    op: DmOp,
    #[arg(long)]
    input: Option<PathBuf>,
    /// Ground elements to twist by, comma separated
    #[arg(long, value_delimiter = ',')]
    subset: Vec<String>,
    #[arg(long, default_value_t = 4)]
    max_vertices: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemName {
    Sl2,
    Gl,
    Sl,
    Transition,
    Chromatic,
    Stanley,
    WeightedChromatic,
    Interlace,
    SkewChar,
    InterlaceDm,
    TransitionDm,
    SkewCharDm,
    StanleyDm,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    system: SystemName,
    #[arg(long)]
    max_chords: Option<usize>,
    #[arg(long)]
    max_vertices: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum UmbralName {
    Abel,
    Stanley,
    WeightedChromatic,
}

#[derive(Args, Debug)]
pub struct KpArgs {
    #[arg(long, default_value = "abel")]
    invariant: UmbralName,
    #[arg(long, default_value_t = 5)]
    max_n: usize,
    /// Total weight through which the Schur-side residual is checked
    #[arg(long, default_value_t = 5)]
    schur_weight: usize,
}

#[derive(Args, Debug)]
pub struct TablesArgs {
    /// Render the reference strings instead of computing
    #[arg(long)]
    reference: bool,
}

#[derive(Args, Debug)]
pub struct AcceptanceArgs {
    #[arg(long)]
    criterion: Option<u8>,
}

pub const GOLDEN_TABLES: &str = include_str!("../goldens/tables.txt");

/// Run one subcommand, writing its result to `out`.
pub fn run(cmd: &Command, format: Option<Format>, out: &mut dyn Write) -> Result<(), CliError> {
    let fmt = format.unwrap_or(Format::Json);
    match cmd {
        Command::Enumerate(a) => enumerate(a, format.unwrap_or(Format::Pretty), out),
        Command::Invariant(a) => invariant(a, fmt, out),
        Command::Lie(a) => lie(a, format.unwrap_or(Format::Pretty), out),
        Command::Series(a) => series(a, fmt, out),
        Command::Dims(a) => dims(a, format.unwrap_or(Format::Pretty), out),
        Command::Dm(a) => dm(a, fmt, out),
        Command::Verify4t(a) => verify(a, fmt, out),
        Command::KpCheck(a) => kp(a, fmt, out),
        Command::Tables(a) => tables_cmd(a, out),
        Command::Acceptance(a) => acceptance_cmd(a, out),
    }
}

fn line(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    writeln!(out, "{s}")?;
    Ok(())
}

fn bound(what: &str, got: usize, max: usize) -> Result<(), CliError> {
    if got > max {
        Err(CliError::Bound(format!("{what} {got} exceeds the bound {max}")))
    } else {
        Ok(())
    }
}

fn enumerate(a: &EnumerateArgs, fmt: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let max = if a.stretch { STRETCH_MAX_CHORDS } else { DEFAULT_MAX_CHORDS };
    let ds = enumerate_diagrams_bounded(a.chords, a.framed, max)?;
    for d in &ds {
        let s = match fmt {
            Format::Json => serde_json::to_string(&d.to_json())?,
            _ => word_line(d),
        };
        line(out, &s)?;
    }
    eprintln!("{} diagrams", ds.len());
    Ok(())
}

fn word_line(d: &ChordDiagram) -> String {
    let j = d.to_json();
    let word = j.word.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    if d.is_framed() {
        let fr = j.framing.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        format!("{word} ; {fr}")
    } else {
        word
    }
}

fn invariant(a: &InvariantArgs, fmt: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let input = read_input(&a.input)?;
    let p = match (a.name, input) {
        (InvariantName::Transition, crate::io::Input::Diagram(d)) => {
            bound("chord count", d.n(), MAX_INVARIANT_VERTICES)?;
            transition_chord(&d, &TransitionWeights::weight_system())
        }
        (InvariantName::Transition, other) => {
            let d = other.delta_matroid()?;
            transition_dm(&d)
        }
        (name, input) => {
            let g = input.graph()?;
            bound("vertex count", g.n(), MAX_INVARIANT_VERTICES)?;
            graph_invariant(name, &g)
        }
    };
    line(out, &render_poly(&p, fmt))
}

fn graph_invariant(name: InvariantName, g: &FramedGraph) -> MPoly {
    match name {
        InvariantName::Chromatic => chromatic(g),
        InvariantName::Stanley => stanley(g),
        InvariantName::WeightedChromatic => weighted_chromatic(g),
        InvariantName::Abel => abel(g),
        InvariantName::Interlace => interlace(g),
        InvariantName::SkewChar => skew_characteristic(g),
        InvariantName::Transition => transition_dm(&dm_from_graph(g)),
    }
}

fn lie(a: &LieArgs, fmt: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let d = read_input(&a.input)?.diagram()?;
    let p = match a.algebra {
        AlgebraName::Sl2 => {
            bound("chord count", d.n(), MAX_SL2_CHORDS)?;
            w_sl2(&d)
        }
        AlgebraName::Gl => {
            bound("chord count", d.n(), MAX_LIE_CHORDS)?;
            w_gl_diagram(&d)
        }
        AlgebraName::Sl => {
            bound("chord count", d.n(), MAX_LIE_CHORDS)?;
            w_sl_diagram(&d)
        }
    };
    line(out, &render_poly(&p, fmt))
}

fn series(a: &SeriesArgs, fmt: Format, out: &mut dyn Write) -> Result<(), CliError> {
    bound("series order", a.order, MAX_SERIES_ORDER)?;
    if a.m.is_some() && !matches!(a.which, SeriesName::Gm) {
        return Err(CliError::Usage("--m only applies to --which gm".into()));
    }
    let s = match a.which {
        SeriesName::CfSl2 => complete_graph_cf(a.order),
        SeriesName::Gm => {
            let m = a.m.ok_or_else(|| CliError::Usage("--which gm needs --m".into()))?;
            bound("m", m, MAX_BIPARTITE_M)?;
            complete_bipartite_series(m, a.order)?.swap_remove(m)
        }
        SeriesName::C5n => {
            bound("m", 5, MAX_BIPARTITE_M)?;
            c5n_series(a.order)
        }
        SeriesName::C5nClosed => c5n_closed_form(a.order),
        SeriesName::EgfPrimitiveKn => {
            bound("series order", a.order, MAX_SL2_CHORDS)?;
            let mut coeffs = vec![MPoly::zero()];
            coeffs.extend(projection_egf(a.order));
            TruncSeries::from_coeffs(Var::T, coeffs, a.order)
        }
    };
    line(out, &render_series(&s, fmt))
}

/// Rough peak memory of a diagram relation matrix: about (2n-1)!!/(2n)
/// basis elements, n(n-1) rows per element, four entries of 16 bytes.
fn memory_estimate_mib(n: usize) -> f64 {
    let mut dfact = 1f64;
    for k in (1..2 * n).step_by(2) {
        dfact *= k as f64;
    }
    let basis = dfact / (2 * n).max(1) as f64;
    basis * (n * n.saturating_sub(1)) as f64 * 4.0 * 16.0 / (1024.0 * 1024.0)
}

fn dims(a: &DimsArgs, fmt: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let family = match a.family {
        FamilyName::Diagrams => Family::Diagrams,
        FamilyName::Graphs => Family::Graphs,
    };
    if a.stretch {
        if matches!(a.family, FamilyName::Graphs) {
            return Err(CliError::Usage("--stretch applies to diagrams only".into()));
        }
        eprintln!(
            "stretch run: n={} needs roughly {:.0} MiB for the relation matrix",
            a.chords,
            memory_estimate_mib(a.chords)
        );
    } else {
        let max = match a.family {
            FamilyName::Diagrams => MAX_RANK_CHORDS,
            FamilyName::Graphs => MAX_RANK_VERTICES,
        };
        bound("grade", a.chords, max)?;
    }
    let dim = if let Some(path) = &a.export {
        let m = relation_matrix(a.chords, family, a.stretch)?;
        let f = std::fs::File::create(path)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        let mut w = BufWriter::new(f);
        write_matrix_market(&m, &mut w)?;
        w.flush()?;
        eprintln!("wrote {} rows to {}", m.rows.len(), path.display());
        if a.rational {
            quotient_rank_4t_rational(a.chords, family)?
        } else {
            m.columns - rank_mod_p(&m, a.prime.unwrap_or(DEFAULT_PRIME))
        }
    } else if a.rational {
        quotient_rank_4t_rational(a.chords, family)?
    } else {
        quotient_rank_4t(a.chords, family, a.prime, a.stretch)?
    };
    match fmt {
        Format::Pretty => line(out, &dim.to_string()),
        f => line(
            out,
            &render_record(&json!({ "family": family_name(a.family), "n": a.chords, "dim": dim }), f),
        ),
    }
}

fn family_name(f: FamilyName) -> &'static str {
    match f {
        FamilyName::Diagrams => "diagrams",
        FamilyName::Graphs => "graphs",
    }
}

fn require_input(a: &DmArgs) -> Result<&Path, CliError> {
    a.input
        .as_deref()
        .ok_or_else(|| CliError::Usage("this operation needs --input".into()))
}

fn dm(a: &DmArgs, fmt: Format, out: &mut dyn Write) -> Result<(), CliError> {
    use crate::io::Input;
    if let DmOp::FourTVerify = a.op {
        bound("vertex count", a.max_vertices, MAX_DM_SWEEP)?;
        let mut report = serde_json::Map::new();
        let mut failed = Vec::new();
        for (name, f) in DM_SYSTEMS {
            let bad = sweep_dm(a.max_vertices, f);
            if bad > 0 {
                failed.push(name);
            }
            report.insert(name.into(), json!(bad));
        }
        line(out, &render_record(&Value::Object(report), fmt))?;
        return if failed.is_empty() {
            Ok(())
        } else {
            Err(CliError::Failed(format!("nonzero 4T combinations for {failed:?}")))
        };
    }
    let input = read_input(require_input(a)?)?;
    let d = match (a.op, input) {
        (DmOp::FromGraph, Input::Graph(g)) => dm_from_graph(&g),
        (DmOp::FromGraph, Input::Diagram(c)) => dm_from_graph(&c.intersection_graph()),
        (DmOp::FromGraph, _) => return Err(CliError::Usage("from-graph needs a graph".into())),
        (DmOp::FromRibbon, Input::Ribbon(r)) => dm_from_ribbon(&r)?,
        (DmOp::FromRibbon, _) => return Err(CliError::Usage("from-ribbon needs a ribbon graph".into())),
        (_, input) => input.delta_matroid()?,
    };
    match a.op {
        DmOp::FromGraph | DmOp::FromRibbon => line(out, &serde_json::to_string(&d.to_json())?),
        DmOp::Twist => {
            let (t, labels) = twist_by_names(&d, a)?;
            line(out, &serde_json::to_string(&relabel(t.to_json(), &labels))?)
        }
        DmOp::Check => {
            let ok = d.is_delta_matroid();
            let v = json!({
                "delta_matroid": ok,
                "even": d.is_even(),
                "connected": d.is_connected(),
                "ground": d.n(),
                "feasible": d.feasible().len(),
            });
            line(out, &render_record(&v, fmt))?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Failed("the symmetric exchange axiom fails".into()))
            }
        }
        DmOp::Interlace => line(out, &render_poly(&interlace_dm(&d), fmt)),
        DmOp::Transition => line(out, &render_poly(&transition_dm(&d), fmt)),
        DmOp::SkewChar => line(out, &render_poly(&skew_char_dm(&d), fmt)),
        DmOp::Stanley => line(out, &render_poly(&stanley_dm(&d), fmt)),
        DmOp::FourTVerify => unreachable!("handled above"),
    }
}

/// Twist by `--subset`, resolving names against the input's ground labels.
fn twist_by_names(d: &DeltaMatroid, a: &DmArgs) -> Result<(DeltaMatroid, Vec<String>), CliError> {
    let ground = d.to_json().ground;
    let path = require_input(a)?;
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let labels: Vec<String> = match raw.get("ground").and_then(|g| g.as_array()) {
        Some(g) => g.iter().map(|x| x.as_str().map(String::from).unwrap_or_else(|| x.to_string())).collect(),
        None => ground,
    };
    let mut mask = 0u32;
    for s in &a.subset {
        let i = labels
            .iter()
            .position(|l| l == s)
            .ok_or_else(|| CliError::Usage(format!("unknown ground element {s}")))?;
        mask |= 1 << i;
    }
    Ok((d.twist(mask)?, labels))
}

/// Replace the default `1..n` names by the caller's labels.
fn relabel(j: DmJson, labels: &[String]) -> DmJson {
    let name = |s: &String| {
        s.parse::<usize>()
            .ok()
            .and_then(|i| labels.get(i - 1).cloned())
            .unwrap_or_else(|| s.clone())
    };
    DmJson {
        ground: j.ground.iter().map(name).collect(),
        feasible: j.feasible.iter().map(|f| f.iter().map(name).collect()).collect(),
    }
}

type DmSystem = fn(&DeltaMatroid) -> MPoly;

const DM_SYSTEMS: [(&str, DmSystem); 4] = [
    ("interlace", interlace_dm),
    ("transition", transition_dm),
    ("skew-char", skew_char_dm),
    ("stanley", stanley_dm),
];

fn alternating<T>(q: &[T; 4], f: &(dyn Fn(&T) -> MPoly + Sync)) -> MPoly {
    &(&(&f(&q[0]) - &f(&q[1])) - &f(&q[2])) + &f(&q[3])
}

fn sweep_dm(max_n: usize, f: DmSystem) -> usize {
    dm_quadruples(max_n)
        .par_iter()
        .filter(|q| !alternating(q, &f).is_zero())
        .count()
}

fn verify(a: &VerifyArgs, fmt: Format, out: &mut dyn Write) -> Result<(), CliError> {
    use SystemName::*;
    let (checked, nonzero, max) = match a.system {
        Sl2 | Gl | Sl | Transition => {
            let n = a
                .max_chords
                .ok_or_else(|| CliError::Usage("chord-diagram systems need --max-chords".into()))?;
            bound("chord count", n, DEFAULT_MAX_CHORDS)?;
            let f: fn(&ChordDiagram) -> MPoly = match a.system {
                Sl2 => w_sl2,
                Gl => w_gl_diagram,
                Sl => w_sl_diagram,
                _ => transition_weight_system,
            };
            let mut checked = 0;
            let mut nonzero = 0;
            for k in 2..=n {
                let qs = all_four_term_quadruples(k)?;
                checked += qs.len();
                nonzero += qs.par_iter().filter(|q| !alternating(q, &f).is_zero()).count();
            }
            (checked, nonzero, n)
        }
        Chromatic | Stanley | WeightedChromatic | Interlace | SkewChar => {
            let n = a
                .max_vertices
                .ok_or_else(|| CliError::Usage("graph invariants need --max-vertices".into()))?;
            bound("vertex count", n, MAX_ENUM_VERTICES)?;
            let name = match a.system {
                Chromatic => InvariantName::Chromatic,
                Stanley => InvariantName::Stanley,
                WeightedChromatic => InvariantName::WeightedChromatic,
                Interlace => InvariantName::Interlace,
                _ => InvariantName::SkewChar,
            };
            let qs = graph_quadruples(n);
            let f = |g: &FramedGraph| graph_invariant(name, g);
            let nonzero = qs.par_iter().filter(|q| !alternating(q, &f).is_zero()).count();
            (qs.len(), nonzero, n)
        }
        InterlaceDm | TransitionDm | SkewCharDm | StanleyDm => {
            let n = a
                .max_vertices
                .ok_or_else(|| CliError::Usage("delta-matroid invariants need --max-vertices".into()))?;
            bound("vertex count", n, MAX_DM_SWEEP)?;
            let f: DmSystem = match a.system {
                InterlaceDm => interlace_dm,
                TransitionDm => transition_dm,
                SkewCharDm => skew_char_dm,
                _ => stanley_dm,
            };
            let qs = dm_quadruples(n);
            let nonzero = qs.par_iter().filter(|q| !alternating(q, &f).is_zero()).count();
            (qs.len(), nonzero, n)
        }
    };
    let system = a.system.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let v = json!({ "system": system, "max": max, "quadruples": checked, "nonzero": nonzero });
    line(out, &render_record(&v, fmt))?;
    if nonzero == 0 {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{nonzero} of {checked} 4T combinations are nonzero")))
    }
}

fn transition_weight_system(d: &ChordDiagram) -> MPoly {
    transition_chord(d, &TransitionWeights::weight_system())
}

fn kp(a: &KpArgs, fmt: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let kind = match a.invariant {
        UmbralName::Abel => UmbralKind::Abel,
        UmbralName::Stanley => UmbralKind::Stanley,
        UmbralName::WeightedChromatic => UmbralKind::WeightedChromatic,
    };
    bound("schur weight", a.schur_weight, 8)?;
    let r = kp_check(kind, a.max_n, a.schur_weight)?;
    let v = json!({
        "max_n": a.max_n,
        "schur_weight": r.schur_weight,
        "schur_residual_zero": r.schur_residual_zero,
        "graph_weight": r.graph_weight,
        "graph_matches_schur": r.graph_matches_schur,
        "graph_residual_zero": r.graph_residual_zero,
    });
    line(out, &render_record(&v, fmt))?;
    if r.schur_residual_zero && r.graph_matches_schur && r.graph_residual_zero {
        Ok(())
    } else {
        Err(CliError::Failed("KP check failed".into()))
    }
}

fn tables_cmd(a: &TablesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if a.reference {
        let text = tables::render(&tables::reference_sections(tables::REFERENCE_JSON)?);
        write!(out, "{text}")?;
        return Ok(());
    }
    let text = tables::render(&tables::computed_sections()?);
    write!(out, "{text}")?;
    if text == GOLDEN_TABLES {
        eprintln!("tables match the golden file");
        Ok(())
    } else {
        Err(CliError::Failed("computed tables differ from the golden file".into()))
    }
}

fn acceptance_cmd(a: &AcceptanceArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let results = match a.criterion {
        Some(id) => {
            if !acceptance::CRITERIA.iter().any(|c| c.0 == id) {
                return Err(CliError::Usage(format!("no criterion {id}; valid ids are 1..=10")));
            }
            vec![acceptance::run_criterion(id)]
        }
        None => acceptance::CRITERIA
            .iter()
            .map(|c| {
                let r = acceptance::run_criterion(c.0);
                eprintln!("{r}");
                r
            })
            .collect(),
    };
    for r in &results {
        line(out, &r.to_string())?;
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.pass).map(|r| r.id).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("criteria {failed:?} failed")))
    }
}
