//! The acceptance sweep: one check per criterion, each reporting pass/fail,
//! a short detail line and the wall time it took.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::Value;

use crate::deltamatroids::{
    dm_from_graph, dm_from_ribbon, interlace_dm, skew_char_dm, stanley_dm, transition_dm, DeltaMatroid,
};
use crate::diagrams::{all_four_term_quadruples, enumerate_diagrams, realizable_as_intersection_graph, ChordDiagram};
use crate::graphs::{graph_classes, graph_classes_upto, FramedGraph};
use crate::hopf::{
    convolution_log, is_primitive, kp_check, primitive_projection, primitive_projection_basis,
    quotient_rank_4t, quotient_rank_4t_rational, umbral_average, schur_target, Family, LinComb,
    UmbralKind, DEFAULT_PRIME, SECOND_PRIME,
};
use crate::invariants::{
    chromatic, interlace, skew_characteristic, stanley, transition_chord, weighted_chromatic,
    TransitionWeights,
};
use crate::lie::*;
use crate::poly::{parse_poly, rat, MPoly, Var};
use crate::ribbon::RibbonGraph;

const TABLES: &str = include_str!("../goldens/lie_tables.json");

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<34} {} ({:.2}s / {}s) {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            self.detail
        )
    }
}

pub const CRITERIA: [(u8, &str, u64); 10] = [
    (1, "w_sl2 value tables", 10),
    (2, "w_gl / w_sl tables", 60),
    (3, "matrix oracle equivalence", 60),
    (4, "4T vanishing suites", 600),
    (5, "intersection-graph dependence", 300),
    (6, "G_m machinery", 120),
    (7, "Hopf suite", 300),
    (8, "quotient ranks", 600),
    (9, "umbral averaging and KP", 300),
    (10, "delta-matroid bridge", 120),
];

/// Run one criterion; unknown ids fail.
pub fn run_criterion(id: u8) -> CriterionResult {
    let (_, name, budget) = CRITERIA
        .iter()
        .copied()
        .find(|c| c.0 == id)
        .unwrap_or((id, "unknown", 0));
    let start = Instant::now();
    let outcome = match id {
        1 => sl2_tables(),
        2 => gl_tables(),
        3 => oracle(),
        4 => four_term_suites(),
        5 => intersection_graph_dependence(),
        6 => bipartite_machinery(),
        7 => hopf_suite(),
        8 => quotient_ranks(),
        9 => umbral_kp(),
        10 => dm_bridge(),
        _ => Err("no such criterion".to_string()),
    };
    let elapsed = start.elapsed();
    let budget = Duration::from_secs(budget);
    let (mut pass, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if pass && elapsed > budget {
        pass = false;
        detail = format!("over time budget; {detail}");
    }
    CriterionResult {
        id,
        name,
        pass,
        detail,
        elapsed,
        budget,
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_criterion(c.0)).collect()
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str) -> Result<MPoly, String> {
    parse_poly(s).map_err(|e| format!("bad golden {s:?}: {e}"))
}

fn tables() -> Value {
    serde_json::from_str(TABLES).expect("golden tables are valid JSON")
}

fn sl2_tables() -> Check {
    let expected = ["1", "c", "c^2-c", "c^3-3c^2+2c", "c^4-6c^3+13c^2-7c"];
    for (n, e) in expected.iter().enumerate() {
        let got = w_sl2(&ChordDiagram::complete(n));
        ensure(got == poly(e)?, || format!("w_sl2(K{n}) = {got}"))?;
    }
    let cf = complete_graph_cf(7);
    for n in 0..=7 {
        let w = w_sl2(&ChordDiagram::complete(n));
        ensure(cf.coeffs[n] == w, || format!("continued fraction differs at n={n}"))?;
        ensure(zakorko_iterate(n, ZakorkoTail::TimesF) == w, || {
            format!("operator T differs at n={n}")
        })?;
    }
    Ok("K_0..K_4 match; continued fraction and T^n(1) agree with CV through n=7".into())
}

fn gl_tables() -> Check {
    let t = tables();
    let mut count = 0;
    for (key, f) in [
        ("w_gl_complete", w_gl_diagram as fn(&ChordDiagram) -> MPoly),
        ("w_sl_complete", w_sl_diagram),
    ] {
        for (n, v) in t[key].as_object().ok_or("missing table")? {
            let n: usize = n.parse().map_err(|_| "bad key")?;
            let got = f(&ChordDiagram::complete(n));
            ensure(got == poly(v.as_str().ok_or("bad value")?)?, || {
                format!("{key} K{n}: {got}")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} table entries match (gl n=2..5, sl n=2..7)"))
}

const ORACLE_WEIGHTS: [&[i64]; 6] = [&[2], &[-1], &[3], &[1, 0], &[2, 1], &[3, -1]];

fn oracle() -> Check {
    let mut count = 0;
    for n in 1..=3 {
        for d in enumerate_diagrams(n, false).map_err(|e| e.to_string())? {
            let perm = d.to_permutation();
            let w = w_gl(&perm);
            for lam in ORACLE_WEIGHTS {
                // a non-scalar result is reported as an error by the oracle
                let got = matrix_oracle(&perm, lam).map_err(|e| format!("{:?} {lam:?}: {e}", d.word()))?;
                let want = evaluate_at(&w, lam);
                ensure(got == want, || format!("{:?} {lam:?}: {got} vs {want}", d.word()))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} scalar comparisons, all central"))
}

fn chord_4t(name: &str, max_n: usize, f: &(dyn Fn(&ChordDiagram) -> MPoly + Sync)) -> Result<usize, String> {
    let mut count = 0;
    for n in 2..=max_n {
        let qs = all_four_term_quadruples(n).map_err(|e| e.to_string())?;
        let bad = qs.par_iter().find_any(|q| {
            !(&(&(&f(&q[0]) - &f(&q[1])) - &f(&q[2])) + &f(&q[3])).is_zero()
        });
        if let Some(q) = bad {
            return Err(format!("{name}: nonzero 4T at {:?}", q[0].word()));
        }
        count += qs.len();
    }
    Ok(count)
}

/// Every ordered pair of distinct vertices of every graph class up to `max_n`.
pub fn graph_quadruples(max_n: usize) -> Vec<[FramedGraph; 4]> {
    let mut out = Vec::new();
    for g in graph_classes_upto(max_n) {
        for a in 0..g.n() {
            for b in 0..g.n() {
                if a != b {
                    out.push(g.four_term(a, b));
                }
            }
        }
    }
    out
}

/// DM quadruples from graph delta-matroids up to `max_n` elements.
pub fn dm_quadruples(max_n: usize) -> Vec<[DeltaMatroid; 4]> {
    let mut out = Vec::new();
    for g in graph_classes_upto(max_n) {
        let d = dm_from_graph(&g);
        for a in 0..g.n() {
            for b in 0..g.n() {
                if a != b {
                    out.push(d.four_term(a, b).expect("distinct elements"));
                }
            }
        }
    }
    out
}

fn alternating<T, F: Fn(&T) -> MPoly>(q: &[T; 4], f: &F) -> MPoly {
    &(&(&f(&q[0]) - &f(&q[1])) - &f(&q[2])) + &f(&q[3])
}

fn four_term_suites() -> Check {
    let mut parts = Vec::new();
    parts.push(format!("sl2 {}", chord_4t("w_sl2", 5, &w_sl2)?));
    parts.push(format!("gl {}", chord_4t("w_gl", 4, &w_gl_diagram)?));
    let tw = TransitionWeights::weight_system();
    parts.push(format!(
        "transition {}",
        chord_4t("transition", 4, &|d| transition_chord(d, &tw))?
    ));

    let gq = graph_quadruples(6);
    let graph_invs: [(&str, fn(&FramedGraph) -> MPoly); 5] = [
        ("chromatic", chromatic),
        ("stanley", stanley),
        ("weighted-chromatic", weighted_chromatic),
        ("interlace", interlace),
        ("skew-char", skew_characteristic),
    ];
    for (name, f) in graph_invs {
        if let Some(q) = gq.par_iter().find_any(|q| !alternating(q, &f).is_zero()) {
            return Err(format!("{name}: nonzero 4T at {:?}", q[0].edges()));
        }
    }
    parts.push(format!("graph invariants 5x{}", gq.len()));

    let dq = dm_quadruples(5);
    let dm_invs: [(&str, fn(&DeltaMatroid) -> MPoly); 4] = [
        ("interlace_dm", interlace_dm),
        ("transition_dm", transition_dm),
        ("skew_char_dm", skew_char_dm),
        ("stanley_dm", stanley_dm),
    ];
    for (name, f) in dm_invs {
        if let Some(q) = dq.par_iter().find_any(|q| !alternating(q, &f).is_zero()) {
            return Err(format!("{name}: nonzero 4T at {:?}", q[0].feasible()));
        }
    }
    parts.push(format!("delta-matroid invariants 4x{}", dq.len()));
    Ok(format!("quadruples: {}", parts.join(", ")))
}

fn intersection_graph_dependence() -> Check {
    let mut classes = 0;
    for n in 1..=6 {
        let mut by_graph: HashMap<FramedGraph, MPoly> = HashMap::new();
        for d in enumerate_diagrams(n, false).map_err(|e| e.to_string())? {
            let g = d.intersection_graph().canonical();
            let w = w_sl2(&d);
            match by_graph.get(&g) {
                Some(prev) => ensure(prev == &w, || format!("w_sl2 differs on realizations of {:?}", g.edges()))?,
                None => {
                    by_graph.insert(g, w);
                }
            }
        }
        classes += by_graph.len();
    }
    let bound = crate::diagrams::DEFAULT_REALIZABILITY_VERTICES;
    let path = realizable_as_intersection_graph(&FramedGraph::path(5), bound).map_err(|e| e.to_string())?;
    ensure(path.len() == 3, || format!("path on 5 vertices has {} witnesses", path.len()))?;
    for (name, g) in [("5-wheel", FramedGraph::wheel(5)), ("3-prism", FramedGraph::prism3())] {
        let w = realizable_as_intersection_graph(&g, bound).map_err(|e| e.to_string())?;
        ensure(w.is_empty(), || format!("{name} reported realizable"))?;
    }
    Ok(format!(
        "w_sl2 constant on {classes} realization classes (n<=6); P5 has 3 witnesses; W5, prism rejected"
    ))
}

fn bipartite_machinery() -> Check {
    let t = tables();
    for (m, terms) in t["bipartite_partial_fractions"].as_object().ok_or("missing table")? {
        let m: usize = m.parse().map_err(|_| "bad key")?;
        let got = bipartite_partial_fractions(m)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("G_{m} is not a finite combination"))?;
        let mut want = Vec::new();
        for pair in terms.as_array().ok_or("bad table")? {
            want.push((poly(pair[0].as_str().ok_or("bad")?)?, poly(pair[1].as_str().ok_or("bad")?)?));
        }
        ensure(got == want, || format!("G_{m} partial fractions differ"))?;
    }
    let gs = complete_bipartite_series(4, 4).map_err(|e| e.to_string())?;
    for (m, g) in gs.iter().enumerate() {
        for n in 0..=4 {
            ensure(g.coeffs[n] == w_sl2(&ChordDiagram::complete_bipartite(m, n)), || {
                format!("K_{{{m},{n}}} differs from CV")
            })?;
        }
    }
    ensure(c5n_series(6) == c5n_closed_form(6), || "(C5,n) forms differ".into())?;
    Ok("G_0..G_3 match; K_{m,n} agree with CV for m,n<=4; (C5,n) forms agree to order 6".into())
}

fn graph_basis(g: &FramedGraph) -> LinComb<FramedGraph> {
    LinComb::basis(g)
}

fn hopf_suite() -> Check {
    let k1 = FramedGraph::complete(1);
    let k2 = FramedGraph::complete(2);
    let k3 = FramedGraph::complete(3);
    let want2 = graph_basis(&k2).sub(&graph_basis(&k1.union(&k1)));
    ensure(primitive_projection_basis(&k2) == want2, || "π(K2)".into())?;
    let want3 = graph_basis(&k3)
        .sub(&graph_basis(&k1.union(&k2)).scale(&rat(3)))
        .add(&graph_basis(&k1.union(&k1).union(&k1)).scale(&rat(2)));
    ensure(primitive_projection_basis(&k3) == want3, || "π(K3)".into())?;

    let small = graph_classes_upto(5);
    if let Some(g) = small.par_iter().find_any(|g| {
        let p = primitive_projection_basis(*g);
        primitive_projection(&p) != p || !is_primitive(&p)
    }) {
        return Err(format!("π not an idempotent onto primitives at {:?}", g.edges()));
    }

    let six = graph_classes_upto(6);
    if let Some(g) = six.par_iter().find_any(|g| {
        let v = primitive_projection_basis(*g).evaluate(chromatic);
        let lin = chromatic(g).coeff_of(Var::C, 1).mul_monomial(&crate::poly::Monomial::var(Var::C, 1));
        v != lin
    }) {
        return Err(format!("χ∘π is not the linear part at {:?}", g.edges()));
    }
    if let Some(g) = six.par_iter().filter(|g| g.n() >= 2).find_any(|g| {
        primitive_projection_basis(*g)
            .evaluate(skew_characteristic)
            .as_constant()
            .is_none()
    }) {
        return Err(format!("skew-char∘π not constant at {:?}", g.edges()));
    }

    let t = tables();
    let egf = projection_egf(6);
    for (k, want) in t["projection_egf"].as_array().ok_or("missing table")?.iter().enumerate() {
        let n = k + 1;
        ensure(egf[k] == poly(want.as_str().ok_or("bad")?)?, || format!("w̄_sl2(K{n})"))?;
    }

    let mut checked = 0;
    let mut stated_fails = 0;
    let mut negated_fails = 0;
    let mut degree_fails = 0;
    for half in 1..=3 {
        let ds = enumerate_diagrams(2 * half, false).map_err(|e| e.to_string())?;
        let rows: Vec<(bool, bool, bool)> = ds
            .par_iter()
            .map(|d| {
                let (v, top, ln) = top_coefficient_and_log_nu(d, half);
                (
                    v.degree_in(Var::C).unwrap_or(0) <= half as i32,
                    top == ln.scale(&rat(2)),
                    top == ln.scale(&rat(-1)),
                )
            })
            .collect();
        degree_fails += rows.iter().filter(|r| !r.0).count();
        stated_fails += rows.iter().filter(|r| !r.1).count();
        negated_fails += rows.iter().filter(|r| !r.2).count();
        checked += ds.len();
    }
    let head = format!(
        "π(K2), π(K3) match; idempotent and primitive on {} graphs; χ∘π linear and skew∘π constant on {} graphs; \
         EGF list through n=6; deg w_sl2(π(D)) <= n fails on {degree_fails} of {checked} diagrams",
        small.len(),
        six.len()
    );
    if degree_fails == 0 && stated_fails == 0 {
        Ok(format!("{head}; top coefficient = 2 log ν on all"))
    } else {
        Err(format!(
            "{head}; top coefficient = 2 log ν fails on {stated_fails}, = -log ν fails on {negated_fails}"
        ))
    }
}

/// `w_sl2(π(D))`, its `c^n` coefficient and `(log ν)(g(D))` for `D` with `2n` chords.
pub fn top_coefficient_and_log_nu(d: &ChordDiagram, half: usize) -> (MPoly, MPoly, MPoly) {
    let nu = |g: &FramedGraph| MPoly::int(g.nondegeneracy() as i64);
    let v = primitive_projection_basis(d).evaluate(w_sl2);
    let top = v.coeff_of(Var::C, half as i32);
    let ln = convolution_log(nu, &d.intersection_graph());
    (v, top, ln)
}

fn quotient_ranks() -> Check {
    let mut dims = Vec::new();
    for n in 1..=6 {
        let a = quotient_rank_4t(n, Family::Diagrams, Some(DEFAULT_PRIME), false).map_err(|e| e.to_string())?;
        let b = quotient_rank_4t(n, Family::Diagrams, Some(SECOND_PRIME), false).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("n={n}: primes disagree ({a} vs {b})"))?;
        if n <= 5 {
            let r = quotient_rank_4t_rational(n, Family::Diagrams).map_err(|e| e.to_string())?;
            ensure(r == a, || format!("n={n}: rational {r} vs modular {a}"))?;
        }
        dims.push(a.to_string());
    }
    Ok(format!(
        "dims n=1..6: {} (two primes, rational for n<=5); n=9 stretch run is flag-gated and not run here",
        dims.join(", ")
    ))
}

fn umbral_kp() -> Check {
    let avg = umbral_average(UmbralKind::Abel, 5).map_err(|e| e.to_string())?;
    ensure(avg.series == schur_target(5), || "Abel average differs from Σ 2^{n(n-1)/2} s_n".into())?;
    let report = kp_check(UmbralKind::Abel, 5, 5).map_err(|e| e.to_string())?;
    ensure(report.schur_residual_zero, || "KP residual nonzero through weight 5".into())?;
    ensure(report.graph_matches_schur && report.graph_residual_zero, || {
        "graph-side KP data inconsistent".into()
    })?;
    Ok("Abel average over graphs <=5 vertices equals the Schur series; KP residual vanishes through weight 5".into())
}

fn dm_bridge() -> Check {
    let mut diagrams = 0;
    for n in 1..=5 {
        for d in enumerate_diagrams(n, false).map_err(|e| e.to_string())? {
            let a = dm_from_ribbon(&RibbonGraph::from_chord_diagram(&d)).map_err(|e| e.to_string())?;
            let b = dm_from_graph(&d.intersection_graph());
            ensure(a == b, || format!("δ(C) ≠ δ(g(C)) at {:?}", d.word()))?;
            diagrams += 1;
        }
    }
    let x = MPoly::var(Var::X);
    let plus = &x + &MPoly::one();
    let minus = &x - &MPoly::one();
    let mut graphs = 0;
    let mut stated_direction_fails = 0;
    for n in 1..=5 {
        for g in graph_classes(n) {
            let l = interlace(&g);
            let ld = interlace_dm(&dm_from_graph(&g));
            ensure(ld == l.subst1(Var::X, &plus), || format!("L_D(G) ≠ L_G(x+1) at {:?}", g.edges()))?;
            if ld != l.subst1(Var::X, &minus) {
                stated_direction_fails += 1;
            }
            graphs += 1;
        }
    }
    Ok(format!(
        "δ(C) = δ(g(C)) on {diagrams} diagrams; L_D(G)(x) = L_G(x+1) on {graphs} graphs; \
         the stated L_G(x-1) fails on {stated_direction_fails} of them"
    ))
}
