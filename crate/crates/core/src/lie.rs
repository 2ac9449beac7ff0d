//! Lie-algebra weight systems.
//!
//! * `w_sl2` evaluates the sl(2) weight system through the
//!   Chmutov-Varchenko reductions (isolated chord, leaf chord, six-term
//!   relation), memoized on canonical words.
//! * `w_gl` / `w_sl` extend the gl(N) and sl(N) weight systems to arbitrary
//!   permutations and reduce them by the neighbor-transposition recurrence.
//! * The matrix oracle builds explicit gl(1), gl(2) modules and sums the
//!   defining products directly.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use dashmap::DashMap;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::diagrams::{ChordDiagram, Permutation, Share};
use crate::poly::{rat, ratio, MPoly, Rat, TruncSeries, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("requested size {got} exceeds the bound {bound}")]
    BoundExceeded { got: usize, bound: usize },
    #[error("summed operator is not a scalar matrix")]
    NotScalar,
    #[error("oracle supports N <= 2 and modules of dimension <= 30")]
    OracleRange,
    #[error("highest weight must be dominant and have length N")]
    BadWeight,
    #[error("negative powers of N survive: {0}")]
    Laurent(String),
}

fn c() -> MPoly {
    MPoly::var(Var::C)
}

// ---------------------------------------------------------------------------
// sl(2)

/// Rule-application policy for the Chmutov-Varchenko engine.
pub trait CvChooser {
    /// Given the diagram (rotated arbitrarily), return `(rotation, i, j)` such
    /// that after rotating by `rotation` the chord with ends `i < j` has
    /// endpoints at `i+1` and `j-1` belonging to two distinct chords that
    /// both cross it.
    fn choose(&mut self, d: &ChordDiagram) -> (usize, usize, usize);
}

/// Deterministic policy: the chord side holding the fewest endpoints.
pub struct MinSide;

impl CvChooser for MinSide {
    fn choose(&mut self, d: &ChordDiagram) -> (usize, usize, usize) {
        let len = d.word().len();
        let mut best = (usize::MAX, 0, 0, 0);
        for (a, b) in d.ends() {
            let inner = b - a - 1;
            if inner < best.0 {
                best = (inner, 0, a, b);
            }
            let outer = len - 2 - inner;
            if outer < best.0 {
                // rotate so that b sits at 0; then a sits at len - b + a
                best = (outer, b, 0, a + len - b);
            }
        }
        (best.1, best.2, best.3)
    }
}

/// All admissible `(rotation, i, j)` choices for the six-term rule.
pub fn cv_admissible(d: &ChordDiagram) -> Vec<(usize, usize, usize)> {
    let len = d.word().len();
    let mut out = Vec::new();
    for (a, b) in d.ends() {
        for (rot, i, j) in [(0, a, b), (b, 0, a + len - b)] {
            let r = d.rotate(rot);
            if j < i + 3 {
                continue;
            }
            let w = r.word();
            let (va, vb) = (w[i + 1] as usize, w[j - 1] as usize);
            let v = w[i] as usize;
            if va != vb && r.crosses(v, va) && r.crosses(v, vb) {
                out.push((rot, i, j));
            }
        }
    }
    out
}

fn isolated_or_leaf(d: &ChordDiagram) -> Option<(usize, usize)> {
    let n = d.n();
    let mut leaf = None;
    for a in 0..n {
        let deg = (0..n).filter(|&b| b != a && d.crosses(a, b)).count();
        if deg == 0 {
            return Some((a, 0));
        }
        if deg == 1 && leaf.is_none() {
            leaf = Some((a, 1));
        }
    }
    leaf
}

/// The five diagrams `(D2, D3, D4, D5, D6)` of the six-term rule applied to
/// the chord with ends `i < j` (word already rotated).
pub fn six_term_terms(d: &ChordDiagram, i: usize, j: usize) -> [ChordDiagram; 5] {
    let w: Vec<usize> = d.word().iter().map(|&l| l as usize).collect();
    let a = w[i + 1];
    let b = w[j - 1];
    let swap = |w: &Vec<usize>, p: usize, q: usize| {
        let mut x = w.clone();
        x.swap(p, q);
        ChordDiagram::new(x).expect("swap keeps the word valid")
    };
    let d2 = swap(&w, i, i + 1);
    let d3 = swap(&w, j - 1, j);
    let d4 = {
        let mut x = w.clone();
        x.swap(i, i + 1);
        x.swap(j - 1, j);
        ChordDiagram::new(x).unwrap()
    };
    let a_far = (0..w.len()).find(|&p| p != i + 1 && w[p] == a).unwrap();
    let b_far = (0..w.len()).find(|&p| p != j - 1 && w[p] == b).unwrap();
    let n = d.n();
    let (x, y) = (n, n + 1);
    let rebuild = |pairs: [(usize, usize); 2]| {
        let mut x2 = w.clone();
        for (k, (p, q)) in pairs.iter().enumerate() {
            let lab = if k == 0 { x } else { y };
            x2[*p] = lab;
            x2[*q] = lab;
        }
        let word: Vec<usize> = x2
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != i && p != j)
            .map(|(_, &l)| l)
            .collect();
        ChordDiagram::new(word).expect("rebuilt word is valid")
    };
    let d5 = rebuild([(i + 1, j - 1), (a_far, b_far)]);
    let d6 = rebuild([(i + 1, b_far), (j - 1, a_far)]);
    [d2, d3, d4, d5, d6]
}

/// Evaluate with a given policy; `memo` is keyed on canonical forms.
pub fn w_sl2_with<C: CvChooser>(
    d: &ChordDiagram,
    chooser: &mut C,
    memo: &mut BTreeMap<ChordDiagram, MPoly>,
) -> MPoly {
    let key = d.canonical();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let val = if key.n() == 0 {
        MPoly::one()
    } else if let Some((a, deg)) = isolated_or_leaf(&key) {
        let f = if deg == 0 { c() } else { &c() - &MPoly::one() };
        &f * &w_sl2_with(&key.remove_chord(a), chooser, memo)
    } else {
        let (rot, i, j) = chooser.choose(&key);
        let r = key.rotate(rot);
        let [d2, d3, d4, d5, d6] = six_term_terms(&r, i, j);
        let mut acc = w_sl2_with(&d2, chooser, memo);
        acc += &w_sl2_with(&d3, chooser, memo);
        acc -= &w_sl2_with(&d4, chooser, memo);
        acc += &w_sl2_with(&d5, chooser, memo);
        acc -= &w_sl2_with(&d6, chooser, memo);
        acc
    };
    memo.insert(key, val.clone());
    val
}

/// The sl(2) weight system as a polynomial in the Casimir `c`.
pub fn w_sl2(d: &ChordDiagram) -> MPoly {
    static MEMO: OnceLock<DashMap<ChordDiagram, MPoly>> = OnceLock::new();
    let memo = MEMO.get_or_init(DashMap::new);
    let key = d.canonical();
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let val = if key.n() == 0 {
        MPoly::one()
    } else if let Some((a, deg)) = isolated_or_leaf(&key) {
        let f = if deg == 0 { c() } else { &c() - &MPoly::one() };
        &f * &w_sl2(&key.remove_chord(a))
    } else {
        let (rot, i, j) = MinSide.choose(&key);
        let r = key.rotate(rot);
        let [d2, d3, d4, d5, d6] = six_term_terms(&r, i, j);
        &(&(&(&w_sl2(&d2) + &w_sl2(&d3)) - &w_sl2(&d4)) + &w_sl2(&d5)) - &w_sl2(&d6)
    };
    memo.insert(key, val.clone());
    val
}

/// Which reading of the inhomogeneous term of the operator `T` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZakorkoTail {
    /// `+ (x-c)^2 f`
    TimesF,
    /// `+ (x-c)^2`
    Constant,
}

/// `T^n(1)` evaluated at `x = c`.
pub fn zakorko_iterate(n: usize, tail: ZakorkoTail) -> MPoly {
    let x = MPoly::var(Var::X);
    // images of the basis x^k, filled lazily
    let mut images: Vec<MPoly> = vec![x.clone(), &x.pow(2) - &x];
    let two_x_m1 = &x.scale(&rat(2)) - &MPoly::one();
    let quad = &(&c().scale(&rat(2)) - &x) - &x.pow(2);
    let xc2 = (&x - &c()).pow(2);
    let image = |k: usize, images: &mut Vec<MPoly>| -> MPoly {
        while images.len() <= k {
            let m = images.len();
            let tail_term = match tail {
                ZakorkoTail::TimesF => &xc2 * &x.pow((m - 2) as u32),
                ZakorkoTail::Constant => xc2.clone(),
            };
            let v = &(&(&two_x_m1 * &images[m - 1]) + &(&quad * &images[m - 2])) + &tail_term;
            images.push(v);
        }
        images[k].clone()
    };
    let mut cur = MPoly::one();
    for _ in 0..n {
        let mut next = MPoly::zero();
        for (k, coef) in cur.split_by(Var::X).into_iter().enumerate() {
            if !coef.is_zero() {
                next += &(&coef * &image(k, &mut images));
            }
        }
        cur = next;
    }
    cur.subst1(Var::X, &c())
}

/// Continued fraction for `Σ w_sl2(K_n) t^n`.
pub fn complete_graph_cf(order: usize) -> TruncSeries {
    crate::poly::continued_fraction_series(
        |m| {
            let m = m as i64;
            &MPoly::int(m * (m + 1)) - &c()
        },
        |m| {
            let m = m as i64;
            &c().scale(&rat(m * m)) - &MPoly::constant(ratio(m * m * (m * m - 1), 4))
        },
        order,
    )
}

/// `n! [t^n] log Σ w_sl2(K_n) t^n/n!` for `n = 1..=order`, the values of
/// `w_sl2` on the primitive projections of complete graphs.
pub fn projection_egf(order: usize) -> Vec<MPoly> {
    let mut fact = rat(1);
    let mut coeffs = vec![MPoly::one()];
    for n in 1..=order {
        fact *= rat(n as i64);
        coeffs.push(w_sl2(&ChordDiagram::complete(n)).scale(&(rat(1) / &fact)));
    }
    let log = TruncSeries::from_coeffs(Var::T, coeffs, order)
        .log()
        .expect("unit constant term");
    let mut fact = rat(1);
    (1..=order)
        .map(|n| {
            fact *= rat(n as i64);
            log.coeffs[n].scale(&fact)
        })
        .collect()
}

/// Continued fraction whose coefficients are the chromatic values `c(c-1)…`.
pub fn chromatic_cf(order: usize) -> TruncSeries {
    crate::poly::continued_fraction_series(
        |m| &MPoly::int(2 * m as i64) - &c(),
        |m| {
            let m = m as i64;
            &c().scale(&rat(m)) - &MPoly::int(m * (m - 1))
        },
        order,
    )
}

pub const MAX_BIPARTITE_M: usize = 6;

/// `s_{i,m}`: coefficients of `x^i t^m` in
/// `1/(1-xt) · (c + (c²t² - xt)/((1-xt)² + (1+xt)t - 2ct²))`.
pub fn share_coefficients(max_m: usize) -> Vec<Vec<MPoly>> {
    let x = MPoly::var(Var::X);
    let t = MPoly::var(Var::T);
    let xt = &x * &t;
    let one = MPoly::one();
    let den = &(&(&one - &xt).pow(2) + &(&(&one + &xt) * &t)) - &(&c() * &t.pow(2)).scale(&rat(2));
    let inner_num = &(&c().pow(2) * &t.pow(2)) - &xt;
    let inner = crate::poly::rational_to_series(&inner_num, &den, Var::T, max_m).unwrap();
    let geo = crate::poly::rational_to_series(&one, &(&one - &xt), Var::T, max_m).unwrap();
    let mut bracket = inner;
    bracket.coeffs[0] += &c();
    let s = geo.mul(&bracket);
    (0..=max_m)
        .map(|m| {
            let mut row = s.coeffs[m].split_by(Var::X);
            row.resize(m + 1, MPoly::zero());
            row
        })
        .collect()
}

/// Generating functions `G_m = Σ_n w_sl2(K_{m,n}) t^n` for `m = 0..=max_m`.
pub fn complete_bipartite_series(max_m: usize, order: usize) -> Result<Vec<TruncSeries>, LieError> {
    if max_m > MAX_BIPARTITE_M {
        return Err(LieError::BoundExceeded {
            got: max_m,
            bound: MAX_BIPARTITE_M,
        });
    }
    let s = share_coefficients(max_m);
    let mut gs: Vec<TruncSeries> = Vec::new();
    for m in 0..=max_m {
        let mut num = TruncSeries::zero(Var::T, order);
        num.coeffs[0] = c().pow(m as u32);
        for (i, g) in gs.iter().enumerate() {
            num = num.add(&g.scale_poly(&s[m][i]).shift(1));
        }
        let mut den = TruncSeries::one(Var::T, order);
        if order >= 1 {
            den.coeffs[1] = -&s[m][m];
        }
        gs.push(num.mul(&den.inverse().expect("unit constant term")));
    }
    Ok(gs)
}

/// Ratio `c - i(i+1)/2` of the `i`-th geometric progression.
pub fn bipartite_ratio(i: usize) -> MPoly {
    &c() - &MPoly::constant(ratio((i * (i + 1)) as i64, 2))
}

/// Exact partial fractions of `G_m`: pairs `(A_i, r_i)` with
/// `G_m = Σ A_i / (1 - r_i t)` for `i = 0..=m`, or `None` if `G_m` is not such
/// a combination.
pub fn bipartite_partial_fractions(m: usize) -> Result<Option<Vec<(MPoly, MPoly)>>, LieError> {
    let order = 2 * m + 4;
    let g = complete_bipartite_series(m, order)?.pop().unwrap();
    Ok(partial_fractions(
        &g,
        &(0..=m).map(bipartite_ratio).collect::<Vec<_>>(),
    ))
}

/// Decompose a series over the given distinct ratios whose pairwise
/// differences are scalars. Returns `None` if the series is not such a
/// combination to the available order.
pub fn partial_fractions(g: &TruncSeries, ratios: &[MPoly]) -> Option<Vec<(MPoly, MPoly)>> {
    let k = ratios.len();
    let order = g.order();
    let mut den = TruncSeries::one(Var::T, order);
    for r in ratios {
        let mut f = TruncSeries::one(Var::T, order);
        if order >= 1 {
            f.coeffs[1] = -r;
        }
        den = den.mul(&f);
    }
    let p = g.mul(&den);
    if p.coeffs.iter().skip(k).any(|c| !c.is_zero()) {
        return None;
    }
    let deg = k - 1;
    let mut out = Vec::new();
    for (i, ri) in ratios.iter().enumerate() {
        let mut num = MPoly::zero();
        for (j, pj) in p.coeffs.iter().take(k).enumerate() {
            num += &(pj * &ri.pow((deg - j) as u32));
        }
        let mut d = Rat::one();
        for (j, rj) in ratios.iter().enumerate() {
            if j != i {
                d *= (ri - rj).as_constant()?;
            }
        }
        out.push((num.scale(&d.recip()), ri.clone()));
    }
    Some(out)
}

/// The combination of `G_0..G_5` that produces the series of the 5-cycle
/// share joined with `n` parallel chords.
pub fn c5n_series(order: usize) -> TruncSeries {
    let g = complete_bipartite_series(5, order).unwrap();
    let p = |s: &str| crate::poly::parse_poly(s).unwrap();
    let coeffs = [
        p("(c+5)c^2"),
        p("-2(c-1)(7c+3)"),
        p("5c^2-6c-26"),
        p("29"),
        p("-10"),
        p("1"),
    ];
    let mut acc = TruncSeries::zero(Var::T, order);
    for (gi, k) in g.iter().zip(coeffs.iter()) {
        acc = acc.add(&gi.scale_poly(k));
    }
    acc
}

/// The closed form of the same series as three geometric progressions.
pub fn c5n_closed_form(order: usize) -> TruncSeries {
    let p = |s: &str| crate::poly::parse_poly(s).unwrap();
    let terms = [
        (p("(30c^4-60c^3-111c^2+64c+36)c/70"), p("c-1")),
        (p("(c-2)(5c^2-15c+9)(4c-3)c/45"), p("c-6")),
        (p("(c-6)(c-2)(4c-15)(4c-3)c/126"), p("c-15")),
    ];
    geometric_sum(&terms, order)
}

pub fn geometric_sum(terms: &[(MPoly, MPoly)], order: usize) -> TruncSeries {
    let mut acc = TruncSeries::zero(Var::T, order);
    for (a, r) in terms {
        let mut den = TruncSeries::one(Var::T, order);
        if order >= 1 {
            den.coeffs[1] = -r;
        }
        acc = acc.add(&den.inverse().unwrap().scale_poly(a));
    }
    acc
}

/// Signed shares `(ε_i, S_i)` with `(C_5, n) = Σ ε_i g((S_i, n))` in the graph
/// 4T quotient, found from one 4T relation on the edge `01` of the 5-cycle.
pub fn c5n_four_term_shares() -> Option<Vec<(i64, Share)>> {
    use crate::diagrams::enumerate_diagrams;
    use crate::graphs::FramedGraph;
    const CHECK: usize = 3;
    let targets: Vec<[FramedGraph; 4]> = (0..=CHECK)
        .map(|k| FramedGraph::cycle(5).cone(k).four_term(0, 1))
        .collect();
    let diagrams = enumerate_diagrams(5, false).ok()?;
    let mut out = Vec::new();
    for (slot, sign) in [(1usize, 1i64), (2, 1), (3, -1)] {
        let want: Vec<FramedGraph> = targets.iter().map(|t| t[slot].canonical()).collect();
        let found = diagrams.iter().find_map(|d| {
            (0..10).find_map(|r| {
                let w = d.rotate(r).word().to_vec();
                (1..10).find_map(|k| {
                    let s = Share::new(w[..k].to_vec(), w[k..].to_vec()).ok()?;
                    (0..=CHECK)
                        .all(|n| s.with_parallel(n).intersection_graph().canonical() == want[n])
                        .then_some(s)
                })
            })
        })?;
        out.push((sign, found));
    }
    Some(out)
}

/// `n ↦ w_sl2((S, n))` for `n = 0..=max_n`.
pub fn share_sequence(s: &Share, max_n: usize) -> Vec<MPoly> {
    (0..=max_n).map(|n| w_sl2(&s.with_parallel(n))).collect()
}

// ---------------------------------------------------------------------------
// gl(N) and sl(N) on permutations

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algebra {
    Gl,
    Sl,
}

impl Algebra {
    fn casimir(self, k: usize) -> MPoly {
        match self {
            Algebra::Gl => MPoly::var(Var::Cas(k as u16)),
            Algebra::Sl if k == 1 => MPoly::zero(),
            Algebra::Sl => MPoly::var(Var::CasT(k as u16)),
        }
    }
}

fn min_rotation(s: &[u8]) -> Vec<u8> {
    let m = s.len();
    let mut best: Option<Vec<u8>> = None;
    let mut buf = vec![0u8; m];
    for k in 0..m {
        for i in 0..m {
            buf[(i + k) % m] = ((s[i] as usize + k) % m) as u8;
        }
        if best.as_ref().is_none_or(|b| buf < *b) {
            best = Some(buf.clone());
        }
    }
    best.unwrap_or_default()
}

/// Merged-factor term of the commutator with the first index kept.
fn term_first(s: &[u8], k: usize) -> (Vec<u8>, bool) {
    let m = s.len();
    let mut sec: Vec<u8> = s.to_vec();
    sec[k] = s[k + 1];
    let free = s[k] as usize == k + 1;
    let mut out = Vec::with_capacity(m - 1);
    for (p, &x) in sec.iter().enumerate() {
        if p == k + 1 {
            continue;
        }
        let mut x = x;
        if !free && x as usize == k + 1 {
            x = s[k];
        }
        out.push(if x as usize > k + 1 { x - 1 } else { x });
    }
    (out, free)
}

/// Merged-factor term of the commutator with the second index kept.
fn term_second(s: &[u8], k: usize) -> (Vec<u8>, bool) {
    let m = s.len();
    let mut sec: Vec<u8> = s.to_vec();
    sec[k + 1] = s[k];
    let free = s[k + 1] as usize == k;
    let mut out = Vec::with_capacity(m - 1);
    for (p, &x) in sec.iter().enumerate() {
        if p == k {
            continue;
        }
        let mut x = x;
        if !free && x as usize == k {
            x = s[k + 1];
        }
        out.push(if x as usize > k { x - 1 } else { x });
    }
    (out, free)
}

fn conj_adjacent(s: &mut [u8], k: usize) {
    let t = |x: u8| -> u8 {
        if x as usize == k {
            (k + 1) as u8
        } else if x as usize == k + 1 {
            k as u8
        } else {
            x
        }
    };
    s.swap(k, k + 1);
    for x in s.iter_mut() {
        *x = t(*x);
    }
}

fn remove_fixed(s: &[u8], p: usize) -> Vec<u8> {
    s.iter()
        .enumerate()
        .filter(|&(q, _)| q != p)
        .map(|(_, &x)| if x as usize > p { x - 1 } else { x })
        .collect()
}

fn perm_value(alg: Algebra, s: &[u8], memo: &DashMap<(Algebra, Vec<u8>), MPoly>) -> MPoly {
    let m = s.len();
    if m == 0 {
        return MPoly::one();
    }
    let key = (alg, min_rotation(s));
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let s = key.1.clone();
    let val = if let Some(p) = (0..m).find(|&p| s[p] as usize == p) {
        let c1 = alg.casimir(1);
        if c1.is_zero() {
            MPoly::zero()
        } else {
            &c1 * &perm_value(alg, &remove_fixed(&s, p), memo)
        }
    } else {
        let n_var = MPoly::var(Var::N);
        let mut cur = s.clone();
        let mut acc = MPoly::zero();
        let mut q = 1;
        while cur[q - 1] != 0 {
            let mut p = cur[q - 1] as usize;
            while p > q {
                let k = p - 1;
                let (a, fa) = term_first(&cur, k);
                let (b, fb) = term_second(&cur, k);
                let va = perm_value(alg, &a, memo);
                let vb = perm_value(alg, &b, memo);
                acc += &(if fa { &n_var * &va } else { va });
                acc -= &(if fb { &n_var * &vb } else { vb });
                conj_adjacent(&mut cur, k);
                p -= 1;
            }
            q += 1;
        }
        let len = q;
        let rest: Vec<u8> = cur[len..].iter().map(|&x| x - len as u8).collect();
        acc += &(&alg.casimir(len) * &perm_value(alg, &rest, memo));
        acc
    };
    memo.insert(key, val.clone());
    val
}

fn perm_memo() -> &'static DashMap<(Algebra, Vec<u8>), MPoly> {
    static MEMO: OnceLock<DashMap<(Algebra, Vec<u8>), MPoly>> = OnceLock::new();
    MEMO.get_or_init(DashMap::new)
}

pub fn w_perm(alg: Algebra, p: &Permutation) -> MPoly {
    let s: Vec<u8> = p.images.iter().map(|&x| x as u8).collect();
    perm_value(alg, &s, perm_memo())
}

/// Universal gl weight system, a polynomial in `N, C_1, C_2, …`.
pub fn w_gl(p: &Permutation) -> MPoly {
    w_perm(Algebra::Gl, p)
}

/// Universal sl weight system, a polynomial in `N, C̃_2, C̃_3, …`.
pub fn w_sl(p: &Permutation) -> MPoly {
    w_perm(Algebra::Sl, p)
}

pub fn w_gl_diagram(d: &ChordDiagram) -> MPoly {
    w_gl(&d.to_permutation())
}

pub fn w_sl_diagram(d: &ChordDiagram) -> MPoly {
    w_sl(&d.to_permutation())
}

/// `C̃_k` expressed through `C_j`, `C_1/N` (Laurent in `N`), with `C_0 = N`.
pub fn projected_casimir(k: usize) -> MPoly {
    let n = MPoly::var(Var::N);
    let c1_over_n = MPoly::var(Var::Cas(1)).shift_var(Var::N, -1);
    let mut acc = MPoly::zero();
    let mut binom = Rat::one();
    for i in 0..=k {
        let ck = if k - i == 0 {
            n.clone()
        } else {
            MPoly::var(Var::Cas((k - i) as u16))
        };
        let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
        acc += &(&ck * &c1_over_n.pow(i as u32)).scale(&(&binom * &sign));
        binom = binom * rat((k - i) as i64) / rat(i as i64 + 1);
    }
    acc
}

/// Replace every `C̃_k` by its expression through the gl Casimirs.
pub fn sl_to_gl_generators(p: &MPoly) -> MPoly {
    let mut map = BTreeMap::new();
    for v in p.variables() {
        if let Var::CasT(k) = v {
            map.insert(v, projected_casimir(k as usize));
        }
    }
    p.substitute(&map)
}

/// `w_gl(C) = Σ_{I⊔J} (C_1²/N)^{|I|} w_sl(C|_J)` with the projected Casimirs
/// rewritten in gl generators. Fails if negative powers of `N` remain.
pub fn gl_from_sl(d: &ChordDiagram) -> Result<MPoly, LieError> {
    let n = d.n();
    let q = MPoly::var(Var::Cas(1)).pow(2).shift_var(Var::N, -1);
    let mut acc = MPoly::zero();
    for mask in 0u32..(1u32 << n) {
        let j: Vec<usize> = (0..n).filter(|&k| (mask >> k) & 1 == 1).collect();
        let sub = d.restrict(&j);
        let term = &q.pow((n - j.len()) as u32) * &w_sl_diagram(&sub);
        acc += &term;
    }
    let out = sl_to_gl_generators(&acc);
    if out.has_negative_exponents() {
        return Err(LieError::Laurent(out.pretty()));
    }
    Ok(out)
}

/// Eigenvalues `φ(C_k)`, `k = 1..=max_k`, on the irreducible gl(N)-module with
/// highest weight `lambda`.
pub fn casimir_eigenvalues(lambda: &[i64], max_k: usize) -> Vec<Rat> {
    let n = lambda.len();
    let order = max_k + 1;
    let mut prod = TruncSeries::one(Var::U, order);
    for (i, &l) in lambda.iter().enumerate() {
        let x = rat(l + n as i64 - (i as i64 + 1));
        let num = crate::poly::parse_poly("1").unwrap()
            - MPoly::var(Var::U).scale(&(&x + &Rat::one()));
        let den = &MPoly::one() - &MPoly::var(Var::U).scale(&x);
        prod = prod.mul(&crate::poly::rational_to_series(&num, &den, Var::U, order).unwrap());
    }
    (1..=max_k)
        .map(|k| -prod.coeffs[k + 1].constant_term())
        .collect()
}

/// Substitute numeric `N` and Casimir eigenvalues into a universal value.
pub fn evaluate_at(p: &MPoly, lambda: &[i64]) -> Rat {
    let max_k = p
        .variables()
        .iter()
        .filter_map(|v| match v {
            Var::Cas(k) => Some(*k as usize),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let ev = casimir_eigenvalues(lambda, max_k.max(1));
    let mut vals = BTreeMap::new();
    vals.insert(Var::N, rat(lambda.len() as i64));
    for (k, e) in ev.into_iter().enumerate() {
        vals.insert(Var::Cas(k as u16 + 1), e);
    }
    p.eval(&vals).expect("only N and C_k occur")
}

type Mat = Vec<Vec<Rat>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![Rat::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Matrices of `E_ab` on the irreducible module of highest weight `lambda`
/// (`N = 1` or `2`).
fn module_matrices(lambda: &[i64]) -> Result<Vec<Vec<Mat>>, LieError> {
    match lambda.len() {
        1 => Ok(vec![vec![vec![vec![rat(lambda[0])]]]]),
        2 => {
            if lambda[0] < lambda[1] {
                return Err(LieError::BadWeight);
            }
            let d = (lambda[0] - lambda[1]) as usize;
            if d + 1 > 30 {
                return Err(LieError::OracleRange);
            }
            let shift = lambda[1];
            // basis vector j is e1^{d-j} e2^{j}
            let dim = d + 1;
            let mut e = vec![vec![vec![vec![Rat::zero(); dim]; dim]; 2]; 2];
            for j in 0..dim {
                let (p1, p2) = ((d - j) as i64, j as i64);
                // E_11, E_22 count exponents
                e[0][0][j][j] = rat(p1 + shift);
                e[1][1][j][j] = rat(p2 + shift);
                // E_12 replaces one e2 by e1: j -> j-1 with factor p2
                if j >= 1 {
                    e[0][1][j - 1][j] = rat(p2);
                }
                // E_21 replaces one e1 by e2: j -> j+1 with factor p1
                if j + 1 < dim {
                    e[1][0][j + 1][j] = rat(p1);
                }
            }
            Ok(e)
        }
        _ => Err(LieError::OracleRange),
    }
}

/// `Σ_{i_1..i_m} E_{i_1 i_σ(1)} ⋯ E_{i_m i_σ(m)}` on the module, which must be a
/// scalar; returns the scalar.
pub fn matrix_oracle(p: &Permutation, lambda: &[i64]) -> Result<Rat, LieError> {
    let n = lambda.len();
    let e = module_matrices(lambda)?;
    let dim = e[0][0].len();
    let m = p.m();
    if m > 8 {
        return Err(LieError::OracleRange);
    }
    let ident: Mat = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    let mut total = vec![vec![Rat::zero(); dim]; dim];
    let mut idx = vec![0usize; m];
    loop {
        let mut prod = ident.clone();
        for k in 0..m {
            prod = mat_mul(&prod, &e[idx[k]][idx[p.images[k]]]);
        }
        for i in 0..dim {
            for j in 0..dim {
                total[i][j] += &prod[i][j];
            }
        }
        let mut k = 0;
        while k < m {
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    let s = total[0][0].clone();
    for i in 0..dim {
        for j in 0..dim {
            let want = if i == j { s.clone() } else { Rat::zero() };
            if total[i][j] != want {
                return Err(LieError::NotScalar);
            }
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly as p;

    #[test]
    fn sl2_small() {
        assert_eq!(w_sl2(&ChordDiagram::isolated(3)), p("c^3").unwrap());
        assert_eq!(w_sl2(&ChordDiagram::complete(2)), p("c^2-c").unwrap());
        assert_eq!(w_sl2(&ChordDiagram::complete(3)), p("c(c-1)(c-2)").unwrap());
        assert_eq!(
            w_sl2(&ChordDiagram::complete(4)),
            p("c^4-6c^3+13c^2-7c").unwrap()
        );
    }

    #[test]
    fn gl_k2() {
        let k2 = ChordDiagram::complete(2);
        assert_eq!(w_gl_diagram(&k2), p("C_1^2+C_2^2-N C_2").unwrap());
        assert_eq!(w_sl_diagram(&k2), p("Ct_2^2-Ct_2 N").unwrap());
        for m in 1..6 {
            assert_eq!(
                w_gl(&Permutation::long_cycle(m)),
                MPoly::var(Var::Cas(m as u16))
            );
        }
    }

    #[test]
    fn eigenvalues() {
        assert_eq!(casimir_eigenvalues(&[3], 3), vec![rat(3), rat(9), rat(27)]);
        assert_eq!(casimir_eigenvalues(&[1, 0], 2), vec![rat(1), rat(2)]);
        assert_eq!(casimir_eigenvalues(&[0, 0], 1), vec![rat(0)]);
    }

    #[test]
    fn oracle_gl1_k2() {
        let k2 = ChordDiagram::complete(2).to_permutation();
        assert_eq!(matrix_oracle(&k2, &[5]).unwrap(), rat(625));
        assert_eq!(matrix_oracle(&k2, &[0, 0]).unwrap(), rat(0));
    }
}
