//! Graded Hopf algebras spanned by graphs, chord diagrams and delta-matroids:
//! product, coproduct, projection to primitives, convolution logarithm,
//! 4T quotient ranks and umbral averaging.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::io::Write;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::diagrams::{all_four_term_quadruples, ChordDiagram, DiagramError};
use crate::graphs::{bits, enumerate_graphs, graph_classes, FramedGraph, GraphError};
use crate::invariants::{abel, stanley, stanley_in_q, weighted_chromatic, StanleySign};
use crate::poly::{rat, schur_one_part, MPoly, PolyError, Rat, TruncSeries, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HopfError {
    #[error("requested size {got} exceeds the bound {bound}")]
    BoundExceeded { got: usize, bound: usize },
    #[error("scaling constant i_{0} vanishes")]
    ZeroScalingConstant(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A basis family of a graded connected Hopf algebra whose coproduct splits
/// the underlying set.
pub trait HopfBasis: Clone + Ord + Debug + Send + Sync {
    fn grade(&self) -> usize;
    fn canonical_form(&self) -> Self;
    fn unit() -> Self;
    fn disjoint_product(&self, other: &Self) -> Self;
    /// Substructure on the elements selected by `mask`.
    fn restrict_mask(&self, mask: u32) -> Self;
}

impl HopfBasis for FramedGraph {
    fn grade(&self) -> usize {
        self.n()
    }
    fn canonical_form(&self) -> Self {
        self.canonical()
    }
    fn unit() -> Self {
        FramedGraph::edgeless(0)
    }
    fn disjoint_product(&self, other: &Self) -> Self {
        self.union(other)
    }
    fn restrict_mask(&self, mask: u32) -> Self {
        self.induced(mask)
    }
}

impl HopfBasis for ChordDiagram {
    fn grade(&self) -> usize {
        self.n()
    }
    fn canonical_form(&self) -> Self {
        self.canonical()
    }
    fn unit() -> Self {
        ChordDiagram::empty()
    }
    fn disjoint_product(&self, other: &Self) -> Self {
        self.concat(other)
    }
    fn restrict_mask(&self, mask: u32) -> Self {
        let chords: Vec<usize> = bits(mask).collect();
        self.restrict(&chords)
    }
}

/// Finite rational combination of canonical basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<B: HopfBasis> {
    terms: BTreeMap<B, Rat>,
}

impl<B: HopfBasis> Default for LinComb<B> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: HopfBasis> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(&B::unit())
    }

    pub fn basis(b: &B) -> Self {
        let mut out = Self::zero();
        out.add_term(b, Rat::one());
        out
    }

    pub fn from_terms<'a, I: IntoIterator<Item = (&'a B, Rat)>>(it: I) -> Self
    where
        B: 'a,
    {
        let mut out = Self::zero();
        for (b, r) in it {
            out.add_term(b, r);
        }
        out
    }

    pub fn add_term(&mut self, b: &B, r: Rat) {
        if r.is_zero() {
            return;
        }
        let key = b.canonical_form();
        let e = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *e += r;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Rat {
        self.terms
            .get(&b.canonical_form())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (b, r) in &o.terms {
            out.add_term(b, r.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        LinComb {
            terms: self.terms.iter().map(|(b, c)| (b.clone(), c * r)).collect(),
        }
    }

    /// Bilinear extension of the disjoint product.
    pub fn product(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(&a.disjoint_product(b), x * y);
            }
        }
        out
    }

    /// Homogeneous component of the given grade.
    pub fn homogeneous(&self, k: usize) -> Self {
        LinComb {
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.grade() == k)
                .map(|(b, r)| (b.clone(), r.clone()))
                .collect(),
        }
    }

    /// Evaluate a linear functional given on basis elements.
    pub fn evaluate<F: Fn(&B) -> MPoly>(&self, f: F) -> MPoly {
        let mut acc = MPoly::zero();
        for (b, r) in &self.terms {
            acc += &f(b).scale(r);
        }
        acc
    }
}

/// Element of the tensor square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLinComb<B: HopfBasis> {
    terms: BTreeMap<(B, B), Rat>,
}

impl<B: HopfBasis> Default for TensorLinComb<B> {
    fn default() -> Self {
        TensorLinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<B: HopfBasis> TensorLinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: &B, b: &B, r: Rat) {
        if r.is_zero() {
            return;
        }
        let key = (a.canonical_form(), b.canonical_form());
        let e = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *e += r;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(B, B), &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &B, b: &B) -> Rat {
        self.terms
            .get(&(a.canonical_form(), b.canonical_form()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// `(m ⊗ m)` applied to the shuffled product of two tensors.
    pub fn product(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for ((a1, a2), x) in &self.terms {
            for ((b1, b2), y) in &o.terms {
                out.add_term(&a1.disjoint_product(b1), &a2.disjoint_product(b2), x * y);
            }
        }
        out
    }

    /// `1 ⊗ a + a ⊗ 1`.
    pub fn primitive_image(a: &LinComb<B>) -> Self {
        let mut out = Self::zero();
        for (b, r) in a.terms() {
            out.add_term(&B::unit(), b, r.clone());
            out.add_term(b, &B::unit(), r.clone());
        }
        out
    }
}

/// `μ(b) = Σ_{U ⊔ W} b|_U ⊗ b|_W` over ordered splittings.
pub fn coproduct_basis<B: HopfBasis>(b: &B) -> TensorLinComb<B> {
    let n = b.grade();
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut out = TensorLinComb::zero();
    for mask in 0..=full {
        out.add_term(&b.restrict_mask(mask), &b.restrict_mask(full & !mask), Rat::one());
    }
    out
}

pub fn coproduct<B: HopfBasis>(a: &LinComb<B>) -> TensorLinComb<B> {
    let mut out = TensorLinComb::zero();
    for (b, r) in a.terms() {
        for ((x, y), s) in coproduct_basis(b).terms() {
            out.add_term(x, y, r * s);
        }
    }
    out
}

pub fn is_primitive<B: HopfBasis>(a: &LinComb<B>) -> bool {
    coproduct(a) == TensorLinComb::primitive_image(a)
}

/// Set partitions of `{0..n-1}` as lists of block masks.
pub fn set_partitions(n: usize) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for k in 0..blocks.len() {
            blocks[k] |= 1 << i;
            rec(i + 1, n, blocks, out);
            blocks[k] &= !(1 << i);
        }
        blocks.push(1 << i);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, n, &mut Vec::new(), &mut out);
    out
}

fn factorial(k: usize) -> Rat {
    (1..=k as i64).fold(Rat::one(), |a, x| a * rat(x))
}

/// `π(b) = Σ_{unordered partitions} (-1)^{k-1}(k-1)! ∏ b|_{U_i}`.
pub fn primitive_projection_basis<B: HopfBasis>(b: &B) -> LinComb<B> {
    let n = b.grade();
    if n == 0 {
        return LinComb::zero();
    }
    let mut out = LinComb::zero();
    for part in set_partitions(n) {
        let k = part.len();
        let mut c = factorial(k - 1);
        if k % 2 == 0 {
            c = -c;
        }
        let prod = part
            .iter()
            .fold(B::unit(), |acc, &m| acc.disjoint_product(&b.restrict_mask(m)));
        out.add_term(&prod, c);
    }
    out
}

pub fn primitive_projection<B: HopfBasis>(a: &LinComb<B>) -> LinComb<B> {
    let mut out = LinComb::zero();
    for (b, r) in a.terms() {
        out = out.add(&primitive_projection_basis(b).scale(r));
    }
    out
}

/// `(log f)(b) = Σ_k (-1)^{k-1}/k (f - ε)^{*k}(b)`, with convolution powers
/// computed over sub-masks of `b`. `f` must be multiplicative with `f(1) = 1`.
pub fn convolution_log<B: HopfBasis, F: Fn(&B) -> MPoly>(f: F, b: &B) -> MPoly {
    let n = b.grade();
    if n == 0 {
        return MPoly::zero();
    }
    let size = 1usize << n;
    let vals: Vec<MPoly> = (0..size)
        .map(|m| {
            if m == 0 {
                MPoly::zero()
            } else {
                f(&b.restrict_mask(m as u32))
            }
        })
        .collect();
    let full = size - 1;
    // power[k][mask] = (f - ε)^{*k}(b|mask)
    let mut power = vals.clone();
    let mut acc = power[full].clone();
    for k in 2..=n {
        let mut next = vec![MPoly::zero(); size];
        for (mask, slot) in next.iter_mut().enumerate().skip(1) {
            let mut sub = mask;
            while sub > 0 {
                let rest = mask & !sub;
                if rest != 0 && !vals[sub].is_zero() && !power[rest].is_zero() {
                    *slot += &(&vals[sub] * &power[rest]);
                }
                sub = (sub - 1) & mask;
            }
        }
        power = next;
        let sign = if k % 2 == 0 { -1 } else { 1 };
        acc += &power[full].scale(&(rat(sign) / rat(k as i64)));
    }
    acc
}

/// `(log Id)(b)` in the algebra itself, via the same convolution powers.
pub fn log_identity<B: HopfBasis>(b: &B) -> LinComb<B> {
    let n = b.grade();
    if n == 0 {
        return LinComb::zero();
    }
    let size = 1usize << n;
    let vals: Vec<LinComb<B>> = (0..size)
        .map(|m| {
            if m == 0 {
                LinComb::zero()
            } else {
                LinComb::basis(&b.restrict_mask(m as u32))
            }
        })
        .collect();
    let full = size - 1;
    let mut power = vals.clone();
    let mut acc = power[full].clone();
    for k in 2..=n {
        let mut next = vec![LinComb::zero(); size];
        for (mask, slot) in next.iter_mut().enumerate().skip(1) {
            let mut sub = mask;
            while sub > 0 {
                let rest = mask & !sub;
                if rest != 0 && !power[rest].is_zero() {
                    *slot = slot.add(&vals[sub].product(&power[rest]));
                }
                sub = (sub - 1) & mask;
            }
        }
        power = next;
        let sign = if k % 2 == 0 { -1 } else { 1 };
        acc = acc.add(&power[full].scale(&(rat(sign) / rat(k as i64))));
    }
    acc
}

// ---------------------------------------------------------------------------
// 4T quotient ranks

pub const DEFAULT_PRIME: u64 = 2_147_483_647;
pub const SECOND_PRIME: u64 = 2_147_483_629;
pub const MAX_RANK_CHORDS: usize = 7;
pub const STRETCH_RANK_CHORDS: usize = 9;
pub const MAX_RANK_VERTICES: usize = 6;
pub const MAX_RATIONAL_RANK: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Diagrams,
    Graphs,
}

/// Basis size and sparse 4T relation rows (`(column, coefficient)`, sorted).
#[derive(Clone, Debug)]
pub struct RelationMatrix {
    pub columns: usize,
    pub rows: Vec<Vec<(u32, i64)>>,
}

fn sparse_row<B: Eq + std::hash::Hash>(index: &HashMap<B, u32>, terms: [(&B, i64); 4]) -> Vec<(u32, i64)> {
    let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
    for (b, c) in terms {
        *acc.entry(index[b]).or_insert(0) += c;
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Rows are normalized to a positive leading entry, deduplicated and ordered
/// by length, which keeps fill-in low during elimination.
pub fn relation_matrix(n: usize, family: Family, stretch: bool) -> Result<RelationMatrix, HopfError> {
    let mut m = raw_relation_matrix(n, family, stretch)?;
    for r in m.rows.iter_mut() {
        if r[0].1 < 0 {
            for e in r.iter_mut() {
                e.1 = -e.1;
            }
        }
    }
    m.rows.par_sort();
    m.rows.dedup();
    m.rows.sort_by_key(|r| r.len());
    Ok(m)
}

fn raw_relation_matrix(n: usize, family: Family, stretch: bool) -> Result<RelationMatrix, HopfError> {
    match family {
        Family::Diagrams => {
            let bound = if stretch {
                STRETCH_RANK_CHORDS
            } else {
                MAX_RANK_CHORDS
            };
            if n > bound {
                return Err(HopfError::BoundExceeded { got: n, bound });
            }
            let basis = crate::diagrams::enumerate_diagrams_bounded(n, false, bound)?;
            let index: HashMap<ChordDiagram, u32> =
                basis.iter().enumerate().map(|(i, d)| (d.clone(), i as u32)).collect();
            let rows = if n <= MAX_RANK_CHORDS {
                all_four_term_quadruples(n)?
                    .par_iter()
                    .map(|q| sparse_row(&index, [(&q[0], 1), (&q[1], -1), (&q[2], -1), (&q[3], 1)]))
                    .filter(|r| !r.is_empty())
                    .collect()
            } else {
                basis
                    .par_iter()
                    .flat_map_iter(|d| d.all_four_term())
                    .map(|q| sparse_row(&index, [(&q[0], 1), (&q[1], -1), (&q[2], -1), (&q[3], 1)]))
                    .filter(|r| !r.is_empty())
                    .collect()
            };
            Ok(RelationMatrix {
                columns: basis.len(),
                rows,
            })
        }
        Family::Graphs => {
            if n > MAX_RANK_VERTICES {
                return Err(HopfError::BoundExceeded {
                    got: n,
                    bound: MAX_RANK_VERTICES,
                });
            }
            let basis = graph_classes(n);
            let index: HashMap<FramedGraph, u32> =
                basis.iter().enumerate().map(|(i, g)| (g.clone(), i as u32)).collect();
            let rows = basis
                .par_iter()
                .flat_map_iter(|g| {
                    let mut out = Vec::new();
                    for (a, b) in g.edges() {
                        for (x, y) in [(a, b), (b, a)] {
                            let q = g.four_term(x, y).map(|h| h.canonical());
                            out.push(sparse_row(
                                &index,
                                [(&q[0], 1), (&q[1], -1), (&q[2], -1), (&q[3], 1)],
                            ));
                        }
                    }
                    out
                })
                .filter(|r| !r.is_empty())
                .collect();
            Ok(RelationMatrix {
                columns: basis.len(),
                rows,
            })
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Rank over `F_p` by incremental elimination keyed on leading columns.
pub fn rank_mod_p(m: &RelationMatrix, p: u64) -> usize {
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    for row in &m.rows {
        let mut r: Vec<(u32, u64)> = row
            .iter()
            .map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(lead, lv)) = r.first() {
            match pivots.get(&lead) {
                None => {
                    let inv = inv_mod(lv, p);
                    for e in r.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    pivots.insert(lead, r);
                    break;
                }
                Some(piv) => {
                    // r -= lv * piv
                    let mut out = Vec::with_capacity(r.len() + piv.len());
                    let (mut i, mut j) = (0, 0);
                    while i < r.len() || j < piv.len() {
                        let take_r = j >= piv.len() || (i < r.len() && r[i].0 < piv[j].0);
                        let take_p = i >= r.len() || (j < piv.len() && piv[j].0 < r[i].0);
                        if take_r {
                            out.push(r[i]);
                            i += 1;
                        } else if take_p {
                            out.push((piv[j].0, (p - lv * piv[j].1 % p) % p));
                            j += 1;
                        } else {
                            let v = (r[i].1 + p - lv * piv[j].1 % p) % p;
                            if v != 0 {
                                out.push((r[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    r = out;
                }
            }
        }
    }
    pivots.len()
}

/// Exact rank over the rationals, for oracle sizes.
pub fn rank_rational(m: &RelationMatrix) -> usize {
    let mut pivots: HashMap<u32, BTreeMap<u32, Rat>> = HashMap::new();
    for row in &m.rows {
        let mut r: BTreeMap<u32, Rat> = row.iter().map(|&(c, v)| (c, rat(v))).collect();
        while let Some((&lead, lv)) = r.iter().next() {
            let lv = lv.clone();
            match pivots.get(&lead) {
                None => {
                    for v in r.values_mut() {
                        *v /= &lv;
                    }
                    pivots.insert(lead, r);
                    break;
                }
                Some(piv) => {
                    for (c, v) in piv {
                        let e = r.entry(*c).or_insert_with(Rat::zero);
                        *e -= &lv * v;
                        if e.is_zero() {
                            r.remove(c);
                        }
                    }
                }
            }
        }
    }
    pivots.len()
}

/// Dimension of the grade-`n` part modulo 4T relations.
pub fn quotient_rank_4t(
    n: usize,
    family: Family,
    prime: Option<u64>,
    stretch: bool,
) -> Result<usize, HopfError> {
    let m = relation_matrix(n, family, stretch)?;
    Ok(m.columns - rank_mod_p(&m, prime.unwrap_or(DEFAULT_PRIME)))
}

/// The same dimension by exact rational elimination.
pub fn quotient_rank_4t_rational(n: usize, family: Family) -> Result<usize, HopfError> {
    if n > MAX_RATIONAL_RANK {
        return Err(HopfError::BoundExceeded {
            got: n,
            bound: MAX_RATIONAL_RANK,
        });
    }
    let m = relation_matrix(n, family, false)?;
    Ok(m.columns - rank_rational(&m))
}

/// Matrix Market coordinate export (1-based indices).
pub fn write_matrix_market<W: Write>(m: &RelationMatrix, w: &mut W) -> std::io::Result<()> {
    let nnz: usize = m.rows.iter().map(|r| r.len()).sum();
    writeln!(w, "%%MatrixMarket matrix coordinate integer general")?;
    writeln!(w, "{} {} {}", m.rows.len(), m.columns, nnz)?;
    for (i, row) in m.rows.iter().enumerate() {
        for &(c, v) in row {
            writeln!(w, "{} {} {}", i + 1, c + 1, v)?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// umbral invariants

pub const MAX_UMBRAL_VERTICES: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UmbralKind {
    Abel,
    Stanley,
    WeightedChromatic,
}

pub fn umbral_value(kind: UmbralKind, g: &FramedGraph) -> MPoly {
    match kind {
        UmbralKind::Abel => abel(g),
        UmbralKind::Stanley => stanley_in_q(&stanley(g), g.n(), StanleySign::PerVariable),
        UmbralKind::WeightedChromatic => weighted_chromatic(&g.unweighted()),
    }
}

/// Result of the averaging: scaling constants and the rescaled series in `p`.
#[derive(Clone, Debug)]
pub struct UmbralAverage {
    pub scaling: Vec<Rat>,
    pub series: MPoly,
}

/// `Σ_G I_G / |Aut G|` over graphs with at most `max_n` vertices, rescaled by
/// `q_n = 2^{n(n-1)/2}(n-1)!/i_n · p_n`.
pub fn umbral_average(kind: UmbralKind, max_n: usize) -> Result<UmbralAverage, HopfError> {
    if max_n > MAX_UMBRAL_VERTICES {
        return Err(HopfError::BoundExceeded {
            got: max_n,
            bound: MAX_UMBRAL_VERTICES,
        });
    }
    let mut total = MPoly::one();
    let mut scaling = vec![Rat::zero()];
    for n in 1..=max_n {
        let mut conn = Rat::zero();
        for (g, aut) in enumerate_graphs(n)? {
            let v = umbral_value(kind, &g).scale(&(Rat::one() / rat(aut as i64)));
            if g.is_connected() {
                conn += v.coeff(&crate::poly::Monomial::var(Var::Q(n as u16), 1));
            }
            total += &v;
        }
        let i_n = conn * factorial(n);
        if i_n.is_zero() {
            return Err(HopfError::ZeroScalingConstant(n));
        }
        scaling.push(i_n);
    }
    let mut map = BTreeMap::new();
    for n in 1..=max_n {
        let two = rat(2).pow((n * (n - 1) / 2) as i32);
        let f = two * factorial(n - 1) / &scaling[n];
        map.insert(Var::Q(n as u16), MPoly::var(Var::P(n as u16)).scale(&f));
    }
    Ok(UmbralAverage {
        scaling,
        series: total.substitute(&map),
    })
}

/// `Σ_{n ≤ max_n} 2^{n(n-1)/2} s_n`.
pub fn schur_target(max_n: usize) -> MPoly {
    let mut acc = MPoly::zero();
    for n in 0..=max_n {
        let two = rat(2).pow((n * (n.max(1) - 1) / 2) as i32);
        acc += &schur_one_part(n).scale(&two);
    }
    acc
}

fn p_weight(v: Var) -> i32 {
    match v {
        Var::P(k) => k as i32,
        _ => 0,
    }
}

/// `F = log S` for a series in `p_1, p_2, …` with constant term 1, truncated
/// at weight `max_w`.
pub fn log_in_p(s: &MPoly, max_w: usize) -> Result<MPoly, HopfError> {
    // grade by a formal variable z that counts weight, then set z = 1
    let mut graded = vec![MPoly::zero(); max_w + 1];
    for (m, c) in s.terms() {
        let w: i32 = m.pairs().iter().map(|&(v, e)| p_weight(v) * e).sum();
        if (w as usize) <= max_w {
            graded[w as usize].add_term(m.clone(), c.clone());
        }
    }
    let log = TruncSeries::from_coeffs(Var::Z, graded, max_w).log()?;
    Ok(log.coeffs.iter().fold(MPoly::zero(), |a, c| &a + c))
}

/// First KP equation residual
/// `F_{p2p2} - F_{p1p3} + ½ F_{p1p1}² + 1/12 F_{p1p1p1p1}` truncated at `max_w`.
pub fn kp_residual(f: &MPoly, max_w: usize) -> MPoly {
    let (p1, p2, p3) = (Var::P(1), Var::P(2), Var::P(3));
    let f11 = f.derivative(p1).derivative(p1);
    let r = &(&(&f.derivative(p2).derivative(p2) - &f.derivative(p1).derivative(p3))
        + &(&f11 * &f11).scale(&crate::poly::ratio(1, 2)))
        + &f11.derivative(p1).derivative(p1).scale(&crate::poly::ratio(1, 12));
    r.truncate_weight(p_weight, max_w as i32)
}

/// Outcome of the KP check on the Schur combination and on graph data.
#[derive(Clone, Debug)]
pub struct KpReport {
    pub schur_weight: usize,
    pub schur_residual_zero: bool,
    pub graph_weight: usize,
    pub graph_matches_schur: bool,
    pub graph_residual_zero: bool,
}

/// The residual is checked through weight `w` using `S` truncated at `w + 4`;
/// for graph data with `max_n` vertices that is weight `max_n - 4`.
pub fn kp_check(kind: UmbralKind, max_n: usize, schur_weight: usize) -> Result<KpReport, HopfError> {
    let s = schur_target(schur_weight + 4);
    let f = log_in_p(&s, schur_weight + 4)?;
    let schur_residual_zero = kp_residual(&f, schur_weight).is_zero();
    let avg = umbral_average(kind, max_n)?;
    let graph_matches_schur = avg.series == schur_target(max_n);
    let graph_weight = max_n.saturating_sub(4);
    let fg = log_in_p(&avg.series, max_n)?;
    let graph_residual_zero = max_n < 4 || kp_residual(&fg, graph_weight).is_zero();
    Ok(KpReport {
        schur_weight,
        schur_residual_zero,
        graph_weight,
        graph_matches_schur,
        graph_residual_zero,
    })
}

/// Sum of a graph invariant over `π(G)`, convenience for graph families.
pub fn on_primitive<F: Fn(&FramedGraph) -> MPoly>(f: F, g: &FramedGraph) -> MPoly {
    primitive_projection_basis(g).evaluate(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_count() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, b) in bell.iter().enumerate() {
            assert_eq!(set_partitions(n).len(), *b);
        }
    }

    #[test]
    fn k2_projection() {
        let k2 = FramedGraph::complete(2);
        let k1 = FramedGraph::complete(1);
        let want = LinComb::basis(&k2).sub(&LinComb::basis(&k1.union(&k1)));
        assert_eq!(primitive_projection_basis(&k2), want);
    }

    #[test]
    fn small_ranks() {
        for (n, r) in [(1, 1), (2, 2), (3, 3), (4, 6)] {
            assert_eq!(quotient_rank_4t(n, Family::Diagrams, None, false).unwrap(), r);
            assert_eq!(quotient_rank_4t_rational(n, Family::Diagrams).unwrap(), r);
        }
    }
}
