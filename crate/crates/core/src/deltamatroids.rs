//! Delta-matroids on small ground sets, stored as sorted bit-set families.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{bits, f2_det, FramedGraph};
use crate::hopf::{primitive_projection_basis, set_partitions, HopfBasis};
use crate::poly::{rat, MPoly, Var};
use crate::ribbon::RibbonGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DmError {
    #[error("the feasible family is empty")]
    EmptyFamily,
    #[error("subset is not contained in the ground set")]
    NotSubset,
    #[error("ribbon graph is not connected")]
    Disconnected,
    #[error("elements must be distinct members of the ground set")]
    BadElements,
    #[error("unknown ground element {0}")]
    UnknownElement(String),
    #[error("ground set too large ({0} > 16)")]
    TooLarge(usize),
}

pub const MAX_GROUND: usize = 16;

/// Set system `(E; S)` with `E = {0..n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeltaMatroid {
    n: usize,
    feasible: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DmJson {
    pub ground: Vec<String>,
    pub feasible: Vec<Vec<String>>,
}

impl DeltaMatroid {
    /// Any proper set system; the exchange axiom is not enforced here.
    pub fn new(n: usize, feasible: impl IntoIterator<Item = u32>) -> Result<Self, DmError> {
        if n > MAX_GROUND {
            return Err(DmError::TooLarge(n));
        }
        let full = full_mask(n);
        let set: BTreeSet<u32> = feasible.into_iter().collect();
        if set.iter().any(|&x| x & !full != 0) {
            return Err(DmError::NotSubset);
        }
        if set.is_empty() {
            return Err(DmError::EmptyFamily);
        }
        Ok(DeltaMatroid {
            n,
            feasible: set.into_iter().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn feasible(&self) -> &[u32] {
        &self.feasible
    }

    pub fn contains(&self, x: u32) -> bool {
        self.feasible.binary_search(&x).is_ok()
    }

    pub fn is_even(&self) -> bool {
        let p = self.feasible[0].count_ones() % 2;
        self.feasible.iter().all(|x| x.count_ones() % 2 == p)
    }

    /// Symmetric exchange axiom, checked by brute force.
    pub fn is_delta_matroid(&self) -> bool {
        self.feasible.par_iter().all(|&x| {
            self.feasible.iter().all(|&y| {
                let d = x ^ y;
                bits(d).all(|a| bits(d).any(|b| self.contains(x ^ ((1 << a) | (1 << b)))))
            })
        })
    }

    pub fn twist(&self, u: u32) -> Result<DeltaMatroid, DmError> {
        if u & !full_mask(self.n) != 0 {
            return Err(DmError::NotSubset);
        }
        DeltaMatroid::new(self.n, self.feasible.iter().map(|x| x ^ u))
    }

    /// `D|_U = (U; {X ∈ S : X ⊆ U})`, relabeled to `0..|U|`; `None` when no
    /// feasible set fits.
    pub fn restrict(&self, u: u32) -> Option<DeltaMatroid> {
        let fam: Vec<u32> = self
            .feasible
            .iter()
            .filter(|&&x| x & !u == 0)
            .map(|&x| compress(x, u))
            .collect();
        DeltaMatroid::new(u.count_ones() as usize, fam).ok()
    }

    /// Deletion of one element; a coloop is contracted instead.
    pub fn delete(&self, e: usize) -> DeltaMatroid {
        let bit = 1u32 << e;
        let avoid: Vec<u32> = self.feasible.iter().copied().filter(|x| x & bit == 0).collect();
        let fam: Vec<u32> = if avoid.is_empty() {
            self.feasible.iter().map(|&x| x & !bit).collect()
        } else {
            avoid
        };
        let keep = full_mask(self.n) & !bit;
        DeltaMatroid::new(self.n - 1, fam.into_iter().map(|x| compress(x, keep))).unwrap()
    }

    /// Delete every element outside `keep`.
    pub fn delete_outside(&self, keep: u32) -> DeltaMatroid {
        let mut d = self.clone();
        for e in (0..self.n).rev() {
            if keep & (1 << e) == 0 {
                d = d.delete(e);
            }
        }
        d
    }

    /// Disjoint union.
    pub fn product(&self, o: &DeltaMatroid) -> DeltaMatroid {
        let mut fam = Vec::with_capacity(self.feasible.len() * o.feasible.len());
        for &x in &self.feasible {
            for &y in &o.feasible {
                fam.push(x | (y << self.n));
            }
        }
        DeltaMatroid::new(self.n + o.n, fam).unwrap()
    }

    pub fn permuted(&self, perm: &[usize]) -> DeltaMatroid {
        let mut fam: Vec<u32> = self
            .feasible
            .iter()
            .map(|&x| bits(x).fold(0u32, |acc, i| acc | (1 << perm[i])))
            .collect();
        fam.sort_unstable();
        DeltaMatroid {
            n: self.n,
            feasible: fam,
        }
    }

    /// Least relabeling over all permutations of the ground set.
    pub fn canonical(&self) -> DeltaMatroid {
        let mut best: Option<DeltaMatroid> = None;
        let mut perm: Vec<usize> = (0..self.n).collect();
        permute_all(&mut perm, 0, &mut |p| {
            let c = self.permuted(p);
            if best.as_ref().is_none_or(|b| c.feasible < b.feasible) {
                best = Some(c);
            }
        });
        best.unwrap_or_else(|| self.clone())
    }

    /// Blocks of the finest product decomposition.
    pub fn components(&self) -> Vec<u32> {
        let mut rest = full_mask(self.n);
        let mut out = Vec::new();
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            let others = rest & !low;
            // smallest block containing the lowest remaining element
            let mut found = rest;
            let mut sizes: Vec<u32> = subsets(others).map(|s| s | low).collect();
            sizes.sort_by_key(|s| s.count_ones());
            for a in sizes {
                if a != rest && self.splits(a, rest & !a, rest) {
                    found = a;
                    break;
                }
            }
            out.push(found);
            rest &= !found;
        }
        out
    }

    fn splits(&self, a: u32, b: u32, within: u32) -> bool {
        let proj = |m: u32| -> BTreeSet<u32> { self.feasible.iter().map(|x| x & m).collect() };
        let all = proj(within);
        let (pa, pb) = (proj(a), proj(b));
        pa.len() * pb.len() == all.len()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// `d_D(U) = min_{W ∈ S} |U Δ W|`.
    pub fn distance(&self, u: u32) -> u32 {
        self.feasible.iter().map(|w| (u ^ w).count_ones()).min().unwrap()
    }

    /// `D + u`: `S Δ {F ∪ u : F ∈ S, u ∉ F}`.
    pub fn loop_complement(&self, u: usize) -> Option<DeltaMatroid> {
        let bit = 1u32 << u;
        let mut set: BTreeSet<u32> = self.feasible.iter().copied().collect();
        for &f in &self.feasible {
            if f & bit == 0 {
                let g = f | bit;
                if !set.remove(&g) {
                    set.insert(g);
                }
            }
        }
        DeltaMatroid::new(self.n, set).ok()
    }

    /// `D ∗̄ u = D + u * u + u`.
    pub fn dual_pivot(&self, u: usize) -> Option<DeltaMatroid> {
        self.loop_complement(u)?
            .twist(1 << u)
            .ok()?
            .loop_complement(u)
    }

    /// `D ∗̄ u = D * u + u * u`, the second displayed formula.
    pub fn dual_pivot_alt(&self, u: usize) -> Option<DeltaMatroid> {
        self.twist(1 << u).ok()?.loop_complement(u)?.twist(1 << u).ok()
    }

    /// End exchange `S Δ {X ∪ {a,b} | X ∈ S, X ⊆ E ∖ {a,b}}`.
    pub fn exchange(&self, a: usize, b: usize) -> Result<DeltaMatroid, DmError> {
        self.check_pair(a, b)?;
        let ab = (1u32 << a) | (1 << b);
        let add: Vec<u32> = self
            .feasible
            .iter()
            .filter(|&&x| x & ab == 0)
            .map(|&x| x | ab)
            .collect();
        sym_diff(self.n, &self.feasible, &add)
    }

    /// Handle slide `S Δ {X ∪ a | X ∪ b ∈ S, X ⊆ E ∖ {a,b}}`.
    pub fn slide(&self, a: usize, b: usize) -> Result<DeltaMatroid, DmError> {
        self.check_pair(a, b)?;
        let (ba, bb) = (1u32 << a, 1u32 << b);
        let add: Vec<u32> = self
            .feasible
            .iter()
            .filter(|&&x| x & bb != 0 && x & ba == 0)
            .map(|&x| (x & !bb) | ba)
            .collect();
        sym_diff(self.n, &self.feasible, &add)
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(), DmError> {
        if a == b || a >= self.n || b >= self.n {
            return Err(DmError::BadElements);
        }
        Ok(())
    }

    /// `(D, D'_ab, D~_ab, D~'_ab)`; the last is the slide of the exchange.
    pub fn four_term(&self, a: usize, b: usize) -> Result<[DeltaMatroid; 4], DmError> {
        let e = self.exchange(a, b)?;
        Ok([self.clone(), e.clone(), self.slide(a, b)?, e.slide(a, b)?])
    }

    pub fn to_json(&self) -> DmJson {
        let names: Vec<String> = (0..self.n).map(|i| (i + 1).to_string()).collect();
        DmJson {
            ground: names.clone(),
            feasible: self
                .feasible
                .iter()
                .map(|&x| bits(x).map(|i| names[i].clone()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &DmJson) -> Result<DeltaMatroid, DmError> {
        let idx = |s: &String| {
            j.ground
                .iter()
                .position(|g| g == s)
                .ok_or_else(|| DmError::UnknownElement(s.clone()))
        };
        let mut fam = Vec::new();
        for f in &j.feasible {
            let mut m = 0u32;
            for s in f {
                m |= 1 << idx(s)?;
            }
            fam.push(m);
        }
        DeltaMatroid::new(j.ground.len(), fam)
    }
}

fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

fn compress(x: u32, keep: u32) -> u32 {
    let mut out = 0;
    for (k, i) in bits(keep).enumerate() {
        if x & (1 << i) != 0 {
            out |= 1 << k;
        }
    }
    out
}

fn subsets(m: u32) -> impl Iterator<Item = u32> {
    let mut sub = Some(0u32);
    std::iter::from_fn(move || {
        let cur = sub?;
        sub = if cur == m { None } else { Some((cur.wrapping_sub(m)) & m) };
        Some(cur)
    })
}

fn sym_diff(n: usize, a: &[u32], b: &[u32]) -> Result<DeltaMatroid, DmError> {
    let mut set: BTreeSet<u32> = a.iter().copied().collect();
    for &x in b {
        if !set.remove(&x) {
            set.insert(x);
        }
    }
    DeltaMatroid::new(n, set)
}

fn permute_all<F: FnMut(&[usize])>(p: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute_all(p, k + 1, f);
        p.swap(k, i);
    }
}

/// `U` is feasible iff `G|_U` is nondegenerate over `F_2`.
pub fn dm_from_graph(g: &FramedGraph) -> DeltaMatroid {
    let n = g.n();
    let fam: Vec<u32> = (0..=full_mask(n))
        .filter(|&u| {
            let sub = g.induced(u);
            f2_det(sub.rows()) == 1
        })
        .collect();
    DeltaMatroid::new(n, fam).unwrap()
}

/// Quasitrees: edge sets whose spanning ribbon subgraph has one boundary
/// component.
pub fn dm_from_ribbon(r: &RibbonGraph) -> Result<DeltaMatroid, DmError> {
    if r.components() != 1 {
        return Err(DmError::Disconnected);
    }
    let m = r.edges.len();
    let fam: Vec<u32> = (0..=full_mask(m))
        .into_par_iter()
        .filter(|&u| {
            let keep: Vec<usize> = bits(u).collect();
            r.spanning_subgraph(&keep).unwrap().boundary_components() == 1
        })
        .collect();
    DeltaMatroid::new(m, fam)
}

impl HopfBasis for DeltaMatroid {
    fn grade(&self) -> usize {
        self.n
    }
    fn canonical_form(&self) -> Self {
        self.canonical()
    }
    fn unit() -> Self {
        DeltaMatroid {
            n: 0,
            feasible: vec![0],
        }
    }
    fn disjoint_product(&self, other: &Self) -> Self {
        self.product(other)
    }
    fn restrict_mask(&self, mask: u32) -> Self {
        self.delete_outside(mask)
    }
}

/// `L_D(x) = Σ_U x^{d_D(U)}`.
pub fn interlace_dm(d: &DeltaMatroid) -> MPoly {
    let mut counts = vec![0i64; d.n + 1];
    for u in 0..=full_mask(d.n) {
        counts[d.distance(u) as usize] += 1;
    }
    poly_in(Var::X, &counts)
}

/// `Q_D(x) = Σ_U x^{|U|} ν(D|_U)`, with `ν(D|_U) = [U ∈ S]`.
pub fn skew_char_dm(d: &DeltaMatroid) -> MPoly {
    let mut counts = vec![0i64; d.n + 1];
    for &u in &d.feasible {
        counts[u.count_ones() as usize] += 1;
    }
    poly_in(Var::X, &counts)
}

fn poly_in(v: Var, counts: &[i64]) -> MPoly {
    let mut p = MPoly::zero();
    for (k, &c) in counts.iter().enumerate() {
        if c != 0 {
            p += &MPoly::var_pow(v, k as i32).scale(&rat(c));
        }
    }
    p
}

/// Which formula to use for `∗̄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualPivotForm {
    PlusTwistPlus,
    TwistPlusTwist,
}

/// Elementary operation applied to one element in a transition state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementOp {
    Identity,
    /// `D + u`
    Plus,
    /// `D * u`
    Twist,
    /// `D + u * u`
    PlusTwist,
    /// `D ∗̄ u`
    DualPivot(DualPivotForm),
}

impl ElementOp {
    fn apply(self, d: &DeltaMatroid, u: usize) -> Option<DeltaMatroid> {
        match self {
            ElementOp::Identity => Some(d.clone()),
            ElementOp::Plus => d.loop_complement(u),
            ElementOp::Twist => d.twist(1 << u).ok(),
            ElementOp::PlusTwist => d.loop_complement(u)?.twist(1 << u).ok(),
            ElementOp::DualPivot(DualPivotForm::PlusTwistPlus) => d.dual_pivot(u),
            ElementOp::DualPivot(DualPivotForm::TwistPlusTwist) => d.dual_pivot_alt(u),
        }
    }
}

/// `Σ_{E = A_0 ⊔ A_1 ⊔ A_2} ∏ w_i^{|A_i|} x^{d(∅)}` of the delta-matroid obtained
/// by applying `ops[i]` to the elements of `A_i`. A state whose family becomes
/// empty contributes nothing.
pub fn weighted_transition_dm(d: &DeltaMatroid, ops: [ElementOp; 3], w: &[MPoly; 3]) -> MPoly {
    let n = d.n;
    let total = 3usize.pow(n as u32);
    let states: Vec<([u32; 3], Option<u32>)> = (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut parts = [0u32; 3];
            for e in 0..n {
                parts[code % 3] |= 1 << e;
                code /= 3;
            }
            let mut cur = Some(d.clone());
            for (i, op) in ops.iter().enumerate() {
                for e in bits(parts[i]) {
                    cur = cur.and_then(|c| op.apply(&c, e));
                }
            }
            (parts, cur.map(|c| c.distance(0)))
        })
        .collect();
    let mut out = MPoly::zero();
    for (parts, dist) in states {
        if let Some(k) = dist {
            let mut term = MPoly::var_pow(Var::X, k as i32);
            for i in 0..3 {
                term = &term * &w[i].pow(parts[i].count_ones());
            }
            out += &term;
        }
    }
    out
}

/// Transition polynomial of `D + Φ * X ∗̄ Ψ` with weights `s` on `Φ`, `-t` on
/// `X` and `t` on `Ψ`; on `δ(C)` it equals the chord transition polynomial.
pub fn transition_dm(d: &DeltaMatroid) -> MPoly {
    transition_dm_with(d, DualPivotForm::PlusTwistPlus)
}

pub fn transition_dm_with(d: &DeltaMatroid, form: DualPivotForm) -> MPoly {
    weighted_transition_dm(
        d,
        [ElementOp::Plus, ElementOp::Twist, ElementOp::DualPivot(form)],
        &[
            MPoly::var(Var::S),
            MPoly::var(Var::T).scale(&rat(-1)),
            MPoly::var(Var::T),
        ],
    )
}

/// `Σ s^{|Φ|} t^{|X|} x^{d(∅)}` of `D + Φ * X ∗̄ Ψ`, weight 1 on `Ψ`.
pub fn transition_dm_unsigned(d: &DeltaMatroid) -> MPoly {
    weighted_transition_dm(
        d,
        [
            ElementOp::Plus,
            ElementOp::Twist,
            ElementOp::DualPivot(DualPivotForm::PlusTwistPlus),
        ],
        &[MPoly::var(Var::S), MPoly::var(Var::T), MPoly::one()],
    )
}

/// Character on delta-matroids: `1` on `({1};{∅})`, `x` on `({1};{{1}})`,
/// `0` on other connected ones; multiplicative over components.
pub fn stanley_character(d: &DeltaMatroid) -> MPoly {
    let mut acc = MPoly::one();
    for c in d.components() {
        let sub = d.delete_outside(c);
        let v = if sub.n != 1 {
            MPoly::zero()
        } else if sub.feasible == [0] {
            MPoly::one()
        } else if sub.feasible == [1] {
            MPoly::var(Var::X)
        } else {
            MPoly::zero()
        };
        acc = &acc * &v;
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `W(D) = Σ_{set partitions} ∏_B ξ(π(D|_B)) q_{|B|}`.
pub fn stanley_dm(d: &DeltaMatroid) -> MPoly {
    let mut out = MPoly::zero();
    for part in set_partitions(d.n) {
        let mut term = MPoly::one();
        for &b in &part {
            let block = d.delete_outside(b);
            let v = primitive_projection_basis(&block).evaluate(stanley_character);
            if v.is_zero() {
                term = MPoly::zero();
                break;
            }
            term = &term * &v.mul_monomial(&crate::poly::Monomial::var(Var::Q(b.count_ones() as u16), 1));
        }
        out += &term;
    }
    out
}

/// Canonical even binary delta-matroids of size `n`: all twists of graph
/// delta-matroids.
pub fn even_binary_classes(n: usize) -> Vec<DeltaMatroid> {
    let graphs = crate::graphs::graph_classes(n);
    let set: BTreeSet<DeltaMatroid> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let d = dm_from_graph(g);
            (0..=full_mask(n))
                .map(move |u| d.twist(u).unwrap().canonical())
                .collect::<Vec<_>>()
        })
        .collect();
    set.into_iter().collect()
}
