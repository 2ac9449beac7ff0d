//! Framed and weighted graphs over F2, Vassiliev moves, canonical forms.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::ChordDiagram;
use crate::poly::{rat, MPoly, Rat, Var};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertices {0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),
    #[error("requested size {got} exceeds the bound {bound}")]
    BoundExceeded { got: usize, bound: usize },
    #[error("malformed adjacency matrix")]
    Malformed,
}

pub const MAX_ENUM_VERTICES: usize = 7;

/// Symmetric F2 adjacency matrix stored as row bitmasks; bit `i` of row `i`
/// is the framing of vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FramedGraph {
    weights: Vec<u32>,
    rows: Vec<u32>,
}

impl FramedGraph {
    pub fn edgeless(n: usize) -> Self {
        assert!(n <= 32);
        FramedGraph {
            weights: vec![1; n],
            rows: vec![0; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = FramedGraph::edgeless(n);
        for &(a, b) in edges {
            g.set_edge(a, b, true);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = FramedGraph::edgeless(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.set_edge(i, j, true);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FramedGraph::from_edges(n, &e)
    }

    pub fn cycle(n: usize) -> Self {
        let mut e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        e.push((n - 1, 0));
        FramedGraph::from_edges(n, &e)
    }

    /// Hub joined to every vertex of an `n`-cycle.
    pub fn wheel(n: usize) -> Self {
        let mut g = FramedGraph::edgeless(n + 1);
        for i in 0..n {
            g.set_edge(i, (i + 1) % n, true);
            g.set_edge(i, n, true);
        }
        g
    }

    /// Two triangles joined by a perfect matching.
    pub fn prism3() -> Self {
        FramedGraph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
    }

    pub fn with_weights(mut self, w: Vec<u32>) -> Self {
        assert_eq!(w.len(), self.n());
        self.weights = w;
        self
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Same graph with all weights reset to 1.
    pub fn unweighted(&self) -> FramedGraph {
        FramedGraph {
            weights: vec![1; self.n()],
            rows: self.rows.clone(),
        }
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn total_weight(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn full_mask(&self) -> u32 {
        if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && (self.rows[a] >> b) & 1 == 1
    }

    pub fn set_edge(&mut self, a: usize, b: usize, on: bool) {
        assert_ne!(a, b);
        if on {
            self.rows[a] |= 1 << b;
            self.rows[b] |= 1 << a;
        } else {
            self.rows[a] &= !(1 << b);
            self.rows[b] &= !(1 << a);
        }
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) {
        self.rows[a] ^= 1 << b;
        self.rows[b] ^= 1 << a;
    }

    pub fn framing(&self, v: usize) -> u8 {
        ((self.rows[v] >> v) & 1) as u8
    }

    pub fn set_framing(&mut self, v: usize, f: u8) {
        if f & 1 == 1 {
            self.rows[v] |= 1 << v;
        } else {
            self.rows[v] &= !(1 << v);
        }
    }

    pub fn is_framed(&self) -> bool {
        (0..self.n()).any(|v| self.framing(v) == 1)
    }

    /// Neighbors of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: usize) -> u32 {
        self.rows[v] & !(1 << v)
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.neighbors(v).count_ones()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v) as usize).sum::<usize>() / 2
    }

    /// Induced subgraph on the vertices in `mask`, in increasing order.
    pub fn induced(&self, mask: u32) -> FramedGraph {
        let verts: Vec<usize> = (0..self.n()).filter(|&v| (mask >> v) & 1 == 1).collect();
        self.induced_list(&verts)
    }

    pub fn induced_list(&self, verts: &[usize]) -> FramedGraph {
        let k = verts.len();
        let mut rows = vec![0u32; k];
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate() {
                if (self.rows[a] >> b) & 1 == 1 {
                    rows[i] |= 1 << j;
                }
            }
        }
        FramedGraph {
            weights: verts.iter().map(|&v| self.weights[v]).collect(),
            rows,
        }
    }

    pub fn remove_vertex(&self, v: usize) -> FramedGraph {
        self.induced(self.full_mask() & !(1 << v))
    }

    /// Disjoint union.
    pub fn union(&self, other: &FramedGraph) -> FramedGraph {
        let s = self.n();
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << s));
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        FramedGraph { weights, rows }
    }

    /// `(G, n)`: add `n` pairwise nonadjacent vertices joined to every
    /// vertex of `G`.
    pub fn cone(&self, n: usize) -> FramedGraph {
        let s = self.n();
        let mut g = self.union(&FramedGraph::edgeless(n));
        for a in 0..s {
            for b in s..s + n {
                g.set_edge(a, b, true);
            }
        }
        g
    }

    /// Contract the edge `ab`: the merged vertex takes the union of
    /// neighborhoods and the sum of weights; parallel edges collapse.
    pub fn contract(&self, a: usize, b: usize) -> FramedGraph {
        let (a, b) = (a.min(b), a.max(b));
        let mut g = self.clone();
        let nb = g.neighbors(b) & !(1 << a);
        for v in 0..g.n() {
            if (nb >> v) & 1 == 1 && v != a {
                g.set_edge(a, v, true);
            }
        }
        g.weights[a] += g.weights[b];
        g.remove_vertex(b)
    }

    /// Connected components as vertex masks.
    pub fn components(&self) -> Vec<u32> {
        let mut left = self.full_mask();
        let mut out = Vec::new();
        while left != 0 {
            let start = left.trailing_zeros();
            let mut comp = 1u32 << start;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let nb = self.neighbors(v) & !comp;
                comp |= nb;
                frontier |= nb;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Determinant over F2 of the full matrix (framing on the diagonal).
    pub fn nondegeneracy(&self) -> u8 {
        f2_det(&self.rows)
    }

    /// First Vassiliev move: toggle the edge `ab`.
    pub fn first_move(&self, a: usize, b: usize) -> FramedGraph {
        let mut g = self.clone();
        g.toggle_edge(a, b);
        g
    }

    /// Second Vassiliev move: the congruence `A -> I^t A I` over F2 that adds
    /// row and column `b` to row and column `a`. It toggles the adjacency of
    /// `a` to every neighbor of `b` other than `a`, adds the framing of `b` to
    /// that of `a`, and toggles `ab` itself when `b` is framed.
    pub fn second_move(&self, a: usize, b: usize) -> FramedGraph {
        let mut g = self.clone();
        let nb = self.neighbors(b) & !(1 << a);
        for v in 0..g.n() {
            if (nb >> v) & 1 == 1 {
                g.toggle_edge(a, v);
            }
        }
        if self.framing(b) == 1 {
            g.toggle_edge(a, b);
        }
        let f = g.framing(a) ^ g.framing(b);
        g.set_framing(a, f);
        g
    }

    /// `(G, G'_ab, G~_ab, G~'_ab)`.
    pub fn four_term(&self, a: usize, b: usize) -> [FramedGraph; 4] {
        let p = self.first_move(a, b);
        [
            self.clone(),
            p.clone(),
            self.second_move(a, b),
            p.second_move(a, b),
        ]
    }

    /// Pivot along the edge `ab` (zero framing).
    pub fn pivot(&self, a: usize, b: usize) -> Result<FramedGraph, GraphError> {
        if !self.has_edge(a, b) {
            return Err(GraphError::NotAnEdge(a, b));
        }
        let na = self.neighbors(a) & !(1 << b);
        let nb = self.neighbors(b) & !(1 << a);
        let only_a = na & !nb;
        let only_b = nb & !na;
        let both = na & nb;
        let classes = [only_a, only_b, both];
        let mut g = self.clone();
        for i in 0..3 {
            for j in (i + 1)..3 {
                for u in bits(classes[i]) {
                    for v in bits(classes[j]) {
                        g.toggle_edge(u, v);
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn permuted(&self, perm: &[usize]) -> FramedGraph {
        // vertex v goes to perm[v]
        let n = self.n();
        let mut rows = vec![0u32; n];
        let mut weights = vec![0u32; n];
        for v in 0..n {
            weights[perm[v]] = self.weights[v];
            let mut r = 0u32;
            for u in bits(self.rows[v]) {
                r |= 1 << perm[u];
            }
            rows[perm[v]] = r;
        }
        FramedGraph { weights, rows }
    }

    /// Canonical representative of the isomorphism class (framing and weights
    /// preserved). Vertices are first split into classes by
    /// (weight, framing, degree); only permutations within classes are tried.
    pub fn canonical(&self) -> FramedGraph {
        let n = self.n();
        if n <= 1 {
            return self.clone();
        }
        let inv: Vec<(u32, u8, u32, u32)> = (0..n)
            .map(|v| {
                let nb_deg: u32 = bits(self.neighbors(v)).map(|u| self.degree(u)).sum();
                (self.weights[v], self.framing(v), self.degree(v), nb_deg)
            })
            .collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| inv[v]);
        // class boundaries in the sorted order
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match groups.last_mut() {
                Some(g) if inv[g[0]] == inv[v] => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let mut best: Option<FramedGraph> = None;
        let mut slots: Vec<usize> = Vec::with_capacity(n);
        search_groups(self, &groups, 0, &mut slots, &mut best);
        best.unwrap()
    }

    /// Number of automorphisms by exhaustive search over all permutations.
    pub fn automorphism_count(&self) -> u64 {
        let n = self.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0u64;
        permute_all(&mut perm, 0, &mut |p| {
            if self.permuted(p) == *self {
                count += 1;
            }
        });
        count
    }

    pub fn to_json(&self) -> GraphJson {
        let n = self.n();
        GraphJson {
            n,
            adj: (0..n)
                .map(|i| (0..n).map(|j| ((self.rows[i] >> j) & 1) as u8).collect())
                .collect(),
            framing: (0..n).map(|v| self.framing(v)).collect(),
            weights: self.weights.clone(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<FramedGraph, GraphError> {
        let n = j.n;
        if j.adj.len() != n || j.adj.iter().any(|r| r.len() != n) || n > 32 {
            return Err(GraphError::Malformed);
        }
        let mut g = FramedGraph::edgeless(n);
        for i in 0..n {
            for j2 in 0..n {
                if i != j2 && j.adj[i][j2] != j.adj[j2][i] {
                    return Err(GraphError::Malformed);
                }
                if i != j2 && j.adj[i][j2] & 1 == 1 {
                    g.rows[i] |= 1 << j2;
                }
            }
            let diag = j.adj[i][i] & 1;
            let fr = j.framing.get(i).copied().unwrap_or(diag) & 1;
            g.set_framing(i, fr | diag);
        }
        if !j.weights.is_empty() {
            if j.weights.len() != n || j.weights.contains(&0) {
                return Err(GraphError::Malformed);
            }
            g.weights = j.weights.clone();
        }
        Ok(g)
    }

    pub fn to_petgraph_edges(&self) -> Vec<(u32, u32)> {
        self.edges()
            .into_iter()
            .map(|(a, b)| (a as u32, b as u32))
            .collect()
    }
}

fn search_groups(
    g: &FramedGraph,
    groups: &[Vec<usize>],
    gi: usize,
    slots: &mut Vec<usize>,
    best: &mut Option<FramedGraph>,
) {
    if gi == groups.len() {
        // slots[k] = old vertex placed at position k
        let mut perm = vec![0; slots.len()];
        for (k, &v) in slots.iter().enumerate() {
            perm[v] = k;
        }
        let cand = g.permuted(&perm);
        if best.as_ref().is_none_or(|b| cand < *b) {
            *best = Some(cand);
        }
        return;
    }
    let mut grp = groups[gi].clone();
    let len = grp.len();
    permute_all(&mut grp, 0, &mut |p| {
        let base = slots.len();
        slots.extend_from_slice(p);
        search_groups(g, groups, gi + 1, slots, best);
        slots.truncate(base);
    });
    let _ = len;
}

fn permute_all<F: FnMut(&[usize])>(v: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute_all(v, k + 1, f);
        v.swap(k, i);
    }
}

pub fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// Determinant over F2 of a square matrix given by row bitmasks.
pub fn f2_det(rows: &[u32]) -> u8 {
    let mut m = rows.to_vec();
    let n = m.len();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| (m[r] >> col) & 1 == 1) else {
            return 0;
        };
        m.swap(col, p);
        for r in (col + 1)..n {
            if (m[r] >> col) & 1 == 1 {
                m[r] ^= m[col];
            }
        }
    }
    1
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub adj: Vec<Vec<u8>>,
    #[serde(default)]
    pub framing: Vec<u8>,
    #[serde(default)]
    pub weights: Vec<u32>,
}

/// One representative per isomorphism class of simple graphs on `n`
/// vertices, with its automorphism group order. Sorted by canonical form.
pub fn enumerate_graphs(n: usize) -> Result<Vec<(FramedGraph, u64)>, GraphError> {
    if n > MAX_ENUM_VERTICES {
        return Err(GraphError::BoundExceeded {
            got: n,
            bound: MAX_ENUM_VERTICES,
        });
    }
    let classes = graph_classes(n);
    Ok(classes
        .into_iter()
        .map(|g| {
            let a = g.automorphism_count();
            (g, a)
        })
        .collect())
}

/// Canonical forms of all simple graphs on `n` vertices, built by adding a
/// vertex with every possible neighborhood to the classes on `n-1` vertices.
pub fn graph_classes(n: usize) -> Vec<FramedGraph> {
    let mut layer: BTreeSet<FramedGraph> = BTreeSet::new();
    layer.insert(FramedGraph::edgeless(0));
    for k in 1..=n {
        let mut next = BTreeSet::new();
        for g in &layer {
            for mask in 0u32..(1 << (k - 1)) {
                let mut h = g.union(&FramedGraph::edgeless(1));
                for u in bits(mask) {
                    h.set_edge(u, k - 1, true);
                }
                next.insert(h.canonical());
            }
        }
        layer = next;
    }
    layer.into_iter().collect()
}

/// All graphs on at most `n` vertices, grouped by vertex count.
pub fn graph_classes_upto(n: usize) -> Vec<FramedGraph> {
    (0..=n).flat_map(graph_classes).collect()
}

/// Skew-symmetric orientation of the intersection graph of a diagram cut at
/// position `cut` (the cut sits just before endpoint `cut`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedIntersectionGraph {
    pub skew: Vec<Vec<i64>>,
}

impl DirectedIntersectionGraph {
    pub fn from_diagram(d: &ChordDiagram, cut: usize) -> Self {
        let n = d.n();
        let len = 2 * n;
        let lin = d.rotate(if len == 0 { 0 } else { cut % len });
        let ends = lin.ends();
        let mut skew = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && lin.crosses(i, j) && ends[i].0 < ends[j].0 {
                    skew[i][j] = 1;
                    skew[j][i] = -1;
                }
            }
        }
        DirectedIntersectionGraph { skew }
    }

    /// `det(u I - A)` by the Faddeev-LeVerrier recursion.
    pub fn characteristic_polynomial(&self) -> MPoly {
        let n = self.skew.len();
        let a: Vec<Vec<Rat>> = self
            .skew
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        let ident = |n: usize| -> Vec<Vec<Rat>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                        .collect()
                })
                .collect()
        };
        let matmul = |x: &Vec<Vec<Rat>>, y: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
            let n = x.len();
            let mut out = vec![vec![Rat::zero(); n]; n];
            for i in 0..n {
                for k in 0..n {
                    if x[i][k].is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        out[i][j] += &x[i][k] * &y[k][j];
                    }
                }
            }
            out
        };
        // coefficients c_k of u^{n-k}
        let mut coeffs = vec![Rat::one()];
        let mut m = ident(n);
        for k in 1..=n {
            let am = matmul(&a, &m);
            let tr: Rat = (0..n).map(|i| am[i][i].clone()).sum();
            let ck = -tr / Rat::from_integer(BigInt::from(k as i64));
            coeffs.push(ck.clone());
            m = am;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &ck;
            }
        }
        let mut out = MPoly::zero();
        for (k, c) in coeffs.into_iter().enumerate() {
            out += &MPoly::var_pow(Var::U, (n - k) as i32).scale(&c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nondegeneracy_examples() {
        assert_eq!(FramedGraph::edgeless(0).nondegeneracy(), 1);
        assert_eq!(FramedGraph::edgeless(1).nondegeneracy(), 0);
        assert_eq!(FramedGraph::complete(2).nondegeneracy(), 1);
        let mut f = FramedGraph::edgeless(1);
        f.set_framing(0, 1);
        assert_eq!(f.nondegeneracy(), 1);
    }

    #[test]
    fn moves_on_k2() {
        let k2 = FramedGraph::complete(2);
        let [_, p, t, tp] = k2.four_term(0, 1);
        assert_eq!(p, FramedGraph::edgeless(2));
        assert_eq!(t, k2);
        assert_eq!(tp, FramedGraph::edgeless(2));
    }

    #[test]
    fn pivot_examples() {
        let k2 = FramedGraph::complete(2);
        assert_eq!(k2.pivot(0, 1).unwrap(), k2);
        let k3 = FramedGraph::complete(3);
        assert_eq!(k3.pivot(0, 2).unwrap(), k3);
        let p3 = FramedGraph::path(3);
        assert_eq!(p3.pivot(0, 1).unwrap(), p3);
        assert_eq!(p3.pivot(0, 2), Err(GraphError::NotAnEdge(0, 2)));
    }

    #[test]
    fn small_class_counts() {
        assert_eq!(enumerate_graphs(3).unwrap().len(), 4);
        assert_eq!(enumerate_graphs(4).unwrap().len(), 11);
        assert_eq!(FramedGraph::complete(3).automorphism_count(), 6);
        assert!(enumerate_graphs(8).is_err());
    }

    #[test]
    fn contraction_merges_weights() {
        let k3 = FramedGraph::complete(3);
        let c = k3.contract(0, 1);
        assert_eq!(c.n(), 2);
        assert_eq!(c.edge_count(), 1);
        assert_eq!(c.weights(), &[2, 1]);
    }

    #[test]
    fn directed_k2() {
        let d = DirectedIntersectionGraph::from_diagram(&ChordDiagram::complete(2), 0);
        assert_eq!(d.skew, vec![vec![0, 1], vec![-1, 0]]);
    }
}
