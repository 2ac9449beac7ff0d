use std::collections::BTreeSet;

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use weightsys_core::graphs::*;
use weightsys_core::FramedGraph;

fn to_petgraph(g: &FramedGraph) -> UnGraph<(), ()> {
    let mut p = UnGraph::new_undirected();
    let nodes: Vec<_> = (0..g.n()).map(|_| p.add_node(())).collect();
    for (a, b) in g.to_petgraph_edges() {
        p.add_edge(nodes[a as usize], nodes[b as usize], ());
    }
    p
}

fn labeled_graphs(n: usize) -> impl Iterator<Item = FramedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0u32..(1 << pairs.len())).map(move |m| {
        let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &e)| e).collect();
        FramedGraph::from_edges(n, &edges)
    })
}

/// F2 product `P^T M P` with `P = I + E_{b,a}`.
fn congruence(m: &[Vec<u8>], a: usize, b: usize) -> Vec<Vec<u8>> {
    let n = m.len();
    let mut p = vec![vec![0u8; n]; n];
    for (i, row) in p.iter_mut().enumerate() {
        row[i] = 1;
    }
    p[b][a] ^= 1;
    let mul = |x: &Vec<Vec<u8>>, y: &Vec<Vec<u8>>| -> Vec<Vec<u8>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(0, |s, k| s ^ (x[i][k] & y[k][j]))).collect())
            .collect()
    };
    let pt: Vec<Vec<u8>> = (0..n).map(|i| (0..n).map(|j| p[j][i]).collect()).collect();
    mul(&mul(&pt, &m.to_vec()), &p)
}

fn matrix(g: &FramedGraph) -> Vec<Vec<u8>> {
    (0..g.n())
        .map(|i| {
            (0..g.n())
                .map(|j| if i == j { g.framing(i) } else { g.has_edge(i, j) as u8 })
                .collect()
        })
        .collect()
}

#[test]
fn class_counts_agree_with_independent_isomorphism_test() {
    for n in 0..=5 {
        let mut reps: Vec<UnGraph<(), ()>> = Vec::new();
        for g in labeled_graphs(n) {
            let p = to_petgraph(&g);
            if !reps.iter().any(|r| is_isomorphic(r, &p)) {
                reps.push(p);
            }
        }
        assert_eq!(enumerate_graphs(n).unwrap().len(), reps.len(), "n = {n}");
    }
}

#[test]
fn orbit_counting() {
    // Σ n!/|Aut G| over classes counts labeled graphs
    for n in 1..=6usize {
        let fact: u64 = (1..=n as u64).product();
        let total: u64 = enumerate_graphs(n).unwrap().iter().map(|(_, a)| fact / a).sum();
        assert_eq!(total, 1u64 << (n * (n - 1) / 2), "n = {n}");
    }
}

#[test]
fn canonical_form_is_a_complete_invariant() {
    let classes: BTreeSet<FramedGraph> = labeled_graphs(5).map(|g| g.canonical()).collect();
    assert_eq!(classes.len(), 34);
}

#[test]
fn second_move_preserves_nondegeneracy() {
    for g in graph_classes_upto(6) {
        for a in 0..g.n() {
            for b in 0..g.n() {
                if a != b {
                    assert_eq!(g.second_move(a, b).nondegeneracy(), g.nondegeneracy());
                }
            }
        }
    }
}

#[test]
fn second_move_is_a_congruence() {
    for g in graph_classes_upto(4) {
        for frame in 0u32..(1 << g.n()) {
            let mut h = g.clone();
            for v in 0..g.n() {
                h.set_framing(v, (frame >> v & 1) as u8);
            }
            for a in 0..h.n() {
                for b in 0..h.n() {
                    if a != b {
                        assert_eq!(matrix(&h.second_move(a, b)), congruence(&matrix(&h), a, b));
                        assert_eq!(h.second_move(a, b).nondegeneracy(), h.nondegeneracy());
                    }
                }
            }
        }
    }
}

#[test]
fn odd_unframed_graphs_are_degenerate() {
    for n in [1, 3, 5] {
        for g in graph_classes(n) {
            assert_eq!(g.nondegeneracy(), 0, "{:?}", g.edges());
        }
    }
}

#[test]
fn json_roundtrip() {
    for g in graph_classes_upto(4) {
        let s = serde_json::to_string(&g.to_json()).unwrap();
        let back = FramedGraph::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}

#[test]
fn bound_is_enforced() {
    assert!(matches!(
        enumerate_graphs(MAX_ENUM_VERTICES + 1),
        Err(GraphError::BoundExceeded { .. })
    ));
}
