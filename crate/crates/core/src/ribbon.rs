//! Ribbon graphs with optional half-twists.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagrams::ChordDiagram;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RibbonError {
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("malformed ribbon graph")]
    Malformed,
    #[error("dual is only implemented for untwisted ribbon graphs")]
    Twisted,
}

/// `vertices[v]` lists half-edge ids in cyclic order around `v`;
/// `edges[e] = (h1, h2, twist)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RibbonGraph {
    pub vertices: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize, u8)>,
}

struct Tables {
    partner: Vec<usize>,
    twist: Vec<u8>,
    succ: Vec<usize>,
    pred: Vec<usize>,
    vertex_of: Vec<usize>,
}

impl RibbonGraph {
    pub fn new(vertices: Vec<Vec<usize>>, edges: Vec<(usize, usize, u8)>) -> Result<Self, RibbonError> {
        let r = RibbonGraph { vertices, edges };
        r.tables()?;
        Ok(r)
    }

    pub fn disk() -> Self {
        RibbonGraph {
            vertices: vec![vec![]],
            edges: vec![],
        }
    }

    fn half_edge_count(&self) -> usize {
        self.vertices.iter().map(|v| v.len()).sum()
    }

    fn tables(&self) -> Result<Tables, RibbonError> {
        let h = self.half_edge_count();
        let none = usize::MAX;
        let mut t = Tables {
            partner: vec![none; h],
            twist: vec![0; h],
            succ: vec![none; h],
            pred: vec![none; h],
            vertex_of: vec![none; h],
        };
        for (v, cyc) in self.vertices.iter().enumerate() {
            for (i, &x) in cyc.iter().enumerate() {
                if x >= h || t.vertex_of[x] != none {
                    return Err(RibbonError::Malformed);
                }
                t.vertex_of[x] = v;
                t.succ[x] = cyc[(i + 1) % cyc.len()];
                t.pred[x] = cyc[(i + cyc.len() - 1) % cyc.len()];
            }
        }
        for &(a, b, tw) in &self.edges {
            if a >= h || b >= h || a == b || t.partner[a] != none || t.partner[b] != none {
                return Err(RibbonError::Malformed);
            }
            t.partner[a] = b;
            t.partner[b] = a;
            t.twist[a] = tw & 1;
            t.twist[b] = tw & 1;
        }
        if t.partner.contains(&none) {
            return Err(RibbonError::Malformed);
        }
        Ok(t)
    }

    /// Orbits of the side-marked boundary walk on `(half-edge, side)`.
    fn walk_orbits(&self) -> Vec<Vec<(usize, u8)>> {
        let t = self.tables().expect("validated at construction");
        let h = self.half_edge_count();
        let mut seen = vec![[false; 2]; h];
        let mut out = Vec::new();
        for start in 0..h {
            for side in 0..2u8 {
                if seen[start][side as usize] {
                    continue;
                }
                let mut orbit = Vec::new();
                let (mut x, mut s) = (start, side);
                while !seen[x][s as usize] {
                    seen[x][s as usize] = true;
                    orbit.push((x, s));
                    let y = t.partner[x];
                    let s2 = s ^ t.twist[x];
                    x = if s2 == 0 { t.succ[y] } else { t.pred[y] };
                    s = s2;
                }
                out.push(orbit);
            }
        }
        out
    }

    /// Number of boundary components of the surface.
    pub fn boundary_components(&self) -> usize {
        let isolated = self.vertices.iter().filter(|v| v.is_empty()).count();
        // every boundary circle is traced once in each direction
        self.walk_orbits().len() / 2 + isolated
    }

    /// Connected components of the underlying graph.
    pub fn components(&self) -> usize {
        let n = self.vertices.len();
        let t = match self.tables() {
            Ok(t) => t,
            Err(_) => return 0,
        };
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(a, b, _) in &self.edges {
            let (ra, rb) = (find(&mut parent, t.vertex_of[a]), find(&mut parent, t.vertex_of[b]));
            parent[ra] = rb;
        }
        (0..n).filter(|&v| find(&mut parent, v) == v).count()
    }

    pub fn from_chord_diagram(d: &ChordDiagram) -> RibbonGraph {
        let len = d.word().len();
        let edges = d
            .ends()
            .into_iter()
            .enumerate()
            .map(|(k, (a, b))| (a, b, d.framing()[k]))
            .collect();
        RibbonGraph {
            vertices: vec![(0..len).collect()],
            edges,
        }
    }

    /// Keep only the edges listed in `keep` (indices into `edges`); half-edges
    /// are renumbered.
    pub fn spanning_subgraph(&self, keep: &[usize]) -> Result<RibbonGraph, RibbonError> {
        for &e in keep {
            if e >= self.edges.len() {
                return Err(RibbonError::UnknownEdge(e));
            }
        }
        let h = self.half_edge_count();
        let mut kept = vec![false; h];
        let mut edges_kept: Vec<usize> = keep.to_vec();
        edges_kept.sort();
        edges_kept.dedup();
        for &e in &edges_kept {
            kept[self.edges[e].0] = true;
            kept[self.edges[e].1] = true;
        }
        let mut renum = vec![usize::MAX; h];
        let mut next = 0;
        let vertices = self
            .vertices
            .iter()
            .map(|cyc| {
                cyc.iter()
                    .filter(|&&x| kept[x])
                    .map(|&x| {
                        renum[x] = next;
                        next += 1;
                        renum[x]
                    })
                    .collect()
            })
            .collect();
        let edges = edges_kept
            .iter()
            .map(|&e| {
                let (a, b, t) = self.edges[e];
                (renum[a], renum[b], t)
            })
            .collect();
        Ok(RibbonGraph { vertices, edges })
    }

    /// Full dual of an untwisted ribbon graph: faces become vertices, each
    /// carrying the half-edges met along its boundary walk.
    pub fn dual(&self) -> Result<RibbonGraph, RibbonError> {
        if self.edges.iter().any(|e| e.2 != 0) {
            return Err(RibbonError::Twisted);
        }
        let vertices: Vec<Vec<usize>> = self
            .walk_orbits()
            .into_iter()
            .filter(|o| o[0].1 == 0)
            .map(|o| o.into_iter().map(|(x, _)| x).collect())
            .collect();
        let isolated = self.vertices.iter().filter(|v| v.is_empty()).count();
        let mut vertices = vertices;
        vertices.extend(std::iter::repeat_n(Vec::new(), isolated));
        RibbonGraph::new(vertices, self.edges.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_examples() {
        assert_eq!(RibbonGraph::disk().boundary_components(), 1);
        let loop0 = RibbonGraph::new(vec![vec![0, 1]], vec![(0, 1, 0)]).unwrap();
        assert_eq!(loop0.boundary_components(), 2);
        let loop1 = RibbonGraph::new(vec![vec![0, 1]], vec![(0, 1, 1)]).unwrap();
        assert_eq!(loop1.boundary_components(), 1);
    }

    #[test]
    fn from_diagrams() {
        let k1 = RibbonGraph::from_chord_diagram(&ChordDiagram::complete(1));
        assert_eq!(k1.boundary_components(), 2);
        let k2 = RibbonGraph::from_chord_diagram(&ChordDiagram::complete(2));
        assert_eq!(k2.boundary_components(), 1);
        assert_eq!(
            RibbonGraph::from_chord_diagram(&ChordDiagram::empty()).boundary_components(),
            1
        );
        assert_eq!(k2.spanning_subgraph(&[0]).unwrap().boundary_components(), 2);
        assert_eq!(k2.spanning_subgraph(&[0, 1]).unwrap(), k2);
        assert_eq!(k2.spanning_subgraph(&[]).unwrap().boundary_components(), 1);
        assert_eq!(k2.spanning_subgraph(&[5]), Err(RibbonError::UnknownEdge(5)));
    }
}
