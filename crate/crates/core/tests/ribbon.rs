use weightsys_core::diagrams::enumerate_diagrams;
use weightsys_core::RibbonGraph;

#[test]
fn one_boundary_iff_nondegenerate() {
    for n in 0..=5 {
        for d in enumerate_diagrams(n, false).unwrap() {
            let r = RibbonGraph::from_chord_diagram(&d);
            let nu = d.intersection_graph().nondegeneracy();
            assert_eq!(r.boundary_components() == 1, nu == 1, "{:?}", d.word());
        }
    }
}

#[test]
fn euler_characteristic_parity() {
    for n in 1..=4 {
        for d in enumerate_diagrams(n, false).unwrap() {
            let r = RibbonGraph::from_chord_diagram(&d);
            for mask in 0u32..(1 << n) {
                let keep: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let s = r.spanning_subgraph(&keep).unwrap();
                let chi = 2 * s.components() as i64 + keep.len() as i64
                    - 1
                    - s.boundary_components() as i64;
                assert_eq!(chi % 2, 0, "{:?} {keep:?}", d.word());
            }
        }
    }
}

#[test]
fn dual_of_plane_ribbons() {
    // a one-vertex ribbon graph with no crossings is planar: its dual has
    // n + 1 vertices and one boundary component
    for n in 0..=4 {
        let d = weightsys_core::ChordDiagram::nested(n);
        let r = RibbonGraph::from_chord_diagram(&d);
        assert_eq!(r.boundary_components(), n + 1);
        let dual = r.dual().unwrap();
        assert_eq!(dual.boundary_components(), 1);
    }
}
