use proptest::prelude::*;
use weightsys_core::diagrams::*;
use weightsys_core::graphs::graph_classes_upto;
use weightsys_core::invariants::{transition_chord, TransitionWeights};
use weightsys_core::lie::{w_gl_diagram, w_sl2};
use weightsys_core::{ChordDiagram, MPoly, Var};

fn alternating(q: &[ChordDiagram; 4], f: &dyn Fn(&ChordDiagram) -> MPoly) -> MPoly {
    &(&(&f(&q[0]) - &f(&q[1])) - &f(&q[2])) + &f(&q[3])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_rotation_invariant(n in 1usize..=6, pick in 0usize..10_000, k in 0usize..12) {
        let ds = enumerate_diagrams(n, false).unwrap();
        let d = &ds[pick % ds.len()];
        let r = d.rotate(k % (2 * n));
        prop_assert_eq!(r.canonical(), d.canonical());
        prop_assert_eq!(r.canonical().canonical(), r.canonical());
        prop_assert!(d.is_canonical());
    }
}

#[test]
fn enumeration_counts() {
    let counts = [1, 1, 2, 5, 18, 105];
    for (n, &c) in counts.iter().enumerate() {
        assert_eq!(enumerate_diagrams(n, false).unwrap().len(), c, "n = {n}");
    }
    assert!(matches!(
        enumerate_diagrams(DEFAULT_MAX_CHORDS + 1, false),
        Err(DiagramError::BoundExceeded { .. })
    ));
}

#[test]
fn four_term_under_weight_systems() {
    let tw = TransitionWeights::weight_system();
    let two = MPoly::int(2);
    let systems: [(&str, Box<dyn Fn(&ChordDiagram) -> MPoly>); 3] = [
        ("sl2", Box::new(w_sl2)),
        ("gl at N=2", Box::new(move |d| w_gl_diagram(d).subst1(Var::N, &two))),
        ("transition", Box::new(move |d| transition_chord(d, &tw))),
    ];
    for n in 2..=5 {
        for q in all_four_term_quadruples(n).unwrap() {
            for (name, f) in &systems {
                assert!(alternating(&q, f.as_ref()).is_zero(), "{name} at {:?}", q[0].word());
            }
        }
    }
}

#[test]
fn vassiliev_moves_commute() {
    for g in graph_classes_upto(5) {
        for a in 0..g.n() {
            for b in 0..g.n() {
                if a == b {
                    continue;
                }
                let one = g.first_move(a, b).second_move(a, b).canonical();
                let two = g.second_move(a, b).first_move(a, b).canonical();
                assert_eq!(one, two, "{:?} ({a},{b})", g.edges());
            }
        }
    }
}

#[test]
fn small_graphs_are_intersection_graphs() {
    for g in graph_classes_upto(5) {
        let w = realizable_as_intersection_graph(&g, DEFAULT_REALIZABILITY_VERTICES).unwrap();
        assert!(!w.is_empty(), "{:?}", g.edges());
        for d in w {
            assert_eq!(d.intersection_graph().canonical(), g.canonical());
        }
    }
}

#[test]
fn non_intersection_graphs_on_six_vertices() {
    use weightsys_core::graphs::graph_classes;
    let bad: Vec<_> = graph_classes(6)
        .into_iter()
        .filter(|g| {
            realizable_as_intersection_graph(g, DEFAULT_REALIZABILITY_VERTICES)
                .unwrap()
                .is_empty()
        })
        .collect();
    // the 5-wheel and the 3-prism, nothing else
    assert_eq!(bad.len(), 2);
    let path = realizable_as_intersection_graph(&weightsys_core::FramedGraph::path(5), 6).unwrap();
    assert_eq!(path.len(), 3);
}

#[test]
fn json_roundtrip() {
    for d in enumerate_diagrams(4, true).unwrap() {
        let j = serde_json::to_string(&d.to_json()).unwrap();
        let back = ChordDiagram::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, d);
    }
    let j: DiagramJson = serde_json::from_str(r#"{"n":3,"word":[1,2,1,3,2,3],"framing":[0,0,1]}"#).unwrap();
    let d = ChordDiagram::from_json(&j).unwrap();
    assert_eq!(d.n(), 3);
    assert!(d.is_framed());
}

#[test]
fn shares_close_up() {
    let s = Share::parallel(2);
    assert_eq!(s.closure().n(), 2);
    assert_eq!(s.with_parallel(3).n(), 5);
}

#[test]
fn diagram_quadruples_map_to_graph_quadruples() {
    for n in 2..=4 {
        for d in enumerate_diagrams(n, true).unwrap() {
            let g = d.intersection_graph();
            for q in d.all_four_term() {
                let want: Vec<_> = q.iter().map(|x| x.intersection_graph().canonical()).collect();
                let hit = (0..n).any(|a| {
                    (0..n).any(|b| {
                        a != b && g.four_term(a, b).iter().map(|x| x.canonical()).collect::<Vec<_>>() == want
                    })
                });
                assert!(hit, "{:?} {:?}", d.word(), d.framing());
            }
        }
    }
}
