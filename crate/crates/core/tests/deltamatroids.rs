use proptest::prelude::*;
use weightsys_core::deltamatroids::*;
use weightsys_core::diagrams::enumerate_diagrams;
use weightsys_core::graphs::{graph_classes, graph_classes_upto};
use weightsys_core::hopf::{coproduct, coproduct_basis, primitive_projection_basis, LinComb};
use weightsys_core::invariants::{interlace, transition_chord, TransitionWeights};
use weightsys_core::poly::rat;
use weightsys_core::{FramedGraph, MPoly, Rat, RibbonGraph, Var};

fn full(n: usize) -> u32 {
    (1u32 << n) - 1
}

fn alternating(q: &[DeltaMatroid; 4], f: fn(&DeltaMatroid) -> MPoly) -> MPoly {
    &(&(&f(&q[0]) - &f(&q[1])) - &f(&q[2])) + &f(&q[3])
}

/// Twisted graphic delta-matroids on up to `max_n` elements.
fn even_binary_up_to(max_n: usize) -> Vec<DeltaMatroid> {
    (1..=max_n).flat_map(even_binary_classes).collect()
}

#[test]
fn graph_and_ribbon_delta_matroids_satisfy_the_axiom() {
    for g in graph_classes_upto(5) {
        let d = dm_from_graph(&g);
        assert!(d.is_delta_matroid(), "{:?}", g.edges());
        assert!(d.is_even());
    }
    for n in 1..=4 {
        for c in enumerate_diagrams(n, false).unwrap() {
            assert!(dm_from_ribbon(&RibbonGraph::from_chord_diagram(&c)).unwrap().is_delta_matroid());
        }
    }
}

/// Symmetric exchange spelled out on explicit sets.
fn naive_axiom(n: usize, fam: &[u32]) -> bool {
    use std::collections::BTreeSet;
    let sets: Vec<BTreeSet<usize>> = fam
        .iter()
        .map(|&x| (0..n).filter(|i| x >> i & 1 == 1).collect())
        .collect();
    let has = |s: &BTreeSet<usize>| sets.contains(s);
    sets.iter().all(|x| {
        sets.iter().all(|y| {
            let diff: BTreeSet<usize> = x.symmetric_difference(y).copied().collect();
            diff.iter().all(|&u| {
                diff.iter().any(|&v| {
                    let mut z = x.clone();
                    for w in BTreeSet::from([u, v]) {
                        if !z.remove(&w) {
                            z.insert(w);
                        }
                    }
                    has(&z)
                })
            })
        })
    })
}

#[test]
fn axiom_check_matches_naive_exchange() {
    assert!(!DeltaMatroid::new(3, [0, 0b111]).unwrap().is_delta_matroid());
    assert!(DeltaMatroid::new(2, [0, 0b11]).unwrap().is_delta_matroid());
    for n in 1..=3usize {
        let sets = 1u32 << n;
        let mut count = 0;
        for fam_mask in 1u32..(1 << sets) {
            let fam: Vec<u32> = (0..sets).filter(|x| fam_mask >> x & 1 == 1).collect();
            let d = DeltaMatroid::new(n, fam.iter().copied()).unwrap();
            assert_eq!(d.is_delta_matroid(), naive_axiom(n, &fam), "{fam:?}");
            count += d.is_delta_matroid() as usize;
        }
        if n >= 3 {
            assert!(count < (1 << sets) - 1);
        }
    }
}

#[test]
fn a_framed_vertex_breaks_evenness() {
    for g in graph_classes_upto(4).into_iter().filter(|g| g.n() > 0) {
        let mut h = g.clone();
        h.set_framing(0, 1);
        let d = dm_from_graph(&h);
        assert!(d.is_delta_matroid());
        assert!(!d.is_even(), "{:?}", g.edges());
    }
}

#[test]
fn chord_diagram_and_intersection_graph_agree() {
    for n in 1..=5 {
        for c in enumerate_diagrams(n, false).unwrap() {
            let a = dm_from_ribbon(&RibbonGraph::from_chord_diagram(&c)).unwrap();
            assert_eq!(a, dm_from_graph(&c.intersection_graph()), "{:?}", c.word());
        }
    }
}

#[test]
fn full_dual_is_the_full_twist() {
    for n in 1..=4 {
        for c in enumerate_diagrams(n, false).unwrap() {
            let r = RibbonGraph::from_chord_diagram(&c);
            let d = dm_from_ribbon(&r).unwrap();
            let dual = dm_from_ribbon(&r.dual().unwrap()).unwrap();
            assert_eq!(dual, d.twist(full(n)).unwrap(), "{:?}", c.word());
        }
    }
}

#[test]
fn disconnected_ribbon_is_rejected() {
    let r = RibbonGraph::new(vec![vec![], vec![]], vec![]).unwrap();
    assert_eq!(dm_from_ribbon(&r), Err(DmError::Disconnected));
}

#[test]
fn dual_pivot_formulas_agree() {
    for d in even_binary_up_to(4) {
        for u in 0..d.n() {
            assert_eq!(d.dual_pivot(u), d.dual_pivot_alt(u), "{:?}", d.feasible());
        }
    }
}

#[test]
fn interlace_shift_relation() {
    let x = MPoly::var(Var::X);
    let plus = &x + &MPoly::one();
    let minus = &x - &MPoly::one();
    for g in graph_classes_upto(5).into_iter().filter(|g| g.n() > 0) {
        let l = interlace(&g);
        let ld = interlace_dm(&dm_from_graph(&g));
        assert_eq!(ld, l.subst1(Var::X, &plus));
        assert_ne!(ld, l.subst1(Var::X, &minus));
    }
}

#[test]
fn four_term_relations_on_graph_delta_matroids() {
    let invariants: [(&str, fn(&DeltaMatroid) -> MPoly); 4] = [
        ("interlace", interlace_dm),
        ("transition", transition_dm),
        ("skew characteristic", skew_char_dm),
        ("stanley", stanley_dm),
    ];
    for g in graph_classes_upto(4) {
        let d = dm_from_graph(&g);
        for a in 0..g.n() {
            for b in 0..g.n() {
                if a == b {
                    continue;
                }
                let q = d.four_term(a, b).unwrap();
                for (name, f) in invariants {
                    assert!(alternating(&q, f).is_zero(), "{name} at {:?} ({a},{b})", g.edges());
                }
            }
        }
    }
}

#[test]
fn four_term_quadruples_follow_the_graph_moves() {
    for g in graph_classes_upto(5) {
        let d = dm_from_graph(&g);
        for a in 0..g.n() {
            for b in 0..g.n() {
                if a != b {
                    let want = g.four_term(a, b).map(|h| dm_from_graph(&h));
                    assert_eq!(d.four_term(a, b).unwrap(), want);
                }
            }
        }
    }
}

#[test]
fn transition_four_term_on_twists() {
    for d in even_binary_up_to(4) {
        for a in 0..d.n() {
            for b in 0..d.n() {
                if a != b {
                    let q = d.four_term(a, b).unwrap();
                    assert!(alternating(&q, transition_dm).is_zero(), "{:?}", d.feasible());
                }
            }
        }
    }
}

#[test]
fn unsigned_transition_is_not_a_four_invariant() {
    let failing = even_binary_up_to(3)
        .iter()
        .flat_map(|d| {
            let n = d.n();
            (0..n).flat_map(move |a| (0..n).filter(move |&b| b != a).map(move |b| d.four_term(a, b).unwrap()))
        })
        .filter(|q| !alternating(q, transition_dm_unsigned).is_zero())
        .count();
    assert!(failing > 0);
}

#[test]
fn transition_matches_chord_transition() {
    let w = TransitionWeights::weight_system();
    for n in 0..=4 {
        for c in enumerate_diagrams(n, false).unwrap() {
            assert_eq!(
                transition_dm(&dm_from_graph(&c.intersection_graph())),
                transition_chord(&c, &w),
                "{:?}",
                c.word()
            );
        }
    }
}

#[test]
fn stanley_character_values() {
    let x = MPoly::var(Var::X);
    let a = DeltaMatroid::new(1, [0]).unwrap();
    let b = DeltaMatroid::new(1, [1]).unwrap();
    assert_eq!(stanley_character(&a), MPoly::one());
    assert_eq!(stanley_character(&b), x);
    assert!(stanley_character(&dm_from_graph(&FramedGraph::complete(2))).is_zero());
    assert_eq!(stanley_character(&a.product(&b)), x);
}

#[test]
fn hopf_compatibility() {
    let ds = even_binary_up_to(2);
    for a in &ds {
        for b in &ds {
            let prod = LinComb::basis(a).product(&LinComb::basis(b));
            assert_eq!(coproduct(&prod), coproduct_basis(a).product(&coproduct_basis(b)));
        }
    }
}

/// Rank over Q of a list of polynomials in `x`.
fn rank_in_x(values: &[MPoly], max_deg: usize) -> usize {
    let mut rows: Vec<Vec<Rat>> = values
        .iter()
        .map(|p| (0..=max_deg).map(|k| p.coeff(&weightsys_core::Monomial::var(Var::X, k as i32))).collect())
        .collect();
    let mut rank = 0;
    for col in 0..=max_deg {
        if let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != rat(0)) {
            rows.swap(rank, piv);
            let pr = rows[rank].clone();
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != rat(0) {
                    let f = &rows[r][col] / &pr[col];
                    for k in 0..=max_deg {
                        let sub = &f * &pr[k];
                        rows[r][k] -= sub;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

#[test]
fn interlace_values_on_primitive_delta_matroids() {
    // observed dimensions; interlace is twist invariant, so at n = 2 both
    // connected classes project to 1 - x^2
    let expected = [1, 1, 2, 3];
    for (i, &want) in expected.iter().enumerate() {
        let n = i + 1;
        let values: Vec<MPoly> = even_binary_classes(n)
            .iter()
            .map(|d| primitive_projection_basis(d).evaluate(interlace_dm))
            .collect();
        assert_eq!(rank_in_x(&values, n), want, "n = {n}");
    }
}

#[test]
fn even_binary_class_counts() {
    let counts: Vec<usize> = (1..=3).map(|n| even_binary_classes(n).len()).collect();
    assert_eq!(counts[0], 2);
    assert_eq!(counts[1], 5);
    for d in even_binary_up_to(3) {
        assert!(d.is_even() && d.is_delta_matroid());
    }
}

#[test]
fn json_roundtrip_and_errors() {
    let j: DmJson = serde_json::from_str(r#"{"ground":["a","b"],"feasible":[[],["a","b"]]}"#).unwrap();
    let d = DeltaMatroid::from_json(&j).unwrap();
    assert_eq!(d, dm_from_graph(&FramedGraph::complete(2)));
    assert_eq!(DeltaMatroid::from_json(&d.to_json()).unwrap(), d);
    let bad: DmJson = serde_json::from_str(r#"{"ground":["a"],"feasible":[["z"]]}"#).unwrap();
    assert_eq!(DeltaMatroid::from_json(&bad), Err(DmError::UnknownElement("z".into())));
    assert_eq!(DeltaMatroid::new(2, [4]), Err(DmError::NotSubset));
    assert_eq!(d.twist(8), Err(DmError::NotSubset));
    assert!(matches!(DeltaMatroid::new(17, [0]), Err(DmError::TooLarge(17))));
}

#[test]
fn restriction_examples() {
    let d = dm_from_graph(&FramedGraph::complete(2));
    assert_eq!(d.restrict(1), Some(DeltaMatroid::new(1, [0]).unwrap()));
    let odd = DeltaMatroid::new(2, [1, 2]).unwrap();
    assert_eq!(odd.restrict(0), None);
    // deletion contracts coloops
    let c = DeltaMatroid::new(1, [1]).unwrap();
    assert_eq!(c.delete(0), DeltaMatroid::new(0, [0]).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twist_is_an_involution(n in 1usize..=5, pick in 0usize..1000, u in any::<u32>()) {
        let gs = graph_classes(n);
        let d = dm_from_graph(&gs[pick % gs.len()]);
        let u = u & full(n);
        let t = d.twist(u).unwrap();
        prop_assert_eq!(t.twist(u).unwrap(), d.clone());
        prop_assert!(t.is_delta_matroid());
        prop_assert_eq!(interlace_dm(&t), interlace_dm(&d));
    }
}
