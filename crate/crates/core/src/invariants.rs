//! Graph and chord-diagram invariants.

use std::sync::OnceLock;

use dashmap::DashMap;

use crate::diagrams::ChordDiagram;
use crate::graphs::{bits, FramedGraph};
use crate::poly::{rat, MPoly, Monomial, Var};
use crate::ribbon::RibbonGraph;

fn cache(slot: &'static OnceLock<DashMap<FramedGraph, MPoly>>) -> &'static DashMap<FramedGraph, MPoly> {
    slot.get_or_init(DashMap::new)
}

fn first_edge(g: &FramedGraph) -> Option<(usize, usize)> {
    (0..g.n()).find_map(|v| {
        let nb = g.neighbors(v);
        (nb != 0).then(|| (v, nb.trailing_zeros() as usize))
    })
}

/// Product of an invariant over connected components.
fn over_components<F: Fn(&FramedGraph) -> MPoly>(g: &FramedGraph, f: F) -> Option<MPoly> {
    let comps = g.components();
    if comps.len() <= 1 {
        return None;
    }
    let mut acc = MPoly::one();
    for m in comps {
        acc = &acc * &f(&g.induced(m));
    }
    Some(acc)
}

/// Chromatic polynomial in `c` by deletion-contraction.
pub fn chromatic(g: &FramedGraph) -> MPoly {
    static MEMO: OnceLock<DashMap<FramedGraph, MPoly>> = OnceLock::new();
    let key = g.unweighted().canonical();
    if let Some(v) = cache(&MEMO).get(&key) {
        return v.clone();
    }
    let val = match first_edge(&key) {
        None => MPoly::var_pow(Var::C, key.n() as i32),
        Some((a, b)) => over_components(&key, chromatic).unwrap_or_else(|| {
            let del = key.first_move(a, b);
            &chromatic(&del) - &chromatic(&key.contract(a, b))
        }),
    };
    cache(&MEMO).insert(key, val.clone());
    val
}

/// Weighted chromatic polynomial in `q_k`: `W_G = W_{G-e} + W_{G/e}`, with a
/// single vertex of weight `n` giving `q_n`.
pub fn weighted_chromatic(g: &FramedGraph) -> MPoly {
    static MEMO: OnceLock<DashMap<FramedGraph, MPoly>> = OnceLock::new();
    let mut key = g.canonical();
    for v in 0..key.n() {
        key.set_framing(v, 0);
    }
    let key = key.canonical();
    if let Some(v) = cache(&MEMO).get(&key) {
        return v.clone();
    }
    let val = match first_edge(&key) {
        None => edgeless_weighted(&key),
        Some((a, b)) => over_components(&key, weighted_chromatic).unwrap_or_else(|| {
            &weighted_chromatic(&key.first_move(a, b)) + &weighted_chromatic(&key.contract(a, b))
        }),
    };
    cache(&MEMO).insert(key, val.clone());
    val
}

fn edgeless_weighted(g: &FramedGraph) -> MPoly {
    let pairs = g.weights().iter().map(|&w| (Var::Q(w as u16), 1)).collect();
    MPoly::monomial(Monomial::from_pairs(pairs), rat(1))
}

/// The weighted recursion with a caller-chosen edge at every step and no
/// memoization; used to check order independence.
pub fn weighted_chromatic_by<F>(g: &FramedGraph, pick: &F) -> MPoly
where
    F: Fn(&FramedGraph) -> Option<(usize, usize)>,
{
    match pick(g) {
        None => edgeless_weighted(g),
        Some((a, b)) => {
            &weighted_chromatic_by(&g.first_move(a, b), pick)
                + &weighted_chromatic_by(&g.contract(a, b), pick)
        }
    }
}

/// Stanley's symmetrized chromatic polynomial in `p_k` by the subset
/// expansion `S_G = Σ_{A⊆E} (-1)^{|A|} p_{λ(A)}`.
pub fn stanley(g: &FramedGraph) -> MPoly {
    let edges = g.edges();
    let n = g.n();
    let mut out = MPoly::zero();
    for mask in 0u64..(1u64 << edges.len()) {
        let mut sub = FramedGraph::edgeless(n);
        for (i, &(a, b)) in edges.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                sub.set_edge(a, b, true);
            }
        }
        let pairs = sub
            .components()
            .into_iter()
            .map(|c| (Var::P(c.count_ones() as u16), 1))
            .collect();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.add_term(Monomial::from_pairs(pairs), rat(sign));
    }
    out
}

/// Sign rule relating Stanley's polynomial to the weighted chromatic one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StanleySign {
    /// `p_k = (-1)^{k-1} q_k`
    PerVariable,
    /// `p_k = (-1)^{n-k} q_k`, `n` the number of vertices
    ByOrder,
}

pub fn stanley_in_q(s: &MPoly, n: usize, rule: StanleySign) -> MPoly {
    let mut map = std::collections::BTreeMap::new();
    for v in s.variables() {
        if let Var::P(k) = v {
            let e = match rule {
                StanleySign::PerVariable => k as i64 - 1,
                StanleySign::ByOrder => n as i64 - k as i64,
            };
            let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
            map.insert(v, MPoly::var(Var::Q(k)).scale(&rat(sign)));
        }
    }
    s.substitute(&map)
}

/// Abel polynomial: sum over spanning forests of `∏ (size·q_size)` over trees.
pub fn abel(g: &FramedGraph) -> MPoly {
    let edges = g.edges();
    let n = g.n();
    let mut out = MPoly::zero();
    let mut parent = vec![0usize; n];
    'subsets: for mask in 0u64..(1u64 << edges.len()) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut sub = FramedGraph::edgeless(n);
        for (i, &(a, b)) in edges.iter().enumerate() {
            if (mask >> i) & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    continue 'subsets;
                }
                parent[ra] = rb;
                sub.set_edge(a, b, true);
            }
        }
        let mut coeff = 1i64;
        let mut pairs = Vec::new();
        for c in sub.components() {
            let k = c.count_ones();
            coeff *= k as i64;
            pairs.push((Var::Q(k as u16), 1));
        }
        out.add_term(Monomial::from_pairs(pairs), rat(coeff));
    }
    out
}

/// Interlace polynomial: `L_G = L_{G∖a} + L_{G^{ab}∖b}`, `x^n` on edgeless graphs.
pub fn interlace(g: &FramedGraph) -> MPoly {
    static MEMO: OnceLock<DashMap<FramedGraph, MPoly>> = OnceLock::new();
    let key = g.unweighted().canonical();
    if let Some(v) = cache(&MEMO).get(&key) {
        return v.clone();
    }
    let val = match first_edge(&key) {
        None => MPoly::var_pow(Var::X, key.n() as i32),
        Some((a, b)) => over_components(&key, interlace).unwrap_or_else(|| {
            let piv = key.pivot(a, b).expect("edge exists");
            &interlace(&key.remove_vertex(a)) + &interlace(&piv.remove_vertex(b))
        }),
    };
    cache(&MEMO).insert(key, val.clone());
    val
}

/// The pivot recursion along a caller-chosen edge, without memoization.
pub fn interlace_by<F>(g: &FramedGraph, pick: &F) -> MPoly
where
    F: Fn(&FramedGraph) -> Option<(usize, usize)>,
{
    match pick(g) {
        None => MPoly::var_pow(Var::X, g.n() as i32),
        Some((a, b)) => {
            let piv = g.pivot(a, b).expect("edge exists");
            &interlace_by(&g.remove_vertex(a), pick) + &interlace_by(&piv.remove_vertex(b), pick)
        }
    }
}

/// Skew characteristic polynomial `Q_G(u) = Σ_U ν(G|_U) u^{|V|-|U|}`.
pub fn skew_characteristic(g: &FramedGraph) -> MPoly {
    let n = g.n();
    let mut out = MPoly::zero();
    for mask in 0u32..(1u32 << n) {
        if g.induced(mask).nondegeneracy() == 1 {
            out.add_term(Monomial::var(Var::U, (n - mask.count_ones() as usize) as i32), rat(1));
        }
    }
    out
}

/// State weights of the transition polynomial.
#[derive(Clone, Debug)]
pub struct TransitionWeights {
    /// chord kept as an untwisted ribbon
    pub phi: MPoly,
    /// chord kept as a twisted ribbon
    pub chi: MPoly,
    /// chord deleted
    pub psi: MPoly,
}

impl TransitionWeights {
    /// `w(χ)=t, w(φ)=-t, w(ψ)=s`, the choice making the transition
    /// polynomial a weight system.
    pub fn weight_system() -> Self {
        TransitionWeights {
            phi: MPoly::var(Var::T).scale(&rat(-1)),
            chi: MPoly::var(Var::T),
            psi: MPoly::var(Var::S),
        }
    }
}

/// `T_C(x) = Σ_s ∏ w(s(v)) x^{c(s)-1}` over all `3^n` states.
pub fn transition_chord(d: &ChordDiagram, w: &TransitionWeights) -> MPoly {
    let n = d.n();
    let base = RibbonGraph::from_chord_diagram(d);
    let mut out = MPoly::zero();
    let mut state = vec![0u8; n];
    loop {
        let mut keep = Vec::new();
        let mut weight = MPoly::one();
        let mut r = base.clone();
        for (k, &s) in state.iter().enumerate() {
            match s {
                0 => {
                    keep.push(k);
                    weight = &weight * &w.phi;
                }
                1 => {
                    keep.push(k);
                    r.edges[k].2 ^= 1;
                    weight = &weight * &w.chi;
                }
                _ => weight = &weight * &w.psi,
            }
        }
        let sub = r.spanning_subgraph(&keep).expect("valid edge indices");
        let c = sub.boundary_components() as i32;
        out += &weight.mul_monomial(&Monomial::var(Var::X, c - 1));
        // next state in base 3
        let mut i = 0;
        while i < n {
            state[i] += 1;
            if state[i] < 3 {
                break;
            }
            state[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
    }
    out
}

/// Number of spanning trees by the matrix-tree theorem over the integers.
pub fn spanning_tree_count(g: &FramedGraph) -> i128 {
    let n = g.n();
    if n <= 1 {
        return 1;
    }
    let mut m = vec![vec![num_rational::Ratio::<i128>::from_integer(0); n - 1]; n - 1];
    for i in 0..n - 1 {
        m[i][i] = num_rational::Ratio::from_integer(g.degree(i) as i128);
        for j in bits(g.neighbors(i)) {
            if j < n - 1 {
                m[i][j] = num_rational::Ratio::from_integer(-1);
            }
        }
    }
    let k = n - 1;
    let mut det = num_rational::Ratio::from_integer(1i128);
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| m[r][col] != num_rational::Ratio::from_integer(0)) else {
            return 0;
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col];
        for r in (col + 1)..k {
            let f = m[r][col] / m[col][col];
            for c in col..k {
                let v = m[col][c] * f;
                m[r][c] -= v;
            }
        }
    }
    *det.numer() / *det.denom()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly as p;

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic(&FramedGraph::edgeless(3)), p("c^3").unwrap());
        assert_eq!(chromatic(&FramedGraph::path(4)), p("c(c-1)^3").unwrap());
        assert_eq!(chromatic(&FramedGraph::complete(3)), p("c(c-1)(c-2)").unwrap());
    }

    #[test]
    fn weighted_examples() {
        let one = FramedGraph::edgeless(1).with_weights(vec![3]);
        assert_eq!(weighted_chromatic(&one), p("q_3").unwrap());
        assert_eq!(weighted_chromatic(&FramedGraph::complete(2)), p("q_1^2+q_2").unwrap());
        assert_eq!(
            weighted_chromatic(&FramedGraph::complete(3)),
            p("q_1^3+3q_1q_2+2q_3").unwrap()
        );
    }

    #[test]
    fn stanley_examples() {
        assert_eq!(stanley(&FramedGraph::edgeless(1)), p("p_1").unwrap());
        assert_eq!(stanley(&FramedGraph::complete(2)), p("p_1^2-p_2").unwrap());
        assert_eq!(
            stanley(&FramedGraph::complete(3)),
            p("p_1^3-3p_1p_2+2p_3").unwrap()
        );
    }

    #[test]
    fn abel_examples() {
        assert_eq!(abel(&FramedGraph::edgeless(1)), p("q_1").unwrap());
        assert_eq!(abel(&FramedGraph::complete(2)), p("q_1^2+2q_2").unwrap());
        let a = abel(&FramedGraph::complete(3));
        let mut m = std::collections::BTreeMap::new();
        for k in 1..=3 {
            m.insert(Var::Q(k), MPoly::var(Var::X));
        }
        assert_eq!(a.substitute(&m), p("x(x+3)^2").unwrap());
    }

    #[test]
    fn interlace_examples() {
        assert_eq!(interlace(&FramedGraph::edgeless(4)), p("x^4").unwrap());
        assert_eq!(interlace(&FramedGraph::complete(2)), p("2x").unwrap());
        assert_eq!(interlace(&FramedGraph::path(3)), p("x^2+2x").unwrap());
    }

    #[test]
    fn skew_examples() {
        assert_eq!(skew_characteristic(&FramedGraph::edgeless(1)), p("u").unwrap());
        assert_eq!(skew_characteristic(&FramedGraph::complete(2)), p("u^2+1").unwrap());
        let mut f = FramedGraph::edgeless(1);
        f.set_framing(0, 1);
        assert_eq!(skew_characteristic(&f), p("u+1").unwrap());
    }

    #[test]
    fn transition_examples() {
        let w = TransitionWeights::weight_system();
        assert_eq!(transition_chord(&ChordDiagram::empty(), &w), MPoly::one());
        assert_eq!(
            transition_chord(&ChordDiagram::complete(1), &w),
            p("-t x+t+s").unwrap()
        );
    }

    #[test]
    fn tree_counts() {
        assert_eq!(spanning_tree_count(&FramedGraph::complete(4)), 16);
        assert_eq!(spanning_tree_count(&FramedGraph::cycle(5)), 5);
    }
}
