//! Chord diagrams, shares and permutations.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::FramedGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed word: every label must occur exactly twice")]
    MalformedWord,
    #[error("chords {0} and {1} have no neighboring ends")]
    NotNeighboring(usize, usize),
    #[error("requested size {got} exceeds the bound {bound}")]
    BoundExceeded { got: usize, bound: usize },
    #[error("framing length does not match the chord count")]
    BadFraming,
}

pub const DEFAULT_MAX_CHORDS: usize = 7;
pub const STRETCH_MAX_CHORDS: usize = 9;

/// Cyclic word of `2n` endpoint labels `0..n`, each label occurring twice.
/// `framing[k]` is the framing of chord `k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordDiagram {
    word: Vec<u8>,
    framing: Vec<u8>,
}

impl ChordDiagram {
    pub fn new(word: Vec<usize>) -> Result<Self, DiagramError> {
        Self::framed(word, None)
    }

    /// Labels in `word` are arbitrary; they are compacted to `0..n` in order
    /// of first occurrence. `framing` is indexed by the compacted labels.
    pub fn framed(word: Vec<usize>, framing: Option<Vec<u8>>) -> Result<Self, DiagramError> {
        if word.len() % 2 != 0 {
            return Err(DiagramError::MalformedWord);
        }
        let n = word.len() / 2;
        let mut seen: Vec<(usize, u8, usize)> = Vec::new();
        let mut out = Vec::with_capacity(word.len());
        for &l in &word {
            match seen.iter_mut().find(|e| e.0 == l) {
                Some(e) => {
                    e.2 += 1;
                    out.push(e.1);
                }
                None => {
                    let id = seen.len() as u8;
                    seen.push((l, id, 1));
                    out.push(id);
                }
            }
        }
        if seen.len() != n || seen.iter().any(|e| e.2 != 2) {
            return Err(DiagramError::MalformedWord);
        }
        let framing = match framing {
            None => vec![0; n],
            Some(f) if f.len() == n => f.into_iter().map(|b| b & 1).collect(),
            Some(_) => return Err(DiagramError::BadFraming),
        };
        Ok(ChordDiagram { word: out, framing })
    }

    /// Input labels are kept as given; labels must be `0..n`.
    fn raw(word: Vec<u8>, framing: Vec<u8>) -> Self {
        ChordDiagram { word, framing }
    }

    pub fn empty() -> Self {
        ChordDiagram::raw(vec![], vec![])
    }

    pub fn n(&self) -> usize {
        self.word.len() / 2
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn framing(&self) -> &[u8] {
        &self.framing
    }

    pub fn is_framed(&self) -> bool {
        self.framing.iter().any(|&f| f != 0)
    }

    /// Endpoint positions of every chord, smaller first.
    pub fn ends(&self) -> Vec<(usize, usize)> {
        let mut e = vec![(usize::MAX, usize::MAX); self.n()];
        for (p, &l) in self.word.iter().enumerate() {
            let x = &mut e[l as usize];
            if x.0 == usize::MAX {
                x.0 = p;
            } else {
                x.1 = p;
            }
        }
        e
    }

    pub fn crosses(&self, a: usize, b: usize) -> bool {
        let e = self.ends();
        crossing(e[a], e[b])
    }

    pub fn rotate(&self, k: usize) -> ChordDiagram {
        let len = self.word.len();
        if len == 0 {
            return self.clone();
        }
        let w: Vec<u8> = (0..len).map(|i| self.word[(i + k) % len]).collect();
        ChordDiagram::raw(w, self.framing.clone())
    }

    /// Relabel by first occurrence.
    fn normalized(word: &[u8], framing: &[u8]) -> (Vec<u8>, Vec<u8>) {
        let n = word.len() / 2;
        let mut map = vec![u8::MAX; n];
        let mut next = 0u8;
        let mut w = Vec::with_capacity(word.len());
        let mut f = vec![0u8; n];
        for &l in word {
            if map[l as usize] == u8::MAX {
                map[l as usize] = next;
                f[next as usize] = framing[l as usize];
                next += 1;
            }
            w.push(map[l as usize]);
        }
        (w, f)
    }

    /// Least rotation after first-occurrence relabeling.
    pub fn canonical(&self) -> ChordDiagram {
        let len = self.word.len();
        if len == 0 {
            return self.clone();
        }
        let mut best: Option<(Vec<u8>, Vec<u8>)> = None;
        let mut buf = vec![0u8; len];
        for r in 0..len {
            for i in 0..len {
                buf[i] = self.word[(i + r) % len];
            }
            let cand = Self::normalized(&buf, &self.framing);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        let (w, f) = best.unwrap();
        ChordDiagram::raw(w, f)
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Delete chord `a`.
    pub fn remove_chord(&self, a: usize) -> ChordDiagram {
        self.restrict(&(0..self.n()).filter(|&k| k != a).collect::<Vec<_>>())
    }

    /// Subdiagram on the given chords.
    pub fn restrict(&self, chords: &[usize]) -> ChordDiagram {
        let keep: Vec<bool> = (0..self.n()).map(|k| chords.contains(&k)).collect();
        let w: Vec<u8> = self
            .word
            .iter()
            .copied()
            .filter(|&l| keep[l as usize])
            .collect();
        let f: Vec<u8> = self.framing.clone();
        let (w, f) = compact(&w, &f);
        ChordDiagram::raw(w, f)
    }

    /// Concatenate words (product in the diagram algebra, cut at position 0).
    pub fn concat(&self, other: &ChordDiagram) -> ChordDiagram {
        let shift = self.n() as u8;
        let mut w = self.word.clone();
        w.extend(other.word.iter().map(|l| l + shift));
        let mut f = self.framing.clone();
        f.extend_from_slice(&other.framing);
        ChordDiagram::raw(w, f)
    }

    pub fn intersection_graph(&self) -> FramedGraph {
        let n = self.n();
        let e = self.ends();
        let mut g = FramedGraph::edgeless(n);
        for i in 0..n {
            g.set_framing(i, self.framing[i]);
            for j in (i + 1)..n {
                if crossing(e[i], e[j]) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    /// The fixed-point-free involution sending each endpoint to its partner.
    pub fn to_permutation(&self) -> Permutation {
        let e = self.ends();
        let mut img = vec![0; self.word.len()];
        for &(a, b) in &e {
            img[a] = b;
            img[b] = a;
        }
        Permutation { images: img }
    }

    /// Move the endpoint at position `from` so that it lands at position `to`
    /// of the resulting word (positions are linear indices of the new word).
    fn move_end(&self, from: usize, to: usize) -> ChordDiagram {
        let mut w = self.word.clone();
        let l = w.remove(from);
        w.insert(to, l);
        ChordDiagram::raw(w, self.framing.clone())
    }

    fn swap_positions(&self, i: usize, j: usize) -> ChordDiagram {
        let mut w = self.word.clone();
        w.swap(i, j);
        ChordDiagram::raw(w, self.framing.clone())
    }

    /// Every neighboring configuration `(pa, pb)`: an end of `a` at `pa`
    /// adjacent (cyclically) to an end of `b` at `pb`.
    pub fn neighboring_ends(&self, a: usize, b: usize) -> Vec<(usize, usize)> {
        let len = self.word.len();
        let mut out = Vec::new();
        if a == b || len < 4 {
            return out;
        }
        for p in 0..len {
            if self.word[p] as usize != a {
                continue;
            }
            for q in [(p + 1) % len, (p + len - 1) % len] {
                if self.word[q] as usize == b && !out.contains(&(p, q)) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// The 4T quadruple `(C, C'_ab, C~_ab, C~'_ab)` for the neighboring
    /// configuration `(pa, pb)`; its intersection graphs are the graph 4T
    /// quadruple of `g(C)` at `(a, b)`. Alternating sum with signs (+,-,-,+) vanishes
    /// for weight systems.
    pub fn four_term_at(&self, a: usize, b: usize, pa: usize, pb: usize) -> [ChordDiagram; 4] {
        let len = self.word.len();
        // Rotate so the pair sits at positions 1,2 with nothing wrapping.
        let first = if (pa + 1) % len == pb { pa } else { pb };
        let r = self.rotate((first + len - 1) % len);
        let (pa, pb) = if r.word[1] as usize == a { (1, 2) } else { (2, 1) };
        debug_assert_eq!(r.word[pb] as usize, b);
        let swapped = r.swap_positions(1, 2);

        let slide = |d: &ChordDiagram, pa: usize, pb: usize| -> [ChordDiagram; 2] {
            // other end of b
            let qb = (0..len)
                .find(|&q| q != pb && d.word[q] as usize == b)
                .unwrap();
            // after removing position pa, indices above pa drop by one
            let qb2 = if qb > pa { qb - 1 } else { qb };
            [d.move_end(pa, qb2), d.move_end(pa, qb2 + 1)]
        };
        // C~ keeps the crossing of a and b, or flips it when b is framed
        let keep_status = |d: &ChordDiagram, pa: usize, pb: usize| -> [ChordDiagram; 2] {
            let [x, y] = slide(d, pa, pb);
            if x.crosses(a, b) == (d.crosses(a, b) ^ (d.framing[b] == 1)) {
                [x, y]
            } else {
                [y, x]
            }
        };
        let [tilde, tilde_prime] = keep_status(&r, pa, pb);
        // second move framing: a picks up the framing of b
        let bump = |d: ChordDiagram| -> ChordDiagram {
            let mut f = d.framing.clone();
            f[a] ^= f[b];
            ChordDiagram::raw(d.word, f)
        };
        [
            r.canonical(),
            swapped.canonical(),
            bump(tilde).canonical(),
            bump(tilde_prime).canonical(),
        ]
    }

    pub fn four_term_quadruple(
        &self,
        a: usize,
        b: usize,
    ) -> Result<Vec<[ChordDiagram; 4]>, DiagramError> {
        let cfgs = self.neighboring_ends(a, b);
        if cfgs.is_empty() {
            return Err(DiagramError::NotNeighboring(a, b));
        }
        Ok(cfgs
            .into_iter()
            .map(|(pa, pb)| self.four_term_at(a, b, pa, pb))
            .collect())
    }

    /// All 4T quadruples of this diagram over ordered chord pairs.
    pub fn all_four_term(&self) -> Vec<[ChordDiagram; 4]> {
        let mut out = Vec::new();
        for a in 0..self.n() {
            for b in 0..self.n() {
                if a != b {
                    if let Ok(q) = self.four_term_quadruple(a, b) {
                        out.extend(q);
                    }
                }
            }
        }
        out
    }

    pub fn complete(n: usize) -> ChordDiagram {
        let w: Vec<u8> = (0..n as u8).chain(0..n as u8).collect();
        ChordDiagram::raw(w, vec![0; n])
    }

    /// `n` pairwise disjoint, non-nested chords.
    pub fn isolated(n: usize) -> ChordDiagram {
        let w: Vec<u8> = (0..n as u8).flat_map(|k| [k, k]).collect();
        ChordDiagram::raw(w, vec![0; n])
    }

    /// `n` nested chords.
    pub fn nested(n: usize) -> ChordDiagram {
        let w: Vec<u8> = (0..n as u8).chain((0..n as u8).rev()).collect();
        ChordDiagram::raw(w, vec![0; n])
    }

    pub fn complete_bipartite(m: usize, n: usize) -> ChordDiagram {
        Share::parallel(m).join(&Share::parallel(n))
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            n: self.n(),
            word: self.word.iter().map(|&l| l as usize + 1).collect(),
            framing: self.framing.clone(),
        }
    }

    pub fn from_json(j: &DiagramJson) -> Result<Self, DiagramError> {
        let word = j.word.clone();
        let d = ChordDiagram::framed(word.clone(), None)?;
        if d.n() != j.n {
            return Err(DiagramError::MalformedWord);
        }
        if j.framing.is_empty() {
            return Ok(d);
        }
        // framing in the JSON is indexed by the original labels sorted
        let mut labels: Vec<usize> = word.clone();
        labels.sort();
        labels.dedup();
        if j.framing.len() != labels.len() {
            return Err(DiagramError::BadFraming);
        }
        let mut f = vec![0u8; d.n()];
        let mut seen: Vec<usize> = Vec::new();
        for &l in &word {
            if !seen.contains(&l) {
                let idx = labels.iter().position(|&x| x == l).unwrap();
                f[seen.len()] = j.framing[idx] & 1;
                seen.push(l);
            }
        }
        Ok(ChordDiagram::raw(d.word, f))
    }
}

fn crossing(x: (usize, usize), y: (usize, usize)) -> bool {
    (x.0 < y.0 && y.0 < x.1 && x.1 < y.1) || (y.0 < x.0 && x.0 < y.1 && y.1 < x.1)
}

/// Relabel a word whose labels are a subset of `0..framing.len()`.
fn compact(word: &[u8], framing: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let mut map = vec![u8::MAX; framing.len()];
    let mut f = Vec::new();
    let mut w = Vec::with_capacity(word.len());
    for &l in word {
        if map[l as usize] == u8::MAX {
            map[l as usize] = f.len() as u8;
            f.push(framing[l as usize]);
        }
        w.push(map[l as usize]);
    }
    (w, f)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DiagramJson {
    pub n: usize,
    pub word: Vec<usize>,
    #[serde(default)]
    pub framing: Vec<u8>,
}

/// All chord diagrams with `n` chords, one canonical representative each,
/// sorted.
pub fn enumerate_diagrams(n: usize, framed: bool) -> Result<Vec<ChordDiagram>, DiagramError> {
    enumerate_diagrams_bounded(n, framed, DEFAULT_MAX_CHORDS)
}

pub const DEFAULT_REALIZABILITY_VERTICES: usize = 6;

/// All chord diagrams whose intersection graph is isomorphic to `g`; empty
/// when `g` is not an intersection graph.
pub fn realizable_as_intersection_graph(
    g: &FramedGraph,
    bound: usize,
) -> Result<Vec<ChordDiagram>, DiagramError> {
    if g.is_framed() {
        return Err(DiagramError::BadFraming);
    }
    if g.n() > bound {
        return Err(DiagramError::BoundExceeded { got: g.n(), bound });
    }
    let target = g.unweighted().canonical();
    Ok(enumerate_diagrams_bounded(g.n(), false, bound.max(DEFAULT_MAX_CHORDS))?
        .into_par_iter()
        .filter(|d| d.intersection_graph().canonical() == target)
        .collect())
}

pub fn enumerate_diagrams_bounded(
    n: usize,
    framed: bool,
    bound: usize,
) -> Result<Vec<ChordDiagram>, DiagramError> {
    if n > bound {
        return Err(DiagramError::BoundExceeded { got: n, bound });
    }
    if n == 0 {
        return Ok(vec![ChordDiagram::empty()]);
    }
    let len = 2 * n;
    // shard by the partner of position 0
    let shards: Vec<BTreeSet<ChordDiagram>> = (1..len)
        .into_par_iter()
        .map(|partner| {
            let mut word = vec![u8::MAX; len];
            word[0] = 0;
            word[partner] = 0;
            let mut acc = BTreeSet::new();
            fill_matchings(&mut word, 1, &mut acc);
            acc
        })
        .collect();
    let mut all: BTreeSet<ChordDiagram> = BTreeSet::new();
    for s in shards {
        all.extend(s);
    }
    if framed {
        let mut out = BTreeSet::new();
        for d in &all {
            for mask in 0u32..(1 << n) {
                let f: Vec<u8> = (0..n).map(|k| ((mask >> k) & 1) as u8).collect();
                out.insert(ChordDiagram::raw(d.word.clone(), f).canonical());
            }
        }
        return Ok(out.into_iter().collect());
    }
    Ok(all.into_iter().collect())
}

fn fill_matchings(word: &mut [u8], next: u8, acc: &mut BTreeSet<ChordDiagram>) {
    let Some(p) = word.iter().position(|&l| l == u8::MAX) else {
        let n = word.len() / 2;
        let d = ChordDiagram::raw(word.to_vec(), vec![0; n]);
        // only rotations can be smaller; skip words that are not minimal
        let c = d.canonical();
        acc.insert(c);
        return;
    };
    word[p] = next;
    for q in (p + 1)..word.len() {
        if word[q] == u8::MAX {
            word[q] = next;
            fill_matchings(word, next + 1, acc);
            word[q] = u8::MAX;
        }
    }
    word[p] = u8::MAX;
}

/// All 4T quadruples over all diagrams with `n` chords.
pub fn all_four_term_quadruples(n: usize) -> Result<Vec<[ChordDiagram; 4]>, DiagramError> {
    Ok(enumerate_diagrams(n, false)?
        .iter()
        .flat_map(|d| d.all_four_term())
        .collect())
}

/// Two linear words; a chord may have both ends in one interval or one in each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Share {
    pub first: Vec<u8>,
    pub second: Vec<u8>,
}

impl Share {
    pub fn new(first: Vec<u8>, second: Vec<u8>) -> Result<Self, DiagramError> {
        let mut all: Vec<u8> = first.iter().chain(second.iter()).copied().collect();
        all.sort();
        for c in all.chunks(2) {
            if c.len() != 2 || c[0] != c[1] {
                return Err(DiagramError::MalformedWord);
            }
        }
        if all.windows(3).any(|w| w[0] == w[2]) {
            return Err(DiagramError::MalformedWord);
        }
        Ok(Share { first, second })
    }

    /// `m` parallel chords from the first interval to the second.
    pub fn parallel(m: usize) -> Share {
        Share {
            first: (0..m as u8).collect(),
            second: (0..m as u8).rev().collect(),
        }
    }

    fn max_label(&self) -> u8 {
        self.first
            .iter()
            .chain(self.second.iter())
            .map(|&l| l + 1)
            .max()
            .unwrap_or(0)
    }

    /// Close the share into a diagram: first interval then second.
    pub fn closure(&self) -> ChordDiagram {
        let w: Vec<usize> = self
            .first
            .iter()
            .chain(self.second.iter())
            .map(|&l| l as usize)
            .collect();
        ChordDiagram::new(w).expect("share is well formed")
    }

    /// Glue the ends of the intervals in the order I1 J1 I2 J2.
    pub fn join(&self, other: &Share) -> ChordDiagram {
        let s = self.max_label();
        let w: Vec<usize> = self
            .first
            .iter()
            .map(|&l| l as usize)
            .chain(other.first.iter().map(|&l| (l + s) as usize))
            .chain(self.second.iter().map(|&l| l as usize))
            .chain(other.second.iter().map(|&l| (l + s) as usize))
            .collect();
        ChordDiagram::new(w).expect("join of shares is well formed")
    }

    /// `(S, n)`: join with `n` parallel chords.
    pub fn with_parallel(&self, n: usize) -> ChordDiagram {
        self.join(&Share::parallel(n))
    }

    /// Number of chords with one end in each interval.
    pub fn cross_chords(&self) -> usize {
        self.first
            .iter()
            .filter(|l| self.second.contains(l))
            .count()
    }
}

/// Bijection on `0..m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    pub images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, DiagramError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(DiagramError::MalformedWord);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn m(&self) -> usize {
        self.images.len()
    }

    /// The cycle `0 -> 1 -> … -> m-1 -> 0`.
    pub fn long_cycle(m: usize) -> Permutation {
        Permutation {
            images: (0..m).map(|i| (i + 1) % m).collect(),
        }
    }

    /// Conjugate by the cyclic shift `i -> i+k`.
    pub fn rotate(&self, k: usize) -> Permutation {
        let m = self.m();
        let mut img = vec![0; m];
        for i in 0..m {
            img[(i + k) % m] = (self.images[i] + k) % m;
        }
        Permutation { images: img }
    }

    /// Concatenate the words of two permutations.
    pub fn concat(&self, other: &Permutation) -> Permutation {
        let s = self.m();
        let mut img = self.images.clone();
        img.extend(other.images.iter().map(|&i| i + s));
        Permutation { images: img }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.m()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { images: inv }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(w: &[usize]) -> ChordDiagram {
        ChordDiagram::new(w.to_vec()).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(cd(&[2, 1, 2, 1]).canonical().word(), &[0, 1, 0, 1]);
        assert_eq!(cd(&[1, 2, 1, 2]).rotate(1).canonical(), cd(&[1, 2, 1, 2]));
        assert_eq!(
            ChordDiagram::new(vec![1, 2, 1]),
            Err(DiagramError::MalformedWord)
        );
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_diagrams(1, false).unwrap().len(), 1);
        assert_eq!(enumerate_diagrams(2, false).unwrap().len(), 2);
        assert_eq!(enumerate_diagrams(3, false).unwrap().len(), 5);
        assert_eq!(enumerate_diagrams(4, false).unwrap().len(), 18);
        assert!(matches!(
            enumerate_diagrams(8, false),
            Err(DiagramError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn standard_diagrams() {
        assert_eq!(ChordDiagram::complete(2).word(), &[0, 1, 0, 1]);
        assert_eq!(
            ChordDiagram::complete_bipartite(1, 1).canonical(),
            ChordDiagram::complete(2).canonical()
        );
        let g = ChordDiagram::complete_bipartite(2, 3).intersection_graph();
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn crossing_pair_swap_gives_parallel() {
        let k2 = ChordDiagram::complete(2);
        let q = k2.four_term_quadruple(0, 1).unwrap();
        for [c, cp, _, _] in &q {
            assert_eq!(c.intersection_graph().edge_count(), 1);
            assert_eq!(cp.intersection_graph().edge_count(), 0);
        }
    }

    #[test]
    fn permutation_of_k2() {
        assert_eq!(
            ChordDiagram::complete(2).to_permutation().images,
            vec![2, 3, 0, 1]
        );
    }
}
