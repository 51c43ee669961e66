//! The uncovered graph of a family and K_s detection.
//!
//! A family is an s-cover exactly when the graph of pairs lying in no line
//! has no clique on `s` vertices. Adjacency is stored as one bitset row per
//! vertex, which keeps graphs on a few thousand points cheap.

use crate::model::{pairs, CoverFamily, PointId};

/// Fixed-width bitset over `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> Self {
        let mut b = BitSet { words: vec![u64::MAX; len.div_ceil(64)], len };
        b.trim();
        b
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn capacity(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + tz)
            })
        })
    }
}

/// Graph on `0..n` whose edges are the pairs contained in no line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncoveredGraph {
    n: usize,
    adj: Vec<BitSet>,
}

impl UncoveredGraph {
    /// Builds the graph of pairs not contained in any line. Works for
    /// non-linear families too; [`crate::verify::uncovered_graph`] is the
    /// checked entry point.
    pub(crate) fn of_family(f: &CoverFamily) -> Self {
        let n = f.n();
        let mut adj: Vec<BitSet> = (0..n)
            .map(|v| {
                let mut row = BitSet::full(n);
                row.remove(v);
                row
            })
            .collect();
        for line in f.lines() {
            let pts: Vec<usize> = line.indices().collect();
            for (i, &a) in pts.iter().enumerate() {
                for &b in &pts[i + 1..] {
                    adj[a].remove(b);
                    adj[b].remove(a);
                }
            }
        }
        UncoveredGraph { n, adj }
    }

    /// A graph with exactly the given edges. Self-loops and repeats are ignored.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adj = vec![BitSet::new(n); n];
        for (a, b) in edges {
            assert!(a < n && b < n, "edge ({a}, {b}) out of range for n = {n}");
            if a != b {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        UncoveredGraph { n, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (PointId, PointId)> + '_ {
        (0..self.n).flat_map(move |a| {
            self.adj[a]
                .iter()
                .filter(move |&b| b > a)
                .map(move |b| (PointId::new(a), PointId::new(b)))
        })
    }

    /// `C(n, 2)` minus the edge count.
    pub fn non_edge_count(&self) -> usize {
        pairs(self.n) - self.edge_count()
    }
}

/// Partition of `candidates` into greedy colour classes (each an independent
/// set), returned as vertices with their 1-based colour, sorted by colour.
fn greedy_colouring(g: &UncoveredGraph, candidates: &BitSet) -> Vec<(usize, usize)> {
    let mut uncoloured = candidates.clone();
    let mut out = Vec::with_capacity(candidates.count());
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut avail = uncoloured.clone();
        while let Some(v) = avail.first() {
            avail.remove(v);
            avail.difference_with(g.neighbors(v));
            uncoloured.remove(v);
            out.push((v, colour));
        }
    }
    out
}

fn extend_clique(
    g: &UncoveredGraph,
    clique: &mut Vec<usize>,
    mut candidates: BitSet,
    need: usize,
) -> bool {
    if need == 0 {
        return true;
    }
    if candidates.count() < need {
        return false;
    }
    let colouring = greedy_colouring(g, &candidates);
    let colours = colouring.last().map_or(0, |&(_, c)| c);
    if colours < need {
        return false;
    }
    if need == 1 {
        clique.push(colouring[0].0);
        return true;
    }
    // Pivot: the candidate with most candidate neighbours. Any clique inside
    // its neighbourhood extends by the pivot, so only non-neighbours branch.
    let pivot = candidates
        .iter()
        .max_by_key(|&u| (g.neighbors(u).intersection_count(&candidates), std::cmp::Reverse(u)))
        .expect("non-empty");
    let colour_of: std::collections::HashMap<usize, usize> = colouring.iter().copied().collect();
    let mut branch: Vec<usize> = candidates.iter().filter(|&u| !g.has_edge(pivot, u)).collect();
    // High colours first, so the colour bound cuts the tail of the loop.
    branch.sort_by_key(|u| std::cmp::Reverse(colour_of[u]));
    for v in branch {
        let remaining = candidates.count();
        if remaining < need {
            return false;
        }
        clique.push(v);
        let next = candidates.intersection(g.neighbors(v));
        if extend_clique(g, clique, next, need - 1) {
            return true;
        }
        clique.pop();
        candidates.remove(v);
    }
    false
}

/// Finds a clique on exactly `s` vertices, returned in increasing order.
///
/// Branch and bound: greedy colouring bounds the clique size of the candidate
/// set and a pivot restricts branching to the pivot's non-neighbours.
pub fn find_clique(g: &UncoveredGraph, s: usize) -> Option<Vec<PointId>> {
    if s == 0 {
        return Some(Vec::new());
    }
    let mut clique = Vec::with_capacity(s);
    if extend_clique(g, &mut clique, BitSet::full(g.n), s) {
        clique.sort_unstable();
        debug_assert!(is_clique(g, &clique));
        Some(clique.into_iter().map(PointId::new).collect())
    } else {
        None
    }
}

/// Whether `g` contains `K_s`, with a witness when it does.
pub fn has_clique(g: &UncoveredGraph, s: usize) -> (bool, Option<Vec<PointId>>) {
    let w = find_clique(g, s);
    (w.is_some(), w)
}

fn is_clique(g: &UncoveredGraph, vs: &[usize]) -> bool {
    vs.iter()
        .enumerate()
        .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
}

/// Reference search: scans every `s`-subset in lexicographic order and returns
/// the first clique. Exponential; meant for `n <= 12`.
pub fn find_clique_exhaustive(g: &UncoveredGraph, s: usize) -> Option<Vec<PointId>> {
    let n = g.n;
    if s > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..s).collect();
    loop {
        if is_clique(g, &idx) {
            return Some(idx.into_iter().map(PointId::new).collect());
        }
        // advance to the next combination
        let mut i = s;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - s + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
