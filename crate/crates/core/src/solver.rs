//! Exact minimum s-covers on small ground sets.
//!
//! [`min_cover_exact`] searches by iterative deepening on the number of lines
//! `m`, starting from [`counting_lower_bound`]. Each level is a depth-first
//! search over candidate lines (every subset of size `2..=cap`) ordered by
//! size, largest first, then lexicographically; a family is visited once, as
//! its strictly increasing sequence of candidate indices. Pruning:
//!
//! * linearity: a line may not contain an already covered pair;
//! * the first line is `{0, .., a-1}`: relabelling any family puts its
//!   canonical first line there;
//! * pair count: the remaining lines must be able to cover at least
//!   `C(n,2) - ex(n, K_s)` pairs in total, where `ex` is the Turán number;
//! * reachability: the pairs that no admissible later candidate can cover
//!   must already form a K_s-free graph.
//!
//! A level that finishes without a solution proves that no family with that
//! many lines exists, so the first level with a solution is optimal.
//!
//! [`brute_oracle`] is an independent check that shares none of this logic.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::construct::{asymptotic_cover, recursive_tight};
use crate::model::{make_family, pairs, CoverFamily, Rational};

/// Largest ground set the exact solver accepts (pair masks are 128 bits).
pub const MAX_SOLVER_POINTS: usize = 16;
/// Largest ground set the brute-force oracle accepts.
pub const MAX_ORACLE_POINTS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("need n >= s >= 2, got n = {n}, s = {s}")]
    BadParameters { n: usize, s: usize },
    #[error("cap must be at least 2, got {0}")]
    BadCap(usize),
    #[error("n = {n} exceeds the limit of {limit} points")]
    TooLarge { n: usize, limit: usize },
    #[error("search budget must be positive")]
    BadBudget,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_seconds: f64) -> Result<Self, SolverError> {
        if max_nodes == 0 || !(max_seconds > 0.0) {
            return Err(SolverError::BadBudget);
        }
        Ok(SearchBudget { max_nodes, max_seconds })
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 10_000_000, max_seconds: 300.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Optimal,
    BudgetExhausted,
}

/// Outcome of one deepening level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelStats {
    pub m: usize,
    pub nodes: u64,
    /// The whole tree for this `m` was explored.
    pub exhausted: bool,
    pub found: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub m_star: usize,
    pub witness: CoverFamily,
    pub status: SearchStatus,
    pub nodes_explored: u64,
    pub lower_bound: usize,
    pub levels: Vec<LevelStats>,
}

/// `ceil((n^2/(2(s-1)) - n/2) / C(cap, 2))`, floored at zero.
pub fn counting_lower_bound(n: usize, s: usize, cap: usize) -> usize {
    assert!(s >= 2 && cap >= 2, "counting_lower_bound needs s >= 2 and cap >= 2");
    let n = n as i128;
    let need = Rational::new(n * n, 2 * (s as i128 - 1)) - Rational::new(n, 2);
    let per_line = Rational::from_integer(pairs(cap) as i128);
    let lines = (need / per_line).ceil().to_integer();
    lines.max(0) as usize
}

/// Edges of the Turán graph `T(n, r)`, the largest `K_{r+1}`-free graph.
pub fn turan_edges(n: usize, r: usize) -> usize {
    if r == 0 {
        return 0;
    }
    let (q, rem) = (n / r, n % r);
    // rem parts of size q+1, r-rem parts of size q
    let sq: usize = rem * (q + 1) * (q + 1) + (r - rem) * q * q;
    (n * n - sq) / 2
}

/// Worker count from `SCOVER_THREADS`, else all available cores.
pub fn default_threads() -> usize {
    std::env::var("SCOVER_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

struct Instance {
    n: usize,
    s: usize,
    /// Candidate lines as point masks, canonical order.
    points: Vec<u32>,
    /// Candidate lines as pair masks.
    pair_masks: Vec<u128>,
    sizes: Vec<usize>,
    pair_index: Vec<Vec<usize>>,
    all_pairs: u128,
    /// Minimum number of pairs any cover must cover.
    need: usize,
}

impl Instance {
    fn new(n: usize, s: usize, cap: usize) -> Self {
        let mut pair_index = vec![vec![usize::MAX; n]; n];
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                pair_index[a][b] = k;
                pair_index[b][a] = k;
                k += 1;
            }
        }
        let all_pairs = if k == 128 { u128::MAX } else { (1u128 << k) - 1 };
        let mut cands: Vec<Vec<usize>> = Vec::new();
        for size in (2..=cap.min(n)).rev() {
            let mut comb: Vec<usize> = (0..size).collect();
            loop {
                cands.push(comb.clone());
                let mut i = size;
                let mut advanced = false;
                while i > 0 {
                    i -= 1;
                    if comb[i] < n - size + i {
                        comb[i] += 1;
                        for j in i + 1..size {
                            comb[j] = comb[j - 1] + 1;
                        }
                        advanced = true;
                        break;
                    }
                }
                if !advanced {
                    break;
                }
            }
        }
        let points = cands.iter().map(|c| c.iter().fold(0u32, |m, &p| m | 1 << p)).collect();
        let pair_masks = cands
            .iter()
            .map(|c| {
                let mut m = 0u128;
                for (i, &a) in c.iter().enumerate() {
                    for &b in &c[i + 1..] {
                        m |= 1u128 << pair_index[a][b];
                    }
                }
                m
            })
            .collect();
        let sizes = cands.iter().map(Vec::len).collect();
        let need = pairs(n) - turan_edges(n, s - 1);
        Instance { n, s, points, pair_masks, sizes, pair_index, all_pairs, need }
    }

    /// Adjacency masks of the graph whose edges are the pairs in `edges`.
    fn graph(&self, edges: u128) -> Vec<u32> {
        let mut adj = vec![0u32; self.n];
        for a in 0..self.n {
            for b in a + 1..self.n {
                if edges >> self.pair_index[a][b] & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
        }
        adj
    }

    fn has_ks(&self, edges: u128) -> bool {
        let adj = self.graph(edges);
        let all = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        mask_clique(&adj, all, self.s)
    }

    fn family(&self, chosen: &[usize]) -> CoverFamily {
        let lines = chosen.iter().map(|&c| (0..self.n).filter(move |&p| self.points[c] >> p & 1 == 1));
        make_family(self.n, self.s, lines).expect("candidate lines are well formed")
    }
}

/// Clique of size `need` inside `cand`, on adjacency masks.
fn mask_clique(adj: &[u32], cand: u32, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if (cand.count_ones() as usize) < need {
        return false;
    }
    let mut rest = cand;
    while rest != 0 {
        if (rest.count_ones() as usize) < need {
            return false;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if mask_clique(adj, rest & adj[v], need - 1) {
            return true;
        }
    }
    false
}

#[derive(Clone)]
struct Node {
    chosen: Vec<usize>,
    covered: u128,
}

struct Shared<'a> {
    /// Smallest work-item index that has found a solution.
    found_at: &'a AtomicUsize,
    deadline: Instant,
    timed_out: &'a AtomicBool,
}

enum Walk {
    Found(Vec<usize>),
    Exhausted,
    /// Node cap reached, cancelled, or out of time.
    Stopped,
}

struct Dfs<'a> {
    inst: &'a Instance,
    m: usize,
    nodes: u64,
    node_cap: u64,
    item: usize,
    shared: Option<&'a Shared<'a>>,
}

impl Dfs<'_> {
    /// Whether `node` can still be completed to `m` lines.
    fn viable(&self, node: &Node) -> bool {
        let inst = self.inst;
        let depth = node.chosen.len();
        let left = self.m - depth;
        let covered_count = node.covered.count_ones() as usize;
        let start = node.chosen.last().map_or(0, |&c| c + 1);
        if left == 0 {
            return !inst.has_ks(inst.all_pairs & !node.covered);
        }
        let Some(next_size) = inst.sizes.get(start) else {
            return false;
        };
        if covered_count + left * pairs(*next_size) < inst.need {
            return false;
        }
        let mut reachable = 0u128;
        let mut admissible = 0;
        for c in start..inst.pair_masks.len() {
            let pm = inst.pair_masks[c];
            if pm & node.covered == 0 {
                reachable |= pm;
                admissible += 1;
            }
        }
        if admissible < left {
            return false;
        }
        !inst.has_ks(inst.all_pairs & !node.covered & !reachable)
    }

    fn children(&self, node: &Node) -> impl Iterator<Item = Node> + '_ {
        let inst = self.inst;
        let start = node.chosen.last().map_or(0, |&c| c + 1);
        let covered = node.covered;
        let chosen = node.chosen.clone();
        let first = chosen.is_empty();
        (start..inst.pair_masks.len())
            .filter(move |&c| {
                if first {
                    // the first line is an initial segment {0, .., a-1}
                    let pm = inst.points[c];
                    pm & (pm + 1) == 0
                } else {
                    inst.pair_masks[c] & covered == 0
                }
            })
            .map(move |c| {
                let mut next = chosen.clone();
                next.push(c);
                Node { chosen: next, covered: covered | inst.pair_masks[c] }
            })
    }

    fn should_stop(&self) -> bool {
        if self.nodes > self.node_cap {
            return true;
        }
        if let Some(sh) = self.shared {
            if sh.found_at.load(Ordering::Relaxed) < self.item {
                return true;
            }
            if self.nodes % 1024 == 0 && Instant::now() >= sh.deadline {
                sh.timed_out.store(true, Ordering::Relaxed);
            }
            if sh.timed_out.load(Ordering::Relaxed) {
                return true;
            }
        }
        false
    }

    fn walk(&mut self, node: &Node) -> Walk {
        self.nodes += 1;
        if self.should_stop() {
            return Walk::Stopped;
        }
        if !self.viable(node) {
            return Walk::Exhausted;
        }
        if node.chosen.len() == self.m {
            return Walk::Found(node.chosen.clone());
        }
        let kids: Vec<Node> = self.children(node).collect();
        for child in kids {
            match self.walk(&child) {
                Walk::Exhausted => {}
                other => return other,
            }
        }
        Walk::Exhausted
    }
}

/// Nodes at the split depth, in depth-first order, after pruning.
fn split_frontier(dfs: &mut Dfs<'_>, node: &Node, depth: usize, out: &mut Vec<Node>) {
    dfs.nodes += 1;
    if !dfs.viable(node) {
        return;
    }
    if node.chosen.len() == depth {
        out.push(node.clone());
        return;
    }
    let kids: Vec<Node> = dfs.children(node).collect();
    for child in kids {
        split_frontier(dfs, &child, depth, out);
    }
}

struct ItemOutcome {
    nodes: u64,
    walk: Walk,
}

enum LevelOutcome {
    Found(Vec<usize>),
    Exhausted,
    OutOfBudget,
}

/// Explores level `m` with `threads` workers. The reported node count is that
/// of a sequential walk over the work items, so it does not depend on
/// scheduling.
fn search_level(
    inst: &Instance,
    m: usize,
    node_budget: u64,
    deadline: Instant,
    threads: usize,
) -> (LevelOutcome, u64) {
    let root = Node { chosen: Vec::new(), covered: 0 };
    let mut splitter = Dfs { inst, m, nodes: 0, node_cap: u64::MAX, item: 0, shared: None };
    let mut items = Vec::new();
    split_frontier(&mut splitter, &root, m.min(2), &mut items);
    // Frontier nodes are re-entered by the workers.
    let prefix_nodes = splitter.nodes - items.len() as u64;
    if prefix_nodes > node_budget {
        return (LevelOutcome::OutOfBudget, node_budget);
    }
    let item_cap = node_budget - prefix_nodes;

    let found_at = AtomicUsize::new(usize::MAX);
    let timed_out = AtomicBool::new(false);
    let next_item = AtomicUsize::new(0);
    let outcomes: Mutex<Vec<Option<ItemOutcome>>> =
        Mutex::new((0..items.len()).map(|_| None).collect());
    let shared = Shared { found_at: &found_at, deadline, timed_out: &timed_out };

    std::thread::scope(|scope| {
        for _ in 0..threads.max(1).min(items.len().max(1)) {
            scope.spawn(|| loop {
                let i = next_item.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                if found_at.load(Ordering::Relaxed) < i || timed_out.load(Ordering::Relaxed) {
                    continue;
                }
                let mut dfs =
                    Dfs { inst, m, nodes: 0, node_cap: item_cap, item: i, shared: Some(&shared) };
                let walk = dfs.walk(&items[i]);
                if matches!(walk, Walk::Found(_)) {
                    found_at.fetch_min(i, Ordering::Relaxed);
                }
                outcomes.lock().expect("poisoned")[i] = Some(ItemOutcome { nodes: dfs.nodes, walk });
            });
        }
    });

    let outcomes = outcomes.into_inner().expect("poisoned");
    let mut total = prefix_nodes;
    for outcome in outcomes {
        let Some(outcome) = outcome else {
            // skipped after a time-out
            return (LevelOutcome::OutOfBudget, total);
        };
        total += outcome.nodes;
        if total > node_budget {
            return (LevelOutcome::OutOfBudget, node_budget);
        }
        match outcome.walk {
            Walk::Found(chosen) => return (LevelOutcome::Found(chosen), total),
            Walk::Exhausted => {}
            Walk::Stopped => return (LevelOutcome::OutOfBudget, total),
        }
    }
    (LevelOutcome::Exhausted, total)
}

/// Smallest valid family among the quick constructions: all pairs as lines,
/// `s-1` near-equal disjoint blocks, and the tight and asymptotic families
/// when they exist and respect `cap`.
pub fn upper_bound_witness(n: usize, s: usize, cap: usize) -> CoverFamily {
    let all_pairs = make_family(n, s, (0..n).flat_map(|a| (a + 1..n).map(move |b| vec![a, b])))
        .expect("pairs are well formed");
    let mut best = all_pairs;
    let mut consider = |f: CoverFamily| {
        if f.max_line_size() <= cap && f.len() < best.len() {
            best = f;
        }
    };
    let parts = s - 1;
    let blocks: Vec<Vec<usize>> = (0..parts)
        .map(|i| (0..n).filter(|p| p % parts == i).collect::<Vec<_>>())
        .filter(|b| b.len() >= 2)
        .collect();
    if let Ok(f) = make_family(n, s, blocks) {
        consider(f);
    }
    if let Ok(f) = recursive_tight(n, s) {
        consider(f);
    }
    if let Ok(f) = asymptotic_cover(n, s) {
        consider(f);
    }
    best
}

/// Exact minimum number of lines of size `2..=cap` in an s-cover of `n` points.
pub fn min_cover_exact(
    n: usize,
    s: usize,
    cap: usize,
    budget: &SearchBudget,
) -> Result<SearchResult, SolverError> {
    min_cover_exact_with_threads(n, s, cap, budget, default_threads())
}

pub fn min_cover_exact_with_threads(
    n: usize,
    s: usize,
    cap: usize,
    budget: &SearchBudget,
    threads: usize,
) -> Result<SearchResult, SolverError> {
    if s < 2 || n < s {
        return Err(SolverError::BadParameters { n, s });
    }
    if cap < 2 {
        return Err(SolverError::BadCap(cap));
    }
    if n > MAX_SOLVER_POINTS {
        return Err(SolverError::TooLarge { n, limit: MAX_SOLVER_POINTS });
    }
    SearchBudget::new(budget.max_nodes, budget.max_seconds)?;

    let inst = Instance::new(n, s, cap);
    let lower_bound = counting_lower_bound(n, s, cap);
    let fallback = upper_bound_witness(n, s, cap);
    let deadline = Instant::now() + Duration::from_secs_f64(budget.max_seconds.min(1e9));
    let mut levels = Vec::new();
    let mut spent = 0u64;

    for m in lower_bound..fallback.len() {
        let (outcome, nodes) = search_level(&inst, m, budget.max_nodes - spent, deadline, threads);
        spent += nodes;
        match outcome {
            LevelOutcome::Found(chosen) => {
                levels.push(LevelStats { m, nodes, exhausted: false, found: true });
                let witness = inst.family(&chosen);
                return Ok(SearchResult {
                    m_star: m,
                    witness,
                    status: SearchStatus::Optimal,
                    nodes_explored: spent,
                    lower_bound,
                    levels,
                });
            }
            LevelOutcome::Exhausted => {
                levels.push(LevelStats { m, nodes, exhausted: true, found: false });
            }
            LevelOutcome::OutOfBudget => {
                levels.push(LevelStats { m, nodes, exhausted: false, found: false });
                return Ok(SearchResult {
                    m_star: fallback.len(),
                    witness: fallback,
                    status: SearchStatus::BudgetExhausted,
                    nodes_explored: spent,
                    lower_bound,
                    levels,
                });
            }
        }
    }
    // Every level below the fallback size is empty.
    Ok(SearchResult {
        m_star: fallback.len(),
        witness: fallback,
        status: SearchStatus::Optimal,
        nodes_explored: spent,
        lower_bound,
        levels,
    })
}

/// Minimum by plain enumeration: families of `k = 0, 1, ..` lines drawn from
/// all subsets of size `2..=cap`, filtered only for linearity, then checked
/// against every `s`-subset of points.
pub fn brute_oracle(n: usize, s: usize, cap: usize) -> Result<usize, SolverError> {
    if n > MAX_ORACLE_POINTS {
        return Err(SolverError::TooLarge { n, limit: MAX_ORACLE_POINTS });
    }
    if s < 2 || n < s {
        return Err(SolverError::BadParameters { n, s });
    }
    if cap < 2 {
        return Err(SolverError::BadCap(cap));
    }
    // candidate lines as point masks, plain numeric order
    let pool: Vec<u32> = (0u32..1 << n)
        .filter(|m| (2..=cap as u32).contains(&m.count_ones()))
        .collect();
    let s_sets: Vec<Vec<usize>> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == s)
        .map(|m| (0..n).filter(|&p| m >> p & 1 == 1).collect())
        .collect();

    fn covers(family: &[u32], s_sets: &[Vec<usize>], n: usize) -> bool {
        let mut joined = vec![vec![false; n]; n];
        for &l in family {
            for a in 0..n {
                for b in 0..n {
                    if a != b && l >> a & 1 == 1 && l >> b & 1 == 1 {
                        joined[a][b] = true;
                    }
                }
            }
        }
        s_sets.iter().all(|set| {
            set.iter()
                .enumerate()
                .any(|(i, &a)| set[i + 1..].iter().any(|&b| joined[a][b]))
        })
    }

    fn search(
        pool: &[u32],
        start: usize,
        left: usize,
        family: &mut Vec<u32>,
        s_sets: &[Vec<usize>],
        n: usize,
    ) -> bool {
        if left == 0 {
            return covers(family, s_sets, n);
        }
        for i in start..pool.len() {
            let line = pool[i];
            if family.iter().any(|&l| (l & line).count_ones() > 1) {
                continue;
            }
            family.push(line);
            let ok = search(pool, i + 1, left - 1, family, s_sets, n);
            family.pop();
            if ok {
                return true;
            }
        }
        false
    }

    for k in 0.. {
        if search(&pool, 0, k, &mut Vec::new(), &s_sets, n) {
            return Ok(k);
        }
    }
    unreachable!("all pairs as lines always form a cover")
}
