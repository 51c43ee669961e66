//! Structure profile and instance-level counting bounds.
//!
//! For an s-cover with lines `A_1, .., A_m` in canonical order, the profile
//! records the minimum degree `d` over the points of the largest line `A_1`,
//! the point `v` attaining it, the union `P` of the lines through `v` and its
//! complement `Q`. [`lemma_bounds`] then evaluates the counting inequalities
//! that hold for every s-cover:
//!
//! 1. `m >= a_1 (d - 1) + 1`;
//! 2. `m >= (|Q| - 1)/(s - 2) + s - 2 + d` when `|Q| > n (s-2)/(s-1)`;
//! 3. `m >= prod a'_k / e_{s-2}(a'_1, .., a'_s)` for pairwise disjoint
//!    subsets `A'_k` of `s` distinct lines;
//! 4. `sum C(a_i, 2) >= n^2 / (2(s-1)) - n/2`,
//!
//! together with the pair-count identity `|E| + sum C(a_i, 2) = C(n, 2)` and
//! the Turán bound `|E| <= (1 - 1/(s-1)) n^2 / 2` on the uncovered graph.
//!
//! Inequality 2 is proved by induction on `s` and only for large `n`; it is
//! reported as evaluated and may legitimately fail on small instances.

use serde::Serialize;
use thiserror::Error;

use crate::model::{pairs, serialize_opt_rational, serialize_rational, CapMode, CoverFamily, PointId, Rational};
use crate::verify::{uncovered_graph, verify_cover};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("profile of an empty family is undefined")]
    EmptyFamily,
    #[error("e_{k} undefined for {len} variables")]
    DegreeOutOfRange { k: usize, len: usize },
    #[error("integer overflow evaluating an exact bound")]
    Overflow,
    #[error("family is not an s-cover (linear: {linear}, covered: {covered})")]
    NotACover { linear: bool, covered: bool },
    #[error("disjoint-subset selection {index}: {reason}")]
    BadSelection { index: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureProfile {
    pub n: usize,
    pub s: usize,
    pub m: usize,
    /// Line sizes, non-increasing.
    pub sizes: Vec<usize>,
    pub a1: usize,
    /// Point of `A_1` with minimum degree (smallest index on ties).
    pub v: PointId,
    /// Minimum degree over the points of `A_1`.
    pub d: usize,
    /// Union of the lines through `v`.
    pub big_p: Vec<PointId>,
    /// Complement of `P`.
    pub big_q: Vec<PointId>,
    /// `|P|`.
    pub p: usize,
    /// Quotient and remainder of `n - 1 + (s-1)(s-2)` by `(s-1) a_1`.
    pub q_div: usize,
    pub r_div: usize,
}

pub fn compute_profile(f: &CoverFamily) -> Result<StructureProfile, LemmaError> {
    let first = f.lines().first().ok_or(LemmaError::EmptyFamily)?;
    let (n, s) = (f.n(), f.s());
    let deg = f.degrees();
    let (d, v) = first
        .points()
        .iter()
        .map(|&p| (deg[p.index()], p))
        .min()
        .expect("lines have at least two points");
    let mut in_p = vec![false; n];
    for line in f.lines().iter().filter(|l| l.contains(v)) {
        for p in line.indices() {
            in_p[p] = true;
        }
    }
    let (big_p, big_q): (Vec<PointId>, Vec<PointId>) =
        (0..n).map(PointId::new).partition(|p| in_p[p.index()]);
    let a1 = first.len();
    let numer = n - 1 + (s - 1) * (s - 2);
    let divisor = (s - 1) * a1;
    Ok(StructureProfile {
        n,
        s,
        m: f.len(),
        sizes: f.sizes(),
        a1,
        v,
        d,
        p: big_p.len(),
        big_p,
        big_q,
        q_div: numer / divisor,
        r_div: numer % divisor,
    })
}

/// `e_k(xs)`: the sum of all products of `k` distinct entries, by the
/// recurrence `e_j(x_1..x_i) = e_j(x_1..x_{i-1}) + x_i e_{j-1}(x_1..x_{i-1})`.
pub fn elementary_symmetric(k: usize, xs: &[i64]) -> Result<i128, LemmaError> {
    if k > xs.len() {
        return Err(LemmaError::DegreeOutOfRange { k, len: xs.len() });
    }
    let mut e = vec![0i128; k + 1];
    e[0] = 1;
    for (i, &x) in xs.iter().enumerate() {
        for j in (1..=k.min(i + 1)).rev() {
            let term = e[j - 1].checked_mul(x as i128).ok_or(LemmaError::Overflow)?;
            e[j] = e[j].checked_add(term).ok_or(LemmaError::Overflow)?;
        }
    }
    Ok(e[k])
}

/// Pairwise disjoint subsets of `s` distinct lines, as `(line index, subset)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DisjointSelection {
    pub parts: Vec<(usize, Vec<usize>)>,
}

/// One evaluated inequality `lhs >= value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub applicable: bool,
    /// The lower bound (absent when it cannot be evaluated, e.g. `s = 2` in part 2).
    #[serde(serialize_with = "serialize_opt_rational")]
    pub value: Option<Rational>,
    /// Present exactly when applicable.
    pub satisfied: Option<bool>,
}

impl BoundCheck {
    fn on_m(m: usize, value: Option<Rational>, applicable: bool) -> Self {
        let satisfied = applicable.then(|| {
            Rational::from_integer(m as i128) >= value.expect("applicable bounds carry a value")
        });
        BoundCheck { applicable, value, satisfied }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCountCheck {
    #[serde(serialize_with = "serialize_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub rhs: Rational,
    pub satisfied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TuranCheck {
    pub uncovered_edges: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub max_edges: Rational,
    pub satisfied: bool,
    /// `C(n,2) - sum C(a_i,2) - |E|`; zero for every linear family.
    pub residual: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub m: usize,
    pub part1: BoundCheck,
    pub part2: BoundCheck,
    pub part3: Vec<BoundCheck>,
    pub part4: PairCountCheck,
    pub turan: TuranCheck,
}

fn disjoint_bound(
    f: &CoverFamily,
    index: usize,
    sel: &DisjointSelection,
) -> Result<Rational, LemmaError> {
    let bad = |reason: String| LemmaError::BadSelection { index, reason };
    let s = f.s();
    if sel.parts.len() != s {
        return Err(bad(format!("expected {s} subsets, got {}", sel.parts.len())));
    }
    let mut used_lines = std::collections::BTreeSet::new();
    let mut used_points = std::collections::BTreeSet::new();
    let mut sizes = Vec::with_capacity(s);
    for (li, subset) in &sel.parts {
        let line = f.lines().get(*li).ok_or_else(|| bad(format!("no line {li}")))?;
        if !used_lines.insert(*li) {
            return Err(bad(format!("line {li} used twice")));
        }
        if subset.is_empty() {
            return Err(bad(format!("empty subset of line {li}")));
        }
        for &p in subset {
            if p >= f.n() || !line.contains(PointId::new(p)) {
                return Err(bad(format!("point {p} is not on line {li}")));
            }
            if !used_points.insert(p) {
                return Err(bad(format!("point {p} appears in two subsets")));
            }
        }
        sizes.push(subset.len() as i64);
    }
    let product = sizes
        .iter()
        .try_fold(1i128, |acc, &x| acc.checked_mul(x as i128))
        .ok_or(LemmaError::Overflow)?;
    let denom = elementary_symmetric(s - 2, &sizes)?;
    Ok(Rational::new(product, denom))
}

/// Evaluates every counting bound on `f`. The family must be linear and
/// covered; the line-size cap is not required.
pub fn lemma_bounds(
    f: &CoverFamily,
    profile: &StructureProfile,
    selections: &[DisjointSelection],
) -> Result<LemmaReport, LemmaError> {
    let report = verify_cover(f, CapMode::None);
    if !report.is_s_cover() {
        return Err(LemmaError::NotACover { linear: report.linear.ok, covered: report.covered.ok });
    }
    let (n, s, m) = (f.n() as i128, f.s() as i128, f.len());
    let int = Rational::from_integer;

    let part1 = BoundCheck::on_m(
        m,
        Some(int(profile.a1 as i128 * (profile.d as i128 - 1) + 1)),
        true,
    );

    let q_len = profile.big_q.len() as i128;
    let part2 = if s >= 3 {
        let value = Rational::new(q_len - 1, s - 2) + int(s - 2 + profile.d as i128);
        let applicable = q_len * (s - 1) > n * (s - 2);
        BoundCheck::on_m(m, Some(value), applicable)
    } else {
        BoundCheck { applicable: false, value: None, satisfied: None }
    };

    let part3 = selections
        .iter()
        .enumerate()
        .map(|(i, sel)| Ok(BoundCheck::on_m(m, Some(disjoint_bound(f, i, sel)?), true)))
        .collect::<Result<Vec<_>, LemmaError>>()?;

    let covered_pairs: i128 = f.lines().iter().map(|l| pairs(l.len()) as i128).sum();
    let rhs = Rational::new(n * n, 2 * (s - 1)) - Rational::new(n, 2);
    let part4 = PairCountCheck { lhs: int(covered_pairs), rhs, satisfied: int(covered_pairs) >= rhs };

    let g = uncovered_graph(f).expect("linearity checked above");
    let edges = g.edge_count();
    let max_edges = (int(1) - Rational::new(1, s - 1)) * Rational::new(n * n, 2);
    let turan = TuranCheck {
        uncovered_edges: edges,
        max_edges,
        satisfied: int(edges as i128) <= max_edges,
        residual: pairs(f.n()) as i128 - covered_pairs - edges as i128,
    };

    Ok(LemmaReport { m, part1, part2, part3, part4, turan })
}
