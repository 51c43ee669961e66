//! Deciding the s-cover axioms.
//!
//! A family passes when it is linear (two lines share at most one point),
//! covered (every `s`-set of points contains a pair lying on a line) and every
//! line respects the requested [`CapMode`]. Failures carry witnesses.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{find_clique, UncoveredGraph};
use crate::model::{pairs, CapMode, CoverFamily, PointId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("lines {first} and {second} share {shared} points; the family is not linear")]
    NotLinear { first: usize, second: usize, shared: usize },
}

/// Two lines meeting in more than one point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearityViolation {
    pub first: usize,
    pub second: usize,
    pub shared: Vec<PointId>,
}

/// Finds the first pair of lines `i < j` (canonical positions, lexicographic in
/// `(i, j)`) sharing two or more points.
pub fn check_linearity(f: &CoverFamily) -> (bool, Option<LinearityViolation>) {
    match first_linearity_violation(f) {
        None => (true, None),
        Some(v) => (false, Some(v)),
    }
}

fn first_linearity_violation(f: &CoverFamily) -> Option<LinearityViolation> {
    if pair_claims_disjoint(f) {
        return None;
    }
    let lines = f.lines();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let shared = lines[i].intersection(&lines[j]);
            if shared.len() > 1 {
                return Some(LinearityViolation { first: i, second: j, shared });
            }
        }
    }
    unreachable!("a pair claimed twice implies two lines sharing it")
}

/// Fast path: every pair is claimed by at most one line.
fn pair_claims_disjoint(f: &CoverFamily) -> bool {
    let n = f.n();
    let mut claimed = crate::graph::BitSet::new(n * n);
    for line in f.lines() {
        let pts: Vec<usize> = line.indices().collect();
        for (i, &a) in pts.iter().enumerate() {
            for &b in &pts[i + 1..] {
                let key = a * n + b;
                if claimed.contains(key) {
                    return false;
                }
                claimed.insert(key);
            }
        }
    }
    true
}

/// The graph of pairs lying in no line. Rejects non-linear families, since
/// only then does each covered pair belong to exactly one line.
pub fn uncovered_graph(f: &CoverFamily) -> Result<UncoveredGraph, VerifyError> {
    if let Some(v) = first_linearity_violation(f) {
        return Err(VerifyError::NotLinear { first: v.first, second: v.second, shared: v.shared.len() });
    }
    let g = UncoveredGraph::of_family(f);
    debug_assert_eq!(
        g.edge_count() + f.lines().iter().map(|l| pairs(l.len())).sum::<usize>(),
        pairs(f.n())
    );
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearityCheck {
    pub ok: bool,
    pub witness: Option<LinearityViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageCheck {
    pub ok: bool,
    /// An `s`-set with no pair on a line.
    pub witness: Option<Vec<PointId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapCheck {
    pub ok: bool,
    /// Canonical position of the first (largest) oversized line.
    pub witness: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub s: usize,
    pub m: usize,
    pub linear: LinearityCheck,
    pub covered: CoverageCheck,
    pub cap: CapCheck,
    pub cap_mode: CapMode,
}

impl VerificationReport {
    /// All three checks passed.
    pub fn is_valid(&self) -> bool {
        self.linear.ok && self.covered.ok && self.cap.ok
    }

    /// Linear and covered, ignoring the cap.
    pub fn is_s_cover(&self) -> bool {
        self.linear.ok && self.covered.ok
    }
}

/// Runs all three checks. Coverage is decided as K_s-freeness of the
/// uncovered graph, which is meaningful for non-linear families as well.
pub fn verify_cover(f: &CoverFamily, cap_mode: CapMode) -> VerificationReport {
    let (lin_ok, lin_w) = check_linearity(f);
    let g = UncoveredGraph::of_family(f);
    let clique = find_clique(&g, f.s());
    #[cfg(debug_assertions)]
    if f.n() <= 12 {
        debug_assert_eq!(
            clique.is_some(),
            crate::graph::find_clique_exhaustive(&g, f.s()).is_some()
        );
    }
    let oversized = f
        .lines()
        .iter()
        .position(|l| !cap_mode.admits(l.len(), f.n(), f.s()));
    VerificationReport {
        n: f.n(),
        s: f.s(),
        m: f.len(),
        linear: LinearityCheck { ok: lin_ok, witness: lin_w },
        covered: CoverageCheck { ok: clique.is_none(), witness: clique },
        cap: CapCheck { ok: oversized.is_none(), witness: oversized },
        cap_mode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{grid_construction, near_pencil, projective_plane, recursive_tight};
    use crate::model::make_family;

    /// Brute-force coverage: every s-subset must contain a pair on some line.
    fn covered_by_enumeration(f: &CoverFamily) -> bool {
        let n = f.n();
        let mut on_line = vec![vec![false; n]; n];
        for l in f.lines() {
            for a in l.indices() {
                for b in l.indices() {
                    on_line[a][b] = true;
                }
            }
        }
        fn rec(start: usize, chosen: &mut Vec<usize>, s: usize, n: usize, on: &[Vec<bool>]) -> bool {
            if chosen.len() == s {
                return chosen
                    .iter()
                    .enumerate()
                    .any(|(i, &a)| chosen[i + 1..].iter().any(|&b| on[a][b]));
            }
            (start..n).all(|v| {
                chosen.push(v);
                let ok = rec(v + 1, chosen, s, n, on);
                chosen.pop();
                ok
            })
        }
        rec(0, &mut Vec::new(), f.s(), n, &on_line)
    }

    #[test]
    fn linearity_examples() {
        let fano = projective_plane(2).unwrap();
        assert_eq!(check_linearity(&fano), (true, None));

        let bad = make_family(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let (ok, w) = check_linearity(&bad);
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!((w.first, w.second), (0, 1));
        assert_eq!(w.shared, vec![PointId::new(0), PointId::new(1)]);

        let empty = make_family(4, 3, Vec::<Vec<usize>>::new()).unwrap();
        assert!(check_linearity(&empty).0);
    }

    #[test]
    fn uncovered_graph_examples() {
        assert_eq!(uncovered_graph(&near_pencil(4).unwrap()).unwrap().edge_count(), 0);

        // C(7,2) - 5 * C(3,2) = 21 - 15 = 6
        let g = uncovered_graph(&grid_construction(3, 3).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 6);
        let direct = (0..7usize)
            .flat_map(|a| (a + 1..7).map(move |b| (a, b)))
            .filter(|&(a, b)| {
                !grid_construction(3, 3)
                    .unwrap()
                    .lines()
                    .iter()
                    .any(|l| l.contains(PointId::new(a)) && l.contains(PointId::new(b)))
            })
            .count();
        assert_eq!(direct, 6);

        let empty = make_family(4, 3, Vec::<Vec<usize>>::new()).unwrap();
        assert_eq!(uncovered_graph(&empty).unwrap().edge_count(), 6);

        let bad = make_family(4, 3, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert_eq!(
            uncovered_graph(&bad),
            Err(VerifyError::NotLinear { first: 0, second: 1, shared: 2 })
        );
    }

    #[test]
    fn grid_uncovered_graph_is_triangle_free() {
        let g = uncovered_graph(&grid_construction(3, 3).unwrap()).unwrap();
        assert!(!crate::graph::has_clique(&g, 3).0);
    }

    #[test]
    fn grid_figure_verifies() {
        let r = verify_cover(&grid_construction(5, 4).unwrap(), CapMode::Standard);
        assert!(r.linear.ok && r.covered.ok && r.cap.ok);
        assert!(r.is_valid());
    }

    #[test]
    fn deleting_a_tight_line_breaks_coverage() {
        let f = recursive_tight(13, 3).unwrap();
        let mut breaking = 0;
        for i in 0..f.len() {
            let g = f.without_line(i);
            let r = verify_cover(&g, CapMode::Standard);
            assert_eq!(r.covered.ok, covered_by_enumeration(&g));
            if !r.covered.ok {
                breaking += 1;
                let w: Vec<usize> = r.covered.witness.unwrap().iter().map(|p| p.index()).collect();
                assert_eq!(w.len(), 3);
                for (x, &a) in w.iter().enumerate() {
                    for &b in &w[x + 1..] {
                        assert!(!g.lines().iter().any(|l| l.contains(PointId::new(a)) && l.contains(PointId::new(b))));
                    }
                }
            }
        }
        // every line of this tight family is needed
        assert_eq!(breaking, f.len());
    }

    #[test]
    fn oversized_line_reported() {
        let f = make_family(15, 3, vec![(0..8).collect::<Vec<_>>()]).unwrap();
        let r = verify_cover(&f, CapMode::Standard);
        assert!(!r.cap.ok);
        assert_eq!(r.cap.witness, Some(0));
        assert!(verify_cover(&f, CapMode::None).cap.ok);
    }

    #[test]
    fn strict_mode_rejects_tight_lines() {
        let f = grid_construction(5, 4).unwrap();
        let r = verify_cover(&f, CapMode::Strict);
        assert!(r.is_s_cover());
        assert!(!r.cap.ok);
        assert_eq!(r.cap.witness, Some(0));
    }

    #[test]
    fn verification_matches_enumeration_on_random_families() {
        use proptest::prelude::*;
        use proptest::test_runner::TestRunner;
        let mut runner = TestRunner::new(ProptestConfig::with_cases(300));
        let strat = (3usize..=8, 2usize..=4).prop_flat_map(|(n, s)| {
            (
                Just(n),
                Just(s),
                proptest::collection::btree_set(proptest::collection::btree_set(0..n, 2..=n.min(4)), 0..8),
            )
        });
        runner
            .run(&strat, |(n, s, raw)| {
                let f = make_family(n, s, raw.into_iter().map(|l| l.into_iter().collect::<Vec<_>>())).unwrap();
                let r = verify_cover(&f, CapMode::None);
                prop_assert_eq!(r.covered.ok, covered_by_enumeration(&f));
                Ok(())
            })
            .unwrap();
    }
}
