//! Explicit s-cover families.
//!
//! Every constructor returns a canonically ordered [`CoverFamily`] with the
//! size stated in its documentation; the checks themselves live in
//! [`crate::verify`].

use thiserror::Error;

use crate::field::{is_prime, prime_in_interval, FieldError, PrimeField};
use crate::model::{cap_of, make_family, CoverFamily, ModelError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("grid needs s >= 3 and t >= s (rows have size s, the cap is t); got t = {t}, s = {s}")]
    GridShape { t: usize, s: usize },
    #[error("near pencil needs n >= 3, got {0}")]
    PencilTooSmall(usize),
    #[error("plane order {0} is not prime")]
    NotPrime(u64),
    #[error("tight family needs s >= 2 and (s-1) | (n-1); got n = {n}, s = {s}")]
    NotDivisible { n: usize, s: usize },
    #[error("tight family needs t = (n-1)/(s-1) >= 2 so the final near pencil has >= 3 points; got t = {t}")]
    TooSmall { t: usize },
    #[error("asymptotic construction: {0}")]
    Precondition(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Row/column parameters of the grid construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub t: usize,
    pub s: usize,
}

impl GridSpec {
    pub fn new(t: usize, s: usize) -> Result<Self, ConstructionError> {
        if s < 3 || t < s {
            return Err(ConstructionError::GridShape { t, s });
        }
        Ok(GridSpec { t, s })
    }

    pub fn n(&self) -> usize {
        self.t * (self.s - 1) + 1
    }

    /// Label of the grid point in row `row` and column `col` (column-major).
    pub fn point(&self, row: usize, col: usize) -> usize {
        col * self.t + row
    }

    /// The extra point appended to every row.
    pub fn apex(&self) -> usize {
        self.t * (self.s - 1)
    }

    pub fn build(&self) -> CoverFamily {
        let cols = (0..self.s - 1).map(|c| (0..self.t).map(|r| self.point(r, c)).collect::<Vec<_>>());
        let rows = (0..self.t).map(|r| {
            (0..self.s - 1)
                .map(|c| self.point(r, c))
                .chain(std::iter::once(self.apex()))
                .collect::<Vec<_>>()
        });
        make_family(self.n(), self.s, cols.chain(rows)).expect("grid lines are well formed")
    }
}

/// `s-1` columns of size `t` plus `t` rows extended by a common apex, on
/// `t(s-1)+1` points: `t+s-1` lines.
pub fn grid_construction(t: usize, s: usize) -> Result<CoverFamily, ConstructionError> {
    Ok(GridSpec::new(t, s)?.build())
}

fn near_pencil_lines(points: &[usize]) -> Vec<Vec<usize>> {
    let (apex, base) = points.split_last().expect("non-empty");
    std::iter::once(base.to_vec())
        .chain(base.iter().map(|&p| vec![p, *apex]))
        .collect()
}

/// One line through `0..n-1` minus the last point, plus the `n-1` pairs joining
/// the last point to it. A linear space with `n` lines, `s = 2`.
pub fn near_pencil(n: usize) -> Result<CoverFamily, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::PencilTooSmall(n));
    }
    let pts: Vec<usize> = (0..n).collect();
    Ok(make_family(n, 2, near_pencil_lines(&pts))?)
}

/// Points and lines of PG(2, q) as index sets. Points are the normalized
/// nonzero vectors of F_q^3 (first nonzero coordinate 1) in lexicographic
/// order; line `[a:b:c]` holds every point `x` with `a x0 + b x1 + c x2 = 0`.
fn plane_lines(field: &PrimeField) -> Vec<Vec<usize>> {
    let q = field.order();
    let mut pts: Vec<[u64; 3]> = Vec::new();
    pts.push([0, 0, 1]);
    for y in 0..q {
        pts.push([0, 1, y]);
    }
    for y in 0..q {
        for z in 0..q {
            pts.push([1, y, z]);
        }
    }
    pts.sort_unstable();
    pts.iter()
        .map(|l| {
            pts.iter()
                .enumerate()
                .filter(|(_, x)| {
                    let dot = field.add(
                        field.add(field.mul(l[0], x[0]), field.mul(l[1], x[1])),
                        field.mul(l[2], x[2]),
                    );
                    dot == 0
                })
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// Projective plane of prime order `q`: `q^2+q+1` points and lines, `s = 2`.
pub fn projective_plane(q: u64) -> Result<CoverFamily, ConstructionError> {
    let field = PrimeField::new(q).map_err(|_| ConstructionError::NotPrime(q))?;
    let n = (q * q + q + 1) as usize;
    Ok(make_family(n, 2, plane_lines(&field))?)
}

/// Canonical tight family for `(s-1) | (n-1)`.
///
/// With `t = (n-1)/(s-1)`, peel off a fresh `t`-set as one line and recurse on
/// the remaining `n - t` points with `s - 1`; `t` is the same at every level.
/// At `s = 2` the remaining `t + 1` points carry a near pencil. Result: exactly
/// `t + s - 1` lines, none larger than `t`.
pub fn recursive_tight(n: usize, s: usize) -> Result<CoverFamily, ConstructionError> {
    if s < 2 || n < 1 || (n - 1) % (s - 1) != 0 {
        return Err(ConstructionError::NotDivisible { n, s });
    }
    let t = (n - 1) / (s - 1);
    if t < 2 {
        return Err(ConstructionError::TooSmall { t });
    }
    let mut lines = Vec::with_capacity(t + s - 1);
    let mut next = 0;
    for _ in 0..s - 2 {
        lines.push((next..next + t).collect::<Vec<_>>());
        next += t;
    }
    debug_assert_eq!(n - next, t + 1);
    let rest: Vec<usize> = (next..n).collect();
    lines.extend(near_pencil_lines(&rest));
    Ok(make_family(n, s, lines)?)
}

/// Sizes and the prime used by [`asymptotic_cover`], exposed for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AsymptoticPlan {
    pub q: u64,
    /// `floor((n-1)/(s-1))`: size of each of the `s-3` full blocks.
    pub block: usize,
    /// `n - x`: size of the residual block.
    pub residual: usize,
    /// `q^2 + q + 1`.
    pub plane_points: usize,
}

/// Checks every precondition of the asymptotic construction and returns its
/// layout, or a message naming the inequality that fails.
pub fn asymptotic_plan(n: usize, s: usize) -> Result<AsymptoticPlan, ConstructionError> {
    if s < 3 || n < s {
        return Err(ConstructionError::Precondition(format!(
            "needs n >= s >= 3, got n = {n}, s = {s}"
        )));
    }
    let q = prime_in_interval(n, s)?.q;
    let block = cap_of(n, s);
    let plane_points = (q * q + q + 1) as usize;
    let x = (s - 3) * block + plane_points;
    if x > n {
        return Err(ConstructionError::Precondition(format!(
            "(i) x = (s-3)*floor((n-1)/(s-1)) + q^2+q+1 = {x} exceeds n = {n} (q = {q})"
        )));
    }
    let residual = n - x;
    if residual > block {
        return Err(ConstructionError::Precondition(format!(
            "(ii) residual block n - x = {residual} exceeds floor((n-1)/(s-1)) = {block} (q = {q})"
        )));
    }
    if (q as usize + 1) * (s - 1) >= n - 1 {
        return Err(ConstructionError::Precondition(format!(
            "(iii) plane line size q+1 = {} is not below (n-1)/(s-1) = {}/{} (q = {q})",
            q + 1,
            n - 1,
            s - 1
        )));
    }
    if residual < 2 {
        return Err(ConstructionError::Precondition(format!(
            "(iv) residual block n - x = {residual} is below the minimum line size 2 (q = {q})"
        )));
    }
    Ok(AsymptoticPlan { q, block, residual, plane_points })
}

/// `s-3` disjoint blocks of size `floor((n-1)/(s-1))`, one residual block of
/// size `n - x`, and a projective plane of order `q` on the remaining
/// `q^2+q+1` points, with `q` the least prime `>= sqrt(n/(s-1))`.
/// Exactly `q^2+q+1+s-2` lines.
pub fn asymptotic_cover(n: usize, s: usize) -> Result<CoverFamily, ConstructionError> {
    let plan = asymptotic_plan(n, s)?;
    let mut lines: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for _ in 0..s - 3 {
        lines.push((next..next + plan.block).collect());
        next += plan.block;
    }
    lines.push((next..next + plan.residual).collect());
    next += plan.residual;
    let field = PrimeField::new(plan.q)?;
    lines.extend(
        plane_lines(&field)
            .into_iter()
            .map(|l| l.into_iter().map(|p| p + next).collect()),
    );
    debug_assert_eq!(next + plan.plane_points, n);
    Ok(make_family(n, s, lines)?)
}

/// True when [`projective_plane`] accepts `q`.
pub fn is_plane_order(q: u64) -> bool {
    is_prime(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_sizes(f: &CoverFamily) -> Vec<usize> {
        f.sizes()
    }

    #[test]
    fn grid_figure_example() {
        let f = grid_construction(5, 4).unwrap();
        assert_eq!(f.n(), 16);
        assert_eq!(f.len(), 8);
        assert_eq!(sorted_sizes(&f), vec![5, 5, 5, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn small_grids() {
        let f = grid_construction(3, 3).unwrap();
        assert_eq!((f.n(), f.len()), (7, 5));
        assert_eq!(sorted_sizes(&f), vec![3; 5]);
        // column-major labels put a column first
        assert_eq!(f.to_index_lines()[0], vec![0, 1, 2]);

        let f = grid_construction(4, 3).unwrap();
        assert_eq!((f.n(), f.len()), (9, 6));

        assert_eq!(grid_construction(2, 3), Err(ConstructionError::GridShape { t: 2, s: 3 }));
        assert!(grid_construction(5, 2).is_err());
    }

    #[test]
    fn grid_sizes_over_parameter_range() {
        for s in 3..=6 {
            for t in s..=12 {
                let f = grid_construction(t, s).unwrap();
                assert_eq!(f.len(), t + s - 1);
                assert_eq!(f.n(), t * (s - 1) + 1);
            }
        }
    }

    #[test]
    fn near_pencil_examples() {
        assert_eq!(near_pencil(3).unwrap().to_index_lines(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(
            near_pencil(4).unwrap().to_index_lines(),
            vec![vec![0, 1, 2], vec![0, 3], vec![1, 3], vec![2, 3]]
        );
        let f = near_pencil(10).unwrap();
        assert_eq!(f.len(), 10);
        assert_eq!(f.sizes()[0], 9);
        assert!(f.sizes()[1..].iter().all(|&a| a == 2));
        assert_eq!(near_pencil(2), Err(ConstructionError::PencilTooSmall(2)));
    }

    #[test]
    fn plane_counts() {
        for (q, n) in [(2u64, 7usize), (3, 13), (5, 31)] {
            let f = projective_plane(q).unwrap();
            assert_eq!(f.n(), n);
            assert_eq!(f.len(), n);
            assert!(f.sizes().iter().all(|&a| a == q as usize + 1));
        }
        assert_eq!(projective_plane(4), Err(ConstructionError::NotPrime(4)));
        assert_eq!(projective_plane(1), Err(ConstructionError::NotPrime(1)));
    }

    #[test]
    fn tight_examples() {
        let f = recursive_tight(13, 3).unwrap();
        assert_eq!(f.len(), 8);
        assert_eq!(f.sizes(), vec![6, 6, 2, 2, 2, 2, 2, 2]);
        assert_eq!(recursive_tight(16, 4).unwrap().len(), 8);
        assert_eq!(recursive_tight(7, 2).unwrap(), near_pencil(7).unwrap());
        assert_eq!(recursive_tight(14, 3), Err(ConstructionError::NotDivisible { n: 14, s: 3 }));
        assert_eq!(recursive_tight(3, 3), Err(ConstructionError::TooSmall { t: 1 }));
    }

    #[test]
    fn tight_size_identity() {
        for s in 2..=7 {
            for t in 2..=30 {
                let n = t * (s - 1) + 1;
                let f = recursive_tight(n, s).unwrap();
                assert_eq!(f.len() * (s - 1), (n - 1) + (s - 1) * (s - 1));
                assert!(f.max_line_size() <= t);
            }
        }
    }

    #[test]
    fn asymptotic_examples() {
        let f = asymptotic_cover(1001, 4).unwrap();
        assert_eq!(f.len(), 383);
        let sizes = f.sizes();
        assert_eq!(&sizes[..2], &[333, 287]);
        assert!(sizes[2..].iter().all(|&a| a == 20));
        assert_eq!(sizes.len() - 2, 381);

        let f = asymptotic_cover(50, 3).unwrap();
        assert_eq!(f.len(), 32);
        assert_eq!(f.sizes()[0], 19);
        assert!(f.sizes()[1..].iter().all(|&a| a == 6));
    }

    #[test]
    fn asymptotic_reports_failed_inequality() {
        // q = 3 uses all 13 points, leaving an empty residual block.
        match asymptotic_cover(13, 3) {
            Err(ConstructionError::Precondition(msg)) => assert!(msg.starts_with("(iv)"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        match asymptotic_plan(7, 3) {
            Err(ConstructionError::Precondition(msg)) => assert!(msg.starts_with("(iii)"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        // q = 3 plane needs 13 points
        match asymptotic_plan(9, 3) {
            Err(ConstructionError::Precondition(msg)) => assert!(msg.starts_with("(i)"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        // q = 2, block 3, residual 20 - 3*3 - 7 = 4
        match asymptotic_plan(20, 6) {
            Err(ConstructionError::Precondition(msg)) => assert!(msg.starts_with("(ii)"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(asymptotic_plan(15, 3).is_ok());
    }

    #[test]
    fn asymptotic_size_formula() {
        for s in 3..=5 {
            for n in (200..3000).step_by(37) {
                if let Ok(plan) = asymptotic_plan(n, s) {
                    let f = asymptotic_cover(n, s).unwrap();
                    let q = plan.q as usize;
                    assert_eq!(f.len(), q * q + q + 1 + s - 2);
                    assert!(f.max_line_size() <= cap_of(n, s));
                }
            }
        }
    }
}
