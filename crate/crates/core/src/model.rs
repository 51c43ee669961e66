//! Incidence model: points, lines, families and the line-size cap.
//!
//! A [`CoverFamily`] is a set of lines over the ground set `{0, .., n-1}`
//! together with the parameter `s`. Families are always held in canonical
//! order: lines sorted by size (largest first), then lexicographically, so
//! that `lines()[0]` is a largest line and sizes are non-increasing.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Exact rational used for every bound the crate reports.
pub type Rational = Ratio<i128>;

/// A point of the ground set `{0, .., n-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PointId(u32);

impl PointId {
    pub fn new(index: usize) -> Self {
        PointId(u32::try_from(index).expect("point index exceeds u32"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A line: a strictly increasing sequence of at least two points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Line {
    points: Vec<PointId>,
}

impl Line {
    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false for a well-formed line; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.points.iter().map(|p| p.index())
    }

    /// Points shared with `other`, in increasing order.
    pub fn intersection(&self, other: &Line) -> Vec<PointId> {
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < self.points.len() && j < other.points.len() {
            match self.points[i].cmp(&other.points[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(self.points[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }
}

/// Size descending, then lexicographic.
fn canonical_cmp(a: &Line, b: &Line) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| a.points.cmp(&b.points))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid parameters n = {n}, s = {s} (need n >= 1, s >= 2)")]
    InvalidParameters { n: usize, s: usize },
    #[error("line {line}: point {point} out of range for n = {n}")]
    PointOutOfRange { line: usize, point: usize, n: usize },
    #[error("line {line}: duplicate point {point}")]
    DuplicatePoint { line: usize, point: usize },
    #[error("line {line}: size {size} is below 2")]
    LineTooSmall { line: usize, size: usize },
    #[error("lines {first} and {second} are identical")]
    DuplicateLine { first: usize, second: usize },
}

/// A collection of lines on `n` points, with the cover parameter `s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CoverFamily {
    n: usize,
    s: usize,
    lines: Vec<Line>,
}

impl CoverFamily {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// Number of lines, `m`.
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.lines.iter().map(Line::len).collect()
    }

    pub fn max_line_size(&self) -> usize {
        self.lines.first().map_or(0, Line::len)
    }

    /// Number of lines through each point.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for line in &self.lines {
            for p in line.indices() {
                deg[p] += 1;
            }
        }
        deg
    }

    /// Lines as plain index vectors, in canonical order.
    pub fn to_index_lines(&self) -> Vec<Vec<usize>> {
        self.lines.iter().map(|l| l.indices().collect()).collect()
    }

    /// The same family with a different cover parameter.
    pub fn with_s(&self, s: usize) -> Result<CoverFamily, ModelError> {
        if s < 2 {
            return Err(ModelError::InvalidParameters { n: self.n, s });
        }
        Ok(CoverFamily { n: self.n, s, lines: self.lines.clone() })
    }

    /// The family with line `index` (canonical position) removed.
    pub fn without_line(&self, index: usize) -> CoverFamily {
        let mut lines = self.lines.clone();
        lines.remove(index);
        CoverFamily { n: self.n, s: self.s, lines }
    }

    /// Re-sorts into canonical order. A no-op on any value built by [`make_family`].
    pub fn canonicalize(mut self) -> CoverFamily {
        self.lines.sort_by(canonical_cmp);
        self
    }
}

/// Validates raw input and returns the canonically ordered family.
///
/// Line indices in errors refer to the position in the input.
pub fn make_family<I, L>(n: usize, s: usize, lines: I) -> Result<CoverFamily, ModelError>
where
    I: IntoIterator<Item = L>,
    L: IntoIterator<Item = usize>,
{
    if n < 1 || s < 2 {
        return Err(ModelError::InvalidParameters { n, s });
    }
    let mut built: Vec<(usize, Line)> = Vec::new();
    for (li, raw) in lines.into_iter().enumerate() {
        let mut pts: Vec<usize> = raw.into_iter().collect();
        if let Some(&point) = pts.iter().find(|&&p| p >= n) {
            return Err(ModelError::PointOutOfRange { line: li, point, n });
        }
        pts.sort_unstable();
        if let Some(w) = pts.windows(2).find(|w| w[0] == w[1]) {
            return Err(ModelError::DuplicatePoint { line: li, point: w[0] });
        }
        if pts.len() < 2 {
            return Err(ModelError::LineTooSmall { line: li, size: pts.len() });
        }
        built.push((li, Line { points: pts.into_iter().map(PointId::new).collect() }));
    }
    built.sort_by(|a, b| canonical_cmp(&a.1, &b.1).then(a.0.cmp(&b.0)));
    if let Some(w) = built.windows(2).find(|w| w[0].1 == w[1].1) {
        let (first, second) = (w[0].0.min(w[1].0), w[0].0.max(w[1].0));
        return Err(ModelError::DuplicateLine { first, second });
    }
    Ok(CoverFamily { n, s, lines: built.into_iter().map(|(_, l)| l).collect() })
}

/// Which maximum line size a family must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CapMode {
    /// `a (s-1) <= n-1`.
    #[default]
    Standard,
    /// `(a+1)(s-1) <= n-1`: one below the standard cap.
    Strict,
    /// No size restriction.
    None,
}

impl CapMode {
    /// Whether a line of size `a` is admissible on `n` points for parameter `s`.
    pub fn admits(self, a: usize, n: usize, s: usize) -> bool {
        let (a, n, s) = (a as u128, n as u128, s as u128);
        match self {
            CapMode::Standard => a * (s - 1) + 1 <= n,
            CapMode::Strict => (a + 1) * (s - 1) + 1 <= n,
            CapMode::None => true,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CapMode::Standard => "standard",
            CapMode::Strict => "strict",
            CapMode::None => "none",
        }
    }
}

impl std::str::FromStr for CapMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(CapMode::Standard),
            "strict" => Ok(CapMode::Strict),
            "none" => Ok(CapMode::None),
            other => Err(format!("unknown cap mode `{other}` (expected standard, strict or none)")),
        }
    }
}

impl fmt::Display for CapMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Largest admissible line size, `floor((n-1)/(s-1))`.
pub fn cap_of(n: usize, s: usize) -> usize {
    assert!(s >= 2 && n >= 1, "cap_of needs s >= 2 and n >= 1");
    (n - 1) / (s - 1)
}

/// The lower bound `(n-1)/(s-1) + s - 1` as an exact rational.
pub fn bound_of(n: usize, s: usize) -> Rational {
    assert!(s >= 2 && n >= 1, "bound_of needs s >= 2 and n >= 1");
    Rational::new(n as i128 - 1, s as i128 - 1) + Rational::from_integer(s as i128 - 1)
}

/// `C(k, 2)`.
#[inline]
pub fn pairs(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Serializes a rational as `{"num": .., "den": ..}`.
pub fn serialize_rational<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = ser.serialize_struct("Rational", 2)?;
    st.serialize_field("num", r.numer())?;
    st.serialize_field("den", r.denom())?;
    st.end()
}

pub fn serialize_opt_rational<S: Serializer>(
    r: &Option<Rational>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => serialize_rational(r, ser),
        None => ser.serialize_none(),
    }
}
