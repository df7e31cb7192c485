//! One-dimensional crease patterns, the folded-image map and
//! suspicious/innocent intervals.
//!
//! Vertices are numbered left to right: vertex `0` is the left end of the
//! paper, vertices `1..=n` are the creases and vertex `n + 1` is the right
//! end. Segment `k` runs from vertex `k` to vertex `k + 1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Assignment {
    #[serde(rename = "M")]
    Mountain,
    #[serde(rename = "V")]
    Valley,
    #[serde(rename = "U")]
    Unassigned,
}

impl Assignment {
    pub fn is_assigned(self) -> bool {
        self != Assignment::Unassigned
    }

    /// Mountain and valley swap; unassigned stays unassigned.
    pub fn flipped(self) -> Self {
        match self {
            Assignment::Mountain => Assignment::Valley,
            Assignment::Valley => Assignment::Mountain,
            Assignment::Unassigned => Assignment::Unassigned,
        }
    }

    /// Whether a crease with this label may be folded in the given sense.
    pub fn admits(self, valley: bool) -> bool {
        match self {
            Assignment::Mountain => !valley,
            Assignment::Valley => valley,
            Assignment::Unassigned => true,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Assignment::Mountain => "M",
            Assignment::Valley => "V",
            Assignment::Unassigned => "U",
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crease {
    pub pos: Rational,
    pub mv: Assignment,
}

/// Paper `[0, length]` with strictly increasing interior creases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CreasePattern1D {
    length: Rational,
    creases: Vec<Crease>,
}

impl CreasePattern1D {
    pub fn new(length: Rational, creases: Vec<Crease>) -> Result<Self> {
        if !length.is_positive() {
            return Err(Error::InvalidPattern(format!("paper length {length} must be positive")));
        }
        for c in &creases {
            if !c.pos.is_positive() || c.pos >= length {
                return Err(Error::InvalidPattern(format!(
                    "crease at {} lies outside the open paper (0, {length})",
                    c.pos
                )));
            }
        }
        for w in creases.windows(2) {
            if w[0].pos == w[1].pos {
                return Err(Error::InvalidPattern(format!("coincident creases at {}", w[0].pos)));
            }
            if w[0].pos > w[1].pos {
                return Err(Error::InvalidPattern(format!(
                    "crease positions must increase ({} before {})",
                    w[0].pos, w[1].pos
                )));
            }
        }
        Ok(CreasePattern1D { length, creases })
    }

    /// Convenience constructor from integer positions and `"MVU"` letters.
    pub fn from_ints(length: i64, creases: &[(i64, Assignment)]) -> Result<Self> {
        Self::new(
            Rational::from_int(length),
            creases
                .iter()
                .map(|&(p, mv)| Crease { pos: Rational::from_int(p), mv })
                .collect(),
        )
    }

    pub fn length(&self) -> &Rational {
        &self.length
    }

    pub fn creases(&self) -> &[Crease] {
        &self.creases
    }

    pub fn num_creases(&self) -> usize {
        self.creases.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.creases.len() + 2
    }

    /// Position of vertex `v`.
    pub fn vertex(&self, v: usize) -> Rational {
        if v == 0 {
            Rational::zero()
        } else if v <= self.creases.len() {
            self.creases[v - 1].pos.clone()
        } else {
            self.length.clone()
        }
    }

    pub fn is_crease_vertex(&self, v: usize) -> bool {
        v >= 1 && v <= self.creases.len()
    }

    /// Assignment of the crease at vertex `v`.
    pub fn vertex_mv(&self, v: usize) -> Assignment {
        self.creases[v - 1].mv
    }

    /// Crease index (0-based) at an exact position.
    pub fn crease_index(&self, pos: &Rational) -> Option<usize> {
        self.creases.binary_search_by(|c| c.pos.cmp(pos)).ok()
    }

    pub fn segment_length(&self, k: usize) -> Rational {
        self.vertex(k + 1) - self.vertex(k)
    }

    pub fn is_assigned(&self) -> bool {
        self.creases.iter().all(|c| c.mv.is_assigned())
    }

    pub fn is_unassigned(&self) -> bool {
        self.creases.iter().all(|c| !c.mv.is_assigned())
    }

    pub fn with_assignments(&self, mvs: &[Assignment]) -> Self {
        assert_eq!(mvs.len(), self.creases.len());
        CreasePattern1D {
            length: self.length.clone(),
            creases: self
                .creases
                .iter()
                .zip(mvs)
                .map(|(c, &mv)| Crease { pos: c.pos.clone(), mv })
                .collect(),
        }
    }

    /// Reflection `x -> length - x`.
    pub fn mirrored(&self) -> Self {
        CreasePattern1D {
            length: self.length.clone(),
            creases: self
                .creases
                .iter()
                .rev()
                .map(|c| Crease { pos: &self.length - &c.pos, mv: c.mv })
                .collect(),
        }
    }

    pub fn folded_image(&self) -> FoldedImage {
        FoldedImage::new(self)
    }

    /// `f(x)` for a point of the paper.
    pub fn image_of(&self, x: &Rational) -> Result<Rational> {
        if x.is_negative() || x > &self.length {
            return Err(Error::Domain(format!("point {x} is outside the paper [0, {}]", self.length)));
        }
        Ok(self.folded_image().eval(self, x))
    }

    pub fn suspicious_intervals(&self) -> Vec<Interval> {
        let mut ops = 0;
        self.suspicious_intervals_counted(&mut ops)
    }

    /// As [`Self::suspicious_intervals`], accumulating a count of basic
    /// vertex visits into `ops`. The result is sorted smallest first.
    pub fn suspicious_intervals_counted(&self, ops: &mut u64) -> Vec<Interval> {
        let n = self.creases.len();
        let image = self.folded_image();
        let mut out = Vec::new();
        for left in 1..=n {
            for right in (left + 1)..=n {
                let iv = Interval { left, right };
                if iv.is_suspicious_with(self, &image, ops) {
                    out.push(iv);
                }
            }
        }
        sort_intervals(self, &mut out);
        out
    }

    /// Mountain, valley and unassigned counts over the closed interval.
    pub fn crease_counts(&self, iv: Interval) -> Result<(usize, usize, usize)> {
        if !self.is_crease_vertex(iv.left) || !self.is_crease_vertex(iv.right) || iv.left >= iv.right {
            return Err(Error::Domain(format!("{iv:?} does not have crease endpoints")));
        }
        let mut counts = (0, 0, 0);
        for v in iv.left..=iv.right {
            match self.vertex_mv(v) {
                Assignment::Mountain => counts.0 += 1,
                Assignment::Valley => counts.1 += 1,
                Assignment::Unassigned => counts.2 += 1,
            }
        }
        Ok(counts)
    }

    pub fn is_innocent(&self, iv: Interval) -> Result<bool> {
        let (m, v, u) = self.crease_counts(iv)?;
        if u > 0 {
            return Err(Error::Precondition(format!(
                "interval {} contains {u} unassigned crease(s)",
                iv.display(self)
            )));
        }
        Ok(m.abs_diff(v) <= 1)
    }
}

/// Sorts intervals smallest first: by paper length, then by left endpoint.
pub fn sort_intervals(pattern: &CreasePattern1D, ivs: &mut [Interval]) {
    ivs.sort_by_cached_key(|iv| (iv.paper_length(pattern), iv.left));
}

/// A pair of vertex indices `left < right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub left: usize,
    pub right: usize,
}

impl Interval {
    pub fn new(left: usize, right: usize) -> Result<Self> {
        if left >= right {
            return Err(Error::Domain(format!("interval endpoints {left} >= {right}")));
        }
        Ok(Interval { left, right })
    }

    /// The interval between the creases at two positions.
    pub fn between(pattern: &CreasePattern1D, left: &Rational, right: &Rational) -> Result<Self> {
        let find = |p: &Rational| {
            pattern
                .crease_index(p)
                .map(|i| i + 1)
                .ok_or_else(|| Error::Domain(format!("no crease at {p}")))
        };
        Interval::new(find(left)?, find(right)?)
    }

    pub fn is_interior(&self, pattern: &CreasePattern1D) -> bool {
        self.left >= 1 && self.right <= pattern.num_creases()
    }

    pub fn paper_length(&self, pattern: &CreasePattern1D) -> Rational {
        pattern.vertex(self.right) - pattern.vertex(self.left)
    }

    /// Far endpoints of the flaps, as vertex indices.
    pub fn far_endpoints(&self, pattern: &CreasePattern1D) -> (Option<usize>, Option<usize>) {
        let left = self.left.checked_sub(1);
        let right = (self.right < pattern.num_vertices() - 1).then_some(self.right + 1);
        (left, right)
    }

    pub fn num_creases(&self) -> usize {
        self.right - self.left + 1
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }

    pub fn intersection(&self, other: &Interval) -> Option<Interval> {
        let left = self.left.max(other.left);
        let right = self.right.min(other.right);
        (left < right).then_some(Interval { left, right })
    }

    pub fn is_suspicious(&self, pattern: &CreasePattern1D) -> bool {
        let mut ops = 0;
        self.is_suspicious_with(pattern, &pattern.folded_image(), &mut ops)
    }

    fn is_suspicious_with(&self, pattern: &CreasePattern1D, image: &FoldedImage, ops: &mut u64) -> bool {
        if !self.is_interior(pattern) || self.left >= self.right {
            return false;
        }
        let mut lo = image.vertex_image(self.left);
        let mut hi = lo;
        for v in self.left..=self.right {
            *ops += 1;
            let y = image.vertex_image(v);
            if y < lo {
                lo = y;
            }
            if y > hi {
                hi = y;
            }
        }
        let outside = |v: usize| {
            let y = image.vertex_image(v);
            y < lo || y > hi
        };
        outside(self.left - 1) && outside(self.right + 1)
    }

    pub fn display(&self, pattern: &CreasePattern1D) -> String {
        format!("[{}, {}]", pattern.vertex(self.left), pattern.vertex(self.right))
    }
}

/// The folded-image map `f`: each segment is placed by an offset and a
/// direction, with segment 0 stationary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldedImage {
    vertex_images: Vec<Rational>,
}

impl FoldedImage {
    pub fn new(pattern: &CreasePattern1D) -> Self {
        let mut vertex_images = Vec::with_capacity(pattern.num_vertices());
        vertex_images.push(Rational::zero());
        for k in 0..pattern.num_vertices() - 1 {
            let len = pattern.segment_length(k);
            let prev = &vertex_images[k];
            let next = if k % 2 == 0 { prev + &len } else { prev - &len };
            vertex_images.push(next);
        }
        FoldedImage { vertex_images }
    }

    pub fn vertex_image(&self, v: usize) -> &Rational {
        &self.vertex_images[v]
    }

    /// Direction of segment `k`: `+1` or `-1`.
    pub fn direction(k: usize) -> i8 {
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Offset `b` such that `f(x) = b + direction * x` on segment `k`.
    pub fn offset(&self, pattern: &CreasePattern1D, k: usize) -> Rational {
        let start = pattern.vertex(k);
        if Self::direction(k) > 0 {
            &self.vertex_images[k] - &start
        } else {
            &self.vertex_images[k] + &start
        }
    }

    pub fn eval(&self, pattern: &CreasePattern1D, x: &Rational) -> Rational {
        // Segment containing x; vertices map continuously so either side works.
        let n = pattern.num_vertices() - 1;
        let k = (0..n).find(|&k| x <= &pattern.vertex(k + 1)).unwrap_or(n - 1);
        let b = self.offset(pattern, k);
        if Self::direction(k) > 0 {
            b + x
        } else {
            b - x
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Assignment::*;

    fn p(len: i64, cs: &[(i64, Assignment)]) -> CreasePattern1D {
        CreasePattern1D::from_ints(len, cs).unwrap()
    }

    fn positions(pat: &CreasePattern1D, ivs: &[Interval]) -> Vec<(String, String)> {
        ivs.iter()
            .map(|iv| (pat.vertex(iv.left).to_string(), pat.vertex(iv.right).to_string()))
            .collect()
    }

    #[test]
    fn folded_image_examples() {
        let pat = p(8, &[(3, Unassigned), (5, Unassigned)]);
        assert_eq!(pat.image_of(&0.into()).unwrap(), 0.into());
        assert_eq!(pat.image_of(&5.into()).unwrap(), 1.into());
        assert_eq!(pat.image_of(&8.into()).unwrap(), 4.into());
        assert_eq!(pat.image_of(&4.into()).unwrap(), 2.into());
        assert!(matches!(pat.image_of(&9.into()), Err(Error::Domain(_))));
        assert!(matches!(pat.image_of(&(-1).into()), Err(Error::Domain(_))));
    }

    #[test]
    fn suspicious_examples() {
        let a = p(8, &[(3, Mountain), (5, Mountain)]);
        assert_eq!(positions(&a, &a.suspicious_intervals()), vec![("3".into(), "5".into())]);

        let b = p(4, &[(1, Mountain), (2, Mountain), (3, Mountain)]);
        assert!(b.suspicious_intervals().is_empty());

        let c = p(5, &[]);
        assert!(c.suspicious_intervals().is_empty());

        let d = p(12, &[(3, Mountain), (5, Unassigned), (7, Mountain)]);
        assert_eq!(positions(&d, &d.suspicious_intervals()), vec![("3".into(), "7".into())]);
    }

    #[test]
    fn crease_count_examples() {
        let a = p(8, &[(3, Mountain), (5, Mountain)]);
        assert_eq!(a.crease_counts(Interval { left: 1, right: 2 }).unwrap(), (2, 0, 0));
        let b = p(12, &[(3, Mountain), (5, Unassigned), (7, Mountain)]);
        assert_eq!(b.crease_counts(Interval { left: 1, right: 3 }).unwrap(), (2, 0, 1));
        let c = p(8, &[(3, Mountain), (5, Valley)]);
        assert_eq!(c.crease_counts(Interval { left: 1, right: 2 }).unwrap(), (1, 1, 0));
        assert!(matches!(c.crease_counts(Interval { left: 0, right: 2 }), Err(Error::Domain(_))));
    }

    #[test]
    fn innocence_examples() {
        let iv = Interval { left: 1, right: 2 };
        assert!(!p(8, &[(3, Mountain), (5, Mountain)]).is_innocent(iv).unwrap());
        assert!(p(8, &[(3, Mountain), (5, Valley)]).is_innocent(iv).unwrap());
        let odd = p(12, &[(3, Mountain), (5, Valley), (7, Mountain)]);
        assert!(odd.is_innocent(Interval { left: 1, right: 3 }).unwrap());
        let mixed = p(8, &[(3, Mountain), (5, Unassigned)]);
        assert!(matches!(mixed.is_innocent(iv), Err(Error::Precondition(_))));
    }

    #[test]
    fn rejects_bad_patterns() {
        let cs = |v: &[i64]| {
            v.iter()
                .map(|&x| Crease { pos: x.into(), mv: Mountain })
                .collect::<Vec<_>>()
        };
        assert!(CreasePattern1D::new(0.into(), vec![]).is_err());
        assert!(CreasePattern1D::new(4.into(), cs(&[0])).is_err());
        assert!(CreasePattern1D::new(4.into(), cs(&[4])).is_err());
        assert!(CreasePattern1D::new(4.into(), cs(&[2, 2])).is_err());
        assert!(CreasePattern1D::new(4.into(), cs(&[3, 2])).is_err());
    }

    #[test]
    fn non_interior_never_suspicious() {
        let pat = p(8, &[(3, Mountain), (5, Mountain)]);
        assert!(!Interval { left: 0, right: 2 }.is_suspicious(&pat));
        assert!(!Interval { left: 1, right: 3 }.is_suspicious(&pat));
    }
}
