//! Orthogonal crease patterns on rectangular paper, and the one-layer
//! decision by reduction to 1D.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::mixed_assign::{decide_mixed, LayerModel, MixedVerdict};
use crate::model::{Assignment, Crease, CreasePattern1D};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Vertical line `x = coord`, spanning `y` in `[from, to]`.
    V,
    /// Horizontal line `y = coord`, spanning `x` in `[from, to]`.
    H,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::V => Axis::H,
            Axis::H => Axis::V,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RectCrease {
    pub axis: Axis,
    pub coord: Rational,
    pub from: Rational,
    pub to: Rational,
    pub mv: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RectPattern {
    width: Rational,
    height: Rational,
    creases: Vec<RectCrease>,
}

impl RectPattern {
    pub fn new(width: Rational, height: Rational, creases: Vec<RectCrease>) -> Result<Self> {
        if !width.is_positive() || !height.is_positive() {
            return Err(Error::InvalidPattern("rectangle sides must be positive".into()));
        }
        for c in &creases {
            let (across, along) = match c.axis {
                Axis::V => (&width, &height),
                Axis::H => (&height, &width),
            };
            if !c.coord.is_positive() || &c.coord >= across {
                return Err(Error::InvalidPattern(format!(
                    "{:?} crease at {} is not strictly inside the paper",
                    c.axis, c.coord
                )));
            }
            if c.from.is_negative() || &c.to > along || c.from >= c.to {
                return Err(Error::InvalidPattern(format!(
                    "{:?} crease at {} has bad extent [{}, {}]",
                    c.axis, c.coord, c.from, c.to
                )));
            }
        }
        for (i, a) in creases.iter().enumerate() {
            for b in &creases[i + 1..] {
                if a.axis == b.axis && a.coord == b.coord && a.from < b.to && b.from < a.to {
                    return Err(Error::InvalidPattern(format!(
                        "overlapping {:?} creases on line {}",
                        a.axis, a.coord
                    )));
                }
            }
        }
        Ok(RectPattern { width, height, creases })
    }

    pub fn width(&self) -> &Rational {
        &self.width
    }

    pub fn height(&self) -> &Rational {
        &self.height
    }

    pub fn creases(&self) -> &[RectCrease] {
        &self.creases
    }

    /// Side length along which creases of `axis` run.
    pub fn span(&self, axis: Axis) -> &Rational {
        match axis {
            Axis::V => &self.height,
            Axis::H => &self.width,
        }
    }

    /// Side length across which creases of `axis` are positioned.
    pub fn extent(&self, axis: Axis) -> &Rational {
        match axis {
            Axis::V => &self.width,
            Axis::H => &self.height,
        }
    }

    /// Creases of a 1D pattern as full-height vertical lines.
    pub fn embed_1d(pattern: &CreasePattern1D, height: Rational) -> Result<Self> {
        Self::embed_1d_along(pattern, height, Axis::V)
    }

    /// Creases of a 1D pattern as full lines of the given axis.
    pub fn embed_1d_along(pattern: &CreasePattern1D, span: Rational, axis: Axis) -> Result<Self> {
        let creases = pattern
            .creases()
            .iter()
            .map(|c| RectCrease { axis, coord: c.pos.clone(), from: Rational::zero(), to: span.clone(), mv: c.mv })
            .collect();
        match axis {
            Axis::V => RectPattern::new(pattern.length().clone(), span, creases),
            Axis::H => RectPattern::new(span, pattern.length().clone(), creases),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RectOneLayerVerdict {
    /// Creases run in one direction only and were decided as a 1D pattern.
    Reduced { axis: Option<Axis>, pattern: CreasePattern1D, verdict: MixedVerdict },
    /// Both vertical and horizontal creases: a one-layer fold can never
    /// fold two crossing creases.
    BothDirections,
    /// A crease line is not covered over the full rectangle.
    PartialSpan { axis: Axis, coord: Rational },
    /// One line carries both a mountain and a valley segment.
    ConflictingLine { axis: Axis, coord: Rational },
}

impl RectOneLayerVerdict {
    pub fn is_foldable(&self) -> bool {
        matches!(self, RectOneLayerVerdict::Reduced { verdict, .. } if verdict.is_foldable())
    }

    pub fn to_json(&self) -> Value {
        match self {
            RectOneLayerVerdict::Reduced { axis, pattern, verdict } => {
                let mut v = verdict.to_json(pattern);
                v["reduced_axis"] = json!(axis);
                v
            }
            RectOneLayerVerdict::BothDirections => {
                json!({"foldable": false, "reason": "both vertical and horizontal creases"})
            }
            RectOneLayerVerdict::PartialSpan { axis, coord } => {
                json!({"foldable": false, "reason": "partial crease", "axis": axis, "coord": coord.to_string()})
            }
            RectOneLayerVerdict::ConflictingLine { axis, coord } => {
                json!({"foldable": false, "reason": "line mixes mountain and valley",
                       "axis": axis, "coord": coord.to_string()})
            }
        }
    }
}

pub fn decide_rect_one_layer(pattern: &RectPattern) -> Result<RectOneLayerVerdict> {
    let has = |a: Axis| pattern.creases.iter().any(|c| c.axis == a);
    if has(Axis::V) && has(Axis::H) {
        return Ok(RectOneLayerVerdict::BothDirections);
    }
    let axis = [Axis::V, Axis::H].into_iter().find(|&a| has(a));
    let Some(axis) = axis else {
        let line = CreasePattern1D::new(pattern.width.clone(), vec![])?;
        let verdict = decide_mixed(&line, LayerModel::OneLayer)?;
        return Ok(RectOneLayerVerdict::Reduced { axis: None, pattern: line, verdict });
    };
    let span = pattern.span(axis);
    let mut lines: BTreeMap<Rational, Vec<&RectCrease>> = BTreeMap::new();
    for c in &pattern.creases {
        lines.entry(c.coord.clone()).or_default().push(c);
    }
    let mut creases = Vec::new();
    for (coord, mut segs) in lines {
        segs.sort_by(|a, b| a.from.cmp(&b.from));
        let mut reach = Rational::zero();
        for s in &segs {
            if s.from > reach {
                break;
            }
            reach = reach.max(s.to.clone());
        }
        if &reach != span {
            return Ok(RectOneLayerVerdict::PartialSpan { axis, coord });
        }
        let mut mv = Assignment::Unassigned;
        for s in &segs {
            if s.mv.is_assigned() {
                if mv.is_assigned() && mv != s.mv {
                    return Ok(RectOneLayerVerdict::ConflictingLine { axis, coord });
                }
                mv = s.mv;
            }
        }
        creases.push(Crease { pos: coord, mv });
    }
    let line = CreasePattern1D::new(pattern.extent(axis).clone(), creases)?;
    let verdict = decide_mixed(&line, LayerModel::OneLayer)?;
    Ok(RectOneLayerVerdict::Reduced { axis: Some(axis), pattern: line, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Assignment::*;

    fn seg(axis: Axis, coord: i64, from: i64, to: i64, mv: Assignment) -> RectCrease {
        RectCrease { axis, coord: coord.into(), from: from.into(), to: to.into(), mv }
    }

    fn rect(w: i64, h: i64, cs: Vec<RectCrease>) -> RectPattern {
        RectPattern::new(w.into(), h.into(), cs).unwrap()
    }

    #[test]
    fn crossing_creases_never_fold() {
        let r = rect(4, 2, vec![seg(Axis::V, 2, 0, 2, Unassigned), seg(Axis::H, 1, 0, 4, Unassigned)]);
        assert_eq!(decide_rect_one_layer(&r).unwrap(), RectOneLayerVerdict::BothDirections);
    }

    #[test]
    fn reduces_to_1d() {
        let r = rect(8, 1, vec![seg(Axis::V, 3, 0, 1, Mountain), seg(Axis::V, 5, 0, 1, Unassigned)]);
        let v = decide_rect_one_layer(&r).unwrap();
        assert!(v.is_foldable());
        let RectOneLayerVerdict::Reduced { pattern, .. } = v else { panic!() };
        assert_eq!(pattern, CreasePattern1D::from_ints(8, &[(3, Mountain), (5, Unassigned)]).unwrap());
    }

    #[test]
    fn no_creases_fold() {
        assert!(decide_rect_one_layer(&rect(3, 2, vec![])).unwrap().is_foldable());
    }

    #[test]
    fn partial_and_split_lines() {
        let r = rect(4, 2, vec![seg(Axis::V, 2, 0, 1, Mountain)]);
        assert!(matches!(decide_rect_one_layer(&r).unwrap(), RectOneLayerVerdict::PartialSpan { .. }));
        let r = rect(4, 2, vec![seg(Axis::V, 2, 0, 1, Mountain), seg(Axis::V, 2, 1, 2, Unassigned)]);
        assert!(decide_rect_one_layer(&r).unwrap().is_foldable());
        let r = rect(4, 2, vec![seg(Axis::V, 2, 0, 1, Mountain), seg(Axis::V, 2, 1, 2, Valley)]);
        assert!(matches!(decide_rect_one_layer(&r).unwrap(), RectOneLayerVerdict::ConflictingLine { .. }));
    }

    #[test]
    fn horizontal_only() {
        let r = rect(1, 8, vec![seg(Axis::H, 3, 0, 1, Mountain), seg(Axis::H, 5, 0, 1, Mountain)]);
        assert!(!decide_rect_one_layer(&r).unwrap().is_foldable());
    }

    #[test]
    fn validates_geometry() {
        assert!(RectPattern::new(4.into(), 2.into(), vec![seg(Axis::V, 4, 0, 2, Mountain)]).is_err());
        assert!(RectPattern::new(4.into(), 2.into(), vec![seg(Axis::V, 2, 0, 3, Mountain)]).is_err());
        assert!(RectPattern::new(4.into(), 2.into(), vec![seg(Axis::V, 2, 1, 1, Mountain)]).is_err());
        assert!(RectPattern::new(
            4.into(),
            2.into(),
            vec![seg(Axis::V, 2, 0, 2, Mountain), seg(Axis::V, 2, 1, 2, Valley)]
        )
        .is_err());
    }
}
