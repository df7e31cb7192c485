//! Flat-foldability of fully assigned 1D patterns and explicit
//! crimp / end-fold sequences.
//!
//! A pattern folds flat iff every suspicious interval is innocent; when it
//! does, repeatedly taking the leftmost shortest segment and growing it to
//! its run of equal-length segments always yields a crimp or an end fold.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model::{Assignment, Crease, CreasePattern1D, Interval};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Crease positions are expressed in the frame of the pattern the
/// operation applies to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ReductionOp {
    Crimp { left: Rational, right: Rational },
    EndFold { crease: Rational, side: Side },
}

impl ReductionOp {
    pub fn creases_consumed(&self) -> usize {
        match self {
            ReductionOp::Crimp { .. } => 2,
            ReductionOp::EndFold { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ReductionOp::Crimp { left, right } => {
                json!({"op": "crimp", "left": left.to_string(), "right": right.to_string()})
            }
            ReductionOp::EndFold { crease, side } => {
                json!({"op": "endfold", "crease": crease.to_string(), "side": side})
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoldabilityVerdict1D {
    Foldable { sequence: Vec<ReductionOp> },
    /// A suspicious interval that is not innocent, with its endpoint positions.
    Unfoldable { guilty: Interval, left: Rational, right: Rational },
}

impl FoldabilityVerdict1D {
    pub fn is_foldable(&self) -> bool {
        matches!(self, FoldabilityVerdict1D::Foldable { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            FoldabilityVerdict1D::Foldable { sequence } => json!({
                "foldable": true,
                "sequence": sequence.iter().map(ReductionOp::to_json).collect::<Vec<_>>(),
            }),
            FoldabilityVerdict1D::Unfoldable { left, right, .. } => json!({
                "foldable": false,
                "guilty": [left.to_string(), right.to_string()],
            }),
        }
    }
}

fn require_assigned(pattern: &CreasePattern1D) -> Result<()> {
    if let Some(c) = pattern.creases().iter().find(|c| !c.mv.is_assigned()) {
        return Err(Error::Precondition(format!("crease at {} is unassigned", c.pos)));
    }
    Ok(())
}

/// First suspicious interval (smallest first) that is not innocent.
pub fn find_guilty(pattern: &CreasePattern1D) -> Result<Option<Interval>> {
    require_assigned(pattern)?;
    for iv in pattern.suspicious_intervals() {
        if !pattern.is_innocent(iv)? {
            return Ok(Some(iv));
        }
    }
    Ok(None)
}

pub fn decide_assigned(pattern: &CreasePattern1D) -> Result<FoldabilityVerdict1D> {
    if let Some(guilty) = find_guilty(pattern)? {
        return Ok(unfoldable(pattern, guilty));
    }
    synthesize_sequence(pattern)
}

fn unfoldable(pattern: &CreasePattern1D, guilty: Interval) -> FoldabilityVerdict1D {
    FoldabilityVerdict1D::Unfoldable {
        guilty,
        left: pattern.vertex(guilty.left),
        right: pattern.vertex(guilty.right),
    }
}

/// Picks the next crimp or end fold. Ties go to the leftmost candidate.
pub fn find_reducible_segment(pattern: &CreasePattern1D) -> Result<ReductionOp> {
    require_assigned(pattern)?;
    let n = pattern.num_creases();
    if n == 0 {
        return Err(Error::Domain("pattern has no creases to reduce".into()));
    }
    let segs = n + 1;
    let lengths: Vec<Rational> = (0..segs).map(|k| pattern.segment_length(k)).collect();
    let shortest = (0..segs)
        .min_by(|&a, &b| lengths[a].cmp(&lengths[b]).then(a.cmp(&b)))
        .expect("at least one segment");
    let mut first = shortest;
    while first > 0 && lengths[first - 1] == lengths[shortest] {
        first -= 1;
    }
    let mut last = shortest;
    while last + 1 < segs && lengths[last + 1] == lengths[shortest] {
        last += 1;
    }
    if first == 0 {
        return Ok(ReductionOp::EndFold { crease: pattern.vertex(1), side: Side::Left });
    }
    if last == segs - 1 {
        return Ok(ReductionOp::EndFold { crease: pattern.vertex(n), side: Side::Right });
    }
    // Interior run: creases are vertices first..=last+1.
    for v in first..=last {
        if pattern.vertex_mv(v) != pattern.vertex_mv(v + 1) {
            return Ok(ReductionOp::Crimp { left: pattern.vertex(v), right: pattern.vertex(v + 1) });
        }
    }
    let run = Interval { left: first, right: last + 1 };
    Err(Error::Precondition(format!(
        "characterization violated: suspicious run {} has no crimpable pair",
        run.display(pattern)
    )))
}

pub fn apply_reduction(pattern: &CreasePattern1D, op: &ReductionOp) -> Result<CreasePattern1D> {
    let index_of = |p: &Rational| {
        pattern
            .crease_index(p)
            .ok_or_else(|| Error::Rejected(format!("no crease at {p}")))
    };
    let creases = pattern.creases();
    match op {
        ReductionOp::EndFold { crease, side } => {
            let i = index_of(crease)?;
            let v = i + 1;
            match side {
                Side::Left => {
                    if i != 0 {
                        return Err(Error::Rejected(format!("{crease} is not the leftmost crease")));
                    }
                    if pattern.segment_length(0) > pattern.segment_length(1) {
                        return Err(Error::Rejected(format!(
                            "end segment [0, {crease}] is longer than its flap"
                        )));
                    }
                    let shifted = creases[1..]
                        .iter()
                        .map(|c| Crease { pos: &c.pos - crease, mv: c.mv })
                        .collect();
                    CreasePattern1D::new(pattern.length() - crease, shifted)
                }
                Side::Right => {
                    if i + 1 != creases.len() {
                        return Err(Error::Rejected(format!("{crease} is not the rightmost crease")));
                    }
                    if pattern.segment_length(v) > pattern.segment_length(v - 1) {
                        return Err(Error::Rejected(format!(
                            "end segment [{crease}, {}] is longer than its flap",
                            pattern.length()
                        )));
                    }
                    CreasePattern1D::new(crease.clone(), creases[..i].to_vec())
                }
            }
        }
        ReductionOp::Crimp { left, right } => {
            let i = index_of(left)?;
            let j = index_of(right)?;
            if j != i + 1 {
                return Err(Error::Rejected(format!("creases {left} and {right} are not adjacent")));
            }
            let (a, b) = (creases[i].mv, creases[j].mv);
            let opposite = matches!(
                (a, b),
                (Assignment::Mountain, Assignment::Valley) | (Assignment::Valley, Assignment::Mountain)
            );
            if !opposite {
                return Err(Error::Rejected(format!(
                    "crimp needs one mountain and one valley, found {a} at {left} and {b} at {right}"
                )));
            }
            let mid = right - left;
            let v = i + 1;
            if mid > pattern.segment_length(v - 1) || mid > pattern.segment_length(v + 1) {
                return Err(Error::Rejected(format!(
                    "segment [{left}, {right}] is longer than one of its flaps"
                )));
            }
            // The three merged segments glue into one of length A - B + C.
            let shift = mid.double();
            let mut out: Vec<Crease> = creases[..i].to_vec();
            out.extend(creases[j + 1..].iter().map(|c| Crease { pos: &c.pos - &shift, mv: c.mv }));
            CreasePattern1D::new(pattern.length() - &shift, out)
        }
    }
}

pub fn synthesize_sequence(pattern: &CreasePattern1D) -> Result<FoldabilityVerdict1D> {
    if let Some(guilty) = find_guilty(pattern)? {
        return Ok(unfoldable(pattern, guilty));
    }
    let mut current = pattern.clone();
    let mut sequence = Vec::new();
    while current.num_creases() > 0 {
        let op = find_reducible_segment(&current)?;
        current = apply_reduction(&current, &op)?;
        sequence.push(op);
    }
    Ok(FoldabilityVerdict1D::Foldable { sequence })
}

/// Replays `ops` from `pattern`, returning every intermediate pattern
/// (including the start and the end).
pub fn replay(pattern: &CreasePattern1D, ops: &[ReductionOp]) -> Result<Vec<CreasePattern1D>> {
    let mut states = vec![pattern.clone()];
    for op in ops {
        let next = apply_reduction(states.last().expect("non-empty"), op)?;
        states.push(next);
    }
    Ok(states)
}
