//! All-layers simple folding of mixed 1D patterns.
//!
//! Folding all layers glues the paper wherever it overlaps, so a fold is
//! equivalent to discarding the shorter side. A fold is valid when every
//! crease in the overlap meets a compatible crease or a paper end. The
//! decision procedure repeatedly folds the plausible crease nearest an end.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model::{Assignment, Crease, CreasePattern1D};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conflict {
    /// The crease at `position` reflects onto a crease with the same label.
    EqualAssignment { position: Rational, mirror: Rational, mv: Assignment },
    /// The crease at `position` reflects onto an interior non-crease point.
    NonCrease { position: Rational, mirror: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub crease: usize,
    pub valid: bool,
    pub reason: Option<Conflict>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlausibleCrease {
    pub crease: usize,
    pub distance: Rational,
}

pub type PlausibleSet = Vec<PlausibleCrease>;

fn distance_to_end(pattern: &CreasePattern1D, crease: usize) -> Rational {
    let p = &pattern.creases()[crease].pos;
    let right = pattern.length() - p;
    p.clone().min(right)
}

/// Creases strictly within the nearest-end window around `crease`, paired
/// with the index of their mirror crease (if any).
fn window_pairs(pattern: &CreasePattern1D, crease: usize) -> Vec<(usize, Rational, Option<usize>)> {
    let d = distance_to_end(pattern, crease);
    let p = &pattern.creases()[crease].pos;
    pattern
        .creases()
        .iter()
        .enumerate()
        .filter(|&(i, c)| i != crease && (&c.pos - p).abs() < d)
        .map(|(i, c)| {
            let mirror = p.double() - &c.pos;
            let m = pattern.crease_index(&mirror);
            (i, mirror, m)
        })
        .collect()
}

pub fn is_valid_all_layers_fold(pattern: &CreasePattern1D, crease: usize) -> ValidityReport {
    let creases = pattern.creases();
    for (i, mirror, m) in window_pairs(pattern, crease) {
        let position = creases[i].pos.clone();
        let conflict = match m {
            None => Some(Conflict::NonCrease { position, mirror }),
            Some(j) => {
                let (a, b) = (creases[i].mv, creases[j].mv);
                (a.is_assigned() && a == b).then_some(Conflict::EqualAssignment { position, mirror, mv: a })
            }
        };
        if let Some(reason) = conflict {
            return ValidityReport { crease, valid: false, reason: Some(reason) };
        }
    }
    ValidityReport { crease, valid: true, reason: None }
}

pub fn plausible_creases(pattern: &CreasePattern1D) -> PlausibleSet {
    (0..pattern.num_creases())
        .filter(|&c| window_pairs(pattern, c).iter().all(|(_, _, m)| m.is_some()))
        .map(|crease| PlausibleCrease { crease, distance: distance_to_end(pattern, crease) })
        .collect()
}

/// Folds `crease` with all layers and discards the shorter side (the left
/// side on a tie). The result is re-anchored at 0.
pub fn reduce_at(pattern: &CreasePattern1D, crease: usize) -> Result<CreasePattern1D> {
    if crease >= pattern.num_creases() {
        return Err(Error::Domain(format!("no crease with index {crease}")));
    }
    let report = is_valid_all_layers_fold(pattern, crease);
    if let Some(reason) = report.reason {
        return Err(Error::Rejected(format!("invalid all-layers fold: {reason:?}")));
    }
    let creases = pattern.creases();
    let p = &creases[crease].pos;
    let keep_right = p <= &(pattern.length() - p);
    let mut labels: Vec<Assignment> = creases.iter().map(|c| c.mv).collect();
    for (i, _, m) in window_pairs(pattern, crease) {
        let j = m.expect("valid fold pairs every windowed crease");
        let on_kept_side = if keep_right { creases[i].pos > *p } else { creases[i].pos < *p };
        if on_kept_side && !labels[i].is_assigned() && creases[j].mv.is_assigned() {
            labels[i] = creases[j].mv.flipped();
        }
    }
    let kept = creases.iter().zip(labels).filter(|(c, _)| if keep_right { c.pos > *p } else { c.pos < *p });
    if keep_right {
        CreasePattern1D::new(
            pattern.length() - p,
            kept.map(|(c, mv)| Crease { pos: &c.pos - p, mv }).collect(),
        )
    } else {
        CreasePattern1D::new(p.clone(), kept.map(|(c, mv)| Crease { pos: c.pos.clone(), mv }).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllLayersFold {
    /// Position in the frame of the pattern being folded.
    pub position: Rational,
    /// The same crease in the input pattern's frame.
    pub original_position: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AllLayersVerdict {
    Foldable { sequence: Vec<AllLayersFold> },
    /// No plausible crease remained in `remaining`.
    NoPlausible { remaining: CreasePattern1D, after: Vec<AllLayersFold> },
    /// The nearest-end plausible crease of `remaining` was invalid.
    Invalid { remaining: CreasePattern1D, report: ValidityReport, after: Vec<AllLayersFold> },
}

impl AllLayersVerdict {
    pub fn is_foldable(&self) -> bool {
        matches!(self, AllLayersVerdict::Foldable { .. })
    }

    pub fn to_json(&self) -> Value {
        let folds = |s: &[AllLayersFold]| {
            (
                s.iter().map(|f| f.position.to_string()).collect::<Vec<_>>(),
                s.iter().map(|f| f.original_position.to_string()).collect::<Vec<_>>(),
            )
        };
        match self {
            AllLayersVerdict::Foldable { sequence } => {
                let (seq, orig) = folds(sequence);
                json!({"foldable": true, "sequence": seq, "coordinates": "reduced", "original_positions": orig})
            }
            AllLayersVerdict::NoPlausible { after, .. } => {
                let (seq, orig) = folds(after);
                json!({"foldable": false, "reason": "no plausible crease", "folded_before_failure": seq,
                       "original_positions": orig})
            }
            AllLayersVerdict::Invalid { report, remaining, after } => {
                let (seq, orig) = folds(after);
                json!({"foldable": false, "reason": "nearest plausible crease is not a valid fold",
                       "crease": remaining.creases()[report.crease].pos.to_string(),
                       "folded_before_failure": seq, "original_positions": orig})
            }
        }
    }
}

/// Greedy decision: fold the plausible crease nearest an end (leftmost on
/// ties) while it is valid.
pub fn decide_all_layers_mixed(pattern: &CreasePattern1D) -> AllLayersVerdict {
    let mut current = pattern.clone();
    // Input coordinate = current coordinate + offset.
    let mut offset = Rational::zero();
    let mut sequence = Vec::new();
    while current.num_creases() > 0 {
        let plausible = plausible_creases(&current);
        let Some(best) = plausible
            .iter()
            .min_by(|a, b| a.distance.cmp(&b.distance).then(a.crease.cmp(&b.crease)))
        else {
            return AllLayersVerdict::NoPlausible { remaining: current, after: sequence };
        };
        let report = is_valid_all_layers_fold(&current, best.crease);
        if !report.valid {
            return AllLayersVerdict::Invalid { remaining: current, report, after: sequence };
        }
        let position = current.creases()[best.crease].pos.clone();
        let keep_right = position <= current.length() - &position;
        sequence.push(AllLayersFold { original_position: &position + &offset, position: position.clone() });
        current = reduce_at(&current, best.crease).expect("validated above");
        if keep_right {
            offset = offset + &position;
        }
    }
    AllLayersVerdict::Foldable { sequence }
}
