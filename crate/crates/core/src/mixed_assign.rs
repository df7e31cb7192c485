//! Completing a mixed 1D pattern to a flat-foldable mountain/valley
//! assignment.
//!
//! Suspicious intervals depend only on crease positions, so each one is a
//! constraint demanding innocence. They are processed smallest first; each
//! one assigns all or all-but-one of its still-unassigned creases, and any
//! crease left over at the end becomes a mountain.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::characterize::{synthesize_sequence, FoldabilityVerdict1D, ReductionOp};
use crate::error::Result;
use crate::formats;
use crate::model::{Assignment, CreasePattern1D, Interval};

/// Decisions for creases that are unassigned in the input, keyed by
/// crease index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialAssignment {
    decided: BTreeMap<usize, Assignment>,
}

impl PartialAssignment {
    pub fn get(&self, crease: usize) -> Option<Assignment> {
        self.decided.get(&crease).copied()
    }

    pub fn len(&self) -> usize {
        self.decided.len()
    }

    pub fn is_empty(&self) -> bool {
        self.decided.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Assignment)> + '_ {
        self.decided.iter().map(|(&k, &v)| (k, v))
    }

    /// The pattern with these decisions applied. Creases assigned in the
    /// input are never touched.
    pub fn apply(&self, pattern: &CreasePattern1D) -> CreasePattern1D {
        let mvs: Vec<Assignment> = pattern
            .creases()
            .iter()
            .enumerate()
            .map(|(i, c)| if c.mv.is_assigned() { c.mv } else { self.get(i).unwrap_or(c.mv) })
            .collect();
        pattern.with_assignments(&mvs)
    }

    pub fn to_json(&self, pattern: &CreasePattern1D) -> Value {
        let mut map = Map::new();
        for (i, mv) in self.iter() {
            map.insert(pattern.creases()[i].pos.to_string(), Value::String(mv.letter().into()));
        }
        json!({
            "assignment": Value::Object(map),
            "completed_pattern": formats::pattern_1d_to_json(&self.apply(pattern)),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalStatus {
    Pending,
    Satisfied,
}

/// A suspicious interval queued for processing, ordered by paper length
/// and then left endpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalWorkItem {
    pub interval: Interval,
    pub status: IntervalStatus,
}

/// The interval could not be made innocent: no valid assignment exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Failure {
    pub interval: Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerModel {
    OneLayer,
    SomeLayers,
}

/// Working assignment: the input labels plus decisions so far.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentState {
    labels: Vec<Assignment>,
    original: Vec<Assignment>,
}

impl AssignmentState {
    pub fn new(pattern: &CreasePattern1D) -> Self {
        let labels: Vec<Assignment> = pattern.creases().iter().map(|c| c.mv).collect();
        AssignmentState { original: labels.clone(), labels }
    }

    pub fn label(&self, crease: usize) -> Assignment {
        self.labels[crease]
    }

    pub fn into_partial(self) -> PartialAssignment {
        let decided = self
            .original
            .iter()
            .zip(&self.labels)
            .enumerate()
            .filter(|(_, (o, l))| !o.is_assigned() && l.is_assigned())
            .map(|(i, (_, &l))| (i, l))
            .collect();
        PartialAssignment { decided }
    }
}

/// Operation counters for the complexity check.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssignStats {
    pub enumeration_ops: u64,
    pub processing_ops: u64,
    pub suspicious: usize,
}

/// Makes `iv` innocent by assigning all or all-but-one of its unassigned
/// creases.
pub fn process_interval(state: &mut AssignmentState, iv: Interval) -> std::result::Result<(), Failure> {
    let mut ops = 0;
    process_interval_counted(state, iv, &mut ops)
}

fn process_interval_counted(
    state: &mut AssignmentState,
    iv: Interval,
    ops: &mut u64,
) -> std::result::Result<(), Failure> {
    // Vertex v is crease v - 1.
    let creases = (iv.left - 1)..iv.right;
    let (mut m, mut v) = (0usize, 0usize);
    let mut free = Vec::new();
    for c in creases.clone() {
        *ops += 1;
        match state.labels[c] {
            Assignment::Mountain => m += 1,
            Assignment::Valley => v += 1,
            Assignment::Unassigned => free.push(c),
        }
    }
    let total = creases.len();
    let k = total / 2;
    let fail = Err(Failure { interval: iv });
    if total % 2 == 0 {
        if m > k || v > k {
            return fail;
        }
        fill(state, &free, k - m, k - v, ops);
        return Ok(());
    }
    if !free.is_empty() && m <= k && v <= k {
        // Leave the leftmost free crease open; the rest balance to k/k.
        fill(state, &free[1..], k - m, k - v, ops);
        return Ok(());
    }
    if free.is_empty() {
        return if m.abs_diff(v) <= 1 { Ok(()) } else { fail };
    }
    // k + 1 creases of one sign already: the only innocent completion.
    if m == k + 1 && v <= k {
        fill(state, &free, 0, k - v, ops);
        return Ok(());
    }
    if v == k + 1 && m <= k {
        fill(state, &free, k - m, 0, ops);
        return Ok(());
    }
    fail
}

/// Left to right, each free crease takes the sign with the larger remaining
/// deficit (mountain on ties).
fn fill(state: &mut AssignmentState, free: &[usize], mut need_m: usize, mut need_v: usize, ops: &mut u64) {
    debug_assert_eq!(free.len(), need_m + need_v);
    for &c in free {
        *ops += 1;
        if need_m >= need_v && need_m > 0 {
            state.labels[c] = Assignment::Mountain;
            need_m -= 1;
        } else {
            state.labels[c] = Assignment::Valley;
            need_v -= 1;
        }
    }
}

pub fn find_valid_assignment(pattern: &CreasePattern1D) -> Option<PartialAssignment> {
    find_valid_assignment_detailed(pattern).0.ok()
}

/// Full run returning either the completed assignment or the interval that
/// failed, plus operation counters.
pub fn find_valid_assignment_detailed(
    pattern: &CreasePattern1D,
) -> (std::result::Result<PartialAssignment, Failure>, AssignStats) {
    let mut stats = AssignStats::default();
    let suspicious = pattern.suspicious_intervals_counted(&mut stats.enumeration_ops);
    stats.suspicious = suspicious.len();
    let mut queue: Vec<IntervalWorkItem> = suspicious
        .into_iter()
        .map(|interval| IntervalWorkItem { interval, status: IntervalStatus::Pending })
        .collect();
    let mut state = AssignmentState::new(pattern);
    for item in &mut queue {
        if let Err(f) = process_interval_counted(&mut state, item.interval, &mut stats.processing_ops) {
            return (Err(f), stats);
        }
        item.status = IntervalStatus::Satisfied;
    }
    for label in &mut state.labels {
        stats.processing_ops += 1;
        if !label.is_assigned() {
            *label = Assignment::Mountain;
        }
    }
    (Ok(state.into_partial()), stats)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MixedVerdict {
    Foldable {
        assignment: PartialAssignment,
        completed: CreasePattern1D,
        sequence: Vec<ReductionOp>,
    },
    /// `failed` is the suspicious interval that could not be made innocent.
    Unfoldable { failed: Interval },
}

impl MixedVerdict {
    pub fn is_foldable(&self) -> bool {
        matches!(self, MixedVerdict::Foldable { .. })
    }

    pub fn to_json(&self, pattern: &CreasePattern1D) -> Value {
        match self {
            MixedVerdict::Foldable { assignment, sequence, .. } => {
                let mut out = assignment.to_json(pattern);
                out["foldable"] = Value::Bool(true);
                out["sequence"] = Value::Array(sequence.iter().map(ReductionOp::to_json).collect());
                out
            }
            MixedVerdict::Unfoldable { failed } => json!({
                "foldable": false,
                "guilty": [pattern.vertex(failed.left).to_string(), pattern.vertex(failed.right).to_string()],
            }),
        }
    }
}

/// One-layer and some-layers foldability coincide for 1D patterns; the
/// model is accepted for interface symmetry.
pub fn decide_mixed(pattern: &CreasePattern1D, _model: LayerModel) -> Result<MixedVerdict> {
    match find_valid_assignment_detailed(pattern).0 {
        Err(f) => Ok(MixedVerdict::Unfoldable { failed: f.interval }),
        Ok(assignment) => {
            let completed = assignment.apply(pattern);
            match synthesize_sequence(&completed)? {
                FoldabilityVerdict1D::Foldable { sequence } => {
                    Ok(MixedVerdict::Foldable { assignment, completed, sequence })
                }
                FoldabilityVerdict1D::Unfoldable { guilty, .. } => {
                    // Unreachable if the assignment algorithm is sound.
                    Err(crate::error::Error::Precondition(format!(
                        "completed assignment left {} guilty",
                        guilty.display(&completed)
                    )))
                }
            }
        }
    }
}
