//! Exhaustive enumeration of small 1D patterns with integer creases.

use crate::model::{Assignment, Crease, CreasePattern1D};

/// Every pattern on `[0, length]` with at most `max_creases` creases at
/// integer positions, labelled from `labels`, using at most
/// `max_unassigned` unassigned creases.
pub fn integer_patterns(
    length: i64,
    max_creases: usize,
    labels: &[Assignment],
    max_unassigned: usize,
) -> Vec<CreasePattern1D> {
    let slots = (length - 1).max(0) as usize;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << slots) {
        let positions: Vec<i64> = (0..slots).filter(|&i| mask >> i & 1 == 1).map(|i| i as i64 + 1).collect();
        if positions.len() > max_creases {
            continue;
        }
        let k = positions.len();
        let total = labels.len().pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let mut creases = Vec::with_capacity(k);
            for &pos in &positions {
                creases.push(Crease { pos: pos.into(), mv: labels[c % labels.len()] });
                c /= labels.len();
            }
            if creases.iter().filter(|c| !c.mv.is_assigned()).count() > max_unassigned {
                continue;
            }
            out.push(CreasePattern1D::new(length.into(), creases).expect("integer creases are valid"));
        }
    }
    out
}

/// Union of [`integer_patterns`] over lengths `1..=max_length`.
pub fn envelope(max_length: i64, max_creases: usize, labels: &[Assignment], max_unassigned: usize) -> Vec<CreasePattern1D> {
    (1..=max_length).flat_map(|l| integer_patterns(l, max_creases, labels, max_unassigned)).collect()
}

pub const ASSIGNED: [Assignment; 2] = [Assignment::Mountain, Assignment::Valley];
pub const MIXED: [Assignment; 3] = [Assignment::Mountain, Assignment::Valley, Assignment::Unassigned];
