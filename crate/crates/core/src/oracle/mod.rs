//! Exhaustive simple-fold search used as ground truth.
//!
//! The oracle simulates the folded state directly (facets, layer stacks,
//! non-penetration at hinges) and explores every legal simple fold under a
//! chosen layer model. It is exponential and meant for small instances; a
//! node budget turns runaway searches into [`SearchOutcome::Inconclusive`].
//!
//! A 1D pattern is searched as a strip with full-height creases.

mod engine;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characterize::Side;
use crate::error::{Error, Result};
use crate::model::{Assignment, CreasePattern1D};
use crate::rational::{common_denominator, Rational};
use crate::rect::{Axis, RectPattern};

pub use engine::FoldedState;
use engine::{ModelKind, MoveSide, RawMove, Sheet, Turn as RawTurn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FoldModel {
    /// Exactly one layer crossing the fold line is folded.
    #[serde(rename = "one")]
    OneLayer,
    /// A contiguous top or bottom block of layers is folded.
    #[serde(rename = "some")]
    SomeLayers,
    /// Every layer crossing the fold line is folded.
    #[serde(rename = "all")]
    AllLayers,
}

impl FoldModel {
    fn kind(self) -> ModelKind {
        match self {
            FoldModel::OneLayer => ModelKind::One,
            FoldModel::SomeLayers => ModelKind::Some,
            FoldModel::AllLayers => ModelKind::All,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Turn {
    /// The moving side rotates over the top of the stack.
    Up,
    /// The moving side rotates under the stack.
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extent {
    One,
    Top(usize),
    Bottom(usize),
    All,
}

impl std::fmt::Display for Extent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extent::One => write!(f, "one"),
            Extent::Top(k) => write!(f, "top:{k}"),
            Extent::Bottom(k) => write!(f, "bottom:{k}"),
            Extent::All => write!(f, "all"),
        }
    }
}

/// One simple fold. `coord` is in the image frame of the state being
/// folded, translated so that the state starts at 0 on both axes. `side`
/// names the moving half: `Left` is the half with smaller coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoldMove {
    pub axis: Axis,
    pub coord: Rational,
    pub side: Side,
    pub turn: Turn,
    pub extent: Extent,
    /// Layers that cross the fold line.
    pub crossing_total: usize,
    /// Crossing layers that were folded.
    pub moved_crossing: usize,
}

impl FoldMove {
    pub fn to_json(&self) -> Value {
        json!({
            "axis": self.axis,
            "coord": self.coord.to_string(),
            "side": self.side,
            "turn": self.turn,
            "extent": self.extent.to_string(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Foldable { trace: Vec<FoldMove> },
    Unfoldable,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes_expanded: usize,
}

impl SearchReport {
    pub fn is_foldable(&self) -> Option<bool> {
        match self.outcome {
            SearchOutcome::Foldable { .. } => Some(true),
            SearchOutcome::Unfoldable => Some(false),
            SearchOutcome::Inconclusive => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match &self.outcome {
            SearchOutcome::Foldable { trace } => json!({
                "foldable": true,
                "trace": trace.iter().map(FoldMove::to_json).collect::<Vec<_>>(),
                "nodes": self.nodes_expanded,
            }),
            SearchOutcome::Unfoldable => json!({"foldable": false, "nodes": self.nodes_expanded}),
            SearchOutcome::Inconclusive => {
                json!({"foldable": null, "inconclusive": true, "nodes": self.nodes_expanded})
            }
        }
    }
}

/// Search context for one pattern under one layer model.
#[derive(Clone, Debug)]
pub struct FoldSearch {
    sheets: [Sheet; 2],
    model: FoldModel,
}

impl FoldSearch {
    pub fn for_1d(pattern: &CreasePattern1D, model: FoldModel) -> Result<Self> {
        let values = std::iter::once(pattern.length()).chain(pattern.creases().iter().map(|c| &c.pos));
        let scale = common_denominator(values);
        let tick = |r: &Rational| r.scaled_i64(&scale).ok_or_else(|| Error::Domain("coordinates too large".into()));
        let mut xs = vec![0];
        for c in pattern.creases() {
            xs.push(tick(&c.pos)?);
        }
        xs.push(tick(pattern.length())?);
        let mut vcrease = vec![vec![None]; xs.len()];
        for (k, c) in pattern.creases().iter().enumerate() {
            vcrease[k + 1][0] = Some(c.mv);
        }
        let hcrease = vec![vec![None; xs.len() - 1]; 2];
        Ok(Self::from_sheet(Sheet { xs, ys: vec![0, 1], vcrease, hcrease, scale }, model))
    }

    pub fn for_rect(pattern: &RectPattern, model: FoldModel) -> Result<Self> {
        let mut values = vec![pattern.width(), pattern.height()];
        for c in pattern.creases() {
            values.extend([&c.coord, &c.from, &c.to]);
        }
        let scale = common_denominator(values);
        let tick = |r: &Rational| r.scaled_i64(&scale).ok_or_else(|| Error::Domain("coordinates too large".into()));
        let mut xs = vec![0, tick(pattern.width())?];
        let mut ys = vec![0, tick(pattern.height())?];
        for c in pattern.creases() {
            let (across, along) = match c.axis {
                Axis::V => (&mut xs, &mut ys),
                Axis::H => (&mut ys, &mut xs),
            };
            across.push(tick(&c.coord)?);
            along.extend([tick(&c.from)?, tick(&c.to)?]);
        }
        for v in [&mut xs, &mut ys] {
            v.sort_unstable();
            v.dedup();
        }
        let mut vcrease = vec![vec![None; ys.len() - 1]; xs.len()];
        let mut hcrease = vec![vec![None; xs.len() - 1]; ys.len()];
        for c in pattern.creases() {
            let (coord, from, to) = (tick(&c.coord)?, tick(&c.from)?, tick(&c.to)?);
            let (across, along, grid) = match c.axis {
                Axis::V => (&xs, &ys, &mut vcrease),
                Axis::H => (&ys, &xs, &mut hcrease),
            };
            let k = across.binary_search(&coord).expect("coordinate was inserted");
            for j in 0..along.len() - 1 {
                if along[j] >= from && along[j + 1] <= to {
                    grid[k][j] = Some(c.mv);
                }
            }
        }
        Ok(Self::from_sheet(Sheet { xs, ys, vcrease, hcrease, scale }, model))
    }

    fn from_sheet(sheet: Sheet, model: FoldModel) -> Self {
        let t = sheet.transposed();
        FoldSearch { sheets: [sheet, t], model }
    }

    pub fn model(&self) -> FoldModel {
        self.model
    }

    pub fn initial_state(&self) -> FoldedState {
        FoldedState::initial(&self.sheets[0])
    }

    /// Whether every crease of the pattern has been folded.
    pub fn is_complete(&self, state: &FoldedState) -> bool {
        state.unfolded_edges(&self.sheets[0]) == 0
    }

    pub fn successors(&self, state: &FoldedState) -> Vec<(FoldMove, FoldedState)> {
        engine::successors(&self.sheets, state, self.model.kind())
            .into_iter()
            .map(|(raw, transposed, next)| (self.public_move(&raw, transposed), next))
            .collect()
    }

    fn public_move(&self, raw: &RawMove, transposed: bool) -> FoldMove {
        let extent = match (self.model, raw.turn) {
            (FoldModel::OneLayer, _) => Extent::One,
            (FoldModel::AllLayers, _) => Extent::All,
            (FoldModel::SomeLayers, RawTurn::Up) => Extent::Top(raw.moved_crossing),
            (FoldModel::SomeLayers, RawTurn::Down) => Extent::Bottom(raw.moved_crossing),
        };
        FoldMove {
            axis: if transposed { Axis::H } else { Axis::V },
            coord: Rational::from_scaled(raw.line, &self.sheets[0].scale),
            side: match raw.side {
                MoveSide::Low => Side::Left,
                MoveSide::High => Side::Right,
            },
            turn: match raw.turn {
                RawTurn::Up => Turn::Up,
                RawTurn::Down => Turn::Down,
            },
            extent,
            crossing_total: raw.crossing_total,
            moved_crossing: raw.moved_crossing,
        }
    }

    /// Depth-first search with memoized dead ends.
    pub fn run(&self, budget: SearchBudget) -> SearchReport {
        let mut dead = HashSet::new();
        let mut nodes = 0usize;
        let mut trace = Vec::new();
        let outcome = match self.dfs(self.initial_state(), &mut dead, &mut nodes, budget, &mut trace) {
            Some(true) => SearchOutcome::Foldable { trace },
            Some(false) => SearchOutcome::Unfoldable,
            None => SearchOutcome::Inconclusive,
        };
        SearchReport { outcome, nodes_expanded: nodes }
    }

    fn dfs(
        &self,
        state: FoldedState,
        dead: &mut HashSet<FoldedState>,
        nodes: &mut usize,
        budget: SearchBudget,
        trace: &mut Vec<FoldMove>,
    ) -> Option<bool> {
        if self.is_complete(&state) {
            return Some(true);
        }
        if dead.contains(&state) {
            return Some(false);
        }
        *nodes += 1;
        if *nodes > budget.max_nodes {
            return None;
        }
        for (mv, next) in self.successors(&state) {
            trace.push(mv);
            match self.dfs(next, dead, nodes, budget, trace)? {
                true => return Some(true),
                false => {
                    trace.pop();
                }
            }
        }
        dead.insert(state);
        Some(false)
    }
}

pub fn search_1d(pattern: &CreasePattern1D, model: FoldModel, budget: SearchBudget) -> Result<SearchReport> {
    Ok(FoldSearch::for_1d(pattern, model)?.run(budget))
}

pub fn search_rect(pattern: &RectPattern, model: FoldModel, budget: SearchBudget) -> Result<SearchReport> {
    Ok(FoldSearch::for_rect(pattern, model)?.run(budget))
}

/// Successors of the unfolded 1D pattern.
pub fn enumerate_successors_1d(pattern: &CreasePattern1D, model: FoldModel) -> Result<Vec<FoldMove>> {
    let search = FoldSearch::for_1d(pattern, model)?;
    Ok(search.successors(&search.initial_state()).into_iter().map(|(m, _)| m).collect())
}

/// Successors of the unfolded rectangle.
pub fn enumerate_successors_rect(pattern: &RectPattern, model: FoldModel) -> Result<Vec<FoldMove>> {
    let search = FoldSearch::for_rect(pattern, model)?;
    Ok(search.successors(&search.initial_state()).into_iter().map(|(m, _)| m).collect())
}

/// Foldable under some assignment of the unassigned creases, found by
/// trying every completion. Exponential in the number of `U` creases.
pub fn search_1d_any_assignment(
    pattern: &CreasePattern1D,
    model: FoldModel,
    budget: SearchBudget,
) -> Result<Option<bool>> {
    let free: Vec<usize> = (0..pattern.num_creases()).filter(|&i| !pattern.creases()[i].mv.is_assigned()).collect();
    let mut inconclusive = false;
    for mask in 0u64..(1u64 << free.len()) {
        let mut mvs: Vec<Assignment> = pattern.creases().iter().map(|c| c.mv).collect();
        for (b, &i) in free.iter().enumerate() {
            mvs[i] = if mask >> b & 1 == 1 { Assignment::Valley } else { Assignment::Mountain };
        }
        match search_1d(&pattern.with_assignments(&mvs), model, budget)?.is_foldable() {
            Some(true) => return Ok(Some(true)),
            Some(false) => {}
            None => inconclusive = true,
        }
    }
    Ok(if inconclusive { None } else { Some(false) })
}
