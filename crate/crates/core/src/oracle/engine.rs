//! Simple-fold simulator on a rectangular sheet with full-line folds.
//!
//! Coordinates are integer ticks (the input scaled by the common
//! denominator). The source sheet is cut into a grid by every crease
//! coordinate and crease endpoint; facets are axis-aligned grid rectangles
//! whose image is `x' = ox + sx * x`, `y' = oy + sy * y`. The image plane is
//! cut into cells by the facets' image edges and every cell keeps a
//! bottom-to-top stack of the facets covering it.
//!
//! Horizontal folds are implemented as vertical folds on the transposed
//! state.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;

use crate::model::Assignment;

#[derive(Clone, Debug)]
pub(crate) struct Sheet {
    pub xs: Vec<i64>,
    pub ys: Vec<i64>,
    /// `vcrease[k][j]`: crease on line `x = xs[k]` over source row `j`.
    pub vcrease: Vec<Vec<Option<Assignment>>>,
    /// `hcrease[j][i]`: crease on line `y = ys[j]` over source column `i`.
    pub hcrease: Vec<Vec<Option<Assignment>>>,
    pub scale: BigInt,
}

impl Sheet {
    pub fn transposed(&self) -> Sheet {
        Sheet {
            xs: self.ys.clone(),
            ys: self.xs.clone(),
            vcrease: self.hcrease.clone(),
            hcrease: self.vcrease.clone(),
            scale: self.scale.clone(),
        }
    }

    fn x_index(&self, t: i64) -> Option<u16> {
        self.xs.binary_search(&t).ok().map(|i| i as u16)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Facet {
    pub x0: u16,
    pub x1: u16,
    pub y0: u16,
    pub y1: u16,
    pub ox: i64,
    pub sx: i8,
    pub oy: i64,
    pub sy: i8,
}

impl Facet {
    pub fn img_x(&self, sheet: &Sheet) -> (i64, i64) {
        let a = self.ox + self.sx as i64 * sheet.xs[self.x0 as usize];
        let b = self.ox + self.sx as i64 * sheet.xs[self.x1 as usize];
        (a.min(b), a.max(b))
    }

    pub fn img_y(&self, sheet: &Sheet) -> (i64, i64) {
        let a = self.oy + self.sy as i64 * sheet.ys[self.y0 as usize];
        let b = self.oy + self.sy as i64 * sheet.ys[self.y1 as usize];
        (a.min(b), a.max(b))
    }

    /// `+1` when the paper's original top face points up.
    pub fn face_up(&self) -> bool {
        self.sx * self.sy > 0
    }

    /// Source x-grid index that maps to image `h`, if it is a grid line.
    fn source_x(&self, sheet: &Sheet, h: i64) -> Option<u16> {
        sheet.x_index(self.sx as i64 * (h - self.ox))
    }

    fn transposed(&self) -> Facet {
        Facet {
            x0: self.y0,
            x1: self.y1,
            y0: self.x0,
            y1: self.x1,
            ox: self.oy,
            sx: self.sy,
            oy: self.ox,
            sy: self.sx,
        }
    }

    fn reflected_x(&self, c: i64) -> Facet {
        Facet { ox: 2 * c - self.ox, sx: -self.sx, ..*self }
    }

    /// Whether the source rectangles share an edge of positive length.
    fn adjacent(&self, other: &Facet) -> bool {
        let y_overlap = self.y0.max(other.y0) < self.y1.min(other.y1);
        let x_overlap = self.x0.max(other.x0) < self.x1.min(other.x1);
        ((self.x1 == other.x0 || other.x1 == self.x0) && y_overlap)
            || ((self.y1 == other.y0 || other.y1 == self.y0) && x_overlap)
    }

    /// Whether a vertical crease at source index `k` is still unfolded here.
    fn has_interior_x(&self, k: u16) -> bool {
        self.x0 < k && k < self.x1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoldedState {
    pub(crate) facets: Vec<Facet>,
    pub(crate) xb: Vec<i64>,
    pub(crate) yb: Vec<i64>,
    /// Column-major: cell `(a, b)` is `stacks[a * rows + b]`.
    pub(crate) stacks: Vec<Vec<u16>>,
}

impl FoldedState {
    pub(crate) fn initial(sheet: &Sheet) -> FoldedState {
        let facet = Facet {
            x0: 0,
            x1: (sheet.xs.len() - 1) as u16,
            y0: 0,
            y1: (sheet.ys.len() - 1) as u16,
            ox: 0,
            sx: 1,
            oy: 0,
            sy: 1,
        };
        FoldedState {
            facets: vec![facet],
            xb: vec![sheet.xs[0], *sheet.xs.last().unwrap()],
            yb: vec![sheet.ys[0], *sheet.ys.last().unwrap()],
            stacks: vec![vec![0]],
        }
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub(crate) fn rows(&self) -> usize {
        self.yb.len() - 1
    }

    pub(crate) fn cols(&self) -> usize {
        self.xb.len() - 1
    }

    pub(crate) fn cell(&self, a: usize, b: usize) -> &[u16] {
        &self.stacks[a * self.rows() + b]
    }

    pub(crate) fn transposed(&self) -> FoldedState {
        let (cols, rows) = (self.cols(), self.rows());
        let mut stacks = vec![Vec::new(); cols * rows];
        for a in 0..cols {
            for b in 0..rows {
                stacks[b * cols + a] = self.cell(a, b).to_vec();
            }
        }
        FoldedState {
            facets: self.facets.iter().map(Facet::transposed).collect(),
            xb: self.yb.clone(),
            yb: self.xb.clone(),
            stacks,
        }
    }

    /// Unfolded vertical crease lines in image coordinates.
    pub(crate) fn vertical_lines(&self, sheet: &Sheet) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for f in &self.facets {
            for k in (f.x0 + 1)..f.x1 {
                if (f.y0..f.y1).any(|j| sheet.vcrease[k as usize][j as usize].is_some()) {
                    out.insert(f.ox + f.sx as i64 * sheet.xs[k as usize]);
                }
            }
        }
        out
    }

    pub(crate) fn unfolded_edges(&self, sheet: &Sheet) -> usize {
        let mut n = 0;
        for f in &self.facets {
            for k in (f.x0 + 1)..f.x1 {
                n += (f.y0..f.y1).filter(|&j| sheet.vcrease[k as usize][j as usize].is_some()).count();
            }
            for j in (f.y0 + 1)..f.y1 {
                n += (f.x0..f.x1).filter(|&i| sheet.hcrease[j as usize][i as usize].is_some()).count();
            }
        }
        n
    }

    /// Translate to the origin and order facets by source position.
    fn canonicalize(mut self) -> FoldedState {
        let (dx, dy) = (self.xb[0], self.yb[0]);
        for v in &mut self.xb {
            *v -= dx;
        }
        for v in &mut self.yb {
            *v -= dy;
        }
        for f in &mut self.facets {
            f.ox -= dx;
            f.oy -= dy;
        }
        let mut order: Vec<usize> = (0..self.facets.len()).collect();
        order.sort_by_key(|&i| (self.facets[i].x0, self.facets[i].y0));
        let mut remap = vec![0u16; order.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new as u16;
        }
        self.facets = order.iter().map(|&i| self.facets[i]).collect();
        for s in &mut self.stacks {
            for id in s.iter_mut() {
                *id = remap[*id as usize];
            }
        }
        self
    }

    /// Drops breakpoints that are not an image edge of any facet.
    fn normalize(self, sheet: &Sheet) -> FoldedState {
        let mut ex = HashSet::new();
        let mut ey = HashSet::new();
        for f in &self.facets {
            let (a, b) = f.img_x(sheet);
            let (c, d) = f.img_y(sheet);
            ex.extend([a, b]);
            ey.extend([c, d]);
        }
        let keep_x: Vec<usize> = (0..self.xb.len()).filter(|&i| ex.contains(&self.xb[i])).collect();
        let keep_y: Vec<usize> = (0..self.yb.len()).filter(|&i| ey.contains(&self.yb[i])).collect();
        let rows = keep_y.len() - 1;
        let mut stacks = Vec::with_capacity((keep_x.len() - 1) * rows);
        for a in 0..keep_x.len() - 1 {
            for b in 0..rows {
                let cell = self.cell(keep_x[a], keep_y[b]).to_vec();
                debug_assert!(
                    (keep_x[a]..keep_x[a + 1]).all(|aa| self.cell(aa, keep_y[b]) == cell.as_slice()),
                    "merged cells disagree"
                );
                stacks.push(cell);
            }
        }
        FoldedState {
            xb: keep_x.iter().map(|&i| self.xb[i]).collect(),
            yb: keep_y.iter().map(|&i| self.yb[i]).collect(),
            facets: self.facets,
            stacks,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum MoveSide {
    Low,
    High,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Turn {
    Up,
    Down,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ModelKind {
    One,
    Some,
    All,
}

/// A legal vertical fold, before conversion to a public move.
#[derive(Clone, Debug)]
pub(crate) struct RawMove {
    pub line: i64,
    pub side: MoveSide,
    pub turn: Turn,
    pub moved_crossing: usize,
    pub crossing_total: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Place {
    Cross,
    Low,
    High,
}

struct Moved {
    crossing: BTreeSet<usize>,
    whole: BTreeSet<usize>,
}

impl Moved {
    fn contains(&self, f: usize) -> bool {
        self.crossing.contains(&f) || self.whole.contains(&f)
    }
}

/// Vertical-line successors of `st`. Each resulting state is normalized
/// and canonical.
pub(crate) fn vertical_successors(sheet: &Sheet, st: &FoldedState, model: ModelKind) -> Vec<(RawMove, FoldedState)> {
    let mut out = Vec::new();
    for c in st.vertical_lines(sheet) {
        let places: Vec<Place> = st
            .facets
            .iter()
            .map(|f| {
                let (lo, hi) = f.img_x(sheet);
                if lo < c && c < hi {
                    Place::Cross
                } else if hi <= c {
                    Place::Low
                } else {
                    Place::High
                }
            })
            .collect();
        let crossing: Vec<usize> = (0..places.len()).filter(|&i| places[i] == Place::Cross).collect();
        for side in [MoveSide::Low, MoveSide::High] {
            for turn in [Turn::Up, Turn::Down] {
                let mut sets: Vec<(BTreeSet<usize>, BTreeSet<usize>)> = Vec::new();
                let mut push = |m: Moved| {
                    let key = (m.crossing, m.whole);
                    if !sets.contains(&key) {
                        sets.push(key);
                    }
                };
                match model {
                    ModelKind::All => {
                        if let Some(m) = close_moved(sheet, st, &places, c, side, turn, &crossing) {
                            push(m);
                        }
                    }
                    ModelKind::One => {
                        // Exactly one crossing layer; flaps hinged to it ride along.
                        for &f in &crossing {
                            if let Some(m) = close_moved(sheet, st, &places, c, side, turn, &[f]) {
                                if m.crossing.len() == 1 {
                                    push(m);
                                }
                            }
                        }
                    }
                    ModelKind::Some => {
                        for &f in &crossing {
                            if let Some(m) = close_moved(sheet, st, &places, c, side, turn, &[f]) {
                                push(m);
                            }
                        }
                        // Unions of legal moved sets are legal.
                        let mut i = 0;
                        while i < sets.len() {
                            for j in 0..i {
                                let cu: BTreeSet<usize> = sets[i].0.union(&sets[j].0).copied().collect();
                                let wu: BTreeSet<usize> = sets[i].1.union(&sets[j].1).copied().collect();
                                let key = (cu, wu);
                                if !sets.contains(&key) {
                                    sets.push(key);
                                }
                            }
                            i += 1;
                        }
                    }
                }
                for (cset, wset) in sets {
                    let moved = Moved { crossing: cset, whole: wset };
                    if !fold_is_tear_free(sheet, st, c, turn, &moved) {
                        continue;
                    }
                    let next = apply_vertical(sheet, st, &places, c, side, turn, &moved);
                    if let Some(bad) = first_violation(sheet, &next) {
                        assert!(
                            bad == Violation::VerticalHinge(c),
                            "fold at {c} produced a penetrating state away from the fold line: {bad:?}"
                        );
                        continue;
                    }
                    let raw = RawMove {
                        line: c,
                        side,
                        turn,
                        moved_crossing: moved.crossing.len(),
                        crossing_total: crossing.len(),
                    };
                    out.push((raw, next.canonicalize()));
                }
            }
        }
    }
    out
}

fn on_moving_side(place: Place, side: MoveSide) -> bool {
    matches!((place, side), (Place::Low, MoveSide::Low) | (Place::High, MoveSide::High))
}

/// Source rectangle of the part of `f` that lies on the moving side.
fn moving_half(sheet: &Sheet, f: &Facet, c: i64, side: MoveSide) -> Option<Facet> {
    let k = f.source_x(sheet, c)?;
    if !f.has_interior_x(k) {
        return None;
    }
    // Source left part maps below c iff sx > 0.
    let left_is_low = f.sx > 0;
    let take_left = left_is_low == (side == MoveSide::Low);
    Some(if take_left { Facet { x1: k, ..*f } } else { Facet { x0: k, ..*f } })
}

fn stationary_half(sheet: &Sheet, f: &Facet, c: i64, side: MoveSide) -> Facet {
    let other = match side {
        MoveSide::Low => MoveSide::High,
        MoveSide::High => MoveSide::Low,
    };
    moving_half(sheet, f, c, other).expect("crossing facet already checked")
}

/// Smallest connected, stack-extremal moved set containing `seeds`.
#[allow(clippy::too_many_arguments)]
fn close_moved(
    sheet: &Sheet,
    st: &FoldedState,
    places: &[Place],
    c: i64,
    side: MoveSide,
    turn: Turn,
    seeds: &[usize],
) -> Option<Moved> {
    let mut m = Moved { crossing: seeds.iter().copied().collect(), whole: BTreeSet::new() };
    let moving_cols: Vec<usize> = (0..st.cols())
        .filter(|&a| match side {
            MoveSide::Low => st.xb[a + 1] <= c,
            MoveSide::High => st.xb[a] >= c,
        })
        .collect();
    loop {
        let mut added: Vec<usize> = Vec::new();
        // Hinged neighbours of moving pieces must move with them.
        let pieces: Vec<Facet> = m
            .crossing
            .iter()
            .map(|&f| moving_half(sheet, &st.facets[f], c, side))
            .chain(m.whole.iter().map(|&f| Some(st.facets[f])))
            .collect::<Option<Vec<_>>>()?;
        for piece in &pieces {
            for (h, other) in st.facets.iter().enumerate() {
                if m.contains(h) || added.contains(&h) {
                    continue;
                }
                if piece.adjacent(other) {
                    if places[h] != Place::Cross && !on_moving_side(places[h], side) {
                        return None;
                    }
                    added.push(h);
                }
            }
        }
        // Moving layers must form the top (or bottom) block everywhere on
        // the moving side.
        for &a in &moving_cols {
            for b in 0..st.rows() {
                let stack = st.cell(a, b);
                let member = |id: u16| m.contains(id as usize);
                match turn {
                    Turn::Up => {
                        if let Some(p) = stack.iter().position(|&id| member(id)) {
                            for &id in &stack[p..] {
                                if !member(id) && !added.contains(&(id as usize)) {
                                    added.push(id as usize);
                                }
                            }
                        }
                    }
                    Turn::Down => {
                        if let Some(p) = stack.iter().rposition(|&id| member(id)) {
                            for &id in &stack[..=p] {
                                if !member(id) && !added.contains(&(id as usize)) {
                                    added.push(id as usize);
                                }
                            }
                        }
                    }
                }
            }
        }
        if added.is_empty() {
            return Some(m);
        }
        for h in added {
            if places[h] == Place::Cross {
                m.crossing.insert(h);
            } else {
                m.whole.insert(h);
            }
        }
    }
}

fn is_valley(f: &Facet, turn: Turn) -> bool {
    f.face_up() == (turn == Turn::Up)
}

/// Every moved crossing facet must be creased along the whole fold line,
/// with labels admitting the fold's sense.
fn fold_is_tear_free(sheet: &Sheet, st: &FoldedState, c: i64, turn: Turn, moved: &Moved) -> bool {
    moved.crossing.iter().all(|&i| {
        let f = &st.facets[i];
        let Some(k) = f.source_x(sheet, c) else { return false };
        let valley = is_valley(f, turn);
        (f.y0..f.y1).all(|j| matches!(sheet.vcrease[k as usize][j as usize], Some(mv) if mv.admits(valley)))
    })
}

fn apply_vertical(
    sheet: &Sheet,
    st: &FoldedState,
    places: &[Place],
    c: i64,
    side: MoveSide,
    turn: Turn,
    moved: &Moved,
) -> FoldedState {
    let n = st.facets.len();
    let mut facets = Vec::with_capacity(n + moved.crossing.len());
    let mut stat_id = vec![u16::MAX; n];
    let mut mov_id = vec![u16::MAX; n];
    for (i, f) in st.facets.iter().enumerate() {
        if moved.crossing.contains(&i) {
            stat_id[i] = facets.len() as u16;
            facets.push(stationary_half(sheet, f, c, side));
            mov_id[i] = facets.len() as u16;
            facets.push(moving_half(sheet, f, c, side).expect("checked").reflected_x(c));
        } else if moved.whole.contains(&i) {
            mov_id[i] = facets.len() as u16;
            facets.push(f.reflected_x(c));
        } else {
            stat_id[i] = facets.len() as u16;
            facets.push(*f);
        }
    }
    let is_moving_col = |lo: i64, hi: i64| match side {
        MoveSide::Low => hi <= c,
        MoveSide::High => lo >= c,
    };
    let mut xb: Vec<i64> = st.xb.clone();
    xb.push(c);
    for &x in &st.xb {
        let on_moving = match side {
            MoveSide::Low => x < c,
            MoveSide::High => x > c,
        };
        if on_moving {
            xb.push(2 * c - x);
        }
    }
    xb.sort_unstable();
    xb.dedup();
    let old_col = |lo: i64, hi: i64| -> Option<usize> {
        let a = st.xb.partition_point(|&x| x <= lo).checked_sub(1)?;
        (a < st.cols() && st.xb[a + 1] >= hi).then_some(a)
    };
    let rows = st.rows();
    let mut stacks = Vec::with_capacity((xb.len() - 1) * rows);
    for w in xb.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let moving_col = is_moving_col(lo, hi);
        let here = old_col(lo, hi);
        let mirror = if moving_col { None } else { old_col(2 * c - hi, 2 * c - lo) };
        for b in 0..rows {
            let mut stat: Vec<u16> = Vec::new();
            if let Some(a) = here {
                for &id in st.cell(a, b) {
                    let id = id as usize;
                    if moving_col && moved.contains(id) {
                        continue;
                    }
                    stat.push(stat_id[id]);
                }
            }
            let mut block: Vec<u16> = Vec::new();
            if let Some(a) = mirror {
                for &id in st.cell(a, b).iter().rev() {
                    let id = id as usize;
                    if moved.contains(id) && on_moving_side_or_cross(places[id], side) {
                        block.push(mov_id[id]);
                    }
                }
            }
            let cell = match turn {
                Turn::Up => stat.into_iter().chain(block).collect(),
                Turn::Down => block.into_iter().chain(stat).collect(),
            };
            stacks.push(cell);
        }
    }
    FoldedState { facets, xb, yb: st.yb.clone(), stacks }.normalize(sheet)
}

fn on_moving_side_or_cross(place: Place, side: MoveSide) -> bool {
    place == Place::Cross || on_moving_side(place, side)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Violation {
    /// Layers interleave around a vertical hinge at this image x.
    VerticalHinge(i64),
    /// Same around a horizontal hinge at this image y.
    HorizontalHinge(i64),
    /// Two facets swap order between neighbouring cells.
    Inconsistent,
}

/// Full non-penetration check of a folded state.
pub(crate) fn first_violation(sheet: &Sheet, st: &FoldedState) -> Option<Violation> {
    if let Some(x) = hinge_violation(sheet, st) {
        return Some(Violation::VerticalHinge(x));
    }
    if let Some(y) = hinge_violation(&sheet.transposed(), &st.transposed()) {
        return Some(Violation::HorizontalHinge(y));
    }
    if !orders_consistent(st) {
        return Some(Violation::Inconsistent);
    }
    None
}

/// Taco-taco and taco-tortilla conditions along vertical hinges.
fn hinge_violation(sheet: &Sheet, st: &FoldedState) -> Option<i64> {
    // (line, column, row) -> list of (lo, hi) stack intervals of hinges.
    let mut tacos: std::collections::HashMap<(i64, usize, usize), Vec<(usize, usize)>> = Default::default();
    for (fi, f) in st.facets.iter().enumerate() {
        for (gi, g) in st.facets.iter().enumerate() {
            if f.x1 != g.x0 {
                continue;
            }
            let (y0, y1) = (f.y0.max(g.y0), f.y1.min(g.y1));
            if y0 >= y1 {
                continue;
            }
            let h = f.ox + f.sx as i64 * sheet.xs[f.x1 as usize];
            let ya = f.oy + f.sy as i64 * sheet.ys[y0 as usize];
            let yb = f.oy + f.sy as i64 * sheet.ys[y1 as usize];
            let (ylo, yhi) = (ya.min(yb), ya.max(yb));
            let (flo, fhi) = f.img_x(sheet);
            let (glo, ghi) = g.img_x(sheet);
            let low_side = fhi <= h;
            // A folded crease keeps both facets on one side of it.
            if low_side != (ghi <= h) || (!low_side && (flo < h || glo < h)) {
                return Some(h);
            }
            let col = if low_side {
                st.xb.iter().position(|&x| x == h).and_then(|p| p.checked_sub(1))
            } else {
                st.xb.iter().position(|&x| x == h).filter(|&p| p < st.cols())
            };
            let Some(a) = col else { continue };
            for b in 0..st.rows() {
                if st.yb[b] < ylo || st.yb[b + 1] > yhi {
                    continue;
                }
                let stack = st.cell(a, b);
                let (Some(pf), Some(pg)) = (
                    stack.iter().position(|&id| id as usize == fi),
                    stack.iter().position(|&id| id as usize == gi),
                ) else {
                    continue;
                };
                let (lo, hi) = (pf.min(pg), pf.max(pg));
                for &id in &stack[lo + 1..hi] {
                    let (clo, chi) = st.facets[id as usize].img_x(sheet);
                    if clo < h && h < chi {
                        return Some(h);
                    }
                }
                tacos.entry((h, a, b)).or_default().push((lo, hi));
            }
        }
    }
    for ((h, _, _), ivs) in tacos {
        for (i, &(a1, b1)) in ivs.iter().enumerate() {
            for &(a2, b2) in &ivs[i + 1..] {
                if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                    return Some(h);
                }
            }
        }
    }
    None
}

fn orders_consistent(st: &FoldedState) -> bool {
    let same_order = |s: &[u16], t: &[u16]| {
        let common_s: Vec<u16> = s.iter().copied().filter(|id| t.contains(id)).collect();
        let common_t: Vec<u16> = t.iter().copied().filter(|id| s.contains(id)).collect();
        common_s == common_t
    };
    for a in 0..st.cols() {
        for b in 0..st.rows() {
            if a + 1 < st.cols() && !same_order(st.cell(a, b), st.cell(a + 1, b)) {
                return false;
            }
            if b + 1 < st.rows() && !same_order(st.cell(a, b), st.cell(a, b + 1)) {
                return false;
            }
        }
    }
    true
}

/// All-layers dead end: layers glued at a point never separate, so an
/// unfolded crease stacked on an uncreased layer (or on a crease needing
/// the opposite turn) can never be folded.
pub(crate) fn has_stranded_crease(sheet: &Sheet, st: &FoldedState) -> bool {
    stranded_vertical(sheet, st) || stranded_vertical(&sheet.transposed(), &st.transposed())
}

fn stranded_vertical(sheet: &Sheet, st: &FoldedState) -> bool {
    // Fine rows: images of every source row boundary of every facet.
    let mut fine: BTreeSet<i64> = BTreeSet::new();
    for f in &st.facets {
        for j in f.y0..=f.y1 {
            fine.insert(f.oy + f.sy as i64 * sheet.ys[j as usize]);
        }
    }
    let fine: Vec<i64> = fine.into_iter().collect();
    for h in st.vertical_lines(sheet) {
        for w in fine.windows(2) {
            let mid2 = w[0] + w[1];
            let mut any_crease = false;
            let mut any_plain = false;
            let (mut up_ok, mut down_ok) = (true, true);
            for f in &st.facets {
                let (lo, hi) = f.img_x(sheet);
                let (ylo, yhi) = f.img_y(sheet);
                if !(lo < h && h < hi && 2 * ylo < mid2 && mid2 < 2 * yhi) {
                    continue;
                }
                // Source row containing this fine row.
                let sy_mid2 = f.sy as i64 * (mid2 - 2 * f.oy);
                let j = (f.y0..f.y1)
                    .find(|&j| 2 * sheet.ys[j as usize] < sy_mid2 && sy_mid2 < 2 * sheet.ys[j as usize + 1]);
                let mv = j.and_then(|j| {
                    f.source_x(sheet, h)
                        .filter(|&k| f.has_interior_x(k))
                        .and_then(|k| sheet.vcrease[k as usize][j as usize])
                });
                match mv {
                    Some(mv) => {
                        any_crease = true;
                        up_ok &= mv.admits(is_valley(f, Turn::Up));
                        down_ok &= mv.admits(is_valley(f, Turn::Down));
                    }
                    None => any_plain = true,
                }
            }
            if any_crease && (any_plain || !(up_ok || down_ok)) {
                return true;
            }
        }
    }
    false
}

/// Successors along both axes.
pub(crate) fn successors(sheets: &[Sheet; 2], st: &FoldedState, model: ModelKind) -> Vec<(RawMove, bool, FoldedState)> {
    let mut out: Vec<(RawMove, bool, FoldedState)> = vertical_successors(&sheets[0], st, model)
        .into_iter()
        .map(|(m, s)| (m, false, s))
        .collect();
    let t = st.transposed();
    for (m, s) in vertical_successors(&sheets[1], &t, model) {
        out.push((m, true, s.transposed().canonicalize()));
    }
    if model == ModelKind::All {
        out.retain(|(_, _, s)| !has_stranded_crease(&sheets[0], s));
    }
    out
}
