//! Hardness-reduction instances as explicit crease patterns.
//!
//! * [`gen_3sat_rect`]: a rectangular mixed pattern with one pair of
//!   unassigned horizontal lines per variable, assigned vertical lines
//!   `v_i`, `v'_i`, and a clause section on top.
//! * [`gen_3partition_assigned`]: an orthogonal polygon made of the Bar,
//!   Staircase, Wrapper, Column, Cage and two Arms. Without the second Arm
//!   (see [`ThreePartitionOptions::arm2`]) the Bar can slip under the Cage
//!   by folding a single Wrapper crease followed by a Staircase crease; the
//!   second Arm blocks that Staircase fold.
//! * [`gen_3partition_unassigned`]: the same with every crease unassigned
//!   and the Wrapper replaced by the Cactus, whose branches force the
//!   Wrapper creases to fold right to left.
//!
//! Dimensions are fixed in [`GadgetConfig`]; only the topology and the
//! key lengths (`a_i`, `2t`, `2m`, column width = crease spacing) are
//! dictated by the reductions.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Assignment;
use crate::rational::Rational;
use crate::rect::{Axis, RectCrease, RectPattern};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeSatFormula {
    num_vars: usize,
    /// Literals are `+v` / `-v` with `v` in `1..=num_vars`.
    clauses: Vec<[i32; 3]>,
}

impl ThreeSatFormula {
    pub fn new(num_vars: usize, clauses: Vec<[i32; 3]>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::InvalidPattern("formula needs at least one variable".into()));
        }
        for c in &clauses {
            for &lit in c {
                if lit == 0 || lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::InvalidPattern(format!("literal {lit} is not over 1..={num_vars}")));
                }
            }
        }
        Ok(ThreeSatFormula { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[i32; 3]] {
        &self.clauses
    }

    pub fn is_satisfied_by(&self, values: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&lit| values[lit.unsigned_abs() as usize - 1] == (lit > 0)))
    }

    /// Brute force over all assignments.
    pub fn is_satisfiable(&self) -> bool {
        (0u64..1 << self.num_vars)
            .any(|mask| self.is_satisfied_by(&(0..self.num_vars).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
    }
}

/// Where each feature of the 3SAT pattern sits. Unit grid, origin at the
/// bottom-left corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreeSatLayout {
    pub width: i64,
    pub height: i64,
    /// `[bottom, top]` of each variable section.
    pub sections: Vec<(i64, i64)>,
    pub false_lines: Vec<i64>,
    pub true_lines: Vec<i64>,
    pub v_lines: Vec<i64>,
    pub v_prime_lines: Vec<i64>,
    /// Column of each literal occurrence, clause-major.
    pub occurrence_columns: Vec<i64>,
    pub clause_base: i64,
}

pub fn three_sat_layout(formula: &ThreeSatFormula) -> ThreeSatLayout {
    let n = formula.num_vars as i64;
    let m = formula.clauses.len() as i64;
    let vx = |i: i64| 3 * m + 1 + 2 * i;
    ThreeSatLayout {
        width: 3 * m + 2 * (n + 1) + 1,
        height: 4 * n + 2,
        sections: (0..n).map(|i| (4 * i, 4 * i + 4)).collect(),
        false_lines: (0..n).map(|i| 4 * i + 1).collect(),
        true_lines: (0..n).map(|i| 4 * i + 2).collect(),
        v_lines: (0..=n).map(vx).collect(),
        v_prime_lines: (0..=n).map(|i| vx(i) + 1).collect(),
        occurrence_columns: (0..3 * m).map(|c| c + 1).collect(),
        clause_base: 4 * n,
    }
}

pub fn gen_3sat_rect(formula: &ThreeSatFormula) -> RectPattern {
    use Assignment::*;
    let lay = three_sat_layout(formula);
    // Every unit segment of the grid is a crease; keys are (axis, line, cell).
    let mut grid: BTreeMap<(Axis, i64, i64), Assignment> = BTreeMap::new();
    for x in 1..lay.width {
        for y in 0..lay.height {
            grid.insert((Axis::V, x, y), Unassigned);
        }
    }
    for y in 1..lay.height {
        for x in 0..lay.width {
            grid.insert((Axis::H, y, x), Unassigned);
        }
    }
    for (&v, &vp) in lay.v_lines.iter().zip(&lay.v_prime_lines) {
        for y in 0..lay.height {
            grid.insert((Axis::V, v, y), Mountain);
            grid.insert((Axis::V, vp, y), Valley);
        }
    }
    for (j, clause) in formula.clauses.iter().enumerate() {
        for (k, &lit) in clause.iter().enumerate() {
            let x = lay.occurrence_columns[3 * j + k];
            let (bottom, _) = lay.sections[lit.unsigned_abs() as usize - 1];
            if lit > 0 {
                grid.insert((Axis::V, x, bottom), Valley);
            } else {
                grid.insert((Axis::V, x, bottom + 3), Mountain);
            }
        }
        // One fixed valley at the clause vertex; false literals supply the rest.
        let x0 = lay.occurrence_columns[3 * j] + 1;
        grid.insert((Axis::V, x0, lay.clause_base), Valley);
    }
    let creases = grid
        .into_iter()
        .map(|((axis, line, cell), mv)| RectCrease {
            axis,
            coord: line.into(),
            from: cell.into(),
            to: (cell + 1).into(),
            mv,
        })
        .collect();
    RectPattern::new(lay.width.into(), lay.height.into(), creases).expect("layout stays inside the rectangle")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    numbers: Vec<u32>,
}

impl ThreePartitionInstance {
    pub fn new(numbers: Vec<u32>) -> Result<Self> {
        if numbers.is_empty() || numbers.len() % 3 != 0 {
            return Err(Error::InvalidPattern("3-Partition needs 3m numbers".into()));
        }
        if numbers.contains(&0) {
            return Err(Error::InvalidPattern("3-Partition numbers must be positive".into()));
        }
        if numbers.iter().map(|&a| a as u64).sum::<u64>() % 3 != 0 {
            return Err(Error::InvalidPattern("sum of the numbers must be divisible by 3".into()));
        }
        Ok(ThreePartitionInstance { numbers })
    }

    pub fn numbers(&self) -> &[u32] {
        &self.numbers
    }

    pub fn m(&self) -> usize {
        self.numbers.len() / 3
    }

    /// Target length `t = (sum a_i) / 3`; Cage steps have height `2t`.
    pub fn t(&self) -> i64 {
        self.numbers.iter().map(|&a| a as i64).sum::<i64>() / 3
    }
}

/// Fixed dimensions of the 3-Partition polygons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetConfig {
    /// Column width, equal to the Wrapper crease spacing.
    pub column_width: i64,
    pub bar_thickness: i64,
    pub staircase_width: i64,
    /// Vertical gap between stacked horizontal parts.
    pub gap: i64,
    /// Opening between the Cage's jaws.
    pub cage_opening: i64,
}

impl Default for GadgetConfig {
    fn default() -> Self {
        GadgetConfig { column_width: 4, bar_thickness: 1, staircase_width: 1, gap: 1, cage_opening: 2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreePartitionOptions {
    /// Emit the second Arm. Disabling it reproduces the flawed gadget.
    pub arm2: bool,
    pub config: GadgetConfig,
}

impl Default for ThreePartitionOptions {
    fn default() -> Self {
        ThreePartitionOptions { arm2: true, config: GadgetConfig::default() }
    }
}

/// Named part of a gadget polygon.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartInfo {
    /// Rectangles `[x0, y0, x1, y1]` whose union is the part.
    pub rects: Vec<[Rational; 4]>,
    /// Creases whose midpoint lies in this part.
    #[serde(default)]
    pub creases: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_height: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<usize>,
}

impl PartInfo {
    fn new(rects: Vec<[i64; 4]>) -> Self {
        PartInfo {
            rects: rects.into_iter().map(|r| r.map(Rational::from_int)).collect(),
            creases: 0,
            steps: None,
            step_height: None,
            segments: None,
        }
    }

    fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.rects.iter().any(|[x0, y0, x1, y1]| x0 <= x && x <= x1 && y0 <= y && y <= y1)
    }
}

/// Simple orthogonal polygon (counterclockwise) with crease segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPattern {
    pub vertices: Vec<(Rational, Rational)>,
    pub creases: Vec<RectCrease>,
    pub parts: BTreeMap<String, PartInfo>,
}

pub fn gen_3partition_assigned(inst: &ThreePartitionInstance) -> PolyPattern {
    gen_3partition(inst, ThreePartitionOptions::default(), false)
}

pub fn gen_3partition_assigned_with(inst: &ThreePartitionInstance, opts: ThreePartitionOptions) -> PolyPattern {
    gen_3partition(inst, opts, false)
}

pub fn gen_3partition_unassigned(inst: &ThreePartitionInstance) -> PolyPattern {
    gen_3partition(inst, ThreePartitionOptions::default(), true)
}

pub fn gen_3partition_unassigned_with(inst: &ThreePartitionInstance, opts: ThreePartitionOptions) -> PolyPattern {
    gen_3partition(inst, opts, true)
}

fn gen_3partition(inst: &ThreePartitionInstance, opts: ThreePartitionOptions, cactus: bool) -> PolyPattern {
    use Assignment::*;
    let cfg = opts.config;
    let (w, g, bt) = (cfg.column_width, cfg.gap, cfg.bar_thickness);
    let m = inst.m() as i64;
    let t = inst.t();
    let s: i64 = inst.numbers.iter().map(|&a| a as i64).sum();
    let sw = cfg.staircase_width;

    // Wrapper creases c_0 (rightmost) .. c_{2m-1}, spacing w.
    let xl = sw + 2;
    let bar_len = xl + 2 * m * w + w;
    let creases_x: Vec<i64> = (0..2 * m).map(|k| bar_len - w - k * w).collect();

    let bar_y = s;
    let arm1_y = bar_y + bt + g;
    let wrap_y = arm1_y + bt + g;
    let wrap_top = wrap_y + bt;
    let branch_top = wrap_top + 2 * g;
    let arm2_y = branch_top + g;

    let mut parts: BTreeMap<String, PartInfo> = BTreeMap::new();
    let mut creases = Vec::new();
    let seg = |axis, coord: i64, from: i64, to: i64, mv| RectCrease {
        axis,
        coord: coord.into(),
        from: from.into(),
        to: to.into(),
        mv,
    };
    let label = |mv: Assignment| if cactus { Unassigned } else { mv };

    let mut staircase = PartInfo::new(vec![[0, 0, sw, s]]);
    let mut y = 0;
    for (i, &a) in inst.numbers.iter().enumerate() {
        y += a as i64;
        if i + 1 < inst.numbers.len() {
            let mv = if i % 2 == 0 { Mountain } else { Valley };
            creases.push(seg(Axis::H, y, 0, sw, label(mv)));
        }
    }
    staircase.creases = inst.numbers.len() - 1;
    staircase.segments = Some(inst.numbers.len());
    parts.insert("staircase".into(), staircase);

    parts.insert("bar".into(), PartInfo::new(vec![[0, bar_y, bar_len, bar_y + bt]]));
    parts.insert(
        "arm1".into(),
        PartInfo::new(vec![[bar_len - 1, bar_y + bt, bar_len, arm1_y], [xl - 1, arm1_y, bar_len, arm1_y + bt]]),
    );

    let mut wrapper = PartInfo::new(vec![[bar_len - 1, arm1_y + bt, bar_len, wrap_y], [xl, wrap_y, bar_len, wrap_top]]);
    for &c in &creases_x {
        creases.push(seg(Axis::V, c, wrap_y, wrap_top, label(Valley)));
    }
    wrapper.creases = creases_x.len();
    parts.insert(if cactus { "cactus" } else { "wrapper" }.into(), wrapper);

    if cactus {
        // Branch k sits just right of c_k and reaches across its line.
        for (k, &c) in creases_x.iter().enumerate() {
            parts.insert(
                format!("branch_{k}"),
                PartInfo::new(vec![[c + 1, wrap_top, c + 2, wrap_top + g], [c - 1, wrap_top + g, c + 2, branch_top]]),
            );
        }
    }

    let cage_y0 = wrap_y + g;
    let cage_h = 2 * (2 * t * m) + cfg.cage_opening;
    let column_top = cage_y0 + cage_h;
    parts.insert("column".into(), PartInfo::new(vec![[xl - w, wrap_y, xl, column_top]]));

    // A "C" opening left: back wall against the Column, two staircases of
    // m steps of height 2t each.
    let back = xl - w;
    let mut cage_rects = vec![[back - 1, cage_y0, back, column_top]];
    for k in 0..m {
        let reach = back - 1 - (m - k);
        cage_rects.push([reach, cage_y0 + 2 * t * k, back - 1, cage_y0 + 2 * t * (k + 1)]);
        cage_rects.push([reach, column_top - 2 * t * (k + 1), back - 1, column_top - 2 * t * k]);
    }
    let mut cage = PartInfo::new(cage_rects);
    cage.steps = Some(2 * m as usize);
    cage.step_height = Some(Rational::from_int(2 * t));
    parts.insert("cage".into(), cage);

    if opts.arm2 {
        parts.insert(
            "arm2".into(),
            PartInfo::new(vec![[bar_len - 1, wrap_top, bar_len, arm2_y], [xl + 1, arm2_y, bar_len, arm2_y + bt]]),
        );
    }

    let rects: Vec<[Rational; 4]> = parts.values().flat_map(|p| p.rects.iter().cloned()).collect();
    let vertices = union_boundary(&rects).expect("gadget parts form a simply connected region");
    let mut pattern = PolyPattern { vertices, creases, parts };
    recount_part_creases(&mut pattern);
    pattern
}

fn recount_part_creases(p: &mut PolyPattern) {
    for part in p.parts.values_mut() {
        part.creases = p
            .creases
            .iter()
            .filter(|c| {
                let (mx, my) = crease_midpoint(c);
                part.contains(&mx, &my)
            })
            .count();
    }
}

fn crease_midpoint(c: &RectCrease) -> (Rational, Rational) {
    let mid = (&c.from + &c.to).half();
    match c.axis {
        Axis::V => (c.coord.clone(), mid),
        Axis::H => (mid, c.coord.clone()),
    }
}

/// Counterclockwise boundary of a union of rectangles, starting at the
/// lowest-leftmost vertex. Fails when the union is disconnected, has holes
/// or touches itself at a single point.
pub fn union_boundary(rects: &[[Rational; 4]]) -> Result<Vec<(Rational, Rational)>> {
    let xs: Vec<Rational> = rects
        .iter()
        .flat_map(|r| [r[0].clone(), r[2].clone()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let ys: Vec<Rational> = rects
        .iter()
        .flat_map(|r| [r[1].clone(), r[3].clone()])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if xs.len() < 2 || ys.len() < 2 {
        return Err(Error::InvalidPattern("empty region".into()));
    }
    let (nx, ny) = (xs.len() - 1, ys.len() - 1);
    let mut covered = vec![false; nx * ny];
    for r in rects {
        let i0 = xs.binary_search(&r[0]).unwrap();
        let i1 = xs.binary_search(&r[2]).unwrap();
        let j0 = ys.binary_search(&r[1]).unwrap();
        let j1 = ys.binary_search(&r[3]).unwrap();
        for i in i0..i1 {
            for j in j0..j1 {
                covered[i * ny + j] = true;
            }
        }
    }
    let cov = |i: isize, j: isize| {
        i >= 0 && j >= 0 && (i as usize) < nx && (j as usize) < ny && covered[i as usize * ny + j as usize]
    };
    // Directed unit edges with the region on the left, keyed by start.
    let mut next: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    let mut count = 0;
    for i in 0..nx as isize {
        for j in 0..ny as isize {
            if !cov(i, j) {
                continue;
            }
            let (a, b) = (i as usize, j as usize);
            let mut add = |from: (usize, usize), to: (usize, usize)| {
                next.entry(from).or_default().push(to);
                count += 1;
            };
            if !cov(i, j - 1) {
                add((a, b), (a + 1, b));
            }
            if !cov(i + 1, j) {
                add((a + 1, b), (a + 1, b + 1));
            }
            if !cov(i, j + 1) {
                add((a + 1, b + 1), (a, b + 1));
            }
            if !cov(i - 1, j) {
                add((a, b + 1), (a, b));
            }
        }
    }
    if let Some((&(i, j), _)) = next.iter().find(|(_, v)| v.len() > 1) {
        return Err(Error::InvalidPattern(format!("region pinches at ({}, {})", xs[i], ys[j])));
    }
    let start = *next
        .keys()
        .min_by_key(|&&(i, j)| (j, i))
        .ok_or_else(|| Error::InvalidPattern("empty region".into()))?;
    let mut cycle = vec![start];
    let mut cur = next[&start][0];
    while cur != start {
        cycle.push(cur);
        cur = next[&cur][0];
        if cycle.len() > count {
            return Err(Error::InvalidPattern("boundary does not close".into()));
        }
    }
    if cycle.len() != count {
        return Err(Error::InvalidPattern("region is disconnected or has holes".into()));
    }
    // Keep corners only.
    let k = cycle.len();
    let corners: Vec<(usize, usize)> = (0..k)
        .filter(|&i| {
            let (p, c, n) = (cycle[(i + k - 1) % k], cycle[i], cycle[(i + 1) % k]);
            !((p.0 == c.0 && c.0 == n.0) || (p.1 == c.1 && c.1 == n.1))
        })
        .map(|i| cycle[i])
        .collect();
    let first = corners.iter().enumerate().min_by_key(|(_, &(i, j))| (j, i)).map(|(i, _)| i).unwrap_or(0);
    Ok((0..corners.len())
        .map(|o| {
            let (i, j) = corners[(first + o) % corners.len()];
            (xs[i].clone(), ys[j].clone())
        })
        .collect())
}

/// One failed structural check, with the coordinates involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    TooFewVertices(usize),
    NotOrthogonal { at: (Rational, Rational) },
    DegenerateEdge { at: (Rational, Rational) },
    SelfIntersection { first: (Rational, Rational), second: (Rational, Rational) },
    Clockwise,
    CreaseOutside { crease: usize, at: (Rational, Rational) },
    MissingPart(String),
    CountMismatch { part: String, expected: usize, found: usize },
    BranchMisaligned { crease: usize, coord: Rational },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn validate_polypattern(p: &PolyPattern) -> ValidationReport {
    let mut failures = Vec::new();
    check_polygon(&p.vertices, &mut failures);
    if failures.is_empty() {
        for (i, c) in p.creases.iter().enumerate() {
            if let Some(at) = crease_escapes(&p.vertices, c) {
                failures.push(ValidationFailure::CreaseOutside { crease: i, at });
            }
        }
    }
    check_parts(p, &mut failures);
    ValidationReport { failures }
}

fn check_polygon(v: &[(Rational, Rational)], failures: &mut Vec<ValidationFailure>) {
    let n = v.len();
    if n < 4 {
        failures.push(ValidationFailure::TooFewVertices(n));
        return;
    }
    for i in 0..n {
        let (a, b, c) = (&v[(i + n - 1) % n], &v[i], &v[(i + 1) % n]);
        if a == b {
            failures.push(ValidationFailure::DegenerateEdge { at: b.clone() });
            continue;
        }
        let in_horizontal = a.1 == b.1 && a.0 != b.0;
        let in_vertical = a.0 == b.0 && a.1 != b.1;
        let out_horizontal = b.1 == c.1 && b.0 != c.0;
        let out_vertical = b.0 == c.0 && b.1 != c.1;
        if !((in_horizontal && out_vertical) || (in_vertical && out_horizontal)) {
            failures.push(ValidationFailure::NotOrthogonal { at: b.clone() });
        }
    }
    if !failures.is_empty() {
        return;
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (e1, e2) = ((&v[i], &v[(i + 1) % n]), (&v[j], &v[(j + 1) % n]));
            let touching = segments_touch(e1, e2);
            if touching && !adjacent {
                failures.push(ValidationFailure::SelfIntersection { first: v[i].clone(), second: v[j].clone() });
                return;
            }
        }
    }
    if signed_area2(v).is_negative() {
        failures.push(ValidationFailure::Clockwise);
    }
}

fn signed_area2(v: &[(Rational, Rational)]) -> Rational {
    let n = v.len();
    (0..n).fold(Rational::zero(), |acc, i| {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        acc + &a.0 * &b.1 - &b.0 * &a.1
    })
}

type Pt = (Rational, Rational);

/// Whether two axis-parallel closed segments share any point.
fn segments_touch(a: (&Pt, &Pt), b: (&Pt, &Pt)) -> bool {
    let bbox = |s: (&Pt, &Pt)| {
        (
            s.0 .0.clone().min(s.1 .0.clone()),
            s.0 .0.clone().max(s.1 .0.clone()),
            s.0 .1.clone().min(s.1 .1.clone()),
            s.0 .1.clone().max(s.1 .1.clone()),
        )
    };
    let (ax0, ax1, ay0, ay1) = bbox(a);
    let (bx0, bx1, by0, by1) = bbox(b);
    ax0 <= bx1 && bx0 <= ax1 && ay0 <= by1 && by0 <= ay1
}

/// Ray-casting containment for closed orthogonal polygons.
fn point_inside_or_on(v: &[Pt], p: &Pt) -> bool {
    let n = v.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        if segments_touch((a, b), (p, p)) {
            return true;
        }
        // Vertical edges crossing the rightward ray, half-open in y.
        if a.0 == b.0 && a.0 > p.0 {
            let (lo, hi) = if a.1 < b.1 { (&a.1, &b.1) } else { (&b.1, &a.1) };
            if lo <= &p.1 && &p.1 < hi {
                inside = !inside;
            }
        }
    }
    inside
}

/// A point of the crease outside the polygon, if any.
fn crease_escapes(v: &[Pt], c: &RectCrease) -> Option<Pt> {
    let at = |s: &Rational| match c.axis {
        Axis::V => (c.coord.clone(), s.clone()),
        Axis::H => (s.clone(), c.coord.clone()),
    };
    // Breakpoints where the crease meets boundary edges.
    let mut stops: BTreeSet<Rational> = [c.from.clone(), c.to.clone()].into();
    let n = v.len();
    for i in 0..n {
        let (a, b) = (&v[i], &v[(i + 1) % n]);
        let (along, across) = match c.axis {
            Axis::V => ((&a.1, &b.1), (&a.0, &b.0)),
            Axis::H => ((&a.0, &b.0), (&a.1, &b.1)),
        };
        if along.0 == along.1 && across.0.clone().min(across.1.clone()) <= c.coord
            && c.coord <= across.0.clone().max(across.1.clone())
            && &c.from < along.0
            && along.0 < &c.to
        {
            stops.insert(along.0.clone());
        }
    }
    let stops: Vec<Rational> = stops.into_iter().collect();
    for s in &stops {
        if !point_inside_or_on(v, &at(s)) {
            return Some(at(s));
        }
    }
    for w in stops.windows(2) {
        let mid = (&w[0] + &w[1]).half();
        if !point_inside_or_on(v, &at(&mid)) {
            return Some(at(&mid));
        }
    }
    None
}

fn check_parts(p: &PolyPattern, failures: &mut Vec<ValidationFailure>) {
    let part = |name: &str, failures: &mut Vec<ValidationFailure>| {
        let found = p.parts.get(name);
        if found.is_none() {
            failures.push(ValidationFailure::MissingPart(name.into()));
        }
        found
    };
    let mismatch = |name: &str, expected: usize, found: usize, failures: &mut Vec<ValidationFailure>| {
        if expected != found {
            failures.push(ValidationFailure::CountMismatch { part: name.into(), expected, found });
        }
    };
    // Declared crease counts must match the geometry.
    for (name, info) in &p.parts {
        let found = p
            .creases
            .iter()
            .filter(|c| {
                let (x, y) = crease_midpoint(c);
                info.contains(&x, &y)
            })
            .count();
        mismatch(name, info.creases, found, failures);
    }
    for name in ["bar", "staircase", "column", "cage", "arm1"] {
        part(name, failures);
    }
    let wrapper_name = if p.parts.contains_key("cactus") { "cactus" } else { "wrapper" };
    let (Some(stair), Some(cage), Some(wrapper)) =
        (p.parts.get("staircase"), p.parts.get("cage"), part(wrapper_name, failures))
    else {
        return;
    };
    let steps = cage.steps.unwrap_or(0);
    let n = stair.segments.unwrap_or(0);
    // 2m Cage steps (m per jaw), 3m numbers, 2m Wrapper creases.
    mismatch("cage", 3 * steps / 2, n, failures);
    mismatch("staircase", n.saturating_sub(1), stair.creases, failures);
    mismatch(wrapper_name, steps, wrapper.creases, failures);
    if wrapper_name == "cactus" {
        let branches: Vec<&PartInfo> =
            p.parts.iter().filter(|(k, _)| k.starts_with("branch_")).map(|(_, v)| v).collect();
        mismatch("branches", wrapper.creases, branches.len(), failures);
        let mut lines: Vec<(usize, Rational)> = p
            .creases
            .iter()
            .enumerate()
            .filter(|(_, c)| {
                let (x, y) = crease_midpoint(c);
                c.axis == Axis::V && wrapper.contains(&x, &y)
            })
            .map(|(i, c)| (i, c.coord.clone()))
            .collect();
        lines.sort_by(|a, b| b.1.cmp(&a.1));
        for (k, (i, x)) in lines.iter().enumerate() {
            let crosses = p.parts.get(&format!("branch_{k}")).is_some_and(|b| {
                b.rects.iter().any(|[x0, _, x1, _]| x0 < x && x < x1)
            });
            if !crosses {
                failures.push(ValidationFailure::BranchMisaligned { crease: *i, coord: x.clone() });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: [i64; 4]) -> [Rational; 4] {
        v.map(Rational::from_int)
    }

    #[test]
    fn union_of_l_shape() {
        let b = union_boundary(&[r([0, 0, 2, 1]), r([0, 1, 1, 2])]).unwrap();
        let ints: Vec<(String, String)> = b.iter().map(|(x, y)| (x.to_string(), y.to_string())).collect();
        let expect = [("0", "0"), ("2", "0"), ("2", "1"), ("1", "1"), ("1", "2"), ("0", "2")];
        assert_eq!(ints, expect.map(|(a, b)| (a.to_string(), b.to_string())));
    }

    #[test]
    fn union_rejects_holes_and_pinches() {
        let ring = [r([0, 0, 3, 1]), r([0, 2, 3, 3]), r([0, 1, 1, 2]), r([2, 1, 3, 2])];
        assert!(union_boundary(&ring).is_err());
        assert!(union_boundary(&[r([0, 0, 1, 1]), r([1, 1, 2, 2])]).is_err());
        assert!(union_boundary(&[r([0, 0, 1, 1]), r([2, 0, 3, 1])]).is_err());
    }

    #[test]
    fn three_sat_shape() {
        let f = ThreeSatFormula::new(1, vec![[1, 1, 1]]).unwrap();
        let lay = three_sat_layout(&f);
        let p = gen_3sat_rect(&f);
        let (w, h) = (lay.width as usize, lay.height as usize);
        assert_eq!(p.creases().len(), (w - 1) * h + (h - 1) * w);
        let labels = |axis: Axis, line: i64| -> BTreeSet<Assignment> {
            p.creases().iter().filter(|c| c.axis == axis && c.coord == line.into()).map(|c| c.mv).collect()
        };
        for y in [lay.false_lines[0], lay.true_lines[0]] {
            assert_eq!(labels(Axis::H, y), BTreeSet::from([Assignment::Unassigned]));
        }
        assert_eq!(labels(Axis::V, lay.v_lines[0]), BTreeSet::from([Assignment::Mountain]));
        assert_eq!(labels(Axis::V, lay.v_prime_lines[0]), BTreeSet::from([Assignment::Valley]));
        assert!(ThreeSatFormula::new(2, vec![[1, 3, -1]]).is_err());
    }

    #[test]
    fn partition_validates() {
        let inst = ThreePartitionInstance::new(vec![1, 1, 1]).unwrap();
        assert_eq!(inst.t(), 1);
        for p in [gen_3partition_assigned(&inst), gen_3partition_unassigned(&inst)] {
            let rep = validate_polypattern(&p);
            assert!(rep.is_ok(), "{:?}", rep.failures);
        }
        assert!(ThreePartitionInstance::new(vec![1, 1]).is_err());
        assert!(ThreePartitionInstance::new(vec![1, 1, 2]).is_err());
    }
}
