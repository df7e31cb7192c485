//! One PASS/FAIL line per acceptance criterion.

use std::collections::{HashSet, VecDeque};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use simplefold::all_layers::{decide_all_layers_mixed, is_valid_all_layers_fold, plausible_creases};
use simplefold::characterize::{decide_assigned, replay, synthesize_sequence, FoldabilityVerdict1D};
use simplefold::envelope::{envelope, ASSIGNED, MIXED};
use simplefold::formats::{poly_to_json, rect_to_json};
use simplefold::gadgets::{
    gen_3partition_assigned, gen_3partition_unassigned, gen_3sat_rect, validate_polypattern, PolyPattern,
    ThreePartitionInstance, ThreeSatFormula,
};
use simplefold::mixed_assign::{decide_mixed, find_valid_assignment, LayerModel};
use simplefold::oracle::{search_1d, search_rect, FoldModel, FoldSearch, SearchBudget};
use simplefold::rect::{decide_rect_one_layer, Axis, RectCrease, RectPattern};
use simplefold::{Assignment, Crease, CreasePattern1D, Rational};

use Assignment::*;

type Verdict = Result<String, String>;

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn p1(len: i64, cs: &[(i64, Assignment)]) -> CreasePattern1D {
    CreasePattern1D::from_ints(len, cs).unwrap()
}

fn tally(bad: usize, total: usize, what: &str) -> Verdict {
    if bad == 0 {
        Ok(format!("{total} {what}, 0 disagreements"))
    } else {
        Err(format!("{bad} of {total} {what} disagree"))
    }
}

fn completions(p: &CreasePattern1D) -> impl Iterator<Item = CreasePattern1D> + '_ {
    let free: Vec<usize> = (0..p.num_creases()).filter(|&i| !p.creases()[i].mv.is_assigned()).collect();
    (0u32..1 << free.len()).map(move |mask| {
        let mut mvs: Vec<Assignment> = p.creases().iter().map(|c| c.mv).collect();
        for (b, &i) in free.iter().enumerate() {
            mvs[i] = if mask >> b & 1 == 1 { Valley } else { Mountain };
        }
        p.with_assignments(&mvs)
    })
}

fn criterion_1() -> Verdict {
    let pats = envelope(8, 5, &ASSIGNED, 0);
    let bad = pats
        .par_iter()
        .filter(|p| {
            let d = Some(decide_assigned(p).unwrap().is_foldable());
            let one = search_1d(p, FoldModel::OneLayer, budget()).unwrap().is_foldable();
            let some = search_1d(p, FoldModel::SomeLayers, budget()).unwrap().is_foldable();
            d != one || d != some
        })
        .count();
    tally(bad, pats.len(), "assigned patterns")
}

fn criterion_2() -> Verdict {
    let pats = envelope(8, 5, &MIXED, 3);
    let bad = pats
        .par_iter()
        .filter(|p| {
            let brute = completions(p).any(|c| decide_assigned(&c).unwrap().is_foldable());
            match find_valid_assignment(p) {
                None => brute,
                Some(a) => !brute || !decide_assigned(&a.apply(p)).unwrap().is_foldable(),
            }
        })
        .count();
    tally(bad, pats.len(), "mixed patterns")
}

fn criterion_3() -> Verdict {
    let pats = envelope(8, 5, &MIXED, 3);
    let bad = pats
        .par_iter()
        .filter(|p| {
            let o = search_1d(p, FoldModel::AllLayers, budget()).unwrap().is_foldable();
            o != Some(decide_all_layers_mixed(p).is_foldable())
        })
        .count();
    tally(bad, pats.len(), "mixed patterns")?;
    let witnesses = [
        (p1(8, &[(3, Mountain), (5, Mountain)]), [false, false, false]),
        (p1(6, &[(2, Valley), (3, Mountain)]), [true, true, false]),
        (p1(4, &[(1, Mountain), (2, Mountain), (3, Mountain)]), [true, true, true]),
    ];
    for (p, want) in &witnesses {
        let models = [FoldModel::OneLayer, FoldModel::SomeLayers, FoldModel::AllLayers];
        for (m, &w) in models.iter().zip(want) {
            let oracle = search_1d(p, *m, budget()).unwrap().is_foldable();
            let decider = match m {
                FoldModel::AllLayers => decide_all_layers_mixed(p).is_foldable(),
                _ => decide_assigned(p).unwrap().is_foldable(),
            };
            if oracle != Some(w) || decider != w {
                return Err(format!("witness {:?} under {m:?}: oracle {oracle:?}, decider {decider}", p.creases()));
            }
        }
    }
    Ok(format!("{} mixed patterns and 3 witnesses, 0 disagreements", pats.len()))
}

fn criterion_4() -> Verdict {
    let assigned = envelope(8, 5, &ASSIGNED, 0);
    let mut pairs = 0usize;
    for p in &assigned {
        let sus = p.suspicious_intervals();
        for (i, a) in sus.iter().enumerate() {
            for b in &sus[i + 1..] {
                if let Some(c) = a.intersection(b) {
                    pairs += 1;
                    if !c.is_suspicious(p) {
                        return Err(format!("{:?}: {} and {} meet outside", p.creases(), a.display(p), b.display(p)));
                    }
                }
            }
        }
    }
    let mut prefixes = 0usize;
    for p in &assigned {
        let FoldabilityVerdict1D::Foldable { sequence } = synthesize_sequence(p).unwrap() else {
            continue;
        };
        for state in replay(p, &sequence).unwrap() {
            prefixes += 1;
            if state.suspicious_intervals().iter().any(|&iv| !state.is_innocent(iv).unwrap()) {
                return Err(format!("{:?}: a prefix leaves a guilty interval", p.creases()));
            }
        }
    }
    let mut folds = 0usize;
    for p in envelope(8, 5, &MIXED, 3) {
        let plausible: HashSet<usize> = plausible_creases(&p).into_iter().map(|c| c.crease).collect();
        for c in 0..p.num_creases() {
            if is_valid_all_layers_fold(&p, c).valid {
                folds += 1;
                if !plausible.contains(&c) {
                    return Err(format!("{:?}: crease {c} valid but not plausible", p.creases()));
                }
            }
        }
    }
    Ok(format!("{pairs} intersecting pairs, {prefixes} prefixes, {folds} valid folds"))
}

fn random_1d(rng: &mut ChaCha8Rng, labels: &[Assignment]) -> CreasePattern1D {
    let den = rng.gen_range(1..=3i64);
    let ticks = rng.gen_range(2..=7 * den);
    let k = rng.gen_range(0..=4.min(ticks as usize - 1));
    let mut pos: Vec<i64> =
        rand::seq::index::sample(rng, ticks as usize - 1, k).into_iter().map(|t| t as i64 + 1).collect();
    pos.sort();
    let creases = pos
        .into_iter()
        .map(|t| Crease { pos: Rational::new(t, den), mv: labels[rng.gen_range(0..labels.len())] })
        .collect();
    CreasePattern1D::new(Rational::new(ticks, den), creases).unwrap()
}

fn seg(axis: Axis, coord: i64, from: i64, to: i64, mv: Assignment) -> RectCrease {
    RectCrease { axis, coord: coord.into(), from: from.into(), to: to.into(), mv }
}

/// Lines on a small grid, each split at most once and sometimes cut short.
fn random_grid(rng: &mut ChaCha8Rng, w: i64, h: i64) -> RectPattern {
    let mut creases = Vec::new();
    for (axis, span, extent) in [(Axis::V, w, h), (Axis::H, h, w)] {
        for c in 1..span {
            if rng.gen_bool(0.5) {
                continue;
            }
            let pick = |rng: &mut ChaCha8Rng| [Mountain, Valley, Unassigned][rng.gen_range(0..3)];
            let cut = rng.gen_range(1..=extent);
            creases.push(seg(axis, c, 0, cut, pick(rng)));
            if cut < extent && rng.gen_bool(0.8) {
                creases.push(seg(axis, c, cut, extent, pick(rng)));
            }
        }
    }
    RectPattern::new(w.into(), h.into(), creases).unwrap()
}

/// Every transition reachable from the flat sheet that turns to the other
/// axis must carry every crossing layer.
fn turns_carry_full_stack(p: &RectPattern, cap: usize) -> Result<usize, String> {
    let search = FoldSearch::for_rect(p, FoldModel::SomeLayers).unwrap();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([(search.initial_state(), None::<Axis>)]);
    let mut checked = 0;
    while let Some((state, last)) = queue.pop_front() {
        if seen.len() >= cap {
            break;
        }
        if !seen.insert((state.clone(), last)) {
            continue;
        }
        for (mv, next) in search.successors(&state) {
            if last.is_some_and(|a| a != mv.axis) {
                checked += 1;
                if mv.moved_crossing != mv.crossing_total {
                    return Err(format!("{mv:?} turns with a partial stack"));
                }
            }
            queue.push_back((next, Some(mv.axis)));
        }
    }
    Ok(checked)
}

fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut embedded = 0;
    for _ in 0..240 {
        let p = random_1d(&mut rng, &MIXED);
        let axis = if rng.gen_bool(0.5) { Axis::V } else { Axis::H };
        let r = RectPattern::embed_1d_along(&p, Rational::from_int(rng.gen_range(1..=3)), axis).unwrap();
        let line = decide_mixed(&p, LayerModel::OneLayer).unwrap().is_foldable();
        let rect = decide_rect_one_layer(&r).unwrap().is_foldable();
        let oracle = search_rect(&r, FoldModel::OneLayer, budget()).unwrap().is_foldable();
        if rect != line || oracle != Some(line) {
            return Err(format!("{:?} along {axis:?}: 1D {line}, rect {rect}, oracle {oracle:?}", p.creases()));
        }
        embedded += 1;
    }
    let mut grids = 0;
    for _ in 0..120 {
        let (w, h) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let r = random_grid(&mut rng, w, h);
        let rect = decide_rect_one_layer(&r).unwrap().is_foldable();
        let oracle = search_rect(&r, FoldModel::OneLayer, budget()).unwrap().is_foldable();
        if oracle != Some(rect) {
            return Err(format!("grid {:?}: decider {rect}, oracle {oracle:?}", rect_to_json(&r)));
        }
        grids += 1;
    }
    let cross = RectPattern::new(2.into(), 2.into(), vec![seg(Axis::V, 1, 0, 2, Valley), seg(Axis::H, 1, 0, 2, Valley)])
        .unwrap();
    let mixed = RectPattern::new(
        2.into(),
        2.into(),
        vec![seg(Axis::V, 1, 0, 2, Valley), seg(Axis::H, 1, 0, 1, Mountain), seg(Axis::H, 1, 1, 2, Valley)],
    )
    .unwrap();
    let c = search_rect(&cross, FoldModel::SomeLayers, budget()).unwrap().is_foldable();
    let m = search_rect(&mixed, FoldModel::SomeLayers, budget()).unwrap().is_foldable();
    if c != Some(false) || m != Some(true) {
        return Err(format!("2x2 valley cross {c:?}, mixed-sign {m:?}"));
    }
    let mut turns = 0;
    for _ in 0..150 {
        let (w, h) = (rng.gen_range(2..=4), rng.gen_range(2..=3));
        let r = random_grid(&mut rng, w, h);
        turns += turns_carry_full_stack(&r, 4_000)?;
    }
    Ok(format!("{embedded} embeddings, {grids} grids, 2x2 cases, {turns} axis turns carry the full stack"))
}

fn partition_counts(p: &PolyPattern, inst: &ThreePartitionInstance) -> Result<(), String> {
    let m = inst.m();
    let wrapper = p.parts.get("wrapper").or_else(|| p.parts.get("cactus")).ok_or("no wrapper")?;
    let cage = p.parts.get("cage").ok_or("no cage")?;
    if wrapper.creases != 2 * m {
        return Err(format!("{} wrapper creases for m = {m}", wrapper.creases));
    }
    if cage.steps != Some(2 * m) || cage.step_height != Some(Rational::from_int(2 * inst.t())) {
        return Err(format!("cage steps {:?} of height {:?} for t = {}", cage.steps, cage.step_height, inst.t()));
    }
    Ok(())
}

fn negative_controls(p: &PolyPattern) -> Vec<(&'static str, PolyPattern)> {
    let mut out = Vec::new();
    let mut q = p.clone();
    q.vertices.reverse();
    out.push(("clockwise", q));
    let mut q = p.clone();
    q.vertices.remove(1);
    out.push(("dropped vertex", q));
    let mut q = p.clone();
    q.vertices.truncate(3);
    out.push(("triangle", q));
    let mut q = p.clone();
    q.creases[0].coord = &q.creases[0].coord + &Rational::from_int(1000);
    out.push(("crease outside", q));
    let mut q = p.clone();
    q.parts.remove("cage");
    out.push(("missing cage", q));
    let mut q = p.clone();
    let extra = q.creases[0].clone();
    q.creases.push(extra);
    out.push(("extra crease", q));
    out
}

fn criterion_6() -> Verdict {
    let mut generated = 0;
    for numbers in [vec![1, 1, 1], vec![1, 2, 3], vec![1, 2, 3, 1, 2, 3], vec![1, 2, 3, 1, 2, 3, 1, 2, 3]] {
        let inst = ThreePartitionInstance::new(numbers.clone()).unwrap();
        for gen in [gen_3partition_assigned, gen_3partition_unassigned] {
            let p = gen(&inst);
            if poly_to_json(&p) != poly_to_json(&gen(&inst)) {
                return Err(format!("{numbers:?}: generator is not deterministic"));
            }
            let rep = validate_polypattern(&p);
            if !rep.is_ok() {
                return Err(format!("{numbers:?}: {:?}", rep.failures));
            }
            partition_counts(&p, &inst).map_err(|e| format!("{numbers:?}: {e}"))?;
            for (name, q) in negative_controls(&p) {
                if validate_polypattern(&q).is_ok() {
                    return Err(format!("{numbers:?}: negative control {name:?} validates"));
                }
            }
            generated += 1;
        }
    }
    let smallest = ThreeSatFormula::new(1, vec![[1, 1, 1]]).unwrap();
    let pattern = gen_3sat_rect(&smallest);
    if rect_to_json(&pattern) != rect_to_json(&gen_3sat_rect(&smallest)) {
        return Err("3SAT generator is not deterministic".into());
    }
    let rep = search_rect(&pattern, FoldModel::SomeLayers, budget()).unwrap();
    let sat = match rep.is_foldable() {
        None => format!("3SAT check inconclusive after {} nodes", rep.nodes_expanded),
        Some(f) if f == smallest.is_satisfiable() => format!("3SAT smallest config agrees ({} nodes)", rep.nodes_expanded),
        Some(f) => return Err(format!("3SAT smallest config: foldable {f}, satisfiable {}", smallest.is_satisfiable())),
    };
    Ok(format!("{generated} polygons valid with counts and 6 negative controls each; {sat}"))
}

/// Not a criterion: the unsatisfiable companion of the smallest formula.
fn three_sat_control() -> String {
    let f = ThreeSatFormula::new(1, vec![[1, 1, 1], [-1, -1, -1]]).unwrap();
    let rep = search_rect(&gen_3sat_rect(&f), FoldModel::SomeLayers, SearchBudget { max_nodes: 20_000 }).unwrap();
    let verdict = match rep.is_foldable() {
        None => "inconclusive".to_string(),
        Some(true) => "foldable (disagrees)".to_string(),
        Some(false) => "unfoldable (agrees)".to_string(),
    };
    format!("unsatisfiable 3SAT control: {verdict} after {} nodes", rep.nodes_expanded)
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("simplefold-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn criterion_7() -> Verdict {
    let dir = scratch_dir();
    let write = |name: &str, body: &str| {
        let path = dir.join(name);
        std::fs::write(&path, body).unwrap();
        path.display().to_string()
    };
    let mv35 = write("mv35.json", r#"{"type":"1d","length":"8","creases":[{"pos":"3","mv":"M"},{"pos":"5","mv":"V"}]}"#);
    let v2m3 = write("v2m3.json", r#"{"type":"1d","length":"6","creases":[{"pos":"2","mv":"V"},{"pos":"3","mv":"M"}]}"#);
    let bad = write("bad.json", r#"{"type":"1d","length":"#);
    let square = write(
        "square.json",
        r#"{"type":"rect","width":"2","height":"2","creases":[
            {"axis":"v","coord":"1","from":"0","to":"2","mv":"V"},
            {"axis":"h","coord":"1","from":"0","to":"2","mv":"V"}]}"#,
    );
    let gadget = dir.join("g.json").display().to_string();
    let repro = dir.join("repro.json").display().to_string();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["decide", "--model", "some", "--input", &mv35], 0),
        (vec!["decide", "--model", "all", "--input", &v2m3], 1),
        (vec!["decide", "--model", "all", "--input", &bad], 2),
        (vec!["decide", "--model", "sideways", "--input", &mv35], 2),
        (vec!["decide", "--input", &mv35], 2),
        (vec!["assign", "--input", &mv35], 0),
        (vec!["sequence", "--model", "one", "--input", &mv35], 0),
        (vec!["oracle", "--model", "some", "--input", &square], 1),
        (vec!["oracle", "--model", "some", "--budget", "1", "--input", &square], 3),
        (vec!["fuzz", "--models", "one,some", "--creases", "4", "--limit", "exhaustive", "--repro", &repro], 0),
        (vec!["gadget", "3sat", "--out", &gadget], 0),
    ];
    let bin = env!("CARGO_BIN_EXE_simplefold");
    for (args, want) in &cases {
        let out = Command::new(bin).args(args).output().map_err(|e| e.to_string())?;
        let got = out.status.code().unwrap_or(-1);
        if got != *want {
            return Err(format!("{args:?} exited {got}, expected {want}"));
        }
        if *want != 2 && serde_json::from_slice::<serde_json::Value>(&out.stdout).is_err() {
            return Err(format!("{args:?} did not print one JSON document"));
        }
    }
    if !dir.join("g.fold").exists() {
        return Err("gadget wrote no FOLD export".into());
    }
    std::fs::remove_dir_all(&dir).ok();
    Ok(format!("{} golden invocations", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 7] = [
        ("1 assigned 1D equivalence", criterion_1),
        ("2 mixed assignment vs brute force", criterion_2),
        ("3 all-layers greedy vs oracle", criterion_3),
        ("4 interval and plausibility properties", criterion_4),
        ("5 rectangular suite", criterion_5),
        ("6 gadget suite", criterion_6),
        ("7 CLI exit codes", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {name}: {detail} [{:.1}s]", t.elapsed().as_secs_f64());
    }
    println!("INFO {}", three_sat_control());
    if failed > 0 {
        std::process::exit(1);
    }
}
