//! Decider/oracle equivalence over enumerated and random 1D patterns.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use simplefold::all_layers::decide_all_layers_mixed;
use simplefold::characterize::decide_assigned;
use simplefold::envelope::{envelope, MIXED};
use simplefold::formats::pattern_1d_to_json;
use simplefold::mixed_assign::decide_mixed;
use simplefold::oracle::{search_1d, search_1d_any_assignment, SearchBudget};
use simplefold::{Assignment, Crease, CreasePattern1D, Rational};

use crate::{FuzzArgs, Model, Outcome, UsageError, FOLDABLE, UNFOLDABLE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    Agree,
    Disagree { decider: bool, oracle: bool },
    Inconclusive,
}

fn check(p: &CreasePattern1D, model: Model, budget: SearchBudget) -> Check {
    let decider = match model {
        Model::All => decide_all_layers_mixed(p).is_foldable(),
        _ if p.is_assigned() => decide_assigned(p).expect("assigned").is_foldable(),
        _ => match decide_mixed(p, model.layer_model()) {
            Ok(v) => v.is_foldable(),
            Err(_) => return Check::Disagree { decider: true, oracle: false },
        },
    };
    let oracle = match model {
        Model::All => search_1d(p, model.fold_model(), budget).expect("valid pattern").is_foldable(),
        _ => search_1d_any_assignment(p, model.fold_model(), budget).expect("valid pattern"),
    };
    match oracle {
        None => Check::Inconclusive,
        Some(o) if o == decider => Check::Agree,
        Some(o) => Check::Disagree { decider, oracle: o },
    }
}

/// Drop creases one at a time while the disagreement survives.
fn minimize(p: &CreasePattern1D, model: Model, budget: SearchBudget) -> CreasePattern1D {
    let mut cur = p.clone();
    'outer: loop {
        for i in 0..cur.num_creases() {
            let mut cs = cur.creases().to_vec();
            cs.remove(i);
            let smaller = CreasePattern1D::new(cur.length().clone(), cs).expect("subset of valid creases");
            if matches!(check(&smaller, model, budget), Check::Disagree { .. }) {
                cur = smaller;
                continue 'outer;
            }
        }
        return cur;
    }
}

fn random_pattern(rng: &mut ChaCha8Rng, max_creases: usize, unassigned: usize) -> CreasePattern1D {
    let den = rng.gen_range(1..=4i64);
    let ticks = rng.gen_range(2..=8 * den);
    let k = rng.gen_range(0..=max_creases.min(ticks as usize - 1));
    let mut pos: Vec<i64> = rand::seq::index::sample(rng, ticks as usize - 1, k).into_iter().map(|t| t as i64 + 1).collect();
    pos.sort();
    let mut free = unassigned;
    let creases = pos
        .into_iter()
        .map(|t| {
            let mv = match rng.gen_range(0..3) {
                2 if free > 0 => {
                    free -= 1;
                    Assignment::Unassigned
                }
                0 => Assignment::Mountain,
                _ => Assignment::Valley,
            };
            Crease { pos: Rational::new(t, den), mv }
        })
        .collect();
    CreasePattern1D::new(Rational::new(ticks, den), creases).expect("distinct interior creases")
}

pub(crate) fn run(a: &FuzzArgs) -> Outcome {
    let mut patterns = envelope(a.length, a.creases, &MIXED, a.unassigned);
    if a.limit != "exhaustive" {
        let cap: usize = a.limit.parse().map_err(|_| UsageError(format!("bad --limit {:?}", a.limit)))?;
        patterns.truncate(cap);
    }
    let enumerated = patterns.len();
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    patterns.extend((0..a.random).map(|_| random_pattern(&mut rng, a.creases, a.unassigned)));
    let budget = SearchBudget { max_nodes: a.budget };

    let jobs: Vec<(usize, Model)> = (0..patterns.len()).flat_map(|i| a.models.iter().map(move |&m| (i, m))).collect();
    let results: Vec<(usize, Model, Check)> =
        jobs.par_iter().map(|&(i, m)| (i, m, check(&patterns[i], m, budget))).collect();

    let inconclusive = results.iter().filter(|r| r.2 == Check::Inconclusive).count();
    let disagreements: Vec<&(usize, Model, Check)> =
        results.iter().filter(|r| matches!(r.2, Check::Disagree { .. })).collect();
    let mut report = json!({
        "models": a.models.iter().map(|m| model_name(*m)).collect::<Vec<_>>(),
        "enumerated": enumerated,
        "random": a.random,
        "checks": results.len(),
        "disagreements": disagreements.len(),
        "inconclusive": inconclusive,
    });
    let Some(&&(i, model, Check::Disagree { decider, oracle })) = disagreements.first() else {
        return Ok((report, FOLDABLE));
    };
    let small = minimize(&patterns[i], model, budget);
    let repro = json!({
        "model": model_name(model),
        "decider": decider,
        "oracle": oracle,
        "original": pattern_1d_to_json(&patterns[i]),
        "pattern": pattern_1d_to_json(&small),
    });
    std::fs::write(&a.repro, serde_json::to_string_pretty(&repro)?)?;
    report["reproducer"] = Value::String(a.repro.display().to_string());
    Ok((report, UNFOLDABLE))
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::One => "one",
        Model::Some => "some",
        Model::All => "all",
    }
}
