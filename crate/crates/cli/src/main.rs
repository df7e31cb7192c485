use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use simplefold::all_layers::decide_all_layers_mixed;
use simplefold::characterize::{decide_assigned, replay, synthesize_sequence, FoldabilityVerdict1D};
use simplefold::fold_export::{poly_to_fold, rect_to_fold};
use simplefold::formats::{parse_document, pattern_1d_to_json, poly_to_json, rect_to_json, Document};
use simplefold::gadgets::{
    gen_3partition_assigned, gen_3partition_unassigned, gen_3sat_rect, three_sat_layout, validate_polypattern,
    ThreePartitionInstance, ThreeSatFormula,
};
use simplefold::mixed_assign::{decide_mixed, find_valid_assignment, LayerModel};
use simplefold::oracle::{search_1d, search_rect, FoldModel, SearchBudget};
use simplefold::rect::decide_rect_one_layer;
use simplefold::CreasePattern1D;

mod fuzz;

const FOLDABLE: u8 = 0;
const UNFOLDABLE: u8 = 1;
const USAGE: u8 = 2;
const INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "simplefold", version, about = "Simple-fold flat-foldability of orthogonal crease patterns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide foldability with the polynomial deciders.
    Decide(PatternArgs),
    /// Complete the unassigned creases of a 1D pattern.
    Assign(InputArgs),
    /// Emit a fold sequence with every intermediate pattern.
    Sequence(PatternArgs),
    /// Exhaustive fold search.
    Oracle(OracleArgs),
    /// Compare deciders with the oracle on many small patterns.
    Fuzz(FuzzArgs),
    /// Generate a reduction gadget.
    Gadget(GadgetArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    One,
    Some,
    All,
}

impl Model {
    fn fold_model(self) -> FoldModel {
        match self {
            Model::One => FoldModel::OneLayer,
            Model::Some => FoldModel::SomeLayers,
            Model::All => FoldModel::AllLayers,
        }
    }

    fn layer_model(self) -> LayerModel {
        match self {
            Model::One => LayerModel::OneLayer,
            _ => LayerModel::SomeLayers,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Pattern JSON; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct PatternArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[command(flatten)]
    io: InputArgs,
    /// Node budget when a rectangle falls back to the oracle.
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    budget: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    model: Model,
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, default_value_t = SearchBudget::default().max_nodes)]
    budget: usize,
}

#[derive(Args)]
struct FuzzArgs {
    /// Comma-separated subset of one,some,all.
    #[arg(long, value_delimiter = ',', default_value = "one,some,all")]
    models: Vec<Model>,
    /// Maximum number of creases per enumerated pattern.
    #[arg(long, default_value_t = 5)]
    creases: usize,
    /// Maximum paper length of enumerated patterns.
    #[arg(long, default_value_t = 8)]
    length: i64,
    /// Maximum number of unassigned creases per pattern.
    #[arg(long, default_value_t = 2)]
    unassigned: usize,
    /// `exhaustive`, or a cap on the number of enumerated patterns.
    #[arg(long, default_value = "exhaustive")]
    limit: String,
    /// Extra random patterns with rational creases.
    #[arg(long, default_value_t = 200)]
    random: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20_000)]
    budget: usize,
    /// Where a minimized disagreement is written.
    #[arg(long, default_value = "fuzz-repro.json")]
    repro: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetKind {
    #[value(name = "3sat")]
    ThreeSat,
    #[value(name = "3p-assigned")]
    PartitionAssigned,
    #[value(name = "3p-cactus")]
    PartitionCactus,
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(value_enum)]
    kind: GadgetKind,
    /// Pattern JSON path; the FOLD export goes next to it with a `.fold` extension.
    #[arg(long)]
    out: PathBuf,
    /// 3SAT clauses as `1,2,-3;-1,2,3`.
    #[arg(long, default_value = "1,1,1")]
    clauses: String,
    /// Number of variables; defaults to the largest one mentioned.
    #[arg(long)]
    vars: Option<usize>,
    /// 3-Partition numbers as `1,1,1`.
    #[arg(long, default_value = "1,1,1")]
    numbers: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// A failure that ends the run with a usage/parse code.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Outcome = Result<(Value, u8), UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Decide(a) => decide(&a),
        Command::Assign(a) => assign(&a),
        Command::Sequence(a) => sequence(&a),
        Command::Oracle(a) => oracle(&a),
        Command::Fuzz(a) => fuzz::run(&a),
        Command::Gadget(a) => gadget(&a),
    };
    match result {
        Ok((report, code)) => {
            println!("{report}");
            ExitCode::from(code)
        }
        Err(UsageError(msg)) => {
            println!("{}", json!({ "error": msg }));
            ExitCode::from(USAGE)
        }
    }
}

fn read_input(io: &InputArgs) -> Result<Document, UsageError> {
    let text = match &io.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    Ok(parse_document(&text)?)
}

fn verdict_code(foldable: Option<bool>) -> u8 {
    match foldable {
        Some(true) => FOLDABLE,
        Some(false) => UNFOLDABLE,
        None => INCONCLUSIVE,
    }
}

fn decide_1d(p: &CreasePattern1D, model: Model) -> Outcome {
    let (report, foldable) = match model {
        Model::All => {
            let v = decide_all_layers_mixed(p);
            (v.to_json(), v.is_foldable())
        }
        _ if p.is_assigned() => {
            let v = decide_assigned(p)?;
            (v.to_json(), v.is_foldable())
        }
        _ => {
            let v = decide_mixed(p, model.layer_model())?;
            (v.to_json(p), v.is_foldable())
        }
    };
    Ok((report, verdict_code(Some(foldable))))
}

fn decide(a: &PatternArgs) -> Outcome {
    match read_input(&a.io)? {
        Document::OneD(p) => decide_1d(&p, a.model),
        Document::Rect(r) => match a.model {
            Model::One => {
                let v = decide_rect_one_layer(&r)?;
                Ok((v.to_json(), verdict_code(Some(v.is_foldable()))))
            }
            // No polynomial decider here; the oracle answers.
            m => {
                let rep = search_rect(&r, m.fold_model(), SearchBudget { max_nodes: a.budget })?;
                Ok((rep.to_json(), verdict_code(rep.is_foldable())))
            }
        },
        Document::Poly(_) => Err(UsageError("polygonal paper has no decider".into())),
    }
}

fn assign(a: &InputArgs) -> Outcome {
    let Document::OneD(p) = read_input(a)? else {
        return Err(UsageError("assign takes a 1d pattern".into()));
    };
    Ok(match find_valid_assignment(&p) {
        Some(asg) => (asg.to_json(&p), FOLDABLE),
        None => (json!({ "assignment": null }), UNFOLDABLE),
    })
}

fn sequence(a: &PatternArgs) -> Outcome {
    let p = match read_input(&a.io)? {
        Document::OneD(p) => p,
        _ => return Err(UsageError("sequence takes a 1d pattern".into())),
    };
    if matches!(a.model, Model::All) {
        return decide_1d(&p, Model::All);
    }
    let completed = if p.is_assigned() {
        p.clone()
    } else {
        match find_valid_assignment(&p) {
            Some(asg) => asg.apply(&p),
            None => return Ok((json!({ "foldable": false }), UNFOLDABLE)),
        }
    };
    match synthesize_sequence(&completed)? {
        FoldabilityVerdict1D::Foldable { sequence } => {
            let states = replay(&completed, &sequence)?;
            let steps: Vec<Value> = sequence
                .iter()
                .zip(states.iter().skip(1))
                .map(|(op, after)| json!({ "op": op.to_json(), "after": pattern_1d_to_json(after) }))
                .collect();
            Ok((json!({ "foldable": true, "start": pattern_1d_to_json(&completed), "steps": steps }), FOLDABLE))
        }
        v => Ok((v.to_json(), UNFOLDABLE)),
    }
}

fn oracle(a: &OracleArgs) -> Outcome {
    let budget = SearchBudget { max_nodes: a.budget };
    let rep = match read_input(&a.io)? {
        Document::OneD(p) => search_1d(&p, a.model.fold_model(), budget)?,
        Document::Rect(r) => search_rect(&r, a.model.fold_model(), budget)?,
        Document::Poly(_) => return Err(UsageError("the oracle folds rectangles only".into())),
    };
    Ok((rep.to_json(), verdict_code(rep.is_foldable())))
}

fn parse_ints<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, UsageError>
where
    T::Err: std::fmt::Display,
{
    s.split(',').map(|t| t.trim().parse::<T>().map_err(|e| UsageError(format!("{t:?}: {e}")))).collect()
}

fn write_pair(out: &Path, pattern: &Value, fold: &Value) -> Result<PathBuf, UsageError> {
    let fold_path = out.with_extension("fold");
    std::fs::write(out, serde_json::to_string_pretty(pattern)?)?;
    std::fs::write(&fold_path, serde_json::to_string_pretty(fold)?)?;
    Ok(fold_path)
}

fn gadget(a: &GadgetArgs) -> Outcome {
    let mut report = match a.kind {
        GadgetKind::ThreeSat => {
            let clauses = a
                .clauses
                .split(';')
                .map(|c| {
                    let lits: Vec<i32> = parse_ints(c)?;
                    <[i32; 3]>::try_from(lits).map_err(|_| UsageError(format!("clause {c:?} needs 3 literals")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let vars = a.vars.unwrap_or_else(|| {
                clauses.iter().flatten().map(|l| l.unsigned_abs() as usize).max().unwrap_or(1)
            });
            let formula = ThreeSatFormula::new(vars, clauses)?;
            let pattern = gen_3sat_rect(&formula);
            let fold = write_pair(&a.out, &rect_to_json(&pattern), &rect_to_fold(&pattern))?;
            json!({
                "layout": three_sat_layout(&formula),
                "satisfiable": formula.is_satisfiable(),
                "fold": fold.display().to_string(),
            })
        }
        GadgetKind::PartitionAssigned | GadgetKind::PartitionCactus => {
            let inst = ThreePartitionInstance::new(parse_ints(&a.numbers)?)?;
            let poly = match a.kind {
                GadgetKind::PartitionAssigned => gen_3partition_assigned(&inst),
                _ => gen_3partition_unassigned(&inst),
            };
            let validation = validate_polypattern(&poly);
            let fold = write_pair(&a.out, &poly_to_json(&poly), &poly_to_fold(&poly))?;
            json!({
                "t": inst.t(),
                "vertices": poly.vertices.len(),
                "creases": poly.creases.len(),
                "valid": validation.is_ok(),
                "failures": validation.failures.iter().map(|f| format!("{f:?}")).collect::<Vec<_>>(),
                "fold": fold.display().to_string(),
            })
        }
    };
    report["out"] = json!(a.out.display().to_string());
    Ok((report, FOLDABLE))
}
