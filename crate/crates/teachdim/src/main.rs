//! Thin command-line front end. All computation lives in the library; every
//! subcommand prints a JSON report to stdout and diagnostics to stderr.
//! Exit codes: 0 success, 1 validation error, 2 capacity error, 3 repro
//! mismatch.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use teachdim::class::VersionSpace;
use teachdim::corpus;
use teachdim::dims::{self, NctdCaps};
use teachdim::error::Error;
use teachdim::prefs::{self, CollusionCaps};
use teachdim::teach::{self, Cost, CostOptions, TieMode};
use teachdim::{construct, repro, ClassRef, LabeledExample};

#[derive(Parser)]
#[command(
    name = "teachdim",
    about = "Exact teaching-complexity computations over finite boolean hypothesis classes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to a file instead of stdout.
    #[arg(long, global = true)]
    json: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct ClassArg {
    /// Builtin class name (warmuth, gap6, powerset-<k>) or a .json/.csv path.
    #[arg(long)]
    class: String,
}

#[derive(Args)]
struct SigmaArg {
    /// Builtin sigma name (e.g. warmuth-lvs) or a sigma JSON path.
    #[arg(long)]
    sigma: String,
}

#[derive(Subcommand)]
enum Command {
    /// VC/teaching/recursive/non-clashing dimensions with witnesses.
    Dims {
        #[command(flatten)]
        class: ClassArg,
        /// Cap on the class size for the exact non-clashing search.
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Worst-case teaching cost of a preference function over all targets.
    Tdsigma {
        #[command(flatten)]
        class: ClassArg,
        #[command(flatten)]
        sigma: SigmaArg,
        /// Start hypothesis (name or index).
        #[arg(long)]
        h0: String,
    },
    /// Steering cost toward one target, with an optimal plan.
    Dsigma {
        #[command(flatten)]
        class: ClassArg,
        #[command(flatten)]
        sigma: SigmaArg,
        #[arg(long)]
        h0: String,
        #[arg(long)]
        target: String,
    },
    /// Replay the learner over a fixed example stream.
    Simulate {
        #[command(flatten)]
        class: ClassArg,
        #[command(flatten)]
        sigma: SigmaArg,
        #[arg(long)]
        h0: String,
        /// Examples as JSON, e.g. '[["x4",1],["x5",1]]'.
        #[arg(long)]
        steps: String,
        /// Tie resolution: lex, or adversarial (requires --target).
        #[arg(long, default_value = "lex")]
        tie: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Check the sequential collusion-freeness of a preference function.
    CheckCollusion {
        #[command(flatten)]
        class: ClassArg,
        #[command(flatten)]
        sigma: SigmaArg,
        /// Cap on enumerated version spaces.
        #[arg(long, default_value_t = 1_000_000)]
        cap: usize,
    },
    /// Recursive construction of a low-cost local-and-version-space sigma.
    BuildLvs {
        #[command(flatten)]
        class: ClassArg,
        #[arg(long)]
        h0: String,
        /// Dump the recursion tree (blocks, pivots, refined spaces).
        #[arg(long)]
        trace: bool,
    },
    /// Local-preference tree over the size-k powerset class.
    BuildLocalPowerset {
        #[arg(long)]
        k: usize,
        /// Start row index.
        #[arg(long, default_value_t = 0)]
        h0: usize,
    },
    /// Partition a class along a compact distinguishable set.
    Partition {
        #[command(flatten)]
        class: ClassArg,
        /// Reference hypothesis (name or index).
        #[arg(long)]
        h0: String,
        /// Comma-separated instance names; derived when omitted.
        #[arg(long)]
        set: Option<String>,
    },
    /// Counting lower bound on the teaching dimension of the powerset class.
    Bound {
        #[arg(long)]
        d: u32,
    },
    /// List or dump bundled artifacts.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Recompute the bundled expected-values table and diff it.
    Repro,
}

#[derive(Subcommand)]
enum CorpusAction {
    List,
    Dump {
        #[arg(long)]
        name: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((value, code)) => {
            let text = serde_json::to_string_pretty(&value).expect("report serializes");
            match &cli.json {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    let _ = writeln!(stdout, "{text}");
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Capacity(_) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> teachdim::Result<(serde_json::Value, u8)> {
    match command {
        Command::Dims { class, cap } => {
            let class = corpus::class_by_name(&class.class)?;
            let report = dims::dimension_report(&class, NctdCaps { max_hypotheses: cap })?;
            Ok((report.to_json_value(&class), 0))
        }
        Command::Tdsigma { class, sigma, h0 } => {
            let class = corpus::class_by_name(&class.class)?;
            let sigma = corpus::sigma_by_name(&sigma.sigma)?;
            let h0 = resolve_hypothesis(&class, &h0)?;
            let cost = teach::td_sigma(&sigma, &class, h0, CostOptions::default())?;
            Ok((
                serde_json::json!({
                    "class": class_label(&class),
                    "h0": class.hypothesis_name(h0),
                    "td_sigma": cost_json(cost),
                }),
                0,
            ))
        }
        Command::Dsigma {
            class,
            sigma,
            h0,
            target,
        } => {
            let class = corpus::class_by_name(&class.class)?;
            let sigma = corpus::sigma_by_name(&sigma.sigma)?;
            let h0 = resolve_hypothesis(&class, &h0)?;
            let target = resolve_hypothesis(&class, &target)?;
            let full = VersionSpace::full(&class);
            let cost = teach::d_sigma(&sigma, &full, h0, target, CostOptions::default())?;
            let plan = match cost {
                Cost::Finite(_) => Some(
                    teach::extract_plan(&sigma, &class, h0, target, CostOptions::default())?
                        .to_json_value(&class),
                ),
                Cost::Unreachable => None,
            };
            Ok((
                serde_json::json!({
                    "h0": class.hypothesis_name(h0),
                    "target": class.hypothesis_name(target),
                    "cost": cost_json(cost),
                    "plan": plan,
                }),
                0,
            ))
        }
        Command::Simulate {
            class,
            sigma,
            h0,
            steps,
            tie,
            target,
        } => {
            let class = corpus::class_by_name(&class.class)?;
            let sigma = corpus::sigma_by_name(&sigma.sigma)?;
            let h0 = resolve_hypothesis(&class, &h0)?;
            let steps = parse_steps(&class, &steps)?;
            let mode = match tie.as_str() {
                "lex" => TieMode::LowestIndex,
                "adversarial" => {
                    let target = target.ok_or_else(|| {
                        Error::invalid("adversarial tie mode needs --target")
                    })?;
                    TieMode::AdversarialVsTarget(resolve_hypothesis(&class, &target)?)
                }
                other => return Err(Error::invalid(format!("unknown tie mode {other:?}"))),
            };
            let trace = teach::simulate(&sigma, &class, h0, &steps, mode)?;
            Ok((trace.to_json_value(&class), 0))
        }
        Command::CheckCollusion { class, sigma, cap } => {
            let class = corpus::class_by_name(&class.class)?;
            let sigma = corpus::sigma_by_name(&sigma.sigma)?;
            let report =
                prefs::collusion_free_check(&sigma, &class, CollusionCaps { max_states: cap })?;
            let counterexample = report.counterexample.as_ref().map(|cx| {
                serde_json::json!({
                    "version_space": names(&class, &cx.version_space),
                    "current": class.hypothesis_name(cx.current),
                    "preferred": class.hypothesis_name(cx.preferred),
                    "example": cx.example.map(|z| {
                        serde_json::json!([class.instance_name(z.instance), u8::from(z.label)])
                    }),
                    "resulting_preferred": names(&class, &cx.resulting_preferred),
                })
            });
            Ok((
                serde_json::json!({
                    "collusion_free": report.collusion_free,
                    "states_explored": report.states_explored,
                    "counterexample": counterexample,
                }),
                0,
            ))
        }
        Command::BuildLvs { class, h0, trace } => {
            let class = corpus::class_by_name(&class.class)?;
            let h0 = resolve_hypothesis(&class, &h0)?;
            let built = construct::build_sigma_lvs(&class, h0)?;
            let td = teach::td_sigma(&built.sigma, &class, h0, CostOptions::default())?;
            let mut value = serde_json::json!({
                "h0": class.hypothesis_name(h0),
                "root_compact": names_x(&class, &built.root_compact),
                "root_singleton": built.root_singleton,
                "td_sigma": cost_json(td),
                "sigma": serde_json::from_str::<serde_json::Value>(
                    &prefs::sigma_to_json(&built.sigma)
                ).expect("sigma json"),
                "plans": built.plans.iter().map(|p| p.to_json_value(&class)).collect::<Vec<_>>(),
            });
            if trace {
                value["recursion"] = serde_json::Value::Array(
                    built
                        .records
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "depth": r.depth,
                                "version_space": names(&class, &r.version_space),
                                "search_space": names(&class, &r.search_space),
                                "compact": names_x(&class, &r.compact),
                                "reference": class.hypothesis_name(r.reference),
                                "blocks": r.blocks.iter().map(|b| serde_json::json!({
                                    "members": names(&class, &b.members),
                                    "pivot": [class.instance_name(b.pivot), u8::from(b.label)],
                                    "version_space_next": names(&class, &b.version_space_next),
                                })).collect::<Vec<_>>(),
                            })
                        })
                        .collect(),
                );
            }
            Ok((value, 0))
        }
        Command::BuildLocalPowerset { k, h0 } => {
            let built = construct::build_sigma_local_powerset(k, h0)?;
            let td = teach::td_sigma(&built.sigma, &built.class, h0, CostOptions::default())?;
            Ok((
                serde_json::json!({
                    "k": k,
                    "h0": built.class.hypothesis_name(h0),
                    "depth": built.depth,
                    "td_sigma": cost_json(td),
                    "plans": built.plans.iter().map(|p| p.to_json_value(&built.class)).collect::<Vec<_>>(),
                }),
                0,
            ))
        }
        Command::Partition { class, h0, set } => {
            let class = corpus::class_by_name(&class.class)?;
            let h0 = resolve_hypothesis(&class, &h0)?;
            let full = VersionSpace::full(&class);
            let columns = match set {
                Some(spec) => spec
                    .split(',')
                    .map(|name| resolve_instance(&class, name.trim()))
                    .collect::<teachdim::Result<Vec<_>>>()?,
                None => {
                    let all: Vec<usize> = (0..class.num_instances()).collect();
                    dims::compact_distinguishable_set(&full, &all)?
                }
            };
            let partition = construct::partition_class(&full, &columns, h0)?;
            Ok((
                serde_json::json!({
                    "reference": class.hypothesis_name(h0),
                    "compact": names_x(&class, &partition.compact_set),
                    "blocks": partition.blocks.iter().map(|b| serde_json::json!({
                        "members": names(&class, &b.members),
                        "pivot": b.pivot.map(|z| {
                            serde_json::json!([class.instance_name(z.instance), u8::from(z.label)])
                        }),
                    })).collect::<Vec<_>>(),
                }),
                0,
            ))
        }
        Command::Bound { d } => {
            let k = dims::sigma_td_lower_bound(d)?;
            Ok((serde_json::json!({ "d": d, "k_min": k }), 0))
        }
        Command::Corpus { action } => match action {
            CorpusAction::List => {
                let mut items = Vec::new();
                for artifact in corpus::bundled_classes() {
                    items.push(serde_json::json!({"kind": "class", "name": artifact.name}));
                }
                items.push(serde_json::json!({"kind": "class", "name": "powerset-<k>"}));
                for artifact in corpus::bundled_sigmas() {
                    items.push(serde_json::json!({"kind": "sigma", "name": artifact.name}));
                }
                for artifact in corpus::bundled_teacher_maps() {
                    items.push(serde_json::json!({"kind": "teacher-map", "name": artifact.name}));
                }
                Ok((serde_json::Value::Array(items), 0))
            }
            CorpusAction::Dump { name } => {
                if let Ok(class) = corpus::class_by_name(&name) {
                    return Ok((
                        serde_json::from_str(&teachdim::class_to_json(&class))
                            .expect("class json"),
                        0,
                    ));
                }
                if let Ok(sigma) = corpus::sigma_by_name(&name) {
                    return Ok((
                        serde_json::from_str(&prefs::sigma_to_json(&sigma)).expect("sigma json"),
                        0,
                    ));
                }
                for artifact in corpus::bundled_teacher_maps() {
                    if artifact.name == name {
                        if let corpus::ArtifactPayload::TeacherMap(map) = artifact.payload {
                            return Ok((map.to_json_value(), 0));
                        }
                    }
                }
                Err(Error::invalid(format!("no bundled artifact named {name:?}")))
            }
        },
        Command::Repro => {
            let report = repro::run_repro()?;
            for row in &report.rows {
                eprintln!(
                    "{} {}: expected {} got {}",
                    if row.ok { "ok  " } else { "FAIL" },
                    row.name,
                    row.expected,
                    row.actual
                );
            }
            let code = if report.mismatches == 0 { 0 } else { 3 };
            Ok((serde_json::to_value(&report).expect("report json"), code))
        }
    }
}

fn class_label(class: &ClassRef) -> String {
    format!(
        "{}x{} class",
        class.num_hypotheses(),
        class.num_instances()
    )
}

fn cost_json(cost: Cost) -> serde_json::Value {
    match cost {
        Cost::Finite(c) => serde_json::json!(c),
        Cost::Unreachable => serde_json::json!("unreachable"),
    }
}

fn names(class: &ClassRef, hs: &[usize]) -> Vec<String> {
    hs.iter().map(|&h| class.hypothesis_name(h).to_string()).collect()
}

fn names_x(class: &ClassRef, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| class.instance_name(x).to_string()).collect()
}

fn resolve_hypothesis(class: &ClassRef, name: &str) -> teachdim::Result<usize> {
    if let Some(h) = class.hypothesis_by_name(name) {
        return Ok(h);
    }
    if let Ok(index) = name.parse::<usize>() {
        if index < class.num_hypotheses() {
            return Ok(index);
        }
    }
    Err(Error::invalid(format!("unknown hypothesis {name:?}")))
}

fn resolve_instance(class: &ClassRef, name: &str) -> teachdim::Result<usize> {
    if let Some(x) = class.instance_by_name(name) {
        return Ok(x);
    }
    if let Ok(index) = name.parse::<usize>() {
        if index < class.num_instances() {
            return Ok(index);
        }
    }
    Err(Error::invalid(format!("unknown instance {name:?}")))
}

fn parse_steps(class: &ClassRef, text: &str) -> teachdim::Result<Vec<LabeledExample>> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::format(format!("steps json: {e}")))?;
    let arr = value
        .as_array()
        .ok_or_else(|| Error::format("steps must be a JSON array of [instance, label] pairs"))?;
    let mut out = Vec::with_capacity(arr.len());
    for step in arr {
        let pair = step
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::format("each step must be [instance, label]"))?;
        let instance = match &pair[0] {
            serde_json::Value::String(s) => resolve_instance(class, s)?,
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|u| u as usize)
                .filter(|&x| x < class.num_instances())
                .ok_or_else(|| Error::format("bad instance index"))?,
            _ => return Err(Error::format("instance must be a name or index")),
        };
        let label = match &pair[1] {
            serde_json::Value::Number(n) if n.as_u64() == Some(0) => false,
            serde_json::Value::Number(n) if n.as_u64() == Some(1) => true,
            serde_json::Value::Bool(b) => *b,
            _ => return Err(Error::format("label must be 0 or 1")),
        };
        out.push(LabeledExample::new(instance, label));
    }
    Ok(out)
}
