//! `rclogic`: model checking, translation, satisfiability search and the
//! translation oracle from the command line.
//!
//! Exit codes: 0 and 1 report a verdict (true/false, found/exhausted,
//! in/out of fragment), 2 is any usage, parse or model-file error, 3 a sat
//! timeout and 4 a formula outside the fragment analysis.

use std::io::Read;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use rclogic::formula::{parse_hybrid, parse_rc, profile};
use rclogic::fragments::fragment_check;
use rclogic::hybrid_semantics::{hy_check, NominalAssignment};
use rclogic::kripke::{frame_classify, parse_model, FrameClass, LoadedModel, ModelFile};
use rclogic::rc_semantics::rc_check_traced;
use rclogic::satsearch::{oracle_compare, sat_bounded, OracleParams, SatOptions, SatOutcome};
use rclogic::translator::{simplify_for_display, translate, translate_eco_with, Mutation, TranslateOptions};
use rclogic::{Family, StateId};

#[derive(Parser)]
#[command(
    name = "rclogic",
    version,
    about = "Relation-changing modal logics and their hybrid translations"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a relation-changing formula at a state.
    Check {
        #[command(flatten)]
        at: ModelArgs,
        /// Also print the edge changed at each dynamic step.
        #[arg(long)]
        trace: bool,
        formula: String,
    },
    /// Evaluate a hybrid formula at a state; nominals come from the file.
    Hycheck {
        #[command(flatten)]
        at: ModelArgs,
        formula: String,
    },
    /// Translate a relation-changing formula into hybrid logic.
    Translate {
        #[arg(long, value_enum, default_value_t = FamilyArg::Auto)]
        family: FamilyArg,
        /// Use the economical diamond clause (local sabotage and swap only).
        #[arg(long)]
        eco: bool,
        /// Print the translation as built, without display simplification.
        #[arg(long)]
        raw: bool,
        /// Keep binders for diamonds under an empty edge list.
        #[arg(long)]
        no_optimize: bool,
        /// Limit on nested dynamic operators.
        #[arg(long, default_value_t = 8)]
        max_dynamic_depth: usize,
        formula: String,
    },
    /// Search all models up to a size for one satisfying a formula.
    Sat {
        #[arg(long, default_value_t = 4)]
        max_states: usize,
        /// complete, s5, linear, tree or width:N
        #[arg(long)]
        frame_class: Option<FrameClass>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        budget: Option<f64>,
        /// Skip pointed models isomorphic to one already searched.
        #[arg(long)]
        prune: bool,
        formula: String,
    },
    /// Decide membership in the decidable local sabotage and swap fragments.
    Fragment { formula: String },
    /// Report the frame properties of a model.
    Frames {
        /// Model file, or `-` for standard input.
        #[arg(long)]
        model: String,
    },
    /// Compare both model checkers through the translation on every small model.
    Oracle {
        #[arg(long, value_enum)]
        family: OracleFamily,
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        /// Number of generated formulas.
        #[arg(long, default_value_t = 50)]
        runs: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Generate local operators only.
        #[arg(long)]
        local_only: bool,
        /// Translate with the edge-membership guards removed.
        #[arg(long)]
        inject_bug: bool,
    },
}

#[derive(clap::Args)]
struct ModelArgs {
    /// Model file, or `-` for standard input.
    #[arg(long)]
    model: String,
    /// Evaluation state; defaults to the file's point.
    #[arg(long)]
    world: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(alias = "sabotage")]
    Sb,
    #[value(alias = "bridge")]
    Br,
    #[value(alias = "swap")]
    Sw,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleFamily {
    #[value(alias = "sabotage")]
    Sb,
    #[value(alias = "bridge")]
    Br,
    #[value(alias = "swap")]
    Sw,
}

impl From<OracleFamily> for Family {
    fn from(f: OracleFamily) -> Family {
        match f {
            OracleFamily::Sb => Family::Sabotage,
            OracleFamily::Br => Family::Bridge,
            OracleFamily::Sw => Family::Swap,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_model(source: &str) -> Result<LoadedModel> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        buf
    } else {
        std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?
    };
    parse_model(&text).with_context(|| format!("model file {source}"))
}

fn resolve_world(loaded: &LoadedModel, world: Option<&str>) -> Result<StateId> {
    match world {
        Some(name) => loaded
            .model
            .state_by_name(name)
            .with_context(|| format!("no state named `{name}` in the model")),
        None => loaded.point.context("the model file has no point; pass --world"),
    }
}

fn verdict(json: bool, value: bool, extra: serde_json::Value) -> u8 {
    if json {
        let mut out = json!({ "value": value });
        if let (Some(o), serde_json::Value::Object(e)) = (out.as_object_mut(), extra) {
            o.extend(e);
        }
        println!("{out}");
    } else {
        println!("{value}");
    }
    if value {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Check { at, trace, formula } => {
            let phi = parse_rc(&formula)?;
            let loaded = read_model(&at.model)?;
            let w = resolve_world(&loaded, at.world.as_deref())?;
            let (value, steps) = rc_check_traced(&loaded.model, w, &phi)?;
            let name = |s: StateId| loaded.model.name(s).to_string();
            if json {
                let steps: Vec<_> = steps
                    .iter()
                    .map(|t| json!({ "operator": t.operator, "edge": [name(t.edge.0), name(t.edge.1)], "next": name(t.next) }))
                    .collect();
                let extra = if trace { json!({ "trace": steps }) } else { json!({}) };
                return Ok(verdict(true, value, extra));
            }
            let code = verdict(false, value, json!({}));
            if trace {
                for t in &steps {
                    println!(
                        "{} ({}, {}) -> {}",
                        t.operator,
                        name(t.edge.0),
                        name(t.edge.1),
                        name(t.next)
                    );
                }
            }
            Ok(code)
        }
        Command::Hycheck { at, formula } => {
            let psi = parse_hybrid(&formula)?;
            let loaded = read_model(&at.model)?;
            let w = resolve_world(&loaded, at.world.as_deref())?;
            let g = NominalAssignment::from(loaded.nominals.clone());
            let value = hy_check(&loaded.model, &g, w, &psi)?;
            Ok(verdict(json, value, json!({})))
        }
        Command::Translate {
            family,
            eco,
            raw,
            no_optimize,
            max_dynamic_depth,
            formula,
        } => {
            let phi = parse_rc(&formula)?;
            let family = match family {
                FamilyArg::Sb => Family::Sabotage,
                FamilyArg::Br => Family::Bridge,
                FamilyArg::Sw => Family::Swap,
                FamilyArg::Auto => infer_family(&phi, no_optimize)?,
            };
            let options = TranslateOptions {
                optimize_empty: !no_optimize,
                max_dynamic_depth,
                mutation: None,
            };
            let psi = if eco {
                translate_eco_with(&phi, family, &options)?
            } else {
                translate(&phi, family, &options)?
            };
            let shown = if raw { psi } else { simplify_for_display(&psi) };
            if json {
                println!("{}", json!({ "family": family, "formula": shown.to_string() }));
            } else {
                println!("{shown}");
            }
            Ok(0)
        }
        Command::Sat {
            max_states,
            frame_class,
            budget,
            prune,
            formula,
        } => {
            let phi = parse_rc(&formula)?;
            let budget = budget
                .map(|s| Duration::try_from_secs_f64(s).context("--budget must be a non-negative number of seconds"))
                .transpose()?;
            let mut options = SatOptions {
                max_states,
                frame_class,
                budget,
                ..Default::default()
            };
            options.enumerate.prune_isomorphic = prune;
            let outcome = sat_bounded(&phi, &options)?;
            let examined = outcome.examined();
            match outcome {
                SatOutcome::Found { model, point, .. } => {
                    let file = ModelFile::from_model(&model, Some(point));
                    if json {
                        println!("{}", json!({ "outcome": "found", "examined": examined, "model": file }));
                    } else {
                        println!("{}", serde_json::to_string_pretty(&file)?);
                    }
                    Ok(0)
                }
                SatOutcome::Exhausted { .. } => {
                    if json {
                        println!("{}", json!({ "outcome": "exhausted", "examined": examined }));
                    } else {
                        println!("exhausted");
                    }
                    Ok(1)
                }
                SatOutcome::Timeout { completed_states, .. } => {
                    if json {
                        println!(
                            "{}",
                            json!({ "outcome": "timeout", "examined": examined, "completed_states": completed_states })
                        );
                    } else {
                        println!("timeout");
                    }
                    Ok(3)
                }
            }
        }
        Command::Fragment { formula } => {
            let phi = parse_rc(&formula)?;
            let report = fragment_check(&phi);
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else if !report.applicable {
                println!("not applicable: only local sabotage or local swap formulas are classified");
            } else if report.in_fragment {
                println!("in fragment");
            } else {
                let path = report.witness_path.as_deref().unwrap_or_default().join(" ");
                println!("out of fragment: {path}");
            }
            Ok(match (report.applicable, report.in_fragment) {
                (false, _) => 4,
                (true, true) => 0,
                (true, false) => 1,
            })
        }
        Command::Frames { model } => {
            let loaded = read_model(&model)?;
            let report = frame_classify(&loaded.model);
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                println!("complete: {}", report.complete);
                println!("s5: {}", report.s5);
                println!("linear: {}", report.linear);
                println!("transitive tree: {}", report.transitive_tree);
                println!("width: {}", report.width);
            }
            Ok(0)
        }
        Command::Oracle {
            family,
            max_states,
            runs,
            depth,
            seed,
            local_only,
            inject_bug,
        } => {
            if !(1..=rclogic::kripke::MAX_ENUMERATED_STATES).contains(&max_states) {
                bail!(
                    "--max-states must be between 1 and {}",
                    rclogic::kripke::MAX_ENUMERATED_STATES
                );
            }
            let report = oracle_compare(&OracleParams {
                family: family.into(),
                max_states,
                formula_count: runs,
                depth,
                seed,
                local_only,
                mutation: inject_bug.then_some(Mutation::DropBelongs),
            });
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "{} formulas x {} pointed models ({} also economical): {} disagreements in {:.1}s",
                    report.checked_formulas,
                    report.checked_models,
                    report.economical_formulas,
                    report.disagreements.len(),
                    report.elapsed
                );
                for d in &report.disagreements {
                    println!(
                        "formula {} ({:?}): {}\n  translation: {}\n  at {}: rc {} hybrid {}\n  model: {}",
                        d.formula_index,
                        d.translation,
                        d.formula,
                        d.hybrid,
                        d.state,
                        d.rc_value,
                        d.hybrid_value,
                        serde_json::to_string(&d.model)?
                    );
                }
            }
            Ok(if report.disagreements.is_empty() { 0 } else { 1 })
        }
    }
}

/// The single family occurring in `phi`. Formulas without dynamic operators
/// translate identically under every family unless the empty-list shortcut
/// is switched off.
fn infer_family(phi: &rclogic::RcFormula, no_optimize: bool) -> Result<Family> {
    let families = profile(phi).families;
    match families.len() {
        0 if no_optimize => bail!("no dynamic operator to infer the family from; pass --family"),
        0 => Ok(Family::Sabotage),
        1 => Ok(*families.iter().next().expect("one element")),
        _ => bail!(
            "formula mixes the {} families; translations cover one family at a time",
            families.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" and ")
        ),
    }
}
