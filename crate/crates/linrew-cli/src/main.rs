//! Command-line front-end: validation, normalization, confluence and
//! decreasingness audits, basis checks, and diagram rendering.

use clap::{Args, Parser, Subcommand};
use linrew_core::basis::{compare_dimensions, BrauerProfile};
use linrew_core::confluence::{
    check_decreasing, enumerate_critical_branchings, joinable, local_branchings, Branching,
    JoinStatus, Labeling,
};
use linrew_core::io::{parse_lincomb, parse_polygraph};
use linrew_core::lincomb::LinComb;
use linrew_core::polygraph::Polygraph;
use linrew_core::presets::{preset_aob, preset_aobbar, preset_sigma_ex};
use linrew_core::render::{svg_lincomb, tikz_lincomb};
use linrew_core::rewrite::{Engine, NormalizationStatus, RewriteStep};
use linrew_core::word::Word;
use serde::Serialize;
use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "linrew", about = "Rewriting engine for diagrammatic linear categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PolygraphArgs {
    /// Preset name (aob | aobbar | sigma-ex) or a polygraph JSON file.
    #[arg(long, default_value = "aobbar")]
    polygraph: String,
    /// Dot-count bound used to instantiate dot-parametric rule families.
    #[arg(long, default_value_t = 2)]
    max_dots: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a polygraph: boundary compatibility and name uniqueness.
    Validate {
        #[command(flatten)]
        polygraph: PolygraphArgs,
    },
    /// Rewrite a 2-cell to quasi-reduced form.
    Normalize {
        #[command(flatten)]
        polygraph: PolygraphArgs,
        /// Input 2-cell (JSON).
        #[arg(long)]
        input: String,
        /// Step budget.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        /// Output file for the result (stdout when absent).
        #[arg(long)]
        out: Option<String>,
        /// Output file for the step-by-step trace.
        #[arg(long)]
        trace: Option<String>,
    },
    /// Enumerate critical branchings.
    CriticalPairs {
        #[command(flatten)]
        polygraph: PolygraphArgs,
        /// Dot bound: alias for --max-dots when instantiating presets.
        #[arg(long)]
        dot_bound: Option<usize>,
        /// Maximum overlap height in slices.
        #[arg(long, default_value_t = 6)]
        max_overlap: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Enumerate critical branchings and search joins for each.
    CheckConfluence {
        #[command(flatten)]
        polygraph: PolygraphArgs,
        #[arg(long)]
        dot_bound: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_overlap: usize,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = 200)]
        width: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Check the decreasing-diagram condition on all critical branchings.
    CheckDecreasing {
        #[command(flatten)]
        polygraph: PolygraphArgs,
        #[arg(long)]
        dot_bound: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_overlap: usize,
        /// Step labeling: quasi-distance | <file.json> (map target -> level).
        #[arg(long, default_value = "quasi-distance")]
        labeling: String,
        #[arg(long, default_value_t = 2_000)]
        budget: usize,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Compare the engine's hom-space rank with the combinatorial count.
    Basis {
        #[command(flatten)]
        polygraph: PolygraphArgs,
        #[arg(long)]
        source: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 1)]
        max_bubbles: usize,
        #[arg(long, default_value_t = 6)]
        span_bound: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Render a 2-cell.
    Render {
        #[command(flatten)]
        polygraph: PolygraphArgs,
        #[arg(long)]
        input: String,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Run a built-in demonstration (sigma-ex | aob-nonconfluent).
    Demo {
        name: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 200)]
        width: usize,
    },
}

fn load_polygraph(args: &PolygraphArgs) -> Result<Polygraph, String> {
    match args.polygraph.as_str() {
        "aob" => preset_aob().map_err(|e| e.to_string()),
        "aobbar" => preset_aobbar(args.max_dots).map_err(|e| e.to_string()),
        "sigma-ex" => preset_sigma_ex().map_err(|e| e.to_string()),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {path}: {e}"))?;
            parse_polygraph(&text).map_err(|e| e.to_string())
        }
    }
}

fn write_out(out: &Option<String>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct BranchReport {
    source: String,
    #[serde(rename = "leftRule")]
    left_rule: String,
    #[serde(rename = "rightRule")]
    right_rule: String,
    status: String,
    #[serde(rename = "depthUsed")]
    depth_used: usize,
    levels: Option<(usize, usize)>,
}

/// Build a single-step branching from a critical branching's data.
fn branching_of(
    engine: &Engine,
    cb: &linrew_core::confluence::CriticalBranching,
) -> Result<Branching, String> {
    let src = LinComb::from_monomial(cb.overlap.clone());
    let mk = |rule_name: &str, ctx: &linrew_core::diagram::Context| -> Result<RewriteStep, String> {
        let rule = engine
            .polygraph
            .rule(rule_name)
            .ok_or_else(|| format!("unknown rule {rule_name}"))?;
        let target = rule.rhs.plug_into(ctx).map_err(|e| e.to_string())?;
        Ok(RewriteStep {
            rule: rule_name.to_string(),
            context: ctx.clone(),
            coefficient: num_traits::One::one(),
            remainder: LinComb::zero(src.src().clone(), src.tgt().clone()),
            source: src.clone(),
            target,
        })
    };
    Ok(Branching {
        source: src.clone(),
        left: vec![mk(&cb.left_rule, &cb.left_context)?],
        right: vec![mk(&cb.right_rule, &cb.right_context)?],
    })
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { polygraph } => {
            let p = load_polygraph(&polygraph)?;
            p.validate().map_err(|e| e.to_string())?;
            println!(
                "polygraph {}: {} generators, {} rules: OK",
                p.name,
                p.generators.len(),
                p.rules.len()
            );
            Ok(true)
        }
        Command::Normalize { polygraph, input, budget, out, trace } => {
            let p = load_polygraph(&polygraph)?;
            let text = fs::read_to_string(&input)
                .map_err(|e| format!("cannot read {input}: {e}"))?;
            let cell = parse_lincomb(&text, &p).map_err(|e| e.to_string())?;
            let engine = Engine::new(Arc::new(p));
            let nr = engine.quasi_reduce(&cell, budget).map_err(|e| e.to_string())?;
            if let Some(tr) = trace {
                // Re-run recording steps for the trace.
                let mut cur = cell.clone();
                let mut steps = Vec::new();
                for _ in 0..nr.steps_used {
                    match engine.pick_step(&cur).map_err(|e| e.to_string())? {
                        Some(s) => {
                            cur = s.target.clone();
                            steps.push(s);
                        }
                        None => break,
                    }
                }
                let json = serde_json::to_string_pretty(&steps).map_err(|e| e.to_string())?;
                fs::write(&tr, json).map_err(|e| format!("cannot write {tr}: {e}"))?;
            }
            let json = serde_json::to_string_pretty(&nr.result).map_err(|e| e.to_string())?;
            write_out(&out, &json)?;
            eprintln!("steps: {}, status: {:?}", nr.steps_used, nr.status);
            Ok(nr.status == NormalizationStatus::QuasiReduced)
        }
        Command::CriticalPairs { polygraph, dot_bound, max_overlap, out } => {
            let mut args = polygraph.clone();
            if let Some(k) = dot_bound {
                args.max_dots = k;
            }
            let p = load_polygraph(&args)?;
            let engine = Engine::new(Arc::new(p));
            let cbs =
                enumerate_critical_branchings(&engine, max_overlap).map_err(|e| e.to_string())?;
            let json = serde_json::to_string_pretty(&cbs).map_err(|e| e.to_string())?;
            write_out(&out, &json)?;
            eprintln!("critical branchings: {}", cbs.len());
            Ok(true)
        }
        Command::CheckConfluence { polygraph, dot_bound, max_overlap, depth, width, out } => {
            let mut args = polygraph.clone();
            if let Some(k) = dot_bound {
                args.max_dots = k;
            }
            let p = load_polygraph(&args)?;
            let engine = Engine::new(Arc::new(p));
            let cbs =
                enumerate_critical_branchings(&engine, max_overlap).map_err(|e| e.to_string())?;
            let mut reports = Vec::new();
            let mut all_joined = true;
            for cb in &cbs {
                let b = branching_of(&engine, cb)?;
                let jr = joinable(&engine, &b, depth, width).map_err(|e| e.to_string())?;
                all_joined &= jr.status == JoinStatus::Joined;
                reports.push(BranchReport {
                    source: cb.overlap.to_string(),
                    left_rule: cb.left_rule.clone(),
                    right_rule: cb.right_rule.clone(),
                    status: format!("{:?}", jr.status),
                    depth_used: jr.depth_used,
                    levels: None,
                });
            }
            let json = serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?;
            write_out(&out, &json)?;
            eprintln!(
                "critical branchings: {}, all joined: {}",
                cbs.len(),
                all_joined
            );
            Ok(all_joined)
        }
        Command::CheckDecreasing {
            polygraph,
            dot_bound,
            max_overlap,
            labeling,
            budget,
            depth,
            out,
        } => {
            if labeling != "quasi-distance" {
                return Err(format!("unsupported labeling {labeling:?}"));
            }
            let mut args = polygraph.clone();
            if let Some(k) = dot_bound {
                args.max_dots = k;
            }
            let p = load_polygraph(&args)?;
            let engine = Engine::new(Arc::new(p));
            let cbs =
                enumerate_critical_branchings(&engine, max_overlap).map_err(|e| e.to_string())?;
            let labeling = Labeling::new(&engine, budget);
            let mut reports = Vec::new();
            let mut all_pass = true;
            for cb in &cbs {
                let b = branching_of(&engine, cb)?;
                let rep =
                    check_decreasing(&engine, &b, &labeling, depth).map_err(|e| e.to_string())?;
                all_pass &= rep.decreasing;
                reports.push(BranchReport {
                    source: cb.overlap.to_string(),
                    left_rule: cb.left_rule.clone(),
                    right_rule: cb.right_rule.clone(),
                    status: if rep.decreasing { "Decreasing" } else { "NotShownDecreasing" }
                        .to_string(),
                    depth_used: depth,
                    levels: Some((rep.level_left, rep.level_right)),
                });
            }
            let json = serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?;
            write_out(&out, &json)?;
            eprintln!("critical branchings: {}, all decreasing: {}", cbs.len(), all_pass);
            Ok(all_pass)
        }
        Command::Basis { polygraph, source, target, max_bubbles, span_bound, budget } => {
            let p = load_polygraph(&polygraph)?;
            let profile = BrauerProfile {
                source: source.parse::<Word>().map_err(|e| e.to_string())?,
                target: target.parse::<Word>().map_err(|e| e.to_string())?,
                dot_budget: polygraph.max_dots,
                bubble_budget: max_bubbles,
            };
            let engine = Engine::new(Arc::new(p));
            let report = compare_dimensions(&engine, &profile, span_bound, budget)
                .map_err(|e| e.to_string())?;
            let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            println!("{json}");
            Ok(report.matches)
        }
        Command::Render { polygraph, input, format, out } => {
            let p = load_polygraph(&polygraph)?;
            let text = fs::read_to_string(&input)
                .map_err(|e| format!("cannot read {input}: {e}"))?;
            let cell = parse_lincomb(&text, &p).map_err(|e| e.to_string())?;
            let rendered = match format.as_str() {
                "json" => serde_json::to_string_pretty(&cell).map_err(|e| e.to_string())?,
                "tikz" => tikz_lincomb(&cell),
                "svg" => svg_lincomb(&cell),
                other => return Err(format!("unknown format {other:?}")),
            };
            write_out(&out, &rendered)?;
            Ok(true)
        }
        Command::Demo { name, depth, width } => match name.as_str() {
            "sigma-ex" => demo_sigma_ex(depth),
            "aob-nonconfluent" => demo_aob_nonconfluent(depth, width),
            other => Err(format!("unknown demo {other:?}")),
        },
    }
}

/// Check decreasingness of every local branching of the bounded corpus of
/// cup/cap diagrams (at most 2 boundary strands, at most 3 bubbles).
fn demo_sigma_ex(depth: usize) -> Result<bool, String> {
    let p = preset_sigma_ex().map_err(|e| e.to_string())?;
    let engine = Engine::new(Arc::new(p));
    let labeling = Labeling::new(&engine, 50_000);
    let words = ["", "^", "^^"];
    let mut checked = 0usize;
    let mut all_pass = true;
    for s in words {
        for t in words {
            let profile = BrauerProfile {
                source: Word::parse(s).map_err(|e| e.to_string())?,
                target: Word::parse(t).map_err(|e| e.to_string())?,
                dot_budget: 0,
                bubble_budget: 3,
            };
            let corpus =
                linrew_core::basis::enumerate_span(&engine.polygraph, &profile, 6)
                    .map_err(|e| e.to_string())?;
            for m in corpus {
                let c = LinComb::from_monomial(m);
                for b in local_branchings(&engine, &c).map_err(|e| e.to_string())? {
                    let rep = check_decreasing(&engine, &b, &labeling, depth)
                        .map_err(|e| e.to_string())?;
                    checked += 1;
                    if !rep.decreasing {
                        all_pass = false;
                        eprintln!("not shown decreasing: {}", b.source);
                    }
                }
            }
        }
    }
    println!("local branchings checked: {checked}");
    println!("decreasing: {}", if all_pass { "PASS" } else { "FAIL" });
    Ok(all_pass)
}

/// Replay the non-joinable dot-under-double-crossing branching.
fn demo_aob_nonconfluent(depth: usize, width: usize) -> Result<bool, String> {
    let p = preset_aob().map_err(|e| e.to_string())?;
    let engine = Engine::new(Arc::new(p.clone()));
    // Dot under a double crossing: the symmetric-relation step and the
    // dot-slide step diverge.
    let s = p.generator("s").map_err(|e| e.to_string())?;
    let x = p.generator("x").map_err(|e| e.to_string())?;
    let m = linrew_core::diagram::Monomial::new(
        Word::parse("^^").map_err(|e| e.to_string())?,
        vec![
            linrew_core::diagram::Slice::new(Word::empty(), s.clone(), Word::empty()),
            linrew_core::diagram::Slice::new(Word::empty(), s, Word::empty()),
            linrew_core::diagram::Slice::new(Word::parse("^").unwrap(), x, Word::empty()),
        ],
    )
    .map_err(|e| e.to_string())?;
    let c = LinComb::from_monomial(m);
    let steps = engine.find_steps(&c).map_err(|e| e.to_string())?;
    let left = steps
        .iter()
        .find(|st| st.rule == "aob3")
        .ok_or("expected a double-crossing step")?
        .clone();
    let right = steps
        .iter()
        .find(|st| st.rule == "aob5")
        .ok_or("expected a dot-slide step")?
        .clone();
    let b = Branching { source: c, left: vec![left], right: vec![right] };
    let jr = joinable(&engine, &b, depth, width).map_err(|e| e.to_string())?;
    println!("status: {:?} (depth used {})", jr.status, jr.depth_used);
    Ok(jr.status == JoinStatus::NotJoinedWithinBound)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
