//! Batch command-line front end over the library: read trees, simplify,
//! emit sentences/trees/JSONL with provenance, collect run statistics.
//!
//! Exit codes: 0 full success, 1 fatal (unusable ruleset, unreadable input,
//! bad flags), 2 when any per-sentence error record exists (malformed tree,
//! budget exceeded) while the rest of the run completed.

use crate::bench::{run_scaling_benchmark, DEFAULT_SIZES};
use crate::engine::{simplify, EngineOptions, SimplificationResult};
use crate::ptb::{detokenize, parse_ptb, serialize, PtbTree};
use crate::rules::{load_ruleset, RuleSet};
use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "treesimp",
    version,
    about = "Sentence simplification over Penn-Treebank constituency trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read trees, emit every implied shorter sentence
    Simplify(SimplifyArgs),
    /// Check a ruleset file and print a per-rule summary
    ValidateRules {
        /// Ruleset file to check
        rules: PathBuf,
    },
    /// Measure per-sentence runtime scaling on synthetic trees
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Sentences,
    Trees,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    /// One tree per line
    Single,
    /// Blank-line-separated multi-line blocks
    Blocks,
}

#[derive(Args)]
struct SimplifyArgs {
    /// Ruleset file
    #[arg(long)]
    rules: PathBuf,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
    /// Reduce base noun phrases to determinative + head first (lossy)
    #[arg(long)]
    np_replace: bool,
    /// Also emit each raw input sentence before its outputs
    #[arg(long)]
    echo_input: bool,
    /// Suppress the base sentence(s) from the outputs
    #[arg(long)]
    no_base: bool,
    /// Run only rules carrying one of these comma-separated tags
    #[arg(long)]
    tags: Option<String>,
    /// Cap on trees generated per sentence
    #[arg(long, default_value_t = 512)]
    max_generated: usize,
    /// Cap on rule applications per sentence
    #[arg(long, default_value_t = 10_000)]
    max_steps: usize,
    /// Write run statistics as JSON to this path
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Merge outputs whose rendered sentences coincide (trees may differ)
    #[arg(long)]
    collapse_duplicates: bool,
    /// Override input layout autodetection
    #[arg(long, value_enum)]
    input_format: Option<InputFormat>,
    /// Worker threads for batch processing (default: all cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// Input file (standard input when omitted)
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated token counts
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Timed repetitions per size (the median is reported)
    #[arg(long, default_value_t = 9)]
    reps: usize,
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{e}");
            return 1;
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return 0;
        }
    };
    let outcome = match cli.command {
        Command::Simplify(args) => cmd_simplify(&args),
        Command::ValidateRules { rules } => cmd_validate_rules(&rules),
        Command::Bench(args) => cmd_bench(&args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("treesimp: {e:#}");
            1
        }
    }
}

/// Aggregate statistics for one run, written as JSON behind `--stats`.
#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunStats {
    pub sentences_in: usize,
    pub outputs_total: usize,
    /// Histogram: outputs-per-sentence count -> number of sentences.
    pub outputs_per_sentence: BTreeMap<usize, usize>,
    /// Per rule, the number of emitted outputs whose creating step fired it.
    pub rule_fire_counts: BTreeMap<String, usize>,
    pub tokens_in: usize,
    pub rules_loaded: usize,
    pub wall_time_per_sentence_ms: Vec<f64>,
}

enum ItemOutcome {
    Parsed {
        input: PtbTree,
        result: SimplificationResult,
        elapsed_ms: f64,
    },
    Malformed(String),
}

fn cmd_simplify(args: &SimplifyArgs) -> Result<i32> {
    let rules_text = std::fs::read_to_string(&args.rules)
        .with_context(|| format!("cannot read rules file {}", args.rules.display()))?;
    let rules = load_ruleset(&rules_text, &args.rules.to_string_lossy())?;

    let filter = match &args.tags {
        None => None,
        Some(spec) => {
            let set: std::collections::BTreeSet<String> = spec
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(str::to_string)
                .collect();
            if set.is_empty() {
                return Err(anyhow!("--tags needs at least one tag"));
            }
            Some(set)
        }
    };
    let opts = EngineOptions {
        np_replace: args.np_replace,
        emit_original: !args.no_base,
        rule_tag_filter: filter,
        max_generated: args.max_generated,
        max_steps: args.max_steps,
    };

    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path)
            .with_context(|| format!("cannot read input {}", path.display()))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("cannot read standard input")?;
            buf
        }
    };
    let blocks = split_input(&text, args.input_format);

    let process = |block: &String| -> ItemOutcome {
        match parse_ptb(block) {
            Err(e) => ItemOutcome::Malformed(e.to_string()),
            Ok(tree) => {
                let start = Instant::now();
                let result = simplify(&tree, &rules, &opts);
                ItemOutcome::Parsed {
                    input: tree,
                    result,
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                }
            }
        }
    };
    let outcomes: Vec<ItemOutcome> = match args.jobs {
        Some(1) => blocks.iter().map(process).collect(),
        jobs => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .context("cannot build worker pool")?;
            pool.install(|| blocks.par_iter().map(process).collect())
        }
    };

    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let mut any_error = false;
    for (id, outcome) in outcomes.iter().enumerate() {
        match outcome {
            ItemOutcome::Malformed(message) => {
                any_error = true;
                emit_item_error(&mut out, args.format, id, message)?;
            }
            ItemOutcome::Parsed { input, result, .. } => {
                if result.error.is_some() {
                    any_error = true;
                }
                emit_item(&mut out, args, id, input, result)?;
            }
        }
    }
    out.flush()?;

    if let Some(path) = &args.stats {
        let stats = collect_stats(&blocks, &outcomes, &rules);
        let json = serde_json::to_string_pretty(&stats)?;
        std::fs::write(path, json)
            .with_context(|| format!("cannot write stats to {}", path.display()))?;
    }

    Ok(if any_error { 2 } else { 0 })
}

/// A line starting with `(` begins one-tree-per-line input; anything else is
/// read as blank-line-separated multi-line blocks.
fn split_input(text: &str, forced: Option<InputFormat>) -> Vec<String> {
    let format = forced.unwrap_or_else(|| {
        let first = text.lines().find(|l| !l.trim().is_empty());
        match first {
            Some(line) if line.trim_start().starts_with('(') => InputFormat::Single,
            _ => InputFormat::Blocks,
        }
    });
    match format {
        InputFormat::Single => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect(),
        InputFormat::Blocks => text
            .split("\n\n")
            .map(str::trim)
            .filter(|b| !b.is_empty())
            .map(str::to_string)
            .collect(),
    }
}

fn emit_item_error(out: &mut impl Write, format: Format, id: usize, message: &str) -> Result<()> {
    match format {
        Format::Jsonl => {
            let record = serde_json::json!({ "id": id, "error": message });
            writeln!(out, "{record}")?;
        }
        Format::Sentences | Format::Trees => {
            eprintln!("treesimp: sentence {id}: {message}");
        }
    }
    Ok(())
}

fn emit_item(
    out: &mut impl Write,
    args: &SimplifyArgs,
    id: usize,
    input: &PtbTree,
    result: &SimplificationResult,
) -> Result<()> {
    let mut outputs: Vec<&crate::engine::SimplifiedSentence> = result.outputs.iter().collect();
    if args.collapse_duplicates {
        let mut seen = std::collections::HashSet::new();
        outputs.retain(|o| seen.insert(o.sentence.clone()));
    }
    match args.format {
        Format::Jsonl => {
            if args.echo_input {
                let tokens = input.tokens();
                let record = serde_json::json!({
                    "id": id,
                    "sentence": detokenize(&tokens),
                    "tree": serialize(input),
                    "provenance": [],
                    "tokenCount": tokens.len(),
                    "isBase": false,
                    "echoedInput": true,
                });
                writeln!(out, "{record}")?;
            }
            for o in &outputs {
                let provenance: Vec<serde_json::Value> = o
                    .provenance
                    .iter()
                    .map(|(rule, path)| serde_json::json!({ "rule": rule, "path": path.0 }))
                    .collect();
                let record = serde_json::json!({
                    "id": id,
                    "sentence": o.sentence,
                    "tree": serialize(&o.tree),
                    "provenance": provenance,
                    "tokenCount": o.token_count,
                    "isBase": o.is_base,
                });
                writeln!(out, "{record}")?;
            }
            if let Some(e) = &result.error {
                let record = serde_json::json!({ "id": id, "error": e.to_string() });
                writeln!(out, "{record}")?;
            }
        }
        Format::Sentences | Format::Trees => {
            if id > 0 {
                writeln!(out)?;
            }
            let render = |t: &PtbTree, sentence: &str| -> String {
                match args.format {
                    Format::Trees => serialize(t),
                    _ => sentence.to_string(),
                }
            };
            if args.echo_input {
                writeln!(out, "{}", render(input, &detokenize(&input.tokens())))?;
            }
            for o in &outputs {
                writeln!(out, "{}", render(&o.tree, &o.sentence))?;
            }
            if let Some(e) = &result.error {
                eprintln!("treesimp: sentence {id}: {e}");
            }
        }
    }
    Ok(())
}

fn collect_stats(blocks: &[String], outcomes: &[ItemOutcome], rules: &RuleSet) -> RunStats {
    let mut stats = RunStats {
        sentences_in: blocks.len(),
        outputs_total: 0,
        outputs_per_sentence: BTreeMap::new(),
        rule_fire_counts: BTreeMap::new(),
        tokens_in: 0,
        rules_loaded: rules.len(),
        wall_time_per_sentence_ms: Vec::new(),
    };
    for outcome in outcomes {
        let ItemOutcome::Parsed {
            input,
            result,
            elapsed_ms,
        } = outcome
        else {
            continue;
        };
        stats.tokens_in += input.token_count();
        stats.outputs_total += result.outputs.len();
        *stats
            .outputs_per_sentence
            .entry(result.outputs.len())
            .or_default() += 1;
        stats.wall_time_per_sentence_ms.push(*elapsed_ms);
        for o in &result.outputs {
            if let Some((rule, _)) = o.provenance.last() {
                *stats.rule_fire_counts.entry(rule.clone()).or_default() += 1;
            }
        }
    }
    stats
}

fn cmd_validate_rules(path: &Path) -> Result<i32> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read rules file {}", path.display()))?;
    let rules = match load_ruleset(&text, &path.to_string_lossy()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("treesimp: {e}");
            return Ok(1);
        }
    };
    // loading enforces the partition and static shrinking checks per rule
    for r in &rules.rules {
        let tags: Vec<&str> = r.tags.iter().map(String::as_str).collect();
        println!(
            "{:<22} mode={:<9} tags=({}) partition=ok shrink=ok",
            r.name,
            r.mode.to_string(),
            tags.join(" "),
        );
    }
    println!("{} rules OK", rules.len());
    Ok(0)
}

fn cmd_bench(args: &BenchArgs) -> Result<i32> {
    let sizes = args.sizes.clone().unwrap_or_else(|| DEFAULT_SIZES.to_vec());
    if let Some(n) = sizes.iter().find(|&&n| n < 10) {
        return Err(anyhow!(
            "--sizes entries must be at least 10 tokens, got {n}"
        ));
    }
    let report = run_scaling_benchmark(&sizes, args.seed, args.reps);
    println!("{:>8} {:>10} {:>14}", "tokens", "outputs", "median_ms");
    for row in &report.rows {
        println!(
            "{:>8} {:>10} {:>14.4}",
            row.tokens, row.outputs, row.median_ms
        );
    }
    println!(
        "fitted growth exponent of median time vs tokens: {:.3}",
        report.fitted_exponent
    );
    Ok(0)
}
