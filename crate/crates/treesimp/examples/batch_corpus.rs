//! Batch processing through the library: simplify a whole corpus file and
//! summarize what fired.
//!
//! ```text
//! cargo run -p treesimp --example batch_corpus [corpus.ptb]
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;
use treesimp::{default_ruleset, parse_ptb, simplify_batch, EngineOptions};

fn main() {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| {
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/sample_corpus.ptb")
        });
    let text = std::fs::read_to_string(&path).expect("readable corpus");
    let trees: Vec<_> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_ptb(l).expect("well-formed corpus line"))
        .collect();

    let opts = EngineOptions::default();
    let mut outputs_total = 0;
    let mut fires: BTreeMap<String, usize> = BTreeMap::new();
    let mut errors = 0;
    let n = trees.len();
    for result in simplify_batch(trees, default_ruleset(), &opts) {
        outputs_total += result.outputs.len();
        errors += usize::from(result.error.is_some());
        for o in &result.outputs {
            if let Some((rule, _)) = o.provenance.last() {
                *fires.entry(rule.clone()).or_default() += 1;
            }
        }
    }

    println!("{n} sentences in, {outputs_total} sentences out, {errors} errors");
    println!("outputs created per rule:");
    for (rule, count) in &fires {
        println!("  {rule:<22} {count}");
    }
}
