//! treesimp generates, from a Penn-Treebank constituency tree, the complete
//! deduplicated set of shorter grammatical sentences the original implies.
//!
//! The pipeline: optional noun-phrase premodifier stripping, a single
//! depth-first pass of *necessary* rewrite rules, then an exhaustive worklist
//! closure of *optional* rules over the growing set of trees. Rules live in a
//! small declarative DSL (see [`rules`]); a default ruleset ships with the
//! crate. Everything is deterministic: identical inputs give byte-identical
//! results.
//!
//! Start with the runnable programs under `examples/`, or:
//!
//! ```
//! use treesimp::{default_ruleset, parse_ptb, simplify, EngineOptions};
//!
//! let tree = parse_ptb(
//!     "(S (NP (NP (DT the) (NN role)) (PP (IN of) (NP (NN p53)))) (VP (VBZ matters)) (. .))",
//! ).unwrap();
//! let result = simplify(&tree, default_ruleset(), &EngineOptions::default());
//! for s in &result.outputs {
//!     println!("{}", s.sentence);
//! }
//! ```

pub mod bench;
pub mod cli;
pub mod engine;
pub mod np;
pub mod ptb;
pub mod rules;
pub mod synth;

pub use engine::{
    necessary_pass, simplify, simplify_batch, EngineError, EngineOptions, SimplificationResult,
    SimplifiedSentence,
};
pub use np::{find_base_nps, strip_premodifiers, BaseNpEdit, NpOutcome};
pub use ptb::{detokenize, parse_ptb, serialize, NodeAddress, NodeLabel, ParseError, PtbTree};
pub use rules::{apply_rule, load_ruleset, match_rule, DslError, RuleSet, RuleSpec};

use std::sync::OnceLock;

/// Source text of the ruleset shipped with the crate (also installed at
/// `rules/default.rules`).
pub const DEFAULT_RULES: &str = include_str!("../rules/default.rules");

/// The shipped ruleset, parsed once.
pub fn default_ruleset() -> &'static RuleSet {
    static RULES: OnceLock<RuleSet> = OnceLock::new();
    RULES.get_or_init(|| {
        load_ruleset(DEFAULT_RULES, "rules/default.rules").expect("shipped ruleset must load")
    })
}
