//! The full pipeline on one sentence: necessary pass, worklist closure,
//! and per-output provenance.
//!
//! ```text
//! cargo run -p treesimp --example simplify_sentence
//! ```

use treesimp::{default_ruleset, parse_ptb, simplify, EngineOptions};

fn main() {
    let tree = parse_ptb(
        "(S (S (VP (TO To) (VP (VB characterize) (NP (DT these) (NNS pathways))))) (, ,) \
         (NP (PRP we)) (VP (VBD focused) (PP (IN on) (NP (NP (NNS changes)) (PP (IN in) \
         (NP (NP (DT the) (NNS inhibitors)) (SBAR (WHNP (WDT that)) (S (VP (VBP underlie) \
         (NP (DT the) (NN arrest)))))))))) (. .))",
    )
    .unwrap();

    let result = simplify(&tree, default_ruleset(), &EngineOptions::default());
    assert!(result.error.is_none());

    println!("{} sentences:", result.outputs.len());
    for o in &result.outputs {
        let marker = if o.is_base { "base" } else { "    " };
        println!("  [{marker}] {}", o.sentence);
        for (rule, addr) in &o.provenance {
            println!("           via {rule} at {addr}");
        }
    }
}
