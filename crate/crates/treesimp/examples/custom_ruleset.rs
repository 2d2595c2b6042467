//! Authoring rules: the DSL surface, two-variant rules, load-time
//! validation, and running a custom ruleset.
//!
//! ```text
//! cargo run -p treesimp --example custom_ruleset
//! ```

use treesimp::{load_ruleset, parse_ptb, simplify, EngineOptions};

fn main() {
    // one keep line per revision variant; literal tags (the comma, CC)
    // match without binding and are always removed with the rewrite
    let text = r#"
# split coordinated adjective phrases into one sentence per conjunct
rule adjp_split  mode=optional tags=(demo)
  match ADJP [ $a:@ , CC $b:@ ... ]
  keep  [ $a ]
  del   { $b }
  keep  [ $b ]
  del   { $a }

# drop a trailing adverb phrase after a comma
rule vp_advp_tail  mode=optional tags=(demo)
  match VP [ ... , $m:ADVP ]
  del   { $m }
"#;
    let rules = load_ruleset(text, "inline").expect("valid ruleset");
    println!("loaded {} rules", rules.len());

    let tree = parse_ptb(
        "(S (NP (DT the) (NN assay)) (VP (VBZ remains) (ADJP (ADJP (JJ fast)) (, ,) (CC but) (ADJP (JJ coarse))) (, ,) (ADVP (RB overall))) (. .))",
    )
    .unwrap();
    let result = simplify(&tree, &rules, &EngineOptions::default());
    for o in &result.outputs {
        println!("  {}", o.sentence);
    }

    // validation happens at load time: every matched child must be kept,
    // spawned, or deleted
    let broken = "rule r mode=optional tags=()\n  match NP [ $a:NP $p:PP ]\n  keep [ $a ]\n";
    match load_ruleset(broken, "inline") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
}
