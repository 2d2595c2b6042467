//! A single rule applied by hand: load it, match it against one node, and
//! inspect the rewrite outcome.
//!
//! ```text
//! cargo run -p treesimp --example match_and_rewrite
//! ```

use treesimp::rules::{apply_rule, load_ruleset, match_rule};
use treesimp::{detokenize, parse_ptb, serialize, NodeAddress};

fn main() {
    let rules = load_ruleset(
        r#"
rule np_vp_postmod  mode=optional tags=()
  match NP [ $a:NP $v:VP ]
  where first_pos($v) in {VBG VBN}
  keep  [ $a ]
  spawn { S: $a lit(MD,"can") lit(VB,"be") $v }
"#,
        "inline",
    )
    .expect("valid rule");
    let rule = &rules.rules[0];

    let tree = parse_ptb(
        "(S (NP (DT the) (NNS motifs)) (VP (VBP appear) (PP (IN in) (NP (NP (DT the) (NNS proteins)) (VP (VBN found) (PP (IN in) (NP (NNS cells))))))) (. .))",
    )
    .unwrap();

    // the postmodified NP sits inside the PP object
    let addr = NodeAddress(vec![1, 1, 1]);
    let bindings = match_rule(rule, &tree, &addr).expect("pattern matches here");
    println!("matched at {addr} with window {:?}", bindings.window);
    println!("  $a -> {}", bindings.var_address("a").unwrap());
    println!("  $v -> {}", bindings.var_address("v").unwrap());

    let outcome = apply_rule(rule, &tree, &addr, &bindings).expect("rewrite applies");
    for t in &outcome.revised {
        println!("revised: {}", serialize(t));
        println!("         {}", detokenize(&t.tokens()));
    }
    for t in &outcome.spawned {
        println!("spawned: {}", serialize(t));
        println!("         {}", detokenize(&t.tokens()));
    }

    // the source tree is untouched
    println!("source:  {}", detokenize(&tree.tokens()));
}
