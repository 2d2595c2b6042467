//! Reading and writing trees: bracketed parsing, canonical serialization,
//! token yields, and sentence rendering.
//!
//! ```text
//! cargo run -p treesimp --example parse_and_render
//! ```

use treesimp::{detokenize, parse_ptb, serialize, NodeAddress};

fn main() {
    // the outer wrapper common in parser output is stripped on read
    let tree = parse_ptb(
        "( (S (NP-SBJ (DT The) (NN receptor)) (VP (VBZ binds) (NP (DT the) (NN ligand))) (. .)))",
    )
    .expect("well-formed tree");

    println!("canonical: {}", serialize(&tree));
    println!("tokens:    {:?}", tree.tokens());
    println!("sentence:  {}", detokenize(&tree.tokens()));

    // function suffixes survive the round trip but are invisible to matching
    let subject = tree.node_at(&NodeAddress(vec![0])).unwrap();
    println!(
        "subject label: raw={} tag={}",
        subject.label().unwrap().raw(),
        subject.tag().unwrap()
    );

    // addresses are child-index paths in depth-first pre-order
    for addr in tree.find_nodes(|n| n.tag() == Some("NP")) {
        println!("NP at {addr}: {}", serialize(tree.node_at(&addr).unwrap()));
    }

    // bracket characters in tokens use PTB escapes on disk
    let prn = parse_ptb("(PRN (-LRB- -LRB-) (NP (NN hGITRL)) (-RRB- -RRB-))").unwrap();
    println!("escaped:   {}", serialize(&prn));
    println!("yield:     {}", prn.tokens().join(" "));

    // malformed input reports the byte offset
    match parse_ptb("(S (NP the") {
        Err(e) => println!("error:     {e}"),
        Ok(_) => unreachable!(),
    }
}
