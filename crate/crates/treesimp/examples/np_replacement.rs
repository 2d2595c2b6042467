//! Base noun-phrase reduction: find minimal NPs and strip their
//! premodifiers, keeping the determinative and the head noun.
//!
//! ```text
//! cargo run -p treesimp --example np_replacement
//! ```

use treesimp::{detokenize, find_base_nps, parse_ptb, serialize, strip_premodifiers};

fn main() {
    let tree = parse_ptb(
        "(S (NP (DT the) (RB recently) (VBN discovered) (JJ murine) (NN glucocorticoid)) \
         (VP (VBZ binds) (NP (CD two) (JJ novel) (NNS receptors))) (. .))",
    )
    .unwrap();

    for addr in find_base_nps(&tree) {
        println!(
            "base NP at {addr}: {}",
            serialize(tree.node_at(&addr).unwrap())
        );
    }

    let out = strip_premodifiers(&tree);
    println!("reduced: {}", detokenize(&out.revised.tokens()));
    for edit in &out.edits {
        println!(
            "  at {} kept {:?} + {:?}, removed {:?}",
            edit.address, edit.kept_determinative, edit.head_noun, edit.removed_tokens
        );
    }

    // already-minimal phrases, coordinated phrases, and headless phrases
    // are left alone
    let untouched = parse_ptb("(NP (NN a) (CC and) (NN b))").unwrap();
    assert!(strip_premodifiers(&untouched).edits.is_empty());
    println!("coordinated base NP untouched: {}", serialize(&untouched));
}
