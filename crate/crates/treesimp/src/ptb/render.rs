//! Writers: canonical single-line bracketed form (the deduplication key)
//! and plain-text sentence rendering.

use super::PtbTree;

/// Canonical single-line bracketed serialization, exactly one space between
/// elements. `parse_ptb(serialize(t)) == t` for every tree.
pub fn serialize(tree: &PtbTree) -> String {
    let mut out = String::new();
    write_node(tree, &mut out);
    out
}

fn write_node(tree: &PtbTree, out: &mut String) {
    match tree {
        PtbTree::Leaf { token } => out.push_str(&super::parse::escape_token(token)),
        PtbTree::Internal { label, children } => {
            out.push('(');
            out.push_str(&label.raw());
            for c in children {
                out.push(' ');
                write_node(c, out);
            }
            out.push(')');
        }
    }
}

const NO_SPACE_BEFORE: [&str; 6] = [",", ".", ";", ":", ")", "%"];
const SENTENCE_FINAL: [&str; 3] = [".", "!", "?"];

/// Renders a token sequence as a sentence: single spaces, no space before
/// `, . ; : ) %` or after `(`, first alphabetic character uppercased, and a
/// final period appended when the last token is not sentence-final
/// punctuation.
pub fn detokenize(tokens: &[String]) -> String {
    if tokens.is_empty() {
        return String::new();
    }
    let mut out = String::new();
    let mut prev: Option<&str> = None;
    for tok in tokens {
        let glue = match prev {
            None => false,
            Some("(") => false,
            Some(_) => !NO_SPACE_BEFORE.contains(&tok.as_str()),
        };
        if glue {
            out.push(' ');
        }
        out.push_str(tok);
        prev = Some(tok);
    }
    if !SENTENCE_FINAL.contains(&tokens[tokens.len() - 1].as_str()) {
        out.push('.');
    }
    capitalize_first_alphabetic(&out)
}

fn capitalize_first_alphabetic(s: &str) -> String {
    let Some((idx, ch)) = s.char_indices().find(|(_, c)| c.is_alphabetic()) else {
        return s.to_string();
    };
    if ch.is_uppercase() {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len());
    out.push_str(&s[..idx]);
    out.extend(ch.to_uppercase());
    out.push_str(&s[idx + ch.len_utf8()..]);
    out
}

#[cfg(test)]
mod tests {
    use super::super::{parse_ptb, PtbTree};
    use super::*;

    fn toks(words: &[&str]) -> Vec<String> {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn serialize_round_trips_examples() {
        for text in [
            "(NP (DT the) (NN role))",
            "(NP-SBJ (DT the) (NN role))",
            "(S (NP (NN x)) (VP (VBZ y) (NP (NN z))))",
        ] {
            let t = parse_ptb(text).unwrap();
            assert_eq!(serialize(&t), text);
            assert_eq!(parse_ptb(&serialize(&t)).unwrap(), t);
        }
    }

    #[test]
    fn serialize_escapes_paren_tokens() {
        let t = PtbTree::internal(
            "PRN",
            vec![
                PtbTree::preterminal("-LRB-", "("),
                PtbTree::preterminal("NN", "x"),
                PtbTree::preterminal("-RRB-", ")"),
            ],
        );
        assert_eq!(serialize(&t), "(PRN (-LRB- -LRB-) (NN x) (-RRB- -RRB-))");
        assert_eq!(parse_ptb(&serialize(&t)).unwrap(), t);
    }

    #[test]
    fn detokenize_basic() {
        assert_eq!(
            detokenize(&toks(&["the", "glucocorticoid", "binds"])),
            "The glucocorticoid binds."
        );
    }

    #[test]
    fn detokenize_keeps_existing_final_period() {
        let words = [
            "MyoD",
            "DNA",
            "binding",
            "activity",
            "and",
            "the",
            "cdk",
            "inhibitor",
            "MyoD",
            "downstream",
            "effector",
            "p21",
            "are",
            "induced",
            ".",
        ];
        assert_eq!(
            detokenize(&toks(&words)),
            "MyoD DNA binding activity and the cdk inhibitor MyoD downstream effector p21 are induced."
        );
    }

    #[test]
    fn detokenize_punctuation_attachment() {
        assert_eq!(
            detokenize(&toks(&["we", "ran", ",", "then", "stopped", "."])),
            "We ran, then stopped."
        );
        assert_eq!(
            detokenize(&toks(&["x", "(", "y", ")", "rose", "50", "%"])),
            "X (y) rose 50%."
        );
        // square brackets are not in the attach list and keep their spaces
        assert_eq!(
            detokenize(&toks(&["[", "Ca2+", "]", "o", "increased"])),
            "[ Ca2+ ] o increased."
        );
    }

    #[test]
    fn detokenize_empty() {
        assert_eq!(detokenize(&[]), "");
    }
}
