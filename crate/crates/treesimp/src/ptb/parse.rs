//! Bracketed-format reader.
//!
//! Accepts one s-expression per call, optionally inside the unlabeled
//! `( ... )` wrapper many parsers emit. Canonicalization while reading:
//! the wrapper is stripped, `-NONE-` empty categories are dropped together
//! with any unary chain that dominated only them, and bracket escapes in
//! leaf tokens are normalized to literal characters.

use super::{NodeLabel, PtbTree};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed tree at byte {offset}: {message}")]
    MalformedTree { offset: usize, message: String },
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::MalformedTree {
        offset,
        message: message.into(),
    })
}

/// Far beyond any real parse; bounds recursion for every later pass over
/// the tree.
const MAX_DEPTH: usize = 1000;

const ESCAPES: [(&str, char); 6] = [
    ("-LRB-", '('),
    ("-RRB-", ')'),
    ("-LSB-", '['),
    ("-RSB-", ']'),
    ("-LCB-", '{'),
    ("-RCB-", '}'),
];

pub(super) fn unescape_token(token: &str) -> String {
    if !token.contains('-') {
        return token.to_string();
    }
    let mut out = token.to_string();
    for (code, ch) in ESCAPES {
        if out.contains(code) {
            out = out.replace(code, &ch.to_string());
        }
    }
    out
}

pub(super) fn escape_token(token: &str) -> String {
    if !token.contains(|c| "()[]{}".contains(c)) {
        return token.to_string();
    }
    let mut out = String::with_capacity(token.len() + 8);
    for ch in token.chars() {
        match ESCAPES.iter().find(|(_, c)| *c == ch) {
            Some((code, _)) => out.push_str(code),
            None => out.push(ch),
        }
    }
    out
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn atom(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() || b == b'(' || b == b')' {
                break;
            }
            self.pos += 1;
        }
        // atoms are delimited by ASCII, so the slice stays valid UTF-8
        std::str::from_utf8(&self.bytes[start..self.pos]).unwrap()
    }
}

/// Parses one bracketed tree into canonical form.
pub fn parse_ptb(text: &str) -> Result<PtbTree, ParseError> {
    let mut sc = Scanner::new(text);
    sc.skip_ws();
    if sc.peek() != Some(b'(') {
        return err(sc.pos, "expected '('");
    }
    let tree = parse_node(&mut sc, 0)?;
    sc.skip_ws();
    if sc.pos < sc.bytes.len() {
        return err(sc.pos, "trailing content after tree");
    }
    match tree {
        Some(t) if !t.is_leaf() => Ok(t),
        Some(_) => err(0, "top-level node is a bare token"),
        None => err(0, "tree contains only empty categories"),
    }
}

/// Returns `Ok(None)` for subtrees consisting solely of `-NONE-` material.
fn parse_node(sc: &mut Scanner, depth: usize) -> Result<Option<PtbTree>, ParseError> {
    let open = sc.pos;
    if depth > MAX_DEPTH {
        return err(open, format!("nesting deeper than {MAX_DEPTH}"));
    }
    sc.pos += 1; // consume '('
    sc.skip_ws();
    match sc.peek() {
        None => err(sc.pos, "unbalanced brackets: unexpected end of input"),
        Some(b')') => err(open, "empty node"),
        Some(b'(') => {
            // unlabeled wrapper node
            let children = parse_children(sc, open, depth)?;
            match children.len() {
                1 => {
                    if children[0].is_leaf() {
                        err(open, "unlabeled node wraps a bare token")
                    } else {
                        Ok(Some(children[0].clone()))
                    }
                }
                0 => Ok(None),
                n => err(open, format!("unlabeled node with {n} children")),
            }
        }
        Some(_) => {
            let raw_label = sc.atom();
            let label = NodeLabel::parse(raw_label);
            sc.skip_ws();
            if sc.peek() == Some(b')') {
                return err(open, format!("label '{raw_label}' with no children"));
            }
            let had_material = {
                let children = parse_children(sc, open, depth)?;
                if children.is_empty() {
                    None
                } else {
                    Some(children)
                }
            };
            match had_material {
                None => Ok(None), // all children were empty categories
                Some(children) => {
                    if label.tag == "-NONE-" {
                        return Ok(None);
                    }
                    Ok(Some(PtbTree::Internal { label, children }))
                }
            }
        }
    }
}

fn parse_children(sc: &mut Scanner, open: usize, depth: usize) -> Result<Vec<PtbTree>, ParseError> {
    let mut children = Vec::new();
    loop {
        sc.skip_ws();
        match sc.peek() {
            None => return err(sc.pos, "unbalanced brackets: unexpected end of input"),
            Some(b')') => {
                sc.pos += 1;
                return Ok(children);
            }
            Some(b'(') => {
                if let Some(child) = parse_node(sc, depth + 1)? {
                    // drop preterminals over empty categories entirely
                    if child.tag() != Some("-NONE-") {
                        children.push(child);
                    }
                }
            }
            Some(_) => {
                let tok = sc.atom();
                if tok.is_empty() {
                    return err(open, "unexpected character");
                }
                children.push(PtbTree::leaf(tok));
            }
        }
    }
}
