//! Penn-Treebank constituency trees: parsing, rendering, traversal, and
//! persistent (copy-on-write) surgery.

mod parse;
mod render;

pub use parse::{parse_ptb, ParseError};
pub use render::{detokenize, serialize};

use serde::Serialize;
use std::fmt;

/// A node label: the bare tag used for matching plus an optional function
/// suffix (`-SBJ`, `=2`, ...) that round-trips through serialization but is
/// ignored by every comparison the rewrite machinery makes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeLabel {
    pub tag: String,
    pub suffix: Option<String>,
}

impl NodeLabel {
    pub fn new(tag: impl Into<String>) -> Self {
        NodeLabel {
            tag: tag.into(),
            suffix: None,
        }
    }

    /// Splits a raw label like `NP-SBJ=2` into tag `NP` and suffix `-SBJ=2`.
    /// Labels that start with `-` (`-LRB-`, `-NONE-`) are kept whole.
    pub fn parse(raw: &str) -> Self {
        if raw.starts_with('-') {
            return NodeLabel::new(raw);
        }
        match raw.find(['-', '=']) {
            Some(idx) => NodeLabel {
                tag: raw[..idx].to_string(),
                suffix: Some(raw[idx..].to_string()),
            },
            None => NodeLabel::new(raw),
        }
    }

    /// The full label as written in bracketed form.
    pub fn raw(&self) -> String {
        match &self.suffix {
            Some(s) => format!("{}{}", self.tag, s),
            None => self.tag.clone(),
        }
    }

    pub fn is_clause(&self) -> bool {
        matches!(self.tag.as_str(), "S" | "SBAR" | "SBARQ" | "SINV" | "SQ")
    }

    pub fn is_participle(&self) -> bool {
        matches!(self.tag.as_str(), "VBG" | "VBN")
    }

    pub fn is_nominal_head_tag(&self) -> bool {
        matches!(self.tag.as_str(), "NN" | "NNS" | "NNP" | "NNPS")
    }

    pub fn is_determinative_or_numeral(&self) -> bool {
        matches!(self.tag.as_str(), "DT" | "CD" | "PDT")
    }
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.raw())
    }
}

/// An immutable labeled ordered tree. Internal nodes carry phrase/POS labels,
/// leaves carry surface tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PtbTree {
    Internal {
        label: NodeLabel,
        children: Vec<PtbTree>,
    },
    Leaf {
        token: String,
    },
}

impl PtbTree {
    pub fn internal(tag: impl Into<String>, children: Vec<PtbTree>) -> Self {
        PtbTree::Internal {
            label: NodeLabel::new(tag),
            children,
        }
    }

    /// A leaf token. PTB bracket escapes (`-LRB-` etc.) are normalized to the
    /// literal characters so that equality and yields see surface forms.
    pub fn leaf(token: impl Into<String>) -> Self {
        PtbTree::Leaf {
            token: parse::unescape_token(&token.into()),
        }
    }

    /// A POS tag over a single word.
    pub fn preterminal(tag: impl Into<String>, token: impl Into<String>) -> Self {
        PtbTree::internal(tag, vec![PtbTree::leaf(token)])
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, PtbTree::Leaf { .. })
    }

    pub fn label(&self) -> Option<&NodeLabel> {
        match self {
            PtbTree::Internal { label, .. } => Some(label),
            PtbTree::Leaf { .. } => None,
        }
    }

    /// The matching tag of an internal node, or `None` for a leaf.
    pub fn tag(&self) -> Option<&str> {
        self.label().map(|l| l.tag.as_str())
    }

    pub fn children(&self) -> &[PtbTree] {
        match self {
            PtbTree::Internal { children, .. } => children,
            PtbTree::Leaf { .. } => &[],
        }
    }

    /// An internal node whose single child is a leaf.
    pub fn is_preterminal(&self) -> bool {
        match self {
            PtbTree::Internal { children, .. } => children.len() == 1 && children[0].is_leaf(),
            PtbTree::Leaf { .. } => false,
        }
    }

    /// The word of a preterminal, if this is one.
    pub fn preterminal_token(&self) -> Option<&str> {
        match self {
            PtbTree::Internal { children, .. } if self.is_preterminal() => match &children[0] {
                PtbTree::Leaf { token } => Some(token),
                _ => None,
            },
            _ => None,
        }
    }

    /// Left-to-right leaf tokens.
    pub fn tokens(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_tokens(&mut out);
        out
    }

    fn collect_tokens(&self, out: &mut Vec<String>) {
        match self {
            PtbTree::Leaf { token } => out.push(token.clone()),
            PtbTree::Internal { children, .. } => {
                for c in children {
                    c.collect_tokens(out);
                }
            }
        }
    }

    pub fn token_count(&self) -> usize {
        match self {
            PtbTree::Leaf { .. } => 1,
            PtbTree::Internal { children, .. } => children.iter().map(|c| c.token_count()).sum(),
        }
    }

    /// POS tag of the leftmost leaf's preterminal, walking the left spine.
    pub fn first_leaf_pos(&self) -> Option<&str> {
        match self {
            PtbTree::Leaf { .. } => None,
            PtbTree::Internal { label, children } => {
                if self.is_preterminal() {
                    Some(&label.tag)
                } else {
                    children.first().and_then(|c| c.first_leaf_pos())
                }
            }
        }
    }

    /// The node at a child-index path, if the path is valid.
    pub fn node_at(&self, addr: &NodeAddress) -> Option<&PtbTree> {
        let mut node = self;
        for &i in &addr.0 {
            node = node.children().get(i)?;
        }
        Some(node)
    }

    /// Addresses of all nodes satisfying `pred`, in depth-first pre-order.
    pub fn find_nodes<F>(&self, pred: F) -> Vec<NodeAddress>
    where
        F: Fn(&PtbTree) -> bool,
    {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.walk(&pred, &mut path, &mut out);
        out
    }

    fn walk<F>(&self, pred: &F, path: &mut Vec<usize>, out: &mut Vec<NodeAddress>)
    where
        F: Fn(&PtbTree) -> bool,
    {
        if pred(self) {
            out.push(NodeAddress(path.clone()));
        }
        for (i, c) in self.children().iter().enumerate() {
            path.push(i);
            c.walk(pred, path, out);
            path.pop();
        }
    }

    /// Pre-order addresses of all internal nodes.
    pub fn internal_addresses(&self) -> Vec<NodeAddress> {
        self.find_nodes(|n| !n.is_leaf())
    }

    /// Pre-order (address, node) pairs for all internal nodes; one traversal
    /// instead of a root navigation per address.
    pub fn internal_nodes(&self) -> Vec<(NodeAddress, &PtbTree)> {
        fn walk<'t>(
            node: &'t PtbTree,
            path: &mut Vec<usize>,
            out: &mut Vec<(NodeAddress, &'t PtbTree)>,
        ) {
            if node.is_leaf() {
                return;
            }
            out.push((NodeAddress(path.clone()), node));
            for (i, c) in node.children().iter().enumerate() {
                path.push(i);
                walk(c, path, out);
                path.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }

    /// Rebuilds the tree with the node at `addr` replaced (`Some`) or excised
    /// (`None`). Ancestors emptied by an excision are excised in turn; the
    /// result is `None` when nothing remains. The input tree is untouched.
    pub fn replace_at(&self, addr: &NodeAddress, replacement: Option<PtbTree>) -> Option<PtbTree> {
        self.replace_path(&addr.0, replacement)
    }

    fn replace_path(&self, path: &[usize], replacement: Option<PtbTree>) -> Option<PtbTree> {
        let Some((&i, rest)) = path.split_first() else {
            return replacement;
        };
        let PtbTree::Internal { label, children } = self else {
            return Some(self.clone());
        };
        let mut new_children = Vec::with_capacity(children.len());
        for (j, c) in children.iter().enumerate() {
            if j == i {
                if let Some(new_child) = c.replace_path(rest, replacement.clone()) {
                    new_children.push(new_child);
                }
            } else {
                new_children.push(c.clone());
            }
        }
        if new_children.is_empty() {
            None
        } else {
            Some(PtbTree::Internal {
                label: label.clone(),
                children: new_children,
            })
        }
    }
}

impl fmt::Display for PtbTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serialize(self))
    }
}

/// A root-to-node child-index path: a stable rewrite-target identifier
/// within one tree snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeAddress(pub Vec<usize>);

impl NodeAddress {
    pub fn root() -> Self {
        NodeAddress(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Self {
        let mut path = self.0.clone();
        path.push(i);
        NodeAddress(path)
    }
}

impl fmt::Display for NodeAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}
