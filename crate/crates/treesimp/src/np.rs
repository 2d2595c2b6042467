//! Base noun-phrase reduction: strip premodifiers, keep the optional leading
//! determinative or numeral and the head noun.
//!
//! A base NP is an NP node all of whose children are preterminals — the tree
//! analogue of a chunker's minimal noun phrase. The head is the last child
//! with a nominal tag. Coordinated base NPs are left alone (removing
//! material across a CC would delete a conjunct's head), as are NPs with no
//! nominal child at all.

use crate::ptb::{NodeAddress, PtbTree};

/// Record of one reduced noun phrase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseNpEdit {
    pub address: NodeAddress,
    pub removed_tokens: Vec<String>,
    pub kept_determinative: Option<String>,
    pub head_noun: String,
}

/// The revised tree plus a record of every reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NpOutcome {
    pub revised: PtbTree,
    pub edits: Vec<BaseNpEdit>,
}

/// Depth-first pre-order addresses of all base NPs.
pub fn find_base_nps(tree: &PtbTree) -> Vec<NodeAddress> {
    tree.find_nodes(is_base_np)
}

fn is_base_np(node: &PtbTree) -> bool {
    node.tag() == Some("NP")
        && !node.children().is_empty()
        && node.children().iter().all(|c| c.is_preterminal())
}

/// Reduces every base NP to `[DT|CD|PDT]? head`. NPs already in that shape
/// are untouched; no tokens are ever added, so the result is idempotent.
pub fn strip_premodifiers(tree: &PtbTree) -> NpOutcome {
    let mut edits = Vec::new();
    let mut path = Vec::new();
    let revised = rewrite(tree, &mut path, &mut edits);
    NpOutcome { revised, edits }
}

fn rewrite(node: &PtbTree, path: &mut Vec<usize>, edits: &mut Vec<BaseNpEdit>) -> PtbTree {
    if is_base_np(node) {
        if let Some((reduced, edit)) = reduce_base_np(node, &NodeAddress(path.clone())) {
            edits.push(edit);
            return reduced;
        }
        return node.clone();
    }
    match node {
        PtbTree::Leaf { .. } => node.clone(),
        PtbTree::Internal { label, children } => {
            let new_children = children
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    path.push(i);
                    let out = rewrite(c, path, edits);
                    path.pop();
                    out
                })
                .collect();
            PtbTree::Internal {
                label: label.clone(),
                children: new_children,
            }
        }
    }
}

fn reduce_base_np(node: &PtbTree, address: &NodeAddress) -> Option<(PtbTree, BaseNpEdit)> {
    let children = node.children();
    if children.iter().any(|c| c.tag() == Some("CC")) {
        return None;
    }
    let head_idx = children
        .iter()
        .rposition(|c| c.label().is_some_and(|l| l.is_nominal_head_tag()))?;
    let det_idx = (head_idx != 0
        && children[0]
            .label()
            .is_some_and(|l| l.is_determinative_or_numeral()))
    .then_some(0);

    let keep = |i: usize| Some(i) == det_idx || i == head_idx;
    let removed_tokens: Vec<String> = children
        .iter()
        .enumerate()
        .filter(|(i, _)| !keep(*i))
        .filter_map(|(_, c)| c.preterminal_token().map(str::to_string))
        .collect();
    if removed_tokens.is_empty() {
        return None;
    }

    let new_children: Vec<PtbTree> = children
        .iter()
        .enumerate()
        .filter(|(i, _)| keep(*i))
        .map(|(_, c)| c.clone())
        .collect();
    let edit = BaseNpEdit {
        address: address.clone(),
        removed_tokens,
        kept_determinative: det_idx
            .and_then(|i| children[i].preterminal_token())
            .map(str::to_string),
        head_noun: children[head_idx]
            .preterminal_token()
            .expect("head is a preterminal")
            .to_string(),
    };
    let reduced = PtbTree::Internal {
        label: node.label().expect("base NP is internal").clone(),
        children: new_children,
    };
    Some((reduced, edit))
}
