//! Pattern matching of a rule against one tree node.

use super::{Condition, PatternElem, RuleSpec, Subject, TagRef};
use crate::ptb::{NodeAddress, PtbTree};
use std::collections::BTreeMap;
use std::ops::Range;

/// A successful match: where the non-gap window sits among the children and
/// which child each variable bound. Children left of the window (leading
/// gap) and right of it (trailing gap) are anonymous context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bindings {
    pub address: NodeAddress,
    pub window: Range<usize>,
    vars: BTreeMap<String, usize>,
    lits: Vec<usize>,
}

impl Bindings {
    /// Child index bound to a variable.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.get(name).copied()
    }

    /// Address of the child bound to a variable.
    pub fn var_address(&self, name: &str) -> Option<NodeAddress> {
        self.var_index(name).map(|i| self.address.child(i))
    }

    /// Child indices matched by literal tags (these are always deleted).
    pub fn lit_indices(&self) -> &[usize] {
        &self.lits
    }

    pub(super) fn kind_at(&self, idx: usize) -> SlotKind {
        if idx < self.window.start || idx >= self.window.end {
            return SlotKind::Context;
        }
        if self.lits.contains(&idx) {
            return SlotKind::Lit;
        }
        match self.vars.iter().find(|(_, &i)| i == idx) {
            Some((name, _)) => SlotKind::Var(name.clone()),
            None => SlotKind::Context,
        }
    }
}

pub(super) enum SlotKind {
    Context,
    Lit,
    Var(String),
}

/// Matches `rule` at `address` in `tree`. Non-match is `None`, never an
/// error. When end gaps allow several window placements, the leading gap is
/// greedy: the window sits as far right as possible.
pub fn match_rule(rule: &RuleSpec, tree: &PtbTree, address: &NodeAddress) -> Option<Bindings> {
    match_node(rule, tree.node_at(address)?, address)
}

/// [`match_rule`] with the node already resolved; callers traversing a tree
/// avoid re-navigating from the root for every rule attempt.
pub fn match_node(rule: &RuleSpec, node: &PtbTree, address: &NodeAddress) -> Option<Bindings> {
    let node_tag = node.tag()?;
    if !rule.parent_tags.iter().any(|t| t == node_tag) {
        return None;
    }

    let children = node.children();
    let elems = rule.window_elems();
    let k = elems.len();
    let n = children.len();
    if n < k {
        return None;
    }

    let leading = rule.leading_gap();
    let trailing = rule.trailing_gap();
    let starts: Vec<usize> = match (leading, trailing) {
        (false, false) => {
            if n != k {
                return None;
            }
            vec![0]
        }
        (false, true) => vec![0],
        (true, false) => vec![n - k],
        (true, true) => (0..=n - k).rev().collect(),
    };

    'candidates: for start in starts {
        let mut vars = BTreeMap::new();
        let mut lits = Vec::new();
        for (j, elem) in elems.iter().enumerate() {
            let child = &children[start + j];
            match elem {
                PatternElem::Var { name, tag } => {
                    let want = match tag {
                        TagRef::Tag(t) => t.as_str(),
                        TagRef::Parent => node_tag,
                    };
                    if child.tag() != Some(want) {
                        continue 'candidates;
                    }
                    vars.insert(name.clone(), start + j);
                }
                PatternElem::Lit(t) => {
                    if child.tag() != Some(t.as_str()) {
                        continue 'candidates;
                    }
                    lits.push(start + j);
                }
                PatternElem::Gap => unreachable!("gaps are stripped from window elements"),
            }
        }
        let bindings = Bindings {
            address: address.clone(),
            window: start..start + k,
            vars,
            lits,
        };
        if conditions_hold(rule, node, &bindings) {
            return Some(bindings);
        }
        return None; // deterministic: conditions see only the first structural match
    }
    None
}

fn conditions_hold(rule: &RuleSpec, node: &PtbTree, bindings: &Bindings) -> bool {
    rule.conditions
        .iter()
        .all(|group| group.iter().any(|c| condition_holds(c, node, bindings)))
}

fn condition_holds(cond: &Condition, node: &PtbTree, bindings: &Bindings) -> bool {
    let subject_node = |subject: &Subject| -> Option<&PtbTree> {
        match subject {
            Subject::Node => Some(node),
            Subject::Var(v) => bindings.var_index(v).map(|i| &node.children()[i]),
        }
    };
    match cond {
        Condition::Contains { subject, tag } => subject_node(subject)
            .is_some_and(|s| s.children().iter().any(|c| c.tag() == Some(tag.as_str()))),
        Condition::Lacks { subject, tag } => subject_node(subject)
            .is_some_and(|s| s.children().iter().all(|c| c.tag() != Some(tag.as_str()))),
        Condition::FirstLeafPos { var, tags } => bindings
            .var_index(var)
            .and_then(|i| node.children()[i].first_leaf_pos())
            .is_some_and(|pos| tags.contains(pos)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptb::parse_ptb;
    use crate::rules::load_ruleset;

    fn one_rule(text: &str) -> crate::rules::RuleSet {
        load_ruleset(text, "test").unwrap()
    }

    #[test]
    fn binds_anchored_pattern() {
        let rs = one_rule("rule pp mode=optional tags=()\n  match NP [ $a:NP $p:PP ]\n  keep [ $a ]\n  del { $p }\n");
        let t = parse_ptb("(NP (NP (DT the) (NN role)) (PP (IN of) (NP (NN x))))").unwrap();
        let b = match_rule(&rs.rules[0], &t, &NodeAddress::root()).unwrap();
        assert_eq!(b.var_index("a"), Some(0));
        assert_eq!(b.var_index("p"), Some(1));
        assert_eq!(b.var_address("p").unwrap(), NodeAddress(vec![1]));
    }

    #[test]
    fn arity_mismatch_is_no_match() {
        let rs = one_rule("rule pp mode=optional tags=()\n  match NP [ $a:NP $p:PP ]\n  keep [ $a ]\n  del { $p }\n");
        let t = parse_ptb("(NP (DT the) (NN role))").unwrap();
        assert!(match_rule(&rs.rules[0], &t, &NodeAddress::root()).is_none());
    }

    #[test]
    fn first_pos_condition_gates_match() {
        let rs = one_rule(
            "rule vp mode=optional tags=()\n  match NP [ $a:NP $v:VP ]\n  where first_pos($v) in {VBG VBN}\n  keep [ $a ]\n  del { $v }\n",
        );
        let found =
            parse_ptb("(NP (NP (NN x)) (VP (VBN found) (PP (IN in) (NP (NN y)))))").unwrap();
        assert!(match_rule(&rs.rules[0], &found, &NodeAddress::root()).is_some());
        let infinitive = parse_ptb("(NP (NP (NN x)) (VP (TO to) (VP (VB act))))").unwrap();
        assert!(match_rule(&rs.rules[0], &infinitive, &NodeAddress::root()).is_none());
    }

    #[test]
    fn leading_gap_is_greedy() {
        let rs =
            one_rule("rule term mode=optional tags=()\n  match VP [ ... , $p:PP ]\n  del { $p }\n");
        // anchored right: the final `, PP` pair matches, the rest is context
        let t = parse_ptb(
            "(VP (VBN determined) (PP (IN for) (NP (NN x))) (, ,) (PP (IN for) (NP (NN y))))",
        )
        .unwrap();
        let b = match_rule(&rs.rules[0], &t, &NodeAddress::root()).unwrap();
        assert_eq!(b.var_index("p"), Some(3));
        assert_eq!(b.window, 2..4);
        // no comma: no match
        let t2 = parse_ptb("(VP (VBN determined) (PP (IN for) (NP (NN x))))").unwrap();
        assert!(match_rule(&rs.rules[0], &t2, &NodeAddress::root()).is_none());
    }

    #[test]
    fn double_gap_prefers_rightmost_window() {
        let rs = one_rule(
            "rule sbar mode=optional tags=()\n  match VP [ ... , $r:SBAR ... ]\n  del { $r }\n",
        );
        let t = parse_ptb(
            "(VP (VBD ran) (, ,) (SBAR (IN as) (S (NN a))) (, ,) (SBAR (IN as) (S (NN b))) (NP (NN tail)))",
        )
        .unwrap();
        let b = match_rule(&rs.rules[0], &t, &NodeAddress::root()).unwrap();
        assert_eq!(b.var_index("r"), Some(4));
    }

    #[test]
    fn parent_alternation_and_at_tag() {
        let rs = one_rule(
            "rule coord mode=optional tags=()\n  match VP|PP [ $a:@ , CC $b:@ ... ]\n  keep [ $a ]\n  del { $b }\n  keep [ $b ]\n  del { $a }\n",
        );
        let vp =
            parse_ptb("(VP (VP (VB go)) (, ,) (CC or) (VP (VB stay)) (NP (NN here)))").unwrap();
        assert!(match_rule(&rs.rules[0], &vp, &NodeAddress::root()).is_some());
        let pp = parse_ptb("(PP (PP (IN in)) (, ,) (CC or) (PP (IN out)))").unwrap();
        assert!(match_rule(&rs.rules[0], &pp, &NodeAddress::root()).is_some());
        // children must carry the parent tag, not just any tag
        let mixed = parse_ptb("(VP (PP (IN in)) (, ,) (CC or) (VP (VB stay)))").unwrap();
        assert!(match_rule(&rs.rules[0], &mixed, &NodeAddress::root()).is_none());
    }

    #[test]
    fn containment_is_child_level() {
        let rs = one_rule(
            "rule cc mode=optional tags=()\n  match S [ $c:S , $n:NP $v:VP ... ]\n  where lacks($c,NP) or lacks($c,VP)\n  keep [ $n $v ]\n  del { $c }\n",
        );
        // the fronted clause has a VP child but no NP child, even though an
        // NP sits deeper inside
        let t = parse_ptb(
            "(S (S (VP (TO To) (VP (VB see) (NP (NN it))))) (, ,) (NP (PRP we)) (VP (VBD ran)) (. .))",
        )
        .unwrap();
        assert!(match_rule(&rs.rules[0], &t, &NodeAddress::root()).is_some());
        // a complete clause (NP and VP children) is not removable
        let full = parse_ptb(
            "(S (S (NP (NN he)) (VP (VBD left))) (, ,) (NP (PRP we)) (VP (VBD ran)) (. .))",
        )
        .unwrap();
        assert!(match_rule(&rs.rules[0], &full, &NodeAddress::root()).is_none());
    }
}
