//! Executing a matched rule as a persistent rewrite.

use super::matcher::SlotKind;
use super::{Bindings, KeepItem, RuleSpec, SpawnItem};
use crate::ptb::{NodeAddress, PtbTree};
use thiserror::Error;

/// The result of one rule application. `revised` holds the source tree with
/// the matched node rewritten, once per rule variant; a whole-node spawn at
/// the root leaves nothing to revise, so the list may be empty. `spawned`
/// holds the standalone trees built by the rule's spawn templates. The
/// source tree is never modified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteOutcome {
    pub revised: Vec<PtbTree>,
    pub spawned: Vec<PtbTree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule '{rule}' would leave an internal node with no children")]
    EmptyNode { rule: String },
    #[error("rule '{rule}' found no WHNP to substitute")]
    MissingWhnp { rule: String },
    #[error("rule '{rule}' applied at an address that is not in the tree")]
    InvalidTarget { rule: String },
}

/// Applies `rule` at the match described by `bindings`.
pub fn apply_rule(
    rule: &RuleSpec,
    tree: &PtbTree,
    address: &NodeAddress,
    bindings: &Bindings,
) -> Result<RewriteOutcome, RewriteError> {
    let node = tree
        .node_at(address)
        .filter(|n| !n.is_leaf())
        .ok_or_else(|| RewriteError::InvalidTarget {
            rule: rule.name.clone(),
        })?;

    let spawned = build_spawns(rule, node, bindings)?;

    let revised = if rule.spawns_self() {
        // the matched node moves out wholesale; ancestors emptied by the
        // excision are pruned, and excising the root leaves nothing
        tree.replace_at(address, None).into_iter().collect()
    } else {
        let mut out = Vec::with_capacity(rule.variants.len());
        for variant in &rule.variants {
            let replacement = revise_node(rule, node, bindings, variant)?;
            let tree = tree
                .replace_at(address, Some(replacement))
                .expect("replacement is non-empty");
            out.push(tree);
        }
        out
    };

    Ok(RewriteOutcome { revised, spawned })
}

fn revise_node(
    rule: &RuleSpec,
    node: &PtbTree,
    bindings: &Bindings,
    variant: &super::RewriteVariant,
) -> Result<PtbTree, RewriteError> {
    let children = node.children();
    let mut new_children = Vec::with_capacity(children.len());
    for (idx, child) in children.iter().enumerate() {
        match bindings.kind_at(idx) {
            SlotKind::Context => new_children.push(child.clone()),
            SlotKind::Lit => {} // literal-matched children are always removed
            SlotKind::Var(name) => {
                match variant.keep.iter().find(|item| item.var() == name) {
                    Some(KeepItem::Var(_)) => new_children.push(child.clone()),
                    Some(KeepItem::StripBrackets(_)) => {
                        new_children.extend(strip_brackets(child));
                    }
                    None => {} // deleted or moved into a spawn
                }
            }
        }
    }
    if new_children.is_empty() {
        return Err(RewriteError::EmptyNode {
            rule: rule.name.clone(),
        });
    }
    // hoist: a lone surviving child with the same tag replaces the node,
    // keeping trees canonical so that deduplication works on structure
    if new_children.len() == 1 && new_children[0].tag() == node.tag() {
        return Ok(new_children.pop().unwrap());
    }
    Ok(PtbTree::Internal {
        label: node.label().expect("matched node is internal").clone(),
        children: new_children,
    })
}

fn strip_brackets(node: &PtbTree) -> Vec<PtbTree> {
    node.children()
        .iter()
        .filter(|c| !matches!(c.tag(), Some("-LRB-") | Some("-RRB-")))
        .cloned()
        .collect()
}

fn build_spawns(
    rule: &RuleSpec,
    node: &PtbTree,
    bindings: &Bindings,
) -> Result<Vec<PtbTree>, RewriteError> {
    let bound = |name: &str| -> Result<&PtbTree, RewriteError> {
        bindings
            .var_index(name)
            .and_then(|i| node.children().get(i))
            .ok_or_else(|| RewriteError::InvalidTarget {
                rule: rule.name.clone(),
            })
    };

    let mut out = Vec::with_capacity(rule.spawns.len());
    for template in &rule.spawns {
        let mut items = Vec::new();
        for item in &template.items {
            match item {
                SpawnItem::SelfNode => items.push(node.clone()),
                SpawnItem::Var(v) => items.push(bound(v)?.clone()),
                SpawnItem::Scaffold { tag, token } => {
                    items.push(PtbTree::preterminal(tag.clone(), token.clone()));
                }
                SpawnItem::StripBrackets(v) => {
                    items.extend(strip_brackets(bound(v)?));
                }
                SpawnItem::SubstWhnp {
                    clause,
                    replacement,
                } => {
                    items.push(subst_whnp(rule, bound(clause)?, bound(replacement)?)?);
                }
            }
        }
        if items.is_empty() {
            return Err(RewriteError::EmptyNode {
                rule: rule.name.clone(),
            });
        }
        let spawn = if items.len() == 1 && items[0].tag() == Some(template.root_tag.as_str()) {
            items.pop().unwrap()
        } else {
            PtbTree::internal(template.root_tag.clone(), items)
        };
        out.push(spawn);
    }
    Ok(out)
}

fn subst_whnp(
    rule: &RuleSpec,
    clause: &PtbTree,
    replacement: &PtbTree,
) -> Result<PtbTree, RewriteError> {
    let targets = clause.find_nodes(|n| n.tag() == Some("WHNP"));
    let Some(addr) = targets.first() else {
        return Err(RewriteError::MissingWhnp {
            rule: rule.name.clone(),
        });
    };
    clause
        .replace_at(addr, Some(replacement.clone()))
        .ok_or_else(|| RewriteError::MissingWhnp {
            rule: rule.name.clone(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptb::{detokenize, parse_ptb, serialize};
    use crate::rules::{load_ruleset, match_rule, RuleSet};

    fn rules(text: &str) -> RuleSet {
        load_ruleset(text, "test").unwrap()
    }

    fn apply_at(rs: &RuleSet, name: &str, tree: &PtbTree, addr: NodeAddress) -> RewriteOutcome {
        let rule = rs.get(name).unwrap();
        let b = match_rule(rule, tree, &addr).unwrap();
        apply_rule(rule, tree, &addr, &b).unwrap()
    }

    fn render(tree: &PtbTree) -> String {
        detokenize(&tree.tokens())
    }

    #[test]
    fn delete_with_hoist() {
        let rs = rules("rule pp mode=optional tags=()\n  match NP [ $a:NP $p:PP ]\n  keep [ $a ]\n  del { $p }\n");
        let t = parse_ptb(
            "(S (VP (VB explore) (NP (NP (DT the) (NN role)) (PP (IN of) (NP (NNS domains))))))",
        )
        .unwrap();
        let out = apply_at(&rs, "pp", &t, NodeAddress(vec![0, 1]));
        assert_eq!(out.revised.len(), 1);
        assert!(out.spawned.is_empty());
        assert_eq!(
            serialize(&out.revised[0]),
            "(S (VP (VB explore) (NP (DT the) (NN role))))"
        );
        // purity: the source is unchanged and re-application agrees
        let again = apply_at(&rs, "pp", &t, NodeAddress(vec![0, 1]));
        assert_eq!(out, again);
    }

    #[test]
    fn scaffold_spawn() {
        let rs = rules(
            "rule npvp mode=optional tags=()\n  match NP [ $a:NP $v:VP ]\n  where first_pos($v) in {VBG VBN}\n  keep [ $a ]\n  spawn { S: $a lit(MD,\"can\") lit(VB,\"be\") $v }\n",
        );
        let t = parse_ptb(
            "(NP (NP (DT the) (JJ protein-interaction) (NNS motifs)) (VP (VBN found) (PP (IN within) (NP (PRP$ their) (NN gene) (NNS products)))))",
        )
        .unwrap();
        let out = apply_at(&rs, "npvp", &t, NodeAddress::root());
        assert_eq!(out.revised.len(), 1);
        assert_eq!(out.spawned.len(), 1);
        assert_eq!(
            render(&out.spawned[0]),
            "The protein-interaction motifs can be found within their gene products."
        );
        assert_eq!(render(&out.revised[0]), "The protein-interaction motifs.");
    }

    #[test]
    fn two_variant_coordination() {
        let rs = rules(
            "rule coord mode=optional tags=()\n  match VP|PP|ADJP [ $a:@ , CC $b:@ ... ]\n  keep [ $a ]\n  del { $b }\n  keep [ $b ]\n  del { $a }\n",
        );
        let t = parse_ptb(
            "(VP (VP (VB prevent)) (, ,) (CC or) (VP (VB combat)) (, ,) (NP (DT the) (NN emergence)))",
        )
        .unwrap();
        let out = apply_at(&rs, "coord", &t, NodeAddress::root());
        assert_eq!(out.revised.len(), 2);
        assert_eq!(render(&out.revised[0]), "Prevent, the emergence.");
        assert_eq!(render(&out.revised[1]), "Combat, the emergence.");
    }

    #[test]
    fn self_spawn_excises_node() {
        let rs = rules(
            "rule ss mode=optional tags=()\n  match S [ ... ]\n  where self_contains(NP)\n  where self_contains(VP)\n  spawn { S: self }\n",
        );
        let t = parse_ptb(
            "(S (NP (NN x)) (VP (VBD said) (SBAR (IN that) (S (NP (NN y)) (VP (VBD ran))))))",
        )
        .unwrap();
        // at the embedded S: spawn it, excise it from the remainder
        let out = apply_at(&rs, "ss", &t, NodeAddress(vec![1, 1, 1]));
        assert_eq!(out.spawned.len(), 1);
        assert_eq!(serialize(&out.spawned[0]), "(S (NP (NN y)) (VP (VBD ran)))");
        assert_eq!(
            serialize(&out.revised[0]),
            "(S (NP (NN x)) (VP (VBD said) (SBAR (IN that))))"
        );
        // at the root: the spawn is the whole tree and nothing remains
        let out = apply_at(&rs, "ss", &t, NodeAddress::root());
        assert!(out.revised.is_empty());
        assert_eq!(out.spawned[0], t);
    }

    #[test]
    fn strip_brackets_variant_hoists_inner_np() {
        let rs = rules(
            "rule abbrev mode=necessary tags=()\n  match NP [ $a:NP $p:PRN ]\n  where contains($p,NP)\n  keep [ $a ]\n  del { $p }\n  keep [ strip_brackets($p) ]\n  del { $a }\n",
        );
        let t = parse_ptb(
            "(NP (NP (NN interferon) (NN alpha) (NN receptor)) (PRN (-LRB- -LRB-) (NP (NN IFNalpha)) (-RRB- -RRB-)))",
        )
        .unwrap();
        let out = apply_at(&rs, "abbrev", &t, NodeAddress::root());
        assert_eq!(out.revised.len(), 2);
        assert_eq!(
            serialize(&out.revised[0]),
            "(NP (NN interferon) (NN alpha) (NN receptor))"
        );
        assert_eq!(serialize(&out.revised[1]), "(NP (NN IFNalpha))");
    }

    #[test]
    fn whnp_substitution() {
        let rs = rules(
            "rule rel mode=optional tags=()\n  match NP [ $a:NP $r:SBAR ]\n  where contains($r,WHNP)\n  keep [ $a ]\n  spawn { S: subst_whnp($r,$a) }\n",
        );
        let t = parse_ptb(
            "(NP (NP (DT the) (NNS partners)) (SBAR (WHNP (WDT that)) (S (VP (VBP underlie) (NP (DT the) (NN arrest))))))",
        )
        .unwrap();
        let out = apply_at(&rs, "rel", &t, NodeAddress::root());
        assert_eq!(render(&out.spawned[0]), "The partners underlie the arrest.");
        assert_eq!(serialize(&out.revised[0]), "(NP (DT the) (NNS partners))");
    }

    #[test]
    fn token_conservation_and_strict_shrink() {
        let rs = rules(
            "rule npvp mode=optional tags=()\n  match NP [ $a:NP $v:VP ]\n  where first_pos($v) in {VBG VBN}\n  keep [ $a ]\n  spawn { S: $a lit(MD,\"can\") lit(VB,\"be\") $v }\n",
        );
        let t =
            parse_ptb("(S (NP (NP (NN x)) (VP (VBN seen) (NP (NN y)))) (VP (VBZ works)))").unwrap();
        let out = apply_at(&rs, "npvp", &t, NodeAddress(vec![0]));
        let source: Vec<String> = t.tokens();
        for revised in &out.revised {
            let toks = revised.tokens();
            assert!(toks.len() < source.len());
            assert!(toks.iter().all(|tok| source.contains(tok)));
        }
        for spawned in &out.spawned {
            for tok in spawned.tokens() {
                assert!(source.contains(&tok) || tok == "can" || tok == "be");
            }
        }
    }
}
