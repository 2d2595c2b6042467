//! The simplification engine: a single in-place pass of necessary rules,
//! then an exhaustive worklist closure of optional rules over an ordered,
//! deduplicated set of trees.

use crate::np::strip_premodifiers;
use crate::ptb::{detokenize, serialize, NodeAddress, PtbTree};
use crate::rules::{apply_rule, match_node, match_rule, RewriteError, RuleSet, RuleSpec};
use std::collections::{BTreeSet, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineOptions {
    /// Reduce base noun phrases to determinative + head before simplifying.
    /// Off by default: the reduction is lossy.
    pub np_replace: bool,
    /// Emit the necessary-pass base sentence(s) as outputs. When off, bases
    /// still seed the worklist and the deduplication set.
    pub emit_original: bool,
    /// Run only rules whose tag set intersects this one.
    pub rule_tag_filter: Option<BTreeSet<String>>,
    /// Cap on the total number of trees in the result set.
    pub max_generated: usize,
    /// Cap on rule applications per sentence; guards against user rulesets
    /// that defeat the shrinking property.
    pub max_steps: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            np_replace: false,
            emit_original: true,
            rule_tag_filter: None,
            max_generated: 512,
            max_steps: 10_000,
        }
    }
}

impl EngineOptions {
    fn validate(&self) -> Result<(), EngineError> {
        if self.max_generated == 0 || self.max_steps == 0 {
            return Err(EngineError::InvalidOptions(
                "generation and step caps must be positive".into(),
            ));
        }
        if let Some(filter) = &self.rule_tag_filter {
            if filter.is_empty() {
                return Err(EngineError::InvalidOptions(
                    "rule tag filter must not be empty".into(),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("step budget of {max_steps} rule applications exhausted")]
    StepBudgetExceeded { max_steps: usize },
    #[error("generation cap of {max_generated} trees reached")]
    GenerationCapReached { max_generated: usize },
    #[error("invalid options: {0}")]
    InvalidOptions(String),
    #[error("rewrite failed: {0}")]
    Rewrite(String),
}

/// One simplified sentence with the tree it renders, the (rule, node)
/// firings that produced it, and its raw token count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplifiedSentence {
    pub tree: PtbTree,
    pub sentence: String,
    pub provenance: Vec<(String, NodeAddress)>,
    pub token_count: usize,
    pub is_base: bool,
}

/// Ordered, deduplicated simplification outputs: base sentence(s) first,
/// then discovery order. No two outputs share a canonical serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplificationResult {
    pub outputs: Vec<SimplifiedSentence>,
    pub truncated: bool,
    pub error: Option<EngineError>,
}

struct StepBudget {
    used: usize,
    max: usize,
}

impl StepBudget {
    fn new(max: usize) -> Self {
        StepBudget { used: 0, max }
    }

    fn step(&mut self) -> Result<(), EngineError> {
        self.used += 1;
        if self.used > self.max {
            Err(EngineError::StepBudgetExceeded {
                max_steps: self.max,
            })
        } else {
            Ok(())
        }
    }
}

type Provenance = Vec<(String, NodeAddress)>;

/// Runs only the necessary rules: one depth-first pass, re-attempting at
/// each node until quiet, never revisiting ancestors. Returns the revised
/// base tree first; a necessary rule with a second revision variant (the
/// abbreviation rule) or spawn templates contributes additional bases, each
/// of which gets the same treatment.
pub fn necessary_pass(tree: &PtbTree, rules: &RuleSet) -> Result<Vec<PtbTree>, EngineError> {
    let opts = EngineOptions::default();
    let mut budget = StepBudget::new(opts.max_steps);
    let bases = necessary_expand(tree, rules, &opts, &mut budget)?;
    Ok(bases.into_iter().map(|(t, _)| t).collect())
}

fn active<'r>(
    rules: &'r RuleSet,
    opts: &'r EngineOptions,
    necessary: bool,
) -> impl Iterator<Item = &'r RuleSpec> {
    rules
        .rules
        .iter()
        .filter(move |r| r.is_necessary() == necessary)
        .filter(move |r| r.passes_filter(opts.rule_tag_filter.as_ref()))
}

fn necessary_expand(
    tree: &PtbTree,
    rules: &RuleSet,
    opts: &EngineOptions,
    budget: &mut StepBudget,
) -> Result<Vec<(PtbTree, Provenance)>, EngineError> {
    let mut pending: VecDeque<(PtbTree, Provenance)> = VecDeque::new();
    let mut seen: HashSet<String> = HashSet::new();
    seen.insert(serialize(tree));
    pending.push_back((tree.clone(), Vec::new()));
    let mut done = Vec::new();

    while let Some((t, prov)) = pending.pop_front() {
        if let Some(base) =
            necessary_pass_one(t, prov, rules, opts, budget, &mut pending, &mut seen)?
        {
            done.push(base);
        }
    }
    Ok(done)
}

/// Processes one tree; side branches (extra variants, spawns) are queued.
/// Returns `None` when the tree excised itself away entirely.
fn necessary_pass_one(
    mut tree: PtbTree,
    mut prov: Provenance,
    rules: &RuleSet,
    opts: &EngineOptions,
    budget: &mut StepBudget,
    pending: &mut VecDeque<(PtbTree, Provenance)>,
    seen: &mut HashSet<String>,
) -> Result<Option<(PtbTree, Provenance)>, EngineError> {
    let mut cursor = NodeAddress::root();
    loop {
        // fire at the cursor until no necessary rule matches there
        while let Some(node) = tree.node_at(&cursor) {
            if node.is_leaf() {
                break;
            }
            let fired = active(rules, opts, true)
                .find_map(|rule| match_rule(rule, &tree, &cursor).map(|b| (rule, b)));
            let Some((rule, bindings)) = fired else {
                break;
            };
            budget.step()?;
            let outcome = match apply_rule(rule, &tree, &cursor, &bindings) {
                Ok(o) => o,
                Err(RewriteError::EmptyNode { .. }) => break,
                Err(e) => return Err(EngineError::Rewrite(e.to_string())),
            };
            prov.push((rule.name.clone(), cursor.clone()));
            let mut revised = outcome.revised.into_iter();
            let first = revised.next();
            for extra in revised.chain(outcome.spawned) {
                if seen.insert(serialize(&extra)) {
                    pending.push_back((extra, prov.clone()));
                }
            }
            match first {
                Some(t) => tree = t,
                None => return Ok(None),
            }
        }
        // advance in pre-order
        let node = tree.node_at(&cursor).expect("cursor stays valid");
        if !node.children().is_empty() {
            cursor = cursor.child(0);
            continue;
        }
        loop {
            let Some(last) = cursor.0.pop() else {
                return Ok(Some((tree, prov)));
            };
            let parent = tree.node_at(&cursor).expect("prefix of a valid address");
            if last + 1 < parent.children().len() {
                cursor = cursor.child(last + 1);
                break;
            }
        }
    }
}

/// Simplifies one tree: optional noun-phrase reduction, the necessary pass,
/// then a FIFO worklist over the growing set. Every (rule, node) match on a
/// popped tree contributes its revised and spawned trees; a tree enters the
/// set only if its canonical serialization is new. Sources stay in the set,
/// so single-step rewrites compose transitively.
pub fn simplify(tree: &PtbTree, rules: &RuleSet, opts: &EngineOptions) -> SimplificationResult {
    let mut entries: Vec<(PtbTree, Provenance, bool)> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut truncated = false;
    let mut error = None;

    'run: {
        if let Err(e) = opts.validate() {
            error = Some(e);
            break 'run;
        }
        let mut budget = StepBudget::new(opts.max_steps);
        let work = if opts.np_replace {
            strip_premodifiers(tree).revised
        } else {
            tree.clone()
        };

        let bases = match necessary_expand(&work, rules, opts, &mut budget) {
            Ok(b) => b,
            Err(e) => {
                error = Some(e);
                break 'run;
            }
        };
        for (t, prov) in bases {
            if !seen.insert(serialize(&t)) {
                continue;
            }
            if entries.len() >= opts.max_generated {
                truncated = true;
                error = Some(EngineError::GenerationCapReached {
                    max_generated: opts.max_generated,
                });
                break 'run;
            }
            entries.push((t, prov, true));
        }

        let mut cursor = 0;
        while cursor < entries.len() {
            let (src_tree, src_prov, _) = entries[cursor].clone();
            for (addr, node) in src_tree.internal_nodes() {
                for rule in active(rules, opts, false) {
                    let Some(bindings) = match_node(rule, node, &addr) else {
                        continue;
                    };
                    if let Err(e) = budget.step() {
                        error = Some(e);
                        break 'run;
                    }
                    let outcome = match apply_rule(rule, &src_tree, &addr, &bindings) {
                        Ok(o) => o,
                        // a gap-only context emptied the node; nothing to add
                        Err(RewriteError::EmptyNode { .. }) => continue,
                        Err(e) => {
                            error = Some(EngineError::Rewrite(e.to_string()));
                            break 'run;
                        }
                    };
                    for cand in outcome.revised.into_iter().chain(outcome.spawned) {
                        if !seen.insert(serialize(&cand)) {
                            continue;
                        }
                        if entries.len() >= opts.max_generated {
                            truncated = true;
                            error = Some(EngineError::GenerationCapReached {
                                max_generated: opts.max_generated,
                            });
                            break 'run;
                        }
                        let mut prov = src_prov.clone();
                        prov.push((rule.name.clone(), addr.clone()));
                        entries.push((cand, prov, false));
                    }
                }
            }
            cursor += 1;
        }
    }

    let outputs = entries
        .into_iter()
        .filter(|(_, _, is_base)| opts.emit_original || !is_base)
        .map(|(tree, provenance, is_base)| {
            let tokens = tree.tokens();
            SimplifiedSentence {
                sentence: detokenize(&tokens),
                token_count: tokens.len(),
                tree,
                provenance,
                is_base,
            }
        })
        .collect();

    SimplificationResult {
        outputs,
        truncated,
        error,
    }
}

/// Order-preserving map of [`simplify`] over many trees; one tree's budget
/// errors are recorded in its own result and do not abort the rest.
pub fn simplify_batch<'a, I>(
    trees: I,
    rules: &'a RuleSet,
    opts: &'a EngineOptions,
) -> impl Iterator<Item = SimplificationResult> + 'a
where
    I: IntoIterator<Item = PtbTree>,
    I::IntoIter: 'a,
{
    trees.into_iter().map(move |t| simplify(&t, rules, opts))
}
