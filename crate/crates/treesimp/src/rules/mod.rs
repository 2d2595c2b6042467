//! The declarative rewrite-rule engine.
//!
//! A rule names a parent tag (or several alternatives), a child pattern with
//! variables, literal tags, and end gaps, side conditions, and a disposition
//! for every matched child: kept in the revised tree, spawned into a new
//! standalone tree, or deleted. Rules are loaded from a small text DSL
//! ([`load_ruleset`]), matched against tree nodes ([`match_rule`]), and
//! executed as persistent rewrites ([`apply_rule`]).

mod apply;
mod dsl;
mod matcher;

pub use apply::{apply_rule, RewriteError, RewriteOutcome};
pub use dsl::load_ruleset;
pub use matcher::{match_node, match_rule, Bindings};

use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleMode {
    /// Applied once, in place, during the first pass; the rewrite loses no
    /// content so the unrewritten form is not kept.
    Necessary,
    /// Applied exhaustively during the worklist phase; both the source tree
    /// and the rewritten trees are kept.
    Optional,
}

impl fmt::Display for RuleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleMode::Necessary => write!(f, "necessary"),
            RuleMode::Optional => write!(f, "optional"),
        }
    }
}

/// A tag slot in a pattern element: a concrete tag, or `@`, which stands for
/// whichever parent-tag alternative matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TagRef {
    Tag(String),
    Parent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternElem {
    /// Binds one child whose label tag equals the given tag.
    Var { name: String, tag: TagRef },
    /// Matches one child by tag without binding it. Literal-matched children
    /// are always removed by the rewrite.
    Lit(String),
    /// `...`: zero or more context children, allowed only at the pattern
    /// ends. Context children are preserved by the rewrite.
    Gap,
}

/// What a condition inspects: a bound variable or the matched node itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Var(String),
    Node,
}

/// Side conditions. Containment means an immediate constituent: `contains`
/// and `lacks` look at the children of the subject, not all descendants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    Contains { subject: Subject, tag: String },
    Lacks { subject: Subject, tag: String },
    FirstLeafPos { var: String, tags: BTreeSet<String> },
}

/// An element of a `keep` list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KeepItem {
    Var(String),
    /// The bound subtree's children with `-LRB-`/`-RRB-` children removed,
    /// spliced into the kept position.
    StripBrackets(String),
}

impl KeepItem {
    pub fn var(&self) -> &str {
        match self {
            KeepItem::Var(v) | KeepItem::StripBrackets(v) => v,
        }
    }
}

/// An element of a spawn template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpawnItem {
    /// Deep copy of a bound subtree.
    Var(String),
    /// Deep copy of the matched node itself; the revised tree excises the
    /// node. Must be the only item of its template.
    SelfNode,
    /// A literal inserted preterminal, e.g. `(MD can)`. Scaffold tokens are
    /// the only output tokens not drawn from the source tree.
    Scaffold { tag: String, token: String },
    /// As in keep lists: the bound subtree's children minus brackets.
    StripBrackets(String),
    /// Deep copy of `clause` with its first WHNP descendant replaced by a
    /// deep copy of `replacement`.
    SubstWhnp { clause: String, replacement: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpawnTemplate {
    pub root_tag: String,
    pub items: Vec<SpawnItem>,
}

/// One revision of the matched node: which matched children are retained
/// and which are deleted outright. A rule carries one or two variants; each
/// variant yields its own revised tree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RewriteVariant {
    pub keep: Vec<KeepItem>,
    pub delete: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSpec {
    pub name: String,
    pub mode: RuleMode,
    pub tags: BTreeSet<String>,
    /// Parent tag alternatives; usually one, e.g. `VP|PP|ADJP` for phrase
    /// coordination.
    pub parent_tags: Vec<String>,
    pub pattern: Vec<PatternElem>,
    /// Conjunction of disjunctions: every inner group must have one true
    /// member.
    pub conditions: Vec<Vec<Condition>>,
    pub variants: Vec<RewriteVariant>,
    pub spawns: Vec<SpawnTemplate>,
}

impl RuleSpec {
    pub fn is_necessary(&self) -> bool {
        self.mode == RuleMode::Necessary
    }

    /// True when some spawn template copies the whole matched node.
    pub fn spawns_self(&self) -> bool {
        self.spawns
            .iter()
            .any(|t| t.items.iter().any(|i| matches!(i, SpawnItem::SelfNode)))
    }

    pub(crate) fn pattern_vars(&self) -> Vec<&str> {
        self.pattern
            .iter()
            .filter_map(|e| match e {
                PatternElem::Var { name, .. } => Some(name.as_str()),
                _ => None,
            })
            .collect()
    }

    pub(crate) fn leading_gap(&self) -> bool {
        matches!(self.pattern.first(), Some(PatternElem::Gap))
    }

    pub(crate) fn trailing_gap(&self) -> bool {
        self.pattern.len() > 1 && matches!(self.pattern.last(), Some(PatternElem::Gap))
    }

    /// Pattern elements other than the end gaps.
    pub(crate) fn window_elems(&self) -> &[PatternElem] {
        let start = usize::from(self.leading_gap());
        let end = self.pattern.len() - usize::from(self.trailing_gap());
        &self.pattern[start..end]
    }

    /// Whether `tags` intersects the filter (an absent filter passes all).
    pub fn passes_filter(&self, filter: Option<&BTreeSet<String>>) -> bool {
        match filter {
            None => true,
            Some(f) => self.tags.intersection(f).next().is_some(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RuleSet {
    pub rules: Vec<RuleSpec>,
    pub source_path: String,
}

impl RuleSet {
    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&RuleSpec> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn necessary(&self) -> impl Iterator<Item = &RuleSpec> {
        self.rules.iter().filter(|r| r.is_necessary())
    }

    pub fn optional(&self) -> impl Iterator<Item = &RuleSpec> {
        self.rules.iter().filter(|r| !r.is_necessary())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid rule{}: {message}", rule.as_ref().map(|r| format!(" '{r}'")).unwrap_or_default())]
    Semantic {
        rule: Option<String>,
        message: String,
    },
}
