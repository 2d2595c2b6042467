//! Loader for the rule DSL.
//!
//! One rule per block:
//!
//! ```text
//! rule np_vp_postmod  mode=optional tags=()
//!   match NP [ $a:NP $v:VP ]
//!   where first_pos($v) in {VBG VBN}
//!   keep  [ $a ]
//!   spawn { S: $a lit(MD,"can") lit(VB,"be") $v }
//! ```
//!
//! Pattern elements are `$name:TAG` variables (`$name:@` takes the matched
//! parent tag), bare literal tags, and `...` end gaps. `where` lines are
//! conjoined; `or` within one line disjoins predicates. A second `keep` line
//! starts a second revision variant; each `del` line attaches to the variant
//! opened by the `keep` line above it. `spawn` lines build standalone trees
//! (root tag `S` unless written as `TAG:`).

use super::*;

struct Draft {
    name: String,
    mode: RuleMode,
    tags: BTreeSet<String>,
    parent_tags: Option<Vec<String>>,
    pattern: Vec<PatternElem>,
    conditions: Vec<Vec<Condition>>,
    variants: Vec<RewriteVariant>,
    implicit_variant: bool,
    spawns: Vec<SpawnTemplate>,
}

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, DslError> {
    Err(DslError::Syntax {
        line,
        message: message.into(),
    })
}

fn semantic<T>(rule: &str, message: impl Into<String>) -> Result<T, DslError> {
    Err(DslError::Semantic {
        rule: Some(rule.to_string()),
        message: message.into(),
    })
}

/// Parses and validates a ruleset from DSL text.
pub fn load_ruleset(text: &str, source_path: &str) -> Result<RuleSet, DslError> {
    let mut rules: Vec<RuleSpec> = Vec::new();
    let mut draft: Option<Draft> = None;

    for (idx, raw_line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }

        if let Some(rest) = line.strip_prefix("rule ") {
            if let Some(d) = draft.take() {
                rules.push(finish(d)?);
            }
            draft = Some(parse_header(rest, lineno)?);
            continue;
        }

        let Some(d) = draft.as_mut() else {
            return syntax(lineno, "directive outside a rule block");
        };

        if let Some(rest) = line.strip_prefix("match ") {
            if d.parent_tags.is_some() {
                return syntax(lineno, "duplicate match line");
            }
            let (tags, pattern) = parse_match(rest, lineno)?;
            d.parent_tags = Some(tags);
            d.pattern = pattern;
        } else if let Some(rest) = line.strip_prefix("where ") {
            d.conditions.push(parse_where(rest, lineno)?);
        } else if let Some(rest) = line.strip_prefix("keep") {
            let items = parse_keep(rest.trim(), lineno)?;
            if d.implicit_variant {
                return syntax(lineno, "keep after a bare del line; put del after its keep");
            }
            if d.variants.len() == 2 {
                return syntax(lineno, "a rule may have at most two keep variants");
            }
            d.variants.push(RewriteVariant {
                keep: items,
                delete: Vec::new(),
            });
        } else if let Some(rest) = line.strip_prefix("del") {
            let items = parse_del(rest.trim(), lineno)?;
            if d.variants.is_empty() {
                d.variants.push(RewriteVariant::default());
                d.implicit_variant = true;
            }
            let v = d.variants.last_mut().unwrap();
            if !v.delete.is_empty() {
                return syntax(lineno, "variant already has a del line");
            }
            v.delete = items;
        } else if let Some(rest) = line.strip_prefix("spawn") {
            d.spawns.push(parse_spawn(rest.trim(), lineno)?);
        } else {
            return syntax(lineno, format!("unrecognized directive: {line}"));
        }
    }

    if let Some(d) = draft.take() {
        rules.push(finish(d)?);
    }

    if rules.is_empty() {
        return Err(DslError::Semantic {
            rule: None,
            message: "ruleset must contain at least one rule".into(),
        });
    }
    let mut seen = BTreeSet::new();
    for r in &rules {
        if !seen.insert(r.name.clone()) {
            return semantic(&r.name, "duplicate rule name");
        }
    }

    Ok(RuleSet {
        rules,
        source_path: source_path.to_string(),
    })
}

fn parse_header(rest: &str, lineno: usize) -> Result<Draft, DslError> {
    let mut words = rest.split_whitespace();
    let Some(name) = words.next() else {
        return syntax(lineno, "rule header needs a name");
    };
    let mut mode = None;
    let mut tags = BTreeSet::new();
    let remainder: Vec<&str> = words.collect();
    let remainder = remainder.join(" ");
    let mut rest_str = remainder.as_str();
    while !rest_str.is_empty() {
        rest_str = rest_str.trim_start();
        if let Some(r) = rest_str.strip_prefix("mode=") {
            let end = r.find(char::is_whitespace).unwrap_or(r.len());
            mode = Some(match &r[..end] {
                "necessary" => RuleMode::Necessary,
                "optional" => RuleMode::Optional,
                other => return syntax(lineno, format!("unknown mode '{other}'")),
            });
            rest_str = &r[end..];
        } else if let Some(r) = rest_str.strip_prefix("tags=(") {
            let Some(close) = r.find(')') else {
                return syntax(lineno, "unterminated tags=(...)");
            };
            tags = r[..close].split_whitespace().map(str::to_string).collect();
            rest_str = &r[close + 1..];
        } else if rest_str.is_empty() {
            break;
        } else {
            return syntax(lineno, format!("unexpected header text: {rest_str}"));
        }
    }
    let Some(mode) = mode else {
        return syntax(lineno, "rule header needs mode=necessary|optional");
    };
    Ok(Draft {
        name: name.to_string(),
        mode,
        tags,
        parent_tags: None,
        pattern: Vec::new(),
        conditions: Vec::new(),
        variants: Vec::new(),
        implicit_variant: false,
        spawns: Vec::new(),
    })
}

fn bracketed(rest: &str, open: char, close: char, lineno: usize) -> Result<&str, DslError> {
    let rest = rest.trim();
    let Some(inner) = rest.strip_prefix(open) else {
        return syntax(lineno, format!("expected '{open}'"));
    };
    let Some(inner) = inner.strip_suffix(close) else {
        return syntax(lineno, format!("expected closing '{close}'"));
    };
    Ok(inner.trim())
}

fn parse_match(rest: &str, lineno: usize) -> Result<(Vec<String>, Vec<PatternElem>), DslError> {
    let rest = rest.trim();
    let Some(bracket) = rest.find('[') else {
        return syntax(lineno, "match needs a [ ... ] pattern");
    };
    let tags: Vec<String> = rest[..bracket]
        .trim()
        .split('|')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    if tags.is_empty() {
        return syntax(lineno, "match needs a parent tag");
    }
    let inner = bracketed(&rest[bracket..], '[', ']', lineno)?;
    let mut pattern = Vec::new();
    for item in inner.split_whitespace() {
        if item == "..." {
            pattern.push(PatternElem::Gap);
        } else if let Some(var) = item.strip_prefix('$') {
            let Some((name, tag)) = var.split_once(':') else {
                return syntax(lineno, format!("variable '{item}' needs ':TAG'"));
            };
            if name.is_empty() || tag.is_empty() {
                return syntax(lineno, format!("malformed variable '{item}'"));
            }
            let tag = if tag == "@" {
                TagRef::Parent
            } else {
                TagRef::Tag(tag.to_string())
            };
            pattern.push(PatternElem::Var {
                name: name.to_string(),
                tag,
            });
        } else {
            pattern.push(PatternElem::Lit(item.to_string()));
        }
    }
    if pattern.is_empty() {
        return syntax(lineno, "empty pattern");
    }
    Ok((tags, pattern))
}

fn parse_where(rest: &str, lineno: usize) -> Result<Vec<Condition>, DslError> {
    let mut group = Vec::new();
    for pred in rest.split(" or ") {
        group.push(parse_predicate(pred.trim(), lineno)?);
    }
    Ok(group)
}

fn call_args<'a>(text: &'a str, name: &str) -> Option<Vec<&'a str>> {
    let inner = text
        .strip_prefix(name)?
        .strip_prefix('(')?
        .strip_suffix(')')?;
    Some(inner.split(',').map(str::trim).collect())
}

/// Whitespace-separated items, except that whitespace inside an unclosed
/// `(` belongs to the item: `subst_whnp($r, $a)` is one item.
fn split_items(inner: &str) -> Vec<String> {
    let mut items = Vec::new();
    let mut current = String::new();
    let mut depth = 0i32;
    for word in inner.split_whitespace() {
        if !current.is_empty() {
            current.push(' ');
        }
        current.push_str(word);
        depth += word
            .chars()
            .map(|c| i32::from(c == '(') - i32::from(c == ')'))
            .sum::<i32>();
        if depth <= 0 {
            items.push(std::mem::take(&mut current));
            depth = 0;
        }
    }
    if !current.is_empty() {
        items.push(current);
    }
    items
}

fn var_arg(arg: &str, lineno: usize) -> Result<String, DslError> {
    match arg.strip_prefix('$') {
        Some(v) if !v.is_empty() => Ok(v.to_string()),
        _ => syntax(lineno, format!("expected a $variable, got '{arg}'")),
    }
}

fn parse_predicate(pred: &str, lineno: usize) -> Result<Condition, DslError> {
    if let Some(args) = call_args(pred, "contains") {
        let [v, tag] = args[..] else {
            return syntax(lineno, "contains takes ($var, TAG)");
        };
        return Ok(Condition::Contains {
            subject: Subject::Var(var_arg(v, lineno)?),
            tag: tag.to_string(),
        });
    }
    if let Some(args) = call_args(pred, "lacks") {
        let [v, tag] = args[..] else {
            return syntax(lineno, "lacks takes ($var, TAG)");
        };
        return Ok(Condition::Lacks {
            subject: Subject::Var(var_arg(v, lineno)?),
            tag: tag.to_string(),
        });
    }
    if let Some(args) = call_args(pred, "self_contains") {
        let [tag] = args[..] else {
            return syntax(lineno, "self_contains takes (TAG)");
        };
        return Ok(Condition::Contains {
            subject: Subject::Node,
            tag: tag.to_string(),
        });
    }
    if let Some(args) = call_args(pred, "self_lacks") {
        let [tag] = args[..] else {
            return syntax(lineno, "self_lacks takes (TAG)");
        };
        return Ok(Condition::Lacks {
            subject: Subject::Node,
            tag: tag.to_string(),
        });
    }
    if let Some(rest) = pred.strip_prefix("first_pos(") {
        let Some(close) = rest.find(')') else {
            return syntax(lineno, "unterminated first_pos(");
        };
        let var = var_arg(rest[..close].trim(), lineno)?;
        let tail = rest[close + 1..].trim();
        let Some(set) = tail.strip_prefix("in") else {
            return syntax(lineno, "first_pos needs 'in {TAGS}'");
        };
        let inner = bracketed(set, '{', '}', lineno)?;
        let tags: BTreeSet<String> = inner.split_whitespace().map(str::to_string).collect();
        if tags.is_empty() {
            return syntax(lineno, "first_pos tag set is empty");
        }
        return Ok(Condition::FirstLeafPos { var, tags });
    }
    syntax(lineno, format!("unknown predicate: {pred}"))
}

fn parse_keep(rest: &str, lineno: usize) -> Result<Vec<KeepItem>, DslError> {
    let inner = bracketed(rest, '[', ']', lineno)?;
    let mut items = Vec::new();
    for item in split_items(inner) {
        let item = item.as_str();
        if let Some(args) = call_args(item, "strip_brackets") {
            let [v] = args[..] else {
                return syntax(lineno, "strip_brackets takes ($var)");
            };
            items.push(KeepItem::StripBrackets(var_arg(v, lineno)?));
        } else if item.starts_with('$') {
            items.push(KeepItem::Var(var_arg(item, lineno)?));
        } else {
            return syntax(lineno, format!("keep items are $vars, got '{item}'"));
        }
    }
    Ok(items)
}

fn parse_del(rest: &str, lineno: usize) -> Result<Vec<String>, DslError> {
    let inner = bracketed(rest, '{', '}', lineno)?;
    let mut items = Vec::new();
    for item in inner.split_whitespace() {
        items.push(var_arg(item, lineno)?);
    }
    if items.is_empty() {
        return syntax(lineno, "empty del list");
    }
    Ok(items)
}

fn parse_spawn(rest: &str, lineno: usize) -> Result<SpawnTemplate, DslError> {
    let inner = bracketed(rest, '{', '}', lineno)?;
    let mut root_tag = "S".to_string();
    let mut words = split_items(inner);
    if let Some(first) = words.first() {
        if let Some(tag) = first.strip_suffix(':') {
            if !tag.is_empty() && !first.starts_with('$') {
                root_tag = tag.to_string();
                words.remove(0);
            }
        }
    }
    let mut items = Vec::new();
    for item in &words {
        let item = item.as_str();
        if item == "self" {
            items.push(SpawnItem::SelfNode);
        } else if let Some(args) = call_args(item, "lit") {
            let [tag, token] = args[..] else {
                return syntax(lineno, "lit takes (TAG,\"token\")");
            };
            let token = token
                .strip_prefix('"')
                .and_then(|t| t.strip_suffix('"'))
                .ok_or(DslError::Syntax {
                    line: lineno,
                    message: "lit token must be quoted".into(),
                })?;
            if token.is_empty() {
                return syntax(lineno, "lit token is empty");
            }
            items.push(SpawnItem::Scaffold {
                tag: tag.to_string(),
                token: token.to_string(),
            });
        } else if let Some(args) = call_args(item, "strip_brackets") {
            let [v] = args[..] else {
                return syntax(lineno, "strip_brackets takes ($var)");
            };
            items.push(SpawnItem::StripBrackets(var_arg(v, lineno)?));
        } else if let Some(args) = call_args(item, "subst_whnp") {
            let [clause, replacement] = args[..] else {
                return syntax(lineno, "subst_whnp takes ($clause, $replacement)");
            };
            items.push(SpawnItem::SubstWhnp {
                clause: var_arg(clause, lineno)?,
                replacement: var_arg(replacement, lineno)?,
            });
        } else if item.starts_with('$') {
            items.push(SpawnItem::Var(var_arg(item, lineno)?));
        } else {
            return syntax(lineno, format!("unknown spawn item '{item}'"));
        }
    }
    if items.is_empty() {
        return syntax(lineno, "empty spawn template");
    }
    Ok(SpawnTemplate { root_tag, items })
}

/// Semantic validation: binding discipline, the keep/spawn/del partition per
/// variant, and a static guarantee that every variant removes tokens.
fn finish(d: Draft) -> Result<RuleSpec, DslError> {
    let name = d.name;
    let Some(parent_tags) = d.parent_tags else {
        return semantic(&name, "missing match line");
    };
    let mut variants = d.variants;
    if variants.is_empty() {
        variants.push(RewriteVariant::default());
    }
    let rule = RuleSpec {
        name: name.clone(),
        mode: d.mode,
        tags: d.tags,
        parent_tags,
        pattern: d.pattern,
        conditions: d.conditions,
        variants,
        spawns: d.spawns,
    };

    // gaps only at the pattern ends
    let interior = &rule.pattern
        [usize::from(rule.leading_gap())..rule.pattern.len() - usize::from(rule.trailing_gap())];
    if interior.iter().any(|e| matches!(e, PatternElem::Gap)) {
        return semantic(&name, "gaps are allowed only at the pattern ends");
    }

    let vars = rule.pattern_vars();
    {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert(*v) {
                return semantic(&name, format!("variable ${v} bound twice in pattern"));
            }
        }
    }
    let bound = |v: &str| vars.contains(&v);

    for group in &rule.conditions {
        for cond in group {
            let subject_var = match cond {
                Condition::Contains { subject, .. } | Condition::Lacks { subject, .. } => {
                    match subject {
                        Subject::Var(v) => Some(v),
                        Subject::Node => None,
                    }
                }
                Condition::FirstLeafPos { var, .. } => Some(var),
            };
            if let Some(v) = subject_var {
                if !bound(v) {
                    return semantic(&name, format!("condition references unbound ${v}"));
                }
            }
        }
    }

    let mut spawn_refs: BTreeSet<&str> = BTreeSet::new();
    let mut has_self = false;
    for t in &rule.spawns {
        for item in &t.items {
            match item {
                SpawnItem::Var(v) | SpawnItem::StripBrackets(v) => {
                    if !bound(v) {
                        return semantic(&name, format!("spawn references unbound ${v}"));
                    }
                    spawn_refs.insert(v);
                }
                SpawnItem::SubstWhnp {
                    clause,
                    replacement,
                } => {
                    for v in [clause, replacement] {
                        if !bound(v) {
                            return semantic(&name, format!("spawn references unbound ${v}"));
                        }
                        spawn_refs.insert(v);
                    }
                }
                SpawnItem::SelfNode => {
                    has_self = true;
                    if t.items.len() != 1 {
                        return semantic(&name, "self must be the only item of its spawn");
                    }
                }
                SpawnItem::Scaffold { .. } => {}
            }
        }
    }

    if has_self {
        let bare = rule.pattern.len() == 1 && matches!(rule.pattern[0], PatternElem::Gap);
        let plain_variants =
            rule.variants.len() == 1 && rule.variants[0] == RewriteVariant::default();
        if !bare || !plain_variants {
            return semantic(
                &name,
                "a self spawn requires a bare `...` pattern and no keep/del lines",
            );
        }
        return Ok(rule);
    }

    if rule.variants.len() > 2 {
        return semantic(&name, "at most two keep variants");
    }

    let has_lit = rule
        .pattern
        .iter()
        .any(|e| matches!(e, PatternElem::Lit(_)));
    let has_gap = rule.leading_gap() || rule.trailing_gap();

    for variant in &rule.variants {
        let mut kept: BTreeSet<&str> = BTreeSet::new();
        let mut strips = false;
        for item in &variant.keep {
            let v = item.var();
            if !bound(v) {
                return semantic(&name, format!("keep references unbound ${v}"));
            }
            if !kept.insert(v) {
                return semantic(&name, format!("${v} kept twice in one variant"));
            }
            strips |= matches!(item, KeepItem::StripBrackets(_));
        }
        let mut deleted: BTreeSet<&str> = BTreeSet::new();
        for v in &variant.delete {
            if !bound(v) {
                return semantic(&name, format!("del references unbound ${v}"));
            }
            deleted.insert(v);
        }

        let mut removes_something = has_lit || strips;
        for v in &vars {
            let in_keep = kept.contains(v);
            let in_del = deleted.contains(v);
            let in_spawn = spawn_refs.contains(v);
            if in_keep && in_del {
                return semantic(&name, format!("${v} both kept and deleted"));
            }
            if in_del && in_spawn {
                return semantic(&name, format!("${v} both deleted and spawned"));
            }
            if !in_keep && !in_del && !in_spawn {
                return semantic(
                    &name,
                    format!("${v} is not partitioned into keep/spawn/del"),
                );
            }
            removes_something |= !in_keep;
        }

        if !removes_something {
            return semantic(
                &name,
                "variant keeps every matched child: the rewrite would never shrink the tree",
            );
        }
        if variant.keep.is_empty() && !has_gap {
            return semantic(
                &name,
                "variant keeps nothing and the pattern has no gap: the node would always be emptied",
            );
        }
    }

    if rule.variants.len() == 1
        && rule.variants[0] == RewriteVariant::default()
        && rule.spawns.is_empty()
    {
        return semantic(&name, "rule has no keep, del, or spawn: it does nothing");
    }

    Ok(rule)
}
