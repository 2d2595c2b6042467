//! Seeded synthetic trees: right-branching chains for scaling measurements
//! and a grammar sampler for fuzz corpora. Everything here is deterministic
//! in the seed.
//!
//! The sampler's vocabulary deliberately avoids the scaffold words "can" and
//! "be", so tests can count scaffold tokens in outputs exactly.

use crate::ptb::PtbTree;
use rand::seq::SliceRandom;
use rand::Rng;

const NOUNS: &[&str] = &[
    "receptor",
    "ligand",
    "protein",
    "kinase",
    "cell",
    "pathway",
    "domain",
    "complex",
    "inhibitor",
    "expression",
];
const PLURALS: &[&str] = &[
    "receptors",
    "ligands",
    "cells",
    "pathways",
    "domains",
    "complexes",
    "inhibitors",
    "signals",
];
const PROPER: &[&str] = &["GITR", "TNF", "IFNalpha", "p53", "JAK2"];
const ADJS: &[&str] = &["novel", "human", "murine", "viral", "active", "nuclear"];
const VBZ: &[&str] = &[
    "binds",
    "activates",
    "inhibits",
    "regulates",
    "encodes",
    "mediates",
];
const VBD: &[&str] = &["bound", "activated", "inhibited", "regulated", "showed"];
const VBP: &[&str] = &["bind", "regulate", "underlie", "mediate"];
const VBN: &[&str] = &["found", "induced", "expressed", "observed", "required"];
const VBG: &[&str] = &["signaling", "suggesting", "demonstrating", "binding"];
const VB: &[&str] = &[
    "bind", "activate", "inhibit", "prevent", "combat", "explore",
];
const MD: &[&str] = &["may", "must", "could", "should"];
const PREP: &[&str] = &["of", "in", "by", "with", "for"];
const DET: &[&str] = &["the", "a", "these"];
const NUM: &[&str] = &["two", "three"];

/// A right-branching sentence with exactly `tokens` leaves (at least 10): a
/// subject, a verb, and a run of comma-separated prepositional groups whose
/// objects nest rightward (`the N of the N ...`). The terminal `, PP` pair
/// is a rewrite site, and each rewrite exposes the next one, so the set of
/// derived trees grows linearly with length and total work superlinearly.
pub fn right_branching<R: Rng>(tokens: usize, rng: &mut R) -> PtbTree {
    assert!(tokens >= 10, "right-branching sentences need >= 10 tokens");
    // subject (2) + verb (1) + period (1) + first group (3*depth)
    // + (k-1) comma-prefixed groups; absorb remainders as extra nesting
    // depth (3 tokens each) and subject adjectives (1 each)
    let groups = (tokens - 3) / 7;
    let mut remainder = (tokens - 3) % 7;
    let mut depths = vec![2usize; groups];
    let mut i = 0;
    while remainder >= 3 {
        depths[i % groups] += 1;
        remainder -= 3;
        i += 1;
    }

    let noun = |rng: &mut R| *NOUNS.choose(rng).unwrap();
    let object = |rng: &mut R, depth: usize| {
        let mut np = PtbTree::internal(
            "NP",
            vec![
                PtbTree::preterminal("DT", "the"),
                PtbTree::preterminal("NN", noun(rng)),
            ],
        );
        // postmodifier attached flat ([DT NN PP]); nesting adds depth
        // without adding rewrite sites of its own
        for _ in 1..depth {
            np = PtbTree::internal(
                "NP",
                vec![
                    PtbTree::preterminal("DT", "the"),
                    PtbTree::preterminal("NN", noun(rng)),
                    PtbTree::internal("PP", vec![PtbTree::preterminal("IN", "of"), np]),
                ],
            );
        }
        np
    };

    let mut vp_children = vec![PtbTree::preterminal("VBD", *VBD.choose(rng).unwrap())];
    for (j, depth) in depths.iter().enumerate() {
        if j > 0 {
            vp_children.push(PtbTree::preterminal(",", ","));
        }
        let obj = object(rng, *depth);
        vp_children.push(PtbTree::internal(
            "PP",
            vec![PtbTree::preterminal("IN", *PREP.choose(rng).unwrap()), obj],
        ));
    }

    let mut subject = vec![PtbTree::preterminal("DT", "the")];
    for _ in 0..remainder {
        subject.push(PtbTree::preterminal("JJ", *ADJS.choose(rng).unwrap()));
    }
    subject.push(PtbTree::preterminal("NN", noun(rng)));

    PtbTree::internal(
        "S",
        vec![
            PtbTree::internal("NP", subject),
            PtbTree::internal("VP", vp_children),
            PtbTree::preterminal(".", "."),
        ],
    )
}

/// A random sentence tree of at most `max_tokens` leaves (must be at least
/// 4), rooted at S with a subject, a predicate, and a final period. The
/// sampler covers the structures the shipped rules rewrite: postmodified and
/// coordinated phrases, parentheticals, relative and embedded clauses,
/// fronted subjectless clauses.
pub fn random_sentence<R: Rng>(rng: &mut R, max_tokens: usize) -> PtbTree {
    assert!(max_tokens >= 4, "a sentence needs at least 4 tokens");
    // the budget steers sampling toward the target; mandatory words can
    // overshoot it slightly, so oversized draws are rejected
    for _ in 0..100 {
        let mut g = Gen {
            rng,
            left: max_tokens,
        };
        let t = g.sentence();
        if t.token_count() <= max_tokens {
            return t;
        }
    }
    let mut g = Gen { rng, left: 0 };
    PtbTree::internal(
        "S",
        vec![
            PtbTree::internal("NP", vec![g.word("NN", NOUNS)]),
            PtbTree::internal("VP", vec![g.word("VBZ", VBZ)]),
            PtbTree::preterminal(".", "."),
        ],
    )
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    left: usize,
}

impl<R: Rng> Gen<'_, R> {
    fn word(&mut self, tag: &str, list: &[&str]) -> PtbTree {
        self.left = self.left.saturating_sub(1);
        PtbTree::preterminal(tag, *list.choose(self.rng).unwrap())
    }

    fn chance(&mut self, p: f64, min_left: usize) -> bool {
        self.left >= min_left && self.rng.gen_bool(p)
    }

    fn sentence(&mut self) -> PtbTree {
        self.left = self.left.saturating_sub(1); // reserve the period
        let mut children = Vec::new();
        if self.chance(0.25, 12) {
            children.push(self.fronted_clause());
            self.left = self.left.saturating_sub(1);
            children.push(PtbTree::preterminal(",", ","));
        }
        children.push(self.np(0));
        children.push(self.vp(0));
        children.push(PtbTree::preterminal(".", "."));
        PtbTree::internal("S", children)
    }

    /// A subjectless infinitive clause, a fronted-clause removal site.
    fn fronted_clause(&mut self) -> PtbTree {
        self.left = self.left.saturating_sub(2); // to + verb
        let to = PtbTree::preterminal("TO", "to");
        let verb = PtbTree::preterminal("VB", *VB.choose(self.rng).unwrap());
        let obj = self.np(2);
        PtbTree::internal(
            "S",
            vec![PtbTree::internal(
                "VP",
                vec![to, PtbTree::internal("VP", vec![verb, obj])],
            )],
        )
    }

    fn base_np(&mut self) -> PtbTree {
        if self.chance(0.1, 4) {
            // coordinated base NP (left alone by premodifier stripping)
            let a = self.word("NN", NOUNS);
            self.left = self.left.saturating_sub(1);
            let cc = PtbTree::preterminal("CC", "and");
            let b = self.word("NN", NOUNS);
            return PtbTree::internal("NP", vec![a, cc, b]);
        }
        let mut children = Vec::new();
        if self.chance(0.6, 2) {
            children.push(if self.rng.gen_bool(0.85) {
                self.word("DT", DET)
            } else {
                self.word("CD", NUM)
            });
        }
        while children.len() < 3 && self.chance(0.3, 2) {
            children.push(self.word("JJ", ADJS));
        }
        children.push(match self.rng.gen_range(0..4) {
            0 => self.word("NNS", PLURALS),
            1 => self.word("NNP", PROPER),
            _ => self.word("NN", NOUNS),
        });
        PtbTree::internal("NP", children)
    }

    fn np(&mut self, depth: usize) -> PtbTree {
        let host = self.base_np();
        if depth >= 3 || !self.chance(0.45, 5) {
            return host;
        }
        let postmod = match self.rng.gen_range(0..10) {
            0..=3 => self.pp(depth + 1),
            4 | 5 => {
                // participial postmodifier
                let v = self.word("VBN", VBN);
                let rest = self.pp(depth + 1);
                PtbTree::internal("VP", vec![v, rest])
            }
            6 => {
                let j = self.word("JJ", ADJS);
                let rest = self.pp(depth + 1);
                PtbTree::internal("ADJP", vec![j, rest])
            }
            7 | 8 => {
                // relative clause
                self.left = self.left.saturating_sub(2);
                let wh = PtbTree::internal("WHNP", vec![PtbTree::preterminal("WDT", "that")]);
                let v = PtbTree::preterminal("VBP", *VBP.choose(self.rng).unwrap());
                let obj = self.np(depth + 1);
                PtbTree::internal(
                    "SBAR",
                    vec![
                        wh,
                        PtbTree::internal("S", vec![PtbTree::internal("VP", vec![v, obj])]),
                    ],
                )
            }
            _ => {
                // parenthesized abbreviation
                self.left = self.left.saturating_sub(3);
                PtbTree::internal(
                    "PRN",
                    vec![
                        PtbTree::preterminal("-LRB-", "("),
                        PtbTree::internal(
                            "NP",
                            vec![PtbTree::preterminal(
                                "NNP",
                                *PROPER.choose(self.rng).unwrap(),
                            )],
                        ),
                        PtbTree::preterminal("-RRB-", ")"),
                    ],
                )
            }
        };
        PtbTree::internal("NP", vec![host, postmod])
    }

    fn pp(&mut self, depth: usize) -> PtbTree {
        if depth < 3 && self.chance(0.08, 8) {
            // coordinated prepositional phrases
            let a = self.plain_pp(depth + 1);
            self.left = self.left.saturating_sub(2);
            let comma = PtbTree::preterminal(",", ",");
            let cc = PtbTree::preterminal("CC", "or");
            let b = self.plain_pp(depth + 1);
            return PtbTree::internal("PP", vec![a, comma, cc, b]);
        }
        self.plain_pp(depth)
    }

    fn plain_pp(&mut self, depth: usize) -> PtbTree {
        let p = self.word("IN", PREP);
        let obj = self.np(depth.max(2));
        PtbTree::internal("PP", vec![p, obj])
    }

    fn vp(&mut self, depth: usize) -> PtbTree {
        if depth >= 2 {
            return self.plain_vp(depth);
        }
        match self.rng.gen_range(0..12) {
            0 | 1 if self.left >= 8 => {
                // modal head with a trailing subjectless clause
                let md = self.word("MD", MD);
                let inner = self.plain_vp(depth + 1);
                self.left = self.left.saturating_sub(2);
                let comma = PtbTree::preterminal(",", ",");
                let g = PtbTree::preterminal("VBG", *VBG.choose(self.rng).unwrap());
                let obj = self.np(depth + 2);
                let trailing = PtbTree::internal("S", vec![PtbTree::internal("VP", vec![g, obj])]);
                PtbTree::internal("VP", vec![md, inner, comma, trailing])
            }
            2 | 3 if self.left >= 8 => {
                // terminal prepositional phrase after a comma
                let v = self.word("VBD", VBD);
                let first = self.pp(depth + 1);
                self.left = self.left.saturating_sub(1);
                let comma = PtbTree::preterminal(",", ",");
                let terminal = self.plain_pp(depth + 1);
                PtbTree::internal("VP", vec![v, first, comma, terminal])
            }
            4 if self.left >= 8 => {
                // trailing relative clause after a comma
                let v = self.word("VBD", VBD);
                self.left = self.left.saturating_sub(2);
                let comma = PtbTree::preterminal(",", ",");
                let as_word = PtbTree::preterminal("IN", "as");
                let vbn = self.word("VBN", VBN);
                let tail = self.plain_pp(depth + 1);
                let sbar = PtbTree::internal(
                    "SBAR",
                    vec![
                        as_word,
                        PtbTree::internal("S", vec![PtbTree::internal("VP", vec![vbn, tail])]),
                    ],
                );
                PtbTree::internal("VP", vec![v, comma, sbar])
            }
            5 | 6 if self.left >= 7 => {
                // coordinated verb phrases sharing an object
                self.left = self.left.saturating_sub(4);
                let a = PtbTree::internal(
                    "VP",
                    vec![PtbTree::preterminal("VB", *VB.choose(self.rng).unwrap())],
                );
                let comma = PtbTree::preterminal(",", ",");
                let cc = PtbTree::preterminal("CC", "or");
                let b = PtbTree::internal(
                    "VP",
                    vec![PtbTree::preterminal("VB", *VB.choose(self.rng).unwrap())],
                );
                let obj = self.np(depth + 1);
                PtbTree::internal("VP", vec![a, comma, cc, b, obj])
            }
            7 if self.left >= 7 => {
                // embedded complete clause
                let v = self.word("VBD", VBD);
                self.left = self.left.saturating_sub(1);
                let that = PtbTree::preterminal("IN", "that");
                let subj = self.np(depth + 1);
                let pred = self.plain_vp(depth + 1);
                let clause = PtbTree::internal("S", vec![subj, pred]);
                PtbTree::internal("VP", vec![v, PtbTree::internal("SBAR", vec![that, clause])])
            }
            _ => self.plain_vp(depth),
        }
    }

    fn plain_vp(&mut self, depth: usize) -> PtbTree {
        let v = self.word("VBZ", VBZ);
        let mut children = vec![v];
        if self.chance(0.7, 3) {
            children.push(if self.rng.gen_bool(0.6) {
                self.np(depth + 1)
            } else {
                self.pp(depth + 1)
            });
        }
        PtbTree::internal("VP", children)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn right_branching_has_exact_token_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [10, 20, 40, 80, 160, 320] {
            let t = right_branching(n, &mut rng);
            assert_eq!(t.token_count(), n);
        }
    }

    #[test]
    fn generators_are_seed_deterministic() {
        let corpus = |seed: u64| -> Vec<String> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50)
                .map(|_| crate::serialize(&random_sentence(&mut rng, 30)))
                .collect()
        };
        assert_eq!(corpus(7), corpus(7));
        assert_ne!(corpus(7), corpus(8));
    }

    #[test]
    fn random_sentences_respect_budget_and_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..300 {
            let t = random_sentence(&mut rng, 25);
            assert!(t.token_count() <= 25);
            assert_eq!(t.tag(), Some("S"));
            let toks = t.tokens();
            assert_eq!(toks.last().map(String::as_str), Some("."));
            assert!(toks.iter().all(|w| w != "can" && w != "be"));
            // parses back: tree is well formed
            let rt = crate::parse_ptb(&crate::serialize(&t)).unwrap();
            assert_eq!(rt, t);
        }
    }
}
