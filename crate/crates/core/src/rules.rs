//! The four local orientation rules and their closure.
//!
//! Each rule orients one undirected edge `x -- y` as `x → y`:
//!
//! * **R1** `a → b`, `b -- c`, `a` and `c` non-adjacent: orient `b → c`.
//! * **R2** `a → b`, `b → c`, `a -- c`: orient `a → c`.
//! * **R3** `a -- b`, `a -- c`, `a -- d`, `c → b`, `d → b`, `c` and `d`
//!   non-adjacent: orient `a → b`.
//! * **R4** `a -- b`, `a -- c`, `c → d`, `d → b`, `c` and `b` non-adjacent,
//!   `a` adjacent to `d` by an edge of any kind: orient `a → b`.
//!
//! Reversing any of these orientations would create a new unshielded
//! collider or a directed cycle, so every rule is sound.

use std::fmt;

use crate::graph::Pdag;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrientationRule {
    R1,
    R2,
    R3,
    R4,
}

impl OrientationRule {
    pub const ALL: [OrientationRule; 4] = [Self::R1, Self::R2, Self::R3, Self::R4];
    /// The rules used to complete a pattern without background knowledge.
    pub const PATTERN: [OrientationRule; 3] = [Self::R1, Self::R2, Self::R3];
}

impl fmt::Display for OrientationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One match of a rule: the edge it orients and the vertices bound to the
/// rule's schematic, in `(a, b, c, d)` order (unused slots repeat `a`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct RuleFiring {
    pub rule: OrientationRule,
    pub tail: usize,
    pub head: usize,
    pub bound: [usize; 4],
}

impl RuleFiring {
    pub fn describe(&self, g: &Pdag) -> String {
        let arity = match self.rule {
            OrientationRule::R1 | OrientationRule::R2 => 3,
            OrientationRule::R3 | OrientationRule::R4 => 4,
        };
        let bound: Vec<&str> = self.bound[..arity].iter().map(|&v| g.name(v)).collect();
        format!(
            "{} on ({}) orients {} -> {}",
            self.rule,
            bound.join(", "),
            g.name(self.tail),
            g.name(self.head)
        )
    }
}

/// Enumerates matches of `rule` in lexicographic order of the bound
/// vertices. `visit` returns `true` to stop early.
fn scan(g: &Pdag, rule: OrientationRule, mut visit: impl FnMut(RuleFiring) -> bool) {
    let n = g.n();
    match rule {
        OrientationRule::R1 => {
            for a in 0..n {
                for b in g.children_of(a) {
                    for c in g.undirected_of(b) {
                        if c != a && !g.is_adjacent(a, c) {
                            let f = RuleFiring {
                                rule,
                                tail: b,
                                head: c,
                                bound: [a, b, c, a],
                            };
                            if visit(f) {
                                return;
                            }
                        }
                    }
                }
            }
        }
        OrientationRule::R2 => {
            for a in 0..n {
                for b in g.children_of(a) {
                    for c in g.children_of(b).intersection(g.undirected_of(a)) {
                        let f = RuleFiring {
                            rule,
                            tail: a,
                            head: c,
                            bound: [a, b, c, a],
                        };
                        if visit(f) {
                            return;
                        }
                    }
                }
            }
        }
        OrientationRule::R3 => {
            for a in 0..n {
                let und = g.undirected_of(a);
                for b in und {
                    let sources = g.parents_of(b).intersection(und);
                    for c in sources {
                        for d in sources.iter().filter(|&d| d > c) {
                            if !g.is_adjacent(c, d) {
                                let f = RuleFiring {
                                    rule,
                                    tail: a,
                                    head: b,
                                    bound: [a, b, c, d],
                                };
                                if visit(f) {
                                    return;
                                }
                            }
                        }
                    }
                }
            }
        }
        OrientationRule::R4 => {
            for a in 0..n {
                let und = g.undirected_of(a);
                let adj = g.adjacent_of(a);
                for b in und {
                    for c in und.without(b) {
                        if g.is_adjacent(c, b) {
                            continue;
                        }
                        for d in g
                            .children_of(c)
                            .intersection(g.parents_of(b))
                            .intersection(adj)
                        {
                            let f = RuleFiring {
                                rule,
                                tail: a,
                                head: b,
                                bound: [a, b, c, d],
                            };
                            if visit(f) {
                                return;
                            }
                        }
                    }
                }
            }
        }
    }
}

/// The lexicographically first match of `rule`, if any.
pub fn find_match(g: &Pdag, rule: OrientationRule) -> Option<RuleFiring> {
    let mut found = None;
    scan(g, rule, |f| {
        found = Some(f);
        true
    });
    found
}

/// Every current match of `rule`.
pub fn all_matches(g: &Pdag, rule: OrientationRule) -> Vec<RuleFiring> {
    let mut out = Vec::new();
    scan(g, rule, |f| {
        out.push(f);
        false
    });
    out
}

/// Applies the first match of `rule`, returning the updated graph and what
/// fired.
pub fn apply_rule(g: &Pdag, rule: OrientationRule) -> Option<(Pdag, RuleFiring)> {
    let f = find_match(g, rule)?;
    let mut out = g.clone();
    out.orient_unchecked(f.tail, f.head);
    Some((out, f))
}

/// Applies the rules until none matches. Only undirected edges ever change.
pub fn close_under(g: &Pdag, rules: &[OrientationRule]) -> Pdag {
    let mut out = g.clone();
    close_in_place(&mut out, rules, |_| {});
    out
}

/// Closure that also reports every firing, in order.
pub fn close_under_traced(g: &Pdag, rules: &[OrientationRule]) -> (Pdag, Vec<RuleFiring>) {
    let mut out = g.clone();
    let mut trace = Vec::new();
    close_in_place(&mut out, rules, |f| trace.push(f));
    (out, trace)
}

pub(crate) fn close_in_place(
    g: &mut Pdag,
    rules: &[OrientationRule],
    mut on_fire: impl FnMut(RuleFiring),
) {
    loop {
        let mut changed = false;
        for &rule in rules {
            while let Some(f) = find_match(g, rule) {
                g.orient_unchecked(f.tail, f.head);
                on_fire(f);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

/// Completes a pattern: every edge oriented the same way in all of its
/// consistent DAG extensions becomes directed.
pub fn max_orient(pattern: &Pdag) -> Pdag {
    close_under(pattern, &OrientationRule::PATTERN)
}
