//! Backward-induction evaluation of optimality over bitmask positions.
//!
//! Every edge of the starting position gets a bit. A state is a pair of
//! masks `(graph, reserve)`; edges only ever leave the reserve for the graph
//! or leave the game, so all reachable states live in one arena.
//!
//! Two games are solved:
//!
//! * *forcing*: in an alternative line, can Buster (choosing moves or
//!   quitting) reach a series the target triple is superior to, whatever
//!   Fixer responds? Buster nodes are OR, Fixer nodes are AND.
//! * *safety*: after the candidate, can Fixer keep every series of her
//!   strategy (each interior node as a quit, each leaf as a Buster win)
//!   acceptable, meaning forcible against every alternative response?
//!   Buster nodes are AND, Fixer nodes are OR.

use std::collections::HashMap;

use crate::engine::{OutcomeTriple, Position};
use crate::error::{GameError, Result};
use crate::graph_core::{label_components, EdgeId, EdgeSet};
use crate::weight::Weight;

use super::{fixer_superior, Caps};

type State = (u64, u64);

/// Nonempty submasks of `mask`, largest first.
fn nonempty_submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask).filter(|&m| m != 0);
    std::iter::from_fn(move || {
        let current = next?;
        let following = (current - 1) & mask;
        next = Some(following).filter(|&m| m != 0);
        Some(current)
    })
}

/// All submasks of `mask`, including zero.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    nonempty_submasks(mask).chain(std::iter::once(0))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub optimal: bool,
    pub witness: String,
    pub alternatives: usize,
    pub states_explored: usize,
}

#[derive(Default)]
struct Context {
    alternatives: Vec<State>,
    acceptable: HashMap<usize, bool>,
    good: HashMap<State, bool>,
}

/// Optimality checks for one starting position. The forcing-game memo is
/// shared by every query against the position; the per-move safety memo is
/// kept per (Buster move, prune flag).
pub struct OptimalityChecker {
    caps: Caps,
    vertex_count: usize,
    ids: Vec<EdgeId>,
    ends: Vec<(usize, usize)>,
    weights: Vec<Weight>,
    graph0: u64,
    reserve0: u64,
    base_busted: usize,
    base_cost: Weight,
    reserve_weight: HashMap<u64, Weight>,
    target_index: HashMap<OutcomeTriple, usize>,
    targets: Vec<OutcomeTriple>,
    forced: HashMap<(u64, u64, usize), bool>,
    contexts: HashMap<(u64, bool), Context>,
    explored: usize,
}

impl OptimalityChecker {
    pub fn new(position: &Position, caps: Caps) -> Result<Self> {
        Self::with_offset(position, caps, 0, Weight::zero())
    }

    /// Triples are reported as `base` plus whatever is busted or spent from
    /// `position` on.
    pub fn with_offset(position: &Position, caps: Caps, base_busted: usize, base_cost: Weight) -> Result<Self> {
        let total = position.pool_size();
        let cap = caps.max_total_edges.min(63);
        if total > cap {
            return Err(GameError::CapExceeded {
                what: "optimality search over |G|+|R|",
                size: total,
                cap,
            });
        }
        let mut ids = Vec::with_capacity(total);
        let mut ends = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        for e in position.graph().edges().iter().chain(position.reserve().edges()) {
            ids.push(e.id.clone());
            ends.push((e.u, e.v));
            weights.push(e.weight.clone());
        }
        let graph_len = position.graph().len();
        let graph0 = (1u64 << graph_len) - 1;
        let reserve0 = ((1u64 << total) - 1) & !graph0;
        Ok(OptimalityChecker {
            caps,
            vertex_count: position.vertex_count(),
            ids,
            ends,
            weights,
            graph0,
            reserve0,
            base_busted,
            base_cost,
            reserve_weight: HashMap::new(),
            target_index: HashMap::new(),
            targets: Vec::new(),
            forced: HashMap::new(),
            contexts: HashMap::new(),
            explored: 0,
        })
    }

    fn mask_of(&self, set: &EdgeSet, within: u64, pool: &str) -> Result<u64> {
        let mut mask = 0u64;
        for id in set {
            match self.ids.iter().position(|x| x == id) {
                Some(i) if within >> i & 1 == 1 => mask |= 1 << i,
                _ => return Err(GameError::IllegalMove(format!("edge {id} is not in the {pool}"))),
            }
        }
        Ok(mask)
    }

    fn ids_of(&self, mask: u64) -> EdgeSet {
        (0..self.ids.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.ids[i].clone())
            .collect()
    }

    fn component_count(&self, mask: u64) -> usize {
        let pairs = (0..self.ends.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.ends[i]);
        label_components(self.vertex_count, pairs).count
    }

    fn connected(&self, mask: u64) -> bool {
        self.component_count(mask) == 1
    }

    fn weight_of(&mut self, mask: u64) -> Weight {
        if let Some(w) = self.reserve_weight.get(&mask) {
            return w.clone();
        }
        let w: Weight = (0..self.weights.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &self.weights[i])
            .sum();
        self.reserve_weight.insert(mask, w.clone());
        w
    }

    /// Outcome of a series ending with graph `g` and reserve `r`.
    fn triple(&mut self, fixer_win: bool, g: u64, r: u64) -> OutcomeTriple {
        let start = (self.graph0 | self.reserve0).count_ones() as usize;
        let left = (g.count_ones() + r.count_ones()) as usize;
        let spent = self.weight_of(self.reserve0) - self.weight_of(r);
        OutcomeTriple::new(
            fixer_win,
            self.base_busted + start - left,
            self.base_cost.clone() + spent,
        )
    }

    fn intern(&mut self, t: &OutcomeTriple) -> usize {
        if let Some(&i) = self.target_index.get(t) {
            return i;
        }
        let i = self.targets.len();
        self.targets.push(t.clone());
        self.target_index.insert(t.clone(), i);
        i
    }

    /// Can Buster, from the whole starting position with Fixer having
    /// survived so far, force a series `target` is superior to?
    pub fn buster_can_force(&mut self, target: &OutcomeTriple) -> bool {
        let t = self.intern(target);
        self.forced_from(self.graph0, self.reserve0, t)
    }

    fn forced_from(&mut self, g: u64, r: u64, t: usize) -> bool {
        if let Some(&known) = self.forced.get(&(g, r, t)) {
            return known;
        }
        self.explored += 1;
        let result = self.forced_uncached(g, r, t);
        self.forced.insert((g, r, t), result);
        result
    }

    fn forced_uncached(&mut self, g: u64, r: u64, t: usize) -> bool {
        let target = self.targets[t].clone();
        let quit = self.triple(true, g, r);
        if fixer_superior(&target, &quit) {
            return true;
        }
        // every further round busts more
        if quit.total_busted >= target.total_busted {
            return false;
        }
        for busted in nonempty_submasks(g) {
            let rest = g & !busted;
            if !self.connected(rest | r) {
                let leaf = self.triple(false, rest, r);
                if fixer_superior(&target, &leaf) {
                    return true;
                }
                continue;
            }
            let mut every_response = true;
            for fixed in submasks(r) {
                if self.connected(rest | fixed) && !self.forced_from(rest | fixed, r & !fixed, t) {
                    every_response = false;
                    break;
                }
            }
            if every_response {
                return true;
            }
        }
        false
    }

    fn acceptable(&mut self, ctx: &mut Context, triple: &OutcomeTriple) -> bool {
        let t = self.intern(triple);
        if let Some(&known) = ctx.acceptable.get(&t) {
            return known;
        }
        let alternatives = ctx.alternatives.clone();
        let result = alternatives.iter().all(|&(g, r)| self.forced_from(g, r, t));
        ctx.acceptable.insert(t, result);
        result
    }

    fn good(&mut self, ctx: &mut Context, g: u64, r: u64) -> bool {
        if let Some(&known) = ctx.good.get(&(g, r)) {
            return known;
        }
        self.explored += 1;
        let result = self.good_uncached(ctx, g, r);
        ctx.good.insert((g, r), result);
        result
    }

    fn good_uncached(&mut self, ctx: &mut Context, g: u64, r: u64) -> bool {
        let quit = self.triple(true, g, r);
        if !self.acceptable(ctx, &quit) {
            return false;
        }
        for busted in nonempty_submasks(g) {
            let rest = g & !busted;
            if !self.connected(rest | r) {
                let leaf = self.triple(false, rest, r);
                if !self.acceptable(ctx, &leaf) {
                    return false;
                }
                continue;
            }
            let survives =
                submasks(r).any(|fixed| self.connected(rest | fixed) && self.good(ctx, rest | fixed, r & !fixed));
            if !survives {
                return false;
            }
        }
        true
    }

    fn context(&self, busted: u64, bridge_prune: bool) -> Context {
        let rest = self.graph0 & !busted;
        let needed = self.component_count(rest) - 1;
        let alternatives = submasks(self.reserve0)
            .filter(|&f| self.connected(rest | f))
            .filter(|&f| !bridge_prune || f.count_ones() as usize == needed)
            .map(|f| (rest | f, self.reserve0 & !f))
            .collect();
        Context {
            alternatives,
            ..Context::default()
        }
    }

    /// Decides whether `candidate` is an optimal answer to `busted`.
    pub fn verify(&mut self, busted: &EdgeSet, candidate: &EdgeSet, bridge_prune: bool) -> Result<Verdict> {
        if busted.is_empty() {
            return Err(GameError::IllegalMove("Buster must remove at least one edge".into()));
        }
        let bmask = self.mask_of(busted, self.graph0, "graph")?;
        let cmask = self.mask_of(candidate, self.reserve0, "reserve")?;
        let reserve_bits = self.reserve0.count_ones() as usize;
        if reserve_bits > self.caps.max_subset_bits {
            return Err(GameError::CapExceeded {
                what: "Fixer response enumeration over a reserve",
                size: reserve_bits,
                cap: self.caps.max_subset_bits,
            });
        }
        let rest = self.graph0 & !bmask;
        if !self.connected(rest | self.reserve0) {
            if cmask != 0 {
                return Err(GameError::IllegalMove(
                    "Buster has won this round; Fixer's move must be empty".into(),
                ));
            }
            return Ok(Verdict {
                optimal: true,
                witness: "Buster wins this round; the empty move is the only move".into(),
                alternatives: 1,
                states_explored: 0,
            });
        }
        if !self.connected(rest | cmask) {
            return Err(GameError::IllegalMove("candidate does not reconnect the graph".into()));
        }

        let key = (bmask, bridge_prune);
        let mut ctx = self
            .contexts
            .remove(&key)
            .unwrap_or_else(|| self.context(bmask, bridge_prune));
        let before = self.explored;
        let (g, r) = (rest | cmask, self.reserve0 & !cmask);
        let optimal = self.good(&mut ctx, g, r);
        let witness = if optimal {
            format!(
                "Fixer has a continuation every outcome of which is superior to an outcome Buster can force after each of the {} alternative responses",
                ctx.alternatives.len()
            )
        } else {
            self.refutation(&mut ctx, g, r)
        };
        let verdict = Verdict {
            optimal,
            witness,
            alternatives: ctx.alternatives.len(),
            states_explored: self.explored - before,
        };
        self.contexts.insert(key, ctx);
        Ok(verdict)
    }

    fn refutation(&mut self, ctx: &mut Context, g: u64, r: u64) -> String {
        let quit = self.triple(true, g, r);
        if !self.acceptable(ctx, &quit) {
            let t = self.intern(&quit);
            let alternatives = ctx.alternatives.clone();
            let culprit = alternatives.into_iter().find(|&(ag, ar)| !self.forced_from(ag, ar, t));
            let shown = culprit
                .map(|(_, ar)| fmt_set(&self.ids_of(self.reserve0 & !ar)))
                .unwrap_or_default();
            return format!(
                "if Buster quits now the outcome {quit} is superior to nothing Buster can force after the alternative response {shown}"
            );
        }
        for busted in nonempty_submasks(g) {
            let rest = g & !busted;
            let failing = if !self.connected(rest | r) {
                let leaf = self.triple(false, rest, r);
                !self.acceptable(ctx, &leaf)
            } else {
                !submasks(r).any(|fixed| self.connected(rest | fixed) && self.good(ctx, rest | fixed, r & !fixed))
            };
            if failing {
                return format!(
                    "after Buster next busts {}, every continuation reaches an outcome that some alternative response avoids",
                    fmt_set(&self.ids_of(busted))
                );
            }
        }
        "no continuation strategy exists".into()
    }
}

pub(crate) fn fmt_set(ids: &EdgeSet) -> String {
    let inner: Vec<&str> = ids.iter().map(EdgeId::as_str).collect();
    format!("{{{}}}", inner.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submask_iteration_is_complete() {
        let all: Vec<u64> = submasks(0b1011).collect();
        assert_eq!(all.len(), 8);
        assert!(all.contains(&0));
        assert!(all.iter().all(|m| m & !0b1011 == 0));
        assert_eq!(nonempty_submasks(0).count(), 0);
        assert_eq!(nonempty_submasks(0b111).count(), 7);
    }
}
