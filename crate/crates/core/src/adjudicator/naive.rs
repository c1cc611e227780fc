//! Optimality by brute force: every Fixer strategy tree is materialized, each
//! series in it is replayed and totalled, and the definition's quantifiers
//! are evaluated one by one. Only usable on tiny instances.
//!
//! A strategy is kept as the set of outcome triples of its series. Two trees
//! with the same set are interchangeable under every quantifier, so
//! duplicates are dropped as the trees are built.

use std::collections::BTreeSet;

use crate::engine::{
    apply_round, buster_wins, enumerate_buster_moves, series_totals, Outcome, OutcomeTriple, Position, RoundRecord,
    Series,
};
use crate::error::{GameError, Result};
use crate::graph_core::EdgeSet;

use super::{enumerate_fixer_responses_capped, fixer_superior, Caps};

type Strategy = BTreeSet<OutcomeTriple>;
type Strategies = BTreeSet<Strategy>;

struct Materializer<'a> {
    start: &'a Position,
    caps: &'a Caps,
}

impl Materializer<'_> {
    /// Number of strategy trees for the play continuing from `pos`.
    fn count(&self, pos: &Position) -> Result<u128> {
        let mut total: u128 = 1;
        for busted in enumerate_buster_moves(pos, self.caps.max_subset_bits)? {
            let options = if buster_wins(pos, &busted)? {
                1
            } else {
                let mut sum: u128 = 0;
                for fixed in enumerate_fixer_responses_capped(pos, &busted, false, self.caps.max_subset_bits)? {
                    sum = sum.saturating_add(self.count(&apply_round(pos, &busted, &fixed)?)?);
                }
                sum
            };
            total = total.saturating_mul(options);
        }
        Ok(total)
    }

    fn leaf(&self, rounds: Vec<RoundRecord>, outcome: Outcome) -> Result<OutcomeTriple> {
        series_totals(&Series::new(self.start.clone(), rounds, outcome)?)
    }

    fn check_cap(&self, size: usize) -> Result<()> {
        if size > self.caps.naive_max_strategies {
            return Err(GameError::CapExceeded {
                what: "distinct strategy trees materialized at one node",
                size,
                cap: self.caps.naive_max_strategies,
            });
        }
        Ok(())
    }

    /// Every strategy for the play after `prefix`, which leaves Fixer alive
    /// at `pos`. Each contains the series that stops here by Buster quitting,
    /// plus one continuation per Buster move.
    fn strategies(&self, prefix: &[RoundRecord], pos: &Position) -> Result<Strategies> {
        let quit = self.leaf(prefix.to_vec(), Outcome::FixerWin)?;
        let mut result: Strategies = BTreeSet::from([BTreeSet::from([quit])]);
        for busted in enumerate_buster_moves(pos, self.caps.max_subset_bits)? {
            let mut options = Strategies::new();
            if buster_wins(pos, &busted)? {
                let mut rounds = prefix.to_vec();
                rounds.push(RoundRecord::new(busted.clone(), EdgeSet::new()));
                options.insert(BTreeSet::from([self.leaf(rounds, Outcome::BusterWin)?]));
            } else {
                for fixed in enumerate_fixer_responses_capped(pos, &busted, false, self.caps.max_subset_bits)? {
                    let mut rounds = prefix.to_vec();
                    rounds.push(RoundRecord::new(busted.clone(), fixed.clone()));
                    let next = apply_round(pos, &busted, &fixed)?;
                    options.extend(self.strategies(&rounds, &next)?);
                }
            }
            let mut product = Strategies::new();
            for partial in &result {
                for option in &options {
                    product.insert(partial.union(option).cloned().collect());
                }
            }
            self.check_cap(product.len())?;
            result = product;
        }
        Ok(result)
    }

    /// All strategies after Fixer answers `busted` with `fixed` in round 1.
    fn after_response(&self, busted: &EdgeSet, fixed: &EdgeSet) -> Result<Strategies> {
        let first = vec![RoundRecord::new(busted.clone(), fixed.clone())];
        if buster_wins(self.start, busted)? {
            return Ok(BTreeSet::from([BTreeSet::from(
                [self.leaf(first, Outcome::BusterWin)?],
            )]));
        }
        self.strategies(&first, &apply_round(self.start, busted, fixed)?)
    }
}

/// Number of Fixer strategy trees continuing after `candidate`.
pub fn count_strategies(p: &Position, busted: &EdgeSet, candidate: &EdgeSet, caps: &Caps) -> Result<u128> {
    if buster_wins(p, busted)? {
        return Ok(1);
    }
    let m = Materializer { start: p, caps };
    m.count(&apply_round(p, busted, candidate)?)
}

fn legal_responses(p: &Position, busted: &EdgeSet, caps: &Caps) -> Result<Vec<EdgeSet>> {
    if p.pool_size() > caps.naive_max_total_edges {
        return Err(GameError::CapExceeded {
            what: "naive optimality oracle over |G|+|R|",
            size: p.pool_size(),
            cap: caps.naive_max_total_edges,
        });
    }
    if buster_wins(p, busted)? {
        Ok(vec![EdgeSet::new()])
    } else {
        enumerate_fixer_responses_capped(p, busted, false, caps.max_subset_bits)
    }
}

/// There is a strategy in `mine` such that for every alternative, every
/// strategy after it and every series `T` of the first strategy, some series
/// `T'` of the second has `T` Fixer-superior to `T'`.
fn optimal_against(mine: &Strategies, theirs: &[Strategies]) -> bool {
    mine.iter().any(|phi| {
        theirs.iter().all(|alternative| {
            alternative.iter().all(|phi_prime| {
                phi.iter()
                    .all(|t| phi_prime.iter().any(|t_prime| fixer_superior(t, t_prime)))
            })
        })
    })
}

/// The optimality definition evaluated literally, with every legal response
/// as an alternative (no bridge reduction).
pub fn verify_optimal_naive(p: &Position, busted: &EdgeSet, candidate: &EdgeSet, caps: &Caps) -> Result<bool> {
    let responses = legal_responses(p, busted, caps)?;
    if !responses.contains(candidate) {
        return Err(GameError::IllegalMove("candidate is not a legal Fixer response".into()));
    }
    let m = Materializer { start: p, caps };
    let theirs = responses
        .iter()
        .map(|alternative| m.after_response(busted, alternative))
        .collect::<Result<Vec<_>>>()?;
    let mine = &theirs[responses.iter().position(|r| r == candidate).unwrap()];
    Ok(optimal_against(mine, &theirs))
}

/// The naive verdict for every legal response to `busted`, materializing
/// each response's strategies once.
pub fn naive_verdicts(p: &Position, busted: &EdgeSet, caps: &Caps) -> Result<Vec<(EdgeSet, bool)>> {
    let responses = legal_responses(p, busted, caps)?;
    let m = Materializer { start: p, caps };
    let all = responses
        .iter()
        .map(|r| m.after_response(busted, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(responses
        .into_iter()
        .zip(&all)
        .map(|(r, mine)| (r, optimal_against(mine, &all)))
        .collect())
}
