//! Fixer-superiority and optimality of Fixer moves.
//!
//! A Fixer move is optimal when Fixer has some way of continuing after it
//! such that, whatever alternative response she might have made instead and
//! however she would have continued from there, every series she can end up
//! in is Fixer-superior to some series Buster can steer the alternative into.
//!
//! Outcome triples depend only on the end state of a series, so the whole
//! quantifier chain collapses into two nested games over positions, solved by
//! memoized backward induction in [`search`]. [`naive`] evaluates the same
//! definition by materializing every strategy tree and serves as its oracle.

mod naive;
mod search;
pub mod sweep;

use crate::engine::{buster_wins, running_totals, series_totals, Outcome, OutcomeTriple, Position, Series};
use crate::error::{GameError, Result};
use crate::graph_core::{bridges, is_connected, EdgeSet};
use crate::weight::Weight;

pub use naive::{count_strategies, naive_verdicts, verify_optimal_naive};
pub use search::{OptimalityChecker, Verdict};

/// Size limits for the exhaustive searches. Exceeding one is an error, never
/// a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `|G| + |R|` accepted by the game-tree verifier.
    pub max_total_edges: usize,
    /// Largest `|G| + |R|` accepted by the strategy-materializing oracle.
    pub naive_max_total_edges: usize,
    /// Largest pool whose subsets are enumerated (`2^k` subsets).
    pub max_subset_bits: usize,
    /// Largest number of distinct strategy trees the oracle holds at one
    /// node of the play.
    pub naive_max_strategies: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_total_edges: 7,
            naive_max_total_edges: 5,
            max_subset_bits: 12,
            naive_max_strategies: 100_000,
        }
    }
}

/// `a` is Fixer-superior to `b`: Fixer does no worse on winning, Buster
/// busted at least as much, and Fixer spent no more.
pub fn fixer_superior(a: &OutcomeTriple, b: &OutcomeTriple) -> bool {
    (a.fixer_win || !b.fixer_win) && a.total_busted >= b.total_busted && a.fix_cost <= b.fix_cost
}

/// Superiority of two series with the same starting position. Evaluated
/// once on the outcome triples and once on the end states; the two must
/// agree.
pub fn series_superior(s: &Series, t: &Series) -> Result<bool> {
    if s.initial() != t.initial() {
        return Err(GameError::InvalidSeries("series start from different positions".into()));
    }
    let by_triples = fixer_superior(&series_totals(s)?, &series_totals(t)?);

    let (s_end, t_end) = (s.final_position(), t.final_position());
    let wins = s.outcome() == Outcome::FixerWin || t.outcome() == Outcome::BusterWin;
    let busted_more = s_end.pool_size() <= t_end.pool_size();
    let spent_less = s_end.reserve().total_weight() >= t_end.reserve().total_weight();
    let by_end_states = wins && busted_more && spent_less;

    let raw = |x: &Series| running_totals(x).pop().unwrap_or((0, Weight::zero()));
    let ((sb, sw), (tb, tw)) = (raw(s), raw(t));
    let by_raw_sums = wins && sb >= tb && sw <= tw;

    if by_triples != by_end_states || by_triples != by_raw_sums {
        return Err(GameError::IdentityViolation(format!(
            "superiority disagrees: triples {by_triples}, end states {by_end_states}, raw sums {by_raw_sums}"
        )));
    }
    Ok(by_triples)
}

/// Every legal Fixer response to `busted`, cheapest first and then by sorted
/// ids. With `bridge_only`, keeps just the responses whose edges are all
/// bridges of the repaired graph, which are the spanning trees of the
/// contracted graph.
pub fn enumerate_fixer_responses(p: &Position, busted: &EdgeSet, bridge_only: bool) -> Result<Vec<EdgeSet>> {
    enumerate_fixer_responses_capped(p, busted, bridge_only, Caps::default().max_subset_bits)
}

pub fn enumerate_fixer_responses_capped(
    p: &Position,
    busted: &EdgeSet,
    bridge_only: bool,
    max_subset_bits: usize,
) -> Result<Vec<EdgeSet>> {
    if buster_wins(p, busted)? {
        return Err(GameError::BusterWins);
    }
    let reserve = p.reserve().edges();
    if reserve.len() > max_subset_bits {
        return Err(GameError::CapExceeded {
            what: "Fixer response enumeration over a reserve",
            size: reserve.len(),
            cap: max_subset_bits,
        });
    }
    let remaining = p.graph().without(busted);
    let mut responses: Vec<(Weight, EdgeSet)> = Vec::new();
    for mask in 0u64..(1u64 << reserve.len()) {
        let picked: Vec<_> = (0..reserve.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &reserve[i])
            .collect();
        let repaired = remaining.with_edges(picked.iter().copied());
        if !is_connected(&repaired) {
            continue;
        }
        let ids: EdgeSet = picked.iter().map(|e| e.id.clone()).collect();
        if bridge_only {
            let bridge_set = bridges(&repaired);
            if !ids.iter().all(|id| bridge_set.contains(id)) {
                continue;
            }
        }
        let cost = picked.iter().map(|e| &e.weight).sum();
        responses.push((cost, ids));
    }
    responses.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.iter().cmp(b.1.iter())));
    Ok(responses.into_iter().map(|(_, ids)| ids).collect())
}

/// The alternative line of a superiority comparison: Buster is about to move
/// at `position`, the alternative series so far has the `accumulated`
/// totals, and the question is whether he can force a series that `target`
/// is superior to.
#[derive(Clone, Debug)]
pub struct DominanceQuery {
    pub target: OutcomeTriple,
    pub position: Position,
    pub accumulated: OutcomeTriple,
}

/// True iff against every Fixer strategy from `q.position`, Buster can steer
/// play (moves and quitting) into a series that `q.target` is superior to.
pub fn dominates_all_strategies(q: &DominanceQuery, caps: &Caps) -> Result<bool> {
    if !q.accumulated.fixer_win {
        return Err(GameError::InvalidSeries(
            "the alternative line must still be running (Fixer survived so far)".into(),
        ));
    }
    if !is_connected(q.position.graph()) {
        return Err(GameError::InvalidSeries(
            "the alternative line's graph must be connected".into(),
        ));
    }
    let mut checker = OptimalityChecker::with_offset(
        &q.position,
        *caps,
        q.accumulated.total_busted,
        q.accumulated.fix_cost.clone(),
    )?;
    Ok(checker.buster_can_force(&q.target))
}

/// Whether `candidate` is an optimal response to `busted` at `p`, with the
/// alternatives restricted to all-bridge responses when `bridge_prune` is set.
pub fn verify_optimal(
    p: &Position,
    busted: &EdgeSet,
    candidate: &EdgeSet,
    caps: &Caps,
    bridge_prune: bool,
) -> Result<bool> {
    Ok(OptimalityChecker::new(p, *caps)?
        .verify(busted, candidate, bridge_prune)?
        .optimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{apply_round, play_series, BusterAction, GreedyFixer, ScriptedBuster, ScriptedFixer};
    use crate::fixtures::example_position;
    use crate::graph_core::{edge_set, Edge, Multigraph};

    fn ids(s: &[&str]) -> EdgeSet {
        edge_set(s.iter().copied())
    }

    fn t(fixer_win: bool, busted: usize, cost: i64) -> OutcomeTriple {
        OutcomeTriple::new(fixer_win, busted, Weight::from_integer(cost))
    }

    fn line(first: &[&str], moves: &[&[&str]]) -> Series {
        let mut buster = ScriptedBuster::new(moves.iter().map(|m| BusterAction::Bust(ids(m))).collect());
        let mut fixer = ScriptedFixer::new(vec![ids(first)]);
        play_series(&example_position(), &mut buster, &mut fixer).unwrap()
    }

    #[test]
    fn superiority_examples() {
        assert!(fixer_superior(&t(true, 3, 3), &t(true, 3, 3)));
        assert!(fixer_superior(&t(true, 2, 1), &t(true, 2, 2)));
        assert!(!fixer_superior(&t(true, 2, 2), &t(true, 2, 1)));
        assert!(fixer_superior(&t(false, 4, 1), &t(false, 4, 3)));
        assert!(!fixer_superior(&t(false, 4, 1), &t(true, 2, 2)));
    }

    #[test]
    fn series_superiority_examples() {
        let t10 = line(&["e4"], &[&["e1", "e2"], &["e3", "e4"]]);
        let t11 = line(&["e4", "e5"], &[&["e1", "e2"], &["e5"], &["e3"]]);
        assert!(series_superior(&t10, &t11).unwrap());

        let t1_prime = line(&["e5"], &[&["e1", "e2"]]);
        let phi: Vec<Series> = vec![
            line(&["e4"], &[&["e1", "e2"]]),
            line(&["e4"], &[&["e1", "e2"], &["e3"]]),
            line(&["e4"], &[&["e1", "e2"], &["e3"], &["e4"]]),
            line(&["e4"], &[&["e1", "e2"], &["e3"], &["e4", "e5"]]),
            line(&["e4"], &[&["e1", "e2"], &["e4"]]),
            line(&["e4"], &[&["e1", "e2"], &["e4"], &["e3", "e5"]]),
            t10,
        ];
        for s in &phi {
            assert!(!series_superior(&t1_prime, s).unwrap());
        }
        assert!(series_superior(&t1_prime, &t1_prime).unwrap());
    }

    #[test]
    fn series_superior_needs_a_shared_start() {
        let s = line(&["e4"], &[&["e1", "e2"]]);
        let other = Position::new(
            Multigraph::new(2, [Edge::new("x", 0, 1, Weight::zero())]).unwrap(),
            Multigraph::empty(2),
        )
        .unwrap();
        let mut quit = ScriptedBuster::new(vec![BusterAction::Bust(ids(&["x"]))]);
        let t = play_series(&other, &mut quit, &mut GreedyFixer::default()).unwrap();
        assert!(series_superior(&s, &t).is_err());
    }

    #[test]
    fn response_enumeration_examples() {
        let p = example_position();
        let busted = ids(&["e1", "e2"]);
        assert_eq!(
            enumerate_fixer_responses(&p, &busted, true).unwrap(),
            vec![ids(&["e4"]), ids(&["e5"])]
        );
        assert_eq!(
            enumerate_fixer_responses(&p, &busted, false).unwrap(),
            vec![ids(&["e4"]), ids(&["e5"]), ids(&["e4", "e5"])]
        );
        assert_eq!(
            enumerate_fixer_responses(&p, &ids(&["e1"]), true).unwrap(),
            vec![EdgeSet::new()]
        );
        assert_eq!(enumerate_fixer_responses(&p, &ids(&["e1"]), false).unwrap().len(), 4);

        let p2 = apply_round(&p, &busted, &ids(&["e4"])).unwrap();
        assert_eq!(
            enumerate_fixer_responses(&p2, &ids(&["e3", "e4"]), false),
            Err(GameError::BusterWins)
        );
    }

    #[test]
    fn dominance_examples() {
        let p = example_position();
        let caps = Caps::default();
        let busted = ids(&["e1", "e2"]);
        let after_e5 = apply_round(&p, &busted, &ids(&["e5"])).unwrap();
        let query = DominanceQuery {
            target: t(true, 2, 1),
            position: after_e5,
            accumulated: t(true, 2, 2),
        };
        assert!(dominates_all_strategies(&query, &caps).unwrap());

        let after_both = apply_round(&p, &busted, &ids(&["e4", "e5"])).unwrap();
        let query = DominanceQuery {
            target: t(false, 4, 1),
            position: after_both,
            accumulated: t(true, 2, 3),
        };
        assert!(dominates_all_strategies(&query, &caps).unwrap());

        // a Buster-win target with nothing busted beats nothing Buster can reach
        let g = Multigraph::new(2, [Edge::new("x", 0, 1, Weight::zero())]).unwrap();
        let r = Multigraph::new(2, [Edge::new("y", 0, 1, Weight::zero())]).unwrap();
        let query = DominanceQuery {
            target: t(false, 0, 0),
            position: Position::new(g, r).unwrap(),
            accumulated: t(true, 1, 0),
        };
        assert!(!dominates_all_strategies(&query, &caps).unwrap());
    }

    #[test]
    fn optimality_of_the_worked_example() {
        let p = example_position();
        let caps = Caps::default();
        let busted = ids(&["e1", "e2"]);
        for prune in [true, false] {
            assert!(verify_optimal(&p, &busted, &ids(&["e4"]), &caps, prune).unwrap());
            assert!(!verify_optimal(&p, &busted, &ids(&["e5"]), &caps, prune).unwrap());
            assert!(!verify_optimal(&p, &busted, &ids(&["e4", "e5"]), &caps, prune).unwrap());
        }
    }

    #[test]
    fn empty_response_when_graph_survives() {
        let p = example_position();
        let caps = Caps::default();
        assert!(verify_optimal(&p, &ids(&["e1"]), &EdgeSet::new(), &caps, true).unwrap());
        assert!(verify_optimal_naive(&p, &ids(&["e1"]), &EdgeSet::new(), &caps).unwrap());
        assert!(!verify_optimal(&p, &ids(&["e1"]), &ids(&["e4"]), &caps, true).unwrap());
    }

    #[test]
    fn verifier_rejects_illegal_candidates_and_oversized_instances() {
        let p = example_position();
        let busted = ids(&["e1", "e2"]);
        let caps = Caps::default();
        assert!(matches!(
            verify_optimal(&p, &busted, &EdgeSet::new(), &caps, true),
            Err(GameError::IllegalMove(_))
        ));
        assert!(matches!(
            verify_optimal(&p, &busted, &ids(&["e1"]), &caps, true),
            Err(GameError::IllegalMove(_))
        ));
        let tight = Caps {
            max_total_edges: 4,
            ..caps
        };
        assert!(matches!(
            verify_optimal(&p, &busted, &ids(&["e4"]), &tight, true),
            Err(GameError::CapExceeded { .. })
        ));
    }
}
