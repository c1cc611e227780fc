//! Round-by-round execution of series.
//!
//! A round takes a position `(G, R)`, removes Buster's edges `B` from `G`
//! and then adds Fixer's reserve edges `F`, giving `((G − B) ∪ F, R − F)`.
//! Buster wins the round when `(G − B) ∪ R` is disconnected; otherwise he
//! may quit after Fixer reconnects, which ends the series as a Fixer win.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::adjudicator::enumerate_fixer_responses;
use crate::error::{GameError, Result};
use crate::graph_core::{is_connected, EdgeSet, Multigraph};
use crate::reconnect::{greedy_fixer_move, TieBreak};
use crate::weight::Weight;

/// Largest graph for which Buster moves are enumerated by default.
pub const DEFAULT_MOVE_ENUMERATION_CAP: usize = 12;

/// The state entering a round: the current graph and the unused reserve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    graph: Multigraph,
    reserve: Multigraph,
}

impl Position {
    pub fn new(graph: Multigraph, reserve: Multigraph) -> Result<Self> {
        if graph.vertex_count() != reserve.vertex_count() {
            return Err(GameError::IllegalMove(format!(
                "graph has {} vertices but reserve has {}",
                graph.vertex_count(),
                reserve.vertex_count()
            )));
        }
        if let Some(shared) = graph.edges().iter().find(|e| reserve.contains(&e.id)) {
            return Err(GameError::Graph(crate::graph_core::GraphError::DuplicateId(
                shared.id.clone(),
            )));
        }
        Ok(Position { graph, reserve })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn reserve(&self) -> &Multigraph {
        &self.reserve
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `|G| + |R|`, the pool every round shrinks.
    pub fn pool_size(&self) -> usize {
        self.graph.len() + self.reserve.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RoundRecord {
    pub busted: EdgeSet,
    pub fixed: EdgeSet,
}

impl RoundRecord {
    pub fn new(busted: EdgeSet, fixed: EdgeSet) -> Self {
        RoundRecord { busted, fixed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    FixerWin,
    BusterWin,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::FixerWin => "Fixer",
            Outcome::BusterWin => "Buster",
        })
    }
}

/// Win flag, edges busted and reserve weight spent over a whole series.
/// These three numbers decide every superiority comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OutcomeTriple {
    pub fixer_win: bool,
    pub total_busted: usize,
    pub fix_cost: Weight,
}

impl OutcomeTriple {
    pub fn new(fixer_win: bool, total_busted: usize, fix_cost: Weight) -> Self {
        OutcomeTriple {
            fixer_win,
            total_busted,
            fix_cost,
        }
    }
}

impl fmt::Display for OutcomeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            if self.fixer_win { "Fixer" } else { "Buster" },
            self.total_busted,
            self.fix_cost
        )
    }
}

fn check_busted(p: &Position, busted: &EdgeSet) -> Result<()> {
    if busted.is_empty() {
        return Err(GameError::IllegalMove("Buster must remove at least one edge".into()));
    }
    if let Some(id) = busted.iter().find(|id| !p.graph.contains(id)) {
        return Err(GameError::IllegalMove(format!("busted edge {id} is not in the graph")));
    }
    Ok(())
}

/// `((G − B) ∪ F, R − F)`. Connectivity of the result is not checked.
pub fn apply_round(p: &Position, busted: &EdgeSet, fixed: &EdgeSet) -> Result<Position> {
    check_busted(p, busted)?;
    if let Some(id) = fixed.iter().find(|id| !p.reserve.contains(id)) {
        return Err(GameError::IllegalMove(format!("fixed edge {id} is not in the reserve")));
    }
    let added = p.reserve.select(fixed);
    Ok(Position {
        graph: p.graph.without(busted).with_edges(&added),
        reserve: p.reserve.without(fixed),
    })
}

/// True iff `(G − B) ∪ R` is disconnected.
pub fn buster_wins(p: &Position, busted: &EdgeSet) -> Result<bool> {
    check_busted(p, busted)?;
    let everything = p.graph.without(busted).with_edges(p.reserve.edges());
    Ok(!is_connected(&everything))
}

/// All nonempty subsets of the current graph, ordered by size and then by
/// their sorted id tuples. Quitting is not included.
pub fn enumerate_buster_moves(p: &Position, cap: usize) -> Result<Vec<EdgeSet>> {
    let ids: Vec<_> = p.graph.ids().into_iter().collect();
    if ids.len() > cap {
        return Err(GameError::CapExceeded {
            what: "Buster move enumeration over a graph",
            size: ids.len(),
            cap,
        });
    }
    let mut moves: Vec<EdgeSet> = (1u64..(1u64 << ids.len()))
        .map(|mask| {
            ids.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, id)| id.clone())
                .collect()
        })
        .collect();
    moves.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().cmp(b.iter())));
    Ok(moves)
}

/// One complete play: an initial position, its rounds and who won.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    initial: Position,
    rounds: Vec<RoundRecord>,
    outcome: Outcome,
}

impl Series {
    /// Validates a series by replaying it.
    pub fn new(initial: Position, rounds: Vec<RoundRecord>, outcome: Outcome) -> Result<Self> {
        let series = Series {
            initial,
            rounds,
            outcome,
        };
        series.validate()?;
        Ok(series)
    }

    fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(GameError::InvalidSeries(msg));
        if !is_connected(self.initial.graph()) {
            return invalid("initial graph is disconnected".into());
        }
        if self.outcome == Outcome::BusterWin && self.rounds.is_empty() {
            return invalid("a Buster win needs at least one round".into());
        }
        let mut position = self.initial.clone();
        for (k, round) in self.rounds.iter().enumerate() {
            let j = k + 1;
            let last = j == self.rounds.len();
            let won = buster_wins(&position, &round.busted)
                .map_err(|e| GameError::InvalidSeries(format!("round {j}: {e}")))?;
            if won {
                if !last || self.outcome != Outcome::BusterWin {
                    return invalid(format!(
                        "Buster wins in round {j} but the series does not end there as his win"
                    ));
                }
                if !round.fixed.is_empty() {
                    return invalid(format!("round {j} is a Buster win, so Fixer's move must be empty"));
                }
            } else if last && self.outcome == Outcome::BusterWin {
                return invalid(format!("series is marked a Buster win but round {j} is reconnectable"));
            }
            let next = apply_round(&position, &round.busted, &round.fixed)
                .map_err(|e| GameError::InvalidSeries(format!("round {j}: {e}")))?;
            if !won && !is_connected(next.graph()) {
                return invalid(format!("Fixer's move in round {j} leaves the graph disconnected"));
            }
            position = next;
        }
        Ok(())
    }

    pub fn initial(&self) -> &Position {
        &self.initial
    }

    pub fn rounds(&self) -> &[RoundRecord] {
        &self.rounds
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    /// `|S|`.
    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    /// Positions `P_1 ..= P_{|S|+1}`; entry `j − 1` enters round `j`.
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::with_capacity(self.rounds.len() + 1);
        out.push(self.initial.clone());
        for round in &self.rounds {
            let next = apply_round(out.last().unwrap(), &round.busted, &round.fixed).expect("validated series replays");
            out.push(next);
        }
        out
    }

    pub fn final_position(&self) -> Position {
        self.positions().pop().unwrap()
    }

    /// The first `k` rounds as a series won by Fixer.
    pub fn prefix(&self, k: usize) -> Result<Series> {
        if k > self.rounds.len() || (k == self.rounds.len() && self.outcome == Outcome::BusterWin) {
            return Err(GameError::InvalidSeries(format!(
                "prefix of length {k} is not a Fixer win"
            )));
        }
        Ok(Series {
            initial: self.initial.clone(),
            rounds: self.rounds[..k].to_vec(),
            outcome: Outcome::FixerWin,
        })
    }
}

/// Running totals after every round, by direct summation.
pub fn running_totals(s: &Series) -> Vec<(usize, Weight)> {
    let mut busted = 0usize;
    let mut cost = Weight::zero();
    let positions = s.positions();
    s.rounds
        .iter()
        .zip(&positions)
        .map(|(round, p)| {
            busted += round.busted.len();
            for e in p.reserve.select(&round.fixed) {
                cost += &e.weight;
            }
            (busted, cost.clone())
        })
        .collect()
}

/// Totals of a series, computed by summing rounds and checked against the
/// end-state identities `Σ|B| = |G₁|+|R₁|−|G_end|−|R_end|` and
/// `Σw(F) = w(R₁) − w(R_end)`.
pub fn series_totals(s: &Series) -> Result<OutcomeTriple> {
    let (summed_busted, summed_cost) = running_totals(s).pop().unwrap_or((0, Weight::zero()));
    let end = s.final_position();
    let identity_busted = s.initial.pool_size() - end.pool_size();
    let identity_cost = s.initial.reserve.total_weight() - end.reserve.total_weight();
    if summed_busted != identity_busted {
        return Err(GameError::IdentityViolation(format!(
            "busted sum {summed_busted} but end-state count gives {identity_busted}"
        )));
    }
    if summed_cost != identity_cost {
        return Err(GameError::IdentityViolation(format!(
            "fix cost sum {summed_cost} but end-state weight gives {identity_cost}"
        )));
    }
    Ok(OutcomeTriple::new(
        s.outcome == Outcome::FixerWin,
        summed_busted,
        summed_cost,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BusterAction {
    Bust(EdgeSet),
    Quit,
}

/// Chooses Buster's action given the position entering the round and the
/// rounds played so far.
pub trait BusterPolicy {
    fn choose(&mut self, position: &Position, history: &[RoundRecord]) -> BusterAction;

    fn describe(&self) -> String {
        "custom".to_string()
    }
}

/// Chooses Fixer's reserve edges once Buster's move is known and the graph is
/// still reconnectable.
pub trait FixerPolicy {
    fn respond(&mut self, position: &Position, busted: &EdgeSet, history: &[RoundRecord]) -> Result<EdgeSet>;

    fn describe(&self) -> String {
        "custom".to_string()
    }
}

/// Plays a fixed list of actions, quitting when the list runs out.
#[derive(Clone, Debug)]
pub struct ScriptedBuster {
    actions: Vec<BusterAction>,
    next: usize,
}

impl ScriptedBuster {
    pub fn new(actions: Vec<BusterAction>) -> Self {
        ScriptedBuster { actions, next: 0 }
    }
}

impl BusterPolicy for ScriptedBuster {
    fn choose(&mut self, _position: &Position, _history: &[RoundRecord]) -> BusterAction {
        let action = self.actions.get(self.next).cloned().unwrap_or(BusterAction::Quit);
        self.next += 1;
        action
    }

    fn describe(&self) -> String {
        "script".to_string()
    }
}

/// Busts a uniformly random nonempty subset of the graph, quitting with a
/// fixed probability once at least one round has been survived.
#[derive(Clone, Debug)]
pub struct RandomBuster {
    rng: ChaCha8Rng,
    seed: u64,
    quit_probability: f64,
}

impl RandomBuster {
    pub fn new(seed: u64) -> Self {
        Self::with_quit_probability(seed, 0.15)
    }

    pub fn with_quit_probability(seed: u64, quit_probability: f64) -> Self {
        RandomBuster {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            quit_probability,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl BusterPolicy for RandomBuster {
    fn choose(&mut self, position: &Position, history: &[RoundRecord]) -> BusterAction {
        let ids = position.graph().ids();
        if ids.is_empty() || (!history.is_empty() && self.rng.gen_bool(self.quit_probability)) {
            return BusterAction::Quit;
        }
        loop {
            let pick: EdgeSet = ids.iter().filter(|_| self.rng.gen_bool(0.5)).cloned().collect();
            if !pick.is_empty() {
                return BusterAction::Bust(pick);
            }
        }
    }

    fn describe(&self) -> String {
        format!("random(seed={})", self.seed)
    }
}

/// Responds with a minimum spanning tree of the contracted graph, picking
/// ties deterministically.
#[derive(Clone, Debug, Default)]
pub struct GreedyFixer {
    pub tie_break: TieBreak,
}

impl FixerPolicy for GreedyFixer {
    fn respond(&mut self, position: &Position, busted: &EdgeSet, _history: &[RoundRecord]) -> Result<EdgeSet> {
        greedy_fixer_move(position, busted, self.tie_break)
    }

    fn describe(&self) -> String {
        "greedy".to_string()
    }
}

/// Plays given responses for the first rounds, then defers to greedy.
#[derive(Clone, Debug)]
pub struct ScriptedFixer {
    responses: Vec<EdgeSet>,
    fallback: GreedyFixer,
}

impl ScriptedFixer {
    pub fn new(responses: Vec<EdgeSet>) -> Self {
        ScriptedFixer {
            responses,
            fallback: GreedyFixer::default(),
        }
    }
}

impl FixerPolicy for ScriptedFixer {
    fn respond(&mut self, position: &Position, busted: &EdgeSet, history: &[RoundRecord]) -> Result<EdgeSet> {
        match self.responses.get(history.len()) {
            Some(fixed) => Ok(fixed.clone()),
            None => self.fallback.respond(position, busted, history),
        }
    }

    fn describe(&self) -> String {
        "scripted-then-greedy".to_string()
    }
}

/// Picks uniformly among every legal response, greedy or not.
#[derive(Clone, Debug)]
pub struct RandomFixer {
    rng: ChaCha8Rng,
    seed: u64,
}

impl RandomFixer {
    pub fn new(seed: u64) -> Self {
        RandomFixer {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }
}

impl FixerPolicy for RandomFixer {
    fn respond(&mut self, position: &Position, busted: &EdgeSet, _history: &[RoundRecord]) -> Result<EdgeSet> {
        let mut options = enumerate_fixer_responses(position, busted, false)?;
        let i = self.rng.gen_range(0..options.len());
        Ok(options.swap_remove(i))
    }

    fn describe(&self) -> String {
        format!("random(seed={})", self.seed)
    }
}

/// Runs a series to completion. Quitting before any round is only accepted
/// when Buster has nothing to remove.
pub fn play_series(initial: &Position, buster: &mut dyn BusterPolicy, fixer: &mut dyn FixerPolicy) -> Result<Series> {
    if !is_connected(initial.graph()) {
        return Err(GameError::InvalidSeries("initial graph is disconnected".into()));
    }
    let mut position = initial.clone();
    let mut rounds: Vec<RoundRecord> = Vec::new();
    let outcome = loop {
        let round = rounds.len() + 1;
        let busted = match buster.choose(&position, &rounds) {
            BusterAction::Quit => {
                if rounds.is_empty() && !position.graph().is_empty() {
                    return Err(GameError::PolicyError {
                        round,
                        message: "Buster may only quit after a round he did not win".into(),
                    });
                }
                break Outcome::FixerWin;
            }
            BusterAction::Bust(busted) => busted,
        };
        let won = buster_wins(&position, &busted).map_err(|e| GameError::PolicyError {
            round,
            message: e.to_string(),
        })?;
        let fixed = if won {
            EdgeSet::new()
        } else {
            fixer
                .respond(&position, &busted, &rounds)
                .map_err(|e| GameError::PolicyError {
                    round,
                    message: e.to_string(),
                })?
        };
        let next = apply_round(&position, &busted, &fixed).map_err(|e| GameError::PolicyError {
            round,
            message: e.to_string(),
        })?;
        if !won && !is_connected(next.graph()) {
            return Err(GameError::PolicyError {
                round,
                message: "Fixer's response does not reconnect the graph".into(),
            });
        }
        if next.pool_size() + busted.len() != position.pool_size()
            || next.reserve().total_weight()
                + position
                    .reserve()
                    .select(&fixed)
                    .iter()
                    .map(|e| &e.weight)
                    .sum::<Weight>()
                != position.reserve().total_weight()
        {
            return Err(GameError::IdentityViolation(format!(
                "conservation failed in round {round}"
            )));
        }
        rounds.push(RoundRecord::new(busted, fixed));
        position = next;
        if won {
            break Outcome::BusterWin;
        }
    };
    Series::new(initial.clone(), rounds, outcome)
}
