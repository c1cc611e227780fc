//! Exhaustive check that greedy Fixer moves are optimal, and that optimal
//! moves are never more expensive than greedy ones, over every small
//! instance.

use std::fmt;

use rayon::prelude::*;

use crate::engine::{buster_wins, enumerate_buster_moves, Position};
use crate::error::Result;
use crate::graph_core::{is_connected, Edge, EdgeSet, Multigraph};
use crate::reconnect::all_greedy_fixer_moves;
use crate::weight::Weight;

use super::search::fmt_set;
use super::{enumerate_fixer_responses_capped, naive_verdicts, Caps, OptimalityChecker};
use crate::error::GameError;

/// Which instances to generate.
#[derive(Clone, Debug)]
pub struct InstanceSpace {
    pub max_vertices: usize,
    pub max_total_edges: usize,
    pub reserve_weights: Vec<Weight>,
    pub allow_loops: bool,
}

impl Default for InstanceSpace {
    fn default() -> Self {
        InstanceSpace {
            max_vertices: 3,
            max_total_edges: 5,
            reserve_weights: (0..=2).map(Weight::from_integer).collect(),
            allow_loops: true,
        }
    }
}

fn multisets<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], size: usize, from: usize, current: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in from..items.len() {
            current.push(items[i].clone());
            go(items, size, i, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(items, size, 0, &mut Vec::with_capacity(size), &mut out);
    out
}

/// Every instance in the space: a connected nonempty graph on `n` vertices
/// (edges carry weight 0) plus a reserve whose edges take the listed
/// weights. Graphs and reserves are enumerated as multisets of endpoint
/// pairs, so no two instances share a key; vertices are not relabelled.
/// Graph edges are named `e1..`, reserve edges continue the numbering.
pub fn exhaustive_instances(space: &InstanceSpace) -> Vec<Position> {
    let mut out = Vec::new();
    for n in 1..=space.max_vertices {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u..n).map(move |v| (u, v)))
            .filter(|(u, v)| space.allow_loops || u != v)
            .collect();
        let reserve_kinds: Vec<((usize, usize), Weight)> = pairs
            .iter()
            .flat_map(|&p| space.reserve_weights.iter().map(move |w| (p, w.clone())))
            .collect();
        for g in 1..=space.max_total_edges {
            for graph_pairs in multisets(&pairs, g) {
                let graph = Multigraph::new(
                    n,
                    graph_pairs
                        .iter()
                        .enumerate()
                        .map(|(i, &(u, v))| Edge::new(format!("e{}", i + 1), u, v, Weight::zero())),
                )
                .expect("generated edges are in range");
                if !is_connected(&graph) {
                    continue;
                }
                for r in 0..=(space.max_total_edges - g) {
                    for reserve_kinds in multisets(&reserve_kinds, r) {
                        let reserve = Multigraph::new(
                            n,
                            reserve_kinds
                                .iter()
                                .enumerate()
                                .map(|(i, ((u, v), w))| Edge::new(format!("e{}", g + i + 1), *u, *v, w.clone())),
                        )
                        .expect("generated edges are in range");
                        out.push(Position::new(graph.clone(), reserve).expect("ids are disjoint"));
                    }
                }
            }
        }
    }
    out
}

pub fn describe_position(p: &Position) -> String {
    let show = |edges: &[Edge], weighted: bool| {
        edges
            .iter()
            .map(|e| {
                if weighted {
                    format!("{}:{}-{}@{}", e.id, e.u, e.v, e.weight)
                } else {
                    format!("{}:{}-{}", e.id, e.u, e.v)
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "n={} G=[{}] R=[{}]",
        p.vertex_count(),
        show(p.graph().edges(), false),
        show(p.reserve().edges(), true)
    )
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub caps: Caps,
    /// Restrict the alternatives to all-bridge responses in the primary check.
    pub bridge_prune: bool,
    /// Also verify with the opposite prune setting and compare.
    pub compare_prune: bool,
    /// Cross-check against the strategy-materializing oracle on instances
    /// with at most this many edges; 0 disables the cross-check.
    pub naive_cap: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            caps: Caps::default(),
            bridge_prune: true,
            compare_prune: true,
            naive_cap: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounterexampleKind {
    /// A minimum-spanning-tree response failed the optimality check.
    GreedyNotOptimal,
    /// A response heavier than the cheapest one passed the optimality check.
    OptimalNotMinimum,
    /// The answer changed when the alternatives were restricted to bridges.
    PruneDisagreement,
    /// The game-tree verifier and the brute-force oracle disagree.
    OracleDisagreement,
}

impl fmt::Display for CounterexampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CounterexampleKind::GreedyNotOptimal => "greedy-not-optimal",
            CounterexampleKind::OptimalNotMinimum => "optimal-not-minimum",
            CounterexampleKind::PruneDisagreement => "prune-disagreement",
            CounterexampleKind::OracleDisagreement => "oracle-disagreement",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub kind: CounterexampleKind,
    pub instance: String,
    pub busted: EdgeSet,
    pub response: EdgeSet,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} busted={} response={}",
            self.kind,
            self.instance,
            fmt_set(&self.busted),
            fmt_set(&self.response)
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub instances: usize,
    pub buster_moves: usize,
    pub buster_win_moves: usize,
    pub responses_checked: usize,
    pub greedy_checked: usize,
    pub greedy_optimal: usize,
    pub non_minimum_checked: usize,
    pub non_minimum_optimal: usize,
    /// Cheapest responses that are not spanning trees (zero-weight extras).
    pub min_weight_non_tree_checked: usize,
    pub min_weight_non_tree_optimal: usize,
    pub prune_compared: usize,
    pub naive_compared: usize,
    pub naive_skipped: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn count(&self, kind: CounterexampleKind) -> usize {
        self.counterexamples.iter().filter(|c| c.kind == kind).count()
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.instances += other.instances;
        self.buster_moves += other.buster_moves;
        self.buster_win_moves += other.buster_win_moves;
        self.responses_checked += other.responses_checked;
        self.greedy_checked += other.greedy_checked;
        self.greedy_optimal += other.greedy_optimal;
        self.non_minimum_checked += other.non_minimum_checked;
        self.non_minimum_optimal += other.non_minimum_optimal;
        self.min_weight_non_tree_checked += other.min_weight_non_tree_checked;
        self.min_weight_non_tree_optimal += other.min_weight_non_tree_optimal;
        self.prune_compared += other.prune_compared;
        self.naive_compared += other.naive_compared;
        self.naive_skipped += other.naive_skipped;
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instances: {}", self.instances)?;
        writeln!(
            f,
            "buster moves: {} ({} immediate Buster wins)",
            self.buster_moves, self.buster_win_moves
        )?;
        writeln!(f, "responses checked: {}", self.responses_checked)?;
        writeln!(
            f,
            "greedy responses optimal: {}/{}",
            self.greedy_optimal, self.greedy_checked
        )?;
        writeln!(
            f,
            "non-minimum responses optimal: {}/{}",
            self.non_minimum_optimal, self.non_minimum_checked
        )?;
        writeln!(
            f,
            "minimum-weight non-tree responses optimal: {}/{}",
            self.min_weight_non_tree_optimal, self.min_weight_non_tree_checked
        )?;
        writeln!(f, "prune comparisons: {}", self.prune_compared)?;
        writeln!(
            f,
            "oracle comparisons: {} (skipped over strategy cap: {})",
            self.naive_compared, self.naive_skipped
        )?;
        writeln!(f, "counterexamples: {}", self.counterexamples.len())?;
        for c in &self.counterexamples {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

fn check_instance(p: &Position, config: &SweepConfig) -> Result<SweepReport> {
    let caps = config.caps;
    let mut report = SweepReport {
        instances: 1,
        ..SweepReport::default()
    };
    let mut checker = OptimalityChecker::new(p, caps)?;
    let instance = describe_position(p);
    let flag = |report: &mut SweepReport, kind, busted: &EdgeSet, response: &EdgeSet| {
        report.counterexamples.push(Counterexample {
            kind,
            instance: instance.clone(),
            busted: busted.clone(),
            response: response.clone(),
        })
    };

    for busted in enumerate_buster_moves(p, caps.max_subset_bits)? {
        report.buster_moves += 1;
        let (responses, greedy) = if buster_wins(p, &busted)? {
            report.buster_win_moves += 1;
            (vec![EdgeSet::new()], vec![EdgeSet::new()])
        } else {
            (
                enumerate_fixer_responses_capped(p, &busted, false, caps.max_subset_bits)?,
                all_greedy_fixer_moves(p, &busted)?,
            )
        };
        let cost = |f: &EdgeSet| -> Weight { p.reserve().select(f).iter().map(|e| &e.weight).sum() };
        let cheapest = responses.iter().map(&cost).min().expect("at least one legal response");

        for response in &responses {
            report.responses_checked += 1;
            let optimal = checker.verify(&busted, response, config.bridge_prune)?.optimal;
            if config.compare_prune {
                report.prune_compared += 1;
                if checker.verify(&busted, response, !config.bridge_prune)?.optimal != optimal {
                    flag(&mut report, CounterexampleKind::PruneDisagreement, &busted, response);
                }
            }
            let minimum = cost(response) == cheapest;
            if greedy.contains(response) {
                report.greedy_checked += 1;
                if optimal {
                    report.greedy_optimal += 1;
                } else {
                    flag(&mut report, CounterexampleKind::GreedyNotOptimal, &busted, response);
                }
            } else if minimum {
                report.min_weight_non_tree_checked += 1;
                if optimal {
                    report.min_weight_non_tree_optimal += 1;
                }
            } else {
                report.non_minimum_checked += 1;
                if optimal {
                    report.non_minimum_optimal += 1;
                    flag(&mut report, CounterexampleKind::OptimalNotMinimum, &busted, response);
                }
            }
        }
        if config.naive_cap > 0 && p.pool_size() <= config.naive_cap {
            let oracle_caps = Caps {
                naive_max_total_edges: config.naive_cap,
                ..caps
            };
            match naive_verdicts(p, &busted, &oracle_caps) {
                Ok(verdicts) => {
                    for (response, naive) in verdicts {
                        report.naive_compared += 1;
                        if naive != checker.verify(&busted, &response, config.bridge_prune)?.optimal {
                            flag(&mut report, CounterexampleKind::OracleDisagreement, &busted, &response);
                        }
                    }
                }
                Err(GameError::CapExceeded { .. }) => report.naive_skipped += responses.len(),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(report)
}

/// Checks every Buster move and every legal response on every instance.
/// Instances are checked in parallel; each owns its memo tables.
pub fn theorem_sweep(instances: &[Position], config: &SweepConfig) -> Result<SweepReport> {
    let reports: Vec<Result<SweepReport>> = instances.par_iter().map(|p| check_instance(p, config)).collect();
    let mut total = SweepReport::default();
    for report in reports {
        total = total.merge(report?);
    }
    Ok(total)
}
