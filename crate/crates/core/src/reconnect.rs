//! Minimum spanning trees of contracted multigraphs.
//!
//! A greedy Fixer response is exactly a minimum spanning tree of the graph
//! whose vertices are the components left after Buster's move and whose
//! edges are the reserve edges. Prim's algorithm builds one; brute-force
//! enumeration lists all of them; [`prim_reachable`] decides whether a given
//! tree can come out of some run of Prim's algorithm.

use std::collections::HashSet;

use crate::engine::{buster_wins, Position};
use crate::error::{GameError, Result};
use crate::graph_core::{contract, is_connected, ContractedGraph, Edge, EdgeId, EdgeSet, UnionFind};
use crate::weight::Weight;

/// Largest contracted graph `prim_reachable` will search; its memo table is
/// indexed by vertex subsets.
pub const PRIM_REACHABLE_MAX_COMPONENTS: usize = 20;

/// How Prim's algorithm chooses among equally cheap crossing edges. The run
/// always starts from component 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    #[default]
    SmallestId,
    LargestId,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpanningTree {
    pub edge_ids: EdgeSet,
    pub total_weight: Weight,
}

/// One run of Prim's algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimTrace {
    pub start_vertex: usize,
    pub addition_order: Vec<EdgeId>,
}

fn crossing<'a, 'b>(m: &'a ContractedGraph, inside: &'b [bool]) -> impl Iterator<Item = &'a Edge> + use<'a, 'b> {
    m.edges.iter().filter(move |e| inside[e.u] != inside[e.v])
}

pub fn prim_trace(m: &ContractedGraph, tie_break: TieBreak) -> Result<PrimTrace> {
    let c = m.component_count;
    let mut inside = vec![false; c];
    inside[0] = true;
    let mut order = Vec::with_capacity(c.saturating_sub(1));
    for _ in 1..c {
        let best = crossing(m, &inside).min_by(|a, b| {
            a.weight.cmp(&b.weight).then_with(|| match tie_break {
                TieBreak::SmallestId => a.id.cmp(&b.id),
                TieBreak::LargestId => b.id.cmp(&a.id),
            })
        });
        let Some(edge) = best else {
            return Err(GameError::Disconnected);
        };
        inside[edge.u] = true;
        inside[edge.v] = true;
        order.push(edge.id.clone());
    }
    Ok(PrimTrace {
        start_vertex: 0,
        addition_order: order,
    })
}

fn tree_from_ids(m: &ContractedGraph, ids: EdgeSet) -> SpanningTree {
    let total_weight = ids.iter().filter_map(|id| m.edge(id)).map(|e| &e.weight).sum();
    SpanningTree {
        edge_ids: ids,
        total_weight,
    }
}

pub fn prim_mst(m: &ContractedGraph, tie_break: TieBreak) -> Result<SpanningTree> {
    let trace = prim_trace(m, tie_break)?;
    Ok(tree_from_ids(m, trace.addition_order.into_iter().collect()))
}

/// Every spanning tree, by backtracking over subsets of the non-loop edges.
pub fn all_spanning_trees(m: &ContractedGraph) -> Result<Vec<SpanningTree>> {
    if !m.is_connected() {
        return Err(GameError::Disconnected);
    }
    let candidates: Vec<&Edge> = m.edges.iter().filter(|e| !e.is_loop()).collect();
    let need = m.component_count - 1;
    let mut trees = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(need);

    fn extend(
        m: &ContractedGraph,
        candidates: &[&Edge],
        need: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        trees: &mut Vec<SpanningTree>,
    ) {
        if chosen.len() == need {
            let mut uf = UnionFind::new(m.component_count);
            if chosen.iter().all(|&i| uf.union(candidates[i].u, candidates[i].v)) {
                let ids = chosen.iter().map(|&i| candidates[i].id.clone()).collect();
                trees.push(tree_from_ids(m, ids));
            }
            return;
        }
        if candidates.len() - from < need - chosen.len() {
            return;
        }
        for i in from..candidates.len() {
            chosen.push(i);
            extend(m, candidates, need, i + 1, chosen, trees);
            chosen.pop();
        }
    }

    extend(m, &candidates, need, 0, &mut chosen, &mut trees);
    trees.sort();
    Ok(trees)
}

/// All minimum spanning trees, found by exhaustive enumeration.
pub fn all_msts(m: &ContractedGraph) -> Result<Vec<SpanningTree>> {
    let trees = all_spanning_trees(m)?;
    let Some(best) = trees.iter().map(|t| t.total_weight.clone()).min() else {
        return Err(GameError::Disconnected);
    };
    Ok(trees.into_iter().filter(|t| t.total_weight == best).collect())
}

fn check_spanning_tree(m: &ContractedGraph, t: &SpanningTree) -> Result<Vec<Edge>> {
    let bad = |msg: String| Err(GameError::NotSpanningTree(msg));
    let mut edges = Vec::with_capacity(t.edge_ids.len());
    for id in &t.edge_ids {
        match m.edge(id) {
            Some(e) if e.is_loop() => return bad(format!("edge {id} is a loop")),
            Some(e) => edges.push(e.clone()),
            None => return bad(format!("edge {id} is not in the contracted graph")),
        }
    }
    if edges.len() + 1 != m.component_count {
        return bad(format!(
            "{} edges cannot span {} vertices",
            edges.len(),
            m.component_count
        ));
    }
    let mut uf = UnionFind::new(m.component_count);
    if !edges.iter().all(|e| uf.union(e.u, e.v)) {
        return bad("edges contain a cycle".into());
    }
    let total: Weight = edges.iter().map(|e| &e.weight).sum();
    if total != t.total_weight {
        return bad(format!("declared weight {} but edges sum to {total}", t.total_weight));
    }
    Ok(edges)
}

/// A Prim run that produces exactly `t`, if one exists.
///
/// From a set `S` of tree vertices, Prim may add any edge of `t` that leaves
/// `S` and is as cheap as every edge of the whole graph leaving `S`. The
/// search memoizes vertex sets already shown to be dead ends.
pub fn prim_reachable(m: &ContractedGraph, t: &SpanningTree) -> Result<Option<PrimTrace>> {
    let tree_edges = check_spanning_tree(m, t)?;
    let c = m.component_count;
    if c > PRIM_REACHABLE_MAX_COMPONENTS {
        return Err(GameError::CapExceeded {
            what: "Prim reachability search over components",
            size: c,
            cap: PRIM_REACHABLE_MAX_COMPONENTS,
        });
    }
    let full: u32 = if c == 32 { u32::MAX } else { (1u32 << c) - 1 };
    let non_loops: Vec<&Edge> = m.edges.iter().filter(|e| !e.is_loop()).collect();

    fn search(
        set: u32,
        full: u32,
        non_loops: &[&Edge],
        tree_edges: &[Edge],
        dead: &mut HashSet<u32>,
        order: &mut Vec<EdgeId>,
    ) -> bool {
        if set == full {
            return true;
        }
        if dead.contains(&set) {
            return false;
        }
        let leaves = |e: &Edge| (set >> e.u & 1) != (set >> e.v & 1);
        let cheapest = non_loops.iter().filter(|e| leaves(e)).map(|e| &e.weight).min();
        if let Some(cheapest) = cheapest {
            for e in tree_edges.iter().filter(|e| leaves(e) && &e.weight == cheapest) {
                order.push(e.id.clone());
                if search(set | 1 << e.u | 1 << e.v, full, non_loops, tree_edges, dead, order) {
                    return true;
                }
                order.pop();
            }
        }
        dead.insert(set);
        false
    }

    for start in 0..c {
        let mut dead = HashSet::new();
        let mut order = Vec::new();
        if search(1 << start, full, &non_loops, &tree_edges, &mut dead, &mut order) {
            return Ok(Some(PrimTrace {
                start_vertex: start,
                addition_order: order,
            }));
        }
    }
    Ok(None)
}

fn contracted_after(position: &Position, busted: &EdgeSet) -> Result<Option<ContractedGraph>> {
    if buster_wins(position, busted)? {
        return Err(GameError::BusterWins);
    }
    let remaining = position.graph().without(busted);
    if is_connected(&remaining) {
        return Ok(None);
    }
    Ok(Some(contract(&remaining, position.reserve())))
}

/// Fixer's greedy response: nothing if the graph survived, otherwise the
/// reserve edges of a minimum spanning tree of the contracted graph.
/// Fails with [`GameError::BusterWins`] when no response can reconnect.
pub fn greedy_fixer_move(position: &Position, busted: &EdgeSet, tie_break: TieBreak) -> Result<EdgeSet> {
    match contracted_after(position, busted)? {
        None => Ok(EdgeSet::new()),
        Some(m) => Ok(prim_mst(&m, tie_break)?.edge_ids),
    }
}

/// Every greedy response: one per minimum spanning tree of the contracted
/// graph, or just the empty response when the graph survived.
pub fn all_greedy_fixer_moves(position: &Position, busted: &EdgeSet) -> Result<Vec<EdgeSet>> {
    match contracted_after(position, busted)? {
        None => Ok(vec![EdgeSet::new()]),
        Some(m) => Ok(all_msts(&m)?.into_iter().map(|t| t.edge_ids).collect()),
    }
}
