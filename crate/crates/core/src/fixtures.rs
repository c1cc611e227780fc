//! The worked three-vertex instance: a triangle `e1 = a–b`, `e2 = b–c`,
//! `e3 = c–a` with reserve edges `e4 = a–b` (weight 1) and `e5 = b–c`
//! (weight 2). Graph edges carry weight 0; their weight never matters.

use crate::engine::Position;
use crate::graph_core::{Edge, Multigraph};
use crate::weight::Weight;

pub const EXAMPLE_SCENARIO: &str = include_str!("../scenarios/paper_1_2.scn");

pub fn example_position() -> Position {
    let w = Weight::from_integer;
    let graph = Multigraph::new(
        3,
        [
            Edge::new("e1", 0, 1, w(0)),
            Edge::new("e2", 1, 2, w(0)),
            Edge::new("e3", 2, 0, w(0)),
        ],
    )
    .expect("static graph");
    let reserve =
        Multigraph::new(3, [Edge::new("e4", 0, 1, w(1)), Edge::new("e5", 1, 2, w(2))]).expect("static reserve");
    Position::new(graph, reserve).expect("disjoint pools")
}
