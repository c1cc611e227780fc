//! Line-based scenario files.
//!
//! ```text
//! # comment
//! name paper_1_2
//! vertex a
//! edge e1 a b 0 G
//! edge e4 a b 1 R
//! buster e1,e2
//! buster quit
//! ```
//!
//! Declarations may appear in any order; `buster` lines form the script in
//! the order written.

use std::collections::{HashMap, HashSet};

use crate::engine::{BusterAction, Position};
use crate::graph_core::{edge_set, is_connected, Edge, Multigraph};
use crate::weight::Weight;

use super::CliIoError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pool {
    Graph,
    Reserve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDecl {
    pub id: String,
    pub u: String,
    pub v: String,
    pub weight: Weight,
    pub pool: Pool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptAction {
    Bust(Vec<String>),
    Quit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioFile {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDecl>,
    pub script: Vec<ScriptAction>,
}

fn parse_error(line: usize, message: impl Into<String>) -> CliIoError {
    CliIoError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_scenario(text: &str) -> Result<ScenarioFile, CliIoError> {
    let mut name = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, EdgeDecl)> = Vec::new();
    let mut script = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "name" => {
                if fields.len() != 2 {
                    return Err(parse_error(line_no, "expected `name <name>`"));
                }
                if name.replace(fields[1].to_string()).is_some() {
                    return Err(parse_error(line_no, "scenario name given twice"));
                }
            }
            "vertex" => {
                if fields.len() != 2 {
                    return Err(parse_error(line_no, "expected `vertex <name>`"));
                }
                if vertices.iter().any(|v| v == fields[1]) {
                    return Err(parse_error(line_no, format!("vertex {} declared twice", fields[1])));
                }
                vertices.push(fields[1].to_string());
            }
            "edge" => {
                if fields.len() != 6 {
                    return Err(parse_error(line_no, "expected `edge <id> <u> <v> <weight> <G|R>`"));
                }
                let weight = Weight::parse_decimal(fields[4]).map_err(|e| parse_error(line_no, e.to_string()))?;
                let pool = match fields[5] {
                    "G" => Pool::Graph,
                    "R" => Pool::Reserve,
                    other => return Err(parse_error(line_no, format!("unknown pool `{other}`, expected G or R"))),
                };
                edges.push((
                    line_no,
                    EdgeDecl {
                        id: fields[1].to_string(),
                        u: fields[2].to_string(),
                        v: fields[3].to_string(),
                        weight,
                        pool,
                    },
                ));
            }
            "buster" => {
                if fields.len() != 2 {
                    return Err(parse_error(
                        line_no,
                        "expected `buster <id>[,<id>...]` or `buster quit`",
                    ));
                }
                if fields[1] == "quit" {
                    script.push(ScriptAction::Quit);
                } else {
                    let ids: Vec<String> = fields[1].split(',').map(str::to_string).collect();
                    if ids.iter().any(String::is_empty) {
                        return Err(parse_error(line_no, "empty edge id in Buster move"));
                    }
                    script.push(ScriptAction::Bust(ids));
                }
            }
            other => return Err(parse_error(line_no, format!("unknown directive `{other}`"))),
        }
    }

    let mut seen = HashSet::new();
    for (line_no, e) in &edges {
        if !seen.insert(e.id.as_str()) {
            return Err(CliIoError::Validation(format!(
                "duplicate edge id {} (line {line_no})",
                e.id
            )));
        }
        for end in [&e.u, &e.v] {
            if !vertices.contains(end) {
                return Err(CliIoError::Validation(format!(
                    "edge {} references undeclared vertex {end} (line {line_no})",
                    e.id
                )));
            }
        }
    }
    for action in &script {
        if let ScriptAction::Bust(ids) = action {
            if let Some(unknown) = ids.iter().find(|id| !seen.contains(id.as_str())) {
                return Err(CliIoError::Validation(format!("script busts unknown edge {unknown}")));
            }
        }
    }
    let scenario = ScenarioFile {
        name: name.unwrap_or_else(|| "unnamed".to_string()),
        vertices,
        edges: edges.into_iter().map(|(_, e)| e).collect(),
        script,
    };
    scenario.to_position()?;
    Ok(scenario)
}

impl ScenarioFile {
    fn pool(&self, pool: Pool) -> Result<Multigraph, CliIoError> {
        if self.vertices.is_empty() {
            return Err(CliIoError::Validation("a scenario needs at least one vertex".into()));
        }
        let index: HashMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.pool == pool)
            .map(|e| Edge::new(&e.id, index[e.u.as_str()], index[e.v.as_str()], e.weight.clone()));
        Multigraph::new(self.vertices.len(), edges).map_err(|e| CliIoError::Validation(e.to_string()))
    }

    /// The starting position. Fails when the graph pool is disconnected.
    pub fn to_position(&self) -> Result<Position, CliIoError> {
        let graph = self.pool(Pool::Graph)?;
        if !is_connected(&graph) {
            return Err(CliIoError::Validation(
                "the initial graph (pool G) is disconnected".into(),
            ));
        }
        let reserve = self.pool(Pool::Reserve)?;
        Position::new(graph, reserve).map_err(|e| CliIoError::Validation(e.to_string()))
    }

    pub fn buster_script(&self) -> Vec<BusterAction> {
        self.script
            .iter()
            .map(|a| match a {
                ScriptAction::Quit => BusterAction::Quit,
                ScriptAction::Bust(ids) => BusterAction::Bust(edge_set(ids)),
            })
            .collect()
    }

    pub fn vertex_name(&self, index: usize) -> &str {
        &self.vertices[index]
    }
}

pub fn render_scenario(s: &ScenarioFile) -> String {
    let mut out = format!("name {}\n", s.name);
    for v in &s.vertices {
        out.push_str(&format!("vertex {v}\n"));
    }
    for e in &s.edges {
        let pool = match e.pool {
            Pool::Graph => "G",
            Pool::Reserve => "R",
        };
        out.push_str(&format!("edge {} {} {} {} {pool}\n", e.id, e.u, e.v, e.weight));
    }
    for a in &s.script {
        match a {
            ScriptAction::Quit => out.push_str("buster quit\n"),
            ScriptAction::Bust(ids) => out.push_str(&format!("buster {}\n", ids.join(","))),
        }
    }
    out
}
