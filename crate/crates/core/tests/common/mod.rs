//! The worked example's three strategy tables, typed in row by row.
#![allow(dead_code)]

use buster_fixer::edge_set;
use buster_fixer::engine::{play_series, BusterAction, ScriptedBuster, ScriptedFixer, Series};
use buster_fixer::fixtures::example_position;

pub struct TableSeries {
    /// Golden file stem, e.g. `t03`, `tp10`, `tpp17`.
    pub name: &'static str,
    /// Fixer's round-1 response that the table continues.
    pub first_fix: &'static [&'static str],
    /// Buster's moves; he quits if the last one is not a win.
    pub script: &'static [&'static [&'static str]],
    /// Expected table rows, `j | G_j | R_j | B_j | F_j | ΣB | Σw | winner`.
    pub rows: Vec<&'static str>,
}

impl TableSeries {
    pub fn play(&self) -> Series {
        let actions = self
            .script
            .iter()
            .map(|b| BusterAction::Bust(edge_set(b.iter().copied())))
            .collect();
        let mut buster = ScriptedBuster::new(actions);
        let mut fixer = ScriptedFixer::new(vec![edge_set(self.first_fix.iter().copied())]);
        play_series(&example_position(), &mut buster, &mut fixer).expect("table series is legal")
    }

    /// Last row's totals and winner.
    pub fn final_cells(&self) -> (usize, String, String) {
        let cells: Vec<&str> = self.rows.last().unwrap().split(" | ").collect();
        (cells[5].parse().unwrap(), cells[6].to_string(), cells[7].to_string())
    }
}

const E12: &[&str] = &["e1", "e2"];

fn s(
    name: &'static str,
    first_fix: &'static [&'static str],
    script: &'static [&'static [&'static str]],
    rows: &[&'static str],
) -> TableSeries {
    TableSeries {
        name,
        first_fix,
        script,
        rows: rows.to_vec(),
    }
}

pub fn phi() -> Vec<TableSeries> {
    const R1: &str = "1 | {e1,e2,e3} | {e4,e5} | {e1,e2} | {e4} | 2 | 1 | Fixer";
    const R2A: &str = "2 | {e3,e4} | {e5} | {e3} | {e5} | 3 | 3 | Fixer";
    const R2B: &str = "2 | {e3,e4} | {e5} | {e4} | {e5} | 3 | 3 | Fixer";
    const F: &[&str] = &["e4"];
    vec![
        s("t01", F, &[E12], &[R1]),
        s("t02", F, &[E12, &["e3"]], &[R1, R2A]),
        s(
            "t03",
            F,
            &[E12, &["e3"], &["e4"]],
            &[R1, R2A, "3 | {e4,e5} | {} | {e4} | {} | 4 | 3 | Buster"],
        ),
        s(
            "t04",
            F,
            &[E12, &["e3"], &["e5"]],
            &[R1, R2A, "3 | {e4,e5} | {} | {e5} | {} | 4 | 3 | Buster"],
        ),
        s(
            "t05",
            F,
            &[E12, &["e3"], &["e4", "e5"]],
            &[R1, R2A, "3 | {e4,e5} | {} | {e4,e5} | {} | 5 | 3 | Buster"],
        ),
        s("t06", F, &[E12, &["e4"]], &[R1, R2B]),
        s(
            "t07",
            F,
            &[E12, &["e4"], &["e3"]],
            &[R1, R2B, "3 | {e3,e5} | {} | {e3} | {} | 4 | 3 | Buster"],
        ),
        s(
            "t08",
            F,
            &[E12, &["e4"], &["e5"]],
            &[R1, R2B, "3 | {e3,e5} | {} | {e5} | {} | 4 | 3 | Buster"],
        ),
        s(
            "t09",
            F,
            &[E12, &["e4"], &["e3", "e5"]],
            &[R1, R2B, "3 | {e3,e5} | {} | {e3,e5} | {} | 5 | 3 | Buster"],
        ),
        s(
            "t10",
            F,
            &[E12, &["e3", "e4"]],
            &[R1, "2 | {e3,e4} | {e5} | {e3,e4} | {} | 4 | 1 | Buster"],
        ),
    ]
}

pub fn phi_prime() -> Vec<TableSeries> {
    const R1: &str = "1 | {e1,e2,e3} | {e4,e5} | {e1,e2} | {e5} | 2 | 2 | Fixer";
    const R2A: &str = "2 | {e3,e5} | {e4} | {e3} | {e4} | 3 | 3 | Fixer";
    const R2B: &str = "2 | {e3,e5} | {e4} | {e5} | {e4} | 3 | 3 | Fixer";
    const F: &[&str] = &["e5"];
    vec![
        s("tp01", F, &[E12], &[R1]),
        s("tp02", F, &[E12, &["e3"]], &[R1, R2A]),
        s(
            "tp03",
            F,
            &[E12, &["e3"], &["e4"]],
            &[R1, R2A, "3 | {e4,e5} | {} | {e4} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tp04",
            F,
            &[E12, &["e3"], &["e5"]],
            &[R1, R2A, "3 | {e4,e5} | {} | {e5} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tp05",
            F,
            &[E12, &["e3"], &["e4", "e5"]],
            &[R1, R2A, "3 | {e4,e5} | {} | {e4,e5} | {} | 5 | 3 | Buster"],
        ),
        s("tp06", F, &[E12, &["e5"]], &[R1, R2B]),
        s(
            "tp07",
            F,
            &[E12, &["e5"], &["e3"]],
            &[R1, R2B, "3 | {e3,e4} | {} | {e3} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tp08",
            F,
            &[E12, &["e5"], &["e4"]],
            &[R1, R2B, "3 | {e3,e4} | {} | {e4} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tp09",
            F,
            &[E12, &["e5"], &["e3", "e4"]],
            &[R1, R2B, "3 | {e3,e4} | {} | {e3,e4} | {} | 5 | 3 | Buster"],
        ),
        s(
            "tp10",
            F,
            &[E12, &["e3", "e5"]],
            &[R1, "2 | {e3,e5} | {e4} | {e3,e5} | {} | 4 | 2 | Buster"],
        ),
    ]
}

pub fn phi_double_prime() -> Vec<TableSeries> {
    const R1: &str = "1 | {e1,e2,e3} | {e4,e5} | {e1,e2} | {e4,e5} | 2 | 3 | Fixer";
    const R2A: &str = "2 | {e3,e4,e5} | {} | {e3} | {} | 3 | 3 | Fixer";
    const R2B: &str = "2 | {e3,e4,e5} | {} | {e4} | {} | 3 | 3 | Fixer";
    const R2C: &str = "2 | {e3,e4,e5} | {} | {e5} | {} | 3 | 3 | Fixer";
    const F: &[&str] = &["e4", "e5"];
    vec![
        s("tpp01", F, &[E12], &[R1]),
        s("tpp02", F, &[E12, &["e3"]], &[R1, R2A]),
        s(
            "tpp03",
            F,
            &[E12, &["e3"], &["e4"]],
            &[R1, R2A, "3 | {e4,e5} | {} | {e4} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tpp04",
            F,
            &[E12, &["e3"], &["e5"]],
            &[R1, R2A, "3 | {e4,e5} | {} | {e5} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tpp05",
            F,
            &[E12, &["e3"], &["e4", "e5"]],
            &[R1, R2A, "3 | {e4,e5} | {} | {e4,e5} | {} | 5 | 3 | Buster"],
        ),
        s("tpp06", F, &[E12, &["e4"]], &[R1, R2B]),
        s(
            "tpp07",
            F,
            &[E12, &["e4"], &["e3"]],
            &[R1, R2B, "3 | {e3,e5} | {} | {e3} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tpp08",
            F,
            &[E12, &["e4"], &["e5"]],
            &[R1, R2B, "3 | {e3,e5} | {} | {e5} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tpp09",
            F,
            &[E12, &["e4"], &["e3", "e5"]],
            &[R1, R2B, "3 | {e3,e5} | {} | {e3,e5} | {} | 5 | 3 | Buster"],
        ),
        s("tpp10", F, &[E12, &["e5"]], &[R1, R2C]),
        s(
            "tpp11",
            F,
            &[E12, &["e5"], &["e3"]],
            &[R1, R2C, "3 | {e3,e4} | {} | {e3} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tpp12",
            F,
            &[E12, &["e5"], &["e4"]],
            &[R1, R2C, "3 | {e3,e4} | {} | {e4} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tpp13",
            F,
            &[E12, &["e5"], &["e3", "e4"]],
            &[R1, R2C, "3 | {e3,e4} | {} | {e3,e4} | {} | 5 | 3 | Buster"],
        ),
        s(
            "tpp14",
            F,
            &[E12, &["e3", "e4"]],
            &[R1, "2 | {e3,e4,e5} | {} | {e3,e4} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tpp15",
            F,
            &[E12, &["e3", "e5"]],
            &[R1, "2 | {e3,e4,e5} | {} | {e3,e5} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tpp16",
            F,
            &[E12, &["e4", "e5"]],
            &[R1, "2 | {e3,e4,e5} | {} | {e4,e5} | {} | 4 | 3 | Buster"],
        ),
        s(
            "tpp17",
            F,
            &[E12, &["e3", "e4", "e5"]],
            &[R1, "2 | {e3,e4,e5} | {} | {e3,e4,e5} | {} | 5 | 3 | Buster"],
        ),
    ]
}

pub fn all_table_series() -> Vec<TableSeries> {
    let mut all = phi();
    all.extend(phi_prime());
    all.extend(phi_double_prime());
    all
}
