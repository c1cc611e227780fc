//! Round-by-round transcripts.
//!
//! ```text
//! j | G_j | R_j | B_j | F_j | busted | cost | winner
//! 1 | {e1,e2,e3} | {e4,e5} | {e1,e2} | {e4} | 2 | 1 | Fixer
//! 2 | {e3,e4} | {e5} | {e3} | {e5} | 3 | 3 | Fixer
//! result: Fixer (Fixer, 3, 3)
//! ```
//!
//! The busted and cost columns are running totals. Lines starting with `#`
//! carry metadata and are ignored on replay.

use crate::engine::{running_totals, series_totals, Outcome, Position, RoundRecord, Series};
use crate::graph_core::{edge_set, EdgeSet};

use super::CliIoError;

pub const HEADER: &str = "j | G_j | R_j | B_j | F_j | busted | cost | winner";

pub fn format_set(s: &EdgeSet) -> String {
    let ids: Vec<&str> = s.iter().map(|id| id.as_str()).collect();
    format!("{{{}}}", ids.join(","))
}

/// Accepts `{e1,e2}`, `e1,e2`, `{}` and the empty string.
pub fn parse_edge_set(text: &str) -> Option<EdgeSet> {
    let t = text.trim();
    let inner = match (t.strip_prefix('{'), t.ends_with('}')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => t,
        _ => return None,
    };
    let inner = inner.trim();
    if inner.is_empty() || inner == "-" {
        return Some(EdgeSet::new());
    }
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty() || p.contains(char::is_whitespace)) {
        return None;
    }
    Some(edge_set(parts))
}

/// The table for a series: a header, one row per round and a result line.
pub fn render_transcript(s: &Series) -> String {
    let mut out = String::from(HEADER);
    out.push('\n');
    let positions = s.positions();
    let totals = running_totals(s);
    for (k, round) in s.rounds().iter().enumerate() {
        let j = k + 1;
        let winner = if j == s.len() && s.outcome() == Outcome::BusterWin {
            Outcome::BusterWin
        } else {
            Outcome::FixerWin
        };
        out.push_str(&format!(
            "{j} | {} | {} | {} | {} | {} | {} | {winner}\n",
            format_set(&positions[k].graph().ids()),
            format_set(&positions[k].reserve().ids()),
            format_set(&round.busted),
            format_set(&round.fixed),
            totals[k].0,
            totals[k].1,
        ));
    }
    let triple = series_totals(s).expect("a validated series satisfies the end-state identities");
    out.push_str(&format!("result: {} {triple}\n", s.outcome()));
    out
}

/// A series plus the metadata written above its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transcript {
    pub scenario: String,
    pub buster: String,
    pub fixer: String,
    pub seed: Option<u64>,
    pub series: Series,
}

impl Transcript {
    pub fn render(&self) -> String {
        let mut out = format!(
            "# scenario: {}\n# buster: {}\n# fixer: {}\n",
            self.scenario, self.buster, self.fixer
        );
        if let Some(seed) = self.seed {
            out.push_str(&format!("# seed: {seed}\n"));
        }
        out.push_str(&render_transcript(&self.series));
        out
    }
}

fn table_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

/// Reads the moves and the winner back out of a transcript table. Only the
/// `B_j`, `F_j` and result columns are used; the others are checked by
/// [`replay`].
pub fn parse_transcript(text: &str, initial: &Position) -> Result<Series, CliIoError> {
    let lines = table_lines(text);
    let err = |line: usize, message: String| CliIoError::Parse { line, message };
    let Some(&(header_line, header)) = lines.first() else {
        return Err(err(1, "empty transcript".into()));
    };
    if header != HEADER {
        return Err(err(header_line, format!("expected header `{HEADER}`")));
    }
    let Some(&(result_line, result)) = lines.last().filter(|_| lines.len() >= 2) else {
        return Err(err(header_line, "missing result line".into()));
    };
    let outcome = match result
        .strip_prefix("result: ")
        .and_then(|r| r.split_whitespace().next())
    {
        Some("Fixer") => Outcome::FixerWin,
        Some("Buster") => Outcome::BusterWin,
        _ => {
            return Err(err(
                result_line,
                "expected `result: Fixer ...` or `result: Buster ...`".into(),
            ))
        }
    };
    let mut rounds = Vec::new();
    for &(line_no, row) in &lines[1..lines.len() - 1] {
        let cells: Vec<&str> = row.split('|').map(str::trim).collect();
        if cells.len() != 8 {
            return Err(err(line_no, format!("expected 8 columns, found {}", cells.len())));
        }
        if cells[0].parse::<usize>().ok() != Some(rounds.len() + 1) {
            return Err(err(line_no, format!("expected round number {}", rounds.len() + 1)));
        }
        let busted = parse_edge_set(cells[3]).ok_or_else(|| err(line_no, format!("bad edge set `{}`", cells[3])))?;
        let fixed = parse_edge_set(cells[4]).ok_or_else(|| err(line_no, format!("bad edge set `{}`", cells[4])))?;
        rounds.push(RoundRecord::new(busted, fixed));
    }
    Ok(Series::new(initial.clone(), rounds, outcome)?)
}

/// Replays a transcript from `initial` and checks every table line against
/// a fresh rendering.
pub fn replay(initial: &Position, text: &str) -> Result<Series, CliIoError> {
    let series = parse_transcript(text, initial)?;
    let rendered = render_transcript(&series);
    let expected: Vec<&str> = rendered.lines().collect();
    let found = table_lines(text);
    for (i, want) in expected.iter().enumerate() {
        let (line, got) = found.get(i).copied().unwrap_or((found.len() + 1, ""));
        if got != *want {
            return Err(CliIoError::ReplayMismatch {
                line,
                expected: want.to_string(),
                found: got.to_string(),
            });
        }
    }
    Ok(series)
}
