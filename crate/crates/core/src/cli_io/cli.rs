use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::adjudicator::sweep::{exhaustive_instances, theorem_sweep, InstanceSpace, SweepConfig};
use crate::adjudicator::{verify_optimal_naive, Caps, OptimalityChecker};
use crate::engine::{
    buster_wins, play_series, BusterAction, BusterPolicy, GreedyFixer, Position, RandomBuster, RoundRecord,
    ScriptedBuster,
};
use crate::error::GameError;
use crate::graph_core::{components, contract};
use crate::reconnect::{all_msts, prim_reachable};
use crate::weight::Weight;

use super::scenario::{parse_scenario, ScenarioFile};
use super::transcript::{format_set, parse_edge_set, replay, Transcript};
use super::CliIoError;

#[derive(Debug, Parser)]
#[command(
    name = "buster-fixer",
    version,
    about = "Simulate and adjudicate the Buster/Fixer edge game"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Play a series with the greedy Fixer and print its transcript.
    Simulate {
        scenario: PathBuf,
        /// Use a seeded random Buster instead of the scenario script.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a Fixer response is optimal in the first round.
    Verify {
        scenario: PathBuf,
        #[arg(long)]
        busted: String,
        /// Reserve edges, e.g. `e4,e5`; `{}` for the empty response.
        #[arg(long, allow_hyphen_values = true)]
        candidate: String,
        #[arg(long, default_value_t = Caps::default().max_total_edges)]
        max_total_edges: usize,
        /// Compare against every reconnecting response, not only all-bridge ones.
        #[arg(long)]
        no_bridge_prune: bool,
        /// Cross-check with the brute-force oracle when |G|+|R| is at most this.
        #[arg(long, default_value_t = Caps::default().naive_max_total_edges)]
        naive_cap: usize,
    },
    /// Check greedy optimality over every small instance.
    TheoremSweep {
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        #[arg(long, default_value_t = 5)]
        max_total_edges: usize,
        /// Reserve edge weights to try.
        #[arg(long, default_value = "0,1,2", value_delimiter = ',')]
        weights: Vec<String>,
        #[arg(long)]
        no_loops: bool,
        #[arg(long)]
        no_bridge_prune: bool,
        /// Skip re-verifying with the opposite prune setting.
        #[arg(long)]
        no_compare_prune: bool,
        /// Cross-check with the brute-force oracle up to this many edges; 0 disables it.
        #[arg(long, default_value_t = 0)]
        naive_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the minimum spanning trees of the contracted graph after a bust.
    Msts {
        scenario: PathBuf,
        #[arg(long)]
        busted: String,
    },
    /// Re-run a transcript and compare it line by line.
    Replay { scenario: PathBuf, transcript: PathBuf },
    /// Play Buster from the terminal against the greedy Fixer.
    Play { scenario: PathBuf },
}

/// Exit status: 0 success, 1 a check failed, 2 bad usage or input.
#[derive(Debug)]
enum Failure {
    Check(String),
    Usage(String),
}

impl From<CliIoError> for Failure {
    fn from(e: CliIoError) -> Self {
        match e {
            CliIoError::ReplayMismatch { .. } => Failure::Check(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let result = match cli.command {
        Command::Simulate { scenario, seed, out } => simulate(&scenario, seed, out.as_deref(), stdout),
        Command::Verify {
            scenario,
            busted,
            candidate,
            max_total_edges,
            no_bridge_prune,
            naive_cap,
        } => verify(
            &scenario,
            &busted,
            &candidate,
            max_total_edges,
            !no_bridge_prune,
            naive_cap,
            stdout,
        ),
        Command::TheoremSweep {
            max_vertices,
            max_total_edges,
            weights,
            no_loops,
            no_bridge_prune,
            no_compare_prune,
            naive_cap,
            out,
        } => sweep(
            InstanceSpaceArgs {
                max_vertices,
                max_total_edges,
                weights,
                allow_loops: !no_loops,
            },
            SweepConfig {
                bridge_prune: !no_bridge_prune,
                compare_prune: !no_compare_prune,
                naive_cap,
                caps: Caps {
                    max_total_edges: max_total_edges.max(Caps::default().max_total_edges),
                    ..Caps::default()
                },
            },
            out.as_deref(),
            stdout,
        ),
        Command::Msts { scenario, busted } => msts(&scenario, &busted, stdout),
        Command::Replay { scenario, transcript } => replay_files(&scenario, &transcript, stdout),
        Command::Play { scenario } => play(&scenario, stdin, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

fn load(path: &Path) -> Result<(ScenarioFile, Position), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let scenario = parse_scenario(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let position = scenario.to_position()?;
    Ok((scenario, position))
}

fn edge_set_arg(flag: &str, text: &str) -> Result<crate::graph_core::EdgeSet, Failure> {
    parse_edge_set(text).ok_or_else(|| Failure::Usage(format!("--{flag}: cannot read edge set `{text}`")))
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn simulate(path: &Path, seed: Option<u64>, out: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    let (scenario, position) = load(path)?;
    let mut buster: Box<dyn BusterPolicy> = match seed {
        Some(seed) => Box::new(RandomBuster::new(seed)),
        None if scenario.script.is_empty() => {
            return Err(Failure::Usage(
                "scenario has no Buster script; pass --seed for a random Buster".into(),
            ))
        }
        None => Box::new(ScriptedBuster::new(scenario.buster_script())),
    };
    let mut fixer = GreedyFixer::default();
    let series = play_series(&position, buster.as_mut(), &mut fixer)?;
    let transcript = Transcript {
        scenario: scenario.name.clone(),
        buster: buster.describe(),
        fixer: "greedy".into(),
        seed,
        series,
    };
    emit(&transcript.render(), out, stdout)
}

fn verify(
    path: &Path,
    busted: &str,
    candidate: &str,
    max_total_edges: usize,
    bridge_prune: bool,
    naive_cap: usize,
    stdout: &mut dyn Write,
) -> Outcome {
    let (_, position) = load(path)?;
    let busted = edge_set_arg("busted", busted)?;
    let candidate = edge_set_arg("candidate", candidate)?;
    let caps = Caps {
        max_total_edges,
        naive_max_total_edges: naive_cap,
        ..Caps::default()
    };
    let verdict = OptimalityChecker::new(&position, caps)?.verify(&busted, &candidate, bridge_prune)?;
    writeln!(stdout, "{}", if verdict.optimal { "OPTIMAL" } else { "NOT-OPTIMAL" })?;
    writeln!(stdout, "witness: {}", verdict.witness)?;
    writeln!(
        stdout,
        "alternatives compared: {}, states explored: {}",
        verdict.alternatives, verdict.states_explored
    )?;
    let mut agrees = true;
    if naive_cap > 0 && position.pool_size() <= naive_cap {
        match verify_optimal_naive(&position, &busted, &candidate, &caps) {
            Ok(naive) => {
                agrees = naive == verdict.optimal;
                writeln!(
                    stdout,
                    "brute-force oracle: {}",
                    if agrees { "agrees" } else { "DISAGREES" }
                )?;
            }
            Err(GameError::CapExceeded { .. }) => writeln!(stdout, "brute-force oracle: skipped (strategy cap)")?,
            Err(e) => return Err(e.into()),
        }
    }
    if !agrees {
        return Err(Failure::Check("verifier and brute-force oracle disagree".into()));
    }
    if verdict.optimal {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} is not optimal", format_set(&candidate))))
    }
}

struct InstanceSpaceArgs {
    max_vertices: usize,
    max_total_edges: usize,
    weights: Vec<String>,
    allow_loops: bool,
}

fn sweep(args: InstanceSpaceArgs, config: SweepConfig, out: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    let reserve_weights = args
        .weights
        .iter()
        .map(|w| Weight::parse_decimal(w).map_err(|e| Failure::Usage(format!("--weights: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let space = InstanceSpace {
        max_vertices: args.max_vertices,
        max_total_edges: args.max_total_edges,
        reserve_weights,
        allow_loops: args.allow_loops,
    };
    let instances = exhaustive_instances(&space);
    let report = theorem_sweep(&instances, &config)?;
    emit(&report.to_string(), out, stdout)?;
    if report.is_clean() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} counterexamples",
            report.counterexamples.len()
        )))
    }
}

fn msts(path: &Path, busted: &str, stdout: &mut dyn Write) -> Outcome {
    let (_, position) = load(path)?;
    let busted = edge_set_arg("busted", busted)?;
    if buster_wins(&position, &busted)? {
        writeln!(stdout, "Buster wins: no reserve edges reconnect the graph")?;
        return Ok(());
    }
    let remaining = position.graph().without(&busted);
    let c = components(&remaining).count;
    writeln!(stdout, "components: {c}")?;
    if c == 1 {
        writeln!(stdout, "the graph stays connected; the greedy response is {{}}")?;
        return Ok(());
    }
    let contracted = contract(&remaining, position.reserve());
    for tree in all_msts(&contracted)? {
        let start = match prim_reachable(&contracted, &tree)? {
            Some(trace) => format!("Prim from component {}", trace.start_vertex),
            None => "not Prim-reachable".to_string(),
        };
        writeln!(
            stdout,
            "{} weight {} ({start})",
            format_set(&tree.edge_ids),
            tree.total_weight
        )?;
    }
    Ok(())
}

fn replay_files(scenario: &Path, transcript: &Path, stdout: &mut dyn Write) -> Outcome {
    let (_, position) = load(scenario)?;
    let text = fs::read_to_string(transcript).map_err(|e| Failure::Usage(format!("{}: {e}", transcript.display())))?;
    let series = replay(&position, &text)?;
    writeln!(stdout, "replay OK: {} rounds, {} wins", series.len(), series.outcome())?;
    Ok(())
}

/// Reads Buster's moves from a terminal, re-prompting on illegal input.
struct TerminalBuster<'a> {
    input: &'a mut dyn BufRead,
    output: &'a mut dyn Write,
    closed: bool,
}

impl TerminalBuster<'_> {
    fn read_action(&mut self, position: &Position, history: &[RoundRecord]) -> std::io::Result<BusterAction> {
        if let Some(last) = history.last() {
            writeln!(self.output, "Fixer adds {}", format_set(&last.fixed))?;
        }
        loop {
            write!(
                self.output,
                "round {} G={} R={} bust> ",
                history.len() + 1,
                format_set(&position.graph().ids()),
                format_set(&position.reserve().ids())
            )?;
            self.output.flush()?;
            let mut line = String::new();
            if self.input.read_line(&mut line)? == 0 {
                self.closed = true;
                writeln!(self.output)?;
                return Ok(BusterAction::Quit);
            }
            let line = line.trim();
            if line == "quit" {
                if history.is_empty() && !position.graph().is_empty() {
                    writeln!(self.output, "Buster cannot quit before the first round")?;
                    continue;
                }
                return Ok(BusterAction::Quit);
            }
            match parse_edge_set(line) {
                Some(set) if !set.is_empty() && position.graph().contains_all(&set) => {
                    return Ok(BusterAction::Bust(set))
                }
                _ => writeln!(self.output, "enter graph edge ids separated by commas, or `quit`")?,
            }
        }
    }
}

impl BusterPolicy for TerminalBuster<'_> {
    fn choose(&mut self, position: &Position, history: &[RoundRecord]) -> BusterAction {
        self.read_action(position, history).unwrap_or_else(|_| {
            self.closed = true;
            BusterAction::Quit
        })
    }

    fn describe(&self) -> String {
        "terminal".to_string()
    }
}

fn play(path: &Path, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Outcome {
    let (scenario, position) = load(path)?;
    let mut buster = TerminalBuster {
        input: stdin,
        output: stdout,
        closed: false,
    };
    let result = play_series(&position, &mut buster, &mut GreedyFixer::default());
    let closed = buster.closed;
    let series = match result {
        Ok(series) => series,
        Err(GameError::PolicyError { round: 1, .. }) if closed => {
            writeln!(stdout, "no rounds played")?;
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    let transcript = Transcript {
        scenario: scenario.name,
        buster: "terminal".into(),
        fixer: "greedy".into(),
        seed: None,
        series,
    };
    write!(stdout, "{}", transcript.render())?;
    Ok(())
}
