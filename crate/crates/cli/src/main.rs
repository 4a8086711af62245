//! `witches`: command-line access to the inference engine and the session
//! server.

mod http;

use std::io::{self, BufRead, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use witchbayes::decision::{anger_report, optimal_strategy, Strategy};
use witchbayes::inference::{
    builtin_scenario, laplace_succession, predictive, second_layer_predictive, sequential_posterior, EvidenceSequence,
    Scenario, WitchConfig,
};
use witchbayes::network::diagram_from_scenario;
use witchbayes::session::protocol::{labeled, ErrorBody};
use witchbayes::session::{Response, ServiceConfig, SessionService};
use witchbayes::simulator::{write_jsonl, Composition, SimConfig};
use witchbayes::{Error, Probability};

/// Environment variable holding the HTTP bind address for `serve`.
const BIND_ENV: &str = "WITCHES_BIND";

#[derive(Parser)]
#[command(name = "witches", version, about = "Exact discrete Bayesian inference for the witches of Bayes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Evidence {
    /// Builtin scenario name (witches, tombola, prenatal) or a scenario JSON file.
    #[arg(long, default_value = "witches")]
    scenario: String,
    /// Observed sequence, e.g. NNVN or pari,dispari.
    #[arg(long, default_value = "")]
    seq: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyKind {
    Deterministic,
    Medallion,
}

#[derive(Clone, Copy, ValueEnum)]
enum Report {
    Summary,
    Days,
}

#[derive(Clone, Copy, ValueEnum)]
enum NetFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Posterior over the hypotheses after a sequence.
    Posterior {
        #[command(flatten)]
        evidence: Evidence,
        /// Print the posterior as JSON, in the session `state` format.
        #[arg(long)]
        json: bool,
    },
    /// Probability of the next outcome (first or second layer).
    Predict {
        #[command(flatten)]
        evidence: Evidence,
        #[arg(long)]
        outcome: String,
    },
    /// Anger probabilities of serving strategies.
    Decide {
        #[command(flatten)]
        evidence: Evidence,
        #[arg(long, value_delimiter = ',', default_value = "deterministic,medallion")]
        compare: Vec<StrategyKind>,
    },
    /// Simulate days in the cave; prints JSON lines.
    Simulate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of violet-hatted witches.
        #[arg(long)]
        violet: u32,
        #[arg(long, default_value_t = 21)]
        total: u32,
        #[arg(long, default_value_t = 1000)]
        days: u64,
        #[arg(long, value_enum, default_value = "deterministic")]
        strategy: StrategyKind,
        #[arg(long, value_enum, default_value = "summary")]
        report: Report,
    },
    /// Export the two-layer network as Graphviz DOT or diagram JSON.
    ExportNet {
        #[command(flatten)]
        evidence: Evidence,
        #[arg(long, value_enum, default_value = "dot")]
        format: NetFormat,
        /// Outcome node to mark as observed; defaults to the last observation.
        #[arg(long = "evidence")]
        evidence_node: Option<String>,
    },
    /// Rule of succession for x successes in n trials.
    Succession {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        n: u64,
    },
    /// HTTP session server.
    Serve {
        #[arg(long, env = BIND_ENV, default_value = "127.0.0.1:8080")]
        bind: String,
    },
    /// Session protocol over stdin/stdout, one JSON request per line.
    Stdio,
}

enum Failure {
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let body = ErrorBody::new(400, "bad_flags", e.render().to_string().trim_end());
            eprintln!("{}", Response::err(body).to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            let code = if e == Error::ImpossibleEvidence { 3 } else { 2 };
            eprintln!("{}", Response::err(ErrorBody::from(e)).to_json());
            ExitCode::from(code)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("{}", Response::err(ErrorBody::new(500, "io", e.to_string())).to_json());
            ExitCode::from(1)
        }
    }
}

fn load_scenario(name: &str) -> Result<Scenario, Error> {
    if name.ends_with(".json") || Path::new(name).is_file() {
        let text = std::fs::read_to_string(name).map_err(|e| Error::InvalidConfig(format!("{name}: {e}")))?;
        Scenario::from_json(&text)
    } else {
        builtin_scenario(name)
    }
}

impl Evidence {
    fn resolve(&self) -> Result<(Scenario, EvidenceSequence), Error> {
        let scenario = load_scenario(&self.scenario)?;
        let seq = EvidenceSequence::parse(&self.seq, &scenario)?;
        Ok((scenario, seq))
    }
}

fn show(p: &Probability) -> String {
    format!("{p} ≈ {}", p.to_decimal())
}

fn build_strategy(kind: StrategyKind, scenario: &Scenario) -> Result<Strategy, Error> {
    let tastes = scenario.require_second_layer()?;
    match kind {
        StrategyKind::Deterministic => optimal_strategy(tastes),
        StrategyKind::Medallion => Strategy::medallion(tastes),
    }
}

fn strategy_name(kind: StrategyKind) -> &'static str {
    match kind {
        StrategyKind::Deterministic => "deterministic",
        StrategyKind::Medallion => "medallion",
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match command {
        Command::Posterior { evidence, json } => {
            let (scenario, seq) = evidence.resolve()?;
            let post = sequential_posterior(&scenario, &seq)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&labeled(&post)).expect("serializable"))?;
            } else {
                let width = post.labels().map(str::len).max().unwrap_or(0);
                for (label, p) in post.entries() {
                    writeln!(out, "{label:<width$}  {}", show(p))?;
                }
            }
        }
        Command::Predict { evidence, outcome } => {
            let (scenario, seq) = evidence.resolve()?;
            let tastes = scenario.second_layer().map(|t| t.outcomes()).unwrap_or_default();
            let p = if tastes.contains(&outcome) {
                second_layer_predictive(&scenario, &seq, &outcome)?
            } else {
                predictive(&scenario, &seq, &outcome)?
            };
            writeln!(out, "{}", show(&p))?;
        }
        Command::Decide { evidence, compare } => {
            let (scenario, seq) = evidence.resolve()?;
            let post = sequential_posterior(&scenario, &seq)?;
            let hats = scenario.outcomes();
            write!(out, "{:<14}", "strategy")?;
            for hat in hats {
                write!(out, "  {:<22}", format!("anger | {hat}"))?;
            }
            writeln!(out, "  marginal anger")?;
            for kind in compare {
                let strategy = build_strategy(kind, &scenario)?;
                let report = anger_report(&strategy, &scenario, Some(&post))?;
                write!(out, "{:<14}", strategy_name(kind))?;
                for p in report.per_hat.values() {
                    write!(out, "  {:<22}", show(p))?;
                }
                let marginal = report.marginal.expect("posterior given");
                writeln!(out, "  {}", show(&marginal))?;
            }
            let best = optimal_strategy(scenario.require_second_layer()?)?;
            let picks: Vec<String> = hats
                .iter()
                .map(|hat| Ok(format!("{hat} -> {}", best.food_for(hat)?.unwrap_or("?"))))
                .collect::<Result<_, Error>>()?;
            writeln!(out, "recommended: {}", picks.join(", "))?;
        }
        Command::Simulate { seed, violet, total, days, strategy, report } => {
            let tastes = WitchConfig::default().taste_table()?;
            let strategy = match strategy {
                StrategyKind::Deterministic => optimal_strategy(&tastes)?,
                StrategyKind::Medallion => Strategy::medallion(&tastes)?,
            };
            let cfg = SimConfig { seed, trials: days, composition: Composition::new(violet, total)?, tastes, strategy };
            let mut buffered = io::BufWriter::new(out);
            write_jsonl(&cfg, matches!(report, Report::Days), &mut buffered)?;
            buffered.flush()?;
        }
        Command::ExportNet { evidence, format, evidence_node } => {
            let (scenario, seq) = evidence.resolve()?;
            let post = sequential_posterior(&scenario, &seq)?;
            let observed = evidence_node.as_deref().or(seq.labels().last().map(String::as_str));
            let diagram = diagram_from_scenario(&scenario, Some(&post), observed)?;
            match format {
                NetFormat::Dot => write!(out, "{}", diagram.to_dot())?,
                NetFormat::Json => writeln!(out, "{}", diagram.to_json())?,
            }
        }
        Command::Succession { x, n } => {
            let s = laplace_succession(x, n)?;
            writeln!(out, "{}", show(&s.exact))?;
            if let Some(a) = s.approximation {
                writeln!(out, "x/n = {}", show(&a))?;
            }
        }
        Command::Serve { bind } => {
            let service = SessionService::new(ServiceConfig::from_env()).map_err(session_failure)?;
            http::serve(service, &bind)?;
        }
        Command::Stdio => {
            let service = SessionService::new(ServiceConfig::from_env()).map_err(session_failure)?;
            for line in io::stdin().lock().lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                writeln!(out, "{}", service.handle_json(&line).to_json())?;
                out.flush()?;
            }
        }
    }
    Ok(())
}

fn session_failure(e: ErrorBody) -> Failure {
    Failure::Io(io::Error::other(json!(e).to_string()))
}
