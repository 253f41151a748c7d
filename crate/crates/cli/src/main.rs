//! `qpd`: payoffs, equilibria, thresholds and `γ` sweeps of quantized
//! prisoner's dilemmas from the command line.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qpd::equilibrium::{default_eps, find_thresholds, search_symmetric_ne, verify_nash, Predicate, ResponseConfig, SearchConfig, ThresholdConfig};
use qpd::strategy::{catalog_names_in, named_in_space, parse_strategy, profile_label};
use qpd::sweep::{format_csv, format_g12, load_game, sweep_game, SweepConfig};
use qpd::{entanglement_entropy, outcome_label, Game, Space, StrategyPoint};

#[derive(Parser)]
#[command(name = "qpd", version, about = "Quantized prisoner's dilemma: payoffs, Nash equilibria, thresholds and sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    shared: Shared,
}

#[derive(Args)]
struct Shared {
    /// `pd2`, `pd3` or a JSON game file.
    #[arg(long, global = true, default_value = "pd2")]
    game: String,
    /// Entanglement in radians; overrides the game file.
    #[arg(long, global = true, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// classical, 2p-diag, 2p-offdiag or su2.
    #[arg(long, global = true, default_value = "2p-diag")]
    space: Space,
    /// Deviation tolerance (default depends on the space).
    #[arg(long, global = true)]
    eps: Option<f64>,
    /// Best-response lattice THETAxPHI for two-parameter spaces.
    #[arg(long, global = true, value_parser = parse_grid)]
    grid: Option<(usize, usize)>,
    /// Number of SU(2) multistart seeds.
    #[arg(long, global = true, default_value_t = 64)]
    starts: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Payoffs and outcome probabilities of a profile.
    Eval(ProfileArgs),
    /// Checks a profile for an ε-Nash equilibrium.
    VerifyNe(ProfileArgs),
    /// Searches symmetric pure equilibria.
    SearchNe,
    /// Sweeps γ and writes CSV.
    Sweep {
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = FRAC_PI_2)]
        to: f64,
        #[arg(long, default_value_t = 33)]
        count: usize,
    },
    /// Locates the γ values where equilibria appear or vanish.
    Thresholds {
        /// Only track this profile.
        #[arg(long, value_delimiter = ',')]
        profile: Option<Vec<String>>,
        #[arg(long, default_value_t = 0.0)]
        from: f64,
        #[arg(long, default_value_t = FRAC_PI_2)]
        to: f64,
        #[arg(long, default_value_t = 64)]
        prescan: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Entanglement entropy of the initial state at --gamma.
    Entropy,
}

#[derive(Args)]
struct ProfileArgs {
    /// Comma-separated strategies: catalog names (C, D, Q, I, iSx, iSy, iSz,
    /// K1..K6) or diag(θ;φ), offdiag(θ;φ), su2(w;x;y;z).
    #[arg(long, value_delimiter = ',', required = true)]
    profile: Vec<String>,
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (t, p) = s.split_once('x').ok_or("expected THETAxPHI, e.g. 181x91")?;
    let t = t.parse().map_err(|_| format!("bad theta count `{t}`"))?;
    let p = p.parse().map_err(|_| format!("bad phi count `{p}`"))?;
    Ok((t, p))
}

enum Failure {
    Usage(String),
    Engine(qpd::Error),
}

impl From<qpd::Error> for Failure {
    fn from(e: qpd::Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli).and_then(|text| write(&cli.shared, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}

fn write(shared: &Shared, text: &str) -> Result<(), Failure> {
    match &shared.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Engine(e.into())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn response(shared: &Shared) -> ResponseConfig {
    match shared.grid {
        Some((theta_steps, phi_steps)) => ResponseConfig { theta_steps, phi_steps, ..ResponseConfig::default() },
        None => ResponseConfig::default(),
    }
}

fn search(shared: &Shared) -> SearchConfig {
    SearchConfig {
        starts: shared.starts,
        seed: shared.seed,
        eps: shared.eps,
        response: response(shared),
        ..SearchConfig::default()
    }
}

fn game(shared: &Shared) -> Result<Game, Failure> {
    let g = load_game(&shared.game)?;
    Ok(match shared.gamma {
        Some(gamma) => g.with_gamma(gamma)?,
        None => g,
    })
}

fn profile(tokens: &[String], space: Space, players: usize) -> Result<Vec<StrategyPoint>, Failure> {
    if tokens.len() != players {
        return Err(Failure::Usage(format!("--profile has {} strategies for a {players}-player game", tokens.len())));
    }
    Ok(tokens.iter().map(|t| parse_strategy(t, space)).collect::<qpd::Result<_>>()?)
}

fn run(cli: &Cli) -> Outcome {
    let shared = &cli.shared;
    match &cli.command {
        Command::Entropy => {
            let gamma = shared.gamma.ok_or_else(|| Failure::Usage("entropy needs --gamma".into()))?;
            Ok(format!("{}\n", format_g12(entanglement_entropy(gamma)?)))
        }
        Command::Eval(args) => eval(shared, &args.profile),
        Command::VerifyNe(args) => verify(shared, &args.profile),
        Command::SearchNe => search_ne(shared),
        Command::Sweep { from, to, count } => {
            let template = game(shared)?;
            let config = SweepConfig {
                game: shared.game.clone(),
                space: shared.space,
                start: *from,
                stop: *to,
                count: *count,
                search: search(shared),
                out: shared.out.clone(),
            };
            let records = sweep_game(&template, &config)?;
            Ok(format_csv(&records, template.players())?)
        }
        Command::Thresholds { profile: tokens, from, to, prescan, tol } => {
            let template = game(shared)?;
            let predicates = match tokens {
                Some(t) => vec![Predicate::ProfileIsNash(profile(t, shared.space, template.players())?)],
                None => default_predicates(&template, shared)?,
            };
            let config = ThresholdConfig {
                lo: *from,
                hi: *to,
                prescan: *prescan,
                tol: *tol,
                eps: shared.eps.unwrap_or(ThresholdConfig::default().eps),
                response: response(shared),
            };
            let mut out = String::new();
            for p in &predicates {
                let reports = find_thresholds(&template, p, &config)?;
                if reports.is_empty() {
                    let holds = p.holds(&template.with_gamma(config.lo)?, config.eps, &config.response)?;
                    let _ = writeln!(out, "{}: no switch in [{}, {}] (always {})", p.describe(), format_g12(config.lo), format_g12(config.hi), if holds { "true" } else { "false" });
                }
                for r in reports {
                    let _ = writeln!(
                        out,
                        "{}: gamma* = {:.9} in [{:.9}, {:.9}] ({} below, {} above)",
                        r.predicate,
                        r.gamma_star,
                        r.bracket.0,
                        r.bracket.1,
                        r.holds_below,
                        !r.holds_below
                    );
                }
            }
            Ok(out)
        }
    }
}

fn default_predicates(template: &Game, shared: &Shared) -> Result<Vec<Predicate<f64>>, Failure> {
    let space = shared.space;
    let n = template.players();
    let mut out = catalog_names_in(space)
        .iter()
        .map(|name| Ok(Predicate::ProfileIsNash(vec![named_in_space(name, space)?; n])))
        .collect::<qpd::Result<Vec<_>>>()?;
    if space == Space::Su2 && template.is_symmetric() {
        if n == 3 {
            out.push(Predicate::FamilyNashExists);
        } else {
            out.push(Predicate::SymmetricNashExists { space, search: search(shared) });
        }
    }
    Ok(out)
}

fn eval(shared: &Shared, tokens: &[String]) -> Outcome {
    let g = game(shared)?;
    let p = profile(tokens, shared.space, g.players())?;
    let unitaries: Vec<_> = p.iter().map(StrategyPoint::to_unitary).collect();
    let payoffs = g.payoffs(&unitaries)?;
    let probs = g.outcome_probabilities(&unitaries)?;
    let mut out = String::new();
    let _ = writeln!(out, "profile  {}", profile_label(&p));
    let _ = writeln!(out, "gamma    {:.12}", g.gamma());
    let _ = writeln!(out, "payoffs  {}", join(payoffs.as_slice()));
    for (k, q) in probs.iter().enumerate() {
        let _ = writeln!(out, "P({})    {}", outcome_label(k, g.players()), format_g12(*q));
    }
    Ok(out)
}

fn verify(shared: &Shared, tokens: &[String]) -> Outcome {
    let g = game(shared)?;
    let p = profile(tokens, shared.space, g.players())?;
    let eps = shared.eps.unwrap_or_else(|| default_eps(shared.space));
    let v = verify_nash(&g, &p, eps, &response(shared))?;
    let mut out = String::new();
    let _ = writeln!(out, "profile      {}", profile_label(&p));
    let _ = writeln!(out, "equilibrium  {}", if v.is_equilibrium { "yes" } else { "no" });
    let _ = writeln!(out, "strict       {}", if v.strict { "yes" } else { "no" });
    let _ = writeln!(out, "epsilon      {}", format_g12(eps));
    let _ = writeln!(out, "payoffs      {}", join(v.payoffs.as_slice()));
    let _ = writeln!(out, "gains        {}", join(&v.deviation_gains));
    Ok(out)
}

fn search_ne(shared: &Shared) -> Outcome {
    let g = game(shared)?;
    let found = search_symmetric_ne(&g, shared.space, &search(shared))?;
    let mut out = String::new();
    if found.is_empty() {
        let _ = writeln!(out, "no symmetric equilibrium found ({} starts, seed {})", shared.starts, shared.seed);
    }
    for r in found {
        let _ = write!(out, "{}  payoffs {}  {}", r.label(), join(r.payoffs.as_slice()), if r.strict { "strict" } else { "non-strict" });
        if let Some(f) = r.family {
            let _ = write!(out, "  a={} b={}", format_g12(f.a), format_g12(f.b));
        }
        out.push('\n');
    }
    Ok(out)
}

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format_g12(*x)).collect::<Vec<_>>().join(" ")
}
