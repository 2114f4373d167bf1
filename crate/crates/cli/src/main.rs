use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use friable::dickman::{dickman_rho, mu_closed, mu_k, mu_k_direct, rho_theta, MuParams, QuadratureConfig, ThetaProfile};
use friable::polyvals::{psi_binary, psi_poly, BinaryForm, IntPolynomial};
use friable::saddle::{psi_pairs, solve_saddle, Regime, ShiftedConfig};
use friable::sieve::{psi, psi_progression, PsiQuery};
use friable::suite::{format_sig, run_all, run_criterion, write_f_curves, CRITERIA};
use friable::verify::{lower_bound_report, Application};

const DIGITS: usize = 12;

#[derive(Parser)]
#[command(name = "friable", version, about = "Smooth-number densities, counters and sieve checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dickman's ρ(u).
    Rho {
        #[arg(long)]
        u: f64,
    },
    /// μ^(κ)(u, v), or μ_k(u, v) with --k.
    Mu {
        #[arg(long)]
        u: f64,
        #[arg(long, default_value_t = 0.0)]
        v: f64,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
        #[arg(long)]
        k: Option<usize>,
        /// Integrate μ_k directly over its domain (quasi-random for k ≥ 5).
        #[arg(long, requires = "k")]
        direct: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// The sieve coefficient ρ_{θ,κ}(u).
    RhoTheta {
        #[arg(long)]
        u: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
    },
    /// Ψ(x, y), optionally restricted to n ≡ a (mod q).
    Psi {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        #[arg(long, requires = "a")]
        q: Option<u64>,
        #[arg(long, requires = "q")]
        a: Option<u64>,
    },
    /// #{n ≤ x : P⁺(|F(n)|) ≤ y} for F given by --poly a0,a1,...
    PsiPoly {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
    },
    /// #{1 ≤ a, b ≤ x : P⁺(|F(a, b)|) ≤ y} for F given by --form a0,...,at.
    PsiBinary {
        #[arg(long)]
        form: String,
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: u64,
        /// Count only coprime pairs.
        #[arg(long)]
        coprime: bool,
    },
    /// Ψ(x; u, v): n is x^(1/u)-smooth and n + a is x^(1/v)-smooth.
    PsiPairs {
        #[arg(long)]
        x: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        u: f64,
        #[arg(long)]
        v: f64,
    },
    /// The saddle point α(x, y).
    Saddle {
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
    },
    /// Run the acceptance suite, one criterion, or a lower-bound check.
    Verify(VerifyArgs),
    /// Write a CSV table.
    Table {
        #[arg(value_enum)]
        name: TableName,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// `all`, a criterion number, or `bound`.
    target: String,
    /// Desk-scale parameters (the only scale provided).
    #[arg(long)]
    desk: bool,
    #[arg(long)]
    x: Option<u64>,
    #[arg(long)]
    y: Option<u64>,
    #[arg(long)]
    u: Option<f64>,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    form: Option<String>,
    #[arg(long, value_enum, default_value_t = RegimeArg::Harper)]
    regime: RegimeArg,
    /// Level used by `--regime eh`.
    #[arg(long, default_value_t = 0.99)]
    theta: f64,
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Harper,
    Pascadi,
    Eh,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    FCurves,
}

enum Failure {
    Usage(String),
    Check,
}

impl From<friable::Error> for Failure {
    fn from(e: friable::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn num(v: f64) -> String {
    format_sig(v, DIGITS)
}

fn run(cmd: Command, out: &mut impl Write) -> Result<(), Failure> {
    let cfg = QuadratureConfig::default();
    match cmd {
        Command::Rho { u } => writeln!(out, "{}", num(dickman_rho(u, &cfg)?))?,
        Command::Mu { u, v, kappa, k, direct, seed } => {
            let value = match k {
                None => mu_closed(u, v, kappa, &cfg)?,
                Some(k) if direct => mu_k_direct(&MuParams::new(u, v, kappa, k)?, &cfg, seed)?,
                Some(k) => mu_k(&MuParams::new(u, v, kappa, k)?, &cfg)?,
            };
            writeln!(out, "{}", num(value))?
        }
        Command::RhoTheta { u, theta, kappa } => {
            let profile = ThetaProfile::new(theta, kappa, 1.0, "cli")?;
            writeln!(out, "{}", num(rho_theta(u, &profile, &cfg)?))?
        }
        Command::Psi { x, y, q, a } => {
            let count = match (q, a) {
                (Some(q), Some(a)) => psi_progression(&PsiQuery::progression(x, y, a, q))?,
                _ => psi(x, y),
            };
            writeln!(out, "{count}")?
        }
        Command::PsiPoly { poly, x, y } => writeln!(out, "{}", psi_poly(&IntPolynomial::parse(&poly)?, x, y)?)?,
        Command::PsiBinary { form, x, y, coprime } => {
            writeln!(out, "{}", psi_binary(&BinaryForm::parse(&form)?, x, y, coprime)?)?
        }
        Command::PsiPairs { x, a, u, v } => {
            let cfg = ShiftedConfig { a, u, v, profile: ThetaProfile::harper_half() };
            writeln!(out, "{}", psi_pairs(x, &cfg)?)?
        }
        Command::Saddle { x, y } => writeln!(out, "{}", num(solve_saddle(x, y)?.alpha))?,
        Command::Verify(args) => return verify(args, out),
        Command::Table { name: TableName::FCurves, out: path } => match path {
            Some(p) => write_f_curves(BufWriter::new(File::create(p)?))?,
            None => write_f_curves(&mut *out)?,
        },
    }
    Ok(())
}

fn verify(args: VerifyArgs, out: &mut impl Write) -> Result<(), Failure> {
    let outcomes = match args.target.as_str() {
        "all" => run_all(),
        "bound" => return verify_bound(&args, out),
        t => {
            let id: usize = t.parse().map_err(|_| Failure::Usage(format!("unknown verify target `{t}`")))?;
            let outcome = run_criterion(id)
                .ok_or_else(|| Failure::Usage(format!("criterion {id} outside 1..={}", CRITERIA.len())))?;
            vec![outcome]
        }
    };
    for o in &outcomes {
        writeln!(out, "{}", o.line())?;
    }
    if outcomes.iter().all(|o| o.passed) {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn verify_bound(args: &VerifyArgs, out: &mut impl Write) -> Result<(), Failure> {
    let need = |name: &str| Failure::Usage(format!("verify bound needs --{name}"));
    let x = args.x.ok_or_else(|| need("x"))?;
    let regime = match args.regime {
        RegimeArg::Pascadi => Regime::Pascadi58,
        _ => Regime::HarperHalf,
    };
    let app = if let Some(a) = args.a {
        Application::Pairs { x, a, u: args.u.ok_or_else(|| need("u"))?, v: args.v.ok_or_else(|| need("v"))?, regime }
    } else {
        let y = args.y.ok_or_else(|| need("y"))?;
        match (&args.poly, &args.form) {
            (Some(p), None) => Application::Poly { f: IntPolynomial::parse(p)?, x, y },
            (None, Some(f)) => Application::Binary { f: BinaryForm::parse(f)?, x, y },
            (None, None) => Application::Plain { x, y },
            _ => return Err(Failure::Usage("--poly and --form are exclusive".into())),
        }
    };
    let eh = ThetaProfile::new(args.theta, 1.0, 1.0, "elliott-halberstam")?;
    let profile = matches!(args.regime, RegimeArg::Eh).then_some(&eh);
    let check = lower_bound_report(&app, profile, args.tol)?;
    writeln!(
        out,
        "{} {} empirical {} coefficient {} margin {}",
        if check.passed { "PASS" } else { "FAIL" },
        check.application,
        num(check.empirical_density),
        num(check.coefficient),
        num(check.margin)
    )?;
    writeln!(out, "{}", serde_json::to_string(&check).expect("serializable"))?;
    if check.passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check) => ExitCode::from(2),
    }
}
