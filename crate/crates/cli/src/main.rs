//! Command-line front end: gamma values, period matrices, Chowla-Selberg
//! rows, transcendence degrees, algebraicity queries, and the verification
//! suite, as text tables or JSON.
//!
//! Exit codes: 0 success / all checks pass, 1 any check failed, 2 usage error.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use carlitz::gamma::Rational;
use carlitz::periods::{period_matrix, rho_row_period};
use carlitz::verify::{self, CheckCtx, SuiteConfig, DEFAULT_PREC, DEFAULT_SLACK};
use carlitz::{
    carlitz_factorial, parse_poly, v_ord_factorial, Error, FqField, GammaCtx, Place,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct FieldArgs {
    /// Characteristic p (prime)
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Extension degree e, so q = p^e
    #[arg(long, default_value_t = 1)]
    e: u32,
}

#[derive(Debug, Args)]
struct PrecArgs {
    /// Series precision N (env CARLITZ_PREC overrides the default)
    #[arg(long)]
    prec: Option<usize>,
    /// Slack subtracted from N when asserting identities
    #[arg(long, default_value_t = DEFAULT_SLACK)]
    slack: usize,
}

impl PrecArgs {
    fn prec(&self) -> Result<usize, String> {
        if let Some(n) = self.prec {
            return Ok(n);
        }
        match std::env::var("CARLITZ_PREC") {
            Ok(s) => s
                .parse()
                .map_err(|_| format!("CARLITZ_PREC is not a precision: {s:?}")),
            Err(_) => Ok(DEFAULT_PREC),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "carlitz", version, about = "Exact v-adic gamma values, period products, and identity verification over F_q(x)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, default_value = "text")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Carlitz factorial of n (the polynomial Gamma_ari(n+1)), with its
    /// v-adic valuation when a place is given
    Factorial {
        #[command(flatten)]
        field: FieldArgs,
        /// Argument n >= 0
        #[arg(long)]
        n: u64,
        /// Optional place: monic irreducible polynomial in x
        #[arg(long)]
        v: Option<String>,
    },
    /// v-adic arithmetic gamma value at a rational argument
    Gamma {
        #[command(flatten)]
        field: FieldArgs,
        /// Place: monic irreducible polynomial in x
        #[arg(long)]
        v: String,
        /// Argument, e.g. "1", "-1/3"
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[command(flatten)]
        prec: PrecArgs,
    },
    /// Diagonal period matrix entries and the companion products
    Periods {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        v: String,
        /// Rank ell
        #[arg(long)]
        ell: u32,
        #[command(flatten)]
        prec: PrecArgs,
    },
    /// Chowla-Selberg rows: gamma route vs period route
    Csf {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        v: String,
        #[arg(long)]
        ell: u32,
        /// Single row (default: all rows 0..ell)
        #[arg(long)]
        s: Option<u32>,
        #[command(flatten)]
        prec: PrecArgs,
    },
    /// Transcendence degree of the gamma values with denominator q^ell - 1
    Trdeg {
        #[command(flatten)]
        field: FieldArgs,
        /// Degree of the place
        #[arg(long)]
        d: u32,
        #[arg(long)]
        ell: u32,
    },
    /// Is Gamma_{ari,v}(a/b) algebraic?
    Algebraic {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long)]
        d: u32,
    },
    /// Run the identity suite at one place (or at canonical places per degree)
    Verify {
        #[command(flatten)]
        field: FieldArgs,
        /// Place: monic irreducible polynomial in x; when omitted, the
        /// lexicographically first irreducible of each --d degree is used
        #[arg(long)]
        v: Option<String>,
        /// Degrees of the canonical places used when --v is omitted
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2])]
        d: Vec<u32>,
        /// Ranks to exercise (comma separated)
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 3, 4])]
        ell: Vec<u32>,
        #[command(flatten)]
        prec: PrecArgs,
        /// Number of sampled rational arguments
        #[arg(long, default_value_t = 25)]
        zsamples: usize,
        /// Seed for the sampled arguments
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Bound on brute-force monic enumeration
        #[arg(long, default_value_t = 6)]
        cap: usize,
        /// Restrict to these identity ids (comma separated)
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Include the deliberately corrupted negative control
        #[arg(long)]
        negative_control: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn build_field(args: &FieldArgs) -> Result<FqField, String> {
    FqField::new(args.p, args.e, 1).map_err(|e| e.to_string())
}

fn build_place(fq: &FqField, v: &str) -> Result<Arc<Place>, String> {
    let poly = parse_poly(fq, v).map_err(|e| e.to_string())?;
    Place::new(fq, &poly).map(Arc::new).map_err(|e| e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = num.parse().map_err(|_| format!("bad rational '{s}'"))?;
    let d: i64 = den.parse().map_err(|_| format!("bad rational '{s}'"))?;
    if d == 0 {
        return Err(format!("bad rational '{s}': zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Factorial { field, n, v } => {
            let fq = build_field(&field)?;
            let fact = carlitz_factorial(&fq, n).map_err(|e| e.to_string())?;
            let ord = match &v {
                Some(vs) => {
                    let place = build_place(&fq, vs)?;
                    Some(v_ord_factorial(n, &place))
                }
                None => None,
            };
            if cli.format == Format::Json {
                let js = serde_json::json!({
                    "n": n,
                    "factorial": fact.display(&fq),
                    "ord_v": ord,
                });
                println!("{}", serde_json::to_string(&js).unwrap());
            } else {
                println!("Gamma_ari({}) = {}", n + 1, fact.display(&fq));
                if let Some(o) = ord {
                    println!("ord_v = {o}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gamma { field, v, z, prec } => {
            let fq = build_field(&field)?;
            let place = build_place(&fq, &v)?;
            let n = prec.prec()?;
            let w = parse_rational(&z)?;
            let ctx = GammaCtx::new(place.clone(), n);
            let value = ctx.gamma(w).map_err(|e| e.to_string())?;
            if cli.format == Format::Json {
                let js = serde_json::json!({
                    "place": place.describe(),
                    "z": z,
                    "value": value.value.to_json(),
                    "truncation_index": value.truncation_index,
                    "stable": value.stable,
                });
                println!("{}", serde_json::to_string(&js).unwrap());
            } else {
                println!("# {}", place.describe());
                println!("Gamma_v({z}) = {}", value.value.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Periods {
            field,
            v,
            ell,
            prec,
        } => {
            let fq = build_field(&field)?;
            let place = build_place(&fq, &v)?;
            let n = prec.prec()?;
            let pm = period_matrix(&place, ell, n).map_err(|e| e.to_string())?;
            if cli.format == Format::Json {
                let js = serde_json::json!({
                    "place": place.describe(),
                    "ell": ell,
                    "phi": pm.diag.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
                    "omega": pm.omega.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string(&js).unwrap());
            } else {
                println!("# {}", place.describe());
                for (s, phi) in pm.diag.iter().enumerate() {
                    println!("Phi_v[{s}] = {}", phi.to_text());
                }
                for (s, om) in pm.omega.iter().enumerate() {
                    println!("Omega[{}] = {}", s + 1, om.to_text());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Csf {
            field,
            v,
            ell,
            s,
            prec,
        } => {
            let fq = build_field(&field)?;
            let place = build_place(&fq, &v)?;
            let n = prec.prec()?;
            let ctx = CheckCtx::new(place.clone(), n, prec.slack);
            let rows: Vec<u32> = match s {
                Some(s) => vec![s],
                None => (0..ell).collect(),
            };
            let mut all_pass = true;
            let mut out = Vec::new();
            for s in rows {
                let gamma_route =
                    verify::rho_row_gamma(&ctx, ell, s).map_err(|e| e.to_string())?;
                let period_route =
                    rho_row_period(&place, ell, s, n).map_err(|e| e.to_string())?;
                let report = verify::check_csf(&ctx, ell, s, false).map_err(|e| e.to_string())?;
                all_pass &= report.pass;
                if cli.format == Format::Json {
                    let mut js = report.to_json();
                    js["gamma_route"] = gamma_route.to_json();
                    js["period_route"] = period_route.to_json();
                    out.push(js);
                } else {
                    println!("{}", report.summary_line());
                    println!("  gamma route  = {}", gamma_route.to_text());
                    println!("  period route = {}", period_route.to_text());
                }
            }
            if cli.format == Format::Json {
                println!("{}", serde_json::to_string(&out).unwrap());
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Trdeg { field, d, ell } => {
            let _ = build_field(&field)?;
            let t = carlitz::relations::trdeg_gamma(d, ell).map_err(|e| e.to_string())?;
            if cli.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({"d": d, "ell": ell, "trdeg": t})
                );
            } else {
                println!("{t}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Algebraic { field, a, b, d } => {
            let fq = build_field(&field)?;
            let answer = carlitz::relations::is_algebraic(a, b, d, fq.q()).map_err(|e| match e {
                Error::InvalidDenominator { .. } => e.to_string(),
                other => other.to_string(),
            })?;
            if cli.format == Format::Json {
                println!(
                    "{}",
                    serde_json::json!({"a": a, "b": b, "d": d, "algebraic": answer})
                );
            } else {
                println!("{answer}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            field,
            v,
            d,
            ell,
            prec,
            zsamples,
            seed,
            cap,
            only,
            negative_control,
        } => {
            let fq = build_field(&field)?;
            let n = prec.prec()?;
            let mut config = SuiteConfig {
                fields: vec![(field.p, field.e)],
                degrees: d,
                ells: ell,
                prec: n,
                slack: prec.slack,
                z_samples: zsamples,
                seed,
                negative_control,
                enumeration_cap: cap,
                only,
            };
            let result = match &v {
                Some(vs) => {
                    let place = build_place(&fq, vs)?;
                    config.degrees = vec![place.d()];
                    let ctx = CheckCtx::new(place.clone(), n, prec.slack);
                    if cli.format == Format::Text {
                        println!("# {}", place.describe());
                    }
                    verify::run_suite_at_place(&ctx, &config).map_err(|e| e.to_string())?
                }
                None => verify::run_suite(&config).map_err(|e| e.to_string())?,
            };
            if cli.format == Format::Json {
                println!("{}", serde_json::to_string(&result.to_json()).unwrap());
            } else {
                for r in &result.reports {
                    println!("{}", r.summary_line());
                }
                println!(
                    "{} / {} checks passed",
                    result.passed(),
                    result.reports.len()
                );
            }
            Ok(if result.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
