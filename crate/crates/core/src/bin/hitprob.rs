use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hitprob::cache::{self, BasisCache};
use hitprob::equivariance::{gl_invariants_of, sf_tilde_of, sigma_invariants_of, InvariantReport};
use hitprob::verify::{self, Format, Suite};
use hitprob::{load_fixtures, occurring_weights, sq, MonomialOrder, Polynomial, QuotientBasis, WeightVector};

#[derive(Parser)]
#[command(name = "hitprob", version, about = "Admissible bases and invariants of QP_k over F2")]
struct Cli {
    #[arg(long, global = true, default_value = "text")]
    format: OutputFormat,

    /// Basis cache directory; defaults to $HITPROB_CACHE, no caching when unset.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Fixture file with the reference tables.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,

    #[arg(long, global = true, default_value = "wlex")]
    order: MonomialOrder,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Gl,
    Sigma,
}

#[derive(Subcommand)]
enum Command {
    /// List the admissible monomials of a degree or weight.
    Basis {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        weight: Option<WeightVector>,
        /// Only the monomials divisible by every variable.
        #[arg(long)]
        plus: bool,
    },
    /// Dimension of (QP_k)_d or of QP_k(w).
    Dim {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        weight: Option<WeightVector>,
    },
    /// Weight vectors of the admissible monomials, with their dimensions.
    Weights {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
    },
    /// Apply Sq^j to a polynomial.
    Sq {
        #[arg(long)]
        j: u32,
        #[arg(long)]
        k: usize,
        /// Polynomial such as "x1^3 x2 + x2^4".
        poly: String,
    },
    /// Express a polynomial in admissible monomials modulo hit elements.
    Reduce {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        weight: Option<WeightVector>,
        poly: String,
    },
    /// Invariants under Sigma_k or GL_k.
    Invariants {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        group: GroupArg,
        #[arg(long)]
        weight: Option<WeightVector>,
    },
    /// Full-support classes killed by every p_(i;I).
    Sftilde {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        weight: WeightVector,
    },
    /// Rank of the hit subspace in degree d.
    Rank {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

fn default_fixtures() -> Option<PathBuf> {
    let local = PathBuf::from("data/tables.fix");
    if local.exists() {
        return Some(local);
    }
    let shipped = PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/tables.fix"));
    shipped.exists().then_some(shipped)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn print_report(report: &InvariantReport, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Text => {
            println!("dimension {}", report.dimension);
            for r in &report.representatives {
                println!("{r}");
            }
        }
    }
}

fn run(cli: Cli) -> hitprob::Result<u8> {
    let cache = BasisCache::from_env(cli.cache_dir.clone());
    let order = cli.order;
    let basis = |k: usize, d: u32, w: Option<&WeightVector>| cache::basis(cache.as_ref(), k, d, w, order);
    let json = matches!(cli.format, OutputFormat::Json);

    match cli.command {
        Command::Basis { k, d, weight, plus } => {
            let qb = basis(k, d, weight.as_ref())?;
            let monos = if plus { qb.split_b0_plus().1 } else { qb.admissible().to_vec() };
            if json {
                let v = json!({
                    "k": k,
                    "d": d,
                    "weight": weight,
                    "dim": monos.len(),
                    "monomials": monos.iter().map(|m| m.exponents().to_vec()).collect::<Vec<_>>(),
                });
                println!("{v}");
            } else {
                for m in &monos {
                    println!("{m}");
                }
            }
        }
        Command::Dim { k, d, weight } => {
            let qb = basis(k, d, weight.as_ref())?;
            if json {
                println!("{}", json!({ "k": k, "d": d, "weight": weight, "dim": qb.dim() }));
            } else {
                println!("{}", qb.dim());
            }
        }
        Command::Weights { k, d } => {
            let qb = basis(k, d, None)?;
            let rows: Vec<(WeightVector, usize)> = occurring_weights(&qb)
                .into_iter()
                .map(|w| {
                    let n = qb.admissible().iter().filter(|m| m.weight_vector() == w).count();
                    (w, n)
                })
                .collect();
            if json {
                let v: Vec<_> = rows.iter().map(|(w, n)| json!({ "weight": w, "dim": n })).collect();
                println!("{}", serde_json::Value::Array(v));
            } else {
                for (w, n) in rows {
                    println!("{w} {n}");
                }
            }
        }
        Command::Sq { j, k, poly } => {
            let f = Polynomial::parse(&poly, k)?;
            let out = sq(j, &f)?;
            if json {
                println!("{}", json!({ "result": out.to_string() }));
            } else {
                println!("{out}");
            }
        }
        Command::Reduce { k, weight, poly } => {
            let f = Polynomial::parse(&poly, k)?;
            let d = match f.degree()? {
                Some(d) => d,
                None => {
                    println!("{}", if json { json!({ "coordinates": [], "class": "0" }).to_string() } else { "0".into() });
                    return Ok(0);
                }
            };
            let qb = basis(k, d, weight.as_ref())?;
            let c = qb.reduce_class(&f)?;
            let class = qb.polynomial(c.bits());
            if json {
                println!("{}", json!({ "coordinates": c.support(), "class": class.to_string() }));
            } else {
                println!("{class}");
            }
        }
        Command::Invariants { k, d, group, weight } => {
            let qb = basis(k, d, weight.as_ref())?;
            let report = match group {
                GroupArg::Gl => gl_invariants_of(&qb)?,
                GroupArg::Sigma => sigma_invariants_of(&qb)?,
            };
            print_report(&report, cli.format);
        }
        Command::Sftilde { k, weight } => {
            let d = weight.degree();
            let source = basis(k, d, Some(&weight))?;
            let target = basis(k.saturating_sub(1), d, Some(&weight))?;
            print_report(&sf_tilde_of(&source, &target)?, cli.format);
        }
        Command::Rank { k, d } => {
            let qb: QuotientBasis = basis(k, d, None)?;
            let total = qb.candidates().len();
            let rank = total - qb.dim();
            if json {
                println!("{}", json!({ "k": k, "d": d, "rank": rank, "monomials": total }));
            } else {
                println!("{rank}");
            }
        }
        Command::Verify { suite } => {
            let path = cli.fixtures.clone().or_else(default_fixtures);
            let fixtures = match path {
                Some(p) => Some(load_fixtures(p)?),
                None => None,
            };
            let results = verify::verify(suite, fixtures.as_deref(), cache.as_ref());
            let format = if json { Format::Json } else { Format::Text };
            print!("{}", verify::report(&results, format));
            return Ok(verify::exit_code(&results) as u8);
        }
    }
    Ok(0)
}
