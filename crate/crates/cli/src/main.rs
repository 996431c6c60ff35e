use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use riordan::campaign::{self, CampaignConfig, Conventions, Suite};
use riordan::{expr, Error, FormalMap, MonomialMatrix, RiordanElement, Ring, Series};

#[derive(Parser)]
#[command(name = "riordan", version, about = "Exact Riordan arrays in several variables")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone, Copy)]
struct Context {
    /// Number of variables
    #[arg(long = "vars", short = 'd', default_value_t = 1)]
    dim: usize,
    /// Truncation degree k
    #[arg(long, short = 'k', default_value_t = 4)]
    trunc: u32,
    /// Coefficient ring: int, rational or modp:<prime>
    #[arg(long, default_value = "int")]
    ring: Ring,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the matrix M(f, g) on the monomials of degree <= k
    Matrix {
        /// The series f
        f: String,
        /// Components of g, as separate arguments or comma-separated
        #[arg(required = true)]
        g: Vec<String>,
        #[command(flatten)]
        ctx: Context,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Csv)]
        format: MatrixFormat,
    },
    /// Run a seeded property campaign and print a JSON-lines report
    Verify {
        /// group, homomorphism, semigroup, ftra, projective or verdestar
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        dims: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "4,6")]
        truncs: Vec<u32>,
        #[arg(long, default_value = "int")]
        ring: Ring,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, env = "RIORDAN_SEED", default_value_t = 0)]
        seed: u64,
        /// Product order for the verdestar suite: eq4, sec54 or both
        #[arg(long, default_value = "both", value_parser = parse_conventions)]
        convention: Conventions,
        /// Worker threads (default: one per core)
        #[arg(long)]
        threads: Option<usize>,
        /// Half-width of the exponent box for the verdestar suite
        #[arg(long, default_value_t = 3)]
        box_radius: i32,
    },
    /// Invert a series, a formal map or a Riordan element
    Invert {
        #[arg(long, value_enum)]
        what: What,
        /// Expressions; for riordan the first is f and the rest are g
        #[arg(required = true)]
        exprs: Vec<String>,
        #[command(flatten)]
        ctx: Context,
        #[arg(long, value_enum, default_value_t = TextFormat::Json)]
        format: TextFormat,
    },
    /// Print a classical one-variable triangle
    Classic {
        #[arg(value_enum)]
        name: Classic,
        #[arg(long, short = 'k', default_value_t = 4)]
        trunc: u32,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum MatrixFormat {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy)]
enum TextFormat {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy)]
enum What {
    Series,
    Map,
    Riordan,
}

#[derive(ValueEnum, Clone, Copy)]
enum Classic {
    Pascal,
    CatalanInverse,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_conventions(s: &str) -> Result<Conventions, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn from_error(what: &str, e: Error) -> Failure {
        Failure {
            code: if e.is_parse() { 2 } else { 3 },
            message: format!("{what}: {e}"),
        }
    }
}

fn arg<T>(name: &str, text: &str, r: riordan::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::from_error(&format!("argument {name} {text:?}"), e))
}

fn series_arg(name: &str, text: &str, ctx: &Context) -> Result<Series, Failure> {
    arg(name, text, expr::series(text, ctx.dim, ctx.trunc, ctx.ring))
}

fn map_arg(name: &str, parts: &[String], ctx: &Context) -> Result<FormalMap, Failure> {
    let text = parts.join(",");
    arg(name, &text, expr::formal_map(&text, ctx.dim, ctx.trunc, ctx.ring))
}

fn algebra<T>(what: &str, r: riordan::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::from_error(what, e))
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

fn map_text(g: &FormalMap) -> String {
    g.components().iter().map(Series::to_string).collect::<Vec<_>>().join(", ")
}

fn triangle(m: &MonomialMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.size() {
        let row: Vec<String> = (0..=r).map(|c| m.get(r, c).to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Runs a command; `Ok((stdout, code))`.
fn run(cli: Cli) -> Result<(String, u8), Failure> {
    match cli.cmd {
        Cmd::Matrix { f, g, ctx, format } => {
            let fs = series_arg("F", &f, &ctx)?;
            let gm = map_arg("G", &g, &ctx)?;
            let a = algebra("matrix", RiordanElement::new(fs, gm))?;
            let m = MonomialMatrix::riordan(&a);
            let out = match format {
                MatrixFormat::Csv => m.to_csv(),
                MatrixFormat::Json => json(&m),
            };
            Ok((out, 0))
        }
        Cmd::Verify {
            suite,
            dims,
            truncs,
            ring,
            trials,
            seed,
            convention,
            threads,
            box_radius,
        } => {
            let mut cfg = CampaignConfig::new(suite, dims, truncs, ring, trials, seed);
            cfg.conventions = convention;
            cfg.threads = threads;
            cfg.box_radius = box_radius;
            let rep = campaign::run(&cfg).map_err(|e| Failure::from_error("verify", e))?;
            Ok((rep.to_jsonl(), if rep.summary.ok { 0 } else { 1 }))
        }
        Cmd::Invert { what, exprs, ctx, format } => invert(what, &exprs, &ctx, format).map(|s| (s, 0)),
        Cmd::Classic { name, trunc } => {
            let z = Ring::Integer;
            let a = match name {
                Classic::Pascal => {
                    let f = algebra("pascal", expr::series("1/(1-x1)", 1, trunc, z))?;
                    let g = algebra("pascal", expr::formal_map("x1/(1-x1)", 1, trunc, z))?;
                    algebra("pascal", RiordanElement::new(f, g))?
                }
                Classic::CatalanInverse => {
                    let g = algebra("catalan-inverse", expr::formal_map("x1+x1^2", 1, trunc, z))?;
                    RiordanElement::lagrange(algebra("catalan-inverse", g.inverse())?)
                }
            };
            Ok((triangle(&MonomialMatrix::riordan(&a)), 0))
        }
    }
}

fn invert(what: What, exprs: &[String], ctx: &Context, format: TextFormat) -> Result<String, Failure> {
    let text = matches!(format, TextFormat::Text);
    match what {
        What::Series => {
            if exprs.len() != 1 {
                return Err(Failure {
                    code: 2,
                    message: format!("invert --what series takes one expression, got {}", exprs.len()),
                });
            }
            let f = series_arg("EXPR", &exprs[0], ctx)?;
            let inv = algebra("invert", f.inverse())?;
            let one = Series::one(ctx.dim, ctx.trunc, ctx.ring);
            if algebra("invert", f.mul(&inv))? != one {
                return Err(internal("series inverse does not multiply back to 1"));
            }
            Ok(if text { format!("{inv}\n") } else { json(&inv) })
        }
        What::Map => {
            let g = map_arg("EXPRS", exprs, ctx)?;
            let inv = algebra("invert", g.inverse())?;
            let back = algebra("invert", g.compose(&inv))?.is_identity()
                && algebra("invert", inv.compose(&g))?.is_identity();
            if !back {
                return Err(internal("map inverse does not compose back to the identity"));
            }
            Ok(if text { format!("{}\n", map_text(&inv)) } else { json(&inv) })
        }
        What::Riordan => {
            if exprs.len() < 2 {
                return Err(Failure {
                    code: 2,
                    message: "invert --what riordan takes f followed by the components of g".into(),
                });
            }
            let f = series_arg("F", &exprs[0], ctx)?;
            let g = map_arg("G", &exprs[1..], ctx)?;
            let a = algebra("invert", RiordanElement::new(f, g))?;
            let inv = algebra("invert", a.inverse())?;
            if algebra("invert", a.mul(&inv))? != RiordanElement::identity(ctx.dim, ctx.trunc, ctx.ring) {
                return Err(internal("Riordan inverse does not multiply back to the identity"));
            }
            Ok(if text {
                format!("f: {}\ng: {}\n", inv.f(), map_text(inv.g()))
            } else {
                json(&inv)
            })
        }
    }
}

fn internal(message: &str) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
