//! `hecke`: exact computations in the Iwahori-Hecke algebra of S_n.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error, 3 resource cap.

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::center::{express_in_gamma, gamma_basis_cached};
use hecke_core::io::{export_element, import_element, BasisTag, Format};
use hecke_core::report::Check;
use hecke_core::sqrt::{
    catalog_checks_h3, catalog_checks_h4, catalog_h3, catalog_h4, eigen_scan, eigen_search, in_sqrt_centre,
    sample_sqrt_h3,
};
use hecke_core::text::parse_element_in;
use hecke_core::verify::{run_verify, statement_ids, VerifyOptions};
use hecke_core::{AlgebraContext, Caps, Error, Exec, GammaBasis, HeckeElement, LaurentPoly, Partition, RationalFn};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact computations in the Iwahori-Hecke algebra H_n")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Global {
    /// Largest n for operations that enumerate S_n.
    #[arg(long, global = true, default_value_t = Caps::default().max_enumeration_n)]
    max_enum_n: usize,
    /// Largest n for class-basis and n! x n! linear algebra.
    #[arg(long, global = true, default_value_t = Caps::default().max_gamma_n)]
    max_gamma_n: usize,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    /// Directory holding cached class bases.
    #[arg(long, global = true, env = "HECKE_CACHE_DIR")]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    /// Grammar text, standard basis.
    Text,
    /// JSON, standard basis.
    Json,
    /// JSON, coefficients on the normalised basis T~_w.
    JsonTilde,
}

#[derive(Subcommand)]
enum Cmd {
    /// Product of two or more elements.
    Mul {
        #[arg(long)]
        n: usize,
        #[arg(required = true, num_args = 2..)]
        exprs: Vec<String>,
    },
    /// Square of an element.
    Square {
        #[arg(long)]
        n: usize,
        expr: String,
    },
    /// Is the element central? Exit 1 if not.
    Central {
        #[arg(long)]
        n: usize,
        expr: String,
    },
    /// Is the square of the element central? Exit 1 if not.
    SqrtCheck {
        #[arg(long)]
        n: usize,
        expr: String,
    },
    /// The class basis Gamma_lambda of the centre.
    Gamma {
        n: usize,
        /// Only this partition, e.g. 2,1,1.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Coordinates of a central element on the class basis.
    Express {
        #[arg(long)]
        n: usize,
        expr: String,
    },
    /// Eigenvectors of left multiplication by a central element.
    Eigen {
        #[arg(long)]
        n: usize,
        /// Use Gamma_lambda for this partition.
        #[arg(long, conflicts_with = "expr")]
        gamma: Option<String>,
        /// The central element, as an expression.
        #[arg(long)]
        expr: Option<String>,
        /// Eigenvalue, a scalar or `num / den`; omitted scans a fixed candidate list.
        #[arg(long)]
        k: Option<String>,
    },
    /// Run the checks on a square-root catalog.
    Catalog {
        #[arg(value_parser = ["h3", "h4"])]
        which: String,
        /// Print the catalog elements instead of checking them.
        #[arg(long)]
        list: bool,
    },
    /// A seeded random element of the square-root branch in H_3.
    SampleH3 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The full verification suite.
    Verify {
        #[arg(long, default_value_t = 5)]
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Comma-separated statement ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Record wall-clock time per item.
        #[arg(long)]
        timings: bool,
        /// List the statement ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Write an element as text or JSON.
    Export {
        #[arg(long)]
        n: usize,
        expr: String,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        format: OutFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Read an element from a file (or `-` for stdin) and print it.
    Import {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = OutFormat::Text)]
        format: OutFormat,
    },
}

/// An error together with its exit code.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => 3,
            Error::Syntax { .. }
            | Error::Malformed(_)
            | Error::IndexOutOfRange { .. }
            | Error::InvalidPermutation(_)
            | Error::InvalidPartition(_)
            | Error::UnknownStatement(_)
            | Error::DegreeMismatch { .. }
            | Error::Io(_) => 2,
            _ => 1,
        };
        Failure(code, e.to_string())
    }
}

type CliResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    };
    ExitCode::from(code)
}

fn caps(g: &Global) -> Caps {
    let caps = Caps { max_enumeration_n: g.max_enum_n, max_gamma_n: g.max_gamma_n };
    let d = Caps::default();
    if caps.max_enumeration_n > d.max_enumeration_n || caps.max_gamma_n > d.max_gamma_n {
        eprintln!("warning: caps raised above the defaults; runs may take very long or exhaust memory");
    }
    caps
}

fn exec(g: &Global) -> Exec {
    if g.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn context(g: &Global, n: usize) -> Result<AlgebraContext, Failure> {
    let caps = caps(g);
    if n > caps.max_enumeration_n {
        return Err(Error::ResourceLimit { what: "H_n", n, cap: caps.max_enumeration_n }.into());
    }
    Ok(AlgebraContext::with_caps(n, caps)?.with_exec(exec(g)))
}

fn gamma(g: &Global, ctx: &AlgebraContext) -> Result<GammaBasis, Failure> {
    Ok(gamma_basis_cached(ctx, g.cache.as_deref())?)
}

fn print_checks(checks: &[Check]) -> u8 {
    let mut failed = 0;
    for c in checks {
        println!("{}  {}", if c.pass { "PASS" } else { "FAIL" }, c.id);
        if let Some(w) = &c.witness {
            println!("      witness: {w}");
        }
        if let Some(n) = &c.note {
            println!("      note: {n}");
        }
        failed += usize::from(!c.pass);
    }
    println!("summary: {} passed, {failed} failed", checks.len() - failed);
    u8::from(failed > 0)
}

fn print_coefficients(coeffs: &[(Partition, LaurentPoly)]) {
    for (p, c) in coeffs {
        println!("Gamma{p}: {c}");
    }
}

/// `a / b` at parenthesis depth zero, or a plain scalar.
fn parse_ratio(text: &str) -> Result<RationalFn, Error> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                let num = hecke_core::parse_scalar(&text[..i])?;
                let den = hecke_core::parse_scalar(&text[i + 1..])?;
                return RationalFn::new(num, den);
            }
            _ => {}
        }
    }
    RationalFn::new(hecke_core::parse_scalar(text)?, LaurentPoly::one())
}

fn format_of(f: OutFormat) -> Format {
    match f {
        OutFormat::Text => Format::Text,
        OutFormat::Json => Format::Json(BasisTag::T),
        OutFormat::JsonTilde => Format::Json(BasisTag::Ttilde),
    }
}

fn run(cli: Cli) -> CliResult {
    let g = cli.global;
    match cli.cmd {
        Cmd::Mul { n, exprs } => {
            let ctx = context(&g, n)?;
            let mut acc = HeckeElement::one(n);
            for e in &exprs {
                acc = acc.mul_with(&parse_element_in(&ctx, e)?, ctx.exec())?;
            }
            println!("{}", acc.to_text());
            Ok(0)
        }
        Cmd::Square { n, expr } => {
            let ctx = context(&g, n)?;
            let h = parse_element_in(&ctx, &expr)?;
            println!("{}", h.mul_with(&h, ctx.exec())?.to_text());
            Ok(0)
        }
        Cmd::Central { n, expr } => {
            let ctx = context(&g, n)?;
            let central = parse_element_in(&ctx, &expr)?.is_central();
            println!("central: {central}");
            Ok(u8::from(!central))
        }
        Cmd::SqrtCheck { n, expr } => {
            let ctx = context(&g, n)?;
            let h = parse_element_in(&ctx, &expr)?;
            let gb = if n <= ctx.caps().max_gamma_n { Some(gamma(&g, &ctx)?) } else { None };
            let r = in_sqrt_centre(&h, gb.as_ref());
            println!("in sqrtZ: {}", r.in_sqrt);
            println!("in Z: {}", r.in_centre);
            println!("square: {}", r.square.to_text());
            if let Some(coeffs) = &r.square_in_gamma {
                println!("square on the class basis:");
                print_coefficients(coeffs);
            }
            Ok(u8::from(!r.in_sqrt))
        }
        Cmd::Gamma { n, lambda } => {
            let ctx = context(&g, n)?;
            let gb = gamma(&g, &ctx)?;
            let wanted = lambda.as_deref().map(Partition::parse).transpose()?;
            if let Some(p) = &wanted {
                if p.n() != n {
                    return Err(Error::InvalidPartition(format!("{p} is not a partition of {n}")).into());
                }
            }
            for (p, h) in gb.elements() {
                if wanted.as_ref().is_none_or(|w| w == p) {
                    println!("Gamma{p} = {}", h.to_text());
                }
            }
            Ok(0)
        }
        Cmd::Express { n, expr } => {
            let ctx = context(&g, n)?;
            let h = parse_element_in(&ctx, &expr)?;
            print_coefficients(&express_in_gamma(&h, &gamma(&g, &ctx)?)?);
            Ok(0)
        }
        Cmd::Eigen { n, gamma: lam, expr, k } => {
            let ctx = context(&g, n)?;
            let z = match (lam, expr) {
                (Some(l), _) => {
                    let p = Partition::parse(&l)?;
                    gamma(&g, &ctx)?
                        .get(&p)
                        .cloned()
                        .ok_or_else(|| Error::InvalidPartition(format!("{p} is not a partition of {n}")))?
                }
                (None, Some(e)) => parse_element_in(&ctx, &e)?,
                (None, None) => return Err(Failure(2, "one of --gamma or --expr is required".into())),
            };
            let found = match k {
                Some(k) => {
                    let k = parse_ratio(&k)?;
                    vec![(k.to_string(), eigen_search(&ctx, &z, &k)?)]
                }
                None => eigen_scan(&ctx, &z)?.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            };
            for (k, vecs) in found {
                println!("eigenvalue {k}: {} independent vector(s)", vecs.len());
                for v in vecs {
                    println!("  {}", v.to_text());
                }
            }
            Ok(0)
        }
        Cmd::Catalog { which, list } => {
            if list {
                let cat = if which == "h3" { catalog_h3()? } else { catalog_h4()? };
                for (name, h) in cat {
                    println!("{name} = {}", h.to_text());
                }
                return Ok(0);
            }
            let checks = if which == "h3" {
                let ctx = context(&g, 3)?;
                catalog_checks_h3(&gamma(&g, &ctx)?)?
            } else {
                catalog_checks_h4()?
            };
            Ok(print_checks(&checks))
        }
        Cmd::SampleH3 { seed } => {
            println!("{}", sample_sqrt_h3(seed).to_text());
            Ok(0)
        }
        Cmd::Verify { n_max, seed, json, only, timings, list } => {
            if list {
                for id in statement_ids() {
                    println!("{id}");
                }
                return Ok(0);
            }
            let opts = VerifyOptions {
                n_max,
                seed,
                caps: caps(&g),
                cache_dir: g.cache.clone(),
                only,
                timings,
                exec: exec(&g),
            };
            let report = run_verify(&opts)?;
            if json {
                let s = serde_json::to_string_pretty(&report).map_err(|e| Failure(1, e.to_string()))?;
                println!("{s}");
            } else {
                print!("{}", report.to_text());
            }
            Ok(u8::from(!report.all_pass()))
        }
        Cmd::Export { n, expr, format, output } => {
            let ctx = context(&g, n)?;
            let bytes = export_element(&parse_element_in(&ctx, &expr)?, format_of(format));
            match output {
                Some(path) => {
                    std::fs::write(&path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
                }
                None => std::io::stdout().write_all(&bytes).map_err(|e| Error::Io(e.to_string()))?,
            }
            Ok(0)
        }
        Cmd::Import { path, format } => {
            let bytes = if path.as_os_str() == "-" {
                let mut buf = Vec::new();
                std::io::stdin().read_to_end(&mut buf).map_err(|e| Error::Io(e.to_string()))?;
                buf
            } else {
                std::fs::read(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
            };
            let h = import_element(&bytes)?;
            std::io::stdout()
                .write_all(&export_element(&h, format_of(format)))
                .map_err(|e| Error::Io(e.to_string()))?;
            Ok(0)
        }
    }
}
