//! Command-line front end. Every command prints JSON on stdout (or a plain
//! table with `--pretty`). Exit codes: 0 pass, 1 verification failure,
//! 2 usage error, 3 violated mathematical precondition.

use std::ffi::OsString;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bases::{monomial_basis, monomials_up_to, permuted_basis, rodrigue_basis, Basis};
use crate::eigenspaces::{face_space, split_singular, u_blocks, u_dimension, u_eigenvalue, verify_u_space};
use crate::error::{Error, Result};
use crate::exact::{format_rational, int, parse_rational, parse_rational_list};
use crate::poly::Polynomial;
use crate::report::{Check, Verdict};
use crate::sobolev::{gram, parse_subset_lambdas, InnerProductSpec, Lambdas};
use crate::verify::{self, Config};
use crate::weighted::ParamVector;
use crate::bases::{eigencheck, eigenvalue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "sobolex", version, about = "Exact Jacobi and Sobolev orthogonal polynomials on the simplex")]
pub struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct a basis.
    Basis(BasisArgs),
    /// Gram matrix of a basis against lower-degree monomials or itself.
    Gram(GramArgs),
    /// Inner product of two polynomials.
    Inner(InnerArgs),
    /// Eigenspace of the weighted operator with its block decomposition.
    Eigen(EigenArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Summary of every suite.
    Report(ReportArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Rodrigue,
    Permuted,
    Monomial,
    /// Plain monomials `x^m`, `|m| <= n`.
    Monomials,
    /// Face subspace with Rodrigue indices vanishing on `--zero`.
    H,
    /// Singular eigenspace; `k` is the number of trailing `-1` entries.
    U,
}

#[derive(Args, Debug, Clone, Default)]
pub struct LambdaArgs {
    /// Main `λ` of the Sobolev form.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// `λ_1, λ_2, …`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_coord: Option<String>,
    /// `λ_I` entries as `1,2=1/2;3=1`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_subset: Option<String>,
    /// Vertex weights `λ_{0,0}, λ_{1,0}, …, λ_{d,0}`.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_vertex: Option<String>,
}

impl LambdaArgs {
    pub fn parse(&self) -> Result<Lambdas> {
        Ok(Lambdas {
            main: self.lambda.as_deref().map(parse_rational).transpose()?,
            coords: self.lambda_coord.as_deref().map(parse_rational_list).transpose()?.unwrap_or_default(),
            subsets: self.lambda_subset.as_deref().map(parse_subset_lambdas).transpose()?.unwrap_or_default(),
            vertices: self.lambda_vertex.as_deref().map(parse_rational_list).transpose()?.unwrap_or_default(),
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct BasisSource {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: u32,
    /// `d+1` comma-separated rationals, e.g. `0,1/2,-1`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    /// Defaults to `u` when `gamma` ends in `-1`, else `rodrigue`.
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Barycentric labels for `--family permuted`, e.g. `2,1`.
    #[arg(long)]
    pub order: Option<String>,
    /// Zeroed labels for `--family h`, e.g. `3`.
    #[arg(long)]
    pub zero: Option<String>,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[command(flatten)]
    pub source: BasisSource,
    #[command(flatten)]
    pub lambdas: LambdaArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Against {
    /// Monomials of degree `< n`.
    Lower,
    /// The basis itself.
    Same,
}

#[derive(Args, Debug)]
pub struct GramArgs {
    #[command(flatten)]
    pub source: BasisSource,
    #[arg(long, value_enum, default_value = "lower")]
    pub against: Against,
    #[command(flatten)]
    pub form: FormArgs,
}

#[derive(Args, Debug, Clone)]
pub struct FormArgs {
    /// Derivative order of the `[·,·]_γ` form (non-singular `gamma` only).
    #[arg(long)]
    pub m: Option<usize>,
    /// Read the inner-product spec as JSON from a file (`-` for stdin).
    #[arg(long)]
    pub spec: Option<String>,
    #[command(flatten)]
    pub lambdas: LambdaArgs,
}

#[derive(Args, Debug)]
pub struct InnerArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// First polynomial, e.g. `1 - 2*x - y`.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g: String,
    #[command(flatten)]
    pub form: FormArgs,
}

#[derive(Args, Debug)]
pub struct EigenArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    #[command(flatten)]
    pub lambdas: LambdaArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = verify::SUITES)]
    pub suite: String,
    /// Dimensions, e.g. `2` or `2,3`; default depends on the suite.
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
    /// Parameter sample (repeatable), e.g. `--gamma 1/2,0,1`.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Vec<String>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[arg(long)]
    pub d: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub n_max: u32,
}

/// Parse `d+1` parameters.
fn parse_gamma(d: usize, text: &str) -> Result<ParamVector> {
    let g = parse_rational_list(text)?;
    if g.len() != d + 1 {
        return Err(Error::InvalidArgument(format!(
            "--gamma has {} entries, expected d+1 = {}",
            g.len(),
            d + 1
        )));
    }
    ParamVector::new(g)
}

fn parse_labels(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad label {s:?}"))))
        .collect()
}

fn parse_dims(text: &Option<String>) -> Result<Vec<usize>> {
    text.as_deref().map(parse_labels).transpose().map(Option::unwrap_or_default)
}

/// Build the basis described by `src`.
pub fn build_basis(src: &BasisSource, lambdas: &Lambdas) -> Result<Basis> {
    let gamma = parse_gamma(src.d, &src.gamma)?;
    let trailing = gamma.last() == &-int(1);
    let family = src.family.unwrap_or(if trailing { FamilyArg::U } else { FamilyArg::Rodrigue });
    match family {
        FamilyArg::Rodrigue => rodrigue_basis(&gamma, src.n),
        FamilyArg::Permuted => {
            let order = src
                .order
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("--family permuted needs --order".into()))?;
            permuted_basis(&gamma, &parse_labels(order)?, src.n)
        }
        FamilyArg::Monomial => monomial_basis(&gamma, src.n),
        FamilyArg::Monomials => Ok(monomials_up_to(src.d, src.n)),
        FamilyArg::H => {
            let zero = src
                .zero
                .as_deref()
                .ok_or_else(|| Error::InvalidArgument("--family h needs --zero".into()))?;
            face_space(&gamma, &parse_labels(zero)?, src.n)
        }
        FamilyArg::U => {
            let (tail, k) = split_singular(&gamma)?;
            if k == 0 {
                return Err(Error::InvalidArgument(
                    "--family u needs gamma ending in at least one -1 entry".into(),
                ));
            }
            crate::eigenspaces::u_space(&tail, src.d, k, src.n, lambdas)
        }
    }
}

fn read_spec(path: &str) -> Result<InnerProductSpec> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidArgument(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("reading {path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("spec JSON: {e}")))
}

/// The inner product implied by `γ`: Sobolev when it ends in `-1`,
/// `[·,·]_γ` when `--m` is given, classical otherwise.
pub fn build_spec(d: usize, gamma: Option<&str>, form: &FormArgs) -> Result<InnerProductSpec> {
    if let Some(path) = &form.spec {
        let spec = read_spec(path)?;
        if spec.dim != d {
            return Err(Error::DimensionMismatch { left: d, right: spec.dim });
        }
        return Ok(spec);
    }
    let gamma = gamma.ok_or_else(|| Error::InvalidArgument("--gamma or --spec is required".into()))?;
    let gamma = parse_gamma(d, gamma)?;
    let lambdas = form.lambdas.parse()?;
    let (tail, k) = split_singular(&gamma)?;
    if k > 0 {
        if form.m.is_some() {
            return Err(Error::InvalidArgument("--m applies only to non-singular gamma".into()));
        }
        return InnerProductSpec::sobolev(d, tail, k, lambdas);
    }
    gamma.check_integrable()?;
    Ok(match form.m {
        Some(m) => InnerProductSpec::epd(gamma, m, lambdas),
        None => InnerProductSpec::classical(gamma),
    })
}

#[derive(Serialize)]
struct BasisJson<'a> {
    #[serde(flatten)]
    basis: &'a Basis,
    display: Vec<String>,
}

fn basis_json(b: &Basis) -> BasisJson<'_> {
    BasisJson {
        basis: b,
        display: b.elements.iter().map(|e| e.poly.to_string()).collect(),
    }
}

fn basis_table(b: &Basis) -> String {
    let mut s = format!("{} elements, d={}, n={}, gamma={}\n", b.len(), b.dim, b.degree, b.params);
    for e in &b.elements {
        s.push_str(&format!("  {}: {}\n", e.label, e.poly));
    }
    s
}

#[derive(Serialize)]
struct InnerJson {
    spec: InnerProductSpec,
    valid_spec: bool,
    f: String,
    g: String,
    value: String,
    normalization: Vec<String>,
}

#[derive(Serialize)]
struct BlockJson {
    name: String,
    pattern: Vec<u8>,
    display: Vec<String>,
}

#[derive(Serialize)]
struct EigenJson {
    params: ParamVector,
    k: usize,
    n: u32,
    eigenvalue: String,
    dimension: u32,
    blocks: Vec<BlockJson>,
    verdict: Verdict,
}

#[derive(Serialize)]
struct SuiteLine {
    suite: String,
    pass: bool,
    checks: usize,
    failed: usize,
}

#[derive(Serialize)]
struct ReportJson {
    pass: bool,
    suites: Vec<SuiteLine>,
}

/// Outcome of one command: text to print and exit code.
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

fn emit<T: Serialize>(value: &T, pretty: Option<String>, pass: bool) -> Output {
    let stdout = match pretty {
        Some(p) => p,
        None => serde_json::to_string_pretty(value).expect("serializable") + "\n",
    };
    Output {
        stdout,
        code: if pass { EXIT_OK } else { EXIT_FAILED },
    }
}

fn eigen(args: &EigenArgs, pretty: bool) -> Result<Output> {
    let gamma = parse_gamma(args.d, &args.gamma)?;
    let lambdas = args.lambdas.parse()?;
    let (tail, k) = split_singular(&gamma)?;
    let out = if k == 0 {
        let b = rodrigue_basis(&gamma, args.n)?;
        let mut v = Verdict::new(format!("V_n d={} n={} gamma={gamma}", args.d, args.n));
        let bad = b.elements.iter().find(|e| !eigencheck(&gamma, &e.poly, args.n).unwrap_or(false));
        v.check(Check::new("eigen-equation", bad.is_none()).witness(bad.map(|e| e.poly.clone())));
        EigenJson {
            params: gamma.clone(),
            k,
            n: args.n,
            eigenvalue: format_rational(&eigenvalue(&gamma, args.n)),
            dimension: u_dimension(args.d, args.n),
            blocks: vec![BlockJson {
                name: "V".into(),
                pattern: vec![],
                display: b.elements.iter().map(|e| e.poly.to_string()).collect(),
            }],
            verdict: v,
        }
    } else {
        let blocks = u_blocks(&tail, args.d, k, args.n, &lambdas)?;
        EigenJson {
            params: gamma.clone(),
            k,
            n: args.n,
            eigenvalue: format_rational(&u_eigenvalue(&tail, k, args.n)?),
            dimension: u_dimension(args.d, args.n),
            blocks: blocks
                .iter()
                .map(|b| BlockJson {
                    name: b.name.clone(),
                    pattern: b.pattern.clone(),
                    display: b.basis.elements.iter().map(|e| e.poly.to_string()).collect(),
                })
                .collect(),
            verdict: verify_u_space(&tail, args.d, k, args.n, &lambdas)?,
        }
    };
    let text = pretty.then(|| {
        let mut s = format!(
            "eigenvalue {} on a space of dimension {}\n",
            out.eigenvalue, out.dimension
        );
        for b in &out.blocks {
            s.push_str(&format!("  {} ({}):\n", b.name, b.display.len()));
            for p in &b.display {
                s.push_str(&format!("    {p}\n"));
            }
        }
        s + &out.verdict.pretty()
    });
    let pass = out.verdict.pass;
    Ok(emit(&out, text, pass))
}

fn gram_table(r: &crate::sobolev::GramReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("valid spec: {}\n", r.valid_spec));
    for (label, row) in r.rows.iter().zip(&r.matrix) {
        s.push_str(&format!("  {label}: [{}]\n", row.join(", ")));
    }
    s.push_str(&format!("all zero: {}, diagonal: {}\n", r.all_zero, r.diagonal));
    if let Some(v) = r.orthogonal_to_lower_degree {
        s.push_str(&format!("orthogonal to lower degree: {v}\n"));
    }
    if let Some(v) = r.positive_definite {
        s.push_str(&format!("positive definite: {v}\n"));
    }
    s
}

/// Run one parsed command.
pub fn execute(cli: &Cli) -> Result<Output> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Basis(a) => {
            let b = build_basis(&a.source, &a.lambdas.parse()?)?;
            Ok(emit(&basis_json(&b), pretty.then(|| basis_table(&b)), true))
        }
        Command::Gram(a) => {
            let spec = build_spec(a.source.d, Some(&a.source.gamma), &a.form)?;
            let rows = build_basis(&a.source, &a.form.lambdas.parse()?)?;
            let cols = match a.against {
                Against::Same => rows.clone(),
                Against::Lower if a.source.n == 0 => {
                    let mut b = monomials_up_to(a.source.d, 0);
                    b.elements.clear();
                    b
                }
                Against::Lower => monomials_up_to(a.source.d, a.source.n - 1),
            };
            let r = gram(&spec, &rows, &cols)?;
            Ok(emit(&r, pretty.then(|| gram_table(&r)), true))
        }
        Command::Inner(a) => {
            let spec = build_spec(a.d, a.gamma.as_deref(), &a.form)?;
            let f = Polynomial::parse(a.d, &a.f)?;
            let g = Polynomial::parse(a.d, &a.g)?;
            let value = spec.inner(&f, &g)?;
            let out = InnerJson {
                valid_spec: spec.is_valid(),
                normalization: spec.normalization_notes()?,
                spec,
                f: f.to_string(),
                g: g.to_string(),
                value: format_rational(&value),
            };
            let text = pretty.then(|| format!("<{}, {}> = {}\n", out.f, out.g, out.value));
            Ok(emit(&out, text, true))
        }
        Command::Eigen(a) => eigen(a, pretty),
        Command::Verify(a) => {
            let mut cfg = Config::new(parse_dims(&a.d)?, a.n_max);
            for g in &a.gamma {
                let list = parse_rational_list(g)?;
                cfg.gammas.push(ParamVector::new(list)?);
            }
            let r = verify::run(&a.suite, &cfg)?;
            let text = pretty.then(|| r.tree.pretty());
            let pass = r.pass;
            Ok(emit(&r, text, pass))
        }
        Command::Report(a) => {
            let cfg = Config::new(parse_dims(&a.d)?, a.n_max);
            let mut suites = Vec::new();
            for s in &verify::SUITES[..verify::SUITES.len() - 1] {
                let r = verify::run(s, &cfg)?;
                suites.push(SuiteLine {
                    suite: r.suite,
                    pass: r.pass,
                    checks: r.checks,
                    failed: r.failed,
                });
            }
            let out = ReportJson {
                pass: suites.iter().all(|s| s.pass),
                suites,
            };
            let text = pretty.then(|| {
                out.suites
                    .iter()
                    .map(|s| {
                        format!(
                            "{:<10} {} ({} checks, {} failed)\n",
                            s.suite,
                            if s.pass { "pass" } else { "FAIL" },
                            s.checks,
                            s.failed
                        )
                    })
                    .collect::<String>()
            });
            let pass = out.pass;
            Ok(emit(&out, text, pass))
        }
    }
}

/// Cap the worker pool from `SOBOLEX_THREADS`.
pub fn configure_threads() {
    #[cfg(feature = "parallel")]
    if let Some(n) = std::env::var("SOBOLEX_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// Parse arguments, run, print; returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                EXIT_USAGE
            } else {
                EXIT_MATH
            }
        }
    }
}
