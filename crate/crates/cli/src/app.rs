use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use coxk_core::dsl::parse_preset_token;
use coxk_core::ktheory::DEFAULT_WINDOW;
use coxk_core::witt::parse_elem;
use coxk_core::{
    grothendieck_group, k_groups_mod, nilpotence_exponent, preset, snf, verify_report, CoefficientRing, Quiver,
    QuiverError, WittVector,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::formats::{self, elem_to_string};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "coxk", version, about = "K-groups of cluster categories and big Witt vector arithmetic")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    /// Run every line of FILE as a separate invocation (lines may run concurrently; output keeps line order)
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// K-groups with Z/l^nu coefficients of the m-cluster category of a quiver
    Kgroups(KgroupsArgs),
    /// Grothendieck group K_0 of the m-cluster category
    K0(K0Args),
    /// Coxeter matrix -C^T C^-1
    Coxeter(MatrixArgs),
    /// Cartan matrix (path counts)
    Cartan(MatrixArgs),
    /// Smith normal form U M V = D of an integer matrix file
    Snf(SnfArgs),
    /// Big Witt vector calculator
    #[command(subcommand)]
    Witt(WittCommand),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct QuiverSource {
    /// Preset name: A<n>, D<n>, E6, E7, E8 or Kronecker(<r>)
    #[arg(long)]
    preset: Option<String>,
    /// Quiver in the text syntax (e.g. "1->2;2->3") or as JSON
    #[arg(long)]
    quiver: Option<String>,
    /// File holding a quiver in the text syntax or as JSON
    #[arg(long, value_name = "FILE")]
    quiver_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct KgroupsArgs {
    #[command(flatten)]
    source: QuiverSource,
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Prime l of the coefficients Z/l^nu
    #[arg(long)]
    l: u64,
    #[arg(long, default_value_t = 1)]
    nu: u32,
    /// Degree window LO:HI (default -2:8)
    #[arg(long, value_name = "LO:HI", allow_hyphen_values = true, conflicts_with_all = ["imin", "imax"])]
    window: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    imin: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    imax: Option<i64>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct K0Args {
    #[command(flatten)]
    source: QuiverSource,
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[command(flatten)]
    source: QuiverSource,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct SnfArgs {
    /// Matrix text file (`-` for stdin): "rows cols" then the entries
    #[arg(long, value_name = "FILE")]
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VectorOpts {
    /// Coefficient ring: Z, Q, Z/N or Z[1/l]
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Pad with zeros or cut the inputs to this truncation
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct BinaryArgs {
    /// Coefficients a_1,a_2,... of 1 + a_1 t + a_2 t^2 + ..., or a Witt vector JSON object
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[command(flatten)]
    opts: VectorOpts,
}

#[derive(Debug, Args)]
struct IndexedArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    opts: VectorOpts,
}

#[derive(Debug, Args)]
struct UnaryArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[command(flatten)]
    opts: VectorOpts,
}

#[derive(Debug, Args)]
struct PowArgs {
    /// Exponent in Z[1/l], e.g. -1/9
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long)]
    l: u64,
    #[arg(long)]
    trunc: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct NilArgs {
    #[arg(long)]
    l: u64,
    #[arg(long)]
    e: u32,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum WittCommand {
    /// Witt sum (product of power series)
    Add(BinaryArgs),
    /// Witt product
    Mul(BinaryArgs),
    /// Frobenius F_n
    Frob(IndexedArgs),
    /// Verschiebung V_n: u(t) -> u(t^n)
    Versch(IndexedArgs),
    /// Ghost components gh_1..gh_m
    Ghost(UnaryArgs),
    /// (1 - t)^lambda over Z[1/l]
    Pow1mt(PowArgs),
    /// Least r with (1 - t)^(l^r) = 1 in W_m(Z/l^e)
    Nilexp(NilArgs),
}

/// Result of one invocation: exit status plus the text for each stream.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: 0, stdout, stderr: String::new() }
    }

    fn error(e: &CliError) -> Self {
        Output { code: e.exit_code(), stdout: String::new(), stderr: format!("error[{}]: {e}\n", e.code()) }
    }
}

/// Runs one command line. `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output::ok(text),
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    Output { code: 2, stdout: String::new(), stderr: text }
                }
                _ => Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("error[USAGE]: {}", text.trim_start_matches("error: ")),
                },
            };
        }
    };
    match (cli.batch, cli.command) {
        (Some(path), _) => run_batch(&path),
        (None, Some(cmd)) => match dispatch(cmd) {
            Ok(out) => Output::ok(out),
            Err(e) => Output::error(&e),
        },
        (None, None) => Output::error(&CliError::Usage("a subcommand or --batch is required".into())),
    }
}

fn run_batch(path: &Path) -> Output {
    let text = match read_input(path) {
        Ok(t) => t,
        Err(e) => return Output::error(&e),
    };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    log::debug!("batch: {} command lines", lines.len());
    let results: Vec<Output> = lines.par_iter().map(|&(n, line)| run_line(n, line)).collect();
    let mut total = Output::default();
    for r in results {
        total.code = total.code.max(r.code);
        total.stdout.push_str(&r.stdout);
        total.stderr.push_str(&r.stderr);
    }
    total
}

fn run_line(number: usize, line: &str) -> Output {
    let fail = |msg: String| Output::error(&CliError::Usage(format!("batch line {number}: {msg}")));
    let mut words = match shell_words::split(line) {
        Ok(w) => w,
        Err(e) => return fail(e.to_string()),
    };
    if words.first().map(String::as_str) == Some("coxk") {
        words.remove(0);
    }
    if words.iter().any(|w| w == "--batch" || w.starts_with("--batch=")) {
        return fail("--batch cannot be nested".into());
    }
    let mut out = run(std::iter::once("coxk".to_string()).chain(words));
    if !out.stderr.is_empty() {
        out.stderr = format!("batch line {number}: {}", out.stderr);
    }
    out
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load_quiver(src: &QuiverSource) -> Result<Quiver, CliError> {
    let q = if let Some(name) = &src.preset {
        let (family, n) = parse_preset_token(name.trim()).ok_or_else(|| QuiverError::UnknownPreset(name.clone()))?;
        preset(family, n)?
    } else if let Some(text) = &src.quiver {
        formats::parse_quiver_source(text)?
    } else if let Some(path) = &src.quiver_file {
        formats::parse_quiver_source(&read_input(path)?)?
    } else {
        unreachable!("clap enforces one quiver source")
    };
    log::debug!("quiver: {} vertices, {} arrows", q.vertex_count(), q.arrow_indices().len());
    Ok(q)
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn dispatch(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Kgroups(a) => kgroups(a),
        Command::K0(a) => {
            let g = grothendieck_group(&load_quiver(&a.source)?, a.m)?;
            Ok(if a.json { json_text(&formats::group_to_json(&g)) } else { format!("{g}\n") })
        }
        Command::Coxeter(a) => matrix_out(load_quiver(&a.source)?.coxeter_matrix()?, a.json),
        Command::Cartan(a) => matrix_out(load_quiver(&a.source)?.cartan_matrix()?, a.json),
        Command::Snf(a) => {
            let m = formats::parse_matrix_text(&read_input(&a.file)?)?;
            let s = snf(&m);
            if a.json {
                return Ok(json_text(&formats::snf_to_json(&s)));
            }
            let factors: Vec<String> = s.invariant_factors.iter().map(ToString::to_string).collect();
            let mut out = String::new();
            for (name, mat) in [("U", &s.u), ("D", &s.d), ("V", &s.v)] {
                let _ = writeln!(out, "{name} =");
                if mat.rows() > 0 && mat.cols() > 0 {
                    let _ = writeln!(out, "{mat}");
                }
            }
            let _ = writeln!(
                out,
                "invariant factors: {}",
                if factors.is_empty() { "(none)".into() } else { factors.join(" ") }
            );
            Ok(out)
        }
        Command::Witt(w) => witt(w),
    }
}

fn matrix_out(m: coxk_core::IntMatrix, json: bool) -> Result<String, CliError> {
    Ok(if json { json_text(&formats::matrix_to_json(&m)) } else { formats::matrix_to_text(&m) })
}

fn window(a: &KgroupsArgs) -> Result<(i64, i64), CliError> {
    let (lo, hi) = match &a.window {
        Some(w) => {
            let bad = || CliError::Usage(format!("--window expects LO:HI, got `{w}`"));
            let (lo, hi) = w.split_once(':').ok_or_else(bad)?;
            (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?)
        }
        None => (a.imin.unwrap_or(DEFAULT_WINDOW.0), a.imax.unwrap_or(DEFAULT_WINDOW.1)),
    };
    if lo > hi {
        return Err(CliError::Usage(format!("empty degree window {lo}..{hi}")));
    }
    Ok((lo, hi))
}

fn kgroups(a: KgroupsArgs) -> Result<String, CliError> {
    let win = window(&a)?;
    let q = load_quiver(&a.source)?;
    let r = k_groups_mod(&q, a.m, a.l, a.nu)?;
    let checks = verify_report(&r);
    if a.json {
        return Ok(json_text(&formats::report_to_json(&r, &checks)));
    }
    let n = r.modulus.value();
    let mut out = String::new();
    let arrows = q.arrow_indices().len();
    let plural = |n: usize, word: &str, many: &str| format!("{n} {}", if n == 1 { word } else { many });
    let _ = writeln!(
        out,
        "quiver {}: {}, {}",
        q.name().unwrap_or("(custom)"),
        plural(q.vertex_count(), "vertex", "vertices"),
        plural(arrows, "arrow", "arrows")
    );
    let _ = writeln!(out, "m = {}, coefficients Z/{n} (valid when {})", r.m, r.validity());
    let _ = writeln!(out, "IK_i = 0 for i < 0; coker for even i >= 0; ker for odd i >= 0");
    let _ = writeln!(out, "{:>4}  IK_i(C^({}); Z/{n})", "i", r.m);
    for (i, g) in r.table(win) {
        let _ = writeln!(out, "{i:>4}  {g}");
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    let _ = writeln!(out, "checks: {passed}/{} passed", checks.len());
    for c in checks.iter().filter(|c| !c.passed) {
        let _ = writeln!(out, "  FAILED {}: {}", c.name, c.detail);
    }
    Ok(out)
}

fn parse_vector(text: &str, opts: &VectorOpts) -> Result<WittVector, CliError> {
    let w = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(formats::FormatError::from)?;
        formats::witt_from_json(&v)?
    } else {
        let ring: CoefficientRing = opts.ring.parse()?;
        let coeffs = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| parse_elem(&ring, s))
            .collect::<Result<Vec<_>, _>>()?;
        WittVector::new(ring, coeffs)?
    };
    match opts.trunc {
        Some(t) if t < w.trunc() => Ok(w.truncate(t)?),
        Some(t) if t > w.trunc() => {
            let mut c = w.coeffs().to_vec();
            c.resize(t, w.ring().zero());
            Ok(WittVector::new(w.ring().clone(), c)?)
        }
        _ => Ok(w),
    }
}

fn vector_out(w: &WittVector, json: bool) -> String {
    if json {
        json_text(&formats::witt_to_json(w))
    } else {
        format!("{w} + O(t^{})\n", w.trunc() + 1)
    }
}

fn witt(cmd: WittCommand) -> Result<String, CliError> {
    match cmd {
        WittCommand::Add(a) => {
            let (u, v) = (parse_vector(&a.u, &a.opts)?, parse_vector(&a.v, &a.opts)?);
            Ok(vector_out(&u.add(&v)?, a.opts.json))
        }
        WittCommand::Mul(a) => {
            let (u, v) = (parse_vector(&a.u, &a.opts)?, parse_vector(&a.v, &a.opts)?);
            log::debug!("witt mul over {} at truncation {}", u.ring(), u.trunc());
            Ok(vector_out(&u.mul(&v)?, a.opts.json))
        }
        WittCommand::Frob(a) => Ok(vector_out(&parse_vector(&a.u, &a.opts)?.frobenius(a.n)?, a.opts.json)),
        WittCommand::Versch(a) => Ok(vector_out(&parse_vector(&a.u, &a.opts)?.verschiebung(a.n)?, a.opts.json)),
        WittCommand::Ghost(a) => {
            let g = parse_vector(&a.u, &a.opts)?.ghost()?;
            let g: Vec<String> = g.iter().map(elem_to_string).collect();
            Ok(if a.opts.json { json_text(&json!(g)) } else { format!("{}\n", g.join(" ")) })
        }
        WittCommand::Pow1mt(a) => {
            let ring = CoefficientRing::inverted_prime(a.l)?;
            let lambda = parse_elem(&ring, &a.lambda)?;
            Ok(vector_out(&WittVector::one_minus_t_pow(&lambda, a.l, a.trunc)?, a.json))
        }
        WittCommand::Nilexp(a) => {
            let r = nilpotence_exponent(a.l, a.e, a.m)?;
            Ok(if a.json { json_text(&json!({"l": a.l, "e": a.e, "m": a.m, "exponent": r})) } else { format!("{r}\n") })
        }
    }
}
