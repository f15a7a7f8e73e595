//! `rslab`: seeded experiments on random Reed-Solomon list recovery.

mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rslab::coincnf::{measure_bias, plan_cnf, to_dimacs, BiasReport, CnfPlan};
use rslab::experiments::{
    agreement_experiment, default_ap_grid, fit_fk, linear_grid, log_grid, scan, tribes_crossing, FkFit,
    MonotoneFunctionSpec,
};
use rslab::fourier::{expected_r_squared_exact, FourierContext};
use rslab::randmodel::{predict, sample_instance, SampleModel};
use rslab::recovery::{self, Instance};
use rslab::rng::SeedSpec;
use rslab::rscode::{
    dual_code, dual_degree, orthogonal_exhaustive, weight_distribution_brute, weight_distribution_exact, RsCode,
};
use rslab::selfcheck::{self, Fault, SelfcheckOptions};
use rslab::stats::sig;
use rslab::{Field, FieldSpec};

use output::{csv_head, emit, opt, write_atomic};

#[derive(Parser, Debug)]
#[command(name = "rslab", version, about = "Random Reed-Solomon list recovery experiments")]
#[command(arg_required_else_help = true)]
struct RunConfig {
    /// Master seed (decimal or 0x-hex)
    #[arg(long, global = true, env = "RSLAB_SEED", default_value = "0xA5EED", value_parser = parse_seed)]
    seed: u64,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write output to this file (atomically) instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight distribution of RS[q,d] as CSV
    Wtdist(WtdistArgs),
    /// Verify the dual code RS[q, q-d-2] exhaustively
    DualCheck(CodeArgs),
    /// Decide or count codewords inside given lists
    Recover(RecoverArgs),
    /// Maximum agreement of the code with given lists
    Agree(RecoverArgs),
    /// Closed-form predictors for iid-p lists
    Predict(PredictArgs),
    /// Compare the Fourier-side count with the direct count
    FourierCheck(FourierArgs),
    /// Monte Carlo threshold scan
    Scan(ScanArgs),
    /// Max-agreement distribution over random instances
    AgreeExp(AgreeExpArgs),
    /// Biased-coin CNF plan and bias measurement
    Coin(CoinArgs),
    /// Run the invariant suite
    Selfcheck(SelfcheckArgs),
}

#[derive(Args, Debug)]
struct CodeArgs {
    /// Field as p^k, e.g. 5^1 or 2^4
    #[arg(long)]
    field: FieldSpec,
    #[arg(long)]
    degree: usize,
}

#[derive(Args, Debug)]
struct WtdistArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Count by enumerating every codeword instead of the closed form
    #[arg(long)]
    brute: bool,
}

#[derive(Args, Debug)]
struct RecoverArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// List file: line i holds comma-separated elements of A_i
    #[arg(long, conflicts_with = "points", required_unless_present = "points")]
    lists: Option<PathBuf>,
    /// Point file: one x,y pair per line
    #[arg(long)]
    points: Option<PathBuf>,
    /// Count all codewords instead of stopping at the first
    #[arg(long)]
    count: bool,
    /// Maximum number of witnesses to print
    #[arg(long, default_value_t = recovery::DEFAULT_WITNESS_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct PredictArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    p: f64,
    /// Agreement level for the union-bound tail
    #[arg(long)]
    agreement: Option<u64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct FourierArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpecKind {
    Ap,
    Tribes,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    spec: SpecKind,
    #[arg(long, required_if_eq("spec", "ap"))]
    field: Option<FieldSpec>,
    #[arg(long, required_if_eq("spec", "ap"))]
    degree: Option<usize>,
    /// Tribes block size
    #[arg(long, required_if_eq("spec", "tribes"))]
    b: Option<usize>,
    /// Tribes block count
    #[arg(long, required_if_eq("spec", "tribes"))]
    l: Option<usize>,
    /// LO:HI:N, linearly spaced (log-spaced with --log-grid)
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    log_grid: bool,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

#[derive(Args, Debug)]
struct AgreeExpArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
}

#[derive(Args, Debug)]
struct CoinArgs {
    #[arg(long)]
    p: f64,
    #[arg(long)]
    s: u32,
    #[arg(long, default_value_t = 0.5)]
    bias: f64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Also write the CNF in DIMACS format
    #[arg(long)]
    emit_dimacs: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    Wtdist,
}

#[derive(Args, Debug)]
struct SelfcheckArgs {
    /// Reduced suite
    #[arg(long)]
    fast: bool,
    /// Negative control: corrupt one component on purpose
    #[arg(long, value_enum)]
    inject_fault: Option<FaultArg>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed '{s}': {e}"))
}

/// Why a run stopped early.
enum Failure {
    Usage(String),
    Invariant(String),
}

impl From<rslab::Error> for Failure {
    fn from(e: rslab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("i/o: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cfg = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cfg.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: worker pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cfg) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\nhint: run `rslab --help` for usage");
            ExitCode::from(1)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant failure: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cfg: &RunConfig) -> CmdResult {
    let out = cfg.out.as_deref();
    match &cfg.command {
        Command::Wtdist(a) => cmd_wtdist(a, cfg.seed, out),
        Command::DualCheck(a) => cmd_dual_check(a, cfg.seed, out),
        Command::Recover(a) => cmd_recover(a, cfg.seed, out),
        Command::Agree(a) => cmd_agree(a, cfg.seed, out),
        Command::Predict(a) => cmd_predict(a, cfg.seed, out),
        Command::FourierCheck(a) => cmd_fourier(a, cfg.seed, out),
        Command::Scan(a) => cmd_scan(a, cfg.seed, out),
        Command::AgreeExp(a) => cmd_agree_exp(a, cfg.seed, out),
        Command::Coin(a) => cmd_coin(a, cfg.seed, out),
        Command::Selfcheck(a) => cmd_selfcheck(a, cfg.seed, out),
    }
}

fn full_code(a: &CodeArgs) -> Result<RsCode, Failure> {
    Ok(RsCode::full(&Field::new(&a.field)?, a.degree)?)
}

fn cmd_wtdist(a: &WtdistArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let code = full_code(&a.code)?;
    let wd = if a.brute {
        weight_distribution_brute(&code)?
    } else {
        weight_distribution_exact(&code)?
    };
    let mut s = csv_head("wtdist", seed, &["weight", "count"]);
    for (w, c) in wd.iter() {
        writeln!(s, "{w},{c}").unwrap();
    }
    Ok(emit(out, &s)?)
}

fn cmd_dual_check(a: &CodeArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let code = full_code(a)?;
    let field = code.field().clone();
    let q = field.q() as usize;
    let d = a.degree;
    let dual = dual_code(&code)?;
    let orthogonal = orthogonal_exhaustive(&code.to_linear(), &dual.to_linear())?;
    let dims_ok = code.dimension() + dual.dimension() == q;
    // the degree q-d-1 is off by one; report whether it is orthogonal
    let printed = q - d - 1;
    let printed_ok = orthogonal_exhaustive(&code.to_linear(), &RsCode::full(&field, printed)?.to_linear())?;
    let mut s = csv_head(
        "dual-check",
        seed,
        &["q", "d", "dual_degree", "dim_code", "dim_dual", "orthogonal", "printed_degree", "printed_orthogonal"],
    );
    let dd = dual_degree(q, d).map(|x| x.to_string()).unwrap_or_else(|| "none".into());
    writeln!(
        s,
        "{q},{d},{dd},{},{},{},{printed},{printed_ok}",
        code.dimension(),
        dual.dimension(),
        orthogonal && dims_ok
    )
    .unwrap();
    emit(out, &s)?;
    if orthogonal && dims_ok {
        Ok(())
    } else {
        Err(Failure::Invariant(format!("dual of RS[{q},{d}] failed verification")))
    }
}

fn load_instance(a: &RecoverArgs) -> Result<(RsCode, Instance), Failure> {
    let field = Field::new(&a.code.field)?;
    let inst = match (&a.lists, &a.points) {
        (Some(path), _) => Instance::parse_lists(&field, &std::fs::read_to_string(path)?)?,
        (None, Some(path)) => {
            let pts = recovery::parse_points(&field, &std::fs::read_to_string(path)?)?;
            Instance::from_points(&field, &pts)?
        }
        (None, None) => return Err(Failure::Usage("one of --lists or --points is required".into())),
    };
    let code = if inst.n() == field.q() as usize {
        RsCode::full(&field, a.code.degree)?
    } else {
        RsCode::punctured(&field, a.code.degree, inst.positions().to_vec())?
    };
    Ok((code, inst))
}

fn coeffs(w: &[rslab::FieldElem]) -> String {
    w.iter().map(|c| c.0.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_recover(a: &RecoverArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let (code, inst) = load_instance(a)?;
    let mut s = format!("# rslab recover seed={seed:#x}\n");
    if a.count {
        let r = recovery::count(&code, &inst, a.cap)?;
        writeln!(s, "found={} count={}", r.found, r.count).unwrap();
        for w in &r.witnesses {
            writeln!(s, "witness={}", coeffs(w)).unwrap();
        }
    } else {
        let found = recovery::decide(&code, &inst)?;
        writeln!(s, "found={found}").unwrap();
    }
    Ok(emit(out, &s)?)
}

fn cmd_agree(a: &RecoverArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let (code, inst) = load_instance(a)?;
    let r = recovery::max_agreement(&code, &inst)?;
    let s = format!(
        "# rslab agree seed={seed:#x}\nmax_agreement={} witness={}\n",
        r.max,
        coeffs(&r.witness)
    );
    Ok(emit(out, &s)?)
}

#[derive(Serialize)]
struct Tagged<'a, T: Serialize> {
    command: &'a str,
    seed: u64,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(command: &str, seed: u64, body: T) -> String {
    let mut s = serde_json::to_string_pretty(&Tagged { command, seed, body }).expect("serializable");
    s.push('\n');
    s
}

fn cmd_predict(a: &PredictArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let field = Field::new(&a.code.field)?;
    let pr = predict(field.q() as u64, a.code.degree as u64, a.p, a.agreement)?;
    if a.json {
        return Ok(emit(out, &to_json("predict", seed, &pr))?);
    }
    let mut s = csv_head("predict", seed, &["quantity", "value"]);
    let mut row = |k: &str, v: String| writeln!(s, "{k},{v}").unwrap();
    row("q", pr.q.to_string());
    row("d", pr.d.to_string());
    row("p", sig(pr.p, 6));
    row("expected_count", sig(pr.expected_count, 6));
    row("expected_count_ln", sig(pr.expected_count_ln, 6));
    row("markov_upper", sig(pr.markov_upper, 6));
    row("second_moment_exact", sig(pr.second_moment_exact, 6));
    row("second_moment_exact_ln", sig(pr.second_moment_exact_ln, 6));
    row("second_moment_upper", opt(pr.second_moment_upper, |x| sig(x, 6)));
    row("second_moment_upper_ln", opt(pr.second_moment_upper_ln, |x| sig(x, 6)));
    row("pz_lower", sig(pr.pz_lower, 6));
    row("pz_lower_crude", sig(pr.pz_lower_crude, 6));
    if let (Some(ag), Some(t)) = (pr.agreement, pr.agreement_tail) {
        row("agreement", ag.to_string());
        row("agreement_tail", sig(t, 6));
    }
    Ok(emit(out, &s)?)
}

fn cmd_fourier(a: &FourierArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let code = full_code(&a.code)?;
    let field = code.field().clone();
    let ctx = FourierContext::new(&code)?;
    let model = SampleModel::Iid { p: a.p };
    model.validate(field.q())?;
    let mut s = csv_head(
        "fourier-check",
        seed,
        &["trial", "main_abs", "r_abs", "r_sq", "count_direct", "count_fourier"],
    );
    let mut r_sq = Vec::with_capacity(a.trials as usize);
    let mut worst: f64 = 0.0;
    for t in 0..a.trials {
        let inst = sample_instance(&field, code.n(), model, SeedSpec::new(seed, t))?;
        let dec = ctx.decompose(&inst)?;
        let direct = recovery::count(&code, &inst, 0)?.count;
        worst = worst.max((dec.count - direct as f64).abs());
        r_sq.push(dec.r.norm_sqr());
        writeln!(
            s,
            "{t},{},{},{},{direct},{}",
            sig(dec.main.abs(), 6),
            sig(dec.r.norm(), 6),
            sig(dec.r.norm_sqr(), 6),
            sig(dec.count, 9)
        )
        .unwrap();
    }
    let mean = r_sq.iter().sum::<f64>() / r_sq.len().max(1) as f64;
    writeln!(s, "mean,,,{},,", sig(mean, 6)).unwrap();
    writeln!(s, "exact,,,{},,", sig(expected_r_squared_exact(&code, a.p)?, 6)).unwrap();
    emit(out, &s)?;
    if worst > 1e-6 * code.size() {
        return Err(Failure::Invariant(format!("fourier count off by {worst}")));
    }
    Ok(())
}

fn parse_grid(text: &str, log: bool) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Failure::Usage(format!("--grid expects LO:HI:N, got '{text}'"));
    let [lo, hi, n] = parts[..] else {
        return Err(bad());
    };
    let lo: f64 = lo.parse().map_err(|_| bad())?;
    let hi: f64 = hi.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    Ok(if log { log_grid(lo, hi, n)? } else { linear_grid(lo, hi, n)? })
}

fn cmd_scan(a: &ScanArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let (spec, default_grid, n_vars) = match a.spec {
        SpecKind::Ap => {
            let field = Field::new(a.field.as_ref().expect("required by clap"))?;
            let d = a.degree.expect("required by clap");
            let grid = default_ap_grid(field.q(), d);
            let n = (field.q() as f64).powi(2);
            (MonotoneFunctionSpec::ap(&field, d)?, grid, n)
        }
        SpecKind::Tribes => {
            let (b, l) = (a.b.expect("required by clap"), a.l.expect("required by clap"));
            let c = tribes_crossing(b, l);
            let grid = log_grid(c / 4.0, (4.0 * c).min(1.0), 21)?;
            (MonotoneFunctionSpec::tribes(b, l)?, grid, (b * l) as f64)
        }
    };
    let grid = match &a.grid {
        Some(g) => parse_grid(g, a.log_grid)?,
        None => default_grid,
    };
    let r = scan(&spec, &grid, a.trials, seed)?;
    let mut s = csv_head("scan", seed, &["p", "fhat", "ci_lo", "ci_hi", "trials"]);
    for j in 0..r.grid.len() {
        writeln!(
            s,
            "{},{},{},{},{}",
            sig(r.grid[j], 6),
            sig(r.fhat[j], 6),
            sig(r.ci_lo[j], 6),
            sig(r.ci_hi[j], 6),
            r.trials
        )
        .unwrap();
    }
    emit(out, &s)?;
    let fit: Option<FkFit> = fit_fk(&r, n_vars.max(2.0), 0.1).ok().flatten();
    eprintln!(
        "crossing={} crossing_ci=[{},{}] fitted_B={}",
        opt(r.crossing, |x| sig(x, 6)),
        opt(r.crossing_ci.0, |x| sig(x, 6)),
        opt(r.crossing_ci.1, |x| sig(x, 6)),
        fit.map(|f| sig(f.b_fitted, 4)).unwrap_or_else(|| "n/a".into()),
    );
    if r.isotone_violation {
        return Err(Failure::Invariant("estimated F is not monotone beyond its confidence intervals".into()));
    }
    Ok(())
}

fn cmd_agree_exp(a: &AgreeExpArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let field = Field::new(&a.code.field)?;
    let r = agreement_experiment(&field, a.code.degree, a.p, a.trials, seed)?;
    emit(out, &to_json("agree-exp", seed, &r))?;
    if r.frac_at_or_below_union < 0.99 {
        return Err(Failure::Invariant(format!(
            "only {} of trials at or below the union-bound point",
            r.frac_at_or_below_union
        )));
    }
    Ok(())
}

#[derive(Serialize)]
struct CoinOutput<'a> {
    plan: &'a CnfPlan,
    report: BiasReport,
}

fn cmd_coin(a: &CoinArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let plan = plan_cnf(a.p, a.s)?;
    let report = measure_bias(&plan, a.bias, a.trials, seed)?;
    if let Some(path) = &a.emit_dimacs {
        write_atomic(path, to_dimacs(&plan).as_bytes())?;
    }
    emit(out, &to_json("coin", seed, CoinOutput { plan: &plan, report }))?;
    if !plan.sandwich_holds() {
        return Err(Failure::Invariant("fair-bias sandwich violated".into()));
    }
    Ok(())
}

fn cmd_selfcheck(a: &SelfcheckArgs, seed: u64, out: Option<&Path>) -> CmdResult {
    let report = selfcheck::run(SelfcheckOptions {
        fast: a.fast,
        seed,
        fault: a.inject_fault.map(|FaultArg::Wtdist| Fault::Wtdist),
    });
    emit(out, &report.render())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Invariant("selfcheck failed".into()))
    }
}
