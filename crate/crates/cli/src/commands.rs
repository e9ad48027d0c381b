//! Command-line surface: argument definitions and dispatch.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use staircase_core::asep::{fill_uq, wtx, z_full_capped};
use staircase_core::distributions::*;
use staircase_core::enumerate::*;
use staircase_core::eulerian::{symbolic_triangle, v_triangle};
use staircase_core::rational::{format_rational, to_f64};
use staircase_core::sampler::*;
use staircase_core::{Rational, Tableau};

use crate::format::{filled_to_json, tableau_from_any, tableau_to_json, Format, Table};
use crate::output::Sink;
use crate::params::{finite, rational, Weights};
use crate::verify::{self, Level};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "staircase", version, about = "Exact computation, sampling and verification for weighted staircase tableaux")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format (each command has its own default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file, replaced atomically when done, instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Print probabilities and moments as decimal floats.
    #[arg(long, global = true)]
    pub float: bool,
    /// Largest size accepted for exhaustive enumeration.
    #[arg(long, global = true, env = "STAIRCASE_CAP")]
    pub cap: Option<usize>,
    /// Worker threads for batch sampling and enumeration; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Draw random tableaux, or summarize a batch of them.
    Sample(SampleArgs),
    /// List every tableau of a size, or tally them.
    Enumerate(EnumerateArgs),
    /// Exact law of the number A of α on the diagonal.
    DistA(LawArgs),
    /// Mean and variance of A.
    MomentsA(LawArgs),
    /// A as a sum of independent Bernoulli variables (floats).
    Decompose(LawArgs),
    /// Per-step laws whose product gives the law of (N_α, N_β).
    PairsN(LawArgs),
    /// Probabilities of symbols at given positions.
    Positions(PositionArgs),
    /// Compare the law of a subtableau with the predicted law.
    Subcheck(SubcheckArgs),
    /// Friedman urn: exact law of white balls added, or simulation.
    Urn(UrnArgs),
    /// Rows of the generalized Eulerian triangle.
    Triangle(TriangleArgs),
    /// u/q filling and full weights.
    #[command(subcommand)]
    Asep(AsepCommand),
    /// Normal-approximation diagnostics for A and growth of N_α.
    Clt(CltArgs),
    /// Run the acceptance suite and print a pass/fail table.
    Verify(VerifyArgs),
    /// Check a tableau document against the tableau rules.
    Validate(InputArgs),
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub weights: Weights,
    /// Weight of γ (four-symbol sampling; needs --alpha/--beta).
    #[arg(long)]
    pub gamma: Option<String>,
    /// Weight of δ (four-symbol sampling; needs --alpha/--beta).
    #[arg(long)]
    pub delta: Option<String>,
    /// Probability of α in the tie at α = β = ∞.
    #[arg(long, default_value = "1/2")]
    pub rho: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub samples: u64,
    /// Print tallies of A, (N_α, N_β), r and the diagonal instead of tableaux.
    #[arg(long)]
    pub summary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// αβ-tableaux.
    Ab,
    /// Tableaux with all four symbols.
    Four,
    /// αβ-tableaux with the maximal 2n − 1 symbols.
    Max,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Family::Ab)]
    pub family: Family,
    /// Print tallies of symbol counts instead of the tableaux.
    #[arg(long)]
    pub counts: bool,
}

#[derive(Args, Debug)]
pub struct LawArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub weights: Weights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PositionKind {
    /// P(α on the diagonal) for every row.
    Diag,
    /// P(α), P(β) and P(filled) for every off-diagonal box.
    Cell,
    /// P(α on the diagonal in all of the given columns).
    Joint,
    /// Covariances of the diagonal indicators for every pair of columns.
    Cov,
}

#[derive(Args, Debug)]
pub struct PositionArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub weights: Weights,
    #[arg(long, value_enum)]
    pub kind: PositionKind,
    /// Columns for --kind joint, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub cols: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct SubcheckArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub weights: Weights,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
}

#[derive(Args, Debug)]
pub struct UrnArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub weights: Weights,
    /// Simulate this many runs instead of printing the exact law.
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct TriangleArgs {
    #[arg(long)]
    pub n_max: usize,
    #[command(flatten)]
    pub weights: Weights,
    /// Print entries as polynomials in a and b.
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Subcommand, Debug)]
pub enum AsepCommand {
    /// Label the empty boxes of a tableau with u and q.
    Fill(InputArgs),
    /// Exponents of α, β, γ, δ, q, u in the full weight.
    Weight(InputArgs),
    /// Total full weight of all tableaux of size n.
    ZFull(ZFullArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Tableau document (JSON or text rendering); "-" reads stdin.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct ZFullArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
    #[arg(long)]
    pub gamma: String,
    #[arg(long)]
    pub delta: String,
    #[arg(long)]
    pub q: String,
    #[arg(long)]
    pub u: String,
}

#[derive(Args, Debug)]
pub struct CltArgs {
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub weights: Weights,
    /// Instead, tabulate mean, variance and covariance of N_α at these sizes.
    #[arg(long, value_delimiter = ',')]
    pub growth: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Level::Desk)]
    pub level: Level,
}

struct Ctx {
    format: Option<Format>,
    float: bool,
    cap: Option<usize>,
    pool: rayon::ThreadPool,
}

impl Ctx {
    fn num(&self, r: &Rational) -> String {
        if self.float {
            to_f64(r).to_string()
        } else {
            format_rational(r)
        }
    }

    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn emit(&self, out: &mut Sink, table: &Table, default: Format) -> Result<(), CliError> {
        table.write(out, self.format_or(default))
    }
}

/// Runs one parsed invocation, writing to stdout or `--output`.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let ctx = Ctx { format: cli.format, float: cli.float, cap: cli.cap, pool };
    let mut out = Sink::open(cli.output.as_deref())?;
    dispatch(&ctx, cli.command, &mut out)?;
    out.finish()?;
    Ok(())
}

fn dispatch(ctx: &Ctx, command: Command, out: &mut Sink) -> Result<(), CliError> {
    match command {
        Command::Sample(args) => sample(ctx, &args, out),
        Command::Enumerate(args) => enumerate(ctx, &args, out),
        Command::DistA(args) => {
            let (a, b) = args.weights.finite_inverse()?;
            let law = dist_a(args.n, &a, &b)?;
            let mut t = Table::new(&["k", "p"]);
            for (k, p) in law.iter() {
                t.push([k.to_string(), ctx.num(p)]);
            }
            ctx.emit(out, &t, Format::Csv)
        }
        Command::MomentsA(args) => {
            let (a, b) = args.weights.finite_inverse()?;
            let (mean, var) = moments_a(args.n, &a, &b)?;
            let mut t = Table::new(&["n", "mean", "variance"]);
            t.push([args.n.to_string(), ctx.num(&mean), ctx.num(&var)]);
            ctx.emit(out, &t, Format::Csv)
        }
        Command::Decompose(args) => {
            let (a, b) = args.weights.finite_inverse()?;
            let dec = bernoulli_decomposition(args.n, &a, &b)?;
            let mut t = Table::new(&["i", "p", "xi"]);
            for (i, p) in dec.p.iter().enumerate() {
                let xi = dec.xi.get(i).map_or(String::new(), |x| x.to_string());
                t.push([(i + 1).to_string(), p.to_string(), xi]);
            }
            ctx.emit(out, &t, Format::Csv)
        }
        Command::PairsN(args) => {
            let (a, b) = args.weights.finite_inverse()?;
            let pairs = dist_n_pairs(args.n, &a, &b)?;
            let mut t = Table::new(&["i", "p10", "p01", "p11"]);
            for s in &pairs.steps {
                t.push([s.i.to_string(), ctx.num(&s.p10), ctx.num(&s.p01), ctx.num(&s.p11)]);
            }
            ctx.emit(out, &t, Format::Csv)
        }
        Command::Positions(args) => positions(ctx, &args, out),
        Command::Subcheck(args) => {
            let (a, b) = args.weights.finite_inverse()?;
            let cap = ctx.cap.unwrap_or(DEFAULT_AB_CAP);
            let r = subtableau_law_check_capped(args.n, &a, &b, args.i, args.j, cap)?;
            let mut t = Table::new(&["size", "a_hat", "b_hat", "support", "equal"]);
            t.push([r.size.to_string(), ctx.num(&r.a_hat), ctx.num(&r.b_hat), r.support.to_string(), r.equal().to_string()]);
            ctx.emit(out, &t, Format::Csv)?;
            if r.equal() {
                Ok(())
            } else {
                Err(CliError::Verification(1))
            }
        }
        Command::Urn(args) => urn(ctx, &args, out),
        Command::Triangle(args) => triangle(ctx, &args, out),
        Command::Asep(cmd) => asep(ctx, cmd, out),
        Command::Clt(args) => clt(ctx, &args, out),
        Command::Verify(args) => run_verify(ctx, args.level, out),
        Command::Validate(args) => {
            let t = read_tableau(&args.input)?;
            write_tableaux(ctx, out, [t].iter(), Format::Text)
        }
    }
}

fn read_tableau(path: &Path) -> Result<Tableau, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    Ok(tableau_from_any(&text)?)
}

fn write_tableaux<'a>(
    ctx: &Ctx,
    out: &mut Sink,
    tableaux: impl Iterator<Item = &'a Tableau>,
    default: Format,
) -> Result<(), CliError> {
    match ctx.format_or(default) {
        Format::Json => {
            for t in tableaux {
                writeln!(out, "{}", tableau_to_json(t))?;
            }
        }
        Format::Text => {
            for (i, t) in tableaux.enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", t.render_text())?;
            }
        }
        Format::Csv => {
            let mut table = Table::new(&["index", "row", "col", "sym"]);
            for (i, t) in tableaux.enumerate() {
                for (r, c, s) in t.cells() {
                    table.push([i.to_string(), r.to_string(), c.to_string(), s.name().to_string()]);
                }
            }
            table.write(out, Format::Csv)?;
        }
    }
    Ok(())
}

/// Number of shards drawn at a time before their output is written.
const SHARD_WINDOW: u64 = 64;

enum Plan {
    Ab(StepPlan),
    Four(FourPlan),
}

impl Plan {
    fn shard(&self, seed: u64, count: u64, shard: u64) -> Vec<Tableau> {
        match self {
            Plan::Ab(plan) => {
                let mut v = Vec::new();
                for_each_in_shard(plan, seed, count, shard, |t| v.push(t));
                v
            }
            Plan::Four(plan) => {
                let start = shard * SHARD_SIZE;
                let len = count.saturating_sub(start).min(SHARD_SIZE);
                let mut rng = rng_for(seed, shard);
                (0..len).map(|_| plan.sample(&mut rng).expect("plan parameters were validated")).collect()
            }
        }
    }
}

fn sample(ctx: &Ctx, args: &SampleArgs, out: &mut Sink) -> Result<(), CliError> {
    let rho = rational("rho", &args.rho)?;
    let plan = if args.gamma.is_some() || args.delta.is_some() {
        let (alpha, beta) = match (&args.weights.alpha, &args.weights.beta) {
            (Some(al), Some(be)) if args.weights.a.is_none() && args.weights.b.is_none() => {
                (finite("alpha", al)?, finite("beta", be)?)
            }
            _ => return Err(CliError::Usage("four-symbol sampling needs --alpha and --beta".into())),
        };
        let gamma = args.gamma.as_deref().map_or(Ok(Rational::default()), |g| finite("gamma", g))?;
        let delta = args.delta.as_deref().map_or(Ok(Rational::default()), |d| finite("delta", d))?;
        Plan::Four(FourPlan::new(args.n, [&alpha, &beta, &gamma, &delta])?)
    } else {
        let (a, b) = args.weights.inverse()?;
        Plan::Ab(StepPlan::new(args.n, &Params::new(a, b, rho)?)?)
    };
    let shards = shard_count(args.samples);
    if args.summary {
        let parts: Vec<BatchSummary> = ctx.pool.install(|| {
            (0..shards)
                .into_par_iter()
                .map(|s| {
                    let mut summary = BatchSummary::default();
                    for t in plan.shard(args.seed, args.samples, s) {
                        summary.record(&SampleStats::of(&t));
                    }
                    summary
                })
                .collect()
        });
        let mut total = BatchSummary::default();
        for p in &parts {
            total.merge(p);
        }
        let mut t = Table::new(&["statistic", "value", "count"]);
        t.push(["samples".to_string(), String::new(), total.count.to_string()]);
        for (k, c) in &total.a_hist {
            t.push(["A".to_string(), k.to_string(), c.to_string()]);
        }
        for ((na, nb), c) in &total.n_hist {
            t.push(["N".to_string(), format!("({na},{nb})"), c.to_string()]);
        }
        for (k, c) in &total.r_hist {
            t.push(["r".to_string(), k.to_string(), c.to_string()]);
        }
        for (w, c) in &total.diagonal_hist {
            t.push(["diagonal".to_string(), w.clone(), c.to_string()]);
        }
        return ctx.emit(out, &t, Format::Csv);
    }
    let format = ctx.format_or(Format::Json);
    if format == Format::Csv {
        Table::new(&["index", "row", "col", "sym"]).write(out, Format::Csv)?;
    }
    let mut index = 0u64;
    let mut first = 0;
    while first < shards {
        let last = (first + SHARD_WINDOW).min(shards);
        let batch: Vec<Vec<Tableau>> =
            ctx.pool.install(|| (first..last).into_par_iter().map(|s| plan.shard(args.seed, args.samples, s)).collect());
        for t in batch.iter().flatten() {
            match format {
                Format::Json => writeln!(out, "{}", tableau_to_json(t))?,
                Format::Text => {
                    if index > 0 {
                        writeln!(out)?;
                    }
                    write!(out, "{}", t.render_text())?;
                }
                Format::Csv => {
                    for (r, c, s) in t.cells() {
                        writeln!(out, "{index},{r},{c},{}", s.name())?;
                    }
                }
            }
            index += 1;
        }
        first = last;
    }
    Ok(())
}

fn enumerate(ctx: &Ctx, args: &EnumerateArgs, out: &mut Sink) -> Result<(), CliError> {
    let n = args.n;
    match (args.family, args.counts) {
        (Family::Ab, false) => {
            let stream = enumerate_ab_capped(n, ctx.cap.unwrap_or(DEFAULT_AB_CAP))?;
            stream_tableaux(ctx, out, stream)
        }
        (Family::Four, false) => {
            let stream = enumerate_four_capped(n, ctx.cap.unwrap_or(DEFAULT_FOUR_CAP))?;
            stream_tableaux(ctx, out, stream)
        }
        (Family::Max, false) => {
            let stream = max_symbol_tableaux_capped(n, ctx.cap.unwrap_or(DEFAULT_AB_CAP))?;
            stream_tableaux(ctx, out, stream)
        }
        (Family::Ab, true) => {
            let cap = ctx.cap.unwrap_or(DEFAULT_AB_CAP);
            let tops = partials(n, n.min(4), cap)?;
            let parts: Vec<_> = ctx.pool.install(|| {
                tops.into_par_iter()
                    .map(|p| {
                        let mut tally = std::collections::BTreeMap::new();
                        for t in AbStream::from_partial(p) {
                            let c = t.counts();
                            *tally.entry((c.n_alpha, c.n_beta, c.diag_alpha, c.alpha_rows)).or_insert(0u64) += 1;
                        }
                        tally
                    })
                    .collect()
            });
            let mut tally = std::collections::BTreeMap::new();
            for part in parts {
                for (k, v) in part {
                    *tally.entry(k).or_insert(0u64) += v;
                }
            }
            let mut t = Table::new(&["n_alpha", "n_beta", "a", "r", "count"]);
            for ((na, nb, a, r), c) in tally {
                t.push([na, nb, a, r, c as usize]);
            }
            ctx.emit(out, &t, Format::Csv)
        }
        (Family::Four, true) => {
            let tally = exponent_tally(n, ctx.cap.unwrap_or(DEFAULT_FOUR_CAP))?;
            let mut t = Table::new(&["n_alpha", "n_beta", "n_gamma", "n_delta", "count"]);
            for (e, c) in tally {
                t.push([e[0] as u64, e[1] as u64, e[2] as u64, e[3] as u64, c]);
            }
            ctx.emit(out, &t, Format::Csv)
        }
        (Family::Max, true) => {
            let mut tally = std::collections::BTreeMap::new();
            for t in max_symbol_tableaux_capped(n, ctx.cap.unwrap_or(DEFAULT_AB_CAP))? {
                *tally.entry(t.counts().n_alpha).or_insert(0u64) += 1;
            }
            let mut t = Table::new(&["n_alpha", "count"]);
            for (k, c) in tally {
                t.push([k as u64, c]);
            }
            ctx.emit(out, &t, Format::Csv)
        }
    }
}

fn stream_tableaux(ctx: &Ctx, out: &mut Sink, stream: impl Iterator<Item = Tableau>) -> Result<(), CliError> {
    match ctx.format_or(Format::Json) {
        Format::Json => {
            for t in stream {
                writeln!(out, "{}", tableau_to_json(&t))?;
            }
            Ok(())
        }
        format => {
            let all: Vec<Tableau> = stream.collect();
            write_tableaux(ctx, out, all.iter(), format)
        }
    }
}

fn positions(ctx: &Ctx, args: &PositionArgs, out: &mut Sink) -> Result<(), CliError> {
    let (a, b) = args.weights.finite_inverse()?;
    let n = args.n;
    let t = match args.kind {
        PositionKind::Diag => {
            let mut t = Table::new(&["row", "col", "p_alpha"]);
            for i in 1..=n {
                t.push([i.to_string(), (n + 1 - i).to_string(), ctx.num(&diag_prob(n, &a, &b, i)?)]);
            }
            t
        }
        PositionKind::Cell => {
            let mut t = Table::new(&["row", "col", "p_alpha", "p_beta", "p_filled"]);
            for i in 1..n {
                for j in 1..=n - i {
                    let c = cell_prob(n, &a, &b, i, j)?;
                    t.push([i.to_string(), j.to_string(), ctx.num(&c.alpha), ctx.num(&c.beta), ctx.num(&c.filled)]);
                }
            }
            t
        }
        PositionKind::Joint => {
            if args.cols.is_empty() {
                return Err(CliError::Usage("--kind joint needs --cols".into()));
            }
            let cols: Vec<String> = args.cols.iter().map(|c| c.to_string()).collect();
            let mut t = Table::new(&["cols", "p_all_alpha"]);
            t.push([cols.join(" "), ctx.num(&joint_diag_alpha(n, &a, &b, &args.cols)?)]);
            t
        }
        PositionKind::Cov => {
            let mut t = Table::new(&["col_j", "col_k", "cov"]);
            for j in 1..=n {
                for k in j + 1..=n {
                    t.push([j.to_string(), k.to_string(), ctx.num(&diag_cov(n, &a, &b, j, k)?)]);
                }
            }
            t
        }
    };
    ctx.emit(out, &t, Format::Csv)
}

fn urn(ctx: &Ctx, args: &UrnArgs, out: &mut Sink) -> Result<(), CliError> {
    let (a, b) = args.weights.finite_inverse()?;
    let law = urn_laws(args.n, &a, &b)?.pop().expect("one law per step");
    let Some(samples) = args.samples else {
        let mut t = Table::new(&["white_added", "p"]);
        for (k, p) in law.iter() {
            t.push([k.to_string(), ctx.num(p)]);
        }
        return ctx.emit(out, &t, Format::Csv);
    };
    let shards = shard_count(samples);
    let parts: Vec<Vec<u64>> = ctx.pool.install(|| {
        (0..shards)
            .into_par_iter()
            .map(|s| {
                let mut counts = vec![0u64; args.n + 1];
                let mut rng = rng_for(args.seed, s);
                let len = samples.saturating_sub(s * SHARD_SIZE).min(SHARD_SIZE);
                for _ in 0..len {
                    let run = urn_sample_with(args.n, &a, &b, &mut rng).expect("weights were validated");
                    counts[run.white_added] += 1;
                }
                counts
            })
            .collect()
    });
    let mut counts = vec![0u64; args.n + 1];
    for part in parts {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    let mut t = Table::new(&["white_added", "count", "expected"]);
    for (k, c) in counts.iter().enumerate() {
        let expected = law.pmf(k as i64) * Rational::from_integer(samples.into());
        t.push([k.to_string(), c.to_string(), ctx.num(&expected)]);
    }
    ctx.emit(out, &t, Format::Csv)
}

fn triangle(ctx: &Ctx, args: &TriangleArgs, out: &mut Sink) -> Result<(), CliError> {
    let mut t = Table::new(&["n", "k", "v"]);
    if args.symbolic {
        for (n, row) in symbolic_triangle(args.n_max).iter().enumerate() {
            for (k, p) in row.iter().enumerate() {
                t.push([n.to_string(), k.to_string(), p.to_string()]);
            }
        }
    } else {
        let (a, b) = args.weights.finite_inverse()?;
        let tri = v_triangle(args.n_max, &a, &b)?;
        for n in 0..=args.n_max {
            for (k, v) in tri.row(n).iter().enumerate() {
                t.push([n.to_string(), k.to_string(), ctx.num(v)]);
            }
        }
    }
    ctx.emit(out, &t, Format::Csv)
}

fn asep(ctx: &Ctx, cmd: AsepCommand, out: &mut Sink) -> Result<(), CliError> {
    match cmd {
        AsepCommand::Fill(args) => {
            let filled = fill_uq(&read_tableau(&args.input)?)?;
            match ctx.format_or(Format::Text) {
                Format::Json => writeln!(out, "{}", filled_to_json(&filled))?,
                Format::Text => write!(out, "{}", filled.render_text())?,
                Format::Csv => {
                    let mut t = Table::new(&["row", "col", "entry"]);
                    let base = filled.base();
                    for r in 1..=base.size() {
                        for c in 1..=base.size() + 1 - r {
                            let entry = match (base.get(r, c), filled.label(r, c)) {
                                (Some(s), _) => s.name().to_string(),
                                (None, Some(l)) => l.letter().to_string(),
                                (None, None) => String::new(),
                            };
                            t.push([r.to_string(), c.to_string(), entry]);
                        }
                    }
                    t.write(out, Format::Csv)?;
                }
            }
            Ok(())
        }
        AsepCommand::Weight(args) => {
            let e = wtx(&read_tableau(&args.input)?)?;
            let mut t = Table::new(&["alpha", "beta", "gamma", "delta", "q", "u"]);
            t.push(e);
            ctx.emit(out, &t, Format::Csv)
        }
        AsepCommand::ZFull(args) => {
            let vals = [
                rational("alpha", &args.alpha)?,
                rational("beta", &args.beta)?,
                rational("gamma", &args.gamma)?,
                rational("delta", &args.delta)?,
                rational("q", &args.q)?,
                rational("u", &args.u)?,
            ];
            let [al, be, ga, de, q, u] = &vals;
            let z = z_full_capped(args.n, [al, be, ga, de, q, u], ctx.cap.unwrap_or(DEFAULT_FOUR_CAP))?;
            let mut t = Table::new(&["n", "z"]);
            t.push([args.n.to_string(), ctx.num(&z)]);
            ctx.emit(out, &t, Format::Csv)
        }
    }
}

fn clt(ctx: &Ctx, args: &CltArgs, out: &mut Sink) -> Result<(), CliError> {
    let (a, b) = args.weights.finite_inverse()?;
    if !args.growth.is_empty() {
        let rows = n_alpha_growth_check(&args.growth, &a, &b)?;
        let mut t = Table::new(&["n", "mean_n_alpha", "var_n_alpha", "cov", "mean_deviation", "var_deviation"]);
        for r in rows {
            t.push([
                r.n.to_string(),
                ctx.num(&r.mean_alpha),
                ctx.num(&r.var_alpha),
                ctx.num(&r.cov),
                r.mean_deviation.to_string(),
                r.var_deviation.to_string(),
            ]);
        }
        return ctx.emit(out, &t, Format::Csv);
    }
    let d = clt_diagnostics(args.n, &a, &b)?;
    let mut t = Table::new(&["n", "mean", "variance", "ks_to_normal", "llt_max_residual"]);
    t.push([d.n.to_string(), d.mean.to_string(), d.variance.to_string(), d.ks_to_normal.to_string(), d.llt_max_residual.to_string()]);
    ctx.emit(out, &t, Format::Csv)
}

fn run_verify(ctx: &Ctx, level: Level, out: &mut Sink) -> Result<(), CliError> {
    let format = ctx.format_or(Format::Text);
    let mut table = Table::new(&["id", "check", "result", "seconds", "detail"]);
    let mut failed = 0;
    for check in verify::checks() {
        let o = verify::run_check(&check, level);
        if !o.passed {
            failed += 1;
        }
        if format == Format::Text {
            writeln!(out, "{}", verify::format_outcome(&o))?;
            out.flush()?;
        }
        table.push([
            o.id.to_string(),
            o.name.to_string(),
            if o.passed { "pass" } else { "fail" }.to_string(),
            format!("{:.2}", o.elapsed.as_secs_f64()),
            o.detail,
        ]);
    }
    if format == Format::Text {
        writeln!(out, "{} of {} checks passed", table.rows.len() - failed, table.rows.len())?;
    } else {
        table.write(out, format)?;
    }
    if failed > 0 {
        Err(CliError::Verification(failed))
    } else {
        Ok(())
    }
}
