//! Command-line front end: experiment orchestration and CSV emission.
//!
//! Exit codes: 0 success, 1 parameter/usage error, 2 numerical failure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use morrey_core::experiments::{
    critical_border, divergence_probe, fubini_comparison, hardy_check, sawtooth_probe,
    truncation_ratio_sweep, DivergenceOutcome, HardyInterval, SpaceKind, TruncOp,
};
use morrey_core::testbank::{random_smooth, zero_mean_bump_family, Callback};
use morrey_core::zeroset::{cover_scaling, CoverOutcome};
use morrey_core::{
    besov_morrey_norm, besov_morrey_norm_lp, build_partition, max_bands, morrey_norm, sample,
    tlm_norm, tlm_norm_lp, Error, FreqGrid, GridBox, NormResult, QuadratureSpec, SpaceParams,
};

#[derive(Parser)]
#[command(name = "morrey", version, about = "Morrey-scale norm computations and experiments")]
struct Cli {
    /// Worker thread cap (default: available cores). Output is unaffected.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// key=value config file supplying defaults; explicit flags win.
    #[arg(long, global = true)]
    config: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one norm of one test function.
    Norm(NormArgs),
    /// Truncation-ratio sweep over a smoothness grid.
    Sweep(SweepArgs),
    /// Per-level divergence probe against the critical border.
    Border(BorderArgs),
    /// Iterated-vs-direct norm comparison (Fubini-property failure).
    Fubini(FubiniArgs),
    /// Two-sided Hardy-type inequality check.
    Hardy(HardyArgs),
    /// Sawtooth log-divergence fit.
    Sawtooth(SawtoothArgs),
    /// Zero-set covering-law counts.
    Zeroset(ZerosetArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Space {
    Morrey,
    Besov,
    Tlm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Diff,
    Spectral,
}

#[derive(Args)]
struct SpaceFlags {
    #[arg(long)]
    s: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    u: Option<f64>,
    /// Outer exponent q; `inf` allowed.
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args)]
struct QuadFlags {
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_count: Option<usize>,
    #[arg(long)]
    h_per_axis: Option<usize>,
    /// Coarsest dyadic level of the Morrey supremum.
    #[arg(long)]
    j_min: Option<i32>,
    /// Finest dyadic level of the Morrey supremum.
    #[arg(long)]
    j_max: Option<i32>,
}

#[derive(Args)]
struct NormArgs {
    #[arg(long, value_enum)]
    space: Option<Space>,
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    #[command(flatten)]
    sp: SpaceFlags,
    #[command(flatten)]
    quad: QuadFlags,
    /// Inner exponent v; `inf` allowed.
    #[arg(long)]
    v: Option<String>,
    /// Difference order N (default: smallest integer > s).
    #[arg(long)]
    n_order: Option<u32>,
    /// Test function: bump | random.
    #[arg(long = "fn")]
    function: Option<String>,
    /// Samples per axis.
    #[arg(long)]
    n: Option<usize>,
    /// Seed for `--fn random`.
    #[arg(long)]
    seed: Option<u64>,
    /// Complexity for `--fn random`.
    #[arg(long)]
    complexity: Option<usize>,
    /// Zero-padding factor for the spectral engine.
    #[arg(long)]
    pad: Option<f64>,
    /// Common lower corner coordinate of the sampling box.
    #[arg(long)]
    box_lo: Option<f64>,
    /// Common upper corner coordinate of the sampling box.
    #[arg(long)]
    box_hi: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Truncation operator: T+ | T.
    #[arg(long)]
    op: Option<String>,
    /// Norm scale: besov | tlm.
    #[arg(long, value_enum)]
    space: Option<Space>,
    /// Smoothness grid start:stop:step (inclusive).
    #[arg(long)]
    s_grid: Option<String>,
    #[command(flatten)]
    sp: SpaceFlags,
    #[command(flatten)]
    quad: QuadFlags,
    #[arg(long)]
    v: Option<String>,
    /// Comma-separated refinement levels (samples per axis).
    #[arg(long)]
    n_list: Option<String>,
    /// Size of the random test family.
    #[arg(long)]
    fn_count: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    complexity: Option<usize>,
}

#[derive(Args)]
struct BorderArgs {
    /// Comma-separated smoothness values.
    #[arg(long)]
    s_list: Option<String>,
    #[command(flatten)]
    sp: SpaceFlags,
    #[arg(long)]
    j_min: Option<i32>,
    #[arg(long)]
    j_max: Option<i32>,
}

#[derive(Args)]
struct FubiniArgs {
    #[command(flatten)]
    sp: SpaceFlags,
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_count: Option<usize>,
    /// Comma-separated box enlargement scales for the direct norm.
    #[arg(long)]
    scales: Option<String>,
}

#[derive(Args)]
struct HardyArgs {
    #[command(flatten)]
    sp: SpaceFlags,
    #[command(flatten)]
    quad: QuadFlags,
    /// Interval: `a:b` (bounded) or `halfline:cutoff`.
    #[arg(long)]
    interval: Option<String>,
    /// Size of the zero-mean bump family.
    #[arg(long)]
    fn_count: Option<usize>,
    /// Samples on the interval.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct SawtoothArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    u: Option<f64>,
    /// Comma-separated partial-sum lengths J.
    #[arg(long)]
    j_list: Option<String>,
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_count: Option<usize>,
    /// Emit the raw (J, t, Q) points instead of the fits.
    #[arg(long)]
    points: bool,
}

#[derive(Args)]
struct ZerosetArgs {
    /// Zero set: line | circle | triple.
    #[arg(long = "fn")]
    function: Option<String>,
    /// Base dyadic level.
    #[arg(long)]
    k: Option<i32>,
    /// Covering level range `a:b` (inclusive).
    #[arg(long)]
    r: Option<String>,
}

/// key=value defaults loaded from --config; explicit flags take precedence.
struct Config(BTreeMap<String, String>);

impl Config {
    fn load(path: Option<&str>) -> Result<Config, String> {
        let mut map = BTreeMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {path}: {e}"))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| format!("{path}:{}: expected key=value", lineno + 1))?;
                map.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(Config(map))
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        match self.0.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| format!("config key {key}={raw}: {e}")),
        }
    }

    /// flag value, else config value, else hard default.
    fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, String>
    where
        T::Err: std::fmt::Display,
    {
        Ok(flag.or(self.get(key)?).unwrap_or(default))
    }

}

/// Parses an exponent that may be spelled `inf`.
fn parse_exponent(raw: &str) -> Result<f64, String> {
    if raw.eq_ignore_ascii_case("inf") {
        Ok(f64::INFINITY)
    } else {
        raw.parse::<f64>().map_err(|e| format!("bad exponent {raw}: {e}"))
    }
}

fn parse_list<T: FromStr>(raw: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    raw.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| format!("bad list entry {t}: {e}")))
        .collect()
}

/// Inclusive arithmetic grid `start:stop:step`.
fn parse_grid(raw: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected start:stop:step, got {raw}"));
    }
    let start: f64 = parts[0].parse().map_err(|e| format!("bad grid start: {e}"))?;
    let stop: f64 = parts[1].parse().map_err(|e| format!("bad grid stop: {e}"))?;
    let step: f64 = parts[2].parse().map_err(|e| format!("bad grid step: {e}"))?;
    if !(step > 0.0 && stop >= start) {
        return Err(format!("need start <= stop and step > 0 in {raw}"));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn parse_range_i32(raw: &str) -> Result<(i32, i32), String> {
    let (a, b) = raw.split_once(':').ok_or_else(|| format!("expected a:b, got {raw}"))?;
    let a = a.parse().map_err(|e| format!("bad range start: {e}"))?;
    let b = b.parse().map_err(|e| format!("bad range stop: {e}"))?;
    Ok((a, b))
}

/// Round-trip-safe float formatting (17 significant digits).
fn fmt_f(x: f64) -> String {
    format!("{x:.16e}")
}

/// CSV accumulator: `#` comment lines, a header, then data rows.
struct Csv {
    text: String,
}

impl Csv {
    fn new(subcommand: &str, params: &str) -> Csv {
        let mut text = String::new();
        let _ = writeln!(text, "# morrey v{} {subcommand}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(text, "# params: {params}");
        Csv { text }
    }

    fn comment(&mut self, line: &str) {
        let _ = writeln!(self.text, "# {line}");
    }

    fn header(&mut self, cols: &[&str]) {
        let _ = writeln!(self.text, "{}", cols.join(","));
    }

    fn row(&mut self, fields: &[String]) {
        let _ = writeln!(self.text, "{}", fields.join(","));
    }

    fn emit(self, out: Option<&str>) -> Result<(), String> {
        match out {
            None => {
                std::io::stdout()
                    .write_all(self.text.as_bytes())
                    .map_err(|e| format!("writing stdout: {e}"))?;
            }
            Some(path) => {
                fs::write(path, self.text).map_err(|e| format!("writing {path}: {e}"))?;
            }
        }
        Ok(())
    }
}

enum Failure {
    Parameter(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Numerical(_) | Error::NonFinite { .. } => Failure::Numerical(e.to_string()),
            other => Failure::Parameter(other.to_string()),
        }
    }
}

impl From<String> for Failure {
    fn from(msg: String) -> Failure {
        Failure::Parameter(msg)
    }
}

/// Rejects non-finite results so they surface as exit code 2.
fn finite(x: f64, what: &str) -> Result<f64, Failure> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Failure::Numerical(format!("{what} is not finite: {x}")))
    }
}

fn resolve_quad(flags: &QuadFlags, cfg: &Config) -> Result<QuadratureSpec, String> {
    Ok(QuadratureSpec {
        t_min: cfg.pick(flags.t_min, "t-min", 0.02)?,
        t_max: cfg.pick(flags.t_max, "t-max", 1.0)?,
        t_count: cfg.pick(flags.t_count, "t-count", 12)?,
        h_per_axis: cfg.pick(flags.h_per_axis, "h-per-axis", 12)?,
        sup_levels: (cfg.pick(flags.j_min, "j-min", -2)?, cfg.pick(flags.j_max, "j-max", 6)?),
    })
}

fn resolve_space(flags: &SpaceFlags, cfg: &Config) -> Result<SpaceParams, Failure> {
    let q_raw = cfg.pick(flags.q.clone(), "q", "2".to_string())?;
    Ok(SpaceParams::new(
        cfg.pick(flags.s, "s", 0.5)?,
        cfg.pick(flags.p, "p", 1.0)?,
        cfg.pick(flags.u, "u", 2.0)?,
        parse_exponent(&q_raw)?,
        cfg.pick(flags.d, "d", 1)?,
    )?)
}

fn make_function(
    name: &str,
    d: usize,
    domain: &GridBox,
    seed: u64,
    complexity: usize,
) -> Result<Callback, String> {
    match name {
        "bump" => Ok(Arc::new(move |x: &[f64]| {
            x.iter().map(|&t| morrey_core::util::bump(t)).product()
        })),
        "random" => Ok(random_smooth(seed, d, domain, complexity)),
        other => Err(format!("unknown function {other}; expected bump | random")),
    }
}

fn run_norm(args: &NormArgs, cfg: &Config, out: Option<&str>) -> Result<(), Failure> {
    let params = resolve_space(&args.sp, cfg)?;
    let spec = resolve_quad(&args.quad, cfg)?;
    let space = args.space.unwrap_or(match cfg.get::<String>("space")?.as_deref() {
        Some("morrey") => Space::Morrey,
        Some("tlm") => Space::Tlm,
        Some("besov") | None => Space::Besov,
        Some(other) => return Err(format!("unknown space {other}").into()),
    });
    let engine = args.engine.unwrap_or(match cfg.get::<String>("engine")?.as_deref() {
        Some("spectral") => Engine::Spectral,
        Some("diff") | None => Engine::Diff,
        Some(other) => return Err(format!("unknown engine {other}").into()),
    });
    let v_raw = cfg.pick(args.v.clone(), "v", "1".to_string())?;
    let v = parse_exponent(&v_raw)?;
    let n_order =
        cfg.pick(args.n_order, "n-order", params.s.floor() as u32 + 1)?;
    let n = cfg.pick(args.n, "n", 128)?;
    let seed = cfg.pick(args.seed, "seed", 0)?;
    let complexity = cfg.pick(args.complexity, "complexity", 4)?;
    let pad = cfg.pick(args.pad, "pad", 2.0)?;
    let box_lo = cfg.pick(args.box_lo, "box-lo", -1.0)?;
    let box_hi = cfg.pick(args.box_hi, "box-hi", 1.0)?;
    let fn_name = cfg.pick(args.function.clone(), "fn", "bump".to_string())?;

    let domain = GridBox::new(vec![box_lo; params.d], vec![box_hi; params.d])?;
    let f = make_function(&fn_name, params.d, &domain, seed, complexity)?;
    let g = sample(&*f, &domain, &vec![n; params.d])?;

    let (space_name, result): (&str, NormResult) = match (space, engine) {
        (Space::Morrey, _) => ("morrey", morrey_norm(&g, params.p, params.u, &spec)?),
        (Space::Besov, Engine::Diff) => {
            ("besov", besov_morrey_norm(&g, &params, v, n_order, &spec)?)
        }
        (Space::Tlm, Engine::Diff) => ("tlm", tlm_norm(&g, &params, v, n_order, &spec)?),
        (Space::Besov, Engine::Spectral) | (Space::Tlm, Engine::Spectral) => {
            let fg = FreqGrid::for_grid(&g, pad)?;
            let part = build_partition(max_bands(&fg), &fg)?;
            match space {
                Space::Besov => ("besov-spectral", besov_morrey_norm_lp(&g, &params, &part, &spec)?),
                _ => ("tlm-spectral", tlm_norm_lp(&g, &params, &part, &spec)?),
            }
        }
    };
    finite(result.total, "norm")?;

    let mut csv = Csv::new(
        "norm",
        &format!(
            "space={space_name} s={} p={} u={} q={} d={} v={v} n-order={n_order} fn={fn_name} \
             seed={seed} complexity={complexity} n={n} box=[{box_lo},{box_hi}] pad={pad} \
             t-min={} t-max={} t-count={} h-per-axis={} j-min={} j-max={}",
            params.s,
            params.p,
            params.u,
            params.q,
            params.d,
            spec.t_min,
            spec.t_max,
            spec.t_count,
            spec.h_per_axis,
            spec.sup_levels.0,
            spec.sup_levels.1
        ),
    );
    csv.header(&["total", "morrey_part", "difference_part"]);
    csv.row(&[fmt_f(result.total), fmt_f(result.morrey_part), fmt_f(result.difference_part)]);
    csv.emit(out)?;
    Ok(())
}

fn run_sweep(args: &SweepArgs, cfg: &Config, out: Option<&str>) -> Result<(), Failure> {
    let op_raw = cfg.pick(args.op.clone(), "op", "T".to_string())?;
    let op = match op_raw.as_str() {
        "T+" | "plus" => TruncOp::Plus,
        "T" | "abs" => TruncOp::Abs,
        other => return Err(format!("unknown operator {other}; expected T+ | T").into()),
    };
    let space = match args.space.unwrap_or(Space::Besov) {
        Space::Besov => SpaceKind::Besov,
        Space::Tlm => SpaceKind::Tlm,
        Space::Morrey => return Err("sweep needs --space besov or tlm".to_string().into()),
    };
    let s_grid_raw = cfg.pick(args.s_grid.clone(), "s-grid", "0.3:0.9:0.3".to_string())?;
    let s_values = parse_grid(&s_grid_raw)?;
    let p = cfg.pick(args.sp.p, "p", 1.0)?;
    let u = cfg.pick(args.sp.u, "u", 2.0)?;
    let q_raw = cfg.pick(args.sp.q.clone(), "q", "2".to_string())?;
    let q = parse_exponent(&q_raw)?;
    let d = cfg.pick(args.sp.d, "d", 1)?;
    let v_raw = cfg.pick(args.v.clone(), "v", "1".to_string())?;
    let v = parse_exponent(&v_raw)?;
    let n_list_raw = cfg.pick(args.n_list.clone(), "n-list", "32,64".to_string())?;
    let n_list: Vec<usize> = parse_list(&n_list_raw)?;
    let fn_count = cfg.pick(args.fn_count, "fn-count", 5)?;
    let seed = cfg.pick(args.seed, "seed", 0)?;
    let complexity = cfg.pick(args.complexity, "complexity", 4)?;
    let spec = resolve_quad(&args.quad, cfg)?;

    let domain = GridBox::new(vec![-1.0; d], vec![1.0; d])?;
    let family: Vec<Callback> =
        (0..fn_count as u64).map(|k| random_smooth(seed + k, d, &domain, complexity)).collect();

    let mut csv = Csv::new(
        "sweep",
        &format!(
            "op={op_raw} space={} s-grid={s_grid_raw} p={p} u={u} q={q} d={d} v={v} \
             n-list={n_list_raw} fn-count={fn_count} seed={seed} complexity={complexity} \
             t-min={} t-max={} t-count={} h-per-axis={} j-min={} j-max={}",
            if space == SpaceKind::Besov { "besov" } else { "tlm" },
            spec.t_min,
            spec.t_max,
            spec.t_count,
            spec.h_per_axis,
            spec.sup_levels.0,
            spec.sup_levels.1
        ),
    );
    csv.header(&["s", "border", "fn_index", "n", "norm_f", "norm_tf", "ratio", "stable"]);
    for &s in &s_values {
        let params = SpaceParams::new(s, p, u, q, d)?;
        let n_order = s.floor() as u32 + 1;
        let report =
            truncation_ratio_sweep(&family, &domain, &params, op, space, v, n_order, &n_list, &spec)?;
        let border = critical_border(&params);
        for row in &report.rows {
            finite(row.norm_f, "norm_f")?;
            finite(row.norm_tf, "norm_tf")?;
            csv.row(&[
                fmt_f(s),
                fmt_f(border),
                row.fn_index.to_string(),
                row.n.to_string(),
                fmt_f(row.norm_f),
                fmt_f(row.norm_tf),
                row.ratio.map(fmt_f).unwrap_or_default(),
                report.stable.to_string(),
            ]);
        }
    }
    csv.emit(out)?;
    Ok(())
}

fn run_border(args: &BorderArgs, cfg: &Config, out: Option<&str>) -> Result<(), Failure> {
    let s_list_raw = cfg.pick(args.s_list.clone(), "s-list", "1.2,1.5,1.75".to_string())?;
    let s_values: Vec<f64> = parse_list(&s_list_raw)?;
    let p = cfg.pick(args.sp.p, "p", 1.0)?;
    let u = cfg.pick(args.sp.u, "u", 4.0)?;
    let d = cfg.pick(args.sp.d, "d", 2)?;
    let j_min = cfg.pick(args.j_min, "j-min", 2)?;
    let j_max = cfg.pick(args.j_max, "j-max", 8)?;

    let mut csv = Csv::new(
        "border",
        &format!("s-list={s_list_raw} p={p} u={u} d={d} j-min={j_min} j-max={j_max}"),
    );
    csv.header(&["s", "border", "outcome", "slope", "residual"]);
    for &s in &s_values {
        let params = SpaceParams::new(s, p, u, 2.0, d)?;
        let border = critical_border(&params);
        match divergence_probe(&params, (j_min, j_max))? {
            DivergenceOutcome::Slope { slope, residual, .. } => {
                finite(slope, "slope")?;
                csv.row(&[
                    fmt_f(s),
                    fmt_f(border),
                    "slope".to_string(),
                    fmt_f(slope),
                    fmt_f(residual),
                ]);
            }
            DivergenceOutcome::DivergentIntegral => {
                csv.row(&[
                    fmt_f(s),
                    fmt_f(border),
                    "divergent-integral".to_string(),
                    String::new(),
                    String::new(),
                ]);
            }
        }
    }
    csv.emit(out)?;
    Ok(())
}

fn run_fubini(args: &FubiniArgs, cfg: &Config, out: Option<&str>) -> Result<(), Failure> {
    let d = cfg.pick(args.sp.d, "d", 2)?;
    let p = cfg.pick(args.sp.p, "p", 1.0)?;
    let u = cfg.pick(args.sp.u, "u", 2.0)?;
    let s = cfg.pick(args.sp.s, "s", 0.5)?;
    let q_raw = cfg.pick(args.sp.q.clone(), "q", "2".to_string())?;
    let q = parse_exponent(&q_raw)?;
    let t_min = cfg.pick(args.t_min, "t-min", 1.0)?;
    let t_max = cfg.pick(args.t_max, "t-max", 64.0)?;
    let t_count = cfg.pick(args.t_count, "t-count", 13)?;
    let scales_raw = cfg.pick(args.scales.clone(), "scales", "8,16".to_string())?;
    let scales: Vec<f64> = parse_list(&scales_raw)?;

    let report = fubini_comparison(d, p, u, s, q, (t_min, t_max), t_count, &scales)?;
    finite(report.fubini_slope, "iterated slope")?;

    let mut csv = Csv::new(
        "fubini",
        &format!(
            "d={d} p={p} u={u} s={s} q={q} t-min={t_min} t-max={t_max} t-count={t_count} \
             scales={scales_raw}"
        ),
    );
    csv.comment(&format!("iterated slope: {}", fmt_f(report.fubini_slope)));
    csv.comment(&format!("direct relative change: {}", fmt_f(report.direct_rel_change)));
    csv.header(&["kind", "x", "value"]);
    for &(t, v) in &report.fubini_points {
        finite(v, "iterated value")?;
        csv.row(&["iterated".to_string(), fmt_f(t), fmt_f(v)]);
    }
    for &(scale, v) in &report.direct_values {
        finite(v, "direct value")?;
        csv.row(&["direct".to_string(), fmt_f(scale), fmt_f(v)]);
    }
    csv.emit(out)?;
    Ok(())
}

fn run_hardy(args: &HardyArgs, cfg: &Config, out: Option<&str>) -> Result<(), Failure> {
    let p = cfg.pick(args.sp.p, "p", 1.0)?;
    let u = cfg.pick(args.sp.u, "u", 2.0)?;
    let q_raw = cfg.pick(args.sp.q.clone(), "q", "2".to_string())?;
    let q = parse_exponent(&q_raw)?;
    let s = cfg.pick(args.sp.s, "s", 0.3)?;
    let n = cfg.pick(args.n, "n", 512)?;
    let fn_count = cfg.pick(args.fn_count, "fn-count", 10)?;
    let interval_raw = cfg.pick(args.interval.clone(), "interval", "0:1".to_string())?;
    let interval = if let Some(cutoff) = interval_raw.strip_prefix("halfline:") {
        HardyInterval::HalfLine {
            cutoff: cutoff.parse().map_err(|e| format!("bad cutoff: {e}"))?,
        }
    } else {
        let (a, b) = interval_raw
            .split_once(':')
            .ok_or_else(|| "expected a:b or halfline:cutoff".to_string())?;
        HardyInterval::Bounded(
            a.parse().map_err(|e| format!("bad interval start: {e}"))?,
            b.parse().map_err(|e| format!("bad interval stop: {e}"))?,
        )
    };
    let mut spec = resolve_quad(&args.quad, cfg)?;
    if args.quad.t_min.is_none() && cfg.get::<f64>("t-min")?.is_none() {
        spec.t_min = 1e-3;
    }
    if args.quad.j_max.is_none() && cfg.get::<i32>("j-max")?.is_none() {
        spec.sup_levels = (spec.sup_levels.0.max(-1), 8);
    }

    let family = zero_mean_bump_family(fn_count);
    let report = hardy_check(&family, interval, p, u, q, s, n, &spec)?;

    let mut csv = Csv::new(
        "hardy",
        &format!(
            "interval={interval_raw} p={p} u={u} q={q} s={s} n={n} fn-count={fn_count} \
             t-min={} t-max={} t-count={} h-per-axis={} j-min={} j-max={}",
            spec.t_min,
            spec.t_max,
            spec.t_count,
            spec.h_per_axis,
            spec.sup_levels.0,
            spec.sup_levels.1
        ),
    );
    csv.comment(&format!("max ratio: {}", fmt_f(report.max_ratio)));
    csv.header(&["fn_index", "lhs", "rhs", "ratio"]);
    for row in &report.rows {
        finite(row.lhs, "lhs")?;
        finite(row.rhs, "rhs")?;
        csv.row(&[
            row.fn_index.to_string(),
            fmt_f(row.lhs),
            fmt_f(row.rhs),
            row.ratio.map(fmt_f).unwrap_or_default(),
        ]);
    }
    csv.emit(out)?;
    Ok(())
}

fn run_sawtooth(args: &SawtoothArgs, cfg: &Config, out: Option<&str>) -> Result<(), Failure> {
    let p = cfg.pick(args.p, "p", 1.0)?;
    let u = cfg.pick(args.u, "u", 2.0)?;
    let j_list_raw = cfg.pick(args.j_list.clone(), "j-list", "0,4,8,12".to_string())?;
    let j_list: Vec<u32> = parse_list(&j_list_raw)?;
    let t_min = cfg.pick(args.t_min, "t-min", 1.0 / 2048.0)?;
    let t_max = cfg.pick(args.t_max, "t-max", 0.25)?;
    let t_count = cfg.pick(args.t_count, "t-count", 24)?;

    let report = sawtooth_probe(p, u, &j_list, (t_min, t_max), t_count)?;

    let mut csv = Csv::new(
        "sawtooth",
        &format!("p={p} u={u} j-list={j_list_raw} t-min={t_min} t-max={t_max} t-count={t_count}"),
    );
    if args.points {
        csv.header(&["j_terms", "t", "q_value"]);
        for &(j, t, qv) in &report.points {
            finite(qv, "Q(t)")?;
            csv.row(&[j.to_string(), fmt_f(t), fmt_f(qv)]);
        }
    } else {
        csv.header(&["j_terms", "c1", "c2", "residual"]);
        for row in &report.rows {
            finite(row.c1, "c1")?;
            csv.row(&[
                row.j_terms.to_string(),
                fmt_f(row.c1),
                fmt_f(row.c2),
                fmt_f(row.residual),
            ]);
        }
    }
    csv.emit(out)?;
    Ok(())
}

#[allow(clippy::type_complexity)]
fn run_zeroset(args: &ZerosetArgs, cfg: &Config, out: Option<&str>) -> Result<(), Failure> {
    let fn_name = cfg.pick(args.function.clone(), "fn", "line".to_string())?;
    let k = cfg.pick(args.k, "k", 0)?;
    let r_raw = cfg.pick(args.r.clone(), "r", "4:9".to_string())?;
    let r_range = parse_range_i32(&r_raw)?;

    let (domain, f): (GridBox, Box<dyn Fn(&[f64]) -> f64 + Sync>) = match fn_name.as_str() {
        "line" => (
            GridBox::new(vec![0.0; 2], vec![1.0; 2])?,
            Box::new(|x: &[f64]| x[0] - 0.3),
        ),
        "circle" => (
            GridBox::new(vec![-1.0; 2], vec![1.0; 2])?,
            Box::new(|x: &[f64]| x[0] * x[0] + x[1] * x[1] - 0.5625),
        ),
        "triple" => (
            GridBox::new(vec![0.0; 2], vec![1.0; 2])?,
            Box::new(|x: &[f64]| (x[0] - 0.3) * (x[1] - 0.45) * (x[0] + x[1] - 0.8)),
        ),
        other => return Err(format!("unknown zero set {other}; expected line | circle | triple").into()),
    };

    let mut csv = Csv::new("zeroset", &format!("fn={fn_name} k={k} r={r_raw}"));
    match cover_scaling(f.as_ref(), &domain, k, r_range)? {
        CoverOutcome::NoZeros => {
            csv.comment("result: NO_ZEROS");
            csv.header(&["r", "count", "ratio"]);
        }
        CoverOutcome::Law { exponent, prefactor, rows } => {
            finite(exponent, "exponent")?;
            csv.comment(&format!("exponent: {}", fmt_f(exponent)));
            csv.comment(&format!("prefactor: {}", fmt_f(prefactor)));
            csv.header(&["r", "count", "ratio"]);
            for row in &rows {
                csv.row(&[row.r.to_string(), row.count.to_string(), fmt_f(row.ratio)]);
            }
        }
    }
    csv.emit(out)?;
    Ok(())
}

fn real_main() -> Result<(), Failure> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are successes; everything else is a
            // usage error (exit 1).
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| format!("thread pool: {e}"))?;
    }
    let cfg = Config::load(cli.config.as_deref())?;
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Norm(args) => run_norm(args, &cfg, out),
        Command::Sweep(args) => run_sweep(args, &cfg, out),
        Command::Border(args) => run_border(args, &cfg, out),
        Command::Fubini(args) => run_fubini(args, &cfg, out),
        Command::Hardy(args) => run_hardy(args, &cfg, out),
        Command::Sawtooth(args) => run_sawtooth(args, &cfg, out),
        Command::Zeroset(args) => run_zeroset(args, &cfg, out),
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Parameter(msg)) => {
            eprintln!("parameter error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("numerical failure: {msg}");
            ExitCode::from(2)
        }
    }
}
