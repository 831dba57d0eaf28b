//! Command implementations behind the `biwave` binary. Each command returns
//! its report as a string so it can be tested without spawning a process.

pub mod config;
pub mod csv_io;
pub mod selftest;

use std::fmt::Write as _;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::algebra::{idempotents, trace_form_det, AlgebraParams, Constants, Element};
use crate::error::Error;
use crate::grid::ScalarGrid;
use crate::pde::{
    biwave_residual_fd, characteristic_roots, fd_noise_floor, wave_factorization_residual, FactorOrder,
    MIN_BIWAVE_POINTS, MIN_FACTORED_POINTS,
};
use crate::synthesis::ScalarField;

pub use config::{RunConfig, VerifyOptions};
pub use selftest::{cmd_selftest, Fault, SelftestReport};

/// A level whose raw residual is within this factor of the stencil rounding
/// noise is treated as solved to rounding error; orders are meaningless there.
pub const NOISE_FACTOR: f64 = 10.0;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: config, parameter, or grid. Exit code 2.
    #[error("{0}")]
    Invalid(String),
    /// I/O failure on output. Exit code 1.
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}

fn fmt_c(z: num_complex::Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.10}", z.re)
    } else {
        format!("{:.10} {} {:.10}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs())
    }
}

fn fmt_element(e: &Element) -> String {
    match e {
        Element::Hyperbolic(h) => {
            let mut s = format!("{:.10} u", h.cu);
            for (v, name) in [(h.cf, "f"), (h.ce, "e"), (h.cfe, "fe")] {
                let sign = if v.is_sign_negative() { '-' } else { '+' };
                let _ = write!(s, " {sign} {:.10} {name}", v.abs());
            }
            s
        }
        Element::Elliptic(x) => format!("({}) u + ({}) e", fmt_c(x.cu), fmt_c(x.ce)),
    }
}

/// Parameters, idempotents and characteristic roots for `c`.
pub fn cmd_info(c: f64) -> Result<String, CliError> {
    let p = AlgebraParams::new(c)?;
    let mut out = String::new();
    let _ = writeln!(out, "c = {c}");
    let _ = writeln!(out, "regime: {}", p.regime());
    match p.constants() {
        Constants::Hyperbolic(h) => {
            let _ = writeln!(out, "m = {:.10}", h.m);
        }
        Constants::Elliptic(e) => {
            let _ = writeln!(out, "mu = {:.10}", e.mu);
        }
    }
    let _ = writeln!(out, "k1 = {}", fmt_c(p.k1()));
    let _ = writeln!(out, "k2 = {}", fmt_c(p.k2()));
    let (a, b) = idempotents(&p);
    let (na, nb) = match p.regime() {
        crate::algebra::Regime::Hyperbolic => ("i1", "i2"),
        crate::algebra::Regime::Elliptic => ("I-", "I+"),
    };
    let _ = writeln!(out, "{na} = {}", fmt_element(&a));
    let _ = writeln!(out, "{nb} = {}", fmt_element(&b));
    let roots: Vec<String> = characteristic_roots(&p).iter().map(|r| fmt_c(*r)).collect();
    let _ = writeln!(out, "characteristic roots: {}", roots.join(", "));
    if let Ok(d) = trace_form_det(&p) {
        let _ = writeln!(out, "trace-form determinant = {}", fmt_c(d));
    }
    Ok(out)
}

fn synthesize(cfg: &RunConfig, level: u32) -> Result<ScalarGrid, CliError> {
    let field = cfg.solution.synthesize(cfg.c)?;
    Ok(field.sample(&cfg.grid.refined(level)))
}

/// Samples the configured solution and writes it as CSV.
pub fn cmd_synth(cfg: &RunConfig, output: &Path) -> Result<String, CliError> {
    let grid = synthesize(cfg, 0)?;
    let io = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", output.display()));
    let file = File::create(output).map_err(io)?;
    csv_io::write_grid(&grid, BufWriter::new(file)).map_err(io)?;
    let (lo, hi) = grid.min_max();
    Ok(format!(
        "wrote {} ({} x {} points, {} rows)\nc = {} ({} solution)\nmin u = {:.10e}\nmax u = {:.10e}\n",
        output.display(),
        grid.nx,
        grid.ny,
        grid.nx * grid.ny,
        cfg.c,
        cfg.solution.regime(),
        lo + 0.0,
        hi + 0.0
    ))
}

/// Where `verify` takes its field from, plus overrides.
#[derive(Clone, Debug, Default)]
pub struct VerifyArgs {
    pub config: Option<RunConfig>,
    pub input: Option<PathBuf>,
    pub c: Option<f64>,
    pub tolerance: Option<f64>,
    pub refine: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub passed: bool,
    pub max_raw: f64,
    pub max_scaled: f64,
    /// Observed orders between successive levels, coarse to fine.
    pub orders: Vec<f64>,
    pub text: String,
}

impl VerifyReport {
    pub fn exit_code(&self) -> u8 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Finite-difference check of the biwave equation on a grid, with an
/// optional convergence-order check over `refine` levels.
pub fn cmd_verify(args: &VerifyArgs) -> Result<VerifyReport, CliError> {
    let c = args
        .c
        .or(args.config.as_ref().map(|k| k.c))
        .ok_or_else(|| CliError::Invalid("verify needs --c when no config is given".into()))?;
    let p = AlgebraParams::new(c)?;
    let opts = args.config.as_ref().map(|k| k.verify).unwrap_or_default();
    let tolerance = args.tolerance.unwrap_or(opts.tolerance);
    if !(tolerance > 0.0) {
        return Err(CliError::Invalid(format!("tolerance must be positive, got {tolerance}")));
    }
    let levels = args.refine.unwrap_or(opts.refine).max(1);

    // grids[0] is the one judged; later entries are coarser (CSV) or finer (config).
    let mut grids = Vec::new();
    let mut source = String::new();
    match (&args.input, &args.config) {
        (Some(path), _) => {
            let file = File::open(path)
                .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
            let g = csv_io::read_grid(std::io::BufReader::new(file))?;
            g.require(MIN_BIWAVE_POINTS)?;
            grids.push(g);
            for _ in 1..levels {
                let next = grids.last().expect("non-empty").coarsened()?;
                next.require(MIN_BIWAVE_POINTS)?;
                grids.push(next);
            }
            source = format!("input {}", path.display());
        }
        (None, Some(cfg)) => {
            for l in 0..levels {
                grids.push(synthesize(cfg, l)?);
            }
            let _ = write!(source, "synthesized {} solution", cfg.solution.regime());
        }
        (None, None) => {
            return Err(CliError::Invalid("verify needs --config or --input".into()));
        }
    }

    let mut out = String::new();
    let g0 = &grids[0];
    let _ = writeln!(out, "source: {source}");
    let _ = writeln!(out, "c = {c} ({})", p.regime());
    let _ = writeln!(
        out,
        "grid: {} x {} on [{}, {}] x [{}, {}], hx = {:.6e}, hy = {:.6e}",
        g0.nx,
        g0.ny,
        g0.x0,
        g0.x(g0.nx - 1),
        g0.y0,
        g0.y(g0.ny - 1),
        g0.hx,
        g0.hy
    );
    let residuals = grids
        .iter()
        .map(|g| biwave_residual_fd(g, c))
        .collect::<Result<Vec<_>, _>>()?;
    let r0 = &residuals[0];
    let within = r0.max_scaled() <= tolerance;
    let _ = writeln!(
        out,
        "biwave residual: max |R| = {:.6e}, scale = {:.6e}, scaled = {:.6e} (tolerance {:.1e}) {}",
        r0.max_raw(),
        r0.scale,
        r0.max_scaled(),
        tolerance,
        if within { "ok" } else { "exceeded" }
    );

    if p.regime() == crate::algebra::Regime::Hyperbolic
        && g0.nx >= MIN_FACTORED_POINTS
        && g0.ny >= MIN_FACTORED_POINTS
    {
        for (name, order) in [
            ("Y2 Y1", FactorOrder::FirstThenSecond),
            ("Y1 Y2", FactorOrder::SecondThenFirst),
        ] {
            let f = wave_factorization_residual(g0, c, order)?;
            let _ = writeln!(
                out,
                "factored residual ({name}): scaled = {:.6e}, difference from direct = {:.3e}",
                f.factored.max_abs() / r0.scale.max(f64::MIN_POSITIVE),
                f.difference.max_abs() / r0.scale.max(f64::MIN_POSITIVE)
            );
        }
    }

    // Orders from coarse to fine.
    // (h, max |R|, rounding noise)
    let mut by_h: Vec<(f64, f64, f64)> = grids
        .iter()
        .zip(&residuals)
        .map(|(g, r)| (g.hx, r.max_raw(), fd_noise_floor(g, c)))
        .collect();
    by_h.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut orders = Vec::new();
    let mut orders_ok = true;
    if by_h.len() > 1 {
        for w in by_h.windows(2) {
            let _ = writeln!(out, "h = {:.6e}: max |R| = {:.6e}", w[0].0, w[0].1);
            orders.push((w[0].1 / w[1].1).log2() / (w[0].0 / w[1].0).log2());
        }
        let last = by_h.last().expect("non-empty");
        let _ = writeln!(out, "h = {:.6e}: max |R| = {:.6e}", last.0, last.1);
        let rounding = by_h.iter().all(|l| l.1 <= NOISE_FACTOR * l.2);
        let list: Vec<String> = orders.iter().map(|o| format!("{o:.3}")).collect();
        if rounding {
            let _ = writeln!(
                out,
                "observed orders: {} (skipped: residual at rounding level)",
                list.join(", ")
            );
        } else {
            orders_ok = orders.iter().all(|o| (opts.order_min..=opts.order_max).contains(o));
            let _ = writeln!(
                out,
                "observed orders: {} (expected in [{}, {}]) {}",
                list.join(", "),
                opts.order_min,
                opts.order_max,
                if orders_ok { "ok" } else { "out of range" }
            );
        }
    }

    let passed = within && orders_ok;
    let _ = writeln!(out, "result: {}", if passed { "PASS" } else { "FAIL" });
    Ok(VerifyReport {
        passed,
        max_raw: r0.max_raw(),
        max_scaled: r0.max_scaled(),
        orders,
        text: out,
    })
}
