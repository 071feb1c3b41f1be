//! Command-line front end. Every subcommand writes fixed file names into `--out`.
//!
//! | command   | files                        |
//! |-----------|------------------------------|
//! | `coeffs`  | `coeffs.csv`                 |
//! | `zeros`   | `zeros.csv`                  |
//! | `density` | `density.csv`, `measure.json`|
//! | `compare` | `compare.csv`, `compare.svg` |
//! | `energy`  | `energy.csv`                 |
//! | `figure`  | `figure<id>.svg`             |

pub mod svg;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::energy::{convergence_sweep, reports_to_csv};
use crate::equilibrium::{solve_endpoints, EquilibriumMeasure};
use crate::error::{Error, Result};
use crate::format::{sig17, write_atomic};
use crate::recurrence::build_table;
use crate::weights::{QuadratureScheme, SupportKind, WeightSpec};
use crate::zeros::{compute_zeros, ks_distance};
use svg::{Plot, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_IO: i32 = 1;

/// Largest degree accepted on the command line; the tables cost `O(n²)` memory.
pub const MAX_DEGREE: usize = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "hermite-eq",
    version,
    about = "Truncated generalized Hermite polynomials and their equilibrium measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SupportArg {
    /// `[a, ∞)`
    Half,
    /// `(−∞, −a] ∪ [a, ∞)`
    Sym,
}

impl SupportArg {
    fn kind(self, a: f64) -> SupportKind {
        match self {
            SupportArg::Half => SupportKind::half_line(a),
            SupportArg::Sym => SupportKind::symmetric(a),
        }
    }
}

#[derive(Debug, Args)]
pub struct Output {
    /// Output directory.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = SupportArg::Half)]
    pub support: SupportArg,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = SupportArg::Half)]
    pub support: SupportArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recurrence coefficients and boundary masses.
    Coeffs {
        #[command(flatten)]
        weight: WeightArgs,
        /// Table depth.
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Zeros of H_n and their rescaled values.
    Zeros {
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Equilibrium density on a grid and the measure summary.
    Density {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[command(flatten)]
        output: Output,
    },
    /// KS distance between rescaled zeros and the equilibrium measure.
    Compare {
        #[command(flatten)]
        field: FieldArgs,
        /// Degrees, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Energy at the zeros against the equilibrium energy.
    Energy {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Density plots of the reference configurations.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        id: u8,
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[command(flatten)]
        output: Output,
    },
}

/// Parses `args` (including the program name) and runs; returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
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
    if let Err(msg) = validate(&cli.command) {
        eprintln!("error: {msg}\n\nFor more information, try '--help'.");
        return EXIT_USAGE;
    }
    match run(&cli.command) {
        Ok(paths) => {
            for p in paths {
                println!("wrote {}", p.display());
            }
            EXIT_OK
        }
        Err(Error::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_NUMERIC
        }
    }
}

/// Flag consistency checks that need no computation.
pub fn validate(cmd: &Command) -> std::result::Result<(), String> {
    let check_weight = |w: &WeightArgs| {
        WeightSpec::new(w.lambda, w.support.kind(w.a))
            .map(|_| ())
            .map_err(|e| e.to_string())
    };
    let check_field = |f: &FieldArgs| {
        if !(f.alpha >= 0.0 && f.alpha.is_finite()) {
            return Err(format!("--alpha must be >= 0, got {}", f.alpha));
        }
        if !f.a.is_finite() {
            return Err("--a must be finite".into());
        }
        match f.support {
            SupportArg::Sym if f.a < 0.0 => Err(format!("--a must be >= 0 for --support sym, got {}", f.a)),
            SupportArg::Half if f.a < 0.0 && f.alpha > 0.0 => {
                Err(format!("--a < 0 requires --alpha 0, got alpha = {}", f.alpha))
            }
            _ => Ok(()),
        }
    };
    let check_list = |n: &[usize]| {
        if n.is_empty() || n[0] == 0 || n.windows(2).any(|w| w[1] <= w[0]) {
            Err("--n must be a strictly increasing list of positive integers".to_string())
        } else if n[n.len() - 1] > MAX_DEGREE {
            Err(format!("--n must not exceed {MAX_DEGREE}"))
        } else {
            Ok(())
        }
    };
    match cmd {
        Command::Coeffs { weight, n, .. } | Command::Zeros { weight, n, .. } => {
            check_weight(weight)?;
            if *n == 0 || *n > MAX_DEGREE {
                return Err(format!("--n must be in 1..={MAX_DEGREE}"));
            }
            Ok(())
        }
        Command::Density { field, grid, .. } => {
            check_field(field)?;
            if *grid == 0 {
                return Err("--grid must be at least 1".into());
            }
            Ok(())
        }
        Command::Compare { field, n, grid, .. } => {
            check_field(field)?;
            check_list(n)?;
            if *grid == 0 {
                return Err("--grid must be at least 1".into());
            }
            Ok(())
        }
        Command::Energy { field, n, .. } => {
            check_field(field)?;
            check_list(n)
        }
        Command::Figure { grid, .. } => {
            if *grid < 2 {
                return Err("--grid must be at least 2".into());
            }
            Ok(())
        }
    }
}

/// Runs a validated command; returns the paths written.
pub fn run(cmd: &Command) -> Result<Vec<PathBuf>> {
    let scheme = QuadratureScheme::default();
    match cmd {
        Command::Coeffs { weight, n, output } => {
            let spec = WeightSpec::new(weight.lambda, weight.support.kind(weight.a))?;
            let table = build_table(spec, *n, &scheme)?;
            Ok(vec![emit(&output.out, "coeffs.csv", &table.to_csv())?])
        }
        Command::Zeros { weight, n, output } => {
            let spec = WeightSpec::new(weight.lambda, weight.support.kind(weight.a))?;
            let table = build_table(spec, *n, &scheme)?;
            let zs = compute_zeros(&table, *n)?;
            Ok(vec![emit(&output.out, "zeros.csv", &zs.to_csv())?])
        }
        Command::Density { field, grid, output } => {
            let m = solve_endpoints(field.alpha, field.a, field.support.kind(field.a))?;
            Ok(vec![
                emit(&output.out, "density.csv", &m.density_csv(*grid))?,
                emit(&output.out, "measure.json", &m.to_json()?)?,
            ])
        }
        Command::Compare { field, n, grid, output } => {
            let (csv, svg) = compare(field, n, *grid, &scheme)?;
            Ok(vec![
                emit(&output.out, "compare.csv", &csv)?,
                emit(&output.out, "compare.svg", &svg)?,
            ])
        }
        Command::Energy { field, n, output } => {
            let reports = convergence_sweep(field.support.kind(field.a), field.alpha, n, &scheme)?;
            Ok(vec![emit(&output.out, "energy.csv", &reports_to_csv(&reports))?])
        }
        Command::Figure { id, grid, output } => {
            let plot = figure(*id, *grid)?;
            Ok(vec![emit(&output.out, &format!("figure{id}.svg"), &plot.render())?])
        }
    }
}

fn emit(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    write_atomic(&path, contents.as_bytes())?;
    Ok(path)
}

/// Rescaled zeros for degree `n` with `λ_n = round(α n)` and truncation `√n a`.
pub fn rescaled_zeros(support: SupportKind, alpha: f64, n: usize, scheme: &QuadratureScheme) -> Result<Vec<f64>> {
    let nf = n as f64;
    let spec = WeightSpec::new(
        (alpha * nf).round(),
        support.with_truncation(support.truncation() * nf.sqrt()),
    )?;
    let table = build_table(spec, n, scheme)?;
    Ok(compute_zeros(&table, n)?.rescaled())
}

fn compare(field: &FieldArgs, ns: &[usize], grid: usize, scheme: &QuadratureScheme) -> Result<(String, String)> {
    let kind = field.support.kind(field.a);
    let m = solve_endpoints(field.alpha, field.a, kind)?;
    let rows: Vec<(usize, f64, Vec<f64>)> = ns
        .par_iter()
        .map(|&n| {
            let z = rescaled_zeros(kind, field.alpha, n, scheme)?;
            let ks = ks_distance(&crate::zeros::EmpiricalCdf::new(z.clone()), |x| m.cdf(x));
            Ok((n, ks, z))
        })
        .collect::<Result<_>>()?;
    let mut csv = String::from("n,lambda_n,ks\n");
    for (n, ks, _) in &rows {
        let _ = writeln!(csv, "{n},{},{}", sig17((field.alpha * *n as f64).round()), sig17(*ks));
    }
    let (n, _, zeros) = rows.last().expect("n list is non-empty");
    let (lo, hi) = if m.support.is_symmetric() {
        (-m.b - 0.1, m.b + 0.1)
    } else {
        (m.sigma - 0.1, m.b + 0.1)
    };
    let bins = (*n as f64).sqrt().ceil() as usize;
    let hist = histogram(zeros, lo, hi, bins);
    // hard edges blow up; scale to the histogram instead
    let top = hist.iter().fold(0.0f64, |m, p| m.max(p.1));
    let plot = Plot {
        title: format!("rescaled zeros, n = {n}, {} ({})", m.case, m.support.label()),
        x_label: "x".into(),
        y_label: "density".into(),
        x_range: Some((lo, hi)),
        y_range: Some((0.0, 1.5 * top)),
        series: vec![
            Series::new(format!("zeros, n={n}"), hist),
            density_series(&m, "equilibrium density", grid),
        ],
    };
    Ok((csv, plot.render()))
}

/// Step outline of a normalized histogram with `bins` equal bins on `[lo, hi]`.
pub fn histogram(points: &[f64], lo: f64, hi: f64, bins: usize) -> Vec<(f64, f64)> {
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &p in points {
        if p >= lo && p <= hi {
            let k = (((p - lo) / width) as usize).min(bins - 1);
            counts[k] += 1;
        }
    }
    let scale = 1.0 / (points.len() as f64 * width);
    let mut out = vec![(lo, 0.0)];
    for (k, c) in counts.iter().enumerate() {
        let h = *c as f64 * scale;
        let x0 = lo + k as f64 * width;
        out.push((x0, h));
        out.push((x0 + width, h));
    }
    out.push((hi, 0.0));
    out
}

/// The density sampled densely near the edges, one segment per support interval.
pub fn density_series(m: &EquilibriumMeasure, label: &str, grid: usize) -> Series {
    let grid = grid.max(2);
    let l = m.b - m.sigma;
    let positive: Vec<(f64, f64)> = (0..=grid)
        .map(|i| m.sigma + 0.5 * l * (1.0 - (std::f64::consts::PI * i as f64 / grid as f64).cos()))
        .filter_map(|x| m.density(x).ok().filter(|f| f.is_finite()).map(|f| (x, f)))
        .collect();
    let mut segments = Vec::new();
    if m.support.is_symmetric() {
        segments.push(positive.iter().rev().map(|&(x, f)| (-x, f)).collect());
    }
    segments.push(positive);
    Series {
        label: label.into(),
        segments,
    }
}

/// The five reference density plots.
pub fn figure(id: u8, grid: usize) -> Result<Plot> {
    let half = SupportKind::half_line;
    let sym = SupportKind::symmetric;
    let r2 = std::f64::consts::SQRT_2;
    let (title, cases): (&str, Vec<(String, f64, SupportKind)>) = match id {
        1 => (
            "alpha = 0, half line",
            vec![
                ("a=1".into(), 0.0, half(1.0)),
                ("a=0".into(), 0.0, half(0.0)),
                ("a=-1".into(), 0.0, half(-1.0)),
                ("a=-sqrt2".into(), 0.0, half(-r2)),
            ],
        ),
        2 => (
            "alpha = 2, half line",
            vec![("a=1".into(), 2.0, half(1.0)), ("a=a_c".into(), 2.0, half(0.0))],
        ),
        3 => ("alpha = 2, symmetric, a <= a_c", vec![("a=a_c".into(), 2.0, sym(0.0))]),
        4 => ("alpha = 2, symmetric, a = 1", vec![("a=1".into(), 2.0, sym(1.0))]),
        5 => (
            "alpha = 0, symmetric",
            vec![("a=0".into(), 0.0, sym(0.0)), ("a=0.25".into(), 0.0, sym(0.25))],
        ),
        _ => return Err(Error::Domain(format!("figure id must be 1..=5, got {id}"))),
    };
    let mut series = Vec::new();
    let mut x_lo = f64::INFINITY;
    let mut x_hi = f64::NEG_INFINITY;
    for (label, alpha, kind) in cases {
        let m = solve_endpoints(alpha, kind.truncation(), kind)?;
        let lo = if m.support.is_symmetric() { -m.b } else { m.sigma };
        x_lo = x_lo.min(lo);
        x_hi = x_hi.max(m.b);
        let label = format!("{label}, sigma={:.3}, b={:.3}", m.sigma, m.b);
        series.push(density_series(&m, &label, grid));
    }
    let pad = 0.05 * (x_hi - x_lo);
    Ok(Plot {
        title: title.into(),
        x_label: "x".into(),
        y_label: "density".into(),
        x_range: Some((x_lo - pad, x_hi + pad)),
        // hard edges blow up; keep the bulk readable
        y_range: Some((0.0, 1.2)),
        series,
    })
}
