// negated range comparisons like `!(t > 0.0)` reject NaN along with
// out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! `frachaos`: evaluate the scaled parabolic cylinder functions, search for
//! orthogonal order pairs, run chaos expansions, simulate Wiener ensembles,
//! and execute the verification campaign.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use libm::sqrt;

use frachaos_cli::output::{self, Claim, ClaimKind, Meta};
use frachaos_cli::spline::{parse_xy_csv, CubicSpline};
use frachaos_cli::suites;
use frachaos_cli::timefmt;
use frachaos_cli::VERSION;

use frachaos_core::chaos;
use frachaos_core::ortho;
use frachaos_core::pncf::{self, PncfSpec};
use frachaos_core::quad::{QuadratureGrid, DEFAULT_NODES};
use frachaos_core::specfun::{self, SpecFunConfig};
use frachaos_core::stochproc;

#[derive(Parser)]
#[command(
    name = "frachaos",
    version,
    about = "Fractional Hermite function and Wiener chaos toolkit"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write records to this path instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Output format for records.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate H_alpha, U, D, or a scaled Hermite polynomial at a point.
    Eval {
        /// Which function: h (H_alpha(x,t)), u (U(a,z)), d (D_alpha(z)),
        /// hermite (H_n(x,t)).
        #[arg(long, default_value = "h")]
        function: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Find admissible orthogonal orders: roots of the conjugate-pair
    /// gamma condition in a range.
    Roots {
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Keep the trivial symmetric root alpha = 1/2.
        #[arg(long)]
        include_trivial: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Expand a function in a chaos basis and report the coefficients.
    Expand {
        /// Basis: polynomial or fractional.
        #[arg(long, default_value = "polynomial")]
        basis: String,
        /// Built-in function name (one|x|x2|x3|gauss|expneg) or csv:PATH for
        /// a tabulated function interpolated by a cubic spline.
        #[arg(long, default_value = "x2")]
        g: String,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Polynomial truncation degree.
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// Fractional pair order: expands in (alpha, 1 - alpha).
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Simulate a seeded Wiener ensemble and write the paths.
    Simulate {
        #[arg(long, default_value_t = 10)]
        n_paths: usize,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Seed (required: stochastic output must be reproducible).
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the verification campaign (all suites, or the named subset).
    Verify {
        /// Suites: appell, chaos, covariance, ito, martingale, ortho, pde,
        /// selfsim. Empty runs everything.
        suites: Vec<String>,
        /// Seed (required: stochastic suites must be reproducible).
        #[arg(long)]
        seed: u64,
        /// Override the order list of the martingale MC checks (validation:
        /// every alpha must be positive).
        #[arg(long, allow_hyphen_values = true)]
        alpha: Vec<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn usage_err<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn write_rows(out: &OutputArgs, meta: &Meta, rows: &mut [Claim]) -> Result<(), String> {
    output::sort_rows(rows);
    let emit = |w: &mut dyn Write| -> io::Result<()> {
        match out.format {
            Format::Csv => output::write_csv(w, meta, rows),
            Format::Json => output::write_json(w, meta, rows),
        }
    };
    match &out.out {
        Some(path) => {
            let f = File::create(path).map_err(|e| format!("cannot create {path}: {e}"))?;
            let mut w = BufWriter::new(f);
            emit(&mut w).map_err(|e| e.to_string())?;
            w.flush().map_err(|e| e.to_string())?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            emit(&mut w).map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

fn meta_for(command: &str, params: String, seed: Option<u64>) -> Meta {
    Meta {
        command: command.into(),
        params,
        version: VERSION.into(),
        seed,
        timestamp: timefmt::timestamp_utc(),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Eval {
            function,
            alpha,
            a,
            n,
            x,
            z,
            t,
            output,
        } => {
            let cfg = SpecFunConfig::default();
            let (value, params) = match function.as_str() {
                "h" => {
                    let alpha = alpha.ok_or("eval h requires --alpha")?;
                    let t = t.ok_or("eval h requires --t")?;
                    let x = x.ok_or("eval h requires --x")?;
                    let spec = PncfSpec::new(alpha, t).map_err(|e| e.to_string())?;
                    (
                        pncf::eval_h(&spec, x).map_err(|e| e.to_string())?,
                        format!("function=h;alpha={alpha};t={t};x={x}"),
                    )
                }
                "u" => {
                    let a = a.ok_or("eval u requires --a")?;
                    let z = z.ok_or("eval u requires --z")?;
                    (
                        specfun::pcf_u(a, z, &cfg).map_err(|e| e.to_string())?,
                        format!("function=u;a={a};z={z}"),
                    )
                }
                "d" => {
                    let alpha = alpha.ok_or("eval d requires --alpha")?;
                    let z = z.ok_or("eval d requires --z")?;
                    (
                        specfun::pcf_d(alpha, z, &cfg).map_err(|e| e.to_string())?,
                        format!("function=d;alpha={alpha};z={z}"),
                    )
                }
                "hermite" => {
                    let n = n.ok_or("eval hermite requires --n")?;
                    let t = t.ok_or("eval hermite requires --t")?;
                    let x = x.ok_or("eval hermite requires --x")?;
                    (
                        specfun::hermite(n, x, t),
                        format!("function=hermite;n={n};t={t};x={x}"),
                    )
                }
                other => return usage_err(format!("unknown function '{other}'")),
            };
            println!("{}", output::fmt17(value));
            if output.out.is_some() {
                let meta = meta_for("eval", params.clone(), None);
                let mut rows = vec![Claim::report("eval", function, params, value, value)];
                write_rows(&output, &meta, &mut rows)?;
            }
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Roots {
            lo,
            hi,
            step,
            tol,
            include_trivial,
            output,
        } => {
            if !(hi > lo) || !(step > 0.0) || !(tol > 0.0) {
                return usage_err("roots requires hi > lo, step > 0, tol > 0");
            }
            let roots = ortho::find_conjugate_roots(lo, hi, step, tol, !include_trivial);
            let params = format!("lo={lo};hi={hi};step={step};tol={tol}");
            let mut rows: Vec<Claim> = roots
                .iter()
                .map(|r| {
                    Claim::report(
                        "roots",
                        format!("root@{r:.12}"),
                        format!("{params};pair={:.12}", 1.0 - r),
                        *r,
                        0.0,
                    )
                })
                .collect();
            let meta = meta_for("roots", params, None);
            write_rows(&output, &meta, &mut rows)?;
            println!("found {} root(s) in ({lo}, {hi})", roots.len());
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Expand {
            basis,
            g,
            t,
            degree,
            alpha,
            output,
        } => {
            if !(t > 0.0) {
                return usage_err("expand requires t > 0");
            }
            let gfun = builtin_g(&g)?;
            let params = format!("basis={basis};g={g};t={t}");
            let mut rows = Vec::new();
            match basis.as_str() {
                "polynomial" => {
                    let grid = QuadratureGrid::full_line_gaussian(t, 2 * DEFAULT_NODES)
                        .map_err(|e| e.to_string())?;
                    let exp = chaos::expand_polynomial(&gfun, degree, t, &grid)
                        .map_err(|e| e.to_string())?;
                    for (k, c) in exp.coefficients.iter().enumerate() {
                        rows.push(Claim::report(
                            "expand",
                            format!("coefficient-{k:03}"),
                            format!("{params};degree={degree}"),
                            *c,
                            0.0,
                        ));
                    }
                    let res =
                        chaos::residual_norm(&gfun, &exp, &grid).map_err(|e| e.to_string())?;
                    rows.push(Claim::report(
                        "expand",
                        "residual-norm",
                        format!("{params};degree={degree}"),
                        res,
                        0.0,
                    ));
                }
                "fractional" => {
                    let alpha = alpha.ok_or("fractional basis requires --alpha")?;
                    let set = ortho::AlphaSet::conjugate_pair(alpha, t, 1e-8)
                        .map_err(|e| format!("order {alpha} is not admissible: {e}"))?;
                    let grid = QuadratureGrid::half_line_gaussian(t, DEFAULT_NODES)
                        .map_err(|e| e.to_string())?;
                    let exp = chaos::expand_fractional(&gfun, &set, t, &grid)
                        .map_err(|e| e.to_string())?;
                    for (c, &ak) in exp.coefficients.iter().zip(set.alphas()) {
                        rows.push(Claim::report(
                            "expand",
                            format!("coefficient-alpha{ak:.6}"),
                            params.clone(),
                            *c,
                            0.0,
                        ));
                    }
                    let res =
                        chaos::residual_norm(&gfun, &exp, &grid).map_err(|e| e.to_string())?;
                    rows.push(Claim::report(
                        "expand",
                        "residual-norm",
                        params.clone(),
                        res,
                        0.0,
                    ));
                }
                other => return usage_err(format!("unknown basis '{other}'")),
            }
            let n_rows = rows.len();
            let meta = meta_for("expand", params, None);
            write_rows(&output, &meta, &mut rows)?;
            println!("expansion written: {n_rows} record(s)");
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Simulate {
            n_paths,
            t_end,
            steps,
            seed,
            output,
        } => {
            if !(t_end > 0.0) || steps == 0 {
                return usage_err("simulate requires t_end > 0 and steps > 0");
            }
            let times = stochproc::uniform_times(t_end, steps);
            let ens =
                stochproc::simulate_wiener(n_paths, &times, seed).map_err(|e| e.to_string())?;
            let params = format!("n_paths={n_paths};t_end={t_end};steps={steps}");
            let mut rows = Vec::with_capacity(n_paths * (steps + 1));
            for (i, path) in ens.paths.iter().enumerate() {
                for (j, w) in path.iter().enumerate() {
                    rows.push(Claim::report(
                        "simulate",
                        format!("path-{i:06}-step-{j:06}"),
                        format!("time={}", output::fmt17(ens.times[j])),
                        *w,
                        0.0,
                    ));
                }
            }
            let meta = meta_for("simulate", params, Some(seed));
            write_rows(&output, &meta, &mut rows)?;
            println!(
                "simulated {n_paths} path(s) x {} point(s), seed {seed}",
                steps + 1
            );
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Verify {
            suites: selected,
            seed,
            alpha,
            output,
        } => {
            for a in &alpha {
                if !(*a > 0.0) {
                    return usage_err(format!(
                        "verify --alpha values must be positive (martingale orders), got {a}"
                    ));
                }
            }
            let names: Vec<&str> = if selected.is_empty() {
                suites::SUITE_NAMES.to_vec()
            } else {
                let mut names = Vec::new();
                for s in &selected {
                    if !suites::SUITE_NAMES.contains(&s.as_str()) {
                        return usage_err(format!(
                            "unknown suite '{s}' (expected one of {:?})",
                            suites::SUITE_NAMES
                        ));
                    }
                    names.push(s.as_str());
                }
                names.sort_unstable();
                names.dedup();
                names
            };

            let mut rows = run_suites_parallel(&names, seed);
            if !alpha.is_empty() {
                // extra MC martingale rows for the requested orders
                let ens = stochproc::simulate_wiener(100_000, &[0.0, 0.5, 1.0], seed)
                    .map_err(|e| e.to_string())?;
                for a in &alpha {
                    let est =
                        stochproc::mc_martingale_test(*a, &ens, 1, 2).map_err(|e| e.to_string())?;
                    let sigmas = est.mean.abs() / est.std_error;
                    rows.push(Claim::check(
                        "martingale",
                        format!("mc-increment-alpha{a}"),
                        format!("n=100000;s=0.5;t=1;seed={seed};requested"),
                        sigmas,
                        0.0,
                        4.0,
                        sigmas <= 4.0,
                    ));
                }
            }

            let meta = meta_for(
                "verify",
                format!("suites={};seed={seed}", names.join("|")),
                Some(seed),
            );
            write_rows(&output, &meta, &mut rows)?;

            let mut any_fail = false;
            for name in &names {
                let (mut pass, mut fail) = (0usize, 0usize);
                for r in rows.iter().filter(|r| r.suite == *name) {
                    if r.kind == ClaimKind::Check {
                        if r.pass {
                            pass += 1;
                        } else {
                            fail += 1;
                        }
                    }
                }
                any_fail |= fail > 0;
                println!(
                    "suite {name}: {pass} passed, {fail} failed{}",
                    if fail > 0 { "  <-- FLAGGED" } else { "" }
                );
            }
            if any_fail {
                println!("verification finished with flagged claims");
                Ok(ExitCode::from(1))
            } else {
                println!("verification passed");
                Ok(ExitCode::SUCCESS)
            }
        }
    }
}

/// Run suites on a small scoped thread pool; FRACHAOS_THREADS caps the
/// worker count (default: available cores). Results keep the input order, so
/// output is independent of scheduling.
fn run_suites_parallel(names: &[&str], seed: u64) -> Vec<Claim> {
    let threads = std::env::var("FRACHAOS_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .min(names.len().max(1));

    let slots: Vec<Mutex<Vec<Claim>>> = names.iter().map(|_| Mutex::new(Vec::new())).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= names.len() {
                    break;
                }
                let rows = suites::run_suite(names[i], seed).unwrap_or_default();
                *slots[i].lock().unwrap() = rows;
            });
        }
    });
    slots
        .into_iter()
        .flat_map(|m| m.into_inner().unwrap())
        .collect()
}

type GFun = Box<dyn Fn(f64) -> f64 + Send + Sync>;

fn builtin_g(name: &str) -> Result<GFun, String> {
    if let Some(path) = name.strip_prefix("csv:") {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
        let (xs, ys) = parse_xy_csv(&text)?;
        let sp = CubicSpline::natural(xs, ys)?;
        return Ok(Box::new(move |x| sp.eval(x)));
    }
    Ok(match name {
        "one" => Box::new(|_| 1.0),
        "x" => Box::new(|x| x),
        "x2" => Box::new(|x| x * x),
        "x3" => Box::new(|x| x * x * x),
        "gauss" => Box::new(|x| libm::exp(-0.5 * x * x)),
        "expneg" => Box::new(|x| libm::exp(-libm::fabs(x))),
        "sqrtabs" => Box::new(|x: f64| sqrt(libm::fabs(x))),
        other => return Err(format!("unknown builtin function '{other}'")),
    })
}
