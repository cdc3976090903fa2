//! Command line front end: evaluation, verification, tabulation and
//! convolution of the hypergeometric functions of the complex field.
//!
//! Exit codes: 0 success (or all checks passed), 1 verification
//! failures, 2 usage or parse errors, 3 evaluation errors.

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use hypc::{GParams, LambdaPoint, QuadConfig, SeriesConfig};

#[derive(Parser)]
#[command(name = "hypc", version, about = "Hypergeometric functions of the complex field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the gamma function of the complex field at a lattice point.
    Gamma {
        /// Lattice point as "k:sre:sim", e.g. "0:1.0:0.0".
        point: String,
    },
    /// Evaluate pGq[(a);(b); z].
    Eval(EvalArgs),
    /// Run a verification suite and print its JSON report.
    Verify {
        /// Suite name, e.g. gamma, engines, closed_forms, inversion,
        /// conjugation, cancellation, shift, contiguous, pde,
        /// multiplication, convolution, mellin, gauss_euler, vilenkin.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Tabulate pGq over a rectangular z-grid as CSV.
    Table(TableArgs),
    /// Multiplicative convolution of two parameter sets against the
    /// merged-parameter function.
    Convolve(ConvolveArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Upper parameters: semicolon-separated "k:sre:sim" tokens.
    #[arg(long)]
    a: String,
    /// Lower parameters, same grammar; may be empty.
    #[arg(long, default_value = "")]
    b: String,
    /// Argument, e.g. "2+0i" or "0.5-0.3i".
    #[arg(long)]
    z: String,
    /// auto | series | quad
    #[arg(long, default_value = "auto")]
    engine: String,
    #[arg(long, default_value_t = 1e-6)]
    tol_rel: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol_abs: f64,
    #[arg(long, default_value_t = 200)]
    max_k: usize,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    a: String,
    #[arg(long, default_value = "")]
    b: String,
    /// Grid as "re0:re1:nre:im0:im1:nim"; re varies fastest.
    #[arg(long)]
    grid: String,
    /// Output format; only csv is supported for tables.
    #[arg(long, default_value = "csv")]
    out: String,
    #[arg(long, default_value = "auto")]
    engine: String,
    #[arg(long, default_value_t = 1e-6)]
    tol_rel: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol_abs: f64,
    #[arg(long, default_value_t = 200)]
    max_k: usize,
}

#[derive(Args)]
struct ConvolveArgs {
    /// Upper/lower parameters of the first factor.
    #[arg(long)]
    a: String,
    #[arg(long, default_value = "")]
    b: String,
    /// Upper/lower parameters of the second factor.
    #[arg(long)]
    a2: String,
    #[arg(long, default_value = "")]
    b2: String,
    /// Argument of the convolution.
    #[arg(long)]
    t: String,
    #[arg(long, default_value_t = 1e-7)]
    tol_abs: f64,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let s = s.trim().replace(' ', "");
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    let err = || format!("cannot parse complex number '{s}'");
    if let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('I')) {
        // find the split between real and imaginary parts
        let bytes = body.as_bytes();
        let mut split = None;
        for i in (1..bytes.len()).rev() {
            let ch = bytes[i] as char;
            if (ch == '+' || ch == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let re: f64 = body[..i].parse().map_err(|_| err())?;
                let im_str = &body[i..];
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str.parse().map_err(|_| err())?
                };
                Ok(Complex64::new(re, im))
            }
            None => {
                let im: f64 = if body.is_empty() { 1.0 } else { body.parse().map_err(|_| err())? };
                Ok(Complex64::new(0.0, im))
            }
        }
    } else {
        let re: f64 = s.parse().map_err(|_| err())?;
        Ok(Complex64::new(re, 0.0))
    }
}

fn parse_points(s: &str) -> Result<Vec<LambdaPoint>, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';').map(|tok| tok.trim().parse::<LambdaPoint>()).collect()
}

fn parse_params(a: &str, b: &str) -> Result<GParams, String> {
    let a = parse_points(a)?;
    let b = parse_points(b)?;
    if a.is_empty() && b.is_empty() {
        return Err("at least one parameter is required".into());
    }
    Ok(GParams::from_points(a, b))
}

fn json_complex(v: Complex64) -> serde_json::Value {
    serde_json::json!({ "re": finite_or_null(v.re), "im": finite_or_null(v.im) })
}

fn finite_or_null(x: f64) -> serde_json::Value {
    if x.is_finite() {
        serde_json::json!(x)
    } else {
        serde_json::Value::Null
    }
}

fn eval_error_exit(e: hypc::Error) -> ! {
    let payload = serde_json::json!({
        "error": { "kind": e.kind(), "message": e.to_string() }
    });
    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    std::process::exit(3);
}

fn usage_exit(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

/// Evaluate with the requested engine; `auto` prefers the residue series
/// and falls back to quadrature where the series is genuinely refused.
fn run_engine(
    params: &GParams,
    z: Complex64,
    engine: &str,
    scfg: &SeriesConfig,
    qcfg: &QuadConfig,
) -> Result<hypc::EvalResult, hypc::Error> {
    match engine {
        "series" => hypc::residue::g_eval_series_with(params, z, scfg),
        "quad" => hypc::g_eval_quad(params, z, qcfg),
        "auto" => match hypc::residue::g_eval_series_with(params, z, scfg) {
            Ok(r) => Ok(r),
            Err(hypc::Error::OnUnitCircle) | Err(hypc::Error::ResonantParameters) => {
                hypc::g_eval_quad(params, z, qcfg)
            }
            Err(e) => Err(e),
        },
        other => usage_exit(&format!("unknown engine '{other}'")),
    }
}

fn main() {
    // HYPC_THREADS caps the parallelism of the verification suites
    if let Ok(threads) = std::env::var("HYPC_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }

    let cli = Cli::parse();
    match cli.command {
        Command::Gamma { point } => {
            let p: LambdaPoint = match point.parse() {
                Ok(p) => p,
                Err(e) => usage_exit(&e),
            };
            let g = hypc::gamma_c(p);
            let mut payload = serde_json::json!({
                "re": finite_or_null(g.value.re),
                "im": finite_or_null(g.value.im),
                "pole": g.is_pole,
            });
            if let Some(res) = g.residue {
                payload["residue"] = json_complex(res);
            }
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Command::Eval(args) => {
            let params = parse_params(&args.a, &args.b).unwrap_or_else(|e| usage_exit(&e));
            let z = parse_complex(&args.z).unwrap_or_else(|e| usage_exit(&e));
            let scfg = SeriesConfig { tol_rel: args.tol_rel.min(1e-10), ..Default::default() };
            let qcfg = QuadConfig {
                tol_rel: args.tol_rel,
                tol_abs: args.tol_abs,
                max_k: args.max_k,
                ..Default::default()
            };
            match run_engine(&params, z, &args.engine, &scfg, &qcfg) {
                Ok(r) => {
                    let payload = serde_json::json!({
                        "value": json_complex(r.value),
                        "error": r.abs_error_estimate,
                        "engine": r.engine.to_string(),
                        "diagnostics": serde_json::to_value(&r.diagnostics).unwrap(),
                    });
                    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
                }
                Err(e) => eval_error_exit(e),
            }
        }
        Command::Verify { suite, samples, seed, tol } => {
            match hypc::run_suite(&suite, samples, seed, tol) {
                Ok(report) => {
                    println!("{}", report.to_json());
                    std::process::exit(if report.passed { 0 } else { 1 });
                }
                Err(hypc::Error::UnknownSuite { name }) => {
                    usage_exit(&format!("unknown suite '{name}'; known: {}", hypc::identity::SUITES.join(", ")))
                }
                Err(e) => eval_error_exit(e),
            }
        }
        Command::Table(args) => {
            if args.out != "csv" {
                usage_exit("tables support only --out csv");
            }
            let params = parse_params(&args.a, &args.b).unwrap_or_else(|e| usage_exit(&e));
            let parts: Vec<&str> = args.grid.split(':').collect();
            if parts.len() != 6 {
                usage_exit("grid must be re0:re1:nre:im0:im1:nim");
            }
            let nums: Result<Vec<f64>, _> = parts.iter().map(|p| p.parse::<f64>()).collect();
            let nums = nums.unwrap_or_else(|_| usage_exit("grid must be numeric"));
            let (re0, re1, nre, im0, im1, nim) =
                (nums[0], nums[1], nums[2] as usize, nums[3], nums[4], nums[5] as usize);
            if nre == 0 || nim == 0 {
                usage_exit("grid counts must be positive");
            }
            let scfg = SeriesConfig::default();
            let qcfg = QuadConfig {
                tol_rel: args.tol_rel,
                tol_abs: args.tol_abs,
                max_k: args.max_k,
                ..Default::default()
            };
            println!("re_z,im_z,re_G,im_G,abs_err,engine");
            for j in 0..nim {
                let im = if nim == 1 { im0 } else { im0 + (im1 - im0) * j as f64 / (nim - 1) as f64 };
                for i in 0..nre {
                    let re =
                        if nre == 1 { re0 } else { re0 + (re1 - re0) * i as f64 / (nre - 1) as f64 };
                    let z = Complex64::new(re, im);
                    match run_engine(&params, z, &args.engine, &scfg, &qcfg) {
                        Ok(r) => println!(
                            "{re},{im},{},{},{},{}",
                            r.value.re, r.value.im, r.abs_error_estimate, r.engine
                        ),
                        Err(e) => println!("{re},{im},,,,{}", e.kind()),
                    }
                }
            }
        }
        Command::Convolve(args) => {
            let p1 = parse_params(&args.a, &args.b).unwrap_or_else(|e| usage_exit(&e));
            let p2 = parse_params(&args.a2, &args.b2).unwrap_or_else(|e| usage_exit(&e));
            let t = parse_complex(&args.t).unwrap_or_else(|e| usage_exit(&e));
            if t == Complex64::new(0.0, 0.0) {
                usage_exit("t must be nonzero");
            }
            let cfg = QuadConfig { tol_abs: args.tol_abs, ..Default::default() };
            let integral = match hypc::convolve_g(&p1, &p2, t, &cfg) {
                Ok(v) => v,
                Err(e) => eval_error_exit(e),
            };
            let merged = p1.merged(&p2);
            let reference = match hypc::g_eval_series(&merged, t) {
                Ok(r) => r.value,
                Err(e) => eval_error_exit(e),
            };
            let payload = serde_json::json!({
                "integral": json_complex(integral),
                "merged": json_complex(reference),
                "difference": (integral - reference).norm(),
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
        }
    }
}
