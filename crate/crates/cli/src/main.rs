use clap::{Parser, Subcommand};
use plmi_core::arith::{parse_poly_at, Monomial, VarSet};
use plmi_core::bounds::{bounds_report, BoundInput};
use plmi_core::classify::{parametric_solve_lmi, ClassifyOption, SolveOptions};
use plmi_core::decide::solve_lmi_report;
use plmi_core::io::{
    check_grid, grid_points, parse_grid, read_instance, read_result, result_json, InstanceFile,
    SCHEMA,
};
use plmi_core::lmi::{sos_to_lmi, ParamLinearMatrix};
use plmi_core::Error;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

const EXIT_INFEASIBLE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_GENERICITY: u8 = 4;
const EXIT_RESOURCE: u8 = 5;
const EXIT_NOT_REPRESENTABLE: u8 = 6;
const EXIT_IO: u8 = 7;
const EXIT_DISAGREEMENT: u8 = 8;
const EXIT_INTERNAL: u8 = 10;

#[derive(Parser)]
#[command(
    name = "plmi",
    version,
    about = "Exact feasibility of (parametric) linear matrix inequalities"
)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Semi-algebraic description of the feasible parameters.
    Classify {
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// assertion, cells or minors.
        #[arg(long, default_value = "assertion")]
        option: String,
        #[arg(long, default_value_t = 5)]
        max_retries: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Feasibility of a pencil without parameters.
    Decide {
        instance: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_retries: usize,
        /// Print diagnostics as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compare a result file with the decision procedure on a parameter grid.
    Check {
        instance: PathBuf,
        result: PathBuf,
        /// `a:b:step` per parameter, in order.
        #[arg(long, required = true)]
        grid: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gram-matrix pencil of a polynomial.
    Sos2lmi {
        /// JSON file with `t`, `n`, `polynomial` and optionally `monomials`.
        polynomial: PathBuf,
        /// Comma-separated monomials, overriding the file.
        #[arg(long)]
        monomials: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Degree bounds for the given sizes.
    Bounds {
        m: u64,
        r: u64,
        d: u64,
        n: u64,
        t: u64,
        #[arg(long)]
        json: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::NotSymmetric | Error::BadIndexSet { .. } => EXIT_PARSE,
            Error::GenericityFailure { .. } => EXIT_GENERICITY,
            Error::ResourceLimit { .. } => EXIT_RESOURCE,
            Error::NotRepresentable(_) => EXIT_NOT_REPRESENTABLE,
            Error::Invalid(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_IO,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure {
            code: EXIT_IO,
            message: format!("cannot write {}: {e}", p.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<ParamLinearMatrix, Failure> {
    let text = read_file(path)?;
    read_instance(&text).map_err(|e| {
        let mut f = Failure::from(e);
        if f.code == EXIT_USAGE {
            f.code = EXIT_PARSE;
        }
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Classify {
            instance,
            seed,
            option,
            max_retries,
            out,
        } => {
            let option: ClassifyOption = option.parse().map_err(|e: Error| usage(e.to_string()))?;
            let a = load_instance(&instance)?;
            if a.t == 0 {
                return Err(usage(
                    "the instance has no parameters (t = 0); use `plmi decide`",
                ));
            }
            let opts = SolveOptions {
                seed,
                option,
                max_retries,
            };
            let start = Instant::now();
            let res = parametric_solve_lmi(&a, &opts)?;
            let v = result_json(&a, &opts, &res, start.elapsed().as_millis());
            write_output(out.as_deref(), &pretty(&v))?;
            if out.is_some() {
                println!("{}", res.formula.formula.render(&VarSet::params(a.t)));
            }
            match &res.failure {
                Some(e) => {
                    eprintln!("error: {e}; the formula covers the successful branches only");
                    Ok(EXIT_GENERICITY)
                }
                None => Ok(0),
            }
        }
        Command::Decide {
            instance,
            seed,
            max_retries,
            json,
        } => {
            let a = load_instance(&instance)?;
            if a.t != 0 {
                return Err(usage(format!(
                    "the instance has t = {} parameters; use `plmi classify`",
                    a.t
                )));
            }
            let report = solve_lmi_report(&a, seed, max_retries)?;
            if json {
                let mut v = serde_json::to_value(&report).expect("serializable");
                v["schema"] = json!(SCHEMA);
                print!("{}", pretty(&v));
            } else {
                println!(
                    "{}",
                    if report.feasible {
                        "feasible"
                    } else {
                        "infeasible"
                    }
                );
            }
            Ok(if report.feasible { 0 } else { EXIT_INFEASIBLE })
        }
        Command::Check {
            instance,
            result,
            grid,
            seed,
            out,
        } => {
            let a = load_instance(&instance)?;
            if grid.len() != a.t {
                return Err(usage(format!(
                    "expected {} --grid values, one per parameter",
                    a.t
                )));
            }
            let pf = read_result(&read_file(&result)?, a.t).map_err(Failure::from)?;
            let axes = grid
                .iter()
                .map(|g| parse_grid(g))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| usage(e.to_string()))?;
            let report = check_grid(&a, &pf, &grid_points(&axes), seed)?;
            let v = serde_json::to_value(&report).expect("serializable");
            write_output(out.as_deref(), &pretty(&v))?;
            eprintln!(
                "{} of {} points compared ({} on exceptions), {:.2}% agreement",
                report.compared, report.points, report.on_exceptions, report.agreement_percent
            );
            Ok(if report.disagreements.is_empty() {
                0
            } else {
                EXIT_DISAGREEMENT
            })
        }
        Command::Sos2lmi {
            polynomial,
            monomials,
            out,
        } => {
            let text = read_file(&polynomial)?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure {
                code: EXIT_PARSE,
                message: format!("{}: {e}", polynomial.display()),
            })?;
            let field = |k: &str| v.get(k).and_then(Value::as_u64).map(|x| x as usize);
            let (t, n) = (
                field("t").unwrap_or(0),
                field("n").ok_or_else(|| usage("missing `n`"))?,
            );
            let vars = VarSet::params_primal(t, n);
            let src = v
                .get("polynomial")
                .and_then(Value::as_str)
                .ok_or_else(|| usage("missing `polynomial`"))?;
            let p = parse_poly_at(src, &vars, "polynomial")?;
            let list: Vec<String> = match monomials {
                Some(s) => s.split(',').map(|m| m.trim().to_string()).collect(),
                None => v
                    .get("monomials")
                    .and_then(Value::as_array)
                    .ok_or_else(|| usage("no monomial list given"))?
                    .iter()
                    .map(|m| m.as_str().unwrap_or("").to_string())
                    .collect(),
            };
            let mut beta = Vec::new();
            for (k, m) in list.iter().enumerate() {
                let q = parse_poly_at(m, &vars, &format!("monomials[{k}]"))?;
                let mono = match q.terms().next() {
                    Some((mono, c)) if q.len() == 1 && c == &plmi_core::scalar::int(1) => {
                        Monomial::clone(mono)
                    }
                    _ => {
                        return Err(Failure {
                            code: EXIT_PARSE,
                            message: format!("`{m}` is not a monomial"),
                        })
                    }
                };
                beta.push(mono);
            }
            let a = sos_to_lmi(&p, &vars, &beta)?;
            write_output(
                out.as_deref(),
                &InstanceFile::from_matrix(&a).to_json_string(),
            )?;
            Ok(0)
        }
        Command::Bounds {
            m,
            r,
            d,
            n,
            t,
            json,
        } => {
            let inp = BoundInput::new(m, r, d, n, t).map_err(|e| usage(e.to_string()))?;
            let rep = bounds_report(&inp);
            if json {
                let mut v = serde_json::to_value(&rep).expect("serializable");
                v["schema"] = json!(SCHEMA);
                print!("{}", pretty(&v));
            } else {
                println!(
                    "m={m} r={r} d={d} n={n} t={t} (m*={}, c={})",
                    rep.m_star, rep.c
                );
                println!("{:<10} {}", "delta*", rep.delta_star);
                println!("{:<10} {}", "deg(g)", rep.deg_g);
                println!(
                    "{:<10} {} (bound {})",
                    "|Theta|", rep.theta, rep.theta_bound
                );
                println!("{:<10} {}", "MBB", rep.mbb);
                println!("{:<10} {}", "Delta*", rep.delta_bar_star);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
        {
            eprintln!("warning: {e}");
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
