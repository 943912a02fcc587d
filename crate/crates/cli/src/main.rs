use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use jetrank::config_file::ConfigDoc;
use jetrank::output::{emit, write_atomic, write_dump, DumpHeader};
use jetrank::report::{to_csv, to_json, Summary, SweepReport, VerdictRecord};
use jetrank::weight_arg::{parse_degrees, parse_u64_list, parse_weight, Degrees, WeightArg};
use jetrank::{CliError, ExitStatus};
use jetrank_core::admissibility::{dimension, enumerate_admissible, DEFAULT_ENUMERATION_CAP};
use jetrank_core::conditions::{condition_matrix, Arithmetic};
use jetrank_core::geometry::{sample_configuration, Sampler};
use jetrank_core::verifier::{
    check_prop21, coefficient_rank, general_position_report, measure_configuration, measure_instance, mix, predict,
    sweep_plan, verify_with_retry, wronskian_rank, SweepMode, Verdict, DEFAULT_SUBSET_CAP,
};
use jetrank_core::{Line, PrimeModulus, ProjPoint, Weight, DEFAULT_MODULUS};

#[derive(Parser, Debug)]
#[command(
    name = "jetrank",
    version,
    about = "Maximal-rank verification for unions of jets on lines in P^n"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Prime modulus of the working field.
    #[arg(long, global = true, default_value_t = DEFAULT_MODULUS)]
    modulus: u64,
    /// Base seed for all sampling.
    #[arg(long, global = true, env = "JETRANK_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for sweeps; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Upper bound on enumerated weights.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap: usize,
    /// Upper bound on the number of lines in a general-position check.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSET_CAP)]
    subset_cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Predicted rank and maximal-rank expectation for one weight.
    Predict {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'd', long)]
        d: usize,
        /// Jet lengths with optional `:chi` (default 0), e.g. `5,5:5`.
        #[arg(short = 'r', long, value_parser = parse_weight)]
        weight: WeightArg,
    },
    /// Sample and measure instances: a sweep over admissible weights, one weight, or a stored configuration.
    Verify(VerifyArgs),
    /// List the admissible weights in descending order.
    Enumerate {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'd', long)]
        d: usize,
    },
    /// Compare Y plus a (v+1)-, (v-1)- and v-jet on one fresh line.
    Prop21 {
        #[arg(short = 'n', long)]
        n: usize,
        #[arg(short = 'd', long)]
        d: usize,
        /// Weight of Y, `lengths[:chi]`; chi defaults to 0.
        #[arg(short = 'y', long, value_parser = parse_weight)]
        y: WeightArg,
        #[arg(short = 'v', long, value_parser = clap::value_parser!(u64).range(1..))]
        v: u64,
    },
    /// Wronskian rank versus coefficient rank of a polynomial family.
    Wronskian {
        /// Coefficients, constant term first; repeat once per polynomial.
        #[arg(short = 'f', long = "poly", value_parser = parse_u64_list, required = true)]
        polys: Vec<Vec<u64>>,
        /// Evaluation point; derived from the seed when omitted.
        #[arg(short = 't', long)]
        t: Option<u64>,
    },
    /// Check that every subset of a set of lines has maximal rank up to a degree.
    Genpos {
        #[arg(short = 'n', long)]
        n: Option<usize>,
        #[arg(long)]
        d_max: usize,
        /// A line as `a0,a1,...;b0,b1,...`; repeat per line.
        #[arg(short = 'l', long = "line", conflicts_with = "random")]
        lines: Vec<String>,
        /// Sample this many random lines in P^n instead.
        #[arg(long, requires = "n")]
        random: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(short = 'n', long, required_unless_present = "config")]
    n: Option<usize>,
    /// A degree or an inclusive range such as `1..4`.
    #[arg(short = 'd', long, value_parser = parse_degrees)]
    d: Degrees,
    /// Every admissible weight (the default).
    #[arg(long, conflicts_with_all = ["sampled", "weight", "config"])]
    exhaustive: bool,
    /// This many admissible weights drawn with replacement.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), conflicts_with_all = ["weight", "config"])]
    sampled: Option<u64>,
    /// One weight, `lengths[:chi]`; chi defaults to padding up to C(n+d, d).
    #[arg(short = 'r', long, value_parser = parse_weight, conflicts_with = "config")]
    weight: Option<WeightArg>,
    /// Measure a stored configuration instead of sampling.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write each condition matrix here.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
    /// Also write each sampled configuration here.
    #[arg(long)]
    config_dir: Option<PathBuf>,
}

fn modulus(g: &Global) -> Result<PrimeModulus, CliError> {
    Ok(PrimeModulus::new(g.modulus)?)
}

fn text_or_json(g: &Global) -> Result<bool, CliError> {
    match g.format {
        None | Some(Format::Text) => Ok(false),
        Some(Format::Json) => Ok(true),
        Some(Format::Csv) => Err(CliError::usage("csv output is only available for verify and enumerate")),
    }
}

fn render_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn key_values(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{}={}\n", k, v)).collect()
}

fn cmd_predict(g: &Global, n: usize, d: usize, weight: &WeightArg) -> Result<ExitStatus, CliError> {
    let w = weight.resolve(|_| Ok(0))?;
    let pr = predict(n, d, &w);
    let text = if text_or_json(g)? {
        render_json(&json!({
            "n": n,
            "d": d,
            "weight": w.to_string(),
            "covered": pr.covered,
            "expect_max_rank": pr.expect_max_rank,
            "expected_rank": pr.expected_rank,
        }))
    } else {
        key_values(&[
            ("covered", pr.covered.to_string()),
            ("expect_max_rank", pr.expect_max_rank.to_string()),
            ("expected_rank", pr.expected_rank.to_string()),
        ])
    };
    emit(g.output.as_deref(), &text)?;
    Ok(ExitStatus::Success)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::usage(format!("cannot start {} workers: {}", jobs, e)))
}

fn side_files(args: &VerifyArgs, g: &Global, verdicts: &[Verdict], d: usize) -> Result<(), CliError> {
    if args.dump_dir.is_none() && args.config_dir.is_none() {
        return Ok(());
    }
    let p = modulus(g)?;
    for (i, v) in verdicts.iter().enumerate() {
        let config = sample_configuration(&v.weight, v.n, p, v.seed)?;
        let stem = format!("n{}-d{}-{:05}", v.n, d, i);
        if let Some(dir) = &args.dump_dir {
            let cm = condition_matrix(&config, d, Arithmetic::Modular)?;
            let header = DumpHeader {
                n: v.n,
                d,
                p: p.get(),
                seed: v.seed,
                weight: &v.weight,
            };
            write_dump(dir, &format!("{}.txt", stem), &header, &cm.matrix)?;
        }
        if let Some(dir) = &args.config_dir {
            fs::create_dir_all(dir)?;
            write_atomic(
                &dir.join(format!("{}.json", stem)),
                ConfigDoc::from(&config).to_json()?.as_bytes(),
            )?;
        }
    }
    Ok(())
}

fn verify_weight(n: usize, d: usize, w: &Weight, seed: u64, p: PrimeModulus) -> Result<Verdict, CliError> {
    let dim = dimension(n, d);
    // retries only make sense where a prediction applies
    if w.length_sum() <= dim && w.total() <= dim {
        Ok(verify_with_retry(n, d, w, seed, p)?)
    } else {
        Ok(measure_instance(n, d, w, seed, p)?)
    }
}

fn cmd_verify(g: &Global, args: &VerifyArgs) -> Result<ExitStatus, CliError> {
    let p = modulus(g)?;
    let format = match g.format {
        None | Some(Format::Json) => Format::Json,
        Some(Format::Csv) => Format::Csv,
        Some(Format::Text) => return Err(CliError::usage("verify reports are json or csv")),
    };
    let mut reports = Vec::new();
    if let Some(path) = &args.config {
        let config = ConfigDoc::from_json(&fs::read_to_string(path)?)?.to_configuration()?;
        for &d in &args.d.0 {
            let v = measure_configuration(&config, d)?;
            reports.push(SweepReport {
                n: config.n,
                d,
                p: config.modulus.get(),
                base_seed: config.seed,
                verdicts: vec![VerdictRecord::from(&v)],
            });
        }
    } else {
        let n = args.n.expect("clap requires -n without --config");
        let workers = pool(g.jobs)?;
        for &d in &args.d.0 {
            if p.get() <= d as u64 {
                return Err(jetrank_core::Error::ModulusTooSmall {
                    modulus: p.get(),
                    degree: d,
                }
                .into());
            }
            let verdicts: Vec<Verdict> = match &args.weight {
                Some(arg) => {
                    let dim = dimension(n, d);
                    let w = arg.resolve(|sum| {
                        dim.checked_sub(sum).ok_or_else(|| {
                            CliError::usage(format!("lengths sum to {} > {}; give :chi explicitly", sum, dim))
                        })
                    })?;
                    vec![verify_weight(n, d, &w, g.seed, p)?]
                }
                None => {
                    let mode = match args.sampled {
                        Some(k) => SweepMode::Sampled(k as usize),
                        None => SweepMode::Exhaustive,
                    };
                    let plan = sweep_plan(n, d, mode, g.seed, g.cap)?;
                    log::info!("n={} d={}: {} instances", n, d, plan.len());
                    workers.install(|| {
                        plan.par_iter()
                            .map(|(w, seed)| Ok(verify_with_retry(n, d, w, *seed, p)?))
                            .collect::<Result<Vec<_>, CliError>>()
                    })?
                }
            };
            side_files(args, g, &verdicts, d)?;
            reports.push(SweepReport {
                n,
                d,
                p: p.get(),
                base_seed: g.seed,
                verdicts: verdicts.iter().map(VerdictRecord::from).collect(),
            });
        }
    }
    let text = match format {
        Format::Csv => to_csv(&reports)?,
        _ => to_json(&reports)?,
    };
    emit(g.output.as_deref(), &text)?;
    let summary = Summary::of(&reports);
    if g.output.is_some() {
        println!("{}", summary);
    } else {
        eprintln!("{}", summary);
    }
    Ok(if summary.disagree == 0 {
        ExitStatus::Success
    } else {
        ExitStatus::Disagreement
    })
}

fn cmd_enumerate(g: &Global, n: usize, d: usize) -> Result<ExitStatus, CliError> {
    let set = enumerate_admissible(n, d, g.cap)?;
    let text = match g.format {
        None | Some(Format::Text) => set.weights.iter().map(|w| format!("{}\n", w)).collect(),
        Some(Format::Json) => render_json(&json!(set
            .weights
            .iter()
            .map(|w| json!({ "chi": w.chi(), "lengths": w.lengths() }))
            .collect::<Vec<_>>())),
        Some(Format::Csv) => {
            let mut s = String::from("chi,lengths\n");
            for w in &set.weights {
                let lengths: Vec<String> = w.lengths().iter().map(usize::to_string).collect();
                s.push_str(&format!("{},{}\n", w.chi(), lengths.join(" ")));
            }
            s
        }
    };
    emit(g.output.as_deref(), &text)?;
    Ok(ExitStatus::Success)
}

fn cmd_prop21(g: &Global, n: usize, d: usize, y: &WeightArg, v: usize) -> Result<ExitStatus, CliError> {
    let y = y.resolve(|_| Ok(0))?;
    let r = check_prop21(&y, v, n, d, g.seed, modulus(g)?)?;
    let fields: Vec<(&str, serde_json::Value)> = vec![
        ("n", json!(r.n)),
        ("d", json!(r.d)),
        ("v", json!(r.v)),
        ("seed", json!(r.seed)),
        ("y_weight", json!(r.y_weight.to_string())),
        ("forms", json!(r.forms)),
        ("h0_y", json!(r.h0_y)),
        ("rank_plus", json!(r.rank_plus())),
        ("rank_minus", json!(r.rank_minus())),
        ("rank_mid", json!(r.rank_mid())),
        ("plus_maximal", json!(r.plus_maximal())),
        ("minus_maximal", json!(r.minus_maximal())),
        ("remaining_case", json!(r.remaining_case())),
        ("hypotheses_hold", json!(r.hypotheses_hold)),
        ("conclusion_holds", json!(r.conclusion_holds)),
    ];
    let text = if text_or_json(g)? {
        render_json(&serde_json::Value::Object(
            fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        ))
    } else {
        fields
            .iter()
            .map(|(k, v)| format!("{}={}\n", k, v.as_str().map_or(v.to_string(), str::to_string)))
            .collect()
    };
    emit(g.output.as_deref(), &text)?;
    Ok(if r.is_counterexample() {
        ExitStatus::Disagreement
    } else {
        ExitStatus::Success
    })
}

fn cmd_wronskian(g: &Global, polys: &[Vec<u64>], t: Option<u64>) -> Result<ExitStatus, CliError> {
    let p = modulus(g)?;
    let t = t.map_or_else(|| mix(g.seed, 0) % p.get(), |t| p.reduce(t));
    let v = polys.len();
    let w = wronskian_rank(polys, t, p)?;
    let c = coefficient_rank(polys, p)?;
    let agrees = (w == v) == (c == v);
    let text = if text_or_json(g)? {
        render_json(&json!({
            "v": v, "t": t, "wronskian_rank": w, "coefficient_rank": c,
            "independent": c == v, "agrees": agrees,
        }))
    } else {
        key_values(&[
            ("v", v.to_string()),
            ("t", t.to_string()),
            ("wronskian_rank", w.to_string()),
            ("coefficient_rank", c.to_string()),
            ("independent", (c == v).to_string()),
            ("agrees", agrees.to_string()),
        ])
    };
    emit(g.output.as_deref(), &text)?;
    Ok(if agrees {
        ExitStatus::Success
    } else {
        ExitStatus::Disagreement
    })
}

fn parse_line(s: &str, p: PrimeModulus) -> Result<Line, CliError> {
    let (a, b) = s
        .split_once(';')
        .ok_or_else(|| CliError::usage(format!("line '{}' must be two points separated by ';'", s)))?;
    let point = |x: &str| -> Result<ProjPoint, CliError> {
        let coords = parse_u64_list(x).map_err(CliError::Usage)?;
        Ok(ProjPoint::new(coords.into_iter().map(|c| p.reduce(c)).collect(), p)?)
    };
    let (a, b) = (point(a)?, point(b)?);
    if a.dim() != b.dim() {
        return Err(CliError::usage(format!("line '{}' mixes dimensions", s)));
    }
    Ok(Line::new(a, b)?)
}

fn cmd_genpos(
    g: &Global,
    n: Option<usize>,
    d_max: usize,
    lines: &[String],
    random: Option<usize>,
) -> Result<ExitStatus, CliError> {
    let p = modulus(g)?;
    let lines: Vec<Line> = match random {
        Some(k) => {
            let n = n.expect("clap requires -n with --random");
            if k > g.subset_cap {
                return Err(jetrank_core::Error::SubsetCapExceeded {
                    lines: k,
                    cap: g.subset_cap,
                }
                .into());
            }
            let mut s = Sampler::new(p, g.seed);
            (0..k).map(|_| s.line(n)).collect::<Result<_, _>>()?
        }
        None => lines.iter().map(|l| parse_line(l, p)).collect::<Result<_, _>>()?,
    };
    if let (Some(n), Some(l)) = (n, lines.first()) {
        if l.dim() != n {
            return Err(CliError::usage(format!("lines live in P^{}, not P^{}", l.dim(), n)));
        }
    }
    let r = general_position_report(&lines, d_max, g.subset_cap)?;
    let failures: Vec<_> = r
        .failures
        .iter()
        .map(|f| json!({ "subset": f.subset, "degree": f.degree, "rank": f.rank, "expected": f.expected }))
        .collect();
    let text = if text_or_json(g)? {
        render_json(&json!({
            "lines": r.lines, "d_max": r.d_max, "intersections": r.intersections,
            "checks": r.checks, "passed": r.passed(), "failures": failures,
        }))
    } else {
        let mut s = key_values(&[
            ("lines", r.lines.to_string()),
            ("d_max", r.d_max.to_string()),
            ("intersections", r.intersections.to_string()),
            ("checks", r.checks.to_string()),
            ("passed", r.passed().to_string()),
        ]);
        for f in &r.failures {
            s.push_str(&format!(
                "failure subset={:#b} degree={} rank={} expected={}\n",
                f.subset, f.degree, f.rank, f.expected
            ));
        }
        s
    };
    emit(g.output.as_deref(), &text)?;
    Ok(if r.passed() {
        ExitStatus::Success
    } else {
        ExitStatus::Disagreement
    })
}

fn run(cli: &Cli) -> Result<ExitStatus, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Predict { n, d, weight } => cmd_predict(g, *n, *d, weight),
        Command::Verify(args) => cmd_verify(g, args),
        Command::Enumerate { n, d } => cmd_enumerate(g, *n, *d),
        Command::Prop21 { n, d, y, v } => cmd_prop21(g, *n, *d, y, *v as usize),
        Command::Wronskian { polys, t } => cmd_wronskian(g, polys, *t),
        Command::Genpos {
            n,
            d_max,
            lines,
            random,
        } => cmd_genpos(g, *n, *d_max, lines, *random),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let status = run(&cli).unwrap_or_else(|e| {
        eprintln!("jetrank: {}", e);
        e.exit_status()
    });
    ExitCode::from(status as u8)
}
