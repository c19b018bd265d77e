use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use complicial::anodyne::{
    builtin_certificates, rlp_report, search_tower, verify_certificate, AnodyneCertificate, CertificateJson, Mode,
};
use complicial::enriched::{EnrichedCategory, EnrichedJson};
use complicial::nerve::build_nerve;
use complicial::shapes::{big_c_cube, big_h_in, named_shape};
use complicial::strat::{SetJson, StratifiedSet};
use complicial::suite::{desk_examples, run_suite, DEFAULT_SEED};
use complicial::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "complicial", version, about = "Stratified sets, nerves and anodyne certificates")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Write a named shape as set JSON.
    Shape {
        /// delta, boundary, delta-thin, complicial, complicial-primed, complicial-dprimed,
        /// horn, cube, bigC, bigH, Cdot, Cddot
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check horn and thinness extensions of a set; exit 1 if any fails.
    Check {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[arg(long, default_value = "all", value_parser = ["inner", "all"])]
        mode: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the nerve of an enriched category JSON as set JSON.
    Nerve {
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        dmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a certificate JSON; exit 1 if it is rejected.
    VerifyCert {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a tower between the start and finish of a certificate JSON,
    /// or from the horn subset to the cube given by --n and --k.
    SearchTower {
        input: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 10)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite and write summary.json to --out.
    PaperSuite {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a builtin certificate (H12, H22, H23, C23) as JSON.
    ExportCert {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a sample enriched category (sigma-point, sigma-interval, sigma-iso, z2) as JSON.
    Example {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Rejected,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

macro_rules! read {
    ($path:expr, $ty:ty) => {{
        let path: &Path = $path;
        fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
            .and_then(|text| {
                serde_json::from_str::<$ty>(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
            })
    }};
}

fn emit(value: serde_json::Value, out: Option<&Path>) -> Outcome {
    let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verdict(passed: bool) -> Outcome {
    if passed {
        Ok(())
    } else {
        Err(Failure::Rejected)
    }
}

fn run(verb: Verb) -> Outcome {
    match verb {
        Verb::Shape { name, n, k, out } => emit(json!(named_shape(&name, n, k)?.to_json()), out.as_deref()),
        Verb::Check { input, dmax, mode, out } => {
            let set = Arc::new(StratifiedSet::from_json(&read!(&input, SetJson)?)?);
            let report = rlp_report(&set, dmax, mode.parse::<Mode>()?)?;
            for f in &report.failures {
                eprintln!("unfilled: {}", f.label);
            }
            emit(json!({ "passed": report.passed(), "report": report }), out.as_deref())?;
            verdict(report.passed())
        }
        Verb::Nerve { input, dmax, out } => {
            let e = EnrichedCategory::from_json(&read!(&input, EnrichedJson)?)?;
            let nerve = build_nerve(&e, dmax)?;
            eprintln!("census {:?}, thin {:?}", nerve.set.census(), nerve.set.thin_census());
            emit(json!(nerve.set.to_json()), out.as_deref())
        }
        Verb::VerifyCert { input, out } => {
            let cert = AnodyneCertificate::from_json(&read!(&input, CertificateJson)?)?;
            let report = match verify_certificate(&cert) {
                Ok(trail) => json!({ "name": cert.name, "passed": true, "steps": cert.steps.len(), "stages": trail.len() }),
                Err(e) => json!({ "name": cert.name, "passed": false, "error": e.to_string() }),
            };
            let passed = report["passed"] == true;
            emit(report, out.as_deref())?;
            verdict(passed)
        }
        Verb::SearchTower { input, n, k, budget, out } => {
            let (start, finish) = match (input, n, k) {
                (Some(p), None, None) => {
                    let c = AnodyneCertificate::from_json(&read!(&p, CertificateJson)?)?;
                    (c.start, c.finish)
                }
                (None, Some(n), Some(k)) => {
                    let cube = big_c_cube(n, k)?;
                    let full = complicial::strat::SubsetHandle::full(Arc::clone(&cube.set));
                    (big_h_in(&cube, k)?, full)
                }
                _ => return Err(Failure::Usage("give either a certificate file or both --n and --k".into())),
            };
            match search_tower(&start, &finish, budget)? {
                Some(c) => emit(json!(c.to_json()), out.as_deref()),
                None => {
                    eprintln!("no tower within {budget} steps");
                    Err(Failure::Rejected)
                }
            }
        }
        Verb::PaperSuite { seed, out } => {
            let report = run_suite(seed);
            for i in &report.items {
                println!("{} {}: {}", if i.passed { "PASS" } else { "FAIL" }, i.name, i.detail);
            }
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
                emit(json!(report), Some(&dir.join("summary.json")))?;
            }
            verdict(report.passed)
        }
        Verb::ExportCert { name, out } => {
            let key = |c: &AnodyneCertificate| c.name.split('-').next().unwrap_or_default().to_string();
            let cert = builtin_certificates()
                .into_iter()
                .find(|c| key(c) == name)
                .ok_or_else(|| Failure::Usage(format!("unknown certificate `{name}`")))?;
            emit(json!(cert.to_json()), out.as_deref())
        }
        Verb::Example { name, out } => {
            let index = ["sigma-point", "sigma-interval", "sigma-iso", "z2"]
                .iter()
                .position(|&n| n == name)
                .ok_or_else(|| Failure::Usage(format!("unknown example `{name}`")))?;
            let (_, e) = desk_examples()?.swap_remove(index);
            emit(json!(e.to_json()), out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Rejected) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
