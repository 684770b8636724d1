use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ocposet::assign_types::{assign_types, AssignOutcome};
use ocposet::classifier::{census::census, classify_with, CensusFilter};
use ocposet::forcing::verify_certificate;
use ocposet::io::{
    certificate_to_json, evidence_from_json, poset_from_json, poset_to_json, representation_from_json,
    representation_to_json, Evidence,
};
use ocposet::poset::catalog;
use ocposet::representation::{render, RenderFormat};
use ocposet::{recognize_with, Certificate, Dyadic, Outcome, Poset, RecognizeOptions, TypeSet};

#[derive(Parser)]
#[command(name = "ocposet", version, about = "Recognize posets with typed unit interval representations")]
struct Cli {
    /// Worker threads for census.
    #[arg(long, global = true, env = "OCPOSET_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a representation with the given types, or a certificate that none exists.
    Recognize {
        #[command(flatten)]
        input: PosetInput,
        #[arg(long)]
        types: TypeSet,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Forbid identical intervals, even for twins.
        #[arg(long)]
        distinct_intervals: bool,
    },
    /// Verdicts for all fifteen type sets.
    Classify {
        #[command(flatten)]
        input: PosetInput,
        #[arg(long)]
        distinct_intervals: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a representation or certificate against a poset.
    Verify {
        #[command(flatten)]
        input: PosetInput,
        /// Representation or certificate JSON.
        #[arg(long)]
        evidence: PathBuf,
        /// Required for representations; must match a certificate's types.
        #[arg(long)]
        types: Option<TypeSet>,
    },
    /// Write a named poset.
    Catalog {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify every poset up to a size and write CSV.
    Census {
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        twin_free: bool,
        #[arg(long)]
        inseparable: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a representation.
    Render {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value = "ascii")]
        format: RenderFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run type assignment on fixed centers.
    AssignTypes {
        #[command(flatten)]
        input: PosetInput,
        /// JSON object from element name to center, e.g. {"x": "0", "y": "1"}.
        #[arg(long)]
        centers: PathBuf,
        #[arg(long)]
        types: TypeSet,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PosetInput {
    #[arg(long)]
    poset: Option<PathBuf>,
    /// Use a named poset instead of a file.
    #[arg(long = "catalog")]
    catalog_name: Option<String>,
}

impl PosetInput {
    fn load(&self) -> Result<Poset> {
        match (&self.poset, &self.catalog_name) {
            (Some(path), _) => Ok(poset_from_json(&read(path)?).with_context(|| format!("loading {}", path.display()))?),
            (None, Some(name)) => Ok(catalog(name)?),
            (None, None) => bail!("no poset given"),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn options(distinct: bool) -> RecognizeOptions {
    if distinct {
        RecognizeOptions::distinct()
    } else {
        RecognizeOptions::default()
    }
}

const YES: u8 = 0;
const NO: u8 = 2;

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Recognize {
            input,
            types,
            out,
            distinct_intervals,
        } => {
            let p = input.load()?;
            let rec = recognize_with(&p, types, options(distinct_intervals))?;
            match &rec.outcome {
                Outcome::Represented(r) => {
                    emit(out.as_deref(), &representation_to_json(r))?;
                    Ok(YES)
                }
                Outcome::Refuted(c) => {
                    emit(out.as_deref(), &certificate_to_json(c))?;
                    Ok(NO)
                }
            }
        }
        Command::Classify {
            input,
            distinct_intervals,
            json,
        } => {
            let p = input.load()?;
            let profile = classify_with(&p, options(distinct_intervals))?;
            if json {
                let map: BTreeMap<String, bool> = profile.verdicts().into_iter().map(|(s, v)| (s.letters(), v)).collect();
                emit(None, &serde_json::to_string_pretty(&map)?)?;
            } else {
                let mut text = String::new();
                for (s, v) in profile.verdicts() {
                    text.push_str(&format!("{:<4}  {}\n", s.letters(), if v { "yes" } else { "no" }));
                }
                emit(None, &text)?;
            }
            Ok(YES)
        }
        Command::Verify { input, evidence, types } => {
            let p = input.load()?;
            let ok = match evidence_from_json(&read(&evidence)?)? {
                Evidence::Representation(r) => {
                    let s = types.context("--types is required to verify a representation")?;
                    let report = r.validate(&p, s)?;
                    for (a, b) in &report.mismatches {
                        log::warn!("relation of {a} and {b} is wrong");
                    }
                    for name in &report.type_violations {
                        log::warn!("{name} has a type outside {s}");
                    }
                    report.is_ok()
                }
                Evidence::Certificate(c) => {
                    if let (Some(s), Certificate::UnrepresentableZeroCycle { allowed, .. }) = (types, &c) {
                        if s != *allowed {
                            bail!("certificate is for types {allowed}, not {s}");
                        }
                    }
                    verify_certificate(&p, &c)?
                }
            };
            println!("{}", if ok { "verified" } else { "rejected" });
            Ok(if ok { YES } else { NO })
        }
        Command::Catalog { name, out } => {
            emit(out.as_deref(), &poset_to_json(&catalog(&name)?))?;
            Ok(YES)
        }
        Command::Census {
            max_n,
            twin_free,
            inseparable,
            out,
        } => {
            if let Some(k) = cli.threads {
                rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
            }
            let filter = CensusFilter {
                twin_free_only: twin_free,
                inseparable_only: inseparable,
            };
            let result = census(max_n, filter)?;
            for d in &result.discrepancies {
                log::warn!("{d}");
            }
            let mut buf = Vec::new();
            result.write_csv(&mut buf)?;
            emit(out.as_deref(), &String::from_utf8(buf)?)?;
            eprintln!("{} posets, {} discrepancies", result.rows.len(), result.discrepancies.len());
            Ok(YES)
        }
        Command::Render { rep, format, out } => {
            let r = representation_from_json(&read(&rep)?)?;
            emit(out.as_deref(), &render(&r, format))?;
            Ok(YES)
        }
        Command::AssignTypes { input, centers, types } => {
            let p = input.load()?;
            let given: BTreeMap<String, Dyadic> =
                serde_json::from_str(&read(&centers)?).context("centers must map names to fraction strings")?;
            let names: Vec<&String> = p.names().iter().filter(|n| given.contains_key(*n)).collect();
            if names.len() != given.len() {
                let unknown: Vec<&String> = given.keys().filter(|k| p.index_of(k).is_none()).collect();
                bail!("unknown elements {unknown:?}");
            }
            let q = p.induced_by_names(&names)?;
            let cs: Vec<Dyadic> = names.iter().map(|n| given[*n].clone()).collect();
            match assign_types(&q, &cs, types)? {
                AssignOutcome::Success(ts) => {
                    let map: BTreeMap<&String, String> =
                        names.iter().zip(ts).map(|(n, t)| (*n, t.letter().to_string())).collect();
                    emit(None, &serde_json::to_string_pretty(&map)?)?;
                    Ok(YES)
                }
                AssignOutcome::Failure(f) => {
                    println!("no assignment: {f:?}");
                    Ok(NO)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
