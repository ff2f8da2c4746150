use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use modsuper::error::Error;
use modsuper::pipeline::{self, Job, Plan};
use modsuper::roots::{cartan_matrix, positive_roots};
use modsuper::verify::Conclusion;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

const REFUTED: u8 = 2;
const INPUT: u8 = 3;
const INTERNAL: u8 = 4;

#[derive(Parser)]
#[command(name = "modsuper", version, about = "Semisimplify modular Lie algebras into Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct JobArgs {
    /// Catalog name (g2, f4, e6, e7, e8, a3, gl3, ...) or a JSON file {name?, cartan, parity, p}
    #[arg(long)]
    algebra: String,
    /// Odd prime; defaults to 3, or to the file's value
    #[arg(short, long)]
    p: Option<u32>,
    /// Nilpotent element, e.g. "e1+e2+e6" or "[e2, e3]"
    #[arg(long)]
    element: Option<String>,
    /// Diagram nodes S; the element becomes the sum of e_i over S
    #[arg(long, value_delimiter = ',')]
    subset: Option<Vec<usize>>,
    /// Use a hand-chosen chain basis (only g36, for e8 at e1+e2+e6+e8)
    #[arg(long)]
    plan: Option<Plan>,
    /// Write machine-readable output here ("-" for stdout)
    #[arg(long)]
    json: Option<PathBuf>,
}

impl JobArgs {
    fn job(&self, target: Option<String>) -> Job {
        Job {
            algebra: self.algebra.clone(),
            p: self.p,
            element: self.element.clone(),
            subset: self.subset.clone(),
            target,
            plan: self.plan,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Positive roots of a catalog type with their heights
    Roots {
        name: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Jordan chains of ad(element)
    Decompose(JobArgs),
    /// Semisimplified superalgebra (constants go to --json)
    Semisimplify(JobArgs),
    /// Certificate against a target (inferred from the diagram when omitted)
    Certify {
        #[command(flatten)]
        job: JobArgs,
        /// g(2,6), el(5;3), sl(3|1), ...
        #[arg(long)]
        target: Option<String>,
    },
    /// Recompute the full table of expected results
    Table {
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Swap orbit of a black subset with per-member results
    Swaps {
        #[arg(long)]
        algebra: String,
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
        /// Skip certificates, report block counts only
        #[arg(long)]
        counts_only: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn emit(path: &Option<PathBuf>, mut v: Value) -> anyhow::Result<()> {
    let Some(path) = path else { return Ok(()) };
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(1));
    }
    let text = serde_json::to_string_pretty(&v)? + "\n";
    if path.as_os_str() == "-" {
        print!("{text}");
    } else {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Roots { name, json } => {
            let rs = positive_roots(&cartan_matrix(&name)?)?;
            println!("{}: {} positive roots", name, rs.len());
            for r in rs.positive() {
                println!("  {:?}  height {}", r.coords, r.height());
            }
            let roots: Vec<Value> = rs.positive().iter().map(|r| json!({"coords": r.coords, "height": r.height()})).collect();
            emit(&json, json!({"algebra": name, "count": rs.len(), "roots": roots}))?;
            Ok(0)
        }
        Cmd::Decompose(a) => {
            let prep = pipeline::prepare(&a.job(None))?;
            println!("{} over F_{} at {} ({:?} route)", prep.source.name, prep.p(), prep.element, prep.route);
            println!("block counts n_1..n_p: {:?}", prep.counts());
            for (k, c) in prep.decomposition.chains().iter().enumerate() {
                if let Some(t) = c.tag() {
                    println!("  chain {k}: J_{} tag {t}", c.len());
                }
            }
            emit(&a.json, pipeline::decomposition_json(&prep))?;
            Ok(0)
        }
        Cmd::Semisimplify(a) => {
            let prep = pipeline::prepare(&a.job(None))?;
            let ss = prep.semisimplify()?;
            println!("{} over F_{} at {}", prep.source.name, prep.p(), prep.element);
            println!("block counts: {:?}", prep.counts());
            println!("superdimension: {}", ss.superdim());
            println!("super skew and super Jacobi: pass");
            let cubes = modsuper::superalgebra::check_odd_cubes(&ss.algebra);
            println!("odd cubes vanish: {}", cubes.pass);
            let mut v = ss.to_json_value();
            v["block_counts"] = json!(prep.counts());
            v["element"] = json!(prep.element);
            v["algebra"] = json!(prep.source.name);
            emit(&a.json, v)?;
            Ok(0)
        }
        Cmd::Certify { job, target } => {
            let prep = pipeline::prepare(&job.job(target.clone()))?;
            let ss = prep.semisimplify()?;
            let out = pipeline::certify_prepared(&prep, &ss, target.as_deref())?;
            let c = &out.certificate;
            let inferred = if out.inferred { " (inferred)" } else { "" };
            println!("{} over F_{} at {} against {}{}", prep.source.name, prep.p(), prep.element, out.target, inferred);
            println!("block counts: {:?}", prep.counts());
            println!("superdimension {} expected {}", c.superdim, c.expected_superdim);
            println!("relations {}  generation {}  odd cubes {}", c.relations_pass, c.generation_pass, c.odd_cubes_pass);
            if let Some(t) = &c.even_type {
                println!("even part type {t}");
            }
            for n in &c.notes {
                println!("  note: {n}");
            }
            println!("certificate: {}", c.conclusion);
            if let Some(q) = &out.subquotient {
                println!("generated subquotient {}: {}", q.superdim, q.conclusion);
            }
            println!("conclusion: {}", out.effective);
            emit(&job.json, pipeline::certificate_json(&prep, &ss, &out))?;
            Ok(if out.effective == Conclusion::Refuted { REFUTED } else { 0 })
        }
        Cmd::Table { json } => {
            let rows = pipeline::evaluate_table(&pipeline::golden_rows());
            for r in &rows {
                let what = r.row.target.clone().or(r.row.even_type.clone()).unwrap_or_else(|| "-".into());
                for e in &r.elements {
                    let extra = match (&e.subquotient, &e.even_type) {
                        (Some(q), _) => format!(" subquotient {q}"),
                        (_, Some(t)) => format!(" type {t}"),
                        _ => String::new(),
                    };
                    let concl = e.conclusion.map_or("-".to_string(), |c| c.to_string());
                    println!(
                        "{:4} p={} {:14} {:8} {:?} {} {}{} [{}]",
                        r.row.algebra,
                        r.row.p,
                        e.element,
                        what,
                        e.counts,
                        e.superdim,
                        concl,
                        extra,
                        if e.pass { "ok" } else { "MISMATCH" }
                    );
                }
            }
            let pass = rows.iter().all(|r| r.pass);
            println!("{} of {} rows match", rows.iter().filter(|r| r.pass).count(), rows.len());
            emit(&json, json!({"rows": rows, "pass": pass}))?;
            Ok(if pass { 0 } else { REFUTED })
        }
        Cmd::Swaps { algebra, subset, counts_only, json } => {
            let rep = pipeline::swaps(&algebra, &subset, !counts_only, None)?;
            println!("orbit of {:?} in {} ({} members), target {}", rep.start, rep.algebra, rep.members.len(), rep.target.as_deref().unwrap_or("-"));
            for m in &rep.members {
                let concl = m.result.conclusion.map_or("-".to_string(), |c| c.to_string());
                let sq = m.result.subquotient.map_or(String::new(), |c| format!(" (generated subquotient {c})"));
                println!("  {:?} via {:?}: {:?} {} {}{}", m.subset, m.path, m.result.counts, m.result.superdim, concl, sq);
            }
            println!("counts agree: {}  conclusions agree: {}", rep.counts_agree, rep.conclusions_agree);
            emit(&json, serde_json::to_value(&rep)?)?;
            Ok(if rep.counts_agree && rep.conclusions_agree { 0 } else { REFUTED })
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::JacobiViolation(_)) | Some(Error::NotDiagonalizable(_)) | Some(Error::UnrecognizedType(_)) => INTERNAL,
        Some(_) => INPUT,
        None if e.downcast_ref::<std::io::Error>().is_some() => INPUT,
        None => INTERNAL,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
