//! Command-line front end: enumerate isoclasses, print product tables, run
//! verification suites, audit bracket conventions, and export double-algebra
//! structure constants.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use hallbridge::double::DoubleAlgebra;
use hallbridge::hall::{Conventions, HallAlgebra};
use hallbridge::harness::{class_label, convention_audit, run_suites, RunConfig, SuiteName};
use hallbridge::quiver::{dim_vectors_up_to, Quiver};
use hallbridge::rep::{Engine, HallStore};
use hallbridge::{Error, Result};

#[derive(Parser)]
#[command(
    name = "hallbridge",
    version,
    about = "Exact Hall-algebra workbench for acyclic quivers over small finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Quiver description file (JSON: {"vertices": [...], "arrows": [...]})
    #[arg(long)]
    quiver: PathBuf,
    /// Field size (a prime)
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Dimension window, one bound per vertex
    #[arg(long, value_delimiter = ',', default_value = "1,1")]
    max_dim: Vec<u32>,
    /// Worker threads for the sweeps
    #[arg(long, default_value_t = default_jobs())]
    jobs: usize,
    /// Directory holding the persistent Hall-number store
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Bracket-form overrides, e.g. "twist=angle,pairing=symmetric"
    #[arg(long)]
    convention: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a quiver file and report its basic invariants
    Validate(Common),
    /// List all isomorphism classes inside the dimension window
    Enumerate(Common),
    /// Print the twisted product table of the module algebra on the window
    Table(Common),
    /// Run verification suites and emit a JSON report
    Verify {
        #[command(flatten)]
        common: Common,
        /// Comma-separated suite names; defaults to every suite
        #[arg(long, value_delimiter = ',')]
        suites: Option<Vec<String>>,
    },
    /// Try all bracket-form assignments and report which ones pass
    Audit(Common),
    /// Export double-algebra structure constants on the window as JSON
    DoubleConstants(Common),
}

fn default_jobs() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Usage(_) | Error::QuiverFormat(_) | Error::Io(_) | Error::Json(_) => 2,
                _ => 1,
            };
            std::process::exit(code);
        }
    }
}

fn load_quiver(c: &Common) -> Result<Quiver> {
    let text = std::fs::read_to_string(&c.quiver)?;
    let q = Quiver::from_json(&text)?;
    if c.max_dim.len() != q.num_vertices() {
        return Err(Error::Usage(format!(
            "--max-dim has {} bounds but the quiver has {} vertices",
            c.max_dim.len(),
            q.num_vertices()
        )));
    }
    Ok(q)
}

fn conventions(c: &Common) -> Result<Conventions> {
    match &c.convention {
        Some(spec) => Conventions::default().with_overrides(spec),
        None => Ok(Conventions::default()),
    }
}

fn engine(c: &Common) -> Result<Engine> {
    let quiver = load_quiver(c)?;
    match &c.cache {
        Some(dir) => {
            let store = HallStore::open(&dir.join("hall-numbers.jsonl"))?;
            Engine::with_store(quiver, c.q, store)
        }
        None => Engine::new(quiver, c.q),
    }
}

fn emit(c: &Common, text: &str) -> Result<()> {
    match &c.out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn print_counters(e: &Engine) {
    let (computed, cache_hits, store_hits) = e.counters.snapshot();
    eprintln!(
        "hall numbers: {computed} computed, {cache_hits} cache hits, {store_hits} store hits"
    );
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Validate(c) => {
            let q = load_quiver(&c)?;
            let na = q.arrows.len();
            let mut lines = vec![format!(
                "ok: {} vertices, {} arrow{}, acyclic",
                q.num_vertices(),
                na,
                if na == 1 { "" } else { "s" }
            )];
            lines.push(format!("fingerprint: {:016x}", q.fingerprint()));
            emit(&c, &lines.join("\n"))?;
            Ok(0)
        }
        Cmd::Enumerate(c) => {
            let e = engine(&c)?;
            let mut lines = Vec::new();
            let mut count = 0usize;
            for d in dim_vectors_up_to(&c.max_dim) {
                for k in e.classes_of_dim(&d)? {
                    lines.push(format!("{}  {}", class_label(&e, &k), e.describe(&k)));
                    count += 1;
                }
            }
            lines.push(format!("{count} classes"));
            emit(&c, &lines.join("\n"))?;
            Ok(0)
        }
        Cmd::Table(c) => {
            let e = engine(&c)?;
            let h = HallAlgebra::with_conventions(&e, conventions(&c)?);
            let mut lines = Vec::new();
            let mut classes = Vec::new();
            for d in dim_vectors_up_to(&c.max_dim) {
                classes.extend(e.classes_of_dim(&d)?);
            }
            for x in &classes {
                for y in &classes {
                    let prod = h.twisted(&h.module(x), &h.module(y))?;
                    lines.push(format!(
                        "[{}]*[{}] = {}",
                        class_label(&e, x),
                        class_label(&e, y),
                        prod.format(&e)
                    ));
                }
            }
            emit(&c, &lines.join("\n"))?;
            print_counters(&e);
            Ok(0)
        }
        Cmd::Verify { common: c, suites } => {
            let names = match suites {
                Some(list) => list
                    .iter()
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse())
                    .collect::<Result<Vec<SuiteName>>>()?,
                None => SuiteName::all(),
            };
            let e = engine(&c)?;
            let cfg = RunConfig {
                quiver_label: c.quiver.display().to_string(),
                q: c.q,
                max_dim: c.max_dim.clone(),
                suites: names,
                conv: conventions(&c)?,
                jobs: c.jobs,
            };
            let report = run_suites(&cfg, &e)?;
            emit(&c, &report.to_json()?)?;
            print_counters(&e);
            Ok(if report.all_passed() { 0 } else { 1 })
        }
        Cmd::Audit(c) => {
            let e = engine(&c)?;
            let cfg = RunConfig {
                quiver_label: c.quiver.display().to_string(),
                q: c.q,
                max_dim: c.max_dim.clone(),
                suites: Vec::new(),
                conv: conventions(&c)?,
                jobs: c.jobs,
            };
            let audit = convention_audit(&cfg, &e)?;
            emit(&c, &serde_json::to_string_pretty(&audit)?)?;
            print_counters(&e);
            Ok(if !audit.conclusive || audit.default_passes {
                0
            } else {
                1
            })
        }
        Cmd::DoubleConstants(c) => {
            let e = engine(&c)?;
            let dbl = DoubleAlgebra::with_conventions(&e, conventions(&c)?);
            let key_json = |k: &hallbridge::hall::HallKey| serde_json::json!({ "module": class_label(&e, &k.0), "k": k.1 });
            let monos = dbl.module_monomials_up_to(&c.max_dim)?;
            let mut rows = Vec::new();
            for a in &monos {
                for b in &monos {
                    let x = hallbridge::double::DoubleElement::term(a.clone(), e.scalar_one());
                    let y = hallbridge::double::DoubleElement::term(b.clone(), e.scalar_one());
                    let prod = dbl.multiply(&x, &y)?;
                    let terms: Vec<serde_json::Value> = prod
                        .terms
                        .iter()
                        .map(|((p, n), coeff)| {
                            serde_json::json!({
                                "pos": key_json(p),
                                "neg": key_json(n),
                                "coeff": coeff.to_string(),
                            })
                        })
                        .collect();
                    rows.push(serde_json::json!({
                        "left": { "pos": key_json(&a.0), "neg": key_json(&a.1) },
                        "right": { "pos": key_json(&b.0), "neg": key_json(&b.1) },
                        "product": terms,
                    }));
                }
            }
            emit(&c, &serde_json::to_string_pretty(&rows)?)?;
            print_counters(&e);
            Ok(0)
        }
    }
}
