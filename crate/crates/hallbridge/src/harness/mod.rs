//! Verification suites, reports, and the command-line front end.
//!
//! A suite is an exhaustive sweep of one structural identity over every
//! instance inside a dimension window.  Sweeps parallelize over instances;
//! reports are sorted before emission so the same configuration always
//! produces byte-identical output regardless of the worker count.

pub mod suites;

use serde::Serialize;

use crate::cyclic::dh::DhAlgebra;
use crate::double::DoubleAlgebra;
use crate::hall::{Conventions, HallAlgebra};
use crate::rep::Engine;
use crate::{Error, Result};

/// The registry of verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    /// Filtration-number associativity, both association orders.
    Assoc,
    /// Compatibility of the coproduct with the twisted product.
    Green,
    /// Multiplicativity of the bilinear pairing against the coproduct.
    Pairing,
    /// Commutation relations of contractible complex classes.
    Commute,
    /// Decompose/reassemble round-trips on complexes of projectives.
    Decomp,
    /// Contractible-peeling identity against brute-force products.
    Peel,
    /// Closed product formulas against from-scratch products.
    Closed,
    /// The commutator relation, first-principles and closed forms.
    Commutator,
    /// The double engine: normal ordering, its defining relation, and the
    /// correspondence with the complex algebra.
    Double,
}

impl SuiteName {
    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Assoc => "assoc",
            SuiteName::Green => "green",
            SuiteName::Pairing => "pairing",
            SuiteName::Commute => "commute",
            SuiteName::Decomp => "decomp",
            SuiteName::Peel => "peel",
            SuiteName::Closed => "closed",
            SuiteName::Commutator => "commutator",
            SuiteName::Double => "double",
        }
    }

    pub fn all() -> Vec<SuiteName> {
        vec![
            SuiteName::Assoc,
            SuiteName::Green,
            SuiteName::Pairing,
            SuiteName::Commute,
            SuiteName::Decomp,
            SuiteName::Peel,
            SuiteName::Closed,
            SuiteName::Commutator,
            SuiteName::Double,
        ]
    }
}

impl std::str::FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<SuiteName> {
        SuiteName::all()
            .into_iter()
            .find(|n| n.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = SuiteName::all().iter().map(|n| n.name()).collect();
                Error::Usage(format!("unknown suite {s:?} (known: {})", known.join(", ")))
            })
    }
}

/// One run's configuration, echoed verbatim into the report.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Free-form origin of the quiver (file path or an inline description).
    pub quiver_label: String,
    pub q: u32,
    pub max_dim: Vec<u32>,
    pub suites: Vec<SuiteName>,
    pub conv: Conventions,
    pub jobs: usize,
}

/// A single verified instance.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub instance: String,
    pub status: String,
    pub lhs: String,
    pub rhs: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    /// Wrap an instance evaluation; evaluation errors become failures that
    /// carry the error text.
    pub fn from_eval(name: &str, instance: String, eval: Result<(bool, String, String)>) -> Check {
        match eval {
            Ok((ok, lhs, rhs)) => Check {
                name: name.into(),
                instance,
                status: if ok { "pass" } else { "fail" }.into(),
                lhs: if ok { String::new() } else { lhs },
                rhs: if ok { String::new() } else { rhs },
            },
            Err(err) => Check {
                name: name.into(),
                instance,
                status: "fail".into(),
                lhs: format!("error: {err}"),
                rhs: String::new(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub quiver: String,
    pub q: u32,
    pub max_dim: Vec<u32>,
    pub suites: Vec<String>,
    pub conventions: String,
}

/// Per-assignment audit outcome.
#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub conventions: String,
    pub green: bool,
    pub pairing: bool,
    pub commutator: bool,
    pub passes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditReport {
    /// False when the window contains too few instances to separate
    /// anything (for example, an all-zero window).
    pub conclusive: bool,
    /// True when the two bilinear forms coincide on this quiver, making
    /// the assignments mutually indistinguishable.
    pub indistinguishable_sites: bool,
    pub assignments: Vec<AuditRow>,
    pub passing: Vec<String>,
    pub default_passes: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub suites: Vec<SuiteReport>,
    pub audit: Option<AuditReport>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
            && self
                .audit
                .as_ref()
                .map_or(true, |a| a.default_passes || !a.conclusive)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn echo(cfg: &RunConfig) -> ConfigEcho {
    ConfigEcho {
        quiver: cfg.quiver_label.clone(),
        q: cfg.q,
        max_dim: cfg.max_dim.clone(),
        suites: cfg.suites.iter().map(|s| s.name().into()).collect(),
        conventions: cfg.conv.describe(),
    }
}

fn worker_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|err| Error::Usage(format!("cannot build worker pool: {err}")))
}

/// Run one suite against a prepared engine and conventions.
pub fn run_one_suite(
    engine: &Engine,
    conv: Conventions,
    suite: SuiteName,
    max: &[u32],
) -> Result<Vec<Check>> {
    let dh = DhAlgebra::with_conventions(engine, conv);
    match suite {
        SuiteName::Assoc => suites::assoc(engine, max),
        SuiteName::Green => suites::green(&HallAlgebra::with_conventions(engine, conv), max),
        SuiteName::Pairing => suites::pairing(&HallAlgebra::with_conventions(engine, conv), max),
        SuiteName::Commute => suites::commute(&dh, max),
        SuiteName::Decomp => suites::decomp(engine, max),
        SuiteName::Peel => suites::peel(&dh, max),
        SuiteName::Closed => suites::closed(&dh, max),
        SuiteName::Commutator => suites::commutator(&dh, max),
        SuiteName::Double => {
            suites::double(&DoubleAlgebra::with_conventions(engine, conv), &dh, max)
        }
    }
}

/// Execute the configured suites and assemble a deterministic report.
pub fn run_suites(cfg: &RunConfig, engine: &Engine) -> Result<Report> {
    let pool = worker_pool(cfg.jobs)?;
    let mut reports = Vec::new();
    for &s in &cfg.suites {
        let mut checks = pool.install(|| run_one_suite(engine, cfg.conv, s, &cfg.max_dim))?;
        checks.sort_by(|a, b| (&a.name, &a.instance).cmp(&(&b.name, &b.instance)));
        let passed = checks.iter().filter(|c| c.passed()).count();
        let failed = checks.len() - passed;
        reports.push(SuiteReport {
            suite: s.name().into(),
            passed,
            failed,
            checks,
        });
    }
    Ok(Report {
        config: echo(cfg),
        suites: reports,
        audit: None,
    })
}

/// Try all eight bracket-form assignments on the discriminating suites and
/// report which ones pass.  The default (all symmetric) must be among the
/// survivors; anything else is a hard inconsistency.
pub fn convention_audit(cfg: &RunConfig, engine: &Engine) -> Result<AuditReport> {
    if cfg.max_dim.iter().all(|&d| d == 0) {
        return Ok(AuditReport {
            conclusive: false,
            indistinguishable_sites: false,
            assignments: Vec::new(),
            passing: Vec::new(),
            default_passes: false,
        });
    }
    // the two candidate forms coincide exactly when the Euler form is
    // already symmetric on this quiver
    let n = engine.num_vertices();
    let basis = |i: usize| -> Vec<i64> {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    let mut indistinguishable = true;
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (basis(i), basis(j));
            if engine.quiver.euler_form(&bi, &bj) != engine.quiver.sym_form(&bi, &bj) {
                indistinguishable = false;
            }
        }
    }

    let pool = worker_pool(cfg.jobs)?;
    let mut rows = Vec::new();
    for conv in Conventions::all() {
        let all_pass = |suite: SuiteName| -> Result<bool> {
            let checks = pool.install(|| run_one_suite(engine, conv, suite, &cfg.max_dim))?;
            Ok(!checks.is_empty() && checks.iter().all(|c| c.passed()))
        };
        let green = all_pass(SuiteName::Green)?;
        let pairing = all_pass(SuiteName::Pairing)?;
        let commutator = all_pass(SuiteName::Commutator)?;
        rows.push(AuditRow {
            conventions: conv.describe(),
            green,
            pairing,
            commutator,
            passes: green && pairing && commutator,
        });
    }
    let passing: Vec<String> = rows
        .iter()
        .filter(|r| r.passes)
        .map(|r| r.conventions.clone())
        .collect();
    let default_passes = passing.contains(&Conventions::default().describe());
    if passing.is_empty() {
        return Err(Error::Internal(format!(
            "no bracket-form assignment satisfies the discriminating suites; rows: {rows:?}"
        )));
    }
    Ok(AuditReport {
        conclusive: true,
        indistinguishable_sites: indistinguishable,
        assignments: rows,
        passing,
        default_passes,
    })
}

/// Convenience wrapper: run the suites and attach the audit verdict.
pub fn run_with_audit(cfg: &RunConfig, engine: &Engine) -> Result<Report> {
    let mut report = run_suites(cfg, engine)?;
    report.audit = Some(convention_audit(cfg, engine)?);
    Ok(report)
}

/// Canonical short label of a class: its dimension vector plus a
/// disambiguating index among the classes of that dimension, e.g. `(1,1)#0`.
pub fn class_label(e: &Engine, k: &crate::rep::IsoKey) -> String {
    let d = e.dim_of(k);
    let idx = e
        .classes_of_dim(&d)
        .ok()
        .and_then(|v| v.iter().position(|x| x == k))
        .unwrap_or(0);
    let ds: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})#{idx}", ds.join(","))
}

/// All (label, key) pairs inside the window, in a fixed order.  Labels are
/// the dimension vector plus a disambiguating index among classes of that
/// dimension.
pub(crate) fn labeled_classes(
    e: &Engine,
    max: &[u32],
) -> Result<Vec<(String, crate::rep::IsoKey)>> {
    let mut out = Vec::new();
    for d in crate::quiver::dim_vectors_up_to(max) {
        for (i, k) in e.classes_of_dim(&d)?.iter().enumerate() {
            let dims: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            out.push((format!("({})#{i}", dims.join(",")), k.clone()));
        }
    }
    Ok(out)
}

pub(crate) use rayon_checks::par_map_checks;

mod rayon_checks {
    use super::Check;
    use rayon::prelude::*;

    /// Evaluate instances in parallel, preserving input order.
    pub fn par_map_checks<I, F>(instances: Vec<I>, f: F) -> Vec<Check>
    where
        I: Send + Sync,
        F: Fn(&I) -> Check + Sync + Send,
    {
        instances.par_iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::testutil::a2;

    fn cfg(suites: Vec<SuiteName>, max: Vec<u32>, jobs: usize) -> RunConfig {
        RunConfig {
            quiver_label: "two vertices, one arrow".into(),
            q: 2,
            max_dim: max,
            suites,
            conv: Conventions::default(),
            jobs,
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in SuiteName::all() {
            assert_eq!(s.name().parse::<SuiteName>().unwrap(), s);
        }
        assert!("nope".parse::<SuiteName>().is_err());
    }

    #[test]
    fn empty_suite_list_yields_an_empty_passing_report() {
        let e = Engine::new(a2(), 2).unwrap();
        let rep = run_suites(&cfg(vec![], vec![1, 1], 1), &e).unwrap();
        assert!(rep.all_passed());
        assert!(rep.suites.is_empty());
    }

    #[test]
    fn every_suite_passes_on_the_small_window() {
        let e = Engine::new(a2(), 2).unwrap();
        let rep = run_suites(&cfg(SuiteName::all(), vec![1, 1], 2), &e).unwrap();
        for s in &rep.suites {
            let bad: Vec<&Check> = s.checks.iter().filter(|c| !c.passed()).take(3).collect();
            assert_eq!(s.failed, 0, "suite {} failed: {bad:?}", s.suite);
            assert!(s.passed > 0, "suite {} is empty", s.suite);
        }
        assert!(rep.all_passed());
    }

    #[test]
    fn reports_do_not_depend_on_the_worker_count() {
        let e = Engine::new(a2(), 2).unwrap();
        let picks = vec![SuiteName::Assoc, SuiteName::Peel];
        let a = run_suites(&cfg(picks.clone(), vec![1, 1], 1), &e).unwrap();
        let b = run_suites(&cfg(picks, vec![1, 1], 4), &e).unwrap();
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn the_audit_names_the_default_assignment() {
        let e = Engine::new(a2(), 2).unwrap();
        let audit = convention_audit(&cfg(vec![], vec![1, 1], 2), &e).unwrap();
        assert!(audit.conclusive);
        assert!(!audit.indistinguishable_sites);
        assert!(audit.default_passes);
        assert!(audit.passing.contains(&Conventions::default().describe()));
    }

    #[test]
    fn the_audit_declines_an_empty_window() {
        let e = Engine::new(a2(), 2).unwrap();
        let audit = convention_audit(&cfg(vec![], vec![0, 0], 1), &e).unwrap();
        assert!(!audit.conclusive);
        assert!(audit.assignments.is_empty());
    }
}
