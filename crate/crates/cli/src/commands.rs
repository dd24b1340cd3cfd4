use std::path::Path;

use fimod::apps::{admissible_count, arnold_presentation, arnold_table, coinvariant_dim, coinvariant_dual_map, MultiIndex};
use fimod::complexes::{check_inductive, complex_homology, fieldwise_homology, find_n, poset_colimit, verify_chain_homotopy, DEFAULT_PRIMES};
use fimod::dims::{dimension_table, fit_polynomial, tail_equal, DimensionTable, FitReport, FitStatus};
use fimod::fi::{evaluate_slice, FIPresentation, Injection};
use fimod::functors::{derivative, generation_degree, h0_slice, saturate, shift_presentation, torsion_slice, SubmoduleGenerators};
use fimod::linalg::Invariants;
use fimod::suite::{run_suite, Status, SuiteConfig};
use fimod::{Error, Matrix, RingSpec};
use serde_json::Value;

use crate::args::{Cli, CoinvSpec, Command, ModuleRange, Ring};
use crate::report::Outcome;

/// Environment variable overriding the primes of fieldwise reports.
pub const PRIMES_VAR: &str = "FIMOD_PRIMES";

/// Errors that end a run with exit code 3.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type Run<T> = Result<T, UsageError>;

fn load(path: &Path, ring: Option<Ring>) -> Run<FIPresentation> {
    let at = |e: Error| UsageError(format!("{}: {e}", path.display()));
    let p = FIPresentation::load(path).map_err(at)?;
    match ring {
        Some(Ring(r)) if r != p.ring() => p.change_ring(r).map_err(at),
        _ => Ok(p),
    }
}

fn load_table(path: &Path, ring: RingSpec) -> Run<DimensionTable> {
    let text = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    DimensionTable::from_csv(&text, ring).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn primes() -> Run<Vec<u64>> {
    let Ok(text) = std::env::var(PRIMES_VAR) else {
        return Ok(DEFAULT_PRIMES.to_vec());
    };
    text.split(',')
        .map(|t| {
            let p: u64 = t.trim().parse().map_err(|_| UsageError(format!("{PRIMES_VAR}: bad prime {t:?}")))?;
            RingSpec::prime_field(p).map(|_| p).map_err(|e| UsageError(format!("{PRIMES_VAR}: {e}")))
        })
        .collect()
}

fn module_info(out: &mut Outcome, path: &Path, p: &FIPresentation) {
    out.put(
        "module",
        serde_json::json!({
            "path": path.display().to_string(),
            "ring": p.ring().to_string(),
            "hash": p.content_hash(),
        }),
    );
}

fn presentation_value(p: &FIPresentation) -> Value {
    serde_json::from_str(&p.to_json()).expect("presentation documents are JSON")
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.to_dense_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn emit(path: &Path, p: &FIPresentation) -> Run<()> {
    p.save(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn table_outcome(out: &mut Outcome, t: &DimensionTable) -> Run<()> {
    out.table = Some(t.to_csv()?);
    out.put("table", t);
    Ok(())
}

fn fit_outcome(out: &mut Outcome, r: FitReport) {
    match r.status {
        FitStatus::CertifiedOnWindow => out.check("fit", true, r.display.clone()),
        FitStatus::Inconclusive => out.inconclusive("fit", r.explanation.clone()),
    }
    out.put("fit", r);
    out.table = None;
}

fn multi_index(spec: &CoinvSpec) -> Run<MultiIndex> {
    if let Some(r) = spec.r {
        if r != spec.j.len() {
            return Err(UsageError(format!("--r {r} does not match J of length {}", spec.j.len())));
        }
    }
    Ok(MultiIndex::new(spec.j.clone())?)
}

pub fn run(cli: &Cli, progress: &mut dyn FnMut(&str)) -> Run<Outcome> {
    let mut out = Outcome::default();
    match &cli.command {
        Command::Eval(ModuleRange { module, ring, n }) => {
            let p = load(module, *ring)?;
            module_info(&mut out, module, &p);
            table_outcome(&mut out, &dimension_table(&p, n.iter())?)?;
        }
        Command::H0(ModuleRange { module, ring, n }) => {
            let p = load(module, *ring)?;
            module_info(&mut out, module, &p);
            let invs = n.iter().map(|k| Ok(h0_slice(&p, k)?.invariants().clone())).collect::<Run<Vec<Invariants>>>()?;
            table_outcome(&mut out, &DimensionTable::from_invariants(p.ring(), n.start, &invs))?;
            out.put("generation", generation_degree(&p, n.end)?);
        }
        Command::Shift { input, a, emit: target } => {
            let p = load(&input.module, input.ring)?;
            module_info(&mut out, &input.module, &p);
            let s = shift_presentation(&p, *a);
            let mut invs = Vec::new();
            for k in input.n.iter() {
                let shifted = evaluate_slice(&s.presentation, k).invariants().clone();
                let direct = evaluate_slice(&p, k + a).invariants().clone();
                out.check(format!("shift n={k}"), shifted == direct, (shifted != direct).then(|| format!("{shifted:?} vs V_{} {direct:?}", k + a)));
                invs.push(shifted);
            }
            table_outcome(&mut out, &DimensionTable::from_invariants(p.ring(), input.n.start, &invs))?;
            out.put("summands", s.summands.len());
            if let Some(path) = target {
                emit(path, &s.presentation)?;
            }
        }
        Command::Torsion { input, a_max } => {
            let p = load(&input.module, input.ring)?;
            module_info(&mut out, &input.module, &p);
            let mut reports = Vec::new();
            for k in input.n.iter() {
                let r = torsion_slice(&p, k, *a_max)?;
                if !r.stabilized {
                    out.inconclusive(format!("torsion n={k}"), format!("kernels of X_a not stable by a = {a_max}"));
                }
                reports.push(r);
            }
            out.put("torsion", reports);
        }
        Command::Derivative { input, emit: target } => {
            let p = load(&input.module, input.ring)?;
            module_info(&mut out, &input.module, &p);
            let dp = derivative(&p);
            table_outcome(&mut out, &dimension_table(&dp, input.n.iter())?)?;
            out.put("presentation", presentation_value(&dp));
            if let Some(path) = target {
                emit(path, &dp)?;
            }
        }
        Command::Saturate { sub, a_max, slack } => {
            let doc = load(sub, None)?;
            let [d] = doc.degrees() else {
                return Err(UsageError(format!("{}: a submodule document has exactly one generator degree", sub.display())));
            };
            module_info(&mut out, sub, &doc);
            let w = SubmoduleGenerators::new(doc.ring(), *d, doc.relations().to_vec())?;
            let r = saturate(&w, *a_max, *slack);
            match r.n {
                Some(n) => out.check("saturation", true, Some(format!("stable from a = {n}"))),
                None => out.inconclusive("saturation", format!("no stable run of length {slack} by a = {a_max}")),
            }
            out.put("saturation", r);
        }
        Command::Homology { input, a, fieldwise } => {
            let p = load(&input.module, input.ring)?;
            module_info(&mut out, &input.module, &p);
            let primes = primes()?;
            let mut results = Vec::new();
            let mut tables = Vec::new();
            for k in input.n.iter() {
                match complex_homology(&p, k, a) {
                    Ok(h) => results.push(Some(h)),
                    Err(Error::Unsupported(why)) if p.ring() == RingSpec::Integer => {
                        out.inconclusive(format!("homology n={k}"), why);
                        results.push(None);
                    }
                    Err(e) => return Err(e.into()),
                }
                if *fieldwise || results.last().is_some_and(Option::is_none) {
                    tables.push(fieldwise_homology(&p, k, a, &primes)?);
                }
            }
            out.put("homology", results);
            if !tables.is_empty() {
                out.put("fieldwise", tables);
            }
        }
        Command::HomotopyCheck { input, a_max } => {
            let p = load(&input.module, input.ring)?;
            module_info(&mut out, &input.module, &p);
            let mut reports = Vec::new();
            for k in input.n.iter() {
                for a in 0..=*a_max {
                    let c = verify_chain_homotopy(&p, a, k)?;
                    out.check(format!("homotopy a={a} n={k}"), c.passed(), None);
                    reports.push(c);
                }
            }
            out.put("homotopy", reports);
        }
        Command::Colimit { input, bound, mode } => {
            let p = load(&input.module, input.ring)?;
            module_info(&mut out, &input.module, &p);
            let mut rows = Vec::new();
            for k in input.n.iter() {
                let c = poset_colimit(&p, k, *bound, (*mode).into())?;
                rows.push(serde_json::json!({
                    "n": k,
                    "subsets": c.subsets.len(),
                    "colimit": c.module.invariants(),
                    "canonical": c.canonical.is_isomorphism()?,
                }));
            }
            out.put("colimits", rows);
        }
        Command::CheckInductive { input, bound, mode } => {
            let p = load(&input.module, input.ring)?;
            module_info(&mut out, &input.module, &p);
            let mut reports = Vec::new();
            for k in input.n.iter() {
                let c = check_inductive(&p, *bound, k, (*mode).into())?;
                out.check(format!("inductive N={bound} n={k}"), c.passed(), None);
                reports.push(c);
            }
            out.put("checks", reports);
        }
        Command::FindN { module, ring, n_max, verify } => {
            let p = load(module, *ring)?;
            module_info(&mut out, module, &p);
            let r = find_n(&p, *n_max, *verify)?;
            for c in &r.checks {
                out.check(format!("inductive N={} n={}", c.bound, c.n), c.passed(), None);
            }
            out.put("presentation_degree", r);
        }
        Command::Fit { table, ring, min_tail } => {
            let t = load_table(table, ring.0)?;
            fit_outcome(&mut out, fit_polynomial(&t, *min_tail));
        }
        Command::Coinv { spec, n, fit, min_tail } => {
            let j = multi_index(spec)?;
            let rows = n.iter().map(|k| coinvariant_dim(&j, k, spec.ring.0)).collect::<fimod::Result<Vec<_>>>()?;
            let t = DimensionTable::from_values(spec.ring.0, n.start, &rows.iter().map(|r| r.dim).collect::<Vec<_>>());
            table_outcome(&mut out, &t)?;
            out.put("rows", rows);
            if *fit {
                fit_outcome(&mut out, fit_polynomial(&t, *min_tail));
            }
        }
        Command::CoinvMap { spec, f, target } => {
            let j = multi_index(spec)?;
            let f = Injection::new(f.clone(), *target)?;
            let m = coinvariant_dual_map(&j, &f, spec.ring.0)?;
            out.put("shape", [m.rows(), m.cols()]);
            out.put("matrix", matrix_rows(&m));
        }
        Command::Arnold { m, ring, n, fit, min_tail, emit: target } => {
            let t = arnold_table(*m, n.iter(), ring.0)?;
            for row in &t.rows {
                let expected = admissible_count(*m, row.n);
                out.check(format!("admissible n={}", row.n), row.rank == expected, (row.rank != expected).then(|| format!("{} vs {expected}", row.rank)));
            }
            table_outcome(&mut out, &t)?;
            if *fit {
                fit_outcome(&mut out, fit_polynomial(&t, *min_tail));
            }
            if let Some(path) = target {
                emit(path, &arnold_presentation(*m, ring.0)?)?;
            }
        }
        Command::TailEqual { left, right, window, ring } => {
            let a = load_table(left, ring.0)?;
            let b = load_table(right, ring.0)?;
            out.check("tail-equal", tail_equal(&a, &b, *window)?, None);
        }
        Command::Selftest { only } => {
            let config = SuiteConfig { seed: cli.seed, only: only.clone() };
            let r = run_suite(&config, |c| progress(&c.line()));
            for c in &r.criteria {
                let detail = (!c.failures.is_empty()).then(|| c.failures.join("; "));
                match c.status {
                    Status::Inconclusive => out.inconclusive(format!("criterion {}", c.id), detail.unwrap_or_default()),
                    s => out.check(format!("criterion {} {}", c.id, c.name), s == Status::Pass, detail),
                }
            }
            out.put("suite", r);
        }
    }
    Ok(out)
}
