//! One runner per suite. Cells are checked in grid order; trials inside a
//! cell fan out over the worker pool and are merged by trial index, so the
//! report does not depend on scheduling.

use std::time::Instant;

use rand::Rng;

use crate::constructions::families::{sample, Family};
use crate::constructions::{
    ai0_witness, curve_side_oracle, elliptic::elliptic_free_points, elliptic_quartic_points, plane_cubic_points, reducible_rnc_points, rnc_points,
    PlaneCubicMode,
};
use crate::critical::find_critical;
use crate::linalg::PrimeField;
use crate::parallel::{par_map_range, Exec};
use crate::projgeom::{monomial_count, random_point, Point, Subspace};
use crate::seed;
use crate::terracini::{check_member_bounds, first_violating_subset, is_minimally_terracini, is_t1, rho};
use crate::witness::{classify_with, WitnessOptions};

use super::config::{SuiteConfig, SuiteId};
use super::report::{
    CellKind, CellReport, Check, Counterexample, CriticalSummary, Environment, Failure, MemberRecord, Refutation, SuiteReport, TrialRecord,
    EVIDENCE_LABEL,
};
use super::HarnessError;

const SAMPLE_RETRIES: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expect {
    Minimal,
    Terracini,
}

/// What an emptiness cell forbids and what it records for hits.
#[derive(Debug, Clone, Copy)]
struct Emptiness {
    /// Forbid Terracini sets, not just minimal ones.
    forbid_terracini: bool,
    classify: bool,
    exclude: &'static [Family],
}

impl Emptiness {
    const MINIMAL: Emptiness = Emptiness {
        forbid_terracini: false,
        classify: false,
        exclude: &[],
    };
    const MINIMAL_CLASSIFIED: Emptiness = Emptiness {
        forbid_terracini: false,
        classify: true,
        exclude: &[],
    };
    const TERRACINI: Emptiness = Emptiness {
        forbid_terracini: true,
        classify: false,
        exclude: &[],
    };
}

struct TrialOutcome {
    record: Option<TrialRecord>,
    counterexample: Option<Counterexample>,
    classification_failure: Option<String>,
    retries: u32,
}

struct Runner<'a> {
    cfg: &'a SuiteConfig,
    fields: Vec<PrimeField>,
    opts: WitnessOptions,
    cells: Vec<CellReport>,
    counterexamples: Vec<Counterexample>,
    bound_violations: Vec<Failure>,
    classification_failures: Vec<Failure>,
}

fn ceil_half(a: usize) -> usize {
    a.div_ceil(2)
}

impl<'a> Runner<'a> {
    fn new(cfg: &'a SuiteConfig) -> Result<Self, HarnessError> {
        Ok(Self {
            cfg,
            fields: cfg.fields()?,
            opts: WitnessOptions {
                budget: cfg.budget,
                exec: Exec::Sequential,
            },
            cells: Vec::new(),
            counterexamples: Vec::new(),
            bound_violations: Vec::new(),
            classification_failures: Vec::new(),
        })
    }

    fn field(&self) -> PrimeField {
        self.fields[0]
    }

    fn cell_seed(&self, n: usize, d: usize, x: usize, tag: &str) -> u64 {
        seed::derive(
            self.cfg.seed,
            &[seed::label(self.cfg.suite.as_str()), seed::label(tag), n as u64, d as u64, x as u64],
        )
    }

    fn xs(&self, default: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let all: Vec<usize> = default.into_iter().collect();
        match &self.cfg.grid.x {
            Some(keep) => all.into_iter().filter(|x| keep.contains(x)).collect(),
            None => all,
        }
    }

    fn nd(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &n in &self.cfg.grid.n {
            for &d in &self.cfg.grid.d {
                out.push((n, d));
            }
        }
        out
    }

    /// Certificate, bounds and critical scheme for one constructed set.
    fn verify_member(
        &mut self,
        field: PrimeField,
        source: &str,
        seed: u64,
        points: &[Point],
        d: usize,
        expect: Expect,
    ) -> Result<MemberRecord, HarnessError> {
        let cert = is_minimally_terracini(field, points, d, self.cfg.exec)?.with_seed(seed);
        let (n, x) = (cert.n, cert.x);
        let mut checks = vec![match expect {
            Expect::Minimal => Check::holds("minimally_terracini", cert.is_minimal()),
            Expect::Terracini => Check::holds("terracini", cert.terracini),
        }];
        checks.push(Check::holds("certificate_consistent", cert.is_consistent()));
        let mut bounds = Vec::new();
        let mut critical = None;
        if cert.is_minimal() {
            bounds = check_member_bounds(field, &cert)?;
            for b in bounds.iter().filter(|b| !b.holds) {
                self.bound_violations.push(Failure {
                    n,
                    d,
                    x,
                    what: format!("{source}: {} = {} exceeds {}", b.name, b.value, b.limit),
                });
            }
            match find_critical(field, points, d) {
                Ok(c) => {
                    let summary = CriticalSummary {
                        degree: c.scheme.degree(),
                        h1: c.h1,
                        full_support: c.has_full_support(points),
                    };
                    if summary.h1 != 1 || !summary.full_support {
                        self.bound_violations.push(Failure {
                            n,
                            d,
                            x,
                            what: format!("{source}: critical scheme h1 = {}, full support {}", summary.h1, summary.full_support),
                        });
                    }
                    critical = Some(summary);
                }
                Err(e) => self.bound_violations.push(Failure {
                    n,
                    d,
                    x,
                    what: format!("{source}: no critical scheme: {e}"),
                }),
            }
        }
        let ok = checks.iter().all(|c| c.holds) && bounds.iter().all(|b| b.holds) && critical.as_ref().is_none_or(|c| c.h1 == 1 && c.full_support);
        Ok(MemberRecord {
            source: source.to_string(),
            seed,
            certificate: cert,
            bounds,
            critical,
            checks,
            ok,
        })
    }

    /// Builds and verifies the construction once per configured prime.
    fn members<F>(&mut self, cell: &mut CellReport, source: &str, seed: u64, expect: Expect, build: F) -> Result<(), HarnessError>
    where
        F: Fn(PrimeField, u64) -> Result<Vec<Point>, HarnessError>,
    {
        for field in self.fields.clone() {
            let pts = build(field, seed)?;
            let m = self.verify_member(field, source, seed, &pts, cell.d, expect)?;
            cell.members.push(m);
        }
        Ok(())
    }

    fn draw(&self, family: Family, n: usize, x: usize, seed: u64) -> (Option<Vec<Point>>, u32) {
        for r in 0..SAMPLE_RETRIES {
            let s = if r == 0 { seed } else { seed::derive(seed, &[r]) };
            if let Some(pts) = sample(self.field(), family, n, x, &mut seed::rng(s)) {
                return (Some(pts), r as u32);
            }
        }
        (None, SAMPLE_RETRIES as u32)
    }

    #[allow(clippy::too_many_arguments)]
    fn trial(&self, n: usize, d: usize, x: usize, i: usize, family: Family, seed: u64, spec: Emptiness) -> Result<TrialOutcome, HarnessError> {
        let field = self.field();
        let (pts, retries) = self.draw(family, n, x, seed);
        let Some(pts) = pts else {
            return Ok(TrialOutcome {
                record: None,
                counterexample: None,
                classification_failure: None,
                retries,
            });
        };
        let cert = is_t1(field, &pts, d)?;
        let mut record = TrialRecord {
            trial: i,
            family,
            seed,
            h0: cert.h0,
            h1: cert.h1,
            refutation: None,
            witness: None,
        };
        let mut counterexample = None;
        let mut classification_failure = None;
        record.refutation = if cert.span_dim < n {
            Some(Refutation::SpanDeficient { span_dim: cert.span_dim })
        } else if cert.h0 == 0 {
            Some(Refutation::NoSections)
        } else if cert.h1 == 0 {
            Some(Refutation::Independent)
        } else if spec.forbid_terracini {
            None
        } else {
            first_violating_subset(field, &pts, d)?.map(|(omitted, subset_h1)| Refutation::ViolatingSubset { omitted, subset_h1 })
        };
        let hit = cert.terracini;
        if record.refutation.is_none() {
            let full = is_minimally_terracini(field, &pts, d, Exec::Sequential)?.with_seed(seed);
            counterexample = Some(Counterexample {
                suite: self.cfg.suite,
                n,
                d,
                x,
                trial: i,
                family,
                seed,
                points: pts.clone(),
                certificate: full,
            });
        }
        if hit && spec.classify && (n == 2 || n == 3) {
            match find_critical(field, &pts, d)
                .map_err(|e| e.to_string())
                .and_then(|c| classify_with(field, &c.scheme, d, &self.opts).map_err(|e| e.to_string()))
            {
                Ok(w) => record.witness = Some(w),
                Err(e) => classification_failure = Some(e),
            }
        }
        Ok(TrialOutcome {
            record: Some(record),
            counterexample,
            classification_failure,
            retries,
        })
    }

    /// `uniform` random trials, then `structured` ones cycling through the
    /// applicable structured families.
    fn emptiness(&mut self, n: usize, d: usize, x: usize, uniform: usize, structured: usize, spec: Emptiness) -> Result<CellReport, HarnessError> {
        let start = Instant::now();
        let mut cell = CellReport::new(n, d, x, CellKind::Emptiness);
        let fams: Vec<Family> = Family::applicable(n, x)
            .into_iter()
            .filter(|f| *f != Family::Uniform && !spec.exclude.contains(f))
            .collect();
        let base = self.cell_seed(n, d, x, "emptiness");
        let total = uniform + structured;
        let outcomes = par_map_range(total, self.cfg.exec.effective(), |i| {
            let family = if i < uniform || fams.is_empty() {
                Family::Uniform
            } else {
                fams[(i - uniform) % fams.len()]
            };
            self.trial(n, d, x, i, family, seed::derive(base, &[i as u64]), spec)
        });
        for o in outcomes {
            let o = o?;
            cell.retries += o.retries;
            if let Some(c) = o.counterexample {
                self.counterexamples.push(c);
            }
            if let Some(e) = o.classification_failure {
                self.classification_failures.push(Failure { n, d, x, what: e });
            }
            match o.record {
                Some(r) => cell.trials.push(r),
                None => cell.notes.push("sampling gave up after repeated coincidences".into()),
            }
        }
        cell.timing_ms = start.elapsed().as_millis();
        Ok(cell)
    }

    fn push(&mut self, mut cell: CellReport, start: Instant) {
        cell.timing_ms = start.elapsed().as_millis();
        self.cells.push(cell);
    }

    fn finish(self, start: Instant) -> SuiteReport {
        let mut failed_checks = Vec::new();
        for c in &self.cells {
            for m in c.members.iter().filter(|m| !m.ok) {
                failed_checks.push(Failure {
                    n: c.n,
                    d: c.d,
                    x: c.x,
                    what: format!("{} (seed {}) did not verify", m.source, m.seed),
                });
            }
            for k in c.checks.iter().filter(|k| !k.holds) {
                failed_checks.push(Failure {
                    n: c.n,
                    d: c.d,
                    x: c.x,
                    what: format!("{}: got {}, expected {}", k.name, k.value, k.expected),
                });
            }
        }
        let passed = self.counterexamples.is_empty()
            && self.bound_violations.is_empty()
            && self.classification_failures.is_empty()
            && failed_checks.is_empty();
        SuiteReport {
            schema_version: super::report::SCHEMA_VERSION,
            suite: self.cfg.suite,
            statement: self.cfg.suite.statement(),
            label: EVIDENCE_LABEL,
            config: self.cfg.clone(),
            cells: self.cells,
            counterexamples: self.counterexamples,
            bound_violations: self.bound_violations,
            classification_failures: self.classification_failures,
            failed_checks,
            passed,
            environment: Environment::current(),
            timing_ms: start.elapsed().as_millis(),
        }
    }
}

fn general(field: PrimeField, n: usize, x: usize, seed: u64) -> Vec<Point> {
    let mut rng = seed::rng(seed);
    (0..x).map(|_| random_point(field, n, &mut rng)).collect()
}

/// Runs one suite. Counterexamples are reported, not raised; see
/// `SuiteReport::into_result`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let start = Instant::now();
    let mut r = Runner::new(cfg)?;
    match cfg.suite {
        SuiteId::Ah => ah(&mut r)?,
        SuiteId::Ai0 => {
            ai0_positive(&mut r)?;
            small_sets_empty(&mut r)?;
        }
        SuiteId::P43 => small_sets_empty(&mut r)?,
        SuiteId::A90 => a90(&mut r)?,
        SuiteId::Rob1 => rob1(&mut r)?,
        SuiteId::De2 => de2(&mut r)?,
        SuiteId::N2a1 => n2a1(&mut r)?,
        SuiteId::Ooo1 => ooo1(&mut r)?,
        SuiteId::N31 => n31(&mut r)?,
        SuiteId::Ceo1 => ceo1(&mut r)?,
        SuiteId::Ex4d => ex4d(&mut r)?,
        SuiteId::Oo1 => oo1(&mut r)?,
        SuiteId::Prepa1 => prepa1(&mut r)?,
    }
    Ok(r.finish(start))
}

fn ah(r: &mut Runner) -> Result<(), HarnessError> {
    const CELLS: [(usize, usize, usize); 4] = [(2, 4, 5), (3, 4, 9), (4, 4, 14), (4, 3, 7)];
    for (n, d, x) in CELLS {
        if !r.cfg.grid.n.contains(&n) || !r.cfg.grid.d.contains(&d) {
            continue;
        }
        let start = Instant::now();
        let mut cell = CellReport::new(n, d, x, CellKind::Positive);
        let s = r.cell_seed(n, d, x, "general");
        r.members(&mut cell, "general points", s, Expect::Minimal, |f, s| Ok(general(f, n, x, s)))?;
        let expected = match (n, d) {
            (2, 4) => Some((1, 1)),
            (3, 4) => Some((1, 2)),
            _ => None,
        };
        if let Some((h0, h1)) = expected {
            for m in &cell.members {
                let got = (m.certificate.h0, m.certificate.h1);
                cell.checks.push(Check::eq("h0_h1", format!("{got:?}"), format!("{:?}", (h0, h1))));
            }
        }
        r.push(cell, start);
    }
    Ok(())
}

fn ai0_positive(r: &mut Runner) -> Result<(), HarnessError> {
    for (n, d) in r.nd() {
        if n < 2 || d < 3 || (n, d) == (2, 3) {
            continue;
        }
        let lo = n + ceil_half(d);
        for x in r.xs(lo..=lo + 3) {
            let start = Instant::now();
            let mut cell = CellReport::new(n, d, x, CellKind::Positive);
            let s = r.cell_seed(n, d, x, "ai0");
            r.members(&mut cell, "ai0 configuration", s, Expect::Terracini, |f, s| {
                Ok(ai0_witness(f, n, d, x, s)?)
            })?;
            r.push(cell, start);
        }
    }
    Ok(())
}

/// No Terracini set with `n + 1 <= x < n + ⌈d/2⌉`.
fn small_sets_empty(r: &mut Runner) -> Result<(), HarnessError> {
    for (n, d) in r.nd() {
        if n < 2 || d < 3 || (n, d) == (2, 3) {
            continue;
        }
        for x in r.xs(n + 1..n + ceil_half(d)) {
            let cell = r.emptiness(n, d, x, r.cfg.trials, r.cfg.structured_trials, Emptiness::TERRACINI)?;
            r.cells.push(cell);
        }
    }
    Ok(())
}

fn a90(r: &mut Runner) -> Result<(), HarnessError> {
    for (n, d) in r.nd() {
        if n < 2 || d < 4 {
            continue;
        }
        let x = 1 + ceil_half(n * d);
        let start = Instant::now();
        let mut cell = CellReport::new(n, d, x, CellKind::Positive);
        let s = r.cell_seed(n, d, x, "rnc");
        r.members(&mut cell, "rational normal curve", s, Expect::Minimal, |f, s| {
            Ok(rnc_points(f, n, x, s)?.points)
        })?;
        let spec = rnc_points(r.field(), n, x, s)?.spec;
        if let Some(expected) = curve_side_oracle(&spec, x, d) {
            for m in &cell.members {
                cell.checks.push(Check::at_least("h1_at_least_curve_side", m.certificate.h1, expected));
            }
            cell.notes.push(format!("curve-side h1 = {expected}"));
        }
        r.push(cell, start);

        let below = ceil_half(n * d);
        let start = Instant::now();
        let mut cell = CellReport::new(n, d, below, CellKind::Consistency);
        for field in r.fields.clone() {
            let pts = rnc_points(field, n, below, r.cell_seed(n, d, below, "rnc"))?.points;
            cell.checks.push(Check::eq("h1_below_threshold", is_t1(field, &pts, d)?.h1, 0));
        }
        r.push(cell, start);
    }
    Ok(())
}

fn rob1(r: &mut Runner) -> Result<(), HarnessError> {
    for (n, d) in r.nd() {
        if n < 2 || d < 4 {
            continue;
        }
        let x = 1 + ceil_half(n * d);
        let start = Instant::now();
        let mut cell = CellReport::new(n, d, x, CellKind::Positive);
        let s = r.cell_seed(n, d, x, "rnc");
        r.members(&mut cell, "rational normal curve", s, Expect::Minimal, |f, s| {
            Ok(rnc_points(f, n, x, s)?.points)
        })?;
        if n == 2 && d % 2 == 0 && d >= 6 {
            r.members(&mut cell, "plane cubic complete intersection", s, Expect::Minimal, |f, s| {
                Ok(plane_cubic_points(f, d, PlaneCubicMode::CompleteIntersection, s)?.points)
            })?;
        }
        let field = r.field();
        for m in cell.members.clone() {
            if !m.certificate.is_minimal() {
                continue;
            }
            let pts = &m.certificate.points;
            for t in d + 1..=d + 2 {
                cell.checks.push(Check::holds(
                    format!("{}: not terracini in degree {t}", m.source),
                    !is_t1(field, pts, t)?.terracini,
                ));
            }
            for t in 2..d {
                let c = is_minimally_terracini(field, pts, t, r.cfg.exec)?;
                cell.checks
                    .push(Check::holds(format!("{}: not minimal in degree {t}", m.source), !c.is_minimal()));
            }
        }
        r.push(cell, start);
    }
    Ok(())
}

/// Compositions of `x` into `k` positive parts.
fn compositions(x: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return if x >= 1 { vec![vec![x]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..x {
        for mut rest in compositions(x - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn chains(n: usize) -> Vec<Vec<usize>> {
    match n {
        2 => vec![vec![1, 1]],
        3 => vec![vec![1, 2], vec![2, 1], vec![1, 1, 1]],
        4 => vec![vec![1, 3], vec![2, 2], vec![1, 2, 1], vec![1, 1, 2]],
        _ => Vec::new(),
    }
}

/// Every allocation of `x` smooth points on each chain (and, in the plane,
/// allocations plus the node). Members must satisfy the necessary
/// conditions; in the plane the balanced split for odd `d` must be a member.
fn reducible_cell(r: &mut Runner, n: usize, d: usize, x: usize) -> Result<CellReport, HarnessError> {
    let start = Instant::now();
    let mut cell = CellReport::new(n, d, x, CellKind::Consistency);
    let field = r.field();
    let mut tried = 0;
    let mut found = 0;
    for (ci, chain) in chains(n).into_iter().enumerate() {
        let mut variants: Vec<(Vec<usize>, bool)> = compositions(x, chain.len()).into_iter().map(|a| (a, false)).collect();
        if n == 2 {
            variants.extend(compositions(x - 1, 2).into_iter().map(|a| (a, true)));
        }
        for (ai, (alloc, node)) in variants.into_iter().enumerate() {
            let s = seed::derive(r.cell_seed(n, d, x, "reducible"), &[ci as u64, ai as u64, node as u64]);
            let nodes: &[usize] = if node { &[0] } else { &[] };
            let pts = reducible_rnc_points(field, &chain, &alloc, nodes, s)?.points;
            let cert = is_minimally_terracini(field, &pts, d, Exec::Sequential)?;
            tried += 1;
            let last = chain.len() - 1;
            let final_ok = [0, last].iter().all(|&i| chain[i] % 2 == 1 && 2 * alloc[i] == chain[i] * d + 1);
            let allowed = !node && n.is_multiple_of(2) && d % 2 == 1 && final_ok;
            let name = format!("chain {chain:?} allocation {alloc:?} node {node}");
            if cert.is_minimal() {
                found += 1;
                cell.checks
                    .push(Check::holds(format!("{name}: member satisfies the necessary conditions"), allowed));
                let m = r.verify_member(field, &name, s, &pts, d, Expect::Minimal)?;
                cell.members.push(m);
            }
            let balanced = n == 2 && !node && d % 2 == 1 && alloc == [d.div_ceil(2), d.div_ceil(2)];
            if balanced {
                cell.checks
                    .push(Check::holds(format!("{name}: balanced split is a member"), cert.is_minimal()));
            }
        }
    }
    cell.notes.push(format!("{tried} allocations examined, {found} members"));
    cell.timing_ms = start.elapsed().as_millis();
    Ok(cell)
}

fn de2(r: &mut Runner) -> Result<(), HarnessError> {
    for (n, d) in r.nd() {
        if !(2..=4).contains(&n) || d < 5 {
            continue;
        }
        let x = 1 + ceil_half(n * d);
        if r.xs([x]).is_empty() {
            continue;
        }
        let cell = reducible_cell(r, n, d, x)?;
        r.cells.push(cell);
    }
    Ok(())
}

fn n2a1(r: &mut Runner) -> Result<(), HarnessError> {
    let (u, s) = (r.cfg.trials, r.cfg.structured_trials);
    for &d in &r.cfg.grid.d.clone() {
        if d < 4 {
            continue;
        }
        for x in r.xs(3..=d) {
            let cell = r.emptiness(2, d, x, u, s, Emptiness::MINIMAL_CLASSIFIED)?;
            r.cells.push(cell);
        }
        let x = d + 1;
        if !r.xs([x]).is_empty() {
            let start = Instant::now();
            let mut cell = CellReport::new(2, d, x, CellKind::Positive);
            let seed = r.cell_seed(2, d, x, "conic");
            r.members(
                &mut cell,
                "smooth conic",
                seed,
                Expect::Minimal,
                |f, s| Ok(rnc_points(f, 2, x, s)?.points),
            )?;
            r.push(cell, start);
            let cell = reducible_cell(r, 2, d, x)?;
            r.cells.push(cell);
        }
        if d >= 5 {
            for x in r.xs(d + 2..(3 * d).div_ceil(2)) {
                let cell = r.emptiness(2, d, x, u, s, Emptiness::MINIMAL_CLASSIFIED)?;
                r.cells.push(cell);
            }
        }
        if d == 6 && !r.xs([9]).is_empty() {
            let start = Instant::now();
            let mut cell = CellReport::new(2, 6, 9, CellKind::Positive);
            let seed = r.cell_seed(2, 6, 9, "cubic");
            r.members(&mut cell, "plane cubic complete intersection", seed, Expect::Minimal, |f, s| {
                Ok(plane_cubic_points(f, 6, PlaneCubicMode::CompleteIntersection, s)?.points)
            })?;
            r.push(cell, start);
        }
        if d == 7 && !r.xs([11]).is_empty() {
            let start = Instant::now();
            let mut cell = CellReport::new(2, 7, 11, CellKind::Positive);
            let seed = r.cell_seed(2, 7, 11, "cubic");
            r.members(&mut cell, "plane cubic free points", seed, Expect::Minimal, |f, s| {
                Ok(plane_cubic_points(f, 7, PlaneCubicMode::FreePoints, s)?.points)
            })?;
            let field = r.field();
            let ten = crate::constructions::cubic::plane_cubic_free_points(field, 10, seed)?.points;
            cell.checks.push(Check::eq("ten_points_on_cubic_h1", is_t1(field, &ten, 7)?.h1, 0));
            r.push(cell, start);
        }
    }
    Ok(())
}

fn ooo1(r: &mut Runner) -> Result<(), HarnessError> {
    let (u, s) = (r.cfg.trials, r.cfg.structured_trials);
    for &d in &r.cfg.grid.d.clone() {
        if d < 4 {
            continue;
        }
        for x in r.xs(4..=(3 * d).div_ceil(2)) {
            let cell = r.emptiness(3, d, x, u, s, Emptiness::MINIMAL_CLASSIFIED)?;
            r.cells.push(cell);
        }
    }
    Ok(())
}

fn n31(r: &mut Runner) -> Result<(), HarnessError> {
    const NON_RNC: Emptiness = Emptiness {
        forbid_terracini: false,
        classify: false,
        exclude: &[Family::RncSubset],
    };
    for &d in &r.cfg.grid.d.clone() {
        for x in r.xs([1 + ceil_half(3 * d)]) {
            let start = Instant::now();
            let mut cell = CellReport::new(3, d, x, CellKind::Positive);
            for k in 0..3u64 {
                let s = seed::derive(r.cell_seed(3, d, x, "rnc"), &[k]);
                r.members(&mut cell, "rational normal curve", s, Expect::Minimal, |f, s| {
                    Ok(rnc_points(f, 3, x, s)?.points)
                })?;
            }
            r.push(cell, start);
            let cell = r.emptiness(3, d, x, r.cfg.trials, r.cfg.structured_trials, NON_RNC)?;
            r.cells.push(cell);
        }
    }
    Ok(())
}

fn ceo1(r: &mut Runner) -> Result<(), HarnessError> {
    for &d in &r.cfg.grid.d.clone() {
        let lo = 1 + ceil_half(3 * d);
        if !r.xs([lo]).is_empty() {
            let start = Instant::now();
            let mut cell = CellReport::new(3, d, lo, CellKind::Positive);
            let s = r.cell_seed(3, d, lo, "rnc");
            r.members(&mut cell, "rational normal curve", s, Expect::Minimal, |f, s| {
                Ok(rnc_points(f, 3, lo, s)?.points)
            })?;
            r.push(cell, start);
        }
        for x in r.xs(lo + 1..2 * d) {
            let cell = r.emptiness(3, d, x, r.cfg.trials, r.cfg.structured_trials, Emptiness::MINIMAL)?;
            r.cells.push(cell);
        }
        if !r.xs([2 * d]).is_empty() {
            let start = Instant::now();
            let (de, note) = if d % 2 == 0 {
                (d, None)
            } else {
                (
                    d - 1,
                    Some(format!(
                        "x = 2d with d = {d} odd needs the elliptic group law; verified d = {} instead",
                        d - 1
                    )),
                )
            };
            let mut cell = CellReport::new(3, de, 2 * de, CellKind::Positive);
            cell.notes.extend(note);
            if de >= 6 {
                let s = r.cell_seed(3, de, 2 * de, "elliptic");
                r.members(&mut cell, "elliptic quartic", s, Expect::Minimal, |f, s| {
                    Ok(elliptic_quartic_points(f, de, s)?.points)
                })?;
            }
            r.push(cell, start);
        }
    }
    Ok(())
}

fn ex4d(r: &mut Runner) -> Result<(), HarnessError> {
    for &d in &r.cfg.grid.d.clone() {
        if d < 6 || d % 2 == 1 {
            continue;
        }
        let x = 2 * d;
        let start = Instant::now();
        let mut cell = CellReport::new(3, d, x, CellKind::Positive);
        let s = r.cell_seed(3, d, x, "elliptic");
        r.members(&mut cell, "elliptic quartic", s, Expect::Minimal, |f, s| {
            Ok(elliptic_quartic_points(f, d, s)?.points)
        })?;
        for m in cell.members.clone() {
            cell.checks.push(Check::eq("h1_exactly_one", m.certificate.h1, 1));
            cell.checks.push(Check::holds(
                "every maximal subset independent",
                m.certificate.subset_h1.len() == x && m.certificate.subset_h1.iter().all(|&h| h == 0),
            ));
        }
        let field = r.field();
        let sample = elliptic_quartic_points(field, d, s)?;
        if let Some(v) = curve_side_oracle(&sample.spec, x, d) {
            cell.checks.push(Check::eq("curve_side_h1", v, 1));
        }
        let free = elliptic_free_points(field, x - 1, s)?.points;
        cell.checks.push(Check::eq("fewer_free_points_h1", is_t1(field, &free, d)?.h1, 0));
        r.push(cell, start);
    }
    Ok(())
}

fn oo1(r: &mut Runner) -> Result<(), HarnessError> {
    let (u, s) = (r.cfg.trials, r.cfg.structured_trials);
    for (n, d) in r.nd() {
        if n < 2 || d < 3 {
            continue;
        }
        let c = monomial_count(n, d);
        let mut xs = vec![rho(n, d) + 1];
        if c.is_multiple_of(n + 1) {
            xs.push(1 + c / (n + 1));
        }
        xs.sort_unstable();
        xs.dedup();
        for x in r.xs(xs) {
            let cell = r.emptiness(n, d, x, u, s, Emptiness::MINIMAL)?;
            r.cells.push(cell);
        }
    }
    Ok(())
}

/// Sets spanning a proper subspace `M`: `h1 > 0` in `M` iff in `P^n`.
fn prepa1(r: &mut Runner) -> Result<(), HarnessError> {
    let field = r.field();
    for (n, d) in r.nd() {
        if n < 3 {
            continue;
        }
        let start = Instant::now();
        let mut cell = CellReport::new(n, d, 0, CellKind::Consistency);
        let base = r.cell_seed(n, d, 0, "concision");
        let mut equal = 0;
        for i in 0..r.cfg.trials {
            let mut rng = seed::rng(seed::derive(base, &[i as u64]));
            let m = if n >= 4 && i % 2 == 1 { 3 } else { 2 };
            let cap = monomial_count(m, d) / (m + 1) + 2;
            let x = rng.gen_range(m + 1..=cap);
            let fams = Family::applicable(m, x);
            let fam = fams[i % fams.len()];
            let Some(local) = sample(field, fam, m, x, &mut rng) else {
                cell.retries += 1;
                continue;
            };
            if crate::projgeom::span_dim(field, &local)? < m {
                continue;
            }
            let mut basis_pts = Vec::new();
            let sub = loop {
                basis_pts.clear();
                basis_pts.extend((0..=m).map(|_| random_point(field, n, &mut rng)));
                let s = Subspace::span_of_points(field, &basis_pts)?;
                if s.dim() == m {
                    break s;
                }
            };
            let lifted: Vec<Point> = local.iter().map(|p| sub.lift_point(field, p.coords())).collect();
            let h_m = is_t1(field, &local, d)?.h1;
            let h_n = is_t1(field, &lifted, d)?.h1;
            equal += usize::from(h_m == h_n);
            cell.checks.push(Check::eq(
                format!("trial {i} ({fam:?}, P^{m}, x={x}): h1 in span {h_m}, in P^{n} {h_n}"),
                h_m > 0,
                h_n > 0,
            ));
        }
        cell.notes.push(format!("h1 values equal in {equal} of {} trials", cell.checks.len()));
        r.push(cell, start);
    }
    Ok(())
}
