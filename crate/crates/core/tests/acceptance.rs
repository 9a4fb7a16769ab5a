//! Acceptance criteria at their stated grids, trial counts and time limits.
//! Prints one PASS/FAIL line per criterion, then fails if any failed.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;

use terracini_core::cohomology::cohomology_multi;
use terracini_core::constructions::families::Family;
use terracini_core::constructions::rnc_points;
use terracini_core::harness::report::CellKind;
use terracini_core::harness::{run_suite, SuiteConfig, SuiteId, SuiteReport};
use terracini_core::oracles::h_oracle;
use terracini_core::projgeom::monomial_count;
use terracini_core::schemes::double_scheme;
use terracini_core::terracini::is_t1;
use terracini_core::{cohomology, condition_rows, Component, PrimeField, ZeroDimScheme};

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn within(r: &SuiteReport, limit: Duration) -> Result<(), String> {
    let took = Duration::from_millis(r.timing_ms as u64);
    ensure(took < limit, format!("{} took {took:?}, limit {limit:?}", r.suite))
}

fn clean(r: &SuiteReport) -> Result<(), String> {
    ensure(
        r.passed,
        format!(
            "{}: {} counterexamples, {} bound violations, {} classification failures, failed checks {:?}",
            r.suite,
            r.counterexamples.len(),
            r.bound_violations.len(),
            r.classification_failures.len(),
            r.failed_checks
        ),
    )
}

fn members_at(r: &SuiteReport, n: usize, d: usize, x: usize) -> Vec<&terracini_core::harness::report::MemberRecord> {
    r.cells
        .iter()
        .filter(|c| (c.n, c.d, c.x) == (n, d, x) && c.kind == CellKind::Positive)
        .flat_map(|c| &c.members)
        .collect()
}

fn emptiness_cells(r: &SuiteReport) -> impl Iterator<Item = &terracini_core::harness::CellReport> {
    r.cells.iter().filter(|c| c.kind == CellKind::Emptiness)
}

fn c1(r: &SuiteReport) -> Outcome {
    clean(r)?;
    within(r, Duration::from_secs(5))?;
    let f = common::field();
    for (n, d, x) in [(2, 4, 5), (3, 4, 9), (4, 4, 14), (4, 3, 7)] {
        let m = members_at(r, n, d, x);
        ensure(
            !m.is_empty() && m.iter().all(|m| m.certificate.is_minimal()),
            format!("({n},{d};{x}) not minimal"),
        )?;
    }
    let a = &members_at(r, 2, 4, 5)[0].certificate;
    ensure((a.h0, a.h1) == (1, 1), format!("(2,4;5) gave ({}, {})", a.h0, a.h1))?;
    let b = &members_at(r, 3, 4, 9)[0].certificate;
    let oracle = h_oracle(f.modulus(), &double_scheme(&b.points).unwrap(), 4);
    ensure(
        (b.h0, b.h1) == oracle && oracle == (1, 2),
        format!("(3,4;9) gave ({}, {}), oracle {oracle:?}", b.h0, b.h1),
    )?;
    Ok(format!(
        "4 cells minimal; (2,4;5) -> (1,1); (3,4;9) -> (1,2) = oracle; {} ms",
        r.timing_ms
    ))
}

fn c2(r: &SuiteReport) -> Outcome {
    clean(r)?;
    within(r, Duration::from_secs(600))?;
    let mut positive = 0;
    for n in [2, 3] {
        for d in 3..=8usize {
            if (n, d) == (2, 3) {
                continue;
            }
            let lo = n + d.div_ceil(2);
            for x in lo..=lo + 3 {
                let m = members_at(r, n, d, x);
                ensure(
                    !m.is_empty() && m.iter().all(|m| m.certificate.terracini),
                    format!("ai0 witness failed at ({n},{d};{x})"),
                )?;
                positive += 1;
            }
            for x in n + 1..lo {
                let cell = emptiness_cells(r)
                    .find(|c| (c.n, c.d, c.x) == (n, d, x))
                    .ok_or(format!("missing cell ({n},{d};{x})"))?;
                ensure(cell.trials.len() >= 500, format!("({n},{d};{x}) ran {} trials", cell.trials.len()))?;
            }
        }
    }
    Ok(format!(
        "{positive} witness cells verified; {} random trials below the threshold, no Terracini set; {} ms",
        r.trial_count(),
        r.timing_ms
    ))
}

fn c3(r: &SuiteReport) -> Outcome {
    clean(r)?;
    within(r, Duration::from_secs(120))?;
    for n in 2..=4usize {
        for d in 4..=8usize {
            let x = 1 + (n * d).div_ceil(2);
            let m = members_at(r, n, d, x);
            ensure(
                !m.is_empty() && m.iter().all(|m| m.certificate.is_minimal()),
                format!("RNC ({n},{d};{x}) not minimal"),
            )?;
            let below = (n * d).div_ceil(2);
            let cell = r.cells.iter().find(|c| (c.n, c.d, c.x, c.kind) == (n, d, below, CellKind::Consistency));
            ensure(
                cell.is_some_and(|c| !c.checks.is_empty() && c.ok()),
                format!("h1 != 0 at ({n},{d};{below})"),
            )?;
        }
    }
    Ok(format!("15 RNC members minimal, 15 cells at ceil(nd/2) with h1 = 0; {} ms", r.timing_ms))
}

fn c4(r: &SuiteReport) -> Outcome {
    clean(r)?;
    let mut cells = 0;
    let mut hits = 0;
    let mut classified = 0;
    for d in 4..=8usize {
        for x in 4..=(3 * d).div_ceil(2) {
            let cell = emptiness_cells(r)
                .find(|c| (c.n, c.d, c.x) == (3, d, x))
                .ok_or(format!("missing cell d={d} x={x}"))?;
            let uniform = cell.trials.iter().filter(|t| t.family == Family::Uniform).count();
            ensure(uniform >= 200, format!("d={d} x={x}: {uniform} random trials"))?;
            for fam in [Family::Collinear, Family::Coplanar, Family::ReducibleRnc, Family::RncSubset] {
                if Family::applicable(3, x).contains(&fam) {
                    ensure(cell.trials.iter().any(|t| t.family == fam), format!("d={d} x={x}: no {fam:?} trials"))?;
                }
            }
            cells += 1;
            hits += cell.terracini_hits();
            classified += cell.trials.iter().filter(|t| t.witness.is_some()).count();
        }
    }
    ensure(hits == classified, format!("{hits} Terracini hits, {classified} classified"))?;
    Ok(format!(
        "{cells} cells, {} trials, 0 members, {hits} Terracini hits all classified",
        r.trial_count()
    ))
}

fn c5(r: &SuiteReport) -> Outcome {
    clean(r)?;
    let m = members_at(r, 3, 7, 12);
    ensure(
        !m.is_empty() && m.iter().all(|m| m.certificate.is_minimal()),
        "RNC members at (3,7;12) not minimal",
    )?;
    let cell = emptiness_cells(r)
        .find(|c| (c.n, c.d, c.x) == (3, 7, 12))
        .ok_or("missing emptiness cell")?;
    ensure(cell.trials.len() >= 500, format!("{} trials", cell.trials.len()))?;
    ensure(
        cell.trials.iter().all(|t| t.family != Family::RncSubset),
        "RNC configuration among the converse trials",
    )?;
    for fam in [Family::ReducibleRnc, Family::EllipticOrCubic] {
        ensure(cell.trials.iter().any(|t| t.family == fam), format!("no {fam:?} trials"))?;
    }
    Ok(format!(
        "{} RNC members; {} non-RNC configurations, 0 members",
        m.len(),
        cell.trials.len()
    ))
}

fn c6(r: &SuiteReport) -> Outcome {
    clean(r)?;
    within(r, Duration::from_secs(900))?;
    let f = common::field();
    let m = members_at(r, 3, 17, 27);
    ensure(
        !m.is_empty() && m.iter().all(|m| m.certificate.is_minimal()),
        "RNC member at x = 27 not minimal",
    )?;
    for x in 28..=33 {
        let cell = emptiness_cells(r)
            .find(|c| (c.n, c.d, c.x) == (3, 17, x))
            .ok_or(format!("missing x={x}"))?;
        ensure(
            cell.trials.iter().filter(|t| t.family == Family::Uniform).count() >= 100,
            format!("x={x}: too few random trials"),
        )?;
        ensure(
            cell.trials.iter().any(|t| t.family != Family::Uniform),
            format!("x={x}: no structured trials"),
        )?;
    }
    let odd = r
        .cells
        .iter()
        .any(|c| c.x == 32 && c.d == 16 && c.notes.iter().any(|n| n.contains("odd")));
    ensure(odd, "x = 2d path not flagged for odd d")?;
    let pts = rnc_points(f, 3, 33, 1).unwrap().points;
    let z = double_scheme(&pts).unwrap();
    let start = Instant::now();
    let m = condition_rows(f, &z, 17).unwrap();
    let rank = m.rank();
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), format!("{}x{} rank took {took:?}", m.rows(), m.cols()))?;
    let h26 = is_t1(f, &rnc_points(f, 3, 26, 1).unwrap().points, 17).unwrap().h1;
    Ok(format!(
        "x = 1 + ceil(3d/2) = 27 member minimal (26 points give h1 = {h26}); x in 28..33 empty; {}x{} rank {rank} in {took:?}; {} ms",
        m.rows(),
        m.cols(),
        r.timing_ms
    ))
}

fn c7(r: &SuiteReport) -> Outcome {
    clean(r)?;
    for d in [6, 8] {
        let m = members_at(r, 3, d, 2 * d);
        ensure(!m.is_empty(), format!("no elliptic member at d={d}"))?;
        for m in m {
            let c = &m.certificate;
            ensure(c.h1 == 1 && c.is_minimal(), format!("d={d}: h1 = {}, minimal {:?}", c.h1, c.minimal))?;
            ensure(c.subset_h1.iter().all(|&h| h == 0), format!("d={d}: a maximal subset has h1 > 0"))?;
        }
    }
    Ok("d = 6, 8: h1 = 1 exactly, minimal, all maximal subsets independent".into())
}

fn c8(r: &SuiteReport) -> Outcome {
    clean(r)?;
    let trials_at = |d: usize, x: usize| emptiness_cells(r).find(|c| (c.n, c.d, c.x) == (2, d, x)).map(|c| c.trials.len());
    for d in 4..=8usize {
        for x in 3..=d {
            ensure(trials_at(d, x).is_some_and(|t| t >= 600), format!("(a) d={d} x={x} missing or short"))?;
        }
        let m = members_at(r, 2, d, d + 1);
        ensure(
            m.iter().any(|m| m.source == "smooth conic" && m.certificate.is_minimal()),
            format!("(b) conic at d={d}"),
        )?;
        let reducible: Vec<_> = r
            .cells
            .iter()
            .filter(|c| (c.n, c.d, c.x, c.kind) == (2, d, d + 1, CellKind::Consistency))
            .flat_map(|c| &c.members)
            .collect();
        let expected = if d % 2 == 1 { 1 } else { 0 };
        ensure(reducible.len() == expected, format!("(b) d={d}: {} reducible members", reducible.len()))?;
        if d >= 5 {
            for x in d + 2..(3 * d).div_ceil(2) {
                ensure(trials_at(d, x).is_some_and(|t| t >= 600), format!("(c) d={d} x={x} missing"))?;
            }
        }
    }
    for (d, x) in [(6, 9), (7, 11)] {
        let m = members_at(r, 2, d, x);
        ensure(
            !m.is_empty() && m.iter().all(|m| m.certificate.is_minimal()),
            format!("boundary ({d};{x})"),
        )?;
    }
    Ok(format!(
        "(a)-(c) over d = 4..8 with {} trials; reducible members only for odd d, balanced; boundary cases verified",
        r.trial_count()
    ))
}

fn c9(reports: &BTreeMap<&'static str, SuiteReport>) -> Outcome {
    let mut members = 0;
    for r in reports.values() {
        ensure(r.bound_violations.is_empty(), format!("{}: {:?}", r.suite, r.bound_violations))?;
        for m in r.members().filter(|m| m.certificate.is_minimal()) {
            members += 1;
            let c = &m.certificate;
            let names: Vec<&str> = m.bounds.iter().map(|b| b.name.as_str()).collect();
            ensure(
                m.bounds.iter().all(|b| b.holds) && names.len() >= 3,
                format!("{}: {} bounds {names:?}", r.suite, m.source),
            )?;
            ensure(c.h1 <= c.n + 1, format!("{}: h1 = {} > n + 1", r.suite, c.h1))?;
            let crit = m.critical.as_ref().ok_or(format!("{}: no critical scheme", r.suite))?;
            ensure(crit.h1 == 1 && crit.full_support, format!("{}: critical {crit:?}", r.suite))?;
        }
    }
    Ok(format!("{members} members across {} suites; 0 violations", reports.len()))
}

fn c10() -> Outcome {
    let f = common::field();
    let fields = [PrimeField::default_field(), PrimeField::second_field()];
    let mut g = common::rng(0xacce);
    for i in 0..100u64 {
        let n = g.gen_range(2..=3usize);
        let d = g.gen_range(3..=8usize);
        let k = g.gen_range(1..=monomial_count(n, d) / (n + 1) + 2);
        let recipe = |fp: &PrimeField| {
            let mut r = common::rng(i);
            let mut pts: Vec<_> = (0..k)
                .filter_map(|_| terracini_core::Point::new(*fp, (0..=n).map(|_| r.gen_range(0..1000u64)).collect()).ok())
                .collect();
            pts.sort();
            pts.dedup();
            ZeroDimScheme::new(n, pts.into_iter().map(Component::Double).collect()).unwrap()
        };
        let z = recipe(&f);
        let main = cohomology(f, &z, d).map_err(|e| e.to_string())?;
        let oracle = h_oracle(f.modulus(), &z, d);
        ensure(
            oracle == (main.h0, main.h1),
            format!("scheme {i}: oracle {oracle:?}, main ({}, {})", main.h0, main.h1),
        )?;
        let multi = cohomology_multi(recipe, d, &fields).map_err(|e| e.to_string())?;
        ensure(!multi.disagreement, format!("scheme {i}: primes disagree {:?}", multi.per_prime_ranks))?;
        ensure(
            main.euler_characteristic_holds() && multi.euler_characteristic_holds(),
            format!("scheme {i}: Euler characteristic"),
        )?;
    }
    Ok("100/100 oracle agreement, 2-prime rank agreement, Euler characteristic on every report".into())
}

#[test]
fn acceptance_criteria() {
    let mut reports = BTreeMap::new();
    for id in SuiteId::ALL {
        let r = run_suite(&SuiteConfig::new(id)).unwrap_or_else(|e| panic!("{id}: {e}"));
        reports.insert(id.as_str(), r);
    }
    let get = |s: &str| &reports[s];
    let results: Vec<(&str, Outcome)> = vec![
        ("1 Alexander-Hirschowitz exceptional cells", c1(get("ah"))),
        ("2 nonemptiness threshold n + ceil(d/2)", c2(get("ai0"))),
        ("3 rational normal curve members", c3(get("a9.0"))),
        ("4 emptiness in P^3 for 2x <= 3d + 1", c4(get("ooo1"))),
        ("5 converse at d = 7, x = 12", c5(get("n3.1"))),
        ("6 gap 1 + ceil(3d/2) < x < 2d at d = 17", c6(get("ceo1"))),
        ("7 elliptic quartic members", c7(get("ex4d"))),
        ("8 plane results", c8(get("n2a1"))),
        ("9 structural bounds on every member", c9(&reports)),
        ("10 oracle equivalence", c10()),
    ];
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    for (id, r) in &reports {
        println!(
            "  suite {id}: passed={} cells={} trials={} {} ms",
            r.passed,
            r.cells.len(),
            r.trial_count(),
            r.timing_ms
        );
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
