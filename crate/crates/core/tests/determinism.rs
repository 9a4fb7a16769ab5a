use terracini_core::harness::{run_suite, SuiteConfig, SuiteId};
use terracini_core::Exec;

fn small(id: SuiteId) -> SuiteConfig {
    let mut cfg = SuiteConfig::new(id).with_trials(6);
    cfg.grid.d.truncate(2);
    cfg
}

#[test]
fn reruns_reproduce_reports() {
    for id in [SuiteId::Oo1, SuiteId::N2a1, SuiteId::A90, SuiteId::Prepa1] {
        let cfg = small(id);
        assert_eq!(run_suite(&cfg).unwrap().fingerprint(), run_suite(&cfg).unwrap().fingerprint(), "{id}");
    }
}

#[test]
fn worker_count_does_not_change_reports() {
    for id in [SuiteId::Ooo1, SuiteId::P43] {
        let cfg = small(id);
        let seq = run_suite(&cfg.clone().with_exec(Exec::Sequential)).unwrap();
        let par = run_suite(&cfg.with_exec(Exec::Parallel)).unwrap();
        assert_eq!(seq.fingerprint(), par.fingerprint(), "{id}");
    }
}

#[test]
fn seeds_change_trials() {
    let a = run_suite(&small(SuiteId::Oo1)).unwrap();
    let b = run_suite(&small(SuiteId::Oo1).with_seed(99)).unwrap();
    assert_ne!(a.cells[0].trials, b.cells[0].trials);
}

#[test]
fn every_emptiness_trial_has_a_refutation_or_a_witness() {
    for id in [SuiteId::Ooo1, SuiteId::N2a1, SuiteId::Ceo1] {
        let mut cfg = small(id);
        if id == SuiteId::Ceo1 {
            cfg.grid.d = vec![9];
        }
        let rep = run_suite(&cfg).unwrap();
        assert!(rep.counterexamples.is_empty());
        for c in &rep.cells {
            for t in &c.trials {
                assert!(t.refutation.is_some() || t.witness.is_some(), "{id} {t:?}");
            }
        }
    }
}
