use ringlab::checks::{replay, run_check, Caps, Instance, Verdict};
use ringlab::corpus::{Corpus, CATALOG};
use ringlab::suite::{run_suite, Report};

#[test]
fn findings_replay_to_the_same_verdict() {
    let caps = Caps::default();
    for suite in ["examples", "poly", "sl-characterization"] {
        let report = run_suite(suite, &caps, 5).unwrap();
        for f in report.findings.iter().step_by(7) {
            assert_eq!(replay(f, &caps), f.verdict, "{} {:?}", f.check, f.instance);
        }
    }
}

#[test]
fn reports_survive_serialization() {
    let report = run_suite("examples", &Caps::default(), 1).unwrap();
    let text = report.to_json();
    let back: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(back.findings, report.findings);
    assert_eq!(back.to_json(), text);
}

#[test]
fn findings_are_sorted() {
    let report = run_suite("lattice-closures", &Caps::default(), 2).unwrap();
    let keys: Vec<_> = report.findings.iter().map(|f| (f.check.clone(), f.instance.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn corpus_contains_the_catalog_below_the_bound() {
    let c = Corpus::build(16, 64, 0).unwrap();
    for r in &c.rings {
        assert!(r.ring.size() <= 16);
    }
    let names: Vec<&str> = c.rings.iter().map(|r| r.expr.as_str()).collect();
    for e in CATALOG {
        let n = ringlab::dsl::parse_ring(e, 1 << 16).unwrap().size();
        assert_eq!(names.contains(&e), n <= 16, "{e}");
    }
    assert!(c.skipped.iter().all(|s| s.reason.contains("size bound")));
}

#[test]
fn small_corpus_has_the_non_seminormal_pair() {
    let c = Corpus::build(16, 64, 0).unwrap();
    let found = c.pairs().iter().any(|p| {
        c.rings[p.ring].expr == "Z/2[x]/(x^2)" && c.rings[p.ring].lattice.members()[p.low].size() == 2
    });
    assert!(found);
}

#[test]
fn lattice_cap_skips_instead_of_failing() {
    let caps = Caps { lattice_cap: 3, ..Caps::default() };
    let inst = Instance::Pair {
        ring: "Z/2 * Z/2 * Z/2".into(),
        sub: vec![],
        over: vec!["(1, 0, 0)".into(), "(0, 1, 0)".into()],
    };
    assert_eq!(run_check("msl-subextension", &inst, &caps).verdict, Verdict::CapSkipped);
    let report = run_suite("lattice-closures", &Caps { max_size: 16, lattice_cap: 2, ..Caps::default() }, 0).unwrap();
    assert!(!report.skipped_rings.is_empty());
    assert_eq!(report.summary.counterexample, 0);
}

#[test]
fn a_broken_instance_is_a_counterexample() {
    let inst = Instance::Pair {
        ring: "Z/4".into(),
        sub: vec![],
        over: vec!["y".into()],
    };
    let f = run_check("sl-criterion", &inst, &Caps::default());
    assert_eq!(f.verdict, Verdict::Counterexample);
    assert!(f.witness["error"].as_str().unwrap().contains("unknown variable"));
}

#[test]
fn corpus_contains_the_group_algebra_image() {
    let c = Corpus::build(32, 64, 7).unwrap();
    let caps = Caps::default();
    let ring = c.rings.iter().position(|r| r.expr == "Z/2[x]/(x^4 + x)").unwrap();
    let s = &c.rings[ring].ring;
    let w = ringlab::dsl::eval_str(s, "x^3 + x + 1").unwrap();
    let l = &c.rings[ring].lattice;
    let low = (0..l.len())
        .find(|&i| l.members()[i].size() == 8 && l.members()[i].from_ambient(w).is_some())
        .expect("image of the group algebra in the lattice");
    let inst = Instance::Pair {
        ring: c.rings[ring].expr.clone(),
        sub: c.member_gens(ring, low),
        over: c.member_gens(ring, l.top()),
    };
    let f = run_check("sl-criterion", &inst, &caps);
    assert_eq!(f.verdict, Verdict::Confirmed);
    assert_eq!(f.witness["sl"], true);
}
