//! Suites: job lists over the corpus and fixed instances, run in parallel
//! and collected into a sorted JSON report.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::checks::{
    pair_check, run_check, Caps, CheckError, Finding, Instance, Outcome, PairCtx, Verdict,
    COHN_CHECKS, LATTICE_CHECKS, PAIR_CHECKS, RING_CHECKS, SHIFTED_CHECKS,
};
use crate::corpus::Corpus;

pub const SUITES: [&str; 6] = [
    "stability",
    "sl-characterization",
    "lattice-closures",
    "cohn",
    "poly",
    "examples",
];

/// Rings with at most this many elements get the idealization check.
const IDEALIZATION_SIZE: usize = 16;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub confirmed: usize,
    pub counterexample: usize,
    pub cap_skipped: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SkippedRing {
    pub ring: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    pub suite: String,
    pub seed: u64,
    pub caps: Value,
    pub summary: Summary,
    pub skipped_rings: Vec<SkippedRing>,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn all_confirmed(&self) -> bool {
        self.summary.counterexample == 0
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value prints")
    }
}

fn caps_value(caps: &Caps) -> Value {
    json!({
        "max_size": caps.max_size as u64,
        "lattice_cap": caps.lattice_cap as u64,
        "pair_scan_cap": caps.pair_scan_cap,
        "size_cap": caps.size_cap as u64,
        "co_integral_degree": ringlab_core::CO_INTEGRAL_DEGREE as u64,
    })
}

type Job = (Instance, Vec<String>);

fn job(inst: Instance, checks: &[&str]) -> Job {
    (inst, checks.iter().map(|s| s.to_string()).collect())
}

fn strs(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn pair_jobs(corpus: &Corpus, checks: &[&str]) -> Vec<Job> {
    corpus
        .pairs()
        .into_iter()
        .map(|p| {
            let inst = Instance::Pair {
                ring: corpus.rings[p.ring].expr.clone(),
                sub: corpus.member_gens(p.ring, p.low),
                over: corpus.member_gens(p.ring, p.high),
            };
            job(inst, checks)
        })
        .collect()
}

fn ring_jobs(corpus: &Corpus) -> Vec<Job> {
    corpus
        .rings
        .iter()
        .map(|c| {
            let mut checks: Vec<&str> = RING_CHECKS.to_vec();
            if c.ring.size() > IDEALIZATION_SIZE {
                checks.retain(|&n| n != "idealization");
            }
            job(Instance::Ring { ring: c.expr.clone() }, &checks)
        })
        .collect()
}

fn tower_jobs(corpus: &Corpus) -> Vec<Job> {
    corpus
        .towers()
        .into_iter()
        .map(|(r, [a, b, c])| {
            let inst = Instance::Tower {
                ring: corpus.rings[r].expr.clone(),
                low: corpus.member_gens(r, a),
                mid: corpus.member_gens(r, b),
                high: corpus.member_gens(r, c),
            };
            job(inst, &["tower"])
        })
        .collect()
}

/// Shifted rings over each maximal ideal and the radical, and Cohn's ring.
const SHIFTED_BASES: [&str; 4] = ["Z/4", "Z/8", "Z/6", "Z/2 * GF(4)"];

fn cohn_jobs(caps: &Caps) -> Result<Vec<Job>, CheckError> {
    let mut jobs = Vec::new();
    for base in SHIFTED_BASES {
        let r = crate::dsl::parse_ring(base, caps.size_cap)?;
        let mut ideals = vec![ringlab_core::jacobson(&r)];
        ideals.extend(ringlab_core::maximal_ideals(&r));
        let mut seen = Vec::new();
        for i in ideals {
            if !i.is_proper() || seen.contains(&i) {
                continue;
            }
            let gens: Vec<String> = i.generators().iter().map(|&g| r.format(g)).collect();
            seen.push(i);
            let inst = Instance::Shifted {
                ring: base.to_string(),
                ideal: Some(gens),
                degree: 2,
            };
            jobs.push(job(inst, &SHIFTED_CHECKS));
        }
        let inst = Instance::Shifted {
            ring: base.to_string(),
            ideal: None,
            degree: 2,
        };
        jobs.push(job(inst, &COHN_CHECKS));
    }
    for base in ["Z/4", "Z/2 * Z/2"] {
        let r = crate::dsl::parse_ring(base, caps.size_cap)?;
        for i in ringlab_core::all_ideals(&r, 256)? {
            if !i.is_proper() || !i.is_semiprime() {
                continue;
            }
            let gens = i.generators().iter().map(|&g| r.format(g)).collect();
            let inst = Instance::Shifted {
                ring: base.to_string(),
                ideal: Some(gens),
                degree: 2,
            };
            jobs.push(job(inst, &["tail-ideal-oracle"]));
        }
    }
    Ok(jobs)
}

fn poly_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for (ring, top) in [("Z/4", 3), ("Z/8", 3), ("Z/2", 3), ("Z/9", 2)] {
        for degree in 1..=top {
            let inst = Instance::Poly { ring: ring.into(), degree };
            jobs.push(job(inst, &["poly-units"]));
        }
    }
    for p in [3u64, 5, 7, 11, 13] {
        jobs.push(job(Instance::Prime { p }, &["cyclotomic-irreducibility"]));
    }
    for (poly, ideal) in [(vec![1, 1, 1], "2"), (vec![0, 1], "2"), (vec![1, 0, 1], "2")] {
        let inst = Instance::MonicMaximal {
            ring: "Z/4".into(),
            ideal: vec![ideal.into()],
            poly,
        };
        jobs.push(job(inst, &["monic-maximal"]));
    }
    for (field, degree) in [("Z/2", 6), ("Z/3", 4), ("GF(4)", 3)] {
        let inst = Instance::Poly { ring: field.into(), degree };
        jobs.push(job(inst, &["irreducibility-oracle"]));
    }
    jobs
}

fn example_jobs() -> Vec<Job> {
    let mut jobs = vec![job(
        Instance::Named {
            name: "units-and-embeddings".into(),
        },
        &["units-and-embeddings"],
    )];
    for p in [3u64, 5, 11] {
        jobs.push(job(Instance::Prime { p }, &["cyclotomic-construction"]));
    }
    jobs.push(job(Instance::Prime { p: 7 }, &["cyclotomic-rejected"]));
    for (ring, n, m) in [("Z/3", 1, 2), ("Z/4", 1, 3), ("Z/3", 2, 3)] {
        let inst = Instance::Pad { ring: ring.into(), n, m };
        jobs.push(job(inst, &["pad-construction"]));
    }
    jobs
}

/// Searches the corpus for an SL pair with a non-SL local factor.
pub fn localization_search(caps: &Caps, seed: u64) -> Outcome {
    let corpus = Corpus::build(caps.max_size, caps.lattice_cap, seed)?;
    let mut searched = 0usize;
    let mut witnesses = Vec::new();
    for p in corpus.pairs() {
        let c = PairCtx::build(
            &corpus.rings[p.ring].expr,
            &corpus.member_gens(p.ring, p.low),
            &corpus.member_gens(p.ring, p.high),
            caps,
        )?;
        searched += 1;
        let (_, w) = pair_check("local-factors", &c, caps)?;
        if w["converse_witness"] == json!(true) {
            witnesses.push(w);
        }
    }
    // finite rings split over their idempotents, so a witness would be a
    // defect in the factorwise unit comparison
    Ok((
        witnesses.is_empty(),
        json!({ "pairs_searched": searched, "witnesses": witnesses, "exhausted": true }),
    ))
}

fn jobs_for(suite: &str, corpus: &Corpus, caps: &Caps, seed: u64) -> Result<Vec<Job>, CheckError> {
    Ok(match suite {
        "stability" => tower_jobs(corpus),
        "sl-characterization" => {
            let mut jobs = pair_jobs(corpus, &PAIR_CHECKS);
            jobs.extend(ring_jobs(corpus));
            jobs
        }
        "lattice-closures" => {
            let mut jobs = pair_jobs(corpus, &LATTICE_CHECKS);
            jobs.push(job(
                Instance::Corpus {
                    max_size: caps.max_size,
                    lattice_cap: caps.lattice_cap,
                    seed,
                },
                &["localization-search"],
            ));
            jobs
        }
        "cohn" => cohn_jobs(caps)?,
        "poly" => poly_jobs(),
        "examples" => example_jobs(),
        other => return Err(CheckError::Unknown(format!("suite {other}"))),
    })
}

fn run_job(inst: &Instance, checks: &[String], caps: &Caps) -> Vec<Finding> {
    // pair checks share one context
    if let Instance::Pair { ring, sub, over } = inst {
        return match PairCtx::build(ring, sub, over, caps) {
            Ok(c) => checks
                .iter()
                .map(|n| crate::checks::finding(n, inst, pair_check(n, &c, caps)))
                .collect(),
            Err(e) => checks
                .iter()
                .map(|n| crate::checks::finding(n, inst, Err(clone_err(&e))))
                .collect(),
        };
    }
    checks.iter().map(|n| run_check(n, inst, caps)).collect()
}

fn clone_err(e: &CheckError) -> CheckError {
    match e {
        CheckError::Ring(r) => CheckError::Ring(r.clone()),
        CheckError::Dsl(d) => CheckError::Unknown(d.to_string()),
        CheckError::Unknown(s) => CheckError::Unknown(s.clone()),
    }
}

/// Runs `suite` (one of [`SUITES`] or `all`).
pub fn run_suite(suite: &str, caps: &Caps, seed: u64) -> Result<Report, CheckError> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(CheckError::Unknown(format!("suite {suite}")));
    };
    let corpus = Corpus::build(caps.max_size, caps.lattice_cap, seed)?;
    let mut jobs = Vec::new();
    for n in &names {
        jobs.extend(jobs_for(n, &corpus, caps, seed)?);
    }
    let mut findings: Vec<Finding> = jobs
        .par_iter()
        .flat_map_iter(|(inst, checks)| run_job(inst, checks, caps))
        .collect();
    findings.sort_by(|a, b| (&a.check, &a.instance).cmp(&(&b.check, &b.instance)));
    let count = |v: Verdict| findings.iter().filter(|f| f.verdict == v).count();
    let summary = Summary {
        confirmed: count(Verdict::Confirmed),
        counterexample: count(Verdict::Counterexample),
        cap_skipped: count(Verdict::CapSkipped),
    };
    Ok(Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        suite: suite.to_string(),
        seed,
        caps: caps_value(caps),
        summary,
        skipped_rings: corpus
            .skipped
            .iter()
            .map(|s| SkippedRing {
                ring: s.expr.clone(),
                reason: s.reason.clone(),
            })
            .collect(),
        findings,
    })
}

pub fn suite_names() -> Vec<String> {
    let mut v = strs(&SUITES);
    v.push("all".into());
    v
}
