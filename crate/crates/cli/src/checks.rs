//! Individual checks. Each one rebuilds its instance from the literal
//! description it is filed under, so any finding can be replayed alone.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use ringlab_core::cohn::{
    tail_ideal_oracle, verify_conductor, verify_jacobson_membership, verify_t_closed,
    verify_unit_rigidity, verify_zerodivisors, CohnElement,
};
use ringlab_core::constructions::{
    cyclic_group_algebra, cyclotomic_sl_construction, pad_construction, sl_embeddings,
    split_algebra,
};
use ringlab_core::extension::quadratic_failure;
use ringlab_core::lattice::{
    classify_minimal, msl_subextension, seminormalization, sl_bottom, t_closure, u_closure,
    unit_generated, MinimalKind,
};
use ringlab_core::poly::{
    cyclotomic, factor, is_irreducible, is_primitive_root, monic_maximal_ideal,
    monic_polys, poly_unit_check, BoundedPoly,
};
use ringlab_core::{
    all_ideals, jacobson, local_factors, maximal_ideals, nilradical, prime_subring,
    subring_from_members, subring_generated, Extension, FiniteRing, Ideal, Ring, RingError,
    RingMorphism, ShiftedRing, SubringLattice, CO_INTEGRAL_DEGREE,
};

use crate::dsl::{eval_list, parse_ring, DslError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Confirmed,
    Counterexample,
    CapSkipped,
}

/// What a check ran on, in literal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    Ring {
        ring: String,
    },
    /// `sub ⊆ over`, both given by generators inside `ring`.
    Pair {
        ring: String,
        sub: Vec<String>,
        over: Vec<String>,
    },
    Tower {
        ring: String,
        low: Vec<String>,
        mid: Vec<String>,
        high: Vec<String>,
    },
    /// Shifted ring over `ideal`, or Cohn's ring when `ideal` is absent.
    Shifted {
        ring: String,
        ideal: Option<Vec<String>>,
        degree: usize,
    },
    Poly {
        ring: String,
        degree: usize,
    },
    MonicMaximal {
        ring: String,
        ideal: Vec<String>,
        poly: Vec<u64>,
    },
    Prime {
        p: u64,
    },
    Pad {
        ring: String,
        n: usize,
        m: usize,
    },
    Corpus {
        max_size: usize,
        lattice_cap: usize,
        seed: u64,
    },
    Named {
        name: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub instance: Instance,
    pub verdict: Verdict,
    pub witness: Value,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Caps {
    pub max_size: usize,
    pub lattice_cap: usize,
    pub pair_scan_cap: u64,
    pub size_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_size: 32,
            lattice_cap: ringlab_core::LATTICE_CAP,
            pair_scan_cap: ringlab_core::cohn::PAIR_SCAN_CAP as u64,
            size_cap: ringlab_core::DEFAULT_SIZE_CAP,
        }
    }
}

/// Outcome of one check: `Ok(true)` confirms, `Ok(false)` is a
/// counterexample.
pub type Outcome = Result<(bool, Value), CheckError>;

#[derive(Debug, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error("unknown check '{0}' for this instance")]
    Unknown(String),
}

pub fn finding(check: &str, instance: &Instance, outcome: Outcome) -> Finding {
    let (verdict, witness) = match outcome {
        Ok((true, w)) => (Verdict::Confirmed, w),
        Ok((false, w)) => (Verdict::Counterexample, w),
        Err(CheckError::Ring(e @ RingError::CapExceeded { .. }))
        | Err(CheckError::Dsl(DslError::Ring(e @ RingError::CapExceeded { .. }))) => {
            (Verdict::CapSkipped, json!({ "reason": e.to_string() }))
        }
        Err(e) => (Verdict::Counterexample, json!({ "error": e.to_string() })),
    };
    Finding {
        check: check.to_string(),
        instance: instance.clone(),
        verdict,
        witness,
    }
}

fn ambient_set(r: &Ring, xs: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = xs.iter().map(|&x| r.to_ambient(x).unwrap_or(x)).collect();
    v.sort_unstable();
    v
}

fn brute_units(r: &Ring) -> Vec<usize> {
    let one = r.one();
    r.elements()
        .filter(|&x| r.elements().any(|y| r.mul(x, y) == one))
        .collect()
}

fn residue_size(r: &Ring, m: &Ideal) -> usize {
    r.size() / m.len()
}

fn is_boolean_ring(r: &Ring) -> bool {
    r.elements().all(|x| r.mul(x, x) == x)
}

/// `R ⊆ S` seminormal, infra-integral, and every supported residue field
/// has two elements.
fn sl_predicate(ext: &Extension) -> (bool, bool, Vec<usize>) {
    let seminormal = ext.seminormal_witness().is_none();
    let infra = ext.residual().infra_integral;
    let maxes = maximal_ideals(ext.sub());
    let residues: Vec<usize> = ext
        .msupp()
        .iter()
        .map(|&i| residue_size(ext.sub(), &maxes[i]))
        .collect();
    (seminormal, infra, residues)
}

/// Image of `R` in `S/I` as an extension, for an ideal `I` of `S`.
fn reduced_extension(ext: &Extension, ideal: &Ideal) -> Result<Extension, RingError> {
    let (q, pi) = ideal.quotient()?;
    let mut img: Vec<usize> = ext.sub_members().iter().map(|&x| pi.apply(x)).collect();
    img.sort_unstable();
    img.dedup();
    Extension::new(&subring_from_members(&q, &img)?)
}

/// Units of the ring `eX` with identity `e`, given as members of an
/// ambient ring.
fn corner_units(s: &Ring, e: usize, members: &[usize]) -> Vec<usize> {
    let mut corner: Vec<usize> = members.iter().map(|&x| s.mul(e, x)).collect();
    corner.sort_unstable();
    corner.dedup();
    corner
        .iter()
        .copied()
        .filter(|&u| corner.iter().any(|&v| s.mul(u, v) == e))
        .collect()
}

pub struct PairCtx {
    pub ring: Ring,
    pub low: Ring,
    pub high: Ring,
    pub ext: Extension,
}

impl PairCtx {
    pub fn build(ring: &str, sub: &[String], over: &[String], caps: &Caps) -> Result<Self, CheckError> {
        let s = parse_ring(ring, caps.size_cap)?;
        let low = subring_generated(&s, &eval_list(&s, &sub.join(", "))?);
        let high = subring_generated(&s, &eval_list(&s, &over.join(", "))?);
        let ext = Extension::between(&low, &high)?;
        Ok(PairCtx {
            ring: s,
            low,
            high,
            ext,
        })
    }
}

pub const PAIR_CHECKS: [&str; 9] = [
    "sl-criterion",
    "co-integral",
    "sl-defect",
    "sl-structure",
    "nil-reduction",
    "shared-ideal",
    "local-factors",
    "field-base",
    "u-closure-criterion",
];

pub const LATTICE_CHECKS: [&str; 5] = [
    "msl-subextension",
    "closures",
    "minimal-step",
    "subextension-products",
    "boolean-lattice",
];

pub fn pair_check(name: &str, c: &PairCtx, caps: &Caps) -> Outcome {
    let ext = &c.ext;
    let sl = ext.is_sl();
    match name {
        "sl-criterion" => {
            let brute = ambient_set(&c.low, &brute_units(&c.low)) == ambient_set(&c.high, &brute_units(&c.high));
            let (seminormal, infra, residues) = sl_predicate(ext);
            let predicate = seminormal && infra && residues.iter().all(|&k| k == 2);
            Ok((
                brute == predicate,
                json!({
                    "sl": brute,
                    "seminormal": seminormal,
                    "infra_integral": infra,
                    "msupp_residue_sizes": residues,
                }),
            ))
        }
        "co-integral" => {
            let w = ext.co_integral_witness(CO_INTEGRAL_DEGREE);
            Ok((
                w.is_none() == sl,
                json!({
                    "sl": sl,
                    "co_integrally_closed": w.is_none(),
                    "root_outside": w.map(|x| ext.ambient().format(x)),
                }),
            ))
        }
        "sl-defect" => {
            let d = ext.sl_defect();
            let ru = brute_units(&c.low).len();
            let su = brute_units(&c.high).len();
            let ok = d.index == d.module_count && d.index * ru == su && (!sl || d.index == 1);
            Ok((
                ok,
                json!({
                    "index": d.index,
                    "modules": d.module_count,
                    "unit_counts": [ru, su],
                }),
            ))
        }
        "sl-structure" => {
            if !sl {
                return Ok((true, json!({ "sl": false })));
            }
            let (r, s) = (&c.low, &c.high);
            let mut failed = Vec::new();
            if !ext.is_local() {
                failed.push("local");
            }
            if ambient_set(r, jacobson(r).members()) != ambient_set(s, jacobson(s).members()) {
                failed.push("jacobson radicals differ");
            }
            if ambient_set(r, nilradical(r).members()) != ambient_set(s, nilradical(s).members()) {
                failed.push("nilradicals differ");
            }
            let (seminormal, infra, _) = sl_predicate(ext);
            if !seminormal {
                failed.push("seminormal");
            }
            if !infra {
                failed.push("infra-integral");
            }
            let same = r.size() == s.size();
            let two_unit = s.is_unit(s.from_int(2));
            if two_unit {
                if ambient_set(r, r.idempotents()) != ambient_set(s, s.idempotents()) {
                    failed.push("idempotents differ with 2 a unit");
                }
                if s.is_reduced() && !same {
                    failed.push("proper over a product of fields with 2 a unit");
                }
            }
            if s.is_local() && !same {
                failed.push("proper over a local ring");
            }
            if s.is_reduced() {
                if !r.is_reduced() {
                    failed.push("subring of a product of fields not reduced");
                }
                if let Some(x) = quadratic_failure(ext.ambient()) {
                    failed.push("not quadratic");
                    return Ok((false, json!({ "failed": failed, "non_quadratic": ext.ambient().format(x) })));
                }
            }
            Ok((failed.is_empty(), json!({ "sl": true, "failed": failed })))
        }
        "nil-reduction" => {
            let nil_r = ambient_set(&c.low, nilradical(&c.low).members());
            let nil_s = ambient_set(&c.high, nilradical(&c.high).members());
            let reduced = reduced_extension(ext, &nilradical(ext.ambient()))?;
            let rhs = nil_r == nil_s && reduced.is_sl();
            Ok((
                sl == rhs,
                json!({ "sl": sl, "nil_equal": nil_r == nil_s, "reduced_sl": reduced.is_sl() }),
            ))
        }
        "shared-ideal" => {
            let cond = ext.conductor();
            if !cond.is_proper() {
                return Ok((true, json!({ "conductor": "whole ring" })));
            }
            let reduced = reduced_extension(ext, &cond)?;
            let lifted = reduced.is_sl();
            Ok((
                !lifted || sl,
                json!({ "conductor_size": cond.len(), "quotient_sl": lifted, "sl": sl }),
            ))
        }
        "local-factors" => {
            let s = ext.ambient();
            let r = ext.sub();
            let maxes = maximal_ideals(r);
            let supp = ext.msupp();
            let all: Vec<usize> = s.elements().collect();
            let mut factor_sl = Vec::new();
            for (i, lf) in local_factors(r).iter().enumerate() {
                let e = r.to_ambient(lf.idempotent).unwrap();
                let ur = corner_units(s, e, ext.sub_members());
                let us = corner_units(s, e, &all);
                let supported = supp.contains(&lf.maximal_index);
                factor_sl.push(json!({
                    "maximal": i,
                    "residue": residue_size(r, &maxes[lf.maximal_index]),
                    "supported": supported,
                    "sl": ur == us,
                }));
            }
            let all_factors = factor_sl.iter().all(|f| f["sl"] == json!(true));
            let converse_witness = sl && !all_factors;
            Ok((
                !all_factors || sl,
                json!({ "sl": sl, "factors": factor_sl, "converse_witness": converse_witness }),
            ))
        }
        "field-base" => {
            let r = &c.low;
            if !r.is_field() {
                return Ok((true, json!({ "field_base": false })));
            }
            let s = &c.high;
            let expected = r.size() == s.size() || (r.size() == 2 && is_boolean_ring(s));
            Ok((sl == expected, json!({ "sl": sl, "split_over_f2": expected })))
        }
        "u-closure-criterion" => {
            let full = Extension::new(&c.low)?;
            let u = u_closure(&full);
            let in_u = c
                .high
                .members()
                .unwrap()
                .iter()
                .all(|&x| u.from_ambient(x).is_some());
            let cond = ext.conductor();
            let s = ext.ambient();
            let boolean_quotient = cond.is_proper() && s.elements().all(|x| cond.contains(s.sub(s.mul(x, x), x)));
            let rhs = in_u && boolean_quotient;
            Ok((
                sl == rhs,
                json!({ "sl": sl, "inside_u_closure": in_u, "boolean_quotient": boolean_quotient }),
            ))
        }
        _ => lattice_check(name, c, caps),
    }
}

fn lattice_check(name: &str, c: &PairCtx, caps: &Caps) -> Outcome {
    let ext = &c.ext;
    let lattice = SubringLattice::enumerate(ext, caps.lattice_cap)?;
    let n = lattice.len();
    let base = lattice.bottom();
    match name {
        "msl-subextension" => match msl_subextension(&lattice) {
            Ok(rep) => Ok((
                rep.all_hold(),
                json!({
                    "members": n,
                    "sl_members": rep.sl_members.len(),
                    "greatest_size": lattice.members()[rep.top].size(),
                    "product": rep.product_matches,
                    "union": rep.union_matches,
                    "formula": rep.formula_matches,
                    "seminormal_family": rep.seminormal_family_ok,
                }),
            )),
            Err(RingError::Finding(msg)) => Ok((false, json!({ "finding": msg }))),
            Err(e) => Err(e.into()),
        },
        "closures" => {
            let s = ext.ambient();
            let sn = seminormalization(ext);
            let t = t_closure(ext);
            let u = u_closure(ext);
            let bottom = sl_bottom(ext);
            let subset = |a: &Ring, b: &Ring| a.members().unwrap().iter().all(|&x| b.from_ambient(x).is_some());
            let mut failed = Vec::new();
            if !subset(&u, &t) {
                failed.push("u-closure not inside t-closure");
            }
            if !subset(&sn, &t) {
                failed.push("seminormalization not inside t-closure");
            }
            if !Extension::new(&bottom)?.is_sl() {
                failed.push("unit-generated bottom not SL in the ambient");
            }
            for v in 0..n {
                let m = &lattice.members()[v];
                let top_ext = Extension::between(m, &lattice.members()[lattice.top()])?;
                if top_ext.is_sl() && !subset(&bottom, m) {
                    failed.push("unit-generated bottom not below an SL member");
                }
            }
            Ok((
                failed.is_empty(),
                json!({
                    "sizes": { "seminormalization": sn.size(), "t_closure": t.size(), "u_closure": u.size(), "unit_generated": bottom.size(), "ambient": s.size() },
                    "failed": failed,
                }),
            ))
        }
        "minimal-step" => {
            if n != 2 {
                return Ok((true, json!({ "minimal": false })));
            }
            let kind = match classify_minimal(ext) {
                Ok(k) => k,
                Err(RingError::Finding(msg)) => return Ok((false, json!({ "finding": msg }))),
                Err(e) => return Err(e.into()),
            };
            let r = ext.sub();
            let cond = ext.conductor_in_sub();
            let residue = r.size() / cond.len();
            let expected = kind == MinimalKind::Decomposed && residue == 2;
            Ok((
                ext.is_sl() == expected,
                json!({ "kind": kind, "residue": residue, "sl": ext.is_sl() }),
            ))
        }
        "subextension-products" => {
            let sl: Vec<bool> = (0..n)
                .map(|v| lattice.extension(base, v).map(|e| e.is_sl()))
                .collect::<Result<_, _>>()?;
            let sn: Vec<bool> = (0..n)
                .map(|v| {
                    lattice.extension(base, v).map(|e| {
                        e.seminormal_witness().is_none() && e.residual().infra_integral
                    })
                })
                .collect::<Result<_, _>>()?;
            let mut failed = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    let j = lattice.join(a, b);
                    if sl[a] && sl[b] && !sl[j] {
                        failed.push(json!({ "sl": [a, b] }));
                    }
                    if sn[a] && sn[b] && !sn[j] {
                        failed.push(json!({ "seminormal_infra": [a, b] }));
                    }
                }
            }
            Ok((failed.is_empty(), json!({ "members": n, "failed": failed })))
        }
        "boolean-lattice" => {
            let sl = ext.is_sl();
            let res = ext.residual();
            let two_over_each = ext
                .msupp()
                .iter()
                .all(|&m| res.fibers.iter().filter(|f| f.under == m).count() == 2);
            let boolean = lattice.is_boolean();
            Ok((
                !(sl && two_over_each) || boolean,
                json!({ "sl": sl, "two_maximal_over_support": two_over_each, "boolean": boolean }),
            ))
        }
        other => Err(CheckError::Unknown(other.to_string())),
    }
}

pub fn tower_check(ring: &str, low: &[String], mid: &[String], high: &[String], caps: &Caps) -> Outcome {
    let s = parse_ring(ring, caps.size_cap)?;
    let gen = |g: &[String]| -> Result<Ring, CheckError> {
        Ok(subring_generated(&s, &eval_list(&s, &g.join(", "))?))
    };
    let (a, b, t) = (gen(low)?, gen(mid)?, gen(high)?);
    let ab = Extension::between(&a, &b)?;
    let bt = Extension::between(&b, &t)?;
    let at = Extension::between(&a, &t)?;
    let (sl_ab, sl_bt, sl_at) = (ab.is_sl(), bt.is_sl(), at.is_sl());
    let (lo_ab, lo_bt, lo_at) = (ab.is_local(), bt.is_local(), at.is_local());
    let mut failed = Vec::new();
    if sl_at != (sl_ab && sl_bt) {
        failed.push("composite SL iff both steps SL");
    }
    if lo_ab && lo_bt && !lo_at {
        failed.push("composite of local steps not local");
    }
    if lo_at && !lo_ab {
        failed.push("local composite with non-local first step");
    }
    // the same statements through explicit morphisms
    // the middle ring appears as `b` and as a subring of `t`; identify them
    let mid = bt.sub();
    let iso: Vec<usize> = b
        .elements()
        .map(|x| mid.from_ambient(t.from_ambient(b.to_ambient(x).unwrap()).unwrap()).unwrap())
        .collect();
    let f = ab.inclusion().compose(&RingMorphism::from_map(&b, mid, iso)?)?;
    let g = bt.inclusion();
    let gf = f.compose(&g)?;
    if gf.is_sl() && !g.is_sl() {
        failed.push("SL composite with non-SL second map");
    }
    if gf.is_sl() && g.is_injective() && !f.is_sl() {
        failed.push("SL composite with injective second map and non-SL first map");
    }
    Ok((
        failed.is_empty(),
        json!({ "sl": [sl_ab, sl_bt, sl_at], "local": [lo_ab, lo_bt, lo_at], "failed": failed }),
    ))
}

pub const RING_CHECKS: [&str; 3] = ["ring-structure", "unit-generated", "idealization"];

pub fn ring_check(name: &str, ring: &str, caps: &Caps) -> Outcome {
    let r = parse_ring(ring, caps.size_cap)?;
    match name {
        "ring-structure" => ring_structure(&r),
        "unit-generated" => {
            let (t, sl) = unit_generated(&r);
            let f = prime_subring(&r);
            let has_f = f.members().unwrap().iter().all(|&x| t.from_ambient(x).is_some());
            let full = t.size() == r.size();
            Ok((
                sl && has_f && (!r.is_local() || full),
                json!({ "size": t.size(), "sl": sl, "local": r.is_local(), "equals_ring": full }),
            ))
        }
        "idealization" => {
            let ideals = all_ideals(&r, 256)?;
            let mut failed = Vec::new();
            for m in &ideals {
                let i = FiniteRing::idealization(&r, m)?;
                let map: Vec<usize> = r.elements().map(|x| i.pair(x, 0).unwrap()).collect();
                let f = RingMorphism::from_map(&r, &i, map)?;
                if !f.is_local() {
                    failed.push(format!("not local for a module of {} elements", m.len()));
                }
                if f.is_sl() != (m.len() == 1) {
                    failed.push(format!("SL mismatch for a module of {} elements", m.len()));
                }
                for z in i.elements() {
                    let c = i.coords(z);
                    let (x, mm) = (c[0], c[1]);
                    if i.is_unit(z) != r.is_unit(x) {
                        failed.push(format!("unit criterion fails at {}", i.format(z)));
                    }
                    if let Some(inv) = r.units().inverse(x) {
                        let second = r.neg(r.mul(r.mul(inv, inv), mm));
                        let w = i.pair(inv, second).unwrap();
                        if i.mul(z, w) != i.one() {
                            failed.push(format!("inverse formula fails at {}", i.format(z)));
                        }
                    }
                }
            }
            Ok((failed.is_empty(), json!({ "modules": ideals.len(), "failed": failed })))
        }
        other => Err(CheckError::Unknown(other.to_string())),
    }
}

fn ring_structure(r: &Ring) -> Outcome {
    let mut failed: Vec<String> = Vec::new();
    let n = r.size();
    let j = jacobson(r);
    let maxes = maximal_ideals(r);
    let inter = maxes.iter().skip(1).fold(maxes[0].clone(), |acc, m| acc.intersection(m));
    if j.members() != inter.members() {
        failed.push("radical differs from the intersection of maximal ideals".into());
    }
    let definitional: Vec<usize> = r
        .elements()
        .filter(|&x| r.elements().all(|a| r.is_unit(r.sub(r.one(), r.mul(a, x)))))
        .collect();
    if definitional != j.members() {
        failed.push("radical differs from the 1 - ax criterion".into());
    }
    let nil = nilradical(r);
    let nil_scan: Vec<usize> = r
        .elements()
        .filter(|&x| {
            let mut y = x;
            (0..n).any(|_| {
                let z = y == 0;
                y = r.mul(y, x);
                z
            })
        })
        .collect();
    if nil.members() != nil_scan {
        failed.push("nilradical differs from the power scan".into());
    }
    if !nil.is_subset(&j) {
        failed.push("nilradical not inside the radical".into());
    }
    let (q, pi) = nil.quotient()?;
    if nilradical(&q).len() != 1 {
        failed.push("quotient by the nilradical not reduced".into());
    }
    let mut jimg: Vec<usize> = j.members().iter().map(|&x| pi.apply(x)).collect();
    jimg.sort_unstable();
    jimg.dedup();
    if jimg != jacobson(&q).members() {
        failed.push("radical does not pass to the reduced quotient".into());
    }
    let (qj, _) = j.quotient()?;
    let idem = qj.idempotents().to_vec();
    let units = qj.units().members();
    if !qj.elements().all(|x| idem.iter().any(|&e| units.iter().any(|&u| qj.mul(e, u) == x))) {
        failed.push("semisimple quotient has an element that is not idempotent times unit".into());
    }
    let zd = r.zero_divisors();
    let zd_scan: Vec<usize> = r
        .elements()
        .filter(|&x| r.elements().any(|y| y != 0 && r.mul(x, y) == 0))
        .collect();
    if zd != zd_scan {
        failed.push("zero divisors differ from the pair scan".into());
    }
    if zd.iter().any(|&z| r.is_unit(z)) || zd.len() + r.units().len() != n {
        failed.push("units and zero divisors do not partition the ring".into());
    }
    let idem_scan: Vec<usize> = r.elements().filter(|&x| r.mul(x, x) == x).collect();
    if idem_scan != r.idempotents() {
        failed.push("idempotents differ from the scan".into());
    }
    let prim = r.primitive_idempotents();
    let sum = prim.iter().fold(0, |acc, &e| r.add(acc, e));
    let orthogonal = prim
        .iter()
        .enumerate()
        .all(|(i, &a)| prim.iter().skip(i + 1).all(|&b| r.mul(a, b) == 0));
    if sum != r.one() || !orthogonal {
        failed.push("primitive idempotents are not a complete orthogonal family".into());
    }
    let factors = local_factors(r);
    if factors.len() != maxes.len() || !factors.iter().all(|f| f.ring.is_local()) {
        failed.push("local factors do not match the maximal ideals".into());
    }
    if factors.iter().map(|f| f.ring.size()).product::<usize>() != n {
        failed.push("local factor sizes do not multiply to the ring size".into());
    }
    if let Err(x) = ringlab_core::ideal::j_regular_witnesses(r) {
        failed.push(format!("no radical-complement witness for {}", r.format(x)));
    }
    if let Some(fs) = r.factors() {
        let expected: usize = fs.iter().map(|f| f.units().len()).product();
        if expected != r.units().len() {
            failed.push("units of the product are not the product of units".into());
        }
    }
    if brute_units(r) != r.units().members() {
        failed.push("units differ from the inverse scan".into());
    }
    Ok((
        failed.is_empty(),
        json!({
            "size": n,
            "units": r.units().len(),
            "maximal_ideals": maxes.len(),
            "radical": j.len(),
            "nilradical": nil.len(),
            "failed": failed,
        }),
    ))
}

pub const SHIFTED_CHECKS: [&str; 5] = [
    "shifted-rigidity",
    "shifted-conductor",
    "shifted-t-closed",
    "shifted-jacobson",
    "shifted-arithmetic",
];

pub const COHN_CHECKS: [&str; 5] = [
    "cohn-rigidity",
    "cohn-conductor",
    "cohn-zerodivisors",
    "cohn-t-closed",
    "cohn-arithmetic",
];

/// Pair scans run at `degree`; single scans at twice that.
pub fn shifted_check(name: &str, ring: &str, ideal: &Option<Vec<String>>, degree: usize, caps: &Caps) -> Outcome {
    let r = parse_ring(ring, caps.size_cap)?;
    let cap = caps.pair_scan_cap as u128;
    if name == "tail-ideal-oracle" {
        let gens = eval_list(&r, &ideal.clone().unwrap_or_default().join(", "))?;
        let i = Ideal::generated(&r, &gens);
        let rep = tail_ideal_oracle(&r, &i, degree, cap)?;
        return Ok((rep.counterexamples.is_empty(), serde_json::to_value(&rep).unwrap()));
    }
    let sr = match ideal {
        Some(g) => {
            let gens = eval_list(&r, &g.join(", "))?;
            ShiftedRing::shifted(&r, &Ideal::generated(&r, &gens))?
        }
        None => ShiftedRing::cohn(&r)?,
    };
    let single = 2 * degree;
    match name {
        "shifted-rigidity" | "cohn-rigidity" => {
            let rep = verify_unit_rigidity(&sr, degree, cap)?;
            Ok((rep.units_match && rep.violations.is_empty(), serde_json::to_value(&rep).unwrap()))
        }
        "shifted-conductor" | "cohn-conductor" => {
            let rep = verify_conductor(&sr, single);
            Ok((rep.matches, serde_json::to_value(&rep).unwrap()))
        }
        "shifted-t-closed" | "cohn-t-closed" => {
            let rep = verify_t_closed(&sr, single.min(t_closed_degree(&sr, cap)), cap)?;
            Ok((rep.violations.is_empty(), serde_json::to_value(&rep).unwrap()))
        }
        "shifted-jacobson" => {
            let j = jacobson(&r);
            if sr.slots()[0].ideal.members() != j.members() {
                return Ok((true, json!({ "radical_slot": false })));
            }
            let rep = verify_jacobson_membership(&sr, single, cap)?;
            Ok((rep.matches, serde_json::to_value(&rep).unwrap()))
        }
        "cohn-zerodivisors" => {
            let rep = verify_zerodivisors(&sr);
            Ok((rep.missing.is_empty(), serde_json::to_value(&rep).unwrap()))
        }
        "shifted-arithmetic" | "cohn-arithmetic" => shifted_arithmetic(&sr, degree),
        other => Err(CheckError::Unknown(other.to_string())),
    }
}

/// Largest tail degree whose single scan stays under the cap, so the
/// reported degree says what was actually covered.
fn t_closed_degree(sr: &ShiftedRing, cap: u128) -> usize {
    let per = sr.base().size() as u128;
    let mut d = 0;
    while sr.population(d as u32 + 2).saturating_mul(per) <= cap && d < 16 {
        d += 1;
    }
    d
}

/// Ring laws on elements of small tail degree, the head projection as a
/// homomorphism, and reducedness when the base is reduced.
fn shifted_arithmetic(sr: &ShiftedRing, degree: usize) -> Outcome {
    let mut len = degree + 1;
    while len > 1 && (sr.population(len as u32)).pow(3) > 2_000_000 {
        len -= 1;
    }
    let els = sr.elements(len);
    let r = sr.base();
    let mut failed: Vec<String> = Vec::new();
    let show = |e: &CohnElement| sr.format(e);
    'outer: for a in &els {
        for b in &els {
            let ab = sr.mul(a, b);
            if ab != sr.mul(b, a) || sr.add(a, b) != sr.add(b, a) {
                failed.push(format!("commutativity at {}, {}", show(a), show(b)));
                break 'outer;
            }
            if ab.head != r.mul(a.head, b.head) || sr.add(a, b).head != r.add(a.head, b.head) {
                failed.push(format!("head projection at {}, {}", show(a), show(b)));
                break 'outer;
            }
            for c in &els {
                if sr.mul(&ab, c) != sr.mul(a, &sr.mul(b, c))
                    || sr.mul(a, &sr.add(b, c)) != sr.add(&ab, &sr.mul(a, c))
                {
                    failed.push(format!("associativity or distributivity at {}, {}, {}", show(a), show(b), show(c)));
                    break 'outer;
                }
            }
        }
    }
    if r.is_reduced() {
        for a in els.iter().filter(|a| a.has_tail() || a.head != 0) {
            let mut p = a.clone();
            for _ in 0..8 {
                p = sr.mul(&p, &p);
                if p == sr.zero() {
                    failed.push(format!("{} is nilpotent over a reduced base", show(a)));
                    break;
                }
            }
        }
    }
    Ok((failed.is_empty(), json!({ "elements": els.len(), "tail_length": len, "failed": failed })))
}

pub fn poly_check(name: &str, inst: &Instance, caps: &Caps) -> Outcome {
    match (name, inst) {
        ("poly-units", Instance::Poly { ring, degree }) => {
            let r = parse_ring(ring, caps.size_cap)?;
            let rep = poly_unit_check(&r, *degree, caps.pair_scan_cap as u128)?;
            Ok((rep.matches && rep.pairs_consistent, serde_json::to_value(&rep).unwrap()))
        }
        ("irreducibility-oracle", Instance::Poly { ring, degree }) => {
            let k = parse_ring(ring, caps.size_cap)?;
            irreducibility_oracle(&k, *degree)
        }
        ("cyclotomic-irreducibility", Instance::Prime { p }) => {
            let f2 = FiniteRing::zmod(2)?;
            let irr = is_irreducible(&f2, &cyclotomic(&f2, *p as usize))?;
            let prim = is_primitive_root(2, *p)?;
            Ok((irr == prim, json!({ "irreducible": irr, "two_primitive": prim })))
        }
        ("monic-maximal", Instance::MonicMaximal { ring, ideal, poly }) => {
            let r = parse_ring(ring, caps.size_cap)?;
            let m = Ideal::generated(&r, &eval_list(&r, &ideal.join(", "))?);
            let f = BoundedPoly::new(poly.iter().map(|&c| r.from_int(c as i64)).collect());
            match monic_maximal_ideal(&r, &m, &f) {
                Ok(cert) => {
                    let expected = (r.size() / m.len()).pow(f.degree().unwrap() as u32);
                    Ok((
                        cert.field_size == expected && cert.contraction_is_m && m.is_maximal(),
                        json!({ "field_size": cert.field_size, "expected": expected }),
                    ))
                }
                Err(RingError::ReducibleImage(fac)) => {
                    // the factorization must multiply back to the image
                    let (k, pi) = m.quotient()?;
                    let fbar = f.map(pi.table());
                    let parts = factor(&k, &fbar)?;
                    let prod = parts.iter().fold(BoundedPoly::constant(k.one()), |acc, g| acc.mul(&k, g));
                    Ok((prod == fbar && parts.len() > 1, json!({ "reducible": fac })))
                }
                Err(e) => Err(e.into()),
            }
        }
        (other, _) => Err(CheckError::Unknown(other.to_string())),
    }
}

/// Trial division against the set of all products of two monic factors
/// of positive degree, for every monic polynomial up to `max_deg`.
fn irreducibility_oracle(k: &Ring, max_deg: usize) -> Outcome {
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 1..=max_deg {
        let mut reducible = std::collections::HashSet::new();
        for d in 1..=n / 2 {
            let left = monic_polys(k, d);
            let right = monic_polys(k, n - d);
            for g in &left {
                for h in &right {
                    reducible.insert(g.mul(k, h));
                }
            }
        }
        for f in monic_polys(k, n) {
            checked += 1;
            let roots = k.elements().filter(|&x| f.eval(k, x) == 0).count();
            if (2..=3).contains(&n) && (roots == 0) != !reducible.contains(&f) {
                mismatches.push(format!("root count disagrees at {}", f.format(k, "X")));
            }
            if is_irreducible(k, &f)? == reducible.contains(&f) {
                mismatches.push(f.format(k, "X"));
            }
        }
    }
    Ok((mismatches.is_empty(), json!({ "checked": checked, "mismatches": mismatches })))
}

pub fn example_check(name: &str, inst: &Instance, caps: &Caps) -> Outcome {
    match (name, inst) {
        ("units-and-embeddings", Instance::Named { .. }) => {
            let rep = units_and_embeddings()?;
            let ok = rep.ambient_units == ["1", "t^3 + t + 1", "t^3 + t^2 + 1"]
                && rep.sub_units == ["1", "y", "y^2"]
                && rep.embeddings == ["t^3 + t + 1", "t^3 + t^2 + 1"];
            Ok((ok, serde_json::to_value(&rep).unwrap()))
        }
        ("cyclotomic-construction", Instance::Prime { p }) => {
            let c = cyclotomic_sl_construction(*p as usize)?;
            let expected_units = (1usize << (*p - 1)) - 1;
            let ok = c.report.sl
                && c.morphism.is_injective()
                && c.report.sub_units == expected_units
                && c.report.consistency_violations.is_empty();
            Ok((
                ok,
                json!({
                    "image": c.ambient.format(c.image),
                    "sl": c.report.sl,
                    "units": c.report.sub_units,
                    "sizes": [c.sub.size(), c.ambient.size()],
                }),
            ))
        }
        ("cyclotomic-rejected", Instance::Prime { p }) => match cyclotomic_sl_construction(*p as usize) {
            Err(RingError::NotPrimitive(_)) => {
                let f2 = FiniteRing::zmod(2)?;
                let parts = factor(&f2, &cyclotomic(&f2, *p as usize))?;
                let shown: Vec<String> = parts.iter().map(|g| g.format(&f2, "X")).collect();
                Ok((parts.len() > 1, json!({ "factors": shown })))
            }
            Ok(_) => Ok((false, json!({ "error": "construction accepted a non-primitive prime" }))),
            Err(e) => Err(e.into()),
        },
        ("pad-construction", Instance::Pad { ring, n, m }) => {
            let r = parse_ring(ring, caps.size_cap)?;
            let pad = pad_construction(&r, *n, *m)?;
            Ok((
                pad.report.sl && pad.morphism.is_injective(),
                json!({
                    "sl": pad.report.sl,
                    "units": [pad.report.sub_units, pad.report.ambient_units],
                    "sizes": [pad.sub.size(), pad.ambient.size()],
                }),
            ))
        }
        (other, _) => Err(CheckError::Unknown(other.to_string())),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitsAndEmbeddings {
    pub ambient: String,
    pub sub: String,
    pub ambient_units: Vec<String>,
    pub sub_units: Vec<String>,
    pub embeddings: Vec<String>,
}

/// Units of `F2[t]/(t^4 - t)` and `F2[y]/(y^3 - 1)` and the injective SL
/// maps between them.
pub fn units_and_embeddings() -> Result<UnitsAndEmbeddings, RingError> {
    let s = split_algebra(3)?;
    let r = cyclic_group_algebra(3)?;
    let fmt = |ring: &Ring, xs: &[usize]| xs.iter().map(|&x| ring.format(x)).collect::<Vec<_>>();
    let emb = sl_embeddings(&r, &s)?;
    Ok(UnitsAndEmbeddings {
        ambient: s.describe(),
        sub: r.describe(),
        ambient_units: fmt(&s, s.units().members()),
        sub_units: fmt(&r, r.units().members()),
        embeddings: emb.iter().map(|(w, _)| s.format(*w)).collect(),
    })
}

/// Dispatches a single check on its instance.
pub fn run_check(name: &str, inst: &Instance, caps: &Caps) -> Finding {
    let outcome = match inst {
        Instance::Pair { ring, sub, over } => {
            PairCtx::build(ring, sub, over, caps).and_then(|c| pair_check(name, &c, caps))
        }
        Instance::Tower { ring, low, mid, high } => tower_check(ring, low, mid, high, caps),
        Instance::Ring { ring } => ring_check(name, ring, caps),
        Instance::Shifted { ring, ideal, degree } => shifted_check(name, ring, ideal, *degree, caps),
        Instance::Poly { .. } | Instance::MonicMaximal { .. } if name != "pad-construction" => {
            poly_check(name, inst, caps)
        }
        Instance::Prime { .. } if name == "cyclotomic-irreducibility" => poly_check(name, inst, caps),
        Instance::Corpus { max_size, lattice_cap, seed } => {
            crate::suite::localization_search(&Caps { max_size: *max_size, lattice_cap: *lattice_cap, ..*caps }, *seed)
        }
        _ => example_check(name, inst, caps),
    };
    finding(name, inst, outcome)
}

/// Re-runs a finding from its literal instance.
pub fn replay(f: &Finding, caps: &Caps) -> Verdict {
    run_check(&f.check, &f.instance, caps).verdict
}
