//! Shifted rings `R//I = R[X]/XI[X]` and Cohn's ring `R'`.
//!
//! Both are modelled as `R ⊕ ⊕_s X_s (R/I_s)[X_s]`: an element is a head in
//! `R` and, per slot `s`, a tail whose coefficient `k` is the `X_s^(k+1)`
//! term, read modulo the slot ideal `I_s`. The shifted ring has one slot
//! with `I_s = I`; Cohn's ring has one slot per maximal ideal.

use std::fmt;

use serde::Serialize;

use crate::error::{Result, RingError};
use crate::ideal::{jacobson, maximal_ideals, Ideal};
use crate::morphism::RingMorphism;
use crate::ring::Ring;

/// Default cap on the number of products computed by pair scans.
pub const PAIR_SCAN_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CohnElement {
    pub head: usize,
    /// One normalized coefficient list per slot.
    pub tails: Vec<Vec<usize>>,
}

impl CohnElement {
    pub fn has_tail(&self) -> bool {
        self.tails.iter().any(|t| !t.is_empty())
    }
}

#[derive(Debug, Clone)]
pub struct Slot {
    pub label: String,
    pub ideal: Ideal,
    pub quotient: Ring,
    pub projection: RingMorphism,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftedKind {
    Shifted,
    Cohn,
}

#[derive(Debug, Clone)]
pub struct ShiftedRing {
    base: Ring,
    kind: ShiftedKind,
    slots: Vec<Slot>,
}

fn normalize(mut t: Vec<usize>) -> Vec<usize> {
    while t.last() == Some(&0) {
        t.pop();
    }
    t
}

fn slot_label(ring: &Ring, ideal: &Ideal) -> String {
    let gens: Vec<String> = ideal.generators().iter().map(|&g| ring.format(g)).collect();
    if gens.is_empty() {
        "(0)".to_string()
    } else {
        format!("({})", gens.join(", "))
    }
}

impl ShiftedRing {
    /// `R//I`; `I` must be semiprime.
    pub fn shifted(base: &Ring, ideal: &Ideal) -> Result<Self> {
        if !ideal.is_proper() {
            return Err(RingError::InvalidIdeal("the slot ideal must be proper".into()));
        }
        if !ideal.is_semiprime() {
            return Err(RingError::NotSemiprime(format!(
                "{} is not reduced modulo the ideal",
                base.describe()
            )));
        }
        let (quotient, projection) = ideal.quotient()?;
        Ok(ShiftedRing {
            base: base.clone(),
            kind: ShiftedKind::Shifted,
            slots: vec![Slot {
                label: slot_label(base, ideal),
                ideal: ideal.clone(),
                quotient,
                projection,
            }],
        })
    }

    /// Cohn's ring: one slot per maximal ideal.
    pub fn cohn(base: &Ring) -> Result<Self> {
        let slots = maximal_ideals(base)
            .into_iter()
            .map(|m| {
                let (quotient, projection) = m.quotient()?;
                Ok(Slot {
                    label: slot_label(base, &m),
                    ideal: m,
                    quotient,
                    projection,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ShiftedRing {
            base: base.clone(),
            kind: ShiftedKind::Cohn,
            slots,
        })
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn kind(&self) -> ShiftedKind {
        self.kind
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// The ideal every slot generator is annihilated by: `I` for the shifted
    /// ring, `J(R)` for Cohn's ring.
    pub fn expected_conductor(&self) -> Ideal {
        match self.kind {
            ShiftedKind::Shifted => self.slots[0].ideal.clone(),
            ShiftedKind::Cohn => jacobson(&self.base),
        }
    }

    pub fn constant(&self, head: usize) -> CohnElement {
        CohnElement {
            head,
            tails: vec![Vec::new(); self.slots.len()],
        }
    }

    pub fn zero(&self) -> CohnElement {
        self.constant(0)
    }

    pub fn one(&self) -> CohnElement {
        self.constant(self.base.one())
    }

    /// `X_s`.
    pub fn generator(&self, slot: usize) -> CohnElement {
        let mut e = self.zero();
        e.tails[slot] = vec![self.slots[slot].quotient.one()];
        e
    }

    /// Builds an element, normalizing tails; coefficients must lie in the
    /// slot quotients.
    pub fn element(&self, head: usize, tails: Vec<Vec<usize>>) -> Result<CohnElement> {
        if head >= self.base.size() || tails.len() != self.slots.len() {
            return Err(RingError::InvalidRing("element does not fit the ring".into()));
        }
        for (t, s) in tails.iter().zip(&self.slots) {
            if t.iter().any(|&c| c >= s.quotient.size()) {
                return Err(RingError::InvalidRing("tail coefficient out of range".into()));
            }
        }
        Ok(CohnElement {
            head,
            tails: tails.into_iter().map(normalize).collect(),
        })
    }

    pub fn add(&self, a: &CohnElement, b: &CohnElement) -> CohnElement {
        let tails = self
            .slots
            .iter()
            .enumerate()
            .map(|(s, slot)| {
                let q = &slot.quotient;
                let (x, y) = (&a.tails[s], &b.tails[s]);
                let n = x.len().max(y.len());
                normalize(
                    (0..n)
                        .map(|k| q.add(*x.get(k).unwrap_or(&0), *y.get(k).unwrap_or(&0)))
                        .collect(),
                )
            })
            .collect();
        CohnElement {
            head: self.base.add(a.head, b.head),
            tails,
        }
    }

    pub fn neg(&self, a: &CohnElement) -> CohnElement {
        CohnElement {
            head: self.base.neg(a.head),
            tails: self
                .slots
                .iter()
                .zip(&a.tails)
                .map(|(slot, t)| t.iter().map(|&c| slot.quotient.neg(c)).collect())
                .collect(),
        }
    }

    pub fn sub(&self, a: &CohnElement, b: &CohnElement) -> CohnElement {
        self.add(a, &self.neg(b))
    }

    /// Heads multiply in `R`; per slot the tail is
    /// `h₁·t₂ + h₂·t₁ + X·t₁t₂`, and tails of different slots annihilate.
    pub fn mul(&self, a: &CohnElement, b: &CohnElement) -> CohnElement {
        let tails = self
            .slots
            .iter()
            .enumerate()
            .map(|(s, slot)| {
                let q = &slot.quotient;
                let (x, y) = (&a.tails[s], &b.tails[s]);
                if x.is_empty() && y.is_empty() {
                    return Vec::new();
                }
                let ha = slot.projection.apply(a.head);
                let hb = slot.projection.apply(b.head);
                let n = x.len().max(y.len()).max(x.len() + y.len());
                let mut out = vec![0; n];
                for (k, &c) in y.iter().enumerate() {
                    out[k] = q.add(out[k], q.mul(ha, c));
                }
                for (k, &c) in x.iter().enumerate() {
                    out[k] = q.add(out[k], q.mul(hb, c));
                }
                for (i, &c) in x.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (j, &d) in y.iter().enumerate() {
                        out[i + j + 1] = q.add(out[i + j + 1], q.mul(c, d));
                    }
                }
                normalize(out)
            })
            .collect();
        CohnElement {
            head: self.base.mul(a.head, b.head),
            tails,
        }
    }

    pub fn pow(&self, a: &CohnElement, k: u32) -> CohnElement {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Literal such as `3 + x_(2)*(1 + X)`.
    pub fn format(&self, a: &CohnElement) -> String {
        let mut parts = Vec::new();
        if a.head != 0 || !a.has_tail() {
            parts.push(self.base.format(a.head));
        }
        for (slot, t) in self.slots.iter().zip(&a.tails) {
            if t.is_empty() {
                continue;
            }
            let q = &slot.quotient;
            let name = match self.kind {
                ShiftedKind::Shifted => "x".to_string(),
                ShiftedKind::Cohn => format!("x_{}", slot.label),
            };
            let mut terms = Vec::new();
            for (k, &c) in t.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let cs = q.format(c);
                let mono = match k {
                    0 => String::new(),
                    1 => "X".into(),
                    _ => format!("X^{k}"),
                };
                terms.push(match (k, c == q.one()) {
                    (0, _) => cs,
                    (_, true) => mono,
                    _ => format!("{cs}*{mono}"),
                });
            }
            if terms.len() == 1 && t.len() == 1 {
                if t[0] == q.one() {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}*{}", terms[0]));
                }
            } else {
                parts.push(format!("{name}*({})", terms.join(" + ")));
            }
        }
        parts.join(" + ")
    }

    /// Number of elements with every tail of degree below `len`.
    pub fn population(&self, len: u32) -> u128 {
        self.slots.iter().fold(self.base.size() as u128, |acc, s| {
            acc.saturating_mul((s.quotient.size() as u128).saturating_pow(len))
        })
    }

    /// Tail combinations with each tail of length at most `len`.
    pub fn tails(&self, len: usize) -> TailIter<'_> {
        TailIter {
            ring: self,
            len,
            digits: vec![0; len * self.slots.len()],
            done: false,
        }
    }

    /// Every element with tail degree below `len`, heads varying slowest.
    pub fn elements(&self, len: usize) -> Vec<CohnElement> {
        let tails: Vec<Vec<Vec<usize>>> = self.tails(len).collect();
        let mut out = Vec::with_capacity(self.base.size() * tails.len());
        for h in self.base.elements() {
            for t in &tails {
                out.push(CohnElement {
                    head: h,
                    tails: t.clone(),
                });
            }
        }
        out
    }
}

pub struct TailIter<'a> {
    ring: &'a ShiftedRing,
    len: usize,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for TailIter<'_> {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self
            .digits
            .chunks(self.len.max(1))
            .take(self.ring.slots.len())
            .map(|c| if self.len == 0 { Vec::new() } else { normalize(c.to_vec()) })
            .collect();
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let radix = self.ring.slots[i / self.len].quotient.size();
            self.digits[i] += 1;
            if self.digits[i] < radix {
                break;
            }
            self.digits[i] = 0;
        }
        Some(item)
    }
}

fn check_cap(population: u128, cap: u128) -> Result<()> {
    if population > cap {
        Err(RingError::CapExceeded { population, cap })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub degree: usize,
    pub products: u128,
    pub units: Vec<String>,
    pub units_match: bool,
    pub violations: Vec<String>,
}

/// Multiplies all pairs with tail degree at most `degree` whose heads
/// multiply to `1` (no other pair can multiply to `1`) and checks the units
/// found are exactly the constants `(u, 0)` with `u ∈ U(R)`.
pub fn verify_unit_rigidity(sr: &ShiftedRing, degree: usize, cap: u128) -> Result<RigidityReport> {
    let r = sr.base();
    let tails: Vec<_> = sr.tails(degree + 1).collect();
    let t = tails.len() as u128;
    let products = r.units().len() as u128 * t * t;
    check_cap(products, cap)?;
    let one = sr.one();
    let mut units = Vec::new();
    let mut violations = Vec::new();
    for &a in r.units().members() {
        let b = r.units().inverse(a).unwrap();
        for ta in &tails {
            let y = CohnElement {
                head: a,
                tails: ta.clone(),
            };
            let mut is_unit = false;
            for tb in &tails {
                let z = CohnElement {
                    head: b,
                    tails: tb.clone(),
                };
                if sr.mul(&y, &z) == one {
                    is_unit = true;
                    if y.has_tail() || z.has_tail() {
                        violations.push(format!(
                            "({}) * ({}) = 1",
                            sr.format(&y),
                            sr.format(&z)
                        ));
                    }
                }
            }
            if is_unit {
                units.push(y);
            }
        }
    }
    units.sort();
    let expected: Vec<CohnElement> = r.units().members().iter().map(|&u| sr.constant(u)).collect();
    Ok(RigidityReport {
        degree,
        products,
        units_match: units == expected,
        units: units.iter().map(|u| sr.format(u)).collect(),
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub tuples: u128,
    pub hypothesis_holds: u128,
    pub counterexamples: Vec<String>,
}

/// For units `a, b` and `f, g ∈ R[X]` of degree at most `degree`:
/// `af + bg + Xfg ∈ I[X]` must force `f, g ∈ I[X]`.
pub fn tail_ideal_oracle(ring: &Ring, ideal: &Ideal, degree: usize, cap: u128) -> Result<OracleReport> {
    let n = ring.size() as u128;
    let polys = n.saturating_pow(degree as u32 + 1);
    let units = ring.units().members();
    let tuples = (units.len() as u128).pow(2).saturating_mul(polys.saturating_mul(polys));
    check_cap(tuples, cap)?;
    let len = degree + 1;
    let all: Vec<Vec<usize>> = (0..polys as usize)
        .map(|mut k| {
            (0..len)
                .map(|_| {
                    let c = k % ring.size();
                    k /= ring.size();
                    c
                })
                .collect()
        })
        .collect();
    let in_ideal = |p: &[usize]| p.iter().all(|&c| ideal.contains(c));
    let mut hyp = 0u128;
    let mut counterexamples = Vec::new();
    let mut h = vec![0usize; 2 * len];
    for &a in units {
        for &b in units {
            for f in &all {
                for g in &all {
                    h.iter_mut().for_each(|c| *c = 0);
                    for k in 0..len {
                        h[k] = ring.add(ring.mul(a, f[k]), ring.mul(b, g[k]));
                    }
                    for i in 0..len {
                        if f[i] == 0 {
                            continue;
                        }
                        for j in 0..len {
                            h[i + j + 1] = ring.add(h[i + j + 1], ring.mul(f[i], g[j]));
                        }
                    }
                    if in_ideal(&h) {
                        hyp += 1;
                        if !(in_ideal(f) && in_ideal(g)) && counterexamples.len() < 16 {
                            counterexamples.push(format!(
                                "a={}, b={}, f={:?}, g={:?}",
                                ring.format(a),
                                ring.format(b),
                                f,
                                g
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(OracleReport {
        tuples,
        hypothesis_holds: hyp,
        counterexamples,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConductorReport {
    pub trace: Vec<String>,
    pub expected: Vec<String>,
    pub matches: bool,
}

/// `t ∈ R` with `t·X_s^(k+1)` free of tails for every slot and every
/// `k ≤ degree`; compared against `I` (shifted) or `J(R)` (Cohn).
pub fn verify_conductor(sr: &ShiftedRing, degree: usize) -> ConductorReport {
    let r = sr.base();
    let trace: Vec<usize> = r
        .elements()
        .filter(|&t| {
            let c = sr.constant(t);
            (0..sr.slots().len()).all(|s| {
                let mut x = sr.generator(s);
                (0..=degree).all(|_| {
                    let ok = !sr.mul(&c, &x).has_tail();
                    x = sr.mul(&x, &sr.generator(s));
                    ok
                })
            })
        })
        .collect();
    let expected = sr.expected_conductor();
    ConductorReport {
        matches: trace.as_slice() == expected.members(),
        trace: trace.iter().map(|&t| r.format(t)).collect(),
        expected: expected.members().iter().map(|&t| r.format(t)).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroDivisorReport {
    /// `(y, slot)` with `y·X_slot = 0`.
    pub witnesses: Vec<(String, String)>,
    pub missing: Vec<String>,
}

/// Every nonunit `y` of `R` kills the generator of a slot whose maximal
/// ideal contains it.
pub fn verify_zerodivisors(sr: &ShiftedRing) -> ZeroDivisorReport {
    let r = sr.base();
    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    for y in r.elements().filter(|&y| !r.is_unit(y)) {
        let c = sr.constant(y);
        let found = (0..sr.slots().len()).find(|&s| {
            sr.slots()[s].ideal.contains(y) && sr.mul(&c, &sr.generator(s)) == sr.zero()
        });
        match found {
            Some(s) => witnesses.push((r.format(y), sr.format(&sr.generator(s)))),
            None => missing.push(r.format(y)),
        }
    }
    ZeroDivisorReport { witnesses, missing }
}

#[derive(Debug, Clone, Serialize)]
pub struct TClosedReport {
    pub degree: usize,
    pub checked: u128,
    pub violations: Vec<String>,
}

/// No `y` with a nonzero tail of degree at most `degree` has both
/// `y² - ry` and `y³ - ry²` tail-free for some `r ∈ R`.
pub fn verify_t_closed(sr: &ShiftedRing, degree: usize, cap: u128) -> Result<TClosedReport> {
    let r = sr.base();
    let checked = sr.population(degree as u32 + 1).saturating_mul(r.size() as u128);
    check_cap(checked, cap)?;
    let mut violations = Vec::new();
    for y in sr.elements(degree + 1) {
        if !y.has_tail() {
            continue;
        }
        let y2 = sr.mul(&y, &y);
        let y3 = sr.mul(&y2, &y);
        for rr in r.elements() {
            let c = sr.constant(rr);
            if !sr.sub(&y2, &sr.mul(&c, &y)).has_tail() && !sr.sub(&y3, &sr.mul(&c, &y2)).has_tail() {
                violations.push(format!("y = {}, r = {}", sr.format(&y), r.format(rr)));
            }
        }
    }
    Ok(TClosedReport {
        degree,
        checked,
        violations,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobsonReport {
    pub trace: Vec<String>,
    pub matches: bool,
    pub violations: Vec<String>,
}

/// The bounded Jacobson trace of `R//J(R)`:
/// (i) `1 - zj` is a unit for `j ∈ J(R)` and every `z` of bounded degree,
/// (ii) elements with a tail fail with `z = 1` and constants outside `J(R)`
/// fail with a constant witness.
pub fn verify_jacobson_membership(sr: &ShiftedRing, degree: usize, cap: u128) -> Result<JacobsonReport> {
    let r = sr.base();
    let j = jacobson(r);
    let zs = sr.elements(degree + 1);
    check_cap((zs.len() as u128).saturating_mul(r.size() as u128 + 1), cap)?;
    let one = sr.one();
    // by rigidity the units are the constants (u, 0), u ∈ U(R)
    let is_unit = |e: &CohnElement| !e.has_tail() && r.is_unit(e.head);
    let mut violations = Vec::new();
    let mut trace = Vec::new();
    for x in r.elements() {
        let c = sr.constant(x);
        if j.contains(x) {
            match zs.iter().find(|z| !is_unit(&sr.sub(&one, &sr.mul(z, &c)))) {
                Some(z) => violations.push(format!(
                    "1 - ({}) * {} is not a unit",
                    sr.format(z),
                    r.format(x)
                )),
                None => trace.push(x),
            }
        } else if !r
            .elements()
            .any(|b| !is_unit(&sr.sub(&one, &sr.mul(&sr.constant(b), &c))))
        {
            violations.push(format!("{} has no witness outside the radical", r.format(x)));
        }
    }
    for y in zs.iter().filter(|y| y.has_tail()) {
        if is_unit(&sr.sub(&one, y)) {
            violations.push(format!("1 - ({}) is a unit", sr.format(y)));
        }
    }
    Ok(JacobsonReport {
        matches: trace.as_slice() == j.members() && violations.is_empty(),
        trace: trace.iter().map(|&t| r.format(t)).collect(),
        violations,
    })
}

/// Units of the shifted ring with tail degree at most `degree`, found by
/// pair scan.
pub fn bounded_units(sr: &ShiftedRing, degree: usize, cap: u128) -> Result<Vec<CohnElement>> {
    let r = sr.base();
    let tails: Vec<_> = sr.tails(degree + 1).collect();
    let t = tails.len() as u128;
    check_cap(r.units().len() as u128 * t * t, cap)?;
    let one = sr.one();
    let mut out = Vec::new();
    for &a in r.units().members() {
        let b = r.units().inverse(a).unwrap();
        for ta in &tails {
            let y = CohnElement {
                head: a,
                tails: ta.clone(),
            };
            let hit = tails.iter().any(|tb| {
                let z = CohnElement {
                    head: b,
                    tails: tb.clone(),
                };
                sr.mul(&y, &z) == one
            });
            if hit {
                out.push(y);
            }
        }
    }
    out.sort();
    Ok(out)
}

impl fmt::Display for ShiftedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShiftedKind::Shifted => write!(f, "shifted"),
            ShiftedKind::Cohn => write!(f, "cohn"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteRing;

    fn z4_mod_2() -> ShiftedRing {
        let z4 = FiniteRing::zmod(4).unwrap();
        let i = Ideal::generated(&z4, &[2]);
        ShiftedRing::shifted(&z4, &i).unwrap()
    }

    #[test]
    fn rejects_non_semiprime() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let zero = Ideal::zero(&z4);
        assert!(matches!(
            ShiftedRing::shifted(&z4, &zero),
            Err(RingError::NotSemiprime(_))
        ));
    }

    #[test]
    fn shifted_arithmetic() {
        let sr = z4_mod_2();
        let x = sr.generator(0);
        let two = sr.constant(2);
        assert_eq!(sr.mul(&two, &x), sr.zero());
        let x2 = sr.mul(&x, &x);
        assert_eq!(x2.tails[0], vec![0, 1]);
        let y = sr.add(&sr.constant(3), &sr.add(&x, &x2));
        assert_eq!(sr.format(&y), "3 + x*(1 + X)");
    }

    #[test]
    fn z4_rigidity() {
        let sr = z4_mod_2();
        let rep = verify_unit_rigidity(&sr, 2, PAIR_SCAN_CAP).unwrap();
        assert_eq!(rep.units, vec!["1", "3"]);
        assert!(rep.units_match && rep.violations.is_empty());
        let c = verify_conductor(&sr, 4);
        assert_eq!(c.trace, vec!["0", "2"]);
        assert!(c.matches);
    }

    #[test]
    fn cohn_z6() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let cr = ShiftedRing::cohn(&z6).unwrap();
        assert_eq!(cr.slots().len(), 2);
        let z = verify_zerodivisors(&cr);
        assert!(z.missing.is_empty());
        assert_eq!(z.witnesses.len(), 4);
        let c = verify_conductor(&cr, 2);
        assert_eq!(c.trace, vec!["0"]);
        // cross-slot products vanish
        assert_eq!(cr.mul(&cr.generator(0), &cr.generator(1)), cr.zero());
    }

    #[test]
    fn tail_ideal_oracle_sample() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let i = Ideal::generated(&z4, &[2]);
        let rep = tail_ideal_oracle(&z4, &i, 1, PAIR_SCAN_CAP).unwrap();
        assert!(rep.counterexamples.is_empty());
        assert!(rep.hypothesis_holds > 0);
    }
}
