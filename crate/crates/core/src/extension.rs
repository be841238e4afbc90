//! Ring extensions `R ⊆ S` and the predicates defined on them.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Result, RingError};
use crate::ideal::{jacobson, maximal_ideals, Ideal};
use crate::morphism::RingMorphism;
use crate::ring::{FiniteRing, Ring};
use crate::span::{self, AdditiveSpan};
use crate::units::subring_generated;

/// Default degree bound for the co-integral closedness scan.
pub const CO_INTEGRAL_DEGREE: usize = 4;

/// A subring `R` of an ambient ring `S`.
#[derive(Clone)]
pub struct Extension {
    sub: Ring,
    ambient: Ring,
    mask: FixedBitSet,
}

impl std::fmt::Debug for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Extension({} in {})",
            self.sub.size(),
            self.ambient.describe()
        )
    }
}

impl Extension {
    /// Wraps a ring of subring kind together with its ambient ring.
    pub fn new(sub: &Ring) -> Result<Self> {
        let (ambient, members) = match (sub.ambient(), sub.members()) {
            (Some(a), Some(m)) => (a.clone(), m),
            _ => return Err(RingError::NotAnInclusion("ring is not a subring".into())),
        };
        let mask = span::mask_of(ambient.size(), members);
        Ok(Extension {
            sub: sub.clone(),
            ambient,
            mask,
        })
    }

    /// `R ⊆ S` with `R` generated by `gens` (and the prime subring).
    pub fn from_generators(ambient: &Ring, gens: &[usize]) -> Self {
        Extension::new(&subring_generated(ambient, gens)).expect("generated ring is a subring")
    }

    /// `S` over itself.
    pub fn trivial(ring: &Ring) -> Self {
        Extension::new(&FiniteRing::subring_unchecked(ring, ring.elements().collect()))
            .expect("whole ring is a subring")
    }

    /// The image of an injective morphism inside its target.
    pub fn from_morphism(f: &RingMorphism) -> Result<Self> {
        if !f.is_injective() {
            return Err(RingError::NotAnInclusion("morphism has a nonzero kernel".into()));
        }
        Extension::new(&f.image())
    }

    /// `R ⊆ T` for two subrings of one ambient ring, re-expressed with `T`
    /// as the ambient.
    pub fn between(r: &Ring, t: &Ring) -> Result<Self> {
        let (ra, ta) = match (r.ambient(), t.ambient()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(RingError::NotAnInclusion("both rings must be subrings".into())),
        };
        if !Arc::ptr_eq(ra, ta) {
            return Err(RingError::NotAnInclusion("subrings of different rings".into()));
        }
        let mut inner = Vec::with_capacity(r.size());
        for &x in r.members().unwrap() {
            match t.from_ambient(x) {
                Some(y) => inner.push(y),
                None => {
                    return Err(RingError::NotAnInclusion(format!(
                        "{} is not in the larger ring",
                        ra.format(x)
                    )))
                }
            }
        }
        Extension::new(&FiniteRing::subring_unchecked(t, inner))
    }

    pub fn sub(&self) -> &Ring {
        &self.sub
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    /// Members of `R` as ambient indices.
    pub fn sub_members(&self) -> &[usize] {
        self.sub.members().unwrap()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.sub.size() == self.ambient.size()
    }

    pub fn inclusion(&self) -> RingMorphism {
        RingMorphism::inclusion(&self.sub).unwrap()
    }

    /// `U(S) ∩ R = U(R)`.
    pub fn is_local(&self) -> bool {
        let su = self.ambient.units();
        self.sub_members()
            .iter()
            .enumerate()
            .all(|(i, &x)| self.sub.is_unit(i) == su.contains(x))
    }

    /// `U(R) = U(S)`.
    pub fn is_sl(&self) -> bool {
        self.is_local() && self.sub.units().len() == self.ambient.units().len()
    }

    /// `(R:S) = {s : sS ⊆ R}` as an ideal of `S`. Since `s·-` is additive it
    /// suffices to test `s` against an additive basis of `S`.
    pub fn conductor(&self) -> Ideal {
        let s = &self.ambient;
        let basis = s.additive_basis();
        let members = s
            .elements()
            .filter(|&x| basis.iter().all(|&b| self.contains(s.mul(x, b))))
            .collect();
        Ideal::from_members_unchecked(s, members)
    }

    /// The conductor as an ideal of `R`.
    pub fn conductor_in_sub(&self) -> Ideal {
        let c = self.conductor();
        let members = c
            .members()
            .iter()
            .map(|&x| self.sub.from_ambient(x).unwrap())
            .collect();
        Ideal::from_members_unchecked(&self.sub, members)
    }

    /// Positions in `maximal_ideals(R)` of the maximal ideals `M` at which the
    /// extension is nontrivial: for the primitive idempotent `e` of `R`
    /// outside `M`, `eS ≠ eR`.
    pub fn msupp(&self) -> Vec<usize> {
        let r = &self.sub;
        let s = &self.ambient;
        let maxes = maximal_ideals(r);
        let mut out = Vec::new();
        for &e in r.primitive_idempotents() {
            let ea = r.to_ambient(e).unwrap();
            let mut es = FixedBitSet::with_capacity(s.size());
            for x in s.elements() {
                es.insert(s.mul(ea, x));
            }
            let er = self
                .sub_members()
                .iter()
                .map(|&x| s.mul(ea, x))
                .collect::<HashSet<_>>()
                .len();
            if es.count_ones(..) != er {
                let m = maxes.iter().position(|m| !m.contains(e)).unwrap();
                out.push(m);
            }
        }
        out.sort_unstable();
        out
    }

    /// `b ∉ R` with `b², b³ ∈ R`.
    pub fn seminormal_witness(&self) -> Option<usize> {
        let s = &self.ambient;
        s.elements().find(|&b| {
            if self.contains(b) {
                return false;
            }
            let b2 = s.mul(b, b);
            self.contains(b2) && self.contains(s.mul(b2, b))
        })
    }

    /// `(b, r)` with `b ∉ R`, `r ∈ R` and `b² - rb, b³ - rb² ∈ R`.
    pub fn t_closed_witness(&self) -> Option<(usize, usize)> {
        let s = &self.ambient;
        for b in s.elements() {
            if self.contains(b) {
                continue;
            }
            let b2 = s.mul(b, b);
            let b3 = s.mul(b2, b);
            for &r in self.sub_members() {
                if self.contains(s.sub(b2, s.mul(r, b))) && self.contains(s.sub(b3, s.mul(r, b2))) {
                    return Some((b, r));
                }
            }
        }
        None
    }

    /// The `r = 1` case of [`Extension::t_closed_witness`].
    pub fn u_closed_witness(&self) -> Option<usize> {
        let s = &self.ambient;
        s.elements().find(|&b| {
            if self.contains(b) {
                return false;
            }
            let b2 = s.mul(b, b);
            let b3 = s.mul(b2, b);
            self.contains(s.sub(b2, b)) && self.contains(s.sub(b3, b2))
        })
    }

    /// A root `s ∉ R` of a comonic polynomial over `R` of degree at most
    /// `degree`. Such a root is a unit with `s⁻¹` in the `R`-span of
    /// `1, s, ..., s^(degree-1)`, and conversely any such unit is a root of
    /// `1 - Σ aᵢ X^(i+1)`, so the scan runs over units only.
    pub fn co_integral_witness(&self, degree: usize) -> Option<usize> {
        let s = &self.ambient;
        let basis: Vec<usize> = self
            .sub
            .additive_basis()
            .iter()
            .map(|&b| self.sub.to_ambient(b).unwrap())
            .collect();
        let units = s.units();
        units.members().iter().copied().find(|&u| {
            if self.contains(u) {
                return false;
            }
            let inv = units.inverse(u).unwrap();
            let mut span = AdditiveSpan::new(s);
            let mut p = s.one();
            for _ in 0..degree {
                for &b in &basis {
                    span.adjoin(s.mul(b, p));
                }
                p = s.mul(p, u);
            }
            span.mask.contains(inv)
        })
    }

    pub fn closedness(&self, degree: usize) -> Closedness {
        let sn = self.seminormal_witness();
        let t = self.t_closed_witness();
        let u = self.u_closed_witness();
        let c = self.co_integral_witness(degree);
        Closedness {
            seminormal: sn.is_none(),
            t_closed: t.is_none(),
            u_closed: u.is_none(),
            co_integrally_closed: c.is_none(),
            seminormal_witness: sn,
            t_closed_witness: t,
            u_closed_witness: u,
            co_integral_witness: c,
        }
    }

    /// Residue data over each maximal ideal `N` of `S`.
    pub fn residual(&self) -> Residual {
        let r = &self.sub;
        let s = &self.ambient;
        let r_max = maximal_ideals(r);
        let s_max = maximal_ideals(s);
        let mut fibers = Vec::with_capacity(s_max.len());
        for n in &s_max {
            let contraction: Vec<usize> = n
                .members()
                .iter()
                .filter_map(|&x| r.from_ambient(x))
                .collect();
            let under = r_max
                .iter()
                .position(|m| m.members() == contraction.as_slice())
                .expect("contraction of a maximal ideal is maximal for integral extensions");
            fibers.push(Fiber {
                under,
                sub_residue: r.size() / contraction.len(),
                ambient_residue: s.size() / n.len(),
            });
        }
        let infra_integral = fibers.iter().all(|f| f.sub_residue == f.ambient_residue);
        let mut unders: Vec<usize> = fibers.iter().map(|f| f.under).collect();
        unders.sort_unstable();
        let i_extension = unders.windows(2).all(|w| w[0] != w[1]);
        Residual {
            infra_integral,
            i_extension,
            fibers,
        }
    }

    /// `[U(S) : U(R)]` and the distinct modules `Ru` for `u ∈ U(S)`.
    pub fn sl_defect(&self) -> SlDefect {
        let s = &self.ambient;
        let su = s.units();
        let index = su.len() / self.sub.units().len();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut representatives = Vec::new();
        for &u in su.members() {
            let mut m = FixedBitSet::with_capacity(s.size());
            for &r in self.sub_members() {
                m.insert(s.mul(r, u));
            }
            if seen.insert(m) {
                representatives.push(u);
            }
        }
        SlDefect {
            index,
            module_count: representatives.len(),
            representatives,
        }
    }

    /// Every predicate and invariant in one report, with consistency checks.
    pub fn analyze(&self) -> ExtensionReport {
        let r = &self.sub;
        let s = &self.ambient;
        let local = self.is_local();
        let sl = self.is_sl();
        let closed = self.closedness(CO_INTEGRAL_DEGREE);
        let residual = self.residual();
        let defect = self.sl_defect();
        let r_max = maximal_ideals(r);
        let conductor = self.conductor();

        let mut violations = Vec::new();
        if sl && !local {
            violations.push("strongly local but not local".to_string());
        }
        if sl && defect.index != 1 {
            violations.push(format!("strongly local with defect {}", defect.index));
        }
        if defect.index != defect.module_count {
            violations.push(format!(
                "unit index {} differs from {} invertible modules",
                defect.index, defect.module_count
            ));
        }
        if sl {
            let nil_r: Vec<usize> = r
                .nilradical()
                .iter()
                .map(|&x| r.to_ambient(x).unwrap())
                .collect();
            let mut nil_r = nil_r;
            nil_r.sort_unstable();
            if nil_r != s.nilradical() {
                violations.push("strongly local but Nil(R) differs from Nil(S)".into());
            }
            let jr = jacobson(r);
            let js = jacobson(s);
            let inside = js
                .members()
                .iter()
                .all(|&x| r.from_ambient(x).is_some_and(|y| jr.contains(y)));
            if !inside {
                violations.push("strongly local but J(S) is not inside J(R)".into());
            }
        }

        let fmt_sub = |i: &Ideal| IdealSummary::of(i);
        ExtensionReport {
            sub_size: r.size(),
            ambient_size: s.size(),
            sub_units: r.units().len(),
            ambient_units: s.units().len(),
            local,
            sl,
            seminormal: closed.seminormal,
            t_closed: closed.t_closed,
            u_closed: closed.u_closed,
            infra_integral: residual.infra_integral,
            i_extension: residual.i_extension,
            co_integrally_closed: closed.co_integrally_closed,
            witnesses: Witnesses {
                seminormal: closed.seminormal_witness.map(|b| s.format(b)),
                t_closed: closed
                    .t_closed_witness
                    .map(|(b, r)| vec![s.format(b), s.format(r)]),
                u_closed: closed.u_closed_witness.map(|b| s.format(b)),
                co_integrally_closed: closed.co_integral_witness.map(|b| s.format(b)),
            },
            conductor: IdealSummary::of(&conductor),
            msupp: self.msupp().iter().map(|&i| fmt_sub(&r_max[i])).collect(),
            sl_defect: defect.index,
            invertible_modules: defect.module_count,
            residual_fibers: residual
                .fibers
                .iter()
                .zip(maximal_ideals(s))
                .map(|(f, n)| FiberSummary {
                    maximal: IdealSummary::of(&n),
                    contraction: fmt_sub(&r_max[f.under]),
                    sub_residue_size: f.sub_residue,
                    ambient_residue_size: f.ambient_residue,
                })
                .collect(),
            consistency_violations: violations,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Closedness {
    pub seminormal: bool,
    pub t_closed: bool,
    pub u_closed: bool,
    pub co_integrally_closed: bool,
    pub seminormal_witness: Option<usize>,
    pub t_closed_witness: Option<(usize, usize)>,
    pub u_closed_witness: Option<usize>,
    pub co_integral_witness: Option<usize>,
}

/// Residue data of one maximal ideal `N` of `S`: `under` is the position of
/// `N ∩ R` in `maximal_ideals(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub under: usize,
    pub sub_residue: usize,
    pub ambient_residue: usize,
}

#[derive(Debug, Clone)]
pub struct Residual {
    pub infra_integral: bool,
    pub i_extension: bool,
    pub fibers: Vec<Fiber>,
}

#[derive(Debug, Clone)]
pub struct SlDefect {
    pub index: usize,
    pub module_count: usize,
    /// Least unit `u` of each distinct module `Ru`.
    pub representatives: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealSummary {
    pub size: usize,
    pub generators: Vec<String>,
}

impl IdealSummary {
    pub fn of(ideal: &Ideal) -> Self {
        let r = ideal.ring();
        IdealSummary {
            size: ideal.len(),
            generators: ideal.generators().iter().map(|&g| r.format(g)).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Witnesses {
    pub seminormal: Option<String>,
    pub t_closed: Option<Vec<String>>,
    pub u_closed: Option<String>,
    pub co_integrally_closed: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberSummary {
    pub maximal: IdealSummary,
    pub contraction: IdealSummary,
    pub sub_residue_size: usize,
    pub ambient_residue_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub sub_size: usize,
    pub ambient_size: usize,
    pub sub_units: usize,
    pub ambient_units: usize,
    pub local: bool,
    pub sl: bool,
    pub seminormal: bool,
    pub t_closed: bool,
    pub u_closed: bool,
    pub infra_integral: bool,
    pub i_extension: bool,
    pub co_integrally_closed: bool,
    pub witnesses: Witnesses,
    pub conductor: IdealSummary,
    pub msupp: Vec<IdealSummary>,
    pub sl_defect: usize,
    pub invertible_modules: usize,
    pub residual_fibers: Vec<FiberSummary>,
    pub consistency_violations: Vec<String>,
}

/// Every `x` satisfies `x² = ux` for some unit `u`; returns the first `x`
/// without such a unit.
pub fn quadratic_failure(ring: &Ring) -> Option<usize> {
    let units = ring.units();
    ring.elements().find(|&x| {
        let x2 = ring.mul(x, x);
        !units.members().iter().any(|&u| ring.mul(u, x) == x2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2n(n: usize) -> Ring {
        FiniteRing::product(&vec![FiniteRing::zmod(2).unwrap(); n]).unwrap()
    }

    #[test]
    fn diagonal_in_f2_squared() {
        let s = f2n(2);
        let ext = Extension::from_generators(&s, &[]);
        assert!(ext.is_sl());
        assert_eq!(ext.conductor().members(), &[0]);
        assert!(ext.seminormal_witness().is_none());
        let (b, r) = ext.t_closed_witness().unwrap();
        assert!(!ext.contains(b));
        assert!(ext.contains(r));
        let res = ext.residual();
        assert!(res.infra_integral);
        assert!(!res.i_extension);
        assert_eq!(ext.msupp(), vec![0]);
    }

    #[test]
    fn dual_numbers_not_seminormal() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let s = FiniteRing::poly_quot(&f2, &[0, 0, 1], "x").unwrap();
        let ext = Extension::from_generators(&s, &[]);
        assert_eq!(ext.seminormal_witness(), s.variable("x"));
        let rep = ext.analyze();
        assert!(!rep.sl);
        assert!(!rep.seminormal);
        assert!(rep.local);
    }

    #[test]
    fn diagonal_f3_defect() {
        let f3 = FiniteRing::zmod(3).unwrap();
        let s = FiniteRing::product(&[f3.clone(), f3]).unwrap();
        let ext = Extension::from_generators(&s, &[]);
        assert!(!ext.is_sl());
        let d = ext.sl_defect();
        assert_eq!((d.index, d.module_count), (2, 2));
        assert_eq!(d.representatives, vec![s.one(), s.tuple(&[1, 2]).unwrap()]);
        assert!(ext.co_integral_witness(CO_INTEGRAL_DEGREE).is_some());
    }

    #[test]
    fn field_extension_is_inert_data() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let f4 = FiniteRing::poly_quot(&f2, &[1, 1, 1], "a").unwrap();
        let ext = Extension::from_generators(&f4, &[]);
        let res = ext.residual();
        assert!(!res.infra_integral);
        assert_eq!(res.fibers[0].ambient_residue, 4);
        assert_eq!(ext.sl_defect().index, 3);
    }

    #[test]
    fn trivial_extension_report() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let rep = Extension::trivial(&z4).analyze();
        assert!(rep.sl && rep.seminormal && rep.t_closed && rep.u_closed);
        assert!(rep.infra_integral && rep.i_extension && rep.co_integrally_closed);
        assert_eq!(rep.sl_defect, 1);
        assert!(rep.msupp.is_empty());
        assert!(rep.consistency_violations.is_empty());
    }
}
