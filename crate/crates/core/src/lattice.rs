//! The interval `[R, S]` of intermediate rings and closure operators on it.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Result, RingError};
use crate::extension::Extension;
use crate::ideal::maximal_ideals;
use crate::ring::{FiniteRing, Ring};
use crate::span;
use crate::units::{prime_subring, subring_generated};

/// Default bound on `|S|` for lattice enumeration.
pub const LATTICE_CAP: usize = 64;

/// Intermediate rings of `R ⊆ S`, sorted by size then member list, so `R`
/// comes first and `S` last.
pub struct SubringLattice {
    ambient: Ring,
    members: Vec<Ring>,
    masks: Vec<FixedBitSet>,
    /// `covers[i]` lists the members directly above member `i`.
    covers: Vec<Vec<usize>>,
}

impl SubringLattice {
    /// Breadth-first closure of `T ↦ T[s]` starting from `R`.
    pub fn enumerate(ext: &Extension, cap: usize) -> Result<Self> {
        let s = ext.ambient().clone();
        if s.size() > cap {
            return Err(RingError::CapExceeded {
                population: s.size() as u128,
                cap: cap as u128,
            });
        }
        let base_gens: Vec<usize> = ext
            .sub()
            .generators()
            .iter()
            .map(|&g| ext.sub().to_ambient(g).unwrap())
            .collect();
        let start = span::generated_members(&s, &base_gens);
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut found: Vec<(Vec<usize>, Vec<usize>)> = vec![(start.clone(), base_gens)];
        index.insert(start, 0);
        let mut i = 0;
        while i < found.len() {
            let (members, gens) = found[i].clone();
            let mask = span::mask_of(s.size(), &members);
            for x in s.elements() {
                if mask.contains(x) {
                    continue;
                }
                let mut g = gens.clone();
                g.push(x);
                let next = span::generated_members(&s, &g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), found.len());
                    found.push((next, g));
                }
            }
            i += 1;
        }
        let mut sets: Vec<Vec<usize>> = found.into_iter().map(|(m, _)| m).collect();
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let masks: Vec<FixedBitSet> = sets.iter().map(|m| span::mask_of(s.size(), m)).collect();
        let n = sets.len();
        let below = |a: usize, b: usize| a != b && masks[a].is_subset(&masks[b]);
        let covers: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .filter(|&b| below(a, b) && !(0..n).any(|c| below(a, c) && below(c, b)))
                    .collect()
            })
            .collect();
        let members = sets
            .into_iter()
            .map(|m| FiniteRing::subring_unchecked(&s, m))
            .collect();
        Ok(SubringLattice {
            ambient: s,
            members,
            masks,
            covers,
        })
    }

    pub fn ambient(&self) -> &Ring {
        &self.ambient
    }

    pub fn members(&self) -> &[Ring] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.members.len() - 1
    }

    pub fn covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.masks[a].is_subset(&self.masks[b])
    }

    /// Position of the member with exactly these ambient elements.
    pub fn find(&self, mask: &FixedBitSet) -> Option<usize> {
        self.masks.iter().position(|m| m == mask)
    }

    pub fn find_ring(&self, ring: &Ring) -> Option<usize> {
        self.find(&span::mask_of(self.ambient.size(), ring.members()?))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let mut m = self.masks[a].clone();
        m.intersect_with(&self.masks[b]);
        self.find(&m).expect("intersection of intermediate rings is intermediate")
    }

    /// The compositum `TV`.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let seeds: Vec<usize> = self.masks[a].union(&self.masks[b]).collect();
        let m = span::generated_members(&self.ambient, &seeds);
        self.find(&span::mask_of(self.ambient.size(), &m))
            .expect("compositum of intermediate rings is intermediate")
    }

    /// `member(a) ⊆ member(b)` as an extension in its own right.
    pub fn extension(&self, a: usize, b: usize) -> Result<Extension> {
        Extension::between(&self.members[a], &self.members[b])
    }

    /// Adjacent pairs `(a, b)` with `b` covering `a`.
    pub fn minimal_steps(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.covers[a].iter().map(move |&b| (a, b)))
            .collect()
    }

    /// Distributive and complemented (relative to the bottom and top).
    pub fn is_boolean(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.meet(a, b);
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(ab, self.meet(a, c));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        (0..n).all(|a| {
            (0..n).any(|b| self.meet(a, b) == self.bottom() && self.join(a, b) == self.top())
        })
    }

    pub fn dump(&self) -> LatticeDump {
        let s = &self.ambient;
        LatticeDump {
            members: self
                .members
                .iter()
                .map(|m| MemberDump {
                    size: m.size(),
                    generators: generators_in_ambient(m)
                        .iter()
                        .map(|&g| s.format(g))
                        .collect(),
                })
                .collect(),
            covers: self.covers.clone(),
        }
    }
}

/// Greedy generators of a subring, as ambient indices.
pub fn generators_in_ambient(sub: &Ring) -> Vec<usize> {
    sub.generators()
        .iter()
        .map(|&g| sub.to_ambient(g).unwrap())
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MemberDump {
    pub size: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeDump {
    pub members: Vec<MemberDump>,
    pub covers: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Closure {
    Seminormal,
    T,
    U,
}

fn closure(ext: &Extension, kind: Closure) -> Ring {
    let s = ext.ambient();
    let mut cur = span::mask_of(s.size(), ext.sub_members());
    loop {
        let members: Vec<usize> = cur.ones().collect();
        let adjoin: Vec<usize> = s
            .elements()
            .filter(|&b| {
                if cur.contains(b) {
                    return false;
                }
                let b2 = s.mul(b, b);
                let b3 = s.mul(b2, b);
                match kind {
                    Closure::Seminormal => cur.contains(b2) && cur.contains(b3),
                    Closure::U => cur.contains(s.sub(b2, b)) && cur.contains(s.sub(b3, b2)),
                    Closure::T => members.iter().any(|&r| {
                        cur.contains(s.sub(b2, s.mul(r, b)))
                            && cur.contains(s.sub(b3, s.mul(r, b2)))
                    }),
                }
            })
            .collect();
        if adjoin.is_empty() {
            return FiniteRing::subring_unchecked(s, members);
        }
        let mut seeds = members;
        seeds.extend(adjoin);
        cur = span::mask_of(s.size(), &span::generated_members(s, &seeds));
    }
}

/// Smallest `B ∈ [R, S]` with `B ⊆ S` seminormal.
pub fn seminormalization(ext: &Extension) -> Ring {
    closure(ext, Closure::Seminormal)
}

/// Smallest `B ∈ [R, S]` with `B ⊆ S` t-closed.
pub fn t_closure(ext: &Extension) -> Ring {
    closure(ext, Closure::T)
}

/// Smallest `B ∈ [R, S]` with `B ⊆ S` u-closed.
pub fn u_closure(ext: &Extension) -> Ring {
    closure(ext, Closure::U)
}

/// `R[U(S)]`.
pub fn sl_bottom(ext: &Extension) -> Ring {
    let mut seeds = ext.sub_members().to_vec();
    seeds.extend_from_slice(ext.ambient().units().members());
    subring_generated(ext.ambient(), &seeds)
}

/// Kinds of minimal (adjacent) extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MinimalKind {
    Decomposed,
    Inert,
    Ramified,
}

/// Classifies an adjacent pair `T ⊂ V` through its conductor `M = (T:V)`,
/// which must be a maximal ideal of `T`.
pub fn classify_minimal(ext: &Extension) -> Result<MinimalKind> {
    let t = ext.sub();
    let m = ext.conductor_in_sub();
    let t_max = maximal_ideals(t);
    let Some(mi) = t_max.iter().position(|x| x.members() == m.members()) else {
        return Err(RingError::Finding(format!(
            "conductor of a minimal extension has {} elements and is not maximal",
            m.len()
        )));
    };
    let res = ext.residual();
    let over: Vec<_> = res.fibers.iter().filter(|f| f.under == mi).collect();
    Ok(match over.as_slice() {
        [a, b] if a.sub_residue == a.ambient_residue && b.sub_residue == b.ambient_residue => {
            MinimalKind::Decomposed
        }
        [a] if a.ambient_residue > a.sub_residue => MinimalKind::Inert,
        _ => MinimalKind::Ramified,
    })
}

/// Outcome of the greatest-SL-subextension computation.
#[derive(Debug, Clone)]
pub struct MslReport {
    /// Lattice position of the greatest `T` with `R ⊆ T` SL.
    pub top: usize,
    pub sl_members: Vec<usize>,
    pub product_matches: bool,
    pub union_matches: bool,
    /// The compositum of the seminormal infra-integral members over which
    /// every supported residue field is `F2` equals `T`.
    pub formula_matches: bool,
    /// The seminormal infra-integral members have a greatest element equal
    /// to their compositum and their union.
    pub seminormal_family_ok: bool,
}

impl MslReport {
    pub fn all_hold(&self) -> bool {
        self.product_matches && self.union_matches && self.formula_matches && self.seminormal_family_ok
    }
}

/// True for `R ⊆ V` seminormal and infra-integral.
fn seminormal_infra(ext: &Extension) -> bool {
    ext.seminormal_witness().is_none() && ext.residual().infra_integral
}

/// True when every maximal ideal in the support has residue field `F2`.
fn support_over_f2(ext: &Extension) -> bool {
    let r = ext.sub();
    let maxes = maximal_ideals(r);
    ext.msupp()
        .iter()
        .all(|&i| r.size() / maxes[i].len() == 2)
}

/// Greatest `T ∈ [R, S]` with `R ⊆ T` SL, checked against its descriptions
/// as a compositum and as a union. A missing or non-unique maximum is
/// returned as a finding.
pub fn msl_subextension(lattice: &SubringLattice) -> Result<MslReport> {
    let n = lattice.len();
    let base = lattice.bottom();
    let mut sl_members = Vec::new();
    let mut sn_members = Vec::new();
    let mut formula_members = Vec::new();
    for v in 0..n {
        let ext = lattice.extension(base, v)?;
        if ext.is_sl() {
            sl_members.push(v);
        }
        if seminormal_infra(&ext) {
            sn_members.push(v);
            if support_over_f2(&ext) {
                formula_members.push(v);
            }
        }
    }
    let maximal = |family: &[usize]| -> Vec<usize> {
        family
            .iter()
            .copied()
            .filter(|&a| !family.iter().any(|&b| b != a && lattice.leq(a, b)))
            .collect()
    };
    let tops = maximal(&sl_members);
    if tops.len() != 1 {
        return Err(RingError::Finding(format!(
            "{} maximal strongly local subextensions",
            tops.len()
        )));
    }
    let top = tops[0];
    let compositum = |family: &[usize]| family.iter().fold(base, |acc, &v| lattice.join(acc, v));
    let union_is = |family: &[usize], target: usize| {
        let mut u = FixedBitSet::with_capacity(lattice.ambient().size());
        for &v in family {
            u.union_with(&lattice.masks[v]);
        }
        u == lattice.masks[target]
    };
    let sn_tops = maximal(&sn_members);
    let seminormal_family_ok = sn_tops.len() == 1
        && compositum(&sn_members) == sn_tops[0]
        && union_is(&sn_members, sn_tops[0]);
    Ok(MslReport {
        top,
        product_matches: compositum(&sl_members) == top,
        union_matches: union_is(&sl_members, top),
        formula_matches: compositum(&formula_members) == top,
        seminormal_family_ok,
        sl_members,
    })
}

/// `F[U(R)]` for the prime subring `F`, with whether `F[U(R)] ⊆ R` is SL.
pub fn unit_generated(ring: &Ring) -> (Ring, bool) {
    let t = subring_generated(ring, ring.units().members());
    let sl = Extension::new(&t).unwrap().is_sl();
    (t, sl)
}

/// The interval `[F, S]` over the prime subring.
pub fn full_lattice(ring: &Ring, cap: usize) -> Result<SubringLattice> {
    SubringLattice::enumerate(&Extension::new(&prime_subring(ring))?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2n(n: usize) -> Ring {
        FiniteRing::product(&vec![FiniteRing::zmod(2).unwrap(); n]).unwrap()
    }

    #[test]
    fn f2_cubed_has_five_members() {
        let s = f2n(3);
        let lat = full_lattice(&s, LATTICE_CAP).unwrap();
        assert_eq!(lat.len(), 5);
        assert_eq!(lat.members()[0].size(), 2);
        assert_eq!(lat.members()[4].size(), 8);
        assert!(!lat.is_boolean());
        let msl = msl_subextension(&lat).unwrap();
        assert_eq!(msl.top, lat.top());
        assert!(msl.all_hold());
    }

    #[test]
    fn closures_over_the_diagonal() {
        let s = f2n(2);
        let ext = Extension::from_generators(&s, &[]);
        assert_eq!(seminormalization(&ext).size(), 2);
        assert_eq!(t_closure(&ext).size(), 4);
        assert_eq!(u_closure(&ext).size(), 4);
        assert_eq!(sl_bottom(&ext).size(), 2);
        let lat = SubringLattice::enumerate(&ext, LATTICE_CAP).unwrap();
        assert!(lat.is_boolean());
        assert_eq!(
            classify_minimal(&lat.extension(0, 1).unwrap()).unwrap(),
            MinimalKind::Decomposed
        );
    }

    #[test]
    fn minimal_kinds() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let f4 = FiniteRing::poly_quot(&f2, &[1, 1, 1], "a").unwrap();
        let dual = FiniteRing::poly_quot(&f2, &[0, 0, 1], "x").unwrap();
        let inert = Extension::from_generators(&f4, &[]);
        assert_eq!(classify_minimal(&inert).unwrap(), MinimalKind::Inert);
        let ram = Extension::from_generators(&dual, &[]);
        assert_eq!(classify_minimal(&ram).unwrap(), MinimalKind::Ramified);
        assert_eq!(sl_bottom(&inert).size(), 4);
    }

    #[test]
    fn unit_generated_subrings() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let f4 = FiniteRing::poly_quot(&f2, &[1, 1, 1], "a").unwrap();
        let (t, sl) = unit_generated(&f4);
        assert!(sl);
        assert_eq!(t.size(), 4);
        let (t, sl) = unit_generated(&f2n(2));
        assert!(sl);
        assert_eq!(t.size(), 2);
    }
}
