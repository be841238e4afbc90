//! Ideals, radicals, idempotents and local decomposition.

use std::collections::HashSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Result, RingError};
use crate::morphism::RingMorphism;
use crate::ring::{FiniteRing, Ring};
use crate::span;
use crate::units::{is_nilpotent, BRUTE_SCAN_SIZE};

/// An ideal of a finite ring, stored as its sorted member list.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    members: Vec<usize>,
    mask: FixedBitSet,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal({} of {} elements)", self.members.len(), self.ring.size())
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.members == other.members
    }
}

impl Eq for Ideal {}

impl Ideal {
    fn wrap(ring: &Ring, mut members: Vec<usize>) -> Ideal {
        members.sort_unstable();
        members.dedup();
        let mask = span::mask_of(ring.size(), &members);
        Ideal {
            ring: ring.clone(),
            members,
            mask,
        }
    }

    /// The ideal generated by `gens`.
    pub fn generated(ring: &Ring, gens: &[usize]) -> Ideal {
        let basis = ring.additive_basis().to_vec();
        let products = gens
            .iter()
            .flat_map(|&g| basis.iter().map(move |&b| (g, b)))
            .map(|(g, b)| ring.mul(g, b));
        Ideal::wrap(ring, span::additive_members(ring, products))
    }

    /// Validates `members` as an ideal.
    pub fn from_members(ring: &Ring, members: &[usize]) -> Result<Ideal> {
        let ideal = Ideal::wrap(ring, members.to_vec());
        ideal.validate()?;
        Ok(ideal)
    }

    pub(crate) fn from_members_unchecked(ring: &Ring, members: Vec<usize>) -> Ideal {
        Ideal::wrap(ring, members)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::wrap(ring, vec![0])
    }

    pub fn whole(ring: &Ring) -> Ideal {
        Ideal::wrap(ring, ring.elements().collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.contains(x)
    }

    pub fn is_proper(&self) -> bool {
        !self.contains(self.ring.one())
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.ring;
        if !self.contains(0) {
            return Err(RingError::InvalidIdeal("does not contain zero".into()));
        }
        for &a in &self.members {
            for &b in &self.members {
                if !self.contains(r.add(a, b)) {
                    return Err(RingError::InvalidIdeal(format!(
                        "not closed under addition at {} and {}",
                        r.format(a),
                        r.format(b)
                    )));
                }
            }
            for x in r.elements() {
                if !self.contains(r.mul(a, x)) {
                    return Err(RingError::InvalidIdeal(format!(
                        "{} * {} escapes the ideal",
                        r.format(x),
                        r.format(a)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        let m = self
            .members
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect();
        Ideal::wrap(&self.ring, m)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let gens = self.members.iter().chain(other.members.iter()).copied();
        Ideal::wrap(&self.ring, span::additive_members(&self.ring, gens))
    }

    /// `R/I` with its canonical projection; fails for `I = R`.
    pub fn quotient(&self) -> Result<(Ring, RingMorphism)> {
        if !self.is_proper() {
            return Err(RingError::InvalidQuotient(
                "quotient by the whole ring is the zero ring".into(),
            ));
        }
        let q = FiniteRing::quotient_unchecked(&self.ring, &self.members);
        let map = self
            .ring
            .elements()
            .map(|x| q.from_ambient(x).unwrap())
            .collect();
        let pi = RingMorphism::from_parts(self.ring.clone(), q.clone(), map);
        Ok((q, pi))
    }

    /// `x^2 in I` implies `x in I`, which for finite rings is equivalent to
    /// `R/I` being reduced.
    pub fn is_semiprime(&self) -> bool {
        let r = &self.ring;
        r.elements()
            .all(|x| !self.contains(r.mul(x, x)) || self.contains(x))
    }

    pub fn is_maximal(&self) -> bool {
        let r = &self.ring;
        self.is_proper()
            && r.elements().all(|x| {
                self.contains(x)
                    || r
                        .elements()
                        .any(|y| self.contains(r.sub(r.mul(x, y), r.one())))
            })
    }

    /// A small generating set: greedy over the members in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut cur = Ideal::zero(&self.ring);
        for &x in &self.members {
            if cur.len() == self.len() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = Ideal::generated(&self.ring, &gens);
            }
        }
        gens
    }
}

impl FiniteRing {
    pub fn idempotents(&self) -> &[usize] {
        self.cache
            .idempotents
            .get_or_init(|| self.elements().filter(|&x| self.mul(x, x) == x).collect())
    }

    /// Nonzero idempotents `e` with `fe in {0, e}` for every idempotent `f`.
    pub fn primitive_idempotents(&self) -> &[usize] {
        self.cache.primitive_idempotents.get_or_init(|| {
            let ids = self.idempotents();
            ids.iter()
                .copied()
                .filter(|&e| {
                    e != 0
                        && ids.iter().all(|&f| {
                            let p = self.mul(f, e);
                            p == 0 || p == e
                        })
                })
                .collect()
        })
    }

    pub(crate) fn nilradical_members(&self) -> &[usize] {
        self.cache
            .nilradical
            .get_or_init(|| self.elements().filter(|&x| is_nilpotent(self, x)).collect())
    }

    pub(crate) fn jacobson_members(&self) -> &[usize] {
        self.cache.jacobson.get_or_init(|| {
            if self.size() > BRUTE_SCAN_SIZE {
                // finite rings are Artinian, so J(R) = Nil(R)
                return self.nilradical_members().to_vec();
            }
            let units = self.units();
            self.elements()
                .filter(|&x| {
                    self.elements()
                        .all(|a| units.contains(self.sub(self.one(), self.mul(a, x))))
                })
                .collect()
        })
    }

    pub fn nilradical(&self) -> &[usize] {
        self.nilradical_members()
    }
}

pub fn nilradical(ring: &Ring) -> Ideal {
    Ideal::wrap(ring, ring.nilradical_members().to_vec())
}

/// `J(R)`: all `x` with `1 - ax` a unit for every `a`.
pub fn jacobson(ring: &Ring) -> Ideal {
    Ideal::wrap(ring, ring.jacobson_members().to_vec())
}

/// Maximal ideals, pulled back from the primitive idempotents of the
/// semisimple ring `R/J(R)`. Ordered by the index of those idempotents.
pub fn maximal_ideals(ring: &Ring) -> Vec<Ideal> {
    let members = ring.cache.maximal.get_or_init(|| {
        let j = jacobson(ring);
        let (q, pi) = j.quotient().expect("J(R) is proper in a nonzero ring");
        q.primitive_idempotents()
            .iter()
            .map(|&e| {
                ring.elements()
                    .filter(|&x| q.mul(pi.apply(x), e) == 0)
                    .collect()
            })
            .collect()
    });
    members.iter().map(|m| Ideal::wrap(ring, m.clone())).collect()
}

/// One local factor `R/(1 - e)R` of the decomposition of `R`.
#[derive(Debug, Clone)]
pub struct LocalFactor {
    pub idempotent: usize,
    pub ring: Ring,
    pub projection: RingMorphism,
    /// Position of the maximal ideal of `R` not containing the idempotent.
    pub maximal_index: usize,
}

/// `R` as the product of its localizations at maximal ideals.
pub fn local_factors(ring: &Ring) -> Vec<LocalFactor> {
    let maxes = maximal_ideals(ring);
    ring.primitive_idempotents()
        .iter()
        .map(|&e| {
            let ann: Vec<usize> = ring.elements().filter(|&x| ring.mul(x, e) == 0).collect();
            let ann = Ideal::wrap(ring, ann);
            let (q, pi) = ann.quotient().expect("primitive idempotents are nonzero");
            let maximal_index = maxes
                .iter()
                .position(|m| !m.contains(e))
                .expect("each primitive idempotent avoids one maximal ideal");
            LocalFactor {
                idempotent: e,
                ring: q,
                projection: pi,
                maximal_index,
            }
        })
        .collect()
}

/// For every `x` a `y` with `xy in J(R)` and `x + y` a unit: the sum of the
/// primitive idempotents at which `x` lies in the maximal ideal. Returns the
/// witnesses, or the first `x` for which the construction fails.
pub fn j_regular_witnesses(ring: &Ring) -> std::result::Result<Vec<(usize, usize)>, usize> {
    let j = jacobson(ring);
    let prims = ring.primitive_idempotents().to_vec();
    let mut out = Vec::with_capacity(ring.size());
    for x in ring.elements() {
        let y = prims
            .iter()
            .filter(|&&e| is_nilpotent(ring, ring.mul(x, e)))
            .fold(0, |acc, &e| ring.add(acc, e));
        if !j.contains(ring.mul(x, y)) || !ring.is_unit(ring.add(x, y)) {
            return Err(x);
        }
        out.push((x, y));
    }
    Ok(out)
}

/// Every ideal of a small ring, sorted by size then members.
pub fn all_ideals(ring: &Ring, cap: usize) -> Result<Vec<Ideal>> {
    if ring.size() > cap {
        return Err(RingError::CapExceeded {
            population: ring.size() as u128,
            cap: cap as u128,
        });
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let zero = Ideal::zero(ring);
    seen.insert(zero.members.clone());
    let mut out = vec![zero];
    let mut i = 0;
    while i < out.len() {
        let cur = out[i].clone();
        for x in ring.elements() {
            if cur.contains(x) {
                continue;
            }
            let next = cur.sum(&Ideal::generated(ring, &[x]));
            if seen.insert(next.members.clone()) {
                out.push(next);
            }
        }
        i += 1;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z8_radicals() {
        let z8 = FiniteRing::zmod(8).unwrap();
        assert_eq!(nilradical(&z8).members(), &[0, 2, 4, 6]);
        assert_eq!(jacobson(&z8).members(), &[0, 2, 4, 6]);
        let m = maximal_ideals(&z8);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].members(), &[0, 2, 4, 6]);
    }

    #[test]
    fn z6_decomposes() {
        let z6 = FiniteRing::zmod(6).unwrap();
        assert_eq!(z6.idempotents(), &[0, 1, 3, 4]);
        assert_eq!(z6.primitive_idempotents(), &[3, 4]);
        let f = local_factors(&z6);
        let sizes: Vec<_> = f.iter().map(|l| l.ring.size()).collect();
        assert_eq!(sizes, vec![2, 3]);
        assert_eq!(maximal_ideals(&z6).len(), 2);
    }

    #[test]
    fn generated_ideal_and_quotient() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let p = FiniteRing::poly_quot(&z4, &[2, 0, 1], "x").unwrap();
        let x = p.variable("x").unwrap();
        let i = Ideal::generated(&p, &[x]);
        // (x) contains 2 = -x^2
        assert!(i.contains(p.from_int(2)));
        assert_eq!(i.len(), 8);
        let (q, pi) = i.quotient().unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(pi.apply(x), 0);
        assert!(i.is_maximal());
    }

    #[test]
    fn ideals_of_z12() {
        let z12 = FiniteRing::zmod(12).unwrap();
        let all = all_ideals(&z12, 64).unwrap();
        // one ideal per divisor of 12
        assert_eq!(all.len(), 6);
        let semiprime = all.iter().filter(|i| i.is_proper() && i.is_semiprime()).count();
        // (2), (3), (6)
        assert_eq!(semiprime, 3);
    }

    #[test]
    fn j_regular_z12() {
        let z12 = FiniteRing::zmod(12).unwrap();
        let w = j_regular_witnesses(&z12).unwrap();
        assert_eq!(w.len(), 12);
    }
}
