//! Units, zero-divisors and generated subrings.

use crate::ring::{FiniteRing, Ring};
use crate::span;

/// Rings up to this size are scanned pairwise when testing for units,
/// zero-divisors and Jacobson membership. Larger rings go through their
/// primitive idempotents instead.
pub const BRUTE_SCAN_SIZE: usize = 1024;

/// The unit group as a sorted member list with aligned inverses.
#[derive(Debug, Clone)]
pub struct UnitGroup {
    members: Vec<usize>,
    inverses: Vec<usize>,
}

impl UnitGroup {
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
        self.members.binary_search(&x).is_ok()
    }

    pub fn inverse(&self, x: usize) -> Option<usize> {
        self.members
            .binary_search(&x)
            .ok()
            .map(|i| self.inverses[i])
    }
}

/// `x` is nilpotent iff `x^(2^k) = 0` once `2^k` reaches the ring size.
pub(crate) fn is_nilpotent(ring: &FiniteRing, x: usize) -> bool {
    let mut y = x;
    let mut k = 1usize;
    while k < ring.size() {
        if y == 0 {
            return true;
        }
        y = ring.mul(y, y);
        k *= 2;
    }
    y == 0
}

impl FiniteRing {
    pub fn units(&self) -> &UnitGroup {
        self.cache.units.get_or_init(|| self.compute_units())
    }

    fn compute_units(&self) -> UnitGroup {
        let n = self.size();
        let one = self.one();
        if n <= BRUTE_SCAN_SIZE {
            let mut members = Vec::new();
            let mut inverses = Vec::new();
            for x in 0..n {
                if let Some(y) = (0..n).find(|&y| self.mul(x, y) == one) {
                    members.push(x);
                    inverses.push(y);
                }
            }
            return UnitGroup { members, inverses };
        }
        // x is a unit iff every local component x*e is outside the maximal
        // ideal of eR, i.e. not nilpotent
        let prims = self.primitive_idempotents().to_vec();
        let members: Vec<usize> = (0..n)
            .filter(|&x| prims.iter().all(|&e| !is_nilpotent(self, self.mul(x, e))))
            .collect();
        let order = members.len() as u64;
        let inverses = members.iter().map(|&u| self.pow(u, order - 1)).collect();
        UnitGroup { members, inverses }
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.units().contains(x)
    }

    /// Zero together with all zero-divisors, sorted.
    pub fn zero_divisors(&self) -> Vec<usize> {
        let n = self.size();
        if n <= BRUTE_SCAN_SIZE {
            (0..n)
                .filter(|&x| (1..n).any(|y| self.mul(x, y) == 0))
                .collect()
        } else {
            let units = self.units();
            (0..n).filter(|&x| !units.contains(x)).collect()
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.nilradical().len() == 1
    }

    pub fn is_field(&self) -> bool {
        self.units().len() == self.size() - 1
    }

    pub fn is_local(&self) -> bool {
        self.primitive_idempotents().len() == 1
    }

    /// Sorted additive basis candidates: elements that enlarged the additive
    /// span when walking the ring in index order. They generate `(R, +)`.
    pub fn additive_basis(&self) -> &[usize] {
        self.cache.additive_basis.get_or_init(|| {
            let mut s = span::AdditiveSpan::new(self);
            for x in 0..self.size() {
                s.adjoin(x);
                if s.len() == self.size() {
                    break;
                }
            }
            s.basis
        })
    }

    /// A greedy ring generating set: each element is the least index not in
    /// the subring generated by the previous ones.
    pub fn generators(&self) -> &[usize] {
        self.cache.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut cur = span::mask_of(self.size(), &span::generated_members(self, &[]));
            while let Some(x) = (0..self.size()).find(|&x| !cur.contains(x)) {
                gens.push(x);
                cur = span::mask_of(self.size(), &span::generated_members(self, &gens));
            }
            gens
        })
    }
}

/// The subring of `ring` generated by `seeds`.
pub fn subring_generated(ring: &Ring, seeds: &[usize]) -> Ring {
    FiniteRing::subring_unchecked(ring, span::generated_members(ring, seeds))
}

/// The image of `Z` in `ring`.
pub fn prime_subring(ring: &Ring) -> Ring {
    subring_generated(ring, &[])
}

/// Wraps `members` as a subring of `ring` after checking closure.
pub fn subring_from_members(ring: &Ring, members: &[usize]) -> crate::Result<Ring> {
    let mask = span::mask_of(ring.size(), members);
    if !mask.contains(0) || !mask.contains(ring.one()) {
        return Err(crate::RingError::InvalidRing(
            "subring must contain 0 and 1".into(),
        ));
    }
    for &a in members {
        if !mask.contains(ring.neg(a)) {
            return Err(crate::RingError::InvalidRing(
                "subring not closed under negation".into(),
            ));
        }
        for &b in members {
            if !mask.contains(ring.add(a, b)) || !mask.contains(ring.mul(a, b)) {
                return Err(crate::RingError::InvalidRing(format!(
                    "subring not closed at {} and {}",
                    ring.format(a),
                    ring.format(b)
                )));
            }
        }
    }
    Ok(FiniteRing::subring_unchecked(ring, members.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_of_z8() {
        let z8 = FiniteRing::zmod(8).unwrap();
        let u = z8.units();
        assert_eq!(u.members(), &[1, 3, 5, 7]);
        for &x in u.members() {
            assert_eq!(z8.mul(x, u.inverse(x).unwrap()), 1);
        }
        assert_eq!(z8.zero_divisors(), vec![0, 2, 4, 6]);
    }

    #[test]
    fn idempotent_route_matches_pair_scan() {
        let f2 = FiniteRing::zmod(2).unwrap();
        // t^11 + t^3 + t: splits off a factor t, so the ring is not local
        let big =
            FiniteRing::poly_quot(&f2, &[0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1], "t").unwrap();
        assert!(big.size() > BRUTE_SCAN_SIZE);
        let u = big.units();
        for &x in u.members().iter().take(50) {
            assert_eq!(big.mul(x, u.inverse(x).unwrap()), big.one());
        }
        let direct = (0..big.size())
            .filter(|&x| {
                // x is a unit iff multiplication by x is injective
                let mut seen = vec![false; big.size()];
                (0..big.size()).all(|y| !std::mem::replace(&mut seen[big.mul(x, y)], true))
            })
            .count();
        assert_eq!(u.len(), direct);
    }

    #[test]
    fn prime_subring_of_z4_x_f2() {
        let p = FiniteRing::product(&[
            FiniteRing::zmod(4).unwrap(),
            FiniteRing::zmod(2).unwrap(),
        ])
        .unwrap();
        let z = prime_subring(&p);
        assert_eq!(z.size(), 4);
        assert!(z.members().unwrap().contains(&p.one()));
    }
}
