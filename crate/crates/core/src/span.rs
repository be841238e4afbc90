//! Additive spans and generated subrings.
//!
//! A span grows by adjoining one element at a time: if `x` is new, the
//! multiples `x, 2x, ...` up to the first one already inside split the new
//! span into disjoint cosets of the old one. Each adjunction at least doubles
//! the span, so a full span costs `O(N log N)` additions.

use fixedbitset::FixedBitSet;

use crate::ring::FiniteRing;

pub(crate) struct AdditiveSpan<'a> {
    ring: &'a FiniteRing,
    pub members: Vec<usize>,
    pub mask: FixedBitSet,
    /// Elements that enlarged the span, in adjunction order.
    pub basis: Vec<usize>,
}

impl<'a> AdditiveSpan<'a> {
    pub fn new(ring: &'a FiniteRing) -> Self {
        let mut mask = FixedBitSet::with_capacity(ring.size());
        mask.insert(0);
        AdditiveSpan {
            ring,
            members: vec![0],
            mask,
            basis: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn adjoin(&mut self, x: usize) -> bool {
        if self.mask.contains(x) {
            return false;
        }
        let mut shifts = vec![x];
        let mut cur = self.ring.add(x, x);
        while !self.mask.contains(cur) {
            shifts.push(cur);
            cur = self.ring.add(cur, x);
        }
        let old = self.members.len();
        for &s in &shifts {
            for i in 0..old {
                let y = self.ring.add(self.members[i], s);
                self.mask.insert(y);
                self.members.push(y);
            }
        }
        self.basis.push(x);
        true
    }

    pub fn into_sorted(mut self) -> Vec<usize> {
        self.members.sort_unstable();
        self.members
    }
}

/// Products of `seeds` (including the empty product `1`), breadth first.
pub(crate) fn monomials(ring: &FiniteRing, seeds: &[usize]) -> Vec<usize> {
    let mut seen = FixedBitSet::with_capacity(ring.size());
    let mut out = vec![ring.one()];
    seen.insert(ring.one());
    let mut i = 0;
    while i < out.len() {
        let m = out[i];
        for &g in seeds {
            let p = ring.mul(m, g);
            if !seen.contains(p) {
                seen.insert(p);
                out.push(p);
            }
        }
        i += 1;
    }
    out
}

/// Sorted member list of the subring generated by `seeds`.
pub(crate) fn generated_members(ring: &FiniteRing, seeds: &[usize]) -> Vec<usize> {
    let mut span = AdditiveSpan::new(ring);
    for m in monomials(ring, seeds) {
        span.adjoin(m);
        if span.len() == ring.size() {
            break;
        }
    }
    span.into_sorted()
}

/// Sorted member list of the additive subgroup generated by `gens`.
pub(crate) fn additive_members(ring: &FiniteRing, gens: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut span = AdditiveSpan::new(ring);
    for g in gens {
        span.adjoin(g);
    }
    span.into_sorted()
}

pub(crate) fn mask_of(size: usize, members: &[usize]) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(size);
    for &x in members {
        m.insert(x);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_of_two_in_z8() {
        let z8 = FiniteRing::zmod(8).unwrap();
        assert_eq!(additive_members(&z8, [2]), vec![0, 2, 4, 6]);
        assert_eq!(additive_members(&z8, [4, 6]), vec![0, 2, 4, 6]);
    }

    #[test]
    fn generated_subring_of_product() {
        let f2 = FiniteRing::zmod(2).unwrap();
        let p = FiniteRing::product(&[f2.clone(), f2]).unwrap();
        // prime subring is the diagonal
        assert_eq!(generated_members(&p, &[]), vec![0, 3]);
        let e = p.tuple(&[1, 0]).unwrap();
        assert_eq!(generated_members(&p, &[e]), vec![0, 1, 2, 3]);
    }
}
