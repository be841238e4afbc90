//! Unital ring homomorphisms between finite rings.

use std::sync::Arc;

use crate::error::{Result, RingError};
use crate::ideal::Ideal;
use crate::ring::{FiniteRing, Ring, PAIR_SCAN_SIZE};
use crate::span;

#[derive(Clone)]
pub struct RingMorphism {
    source: Ring,
    target: Ring,
    map: Vec<usize>,
}

impl std::fmt::Debug for RingMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RingMorphism({} -> {})",
            self.source.describe(),
            self.target.describe()
        )
    }
}

impl RingMorphism {
    pub(crate) fn from_parts(source: Ring, target: Ring, map: Vec<usize>) -> Self {
        RingMorphism {
            source,
            target,
            map,
        }
    }

    /// Extends `x -> y` for the given pairs to a ring homomorphism. The
    /// sources of the pairs must generate the source ring.
    pub fn from_images(source: &Ring, target: &Ring, pairs: &[(usize, usize)]) -> Result<Self> {
        let (s, t) = (source.as_ref(), target.as_ref());
        for &(x, y) in pairs {
            if x >= s.size() || y >= t.size() {
                return Err(RingError::NotAHomomorphism("element index out of range".into()));
            }
        }
        const UNSET: usize = usize::MAX;
        let conflict = |x: usize, a: usize, b: usize| {
            RingError::NotWellDefined(format!(
                "{} would map to both {} and {}",
                s.format(x),
                t.format(a),
                t.format(b)
            ))
        };
        // multiplicative monoid generated by the pairs, with images
        let mut mono_img = vec![UNSET; s.size()];
        mono_img[s.one()] = t.one();
        let mut monos = vec![s.one()];
        let mut i = 0;
        while i < monos.len() {
            let m = monos[i];
            for &(g, gi) in pairs {
                let p = s.mul(m, g);
                let pi = t.mul(mono_img[m], gi);
                if mono_img[p] == UNSET {
                    mono_img[p] = pi;
                    monos.push(p);
                } else if mono_img[p] != pi {
                    return Err(conflict(p, mono_img[p], pi));
                }
            }
            i += 1;
        }
        // additive closure, carrying images along
        let mut img = vec![UNSET; s.size()];
        img[0] = 0;
        let mut members = vec![0usize];
        for &m in &monos {
            let mi = mono_img[m];
            if img[m] != UNSET {
                if img[m] != mi {
                    return Err(conflict(m, img[m], mi));
                }
                continue;
            }
            let mut shifts = vec![(m, mi)];
            let (mut cur, mut cur_i) = (s.add(m, m), t.add(mi, mi));
            while img[cur] == UNSET {
                shifts.push((cur, cur_i));
                cur = s.add(cur, m);
                cur_i = t.add(cur_i, mi);
            }
            if img[cur] != cur_i {
                return Err(conflict(cur, img[cur], cur_i));
            }
            let old = members.len();
            for &(sh, shi) in &shifts {
                for k in 0..old {
                    let a = members[k];
                    let y = s.add(a, sh);
                    img[y] = t.add(img[a], shi);
                    members.push(y);
                }
            }
        }
        if members.len() != s.size() {
            return Err(RingError::NotGenerating {
                generated: members.len(),
                size: s.size(),
            });
        }
        let f = RingMorphism::from_parts(source.clone(), target.clone(), img);
        let gens: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        f.validate(&gens)?;
        Ok(f)
    }

    /// Wraps an explicit table, checking that it is a unital homomorphism.
    pub fn from_map(source: &Ring, target: &Ring, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|&y| y >= target.size()) {
            return Err(RingError::NotAHomomorphism("table has the wrong shape".into()));
        }
        let f = RingMorphism::from_parts(source.clone(), target.clone(), map);
        let gens = source.generators().to_vec();
        f.validate(&gens)?;
        Ok(f)
    }

    /// Exhaustive over all pairs for small sources; otherwise additivity on
    /// an additive basis and multiplicativity against ring generators, which
    /// together force the full identities.
    fn validate(&self, gens: &[usize]) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.map[s.one()] != t.one() {
            return Err(RingError::NotAHomomorphism("1 is not sent to 1".into()));
        }
        let bad = |op: &str, a: usize, b: usize| {
            RingError::NotAHomomorphism(format!(
                "{op} fails at {} and {}",
                s.format(a),
                s.format(b)
            ))
        };
        if s.size() <= PAIR_SCAN_SIZE {
            for a in s.elements() {
                let fa = self.map[a];
                for b in a..s.size() {
                    let fb = self.map[b];
                    if self.map[s.add(a, b)] != t.add(fa, fb) {
                        return Err(bad("addition", a, b));
                    }
                    if self.map[s.mul(a, b)] != t.mul(fa, fb) {
                        return Err(bad("multiplication", a, b));
                    }
                }
            }
            return Ok(());
        }
        let basis = s.additive_basis();
        for a in s.elements() {
            for &b in basis {
                if self.map[s.add(a, b)] != t.add(self.map[a], self.map[b]) {
                    return Err(bad("addition", a, b));
                }
            }
            for &g in gens {
                if self.map[s.mul(a, g)] != t.mul(self.map[a], self.map[g]) {
                    return Err(bad("multiplication", a, g));
                }
            }
        }
        Ok(())
    }

    pub fn identity(ring: &Ring) -> Self {
        RingMorphism::from_parts(ring.clone(), ring.clone(), ring.elements().collect())
    }

    /// Inclusion of a subring into its ambient ring.
    pub fn inclusion(sub: &Ring) -> Result<Self> {
        let (ambient, members) = match (sub.ambient(), sub.members()) {
            (Some(a), Some(m)) => (a.clone(), m.to_vec()),
            _ => return Err(RingError::NotAnInclusion("ring is not a subring".into())),
        };
        Ok(RingMorphism::from_parts(sub.clone(), ambient, members))
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &RingMorphism) -> Result<Self> {
        if !Arc::ptr_eq(&self.target, &then.source) {
            return Err(RingError::NotAHomomorphism(
                "composition of maps with mismatched rings".into(),
            ));
        }
        let map = self.map.iter().map(|&y| then.map[y]).collect();
        Ok(RingMorphism::from_parts(
            self.source.clone(),
            then.target.clone(),
            map,
        ))
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image_members().len() == self.target.size()
    }

    pub fn kernel(&self) -> Ideal {
        let k = self
            .source
            .elements()
            .filter(|&x| self.map[x] == 0)
            .collect();
        Ideal::from_members_unchecked(&self.source, k)
    }

    pub fn image_members(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The image as a subring of the target.
    pub fn image(&self) -> Ring {
        FiniteRing::subring_unchecked(&self.target, self.image_members())
    }

    /// Pulls back an ideal of the target.
    pub fn preimage(&self, ideal: &Ideal) -> Ideal {
        let m = self
            .source
            .elements()
            .filter(|&x| ideal.contains(self.map[x]))
            .collect();
        Ideal::from_members_unchecked(&self.source, m)
    }

    /// Local: units are exactly the elements mapping to units.
    pub fn is_local(&self) -> bool {
        let tu = self.target.units();
        self.source
            .elements()
            .all(|x| self.source.is_unit(x) == tu.contains(self.map[x]))
    }

    /// Every unit of the target lies in the image (with the map local).
    pub fn is_sl(&self) -> bool {
        let image = span::mask_of(self.target.size(), &self.image_members());
        self.is_local()
            && self
                .target
                .units()
                .members()
                .iter()
                .all(|&u| image.contains(u))
    }
}
