//! Explicit strongly local extensions built from cyclotomic quotients over
//! `F2` and from padded Boolean factors.

use crate::error::{Result, RingError};
use crate::extension::{Extension, ExtensionReport};
use crate::morphism::RingMorphism;
use crate::poly::{cyclotomic, is_irreducible, is_prime, is_primitive_root};
use crate::ring::{FiniteRing, Ring};

/// `F2[var]/(var^deg + low)` where `low` lists the exponents of the
/// remaining monomials.
fn f2_quotient(deg: usize, low: &[usize], var: &str) -> Result<Ring> {
    let f2 = FiniteRing::zmod(2)?;
    let mut m = vec![0; deg + 1];
    m[deg] = 1;
    for &e in low {
        m[e] = 1;
    }
    FiniteRing::poly_quot(&f2, &m, var)
}

/// `R = F2[y]/(y^p - 1)`.
pub fn cyclic_group_algebra(p: usize) -> Result<Ring> {
    f2_quotient(p, &[0], "y")
}

/// `S = F2[t]/(t^(p+1) - t)`.
pub fn split_algebra(p: usize) -> Result<Ring> {
    f2_quotient(p + 1, &[1], "t")
}

pub struct CyclotomicConstruction {
    pub p: usize,
    pub sub: Ring,
    pub ambient: Ring,
    pub morphism: RingMorphism,
    /// Image of `y`.
    pub image: usize,
    pub report: ExtensionReport,
}

/// For an odd prime `p` with `2` primitive mod `p`, `R = F2 × L` and
/// `S = F2 × F2 × L` with `L = F2[X]/(1 + X + ... + X^(p-1))`; the map
/// `(x, z) ↦ (x, x, z)` sends `y` to `(1 - e) + t·e`, where `e` is the
/// primitive idempotent of `S` cutting out `L`.
pub fn cyclotomic_sl_construction(p: usize) -> Result<CyclotomicConstruction> {
    if !is_prime(p as u64) || p == 2 {
        return Err(RingError::NotPrime(p as u64));
    }
    if !is_primitive_root(2, p as u64)? {
        return Err(RingError::NotPrimitive(p as u64));
    }
    let f2 = FiniteRing::zmod(2)?;
    if !is_irreducible(&f2, &cyclotomic(&f2, p))? {
        return Err(RingError::Finding(format!(
            "cyclotomic polynomial for {p} is reducible although 2 is primitive"
        )));
    }
    let sub = cyclic_group_algebra(p)?;
    let ambient = split_algebra(p)?;
    let s = &ambient;
    let field_size = 1usize << (p - 1);
    let e = s
        .primitive_idempotents()
        .iter()
        .copied()
        .find(|&e| {
            let mut seen = fixedbitset::FixedBitSet::with_capacity(s.size());
            s.elements().for_each(|x| seen.insert(s.mul(e, x)));
            seen.count_ones(..) == field_size
        })
        .ok_or_else(|| RingError::Finding("no local factor of the expected size".into()))?;
    let t = s.variable("t").unwrap();
    let image = s.add(s.sub(s.one(), e), s.mul(t, e));
    let y = sub.variable("y").unwrap();
    let morphism = RingMorphism::from_images(&sub, s, &[(y, image)])?;
    let report = Extension::from_morphism(&morphism)?.analyze();
    Ok(CyclotomicConstruction {
        p,
        sub,
        ambient,
        morphism,
        image,
        report,
    })
}

/// Injective SL morphisms out of a ring generated by one element, listed
/// by the image of that generator.
pub fn sl_embeddings(source: &Ring, target: &Ring) -> Result<Vec<(usize, RingMorphism)>> {
    let gens = source.generators();
    if gens.len() != 1 {
        return Err(RingError::InvalidRing(format!(
            "source needs {} generators; one is supported",
            gens.len()
        )));
    }
    let g = gens[0];
    let mut out = Vec::new();
    for w in target.elements() {
        let Ok(f) = RingMorphism::from_images(source, target, &[(g, w)]) else {
            continue;
        };
        if f.is_injective() && f.is_sl() {
            out.push((w, f));
        }
    }
    Ok(out)
}

pub struct PadConstruction {
    pub sub: Ring,
    pub ambient: Ring,
    pub morphism: RingMorphism,
    pub report: ExtensionReport,
}

/// `F2^n × R → F2^m × R`, repeating the last Boolean coordinate.
pub fn pad_construction(ring: &Ring, n: usize, m: usize) -> Result<PadConstruction> {
    if n == 0 || n > m {
        return Err(RingError::InvalidRing(format!(
            "padding needs 1 <= n <= m, got n = {n}, m = {m}"
        )));
    }
    let f2 = FiniteRing::zmod_with_cap(2, ring.cap())?;
    let mut tf = vec![f2.clone(); n];
    tf.push(ring.clone());
    let mut sf = vec![f2; m];
    sf.push(ring.clone());
    let sub = FiniteRing::product(&tf)?;
    let ambient = FiniteRing::product(&sf)?;
    let map = sub
        .elements()
        .map(|x| {
            let c = sub.coords(x);
            let mut d = c[..n].to_vec();
            d.extend(std::iter::repeat_n(c[n - 1], m - n));
            d.push(c[n]);
            ambient.from_coords(&d).unwrap()
        })
        .collect();
    let morphism = RingMorphism::from_map(&sub, &ambient, map)?;
    let report = Extension::from_morphism(&morphism)?.analyze();
    Ok(PadConstruction {
        sub,
        ambient,
        morphism,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p3_construction() {
        let c = cyclotomic_sl_construction(3).unwrap();
        assert!(c.report.sl);
        assert_eq!(c.report.sub_units, 3);
        let shown = c.ambient.format(c.image);
        assert!(shown == "t^3 + t + 1" || shown == "t^3 + t^2 + 1", "{shown}");
    }

    #[test]
    fn p7_rejected() {
        assert!(matches!(
            cyclotomic_sl_construction(7),
            Err(RingError::NotPrimitive(7))
        ));
    }

    #[test]
    fn padding() {
        let f3 = FiniteRing::zmod(3).unwrap();
        let pad = pad_construction(&f3, 1, 2).unwrap();
        assert!(pad.report.sl);
        assert_eq!(pad.report.sub_units, 2);
        assert_eq!(pad.report.ambient_units, 2);
    }
}
