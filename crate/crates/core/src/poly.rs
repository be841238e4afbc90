//! Dense polynomials over a finite ring, bounded-degree unit scans,
//! irreducibility over finite fields and monic maximal ideals.

use serde::Serialize;

use crate::error::{Result, RingError};
use crate::ideal::{nilradical, Ideal};
use crate::ring::{FiniteRing, PolyDisplay, Ring};

/// A polynomial as coefficient indices, constant term first, without
/// trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundedPoly {
    coeffs: Vec<usize>,
}

impl BoundedPoly {
    pub fn new(mut coeffs: Vec<usize>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        BoundedPoly { coeffs }
    }

    pub fn zero() -> Self {
        BoundedPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: usize) -> Self {
        BoundedPoly::new(vec![c])
    }

    /// `X^k`.
    pub fn monomial(ring: &FiniteRing, k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = ring.one();
        BoundedPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> usize {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> usize {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self, ring: &FiniteRing) -> bool {
        self.leading() == ring.one()
    }

    pub fn add(&self, ring: &FiniteRing, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        BoundedPoly::new(
            (0..n)
                .map(|k| ring.add(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn neg(&self, ring: &FiniteRing) -> Self {
        BoundedPoly::new(self.coeffs.iter().map(|&c| ring.neg(c)).collect())
    }

    pub fn sub(&self, ring: &FiniteRing, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn mul(&self, ring: &FiniteRing, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BoundedPoly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ring.add(out[i + j], ring.mul(a, b));
            }
        }
        BoundedPoly::new(out)
    }

    pub fn scale(&self, ring: &FiniteRing, c: usize) -> Self {
        BoundedPoly::new(self.coeffs.iter().map(|&a| ring.mul(a, c)).collect())
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, ring: &FiniteRing, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(ring), "division needs a monic divisor");
        let d = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (BoundedPoly::zero(), self.clone());
        }
        let mut quot = vec![0; rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            quot[k - d] = c;
            for (i, &m) in divisor.coeffs.iter().enumerate() {
                rem[k - d + i] = ring.sub(rem[k - d + i], ring.mul(c, m));
            }
        }
        rem.truncate(d);
        (BoundedPoly::new(quot), BoundedPoly::new(rem))
    }

    pub fn eval(&self, ring: &FiniteRing, x: usize) -> usize {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| ring.add(ring.mul(acc, x), c))
    }

    /// The content ideal generated by the coefficients.
    pub fn content(&self, ring: &Ring) -> Ideal {
        Ideal::generated(ring, &self.coeffs)
    }

    /// Reduces every coefficient through a ring morphism table.
    pub fn map(&self, table: &[usize]) -> Self {
        BoundedPoly::new(self.coeffs.iter().map(|&c| table[c]).collect())
    }

    pub fn format(&self, ring: &FiniteRing, var: &str) -> String {
        PolyDisplay {
            ring,
            coeffs: &self.coeffs,
            var,
        }
        .to_string()
    }
}

/// All polynomials of degree below `len`, in coefficient-index order.
pub fn all_polys(ring: &FiniteRing, len: usize) -> Vec<BoundedPoly> {
    let n = ring.size();
    let count = n.pow(len as u32);
    (0..count)
        .map(|mut k| {
            BoundedPoly::new(
                (0..len)
                    .map(|_| {
                        let c = k % n;
                        k /= n;
                        c
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Monic polynomials of exactly degree `deg`.
pub fn monic_polys(ring: &FiniteRing, deg: usize) -> Vec<BoundedPoly> {
    all_polys(ring, deg)
        .into_iter()
        .map(|p| {
            let mut c = p.coeffs;
            c.resize(deg, 0);
            c.push(ring.one());
            BoundedPoly { coeffs: c }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyUnitReport {
    pub degree: usize,
    pub units: Vec<String>,
    pub formula: Vec<String>,
    pub matches: bool,
    /// Pairs `pq = 1` with both factors of degree at most `degree`.
    pub bounded_pairs: usize,
    /// Every bounded pair is a computed unit with its computed inverse.
    pub pairs_consistent: bool,
}

/// Least `k` with `Nil(R)^k = 0`.
pub fn nilpotency_index(ring: &Ring) -> usize {
    let nil = nilradical(ring);
    let mut power = nil.clone();
    let mut k = 1;
    while power.len() > 1 {
        let products: Vec<usize> = power
            .members()
            .iter()
            .flat_map(|&a| nil.members().iter().map(move |&b| (a, b)))
            .map(|(a, b)| ring.mul(a, b))
            .collect();
        power = Ideal::generated(ring, &products);
        k += 1;
    }
    k
}

/// Units of `R[X]` of degree at most `degree`, decided by power-series
/// inversion (a unit `u + X·n(X)` has an inverse of degree below
/// `degree·ν` where `Nil(R)^ν = 0`), compared with `U(R) + X·Nil(R)[X]`
/// and cross-checked by a pair scan inside the bound.
pub fn poly_unit_check(ring: &Ring, degree: usize, cap: u128) -> Result<PolyUnitReport> {
    let polys = all_polys(ring, degree + 1);
    let with_unit_constant = (ring.units().len() as u128) * (polys.len() / ring.size()) as u128;
    let population = with_unit_constant.pow(2);
    if population > cap {
        return Err(RingError::CapExceeded { population, cap });
    }
    let series_len = degree * nilpotency_index(ring) + 1;
    let mut units = Vec::new();
    let mut inverses = std::collections::HashMap::new();
    for p in &polys {
        if let Some(q) = poly_inverse(ring, p, series_len) {
            units.push(p.clone());
            inverses.insert(p.clone(), q);
        }
    }
    let nil = nilradical(ring);
    let formula: Vec<BoundedPoly> = polys
        .iter()
        .filter(|p| {
            ring.is_unit(p.coeff(0)) && p.coeffs.iter().skip(1).all(|&c| nil.contains(c))
        })
        .cloned()
        .collect();
    let one = BoundedPoly::constant(ring.one());
    let mut bounded_pairs = 0;
    let mut pairs_consistent = true;
    for p in polys.iter().filter(|p| ring.is_unit(p.coeff(0))) {
        for q in polys.iter().filter(|q| ring.is_unit(q.coeff(0))) {
            if p.mul(ring, q) == one {
                bounded_pairs += 1;
                pairs_consistent &= inverses.get(p) == Some(q);
            }
        }
    }
    Ok(PolyUnitReport {
        degree,
        matches: units == formula,
        units: units.iter().map(|p| p.format(ring, "X")).collect(),
        formula: formula.iter().map(|p| p.format(ring, "X")).collect(),
        bounded_pairs,
        pairs_consistent,
    })
}

/// Inverse of `p` in `R[X]` as a truncated power series, if it terminates
/// below `max_len` coefficients.
pub fn poly_inverse(ring: &Ring, p: &BoundedPoly, max_len: usize) -> Option<BoundedPoly> {
    let a0 = ring.units().inverse(p.coeff(0))?;
    let mut inv = vec![a0];
    for k in 1..max_len {
        let mut s = 0;
        for i in 1..=k {
            s = ring.add(s, ring.mul(p.coeff(i), inv[k - i]));
        }
        inv.push(ring.neg(ring.mul(a0, s)));
    }
    let q = BoundedPoly::new(inv);
    (p.mul(ring, &q) == BoundedPoly::constant(ring.one())).then_some(q)
}

fn require_field(ring: &Ring) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(RingError::BaseNotField)
    }
}

/// Trial division by all monic polynomials of degree at most `deg(f)/2`.
pub fn is_irreducible(field: &Ring, f: &BoundedPoly) -> Result<bool> {
    require_field(field)?;
    let n = match f.degree() {
        None | Some(0) => return Ok(false),
        Some(n) => n,
    };
    let lead_inv = field.units().inverse(f.leading()).unwrap();
    let f = f.scale(field, lead_inv);
    for d in 1..=n / 2 {
        for g in monic_polys(field, d) {
            if f.divrem_monic(field, &g).1.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Factorization of a monic polynomial into monic irreducibles, ascending
/// by degree then coefficients.
pub fn factor(field: &Ring, f: &BoundedPoly) -> Result<Vec<BoundedPoly>> {
    require_field(field)?;
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        let mut progressed = false;
        for g in monic_polys(field, d) {
            loop {
                let (q, r) = rest.divrem_monic(field, &g);
                if !r.is_zero() {
                    break;
                }
                out.push(g.clone());
                rest = q;
                progressed = true;
            }
        }
        if !progressed {
            d += 1;
        }
    }
    if rest.degree().unwrap_or(0) >= 1 {
        out.push(rest);
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    Ok(out)
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The multiplicative order of `a` mod `p` is `p - 1`.
pub fn is_primitive_root(a: u64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(RingError::NotPrime(p));
    }
    let a = a % p;
    if a == 0 {
        return Ok(false);
    }
    let mut x = a;
    let mut order = 1;
    while x != 1 {
        x = x * a % p;
        order += 1;
    }
    Ok(order == p - 1)
}

/// `R[X]/(M[X] + fR[X])`, built as `(R/M)[X]/(f̄)` and certified a field.
#[derive(Debug, Clone)]
pub struct MaximalIdealCertificate {
    pub field: Ring,
    pub field_size: usize,
    /// `N ∩ R = M`: constants in the kernel are exactly `M`.
    pub contraction_is_m: bool,
}

pub fn monic_maximal_ideal(ring: &Ring, m: &Ideal, f: &BoundedPoly) -> Result<MaximalIdealCertificate> {
    if !f.is_monic(ring) || f.degree().unwrap_or(0) == 0 {
        return Err(RingError::UnsupportedModulus(
            "polynomial must be monic of positive degree".into(),
        ));
    }
    let (k, pi) = m.quotient()?;
    require_field(&k)?;
    let fbar = f.map(pi.table());
    if !is_irreducible(&k, &fbar)? {
        let factors = factor(&k, &fbar)?;
        let shown: Vec<String> = factors.iter().map(|g| format!("({})", g.format(&k, "X"))).collect();
        return Err(RingError::ReducibleImage(shown.join("*")));
    }
    let field = FiniteRing::poly_quot(&k, fbar.coeffs(), "X")?;
    if !field.is_field() {
        return Err(RingError::Finding(
            "quotient by an irreducible modulus is not a field".into(),
        ));
    }
    // the constant r lands on pi(r) in the field
    let contraction_is_m = ring
        .elements()
        .all(|r| (field.embed_base(pi.apply(r)) == 0) == m.contains(r));
    Ok(MaximalIdealCertificate {
        field_size: field.size(),
        field,
        contraction_is_m,
    })
}

/// `1 + X + ... + X^(p-1)` over a ring.
pub fn cyclotomic(ring: &FiniteRing, p: usize) -> BoundedPoly {
    BoundedPoly::new(vec![ring.one(); p])
}
