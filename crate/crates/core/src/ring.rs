//! Finite commutative unital rings with a canonical element order.
//!
//! Every ring has `size` elements indexed `0..size`. Index `0` is always the
//! zero element. Indices are mixed-radix encodings of the coordinate vector of
//! the element, most significant coordinate first, so the index order is the
//! lexicographic order on coordinates:
//!
//! * `Z/n`: the residue itself.
//! * `B[x]/(f)`: the coefficient vector, leading coefficient most significant.
//! * products: the component tuple, first factor most significant.
//! * idealizations `R (+) M`: the pair `(r, m)`, with `m` ranked inside `M`.
//! * subrings and quotients: rank of the ambient index (resp. of the least
//!   coset representative) among the members (resp. representatives).

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Result, RingError};
use crate::ideal::Ideal;
use crate::units::UnitGroup;

pub type Ring = Arc<FiniteRing>;

/// Default bound on the number of elements of any constructed ring.
pub const DEFAULT_SIZE_CAP: usize = 1 << 16;

/// Rings up to this size run quadratic definition scans directly.
pub const PAIR_SCAN_SIZE: usize = 4096;

const TABLE_CAP: usize = 1024;
const MAX_COORDS: usize = 64;

pub enum RingKind {
    Zmod {
        n: usize,
    },
    PolyQuot {
        base: Ring,
        /// Coefficients of the monic modulus, constant term first.
        modulus: Vec<usize>,
        var: String,
        degree: usize,
    },
    Product {
        factors: Vec<Ring>,
        strides: Vec<usize>,
    },
    Idealization {
        base: Ring,
        module: Vec<usize>,
        position: Vec<u32>,
    },
    Subring {
        ambient: Ring,
        members: Vec<usize>,
        lookup: Vec<u32>,
    },
    Quotient {
        ambient: Ring,
        reps: Vec<usize>,
        class_of: Vec<u32>,
    },
}

/// Specialised arithmetic for characteristic-two rings whose indices are
/// bit vectors: addition is XOR, and `F2[x]/(f)` multiplies carry-less.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Fast {
    Generic,
    Xor,
    BinPoly { degree: u32, modulus: u64 },
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

#[derive(Default)]
pub(crate) struct Cache {
    pub units: OnceLock<UnitGroup>,
    pub idempotents: OnceLock<Vec<usize>>,
    pub primitive_idempotents: OnceLock<Vec<usize>>,
    pub nilradical: OnceLock<Vec<usize>>,
    pub jacobson: OnceLock<Vec<usize>>,
    pub maximal: OnceLock<Vec<Vec<usize>>>,
    pub additive_basis: OnceLock<Vec<usize>>,
    pub generators: OnceLock<Vec<usize>>,
}

pub struct FiniteRing {
    size: usize,
    one: usize,
    cap: usize,
    kind: RingKind,
    fast: Fast,
    tables: OnceLock<Option<Tables>>,
    pub(crate) cache: Cache,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.describe(), self.size)
    }
}

fn check_cap(size: Option<usize>, cap: usize) -> Result<usize> {
    match size {
        Some(s) if s <= cap => Ok(s),
        Some(s) => Err(RingError::TooLarge { size: s, cap }),
        None => Err(RingError::TooLarge { size: usize::MAX, cap }),
    }
}

impl FiniteRing {
    fn build(size: usize, cap: usize, kind: RingKind, one: usize) -> Ring {
        let fast = match &kind {
            RingKind::Zmod { n: 2 } => Fast::Xor,
            RingKind::PolyQuot {
                base,
                modulus,
                degree,
                ..
            } => match base.kind {
                RingKind::Zmod { n: 2 } if *degree < 32 => Fast::BinPoly {
                    degree: *degree as u32,
                    modulus: modulus
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (i, &c)| acc | ((c as u64) << i)),
                },
                _ if base.fast != Fast::Generic => Fast::Xor,
                _ => Fast::Generic,
            },
            RingKind::Product { factors, .. }
                if factors.iter().all(|f| f.fast != Fast::Generic) =>
            {
                Fast::Xor
            }
            _ => Fast::Generic,
        };
        Arc::new(FiniteRing {
            size,
            one,
            cap,
            kind,
            fast,
            tables: OnceLock::new(),
            cache: Cache::default(),
        })
    }

    /// `Z/nZ` under the default size cap.
    pub fn zmod(n: usize) -> Result<Ring> {
        Self::zmod_with_cap(n, DEFAULT_SIZE_CAP)
    }

    pub fn zmod_with_cap(n: usize, cap: usize) -> Result<Ring> {
        if n < 2 {
            return Err(RingError::InvalidRing(format!(
                "Z/{n} is the zero ring or empty; rings must be nonzero"
            )));
        }
        check_cap(Some(n), cap)?;
        Ok(Self::build(n, cap, RingKind::Zmod { n }, 1))
    }

    /// `base[var]/(modulus)`; `modulus` lists base-ring coefficients, constant
    /// term first, and must be monic of degree at least one.
    pub fn poly_quot(base: &Ring, modulus: &[usize], var: &str) -> Result<Ring> {
        let mut modulus = modulus.to_vec();
        while modulus.len() > 1 && *modulus.last().unwrap() == 0 {
            modulus.pop();
        }
        if modulus.len() < 2 {
            return Err(RingError::UnsupportedModulus(
                "modulus must have degree at least 1".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= base.size) {
            return Err(RingError::UnsupportedModulus(
                "coefficient outside the base ring".into(),
            ));
        }
        if *modulus.last().unwrap() != base.one {
            return Err(RingError::UnsupportedModulus(
                "modulus is not monic".into(),
            ));
        }
        let degree = modulus.len() - 1;
        let cap = base.cap;
        let size = check_cap(
            (degree < MAX_COORDS / 2)
                .then(|| base.size.checked_pow(degree as u32))
                .flatten(),
            cap,
        )?;
        // constant coefficient 1 sits in the least significant digit
        let one = base.one;
        Ok(Self::build(
            size,
            cap,
            RingKind::PolyQuot {
                base: base.clone(),
                modulus,
                var: var.to_string(),
                degree,
            },
            one,
        ))
    }

    pub fn product(factors: &[Ring]) -> Result<Ring> {
        if factors.is_empty() {
            return Err(RingError::InvalidRing("empty product".into()));
        }
        if factors.len() > MAX_COORDS {
            return Err(RingError::InvalidRing("too many factors".into()));
        }
        let cap = factors.iter().map(|f| f.cap).max().unwrap();
        let size = check_cap(
            factors
                .iter()
                .try_fold(1usize, |acc, f| acc.checked_mul(f.size)),
            cap,
        )?;
        let mut strides = vec![1usize; factors.len()];
        for j in (0..factors.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * factors[j + 1].size;
        }
        let one = factors
            .iter()
            .zip(&strides)
            .map(|(f, s)| f.one * s)
            .sum();
        Ok(Self::build(
            size,
            cap,
            RingKind::Product {
                factors: factors.to_vec(),
                strides,
            },
            one,
        ))
    }

    /// Nagata idealization `R (+) M` for an ideal `M` of `R` viewed as a module.
    pub fn idealization(base: &Ring, module: &Ideal) -> Result<Ring> {
        if !Arc::ptr_eq(base, module.ring()) {
            return Err(RingError::InvalidIdeal(
                "module ideal belongs to a different ring".into(),
            ));
        }
        module.validate()?;
        let members = module.members().to_vec();
        let size = check_cap(base.size.checked_mul(members.len()), base.cap)?;
        let mut position = vec![u32::MAX; base.size];
        for (i, &m) in members.iter().enumerate() {
            position[m] = i as u32;
        }
        let one = base.one * members.len();
        Ok(Self::build(
            size,
            base.cap,
            RingKind::Idealization {
                base: base.clone(),
                module: members,
                position,
            },
            one,
        ))
    }

    /// Wraps an already closed member set of `ambient` as a subring.
    pub(crate) fn subring_unchecked(ambient: &Ring, mut members: Vec<usize>) -> Ring {
        members.sort_unstable();
        members.dedup();
        let mut lookup = vec![u32::MAX; ambient.size];
        for (i, &m) in members.iter().enumerate() {
            lookup[m] = i as u32;
        }
        let one = lookup[ambient.one] as usize;
        Self::build(
            members.len(),
            ambient.cap,
            RingKind::Subring {
                ambient: ambient.clone(),
                members,
                lookup,
            },
            one,
        )
    }

    /// Coset ring of an additive subgroup closed under multiplication by the
    /// ambient ring; classes are represented by their least index.
    pub(crate) fn quotient_unchecked(ambient: &Ring, ideal_members: &[usize]) -> Ring {
        let n = ambient.size;
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::with_capacity(n / ideal_members.len().max(1));
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &i in ideal_members {
                class_of[ambient.add(x, i)] = c;
            }
        }
        let one = class_of[ambient.one] as usize;
        Self::build(
            reps.len(),
            ambient.cap,
            RingKind::Quotient {
                ambient: ambient.clone(),
                reps,
                class_of,
            },
            one,
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    fn tables(&self) -> Option<&Tables> {
        self.tables
            .get_or_init(|| {
                let tabulate = matches!(
                    self.kind,
                    RingKind::PolyQuot { .. }
                        | RingKind::Product { .. }
                        | RingKind::Idealization { .. }
                );
                if !tabulate || self.size > TABLE_CAP {
                    return None;
                }
                let n = self.size;
                let mut add = Vec::with_capacity(n * n);
                let mut mul = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        add.push(self.add_raw(a, b) as u16);
                        mul.push(self.mul_raw(a, b) as u16);
                    }
                }
                let neg = (0..n).map(|a| self.neg_raw(a) as u16).collect();
                Some(Tables { add, mul, neg })
            })
            .as_ref()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        if let RingKind::Zmod { n } = self.kind {
            let s = a + b;
            return if s >= n { s - n } else { s };
        }
        if self.fast != Fast::Generic {
            return a ^ b;
        }
        match self.tables() {
            Some(t) => t.add[a * self.size + b] as usize,
            None => self.add_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        if let RingKind::Zmod { n } = self.kind {
            return if a == 0 { 0 } else { n - a };
        }
        if self.fast != Fast::Generic {
            return a;
        }
        match self.tables() {
            Some(t) => t.neg[a] as usize,
            None => self.neg_raw(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let RingKind::Zmod { n } = self.kind {
            return (a * b) % n;
        }
        if let Fast::BinPoly { degree, modulus } = self.fast {
            return clmul_mod(a as u64, b as u64, degree, modulus) as usize;
        }
        match self.tables() {
            Some(t) => t.mul[a * self.size + b] as usize,
            None => self.mul_raw(a, b),
        }
    }

    pub fn pow(&self, mut x: usize, mut k: u64) -> usize {
        let mut acc = self.one;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            k >>= 1;
        }
        acc
    }

    /// `k * x` for a signed integer `k`.
    pub fn scale(&self, x: usize, k: i64) -> usize {
        let mut base = if k < 0 { self.neg(x) } else { x };
        let mut k = k.unsigned_abs();
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn from_int(&self, k: i64) -> usize {
        self.scale(self.one, k)
    }

    /// Additive order of `x`.
    pub fn additive_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != 0 {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    fn add_raw(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            RingKind::Zmod { n } => (a + b) % n,
            RingKind::PolyQuot { base, degree, .. } => {
                let bs = base.size;
                let (mut x, mut y, mut pow, mut out) = (a, b, 1, 0);
                for _ in 0..*degree {
                    out += base.add(x % bs, y % bs) * pow;
                    pow *= bs;
                    x /= bs;
                    y /= bs;
                }
                out
            }
            RingKind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.add((a / s) % f.size, (b / s) % f.size) * s)
                .sum(),
            RingKind::Idealization {
                base,
                module,
                position,
            } => {
                let ms = module.len();
                let r = base.add(a / ms, b / ms);
                let m = base.add(module[a % ms], module[b % ms]);
                r * ms + position[m] as usize
            }
            RingKind::Subring {
                ambient,
                members,
                lookup,
            } => lookup[ambient.add(members[a], members[b])] as usize,
            RingKind::Quotient {
                ambient,
                reps,
                class_of,
            } => class_of[ambient.add(reps[a], reps[b])] as usize,
        }
    }

    fn neg_raw(&self, a: usize) -> usize {
        match &self.kind {
            RingKind::Zmod { n } => (n - a) % n,
            RingKind::PolyQuot { base, degree, .. } => {
                let bs = base.size;
                let (mut x, mut pow, mut out) = (a, 1, 0);
                for _ in 0..*degree {
                    out += base.neg(x % bs) * pow;
                    pow *= bs;
                    x /= bs;
                }
                out
            }
            RingKind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.neg((a / s) % f.size) * s)
                .sum(),
            RingKind::Idealization {
                base,
                module,
                position,
            } => {
                let ms = module.len();
                let r = base.neg(a / ms);
                let m = base.neg(module[a % ms]);
                r * ms + position[m] as usize
            }
            RingKind::Subring {
                ambient,
                members,
                lookup,
            } => lookup[ambient.neg(members[a])] as usize,
            RingKind::Quotient {
                ambient,
                reps,
                class_of,
            } => class_of[ambient.neg(reps[a])] as usize,
        }
    }

    fn mul_raw(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            RingKind::Zmod { n } => (a * b) % n,
            RingKind::PolyQuot {
                base,
                modulus,
                degree,
                ..
            } => {
                let d = *degree;
                let bs = base.size;
                let mut ca = [0usize; MAX_COORDS];
                let mut cb = [0usize; MAX_COORDS];
                let (mut x, mut y) = (a, b);
                for i in 0..d {
                    ca[i] = x % bs;
                    cb[i] = y % bs;
                    x /= bs;
                    y /= bs;
                }
                let mut prod = [0usize; 2 * MAX_COORDS];
                for i in 0..d {
                    if ca[i] == 0 {
                        continue;
                    }
                    for j in 0..d {
                        if cb[j] != 0 {
                            prod[i + j] = base.add(prod[i + j], base.mul(ca[i], cb[j]));
                        }
                    }
                }
                for k in (d..2 * d - 1).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for i in 0..d {
                        if modulus[i] != 0 {
                            prod[k - d + i] =
                                base.sub(prod[k - d + i], base.mul(c, modulus[i]));
                        }
                    }
                }
                let mut out = 0;
                for i in (0..d).rev() {
                    out = out * bs + prod[i];
                }
                out
            }
            RingKind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.mul((a / s) % f.size, (b / s) % f.size) * s)
                .sum(),
            RingKind::Idealization {
                base,
                module,
                position,
            } => {
                let ms = module.len();
                let (r1, m1) = (a / ms, module[a % ms]);
                let (r2, m2) = (b / ms, module[b % ms]);
                let r = base.mul(r1, r2);
                let m = base.add(base.mul(r1, m2), base.mul(r2, m1));
                r * ms + position[m] as usize
            }
            RingKind::Subring {
                ambient,
                members,
                lookup,
            } => lookup[ambient.mul(members[a], members[b])] as usize,
            RingKind::Quotient {
                ambient,
                reps,
                class_of,
            } => class_of[ambient.mul(reps[a], reps[b])] as usize,
        }
    }

    /// Immediate coordinates of `x`: polynomial coefficients (constant term
    /// first), product components, the `(r, m)` pair of an idealization, or
    /// the ambient index for subrings and quotients.
    pub fn coords(&self, x: usize) -> Vec<usize> {
        match &self.kind {
            RingKind::Zmod { .. } => vec![x],
            RingKind::PolyQuot { base, degree, .. } => {
                let bs = base.size;
                let mut v = Vec::with_capacity(*degree);
                let mut y = x;
                for _ in 0..*degree {
                    v.push(y % bs);
                    y /= bs;
                }
                v
            }
            RingKind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| (x / s) % f.size)
                .collect(),
            RingKind::Idealization { module, .. } => {
                let ms = module.len();
                vec![x / ms, module[x % ms]]
            }
            RingKind::Subring { members, .. } => vec![members[x]],
            RingKind::Quotient { reps, .. } => vec![reps[x]],
        }
    }

    /// Inverse of [`FiniteRing::coords`]; `None` if the vector is not valid.
    pub fn from_coords(&self, c: &[usize]) -> Option<usize> {
        match &self.kind {
            RingKind::Zmod { n } => (c.len() == 1 && c[0] < *n).then(|| c[0]),
            RingKind::PolyQuot { base, degree, .. } => {
                if c.len() > *degree || c.iter().any(|&v| v >= base.size) {
                    return None;
                }
                Some(c.iter().rev().fold(0, |acc, &v| acc * base.size + v))
            }
            RingKind::Product { factors, strides } => {
                if c.len() != factors.len() {
                    return None;
                }
                let mut out = 0;
                for ((f, &s), &v) in factors.iter().zip(strides).zip(c) {
                    if v >= f.size {
                        return None;
                    }
                    out += v * s;
                }
                Some(out)
            }
            RingKind::Idealization {
                base,
                module,
                position,
            } => {
                if c.len() != 2 || c[0] >= base.size || c[1] >= base.size {
                    return None;
                }
                let p = position[c[1]];
                (p != u32::MAX).then(|| c[0] * module.len() + p as usize)
            }
            RingKind::Subring { lookup, .. } => {
                let p = *lookup.get(*c.first()?)?;
                (c.len() == 1 && p != u32::MAX).then_some(p as usize)
            }
            RingKind::Quotient { class_of, .. } => {
                let p = *class_of.get(*c.first()?)?;
                (c.len() == 1).then_some(p as usize)
            }
        }
    }

    /// The class of the named variable, searching down the tower of
    /// polynomial quotients (and through idealizations, subrings are not
    /// searched).
    pub fn variable(&self, name: &str) -> Option<usize> {
        match &self.kind {
            RingKind::PolyQuot { base, var, .. } => {
                if var == name {
                    Some(base.one * base.size)
                } else {
                    base.variable(name).map(|b| self.embed_base(b))
                }
            }
            RingKind::Idealization { base, module, .. } => {
                base.variable(name).map(|b| b * module.len())
            }
            RingKind::Subring { ambient, lookup, .. } => ambient
                .variable(name)
                .and_then(|x| (lookup[x] != u32::MAX).then_some(lookup[x] as usize)),
            RingKind::Quotient {
                ambient, class_of, ..
            } => ambient.variable(name).map(|x| class_of[x] as usize),
            _ => None,
        }
    }

    /// Constant embedding of a base-ring element for polynomial quotients.
    pub fn embed_base(&self, b: usize) -> usize {
        match &self.kind {
            RingKind::PolyQuot { .. } => b,
            RingKind::Idealization { module, .. } => b * module.len(),
            _ => b,
        }
    }

    /// Element of a product ring with the given components.
    pub fn tuple(&self, comps: &[usize]) -> Option<usize> {
        match &self.kind {
            RingKind::Product { .. } => self.from_coords(comps),
            _ => None,
        }
    }

    /// Element `(r, m)` of an idealization.
    pub fn pair(&self, r: usize, m: usize) -> Option<usize> {
        match &self.kind {
            RingKind::Idealization { .. } => self.from_coords(&[r, m]),
            _ => None,
        }
    }

    /// Ambient ring for subrings and quotients.
    pub fn ambient(&self) -> Option<&Ring> {
        match &self.kind {
            RingKind::Subring { ambient, .. } | RingKind::Quotient { ambient, .. } => {
                Some(ambient)
            }
            _ => None,
        }
    }

    /// Maps an ambient element into this subring or quotient.
    pub fn from_ambient(&self, x: usize) -> Option<usize> {
        match &self.kind {
            RingKind::Subring { lookup, .. } => {
                lookup.get(x).and_then(|&p| (p != u32::MAX).then_some(p as usize))
            }
            RingKind::Quotient { class_of, .. } => class_of.get(x).map(|&p| p as usize),
            _ => None,
        }
    }

    /// Ambient index of a subring member or quotient representative.
    pub fn to_ambient(&self, x: usize) -> Option<usize> {
        match &self.kind {
            RingKind::Subring { members, .. } => Some(members[x]),
            RingKind::Quotient { reps, .. } => Some(reps[x]),
            _ => None,
        }
    }

    /// Subring members as ambient indices.
    pub fn members(&self) -> Option<&[usize]> {
        match &self.kind {
            RingKind::Subring { members, .. } => Some(members),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Ring]> {
        match &self.kind {
            RingKind::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Short structural description used in debug output.
    pub fn describe(&self) -> String {
        match &self.kind {
            RingKind::Zmod { n } => format!("Z/{n}"),
            RingKind::PolyQuot {
                base, modulus, var, ..
            } => {
                let f = PolyDisplay {
                    ring: base,
                    coeffs: modulus,
                    var,
                };
                let b = base.describe();
                let b = if matches!(base.kind, RingKind::Zmod { .. } | RingKind::PolyQuot { .. }) {
                    b
                } else {
                    format!("({b})")
                };
                format!("{b}[{var}]/({f})")
            }
            RingKind::Product { factors, .. } => factors
                .iter()
                .map(|f| {
                    let d = f.describe();
                    if matches!(f.kind, RingKind::Product { .. } | RingKind::Idealization { .. })
                    {
                        format!("({d})")
                    } else {
                        d
                    }
                })
                .collect::<Vec<_>>()
                .join(" * "),
            RingKind::Idealization { base, module, .. } => {
                format!("{} (+) <ideal of {} elements>", base.describe(), module.len())
            }
            RingKind::Subring { ambient, members, .. } => {
                format!("subring of {} elements in {}", members.len(), ambient.describe())
            }
            RingKind::Quotient { ambient, reps, .. } => {
                format!("quotient of {} with {} classes", ambient.describe(), reps.len())
            }
        }
    }

    /// Literal for an element, in the syntax the ring-expression DSL parses.
    pub fn format(&self, x: usize) -> String {
        match &self.kind {
            RingKind::Zmod { .. } => x.to_string(),
            RingKind::PolyQuot { base, var, .. } => {
                let c = self.coords(x);
                PolyDisplay {
                    ring: base,
                    coeffs: &c,
                    var,
                }
                .to_string()
            }
            RingKind::Product { factors, .. } => {
                let parts: Vec<String> = self
                    .coords(x)
                    .iter()
                    .zip(factors)
                    .map(|(&c, f)| f.format(c))
                    .collect();
                format!("({})", parts.join(", "))
            }
            RingKind::Idealization { base, .. } => {
                let c = self.coords(x);
                format!("({}, {})", base.format(c[0]), base.format(c[1]))
            }
            RingKind::Subring { ambient, members, .. } => ambient.format(members[x]),
            RingKind::Quotient { ambient, reps, .. } => ambient.format(reps[x]),
        }
    }
}

/// Product of two polynomials over `F2` given as bit masks, reduced modulo
/// the monic `modulus` of the given degree.
fn clmul_mod(a: u64, b: u64, degree: u32, modulus: u64) -> u64 {
    let mut prod = 0u64;
    let mut x = a;
    let mut shift = 0;
    while x != 0 {
        if x & 1 == 1 {
            prod ^= b << shift;
        }
        x >>= 1;
        shift += 1;
    }
    let mut k = 2 * degree;
    while k > degree {
        k -= 1;
        if (prod >> k) & 1 == 1 {
            prod ^= modulus << (k - degree);
        }
    }
    prod
}

/// Renders a coefficient list (constant term first) over `ring` as a
/// polynomial in `var`, leading term first.
pub struct PolyDisplay<'a> {
    pub ring: &'a FiniteRing,
    pub coeffs: &'a [usize],
    pub var: &'a str,
}

fn is_atomic_literal(s: &str) -> bool {
    s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        || (s.starts_with('(') && s.ends_with(')'))
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = self.ring.format(c);
            let monomial = match i {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, i),
            };
            let term = if i == 0 {
                if is_atomic_literal(&cs) {
                    cs
                } else {
                    format!("({cs})")
                }
            } else if c == self.ring.one() {
                monomial
            } else if is_atomic_literal(&cs) {
                format!("{cs}*{monomial}")
            } else {
                format!("({cs})*{monomial}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2_poly(coeffs: &[usize]) -> Ring {
        let f2 = FiniteRing::zmod(2).unwrap();
        FiniteRing::poly_quot(&f2, coeffs, "t").unwrap()
    }

    #[test]
    fn zmod_rejects_trivial_ring() {
        assert!(matches!(FiniteRing::zmod(1), Err(RingError::InvalidRing(_))));
        assert!(matches!(FiniteRing::zmod(0), Err(RingError::InvalidRing(_))));
        let z2 = FiniteRing::zmod(2).unwrap();
        assert_eq!(z2.size(), 2);
        assert_ne!(z2.zero(), z2.one());
    }

    #[test]
    fn poly_quot_rejects_non_monic() {
        let z4 = FiniteRing::zmod(4).unwrap();
        assert!(matches!(
            FiniteRing::poly_quot(&z4, &[0, 0, 2], "x"),
            Err(RingError::UnsupportedModulus(_))
        ));
        assert!(matches!(
            FiniteRing::poly_quot(&z4, &[1], "x"),
            Err(RingError::UnsupportedModulus(_))
        ));
    }

    #[test]
    fn size_cap_is_enforced() {
        let z2 = FiniteRing::zmod_with_cap(2, 64).unwrap();
        let r = FiniteRing::poly_quot(&z2, &[0, 0, 0, 0, 0, 0, 0, 1], "x");
        assert!(matches!(r, Err(RingError::TooLarge { size: 128, cap: 64 })));
        let parts = vec![z2.clone(); 7];
        assert!(matches!(
            FiniteRing::product(&parts),
            Err(RingError::TooLarge { .. })
        ));
    }

    #[test]
    fn degree_one_quotient_is_base() {
        let s = f2_poly(&[0, 1]);
        assert_eq!(s.size(), 2);
        assert_eq!(s.mul(1, 1), 1);
        assert_eq!(s.add(1, 1), 0);
    }

    #[test]
    fn quartic_quotient_arithmetic() {
        // t^4 = t in F2[t]/(t^4 + t)
        let s = f2_poly(&[0, 1, 0, 0, 1]);
        assert_eq!(s.size(), 16);
        let t = s.variable("t").unwrap();
        assert_eq!(s.pow(t, 4), t);
        let u = s.from_coords(&[1, 1, 0, 1]).unwrap();
        assert_eq!(s.format(u), "t^3 + t + 1");
        assert_eq!(s.pow(u, 3), s.one());
    }

    #[test]
    fn coords_round_trip() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let q = FiniteRing::poly_quot(&z4, &[2, 0, 1], "x").unwrap();
        let p = FiniteRing::product(&[q.clone(), FiniteRing::zmod(3).unwrap()]).unwrap();
        for ring in [&q, &p] {
            for x in ring.elements() {
                assert_eq!(ring.from_coords(&ring.coords(x)), Some(x));
            }
        }
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let a = FiniteRing::zmod(3).unwrap();
        let b = FiniteRing::zmod(2).unwrap();
        let p = FiniteRing::product(&[a, b]).unwrap();
        let coords: Vec<_> = p.elements().map(|x| p.coords(x)).collect();
        let mut sorted = coords.clone();
        sorted.sort();
        assert_eq!(coords, sorted);
    }

    #[test]
    fn product_identity_and_components() {
        let p = FiniteRing::product(&[
            FiniteRing::zmod(2).unwrap(),
            FiniteRing::zmod(3).unwrap(),
        ])
        .unwrap();
        assert_eq!(p.coords(p.one()), vec![1, 1]);
        let x = p.tuple(&[1, 2]).unwrap();
        assert_eq!(p.coords(p.mul(x, x)), vec![1, 1]);
        assert_eq!(p.format(x), "(1, 2)");
    }

    #[test]
    fn zmod_scale_and_negation() {
        let z8 = FiniteRing::zmod(8).unwrap();
        assert_eq!(z8.from_int(-1), 7);
        assert_eq!(z8.scale(3, 5), 7);
        assert_eq!(z8.additive_order(2), 4);
        assert_eq!(z8.sub(1, 3), 6);
    }
}
