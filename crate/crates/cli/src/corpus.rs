//! Catalog rings, seeded random products and the subring pairs drawn from
//! their lattices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringlab_core::lattice::{full_lattice, generators_in_ambient};
use ringlab_core::{Ring, RingError, SubringLattice};

use crate::dsl::{parse_ring, DslError};

pub const CATALOG: [&str; 17] = [
    "Z/2",
    "Z/2 * Z/2",
    "Z/2 * Z/2 * Z/2",
    "Z/2 * Z/2 * Z/2 * Z/2",
    "Z/3 * Z/3",
    "GF(4)",
    "GF(4) * Z/2",
    "Z/4",
    "Z/8",
    "Z/9",
    "Z/6",
    "Z/4 * Z/2",
    "Z/2[x]/(x^2)",
    "Z/4[x]/(x^2 + 2)",
    "Z/2[x]/(x^4 + x)",
    "Z/2[x]/(x^3 + 1)",
    "Z/4 (+) ideal(2)",
];

/// Factors for the random products.
const ATOMS: [(&str, usize); 6] = [
    ("Z/2", 2),
    ("Z/3", 3),
    ("Z/4", 4),
    ("GF(4)", 4),
    ("Z/5", 5),
    ("Z/2[x]/(x^2)", 4),
];

const RANDOM_PRODUCTS: usize = 8;

/// Distinct products of two to five atoms with at most `max_size`
/// elements, none of them in the catalog.
pub fn random_products(max_size: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<String> = Vec::new();
    for _ in 0..1000 {
        if out.len() == RANDOM_PRODUCTS {
            break;
        }
        let k = rng.gen_range(2..=5);
        let picks: Vec<_> = (0..k).map(|_| *ATOMS.choose(&mut rng).unwrap()).collect();
        if picks.iter().map(|p| p.1).product::<usize>() > max_size {
            continue;
        }
        let expr = picks.iter().map(|p| p.0).collect::<Vec<_>>().join(" * ");
        if !CATALOG.contains(&expr.as_str()) && !out.contains(&expr) {
            out.push(expr);
        }
    }
    out
}

pub struct CorpusRing {
    pub expr: String,
    pub ring: Ring,
    pub lattice: SubringLattice,
}

/// A ring left out of the corpus and why.
#[derive(Debug, Clone)]
pub struct Skipped {
    pub expr: String,
    pub reason: String,
}

pub struct Corpus {
    pub rings: Vec<CorpusRing>,
    pub skipped: Vec<Skipped>,
}

/// A comparable pair `low < high` of lattice members of one corpus ring.
#[derive(Debug, Clone)]
pub struct PairRef {
    pub ring: usize,
    pub low: usize,
    pub high: usize,
}

impl Corpus {
    pub fn build(max_size: usize, lattice_cap: usize, seed: u64) -> Result<Self, DslError> {
        let mut exprs: Vec<String> = CATALOG.iter().map(|s| s.to_string()).collect();
        exprs.extend(random_products(max_size, seed));
        let mut rings = Vec::new();
        let mut skipped = Vec::new();
        for expr in exprs {
            let ring = parse_ring(&expr, ringlab_core::DEFAULT_SIZE_CAP)?;
            if ring.size() > max_size {
                skipped.push(Skipped {
                    reason: format!("{} elements above the size bound {max_size}", ring.size()),
                    expr,
                });
                continue;
            }
            match full_lattice(&ring, lattice_cap) {
                Ok(lattice) => rings.push(CorpusRing { expr, ring, lattice }),
                Err(e @ RingError::CapExceeded { .. }) => skipped.push(Skipped {
                    expr,
                    reason: e.to_string(),
                }),
                Err(e) => return Err(e.into()),
            }
        }
        Ok(Corpus { rings, skipped })
    }

    pub fn pairs(&self) -> Vec<PairRef> {
        let mut out = Vec::new();
        for (ring, c) in self.rings.iter().enumerate() {
            let n = c.lattice.len();
            for low in 0..n {
                for high in 0..n {
                    if low != high && c.lattice.leq(low, high) {
                        out.push(PairRef { ring, low, high });
                    }
                }
            }
        }
        out
    }

    /// Chains `a < b < c` as triples of lattice positions.
    pub fn towers(&self) -> Vec<(usize, [usize; 3])> {
        let mut out = Vec::new();
        for (ring, c) in self.rings.iter().enumerate() {
            let l = &c.lattice;
            let n = l.len();
            for a in 0..n {
                for b in 0..n {
                    if a == b || !l.leq(a, b) {
                        continue;
                    }
                    for t in 0..n {
                        if t != b && l.leq(b, t) {
                            out.push((ring, [a, b, t]));
                        }
                    }
                }
            }
        }
        out
    }

    /// Generator literals of a lattice member.
    pub fn member_gens(&self, ring: usize, member: usize) -> Vec<String> {
        let c = &self.rings[ring];
        let m = &c.lattice.members()[member];
        generators_in_ambient(m)
            .iter()
            .map(|&g| c.ring.format(g))
            .collect()
    }
}
