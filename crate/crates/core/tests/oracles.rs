//! Structural computations compared with brute-force scans and closed
//! formulas.

use std::collections::HashSet;

use ringlab_core::lattice::full_lattice;
use ringlab_core::poly::{factor, is_irreducible, is_primitive_root, monic_polys, BoundedPoly};
use ringlab_core::{
    jacobson, maximal_ideals, nilradical, Extension, FiniteRing, Ideal, Ring,
};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn brute_units(r: &Ring) -> Vec<usize> {
    r.elements()
        .filter(|&x| r.elements().any(|y| r.mul(x, y) == r.one()))
        .collect()
}

#[test]
fn integers_mod_n() {
    for n in 2..=60 {
        let r = FiniteRing::zmod(n).unwrap();
        let ps = prime_factors(n);
        let phi = (1..=n).filter(|&k| gcd(k, n) == 1).count();
        assert_eq!(r.units().len(), phi, "Z/{n}");
        assert_eq!(r.idempotents().len(), 1 << ps.len(), "Z/{n}");
        assert_eq!(maximal_ideals(&r).len(), ps.len(), "Z/{n}");
        let rad: usize = ps.iter().product();
        let multiples: Vec<usize> = (0..n).filter(|k| k % rad == 0).collect();
        assert_eq!(jacobson(&r).members(), &multiples[..], "Z/{n}");
        assert_eq!(nilradical(&r).members(), &multiples[..], "Z/{n}");
        assert_eq!(r.is_field(), ps == [n]);
    }
}

fn test_rings() -> Vec<Ring> {
    let f2 = FiniteRing::zmod(2).unwrap();
    let f3 = FiniteRing::zmod(3).unwrap();
    let z4 = FiniteRing::zmod(4).unwrap();
    let gf4 = FiniteRing::poly_quot(&f2, &[1, 1, 1], "a").unwrap();
    let m = Ideal::generated(&z4, &[2]);
    vec![
        FiniteRing::product(&[f2.clone(), f2.clone(), f2.clone()]).unwrap(),
        FiniteRing::product(&[f2.clone(), gf4.clone()]).unwrap(),
        FiniteRing::product(&[f3.clone(), f3.clone()]).unwrap(),
        FiniteRing::product(&[z4.clone(), f2.clone()]).unwrap(),
        FiniteRing::poly_quot(&f2, &[0, 1, 0, 0, 1], "x").unwrap(),
        FiniteRing::poly_quot(&f2, &[1, 0, 0, 1], "y").unwrap(),
        FiniteRing::poly_quot(&f2, &[0, 0, 0, 1], "x").unwrap(),
        FiniteRing::poly_quot(&z4, &[2, 0, 1], "x").unwrap(),
        FiniteRing::poly_quot(&f3, &[0, 0, 1], "e").unwrap(),
        FiniteRing::idealization(&z4, &m).unwrap(),
        FiniteRing::product(&[FiniteRing::poly_quot(&f2, &[0, 0, 1], "x").unwrap(), f2.clone(), f2]).unwrap(),
    ]
}

#[test]
fn radicals_units_and_idempotents() {
    for r in test_rings() {
        let name = r.describe();
        assert_eq!(r.units().members(), &brute_units(&r)[..], "{name}");
        let j: Vec<usize> = r
            .elements()
            .filter(|&x| r.elements().all(|a| r.is_unit(r.sub(r.one(), r.mul(a, x)))))
            .collect();
        assert_eq!(jacobson(&r).members(), &j[..], "{name}");
        let idem: Vec<usize> = r.elements().filter(|&x| r.mul(x, x) == x).collect();
        assert_eq!(r.idempotents(), &idem[..], "{name}");
        // maximal ideals are the ideals with a field quotient
        for m in maximal_ideals(&r) {
            assert!(m.quotient().unwrap().0.is_field(), "{name}");
        }
    }
}

#[test]
fn large_rings_use_the_idempotent_path() {
    let f2 = FiniteRing::zmod(2).unwrap();
    let z4 = FiniteRing::zmod(4).unwrap();
    let mut x11 = vec![0; 12];
    x11[1] = 1;
    x11[11] = 1;
    let big = [
        FiniteRing::poly_quot(&f2, &x11, "x").unwrap(),
        FiniteRing::poly_quot(&z4, &[2, 0, 0, 0, 0, 0, 1], "x").unwrap(),
    ];
    for r in big {
        assert!(r.size() > 1024);
        assert_eq!(r.units().members(), &brute_units(&r)[..], "{}", r.describe());
        let nil: Vec<usize> = r.elements().filter(|&x| r.pow(x, 16) == 0).collect();
        assert_eq!(nilradical(&r).members(), &nil[..]);
        assert_eq!(jacobson(&r).members(), &nil[..]);
        let units: HashSet<usize> = brute_units(&r).into_iter().collect();
        let j: Vec<usize> = r
            .elements()
            .filter(|&x| r.elements().all(|a| units.contains(&r.sub(r.one(), r.mul(a, x)))))
            .collect();
        assert_eq!(j, nil);
    }
}

fn bell(n: usize) -> usize {
    // Bell triangle
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

#[test]
fn boolean_subring_counts_are_bell_numbers() {
    let f2 = FiniteRing::zmod(2).unwrap();
    for n in 1..=5 {
        let r = FiniteRing::product(&vec![f2.clone(); n]).unwrap();
        assert_eq!(full_lattice(&r, 64).unwrap().len(), bell(n), "F2^{n}");
    }
}

/// All comparable pairs of the full lattices of the test rings.
fn pairs() -> Vec<Extension> {
    let mut out = Vec::new();
    for r in test_rings() {
        let l = full_lattice(&r, 64).unwrap();
        for a in 0..l.len() {
            for b in 0..l.len() {
                if a != b && l.leq(a, b) {
                    out.push(l.extension(a, b).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn extension_predicates_match_scans() {
    let exts = pairs();
    assert!(exts.len() > 50);
    for e in &exts {
        let (r, s) = (e.sub(), e.ambient());
        let ur: HashSet<usize> = brute_units(r).iter().map(|&x| r.to_ambient(x).unwrap()).collect();
        let us: HashSet<usize> = brute_units(s).into_iter().collect();
        let local = e.sub_members().iter().all(|x| us.contains(x) == ur.contains(x));
        assert_eq!(e.is_local(), local);
        assert_eq!(e.is_sl(), ur == us);

        let conductor: Vec<usize> = s
            .elements()
            .filter(|&x| s.elements().all(|y| e.contains(s.mul(x, y))))
            .collect();
        assert_eq!(e.conductor().members(), &conductor[..]);

        // the support of S/R is cut out by the conductor
        let c = e.conductor_in_sub();
        let supp: Vec<usize> = maximal_ideals(r)
            .iter()
            .enumerate()
            .filter(|(_, m)| c.is_subset(m))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(e.msupp(), supp);

        let d = e.sl_defect();
        let modules: HashSet<Vec<usize>> = us
            .iter()
            .map(|&u| {
                let mut m: Vec<usize> = e.sub_members().iter().map(|&x| s.mul(x, u)).collect();
                m.sort_unstable();
                m
            })
            .collect();
        assert_eq!(d.module_count, modules.len());
        assert_eq!(d.index * ur.len(), us.len());
    }
}

/// Roots outside `R` of `1 - a1 X - ... - ad X^d`, scanning every
/// coefficient tuple.
fn co_integral_scan(e: &Extension, degree: usize) -> bool {
    let s = e.ambient();
    let coeffs = e.sub_members();
    let total = coeffs.len().pow(degree as u32);
    s.elements().filter(|&b| !e.contains(b)).any(|b| {
        (0..total).any(|mut k| {
            let mut v = s.one();
            let mut p = s.one();
            for _ in 0..degree {
                p = s.mul(p, b);
                v = s.sub(v, s.mul(coeffs[k % coeffs.len()], p));
                k /= coeffs.len();
            }
            v == 0
        })
    })
}

#[test]
fn co_integral_roots_match_scan() {
    for e in pairs().iter().filter(|e| e.sub().size() <= 8) {
        for d in 1..=3 {
            assert_eq!(
                e.co_integral_witness(d).is_some(),
                co_integral_scan(e, d),
                "degree {d} in {}",
                e.ambient().describe()
            );
        }
    }
}

#[test]
fn witnesses_satisfy_their_definitions() {
    for e in pairs() {
        let s = e.ambient();
        if let Some(b) = e.seminormal_witness() {
            assert!(!e.contains(b) && e.contains(s.mul(b, b)) && e.contains(s.pow(b, 3)));
        }
        if let Some((b, r)) = e.t_closed_witness() {
            assert!(!e.contains(b) && e.contains(r));
            assert!(e.contains(s.sub(s.mul(b, b), s.mul(r, b))));
        }
        if let Some(b) = e.u_closed_witness() {
            assert!(e.contains(s.sub(s.mul(b, b), b)));
        }
        // u-closed failures are t-closed failures, seminormal failures too
        if e.u_closed_witness().is_some() || e.seminormal_witness().is_some() {
            assert!(e.t_closed_witness().is_some());
        }
    }
}

fn mobius(n: usize) -> i64 {
    let ps = prime_factors(n);
    if ps.iter().any(|p| n.is_multiple_of(p * p)) {
        0
    } else if ps.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[test]
fn irreducible_counts_follow_the_necklace_formula() {
    let f2 = FiniteRing::zmod(2).unwrap();
    let f3 = FiniteRing::zmod(3).unwrap();
    let f4 = FiniteRing::poly_quot(&f2, &[1, 1, 1], "a").unwrap();
    for (k, q, top) in [(&f2, 2i64, 7), (&f3, 3, 4), (&f4, 4, 3)] {
        for n in 1..=top {
            let expected: i64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| mobius(d) * q.pow((n / d) as u32))
                .sum::<i64>()
                / n as i64;
            let count = monic_polys(k, n).iter().filter(|f| is_irreducible(k, f).unwrap()).count();
            assert_eq!(count as i64, expected, "q = {q}, n = {n}");
        }
    }
}

#[test]
fn factorizations_multiply_back() {
    let f3 = FiniteRing::zmod(3).unwrap();
    for f in monic_polys(&f3, 4) {
        let parts = factor(&f3, &f).unwrap();
        let prod = parts.iter().fold(BoundedPoly::constant(1), |acc, g| acc.mul(&f3, g));
        assert_eq!(prod, f);
        assert!(parts.iter().all(|g| is_irreducible(&f3, g).unwrap()));
    }
}

#[test]
fn primitive_roots_by_order() {
    for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = 2 % p;
        let mut order = 1;
        while x != 1 {
            x = x * 2 % p;
            order += 1;
        }
        assert_eq!(is_primitive_root(2, p).unwrap(), order == p - 1, "p = {p}");
    }
}

#[test]
fn units_of_the_split_and_group_algebras() {
    let f2 = FiniteRing::zmod(2).unwrap();
    let s = FiniteRing::poly_quot(&f2, &[0, 1, 0, 0, 1], "t").unwrap();
    let r = FiniteRing::poly_quot(&f2, &[1, 0, 0, 1], "y").unwrap();
    let show = |ring: &Ring| ring.units().members().iter().map(|&u| ring.format(u)).collect::<Vec<_>>();
    assert_eq!(show(&s), ["1", "t^3 + t + 1", "t^3 + t^2 + 1"]);
    assert_eq!(show(&r), ["1", "y", "y^2"]);
}
