use ringlab_core::cohn::{bounded_units, verify_conductor, verify_unit_rigidity};
use ringlab_core::{jacobson, maximal_ideals, FiniteRing, Ideal, ShiftedRing};

#[test]
fn cohn_ring_over_z4() {
    let z4 = FiniteRing::zmod(4).unwrap();
    let sr = ShiftedRing::cohn(&z4).unwrap();
    let units = bounded_units(&sr, 2, 1 << 24).unwrap();
    let heads: Vec<usize> = units.iter().map(|u| u.head).collect();
    assert_eq!(heads, [1, 3]);
    assert!(units.iter().all(|u| !u.has_tail()));
    let c = verify_conductor(&sr, 4);
    assert!(c.matches);
    assert_eq!(c.trace.len(), jacobson(&z4).len());
}

#[test]
fn shifted_rings_over_maximal_ideals() {
    let z6 = FiniteRing::zmod(6).unwrap();
    for m in maximal_ideals(&z6) {
        let sr = ShiftedRing::shifted(&z6, &m).unwrap();
        let rep = verify_unit_rigidity(&sr, 2, 1 << 24).unwrap();
        assert!(rep.units_match && rep.violations.is_empty());
        assert_eq!(rep.units, ["1", "5"]);
    }
}

#[test]
fn shifted_ring_needs_a_proper_semiprime_ideal() {
    let z8 = FiniteRing::zmod(8).unwrap();
    assert!(ShiftedRing::shifted(&z8, &Ideal::generated(&z8, &[4])).is_err());
    assert!(ShiftedRing::shifted(&z8, &Ideal::whole(&z8)).is_err());
    assert!(ShiftedRing::shifted(&z8, &Ideal::generated(&z8, &[2])).is_ok());
}

#[test]
fn shifted_arithmetic_projects_to_the_base() {
    let r = FiniteRing::product(&[FiniteRing::zmod(2).unwrap(), FiniteRing::zmod(3).unwrap()]).unwrap();
    let sr = ShiftedRing::cohn(&r).unwrap();
    let els = sr.elements(1);
    for a in &els {
        for b in &els {
            let p = sr.mul(a, b);
            assert_eq!(p.head, r.mul(a.head, b.head));
            assert_eq!(sr.sub(&sr.add(a, b), b), *a);
        }
    }
}
