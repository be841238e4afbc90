use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ringlab::dsl::{
    eval_list, eval_str, parse, parse_elem, parse_elems, parse_ring, random_elem, random_expr,
    DslError, RingExpr,
};

#[test]
fn random_expressions_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..1000 {
        let e = random_expr(&mut rng, 3);
        let shown = e.to_string();
        let back = parse(&shown).unwrap_or_else(|err| panic!("#{i} {shown}: {err}"));
        assert_eq!(back, e, "#{i} {shown}");
        assert_eq!(back.to_string(), shown);
    }
}

#[test]
fn random_elements_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..1000 {
        let e = random_elem(&mut rng, 4, &["x", "y"]);
        let shown = e.to_string();
        assert_eq!(parse_elem(&shown).unwrap(), e, "{shown}");
    }
}

#[test]
fn whitespace_is_ignored() {
    let a = parse("Z/2[x]/(x^4+x)*GF(4)").unwrap();
    let b = parse("  Z/2 [ x ] / ( x ^ 4 + x )\n *\tGF( 4 ) ").unwrap();
    assert_eq!(a, b);
    assert_eq!(parse("Z/4(+)ideal(2)").unwrap(), parse("Z/4 ( + ) ideal( 2 )").unwrap());
}

#[test]
fn products_are_left_associative() {
    match parse("Z/2 * Z/3 * Z/5").unwrap() {
        RingExpr::Product(v) => assert_eq!(v.len(), 3),
        other => panic!("{other:?}"),
    }
    match parse("(Z/2 * Z/3) * Z/5").unwrap() {
        RingExpr::Product(v) => {
            assert_eq!(v.len(), 2);
            assert!(matches!(v[0], RingExpr::Product(_)));
        }
        other => panic!("{other:?}"),
    }
    match parse("Z/4 (+) ideal(2) * Z/2").unwrap() {
        RingExpr::Product(v) => assert!(matches!(v[0], RingExpr::Idealization { .. })),
        other => panic!("{other:?}"),
    }
}

#[test]
fn sizes_of_built_rings() {
    let cases = [
        ("Z/2[x]/(x^4+x)", 16),
        ("Z/2 * GF(4)", 8),
        ("Z/4 (+) ideal(2)", 8),
        ("GF(9)", 9),
        ("GF(8) * Z/3", 24),
        ("(Z/2 * Z/2)[x]/(x^2)", 16),
        ("Z/4[x]/(x^2 + 2)", 16),
    ];
    for (src, n) in cases {
        assert_eq!(parse_ring(src, 1 << 16).unwrap().size(), n, "{src}");
    }
}

#[test]
fn gf_needs_a_prime_power() {
    assert!(parse_ring("GF(6)", 1 << 16).is_err());
    assert!(parse_ring("GF(1)", 1 << 16).is_err());
    assert!(parse_ring("GF(49)", 1 << 16).unwrap().is_field());
}

#[test]
fn size_cap_is_enforced() {
    assert!(parse_ring("Z/2 * Z/2 * Z/2", 4).is_err());
}

#[test]
fn syntax_errors_carry_positions() {
    for (src, line, column) in [("Z/", 1, 3), ("Z/2 *", 1, 6), ("Z/2[x]/(x^2\n", 2, 1), ("Q/2", 1, 1)] {
        match parse(src) {
            Err(DslError::Syntax { line: l, column: c, .. }) => {
                assert_eq!((l, c), (line, column), "{src:?}")
            }
            other => panic!("{src:?}: {other:?}"),
        }
    }
}

#[test]
fn element_evaluation() {
    let s = parse_ring("Z/2[x]/(x^4 + x)", 1 << 16).unwrap();
    let x = eval_str(&s, "x").unwrap();
    assert_eq!(eval_str(&s, "x^4").unwrap(), x);
    assert_eq!(eval_str(&s, "x(x + 1)").unwrap(), eval_str(&s, "x^2 + x").unwrap());
    assert_eq!(eval_str(&s, "-x").unwrap(), x);
    let p = parse_ring("Z/4 * Z/3", 1 << 16).unwrap();
    let v = eval_list(&p, "(1, 2), 5").unwrap();
    assert_eq!(p.format(v[0]), "(1, 2)");
    assert_eq!(p.format(v[1]), "(1, 2)");
    assert!(eval_str(&p, "(1, 2, 3)").is_err());
    assert!(eval_str(&s, "y").is_err());
    assert!(parse_elems("").unwrap().is_empty());
}

#[test]
fn formatted_elements_evaluate_back() {
    for src in ["Z/2[x]/(x^4 + x)", "Z/4 * GF(4)", "Z/4 (+) ideal(2)", "(Z/2 * Z/2)[x]/(x^2)", "GF(9)"] {
        let r = parse_ring(src, 1 << 16).unwrap();
        for x in r.elements() {
            assert_eq!(eval_str(&r, &r.format(x)).unwrap(), x, "{src}: {}", r.format(x));
        }
    }
}
