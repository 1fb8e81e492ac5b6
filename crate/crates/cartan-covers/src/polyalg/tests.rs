use super::text::{parse_mpoly, parse_upoly};
use super::*;
use crate::exactnum::{make_ext_field, make_prime_field, rat, rat_int};
use num_traits::One;
use proptest::prelude::*;

fn mp(s: &str, vars: &[&str]) -> MPoly<Rational> {
    parse_mpoly(s, vars).unwrap()
}

fn up(s: &str) -> UPoly<Rational> {
    parse_upoly(s, "x").unwrap()
}

#[test]
fn eval_basic() {
    let f = mp("x^2 + 2*x*y - 3", &["x", "y"]);
    assert_eq!(f.eval(&[rat_int(2), rat_int(5)]).unwrap(), rat_int(21));
    assert!(matches!(
        f.eval(&[rat_int(1)]),
        Err(crate::Error::ArityMismatch { .. })
    ));
}

#[test]
fn text_parse_examples() {
    let f = mp("-3*x1^2*x8 + 1/2*x2", &["x1", "x2", "x8"]);
    assert_eq!(f.num_terms(), 2);
    assert_eq!(format!("{}", f), "-3*x1^2*x8 + 1/2*x2");
    assert_eq!(format!("{}", mp("0", &["x"])), "0");
    assert!(parse_mpoly("x + z", &["x", "y"]).is_err());
}

#[test]
fn resultant_examples() {
    // Res_x(x - y, x + y) = 2y
    let f = mp("x - y", &["x", "y"]);
    let g = mp("x + y", &["x", "y"]);
    assert_eq!(resultant_wrt(&f, &g, "x").unwrap(), mp("2*y", &["y"]));

    // Res_x(x^2 - y, x - 1) = 1 - y with f-rows-first convention
    let f = mp("x^2 - y", &["x", "y"]);
    let g = mp("x - 1", &["x", "y"]);
    assert_eq!(resultant_wrt(&f, &g, "x").unwrap(), mp("1 - y", &["y"]));

    // common factor forces zero
    let f = mp("x^2 + y*x + 1", &["x", "y"]);
    assert!(resultant_wrt(&f, &f, "x").unwrap().is_zero());

    // constant in x is degenerate
    let c = mp("y + 1", &["x", "y"]);
    assert!(matches!(
        resultant_wrt(&f, &c, "x"),
        Err(crate::Error::DegenerateInput(_))
    ));
}

#[test]
fn resultant_detects_common_roots() {
    // planted common factor: Res must vanish
    let common = mp("x + 2*y", &["x", "y"]);
    let f = mp("x + 1", &["x", "y"]).mul_poly(&common);
    let g = mp("x - y", &["x", "y"]).mul_poly(&common);
    assert!(resultant_wrt(&f, &g, "x").unwrap().is_zero());
    // no common factor: Res is nonzero
    let f = mp("x + 1", &["x", "y"]).mul_poly(&mp("x + 2*y", &["x", "y"]));
    let g = mp("x - y", &["x", "y"]).mul_poly(&mp("x + 3*y", &["x", "y"]));
    assert!(!resultant_wrt(&f, &g, "x").unwrap().is_zero());
}

#[test]
fn squarefree_examples() {
    // (x-1)^2 (x+2) -> (x-1)(x+2)
    let f = up("x^2 - 2*x + 1").mul_upoly(&up("x + 2"));
    assert_eq!(squarefree_part(&f).unwrap(), up("x^2 + x - 2"));

    // squarefree input: monic-normalized itself
    let f = up("2*x^2 + 2");
    assert_eq!(squarefree_part(&f).unwrap(), up("x^2 + 1"));

    // sign of the leading coefficient is carried
    let f = up("-2*x^2 - 2");
    assert_eq!(squarefree_part(&f).unwrap(), up("-x^2 - 1"));

    // x^6 over F_5 -> x
    let f5 = std::sync::Arc::new(make_prime_field(5).unwrap());
    let x6 = up("x^6").reduce_mod(&f5).unwrap();
    let sf = squarefree_part(&x6).unwrap();
    assert_eq!(sf.degree(), Some(1));
    assert!(sf.coeff(0).unwrap().is_zero());

    assert!(matches!(
        squarefree_part(&UPoly::<Rational>::zero("x")),
        Err(crate::Error::ZeroPolynomial)
    ));
}

#[test]
fn odd_multiplicity_examples() {
    // (x-1)^2 (x+2)^3 -> (x+2)
    let f = up("x - 1").pow(2, Rational::one()).mul_upoly(&up("x + 2").pow(3, Rational::one()));
    assert_eq!(odd_multiplicity_part(&f).unwrap(), up("x + 2"));

    // squarefree f -> itself
    let f = up("x^2 + x - 2");
    assert_eq!(odd_multiplicity_part(&f).unwrap(), f);

    // (x^2+1)^4 -> 1
    let f = up("x^2 + 1").pow(4, Rational::one());
    assert_eq!(odd_multiplicity_part(&f).unwrap(), up("1"));
}

#[test]
fn squarefree_planted_multiplicities() {
    // deterministic factor planting across a small design
    let factors = [up("x + 1"), up("x - 2"), up("x^2 + 3")];
    for mults in [[1usize, 2, 3], [2, 2, 4], [5, 1, 2], [3, 3, 1]] {
        let mut f = up("1");
        for (g, &m) in factors.iter().zip(&mults) {
            f = f.mul_upoly(&g.pow(m as u32, Rational::one()));
        }
        let decomp = squarefree_decomposition(&f).unwrap();
        // reconstruct exactly
        let mut rebuilt = up("1");
        for (g, m) in &decomp {
            rebuilt = rebuilt.mul_upoly(&g.pow(*m as u32, Rational::one()));
        }
        assert_eq!(rebuilt, f.monic());
        // odd part * perfect square == f up to a constant
        let odd = odd_multiplicity_part(&f).unwrap();
        let rest = f.exact_div_upoly(&odd).expect("odd part divides");
        let sq = squarefree_decomposition(&rest).unwrap();
        assert!(sq.iter().all(|(_, m)| m % 2 == 0), "residual must be a square");
    }
}

#[test]
fn squarefree_char_p_powers() {
    let f5 = std::sync::Arc::new(make_prime_field(5).unwrap());
    // (x+1)^5 (x+2)^2 over F_5: derivative loses the first factor
    let f = up("x + 1")
        .pow(5, Rational::one())
        .mul_upoly(&up("x + 2").pow(2, Rational::one()))
        .reduce_mod(&f5)
        .unwrap();
    let decomp = squarefree_decomposition(&f).unwrap();
    let mults: Vec<usize> = decomp.iter().map(|(_, m)| *m).collect();
    assert_eq!(mults, vec![2, 5]);
}

#[test]
fn roots_examples() {
    let f13 = std::sync::Arc::new(make_prime_field(13).unwrap());
    let roots = roots_in_field(&up("x^2 + 1"), &f13).unwrap();
    let vals: Vec<u64> = roots.iter().map(|(r, _)| r.code()).collect();
    assert_eq!(vals, vec![5, 8]);

    let f7 = std::sync::Arc::new(make_prime_field(7).unwrap());
    assert!(roots_in_field(&up("x^2 + 1"), &f7).unwrap().is_empty());

    // multiplicities
    let roots = roots_in_field(&up("x^3 - 2*x^2 + x"), &f13).unwrap();
    assert_eq!(
        roots.iter().map(|(r, m)| (r.code(), *m)).collect::<Vec<_>>(),
        vec![(0, 1), (1, 2)]
    );
}

#[test]
fn roots_exhaustive_crosscheck() {
    // every reported root satisfies f and nothing else does, for several fields
    let f = up("43*x^6 - 194*x^5 - 115*x^4 + 692*x^3 + 85*x^2 - 498*x + 243");
    for (p, k) in [(3u64, 1usize), (43, 1), (79, 1), (3, 2)] {
        let ctx = std::sync::Arc::new(make_ext_field(p, k).unwrap());
        let red = f.reduce_mod(&ctx).unwrap();
        let roots = roots_in_field(&f, &ctx).unwrap();
        let root_codes: std::collections::HashSet<u64> =
            roots.iter().map(|(r, _)| r.code()).collect();
        for code in 0..ctx.order() as u64 {
            let x = crate::exactnum::FqElem::from_code(ctx.clone(), code);
            assert_eq!(red.eval(&x).is_zero(), root_codes.contains(&code));
        }
    }
}

#[test]
fn roots_large_field_gcd_path() {
    // prime above the scan threshold exercises the splitting path
    let p = 1_000_003u64;
    let ctx = std::sync::Arc::new(make_prime_field(p).unwrap());
    // (x - 3)(x - 17)(x^2 + 1)... pick a poly with known roots
    let f = up("x - 3")
        .mul_upoly(&up("x - 17"))
        .mul_upoly(&up("x - 123456"))
        .mul_upoly(&up("x^2 - 2"));
    let roots = roots_in_field(&f, &ctx).unwrap();
    let codes: Vec<u64> = roots.iter().map(|(r, _)| r.code()).collect();
    assert!(codes.contains(&3));
    assert!(codes.contains(&17));
    assert!(codes.contains(&123456));
    // x^2 - 2 contributes its mod-p square roots iff 2 is a QR
    let f_chk = f.reduce_mod(&ctx).unwrap();
    for (r, m) in &roots {
        assert!(f_chk.eval(r).is_zero());
        assert_eq!(*m, 1);
    }
}

#[test]
fn homogenize_roundtrip() {
    let f = mp("x + 1", &["x"]);
    let h = f.homogenize("Z", 2).unwrap();
    assert_eq!(h, mp("x*Z + Z^2", &["x", "Z"]));
    let back = h.dehomogenize(1);
    assert_eq!(back, f);

    assert!(matches!(
        mp("x^3", &["x"]).homogenize("Z", 2),
        Err(crate::Error::DegreeTooSmall { .. })
    ));
}

#[test]
fn jacobian_rank_examples() {
    let f7 = std::sync::Arc::new(make_prime_field(7).unwrap());
    // smooth conic at (1, 0, 1): gradient (2, 0, -2), rank 1
    let conic = mp("X^2 + Y^2 - Z^2", &["X", "Y", "Z"]);
    let pt = [
        crate::exactnum::FqElem::from_int(f7.clone(), 1),
        crate::exactnum::FqElem::from_int(f7.clone(), 0),
        crate::exactnum::FqElem::from_int(f7.clone(), 1),
    ];
    assert_eq!(jacobian_rank(&[conic.clone()], &pt, &f7).unwrap(), 1);

    // {X, Y} at the origin of A^2 has rank 2
    let sys = [mp("X", &["X", "Y"]), mp("Y", &["X", "Y"])];
    let origin = [
        crate::exactnum::FqElem::zero(f7.clone()),
        crate::exactnum::FqElem::zero(f7.clone()),
    ];
    assert_eq!(jacobian_rank(&sys, &origin, &f7).unwrap(), 2);

    // off-variety point is rejected
    let pt_bad = [
        crate::exactnum::FqElem::from_int(f7.clone(), 1),
        crate::exactnum::FqElem::from_int(f7.clone(), 1),
        crate::exactnum::FqElem::from_int(f7.clone(), 1),
    ];
    assert!(matches!(
        jacobian_rank(&[conic], &pt_bad, &f7),
        Err(crate::Error::PointNotOnVariety)
    ));
}

#[test]
fn eval_commutes_with_reduction() {
    let f11 = std::sync::Arc::new(make_prime_field(11).unwrap());
    let f = mp("2/3*x^2*y - 5*x + 7/2*y^3 - 1", &["x", "y"]);
    for (a, b) in [(0i64, 0i64), (3, 7), (10, 4), (6, 6)] {
        let exact = f.eval(&[rat_int(a), rat_int(b)]).unwrap();
        let lhs = crate::exactnum::reduce_rational(&exact, &f11).unwrap();
        let red = f.reduce_mod(&f11).unwrap();
        let rhs = red
            .eval(&[
                crate::exactnum::FqElem::from_int(f11.clone(), a),
                crate::exactnum::FqElem::from_int(f11.clone(), b),
            ])
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn exact_division() {
    let f = mp("x^2 - y^2", &["x", "y"]);
    let d = mp("x - y", &["x", "y"]);
    assert_eq!(f.exact_div(&d).unwrap(), mp("x + y", &["x", "y"]));
    assert!(mp("x^2 + 1", &["x", "y"]).exact_div(&d).is_none());
}

fn arb_rat() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..6).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mpoly_text_roundtrip(coeffs in proptest::collection::vec((arb_rat(), 0u32..4, 0u32..4), 1..8)) {
        let mut f = MPoly::zero(&["x1", "x2"]);
        for (c, e1, e2) in coeffs {
            f.add_term(vec![e1, e2], c);
        }
        let s = format!("{}", f);
        let parsed = parse_mpoly(&s, &["x1", "x2"]).unwrap();
        prop_assert_eq!(parsed, f);
    }

    #[test]
    fn homogenize_dehomogenize_identity(coeffs in proptest::collection::vec((arb_rat(), 0u32..3, 0u32..3), 1..6)) {
        let mut f = MPoly::zero(&["x", "y"]);
        for (c, e1, e2) in coeffs {
            f.add_term(vec![e1, e2], c);
        }
        let d = f.total_degree().unwrap_or(0) + 2;
        let h = f.homogenize("Z", d).unwrap();
        prop_assert_eq!(h.homogeneous_degree().is_some() || h.is_zero(), true);
        prop_assert_eq!(h.dehomogenize(2), f);
    }
}
