use super::*;
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn prime_field_construction() {
    assert!(make_prime_field(13).is_ok());
    assert!(matches!(make_prime_field(4), Err(Error::CompositeModulus(4))));
    assert!(make_prime_field(7919).is_ok());
    assert!(make_prime_field(1).is_err());
}

#[test]
fn ext_field_moduli_are_canonical() {
    let f3 = make_ext_field(3, 1).unwrap();
    assert!(f3.modulus().is_none());

    // x^2 + 1 over F_3
    let f9 = make_ext_field(3, 2).unwrap();
    assert_eq!(f9.modulus().unwrap(), &[1, 0, 1]);

    // x^3 + x + 1 over F_2
    let f8 = make_ext_field(2, 3).unwrap();
    assert_eq!(f8.modulus().unwrap(), &[1, 1, 0, 1]);

    assert!(matches!(make_ext_field(6, 2), Err(Error::CompositeModulus(6))));
}

#[test]
fn ext_field_modulus_oracle() {
    // independent oracle: enumerate monic quadratics over F_5 in integer-value
    // order and take the first with no roots
    let p = 5u64;
    let mut expected = None;
    'outer: for n in 0..p * p {
        let c0 = n % p;
        let c1 = n / p;
        for x in 0..p {
            if (x * x + c1 * x + c0) % p == 0 {
                continue 'outer;
            }
        }
        expected = Some(vec![c0, c1, 1]);
        break;
    }
    let f25 = make_ext_field(5, 2).unwrap();
    assert_eq!(f25.modulus().unwrap(), expected.unwrap().as_slice());
}

#[test]
fn reduce_rational_examples() {
    let f13 = Arc::new(make_prime_field(13).unwrap());
    // 2^-1 = 7 mod 13, 3*7 = 21 = 8
    let r = reduce_rational(&rat(3, 2), &f13).unwrap();
    assert_eq!(r.residue(), Some(8));

    let z = reduce_rational(&Rational::zero(), &f13).unwrap();
    assert!(z.is_zero());

    let f3 = Arc::new(make_prime_field(3).unwrap());
    assert!(matches!(
        reduce_rational(&rat(1, 3), &f3),
        Err(Error::BadReduction(_))
    ));
}

#[test]
fn reduce_is_ring_homomorphism() {
    let f7 = Arc::new(make_prime_field(7).unwrap());
    let samples = [rat(3, 2), rat(-5, 4), rat(22, 9), rat_int(6), rat(1, 13)];
    for r in &samples {
        for s in &samples {
            let lhs = reduce_rational(&(r + s), &f7).unwrap();
            let rhs = reduce_rational(r, &f7)
                .unwrap()
                .add_elem(&reduce_rational(s, &f7).unwrap());
            assert_eq!(lhs, rhs);
            let lhs = reduce_rational(&(r * s), &f7).unwrap();
            let rhs = reduce_rational(r, &f7)
                .unwrap()
                .mul_elem(&reduce_rational(s, &f7).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn quadratic_character_examples() {
    let f13 = Arc::new(make_prime_field(13).unwrap());
    assert_eq!(quadratic_character(&FqElem::from_int(f13.clone(), 4)).unwrap(), 1);
    let f7 = Arc::new(make_prime_field(7).unwrap());
    assert_eq!(quadratic_character(&FqElem::from_int(f7, 0)).unwrap(), 0);
    let f5 = Arc::new(make_prime_field(5).unwrap());
    assert_eq!(quadratic_character(&FqElem::from_int(f5, 2)).unwrap(), -1);

    let f2 = Arc::new(make_prime_field(2).unwrap());
    assert!(quadratic_character(&FqElem::from_int(f2, 1)).is_err());
    let f9 = Arc::new(make_ext_field(3, 2).unwrap());
    assert!(quadratic_character(&FqElem::one(f9)).is_err());
}

#[test]
fn quadratic_character_multiplicative_exhaustive() {
    for l in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97] {
        let ctx = Arc::new(make_prime_field(l).unwrap());
        let chi: Vec<i32> = (0..l)
            .map(|a| quadratic_character(&FqElem::from_residue(ctx.clone(), a)).unwrap())
            .collect();
        for a in 1..l {
            for b in 1..l {
                let ab = (a * b) % l;
                assert_eq!(chi[ab as usize], chi[a as usize] * chi[b as usize]);
            }
        }
        // Euler criterion ties chi to actual squares
        let squares: std::collections::HashSet<u64> = (1..l).map(|a| a * a % l).collect();
        for a in 1..l {
            assert_eq!(chi[a as usize] == 1, squares.contains(&a));
        }
    }
}

#[test]
fn frobenius_fixes_field() {
    for (p, k) in [(3u64, 2usize), (2, 3), (5, 2), (7, 3), (3, 3)] {
        let ctx = Arc::new(make_ext_field(p, k).unwrap());
        let q = ctx.order();
        for code in 0..ctx.order() as u64 {
            let a = FqElem::from_code(ctx.clone(), code);
            assert_eq!(a.pow_elem(q), a, "a^q != a for code {} in {}", code, ctx);
        }
    }
}

#[test]
fn squarefree_kernel_values() {
    assert_eq!(squarefree_kernel(&rat_int(-3)).unwrap(), Integer::from(-3));
    assert_eq!(squarefree_kernel(&rat(-27, 16)).unwrap(), Integer::from(-3));
    assert_eq!(squarefree_kernel(&rat_int(-112)).unwrap(), Integer::from(-7));
    assert_eq!(squarefree_kernel(&rat_int(48)).unwrap(), Integer::from(3));
    assert_eq!(squarefree_kernel(&rat(9, 4)).unwrap(), Integer::from(1));
    assert!(squarefree_kernel(&Rational::zero()).is_err());
}

#[test]
fn code_roundtrip_and_tables() {
    let ctx = Arc::new(make_ext_field(3, 2).unwrap());
    for code in 0..9u64 {
        let e = FqElem::from_code(ctx.clone(), code);
        assert_eq!(e.code(), code);
    }
    // table ops agree with element ops
    for a in 0..9u64 {
        for b in 0..9u64 {
            let ea = FqElem::from_code(ctx.clone(), a);
            let eb = FqElem::from_code(ctx.clone(), b);
            assert_eq!(ctx.code_mul(a, b), ea.mul_elem(&eb).code());
            assert_eq!(ctx.code_add(a, b), ea.add_elem(&eb).code());
        }
        if a != 0 {
            let ea = FqElem::from_code(ctx.clone(), a);
            assert_eq!(ctx.code_inv(a), ea.inv_elem().unwrap().code());
        }
    }
}

#[test]
fn sqrt_canonical_choices() {
    let f13 = Arc::new(make_prime_field(13).unwrap());
    let four = FqElem::from_int(f13.clone(), 4);
    // canonical root is the smaller representative: min(2, 11) = 2
    assert_eq!(four.sqrt_elem().unwrap(), FqElem::from_int(f13.clone(), 2));
    let two = FqElem::from_int(f13, 2);
    assert!(two.sqrt_elem().is_none()); // 2 is a non-residue mod 13

    assert_eq!(rat(9, 4).sqrt_canonical().unwrap(), rat(3, 2));
    assert!(rat(2, 1).sqrt_canonical().is_none());
    assert!(rat(-4, 1).sqrt_canonical().is_none());
}

proptest! {
    #[test]
    fn field_axioms_random(p_idx in 0usize..4, a in 0u64..2000, b in 0u64..2000, c in 0u64..2000) {
        let (p, k) = [(101u64, 1usize), (13, 2), (5, 3), (2, 5)][p_idx];
        let ctx = Arc::new(make_ext_field(p, k).unwrap());
        let q = ctx.order() as u64;
        let ea = FqElem::from_code(ctx.clone(), a % q);
        let eb = FqElem::from_code(ctx.clone(), b % q);
        let ec = FqElem::from_code(ctx.clone(), c % q);
        // associativity and commutativity
        prop_assert_eq!(ea.mul_elem(&eb).mul_elem(&ec), ea.mul_elem(&eb.mul_elem(&ec)));
        prop_assert_eq!(ea.add_elem(&eb), eb.add_elem(&ea));
        // distributivity
        prop_assert_eq!(
            ea.mul_elem(&eb.add_elem(&ec)),
            ea.mul_elem(&eb).add_elem(&ea.mul_elem(&ec))
        );
        // inverses
        if !ea.is_zero() {
            let inv = ea.inv_elem().unwrap();
            prop_assert_eq!(ea.mul_elem(&inv), FqElem::one(ctx.clone()));
        }
        prop_assert!(ea.add_elem(&ea.neg_elem()).is_zero());
    }
}
