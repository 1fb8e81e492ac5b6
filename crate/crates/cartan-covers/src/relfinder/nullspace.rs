//! Exact nullspace of a rational matrix by fraction-free (Bareiss)
//! elimination, plus a modular nullspace with CRT lifting for large
//! integer matrices.

use crate::exactnum::Rational;
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// Integer basis of the right nullspace `{c : M c = 0}`. Each vector is
/// primitive (content 1) with its first nonzero entry positive; the basis
/// is sorted by (squared Euclidean norm, lexicographic order).
pub fn rational_nullspace(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return vec![];
    }
    let k = rows[0].len();
    // scale each row to integers (row scaling preserves the nullspace)
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for c in row {
                lcm = lcm.lcm(c.denom());
            }
            row.iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect()
        })
        .collect();
    let (echelon, pivots) = bareiss_echelon(int_rows);
    let pivot_cols: Vec<usize> = pivots.clone();
    let free_cols: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();
    let mut out = vec![];
    for &fc in &free_cols {
        let mut sol = vec![Rational::zero(); k];
        sol[fc] = Rational::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Rational::zero();
            for j in pc + 1..k {
                if !echelon[r][j].is_zero() && !sol[j].is_zero() {
                    acc += Rational::from_integer(echelon[r][j].clone()) * &sol[j];
                }
            }
            sol[pc] = -acc / Rational::from_integer(echelon[r][pc].clone());
        }
        out.push(primitive_integer(&sol));
    }
    sort_vectors(&mut out);
    out
}

/// Row rank of a rational matrix.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let int_rows: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for c in row {
                lcm = lcm.lcm(c.denom());
            }
            row.iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect()
        })
        .collect();
    bareiss_echelon(int_rows).1.len()
}

/// Fraction-free forward elimination. Returns the echelon matrix and the
/// pivot column of each nonzero row.
fn bareiss_echelon(mut m: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = m.len();
    let ncols = m[0].len();
    let mut pivots = vec![];
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for col in 0..ncols {
        let pivot = (r..nrows).find(|&i| !m[i][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, pivot);
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let num = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        pivots.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    (m, pivots)
}

pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for c in v {
        lcm = lcm.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in ints.iter_mut() {
            *c /= &g;
        }
    }
    if let Some(first) = ints.iter().find(|c| !c.is_zero()) {
        if first.is_negative() {
            for c in ints.iter_mut() {
                *c = -&*c;
            }
        }
    }
    ints
}

pub fn sort_vectors(vs: &mut [Vec<BigInt>]) {
    vs.sort_by(|a, b| {
        let na: BigInt = a.iter().map(|x| x * x).sum();
        let nb: BigInt = b.iter().map(|x| x * x).sum();
        na.cmp(&nb).then_with(|| b.cmp(a))
    });
}

// ---- modular path ----

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Reduced-row-echelon nullspace basis of an integer matrix mod p. Vectors
/// are normalized with one free coordinate set to 1 each, so they are
/// deterministic across primes and safe to combine by CRT.
pub fn nullspace_mod_p(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let nrows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut r = 0usize;
    for col in 0..ncols {
        let pivot = (r..nrows).find(|&i| m[i][col] % p != 0);
        let pivot = match pivot {
            Some(x) => x,
            None => continue,
        };
        m.swap(r, pivot);
        let inv = powmod(m[r][col], p - 2, p);
        for j in col..ncols {
            m[r][j] = mulmod(m[r][j], inv, p);
        }
        for i in 0..nrows {
            if i != r && m[i][col] != 0 {
                let f = m[i][col];
                for j in col..ncols {
                    let sub = mulmod(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - sub) % p;
                }
            }
        }
        pivot_of_col[col] = Some(r);
        r += 1;
        if r == nrows {
            break;
        }
    }
    let mut out = vec![];
    for fc in 0..ncols {
        if pivot_of_col[fc].is_some() {
            continue;
        }
        let mut v = vec![0u64; ncols];
        v[fc] = 1;
        for (col, piv) in pivot_of_col.iter().enumerate() {
            if let Some(rr) = piv {
                v[col] = (p - m[*rr][fc]) % p;
            }
        }
        out.push(v);
    }
    out
}

/// Balanced CRT lift of residue vectors; entries land in (-M/2, M/2].
pub fn crt_balanced(vectors: &[(u64, Vec<u64>)]) -> Vec<BigInt> {
    assert!(!vectors.is_empty());
    let n = vectors[0].1.len();
    let mut modulus = BigInt::one();
    let mut res: Vec<BigInt> = vec![BigInt::zero(); n];
    for (p, v) in vectors {
        let bp = BigInt::from(*p);
        if modulus.is_one() {
            res = v.iter().map(|&x| BigInt::from(x)).collect();
            modulus = bp;
            continue;
        }
        let minv = mod_inverse(&modulus, &bp);
        for (r, &x) in res.iter_mut().zip(v.iter()) {
            let cur = r.mod_floor(&bp);
            let diff = (BigInt::from(x) - cur).mod_floor(&bp);
            *r += &modulus * ((diff * &minv).mod_floor(&bp));
        }
        modulus *= &bp;
    }
    let half = &modulus / 2;
    for r in res.iter_mut() {
        if &*r > &half {
            *r -= &modulus;
        }
    }
    res
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    // p prime
    let a = a.mod_floor(p);
    let mut acc = BigInt::one();
    let mut base = a;
    let mut e: BigInt = p - 2;
    while e.is_positive() {
        if e.is_odd() {
            acc = (&acc * &base).mod_floor(p);
        }
        base = (&base * &base).mod_floor(p);
        e /= 2;
    }
    acc
}

/// Rational reconstruction of `r mod m`: the unique p/q with
/// |p|, q <= sqrt(m/2) and p = q r (mod m), when it exists.
pub fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = r.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    // verify p = q r mod m with p = r1, q = t1
    let check = (&t1 * r - &r1).mod_floor(m);
    if !check.is_zero() {
        return None;
    }
    if t1.is_negative() {
        Some(Rational::new(-r1, -t1))
    } else {
        Some(Rational::new(r1, t1))
    }
}

/// First `count` primes below 2^62, largest first.
pub fn modular_primes(count: usize) -> Vec<u64> {
    let mut out = vec![];
    let mut n = (1u64 << 62) - 1;
    while out.len() < count {
        if crate::exactnum::is_prime_u64(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}
