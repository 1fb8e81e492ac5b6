//! Exact arithmetic foundations: arbitrary-precision rationals, prime
//! fields, extension fields in polynomial basis, reduction maps and
//! quadratic characters.

mod field;
mod primality;

pub use field::{FieldCtx, FqElem};
pub use primality::is_prime_u64;

use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Arbitrary-precision exact rational. `num_rational` keeps the value fully
/// reduced with a positive denominator, so structural equality is canonical
/// equality and zero is always 0/1.
pub type Rational = num_rational::BigRational;
pub type Integer = BigInt;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Build the prime field `F_l`.
pub fn make_prime_field(l: u64) -> Result<FieldCtx> {
    FieldCtx::prime_field(l)
}

/// Build `F_{l^k}` with the canonical modulus: the monic irreducible
/// degree-k polynomial whose coefficient vector `(c_0, ..., c_{k-1})`
/// minimizes `sum c_i l^i`. This is reproducible without external tables
/// and agrees with the usual small-field conventions (x^2+1 over F_3,
/// x^3+x+1 over F_2).
pub fn make_ext_field(l: u64, k: usize) -> Result<FieldCtx> {
    FieldCtx::ext_field(l, k)
}

/// Image of a rational under `Z_(l) -> F_{l^k}`.
pub fn reduce_rational(r: &Rational, ctx: &Arc<FieldCtx>) -> Result<FqElem> {
    let p = BigInt::from(ctx.characteristic());
    let den = r.denom().mod_floor_u64(&p);
    if den == 0 {
        return Err(Error::BadReduction(format!(
            "{} divides the denominator of {}",
            ctx.characteristic(),
            r
        )));
    }
    let num = r.numer().mod_floor_u64(&p);
    let den_inv = ctx.inv_residue(den);
    Ok(FqElem::from_residue(ctx.clone(), ctx.mul_residue(num, den_inv)))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        use num_integer::Integer as _;
        let m = self.mod_floor(p);
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue exceeds u64"),
        }
    }
}

/// Legendre symbol of `a` in a prime field, as an integer in {-1, 0, 1}.
/// Computed by Euler's criterion `a^((l-1)/2)`.
pub fn quadratic_character(a: &FqElem) -> Result<i32> {
    let ctx = a.ctx();
    if ctx.degree() != 1 {
        return Err(Error::UnsupportedField(
            "quadratic character needs a prime field".into(),
        ));
    }
    let l = ctx.characteristic();
    if l == 2 {
        return Err(Error::UnsupportedField(
            "quadratic character needs odd characteristic".into(),
        ));
    }
    let v = a.residue().expect("prime field element");
    if v == 0 {
        return Ok(0);
    }
    let e = ctx.pow_residue(v, (l - 1) / 2);
    Ok(if e == 1 { 1 } else { -1 })
}

/// Squarefree kernel of a nonzero rational: the unique squarefree integer
/// `s` with `v = s * t^2` for rational `t`. Identifies the quadratic field
/// generated by `sqrt(v)`.
pub fn squarefree_kernel(v: &Rational) -> Result<BigInt> {
    if v.is_zero() {
        return Err(Error::UndefinedValue("squarefree kernel of zero".into()));
    }
    // v = num/den = num*den / den^2, so the kernel of num*den is the kernel of v.
    let n = v.numer() * v.denom();
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut kernel = BigInt::one();
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= m && d <= limit {
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            kernel *= &d;
        }
        d += 1u32;
    }
    if !m.is_one() {
        let s = m.sqrt();
        if &s * &s == m {
            // leftover square contributes nothing
        } else if primality::is_prime_bigint(&m) {
            kernel *= &m;
        } else {
            return Err(Error::UndefinedValue(format!(
                "cannot extract squarefree kernel: unfactored cofactor {}",
                m
            )));
        }
    }
    Ok(kernel * sign)
}

/// Coefficient-domain abstraction shared by polynomials and series.
/// Elements carry their own context (trivial for `Rational`, the field
/// context for `FqElem`), so zero/one are derived from an exemplar.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug + std::fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn inverse(&self) -> Option<Self>;
    /// Canonical square root if one exists (positive over Q, least
    /// nonnegative residue over F_l).
    fn sqrt_canonical(&self) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn sqrt_canonical(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let ns = self.numer().sqrt();
        let ds = self.denom().sqrt();
        if &ns * &ns == *self.numer() && &ds * &ds == *self.denom() {
            Some(Rational::new(ns, ds))
        } else {
            None
        }
    }
}

impl Coeff for FqElem {
    fn zero_like(&self) -> Self {
        FqElem::zero(self.ctx().clone())
    }
    fn one_like(&self) -> Self {
        FqElem::one(self.ctx().clone())
    }
    fn add(&self, other: &Self) -> Self {
        self.add_elem(other)
    }
    fn sub(&self, other: &Self) -> Self {
        self.sub_elem(other)
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_elem(other)
    }
    fn neg(&self) -> Self {
        self.neg_elem()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv_elem()
    }
    fn sqrt_canonical(&self) -> Option<Self> {
        self.sqrt_elem()
    }
}

#[cfg(test)]
mod tests;
