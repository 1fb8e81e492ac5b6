//! Root finding over finite fields: exhaustive scan for small fields,
//! `gcd(f, x^q - x)` plus equal-degree splitting for large ones.

use super::UPoly;
use crate::exactnum::{Coeff, FieldCtx, FqElem, Rational};
use crate::{Error, Result};
use std::sync::Arc;

/// Field-order threshold below which roots are found by scanning every
/// element. Keeps the small-field paths simple and independently testable.
const SCAN_LIMIT: u128 = 1_000_000;

/// All roots of `f` in `F_{l^k}`, with multiplicities, in increasing
/// element-code order.
pub fn roots_in_field(f: &UPoly<Rational>, ctx: &Arc<FieldCtx>) -> Result<Vec<(FqElem, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let red = f.reduce_mod(ctx)?;
    roots_of_reduced(&red, ctx)
}

pub fn roots_of_reduced(f: &UPoly<FqElem>, ctx: &Arc<FieldCtx>) -> Result<Vec<(FqElem, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(vec![]);
    }
    if ctx.order() <= SCAN_LIMIT {
        return Ok(scan_roots(f, ctx));
    }
    gcd_splitting_roots(f, ctx)
}

fn scan_roots(f: &UPoly<FqElem>, ctx: &Arc<FieldCtx>) -> Vec<(FqElem, usize)> {
    let q = ctx.order() as u64;
    let mut out = vec![];
    for code in 0..q {
        let x = FqElem::from_code(ctx.clone(), code);
        if f.eval(&x).is_zero() {
            out.push((x.clone(), multiplicity_at(f, &x)));
        }
    }
    out
}

fn multiplicity_at(f: &UPoly<FqElem>, root: &FqElem) -> usize {
    // synthetic division by (x - root) until the remainder is nonzero
    let linear = UPoly::from_coeffs(f.var(), vec![root.neg_elem(), root.one_like()]);
    let mut m = 0;
    let mut g = f.clone();
    loop {
        let (q, r) = g.divrem(&linear);
        if !r.is_zero() {
            return m;
        }
        m += 1;
        g = q;
        if g.is_zero() {
            return m;
        }
    }
}

/// Large fields: the distinct roots are the roots of `gcd(f, x^q - x)`,
/// split into linear factors; multiplicities recovered by division.
fn gcd_splitting_roots(f: &UPoly<FqElem>, ctx: &Arc<FieldCtx>) -> Result<Vec<(FqElem, usize)>> {
    let fm = f.monic();
    // x^q mod f by square-and-multiply
    let xq = pow_x_q_mod(&fm, ctx)?;
    let x = UPoly::from_coeffs(
        fm.var(),
        vec![FqElem::zero(ctx.clone()), FqElem::one(ctx.clone())],
    );
    let lin = fm.gcd_monic(&xq.sub_upoly(&x));
    let mut roots = vec![];
    split_linear(&lin, ctx, &mut roots, 1);
    let mut out: Vec<(FqElem, usize)> = roots
        .into_iter()
        .map(|r| {
            let m = multiplicity_at(f, &r);
            (r, m)
        })
        .collect();
    out.sort_by_key(|(r, _)| r.code());
    Ok(out)
}

fn pow_x_q_mod(f: &UPoly<FqElem>, ctx: &Arc<FieldCtx>) -> Result<UPoly<FqElem>> {
    let mut e = ctx.order();
    let mut acc = UPoly::from_coeffs(f.var(), vec![FqElem::one(ctx.clone())]);
    let mut base = UPoly::from_coeffs(
        f.var(),
        vec![FqElem::zero(ctx.clone()), FqElem::one(ctx.clone())],
    );
    base = base.divrem(f).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_upoly(&base).divrem(f).1;
        }
        base = base.mul_upoly(&base).divrem(f).1;
        e >>= 1;
    }
    Ok(acc)
}

/// Equal-degree splitting of a product of distinct linear factors.
/// Deterministically seeded so runs are reproducible.
fn split_linear(g: &UPoly<FqElem>, ctx: &Arc<FieldCtx>, out: &mut Vec<FqElem>, seed: u64) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            // monic x + c has root -c
            let c = g.coeff(0).unwrap().clone();
            let lead_inv = g.leading().unwrap().inv_elem().unwrap();
            out.push(c.mul_elem(&lead_inv).neg_elem());
            return;
        }
        _ => {}
    }
    let q = ctx.order();
    let mut state = seed;
    loop {
        state = splitmix64(state);
        let a = FqElem::from_code(ctx.clone(), state % q as u64);
        let h = if ctx.characteristic() == 2 {
            // trace map T(ax) = sum (a x)^(2^i)
            let ax = UPoly::from_coeffs(g.var(), vec![FqElem::zero(ctx.clone()), a]);
            let mut term = ax.divrem(g).1;
            let mut acc = term.clone();
            let bits = ctx.degree() as u32;
            for _ in 1..bits {
                term = term.mul_upoly(&term).divrem(g).1;
                acc = acc.add_upoly(&term);
            }
            acc
        } else {
            // (x + a)^((q-1)/2) - 1
            let shifted = UPoly::from_coeffs(g.var(), vec![a, FqElem::one(ctx.clone())]);
            let p = poly_powmod_upoly(&shifted, ((q - 1) / 2) as u128, g);
            let one = UPoly::from_coeffs(g.var(), vec![FqElem::one(ctx.clone())]);
            p.sub_upoly(&one)
        };
        let d = g.gcd_monic(&h);
        let deg = d.degree().unwrap_or(0);
        if deg > 0 && deg < g.degree().unwrap() {
            let rest = g.exact_div_upoly(&d).expect("factor divides");
            split_linear(&d, ctx, out, splitmix64(state ^ 0x9e37));
            split_linear(&rest, ctx, out, splitmix64(state ^ 0x79b9));
            return;
        }
    }
}

fn poly_powmod_upoly(base: &UPoly<FqElem>, mut e: u128, modulus: &UPoly<FqElem>) -> UPoly<FqElem> {
    let one = base.leading().unwrap().one_like();
    let mut acc = UPoly::from_coeffs(base.var(), vec![one]);
    let mut b = base.divrem(modulus).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_upoly(&b).divrem(modulus).1;
        }
        b = b.mul_upoly(&b).divrem(modulus).1;
        e >>= 1;
    }
    acc
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
