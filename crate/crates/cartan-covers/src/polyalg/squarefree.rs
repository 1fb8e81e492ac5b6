//! Squarefree decomposition: the Yun/gcd chain in characteristic zero,
//! with the p-th-power descent in positive characteristic.

use super::UPoly;
use crate::exactnum::{Coeff, Rational};
use crate::{Error, Result};
use num_traits::Signed;

/// Multiplicity decomposition `f = c * prod f_i^{m_i}` with the `f_i`
/// monic, squarefree, pairwise coprime and the `m_i` distinct. Returned
/// sorted by multiplicity.
pub fn squarefree_decomposition<C: CoeffField>(f: &UPoly<C>) -> Result<Vec<(UPoly<C>, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = f.leading().unwrap().char_p();
    let mut out = decompose(&f.monic(), p)?;
    out.sort_by_key(|(g, m)| (*m, g.degree()));
    Ok(out)
}

fn decompose<C: CoeffField>(f: &UPoly<C>, p: u64) -> Result<Vec<(UPoly<C>, usize)>> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    let df = f.derivative();
    if p > 0 && df.is_zero() {
        // f lies in F_q[x^p]; Frobenius surjectivity gives an exact p-th root
        let g = pth_root_poly(f, p)?;
        let inner = decompose(&g, p)?;
        return Ok(inner.into_iter().map(|(h, m)| (h, m * p as usize)).collect());
    }
    let mut out = vec![];
    let mut c = f.gcd_monic(&df);
    let mut w = f.exact_div_upoly(&c).expect("gcd divides");
    let mut i = 1usize;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd_monic(&c);
        let fac = w.exact_div_upoly(&y).expect("gcd divides");
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        c = c.exact_div_upoly(&y).expect("gcd divides");
        w = y;
        i += 1;
    }
    // in characteristic p the factors of multiplicity divisible by p are
    // left untouched in c, as an exact p-th power
    if c.degree().unwrap_or(0) > 0 {
        debug_assert!(p > 0, "Yun residue must be constant in characteristic zero");
        let g = pth_root_poly(&c, p)?;
        let inner = decompose(&g, p)?;
        out.extend(inner.into_iter().map(|(h, m)| (h, m * p as usize)));
    }
    Ok(out)
}

fn pth_root_poly<C: CoeffField>(f: &UPoly<C>, p: u64) -> Result<UPoly<C>> {
    for (i, c) in f.coeffs().iter().enumerate() {
        if i as u64 % p != 0 && !c.is_zero_elem() {
            return Err(Error::DegenerateInput(
                "polynomial is not a p-th power".into(),
            ));
        }
    }
    let deg = f.degree().unwrap_or(0);
    let mut coeffs = vec![];
    for i in (0..=deg).step_by(p as usize) {
        let c = f
            .coeff(i)
            .cloned()
            .unwrap_or_else(|| f.leading().unwrap().zero_like());
        coeffs.push(c.pth_root_elem());
    }
    Ok(UPoly::from_coeffs(f.var(), coeffs))
}

/// `f / gcd(f, f')`: the product of the distinct irreducible factors,
/// monic, carrying the sign of the original leading coefficient over the
/// rationals. The result has no repeated roots.
pub fn squarefree_part<C: CoeffField>(f: &UPoly<C>) -> Result<UPoly<C>> {
    let parts = squarefree_decomposition(f)?;
    let one = f.leading().unwrap().one_like();
    let mut out = UPoly::from_coeffs(f.var(), vec![one]);
    for (g, _) in &parts {
        out = out.mul_upoly(g);
    }
    Ok(apply_sign(f, out))
}

/// Product of the irreducible factors of odd multiplicity, monic with the
/// original leading sign. These are the odd-order zeros.
pub fn odd_multiplicity_part<C: CoeffField>(f: &UPoly<C>) -> Result<UPoly<C>> {
    let parts = squarefree_decomposition(f)?;
    let one = f.leading().unwrap().one_like();
    let mut out = UPoly::from_coeffs(f.var(), vec![one]);
    for (g, m) in &parts {
        if m % 2 == 1 {
            out = out.mul_upoly(g);
        }
    }
    Ok(apply_sign(f, out))
}

fn apply_sign<C: CoeffField>(original: &UPoly<C>, monic_out: UPoly<C>) -> UPoly<C> {
    if original.leading().map(|c| c.is_negative_elem()) == Some(true) {
        monic_out.neg_upoly()
    } else {
        monic_out
    }
}

/// Field-like coefficients with the extra structure squarefree
/// decomposition needs: the characteristic and a p-th root.
pub trait CoeffField: Coeff {
    fn char_p(&self) -> u64;
    fn pth_root_elem(&self) -> Self;
    fn is_negative_elem(&self) -> bool;
}

impl CoeffField for Rational {
    fn char_p(&self) -> u64 {
        0
    }
    fn pth_root_elem(&self) -> Self {
        unreachable!("characteristic zero has no p-th root step")
    }
    fn is_negative_elem(&self) -> bool {
        self.is_negative()
    }
}

impl CoeffField for crate::exactnum::FqElem {
    fn char_p(&self) -> u64 {
        self.ctx().characteristic()
    }
    fn pth_root_elem(&self) -> Self {
        // Frobenius is bijective: a^(q/p) is the p-th root
        let q = self.ctx().order();
        let p = self.ctx().characteristic() as u128;
        self.pow_elem(q / p)
    }
    fn is_negative_elem(&self) -> bool {
        false
    }
}
