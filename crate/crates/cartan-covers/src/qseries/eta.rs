//! Dedekind eta and eta quotients on the 1/24 exponent lattice:
//! `eta(N tau) = q^(N/24) prod_{n>=1} (1 - q^(N n))`.

use super::QSeries;
use crate::exactnum::{rat_int, Rational};
use crate::Result;
use num_traits::One;

/// `prod_{n>=1} (1 - q^(N n))` on integer exponents, by the pentagonal
/// number theorem: `sum_k (-1)^k q^(N k(3k-1)/2)` over all k in Z.
fn euler_product(scale: u64, prec: i64) -> QSeries<Rational> {
    let mut s = QSeries::zero_to(1, prec);
    s.set_coeff(0, Rational::one());
    let n = scale as i64;
    let mut k = 1i64;
    loop {
        let e1 = n * k * (3 * k - 1) / 2;
        let e2 = n * k * (3 * k + 1) / 2;
        if e1 >= prec && e2 >= prec {
            break;
        }
        let sign = if k % 2 == 0 { rat_int(1) } else { rat_int(-1) };
        if e1 < prec {
            s.set_coeff(e1, sign.clone());
        }
        if e2 < prec {
            s.set_coeff(e2, sign);
        }
        k += 1;
    }
    s
}

/// `eta(N tau)` truncated to O(q^(prec24/24)).
pub fn dedekind_eta(scale: u64, prec24: i64) -> QSeries<Rational> {
    eta_quotient(&[(scale, 1)], prec24).expect("single eta factor")
}

/// `prod_i eta(N_i tau)^(r_i)` as a 1/24-lattice series truncated to
/// O(q^(prec24/24)). The leading exponent is `sum r_i N_i / 24`.
pub fn eta_quotient(spec: &[(u64, i64)], prec24: i64) -> Result<QSeries<Rational>> {
    assert!(spec.iter().all(|&(n, _)| n >= 1), "eta scales must be >= 1");
    let shift24: i64 = spec.iter().map(|&(n, r)| n as i64 * r).sum();
    // unit part lives on integer exponents; we need it through
    // (prec24 - shift24)/24 q-powers
    let unit_prec = ((prec24 - shift24).div_euclid(24) + 2).max(1);
    let mut unit = QSeries::zero_to(1, unit_prec);
    unit.set_coeff(0, Rational::one());
    for &(n, r) in spec {
        if r == 0 {
            continue;
        }
        let base = euler_product(n, unit_prec);
        let factor = if r > 0 {
            base.pow_series(r as u32)
        } else {
            base.inv_series()?.pow_series((-r) as u32)
        };
        unit = unit.mul_series(&factor);
    }
    Ok(unit.promote_to_24().shift(shift24).truncate(prec24))
}

#[cfg(test)]
pub(crate) mod oracle {
    use super::*;

    /// Independent expansion of `prod (1 - q^(N n))` by explicit
    /// term-by-term multiplication, for cross-checking the pentagonal path.
    pub fn euler_product_brute(scale: u64, prec: i64) -> QSeries<Rational> {
        let mut s = QSeries::zero_to(1, prec);
        s.set_coeff(0, Rational::one());
        let n = scale as i64;
        let mut m = 1i64;
        while n * m < prec {
            let mut factor = QSeries::zero_to(1, prec);
            factor.set_coeff(0, Rational::one());
            factor.set_coeff(n * m, rat_int(-1));
            s = s.mul_series(&factor).truncate(prec);
            m += 1;
        }
        s
    }
}
