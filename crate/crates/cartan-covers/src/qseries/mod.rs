//! Truncated series in q with exponents in (1/24)Z and tracked precision:
//! arithmetic, inversion, square roots, Dedekind-eta quotients.

mod eta;
pub mod text;

pub use eta::{dedekind_eta, eta_quotient};

use crate::exactnum::{Coeff, Rational};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// A truncated q-series. Exponents are stored as integer multiples of
/// `1/denom` with `denom` either 1 or 24 (the eta exponent lattice), and
/// every stored exponent is strictly below `prec`, i.e. the series is known
/// modulo `O(q^(prec/denom))`.
#[derive(Clone, PartialEq)]
pub struct QSeries<C> {
    denom: u32,
    terms: BTreeMap<i64, C>,
    prec: i64,
}

impl<C: Coeff> QSeries<C> {
    pub fn zero_to(denom: u32, prec: i64) -> Self {
        assert!(denom == 1 || denom == 24, "exponent denominator must be 1 or 24");
        QSeries {
            denom,
            terms: BTreeMap::new(),
            prec,
        }
    }

    pub fn from_terms(denom: u32, terms: Vec<(i64, C)>, prec: i64) -> Self {
        let mut s = Self::zero_to(denom, prec);
        for (e, c) in terms {
            s.set_coeff(e, c);
        }
        s
    }

    /// A single term c*q^(e/denom), known to precision `prec`.
    pub fn monomial(denom: u32, e: i64, c: C, prec: i64) -> Self {
        Self::from_terms(denom, vec![(e, c)], prec)
    }

    pub fn set_coeff(&mut self, e: i64, c: C) {
        if e >= self.prec || c.is_zero_elem() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn denom(&self) -> u32 {
        self.denom
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Exponent of the first nonzero stored term (in 1/denom units).
    /// None means the series is zero to its precision.
    pub fn val(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, e: i64) -> Option<&C> {
        self.terms.get(&e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.terms.is_empty()
    }

    /// An exemplar coefficient for deriving zero/one of the domain.
    pub fn any_coeff(&self) -> Option<&C> {
        self.terms.values().next()
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let mut out = self.clone();
        out.prec = self.prec.min(prec);
        out.terms.retain(|e, _| *e < out.prec);
        out
    }

    /// Multiply by q^(shift/denom) exactly (adjusts precision window too).
    pub fn shift(&self, shift: i64) -> Self {
        QSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
            prec: self.prec + shift,
        }
    }

    /// Rescale a denominator-1 series onto the 1/24 lattice.
    pub fn promote_to_24(&self) -> Self {
        if self.denom == 24 {
            return self.clone();
        }
        QSeries {
            denom: 24,
            terms: self.terms.iter().map(|(e, c)| (e * 24, c.clone())).collect(),
            prec: self.prec.saturating_mul(24),
        }
    }

    /// Collapse a 1/24-lattice series whose exponents are all integral back
    /// to denominator 1. Precision rounds down conservatively.
    pub fn try_integerize(&self) -> Option<Self> {
        if self.denom == 1 {
            return Some(self.clone());
        }
        if self.terms.keys().any(|e| e.rem_euclid(24) != 0) {
            return None;
        }
        Some(QSeries {
            denom: 1,
            terms: self.terms.iter().map(|(e, c)| (e / 24, c.clone())).collect(),
            prec: self.prec.div_euclid(24),
        })
    }

    fn common_denom(&self, other: &Self) -> (Self, Self) {
        match (self.denom, other.denom) {
            (a, b) if a == b => (self.clone(), other.clone()),
            (1, 24) => (self.promote_to_24(), other.clone()),
            (24, 1) => (self.clone(), other.promote_to_24()),
            _ => unreachable!(),
        }
    }

    /// Effective valuation for precision propagation: the first nonzero
    /// exponent, or the precision bound when the series is zero so far.
    fn val_eff(&self) -> i64 {
        self.val().unwrap_or(self.prec)
    }

    pub fn add_series(&self, other: &Self) -> Self {
        let (a, b) = self.common_denom(other);
        let prec = a.prec.min(b.prec);
        let mut out: QSeries<C> = QSeries::zero_to(a.denom, prec);
        for (e, c) in a.terms.iter().chain(b.terms.iter()) {
            let cur = match out.terms.get(e) {
                Some(x) => x.add(c),
                None => c.clone(),
            };
            out.set_coeff(*e, cur);
        }
        out
    }

    pub fn neg_series(&self) -> Self {
        QSeries {
            denom: self.denom,
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            prec: self.prec,
        }
    }

    pub fn sub_series(&self, other: &Self) -> Self {
        self.add_series(&other.neg_series())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = QSeries::zero_to(self.denom, self.prec);
        for (e, v) in &self.terms {
            out.set_coeff(*e, v.mul(c));
        }
        out
    }

    /// Product with pessimistic precision propagation:
    /// `prec = min(val(a) + prec(b), val(b) + prec(a))`.
    pub fn mul_series(&self, other: &Self) -> Self {
        let (a, b) = self.common_denom(other);
        let prec = (a.val_eff() + b.prec).min(b.val_eff() + a.prec);
        let mut out: QSeries<C> = QSeries::zero_to(a.denom, prec);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea + eb;
                if e >= prec {
                    continue;
                }
                let add = ca.mul(cb);
                let cur = match out.terms.get(&e) {
                    Some(x) => x.add(&add),
                    None => add,
                };
                out.set_coeff(e, cur);
            }
        }
        out
    }

    pub fn pow_series(&self, e: u32) -> Self {
        if e == 0 {
            let one = self
                .any_coeff()
                .map(|c| c.one_like())
                .expect("cannot build 1 over an empty context-carrying series");
            return QSeries::monomial(self.denom, 0, one, self.prec - self.val_eff());
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.mul_series(self);
        }
        acc
    }

    /// Multiplicative inverse. The output is known through
    /// `prec - 2*val` (the classical loss for a leading term at q^val).
    pub fn inv_series(&self) -> Result<Self> {
        let v = self.val().ok_or(Error::NotInvertible)?;
        let lead = self.terms[&v].clone();
        let lead_inv = lead.inverse().ok_or(Error::NotInvertible)?;
        // u = self * q^{-v} is a unit with constant term `lead`
        let unit_prec = self.prec - v;
        let out_prec = self.prec - 2 * v;
        let mut inv_terms: BTreeMap<i64, C> = BTreeMap::new();
        inv_terms.insert(0, lead_inv.clone());
        for n in 1..unit_prec {
            // coefficient of q^n in u * inv must vanish
            let mut acc: Option<C> = None;
            for (e, c) in self.terms.range(v + 1..=v + n) {
                if let Some(b) = inv_terms.get(&(n - (e - v))) {
                    let prod = c.mul(b);
                    acc = Some(match acc {
                        Some(x) => x.add(&prod),
                        None => prod,
                    });
                }
            }
            if let Some(sum) = acc {
                let coeff = sum.mul(&lead_inv).neg();
                if !coeff.is_zero_elem() {
                    inv_terms.insert(n, coeff);
                }
            }
        }
        let mut out = QSeries::zero_to(self.denom, out_prec);
        for (e, c) in inv_terms {
            out.set_coeff(e - v, c);
        }
        Ok(out)
    }

    /// Square root with canonical leading coefficient. Requires an even
    /// valuation and a leading coefficient that is a square in the domain.
    pub fn sqrt_series(&self) -> Result<Self> {
        let v = self.val().ok_or(Error::NotInvertible)?;
        if v % 2 != 0 {
            return Err(Error::OddValuation(v));
        }
        let lead = self.terms[&v].clone();
        let s0 = lead
            .sqrt_canonical()
            .ok_or(Error::NonSquareLeadingCoefficient)?;
        let two_s0 = s0.add(&s0);
        let two_s0_inv = two_s0.inverse().ok_or(Error::NonSquareLeadingCoefficient)?;
        let unit_prec = self.prec - v;
        let mut s_terms: BTreeMap<i64, C> = BTreeMap::new();
        s_terms.insert(0, s0.clone());
        for n in 1..unit_prec {
            // u_n = sum_{i+j=n} s_i s_j  =>  s_n = (u_n - sum_{0<i<n}) / (2 s_0)
            let u_n = self.terms.get(&(v + n)).cloned().unwrap_or_else(|| s0.zero_like());
            let mut cross: Option<C> = None;
            for (i, si) in s_terms.range(1..n) {
                if let Some(sj) = s_terms.get(&(n - i)) {
                    let prod = si.mul(sj);
                    cross = Some(match cross {
                        Some(x) => x.add(&prod),
                        None => prod,
                    });
                }
            }
            let num = match cross {
                Some(x) => u_n.sub(&x),
                None => u_n,
            };
            let sn = num.mul(&two_s0_inv);
            if !sn.is_zero_elem() {
                s_terms.insert(n, sn);
            }
        }
        let out_prec = self.prec - v / 2;
        let mut out = QSeries::zero_to(self.denom, out_prec);
        for (e, c) in s_terms {
            out.set_coeff(e + v / 2, c);
        }
        Ok(out)
    }

    /// Equality of stored coefficients through the shared precision window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let (a, b) = self.common_denom(other);
        let prec = a.prec.min(b.prec);
        let at = a.truncate(prec);
        let bt = b.truncate(prec);
        at.terms == bt.terms
    }
}

impl QSeries<Rational> {
    /// Reduce coefficients mod l as u64 residues; errors when l divides a
    /// denominator.
    pub fn residues_mod(&self, l: u64) -> Result<Vec<(i64, u64)>> {
        use num_integer::Integer as _;
        let p = num_bigint::BigInt::from(l);
        let mut out = Vec::with_capacity(self.terms.len());
        for (e, c) in &self.terms {
            let den = c.denom().mod_floor(&p);
            if den == num_bigint::BigInt::from(0) {
                return Err(Error::BadReduction(format!("{} divides denominator", l)));
            }
            let num = c.numer().mod_floor(&p);
            let num_u: u64 = num.try_into().expect("residue fits");
            let den_u: u64 = den.try_into().expect("residue fits");
            debug_assert!(crate::exactnum::is_prime_u64(l));
            let inv = mod_inv(den_u, l);
            out.push((*e, (num_u as u128 * inv as u128 % l as u128) as u64));
        }
        Ok(out)
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl<C: Coeff> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_series(self))
    }
}

impl<C: Coeff> fmt::Debug for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests;
