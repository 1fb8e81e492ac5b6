//! Sparse multivariate and dense univariate polynomial algebra over exact
//! coefficient domains: evaluation, resultants, squarefree parts, root
//! finding, homogenization, Jacobian ranks.

mod resultant;
mod roots;
mod squarefree;
pub mod text;

pub use resultant::resultant_wrt;
pub use roots::roots_in_field;
pub use squarefree::{odd_multiplicity_part, squarefree_decomposition, squarefree_part};

use crate::exactnum::{reduce_rational, Coeff, FieldCtx, FqElem, Rational};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector with cached total degree. The derived order is graded
/// lexicographic (total degree first), so map iteration is grlex-ascending
/// and printing walks it in reverse.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Mono {
    total: u32,
    exps: Vec<u32>,
}

impl Mono {
    pub fn new(exps: Vec<u32>) -> Self {
        Mono {
            total: exps.iter().sum(),
            exps,
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn total(&self) -> u32 {
        self.total
    }
}

/// Sparse multivariate polynomial with a fixed, ordered variable list.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly<C> {
    vars: Vec<String>,
    terms: BTreeMap<Mono, C>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(vars: &[&str]) -> Self {
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_owned(vars: Vec<String>) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(vars: &[&str], terms: Vec<(Vec<u32>, C)>) -> Self {
        let mut out = Self::zero(vars);
        for (exps, c) in terms {
            out.add_term(exps, c);
        }
        out
    }

    pub fn constant(vars: &[&str], c: C) -> Self {
        let n = vars.len();
        let mut out = Self::zero(vars);
        out.add_term(vec![0; n], c);
        out
    }

    pub fn var(vars: &[&str], idx: usize, one: C) -> Self {
        let mut exps = vec![0u32; vars.len()];
        exps[idx] = 1;
        let mut out = Self::zero(vars);
        out.add_term(exps, one);
        out
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: C) {
        assert_eq!(exps.len(), self.vars.len(), "exponent arity mismatch");
        if c.is_zero_elem() {
            return;
        }
        let key = Mono::new(exps);
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero_elem() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in graded-lex descending order (the printing order).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter().rev()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &C)> {
        self.terms.iter()
    }

    pub fn any_coeff(&self) -> Option<&C> {
        self.terms.values().next()
    }

    fn assert_same_vars(&self, other: &Self) {
        assert_eq!(self.vars, other.vars, "variable list mismatch");
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.exps.clone(), c.clone());
        }
        out
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        self.add_poly(&other.neg_poly())
    }

    pub fn neg_poly(&self) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero_elem() {
            return MPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.mul(c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = Self::zero_owned(self.vars.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.exps.iter().zip(&mb.exps).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let one = match self.any_coeff() {
            Some(c) => c.one_like(),
            None => {
                // zero polynomial: 0^0 = 1 is not representable without a
                // coefficient exemplar; powers of zero stay zero for e > 0.
                assert!(e > 0, "0^0 over a context-carrying domain");
                return self.clone();
            }
        };
        let mut acc = Self::constant(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            one,
        );
        for _ in 0..e {
            acc = acc.mul_poly(self);
        }
        acc
    }

    /// Exact evaluation at a point of matching arity.
    pub fn eval(&self, point: &[C]) -> Result<C> {
        if point.len() != self.vars.len() {
            return Err(Error::ArityMismatch {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let zero = match self.any_coeff() {
            Some(c) => c.zero_like(),
            None => match point.first() {
                Some(x) => x.zero_like(),
                None => panic!("cannot infer coefficient domain of empty polynomial"),
            },
        };
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.exps) {
                for _ in 0..e {
                    term = term.mul(x);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exps[var]).max()
    }

    /// Some(d) when every term has total degree d.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.total;
        if it.all(|m| m.total == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut out = Self::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] -= 1;
            let mut factor = c.zero_like();
            for _ in 0..e {
                factor = factor.add(c);
            }
            out.add_term(exps, factor);
        }
        out
    }

    /// Homogenize with a fresh variable appended to the variable list.
    pub fn homogenize(&self, new_var: &str, degree: u32) -> Result<Self> {
        let total = self.total_degree().unwrap_or(0);
        if degree < total {
            return Err(Error::DegreeTooSmall {
                degree,
                needed: total,
            });
        }
        let mut vars = self.vars.clone();
        vars.push(new_var.to_string());
        let mut out = Self::zero_owned(vars);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps.push(degree - m.total);
            out.add_term(exps, c.clone());
        }
        Ok(out)
    }

    /// Set the given variable to 1 and drop it from the variable list.
    pub fn dehomogenize(&self, var: usize) -> Self {
        let mut vars = self.vars.clone();
        vars.remove(var);
        let mut out = Self::zero_owned(vars);
        for (m, c) in &self.terms {
            let mut exps = m.exps.clone();
            exps.remove(var);
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Substitute a value for one variable, dropping it from the list.
    pub fn substitute(&self, var: usize, value: &C) -> Self {
        let mut vars = self.vars.clone();
        vars.remove(var);
        let mut out = Self::zero_owned(vars);
        for (m, c) in &self.terms {
            let mut factor = c.clone();
            for _ in 0..m.exps[var] {
                factor = factor.mul(value);
            }
            let mut exps = m.exps.clone();
            exps.remove(var);
            out.add_term(exps, factor);
        }
        out
    }

    /// View as a univariate polynomial in `var` with multivariate
    /// coefficients in the remaining variables.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly<C>> {
        let deg = self.degree_in(var).map(|d| d as usize + 1).unwrap_or(0);
        let mut vars = self.vars.clone();
        vars.remove(var);
        let mut out = vec![MPoly::zero_owned(vars); deg];
        for (m, c) in &self.terms {
            let e = m.exps[var] as usize;
            let mut exps = m.exps.clone();
            exps.remove(var);
            out[e].add_term(exps, c.clone());
        }
        out
    }

    /// Collapse a univariate polynomial to dense form.
    pub fn to_upoly(&self) -> Result<UPoly<C>> {
        if self.vars.len() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                got: self.vars.len(),
            });
        }
        let zero = match self.any_coeff() {
            Some(c) => c.zero_like(),
            None => return Ok(UPoly::zero(&self.vars[0])),
        };
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![zero; deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.exps[0] as usize] = c.clone();
        }
        Ok(UPoly::from_coeffs(&self.vars[0], coeffs))
    }

    /// Exact division; None when the divisor does not divide exactly.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.assert_same_vars(divisor);
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.terms.iter().next_back()?;
        let dc_inv = dc.inverse()?;
        let mut rem = self.clone();
        let mut quot = Self::zero_owned(self.vars.clone());
        while !rem.is_zero() {
            let (rm, rc) = rem.terms.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
            let mut exps = Vec::with_capacity(rm.exps.len());
            for (a, b) in rm.exps.iter().zip(&dm.exps) {
                if a < b {
                    return None;
                }
                exps.push(a - b);
            }
            let q = rc.mul(&dc_inv);
            let mut mono = Self::zero_owned(self.vars.clone());
            mono.add_term(exps.clone(), q.clone());
            rem = rem.sub_poly(&mono.mul_poly(divisor));
            quot.add_term(exps, q);
        }
        Some(quot)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.exps.clone(), f(c));
        }
        out
    }

    /// Rename the variable list (arity must match).
    pub fn with_vars(&self, vars: &[&str]) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        MPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: self.terms.clone(),
        }
    }
}

impl MPoly<Rational> {
    /// Reduction mod the field characteristic, coefficientwise.
    pub fn reduce_mod(&self, ctx: &Arc<FieldCtx>) -> Result<MPoly<FqElem>> {
        let mut out = MPoly::zero_owned(self.vars.clone());
        for (m, c) in &self.terms {
            out.add_term(m.exps.clone(), reduce_rational(c, ctx)?);
        }
        Ok(out)
    }
}

impl<C: Coeff> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_mpoly(self))
    }
}

impl<C: Coeff> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Dense univariate polynomial, low-degree coefficients first.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly<C> {
    var: String,
    coeffs: Vec<C>,
}

impl<C: Coeff> UPoly<C> {
    pub fn zero(var: &str) -> Self {
        UPoly {
            var: var.to_string(),
            coeffs: vec![],
        }
    }

    pub fn from_coeffs(var: &str, coeffs: Vec<C>) -> Self {
        let mut out = UPoly {
            var: var.to_string(),
            coeffs,
        };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero_elem()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = match self.coeffs.last() {
            Some(c) => c.clone(),
            None => return x.zero_like(),
        };
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add_upoly(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = self
            .coeffs
            .first()
            .or(other.coeffs.first())
            .map(|c| c.zero_like());
        let zero = match zero {
            Some(z) => z,
            None => return self.clone(),
        };
        let mut coeffs = vec![zero; n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].add(c);
        }
        UPoly::from_coeffs(&self.var, coeffs)
    }

    pub fn neg_upoly(&self) -> Self {
        UPoly {
            var: self.var.clone(),
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub_upoly(&self, other: &Self) -> Self {
        self.add_upoly(&other.neg_upoly())
    }

    pub fn mul_upoly(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero(&self.var);
        }
        let zero = self.coeffs[0].zero_like();
        let mut coeffs = vec![zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UPoly::from_coeffs(&self.var, coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        UPoly::from_coeffs(
            &self.var,
            self.coeffs.iter().map(|x| x.mul(c)).collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UPoly::zero(&self.var);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut f = c.zero_like();
            for _ in 0..i {
                f = f.add(c);
            }
            coeffs.push(f);
        }
        UPoly::from_coeffs(&self.var, coeffs)
    }

    /// Division with remainder; requires an invertible leading coefficient.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor
            .leading()
            .unwrap()
            .inverse()
            .expect("leading coefficient not invertible");
        let mut rem = self.clone();
        let mut quot_coeffs = vec![
            self.coeffs
                .first()
                .map(|c| c.zero_like())
                .unwrap_or_else(|| divisor.coeffs[0].zero_like());
            self.coeffs.len().saturating_sub(d)
        ];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let factor = rem.leading().unwrap().mul(&lead_inv);
            let shift = rd - d;
            quot_coeffs[shift] = quot_coeffs[shift].add(&factor);
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = shift + i;
                rem.coeffs[idx] = rem.coeffs[idx].sub(&factor.mul(c));
            }
            rem.trim();
        }
        (UPoly::from_coeffs(&self.var, quot_coeffs), rem)
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_zero_elem() => {
                let inv = l.inverse().expect("leading coefficient not invertible");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd_monic(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn exact_div_upoly(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn pow(&self, e: u32, one: C) -> Self {
        let mut acc = UPoly::from_coeffs(&self.var, vec![one]);
        for _ in 0..e {
            acc = acc.mul_upoly(self);
        }
        acc
    }

    pub fn to_mpoly(&self) -> MPoly<C> {
        let var = self.var.clone();
        let mut out = MPoly::zero_owned(vec![var]);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.add_term(vec![i as u32], c.clone());
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> UPoly<D> {
        UPoly::from_coeffs(&self.var, self.coeffs.iter().map(f).collect())
    }
}

impl UPoly<Rational> {
    pub fn reduce_mod(&self, ctx: &Arc<FieldCtx>) -> Result<UPoly<FqElem>> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(reduce_rational(c, ctx)?);
        }
        Ok(UPoly::from_coeffs(&self.var, coeffs))
    }
}

impl<C: Coeff> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", text::format_mpoly(&self.to_mpoly()))
    }
}

impl<C: Coeff> fmt::Debug for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Rank over `F_{l^k}` of the Jacobian matrix of `system` at `point`.
/// Errors with `PointNotOnVariety` when the point does not satisfy the
/// reduced system.
pub fn jacobian_rank(
    system: &[MPoly<Rational>],
    point: &[FqElem],
    ctx: &Arc<FieldCtx>,
) -> Result<usize> {
    let mut rows = Vec::with_capacity(system.len());
    for eq in system {
        let red = eq.reduce_mod(ctx)?;
        if !red.eval(point)?.is_zero() {
            return Err(Error::PointNotOnVariety);
        }
        let mut row = Vec::with_capacity(point.len());
        for v in 0..point.len() {
            row.push(red.partial(v).eval(point)?);
        }
        rows.push(row);
    }
    Ok(rank_mod(rows))
}

/// Gaussian-elimination rank of a matrix over a finite field.
pub fn rank_mod(mut rows: Vec<Vec<FqElem>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => continue,
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv_elem().expect("nonzero pivot");
        for c in col..ncols {
            rows[rank][c] = rows[rank][c].mul_elem(&inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..ncols {
                    let s = f.mul_elem(&rows[rank][c]);
                    rows[r][c] = rows[r][c].sub_elem(&s);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests;
