//! The shared polynomial text format: a sparse sum of terms with `^` for
//! powers, optional `*`, rational coefficients as `a/b`, alphanumeric
//! variable names. Example: `-3*x1^2*x8 + 1/2*x2`. Parser and printer
//! round-trip.

use super::{MPoly, Mono, UPoly};
use crate::exactnum::{Coeff, Rational};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::str::FromStr;

pub fn parse_mpoly(input: &str, vars: &[&str]) -> Result<MPoly<Rational>> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = MPoly::zero(vars);
    if compact.is_empty() || compact == "0" {
        return Ok(out);
    }
    for term in split_terms(&compact)? {
        let (exps, coeff) = parse_term(&term, vars)?;
        out.add_term(exps, coeff);
    }
    Ok(out)
}

pub fn parse_upoly(input: &str, var: &str) -> Result<UPoly<Rational>> {
    parse_mpoly(input, &[var])?.to_upoly()
}

fn split_terms(compact: &str) -> Result<Vec<String>> {
    let mut terms = vec![];
    let mut cur = String::new();
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 {
            if cur.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{}`", compact)));
            }
            terms.push(cur.clone());
            cur.clear();
        }
        if ch != '+' || i == 0 {
            cur.push(ch);
        }
    }
    if cur.is_empty() || cur == "+" || cur == "-" {
        return Err(Error::Parse(format!("dangling sign in `{}`", compact)));
    }
    terms.push(cur);
    Ok(terms)
}

fn parse_term(term: &str, vars: &[&str]) -> Result<(Vec<u32>, Rational)> {
    let mut t = term;
    let mut coeff = Rational::one();
    if let Some(rest) = t.strip_prefix('-') {
        coeff = -coeff;
        t = rest;
    } else if let Some(rest) = t.strip_prefix('+') {
        t = rest;
    }
    let mut exps = vec![0u32; vars.len()];
    if t.is_empty() {
        return Err(Error::Parse(format!("empty term in `{}`", term)));
    }
    for factor in t.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{}`", term)));
        }
        if factor.chars().next().unwrap().is_ascii_digit() {
            let r = parse_rational(factor)?;
            coeff *= r;
        } else {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{}`", factor)))?;
                    (n, e)
                }
                None => (factor, 1),
            };
            let idx = vars.iter().position(|v| *v == name).ok_or_else(|| {
                Error::Parse(format!("unknown variable `{}` (expected one of {:?})", name, vars))
            })?;
            exps[idx] += exp;
        }
    }
    Ok((exps, coeff))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n).map_err(|_| Error::Parse(format!("bad numerator `{}`", s)))?;
            let d = BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad denominator `{}`", s)))?;
            if d == BigInt::from(0) {
                return Err(Error::Parse(format!("zero denominator in `{}`", s)));
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n = BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad integer `{}`", s)))?;
            Ok(Rational::from_integer(n))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Graded-lex descending printing; coefficient 1 is suppressed except on
/// the constant term.
pub fn format_mpoly<C: Coeff>(poly: &MPoly<C>) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let one = poly.any_coeff().unwrap().one_like();
    let minus_one = one.neg();
    let mut out = String::new();
    for (i, (mono, coeff)) in poly.terms_desc().enumerate() {
        let mono_str = format_mono(mono, poly.vars());
        let (sign_is_minus, mag) = coeff_magnitude(coeff, &minus_one);
        if i == 0 {
            if sign_is_minus {
                out.push('-');
            }
        } else if sign_is_minus {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff_is_one = mag == one;
        match (coeff_is_one, mono_str.is_empty()) {
            (true, true) => out.push('1'),
            (true, false) => out.push_str(&mono_str),
            (false, true) => out.push_str(&format!("{}", mag)),
            (false, false) => out.push_str(&format!("{}*{}", mag, mono_str)),
        }
    }
    out
}

/// Splits a coefficient into (is_negative, magnitude) when the domain has a
/// usable sign (rationals); finite-field elements always print as-is.
fn coeff_magnitude<C: Coeff>(c: &C, _minus_one: &C) -> (bool, C) {
    let s = format!("{}", c);
    if let Some(stripped) = s.strip_prefix('-') {
        if !stripped.is_empty() {
            return (true, c.neg());
        }
    }
    (false, c.clone())
}

fn format_mono(mono: &Mono, vars: &[String]) -> String {
    let mut parts = vec![];
    for (i, &e) in mono.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

pub fn format_upoly(poly: &UPoly<Rational>) -> String {
    format_mpoly(&poly.to_mpoly())
}
