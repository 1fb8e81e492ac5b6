//! Series text format: a sum of `c*q^(a/24)` (or `c*q^a` on the integer
//! lattice) terms followed by an `+ O(q^(m/24))` tail. Parser and printer
//! round-trip.

use super::QSeries;
use crate::exactnum::{Coeff, Rational};
use crate::polyalg::text::parse_rational;
use crate::{Error, Result};
use num_traits::One;

pub fn format_series<C: Coeff>(s: &QSeries<C>) -> String {
    let mut out = String::new();
    for (i, (e, c)) in s.terms().enumerate() {
        let cs = format!("{}", c);
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(_) => (true, format!("{}", c.neg())),
            None => (false, cs),
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let is_one = mag == "1";
        match (*e, is_one) {
            (0, _) => out.push_str(&mag),
            (_, true) => out.push_str(&exp_str(*e, s.denom())),
            (_, false) => {
                out.push_str(&mag);
                out.push('*');
                out.push_str(&exp_str(*e, s.denom()));
            }
        }
    }
    if !out.is_empty() {
        out.push_str(" + ");
    }
    out.push_str(&format!("O({})", exp_str(s.prec(), s.denom())));
    out
}

fn exp_str(e: i64, denom: u32) -> String {
    if denom == 1 {
        if e == 1 {
            "q".to_string()
        } else if e < 0 {
            format!("q^({})", e)
        } else {
            format!("q^{}", e)
        }
    } else {
        format!("q^({}/{})", e, denom)
    }
}

/// Parse the series format over rational coefficients. The exponent
/// denominator of the result is 24 when any exponent is written as a
/// fraction, 1 otherwise.
pub fn parse_series(input: &str) -> Result<QSeries<Rational>> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    // split off the O(...) tail
    let (body, tail) = match compact.rfind("O(") {
        Some(idx) => {
            let t = &compact[idx..];
            let mut b = &compact[..idx];
            b = b.strip_suffix('+').unwrap_or(b);
            (b.to_string(), t.to_string())
        }
        None => return Err(Error::Parse("series needs an O(q^...) tail".into())),
    };
    let tail_inner = tail
        .strip_prefix("O(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("malformed tail `{}`", tail)))?;
    let (prec_num, prec_den) = if tail_inner == "q" {
        (1, 1)
    } else {
        let exp = tail_inner
            .strip_prefix("q^")
            .ok_or_else(|| Error::Parse(format!("malformed tail `{}`", tail)))?;
        parse_exponent(exp)?
    };

    let mut parsed: Vec<(i64, u32, Rational)> = vec![];
    let mut any24 = prec_den == 24;
    if !body.is_empty() {
        for term in split_signed_terms(&body)? {
            let (coeff, e, d) = parse_term(&term)?;
            any24 |= d == 24;
            parsed.push((e, d, coeff));
        }
    }
    let denom = if any24 { 24 } else { 1 };
    let prec = if prec_den == denom { prec_num } else { prec_num * 24 };
    let mut out = QSeries::zero_to(denom, prec);
    for (e, d, c) in parsed {
        let e = if d == denom { e } else { e * 24 };
        let cur = match out.coeff(e) {
            Some(x) => x + &c,
            None => c,
        };
        out.set_coeff(e, cur);
    }
    Ok(out)
}

fn split_signed_terms(body: &str) -> Result<Vec<String>> {
    let mut terms = vec![];
    let mut cur = String::new();
    let mut depth = 0i32;
    for (i, ch) in body.chars().enumerate() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (ch == '+' || ch == '-') && i > 0 && depth == 0 {
            let prev = body.chars().nth(i - 1);
            // signs inside exponents like q^(-1) are protected by depth
            if prev != Some('^') {
                terms.push(cur.clone());
                cur.clear();
                if ch == '-' {
                    cur.push('-');
                }
                continue;
            }
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    Ok(terms)
}

fn parse_term(term: &str) -> Result<(Rational, i64, u32)> {
    let mut t = term;
    let mut sign = Rational::one();
    if let Some(rest) = t.strip_prefix('-') {
        sign = -sign;
        t = rest;
    }
    if t.is_empty() {
        return Err(Error::Parse(format!("empty term `{}`", term)));
    }
    let (coeff_str, q_str) = match t.find('q') {
        Some(idx) => {
            let c = t[..idx].trim_end_matches('*');
            (c, Some(&t[idx..]))
        }
        None => (t, None),
    };
    let coeff = if coeff_str.is_empty() {
        Rational::one()
    } else {
        parse_rational(coeff_str)?
    };
    let (e, d) = match q_str {
        None => (0, 1),
        Some("q") => (1, 1),
        Some(qs) => {
            let exp = qs
                .strip_prefix("q^")
                .ok_or_else(|| Error::Parse(format!("malformed q power `{}`", qs)))?;
            parse_exponent(exp)?
        }
    };
    Ok((coeff * sign, e, d))
}

/// `5`, `(-3)`, `(7/24)`, `(-7/24)` -> (numerator, denominator in {1,24}).
fn parse_exponent(s: &str) -> Result<(i64, u32)> {
    let inner = s
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(s);
    match inner.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{}`", s)))?;
            let d: u32 = d
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent denominator `{}`", s)))?;
            if d != 24 && d != 1 {
                return Err(Error::Parse(format!(
                    "exponent denominator must be 1 or 24, got {}",
                    d
                )));
            }
            Ok((n, d))
        }
        None => {
            let n: i64 = inner
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{}`", s)))?;
            Ok((n, 1))
        }
    }
}
