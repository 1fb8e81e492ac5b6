//! Resultants via the Sylvester matrix, with a fraction-free (Bareiss)
//! determinant over the polynomial ring itself so everything stays exact.

use super::MPoly;
use crate::exactnum::Coeff;
use crate::{Error, Result};

/// Resultant of `f` and `g` with respect to the named variable, as a
/// polynomial in the remaining variables. Convention: Sylvester matrix with
/// the rows of `f` first.
pub fn resultant_wrt<C: Coeff>(f: &MPoly<C>, g: &MPoly<C>, var: &str) -> Result<MPoly<C>> {
    let vi = f
        .var_index(var)
        .ok_or_else(|| Error::Parse(format!("unknown variable `{}`", var)))?;
    assert_eq!(f.vars(), g.vars(), "variable list mismatch");
    let m = f.degree_in(vi).unwrap_or(0) as usize;
    let n = g.degree_in(vi).unwrap_or(0) as usize;
    if m == 0 || n == 0 {
        return Err(Error::DegenerateInput(format!(
            "resultant needs positive degree in `{}` for both inputs",
            var
        )));
    }
    let fc = f.coeffs_in(vi); // length m+1, low degree first
    let gc = g.coeffs_in(vi);
    let size = m + n;
    let zero = MPoly::zero_owned(fc[0].vars().to_vec());
    let mut matrix = vec![vec![zero.clone(); size]; size];
    // n rows of f coefficients (high degree first), then m rows of g
    for row in 0..n {
        for (j, c) in fc.iter().rev().enumerate() {
            matrix[row][row + j] = c.clone();
        }
    }
    for row in 0..m {
        for (j, c) in gc.iter().rev().enumerate() {
            matrix[n + row][row + j] = c.clone();
        }
    }
    Ok(bareiss_det(matrix, &zero))
}

/// Fraction-free determinant. Entries live in an integral domain with exact
/// division; Bareiss guarantees every division is exact.
pub(crate) fn bareiss_det<C: Coeff>(mut m: Vec<Vec<MPoly<C>>>, zero: &MPoly<C>) -> MPoly<C> {
    let n = m.len();
    if n == 0 {
        return zero.clone();
    }
    let mut sign_flip = false;
    let mut prev_pivot: Option<MPoly<C>> = None;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
            match swap {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return zero.clone(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[k][k].mul_poly(&m[i][j]);
                let b = m[i][k].mul_poly(&m[k][j]);
                let mut num = a.sub_poly(&b);
                if let Some(p) = &prev_pivot {
                    num = num
                        .exact_div(p)
                        .expect("Bareiss division must be exact");
                }
                m[i][j] = num;
            }
        }
        prev_pivot = Some(m[k][k].clone());
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg_poly()
    } else {
        det
    }
}
