//! LLL lattice basis reduction over Z with exact rational Gram-Schmidt.

use crate::exactnum::Rational;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Lovász parameter 0.99: strong reduction, small stable output.
fn delta() -> Rational {
    crate::exactnum::rat(99, 100)
}

struct Gso {
    mu: Vec<Vec<Rational>>,
    norms: Vec<Rational>, // |b*_i|^2
}

fn dot(a: &[BigInt], b: &[BigInt]) -> Rational {
    let mut acc = BigInt::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    Rational::from_integer(acc)
}

fn gso(basis: &[Vec<BigInt>]) -> Gso {
    let n = basis.len();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut norms = vec![Rational::zero(); n];
    // b*_i = b_i - sum_{j<i} mu_ij b*_j ; store b* in rational coordinates
    let dim = basis[0].len();
    let mut star: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut bi: Vec<Rational> = basis[i]
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        for j in 0..i {
            let num: Rational = basis[i]
                .iter()
                .zip(&star[j])
                .map(|(x, y)| Rational::from_integer(x.clone()) * y)
                .sum();
            let m = if norms[j].is_zero() {
                Rational::zero()
            } else {
                num / &norms[j]
            };
            mu[i][j] = m.clone();
            for d in 0..dim {
                let s = &m * &star[j][d];
                bi[d] -= s;
            }
        }
        norms[i] = bi.iter().map(|x| x * x).sum();
        star.push(bi);
    }
    Gso { mu, norms }
}

fn round_rational(r: &Rational) -> BigInt {
    // nearest integer, ties toward zero are fine for size reduction
    let two = BigInt::from(2);
    let n = r.numer();
    let d = r.denom();
    let doubled = n * &two + d; // 2n + d
    num_integer::Integer::div_floor(&doubled, &(d * &two))
}

/// LLL-reduce a list of linearly independent integer vectors. The output
/// spans the same lattice, satisfies the Lovász condition with delta =
/// 0.99, and is returned sorted by Euclidean norm whenever the sorted
/// order itself still satisfies the condition.
pub fn lll_reduce(vectors: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    if vectors.is_empty() {
        return Ok(vec![]);
    }
    let rows: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    if super::nullspace::rational_rank(&rows) < vectors.len() {
        return Err(Error::DependentInput);
    }
    let mut basis = vectors.to_vec();
    lll_pass(&mut basis);
    // prefer norm-sorted output when it stays Lovász-reduced
    let mut sorted = basis.clone();
    super::nullspace::sort_vectors(&mut sorted);
    if lovasz_ok(&sorted) {
        Ok(sorted)
    } else {
        Ok(basis)
    }
}

fn lll_pass(basis: &mut Vec<Vec<BigInt>>) {
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let d = delta();
    let mut k = 1usize;
    let mut g = gso(basis);
    while k < n {
        // size-reduce b_k against b_{k-1}, ..., b_0
        for j in (0..k).rev() {
            let m = g.mu[k][j].clone();
            let r = round_rational(&m);
            if !r.is_zero() {
                for t in 0..basis[k].len() {
                    let s = &r * &basis[j][t];
                    basis[k][t] -= s;
                }
                g = gso(basis);
            }
        }
        let lhs = g.norms[k].clone();
        let rhs = (&d - &(&g.mu[k][k - 1] * &g.mu[k][k - 1])) * &g.norms[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            g = gso(basis);
            k = k.max(2) - 1;
        }
    }
}

/// Check the Lovász condition with delta = 0.99 (plus size reduction is
/// not required for the check itself).
pub fn lovasz_ok(basis: &[Vec<BigInt>]) -> bool {
    if basis.len() <= 1 {
        return true;
    }
    let g = gso(basis);
    let d = delta();
    for k in 1..basis.len() {
        let lhs = &g.norms[k];
        let rhs = (&d - &(&g.mu[k][k - 1] * &g.mu[k][k - 1])) * &g.norms[k - 1];
        if *lhs < rhs {
            return false;
        }
    }
    true
}

/// Both bases generate the same lattice: each vector of one is an integer
/// combination of the other.
pub fn same_lattice(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> bool {
    expresses_all(a, b) && expresses_all(b, a)
}

fn expresses_all(basis: &[Vec<BigInt>], targets: &[Vec<BigInt>]) -> bool {
    targets.iter().all(|t| expresses_over_z(basis, t))
}

/// Solve `x * basis = target` exactly and check integrality.
fn expresses_over_z(basis: &[Vec<BigInt>], target: &[BigInt]) -> bool {
    // Solve the (dim x n) transposed system by rational elimination.
    let n = basis.len();
    let dim = target.len();
    let mut m: Vec<Vec<Rational>> = (0..dim)
        .map(|d| {
            let mut row: Vec<Rational> = (0..n)
                .map(|i| Rational::from_integer(basis[i][d].clone()))
                .collect();
            row.push(Rational::from_integer(target[d].clone()));
            row
        })
        .collect();
    // forward elimination
    let mut r = 0usize;
    let mut pivots = vec![];
    for col in 0..n {
        let piv = (r..dim).find(|&i| !m[i][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, piv);
        let inv = m[r][col].recip();
        for j in col..=n {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..dim {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let s = &f * &m[r][j];
                    m[i][j] -= s;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    // consistency: zero rows must have zero rhs
    for i in r..dim {
        if !m[i][n].is_zero() {
            return false;
        }
    }
    // integrality of the solution coordinates
    for (row, _col) in pivots.iter().enumerate() {
        if !m[row][n].is_integer() {
            return false;
        }
    }
    true
}

/// Gram determinant of the basis (det of B B^T), an invariant of the
/// lattice together with the basis cardinality.
pub fn gram_determinant(basis: &[Vec<BigInt>]) -> Rational {
    let n = basis.len();
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| dot(&basis[i], &basis[j])).collect())
        .collect();
    // rational Gaussian determinant
    let mut det = Rational::from_integer(BigInt::from(1));
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        for i in col + 1..n {
            if !m[i][col].is_zero() {
                let f = &m[i][col] * &inv;
                for j in col..n {
                    let s = &f * &m[col][j];
                    m[i][j] -= s;
                }
            }
        }
    }
    det
}
