//! Finding polynomial relations among truncated q-series: exact nullspace
//! of the monomial-evaluation matrix, precision guards, LLL reduction of
//! integer relation bases, and rational-function recognition.

pub mod lll;
pub mod nullspace;

pub use lll::{gram_determinant, lll_reduce, lovasz_ok, same_lattice};

use crate::exactnum::Rational;
use crate::polyalg::MPoly;
use crate::qseries::QSeries;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// Certification guard: a relation of degree d among series on a genus-g
/// curve is identically zero once it vanishes through q^m with
/// m > d(2g - 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionGuard {
    pub genus: u32,
    pub degree: u32,
    /// Smallest admissible m: d(2g - 2) + 1.
    pub required: i64,
    /// Highest exponent through which vanishing was actually checked.
    pub available: i64,
}

impl PrecisionGuard {
    pub fn new(genus: u32, degree: u32, available: i64) -> Self {
        let required = degree as i64 * (2 * genus as i64 - 2) + 1;
        PrecisionGuard {
            genus,
            degree,
            required,
            available,
        }
    }

    pub fn certified(&self) -> bool {
        self.available >= self.required
    }
}

/// An integer basis of the degree-d relations among a series tuple.
#[derive(Clone, Debug)]
pub struct RelationBasis {
    pub degree: u32,
    /// Monomial exponent vectors in graded-lex (x1-dominant) order.
    pub monomials: Vec<Vec<u32>>,
    /// Primitive integer coefficient vectors, one per relation, sorted by
    /// (norm, lex).
    pub relations: Vec<Vec<BigInt>>,
    pub guard: PrecisionGuard,
}

impl RelationBasis {
    pub fn to_mpolys(&self, vars: &[&str]) -> Vec<MPoly<Rational>> {
        self.relations
            .iter()
            .map(|rel| {
                let mut p = MPoly::zero(vars);
                for (mono, c) in self.monomials.iter().zip(rel) {
                    p.add_term(mono.clone(), Rational::from_integer(c.clone()));
                }
                p
            })
            .collect()
    }
}

/// Exponent vectors of the degree-d monomials in g variables,
/// lexicographically descending (x1^d first). There are C(g+d-1, d).
pub fn monomials_of_degree(g: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![];
    let mut cur = vec![0u32; g];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32, g: usize) {
        if pos == g - 1 {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(out, cur, pos + 1, left - e, g);
        }
        cur[pos] = 0;
    }
    if g == 0 {
        return out;
    }
    rec(&mut out, &mut cur, 0, d, g);
    out
}

/// Degree <= d monomials, graded-lex descending (degree d block first).
pub fn monomials_up_to_degree(g: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![];
    for dd in (0..=d).rev() {
        out.extend(monomials_of_degree(g, dd));
    }
    out
}

fn integerize_all(basis: &[QSeries<Rational>]) -> Result<Vec<QSeries<Rational>>> {
    basis
        .iter()
        .map(|s| {
            s.try_integerize().ok_or_else(|| {
                Error::DomainMismatch("series has genuinely fractional exponents".into())
            })
        })
        .collect()
}

fn monomial_series(basis: &[QSeries<Rational>], mono: &[u32]) -> QSeries<Rational> {
    let mut acc: Option<QSeries<Rational>> = None;
    for (s, &e) in basis.iter().zip(mono) {
        if e == 0 {
            continue;
        }
        let p = s.pow_series(e);
        acc = Some(match acc {
            Some(a) => a.mul_series(&p),
            None => p,
        });
    }
    acc.unwrap_or_else(|| {
        // constant monomial 1
        let prec = basis.iter().map(|s| s.prec()).min().unwrap_or(1);
        QSeries::monomial(1, 0, num_traits::One::one(), prec)
    })
}

/// Assemble the coefficient matrix of the given monomial series: one row
/// per exponent from the lowest valuation through `prec - 1`.
fn coefficient_matrix(series: &[QSeries<Rational>]) -> (Vec<Vec<Rational>>, i64) {
    let prec = series.iter().map(|s| s.prec()).min().expect("nonempty");
    let emin = series
        .iter()
        .filter_map(|s| s.val())
        .min()
        .unwrap_or(0)
        .min(0);
    let mut rows = vec![];
    for e in emin..prec {
        let row: Vec<Rational> = series
            .iter()
            .map(|s| s.coeff(e).cloned().unwrap_or_else(Rational::zero))
            .collect();
        rows.push(row);
    }
    (rows, prec - 1)
}

/// The degree-d relation lattice of a tuple of integer-exponent series:
/// evaluate all degree-d monomials, take the exact right nullspace of the
/// coefficient matrix, and return a primitive integer basis.
///
/// `require_certified` turns an insufficient precision (m <= d(2g-2)) into
/// a `PrecisionTooLow` error instead of an uncertified result.
pub fn find_relations(
    basis: &[QSeries<Rational>],
    degree: u32,
    genus: u32,
    require_certified: bool,
) -> Result<RelationBasis> {
    if basis.is_empty() {
        return Err(Error::DegenerateInput("empty series basis".into()));
    }
    let basis = integerize_all(basis)?;
    let monomials = monomials_of_degree(basis.len(), degree);
    let evals: Vec<QSeries<Rational>> = monomials
        .iter()
        .map(|m| monomial_series(&basis, m))
        .collect();
    let (rows, available) = coefficient_matrix(&evals);
    let guard = PrecisionGuard::new(genus, degree, available);
    if require_certified && !guard.certified() {
        return Err(Error::PrecisionTooLow {
            required: guard.required,
            available: guard.available,
        });
    }
    let relations = nullspace::rational_nullspace(&rows);
    if relations.is_empty() {
        return Err(Error::EmptyBasis);
    }
    // soundness: each relation really kills every checked coefficient
    for rel in &relations {
        for row in &rows {
            let mut acc = Rational::zero();
            for (c, v) in row.iter().zip(rel) {
                acc += c * &Rational::from_integer(v.clone());
            }
            assert!(acc.is_zero(), "nullspace vector fails exact re-check");
        }
    }
    Ok(RelationBasis {
        degree,
        monomials,
        relations,
        guard,
    })
}

/// Outcome of substituting a candidate relation into a series tuple.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    /// Valuation of the residual when it is nonzero; for a residual that
    /// vanishes through the precision window this is the window bound.
    pub vanishing_order: i64,
    pub zero_to_precision: bool,
    pub guard: PrecisionGuard,
}

impl RelationCheck {
    pub fn certified(&self) -> bool {
        self.zero_to_precision && self.guard.certified()
    }
}

/// Substitute the series into F and report through which order the result
/// vanishes.
pub fn verify_relation(
    relation: &MPoly<Rational>,
    basis: &[QSeries<Rational>],
    genus: u32,
) -> Result<RelationCheck> {
    if relation.arity() != basis.len() {
        return Err(Error::ArityMismatch {
            expected: relation.arity(),
            got: basis.len(),
        });
    }
    let basis = integerize_all(basis)?;
    let prec = basis.iter().map(|s| s.prec()).min().unwrap_or(0);
    let mut residual = QSeries::zero_to(1, prec);
    for (mono, coeff) in relation.terms() {
        let t = monomial_series(&basis, mono.exps()).scale(coeff);
        residual = residual.add_series(&t);
    }
    let d = relation.total_degree().unwrap_or(0);
    let guard = PrecisionGuard::new(genus, d, residual.prec() - 1);
    match residual.val() {
        Some(v) => Ok(RelationCheck {
            vanishing_order: v,
            zero_to_precision: false,
            guard,
        }),
        None => Ok(RelationCheck {
            vanishing_order: residual.prec(),
            zero_to_precision: true,
            guard,
        }),
    }
}

/// Express `target` as p(h1..hg)/q(h1..hg) with deg p, deg q <= d: solve
/// for the nullspace of [monomials(h) | -target * monomials(h)] and pick a
/// solution whose denominator series is not identically zero. The result
/// is normalized so q's leading graded-lex coefficient is 1.
pub fn recognize_rational_function(
    target: &QSeries<Rational>,
    generators: &[QSeries<Rational>],
    degree: u32,
    genus: u32,
) -> Result<(MPoly<Rational>, MPoly<Rational>)> {
    if generators.is_empty() {
        return Err(Error::DegenerateInput("no generators".into()));
    }
    let target = target
        .try_integerize()
        .ok_or_else(|| Error::DomainMismatch("target has fractional exponents".into()))?;
    let gens = integerize_all(generators)?;
    let monos = monomials_up_to_degree(gens.len(), degree);
    let mut cols: Vec<QSeries<Rational>> = vec![];
    for m in &monos {
        cols.push(monomial_series(&gens, m));
    }
    for m in &monos {
        let qcol = monomial_series(&gens, m).mul_series(&target).neg_series();
        cols.push(qcol);
    }
    let (rows, available) = coefficient_matrix(&cols);
    let guard = PrecisionGuard::new(genus, degree, available);
    if !guard.certified() {
        return Err(Error::PrecisionTooLow {
            required: guard.required,
            available: guard.available,
        });
    }
    let vectors = nullspace::rational_nullspace(&rows);
    if vectors.is_empty() {
        return Err(Error::NoRelationFound);
    }
    let k = monos.len();
    for v in &vectors {
        let qpart = &v[k..];
        // denominator must be nonzero as a series
        let mut qseries = QSeries::zero_to(1, target.prec());
        for (m, c) in monos.iter().zip(qpart) {
            if !c.is_zero() {
                let t = monomial_series(&gens, m).scale(&Rational::from_integer(c.clone()));
                qseries = qseries.add_series(&t);
            }
        }
        if qseries.is_zero_to_prec() {
            continue;
        }
        // normalize on q's first nonzero coefficient in graded-lex order
        let lead = monos
            .iter()
            .zip(qpart)
            .find(|(_, c)| !c.is_zero())
            .map(|(_, c)| Rational::from_integer(c.clone()))
            .expect("nonzero q-part");
        let mut p = MPoly::zero(&var_names(gens.len()));
        let mut q = MPoly::zero(&var_names(gens.len()));
        for (m, c) in monos.iter().zip(&v[..k]) {
            p.add_term(m.clone(), Rational::from_integer(c.clone()) / &lead);
        }
        for (m, c) in monos.iter().zip(qpart) {
            q.add_term(m.clone(), Rational::from_integer(c.clone()) / &lead);
        }
        return Ok((p, q));
    }
    Err(Error::NoRelationFound)
}

fn var_names(g: usize) -> Vec<&'static str> {
    const NAMES: [&str; 12] = [
        "x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8", "x9", "x10", "x11", "x12",
    ];
    NAMES[..g].to_vec()
}

/// A certified integer relation of bounded bidegree between two Laurent
/// series, found modularly and verified exactly.
#[derive(Clone, Debug)]
pub struct BidegreeRelation {
    pub relation: MPoly<Rational>,
    pub bidegree: (u32, u32),
    pub guard: PrecisionGuard,
    pub primes_used: usize,
}

/// Find an integer polynomial F with deg_x F <= dx, deg_y F <= dy and
/// F(x(q), y(q)) = 0 through the available precision. The nullspace is
/// computed modulo large primes and CRT-lifted; the lifted relation is
/// re-verified by exact rational arithmetic, so a returned relation is
/// sound regardless of the modular shortcut.
pub fn find_relation_bidegree(
    x: &QSeries<Rational>,
    y: &QSeries<Rational>,
    dx: u32,
    dy: u32,
    genus: u32,
    var_names: (&str, &str),
) -> Result<BidegreeRelation> {
    let x = x
        .try_integerize()
        .ok_or_else(|| Error::DomainMismatch("x has fractional exponents".into()))?;
    let y = y
        .try_integerize()
        .ok_or_else(|| Error::DomainMismatch("y has fractional exponents".into()))?;
    let prec = x.prec().min(y.prec());
    let degree = dx + dy;
    let guard = PrecisionGuard::new(genus, degree, prec - 1);
    if !guard.certified() {
        return Err(Error::PrecisionTooLow {
            required: guard.required,
            available: guard.available,
        });
    }
    let vx = x.val().ok_or(Error::DegenerateInput("x is zero".into()))?;
    let vy = y.val().ok_or(Error::DegenerateInput("y is zero".into()))?;
    let emin = (0..=dx as i64)
        .flat_map(|i| (0..=dy as i64).map(move |j| i * vx + j * vy))
        .min()
        .unwrap()
        .min(0);

    let primes = nullspace::modular_primes(10);
    let mut residue_vectors: Vec<(u64, Vec<u64>)> = vec![];
    for (used, &p) in primes.iter().enumerate() {
        let v = bidegree_nullvector_mod(&x, &y, dx, dy, emin, prec, p)?;
        let v = match v {
            Some(v) => v,
            // zero nullity mod p certifies zero nullity over Q
            None => return Err(Error::NoRelationFound),
        };
        residue_vectors.push((p, v));
        // the RREF-normalized entries are rationals; reconstruct them from
        // the combined modulus, then clear to a primitive integer vector
        let modulus = residue_vectors
            .iter()
            .fold(BigInt::from(1u32), |acc, (q, _)| acc * BigInt::from(*q));
        let lift = nullspace::crt_balanced(&residue_vectors);
        let rationals: Option<Vec<Rational>> = lift
            .iter()
            .map(|r| nullspace::rational_reconstruct(r, &modulus))
            .collect();
        let rationals = match rationals {
            Some(v) => v,
            None => continue, // need more primes
        };
        let ints = nullspace::primitive_integer(&rationals);
        let relation = bidegree_mpoly(&ints, dx, dy, var_names);
        // exact verification over Q makes the modular shortcut sound
        if bidegree_residual_is_zero(&relation, &x, &y) {
            return Ok(BidegreeRelation {
                relation,
                bidegree: (dx, dy),
                guard,
                primes_used: used + 1,
            });
        }
    }
    Err(Error::Invalid(
        "modular lift failed exact verification; coefficients exceed the CRT bound".into(),
    ))
}

fn bidegree_mpoly(
    coeffs: &[BigInt],
    dx: u32,
    dy: u32,
    var_names: (&str, &str),
) -> MPoly<Rational> {
    let mut p = MPoly::zero(&[var_names.0, var_names.1]);
    let mut idx = 0;
    for i in 0..=dx {
        for j in 0..=dy {
            p.add_term(vec![i, j], Rational::from_integer(coeffs[idx].clone()));
            idx += 1;
        }
    }
    p
}

fn bidegree_residual_is_zero(
    relation: &MPoly<Rational>,
    x: &QSeries<Rational>,
    y: &QSeries<Rational>,
) -> bool {
    // Horner in y over series in x keeps the series multiplications linear
    // in the bidegree
    let dy = relation.degree_in(1).unwrap_or(0);
    let prec = x.prec().min(y.prec());
    let mut acc = QSeries::zero_to(1, prec);
    for j in (0..=dy).rev() {
        acc = acc.mul_series(y);
        // coefficient of y^j as a polynomial in x, evaluated at the series
        let mut slice = QSeries::zero_to(1, prec);
        for (mono, c) in relation.terms() {
            if mono.exps()[1] == j {
                let t = x.pow_series(mono.exps()[0]).scale(c);
                slice = slice.add_series(&t);
            }
        }
        acc = acc.add_series(&slice);
    }
    acc.is_zero_to_prec()
}

/// One modular nullspace vector (RREF-normalized) of the bidegree system,
/// or None when the nullspace is trivial mod p.
fn bidegree_nullvector_mod(
    x: &QSeries<Rational>,
    y: &QSeries<Rational>,
    dx: u32,
    dy: u32,
    emin: i64,
    prec: i64,
    p: u64,
) -> Result<Option<Vec<u64>>> {
    let window = (prec - emin) as usize;
    let to_vec = |s: &QSeries<Rational>| -> Result<Vec<u64>> {
        let mut out = vec![0u64; window];
        for (e, c) in s.residues_mod(p)? {
            let idx = (e - emin) as usize;
            if idx < window {
                out[idx] = c;
            }
        }
        Ok(out)
    };
    // dense coefficient windows indexed from emin
    let xv = to_vec(x)?;
    let yv = to_vec(y)?;
    let one = {
        let mut v = vec![0u64; window];
        v[(-emin) as usize] = 1;
        v
    };
    let mulmod = |a: &[u64], b: &[u64]| -> Vec<u64> {
        // exponents are absolute: entry i is exponent emin + i; the product
        // of exponents (emin+i) + (emin+j) lands at index i + j + emin
        let mut out = vec![0u64; window];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                let idx = i as i64 + j as i64 + emin;
                if idx < 0 || idx >= window as i64 {
                    continue;
                }
                let prod = (ai as u128 * bj as u128 % p as u128) as u64;
                let slot = &mut out[idx as usize];
                *slot = ((*slot as u128 + prod as u128) % p as u128) as u64;
            }
        }
        out
    };
    let mut xp = vec![one.clone()];
    for _ in 0..dx {
        let next = mulmod(xp.last().unwrap(), &xv);
        xp.push(next);
    }
    let mut yp = vec![one.clone()];
    for _ in 0..dy {
        let next = mulmod(yp.last().unwrap(), &yv);
        yp.push(next);
    }
    let ncols = ((dx + 1) * (dy + 1)) as usize;
    let mut cols = Vec::with_capacity(ncols);
    for i in 0..=dx as usize {
        for j in 0..=dy as usize {
            cols.push(mulmod(&xp[i], &yp[j]));
        }
    }
    let rows: Vec<Vec<u64>> = (0..window)
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let basis = nullspace::nullspace_mod_p(&rows, p);
    Ok(basis.into_iter().next())
}
