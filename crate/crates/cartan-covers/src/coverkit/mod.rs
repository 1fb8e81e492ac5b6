//! The double-cover pipeline at the level the data makes checkable:
//! ramification loci via resultants, odd-order vanishing checks, model
//! assembly t^2 = q, CM-discriminant verification, elliptic point counts,
//! and desingularization-lift verification.

use crate::exactnum::{
    is_prime_u64, make_prime_field, reduce_rational, squarefree_kernel, Coeff, FieldCtx, FqElem,
    Rational,
};
use crate::ffgeom::{enumerate_points, Ambient, Model};
use crate::polyalg::{
    odd_multiplicity_part, resultant_wrt, roots_in_field, squarefree_part, MPoly, UPoly,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// A ratio of polynomials (num/den) sharing one variable list.
#[derive(Clone, Debug)]
pub struct RatioPoly {
    pub num: MPoly<Rational>,
    pub den: MPoly<Rational>,
}

/// Output of the ramification-locus resultant computation.
#[derive(Clone, Debug)]
pub struct RamificationReport {
    /// The eliminating resultant, univariate in the remaining variable.
    pub resultant: UPoly<Rational>,
    /// Product of the factors of odd multiplicity (squarefree).
    pub simple_part: UPoly<Rational>,
    /// Rational roots stripped from the simple part.
    pub rational_roots: Vec<Rational>,
    /// The simple part with rational linear factors removed: the candidate
    /// carrying the nontrivial Galois orbits.
    pub selected: UPoly<Rational>,
    /// Irreducible-factor degree patterns of `selected` modulo sample
    /// primes: (prime, sorted list of factor degrees).
    pub orbit_degrees: Vec<(u64, Vec<usize>)>,
}

/// Resultant of the affine curve and `j_num - shift * j_den` with respect
/// to `eliminate`, then the odd-multiplicity factor, rational-root
/// stripping and factor-degree patterns modulo sample primes.
pub fn ramification_locus(
    curve: &MPoly<Rational>,
    j_num: &MPoly<Rational>,
    j_den: &MPoly<Rational>,
    shift: &Rational,
    eliminate: &str,
) -> Result<RamificationReport> {
    let h = j_num.sub_poly(&j_den.scale(shift));
    let res = resultant_wrt(curve, &h, eliminate)?;
    if res.is_zero() {
        return Err(Error::DegenerateInput(
            "resultant vanishes identically: the shifted map shares a component with the curve"
                .into(),
        ));
    }
    sample_denominator_check(curve, j_den)?;
    let res_u = res.to_upoly()?;
    let simple_part = odd_multiplicity_part(&res_u)?;
    let (selected, rational_roots) = strip_rational_roots(&simple_part);
    let orbit_degrees = factor_degree_patterns(&selected, 3)?;
    Ok(RamificationReport {
        resultant: res_u,
        simple_part,
        rational_roots,
        selected,
        orbit_degrees,
    })
}

/// The denominator of the j-map must not vanish identically on the curve;
/// checked pointwise modulo a sample prime.
fn sample_denominator_check(curve: &MPoly<Rational>, j_den: &MPoly<Rational>) -> Result<()> {
    if j_den.is_zero() {
        return Err(Error::DegenerateInput("zero j-map denominator".into()));
    }
    if j_den.total_degree() == Some(0) {
        return Ok(());
    }
    for l in [5u64, 7, 11, 13, 17, 19, 23] {
        let ctx: Arc<FieldCtx> = Arc::new(make_prime_field(l)?);
        let (curve_red, den_red) = match (curve.reduce_mod(&ctx), j_den.reduce_mod(&ctx)) {
            (Ok(c), Ok(d)) => (c, d),
            _ => continue,
        };
        let model = Model::new(
            "sample",
            Ambient::Affine(curve.arity()),
            curve.vars().to_vec(),
            vec![curve.clone()],
            None,
        )?;
        let pts = match enumerate_points(&model, &ctx, false) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if pts.is_empty() {
            continue;
        }
        let _ = curve_red;
        let mut all_zero = true;
        for i in 0..pts.len() {
            let pt = pts.decode(i);
            if !den_red.eval(&pt)?.is_zero() {
                all_zero = false;
                break;
            }
        }
        if all_zero {
            return Err(Error::DegenerateInput(format!(
                "j-map denominator vanishes at every curve point mod {}",
                l
            )));
        }
        return Ok(());
    }
    Ok(())
}

fn strip_rational_roots(f: &UPoly<Rational>) -> (UPoly<Rational>, Vec<Rational>) {
    let mut out = f.clone();
    let mut roots = vec![];
    loop {
        let root = find_rational_root(&out);
        match root {
            Some(r) => {
                let linear = UPoly::from_coeffs(f.var(), vec![-r.clone(), Rational::one()]);
                out = out.exact_div_upoly(&linear).expect("root divides");
                roots.push(r);
            }
            None => break,
        }
    }
    (out, roots)
}

/// Rational root search by the rational root theorem on the primitive
/// integer form (divisor enumeration capped at 10^6 candidates).
fn find_rational_root(f: &UPoly<Rational>) -> Option<Rational> {
    let deg = f.degree()?;
    if deg == 0 {
        return None;
    }
    if f.coeff(0).map(|c| c.is_zero()) == Some(true) {
        return Some(Rational::zero());
    }
    // clear to integer coefficients
    let mut lcm = BigInt::one();
    for c in f.coeffs() {
        lcm = num_integer::Integer::lcm(&lcm, c.denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let lead = ints.last().unwrap().clone();
    let cons = ints.first().unwrap().clone();
    let pd = small_divisors(&cons.abs())?;
    let qd = small_divisors(&lead.abs())?;
    for p in &pd {
        for q in &qd {
            for sign in [1i64, -1] {
                let cand = Rational::new(p * sign, q.clone());
                if f.eval(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = u64::try_from(n.clone()).ok()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = vec![];
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            out.push(BigInt::from(n / d));
        }
        d += 1;
        if out.len() > 4096 {
            return None;
        }
    }
    Some(out)
}

/// Irreducible-factor degree multisets of f modulo the first `samples`
/// odd primes of good reduction, by distinct-degree factorization.
pub fn factor_degree_patterns(
    f: &UPoly<Rational>,
    samples: usize,
) -> Result<Vec<(u64, Vec<usize>)>> {
    let mut out = vec![];
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    for l in [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43] {
        if out.len() >= samples {
            break;
        }
        let ctx: Arc<FieldCtx> = Arc::new(make_prime_field(l)?);
        let red = match f.reduce_mod(&ctx) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if red.degree() != f.degree() {
            continue; // leading coefficient dropped: bad sample
        }
        let sf = squarefree_part(&red)?;
        if sf.degree() != red.degree() {
            continue; // repeated factors mod l: bad sample
        }
        let degrees = distinct_degree_pattern(&sf, &ctx);
        out.push((l, degrees));
    }
    Ok(out)
}

fn distinct_degree_pattern(f: &UPoly<FqElem>, ctx: &Arc<FieldCtx>) -> Vec<usize> {
    let mut degrees = vec![];
    let mut g = f.monic();
    let x = UPoly::from_coeffs(
        f.var(),
        vec![FqElem::zero(ctx.clone()), FqElem::one(ctx.clone())],
    );
    let mut frob = x.clone();
    let mut d = 0usize;
    while let Some(deg) = g.degree() {
        if deg == 0 {
            break;
        }
        d += 1;
        if 2 * d > deg {
            degrees.push(deg); // remaining factor is irreducible
            break;
        }
        frob = upoly_pow_q_mod(&frob, ctx, &g);
        let diff = frob.sub_upoly(&x);
        let common = g.gcd_monic(&diff);
        if let Some(cd) = common.degree() {
            if cd > 0 {
                for _ in 0..cd / d {
                    degrees.push(d);
                }
                g = g.exact_div_upoly(&common).expect("ddf factor divides");
                frob = frob.divrem(&g).1;
            }
        }
    }
    degrees.sort_unstable();
    degrees
}

fn upoly_pow_q_mod(
    base: &UPoly<FqElem>,
    ctx: &Arc<FieldCtx>,
    modulus: &UPoly<FqElem>,
) -> UPoly<FqElem> {
    let mut acc = UPoly::from_coeffs(base.var(), vec![FqElem::one(ctx.clone())]);
    let mut b = base.divrem(modulus).1;
    let mut e = ctx.order();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_upoly(&b).divrem(modulus).1;
        }
        b = b.mul_upoly(&b).divrem(modulus).1;
        e >>= 1;
    }
    acc
}

/// An affine double cover t^2 = q over a base plane curve.
#[derive(Clone, Debug)]
pub struct CoverModel {
    pub base: Model,
    pub q: MPoly<Rational>,
    pub cover: Model,
    /// (point, expected CM discriminant) pairs for kernel checks.
    pub kernel_checks: Vec<((Rational, Rational), i64)>,
}

/// Clear the denominator of f by the even power y^clearing_exponent and
/// assemble the cover model `base = 0, t^2 - q = 0`.
pub fn build_double_cover(
    base: &Model,
    f: &RatioPoly,
    clearing_exponent: i64,
) -> Result<CoverModel> {
    if clearing_exponent < 0 || clearing_exponent % 2 != 0 {
        return Err(Error::OddClearingExponent(clearing_exponent));
    }
    if !matches!(base.ambient, Ambient::Affine(2)) {
        return Err(Error::DegenerateInput(
            "double cover base must be an affine plane curve".into(),
        ));
    }
    let yi = 1usize; // base variables are (x, y)
    let vars: Vec<&str> = base.vars.iter().map(|s| s.as_str()).collect();
    let y = MPoly::var(&vars, yi, Rational::one());
    let mut ypow = MPoly::constant(&vars, Rational::one());
    for _ in 0..clearing_exponent {
        ypow = ypow.mul_poly(&y);
    }
    let num = f.num.mul_poly(&ypow);
    let q = num.exact_div(&f.den).ok_or_else(|| {
        Error::NotCleared(format!(
            "y^{} does not clear the denominator {}",
            clearing_exponent, f.den
        ))
    })?;
    let cover_vars: Vec<String> = base
        .vars
        .iter()
        .cloned()
        .chain(std::iter::once("t".to_string()))
        .collect();
    let cvars: Vec<&str> = cover_vars.iter().map(|s| s.as_str()).collect();
    let mut cover_eqs: Vec<MPoly<Rational>> = base
        .equations
        .iter()
        .map(|e| extend_vars(e, &cvars))
        .collect();
    let t_sq = MPoly::var(&cvars, 2, Rational::one()).pow(2);
    cover_eqs.push(t_sq.sub_poly(&extend_vars(&q, &cvars)));
    let cover = Model::new(
        &format!("{}_cover", base.name),
        Ambient::Affine(3),
        cover_vars,
        cover_eqs,
        None,
    )?;
    Ok(CoverModel {
        base: base.clone(),
        q,
        cover,
        kernel_checks: vec![],
    })
}

/// Reinterpret a polynomial over a longer variable list (appended vars).
pub fn extend_vars(p: &MPoly<Rational>, vars: &[&str]) -> MPoly<Rational> {
    let extra = vars.len() - p.arity();
    let mut out = MPoly::zero(vars);
    for (mono, c) in p.terms() {
        let mut exps = mono.exps().to_vec();
        exps.extend(std::iter::repeat(0).take(extra));
        out.add_term(exps, c.clone());
    }
    out
}

/// Evaluate q at a rational point and compare its squarefree kernel with
/// the expected CM discriminant (up to rational squares, sign included).
pub fn cm_kernel_check(
    q: &MPoly<Rational>,
    point: (&Rational, &Rational),
    expected_discriminant: i64,
) -> Result<bool> {
    let v = q.eval(&[point.0.clone(), point.1.clone()])?;
    if v.is_zero() {
        return Err(Error::UndefinedValue(
            "q vanishes at the CM point; kernel undefined".into(),
        ));
    }
    let kernel = squarefree_kernel(&v)?;
    let expected = squarefree_kernel(&Rational::from_integer(BigInt::from(expected_discriminant)))?;
    Ok(kernel == expected)
}

#[derive(Clone, Debug)]
pub struct FiberReport {
    pub root_code: u64,
    /// (y-code, q-value code) for every curve point over the root.
    pub fibers: Vec<(u64, u64)>,
    pub matched: bool,
}

#[derive(Clone, Debug)]
pub struct OddVanishingReport {
    pub roots_found: usize,
    pub reports: Vec<FiberReport>,
    pub all_matched: bool,
}

/// For each root x0 of the sextic in the field, find the curve points
/// (x0, y0) of the base and require q(x0, y0) = 0 at one of them: the
/// ramification abscissas must carry vanishing fibers.
pub fn odd_vanishing_check(
    cover: &CoverModel,
    sextic: &UPoly<Rational>,
    ctx: &Arc<FieldCtx>,
) -> Result<OddVanishingReport> {
    let roots = roots_in_field(sextic, ctx)?;
    let q_red = cover.q.reduce_mod(ctx)?;
    let base_eqs: Vec<MPoly<FqElem>> = cover
        .base
        .equations
        .iter()
        .map(|e| e.reduce_mod(ctx))
        .collect::<Result<_>>()?;
    let mut reports = vec![];
    for (x0, _) in &roots {
        // y-candidates: roots of the first base equation specialized at x0
        let specialized: Vec<UPoly<FqElem>> = base_eqs
            .iter()
            .map(|e| e.substitute(0, x0).to_upoly())
            .collect::<Result<_>>()?;
        let mut fibers = vec![];
        let q_count = ctx.order() as u64;
        for ycode in 0..q_count {
            let y0 = FqElem::from_code(ctx.clone(), ycode);
            if specialized.iter().all(|f| f.eval(&y0).is_zero()) {
                let qv = q_red.eval(&[x0.clone(), y0.clone()])?;
                fibers.push((ycode, qv.code()));
            }
        }
        let matched = fibers.iter().any(|(_, qv)| *qv == 0);
        reports.push(FiberReport {
            root_code: x0.code(),
            fibers,
            matched,
        });
    }
    Ok(OddVanishingReport {
        roots_found: roots.len(),
        all_matched: reports.iter().all(|r| r.matched),
        reports,
    })
}

/// Elliptic point counts for the split Cartan curve and its Atkin-Lehner
/// quotient at level p^r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticCounts {
    pub p: u64,
    pub r: u32,
    pub e2_split: u128,
    pub e3_split: u128,
    pub e2_plus: u128,
    pub e3_plus: u128,
}

pub fn elliptic_point_counts(p: u64, r: u32) -> Result<EllipticCounts> {
    if !is_prime_u64(p) {
        return Err(Error::CompositeModulus(p));
    }
    if r == 0 {
        return Err(Error::DegenerateInput("level exponent must be >= 1".into()));
    }
    let pr1 = (p as u128).pow(r - 1);
    let e2_split = if p % 4 == 1 { 2 } else { 0 };
    let e3_split = if p % 3 == 1 { 2 } else { 0 };
    let e2_plus = if p == 2 {
        (2u128).pow(r - 1)
    } else if p % 4 == 1 {
        1 + pr1 * ((p as u128) - 1) / 2
    } else {
        pr1 * ((p as u128) + 1) / 2
    };
    let e3_plus = if p % 3 == 1 { 1 } else { 0 };
    Ok(EllipticCounts {
        p,
        r,
        e2_split,
        e3_split,
        e2_plus,
        e3_plus,
    })
}

#[derive(Clone, Debug)]
pub struct DesingReport {
    pub checked: usize,
    pub violations: usize,
    pub skipped: usize,
}

/// Pointwise verification of the desingularization lift: for each point P
/// of the canonical model with Z(P) != 0 and s_den(P) != 0, set
/// x = X/Z, y = Y/Z, t = s(P) * y^2 and check the base equation and
/// t^2 = q(x, y).
pub fn verify_desingularization(
    canonical: &Model,
    pi: &[MPoly<Rational>],
    s_num: &MPoly<Rational>,
    s_den: &MPoly<Rational>,
    cover: &CoverModel,
    ctx: &Arc<FieldCtx>,
    force: bool,
) -> Result<DesingReport> {
    if pi.len() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            got: pi.len(),
        });
    }
    let points = enumerate_points(canonical, ctx, force)?;
    let pi_red: Vec<MPoly<FqElem>> = pi
        .iter()
        .map(|f| f.reduce_mod(ctx))
        .collect::<Result<_>>()?;
    let sn = s_num.reduce_mod(ctx)?;
    let sd = s_den.reduce_mod(ctx)?;
    let q_red = cover.q.reduce_mod(ctx)?;
    let base_red: Vec<MPoly<FqElem>> = cover
        .base
        .equations
        .iter()
        .map(|e| e.reduce_mod(ctx))
        .collect::<Result<_>>()?;
    let mut checked = 0;
    let mut violations = 0;
    let mut skipped = 0;
    for i in 0..points.len() {
        let pt = points.decode(i);
        let xv = pi_red[0].eval(&pt)?;
        let yv = pi_red[1].eval(&pt)?;
        let zv = pi_red[2].eval(&pt)?;
        let sdv = sd.eval(&pt)?;
        if zv.is_zero() || sdv.is_zero() {
            skipped += 1;
            continue;
        }
        checked += 1;
        let zinv = zv.inv_elem().expect("nonzero");
        let x = xv.mul_elem(&zinv);
        let y = yv.mul_elem(&zinv);
        let s = sn.eval(&pt)?.mul_elem(&sdv.inv_elem().expect("nonzero"));
        let t = s.mul_elem(&y).mul_elem(&y);
        let base_ok = base_red
            .iter()
            .map(|e| e.eval(&[x.clone(), y.clone()]))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|v| v.is_zero());
        let qv = q_red.eval(&[x.clone(), y.clone()])?;
        let cover_ok = t.mul_elem(&t) == qv;
        if !(base_ok && cover_ok) {
            violations += 1;
        }
    }
    Ok(DesingReport {
        checked,
        violations,
        skipped,
    })
}

#[cfg(test)]
mod tests;
