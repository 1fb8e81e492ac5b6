//! Finite-field geometry engine: enumerate points of models, check
//! smoothness, count points over extensions, verify maps pointwise, count
//! double-cover points by character sums.
//!
//! Enumeration partitions the candidate space into disjoint index ranges
//! processed concurrently; the merge is ordered by range, so results are
//! identical for any thread count.

mod zeta;

pub use zeta::{jacobian_parity_probe, parity_trials, zeta_from_counts, ParityOutcome, ParityProbe, ParityTrial, ZetaData};

use crate::exactnum::{FieldCtx, FqElem, Rational};
use crate::polyalg::{jacobian_rank, MPoly};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Hard ceiling on scanned candidates unless `force` is set.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Projective(usize),
    Affine(usize),
}

impl Ambient {
    pub fn dim(&self) -> usize {
        match self {
            Ambient::Projective(n) | Ambient::Affine(n) => *n,
        }
    }

    pub fn coord_count(&self) -> usize {
        match self {
            Ambient::Projective(n) => n + 1,
            Ambient::Affine(n) => *n,
        }
    }
}

/// A named system of polynomial equations in a fixed ambient space.
#[derive(Clone, Debug)]
pub struct Model {
    pub name: String,
    pub ambient: Ambient,
    pub vars: Vec<String>,
    pub equations: Vec<MPoly<Rational>>,
    pub genus: Option<u32>,
}

impl Model {
    pub fn new(
        name: &str,
        ambient: Ambient,
        vars: Vec<String>,
        equations: Vec<MPoly<Rational>>,
        genus: Option<u32>,
    ) -> Result<Model> {
        let m = Model {
            name: name.to_string(),
            ambient,
            vars,
            equations,
            genus,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.vars.len() != self.ambient.coord_count() {
            return Err(Error::ArityMismatch {
                expected: self.ambient.coord_count(),
                got: self.vars.len(),
            });
        }
        for eq in &self.equations {
            if eq.arity() != self.vars.len() {
                return Err(Error::ArityMismatch {
                    expected: self.vars.len(),
                    got: eq.arity(),
                });
            }
            if matches!(self.ambient, Ambient::Projective(_))
                && !eq.is_zero()
                && eq.homogeneous_degree().is_none()
            {
                return Err(Error::Invalid(format!(
                    "projective model `{}` has a non-homogeneous equation",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// All rational points of a model over a fixed field, normalized and in
/// deterministic enumeration order. Points are stored as element codes.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub ctx: Arc<FieldCtx>,
    pub points: Vec<Vec<u64>>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn decode(&self, idx: usize) -> Vec<FqElem> {
        self.points[idx]
            .iter()
            .map(|&c| FqElem::from_code(self.ctx.clone(), c))
            .collect()
    }

    pub fn format_point(&self, idx: usize, projective: bool) -> String {
        let coords: Vec<String> = self
            .decode(idx)
            .iter()
            .map(|e| format!("{}", e))
            .collect();
        if projective {
            format!("({})", coords.join(" : "))
        } else {
            format!("({})", coords.join(", "))
        }
    }
}

/// A map between models: polynomial coordinates, or ratios of polynomials.
#[derive(Clone, Debug)]
pub enum MapSpec {
    Polys(Vec<MPoly<Rational>>),
    Ratios(Vec<(MPoly<Rational>, MPoly<Rational>)>),
}

impl MapSpec {
    pub fn arity(&self) -> usize {
        match self {
            MapSpec::Polys(v) => v.first().map(|p| p.arity()).unwrap_or(0),
            MapSpec::Ratios(v) => v.first().map(|(n, _)| n.arity()).unwrap_or(0),
        }
    }

    pub fn coord_count(&self) -> usize {
        match self {
            MapSpec::Polys(v) => v.len(),
            MapSpec::Ratios(v) => v.len(),
        }
    }
}

/// A polynomial reduced to field-element codes for the enumeration kernel.
pub(crate) struct CompiledPoly {
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub(crate) fn compile(p: &MPoly<Rational>, ctx: &Arc<FieldCtx>) -> Result<CompiledPoly> {
        let red = p.reduce_mod(ctx)?;
        let mut terms = vec![];
        for (mono, c) in red.terms() {
            let mut factors = vec![];
            for (i, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    factors.push((i, e));
                }
            }
            terms.push((c.code(), factors));
        }
        Ok(CompiledPoly { terms })
    }

    #[inline]
    pub(crate) fn eval(&self, ctx: &FieldCtx, point: &[u64]) -> u64 {
        let mut acc = 0u64;
        for (coeff, factors) in &self.terms {
            let mut t = *coeff;
            for &(var, exp) in factors {
                let x = point[var];
                let mut p = x;
                for _ in 1..exp {
                    p = ctx.code_mul(p, x);
                }
                t = ctx.code_mul(t, p);
            }
            acc = ctx.code_add(acc, t);
        }
        acc
    }
}

/// Candidate spaces with random-access decoding, so index ranges can be
/// scanned independently.
enum CandidateSpace {
    /// Normalized representatives of P^n: leading-1 position, then the
    /// remaining coordinates lexicographically (first coordinate most
    /// significant).
    Projective { q: u64, n: usize },
    Affine { q: u64, n: usize },
}

impl CandidateSpace {
    fn total(&self) -> u128 {
        match self {
            CandidateSpace::Projective { q, n } => {
                let mut acc = 0u128;
                for lead in 0..=*n {
                    acc += (*q as u128).pow((*n - lead) as u32);
                }
                acc
            }
            CandidateSpace::Affine { q, n } => (*q as u128).pow(*n as u32),
        }
    }

    fn decode(&self, mut idx: u128, out: &mut Vec<u64>) {
        match self {
            CandidateSpace::Projective { q, n } => {
                let mut lead = 0usize;
                loop {
                    let block = (*q as u128).pow((*n - lead) as u32);
                    if idx < block {
                        break;
                    }
                    idx -= block;
                    lead += 1;
                }
                out.clear();
                out.resize(n + 1, 0);
                out[lead] = 1;
                for pos in (lead + 1..=*n).rev() {
                    out[pos] = (idx % *q as u128) as u64;
                    idx /= *q as u128;
                }
            }
            CandidateSpace::Affine { q, n } => {
                out.clear();
                out.resize(*n, 0);
                for pos in (0..*n).rev() {
                    out[pos] = (idx % *q as u128) as u64;
                    idx /= *q as u128;
                }
            }
        }
    }
}

pub(crate) fn thread_count() -> usize {
    if let Ok(v) = std::env::var("CARTAN_COVERS_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn candidate_space(model: &Model, ctx: &Arc<FieldCtx>) -> Result<CandidateSpace> {
    let q = ctx.order();
    if q > u64::MAX as u128 {
        return Err(Error::UnsupportedField("field too large to enumerate".into()));
    }
    let q = q as u64;
    Ok(match model.ambient {
        Ambient::Projective(n) => CandidateSpace::Projective { q, n },
        Ambient::Affine(n) => CandidateSpace::Affine { q, n },
    })
}

fn check_budget(total: u128, force: bool) -> Result<()> {
    if total > ENUMERATION_LIMIT && !force {
        return Err(Error::EnumerationTooLarge {
            candidates: total,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Scan the candidate space in parallel chunks; collect the codes of the
/// candidates satisfying every equation, in enumeration order.
fn scan<T: Send>(
    space: &CandidateSpace,
    ctx: &Arc<FieldCtx>,
    eqs: &[CompiledPoly],
    collect: impl Fn(&mut Vec<T>, &[u64]) + Sync,
) -> Vec<T> {
    let total = space.total();
    let threads = thread_count().min(total.max(1) as usize).max(1);
    let chunk = total / threads as u128 + 1;
    let mut results: Vec<Vec<T>> = Vec::with_capacity(threads);
    std::thread::scope(|scope| {
        let mut handles = vec![];
        for t in 0..threads {
            let start = chunk * t as u128;
            let end = (start + chunk).min(total);
            let collect = &collect;
            handles.push(scope.spawn(move || {
                let mut found = vec![];
                let mut point = vec![];
                let mut idx = start;
                while idx < end {
                    space.decode(idx, &mut point);
                    if eqs.iter().all(|eq| eq.eval(ctx, &point) == 0) {
                        collect(&mut found, &point);
                    }
                    idx += 1;
                }
                found
            }));
        }
        for h in handles {
            results.push(h.join().expect("enumeration worker panicked"));
        }
    });
    results.into_iter().flatten().collect()
}

/// All `F_{l^k}`-points of the model: deduplicated (normalized
/// representatives), deterministic order.
pub fn enumerate_points(model: &Model, ctx: &Arc<FieldCtx>, force: bool) -> Result<PointSet> {
    model.validate()?;
    let space = candidate_space(model, ctx)?;
    check_budget(space.total(), force)?;
    let eqs: Vec<CompiledPoly> = model
        .equations
        .iter()
        .map(|e| CompiledPoly::compile(e, ctx))
        .collect::<Result<_>>()?;
    let points = scan(&space, ctx, &eqs, |acc: &mut Vec<Vec<u64>>, pt| {
        acc.push(pt.to_vec())
    });
    Ok(PointSet {
        ctx: ctx.clone(),
        points,
    })
}

/// Cardinality only; streams without materializing the point list.
pub fn count_points(model: &Model, ctx: &Arc<FieldCtx>, force: bool) -> Result<u128> {
    model.validate()?;
    let space = candidate_space(model, ctx)?;
    check_budget(space.total(), force)?;
    let eqs: Vec<CompiledPoly> = model
        .equations
        .iter()
        .map(|e| CompiledPoly::compile(e, ctx))
        .collect::<Result<_>>()?;
    let counts = scan(&space, ctx, &eqs, |acc: &mut Vec<u128>, _pt| {
        match acc.first_mut() {
            Some(c) => *c += 1,
            None => acc.push(1),
        }
    });
    Ok(counts.into_iter().sum())
}

/// The Weil inequality |N - (q + 1)| <= 2 g sqrt(q), checked exactly as
/// (N - q - 1)^2 <= 4 g^2 q.
pub fn weil_bound_ok(count: u128, q: u128, genus: u32) -> bool {
    let n = count as i128;
    let d = n - q as i128 - 1;
    (d * d) as u128 <= 4 * (genus as u128) * (genus as u128) * q
}

#[derive(Clone, Debug)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub expected_rank: usize,
    /// Points where the Jacobian rank differs from the expected rank of a
    /// smooth curve point, with the observed rank.
    pub witnesses: Vec<(Vec<u64>, usize)>,
    pub points_checked: usize,
}

/// A model is smooth (as a curve) over the field iff the Jacobian matrix
/// has rank `ambient dim - 1` at every rational point.
pub fn smoothness_check(model: &Model, ctx: &Arc<FieldCtx>, force: bool) -> Result<SmoothnessReport> {
    let points = enumerate_points(model, ctx, force)?;
    let expected = model.ambient.dim() - 1;
    let mut witnesses = vec![];
    for i in 0..points.len() {
        let pt = points.decode(i);
        let rank = jacobian_rank(&model.equations, &pt, ctx)?;
        if rank != expected {
            witnesses.push((points.points[i].clone(), rank));
        }
    }
    Ok(SmoothnessReport {
        smooth: witnesses.is_empty(),
        expected_rank: expected,
        witnesses,
        points_checked: points.len(),
    })
}

#[derive(Clone, Debug)]
pub struct MapCheckReport {
    pub checked: usize,
    pub violations: Vec<Vec<u64>>,
    pub skipped: usize,
}

/// Push every source point through the map and test the target equations
/// at the image. Undefined images (projectively all-zero, or a vanishing
/// ratio denominator) are counted as skipped.
pub fn verify_map_on_points(
    source: &Model,
    map: &MapSpec,
    target: &Model,
    ctx: &Arc<FieldCtx>,
    force: bool,
) -> Result<MapCheckReport> {
    if map.arity() != source.vars.len() {
        return Err(Error::ArityMismatch {
            expected: source.vars.len(),
            got: map.arity(),
        });
    }
    if map.coord_count() != target.vars.len() {
        return Err(Error::ArityMismatch {
            expected: target.vars.len(),
            got: map.coord_count(),
        });
    }
    let source_points = enumerate_points(source, ctx, force)?;
    let target_eqs: Vec<CompiledPoly> = target
        .equations
        .iter()
        .map(|e| CompiledPoly::compile(e, ctx))
        .collect::<Result<_>>()?;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut violations = vec![];
    match map {
        MapSpec::Polys(coords) => {
            let compiled: Vec<CompiledPoly> = coords
                .iter()
                .map(|c| CompiledPoly::compile(c, ctx))
                .collect::<Result<_>>()?;
            for pt in &source_points.points {
                let image: Vec<u64> = compiled.iter().map(|c| c.eval(ctx, pt)).collect();
                let defined = match target.ambient {
                    Ambient::Projective(_) => image.iter().any(|&c| c != 0),
                    Ambient::Affine(_) => true,
                };
                if !defined {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                if !target_eqs.iter().all(|eq| eq.eval(ctx, &image) == 0) {
                    violations.push(pt.clone());
                }
            }
        }
        MapSpec::Ratios(coords) => {
            let compiled: Vec<(CompiledPoly, CompiledPoly)> = coords
                .iter()
                .map(|(n, d)| {
                    Ok((
                        CompiledPoly::compile(n, ctx)?,
                        CompiledPoly::compile(d, ctx)?,
                    ))
                })
                .collect::<Result<_>>()?;
            for pt in &source_points.points {
                let mut image = Vec::with_capacity(compiled.len());
                let mut defined = true;
                for (n, d) in &compiled {
                    let dv = d.eval(ctx, pt);
                    if dv == 0 {
                        defined = false;
                        break;
                    }
                    let nv = n.eval(ctx, pt);
                    image.push(ctx.code_mul(nv, ctx.code_inv(dv)));
                }
                if !defined
                    || (matches!(target.ambient, Ambient::Projective(_))
                        && image.iter().all(|&c| c == 0))
                {
                    skipped += 1;
                    continue;
                }
                checked += 1;
                if !target_eqs.iter().all(|eq| eq.eval(ctx, &image) == 0) {
                    violations.push(pt.clone());
                }
            }
        }
    }
    Ok(MapCheckReport {
        checked,
        violations,
        skipped,
    })
}

/// Character-sum count of the affine double cover `t^2 = q(x_1..x_n)` over
/// the base: each base point P contributes `1 + chi(q(P))` points, with
/// the ramified fibers (q(P) = 0) contributing exactly one.
pub fn double_cover_count(base: &Model, q: &MPoly<Rational>, ctx: &Arc<FieldCtx>, force: bool) -> Result<u128> {
    if ctx.characteristic() == 2 {
        return Err(Error::UnsupportedField(
            "double cover counting needs odd characteristic".into(),
        ));
    }
    if q.arity() != base.vars.len() {
        return Err(Error::ArityMismatch {
            expected: base.vars.len(),
            got: q.arity(),
        });
    }
    let points = enumerate_points(base, ctx, force)?;
    let qc = CompiledPoly::compile(q, ctx)?;
    let euler_exp = (ctx.order() as u64 - 1) / 2;
    let mut total = 0u128;
    for pt in &points.points {
        let v = qc.eval(ctx, pt);
        if v == 0 {
            total += 1;
        } else if ctx.code_pow(v, euler_exp) == 1 {
            total += 2;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests;
