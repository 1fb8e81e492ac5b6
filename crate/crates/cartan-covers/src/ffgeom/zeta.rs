//! Zeta numerators from point counts (Newton's identities + functional
//! equation) and the odd-Jacobian-order probe for 2-torsion triviality.

use super::{count_points, smoothness_check, weil_bound_ok, Model};
use crate::exactnum::{make_ext_field, FieldCtx};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Frobenius data of a genus-g curve over F_l: the counts over
/// F_l, ..., F_{l^g}, the zeta numerator P(T) of degree 2g, and the
/// Jacobian order P(1).
#[derive(Clone, Debug)]
pub struct ZetaData {
    pub l: u64,
    pub genus: u32,
    pub counts: Vec<u128>,
    /// P(T) coefficients, constant term first; P(0) = 1.
    pub numerator: Vec<BigInt>,
    pub jacobian_order: BigInt,
}

impl ZetaData {
    /// The functional equation P(T) = l^g T^(2g) P(1/(lT)), coefficientwise:
    /// c_(2g-j) = l^(g-j) c_j.
    pub fn functional_equation_ok(&self) -> bool {
        let g = self.genus as usize;
        let l = BigInt::from(self.l);
        for j in 0..=g {
            let lhs = &self.numerator[2 * g - j];
            let rhs = l.pow((g - j) as u32) * &self.numerator[j];
            if *lhs != rhs {
                return false;
            }
        }
        true
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Assemble P(T) from the g point counts: power sums
/// `s_k = l^k + 1 - N_k` give the first g elementary symmetric functions
/// by Newton's identities; the functional equation supplies the rest.
/// Inconsistent counts (Weil violations, non-integral Newton steps, or
/// out-of-bound coefficients) are rejected.
pub fn zeta_from_counts(l: u64, genus: u32, counts: &[u128]) -> Result<ZetaData> {
    if genus == 0 {
        return Ok(ZetaData {
            l,
            genus,
            counts: counts.to_vec(),
            numerator: vec![BigInt::one()],
            jacobian_order: BigInt::one(),
        });
    }
    if counts.len() != genus as usize {
        return Err(Error::InconsistentCounts(format!(
            "need {} counts, got {}",
            genus,
            counts.len()
        )));
    }
    let g = genus as usize;
    let lb = BigInt::from(l);
    let mut s = vec![BigInt::zero()]; // s[0] unused
    for (k, &n) in counts.iter().enumerate() {
        let qk = lb.pow((k + 1) as u32);
        if !weil_bound_ok(n, qk.to_u128_checked()?, genus) {
            return Err(Error::InconsistentCounts(format!(
                "count {} over F_{}^{} violates the Weil bound for genus {}",
                n,
                l,
                k + 1,
                genus
            )));
        }
        s.push(qk + 1 - BigInt::from(n));
    }
    // Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} s_i
    let mut e = vec![BigInt::one()];
    for k in 1..=g {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(k as u32));
        if !r.is_zero() {
            return Err(Error::InconsistentCounts(
                "Newton identity produced a non-integral coefficient".into(),
            ));
        }
        e.push(q);
    }
    let mut c = vec![BigInt::zero(); 2 * g + 1];
    for (j, ej) in e.iter().enumerate() {
        c[j] = if j % 2 == 0 { ej.clone() } else { -ej };
    }
    for j in 0..g {
        c[2 * g - j] = lb.pow((g - j) as u32) * &c[j];
    }
    // coefficient bounds |c_j| <= C(2g, j) l^(j/2): squared exact form
    for (j, cj) in c.iter().enumerate() {
        let bound_sq = binomial(2 * genus, j as u32).pow(2) * lb.pow(j as u32);
        if cj * cj > bound_sq {
            return Err(Error::InconsistentCounts(format!(
                "zeta coefficient c_{} = {} exceeds the Weil coefficient bound",
                j, cj
            )));
        }
    }
    let order: BigInt = c.iter().sum();
    if !order.is_positive() {
        return Err(Error::InconsistentCounts(
            "Jacobian order must be positive".into(),
        ));
    }
    let z = ZetaData {
        l,
        genus,
        counts: counts.to_vec(),
        numerator: c,
        jacobian_order: order,
    };
    debug_assert!(z.functional_equation_ok());
    Ok(z)
}

trait ToU128Checked {
    fn to_u128_checked(&self) -> Result<u128>;
}

impl ToU128Checked for BigInt {
    fn to_u128_checked(&self) -> Result<u128> {
        u128::try_from(self.clone())
            .map_err(|_| Error::InconsistentCounts("field order exceeds u128".into()))
    }
}

#[derive(Clone, Debug)]
pub enum ParityOutcome {
    Odd(ZetaData),
    Even(ZetaData),
    SkippedBadReduction,
    SkippedTooLarge,
}

#[derive(Clone, Debug)]
pub struct ParityTrial {
    pub l: u64,
    pub outcome: ParityOutcome,
}

#[derive(Clone, Debug)]
pub struct ParityProbe {
    pub witness: (u64, ZetaData),
    pub trials: Vec<ParityTrial>,
}

/// Count the model over F_l, ..., F_{l^g} for each prime in turn and
/// report the Jacobian-order parity. Primes of bad reduction are skipped:
/// a parity read off a singular reduction would be meaningless.
pub fn parity_trials(model: &Model, primes: &[u64], force: bool) -> Result<Vec<ParityTrial>> {
    let genus = model
        .genus
        .ok_or_else(|| Error::Invalid("parity probe needs the model genus".into()))?;
    let mut trials = vec![];
    for &l in primes {
        if l == 2 {
            return Err(Error::DegenerateInput(
                "2-torsion parity cannot be probed at l = 2".into(),
            ));
        }
        if !crate::exactnum::is_prime_u64(l) {
            return Err(Error::CompositeModulus(l));
        }
        let ctx: Arc<FieldCtx> = Arc::new(crate::exactnum::make_prime_field(l)?);
        let smooth = match smoothness_check(model, &ctx, force) {
            Ok(r) => r.smooth,
            Err(Error::BadReduction(_)) => false,
            Err(e) => return Err(e),
        };
        if !smooth {
            trials.push(ParityTrial {
                l,
                outcome: ParityOutcome::SkippedBadReduction,
            });
            continue;
        }
        let mut counts = vec![];
        let mut too_large = false;
        for k in 1..=genus as usize {
            let ext: Arc<FieldCtx> = Arc::new(make_ext_field(l, k)?);
            match count_points(model, &ext, force) {
                Ok(n) => counts.push(n),
                Err(Error::EnumerationTooLarge { .. }) => {
                    too_large = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if too_large {
            trials.push(ParityTrial {
                l,
                outcome: ParityOutcome::SkippedTooLarge,
            });
            continue;
        }
        let zeta = zeta_from_counts(l, genus, &counts)?;
        let odd = zeta.jacobian_order.is_odd();
        trials.push(ParityTrial {
            l,
            outcome: if odd {
                ParityOutcome::Odd(zeta)
            } else {
                ParityOutcome::Even(zeta)
            },
        });
        if odd {
            break;
        }
    }
    Ok(trials)
}

/// First prime in the list with odd Jacobian order over F_l, witnessing
/// trivial rational 2-torsion. `Exhausted` when no listed prime works.
pub fn jacobian_parity_probe(model: &Model, primes: &[u64], force: bool) -> Result<ParityProbe> {
    let trials = parity_trials(model, primes, force)?;
    for t in &trials {
        if let ParityOutcome::Odd(z) = &t.outcome {
            return Ok(ParityProbe {
                witness: (t.l, z.clone()),
                trials,
            });
        }
    }
    Err(Error::Exhausted)
}
