//! Prime fields and extension fields in polynomial basis.
//!
//! An element of `F_{p^k}` is a coordinate vector of k residues mod p with
//! respect to the power basis of the context's modulus. Contexts are
//! immutable after construction and shared behind `Arc`; small fields
//! additionally carry lazily built operation tables keyed by element codes
//! (`sum c_i p^i`), which is what the point-enumeration kernels use.

use super::primality::{is_prime_u64, powmod};
use crate::{Error, Result};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Largest field order for which full multiplication/addition tables are
/// precomputed (q^2 entries each). 1400 covers every field the built-in
/// verification suite enumerates, 11^3 = 1331 included.
const TABLE_LIMIT: u64 = 1400;

pub struct FieldCtx {
    p: u64,
    k: usize,
    /// Monic modulus, low-degree coefficients first, length k+1. None iff k = 1.
    modulus: Option<Vec<u64>>,
    order: u128,
    tables: OnceLock<FqTables>,
}

pub(crate) struct FqTables {
    pub q: u32,
    pub mul: Vec<u32>,
    pub add: Vec<u32>,
    pub neg: Vec<u32>,
    pub inv: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{{{}^{}}}", self.p, self.k)
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FieldCtx {
    pub fn prime_field(l: u64) -> Result<FieldCtx> {
        if !is_prime_u64(l) {
            return Err(Error::CompositeModulus(l));
        }
        Ok(FieldCtx {
            p: l,
            k: 1,
            modulus: None,
            order: l as u128,
            tables: OnceLock::new(),
        })
    }

    pub fn ext_field(l: u64, k: usize) -> Result<FieldCtx> {
        if !is_prime_u64(l) {
            return Err(Error::CompositeModulus(l));
        }
        if k == 0 {
            return Err(Error::UnsupportedField("degree must be >= 1".into()));
        }
        if k == 1 {
            return Self::prime_field(l);
        }
        let order = (l as u128).checked_pow(k as u32).ok_or_else(|| {
            Error::UnsupportedField(format!("field order {}^{} too large", l, k))
        })?;
        if order > u64::MAX as u128 {
            return Err(Error::UnsupportedField(format!(
                "field order {}^{} exceeds 2^64",
                l, k
            )));
        }
        let modulus = smallest_irreducible(l, k);
        Ok(FieldCtx {
            p: l,
            k,
            modulus: Some(modulus),
            order,
            tables: OnceLock::new(),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    // ---- scalar residue helpers (prime subfield) ----

    pub(crate) fn mul_residue(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub(crate) fn pow_residue(&self, a: u64, e: u64) -> u64 {
        powmod(a, e, self.p)
    }

    pub(crate) fn inv_residue(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        powmod(a, self.p - 2, self.p)
    }

    // ---- coordinate-vector arithmetic ----

    fn add_vec(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect()
    }

    fn sub_vec(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| if x >= y { x - y } else { x + self.p - y })
            .collect()
    }

    fn neg_vec(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect()
    }

    fn mul_vec(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if self.k == 1 {
            return vec![self.mul_residue(a[0], b[0])];
        }
        let k = self.k;
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % self.p as u128;
            }
        }
        let modulus = self.modulus.as_ref().expect("extension field");
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..k {
                let m = modulus[i] as u128;
                if m != 0 {
                    // x^d = -sum m_i x^{d-k+i}
                    let idx = d - k + i;
                    let sub = c * m % self.p as u128;
                    prod[idx] = (prod[idx] + self.p as u128 - sub) % self.p as u128;
                }
            }
        }
        prod[..k].iter().map(|&x| x as u64).collect()
    }

    fn inv_vec(&self, a: &[u64]) -> Option<Vec<u64>> {
        if a.iter().all(|&x| x == 0) {
            return None;
        }
        if self.k == 1 {
            return Some(vec![self.inv_residue(a[0])]);
        }
        // extended Euclid in F_p[x] against the modulus
        let mut r0: Vec<u64> = self.modulus.clone().expect("extension field");
        let mut r1: Vec<u64> = a.to_vec();
        trim(&mut r1);
        let mut t0: Vec<u64> = vec![];
        let mut t1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        // r0 is the gcd, a nonzero constant since the modulus is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = self.inv_residue(r0[0]);
        let mut out: Vec<u64> = t0.iter().map(|&x| self.mul_residue(x, c)).collect();
        out.resize(self.k, 0);
        Some(out)
    }

    fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mul_residue(x, y)) % self.p;
            }
        }
        trim(&mut out);
        out
    }

    fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = vec![0u64; n];
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out[i] = if x >= y { x - y } else { x + self.p - y };
        }
        trim(&mut out);
        out
    }

    fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut rem = a.to_vec();
        trim(&mut rem);
        let db = b.len() - 1;
        let lead_inv = self.inv_residue(b[db]);
        if rem.len() < b.len() {
            return (vec![], rem);
        }
        let mut quot = vec![0u64; rem.len() - db];
        while rem.len() >= b.len() {
            let dr = rem.len() - 1;
            let c = self.mul_residue(rem[dr], lead_inv);
            quot[dr - db] = c;
            for i in 0..=db {
                let s = self.mul_residue(c, b[i]);
                let idx = dr - db + i;
                rem[idx] = if rem[idx] >= s {
                    rem[idx] - s
                } else {
                    rem[idx] + self.p - s
                };
            }
            trim(&mut rem);
            if rem.is_empty() {
                break;
            }
        }
        (quot, rem)
    }

    // ---- element codes (for enumeration kernels) ----

    pub fn encode(&self, coords: &[u64]) -> u64 {
        let mut acc = 0u64;
        for &c in coords.iter().rev() {
            acc = acc * self.p + c;
        }
        acc
    }

    pub fn decode(&self, code: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k);
        let mut c = code;
        for _ in 0..self.k {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    pub(crate) fn tables(&self) -> Option<&FqTables> {
        if self.order > TABLE_LIMIT as u128 {
            return None;
        }
        Some(self.tables.get_or_init(|| self.build_tables()))
    }

    fn build_tables(&self) -> FqTables {
        let q = self.order as u32;
        let elems: Vec<Vec<u64>> = (0..q as u64).map(|c| self.decode(c)).collect();
        let mut mul = vec![0u32; (q * q) as usize];
        let mut add = vec![0u32; (q * q) as usize];
        let mut neg = vec![0u32; q as usize];
        let mut inv = vec![0u32; q as usize];
        for a in 0..q as usize {
            neg[a] = self.encode(&self.neg_vec(&elems[a])) as u32;
            inv[a] = match self.inv_vec(&elems[a]) {
                Some(v) => self.encode(&v) as u32,
                None => 0,
            };
            for b in a..q as usize {
                let m = self.encode(&self.mul_vec(&elems[a], &elems[b])) as u32;
                let s = self.encode(&self.add_vec(&elems[a], &elems[b])) as u32;
                mul[a * q as usize + b] = m;
                mul[b * q as usize + a] = m;
                add[a * q as usize + b] = s;
                add[b * q as usize + a] = s;
            }
        }
        FqTables { q, mul, add, neg, inv }
    }

    /// Code-level arithmetic, table-backed when available.
    pub fn code_mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return self.mul_residue(a, b);
        }
        if let Some(t) = self.tables() {
            return t.mul[(a * t.q as u64 + b) as usize] as u64;
        }
        self.encode(&self.mul_vec(&self.decode(a), &self.decode(b)))
    }

    pub fn code_add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        if let Some(t) = self.tables() {
            return t.add[(a * t.q as u64 + b) as usize] as u64;
        }
        self.encode(&self.add_vec(&self.decode(a), &self.decode(b)))
    }

    pub fn code_neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        if let Some(t) = self.tables() {
            return t.neg[a as usize] as u64;
        }
        self.encode(&self.neg_vec(&self.decode(a)))
    }

    pub fn code_inv(&self, a: u64) -> u64 {
        if self.k == 1 {
            return self.inv_residue(a);
        }
        if let Some(t) = self.tables() {
            return t.inv[a as usize] as u64;
        }
        self.encode(&self.inv_vec(&self.decode(a)).expect("nonzero"))
    }

    pub fn code_pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        if e == 0 {
            return 1;
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = self.code_mul(acc, base);
            }
            base = self.code_mul(base, base);
            e >>= 1;
        }
        acc
    }
}

fn trim(v: &mut Vec<u64>) {
    while let Some(&0) = v.last() {
        v.pop();
    }
}

/// The monic irreducible degree-k polynomial over F_p minimizing the
/// integer value `sum c_i p^i` of its non-leading coefficient vector.
fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    let ctx = FieldCtx {
        p,
        k: 1,
        modulus: None,
        order: p as u128,
        tables: OnceLock::new(),
    };
    let total = (p as u128).pow(k as u32);
    let mut n = 0u128;
    loop {
        debug_assert!(n < total, "no irreducible polynomial found");
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut m = n;
        for _ in 0..k {
            coeffs.push((m % p as u128) as u64);
            m /= p as u128;
        }
        coeffs.push(1);
        if is_irreducible(&ctx, &coeffs, p, k) {
            return coeffs;
        }
        n += 1;
    }
}

/// Rabin irreducibility: f of degree k over F_p is irreducible iff
/// x^(p^k) = x mod f and gcd(x^(p^(k/t)) - x, f) = 1 for every prime t | k.
fn is_irreducible(ctx: &FieldCtx, f: &[u64], p: u64, k: usize) -> bool {
    let x = vec![0u64, 1];
    let mut frob = x.clone(); // x^(p^i) mod f
    let mut checks: Vec<usize> = prime_divisors(k).into_iter().map(|t| k / t).collect();
    checks.sort_unstable();
    for i in 1..=k {
        frob = poly_powmod(ctx, &frob, p, f);
        if i < k && checks.contains(&i) {
            let diff = ctx.poly_sub(&frob, &x);
            let g = poly_gcd(ctx, &diff, f);
            if g.len() != 1 {
                return false;
            }
        }
        if i == k {
            let diff = ctx.poly_sub(&frob, &x);
            if !diff.is_empty() {
                return false;
            }
        }
    }
    true
}

fn prime_divisors(mut k: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= k {
        if k % d == 0 {
            out.push(d);
            while k % d == 0 {
                k /= d;
            }
        }
        d += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}

fn poly_powmod(ctx: &FieldCtx, base: &[u64], mut e: u64, f: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = ctx.poly_divrem(base, f).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = ctx.poly_divrem(&ctx.poly_mul(&acc, &b), f).1;
        }
        b = ctx.poly_divrem(&ctx.poly_mul(&b, &b), f).1;
        e >>= 1;
    }
    acc
}

fn poly_gcd(ctx: &FieldCtx, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let r = ctx.poly_divrem(&r0, &r1).1;
        r0 = r1;
        r1 = r;
    }
    if let Some(&lead) = r0.last() {
        let c = ctx.inv_residue(lead);
        for x in r0.iter_mut() {
            *x = ctx.mul_residue(*x, c);
        }
    }
    r0
}

/// An element of `F_{p^k}`, carrying its context.
#[derive(Clone)]
pub struct FqElem {
    ctx: Arc<FieldCtx>,
    coords: Vec<u64>,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.coords == other.coords
    }
}
impl Eq for FqElem {}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ctx)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ctx.k == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{}", c)?,
                1 if c == 1 => write!(f, "t")?,
                1 => write!(f, "{}*t", c)?,
                _ if c == 1 => write!(f, "t^{}", i)?,
                _ => write!(f, "{}*t^{}", c, i)?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FqElem {
    pub fn new(ctx: Arc<FieldCtx>, mut coords: Vec<u64>) -> Self {
        coords.resize(ctx.k, 0);
        for c in coords.iter_mut() {
            *c %= ctx.p;
        }
        FqElem { ctx, coords }
    }

    pub fn zero(ctx: Arc<FieldCtx>) -> Self {
        let k = ctx.k;
        FqElem {
            ctx,
            coords: vec![0; k],
        }
    }

    pub fn one(ctx: Arc<FieldCtx>) -> Self {
        let mut coords = vec![0; ctx.k];
        coords[0] = 1;
        FqElem { ctx, coords }
    }

    pub fn from_residue(ctx: Arc<FieldCtx>, r: u64) -> Self {
        let mut coords = vec![0; ctx.k];
        coords[0] = r % ctx.p;
        FqElem { ctx, coords }
    }

    pub fn from_code(ctx: Arc<FieldCtx>, code: u64) -> Self {
        let coords = ctx.decode(code);
        FqElem { ctx, coords }
    }

    pub fn from_int(ctx: Arc<FieldCtx>, n: i64) -> Self {
        let p = ctx.p as i64;
        Self::from_residue(ctx, n.rem_euclid(p) as u64)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn code(&self) -> u64 {
        self.ctx.encode(&self.coords)
    }

    /// The residue when this element lies in the prime subfield.
    pub fn residue(&self) -> Option<u64> {
        if self.coords[1..].iter().all(|&c| c == 0) {
            Some(self.coords[0])
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn assert_same(&self, other: &Self) {
        assert!(
            *self.ctx == *other.ctx,
            "field context mismatch: {} vs {}",
            self.ctx,
            other.ctx
        );
    }

    pub fn add_elem(&self, other: &Self) -> Self {
        self.assert_same(other);
        FqElem {
            ctx: self.ctx.clone(),
            coords: self.ctx.add_vec(&self.coords, &other.coords),
        }
    }

    pub fn sub_elem(&self, other: &Self) -> Self {
        self.assert_same(other);
        FqElem {
            ctx: self.ctx.clone(),
            coords: self.ctx.sub_vec(&self.coords, &other.coords),
        }
    }

    pub fn mul_elem(&self, other: &Self) -> Self {
        self.assert_same(other);
        FqElem {
            ctx: self.ctx.clone(),
            coords: self.ctx.mul_vec(&self.coords, &other.coords),
        }
    }

    pub fn neg_elem(&self) -> Self {
        FqElem {
            ctx: self.ctx.clone(),
            coords: self.ctx.neg_vec(&self.coords),
        }
    }

    pub fn inv_elem(&self) -> Option<Self> {
        self.ctx.inv_vec(&self.coords).map(|coords| FqElem {
            ctx: self.ctx.clone(),
            coords,
        })
    }

    pub fn pow_elem(&self, mut e: u128) -> Self {
        let mut acc = FqElem::one(self.ctx.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_elem(&base);
            }
            base = base.mul_elem(&base);
            e >>= 1;
        }
        acc
    }

    /// Canonical square root: for odd prime fields the Tonelli–Shanks root
    /// with the least nonnegative representative; for small extension
    /// fields an exhaustive scan. None if no root exists.
    pub fn sqrt_elem(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let p = self.ctx.p;
        if self.ctx.k == 1 && p != 2 {
            let a = self.coords[0];
            let r = tonelli_shanks(a, p)?;
            let r = r.min(p - r);
            return Some(FqElem::from_residue(self.ctx.clone(), r));
        }
        if self.ctx.order <= 1_000_000 {
            let q = self.ctx.order as u64;
            let mut best: Option<u64> = None;
            for c in 0..q {
                if self.ctx.code_mul(c, c) == self.code() {
                    best = Some(match best {
                        Some(b) => b.min(c),
                        None => c,
                    });
                }
            }
            return best.map(|c| FqElem::from_code(self.ctx.clone(), c));
        }
        None
    }
}

fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    // write p-1 = q 2^s
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    // find a non-residue
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = (tt as u128 * tt as u128 % p as u128) as u64;
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = (b as u128 * b as u128 % p as u128) as u64;
        t = (t as u128 * c as u128 % p as u128) as u64;
        r = (r as u128 * b as u128 % p as u128) as u64;
    }
    Some(r)
}
