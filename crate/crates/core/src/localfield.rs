//! 7-adic arithmetic in the degree 6 totally ramified field Q₇(ζ₇).
//!
//! The field is presented as Q₇[λ]/E(λ) for the Eisenstein polynomial
//! E(λ) = λ⁶ + 7λ⁵ + 21λ⁴ + 35λ³ + 35λ² + 21λ + 7, which is
//! ((1+λ)⁷ − 1)/λ, so 1+λ is a primitive 7th root of unity. Valuations are
//! sextuple-normalized: v(7) = 6 and v(λ) = 1. Because the six basis
//! contributions 6·v₇(aᵢ) + i land in distinct classes mod 6, the valuation
//! of Σ aᵢ λⁱ is simply their minimum, with no cancellation possible.
//!
//! The cyclotomic field Q(ζ₄₂) embeds here in two essentially different
//! ways, distinguished by the residue of ζ: Type 1 sends ζ ↦ −2 and Type 2
//! sends ζ ↦ −4 modulo the maximal ideal. Both completions of Q(ζ₄₂) above 7
//! are this one field; elements carry the embedding tag instead.

use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{pi1, pi2, CycloElem};
use crate::error::{Error, Result};

/// Which prime of Q(ζ₄₂) above 7 the embedding induces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmbType {
    /// ζ ≡ −2 mod the maximal ideal; π₁ becomes a uniformizer.
    Type1,
    /// ζ ≡ −4 mod the maximal ideal; π₂ becomes a uniformizer.
    Type2,
}

impl fmt::Display for EmbType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbType::Type1 => write!(f, "type1"),
            EmbType::Type2 => write!(f, "type2"),
        }
    }
}

impl EmbType {
    pub fn other(self) -> Self {
        match self {
            EmbType::Type1 => EmbType::Type2,
            EmbType::Type2 => EmbType::Type1,
        }
    }
}

fn pow7(k: u32) -> BigUint {
    static CACHE: OnceLock<Mutex<Vec<BigUint>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigUint::one()]));
    let mut v = cache.lock().unwrap();
    while v.len() <= k as usize {
        let next = v.last().unwrap() * 7u32;
        v.push(next);
    }
    v[k as usize].clone()
}

fn v7_biguint(n: &BigUint) -> u32 {
    debug_assert!(!n.is_zero());
    let seven = BigUint::from(7u32);
    let mut v = 0;
    let mut n = n.clone();
    loop {
        let (q, r) = n.div_rem(&seven);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// A 7-adic number with capped relative precision: unit · 7^val with the
/// unit known to `m` digits, or zero to a stated absolute precision.
#[derive(Clone, Debug)]
pub enum PadicNum {
    Zero { abs: i64 },
    NonZero { val: i64, unit: BigUint, m: u32 },
}

impl PadicNum {
    /// Exact zero (absolute precision unbounded).
    pub fn zero() -> Self {
        PadicNum::Zero { abs: i64::MAX }
    }

    pub fn from_int(n: i64, m: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), m)
    }

    pub fn from_bigint(n: &BigInt, m: u32) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        let mag = n.magnitude();
        let v = v7_biguint(mag);
        let modulus = pow7(m);
        let mut unit = (mag / pow7(v)) % &modulus;
        if n.is_negative() && !unit.is_zero() {
            unit = &modulus - unit;
        }
        PadicNum::NonZero { val: v as i64, unit, m }
    }

    pub fn from_rat(r: &BigRational, m: u32) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        let num = Self::from_bigint(r.numer(), m);
        let den = Self::from_bigint(r.denom(), m);
        num.mul(&den.inv().expect("nonzero denominator"))
    }

    pub fn is_zero_to_prec(&self) -> bool {
        matches!(self, PadicNum::Zero { .. })
    }

    /// Exact 7-adic valuation; `None` when zero to precision.
    pub fn val(&self) -> Option<i64> {
        match self {
            PadicNum::Zero { .. } => None,
            PadicNum::NonZero { val, .. } => Some(*val),
        }
    }

    /// Absolute precision: the value is known modulo 7^abs_prec.
    pub fn abs_prec(&self) -> i64 {
        match self {
            PadicNum::Zero { abs } => *abs,
            PadicNum::NonZero { val, m, .. } => val + *m as i64,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            PadicNum::Zero { .. } => self.clone(),
            PadicNum::NonZero { val, unit, m } => {
                PadicNum::NonZero { val: *val, unit: pow7(*m) - unit, m: *m }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (PadicNum::Zero { abs: a }, PadicNum::Zero { abs: b }) => {
                PadicNum::Zero { abs: *a.min(b) }
            }
            (PadicNum::Zero { abs }, x) | (x, PadicNum::Zero { abs }) => {
                let (val, unit, m) = match x {
                    PadicNum::NonZero { val, unit, m } => (*val, unit, *m),
                    _ => unreachable!(),
                };
                if val >= *abs {
                    return PadicNum::Zero { abs: *abs };
                }
                // truncate the known digits to the joint absolute precision
                let m2 = (m as i64).min((*abs).saturating_sub(val)) as u32;
                let unit = unit % pow7(m2);
                if unit.is_zero() {
                    return PadicNum::Zero { abs: *abs };
                }
                PadicNum::NonZero { val, unit, m: m2 }
            }
            (
                PadicNum::NonZero { val: va, unit: ua, m: ma },
                PadicNum::NonZero { val: vb, unit: ub, m: mb },
            ) => {
                let abs = (va + *ma as i64).min(vb + *mb as i64);
                let v = (*va).min(*vb);
                let digits = (abs - v) as u32;
                if digits == 0 {
                    return PadicNum::Zero { abs };
                }
                let modulus = pow7(digits);
                let part = |val: i64, unit: &BigUint| -> BigUint {
                    let shift = (val - v) as u32;
                    if shift >= digits {
                        BigUint::zero()
                    } else {
                        (unit * pow7(shift)) % &modulus
                    }
                };
                let w = (part(*va, ua) + part(*vb, ub)) % &modulus;
                if w.is_zero() {
                    return PadicNum::Zero { abs };
                }
                let extra = v7_biguint(&w);
                let val = v + extra as i64;
                PadicNum::NonZero { val, unit: w / pow7(extra), m: (abs - val) as u32 }
            }
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (PadicNum::Zero { abs: a }, PadicNum::Zero { abs: b }) => {
                PadicNum::Zero { abs: a.saturating_add(*b) }
            }
            (PadicNum::Zero { abs }, PadicNum::NonZero { val, .. })
            | (PadicNum::NonZero { val, .. }, PadicNum::Zero { abs }) => {
                PadicNum::Zero { abs: abs.saturating_add(*val) }
            }
            (
                PadicNum::NonZero { val: va, unit: ua, m: ma },
                PadicNum::NonZero { val: vb, unit: ub, m: mb },
            ) => {
                let m = (*ma).min(*mb);
                PadicNum::NonZero { val: va + vb, unit: (ua * ub) % pow7(m), m }
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match self {
            PadicNum::Zero { .. } => Err(Error::PrecisionExhausted),
            PadicNum::NonZero { val, unit, m } => {
                let modulus = pow7(*m);
                // unit^(φ(7^m) − 1) mod 7^m
                let phi = pow7(*m) - pow7(m - 1);
                let e = phi - BigUint::one();
                Ok(PadicNum::NonZero { val: -val, unit: unit.modpow(&e, &modulus), m: *m })
            }
        }
    }

    /// The residue in 0..7; requires valuation ≥ 0 (or zero to positive precision).
    pub fn residue(&self) -> Result<u8> {
        match self {
            PadicNum::Zero { abs } => {
                if *abs >= 1 {
                    Ok(0)
                } else {
                    Err(Error::PrecisionExhausted)
                }
            }
            PadicNum::NonZero { val, unit, .. } => {
                if *val > 0 {
                    Ok(0)
                } else if *val == 0 {
                    Ok((unit % BigUint::from(7u32)).to_u8().unwrap())
                } else {
                    Err(Error::InvalidArgument("residue of non-integral element".into()))
                }
            }
        }
    }
}

/// Teichmüller lift: the root of unity congruent to a mod 7, to m digits.
pub fn teichmuller(a: i64, m: u32) -> PadicNum {
    assert!(a.rem_euclid(7) != 0, "Teichmüller lift needs a unit");
    let modulus = pow7(m);
    let mut x = BigUint::from(a.rem_euclid(7) as u32);
    loop {
        let next = x.modpow(&BigUint::from(7u32), &modulus);
        if next == x {
            break;
        }
        x = next;
    }
    PadicNum::NonZero { val: 0, unit: x, m }
}

/// Coefficients of λ⁶ = −(7 + 21λ + 35λ² + 35λ³ + 21λ⁴ + 7λ⁵).
const LAMBDA6: [i64; 6] = [-7, -21, -35, -35, -21, -7];

/// Element Σ aᵢ λⁱ of Q₇(ζ₇), tagged with the embedding in use for any
/// cyclotomic data mixed into it.
#[derive(Clone, Debug)]
pub struct LocalElem {
    emb: EmbType,
    c: [PadicNum; 6],
}

impl LocalElem {
    pub fn zero(emb: EmbType) -> Self {
        LocalElem { emb, c: std::array::from_fn(|_| PadicNum::zero()) }
    }

    pub fn from_padic(p: PadicNum, emb: EmbType) -> Self {
        let mut e = Self::zero(emb);
        e.c[0] = p;
        e
    }

    pub fn from_int(n: i64, emb: EmbType, m: u32) -> Self {
        Self::from_padic(PadicNum::from_int(n, m), emb)
    }

    pub fn lambda(emb: EmbType, m: u32) -> Self {
        let mut e = Self::zero(emb);
        e.c[1] = PadicNum::from_int(1, m);
        e
    }

    pub fn emb(&self) -> EmbType {
        self.emb
    }

    pub fn coeff(&self, i: usize) -> &PadicNum {
        &self.c[i]
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.emb, rhs.emb);
        LocalElem { emb: self.emb, c: std::array::from_fn(|i| self.c[i].add(&rhs.c[i])) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.emb, rhs.emb);
        LocalElem { emb: self.emb, c: std::array::from_fn(|i| self.c[i].sub(&rhs.c[i])) }
    }

    pub fn neg(&self) -> Self {
        LocalElem { emb: self.emb, c: std::array::from_fn(|i| self.c[i].neg()) }
    }

    pub fn scale(&self, s: &PadicNum) -> Self {
        LocalElem { emb: self.emb, c: std::array::from_fn(|i| self.c[i].mul(s)) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.emb, rhs.emb);
        let mut conv: [PadicNum; 11] = std::array::from_fn(|_| PadicNum::zero());
        for i in 0..6 {
            if let PadicNum::Zero { abs: i64::MAX } = self.c[i] {
                continue;
            }
            for j in 0..6 {
                let t = self.c[i].mul(&rhs.c[j]);
                conv[i + j] = conv[i + j].add(&t);
            }
        }
        // Fold λ^(6+k) down using the Eisenstein relation.
        for d in (6..11).rev() {
            let top = std::mem::replace(&mut conv[d], PadicNum::zero());
            if let PadicNum::Zero { abs: i64::MAX } = top {
                continue;
            }
            let m = digits_of(&top).max(2);
            for (off, &coef) in LAMBDA6.iter().enumerate() {
                let scaled = top.mul(&PadicNum::from_int(coef, m));
                conv[d - 6 + off] = conv[d - 6 + off].add(&scaled);
            }
        }
        LocalElem {
            emb: self.emb,
            c: std::array::from_fn(|i| std::mem::replace(&mut conv[i], PadicNum::zero())),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        if e == 0 {
            return Self::from_int(1, self.emb, digits_of_elem(self).max(2));
        }
        let mut acc: Option<LocalElem> = None;
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc.unwrap()
    }

    /// Sextuple-normalized valuation (v(7) = 6, v(λ) = 1).
    ///
    /// Errors with `PrecisionExhausted` when the element is zero to working
    /// precision, or when a zero-to-precision coefficient could undercut the
    /// best exact candidate.
    pub fn val(&self) -> Result<i64> {
        let mut best: Option<i64> = None;
        let mut floor = i64::MAX;
        for (i, a) in self.c.iter().enumerate() {
            match a.val() {
                Some(v) => {
                    let cand = 6 * v + i as i64;
                    best = Some(best.map_or(cand, |b| b.min(cand)));
                }
                None => {
                    let bound = a.abs_prec().saturating_mul(6).saturating_add(i as i64);
                    floor = floor.min(bound);
                }
            }
        }
        match best {
            Some(v) if v <= floor => Ok(v),
            _ => Err(Error::PrecisionExhausted),
        }
    }

    pub fn is_zero_to_prec(&self) -> bool {
        self.val().is_err()
    }

    /// λ-adic absolute precision floor of the representation.
    pub fn abs_prec_lambda(&self) -> i64 {
        self.c
            .iter()
            .enumerate()
            .map(|(i, a)| a.abs_prec().saturating_mul(6).saturating_add(i as i64))
            .min()
            .unwrap()
    }

    pub fn inv(&self) -> Result<Self> {
        let v = self.val()?;
        let emb = self.emb;
        let m = digits_of_elem(self).max(4);
        // shift to a unit
        let mut u = self.clone();
        if v > 0 {
            u = u.mul(&lambda_inv(emb, m).pow(v as u64));
        } else if v < 0 {
            u = u.mul(&LocalElem::lambda(emb, m).pow((-v) as u64));
        }
        debug_assert_eq!(u.val().ok(), Some(0));
        let r = u.c[0].residue()?;
        debug_assert!(r != 0);
        let r_inv = [0u8, 1, 4, 5, 2, 3, 6][r as usize]; // inverses mod 7
        let mut x = LocalElem::from_int(r_inv as i64, emb, m);
        let two = LocalElem::from_int(2, emb, m);
        let iters = 64 - (6 * m as u64).leading_zeros() as u64 + 2;
        for _ in 0..iters {
            let corr = two.sub(&u.mul(&x));
            x = x.mul(&corr);
        }
        // undo the shift
        let out = if v > 0 {
            x.mul(&lambda_inv(emb, m).pow(v as u64))
        } else if v < 0 {
            x.mul(&LocalElem::lambda(emb, m).pow((-v) as u64))
        } else {
            x
        };
        Ok(out)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// The residue in F₇; requires valuation ≥ 0.
    pub fn residue(&self) -> Result<u8> {
        if let Ok(v) = self.val() {
            if v < 0 {
                return Err(Error::InvalidArgument("residue of non-integral element".into()));
            }
        }
        self.c[0].residue()
    }
}

fn digits_of(p: &PadicNum) -> u32 {
    match p {
        PadicNum::Zero { .. } => 0,
        PadicNum::NonZero { m, .. } => *m,
    }
}

fn digits_of_elem(e: &LocalElem) -> u32 {
    e.c.iter().map(digits_of).max().unwrap_or(0)
}

/// λ⁻¹ = −(λ⁵ + 7λ⁴ + 21λ³ + 35λ² + 35λ + 21)/7, from the Eisenstein relation.
fn lambda_inv(emb: EmbType, m: u32) -> LocalElem {
    let coeffs = [21i64, 35, 35, 21, 7, 1];
    let seventh = PadicNum::from_int(7, m + 2).inv().unwrap();
    let mut e = LocalElem::zero(emb);
    for (i, &a) in coeffs.iter().enumerate() {
        e.c[i] = PadicNum::from_int(-a, m + 2).mul(&seventh);
    }
    e
}

/// One of the two embeddings of Q(ζ₄₂) into Q₇(ζ₇), at a fixed working
/// precision of `m` 7-adic digits.
///
/// ζ is sent to ζ₆ · ζ₇⁶ where ζ₇ = 1 + λ and ζ₆ is the Teichmüller lift of
/// 5 (Type 1) or 3 (Type 2), so that ζ ≡ −2 resp. −4 mod the maximal ideal.
pub struct Embedding {
    emb: EmbType,
    m: u32,
    zeta: LocalElem,
    pi1: LocalElem,
    pi2: LocalElem,
}

impl Embedding {
    pub fn new(emb: EmbType, m: u32) -> Self {
        assert!(m >= 4, "need a few digits to be meaningful");
        let zeta6 = match emb {
            EmbType::Type1 => teichmuller(5, m),
            EmbType::Type2 => teichmuller(3, m),
        };
        let zeta7 = LocalElem::from_int(1, emb, m).add(&LocalElem::lambda(emb, m));
        let zeta = zeta7.pow(6).scale(&zeta6);
        let mut this =
            Embedding { emb, m, zeta, pi1: LocalElem::zero(emb), pi2: LocalElem::zero(emb) };
        this.pi1 = this.embed(&pi1());
        this.pi2 = this.embed(&pi2());
        this
    }

    pub fn emb_type(&self) -> EmbType {
        self.emb
    }

    pub fn digits(&self) -> u32 {
        self.m
    }

    pub fn zeta(&self) -> &LocalElem {
        &self.zeta
    }

    pub fn pi1(&self) -> &LocalElem {
        &self.pi1
    }

    pub fn pi2(&self) -> &LocalElem {
        &self.pi2
    }

    /// The uniformizer among π₁, π₂ for this embedding type.
    pub fn uniformizer(&self) -> &LocalElem {
        match self.emb {
            EmbType::Type1 => &self.pi1,
            EmbType::Type2 => &self.pi2,
        }
    }

    /// Ring homomorphism Q(ζ₄₂) → Q₇(ζ₇).
    pub fn embed(&self, a: &CycloElem) -> LocalElem {
        let mut acc = LocalElem::zero(self.emb);
        for r in a.coeffs().iter().rev() {
            acc = acc.mul(&self.zeta);
            if !r.is_zero() {
                acc = acc.add(&LocalElem::from_padic(PadicNum::from_rat(r, self.m), self.emb));
            }
        }
        acc
    }

    /// Sextuple-normalized valuation of a global element under this embedding.
    pub fn val6(&self, a: &CycloElem) -> Result<i64> {
        self.embed(a).val()
    }
}

/// Default working precision in 7-adic digits.
pub const DEFAULT_DIGITS: u32 = 60;

/// Shared embedding contexts at the default working precision.
pub fn default_embedding(emb: EmbType) -> &'static Embedding {
    static T1: OnceLock<Embedding> = OnceLock::new();
    static T2: OnceLock<Embedding> = OnceLock::new();
    match emb {
        EmbType::Type1 => T1.get_or_init(|| Embedding::new(EmbType::Type1, DEFAULT_DIGITS)),
        EmbType::Type2 => T2.get_or_init(|| Embedding::new(EmbType::Type2, DEFAULT_DIGITS)),
    }
}

/// Digit expansion of an integral element with respect to a uniformizer,
/// digits in 0..7.
pub fn digit_expansion(x: &LocalElem, uniformizer: &LocalElem, count: usize) -> Result<Vec<u8>> {
    if let Ok(v) = x.val() {
        if v < 0 {
            return Err(Error::InvalidArgument("digit expansion of non-integral element".into()));
        }
    }
    let m = digits_of_elem(x).max(4);
    let u_inv = uniformizer.inv()?;
    let mut digits = Vec::with_capacity(count);
    let mut cur = x.clone();
    for _ in 0..count {
        let d = cur.c[0].residue()?;
        digits.push(d);
        let delta = LocalElem::from_int(d as i64, x.emb, m);
        cur = cur.sub(&delta).mul(&u_inv);
    }
    Ok(digits)
}

fn eval_poly(coeffs: &[LocalElem], x: &LocalElem) -> LocalElem {
    let mut acc = LocalElem::zero(x.emb);
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

fn derivative(coeffs: &[LocalElem], m: u32) -> Vec<LocalElem> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&PadicNum::from_int(i as i64, m)))
        .collect()
}

fn is_exact_zero(c: &LocalElem) -> bool {
    c.val().is_err() && c.abs_prec_lambda() == i64::MAX
}

/// All roots of the polynomial (coefficients ascending) lying in Q₇(ζ₇),
/// found by breadth-first search over λ-adic digits with valuation pruning,
/// then Newton refinement once branches separate. The polynomial must be
/// squarefree to working precision. Roots are refined until the residual
/// valuation reaches 6·(m − 2), for m the working precision in digits.
///
/// An empty result means the polynomial has no roots in the field.
pub fn find_roots(poly: &[LocalElem], m: u32) -> Result<Vec<LocalElem>> {
    let emb = poly.last().ok_or_else(|| Error::InvalidArgument("empty polynomial".into()))?.emb;
    let mut coeffs: Vec<LocalElem> = poly.to_vec();
    while coeffs.last().is_some_and(is_exact_zero) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Ok(vec![]);
    }
    let target = 6 * (m as i64 - 2);
    let mut roots: Vec<LocalElem> = Vec::new();

    // x = 0 roots: strip exactly-zero constant terms.
    let mut low = 0;
    while low < coeffs.len() - 1 && is_exact_zero(&coeffs[low]) {
        low += 1;
    }
    if low > 0 {
        roots.push(LocalElem::zero(emb));
        coeffs.drain(..low);
    }

    // Integral roots.
    roots.extend(unit_ball_roots(&coeffs, emb, m, target)?);

    // Roots of negative valuation are inverses of the small roots of the
    // reversed polynomial.
    let rev: Vec<LocalElem> = coeffs.iter().rev().cloned().collect();
    for r in unit_ball_roots(&rev, emb, m, target)? {
        if r.val().map(|v| v > 0).unwrap_or(false) {
            roots.push(r.inv()?);
        }
    }
    Ok(roots)
}

/// Roots with valuation ≥ 0, by digit search in λ.
fn unit_ball_roots(
    poly: &[LocalElem],
    emb: EmbType,
    m: u32,
    target: i64,
) -> Result<Vec<LocalElem>> {
    // Scale so the smallest coefficient valuation lies in [0, 6): the
    // pruning criterion below relies on integral coefficients.
    if poly.len() < 2 {
        return Ok(vec![]);
    }
    let mut vmin = i64::MAX;
    for c in poly {
        if let Ok(v) = c.val() {
            vmin = vmin.min(v);
        }
    }
    if vmin == i64::MAX {
        return Ok(vec![]);
    }
    let shift = vmin.div_euclid(6);
    let coeffs: Vec<LocalElem> = if shift != 0 {
        let seven = PadicNum::from_int(7, m);
        let mut factor = PadicNum::from_int(1, m);
        if shift > 0 {
            let inv7 = seven.inv().unwrap();
            for _ in 0..shift {
                factor = factor.mul(&inv7);
            }
        } else {
            for _ in 0..(-shift) {
                factor = factor.mul(&seven);
            }
        }
        poly.iter().map(|c| c.scale(&factor)).collect()
    } else {
        poly.to_vec()
    };
    // All divided derivatives f^(k)/k!; only valuations are needed, so the
    // k! content is subtracted separately (v₇(k!) = Σ ⌊k/7^i⌋).
    let mut derivs: Vec<Vec<LocalElem>> = vec![coeffs.clone()];
    while derivs.last().unwrap().len() > 1 {
        derivs.push(derivative(derivs.last().unwrap(), m));
    }
    let fact_val6 = |k: usize| -> i64 {
        let mut v = 0i64;
        let mut p = 7usize;
        while p <= k {
            v += (k / p) as i64;
            p *= 7;
        }
        6 * v
    };
    let deriv = &derivs[1].clone();

    let lambda = LocalElem::lambda(emb, m);
    let mut lam_pow = LocalElem::from_int(1, emb, m);
    let mut candidates: Vec<LocalElem> = vec![LocalElem::zero(emb)];
    let mut finished: Vec<LocalElem> = Vec::new();
    let max_depth = target + 6;

    for level in 0..max_depth {
        if candidates.is_empty() {
            break;
        }
        let mut next: Vec<LocalElem> = Vec::new();
        for cand in &candidates {
            for d in 0..7i64 {
                let c = if d == 0 {
                    cand.clone()
                } else {
                    cand.add(&lam_pow.scale(&PadicNum::from_int(d, m)))
                };
                // The child stands for the ball c + λ^(level+1)·O. Write
                // g(X) = f(c + λ^(level+1) X) = Σ gₖ Xᵏ; by Strassmann the
                // number of roots in the ball is the largest index attaining
                // the minimal coefficient valuation. Prune when the minimum
                // sits at index 0 alone; close the branch via Newton once
                // index 1 is the unique minimum and the Hensel bound holds.
                let fv = eval_poly(&coeffs, &c);
                // zero to precision keeps the branch
                let g0 = fv.val().unwrap_or(i64::MAX);
                let radius = level + 1;
                let fp = eval_poly(deriv, &c);
                let g1 = fp.val().ok().map(|v| v + radius);
                let mut tail_min = i64::MAX; // over k >= 2, conservative lower bound
                for (k, dk) in derivs.iter().enumerate().skip(2) {
                    let vk = eval_poly(dk, &c);
                    let base = match vk.val() {
                        Ok(v) => v,
                        Err(_) => vk.abs_prec_lambda(),
                    };
                    let term = base.saturating_sub(fact_val6(k)).saturating_add(radius * k as i64);
                    tail_min = tail_min.min(term);
                }
                let head_min = g1.unwrap_or(i64::MAX).min(tail_min);
                if head_min > g0 {
                    continue; // no root in this ball
                }
                let unique_root = matches!(g1, Some(v) if v < tail_min);
                let hensel = match (fv.val(), fp.val()) {
                    (Ok(v), Ok(vp)) => v > 2 * vp,
                    (Err(_), Ok(_)) => true,
                    _ => false,
                };
                if unique_root && hensel {
                    if let Some(r) = newton_refine(&coeffs, deriv, &c, target) {
                        finished.push(r);
                        continue;
                    }
                }
                next.push(c);
            }
        }
        if next.len() > 4096 {
            return Err(Error::InvalidArgument(
                "root search exploded; polynomial may not be squarefree".into(),
            ));
        }
        candidates = next;
        lam_pow = lam_pow.mul(&lambda);
    }
    finished.extend(candidates);

    // Deduplicate branches that converged to the same root, then keep only
    // candidates whose residual clears the precision floor.
    let mut unique: Vec<LocalElem> = Vec::new();
    for r in finished {
        let dup = unique.iter().any(|u| match u.sub(&r).val() {
            Ok(v) => v >= target,
            Err(_) => true,
        });
        if !dup {
            unique.push(r);
        }
    }
    unique.retain(|r| match eval_poly(&coeffs, r).val() {
        Ok(v) => v >= target,
        Err(_) => true,
    });
    Ok(unique)
}

fn newton_refine(
    coeffs: &[LocalElem],
    deriv: &[LocalElem],
    start: &LocalElem,
    target: i64,
) -> Option<LocalElem> {
    let mut x = start.clone();
    for _ in 0..64 {
        let fv = eval_poly(coeffs, &x);
        match fv.val() {
            Err(_) => return Some(x),
            Ok(v) if v >= target => return Some(x),
            Ok(_) => {}
        }
        let fp = eval_poly(deriv, &x);
        let step = fv.div(&fp).ok()?;
        x = x.sub(&step);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{Rat, PHI42};
    use proptest::prelude::*;

    const M: u32 = 24;

    fn t1() -> Embedding {
        Embedding::new(EmbType::Type1, M)
    }

    fn t2() -> Embedding {
        Embedding::new(EmbType::Type2, M)
    }

    #[test]
    fn eisenstein_polynomial_is_eisenstein() {
        let e = [7i64, 21, 35, 35, 21, 7, 1];
        assert!(e[0] % 7 == 0 && e[0] % 49 != 0);
        assert!(e[1..6].iter().all(|c| c % 7 == 0));
        assert_eq!(e[6], 1);
    }

    #[test]
    fn defining_relation_vanishes() {
        let emb = EmbType::Type1;
        let lam = LocalElem::lambda(emb, M);
        let mut acc = LocalElem::zero(emb);
        for (i, &a) in [7i64, 21, 35, 35, 21, 7, 1].iter().enumerate() {
            acc = acc.add(&lam.pow(i as u64).scale(&PadicNum::from_int(a, M)));
        }
        assert!(acc.is_zero_to_prec());
    }

    #[test]
    fn zeta7_has_order_seven() {
        let emb = EmbType::Type1;
        let zeta7 = LocalElem::from_int(1, emb, M).add(&LocalElem::lambda(emb, M));
        let diff = zeta7.pow(7).sub(&LocalElem::from_int(1, emb, M));
        assert!(diff.is_zero_to_prec());
    }

    #[test]
    fn basic_valuations() {
        let emb = EmbType::Type1;
        assert_eq!(LocalElem::from_int(7, emb, M).val().unwrap(), 6);
        assert_eq!(LocalElem::lambda(emb, M).val().unwrap(), 1);
        let seven = LocalElem::from_int(7, emb, M);
        let q = seven.div(&seven).unwrap();
        assert!(q.sub(&LocalElem::from_int(1, emb, M)).is_zero_to_prec());
    }

    #[test]
    fn teichmuller_values() {
        let one = teichmuller(1, M);
        assert!(one.sub(&PadicNum::from_int(1, M)).is_zero_to_prec());
        let six = teichmuller(6, M);
        assert!(six.sub(&PadicNum::from_int(-1, M)).is_zero_to_prec());
        let three = teichmuller(3, M);
        let mut p = PadicNum::from_int(1, M);
        for _ in 0..6 {
            p = p.mul(&three);
        }
        assert!(p.sub(&PadicNum::from_int(1, M)).is_zero_to_prec());
    }

    #[test]
    fn phi42_vanishes_on_embedded_zeta() {
        for e in [t1(), t2()] {
            let mut acc = LocalElem::zero(e.emb_type());
            for (i, &a) in PHI42.iter().enumerate() {
                acc = acc.add(&e.zeta().pow(i as u64).scale(&PadicNum::from_int(a, M)));
            }
            assert!(acc.is_zero_to_prec(), "{:?}", e.emb_type());
        }
    }

    #[test]
    fn type_conditions() {
        let zeta = CycloElem::zeta_pow(1);
        let zp2 = &zeta + &CycloElem::from_int(2);
        let zp4 = &zeta + &CycloElem::from_int(4);
        assert_eq!(t1().val6(&zp2).unwrap(), 1);
        assert_eq!(t2().val6(&zp2).unwrap(), 0);
        assert_eq!(t2().val6(&zp4).unwrap(), 1);
        assert_eq!(t1().val6(&zp4).unwrap(), 0);
    }

    #[test]
    fn pi_valuations() {
        assert_eq!(t1().val6(&pi1()).unwrap(), 1);
        assert_eq!(t1().val6(&pi2()).unwrap(), 0);
        assert_eq!(t2().val6(&pi1()).unwrap(), 0);
        assert_eq!(t2().val6(&pi2()).unwrap(), 1);
    }

    #[test]
    fn seven_factors_as_pi_powers() {
        // v(π₁⁶π₂⁶ / 7) = 0 under both embeddings
        let u = (&pi1() * &pi2()).pow(6).scale(&Rat::new(1.into(), 7.into()));
        assert_eq!(t1().val6(&u).unwrap(), 0);
        assert_eq!(t2().val6(&u).unwrap(), 0);
    }

    fn small_cyclo(seed: &[i8]) -> CycloElem {
        let coeffs: Vec<Rat> =
            seed.iter().take(12).map(|&s| Rat::from_integer((s as i64).into())).collect();
        CycloElem::from_coeffs(&coeffs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn embedding_is_homomorphism(a in proptest::collection::vec(-5i8..=5, 12),
                                     b in proptest::collection::vec(-5i8..=5, 12)) {
            let e = t1();
            let (a, b) = (small_cyclo(&a), small_cyclo(&b));
            let prod = e.embed(&(&a * &b)).sub(&e.embed(&a).mul(&e.embed(&b)));
            prop_assert!(prod.is_zero_to_prec());
            let sum = e.embed(&(&a + &b)).sub(&e.embed(&a).add(&e.embed(&b)));
            prop_assert!(sum.is_zero_to_prec());
        }

        #[test]
        fn valuation_rules(a in proptest::collection::vec(-5i8..=5, 12),
                           b in proptest::collection::vec(-5i8..=5, 12)) {
            let e = t2();
            let (a, b) = (small_cyclo(&a), small_cyclo(&b));
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (va, vb) = (e.val6(&a).unwrap(), e.val6(&b).unwrap());
            prop_assert_eq!(e.val6(&(&a * &b)).unwrap(), va + vb);
            let s = &a + &b;
            if !s.is_zero() {
                let vs = e.val6(&s).unwrap();
                prop_assert!(vs >= va.min(vb));
                if va != vb {
                    prop_assert_eq!(vs, va.min(vb));
                }
            }
        }
    }

    #[test]
    fn roots_of_x_squared_minus_one() {
        let emb = EmbType::Type1;
        let poly = vec![
            LocalElem::from_int(-1, emb, M),
            LocalElem::zero(emb),
            LocalElem::from_int(1, emb, M),
        ];
        let roots = find_roots(&poly, M).unwrap();
        assert_eq!(roots.len(), 2);
        let mut residues: Vec<u8> = roots.iter().map(|r| r.residue().unwrap()).collect();
        residues.sort();
        assert_eq!(residues, vec![1, 6]);
    }

    #[test]
    fn x_squared_minus_seven_has_no_roots() {
        let emb = EmbType::Type1;
        let poly = vec![
            LocalElem::from_int(-7, emb, M),
            LocalElem::zero(emb),
            LocalElem::from_int(1, emb, M),
        ];
        assert!(find_roots(&poly, M).unwrap().is_empty());
    }

    #[test]
    fn root_with_negative_valuation() {
        // 7x − 1 has the single root 1/7, of valuation −6.
        let emb = EmbType::Type1;
        let poly = vec![LocalElem::from_int(-1, emb, M), LocalElem::from_int(7, emb, M)];
        let roots = find_roots(&poly, M).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].val().unwrap(), -6);
    }

    #[test]
    fn digit_expansion_round_trip() {
        let e = t1();
        let x = LocalElem::from_int(123, e.emb_type(), M);
        let lam = LocalElem::lambda(e.emb_type(), M);
        let digits = digit_expansion(&x, &lam, 30).unwrap();
        let mut acc = LocalElem::zero(e.emb_type());
        let mut p = LocalElem::from_int(1, e.emb_type(), M);
        for &d in &digits {
            acc = acc.add(&p.scale(&PadicNum::from_int(d as i64, M)));
            p = p.mul(&lam);
        }
        let diff = acc.sub(&x);
        assert!(diff.val().map(|v| v >= 30).unwrap_or(true));
    }

    #[test]
    fn separable_cubic_roots_and_residuals() {
        let emb = EmbType::Type2;
        // (x−1)(x−2)(x−9) = x³ − 12x² + 29x − 18
        let poly = vec![
            LocalElem::from_int(-18, emb, M),
            LocalElem::from_int(29, emb, M),
            LocalElem::from_int(-12, emb, M),
            LocalElem::from_int(1, emb, M),
        ];
        let roots = find_roots(&poly, M).unwrap();
        assert_eq!(roots.len(), 3);
        for r in &roots {
            let v = eval_poly(&poly, r).val();
            assert!(v.map(|v| v >= 6 * (M as i64 - 2)).unwrap_or(true));
        }
    }
}
