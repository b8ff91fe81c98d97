//! Truncated Laurent q-expansions with exact cyclotomic coefficients.
//!
//! A [`QSeries`] stores coefficients for exponents `lead .. prec`, with the
//! contract that every coefficient below `prec` is exact. Multiplication and
//! division propagate the minimum *relative* precision of the operands, so a
//! computation can never silently claim more coefficients than it knows.
//!
//! The module also provides the Dedekind eta quotients used as curve
//! parameters, the weight 1 and weight 7 Eisenstein series, the U_p and V_p
//! actions on q-expansions, and re-expansion of a series in powers of another
//! series with simple zero.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::{bernoulli_generalized, CycloElem, DirichletChar, Rat};
use crate::error::{Error, Result};

/// A truncated Laurent series Σ a_n q^n with exact coefficients in Q(ζ₄₂).
///
/// Invariants: if the series is nonzero, the coefficient at `lead` is
/// nonzero; coefficients are stored for exponents `lead..prec`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    lead: i64,
    coeffs: Vec<CycloElem>,
    prec: i64,
}

impl QSeries {
    /// The zero series, known to precision `prec`.
    pub fn zero(prec: i64) -> Self {
        QSeries { lead: prec, coeffs: vec![], prec }
    }

    pub fn constant(c: CycloElem, prec: i64) -> Self {
        Self::monomial(c, 0, prec)
    }

    pub fn one(prec: i64) -> Self {
        Self::constant(CycloElem::one(), prec)
    }

    /// c · q^e.
    pub fn monomial(c: CycloElem, e: i64, prec: i64) -> Self {
        if c.is_zero() || e >= prec {
            return Self::zero(prec);
        }
        QSeries { lead: e, coeffs: vec![c], prec }
    }

    /// Builds a series from coefficients starting at exponent `lead`.
    pub fn from_coeffs(lead: i64, coeffs: Vec<CycloElem>, prec: i64) -> Self {
        let mut s = QSeries { lead, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        // Drop coefficients at or beyond prec.
        if self.lead + self.coeffs.len() as i64 > self.prec {
            let keep = (self.prec - self.lead).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        // Advance lead past zero coefficients.
        let nz = self.coeffs.iter().position(|c| !c.is_zero());
        match nz {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.lead += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.lead = self.prec;
            }
        }
        // Trailing zeros are harmless but wasteful.
        while self.coeffs.last().is_some_and(CycloElem::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn lead(&self) -> i64 {
        self.lead
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of q^e (zero for exponents below `lead`).
    ///
    /// # Panics
    ///
    /// Panics when `e >= prec`: that coefficient is not known.
    pub fn coeff(&self, e: i64) -> CycloElem {
        assert!(e < self.prec, "coefficient of q^{} requested beyond precision {}", e, self.prec);
        if e < self.lead || e - self.lead >= self.coeffs.len() as i64 {
            CycloElem::zero()
        } else {
            self.coeffs[(e - self.lead) as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&CycloElem> {
        self.coeffs.first()
    }

    /// Restricts the precision window to `prec` (no-op if already tighter).
    pub fn truncate(&self, prec: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.min(prec);
        s.normalize();
        s
    }

    /// Multiplies by q^k.
    pub fn shift(&self, k: i64) -> Self {
        QSeries { lead: self.lead + k, coeffs: self.coeffs.clone(), prec: self.prec + k }
    }

    pub fn scale(&self, c: &CycloElem) -> Self {
        if c.is_zero() {
            return Self::zero(self.prec);
        }
        let mut s = QSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            prec: self.prec,
        };
        s.normalize();
        s
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.min(rhs.prec);
        if self.is_zero() {
            return rhs.truncate(prec);
        }
        if rhs.is_zero() {
            return self.truncate(prec);
        }
        let lead = self.lead.min(rhs.lead);
        let top = (self.lead + self.coeffs.len() as i64)
            .max(rhs.lead + rhs.coeffs.len() as i64)
            .min(prec);
        let mut coeffs = Vec::with_capacity((top - lead).max(0) as usize);
        for e in lead..top {
            let mut c = CycloElem::zero();
            if e >= self.lead && e - self.lead < self.coeffs.len() as i64 {
                c += &self.coeffs[(e - self.lead) as usize];
            }
            if e >= rhs.lead && e - rhs.lead < rhs.coeffs.len() as i64 {
                c += &rhs.coeffs[(e - rhs.lead) as usize];
            }
            coeffs.push(c);
        }
        Self::from_coeffs(lead, coeffs, prec)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        QSeries {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    /// Product; keeps the minimum relative precision of the factors.
    pub fn mul(&self, rhs: &Self) -> Self {
        let rel = (self.prec - self.lead).min(rhs.prec - rhs.lead);
        let lead = self.lead + rhs.lead;
        let prec = lead + rel;
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(prec);
        }
        let n = rel.max(0) as usize;
        let mut coeffs = vec![CycloElem::zero(); n.min(self.coeffs.len() + rhs.coeffs.len())];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= n {
                continue;
            }
            let jmax = (n - i).min(rhs.coeffs.len());
            for (j, b) in rhs.coeffs.iter().take(jmax).enumerate() {
                if !b.is_zero() {
                    let t = a * b;
                    if i + j < coeffs.len() {
                        coeffs[i + j] += &t;
                    } else {
                        coeffs.resize(i + j + 1, CycloElem::zero());
                        coeffs[i + j] = t;
                    }
                }
            }
        }
        Self::from_coeffs(lead, coeffs, prec)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let rel = (self.prec - self.lead) as usize;
        let lead_inv = self.coeffs[0].inv()?;
        let mut out = vec![CycloElem::zero(); rel];
        out[0] = lead_inv.clone();
        for k in 1..rel {
            // coefficient k of (self/lead-term) * out must vanish
            let mut acc = CycloElem::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                if !self.coeffs[i].is_zero() {
                    acc += &(&self.coeffs[i] * &out[k - i]);
                }
            }
            out[k] = -&(&acc * &lead_inv);
        }
        Ok(Self::from_coeffs(-self.lead, out, -self.lead + rel as i64))
    }

    /// Quotient by long division; keeps the minimum relative precision.
    /// Unlike multiplying by `inv()`, intermediate coefficients never exceed
    /// the size of the true quotient coefficients.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let rel = (self.prec - self.lead).min(rhs.prec - rhs.lead);
        let lead = self.lead - rhs.lead;
        if self.is_zero() {
            return Ok(Self::zero(lead + rel));
        }
        let n = rel.max(0) as usize;
        let lead_inv = rhs.coeffs[0].inv()?;
        let mut q = vec![CycloElem::zero(); n];
        for k in 0..n {
            let mut acc = self.coeff_rel(k);
            for i in 1..=k.min(rhs.coeffs.len() - 1) {
                if !rhs.coeffs[i].is_zero() && !q[k - i].is_zero() {
                    acc -= &(&rhs.coeffs[i] * &q[k - i]);
                }
            }
            q[k] = &acc * &lead_inv;
        }
        Ok(Self::from_coeffs(lead, q, lead + rel))
    }

    /// Coefficient at offset k from the lead (zero beyond stored range).
    fn coeff_rel(&self, k: usize) -> CycloElem {
        self.coeffs.get(k).cloned().unwrap_or_else(CycloElem::zero)
    }

    /// Integer power, negative exponents via inversion.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one(self.prec - self.lead));
        }
        let (mut base, mut k) =
            if e < 0 { (self.inv()?, (-e) as u64) } else { (self.clone(), e as u64) };
        let mut acc: Option<Self> = None;
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
        Ok(acc.unwrap())
    }

    /// d/dq scaled by q: Σ a_n q^n ↦ Σ n·a_n q^n.
    pub fn q_d_dq(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Rat::from_integer(BigInt::from(self.lead + i as i64))))
            .collect();
        Self::from_coeffs(self.lead, coeffs, self.prec)
    }
}

/// Builds the eta quotient Π η_m(q)^e from (m, e) pairs.
///
/// η_m = q^{m/24} Π_{n≥1} (1 − q^{mn}); the total leading exponent
/// Σ m·e / 24 must be an integer.
pub fn eta_quotient(spec: &[(i64, i64)], prec: i64) -> Result<QSeries> {
    let weight: i64 = spec.iter().map(|&(m, e)| m * e).sum();
    if weight % 24 != 0 {
        return Err(Error::NonIntegralLead(weight));
    }
    let lead = weight / 24;
    let rel = (prec - lead).max(1) as usize;
    // Work with rational coefficients on the product of (1 - q^{mn})^e.
    let mut c: Vec<Rat> = vec![Rat::zero(); rel];
    c[0] = Rat::one();
    for &(m, e) in spec {
        assert!(m > 0, "eta index must be positive");
        let reps = e.unsigned_abs();
        for _ in 0..reps {
            let mut n = 1;
            while (m * n) < rel as i64 {
                let s = (m * n) as usize;
                if e > 0 {
                    // multiply by (1 - q^s)
                    for i in (s..rel).rev() {
                        let t = c[i - s].clone();
                        c[i] -= t;
                    }
                } else {
                    // multiply by (1 - q^s)^{-1} = 1 + q^s + q^{2s} + ...
                    for i in s..rel {
                        let t = c[i - s].clone();
                        c[i] += t;
                    }
                }
                n += 1;
            }
        }
    }
    let coeffs = c.into_iter().map(CycloElem::from_rat).collect();
    Ok(QSeries::from_coeffs(lead, coeffs, lead + rel as i64))
}

/// The level-7 parameter t = (η₁/η₇)⁴, with a simple pole in q.
pub fn t_series(prec: i64) -> QSeries {
    eta_quotient(&[(1, 4), (7, -4)], prec).expect("lead -1 is integral")
}

/// The level-49 parameter x = η₁/η₄₉.
pub fn x_series(prec: i64) -> QSeries {
    eta_quotient(&[(1, 1), (49, -1)], prec).expect("lead -2 is integral")
}

/// The level-49 parameter y = (η₇/η₄₉)⁴.
pub fn y_series(prec: i64) -> QSeries {
    eta_quotient(&[(7, 4), (49, -4)], prec).expect("lead -7 is integral")
}

/// U_p on q-expansions: Σ a_n q^n ↦ Σ a_{np} q^n.
pub fn u_p(f: &QSeries, p: i64) -> QSeries {
    assert!(p > 1);
    let prec = f.prec().div_euclid(p) + if f.prec().rem_euclid(p) > 0 { 1 } else { 0 };
    let lead = f.lead().div_euclid(p);
    let mut coeffs = Vec::new();
    for n in lead..prec {
        coeffs.push(f.coeff(n * p));
    }
    QSeries::from_coeffs(lead, coeffs, prec)
}

/// V_p on q-expansions: F(q) ↦ F(q^p).
pub fn v_p_substitute(f: &QSeries, p: i64) -> QSeries {
    assert!(p > 1);
    if f.is_zero() {
        return QSeries::zero(f.prec() * p);
    }
    let lead = f.lead() * p;
    let rel = (f.prec() - f.lead()) as usize;
    let mut coeffs = vec![CycloElem::zero(); (rel - 1) * p as usize + 1];
    for i in 0..rel {
        let c = f.coeff(f.lead() + i as i64);
        if !c.is_zero() {
            coeffs[i * p as usize] = c;
        }
    }
    QSeries::from_coeffs(lead, coeffs, f.prec() * p)
}

/// The weight 1 Eisenstein series 1 − (2/B₁,χ) Σ (Σ_{d|n} χ(d)) q^n.
pub fn eisenstein_w1(chi: &DirichletChar, prec: i64) -> QSeries {
    assert!(chi.is_odd(), "weight 1 Eisenstein series needs an odd character");
    let b = bernoulli_generalized(1, chi);
    assert!(!b.is_zero(), "B_{{1,chi}} vanishes only for even characters");
    eisenstein(chi, 0, &b, 2, prec)
}

/// The weight 7 Eisenstein series 1 − (14/B₇,τ) Σ (Σ_{d|n} τ(d) d⁶) q^n.
pub fn eisenstein_w7(tau: &DirichletChar, prec: i64) -> QSeries {
    assert!(tau.is_odd());
    let b = bernoulli_generalized(7, tau);
    assert!(!b.is_zero());
    eisenstein(tau, 6, &b, 14, prec)
}

fn eisenstein(chi: &DirichletChar, dpow: u32, b: &CycloElem, scale_num: i64, prec: i64) -> QSeries {
    let n = prec.max(1) as usize;
    let mut sums = vec![CycloElem::zero(); n];
    if n > 0 {
        sums[0] = CycloElem::one();
    }
    // sieve of divisor sums: for each d, add χ(d) d^dpow at all multiples
    for d in 1..n as i64 {
        let v = chi.eval(d);
        if v.is_zero() {
            continue;
        }
        let v = if dpow == 0 { v } else { v.scale(&Rat::from_integer(BigInt::from(d).pow(dpow))) };
        let mut m = d as usize;
        while m < n {
            sums[m] += &v;
            m += d as usize;
        }
    }
    let factor = -&(&CycloElem::from_int(scale_num) * &b.inv().expect("nonzero Bernoulli"));
    for s in sums.iter_mut().skip(1) {
        *s = &*s * &factor;
    }
    QSeries::from_coeffs(0, sums, prec)
}

/// Writes `f = Σ dᵢ uⁱ + O(q^{n+1})` for a parameter `u` with simple zero and
/// invertible leading coefficient, returning d₀..d_n.
pub fn reexpand(f: &QSeries, u: &QSeries, n: usize) -> Result<Vec<CycloElem>> {
    if u.lead() != 1 {
        return Err(Error::InvalidArgument(format!(
            "re-expansion parameter must have lead 1, got {}",
            u.lead()
        )));
    }
    if f.lead() < 0 {
        return Err(Error::InvalidArgument(
            "re-expansion input must have non-negative lead".into(),
        ));
    }
    if f.prec() < n as i64 + 1 {
        return Err(Error::InsufficientPrecision { needed: n as i64 + 1, have: f.prec() });
    }
    let u_lead_inv =
        u.leading_coeff().ok_or(Error::ZeroSeries)?.inv().map_err(|_| Error::ZeroSeries)?;
    let window = n as i64 + 1;
    let mut rem = f.truncate(window);
    let mut upow = QSeries::one(window); // u^i truncated to the window
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n as i64 {
        let d = if rem.is_zero() || rem.lead() > i {
            CycloElem::zero()
        } else {
            // leading elimination: coefficient of q^i divided by lead of u^i
            &rem.coeff(i) * &u_lead_inv.pow(i as u64)
        };
        if !d.is_zero() {
            rem = rem.sub(&upow.scale(&d));
        }
        debug_assert!(rem.is_zero() || rem.lead() > i);
        out.push(d);
        if i < n as i64 {
            upow = upow.mul(u).truncate(window);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat_series(lead: i64, vals: &[i64], prec: i64) -> QSeries {
        QSeries::from_coeffs(lead, vals.iter().map(|&v| CycloElem::from_int(v)).collect(), prec)
    }

    #[test]
    fn eta_quotient_leads() {
        let t = t_series(20);
        assert_eq!(t.lead(), -1);
        assert_eq!(t.leading_coeff().unwrap(), &CycloElem::one());
        assert_eq!(x_series(20).lead(), -2);
        assert_eq!(y_series(20).lead(), -7);
        assert_eq!(eta_quotient(&[(1, 1)], 10).unwrap_err(), Error::NonIntegralLead(1));
    }

    #[test]
    fn eta_inverse_pair_is_one() {
        let a = eta_quotient(&[(1, 4), (7, -4)], 40).unwrap();
        let b = eta_quotient(&[(1, -4), (7, 4)], 40).unwrap();
        let prod = a.mul(&b);
        assert_eq!(prod.lead(), 0);
        let one = QSeries::one(prod.prec());
        assert!(prod.sub(&one).is_zero());
    }

    #[test]
    fn y_is_t_of_q_to_the_7() {
        let prec = 140;
        let y = y_series(prec);
        let t7 = v_p_substitute(&t_series(prec / 7 + 2), 7).truncate(prec);
        assert!(y.sub(&t7.truncate(y.prec())).is_zero());
    }

    #[test]
    fn mul_and_inverse() {
        // (1+q)(1-q) = 1 - q^2
        let a = rat_series(0, &[1, 1], 10);
        let b = rat_series(0, &[1, -1], 10);
        assert_eq!(a.mul(&b), rat_series(0, &[1, 0, -1], 10));
        // t * t^{-1} = 1
        let t = t_series(30);
        let prod = t.mul(&t.inv().unwrap());
        assert!(prod.sub(&QSeries::one(prod.prec())).is_zero());
    }

    #[test]
    fn division_by_zero_series_fails() {
        let z = QSeries::zero(10);
        assert_eq!(rat_series(0, &[1], 10).div(&z).unwrap_err(), Error::ZeroSeries);
    }

    #[test]
    fn u7_on_monomials() {
        let q7 = rat_series(7, &[1], 20);
        assert_eq!(u_p(&q7, 7), rat_series(1, &[1], 3));
        let q3 = rat_series(3, &[1], 20);
        assert!(u_p(&q3, 7).is_zero());
        // Σ n q^n ↦ Σ 7n q^n
        let f = QSeries::from_coeffs(1, (1..30).map(CycloElem::from_int).collect(), 30);
        let uf = u_p(&f, 7);
        for n in 1..uf.prec() {
            assert_eq!(uf.coeff(n), CycloElem::from_int(7 * n));
        }
    }

    #[test]
    fn v7_substitution() {
        let q = rat_series(1, &[1], 5);
        assert_eq!(v_p_substitute(&q, 7), rat_series(7, &[1], 35));
        let f = rat_series(0, &[1, 1], 5);
        let vf = v_p_substitute(&f, 7);
        assert_eq!(vf.coeff(0), CycloElem::one());
        assert_eq!(vf.coeff(7), CycloElem::one());
        assert!(vf.coeff(3).is_zero());
    }

    #[test]
    fn u_after_v_is_identity() {
        let t = t_series(25);
        let back = u_p(&v_p_substitute(&t, 7), 7);
        assert!(back.sub(&t.truncate(back.prec())).is_zero());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn u7_projection_formula(fv in proptest::collection::vec(-5i64..=5, 1..20),
                                 gv in proptest::collection::vec(-5i64..=5, 1..6),
                                 flead in -3i64..3, glead in 0i64..2) {
            // U_p(F · V(G)) = G · U_p(F)
            let f = rat_series(flead, &fv, flead + fv.len() as i64);
            let g = rat_series(glead, &gv, glead + gv.len() as i64);
            let lhs = u_p(&f.mul(&v_p_substitute(&g, 7)), 7);
            let rhs = g.mul(&u_p(&f, 7));
            let prec = lhs.prec().min(rhs.prec());
            prop_assert!(lhs.truncate(prec).sub(&rhs.truncate(prec)).is_zero());
        }

        #[test]
        fn u7_is_linear(av in proptest::collection::vec(-5i64..=5, 1..15),
                        bv in proptest::collection::vec(-5i64..=5, 1..15)) {
            let a = rat_series(0, &av, av.len() as i64);
            let b = rat_series(0, &bv, bv.len() as i64);
            let lhs = u_p(&a.add(&b), 7);
            let rhs = u_p(&a, 7).add(&u_p(&b, 7));
            let prec = lhs.prec().min(rhs.prec());
            prop_assert!(lhs.truncate(prec).sub(&rhs.truncate(prec)).is_zero());
        }
    }

    #[test]
    fn eisenstein_w1_first_coefficients() {
        let chi = DirichletChar::chi();
        let e = eisenstein_w1(&chi, 8);
        assert_eq!(e.coeff(0), CycloElem::one());
        let b = bernoulli_generalized(1, &chi);
        let m2_over_b = (&CycloElem::from_int(-2) / &b).unwrap();
        assert_eq!(e.coeff(1), m2_over_b);
        // divisors of 2: 1 and 2
        let expect2 = &m2_over_b * &(&CycloElem::one() + &chi.eval(2));
        assert_eq!(e.coeff(2), expect2);
    }

    #[test]
    fn eisenstein_w7_first_coefficients() {
        let tau = DirichletChar::tau(1);
        let e = eisenstein_w7(&tau, 6);
        assert_eq!(e.coeff(0), CycloElem::one());
        let b = bernoulli_generalized(7, &tau);
        let m14_over_b = (&CycloElem::from_int(-14) / &b).unwrap();
        assert_eq!(e.coeff(1), m14_over_b);
        let expect2 =
            &m14_over_b * &(&CycloElem::one() + &tau.eval(2).scale(&Rat::from_integer(64.into())));
        assert_eq!(e.coeff(2), expect2);
    }

    #[test]
    fn eisenstein_self_division_is_one() {
        let chi = DirichletChar::chi();
        let e = eisenstein_w1(&chi, 12);
        let q = e.div(&e).unwrap();
        assert!(q.sub(&QSeries::one(q.prec())).is_zero());
    }

    #[test]
    fn reexpand_simple_cases() {
        let prec = 40;
        let u = t_series(prec).inv().unwrap();
        // f = u
        let d = reexpand(&u, &u, 5).unwrap();
        for (i, c) in d.iter().enumerate() {
            assert_eq!(*c, CycloElem::from_int((i == 1) as i64), "index {i}");
        }
        // f = u^2 + 3u^5
        let f = u.pow(2).unwrap().add(&u.pow(5).unwrap().scale(&CycloElem::from_int(3)));
        let d = reexpand(&f, &u, 7).unwrap();
        for (i, c) in d.iter().enumerate() {
            let want = match i {
                2 => 1,
                5 => 3,
                _ => 0,
            };
            assert_eq!(*c, CycloElem::from_int(want), "index {i}");
        }
        // f = t^{-2} is exactly u^2
        let f = t_series(prec).pow(-2).unwrap();
        let d = reexpand(&f, &u, 6).unwrap();
        for (i, c) in d.iter().enumerate() {
            assert_eq!(*c, CycloElem::from_int((i == 2) as i64), "index {i}");
        }
    }

    #[test]
    fn reexpand_reassembles() {
        let prec = 30;
        let u = t_series(prec).inv().unwrap();
        let chi = DirichletChar::chi();
        let f = eisenstein_w1(&chi, prec).mul(&u.pow(2).unwrap());
        let n = 12;
        let d = reexpand(&f, &u, n).unwrap();
        let mut acc = QSeries::zero(n as i64 + 1);
        let mut upow = QSeries::one(n as i64 + 1);
        for c in &d {
            acc = acc.add(&upow.scale(c));
            upow = upow.mul(&u).truncate(n as i64 + 1);
        }
        let diff = acc.sub(&f.truncate(n as i64 + 1));
        assert!(diff.is_zero());
    }

    #[test]
    fn reexpand_requires_precision() {
        let u = t_series(5).inv().unwrap();
        let f = u.pow(2).unwrap();
        assert!(matches!(reexpand(&f, &u, 50), Err(Error::InsufficientPrecision { .. })));
    }
}
