//! Characteristic series of the truncated operator matrix, coefficient
//! valuations, Newton polygons and the closed-form slope predictions.
//!
//! For an n×n truncation M the characteristic polynomial is written
//! f(λ) = 1 − c₁λ + c₂λ² − ⋯ + (−1)ⁿcₙλⁿ, so cⱼ is the sum of all principal
//! j×j minors (c₁ the trace, cₙ the determinant). As n grows the cⱼ
//! stabilize; slopes are only reported on the certified stable range,
//! obtained by comparing against a larger truncation.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclotomic::{CycloElem, Rat};
use crate::error::{Error, Result};
use crate::localfield::{EmbType, Embedding};
use crate::u7matrix::U7Matrix;

/// Characteristic-series coefficients c₁..c_n of a truncation, exact in K.
#[derive(Clone, Debug)]
pub struct CharSeries {
    n: usize,
    k: u32,
    emb: EmbType,
    qprec: i64,
    coeffs: Vec<CycloElem>,
}

impl CharSeries {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> u32 {
        self.k
    }

    pub fn emb(&self) -> EmbType {
        self.emb
    }

    pub fn qprec(&self) -> i64 {
        self.qprec
    }

    /// c_j, 1-indexed.
    pub fn coeff(&self, j: usize) -> &CycloElem {
        &self.coeffs[j - 1]
    }

    pub fn coeffs(&self) -> &[CycloElem] {
        &self.coeffs
    }

    /// Sextuple-normalized valuations of c₁..c_n at `m` digits of working
    /// precision. A coefficient that is zero to precision is an error, never
    /// a large valuation.
    pub fn valuations(&self, m: u32) -> Result<Vec<i64>> {
        let emb = Embedding::new(self.emb, m);
        self.coeffs.iter().map(|c| emb.val6(c)).collect()
    }
}

fn mat_mul(a: &[Vec<CycloElem>], b: &[Vec<CycloElem>]) -> Vec<Vec<CycloElem>> {
    let n = a.len();
    let mut out = vec![vec![CycloElem::zero(); n]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for (j, bkj) in b[k].iter().enumerate() {
                if !bkj.is_zero() {
                    out[i][j] += &(aik * bkj);
                }
            }
        }
    }
    out
}

fn trace(a: &[Vec<CycloElem>]) -> CycloElem {
    let mut t = CycloElem::zero();
    for (i, row) in a.iter().enumerate() {
        t += &row[i];
    }
    t
}

/// tr(A·B) without forming the product.
fn trace_product(a: &[Vec<CycloElem>], b: &[Vec<CycloElem>]) -> CycloElem {
    let n = a.len();
    let mut t = CycloElem::zero();
    for i in 0..n {
        for j in 0..n {
            if !a[i][j].is_zero() && !b[j][i].is_zero() {
                t += &(&a[i][j] * &b[j][i]);
            }
        }
    }
    t
}

/// Elementary symmetric functions e₁..e_n from power sums via the Newton
/// identities: k·e_k = Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} p_i.
fn newton_identities(p: &[CycloElem]) -> Vec<CycloElem> {
    let n = p.len();
    let mut e: Vec<CycloElem> = vec![CycloElem::one()];
    for k in 1..=n {
        let mut acc = CycloElem::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i - 1];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        e.push(acc.scale(&Rat::new(BigInt::one(), BigInt::from(k))));
    }
    e.remove(0);
    e
}

/// Characteristic-series coefficients via power traces and the Newton
/// identities.
pub fn char_series(m: &U7Matrix) -> CharSeries {
    let coeffs = char_coeffs_newton(m.rows());
    CharSeries { n: m.n(), k: m.weight(), emb: m.emb(), qprec: m.qprec(), coeffs }
}

/// Power-trace computation on a raw matrix. Denominators are cleared up
/// front so the matrix power arithmetic stays integral, and only powers up
/// to ⌈n/2⌉ are formed; higher traces come from pairwise trace products.
pub fn char_coeffs_newton(rows: &[Vec<CycloElem>]) -> Vec<CycloElem> {
    let n = rows.len();
    if n == 0 {
        return vec![];
    }
    // clear denominators: e_k(D·B) = D^k·e_k(B)
    let mut d = BigInt::one();
    for row in rows {
        for e in row {
            d = num_integer::lcm(d, e.denominator());
        }
    }
    let dr = Rat::from_integer(d.clone());
    let a: Vec<Vec<CycloElem>> =
        rows.iter().map(|r| r.iter().map(|e| e.scale(&dr)).collect()).collect();

    let cap = n.div_ceil(2);
    let mut powers: Vec<Vec<Vec<CycloElem>>> = vec![a.clone()];
    for _ in 1..cap {
        let next = mat_mul(powers.last().unwrap(), &a);
        powers.push(next);
    }
    let mut p: Vec<CycloElem> = Vec::with_capacity(n);
    for k in 1..=n {
        if k <= cap {
            p.push(trace(&powers[k - 1]));
        } else {
            p.push(trace_product(&powers[cap - 1], &powers[k - cap - 1]));
        }
    }
    let e = newton_identities(&p);
    // undo the scaling
    let dinv = Rat::new(BigInt::one(), d);
    let mut dpow = Rat::one();
    e.into_iter()
        .map(|ek| {
            dpow = &dpow * &dinv;
            ek.scale(&dpow)
        })
        .collect()
}

/// Independent characteristic-polynomial computation by the division-free
/// Berkowitz algorithm; returns c₁..c_n with the same sign convention.
pub fn char_coeffs_berkowitz(rows: &[Vec<CycloElem>]) -> Vec<CycloElem> {
    let n = rows.len();
    // `poly` holds det(xI − A_r) coefficients from the leading power down.
    let mut poly: Vec<CycloElem> = vec![CycloElem::one()];
    for r in 1..=n {
        // Toeplitz column: [1, −a_rr, −R·S, −R·M·S, …] for the principal
        // (r−1)-block M with bordering row R and column S.
        let mut toeplitz: Vec<CycloElem> = Vec::with_capacity(r + 1);
        toeplitz.push(CycloElem::one());
        toeplitz.push(-&rows[r - 1][r - 1]);
        if r > 1 {
            let mut w: Vec<CycloElem> = (0..r - 1).map(|i| rows[i][r - 1].clone()).collect();
            for _ in 0..r - 1 {
                let mut dot = CycloElem::zero();
                for (i, wi) in w.iter().enumerate() {
                    if !wi.is_zero() {
                        dot += &(&rows[r - 1][i] * wi);
                    }
                }
                toeplitz.push(-&dot);
                let mut next = vec![CycloElem::zero(); r - 1];
                for (i, ni) in next.iter_mut().enumerate() {
                    for (kk, wk) in w.iter().enumerate() {
                        if !wk.is_zero() && !rows[i][kk].is_zero() {
                            *ni += &(&rows[i][kk] * wk);
                        }
                    }
                }
                w = next;
            }
        }
        // Toeplitz product: keep only the first r+1 convolution terms (the
        // Toeplitz matrix is lower-triangular banded of shape (r+1)×r).
        let mut next = vec![CycloElem::zero(); poly.len() + 1];
        for (i, t) in toeplitz.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for (j, c) in poly.iter().enumerate() {
                if i + j < next.len() && !c.is_zero() {
                    next[i + j] += &(t * c);
                }
            }
        }
        poly = next;
    }
    // det(xI − A) = Σ poly[k] x^{n−k} with poly[k] = (−1)^k e_k
    poly.into_iter().enumerate().skip(1).map(|(k, c)| if k % 2 == 1 { -&c } else { c }).collect()
}

/// Largest j such that c₁..c_j agree between two truncations: equal
/// valuations, and a difference at least one full 7-adic unit (six sextuple
/// steps) above them. Equal sizes are stable by convention.
pub fn stability_check(a: &CharSeries, b: &CharSeries, m: u32) -> Result<usize> {
    assert_eq!(a.emb(), b.emb());
    if a.n() == b.n() {
        return Ok(a.n());
    }
    let (small, large) = if a.n() < b.n() { (a, b) } else { (b, a) };
    let emb = Embedding::new(a.emb(), m);
    for j in 1..=small.n() {
        let va = emb.val6(small.coeff(j))?;
        let vb = emb.val6(large.coeff(j))?;
        let ok = va == vb && {
            let diff = small.coeff(j) - large.coeff(j);
            match emb.val6(&diff) {
                Ok(vd) => vd >= va + 6,
                // an exactly-zero or beyond-precision difference clears the bar
                Err(_) => true,
            }
        };
        if !ok {
            return Ok(j - 1);
        }
    }
    Ok(small.n())
}

// ---------------------------------------------------------------------------
// Newton polygons
// ---------------------------------------------------------------------------

/// Lower convex hull of valuation points, with segment slopes ascending.
#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    pub points: Vec<(i64, Rat)>,
    pub hull: Vec<(i64, Rat)>,
    /// (slope, multiplicity), ascending.
    pub slopes: Vec<(Rat, usize)>,
}

/// Computes the lower convex hull of (index, valuation) points and the slope
/// multiset. Indices must be distinct; at least two points.
pub fn newton_polygon(points: &[(i64, Rat)]) -> Result<NewtonPolygon> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument("polygon needs at least two points".into()));
    }
    let mut pts = points.to_vec();
    pts.sort_by_key(|p| p.0);
    for w in pts.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::InvalidArgument("polygon indices must be distinct".into()));
        }
    }
    // Monotone chain, lower hull only; exact rational cross products.
    let mut hull: Vec<(i64, Rat)> = Vec::new();
    for p in &pts {
        while hull.len() >= 2 {
            let a = &hull[hull.len() - 2];
            let b = &hull[hull.len() - 1];
            // drop b unless it lies strictly below the chord a–p
            let lhs = (&b.1 - &a.1) * Rat::from_integer((p.0 - a.0).into());
            let rhs = (&p.1 - &a.1) * Rat::from_integer((b.0 - a.0).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p.clone());
    }
    let mut slopes = Vec::new();
    for w in hull.windows(2) {
        let run = w[1].0 - w[0].0;
        let slope = (&w[1].1 - &w[0].1) / Rat::from_integer(run.into());
        slopes.push((slope, run as usize));
    }
    Ok(NewtonPolygon { points: pts, hull, slopes })
}

/// Newton polygon of a polynomial's coefficient valuations, arranged so that
/// segment slopes are root valuations directly: points (i, v(a_{deg−i})).
pub fn polygon_of_polynomial(
    coeffs_ascending: &[i64],
    v: impl Fn(i64) -> Rat,
) -> Result<NewtonPolygon> {
    let pts: Vec<(i64, Rat)> = coeffs_ascending
        .iter()
        .rev()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| (i as i64, v(a)))
        .collect();
    newton_polygon(&pts)
}

// ---------------------------------------------------------------------------
// slopes
// ---------------------------------------------------------------------------

/// One row of a slope report.
#[derive(Clone, Debug, Serialize)]
pub struct SlopeRow {
    pub index: usize,
    /// val(c_j), sextuple-normalized.
    pub coeff_val6: i64,
    /// Newton slope at this index (v(7) = 1 normalization).
    #[serde(serialize_with = "ser_rat")]
    pub slope: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub predicted: Rat,
    pub matches: bool,
}

fn ser_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// The slopes of the characteristic series within the stable range, from
/// the polygon of {(0,0)} ∪ {(j, val(c_j)/6)}.
pub fn slopes(series: &CharSeries, stable_upto: usize, m: u32) -> Result<Vec<SlopeRow>> {
    let upto = stable_upto.min(series.n());
    if upto == 0 {
        return Ok(vec![]);
    }
    let vals = {
        let emb = Embedding::new(series.emb(), m);
        (1..=upto).map(|j| emb.val6(series.coeff(j))).collect::<Result<Vec<i64>>>()?
    };
    let mut pts: Vec<(i64, Rat)> = vec![(0, Rat::zero())];
    for (j, &v) in vals.iter().enumerate() {
        pts.push((j as i64 + 1, Rat::new(v.into(), 6.into())));
    }
    let polygon = newton_polygon(&pts)?;
    let mut flat: Vec<Rat> = Vec::new();
    for (s, mult) in &polygon.slopes {
        for _ in 0..*mult {
            flat.push(s.clone());
        }
    }
    let rows = flat
        .into_iter()
        .enumerate()
        .map(|(i, slope)| {
            let predicted = predicted_slope(series.emb(), i as u32 + 1);
            let matches = slope == predicted;
            SlopeRow { index: i + 1, coeff_val6: vals[i], slope, predicted, matches }
        })
        .collect();
    Ok(rows)
}

/// The i-th predicted slope (i ≥ 1), in the v(7) = 1 normalization:
/// ⌊9i/7⌋/6 for Type 1 and ⌊(9i+6)/7⌋/6 for Type 2.
pub fn predicted_slope(emb: EmbType, i: u32) -> Rat {
    Rat::new(predicted_slope6(emb, i).into(), 6.into())
}

/// Numerator of the i-th predicted slope in sextuple units.
pub fn predicted_slope6(emb: EmbType, i: u32) -> i64 {
    match emb {
        EmbType::Type1 => (9 * i as i64) / 7,
        EmbType::Type2 => (9 * i as i64 + 6) / 7,
    }
}

/// Predicted valuation of c_j in sextuple units: the partial sum of the
/// predicted slope numerators.
pub fn predicted_coeff_val6(emb: EmbType, j: usize) -> i64 {
    (1..=j as u32).map(|i| predicted_slope6(emb, i)).sum()
}
