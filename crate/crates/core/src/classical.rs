//! Classical-side verification: dimension counts for the cusp-form spaces
//! S_k(Γ₀(49), χ^e), the predicted classical slope lists, and the weight 2
//! eigenvalue valuations recomputed from explicit newform data.
//!
//! The newform data — field polynomials over Q(γ) and the a₇ expressions in
//! a root of the field polynomial — is transcribed once into a checksummed
//! data file and read from there; the code never inlines it a second time.

use num_bigint::BigInt;

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{CycloElem, Rat};
use crate::error::{Error, Result};
use crate::localfield::{digit_expansion, find_roots, EmbType, Embedding, LocalElem};
use crate::spectral::{predicted_slope, predicted_slope6};

// ---------------------------------------------------------------------------
// dimension formula
// ---------------------------------------------------------------------------

/// dim S_k(Γ₀(49), χ^e) = (14k−17)/3 + ε·(χ^e(18) + χ^e(30)) with ε
/// depending on k mod 3. Requires k ≥ 2, χ^e primitive of conductor 49
/// (7 ∤ e) and χ^e(−1) = (−1)^k; the character sum χ^e(18) + χ^e(30) =
/// ζ^{28e} + ζ^{14e} is evaluated exactly and the total must come out an
/// integer.
pub fn cohen_oesterle_dim(k: u32, e: i64) -> Result<i64> {
    if k < 2 {
        return Err(Error::InvalidArgument("weight must be at least 2".into()));
    }
    if e.rem_euclid(7) == 0 {
        return Err(Error::NotPrimitive(e));
    }
    if (e - k as i64) % 2 != 0 {
        return Err(Error::ParityMismatch(k as i64));
    }
    let s = &CycloElem::zeta_pow(28 * e) + &CycloElem::zeta_pow(14 * e);
    if !s.is_rational() {
        return Err(Error::NonIntegerDimension(e));
    }
    let s = s.rational_part().clone();
    // ε = 1/3, 0, −1/3 for k ≡ 0, 1, 2 mod 3
    let eps3 = match k % 3 {
        0 => 1,
        1 => 0,
        _ => -1,
    };
    let total = (Rat::from_integer((14 * k as i64 - 17).into())
        + Rat::from_integer(eps3.into()) * s)
        / Rat::from_integer(3.into());
    if !total.denom().eq(&BigInt::from(1)) {
        return Err(Error::NonIntegerDimension(e));
    }
    Ok(num_traits::ToPrimitive::to_i64(total.numer()).expect("small dimension"))
}

/// Character exponent of the classical space matched by the embedding type:
/// 7k−6 for Type 1 and 8−7k for Type 2.
pub fn matching_exponent(k: u32, emb: EmbType) -> i64 {
    match emb {
        EmbType::Type1 => 7 * k as i64 - 6,
        EmbType::Type2 => 8 - 7 * k as i64,
    }
}

/// Number of predicted slopes strictly below k−1, by the closed piecewise
/// count.
pub fn classical_slope_count(k: u32, emb: EmbType) -> i64 {
    let k = k as i64;
    let r = k.rem_euclid(3);
    match (emb, r) {
        (EmbType::Type1, 0) => 9 + 14 * (k - 3) / 3,
        (EmbType::Type1, 1) => 13 + 14 * (k - 4) / 3,
        (EmbType::Type1, _) => 4 + 14 * (k - 2) / 3,
        (EmbType::Type2, 0) => 8 + 14 * (k - 3) / 3,
        (EmbType::Type2, 1) => 13 + 14 * (k - 4) / 3,
        (EmbType::Type2, _) => 3 + 14 * (k - 2) / 3,
    }
}

/// The predicted slopes strictly below k−1, ascending (the classical slopes
/// of the weight-k space).
pub fn classical_slopes(k: u32, emb: EmbType) -> Vec<Rat> {
    let bound6 = 6 * (k as i64 - 1);
    let mut out = Vec::new();
    let mut i = 1u32;
    loop {
        let s6 = predicted_slope6(emb, i);
        if s6 >= bound6 {
            break;
        }
        out.push(predicted_slope(emb, i));
        i += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// weight 2 newform data
// ---------------------------------------------------------------------------

const NEWFORM_DATA: &str = include_str!("../data/weight2_newforms.json");
const NEWFORM_DATA_FNV64: u64 = 0x7b66674971b8be0b;

fn fnv64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

#[derive(Deserialize)]
struct RawData {
    records: Vec<RawRecord>,
}

#[derive(Deserialize)]
struct RawRecord {
    label: String,
    emb: EmbType,
    gamma_exponent: i64,
    field_poly: Vec<Vec<(i64, String)>>,
    a7_expr: Vec<Vec<(i64, String)>>,
    expected_vals6: Vec<i64>,
    root_digits: Vec<Vec<u8>>,
}

/// One family of weight 2 newforms: field polynomial over Q(γ), the a₇
/// expression in a root, and the expected valuations and digit expansions.
#[derive(Clone, Debug)]
pub struct NewformRecord {
    pub label: String,
    pub emb: EmbType,
    pub gamma_exponent: i64,
    /// Coefficients ascending, already expressed through ζ.
    pub field_poly: Vec<CycloElem>,
    pub a7_expr: Vec<CycloElem>,
    pub expected_vals6: Vec<i64>,
    pub root_digits: Vec<Vec<u8>>,
}

fn gamma_poly_to_cyclo(pairs: &[(i64, String)], gamma_exponent: i64) -> Result<CycloElem> {
    let mut acc = CycloElem::zero();
    for (power, coeff) in pairs {
        let r: Rat =
            coeff.parse().map_err(|_| Error::DataFile(format!("bad rational: {coeff}")))?;
        acc += &CycloElem::zeta_pow(gamma_exponent * power).scale(&r);
    }
    Ok(acc)
}

/// Loads and converts the newform data, verifying the pinned checksum.
pub fn load_newform_records() -> Result<Vec<NewformRecord>> {
    let h = fnv64(NEWFORM_DATA.as_bytes());
    if h != NEWFORM_DATA_FNV64 {
        return Err(Error::DataFile(format!(
            "newform data checksum mismatch: {h:#x} != {NEWFORM_DATA_FNV64:#x}"
        )));
    }
    let raw: RawData = serde_json::from_str(NEWFORM_DATA)
        .map_err(|e| Error::DataFile(format!("newform data parse error: {e}")))?;
    raw.records
        .into_iter()
        .map(|r| {
            let field_poly = r
                .field_poly
                .iter()
                .map(|c| gamma_poly_to_cyclo(c, r.gamma_exponent))
                .collect::<Result<Vec<_>>>()?;
            let a7_expr = r
                .a7_expr
                .iter()
                .map(|c| gamma_poly_to_cyclo(c, r.gamma_exponent))
                .collect::<Result<Vec<_>>>()?;
            if ![1usize, 2, 4].contains(&(field_poly.len() - 1)) {
                return Err(Error::DataFile(format!(
                    "{}: field polynomial degree {} not in {{1, 2, 4}}",
                    r.label,
                    field_poly.len() - 1
                )));
            }
            Ok(NewformRecord {
                label: r.label,
                emb: r.emb,
                gamma_exponent: r.gamma_exponent,
                field_poly,
                a7_expr,
                expected_vals6: r.expected_vals6,
                root_digits: r.root_digits,
            })
        })
        .collect()
}

/// Outcome of the weight 2 check for a single record.
#[derive(Clone, Debug, Serialize)]
pub struct Weight2Record {
    pub label: String,
    /// a₇ valuations at the roots, sorted ascending.
    pub a7_vals6: Vec<i64>,
    pub digits_match: bool,
    pub pass: bool,
}

/// Combined outcome for one embedding type.
#[derive(Clone, Debug, Serialize)]
pub struct Weight2Report {
    pub emb: EmbType,
    pub records: Vec<Weight2Record>,
    /// All a₇ valuations across the records, sorted.
    pub combined_vals6: Vec<i64>,
    pub pass: bool,
}

/// Recomputes the weight 2 eigenvalue valuations for one embedding type:
/// embeds each field polynomial, finds its roots in Q₇(ζ₇), evaluates the
/// a₇ expression at every root, and compares valuations (and the reference
/// digit expansions with respect to the uniformizer π).
pub fn verify_weight2(emb: EmbType, m: u32) -> Result<Weight2Report> {
    let embedding = Embedding::new(emb, m);
    let mut records = Vec::new();
    let mut combined = Vec::new();
    for rec in load_newform_records()?.into_iter().filter(|r| r.emb == emb) {
        let poly: Vec<LocalElem> = rec.field_poly.iter().map(|c| embedding.embed(c)).collect();
        let roots = find_roots(&poly, m)?;
        let degree = rec.field_poly.len() - 1;
        if roots.len() != degree {
            return Err(Error::RootCountMismatch { expected: degree, found: roots.len() });
        }
        let a7_coeffs: Vec<LocalElem> = rec.a7_expr.iter().map(|c| embedding.embed(c)).collect();
        let mut vals = Vec::new();
        for root in &roots {
            let mut a7 = LocalElem::zero(emb);
            for c in a7_coeffs.iter().rev() {
                a7 = a7.mul(root).add(c);
            }
            vals.push(a7.val()?);
        }
        vals.sort_unstable();
        let mut expected = rec.expected_vals6.clone();
        expected.sort_unstable();
        let vals_ok = vals == expected;

        // match the reference digit expansions bijectively against the roots
        let digits_match = if rec.root_digits.is_empty() {
            true
        } else {
            let mut used = vec![false; roots.len()];
            rec.root_digits.iter().all(|reference| {
                let hit = roots.iter().enumerate().find(|(idx, r)| {
                    !used[*idx]
                        && digit_expansion(r, embedding.uniformizer(), reference.len())
                            .map(|d| d == *reference)
                            .unwrap_or(false)
                });
                match hit {
                    Some((idx, _)) => {
                        used[idx] = true;
                        true
                    }
                    None => false,
                }
            })
        };
        combined.extend_from_slice(&vals);
        records.push(Weight2Record {
            label: rec.label,
            a7_vals6: vals,
            digits_match,
            pass: vals_ok && digits_match,
        });
    }
    combined.sort_unstable();
    let expected_combined: Vec<i64> = match emb {
        EmbType::Type1 => vec![1, 2, 3, 5],
        EmbType::Type2 => vec![2, 3, 4],
    };
    let pass = combined == expected_combined && records.iter().all(|r| r.pass);
    Ok(Weight2Report { emb, records, combined_vals6: combined, pass })
}
