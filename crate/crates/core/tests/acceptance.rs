//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass line. All tolerances are exact — valuations are integers in
//! sextuple units and slopes are exact rationals, so every comparison is an
//! equality.
//!
//! Expensive artifacts (matrix builds and characteristic series) are shared
//! between criteria through lazy statics.

use std::sync::OnceLock;

use u7slopes::classical::{
    classical_slope_count, classical_slopes, cohen_oesterle_dim, matching_exponent, verify_weight2,
};
use u7slopes::curvealg::{verify_dominant_table, verify_models, verify_recurrence_qseries};
use u7slopes::cyclotomic::{CycloElem, Rat};
use u7slopes::localfield::EmbType;
use u7slopes::spectral::{
    char_coeffs_berkowitz, char_coeffs_newton, char_series, newton_polygon, polygon_of_polynomial,
    predicted_coeff_val6, predicted_slope, slopes, stability_check, CharSeries,
};
use u7slopes::u7matrix::{
    build_matrix, verify_block_structure, verify_rational_form, verify_recurrence_consistency,
    verify_twisted_commutation, xq_min_poly, U7Context, U7Matrix,
};

const PADIC_DIGITS: u32 = 60;

fn qprec_for(n: usize) -> i64 {
    7 * n as i64 + 8
}

struct SlopeData {
    m14: U7Matrix,
    cs14: CharSeries,
    cs17: CharSeries,
    stable: usize,
}

fn slope_data(emb: EmbType) -> &'static SlopeData {
    static T1: OnceLock<SlopeData> = OnceLock::new();
    static T2: OnceLock<SlopeData> = OnceLock::new();
    let cell = match emb {
        EmbType::Type1 => &T1,
        EmbType::Type2 => &T2,
    };
    cell.get_or_init(|| {
        let m14 = build_matrix(14, 1, emb, qprec_for(14)).expect("build 14");
        let m17 = build_matrix(17, 1, emb, qprec_for(17)).expect("build 17");
        let cs14 = char_series(&m14);
        let cs17 = char_series(&m17);
        let stable = stability_check(&cs14, &cs17, PADIC_DIGITS).expect("stability");
        SlopeData { m14, cs14, cs17, stable }
    })
}

fn check_slope_formula(emb: EmbType) {
    let data = slope_data(emb);
    assert!(data.stable >= 10, "{emb}: stable range {} below the required 10", data.stable);
    let vals = data.cs14.valuations(PADIC_DIGITS).expect("valuations");
    for j in 1..=data.stable {
        let predicted = predicted_coeff_val6(emb, j);
        assert_eq!(
            vals[j - 1],
            predicted,
            "{emb}: val(c_{j}) = {} but the formula gives {predicted}",
            vals[j - 1]
        );
    }
    // consistency across the larger truncation
    let vals17 = data.cs17.valuations(PADIC_DIGITS).expect("valuations");
    for j in 1..=data.stable {
        assert_eq!(vals17[j - 1], vals[j - 1], "{emb}: truncations disagree at c_{j}");
    }
    let rows = slopes(&data.cs14, data.stable, PADIC_DIGITS).expect("slopes");
    assert_eq!(rows.len(), data.stable);
    for (i, row) in rows.iter().enumerate() {
        assert!(
            row.matches,
            "{emb}: slope {} = {} differs from {}",
            row.index, row.slope, row.predicted
        );
        if i > 0 {
            assert!(
                rows[i - 1].slope < row.slope,
                "{emb}: slopes must be strictly increasing (multiplicity one)"
            );
        }
    }
    println!(
        "[criterion] {emb}: val(c_j) matches the partial-sum formula and slopes are simple for j = 1..{}",
        data.stable
    );
}

#[test]
fn criterion_1_slope_formula_type1() {
    check_slope_formula(EmbType::Type1);
    println!("[criterion 1] PASS: Type 1 slope formula floor(9i/7)/6");
}

#[test]
fn criterion_2_slope_formula_type2() {
    check_slope_formula(EmbType::Type2);
    println!("[criterion 2] PASS: Type 2 slope formula floor((9i+6)/7)/6");
}

#[test]
fn criterion_3_weight_independence() {
    for emb in [EmbType::Type1, EmbType::Type2] {
        let data = slope_data(emb);
        let base = data.cs14.valuations(PADIC_DIGITS).expect("valuations");
        for k in 2..=4u32 {
            let m = build_matrix(14, k, emb, qprec_for(14)).expect("build");
            let cs = char_series(&m);
            let vals = cs.valuations(PADIC_DIGITS).expect("valuations");
            for j in 1..=data.stable {
                assert_eq!(
                    vals[j - 1],
                    base[j - 1],
                    "{emb}: val(c_{j}) changed between weight 1 and weight {k}"
                );
            }
        }
        println!(
            "[criterion] {emb}: val(c_j) identical for weights 1..4 on j = 1..{}",
            data.stable
        );
    }
    println!("[criterion 3] PASS: weight independence of coefficient valuations");
}

#[test]
fn criterion_4_classical_counting() {
    // spot values from the dimension table
    assert_eq!(cohen_oesterle_dim(2, 8).unwrap(), 4);
    assert_eq!(cohen_oesterle_dim(2, -6).unwrap(), 3);
    assert_eq!(cohen_oesterle_dim(3, 1).unwrap(), 8);
    for k in 2..=20u32 {
        for emb in [EmbType::Type1, EmbType::Type2] {
            let count = classical_slope_count(k, emb);
            let dim = cohen_oesterle_dim(k, matching_exponent(k, emb)).unwrap();
            assert_eq!(count, dim, "k = {k}, {emb}");
            assert_eq!(count as usize, classical_slopes(k, emb).len(), "k = {k}, {emb}");
        }
    }
    println!("[criterion 4] PASS: slope counts equal dimensions for k = 2..20, both types");
}

#[test]
fn criterion_5_weight2_reproduction() {
    let t1 = verify_weight2(EmbType::Type1, PADIC_DIGITS).expect("type 1 report");
    assert_eq!(t1.combined_vals6, vec![1, 2, 3, 5], "type 1 valuations");
    assert!(t1.records.iter().all(|r| r.digits_match), "type 1 digit expansions");
    assert!(t1.pass);
    let t2 = verify_weight2(EmbType::Type2, PADIC_DIGITS).expect("type 2 report");
    assert_eq!(t2.combined_vals6, vec![2, 3, 4], "type 2 valuations");
    assert!(t2.records.iter().all(|r| r.digits_match), "type 2 digit expansions");
    assert!(t2.pass);
    println!(
        "[criterion 5] PASS: weight 2 eigenvalue valuations {{1,2,3,5}}/6 and {{2,3,4}}/6 with digit expansions"
    );
}

#[test]
fn criterion_6_identity_suite() {
    // window padded so every residual is certified past exponent 200
    for check in verify_models(230) {
        assert!(check.pass, "{} fails at {:?}", check.name, check.first_failing_exponent);
        println!("[criterion] identity {} holds to q-precision 200", check.name);
    }
    let rec = verify_recurrence_qseries(260).expect("recurrence");
    assert!(rec.pass, "recurrence residual at {:?}", rec.first_failing_exponent);
    println!("[criterion 6] PASS: model, Eisenstein and recurrence identities of zero residual");
}

#[test]
fn criterion_7_structure_suite() {
    // 49-cell dominant-term table (the table is embedding-independent; both
    // weights are exercised anyway)
    for emb in [EmbType::Type1, EmbType::Type2] {
        let table = verify_dominant_table(emb).expect("table");
        assert_eq!(table.len(), 49);
        for cell in &table {
            assert!(cell.pass, "{}", cell.name);
        }
    }
    println!("[criterion] dominant-term table verified in all 49 cells");

    // dominant monomials of the recovered rational forms
    for emb in [EmbType::Type1, EmbType::Type2] {
        for j in 1..=6 {
            let check = verify_rational_form(j, emb, 7 * 26).expect("fit");
            assert!(check.pass, "{}", check.name);
        }
    }
    println!("[criterion] recovered rational forms match their first-order approximations");

    // block structure for columns 8..21, plus twisted commutation and the
    // matrix-level recurrence
    for emb in [EmbType::Type1, EmbType::Type2] {
        let m = build_matrix(21, 1, emb, qprec_for(21)).expect("build 21");
        let checks = verify_block_structure(&m, 8..=21).expect("blocks");
        assert_eq!(checks.len(), 14);
        for c in &checks {
            assert!(c.pass, "{}", c.name);
        }
        let ctx = U7Context::new(emb, 1, 80).expect("context");
        for c in verify_twisted_commutation(&ctx, 1) {
            assert!(c.pass, "{}", c.name);
        }
    }
    let ctx = U7Context::new(EmbType::Type1, 1, 120).expect("context");
    for i in 1..=3 {
        let c = verify_recurrence_consistency(&ctx, i).expect("recurrence");
        assert!(c.pass, "{}", c.name);
    }
    println!("[criterion] block structure holds for columns 8..21 on both sides");

    // Newton-polygon oracles
    let v7 = |a: i64| {
        let mut v = 0i64;
        let mut a = a.abs();
        while a % 7 == 0 {
            a /= 7;
            v += 1;
        }
        Rat::from_integer(v.into())
    };
    let p = polygon_of_polynomial(&xq_min_poly(), v7).expect("polygon");
    assert_eq!(p.slopes, vec![(Rat::new(1.into(), 2.into()), 12)]);
    assert_eq!(p.hull.first().unwrap(), &(0, Rat::from_integer(0.into())));
    assert_eq!(p.hull.last().unwrap(), &(12, Rat::from_integer(6.into())));
    let p = polygon_of_polynomial(&[49, 13, 1], v7).expect("polygon");
    assert_eq!(p.slopes, vec![(Rat::from_integer(0.into()), 1), (Rat::from_integer(2.into()), 1)]);
    println!("[criterion 7] PASS: structure suite (table, forms, blocks, polygon oracles)");
}

#[test]
fn criterion_8_oracle_equivalence() {
    // two independent characteristic-polynomial computations on the real
    // operator truncated to n ≤ 10, with denominators cleared so both run
    // on the same integral matrix
    let data = slope_data(EmbType::Type1);
    let m10 = data.m14.truncate(10);
    let mut d = num_bigint::BigInt::from(1);
    for row in m10.rows() {
        for e in row {
            d = num_integer::lcm(d, e.denominator());
        }
    }
    let dr = Rat::from_integer(d);
    let scaled: Vec<Vec<CycloElem>> =
        m10.rows().iter().map(|r| r.iter().map(|e| e.scale(&dr)).collect()).collect();
    let newton = char_coeffs_newton(&scaled);
    let berkowitz = char_coeffs_berkowitz(&scaled);
    assert_eq!(newton, berkowitz, "characteristic-polynomial algorithms disagree");
    println!(
        "[criterion] Newton-identity and Berkowitz coefficients agree on the 10x10 truncation"
    );

    // randomized unit-diagonal conjugation leaves the coefficients (hence
    // all slopes) unchanged
    let mut state = 0x9E3779B97F4A7C15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let m8 = data.m14.truncate(8);
    let diag: Vec<CycloElem> = (0..8)
        .map(|_| {
            let mut u = CycloElem::zeta_pow((next() % 42) as i64);
            // a unit integer multiple keeps valuations intact
            let mult = 1 + (next() % 5) as i64;
            let mult = if mult % 7 == 0 { 1 } else { mult };
            u = u.scale(&Rat::from_integer(mult.into()));
            u
        })
        .collect();
    let conj: Vec<Vec<CycloElem>> = (0..8)
        .map(|i| {
            (0..8)
                .map(|j| {
                    let dinv = diag[j].inv().unwrap();
                    &(&diag[i] * m8.entry(i + 1, j + 1)) * &dinv
                })
                .collect()
        })
        .collect();
    let plain = char_coeffs_newton(&m8.rows().iter().map(|r| r.to_vec()).collect::<Vec<_>>());
    let conjugated = char_coeffs_newton(&conj);
    assert_eq!(plain, conjugated, "diagonal conjugation changed the characteristic series");
    // and therefore the Newton polygon is unchanged as well
    let emb = u7slopes::localfield::Embedding::new(EmbType::Type1, PADIC_DIGITS);
    let pts: Vec<(i64, Rat)> = std::iter::once((0i64, Rat::from_integer(0.into())))
        .chain(
            plain
                .iter()
                .enumerate()
                .map(|(j, c)| (j as i64 + 1, Rat::new(emb.val6(c).unwrap().into(), 6.into()))),
        )
        .collect();
    let polygon = newton_polygon(&pts).expect("polygon");
    let first: Vec<Rat> = polygon
        .slopes
        .iter()
        .flat_map(|(s, mult)| std::iter::repeat_n(s.clone(), *mult))
        .take(3)
        .collect();
    let predicted: Vec<Rat> = (1..=3).map(|i| predicted_slope(EmbType::Type1, i)).collect();
    assert_eq!(first, predicted);
    println!("[criterion 8] PASS: oracle equivalence and diagonal-conjugation invariance");
}
