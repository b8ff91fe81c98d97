//! Command-line front end for the exact U₇ slope computation at level 49.
//!
//! Subcommands:
//!   slopes   — build the twisted-operator matrix, certify the stable range
//!              against a larger truncation, and compare Newton slopes with
//!              the closed-form predictions
//!   verify   — run one of the named verification suites
//!   predict  — print the predicted slope sequence
//!   dims     — evaluate the dimension formula for S_k(Γ₀(49), χ^e)
//!   matrix   — export the matrix entries with metadata
//!
//! Exit codes: 0 success, 1 mathematical mismatch, 2 precision failure,
//! 64 usage error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use u7slopes::classical::{
    classical_slope_count, classical_slopes, cohen_oesterle_dim, matching_exponent, verify_weight2,
};
use u7slopes::curvealg::{verify_dominant_table, verify_models, IdentityCheck};
use u7slopes::error::Error;
use u7slopes::localfield::{EmbType, DEFAULT_DIGITS};
use u7slopes::qseries::eisenstein_w1;
use u7slopes::spectral::{char_series, predicted_slope, slopes, stability_check, SlopeRow};
use u7slopes::u7matrix::{
    build_matrix, verify_block_structure, verify_rational_form, verify_recurrence_consistency,
    verify_twisted_commutation, weight_character, U7Context,
};

/// Environment variable naming the default output directory for --out paths.
const OUT_DIR_ENV: &str = "U7SLOPES_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "u7slopes",
    version,
    about = "Exact U7 slopes on overconvergent forms of level 49"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EmbArg {
    #[value(name = "1")]
    Type1,
    #[value(name = "2")]
    Type2,
    Both,
}

impl EmbArg {
    fn types(self) -> Vec<EmbType> {
        match self {
            EmbArg::Type1 => vec![EmbType::Type1],
            EmbArg::Type2 => vec![EmbType::Type2],
            EmbArg::Both => vec![EmbType::Type1, EmbType::Type2],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
    /// Output path (stdout when omitted; relative paths are resolved
    /// against $U7SLOPES_OUT_DIR when that is set).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute characteristic-series valuations and Newton slopes, and
    /// compare them with the predictions on the certified stable range.
    Slopes {
        /// Embedding type: 1, 2, or both.
        #[arg(long = "type", value_enum, default_value = "both")]
        emb: EmbArg,
        /// Weight k ≥ 1.
        #[arg(long, default_value_t = 1)]
        weight: u32,
        /// Truncation size n ≥ 1 (stability is certified against n+3).
        #[arg(long)]
        dim: usize,
        /// q-expansion precision (at least 7n+8; defaults to exactly that).
        #[arg(long)]
        qprec: Option<i64>,
        /// 7-adic working precision in digits.
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        padic_prec: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run a named verification suite.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Print the predicted slope sequence.
    Predict {
        #[arg(long = "type", value_enum, default_value = "both")]
        emb: EmbArg,
        #[arg(long, default_value_t = 10)]
        count: u32,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Evaluate the dimension formula for S_k(Γ₀(49), χ^e).
    Dims {
        #[arg(long)]
        k: u32,
        /// Exponent e of the character χ^e.
        #[arg(long)]
        exp: i64,
    },
    /// Export the matrix of the twisted operator.
    Matrix {
        #[arg(long = "type", value_enum, default_value = "1")]
        emb: EmbArg,
        #[arg(long, default_value_t = 1)]
        weight: u32,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        qprec: Option<i64>,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// q-expansion identities of the curve models and Eisenstein series.
    Models {
        #[arg(long, default_value_t = 200)]
        qprec: i64,
    },
    /// Eisenstein series normalization self-checks.
    Eisenstein {
        #[arg(long, default_value_t = 60)]
        qprec: i64,
    },
    /// The x²⁸ recurrence coefficients and the matrix-level recurrence.
    Recurrence {
        #[arg(long, default_value_t = 120)]
        qprec: i64,
    },
    /// The 49-cell dominant-term table of the t⁻ⁱ coordinates.
    Coords {
        #[arg(long = "type", value_enum, default_value = "both")]
        emb: EmbArg,
    },
    /// Dominant monomials of the recovered rational forms of Ũ₇(xʲ).
    Dominant {
        #[arg(long = "type", value_enum, default_value = "both")]
        emb: EmbArg,
        #[arg(long, default_value_t = 182)]
        qprec: i64,
    },
    /// Block structure of the matrix columns beyond the first seven.
    Block {
        #[arg(long = "type", value_enum, default_value = "both")]
        emb: EmbArg,
        /// Largest column to check (the matrix is built this large).
        #[arg(long, default_value_t = 21)]
        max_column: usize,
    },
    /// Weight 2 eigenvalue valuations from the newform data.
    Weight2 {
        #[arg(long = "type", value_enum, default_value = "both")]
        emb: EmbArg,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        padic_prec: u32,
    },
    /// Slope counts against the dimension formula over a weight range.
    Dims {
        /// Weight or inclusive range, e.g. 5 or 2..20.
        #[arg(long, default_value = "2..20")]
        k: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::PrecisionExhausted | Error::InsufficientPrecision { .. } => {
                    ExitCode::from(2)
                }
                Error::InvalidArgument(_) => ExitCode::from(64),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Slopes { emb, weight, dim, qprec, padic_prec, output } => {
            cmd_slopes(emb, weight, dim, qprec, padic_prec, &output)
        }
        Command::Verify { target } => cmd_verify(target),
        Command::Predict { emb, count, output } => cmd_predict(emb, count, &output),
        Command::Dims { k, exp } => {
            let dim = cohen_oesterle_dim(k, exp)?;
            println!("{dim}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix { emb, weight, dim, qprec, output } => {
            cmd_matrix(emb, weight, dim, qprec, &output)
        }
    }
}

fn validate_dims(dim: usize, weight: u32, qprec: Option<i64>) -> Result<i64, Error> {
    if dim < 1 {
        return Err(Error::InvalidArgument("--dim must be at least 1".into()));
    }
    if weight < 1 {
        return Err(Error::InvalidArgument("--weight must be at least 1".into()));
    }
    let needed = 7 * dim as i64 + 8;
    let q = qprec.unwrap_or(needed);
    if q < needed {
        return Err(Error::InvalidArgument(format!("--qprec must be at least 7n+8 = {needed}")));
    }
    Ok(q)
}

fn cmd_slopes(
    emb: EmbArg,
    weight: u32,
    dim: usize,
    qprec: Option<i64>,
    padic_prec: u32,
    output: &OutputOpts,
) -> Result<ExitCode, Error> {
    let q = validate_dims(dim, weight, qprec)?;
    let mut all_match = true;
    let mut sections: Vec<(EmbType, usize, Vec<SlopeRow>)> = Vec::new();
    for t in emb.types() {
        let m = build_matrix(dim, weight, t, q)?;
        let big_n = dim + 3;
        let big_q = q.max(7 * big_n as i64 + 8);
        let m_big = build_matrix(big_n, weight, t, big_q)?;
        let cs = char_series(&m);
        let cs_big = char_series(&m_big);
        let stable = stability_check(&cs, &cs_big, padic_prec)?;
        let rows = slopes(&cs, stable, padic_prec)?;
        all_match &= rows.iter().all(|r| r.matches);
        sections.push((t, stable, rows));
    }
    let mut doc = String::new();
    match output.format {
        Format::Tsv => {
            for (t, stable, rows) in &sections {
                doc.push_str(&format!(
                    "# command=slopes type={t} weight={weight} dim={dim} qprec={q} padic_prec={padic_prec} stable_upto={stable}\n"
                ));
                doc.push_str("# index\tcoeff_val6\tslope\tpredicted\tmatch\n");
                for r in rows {
                    doc.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\n",
                        r.index, r.coeff_val6, r.slope, r.predicted, r.matches
                    ));
                }
            }
        }
        Format::Json => {
            let body: Vec<serde_json::Value> = sections
                .iter()
                .map(|(t, stable, rows)| {
                    serde_json::json!({
                        "meta": {
                            "command": "slopes",
                            "type": t.to_string(),
                            "weight": weight,
                            "dim": dim,
                            "qprec": q,
                            "padic_prec": padic_prec,
                            "stable_upto": stable,
                        },
                        "rows": rows,
                    })
                })
                .collect();
            doc = serde_json::to_string_pretty(&body).expect("serializable") + "\n";
        }
    }
    emit(&doc, output)?;
    Ok(if all_match { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_predict(emb: EmbArg, count: u32, output: &OutputOpts) -> Result<ExitCode, Error> {
    let mut doc = String::new();
    match output.format {
        Format::Tsv => {
            for t in emb.types() {
                doc.push_str(&format!("# command=predict type={t} count={count}\n"));
                doc.push_str("# index\tslope\n");
                for i in 1..=count {
                    doc.push_str(&format!("{i}\t{}\n", predicted_slope(t, i)));
                }
            }
        }
        Format::Json => {
            let body: Vec<serde_json::Value> = emb
                .types()
                .iter()
                .map(|&t| {
                    serde_json::json!({
                        "meta": {"command": "predict", "type": t.to_string(), "count": count},
                        "slopes": (1..=count)
                            .map(|i| predicted_slope(t, i).to_string())
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            doc = serde_json::to_string_pretty(&body).expect("serializable") + "\n";
        }
    }
    emit(&doc, output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_matrix(
    emb: EmbArg,
    weight: u32,
    dim: usize,
    qprec: Option<i64>,
    output: &OutputOpts,
) -> Result<ExitCode, Error> {
    let q = validate_dims(dim, weight, qprec)?;
    let types = emb.types();
    if types.len() != 1 {
        return Err(Error::InvalidArgument("matrix export needs --type 1 or --type 2".into()));
    }
    let m = build_matrix(dim, weight, types[0], q)?;
    let export = m.export();
    let doc = match output.format {
        Format::Json => serde_json::to_string_pretty(&export).expect("serializable") + "\n",
        Format::Tsv => {
            let mut s = format!(
                "# command=matrix type={} weight={} dim={} qprec={}\n# row\tcol\tcoordinates\n",
                types[0], weight, dim, q
            );
            for (i, row) in export.entries.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    s.push_str(&format!("{}\t{}\t{}\n", i + 1, j + 1, entry.join(",")));
                }
            }
            s
        }
    };
    emit(&doc, output)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(target: VerifyTarget) -> Result<ExitCode, Error> {
    let checks: Vec<IdentityCheck> = match target {
        VerifyTarget::Models { qprec } => verify_models(qprec),
        VerifyTarget::Eisenstein { qprec } => verify_eisenstein(qprec),
        VerifyTarget::Recurrence { qprec } => {
            let mut checks = vec![u7slopes::curvealg::verify_recurrence_qseries(qprec)?];
            let ctx = U7Context::new(EmbType::Type1, 1, qprec)?;
            for i in 1..=3 {
                checks.push(verify_recurrence_consistency(&ctx, i)?);
            }
            checks
        }
        VerifyTarget::Coords { emb } => {
            let mut checks = Vec::new();
            for t in emb.types() {
                checks.extend(verify_dominant_table(t)?);
            }
            checks
        }
        VerifyTarget::Dominant { emb, qprec } => {
            let mut checks = Vec::new();
            for t in emb.types() {
                for j in 1..=6 {
                    checks.push(verify_rational_form(j, t, qprec)?);
                }
            }
            checks
        }
        VerifyTarget::Block { emb, max_column } => {
            let mut checks = Vec::new();
            for t in emb.types() {
                let n = max_column.max(8);
                let m = build_matrix(n, 1, t, 7 * n as i64 + 8)?;
                checks.extend(verify_block_structure(&m, 8..=max_column)?);
                let ctx = U7Context::new(t, 1, 64)?;
                checks.extend(verify_twisted_commutation(&ctx, 1));
            }
            checks
        }
        VerifyTarget::Weight2 { emb, padic_prec } => {
            let mut checks = Vec::new();
            for t in emb.types() {
                let report = verify_weight2(t, padic_prec)?;
                for rec in &report.records {
                    checks.push(IdentityCheck::flag(
                        &format!("weight2-{}-a7-vals {:?}", rec.label, rec.a7_vals6),
                        rec.pass,
                    ));
                }
                checks.push(IdentityCheck::flag(
                    &format!("weight2-{t}-combined {:?}", report.combined_vals6),
                    report.pass,
                ));
            }
            checks
        }
        VerifyTarget::Dims { k } => {
            let (lo, hi) = parse_weight_range(&k)?;
            let mut checks = Vec::new();
            for k in lo..=hi {
                for t in [EmbType::Type1, EmbType::Type2] {
                    let count = classical_slope_count(k, t);
                    let dim = cohen_oesterle_dim(k, matching_exponent(k, t))?;
                    let enumerated = classical_slopes(k, t).len() as i64;
                    checks.push(IdentityCheck::flag(
                        &format!("dims-k{k}-{t} count={count} dim={dim}"),
                        count == dim && count == enumerated,
                    ));
                }
            }
            checks
        }
    };
    let mut all = true;
    for c in &checks {
        all &= c.pass;
        println!(
            "{}\t{}{}",
            c.name,
            if c.pass { "pass" } else { "FAIL" },
            c.first_failing_exponent.map(|e| format!("\tat {e}")).unwrap_or_default()
        );
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

/// Normalization self-checks for the Eisenstein series.
fn verify_eisenstein(qprec: i64) -> Vec<IdentityCheck> {
    use u7slopes::cyclotomic::{bernoulli_generalized, CycloElem, DirichletChar};
    let mut checks = Vec::new();
    let chi = DirichletChar::chi();
    let e = eisenstein_w1(&chi, qprec);
    checks.push(IdentityCheck::flag("eisenstein-w1-constant-term", e.coeff(0) == CycloElem::one()));
    let b = bernoulli_generalized(1, &chi);
    let expect = (&CycloElem::from_int(-2) / &b).expect("nonzero");
    checks.push(IdentityCheck::flag("eisenstein-w1-q-coefficient", e.coeff(1) == expect));
    // B_{1,χ} against the direct closed form
    let mut direct = CycloElem::zero();
    for a in 1..=49 {
        direct += &chi.eval(a).scale(&u7slopes::cyclotomic::Rat::new(a.into(), 49.into()));
    }
    checks.push(IdentityCheck::flag("bernoulli-b1-closed-form", b == direct));
    for t in [EmbType::Type1, EmbType::Type2] {
        let tau = weight_character(t);
        let e7 = u7slopes::qseries::eisenstein_w7(&tau, qprec.min(40));
        checks.push(IdentityCheck::flag(
            &format!("eisenstein-w7-{t}-constant-term"),
            e7.coeff(0) == CycloElem::one(),
        ));
    }
    checks
}

fn parse_weight_range(s: &str) -> Result<(u32, u32), Error> {
    let bad = || Error::InvalidArgument(format!("cannot parse weight range '{s}'"));
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo < 2 || hi < lo {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let k: u32 = s.trim().parse().map_err(|_| bad())?;
        Ok((k, k))
    }
}

fn emit(doc: &str, output: &OutputOpts) -> Result<(), Error> {
    match &output.out {
        None => {
            print!("{doc}");
            Ok(())
        }
        Some(path) => {
            let path = if path.is_relative() {
                match std::env::var_os(OUT_DIR_ENV) {
                    Some(dir) => PathBuf::from(dir).join(path),
                    None => path.clone(),
                }
            } else {
                path.clone()
            };
            let mut f = std::fs::File::create(&path)
                .map_err(|e| Error::InvalidArgument(format!("cannot create {path:?}: {e}")))?;
            f.write_all(doc.as_bytes())
                .map_err(|e| Error::InvalidArgument(format!("cannot write {path:?}: {e}")))?;
            Ok(())
        }
    }
}
