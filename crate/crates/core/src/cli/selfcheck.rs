//! Built-in oracle suites: Pfaffian identity, incomplete gamma, grid refinement.

use rand::Rng;
use serde_json::json;

use super::args::RunConfig;
use super::commands::{metadata, NamedRecord};
use super::output::{Cell, OutputRecord, Schema};
use super::CliError;
use crate::ensemble::sample_stream;
use crate::fredholm::{
    finite_gap_real_even, limit_law_real, pfaffian_det_identity_check, symplectic_form, SquareMatrix,
    REFINEMENT_TOLERANCE,
};
use crate::specialfn::{ln_gamma, reg_gamma, trunc_exp_scaled};

struct Row {
    suite: &'static str,
    check: String,
    value: f64,
    limit: f64,
}

fn pfaffian_suite(seed: u64, rows: &mut Vec<Row>) -> Result<(), CliError> {
    let mut rng = sample_stream(seed, u64::MAX);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let dim = 2 * rng.random_range(1..=5);
        let mut k = SquareMatrix::zeros(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v: f64 = rng.random_range(-1.0..1.0);
                k.entries[i * dim + j] = v;
                k.entries[j * dim + i] = -v;
            }
        }
        worst = worst.max(pfaffian_det_identity_check(&k, &symplectic_form(dim)?)?);
    }
    rows.push(Row { suite: "pfaffian", check: "det(I+JK) vs Pf(J-K)^2 over 1000 matrices".into(), value: worst, limit: 1e-10 });
    Ok(())
}

fn gamma_suite(rows: &mut Vec<Row>) -> Result<(), CliError> {
    let mut sum_err = 0.0f64;
    let mut rec_err = 0.0f64;
    for &a in &[0.5, 1.0, 2.5, 10.0, 57.3, 400.0, 5000.0] {
        for &r in &[0.1, 0.5, 0.9, 1.0, 1.1, 2.0, 4.0] {
            let x = a * r;
            let (p, q) = reg_gamma(a, x)?;
            sum_err = sum_err.max((p + q - 1.0).abs());
            // Q(a+1, x) = Q(a, x) + x^a e^{−x}/Γ(a+1)
            let (_, q1) = reg_gamma(a + 1.0, x)?;
            let bump = (a * x.ln() - x - ln_gamma(a + 1.0)).exp();
            rec_err = rec_err.max((q1 - q - bump).abs() / q1.max(1e-300));
        }
    }
    rows.push(Row { suite: "reg-gamma", check: "P + Q = 1".into(), value: sum_err, limit: 1e-14 });
    rows.push(Row { suite: "reg-gamma", check: "upper recurrence (relative)".into(), value: rec_err, limit: 1e-11 });
    let mut sum_gap = 0.0f64;
    for m in 0..30u64 {
        for &x in &[0.3, 2.0, 7.5, 15.0] {
            let mut term = 1.0f64;
            let mut direct = 1.0f64;
            for k in 1..=m {
                term *= x / k as f64;
                direct += term;
            }
            let direct = direct * (-x as f64).exp();
            sum_gap = sum_gap.max((trunc_exp_scaled(m, x)? - direct).abs() / direct);
        }
    }
    rows.push(Row { suite: "reg-gamma", check: "e^{-x} e_m(x) vs direct sum".into(), value: sum_gap, limit: 1e-13 });
    Ok(())
}

fn refinement_suite(config: &RunConfig, rows: &mut Vec<Row>) -> Result<(), CliError> {
    let g = config.grid;
    for t in [-2.0, 0.0, 2.0] {
        let change = limit_law_real(t, g)?.max_change(&limit_law_real(t, g.doubled())?);
        rows.push(Row { suite: "grid-refinement", check: format!("limit law t = {t}"), value: change, limit: REFINEMENT_TOLERANCE });
    }
    for dt in [-1.0, 0.0, 1.0] {
        let t = 8.0 + dt;
        let change = finite_gap_real_even(64, t, g)?.max_change(&finite_gap_real_even(64, t, g.doubled())?);
        rows.push(Row { suite: "grid-refinement", check: format!("n = 64 t = {t}"), value: change, limit: REFINEMENT_TOLERANCE });
    }
    Ok(())
}

pub(crate) fn selfcheck(config: &RunConfig) -> Result<Vec<NamedRecord>, CliError> {
    let mut rows = Vec::new();
    pfaffian_suite(config.seed, &mut rows)?;
    gamma_suite(&mut rows)?;
    refinement_suite(config, &mut rows)?;
    let failed: Vec<String> =
        rows.iter().filter(|r| !(r.value <= r.limit)).map(|r| format!("{}: {} = {:.3e}", r.suite, r.check, r.value)).collect();
    for r in &rows {
        eprintln!("{:<16} {:<44} {:.3e} (limit {:.0e})", r.suite, r.check, r.value, r.limit);
    }
    if !failed.is_empty() {
        return Err(CliError::Check(failed.join("; ")));
    }
    let mut record = OutputRecord::new(Schema::Selfcheck, metadata(config, json!({"suites": ["pfaffian", "reg-gamma", "grid-refinement"]})));
    for r in rows {
        record.rows.push(vec![
            Cell::Text(r.suite.into()),
            Cell::Text(r.check),
            Cell::Float(r.value),
            Cell::Float(r.limit),
            Cell::Text("true".into()),
        ]);
    }
    Ok(vec![NamedRecord { name: "selfcheck".into(), record }])
}
