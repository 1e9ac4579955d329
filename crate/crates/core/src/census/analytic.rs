//! `li`, `ψ` and the truncated Ruelle product over census records.

use num_complex::Complex64;

use super::OrderRecord;
use crate::error::{Error, Result};

/// Relative tolerance requested from the quadrature.
const LI_TOL: f64 = 1e-13;

/// `∫₂^x dt / log t`.
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0) || !x.is_finite() {
        return Err(Error::Domain(format!("li needs x ≥ 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    // t = e^u turns the integrand into the smooth e^u / u
    let g = |u: f64| u.exp() / u;
    let (a, b) = (2f64.ln(), x.ln());
    let whole = simpson(g, a, b);
    Ok(adaptive(&g, a, b, whole, LI_TOL * whole.abs(), 60))
}

fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (g(a) + 4.0 * g(m) + g(b))
}

fn adaptive(g: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let left = simpson(g, a, m);
    let right = simpson(g, m, b);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    adaptive(g, a, m, left, tol / 2.0, depth - 1) + adaptive(g, m, b, right, tol / 2.0, depth - 1)
}

/// `ψ(x) = Σ w·3R` over records and `n ≥ 1` with `r^n ≤ x`.
pub fn psi(records: &[OrderRecord], x: f64) -> f64 {
    let mut total = 0.0;
    for rec in records.iter().filter(|r| r.is_below(x)) {
        let len = 3.0 * rec.big_r;
        let mut n = 1.0;
        // r_hi^n ≤ x  ⇔  n·log r_hi ≤ log x
        while n * rec.r_hi.ln() <= x.ln() {
            total += rec.weight as f64 * len;
            n += 1.0;
        }
    }
    total
}

fn in_product(rec: &OrderRecord, cutoff: f64) -> bool {
    rec.big_r <= cutoff
}

/// `∏_{R(O) ≤ cutoff} (1 − e^{−sR(O)})^{w(O)}`.
pub fn zeta_partial(records: &[OrderRecord], s: Complex64, cutoff: f64) -> Complex64 {
    records
        .iter()
        .filter(|r| in_product(r, cutoff))
        .fold(Complex64::new(1.0, 0.0), |acc, r| {
            acc * (1.0 - (-s * r.big_r).exp()).powu(r.weight as u32)
        })
}

/// `d/ds log ∏ = Σ w·R·e^{−sR} / (1 − e^{−sR})`.
pub fn zeta_log_derivative_symbolic(records: &[OrderRecord], s: Complex64, cutoff: f64) -> Complex64 {
    records
        .iter()
        .filter(|r| in_product(r, cutoff))
        .map(|r| {
            let q = (-s * r.big_r).exp();
            r.weight as f64 * r.big_r * q / (1.0 - q)
        })
        .sum()
}

/// `Σ_{n ≥ 1} w·R·e^{−nsR}`, truncated once `n·Re(s)·R > 50`.
pub fn zeta_log_derivative_series(records: &[OrderRecord], s: Complex64, cutoff: f64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for r in records.iter().filter(|r| in_product(r, cutoff)) {
        let q = (-s * r.big_r).exp();
        let mut term = q;
        let mut n = 1.0;
        let mut part = Complex64::new(0.0, 0.0);
        loop {
            part += term;
            if n * s.re * r.big_r > 50.0 {
                break;
            }
            term *= q;
            n += 1.0;
        }
        total += r.weight as f64 * r.big_r * part;
    }
    total
}

/// `|symbolic − series| / |symbolic|` (absolute when the sum vanishes).
pub fn log_derivative_residual(records: &[OrderRecord], s: Complex64, cutoff: f64) -> Result<f64> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!("need Re(s) > 0, got {s}")));
    }
    let a = zeta_log_derivative_symbolic(records, s, cutoff);
    let b = zeta_log_derivative_series(records, s, cutoff);
    let d = (a - b).norm();
    Ok(if a.norm() > 0.0 { d / a.norm() } else { d })
}
