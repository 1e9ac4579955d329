//! The comparison table of `π_S(x)` against `li(x)`.

use serde::{Deserialize, Serialize};

use super::{analytic, pi_s, pi_tilde, Census};
use crate::error::{Error, Result};
use crate::splitting::PrimeSet;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub x: f64,
    /// Weight of records certainly below `x`.
    pub pi_s: u64,
    /// The same total including every ambiguous record.
    pub pi_s_with_ambiguous: u64,
    pub li: f64,
    pub x_over_log_x: f64,
    /// `(π_S − li)·log x / x^{3/4}`.
    pub norm_err: f64,
    /// `Σ h(O)` without the `λ` weights.
    pub pi_tilde: u64,
    pub pi_tilde_lo: f64,
    pub pi_tilde_hi: f64,
    /// Indices into the census records whose `r`-interval contains `x`.
    pub ambiguous: Vec<usize>,
    pub psi: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub primes: PrimeSet,
    pub rows: Vec<ReportRow>,
}

pub const CSV_HEADER: &str = "x,pi_S,li,x_over_log_x,norm_err,pi_tilde_lo,pi_tilde_hi,ambiguous_count";

impl CensusReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.x,
                r.pi_s,
                r.li,
                r.x_over_log_x,
                r.norm_err,
                r.pi_tilde_lo,
                r.pi_tilde_hi,
                r.ambiguous.len()
            ));
        }
        out
    }

    /// `π_S/3^{|S|} ≤ π̃_S ≤ π_S` at every grid point.
    pub fn bracket_holds(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.pi_tilde_lo <= r.pi_tilde as f64 && r.pi_tilde as f64 <= r.pi_tilde_hi)
    }
}

/// The report on `grid`; the census must reach the largest grid point.
pub fn report(census: &Census, grid: &[f64]) -> Result<CensusReport> {
    if grid.is_empty() || grid.windows(2).any(|w| !(w[0] < w[1])) || grid.iter().any(|&x| !(x >= 2.0)) {
        return Err(Error::InvalidInput("grid must be strictly increasing with every point ≥ 2".into()));
    }
    let top = *grid.last().expect("nonempty");
    if top > census.params.x {
        return Err(Error::Stale(format!(
            "census reaches x = {} but the grid needs {top}",
            census.params.x
        )));
    }
    let k = census.params.primes.len() as i32;
    let recs = &census.records;
    let mut rows = Vec::with_capacity(grid.len());
    for &x in grid {
        let p = pi_s(recs, x);
        let ambiguous: Vec<usize> = (0..recs.len()).filter(|&i| recs[i].is_ambiguous_at(x)).collect();
        let extra: u64 = ambiguous.iter().map(|&i| recs[i].weight).sum();
        let li = analytic::li(x)?;
        rows.push(ReportRow {
            x,
            pi_s: p,
            pi_s_with_ambiguous: p + extra,
            li,
            x_over_log_x: x / x.ln(),
            norm_err: (p as f64 - li) * x.ln() / x.powf(0.75),
            pi_tilde: pi_tilde(recs, x),
            pi_tilde_lo: p as f64 / 3f64.powi(k),
            pi_tilde_hi: p as f64,
            ambiguous,
            psi: analytic::psi(recs, x),
        });
    }
    Ok(CensusReport {
        primes: census.params.primes.clone(),
        rows,
    })
}
