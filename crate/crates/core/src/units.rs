//! Fundamental units, regulators and unit indices of orders.
//!
//! The fundamental unit is found by walking the chain of relative minima of
//! `O_K` in `ℝ × ℂ`: the first minimum of norm ±1 after `1` is `±ε`. The
//! regulator is then evaluated in rational interval arithmetic and the
//! minimality of `ε` is certified independently of the walk.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cubic_fields::{qvec_from_int, CubicField, QVec};
use crate::error::{Error, Result};
use crate::geometry::{self, RMat};
use crate::linalg::{self, IVec};
use crate::order_arithmetic::{Lattice, Order};
use crate::serial::Z;

/// Bits of the real-root bracket used for regulator intervals.
const ROOT_BITS: u32 = 160;

/// Above this regulator the exhaustive certificate is not attempted.
pub const EXHAUSTIVE_MAX_REGULATOR: f64 = 9.0;

const MAX_CHAIN_STEPS: usize = 1_000_000;

/// How the minimality of `ε` was established.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `e^{3R} < ((|d_K| − 24)/4)²`, so `ε` is not a proper power.
    Artin { log_lhs: f64, log_rhs: f64 },
    /// No unit with `1 < |σ_r| < σ_r(ε)` among all elements of `O_K` in the
    /// cylinder `|σ_r| ≤ σ_r(ε)`, `|σ_c| ≤ 1`.
    Exhaustive { radius: f64, points: u64 },
    /// `±ε` has no `k`-th root for every prime `k ≤ max_k`, where
    /// `max_k = ⌊R / R_low⌋` and `R_low` is the Artin lower bound.
    RootTest { max_k: u64 },
}

/// Fundamental unit with `σ_r(ε) > 1` and its regulator `R_K = log σ_r(ε)`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitData {
    pub eps: IVec,
    pub r_k: f64,
    pub r_k_err: f64,
    pub certificate: Certificate,
}

/// `{eps, R_K: decimal string, R_K_err_exp, certificate}` with `|error| ≤ 10^R_K_err_exp`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitRecord {
    pub eps: [Z; 3],
    #[serde(rename = "R_K")]
    pub r_k: String,
    #[serde(rename = "R_K_err_exp")]
    pub r_k_err_exp: i32,
    pub certificate: Certificate,
}

impl UnitData {
    pub fn record(&self) -> UnitRecord {
        UnitRecord {
            eps: crate::serial::zvec(&self.eps),
            r_k: format!("{:.17}", self.r_k),
            r_k_err_exp: self.r_k_err.log10().ceil().max(-300.0) as i32,
            certificate: self.certificate.clone(),
        }
    }

    /// Rebuilds from a record, re-checking `|N(ε)| = 1` and the regulator.
    pub fn from_record(field: &CubicField, rec: &UnitRecord) -> Result<Self> {
        let eps = crate::serial::unz(&rec.eps);
        if !field.norm_int(&eps).abs().is_one() {
            return Err(Error::Malformed("unit record has |N(ε)| ≠ 1".into()));
        }
        let (r, err) = regulator_interval(field, &eps)?;
        let stated: f64 = rec.r_k.parse().map_err(|_| Error::Malformed(format!("bad regulator {:?}", rec.r_k)))?;
        if (stated - r).abs() > err + 10f64.powi(rec.r_k_err_exp) + 1e-15 {
            return Err(Error::Malformed("stated regulator disagrees with ε".into()));
        }
        Ok(UnitData {
            eps,
            r_k: r,
            r_k_err: err,
            certificate: rec.certificate.clone(),
        })
    }

    /// `e^{3R_K}`.
    pub fn r_factor(&self) -> f64 {
        (3.0 * self.r_k).exp()
    }
}

/// Regulator of an order: `R = m·R_K`, `r = e^{3R}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegulatorValue {
    pub m: u64,
    #[serde(rename = "R")]
    pub big_r: f64,
    #[serde(rename = "R_err")]
    pub big_r_err: f64,
    pub r: f64,
    pub r_rel_err: f64,
}

/// `log|σ_r(x)|` for an integral element, with an absolute error bound.
pub fn regulator_interval(field: &CubicField, x: &IVec) -> Result<(f64, f64)> {
    if linalg::is_zero_vec(x) {
        return Err(Error::InvalidInput("log of zero".into()));
    }
    // power-basis numerators: σ_r(x) = (p0 + p1·ρ + p2·ρ²) / den
    let num = field.basis_num();
    let p = linalg::combine(x, num);
    let den = field.basis_den();
    let bits = ROOT_BITS + p.iter().map(|c| c.bits() as u32).max().unwrap_or(0);
    let (lo, hi) = field.poly().real_root_bracket(bits);
    let scale = BigInt::one() << bits;
    let rho = BigRational::new(lo.clone(), scale.clone());
    let b = BigRational::new(lo.abs().max(hi.abs()), scale.clone());
    let w = BigRational::new(BigInt::one(), scale);
    let q = |c: &BigInt| BigRational::from_integer(c.clone());
    let v = (q(&p[0]) + q(&p[1]) * &rho + q(&p[2]) * &rho * &rho) / q(den);
    let slope = (q(&p[1]).abs() + q(&p[2]).abs() * BigRational::from_integer(2.into()) * &b) * &w / q(den);
    let av = v.abs();
    if av <= slope {
        return Err(Error::Inconsistent("real embedding not separated from zero".into()));
    }
    let lower = rational_to_f64_down(&(&av - &slope));
    let upper = rational_to_f64_up(&(&av + &slope));
    let (l, u) = (lower.ln(), upper.ln());
    let ulp = f64::EPSILON * 4.0 * l.abs().max(u.abs()).max(1.0);
    let mid = (l + u) / 2.0;
    Ok((mid, (u - l) / 2.0 + ulp))
}

fn rational_to_f64_down(x: &BigRational) -> f64 {
    let v = x.to_f64().unwrap_or(f64::MAX);
    v * (1.0 - 2.0 * f64::EPSILON)
}

fn rational_to_f64_up(x: &BigRational) -> f64 {
    let v = x.to_f64().unwrap_or(f64::MAX);
    v * (1.0 + 2.0 * f64::EPSILON)
}

/// Outcome of the minima walk.
enum Walk {
    Unit(IVec),
    Exceeded,
}

/// Walks relative minima of `O_K` until a unit is reached or `log σ_r`
/// exceeds `cutoff`.
fn minima_walk(field: &CubicField, cutoff: f64) -> Result<Walk> {
    let mut out = Walk::Exceeded;
    walk_minima(field, &linalg::identity(), &CubicField::one(), |theta, log_r| {
        if field.norm_int(theta).abs().is_one() {
            out = Walk::Unit(theta.clone());
            return false;
        }
        log_r <= cutoff + 1e-6
    })?;
    Ok(out)
}

/// Walks the chain of relative minima of the lattice spanned by the integral
/// rows `basis`, starting at the minimum `start`. Every later minimum `θ` is
/// passed to `visit` together with `log|σ_r(θ)/σ_r(start)|`, in increasing
/// order; `visit` returns `false` to stop.
pub(crate) fn walk_minima(
    field: &CubicField,
    basis: &[IVec; 3],
    start: &IVec,
    mut visit: impl FnMut(&IVec, f64) -> bool,
) -> Result<()> {
    let (sr, sc) = field.embed(start);
    let mut emb: RMat = std::array::from_fn(|i| {
        let (r, c) = field.embed(&basis[i]);
        let z = c / sc;
        [r / sr, z.re, z.im]
    });
    let mut gamma = basis.clone();
    reduce(&mut emb, &mut gamma);
    let mut log_r = 0.0f64;
    for _ in 0..MAX_CHAIN_STEPS {
        let (c, v) = next_minimum(&emb)?;
        let theta: IVec = std::array::from_fn(|k| (0..3).fold(BigInt::zero(), |acc, i| acc + &gamma[i][k] * c[i]));
        let mu_r = v[0];
        let mu_c = Complex64::new(v[1], v[2]);
        for row in emb.iter_mut() {
            let z = Complex64::new(row[1], row[2]) / mu_c;
            *row = [row[0] / mu_r, z.re, z.im];
        }
        reduce(&mut emb, &mut gamma);
        log_r += mu_r.abs().ln();
        if !visit(&theta, log_r) {
            return Ok(());
        }
    }
    Err(Error::Capacity {
        what: "relative minima chain length",
        needed: MAX_CHAIN_STEPS as u64 + 1,
        ceiling: MAX_CHAIN_STEPS as u64,
    })
}

/// LLL on the embedded rows, mirrored on the exact rows.
fn reduce(emb: &mut RMat, gamma: &mut [IVec; 3]) {
    let mut u = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    geometry::lll(emb, &mut u);
    let old = gamma.clone();
    *gamma = std::array::from_fn(|i| std::array::from_fn(|k| (0..3).fold(BigInt::zero(), |acc, j| acc + &old[j][k] * u[i][j])));
}

/// A shortest nonzero vector of the embedded lattice; it is a relative minimum.
fn shortest_vector(field: &CubicField, basis: &[IVec; 3]) -> IVec {
    let emb: RMat = std::array::from_fn(|i| {
        let (r, c) = field.embed(&basis[i]);
        [r, c.re, c.im]
    });
    let mut red = emb;
    let mut u = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    geometry::lll(&mut red, &mut u);
    let bound = red.iter().map(|r| r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).fold(f64::INFINITY, f64::min);
    let mut best: Option<([i64; 3], f64)> = None;
    geometry::enumerate_short(&emb, bound, |c, v| {
        let n = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if best.is_none_or(|(_, b)| n < b) {
            best = Some((c, n));
        }
        true
    });
    let c = best.map(|(c, _)| c).unwrap_or([1, 0, 0]);
    std::array::from_fn(|k| (0..3).fold(BigInt::zero(), |acc, i| acc + &basis[i][k] * c[i]))
}

/// `α` with `α·O_K = L` for a fractional `O_K`-ideal `L`, or `None` if `L` is
/// not principal.
///
/// If `L = αO_K`, the minima of `L` are `α` times those of `O_K`, which include
/// every unit; so one period of the chain from any minimum of `L` passes a
/// generator, recognised exactly by `|N(θ)| = [O_K : L]`.
pub fn principal_generator(field: &CubicField, unit: &UnitData, l: &Lattice) -> Result<Option<QVec>> {
    let basis = l.mat().clone();
    let covol = linalg::det(&basis).abs();
    let den = BigRational::from_integer(l.den().clone());
    let start = shortest_vector(field, &basis);
    let scale = |theta: &IVec| -> QVec { qvec_from_int(theta).map(|x| x / &den) };
    if field.norm_int(&start).abs() == covol {
        return Ok(Some(scale(&start)));
    }
    let period = unit.r_k + unit.r_k_err + 1e-3;
    let mut found = None;
    walk_minima(field, &basis, &start, |theta, log_r| {
        if field.norm_int(theta).abs() == covol {
            found = Some(scale(theta));
            return false;
        }
        log_r <= period
    })?;
    Ok(found)
}

/// The lattice element `μ` with `|μ_c| < 1` and least `|μ_r| > 1`, given a
/// lattice whose relative minimum is 1.
fn next_minimum(emb: &RMat) -> Result<([i64; 3], [f64; 3])> {
    let mut a = 2.0f64;
    for _ in 0..200 {
        let scaled: RMat = std::array::from_fn(|i| [emb[i][0] / a, emb[i][1], emb[i][2]]);
        let mut best: Option<([i64; 3], [f64; 3])> = None;
        geometry::enumerate_short(&scaled, 2.0, |c, _| {
            let v: [f64; 3] = std::array::from_fn(|k| (0..3).map(|i| c[i] as f64 * emb[i][k]).sum());
            let r = v[0].abs();
            let z = (v[1] * v[1] + v[2] * v[2]).sqrt();
            if z < 1.0 && r > 1.0 + 1e-9 && r <= a && best.as_ref().is_none_or(|(_, b)| r < b[0].abs()) {
                best = Some((c, v));
            }
            true
        });
        if let Some(b) = best {
            return Ok(b);
        }
        a *= 2.0;
    }
    Err(Error::Inconsistent("no successor minimum found".into()))
}

/// Fundamental unit of a complex cubic field.
pub fn fundamental_unit(field: &CubicField) -> Result<UnitData> {
    fundamental_unit_bounded(field, f64::INFINITY)?
        .ok_or_else(|| Error::Inconsistent("unbounded walk stopped early".into()))
}

/// Fundamental unit if `R_K ≤ max_regulator`, else `None`.
pub fn fundamental_unit_bounded(field: &CubicField, max_regulator: f64) -> Result<Option<UnitData>> {
    if !field.d_k().is_negative() {
        return Err(Error::UnsupportedSignature("units are implemented for complex cubic fields".into()));
    }
    let eps = match minima_walk(field, max_regulator)? {
        Walk::Unit(u) => u,
        Walk::Exceeded => return Ok(None),
    };
    let eps = if field.embed(&eps).0 < 0.0 { eps.map(|x| -x) } else { eps };
    let (r_k, r_k_err) = regulator_interval(field, &eps)?;
    if r_k - r_k_err > max_regulator {
        return Ok(None);
    }
    let certificate = certify(field, &eps, r_k, r_k_err)?;
    Ok(Some(UnitData {
        eps,
        r_k,
        r_k_err,
        certificate,
    }))
}

fn certify(field: &CubicField, eps: &IVec, r: f64, err: f64) -> Result<Certificate> {
    let d = field.d_k().abs().to_f64().unwrap();
    let r_hi = r + err;
    if d > 24.0 {
        let log_rhs = 2.0 * ((d - 24.0) / 4.0).ln();
        let log_lhs = 3.0 * r_hi;
        if log_lhs < log_rhs - 1e-12 {
            return Ok(Certificate::Artin { log_lhs, log_rhs });
        }
    }
    if r_hi <= EXHAUSTIVE_MAX_REGULATOR || d <= 28.0 {
        return exhaustive_certificate(field, eps, r, err);
    }
    let r_low = ((d - 24.0) / 4.0).ln() / 3.0;
    let max_k = (r_hi / r_low).floor() as u64;
    for k in crate::primes::primes_up_to(max_k) {
        if kth_root(field, eps, k).is_some() {
            return Err(Error::Inconsistent(format!("walk returned a {k}-th power")));
        }
    }
    Ok(Certificate::RootTest { max_k })
}

fn exhaustive_certificate(field: &CubicField, eps: &IVec, r: f64, err: f64) -> Result<Certificate> {
    let radius = (r + err).exp();
    let basis: [QVec; 3] = std::array::from_fn(|i| {
        let mut e = linalg::zero_ivec();
        e[i] = BigInt::one();
        qvec_from_int(&e)
    });
    let mut smaller = None;
    let lim = (r - err).exp() * (1.0 - 1e-9);
    let points = geometry::search_cylinder(field, &basis, radius, 1.0, |c, v| {
        let ar = v[0].abs();
        if ar > 1.0 + 1e-9 && ar < lim && field.norm_i64(&c).is_some_and(|n| n.abs() == 1) {
            smaller = Some(c);
            return false;
        }
        true
    });
    if let Some(c) = smaller {
        return Err(Error::Inconsistent(format!("unit {c:?} is smaller than ε = {eps:?}")));
    }
    Ok(Certificate::Exhaustive { radius, points })
}

/// `η` with `η^k = ±x`, if one exists in `O_K`.
pub fn kth_root(field: &CubicField, x: &IVec, k: u64) -> Option<IVec> {
    let (xr, xc) = field.embed(x);
    let m = field.embedding().real_coordinates();
    let inv = invert3(&m)?;
    let root_r = xr.abs().powf(1.0 / k as f64);
    let (modulus, arg) = (xc.norm().powf(1.0 / k as f64), xc.arg());
    for s in [1.0, -1.0] {
        for j in 0..k {
            for flip in [0.0, PI] {
                let z = Complex64::from_polar(modulus, (arg + flip + 2.0 * PI * j as f64) / k as f64);
                let target = [s * root_r, z.re, z.im];
                let c: [f64; 3] = std::array::from_fn(|jj| (0..3).map(|i| target[i] * inv[i][jj]).sum());
                if c.iter().any(|v| !v.is_finite() || (v - v.round()).abs() > 0.25) {
                    continue;
                }
                let eta: IVec = c.map(|v| BigInt::from(v.round() as i64));
                let p = field.pow(&eta, k);
                let neg: IVec = x.clone().map(|v| -v);
                if &p == x || p == neg {
                    return Some(eta);
                }
            }
        }
    }
    None
}

fn invert3(m: &RMat) -> Option<RMat> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det
        })
    }))
}

/// Least `m ≥ 1` with `ε^m ∈ O`, computed in `O_K / f·O_K` (note `f·O_K ⊆ O`).
pub fn unit_index(field: &CubicField, order: &Order, unit: &UnitData) -> Result<u64> {
    power_index(field, order, &unit.eps)
}

/// Least `m ≥ 1` with `x^m ∈ O` for a unit `x`.
pub fn power_index(field: &CubicField, order: &Order, x: &IVec) -> Result<u64> {
    if order.is_maximal() {
        return Ok(1);
    }
    let f = order.f().to_u64().filter(|&f| f < (1 << 20)).ok_or(Error::Capacity {
        what: "order index for unit-index computation",
        needed: u64::MAX,
        ceiling: 1 << 20,
    })?;
    let t = field.table_mod(f);
    let mat: [[i128; 3]; 3] = order.lattice().mat().clone().map(|r| r.map(|v| v.to_i128().unwrap()));
    let base: [u64; 3] = x.clone().map(|v| linalg::mod_u64(&v, f));
    let mut cur = base;
    let bound = f.saturating_mul(f).saturating_mul(f);
    for m in 1..=bound {
        if in_order_mod(&mat, &cur) {
            return Ok(m);
        }
        cur = mul_mod_n(&cur, &base, &t, f);
    }
    Err(Error::Inconsistent("unit has no power in the order".into()))
}

pub(crate) fn mul_mod_n(a: &[u64; 3], b: &[u64; 3], t: &[[[u64; 3]; 3]; 3], n: u64) -> [u64; 3] {
    let mut out = [0u128; 3];
    for i in 0..3 {
        if a[i] == 0 {
            continue;
        }
        for j in 0..3 {
            if b[j] == 0 {
                continue;
            }
            let c = a[i] as u128 * b[j] as u128 % n as u128;
            for k in 0..3 {
                out[k] = (out[k] + c * t[i][j][k] as u128) % n as u128;
            }
        }
    }
    out.map(|v| v as u64)
}

/// Membership of a residue vector in the lattice of an upper-triangular HNF.
pub(crate) fn in_order_mod(mat: &[[i128; 3]; 3], v: &[u64; 3]) -> bool {
    linalg::in_hnf(mat, v.map(|x| x as i128))
}

/// `R(O) = m·R_K` and `r(O) = e^{3R(O)}` with propagated error bounds.
pub fn regulator(field: &CubicField, order: &Order, unit: &UnitData) -> Result<RegulatorValue> {
    let m = unit_index(field, order, unit)?;
    Ok(regulator_from_index(unit, m))
}

pub fn regulator_from_index(unit: &UnitData, m: u64) -> RegulatorValue {
    let big_r = m as f64 * unit.r_k;
    let big_r_err = m as f64 * unit.r_k_err + f64::EPSILON * big_r;
    RegulatorValue {
        m,
        big_r,
        big_r_err,
        r: (3.0 * big_r).exp(),
        r_rel_err: (3.0 * big_r_err).exp_m1() + 4.0 * f64::EPSILON,
    }
}

/// Order of `x` in `(O_K/n)^×`, for small `n`.
pub fn multiplicative_order_mod(field: &CubicField, x: &IVec, n: u64) -> Option<u64> {
    let t = field.table_mod(n);
    let base: [u64; 3] = x.clone().map(|v| linalg::mod_u64(&v, n));
    let one = [1 % n, 0, 0];
    let mut cur = base;
    for m in 1..=n.pow(3) {
        if cur == one {
            return Some(m);
        }
        cur = mul_mod_n(&cur, &base, &t, n);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic_fields::CubicPolynomial;

    fn field(a1: i64, a2: i64, a3: i64) -> CubicField {
        CubicField::from_poly(CubicPolynomial::from_i64(a1, a2, a3)).unwrap()
    }

    #[test]
    fn plastic_unit() {
        let f = field(0, -1, -1);
        let u = fundamental_unit(&f).unwrap();
        assert_eq!(u.eps, linalg::ivec([0, 1, 0]));
        assert!((u.r_k - 0.2812).abs() < 1e-4);
        assert!(u.r_k_err < 1e-12);
        assert!(matches!(u.certificate, Certificate::Exhaustive { .. }));
        assert!((u.r_factor() - 2.3247).abs() < 1e-3);
    }

    #[test]
    fn cube_root_of_two() {
        let f = field(0, 0, -2);
        let u = fundamental_unit(&f).unwrap();
        // (θ − 1)⁻¹ = 1 + θ + θ², the representative with σ_r > 1
        assert_eq!(u.eps, linalg::ivec([1, 1, 1]));
        assert!((u.r_k - 1.3474).abs() < 1e-4);
        let inv = f.inverse(&crate::cubic_fields::qvec_from_int(&u.eps)).unwrap();
        let expected = crate::cubic_fields::qvec_from_int(&linalg::ivec([-1, 1, 0]));
        assert_eq!(inv, expected);
    }

    #[test]
    fn regulator_interval_is_tight() {
        let f = field(-1, -2, -8);
        let u = fundamental_unit(&f).unwrap();
        assert!(f.norm_int(&u.eps).abs().is_one());
        assert!(u.r_k_err < 1e-12);
        let direct = f.embed(&u.eps).0.ln();
        assert!((direct - u.r_k).abs() < 1e-9);
    }

    #[test]
    fn unit_index_of_z_plus_two() {
        let f = field(0, -1, -1);
        let u = fundamental_unit(&f).unwrap();
        let o = Order::z_plus_multiple(&f, &BigInt::from(2)).unwrap();
        let m = unit_index(&f, &o, &u).unwrap();
        // θ has order 7 in 𝔽₈^× and ℤ maps to {1}
        assert_eq!(m, 7);
        assert!(o.contains(&f.pow(&u.eps, m)));
        for j in 1..m {
            assert!(!o.contains(&f.pow(&u.eps, j)));
        }
        assert_eq!(unit_index(&f, &Order::maximal(&f), &u).unwrap(), 1);
        let inv = f.pow(&u.eps, 6); // θ⁻¹ ≡ θ⁶ modulo 2
        assert_eq!(power_index(&f, &o, &inv).unwrap(), 7);
    }

    #[test]
    fn regulator_scales_with_index() {
        let f = field(0, -1, -1);
        let u = fundamental_unit(&f).unwrap();
        let r1 = regulator_from_index(&u, 1);
        let r2 = regulator_from_index(&u, 2);
        assert!((r2.r - r1.r * r1.r).abs() <= r2.r * (r2.r_rel_err + 1e-15));
        assert!(r1.r > 1.0);
    }

    #[test]
    fn bounded_walk_stops() {
        let f = field(0, 0, -2);
        assert!(fundamental_unit_bounded(&f, 1.0).unwrap().is_none());
        assert!(fundamental_unit_bounded(&f, 1.4).unwrap().is_some());
    }

    #[test]
    fn root_detection() {
        let f = field(0, 0, -2);
        let u = fundamental_unit(&f).unwrap();
        let sq = f.pow(&u.eps, 2);
        let root = kth_root(&f, &sq, 2).unwrap();
        assert!(root == u.eps || root == u.eps.clone().map(|x| -x));
        let cube = f.pow(&u.eps, 3);
        assert!(kth_root(&f, &cube, 3).is_some());
        assert!(kth_root(&f, &u.eps, 2).is_none());
        assert!(kth_root(&f, &u.eps, 3).is_none());
    }

    #[test]
    fn record_roundtrip() {
        let f = field(-1, -2, -8);
        let u = fundamental_unit(&f).unwrap();
        let rec = u.record();
        let json = serde_json::to_string(&rec).unwrap();
        let back = UnitData::from_record(&f, &serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.eps, u.eps);
        let mut bad = rec.clone();
        bad.eps = crate::serial::zvec(&linalg::ivec([2, 0, 0]));
        assert!(UnitData::from_record(&f, &bad).is_err());
    }
}
