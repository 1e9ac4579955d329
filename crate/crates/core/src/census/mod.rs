//! The weighted census of orders `O ∈ O(S)` by `r(O) = e^{3R(O)}`.
//!
//! Completeness rests on two facts. A field with an order of regulator
//! `r ≤ x` has `r(O_K) ≤ x`, and `|d_K| < 4·r(O_K) + 24`, so only fields with
//! `|d_K| ≤ ⌈4x + 24⌉` matter; the inequality is re-checked for every field
//! that is processed. Inside a field, an order with unit index `m` contains
//! `ℤ[ε^m]`, so it is found among the finitely many orders between `ℤ[ε^m]`
//! and `O_K`.

mod analytic;
mod report;

pub use analytic::{li, log_derivative_residual, psi, zeta_log_derivative_series, zeta_log_derivative_symbolic, zeta_partial};
pub use report::{report, CensusReport, ReportRow, CSV_HEADER};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class_numbers::{self, IdealClassSet};
use crate::cubic_fields::{enumerate_fields, CubicField};
use crate::error::{Error, Result};
use crate::linalg::{self, SMat};
use crate::order_arithmetic::{Lattice, LatticeRecord, Order};
use crate::serial::Z;
use crate::splitting::{self, PrimeSet};
use crate::units::{self, UnitData};

/// `⌈4x + 24⌉`, the discriminant cutoff for regulator cutoff `x`.
pub fn field_bound(x: f64) -> Result<u64> {
    if !(x > 1.0) || !x.is_finite() {
        return Err(Error::Domain(format!("regulator cutoff must exceed 1, got {x}")));
    }
    Ok((4.0 * x + 24.0).ceil() as u64)
}

/// One order of the census.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderRecord {
    #[serde(rename = "d_K")]
    pub d_k: Z,
    /// Defining polynomial `[a1, a2, a3]` of the field, in canonical form.
    pub poly: [Z; 3],
    pub order: LatticeRecord,
    pub f: u64,
    pub m: u64,
    #[serde(rename = "R")]
    pub big_r: f64,
    #[serde(rename = "R_err")]
    pub big_r_err: f64,
    pub r: f64,
    pub r_lo: f64,
    pub r_hi: f64,
    pub h: u64,
    pub lambda: u64,
    pub weight: u64,
}

impl OrderRecord {
    /// Sort key `(|d_K|, poly, f, m, Hermite form)`.
    pub fn sort_key(&self) -> (BigInt, [BigInt; 3], u64, u64, Vec<BigInt>) {
        (
            self.d_k.0.abs(),
            self.poly.clone().map(|z| z.0),
            self.f,
            self.m,
            self.order.mat.iter().map(|z| z.0.clone()).collect(),
        )
    }

    /// `r` may lie on either side of `x`.
    pub fn is_ambiguous_at(&self, x: f64) -> bool {
        self.r_lo <= x && x < self.r_hi
    }

    /// `r ≤ x` for every value in the error interval.
    pub fn is_below(&self, x: f64) -> bool {
        self.r_hi <= x
    }
}

/// What happened to one field of the candidate list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSummary {
    #[serde(rename = "d_K")]
    pub d_k: Z,
    pub poly: [Z; 3],
    /// `false` if some `p ∈ S` is decomposed; such fields contribute nothing.
    pub in_c_s: bool,
    /// `R_K` when it is at most the walk cutoff.
    #[serde(rename = "R_K")]
    pub r_k: Option<f64>,
    pub h_k: Option<u64>,
    /// `|d_K| < 4·r(O_K) + 24` was verified (trivially true past the cutoff).
    pub artin_ok: bool,
    pub orders: usize,
}

/// Search parameters. The factors exist for the completeness cross-check,
/// which repeats the census with enlarged bounds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusParams {
    pub primes: PrimeSet,
    pub x: f64,
    pub bound_factor: u64,
    pub ceiling: u64,
}

impl CensusParams {
    pub fn new(primes: PrimeSet, x: f64) -> Self {
        CensusParams {
            primes,
            x,
            bound_factor: 1,
            ceiling: class_numbers::DEFAULT_CEILING,
        }
    }

    fn log_cutoff(&self) -> f64 {
        self.x.ln() / 3.0 * self.bound_factor as f64
    }
}

/// Census of a single field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldCensus {
    pub summary: FieldSummary,
    pub records: Vec<OrderRecord>,
}

/// A complete census up to `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub params: CensusParams,
    pub fields: Vec<FieldSummary>,
    pub records: Vec<OrderRecord>,
}

impl Census {
    /// Fields are independent; results are merged in a fixed order.
    pub fn run(params: &CensusParams) -> Result<Census> {
        let bound = field_bound(params.x)? * params.bound_factor;
        let fields = enumerate_fields(bound);
        let per: Vec<FieldCensus> = fields
            .par_iter()
            .map(|f| census_field(f, params))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::assemble(params.clone(), per))
    }

    pub fn assemble(params: CensusParams, per: Vec<FieldCensus>) -> Census {
        let mut fields = Vec::with_capacity(per.len());
        let mut records = Vec::new();
        for fc in per {
            fields.push(fc.summary);
            records.extend(fc.records);
        }
        fields.sort_by(|a, b| (a.d_k.0.abs(), a.poly.clone().map(|z| z.0)).cmp(&(b.d_k.0.abs(), b.poly.clone().map(|z| z.0))));
        records.sort_by_key(OrderRecord::sort_key);
        Census { params, fields, records }
    }

    /// `π_S(x)`: total weight of the records certainly below `x`.
    pub fn pi_s(&self, x: f64) -> u64 {
        pi_s(&self.records, x)
    }
}

pub fn pi_s(records: &[OrderRecord], x: f64) -> u64 {
    records.iter().filter(|r| r.is_below(x)).map(|r| r.weight).sum()
}

/// `Σ h(O)` over records certainly below `x`.
pub fn pi_tilde(records: &[OrderRecord], x: f64) -> u64 {
    records.iter().filter(|r| r.is_below(x)).map(|r| r.h).sum()
}

fn poly_key(field: &CubicField) -> [Z; 3] {
    let c = field.poly().coeffs();
    [Z(c[0].clone()), Z(c[1].clone()), Z(c[2].clone())]
}

/// Orders of one field with `r(O) ≤ x` (up to the error interval) and index
/// prime to `S`.
pub fn census_field(field: &CubicField, params: &CensusParams) -> Result<FieldCensus> {
    let mut summary = FieldSummary {
        d_k: Z(field.d_k().clone()),
        poly: poly_key(field),
        in_c_s: true,
        r_k: None,
        h_k: None,
        artin_ok: true,
        orders: 0,
    };
    for &p in params.primes.primes() {
        if !splitting::non_decomposed(field, p)? {
            summary.in_c_s = false;
            return Ok(FieldCensus { summary, records: Vec::new() });
        }
    }
    let cutoff = params.log_cutoff();
    let Some(unit) = units::fundamental_unit_bounded(field, cutoff)? else {
        return Ok(FieldCensus { summary, records: Vec::new() });
    };
    summary.r_k = Some(unit.r_k);
    let d = field.d_k().abs().to_f64().unwrap_or(f64::INFINITY);
    if !(d < 4.0 * (3.0 * (unit.r_k + unit.r_k_err)).exp() + 24.0) {
        summary.artin_ok = false;
        return Err(Error::Inconsistent(format!(
            "|d_K| = {d} violates |d_K| < 4·r(O_K) + 24 with R_K = {}",
            unit.r_k
        )));
    }
    let lambda = splitting::lambda(field, &params.primes)?;
    let mut classes = None;
    let records = orders_of_field(field, &unit, &mut classes, lambda, params)?;
    summary.h_k = classes.map(|c| c.h);
    summary.orders = records.len();
    Ok(FieldCensus { summary, records })
}

fn orders_of_field(
    field: &CubicField,
    unit: &UnitData,
    classes: &mut Option<IdealClassSet>,
    lambda: u64,
    params: &CensusParams,
) -> Result<Vec<OrderRecord>> {
    let cutoff = params.log_cutoff();
    let mut out = Vec::new();
    let mut m = 1u64;
    while 3.0 * m as f64 * (unit.r_k - unit.r_k_err) <= 3.0 * cutoff {
        let em = field.pow(&unit.eps, m);
        let gens = [CubicField::one(), em.clone(), field.mul(&em, &em)];
        let inner = Lattice::from_integer_rows(&gens, &BigInt::one())?;
        for order in orders_containing(field, &inner)? {
            let f = order.f().to_u64().expect("divides the index of ℤ[ε^m]");
            if !params.primes.coprime_to(order.f()) {
                continue;
            }
            if units::unit_index(field, &order, unit)? != m {
                continue;
            }
            let reg = units::regulator_from_index(unit, m);
            let r_lo = (3.0 * (reg.big_r - reg.big_r_err)).exp();
            if r_lo > params.x {
                continue;
            }
            if classes.is_none() {
                *classes = Some(class_numbers::class_number_maximal_with_unit(field, unit)?);
            }
            let cl = classes.as_ref().expect("just computed");
            let set = class_numbers::module_class_number(field, &order, unit, cl, params.ceiling)?;
            out.push(OrderRecord {
                d_k: Z(field.d_k().clone()),
                poly: poly_key(field),
                order: order.lattice().record(),
                f,
                m,
                big_r: reg.big_r,
                big_r_err: reg.big_r_err,
                r: reg.r,
                r_lo,
                r_hi: (3.0 * (reg.big_r + reg.big_r_err)).exp(),
                h: set.h,
                lambda,
                weight: set.h * lambda,
            });
        }
        m += 1;
    }
    Ok(out)
}

/// All orders `O` with `inner ⊆ O ⊆ O_K`, for an integral lattice containing 1.
pub fn orders_containing(field: &CubicField, inner: &Lattice) -> Result<Vec<Order>> {
    if !inner.is_integral() {
        return Err(Error::InvalidInput("inner lattice must be integral".into()));
    }
    let f = inner.covolume().to_integer();
    let f = f.to_i128().filter(|&f| f > 0 && f <= 1 << 40).ok_or(Error::Capacity {
        what: "index of the inner lattice",
        needed: f.to_u64().unwrap_or(u64::MAX),
        ceiling: 1 << 40,
    })?;
    let rows: SMat = linalg::to_smat(inner.mat()).expect("entries bounded by the index");
    let t = field.table();
    let t: Vec<i128> = t.iter().flatten().flatten().map(|x| x.to_i128().unwrap_or(i128::MAX)).collect();
    let mul = |a: &[i128; 3], b: &[i128; 3]| -> [i128; 3] {
        let mut out = [0i128; 3];
        for i in 0..3 {
            for j in 0..3 {
                let c = a[i] * b[j];
                if c != 0 {
                    for (k, o) in out.iter_mut().enumerate() {
                        *o += c * t[9 * i + 3 * j + k];
                    }
                }
            }
        }
        out
    };
    let mut out = Vec::new();
    for d1 in divisors(f) {
        for d2 in divisors(f / d1) {
            for a in 0..d2 {
                let h: SMat = [[1, 0, 0], [0, d1, a], [0, 0, d2]];
                if !rows.iter().all(|r| linalg::in_hnf(&h, *r)) {
                    continue;
                }
                let closed = [(1, 1), (1, 2), (2, 2)]
                    .iter()
                    .all(|&(i, j)| linalg::in_hnf(&h, mul(&h[i], &h[j])));
                if closed {
                    let lat = Lattice::from_integer_rows(&linalg::from_smat(&h), &BigInt::one())?;
                    out.push(Order::new(field, lat)?);
                }
            }
        }
    }
    Ok(out)
}

fn divisors(n: i128) -> Vec<i128> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Recomputes `(h, λ, m, R)` of a record from its field polynomial and lattice.
pub fn recompute(rec: &OrderRecord, primes: &PrimeSet) -> Result<(u64, u64, u64, f64)> {
    let poly = crate::cubic_fields::CubicPolynomial::new(rec.poly[0].0.clone(), rec.poly[1].0.clone(), rec.poly[2].0.clone());
    let field = CubicField::from_poly(poly)?;
    let order = Order::new(&field, Lattice::from_record(&rec.order)?)?;
    let unit = units::fundamental_unit(&field)?;
    let classes = class_numbers::class_number_maximal_with_unit(&field, &unit)?;
    let set = class_numbers::module_class_number(&field, &order, &unit, &classes, u64::MAX)?;
    let lambda = splitting::lambda(&field, primes)?;
    let m = units::unit_index(&field, &order, &unit)?;
    Ok((set.h, lambda, m, m as f64 * unit.r_k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic_fields::CubicPolynomial;

    fn field(a1: i64, a2: i64, a3: i64) -> CubicField {
        CubicField::from_poly(CubicPolynomial::from_i64(a1, a2, a3)).unwrap()
    }

    fn s23() -> PrimeSet {
        PrimeSet::new(vec![2, 3]).unwrap()
    }

    #[test]
    fn bound_examples() {
        assert_eq!(field_bound(1e4).unwrap(), 40024);
        assert!(field_bound(1.0).is_err());
        assert!(field_bound(0.5).is_err());
    }

    #[test]
    fn d23_just_above_maximal_order() {
        let f = field(0, -1, -1);
        let unit = units::fundamental_unit(&f).unwrap();
        let x = unit.r_factor() * 1.001;
        let fc = census_field(&f, &CensusParams::new(s23(), x)).unwrap();
        assert_eq!(fc.records.len(), 1);
        let r = &fc.records[0];
        assert_eq!((r.f, r.m, r.h, r.lambda, r.weight), (1, 1, 1, 9, 9));
        let below = census_field(&f, &CensusParams::new(s23(), unit.r_factor() * 0.999)).unwrap();
        assert!(below.records.is_empty());
    }

    #[test]
    fn index_filter_excludes_s() {
        let f = field(0, -1, -1);
        let fc = census_field(&f, &CensusParams::new(s23(), 200.0)).unwrap();
        assert!(!fc.records.is_empty());
        for r in &fc.records {
            assert!(r.f % 2 != 0 && r.f % 3 != 0, "{r:?}");
            assert_eq!(r.weight, r.h * r.lambda);
            assert!((r.r - (3.0 * r.big_r).exp()).abs() <= r.r * 1e-12);
        }
        // two odd inert primes, so that S no longer excludes even index
        let odd: Vec<u64> = crate::primes::primes_up_to(100)
            .into_iter()
            .filter(|&p| p > 2 && splitting::non_decomposed(&f, p).unwrap())
            .take(2)
            .collect();
        let d = census_field(&f, &CensusParams::new(PrimeSet::new(odd).unwrap(), 400.0)).unwrap();
        assert!(d.records.iter().any(|r| r.f % 2 == 0));
    }

    #[test]
    fn suborders_of_z_epsilon() {
        // orders between ℤ ⊕ 2ℤω₁ ⊕ 4ℤω₂ and O_K, among them ℤ + 2O_K
        let f = field(0, -1, -1);
        let l = Lattice::from_integer_rows(
            &[CubicField::one(), linalg::ivec([0, 2, 0]), linalg::ivec([0, 0, 4])],
            &BigInt::one(),
        )
        .unwrap();
        let orders = orders_containing(&f, &l).unwrap();
        assert!(orders.iter().any(|o| o.is_maximal()));
        assert!(orders.iter().any(|o| o.f() == &BigInt::from(4)));
        for o in &orders {
            assert!(o.lattice().contains_lattice(&l));
        }
    }

    #[test]
    fn divisor_listing() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
    }
}
