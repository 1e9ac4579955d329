//! Configuration, the persistent cache and the four commands behind the
//! `cubic-census` binary. Commands return their output as a string so that
//! determinism can be checked byte for byte.

pub mod cache;

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use cache::{Cache, CacheEntry, EntryKind};

use crate::census::{self, Census, CensusParams, FieldCensus};
use crate::class_numbers::{self, IdealClassRecord, IdealClassSet};
use crate::cubic_fields::{enumerate_fields, CubicField, CubicPolynomial, FieldRecord};
use crate::error::{Error, Result};
use crate::splitting::{self, PrimeSet};
use crate::units::{self, UnitData, UnitRecord};

/// Validated run configuration for `count`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub primes: PrimeSet,
    pub x_max: f64,
    pub grid: Vec<f64>,
    /// Largest admissible absolute error of any regulator in the census.
    pub regulator_abs_err: f64,
    /// Relative error requested from `li`.
    pub quadrature_rel_err: f64,
    /// Candidate ceiling of the module class computation, per order.
    pub ceiling: u64,
    /// Worker threads; 0 means one per core.
    pub workers: usize,
}

impl Config {
    pub fn new(primes: PrimeSet, grid: Vec<f64>) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::InvalidInput("grid is empty".into()));
        }
        if grid.iter().any(|x| !(x.is_finite() && *x >= 2.0)) {
            return Err(Error::InvalidInput("grid points must be finite and ≥ 2".into()));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidInput("grid must be strictly increasing".into()));
        }
        let x_max = *grid.last().expect("nonempty");
        Ok(Config {
            primes,
            x_max,
            grid,
            regulator_abs_err: 1e-9,
            quadrature_rel_err: 1e-9,
            ceiling: class_numbers::DEFAULT_CEILING,
            workers: 0,
        })
    }

    pub fn census_params(&self) -> CensusParams {
        CensusParams {
            primes: self.primes.clone(),
            x: self.x_max,
            bound_factor: 1,
            ceiling: self.ceiling,
        }
    }
}

/// `a1,a2,a3` as the polynomial `x³ + a1x² + a2x + a3`.
pub fn parse_poly(s: &str) -> Result<CubicPolynomial> {
    let c: Vec<BigInt> = parse_list(s)?;
    if c.len() != 3 {
        return Err(Error::InvalidInput(format!("expected three coefficients a1,a2,a3, got {}", c.len())));
    }
    let [a1, a2, a3]: [BigInt; 3] = c.try_into().expect("length checked");
    Ok(CubicPolynomial::new(a1, a2, a3))
}

/// Comma-separated values, surrounding whitespace allowed.
pub fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Err(Error::InvalidInput("empty list".into()));
    }
    s.split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<T>().map_err(|_| Error::InvalidInput(format!("cannot parse {p:?}")))
        })
        .collect()
}

pub fn parse_primes(s: &str) -> Result<PrimeSet> {
    PrimeSet::new(parse_list(s)?)
}

/// `1.5`, `1.5+0.25i` or `1.5-0.25i`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse complex number {t:?}"));
    let num = |p: &str| -> Result<f64> {
        let v: f64 = p.trim().parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(num(t)?, 0.0));
    };
    // split at the last sign that is not an exponent sign or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    Ok(Complex64::new(num(&body[..split])?, num(&body[split..])?))
}

/// Field list stored under `fields:<dmax>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldList {
    pub dmax: u64,
    pub fields: Vec<FieldRecord>,
}

fn fields_key(dmax: u64) -> String {
    format!("fields:{dmax}")
}

/// Fields with `|d_K| ≤ dmax`, from the smallest sufficient cached list or
/// freshly enumerated. The output is prefix-closed in `dmax`, so a longer
/// list can be cut down.
pub fn load_fields(cache: &mut Cache, dmax: u64) -> Result<Vec<CubicField>> {
    let mut best: Option<u64> = None;
    for e in cache.entries(EntryKind::Field) {
        if let Some(d) = e.key.strip_prefix("fields:").and_then(|d| d.parse::<u64>().ok()) {
            if d >= dmax && best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
    }
    if let Some(d) = best {
        let list: FieldList = cache.get_as(EntryKind::Field, &fields_key(d))?.expect("key found above");
        let bound = BigInt::from(dmax);
        return list
            .fields
            .par_iter()
            .filter(|r| r.d_k.0.abs() <= bound)
            .map(CubicField::from_record)
            .collect();
    }
    let fields = enumerate_fields(dmax);
    let list = FieldList {
        dmax,
        fields: fields.iter().map(CubicField::record).collect(),
    };
    cache.put(EntryKind::Field, &fields_key(dmax), &list)?;
    Ok(fields)
}

/// `fields --dmax N`.
pub fn cmd_fields(cache: &mut Cache, dmax: u64) -> Result<String> {
    let fields = load_fields(cache, dmax)?;
    Ok(format!("{} complex cubic fields with |d_K| <= {dmax}\n", fields.len()))
}

fn poly_key(p: &CubicPolynomial) -> String {
    let c = p.coeffs();
    format!("{},{},{}", c[0], c[1], c[2])
}

fn unit_cached(cache: &mut Cache, field: &CubicField) -> Result<UnitData> {
    let key = format!("unit:{}", poly_key(field.poly()));
    if let Some(rec) = cache.get_as::<UnitRecord>(EntryKind::Unit, &key)? {
        return UnitData::from_record(field, &rec);
    }
    let u = units::fundamental_unit(field)?;
    cache.put(EntryKind::Unit, &key, &u.record())?;
    Ok(u)
}

fn classes_cached(cache: &mut Cache, field: &CubicField, unit: &UnitData) -> Result<IdealClassSet> {
    let key = format!("class:{}", poly_key(field.poly()));
    if let Some(rec) = cache.get_as::<IdealClassRecord>(EntryKind::Class, &key)? {
        return IdealClassSet::from_record(&rec);
    }
    let c = class_numbers::class_number_maximal_with_unit(field, unit)?;
    cache.put(EntryKind::Class, &key, &c.record())?;
    Ok(c)
}

/// `analyze --poly a1,a2,a3`: a plain-text dossier of the field.
pub fn cmd_analyze(cache: &mut Cache, poly: &CubicPolynomial, primes: &PrimeSet) -> Result<String> {
    let field = CubicField::from_poly(poly.clone())?;
    let unit = unit_cached(cache, &field)?;
    let classes = classes_cached(cache, &field, &unit)?;
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "polynomial: {}", field.poly());
    let _ = writeln!(w, "d_K: {}", field.d_k());
    let _ = writeln!(w, "index [O_K : Z[theta]]: {}", field.index());
    let b = field.basis_num();
    let _ = writeln!(
        w,
        "integral basis (power-basis rows / {}): [{}, {}, {}], [{}, {}, {}], [{}, {}, {}]",
        field.basis_den(),
        b[0][0],
        b[0][1],
        b[0][2],
        b[1][0],
        b[1][1],
        b[1][2],
        b[2][0],
        b[2][1],
        b[2][2]
    );
    for &p in primes.primes() {
        let t = splitting::splitting_type(&field, p)?;
        let _ = writeln!(
            w,
            "splitting at {p}: {t}{}",
            if t.is_non_decomposed() { " (non-decomposed)" } else { "" }
        );
    }
    match splitting::lambda(&field, primes) {
        Ok(l) => {
            let _ = writeln!(w, "lambda_S for S = {primes}: {l}");
        }
        Err(Error::Decomposed { prime }) => {
            let _ = writeln!(w, "lambda_S for S = {primes}: undefined, {prime} is decomposed");
        }
        Err(e) => return Err(e),
    }
    let e = &unit.eps;
    let _ = writeln!(w, "fundamental unit (integral-basis coordinates): [{}, {}, {}]", e[0], e[1], e[2]);
    let _ = writeln!(w, "R_K: {:.15} (error <= {:.1e})", unit.r_k, unit.r_k_err);
    let _ = writeln!(w, "r(O_K) = exp(3 R_K): {:.12}", unit.r_factor());
    let _ = writeln!(w, "unit certificate: {}", serde_json::to_string(&unit.certificate).expect("serialisable"));
    let _ = writeln!(w, "Minkowski bound: {:.6}", class_numbers::minkowski_bound(&field));
    let _ = writeln!(w, "h_K: {}", classes.h);
    Ok(out)
}

fn params_tag(p: &CensusParams) -> String {
    format!("S={};x={};factor={};ceiling={}", p.primes, p.x, p.bound_factor, p.ceiling)
}

/// Runs (or resumes) a census, appending each finished field to the cache.
pub fn run_census_cached(cache: &mut Cache, params: &CensusParams) -> Result<Census> {
    let marker = format!("census:{}", params_tag(params));
    if let Some(c) = cache.get_as::<Census>(EntryKind::Report, &marker)? {
        return Ok(c);
    }
    let bound = census::field_bound(params.x)? * params.bound_factor;
    let fields = load_fields(cache, bound)?;
    let tag = params_tag(params);
    let key = |f: &CubicField| format!("field-census:{tag};poly={}", poly_key(f.poly()));
    let mut done: Vec<Option<FieldCensus>> = Vec::with_capacity(fields.len());
    for f in &fields {
        done.push(cache.get_as::<FieldCensus>(EntryKind::Order, &key(f))?);
    }
    let shared = Mutex::new(&mut *cache);
    let fresh: Vec<(usize, FieldCensus)> = fields
        .par_iter()
        .enumerate()
        .filter(|(i, _)| done[*i].is_none())
        .map(|(i, f)| {
            let fc = census::census_field(f, params)?;
            shared.lock().expect("cache lock").put(EntryKind::Order, &key(f), &fc)?;
            Ok((i, fc))
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, fc) in fresh {
        done[i] = Some(fc);
    }
    let per: Vec<FieldCensus> = done.into_iter().map(|d| d.expect("every field computed")).collect();
    let c = Census::assemble(params.clone(), per);
    cache.put(EntryKind::Report, &marker, &c)?;
    Ok(c)
}

/// `count --primes … --grid …`: the report as CSV.
pub fn cmd_count(cache: &mut Cache, config: &Config) -> Result<String> {
    let census = run_census_cached(cache, &config.census_params())?;
    if let Some(r) = census.records.iter().find(|r| r.big_r_err > config.regulator_abs_err) {
        return Err(Error::Inconsistent(format!(
            "regulator error {} exceeds the target {}",
            r.big_r_err, config.regulator_abs_err
        )));
    }
    let rep = census::report(&census, &config.grid)?;
    let csv = rep.to_csv();
    let grid: Vec<String> = config.grid.iter().map(|x| x.to_string()).collect();
    cache.put(EntryKind::Report, &format!("report:S={};grid={}", config.primes, grid.join(",")), &csv)?;
    Ok(csv)
}

pub const ZETA_HEADER: &str = "s_re,s_im,cutoff,zeta_re,zeta_im,residual";

/// `zeta --s … --cutoff R`: needs a cached census reaching `e^{3R}`.
pub fn cmd_zeta(cache: &Cache, primes: &PrimeSet, s_list: &[Complex64], cutoff: f64) -> Result<String> {
    if !(cutoff > 0.0 && cutoff.is_finite()) {
        return Err(Error::InvalidInput(format!("cutoff must be positive, got {cutoff}")));
    }
    let need = (3.0 * cutoff).exp();
    let census = cache
        .entries(EntryKind::Report)
        .filter(|e| e.key.starts_with("census:"))
        .filter_map(|e| serde_json::from_value::<Census>(e.payload.clone()).ok())
        .filter(|c| &c.params.primes == primes && c.params.x >= need * (1.0 - 1e-12))
        .min_by(|a, b| a.params.x.total_cmp(&b.params.x))
        .ok_or_else(|| {
            Error::Stale(format!("no cached census for S = {primes} reaching x = e^(3·{cutoff}) = {need}; run count first"))
        })?;
    let mut out = String::from(ZETA_HEADER);
    out.push('\n');
    for &s in s_list {
        if !(s.re > 0.0) {
            return Err(Error::InvalidInput(format!("need Re(s) > 0, got {s}")));
        }
        let z = census::zeta_partial(&census.records, s, cutoff);
        let res = census::log_derivative_residual(&census.records, s, cutoff)?;
        let _ = writeln!(out, "{},{},{},{},{},{:e}", s.re, s.im, cutoff, z.re, z.im, res);
    }
    Ok(out)
}
