//! Complex cubic fields of bounded discriminant, one per isomorphism class.
//!
//! Every field has a generator `θ ∈ O_K` with `Tr θ ∈ {−1, 0, 1}` and
//! `T₂(θ) ≤ Tr(θ)²/3 + (2/3)·√|d_K|`. Searching that box for all polynomials and
//! taking, per field, the polynomial with the smallest [`canonical_key`] among
//! those inside the field's *own* box gives a representative that does not
//! depend on the global bound.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{integral_basis, maximal, CubicField, CubicPolynomial};
use crate::linalg::{self, IMat, IVec};
use crate::primes::first_primes;
use crate::splitting;

/// Number of small primes whose splitting types enter the dedup key.
pub const KEY_PRIMES: usize = 25;

/// Slack on floating-point `T₂` comparisons.
const T2_SLACK: f64 = 1e-9;

/// `(d_K, splitting codes at the first 25 primes)`.
pub type FieldKey = (i64, Vec<u8>);

/// Tally of the polynomials rejected during a search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationDiagnostics {
    pub searched: u64,
    pub reducible: u64,
    pub zero_discriminant: u64,
    pub positive_discriminant: u64,
    pub outside_t2_box: u64,
    pub discriminant_too_large: u64,
    pub outside_own_box: u64,
    pub candidates: u64,
    pub isomorphic_duplicates: u64,
    pub isomorphism_tests: u64,
}

impl EnumerationDiagnostics {
    fn merge(mut self, o: Self) -> Self {
        self.searched += o.searched;
        self.reducible += o.reducible;
        self.zero_discriminant += o.zero_discriminant;
        self.positive_discriminant += o.positive_discriminant;
        self.outside_t2_box += o.outside_t2_box;
        self.discriminant_too_large += o.discriminant_too_large;
        self.outside_own_box += o.outside_own_box;
        self.candidates += o.candidates;
        self
    }
}

/// `a1²/3 + (2/3)·√d`.
pub fn hunter_t2_bound(a1: i64, d: f64) -> f64 {
    (a1 * a1) as f64 / 3.0 + 2.0 / 3.0 * d.sqrt()
}

/// Ordering key for defining polynomials: `(|a1|, |a2|, |a3|, a1, a2, a3)`.
pub fn canonical_key(poly: &CubicPolynomial) -> (BigInt, BigInt, BigInt, BigInt, BigInt, BigInt) {
    (
        poly.a1.abs(),
        poly.a2.abs(),
        poly.a3.abs(),
        poly.a1.clone(),
        poly.a2.clone(),
        poly.a3.clone(),
    )
}

fn canonical_key_i64(c: &[i64; 3]) -> (i64, i64, i64, i64, i64, i64) {
    (c[0].abs(), c[1].abs(), c[2].abs(), c[0], c[1], c[2])
}

/// All complex cubic fields with `|d_K| ≤ dmax`, sorted by `|d_K|` and then by
/// the canonical key of the defining polynomial.
pub fn enumerate_fields(dmax: u64) -> Vec<CubicField> {
    enumerate_fields_with_diagnostics(dmax).0
}

struct Candidate {
    coeffs: [i64; 3],
    d_k: i64,
    num: IMat,
    den: BigInt,
    index: BigInt,
    key: Vec<u8>,
}

pub fn enumerate_fields_with_diagnostics(dmax: u64) -> (Vec<CubicField>, EnumerationDiagnostics) {
    let dmax_f = dmax as f64;
    let rows: Vec<(i64, i64)> = [-1i64, 0, 1]
        .iter()
        .flat_map(|&a1| {
            let t2 = hunter_t2_bound(a1, dmax_f) + T2_SLACK;
            let lo = (((a1 * a1) as f64 - t2) / 2.0).ceil() as i64;
            let hi = (((a1 * a1) as f64 + t2) / 2.0).floor() as i64;
            (lo..=hi).map(move |a2| (a1, a2))
        })
        .collect();
    let key_primes = first_primes(KEY_PRIMES);
    let (mut cands, diag) = rows
        .par_iter()
        .map(|&(a1, a2)| scan_row(a1, a2, dmax, &key_primes))
        .reduce(
            || (Vec::new(), EnumerationDiagnostics::default()),
            |(mut v, d), (w, e)| {
                v.extend(w);
                (v, d.merge(e))
            },
        );
    let mut diag = diag;
    cands.sort_by(|a, b| {
        (a.d_k.abs(), &a.key, canonical_key_i64(&a.coeffs)).cmp(&(b.d_k.abs(), &b.key, canonical_key_i64(&b.coeffs)))
    });
    // Candidates of one (d_K, key) group, in canonical order: the first of each
    // isomorphism class is its representative.
    let mut groups: BTreeMap<(u64, Vec<u8>), Vec<Candidate>> = BTreeMap::new();
    for c in cands {
        groups.entry((c.d_k.unsigned_abs(), c.key.clone())).or_default().push(c);
    }
    let results: Vec<(Vec<CubicField>, u64, u64)> = groups
        .into_par_iter()
        .map(|(_, group)| {
            let mut reps: Vec<CubicField> = Vec::new();
            let (mut dups, mut tests) = (0u64, 0u64);
            for c in group {
                let poly = CubicPolynomial::from_i64(c.coeffs[0], c.coeffs[1], c.coeffs[2]);
                let mut found = false;
                for r in &reps {
                    tests += 1;
                    if poly_has_root_in(&poly, r).is_some() {
                        found = true;
                        break;
                    }
                }
                if found {
                    dups += 1;
                    continue;
                }
                let field = CubicField::assemble(poly, c.num, c.den, c.index)
                    .expect("candidate passed maximal-order construction");
                reps.push(field);
            }
            (reps, dups, tests)
        })
        .collect();
    let mut fields = Vec::new();
    for (reps, dups, tests) in results {
        fields.extend(reps);
        diag.isomorphic_duplicates += dups;
        diag.isomorphism_tests += tests;
    }
    fields.sort_by(|a, b| {
        (a.d_k().abs(), canonical_key(a.poly())).cmp(&(b.d_k().abs(), canonical_key(b.poly())))
    });
    (fields, diag)
}

fn scan_row(a1: i64, a2: i64, dmax: u64, key_primes: &[u64]) -> (Vec<Candidate>, EnumerationDiagnostics) {
    let mut diag = EnumerationDiagnostics::default();
    let mut out = Vec::new();
    let t2max = hunter_t2_bound(a1, dmax as f64) + T2_SLACK;
    let a3max = (t2max / 3.0).powf(1.5).floor() as i64;
    for a3 in -a3max..=a3max {
        diag.searched += 1;
        if a3 == 0 {
            diag.reducible += 1;
            continue;
        }
        let disc = disc_i128(a1, a2, a3);
        if disc == 0 {
            diag.zero_discriminant += 1;
            continue;
        }
        if disc > 0 {
            diag.positive_discriminant += 1;
            continue;
        }
        let poly = CubicPolynomial::from_i64(a1, a2, a3);
        let (r, z) = poly.roots_f64();
        let t2 = r * r + 2.0 * z.norm_sqr();
        if t2 > t2max {
            diag.outside_t2_box += 1;
            continue;
        }
        if has_integer_root(a1, a2, a3, r) {
            diag.reducible += 1;
            continue;
        }
        let adisc = disc.unsigned_abs();
        if adisc / square_part(adisc).pow(2) > dmax as u128 {
            diag.discriminant_too_large += 1;
            continue;
        }
        let (num, den, index) = match integral_basis(&poly) {
            Ok(v) => v,
            Err(_) => {
                diag.discriminant_too_large += 1;
                continue;
            }
        };
        let k = index.to_i128().expect("index fits");
        let d_k = (disc / (k * k)) as i64;
        if d_k.unsigned_abs() > dmax {
            diag.discriminant_too_large += 1;
            continue;
        }
        if t2 > hunter_t2_bound(a1, d_k.unsigned_abs() as f64) + T2_SLACK {
            diag.outside_own_box += 1;
            continue;
        }
        diag.candidates += 1;
        let key = splitting_key(&poly, &num, &den, &index, key_primes);
        out.push(Candidate {
            coeffs: [a1, a2, a3],
            d_k,
            num,
            den,
            index,
            key,
        });
    }
    (out, diag)
}

fn disc_i128(a: i64, b: i64, c: i64) -> i128 {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c
}

/// With one real root `r`, the cubic is reducible iff `r` is an integer.
fn has_integer_root(a1: i64, a2: i64, a3: i64, r: f64) -> bool {
    let c = r.round() as i128;
    (c - 1..=c + 1).any(|x| ((x + a1 as i128) * x + a2 as i128) * x + a3 as i128 == 0)
}

/// Largest `s` with `s² | n`.
fn square_part(mut n: u128) -> u128 {
    let mut s = 1u128;
    let mut p = 2u128;
    while p * p * p <= n {
        while n.is_multiple_of(p * p) {
            n /= p * p;
            s *= p;
        }
        if n.is_multiple_of(p) {
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // the cofactor has at most two prime factors above the cube root
    let r = n.sqrt();
    if r > 1 && r * r == n {
        s *= r;
    }
    s
}

fn splitting_key(poly: &CubicPolynomial, num: &IMat, den: &BigInt, index: &BigInt, primes: &[u64]) -> Vec<u8> {
    let mut table = None;
    primes
        .iter()
        .map(|&p| {
            if (index % p).is_zero() {
                let t = table.get_or_insert_with(|| {
                    maximal::structure_constants(num, den, poly).expect("basis from integral_basis")
                });
                let tp = std::array::from_fn(|i| {
                    std::array::from_fn(|j| std::array::from_fn(|k| linalg::mod_u64(&t[i][j][k], p)))
                });
                splitting::type_from_algebra(&tp, p).code()
            } else {
                splitting::type_by_root_count(poly, p).code()
            }
        })
        .collect()
}

/// Integral coordinates of a root of `poly` in `field`, if one exists.
///
/// The candidate is located through the embeddings and then verified exactly.
pub fn poly_has_root_in(poly: &CubicPolynomial, field: &CubicField) -> Option<IVec> {
    if !poly.discriminant().is_negative() {
        return None;
    }
    let (r, z) = poly.roots_f64();
    let m = field.embedding().real_coordinates();
    let inv = inverse3(&m)?;
    for im in [z.im, -z.im] {
        let target = [r, z.re, im];
        let c: [f64; 3] = std::array::from_fn(|j| (0..3).map(|i| target[i] * inv[i][j]).sum());
        if c.iter().any(|x| !x.is_finite() || (x - x.round()).abs() > 0.25) {
            continue;
        }
        let alpha: IVec = c.map(|x| BigInt::from(x.round() as i64));
        let a2 = field.mul(&alpha, &alpha);
        let a3 = field.mul(&a2, &alpha);
        let mut val = a3;
        for k in 0..3 {
            val[k] += &poly.a1 * &a2[k] + &poly.a2 * &alpha[k];
        }
        val[0] += &poly.a3;
        if linalg::is_zero_vec(&val) {
            return Some(alpha);
        }
    }
    None
}

/// Two complex cubic fields are isomorphic iff one's generator has a root in
/// the other (both are then cubic over ℚ).
pub fn is_isomorphic(a: &CubicField, b: &CubicField) -> bool {
    a.d_k() == b.d_k() && poly_has_root_in(a.poly(), b).is_some()
}

fn inverse3(m: &[[f64; 3]; 3]) -> Option<[[f64; 3]; 3]> {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let mut inv = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            inv[i][j] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
        }
    }
    Some(inv)
}
