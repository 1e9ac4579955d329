//! Prime decomposition in a complex cubic field and the weight `λ_S`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cubic_fields::{CubicField, CubicPolynomial};
use crate::error::{Error, Result};
use crate::fp_poly;
use crate::linalg::left_kernel_mod;
use crate::primes::{is_prime, primes_up_to};

/// Multiset of `(e, f)` pairs of the primes above `p`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplittingType {
    pairs: Vec<(u8, u8)>,
}

impl SplittingType {
    pub fn new(mut pairs: Vec<(u8, u8)>) -> Result<Self> {
        pairs.sort_unstable();
        let t = SplittingType { pairs };
        if t.code_checked().is_none() {
            return Err(Error::InvalidInput(format!("{t} is not a cubic splitting type")));
        }
        Ok(t)
    }

    fn from_sorted(pairs: &[(u8, u8)]) -> Self {
        SplittingType { pairs: pairs.to_vec() }
    }

    pub fn split() -> Self {
        Self::from_sorted(&[(1, 1), (1, 1), (1, 1)])
    }

    pub fn partially_split() -> Self {
        Self::from_sorted(&[(1, 1), (1, 2)])
    }

    pub fn inert() -> Self {
        Self::from_sorted(&[(1, 3)])
    }

    pub fn partially_ramified() -> Self {
        Self::from_sorted(&[(1, 1), (2, 1)])
    }

    pub fn totally_ramified() -> Self {
        Self::from_sorted(&[(3, 1)])
    }

    pub fn pairs(&self) -> &[(u8, u8)] {
        &self.pairs
    }

    pub fn degree_sum(&self) -> u32 {
        self.pairs.iter().map(|&(e, f)| e as u32 * f as u32).sum()
    }

    pub fn is_ramified(&self) -> bool {
        self.pairs.iter().any(|&(e, _)| e > 1)
    }

    pub fn is_non_decomposed(&self) -> bool {
        self.pairs.len() == 1
    }

    fn code_checked(&self) -> Option<u8> {
        match self.pairs.as_slice() {
            [(1, 1), (1, 1), (1, 1)] => Some(0),
            [(1, 1), (1, 2)] => Some(1),
            [(1, 3)] => Some(2),
            [(1, 1), (2, 1)] => Some(3),
            [(3, 1)] => Some(4),
            _ => None,
        }
    }

    /// Small integer tag, distinct for the five possible types.
    pub fn code(&self) -> u8 {
        self.code_checked().expect("validated on construction")
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(e, g)| format!("({e},{g})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for SplittingType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[u8; 2]> = self.pairs.iter().map(|&(e, f)| [e, f]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SplittingType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<[u8; 2]> = Vec::deserialize(d)?;
        SplittingType::new(v.into_iter().map(|[e, f]| (e, f)).collect()).map_err(serde::de::Error::custom)
    }
}

/// Sorted set of at least two distinct primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn new(mut primes: Vec<u64>) -> Result<Self> {
        primes.sort_unstable();
        primes.dedup();
        if let Some(&q) = primes.iter().find(|&&q| !is_prime(q)) {
            return Err(Error::InvalidInput(format!("{q} is not prime")));
        }
        if primes.len() < 2 {
            return Err(Error::InvalidInput("S needs at least two primes".into()));
        }
        Ok(PrimeSet { primes })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Whether `n` is coprime to every prime of the set.
    pub fn coprime_to(&self, n: &BigInt) -> bool {
        self.primes.iter().all(|&p| !(n % p).is_zero())
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        PrimeSet::new(v)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(s: PrimeSet) -> Self {
        s.primes
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Decomposition of `p` in the field.
///
/// Off the index, read from the factorisation of the defining polynomial mod `p`;
/// at index divisors, from the structure of `O_K / pO_K`.
pub fn splitting_type(field: &CubicField, p: u64) -> Result<SplittingType> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if (field.index() % p).is_zero() {
        return Ok(type_from_algebra(&field.table_mod(p), p));
    }
    let factors = fp_poly::factor_cubic(field.poly().coeffs_mod(p), p);
    let pairs = factors.iter().map(|(g, e)| (*e as u8, (g.len() - 1) as u8)).collect();
    SplittingType::new(pairs).map_err(|e| Error::Inconsistent(e.to_string()))
}

/// Type of `p ∤ index` from the number of distinct roots mod `p` and whether
/// the polynomial is squarefree mod `p`.
pub fn type_by_root_count(poly: &CubicPolynomial, p: u64) -> SplittingType {
    let disc_zero = (poly.discriminant() % p).is_zero();
    let distinct = if p < fp_poly::ROOT_SCAN_LIMIT {
        (0..p).filter(|&x| poly.eval_mod(x, p) == 0).count()
    } else {
        let c = poly.coeffs_mod(p);
        fp_poly::roots(&vec![c[2], c[1], c[0], 1], p).len()
    };
    match (disc_zero, distinct) {
        (false, 3) => SplittingType::split(),
        (false, 1) => SplittingType::partially_split(),
        (false, _) => SplittingType::inert(),
        (true, 2) => SplittingType::partially_ramified(),
        (true, _) => SplittingType::totally_ramified(),
    }
}

/// Type of `p` read from the algebra `O_K / pO_K` given by its structure
/// constants mod `p` (with `ω₀ = 1`).
///
/// The radical is the kernel of a Frobenius power; the number of residue
/// fields is the dimension of the Frobenius-fixed subalgebra.
pub fn type_from_algebra(t: &[[[u64; 3]; 3]; 3], p: u64) -> SplittingType {
    let one = [1, 0, 0];
    let frob = crate::cubic_fields::frobenius_matrix(t, &one, p);
    let j = if p == 2 { 2 } else { 1 };
    let frob_j = crate::cubic_fields::mat_pow_mod(&frob, j, p);
    let rad = left_kernel_mod(&frob_j, p).len();
    let mut fixed = frob.clone();
    for (i, row) in fixed.iter_mut().enumerate() {
        row[i] = (row[i] + p - 1) % p;
    }
    let g = left_kernel_mod(&fixed, p).len();
    match (3 - rad, g) {
        (3, 3) => SplittingType::split(),
        (3, 2) => SplittingType::partially_split(),
        (3, _) => SplittingType::inert(),
        (2, _) => SplittingType::partially_ramified(),
        _ => SplittingType::totally_ramified(),
    }
}

pub fn non_decomposed(field: &CubicField, p: u64) -> Result<bool> {
    Ok(splitting_type(field, p)?.is_non_decomposed())
}

/// `λ_S = ∏_{p ∈ S} f_p`, i.e. `3^{#inert primes of S}`.
pub fn lambda(field: &CubicField, s: &PrimeSet) -> Result<u64> {
    let mut out = 1u64;
    for &p in s.primes() {
        let t = splitting_type(field, p)?;
        if !t.is_non_decomposed() {
            return Err(Error::Decomposed { prime: p });
        }
        out *= t.pairs()[0].1 as u64;
    }
    Ok(out)
}

/// Fraction of primes `p ≤ n` that are non-decomposed.
pub fn density_diagnostic(field: &CubicField, n: u64) -> Result<BigRational> {
    if n < 100 {
        return Err(Error::Domain(format!("density diagnostic needs N ≥ 100, got {n}")));
    }
    let ps = primes_up_to(n);
    let mut hits = 0u64;
    for &p in &ps {
        if non_decomposed(field, p)? {
            hits += 1;
        }
    }
    Ok(BigRational::new(hits.into(), (ps.len() as u64).into()))
}

/// Splitting types at the given primes, tagged for the dedup key.
pub fn splitting_codes(field: &CubicField, primes: &[u64]) -> Result<Vec<u8>> {
    primes.iter().map(|&p| splitting_type(field, p).map(|t| t.code())).collect()
}
