//! Integral bases of cubic fields.
//!
//! ℤ[θ] is tested with Dedekind's criterion at every prime whose square divides
//! the polynomial discriminant; where the test fails the order is enlarged to
//! the multiplier ring of its p-radical until that ring no longer grows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::CubicPolynomial;
use crate::error::{Error, Result};
use crate::fp_poly::{self, FpPoly};
use crate::linalg::{self, combine, det, hnf, ivec, mod_u64, IMat, IVec};
use crate::primes::squareful_primes;

/// Product of two power-basis vectors modulo the monic cubic.
pub(crate) fn power_mul(a: &IVec, b: &IVec, poly: &CubicPolynomial) -> IVec {
    let mut e: [BigInt; 5] = Default::default();
    for i in 0..3 {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..3 {
            e[i + j] += &a[i] * &b[j];
        }
    }
    // x³ = −a1 x² − a2 x − a3, applied from the top degree down
    for d in (3..5).rev() {
        let c = std::mem::take(&mut e[d]);
        if c.is_zero() {
            continue;
        }
        e[d - 1] -= &c * &poly.a1;
        e[d - 2] -= &c * &poly.a2;
        e[d - 3] -= &c * &poly.a3;
    }
    [e[0].clone(), e[1].clone(), e[2].clone()]
}

pub(crate) fn adjugate(n: &IMat) -> IMat {
    let c = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let s: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let minor = &n[r[0]][s[0]] * &n[r[1]][s[1]] - &n[r[0]][s[1]] * &n[r[1]][s[0]];
        if (i + j).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    std::array::from_fn(|i| std::array::from_fn(|j| c(j, i)))
}

/// Structure constants of the order with basis rows `num / den` (power basis).
pub(crate) fn structure_constants(
    num: &IMat,
    den: &BigInt,
    poly: &CubicPolynomial,
) -> Result<[[IVec; 3]; 3]> {
    let adj = adjugate(num);
    let scale = den * det(num);
    let mut t: [[IVec; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in i..3 {
            let w = power_mul(&num[i], &num[j], poly);
            let mut c = linalg::zero_ivec();
            for k in 0..3 {
                let s: BigInt = (0..3).map(|l| &w[l] * &adj[l][k]).sum();
                let (q, r) = s.div_rem(&scale);
                if !r.is_zero() {
                    return Err(Error::Inconsistent(
                        "basis is not closed under multiplication".into(),
                    ));
                }
                c[k] = q;
            }
            t[i][j] = c.clone();
            t[j][i] = c;
        }
    }
    Ok(t)
}

fn table_mod(t: &[[IVec; 3]; 3], p: u64) -> [[[u64; 3]; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| std::array::from_fn(|k| mod_u64(&t[i][j][k], p))))
}

pub(crate) fn mul_mod(a: &[u64; 3], b: &[u64; 3], t: &[[[u64; 3]; 3]; 3], p: u64) -> [u64; 3] {
    let mut out = [0u64; 3];
    for i in 0..3 {
        if a[i] == 0 {
            continue;
        }
        for j in 0..3 {
            if b[j] == 0 {
                continue;
            }
            let c = linalg::mulmod(a[i], b[j], p);
            for k in 0..3 {
                out[k] = (out[k] + linalg::mulmod(c, t[i][j][k], p)) % p;
            }
        }
    }
    out
}

pub(crate) fn pow_mod(a: &[u64; 3], mut e: u64, one: &[u64; 3], t: &[[[u64; 3]; 3]; 3], p: u64) -> [u64; 3] {
    let mut r = *one;
    let mut b = *a;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(&r, &b, t, p);
        }
        b = mul_mod(&b, &b, t, p);
        e >>= 1;
    }
    r
}

/// Matrix (rows = images of basis vectors) of `x ↦ x^p` on `O/pO`.
pub(crate) fn frobenius_matrix(t: &[[[u64; 3]; 3]; 3], one: &[u64; 3], p: u64) -> Vec<Vec<u64>> {
    (0..3)
        .map(|i| {
            let mut e = [0u64; 3];
            e[i] = 1;
            pow_mod(&e, p, one, t, p).to_vec()
        })
        .collect()
}

pub(crate) fn mat_pow_mod(m: &[Vec<u64>], k: u32, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut r: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    for _ in 0..k {
        r = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(0, |acc, l| (acc + linalg::mulmod(r[i][l], m[l][j], p)) % p))
                    .collect()
            })
            .collect();
    }
    r
}

/// Dedekind's criterion: is ℤ[θ] maximal at `p`?
pub fn dedekind_criterion(poly: &CubicPolynomial, p: u64) -> bool {
    let factors = fp_poly::factor_cubic(poly.coeffs_mod(p), p);
    if factors.iter().all(|(_, e)| *e == 1) {
        return true;
    }
    let mut g: FpPoly = vec![1];
    let mut h: FpPoly = vec![1];
    for (gi, e) in &factors {
        g = fp_poly::mul(&g, gi, p);
        for _ in 1..*e {
            h = fp_poly::mul(&h, gi, p);
        }
    }
    // F = (f − g·h) / p over ℤ, with g and h lifted to coefficients in [0, p)
    let lift = |f: &FpPoly| f.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let (gz, hz) = (lift(&g), lift(&h));
    let mut gh = vec![BigInt::zero(); gz.len() + hz.len() - 1];
    for (i, a) in gz.iter().enumerate() {
        for (j, b) in hz.iter().enumerate() {
            gh[i + j] += a * b;
        }
    }
    let f = [poly.a3.clone(), poly.a2.clone(), poly.a1.clone(), BigInt::one()];
    let bp = BigInt::from(p);
    let big_f: FpPoly = fp_poly::trim(
        (0..4)
            .map(|i| {
                let d = &f[i] - gh.get(i).cloned().unwrap_or_default();
                debug_assert!((&d % &bp).is_zero());
                mod_u64(&(d / &bp), p)
            })
            .collect(),
    );
    let common = fp_poly::gcd(&fp_poly::gcd(&big_f, &g, p), &h, p);
    fp_poly::degree(&common) == Some(0)
}

/// One enlargement step at `p`: the multiplier ring of the p-radical, or
/// `None` when the order is already p-maximal.
fn enlarge_at(num: &IMat, den: &BigInt, poly: &CubicPolynomial, p: u64) -> Result<Option<(IMat, BigInt)>> {
    let t = structure_constants(num, den, poly)?;
    let tp = table_mod(&t, p);
    let one = one_coords(num, den)?.map(|c| mod_u64(&c, p));
    let frob = frobenius_matrix(&tp, &one, p);
    // p^j ≥ 3 kills every nilpotent of O/pO
    let j = if p == 2 { 2 } else { 1 };
    let frob_j = mat_pow_mod(&frob, j, p);
    let radical = linalg::left_kernel_mod(&frob_j, p);
    let bp = BigInt::from(p);
    let mut gens: Vec<IVec> = radical.iter().map(|v| ivec([v[0] as i64, v[1] as i64, v[2] as i64])).collect();
    for i in 0..3 {
        let mut e = linalg::zero_ivec();
        e[i] = bp.clone();
        gens.push(e);
    }
    let ideal = hnf(&gens).map_err(|r| Error::Inconsistent(format!("radical of rank {r}")))?;
    // y ∈ O with y·I ⊆ p·I, read modulo p
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(3);
    for i in 0..3 {
        let mut row = Vec::with_capacity(9);
        for b in &ideal {
            let mut prod = linalg::zero_ivec();
            for (l, bl) in b.iter().enumerate() {
                if bl.is_zero() {
                    continue;
                }
                for k in 0..3 {
                    prod[k] += bl * &t[i][l][k];
                }
            }
            let c = solve_upper(&ideal, &prod).ok_or_else(|| {
                Error::Inconsistent("radical is not an ideal".into())
            })?;
            row.extend(c.iter().map(|x| mod_u64(x, p)));
        }
        rows.push(row);
    }
    let kernel = linalg::left_kernel_mod(&rows, p);
    if kernel.is_empty() {
        return Ok(None);
    }
    let mut gens: Vec<IVec> = kernel.iter().map(|v| ivec([v[0] as i64, v[1] as i64, v[2] as i64])).collect();
    for i in 0..3 {
        let mut e = linalg::zero_ivec();
        e[i] = bp.clone();
        gens.push(e);
    }
    let h = hnf(&gens).map_err(|r| Error::Inconsistent(format!("multiplier of rank {r}")))?;
    let new_num: IMat = std::array::from_fn(|i| combine(&h[i], num));
    Ok(Some((new_num, den * &bp)))
}

/// Integer coordinates `c` with `c · m = v` for an upper-triangular `m`.
pub(crate) fn solve_upper(m: &IMat, v: &IVec) -> Option<IVec> {
    let mut rest = v.clone();
    let mut c = linalg::zero_ivec();
    for i in 0..3 {
        let (q, r) = rest[i].div_rem(&m[i][i]);
        if !r.is_zero() {
            return None;
        }
        for k in i..3 {
            rest[k] -= &q * &m[i][k];
        }
        c[i] = q;
    }
    Some(c)
}

/// Coordinates of 1 in the basis `num / den`.
fn one_coords(num: &IMat, den: &BigInt) -> Result<IVec> {
    let adj = adjugate(num);
    let d = det(num);
    // (den, 0, 0) · adj / det
    let mut c = linalg::zero_ivec();
    for k in 0..3 {
        let s = den * &adj[0][k];
        let (q, r) = s.div_rem(&d);
        if !r.is_zero() {
            return Err(Error::Inconsistent("1 is not in the order".into()));
        }
        c[k] = q;
    }
    Ok(c)
}

/// Lower-triangular Hermite form in the power basis: row i involves only
/// `1, …, θ^i`, entries left of the diagonal reduced modulo that column's
/// diagonal entry. Returns the normalised `(num, den)`.
pub(crate) fn power_basis_hnf(num: &IMat, den: &BigInt) -> Result<(IMat, BigInt)> {
    let rev: Vec<IVec> = num
        .iter()
        .map(|r| [r[2].clone(), r[1].clone(), r[0].clone()])
        .collect();
    let h = hnf(&rev).map_err(|r| Error::RankDeficient { rank: r })?;
    let mut out: IMat = std::array::from_fn(|i| {
        let r = &h[2 - i];
        [r[2].clone(), r[1].clone(), r[0].clone()]
    });
    let g = out
        .iter()
        .flat_map(|r| r.iter())
        .fold(den.clone(), |g, x| g.gcd(x));
    let den = den / &g;
    for r in out.iter_mut() {
        for x in r.iter_mut() {
            *x = &*x / &g;
        }
    }
    Ok((out, den))
}

/// Integral basis of the maximal order of `ℚ[x]/(poly)`.
///
/// Returns `(num, den, index)` with basis rows `num[i] / den` in the power basis
/// and `index = [O_K : ℤ[θ]]`.
pub fn integral_basis(poly: &CubicPolynomial) -> Result<(IMat, BigInt, BigInt)> {
    let disc = poly.discriminant();
    if disc.is_zero() {
        return Err(Error::InvalidInput(format!("{poly} has zero discriminant")));
    }
    let mut num = linalg::identity();
    let mut den = BigInt::one();
    for p in squareful_primes(&disc)? {
        if dedekind_criterion(poly, p) {
            continue;
        }
        while let Some((n, d)) = enlarge_at(&num, &den, poly, p)? {
            let (n, d) = power_basis_hnf(&n, &d)?;
            num = n;
            den = d;
        }
    }
    let (num, den) = power_basis_hnf(&num, &den)?;
    let vol = det(&num);
    let (index, r) = (den.pow(3)).div_rem(&vol);
    if !r.is_zero() || !index.is_positive() {
        return Err(Error::Inconsistent("integral basis has non-integral index".into()));
    }
    Ok((num, den, index))
}

/// Radical-multiplier test: is the order with basis `num / den` maximal at `p`?
pub fn is_p_maximal(num: &IMat, den: &BigInt, poly: &CubicPolynomial, p: u64) -> Result<bool> {
    Ok(enlarge_at(num, den, poly, p)?.is_none())
}
