//! Exact 3×3 linear algebra over ℤ, ℚ and 𝔽_p.
//!
//! Everything here is small and dense: the lattices in this crate are rank 3,
//! so the algorithms favour directness over asymptotics.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type IVec = [BigInt; 3];
pub type IMat = [[BigInt; 3]; 3];
pub type QMat = [[BigRational; 3]; 3];

pub fn ivec(v: [i64; 3]) -> IVec {
    v.map(BigInt::from)
}

pub fn zero_ivec() -> IVec {
    [BigInt::zero(), BigInt::zero(), BigInt::zero()]
}

pub fn identity() -> IMat {
    [ivec([1, 0, 0]), ivec([0, 1, 0]), ivec([0, 0, 1])]
}

pub fn imat(m: [[i64; 3]; 3]) -> IMat {
    m.map(ivec)
}

pub fn is_zero_vec(v: &IVec) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_sub_scaled(a: &IVec, q: &BigInt, b: &IVec) -> IVec {
    [&a[0] - q * &b[0], &a[1] - q * &b[1], &a[2] - q * &b[2]]
}

pub fn vec_scale(a: &IVec, s: &BigInt) -> IVec {
    [&a[0] * s, &a[1] * s, &a[2] * s]
}

pub fn vec_add(a: &IVec, b: &IVec) -> IVec {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

/// gcd of the entries (non-negative).
pub fn content(v: &IVec) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Integer combination `Σ c_i · rows[i]`.
pub fn combine(c: &IVec, rows: &IMat) -> IVec {
    let mut out = zero_ivec();
    for (ci, row) in c.iter().zip(rows.iter()) {
        if ci.is_zero() {
            continue;
        }
        for k in 0..3 {
            out[k] += ci * &row[k];
        }
    }
    out
}

/// Upper-triangular row Hermite normal form of the ℤ-span of `rows`.
///
/// Pivots are positive and every entry above a pivot is reduced into
/// `[0, pivot)`. On rank deficiency the detected rank is returned as the error.
pub fn hnf(rows: &[IVec]) -> Result<IMat, usize> {
    let mut work: Vec<IVec> = rows.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    let mut pivots: Vec<IVec> = Vec::with_capacity(3);
    for col in 0..3 {
        loop {
            let piv = work
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .min_by(|(_, a), (_, b)| a[col].abs().cmp(&b[col].abs()))
                .map(|(i, _)| i);
            let Some(pi) = piv else {
                break;
            };
            let prow = work[pi].clone();
            let mut cleared = true;
            for (i, row) in work.iter_mut().enumerate() {
                if i == pi || row[col].is_zero() {
                    continue;
                }
                let q = row[col].div_floor(&prow[col]);
                *row = vec_sub_scaled(row, &q, &prow);
                if !row[col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                let mut p = work.swap_remove(pi);
                if p[col].is_negative() {
                    p = p.map(|x| -x);
                }
                pivots.push(p);
                break;
            }
        }
        work.retain(|r| !is_zero_vec(r));
        if pivots.len() != col + 1 {
            return Err(rank_rational(rows));
        }
    }
    let mut m: IMat = [pivots[0].clone(), pivots[1].clone(), pivots[2].clone()];
    for i in 0..3 {
        for j in (i + 1)..3 {
            let q = m[i][j].div_floor(&m[j][j]);
            if !q.is_zero() {
                let rj = m[j].clone();
                m[i] = vec_sub_scaled(&m[i], &q, &rj);
            }
        }
    }
    Ok(m)
}

fn rank_rational(rows: &[IVec]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut rank = 0;
    for col in 0..3 {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = &m[i][col] / &m[rank][col];
                for k in 0..3 {
                    let t = &f * &m[rank][k];
                    m[i][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn det(m: &IMat) -> BigInt {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

pub fn qdet(m: &QMat) -> BigRational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
        - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

pub fn to_qmat(m: &IMat) -> QMat {
    m.clone().map(|r| r.map(BigRational::from_integer))
}

pub fn qmat_mul(a: &QMat, b: &QMat) -> QMat {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j])
        })
    })
}

pub fn qmat_transpose(a: &QMat) -> QMat {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Inverse of a rational 3×3 matrix, `None` when singular.
pub fn qmat_inverse(m: &QMat) -> Option<QMat> {
    let d = qdet(m);
    if d.is_zero() {
        return None;
    }
    let c = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let s: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let minor = &m[r[0]][s[0]] * &m[r[1]][s[1]] - &m[r[0]][s[1]] * &m[r[1]][s[0]];
        if (i + j).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    // inverse = adj / det, adj[i][j] = cofactor[j][i]
    Some(std::array::from_fn(|i| std::array::from_fn(|j| c(j, i) / &d)))
}

/// Row vector times matrix over ℚ.
pub fn qvec_mul(v: &[BigRational; 3], m: &QMat) -> [BigRational; 3] {
    std::array::from_fn(|j| (0..3).fold(BigRational::zero(), |acc, k| acc + &v[k] * &m[k][j]))
}

/// Writes the rows of a rational matrix over a common positive denominator.
pub fn clear_denominators(rows: &[[BigRational; 3]]) -> (Vec<IVec>, BigInt) {
    let den = rows
        .iter()
        .flat_map(|r| r.iter())
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints = rows
        .iter()
        .map(|r| r.clone().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()))
        .collect();
    (ints, den)
}

pub fn mod_u64(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Basis of the right kernel `{x : A x = 0}` over 𝔽_p, `p` prime.
pub fn right_kernel_mod(a: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = a.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = invmod(m[row][col], p);
        for k in 0..ncols {
            m[row][k] = mulmod(m[row][k], inv, p);
        }
        for i in 0..m.len() {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for k in 0..ncols {
                    let t = mulmod(f, m[row][k], p);
                    m[i][k] = (m[i][k] + p - t) % p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - m[r][fc]) % p;
            }
            v
        })
        .collect()
}

/// Basis of the left kernel `{v : v A = 0}` of an `n × m` matrix over 𝔽_p.
pub fn left_kernel_mod(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let m = a[0].len();
    let t: Vec<Vec<u64>> = (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
    right_kernel_mod(&t, n, p)
}

pub fn rank_mod(a: &[Vec<u64>], ncols: usize, p: u64) -> usize {
    ncols - right_kernel_mod(a, ncols, p).len()
}

/// Small integer matrices for the enumeration loops, where `BigInt` is too slow.
pub type SMat = [[i128; 3]; 3];

/// Membership of `v` in the lattice of an upper-triangular Hermite matrix.
pub fn in_hnf(mat: &SMat, v: [i128; 3]) -> bool {
    let mut rest = v;
    for i in 0..3 {
        if rest[i].rem_euclid(mat[i][i]) != 0 {
            return false;
        }
        let q = rest[i].div_euclid(mat[i][i]);
        for k in i..3 {
            rest[k] -= q * mat[i][k];
        }
    }
    true
}

/// Hermite form of the span of `rows` together with `m·ℤ³`, `m > 0`.
///
/// Entries are kept reduced modulo `m`, which is legitimate because `m·e_c` is
/// still available when column `c` is processed.
pub fn hnf_mod(rows: &[[i128; 3]], m: i128) -> SMat {
    let mut work: Vec<[i128; 3]> = rows
        .iter()
        .map(|r| r.map(|x| x.rem_euclid(m)))
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut out = [[0i128; 3]; 3];
    for col in 0..3 {
        let mut e = [0i128; 3];
        e[col] = m;
        work.push(e);
        loop {
            let (pi, _) = work
                .iter()
                .enumerate()
                .filter(|(_, r)| r[col] != 0)
                .min_by_key(|(_, r)| r[col].abs())
                .expect("m·e_col has a nonzero entry");
            let piv = work[pi];
            let mut others = 0;
            for (i, r) in work.iter_mut().enumerate() {
                if i == pi || r[col] == 0 {
                    continue;
                }
                let q = r[col].div_euclid(piv[col]);
                for k in col..3 {
                    r[k] -= q * piv[k];
                }
                for k in col + 1..3 {
                    r[k] = r[k].rem_euclid(m);
                }
                if r[col] != 0 {
                    others += 1;
                }
            }
            if others == 0 {
                let mut p = work.swap_remove(pi);
                if p[col] < 0 {
                    p = p.map(|x| -x);
                }
                for k in col + 1..3 {
                    p[k] = p[k].rem_euclid(m);
                }
                out[col] = p;
                work.retain(|r| r.iter().any(|&x| x != 0));
                break;
            }
        }
    }
    for j in 1..3 {
        for i in 0..j {
            let q = out[i][j].div_euclid(out[j][j]);
            if q != 0 {
                let pj = out[j];
                for k in j..3 {
                    out[i][k] -= q * pj[k];
                }
            }
        }
    }
    out
}

/// `v · T`.
pub fn smat_apply(v: &[i128; 3], t: &SMat) -> [i128; 3] {
    std::array::from_fn(|j| (0..3).map(|i| v[i] * t[i][j]).sum())
}

pub fn to_smat(m: &IMat) -> Option<SMat> {
    let mut out = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[i][j].to_i128()?;
        }
    }
    Some(out)
}

pub fn from_smat(m: &SMat) -> IMat {
    m.map(|r| r.map(BigInt::from))
}
