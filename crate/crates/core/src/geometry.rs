//! Short-vector machinery for rank-3 lattices embedded in `ℝ × ℂ ≅ ℝ³`.
//!
//! Floating point is used only to *find* candidates; every decision taken on a
//! candidate is re-verified exactly by the caller.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::cubic_fields::{CubicField, QVec};

pub type RVec = [f64; 3];
pub type RMat = [[f64; 3]; 3];

fn dot(a: &RVec, b: &RVec) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// LLL reduction (δ = 0.99) of the rows of `b`, applying the same unimodular
/// row operations to `u`.
pub fn lll(b: &mut RMat, u: &mut [[i64; 3]; 3]) {
    let delta = 0.99;
    let mut k = 1;
    let mut guard = 0u32;
    while k < 3 {
        guard += 1;
        if guard > 100_000 {
            break;
        }
        let (_, mu) = gram_schmidt(b);
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                let qi = q as i64;
                for c in 0..3 {
                    b[k][c] -= q * b[j][c];
                    u[k][c] -= qi * u[j][c];
                }
            }
        }
        let (bstar, mu) = gram_schmidt(b);
        let lhs = dot(&bstar[k], &bstar[k]);
        let rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * dot(&bstar[k - 1], &bstar[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
}

fn gram_schmidt(b: &RMat) -> (RMat, RMat) {
    let mut bs = *b;
    let mut mu = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..i {
            let d = dot(&bs[j], &bs[j]);
            mu[i][j] = if d > 0.0 { dot(&b[i], &bs[j]) / d } else { 0.0 };
            for c in 0..3 {
                bs[i][c] -= mu[i][j] * bs[j][c];
            }
        }
    }
    (bs, mu)
}

/// Calls `visit(coefficients, vector)` for every nonzero integer combination of
/// the rows of `b` with squared length at most `bound` (plus a tiny slack).
///
/// Coefficients refer to the rows of `b` as given. Returns the number of points
/// visited; enumeration stops early once `visit` returns `false`.
pub fn enumerate_short(b: &RMat, bound: f64, mut visit: impl FnMut([i64; 3], RVec) -> bool) -> u64 {
    let mut red = *b;
    let mut u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    lll(&mut red, &mut u);
    let g: RMat = std::array::from_fn(|i| std::array::from_fn(|j| dot(&red[i], &red[j])));
    // Cholesky g = rᵀr, r upper triangular
    let mut r = [[0.0f64; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let s: f64 = (0..i).map(|k| r[k][i] * r[k][j]).sum();
            if i == j {
                r[i][i] = (g[i][i] - s).max(0.0).sqrt();
            } else {
                r[i][j] = if r[i][i] > 0.0 { (g[i][j] - s) / r[i][i] } else { 0.0 };
            }
        }
    }
    if r.iter().enumerate().any(|(i, row)| !(row[i] > 0.0)) {
        return 0;
    }
    let q: RMat = std::array::from_fn(|i| std::array::from_fn(|j| if i == j { r[i][i] * r[i][i] } else { r[i][j] / r[i][i] }));
    let c = bound * (1.0 + 1e-9) + 1e-12;
    let mut count = 0u64;
    let span = |t: f64, qii: f64| (t.max(0.0) / qii).sqrt();
    let h2 = span(c, q[2][2]);
    let x2lo = (-h2).ceil() as i64;
    let x2hi = h2.floor() as i64;
    for x2 in x2lo..=x2hi {
        let t2 = c - q[2][2] * (x2 as f64).powi(2);
        if t2 < 0.0 {
            continue;
        }
        let c1 = -q[1][2] * x2 as f64;
        let h1 = span(t2, q[1][1]);
        for x1 in (c1 - h1).ceil() as i64..=(c1 + h1).floor() as i64 {
            let y1 = x1 as f64 + q[1][2] * x2 as f64;
            let t1 = t2 - q[1][1] * y1 * y1;
            if t1 < 0.0 {
                continue;
            }
            let c0 = -(q[0][1] * x1 as f64 + q[0][2] * x2 as f64);
            let h0 = span(t1, q[0][0]);
            for x0 in (c0 - h0).ceil() as i64..=(c0 + h0).floor() as i64 {
                if x0 == 0 && x1 == 0 && x2 == 0 {
                    continue;
                }
                let xr = [x0, x1, x2];
                let coeffs: [i64; 3] = std::array::from_fn(|j| (0..3).map(|i| xr[i] * u[i][j]).sum());
                let v: RVec = std::array::from_fn(|j| (0..3).map(|i| xr[i] as f64 * red[i][j]).sum());
                count += 1;
                if !visit(coeffs, v) {
                    return count;
                }
            }
        }
    }
    count
}

/// Embedding `(σ_r, Re σ_c, Im σ_c)` of an element with rational coordinates.
pub fn embed_q(field: &CubicField, x: &QVec) -> RVec {
    let c: RVec = std::array::from_fn(|i| x[i].to_f64().unwrap_or(f64::NAN));
    let (r, z) = field.embedding().eval(&c);
    [r, z.re, z.im]
}

/// Every nonzero `α = Σ c_i basis_i` with `|σ_r α| ≤ rmax` and `|σ_c α| ≤ cmax`
/// (up to floating slack), passed to `visit` as `(c, embedding)`.
pub fn search_cylinder(
    field: &CubicField,
    basis: &[QVec; 3],
    rmax: f64,
    cmax: f64,
    mut visit: impl FnMut([i64; 3], RVec) -> bool,
) -> u64 {
    let emb: RMat = std::array::from_fn(|i| embed_q(field, &basis[i]));
    let scaled: RMat = std::array::from_fn(|i| [emb[i][0] / rmax, emb[i][1] / cmax, emb[i][2] / cmax]);
    let tol = 1e-9;
    enumerate_short(&scaled, 2.0, |c, v| {
        let r = (v[0] * rmax).abs();
        let z = ((v[1] * cmax).powi(2) + (v[2] * cmax).powi(2)).sqrt();
        if r <= rmax * (1.0 + tol) && z <= cmax * (1.0 + tol) {
            visit(c, [v[0] * rmax, v[1] * cmax, v[2] * cmax])
        } else {
            true
        }
    })
}

/// `Σ c_i · basis_i`.
pub fn combine_q(c: &[i64; 3], basis: &[QVec; 3]) -> QVec {
    std::array::from_fn(|k| {
        (0..3).fold(BigRational::from_integer(0.into()), |acc, i| {
            acc + &basis[i][k] * BigRational::from_integer(c[i].into())
        })
    })
}
