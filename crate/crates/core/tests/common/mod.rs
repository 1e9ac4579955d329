//! Slow reference implementations shared by the integration tests. None of
//! these call the library routine they are used to check.
#![allow(dead_code)]

use std::collections::BTreeMap;

use cubic_census::cubic_fields::{qvec_from_int, CubicField, CubicPolynomial, QVec};
use cubic_census::geometry::embed_q;
use cubic_census::order_arithmetic::{Lattice, Order};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn field(a1: i64, a2: i64, a3: i64) -> CubicField {
    CubicField::from_poly(CubicPolynomial::from_i64(a1, a2, a3)).expect("valid complex cubic")
}

/// Discriminant of `x³ + ax² + bx + c` by the closed form.
pub fn disc(a: i64, b: i64, c: i64) -> i128 {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c
}

pub fn has_integer_root(a: i64, b: i64, c: i64) -> bool {
    if c == 0 {
        return true;
    }
    let f = |x: i128| x * x * x + a as i128 * x * x + b as i128 * x + c as i128;
    let n = c.unsigned_abs() as i128;
    (1..=n).filter(|d| n % d == 0).any(|d| f(d) == 0 || f(-d) == 0)
}

fn factor(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p = 2u128;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn matmul(x: &[[i128; 3]; 3], y: &[[i128; 3]; 3]) -> [[i128; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| x[i][k] * y[k][j]).sum()))
}

/// `[O_K : ℤ[α]]` for the root `α` of `x³ + ax² + bx + c`, by counting the
/// residues `v mod p^k` for which `v/p^k` has an integral characteristic
/// polynomial, one prime at a time.
pub fn ring_index(a: i64, b: i64, c: i64) -> u64 {
    let d = disc(a, b, c);
    let comp: [[i128; 3]; 3] = [[0, 1, 0], [0, 0, 1], [-(c as i128), -(b as i128), -(a as i128)]];
    let comp2 = matmul(&comp, &comp);
    let mut index = 1u64;
    for (p, e) in factor(d.unsigned_abs()) {
        let k = e / 2;
        if k == 0 {
            continue;
        }
        let q = p.pow(k) as i128;
        let mut count = 0u64;
        for x in 0..q {
            for y in 0..q {
                for z in 0..q {
                    let m: [[i128; 3]; 3] =
                        std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as i128 * x + y * comp[i][j] + z * comp2[i][j]));
                    let tr = m[0][0] + m[1][1] + m[2][2];
                    if tr % q != 0 {
                        continue;
                    }
                    let e2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
                        + m[1][1] * m[2][2]
                        - m[1][2] * m[2][1];
                    if e2 % (q * q) != 0 || det3(&m) % (q * q * q) != 0 {
                        continue;
                    }
                    count += 1;
                }
            }
        }
        index *= count;
    }
    index
}

pub fn roots_mod(a: i64, b: i64, c: i64, p: u64) -> usize {
    let p = p as i128;
    (0..p)
        .filter(|&x| (x * x % p * x + a as i128 * x % p * x + b as i128 * x + c as i128).rem_euclid(p) == 0)
        .count()
}

/// One complex cubic field found by the sweep.
#[derive(Clone, Debug)]
pub struct SweepField {
    pub poly: (i64, i64, i64),
    pub d_k: i64,
}

/// Root counts modulo every prime below 600 not dividing either discriminant.
pub fn same_splitting(x: (i64, i64, i64), y: (i64, i64, i64)) -> bool {
    let dx = disc(x.0, x.1, x.2);
    let dy = disc(y.0, y.1, y.2);
    (2u64..600)
        .filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0))
        .filter(|&p| dx % p as i128 != 0 && dy % p as i128 != 0)
        .all(|p| roots_mod(x.0, x.1, x.2, p) == roots_mod(y.0, y.1, y.2, p))
}

/// Complex cubic fields with `|d_K| ≤ dmax`, from every monic cubic with
/// `|a1| ≤ 1` and `T2(θ) ≤ 1/3 + √dmax` (half again the sharp constant).
/// Fields are told apart by discriminant and splitting; non-isomorphic cubic
/// fields never share a Dedekind zeta function.
pub fn sweep_fields(dmax: u64) -> Vec<SweepField> {
    let t = 1.0 / 3.0 + (dmax as f64).sqrt();
    let b2 = t.floor() as i64;
    let b3 = (t / 3.0).powf(1.5).floor() as i64;
    let mut found: Vec<SweepField> = Vec::new();
    for a in -1..=1i64 {
        for b in -b2..=b2 {
            for c in -b3..=b3 {
                let d = disc(a, b, c);
                if d >= 0 || has_integer_root(a, b, c) {
                    continue;
                }
                // |d_K| ≤ dmax needs an index of at least √(|d|/dmax)
                let need = ((d.unsigned_abs() as f64 / dmax as f64).sqrt() - 1e-9).ceil().max(1.0) as u64;
                let max_square = factor(d.unsigned_abs())
                    .iter()
                    .map(|&(p, e)| (p as u64).pow(e / 2))
                    .product::<u64>();
                if max_square < need {
                    continue;
                }
                let k = ring_index(a, b, c) as i128;
                let d_k = d / (k * k);
                assert_eq!(d_k * k * k, d);
                if d_k.unsigned_abs() > dmax as u128 {
                    continue;
                }
                let d_k = d_k as i64;
                if !found.iter().any(|f| f.d_k == d_k && same_splitting(f.poly, (a, b, c))) {
                    found.push(SweepField { poly: (a, b, c), d_k });
                }
            }
        }
    }
    found.sort_by_key(|f| (f.d_k.abs(), f.poly));
    found
}

/// Embedding rows `(σ_r, Re σ_c, Im σ_c)` of the integral basis.
fn basis_embedding(field: &CubicField) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| {
        let mut e = [0i64; 3];
        e[i] = 1;
        embed_q(field, &qvec_from_int(&e.map(BigInt::from)))
    })
}

/// Least positive `|log|σ_r(u)||` over units `u` with integral-basis
/// coordinates in `[-bound, bound]³`, together with every unit attaining it.
pub fn brute_force_regulator(field: &CubicField, bound: i64) -> (f64, Vec<[i64; 3]>) {
    let e = basis_embedding(field);
    let mut best = f64::INFINITY;
    let mut at: Vec<[i64; 3]> = Vec::new();
    for x in -bound..=bound {
        for y in -bound..=bound {
            let r0 = x as f64 * e[0][0] + y as f64 * e[1][0];
            let c0 = (x as f64 * e[0][1] + y as f64 * e[1][1], x as f64 * e[0][2] + y as f64 * e[1][2]);
            for z in -bound..=bound {
                let r = r0 + z as f64 * e[2][0];
                let (cr, ci) = (c0.0 + z as f64 * e[2][1], c0.1 + z as f64 * e[2][2]);
                let n = r.abs() * (cr * cr + ci * ci);
                if (n - 1.0).abs() > 1e-6 {
                    continue;
                }
                let v = [x, y, z];
                if field.norm_i64(&v).map(|n| n.abs()) != Some(1) {
                    continue;
                }
                let l = r.abs().ln().abs();
                if l < 1e-9 {
                    continue;
                }
                if l < best - 1e-9 {
                    best = l;
                    at.clear();
                }
                if (l - best).abs() <= 1e-9 {
                    at.push(v);
                }
            }
        }
    }
    (best, at)
}

/// `(8/(9π))·√|d_K|`.
pub fn minkowski(field: &CubicField) -> f64 {
    8.0 / (9.0 * std::f64::consts::PI) * field.d_k().abs().to_f64().unwrap().sqrt()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn in_hnf(s: &[[i64; 3]; 3], v: [i64; 3]) -> bool {
    let mut v = v;
    for i in 0..3 {
        if s[i][i] == 0 || v[i] % s[i][i] != 0 {
            return false;
        }
        let t = v[i] / s[i][i];
        for j in i..3 {
            v[j] -= t * s[i][j];
        }
    }
    true
}

/// Every lattice `M ⊇ O` with `[M : O] ≤ max_index` and `O·M ⊆ M`.
///
/// Superlattices of index `n` are duals of sublattices of index `n`; `M` is
/// stable under `T` exactly when its dual is stable under `Tᵀ`.
pub fn stable_superlattices(order: &Order, max_index: u64) -> Vec<Lattice> {
    let table = order.mult_table();
    let t: Vec<[[i64; 3]; 3]> = (0..3)
        .map(|k| std::array::from_fn(|i| std::array::from_fn(|j| table[i][k][j].to_i64().unwrap())))
        .collect();
    let basis = order.lattice().basis();
    let mut out = Vec::new();
    for n in 1..=max_index as i64 {
        for a in (1..=n).filter(|a| n % a == 0) {
            for d in (1..=n / a).filter(|d| (n / a) % d == 0) {
                let g = n / a / d;
                for b in 0..d {
                    for c in 0..g {
                        for e in 0..g {
                            let s = [[a, b, c], [0, d, e], [0, 0, g]];
                            let stable = t.iter().all(|tk| {
                                s.iter().all(|row| {
                                    // row · Tᵀ
                                    let v: [i64; 3] = std::array::from_fn(|j| (0..3).map(|i| row[i] * tk[j][i]).sum());
                                    in_hnf(&s, v)
                                })
                            });
                            if !stable {
                                continue;
                            }
                            let sq: Vec<QVec> = s.iter().map(|r| r.map(q)).collect();
                            let dual = Lattice::from_generators(&sq).unwrap().dual();
                            let gens: Vec<QVec> = dual
                                .basis()
                                .iter()
                                .map(|y| {
                                    std::array::from_fn(|k| {
                                        (0..3).fold(BigRational::zero(), |acc, i| acc + &y[i] * &basis[i][k])
                                    })
                                })
                                .collect();
                            out.push(Lattice::from_generators(&gens).unwrap());
                        }
                    }
                }
            }
        }
    }
    out
}

fn inverse3(m: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / det
        })
    })
}

/// Is there `α` with `α·m = n`? Requires `1 ∈ m`, so `α ∈ n` with
/// `|N(α)| = covol(n)/covol(m)`; `α` is normalised by the units of `O`
/// (regulator `big_r`) into `|σ_r| ≤ ν^{1/3}e^{R/2}`, `|σ_c| ≤ ν^{1/3}e^{R/4}`.
pub fn scales_onto(field: &CubicField, big_r: f64, m: &Lattice, n: &Lattice) -> bool {
    let nu = n.covolume() / m.covolume();
    let nu_f = nu.to_f64().unwrap();
    let rmax = nu_f.cbrt() * (big_r / 2.0).exp() * (1.0 + 1e-9);
    let cmax = nu_f.cbrt() * (big_r / 4.0).exp() * (1.0 + 1e-9);
    let basis = n.basis();
    let emb: [[f64; 3]; 3] = std::array::from_fn(|i| embed_q(field, &basis[i]));
    let inv = inverse3(&emb);
    let lim: [i64; 3] = std::array::from_fn(|j| {
        (inv[0][j].abs() * rmax + (inv[1][j].abs() + inv[2][j].abs()) * cmax).floor() as i64 + 1
    });
    for c0 in -lim[0]..=lim[0] {
        for c1 in -lim[1]..=lim[1] {
            for c2 in -lim[2]..=lim[2] {
                let v: [f64; 3] = std::array::from_fn(|k| c0 as f64 * emb[0][k] + c1 as f64 * emb[1][k] + c2 as f64 * emb[2][k]);
                if v[0].abs() > rmax || v[1].hypot(v[2]) > cmax {
                    continue;
                }
                let nv = v[0].abs() * (v[1] * v[1] + v[2] * v[2]);
                if (nv - nu_f).abs() > 1e-6 * nu_f {
                    continue;
                }
                let alpha: QVec = std::array::from_fn(|k| &basis[0][k] * q(c0) + &basis[1][k] * q(c1) + &basis[2][k] * q(c2));
                if field.norm(&alpha).abs() != nu {
                    continue;
                }
                if m.scale(field, &alpha).unwrap() == *n {
                    return true;
                }
            }
        }
    }
    false
}

/// Module classes of `O` by brute force: every class has a representative
/// `M ⊇ O` of index at most `f·(Minkowski bound)`, and two such lattices are
/// compared by an exhaustive search for a scaling element.
pub fn slow_module_classes(field: &CubicField, order: &Order, big_r: f64) -> Vec<Lattice> {
    let f = order.f().to_f64().unwrap();
    let max_index = (f * minkowski(field) + 1e-9).floor() as u64;
    let mut reps: Vec<Lattice> = Vec::new();
    for m in stable_superlattices(order, max_index) {
        if !reps.iter().any(|r| scales_onto(field, big_r, &m, r)) {
            reps.push(m);
        }
    }
    reps
}

/// `li(x) = ∫₂^x dt/log t` by Ramanujan's series for the integral from 0.
pub fn li_series(x: f64) -> f64 {
    const LI0_2: f64 = 1.045_163_780_117_493;
    const GAMMA: f64 = 0.577_215_664_901_532_9;
    let l = x.ln();
    let mut sum = 0.0;
    let mut term = 1.0; // (ln x)^n / (n! 2^{n-1}) with sign
    let mut inner = 0.0;
    for n in 1..400 {
        term *= l / n as f64 / if n == 1 { 1.0 } else { 2.0 };
        if (n - 1) % 2 == 0 {
            inner += 1.0 / (n as f64);
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * term * inner;
        if term.abs() * inner < 1e-18 * sum.abs() && n > 2 * l as usize {
            break;
        }
    }
    GAMMA + l.ln() + x.sqrt() * sum - LI0_2
}

/// Counts by key.
pub fn tally<K: Ord, I: IntoIterator<Item = K>>(it: I) -> BTreeMap<K, usize> {
    let mut m = BTreeMap::new();
    for k in it {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}
