//! Dense polynomials over 𝔽_p (coefficients low to high) and the factorisation
//! of monic cubics.

use crate::linalg::{invmod, mulmod};

/// Below this characteristic the roots of a cubic are found by scanning 𝔽_p.
pub const ROOT_SCAN_LIMIT: u64 = 1_000_000;

pub type FpPoly = Vec<u64>;

pub fn trim(mut f: FpPoly) -> FpPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &FpPoly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn mul(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

pub fn sub(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &FpPoly, b: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = invmod(b[db], p);
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = mulmod(r[i + db], inv, p);
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - mulmod(c, bj, p)) % p;
            }
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub fn monic(f: FpPoly, p: u64) -> FpPoly {
    match f.last() {
        None => f,
        Some(&lead) => {
            let inv = invmod(lead, p);
            f.into_iter().map(|c| mulmod(c, inv, p)).collect()
        }
    }
}

/// Monic gcd (zero polynomial when both inputs vanish).
pub fn gcd(a: &FpPoly, b: &FpPoly, p: u64) -> FpPoly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(a, p)
}

/// `base^e mod modulus`.
pub fn powmod(base: &FpPoly, mut e: u64, modulus: &FpPoly, p: u64) -> FpPoly {
    let mut result: FpPoly = divrem(&vec![1], modulus, p).1;
    let mut b = divrem(base, modulus, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = divrem(&mul(&result, &b, p), modulus, p).1;
        }
        b = divrem(&mul(&b, &b, p), modulus, p).1;
        e >>= 1;
    }
    result
}

pub fn eval(f: &FpPoly, x: u64, p: u64) -> u64 {
    f.iter().rev().fold(0, |acc, &c| (mulmod(acc, x, p) + c) % p)
}

/// Distinct roots in 𝔽_p of a nonzero polynomial of degree ≤ 3, ascending.
pub fn roots(f: &FpPoly, p: u64) -> Vec<u64> {
    let f = trim(f.clone());
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = if p < ROOT_SCAN_LIMIT {
        (0..p).filter(|&x| eval(&f, x, p) == 0).collect()
    } else {
        // product of the distinct linear factors, then equal-degree splitting
        let xp = powmod(&vec![0, 1], p, &f, p);
        let g = gcd(&f, &sub(&xp, &vec![0, 1], p), p);
        let mut acc = Vec::new();
        split_linear(&g, p, &mut acc);
        acc
    };
    out.sort_unstable();
    out.dedup();
    out
}

fn split_linear(g: &FpPoly, p: u64, out: &mut Vec<u64>) {
    match degree(g) {
        None | Some(0) => {}
        Some(1) => out.push((p - g[0] % p) % p),
        Some(d) => {
            for a in 0u64.. {
                let h = powmod(&vec![a % p, 1], (p - 1) / 2, g, p);
                let h = gcd(g, &sub(&h, &vec![1], p), p);
                let dh = degree(&h).unwrap_or(0);
                if dh > 0 && dh < d {
                    let (q, _) = divrem(g, &h, p);
                    split_linear(&h, p, out);
                    split_linear(&monic(q, p), p, out);
                    return;
                }
            }
        }
    }
}

/// Irreducible factors with multiplicities of the monic cubic
/// `x³ + c[0]x² + c[1]x + c[2]` over 𝔽_p, sorted by (degree, coefficients).
pub fn factor_cubic(c: [u64; 3], p: u64) -> Vec<(FpPoly, u32)> {
    let f: FpPoly = trim(vec![c[2] % p, c[1] % p, c[0] % p, 1]);
    let mut rest = f.clone();
    let mut out = Vec::new();
    for r in roots(&f, p) {
        let lin = vec![(p - r) % p, 1];
        let mut e = 0;
        loop {
            let (q, rem) = divrem(&rest, &lin, p);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            e += 1;
        }
        out.push((lin, e));
    }
    // a leftover of degree 2 or 3 has no roots, hence is irreducible
    if degree(&rest).unwrap_or(0) >= 2 {
        out.push((rest, 1));
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_examples() {
        // x³ − x − 1 mod 23 = (x − 3)(x − 10)²
        let f = factor_cubic([0, 22, 22], 23);
        assert_eq!(f.len(), 2);
        let exps: Vec<u32> = f.iter().map(|x| x.1).collect();
        assert!(exps.contains(&2) && exps.contains(&1));
        // x³ + x + 1 irreducible mod 2
        assert_eq!(factor_cubic([0, 1, 1], 2), vec![(vec![1, 1, 0, 1], 1)]);
        // x³ − 2 ≡ (x + 1)³ mod 3
        assert_eq!(factor_cubic([0, 0, 1], 3), vec![(vec![1, 1], 3)]);
    }

    #[test]
    fn large_prime_roots_match_structure() {
        let p = 1_000_003u64;
        // (x − 5)(x − 7)(x − 11)
        let f = vec![p - 385, 167, p - 23, 1];
        assert_eq!(roots(&f, p), vec![5, 7, 11]);
        // (x − 2)(x² + 1): -1 is a non-residue mod p ≡ 3 (mod 4)
        assert_eq!(p % 4, 3);
        let g = mul(&vec![p - 2, 1], &vec![1, 0, 1], p);
        assert_eq!(roots(&g, p), vec![2]);
    }

    #[test]
    fn multiplicities_sum_to_three() {
        for p in [2u64, 3, 5, 7, 31] {
            for a in 0..p.min(6) {
                for b in 0..p.min(6) {
                    for c in 0..p.min(6) {
                        let deg: usize = factor_cubic([a, b, c], p)
                            .iter()
                            .map(|(g, e)| (g.len() - 1) * *e as usize)
                            .sum();
                        assert_eq!(deg, 3);
                    }
                }
            }
        }
    }
}
