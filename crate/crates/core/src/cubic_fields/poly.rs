use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serial::bigint_compact;

/// Monic integral cubic `x³ + a1·x² + a2·x + a3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubicPolynomial {
    #[serde(with = "bigint_compact")]
    pub a1: BigInt,
    #[serde(with = "bigint_compact")]
    pub a2: BigInt,
    #[serde(with = "bigint_compact")]
    pub a3: BigInt,
}

/// Number of real embeddings and of complex-conjugate pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub real: u8,
    pub complex_pairs: u8,
}

impl CubicPolynomial {
    pub fn new(a1: BigInt, a2: BigInt, a3: BigInt) -> Self {
        CubicPolynomial { a1, a2, a3 }
    }

    pub fn from_i64(a1: i64, a2: i64, a3: i64) -> Self {
        Self::new(a1.into(), a2.into(), a3.into())
    }

    pub fn coeffs(&self) -> [&BigInt; 3] {
        [&self.a1, &self.a2, &self.a3]
    }

    pub fn coeffs_i64(&self) -> Option<[i64; 3]> {
        Some([self.a1.to_i64()?, self.a2.to_i64()?, self.a3.to_i64()?])
    }

    /// `18·a1·a2·a3 − 4·a1³·a3 + a1²·a2² − 4·a2³ − 27·a3²`.
    pub fn discriminant(&self) -> BigInt {
        let (a, b, c) = (&self.a1, &self.a2, &self.a3);
        BigInt::from(18) * a * b * c - BigInt::from(4) * a * a * a * c + a * a * b * b
            - BigInt::from(4) * b * b * b
            - BigInt::from(27) * c * c
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        ((x + &self.a1) * x + &self.a2) * x + &self.a3
    }

    /// `2^{3k} · p(n / 2^k)`, exact.
    fn eval_dyadic(&self, n: &BigInt, k: u32) -> BigInt {
        let s = BigInt::one() << k;
        ((n + &self.a1 * &s) * n + &self.a2 * &s * &s) * n + &self.a3 * &s * &s * &s
    }

    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let [c1, c2, c3] = self.coeffs_mod(p);
        let m = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
        let mut r = (x % p + c1) % p;
        r = (m(r, x) + c2) % p;
        (m(r, x) + c3) % p
    }

    pub fn coeffs_mod(&self, p: u64) -> [u64; 3] {
        self.coeffs().map(|c| crate::linalg::mod_u64(c, p))
    }

    /// Cauchy bound: every complex root has modulus below this.
    pub fn root_bound(&self) -> BigInt {
        BigInt::one() + self.coeffs().iter().map(|c| c.abs()).max().unwrap()
    }

    /// Integer roots in increasing order (with multiplicity collapsed).
    pub fn integer_roots(&self) -> Vec<BigInt> {
        let mut roots = Vec::new();
        let bound = self.root_bound();
        let three = BigInt::from(3);
        let dprime = &self.a1 * &self.a1 - &three * &self.a2;
        let check = |x: BigInt, roots: &mut Vec<BigInt>| {
            if self.eval(&x).is_zero() && !roots.contains(&x) {
                roots.push(x);
            }
        };
        if !dprime.is_positive() {
            if let Some(r) = self.monotone_root(-&bound, bound.clone(), true) {
                check(r, &mut roots);
            }
        } else {
            // p' vanishes at (−a1 ± √D')/3; with s = ⌊√D'⌋ the critical points lie in
            // [(−a1−s−1)/3, (−a1−s)/3] and [(−a1+s)/3, (−a1+s+1)/3].
            let s = dprime.sqrt();
            let neg_a1 = -&self.a1;
            let ceil3 = |n: &BigInt| -((-n).div_floor(&three));
            let end_a: BigInt = (&neg_a1 - &s - BigInt::one()).div_floor(&three);
            let start_b = ceil3(&(&neg_a1 - &s));
            let end_b: BigInt = (&neg_a1 + &s).div_floor(&three);
            let start_c = ceil3(&(&neg_a1 + &s + BigInt::one()));
            let segments = [
                (-&bound, end_a.clone(), true),
                (start_b.clone(), end_b.clone(), false),
                (start_c.clone(), bound.clone(), true),
            ];
            for (lo, hi, inc) in segments {
                if lo <= hi {
                    if let Some(r) = self.monotone_root(lo, hi, inc) {
                        check(r, &mut roots);
                    }
                }
            }
            // the at most two integers in the gaps around the critical points
            let mut x: BigInt = end_a + 1;
            while x < start_b {
                check(x.clone(), &mut roots);
                x += 1;
            }
            let mut x: BigInt = end_b + 1;
            while x < start_c {
                check(x.clone(), &mut roots);
                x += 1;
            }
        }
        roots.sort();
        roots
    }

    fn monotone_root(&self, mut lo: BigInt, mut hi: BigInt, increasing: bool) -> Option<BigInt> {
        let sgn = |x: &BigInt| {
            let v = self.eval(x);
            if increasing {
                v
            } else {
                -v
            }
        };
        if sgn(&lo).is_positive() || sgn(&hi).is_negative() {
            return None;
        }
        // invariant: sgn(lo) ≤ 0 ≤ sgn(hi)
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
            if sgn(&mid).is_positive() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        [lo, hi].into_iter().find(|x| self.eval(x).is_zero())
    }

    /// Irreducible over ℚ iff there is no integer root (rational root test).
    pub fn is_irreducible(&self) -> bool {
        if self.a3.is_zero() {
            return false;
        }
        self.integer_roots().is_empty()
    }

    pub fn signature(&self) -> Result<Signature> {
        let d = self.discriminant();
        if d.is_zero() {
            return Err(Error::InvalidInput(format!("{self} has zero discriminant")));
        }
        Ok(if d.is_negative() {
            Signature {
                real: 1,
                complex_pairs: 1,
            }
        } else {
            Signature {
                real: 3,
                complex_pairs: 0,
            }
        })
    }

    /// Bracket `[lo, hi] / 2^bits` of width `2^-bits` around the unique real root.
    ///
    /// Requires a negative discriminant.
    pub fn real_root_bracket(&self, bits: u32) -> (BigInt, BigInt) {
        debug_assert!(self.discriminant().is_negative());
        let b = self.root_bound();
        // p is negative left of the root and positive right of it
        let (mut lo, mut hi) = (-&b, b);
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
            if self.eval(&mid).is_positive() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        for k in 1..=bits {
            lo <<= 1;
            hi <<= 1;
            let mid = &lo + 1;
            if self.eval_dyadic(&mid, k).is_positive() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// Real root and the complex root with positive imaginary part, in `f64`.
    ///
    /// Requires a negative discriminant.
    pub fn roots_f64(&self) -> (f64, Complex64) {
        let (lo, hi) = self.real_root_bracket(60);
        let scale = 2f64.powi(60);
        let r = (lo.to_f64().unwrap() / scale + hi.to_f64().unwrap() / scale) / 2.0;
        let a1 = self.a1.to_f64().unwrap();
        let a2 = self.a2.to_f64().unwrap();
        let a3 = self.a3.to_f64().unwrap();
        let b = a1 + r;
        let c = a2 + r * b;
        let disc = (4.0 * c - b * b).max(0.0);
        let mut z = Complex64::new(-b / 2.0, disc.sqrt() / 2.0);
        for _ in 0..4 {
            let pz = ((z + a1) * z + a2) * z + a3;
            let dz = (z * 3.0 + 2.0 * a1) * z + a2;
            if dz.norm() == 0.0 {
                break;
            }
            z -= pz / dz;
        }
        if z.im < 0.0 {
            z = z.conj();
        }
        (r, z)
    }

    /// Polynomial of `θ + t` (translation of the root).
    pub fn translate(&self, t: &BigInt) -> Self {
        // (x − t)³ + a1 (x − t)² + a2 (x − t) + a3 has root θ + t
        let (a1, a2, a3) = (&self.a1, &self.a2, &self.a3);
        let n1 = a1 - BigInt::from(3) * t;
        let n2 = BigInt::from(3) * t * t - BigInt::from(2) * a1 * t + a2;
        let n3 = -(t * t * t) + a1 * t * t - a2 * t + a3;
        Self::new(n1, n2, n3)
    }
}

impl fmt::Display for CubicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^3")?;
        for (c, mono) in self.coeffs().into_iter().zip(["x^2", "x", ""]) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            if mag.is_one() && !mono.is_empty() {
                write!(f, " {sign} {mono}")?;
            } else {
                write!(f, " {sign} {mag}{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(a1: i64, a2: i64, a3: i64) -> CubicPolynomial {
        CubicPolynomial::from_i64(a1, a2, a3)
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p(0, -1, -1).discriminant(), BigInt::from(-23));
        assert_eq!(p(0, 0, -2).discriminant(), BigInt::from(-108));
        assert_eq!(p(0, 1, 0).discriminant(), BigInt::from(-4));
        assert_eq!(p(-1, -2, -8).discriminant(), BigInt::from(-2012));
    }

    #[test]
    fn irreducibility_examples() {
        assert!(!p(0, 0, -1).is_irreducible());
        assert!(p(0, -1, -1).is_irreducible());
        assert!(!p(0, 1, 0).is_irreducible());
        assert!(p(0, 0, -2).is_irreducible());
        // (x − 1000)(x² + x + 1)
        assert!(!p(-999, -999, -1000).is_irreducible());
    }

    #[test]
    fn signature_examples() {
        let complex = Signature {
            real: 1,
            complex_pairs: 1,
        };
        assert_eq!(p(0, -1, -1).signature().unwrap(), complex);
        assert_eq!(
            p(0, -3, -1).signature().unwrap(),
            Signature {
                real: 3,
                complex_pairs: 0
            }
        );
        assert_eq!(p(0, 0, -2).signature().unwrap(), complex);
        assert!(p(0, 0, 0).signature().is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(-1, -2, -8).to_string(), "x^3 - x^2 - 2x - 8");
        assert_eq!(p(0, 0, -2).to_string(), "x^3 - 2");
    }

    #[test]
    fn roots_of_plastic_polynomial() {
        let (r, z) = p(0, -1, -1).roots_f64();
        assert!((r - 1.324_717_957_244_746).abs() < 1e-14);
        let pz = (z * z - 1.0) * z - 1.0;
        assert!(pz.norm() < 1e-13);
        assert!(z.im > 0.0);
    }

    #[test]
    fn bracket_is_tight() {
        let (lo, hi) = p(0, 0, -2).real_root_bracket(100);
        assert_eq!(&hi - &lo, BigInt::one());
        let cube = |n: &BigInt| n * n * n;
        let two = BigInt::from(2) << 300;
        assert!(cube(&lo) < two && cube(&hi) > two);
    }

    proptest! {
        #[test]
        fn integer_roots_match_divisor_scan(a1 in -30i64..30, a2 in -300i64..300, a3 in -400i64..400) {
            let poly = p(a1, a2, a3);
            let mut brute: Vec<BigInt> = Vec::new();
            if a3 == 0 {
                brute.push(BigInt::zero());
            }
            for d in 1..=a3.abs() {
                if a3 % d == 0 {
                    for r in [d, -d] {
                        if poly.eval(&BigInt::from(r)).is_zero() {
                            brute.push(BigInt::from(r));
                        }
                    }
                }
            }
            // roots dividing a3 = 0 case: any integer root r satisfies r | 0; scan the Cauchy range
            if a3 == 0 {
                let b = 1 + a1.abs().max(a2.abs());
                for r in -b..=b {
                    if r != 0 && poly.eval(&BigInt::from(r)).is_zero() {
                        brute.push(BigInt::from(r));
                    }
                }
            }
            brute.sort();
            brute.dedup();
            prop_assert_eq!(poly.integer_roots(), brute);
        }

        #[test]
        fn translation_preserves_discriminant(a1 in -5i64..5, a2 in -50i64..50, a3 in -50i64..50, t in -7i64..7) {
            let poly = p(a1, a2, a3);
            prop_assert_eq!(poly.translate(&BigInt::from(t)).discriminant(), poly.discriminant());
        }
    }
}
