//! Complex cubic fields: defining polynomials, maximal orders and enumeration
//! by discriminant.
//!
//! Elements are written in coordinates relative to the integral basis
//! `ω₀ = 1, ω₁, ω₂` of the maximal order. Integral elements therefore have
//! integer coordinates.

mod enumerate;
mod maximal;
mod poly;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use enumerate::{
    canonical_key, enumerate_fields, enumerate_fields_with_diagnostics, hunter_t2_bound, is_isomorphic,
    poly_has_root_in, EnumerationDiagnostics, FieldKey,
};
pub use maximal::{dedekind_criterion, integral_basis, is_p_maximal};
pub(crate) use maximal::{frobenius_matrix, mat_pow_mod, solve_upper};
pub use poly::{CubicPolynomial, Signature};

use crate::error::{Error, Result};
use crate::linalg::{self, IMat, IVec, QMat};
use crate::serial::{unzmat, zmat, Z};

/// A vector with rational coordinates in the integral basis.
pub type QVec = [BigRational; 3];

pub fn qvec_from_int(v: &IVec) -> QVec {
    v.clone().map(BigRational::from_integer)
}

/// Complex cubic field with its maximal order.
#[derive(Clone, Debug)]
pub struct CubicField {
    poly: CubicPolynomial,
    basis_num: IMat,
    basis_den: BigInt,
    d_k: BigInt,
    index: BigInt,
    table: [[IVec; 3]; 3],
    table_i64: Option<[[[i64; 3]; 3]; 3]>,
    to_power: QMat,
    from_power: QMat,
    embedding: Embedding,
}

/// Real and complex embeddings of the integral basis elements.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub real: [f64; 3],
    pub complex: [Complex64; 3],
}

impl Embedding {
    pub fn eval(&self, c: &[f64; 3]) -> (f64, Complex64) {
        let r = c[0] * self.real[0] + c[1] * self.real[1] + c[2] * self.real[2];
        let z = self.complex[0] * c[0] + self.complex[1] * c[1] + self.complex[2] * c[2];
        (r, z)
    }

    /// Rows `(σ_r, Re σ_c, Im σ_c)` of the basis elements.
    pub fn real_coordinates(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| [self.real[i], self.complex[i].re, self.complex[i].im])
    }
}

/// JSON-Lines field record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub poly: [Z; 3],
    #[serde(rename = "d_K")]
    pub d_k: Z,
    pub k: Z,
    pub basis_num: [[Z; 3]; 3],
    pub basis_den: Z,
}

impl CubicField {
    /// Maximal order of `ℚ[x]/(poly)`.
    pub fn from_poly(poly: CubicPolynomial) -> Result<Self> {
        if !poly.is_irreducible() {
            return Err(Error::InvalidInput(format!("{poly} is reducible over ℚ")));
        }
        let disc = poly.discriminant();
        if !disc.is_negative() {
            return Err(Error::UnsupportedSignature(format!(
                "{poly} has discriminant {disc} ≥ 0 (totally real)"
            )));
        }
        let (num, den, index) = integral_basis(&poly)?;
        Self::assemble(poly, num, den, index)
    }

    fn assemble(poly: CubicPolynomial, num: IMat, den: BigInt, index: BigInt) -> Result<Self> {
        let disc = poly.discriminant();
        let k2 = &index * &index;
        if !(&disc % &k2).is_zero() {
            return Err(Error::Inconsistent("index² does not divide disc".into()));
        }
        let d_k = &disc / &k2;
        let table = maximal::structure_constants(&num, &den, &poly)?;
        let table_i64 = table_to_i64(&table);
        let den_q = BigRational::from_integer(den.clone());
        let to_power: QMat = num.clone().map(|r| r.map(|x| BigRational::from_integer(x) / &den_q));
        let from_power = linalg::qmat_inverse(&to_power).ok_or(Error::RankDeficient { rank: 2 })?;
        let (r, z) = poly.roots_f64();
        let eval = |row: &IVec| {
            let c: Vec<f64> = row.iter().map(|x| x.to_f64().unwrap()).collect();
            let d = den.to_f64().unwrap();
            let re = (c[0] + c[1] * r + c[2] * r * r) / d;
            let ze = (Complex64::new(c[0], 0.0) + z * c[1] + z * z * c[2]) / d;
            (re, ze)
        };
        let e: Vec<(f64, Complex64)> = num.iter().map(eval).collect();
        let embedding = Embedding {
            real: [e[0].0, e[1].0, e[2].0],
            complex: [e[0].1, e[1].1, e[2].1],
        };
        Ok(CubicField {
            poly,
            basis_num: num,
            basis_den: den,
            d_k,
            index,
            table,
            table_i64,
            to_power,
            from_power,
            embedding,
        })
    }

    pub fn poly(&self) -> &CubicPolynomial {
        &self.poly
    }

    /// Field discriminant (negative).
    pub fn d_k(&self) -> &BigInt {
        &self.d_k
    }

    /// `[O_K : ℤ[θ]]`.
    pub fn index(&self) -> &BigInt {
        &self.index
    }

    pub fn basis_num(&self) -> &IMat {
        &self.basis_num
    }

    pub fn basis_den(&self) -> &BigInt {
        &self.basis_den
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn table(&self) -> &[[IVec; 3]; 3] {
        &self.table
    }

    pub fn table_i64(&self) -> Option<&[[[i64; 3]; 3]; 3]> {
        self.table_i64.as_ref()
    }

    pub fn one() -> IVec {
        linalg::ivec([1, 0, 0])
    }

    pub fn mul(&self, a: &IVec, b: &IVec) -> IVec {
        let mut out = linalg::zero_ivec();
        for i in 0..3 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for k in 0..3 {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &c * &self.table[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn mul_q(&self, a: &QVec, b: &QVec) -> QVec {
        let mut out: QVec = Default::default();
        for i in 0..3 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                for k in 0..3 {
                    if !self.table[i][j][k].is_zero() {
                        out[k] += &c * BigRational::from_integer(self.table[i][j][k].clone());
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &IVec, mut e: u64) -> IVec {
        let mut r = Self::one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// Matrix of multiplication by `x`: row i holds the coordinates of `ω_i · x`.
    pub fn mult_matrix(&self, x: &QVec) -> QMat {
        std::array::from_fn(|i| {
            let mut e: QVec = Default::default();
            e[i] = BigRational::one();
            self.mul_q(&e, x)
        })
    }

    /// Field norm, the determinant of the regular representation.
    pub fn norm(&self, x: &QVec) -> BigRational {
        linalg::qdet(&self.mult_matrix(x))
    }

    pub fn norm_int(&self, x: &IVec) -> BigInt {
        let m: IMat = std::array::from_fn(|i| {
            let mut e = linalg::zero_ivec();
            e[i] = BigInt::one();
            self.mul(&e, x)
        });
        linalg::det(&m)
    }

    /// Norm of an integral element with small coordinates, `None` on overflow.
    pub fn norm_i64(&self, x: &[i64; 3]) -> Option<i128> {
        let t = self.table_i64.as_ref()?;
        let mut m = [[0i128; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for j in 0..3 {
                let xj = x[j] as i128;
                if xj == 0 {
                    continue;
                }
                for k in 0..3 {
                    row[k] = row[k].checked_add(xj.checked_mul(t[i][j][k] as i128)?)?;
                }
            }
        }
        let minor = |a: i128, b: i128, c: i128, d: i128| a.checked_mul(d)?.checked_sub(b.checked_mul(c)?);
        let c0 = m[0][0].checked_mul(minor(m[1][1], m[1][2], m[2][1], m[2][2])?)?;
        let c1 = m[0][1].checked_mul(minor(m[1][0], m[1][2], m[2][0], m[2][2])?)?;
        let c2 = m[0][2].checked_mul(minor(m[1][0], m[1][1], m[2][0], m[2][1])?)?;
        c0.checked_sub(c1)?.checked_add(c2)
    }

    pub fn inverse(&self, x: &QVec) -> Option<QVec> {
        let inv = linalg::qmat_inverse(&self.mult_matrix(x))?;
        // 1 = e₀, so x⁻¹ = e₀ · M_x⁻¹
        Some(inv[0].clone())
    }

    pub fn to_power_basis(&self, x: &QVec) -> QVec {
        linalg::qvec_mul(x, &self.to_power)
    }

    pub fn from_power_basis(&self, x: &QVec) -> QVec {
        linalg::qvec_mul(x, &self.from_power)
    }

    /// Coordinates of the generator θ.
    pub fn theta(&self) -> QVec {
        let t = [BigRational::zero(), BigRational::one(), BigRational::zero()];
        self.from_power_basis(&t)
    }

    pub fn is_integral(x: &QVec) -> bool {
        x.iter().all(|c| c.is_integer())
    }

    pub fn embed(&self, x: &IVec) -> (f64, Complex64) {
        let c = x.clone().map(|v| v.to_f64().unwrap_or(f64::NAN));
        self.embedding.eval(&c)
    }

    /// Structure constants reduced modulo `p`.
    pub fn table_mod(&self, p: u64) -> [[[u64; 3]; 3]; 3] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| std::array::from_fn(|k| linalg::mod_u64(&self.table[i][j][k], p)))
        })
    }

    /// Trace form value `T₂(θ) = |σ_r θ|² + 2|σ_c θ|²` of the generator.
    pub fn generator_t2(&self) -> f64 {
        let (r, z) = self.poly.roots_f64();
        r * r + 2.0 * z.norm_sqr()
    }

    pub fn record(&self) -> FieldRecord {
        FieldRecord {
            poly: [Z(self.poly.a1.clone()), Z(self.poly.a2.clone()), Z(self.poly.a3.clone())],
            d_k: Z(self.d_k.clone()),
            k: Z(self.index.clone()),
            basis_num: zmat(&self.basis_num),
            basis_den: Z(self.basis_den.clone()),
        }
    }

    /// Rebuilds a field from its record, re-verifying `disc = k²·d_K`, the
    /// Hermite shape of the basis and maximality at every squareful prime.
    pub fn from_record(rec: &FieldRecord) -> Result<Self> {
        let poly = CubicPolynomial::new(rec.poly[0].0.clone(), rec.poly[1].0.clone(), rec.poly[2].0.clone());
        if !poly.is_irreducible() || !poly.discriminant().is_negative() {
            return Err(Error::Malformed(format!("{poly} is not an irreducible complex cubic")));
        }
        let num = unzmat(&rec.basis_num);
        let den = rec.basis_den.0.clone();
        if !den.is_positive() {
            return Err(Error::Malformed("basis denominator must be positive".into()));
        }
        let (canon, cden) = maximal::power_basis_hnf(&num, &den).map_err(|e| Error::Malformed(e.to_string()))?;
        if canon != num || cden != den {
            return Err(Error::Malformed("basis is not in normalised Hermite form".into()));
        }
        let vol = linalg::det(&num);
        if vol.is_zero() || !(den.pow(3) % &vol).is_zero() || den.pow(3) / &vol != rec.k.0 {
            return Err(Error::Malformed("index does not match the basis".into()));
        }
        if poly.discriminant() != &rec.k.0 * &rec.k.0 * &rec.d_k.0 {
            return Err(Error::Malformed("disc ≠ k²·d_K".into()));
        }
        let field = Self::assemble(poly, num, den, rec.k.0.clone()).map_err(|e| Error::Malformed(e.to_string()))?;
        for p in crate::primes::squareful_primes(&field.poly.discriminant())? {
            if !is_p_maximal(&field.basis_num, &field.basis_den, &field.poly, p)? {
                return Err(Error::Malformed(format!("basis is not maximal at {p}")));
            }
        }
        Ok(field)
    }
}

fn table_to_i64(t: &[[IVec; 3]; 3]) -> Option<[[[i64; 3]; 3]; 3]> {
    let mut out = [[[0i64; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let v = t[i][j][k].to_i64()?;
                if v.abs() > (1 << 40) {
                    return None;
                }
                out[i][j][k] = v;
            }
        }
    }
    Some(out)
}

/// Closed-form discriminant.
pub fn discriminant(poly: &CubicPolynomial) -> BigInt {
    poly.discriminant()
}

pub fn is_irreducible(poly: &CubicPolynomial) -> bool {
    poly.is_irreducible()
}

pub fn signature(poly: &CubicPolynomial) -> Result<Signature> {
    poly.signature()
}

/// Maximal order of the field defined by `poly`.
pub fn maximal_order(poly: &CubicPolynomial) -> Result<CubicField> {
    CubicField::from_poly(poly.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::imat;

    fn field(a1: i64, a2: i64, a3: i64) -> CubicField {
        CubicField::from_poly(CubicPolynomial::from_i64(a1, a2, a3)).unwrap()
    }

    #[test]
    fn maximal_order_examples() {
        let f = field(0, -1, -1);
        assert_eq!(f.d_k(), &BigInt::from(-23));
        assert_eq!(f.index(), &BigInt::one());
        assert_eq!(f.basis_num(), &linalg::identity());

        let g = field(-1, -2, -8);
        assert_eq!(g.index(), &BigInt::from(2));
        assert_eq!(g.d_k(), &BigInt::from(-503));
        assert_eq!(g.basis_num(), &imat([[2, 0, 0], [0, 2, 0], [0, 1, 1]]));
        assert_eq!(g.basis_den(), &BigInt::from(2));

        let h = field(0, 0, -2);
        assert_eq!(h.d_k(), &BigInt::from(-108));
        assert_eq!(h.index(), &BigInt::one());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            CubicField::from_poly(CubicPolynomial::from_i64(0, 0, -1)),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            CubicField::from_poly(CubicPolynomial::from_i64(0, -3, -1)),
            Err(Error::UnsupportedSignature(_))
        ));
    }

    #[test]
    fn norm_of_generator() {
        let f = field(0, -1, -1);
        assert_eq!(f.norm(&f.theta()), BigRational::one());
        let g = field(0, 0, -2);
        assert_eq!(g.norm(&g.theta()), BigRational::from_integer(2.into()));
        assert_eq!(g.norm(&qvec_from_int(&CubicField::one())), BigRational::one());
    }

    #[test]
    fn record_roundtrip_and_validation() {
        let g = field(-1, -2, -8);
        let rec = g.record();
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(
            json,
            r#"{"poly":[-1,-2,-8],"d_K":-503,"k":2,"basis_num":[[2,0,0],[0,2,0],[0,1,1]],"basis_den":2}"#
        );
        let back = CubicField::from_record(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.d_k(), g.d_k());
        let mut bad = rec.clone();
        bad.k = Z(BigInt::one());
        assert!(CubicField::from_record(&bad).is_err());
        // ℤ[θ] claimed as the maximal order
        let mut bad = rec;
        bad.basis_num = zmat(&linalg::identity());
        bad.basis_den = Z(BigInt::one());
        bad.k = Z(BigInt::one());
        bad.d_k = Z(BigInt::from(-2012));
        assert!(CubicField::from_record(&bad).is_err());
    }

    #[test]
    fn embeddings_match_roots() {
        let g = field(-1, -2, -8);
        let (r, z) = g.poly().roots_f64();
        let th = g.theta().map(|c| c.to_f64().unwrap());
        let (er, ez) = g.embedding().eval(&th);
        assert!((er - r).abs() < 1e-12);
        assert!((ez - z).norm() < 1e-12);
    }
}
