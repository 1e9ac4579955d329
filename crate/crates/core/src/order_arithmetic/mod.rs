//! Lattices, orders and modules inside a fixed cubic field.
//!
//! All coordinates are relative to the integral basis of the maximal order, so
//! orders and integral ideals have denominator 1. Arithmetic is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::cubic_fields::{qvec_from_int, CubicField, QVec};
use crate::error::{Error, Result};
use crate::linalg::{self, IMat, IVec, QMat};
use crate::serial::Z;

/// Full-rank lattice `mat / den` in upper-triangular Hermite form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lattice {
    mat: IMat,
    den: BigInt,
}

/// `{mat: 9 integers row-major, den}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeRecord {
    pub mat: Vec<Z>,
    pub den: Z,
}

impl Lattice {
    /// Lattice spanned by rational generators; rank below 3 is an error.
    pub fn from_generators(gens: &[QVec]) -> Result<Self> {
        let (rows, den) = linalg::clear_denominators(gens);
        Self::from_integer_rows(&rows, &den)
    }

    /// Lattice spanned by `rows / den`.
    pub fn from_integer_rows(rows: &[IVec], den: &BigInt) -> Result<Self> {
        if !den.is_positive() {
            return Err(Error::InvalidInput("denominator must be positive".into()));
        }
        let mat = linalg::hnf(rows).map_err(|rank| Error::RankDeficient { rank })?;
        Ok(Self::normalised(mat, den.clone()))
    }

    fn normalised(mut mat: IMat, mut den: BigInt) -> Self {
        let g = mat.iter().flat_map(|r| r.iter()).fold(den.clone(), |g, x| g.gcd(x));
        if !g.is_one() {
            den /= &g;
            for x in mat.iter_mut().flat_map(|r| r.iter_mut()) {
                *x = &*x / &g;
            }
        }
        Lattice { mat, den }
    }

    /// The maximal order `O_K` itself.
    pub fn maximal() -> Self {
        Lattice {
            mat: linalg::identity(),
            den: BigInt::one(),
        }
    }

    pub fn mat(&self) -> &IMat {
        &self.mat
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Basis rows as rational vectors.
    pub fn basis(&self) -> [QVec; 3] {
        let d = BigRational::from_integer(self.den.clone());
        std::array::from_fn(|i| self.mat[i].clone().map(|x| BigRational::from_integer(x) / &d))
    }

    fn basis_qmat(&self) -> QMat {
        self.basis()
    }

    /// `[O_K : L]` as a rational: `det(mat) / den³`.
    pub fn covolume(&self) -> BigRational {
        BigRational::new(linalg::det(&self.mat), self.den.pow(3))
    }

    pub fn contains(&self, v: &QVec) -> bool {
        // v·den = c·mat with c integral
        let d = BigRational::from_integer(self.den.clone());
        let w: Vec<BigRational> = v.iter().map(|x| x * &d).collect();
        if w.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let w: IVec = std::array::from_fn(|i| w[i].to_integer());
        crate::cubic_fields::solve_upper(&self.mat, &w).is_some()
    }

    pub fn contains_lattice(&self, inner: &Lattice) -> bool {
        inner.basis().iter().all(|b| self.contains(b))
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        let rows: Vec<IVec> = self.mat.iter().map(|r| linalg::vec_scale(r, n)).collect();
        Self::from_integer_rows(&rows, &self.den).expect("nonzero scaling keeps rank")
    }

    /// `λ · L`; `λ` must be nonzero.
    pub fn scale(&self, field: &CubicField, lambda: &QVec) -> Result<Self> {
        let gens: Vec<QVec> = self.basis().iter().map(|b| field.mul_q(b, lambda)).collect();
        Self::from_generators(&gens)
    }

    pub fn sum(&self, other: &Lattice) -> Self {
        let mut gens: Vec<QVec> = self.basis().to_vec();
        gens.extend(other.basis());
        Self::from_generators(&gens).expect("sum of full-rank lattices")
    }

    /// Dual lattice under the standard coordinate pairing.
    pub fn dual(&self) -> Self {
        let inv = linalg::qmat_inverse(&self.basis_qmat()).expect("full rank");
        let t = linalg::qmat_transpose(&inv);
        Self::from_generators(&t).expect("full rank")
    }

    pub fn intersect(&self, other: &Lattice) -> Self {
        self.dual().sum(&other.dual()).dual()
    }

    pub fn record(&self) -> LatticeRecord {
        LatticeRecord {
            mat: self.mat.iter().flat_map(|r| r.iter().map(|x| Z(x.clone()))).collect(),
            den: Z(self.den.clone()),
        }
    }

    /// Accepts only records already in normalised Hermite form.
    pub fn from_record(rec: &LatticeRecord) -> Result<Self> {
        if rec.mat.len() != 9 {
            return Err(Error::Malformed(format!("lattice needs 9 entries, got {}", rec.mat.len())));
        }
        let rows: Vec<IVec> = rec.mat.chunks(3).map(|c| [c[0].0.clone(), c[1].0.clone(), c[2].0.clone()]).collect();
        let l = Self::from_integer_rows(&rows, &rec.den.0).map_err(|e| Error::Malformed(e.to_string()))?;
        let given: IMat = std::array::from_fn(|i| rows[i].clone());
        if l.mat != given || l.den != rec.den.0 {
            return Err(Error::Malformed("lattice record is not in normalised Hermite form".into()));
        }
        Ok(l)
    }
}

/// Canonical Hermite form of the lattice spanned by `generators`.
pub fn hnf(generators: &[QVec]) -> Result<Lattice> {
    Lattice::from_generators(generators)
}

/// `[outer : inner]`; errors unless `inner ⊆ outer`.
pub fn index(inner: &Lattice, outer: &Lattice) -> Result<BigRational> {
    if !outer.contains_lattice(inner) {
        return Err(Error::NotContained);
    }
    Ok(inner.covolume() / outer.covolume())
}

/// Field norm of an element given in integral-basis coordinates.
pub fn norm(element: &QVec, field: &CubicField) -> BigRational {
    field.norm(element)
}

/// Lattice spanned by the nine products of basis rows.
pub fn module_product(field: &CubicField, a: &Lattice, b: &Lattice) -> Lattice {
    let (ba, bb) = (a.basis(), b.basis());
    let gens: Vec<QVec> = ba.iter().flat_map(|x| bb.iter().map(move |y| (x, y))).map(|(x, y)| field.mul_q(x, y)).collect();
    Lattice::from_generators(&gens).expect("product of full-rank lattices in a field has full rank")
}

/// `(a : b) = {x ∈ K : x·b ⊆ a}`.
pub fn colon(field: &CubicField, a: &Lattice, b: &Lattice) -> Lattice {
    // ∩_j a·β_j⁻¹ over the basis β_j of b, intersected through duals
    let mut dual_gens: Vec<QVec> = Vec::with_capacity(9);
    let ab = a.basis();
    for beta in b.basis() {
        let m = field.mult_matrix(&beta);
        let minv = linalg::qmat_inverse(&m).expect("nonzero basis element");
        let rows: QMat = std::array::from_fn(|i| linalg::qvec_mul(&ab[i], &minv));
        let inv = linalg::qmat_inverse(&rows).expect("full rank");
        dual_gens.extend(linalg::qmat_transpose(&inv));
    }
    Lattice::from_generators(&dual_gens).expect("full rank").dual()
}

/// `{x ∈ K : x·M ⊆ M}` as an order.
pub fn multiplicator_ring(field: &CubicField, m: &Lattice) -> Order {
    let ring = colon(field, m, m);
    Order::new(field, ring).expect("the multiplicator ring of a lattice is an order")
}

/// Integral, contains 1, closed under multiplication.
pub fn is_order(field: &CubicField, l: &Lattice) -> bool {
    if !l.is_integral() || !l.contains(&qvec_from_int(&CubicField::one())) {
        return false;
    }
    let b = &l.mat;
    for i in 0..3 {
        for j in i..3 {
            if !l.contains(&qvec_from_int(&field.mul(&b[i], &b[j]))) {
                return false;
            }
        }
    }
    true
}

/// Conductor `{x ∈ O_K : x·O_K ⊆ O}` of an order.
pub fn conductor(field: &CubicField, order: &Order) -> Lattice {
    colon(field, order.lattice(), &Lattice::maximal())
}

/// Order `O ⊆ O_K` with its structure constants in its own Hermite basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Order {
    lattice: Lattice,
    f: BigInt,
    mult_table: [[IVec; 3]; 3],
}

/// `{mat, den, f, mult_table: 27 integers}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderRecord {
    #[serde(flatten)]
    pub lattice: LatticeRecord,
    pub f: Z,
    pub mult_table: Vec<Z>,
}

impl Order {
    pub fn new(field: &CubicField, lattice: Lattice) -> Result<Self> {
        if !is_order(field, &lattice) {
            return Err(Error::InvalidInput("lattice is not an order".into()));
        }
        let b = &lattice.mat;
        let mult_table = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                crate::cubic_fields::solve_upper(b, &field.mul(&b[i], &b[j])).expect("closure checked")
            })
        });
        let f = b[0][0].clone() * &b[1][1] * &b[2][2];
        Ok(Order { lattice, f, mult_table })
    }

    pub fn maximal(field: &CubicField) -> Self {
        Self::new(field, Lattice::maximal()).expect("O_K is an order")
    }

    /// `ℤ + n·O_K`.
    pub fn z_plus_multiple(field: &CubicField, n: &BigInt) -> Result<Self> {
        if !n.is_positive() {
            return Err(Error::InvalidInput("multiplier must be positive".into()));
        }
        let mut rows: Vec<IVec> = linalg::identity().iter().map(|r| linalg::vec_scale(r, n)).collect();
        rows.push(CubicField::one());
        Self::new(field, Lattice::from_integer_rows(&rows, &BigInt::one())?)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `[O_K : O]`.
    pub fn f(&self) -> &BigInt {
        &self.f
    }

    pub fn mult_table(&self) -> &[[IVec; 3]; 3] {
        &self.mult_table
    }

    pub fn is_maximal(&self) -> bool {
        self.f.is_one()
    }

    pub fn contains(&self, v: &IVec) -> bool {
        self.lattice.contains(&qvec_from_int(v))
    }

    pub fn record(&self) -> OrderRecord {
        OrderRecord {
            lattice: self.lattice.record(),
            f: Z(self.f.clone()),
            mult_table: self
                .mult_table
                .iter()
                .flat_map(|r| r.iter().flat_map(|v| v.iter().map(|x| Z(x.clone()))))
                .collect(),
        }
    }

    /// Rebuilds from a record, recomputing and cross-checking the derived data.
    pub fn from_record(field: &CubicField, rec: &OrderRecord) -> Result<Self> {
        let lattice = Lattice::from_record(&rec.lattice)?;
        let o = Self::new(field, lattice).map_err(|e| Error::Malformed(e.to_string()))?;
        if o.record() != *rec {
            return Err(Error::Malformed("order record does not match its lattice".into()));
        }
        Ok(o)
    }
}

/// A lattice together with its multiplicator ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    lattice: Lattice,
    mult_ring: Order,
}

impl Module {
    pub fn new(field: &CubicField, lattice: Lattice) -> Self {
        let mult_ring = multiplicator_ring(field, &lattice);
        Module { lattice, mult_ring }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn mult_ring(&self) -> &Order {
        &self.mult_ring
    }
}

/// Hermite matrix of an integral lattice from an `i64` matrix.
pub fn lattice_from_i64(rows: [[i64; 3]; 3]) -> Result<Lattice> {
    Lattice::from_integer_rows(&linalg::imat(rows), &BigInt::one())
}
