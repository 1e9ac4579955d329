//! Ideal class numbers of maximal orders, Picard numbers of suborders, and the
//! module class number `h(O)`: the number of lattices `M ⊂ F` with `O·M ⊆ M`,
//! up to scaling by `F^×`.
//!
//! Equivalence of `O_K`-ideals is decided exactly by [`principal_generator`].
//! Module classes are counted by the orbit method: every such `M` can be scaled
//! so that `O_K·M` is one of the ideal class representatives `A`, and then
//! `e·A ⊆ M ⊆ A` where `e·O_K ⊆ O`. The remaining freedom is multiplication
//! by units of `O_K`, so the classes with `O_K·M ~ A` are the orbits of `⟨ε⟩`
//! on a finite set of lattices between `e·A` and `A`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cubic_fields::CubicField;
use crate::error::{Error, Result};
use crate::linalg::{self, IVec, SMat};
use crate::order_arithmetic::{colon, module_product, multiplicator_ring, Lattice, LatticeRecord, Module, Order};
use crate::primes;
use crate::units::{self, principal_generator, UnitData};

/// Default ceiling on candidate lattices per order in [`module_class_number`].
pub const DEFAULT_CEILING: u64 = 10_000;

/// `(8/(9π))·√|d_K|` with a relative guard of 10⁻¹².
pub fn minkowski_bound(field: &CubicField) -> f64 {
    let d = field.d_k().abs().to_f64().unwrap_or(f64::INFINITY);
    8.0 / (9.0 * std::f64::consts::PI) * d.sqrt() * (1.0 + 1e-12)
}

/// Pairwise inequivalent integral ideals, one per class, each of least norm
/// in its class (ties broken by Hermite form).
#[derive(Clone, Debug, PartialEq)]
pub struct IdealClassSet {
    pub representatives: Vec<Lattice>,
    pub h: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdealClassRecord {
    pub representatives: Vec<LatticeRecord>,
    pub h: u64,
}

impl IdealClassSet {
    pub fn record(&self) -> IdealClassRecord {
        IdealClassRecord {
            representatives: self.representatives.iter().map(Lattice::record).collect(),
            h: self.h,
        }
    }

    /// Structural validation only; equivalence is not re-decided.
    pub fn from_record(rec: &IdealClassRecord) -> Result<Self> {
        let representatives = rec.representatives.iter().map(Lattice::from_record).collect::<Result<Vec<_>>>()?;
        if representatives.len() as u64 != rec.h || rec.h == 0 {
            return Err(Error::Malformed("class record: h disagrees with the representatives".into()));
        }
        if !representatives.iter().all(Lattice::is_integral) {
            return Err(Error::Malformed("class representatives must be integral".into()));
        }
        Ok(IdealClassSet {
            representatives,
            h: rec.h,
        })
    }
}

fn small_table(field: &CubicField) -> Result<[[[i128; 3]; 3]; 3]> {
    let t = field.table();
    let mut out = [[[0i128; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j][k] = t[i][j][k].to_i128().ok_or(Error::Capacity {
                    what: "structure constant size (bits)",
                    needed: t[i][j][k].bits(),
                    ceiling: 126,
                })?;
            }
        }
    }
    Ok(out)
}

/// Matrix of multiplication by `ω_k` on `O_K`: row `i` is `ω_i·ω_k`.
fn omega_matrices(t: &[[[i128; 3]; 3]; 3]) -> [SMat; 3] {
    std::array::from_fn(|k| std::array::from_fn(|i| t[i][k]))
}

fn combine_smat(y: &[i128; 3], ms: &[SMat; 3]) -> SMat {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| y[k] * ms[k][i][j]).sum()))
}

/// All integral ideals of norm at most `max_norm`, sorted by (norm, Hermite form).
pub fn integral_ideals(field: &CubicField, max_norm: u64) -> Result<Vec<Lattice>> {
    let w = omega_matrices(&small_table(field)?);
    let mut out = Vec::new();
    for n in 1..=max_norm as i128 {
        for a in divisors(n) {
            for d in divisors(n / a) {
                let g = n / a / d;
                for b in 0..d {
                    for c in 0..g {
                        for e in 0..g {
                            let h: SMat = [[a, b, c], [0, d, e], [0, 0, g]];
                            let closed = h
                                .iter()
                                .all(|r| w[1..].iter().all(|t| linalg::in_hnf(&h, linalg::smat_apply(r, t))));
                            if closed {
                                out.push(lattice_of(&h));
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|x, y| x.covolume().cmp(&y.covolume()).then_with(|| x.cmp(y)));
    Ok(out)
}

fn divisors(n: i128) -> Vec<i128> {
    (1..=n).filter(|d| n % d == 0).collect()
}

fn lattice_of(h: &SMat) -> Lattice {
    Lattice::from_integer_rows(&linalg::from_smat(h), &BigInt::one()).expect("full rank")
}

/// `I ~ J` iff `J·I⁻¹` is principal.
pub fn is_equivalent(field: &CubicField, unit: &UnitData, i: &Lattice, j: &Lattice) -> Result<bool> {
    let inv = colon(field, &Lattice::maximal(), i);
    Ok(principal_generator(field, unit, &module_product(field, j, &inv))?.is_some())
}

/// Ideal class group of `O_K` by exhaustion of ideals below the Minkowski bound.
pub fn class_number_maximal(field: &CubicField) -> Result<IdealClassSet> {
    let unit = units::fundamental_unit(field)?;
    class_number_maximal_with_unit(field, &unit)
}

pub fn class_number_maximal_with_unit(field: &CubicField, unit: &UnitData) -> Result<IdealClassSet> {
    let bound = minkowski_bound(field).floor() as u64;
    let mut reps: Vec<Lattice> = Vec::new();
    for ideal in integral_ideals(field, bound)? {
        if class_index(field, unit, &reps, &ideal)?.is_none() {
            reps.push(ideal);
        }
    }
    let h = reps.len() as u64;
    Ok(IdealClassSet { representatives: reps, h })
}

/// Position of the class of `ideal` among `reps`, if present.
pub fn class_index(field: &CubicField, unit: &UnitData, reps: &[Lattice], ideal: &Lattice) -> Result<Option<usize>> {
    for (k, r) in reps.iter().enumerate() {
        if r == ideal || is_equivalent(field, unit, r, ideal)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// `|Pic(O)| = h_K·|(O_K/𝔠)^×| / (|(O/𝔠)^×|·[O_K^× : O^×])` for the conductor `𝔠`.
pub fn picard_number(field: &CubicField, order: &Order, unit: &UnitData, h_k: u64) -> Result<u64> {
    if order.is_maximal() {
        return Ok(h_k);
    }
    let c = crate::order_arithmetic::conductor(field, order);
    let cm = linalg::to_smat(c.mat()).ok_or(Error::Capacity {
        what: "conductor entries",
        needed: u64::MAX,
        ceiling: i64::MAX as u64,
    })?;
    let size = cm[0][0] * cm[1][1] * cm[2][2];
    if size > 1 << 22 {
        return Err(Error::Capacity {
            what: "conductor norm for Picard counting",
            needed: size as u64,
            ceiling: 1 << 22,
        });
    }
    let w = omega_matrices(&small_table(field)?);
    let om = linalg::to_smat(order.lattice().mat()).expect("order entries are bounded by the conductor");
    let (mut units_k, mut units_o) = (0u64, 0u64);
    for x0 in 0..cm[0][0] {
        for x1 in 0..cm[1][1] {
            for x2 in 0..cm[2][2] {
                let x = [x0, x1, x2];
                let mut rows: Vec<[i128; 3]> = w.iter().map(|t| linalg::smat_apply(&x, t)).collect();
                rows.extend(cm.iter().copied());
                if linalg::hnf_mod(&rows, size) != [[1, 0, 0], [0, 1, 0], [0, 0, 1]] {
                    continue;
                }
                units_k += 1;
                if linalg::in_hnf(&om, x) {
                    units_o += 1;
                }
            }
        }
    }
    let m = units::unit_index(field, order, unit)?;
    let num = h_k * units_k;
    let den = units_o * m;
    if den == 0 || !num.is_multiple_of(den) {
        return Err(Error::Inconsistent(format!("Picard quotient {num}/{den} is not an integer")));
    }
    Ok(num / den)
}

/// Module classes of an order.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleClassSet {
    pub representatives: Vec<Module>,
    pub h: u64,
    /// Number of classes per multiplicator ring, keyed by the ring's lattice.
    pub by_multiplicator: BTreeMap<Lattice, u64>,
    /// Whether each representative is invertible over its multiplicator ring.
    pub invertible: Vec<bool>,
    /// Candidate lattices examined.
    pub candidates: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicatorCount {
    pub order: LatticeRecord,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleClassRecord {
    pub representatives: Vec<LatticeRecord>,
    pub h: u64,
    pub by_multiplicator: Vec<MultiplicatorCount>,
}

impl ModuleClassSet {
    pub fn record(&self) -> ModuleClassRecord {
        ModuleClassRecord {
            representatives: self.representatives.iter().map(|m| m.lattice().record()).collect(),
            h: self.h,
            by_multiplicator: self
                .by_multiplicator
                .iter()
                .map(|(l, &count)| MultiplicatorCount { order: l.record(), count })
                .collect(),
        }
    }

    /// Every module class is an invertible ideal of its multiplicator ring.
    pub fn all_invertible(&self) -> bool {
        self.invertible.iter().all(|&b| b)
    }
}

/// Smallest `e` with `e·O_K ⊆ O`.
pub fn conductor_exponent(order: &Order) -> u64 {
    let f = order.f().to_u64().expect("order index fits in u64");
    let ok = |e: u64| {
        linalg::identity()
            .iter()
            .all(|r| order.contains(&linalg::vec_scale(r, &BigInt::from(e))))
    };
    (1..=f).find(|&e| f.is_multiple_of(e) && ok(e)).unwrap_or(f)
}

/// `h(O)` with class representatives, by the orbit method.
pub fn module_class_number(
    field: &CubicField,
    order: &Order,
    unit: &UnitData,
    classes: &IdealClassSet,
    ceiling: u64,
) -> Result<ModuleClassSet> {
    if order.f().to_u64().is_none_or(|f| f >= 1 << 20) {
        return Err(Error::Capacity {
            what: "order index",
            needed: u64::MAX,
            ceiling: 1 << 20,
        });
    }
    let e = conductor_exponent(order);
    let w = omega_matrices(&small_table(field)?);
    let om = linalg::to_smat(order.lattice().mat()).expect("bounded by f");
    let local_primes = primes::prime_divisors(&BigInt::from(e))?;

    let mut work: Vec<(Vec<SMat>, SMat, SMat)> = Vec::new();
    let mut total = 0u64;
    for a in &classes.representatives {
        let amat = linalg::to_smat(a.mat()).ok_or(Error::Capacity {
            what: "ideal representative entries",
            needed: u64::MAX,
            ceiling: i64::MAX as u64,
        })?;
        // T_k: multiplication by ω_k in A-coordinates
        let t: [SMat; 3] = std::array::from_fn(|k| {
            std::array::from_fn(|i| coords_in(&amat, linalg::smat_apply(&amat[i], &w[k])).expect("A is an ideal"))
        });
        let ops: Vec<SMat> = om[1..].iter().map(|y| combine_smat(y, &t)).collect();
        let eps = linalg::to_smat(&[unit.eps.clone(), linalg::zero_ivec(), linalg::zero_ivec()])
            .map(|m| m[0])
            .ok_or(Error::Capacity {
                what: "unit coordinates",
                needed: u64::MAX,
                ceiling: i64::MAX as u64,
            })?;
        let t_eps = combine_smat(&eps, &t);
        let mut locals: Vec<(i128, Vec<SMat>)> = Vec::new();
        for &p in &local_primes {
            let mut q = 1u64;
            while e.is_multiple_of(q * p) {
                q *= p;
            }
            let list = local_candidates(q as i128, p, &ops, &t);
            locals.push((q as i128, list));
        }
        let count = locals.iter().fold(1u64, |acc, (_, l)| acc.saturating_mul(l.len() as u64));
        total = total.saturating_add(count);
        if total > ceiling {
            return Err(Error::Capacity {
                what: "module class candidates",
                needed: total,
                ceiling,
            });
        }
        let mut cands = vec![[[0i128; 3]; 3]];
        let mut first = true;
        for (q, list) in &locals {
            let scale = e as i128 / q;
            let mut next = Vec::with_capacity(cands.len() * list.len());
            for c in &cands {
                for h in list {
                    let mut rows: Vec<[i128; 3]> = h.iter().map(|r| r.map(|x| x * scale)).collect();
                    if !first {
                        rows.extend(c.iter().copied());
                    }
                    next.push(rows);
                }
            }
            cands = next.into_iter().map(|rows| linalg::hnf_mod(&rows, e as i128)).collect();
            first = false;
        }
        if locals.is_empty() {
            cands = vec![[[1, 0, 0], [0, 1, 0], [0, 0, 1]]];
        }
        cands.sort();
        cands.dedup();
        work.push((cands, amat, t_eps));
    }

    let mut representatives = Vec::new();
    let mut invertible = Vec::new();
    let mut by_multiplicator: BTreeMap<Lattice, u64> = BTreeMap::new();
    for (cands, amat, t_eps) in work {
        let pos: HashMap<SMat, usize> = cands.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut seen = vec![false; cands.len()];
        for start in 0..cands.len() {
            if seen[start] {
                continue;
            }
            let mut cur = cands[start];
            loop {
                let i = *pos
                    .get(&cur)
                    .ok_or_else(|| Error::Inconsistent("unit action left the candidate set".into()))?;
                if seen[i] {
                    break;
                }
                seen[i] = true;
                let rows: Vec<[i128; 3]> = cur.iter().map(|r| linalg::smat_apply(r, &t_eps)).collect();
                cur = linalg::hnf_mod(&rows, e as i128);
            }
            let rows: Vec<[i128; 3]> = cands[start].iter().map(|r| linalg::smat_apply(r, &amat)).collect();
            let lat = Lattice::from_integer_rows(&rows.iter().map(|r| r.map(BigInt::from)).collect::<Vec<IVec>>(), &BigInt::one())?;
            let ring = multiplicator_ring(field, &lat);
            let inv = module_product(field, &lat, &colon(field, ring.lattice(), &lat)) == *ring.lattice();
            *by_multiplicator.entry(ring.lattice().clone()).or_insert(0) += 1;
            invertible.push(inv);
            representatives.push(Module::new(field, lat));
        }
    }
    Ok(ModuleClassSet {
        h: representatives.len() as u64,
        representatives,
        by_multiplicator,
        invertible,
        candidates: total,
    })
}

/// Integer `c` with `c·mat = v` for an upper-triangular `mat`.
fn coords_in(mat: &SMat, v: [i128; 3]) -> Option<[i128; 3]> {
    let mut rest = v;
    let mut c = [0i128; 3];
    for i in 0..3 {
        if rest[i] % mat[i][i] != 0 {
            return None;
        }
        c[i] = rest[i] / mat[i][i];
        for k in i..3 {
            rest[k] -= c[i] * mat[i][k];
        }
    }
    Some(c)
}

/// Lattices `q·ℤ³ ⊆ H ⊆ ℤ³` stable under `ops` whose `O_K`-span (via `t`) is
/// everything at `p`.
fn local_candidates(q: i128, p: u64, ops: &[SMat], t: &[SMat; 3]) -> Vec<SMat> {
    let divs = divisors(q);
    let mut out = Vec::new();
    for &d0 in &divs {
        for &d1 in &divs {
            for &d2 in &divs {
                for x01 in 0..d1 {
                    for x02 in 0..d2 {
                        for x12 in 0..d2 {
                            let h: SMat = [[d0, x01, x02], [0, d1, x12], [0, 0, d2]];
                            let full = (0..3).all(|i| {
                                let mut v = [0i128; 3];
                                v[i] = q;
                                linalg::in_hnf(&h, v)
                            });
                            if !full {
                                continue;
                            }
                            let stable = h
                                .iter()
                                .all(|r| ops.iter().all(|o| linalg::in_hnf(&h, linalg::smat_apply(r, o))));
                            if !stable {
                                continue;
                            }
                            let span: Vec<Vec<u64>> = h
                                .iter()
                                .flat_map(|r| t.iter().map(move |tk| linalg::smat_apply(r, tk)))
                                .map(|v| v.iter().map(|x| x.rem_euclid(p as i128) as u64).collect())
                                .collect();
                            if linalg::rank_mod(&span, 3, p) == 3 {
                                out.push(h);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Per-multiplicator comparison of `h(O)` with `Σ_{O' ⊇ O} |Pic(O')|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PicardCheck {
    pub h: u64,
    pub picard_sum: u64,
    /// Every class is invertible over its multiplicator ring, in which case
    /// `h = picard_sum` must hold.
    pub hypothesis: bool,
}

pub fn picard_decomposition(
    field: &CubicField,
    set: &ModuleClassSet,
    unit: &UnitData,
    h_k: u64,
) -> Result<PicardCheck> {
    let mut sum = 0u64;
    for ring in set.by_multiplicator.keys() {
        let o = Order::new(field, ring.clone())?;
        sum += picard_number(field, &o, unit, h_k)?;
    }
    Ok(PicardCheck {
        h: set.h,
        picard_sum: sum,
        hypothesis: set.all_invertible(),
    })
}
