//! Sanity checks of the reference implementations against values that are
//! known by hand, so that agreement in the acceptance suite means something.

mod common;

use common::*;
use cubic_census::order_arithmetic::Order;
use cubic_census::units;
use num_bigint::BigInt;

#[test]
fn closed_form_discriminants() {
    assert_eq!(disc(0, -1, -1), -23);
    assert_eq!(disc(-1, -2, -8), -2012);
    assert_eq!(disc(0, 0, -2), -108);
}

#[test]
fn ring_index_by_residue_count() {
    assert_eq!(ring_index(0, -1, -1), 1);
    // (θ + θ²)/2 is integral for x³ − x² − 2x − 8
    assert_eq!(ring_index(-1, -2, -8), 2);
    assert_eq!(ring_index(0, 0, -2), 1);
    // x³ − 12: ℚ(∛12) = ℚ(∛18), with (∛12)²/2 = ∛18 integral
    assert_eq!(ring_index(0, 0, -12), 2);
}

#[test]
fn root_counts() {
    assert_eq!(roots_mod(0, -1, -1, 2), 0);
    assert_eq!(roots_mod(0, -1, -1, 5), 1);
    assert_eq!(roots_mod(0, -1, -1, 59), 3);
    assert!(same_splitting((0, -1, -1), (-1, 0, 1)));
    assert!(!same_splitting((0, -1, -1), (0, 0, -2)));
}

#[test]
fn sweep_finds_the_smallest_fields() {
    let s = sweep_fields(60);
    let d: Vec<i64> = s.iter().map(|f| f.d_k).collect();
    assert_eq!(d, vec![-23, -31, -44, -59]);
}

#[test]
fn unit_box_search_for_the_plastic_field() {
    let f = field(0, -1, -1);
    let (r, at) = brute_force_regulator(&f, 5);
    assert!((r - 1.324_717_957_244_746f64.ln()).abs() < 1e-12);
    assert!(at.contains(&[0, 1, 0]));
}

#[test]
fn slow_classifier_small_cases() {
    let f = field(0, -1, -1);
    let u = units::fundamental_unit(&f).unwrap();
    let ok = Order::maximal(&f);
    assert_eq!(slow_module_classes(&f, &ok, u.r_k).len(), 1);
    // ℤ + 2O_K: Pic is trivial, but O_K and a non-invertible module give two more classes
    let o = Order::z_plus_multiple(&f, &BigInt::from(2)).unwrap();
    let r = units::regulator(&f, &o, &u).unwrap().big_r;
    assert_eq!(slow_module_classes(&f, &o, r).len(), 3);
    // x³ + 4x − 1 has class number 2
    let g = field(0, 4, -1);
    let ug = units::fundamental_unit(&g).unwrap();
    assert_eq!(slow_module_classes(&g, &Order::maximal(&g), ug.r_k).len(), 2);
}

#[test]
fn li_series_values() {
    assert!(li_series(2.0).abs() < 1e-14);
    // li(10⁴) from 0 is 1246.1372158993884…
    assert!((li_series(1e4) - (1_246.137_215_899_388_5 - 1.045_163_780_117_493)).abs() < 1e-9);
}
