//! Class numbers, regulators and prime splitting of orders in complex cubic
//! fields, and a weighted census of those orders by regulator.

pub mod class_numbers;
pub mod census;
pub mod cli_store;
pub mod cubic_fields;
pub mod error;
pub mod fp_poly;
pub mod geometry;
pub mod linalg;
pub mod order_arithmetic;
pub mod primes;
pub mod serial;
pub mod splitting;
pub mod units;

pub use error::{Error, Result};
