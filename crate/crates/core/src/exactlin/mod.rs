//! Exact dense linear algebra over the rationals and over multivariate
//! polynomial rings.
//!
//! Everything else in the crate funnels rank, kernel and intersection
//! computations through this module.

mod elim;
mod generic;
mod matrix;
mod poly;

pub use elim::{
    intersect_rowspaces, kernel_basis, rank, row_reduce, solve_in_rowspace, Coordinates, RowEchelon,
};
pub use generic::{connected_blocks, generic_rank, max_sampled_rank};
pub use matrix::Mat;
pub use poly::{Monomial, MultiPoly};

use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator.
pub type Scalar = BigRational;

/// Half-width of the integer box used for random evaluation points.
pub const SAMPLE_BOUND: i64 = 10_000;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// Uniform integer point in `[-SAMPLE_BOUND, SAMPLE_BOUND]^len`.
pub fn random_point<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Scalar> {
    (0..len)
        .map(|_| int(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
        .collect()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Scalar::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Scalar::from_integer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_traits::Zero;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display_round_trip() {
        let q = parse_scalar("-6/4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(parse_scalar("7").unwrap(), int(7));
        assert!(parse_scalar("1/0").is_none());
        assert!(parse_scalar("x").is_none());
    }

    fn small() -> impl Strategy<Value = Scalar> {
        (-1000i64..1000, 1i64..50).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
    }

    proptest! {
        #[test]
        fn scalar_arithmetic_round_trips(a in small(), b in small()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
            prop_assert!(*(&a * &b).denom() > BigInt::from(0));
        }
    }
}
