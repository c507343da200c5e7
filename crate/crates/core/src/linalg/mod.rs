//! Exact linear algebra over the rationals.
//!
//! Two representations live side by side: dense [`ExactMatrix`]/[`Subspace`]
//! for the small coordinate spaces (Hom spaces, kernels) and the sparse
//! [`SparseEchelon`] for subspaces of large exterior powers. Both eliminate
//! over the integers and only normalize to reduced rational form on output.

mod dense;
mod sparse;

pub use dense::{kernel, rref, ExactMatrix, Subspace};
pub use sparse::{kernel_of_columns, Insertion, SparseEchelon, SparseVec};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

pub fn scalar(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

/// Scales a rational vector to a primitive integer vector with the same span.
/// The first nonzero entry of the result is positive.
pub(crate) fn to_primitive_ints<'a, I>(entries: I) -> Vec<BigInt>
where
    I: IntoIterator<Item = &'a Scalar>,
{
    let entries: Vec<&Scalar> = entries.into_iter().collect();
    let lcm = entries.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut ints: Vec<BigInt> = entries.iter().map(|x| (*x * &lcm).to_integer()).collect();
    make_primitive(&mut ints);
    ints
}

pub(crate) fn make_primitive(ints: &mut [BigInt]) {
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let flip = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if flip { -g } else { g };
    if !g.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_roundtrip_through_text() {
        for (n, d) in [(3i64, 4i64), (-7, 2), (0, 5), (123456789, 987654321)] {
            let x = Scalar::new(BigInt::from(n), BigInt::from(d));
            let back: Scalar = x.to_string().parse().unwrap();
            assert_eq!(back, x);
            assert!(x.denom().is_positive());
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = [Scalar::new(1.into(), 2.into()), Scalar::new((-1).into(), 3.into())];
        assert_eq!(to_primitive_ints(&v), vec![BigInt::from(3), BigInt::from(-2)]);
        let w = [scalar(0), scalar(-4), scalar(6)];
        assert_eq!(to_primitive_ints(&w), vec![BigInt::from(0), BigInt::from(2), BigInt::from(-3)]);
    }
}
