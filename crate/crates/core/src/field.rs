//! Exact coefficient fields.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive};

/// An exact, ordered field of characteristic zero.
///
/// Everything in this crate is generic over `Field`. The conversions to and
/// from [`BigRational`] are used by the parser (literals), by normalisation
/// of kernel vectors to primitive integer form, and by rational root search.
pub trait Field: Signed + Clone + Debug + Display + Ord + Hash + Send + Sync + 'static {
    /// `None` when `q` does not fit.
    fn from_rational(q: &BigRational) -> Option<Self>;

    fn to_rational(&self) -> BigRational;

    fn from_i64(n: i64) -> Self;
}

impl Field for BigRational {
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for Ratio<i64> {
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(Ratio::new(q.numer().to_i64()?, q.denom().to_i64()?))
    }

    fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

/// Rescales `values` to coprime integers whose first nonzero entry is
/// positive. All-zero input is returned unchanged.
pub fn primitive_integer_form<F: Field>(values: &[F]) -> Vec<F> {
    use num_integer::Integer;
    use num_traits::{One, Zero};

    let Some(first) = values.iter().find(|v| !v.is_zero()) else {
        return values.to_vec();
    };
    let rationals: Vec<BigRational> = values.iter().map(Field::to_rational).collect();
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for q in rationals.iter().filter(|q| !q.is_zero()) {
        denom_lcm = denom_lcm.lcm(q.denom());
        numer_gcd = numer_gcd.gcd(q.numer());
    }
    let mut scale = BigRational::new(denom_lcm, numer_gcd);
    if first.is_negative() {
        scale = -scale;
    }
    rationals
        .iter()
        .map(|q| F::from_rational(&(q * &scale)).expect("primitive form fits the field"))
        .collect()
}
