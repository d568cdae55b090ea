//! Exact scalar fields.
//!
//! Every computation in the crate is generic over [`Field`]. The trait is only
//! implemented for exact rational types (`Ratio<T>` over a signed integer), so
//! floating point can never enter a rank or kernel computation.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// An exact field with a canonical textual form.
///
/// The textual form is `"a/b"` in lowest terms with `"/1"` omitted.
pub trait Field:
    Clone + Debug + Display + PartialEq + Num + Signed + Send + Sync + 'static
{
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn div_ref(&self, other: &Self) -> Self;

    /// Parses `"a/b"`, `"a"` or `"-a/b"`.
    fn parse_exact(s: &str) -> Option<Self>;

    /// Embeds a machine integer.
    fn from_i64(n: i64) -> Self;

    fn to_exact_string(&self) -> String {
        self.to_string()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).div_ref(&Self::from_i64(den))
    }

    /// `(-1)^k`.
    fn sign(k: usize) -> Self {
        if k % 2 == 0 {
            Self::one()
        } else {
            -Self::one()
        }
    }

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + FromStr + From<i64> + Send + Sync + 'static,
{
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn div_ref(&self, other: &Self) -> Self {
        self / other
    }

    fn parse_exact(s: &str) -> Option<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = T::from_str(num).ok()?;
        let den = T::from_str(den).ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Ratio::new(num, den))
    }

    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use num_traits::One;

    #[test]
    fn textual_form_round_trips() {
        for s in ["0", "1", "-1", "3/4", "-7/2", "12"] {
            let x = Q::parse_exact(s).unwrap();
            assert_eq!(x.to_exact_string(), s);
        }
        assert_eq!(Q::parse_exact("2/4").unwrap().to_exact_string(), "1/2");
        assert_eq!(Q::parse_exact("4/2").unwrap().to_exact_string(), "2");
        assert!(Q::parse_exact("1/0").is_none());
        assert!(Q::parse_exact("abc").is_none());
    }

    #[test]
    fn small_rationals_work_too() {
        let x = num_rational::Rational64::parse_exact("-3/6").unwrap();
        assert_eq!(x.to_exact_string(), "-1/2");
        assert_eq!(<num_rational::Rational64 as Field>::sign(3), -num_rational::Rational64::one());
    }
}
