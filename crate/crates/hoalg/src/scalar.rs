use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, Signed};

/// Field of coefficients. Division must be exact, which rules out floats
/// for anything that feeds a rank computation.
pub trait Scalar:
    Num + Signed + FromPrimitive + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
    /// `(-1)^k` as a field element.
    fn sign(odd: bool) -> Self {
        if odd {
            -Self::one()
        } else {
            Self::one()
        }
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits the scalar type")
    }
}

impl<T> Scalar for T where
    T: Num + Signed + FromPrimitive + Clone + PartialEq + Debug + Display + Send + Sync + 'static
{
}

/// Parity of an integer, `true` for odd.
#[inline]
pub fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}
