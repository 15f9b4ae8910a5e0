//! Coefficient domains: the two-element field and exact rationals.
//!
//! All ring-level checks run over `F2`. The rationals only appear in the
//! formal-group-law oracle, where 2-integrality of every coefficient must be
//! asserted exactly before reducing mod 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Arithmetic contract shared by the two coefficient domains.
pub trait Coefficient: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    /// True in characteristic 2, where squaring a polynomial is the
    /// term-wise Frobenius (cross terms vanish).
    const CHAR_TWO: bool = false;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Text rendering used by the polynomial format when the coefficient is
    /// not the implicit 1.
    fn render(&self) -> String;
}

/// The field with two elements; 1 + 1 = 0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct F2(pub bool);

impl Coefficient for F2 {
    const CHAR_TWO: bool = true;

    fn zero() -> Self {
        F2(false)
    }
    fn one() -> Self {
        F2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn is_one(&self) -> bool {
        self.0
    }
    fn add(&self, rhs: &Self) -> Self {
        F2(self.0 ^ rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        F2(self.0 ^ rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        F2(self.0 & rhs.0)
    }
    fn render(&self) -> String {
        if self.0 { "1" } else { "0" }.to_string()
    }
}

/// Exact rationals with arbitrary-precision numerator and denominator.
///
/// `BigRational` keeps values in lowest terms with a positive denominator,
/// which is exactly the canonical form the engine relies on.
pub type Q = BigRational;

impl Coefficient for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Convenience rational constructor.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// A rational is 2-integral when its reduced denominator is odd.
pub fn is_two_integral(x: &Q) -> bool {
    x.denom().is_odd()
}

/// Reduction of a 2-integral rational mod 2; `None` when the denominator is
/// even. For a/b in lowest terms with b odd, the residue is a mod 2.
pub fn mod2(x: &Q) -> Option<F2> {
    if !is_two_integral(x) {
        return None;
    }
    Some(F2(x.numer().abs().is_odd()))
}
