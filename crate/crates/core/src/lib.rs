//! Construction and mechanical verification of the presented Morava K-theory
//! rings K(s)*(BG) for the order-32 groups G34, G35, G36 and G37.
//!
//! The engine has three independent legs that must agree:
//!
//! * an exact formal-group-law oracle for the height-s Honda law at p = 2,
//!   built from the logarithm over arbitrary-precision rationals and reduced
//!   mod 2 after asserting 2-integrality of every coefficient;
//! * restriction of every relation to the maximal abelian subgroup, computed
//!   in an explicit truncated polynomial ring with its C2-involution;
//! * Groebner bases over F2 for the relation ideals, giving quotient
//!   dimensions, normal forms and monomial bases.
//!
//! The top-level checks compare the three legs against the closed-form Euler
//! characteristic (16^s - 4^s)/2 + 8^s.

pub mod abelian;
pub mod coeff;
pub mod error;
pub mod f2mat;
pub mod fgl;
pub mod grobner;
pub mod monomial;
pub mod order;
pub mod par;
pub mod poly;
pub mod presentations;
pub mod report;
pub mod ring;

pub use coeff::{Coefficient, F2, Q};
pub use error::{Error, Result};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use poly::Poly;
pub use ring::{TruncatedRing, VarSet};
