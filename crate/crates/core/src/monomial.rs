//! Monomials as dense exponent vectors over a fixed variable set.

use smallvec::{smallvec, SmallVec};

/// A monomial in a ring with a fixed number of variables.
///
/// Equality is exponent-vector equality; the derived `Ord` (plain
/// lexicographic on the vector) is only the structural order used for
/// canonical term storage, not a monomial order in the Groebner sense.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: smallvec![0; nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::var_pow(nvars, index, 1)
    }

    pub fn var_pow(nvars: usize, index: usize, exp: u32) -> Self {
        assert!(index < nvars, "variable index out of range");
        let mut exps: SmallVec<[u32; 8]> = smallvec![0; nvars];
        exps[index] = exp;
        Monomial { exps }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.exps[index]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.nvars(), rhs.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|&e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn div_into(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        })
    }

    pub fn lcm(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.nvars(), rhs.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// True when the least common multiple equals the plain product, i.e. the
    /// supports are disjoint.
    pub fn coprime(&self, rhs: &Self) -> bool {
        self.exps.iter().zip(&rhs.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The 2^k-th root, when every exponent is divisible by 2^k.
    pub fn root_pow2(&self, k: u32) -> Option<Self> {
        let d = 1u32.checked_shl(k)?;
        if self.exps.iter().any(|e| e % d != 0) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().map(|e| e / d).collect(),
        })
    }
}
