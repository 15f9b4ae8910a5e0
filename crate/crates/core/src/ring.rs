//! Variable sets and truncated polynomial rings.

use crate::error::{usage, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use std::sync::Arc;

/// An ambient variable set: names plus the monomial order used for canonical
/// printing and as the default Groebner order.
#[derive(Clone, PartialEq, Debug)]
pub struct VarSet {
    names: Vec<String>,
    order: MonomialOrder,
}

impl VarSet {
    pub fn new(names: &[&str]) -> Arc<Self> {
        let order = MonomialOrder::degrevlex(names.len());
        Self::with_order(names, order)
    }

    pub fn with_order(names: &[&str], order: MonomialOrder) -> Arc<Self> {
        assert_eq!(names.len(), order.nvars());
        Arc::new(VarSet {
            names: names.iter().map(|s| s.to_string()).collect(),
            order,
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }
}

/// A polynomial ring with nilpotency truncation: per-variable exponent caps
/// (exponent >= cap is zero) and/or a total-degree bound (degree > bound is
/// zero).
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedRing {
    vars: Arc<VarSet>,
    caps: Vec<Option<u32>>,
    degree_bound: Option<u64>,
}

impl TruncatedRing {
    pub fn new(vars: Arc<VarSet>, caps: Vec<Option<u32>>) -> Self {
        assert_eq!(caps.len(), vars.nvars());
        TruncatedRing {
            vars,
            caps,
            degree_bound: None,
        }
    }

    /// A ring with no caps, truncated at total degree `bound`.
    pub fn degree_truncated(vars: Arc<VarSet>, bound: u64) -> Self {
        let n = vars.nvars();
        TruncatedRing {
            vars,
            caps: vec![None; n],
            degree_bound: Some(bound),
        }
    }

    /// A plain polynomial ring: no caps, no degree bound.
    pub fn free(vars: Arc<VarSet>) -> Self {
        let n = vars.nvars();
        TruncatedRing {
            vars,
            caps: vec![None; n],
            degree_bound: None,
        }
    }

    pub fn with_degree_bound(mut self, bound: u64) -> Self {
        self.degree_bound = Some(bound);
        self
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn caps(&self) -> &[Option<u32>] {
        &self.caps
    }

    pub fn degree_bound(&self) -> Option<u64> {
        self.degree_bound
    }

    pub fn allows(&self, m: &Monomial) -> bool {
        debug_assert_eq!(m.nvars(), self.vars.nvars());
        if let Some(d) = self.degree_bound {
            if m.total_degree() > d {
                return false;
            }
        }
        self.caps
            .iter()
            .enumerate()
            .all(|(i, cap)| cap.is_none_or(|c| m.exp(i) < c))
    }

    /// The largest total degree of a surviving monomial, or `None` when the
    /// ring is not degreewise bounded.
    pub fn max_total_degree(&self) -> Option<u64> {
        let from_caps: Option<u64> = self
            .caps
            .iter()
            .map(|cap| cap.map(|c| c.saturating_sub(1) as u64))
            .try_fold(0u64, |acc, d| d.map(|d| acc + d));
        match (from_caps, self.degree_bound) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }

    /// F2-dimension of the truncated ring, for fully capped rings without a
    /// degree bound.
    pub fn dimension(&self) -> Option<u64> {
        if self.degree_bound.is_some() {
            return None;
        }
        self.caps
            .iter()
            .try_fold(1u64, |acc, cap| cap.map(|c| acc * c as u64))
    }

    /// All monomials of a fully capped ring, in odometer order (last variable
    /// fastest).
    pub fn monomials(&self) -> Result<Vec<Monomial>> {
        let caps: Vec<u32> = self
            .caps
            .iter()
            .map(|c| c.ok_or_else(|| usage("monomial enumeration needs caps on every variable")))
            .collect::<Result<_>>()?;
        if self.degree_bound.is_some() {
            return Err(usage("monomial enumeration does not support degree bounds"));
        }
        let n = caps.len();
        let total: u64 = caps.iter().map(|&c| c as u64).product();
        let mut out = Vec::with_capacity(total as usize);
        let mut exps = vec![0u32; n];
        loop {
            out.push(Monomial::from_exponents(&exps));
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                exps[i] += 1;
                if exps[i] < caps[i] {
                    break;
                }
                exps[i] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caps_and_bounds() {
        let vars = VarSet::new(&["u", "v"]);
        let ring = TruncatedRing::new(vars.clone(), vec![Some(4), Some(16)]);
        assert!(ring.allows(&Monomial::from_exponents(&[3, 15])));
        assert!(!ring.allows(&Monomial::from_exponents(&[4, 0])));
        assert_eq!(ring.max_total_degree(), Some(18));
        assert_eq!(ring.dimension(), Some(64));
        assert_eq!(ring.monomials().unwrap().len(), 64);

        let bounded = TruncatedRing::degree_truncated(vars, 5);
        assert!(bounded.allows(&Monomial::from_exponents(&[2, 3])));
        assert!(!bounded.allows(&Monomial::from_exponents(&[2, 4])));
        assert_eq!(bounded.max_total_degree(), Some(5));
        assert_eq!(bounded.dimension(), None);
    }
}
