//! Sparse multivariate polynomials over an exact coefficient domain.
//!
//! Terms are kept in canonical form: sorted by the structural monomial order,
//! no zero coefficients. Ring operations check that both operands share the
//! ambient variable set; the `+`/`*` operators panic on mismatch, the `try_`
//! variants report it as a usage error.

use crate::coeff::{Coefficient, F2};
use crate::error::{usage, Result};
use crate::monomial::Monomial;
use crate::ring::{TruncatedRing, VarSet};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Debug)]
pub struct Poly<C: Coefficient> {
    ring: Arc<VarSet>,
    terms: Vec<(Monomial, C)>,
}

impl<C: Coefficient> Poly<C> {
    pub fn zero(ring: &Arc<VarSet>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<VarSet>) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn constant(ring: &Arc<VarSet>, c: C) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Poly {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring.nvars()), c)],
        }
    }

    pub fn var(ring: &Arc<VarSet>, index: usize) -> Self {
        Self::from_monomial(ring, Monomial::var(ring.nvars(), index))
    }

    pub fn var_pow(ring: &Arc<VarSet>, index: usize, exp: u32) -> Self {
        Self::from_monomial(ring, Monomial::var_pow(ring.nvars(), index, exp))
    }

    pub fn from_monomial(ring: &Arc<VarSet>, m: Monomial) -> Self {
        assert_eq!(m.nvars(), ring.nvars());
        Poly {
            ring: ring.clone(),
            terms: vec![(m, C::one())],
        }
    }

    pub fn from_terms(ring: &Arc<VarSet>, terms: Vec<(Monomial, C)>) -> Self {
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars());
            merge_into(&mut acc, m, c);
        }
        Poly {
            ring: ring.clone(),
            terms: acc.into_iter().collect(),
        }
    }

    pub fn ring(&self) -> &Arc<VarSet> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.total_degree()).max()
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        match self.terms.binary_search_by(|(t, _)| t.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    /// The term whose monomial is largest under `order`.
    pub fn leading<'a>(&'a self, order: &crate::order::MonomialOrder) -> Option<&'a (Monomial, C)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    /// The lowest-degree term (ties broken structurally); the witness used in
    /// failure reports.
    pub fn min_degree_term(&self) -> Option<&(Monomial, C)> {
        self.terms
            .iter()
            .min_by(|(a, _), (b, _)| a.total_degree().cmp(&b.total_degree()).then(a.cmp(b)))
    }

    fn check_ring(&self, rhs: &Self) -> Result<()> {
        if self.ring == rhs.ring {
            Ok(())
        } else {
            Err(usage(format!(
                "mismatched ambient rings: [{}] vs [{}]",
                self.ring.names().join(","),
                rhs.ring.names().join(",")
            )))
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_ring(rhs)?;
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &rhs.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Less => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push(rhs.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca.add(cb);
                    if !c.is_zero() {
                        terms.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&rhs.terms[j..]);
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), C::zero().sub(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, a)| {
                    let p = a.mul(c);
                    (!p.is_zero()).then(|| (m.clone(), p))
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.mul(m), c.clone()))
                .collect(),
        }
    }

    fn mul_filtered(&self, rhs: &Self, filter: Option<&TruncatedRing>) -> Result<Self> {
        self.check_ring(rhs)?;
        let mut acc: BTreeMap<Monomial, C> = BTreeMap::new();
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                if let Some(ring) = filter {
                    if !ring.allows(&m) {
                        continue;
                    }
                }
                let c = ca.mul(cb);
                if c.is_zero() {
                    continue;
                }
                merge_into(&mut acc, m, c);
            }
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms: acc.into_iter().collect(),
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.mul_filtered(rhs, None)
    }

    /// Product reduced in a truncated ring; monomials that violate the caps
    /// or the degree bound are dropped as they arise.
    pub fn mul_in(&self, ring: &TruncatedRing, rhs: &Self) -> Result<Self> {
        self.mul_filtered(rhs, Some(ring))
    }

    /// Repeated-squaring power. Over F2 the 2^k-th power is the term-wise
    /// Frobenius.
    pub fn pow(&self, k: u64) -> Self {
        self.pow_filtered(k, None)
    }

    pub fn pow_in(&self, ring: &TruncatedRing, k: u64) -> Self {
        self.pow_filtered(k, Some(ring))
    }

    fn pow_filtered(&self, k: u64, filter: Option<&TruncatedRing>) -> Self {
        let mut result = Self::one(&self.ring);
        if k == 0 {
            return result;
        }
        let mut base = match filter {
            Some(ring) => ring.reduce(self),
            None => self.clone(),
        };
        let mut k = k;
        loop {
            if k & 1 == 1 {
                result = result.mul_filtered(&base, filter).expect("same ring");
            }
            k >>= 1;
            if k == 0 {
                return result;
            }
            base = base.square_filtered(filter);
        }
    }

    fn square_filtered(&self, filter: Option<&TruncatedRing>) -> Self {
        if C::CHAR_TWO {
            let terms = self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let sq = m.pow(2);
                    if let Some(ring) = filter {
                        if !ring.allows(&sq) {
                            return None;
                        }
                    }
                    Some((sq, c.clone()))
                })
                .collect();
            // Exponent doubling preserves the structural sort order.
            Poly {
                ring: self.ring.clone(),
                terms,
            }
        } else {
            self.mul_filtered(self, filter).expect("same ring")
        }
    }

    /// Ring-homomorphic substitution. `images[i]` is the image of variable
    /// `i` of this polynomial's ring, expressed in the target's variable set;
    /// every variable actually occurring must have an image. The result is
    /// reduced in `target` throughout.
    pub fn substitute(&self, images: &[Option<Poly<C>>], target: &TruncatedRing) -> Result<Poly<C>> {
        if images.len() != self.ring.nvars() {
            return Err(usage(format!(
                "substitution map covers {} variables, ring has {}",
                images.len(),
                self.ring.nvars()
            )));
        }
        for img in images.iter().flatten() {
            if img.ring() != target.vars() {
                return Err(usage("substitution image not in the target ring"));
            }
        }
        // Highest exponent needed per variable.
        let n = self.ring.nvars();
        let mut max_exp = vec![0u32; n];
        for (m, _) in &self.terms {
            for (i, slot) in max_exp.iter_mut().enumerate() {
                *slot = (*slot).max(m.exp(i));
            }
        }
        for (i, &e) in max_exp.iter().enumerate() {
            if e > 0 && images[i].is_none() {
                return Err(usage(format!(
                    "no substitution image for variable {}",
                    self.ring.name(i)
                )));
            }
        }
        // Memoized binary powering per variable, reduced in the target.
        let mut powers: Vec<PowerCache<C>> = images
            .iter()
            .map(|img| PowerCache::new(img.as_ref().map(|p| target.reduce(p))))
            .collect();
        let mut acc = Poly::zero(target.vars());
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(target.vars(), c.clone());
            for (i, cache) in powers.iter_mut().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    prod = prod.mul_filtered(cache.get(e, target), Some(target))?;
                }
            }
            acc = acc.try_add(&prod)?;
        }
        Ok(acc)
    }
}

impl Poly<F2> {
    /// The 2^k-th root over F2: succeeds when every exponent is divisible by
    /// 2^k (the inverse Frobenius); otherwise reports the offending monomial.
    pub fn root_pow2(&self, k: u32) -> std::result::Result<Poly<F2>, Monomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            match m.root_pow2(k) {
                Some(r) => terms.push((r, *c)),
                None => return Err(m.clone()),
            }
        }
        terms.sort_by(|(a, _), (b, _)| a.cmp(b));
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }
}

/// Powers of a fixed polynomial inside a truncated ring, computed by binary
/// powering and memoized per exponent.
pub(crate) struct PowerCache<C: Coefficient> {
    base: Option<Poly<C>>,
    memo: std::collections::HashMap<u32, Poly<C>>,
}

impl<C: Coefficient> PowerCache<C> {
    pub(crate) fn new(base: Option<Poly<C>>) -> Self {
        PowerCache {
            base,
            memo: std::collections::HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, e: u32, target: &TruncatedRing) -> &Poly<C> {
        debug_assert!(e >= 1);
        if !self.memo.contains_key(&e) {
            let value = if e == 1 {
                self.base.clone().expect("image present for used variable")
            } else if e.is_multiple_of(2) {
                self.get(e / 2, target).clone().square_filtered(Some(target))
            } else {
                let prev = self.get(e - 1, target).clone();
                let base = self.base.as_ref().expect("image present for used variable");
                prev.mul_filtered(base, Some(target)).expect("same ring")
            };
            self.memo.insert(e, value);
        }
        &self.memo[&e]
    }
}

fn merge_into<C: Coefficient>(acc: &mut BTreeMap<Monomial, C>, m: Monomial, c: C) {
    use std::collections::btree_map::Entry;
    match acc.entry(m) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            let s = e.get().add(&c);
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

impl TruncatedRing {
    /// Canonical-form reduction: drop every monomial that violates a cap or
    /// the degree bound. Idempotent, and a ring map by construction.
    pub fn reduce<C: Coefficient>(&self, p: &Poly<C>) -> Poly<C> {
        assert_eq!(p.ring(), self.vars());
        Poly {
            ring: p.ring.clone(),
            terms: p
                .terms
                .iter()
                .filter(|(m, _)| self.allows(m))
                .cloned()
                .collect(),
        }
    }
}

impl<C: Coefficient> std::ops::Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        self.try_add(rhs).expect("ring mismatch in +")
    }
}

impl<C: Coefficient> std::ops::Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        self.try_sub(rhs).expect("ring mismatch in -")
    }
}

impl<C: Coefficient> std::ops::Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        self.try_mul(rhs).expect("ring mismatch in *")
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<&(Monomial, C)> = self.terms.iter().collect();
        sorted.sort_by(|(a, _), (b, _)| self.ring.order().cmp(b, a));
        let rendered: Vec<String> = sorted
            .into_iter()
            .map(|(m, c)| {
                if m.is_one() {
                    return c.render();
                }
                let factors: Vec<String> = (0..self.ring.nvars())
                    .filter(|&i| m.exp(i) > 0)
                    .map(|i| {
                        if m.exp(i) == 1 {
                            self.ring.name(i).to_string()
                        } else {
                            format!("{}^{}", self.ring.name(i), m.exp(i))
                        }
                    })
                    .collect();
                let factors = factors.join("*");
                if c.is_one() {
                    factors
                } else {
                    format!("{}*{}", c.render(), factors)
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}
