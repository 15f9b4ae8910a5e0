//! Reduced Groebner bases over F2, normal forms, and standard-monomial
//! enumeration for zero-dimensional quotient dimension counts.
//!
//! Plain Buchberger with the Gebauer-Moeller pair criteria and the normal
//! selection strategy (smallest lcm first). S-polynomials of a batch are
//! reduced in parallel against a snapshot of the basis and installed
//! sequentially in a fixed order; since the reduced basis of an ideal is
//! unique for a given order, scheduling cannot leak into the result.

use crate::coeff::F2;
use crate::error::{usage, Error, Result};
use crate::f2mat::BitMatrix;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::par;
use crate::poly::Poly;
use crate::ring::VarSet;
use smallvec::SmallVec;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::Arc;

pub const DEFAULT_PAIR_BUDGET: usize = 2_000_000;

/// Pair budget, honoring the MORAVA_PAIR_BUDGET override.
pub fn pair_budget_from_env() -> usize {
    std::env::var("MORAVA_PAIR_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_PAIR_BUDGET)
}

#[derive(Clone, Copy, Debug)]
pub struct GbConfig {
    pub pair_budget: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            pair_budget: DEFAULT_PAIR_BUDGET,
        }
    }
}

/// An F2 polynomial as a term list sorted descending under a fixed order.
/// Coefficients are implicit (always 1), so sums are symmetric differences.
#[derive(Clone, Debug, PartialEq)]
struct OrdPoly {
    terms: Vec<Monomial>,
}

impl OrdPoly {
    fn from_poly(p: &Poly<F2>, order: &MonomialOrder) -> Self {
        let mut terms: Vec<Monomial> = p.terms().iter().map(|(m, _)| m.clone()).collect();
        terms.sort_by(|a, b| order.cmp(b, a));
        OrdPoly { terms }
    }

    fn to_poly(&self, ring: &Arc<VarSet>) -> Poly<F2> {
        Poly::from_terms(
            ring,
            self.terms.iter().map(|m| (m.clone(), F2(true))).collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &Monomial {
        &self.terms[0]
    }

    fn mul_monomial(&self, m: &Monomial) -> Self {
        OrdPoly {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    /// Symmetric difference of two descending term lists.
    fn add(&self, rhs: &Self, order: &MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match order.cmp(&self.terms[i], &rhs.terms[j]) {
                std::cmp::Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        OrdPoly { terms: out }
    }
}

fn s_poly(f: &OrdPoly, g: &OrdPoly, order: &MonomialOrder) -> OrdPoly {
    let lcm = f.lead().lcm(g.lead());
    let fm = f.lead().div_into(&lcm).expect("lead divides lcm");
    let gm = g.lead().div_into(&lcm).expect("lead divides lcm");
    f.mul_monomial(&fm).add(&g.mul_monomial(&gm), order)
}

/// Full normal form: every term of the result is reducible by no basis lead.
fn normal_form_ord(
    p: &OrdPoly,
    basis: &[OrdPoly],
    order: &MonomialOrder,
    skip: Option<usize>,
) -> OrdPoly {
    let mut out: Vec<Monomial> = Vec::new();
    let mut work = p.clone();
    let mut cursor = 0usize;
    while cursor < work.terms.len() {
        let t = work.terms[cursor].clone();
        let reducer = basis
            .iter()
            .enumerate()
            .find(|(k, g)| Some(*k) != skip && !g.is_zero() && g.lead().divides(&t));
        match reducer {
            Some((_, g)) => {
                let quot = g.lead().div_into(&t).expect("divides");
                // Terms above the cursor are untouched by construction.
                let tail = OrdPoly {
                    terms: work.terms[cursor..].to_vec(),
                };
                let reduced = tail.add(&g.mul_monomial(&quot), order);
                work.terms.truncate(cursor);
                work.terms.extend(reduced.terms);
            }
            None => {
                out.push(t);
                cursor += 1;
            }
        }
    }
    OrdPoly { terms: out }
}

type PairKey = SmallVec<[i64; 9]>;

struct PairQueue {
    heap: BinaryHeap<Reverse<(PairKey, usize, usize)>>,
    pending: HashSet<(usize, usize)>,
}

impl PairQueue {
    fn new() -> Self {
        PairQueue {
            heap: BinaryHeap::new(),
            pending: HashSet::new(),
        }
    }

    fn push(&mut self, key: PairKey, i: usize, j: usize) {
        self.pending.insert((i, j));
        self.heap.push(Reverse((key, i, j)));
    }

    fn cancel(&mut self, i: usize, j: usize) {
        self.pending.remove(&(i, j));
    }

    fn pop(&mut self) -> Option<(usize, usize)> {
        while let Some(Reverse((_, i, j))) = self.heap.pop() {
            if self.pending.remove(&(i, j)) {
                return Some((i, j));
            }
        }
        None
    }

    fn is_empty(&self) -> bool {
        self.pending.is_empty()
    }
}

/// Installs a new basis element's pairs using the Gebauer-Moeller criteria:
/// prune old pairs whose lcm is covered by the new lead, drop dominated new
/// pairs, collapse equal-lcm classes, and apply the product criterion.
fn update_pairs(
    queue: &mut PairQueue,
    leads: &[Monomial],
    n: usize,
    order: &MonomialOrder,
) {
    let lm_n = &leads[n];
    // B: old pending pairs strictly covered by the new lead.
    let old: Vec<(usize, usize)> = queue.pending.iter().copied().collect();
    for (i, j) in old {
        let lcm_ij = leads[i].lcm(&leads[j]);
        if lm_n.divides(&lcm_ij)
            && leads[i].lcm(lm_n) != lcm_ij
            && leads[j].lcm(lm_n) != lcm_ij
        {
            queue.cancel(i, j);
        }
    }
    // New pairs (i, n) with M (dominated lcm) and F (equal lcm) pruning.
    let lcms: Vec<Monomial> = (0..n).map(|i| leads[i].lcm(lm_n)).collect();
    let mut keep: Vec<usize> = Vec::new();
    'candidates: for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            if lcms[j].divides(&lcms[i]) && lcms[j] != lcms[i] {
                continue 'candidates;
            }
        }
        keep.push(i);
    }
    let mut by_lcm: HashMap<Monomial, Vec<usize>> = HashMap::new();
    for &i in &keep {
        by_lcm.entry(lcms[i].clone()).or_default().push(i);
    }
    let mut classes: Vec<(Monomial, Vec<usize>)> = by_lcm.into_iter().collect();
    classes.sort_by(|(a, _), (b, _)| order.key(a).cmp(&order.key(b)).then(a.cmp(b)));
    for (lcm, class) in classes {
        // The product criterion kills a whole equal-lcm class.
        if class.iter().any(|&i| leads[i].coprime(lm_n)) {
            continue;
        }
        let i = *class.iter().min().expect("nonempty class");
        queue.push(order.key(&lcm), i, n);
    }
}

/// A reduced Groebner basis over F2 for a fixed monomial order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<VarSet>,
    order: MonomialOrder,
    basis: Vec<Poly<F2>>,
    leads: Vec<Monomial>,
    ord: Vec<OrdPoly>,
}

/// Buchberger's algorithm; returns the unique reduced basis of the ideal
/// generated by `generators` under `order`.
pub fn buchberger(
    generators: &[Poly<F2>],
    order: &MonomialOrder,
    config: &GbConfig,
) -> Result<GroebnerBasis> {
    let ring = generators
        .first()
        .map(|p| p.ring().clone())
        .ok_or_else(|| usage("no generators given"))?;
    if order.nvars() != ring.nvars() {
        return Err(usage("order does not match the ring's variable count"));
    }
    for g in generators {
        if g.ring() != &ring {
            return Err(usage("generators live in different rings"));
        }
    }

    let mut basis: Vec<OrdPoly> = Vec::new();
    let mut queue = PairQueue::new();
    let mut leads: Vec<Monomial> = Vec::new();
    for g in generators {
        let p = OrdPoly::from_poly(g, order);
        if p.is_zero() {
            continue;
        }
        let n = basis.len();
        leads.push(p.lead().clone());
        basis.push(p);
        update_pairs(&mut queue, &leads, n, order);
    }

    let mut spent = 0usize;
    let batch_size = if cfg!(feature = "parallel") { 32 } else { 1 };
    while !queue.is_empty() {
        let mut batch: Vec<(usize, usize)> = Vec::with_capacity(batch_size);
        while batch.len() < batch_size {
            match queue.pop() {
                Some(pair) => batch.push(pair),
                None => break,
            }
        }
        spent += batch.len();
        if spent > config.pair_budget {
            return Err(Error::Budget {
                spent,
                limit: config.pair_budget,
            });
        }
        let snapshot = &basis;
        let reduced: Vec<OrdPoly> = par::map(batch, |(i, j)| {
            let s = s_poly(&snapshot[i], &snapshot[j], order);
            normal_form_ord(&s, snapshot, order, None)
        });
        for r in reduced {
            // Re-reduce against elements added earlier in this batch.
            let r = normal_form_ord(&r, &basis, order, None);
            if r.is_zero() {
                continue;
            }
            let n = basis.len();
            leads.push(r.lead().clone());
            basis.push(r);
            update_pairs(&mut queue, &leads, n, order);
        }
    }

    let basis = interreduce(basis, order);
    let leads = basis.iter().map(|g| g.lead().clone()).collect();
    Ok(GroebnerBasis {
        basis: basis.iter().map(|g| g.to_poly(&ring)).collect(),
        ring,
        order: order.clone(),
        leads,
        ord: basis,
    })
}

/// Minimalizes lead terms, then tail-reduces to the unique reduced basis.
fn interreduce(mut basis: Vec<OrdPoly>, order: &MonomialOrder) -> Vec<OrdPoly> {
    basis.retain(|g| !g.is_zero());
    basis.sort_by(|a, b| order.cmp(a.lead(), b.lead()).then(a.terms.cmp(&b.terms)));
    let mut minimal: Vec<OrdPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lead().divides(g.lead())) {
            minimal.push(g);
        }
    }
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let reduced = normal_form_ord(&minimal[i], &minimal, order, Some(i));
            if reduced != minimal[i] {
                debug_assert!(!reduced.is_zero());
                minimal[i] = reduced;
                changed = true;
            }
        }
        if !changed {
            return minimal;
        }
    }
}

/// Standard monomials of a zero-dimensional quotient, or the first variable
/// with no pure-power lead when the quotient is infinite-dimensional.
#[derive(Clone, Debug)]
pub enum StandardMonomials {
    Finite(Vec<Monomial>),
    Infinite { variable: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct IndependenceOutcome {
    pub independent: bool,
    pub rank: usize,
    pub count: usize,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<VarSet> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Poly<F2>] {
        &self.basis
    }

    pub fn lead_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    /// The unique remainder of `p` modulo the basis; zero iff `p` is in the
    /// ideal.
    pub fn normal_form(&self, p: &Poly<F2>) -> Result<Poly<F2>> {
        if p.ring() != &self.ring {
            return Err(usage("normal form of a polynomial from another ring"));
        }
        let nf = normal_form_ord(
            &OrdPoly::from_poly(p, &self.order),
            &self.ord,
            &self.order,
            None,
        );
        Ok(nf.to_poly(&self.ring))
    }

    /// Staircase enumeration of monomials not divisible by any lead.
    pub fn standard_monomials(&self) -> StandardMonomials {
        let n = self.ring.nvars();
        let mut bounds = Vec::with_capacity(n);
        for i in 0..n {
            let pure = self
                .leads
                .iter()
                .filter(|m| (0..n).all(|k| k == i || m.exp(k) == 0))
                .map(|m| m.exp(i))
                .min();
            match pure {
                Some(e) => bounds.push(e),
                None => return StandardMonomials::Infinite { variable: i },
            }
        }
        // Leads bucketed by their largest involved variable, so divisibility
        // can be decided as soon as the prefix is assigned.
        let mut buckets: Vec<Vec<&Monomial>> = vec![Vec::new(); n];
        for m in &self.leads {
            let top = (0..n).rev().find(|&k| m.exp(k) > 0).expect("nonconstant lead");
            buckets[top].push(m);
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        fn recurse(
            depth: usize,
            n: usize,
            bounds: &[u32],
            buckets: &[Vec<&Monomial>],
            exps: &mut Vec<u32>,
            out: &mut Vec<Monomial>,
        ) {
            if depth == n {
                out.push(Monomial::from_exponents(exps));
                return;
            }
            for e in 0..bounds[depth] {
                exps[depth] = e;
                // Divisibility by a lead supported on the assigned prefix is
                // monotone in e; the first hit prunes all larger exponents.
                let blocked = buckets[depth]
                    .iter()
                    .any(|m| (0..=depth).all(|k| m.exp(k) <= exps[k]));
                if blocked {
                    break;
                }
                recurse(depth + 1, n, bounds, buckets, exps, out);
            }
            exps[depth] = 0;
        }
        recurse(0, n, &bounds, &buckets, &mut exps, &mut out);
        StandardMonomials::Finite(out)
    }

    /// F2-linear independence of normal forms over the standard-monomial
    /// coordinates.
    pub fn independent_in_quotient(&self, polys: &[Poly<F2>]) -> Result<IndependenceOutcome> {
        let StandardMonomials::Finite(std_mons) = self.standard_monomials() else {
            return Err(usage("independence check needs a finite quotient"));
        };
        let index: HashMap<&Monomial, usize> =
            std_mons.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let nfs: Vec<Poly<F2>> = par::map(polys.to_vec(), |p| {
            self.normal_form(&p).expect("same ring")
        });
        let mut matrix = BitMatrix::zero(0, std_mons.len());
        for nf in &nfs {
            let mut row = vec![0u64; std_mons.len().div_ceil(64)];
            for (m, _) in nf.terms() {
                let col = *index
                    .get(m)
                    .expect("normal form terms are standard monomials");
                row[col / 64] |= 1 << (col % 64);
            }
            matrix.push_row(row);
        }
        let rank = matrix.rank();
        Ok(IndependenceOutcome {
            independent: rank == polys.len(),
            rank,
            count: polys.len(),
        })
    }

    /// Post-hoc Buchberger criterion: returns the first pair whose
    /// S-polynomial does not reduce to zero, if any.
    pub fn verify_buchberger_criterion(&self) -> Option<(usize, usize)> {
        for i in 0..self.ord.len() {
            for j in (i + 1)..self.ord.len() {
                let s = s_poly(&self.ord[i], &self.ord[j], &self.order);
                if !normal_form_ord(&s, &self.ord, &self.order, None).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Arc<VarSet> {
        VarSet::new(&["x", "y"])
    }

    fn lex_xy() -> MonomialOrder {
        MonomialOrder::lex(vec![0, 1])
    }

    #[test]
    fn coprime_leads_stay_put() {
        let r = ring2();
        let x2 = Poly::<F2>::var_pow(&r, 0, 2);
        let y2 = Poly::<F2>::var_pow(&r, 1, 2);
        let gb = buchberger(&[x2.clone(), y2.clone()], &lex_xy(), &GbConfig::default()).unwrap();
        assert_eq!(gb.elements(), &[y2, x2]);
        assert!(gb.verify_buchberger_criterion().is_none());
    }

    #[test]
    fn already_reduced_basis() {
        let r = ring2();
        let xy = &Poly::<F2>::var(&r, 0) + &Poly::<F2>::var(&r, 1);
        let y2 = Poly::<F2>::var_pow(&r, 1, 2);
        let gb = buchberger(&[xy.clone(), y2.clone()], &lex_xy(), &GbConfig::default()).unwrap();
        assert_eq!(gb.elements(), &[y2, xy]);
    }

    #[test]
    fn normal_forms() {
        let r = ring2();
        let x = Poly::<F2>::var(&r, 0);
        let y = Poly::<F2>::var(&r, 1);
        let gens = vec![&x.pow(2) + &y, y.pow(3)];
        let gb = buchberger(&gens, &lex_xy(), &GbConfig::default()).unwrap();
        for g in &gens {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
        assert_eq!(gb.normal_form(&Poly::one(&r)).unwrap(), Poly::one(&r));
        // Well-definedness: adding an ideal element does not change the NF.
        let p = &x.pow(5) + &y.pow(2);
        let nf1 = gb.normal_form(&p).unwrap();
        let nf2 = gb.normal_form(&(&p + &gens[0])).unwrap();
        assert_eq!(nf1, nf2);
        // Idempotence.
        assert_eq!(gb.normal_form(&nf1).unwrap(), nf1);
    }

    #[test]
    fn staircase_enumeration() {
        let r = ring2();
        let gens = vec![Poly::<F2>::var_pow(&r, 0, 2), Poly::<F2>::var_pow(&r, 1, 3)];
        let gb = buchberger(&gens, &lex_xy(), &GbConfig::default()).unwrap();
        match gb.standard_monomials() {
            StandardMonomials::Finite(mons) => assert_eq!(mons.len(), 6),
            StandardMonomials::Infinite { .. } => panic!("expected finite"),
        }

        let gens = vec![Poly::<F2>::var_pow(&r, 0, 2)];
        let gb = buchberger(&gens, &lex_xy(), &GbConfig::default()).unwrap();
        assert!(matches!(
            gb.standard_monomials(),
            StandardMonomials::Infinite { variable: 1 }
        ));
    }

    #[test]
    fn independence() {
        let r = ring2();
        let gens = vec![Poly::<F2>::var_pow(&r, 0, 2), Poly::<F2>::var_pow(&r, 1, 3)];
        let gb = buchberger(&gens, &lex_xy(), &GbConfig::default()).unwrap();
        let StandardMonomials::Finite(mons) = gb.standard_monomials() else {
            panic!()
        };
        let std_polys: Vec<Poly<F2>> = mons
            .iter()
            .map(|m| Poly::from_monomial(&r, m.clone()))
            .collect();
        let outcome = gb.independent_in_quotient(&std_polys).unwrap();
        assert!(outcome.independent);
        // p and p + g (g in the ideal) have equal normal forms.
        let p = Poly::<F2>::var(&r, 0);
        let dup = vec![p.clone(), &p + &gens[0]];
        let outcome = gb.independent_in_quotient(&dup).unwrap();
        assert!(!outcome.independent);
        assert_eq!(outcome.rank, 1);
    }

    #[test]
    fn budget_aborts() {
        let r = VarSet::new(&["x", "y", "z"]);
        let x = Poly::<F2>::var(&r, 0);
        let y = Poly::<F2>::var(&r, 1);
        let z = Poly::<F2>::var(&r, 2);
        // Leads x^2 y and x y^2 share the variable x, so the pair survives
        // the product criterion and must be popped.
        let gens = vec![
            &(&x.pow(2) * &y) + &z,
            &(&x * &y.pow(2)) + &x,
        ];
        let tiny = GbConfig { pair_budget: 0 };
        match buchberger(&gens, &MonomialOrder::degrevlex(3), &tiny) {
            Err(Error::Budget { .. }) => {}
            other => panic!("expected budget abort, got {other:?}"),
        }
    }

    #[test]
    fn shuffled_generators_same_reduced_basis() {
        let r = VarSet::new(&["x", "y", "z"]);
        let x = Poly::<F2>::var(&r, 0);
        let y = Poly::<F2>::var(&r, 1);
        let z = Poly::<F2>::var(&r, 2);
        let gens = vec![
            &(&x.pow(2) + &(&y * &z)) + &z,
            &y.pow(2) + &x,
            &(&z.pow(2) + &y) + &x,
            &(&x * &y) + &z.pow(2),
        ];
        let order = MonomialOrder::degrevlex(3);
        let gb1 = buchberger(&gens, &order, &GbConfig::default()).unwrap();
        let mut shuffled = gens.clone();
        shuffled.reverse();
        shuffled.swap(0, 1);
        let gb2 = buchberger(&shuffled, &order, &GbConfig::default()).unwrap();
        assert_eq!(gb1.elements(), gb2.elements());
        assert!(gb1.verify_buchberger_criterion().is_none());
    }
}
