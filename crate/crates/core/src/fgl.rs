//! The height-s Honda formal group law at p = 2, constructed exactly.
//!
//! The law is built from its logarithm l(x) = sum_i x^(2^(si)) / 2^i over
//! exact rationals: F(x, y) = e(l(x) + l(y)) with e the compositional inverse
//! of l. Every coefficient of the truncated F is asserted 2-integral before
//! reduction mod 2, so the mod-2 law used everywhere downstream is exact up
//! to the requested degree, independent of any approximation formula. The
//! approximation formulas themselves are then theorems to check.

use crate::coeff::{is_two_integral, mod2, q, Coefficient, F2, Q};
use crate::error::{internal, usage, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::{TruncatedRing, VarSet};
use num_bigint::BigInt;
use num_traits::One;
use std::sync::Arc;

pub fn univariate_ring() -> Arc<VarSet> {
    VarSet::new(&["x"])
}

pub fn bivariate_ring() -> Arc<VarSet> {
    VarSet::new(&["x", "y"])
}

pub fn trivariate_ring() -> Arc<VarSet> {
    VarSet::new(&["x", "y", "z"])
}

/// The truncated Honda logarithm: sum of x^(2^(si)) / 2^i over all i with
/// 2^(si) <= degree.
pub fn honda_log(s: u32, degree: u64) -> Result<Poly<Q>> {
    if s < 2 {
        return Err(usage("height must be at least 2"));
    }
    if degree < 1 {
        return Err(usage("degree bound must be at least 1"));
    }
    let ring = univariate_ring();
    let mut terms = Vec::new();
    let mut i = 0u32;
    loop {
        let exp = 1u64.checked_shl(s * i).unwrap_or(u64::MAX);
        if exp > degree {
            break;
        }
        let denom = BigInt::one() << i;
        terms.push((
            Monomial::var_pow(1, 0, exp as u32),
            Q::new(BigInt::one(), denom),
        ));
        i += 1;
    }
    Ok(Poly::from_terms(&ring, terms))
}

/// Compositional inverse of a series l = x + (higher order), to the given
/// degree: returns e with e(l(x)) = l(e(x)) = x.
///
/// Solved by the contraction e <- x - h(e) with h = l - x; every pass gains
/// at least one correct degree, so stabilization is reached within `degree`
/// iterations.
pub fn series_reverse(l: &Poly<Q>, degree: u64) -> Result<Poly<Q>> {
    let ring = l.ring().clone();
    if ring.nvars() != 1 {
        return Err(usage("series reversal expects a univariate series"));
    }
    let x = Poly::<Q>::var(&ring, 0);
    if !l.constant_term().is_zero() || l.coefficient(&Monomial::var(1, 0)) != q(1, 1) {
        return Err(usage("series reversal needs l = x + higher-order terms"));
    }
    let trunc = TruncatedRing::degree_truncated(ring.clone(), degree);
    let h = trunc.reduce(&(l - &x));
    let mut e = x.clone();
    for _ in 0..=degree {
        let image = vec![Some(e.clone())];
        let next = &x - &h.substitute(&image, &trunc)?;
        if next == e {
            return Ok(e);
        }
        e = next;
    }
    Err(internal("series reversal failed to stabilize"))
}

/// Evaluates a univariate series at `g` inside `target` by Horner's rule.
/// Suited to dense series; the sparse case goes through `Poly::substitute`.
fn horner_compose(f: &Poly<Q>, g: &Poly<Q>, target: &TruncatedRing) -> Result<Poly<Q>> {
    let deg = f.total_degree().unwrap_or(0);
    let mut coeffs: Vec<Q> = vec![<Q as Coefficient>::zero(); deg as usize + 1];
    for (m, c) in f.terms() {
        coeffs[m.exp(0) as usize] = c.clone();
    }
    let mut acc = Poly::zero(target.vars());
    for k in (0..=deg as usize).rev() {
        acc = acc.mul_in(target, g)?;
        if !coeffs[k].is_zero() {
            acc = acc.try_add(&Poly::constant(target.vars(), coeffs[k].clone()))?;
        }
    }
    Ok(acc)
}

/// Mod-2 reduction of an exact rational polynomial; fails on the first
/// non-2-integral coefficient.
pub fn reduce_mod2(p: &Poly<Q>) -> std::result::Result<Poly<F2>, Monomial> {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        if !is_two_integral(c) {
            return Err(m.clone());
        }
        if mod2(c).expect("checked 2-integral").is_one() {
            terms.push((m.clone(), F2(true)));
        }
    }
    Ok(Poly::from_terms(p.ring(), terms))
}

/// The mod-2 Honda formal group law of height s, exact up to a total-degree
/// bound, together with the series machinery that depends on it.
#[derive(Clone, Debug)]
pub struct FglContext {
    s: u32,
    degree_bound: u64,
    f: Poly<F2>,
    uni: Arc<VarSet>,
    biv: Arc<VarSet>,
}

impl FglContext {
    /// Builds F = e(l(x) + l(y)) over exact rationals, asserts 2-integrality
    /// of every coefficient, reduces mod 2 and sanity-checks unitality and
    /// commutativity of the result.
    pub fn new(s: u32, degree_bound: u64) -> Result<Self> {
        if s < 2 {
            return Err(usage("height must be at least 2"));
        }
        if degree_bound < 1 {
            return Err(usage("degree bound must be at least 1"));
        }
        let uni = univariate_ring();
        let biv = bivariate_ring();
        let l = honda_log(s, degree_bound)?;
        let e = series_reverse(&l, degree_bound)?;
        let trunc = TruncatedRing::degree_truncated(biv.clone(), degree_bound);
        let x = Poly::<Q>::var(&biv, 0);
        let y = Poly::<Q>::var(&biv, 1);
        let lx = l.substitute(&[Some(x.clone())], &trunc)?;
        let ly = l.substitute(&[Some(y.clone())], &trunc)?;
        let w = lx.try_add(&ly)?;
        let f_rational = horner_compose(&e, &w, &trunc)?;
        let f = reduce_mod2(&f_rational).map_err(|m| {
            internal(format!(
                "non-2-integral coefficient of the formal group law at {:?}",
                m.exponents()
            ))
        })?;
        let ctx = FglContext {
            s,
            degree_bound,
            f,
            uni,
            biv,
        };
        if ctx.apply_univariate(&Poly::var(&ctx.uni, 0), &Poly::zero(&ctx.uni))?
            != Poly::var(&ctx.uni, 0)
        {
            return Err(internal("formal group law is not unital"));
        }
        let swapped = ctx.f.substitute(
            &[Some(Poly::var(&ctx.biv, 1)), Some(Poly::var(&ctx.biv, 0))],
            &trunc_f2(&ctx.biv, degree_bound),
        )?;
        if swapped != ctx.f {
            return Err(internal("formal group law is not commutative"));
        }
        Ok(ctx)
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    /// F(x, y) mod 2 on the ring ["x", "y"].
    pub fn fgl(&self) -> &Poly<F2> {
        &self.f
    }

    pub fn univariate(&self) -> &Arc<VarSet> {
        &self.uni
    }

    pub fn bivariate(&self) -> &Arc<VarSet> {
        &self.biv
    }

    /// F truncated to a smaller total degree.
    pub fn fgl_at(&self, degree: u64) -> Result<Poly<F2>> {
        if degree > self.degree_bound {
            return Err(usage(format!(
                "requested degree {} exceeds the context bound {}",
                degree, self.degree_bound
            )));
        }
        Ok(trunc_f2(&self.biv, degree).reduce(&self.f))
    }

    /// F(p, q) reduced in `target`; the workhorse behind the n-series and
    /// Euler-class sums. The arguments must live in `target`'s variable set.
    pub fn apply(&self, p: &Poly<F2>, q: &Poly<F2>, target: &TruncatedRing) -> Result<Poly<F2>> {
        self.f
            .substitute(&[Some(p.clone()), Some(q.clone())], target)
    }

    fn apply_univariate(&self, p: &Poly<F2>, q: &Poly<F2>) -> Result<Poly<F2>> {
        let target = TruncatedRing::degree_truncated(self.uni.clone(), self.degree_bound);
        self.apply(p, q, &target)
    }

    /// The n-series [n](x) up to the context degree bound; n = -1 is the
    /// formal inverse.
    pub fn n_series(&self, n: i64) -> Result<Poly<F2>> {
        if n < -1 {
            return Err(usage("n-series is defined for n >= -1 here"));
        }
        if n == -1 {
            return self.formal_inverse();
        }
        let x = Poly::<F2>::var(&self.uni, 0);
        let mut acc = Poly::zero(&self.uni);
        for _ in 0..n {
            acc = self.apply_univariate(&x, &acc)?;
        }
        Ok(acc)
    }

    /// The formal inverse: the unique series i(x) with F(x, i(x)) = 0 up to
    /// the degree bound, found by the fixed-point iteration i <- i + F(x, i).
    pub fn formal_inverse(&self) -> Result<Poly<F2>> {
        let x = Poly::<F2>::var(&self.uni, 0);
        let mut inv = x.clone();
        for _ in 0..=self.degree_bound {
            let next = inv.try_add(&self.apply_univariate(&x, &inv)?)?;
            if next == inv {
                return Ok(inv);
            }
            inv = next;
        }
        Err(internal(
            "formal inverse iteration failed to stabilize within the degree bound",
        ))
    }

    /// Euler class of a tensor product: F(e1, e2) reduced in `ring`.
    ///
    /// Requires nilpotent arguments (no constant term) and a context degree
    /// bound at least the largest total degree the ring can carry, so that
    /// truncating F loses nothing after reduction.
    pub fn euler_sum(
        &self,
        e1: &Poly<F2>,
        e2: &Poly<F2>,
        ring: &TruncatedRing,
    ) -> Result<Poly<F2>> {
        if e1.ring() != ring.vars() || e2.ring() != ring.vars() {
            return Err(usage("euler_sum arguments must live in the target ring"));
        }
        if !e1.constant_term().is_zero() || !e2.constant_term().is_zero() {
            return Err(usage("euler_sum arguments must be nilpotent"));
        }
        let needed = ring
            .max_total_degree()
            .ok_or_else(|| usage("euler_sum needs a degreewise bounded ring"))?;
        if self.degree_bound < needed {
            return Err(usage(format!(
                "context degree bound {} is insufficient; the ring reaches degree {}",
                self.degree_bound, needed
            )));
        }
        self.apply(e1, e2, ring)
    }
}

fn trunc_f2(vars: &Arc<VarSet>, degree: u64) -> TruncatedRing {
    TruncatedRing::degree_truncated(vars.clone(), degree)
}

/// e(l(x)) - x up to `degree`; zero iff the logarithm and its reversal
/// compose to the identity.
pub fn roundtrip_difference(s: u32, degree: u64) -> Result<Poly<Q>> {
    let l = honda_log(s, degree)?;
    let e = series_reverse(&l, degree)?;
    let ring = l.ring().clone();
    let trunc = TruncatedRing::degree_truncated(ring.clone(), degree);
    let composed = e.substitute(&[Some(l.clone())], &trunc)?;
    composed.try_sub(&Poly::var(&ring, 0))
}

/// F(x, 0) - x up to `degree`.
pub fn unitality_difference(ctx: &FglContext, degree: u64) -> Result<Poly<F2>> {
    let uni = ctx.univariate().clone();
    let target = trunc_f2(&uni, degree);
    let f = ctx.fgl_at(degree)?;
    let fx0 = f.substitute(&[Some(Poly::var(&uni, 0)), Some(Poly::zero(&uni))], &target)?;
    fx0.try_add(&Poly::var(&uni, 0))
}

/// F(x, y) - F(y, x) up to `degree`.
pub fn commutativity_difference(ctx: &FglContext, degree: u64) -> Result<Poly<F2>> {
    let biv = ctx.bivariate().clone();
    let target = trunc_f2(&biv, degree);
    let f = ctx.fgl_at(degree)?;
    let swapped = f.substitute(
        &[Some(Poly::var(&biv, 1)), Some(Poly::var(&biv, 0))],
        &target,
    )?;
    f.try_add(&swapped)
}

/// F(F(x,y), z) - F(x, F(y,z)) up to `degree`, compared in F2[x,y,z].
pub fn associativity_difference(ctx: &FglContext, degree: u64) -> Result<Poly<F2>> {
    let tri = trivariate_ring();
    let target = trunc_f2(&tri, degree);
    let x = Poly::<F2>::var(&tri, 0);
    let y = Poly::<F2>::var(&tri, 1);
    let z = Poly::<F2>::var(&tri, 2);
    let f = ctx.fgl_at(degree)?;
    let fxy = f.substitute(&[Some(x.clone()), Some(y.clone())], &target)?;
    let fyz = f.substitute(&[Some(y.clone()), Some(z.clone())], &target)?;
    let left = f.substitute(&[Some(fxy), Some(z.clone())], &target)?;
    let right = f.substitute(&[Some(x.clone()), Some(fyz)], &target)?;
    left.try_add(&right)
}

/// [2](x) - x^(2^s) up to `degree`.
pub fn two_series_difference(ctx: &FglContext, degree: u64) -> Result<Poly<F2>> {
    let uni = ctx.univariate().clone();
    let target = trunc_f2(&uni, degree);
    let two = target.reduce(&ctx.n_series(2)?);
    let q = 1u64 << ctx.s();
    let frob = if q <= degree {
        Poly::var_pow(&uni, 0, q as u32)
    } else {
        Poly::zero(&uni)
    };
    two.try_add(&frob)
}

/// Splitting-principle total-Chern-class identity for the tensor square of a
/// two-plane bundle, checked in F2[x, y] up to total degree `degree`:
///
///   (1 + [2](x)) (1 + F(x,y))^2 (1 + [2](y))
///     = (1 + F(x,y)^2) (1 + (x+y)^(2^s) + (xy)^(2^s)).
///
/// Returns the difference of the two sides; empty means the identity holds.
pub fn tensor_square_difference(ctx: &FglContext, degree: u64) -> Result<Poly<F2>> {
    let biv = ctx.bivariate().clone();
    let ring = trunc_f2(&biv, degree);
    let one = Poly::<F2>::one(&biv);
    let x = Poly::<F2>::var(&biv, 0);
    let y = Poly::<F2>::var(&biv, 1);
    let f = ctx.fgl_at(degree)?;
    let two_series = ctx.n_series(2)?;
    let n2x = two_series.substitute(&[Some(x.clone())], &ring)?;
    let n2y = two_series.substitute(&[Some(y.clone())], &ring)?;
    let q = 1u64 << ctx.s();

    let lhs = one
        .try_add(&n2x)?
        .mul_in(&ring, &one.try_add(&f)?.pow_in(&ring, 2))?
        .mul_in(&ring, &one.try_add(&n2y)?)?;

    let sum_pow = x.try_add(&y)?.pow_in(&ring, q);
    let prod_pow = x.mul_in(&ring, &y)?.pow_in(&ring, q);
    let rhs = one
        .try_add(&f.pow_in(&ring, 2))?
        .mul_in(&ring, &one.try_add(&sum_pow)?.try_add(&prod_pow)?)?;

    lhs.try_add(&rhs)
}

/// Outcome of checking the approximation F = x + y + Phi^(2^(s-1)) with
/// Phi = xy + (xy)^(2^(s-1))(x+y) modulo ((xy)(x+y))^(2^(s-1)).
#[derive(Clone, Debug)]
pub enum PhiOutcome {
    /// F - x - y failed to be a 2^(s-1)-th power at this monomial.
    NotAPower(Monomial),
    /// The root exists; `remainder` is what is left of
    /// Phi - xy - (xy)^(2^(s-1))(x+y) after reduction by the principal ideal
    /// generator ((xy)(x+y))^(2^(s-1)). Empty means the approximation holds.
    Checked {
        phi: Poly<F2>,
        remainder: Poly<F2>,
    },
}

impl PhiOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, PhiOutcome::Checked { remainder, .. } if remainder.is_zero())
    }
}

/// Extracts Phi = (F - x - y)^(1 / 2^(s-1)) from a context truncated at
/// `degree` and reduces it against the approximation fragment. The root is
/// valid up to degree / 2^(s-1).
pub fn phi_approximation(ctx: &FglContext, degree: u64) -> Result<PhiOutcome> {
    let biv = ctx.bivariate().clone();
    let x = Poly::<F2>::var(&biv, 0);
    let y = Poly::<F2>::var(&biv, 1);
    let f = ctx.fgl_at(degree)?;
    let k = ctx.s() - 1;
    let diff = f.try_add(&x)?.try_add(&y)?;
    let phi = match diff.root_pow2(k) {
        Ok(p) => p,
        Err(m) => return Ok(PhiOutcome::NotAPower(m)),
    };
    let phi_degree = degree >> k;
    let ring = trunc_f2(&biv, phi_degree);
    let half = 1u64 << k;
    let xy = x.mul_in(&ring, &y)?;
    let fragment = xy.try_add(&xy.pow_in(&ring, half).mul_in(&ring, &x.try_add(&y)?)?)?;
    let delta = ring.reduce(&phi.try_add(&fragment)?);
    // Membership in the principal ideal generated by ((xy)(x+y))^(2^(s-1)):
    // the generator is homogeneous, so division works degree by degree and a
    // zero remainder is decisive on the truncation.
    let generator = xy
        .mul_in(&ring, &x.try_add(&y)?)?
        .pow_in(&ring, half);
    let remainder = reduce_by_single(&delta, &generator);
    Ok(PhiOutcome::Checked { phi, remainder })
}

/// Remainder of `p` under repeated subtraction of monomial multiples of `g`
/// (single-divisor polynomial division over F2, degrevlex leading terms).
fn reduce_by_single(p: &Poly<F2>, g: &Poly<F2>) -> Poly<F2> {
    let order = p.ring().order().clone();
    let Some((g_lead, _)) = g.leading(&order).map(|(m, c)| (m.clone(), *c)) else {
        return p.clone();
    };
    let mut rem = Poly::zero(p.ring());
    let mut work = p.clone();
    while let Some((lead, _)) = work.leading(&order).map(|(m, c)| (m.clone(), *c)) {
        if let Some(quot) = g_lead.div_into(&lead) {
            work = work.try_add(&g.mul_monomial(&quot)).expect("same ring");
        } else {
            let t = Poly::from_monomial(work.ring(), lead);
            rem = rem.try_add(&t).expect("same ring");
            work = work.try_add(&t).expect("same ring");
        }
    }
    rem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn honda_log_instances() {
        let l = honda_log(2, 16).unwrap();
        let expected = Poly::from_terms(
            l.ring(),
            vec![
                (Monomial::var_pow(1, 0, 1), q(1, 1)),
                (Monomial::var_pow(1, 0, 4), q(1, 2)),
                (Monomial::var_pow(1, 0, 16), q(1, 4)),
            ],
        );
        assert_eq!(l, expected);

        let l = honda_log(3, 8).unwrap();
        let expected = Poly::from_terms(
            l.ring(),
            vec![
                (Monomial::var_pow(1, 0, 1), q(1, 1)),
                (Monomial::var_pow(1, 0, 8), q(1, 2)),
            ],
        );
        assert_eq!(l, expected);

        let l = honda_log(2, 1).unwrap();
        assert_eq!(l, Poly::var(l.ring(), 0));
        assert!(honda_log(1, 8).is_err());
    }

    #[test]
    fn reversal_identity_series() {
        let ring = univariate_ring();
        let x = Poly::<Q>::var(&ring, 0);
        assert_eq!(series_reverse(&x, 10).unwrap(), x);
    }

    #[test]
    fn reversal_composes_to_identity() {
        // l = x + x^2, checked by direct composition both ways.
        let ring = univariate_ring();
        let x = Poly::<Q>::var(&ring, 0);
        let l = &x + &x.pow(2);
        let d = 12;
        let e = series_reverse(&l, d).unwrap();
        let trunc = TruncatedRing::degree_truncated(ring.clone(), d);
        assert_eq!(e.substitute(&[Some(l.clone())], &trunc).unwrap(), x);
        assert_eq!(l.substitute(&[Some(e.clone())], &trunc).unwrap(), x);
        // Reversal is an involution.
        assert_eq!(series_reverse(&e, d).unwrap(), trunc.reduce(&l));
        // Leading coefficient != 1 is a usage error.
        assert!(series_reverse(&x.pow(2), 8).is_err());
        assert!(series_reverse(&l.scale(&q(2, 1)), 8).is_err());
    }

    #[test]
    fn honda_roundtrip() {
        for (s, d) in [(2u32, 40u64), (3, 40)] {
            let l = honda_log(s, d).unwrap();
            let e = series_reverse(&l, d).unwrap();
            let ring = l.ring().clone();
            let trunc = TruncatedRing::degree_truncated(ring.clone(), d);
            let x = Poly::<Q>::var(&ring, 0);
            assert_eq!(e.substitute(&[Some(l.clone())], &trunc).unwrap(), x);
        }
    }

    #[test]
    fn fgl_s2_low_degree_table() {
        // Exact F for s=2 through total degree 12:
        // x + y + x^2 y^2 + x^6 y^4 + x^4 y^6.
        let ctx = FglContext::new(2, 12).unwrap();
        assert_eq!(
            ctx.fgl().to_string(),
            "x^6*y^4 + x^4*y^6 + x^2*y^2 + x + y"
        );
    }

    #[test]
    fn fgl_s3_low_degree_table() {
        // Exact F for s=3 through total degree 24: x + y + x^4 y^4.
        let ctx = FglContext::new(3, 24).unwrap();
        assert_eq!(ctx.fgl().to_string(), "x^4*y^4 + x + y");
    }

    #[test]
    fn n_series_basics() {
        let ctx = FglContext::new(2, 20).unwrap();
        let x = Poly::<F2>::var(ctx.univariate(), 0);
        assert!(ctx.n_series(0).unwrap().is_zero());
        assert_eq!(ctx.n_series(1).unwrap(), x);
        assert_eq!(ctx.n_series(2).unwrap(), x.pow(4));
        assert!(ctx.n_series(-2).is_err());
    }

    #[test]
    fn formal_inverse_is_an_inverse() {
        let ctx = FglContext::new(2, 24).unwrap();
        let x = Poly::<F2>::var(ctx.univariate(), 0);
        let inv = ctx.formal_inverse().unwrap();
        assert_eq!(inv.terms()[0].0, Monomial::var(1, 0), "starts at x");
        let target = TruncatedRing::degree_truncated(ctx.univariate().clone(), 24);
        assert!(ctx.apply(&x, &inv, &target).unwrap().is_zero());
        // Involution.
        let twice = inv.substitute(&[Some(inv.clone())], &target).unwrap();
        assert_eq!(twice, x);
    }

    #[test]
    fn euler_sum_basics() {
        let ctx = FglContext::new(2, 16).unwrap();
        let vars = VarSet::new(&["b", "c"]);
        let ring = TruncatedRing::new(vars.clone(), vec![Some(4), Some(4)]);
        let b = Poly::<F2>::var(&vars, 0);
        let c = Poly::<F2>::var(&vars, 1);
        // Unitality.
        assert_eq!(
            ctx.euler_sum(&b, &Poly::zero(&vars), &ring).unwrap(),
            b
        );
        // In caps (4, 4) the exact law collapses to its low-order fragment:
        // F(b, c) = b + c + (bc)^2 with no correction terms.
        let fbc = ctx.euler_sum(&b, &c, &ring).unwrap();
        let fragment = &(&b + &c) + &(&b * &c).pow(2);
        assert_eq!(fbc, fragment);
        // Associativity collapses F(b, F(b, c)) = F([2](b), c) = c here,
        // because b^4 = 0 under the caps.
        let nested = ctx.euler_sum(&b, &fbc, &ring).unwrap();
        assert_eq!(nested, c);
        // Inverse law: F(e, [-1](e)) = 0.
        let inv = ctx.formal_inverse().unwrap();
        let inv_b = inv.substitute(&[Some(b.clone())], &ring).unwrap();
        assert!(ctx.euler_sum(&b, &inv_b, &ring).unwrap().is_zero());
        // Insufficient degree bound is a usage error.
        let small = FglContext::new(2, 4).unwrap();
        assert!(small.euler_sum(&b, &c, &ring).is_err());
    }

    #[test]
    fn tensor_square_identity_and_mutation() {
        let ctx = FglContext::new(2, 24).unwrap();
        assert!(tensor_square_difference(&ctx, 24).unwrap().is_zero());

        // Dropping the (xy)^(2^s) term must produce a localized difference.
        let biv = ctx.bivariate().clone();
        let ring = trunc_f2(&biv, 24);
        let one = Poly::<F2>::one(&biv);
        let x = Poly::<F2>::var(&biv, 0);
        let y = Poly::<F2>::var(&biv, 1);
        let f = ctx.fgl_at(24).unwrap();
        let two = ctx.n_series(2).unwrap();
        let n2x = two.substitute(&[Some(x.clone())], &ring).unwrap();
        let n2y = two.substitute(&[Some(y.clone())], &ring).unwrap();
        let lhs = one
            .try_add(&n2x)
            .unwrap()
            .mul_in(&ring, &one.try_add(&f).unwrap().pow_in(&ring, 2))
            .unwrap()
            .mul_in(&ring, &one.try_add(&n2y).unwrap())
            .unwrap();
        let sum_pow = x.try_add(&y).unwrap().pow_in(&ring, 4);
        let mutated_rhs = one
            .try_add(&f.pow_in(&ring, 2))
            .unwrap()
            .mul_in(&ring, &one.try_add(&sum_pow).unwrap())
            .unwrap();
        let diff = lhs.try_add(&mutated_rhs).unwrap();
        assert!(!diff.is_zero());
        let witness = diff.min_degree_term().unwrap().0.clone();
        assert_eq!(witness, Monomial::from_exponents(&[4, 4]));
    }

    #[test]
    fn phi_approximation_holds() {
        let ctx = FglContext::new(2, 24).unwrap();
        match phi_approximation(&ctx, 24).unwrap() {
            PhiOutcome::Checked { phi, remainder } => {
                assert!(remainder.is_zero());
                // Phi starts as xy + (xy)^2 (x+y).
                let biv = ctx.bivariate();
                let x = Poly::<F2>::var(biv, 0);
                let y = Poly::<F2>::var(biv, 1);
                let xy = &x * &y;
                let low = TruncatedRing::degree_truncated(biv.clone(), 7);
                assert_eq!(
                    low.reduce(&phi),
                    low.reduce(&(&xy + &(&xy.pow(2) * &(&x + &y))))
                );
            }
            PhiOutcome::NotAPower(m) => panic!("root extraction failed at {m:?}"),
        }
    }

    #[test]
    fn two_series_is_frobenius_power() {
        for s in [2u32, 3] {
            let ctx = FglContext::new(s, 40).unwrap();
            let x = Poly::<F2>::var(ctx.univariate(), 0);
            assert_eq!(ctx.n_series(2).unwrap(), x.pow(1 << s));
        }
    }
}
