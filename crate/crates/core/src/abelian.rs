//! The maximal abelian subgroup models: truncated polynomial rings with a
//! C2-involution, the restriction map from the presented ring, restriction
//! vanishing checks, and the free/trivial module decomposition.
//!
//! For g34/g35 the subgroup is C4 x C4, modeled as F2[u,v] with caps 2^(2s)
//! on both Euler classes; the involution inverts both line bundles, so it
//! sends each class to its 3-series. For g36/g37 the subgroup is
//! C4 x C2 x C2, modeled as F2[u,v,m] with caps (2^s, 2^(2s), 2^s); the
//! involution fixes m, inverts the order-4 class v, and twists u into the
//! formal sum F(u, m).
//!
//! Restriction images follow the Whitney sum: the first Chern class of the
//! restricted two-plane bundle is the plain sum of the two line classes
//! (1 + t applied to the class), the second is their product. The formal
//! group law only enters through tensor products of line bundles, i.e.
//! inside t itself and in the 2-series images of a and b.

use crate::coeff::F2;
use crate::error::{usage, Result};
use crate::f2mat::BitMatrix;
use crate::fgl::FglContext;
use crate::monomial::Monomial;
use crate::par;
use crate::poly::Poly;
use crate::presentations::{GroupId, GroupPresentation};
use crate::report::Check;
use crate::ring::{TruncatedRing, VarSet};
use std::collections::HashMap;
use std::sync::Arc;

/// K(s)*(BH) for the maximal abelian subgroup H, with its involution and the
/// restriction data for the eight presentation variables.
#[derive(Clone, Debug)]
pub struct AbelianModel {
    pub group: GroupId,
    pub s: u32,
    ring: TruncatedRing,
    /// Image of each ring variable under the deck involution t.
    t_images: Vec<Poly<F2>>,
    /// Image of each presentation variable (a, b, c, x1, x2, y1, y2, T)
    /// under the restriction map.
    rho_images: Vec<Poly<F2>>,
}

/// Free/trivial C2-module decomposition of the truncated ring: dim = 2f + tau
/// and the Euler characteristic contribution is chi = f + 2^s tau.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleDecomposition {
    pub dim: u64,
    pub f: u64,
    pub tau: u64,
    pub chi: u64,
}

/// Builds the abelian-subgroup model for a group at the context's height.
///
/// The context must be truncated at least at the largest total degree the
/// subgroup ring can carry, so that substituting into the formal group law
/// loses nothing.
pub fn abelian_model(group: GroupId, ctx: &FglContext) -> Result<AbelianModel> {
    let s = ctx.s();
    let q = 1u64 << s;
    let qq = 1u64 << (2 * s);
    let (vars, caps): (Arc<VarSet>, Vec<Option<u32>>) = if group.has_rank_three_subgroup() {
        (
            VarSet::new(&["u", "v", "m"]),
            vec![Some(q as u32), Some(qq as u32), Some(q as u32)],
        )
    } else {
        (
            VarSet::new(&["u", "v"]),
            vec![Some(qq as u32), Some(qq as u32)],
        )
    };
    let ring = TruncatedRing::new(vars.clone(), caps);
    let needed = ring.max_total_degree().expect("capped ring");
    if ctx.degree_bound() < needed {
        return Err(usage(format!(
            "context degree bound {} is insufficient for the subgroup ring (needs {})",
            ctx.degree_bound(),
            needed
        )));
    }

    let u = Poly::<F2>::var(&vars, 0);
    let v = Poly::<F2>::var(&vars, 1);
    let three = ctx.n_series(3)?;
    let three_v = three.substitute(&[Some(v.clone())], &ring)?;

    let (t_images, rho_images) = if group.has_rank_three_subgroup() {
        let m = Poly::<F2>::var(&vars, 2);
        let t_u = ctx.euler_sum(&u, &m, &ring)?;
        let t_images = vec![t_u.clone(), three_v.clone(), m.clone()];
        let x1 = &u + &t_u;
        let x2 = u.mul_in(&ring, &t_u)?;
        let y1 = &v + &three_v;
        let y2 = v.mul_in(&ring, &three_v)?;
        let t_class = &u.mul_in(&ring, &v)? + &t_u.mul_in(&ring, &three_v)?;
        let a = v.pow_in(&ring, q);
        let rho = vec![a, m, Poly::zero(&vars), x1, x2, y1, y2, t_class];
        (t_images, rho)
    } else {
        let three_u = three.substitute(&[Some(u.clone())], &ring)?;
        let t_images = vec![three_u.clone(), three_v.clone()];
        let x1 = &u + &three_u;
        let x2 = u.mul_in(&ring, &three_u)?;
        let y1 = &v + &three_v;
        let y2 = v.mul_in(&ring, &three_v)?;
        let t_class = &u.mul_in(&ring, &v)? + &three_u.mul_in(&ring, &three_v)?;
        let a = u.pow_in(&ring, q);
        let b = v.pow_in(&ring, q);
        let rho = vec![a, b, Poly::zero(&vars), x1, x2, y1, y2, t_class];
        (t_images, rho)
    };

    Ok(AbelianModel {
        group,
        s,
        ring,
        t_images,
        rho_images,
    })
}

impl AbelianModel {
    pub fn ring(&self) -> &TruncatedRing {
        &self.ring
    }

    pub fn rho_images(&self) -> &[Poly<F2>] {
        &self.rho_images
    }

    pub fn t_images(&self) -> &[Poly<F2>] {
        &self.t_images
    }

    /// Restriction of a polynomial in the presentation variables.
    pub fn restrict(&self, p: &Poly<F2>) -> Result<Poly<F2>> {
        let images: Vec<Option<Poly<F2>>> =
            self.rho_images.iter().cloned().map(Some).collect();
        p.substitute(&images, &self.ring)
    }

    /// The involution applied to an element of the subgroup ring.
    pub fn involution(&self, p: &Poly<F2>) -> Result<Poly<F2>> {
        let images: Vec<Option<Poly<F2>>> = self.t_images.iter().cloned().map(Some).collect();
        p.substitute(&images, &self.ring)
    }

    /// Per-variable t o t = id checks.
    pub fn involution_checks(&self) -> Result<Vec<Check>> {
        let vars = self.ring.vars().clone();
        let mut out = Vec::new();
        for i in 0..vars.nvars() {
            let twice = self.involution(&self.t_images[i])?;
            let expected = Poly::<F2>::var(&vars, i);
            let delta = &twice - &expected;
            out.push(Check::from_outcome(
                format!("involution_squares:{}", vars.name(i)),
                delta.is_zero(),
                witness(&delta),
            ));
        }
        Ok(out)
    }

    /// Restriction vanishing for every ideal generator and extra relation,
    /// plus t-invariance of every restricted presentation variable.
    pub fn verify_restrictions(&self, pres: &GroupPresentation) -> Result<Vec<Check>> {
        if pres.group != self.group || pres.s != self.s {
            return Err(usage("presentation does not match the model's group and height"));
        }
        let mut tasks: Vec<(String, Poly<F2>)> = Vec::new();
        for (name, gen) in pres.ideal() {
            tasks.push((format!("restrict:{name}"), gen.clone()));
        }
        for (name, gen) in pres.extra_relations() {
            tasks.push((format!("restrict_extra:{name}"), gen.clone()));
        }
        let mut checks: Vec<Check> = par::map(tasks, |(name, gen)| {
            let image = self.restrict(&gen).expect("model covers all variables");
            Check::from_outcome(name, image.is_zero(), witness(&image))
        });

        let pres_ring = pres.ring().clone();
        for (i, img) in self.rho_images.iter().enumerate() {
            let fixed = self.involution(img)?;
            let delta = &fixed - img;
            checks.push(Check::from_outcome(
                format!("t_invariant:{}", pres_ring.name(i)),
                delta.is_zero(),
                witness(&delta),
            ));
        }
        checks.extend(self.involution_checks()?);
        Ok(checks)
    }

    /// Rank of (1 + t) on the monomial basis, giving the free/trivial
    /// decomposition and the Euler characteristic chi = f + 2^s tau.
    pub fn decompose(&self) -> Result<ModuleDecomposition> {
        let monomials = self.ring.monomials()?;
        let dim = monomials.len();
        let index: HashMap<&Monomial, usize> =
            monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let vars = self.ring.vars().clone();
        let n = vars.nvars();

        // Power tables of the involution images, one per variable.
        let mut powers: Vec<Vec<Poly<F2>>> = Vec::with_capacity(n);
        for i in 0..n {
            let cap = self.ring.caps()[i].expect("capped ring") as usize;
            let mut chain = Vec::with_capacity(cap);
            chain.push(Poly::one(&vars));
            for e in 1..cap {
                chain.push(chain[e - 1].mul_in(&self.ring, &self.t_images[i])?);
            }
            powers.push(chain);
        }

        let words = dim.div_ceil(64);
        let rows: Vec<Vec<u64>> = par::map(monomials.clone(), |m| {
            let mut image = Poly::one(&vars);
            for (i, chain) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    image = image.mul_in(&self.ring, &chain[e]).expect("same ring");
                }
            }
            let mut row = vec![0u64; words];
            // (1 + t) m = m + t(m); shared monomials cancel.
            row[index[&m] / 64] ^= 1 << (index[&m] % 64);
            for (tm, _) in image.terms() {
                let col = index[tm];
                row[col / 64] ^= 1 << (col % 64);
            }
            row
        });

        let mut matrix = BitMatrix::zero(0, dim);
        for row in rows {
            matrix.push_row(row);
        }
        let f = matrix.rank() as u64;
        let dim = dim as u64;
        if 2 * f > dim {
            return Err(crate::error::internal(
                "rank of (1 + t) exceeds half the dimension; t is not an involution",
            ));
        }
        let tau = dim - 2 * f;
        let chi = f + (1u64 << self.s) * tau;
        Ok(ModuleDecomposition { dim, f, tau, chi })
    }
}

fn witness<C: crate::coeff::Coefficient>(p: &Poly<C>) -> Option<String> {
    p.min_degree_term().map(|(m, _)| {
        Poly::<F2>::from_monomial(&witness_ring(p.ring()), m.clone()).to_string()
    })
}

fn witness_ring(ring: &Arc<VarSet>) -> Arc<VarSet> {
    ring.clone()
}
