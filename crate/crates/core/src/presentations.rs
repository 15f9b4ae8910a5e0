//! The presented relation ideals K(s)*[a,b,c,x1,x2,y1,y2,T] / R for the four
//! groups, one ideal per (group, height).
//!
//! The x1/y1 classes satisfy implicit equations (their defining polynomials
//! contain themselves); they are adjoined as ring variables with those
//! equations as generators, which has a unique solution in the quotient where
//! x2, y2 are nilpotent. The dimension check validates the adjunction.
//!
//! For g36/g37 the ideal pairs a with the y-classes and b with the x-classes
//! in every generator. For g34/g35 the transfer-product, T-linear and
//! determinant (x1/y1 definition) generators pair a with the x-classes and b
//! with the y-classes; the annihilator and power-decomposition generators are
//! encoded with that same pairing, which is the one fixed by the line-bundle
//! data (x-classes are Chern classes of the induced bundle whose determinant
//! enters the x1 definition). The restriction and dimension checks pin this
//! pairing down; see the g34/g35 tests.

use crate::coeff::F2;
use crate::error::{usage, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Poly;
use crate::ring::VarSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub const VAR_A: usize = 0;
pub const VAR_B: usize = 1;
pub const VAR_C: usize = 2;
pub const VAR_X1: usize = 3;
pub const VAR_X2: usize = 4;
pub const VAR_Y1: usize = 5;
pub const VAR_Y2: usize = 6;
pub const VAR_T: usize = 7;

/// The common ambient ring of all four presentations.
pub fn presentation_ring() -> Arc<VarSet> {
    VarSet::new(&["a", "b", "c", "x1", "x2", "y1", "y2", "T"])
}

/// Default order for dimension counting.
pub fn degrevlex_order() -> MonomialOrder {
    MonomialOrder::degrevlex(8)
}

/// Lexicographic order with priority (T, a, b, y2, x2, y1, x1, c), the one
/// used for quotient-basis experiments.
pub fn lex_quotient_order() -> MonomialOrder {
    MonomialOrder::lex(vec![VAR_T, VAR_A, VAR_B, VAR_Y2, VAR_X2, VAR_Y1, VAR_X1, VAR_C])
}

/// Lexicographic order with priority (T, x1, y1, a, b, x2, y2, c), the one
/// used for kernel-basis experiments.
pub fn lex_kernel_order() -> MonomialOrder {
    MonomialOrder::lex(vec![VAR_T, VAR_X1, VAR_Y1, VAR_A, VAR_B, VAR_X2, VAR_Y2, VAR_C])
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GroupId {
    G34,
    G35,
    G36,
    G37,
}

impl GroupId {
    pub const ALL: [GroupId; 4] = [GroupId::G34, GroupId::G35, GroupId::G36, GroupId::G37];

    /// True for the two (C4 x C2 x C2)-extensions g36/g37, false for the
    /// (C4 x C4)-extensions g34/g35.
    pub fn has_rank_three_subgroup(self) -> bool {
        matches!(self, GroupId::G36 | GroupId::G37)
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            GroupId::G34 => "g34",
            GroupId::G35 => "g35",
            GroupId::G36 => "g36",
            GroupId::G37 => "g37",
        };
        write!(f, "{name}")
    }
}

impl FromStr for GroupId {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g34" | "34" => Ok(GroupId::G34),
            "g35" | "35" => Ok(GroupId::G35),
            "g36" | "36" => Ok(GroupId::G36),
            "g37" | "37" => Ok(GroupId::G37),
            other => Err(usage(format!("unknown group '{other}' (expected g34..g37)"))),
        }
    }
}

/// Euler characteristic of the presented ring: (16^s - 4^s)/2 + 8^s.
pub fn expected_chi(s: u32) -> u64 {
    assert!((1..=15).contains(&s), "height out of supported range");
    let p16 = 16u128.pow(s);
    let p4 = 4u128.pow(s);
    let p8 = 8u128.pow(s);
    ((p16 - p4) / 2 + p8) as u64
}

/// A group's relation data at a fixed height.
#[derive(Clone, Debug)]
pub struct GroupPresentation {
    pub group: GroupId,
    pub s: u32,
    ring: Arc<VarSet>,
    ideal: Vec<(String, Poly<F2>)>,
    extra: Vec<(String, Poly<F2>)>,
    pub expected_dimension: u64,
}

impl GroupPresentation {
    pub fn ring(&self) -> &Arc<VarSet> {
        &self.ring
    }

    /// The defining generators, in a fixed order, with stable names.
    pub fn ideal(&self) -> &[(String, Poly<F2>)] {
        &self.ideal
    }

    pub fn ideal_polys(&self) -> Vec<Poly<F2>> {
        self.ideal.iter().map(|(_, p)| p.clone()).collect()
    }

    /// Consequence relations: derived identities plus the minimal
    /// slice a^i c^j, b^i c^j with i + j = 2^s + 1 that generates all higher
    /// vanishing products.
    pub fn extra_relations(&self) -> &[(String, Poly<F2>)] {
        &self.extra
    }

    /// Replaces a named generator; used by the negative-control tests to
    /// confirm the suite detects single-generator mutations.
    pub fn with_replaced_generator(&self, name: &str, poly: Poly<F2>) -> GroupPresentation {
        let mut out = self.clone();
        let slot = out
            .ideal
            .iter_mut()
            .find(|(n, _)| n == name)
            .unwrap_or_else(|| panic!("no generator named {name}"));
        slot.1 = poly;
        out
    }
}

struct Gens {
    ring: Arc<VarSet>,
    s: u32,
}

impl Gens {
    fn v(&self, i: usize) -> Poly<F2> {
        Poly::var(&self.ring, i)
    }

    fn vp(&self, i: usize, e: u32) -> Poly<F2> {
        if e == 0 {
            Poly::one(&self.ring)
        } else {
            Poly::var_pow(&self.ring, i, e)
        }
    }

    fn mono(&self, pairs: &[(usize, u32)]) -> Poly<F2> {
        let mut exps = [0u32; 8];
        for &(i, e) in pairs {
            exps[i] += e;
        }
        Poly::from_monomial(&self.ring, Monomial::from_exponents(&exps))
    }

    fn q(&self) -> u32 {
        1 << self.s
    }

    fn half(&self) -> u32 {
        1 << (self.s - 1)
    }

    /// sum over i = 1..s-1 of w^(2^s - 2^i) * c2^(2^(i-1)).
    fn tr_tail(&self, w: usize, c2: usize) -> Poly<F2> {
        let mut acc = Poly::zero(&self.ring);
        for i in 1..self.s {
            let term = self.mono(&[(w, self.q() - (1 << i)), (c2, 1 << (i - 1))]);
            acc = &acc + &term;
        }
        acc
    }

    /// w + c1 + tr_tail(w, c2): the transferred first Chern class pattern.
    fn tr_sum(&self, w: usize, c1: usize, c2: usize) -> Poly<F2> {
        &(&self.v(w) + &self.v(c1)) + &self.tr_tail(w, c2)
    }

    /// v1 + (v2 + v1 * v2^(2^(s-1)))^(2^(s-1)) + delta: the implicit
    /// definition of a first Chern class from the determinant Euler class.
    fn implicit_def(&self, v1: usize, v2: usize, delta: Poly<F2>) -> Poly<F2> {
        let inner = &self.v(v2) + &(&self.v(v1) * &self.vp(v2, self.half()));
        &(&self.v(v1) + &inner.pow(self.half() as u64)) + &delta
    }
}

/// Builds the relation ideal of the given group at height s. Generator
/// order: three nilpotency generators, two c-transfer products, two
/// annihilators, two transfer products with T-tails, the T-square, two
/// T-linear generators, cT, two power decompositions and the two implicit
/// definitions.
pub fn build(group: GroupId, s: u32) -> Result<GroupPresentation> {
    if s < 2 {
        return Err(usage("height must be at least 2"));
    }
    let g = Gens {
        ring: presentation_ring(),
        s,
    };
    let q = g.q();
    let h = g.half();
    let named = |name: &str, p: Poly<F2>| (name.to_string(), p);

    let cx = g.tr_sum(VAR_C, VAR_X1, VAR_X2);
    let cy = g.tr_sum(VAR_C, VAR_Y1, VAR_Y2);
    let t = g.v(VAR_T);

    let mut ideal = vec![
        named("pow_a", g.vp(VAR_A, q)),
        named("pow_b", g.vp(VAR_B, q)),
        named("pow_c", g.vp(VAR_C, q)),
        named("c_transfer_x", &g.v(VAR_C) * &cx),
        named("c_transfer_y", &g.v(VAR_C) * &cy),
    ];

    match group {
        GroupId::G36 | GroupId::G37 => {
            let ay = g.tr_sum(VAR_A, VAR_Y1, VAR_Y2);
            let bx = g.tr_sum(VAR_B, VAR_X1, VAR_X2);
            ideal.push(named("annihilate_a", &g.v(VAR_A) * &ay));
            ideal.push(named("annihilate_b", &g.v(VAR_B) * &bx));
            ideal.push(named(
                "transfer_product_b",
                &(&cy * &bx) + &(&g.vp(VAR_B, q - 1) * &t),
            ));
            ideal.push(named(
                "transfer_product_a",
                &(&cx * &ay) + &(&g.vp(VAR_A, q - 1) * &t),
            ));
            ideal.push(named("t_square", t_square(&g, &cx, &cy)));
            ideal.push(named(
                "t_linear_b",
                &(&t * &bx)
                    + &(&(&g.vp(VAR_B, q - 1) * &g.v(VAR_X2)) * &(&g.v(VAR_C) + &g.v(VAR_Y1))),
            ));
            ideal.push(named(
                "t_linear_a",
                &(&t * &ay)
                    + &(&(&g.vp(VAR_A, q - 1) * &g.v(VAR_Y2)) * &(&g.v(VAR_C) + &g.v(VAR_X1))),
            ));
            ideal.push(named("ct", &g.v(VAR_C) * &t));
            let x2_tail = match group {
                GroupId::G36 => &g.mono(&[(VAR_C, 2)]) + &g.mono(&[(VAR_B, 1), (VAR_C, 1)]),
                _ => g.mono(&[(VAR_B, 1), (VAR_C, 1)]),
            };
            ideal.push(named("x2_power", &g.vp(VAR_X2, q) + &x2_tail));
            let y2_tail = match group {
                GroupId::G36 => &g.mono(&[(VAR_A, 2)]) + &g.mono(&[(VAR_A, 1), (VAR_C, 1)]),
                _ => {
                    &(&g.mono(&[(VAR_A, 2)]) + &g.mono(&[(VAR_A, 1), (VAR_C, 1)]))
                        + &g.mono(&[(VAR_C, 2)])
                }
            };
            ideal.push(named("y2_power", &g.vp(VAR_Y2, q) + &y2_tail));
            let delta_x = match group {
                GroupId::G36 => g.v(VAR_B),
                _ => &(&g.v(VAR_B) + &g.v(VAR_C)) + &g.mono(&[(VAR_B, h), (VAR_C, h)]),
            };
            ideal.push(named("x1_definition", g.implicit_def(VAR_X1, VAR_X2, delta_x)));
            let delta_y = match group {
                GroupId::G36 => g.v(VAR_C),
                _ => Poly::zero(&g.ring),
            };
            ideal.push(named("y1_definition", g.implicit_def(VAR_Y1, VAR_Y2, delta_y)));
        }
        GroupId::G34 | GroupId::G35 => {
            let ax = g.tr_sum(VAR_A, VAR_X1, VAR_X2);
            let by = g.tr_sum(VAR_B, VAR_Y1, VAR_Y2);
            ideal.push(named("annihilate_a", &g.v(VAR_A) * &ax));
            ideal.push(named("annihilate_b", &g.v(VAR_B) * &by));
            ideal.push(named(
                "transfer_product_b",
                &(&cx * &by) + &(&g.vp(VAR_B, q - 1) * &t),
            ));
            ideal.push(named(
                "transfer_product_a",
                &(&cy * &ax) + &(&g.vp(VAR_A, q - 1) * &t),
            ));
            ideal.push(named("t_square", t_square(&g, &cx, &cy)));
            ideal.push(named(
                "t_linear_a",
                &(&t * &ax)
                    + &(&(&g.vp(VAR_A, q - 1) * &g.v(VAR_X2)) * &(&g.v(VAR_C) + &g.v(VAR_Y1))),
            ));
            ideal.push(named(
                "t_linear_b",
                &(&t * &by)
                    + &(&(&g.vp(VAR_B, q - 1) * &g.v(VAR_Y2)) * &(&g.v(VAR_C) + &g.v(VAR_X1))),
            ));
            ideal.push(named("ct", &g.v(VAR_C) * &t));
            // x pairs with a: the x2 decomposition reads off the square of
            // the a-side induced bundle, whose determinant is trivial for
            // g35 (hence the extra c^2 there, as in the g37 y-side).
            let x2_tail = match group {
                GroupId::G34 => &g.mono(&[(VAR_A, 2)]) + &g.mono(&[(VAR_A, 1), (VAR_C, 1)]),
                _ => {
                    &(&g.mono(&[(VAR_A, 2)]) + &g.mono(&[(VAR_A, 1), (VAR_C, 1)]))
                        + &g.mono(&[(VAR_C, 2)])
                }
            };
            ideal.push(named("x2_power", &g.vp(VAR_X2, q) + &x2_tail));
            let y2_tail = &g.mono(&[(VAR_B, 2)]) + &g.mono(&[(VAR_B, 1), (VAR_C, 1)]);
            ideal.push(named("y2_power", &g.vp(VAR_Y2, q) + &y2_tail));
            let delta_x = match group {
                GroupId::G34 => g.v(VAR_C),
                _ => Poly::zero(&g.ring),
            };
            ideal.push(named("x1_definition", g.implicit_def(VAR_X1, VAR_X2, delta_x)));
            ideal.push(named("y1_definition", g.implicit_def(VAR_Y1, VAR_Y2, g.v(VAR_C))));
        }
    }

    let extra = build_extra(&g, group);

    Ok(GroupPresentation {
        group,
        s,
        ring: g.ring,
        ideal,
        extra,
        expected_dimension: expected_chi(s),
    })
}

fn t_square(g: &Gens, cx: &Poly<F2>, cy: &Poly<F2>) -> Poly<F2> {
    let t = g.v(VAR_T);
    let t2 = &t * &t;
    let txy = &(&t * &g.v(VAR_X1)) * &g.v(VAR_Y1);
    let xy_cy = &(&g.v(VAR_X2) * &g.v(VAR_Y1)) * cy;
    let yx_cx = &(&g.v(VAR_X1) * &g.v(VAR_Y2)) * cx;
    &(&t2 + &txy) + &(&xy_cy + &yx_cx)
}

fn build_extra(g: &Gens, group: GroupId) -> Vec<(String, Poly<F2>)> {
    let q = g.q();
    let h = g.half();
    let mut extra = vec![
        (
            "square_swap_a".to_string(),
            &g.mono(&[(VAR_A, 2), (VAR_C, 1)]) + &g.mono(&[(VAR_A, 1), (VAR_C, 2)]),
        ),
        (
            "square_swap_b".to_string(),
            &g.mono(&[(VAR_B, 2), (VAR_C, 1)]) + &g.mono(&[(VAR_B, 1), (VAR_C, 2)]),
        ),
    ];
    // x1^(2^s) decomposes against the partner of the x-classes: b for
    // g36/g37, a for g34/g35.
    let (x_partner, y_partner) = if group.has_rank_three_subgroup() {
        (VAR_B, VAR_A)
    } else {
        (VAR_A, VAR_B)
    };
    extra.push((
        "x1_power".to_string(),
        &g.vp(VAR_X1, q) + &g.mono(&[(x_partner, h), (VAR_C, h)]),
    ));
    extra.push((
        "y1_power".to_string(),
        &g.vp(VAR_Y1, q) + &g.mono(&[(y_partner, h), (VAR_C, h)]),
    ));
    // The minimal slice of a^i c^j = 0 and b^i c^j = 0: i + j = 2^s + 1,
    // i, j >= 1. All larger cases are monomial multiples.
    for i in 1..=q {
        let j = q + 1 - i;
        extra.push((
            format!("slice_a{i}c{j}"),
            g.mono(&[(VAR_A, i), (VAR_C, j)]),
        ));
        extra.push((
            format!("slice_b{i}c{j}"),
            g.mono(&[(VAR_B, i), (VAR_C, j)]),
        ));
    }
    extra
}

/// The monomial basis recipe for g36/g37: the five index families whose
/// union has exactly (16^s - 4^s)/2 + 8^s elements.
pub fn basis_recipe(group: GroupId, s: u32) -> Result<Vec<Monomial>> {
    if !group.has_rank_three_subgroup() {
        return Err(usage(
            "the basis recipe applies to g36/g37 only; for g34/g35 use the standard monomials",
        ));
    }
    if s < 2 {
        return Err(usage("height must be at least 2"));
    }
    let q = 1u32 << s;
    let h = q / 2;
    let mono = |pairs: &[(usize, u32)]| {
        let mut exps = [0u32; 8];
        for &(i, e) in pairs {
            exps[i] += e;
        }
        Monomial::from_exponents(&exps)
    };
    let mut out = Vec::new();
    // x1^i y1^j x2^k y2^l with i, j < 2^s and k, l < 2^(s-1).
    for i in 0..q {
        for j in 0..q {
            for k in 0..h {
                for l in 0..h {
                    out.push(mono(&[(VAR_X1, i), (VAR_Y1, j), (VAR_X2, k), (VAR_Y2, l)]));
                }
            }
        }
    }
    // a x2^(k + 2^(s-1)) y2^l.
    for k in 0..h {
        for l in 0..h {
            out.push(mono(&[(VAR_A, 1), (VAR_X2, k + h), (VAR_Y2, l)]));
        }
    }
    // x1^i a x2^k y2^l and y1^i x2^(k + 2^(s-1)) y2^l with i < 2^s.
    for i in 0..q {
        for k in 0..h {
            for l in 0..h {
                out.push(mono(&[(VAR_X1, i), (VAR_A, 1), (VAR_X2, k), (VAR_Y2, l)]));
                out.push(mono(&[(VAR_Y1, i), (VAR_X2, k + h), (VAR_Y2, l)]));
            }
        }
    }
    // T x1^i y1^j x2^k y2^l with i, j < 2^s - 1.
    for i in 0..q - 1 {
        for j in 0..q - 1 {
            for k in 0..h {
                for l in 0..h {
                    out.push(mono(&[
                        (VAR_T, 1),
                        (VAR_X1, i),
                        (VAR_Y1, j),
                        (VAR_X2, k),
                        (VAR_Y2, l),
                    ]));
                }
            }
        }
    }
    // c^i x2^j y2^k and c^i a x2^j y2^k with 0 < i < 2^s, j < 2^s, k < 2^(s-1).
    for i in 1..q {
        for j in 0..q {
            for k in 0..h {
                out.push(mono(&[(VAR_C, i), (VAR_X2, j), (VAR_Y2, k)]));
                out.push(mono(&[(VAR_C, i), (VAR_A, 1), (VAR_X2, j), (VAR_Y2, k)]));
            }
        }
    }
    Ok(out)
}

/// The sizes of the five recipe families, in recipe order.
pub fn basis_recipe_family_sizes(s: u32) -> [u64; 5] {
    let q = 1u64 << s;
    let h = q / 2;
    [
        q * q * h * h,
        h * h,
        2 * q * h * h,
        (q - 1) * (q - 1) * h * h,
        2 * (q - 1) * q * h,
    ]
}
