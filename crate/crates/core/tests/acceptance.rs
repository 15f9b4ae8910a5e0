//! Acceptance suite: the end-to-end checks the artifact must pass, one test
//! per criterion, each printing a pass/fail line (visible with --nocapture).
//!
//! Everything is exact (tolerance zero). The base tier runs at height s = 2;
//! the s = 3 tier is included inline where it costs seconds and behind
//! #[ignore] where noted.

use morava_core::abelian::abelian_model;
use morava_core::fgl::{self, FglContext};
use morava_core::grobner::{buchberger, GbConfig, StandardMonomials};
use morava_core::monomial::Monomial;
use morava_core::poly::Poly;
use morava_core::presentations::{self, GroupId, VAR_B, VAR_C, VAR_T, VAR_X2};
use morava_core::{F2, MonomialOrder};

fn criterion(number: u32, description: &str, pass: bool) {
    println!(
        "criterion {number} ({description}): {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {number} ({description}) failed");
}

fn context_for(group: GroupId, s: u32) -> FglContext {
    let q = 1u64 << s;
    let qq = 1u64 << (2 * s);
    let needed = if group.has_rank_three_subgroup() {
        2 * (q - 1) + (qq - 1)
    } else {
        2 * (qq - 1)
    };
    FglContext::new(s, needed).unwrap()
}

fn dimension_of(group: GroupId, s: u32, order: &MonomialOrder) -> u64 {
    let pres = presentations::build(group, s).unwrap();
    let gb = buchberger(&pres.ideal_polys(), order, &GbConfig::default()).unwrap();
    match gb.standard_monomials() {
        StandardMonomials::Finite(mons) => mons.len() as u64,
        StandardMonomials::Infinite { .. } => u64::MAX,
    }
}

#[test]
fn criterion_1_fgl_oracle_soundness() {
    let mut pass = true;
    for s in [2u32, 3] {
        let d = 64;
        let ctx = FglContext::new(s, d).unwrap(); // 2-integrality asserted inside
        pass &= fgl::roundtrip_difference(s, d).unwrap().is_zero();
        pass &= fgl::unitality_difference(&ctx, d).unwrap().is_zero();
        pass &= fgl::commutativity_difference(&ctx, d).unwrap().is_zero();
        pass &= fgl::associativity_difference(&ctx, d).unwrap().is_zero();
        pass &= fgl::two_series_difference(&ctx, d).unwrap().is_zero();
    }
    criterion(1, "fgl oracle soundness at s=2,3 up to degree 64", pass);
}

#[test]
fn criterion_2_phi_approximation() {
    let mut pass = true;
    for s in [2u32, 3] {
        let ctx = FglContext::new(s, 40).unwrap();
        pass &= fgl::phi_approximation(&ctx, 40).unwrap().passed();
    }
    criterion(2, "law splits as x + y + phi^(2^(s-1)) with the expected fragment", pass);
}

#[test]
fn criterion_3_tensor_square_identity() {
    let mut pass = true;
    for s in [2u32, 3] {
        let ctx = FglContext::new(s, 64).unwrap();
        pass &= fgl::tensor_square_difference(&ctx, 64).unwrap().is_zero();
    }
    criterion(3, "tensor-square total Chern class identity up to degree 64", pass);
}

fn restrictions_vanish_at(s: u32) -> bool {
    let mut pass = true;
    for group in GroupId::ALL {
        let ctx = context_for(group, s);
        let model = abelian_model(group, &ctx).unwrap();
        let pres = presentations::build(group, s).unwrap();
        let checks = model.verify_restrictions(&pres).unwrap();
        for check in checks {
            if !check.passed() {
                eprintln!("  {group} s={s}: {} failed ({:?})", check.name, check.witness);
                pass = false;
            }
        }
    }
    pass
}

#[test]
fn criterion_4_restriction_vanishing() {
    // Base tier s=2 plus the extended tier s=3; both run in seconds.
    let pass = restrictions_vanish_at(2) && restrictions_vanish_at(3);
    criterion(
        4,
        "all ideal generators and extra relations restrict to zero, images t-invariant (s=2,3)",
        pass,
    );
}

#[test]
fn criterion_5_dimension_reproduction_s2() {
    let order = presentations::degrevlex_order();
    let mut pass = true;
    for group in GroupId::ALL {
        let dim = dimension_of(group, 2, &order);
        if dim != 184 {
            eprintln!("  {group} s=2 dimension {dim} != 184");
            pass = false;
        }
    }
    criterion(5, "Groebner quotient dimension is 184 for all four groups at s=2", pass);
}

#[test]
#[ignore = "deep tier: run with cargo test -- --ignored"]
fn criterion_5_dimension_reproduction_s3_deep() {
    let order = presentations::degrevlex_order();
    let mut pass = true;
    for group in GroupId::ALL {
        let dim = dimension_of(group, 3, &order);
        if dim != 2528 {
            eprintln!("  {group} s=3 dimension {dim} != 2528");
            pass = false;
        }
    }
    criterion(5, "deep tier: Groebner quotient dimension is 2528 at s=3", pass);
}

#[test]
fn criterion_6_euler_characteristic_crosscheck() {
    // Linear-algebra route: rank of (1 + t), no Groebner machinery involved.
    let mut pass = true;
    for group in GroupId::ALL {
        let ctx = context_for(group, 2);
        let model = abelian_model(group, &ctx).unwrap();
        let dec = model.decompose().unwrap();
        if dec.chi != 184 || dec.dim != 2 * dec.f + dec.tau {
            eprintln!("  {group}: dim={} f={} tau={} chi={}", dec.dim, dec.f, dec.tau, dec.chi);
            pass = false;
        }
        if !group.has_rank_three_subgroup() && (dec.f, dec.tau) != (120, 16) {
            eprintln!("  {group}: (f, tau) = ({}, {}) != (120, 16)", dec.f, dec.tau);
            pass = false;
        }
    }
    criterion(
        6,
        "free/trivial decomposition gives chi = 184, with (f, tau) = (120, 16) for g34/g35",
        pass,
    );
}

#[test]
fn euler_characteristic_crosscheck_s3() {
    // The same linear-algebra route at s = 3: chi = f + 8 tau = 2528, with
    // (f, tau) = (2016, 64) pinned for the C4 x C4 subgroup.
    let ctx = FglContext::new(3, 126).unwrap();
    for group in GroupId::ALL {
        let model = abelian_model(group, &ctx).unwrap();
        let dec = model.decompose().unwrap();
        assert_eq!(dec.chi, 2528, "{group}");
        assert_eq!(dec.dim, 2 * dec.f + dec.tau, "{group}");
        if !group.has_rank_three_subgroup() {
            assert_eq!((dec.f, dec.tau), (2016, 64), "{group}");
        }
    }
}

#[test]
fn criterion_7_basis_recipe_g36_g37() {
    let order = presentations::degrevlex_order();
    let mut pass = true;
    for group in [GroupId::G36, GroupId::G37] {
        let sizes = presentations::basis_recipe_family_sizes(2);
        pass &= sizes == [64, 4, 32, 36, 48];
        let recipe = presentations::basis_recipe(group, 2).unwrap();
        pass &= recipe.len() == 184;
        let pres = presentations::build(group, 2).unwrap();
        let gb = buchberger(&pres.ideal_polys(), &order, &GbConfig::default()).unwrap();
        let polys: Vec<Poly<F2>> = recipe
            .iter()
            .map(|m| Poly::from_monomial(pres.ring(), m.clone()))
            .collect();
        let outcome = gb.independent_in_quotient(&polys).unwrap();
        if !outcome.independent {
            eprintln!("  {group}: rank {} of {}", outcome.rank, outcome.count);
            pass = false;
        }
    }
    criterion(
        7,
        "the 184 = 64+4+32+36+48 recipe monomials are independent, hence a basis",
        pass,
    );
}

#[test]
fn criterion_8_consequence_relations() {
    let order = presentations::degrevlex_order();
    let mut pass = true;
    for group in GroupId::ALL {
        let pres = presentations::build(group, 2).unwrap();
        let gb = buchberger(&pres.ideal_polys(), &order, &GbConfig::default()).unwrap();
        for (name, p) in pres.extra_relations() {
            let nf = gb.normal_form(p).unwrap();
            if !nf.is_zero() {
                eprintln!("  {group}: extra relation {name} has nonzero normal form {nf}");
                pass = false;
            }
        }
    }
    criterion(8, "every consequence relation has normal form zero at s=2", pass);
}

#[test]
fn criterion_9_negative_controls() {
    let order = presentations::degrevlex_order();
    let mut pass = true;

    // Mutation 1: in the g37 x2 decomposition, replace bc by b^2 c. The
    // restriction map cannot see the difference (c restricts to zero), so
    // the dimension check must catch it.
    let pres = presentations::build(GroupId::G37, 2).unwrap();
    let ring = pres.ring().clone();
    let mono = |pairs: &[(usize, u32)]| {
        let mut exps = [0u32; 8];
        for &(i, e) in pairs {
            exps[i] = e;
        }
        Poly::<F2>::from_monomial(&ring, Monomial::from_exponents(&exps))
    };
    let mutated = pres.with_replaced_generator(
        "x2_power",
        &Poly::var_pow(&ring, VAR_X2, 4) + &mono(&[(VAR_B, 2), (VAR_C, 1)]),
    );
    let gb = buchberger(&mutated.ideal_polys(), &order, &GbConfig::default()).unwrap();
    let dim = match gb.standard_monomials() {
        StandardMonomials::Finite(m) => m.len() as u64,
        StandardMonomials::Infinite { .. } => u64::MAX,
    };
    let ctx = context_for(GroupId::G37, 2);
    let model = abelian_model(GroupId::G37, &ctx).unwrap();
    let restrictions_pass = model
        .verify_restrictions(&mutated)
        .unwrap()
        .iter()
        .all(|c| c.passed());
    if dim == 184 && restrictions_pass {
        eprintln!("  mutation bc -> b^2 c went undetected (dimension {dim})");
        pass = false;
    }

    // Mutation 2: drop the c factor from the cT generator; the restriction
    // check must see a nonzero image.
    let pres = presentations::build(GroupId::G36, 2).unwrap();
    let mutated = pres.with_replaced_generator("ct", Poly::var(pres.ring(), VAR_T));
    let ctx = context_for(GroupId::G36, 2);
    let model = abelian_model(GroupId::G36, &ctx).unwrap();
    let ct_fails = model
        .verify_restrictions(&mutated)
        .unwrap()
        .iter()
        .any(|c| c.name == "restrict:ct" && !c.passed());
    if !ct_fails {
        eprintln!("  mutation cT -> T went undetected by the restriction check");
        pass = false;
    }

    criterion(9, "single-generator mutations are detected by dimension or restriction", pass);
}

#[test]
#[ignore = "deep tier: order-invariance of the s=3 dimension"]
fn deep_dimension_is_order_invariant_s3() {
    let d1 = dimension_of(GroupId::G36, 3, &presentations::degrevlex_order());
    let d2 = dimension_of(GroupId::G36, 3, &presentations::lex_quotient_order());
    assert_eq!(d1, 2528);
    assert_eq!(d1, d2);
}

#[test]
fn dimension_is_order_invariant_s2() {
    for group in GroupId::ALL {
        let d1 = dimension_of(group, 2, &presentations::degrevlex_order());
        let d2 = dimension_of(group, 2, &presentations::lex_quotient_order());
        let d3 = dimension_of(group, 2, &presentations::lex_kernel_order());
        assert_eq!(d1, d2, "{group}");
        assert_eq!(d1, d3, "{group}");
    }
}

#[test]
fn groebner_self_test_s2() {
    // Post-hoc Buchberger criterion on the computed bases.
    for group in GroupId::ALL {
        let pres = presentations::build(group, 2).unwrap();
        let gb = buchberger(
            &pres.ideal_polys(),
            &presentations::degrevlex_order(),
            &GbConfig::default(),
        )
        .unwrap();
        assert!(
            gb.verify_buchberger_criterion().is_none(),
            "{group}: an S-polynomial does not reduce to zero"
        );
    }
}

#[test]
fn implicit_definitions_stabilize_in_the_quotient() {
    // Iterating x1 <- (x2 + x1 x2^(2^(s-1)))^(2^(s-1)) + delta inside the
    // quotient converges, and the fixed point satisfies the defining
    // generator.
    let order = presentations::degrevlex_order();
    for group in GroupId::ALL {
        let pres = presentations::build(group, 2).unwrap();
        let ring = pres.ring().clone();
        let gb = buchberger(&pres.ideal_polys(), &order, &GbConfig::default()).unwrap();
        let x1_def = &pres
            .ideal()
            .iter()
            .find(|(n, _)| n == "x1_definition")
            .unwrap()
            .1;
        // The generator is x1 + rhs(x1); substituting x1 -> w turns it into
        // w + rhs(w), so the update map is w + (generator at x1 = w).
        let mut w = Poly::<F2>::zero(&ring);
        let mut stabilized = false;
        for _ in 0..20 {
            let mut images: Vec<Option<Poly<F2>>> =
                (0..8).map(|i| Some(Poly::var(&ring, i))).collect();
            images[presentations::VAR_X1] = Some(w.clone());
            let free = morava_core::TruncatedRing::free(ring.clone());
            let step = x1_def.substitute(&images, &free).unwrap();
            let next = gb.normal_form(&(&w + &step)).unwrap();
            if next == w {
                stabilized = true;
                break;
            }
            w = next;
        }
        assert!(stabilized, "{group}: x1 iteration did not stabilize");
        // The stabilized value solves the defining polynomial in the quotient.
        let mut images: Vec<Option<Poly<F2>>> =
            (0..8).map(|i| Some(Poly::var(&ring, i))).collect();
        images[presentations::VAR_X1] = Some(w.clone());
        let free = morava_core::TruncatedRing::free(ring.clone());
        let value = x1_def.substitute(&images, &free).unwrap();
        assert!(
            gb.normal_form(&value).unwrap().is_zero(),
            "{group}: stabilized x1 does not satisfy its defining polynomial"
        );
    }
}
