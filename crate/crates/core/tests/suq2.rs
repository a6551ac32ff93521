#![allow(clippy::needless_range_loop)]

use mondef::scalar::{rat, rat_pow, Rat};
use mondef::suq2::*;
use proptest::prelude::*;
use std::time::Instant;
use Generator::*;

fn half() -> Rat {
    rat(1, 2)
}

fn alg() -> SuQ2 {
    SuQ2::new(half()).unwrap()
}

fn mono(a: i32, b: u32, c: u32) -> Monomial {
    Monomial::new(a, b, c)
}

fn poly(terms: &[((i32, u32, u32), Rat)]) -> Pbw<Rat> {
    let mut x = Pbw::zero();
    for ((a, b, c), v) in terms {
        x.add_term(mono(*a, *b, *c), v.clone());
    }
    x
}

#[test]
fn hand_reduced_words() {
    let g = alg();
    // γα = q⁻¹αγ
    assert_eq!(g.normal_form(&[Gamma, Alpha]), poly(&[((1, 1, 0), rat(2, 1))]));
    // α*α = 1 − γ*γ
    assert_eq!(g.normal_form(&[AlphaStar, Alpha]), poly(&[((0, 0, 0), rat(1, 1)), ((0, 1, 1), rat(-1, 1))]));
    // αα* = 1 − q²γγ*
    assert_eq!(g.normal_form(&[Alpha, AlphaStar]), poly(&[((0, 0, 0), rat(1, 1)), ((0, 1, 1), rat(-1, 4))]));
    // γ*α* = qα*γ*
    assert_eq!(g.star(&g.normal_form(&[Alpha, Gamma])), poly(&[((-1, 0, 1), half())]));
    // α*γ α = α*·q⁻¹αγ = q⁻¹(1 − γ*γ)γ
    assert_eq!(g.normal_form(&[AlphaStar, Gamma, Alpha]), poly(&[((0, 1, 0), rat(2, 1)), ((0, 2, 1), rat(-2, 1))]));
}

#[test]
fn fundamental_matrix_is_unitary() {
    let g = alg();
    let q = half();
    let d = |w: &[Generator]| g.normal_form(w);
    // U = [[α, −qγ*], [γ, α*]]
    let u = [[d(&[Alpha]), d(&[GammaStar]).scale(&-q.clone())], [d(&[Gamma]), d(&[AlphaStar])]];
    let ustar = |i: usize, j: usize| g.star(&u[j][i]);
    for i in 0..2 {
        for j in 0..2 {
            let mut uu = Pbw::zero();
            let mut uu2 = Pbw::zero();
            for k in 0..2 {
                uu = &uu + &g.mul(&ustar(i, k), &u[k][j]);
                uu2 = &uu2 + &g.mul(&u[i][k], &ustar(k, j));
            }
            let expect = if i == j { Pbw::one() } else { Pbw::zero() };
            assert_eq!(uu, expect, "U*U at ({i},{j})");
            assert_eq!(uu2, expect, "UU* at ({i},{j})");
        }
    }
}

#[test]
fn haar_matches_closed_form() {
    let g = alg();
    let h = HaarState::solve(&g, 8).unwrap();
    let q2 = rat(1, 4);
    for k in 0..=8u32 {
        // h((γγ*)^k) = (1 − q²)/(1 − q^{2k+2})
        let oracle = (Rat::from_integer(1.into()) - &q2) / (Rat::from_integer(1.into()) - rat_pow(&q2, i64::from(k) + 1));
        assert_eq!(h.diagonal()[k as usize], oracle, "k = {k}");
    }
    let gsg = g.normal_form(&[GammaStar, Gamma]);
    assert_eq!(haar(&g, &gsg, 2).unwrap(), rat(4, 5));
    assert_eq!(haar(&g, &g.normal_form(&[Alpha]), 2).unwrap(), rat(0, 1));
    assert_eq!(haar(&g, &Pbw::<Rat>::one(), 0).unwrap(), rat(1, 1));
    assert!(haar(&g, &g.normal_form(&[Gamma, Gamma, GammaStar]), 2).is_err());
}

#[test]
fn haar_invariance_directly() {
    // (id ⊗ h)Δ(γ*γ) = h(γ*γ)·1, evaluated by hand from Δ
    let g = alg();
    let h = HaarState::solve(&g, 2).unwrap();
    let x = g.normal_form(&[GammaStar, Gamma]);
    let mut left = Pbw::<Rat>::zero();
    let mut right = Pbw::<Rat>::zero();
    for ((a, b), c) in g.coproduct(&x) {
        left = &left + &Pbw::term(a, c.clone() * h.eval(&Pbw::<Rat>::monomial(b)).unwrap());
        right = &right + &Pbw::term(b, c * h.eval(&Pbw::<Rat>::monomial(a)).unwrap());
    }
    assert_eq!(left, Pbw::scalar(rat(4, 5)));
    assert_eq!(right, Pbw::scalar(rat(4, 5)));
}

#[test]
fn full_invariance_system_pins_off_diagonal_to_zero() {
    let g = alg();
    let h = HaarState::solve(&g, 3).unwrap();
    let r = check_haar_full(&g, &h, 6).unwrap();
    assert!(r.all_passed(), "{r}");
    let g3 = SuQ2::new(rat(-1, 3)).unwrap();
    let h3 = HaarState::solve(&g3, 2).unwrap();
    assert!(check_haar_full(&g3, &h3, 4).unwrap().all_passed());
}

#[test]
fn spin_half_and_spin_one_match_reference_arrays() {
    let g = alg();
    let basis = PeterWeylBasis::build(&g, HalfInt(2)).unwrap();
    let q = half();
    let w = |w: &[Generator]| g.normal_form(w);
    // order (−1/2, 1/2)
    let d_half = basis.matrix(HalfInt(1)).unwrap();
    let reference_half = [[w(&[Alpha]), w(&[GammaStar]).scale(&-q.clone())], [w(&[Gamma]), w(&[AlphaStar])]];
    for i in 0..2 {
        for j in 0..2 {
            assert_eq!(d_half[i][j], reference_half[i][j], "d^1/2 ({i},{j})");
        }
    }
    // reference d^1 is in the order (+1, 0, −1)
    let s = Rat::from_integer(1.into()) + &q * &q;
    let one = Pbw::<Rat>::one();
    let reference_one = [
        [w(&[AlphaStar, AlphaStar]), w(&[AlphaStar, Gamma]).scale(&-s.clone()), w(&[Gamma, Gamma]).scale(&-q.clone())],
        [w(&[GammaStar, AlphaStar]), &one - &w(&[GammaStar, Gamma]).scale(&s), w(&[Alpha, Gamma])],
        [w(&[GammaStar, GammaStar]).scale(&-q.clone()), w(&[GammaStar, Alpha]).scale(&-s), w(&[Alpha, Alpha])],
    ];
    let d_one = basis.matrix(HalfInt(2)).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(d_one[2 - i][2 - j], reference_one[i][j], "d^1 ({i},{j})");
        }
    }
}

#[test]
fn matrix_coefficients_are_comultiplicative() {
    let g = alg();
    let basis = PeterWeylBasis::build(&g, HalfInt(3)).unwrap();
    let r = basis.check_corepresentation(&g, HalfInt(3));
    assert!(r.all_passed(), "{r}");
}

#[test]
fn orthogonality_exact_to_seven_halves() {
    let start = Instant::now();
    let g = alg();
    let basis = PeterWeylBasis::build(&g, HalfInt(7)).unwrap();
    assert_eq!(basis.len(), 204);
    let report = basis.verify(&g).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    assert!(report.all_passed(), "{report}");
    assert!(elapsed < 60.0, "{elapsed} s");
    // spin-1/2 cross spin-1 inner products vanish
    for a in basis.entries().iter().filter(|e| e.index.spin == HalfInt(1)) {
        for b in basis.entries().iter().filter(|e| e.index.spin == HalfInt(2)) {
            assert_eq!(basis.haar().inner(&g, &a.element, &b.element).unwrap(), rat(0, 1));
        }
    }
}

#[test]
fn coordinates_agree_by_two_routes() {
    let g = alg();
    let basis = PeterWeylBasis::build(&g, HalfInt(4)).unwrap();
    let x = g.normal_form(&[GammaStar, Alpha]);
    for e in basis.entries().iter().filter(|e| e.index.spin <= HalfInt(2)) {
        let y = g.mul(&x, &e.element);
        assert_eq!(basis.coordinates(&y).unwrap(), basis.coordinates_by_haar(&g, &y).unwrap(), "{}", e.index);
    }
}

#[test]
fn rho_values() {
    let p = default_params();
    assert_eq!(p.c(), rat(3, 2));
    assert_eq!(p.uncorrected_rho_sqr(), rat(2, 25));
    assert_eq!(p.rho_sqr(), rat(8, 75));
}

#[test]
fn corrected_generators_satisfy_the_sphere_relations() {
    let g = alg();
    let data = podles_generators(&g, &default_params(), GeneratorForm::Corrected).unwrap();
    let r = data.verify(&g);
    assert!(r.all_passed(), "{r}");
    let other = PodlesParams::new(rat(1, 3), rat(2, 5)).unwrap();
    let g3 = SuQ2::new(rat(1, 3)).unwrap();
    assert!(podles_generators(&g3, &other, GeneratorForm::Corrected).unwrap().relations(&g3).all_zero());
}

#[test]
fn uncorrected_generators_do_not_close() {
    let g = alg();
    let data = podles_generators(&g, &default_params(), GeneratorForm::Uncorrected).unwrap();
    let rel = data.relations(&g);
    assert!(rel.self_adjoint.is_zero());
    assert!(!rel.commutation.is_zero());
    assert!(rel.max_residual() > 0.5);
}

#[test]
fn spherical_generators_form_a_spin_one_multiplet() {
    let g = alg();
    let basis = PeterWeylBasis::build(&g, HalfInt(2)).unwrap();
    let data = podles_generators(&g, &default_params(), GeneratorForm::Corrected).unwrap();
    let r = check_spherical_multiplet(&g, &basis, &data).unwrap();
    assert!(r.all_passed(), "{r}");
}

fn unit_dirac() -> DiracConstants {
    DiracConstants::new(rat(1, 1), rat(0, 1)).unwrap()
}

#[test]
fn truncated_triple_at_five_halves() {
    let t = build_truncated(&default_params(), &unit_dirac(), HalfInt(5)).unwrap();
    assert_eq!(t.dim(), 24);
    assert!(t.report.all_passed(), "{}", t.report);
    let spec = t.exact_spectrum().unwrap();
    let expect: Vec<(Rat, usize)> = [(-5, 6), (-3, 4), (-1, 2), (1, 2), (3, 4), (5, 6)].iter().map(|&(n, m)| (rat(n, 2), m)).collect();
    assert_eq!(spec, expect);
    assert_eq!(t.isotypic.len(), 6);
}

#[test]
fn truncated_triple_interior_relations() {
    let t = build_truncated(&default_params(), &unit_dirac(), HalfInt(7)).unwrap();
    assert!(t.report.all_passed(), "{}", t.report);
    for (name, r) in t.interior_residuals() {
        assert!(r < 1e-9, "{name}: {r}");
    }
}

#[test]
fn dirac_constants_must_be_nonzero() {
    assert!(DiracConstants::new(rat(0, 1), rat(1, 1)).is_err());
    assert!(PodlesParams::new(rat(1, 2), rat(1, 1)).is_err());
    assert!(SuQ2::new(rat(0, 1)).is_err());
}

fn word_strategy(max: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(prop::sample::select(Generator::ALL.to_vec()), 0..=max)
}

fn element_strategy() -> impl Strategy<Value = Pbw<Rat>> {
    prop::collection::vec((word_strategy(3), -3i64..=3), 1..4).prop_map(|terms| {
        let g = alg();
        terms.iter().fold(Pbw::zero(), |acc, (w, c)| &acc + &g.normal_form(w).scale(&rat(*c, 1)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rewriting_is_confluent(word in word_strategy(6), cut in 0usize..7, cut2 in 0usize..7) {
        let g = alg();
        let cut = cut.min(word.len());
        let cut2 = cut2.min(word.len() - cut);
        let whole = g.normal_form(&word);
        let (left, rest) = word.split_at(cut);
        let (mid, right) = rest.split_at(cut2);
        let bracketed = g.mul(&g.normal_form(left), &g.mul(&g.normal_form(mid), &g.normal_form(right)));
        prop_assert_eq!(&whole, &bracketed);
        // normal form of a normal-form monomial is itself
        for (m, _) in whole.terms() {
            prop_assert_eq!(g.normal_form(&m.word()), Pbw::monomial(*m));
        }
    }

    #[test]
    fn product_is_associative(x in element_strategy(), y in element_strategy(), z in element_strategy()) {
        let g = alg();
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&Pbw::one(), &x), x.clone());
    }

    #[test]
    fn star_is_an_antimultiplicative_involution(x in element_strategy(), y in element_strategy()) {
        let g = alg();
        prop_assert_eq!(g.star(&g.star(&x)), x.clone());
        prop_assert_eq!(g.star(&g.mul(&x, &y)), g.mul(&g.star(&y), &g.star(&x)));
    }

    #[test]
    fn coproduct_is_multiplicative(a in word_strategy(3), b in word_strategy(3)) {
        let g = alg();
        let x = g.normal_form(&a);
        let y = g.normal_form(&b);
        prop_assert_eq!(g.coproduct(&g.mul(&x, &y)), g.tensor_mul(&g.coproduct(&x), &g.coproduct(&y)));
    }

    #[test]
    fn haar_is_positive_on_random_elements(x in element_strategy()) {
        let g = alg();
        let h = HaarState::solve(&g, 4).unwrap();
        let v = h.inner(&g, &x, &x).unwrap();
        prop_assert!(x.is_zero() || v > rat(0, 1));
    }
}

#[test]
fn commutator_norms_stabilize() {
    let r = check_stabilization(&default_params(), &unit_dirac(), HalfInt(9), 1e-6).unwrap();
    assert!(r.all_passed(), "{r}");
}
