use mondef::hopf::*;
use mondef::linalg::Matrix;
use mondef::scalar::{Cyclo, Field};

fn z22() -> FiniteHopfAlgebra {
    group_algebra(&[2, 2]).unwrap()
}

/// `(−1)^{a₂b₁}` on `Z₂²`.
fn sign_twist(h: &FiniteHopfAlgebra) -> DualCocycle {
    DualCocycle::new(h, bicharacter_table(&[2, 2], 2, &[vec![0, 0], vec![1, 0]]).unwrap()).unwrap()
}

/// `ω^{a₂b₁}` on `Z₃²`, `ω = e^{2πi/3}`.
fn cube_twist(h: &FiniteHopfAlgebra) -> DualCocycle {
    DualCocycle::new(h, bicharacter_table(&[3, 3], 3, &[vec![0, 0], vec![1, 0]]).unwrap()).unwrap()
}

/// `i^{a₂b₁}` on `Z₄`² restricted to `Z₄`: `i^{ab}`.
fn z4_twist(h: &FiniteHopfAlgebra) -> DualCocycle {
    DualCocycle::new(h, bicharacter_table(&[4], 4, &[vec![1]]).unwrap()).unwrap()
}

fn s(n: i64) -> Cyclo {
    Cyclo::from_int(n)
}

/// Independent oracle for `Z₂²`: index `2a + b`, sign `(−1)^{a₂b₁}`.
fn sign_oracle(g: usize, h: usize) -> i64 {
    let (g2, h1) = (g % 2, h / 2);
    if g2 * h1 == 1 {
        -1
    } else {
        1
    }
}

#[test]
fn trivial_cocycle_on_function_algebra_passes() {
    let h = FiniteGroup::abelian(&[2]).unwrap().function_algebra();
    assert!(h.check().all_passed(), "{}", h.check());
    let sigma = DualCocycle::trivial(&h);
    let r = check_dual_cocycle(&h, sigma.table());
    assert!(r.all_passed(), "{r}");
}

#[test]
fn sign_bicharacter_matches_oracle_and_is_a_cocycle() {
    let h = z22();
    let sigma = sign_twist(&h);
    for g in 0..4 {
        for k in 0..4 {
            assert_eq!(sigma.table()[(g, k)], s(sign_oracle(g, k)));
        }
    }
    let r = check_dual_cocycle(&h, sigma.table());
    assert!(r.all_passed(), "{r}");
}

#[test]
fn perturbed_cocycle_fails_with_triple() {
    let h = z22();
    let mut table = sign_twist(&h).table().clone();
    table[(1, 2)] = table[(1, 2)].clone() + s(1);
    let r = check_dual_cocycle(&h, &table);
    let fail = r.first_failure().expect("perturbation must be detected");
    assert!(fail.detail.as_deref().unwrap_or("").contains('('), "{r}");
}

#[test]
fn convolution_inverse_of_signs_is_pointwise() {
    let h = z22();
    let sigma = sign_twist(&h);
    assert_eq!(sigma.inverse_table(), sigma.table());
    let t = DualCocycle::trivial(&h);
    assert_eq!(convolution_inverse(&h, t.table()).unwrap(), *t.table());
    let cube = cube_twist(&group_algebra(&[3, 3]).unwrap());
    for i in 0..9 {
        for j in 0..9 {
            assert_eq!(cube.inverse_table()[(i, j)], cube.table()[(i, j)].inv().unwrap());
        }
    }
}

#[test]
fn zero_table_is_not_invertible() {
    let h = z22();
    assert!(matches!(convolution_inverse(&h, &Matrix::zeros(4, 4)), Err(HopfError::NotInvertible(_))));
}

#[test]
fn u_and_v_functionals() {
    let h = z22();
    let t = uv_functionals(&h, &DualCocycle::trivial(&h)).unwrap();
    assert_eq!(t, UvFunctionals::trivial(&h));
    let uv = uv_functionals(&h, &sign_twist(&h)).unwrap();
    assert_eq!(uv.u[3], s(-1));
    assert!(check_uv(&h, &uv).all_passed());
    let h3 = group_algebra(&[3, 3]).unwrap();
    let sigma = cube_twist(&h3);
    let g = FiniteGroup::abelian(&[3, 3]).unwrap();
    let uv = uv_functionals(&h3, &sigma).unwrap();
    for x in 0..9 {
        assert_eq!(uv.u[x], sigma.table()[(x, g.inverse(x))]);
    }
    assert!(check_uv(&h3, &uv).all_passed());
}

#[test]
fn twisting_group_algebras_changes_nothing() {
    let h = z22();
    assert_eq!(twist_hopf(&h, &DualCocycle::trivial(&h)).unwrap(), h);
    assert_eq!(twist_hopf(&h, &sign_twist(&h)).unwrap(), h);
    let h3 = group_algebra(&[3, 3]).unwrap();
    assert_eq!(twist_hopf(&h3, &cube_twist(&h3)).unwrap(), h3);
}

#[test]
fn function_algebra_on_s3_is_a_hopf_algebra() {
    let h = FiniteGroup::s3().function_algebra();
    assert!(h.check().all_passed(), "{}", h.check());
    let t = twist_hopf(&h, &DualCocycle::trivial(&h)).unwrap();
    assert_eq!(t, h);
}

#[test]
fn twisted_regular_comodule_is_full_matrix_algebra() {
    let h = z22();
    let a = ComoduleAlgebra::regular(&h);
    let tw = twist_comodule_algebra(&h, &a, &DualCocycle::trivial(&h)).unwrap();
    assert_eq!(tw, a);
    let tw = twist_comodule_algebra(&h, &a, &sign_twist(&h)).unwrap();
    // product table against the oracle e_g e_h = σ⁻¹(g,h) e_{gh}
    let g = FiniteGroup::abelian(&[2, 2]).unwrap();
    for x in 0..4 {
        for y in 0..4 {
            assert_eq!(*tw.algebra.basis_product(x, y), vec![(g.mul(x, y), s(sign_oracle(x, y)))]);
        }
    }
    assert_eq!(tw.algebra.center_dim(), 1);
    // matrix units: p = (1 + e_(1,0))/2 is a rank-one projection
    let half = Cyclo::from_rat(mondef::scalar::rat(1, 2));
    let p = vec![half.clone(), Cyclo::zero(), half, Cyclo::zero()];
    let alg = &tw.algebra;
    assert_eq!(alg.mul(&p, &p), p);
    assert_eq!(alg.star_vec(&p), p);
    let corner: Vec<Vec<Cyclo>> = (0..4).map(|k| alg.mul(&alg.mul(&p, &basis_vec(4, k)), &p)).collect();
    assert_eq!(Matrix::from_fn(4, 4, |i, j| corner[j][i].clone()).rank(), 1);
}

#[test]
fn smash_products() {
    let h = z22();
    let b = smash_left(&h, &DualCocycle::trivial(&h)).unwrap();
    assert_eq!(b.algebra, *h.algebra());
    let b = smash_left(&h, &sign_twist(&h)).unwrap();
    assert_eq!(b.algebra.center_dim(), 1);
    assert_eq!(b.state, vec![s(1), s(0), s(0), s(0)]);

    let c = smash_right(&h, &sign_twist(&h)).unwrap();
    let g = FiniteGroup::abelian(&[2, 2]).unwrap();
    for x in 0..4 {
        for y in 0..4 {
            assert_eq!(*c.algebra.basis_product(x, y), vec![(g.mul(x, y), s(sign_oracle(x, y)))]);
        }
        assert_eq!(c.algebra.star_vec(&c.algebra.star_vec(&basis_vec(4, x))), basis_vec(4, x));
    }
}

#[test]
fn cotensor_with_regular_comodule_recovers_algebra() {
    let h = z22();
    let a = ComoduleAlgebra::regular(&h);
    let delta: Vec<_> = (0..4).map(|i| h.coproduct(i).clone()).collect();
    let c = cotensor(&a.algebra, &a.coaction, h.algebra(), &delta).unwrap();
    assert_eq!(c.algebra.dim(), 4);
    assert_eq!(c.algebra.center_dim(), 4);
}

#[test]
fn bhalg_isomorphism_on_abelian_examples() {
    for (h, sigma) in [
        (z22(), sign_twist(&z22())),
        (group_algebra(&[3, 3]).unwrap(), cube_twist(&group_algebra(&[3, 3]).unwrap())),
        (group_algebra(&[4]).unwrap(), z4_twist(&group_algebra(&[4]).unwrap())),
    ] {
        let a = ComoduleAlgebra::regular(&h);
        let r = check_bhalg(&h, &a, &sigma).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn omega_round_trip() {
    let h = z22();
    let irreps = group_like_irreps(&h);
    let triv = DualCocycle::trivial(&h);
    let om = omega_from_sigma(&h, &irreps, triv.table()).unwrap();
    assert!(om.blocks.values().all(|b| *b == Matrix::identity(1)));
    let sigma = sign_twist(&h);
    let om = omega_from_sigma(&h, &irreps, sigma.table()).unwrap();
    for ((x, y), b) in &om.blocks {
        assert_eq!(b[(0, 0)], s(sign_oracle(irreps[*x].coeffs[0][0].0, irreps[*y].coeffs[0][0].0)));
    }
    assert_eq!(sigma_from_omega(&h, &irreps, &om).unwrap(), *sigma.table());
}

#[test]
fn pi_sigma_is_a_star_representation() {
    let h = z22();
    let t = toy_triple(&[2, 2]).unwrap();
    assert!(t.check().all_passed(), "{}", t.check());
    assert_eq!(pi_sigma(&t, &DualCocycle::trivial(&h)), t.rep);
    let sigma = sign_twist(&h);
    let pis = pi_sigma(&t, &sigma);
    let tw = twist_comodule_algebra(&h, &t.algebra, &sigma).unwrap();
    let r = check_pi_sigma(&t, &tw.algebra, &pis);
    assert!(r.all_passed(), "{r}");
    assert_eq!(pis[0], Matrix::identity(4));
}

#[test]
fn gns_space_is_ergodic() {
    let h = z22();
    for sigma in [DualCocycle::trivial(&h), sign_twist(&h)] {
        let b = smash_left(&h, &sigma).unwrap();
        let l2 = gns(&h, &b).unwrap();
        assert_eq!(l2.gram, Matrix::identity(4));
        assert_eq!(l2.fixed_dim, 1);
        assert!(l2.report.all_passed(), "{}", l2.report);
    }
}

#[test]
fn box_tensor_dimensions() {
    let h = z22();
    let t = toy_triple(&[2, 2]).unwrap();
    for sigma in [DualCocycle::trivial(&h), sign_twist(&h)] {
        let b = smash_left(&h, &sigma).unwrap();
        let l2 = gns(&h, &b).unwrap();
        let bt = box_tensor_hilbert(&h, &t.gram, &t.corep, 4, &l2);
        assert_eq!(bt.space.dim(), 4);
        assert!(bt.blocks.iter().all(|(_, a, b)| a == b));
        // trivial corepresentation on C³: 𝓗 ⊗ ℂΛ(1)
        let unit = h.algebra().unit().clone();
        let u: Vec<_> = (0..9).map(|k| if k / 3 == k % 3 { unit.clone() } else { vec![] }).collect();
        let bt = box_tensor_hilbert(&h, &Matrix::identity(3), &u, 3, &l2);
        assert_eq!(bt.space.dim(), 3);
    }
}

#[test]
fn trivial_deformation_is_tensor_equal() {
    let h = z22();
    let t = toy_triple(&[2, 2]).unwrap();
    let d = deform_triple_finite(&t, &DualCocycle::trivial(&h)).unwrap();
    assert!(d.report.all_passed(), "{}", d.report);
    assert_eq!(d.pullback(&t).unwrap(), t);
}

#[test]
fn sign_deformation_is_isospectral_and_matches_twist() {
    let h = z22();
    let t = toy_triple(&[2, 2]).unwrap();
    let sigma = sign_twist(&h);
    let d = deform_triple_finite(&t, &sigma).unwrap();
    assert!(d.report.all_passed(), "{}", d.report);
    assert_eq!(d.triple.dirac.char_poly(), t.dirac.char_poly());
    let back = d.pullback(&t).unwrap();
    assert_eq!(back.dirac, t.dirac);
    assert_eq!(back.rep, pi_sigma(&t, &sigma));
    let tw = twist_comodule_algebra(&h, &t.algebra, &sigma).unwrap();
    assert_eq!(back.algebra.algebra, tw.algebra);
}

#[test]
fn cocycle_equivalence_and_star_regression() {
    let h = z22();
    let t = toy_triple(&[2, 2]).unwrap();
    for sigma in [DualCocycle::trivial(&h), sign_twist(&h)] {
        let r = verify_cocycle_equivalence(&t, &sigma, StarConvention::VCorrected).unwrap();
        assert!(r.all_passed(), "{r}");
    }
    let h3 = group_algebra(&[3, 3]).unwrap();
    let t3 = toy_triple(&[3, 3]).unwrap();
    let r = verify_cocycle_equivalence(&t3, &cube_twist(&h3), StarConvention::VCorrected).unwrap();
    assert!(r.all_passed(), "{r}");
    let r = verify_cocycle_equivalence(&t3, &cube_twist(&h3), StarConvention::Untwisted).unwrap();
    let fail = r.first_failure().expect("untwisted star must fail");
    assert!(fail.name.contains("*-preserving"), "{r}");
}

#[test]
fn inverse_deformation_round_trip() {
    let h = z22();
    let t = toy_triple(&[2, 2]).unwrap();
    for sigma in [DualCocycle::trivial(&h), sign_twist(&h)] {
        let r = check_round_trip(&t, &sigma).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn reconstruction_of_the_hopf_algebra() {
    let h = z22();
    for sigma in [DualCocycle::trivial(&h), sign_twist(&h)] {
        let r = reconstruct_hopf(&h, &sigma).unwrap();
        assert!(r.all_passed(), "{r}");
    }
    let h3 = group_algebra(&[3, 3]).unwrap();
    let r = reconstruct_hopf(&h3, &cube_twist(&h3)).unwrap();
    assert!(r.all_passed(), "{r}");
}

#[test]
fn spectral_subspaces_of_regular_and_twisted() {
    let h = z22();
    let irreps = group_like_irreps(&h);
    // trivial coaction 1 ⊗ b
    let unit = h.algebra().unit()[0].0;
    let trivial: Vec<_> = (0..4).map(|b| vec![(unit, b, s(1))]).collect();
    let (subs, r) = spectral_subspaces(h.algebra(), &trivial, &irreps);
    assert!(r.all_passed());
    for sub in &subs {
        let expect = if irreps[sub.irrep].coeffs[0][0].0 == unit { 4 } else { 0 };
        assert_eq!(sub.basis.len(), expect);
    }
    for sigma in [DualCocycle::trivial(&h), sign_twist(&h)] {
        let b = smash_left(&h, &sigma).unwrap();
        let (subs, r) = spectral_subspaces(&b.algebra, &b.left, &irreps);
        assert!(r.all_passed(), "{r}");
        assert!(subs.iter().all(|s| s.basis.len() == 1 && s.intertwiners == 1));
    }
}

#[test]
fn supergroup_induction() {
    let z4 = group_algebra(&[4]).unwrap();
    let z2 = group_algebra(&[2]).unwrap();
    let q = HopfQuotient::from_group_map(&z4, z2.clone(), &[0, 1, 0, 1]).unwrap();
    let r = cotensor_chain_supergroup(&z4, &q, &DualCocycle::trivial(&z2)).unwrap();
    assert!(r.all_passed(), "{r}");

    let h = z22();
    let q = HopfQuotient::from_group_map(&h, z2.clone(), &[0, 1, 1, 0]).unwrap();
    let sign = DualCocycle::new(&z2, bicharacter_table(&[2], 2, &[vec![1]]).unwrap()).unwrap();
    let r = cotensor_chain_supergroup(&h, &q, &sign).unwrap();
    assert!(r.all_passed(), "{r}");

    let not_hom = HopfQuotient::from_group_map(&z4, z2.clone(), &[0, 1, 1, 1]).unwrap();
    assert!(cotensor_chain_supergroup(&z4, &not_hom, &DualCocycle::trivial(&z2)).is_err());
}

#[test]
fn galois_subobject_for_a_subgroup() {
    let h = group_algebra(&[2, 2, 2]).unwrap();
    let form = vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]];
    let sigma = DualCocycle::new(&h, bicharacter_table(&[2, 2, 2], 2, &form).unwrap()).unwrap();
    let sub = [0, 2, 4, 6];
    let r = check_subobject(&h, &sub, &sigma).unwrap();
    assert!(r.all_passed(), "{r}");
}

#[test]
fn json_round_trip() {
    let h = z22();
    let v = io::hopf_json(&h);
    assert_eq!(io::parse_hopf(&v).unwrap(), h);
    let sigma = sign_twist(&h);
    let c = io::parse_cocycle(&io::cocycle_json(sigma.table()), &h, None).unwrap();
    assert_eq!(c, sigma);
    let v: serde_json::Value = serde_json::json!({"bicharacter": {"root": 2, "matrix": [[0, 0], [1, 0]]}});
    assert_eq!(io::parse_cocycle(&v, &h, Some(&[2, 2])).unwrap(), sigma);
    let z: serde_json::Value = serde_json::json!({"z12": ["0", "1", "0", "0"]});
    assert_eq!(io::parse_scalar(&z).unwrap(), Cyclo::zeta_pow(1));
}
