use mondef::hopf::{bicharacter_table, deform_triple_finite, toy_triple, DualCocycle};
use mondef::linalg::Matrix;
use mondef::repcat::{
    even_subcategory, restrict_equivalence, validate_partner, EquivalenceDescriptor, FusionRing, LabelSet, OrthogonalMatrixSpec, RealValue,
    DEFAULT_CLOSURE_BOUND,
};
use mondef::scalar::{rat, Rat};
use mondef::suq2::*;
use mondef::triple::*;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Signed;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// oracles

/// `d_0 = 1, d_1 = n, d_{k+1} = n d_k − d_{k−1}`
fn ao_dims(n: u128, upto: usize) -> Vec<u128> {
    let mut d = vec![1, n];
    while d.len() <= upto {
        let k = d.len();
        d.push(n * d[k - 1] - d[k - 2]);
    }
    d
}

/// `[k+1]_q = q^k + q^{k−2} + … + q^{−k}`
fn q_number(k: i64, q: &Rat) -> Rat {
    (0..=k).map(|j| mondef::scalar::rat_pow(q, k - 2 * j)).sum()
}

fn podles(q: Rat, level: i32) -> IsotypicProfile {
    podles_profile(&q, &DiracConstants::new(rat(1, 1), rat(0, 1)).unwrap(), HalfInt(level)).unwrap()
}

/// `F = [[0, λ, 0], [1/λ, 0, 0], [0, 0, 1]]` with `λ² + λ⁻² = |q + 1/q| − 1`.
fn dim3_partner(q: &Rat) -> OrthogonalMatrixSpec {
    let s = mondef::scalar::rat_to_f64(&(q + q.recip())).abs() - 1.0;
    let lambda_sq = (s + (s * s - 4.0).sqrt()) / 2.0;
    OrthogonalMatrixSpec::symmetric_canonical(3, &[RealValue::Float(lambda_sq.sqrt())]).unwrap()
}

fn exact_table(t: &SpectrumTable) -> Vec<(Rat, u128)> {
    t.exact().expect("exact spectrum")
}

#[test]
fn single_block_table() {
    let ring = FusionRing::su_q2();
    let p = IsotypicProfile::new(
        Some(ring),
        rat(1, 2),
        vec![ProfileBlock {
            label: BlockLabel::Irrep(ring.label(2)),
            irrep_dim: 3,
            multiplicity: 1,
            dirac: Matrix::from_rows(vec![vec![rat(7, 3)]]),
            twist: Matrix::identity(1),
            woronowicz: WoronowiczBlock::Exact(suq2_woronowicz(2, &rat(1, 2))),
        }],
    );
    assert!(p.check().all_passed());
    assert_eq!(exact_table(&spectrum_table(&p)), vec![(rat(7, 3), 3)]);
    let entry = &spectrum_table(&p).entries[0];
    assert_eq!((entry.eigenvalue.to_string(), entry.labels.len()), ("7/3".to_string(), 1));
}

#[test]
fn podles_profile_matches_truncated_triple() {
    let p = podles(rat(1, 2), 5);
    assert!(p.check().all_passed());
    assert_eq!(p.total_dim(), 24);
    let table = exact_table(&spectrum_table(&p));
    let expected: Vec<(Rat, u128)> = [(-5, 6), (-3, 4), (-1, 2), (1, 2), (3, 4), (5, 6)].iter().map(|&(l, m)| (rat(l, 2), m)).collect();
    assert_eq!(table, expected);
    let t = build_truncated(&default_params(), &DiracConstants::new(rat(1, 1), rat(0, 1)).unwrap(), HalfInt(5)).unwrap();
    let literal: Vec<(Rat, u128)> = t.exact_spectrum().unwrap().into_iter().map(|(l, m)| (l, m as u128)).collect();
    assert_eq!(literal, table);
    assert_eq!(podles_profile_of(&t).unwrap(), p);
}

#[test]
fn identity_descriptor_leaves_profile_unchanged() {
    let p = podles(rat(1, 2), 7);
    let e = ProfileEquivalence::free(EquivalenceDescriptor::identity(FusionRing::su_q2(), rat(1, 2)));
    assert_eq!(deform_profile(&p, &e).unwrap(), p);
    assert!(round_trip(&p, &e).unwrap().all_passed());
}

#[test]
fn deformation_by_three_dimensional_partner() {
    let q = rat(-1, 3);
    let f = dim3_partner(&q);
    let desc = validate_partner(&q, &f).unwrap();
    assert!(!desc.dimension_preserving);
    let e = ProfileEquivalence::with_partner(desc, f);
    let p = podles(q.clone(), 5);
    let d = deform_profile(&p, &e).unwrap();
    let table = spectrum_table(&d);
    let oracle = ao_dims(3, 5);
    assert_eq!((oracle[1], oracle[3], oracle[5]), (3, 21, 144));
    assert_eq!(table.multiplicities(), vec![144, 21, 3, 3, 21, 144]);
    assert_eq!(table.eigenvalues_f64(), spectrum_table(&p).eigenvalues_f64());
    assert_eq!(d.total_dim(), 2 * (3 + 21 + 144));
    let report = check_deformation(&p, &d, &e).unwrap();
    assert!(report.all_passed(), "{report:?}");
    assert!(round_trip(&p, &e).unwrap().all_passed());
    // quantum dimensions against the oracle
    for k in [1u32, 3, 5] {
        let x = FusionRing::ao_f(3).label(k);
        assert_eq!(FusionRing::ao_f(3).dim_quantum(&x, &q).unwrap(), q_number(i64::from(k), &q));
    }
    let fundamental = d.blocks.iter().find(|b| b.label == BlockLabel::Irrep(FusionRing::ao_f(3).label(1))).unwrap();
    assert!(matches!(fundamental.woronowicz, WoronowiczBlock::Float(_)));
    assert!((fundamental.woronowicz.trace() - 10.0 / 3.0).abs() < 1e-12);
    let higher = d.blocks.iter().find(|b| b.label == BlockLabel::Irrep(FusionRing::ao_f(3).label(3))).unwrap();
    assert_eq!(higher.woronowicz, WoronowiczBlock::QuantumDimension(q_number(3, &q).abs()));
    assert!(check_profile_volume(&d, e_partner(&e)).unwrap().all_passed());
}

fn e_partner(e: &ProfileEquivalence) -> Option<&OrthogonalMatrixSpec> {
    match e {
        ProfileEquivalence::Free { partner, .. } => partner.as_ref(),
        ProfileEquivalence::CocycleTwist => None,
    }
}

#[test]
fn two_dimensional_partner_is_isospectral_and_matches_haar_f() {
    let q = rat(1, 2);
    let f = OrthogonalMatrixSpec::f_q(&q).unwrap();
    let desc = validate_partner(&q, &f).unwrap();
    assert!(desc.dimension_preserving);
    let e = ProfileEquivalence::with_partner(desc, f.clone());
    let p = podles(q.clone(), 5);
    let d = deform_profile(&p, &e).unwrap();
    assert_eq!(exact_table(&spectrum_table(&d)), exact_table(&spectrum_table(&p)));
    assert_eq!(d.total_dim(), p.total_dim());
    // F_q* F_q is exactly the SU_q(2) fundamental F
    assert_eq!(partner_fundamental(&f), Some(WoronowiczBlock::Exact(suq2_woronowicz(1, &q))));
    assert!(check_deformation(&p, &d, &e).unwrap().all_passed());
    assert!(round_trip(&p, &e).unwrap().all_passed());
}

#[test]
fn label_outside_restricted_domain_is_rejected() {
    let q = rat(1, 2);
    let desc = validate_partner(&q, &OrthogonalMatrixSpec::f_q(&q).unwrap()).unwrap();
    let even = restrict_equivalence(&desc, &even_subcategory(&FusionRing::su_q2())).unwrap();
    let p = podles(q, 3);
    assert!(matches!(deform_profile(&p, &ProfileEquivalence::free(even)), Err(TripleError::LabelOutsideDomain(_))));
}

fn random_profile(rng: &mut ChaCha8Rng, q: &Rat) -> IsotypicProfile {
    let ring = FusionRing::su_q2();
    let mut labels: Vec<u32> = (0..rng.gen_range(1..6)).map(|_| rng.gen_range(0..9)).collect();
    labels.sort();
    labels.dedup();
    let blocks = labels
        .into_iter()
        .map(|k| {
            let w = rng.gen_range(1..4);
            let mut d = Matrix::<Rat>::zeros(w, w);
            for i in 0..w {
                for j in i..w {
                    let v = rat(rng.gen_range(-9..10), rng.gen_range(1..5));
                    d[(i, j)] = v.clone();
                    d[(j, i)] = v;
                }
            }
            // R = 1 + D² is positive and commutes with D
            let r = &Matrix::identity(w) + &(&d * &d);
            ProfileBlock {
                label: BlockLabel::Irrep(ring.label(k)),
                irrep_dim: u128::from(k) + 1,
                multiplicity: w,
                dirac: d,
                twist: r,
                woronowicz: WoronowiczBlock::Exact(suq2_woronowicz(k, q)),
            }
        })
        .collect();
    IsotypicProfile::new(Some(ring), q.clone(), blocks)
}

#[test]
fn hundred_random_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let start = std::time::Instant::now();
    let mut non_preserving = 0;
    for trial in 0..100 {
        let (q, e) = match trial % 3 {
            0 => {
                let q = rat(1, 2);
                (q.clone(), ProfileEquivalence::free(EquivalenceDescriptor::identity(FusionRing::su_q2(), q)))
            }
            1 => {
                let q = rat(rng.gen_range(1..5), 5);
                let f = OrthogonalMatrixSpec::f_q(&q).unwrap();
                (q.clone(), ProfileEquivalence::with_partner(validate_partner(&q, &f).unwrap(), f))
            }
            _ => {
                let q = rat(-1, rng.gen_range(3..7));
                let f = dim3_partner(&q);
                non_preserving += 1;
                (q.clone(), ProfileEquivalence::with_partner(validate_partner(&q, &f).unwrap(), f))
            }
        };
        let p = random_profile(&mut rng, &q);
        assert!(p.check().all_passed());
        let report = round_trip(&p, &e).unwrap();
        assert!(report.all_passed(), "trial {trial}: {report:?}");
        let d = deform_profile(&p, &e).unwrap();
        assert!(check_deformation(&p, &d, &e).unwrap().all_passed(), "trial {trial}");
    }
    assert!(non_preserving > 30);
    assert!(start.elapsed().as_secs_f64() < 1.0, "{:?}", start.elapsed());
}

#[test]
fn haar_f_at_spin_half() {
    let alg = SuQ2::new(rat(1, 2)).unwrap();
    let basis = PeterWeylBasis::build(&alg, HalfInt(3)).unwrap();
    let w = woronowicz_f(&alg, &basis, HalfInt(1)).unwrap();
    assert!(w.report.all_passed(), "{:?}", w.report);
    // ordered −1/2, 1/2; read from +1/2 down it is diag(q, 1/q)
    assert_eq!(w.f, Matrix::diagonal(&[rat(2, 1), rat(1, 2)]));
    assert_eq!(w.column_route, Matrix::diagonal(&[rat(1, 2), rat(2, 1)]));
    assert_eq!(w.f.trace(), rat(5, 2));
    assert_eq!(w.f.inverse().unwrap().trace(), rat(5, 2));
    assert!(check_unitary(&alg, &basis, HalfInt(1)).unwrap());
}

#[test]
fn haar_f_matches_reference_at_higher_spins() {
    for q in [rat(1, 2), rat(-1, 3)] {
        let alg = SuQ2::new(q.clone()).unwrap();
        let basis = PeterWeylBasis::build(&alg, HalfInt(4)).unwrap();
        for s in 1..=3 {
            let w = woronowicz_f(&alg, &basis, HalfInt(s)).unwrap();
            assert!(w.report.all_passed(), "{:?}", w.report);
            assert_eq!(w.f, suq2_woronowicz(s as u32, &q), "spin {s}/2 at q = {q}");
            assert_eq!(w.f.trace(), q_number(i64::from(s), &q).abs());
        }
    }
}

#[test]
fn twisted_volume_holds_for_f_and_fails_when_swapped() {
    let q = rat(1, 2);
    let alg = SuQ2::new(q.clone()).unwrap();
    let basis = PeterWeylBasis::build(&alg, HalfInt(4)).unwrap();
    for s in 1..=3 {
        let f = suq2_woronowicz(s, &q);
        assert!(check_twisted_volume_block(&alg, &basis, HalfInt(s as i32), &f).unwrap().all_passed());
        let swapped = Matrix::from_fn(f.nrows(), f.ncols(), |i, j| f[(f.nrows() - 1 - i, f.ncols() - 1 - j)].clone());
        assert!(!check_twisted_volume_block(&alg, &basis, HalfInt(s as i32), &swapped).unwrap().all_passed());
        assert!(check_twisted_volume_block(&alg, &basis, HalfInt(s as i32), &Matrix::identity(f.nrows())).unwrap().first_failure().is_some());
    }
}

#[test]
fn podles_twist_matrix_commutes_with_dirac() {
    let t = build_truncated(&default_params(), &DiracConstants::new(rat(1, 1), rat(1, 3)).unwrap(), HalfInt(5)).unwrap();
    let r = podles_twist_matrix(&t);
    assert!(r.commutator(&t.dirac).is_zero());
    assert!(mondef::linalg::is_positive_definite(&r));
    let p = podles_profile_of(&t).unwrap();
    assert!(check_profile_volume(&p, None).unwrap().all_passed());
    let mut bad = p.clone();
    if let WoronowiczBlock::Exact(m) = &bad.blocks[0].woronowicz {
        bad.blocks[0].woronowicz = WoronowiczBlock::Exact(m.inverse().unwrap());
    }
    assert!(!check_profile_volume(&bad, None).unwrap().all_passed());
}

fn complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

#[test]
fn spectral_triple_checks() {
    let d = complex(&DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0, 2.0])));
    let empty = check_spectral_triple(&[], &d, 1e-12).unwrap();
    assert!(empty.report.all_passed());
    assert_eq!(empty.growth, vec![1.0, 1.0, 2.0]);

    let t = build_truncated(&default_params(), &DiracConstants::new(rat(1, 1), rat(0, 1)).unwrap(), HalfInt(5)).unwrap();
    let gens = vec![("A".to_string(), complex(&t.a)), ("B".to_string(), complex(&t.b))];
    let c = check_spectral_triple(&gens, &complex(&t.dirac_f64()), 1e-12).unwrap();
    assert!(c.report.all_passed());
    let (na, nb) = t.commutator_norms();
    assert!((c.commutator_norms[0].1 - na).abs() < 1e-12 && (c.commutator_norms[1].1 - nb).abs() < 1e-12);
    assert!((na - 1.60295).abs() < 1e-5 && (nb - 1.46022).abs() < 1e-5);

    let mut bad = complex(&t.dirac_f64());
    bad[(0, 1)] += Complex64::new(0.0, 0.5);
    assert!(!check_spectral_triple(&gens, &bad, 1e-12).unwrap().report.all_passed());
    assert!(check_spectral_triple(&gens, &complex(&DMatrix::zeros(2, 2)), 1e-12).is_err());
}

#[test]
fn equivariance_checks() {
    let ring = FusionRing::su_q2();
    let t = build_truncated(&default_params(), &DiracConstants::new(rat(1, 1), rat(0, 1)).unwrap(), HalfInt(5)).unwrap();
    let sites = podles_sites(&t);
    let d = complex(&t.dirac_f64());
    let gens = vec![("A".to_string(), complex(&t.a), vec![0, 2]), ("B".to_string(), complex(&t.b), vec![2])];
    let report = check_equivariance(&ring, &sites, &d, &gens, 1e-9).unwrap();
    assert!(report.all_passed(), "{report:?}");
    // B alone is not in r_0
    let narrow = vec![("B".to_string(), complex(&t.b), vec![0])];
    assert!(!check_equivariance(&ring, &sites, &d, &narrow, 1e-9).unwrap().all_passed());
    // D perturbed on one row of a multiplet
    let mut bad = d.clone();
    let i = sites.iter().position(|s| s.label == ring.label(3) && s.row == 0 && s.copy == 0).unwrap();
    let j = sites.iter().position(|s| s.label == ring.label(3) && s.row == 0 && s.copy == 1).unwrap();
    bad[(i, j)] += Complex64::new(0.25, 0.0);
    bad[(j, i)] += Complex64::new(0.25, 0.0);
    assert!(!check_equivariance(&ring, &sites, &bad, &gens, 1e-9).unwrap().all_passed());
    // trivial group
    let trivial: Vec<Site> = (0..3).map(|k| Site { label: ring.label(0), copy: k, row: 0 }).collect();
    let any = complex(&DMatrix::from_row_slice(3, 3, &[1.0, 2.0, 0.0, 2.0, -1.0, 0.5, 0.0, 0.5, 3.0]));
    assert!(check_equivariance(&ring, &trivial, &any, &[("a".into(), any.clone(), vec![0])], 1e-12).unwrap().all_passed());
}

#[test]
fn qiso_bookkeeping() {
    let q = rat(-1, 3);
    let labels = podles_qiso(&q).unwrap();
    assert_eq!(labels.support, LabelSet::even());
    assert_eq!(labels.derived, "SO_q(3)");
    assert!(labels.check(DEFAULT_CLOSURE_BOUND).all_passed());
    let desc = validate_partner(&q, &dim3_partner(&q)).unwrap();
    let after = qiso_deform(&labels, &desc).unwrap();
    assert_eq!(after.derived, "I(F)");
    assert_eq!(after.ambient, "A_o(F)");
    assert_eq!(qiso_line(&labels, &after), "QISO: SO_q(3) -> I(F)");
    let restricted = restrict_equivalence(&desc, &even_subcategory(&FusionRing::su_q2())).unwrap();
    assert_eq!(restricted.labels, after.support);
    assert_eq!(restricted.target_name, after.derived);
    assert!(after.check(DEFAULT_CLOSURE_BOUND).all_passed());

    let trivial = support_from_generators(&[], DEFAULT_CLOSURE_BOUND);
    assert_eq!(trivial, LabelSet::finite([0]));
    assert_eq!(support_from_generators(&[vec![1]], DEFAULT_CLOSURE_BOUND), LabelSet::all());
}

#[test]
fn cross_engine_agreement_on_toy_triple() {
    let t = toy_triple(&[2, 2]).unwrap();
    let sigma = DualCocycle::new(&t.hopf, bicharacter_table(&[2, 2], 2, &[vec![0, 0], vec![1, 0]]).unwrap()).unwrap();
    let p = finite_profile(&t).unwrap();
    assert_eq!(p.blocks.len(), 4);
    let deformed = deform_profile(&p, &ProfileEquivalence::CocycleTwist).unwrap();
    let d = deform_triple_finite(&t, &sigma).unwrap();
    assert!(d.report.all_passed());
    let literal = literal_spectrum(&d.triple.dirac, &d.triple.gram).unwrap();
    let table = spectrum_table(&deformed);
    assert_eq!(literal.exact(), table.exact());
    assert_eq!(exact_table(&table), vec![(rat(0, 1), 1), (rat(1, 1), 2), (rat(2, 1), 1)]);
    // the deformed triple decomposes the same way
    assert_eq!(spectrum_table(&finite_profile(&d.triple).unwrap()).exact(), table.exact());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deformation_conserves_blockwise(seed in any::<u64>(), k in 1u32..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = rat(-1, 3);
        let p = random_profile(&mut rng, &q);
        let f = dim3_partner(&q);
        let e = ProfileEquivalence::with_partner(validate_partner(&q, &f).unwrap(), f);
        let d = deform_profile(&p, &e).unwrap();
        let dims = ao_dims(3, 9);
        let expected: u128 = p.blocks.iter().map(|b| match &b.label {
            BlockLabel::Irrep(x) => dims[x.index as usize] * b.multiplicity as u128,
            _ => unreachable!(),
        }).sum();
        prop_assert_eq!(d.total_dim(), expected);
        let mut w_before: Vec<usize> = p.blocks.iter().map(|b| b.multiplicity).collect();
        let mut w_after: Vec<usize> = d.blocks.iter().map(|b| b.multiplicity).collect();
        w_before.sort();
        w_after.sort();
        prop_assert_eq!(w_before, w_after);
        prop_assert_eq!(spectrum_table(&p).eigenvalues_f64(), spectrum_table(&d).eigenvalues_f64());
        prop_assert!(check_profile_volume(&d, e_partner(&e)).unwrap().all_passed());
        // quantum dimensions of r_k agree on both sides
        let x = FusionRing::su_q2().label(k);
        let y = FusionRing::ao_f(3).label(k);
        prop_assert_eq!(FusionRing::su_q2().dim_quantum(&x, &q).unwrap(), FusionRing::ao_f(3).dim_quantum(&y, &q).unwrap());
    }
}
