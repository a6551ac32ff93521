use mondef::repcat::*;
use mondef::scalar::{rat, rat_pow, Rat};
use num_traits::Signed;
use proptest::prelude::*;
use std::collections::BTreeMap;

// oracles

/// `d_k = Σ_j (−1)^j C(k−j, j) m^{k−2j}`, the closed form of the three-term
/// recursion with `x + y = m`, `xy = 1`.
fn closed_form_dim(m: u32, k: u32) -> i128 {
    let binom = |n: u32, r: u32| -> i128 { (0..r).fold(1i128, |acc, i| acc * i128::from(n - i) / i128::from(i + 1)) };
    (0..=k / 2).map(|j| (if j % 2 == 0 { 1 } else { -1 }) * binom(k - j, j) * i128::from(m).pow(k - 2 * j)).sum()
}

/// Weights of `r_k` as a Laurent polynomial in `z`: `z^k + z^{k−2} + … + z^{−k}`.
fn character(k: u32) -> BTreeMap<i64, i64> {
    (0..=k).map(|i| (i64::from(k) - 2 * i64::from(i), 1)).collect()
}

/// Decompose `χ_j χ_k` by peeling off highest weights.
fn fuse_by_characters(j: u32, k: u32) -> Vec<u32> {
    let mut prod: BTreeMap<i64, i64> = BTreeMap::new();
    for (a, x) in character(j) {
        for (b, y) in character(k) {
            *prod.entry(a + b).or_default() += x * y;
        }
    }
    let mut out = Vec::new();
    while let Some((&top, &mult)) = prod.iter().rev().find(|(_, &c)| c != 0) {
        assert!(mult > 0 && top >= 0);
        for _ in 0..mult {
            out.push(top as u32);
            for (w, c) in character(top as u32) {
                *prod.entry(w).or_default() -= c;
            }
        }
    }
    out.sort_unstable();
    out
}

fn q_number(k: u32, q: &Rat) -> Rat {
    (0..=i64::from(k)).map(|j| rat_pow(q, i64::from(k) - 2 * j)).sum()
}

fn nonzero_q() -> impl Strategy<Value = Rat> {
    (1i64..40, 2i64..41, any::<bool>())
        .prop_filter("inside (-1, 1)", |(n, d, _)| n < d)
        .prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
}

#[test]
fn fusion_matches_character_decomposition() {
    let su = FusionRing::su_q2();
    for j in 0..=15 {
        for k in 0..=15 {
            let got: Vec<u32> = su.fuse(&su.label(j), &su.label(k)).unwrap().iter().map(|x| x.index).collect();
            assert_eq!(got, fuse_by_characters(j, k), "r_{j} ⊗ r_{k}");
        }
    }
    let ao = FusionRing::ao_f(3);
    let got: Vec<u32> = ao.fuse(&ao.label(2), &ao.label(2)).unwrap().iter().map(|x| x.index).collect();
    assert_eq!(got, vec![0, 2, 4]);
    assert_eq!(8 * 8, 1 + 8 + 55);
}

#[test]
fn classical_dims_match_closed_form_and_are_log_concave() {
    for m in 3..=12 {
        for k in 0..=30 {
            let d = classical_dim(m, k).unwrap();
            assert_eq!(d as i128, closed_form_dim(m, k), "m = {m}, k = {k}");
            assert!(d > u128::from(k) + 1 || k == 0);
            if k >= 1 {
                let (lo, hi) = (classical_dim(m, k - 1).unwrap(), classical_dim(m, k + 1).unwrap());
                let big = num_bigint::BigUint::from;
                assert!(big(lo) * big(hi) <= big(d) * big(d));
            }
        }
    }
    for k in 0..=30 {
        assert_eq!(classical_dim(2, k).unwrap(), u128::from(k) + 1);
    }
    assert_eq!(classical_dim(1, 0), Err(RepcatError::DimensionParameter(1)));
}

#[test]
fn fusion_respects_classical_and_quantum_dims() {
    let q = rat(-2, 7);
    for m in [2, 3, 5] {
        let ring = if m == 2 { FusionRing::su_q2() } else { FusionRing::ao_f(m) };
        for j in 0..=15 {
            for k in 0..=15 {
                let (a, b) = (ring.label(j), ring.label(k));
                let parts = ring.fuse(&a, &b).unwrap();
                let classical: u128 = parts.iter().map(|x| ring.dim_classical(x).unwrap()).sum();
                assert_eq!(classical, ring.dim_classical(&a).unwrap() * ring.dim_classical(&b).unwrap());
                let quantum: Rat = parts.iter().map(|x| ring.dim_quantum(x, &q).unwrap()).sum();
                assert_eq!(quantum, ring.dim_quantum(&a, &q).unwrap() * ring.dim_quantum(&b, &q).unwrap());
            }
        }
    }
}

#[test]
fn quantum_dims_are_q_numbers() {
    for q in [rat(1, 2), rat(-1, 3), rat(5, 7)] {
        for k in 0..12 {
            assert_eq!(quantum_dim(k, &q).unwrap(), q_number(k, &q));
        }
    }
    assert_eq!(quantum_dim(1, &rat(1, 2)).unwrap(), rat(5, 2));
    assert_eq!(quantum_dim(2, &rat(1, 2)).unwrap(), rat(21, 4));
}

#[test]
fn three_dimensional_partner_at_minus_a_third() {
    // λ² = (7 − √13)/6 solves λ² + λ⁻² + 1 = 10/3
    let lambda_sq = (7.0 - 13f64.sqrt()) / 6.0;
    assert!((lambda_sq + 1.0 / lambda_sq + 1.0 - 10.0 / 3.0).abs() < 1e-14);
    let f = OrthogonalMatrixSpec::symmetric_canonical(3, &[RealValue::Float(lambda_sq.sqrt())]).unwrap();
    let e = validate_partner(&rat(-1, 3), &f).unwrap();
    assert!(!e.dimension_preserving);
    assert_eq!((e.source_name.as_str(), e.target_name.as_str(), e.target.m), ("SU_q(2)", "A_o(F)", 3));
    assert!((e.trace_ff_float - 10.0 / 3.0).abs() < 1e-12);
    // wrong λ: residual is the trace mismatch
    let off = OrthogonalMatrixSpec::symmetric_canonical(3, &[RealValue::Float(lambda_sq.sqrt() * 0.9)]).unwrap();
    assert!(matches!(validate_partner(&rat(-1, 3), &off), Err(RepcatError::ConstraintViolated { residual, .. }) if residual > 1e-3));
    // a positive q needs the antisymmetric shape
    assert!(validate_partner(&rat(1, 3), &f).is_err());
}

#[test]
fn matrix_json_round_trip() {
    let f = OrthogonalMatrixSpec::f_q(&rat(1, 2)).unwrap();
    assert_eq!(OrthogonalMatrixSpec::from_json(&f.to_json()).unwrap(), f);
    let v = serde_json::json!({"n": 2, "entries": [["0", "0"], ["sqrt(1/2)", "0"], ["-sqrt(2)", "0"], ["0", "0"]]});
    assert_eq!(OrthogonalMatrixSpec::from_json(&v).unwrap(), f);
    assert!(matches!(OrthogonalMatrixSpec::from_json(&serde_json::json!({"n": 2})), Err(RepcatError::Parse(_))));
    assert!(OrthogonalMatrixSpec::from_json(&serde_json::json!({"n": 2, "entries": [["0", "0"]]})).is_err());
}

proptest! {
    #[test]
    fn f_q_is_always_an_accepted_preserving_partner(q in nonzero_q()) {
        let f = OrthogonalMatrixSpec::f_q(&q).unwrap();
        let e = validate_partner(&q, &f).unwrap();
        prop_assert!(e.dimension_preserving);
        prop_assert_eq!(e.trace_ff, Some(q_number(1, &q).abs()));
    }

    #[test]
    fn even_subcategory_is_closed(bound in 0u32..40) {
        for ring in [FusionRing::su_q2(), FusionRing::ao_f(4)] {
            let s = even_subcategory(&ring);
            prop_assert!(s.labels.check_fusion_closed(bound).is_ok());
            for k in s.labels.members(bound) {
                prop_assert!(s.labels.contains(ring.conjugate(&ring.label(k)).index));
                for x in ring.fuse(&ring.label(k), &ring.label(k)).unwrap() {
                    prop_assert!(s.labels.contains(x.index));
                }
            }
        }
    }

    #[test]
    fn restriction_to_even_labels_renames_and_round_trips(q in nonzero_q()) {
        let f = OrthogonalMatrixSpec::f_q(&q).unwrap();
        let e = validate_partner(&q, &f).unwrap();
        let even = restrict_equivalence(&e, &even_subcategory(&FusionRing::su_q2())).unwrap();
        prop_assert_eq!(even.target_name.as_str(), "I(F)");
        prop_assert!(even.in_domain(&FusionRing::su_q2().label(4)));
        prop_assert!(!even.in_domain(&FusionRing::su_q2().label(3)));
        prop_assert_eq!(restrict_equivalence(&e, &Subcategory::full(FusionRing::su_q2())).unwrap(), e);
    }
}
