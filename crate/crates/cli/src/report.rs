//! Seeded randomized checks: profile round trips through monoidal
//! equivalences, and bicharacter cocycles on small abelian groups.

use crate::error::CliError;
use crate::io::emit_json;
use crate::{ReportArgs, Verdict};
use mondef::hopf::{bicharacter_table, check_dual_cocycle, check_round_trip, toy_triple, DualCocycle};
use mondef::linalg::Matrix;
use mondef::repcat::{validate_partner, EquivalenceDescriptor, FusionRing, OrthogonalMatrixSpec, RealValue};
use mondef::report::Report;
use mondef::scalar::{rat, rat_to_f64, Rat};
use mondef::triple::{check_deformation, deform_profile, round_trip, suq2_woronowicz, BlockLabel, IsotypicProfile, ProfileBlock, ProfileEquivalence, WoronowiczBlock};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

fn random_profile(rng: &mut ChaCha8Rng, q: &Rat) -> IsotypicProfile {
    let ring = FusionRing::su_q2();
    let mut labels: Vec<u32> = (0..rng.gen_range(1..6)).map(|_| rng.gen_range(0..9)).collect();
    labels.sort_unstable();
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
            // 1 + D² is positive and commutes with D
            let twist = &Matrix::identity(w) + &(&d * &d);
            ProfileBlock {
                label: BlockLabel::Irrep(ring.label(k)),
                irrep_dim: u128::from(k) + 1,
                multiplicity: w,
                dirac: d,
                twist,
                woronowicz: WoronowiczBlock::Exact(suq2_woronowicz(k, q)),
            }
        })
        .collect();
    IsotypicProfile::new(Some(ring), q.clone(), blocks)
}

/// `[[0, λ, 0], [1/λ, 0, 0], [0, 0, 1]]` with `λ² + λ⁻² = |q + 1/q| − 1`.
fn three_dimensional_partner(q: &Rat) -> Result<OrthogonalMatrixSpec, CliError> {
    let s = rat_to_f64(&(q + q.recip())).abs() - 1.0;
    let lambda_sq = (s + (s * s - 4.0).sqrt()) / 2.0;
    OrthogonalMatrixSpec::symmetric_canonical(3, &[RealValue::Float(lambda_sq.sqrt())]).map_err(CliError::failed)
}

fn random_equivalence(rng: &mut ChaCha8Rng, trial: u32) -> Result<(Rat, ProfileEquivalence), CliError> {
    Ok(match trial % 3 {
        0 => {
            let q = rat(rng.gen_range(1..10), 10);
            (q.clone(), ProfileEquivalence::free(EquivalenceDescriptor::identity(FusionRing::su_q2(), q)))
        }
        1 => {
            let q = rat(rng.gen_range(1..5), 5);
            let f = OrthogonalMatrixSpec::f_q(&q).map_err(CliError::failed)?;
            (q.clone(), ProfileEquivalence::with_partner(validate_partner(&q, &f).map_err(CliError::failed)?, f))
        }
        _ => {
            // |q + 1/q| ≥ 3 leaves room for a three-dimensional partner
            let q = rat(-1, rng.gen_range(3..8));
            let f = three_dimensional_partner(&q)?;
            (q.clone(), ProfileEquivalence::with_partner(validate_partner(&q, &f).map_err(CliError::failed)?, f))
        }
    })
}

/// Random bicharacter `ζ^{Σ a_i M_ij b_j}` on one of `Z₂²`, `Z₃²`, `Z₄`.
fn random_cocycle(rng: &mut ChaCha8Rng) -> (Vec<u32>, Vec<Vec<i64>>) {
    let orders = match rng.gen_range(0..3) {
        0 => vec![2, 2],
        1 => vec![3, 3],
        _ => vec![4],
    };
    let n = orders[0] as i64;
    let form = (0..orders.len()).map(|_| (0..orders.len()).map(|_| rng.gen_range(0..n)).collect()).collect();
    (orders, form)
}

pub fn run(args: &ReportArgs) -> Result<Verdict, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut report = Report::new();
    let mut preserving = 0;
    for trial in 0..args.trials {
        let (q, e) = random_equivalence(&mut rng, trial)?;
        preserving += u32::from(e.is_dimension_preserving());
        let p = random_profile(&mut rng, &q);
        let mut r = p.check();
        match round_trip(&p, &e) {
            Ok(rt) => r.merge("round trip", rt),
            Err(err) => r.fail("round trip", err.to_string()),
        }
        match deform_profile(&p, &e).and_then(|d| check_deformation(&p, &d, &e)) {
            Ok(c) => r.merge("deformation", c),
            Err(err) => r.fail("deformation", err.to_string()),
        }
        report.push(format!("profile trial {trial}"), r.all_passed(), r.first_failure().map(|c| c.name.clone()));
    }
    for trial in 0..args.cocycle_trials {
        let (orders, form) = random_cocycle(&mut rng);
        let name = format!("cocycle trial {trial}: Z{orders:?} form {form:?}");
        let table = bicharacter_table(&orders, i64::from(orders[0]), &form).map_err(CliError::failed)?;
        let t = toy_triple(&orders).map_err(CliError::failed)?;
        let mut r = check_dual_cocycle(&t.hopf, &table);
        match DualCocycle::new(&t.hopf, table).and_then(|sigma| check_round_trip(&t, &sigma)) {
            Ok(rt) => r.merge("round trip", rt),
            Err(err) => r.fail("round trip", err.to_string()),
        }
        report.push(name, r.all_passed(), r.first_failure().map(|c| c.name.clone()));
    }
    let passed = report.all_passed();
    let doc = json!({
        "seed": args.seed,
        "profile_trials": args.trials,
        "dimension_preserving_trials": preserving,
        "cocycle_trials": args.cocycle_trials,
        "failures": report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>(),
        "passed": passed,
    });
    emit_json(&doc, args.out.as_ref())?;
    Ok(if passed { Verdict::Pass } else { Verdict::Fail })
}
