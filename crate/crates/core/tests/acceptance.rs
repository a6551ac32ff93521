//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines always reach the test log; exits nonzero if any
//! criterion fails.

use mondef::hopf::{
    bicharacter_table, check_bhalg, check_comodule_algebra, check_dual_cocycle, check_pi_sigma, deform_triple_finite, group_algebra, pi_sigma,
    toy_triple, twist_comodule_algebra, verify_cocycle_equivalence, ComoduleAlgebra, DualCocycle, FiniteHopfAlgebra, StarConvention,
};
use mondef::linalg::Matrix;
use mondef::repcat::{
    even_subcategory, restrict_equivalence, validate_partner, EquivalenceDescriptor, FusionRing, OrthogonalMatrixSpec, RealValue,
    DEFAULT_CLOSURE_BOUND,
};
use mondef::report::Report;
use mondef::scalar::{rat, rat_pow, rat_to_f64, Rat};
use mondef::suq2::*;
use mondef::triple::*;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn passed(r: &Report, what: &str) -> Result<(), String> {
    match r.first_failure() {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} {}", c.name, c.detail.clone().unwrap_or_default())),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// The three abelian instances: sign twist on `Z₂²`, `ω^{a₂b₁}` on `Z₃²`,
/// `i^{ab}` on `Z₄`.
fn instances() -> Result<Vec<(Vec<u32>, FiniteHopfAlgebra, DualCocycle)>, String> {
    [(vec![2, 2], 2, vec![vec![0, 0], vec![1, 0]]), (vec![3, 3], 3, vec![vec![0, 0], vec![1, 0]]), (vec![4], 4, vec![vec![1]])]
        .into_iter()
        .map(|(orders, root, form)| {
            let h = group_algebra(&orders).map_err(err)?;
            let sigma = DualCocycle::new(&h, bicharacter_table(&orders, root, &form).map_err(err)?).map_err(err)?;
            Ok((orders, h, sigma))
        })
        .collect()
}

/// `[k+1]_q = q^k + q^{k−2} + … + q^{−k}`
fn q_number(k: u32, q: &Rat) -> Rat {
    (0..=i64::from(k)).map(|j| rat_pow(q, i64::from(k) - 2 * j)).sum()
}

/// `d_0 = 1, d_1 = n, d_{k+1} = n d_k − d_{k−1}`
fn ao_dim(n: u128, k: usize) -> u128 {
    let mut d = vec![1, n];
    while d.len() <= k {
        let i = d.len();
        d.push(n * d[i - 1] - d[i - 2]);
    }
    d[k]
}

fn dim3_partner(q: &Rat) -> Result<OrthogonalMatrixSpec, String> {
    let s = rat_to_f64(&(q + q.recip())).abs() - 1.0;
    let lambda_sq = (s + (s * s - 4.0).sqrt()) / 2.0;
    OrthogonalMatrixSpec::symmetric_canonical(3, &[RealValue::Float(lambda_sq.sqrt())]).map_err(err)
}

fn unit_dirac() -> DiracConstants {
    DiracConstants::new(Rat::one(), Rat::zero()).expect("nonzero c1")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut dims = Vec::new();
    for (orders, h, sigma) in instances()? {
        passed(&check_dual_cocycle(&h, sigma.table()), "cocycle identity")?;
        let hs = mondef::hopf::twist_hopf(&h, &sigma).map_err(err)?;
        let tw = twist_comodule_algebra(&h, &ComoduleAlgebra::regular(&h), &sigma).map_err(err)?;
        // associativity, unit, star involutive and antimultiplicative, coaction
        passed(&check_comodule_algebra(&hs, &tw), "twisted algebra")?;
        let t = toy_triple(&orders).map_err(err)?;
        let twt = twist_comodule_algebra(&h, &t.algebra, &sigma).map_err(err)?;
        passed(&check_comodule_algebra(&hs, &twt), "twisted triple algebra")?;
        passed(&check_pi_sigma(&t, &twt.algebra, &pi_sigma(&t, &sigma)), "pi_sigma")?;
        dims.push(h.dim());
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(dims.iter().all(|&d| d <= 16), "dimension above 16")?;
    ensure(secs < 10.0, format!("{secs:.2} s"))?;
    Ok(format!("Z2^2, Z3^2, Z4 (dims {dims:?}) exact, {secs:.2} s"))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for (orders, h, sigma) in instances()? {
        passed(&check_bhalg(&h, &ComoduleAlgebra::regular(&h), &sigma).map_err(err)?, "regular")?;
        let t = toy_triple(&orders).map_err(err)?;
        passed(&check_bhalg(&h, &t.algebra, &sigma).map_err(err)?, "triple algebra")?;
        count += 2;
    }
    ensure(count >= 3, "fewer than 3 instances")?;
    Ok(format!("structure tensors equal on {count} instances"))
}

fn criterion_3() -> Outcome {
    let (_, h, sigma) = instances()?.remove(0);
    let t = toy_triple(&[2, 2]).map_err(err)?;
    ensure(t.hopf == h, "toy triple over a different algebra")?;
    let d = deform_triple_finite(&t, &sigma).map_err(err)?;
    passed(&d.report, "literal construction")?;
    let before = literal_spectrum(&t.dirac, &t.gram).ok_or("spectrum of D not exact")?;
    let after = literal_spectrum(&d.triple.dirac, &d.triple.gram).ok_or("spectrum of D~ not exact")?;
    ensure(before.exact().is_some() && before.exact() == after.exact(), "Sp D~ differs from Sp D")?;
    let profile = deform_profile(&finite_profile(&t).map_err(err)?, &ProfileEquivalence::CocycleTwist).map_err(err)?;
    ensure(spectrum_table(&profile).exact() == after.exact(), "deform_profile disagrees with the literal D~")?;
    let r = verify_cocycle_equivalence(&t, &sigma, StarConvention::VCorrected).map_err(err)?;
    passed(&r, "cocycle equivalence")?;
    for name in ["‖φD − D̃φ‖ = 0", "φ intertwines π_σ with Ã"] {
        ensure(r.get(name).is_some_and(|c| c.passed), format!("{name} not checked"))?;
    }
    let spec: Vec<String> = after.exact().unwrap().iter().map(|(l, m)| format!("{l}x{m}")).collect();
    Ok(format!("spectrum {} literal = profile = undeformed; phi exact (residual 0)", spec.join(" ")))
}

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

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let (q, e) = match trial % 3 {
            0 => {
                let q = rat(1, 2);
                (q.clone(), ProfileEquivalence::free(EquivalenceDescriptor::identity(FusionRing::su_q2(), q)))
            }
            1 => {
                let q = rat(rng.gen_range(1..5), 5);
                let f = OrthogonalMatrixSpec::f_q(&q).map_err(err)?;
                (q.clone(), ProfileEquivalence::with_partner(validate_partner(&q, &f).map_err(err)?, f))
            }
            _ => {
                let q = rat(-1, rng.gen_range(3..7));
                let f = dim3_partner(&q)?;
                (q.clone(), ProfileEquivalence::with_partner(validate_partner(&q, &f).map_err(err)?, f))
            }
        };
        let p = random_profile(&mut rng, &q);
        passed(&round_trip(&p, &e).map_err(err)?, &format!("trial {trial}"))?;
    }
    let q = rat(-1, 3);
    let f = dim3_partner(&q)?;
    let e = ProfileEquivalence::with_partner(validate_partner(&q, &f).map_err(err)?, f);
    let podles = podles_profile(&q, &unit_dirac(), HalfInt(5)).map_err(err)?;
    passed(&round_trip(&podles, &e).map_err(err)?, "Podles")?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 1.0, format!("{secs:.3} s"))?;
    Ok(format!("100 random profiles + Podles profile exact, {secs:.3} s"))
}

fn criterion_5() -> Outcome {
    use Generator::*;
    let start = Instant::now();
    let q = rat(1, 2);
    let g = SuQ2::new(q.clone()).map_err(err)?;
    let hgg = haar(&g, &g.normal_form(&[GammaStar, Gamma]), 2).map_err(err)?;
    ensure(hgg == rat(4, 5), format!("h(γ*γ) = {hgg}"))?;
    let basis = PeterWeylBasis::build(&g, HalfInt(7)).map_err(err)?;
    let w = |w: &[Generator]| g.normal_form(w);
    let d_half = basis.matrix(HalfInt(1)).ok_or("no spin 1/2")?;
    let reference_half = [[w(&[Alpha]), w(&[GammaStar]).scale(&-q.clone())], [w(&[Gamma]), w(&[AlphaStar])]];
    ensure((0..2).all(|i| (0..2).all(|j| d_half[i][j] == reference_half[i][j])), "d^1/2 differs from the reference array")?;
    let s = Rat::one() + &q * &q;
    let one = Pbw::<Rat>::one();
    // reference order (+1, 0, −1)
    let reference_one = [
        [w(&[AlphaStar, AlphaStar]), w(&[AlphaStar, Gamma]).scale(&-s.clone()), w(&[Gamma, Gamma]).scale(&-q.clone())],
        [w(&[GammaStar, AlphaStar]), &one - &w(&[GammaStar, Gamma]).scale(&s), w(&[Alpha, Gamma])],
        [w(&[GammaStar, GammaStar]).scale(&-q.clone()), w(&[GammaStar, Alpha]).scale(&-s), w(&[Alpha, Alpha])],
    ];
    let d_one = basis.matrix(HalfInt(2)).ok_or("no spin 1")?;
    ensure((0..3).all(|i| (0..3).all(|j| d_one[2 - i][2 - j] == reference_one[i][j])), "d^1 differs from the reference array")?;
    passed(&basis.verify(&g).map_err(err)?, "Peter-Weyl orthogonality")?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, format!("{secs:.1} s"))?;
    Ok(format!("h(γ*γ) = 4/5, d^1/2 and d^1 match, {} coefficients orthogonal to N = 7/2, {secs:.2} s", basis.len()))
}

fn criterion_6() -> Outcome {
    let params = PodlesParams::new(rat(1, 2), rat(1, 2)).map_err(err)?;
    ensure(params.c() == rat(3, 2), "c ≠ 3/2")?;
    let t = build_truncated(&params, &unit_dirac(), HalfInt(7)).map_err(err)?;
    let res = t.interior_residuals();
    ensure(res.len() == 4, "expected four relations")?;
    let worst = res.iter().map(|(_, r)| *r).fold(0.0, f64::max);
    if let Some((name, r)) = res.iter().find(|(_, r)| r.is_nan() || *r >= 1e-9) {
        return Err(format!("{name}: {r:e}"));
    }
    Ok(format!("max interior residual {worst:.2e} < 1e-9 at N = 7/2"))
}

fn criterion_7() -> Outcome {
    let t = build_truncated(&default_params(), &unit_dirac(), HalfInt(5)).map_err(err)?;
    let expect: Vec<(Rat, usize)> = [(-5, 6), (-3, 4), (-1, 2), (1, 2), (3, 4), (5, 6)].iter().map(|&(l, m)| (rat(l, 2), m)).collect();
    let literal = t.exact_spectrum().ok_or("spectrum not rational")?;
    ensure(literal == expect, format!("literal spectrum {literal:?}"))?;
    let profile = podles_profile_of(&t).map_err(err)?;
    let table: Vec<(Rat, usize)> = spectrum_table(&profile).exact().ok_or("profile not exact")?.into_iter().map(|(l, m)| (l, m as usize)).collect();
    ensure(table == expect, "profile spectrum differs")?;
    Ok("±1/2x2, ±3/2x4, ±5/2x6 exact (literal D and profile)".into())
}

fn criterion_8() -> Outcome {
    let q = rat(-1, 3);
    let f = dim3_partner(&q)?;
    let desc = validate_partner(&q, &f).map_err(err)?;
    ensure(!desc.dimension_preserving, "partner flagged dimension-preserving")?;
    let e = ProfileEquivalence::with_partner(desc, f);
    let p = podles_profile(&q, &unit_dirac(), HalfInt(5)).map_err(err)?;
    let d = deform_profile(&p, &e).map_err(err)?;
    let (before, after) = (spectrum_table(&p), spectrum_table(&d));
    let want: Vec<u128> = [5, 3, 1, 1, 3, 5].iter().map(|&k| ao_dim(3, k)).collect();
    ensure(after.multiplicities() == want, format!("multiplicities {:?}", after.multiplicities()))?;
    ensure(after.multiplicities() == [144, 21, 3, 3, 21, 144], "oracle mismatch")?;
    ensure(after.eigenvalues_f64() == before.eigenvalues_f64(), "eigenvalue set changed")?;
    passed(&check_deformation(&p, &d, &e).map_err(err)?, "deformation invariants")?;
    let ao = FusionRing::ao_f(3);
    for (b, bd) in p.blocks.iter().zip(&d.blocks) {
        let (BlockLabel::Irrep(x), BlockLabel::Irrep(y)) = (&b.label, &bd.label) else {
            return Err("non-irrep block".into());
        };
        let (dx, dy) = (FusionRing::su_q2().dim_quantum(x, &q).map_err(err)?, ao.dim_quantum(y, &q).map_err(err)?);
        ensure(dx == dy && dx == q_number(x.index, &q), format!("quantum dims differ at {x}"))?;
    }
    Ok("multiplicities 3, 21, 144 at ±1/2, ±3/2, ±5/2; eigenvalues and quantum dims unchanged".into())
}

fn criterion_9() -> Outcome {
    let q = rat(1, 2);
    let g = SuQ2::new(q.clone()).map_err(err)?;
    let basis = PeterWeylBasis::build(&g, HalfInt(3)).map_err(err)?;
    let solve = woronowicz_f(&g, &basis, HalfInt(1)).map_err(err)?;
    passed(&solve.report, "Haar solve")?;
    let diag = |m: &Matrix<Rat>| (0..m.nrows()).map(|i| m[(i, i)].clone()).collect::<Vec<_>>();
    let f = diag(&solve.f);
    // basis order (−1/2, +1/2); read from +1/2 down this is diag(q, 1/q)
    let from_top: Vec<Rat> = f.iter().rev().cloned().collect();
    ensure(from_top == [q.clone(), q.recip()], format!("F = diag{f:?}"))?;
    let off_diagonal = (0..2).any(|i| (0..2).any(|j| i != j && !solve.f[(i, j)].is_zero()));
    ensure(!off_diagonal, "F not diagonal")?;
    let (tr_row, tr_col) = (f.iter().sum::<Rat>(), diag(&solve.column_route).iter().sum::<Rat>());
    ensure(tr_row == rat(5, 2) && tr_col == rat(5, 2), format!("traces {tr_row}, {tr_col}"))?;

    let mut checked = 0;
    for (qq, partner) in [
        (rat(1, 2), OrthogonalMatrixSpec::f_q(&rat(1, 2)).map_err(err)?),
        (rat(-1, 3), dim3_partner(&rat(-1, 3))?),
        (rat(-1, 5), dim3_partner(&rat(-1, 5))?),
        (rat(2, 7), OrthogonalMatrixSpec::f_q(&rat(2, 7)).map_err(err)?),
    ] {
        let desc = validate_partner(&qq, &partner).map_err(err)?;
        let fm = partner.to_complex();
        let tr = (fm.adjoint() * &fm).trace();
        let target = rat_to_f64(&(&qq + qq.recip()).abs());
        ensure((tr.re - target).abs() < 1e-12 && tr.im.abs() < 1e-12, format!("Tr F*F = {tr} at q = {qq}"))?;
        let e = ProfileEquivalence::with_partner(desc, partner.clone());
        let deformed = deform_profile(&podles_profile(&qq, &unit_dirac(), HalfInt(5)).map_err(err)?, &e).map_err(err)?;
        passed(&check_profile_volume(&deformed, Some(&partner)).map_err(err)?, "deformed R-twisted volume")?;
        checked += 1;
    }
    Ok(format!("F = diag(q, 1/q) from the Haar solve, weights read from +1/2 down (Tr 5/2 by rows and columns); volume and Tr F*F = |q+1/q| on {checked} partners"))
}

fn criterion_10() -> Outcome {
    let q = rat(1, 2);
    let before = podles_qiso(&q).map_err(err)?;
    ensure(before.support.is_even(), format!("support {}", before.support))?;
    passed(&before.check(20), "support closure")?;
    let f = OrthogonalMatrixSpec::f_q(&q).map_err(err)?;
    let desc = validate_partner(&q, &f).map_err(err)?;
    let after = qiso_deform(&before, &desc).map_err(err)?;
    let line = qiso_line(&before, &after);
    ensure(line == "QISO: SO_q(3) -> I(F)", line.clone())?;
    // φ(r_k) = r_k
    ensure(after.support == before.support, "support image differs")?;
    let restricted = restrict_equivalence(&desc, &even_subcategory(&FusionRing::su_q2())).map_err(err)?;
    ensure(restricted.labels == after.support && restricted.target_name == after.derived, "restriction descriptor disagrees")?;
    let nd = qiso_deform(&before, &validate_partner(&rat(-1, 3), &dim3_partner(&rat(-1, 3))?).map_err(err)?).map_err(err)?;
    ensure(nd.derived == "I(F)", "non-preserving partner renames differently")?;
    Ok(format!("support {} closed to r_{DEFAULT_CLOSURE_BOUND}; {line}", before.support))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("cocycle engine", criterion_1),
        ("BHalg isomorphism", criterion_2),
        ("literal vs profile (Z2^2)", criterion_3),
        ("round trip", criterion_4),
        ("SU_q(2) layer", criterion_5),
        ("Podles relations at N = 7/2", criterion_6),
        ("undeformed spectrum", criterion_7),
        ("deformed spectrum, dim F = 3", criterion_8),
        ("R and F matrices", criterion_9),
        ("QISO bookkeeping", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
