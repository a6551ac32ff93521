use crate::error::CliError;
use crate::io::{emit, emit_json, malformed, read_json};
use crate::output::csv_string;
use crate::{DeformArgs, Format, PodlesArgs, SphereArgs, Verdict, VerifyArgs};
use mondef::repcat::{check_q, validate_partner, EquivalenceDescriptor, OrthogonalMatrixSpec, RepcatError};
use mondef::report::Report;
use mondef::scalar::{fmt_rat, parse_rat, Rat};
use mondef::suq2::{
    check_spherical_multiplet, check_stabilization, podles_generators, truncated_podles_triple, DiracConstants, GeneratorForm, HalfInt,
    PeterWeylBasis, PodlesParams, SuQ2, TruncatedPodles,
};
use mondef::triple::{
    check_deformation, check_equivariance, check_profile_volume, check_spectral_triple, check_twisted_volume_block, deform_profile,
    podles_operators, podles_profile, podles_profile_of, podles_qiso, podles_sites, podles_twist_matrix, qiso_deform, qiso_line,
    round_trip, spectrum_table, woronowicz_f, ProfileEquivalence, QisoLabels, SpectrumTable,
};
use mondef::repcat::DEFAULT_CLOSURE_BOUND;
use serde_json::{json, Value};

/// Highest spin at which `verify` solves for `F` from the Haar state.
const MAX_F_SPIN: HalfInt = HalfInt(3);

fn rational(flag: &str, s: &str) -> Result<Rat, CliError> {
    parse_rat(s).ok_or_else(|| CliError::Usage(format!("--{flag}: {s:?} is not a rational")))
}

struct Sphere {
    q: Rat,
    t: Rat,
    dirac: DiracConstants,
    level: HalfInt,
}

impl Sphere {
    fn parse(a: &SphereArgs) -> Result<Self, CliError> {
        let q = rational("q", &a.q)?;
        check_q(&q).map_err(CliError::usage)?;
        let t = rational("t", &a.t)?;
        let dirac = DiracConstants::new(rational("c1", &a.c1)?, rational("c2", &a.c2)?).map_err(CliError::usage)?;
        let level = HalfInt::parse(&a.n).filter(|l| l.0 > 0 && l.0 % 2 == 1).ok_or_else(|| {
            CliError::Usage(format!("--n: {:?} is not a positive half-odd integer such as 5/2", a.n))
        })?;
        Ok(Sphere { q, t, dirac, level })
    }

    fn params(&self) -> Result<PodlesParams, CliError> {
        PodlesParams::new(self.q.clone(), self.t.clone()).map_err(CliError::usage)
    }

    fn json(&self) -> Value {
        json!({
            "q": fmt_rat(&self.q),
            "t": fmt_rat(&self.t),
            "c1": fmt_rat(&self.dirac.c1),
            "c2": fmt_rat(&self.dirac.c2),
            "N": self.level.to_string(),
        })
    }
}

/// Everything the truncated triple was built from.
struct Built {
    alg: SuQ2,
    basis: PeterWeylBasis,
    triple: TruncatedPodles,
    relations: Report,
    multiplet: Report,
}

fn build(s: &Sphere) -> Result<Built, CliError> {
    let params = s.params()?;
    let alg = SuQ2::new(s.q.clone()).map_err(CliError::usage)?;
    let basis = PeterWeylBasis::build(&alg, HalfInt(s.level.0 + 2)).map_err(CliError::failed)?;
    let data = podles_generators(&alg, &params, GeneratorForm::Corrected).map_err(CliError::failed)?;
    let triple = truncated_podles_triple(&alg, &basis, &data, &s.dirac, s.level).map_err(CliError::failed)?;
    let relations = data.verify(&alg);
    let multiplet = check_spherical_multiplet(&alg, &basis, &data).map_err(CliError::failed)?;
    Ok(Built { alg, basis, triple, relations, multiplet })
}

pub fn spectrum_csv(table: &SpectrumTable) -> String {
    csv_string(
        &["eigenvalue", "multiplicity", "labels"],
        table.entries.iter().map(|e| {
            let labels: Vec<String> = e.labels.iter().map(ToString::to_string).collect();
            vec![e.eigenvalue.to_string(), e.multiplicity.to_string(), labels.join(" ")]
        }),
    )
}

fn verdict(report: &Report) -> Verdict {
    if report.all_passed() {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn cmd_build(a: &SphereArgs) -> Result<Verdict, CliError> {
    let s = Sphere::parse(a)?;
    let b = build(&s)?;
    let profile = podles_profile_of(&b.triple).map_err(CliError::failed)?;
    let mut report = Report::new();
    report.merge("construction", b.triple.report.clone());
    report.merge("relations", b.relations);
    let doc = json!({
        "parameters": s.json(),
        "triple": b.triple.to_json(),
        "profile": profile.to_json(),
        "spectrum": spectrum_table(&profile).to_json(),
        "report": report,
    });
    emit_json(&doc, a.out.as_ref())?;
    Ok(verdict(&report))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Verdict, CliError> {
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let s = Sphere::parse(&a.sphere)?;
    let b = build(&s)?;
    let t = &b.triple;
    let mut report = Report::new();
    report.merge("construction", t.report.clone());
    report.merge("relations", b.relations);
    report.merge("spherical multiplet", b.multiplet);

    let (gens, dirac) = podles_operators(t);
    let plain: Vec<_> = gens.iter().map(|(n, m, _)| (n.clone(), m.clone())).collect();
    let st = check_spectral_triple(&plain, &dirac, a.tol).map_err(CliError::failed)?;
    report.merge("spectral triple", st.report);
    let ring = mondef::repcat::FusionRing::su_q2();
    report.merge("equivariance", check_equivariance(&ring, &podles_sites(t), &dirac, &gens, a.tol).map_err(CliError::failed)?);

    let r = podles_twist_matrix(t);
    report.push("[R, D] = 0", r.commutator(&t.dirac).is_zero(), None);
    let profile = podles_profile_of(t).map_err(CliError::failed)?;
    report.merge("profile", profile.check());
    report.merge("R volume", check_profile_volume(&profile, None).map_err(CliError::failed)?);
    let mut fs = Vec::new();
    for spin in (1..=s.level.0.min(MAX_F_SPIN.0)).map(HalfInt) {
        let solve = woronowicz_f(&b.alg, &b.basis, spin).map_err(CliError::failed)?;
        report.merge(&format!("F at spin {spin}"), solve.report.clone());
        let volume = check_twisted_volume_block(&b.alg, &b.basis, spin, &solve.f).map_err(CliError::failed)?;
        report.merge(&format!("twisted volume at spin {spin}"), volume);
        fs.push(json!({"spin": spin.to_string(), "F": (0..solve.f.nrows()).map(|i| fmt_rat(&solve.f[(i, i)])).collect::<Vec<_>>()}));
    }
    if a.stabilization {
        let params = s.params()?;
        report.merge("stabilization", check_stabilization(&params, &s.dirac, s.level, a.stabilization_tol).map_err(CliError::failed)?);
    }
    let doc = json!({
        "parameters": s.json(),
        "dim": t.dim(),
        "commutator_norms": st.commutator_norms.iter().map(|(n, x)| json!({"generator": n, "norm": x})).collect::<Vec<_>>(),
        "interior_residuals": t.interior_residuals().iter().map(|(n, x)| json!({"relation": n, "residual": x})).collect::<Vec<_>>(),
        "woronowicz_diagonals": fs,
        "report": report,
        "passed": report.all_passed(),
    });
    emit_json(&doc, a.sphere.out.as_ref())?;
    Ok(verdict(&report))
}

/// Partner rejection is an input constraint: exit 3 with the residual.
fn validate(q: &Rat, f: &OrthogonalMatrixSpec) -> Result<EquivalenceDescriptor, CliError> {
    validate_partner(q, f).map_err(|e| match e {
        RepcatError::ConstraintViolated { residual, residual_exact, detail } => CliError::Constraint {
            report: json!({"constraint": "lambda", "detail": detail, "residual": residual, "residual_exact": residual_exact}),
            detail,
        },
        RepcatError::Inadmissible(detail) => CliError::Constraint {
            report: json!({"constraint": "admissibility", "detail": detail, "residual": Value::Null}),
            detail,
        },
        other => CliError::usage(other),
    })
}

fn descriptor_json(e: &EquivalenceDescriptor) -> Value {
    json!({
        "source": e.source_name,
        "target": e.target_name,
        "target_dim": e.target.m,
        "dimension_preserving": e.dimension_preserving,
        "trace_ff": e.trace_ff.as_ref().map(fmt_rat),
        "trace_ff_float": e.trace_ff_float,
    })
}

fn qiso_json(l: &QisoLabels) -> Value {
    json!({"ambient": l.ambient, "support": l.support.to_string(), "derived": l.derived})
}

fn cmd_deform(a: &DeformArgs) -> Result<Verdict, CliError> {
    let s = Sphere::parse(&a.sphere)?;
    let fv = read_json(&a.f)?;
    let f = OrthogonalMatrixSpec::from_json(&fv).map_err(|e| malformed(&a.f, e))?;
    let desc = validate(&s.q, &f)?;
    let e = ProfileEquivalence::with_partner(desc.clone(), f.clone());
    let profile = podles_profile(&s.q, &s.dirac, s.level).map_err(CliError::failed)?;
    let deformed = deform_profile(&profile, &e).map_err(CliError::failed)?;
    let (before, after) = (spectrum_table(&profile), spectrum_table(&deformed));

    let mut report = Report::new();
    report.merge("profile", profile.check());
    report.merge("deformed profile", deformed.check());
    report.merge("deformation", check_deformation(&profile, &deformed, &e).map_err(CliError::failed)?);
    report.merge("round trip", round_trip(&profile, &e).map_err(CliError::failed)?);
    report.merge("deformed R volume", check_profile_volume(&deformed, Some(&f)).map_err(CliError::failed)?);
    if desc.dimension_preserving {
        // labels move to the target ring, so compare values and multiplicities
        let same = before.eigenvalues_f64() == after.eigenvalues_f64() && before.multiplicities() == after.multiplicities();
        report.push("spectrum unchanged", same, None);
    }
    let qiso_before = podles_qiso(&s.q).map_err(CliError::failed)?;
    let qiso_after = qiso_deform(&qiso_before, &desc).map_err(CliError::failed)?;
    report.merge("qiso", qiso_after.check(DEFAULT_CLOSURE_BOUND));
    let line = qiso_line(&qiso_before, &qiso_after);

    match a.format {
        Format::Csv => emit(&spectrum_csv(&after), a.sphere.out.as_ref())?,
        Format::Json => {
            let doc = json!({
                "parameters": s.json(),
                "partner": f.to_json(),
                "equivalence": descriptor_json(&desc),
                "profile": profile.to_json(),
                "deformed_profile": deformed.to_json(),
                "spectrum": before.to_json(),
                "deformed_spectrum": after.to_json(),
                "qiso": {"before": qiso_json(&qiso_before), "after": qiso_json(&qiso_after), "line": line},
                "report": report,
                "passed": report.all_passed(),
            });
            emit_json(&doc, a.sphere.out.as_ref())?;
        }
    }
    if let Some(path) = &a.csv_out {
        emit(&spectrum_csv(&after), Some(path))?;
    }
    eprintln!("{line}");
    Ok(verdict(&report))
}

pub fn run(args: &PodlesArgs) -> Result<Verdict, CliError> {
    match args {
        PodlesArgs::Build(a) => cmd_build(a),
        PodlesArgs::Verify(a) => cmd_verify(a),
        PodlesArgs::Deform(a) => cmd_deform(a),
    }
}
