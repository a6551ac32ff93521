use crate::error::CliError;
use crate::io::{emit_json, malformed, read_json};
use crate::{TwistArgs, Verdict};
use mondef::hopf::io::{cocycle_json, group_orders, parse_cocycle, parse_hopf};
use mondef::hopf::{
    check_bhalg, check_coaction, check_comodule_algebra, check_dual_cocycle, check_pi_sigma, check_round_trip, check_uv, deform_triple_finite, pi_sigma,
    reconstruct_hopf, smash_left, smash_right, toy_triple, twist_comodule_algebra, twist_hopf, uv_functionals, verify_cocycle_equivalence,
    ComoduleAlgebra, DualCocycle, FiniteEquivariantTriple, FiniteHopfAlgebra, HopfError, Side, StarConvention,
};
use mondef::report::Report;
use mondef::triple::{deform_profile, finite_profile, literal_spectrum, spectrum_table, ProfileEquivalence};
use serde_json::{json, Value};
use std::path::Path;

/// Only toy triples `{"toy": [orders]}` are read from files; their Hopf
/// algebra must be the one given by `--hopf`.
fn read_triple(path: &Path, h: &FiniteHopfAlgebra) -> Result<FiniteEquivariantTriple, CliError> {
    let v = read_json(path)?;
    let orders: Vec<u32> = v
        .get("toy")
        .and_then(Value::as_array)
        .and_then(|a| a.iter().map(|o| o.as_u64().and_then(|o| u32::try_from(o).ok())).collect())
        .ok_or_else(|| malformed(path, "expected {\"toy\": [cyclic orders]}"))?;
    let t = toy_triple(&orders).map_err(|e| malformed(path, e))?;
    if &t.hopf != h {
        return Err(CliError::Usage(format!("{}: the triple is equivariant for a different Hopf algebra", path.display())));
    }
    Ok(t)
}

fn record(report: &mut Report, prefix: &str, outcome: Result<Report, HopfError>) {
    match outcome {
        Ok(r) => report.merge(prefix, r),
        Err(e) => report.fail(prefix, e.to_string()),
    }
}

fn hopf_suite(h: &FiniteHopfAlgebra, sigma: &DualCocycle, report: &mut Report) -> Option<ComoduleAlgebra> {
    record(report, "uv", uv_functionals(h, sigma).map(|uv| check_uv(h, &uv)));
    let hs = match twist_hopf(h, sigma) {
        Ok(hs) => hs,
        Err(e) => {
            report.fail("twisted Hopf algebra", e.to_string());
            return None;
        }
    };
    report.merge("twisted Hopf algebra", hs.check());
    let regular = ComoduleAlgebra::regular(h);
    let twisted = twist_comodule_algebra(h, &regular, sigma);
    record(report, "twisted regular comodule algebra", twisted.as_ref().map(|tw| check_comodule_algebra(&hs, tw)).map_err(Clone::clone));
    record(report, "left smash product", smash_left(h, sigma).map(|b| b.check(h, &hs)));
    let right = smash_right(h, sigma).map(|c| {
        let mut r = c.algebra.check();
        r.merge("left", check_coaction(&hs, &c.algebra, &c.left, Side::Left));
        r.merge("right", check_coaction(h, &c.algebra, &c.right, Side::Right));
        r
    });
    record(report, "right smash product", right);
    record(report, "bi-Hopf-Galois", check_bhalg(h, &regular, sigma));
    record(report, "reconstruction", reconstruct_hopf(h, sigma));
    twisted.ok()
}

fn triple_suite(t: &FiniteEquivariantTriple, sigma: &DualCocycle, report: &mut Report) -> Value {
    report.merge("triple", t.check());
    record(
        report,
        "pi_sigma",
        twist_comodule_algebra(&t.hopf, &t.algebra, sigma).map(|tw| check_pi_sigma(t, &tw.algebra, &pi_sigma(t, sigma))),
    );
    record(report, "cocycle equivalence", verify_cocycle_equivalence(t, sigma, StarConvention::VCorrected));
    record(report, "round trip", check_round_trip(t, sigma));
    let deformed = match deform_triple_finite(t, sigma) {
        Ok(d) => d,
        Err(e) => {
            report.fail("deformed triple", e.to_string());
            return Value::Null;
        }
    };
    report.merge("deformed triple", deformed.report.clone());
    let before = literal_spectrum(&t.dirac, &t.gram);
    let after = literal_spectrum(&deformed.triple.dirac, &deformed.triple.gram);
    let iso = before.is_some() && before.as_ref().map(|b| b.exact()) == after.as_ref().map(|a| a.exact());
    report.push("isospectral: Sp D = Sp D~ with multiplicities", iso, None);
    let predicted = finite_profile(t).and_then(|p| deform_profile(&p, &ProfileEquivalence::CocycleTwist)).map(|p| spectrum_table(&p));
    match &predicted {
        Ok(table) => {
            let agree = after.as_ref().is_some_and(|a| a.exact().is_some() && a.exact() == table.exact());
            report.push("profile prediction matches the literal D~", agree, None);
        }
        Err(e) => report.fail("profile prediction matches the literal D~", e.to_string()),
    }
    json!({
        "dim": t.dim(),
        "spectrum": before.map(|s| s.to_json()),
        "deformed_spectrum": after.map(|s| s.to_json()),
    })
}

pub fn run(args: &TwistArgs) -> Result<Verdict, CliError> {
    let hv = read_json(&args.hopf)?;
    let h = parse_hopf(&hv).map_err(|e| malformed(&args.hopf, e))?;
    let orders = group_orders(&hv);
    let cv = read_json(&args.cocycle)?;
    let mut report = Report::new();
    let sigma = match parse_cocycle(&cv, &h, orders.as_deref()) {
        Ok(s) => Some(s),
        Err(HopfError::Shape(d)) => return Err(malformed(&args.cocycle, d)),
        // well-formed but not convolution invertible
        Err(e) => {
            report.fail("cocycle invertible", e.to_string());
            None
        }
    };
    let triple = args.triple.as_ref().map(|p| read_triple(p, &h)).transpose()?;
    let mut triple_json = Value::Null;
    if let Some(sigma) = &sigma {
        report.merge("cocycle", check_dual_cocycle(&h, sigma.table()));
        // everything downstream presupposes the cocycle identity
        if report.all_passed() {
            hopf_suite(&h, sigma, &mut report);
            if let Some(t) = &triple {
                triple_json = triple_suite(t, sigma, &mut report);
            }
        }
    }
    let passed = report.all_passed();
    let doc = json!({
        "hopf_dim": h.dim(),
        "cocycle": sigma.as_ref().map(|s| cocycle_json(s.table())),
        "triple": triple_json,
        "report": report,
        "passed": passed,
    });
    emit_json(&doc, args.out.as_ref())?;
    Ok(if passed { Verdict::Pass } else { Verdict::Fail })
}
