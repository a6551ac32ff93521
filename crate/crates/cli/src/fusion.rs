use crate::error::CliError;
use crate::io::{emit, emit_json};
use crate::output::csv_string;
use crate::{Format, FusionArgs, Verdict};
use mondef::repcat::{check_q, FusionRing};
use mondef::scalar::{fmt_rat, parse_rat};
use serde_json::json;

/// Upper end of `--max-k`; classical dimensions overflow `u128` long before
/// this for every `m ≥ 3`.
const MAX_K: u32 = 1000;

pub fn run(args: &FusionArgs) -> Result<Verdict, CliError> {
    let q = args
        .q
        .as_deref()
        .map(|s| parse_rat(s).ok_or_else(|| CliError::Usage(format!("--q: {s:?} is not a rational"))))
        .transpose()?;
    if let Some(q) = &q {
        check_q(q).map_err(CliError::usage)?;
    }
    let ring = match (args.m, &q) {
        (Some(2), _) | (None, Some(_)) => FusionRing::su_q2(),
        (Some(m), _) if m >= 3 => FusionRing::ao_f(m),
        (Some(m), _) => return Err(CliError::Usage(format!("--m {m}: the classical dimension must be at least 2"))),
        (None, None) => return Err(CliError::Usage("give --m or --q".into())),
    };
    if args.max_k > MAX_K {
        return Err(CliError::Usage(format!("--max-k is capped at {MAX_K}")));
    }
    let mut rows = Vec::new();
    for k in 0..=args.max_k {
        let x = ring.label(k);
        let d = ring.dim_classical(&x).map_err(CliError::usage)?;
        let dq = q.as_ref().map(|q| ring.dim_quantum(&x, q)).transpose().map_err(CliError::usage)?;
        rows.push((x, d, dq));
    }
    match args.format {
        Format::Csv => {
            let table = csv_string(
                &["label", "classical_dim", "quantum_dim"],
                rows.iter().map(|(x, d, dq)| vec![x.to_string(), d.to_string(), dq.as_ref().map(fmt_rat).unwrap_or_default()]),
            );
            emit(&table, args.out.as_ref())?;
        }
        Format::Json => {
            let dims: Vec<_> = rows
                .iter()
                .map(|(x, d, dq)| json!({"label": x.to_string(), "classical_dim": d.to_string(), "quantum_dim": dq.as_ref().map(fmt_rat)}))
                .collect();
            let mut rules = Vec::new();
            for a in 0..=args.max_k {
                for b in a..=args.max_k - a {
                    let products = ring.fuse(&ring.label(a), &ring.label(b)).map_err(CliError::failed)?;
                    rules.push(json!({
                        "a": ring.label(a).to_string(),
                        "b": ring.label(b).to_string(),
                        "product": products.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    }));
                }
            }
            let doc = json!({
                "ring": ring.family.to_string(),
                "m": args.m.unwrap_or(2),
                "q": q.as_ref().map(fmt_rat),
                "dimensions": dims,
                "fusion": rules,
            });
            emit_json(&doc, args.out.as_ref())?;
        }
    }
    Ok(Verdict::Pass)
}
