use super::TripleError;
use crate::linalg::op_norm;
use crate::repcat::{FusionRing, IrrepLabel};
use crate::report::Report;
use crate::suq2::{Chirality, TruncatedPodles};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Outcome of [`check_spectral_triple`].
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralTripleCheck {
    pub report: Report,
    /// `‖[D, a]‖` per generator, in input order.
    pub commutator_norms: Vec<(String, f64)>,
    /// `|λ|` of `D` in increasing order. At finite level this listing stands
    /// in for compact resolvent: it is only recorded, never judged.
    pub growth: Vec<f64>,
}

/// Self-adjointness of `D` to `tol` and finiteness of `‖[D, a]‖` for each
/// generator.
pub fn check_spectral_triple(generators: &[(String, DMatrix<Complex64>)], dirac: &DMatrix<Complex64>, tol: f64) -> Result<SpectralTripleCheck, TripleError> {
    let n = dirac.nrows();
    if dirac.ncols() != n {
        return Err(TripleError::Shape("D is not square".into()));
    }
    if let Some((name, m)) = generators.iter().find(|(_, m)| m.nrows() != n || m.ncols() != n) {
        return Err(TripleError::Shape(format!("generator {name} is {}×{}, D is {n}×{n}", m.nrows(), m.ncols())));
    }
    let mut report = Report::new();
    let asym = (dirac - dirac.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    report.push("D self-adjoint", asym <= tol, Some(format!("{asym:.1e}")));
    let mut commutator_norms = Vec::new();
    for (name, a) in generators {
        let c = op_norm(&(dirac * a - a * dirac));
        report.push(format!("‖[D, {name}]‖ finite"), c.is_finite(), Some(format!("{c:.12}")));
        commutator_norms.push((name.clone(), c));
    }
    let mut growth: Vec<f64> = if n == 0 {
        Vec::new()
    } else {
        let h = (dirac + dirac.adjoint()).scale(0.5);
        nalgebra::SymmetricEigen::new(h).eigenvalues.iter().map(|x| x.abs()).collect()
    };
    growth.sort_by(f64::total_cmp);
    Ok(SpectralTripleCheck { report, commutator_norms, growth })
}

/// A basis vector of `⊕ H_x ⊗ W_x`: the irrep `x`, the copy in `W_x`, and
/// the row inside `H_x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub label: IrrepLabel,
    pub copy: usize,
    pub row: usize,
}

/// Sites of the truncated Podleś triple: spin `n` carries `r_{2n}`, the
/// chirality is the copy, and the corepresentation index `l` is the row.
pub fn podles_sites(t: &TruncatedPodles) -> Vec<Site> {
    let ring = FusionRing::su_q2();
    t.labels
        .iter()
        .map(|l| Site {
            label: ring.label(l.spin.twice() as u32),
            copy: usize::from(l.chirality == Chirality::Minus),
            row: ((l.col.twice() + l.spin.twice()) / 2) as usize,
        })
        .collect()
}

/// A generator with its corepresentation content.
pub type CoactingGenerator = (String, DMatrix<Complex64>, Vec<u32>);

/// `Ã` (content `{r_0, r_2}`), `B̃` and `B̃*` (content `{r_2}`), and `D`, as
/// complex matrices on `H_N`.
pub fn podles_operators(t: &TruncatedPodles) -> (Vec<CoactingGenerator>, DMatrix<Complex64>) {
    let c = |m: &DMatrix<f64>| m.map(|x| Complex64::new(x, 0.0));
    let gens = vec![
        ("A".to_string(), c(&t.a), vec![0, 2]),
        ("B".to_string(), c(&t.b), vec![2]),
        ("B*".to_string(), c(&t.b_star), vec![2]),
    ];
    (gens, c(&t.dirac_f64()))
}

/// `D = ⊕ 1 ⊗ D_x` on the given sites, and each generator maps `H_y`
/// only into labels of `y ⊗ r_k` with `k` in its declared content.
pub fn check_equivariance(
    ring: &FusionRing,
    sites: &[Site],
    dirac: &DMatrix<Complex64>,
    generators: &[(String, DMatrix<Complex64>, Vec<u32>)],
    tol: f64,
) -> Result<Report, TripleError> {
    let n = sites.len();
    if dirac.nrows() != n || dirac.ncols() != n {
        return Err(TripleError::Shape(format!("D is {}×{}, there are {n} sites", dirac.nrows(), dirac.ncols())));
    }
    let mut report = Report::new();
    let mut leaks = Vec::new();
    let mut blocks: BTreeMap<(IrrepLabel, usize, usize), Complex64> = BTreeMap::new();
    let mut non_scalar = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (sites[i], sites[j]);
            let v = dirac[(i, j)];
            if x.label != y.label || x.row != y.row {
                if v.norm() > tol {
                    leaks.push(format!("{}→{}", y.label, x.label));
                }
                continue;
            }
            match blocks.get(&(x.label, x.copy, y.copy)) {
                Some(w) if (w - v).norm() > tol => non_scalar.push(x.label.to_string()),
                Some(_) => {}
                None => {
                    blocks.insert((x.label, x.copy, y.copy), v);
                }
            }
        }
    }
    leaks.dedup();
    non_scalar.dedup();
    report.push("D preserves isotypic rows", leaks.is_empty(), (!leaks.is_empty()).then(|| leaks.join(", ")));
    report.push("D acts as 1 ⊗ D_x", non_scalar.is_empty(), (!non_scalar.is_empty()).then(|| non_scalar.join(", ")));

    for (name, a, content) in generators {
        if a.nrows() != n || a.ncols() != n {
            return Err(TripleError::Shape(format!("generator {name} is {}×{}, there are {n} sites", a.nrows(), a.ncols())));
        }
        let content: Vec<IrrepLabel> = content.iter().map(|&k| ring.label(k)).collect();
        let mut bad = Vec::new();
        let mut jump = 0i64;
        for i in 0..n {
            for j in 0..n {
                if a[(i, j)].norm() <= tol {
                    continue;
                }
                let (x, y) = (sites[i].label, sites[j].label);
                jump = jump.max((i64::from(x.index) - i64::from(y.index)).abs());
                let mut allowed = false;
                for k in &content {
                    allowed |= ring.fuse(&y, k)?.contains(&x);
                }
                if !allowed {
                    bad.push(format!("{y}→{x}"));
                }
            }
        }
        bad.sort();
        bad.dedup();
        let content_names: Vec<String> = content.iter().map(ToString::to_string).collect();
        report.push(
            format!("{name} maps H_y into y ⊗ {{{}}}", content_names.join(",")),
            bad.is_empty(),
            Some(if bad.is_empty() { format!("largest label jump {jump}") } else { bad.join(", ") }),
        );
    }
    Ok(report)
}
