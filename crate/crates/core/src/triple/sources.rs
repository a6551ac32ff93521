//! Profiles read off concrete triples.

use super::profile::{reference_woronowicz, suq2_woronowicz, BlockLabel, IsotypicProfile, ProfileBlock, WoronowiczBlock};
use super::TripleError;
use crate::hopf::{FiniteEquivariantTriple, Scalar};
use crate::linalg::{exact_rational_spectrum, is_positive_definite, Matrix};
use crate::repcat::{check_q, FusionRing, OrthogonalMatrixSpec};
use crate::report::Report;
use crate::scalar::{Field, Rat};
use crate::suq2::{DiracConstants, HalfInt, TruncatedPodles};

fn chiral_pair(lambda: Rat) -> Matrix<Rat> {
    Matrix::from_rows(vec![vec![Rat::zero(), lambda.clone()], vec![lambda, Rat::zero()]])
}

/// Podleś profile up to level `N`: spin `n` gives the block `r_{2n}` with
/// `W = C²` (chiralities), `D_x = [[0, λ_n], [λ_n, 0]]`, `R_x = 1` and
/// `F_x = F_{r_{2n}}`.
pub fn podles_profile(q: &Rat, dirac: &DiracConstants, level: HalfInt) -> Result<IsotypicProfile, TripleError> {
    check_q(q)?;
    if level.twice() < 1 || level.twice() % 2 == 0 {
        return Err(TripleError::Shape(format!("level {level} must be a positive half-odd integer")));
    }
    let ring = FusionRing::su_q2();
    let blocks = (0..=(level.twice() - 1) / 2)
        .map(|j| {
            let spin = HalfInt(2 * j + 1);
            let k = spin.twice() as u32;
            ProfileBlock {
                label: BlockLabel::Irrep(ring.label(k)),
                irrep_dim: u128::from(k) + 1,
                multiplicity: 2,
                dirac: chiral_pair(dirac.eigenvalue(spin)),
                twist: Matrix::identity(2),
                woronowicz: WoronowiczBlock::Exact(suq2_woronowicz(k, q)),
            }
        })
        .collect();
    Ok(IsotypicProfile::new(Some(ring), q.clone(), blocks))
}

/// The profile of a truncated triple.
pub fn podles_profile_of(t: &TruncatedPodles) -> Result<IsotypicProfile, TripleError> {
    podles_profile(&t.params.q, &t.dirac_constants, t.level)
}

/// `R = ⊕ F_{r_{2n}} ⊗ 1₂` in the spinor basis of the truncated triple,
/// with `F` acting on the corepresentation index.
pub fn podles_twist_matrix(t: &TruncatedPodles) -> Matrix<Rat> {
    let q = &t.params.q;
    let diag: Vec<Rat> = t
        .labels
        .iter()
        .map(|l| {
            let f = suq2_woronowicz(l.spin.twice() as u32, q);
            let row = ((l.col.twice() + l.spin.twice()) / 2) as usize;
            f[(row, row)].clone()
        })
        .collect();
    Matrix::diagonal(&diag)
}

/// Blockwise twisted-volume criterion: `R = ⊕ F_x ⊗ R_x` with `F_x` the
/// matrix attached to `x`, `R_x` positive and commuting with `D_x`.
pub fn check_profile_volume(p: &IsotypicProfile, partner: Option<&OrthogonalMatrixSpec>) -> Result<Report, TripleError> {
    let mut report = Report::new();
    for b in &p.blocks {
        let expected = match (&p.ring, &b.label) {
            (_, BlockLabel::GroupLike { .. }) => WoronowiczBlock::Exact(Matrix::identity(1)),
            (Some(ring), label) => reference_woronowicz(ring, label, &p.q, partner)?,
            (None, label) => return Err(TripleError::Unsupported(format!("label {label} without a fusion ring"))),
        };
        let mut problems = Vec::new();
        if b.woronowicz != expected {
            problems.push("F_x differs from the matrix of its label".to_string());
        }
        if let Err(e) = b.woronowicz.check() {
            problems.push(e);
        }
        if !is_positive_definite(&b.twist) {
            problems.push("R_x not positive".into());
        }
        if !b.twist.commutator(&b.dirac).is_zero() {
            problems.push("[R_x, D_x] ≠ 0".into());
        }
        let tag = if b.woronowicz.is_quantum_dimension_only() { " (q-dimension only)" } else { "" };
        report.push(format!("R = F ⊗ R_x on {}{tag}", b.label), problems.is_empty(), (!problems.is_empty()).then(|| problems.join("; ")));
    }
    Ok(report)
}

/// Isotypic decomposition of a finite triple whose corepresentation splits
/// into group-likes. `D_x` is returned diagonal (its exact spectrum on
/// `W_x`); `R` must be scalar on each `W_x`.
pub fn finite_profile(t: &FiniteEquivariantTriple) -> Result<IsotypicProfile, TripleError> {
    let n = t.dim();
    let h = &t.hopf;
    let dim_h = h.dim();
    let names = h.algebra().labels();
    let mut blocks = Vec::new();
    let mut total = 0;
    for g in h.group_likes() {
        // u(v) = v ⊗ g, coordinatewise in H
        let mut eqs = Matrix::<Scalar>::zeros(n * dim_h, n);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in &t.corep[i * n + j] {
                    let r = i * dim_h + k;
                    eqs[(r, j)] = eqs[(r, j)].clone() + c.clone();
                }
            }
            let r = i * dim_h + g;
            eqs[(r, i)] = eqs[(r, i)].clone() - Scalar::one();
        }
        let kernel = eqs.kernel();
        let w = kernel.len();
        if w == 0 {
            continue;
        }
        total += w;
        let basis = Matrix::from_fn(n, w, |r, c| kernel[c][r].clone());
        let restrict = |op: &Matrix<Scalar>| -> Result<Matrix<Scalar>, TripleError> {
            let image = op * &basis;
            let mut out = Matrix::zeros(w, w);
            for c in 0..w {
                let x = basis.solve(&image.column(c)).ok_or_else(|| TripleError::Shape("operator does not preserve an isotypic subspace".into()))?;
                for (r, v) in x.into_iter().enumerate() {
                    out[(r, c)] = v;
                }
            }
            Ok(out)
        };
        let gram = &(&basis.adjoint() * &t.gram) * &basis;
        let d = restrict(&t.dirac)?;
        let spectrum = exact_rational_spectrum(&d, &gram).ok_or_else(|| TripleError::Unsupported("Dirac block without rational spectrum".into()))?;
        let diag: Vec<Rat> = spectrum.iter().flat_map(|(l, m)| std::iter::repeat_n(l.clone(), *m)).collect();
        let r = restrict(&t.twist)?;
        let scale = r[(0, 0)].as_real().filter(|s| r == Matrix::identity(w).scale(&Scalar::from_rat(s.clone())));
        let scale = scale.ok_or_else(|| TripleError::Unsupported("twist not scalar on an isotypic block".into()))?;
        blocks.push(ProfileBlock {
            label: BlockLabel::GroupLike { index: g, name: names[g].clone() },
            irrep_dim: 1,
            multiplicity: w,
            dirac: Matrix::diagonal(&diag),
            twist: Matrix::identity(w).scale(&scale),
            woronowicz: WoronowiczBlock::Exact(Matrix::identity(1)),
        });
    }
    if total != n {
        return Err(TripleError::Unsupported(format!("group-likes account for {total} of {n} dimensions")));
    }
    Ok(IsotypicProfile::new(None, Rat::one(), blocks))
}
