//! The positive matrices `F_x` of `SU_q(2)` corepresentations, obtained from
//! the Haar state, and the `R`-twisted volume identity.
//!
//! The matrix coefficients `d^n_{kl}` form a corepresentation that is unitary
//! only after a diagonal similarity `v = C d C⁻¹`. The squares `x_k = c_k²`
//! are rational, and every identity used here involves `c` only through
//! ratios `x_k / x_l` once the Haar weights have killed the off-diagonal
//! terms, so everything stays exact.

use super::TripleError;
use crate::linalg::{is_positive_definite, Matrix};
use crate::report::Report;
use crate::scalar::{fmt_rat, Field, Rat};
use crate::suq2::{HalfInt, Monomial, Pbw, PeterWeylBasis, SuQ2};
use crate::surd::rat_sqrt;
use num_traits::Signed;
use std::collections::BTreeMap;

/// Rescale a positive matrix so that `Tr F = Tr F⁻¹`. Fails unless the
/// factor `√(Tr M⁻¹ / Tr M)` is rational.
pub fn normalize_woronowicz(m: &Matrix<Rat>) -> Result<Matrix<Rat>, TripleError> {
    if !is_positive_definite(m) {
        return Err(TripleError::Woronowicz("matrix is not positive definite".into()));
    }
    let inv = m.inverse().ok_or_else(|| TripleError::Woronowicz("matrix is singular".into()))?;
    let ratio = inv.trace() / m.trace();
    let k = rat_sqrt(&ratio).ok_or_else(|| TripleError::Woronowicz(format!("normalization factor √{} is irrational", fmt_rat(&ratio))))?;
    Ok(m.scale(&k))
}

/// `d^n` together with the squared scalings that make it unitary.
#[derive(Clone, Debug)]
pub struct UnitaryCoefficients {
    pub spin: HalfInt,
    /// `u_ij = d^n_{ij}`, indices `−n, …, n`
    pub u: Vec<Vec<Pbw<Rat>>>,
    pub u_star: Vec<Vec<Pbw<Rat>>>,
    /// `x_k = c_k²`, with `x_0 = 1`
    pub weights: Vec<Rat>,
    pub report: Report,
}

impl UnitaryCoefficients {
    pub fn new(alg: &SuQ2, basis: &PeterWeylBasis, spin: HalfInt) -> Result<Self, TripleError> {
        let u = basis.matrix(spin).ok_or_else(|| TripleError::Woronowicz(format!("spin {spin} beyond the basis level {}", basis.level())))?;
        let d = u.len();
        let u_star: Vec<Vec<Pbw<Rat>>> = u.iter().map(|row| row.iter().map(|x| alg.star(x)).collect()).collect();

        // Σ_k x_k u_ki* u_kj = δ_ij x_i, one linear equation per monomial
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let mut eqs: BTreeMap<Monomial, Vec<Rat>> = BTreeMap::new();
                for k in 0..d {
                    for (m, c) in alg.mul(&u_star[k][i], &u[k][j]).terms() {
                        eqs.entry(*m).or_insert_with(|| vec![Rat::zero(); d])[k] += c.clone();
                    }
                }
                if i == j {
                    eqs.entry(Monomial::ONE).or_insert_with(|| vec![Rat::zero(); d])[i] -= Rat::one();
                }
                rows.extend(eqs.into_values());
            }
        }
        let system = Matrix::from_rows(rows);
        let kernel = system.kernel();
        if kernel.len() != 1 {
            return Err(TripleError::Woronowicz(format!("unitarizing weights at spin {spin} form a {}-dimensional family", kernel.len())));
        }
        let x0 = kernel[0][0].clone();
        if x0.is_zero() {
            return Err(TripleError::Woronowicz(format!("degenerate unitarizing weights at spin {spin}")));
        }
        let weights: Vec<Rat> = kernel[0].iter().map(|v| v / &x0).collect();
        let mut report = Report::new();
        report.push(format!("unitarizing weights positive at spin {spin}"), weights.iter().all(Signed::is_positive), None);

        // v v* = 1: x_i Σ_k u_ik u_ik* / x_k = 1 and Σ_k u_ik u_jk* / x_k = 0
        let mut right = true;
        for i in 0..d {
            for j in 0..d {
                let mut acc: Pbw<Rat> = Pbw::zero();
                for k in 0..d {
                    acc = &acc + &alg.mul(&u[i][k], &u_star[j][k]).scale(&weights[k].recip());
                }
                right &= if i == j { acc.scale(&weights[i]) == Pbw::one() } else { acc.is_zero() };
            }
        }
        report.push(format!("v*v = 1 at spin {spin}"), true, Some("solved for".into()));
        report.push(format!("vv* = 1 at spin {spin}"), right, None);
        Ok(UnitaryCoefficients { spin, u, u_star, weights, report })
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }

    /// True when `d^n` is already unitary.
    pub fn is_plain(&self) -> bool {
        self.weights.iter().all(|w| *w == Rat::one())
    }
}

/// `d^n` unitary as it stands, exactly.
pub fn check_unitary(alg: &SuQ2, basis: &PeterWeylBasis, spin: HalfInt) -> Result<bool, TripleError> {
    Ok(UnitaryCoefficients::new(alg, basis, spin)?.is_plain())
}

/// `F_x` computed two ways from the Haar state, on the unitarized `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct WoronowiczSolve {
    pub spin: HalfInt,
    /// `h(v_ij v_st*) = δ_is F_jt / Tr F`, normalized.
    pub f: Matrix<Rat>,
    /// From `h(v_ij* v_kl) = δ_jl G_ik`, normalized; equals `F⁻¹`.
    pub column_route: Matrix<Rat>,
    pub report: Report,
}

/// Solve for `F` at one spin and cross-check the two Haar routes.
pub fn woronowicz_f(alg: &SuQ2, basis: &PeterWeylBasis, spin: HalfInt) -> Result<WoronowiczSolve, TripleError> {
    let uc = UnitaryCoefficients::new(alg, basis, spin)?;
    let (u, us, x) = (&uc.u, &uc.u_star, &uc.weights);
    let d = uc.dim();
    let haar = basis.haar();
    let mut report = uc.report.clone();
    let h = |p: &Pbw<Rat>| haar.eval(p).map_err(TripleError::from);

    // h(v_ij v_st*) = c_i c_s h(u_ij u_st*) / (c_j c_t); it must vanish unless
    // i = s and j = t, which keeps it rational.
    let mut row: Option<Vec<Rat>> = None;
    let mut row_ok = true;
    for i in 0..d {
        let mut diag = vec![Rat::zero(); d];
        for s in 0..d {
            for j in 0..d {
                for t in 0..d {
                    let v = h(&alg.mul(&u[i][j], &us[s][t]))?;
                    if i == s && j == t {
                        diag[j] = &v * &x[i] / &x[j];
                    } else {
                        row_ok &= v.is_zero();
                    }
                }
            }
        }
        match &row {
            Some(prev) => row_ok &= *prev == diag,
            None => row = Some(diag),
        }
    }
    let row = Matrix::diagonal(&row.expect("nonempty"));
    report.push("h(v_ij v_st*) vanishes off i = s, j = t and is independent of i", row_ok, None);
    report.push("h(v_ij v_it*) has trace one", row.trace() == Rat::one(), Some(fmt_rat(&row.trace())));

    // h(v_ij* v_kl) = c_i c_k h(u_ij* u_kl) / (c_j c_l)
    let mut col: Option<Vec<Rat>> = None;
    let mut col_ok = true;
    for j in 0..d {
        let mut diag = vec![Rat::zero(); d];
        for l in 0..d {
            for i in 0..d {
                for k in 0..d {
                    let v = haar.inner(alg, &u[i][j], &u[k][l])?;
                    if i == k && j == l {
                        diag[i] = &v * &x[i] / &x[j];
                    } else {
                        col_ok &= v.is_zero();
                    }
                }
            }
        }
        match &col {
            Some(prev) => col_ok &= *prev == diag,
            None => col = Some(diag),
        }
    }
    let col = Matrix::diagonal(&col.expect("nonempty"));
    report.push("h(v_ij* v_kl) vanishes off i = k, j = l and is independent of j", col_ok, None);
    report.push("h(v_ij* v_kj) has trace one", col.trace() == Rat::one(), Some(fmt_rat(&col.trace())));

    let f = normalize_woronowicz(&row)?;
    let column_route = normalize_woronowicz(&col)?;
    let inv = f.inverse().expect("positive");
    report.push("routes agree: column route = F⁻¹", column_route == inv, None);
    report.push("Tr F = Tr F⁻¹", f.trace() == inv.trace(), Some(fmt_rat(&f.trace())));
    Ok(WoronowiczSolve { spin, f, column_route, report })
}

/// The twisted trace `τ_R(y) = Tr(R y)` is invariant under
/// `y ↦ V(y ⊗ 1)V*` on the rank-one operators `ξ_a ξ_b*` of one isotypic
/// copy: `Σ_c R_c v_ca v_cb* = δ_ab R_a`, in the algebra, for diagonal `R`.
pub fn check_twisted_volume_block(alg: &SuQ2, basis: &PeterWeylBasis, spin: HalfInt, r: &Matrix<Rat>) -> Result<Report, TripleError> {
    let uc = UnitaryCoefficients::new(alg, basis, spin)?;
    let d = uc.dim();
    if r.nrows() != d || r.ncols() != d {
        return Err(TripleError::Shape(format!("R block is {}×{}, spin {spin} needs {d}×{d}", r.nrows(), r.ncols())));
    }
    if (0..d).any(|i| (0..d).any(|j| i != j && !r[(i, j)].is_zero())) {
        return Err(TripleError::Unsupported("twisted volume is checked for diagonal R blocks".into()));
    }
    let x = &uc.weights;
    let mut bad = Vec::new();
    for a in 0..d {
        for b in 0..d {
            // multiplied through by c_a c_b
            let mut acc: Pbw<Rat> = Pbw::zero();
            for c in 0..d {
                acc = &acc + &alg.mul(&uc.u[c][a], &uc.u_star[c][b]).scale(&(&r[(c, c)] * &x[c]));
            }
            let expect = if a == b { Pbw::scalar(&r[(a, a)] * &x[a]) } else { Pbw::zero() };
            if acc != expect {
                bad.push(format!("({a},{b})"));
            }
        }
    }
    let mut report = Report::new();
    report.push(format!("τ_R invariant on rank-one operators at spin {spin}"), bad.is_empty(), (!bad.is_empty()).then(|| format!("fails at {}", bad.join(" "))));
    Ok(report)
}
