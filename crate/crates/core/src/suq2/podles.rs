//! Podleś sphere generators inside O(SU_q(2)) and the truncated equivariant
//! spectral triple on its spinor module.

use super::peter_weyl::{HalfInt, PeterWeylBasis, PwIndex};
use super::pbw::{Generator, Pbw, SuQ2};
use super::Suq2Error;
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::{fmt_rat, rat, rat_to_f64, Field, Rat};
use crate::surd::Quadratic;
use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::Signed;
use serde_json::{json, Value};

/// Tolerance for the float checks on the truncated triple.
pub const FLOAT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct PodlesParams {
    pub q: Rat,
    pub t: Rat,
}

impl PodlesParams {
    pub fn new(q: Rat, t: Rat) -> Result<Self, Suq2Error> {
        let unit = |x: &Rat| x.is_positive() && *x < Rat::one();
        if !unit(&q) || !unit(&t) {
            return Err(Suq2Error::Parameter(format!("q = {q} and t = {t} must lie in (0,1)")));
        }
        Ok(PodlesParams { q, t })
    }

    /// `c = t⁻¹ − t`, positive for `t ∈ (0,1)`.
    pub fn c(&self) -> Rat {
        self.t.recip() - &self.t
    }

    fn one_plus_q2(&self) -> Rat {
        Rat::one() + &self.q * &self.q
    }

    /// `ρ² = q²t²/((q²+1)²(1−t))`, with which the relations fail.
    pub fn uncorrected_rho_sqr(&self) -> Rat {
        let s = self.one_plus_q2();
        &self.q * &self.q * &self.t * &self.t / (&s * &s * (Rat::one() - &self.t))
    }

    /// `ρ² = q²/((q²+1)² c)`, the value for which the generators close.
    pub fn rho_sqr(&self) -> Rat {
        let s = self.one_plus_q2();
        &self.q * &self.q / (&s * &s * self.c())
    }
}

/// Which version of `Ã`, `B̃` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorForm {
    /// `Ã = (1 + t⁻¹qγ*α − t⁻¹ρ(1 − (1+q²)γ*γ) + t⁻¹γα*)/(1+q²)`,
    /// `B̃ = (qα² + ρ(1+q²)αγ − q²γ²)/(t(1+q²))`, with the uncorrected `ρ`.
    Uncorrected,
    /// The same shape with both `t⁻¹` prefactors replaced by `ρ⁻¹` and
    /// `ρ² = q²/((1+q²)² c)`.
    Corrected,
}

#[derive(Clone, Debug)]
pub struct PodlesData {
    pub params: PodlesParams,
    pub form: GeneratorForm,
    pub rho: Quadratic,
    pub a: Pbw<Quadratic>,
    pub b: Pbw<Quadratic>,
}

fn word(alg: &SuQ2, w: &[Generator]) -> Pbw<Quadratic> {
    alg.normal_form(w).map(|c| Quadratic::from_rat(c.clone()))
}

fn q_(r: &Rat) -> Quadratic {
    Quadratic::from_rat(r.clone())
}

/// `Ã`, `B̃` in PBW normal form.
pub fn podles_generators(alg: &SuQ2, params: &PodlesParams, form: GeneratorForm) -> Result<PodlesData, Suq2Error> {
    use Generator::*;
    if alg.q() != &params.q {
        return Err(Suq2Error::Parameter("algebra and sphere use different q".into()));
    }
    let q = q_(&params.q);
    let s = q_(&params.one_plus_q2());
    let (rho, prefactor) = match form {
        GeneratorForm::Uncorrected => (Quadratic::sqrt(params.uncorrected_rho_sqr()), q_(&params.t.recip())),
        GeneratorForm::Corrected => {
            let rho = Quadratic::sqrt(params.rho_sqr());
            let inv = rho.inv().expect("ρ > 0");
            (rho, inv)
        }
    };
    let one = Pbw::<Quadratic>::one();
    let gs_a = word(alg, &[GammaStar, Alpha]);
    let g_as = word(alg, &[Gamma, AlphaStar]);
    let gs_g = word(alg, &[GammaStar, Gamma]);
    let round = &one - &gs_g.scale(&s);
    let inner = &(&gs_a.scale(&q) - &round.scale(&rho)) + &g_as;
    let s_inv = s.inv().expect("1+q² > 0");
    let a = (&one + &inner.scale(&prefactor)).scale(&s_inv);
    let b_num = &(&word(alg, &[Alpha, Alpha]).scale(&q) + &word(alg, &[Alpha, Gamma]).scale(&(rho.clone() * s.clone())))
        - &word(alg, &[Gamma, Gamma]).scale(&(q.clone() * q.clone()));
    let b_den = match form {
        GeneratorForm::Uncorrected => q_(&params.t) * s.clone(),
        GeneratorForm::Corrected => rho.clone() * s.clone(),
    };
    let b = b_num.scale(&b_den.inv().expect("nonzero"));
    Ok(PodlesData { params: params.clone(), form, rho, a, b })
}

/// Residual elements of the four defining relations.
#[derive(Clone, Debug)]
pub struct PodlesRelations {
    /// `Ã* − Ã`
    pub self_adjoint: Pbw<Quadratic>,
    /// `ÃB̃ − q⁻²B̃Ã`
    pub commutation: Pbw<Quadratic>,
    /// `B̃*B̃ − (Ã − Ã² + c)`
    pub left_sphere: Pbw<Quadratic>,
    /// `B̃B̃* − (q²Ã − q⁴Ã² + c)`
    pub right_sphere: Pbw<Quadratic>,
}

impl PodlesRelations {
    pub fn named(&self) -> [(&'static str, &Pbw<Quadratic>); 4] {
        [
            ("A* = A", &self.self_adjoint),
            ("AB = q^-2 BA", &self.commutation),
            ("B*B = A - A^2 + c", &self.left_sphere),
            ("BB* = q^2 A - q^4 A^2 + c", &self.right_sphere),
        ]
    }

    pub fn all_zero(&self) -> bool {
        self.named().iter().all(|(_, r)| r.is_zero())
    }

    /// Largest absolute PBW coefficient over the four residuals.
    pub fn max_residual(&self) -> f64 {
        self.named().iter().map(|(_, r)| r.max_abs()).fold(0.0, f64::max)
    }
}

impl PodlesData {
    pub fn relations(&self, alg: &SuQ2) -> PodlesRelations {
        let q2 = q_(&(&self.params.q * &self.params.q));
        let c = Pbw::scalar(q_(&self.params.c()));
        let a2 = alg.mul(&self.a, &self.a);
        let b_star = alg.star(&self.b);
        PodlesRelations {
            self_adjoint: &alg.star(&self.a) - &self.a,
            commutation: &alg.mul(&self.a, &self.b) - &alg.mul(&self.b, &self.a).scale(&q2.inv().expect("q ≠ 0")),
            left_sphere: &alg.mul(&b_star, &self.b) - &(&(&self.a - &a2) + &c),
            right_sphere: &alg.mul(&self.b, &b_star) - &(&(&self.a.scale(&q2) - &a2.scale(&(q2.clone() * q2.clone()))) + &c),
        }
    }

    /// `x₀ = t(1 − (1+q²)Ã)`.
    pub fn x0(&self) -> Pbw<Quadratic> {
        let t = q_(&self.params.t);
        (&Pbw::one() - &self.a.scale(&q_(&self.params.one_plus_q2()))).scale(&t)
    }

    /// Exact relation report; for the uncorrected form it records, not asserts.
    pub fn verify(&self, alg: &SuQ2) -> Report {
        let mut report = Report::new();
        for (name, r) in self.relations(alg).named() {
            report.push(name, r.is_zero(), (!r.is_zero()).then(|| format!("max coefficient {:.3e}", r.max_abs())));
        }
        report
    }
}

/// `x₋₁ = t(1+q²)^{1/2}B̃/q`, `x₀ = t(1−(1+q²)Ã)` and `x₁ = −t(1+q²)^{1/2}B̃*`
/// should form a spin-1 multiplet: `x₋₁`, `x₀`, `−x₁` share one row vector in
/// the orthonormal basis `e^1_{kl}`. Checked exactly on squares, which keeps
/// `√(1+q²)` out of the field, together with the absence of other spins.
pub fn check_spherical_multiplet(alg: &SuQ2, basis: &PeterWeylBasis, data: &PodlesData) -> Result<Report, Suq2Error> {
    let p = &data.params;
    let s = p.one_plus_q2();
    let t2 = &p.t * &p.t;
    let one = HalfInt(2);
    // (column, x up to a positive factor, sign of x relative to it, factor²)
    let columns: [(HalfInt, Pbw<Quadratic>, i32, Rat); 3] = [
        (HalfInt(-2), data.b.clone(), 1, &t2 * &s / (&p.q * &p.q)),
        (HalfInt(0), data.x0(), 1, Rat::one()),
        (HalfInt(2), alg.star(&data.b), -1, &t2 * &s),
    ];
    let mut report = Report::new();
    let mut squares: Vec<Vec<Quadratic>> = Vec::new();
    let mut signs: Vec<Vec<i32>> = Vec::new();
    for (col, x, sign, scale) in &columns {
        let coords = basis.coordinates(x)?;
        let stray: Vec<String> = coords
            .keys()
            .map(|&i| basis.entries()[i].index)
            .filter(|ix| ix.spin != one || ix.col != *col)
            .map(|ix| ix.to_string())
            .collect();
        report.push(format!("x_{col} lies in spin-1 column {col}"), stray.is_empty(), (!stray.is_empty()).then(|| stray.join(" ")));
        let mut sq = Vec::new();
        let mut sg = Vec::new();
        for k in one.range() {
            let pos = basis.position(&PwIndex::new(one, k, *col)).expect("spin 1 is built");
            let c = coords.get(&pos).cloned().unwrap_or_else(Quadratic::zero);
            sg.push(sign * c.to_f64().partial_cmp(&0.0).map_or(0, |o| o as i32));
            sq.push(c.clone() * c * q_(&(scale * &basis.entries()[pos].norm_sqr)));
        }
        squares.push(sq);
        signs.push(sg);
    }
    let same_sq = squares[0] == squares[1] && squares[1] == squares[2];
    report.push("|e-coordinates| agree across x_-1, x_0, x_1", same_sq, (!same_sq).then(|| format!("{squares:?}")));
    // x₋₁ and x₀ carry the same signs, x₁ the opposite ones
    let flipped: Vec<i32> = signs[2].iter().map(|s| -s).collect();
    let signs_ok = signs[0] == signs[1] && signs[1] == flipped;
    report.push("signs match (x_-1, x_0, -x_1)", signs_ok, (!signs_ok).then(|| format!("{signs:?}")));
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiracConstants {
    pub c1: Rat,
    pub c2: Rat,
}

impl DiracConstants {
    pub fn new(c1: Rat, c2: Rat) -> Result<Self, Suq2Error> {
        if c1.is_zero() {
            return Err(Suq2Error::Parameter("c1 must be nonzero".into()));
        }
        Ok(DiracConstants { c1, c2 })
    }

    /// `c₁n + c₂`
    pub fn eigenvalue(&self, spin: HalfInt) -> Rat {
        &self.c1 * spin.to_rat() + &self.c2
    }
}

/// Chirality label of the two spinor submodules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    pub fn symbol(self) -> &'static str {
        match self {
            Chirality::Plus => "+",
            Chirality::Minus => "-",
        }
    }
}

/// Basis vector `ψ^n_{±,l} = Σ_k w^±_{n,k} e^n_{kl}` of the spinor space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinorLabel {
    pub spin: HalfInt,
    pub chirality: Chirality,
    pub col: HalfInt,
}

/// One `D`-eigenspace inside a spin level: eigenvalue `±(c₁n + c₂)`, carrying
/// one copy of the spin-`n` corepresentation.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotypicBlock {
    pub spin: HalfInt,
    pub eigenvalue: Rat,
    pub dim: usize,
}

/// Left multiplication by `Ã`, `B̃`, `B̃*` on the half-integer levels of
/// `L²(SU_q(2))` up to some level, in the orthonormal basis `e^n_{kl}`.
struct LeftRegular {
    /// basis positions of the half-integer entries, in basis order
    slots: Vec<usize>,
    slot_of: std::collections::HashMap<usize, usize>,
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    b_star: DMatrix<f64>,
}

impl LeftRegular {
    /// Columns are filled for levels `≤ col_level`; rows run to the basis level.
    fn build(alg: &SuQ2, basis: &PeterWeylBasis, data: &PodlesData, col_level: HalfInt) -> Result<Self, Suq2Error> {
        let slots: Vec<usize> = (0..basis.len()).filter(|&i| basis.entries()[i].index.spin.0 % 2 == 1).collect();
        let slot_of: std::collections::HashMap<usize, usize> = slots.iter().enumerate().map(|(s, &i)| (i, s)).collect();
        let n = slots.len();
        let b_star = alg.star(&data.b);
        let gens = [&data.a, &data.b, &b_star];
        let mut mats = vec![DMatrix::zeros(n, n), DMatrix::zeros(n, n), DMatrix::zeros(n, n)];
        for (j, &pos) in slots.iter().enumerate() {
            let entry = &basis.entries()[pos];
            if entry.index.spin > col_level {
                continue;
            }
            let d = entry.element.map(|c| Quadratic::from_rat(c.clone()));
            for (g, m) in gens.iter().zip(mats.iter_mut()) {
                for (i, c) in basis.coordinates(&alg.mul(g, &d))? {
                    let row = *slot_of.get(&i).ok_or_else(|| Suq2Error::Verification("left multiplication changed the parity of 2n".into()))?;
                    m[(row, j)] = c.to_f64() * basis.norm(i) / basis.norm(pos);
                }
            }
        }
        let b_star = mats.pop().expect("three");
        let b = mats.pop().expect("three");
        let a = mats.pop().expect("three");
        Ok(LeftRegular { slots, slot_of, a, b, b_star })
    }

    fn slot(&self, basis: &PeterWeylBasis, index: PwIndex) -> usize {
        self.slot_of[&basis.position(&index).expect("in basis")]
    }
}

fn real_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Spinor row vectors `w^±_n ∈ R^{2n+1}` for half-integer `n ≤ level`.
struct SpinorRows {
    rows: Vec<(HalfInt, DVector<f64>, DVector<f64>)>,
    rank_defect: f64,
    overlap: f64,
    spin_half_spread: f64,
}

fn embed(lr: &LeftRegular, basis: &PeterWeylBasis, spin: HalfInt, w: &DVector<f64>, col: HalfInt) -> DVector<f64> {
    let mut v = DVector::zeros(lr.slots.len());
    for (k, x) in spin.range().zip(w.iter()) {
        v[lr.slot(basis, PwIndex::new(spin, k, col))] = *x;
    }
    v
}

fn restrict(lr: &LeftRegular, basis: &PeterWeylBasis, spin: HalfInt, v: &DVector<f64>, col: HalfInt) -> DVector<f64> {
    DVector::from_iterator((spin.0 + 1) as usize, spin.range().map(|k| v[lr.slot(basis, PwIndex::new(spin, k, col))]))
}

fn fix_sign(w: DVector<f64>, reference: &DVector<f64>) -> DVector<f64> {
    if w.dot(reference) < 0.0 {
        -w
    } else {
        w
    }
}

/// The S-module generated by `w ⊗ C^{2n+1}` at spin 1/2: at each new level
/// all images under `Ã`, `B̃`, `B̃*` span a single row vector. Its sign is
/// fixed by the image of `B̃` on the lowest column, for both chiralities alike.
fn next_row(lr: &LeftRegular, basis: &PeterWeylBasis, spin: HalfInt, w: &DVector<f64>) -> (DVector<f64>, f64) {
    let up = HalfInt(spin.0 + 2);
    let dim = (up.0 + 1) as usize;
    let mut gram = DMatrix::<f64>::zeros(dim, dim);
    let mut reference = None;
    for l in spin.range() {
        let v = embed(lr, basis, spin, w, l);
        for (gi, g) in [&lr.a, &lr.b, &lr.b_star].into_iter().enumerate() {
            let image = g * &v;
            for l2 in up.range() {
                let r = restrict(lr, basis, up, &image, l2);
                if gi == 1 && l == HalfInt(-spin.0) && l2 == HalfInt(-up.0) {
                    reference = Some(r.clone());
                }
                let n = r.norm();
                if n > FLOAT_TOL {
                    let r = r / n;
                    gram += &r * r.transpose();
                }
            }
        }
    }
    let eig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let top = eig.eigenvectors.column(order[0]).into_owned();
    let defect = if dim > 1 { eig.eigenvalues[order[1]].abs() / eig.eigenvalues[order[0]] } else { 0.0 };
    let reference = reference.expect("lowest column is always visited");
    (fix_sign(top, &reference), defect)
}

fn spinor_rows(lr: &LeftRegular, basis: &PeterWeylBasis, level: HalfInt) -> SpinorRows {
    let half = HalfInt(1);
    let block = |l: HalfInt| {
        DMatrix::from_fn(2, 2, |i, j| {
            let k = |x: usize| HalfInt(2 * x as i32 - 1);
            lr.a[(lr.slot(basis, PwIndex::new(half, k(i), l)), lr.slot(basis, PwIndex::new(half, k(j), l)))]
        })
    };
    let b0 = block(HalfInt(-1));
    let b1 = block(HalfInt(1));
    let spin_half_spread = (&b0 * &b1 - &b1 * &b0).abs().max();
    let eig = SymmetricEigen::new((&b0 + b0.transpose()) / 2.0);
    let (hi, lo) = if eig.eigenvalues[0] >= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
    let positive = |v: DVector<f64>| {
        let lead = v.iter().copied().find(|x| x.abs() > FLOAT_TOL).unwrap_or(1.0);
        if lead < 0.0 {
            -v
        } else {
            v
        }
    };
    let mut plus = positive(eig.eigenvectors.column(hi).into_owned());
    let mut minus = positive(eig.eigenvectors.column(lo).into_owned());
    let mut rows = vec![(half, plus.clone(), minus.clone())];
    let mut rank_defect: f64 = 0.0;
    let mut overlap = plus.dot(&minus).abs();
    let mut spin = half;
    while spin.0 + 2 <= level.0 {
        let (p, dp) = next_row(lr, basis, spin, &plus);
        let (m, dm) = next_row(lr, basis, spin, &minus);
        rank_defect = rank_defect.max(dp).max(dm);
        overlap = overlap.max(p.dot(&m).abs());
        spin = HalfInt(spin.0 + 2);
        rows.push((spin, p.clone(), m.clone()));
        plus = p;
        minus = m;
    }
    SpinorRows { rows, rank_defect, overlap, spin_half_spread }
}

/// Truncated spectral triple on `H_N = ⊕_{n ≤ N} W_n ⊗ C^{2n+1}`.
#[derive(Clone, Debug)]
pub struct TruncatedPodles {
    pub params: PodlesParams,
    pub dirac_constants: DiracConstants,
    pub level: HalfInt,
    pub labels: Vec<SpinorLabel>,
    /// `P_N Ã P_N`
    pub a: DMatrix<f64>,
    /// `P_N B̃ P_N`
    pub b: DMatrix<f64>,
    /// `P_N B̃* P_N`, computed directly rather than as a transpose
    pub b_star: DMatrix<f64>,
    /// `D ψ^n_{±,l} = (c₁n + c₂) ψ^n_{∓,l}`, exact
    pub dirac: Matrix<Rat>,
    pub isotypic: Vec<IsotypicBlock>,
    pub report: Report,
}

/// Compress to `H_N` and collect the float checks. `basis` must reach level
/// `N + 1` so that the leak out of `H_N` is visible.
pub fn truncated_podles_triple(
    alg: &SuQ2,
    basis: &PeterWeylBasis,
    data: &PodlesData,
    dirac_constants: &DiracConstants,
    level: HalfInt,
) -> Result<TruncatedPodles, Suq2Error> {
    if level.0 < 1 || level.0 % 2 == 0 {
        return Err(Suq2Error::Parameter(format!("truncation level {level} must be a positive half-odd integer")));
    }
    if basis.level().0 < level.0 + 2 {
        return Err(Suq2Error::DegreeBound { needed: (level.0 + 2) as u32, available: basis.level().0 as u32 });
    }
    let lr = LeftRegular::build(alg, basis, data, level)?;
    let outer = HalfInt(level.0 + 2);
    let rows = spinor_rows(&lr, basis, outer);
    let mut labels = Vec::new();
    let mut columns = Vec::new();
    let mut outer_columns = Vec::new();
    for (spin, plus, minus) in &rows.rows {
        for (chirality, w) in [(Chirality::Plus, plus), (Chirality::Minus, minus)] {
            for col in spin.range() {
                let v = embed(&lr, basis, *spin, w, col);
                if *spin <= level {
                    labels.push(SpinorLabel { spin: *spin, chirality, col });
                    columns.push(v.clone());
                }
                outer_columns.push(v);
            }
        }
    }
    let isometry = DMatrix::from_columns(&columns);
    let outer_isometry = DMatrix::from_columns(&outer_columns);
    let compress = |m: &DMatrix<f64>| isometry.transpose() * m * &isometry;
    let a = compress(&lr.a);
    let b = compress(&lr.b);
    let b_star = compress(&lr.b_star);
    let dim = labels.len();
    let dirac = Matrix::from_fn(dim, dim, |i, j| {
        let (x, y) = (labels[i], labels[j]);
        if x.spin == y.spin && x.col == y.col && x.chirality != y.chirality {
            dirac_constants.eigenvalue(x.spin)
        } else {
            Rat::zero()
        }
    });
    let mut isotypic = Vec::new();
    for (spin, _, _) in rows.rows.iter().filter(|(s, _, _)| *s <= level) {
        let lam = dirac_constants.eigenvalue(*spin);
        for e in [lam.clone(), -lam] {
            isotypic.push(IsotypicBlock { spin: *spin, eigenvalue: e, dim: (spin.0 + 1) as usize });
        }
    }

    let mut report = Report::new();
    let small = |x: f64| x < FLOAT_TOL;
    report.push("spin-1/2 blocks of A commute across l", small(rows.spin_half_spread), Some(format!("{:.1e}", rows.spin_half_spread)));
    report.push("generated rows have multiplicity one", small(rows.rank_defect), Some(format!("{:.1e}", rows.rank_defect)));
    report.push("M+ and M- orthogonal", small(rows.overlap), Some(format!("{:.1e}", rows.overlap)));
    let gram = isometry.transpose() * &isometry - DMatrix::identity(dim, dim);
    report.push("spinor basis orthonormal", small(gram.abs().max()), None);
    let leak = [&lr.a, &lr.b, &lr.b_star]
        .iter()
        .map(|m| {
            let image = *m * &isometry;
            real_norm(&(&image - &outer_isometry * (outer_isometry.transpose() * &image)))
        })
        .fold(0.0, f64::max);
    report.push("spinor space invariant under A, B, B*", small(leak), Some(format!("{leak:.1e}")));
    let adj = (&b_star - b.transpose()).abs().max();
    report.push("B* acts as the transpose of B", small(adj), Some(format!("{adj:.1e}")));
    let expected_dim: usize = rows.rows.iter().filter(|(s, _, _)| *s <= level).map(|(s, _, _)| 2 * (s.0 + 1) as usize).sum();
    report.push(format!("dim H_N = {dim}"), dim == expected_dim, None);

    let mut out = TruncatedPodles { params: data.params.clone(), dirac_constants: dirac_constants.clone(), level, labels, a, b, b_star, dirac, isotypic, report };
    for (name, r) in out.interior_residuals() {
        out.report.push(format!("interior {name}"), small(r), Some(format!("{r:.1e}")));
    }
    let equivariant = out.dirac_is_block_scalar();
    out.report.push("D commutes with the corepresentation (scalar on l-multiplets)", equivariant, None);
    Ok(out)
}

impl TruncatedPodles {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn dirac_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| rat_to_f64(&self.dirac[(i, j)]))
    }

    fn interior_columns(&self) -> Vec<usize> {
        let edge = HalfInt(self.level.0 - 2);
        (0..self.dim()).filter(|&i| self.labels[i].spin <= edge).collect()
    }

    /// Operator norms of the relation residuals on spins `n ≤ N − 1`.
    pub fn interior_residuals(&self) -> Vec<(&'static str, f64)> {
        let n = self.dim();
        let q = rat_to_f64(&self.params.q);
        let c = rat_to_f64(&self.params.c());
        let id = DMatrix::<f64>::identity(n, n);
        let (a, b, bs) = (&self.a, &self.b, &self.b_star);
        let a2 = a * a;
        let rels = [
            ("A* = A", a - a.transpose()),
            ("AB = q^-2 BA", a * b - (b * a) / (q * q)),
            ("B*B = A - A^2 + c", bs * b - (a - &a2 + &id * c)),
            ("BB* = q^2 A - q^4 A^2 + c", b * bs - (a * (q * q) - &a2 * q.powi(4) + &id * c)),
        ];
        let cols = self.interior_columns();
        rels.into_iter().map(|(name, r)| (name, real_norm(&r.select_columns(&cols)))).collect()
    }

    /// `‖[D, Ã]‖` and `‖[D, B̃]‖` on the truncated space.
    pub fn commutator_norms(&self) -> (f64, f64) {
        let d = self.dirac_f64();
        let comm = |x: &DMatrix<f64>| real_norm(&(&d * x - x * &d));
        (comm(&self.a), comm(&self.b))
    }

    fn dirac_is_block_scalar(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (x, y) = (self.labels[i], self.labels[j]);
                self.dirac[(i, j)].is_zero() || (x.spin == y.spin && x.col == y.col)
            })
        })
    }

    /// Eigenvalues with multiplicities, read exactly from the rational `D`.
    pub fn exact_spectrum(&self) -> Option<Vec<(Rat, usize)>> {
        crate::linalg::exact_rational_spectrum(&self.dirac, &Matrix::identity(self.dim()))
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &DMatrix<f64>| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect::<Vec<_>>()).collect::<Vec<_>>();
        let label = |l: &SpinorLabel| json!({"n": l.spin.to_string(), "chirality": l.chirality.symbol(), "l": l.col.to_string()});
        json!({
            "q": fmt_rat(&self.params.q),
            "t": fmt_rat(&self.params.t),
            "N": self.level.to_string(),
            "basis": self.labels.iter().map(label).collect::<Vec<_>>(),
            "A": mat(&self.a),
            "B": mat(&self.b),
            "D": {
                "c1": fmt_rat(&self.dirac_constants.c1),
                "c2": fmt_rat(&self.dirac_constants.c2),
                "pairs": "D psi(n,+,l) = (c1 n + c2) psi(n,-,l) and vice versa",
            },
            "isotypic": self.isotypic.iter().map(|b| json!({
                "n": b.spin.to_string(),
                "eigenvalue": fmt_rat(&b.eigenvalue),
                "dim": b.dim,
            })).collect::<Vec<_>>(),
        })
    }
}

/// `q = t = 1/2`, the default sphere.
pub fn default_params() -> PodlesParams {
    PodlesParams::new(rat(1, 2), rat(1, 2)).expect("valid")
}

/// Build everything needed for the truncated triple at level `N`.
pub fn build_truncated(params: &PodlesParams, dirac: &DiracConstants, level: HalfInt) -> Result<TruncatedPodles, Suq2Error> {
    let alg = SuQ2::new(params.q.clone())?;
    let basis = PeterWeylBasis::build(&alg, HalfInt(level.0 + 2))?;
    let data = podles_generators(&alg, params, GeneratorForm::Corrected)?;
    truncated_podles_triple(&alg, &basis, &data, dirac, level)
}

/// `‖[D, Ã]‖`, `‖[D, B̃]‖` at `N` and `N + 1`; agreement within `tol` is the
/// finite stand-in for bounded commutators.
pub fn check_stabilization(params: &PodlesParams, dirac: &DiracConstants, level: HalfInt, tol: f64) -> Result<Report, Suq2Error> {
    let lo = build_truncated(params, dirac, level)?.commutator_norms();
    let hi = build_truncated(params, dirac, HalfInt(level.0 + 2))?.commutator_norms();
    let mut report = Report::new();
    for (name, x, y) in [("[D,A]", lo.0, hi.0), ("[D,B]", lo.1, hi.1)] {
        report.push(format!("‖{name}‖ stable from N to N+1"), (x - y).abs() < tol, Some(format!("{x:.12} vs {y:.12}")));
    }
    Ok(report)
}
