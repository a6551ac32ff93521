//! Isotypic profiles `H = ⊕_x H_x ⊗ W_x`, `D = ⊕ 1 ⊗ D_x`, `R = ⊕ F_x ⊗ R_x`,
//! their deformation along a monoidal equivalence, and spectrum tables.

use super::TripleError;
use crate::linalg::{exact_rational_spectrum, hermitian_eigenvalues, is_positive_definite, Matrix};
use crate::repcat::{EquivalenceDescriptor, Family, FusionRing, IrrepLabel, OrthogonalMatrixSpec, RealValue};
use crate::report::Report;
use crate::scalar::{fmt_rat, rat_pow, rat_to_f64, Field, Rat};
use num_traits::Signed;
use serde_json::{json, Value};
use std::fmt;

/// Relative tolerance for merging float eigenvalues.
pub const MERGE_TOL: f64 = 1e-12;

/// Label of an isotypic block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockLabel {
    /// `r_k` of a free orthogonal fusion ring.
    Irrep(IrrepLabel),
    /// One-dimensional corepresentation given by a group-like basis element
    /// of a finite Hopf algebra.
    GroupLike { index: usize, name: String },
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockLabel::Irrep(x) => write!(f, "{x}"),
            BlockLabel::GroupLike { name, .. } => write!(f, "{name}"),
        }
    }
}

/// The positive matrix `F_x` of a block.
#[derive(Clone, Debug, PartialEq)]
pub enum WoronowiczBlock {
    Exact(Matrix<Rat>),
    /// Row-major float matrix, used when the partner matrix is irrational.
    Float(Vec<Vec<f64>>),
    /// Only `Tr F_x`, the quantum dimension, is tracked.
    QuantumDimension(Rat),
}

impl WoronowiczBlock {
    pub fn trace(&self) -> f64 {
        match self {
            WoronowiczBlock::Exact(m) => rat_to_f64(&m.trace()),
            WoronowiczBlock::Float(m) => (0..m.len()).map(|i| m[i][i]).sum(),
            WoronowiczBlock::QuantumDimension(d) => rat_to_f64(d),
        }
    }

    pub fn exact_trace(&self) -> Option<Rat> {
        match self {
            WoronowiczBlock::Exact(m) => Some(m.trace()),
            WoronowiczBlock::Float(_) => None,
            WoronowiczBlock::QuantumDimension(d) => Some(d.clone()),
        }
    }

    pub fn is_quantum_dimension_only(&self) -> bool {
        matches!(self, WoronowiczBlock::QuantumDimension(_))
    }

    fn to_f64(&self) -> Option<nalgebra::DMatrix<f64>> {
        match self {
            WoronowiczBlock::Exact(m) => Some(nalgebra::DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| rat_to_f64(&m[(i, j)]))),
            WoronowiczBlock::Float(m) => Some(nalgebra::DMatrix::from_fn(m.len(), m.len(), |i, j| m[i][j])),
            WoronowiczBlock::QuantumDimension(_) => None,
        }
    }

    /// Positivity and `Tr F = Tr F⁻¹`.
    pub fn check(&self) -> Result<(), String> {
        match self {
            WoronowiczBlock::Exact(m) => {
                if !is_positive_definite(m) {
                    return Err("F not positive definite".into());
                }
                let inv = m.inverse().ok_or("F singular")?;
                (m.trace() == inv.trace()).then_some(()).ok_or_else(|| format!("Tr F = {} but Tr F⁻¹ = {}", fmt_rat(&m.trace()), fmt_rat(&inv.trace())))
            }
            WoronowiczBlock::Float(_) => {
                let m = self.to_f64().expect("matrix");
                let eig = nalgebra::SymmetricEigen::new((&m + m.transpose()) / 2.0);
                if eig.eigenvalues.iter().any(|&e| e <= 0.0) || (&m - m.transpose()).abs().max() > MERGE_TOL {
                    return Err("F not positive definite".into());
                }
                let (t, ti) = (eig.eigenvalues.sum(), eig.eigenvalues.map(|e| 1.0 / e).sum());
                ((t - ti).abs() <= MERGE_TOL * t.max(1.0)).then_some(()).ok_or_else(|| format!("Tr F = {t} but Tr F⁻¹ = {ti}"))
            }
            WoronowiczBlock::QuantumDimension(d) => d.is_positive().then_some(()).ok_or_else(|| "non-positive quantum dimension".into()),
        }
    }
}

/// `F_{r_k} = diag(|q|^{−k}, |q|^{2−k}, …, |q|^k)` for `SU_q(2)`, indices
/// `−k/2, …, k/2` as for the matrix coefficients, so that
/// `h(v_ij v_st*) = δ_is F_jt / Tr F`; `Tr F = Tr F⁻¹ = |[k+1]_q|`.
pub fn suq2_woronowicz(k: u32, q: &Rat) -> Matrix<Rat> {
    let a = q.abs();
    let entries: Vec<Rat> = (0..=k).map(|j| rat_pow(&a, 2 * i64::from(j) - i64::from(k))).collect();
    Matrix::diagonal(&entries)
}

/// `F*F` of a partner matrix as the fundamental `A_o(F)` block: exact when
/// every product of entries is rational, float otherwise. `None` for an
/// inexact complex `F*F`.
pub fn partner_fundamental(f: &OrthogonalMatrixSpec) -> Option<WoronowiczBlock> {
    let n = f.n;
    let entry = |i: usize, j: usize| &f.entries[i * n + j];
    let exact_product = |x: &RealValue, y: &RealValue| match (x, y) {
        (RealValue::Exact(a), RealValue::Exact(b)) => a.mul(b).as_rat(),
        _ => None,
    };
    let exact = (|| {
        let mut m = Matrix::<Rat>::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                let (mut re, mut im) = (Rat::zero(), Rat::zero());
                for i in 0..n {
                    let ((a, b), (c, d)) = (entry(i, j), entry(i, k));
                    re = re + exact_product(a, c)? + exact_product(b, d)?;
                    im = im + exact_product(a, d)? - exact_product(b, c)?;
                }
                if !im.is_zero() {
                    return None;
                }
                m[(j, k)] = re;
            }
        }
        Some(m)
    })();
    match exact {
        Some(m) => Some(WoronowiczBlock::Exact(m)),
        None => {
            let c = f.to_complex();
            let ff = c.adjoint() * &c;
            if ff.iter().any(|z| z.im.abs() > MERGE_TOL) {
                return None;
            }
            Some(WoronowiczBlock::Float((0..n).map(|i| (0..n).map(|j| ff[(i, j)].re).collect()).collect()))
        }
    }
}

/// Reference `F_x` for a label on the given ring.
pub fn reference_woronowicz(ring: &FusionRing, label: &BlockLabel, q: &Rat, partner: Option<&OrthogonalMatrixSpec>) -> Result<WoronowiczBlock, TripleError> {
    match label {
        BlockLabel::GroupLike { .. } => Ok(WoronowiczBlock::Exact(Matrix::identity(1))),
        BlockLabel::Irrep(x) => match (x.family, x.index) {
            (Family::SuQ2, k) => Ok(WoronowiczBlock::Exact(suq2_woronowicz(k, q))),
            (Family::AoF, 0) => Ok(WoronowiczBlock::Exact(Matrix::identity(1))),
            (Family::AoF, k) => match partner.filter(|_| k == 1).and_then(partner_fundamental) {
                Some(f) => Ok(f),
                None => Ok(WoronowiczBlock::QuantumDimension(ring.dim_quantum(x, q)?.abs())),
            },
        },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProfileBlock {
    pub label: BlockLabel,
    /// `d_x`
    pub irrep_dim: u128,
    /// `w_x`
    pub multiplicity: usize,
    /// `D_x`, self-adjoint on `W_x`
    pub dirac: Matrix<Rat>,
    /// `R_x`, positive on `W_x`
    pub twist: Matrix<Rat>,
    pub woronowicz: WoronowiczBlock,
}

impl ProfileBlock {
    fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.dirac.to_complex()).into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// Isotypic decomposition of an equivariant spectral triple.
#[derive(Clone, Debug, PartialEq)]
pub struct IsotypicProfile {
    /// Fusion ring the `Irrep` labels live in, if any.
    pub ring: Option<FusionRing>,
    pub q: Rat,
    pub blocks: Vec<ProfileBlock>,
}

impl IsotypicProfile {
    /// Canonically ordered by (smallest `D_x` eigenvalue, label).
    pub fn new(ring: Option<FusionRing>, q: Rat, blocks: Vec<ProfileBlock>) -> Self {
        let mut p = IsotypicProfile { ring, q, blocks };
        p.canonicalize();
        p
    }

    pub fn canonicalize(&mut self) {
        self.blocks.sort_by(|a, b| a.min_eigenvalue().total_cmp(&b.min_eigenvalue()).then_with(|| a.label.cmp(&b.label)));
    }

    /// `Σ_x d_x·w_x`
    pub fn total_dim(&self) -> u128 {
        self.blocks.iter().map(|b| b.irrep_dim * b.multiplicity as u128).sum()
    }

    /// Shape, self-adjointness, positivity, `[D_x, R_x] = 0`, and the
    /// normalization of every `F_x`.
    pub fn check(&self) -> Report {
        let mut report = Report::new();
        for b in &self.blocks {
            let w = b.multiplicity;
            let mut problems = Vec::new();
            if b.dirac.nrows() != w || b.dirac.ncols() != w || b.twist.nrows() != w || b.twist.ncols() != w {
                problems.push("block shape".to_string());
            } else {
                if !b.dirac.is_hermitian() {
                    problems.push("D_x not self-adjoint".into());
                }
                if !is_positive_definite(&b.twist) {
                    problems.push("R_x not positive".into());
                }
                if !b.dirac.commutator(&b.twist).is_zero() {
                    problems.push("[D_x, R_x] ≠ 0".into());
                }
            }
            if let Err(e) = b.woronowicz.check() {
                problems.push(e);
            }
            report.push(format!("block {}", b.label), problems.is_empty(), (!problems.is_empty()).then(|| problems.join("; ")));
        }
        report
    }

    pub fn to_json(&self) -> Value {
        let mat = |m: &Matrix<Rat>| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| fmt_rat(&m[(i, j)])).collect::<Vec<_>>()).collect::<Vec<_>>();
        let f = |w: &WoronowiczBlock| match w {
            WoronowiczBlock::Exact(m) => json!({ "exact": mat(m) }),
            WoronowiczBlock::Float(m) => json!({ "float": m }),
            WoronowiczBlock::QuantumDimension(d) => json!({ "quantum_dimension_only": fmt_rat(d) }),
        };
        json!({
            "q": fmt_rat(&self.q),
            "total_dim": self.total_dim().to_string(),
            "blocks": self.blocks.iter().map(|b| json!({
                "label": b.label.to_string(),
                "irrep_dim": b.irrep_dim.to_string(),
                "multiplicity": b.multiplicity,
                "D": mat(&b.dirac),
                "R": mat(&b.twist),
                "F": f(&b.woronowicz),
            })).collect::<Vec<_>>(),
        })
    }
}

/// A monoidal equivalence as seen by profiles.
#[derive(Clone, Debug, PartialEq)]
pub enum ProfileEquivalence {
    /// Index-preserving equivalence of free orthogonal fusion rings; the
    /// partner matrix, when known, supplies the fundamental `F`-block.
    Free { descriptor: Box<EquivalenceDescriptor>, partner: Option<OrthogonalMatrixSpec> },
    /// Twist of a finite Hopf algebra by a dual 2-cocycle: labels,
    /// dimensions and `F`-blocks are unchanged.
    CocycleTwist,
}

impl ProfileEquivalence {
    pub fn free(descriptor: EquivalenceDescriptor) -> Self {
        ProfileEquivalence::Free { descriptor: Box::new(descriptor), partner: None }
    }

    pub fn with_partner(descriptor: EquivalenceDescriptor, partner: OrthogonalMatrixSpec) -> Self {
        ProfileEquivalence::Free { descriptor: Box::new(descriptor), partner: Some(partner) }
    }

    pub fn inverse(&self) -> Self {
        match self {
            ProfileEquivalence::Free { descriptor, .. } => ProfileEquivalence::Free { descriptor: Box::new(descriptor.inverse()), partner: None },
            ProfileEquivalence::CocycleTwist => ProfileEquivalence::CocycleTwist,
        }
    }

    pub fn is_dimension_preserving(&self) -> bool {
        match self {
            ProfileEquivalence::Free { descriptor, .. } => descriptor.dimension_preserving,
            ProfileEquivalence::CocycleTwist => true,
        }
    }
}

/// `(x, d_x, w_x, D_x, R_x, F_x) ↦ (φ(x), d_{φ(x)}, w_x, D_x, R_x, F_{φ(x)})`.
pub fn deform_profile(p: &IsotypicProfile, e: &ProfileEquivalence) -> Result<IsotypicProfile, TripleError> {
    match e {
        ProfileEquivalence::CocycleTwist => Ok(p.clone()),
        ProfileEquivalence::Free { descriptor, partner } => {
            let mut blocks = Vec::with_capacity(p.blocks.len());
            for b in &p.blocks {
                let BlockLabel::Irrep(x) = &b.label else {
                    return Err(TripleError::LabelOutsideDomain(b.label.to_string()));
                };
                if !descriptor.in_domain(x) {
                    return Err(TripleError::LabelOutsideDomain(x.to_string()));
                }
                let y = descriptor.map_label(x)?;
                let label = BlockLabel::Irrep(y);
                blocks.push(ProfileBlock {
                    irrep_dim: descriptor.target.dim_classical(&y)?,
                    woronowicz: reference_woronowicz(&descriptor.target, &label, &descriptor.q, partner.as_ref())?,
                    label,
                    multiplicity: b.multiplicity,
                    dirac: b.dirac.clone(),
                    twist: b.twist.clone(),
                });
            }
            Ok(IsotypicProfile::new(Some(descriptor.target), descriptor.q.clone(), blocks))
        }
    }
}

/// `deform_profile(deform_profile(p, e), e⁻¹) = p`, field by field.
pub fn round_trip(p: &IsotypicProfile, e: &ProfileEquivalence) -> Result<Report, TripleError> {
    let there = deform_profile(p, e)?;
    let back = deform_profile(&there, &e.inverse())?;
    let mut expected = p.clone();
    expected.canonicalize();
    let mut report = Report::new();
    report.push("block count", back.blocks.len() == expected.blocks.len(), None);
    let fields: [(&str, fn(&ProfileBlock, &ProfileBlock) -> bool); 6] = [
        ("labels", |a, b| a.label == b.label),
        ("irrep dimensions", |a, b| a.irrep_dim == b.irrep_dim),
        ("multiplicities", |a, b| a.multiplicity == b.multiplicity),
        ("Dirac blocks", |a, b| a.dirac == b.dirac),
        ("twist blocks", |a, b| a.twist == b.twist),
        ("F blocks", |a, b| a.woronowicz == b.woronowicz),
    ];
    for (name, same) in fields {
        let ok = back.blocks.len() == expected.blocks.len() && back.blocks.iter().zip(&expected.blocks).all(|(a, b)| same(a, b));
        report.push(name, ok, None);
    }
    report.push("whole profile", back == expected, None);
    Ok(report)
}

/// Blockwise invariants of a deformation: multiplicities kept, eigenvalue
/// set kept, quantum dimensions equal as exact rationals, and `Tr F_{φ(x)}`
/// equal to the quantum dimension wherever the `F`-block is a matrix.
pub fn check_deformation(p: &IsotypicProfile, deformed: &IsotypicProfile, e: &ProfileEquivalence) -> Result<Report, TripleError> {
    let mut report = Report::new();
    let mut w_src: Vec<(String, usize)> = p.blocks.iter().map(|b| (format!("{:?}", b.dirac), b.multiplicity)).collect();
    let mut w_dst: Vec<(String, usize)> = deformed.blocks.iter().map(|b| (format!("{:?}", b.dirac), b.multiplicity)).collect();
    w_src.sort();
    w_dst.sort();
    report.push("multiplicity spaces and Dirac blocks unchanged", w_src == w_dst, None);
    let (s, t) = (spectrum_table(p), spectrum_table(deformed));
    report.push("eigenvalue set unchanged", s.eigenvalues_f64() == t.eigenvalues_f64(), None);
    if e.is_dimension_preserving() {
        report.push("total dimension unchanged", p.total_dim() == deformed.total_dim(), Some(format!("{} vs {}", p.total_dim(), deformed.total_dim())));
    }
    if let ProfileEquivalence::Free { descriptor, .. } = e {
        let mut bad = Vec::new();
        for b in &p.blocks {
            let BlockLabel::Irrep(x) = &b.label else { continue };
            let y = descriptor.map_label(x)?;
            let dx = descriptor.source.dim_quantum(x, &descriptor.q)?;
            let dy = descriptor.target.dim_quantum(&y, &descriptor.q)?;
            if dx != dy {
                bad.push(format!("{x}: {} vs {}", fmt_rat(&dx), fmt_rat(&dy)));
            }
            let fb = deformed.blocks.iter().find(|d| d.label == BlockLabel::Irrep(y)).map(|d| &d.woronowicz);
            let traced = match fb {
                Some(WoronowiczBlock::Exact(m)) => m.trace() == dy.abs(),
                Some(f @ WoronowiczBlock::Float(_)) => (f.trace() - rat_to_f64(&dy.abs())).abs() <= MERGE_TOL * f.trace(),
                Some(WoronowiczBlock::QuantumDimension(d)) => *d == dy.abs(),
                None => false,
            };
            if !traced {
                bad.push(format!("Tr F_{y} ≠ |dim_q {y}|"));
            }
        }
        report.push("quantum dimensions invariant blockwise", bad.is_empty(), (!bad.is_empty()).then(|| bad.join("; ")));
    }
    Ok(report)
}

/// An eigenvalue, exact whenever `D_x` has rational spectrum.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectralValue {
    Exact(Rat),
    Float(f64),
}

impl SpectralValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            SpectralValue::Exact(r) => rat_to_f64(r),
            SpectralValue::Float(x) => *x,
        }
    }

    fn same(&self, other: &SpectralValue) -> bool {
        match (self, other) {
            (SpectralValue::Exact(a), SpectralValue::Exact(b)) => a == b,
            (a, b) => {
                let (x, y) = (a.to_f64(), b.to_f64());
                (x - y).abs() <= MERGE_TOL * x.abs().max(y.abs()).max(1.0)
            }
        }
    }
}

impl fmt::Display for SpectralValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralValue::Exact(r) => write!(f, "{}", fmt_rat(r)),
            SpectralValue::Float(x) => write!(f, "{x:.16e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub eigenvalue: SpectralValue,
    pub multiplicity: u128,
    pub labels: Vec<BlockLabel>,
}

/// Eigenvalues in strictly increasing order with multiplicities.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SpectrumTable {
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumTable {
    pub fn eigenvalues_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.eigenvalue.to_f64()).collect()
    }

    pub fn multiplicities(&self) -> Vec<u128> {
        self.entries.iter().map(|e| e.multiplicity).collect()
    }

    /// Exact `(eigenvalue, multiplicity)` pairs, if every eigenvalue is exact.
    pub fn exact(&self) -> Option<Vec<(Rat, u128)>> {
        self.entries
            .iter()
            .map(|e| match &e.eigenvalue {
                SpectralValue::Exact(r) => Some((r.clone(), e.multiplicity)),
                SpectralValue::Float(_) => None,
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    json!({
                        "eigenvalue": e.eigenvalue.to_string(),
                        "multiplicity": e.multiplicity.to_string(),
                        "labels": e.labels.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

fn block_eigenvalues(b: &ProfileBlock) -> Vec<(SpectralValue, usize)> {
    let w = b.multiplicity;
    if let Some(ex) = exact_rational_spectrum(&b.dirac, &Matrix::identity(w)) {
        return ex.into_iter().map(|(r, m)| (SpectralValue::Exact(r), m)).collect();
    }
    let mut out: Vec<(SpectralValue, usize)> = Vec::new();
    for x in hermitian_eigenvalues(&b.dirac.to_complex()) {
        let v = SpectralValue::Float(x);
        match out.iter_mut().find(|(y, _)| y.same(&v)) {
            Some((_, m)) => *m += 1,
            None => out.push((v, 1)),
        }
    }
    out
}

/// Merged eigenvalue listing: each eigenvalue of `D_x` with multiplicity
/// `m` contributes `d_x·m`.
pub fn spectrum_table(p: &IsotypicProfile) -> SpectrumTable {
    let mut entries: Vec<SpectrumEntry> = Vec::new();
    for b in &p.blocks {
        for (v, m) in block_eigenvalues(b) {
            let mult = b.irrep_dim * m as u128;
            match entries.iter_mut().find(|e| e.eigenvalue.same(&v)) {
                Some(e) => {
                    e.multiplicity += mult;
                    if !e.labels.contains(&b.label) {
                        e.labels.push(b.label.clone());
                    }
                }
                None => entries.push(SpectrumEntry { eigenvalue: v, multiplicity: mult, labels: vec![b.label.clone()] }),
            }
        }
    }
    entries.sort_by(|a, b| a.eigenvalue.to_f64().total_cmp(&b.eigenvalue.to_f64()));
    for e in &mut entries {
        e.labels.sort();
    }
    SpectrumTable { entries }
}

/// Spectrum of a literal finite Dirac operator with respect to a Gram
/// matrix, in the same table form (no labels).
pub fn literal_spectrum<F: Field>(dirac: &Matrix<F>, gram: &Matrix<F>) -> Option<SpectrumTable> {
    let ex = exact_rational_spectrum(dirac, gram)?;
    Some(SpectrumTable {
        entries: ex.into_iter().map(|(r, m)| SpectrumEntry { eigenvalue: SpectralValue::Exact(r), multiplicity: m as u128, labels: Vec::new() }).collect(),
    })
}
