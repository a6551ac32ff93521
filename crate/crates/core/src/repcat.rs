//! Fusion rings of `SU_q(2)` and the free orthogonal quantum groups `A_o(F)`,
//! admissibility of the defining matrix `F`, and monoidal-equivalence
//! descriptors between them.

use crate::scalar::{fmt_rat, rat_to_f64, Rat};
use crate::surd::{Surd, SurdSum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Float tolerance for partner constraints that cannot be decided exactly.
pub const PARTNER_TOL: f64 = 1e-12;

/// Index bound used when a closure property can only be checked finitely.
pub const DEFAULT_CLOSURE_BOUND: u32 = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepcatError {
    #[error("labels belong to different fusion rings ({0} vs {1})")]
    FamilyMismatch(Family, Family),
    #[error("classical dimension parameter m = {0} must be at least 2")]
    DimensionParameter(u32),
    #[error("q must be nonzero")]
    ZeroQ,
    #[error("q = {0} lies outside [-1, 1]")]
    QOutOfRange(String),
    #[error("classical dimension of r_{0} overflows")]
    Overflow(u32),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("inadmissible matrix: {0}")]
    Inadmissible(String),
    #[error("partner rejected: {detail} (residual {residual:e})")]
    ConstraintViolated { residual: f64, residual_exact: Option<String>, detail: String },
    #[error("label set not closed under fusion: r_{0} ⊗ r_{1} contains r_{2}")]
    NotFusionClosed(u32, u32, u32),
    #[error("label set does not contain the trivial class")]
    MissingUnit,
    #[error("malformed matrix file: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    SuQ2,
    AoF,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::SuQ2 => write!(f, "SU_q(2)"),
            Family::AoF => write!(f, "A_o(F)"),
        }
    }
}

/// Irreducible class `r_k`; for `SU_q(2)` this is spin `k/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub family: Family,
    pub index: u32,
}

impl IrrepLabel {
    pub fn new(family: Family, index: u32) -> Self {
        IrrepLabel { family, index }
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r_{}", self.index)
    }
}

/// Free-orthogonal fusion ring with classical dimension parameter `m = dim F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FusionRing {
    pub family: Family,
    pub m: u32,
}

impl FusionRing {
    pub fn su_q2() -> Self {
        FusionRing { family: Family::SuQ2, m: 2 }
    }

    pub fn ao_f(m: u32) -> Self {
        FusionRing { family: Family::AoF, m }
    }

    pub fn label(&self, index: u32) -> IrrepLabel {
        IrrepLabel::new(self.family, index)
    }

    fn check(&self, x: &IrrepLabel) -> Result<(), RepcatError> {
        if x.family != self.family {
            return Err(RepcatError::FamilyMismatch(self.family, x.family));
        }
        Ok(())
    }

    /// `r_j ⊗ r_k = r_{|j−k|} ⊕ r_{|j−k|+2} ⊕ … ⊕ r_{j+k}`.
    pub fn fuse(&self, a: &IrrepLabel, b: &IrrepLabel) -> Result<Vec<IrrepLabel>, RepcatError> {
        self.check(a)?;
        self.check(b)?;
        Ok(fusion_indices(a.index, b.index).map(|k| self.label(k)).collect())
    }

    /// Classical dimension: `d_0 = 1`, `d_1 = m`, `d_{k+1} = m·d_k − d_{k−1}`.
    pub fn dim_classical(&self, x: &IrrepLabel) -> Result<u128, RepcatError> {
        self.check(x)?;
        classical_dim(self.m, x.index)
    }

    /// Quantum dimension `[k+1]_q`.
    pub fn dim_quantum(&self, x: &IrrepLabel, q: &Rat) -> Result<Rat, RepcatError> {
        self.check(x)?;
        quantum_dim(x.index, q)
    }

    pub fn conjugate(&self, x: &IrrepLabel) -> IrrepLabel {
        *x
    }
}

pub fn fusion_indices(j: u32, k: u32) -> impl Iterator<Item = u32> {
    (j.abs_diff(k)..=j + k).step_by(2)
}

pub fn classical_dim(m: u32, k: u32) -> Result<u128, RepcatError> {
    if m < 2 {
        return Err(RepcatError::DimensionParameter(m));
    }
    let m = m as u128;
    let (mut prev, mut cur) = (1u128, m);
    if k == 0 {
        return Ok(1);
    }
    for _ in 1..k {
        let next = m
            .checked_mul(cur)
            .and_then(|v| v.checked_sub(prev))
            .ok_or(RepcatError::Overflow(k))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `[k+1]_q = q^k + q^{k−2} + … + q^{−k}`.
pub fn quantum_dim(k: u32, q: &Rat) -> Result<Rat, RepcatError> {
    if q.is_zero() {
        return Err(RepcatError::ZeroQ);
    }
    let qinv = q.recip();
    let mut acc = Rat::zero();
    for i in 0..=k {
        let e = k as i64 - 2 * i as i64;
        let term = if e >= 0 {
            num_traits::pow(q.clone(), e as usize)
        } else {
            num_traits::pow(qinv.clone(), (-e) as usize)
        };
        acc += term;
    }
    Ok(acc)
}

pub fn check_q(q: &Rat) -> Result<(), RepcatError> {
    if q.is_zero() {
        return Err(RepcatError::ZeroQ);
    }
    if q.abs() > Rat::one() {
        return Err(RepcatError::QOutOfRange(fmt_rat(q)));
    }
    Ok(())
}

/// A real matrix-entry component: exact `±√r` or a float.
#[derive(Clone, Debug, PartialEq)]
pub enum RealValue {
    Exact(Surd),
    Float(f64),
}

impl RealValue {
    pub fn zero() -> Self {
        RealValue::Exact(Surd::zero())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealValue::Exact(s) => s.to_f64(),
            RealValue::Float(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RealValue::Exact(s) => s.is_zero(),
            RealValue::Float(x) => *x == 0.0,
        }
    }

    /// Exact square if available.
    pub fn square_exact(&self) -> Option<Rat> {
        match self {
            RealValue::Exact(s) => Some(s.square()),
            RealValue::Float(_) => None,
        }
    }
}

impl fmt::Display for RealValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealValue::Exact(s) => write!(f, "{s}"),
            RealValue::Float(x) => write!(f, "{x:.17e}"),
        }
    }
}

/// Defining matrix of `A_o(F)`, row-major complex entries.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalMatrixSpec {
    pub n: usize,
    pub entries: Vec<(RealValue, RealValue)>,
    /// Optional declared λ parameters (checked against the entries).
    pub lambda: Option<Vec<RealValue>>,
}

impl OrthogonalMatrixSpec {
    pub fn new(n: usize, entries: Vec<(RealValue, RealValue)>) -> Result<Self, RepcatError> {
        if entries.len() != n * n || n == 0 {
            return Err(RepcatError::NotSquare);
        }
        Ok(OrthogonalMatrixSpec { n, entries, lambda: None })
    }

    /// Real matrix with exact surd entries.
    pub fn real_exact(rows: Vec<Vec<Surd>>) -> Result<Self, RepcatError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(RepcatError::NotSquare);
        }
        let entries = rows
            .into_iter()
            .flatten()
            .map(|s| (RealValue::Exact(s), RealValue::zero()))
            .collect();
        Self::new(n, entries)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Surd::sqrt(Rat::one()) } else { Surd::zero() }).collect())
            .collect();
        Self::real_exact(rows).expect("square")
    }

    /// `F_q = [[0, |q|^{1/2}], [−sgn(q)|q|^{−1/2}, 0]]`.
    pub fn f_q(q: &Rat) -> Result<Self, RepcatError> {
        check_q(q)?;
        let a = q.abs();
        let low = Surd::sqrt(a.recip());
        let low = if q.is_positive() { low.neg() } else { low };
        Self::real_exact(vec![vec![Surd::zero(), Surd::sqrt(a)], vec![low, Surd::zero()]])
    }

    /// First fundamental-domain shape: `[[0, D, 0], [D⁻¹, 0, 0], [0, 0, 1]]`.
    pub fn symmetric_canonical(n: usize, lambda: &[RealValue]) -> Result<Self, RepcatError> {
        let k = lambda.len();
        if 2 * k > n {
            return Err(RepcatError::Inadmissible(format!("2k = {} exceeds n = {n}", 2 * k)));
        }
        let mut e = vec![(RealValue::zero(), RealValue::zero()); n * n];
        for (i, l) in lambda.iter().enumerate() {
            e[i * n + k + i].0 = l.clone();
            e[(k + i) * n + i].0 = reciprocal(l)?;
        }
        for i in 2 * k..n {
            e[i * n + i].0 = RealValue::Exact(Surd::sqrt(Rat::one()));
        }
        let mut f = Self::new(n, e)?;
        f.lambda = Some(lambda.to_vec());
        Ok(f)
    }

    /// Second fundamental-domain shape: `[[0, D], [−D⁻¹, 0]]`.
    pub fn antisymmetric_canonical(lambda: &[RealValue]) -> Result<Self, RepcatError> {
        let k = lambda.len();
        let n = 2 * k;
        let mut e = vec![(RealValue::zero(), RealValue::zero()); n * n];
        for (i, l) in lambda.iter().enumerate() {
            e[i * n + k + i].0 = l.clone();
            e[(k + i) * n + i].0 = negate(&reciprocal(l)?);
        }
        let mut f = Self::new(n, e)?;
        f.lambda = Some(lambda.to_vec());
        Ok(f)
    }

    fn entry(&self, r: usize, c: usize) -> &(RealValue, RealValue) {
        &self.entries[r * self.n + c]
    }

    fn is_exact(&self) -> bool {
        self.entries
            .iter()
            .all(|(a, b)| matches!(a, RealValue::Exact(_)) && matches!(b, RealValue::Exact(_)))
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |r, c| {
            let (a, b) = self.entry(r, c);
            Complex64::new(a.to_f64(), b.to_f64())
        })
    }

    /// `Tr(F*F) = Σ |F_ij|²`, exact when the entries are.
    pub fn trace_ff(&self) -> (f64, Option<Rat>) {
        let exact = self.entries.iter().try_fold(Rat::zero(), |acc, (a, b)| {
            Some(acc + a.square_exact()? + b.square_exact()?)
        });
        let float = match &exact {
            Some(r) => rat_to_f64(r),
            None => self.entries.iter().map(|(a, b)| a.to_f64().powi(2) + b.to_f64().powi(2)).sum(),
        };
        (float, exact)
    }

    /// `{"n": 3, "entries": [[re, im], …], "lambda": [..]}`, row-major. Values
    /// are exact when given as strings (`"1/2"`, `"-sqrt(3/2)"`) or integers,
    /// floats otherwise.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, RepcatError> {
        let bad = |m: &str| RepcatError::Parse(m.to_string());
        let n = v.get("n").and_then(serde_json::Value::as_u64).ok_or_else(|| bad("missing \"n\""))? as usize;
        let entries = v.get("entries").and_then(serde_json::Value::as_array).ok_or_else(|| bad("missing \"entries\""))?;
        if entries.len() != n * n {
            return Err(RepcatError::Parse(format!("{} entries for n = {n}", entries.len())));
        }
        let entries = entries
            .iter()
            .map(|e| match e.as_array().map(Vec::as_slice) {
                Some([re, im]) => Ok((real_value(re)?, real_value(im)?)),
                _ => Err(bad("entries are [re, im] pairs")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut f = Self::new(n, entries)?;
        if let Some(l) = v.get("lambda") {
            let l = l.as_array().ok_or_else(|| bad("\"lambda\" is a list"))?;
            f.lambda = Some(l.iter().map(real_value).collect::<Result<_, _>>()?);
        }
        Ok(f)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let val = |x: &RealValue| match x {
            RealValue::Exact(s) => serde_json::Value::String(s.to_string()),
            RealValue::Float(f) => serde_json::json!(f),
        };
        let mut out = serde_json::json!({
            "n": self.n,
            "entries": self.entries.iter().map(|(a, b)| serde_json::json!([val(a), val(b)])).collect::<Vec<_>>(),
        });
        if let Some(l) = &self.lambda {
            out["lambda"] = l.iter().map(val).collect();
        }
        out
    }
}

fn real_value(v: &serde_json::Value) -> Result<RealValue, RepcatError> {
    match v {
        serde_json::Value::String(s) => Surd::parse(s).map(RealValue::Exact).ok_or_else(|| RepcatError::Parse(format!("bad value {s:?}"))),
        serde_json::Value::Number(x) => match x.as_i64() {
            Some(i) => Ok(RealValue::Exact(Surd::from_rat(&Rat::from_integer(i.into())))),
            None => x.as_f64().map(RealValue::Float).ok_or_else(|| RepcatError::Parse(format!("bad number {x}"))),
        },
        other => Err(RepcatError::Parse(format!("expected a number or string, got {other}"))),
    }
}

fn reciprocal(v: &RealValue) -> Result<RealValue, RepcatError> {
    match v {
        RealValue::Exact(s) if s.is_zero() => Err(RepcatError::Singular),
        RealValue::Exact(s) => {
            let r = Surd { negative: s.negative, radicand: s.radicand.recip() };
            Ok(RealValue::Exact(r))
        }
        RealValue::Float(x) if *x == 0.0 => Err(RepcatError::Singular),
        RealValue::Float(x) => Ok(RealValue::Float(1.0 / x)),
    }
}

fn negate(v: &RealValue) -> RealValue {
    match v {
        RealValue::Exact(s) => RealValue::Exact(s.neg()),
        RealValue::Float(x) => RealValue::Float(-x),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum CanonicalShape {
    /// `[[0, D, 0], [D⁻¹, 0, 0], [0, 0, 1_{n−2k}]]`, `FF̄ = +1`
    Symmetric { k: usize },
    /// `[[0, D], [−D⁻¹, 0]]`, `FF̄ = −1`
    Antisymmetric,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForm {
    pub shape: CanonicalShape,
    pub lambda: Vec<RealValue>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport {
    pub n: usize,
    pub admissible: bool,
    /// `FF̄ = c·1`
    pub c: f64,
    pub c_exact: Option<Rat>,
    pub exact: bool,
    pub canonical: Option<CanonicalForm>,
    pub trace_ff: f64,
    pub trace_ff_exact: Option<Rat>,
    pub reason: Option<String>,
}

/// Product `x · conj(y)` of complex surd entries as (re, im) sums.
fn mul_conj(x: &(RealValue, RealValue), y: &(RealValue, RealValue)) -> Option<(SurdSum, SurdSum)> {
    let ex = |v: &RealValue| match v {
        RealValue::Exact(s) => Some(s.clone()),
        RealValue::Float(_) => None,
    };
    let (a, b) = (ex(&x.0)?, ex(&x.1)?);
    let (c, d) = (ex(&y.0)?, ex(&y.1)?);
    // (a + ib)(c − id) = (ac + bd) + i(bc − ad)
    let mut re = SurdSum::zero();
    re.add_surd(&a.mul(&c));
    re.add_surd(&b.mul(&d));
    let mut im = SurdSum::zero();
    im.add_surd(&b.mul(&c));
    im.add_surd(&a.mul(&d).neg());
    Some((re, im))
}

/// Check `FF̄ = c·1` with `c` real and detect the canonical shape.
pub fn check_orthogonal_matrix(f: &OrthogonalMatrixSpec) -> Result<AdmissibilityReport, RepcatError> {
    let n = f.n;
    let fc = f.to_complex();
    let scale = fc.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    if fc.clone().lu().determinant().norm() <= 1e-12 * scale.powi(n as i32) {
        return Err(RepcatError::Singular);
    }
    let (trace_ff, trace_ff_exact) = f.trace_ff();
    let mut report = AdmissibilityReport {
        n,
        admissible: false,
        c: f64::NAN,
        c_exact: None,
        exact: f.is_exact(),
        canonical: None,
        trace_ff,
        trace_ff_exact,
        reason: None,
    };
    if report.exact {
        let mut diag: Option<SurdSum> = None;
        for r in 0..n {
            for c in 0..n {
                let mut re = SurdSum::zero();
                let mut im = SurdSum::zero();
                for k in 0..n {
                    let (a, b) = mul_conj(f.entry(r, k), f.entry(k, c)).expect("exact entries");
                    re.add(&a);
                    im.add(&b);
                }
                if !im.is_zero() {
                    report.reason = Some(format!("FF̄ has a non-real entry at ({r}, {c})"));
                    return Ok(report);
                }
                if r != c {
                    if !re.is_zero() {
                        report.reason = Some(format!("FF̄ is not scalar: off-diagonal entry at ({r}, {c})"));
                        return Ok(report);
                    }
                } else if let Some(d) = &diag {
                    let mut diff = re.clone();
                    diff.add(&d.neg());
                    if !diff.is_zero() {
                        report.reason = Some(format!("FF̄ is not scalar: diagonal differs at {r}"));
                        return Ok(report);
                    }
                } else {
                    diag = Some(re);
                }
            }
        }
        let d = diag.expect("n ≥ 1");
        report.c = d.to_f64();
        report.c_exact = d.as_rat();
    } else {
        let g = &fc * fc.map(|z| z.conj());
        let c = g[(0, 0)];
        let tol = PARTNER_TOL * scale * scale;
        let bad = (0..n).flat_map(|r| (0..n).map(move |k| (r, k))).find(|&(r, k)| {
            let want = if r == k { c } else { Complex64::new(0.0, 0.0) };
            (g[(r, k)] - want).norm() > tol
        });
        if let Some((r, k)) = bad {
            report.reason = Some(format!("FF̄ is not scalar at ({r}, {k})"));
            return Ok(report);
        }
        if c.im.abs() > tol {
            report.reason = Some("FF̄ is a non-real scalar".into());
            return Ok(report);
        }
        report.c = c.re;
    }
    report.admissible = true;
    report.canonical = detect_canonical(f);
    Ok(report)
}

fn value_eq(a: &RealValue, b: &RealValue) -> bool {
    match (a, b) {
        (RealValue::Exact(x), RealValue::Exact(y)) => x == y || (x.is_zero() && y.is_zero()),
        _ => (a.to_f64() - b.to_f64()).abs() <= PARTNER_TOL * (1.0 + a.to_f64().abs()),
    }
}

fn value_le(a: &RealValue, b: &RealValue, strict: bool) -> bool {
    match (a, b) {
        (RealValue::Exact(x), RealValue::Exact(y)) if !x.negative && !y.negative => {
            if strict {
                x.radicand < y.radicand
            } else {
                x.radicand <= y.radicand
            }
        }
        _ => {
            let (x, y) = (a.to_f64(), b.to_f64());
            if strict {
                x < y - PARTNER_TOL
            } else {
                x <= y + PARTNER_TOL
            }
        }
    }
}

fn positive(v: &RealValue) -> bool {
    match v {
        RealValue::Exact(s) => !s.negative && !s.is_zero(),
        RealValue::Float(x) => *x > 0.0,
    }
}

fn detect_canonical(f: &OrthogonalMatrixSpec) -> Option<CanonicalForm> {
    let n = f.n;
    let one = RealValue::Exact(Surd::sqrt(Rat::one()));
    if f.entries.iter().any(|(_, im)| !im.is_zero() && !value_eq(im, &RealValue::zero())) {
        return None;
    }
    let re = |r: usize, c: usize| &f.entry(r, c).0;
    let matches_shape = |k: usize, antisym: bool| -> Option<Vec<RealValue>> {
        let mut lambda = Vec::with_capacity(k);
        for i in 0..k {
            let l = re(i, k + i).clone();
            if !positive(&l) {
                return None;
            }
            let inv = reciprocal(&l).ok()?;
            let want = if antisym { negate(&inv) } else { inv };
            if !value_eq(re(k + i, i), &want) {
                return None;
            }
            lambda.push(l);
        }
        for r in 0..n {
            for c in 0..n {
                let in_block = (r < k && c == k + r) || (r >= k && r < 2 * k && c + k == r);
                let diag_tail = r >= 2 * k && r == c;
                if in_block {
                    continue;
                }
                let want = if diag_tail && !antisym { &one } else { &RealValue::Exact(Surd::zero()) };
                if !value_eq(re(r, c), want) {
                    return None;
                }
            }
        }
        let ordered = lambda.windows(2).all(|w| value_le(&w[0], &w[1], false));
        let bounded = lambda.last().is_none_or(|l| value_le(l, &one, !antisym));
        (ordered && bounded).then_some(lambda)
    };
    if n.is_multiple_of(2) {
        if let Some(lambda) = matches_shape(n / 2, true) {
            return Some(CanonicalForm { shape: CanonicalShape::Antisymmetric, lambda });
        }
    }
    (0..=n / 2).find_map(|k| {
        matches_shape(k, false).map(|lambda| CanonicalForm { shape: CanonicalShape::Symmetric { k }, lambda })
    })
}

/// Monoidal equivalence between two free-orthogonal fusion categories,
/// index-preserving on labels, possibly restricted to a subcategory.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceDescriptor {
    pub source: FusionRing,
    pub target: FusionRing,
    pub q: Rat,
    pub labels: LabelSet,
    pub source_name: String,
    pub target_name: String,
    pub dimension_preserving: bool,
    /// `Tr(F*F)` of the target matrix (exact when available).
    pub trace_ff: Option<Rat>,
    pub trace_ff_float: f64,
}

impl EquivalenceDescriptor {
    pub fn identity(ring: FusionRing, q: Rat) -> Self {
        let name = ring.family.to_string();
        let tr = quantum_dim(1, &q).ok().map(|r| r.abs());
        EquivalenceDescriptor {
            source: ring,
            target: ring,
            q,
            labels: LabelSet::all(),
            source_name: name.clone(),
            target_name: name,
            dimension_preserving: true,
            trace_ff_float: tr.as_ref().map_or(f64::NAN, rat_to_f64),
            trace_ff: tr,
        }
    }

    /// `φ(r_k) = r_k` on the target ring.
    pub fn map_label(&self, x: &IrrepLabel) -> Result<IrrepLabel, RepcatError> {
        if x.family != self.source.family {
            return Err(RepcatError::FamilyMismatch(self.source.family, x.family));
        }
        Ok(self.target.label(x.index))
    }

    pub fn in_domain(&self, x: &IrrepLabel) -> bool {
        x.family == self.source.family && self.labels.contains(x.index)
    }

    pub fn inverse(&self) -> Self {
        EquivalenceDescriptor {
            source: self.target,
            target: self.source,
            q: self.q.clone(),
            labels: self.labels.clone(),
            source_name: self.target_name.clone(),
            target_name: self.source_name.clone(),
            dimension_preserving: self.dimension_preserving,
            trace_ff: quantum_dim(1, &self.q).ok().map(|r| r.abs()),
            trace_ff_float: quantum_dim(1, &self.q).map_or(f64::NAN, |r| rat_to_f64(&r.abs())),
        }
    }
}

/// Accept `F` as a monoidal partner of `SU_q(2)` iff the λ-constraint holds.
pub fn validate_partner(q: &Rat, f: &OrthogonalMatrixSpec) -> Result<EquivalenceDescriptor, RepcatError> {
    check_q(q)?;
    let report = check_orthogonal_matrix(f)?;
    if !report.admissible {
        return Err(RepcatError::Inadmissible(report.reason.unwrap_or_default()));
    }
    let n = f.n;
    let target = quantum_dim(1, q)?.abs();
    let target_f = rat_to_f64(&target);
    if let (Some(declared), Some(canon)) = (&f.lambda, &report.canonical) {
        let same = declared.len() == canon.lambda.len()
            && declared.iter().zip(&canon.lambda).all(|(a, b)| value_eq(a, b));
        if !same {
            return Err(RepcatError::Inadmissible("declared λ do not match the matrix entries".into()));
        }
    }
    let reject = |residual: f64, exact: Option<Rat>, detail: String| RepcatError::ConstraintViolated {
        residual,
        residual_exact: exact.map(|r| fmt_rat(&r)),
        detail,
    };
    // F_q has FF̄ = −sgn(q), so the trace constraint forces the same sign of c
    let want_c = if q.is_positive() { -1.0 } else { 1.0 };
    if (report.c.signum() - want_c).abs() > 0.5 {
        return Err(reject(
            (report.c - want_c).abs(),
            None,
            format!("FF̄ = {}·1 has the wrong sign for q = {}", report.c, fmt_rat(q)),
        ));
    }
    if let Some(canon) = &report.canonical {
        match (&canon.shape, q.is_positive()) {
            (CanonicalShape::Antisymmetric, true) | (CanonicalShape::Symmetric { .. }, false) => {}
            _ => return Err(reject(1.0, None, "canonical shape does not match the sign of q".into())),
        }
    }
    // Tr(F*F) = Σ(λ² + λ⁻²) + (n − 2k) for canonical F, so this is the λ-constraint
    let (tr_f, tr_exact) = (report.trace_ff, report.trace_ff_exact.clone());
    let (accepted, residual, residual_exact) = match &tr_exact {
        Some(tr) => {
            let r = (tr - &target).abs();
            (r.is_zero(), rat_to_f64(&r), Some(r))
        }
        None => {
            let r = (tr_f - target_f).abs();
            (r <= PARTNER_TOL * (1.0 + target_f), r, None)
        }
    };
    if !accepted {
        return Err(reject(
            residual,
            residual_exact,
            format!("Σ(λ² + λ⁻²) + n − 2k = {tr_f} but |q + 1/q| = {}", fmt_rat(&target)),
        ));
    }
    if n < 2 || (n as f64) > target_f + PARTNER_TOL {
        return Err(reject(
            (n as f64 - target_f).abs(),
            None,
            format!("n = {n} violates 2 ≤ n ≤ |q + 1/q| = {}", fmt_rat(&target)),
        ));
    }
    let full = n == 2;
    Ok(EquivalenceDescriptor {
        source: FusionRing::su_q2(),
        target: FusionRing::ao_f(n as u32),
        q: q.clone(),
        labels: LabelSet::all(),
        source_name: "SU_q(2)".into(),
        target_name: "A_o(F)".into(),
        dimension_preserving: full,
        trace_ff: tr_exact,
        trace_ff_float: tr_f,
    })
}

/// Label subset `{k : k mod modulus ∈ residues} ∪ extra`; `modulus = 0`
/// means the periodic part is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelSet {
    pub modulus: u32,
    pub residues: BTreeSet<u32>,
    pub extra: BTreeSet<u32>,
}

impl LabelSet {
    pub fn all() -> Self {
        LabelSet { modulus: 1, residues: [0].into(), extra: BTreeSet::new() }
    }

    pub fn even() -> Self {
        LabelSet { modulus: 2, residues: [0].into(), extra: BTreeSet::new() }
    }

    pub fn finite(labels: impl IntoIterator<Item = u32>) -> Self {
        LabelSet { modulus: 0, residues: BTreeSet::new(), extra: labels.into_iter().collect() }
    }

    pub fn periodic(modulus: u32, residues: impl IntoIterator<Item = u32>) -> Self {
        LabelSet { modulus, residues: residues.into_iter().collect(), extra: BTreeSet::new() }
    }

    pub fn with_extra(mut self, labels: impl IntoIterator<Item = u32>) -> Self {
        self.extra.extend(labels);
        self
    }

    pub fn contains(&self, k: u32) -> bool {
        (self.modulus > 0 && self.residues.contains(&(k % self.modulus))) || self.extra.contains(&k)
    }

    pub fn is_all(&self) -> bool {
        (0..self.modulus.max(1)).all(|k| self.contains(k)) && self.modulus > 0
    }

    pub fn is_even(&self) -> bool {
        !self.is_all()
            && (0..2 * self.modulus.max(1) + self.extra.iter().max().copied().unwrap_or(0) + 2)
                .all(|k| self.contains(k) == (k % 2 == 0))
    }

    /// Members up to and including `bound`.
    pub fn members(&self, bound: u32) -> Vec<u32> {
        (0..=bound).filter(|&k| self.contains(k)).collect()
    }

    pub fn intersect(&self, other: &LabelSet, bound: u32) -> LabelSet {
        if self.is_all() {
            return other.clone();
        }
        if other.is_all() {
            return self.clone();
        }
        if self == other {
            return self.clone();
        }
        LabelSet::finite(self.members(bound).into_iter().filter(|&k| other.contains(k)))
    }

    /// Check unit and fusion closure for all pairs of members `≤ bound`.
    pub fn check_fusion_closed(&self, bound: u32) -> Result<(), RepcatError> {
        if !self.contains(0) {
            return Err(RepcatError::MissingUnit);
        }
        let members = self.members(bound);
        for &a in &members {
            for &b in &members {
                if let Some(c) = fusion_indices(a, b).find(|&c| !self.contains(c)) {
                    return Err(RepcatError::NotFusionClosed(a, b, c));
                }
            }
        }
        // conjugation is the identity on labels
        Ok(())
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_all() {
            return write!(f, "{{r_k : k ≥ 0}}");
        }
        if self.is_even() {
            return write!(f, "{{r_2k : k ≥ 0}}");
        }
        let mut parts = Vec::new();
        if self.modulus > 0 && !self.residues.is_empty() {
            let rs: Vec<String> = self.residues.iter().map(u32::to_string).collect();
            parts.push(format!("{{r_k : k mod {} ∈ {{{}}}}}", self.modulus, rs.join(",")));
        }
        if !self.extra.is_empty() {
            let xs: Vec<String> = self.extra.iter().map(|k| format!("r_{k}")).collect();
            parts.push(format!("{{{}}}", xs.join(",")));
        }
        write!(f, "{}", parts.join(" ∪ "))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Subcategory {
    pub ring: FusionRing,
    pub labels: LabelSet,
}

impl Subcategory {
    pub fn new(ring: FusionRing, labels: LabelSet) -> Self {
        Subcategory { ring, labels }
    }

    pub fn full(ring: FusionRing) -> Self {
        Self::new(ring, LabelSet::all())
    }
}

/// The subcategory `{r_2k}` (representations of `SO_q(3)` on the `SU_q(2)` side).
pub fn even_subcategory(ring: &FusionRing) -> Subcategory {
    let s = Subcategory::new(*ring, LabelSet::even());
    debug_assert!(s.labels.check_fusion_closed(DEFAULT_CLOSURE_BOUND).is_ok());
    s
}

fn subgroup_name(family_name: &str) -> String {
    match family_name {
        "SU_q(2)" => "SO_q(3)".into(),
        "A_o(F)" => "I(F)".into(),
        other => format!("{other}|even"),
    }
}

/// Restrict an equivalence to a fusion-closed subcategory of its source.
pub fn restrict_equivalence(
    e: &EquivalenceDescriptor,
    s: &Subcategory,
) -> Result<EquivalenceDescriptor, RepcatError> {
    if s.ring.family != e.source.family {
        return Err(RepcatError::FamilyMismatch(e.source.family, s.ring.family));
    }
    s.labels.check_fusion_closed(DEFAULT_CLOSURE_BOUND)?;
    let labels = e.labels.intersect(&s.labels, DEFAULT_CLOSURE_BOUND);
    let mut out = e.clone();
    if labels.is_all() {
        return Ok(out);
    }
    if labels.is_even() && e.labels.is_all() {
        out.source_name = subgroup_name(&e.source_name);
        out.target_name = subgroup_name(&e.target_name);
    } else if labels != e.labels {
        out.source_name = format!("{}|{}", e.source_name, labels);
        out.target_name = format!("{}|{}", e.target_name, labels);
    }
    out.labels = labels;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn fusion_examples() {
        let su = FusionRing::su_q2();
        let r = |k| su.label(k);
        assert_eq!(su.fuse(&r(0), &r(5)).unwrap(), vec![r(5)]);
        assert_eq!(su.fuse(&r(1), &r(1)).unwrap(), vec![r(0), r(2)]);
        let ao = FusionRing::ao_f(3);
        assert!(su.fuse(&r(1), &ao.label(1)).is_err());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(FusionRing::su_q2().dim_classical(&FusionRing::su_q2().label(7)).unwrap(), 8);
        let ao = FusionRing::ao_f(3);
        assert_eq!(ao.dim_classical(&ao.label(2)).unwrap(), 8);
        assert_eq!(ao.dim_classical(&ao.label(0)).unwrap(), 1);
        assert!(classical_dim(1, 3).is_err());
        assert_eq!(quantum_dim(1, &rat(1, 2)).unwrap(), rat(5, 2));
        assert_eq!(quantum_dim(2, &rat(1, 2)).unwrap(), rat(21, 4));
        assert_eq!(quantum_dim(0, &rat(-1, 3)).unwrap(), rat(1, 1));
        assert!(quantum_dim(1, &rat(0, 1)).is_err());
    }

    #[test]
    fn f_q_is_admissible_with_c_minus_one() {
        let f = OrthogonalMatrixSpec::f_q(&rat(1, 2)).unwrap();
        let rep = check_orthogonal_matrix(&f).unwrap();
        assert!(rep.admissible);
        assert_eq!(rep.c_exact, Some(rat(-1, 1)));
        assert_eq!(rep.canonical.unwrap().shape, CanonicalShape::Antisymmetric);
        let e = validate_partner(&rat(1, 2), &f).unwrap();
        assert!(e.dimension_preserving);
    }

    #[test]
    fn non_scalar_is_inadmissible() {
        let one = || Surd::sqrt(rat(1, 1));
        let f = OrthogonalMatrixSpec::real_exact(vec![vec![one(), one()], vec![Surd::zero(), one()]]).unwrap();
        assert!(!check_orthogonal_matrix(&f).unwrap().admissible);
        let id = OrthogonalMatrixSpec::identity(3);
        let rep = check_orthogonal_matrix(&id).unwrap();
        assert!(rep.admissible && rep.c_exact == Some(rat(1, 1)));
    }

    #[test]
    fn four_dim_partner_with_unit_lambda_rejected() {
        let l = RealValue::Exact(Surd::sqrt(rat(1, 1)));
        let f = OrthogonalMatrixSpec::antisymmetric_canonical(&[l.clone(), l]).unwrap();
        match validate_partner(&rat(1, 2), &f) {
            Err(RepcatError::ConstraintViolated { residual_exact, .. }) => {
                assert_eq!(residual_exact.as_deref(), Some("3/2"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn restriction_examples() {
        let e = validate_partner(&rat(1, 2), &OrthogonalMatrixSpec::f_q(&rat(1, 2)).unwrap()).unwrap();
        let full = restrict_equivalence(&e, &Subcategory::full(FusionRing::su_q2())).unwrap();
        assert_eq!(full, e);
        let even = restrict_equivalence(&e, &even_subcategory(&FusionRing::su_q2())).unwrap();
        assert_eq!((even.source_name.as_str(), even.target_name.as_str()), ("SO_q(3)", "I(F)"));
        let bad = Subcategory::new(FusionRing::su_q2(), LabelSet::finite([0, 1]));
        assert_eq!(restrict_equivalence(&e, &bad), Err(RepcatError::NotFusionClosed(1, 1, 2)));
        let odd = LabelSet::periodic(2, [1]).with_extra([0]);
        assert!(odd.check_fusion_closed(20).is_err());
    }
}
