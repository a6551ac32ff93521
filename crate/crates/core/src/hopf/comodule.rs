//! Comodule algebras, twisted (smash) products, cotensor products.

use super::algebra::{basis_vec, canonical, canonical2, eval, FiniteHopfAlgebra, StarAlgebra};
use super::cocycle::{twist_hopf, uv_functionals, DualCocycle, Irrep};
use super::{first_failure, HopfError, Scalar, Terms, Terms2};
use crate::linalg::{Matrix, SparseEchelon};
use crate::report::Report;
use crate::scalar::Field;
use std::collections::BTreeMap;

/// Which tensor leg carries the Hopf algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `A → H ⊗ A`
    Left,
    /// `A → A ⊗ H`
    Right,
}

/// A *-algebra with a coaction. Entries `(x, y, c)` of the coaction tensor
/// denote `x ⊗ y`, so for `Side::Right` `x` indexes `A` and `y` indexes `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComoduleAlgebra {
    pub algebra: StarAlgebra,
    pub coaction: Vec<Terms2>,
    pub side: Side,
}

impl ComoduleAlgebra {
    /// `H` coacting on itself on the right by `Δ`.
    pub fn regular(h: &FiniteHopfAlgebra) -> Self {
        ComoduleAlgebra {
            algebra: h.algebra().clone(),
            coaction: (0..h.dim()).map(|i| h.coproduct(i).clone()).collect(),
            side: Side::Right,
        }
    }
}

/// Star structure used when twisting a right comodule algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarConvention {
    /// `(a#1)* = a₀* V(a₁*)`
    VCorrected,
    /// `(a#1)* = a₀ V(a₁*)`, missing the inner star; kept as a regression case
    NoInnerStar,
    /// `(a#1)* = a*`, no correction at all
    Untwisted,
}

fn coact(coaction: &[Terms2], x: &Terms) -> Terms2 {
    let mut out = Vec::new();
    for (i, a) in x {
        out.extend(coaction[*i].iter().map(|(p, q, c)| (*p, *q, a.clone() * c.clone())));
    }
    canonical2(out)
}

fn mul2(first: &StarAlgebra, second: &StarAlgebra, x: &Terms2, y: &Terms2) -> Terms2 {
    let mut out = Vec::new();
    for (a, b, c) in x {
        for (p, q, d) in y {
            let cd = c.clone() * d.clone();
            for (u, e) in first.basis_product(*a, *p) {
                for (v, f) in second.basis_product(*b, *q) {
                    out.push((*u, *v, cd.clone() * e.clone() * f.clone()));
                }
            }
        }
    }
    canonical2(out)
}

fn star2(first: &StarAlgebra, second: &StarAlgebra, x: &Terms2) -> Terms2 {
    let mut out = Vec::new();
    for (a, b, c) in x {
        let cc = c.conj();
        for (u, e) in first.basis_star(*a) {
            for (v, f) in second.basis_star(*b) {
                out.push((*u, *v, cc.clone() * e.clone() * f.clone()));
            }
        }
    }
    canonical2(out)
}

fn unit2(first: &StarAlgebra, second: &StarAlgebra) -> Terms2 {
    let mut out = Vec::new();
    for (a, c) in first.unit() {
        for (b, d) in second.unit() {
            out.push((*a, *b, c.clone() * d.clone()));
        }
    }
    canonical2(out)
}

type Terms3 = Vec<((usize, usize, usize), Scalar)>;

fn canonical3(t: Vec<((usize, usize, usize), Scalar)>) -> Terms3 {
    let mut m: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for (k, c) in t {
        let e = m.entry(k).or_default();
        *e = e.clone() + c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Coaction axioms: coassociativity, counit, multiplicativity, unit, and
/// compatibility with the stars of `A` and `H`.
pub fn check_coaction(h: &FiniteHopfAlgebra, alg: &StarAlgebra, coaction: &[Terms2], side: Side) -> Report {
    let n = alg.dim();
    let mut r = Report::new();
    if coaction.len() != n {
        r.fail("shape", format!("coaction has {} entries for dimension {n}", coaction.len()));
        return r;
    }
    let halg = h.algebra();
    let (first, second) = match side {
        Side::Right => (alg, halg),
        Side::Left => (halg, alg),
    };
    let label = |i: usize| alg.labels()[i].clone();
    let first_bad = |f: &dyn Fn(usize) -> bool| (0..n).find(|&i| !f(i)).map_or(Ok(()), |i| Err(label(i)));
    r.record(
        "coaction coassociative",
        first_bad(&|i| {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            match side {
                Side::Right => {
                    for (a0, a1, c) in &coaction[i] {
                        for (a00, a01, d) in &coaction[*a0] {
                            lhs.push(((*a00, *a01, *a1), c.clone() * d.clone()));
                        }
                        for (x, y, d) in h.coproduct(*a1) {
                            rhs.push(((*a0, *x, *y), c.clone() * d.clone()));
                        }
                    }
                }
                Side::Left => {
                    for (g, b0, c) in &coaction[i] {
                        for (x, y, d) in h.coproduct(*g) {
                            lhs.push(((*x, *y, *b0), c.clone() * d.clone()));
                        }
                        for (g2, b00, d) in &coaction[*b0] {
                            rhs.push(((*g, *g2, *b00), c.clone() * d.clone()));
                        }
                    }
                }
            }
            canonical3(lhs) == canonical3(rhs)
        }),
    );
    r.record(
        "coaction counit",
        first_bad(&|i| {
            let t: Terms = coaction[i]
                .iter()
                .map(|(x, y, c)| match side {
                    Side::Right => (*x, c.clone() * h.counit()[*y].clone()),
                    Side::Left => (*y, c.clone() * h.counit()[*x].clone()),
                })
                .collect();
            canonical(t) == vec![(i, Scalar::one())]
        }),
    );
    let mut mult = Ok(());
    'm: for i in 0..n {
        for j in 0..n {
            let lhs = coact(coaction, alg.basis_product(i, j));
            let rhs = mul2(first, second, &coaction[i], &coaction[j]);
            if lhs != rhs {
                mult = Err(format!("({}, {})", label(i), label(j)));
                break 'm;
            }
        }
    }
    r.record("coaction multiplicative", mult);
    let unital = coact(coaction, alg.unit()) == unit2(first, second);
    r.record("coaction unital", if unital { Ok(()) } else { Err("unit".into()) });
    r.record(
        "coaction is a *-map",
        first_bad(&|i| coact(coaction, alg.basis_star(i)) == star2(first, second, &coaction[i])),
    );
    r
}

/// Algebra axioms plus coaction axioms.
pub fn check_comodule_algebra(h: &FiniteHopfAlgebra, a: &ComoduleAlgebra) -> Report {
    let mut r = a.algebra.check();
    r.merge("coaction", check_coaction(h, &a.algebra, &a.coaction, a.side));
    r
}

/// `A #_{σ⁻¹} ℂ` without verification: product `a₀a′₀ σ⁻¹(a₁, a′₁)`, star per
/// `convention`, coaction unchanged.
pub fn twist_comodule_algebra_with(
    h: &FiniteHopfAlgebra,
    a: &ComoduleAlgebra,
    sigma: &DualCocycle,
    convention: StarConvention,
) -> Result<ComoduleAlgebra, HopfError> {
    if a.side != Side::Right {
        return Err(HopfError::Shape("twisting needs a right comodule algebra".into()));
    }
    let n = a.algebra.dim();
    let alg = &a.algebra;
    let halg = h.algebra();
    let uv = uv_functionals(h, sigma)?;
    let mut product = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut t = Vec::new();
            for (a0, a1, c) in &a.coaction[i] {
                for (b0, b1, d) in &a.coaction[j] {
                    let w = c.clone() * d.clone() * sigma.inverse_table()[(*a1, *b1)].clone();
                    if w.is_zero() {
                        continue;
                    }
                    t.extend(alg.basis_product(*a0, *b0).iter().map(|(k, e)| (*k, w.clone() * e.clone())));
                }
            }
            product.push(canonical(t));
        }
    }
    let star = (0..n)
        .map(|i| {
            let mut t = Vec::new();
            for (a0, a1, c) in &a.coaction[i] {
                let v = eval(&uv.v, halg.basis_star(*a1));
                match convention {
                    StarConvention::VCorrected => {
                        let w = c.conj() * v;
                        t.extend(alg.basis_star(*a0).iter().map(|(k, e)| (*k, w.clone() * e.clone())));
                    }
                    StarConvention::NoInnerStar => t.push((*a0, c.conj() * v)),
                    StarConvention::Untwisted => {}
                }
            }
            if convention == StarConvention::Untwisted {
                t = alg.basis_star(i).clone();
            }
            canonical(t)
        })
        .collect();
    let algebra = StarAlgebra::new(n, product, alg.unit().clone(), star, alg.labels().to_vec())?;
    Ok(ComoduleAlgebra { algebra, coaction: a.coaction.clone(), side: Side::Right })
}

/// `A #_{σ⁻¹} ℂ` with the V-corrected star, verified as a right comodule
/// *-algebra over `H^σ`.
pub fn twist_comodule_algebra(h: &FiniteHopfAlgebra, a: &ComoduleAlgebra, sigma: &DualCocycle) -> Result<ComoduleAlgebra, HopfError> {
    let hs = twist_hopf(h, sigma)?;
    let out = twist_comodule_algebra_with(h, a, sigma, StarConvention::VCorrected)?;
    first_failure(&check_comodule_algebra(&hs, &out), "twisted comodule algebra")?;
    Ok(out)
}

pub use crate::linalg::is_positive_definite;

/// `B` with commuting coactions of `H` (left) and `H^σ` (right) and the
/// invariant state `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaloisObject {
    pub algebra: StarAlgebra,
    /// `β₁ : B → H ⊗ B`
    pub left: Vec<Terms2>,
    /// `β₂ : B → B ⊗ H^σ`
    pub right: Vec<Terms2>,
    pub state: Vec<Scalar>,
}

impl GaloisObject {
    pub fn left_comodule(&self) -> ComoduleAlgebra {
        ComoduleAlgebra { algebra: self.algebra.clone(), coaction: self.left.clone(), side: Side::Left }
    }

    pub fn right_comodule(&self) -> ComoduleAlgebra {
        ComoduleAlgebra { algebra: self.algebra.clone(), coaction: self.right.clone(), side: Side::Right }
    }

    /// Both coactions, their commutation, invariance and faithfulness of `ω`.
    pub fn check(&self, h: &FiniteHopfAlgebra, hs: &FiniteHopfAlgebra) -> Report {
        let mut r = self.algebra.check();
        r.merge("left", check_coaction(h, &self.algebra, &self.left, Side::Left));
        r.merge("right", check_coaction(hs, &self.algebra, &self.right, Side::Right));
        let n = self.algebra.dim();
        let commute = (0..n).find(|&i| {
            let mut lhs = Vec::new();
            for (b0, g, c) in &self.right[i] {
                for (x, b00, d) in &self.left[*b0] {
                    lhs.push(((*x, *b00, *g), c.clone() * d.clone()));
                }
            }
            let mut rhs = Vec::new();
            for (x, b0, c) in &self.left[i] {
                for (b00, g, d) in &self.right[*b0] {
                    rhs.push(((*x, *b00, *g), c.clone() * d.clone()));
                }
            }
            canonical3(lhs) != canonical3(rhs)
        });
        r.record("coactions commute", commute.map_or(Ok(()), |i| Err(self.algebra.labels()[i].clone())));
        match h.haar() {
            Err(e) => r.fail("state invariant", e.to_string()),
            Ok(haar) => {
                let unit = self.algebra.unit();
                let bad = (0..n).find(|&i| {
                    let t: Terms = self.left[i].iter().map(|(g, b, c)| (*b, c.clone() * haar[*g].clone())).collect();
                    let expect: Terms = unit.iter().map(|(k, u)| (*k, u.clone() * self.state[i].clone())).collect();
                    canonical(t) != canonical(expect)
                });
                r.record("state invariant", bad.map_or(Ok(()), |i| Err(self.algebra.labels()[i].clone())));
            }
        }
        let faithful = is_positive_definite(&self.algebra.gram(&self.state));
        r.record("state faithful", if faithful { Ok(()) } else { Err("Gram matrix not positive definite".into()) });
        r
    }
}

/// `B = H #_{σ⁻¹} ℂ` with `β₁ = β₂ = Δ` and `ω` the Haar functional.
pub fn smash_left(h: &FiniteHopfAlgebra, sigma: &DualCocycle) -> Result<GaloisObject, HopfError> {
    let hs = twist_hopf(h, sigma)?;
    let b = twist_comodule_algebra_with(h, &ComoduleAlgebra::regular(h), sigma, StarConvention::VCorrected)?;
    let delta: Vec<Terms2> = (0..h.dim()).map(|i| h.coproduct(i).clone()).collect();
    let g = GaloisObject { algebra: b.algebra, left: delta.clone(), right: delta, state: h.haar()? };
    let report = g.check(h, &hs);
    match report.get("state faithful") {
        Some(c) if !c.passed => return Err(HopfError::NotFaithful("Haar functional on the twisted algebra".into())),
        _ => {}
    }
    first_failure(&report, "Galois object")?;
    Ok(g)
}

/// `ℂ #_σ H`: left `H^σ`-coaction and right `H`-coaction, both `Δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiComoduleAlgebra {
    pub algebra: StarAlgebra,
    pub left: Vec<Terms2>,
    pub right: Vec<Terms2>,
}

pub fn smash_right(h: &FiniteHopfAlgebra, sigma: &DualCocycle) -> Result<BiComoduleAlgebra, HopfError> {
    let hs = twist_hopf(h, sigma)?;
    let n = h.dim();
    let halg = h.algebra();
    let uv = uv_functionals(h, sigma)?;
    let mut product = Vec::with_capacity(n * n);
    for g in 0..n {
        for k in 0..n {
            let mut t = Vec::new();
            for (g1, g2, c) in h.coproduct(g) {
                for (k1, k2, d) in h.coproduct(k) {
                    let w = c.clone() * d.clone() * sigma.table()[(*g1, *k1)].clone();
                    if !w.is_zero() {
                        t.extend(halg.basis_product(*g2, *k2).iter().map(|(x, e)| (*x, w.clone() * e.clone())));
                    }
                }
            }
            product.push(canonical(t));
        }
    }
    let star = (0..n)
        .map(|i| {
            let mut t = Vec::new();
            for (a, b, c) in h.coproduct(i) {
                let w = c.conj() * eval(&uv.v_inv, halg.basis_star(*a));
                t.extend(halg.basis_star(*b).iter().map(|(x, e)| (*x, w.clone() * e.clone())));
            }
            canonical(t)
        })
        .collect();
    let algebra = StarAlgebra::new(n, product, halg.unit().clone(), star, halg.labels().to_vec())?;
    let delta: Vec<Terms2> = (0..n).map(|i| h.coproduct(i).clone()).collect();
    let out = BiComoduleAlgebra { algebra, left: delta.clone(), right: delta };
    let mut r = out.algebra.check();
    r.merge("left", check_coaction(&hs, &out.algebra, &out.left, Side::Left));
    r.merge("right", check_coaction(h, &out.algebra, &out.right, Side::Right));
    first_failure(&r, "smash product")?;
    Ok(out)
}

/// Kernel of a sparse homogeneous system on `ncols` unknowns.
pub(crate) fn kernel_of(ncols: usize, rows: impl IntoIterator<Item = BTreeMap<usize, Scalar>>) -> (Vec<usize>, Vec<Vec<Scalar>>) {
    let mut ech = SparseEchelon::new();
    for row in rows {
        ech.insert(row);
    }
    ech.kernel(ncols)
}

/// A subspace given by an echelon kernel basis: coordinates of a member are
/// its entries on the free columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub ambient: usize,
    pub free: Vec<usize>,
    pub basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn embed(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in v.iter_mut().zip(b) {
                if !x.is_zero() {
                    *slot = slot.clone() + c.clone() * x.clone();
                }
            }
        }
        v
    }

    /// Coordinates of `v`, or `None` if `v` is not in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.free.iter().map(|&f| v[f].clone()).collect();
        (self.embed(&c) == v).then_some(c)
    }
}

/// Solutions `ζ ∈ V ⊗ W` of `U₁₂ζ₁₃ = (id ⊗ β)ζ`, where `U(v_j) = Σ_i v_i ⊗ u_ij`
/// on an `n`-dimensional `V` (`u[i*n+j]`), and `β` is a left coaction on `W`.
pub fn intertwiner_kernel(u: &[Terms], n: usize, beta: &[Terms2], m: usize) -> Subspace {
    let (free, basis) = kernel_of(n * m, intertwiner_rows(u, n, beta, m));
    Subspace { ambient: n * m, free, basis }
}

pub(crate) fn intertwiner_rows(u: &[Terms], n: usize, beta: &[Terms2], m: usize) -> Vec<BTreeMap<usize, Scalar>> {
    let mut rows: BTreeMap<(usize, usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
    let mut add = |key: (usize, usize, usize), col: usize, v: Scalar| {
        let row = rows.entry(key).or_default();
        let e = row.entry(col).or_default();
        *e = e.clone() + v;
    };
    for i in 0..n {
        for j in 0..n {
            for (g, c) in &u[i * n + j] {
                for b in 0..m {
                    add((i, *g, b), j * m + b, c.clone());
                }
            }
        }
    }
    for b in 0..m {
        for (g, b2, c) in &beta[b] {
            for i in 0..n {
                add((i, *g, *b2), i * m + b, -c.clone());
            }
        }
    }
    rows.into_values().collect()
}

/// `A ⊡ B` inside `A ⊗ B` (basis index `a * dim B + b`), with the induced
/// product and star.
#[derive(Clone, Debug, PartialEq)]
pub struct Cotensor {
    pub algebra: StarAlgebra,
    pub space: Subspace,
    pub ambient: StarAlgebra,
}

impl Cotensor {
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.space.coords(v)
    }
}

/// Joint kernel of `α ⊗ id − id ⊗ β` for a right coaction `α` on `A` and a left
/// coaction `β` on `B` of the same Hopf algebra; fails if the kernel is not a
/// *-subalgebra.
pub fn cotensor(a: &StarAlgebra, alpha: &[Terms2], b: &StarAlgebra, beta: &[Terms2]) -> Result<Cotensor, HopfError> {
    let (na, nb) = (a.dim(), b.dim());
    let mut rows: BTreeMap<(usize, usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
    let mut add = |key: (usize, usize, usize), col: usize, v: Scalar| {
        let row = rows.entry(key).or_default();
        let e = row.entry(col).or_default();
        *e = e.clone() + v;
    };
    for x in 0..na {
        for (x0, g, c) in &alpha[x] {
            for y in 0..nb {
                add((*x0, *g, y), x * nb + y, c.clone());
            }
        }
    }
    for y in 0..nb {
        for (g, y0, c) in &beta[y] {
            for x in 0..na {
                add((x, *g, *y0), x * nb + y, -c.clone());
            }
        }
    }
    let (free, basis) = kernel_of(na * nb, rows.into_values());
    let space = Subspace { ambient: na * nb, free, basis };
    let ambient = a.tensor(b);
    let d = space.dim();
    let mut product = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let p = ambient.mul(&space.basis[i], &space.basis[j]);
            let c = space.coords(&p).ok_or_else(|| HopfError::Verification("cotensor not closed under product".into()))?;
            product.push(super::to_sparse(&c));
        }
    }
    let unit = space
        .coords(&ambient.unit_vec())
        .ok_or_else(|| HopfError::Verification("unit not in the cotensor product".into()))?;
    let star = (0..d)
        .map(|i| {
            let s = ambient.star_vec(&space.basis[i]);
            space.coords(&s).map(|c| super::to_sparse(&c)).ok_or_else(|| HopfError::Verification("cotensor not closed under star".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let labels = (0..d).map(|i| format!("z{i}")).collect();
    let algebra = StarAlgebra::new(d, product, super::to_sparse(&unit), star, labels)?;
    Ok(Cotensor { algebra, space, ambient })
}

/// The isomorphism `λ(a#1) = a₀ ⊗ (a₁#1)` from `A #_{σ⁻¹} ℂ` onto
/// `A ⊡ (H #_{σ⁻¹} ℂ)`, checked as an exact structure-tensor identity.
pub fn check_bhalg(h: &FiniteHopfAlgebra, a: &ComoduleAlgebra, sigma: &DualCocycle) -> Result<Report, HopfError> {
    let mut r = Report::new();
    let twisted = twist_comodule_algebra(h, a, sigma)?;
    let b = smash_left(h, sigma)?;
    let cot = cotensor(&a.algebra, &a.coaction, &b.algebra, &b.left)?;
    let (na, nb) = (a.algebra.dim(), b.algebra.dim());
    let lambda = |x: &[Scalar]| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); na * nb];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (a0, a1, c) in &a.coaction[i] {
                let slot = &mut v[a0 * nb + a1];
                *slot = slot.clone() + xi.clone() * c.clone();
            }
        }
        v
    };
    let images: Vec<Vec<Scalar>> = (0..na).map(|i| lambda(&basis_vec(na, i))).collect();
    let coords: Option<Vec<Vec<Scalar>>> = images.iter().map(|v| cot.coords(v)).collect();
    let Some(coords) = coords else {
        r.fail("image in cotensor", "λ(a) left the cotensor product");
        return Ok(r);
    };
    r.pass("image in cotensor");
    let m = Matrix::from_fn(cot.space.dim(), na, |i, j| coords[j][i].clone());
    let bijective = cot.space.dim() == na && m.rank() == na;
    r.record("bijective", if bijective { Ok(()) } else { Err(format!("dim A = {na}, dim cotensor = {}", cot.space.dim())) });
    let tw = &twisted.algebra;
    let mut mult = Ok(());
    'm: for i in 0..na {
        for j in 0..na {
            let lhs = lambda(&tw.mul(&basis_vec(na, i), &basis_vec(na, j)));
            let rhs = cot.ambient.mul(&images[i], &images[j]);
            if lhs != rhs {
                mult = Err(format!("({}, {})", tw.labels()[i], tw.labels()[j]));
                break 'm;
            }
        }
    }
    r.record("multiplicative", mult);
    let star = (0..na).find(|&i| lambda(&tw.star_vec(&basis_vec(na, i))) != cot.ambient.star_vec(&images[i]));
    r.record("star-preserving", star.map_or(Ok(()), |i| Err(tw.labels()[i].clone())));
    let unital = lambda(&tw.unit_vec()) == cot.ambient.unit_vec();
    r.record("unital", if unital { Ok(()) } else { Err("unit".into()) });
    Ok(r)
}

/// Spectral subspace `𝓑_x` for one irrep.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSubspace {
    pub irrep: usize,
    /// `dim K_x`
    pub intertwiners: usize,
    /// Spanning vectors of `𝓑_x` in the basis of `B`, linearly independent.
    pub basis: Vec<Vec<Scalar>>,
}

/// `K_x` and `𝓑_x` for a left coaction `β` on `B`, per irrep; the report
/// records whether `⊕_x 𝓑_x = B`.
pub fn spectral_subspaces(b: &StarAlgebra, beta: &[Terms2], irreps: &[Irrep]) -> (Vec<SpectralSubspace>, Report) {
    let nb = b.dim();
    let mut out = Vec::new();
    let mut all = SparseEchelon::new();
    let mut total = 0;
    for (x, ir) in irreps.iter().enumerate() {
        let k = intertwiner_kernel(&ir.coeffs, ir.dim, beta, nb);
        let mut ech = SparseEchelon::new();
        let mut basis = Vec::new();
        for z in &k.basis {
            for i in 0..ir.dim {
                let slice: Vec<Scalar> = z[i * nb..(i + 1) * nb].to_vec();
                let row: BTreeMap<usize, Scalar> = slice.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if ech.insert(row.clone()) {
                    all.insert(row);
                    basis.push(slice);
                }
            }
        }
        total += basis.len();
        out.push(SpectralSubspace { irrep: x, intertwiners: k.dim(), basis });
    }
    let mut r = Report::new();
    let direct = total == nb && all.rank() == nb;
    r.record(
        "spectral subspaces span B as a direct sum",
        if direct { Ok(()) } else { Err(format!("Σ dim = {total}, span rank = {}, dim B = {nb}", all.rank())) },
    );
    (out, r)
}
