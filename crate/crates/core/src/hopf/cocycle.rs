//! Dual 2-cocycles, the functionals U and V, and the twisted Hopf algebra.

use super::algebra::{canonical, eval, FiniteHopfAlgebra, StarAlgebra};
use super::{HopfError, Scalar, Terms};
use crate::linalg::{Matrix, SparseEchelon};
use crate::report::Report;
use crate::scalar::Field;
use std::collections::BTreeMap;

/// Bilinear form on `H` given by its table on the basis.
fn pair(table: &Matrix<Scalar>, x: &Terms, y: &Terms) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, a) in x {
        for (j, b) in y {
            acc = acc + a.clone() * b.clone() * table[(*i, *j)].clone();
        }
    }
    acc
}

fn one(i: usize) -> Terms {
    vec![(i, Scalar::one())]
}

/// A dual 2-cocycle together with its convolution inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCocycle {
    table: Matrix<Scalar>,
    inverse: Matrix<Scalar>,
}

impl DualCocycle {
    /// Wrap a table, computing its convolution inverse. The cocycle axioms are
    /// not checked here; see [`check_dual_cocycle`].
    pub fn new(h: &FiniteHopfAlgebra, table: Matrix<Scalar>) -> Result<Self, HopfError> {
        let inverse = convolution_inverse(h, &table)?;
        Ok(DualCocycle { table, inverse })
    }

    /// `ε ⊗ ε`.
    pub fn trivial(h: &FiniteHopfAlgebra) -> Self {
        let n = h.dim();
        let eps = h.counit();
        let table = Matrix::from_fn(n, n, |i, j| eps[i].clone() * eps[j].clone());
        DualCocycle { inverse: table.clone(), table }
    }

    pub fn table(&self) -> &Matrix<Scalar> {
        &self.table
    }

    pub fn inverse_table(&self) -> &Matrix<Scalar> {
        &self.inverse
    }

    pub fn eval(&self, x: &Terms, y: &Terms) -> Scalar {
        pair(&self.table, x, y)
    }

    pub fn eval_inverse(&self, x: &Terms, y: &Terms) -> Scalar {
        pair(&self.inverse, x, y)
    }

    /// `σ⁻¹` viewed as a cocycle in its own right (on the twisted algebra).
    pub fn inverted(&self) -> DualCocycle {
        DualCocycle { table: self.inverse.clone(), inverse: self.table.clone() }
    }
}

/// Table of the bicharacter `σ(a, b) = ζ^{aᵀ M b}` on `Z_{n1} × … × Z_{nk}`
/// (group-like basis in the order of [`super::FiniteGroup::abelian`]), with
/// `ζ = exp(2πi / root)`.
pub fn bicharacter_table(orders: &[u32], root: i64, form: &[Vec<i64>]) -> Result<Matrix<Scalar>, HopfError> {
    let k = orders.len();
    if form.len() != k || form.iter().any(|r| r.len() != k) {
        return Err(HopfError::Shape(format!("bicharacter form must be {k}×{k}")));
    }
    if root <= 0 || 12 % root != 0 {
        return Err(HopfError::Shape(format!("root of unity order {root} must divide 12")));
    }
    let elems = super::algebra::abelian_elements(orders);
    Ok(Matrix::from_fn(elems.len(), elems.len(), |i, j| {
        let mut e = 0i64;
        for (r, row) in form.iter().enumerate() {
            for (c, m) in row.iter().enumerate() {
                e += elems[i][r] as i64 * m * elems[j][c] as i64;
            }
        }
        Scalar::root_of_unity(e, root)
    }))
}

/// Solve `σ(a₁, b₁) τ(a₂, b₂) = ε(a)ε(b)` for `τ`, then confirm the other side.
pub fn convolution_inverse(h: &FiniteHopfAlgebra, table: &Matrix<Scalar>) -> Result<Matrix<Scalar>, HopfError> {
    let n = h.dim();
    if table.nrows() != n || table.ncols() != n {
        return Err(HopfError::Shape(format!("cocycle table must be {n}×{n}")));
    }
    let rhs = n * n;
    let eps = h.counit();
    let mut ech = SparseEchelon::new();
    for a in 0..n {
        for b in 0..n {
            let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (a1, a2, p) in h.coproduct(a) {
                for (b1, b2, q) in h.coproduct(b) {
                    let s = &table[(*a1, *b1)];
                    if s.is_zero() {
                        continue;
                    }
                    let e = row.entry(a2 * n + b2).or_default();
                    *e = e.clone() + p.clone() * q.clone() * s.clone();
                }
            }
            let target = eps[a].clone() * eps[b].clone();
            if !target.is_zero() {
                row.insert(rhs, target);
            }
            ech.insert(row);
        }
    }
    if ech.is_inconsistent(rhs) || ech.rank() < rhs {
        return Err(HopfError::NotInvertible("cocycle table in the convolution algebra".into()));
    }
    let mut inv = Matrix::zeros(n, n);
    for c in 0..n {
        for d in 0..n {
            inv[(c, d)] = ech.forced_value(c * n + d, rhs).ok_or_else(|| HopfError::NotInvertible("underdetermined".into()))?;
        }
    }
    let other_side = convolve2(h, &inv, table);
    let unit = Matrix::from_fn(n, n, |i, j| eps[i].clone() * eps[j].clone());
    if other_side != unit {
        return Err(HopfError::NotInvertible("left and right convolution inverses differ".into()));
    }
    Ok(inv)
}

/// Convolution of two bilinear forms on `H`.
pub fn convolve2(h: &FiniteHopfAlgebra, f: &Matrix<Scalar>, g: &Matrix<Scalar>) -> Matrix<Scalar> {
    let n = h.dim();
    Matrix::from_fn(n, n, |a, b| {
        let mut acc = Scalar::zero();
        for (a1, a2, p) in h.coproduct(a) {
            for (b1, b2, q) in h.coproduct(b) {
                acc = acc + p.clone() * q.clone() * f[(*a1, *b1)].clone() * g[(*a2, *b2)].clone();
            }
        }
        acc
    })
}

/// Cocycle identity on every basis triple, normalization, invertibility and
/// unitarity. Reports the first violating triple.
pub fn check_dual_cocycle(h: &FiniteHopfAlgebra, table: &Matrix<Scalar>) -> Report {
    let n = h.dim();
    let mut r = Report::new();
    if table.nrows() != n || table.ncols() != n {
        r.fail("shape", format!("expected {n}×{n}"));
        return r;
    }
    let alg = h.algebra();
    let label = |i: usize| alg.labels()[i].clone();
    let mut ident = Ok(());
    'outer: for a in 0..n {
        for b in 0..n {
            // σ(a₁,b₁) a₂b₂ as a functional-ready combination
            let mut left_partial: Vec<(Scalar, Terms)> = Vec::new();
            for (a1, a2, p) in h.coproduct(a) {
                for (b1, b2, q) in h.coproduct(b) {
                    let s = table[(*a1, *b1)].clone();
                    if !s.is_zero() {
                        left_partial.push((p.clone() * q.clone() * s, alg.basis_product(*a2, *b2).clone()));
                    }
                }
            }
            for c in 0..n {
                let lhs = left_partial.iter().fold(Scalar::zero(), |acc, (w, t)| acc + w.clone() * pair(table, t, &one(c)));
                let mut rhs = Scalar::zero();
                for (b1, b2, p) in h.coproduct(b) {
                    for (c1, c2, q) in h.coproduct(c) {
                        let s = table[(*b1, *c1)].clone();
                        if !s.is_zero() {
                            rhs = rhs + p.clone() * q.clone() * s * pair(table, &one(a), alg.basis_product(*b2, *c2));
                        }
                    }
                }
                if lhs != rhs {
                    ident = Err(format!("({}, {}, {}): {:?} ≠ {:?}", label(a), label(b), label(c), lhs, rhs));
                    break 'outer;
                }
            }
        }
    }
    r.record("cocycle identity", ident);
    let eps = h.counit();
    let norm = (0..n)
        .find(|&i| pair(table, alg.unit(), &one(i)) != eps[i] || pair(table, &one(i), alg.unit()) != eps[i])
        .map_or(Ok(()), |i| Err(label(i)));
    r.record("normalized", norm);
    match convolution_inverse(h, table) {
        Err(e) => r.fail("invertible", e.to_string()),
        Ok(inv) => {
            r.pass("invertible");
            let mut unitary = Ok(());
            'u: for a in 0..n {
                let sa = alg.star_terms(h.antipode(a));
                for b in 0..n {
                    let sb = alg.star_terms(h.antipode(b));
                    if table[(a, b)].conj() != pair(&inv, &sa, &sb) {
                        unitary = Err(format!("({}, {})", label(a), label(b)));
                        break 'u;
                    }
                }
            }
            r.record("unitary", unitary);
        }
    }
    r
}

/// The functionals U, U⁻¹, V, V⁻¹ on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct UvFunctionals {
    pub u: Vec<Scalar>,
    pub u_inv: Vec<Scalar>,
    pub v: Vec<Scalar>,
    pub v_inv: Vec<Scalar>,
}

impl UvFunctionals {
    pub fn trivial(h: &FiniteHopfAlgebra) -> Self {
        let e = h.counit().to_vec();
        UvFunctionals { u: e.clone(), u_inv: e.clone(), v: e.clone(), v_inv: e }
    }
}

/// `U(h) = σ(h₁, S h₂)`, `U⁻¹(h) = σ⁻¹(S h₁, h₂)`, `V = U∘S⁻¹`, `V⁻¹ = U⁻¹∘S⁻¹`.
pub fn uv_functionals(h: &FiniteHopfAlgebra, sigma: &DualCocycle) -> Result<UvFunctionals, HopfError> {
    let n = h.dim();
    let u = (0..n)
        .map(|i| {
            h.coproduct(i)
                .iter()
                .fold(Scalar::zero(), |acc, (a, b, c)| acc + c.clone() * sigma.eval(&one(*a), h.antipode(*b)))
        })
        .collect::<Vec<_>>();
    let u_inv = (0..n)
        .map(|i| {
            h.coproduct(i)
                .iter()
                .fold(Scalar::zero(), |acc, (a, b, c)| acc + c.clone() * sigma.eval_inverse(h.antipode(*a), &one(*b)))
        })
        .collect::<Vec<_>>();
    let s_inv = h.antipode_inverse()?;
    let v = s_inv.iter().map(|t| eval(&u, t)).collect();
    let v_inv = s_inv.iter().map(|t| eval(&u_inv, t)).collect();
    Ok(UvFunctionals { u, u_inv, v, v_inv })
}

/// Convolution-inverse identities for U and V, checked rather than assumed.
pub fn check_uv(h: &FiniteHopfAlgebra, uv: &UvFunctionals) -> Report {
    let mut r = Report::new();
    let eps = h.counit().to_vec();
    for (name, f, g) in [("U * U⁻¹ = ε", &uv.u, &uv.u_inv), ("V * V⁻¹ = ε", &uv.v, &uv.v_inv)] {
        let ok = h.convolve(f, g) == eps && h.convolve(g, f) == eps;
        r.record(name, if ok { Ok(()) } else { Err("convolution product differs from the counit".into()) });
    }
    r
}

/// The twisted Hopf *-algebra `H^σ`, with all axioms re-verified.
pub fn twist_hopf(h: &FiniteHopfAlgebra, sigma: &DualCocycle) -> Result<FiniteHopfAlgebra, HopfError> {
    let twisted = twist_hopf_unchecked(h, sigma)?;
    let report = twisted.check();
    match report.first_failure() {
        Some(c) => Err(HopfError::Verification(format!("twisted Hopf algebra: {} {}", c.name, c.detail.clone().unwrap_or_default()))),
        None => Ok(twisted),
    }
}

pub(crate) fn twist_hopf_unchecked(h: &FiniteHopfAlgebra, sigma: &DualCocycle) -> Result<FiniteHopfAlgebra, HopfError> {
    let n = h.dim();
    let alg = h.algebra();
    let uv = uv_functionals(h, sigma)?;
    let d3: Vec<_> = (0..n).map(|i| h.coproduct3(i)).collect();
    let mut product = Vec::with_capacity(n * n);
    for g in 0..n {
        for k in 0..n {
            let mut t = Vec::new();
            for (g1, g2, g3, p) in &d3[g] {
                for (k1, k2, k3, q) in &d3[k] {
                    let w = p.clone() * q.clone() * sigma.table[(*g1, *k1)].clone() * sigma.inverse[(*g3, *k3)].clone();
                    if w.is_zero() {
                        continue;
                    }
                    t.extend(alg.basis_product(*g2, *k2).iter().map(|(x, c)| (*x, w.clone() * c.clone())));
                }
            }
            product.push(canonical(t));
        }
    }
    let antipode = (0..n)
        .map(|i| {
            let mut t = Vec::new();
            for (a, b, c, p) in &d3[i] {
                let w = p.clone() * uv.u[*a].clone() * uv.u_inv[*c].clone();
                t.extend(h.antipode(*b).iter().map(|(x, s)| (*x, w.clone() * s.clone())));
            }
            canonical(t)
        })
        .collect();
    let star = (0..n)
        .map(|i| {
            let mut t = Vec::new();
            for (a, b, c, p) in &d3[i] {
                let w = p.conj() * eval(&uv.v_inv, alg.basis_star(*a)) * eval(&uv.v, alg.basis_star(*c));
                t.extend(alg.basis_star(*b).iter().map(|(x, s)| (*x, w.clone() * s.clone())));
            }
            canonical(t)
        })
        .collect();
    let algebra = StarAlgebra::new(n, product, alg.unit().clone(), star, alg.labels().to_vec())?;
    h.with_structure(algebra, antipode)
}

/// An irreducible unitary corepresentation given by its matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Irrep {
    pub dim: usize,
    /// `coeffs[i * dim + j] = u_ij`
    pub coeffs: Vec<Terms>,
}

/// One-dimensional irreps from the group-like basis elements.
pub fn group_like_irreps(h: &FiniteHopfAlgebra) -> Vec<Irrep> {
    h.group_likes().into_iter().map(|g| Irrep { dim: 1, coeffs: vec![one(g)] }).collect()
}

/// `Ω` as blocks `Ω^{xy}` acting on `H_x ⊗ H_y`, indexed by irrep positions.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockUnitary {
    pub blocks: BTreeMap<(usize, usize), Matrix<Scalar>>,
}

/// Columns: matrix coefficients of all irreps, in the basis of `H`.
fn coefficient_basis(h: &FiniteHopfAlgebra, irreps: &[Irrep]) -> Result<(Matrix<Scalar>, Vec<(usize, usize, usize)>), HopfError> {
    let n = h.dim();
    let slots: Vec<(usize, usize, usize)> =
        irreps.iter().enumerate().flat_map(|(x, ir)| (0..ir.dim).flat_map(move |i| (0..ir.dim).map(move |j| (x, i, j)))).collect();
    if slots.len() != n {
        return Err(HopfError::Shape(format!("{} matrix coefficients for a {n}-dimensional algebra", slots.len())));
    }
    let mut c = Matrix::zeros(n, n);
    for (col, &(x, i, j)) in slots.iter().enumerate() {
        for (k, v) in &irreps[x].coeffs[i * irreps[x].dim + j] {
            c[(*k, col)] = v.clone();
        }
    }
    Ok((c, slots))
}

/// `σ(u^x_ij, u^y_kl) = ⟨ξ^x_i ⊗ ξ^y_k, Ω(ξ^x_j ⊗ ξ^y_l)⟩`, as a basis table.
pub fn sigma_from_omega(h: &FiniteHopfAlgebra, irreps: &[Irrep], omega: &BlockUnitary) -> Result<Matrix<Scalar>, HopfError> {
    check_omega(h, irreps, omega)?;
    let (c, slots) = coefficient_basis(h, irreps)?;
    let c_inv = c.inverse().ok_or(HopfError::NotInvertible("matrix coefficients do not form a basis".into()))?;
    let n = h.dim();
    let in_coeffs = Matrix::from_fn(n, n, |p, q| {
        let (x, i, j) = slots[p];
        let (y, k, l) = slots[q];
        let dy = irreps[y].dim;
        omega.blocks[&(x, y)][(i * dy + k, j * dy + l)].clone()
    });
    Ok(&(&c_inv.transpose() * &in_coeffs) * &c_inv)
}

/// Inverse of [`sigma_from_omega`].
pub fn omega_from_sigma(h: &FiniteHopfAlgebra, irreps: &[Irrep], table: &Matrix<Scalar>) -> Result<BlockUnitary, HopfError> {
    let (c, slots) = coefficient_basis(h, irreps)?;
    let in_coeffs = &(&c.transpose() * table) * &c;
    let mut blocks = BTreeMap::new();
    for x in 0..irreps.len() {
        for y in 0..irreps.len() {
            let (dx, dy) = (irreps[x].dim, irreps[y].dim);
            blocks.insert((x, y), Matrix::zeros(dx * dy, dx * dy));
        }
    }
    for (p, &(x, i, j)) in slots.iter().enumerate() {
        for (q, &(y, k, l)) in slots.iter().enumerate() {
            let dy = irreps[y].dim;
            let b = blocks.get_mut(&(x, y)).expect("allocated");
            b[(i * dy + k, j * dy + l)] = in_coeffs[(p, q)].clone();
        }
    }
    let omega = BlockUnitary { blocks };
    check_omega(h, irreps, &omega)?;
    Ok(omega)
}

fn check_omega(h: &FiniteHopfAlgebra, irreps: &[Irrep], omega: &BlockUnitary) -> Result<(), HopfError> {
    let trivial: Vec<usize> = irreps
        .iter()
        .enumerate()
        .filter(|(_, ir)| ir.dim == 1 && canonical(ir.coeffs[0].clone()) == *h.algebra().unit())
        .map(|(x, _)| x)
        .collect();
    for x in 0..irreps.len() {
        for y in 0..irreps.len() {
            let b = omega.blocks.get(&(x, y)).ok_or_else(|| HopfError::Shape(format!("missing Ω block ({x}, {y})")))?;
            let d = irreps[x].dim * irreps[y].dim;
            if b.nrows() != d || b.ncols() != d {
                return Err(HopfError::Shape(format!("Ω block ({x}, {y}) must be {d}×{d}")));
            }
            if &b.adjoint() * b != Matrix::identity(d) {
                return Err(HopfError::Verification(format!("Ω block ({x}, {y}) is not unitary")));
            }
            if (trivial.contains(&x) || trivial.contains(&y)) && *b != Matrix::identity(d) {
                return Err(HopfError::Verification(format!("Ω not normalized at block ({x}, {y})")));
            }
        }
    }
    Ok(())
}
