//! Finite equivariant spectral triples and their literal deformation:
//! `π_σ`, the GNS space of the Galois object, `H ⊠ L²(B)`, `D̃`, `A ⊡ B`, and
//! the comparison unitaries for a deformation and its inverse.

use super::algebra::{basis_vec, canonical, canonical2, FiniteGroup, FiniteHopfAlgebra, StarAlgebra};
use super::cocycle::{check_dual_cocycle, twist_hopf, DualCocycle};
use super::comodule::{
    check_comodule_algebra, cotensor, intertwiner_kernel, intertwiner_rows, is_positive_definite, kernel_of, smash_left, twist_comodule_algebra_with,
    ComoduleAlgebra, Cotensor, GaloisObject, Side, StarConvention, Subspace,
};
use super::{first_failure, HopfError, Scalar, Terms, Terms2};
use crate::linalg::{op_norm, Matrix};
use crate::report::Report;
use crate::scalar::Field;
use std::collections::BTreeMap;

/// `(A, 𝓗, D)` with a unitary corepresentation `u` of `H` implementing the
/// coaction on `A`, and a twist operator `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteEquivariantTriple {
    pub hopf: FiniteHopfAlgebra,
    /// Right comodule algebra over `hopf`.
    pub algebra: ComoduleAlgebra,
    /// Inner products of the basis of `𝓗`.
    pub gram: Matrix<Scalar>,
    /// `rep[a]` represents basis element `a` of the algebra.
    pub rep: Vec<Matrix<Scalar>>,
    /// `u(ξ_j) = Σ_i ξ_i ⊗ corep[i*n + j]`
    pub corep: Vec<Terms>,
    pub dirac: Matrix<Scalar>,
    pub twist: Matrix<Scalar>,
}

fn scale_terms(t: &Terms, c: &Scalar) -> Terms {
    t.iter().map(|(i, v)| (*i, v.clone() * c.clone())).collect()
}

impl FiniteEquivariantTriple {
    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    /// Adjoint for the inner product given by the Gram matrix.
    pub fn adjoint(&self, m: &Matrix<Scalar>) -> Matrix<Scalar> {
        let ginv = self.gram.inverse().expect("Gram matrix invertible");
        &(&ginv * &m.adjoint()) * &self.gram
    }

    pub fn check(&self) -> Report {
        let n = self.dim();
        let h = &self.hopf;
        let halg = h.algebra();
        let alg = &self.algebra.algebra;
        let na = alg.dim();
        let mut r = check_comodule_algebra(h, &self.algebra);
        let shapes = self.rep.len() == na
            && self.rep.iter().all(|m| m.nrows() == n && m.ncols() == n)
            && self.corep.len() == n * n
            && self.dirac.nrows() == n
            && self.twist.nrows() == n
            && self.algebra.side == Side::Right;
        if !shapes {
            r.fail("shapes", "representation, corepresentation or operators have the wrong size");
            return r;
        }
        r.record("gram positive definite", if is_positive_definite(&self.gram) { Ok(()) } else { Err("not positive".into()) });
        let rep_of = |x: &[Scalar]| {
            x.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(Matrix::zeros(n, n), |acc, (i, c)| &acc + &self.rep[i].scale(c))
        };
        let mut hom = Ok(());
        'h: for i in 0..na {
            for j in 0..na {
                if rep_of(&alg.mul(&basis_vec(na, i), &basis_vec(na, j))) != &self.rep[i] * &self.rep[j] {
                    hom = Err(format!("({}, {})", alg.labels()[i], alg.labels()[j]));
                    break 'h;
                }
            }
        }
        r.record("representation multiplicative", hom);
        let star = (0..na).find(|&i| rep_of(&alg.star_vec(&basis_vec(na, i))) != self.adjoint(&self.rep[i]));
        r.record("representation *-preserving", star.map_or(Ok(()), |i| Err(alg.labels()[i].clone())));
        r.record(
            "representation unital",
            if rep_of(&alg.unit_vec()) == Matrix::identity(n) { Ok(()) } else { Err("π(1) ≠ 1".into()) },
        );
        r.record("corepresentation", check_corep(h, &self.corep, n));
        r.record("corepresentation unitary", check_unitary(h, &self.gram, &self.corep, n));
        // u(π(a)ξ_j) = π(a₀)ξ_k ⊗ a₁u_kj
        let mut cov = Ok(());
        'c: for a in 0..na {
            for j in 0..n {
                for i in 0..n {
                    let mut lhs = Vec::new();
                    for k in 0..n {
                        lhs.extend(scale_terms(&self.corep[i * n + k], &self.rep[a][(k, j)]));
                    }
                    let mut rhs = Vec::new();
                    for (a0, a1, c) in &self.algebra.coaction[a] {
                        for k in 0..n {
                            let w = c.clone() * self.rep[*a0][(i, k)].clone();
                            if !w.is_zero() {
                                rhs.extend(scale_terms(&halg.mul_terms(&vec![(*a1, Scalar::one())], &self.corep[k * n + j]), &w));
                            }
                        }
                    }
                    if canonical(lhs) != canonical(rhs) {
                        cov = Err(format!("algebra element {}, vector {j}", alg.labels()[a]));
                        break 'c;
                    }
                }
            }
        }
        r.record("coaction implemented by u", cov);
        r.record(
            "D self-adjoint",
            if self.adjoint(&self.dirac) == self.dirac { Ok(()) } else { Err("D ≠ D*".into()) },
        );
        r.record("D commutes with u", commutes_with_corep(&self.dirac, &self.corep, n));
        r.record("R commutes with D", if self.twist.commutator(&self.dirac).is_zero() { Ok(()) } else { Err("[R, D] ≠ 0".into()) });
        r.record("R commutes with u", commutes_with_corep(&self.twist, &self.corep, n));
        let gr = &self.gram * &self.twist;
        r.record("R positive", if is_positive_definite(&gr) { Ok(()) } else { Err("G R not positive definite".into()) });
        let norms: Vec<String> = self.rep.iter().map(|m| format!("{:.6}", op_norm(&self.dirac.commutator(m).to_complex()))).collect();
        r.push("commutator norms recorded", true, Some(norms.join(", ")));
        r
    }
}

fn check_corep(h: &FiniteHopfAlgebra, u: &[Terms], n: usize) -> Result<(), String> {
    for i in 0..n {
        for j in 0..n {
            let lhs = h.comul_terms(&u[i * n + j]);
            let mut rhs = Vec::new();
            for k in 0..n {
                for (a, c) in &u[i * n + k] {
                    for (b, d) in &u[k * n + j] {
                        rhs.push((*a, *b, c.clone() * d.clone()));
                    }
                }
            }
            if lhs != canonical2(rhs) {
                return Err(format!("Δ(u_{i}{j})"));
            }
            let eps = super::eval(h.counit(), &u[i * n + j]);
            if eps != if i == j { Scalar::one() } else { Scalar::zero() } {
                return Err(format!("ε(u_{i}{j})"));
            }
        }
    }
    Ok(())
}

/// `Σ_{i,k} G_ik u_ij* u_kl = G_jl 1`.
fn check_unitary(h: &FiniteHopfAlgebra, gram: &Matrix<Scalar>, u: &[Terms], n: usize) -> Result<(), String> {
    let halg = h.algebra();
    for j in 0..n {
        for l in 0..n {
            let mut acc = Vec::new();
            for i in 0..n {
                let si = halg.star_terms(&u[i * n + j]);
                for k in 0..n {
                    if gram[(i, k)].is_zero() {
                        continue;
                    }
                    acc.extend(scale_terms(&halg.mul_terms(&si, &u[k * n + l]), &gram[(i, k)]));
                }
            }
            if canonical(acc) != canonical(scale_terms(halg.unit(), &gram[(j, l)])) {
                return Err(format!("entry ({j}, {l})"));
            }
        }
    }
    Ok(())
}

/// `Σ_k M_kj u_ik = Σ_k M_ik u_kj`.
fn commutes_with_corep(m: &Matrix<Scalar>, u: &[Terms], n: usize) -> Result<(), String> {
    for i in 0..n {
        for j in 0..n {
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for k in 0..n {
                lhs.extend(scale_terms(&u[i * n + k], &m[(k, j)]));
                rhs.extend(scale_terms(&u[k * n + j], &m[(i, k)]));
            }
            if canonical(lhs) != canonical(rhs) {
                return Err(format!("entry ({i}, {j})"));
            }
        }
    }
    Ok(())
}

/// The regular triple on `ℂ[Γ]`, `Γ = Z_{n1} × …`: `A = ℂ[Γ]` with coaction
/// `Δ`, `𝓗 = ℓ²(Γ)`, `π(g)ξ_δ = ξ_{gδ}`, `u(ξ_δ) = ξ_δ ⊗ δ`, and `D` the word
/// length in the standard generators. For `Z₂²` this is `D = diag(0,1,1,2)`.
pub fn toy_triple(orders: &[u32]) -> Result<FiniteEquivariantTriple, HopfError> {
    let group = FiniteGroup::abelian(orders)?;
    let h = group.group_algebra();
    let n = h.dim();
    let elems = super::algebra::abelian_elements(orders);
    let rep = (0..n)
        .map(|g| Matrix::from_fn(n, n, |i, j| if i == group.mul(g, j) { Scalar::one() } else { Scalar::zero() }))
        .collect();
    let corep = (0..n * n).map(|k| if k / n == k % n { vec![(k / n, Scalar::one())] } else { vec![] }).collect();
    let lengths: Vec<Scalar> = elems
        .iter()
        .map(|e| Scalar::from_i64(e.iter().zip(orders).map(|(x, o)| (*x).min(o - x) as i64).sum()))
        .collect();
    Ok(FiniteEquivariantTriple {
        algebra: ComoduleAlgebra::regular(&h),
        hopf: h,
        gram: Matrix::identity(n),
        rep,
        corep,
        dirac: Matrix::diagonal(&lengths),
        twist: Matrix::identity(n),
    })
}

/// `π_σ(a)ξ = π(a₀)ξ₀ σ⁻¹(a₁, ξ₁)` on the basis of the algebra.
pub fn pi_sigma(t: &FiniteEquivariantTriple, sigma: &DualCocycle) -> Vec<Matrix<Scalar>> {
    let n = t.dim();
    (0..t.algebra.algebra.dim())
        .map(|a| {
            let mut out = Matrix::zeros(n, n);
            for (a0, a1, c) in &t.algebra.coaction[a] {
                let twist = Matrix::from_fn(n, n, |i, j| sigma.eval_inverse(&vec![(*a1, Scalar::one())], &t.corep[i * n + j]));
                out = &out + &(&t.rep[*a0] * &twist).scale(c);
            }
            out
        })
        .collect()
}

/// `π_σ` as a unital *-representation of the twisted algebra.
pub fn check_pi_sigma(t: &FiniteEquivariantTriple, twisted: &StarAlgebra, pis: &[Matrix<Scalar>]) -> Report {
    let n = t.dim();
    let na = twisted.dim();
    let rep_of = |x: &[Scalar]| {
        x.iter().enumerate().filter(|(_, c)| !c.is_zero()).fold(Matrix::zeros(n, n), |acc, (i, c)| &acc + &pis[i].scale(c))
    };
    let mut r = Report::new();
    let mut hom = Ok(());
    'h: for i in 0..na {
        for j in 0..na {
            if rep_of(&twisted.mul(&basis_vec(na, i), &basis_vec(na, j))) != &pis[i] * &pis[j] {
                hom = Err(format!("({}, {})", twisted.labels()[i], twisted.labels()[j]));
                break 'h;
            }
        }
    }
    r.record("π_σ multiplicative", hom);
    let star = (0..na).find(|&i| rep_of(&twisted.star_vec(&basis_vec(na, i))) != t.adjoint(&pis[i]));
    r.record("π_σ *-preserving", star.map_or(Ok(()), |i| Err(twisted.labels()[i].clone())));
    r.record("π_σ unital", if rep_of(&twisted.unit_vec()) == Matrix::identity(n) { Ok(()) } else { Err("π_σ(1) ≠ 1".into()) });
    r
}

/// `L²(B)` for the invariant state, with `β′₁Λ(b) = (id ⊗ Λ)β₁(b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gns {
    pub gram: Matrix<Scalar>,
    /// `β′₁` in coaction form: entry `(g, c, x)` of `coaction[b]` means `x g ⊗ Λ(e_c)`.
    pub coaction: Vec<Terms2>,
    pub fixed_dim: usize,
    pub report: Report,
}

pub fn gns(h: &FiniteHopfAlgebra, b: &GaloisObject) -> Result<Gns, HopfError> {
    let m = b.algebra.dim();
    let gram = b.algebra.gram(&b.state);
    if !is_positive_definite(&gram) {
        return Err(HopfError::NotFaithful("Gram matrix of ω is not positive definite".into()));
    }
    let mut report = Report::new();
    report.pass("ω faithful");
    // matrix coefficients v_ij with β′₁(Λe_j) = Σ_i v_ij ⊗ Λe_i
    let mut v: Vec<Terms> = vec![Vec::new(); m * m];
    for j in 0..m {
        for (g, i, c) in &b.left[j] {
            v[i * m + j].push((*g, c.clone()));
        }
    }
    let v: Vec<Terms> = v.into_iter().map(canonical).collect();
    report.record("β′₁ unitary", check_unitary(h, &b.algebra.gram(&b.state), &v, m));
    // fixed vectors: β′₁ξ = 1 ⊗ ξ
    let fixed = intertwiner_kernel(&[h.algebra().unit().clone()], 1, &b.left, m);
    let fixed_dim = fixed.dim();
    let unit_vec = b.algebra.unit_vec();
    let ergodic = fixed_dim == 1 && fixed.coords(&unit_vec).is_some();
    report.record("ergodic", if ergodic { Ok(()) } else { Err(format!("fixed space dimension {fixed_dim}")) });
    Ok(Gns { gram, coaction: b.left.clone(), fixed_dim, report })
}

/// `𝓗 ⊠ L²(B)` as an exact subspace of `𝓗 ⊗ L²(B)` with its Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxTensor {
    pub space: Subspace,
    pub gram: Matrix<Scalar>,
    /// `(group-like label, dim 𝓗_g, dim of the corresponding block of 𝓗 ⊠ L²(B))`
    pub blocks: Vec<(String, usize, usize)>,
}

fn tensor_gram(left: &Matrix<Scalar>, right: &Matrix<Scalar>, vecs: &[Vec<Scalar>]) -> Matrix<Scalar> {
    let g = left.kron(right);
    Matrix::from_fn(vecs.len(), vecs.len(), |i, j| {
        let gj = g.mul_vec(&vecs[j]);
        vecs[i].iter().zip(&gj).fold(Scalar::zero(), |acc, (a, b)| acc + a.conj() * b.clone())
    })
}

pub fn box_tensor_hilbert(h: &FiniteHopfAlgebra, gram: &Matrix<Scalar>, u: &[Terms], n: usize, l2: &Gns) -> BoxTensor {
    let m = l2.gram.nrows();
    let space = intertwiner_kernel(u, n, &l2.coaction, m);
    let g = tensor_gram(gram, &l2.gram, &space.basis);
    let mut blocks = Vec::new();
    for x in h.group_likes() {
        let label = h.algebra().labels()[x].clone();
        let iso = intertwiner_kernel(u, n, &[vec![(x, 0, Scalar::one())]], 1);
        // box equations plus ξ ∈ 𝓗_g ⊗ L²(B): u(ξ) = ξ ⊗ g on the first leg
        let mut rows = intertwiner_rows(u, n, &l2.coaction, m);
        let mut extra: BTreeMap<(usize, usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                for (gg, c) in &u[i * n + j] {
                    for b in 0..m {
                        let e = extra.entry((i, *gg, b)).or_default().entry(j * m + b).or_default();
                        *e = e.clone() + c.clone();
                    }
                }
            }
            for b in 0..m {
                let e = extra.entry((i, x, b)).or_default().entry(i * m + b).or_default();
                *e = e.clone() - Scalar::one();
            }
        }
        rows.extend(extra.into_values());
        let (_, basis) = kernel_of(n * m, rows);
        blocks.push((label, iso.dim(), basis.len()));
    }
    BoxTensor { space, gram: g, blocks }
}

/// Apply `Σ z[(a,b)] π(a) ⊗ L_b` to a vector of `𝓗 ⊗ L²(B)`.
fn act(rep: &[Matrix<Scalar>], b: &StarAlgebra, z: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let m = b.dim();
    let n = rep.first().map_or(0, Matrix::nrows);
    let mut out = vec![Scalar::zero(); n * m];
    for (idx, zc) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (a, bb) = (idx / m, idx % m);
        for (vi, vc) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (j, c) = (vi / m, vi % m);
            let w = zc.clone() * vc.clone();
            for (k, d) in b.basis_product(bb, c) {
                let wd = w.clone() * d.clone();
                for i in 0..n {
                    let p = &rep[a][(i, j)];
                    if !p.is_zero() {
                        let slot = &mut out[i * m + k];
                        *slot = slot.clone() + wd.clone() * p.clone();
                    }
                }
            }
        }
    }
    out
}

/// `(M ⊗ id)` applied to a vector of `𝓗 ⊗ W`.
fn apply_left(mat: &Matrix<Scalar>, m: usize, v: &[Scalar]) -> Vec<Scalar> {
    let n = mat.nrows();
    let mut out = vec![Scalar::zero(); n * m];
    for (vi, vc) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (j, c) = (vi / m, vi % m);
        for i in 0..n {
            let p = &mat[(i, j)];
            if !p.is_zero() {
                out[i * m + c] = out[i * m + c].clone() + p.clone() * vc.clone();
            }
        }
    }
    out
}

/// The literal deformation and everything built along the way.
#[derive(Clone, Debug)]
pub struct DeformedTriple {
    pub galois: GaloisObject,
    pub l2: Gns,
    pub hilbert: BoxTensor,
    pub algebra: Cotensor,
    /// `(Ã, H̃, D̃, Ũ, R̃)` over `H^σ`, in the kernel coordinates of `hilbert`.
    pub triple: FiniteEquivariantTriple,
    pub report: Report,
}

fn in_coords(space: &Subspace, v: &[Scalar], what: &str) -> Result<Vec<Scalar>, HopfError> {
    space.coords(v).ok_or_else(|| HopfError::Verification(format!("{what} leaves the subspace")))
}

/// `B = H #_{σ⁻¹} ℂ`, `H̃ = 𝓗 ⊠ L²(B)`, `Ã = A ⊡ B`, `D̃ = (D ⊗ id)|_H̃`,
/// `Ũ = (id ⊗ β′₂)|_H̃`, `R̃ = (R ⊗ id)|_H̃`.
pub fn deform_triple_finite(t: &FiniteEquivariantTriple, sigma: &DualCocycle) -> Result<DeformedTriple, HopfError> {
    let h = &t.hopf;
    let n = t.dim();
    first_failure(&check_dual_cocycle(h, sigma.table()), "cocycle")?;
    let hs = twist_hopf(h, sigma)?;
    let galois = smash_left(h, sigma)?;
    let l2 = gns(h, &galois)?;
    let m = galois.algebra.dim();
    let hilbert = box_tensor_hilbert(h, &t.gram, &t.corep, n, &l2);
    let space = &hilbert.space;
    let dk = space.dim();
    let mut report = Report::new();
    report.merge("gns", l2.report.clone());
    let restrict = |mat: &Matrix<Scalar>, what: &str| -> Result<Matrix<Scalar>, HopfError> {
        let cols = space.basis.iter().map(|k| in_coords(space, &apply_left(mat, m, k), what)).collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_fn(dk, dk, |i, j| cols[j][i].clone()))
    };
    let dirac = restrict(&t.dirac, "D ⊗ id")?;
    report.pass("D ⊗ id preserves H̃");
    let twist = restrict(&t.twist, "R ⊗ id")?;
    let algebra = cotensor(&t.algebra.algebra, &t.algebra.coaction, &galois.algebra, &galois.left)?;
    let dz = algebra.space.dim();
    let rep = (0..dz)
        .map(|p| {
            let z = &algebra.space.basis[p];
            let cols = space
                .basis
                .iter()
                .map(|k| in_coords(space, &act(&t.rep, &galois.algebra, z, k), "Ã action"))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Matrix::from_fn(dk, dk, |i, j| cols[j][i].clone()))
        })
        .collect::<Result<Vec<_>, HopfError>>()?;
    report.pass("Ã preserves H̃");
    // right coaction of H^σ on Ã: id ⊗ β₂
    let na = t.algebra.algebra.dim();
    let hd = hs.dim();
    let coaction = (0..dz)
        .map(|p| {
            let z = &algebra.space.basis[p];
            let mut slices = vec![vec![Scalar::zero(); na * m]; hd];
            for (idx, c) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (a, b) = (idx / m, idx % m);
                for (b0, g, d) in &galois.right[b] {
                    let slot = &mut slices[*g][a * m + b0];
                    *slot = slot.clone() + c.clone() * d.clone();
                }
            }
            let mut out = Vec::new();
            for (g, s) in slices.iter().enumerate() {
                let c = algebra.coords(s).ok_or_else(|| HopfError::Verification("β₂ leaves Ã".into()))?;
                out.extend(c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(q, x)| (q, g, x)));
            }
            Ok(canonical2(out))
        })
        .collect::<Result<Vec<_>, HopfError>>()?;
    // Ũ on H̃
    let mut corep: Vec<Terms> = vec![Vec::new(); dk * dk];
    for (j, kv) in space.basis.iter().enumerate() {
        let mut slices = vec![vec![Scalar::zero(); n * m]; hd];
        for (idx, c) in kv.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (i, b) = (idx / m, idx % m);
            for (b0, g, d) in &galois.right[b] {
                let slot = &mut slices[*g][i * m + b0];
                *slot = slot.clone() + c.clone() * d.clone();
            }
        }
        for (g, s) in slices.iter().enumerate() {
            let c = in_coords(space, s, "Ũ")?;
            for (k, x) in c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                corep[k * dk + j].push((g, x));
            }
        }
    }
    let corep = corep.into_iter().map(canonical).collect();
    let triple = FiniteEquivariantTriple {
        hopf: hs,
        algebra: ComoduleAlgebra { algebra: algebra.algebra.clone(), coaction, side: Side::Right },
        gram: hilbert.gram.clone(),
        rep,
        corep,
        dirac,
        twist,
    };
    report.merge("deformed triple", triple.check());
    let blocks_ok = hilbert.blocks.iter().all(|(_, a, b)| a == b);
    report.record(
        "isotypic blocks preserved",
        if blocks_ok { Ok(()) } else { Err(format!("{:?}", hilbert.blocks)) },
    );
    Ok(DeformedTriple { galois, l2, hilbert, algebra, triple, report })
}

impl DeformedTriple {
    /// Coordinates in `H̃` of `φ(ξ_j) = Σ_i ξ_i ⊗ Λ(u_ij)`, as columns.
    pub fn phi(&self, t: &FiniteEquivariantTriple) -> Result<Matrix<Scalar>, HopfError> {
        let n = t.dim();
        let m = self.galois.algebra.dim();
        let cols = (0..n)
            .map(|j| in_coords(&self.hilbert.space, &phi_vector(t, j, m), "φ"))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_fn(self.hilbert.space.dim(), n, |i, j| cols[j][i].clone()))
    }

    /// The deformed triple transported back to `𝓗` along `φ` and to `A` along
    /// `λ(a) = a₀ ⊗ a₁`. For trivial `σ` this is the input triple exactly.
    pub fn pullback(&self, t: &FiniteEquivariantTriple) -> Result<FiniteEquivariantTriple, HopfError> {
        let p = self.phi(t)?;
        let pinv = p.inverse().ok_or(HopfError::NotInvertible("φ".into()))?;
        let na = t.algebra.algebra.dim();
        let m = self.galois.algebra.dim();
        let lam = (0..na)
            .map(|a| {
                let mut v = vec![Scalar::zero(); na * m];
                for (a0, a1, c) in &t.algebra.coaction[a] {
                    v[a0 * m + a1] = v[a0 * m + a1].clone() + c.clone();
                }
                in_coords(&self.algebra.space, &v, "λ")
            })
            .collect::<Result<Vec<_>, _>>()?;
        let lam_m = Matrix::from_fn(self.algebra.space.dim(), na, |i, j| lam[j][i].clone());
        let lam_inv = lam_m.inverse().ok_or(HopfError::NotInvertible("λ".into()))?;
        let back = |coords: &[Scalar]| super::to_sparse(&lam_inv.mul_vec(coords));
        let cot = &self.algebra.algebra;
        let product = (0..na)
            .flat_map(|a| (0..na).map(move |b| (a, b)))
            .map(|(a, b)| back(&cot.mul(&lam[a], &lam[b])))
            .collect();
        let star = (0..na).map(|a| back(&cot.star_vec(&lam[a]))).collect();
        let unit = back(&cot.unit_vec());
        let algebra = StarAlgebra::new(na, product, unit, star, t.algebra.algebra.labels().to_vec())?;
        let tc = &self.triple.algebra.coaction;
        let coaction = (0..na)
            .map(|a| {
                let mut out = Vec::new();
                for (q, c) in lam[a].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (q2, g, d) in &tc[q] {
                        for (a2, e) in lam_inv.column(*q2).into_iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                            out.push((a2, *g, c.clone() * d.clone() * e));
                        }
                    }
                }
                canonical2(out)
            })
            .collect();
        let conj = |mm: &Matrix<Scalar>| &(&pinv * mm) * &p;
        let rep = (0..na)
            .map(|a| {
                let op = lam[a]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(Matrix::zeros(p.nrows(), p.nrows()), |acc, (q, c)| &acc + &self.triple.rep[q].scale(c));
                conj(&op)
            })
            .collect();
        let n = t.dim();
        let dk = p.nrows();
        let corep = (0..n * n)
            .map(|ij| {
                let (i, j) = (ij / n, ij % n);
                let mut out = Vec::new();
                for k in 0..dk {
                    if pinv[(i, k)].is_zero() {
                        continue;
                    }
                    for l in 0..dk {
                        if p[(l, j)].is_zero() {
                            continue;
                        }
                        out.extend(scale_terms(&self.triple.corep[k * dk + l], &(pinv[(i, k)].clone() * p[(l, j)].clone())));
                    }
                }
                canonical(out)
            })
            .collect();
        Ok(FiniteEquivariantTriple {
            hopf: self.triple.hopf.clone(),
            algebra: ComoduleAlgebra { algebra, coaction, side: Side::Right },
            gram: &(&p.adjoint() * &self.triple.gram) * &p,
            rep,
            corep,
            dirac: conj(&self.triple.dirac),
            twist: conj(&self.triple.twist),
        })
    }
}

fn phi_vector(t: &FiniteEquivariantTriple, j: usize, m: usize) -> Vec<Scalar> {
    let n = t.dim();
    let mut v = vec![Scalar::zero(); n * m];
    for i in 0..n {
        for (b, c) in &t.corep[i * n + j] {
            v[i * m + b] = v[i * m + b].clone() + c.clone();
        }
    }
    v
}

/// Compare `(A #_{σ⁻¹} ℂ, 𝓗, D)` with `π_σ` against the literal deformation via
/// the unitary `φ(ξ) = Y(ξ ⊗ 1)`, `Y = (id ⊗ χ)(U)`.
pub fn verify_cocycle_equivalence(t: &FiniteEquivariantTriple, sigma: &DualCocycle, convention: StarConvention) -> Result<Report, HopfError> {
    let h = &t.hopf;
    let n = t.dim();
    let mut r = Report::new();
    r.merge("input", t.check());
    r.merge("cocycle", check_dual_cocycle(h, sigma.table()));
    let d = deform_triple_finite(t, sigma)?;
    r.merge("literal", d.report.clone());
    let twisted = twist_comodule_algebra_with(h, &t.algebra, sigma, convention)?;
    let pis = pi_sigma(t, sigma);
    r.merge("twisted", check_pi_sigma(t, &twisted.algebra, &pis));
    let m = d.galois.algebra.dim();
    let space = &d.hilbert.space;
    let phis: Vec<Vec<Scalar>> = (0..n).map(|j| phi_vector(t, j, m)).collect();
    let inside = phis.iter().all(|v| space.coords(v).is_some());
    r.record("φ maps into H̃", if inside { Ok(()) } else { Err("φ(ξ) not in the kernel".into()) });
    let g = tensor_gram(&t.gram, &d.l2.gram, &phis);
    r.record("φ isometric", if g == t.gram { Ok(()) } else { Err("⟨φξ, φη⟩ ≠ ⟨ξ, η⟩".into()) });
    let onto = space.dim() == n && d.phi(t).map(|p| p.rank() == n).unwrap_or(false);
    r.record("φ onto H̃", if onto { Ok(()) } else { Err(format!("dim H̃ = {}, dim 𝓗 = {n}", space.dim())) });
    // φD = D̃φ on the ambient space, and in kernel coordinates
    let mut resid = Ok(());
    for j in 0..n {
        let lhs = apply_left(&t.dirac, m, &phis[j]);
        let mut rhs = vec![Scalar::zero(); n * m];
        for k in 0..n {
            let c = &t.dirac[(k, j)];
            if c.is_zero() {
                continue;
            }
            for (s, x) in rhs.iter_mut().zip(&phis[k]) {
                *s = s.clone() + c.clone() * x.clone();
            }
        }
        if lhs != rhs {
            resid = Err(format!("column {j}"));
            break;
        }
    }
    r.record("‖φD − D̃φ‖ = 0", resid);
    if let Ok(p) = d.phi(t) {
        let ok = &d.triple.dirac * &p == &p * &t.dirac;
        r.record("D̃ P = P D in kernel coordinates", if ok { Ok(()) } else { Err("mismatch".into()) });
    }
    // φ(π_σ(a)ξ) = (id ⊗ χ)α(a) φ(ξ)
    let na = t.algebra.algebra.dim();
    let mut module = Ok(());
    'm: for a in 0..na {
        let mut z = vec![Scalar::zero(); na * m];
        for (a0, a1, c) in &t.algebra.coaction[a] {
            z[a0 * m + a1] = z[a0 * m + a1].clone() + c.clone();
        }
        for j in 0..n {
            let lhs: Vec<Scalar> = {
                let col = pis[a].column(j);
                let mut v = vec![Scalar::zero(); n * m];
                for (k, c) in col.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (s, x) in v.iter_mut().zip(&phis[k]) {
                        *s = s.clone() + c.clone() * x.clone();
                    }
                }
                v
            };
            let rhs = act(&t.rep, &d.galois.algebra, &z, &phis[j]);
            if lhs != rhs {
                module = Err(format!("algebra element {}, vector {j}", t.algebra.algebra.labels()[a]));
                break 'm;
            }
        }
    }
    r.record("φ intertwines π_σ with Ã", module);
    let same_spec = d.triple.dirac.char_poly() == t.dirac.char_poly();
    r.record("Sp D̃ = Sp D", if same_spec { Ok(()) } else { Err("characteristic polynomials differ".into()) });
    Ok(r)
}

/// Round trip: deform by `σ`, then deform the result by `σ⁻¹` over `H^σ`,
/// and compare with the input through `θ = φ̃ ∘ φ`.
pub fn check_round_trip(t: &FiniteEquivariantTriple, sigma: &DualCocycle) -> Result<Report, HopfError> {
    let h = &t.hopf;
    let n = t.dim();
    let mut r = Report::new();
    let d1 = deform_triple_finite(t, sigma)?;
    let t1 = &d1.triple;
    let inv = sigma.inverted();
    r.merge("inverse cocycle on H^σ", check_dual_cocycle(&t1.hopf, inv.table()));
    let d2 = deform_triple_finite(t1, &inv)?;
    r.record(
        "(H^σ)^{σ⁻¹} = H",
        if d2.triple.hopf == *h { Ok(()) } else { Err("twisting back does not recover the structure tensors".into()) },
    );
    let p = d1.phi(t)?;
    let k1 = t1.dim();
    let m2 = d2.galois.algebra.dim();
    // θ(ξ_j) = Σ_r P[r,j] Σ_s η_s ⊗ Λ̃(ũ_sr)
    let thetas: Vec<Vec<Scalar>> = (0..n)
        .map(|j| {
            let mut v = vec![Scalar::zero(); k1 * m2];
            for rr in 0..k1 {
                let c = &p[(rr, j)];
                if c.is_zero() {
                    continue;
                }
                for s in 0..k1 {
                    for (b, x) in &t1.corep[s * k1 + rr] {
                        v[s * m2 + b] = v[s * m2 + b].clone() + c.clone() * x.clone();
                    }
                }
            }
            v
        })
        .collect();
    let space2 = &d2.hilbert.space;
    let coords: Option<Vec<Vec<Scalar>>> = thetas.iter().map(|v| space2.coords(v)).collect();
    let Some(coords) = coords else {
        r.fail("θ maps into the twice-deformed space", "θ(ξ) not in the kernel");
        return Ok(r);
    };
    r.pass("θ maps into the twice-deformed space");
    let theta = Matrix::from_fn(space2.dim(), n, |i, j| coords[j][i].clone());
    r.record(
        "θ bijective",
        if space2.dim() == n && theta.rank() == n { Ok(()) } else { Err(format!("dim = {}", space2.dim())) },
    );
    let g = tensor_gram(&t1.gram, &d2.l2.gram, &thetas);
    r.record("θ isometric", if g == t.gram { Ok(()) } else { Err("inner products differ".into()) });
    r.record(
        "θ D = D̃̃ θ",
        if &d2.triple.dirac * &theta == &theta * &t.dirac { Ok(()) } else { Err("mismatch".into()) },
    );
    // θ(π(a)ξ) = ι(a)θ(ξ), ι(a) = π̃(λ(a₀)) ⊗ L̃_{a₁}
    let na = t.algebra.algebra.dim();
    let m1 = d1.galois.algebra.dim();
    let mut module = Ok(());
    'm: for a in 0..na {
        let mut op = Matrix::zeros(k1 * m2, k1 * m2);
        for (a0, a1, c) in &t.algebra.coaction[a] {
            let mut lam = vec![Scalar::zero(); na * m1];
            for (x, y, e) in &t.algebra.coaction[*a0] {
                lam[x * m1 + y] = lam[x * m1 + y].clone() + e.clone();
            }
            let Some(zc) = d1.algebra.coords(&lam) else {
                module = Err("λ(a) not in Ã".into());
                break 'm;
            };
            let pi1 = zc.iter().enumerate().filter(|(_, x)| !x.is_zero()).fold(Matrix::zeros(k1, k1), |acc, (q, x)| &acc + &t1.rep[q].scale(x));
            let lmul = d2.galois.algebra.left_regular(&basis_vec(m2, *a1));
            op = &op + &pi1.kron(&lmul).scale(c);
        }
        for j in 0..n {
            let lhs = t.rep[a].column(j).iter().enumerate().fold(vec![Scalar::zero(); k1 * m2], |mut acc, (k, c)| {
                if !c.is_zero() {
                    for (s, x) in acc.iter_mut().zip(&thetas[k]) {
                        *s = s.clone() + c.clone() * x.clone();
                    }
                }
                acc
            });
            if lhs != op.mul_vec(&thetas[j]) {
                module = Err(format!("algebra element {}, vector {j}", t.algebra.algebra.labels()[a]));
                break 'm;
            }
        }
    }
    r.record("θ intertwines π with the twice-deformed algebra", module);
    // θ intertwines u with the twice-deformed corepresentation
    let k2 = space2.dim();
    let mut cov = Ok(());
    'c: for s in 0..k2 {
        for j in 0..n {
            let mut lhs = Vec::new();
            for i in 0..n {
                lhs.extend(scale_terms(&t.corep[i * n + j], &theta[(s, i)]));
            }
            let mut rhs = Vec::new();
            for k in 0..k2 {
                rhs.extend(scale_terms(&d2.triple.corep[s * k2 + k], &theta[(k, j)]));
            }
            if canonical(lhs) != canonical(rhs) {
                cov = Err(format!("entry ({s}, {j})"));
                break 'c;
            }
        }
    }
    r.record("θ intertwines the corepresentations", cov);
    Ok(r)
}

/// `B ⊡_{H^σ} B̃ ≅ H` via `h ↦ h₁ ⊗ h₂`, with `Δ` matching `β₁ ⊗ id`.
pub fn reconstruct_hopf(h: &FiniteHopfAlgebra, sigma: &DualCocycle) -> Result<Report, HopfError> {
    let mut r = Report::new();
    let hs = twist_hopf(h, sigma)?;
    let b = smash_left(h, sigma)?;
    let bt = smash_left(&hs, &sigma.inverted())?;
    let cot = cotensor(&b.algebra, &b.right, &bt.algebra, &bt.left)?;
    let n = h.dim();
    let (m1, m2) = (b.algebra.dim(), bt.algebra.dim());
    let embed = |x: &[Scalar]| {
        let mut v = vec![Scalar::zero(); m1 * m2];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (p, q, d) in h.coproduct(i) {
                v[p * m2 + q] = v[p * m2 + q].clone() + c.clone() * d.clone();
            }
        }
        v
    };
    let images: Vec<Vec<Scalar>> = (0..n).map(|i| embed(&basis_vec(n, i))).collect();
    let coords: Option<Vec<Vec<Scalar>>> = images.iter().map(|v| cot.coords(v)).collect();
    let Some(coords) = coords else {
        r.fail("image in cotensor", "h₁ ⊗ h₂ not in B ⊡ B̃");
        return Ok(r);
    };
    r.pass("image in cotensor");
    let mat = Matrix::from_fn(cot.space.dim(), n, |i, j| coords[j][i].clone());
    r.record(
        "bijective",
        if cot.space.dim() == n && mat.rank() == n { Ok(()) } else { Err(format!("dim cotensor = {}", cot.space.dim())) },
    );
    let alg = h.algebra();
    let mut mult = Ok(());
    'm: for i in 0..n {
        for j in 0..n {
            if embed(&alg.mul(&basis_vec(n, i), &basis_vec(n, j))) != cot.ambient.mul(&images[i], &images[j]) {
                mult = Err(format!("({}, {})", alg.labels()[i], alg.labels()[j]));
                break 'm;
            }
        }
    }
    r.record("multiplicative", mult);
    let star = (0..n).find(|&i| embed(&alg.star_vec(&basis_vec(n, i))) != cot.ambient.star_vec(&images[i]));
    r.record("star-preserving", star.map_or(Ok(()), |i| Err(alg.labels()[i].clone())));
    r.record("unital", if embed(&alg.unit_vec()) == cot.ambient.unit_vec() { Ok(()) } else { Err("unit".into()) });
    // (β₁ ⊗ id)(h₁ ⊗ h₂) = h₁ ⊗ (h₂ ⊗ h₃)
    let bad = (0..n).find(|&i| {
        let mut lhs = BTreeMap::new();
        for (p, q, c) in h.coproduct(i) {
            for (g, p0, d) in &b.left[*p] {
                let e: &mut Scalar = lhs.entry((*g, *p0, *q)).or_default();
                *e = e.clone() + c.clone() * d.clone();
            }
        }
        let mut rhs = BTreeMap::new();
        for (x, y, c) in h.coproduct(i) {
            for (p, q, d) in h.coproduct(*y) {
                let e: &mut Scalar = rhs.entry((*x, *p, *q)).or_default();
                *e = e.clone() + c.clone() * d.clone();
            }
        }
        lhs.retain(|_, v: &mut Scalar| !v.is_zero());
        rhs.retain(|_, v: &mut Scalar| !v.is_zero());
        lhs != rhs
    });
    r.record("coproduct matches β₁ ⊗ id", bad.map_or(Ok(()), |i| Err(alg.labels()[i].clone())));
    Ok(r)
}
