//! Inducing Galois objects along a Hopf quotient `π: H₁ → G₁` and restricting
//! them to a sub-Hopf algebra.

use super::algebra::{basis_vec, canonical, canonical2, FiniteHopfAlgebra, StarAlgebra};
use super::cocycle::{check_dual_cocycle, twist_hopf, DualCocycle};
use super::comodule::{cotensor, kernel_of, smash_left, Subspace};
use super::{add_to, HopfError, Scalar, Terms, Terms2};
use crate::linalg::Matrix;
use crate::report::Report;
use crate::scalar::Field;
use std::collections::BTreeMap;

/// A surjective Hopf *-morphism `π: H₁ → target`, `map[i] = π(e_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfQuotient {
    pub target: FiniteHopfAlgebra,
    pub map: Vec<Terms>,
}

fn apply(map: &[Terms], x: &Terms) -> Terms {
    let mut out = Vec::new();
    for (i, c) in x {
        out.extend(map[*i].iter().map(|(j, d)| (*j, c.clone() * d.clone())));
    }
    canonical(out)
}

impl HopfQuotient {
    /// Quotient of group algebras induced by a surjective group homomorphism,
    /// given by the image of each basis element.
    pub fn from_group_map(source: &FiniteHopfAlgebra, target: FiniteHopfAlgebra, images: &[usize]) -> Result<Self, HopfError> {
        if images.len() != source.dim() || images.iter().any(|&j| j >= target.dim()) {
            return Err(HopfError::Shape("group map".into()));
        }
        Ok(HopfQuotient { target, map: images.iter().map(|&j| vec![(j, Scalar::one())]).collect() })
    }

    /// `π` is a unital *-homomorphism, a coalgebra map and surjective.
    pub fn check(&self, source: &FiniteHopfAlgebra) -> Report {
        let mut r = Report::new();
        let (sa, ta) = (source.algebra(), self.target.algebra());
        let n = source.dim();
        let mult = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| apply(&self.map, sa.basis_product(i, j)) != ta.mul_terms(&self.map[i], &self.map[j]));
        r.record("π multiplicative", mult.map_or(Ok(()), |(i, j)| Err(format!("({i}, {j})"))));
        r.record(
            "π unital",
            if apply(&self.map, sa.unit()) == canonical(ta.unit().clone()) { Ok(()) } else { Err("π(1) ≠ 1".into()) },
        );
        let star = (0..n).find(|&i| apply(&self.map, sa.basis_star(i)) != ta.star_terms(&self.map[i]));
        r.record("π *-preserving", star.map_or(Ok(()), |i| Err(sa.labels()[i].clone())));
        let cop = (0..n).find(|&i| {
            let lhs = self.target.comul_terms(&self.map[i]);
            let mut rhs = Vec::new();
            for (a, b, c) in source.coproduct(i) {
                for (x, d) in &self.map[*a] {
                    for (y, e) in &self.map[*b] {
                        rhs.push((*x, *y, c.clone() * d.clone() * e.clone()));
                    }
                }
            }
            lhs != canonical2(rhs)
        });
        r.record("π comultiplicative", cop.map_or(Ok(()), |i| Err(sa.labels()[i].clone())));
        let counit = (0..n).find(|&i| super::eval(self.target.counit(), &self.map[i]) != source.counit()[i]);
        r.record("π counital", counit.map_or(Ok(()), |i| Err(sa.labels()[i].clone())));
        let m = self.target.dim();
        let image = Matrix::from_fn(m, n, |j, i| self.map[i].iter().find(|(k, _)| *k == j).map_or(Scalar::zero(), |(_, c)| c.clone()));
        r.record("π surjective", if image.rank() == m { Ok(()) } else { Err(format!("rank {} < {m}", image.rank())) });
        r
    }

    /// `σ ∘ (π ⊗ π)` as a table on `H₁`.
    pub fn pull_back(&self, source: &FiniteHopfAlgebra, sigma: &DualCocycle) -> Result<DualCocycle, HopfError> {
        let n = source.dim();
        let table = Matrix::from_fn(n, n, |i, j| sigma.eval(&self.map[i], &self.map[j]));
        DualCocycle::new(source, table)
    }

    /// `(id ⊗ π)Δ`
    fn right_coaction(&self, source: &FiniteHopfAlgebra) -> Vec<Terms2> {
        (0..source.dim())
            .map(|i| {
                let mut out = Vec::new();
                for (a, b, c) in source.coproduct(i) {
                    out.extend(self.map[*b].iter().map(|(y, d)| (*a, *y, c.clone() * d.clone())));
                }
                canonical2(out)
            })
            .collect()
    }

    /// `(π ⊗ id)Δ`
    fn left_coaction(&self, source: &FiniteHopfAlgebra) -> Vec<Terms2> {
        (0..source.dim())
            .map(|i| {
                let mut out = Vec::new();
                for (a, b, c) in source.coproduct(i) {
                    out.extend(self.map[*a].iter().map(|(x, d)| (*x, *b, c.clone() * d.clone())));
                }
                canonical2(out)
            })
            .collect()
    }
}

fn check_algebra_map(
    name: &str,
    r: &mut Report,
    source: &StarAlgebra,
    target: &StarAlgebra,
    space: &Subspace,
    image: &dyn Fn(&[Scalar]) -> Vec<Scalar>,
) {
    let n = source.dim();
    let imgs: Vec<Vec<Scalar>> = (0..n).map(|i| image(&basis_vec(n, i))).collect();
    let coords: Option<Vec<Vec<Scalar>>> = imgs.iter().map(|v| space.coords(v)).collect();
    match coords {
        None => {
            r.fail(format!("{name}: image in cotensor"), "image leaves the cotensor product");
            return;
        }
        Some(c) => {
            r.pass(format!("{name}: image in cotensor"));
            let mat = Matrix::from_fn(space.dim(), n, |i, j| c[j][i].clone());
            let ok = space.dim() == n && mat.rank() == n;
            r.record(format!("{name}: bijective"), if ok { Ok(()) } else { Err(format!("dims {} vs {n}", space.dim())) });
        }
    }
    let mut mult = Ok(());
    'm: for i in 0..n {
        for j in 0..n {
            if image(&source.mul(&basis_vec(n, i), &basis_vec(n, j))) != target.mul(&imgs[i], &imgs[j]) {
                mult = Err(format!("({}, {})", source.labels()[i], source.labels()[j]));
                break 'm;
            }
        }
    }
    r.record(format!("{name}: multiplicative"), mult);
    let star = (0..n).find(|&i| image(&source.star_vec(&basis_vec(n, i))) != target.star_vec(&imgs[i]));
    r.record(format!("{name}: star-preserving"), star.map_or(Ok(()), |i| Err(source.labels()[i].clone())));
    r.record(
        format!("{name}: unital"),
        if image(&source.unit_vec()) == target.unit_vec() { Ok(()) } else { Err("unit".into()) },
    );
}

/// Verifies `B′ ≅ H₁ ⊡_{G₁} B` via `h ↦ h₁ ⊗ π(h₂)` and
/// `H₁^{σπ} ≅ B̃ ⊡_{G₁} H₁ ⊡_{G₁} B` via `h ↦ π(h₁) ⊗ h₂ ⊗ π(h₃)`, including
/// the coproduct `x ⊗ h ⊗ b ↦ x ⊗ h₁ ⊗ π(h₂) ⊗ π(h₃) ⊗ h₄ ⊗ b`.
pub fn cotensor_chain_supergroup(h1: &FiniteHopfAlgebra, quotient: &HopfQuotient, sigma: &DualCocycle) -> Result<Report, HopfError> {
    let mut r = Report::new();
    let qc = quotient.check(h1);
    if let Some(c) = qc.first_failure() {
        return Err(HopfError::Verification(format!("π is not a Hopf surjection: {} {}", c.name, c.detail.clone().unwrap_or_default())));
    }
    r.merge("quotient", qc);
    let g1 = &quotient.target;
    r.merge("cocycle", check_dual_cocycle(g1, sigma.table()));
    let lifted = quotient.pull_back(h1, sigma)?;
    r.merge("lifted cocycle", check_dual_cocycle(h1, lifted.table()));
    let (n, m) = (h1.dim(), g1.dim());

    let b = smash_left(g1, sigma)?;
    let b_lift = smash_left(h1, &lifted)?;
    let right = quotient.right_coaction(h1);
    let cot = cotensor(h1.algebra(), &right, &b.algebra, &b.left)?;
    let first = |x: &[Scalar]| {
        let mut v = vec![Scalar::zero(); n * m];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (a, bb, d) in h1.coproduct(i) {
                for (y, e) in &quotient.map[*bb] {
                    add_to(&mut v[a * m + y], c.clone() * d.clone() * e.clone());
                }
            }
        }
        v
    };
    check_algebra_map("B′ ≅ H₁ ⊡ B", &mut r, &b_lift.algebra, &cot.ambient, &cot.space, &first);

    // B̃ over G₁^σ, whose right coaction lands in (G₁^σ)^{σ⁻¹} = G₁
    let gs = twist_hopf(g1, sigma)?;
    let inv = sigma.inverted();
    let back = twist_hopf(&gs, &inv)?;
    r.record("(G₁^σ)^{σ⁻¹} = G₁", if back == *g1 { Ok(()) } else { Err("structure tensors differ".into()) });
    let bt = smash_left(&gs, &inv)?;
    let h2 = twist_hopf(h1, &lifted)?;
    // joint kernel in B̃ ⊗ H₁ ⊗ B, index (x * n + h) * m + b
    let left = quotient.left_coaction(h1);
    let dim3 = m * n * m;
    let idx = |x: usize, h: usize, y: usize| (x * n + h) * m + y;
    let mut rows: BTreeMap<(u8, usize, usize, usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
    let mut add = |key, col, v: Scalar| {
        let e = rows.entry(key).or_default().entry(col).or_default();
        add_to(e, v);
    };
    for x in 0..m {
        for h in 0..n {
            for y in 0..m {
                for (x0, g, c) in &bt.right[x] {
                    add((0, *x0, *g, h, y), idx(x, h, y), c.clone());
                }
                for (g, h0, c) in &left[h] {
                    add((0, x, *g, *h0, y), idx(x, h, y), -c.clone());
                }
                for (h0, g, c) in &right[h] {
                    add((1, x, *h0, *g, y), idx(x, h, y), c.clone());
                }
                for (g, y0, c) in &b.left[y] {
                    add((1, x, h, *g, *y0), idx(x, h, y), -c.clone());
                }
            }
        }
    }
    let (free, basis) = kernel_of(dim3, rows.into_values());
    let space = Subspace { ambient: dim3, free, basis };
    let ambient = bt.algebra.tensor(h1.algebra()).tensor(&b.algebra);
    let second = |x: &[Scalar]| {
        let mut v = vec![Scalar::zero(); dim3];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (a, hh, bb, d) in h1.coproduct3(i) {
                for (p, e) in &quotient.map[a] {
                    for (q, f) in &quotient.map[bb] {
                        add_to(&mut v[idx(*p, hh, *q)], c.clone() * d.clone() * e.clone() * f.clone());
                    }
                }
            }
        }
        v
    };
    check_algebra_map("H₂ ≅ B̃ ⊡ H₁ ⊡ B", &mut r, h2.algebra(), &ambient, &space, &second);
    // coproduct on the ambient triple tensor
    let delta = |v: &[Scalar]| {
        let mut out: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (x, h, y) = (k / (n * m), (k / m) % n, k % m);
            for (h1_, h2_, c2) in h1.coproduct(h) {
                for (a, bb, d) in h1.coproduct(*h1_) {
                    for (p, e) in &quotient.map[*bb] {
                        for (cc, dd, f) in h1.coproduct(*h2_) {
                            for (q, g) in &quotient.map[*cc] {
                                let w = c.clone() * c2.clone() * d.clone() * e.clone() * f.clone() * g.clone();
                                let slot = out.entry((idx(x, *a, *p), idx(*q, *dd, y))).or_default();
                                add_to(slot, w);
                            }
                        }
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    let bad = (0..n).find(|&i| {
        let lhs = delta(&second(&basis_vec(n, i)));
        let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (a, bb, c) in h2.coproduct(i) {
            let (va, vb) = (second(&basis_vec(n, *a)), second(&basis_vec(n, *bb)));
            for (p, x) in va.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (q, y) in vb.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    add_to(rhs.entry((p, q)).or_default(), c.clone() * x.clone() * y.clone());
                }
            }
        }
        rhs.retain(|_, v| !v.is_zero());
        lhs != rhs
    });
    r.record("H₂ ≅ B̃ ⊡ H₁ ⊡ B: comultiplicative", bad.map_or(Ok(()), |i| Err(h1.algebra().labels()[i].clone())));
    Ok(r)
}

/// The sub-Hopf algebra spanned by a set of basis elements.
pub fn restrict_hopf(h: &FiniteHopfAlgebra, sub: &[usize]) -> Result<FiniteHopfAlgebra, HopfError> {
    let pos: BTreeMap<usize, usize> = sub.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let closed = |t: &Terms| -> Result<Terms, HopfError> {
        t.iter()
            .map(|(i, c)| pos.get(i).map(|&k| (k, c.clone())).ok_or_else(|| HopfError::Shape(format!("basis element {i} outside the subalgebra"))))
            .collect()
    };
    let alg = h.algebra();
    let mut product = Vec::new();
    for &i in sub {
        for &j in sub {
            product.push(closed(alg.basis_product(i, j))?);
        }
    }
    let star = sub.iter().map(|&i| closed(alg.basis_star(i))).collect::<Result<Vec<_>, _>>()?;
    let labels = sub.iter().map(|&i| alg.labels()[i].clone()).collect();
    let algebra = StarAlgebra::new(sub.len(), product, closed(alg.unit())?, star, labels)?;
    let coproduct = sub
        .iter()
        .map(|&i| {
            h.coproduct(i)
                .iter()
                .map(|(a, b, c)| match (pos.get(a), pos.get(b)) {
                    (Some(&x), Some(&y)) => Ok((x, y, c.clone())),
                    _ => Err(HopfError::Shape("coproduct leaves the subalgebra".into())),
                })
                .collect::<Result<Terms2, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let counit = sub.iter().map(|&i| h.counit()[i].clone()).collect();
    let antipode = sub.iter().map(|&i| closed(h.antipode(i))).collect::<Result<Vec<_>, _>>()?;
    FiniteHopfAlgebra::new(algebra, coproduct, counit, antipode)
}

/// `B′ = {b ∈ B : β₁(b) ∈ A₁ ⊗ B}` for `A₁` spanned by `sub`, compared with the
/// Galois object of `A₁` for the restricted cocycle.
pub fn check_subobject(h: &FiniteHopfAlgebra, sub: &[usize], sigma: &DualCocycle) -> Result<Report, HopfError> {
    let mut r = Report::new();
    let a1 = restrict_hopf(h, sub)?;
    r.merge("sub-Hopf algebra", a1.check());
    let b = smash_left(h, sigma)?;
    let n = h.dim();
    let inside: Vec<bool> = (0..n).map(|i| sub.contains(&i)).collect();
    // components of β₁(b) with first leg outside A₁ vanish
    let mut rows: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>> = BTreeMap::new();
    for bb in 0..n {
        for (g, b0, c) in &b.left[bb] {
            if !inside[*g] {
                add_to(rows.entry((*g, *b0)).or_default().entry(bb).or_default(), c.clone());
            }
        }
    }
    let (free, basis) = kernel_of(n, rows.into_values());
    let space = Subspace { ambient: n, free, basis };
    let spans = sub.iter().all(|&i| space.coords(&basis_vec(n, i)).is_some()) && space.dim() == sub.len();
    r.record("B′ spanned by the subalgebra basis", if spans { Ok(()) } else { Err(format!("dim B′ = {}", space.dim())) });
    let table = Matrix::from_fn(sub.len(), sub.len(), |i, j| sigma.table()[(sub[i], sub[j])].clone());
    let restricted = DualCocycle::new(&a1, table)?;
    r.merge("restricted cocycle", check_dual_cocycle(&a1, restricted.table()));
    let b1 = smash_left(&a1, &restricted)?;
    let bad = (0..sub.len()).flat_map(|i| (0..sub.len()).map(move |j| (i, j))).find(|&(i, j)| {
        let big: Terms = b.algebra.basis_product(sub[i], sub[j]).clone();
        let small: Terms = b1.algebra.basis_product(i, j).iter().map(|(k, c)| (sub[*k], c.clone())).collect();
        canonical(big) != canonical(small)
    });
    r.record("product of B restricts to B′", bad.map_or(Ok(()), |(i, j)| Err(format!("({i}, {j})"))));
    let coact = (0..sub.len()).find(|&i| {
        let big: Terms2 = b.left[sub[i]].clone();
        let small: Terms2 = b1.left[i].iter().map(|(g, k, c)| (sub[*g], sub[*k], c.clone())).collect();
        canonical2(big) != canonical2(small)
    });
    r.record("β₁ restricts to the coaction of B′", coact.map_or(Ok(()), |i| Err(format!("{i}"))));
    Ok(r)
}
