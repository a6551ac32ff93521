//! Finite-dimensional *-algebras and Hopf *-algebras given by structure tensors.

use super::{add_to, HopfError, Scalar, Terms, Terms2};
use crate::linalg::{Matrix, SparseEchelon};
use crate::report::Report;
use crate::scalar::Field;
use std::collections::BTreeMap;

/// Normalize a sparse combination: merge repeated indices, drop zeros, sort.
pub fn canonical(t: Terms) -> Terms {
    let mut m: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, c) in t {
        let e = m.entry(i).or_default();
        *e = e.clone() + c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn canonical2(t: Terms2) -> Terms2 {
    let mut m: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (i, j, c) in t {
        let e = m.entry((i, j)).or_default();
        *e = e.clone() + c;
    }
    m.into_iter().filter(|(_, c)| !c.is_zero()).map(|((i, j), c)| (i, j, c)).collect()
}

pub fn to_dense(t: &Terms, dim: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    for (i, c) in t {
        v[*i] = v[*i].clone() + c.clone();
    }
    v
}

pub fn to_sparse(v: &[Scalar]) -> Terms {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn basis_vec(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::one();
    v
}

/// Apply a linear functional given by its values on the basis.
pub fn eval(f: &[Scalar], x: &Terms) -> Scalar {
    x.iter().fold(Scalar::zero(), |acc, (i, c)| acc + c.clone() * f[*i].clone())
}

/// Unital *-algebra with basis `0..dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarAlgebra {
    dim: usize,
    /// `product[i * dim + j] = e_i e_j`
    product: Vec<Terms>,
    unit: Terms,
    /// `star[i] = e_i*`; extended antilinearly
    star: Vec<Terms>,
    labels: Vec<String>,
}

impl StarAlgebra {
    pub fn new(dim: usize, product: Vec<Terms>, unit: Terms, star: Vec<Terms>, labels: Vec<String>) -> Result<Self, HopfError> {
        if product.len() != dim * dim || star.len() != dim || labels.len() != dim {
            return Err(HopfError::Shape(format!("algebra of dimension {dim} with mismatched tables")));
        }
        Ok(StarAlgebra {
            dim,
            product: product.into_iter().map(canonical).collect(),
            unit: canonical(unit),
            star: star.into_iter().map(canonical).collect(),
            labels,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Terms {
        &self.product[i * self.dim + j]
    }

    pub fn unit(&self) -> &Terms {
        &self.unit
    }

    pub fn basis_star(&self, i: usize) -> &Terms {
        &self.star[i]
    }

    pub fn unit_vec(&self) -> Vec<Scalar> {
        to_dense(&self.unit, self.dim)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a.clone() * b.clone();
                for (k, c) in self.basis_product(i, j) {
                    add_to(&mut out[*k], ab.clone() * c.clone());
                }
            }
        }
        out
    }

    pub fn mul_terms(&self, x: &Terms, y: &Terms) -> Terms {
        let mut out = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a.clone() * b.clone();
                out.extend(self.basis_product(*i, *j).iter().map(|(k, c)| (*k, ab.clone() * c.clone())));
            }
        }
        canonical(out)
    }

    pub fn star_vec(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            let ac = a.conj();
            for (k, c) in &self.star[i] {
                add_to(&mut out[*k], ac.clone() * c.clone());
            }
        }
        out
    }

    pub fn star_terms(&self, x: &Terms) -> Terms {
        let mut out = Vec::new();
        for (i, a) in x {
            let ac = a.conj();
            out.extend(self.star[*i].iter().map(|(k, c)| (*k, ac.clone() * c.clone())));
        }
        canonical(out)
    }

    /// Matrix of left multiplication by `x` in the basis.
    pub fn left_regular(&self, x: &[Scalar]) -> Matrix<Scalar> {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul(x, &basis_vec(self.dim, j));
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Associativity, unit law, and the *-axioms on all basis triples/pairs.
    pub fn check(&self) -> Report {
        let n = self.dim;
        let mut r = Report::new();
        let e = |i: usize| basis_vec(n, i);
        let mut assoc = Ok(());
        'outer: for i in 0..n {
            for j in 0..n {
                let ij = self.mul(&e(i), &e(j));
                for k in 0..n {
                    let jk = self.mul(&e(j), &e(k));
                    if self.mul(&ij, &e(k)) != self.mul(&e(i), &jk) {
                        assoc = Err(format!("({}, {}, {})", self.labels[i], self.labels[j], self.labels[k]));
                        break 'outer;
                    }
                }
            }
        }
        r.record("associativity", assoc);
        let u = self.unit_vec();
        let unit = (0..n)
            .find(|&i| self.mul(&u, &e(i)) != e(i) || self.mul(&e(i), &u) != e(i))
            .map_or(Ok(()), |i| Err(self.labels[i].clone()));
        r.record("unit", unit);
        let invol = (0..n)
            .find(|&i| self.star_vec(&self.star_vec(&e(i))) != e(i))
            .map_or(Ok(()), |i| Err(self.labels[i].clone()));
        r.record("star involutive", invol);
        let mut anti = Ok(());
        'anti: for i in 0..n {
            for j in 0..n {
                let lhs = self.star_vec(&self.mul(&e(i), &e(j)));
                let rhs = self.mul(&self.star_vec(&e(j)), &self.star_vec(&e(i)));
                if lhs != rhs {
                    anti = Err(format!("({}, {})", self.labels[i], self.labels[j]));
                    break 'anti;
                }
            }
        }
        r.record("star antimultiplicative", anti);
        r
    }

    /// Dimension of the center, from the commutator linear system.
    pub fn center_dim(&self) -> usize {
        let n = self.dim;
        let mut ech = SparseEchelon::new();
        for j in 0..n {
            let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n];
            for i in 0..n {
                for (k, c) in self.basis_product(i, j) {
                    let e = rows[*k].entry(i).or_default();
                    *e = e.clone() + c.clone();
                }
                for (k, c) in self.basis_product(j, i) {
                    let e = rows[*k].entry(i).or_default();
                    *e = e.clone() - c.clone();
                }
            }
            for row in rows {
                ech.insert(row);
            }
        }
        n - ech.rank()
    }

    /// `G[i][j] = state(e_i* e_j)`.
    pub fn gram(&self, state: &[Scalar]) -> Matrix<Scalar> {
        Matrix::from_fn(self.dim, self.dim, |i, j| {
            let p = self.mul_terms(&self.star[i], &vec![(j, Scalar::one())]);
            eval(state, &p)
        })
    }

    /// Tensor product algebra, basis index `i * other.dim + j`.
    pub fn tensor(&self, other: &StarAlgebra) -> StarAlgebra {
        let (n, m) = (self.dim, other.dim);
        let mut product = Vec::with_capacity(n * n * m * m);
        for i in 0..n {
            for j in 0..m {
                for k in 0..n {
                    for l in 0..m {
                        let mut t = Vec::new();
                        for (a, c) in self.basis_product(i, k) {
                            for (b, d) in other.basis_product(j, l) {
                                t.push((a * m + b, c.clone() * d.clone()));
                            }
                        }
                        product.push(t);
                    }
                }
            }
        }
        let mut unit = Vec::new();
        for (a, c) in &self.unit {
            for (b, d) in &other.unit {
                unit.push((a * m + b, c.clone() * d.clone()));
            }
        }
        let mut star = Vec::with_capacity(n * m);
        let mut labels = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                let mut t = Vec::new();
                for (a, c) in &self.star[i] {
                    for (b, d) in &other.star[j] {
                        t.push((a * m + b, c.clone() * d.clone()));
                    }
                }
                star.push(t);
                labels.push(format!("{}⊗{}", self.labels[i], other.labels[j]));
            }
        }
        StarAlgebra::new(n * m, product, unit, star, labels).expect("consistent shapes")
    }
}

/// Finite-dimensional Hopf *-algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteHopfAlgebra {
    algebra: StarAlgebra,
    /// `coproduct[i] = Δ(e_i)` as `(left, right, coefficient)`
    coproduct: Vec<Terms2>,
    counit: Vec<Scalar>,
    antipode: Vec<Terms>,
}

impl FiniteHopfAlgebra {
    pub fn new(algebra: StarAlgebra, coproduct: Vec<Terms2>, counit: Vec<Scalar>, antipode: Vec<Terms>) -> Result<Self, HopfError> {
        let n = algebra.dim();
        if coproduct.len() != n || counit.len() != n || antipode.len() != n {
            return Err(HopfError::Shape(format!("Hopf algebra of dimension {n} with mismatched tables")));
        }
        Ok(FiniteHopfAlgebra {
            algebra,
            coproduct: coproduct.into_iter().map(canonical2).collect(),
            counit,
            antipode: antipode.into_iter().map(canonical).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &StarAlgebra {
        &self.algebra
    }

    pub fn coproduct(&self, i: usize) -> &Terms2 {
        &self.coproduct[i]
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self, i: usize) -> &Terms {
        &self.antipode[i]
    }

    pub fn antipode_terms(&self, x: &Terms) -> Terms {
        let mut out = Vec::new();
        for (i, a) in x {
            out.extend(self.antipode[*i].iter().map(|(k, c)| (*k, a.clone() * c.clone())));
        }
        canonical(out)
    }

    /// `(Δ ⊗ id)Δ(e_i)` as `(h1, h2, h3, coefficient)`.
    pub fn coproduct3(&self, i: usize) -> Vec<(usize, usize, usize, Scalar)> {
        let mut m: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (a, b, c) in &self.coproduct[i] {
            for (a1, a2, d) in &self.coproduct[*a] {
                let e = m.entry((*a1, *a2, *b)).or_default();
                *e = e.clone() + c.clone() * d.clone();
            }
        }
        m.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b, c), v)| (a, b, c, v)).collect()
    }

    /// Matrix of a linear endomorphism given on the basis (columns are images).
    fn matrix_of(&self, images: &[Terms]) -> Matrix<Scalar> {
        let n = self.dim();
        let mut m = Matrix::<Scalar>::zeros(n, n);
        for (j, t) in images.iter().enumerate() {
            for (i, c) in t {
                m[(*i, j)] = m[(*i, j)].clone() + c.clone();
            }
        }
        m
    }

    /// Images of the basis under `S⁻¹`.
    pub fn antipode_inverse(&self) -> Result<Vec<Terms>, HopfError> {
        let inv = self.matrix_of(&self.antipode).inverse().ok_or(HopfError::NotInvertible("antipode".into()))?;
        Ok((0..self.dim()).map(|j| to_sparse(&inv.column(j))).collect())
    }

    /// Convolution `(f * g)(h) = f(h₁) g(h₂)` of two functionals.
    pub fn convolve(&self, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        (0..self.dim())
            .map(|i| {
                self.coproduct[i]
                    .iter()
                    .fold(Scalar::zero(), |acc, (a, b, c)| acc + c.clone() * f[*a].clone() * g[*b].clone())
            })
            .collect()
    }

    /// The unique normalized two-sided invariant functional.
    pub fn haar(&self) -> Result<Vec<Scalar>, HopfError> {
        let n = self.dim();
        let rhs = n;
        let unit = to_dense(self.algebra.unit(), n);
        let mut ech = SparseEchelon::new();
        for x in 0..n {
            // (id ⊗ h)Δ(x) = h(x)1 and (h ⊗ id)Δ(x) = h(x)1, coefficient by coefficient
            let mut right: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n];
            let mut left: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); n];
            for (a, b, c) in &self.coproduct[x] {
                let e = right[*a].entry(*b).or_default();
                *e = e.clone() + c.clone();
                let e = left[*b].entry(*a).or_default();
                *e = e.clone() + c.clone();
            }
            for k in 0..n {
                for rows in [&mut right, &mut left] {
                    let e = rows[k].entry(x).or_default();
                    *e = e.clone() - unit[k].clone();
                }
            }
            for row in right.into_iter().chain(left) {
                ech.insert(row);
            }
        }
        let mut norm: BTreeMap<usize, Scalar> = self.algebra.unit().iter().cloned().collect();
        norm.insert(rhs, Scalar::one());
        ech.insert(norm);
        if ech.is_inconsistent(rhs) {
            return Err(HopfError::Inconsistent("Haar functional system".into()));
        }
        (0..n)
            .map(|i| ech.forced_value(i, rhs).ok_or_else(|| HopfError::Inconsistent("Haar functional not unique".into())))
            .collect()
    }

    /// Hopf *-axioms as tensor identities on the basis.
    pub fn check(&self) -> Report {
        let n = self.dim();
        let alg = &self.algebra;
        let mut r = alg.check();
        let first = |f: &dyn Fn(usize) -> bool| (0..n).find(|&i| !f(i)).map_or(Ok(()), |i| Err(alg.labels()[i].clone()));

        r.record(
            "coassociativity",
            first(&|i| {
                let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
                for (a, b, c) in &self.coproduct[i] {
                    for (b1, b2, d) in &self.coproduct[*b] {
                        let e = rhs.entry((*a, *b1, *b2)).or_default();
                        *e = e.clone() + c.clone() * d.clone();
                    }
                }
                let rhs: Vec<_> = rhs.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b, c), v)| (a, b, c, v)).collect();
                rhs == self.coproduct3(i)
            }),
        );
        r.record(
            "counit",
            first(&|i| {
                let l: Terms = self.coproduct[i].iter().map(|(a, b, c)| (*b, c.clone() * self.counit[*a].clone())).collect();
                let rr: Terms = self.coproduct[i].iter().map(|(a, b, c)| (*a, c.clone() * self.counit[*b].clone())).collect();
                canonical(l) == vec![(i, Scalar::one())] && canonical(rr) == vec![(i, Scalar::one())]
            }),
        );
        let mut mult = Ok(());
        'm: for i in 0..n {
            for j in 0..n {
                let lhs = self.comul_terms(alg.basis_product(i, j));
                let rhs = self.tensor_mul(&self.coproduct[i], &self.coproduct[j], alg);
                let eps = eval(&self.counit, alg.basis_product(i, j)) == self.counit[i].clone() * self.counit[j].clone();
                if lhs != rhs || !eps {
                    mult = Err(format!("({}, {})", alg.labels()[i], alg.labels()[j]));
                    break 'm;
                }
            }
        }
        r.record("coproduct and counit multiplicative", mult);
        let unit_ok = self.comul_terms(alg.unit()) == self.tensor_unit(alg) && eval(&self.counit, alg.unit()).is_one();
        r.record("coproduct and counit unital", if unit_ok { Ok(()) } else { Err("unit".into()) });
        r.record(
            "antipode",
            first(&|i| {
                let mut l = Vec::new();
                let mut rr = Vec::new();
                for (a, b, c) in &self.coproduct[i] {
                    let sa = self.antipode_terms(&vec![(*a, c.clone())]);
                    l.extend(alg.mul_terms(&sa, &vec![(*b, Scalar::one())]));
                    let sb = self.antipode_terms(&vec![(*b, c.clone())]);
                    rr.extend(alg.mul_terms(&vec![(*a, Scalar::one())], &sb));
                }
                let target: Terms = canonical(alg.unit().iter().map(|(k, c)| (*k, c.clone() * self.counit[i].clone())).collect());
                canonical(l) == target && canonical(rr) == target
            }),
        );
        r.record(
            "coproduct is a *-map",
            first(&|i| {
                let lhs = self.comul_terms(alg.basis_star(i));
                let mut rhs = Vec::new();
                for (a, b, c) in &self.coproduct[i] {
                    let cc = c.conj();
                    for (x, p) in alg.basis_star(*a) {
                        for (y, s) in alg.basis_star(*b) {
                            rhs.push((*x, *y, cc.clone() * p.clone() * s.clone()));
                        }
                    }
                }
                lhs == canonical2(rhs)
            }),
        );
        r.record(
            "(star ∘ antipode)² = id",
            first(&|i| {
                let once = |t: &Terms| alg.star_terms(&self.antipode_terms(t));
                once(&once(&vec![(i, Scalar::one())])) == vec![(i, Scalar::one())]
            }),
        );
        r
    }

    pub fn comul_terms(&self, x: &Terms) -> Terms2 {
        let mut out = Vec::new();
        for (i, a) in x {
            out.extend(self.coproduct[*i].iter().map(|(p, q, c)| (*p, *q, a.clone() * c.clone())));
        }
        canonical2(out)
    }

    /// Product in `A ⊗ A` of two 2-tensors.
    pub fn tensor_mul(&self, x: &Terms2, y: &Terms2, alg: &StarAlgebra) -> Terms2 {
        let mut out = Vec::new();
        for (a, b, c) in x {
            for (p, q, d) in y {
                let cd = c.clone() * d.clone();
                for (u, e) in alg.basis_product(*a, *p) {
                    for (v, f) in alg.basis_product(*b, *q) {
                        out.push((*u, *v, cd.clone() * e.clone() * f.clone()));
                    }
                }
            }
        }
        canonical2(out)
    }

    fn tensor_unit(&self, alg: &StarAlgebra) -> Terms2 {
        let mut out = Vec::new();
        for (a, c) in alg.unit() {
            for (b, d) in alg.unit() {
                out.push((*a, *b, c.clone() * d.clone()));
            }
        }
        canonical2(out)
    }

    /// Basis elements with `Δ(g) = g ⊗ g`.
    pub fn group_likes(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.coproduct[i] == vec![(i, i, Scalar::one())]).collect()
    }

    /// Replace the algebra structure, keeping the coalgebra.
    pub(crate) fn with_structure(&self, algebra: StarAlgebra, antipode: Vec<Terms>) -> Result<Self, HopfError> {
        FiniteHopfAlgebra::new(algebra, self.coproduct.clone(), self.counit.clone(), antipode)
    }
}

/// Finite group by multiplication table; identity is element 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    mult: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl FiniteGroup {
    pub fn new(mult: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, HopfError> {
        let n = mult.len();
        let ok = n > 0
            && labels.len() == n
            && mult.iter().all(|r| r.len() == n && r.iter().all(|&x| x < n))
            && (0..n).all(|g| mult[0][g] == g && mult[g][0] == g)
            && (0..n).all(|g| (0..n).any(|h| mult[g][h] == 0))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| mult[mult[a][b]][c] == mult[a][mult[b][c]])));
        if !ok {
            return Err(HopfError::Shape("not a group table with identity 0".into()));
        }
        Ok(FiniteGroup { mult, labels })
    }

    /// `Z_{n1} × … × Z_{nk}`, elements in mixed radix with the last factor fastest.
    pub fn abelian(orders: &[u32]) -> Result<Self, HopfError> {
        if orders.is_empty() || orders.contains(&0) {
            return Err(HopfError::Shape("orders must be positive".into()));
        }
        let elems = abelian_elements(orders);
        let index = |v: &[u32]| v.iter().zip(orders).fold(0usize, |acc, (x, o)| acc * (*o as usize) + *x as usize);
        let mult = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let s: Vec<u32> = a.iter().zip(b).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
                        index(&s)
                    })
                    .collect()
            })
            .collect();
        let labels = elems
            .iter()
            .map(|v| format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        FiniteGroup::new(mult, labels)
    }

    /// Symmetric group on three letters.
    pub fn s3() -> Self {
        // permutations of {0,1,2} as images; composition (g h)(x) = g(h(x))
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let find = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
        let mult = perms
            .iter()
            .map(|g| perms.iter().map(|h| find([g[h[0]], g[h[1]], g[h[2]]])).collect())
            .collect();
        let labels = ["e", "(01)", "(12)", "(02)", "(012)", "(021)"].iter().map(|s| s.to_string()).collect();
        FiniteGroup::new(mult, labels).expect("S3 table")
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mult[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.mult[g][h] == 0).expect("group")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Group algebra `ℂ[Γ]`: group-like basis, `g* = g⁻¹`.
    pub fn group_algebra(&self) -> FiniteHopfAlgebra {
        let n = self.order();
        let one = Scalar::one;
        let product = (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).map(|(g, h)| vec![(self.mul(g, h), one())]).collect();
        let star: Vec<Terms> = (0..n).map(|g| vec![(self.inverse(g), one())]).collect();
        let alg = StarAlgebra::new(n, product, vec![(0, one())], star.clone(), self.labels.clone()).expect("shapes");
        let coproduct = (0..n).map(|g| vec![(g, g, one())]).collect();
        FiniteHopfAlgebra::new(alg, coproduct, vec![one(); n], star).expect("shapes")
    }

    /// Function algebra `C(Γ)` on the delta basis.
    pub fn function_algebra(&self) -> FiniteHopfAlgebra {
        let n = self.order();
        let one = Scalar::one;
        let product = (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .map(|(g, h)| if g == h { vec![(g, one())] } else { vec![] })
            .collect();
        let unit = (0..n).map(|g| (g, one())).collect();
        let star = (0..n).map(|g| vec![(g, one())]).collect();
        let labels = self.labels.iter().map(|l| format!("δ{l}")).collect();
        let alg = StarAlgebra::new(n, product, unit, star, labels).expect("shapes");
        // Δ δ_g = Σ_h δ_h ⊗ δ_{h⁻¹ g}
        let coproduct = (0..n).map(|g| (0..n).map(|h| (h, self.mul(self.inverse(h), g), one())).collect()).collect();
        let counit = (0..n).map(|g| if g == 0 { one() } else { Scalar::zero() }).collect();
        let antipode = (0..n).map(|g| vec![(self.inverse(g), one())]).collect();
        FiniteHopfAlgebra::new(alg, coproduct, counit, antipode).expect("shapes")
    }
}

pub(crate) fn abelian_elements(orders: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &o in orders {
        out = out.into_iter().flat_map(|p| (0..o).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

/// `ℂ[Z_{n1} × … × Z_{nk}]`.
pub fn group_algebra(orders: &[u32]) -> Result<FiniteHopfAlgebra, HopfError> {
    Ok(FiniteGroup::abelian(orders)?.group_algebra())
}
