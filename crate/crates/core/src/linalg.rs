//! Dense exact matrices, reduced row echelon form, and a few float helpers.

use crate::scalar::{Field, Rat};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

/// Row-major dense matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(entries: &[F]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(F::conj).collect() }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.rows * r2, self.cols * c2, |r, c| {
            let a = &self[(r / r2, c / c2)];
            if a.is_zero() {
                F::zero()
            } else {
                a.clone() * other[(r % r2, c % c2)].clone()
            }
        })
    }

    /// Select a sub-matrix by row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self[(rows[r], cols[c])].clone())
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self[(r, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(lead, p);
            let inv = self[(lead, c)].inv().expect("nonzero pivot");
            for k in c..self.cols {
                let v = self[(lead, k)].clone();
                self[(lead, k)] = v * inv.clone();
            }
            for r in 0..self.rows {
                if r == lead || self[(r, c)].is_zero() {
                    continue;
                }
                let f = self[(r, c)].clone();
                for k in c..self.cols {
                    if self[(lead, k)].is_zero() {
                        continue;
                    }
                    let t = self[(lead, k)].clone() * f.clone();
                    let v = self[(r, k)].clone();
                    self[(r, k)] = v - t;
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// One solution of `self · x = rhs`, or `None` if inconsistent.
    pub fn solve(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(rhs.len(), self.rows);
        let col = Matrix { rows: self.rows, cols: 1, data: rhs.to_vec() };
        let mut aug = self.hstack(&col);
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Self::identity(n));
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| aug[(r, n + c)].clone()))
    }

    /// Characteristic polynomial `det(x − M)`, coefficients from the constant
    /// term up, by the Faddeev–LeVerrier recursion.
    pub fn char_poly(&self) -> Vec<F> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        let mut acc = Self::zeros(n, n);
        for k in 1..=n {
            // acc = M (acc + c_{n-k+1} I)
            let mut shifted = acc.clone();
            for i in 0..n {
                shifted[(i, i)] = shifted[(i, i)].clone() + coeffs[n - k + 1].clone();
            }
            acc = self * &shifted;
            let kinv = F::from_i64(k as i64).inv().expect("characteristic zero");
            coeffs[n - k] = -(acc.trace() * kinv);
        }
        coeffs
    }

    /// Dimension of the null space.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Commutator `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].to_c64())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Mul for &Matrix<F> {
    type Output = Matrix<F>;
    fn mul(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    let v = out[(r, c)].clone();
                    out[(r, c)] = v + a.clone() * b.clone();
                }
            }
        }
        out
    }
}

impl<F: Field> Add for &Matrix<F> {
    type Output = Matrix<F>;
    fn add(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<F: Field> Sub for &Matrix<F> {
    type Output = Matrix<F>;
    fn sub(self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

/// Incrementally built echelon basis of sparse row vectors.
///
/// Rows are reduced against the stored pivots on insertion, so `rank` and
/// membership are always current. Used where equations arrive one at a time.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon<F> {
    /// pivot column -> row with leading 1 at that column
    rows: BTreeMap<usize, BTreeMap<usize, F>>,
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn reduce(&self, mut row: BTreeMap<usize, F>) -> BTreeMap<usize, F> {
        // pivots are visited in increasing order; reductions only touch later columns
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k));
            let Some(p) = next else { break };
            let f = row.remove(&p).expect("present");
            for (c, v) in &self.rows[&p] {
                if *c == p {
                    continue;
                }
                let e = row.entry(*c).or_insert_with(F::zero);
                *e = e.clone() - f.clone() * v.clone();
                if e.is_zero() {
                    row.remove(c);
                }
            }
            cursor = p + 1;
        }
        row
    }

    /// Insert a row; returns `true` if it increased the rank.
    pub fn insert(&mut self, row: BTreeMap<usize, F>) -> bool {
        let row: BTreeMap<usize, F> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero");
        for v in row.values_mut() {
            *v = v.clone() * inv.clone();
        }
        // back-eliminate the new pivot from existing rows
        for other in self.rows.values_mut() {
            if let Some(f) = other.remove(&p) {
                for (c, v) in &row {
                    if *c == p {
                        continue;
                    }
                    let e = other.entry(*c).or_insert_with(F::zero);
                    *e = e.clone() - f.clone() * v.clone();
                    if e.is_zero() {
                        other.remove(c);
                    }
                }
            }
        }
        self.rows.insert(p, row);
        true
    }

    /// Whether the given row lies in the span.
    pub fn contains(&self, row: BTreeMap<usize, F>) -> bool {
        let row: BTreeMap<usize, F> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.reduce(row).is_empty()
    }

    /// Whether every solution of the homogeneous system vanishes on `col`.
    pub fn pins_to_zero(&self, col: usize) -> bool {
        self.rows.get(&col).is_some_and(|r| r.len() == 1)
    }

    /// Value forced on `col` in the affine system `Σ a_c x_c = b` whose
    /// right-hand side `b` is stored at index `rhs_col`, if the row is determined.
    pub fn forced_value(&self, col: usize, rhs_col: usize) -> Option<F> {
        let r = self.rows.get(&col)?;
        if r.keys().any(|&c| c != col && c != rhs_col) {
            return None;
        }
        Some(r.get(&rhs_col).cloned().unwrap_or_else(F::zero))
    }

    /// Basis of the solution space of the homogeneous system on `ncols`
    /// unknowns. Each vector is 1 on its own free column and 0 on the others,
    /// so coordinates of a solution are read off its free columns.
    pub fn kernel(&self, ncols: usize) -> (Vec<usize>, Vec<Vec<F>>) {
        let free: Vec<usize> = (0..ncols).filter(|c| !self.rows.contains_key(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); ncols];
                v[f] = F::one();
                for (&p, row) in &self.rows {
                    if let Some(x) = row.get(&f) {
                        v[p] = -x.clone();
                    }
                }
                v
            })
            .collect();
        (free, basis)
    }

    /// True if a row reduces to a pure right-hand-side entry (inconsistent system).
    pub fn is_inconsistent(&self, rhs_col: usize) -> bool {
        self.rows.contains_key(&rhs_col)
    }
}

/// Exact positive-definiteness of a Hermitian matrix by symmetric elimination.
pub fn is_positive_definite<F: Field>(g: &Matrix<F>) -> bool {
    if !g.is_hermitian() {
        return false;
    }
    let n = g.nrows();
    let mut m = g.clone();
    for k in 0..n {
        let p = m[(k, k)].clone();
        if p != p.conj() || p.to_c64().re <= 0.0 {
            return false;
        }
        let inv = p.inv().expect("nonzero");
        for i in k + 1..n {
            let f = m[(i, k)].clone() * inv.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = m[(i, j)].clone() - f.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
            }
        }
    }
    true
}

/// Operator norm (largest singular value) of a complex matrix.
pub fn op_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.iter().copied().fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues of `M` where `G M` is Hermitian and `G` positive definite
/// (`M` self-adjoint for the inner product `G`), ascending.
pub fn gram_selfadjoint_eigenvalues(m: &DMatrix<Complex64>, gram: &DMatrix<Complex64>) -> Option<Vec<f64>> {
    if m.nrows() == 0 {
        return Some(Vec::new());
    }
    let l = gram.clone().cholesky()?.l();
    let linv = l.clone().try_inverse()?;
    let gm = gram * m;
    let herm = &linv * gm * linv.adjoint();
    let herm = (&herm + herm.adjoint()) * Complex64::new(0.5, 0.0);
    Some(hermitian_eigenvalues(&herm))
}

/// Best rational approximation with denominator at most `max_den`.
pub fn rationalize(x: f64, max_den: i64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let (p2, q2) = (a.checked_mul(p1)?.checked_add(p0)?, a.checked_mul(q1)?.checked_add(q0)?);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    (q1 != 0).then(|| Rat::new(p1.into(), q1.into()))
}

/// Exact spectrum of a diagonalizable matrix whose eigenvalues are rational:
/// float candidates are rationalized and confirmed by exact nullities summing
/// to the dimension. `None` if that fails.
pub fn exact_rational_spectrum<F: Field>(m: &Matrix<F>, gram: &Matrix<F>) -> Option<Vec<(Rat, usize)>> {
    let n = m.nrows();
    let floats = gram_selfadjoint_eigenvalues(&m.to_complex(), &gram.to_complex())?;
    let mut cands: Vec<Rat> = floats.iter().map(|&x| rationalize(x, 1_000_000)).collect::<Option<_>>()?;
    cands.sort();
    cands.dedup();
    let mut out = Vec::new();
    let mut total = 0;
    for lam in cands {
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[(i, i)] = shifted[(i, i)].clone() - F::from_rat(lam.clone());
        }
        let k = shifted.nullity();
        if k > 0 {
            total += k;
            out.push((lam, k));
        }
    }
    (total == n).then_some(out)
}

/// Orthonormalize columns of `m` (modified Gram–Schmidt), dropping columns
/// with residual norm below `tol`.
pub fn orthonormal_columns(m: &DMatrix<Complex64>, tol: f64) -> DMatrix<Complex64> {
    let mut basis: Vec<DVector<Complex64>> = Vec::new();
    for c in 0..m.ncols() {
        let mut v = m.column(c).into_owned();
        for _ in 0..2 {
            for b in &basis {
                let proj = b.dotc(&v);
                v -= b * proj;
            }
        }
        let n = v.norm();
        if n > tol {
            basis.push(v / Complex64::new(n, 0.0));
        }
    }
    if basis.is_empty() {
        return DMatrix::zeros(m.nrows(), 0);
    }
    DMatrix::from_columns(&basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect())
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = m(&[&[1, 1], &[1, 1]]);
        assert!(a.solve(&[rat(1, 1), rat(2, 1)]).is_none());
        let x = a.solve(&[rat(3, 1), rat(3, 1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![rat(3, 1), rat(3, 1)]);
    }

    #[test]
    fn sparse_echelon_rank_and_pins() {
        let mut e = SparseEchelon::<Rat>::new();
        let row = |v: &[(usize, i64)]| v.iter().map(|&(c, x)| (c, rat(x, 1))).collect();
        assert!(e.insert(row(&[(0, 1), (1, 1)])));
        assert!(!e.insert(row(&[(0, 2), (1, 2)])));
        assert!(!e.pins_to_zero(0));
        assert!(e.insert(row(&[(1, 1)])));
        assert!(e.pins_to_zero(0) && e.pins_to_zero(1));
        assert_eq!(e.rank(), 2);
    }
}
