//! Matrix coefficients `d^n_{kl}` of the irreducible corepresentations.
//!
//! Column `l = −n` is the quantum-plane vector `(−q)^{⌊j/2⌋} α^{2n−j} γ^j`
//! (`j = n + k`); the other columns are read off from its coproduct, since
//! `Δ d^n_{k,−n} = Σ_m d^n_{km} ⊗ d^n_{m,−n}` and the second legs are distinct
//! monomials. With this gauge `d^{1/2} = [[α, −qγ*], [γ, α*]]` in the order
//! `(−1/2, 1/2)`.

use super::haar::HaarState;
use super::pbw::{Monomial, Pbw, SuQ2};
use super::Suq2Error;
use crate::report::Report;
use crate::scalar::{fmt_rat, rat, rat_pow, Field, Rat};
use num_traits::Signed;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(pub i32);

impl HalfInt {
    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn to_rat(self) -> Rat {
        rat(self.0 as i64, 2)
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// `−n, −n+1, …, n`.
    pub fn range(self) -> impl Iterator<Item = HalfInt> {
        (0..=self.0).map(move |j| HalfInt(2 * j - self.0))
    }

    /// Parse `"k/2"`, `"k"`, or a decimal such as `"3.5"`.
    pub fn parse(s: &str) -> Option<HalfInt> {
        let r = crate::scalar::parse_rat(s)?;
        let twice = r * rat(2, 1);
        twice.is_integer().then(|| num_traits::ToPrimitive::to_i32(twice.numer())).flatten().map(HalfInt)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rat(&self.to_rat()))
    }
}

/// `(n, k, l)` of `d^n_{kl}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PwIndex {
    pub spin: HalfInt,
    pub row: HalfInt,
    pub col: HalfInt,
}

impl PwIndex {
    pub fn new(spin: HalfInt, row: HalfInt, col: HalfInt) -> Self {
        PwIndex { spin, row, col }
    }

    /// `(left, right)` weights `(−2k, −2l)`.
    pub fn weights(&self) -> (i32, i32) {
        (-self.row.0, -self.col.0)
    }

    /// The unique monomial of degree `2n` in this bidegree.
    pub fn leading_monomial(&self) -> Monomial {
        let (k, l) = (self.row.0, self.col.0);
        let alpha = -(k + l) / 2;
        let diff = (k - l) / 2;
        let rest = (self.spin.0 as u32) - alpha.unsigned_abs();
        let gamma = (rest as i32 + diff) / 2;
        let gamma_star = (rest as i32 - diff) / 2;
        Monomial::new(alpha, gamma as u32, gamma_star as u32)
    }

    /// Index of the `d^n_{kl}` whose leading monomial is `m`, if `m` has one.
    pub fn of_leading(m: &Monomial) -> PwIndex {
        PwIndex::new(HalfInt(m.degree() as i32), HalfInt(-m.left_weight()), HalfInt(-m.right_weight()))
    }
}

impl fmt::Display for PwIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d^{}_{{{},{}}}", self.spin, self.row, self.col)
    }
}

#[derive(Clone, Debug)]
pub struct PwEntry {
    pub index: PwIndex,
    pub element: Pbw<Rat>,
    /// `h(d* d)`
    pub norm_sqr: Rat,
}

impl PwEntry {
    pub fn leading_coefficient(&self) -> Rat {
        self.element.coeff(&self.index.leading_monomial())
    }
}

/// `d^n_{kl}` for all `n ≤ level`, ordered by spin, then row, then column.
#[derive(Clone, Debug)]
pub struct PeterWeylBasis {
    q: Rat,
    level: HalfInt,
    entries: Vec<PwEntry>,
    lookup: HashMap<PwIndex, usize>,
    haar: HaarState,
}

fn column_coefficient(q: &Rat, j: i32) -> Rat {
    rat_pow(&-q.clone(), i64::from(j / 2))
}

fn spin_block(alg: &SuQ2, spin: HalfInt) -> Result<Vec<(PwIndex, Pbw<Rat>)>, Suq2Error> {
    let n2 = spin.0;
    let column: Vec<(Monomial, Rat)> =
        (0..=n2).map(|j| (Monomial::new(n2 - j, j as u32, 0), column_coefficient(alg.q(), j))).collect();
    let position: HashMap<Monomial, usize> = column.iter().enumerate().map(|(j, (m, _))| (*m, j)).collect();
    let mut out = Vec::new();
    for (j, (mono, coef)) in column.iter().enumerate() {
        let row = HalfInt(2 * j as i32 - n2);
        let mut cols: Vec<Pbw<Rat>> = vec![Pbw::zero(); column.len()];
        for ((first, second), c) in alg.monomial_coproduct(*mono) {
            let j2 = *position
                .get(&second)
                .ok_or_else(|| Suq2Error::Verification(format!("second leg {second} of Δ({mono}) is not a column monomial")))?;
            cols[j2].add_term(first, c * coef / &column[j2].1);
        }
        for (j2, element) in cols.into_iter().enumerate() {
            out.push((PwIndex::new(spin, row, HalfInt(2 * j2 as i32 - n2)), element));
        }
    }
    Ok(out)
}

impl PeterWeylBasis {
    /// Build `d^n_{kl}` for `n ≤ level` with exact squared norms.
    pub fn build(alg: &SuQ2, level: HalfInt) -> Result<Self, Suq2Error> {
        if level.0 < 1 {
            return Err(Suq2Error::Parameter(format!("truncation level {level} must be at least 1/2")));
        }
        // room for h(d_i* x d_j) with x of degree 2
        let haar = HaarState::solve(alg, level.0 as u32 + 2)?;
        let mut entries = Vec::new();
        for n2 in 0..=level.0 {
            for (index, element) in spin_block(alg, HalfInt(n2))? {
                let norm_sqr = haar.inner(alg, &element, &element)?;
                if !norm_sqr.is_positive() {
                    return Err(Suq2Error::NotPositive(format!("‖{index}‖² = {norm_sqr}")));
                }
                entries.push(PwEntry { index, element, norm_sqr });
            }
        }
        let lookup = entries.iter().enumerate().map(|(i, e)| (e.index, i)).collect();
        Ok(PeterWeylBasis { q: alg.q().clone(), level, entries, lookup, haar })
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn level(&self) -> HalfInt {
        self.level
    }

    pub fn haar(&self) -> &HaarState {
        &self.haar
    }

    pub fn entries(&self) -> &[PwEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, index: &PwIndex) -> Option<usize> {
        self.lookup.get(index).copied()
    }

    pub fn get(&self, index: &PwIndex) -> Option<&PwEntry> {
        self.position(index).map(|i| &self.entries[i])
    }

    /// `d^n` as a matrix with rows and columns in increasing order `−n, …, n`.
    pub fn matrix(&self, spin: HalfInt) -> Option<Vec<Vec<Pbw<Rat>>>> {
        spin.range()
            .map(|k| spin.range().map(|l| self.get(&PwIndex::new(spin, k, l)).map(|e| e.element.clone())).collect())
            .collect()
    }

    /// Coordinates of `x` in the `d`-basis by triangular elimination: within a
    /// bidegree each degree carries one monomial, and `d^n_{kl}` has degree `2n`.
    pub fn coordinates<F: Field>(&self, x: &Pbw<F>) -> Result<BTreeMap<usize, F>, Suq2Error> {
        let mut rest = x.clone();
        let mut out = BTreeMap::new();
        loop {
            let Some((m, c)) = rest.terms().max_by_key(|(m, _)| (m.degree(), **m)).map(|(m, c)| (*m, c.clone())) else {
                break;
            };
            let index = PwIndex::of_leading(&m);
            let pos = self.position(&index).ok_or(Suq2Error::DegreeBound { needed: m.degree(), available: self.level.0 as u32 })?;
            let entry = &self.entries[pos];
            let lead = F::from_rat(entry.leading_coefficient());
            let coef = c * lead.inv().expect("leading coefficient is nonzero");
            rest = &rest - &entry.element.map(|v| F::from_rat(v.clone()) * coef.clone());
            out.insert(pos, coef);
        }
        Ok(out)
    }

    /// Coordinates of `x` by Haar inner products, `h(d* x)/h(d* d)`, over the
    /// basis elements of matching weights.
    pub fn coordinates_by_haar<F: Field>(&self, alg: &SuQ2, x: &Pbw<F>) -> Result<BTreeMap<usize, F>, Suq2Error> {
        let weights: std::collections::BTreeSet<(i32, i32)> = x.terms().map(|(m, _)| (m.left_weight(), m.right_weight())).collect();
        let mut out = BTreeMap::new();
        for (i, e) in self.entries.iter().enumerate() {
            if !weights.contains(&e.index.weights()) {
                continue;
            }
            let d = e.element.map(|v| F::from_rat(v.clone()));
            let c = self.haar.inner(alg, &d, x)? * F::from_rat(e.norm_sqr.recip());
            if !c.is_zero() {
                out.insert(i, c);
            }
        }
        Ok(out)
    }

    /// Exact checks: Gram–Schmidt agreement, positivity, orthogonality.
    ///
    /// For each bidegree the monomials ordered by degree are orthogonalised
    /// against `h(x* y)`; every `d^n_{kl}` must be a multiple of the resulting
    /// vector. Orthogonality is checked on all pairs of equal bidegree (other
    /// pairs have a weight-carrying product and vanish termwise).
    pub fn verify(&self, alg: &SuQ2) -> Result<Report, Suq2Error> {
        let mut report = Report::new();
        let mut blocks: BTreeMap<(i32, i32), Vec<usize>> = BTreeMap::new();
        for (i, e) in self.entries.iter().enumerate() {
            blocks.entry(e.index.weights()).or_default().push(i);
        }
        let mut gs_bad = Vec::new();
        let mut pos_bad = Vec::new();
        let mut ortho_bad = Vec::new();
        let mut pairs = 0usize;
        for members in blocks.values() {
            let mut members = members.clone();
            members.sort_by_key(|&i| self.entries[i].index.spin);
            let mut previous: Vec<(Pbw<Rat>, Rat)> = Vec::new();
            for &i in &members {
                let e = &self.entries[i];
                let mono = Pbw::monomial(e.index.leading_monomial());
                let mut v = mono.clone();
                for (u, nu) in &previous {
                    let c = self.haar.inner(alg, u, &mono)? / nu;
                    v = &v - &u.scale(&c);
                }
                let nv = self.haar.inner(alg, &v, &v)?;
                if !nv.is_positive() {
                    pos_bad.push(e.index.to_string());
                }
                if v.scale(&e.leading_coefficient()) != e.element {
                    gs_bad.push(e.index.to_string());
                }
                previous.push((v, nv));
            }
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    pairs += 1;
                    let ip = self.haar.inner(alg, &self.entries[i].element, &self.entries[j].element)?;
                    if !ip.is_zero() {
                        ortho_bad.push(format!("{} ⟂ {}", self.entries[i].index, self.entries[j].index));
                    }
                }
            }
        }
        let detail = |v: &Vec<String>| (!v.is_empty()).then(|| v.join(", "));
        report.push("Gram–Schmidt agrees with coproduct extraction", gs_bad.is_empty(), detail(&gs_bad));
        report.push("Gram matrices positive definite", pos_bad.is_empty(), detail(&pos_bad));
        report.push(format!("exact orthogonality ({pairs} same-bidegree pairs)"), ortho_bad.is_empty(), detail(&ortho_bad));
        report.push(
            format!("basis size {}", self.entries.len()),
            self.entries.len() as i32 == (0..=self.level.0).map(|n2| (n2 + 1) * (n2 + 1)).sum::<i32>(),
            None,
        );
        Ok(report)
    }

    /// `Δ d^n_{kl} = Σ_m d^n_{km} ⊗ d^n_{ml}` for all spins up to `max_spin`.
    pub fn check_corepresentation(&self, alg: &SuQ2, max_spin: HalfInt) -> Report {
        let mut report = Report::new();
        for n2 in 0..=max_spin.0.min(self.level.0) {
            let spin = HalfInt(n2);
            let mut bad = Vec::new();
            for k in spin.range() {
                for l in spin.range() {
                    let d = &self.get(&PwIndex::new(spin, k, l)).expect("in range").element;
                    let mut expected = BTreeMap::new();
                    for m in spin.range() {
                        let left = &self.get(&PwIndex::new(spin, k, m)).expect("in range").element;
                        let right = &self.get(&PwIndex::new(spin, m, l)).expect("in range").element;
                        for (a, u) in left.terms() {
                            for (b, v) in right.terms() {
                                *expected.entry((*a, *b)).or_insert_with(Rat::zero) += u * v;
                            }
                        }
                    }
                    expected.retain(|_, v: &mut Rat| !v.is_zero());
                    if alg.coproduct(d) != expected {
                        bad.push(format!("({k},{l})"));
                    }
                }
            }
            report.push(format!("Δ d^{spin} = d^{spin} ⊗ d^{spin}"), bad.is_empty(), (!bad.is_empty()).then(|| bad.join(" ")));
        }
        report
    }

    /// `‖d‖`, the factor taking `d^n_{kl}` to the unit vector `e^n_{kl}`.
    pub fn norm(&self, pos: usize) -> f64 {
        crate::scalar::rat_to_f64(&self.entries[pos].norm_sqr).sqrt()
    }
}
