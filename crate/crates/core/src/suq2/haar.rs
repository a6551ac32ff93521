//! Haar state of O(SU_q(2)) from the invariance equations.

use super::pbw::{Monomial, Pbw, PbwTensor, SuQ2};
use super::Suq2Error;
use crate::linalg::SparseEchelon;
use crate::report::Report;
use crate::scalar::{Field, Rat};
use std::collections::{BTreeMap, HashMap};

/// Values `h((γγ*)^k)` for `k ≤ max_power`; `h` vanishes on every other
/// PBW monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct HaarState {
    diagonal: Vec<Rat>,
}

/// Which leg of `Δ(m)` the state is applied to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Leg {
    First,
    Second,
}

/// Rows `Σ_b c_{a,b} x_b − δ_{a,1} x_m` of one invariance equation, grouped
/// by the free leg. `index` maps a monomial to its unknown, or `None` when the
/// state is assumed to vanish there.
fn invariance_rows(
    delta: &PbwTensor,
    m_col: usize,
    leg: Leg,
    index: &impl Fn(&Monomial) -> Option<usize>,
) -> Vec<BTreeMap<usize, Rat>> {
    let mut rows: BTreeMap<Monomial, BTreeMap<usize, Rat>> = BTreeMap::new();
    rows.entry(Monomial::ONE).or_default();
    for ((x, y), c) in delta {
        let (free, evaluated) = match leg {
            Leg::First => (y, x),
            Leg::Second => (x, y),
        };
        if let Some(col) = index(evaluated) {
            *rows.entry(*free).or_default().entry(col).or_insert_with(Rat::zero) += c;
        }
    }
    let unit = rows.get_mut(&Monomial::ONE).expect("inserted");
    *unit.entry(m_col).or_insert_with(Rat::zero) -= Rat::one();
    rows.into_values().collect()
}

impl HaarState {
    /// Solve left and right invariance on `(γγ*)^k`, `k ≤ max_power`, with
    /// `h(1) = 1`. Only diagonal second legs are kept; that `h` vanishes off
    /// the diagonal is checked separately by [`check_haar_full`].
    pub fn solve(alg: &SuQ2, max_power: u32) -> Result<Self, Suq2Error> {
        let n = max_power as usize + 1;
        let rhs = n;
        let mut sys = SparseEchelon::<Rat>::new();
        sys.insert(BTreeMap::from([(0, Rat::one()), (rhs, Rat::one())]));
        let index = |m: &Monomial| m.diagonal_power().filter(|&k| k <= max_power).map(|k| k as usize);
        for k in 1..=max_power {
            let delta = alg.monomial_coproduct(Monomial::new(0, k, k));
            for leg in [Leg::First, Leg::Second] {
                for row in invariance_rows(&delta, k as usize, leg, &index) {
                    sys.insert(row);
                }
            }
        }
        if sys.is_inconsistent(rhs) {
            return Err(Suq2Error::Inconsistent("Haar invariance equations".into()));
        }
        let diagonal = (0..n)
            .map(|k| sys.forced_value(k, rhs).ok_or_else(|| Suq2Error::Inconsistent(format!("h((γγ*)^{k}) is not determined"))))
            .collect::<Result<_, _>>()?;
        Ok(HaarState { diagonal })
    }

    pub fn max_power(&self) -> u32 {
        self.diagonal.len() as u32 - 1
    }

    pub fn diagonal(&self) -> &[Rat] {
        &self.diagonal
    }

    /// `h(x)` for `x` of degree at most `2·max_power`.
    pub fn eval<F: Field>(&self, x: &Pbw<F>) -> Result<F, Suq2Error> {
        let mut acc = F::zero();
        for (m, c) in x.terms() {
            if let Some(k) = m.diagonal_power() {
                let v = self.diagonal.get(k as usize).ok_or(Suq2Error::DegreeBound { needed: 2 * k, available: 2 * self.max_power() })?;
                acc = acc + c.clone() * F::from_rat(v.clone());
            }
        }
        Ok(acc)
    }

    /// `⟨x, y⟩ = h(x* y)`. Elements of different weights are orthogonal
    /// without multiplying, since `x* y` then has no diagonal monomial.
    pub fn inner<F: Field>(&self, alg: &SuQ2, x: &Pbw<F>, y: &Pbw<F>) -> Result<F, Suq2Error> {
        if let (Some(wx), Some(wy)) = (x.weights(), y.weights()) {
            if wx != wy {
                return Ok(F::zero());
            }
        }
        self.eval(&alg.mul(&alg.star(x), y))
    }
}

/// `h(x)` with the invariance system solved up to `degree_bound`.
pub fn haar<F: Field>(alg: &SuQ2, x: &Pbw<F>, degree_bound: u32) -> Result<F, Suq2Error> {
    if x.degree() > degree_bound {
        return Err(Suq2Error::DegreeBound { needed: x.degree(), available: degree_bound });
    }
    HaarState::solve(alg, degree_bound / 2)?.eval(x)
}

/// All PBW monomials of degree at most `d`.
pub fn monomials_up_to(d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for s in -(d as i32)..=d as i32 {
        let rest = d - s.unsigned_abs();
        for b in 0..=rest {
            for c in 0..=rest - b {
                out.push(Monomial::new(s, b, c));
            }
        }
    }
    out
}

/// Solve the invariance equations with every monomial of degree `≤ d` as an
/// unknown and compare with `state`: the solution must be unique, vanish off
/// the diagonal, and agree on the diagonal.
pub fn check_haar_full(alg: &SuQ2, state: &HaarState, d: u32) -> Result<Report, Suq2Error> {
    let monos = monomials_up_to(d);
    let cols: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let rhs = monos.len();
    let mut sys = SparseEchelon::<Rat>::new();
    sys.insert(BTreeMap::from([(cols[&Monomial::ONE], Rat::one()), (rhs, Rat::one())]));
    let index = |m: &Monomial| cols.get(m).copied();
    for m in &monos {
        let delta = alg.monomial_coproduct(*m);
        for leg in [Leg::First, Leg::Second] {
            for row in invariance_rows(&delta, cols[m], leg, &index) {
                sys.insert(row);
            }
        }
    }
    let mut report = Report::new();
    report.push("consistent", !sys.is_inconsistent(rhs), None);
    report.push(
        format!("unique solution on {} monomials of degree ≤ {d}", monos.len()),
        sys.rank() == monos.len(),
        Some(format!("rank {}", sys.rank())),
    );
    let mut off = 0;
    let mut diag_ok = true;
    for (i, m) in monos.iter().enumerate() {
        let v = sys.forced_value(i, rhs);
        match m.diagonal_power() {
            Some(k) => diag_ok &= v.as_ref() == state.diagonal.get(k as usize),
            None => off += usize::from(v.is_none_or(|v| !v.is_zero())),
        }
    }
    report.push("vanishes off (γγ*)^k", off == 0, (off > 0).then(|| format!("{off} monomials not pinned to zero")));
    report.push("diagonal values agree", diag_ok, None);
    Ok(report)
}
