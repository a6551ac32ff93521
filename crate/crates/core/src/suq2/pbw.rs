//! PBW normal form, products, star and coproduct on O(SU_q(2)).

use crate::scalar::{rat_pow, Field, Rat};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// `α^a γ^b (γ*)^c` for `a ≥ 0`, `(α*)^{-a} γ^b (γ*)^c` for `a < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub alpha: i32,
    pub gamma: u32,
    pub gamma_star: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Alpha,
    AlphaStar,
    Gamma,
    GammaStar,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::Alpha, Generator::AlphaStar, Generator::Gamma, Generator::GammaStar];

    pub fn star(self) -> Generator {
        match self {
            Generator::Alpha => Generator::AlphaStar,
            Generator::AlphaStar => Generator::Alpha,
            Generator::Gamma => Generator::GammaStar,
            Generator::GammaStar => Generator::Gamma,
        }
    }
}

impl Monomial {
    pub const ONE: Monomial = Monomial { alpha: 0, gamma: 0, gamma_star: 0 };

    pub const fn new(alpha: i32, gamma: u32, gamma_star: u32) -> Self {
        Monomial { alpha, gamma, gamma_star }
    }

    pub fn degree(&self) -> u32 {
        self.alpha.unsigned_abs() + self.gamma + self.gamma_star
    }

    /// Weight under the left circle action; `d^n_{kl}` has weight `−2k`.
    pub fn left_weight(&self) -> i32 {
        self.alpha - self.gamma as i32 + self.gamma_star as i32
    }

    /// Weight under the right circle action; `d^n_{kl}` has weight `−2l`.
    pub fn right_weight(&self) -> i32 {
        self.alpha + self.gamma as i32 - self.gamma_star as i32
    }

    /// Diagonal monomials `(γγ*)^k` carry the Haar state.
    pub fn diagonal_power(&self) -> Option<u32> {
        (self.alpha == 0 && self.gamma == self.gamma_star).then_some(self.gamma)
    }

    pub fn word(&self) -> Vec<Generator> {
        let a = if self.alpha >= 0 { Generator::Alpha } else { Generator::AlphaStar };
        std::iter::repeat_n(a, self.alpha.unsigned_abs() as usize)
            .chain(std::iter::repeat_n(Generator::Gamma, self.gamma as usize))
            .chain(std::iter::repeat_n(Generator::GammaStar, self.gamma_star as usize))
            .collect()
    }

    /// The word of `m*`: `γ^c (γ*)^b` followed by the starred α-part.
    fn star_word(&self) -> Vec<Generator> {
        self.word().into_iter().rev().map(Generator::star).collect()
    }

    /// The last letter of the word and the monomial before it.
    fn split_last(&self) -> Option<(Monomial, Generator)> {
        if self.gamma_star > 0 {
            Some((Monomial { gamma_star: self.gamma_star - 1, ..*self }, Generator::GammaStar))
        } else if self.gamma > 0 {
            Some((Monomial { gamma: self.gamma - 1, ..*self }, Generator::Gamma))
        } else if self.alpha > 0 {
            Some((Monomial { alpha: self.alpha - 1, ..*self }, Generator::Alpha))
        } else if self.alpha < 0 {
            Some((Monomial { alpha: self.alpha + 1, ..*self }, Generator::AlphaStar))
        } else {
            None
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let pow = |s: &str, e: u32| if e == 1 { s.to_string() } else { format!("{s}^{e}") };
        match self.alpha {
            0 => {}
            a if a > 0 => parts.push(pow("a", a as u32)),
            a => parts.push(pow("a*", a.unsigned_abs())),
        }
        if self.gamma > 0 {
            parts.push(pow("g", self.gamma));
        }
        if self.gamma_star > 0 {
            parts.push(pow("g*", self.gamma_star));
        }
        write!(f, "{}", parts.join(" "))
    }
}

/// Element of O(SU_q(2)) in PBW normal form; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pbw<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Default for Pbw<F> {
    fn default() -> Self {
        Pbw { terms: BTreeMap::new() }
    }
}

impl<F: Field> Pbw<F> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(F::one())
    }

    pub fn scalar(c: F) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, F::one())
    }

    pub fn term(m: Monomial, c: F) -> Self {
        let mut x = Self::zero();
        x.add_term(m, c);
        x
    }

    pub fn generator(g: Generator) -> Self {
        Self::monomial(match g {
            Generator::Alpha => Monomial::new(1, 0, 0),
            Generator::AlphaStar => Monomial::new(-1, 0, 0),
            Generator::Gamma => Monomial::new(0, 1, 0),
            Generator::GammaStar => Monomial::new(0, 0, 1),
        })
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, v.clone() * c.clone());
        }
        out
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Pbw<G> {
        let mut out = Pbw::zero();
        for (m, v) in &self.terms {
            out.add_term(*m, f(v));
        }
        out
    }

    /// Weights `(left, right)` if the element is homogeneous.
    pub fn weights(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| (m.left_weight(), m.right_weight()));
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Largest coefficient magnitude, as a float residual.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|v| v.to_c64().norm()).fold(0.0, f64::max)
    }
}

impl<F: Field> Add for &Pbw<F> {
    type Output = Pbw<F>;
    fn add(self, o: &Pbw<F>) -> Pbw<F> {
        let mut out = self.clone();
        for (m, v) in &o.terms {
            out.add_term(*m, v.clone());
        }
        out
    }
}

impl<F: Field> Sub for &Pbw<F> {
    type Output = Pbw<F>;
    fn sub(self, o: &Pbw<F>) -> Pbw<F> {
        let mut out = self.clone();
        for (m, v) in &o.terms {
            out.add_term(*m, -v.clone());
        }
        out
    }
}

impl<F: Field> Neg for &Pbw<F> {
    type Output = Pbw<F>;
    fn neg(self) -> Pbw<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field> fmt::Display for Pbw<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c:?})·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of `O ⊗ O` in product PBW basis.
pub type PbwTensor = BTreeMap<(Monomial, Monomial), Rat>;

fn add_rat<K: Ord>(map: &mut BTreeMap<K, Rat>, k: K, v: Rat) {
    if v.is_zero() {
        return;
    }
    *map.entry(k).or_insert_with(Rat::zero) += v;
}

fn prune<K: Ord + Clone>(map: BTreeMap<K, Rat>) -> BTreeMap<K, Rat> {
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// O(SU_q(2)) at a fixed rational `q`, with product and coproduct caches.
///
/// Multiplication is right multiplication of normal-form monomials by single
/// generators:
///
/// * `·γ`, `·γ*` append to the γ-block;
/// * `·α` picks up `q^{−(b+c)}` moving past `γ^b γ*^c`, then either raises the
///   α-power or cancels an `α*` via `α*α = 1 − γ*γ`;
/// * `·α*` picks up `q^{b+c}`, then lowers the α-power via `αα* = 1 − q²γγ*`.
pub struct SuQ2 {
    q: Rat,
    products: RefCell<HashMap<(Monomial, Monomial), BTreeMap<Monomial, Rat>>>,
    coproducts: RefCell<HashMap<Monomial, PbwTensor>>,
}

impl fmt::Debug for SuQ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SuQ2").field("q", &self.q).finish()
    }
}

impl SuQ2 {
    /// `q` must be a nonzero rational in `[−1, 1]`.
    pub fn new(q: Rat) -> Result<Self, super::Suq2Error> {
        if q.is_zero() || q > Rat::one() || q < -Rat::one() {
            return Err(super::Suq2Error::Parameter(format!("q = {q} must lie in [-1,1] \\ {{0}}")));
        }
        Ok(SuQ2 { q, products: RefCell::default(), coproducts: RefCell::default() })
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    fn right_mul_generator(&self, m: Monomial, g: Generator, coef: Rat, out: &mut BTreeMap<Monomial, Rat>) {
        let Monomial { alpha: s, gamma: b, gamma_star: c } = m;
        match g {
            Generator::Gamma => add_rat(out, Monomial::new(s, b + 1, c), coef),
            Generator::GammaStar => add_rat(out, Monomial::new(s, b, c + 1), coef),
            Generator::Alpha => {
                let f = coef * rat_pow(&self.q, -i64::from(b + c));
                if s < 0 {
                    add_rat(out, Monomial::new(s + 1, b + 1, c + 1), -f.clone());
                }
                add_rat(out, Monomial::new(s + 1, b, c), f);
            }
            Generator::AlphaStar => {
                let f = coef * rat_pow(&self.q, i64::from(b + c));
                if s > 0 {
                    add_rat(out, Monomial::new(s - 1, b + 1, c + 1), -(&f * &self.q * &self.q));
                }
                add_rat(out, Monomial::new(s - 1, b, c), f);
            }
        }
    }

    fn right_mul_word(&self, start: BTreeMap<Monomial, Rat>, word: &[Generator]) -> BTreeMap<Monomial, Rat> {
        word.iter().fold(start, |cur, &g| {
            let mut next = BTreeMap::new();
            for (m, c) in cur {
                self.right_mul_generator(m, g, c, &mut next);
            }
            prune(next)
        })
    }

    /// Normal form of a word in the generators.
    pub fn normal_form(&self, word: &[Generator]) -> Pbw<Rat> {
        let start = BTreeMap::from([(Monomial::ONE, Rat::one())]);
        let mut out = Pbw::zero();
        for (m, c) in self.right_mul_word(start, word) {
            out.add_term(m, c);
        }
        out
    }

    /// Product of two normal-form monomials.
    pub fn monomial_product(&self, a: Monomial, b: Monomial) -> BTreeMap<Monomial, Rat> {
        if let Some(p) = self.products.borrow().get(&(a, b)) {
            return p.clone();
        }
        let p = self.right_mul_word(BTreeMap::from([(a, Rat::one())]), &b.word());
        self.products.borrow_mut().insert((a, b), p.clone());
        p
    }

    pub fn mul<F: Field>(&self, x: &Pbw<F>, y: &Pbw<F>) -> Pbw<F> {
        let mut out = Pbw::zero();
        for (mx, cx) in x.terms() {
            for (my, cy) in y.terms() {
                let c = cx.clone() * cy.clone();
                for (m, v) in self.monomial_product(*mx, *my) {
                    out.add_term(m, c.clone() * F::from_rat(v));
                }
            }
        }
        out
    }

    pub fn product<F: Field>(&self, factors: &[&Pbw<F>]) -> Pbw<F> {
        factors.iter().fold(Pbw::one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow<F: Field>(&self, x: &Pbw<F>, e: u32) -> Pbw<F> {
        (0..e).fold(Pbw::one(), |acc, _| self.mul(&acc, x))
    }

    pub fn star<F: Field>(&self, x: &Pbw<F>) -> Pbw<F> {
        let mut out = Pbw::zero();
        for (m, c) in x.terms() {
            let c = c.conj();
            for (m2, v) in self.normal_form(&m.star_word()).terms() {
                out.add_term(*m2, c.clone() * F::from_rat(v.clone()));
            }
        }
        out
    }

    fn generator_coproduct(&self, g: Generator) -> PbwTensor {
        let a = Monomial::new(1, 0, 0);
        let a_s = Monomial::new(-1, 0, 0);
        let c = Monomial::new(0, 1, 0);
        let c_s = Monomial::new(0, 0, 1);
        let mq = -self.q.clone();
        let one = Rat::one();
        BTreeMap::from(match g {
            Generator::Alpha => [((a, a), one), ((c_s, c), mq)],
            Generator::Gamma => [((c, a), one.clone()), ((a_s, c), one)],
            Generator::AlphaStar => [((a_s, a_s), one), ((c, c_s), mq)],
            Generator::GammaStar => [((c_s, a_s), one.clone()), ((a, c_s), one)],
        })
    }

    pub fn tensor_mul(&self, x: &PbwTensor, y: &PbwTensor) -> PbwTensor {
        let mut out = BTreeMap::new();
        for ((x1, x2), cx) in x {
            for ((y1, y2), cy) in y {
                let left = self.monomial_product(*x1, *y1);
                let right = self.monomial_product(*x2, *y2);
                let c = cx * cy;
                for (l, u) in &left {
                    for (r, v) in &right {
                        add_rat(&mut out, (*l, *r), &c * u * v);
                    }
                }
            }
        }
        prune(out)
    }

    /// `Δ(m)`, built letter by letter from the generator coproducts.
    pub fn monomial_coproduct(&self, m: Monomial) -> PbwTensor {
        if let Some(t) = self.coproducts.borrow().get(&m) {
            return t.clone();
        }
        let t = match m.split_last() {
            None => BTreeMap::from([((Monomial::ONE, Monomial::ONE), Rat::one())]),
            Some((prefix, g)) => {
                let head = self.monomial_coproduct(prefix);
                self.tensor_mul(&head, &self.generator_coproduct(g))
            }
        };
        self.coproducts.borrow_mut().insert(m, t.clone());
        t
    }

    pub fn coproduct(&self, x: &Pbw<Rat>) -> PbwTensor {
        let mut out = BTreeMap::new();
        for (m, c) in x.terms() {
            for (k, v) in self.monomial_coproduct(*m) {
                add_rat(&mut out, k, c * v);
            }
        }
        prune(out)
    }

    /// Counit: `ε(α) = ε(α*) = 1`, `ε(γ) = ε(γ*) = 0`.
    pub fn counit<F: Field>(&self, x: &Pbw<F>) -> F {
        x.terms().filter(|(m, _)| m.gamma == 0 && m.gamma_star == 0).fold(F::zero(), |acc, (_, c)| acc + c.clone())
    }
}

impl<F: Field> Mul<&F> for &Pbw<F> {
    type Output = Pbw<F>;
    fn mul(self, c: &F) -> Pbw<F> {
        self.scale(c)
    }
}
