//! Real numbers of the form `±√r` with `r` rational, and finite sums of them.
//!
//! Entries of the orthogonal matrices we care about are of this shape
//! (`√(1/2)`, `−√2`, ...), and products of two such numbers stay in the class.

use crate::scalar::{fmt_rat, parse_rat, rat_to_f64, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// `sign · √radicand`, radicand ≥ 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    pub negative: bool,
    pub radicand: Rat,
}

fn perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational if it is rational.
pub fn rat_sqrt(r: &Rat) -> Option<Rat> {
    let n = perfect_square(r.numer())?;
    let d = perfect_square(r.denom())?;
    Some(Rat::new(n, d))
}

impl Surd {
    pub fn zero() -> Self {
        Surd { negative: false, radicand: Rat::zero() }
    }

    pub fn from_rat(r: &Rat) -> Self {
        Surd { negative: r.is_negative(), radicand: r * r }
    }

    pub fn sqrt(r: Rat) -> Self {
        assert!(!r.is_negative(), "negative radicand");
        Surd { negative: false, radicand: r }
    }

    pub fn is_zero(&self) -> bool {
        self.radicand.is_zero()
    }

    pub fn neg(&self) -> Self {
        Surd { negative: !self.negative && !self.is_zero(), radicand: self.radicand.clone() }
    }

    pub fn mul(&self, o: &Surd) -> Surd {
        let radicand = &self.radicand * &o.radicand;
        let negative = (self.negative != o.negative) && !radicand.is_zero();
        Surd { negative, radicand }
    }

    /// Exact square, always rational.
    pub fn square(&self) -> Rat {
        self.radicand.clone()
    }

    pub fn to_f64(&self) -> f64 {
        let v = rat_to_f64(&self.radicand).sqrt();
        if self.negative {
            -v
        } else {
            v
        }
    }

    /// Rational value if the radicand is a perfect square.
    pub fn as_rat(&self) -> Option<Rat> {
        let r = rat_sqrt(&self.radicand)?;
        Some(if self.negative { -r } else { r })
    }

    /// Parse `"p/r"`, `"-0.5"`, `"sqrt(p/r)"` or `"-sqrt(p/r)"`.
    pub fn parse(s: &str) -> Option<Surd> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, s.strip_prefix('+').unwrap_or(s).trim()),
        };
        if let Some(inner) = body.strip_prefix("sqrt(").and_then(|b| b.strip_suffix(')')) {
            let r = parse_rat(inner)?;
            if r.is_negative() {
                return None;
            }
            let v = Surd::sqrt(r);
            return Some(if neg { v.neg() } else { v });
        }
        let r = parse_rat(body)?;
        let v = Surd::from_rat(&r);
        Some(if neg { v.neg() } else { v })
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { "-" } else { "" };
        match self.as_rat() {
            Some(r) => write!(f, "{}", fmt_rat(&r)),
            None => write!(f, "{sign}sqrt({})", fmt_rat(&self.radicand)),
        }
    }
}

/// Finite sum of surds with pairwise incommensurable radicands.
///
/// Square roots of rationals whose ratio is not a rational square are
/// linearly independent over Q, so the canonical form decides equality.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SurdSum {
    /// (coefficient, radicand): value = Σ coeff·√radicand
    terms: Vec<(Rat, Rat)>,
}

impl SurdSum {
    pub fn zero() -> Self {
        SurdSum { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_surd(&mut self, s: &Surd) {
        if s.is_zero() {
            return;
        }
        let sign = if s.negative { -Rat::one() } else { Rat::one() };
        // √a = √b · √(a/b), commensurable iff a/b is a rational square
        let hit = self
            .terms
            .iter()
            .enumerate()
            .find_map(|(i, (_, rad))| rat_sqrt(&(&s.radicand / rad)).map(|r| (i, r)));
        match hit {
            Some((i, ratio)) => {
                self.terms[i].0 += sign * ratio;
                if self.terms[i].0.is_zero() {
                    self.terms.remove(i);
                }
            }
            None => self.terms.push((sign, s.radicand.clone())),
        }
    }

    pub fn add(&mut self, o: &SurdSum) {
        for (c, r) in &o.terms {
            let mut s = Surd::sqrt(r.clone());
            s.radicand = &s.radicand * c * c;
            if c.is_negative() {
                s = s.neg();
            }
            self.add_surd(&s);
        }
    }

    pub fn neg(&self) -> SurdSum {
        SurdSum { terms: self.terms.iter().map(|(c, r)| (-c, r.clone())).collect() }
    }

    /// Rational value when the sum has only a rational part.
    pub fn as_rat(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(c, r)] => rat_sqrt(r).map(|s| c * s),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(c, r)| rat_to_f64(c) * rat_to_f64(r).sqrt()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn parse_and_multiply() {
        let a = Surd::parse("sqrt(1/2)").unwrap();
        let b = Surd::parse("-sqrt(2)").unwrap();
        assert_eq!(a.mul(&b).as_rat(), Some(rat(-1, 1)));
        assert_eq!(Surd::parse("-3/4").unwrap().as_rat(), Some(rat(-3, 4)));
    }

    #[test]
    fn sums_combine_commensurable_terms() {
        let mut s = SurdSum::zero();
        s.add_surd(&Surd::sqrt(rat(2, 1)));
        s.add_surd(&Surd::sqrt(rat(8, 1)));
        s.add_surd(&Surd::sqrt(rat(3, 1)));
        assert!((s.to_f64() - (3.0 * 2f64.sqrt() + 3f64.sqrt())).abs() < 1e-12);
        s.add_surd(&Surd::sqrt(rat(18, 1)).neg());
        s.add_surd(&Surd::sqrt(rat(3, 1)).neg());
        assert!(s.is_zero());
    }
}

/// `a + b√r` for a rational non-square radicand `r`; `radicand` is `None`
/// exactly when `b = 0`, so derived equality is equality of numbers.
///
/// Values with different radicands must not be mixed; doing so panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    rational: Rat,
    surd: Rat,
    radicand: Option<Rat>,
}

impl Quadratic {
    fn normalized(rational: Rat, surd: Rat, radicand: Option<Rat>) -> Self {
        if surd.is_zero() || radicand.is_none() {
            return Quadratic { rational, surd: Rat::zero(), radicand: None };
        }
        Quadratic { rational, surd, radicand }
    }

    /// `√r`, rational whenever `r` is a rational square.
    pub fn sqrt(r: Rat) -> Self {
        assert!(!r.is_negative(), "negative radicand");
        match rat_sqrt(&r) {
            Some(s) => Quadratic::normalized(s, Rat::zero(), None),
            None => Quadratic::normalized(Rat::zero(), Rat::one(), Some(r)),
        }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.rational
    }

    pub fn surd_part(&self) -> &Rat {
        &self.surd
    }

    pub fn radicand(&self) -> Option<&Rat> {
        self.radicand.as_ref()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.radicand.is_none().then_some(&self.rational)
    }

    fn common(&self, o: &Quadratic) -> Option<Rat> {
        match (&self.radicand, &o.radicand) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixed quadratic fields");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let s = self.radicand.as_ref().map_or(0.0, |r| rat_to_f64(r).sqrt());
        rat_to_f64(&self.rational) + rat_to_f64(&self.surd) * s
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radicand {
            None => write!(f, "{}", fmt_rat(&self.rational)),
            Some(r) => write!(f, "{} + {}·√({})", fmt_rat(&self.rational), fmt_rat(&self.surd), fmt_rat(r)),
        }
    }
}

impl std::ops::Add for Quadratic {
    type Output = Quadratic;
    fn add(self, o: Quadratic) -> Quadratic {
        let r = self.common(&o);
        Quadratic::normalized(self.rational + o.rational, self.surd + o.surd, r)
    }
}

impl std::ops::Sub for Quadratic {
    type Output = Quadratic;
    fn sub(self, o: Quadratic) -> Quadratic {
        self + (-o)
    }
}

impl std::ops::Neg for Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic::normalized(-self.rational, -self.surd, self.radicand)
    }
}

impl std::ops::Mul for Quadratic {
    type Output = Quadratic;
    fn mul(self, o: Quadratic) -> Quadratic {
        let r = self.common(&o);
        let d = r.clone().unwrap_or_else(Rat::zero);
        let rational = &self.rational * &o.rational + &self.surd * &o.surd * &d;
        let surd = &self.rational * &o.surd + &self.surd * &o.rational;
        Quadratic::normalized(rational, surd, r)
    }
}

impl Default for Quadratic {
    fn default() -> Self {
        Quadratic::normalized(Rat::zero(), Rat::zero(), None)
    }
}

impl crate::scalar::Field for Quadratic {
    fn zero() -> Self {
        Quadratic::default()
    }
    fn one() -> Self {
        Quadratic::normalized(<Rat as One>::one(), <Rat as Zero>::zero(), None)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.rational) && Zero::is_zero(&self.surd)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (a + b√r)⁻¹ = (a − b√r)/(a² − b²r); the norm is nonzero since r is not a square
        let d = self.radicand.clone().unwrap_or_else(<Rat as Zero>::zero);
        let norm = &self.rational * &self.rational - &self.surd * &self.surd * &d;
        Some(Quadratic::normalized(&self.rational / &norm, -(&self.surd / &norm), self.radicand.clone()))
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rat(r: Rat) -> Self {
        Quadratic::normalized(r, <Rat as Zero>::zero(), None)
    }
    fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.to_f64(), 0.0)
    }
}
