//! Exact scalar fields.
//!
//! Two concrete fields are provided: [`Rat`] (arbitrary precision rationals)
//! and [`Cyclo`], the cyclotomic field `Q(ζ)` with `ζ = exp(iπ/6)`. The latter
//! contains `i`, the cube roots of unity and every other twelfth root of unity,
//! so characters of `Z_2`, `Z_3`, `Z_4`, `Z_6` and `Z_12` close exactly.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Arbitrary precision rational number.
pub type Rat = BigRational;

/// Build a rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: BigInt = digits.parse().ok()?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(n, den);
        return Some(if neg { -r } else { r });
    }
    s.parse::<BigInt>().ok().map(BigRational::from_integer)
}

/// Format a rational as `p/q` (or `p` when integral).
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Integer power of a rational; negative exponents invert.
pub fn rat_pow(r: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// The exact scalar interface shared by the linear algebra and Hopf engines.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// Complex conjugation (identity on real fields).
    fn conj(&self) -> Self;
    fn from_rat(r: Rat) -> Self;
    fn to_c64(&self) -> Complex64;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }
    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }
    /// `|x|^2` as an element of the field.
    fn norm_sqr(&self) -> Self {
        self.clone() * self.conj()
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(self), 0.0)
    }
}

/// Element `a0 + a1 ζ + a2 ζ² + a3 ζ³` of `Q(ζ)`, `ζ = exp(iπ/6)`, reduced
/// modulo the twelfth cyclotomic polynomial `ζ⁴ − ζ² + 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo([Rat; 4]);

impl Cyclo {
    pub fn new(coeffs: [Rat; 4]) -> Self {
        Cyclo(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat; 4] {
        &self.0
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(12) as usize;
        // ζ⁶ = −1, so reduce to exponent < 6 with a sign
        let (sign, e) = if k >= 6 { (-1, k - 6) } else { (1, k) };
        let base = match e {
            0 => [1, 0, 0, 0],
            1 => [0, 1, 0, 0],
            2 => [0, 0, 1, 0],
            3 => [0, 0, 0, 1],
            // ζ⁴ = ζ² − 1
            4 => [-1, 0, 1, 0],
            // ζ⁵ = ζ³ − ζ
            _ => [0, -1, 0, 1],
        };
        Cyclo(base.map(|c| Rat::from_integer(BigInt::from(sign * c))))
    }

    /// `exp(2πi k / n)`; `n` must divide 12.
    pub fn root_of_unity(k: i64, n: i64) -> Self {
        assert!(n > 0 && 12 % n == 0, "order {n} does not divide 12");
        Self::zeta_pow(k * (12 / n))
    }

    pub fn i() -> Self {
        Self::zeta_pow(3)
    }

    /// Real part if the element is real, `None` otherwise.
    pub fn as_real(&self) -> Option<Rat> {
        let im = self.clone() - self.conj();
        if im.is_zero() {
            // real elements of Q(ζ) lie in Q(√3); only the rational ones are returned
            let c = &self.0;
            if Zero::is_zero(&c[1]) && Zero::is_zero(&c[2]) && Zero::is_zero(&c[3]) {
                return Some(c[0].clone());
            }
        }
        None
    }

    fn mul_raw(a: &[Rat; 4], b: &[Rat; 4]) -> [Rat; 4] {
        let mut p: [Rat; 7] = Default::default();
        for (i, x) in a.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if Zero::is_zero(y) {
                    continue;
                }
                p[i + j] += x * y;
            }
        }
        // ζ⁶ = −1, ζ⁵ = ζ³ − ζ, ζ⁴ = ζ² − 1
        let [p0, p1, p2, p3, p4, p5, p6] = p;
        [p0 - &p4 - &p6, p1 - &p5, p2 + &p4, p3 + p5]
    }
}

impl Default for Cyclo {
    fn default() -> Self {
        <Self as Field>::zero()
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, o: Cyclo) -> Cyclo {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        Cyclo([a0 + b0, a1 + b1, a2 + b2, a3 + b3])
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, o: Cyclo) -> Cyclo {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        Cyclo([a0 - b0, a1 - b1, a2 - b2, a3 - b3])
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo(self.0.map(|c| -c))
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, o: Cyclo) -> Cyclo {
        Cyclo(Cyclo::mul_raw(&self.0, &o.0))
    }
}

impl Field for Cyclo {
    fn zero() -> Self {
        Cyclo(Default::default())
    }
    fn one() -> Self {
        Self::from_rat(One::one())
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // Solve x·y = 1 through the 4×4 multiplication matrix of x.
        let mut cols: Vec<[Rat; 4]> = Vec::with_capacity(4);
        for k in 0..4 {
            let e = Cyclo::zeta_pow(k as i64);
            cols.push(Cyclo::mul_raw(&self.0, &e.0));
        }
        let mut m: Vec<Vec<Rat>> = (0..4)
            .map(|r| {
                let mut row: Vec<Rat> = (0..4).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { One::one() } else { Zero::zero() });
                row
            })
            .collect();
        for c in 0..4 {
            let p = (c..4).find(|&r| !Zero::is_zero(&m[r][c]))?;
            m.swap(c, p);
            let piv = m[c][c].recip();
            for v in m[c].iter_mut() {
                *v = &*v * &piv;
            }
            for r in 0..4 {
                if r != c && !Zero::is_zero(&m[r][c]) {
                    let f = m[r][c].clone();
                    for k in 0..5 {
                        let t = &m[c][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
        }
        Some(Cyclo([
            m[0][4].clone(),
            m[1][4].clone(),
            m[2][4].clone(),
            m[3][4].clone(),
        ]))
    }
    fn conj(&self) -> Self {
        // ζ̄ = ζ⁻¹ = ζ¹¹
        let mut out = Cyclo::zero();
        for (k, c) in self.0.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let mut t = Cyclo::zeta_pow(-(k as i64));
            t.0 = t.0.map(|x| x * c);
            out = out + t;
        }
        out
    }
    fn from_rat(r: Rat) -> Self {
        Cyclo([r, Zero::zero(), Zero::zero(), Zero::zero()])
    }
    fn to_c64(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 6.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for c in &self.0 {
            acc += p * rat_to_f64(c);
            p *= z;
        }
        acc
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_real() {
            return write!(f, "{}", fmt_rat(&r));
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| match k {
                0 => fmt_rat(c),
                _ => format!("{}·ζ^{k}", fmt_rat(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Relative/absolute float comparison used by the floating fallbacks.
pub fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Sign helper that keeps `0` distinct.
pub fn rat_sign(r: &Rat) -> i32 {
    if Zero::is_zero(r) {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
