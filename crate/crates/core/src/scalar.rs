//! Exact scalars: rational functions in the deformation parameter `q`.
//!
//! Every coefficient in the engine is a [`RatFunc`], a reduced quotient of
//! Laurent polynomials with arbitrary-precision rational coefficients. The
//! canonical form makes equality (and in particular zero testing) structural,
//! which the linear-algebra layer relies on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational number, always stored reduced.
pub type Rational = BigRational;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    PoleAtEvaluationPoint(Rational),
    #[error("cannot evaluate at q = 0")]
    ZeroEvaluationPoint,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// Laurent polynomial `sum c_k q^k`, stored densely from the lowest exponent.
///
/// Invariant: either `coeffs` is empty (the zero polynomial, `low == 0`) or
/// both the first and the last stored coefficient are nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: Rational, exp: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: exp, coeffs: vec![c] }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, Rational)>>(terms: I) -> Self {
        let terms: Vec<(i32, Rational)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::trimmed(low, coeffs)
    }

    fn trimmed(mut low: i32, mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            low += lead_zeros as i32;
        }
        LaurentPoly { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i32 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn high(&self) -> i32 {
        if self.coeffs.is_empty() {
            0
        } else {
            self.low + self.coeffs.len() as i32 - 1
        }
    }

    /// Coefficient of `q^exp`.
    pub fn coeff(&self, exp: i32) -> Rational {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            Rational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Exact evaluation; `q0` must be nonzero when negative powers occur.
    pub fn eval(&self, q0: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q0 + c;
        }
        if self.low >= 0 {
            acc * pow_rational(q0, self.low as u32)
        } else {
            acc / pow_rational(q0, (-self.low) as u32)
        }
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let mut coeffs = vec![Rational::zero(); (high - low + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - low) as usize + i];
            if negate {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::trimmed(low, coeffs)
    }

    /// `self` viewed as an ordinary polynomial after dividing by `q^low`.
    fn stripped(&self) -> Vec<Rational> {
        self.coeffs.clone()
    }

    fn from_poly(shift: i32, coeffs: Vec<Rational>) -> Self {
        Self::trimmed(shift, coeffs)
    }
}

fn pow_rational(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_signed(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.add_signed(rhs, true)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]).shift(rhs.low);
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]).shift(self.low);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::trimmed(self.low + rhs.low, coeffs)
    }
}

// Dense polynomial helpers over Q; index = exponent, no trailing zeros.

fn poly_trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem: Vec<Rational> = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let shift = rem.len() - 1 - db;
        let factor = &rem[rem.len() - 1] * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &factor * bc;
        }
        quot[shift] = factor;
        rem.pop();
        poly_trim(&mut rem);
    }
    (quot, rem)
}

/// Monic gcd of two nonzero polynomials.
fn poly_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().cloned().unwrap_or_else(Rational::one);
    x.iter().map(|c| c / &lead).collect()
}

/// Element of `Q(q)` in canonical form.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero
/// constant term equal to 1; every power of `q` lives in the numerator; the
/// two are coprime. Two equal rational functions therefore have identical
/// fields.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    /// The deformation parameter.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(k: i32) -> Self {
        RatFunc { num: LaurentPoly::monomial(Rational::one(), k), den: LaurentPoly::one() }
    }

    /// `(-q)^k`.
    pub fn neg_q_pow(k: i32) -> Self {
        let r = Self::q_pow(k);
        if k.rem_euclid(2) == 1 {
            -&r
        } else {
            r
        }
    }

    /// `q - q^{-1}`.
    pub fn q_minus_q_inv() -> Self {
        Self::from_laurent(LaurentPoly::from_terms([
            (1, Rational::one()),
            (-1, -Rational::one()),
        ]))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn from_laurent(num: LaurentPoly) -> Self {
        RatFunc { num, den: LaurentPoly::one() }
    }

    /// Reduced `num / den`.
    pub fn from_parts(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value lies in `Q[q, q^{-1}]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// `Some((c, k))` when `self = c q^k` with `c` rational.
    pub fn as_unit_monomial(&self) -> Option<(Rational, i32)> {
        if self.den.is_one() && self.num.coeffs.len() == 1 {
            Some((self.num.coeffs[0].clone(), self.num.low))
        } else {
            None
        }
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        // Move powers of q out of the denominator.
        let shift = num.low - den.low;
        let mut n = num.stripped();
        let mut d = den.stripped();
        if d.len() > 1 {
            let g = poly_gcd(&n, &d);
            if g.len() > 1 {
                n = poly_divrem(&n, &g).0;
                d = poly_divrem(&d, &g).0;
            }
        }
        let c = d[0].clone();
        if !c.is_one() {
            let inv = c.recip();
            for x in n.iter_mut() {
                *x *= &inv;
            }
            for x in d.iter_mut() {
                *x *= &inv;
            }
        }
        RatFunc { num: LaurentPoly::from_poly(shift, n), den: LaurentPoly::from_poly(0, d) }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Exact value at `q = q0`.
    pub fn eval_at(&self, q0: &Rational) -> Result<Rational, ScalarError> {
        if q0.is_zero() {
            return Err(ScalarError::ZeroEvaluationPoint);
        }
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ScalarError::PoleAtEvaluationPoint(q0.clone()));
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Integer-coefficient polynomials `(p, r)` in nonnegative powers of `q`
    /// with `self = p / r`, content removed and `r` with positive leading
    /// coefficient. Used for display only.
    fn integer_display_parts(&self) -> (Vec<(i32, BigInt)>, Vec<(i32, BigInt)>) {
        let lift = if self.num.low < 0 { -self.num.low } else { 0 };
        let num: Vec<(i32, Rational)> =
            self.num.terms().map(|(e, c)| (e + lift, c.clone())).collect();
        let den: Vec<(i32, Rational)> =
            self.den.terms().map(|(e, c)| (e + lift, c.clone())).collect();
        let mut lcm = BigInt::one();
        for (_, c) in num.iter().chain(den.iter()) {
            lcm = lcm.lcm(c.denom());
        }
        let to_int = |v: &[(i32, Rational)]| -> Vec<(i32, BigInt)> {
            v.iter()
                .map(|(e, c)| (*e, (c * Rational::from_integer(lcm.clone())).to_integer()))
                .collect()
        };
        let mut n = to_int(&num);
        let mut d = to_int(&den);
        let mut g = BigInt::zero();
        for (_, c) in n.iter().chain(d.iter()) {
            g = g.gcd(c);
        }
        let negate = d.last().is_some_and(|(_, c)| c.is_negative());
        for (_, c) in n.iter_mut().chain(d.iter_mut()) {
            *c = &*c / &g;
            if negate {
                *c = -&*c;
            }
        }
        (n, d)
    }
}

fn write_int_poly(f: &mut fmt::Formatter<'_>, terms: &[(i32, BigInt)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (idx, (e, c)) in terms.iter().rev().enumerate() {
        let mag = c.abs();
        if idx == 0 {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        match (*e, mag.is_one()) {
            (0, _) => write!(f, "{mag}")?,
            (1, true) => write!(f, "q")?,
            (1, false) => write!(f, "{mag}q")?,
            (_, true) => write!(f, "q^{e}")?,
            (_, false) => write!(f, "{mag}q^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integer_display_parts();
        let den_is_one = d.len() == 1 && d[0].0 == 0 && d[0].1.is_one();
        if den_is_one {
            write_int_poly(f, &n)
        } else {
            write!(f, "(")?;
            write_int_poly(f, &n)?;
            write!(f, ")/(")?;
            write_int_poly(f, &d)?;
            write!(f, ")")
        }
    }
}

fn parse_poly(src: &str) -> Result<LaurentPoly, ScalarError> {
    let err = || ScalarError::Parse(src.to_string());
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0;
    let mut i = 1;
    // Split on top-level signs that do not follow '^' (negative exponents).
    let mut pieces = Vec::new();
    while i <= bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^') {
            pieces.push(&s[start..i]);
            start = i;
        }
        i += 1;
    }
    for piece in pieces {
        let (sign, body) = match piece.as_bytes()[0] {
            b'-' => (-Rational::one(), &piece[1..]),
            b'+' => (Rational::one(), &piece[1..]),
            _ => (Rational::one(), piece),
        };
        let (coef_str, exp) = match body.find('q') {
            None => (body, 0),
            Some(pos) => {
                let rest = &body[pos + 1..];
                let exp = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(err)?.parse::<i32>().map_err(|_| err())?
                };
                (body[..pos].trim_end_matches('*'), exp)
            }
        };
        let coef = if coef_str.is_empty() {
            Rational::one()
        } else {
            Rational::from_str(coef_str).map_err(|_| err())?
        };
        terms.push((exp, sign * coef));
    }
    Ok(LaurentPoly::from_terms(terms))
}

impl FromStr for RatFunc {
    type Err = ScalarError;

    /// Accepts the display format, e.g. `(q^2 - 1)/(q)`, `-q^3`, `q^-1 + 2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            if let Some((num, den)) = rest.split_once(")/(") {
                let den = den.strip_suffix(')').ok_or_else(|| ScalarError::Parse(s.into()))?;
                return RatFunc::from_parts(parse_poly(num)?, parse_poly(den)?);
            }
        }
        Ok(RatFunc::from_laurent(parse_poly(s)?))
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc { num: &self.num + &rhs.num, den: LaurentPoly::one() };
            }
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: LaurentPoly::one() };
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] otherwise.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl PartialOrd for RatFunc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Arbitrary but fixed total order, used only to make containers deterministic.
impl Ord for RatFunc {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_pair() {
        assert!((RatFunc::q() * RatFunc::q_pow(-1)).is_one());
    }

    #[test]
    fn polynomial_division() {
        let a = r("q^2 - 1");
        let b = r("q - 1");
        assert_eq!(&a / &b, r("q + 1"));
    }

    #[test]
    fn sign_power_rule() {
        assert_eq!(RatFunc::neg_q_pow(3), -RatFunc::q_pow(3));
        assert_eq!((-RatFunc::q()).pow(3).unwrap(), -RatFunc::q_pow(3));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(RatFunc::one().checked_div(&RatFunc::zero()), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn evaluation() {
        assert_eq!(RatFunc::q_minus_q_inv().eval_at(&rat(2, 1)).unwrap(), rat(3, 2));
        assert_eq!(RatFunc::one().eval_at(&rat(-7, 3)).unwrap(), rat(1, 1));
        let pole = RatFunc::one().checked_div(&r("q - 1")).unwrap();
        assert_eq!(pole.eval_at(&rat(1, 1)), Err(ScalarError::PoleAtEvaluationPoint(rat(1, 1))));
    }

    #[test]
    fn display_clears_negative_powers() {
        assert_eq!(RatFunc::q_minus_q_inv().to_string(), "(q^2 - 1)/(q)");
        assert_eq!(RatFunc::neg_q_pow(3).to_string(), "-q^3");
        assert_eq!(RatFunc::zero().to_string(), "0");
        let x = RatFunc::from_rational(rat(2, 3)).checked_div(&r("q + 1")).unwrap();
        assert_eq!(x.to_string(), "(2)/(3q + 3)");
    }

    #[test]
    fn parsing_accepts_negative_exponents() {
        assert_eq!(r("q^-1"), RatFunc::q_pow(-1));
        assert_eq!(r("q - q^-1"), RatFunc::q_minus_q_inv());
        assert_eq!(r("3*q^2 - 1/2"), RatFunc::from_laurent(LaurentPoly::from_terms([
            (2, rat(3, 1)),
            (0, rat(-1, 2)),
        ])));
    }

    #[test]
    fn canonical_form_moves_q_powers_to_numerator() {
        let x = RatFunc::from_parts(LaurentPoly::one(), LaurentPoly::monomial(rat(2, 1), 3)).unwrap();
        assert!(x.is_laurent());
        assert_eq!(x, RatFunc::from_rational(rat(1, 2)) * RatFunc::q_pow(-3));
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        let poly = prop::collection::vec((-3i32..4, -4i64..5), 0..4).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(e, c)| (e, Rational::from_integer(c.into()))))
        });
        (poly.clone(), poly).prop_map(|(n, d)| {
            if d.is_zero() {
                RatFunc::from_laurent(n)
            } else {
                RatFunc::from_parts(n, d).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn normalization_is_idempotent(a in small_ratfunc()) {
            let again = RatFunc::from_parts(a.numerator().clone(), a.denominator().clone()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn display_round_trips(a in small_ratfunc()) {
            prop_assert_eq!(a.to_string().parse::<RatFunc>().unwrap(), a);
        }

        #[test]
        fn evaluation_is_multiplicative(a in small_ratfunc(), b in small_ratfunc(), n in 2i64..9, d in 1i64..5) {
            let q0 = rat(n, d);
            if let (Ok(x), Ok(y)) = (a.eval_at(&q0), b.eval_at(&q0)) {
                prop_assert_eq!((&a * &b).eval_at(&q0).unwrap(), x * y);
            }
        }
    }
}
