//! Exact coefficients: rationals, optionally polynomial in a formal parameter `t`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::GlaError;

pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// An exact scalar: a rational number, or a polynomial of positive degree in `t`.
///
/// The two variants never overlap: a polynomial whose `t`-degree drops to zero is
/// stored as `Rat`, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    /// Coefficients in increasing powers of `t`; length >= 2, last entry nonzero.
    Poly(Vec<Rational>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rat(rat(n))
    }

    /// The formal deformation parameter.
    pub fn t() -> Self {
        Scalar::Poly(vec![Rational::zero(), Rational::one()])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Scalar::from_coeffs(coeffs)
    }

    /// Builds a scalar from `t`-coefficients, normalizing trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Scalar::zero(),
            1 => Scalar::Rat(coeffs.pop().unwrap()),
            _ => Scalar::Poly(coeffs),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Poly(_) => None,
        }
    }

    /// Degree in `t` (0 for every rational, including zero).
    pub fn t_degree(&self) -> usize {
        match self {
            Scalar::Rat(_) => 0,
            Scalar::Poly(c) => c.len() - 1,
        }
    }

    /// Coefficient of `t^k`.
    pub fn t_coeff(&self, k: usize) -> Rational {
        match self {
            Scalar::Rat(r) => {
                if k == 0 {
                    r.clone()
                } else {
                    Rational::zero()
                }
            }
            Scalar::Poly(c) => c.get(k).cloned().unwrap_or_else(Rational::zero),
        }
    }

    fn coeffs(&self) -> Vec<Rational> {
        match self {
            Scalar::Rat(r) => vec![r.clone()],
            Scalar::Poly(c) => c.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(a * r),
            Scalar::Poly(c) => Scalar::from_coeffs(c.iter().map(|x| x * r).collect()),
        }
    }

    /// Specializes `t` to the given rational value.
    pub fn eval_t(&self, t: &Rational) -> Rational {
        match self {
            Scalar::Rat(r) => r.clone(),
            Scalar::Poly(c) => c
                .iter()
                .rev()
                .fold(Rational::zero(), |acc, x| acc * t + x),
        }
    }

    /// Multiplicative inverse of a nonzero rational scalar.
    pub fn inv(&self) -> Result<Scalar, GlaError> {
        match self {
            Scalar::Rat(r) if !r.is_zero() => Ok(Scalar::Rat(r.recip())),
            Scalar::Rat(_) => Err(GlaError::Arithmetic("division by zero".into())),
            Scalar::Poly(_) => Err(GlaError::Arithmetic(
                "polynomial in t is not invertible".into(),
            )),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let (a, b) = (self.coeffs(), rhs.coeffs());
                let len = a.len().max(b.len());
                let out = (0..len)
                    .map(|i| {
                        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                        match b.get(i) {
                            Some(y) => x + y,
                            None => x,
                        }
                    })
                    .collect();
                Scalar::from_coeffs(out)
            }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), p) | (p, Scalar::Rat(a)) => p.scale(a),
            (Scalar::Poly(a), Scalar::Poly(b)) => {
                let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                Scalar::from_coeffs(out)
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Poly(c) => Scalar::Poly(c.iter().map(|x| -x).collect()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `3/2`; polynomials as `1-2*t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => f.write_str(&fmt_rational(r)),
            Scalar::Poly(c) => {
                let mut out = String::new();
                for (k, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let neg = x.is_negative();
                    let abs = x.abs();
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push(if neg { '-' } else { '+' });
                    }
                    let body = match k {
                        0 => fmt_rational(&abs),
                        _ => {
                            let tp = if k == 1 { "t".to_string() } else { format!("t^{k}") };
                            if abs.is_one() {
                                tp
                            } else {
                                format!("{}*{}", fmt_rational(&abs), tp)
                            }
                        }
                    };
                    out.push_str(&body);
                }
                f.write_str(&out)
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rational(s: &str) -> Result<Rational, GlaError> {
    let bad = || GlaError::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Scalar {
    type Err = GlaError;

    /// Accepts the `Display` format: sums of terms `c`, `c*t`, `c*t^k`, `t^k`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(GlaError::Parse("empty scalar".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut acc = Scalar::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let (coef, power) = match body.find('t') {
                None => (parse_rational(body)?, 0usize),
                Some(pos) => {
                    let coef_part = body[..pos].trim_end_matches('*');
                    let coef = if coef_part.is_empty() {
                        Rational::one()
                    } else {
                        parse_rational(coef_part)?
                    };
                    let rest = &body[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|p| p.parse().ok())
                            .ok_or_else(|| GlaError::Parse(format!("invalid scalar `{s}`")))?
                    };
                    (coef, power)
                }
            };
            acc += &Scalar::monomial(coef * rat(sign), power);
        }
        Ok(acc)
    }
}
