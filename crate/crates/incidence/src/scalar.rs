//! Exact field elements: arbitrary-precision rationals, Gaussian rationals,
//! and a floating complex backend for constructions that leave the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Relative tolerance used by the Approx backend for equality and coherence.
pub const APPROX_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    /// Lowest terms, positive denominator (BigRational maintains this).
    Rational(BigRational),
    /// a + b*i with rational a, b; b is never zero (else canonicalized to Rational).
    Gaussian(BigRational, BigRational),
    /// Double-precision complex; used only for witnesses that need irrationals.
    Approx(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarError {
    DivisionByZero,
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for ScalarError {}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn gaussian(re: BigRational, im: BigRational) -> Self {
        if im.is_zero() {
            Scalar::Rational(re)
        } else {
            Scalar::Gaussian(re, im)
        }
    }

    pub fn gaussian_int(re: i64, im: i64) -> Self {
        Scalar::gaussian(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn approx(re: f64, im: f64) -> Self {
        Scalar::Approx(re, im)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Approx(..))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian(..) => false,
            Scalar::Approx(re, im) => re.hypot(*im) < APPROX_TOL,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Gaussian(..) => false,
            Scalar::Approx(re, im) => (re - 1.0).hypot(*im) < APPROX_TOL,
        }
    }

    /// Imaginary part is exactly zero (exact variants) or below tolerance (Approx).
    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Rational(_) => true,
            Scalar::Gaussian(..) => false,
            Scalar::Approx(_, im) => im.abs() < APPROX_TOL,
        }
    }

    /// Equality: structural for exact values, relative 1e-9 for Approx.
    pub fn eq_scalar(&self, other: &Scalar) -> bool {
        match (self.is_exact(), other.is_exact()) {
            (true, true) => self == other,
            _ => {
                let (ar, ai) = self.to_f64();
                let (br, bi) = other.to_f64();
                let scale = ar.hypot(ai).max(br.hypot(bi)).max(1.0);
                (ar - br).hypot(ai - bi) < APPROX_TOL * scale
            }
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        fn r2f(r: &BigRational) -> f64 {
            // f64 round trips are fine for the coordinate ranges used here.
            let n = r.numer();
            let d = r.denom();
            let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            nf / df
        }
        match self {
            Scalar::Rational(r) => (r2f(r), 0.0),
            Scalar::Gaussian(re, im) => (r2f(re), r2f(im)),
            Scalar::Approx(re, im) => (*re, *im),
        }
    }

    fn parts(&self) -> (BigRational, BigRational) {
        match self {
            Scalar::Rational(r) => (r.clone(), BigRational::zero()),
            Scalar::Gaussian(re, im) => (re.clone(), im.clone()),
            Scalar::Approx(..) => unreachable!("parts() on Approx"),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Gaussian(re, im) => Scalar::gaussian(re.clone(), -im.clone()),
            Scalar::Approx(re, im) => Scalar::Approx(*re, -im),
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::one() / self.clone())
    }

    /// Parses "p", "p/q", "p/q+r/si", "p-r/si", "i", "-i", or a decimal float (Approx).
    pub fn parse(s: &str) -> Result<Scalar, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty scalar".into());
        }
        if s.ends_with('i') {
            let body = &s[..s.len() - 1];
            // Split into real and imaginary summands at the last +/- not at position 0.
            let split = body
                .char_indices()
                .skip(1)
                .filter(|(i, c)| (*c == '+' || *c == '-') && !body[..*i].ends_with('/'))
                .map(|(i, _)| i)
                .last();
            let (re_str, im_str) = match split {
                Some(i) => (&body[..i], &body[i..]),
                None => ("0", body),
            };
            let re = parse_rational(re_str)?;
            let im_str = match im_str {
                "" | "+" => "1".to_string(),
                "-" => "-1".to_string(),
                t => t.trim_start_matches('+').to_string(),
            };
            let im = parse_rational(&im_str)?;
            Ok(Scalar::gaussian(re, im))
        } else if s.contains('.') || s.contains('e') || s.contains('E') {
            let v: f64 = s.parse().map_err(|_| format!("bad float: {s}"))?;
            Ok(Scalar::Approx(v, 0.0))
        } else {
            Ok(Scalar::Rational(parse_rational(s)?))
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator: {s}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator: {s}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator: {s}"));
        }
        Ok(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| format!("bad integer: {s}"))?;
        Ok(BigRational::from_integer(n))
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_rational(r)),
            Scalar::Gaussian(re, im) => {
                if im.is_negative() {
                    write!(f, "{}-{}i", fmt_rational(re), fmt_rational(&-im.clone()))
                } else {
                    write!(f, "{}+{}i", fmt_rational(re), fmt_rational(im))
                }
            }
            Scalar::Approx(re, im) => {
                if *im == 0.0 {
                    write!(f, "{re}")
                } else {
                    write!(f, "{re}{im:+}i")
                }
            }
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, |$a:ident, $b:ident, $c:ident, $d:ident| $exact:expr, |$x:ident, $y:ident, $u:ident, $v:ident| $float:expr) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                if self.is_exact() && rhs.is_exact() {
                    let ($a, $b) = self.parts();
                    let ($c, $d) = rhs.parts();
                    let (re, im) = $exact;
                    Scalar::gaussian(re, im)
                } else {
                    let ($x, $y) = self.to_f64();
                    let ($u, $v) = rhs.to_f64();
                    let (re, im) = $float;
                    Scalar::Approx(re, im)
                }
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.clone().$method(rhs.clone())
            }
        }
    };
}

binop!(Add, add,
    |a, b, c, d| (a + c, b + d),
    |x, y, u, v| (x + u, y + v));
binop!(Sub, sub,
    |a, b, c, d| (a - c, b - d),
    |x, y, u, v| (x - u, y - v));
binop!(Mul, mul,
    |a, b, c, d| (&a * &c - &b * &d, &a * &d + &b * &c),
    |x, y, u, v| (x * u - y * v, x * v + y * u));

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        if self.is_exact() && rhs.is_exact() {
            let (a, b) = self.parts();
            let (c, d) = rhs.parts();
            let n = &c * &c + &d * &d;
            assert!(!n.is_zero(), "scalar division by zero");
            Scalar::gaussian((&a * &c + &b * &d) / &n, (&b * &c - &a * &d) / &n)
        } else {
            let (x, y) = self.to_f64();
            let (u, v) = rhs.to_f64();
            let n = u * u + v * v;
            Scalar::Approx((x * u + y * v) / n, (y * u - x * v) / n)
        }
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.clone() / rhs.clone()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Gaussian(re, im) => Scalar::Gaussian(-re, -im),
            Scalar::Approx(re, im) => Scalar::Approx(-re, -im),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rational() {
        assert_eq!(Scalar::ratio(2, 4), Scalar::ratio(1, 2));
        assert_eq!(Scalar::ratio(1, -2), Scalar::ratio(-1, 2));
        assert_eq!(format!("{}", Scalar::ratio(-3, 6)), "-1/2");
    }

    #[test]
    fn gaussian_collapses_to_rational() {
        let z = Scalar::gaussian_int(3, 1) - Scalar::gaussian_int(0, 1);
        assert_eq!(z, Scalar::from_int(3));
        assert!(z.is_real());
    }

    #[test]
    fn gaussian_arithmetic() {
        // (1+i)(1-i) = 2
        let z = Scalar::gaussian_int(1, 1) * Scalar::gaussian_int(1, -1);
        assert_eq!(z, Scalar::from_int(2));
        // i / i = 1
        let w = Scalar::gaussian_int(0, 1) / Scalar::gaussian_int(0, 1);
        assert!(w.is_one());
    }

    #[test]
    fn mixing_coerces_to_approx() {
        let z = Scalar::from_int(1) + Scalar::approx(0.5, 0.0);
        assert!(!z.is_exact());
        assert!(z.eq_scalar(&Scalar::ratio(3, 2)));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["5", "-7/3", "2/3+4/5i", "1-2i", "0", "-1/2i"] {
            let v = Scalar::parse(s).unwrap();
            let t = format!("{v}");
            assert_eq!(Scalar::parse(&t).unwrap(), v, "{s} -> {t}");
        }
        assert_eq!(Scalar::parse("i").unwrap(), Scalar::gaussian_int(0, 1));
    }
}
