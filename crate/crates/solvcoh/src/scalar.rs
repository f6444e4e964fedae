//! Exact scalar arithmetic over the Gaussian rationals.
//!
//! Every quantity in this crate is a dimension of a finite complex over an
//! exact field, so the coefficient type is `re + im·√−1` with both parts
//! arbitrary-precision rationals. There are no tolerances anywhere: equality
//! is exact equality of reduced fractions.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// An element of ℚ(√−1). `BigRational` keeps numerator and denominator
/// reduced with a positive denominator, so values are canonical by
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit √−1.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `p/q` as a real scalar. Panics if `q == 0`.
    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        assert!(re_den != 0 && im_den != 0, "zero denominator");
        Scalar {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|² = re² + im², a rational number.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse. Panics on zero; callers check first.
    pub fn inv(&self) -> Self {
        let n = self.norm_sq();
        assert!(!n.is_zero(), "inverse of zero scalar");
        Scalar {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($trait_:ident, $method:ident) => {
        impl $trait_ for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
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
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let im_part = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", fmt_rational(&self.im))
        };
        if self.re.is_zero() {
            write!(f, "{}", im_part)
        } else if self.im.is_negative() {
            write!(f, "{}{}", fmt_rational(&self.re), im_part)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.re), im_part)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Render a rational in the `p/q` form used by fixture files and machine
/// output (`p` alone when the denominator is 1).
pub fn rational_token(r: &BigRational) -> String {
    fmt_rational(r)
}

/// Parse a `p/q` or `p` token into a real scalar.
pub fn parse_real_scalar(tok: &str) -> Option<Scalar> {
    let re = parse_rational(tok)?;
    Some(Scalar::new(re, BigRational::zero()))
}

/// Parse a `p/q` or `p` token into an exact rational.
pub fn parse_rational(tok: &str) -> Option<BigRational> {
    match tok.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().ok()?;
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => {
            let p: BigInt = tok.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_exactly() {
        let a = Scalar::from_parts(2, 3, -1, 7);
        let b = Scalar::from_parts(-5, 2, 1, 3);
        let c = Scalar::from_parts(0, 1, 4, 9);
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        assert_eq!(&a * &a.inv(), Scalar::one());
        assert_eq!(&a / &a, Scalar::one());
    }

    #[test]
    fn i_squares_to_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_integer(-1));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(Scalar::from_ratio(4, 6).to_string(), "2/3");
        assert_eq!(Scalar::from_parts(1, 1, -1, 2).to_string(), "1-1/2i");
        assert_eq!(Scalar::i().to_string(), "i");
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn rational_tokens_round_trip() {
        for t in ["0", "5", "-7/3", "22/7"] {
            let r = parse_rational(t).unwrap();
            assert_eq!(rational_token(&r), t);
        }
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
