//! Exact numbers in ℚ and ℚ(√d), with a tolerance-based floating point
//! fallback for dihedral groups whose coordinates leave every quadratic field.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Absolute tolerance used by every comparison involving a [`Scalar::Float`].
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Radicands admitted for quadratic scalars.
pub const RADICANDS: [u32; 3] = [2, 3, 5];

/// A number `a + b·√d` with exact rational `a`, `b`, or an inexact float.
///
/// `Quadratic` always carries a nonzero irrational coefficient; arithmetic
/// that cancels it collapses the result back to `Rational`.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Quadratic {
        rational: BigRational,
        irrational: BigRational,
        radicand: u32,
    },
    Float(f64),
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64; scale both down
        let n = r.numer().to_string();
        let d = r.denom().to_string();
        n.parse::<f64>().unwrap_or(f64::NAN) / d.parse::<f64>().unwrap_or(f64::NAN)
    })
}

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

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::Rational(ratio(n, d))
    }

    /// `(a_num/a_den) + (b_num/b_den)·√d`.
    pub fn quadratic(a: (i64, i64), b: (i64, i64), radicand: u32) -> Self {
        Self::from_parts(ratio(a.0, a.1), ratio(b.0, b.1), radicand)
    }

    /// `√d` for an admitted radicand.
    pub fn sqrt(radicand: u32) -> Self {
        Self::quadratic((0, 1), (1, 1), radicand)
    }

    pub fn from_parts(rational: BigRational, irrational: BigRational, radicand: u32) -> Self {
        if irrational.is_zero() {
            Scalar::Rational(rational)
        } else {
            debug_assert!(RADICANDS.contains(&radicand), "radicand {radicand}");
            Scalar::Quadratic {
                rational,
                irrational,
                radicand,
            }
        }
    }

    pub fn float(x: f64) -> Self {
        Scalar::Float(x)
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::Float(_))
    }

    /// The radicand of the field this value lives in, `None` for rationals
    /// and floats.
    pub fn radicand(&self) -> Option<u32> {
        match self {
            Scalar::Quadratic { radicand, .. } => Some(*radicand),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_integer())
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(r) => ratio_to_f64(r),
            Scalar::Quadratic {
                rational,
                irrational,
                radicand,
            } => ratio_to_f64(rational) + ratio_to_f64(irrational) * (*radicand as f64).sqrt(),
            Scalar::Float(x) => *x,
        }
    }

    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    fn parts(&self) -> (BigRational, BigRational, u32) {
        match self {
            Scalar::Rational(r) => (r.clone(), BigRational::zero(), 1),
            Scalar::Quadratic {
                rational,
                irrational,
                radicand,
            } => (rational.clone(), irrational.clone(), *radicand),
            Scalar::Float(_) => unreachable!("parts() on a float scalar"),
        }
    }

    fn common_radicand(x: u32, y: u32) -> u32 {
        match (x, y) {
            (1, d) | (d, 1) => d,
            (d, e) if d == e => d,
            (d, e) => panic!("scalars from distinct fields Q(√{d}) and Q(√{e}) combined"),
        }
    }

    /// Sign of the represented real number, exact unless a float is involved.
    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Rational(r) => r.cmp(&BigRational::zero()),
            Scalar::Quadratic {
                rational,
                irrational,
                radicand,
            } => {
                let sa = rational.cmp(&BigRational::zero());
                let sb = irrational.cmp(&BigRational::zero());
                if sa == Ordering::Equal || sa == sb {
                    return sb;
                }
                // opposite signs: |a| vs |b|√d decided by a² vs b²d
                let a2 = rational * rational;
                let b2d = irrational * irrational * BigRational::from_integer(BigInt::from(*radicand));
                if a2 > b2d {
                    sa
                } else {
                    sb
                }
            }
            Scalar::Float(x) => {
                if x.abs() <= FLOAT_TOLERANCE {
                    Ordering::Equal
                } else if *x > 0.0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == Ordering::Equal
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Quadratic {
                rational,
                irrational,
                radicand,
            } => {
                // 1/(a+b√d) = (a-b√d)/(a²-b²d)
                let norm = rational * rational
                    - irrational * irrational * BigRational::from_integer(BigInt::from(*radicand));
                Scalar::from_parts(rational / &norm, -(irrational / &norm), *radicand)
            }
            Scalar::Float(x) => Scalar::Float(1.0 / x),
        })
    }

    /// Exact-decimal-free rendering: `a/b` or `a/b+c/e√d`.
    pub fn to_exact_string(&self) -> String {
        self.to_string()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (Scalar::Float(_), _) | (_, Scalar::Float(_)) => Scalar::Float(self.to_f64() + rhs.to_f64()),
            _ => {
                let (a, b, d) = self.parts();
                let (c, e, f) = rhs.parts();
                Scalar::from_parts(a + c, b + e, Scalar::common_radicand(d, f))
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
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (Scalar::Float(_), _) | (_, Scalar::Float(_)) => Scalar::Float(self.to_f64() * rhs.to_f64()),
            _ => {
                let (a, b, d) = self.parts();
                let (c, e, f) = rhs.parts();
                let d = Scalar::common_radicand(d, f);
                let dd = BigRational::from_integer(BigInt::from(d));
                Scalar::from_parts(&a * &c + &b * &e * dd, a * e + b * c, d)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Quadratic {
                rational,
                irrational,
                radicand,
            } => Scalar::Quadratic {
                rational: -rational,
                irrational: -irrational,
                radicand: *radicand,
            },
            Scalar::Float(x) => Scalar::Float(-x),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact total order on exact values. Comparisons involving a float treat
/// values within [`FLOAT_TOLERANCE`] as equal.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x.cmp(y),
            _ => (self - other).signum(),
        }
    }
}

fn fmt_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", fmt_ratio(r)),
            Scalar::Quadratic {
                rational,
                irrational,
                radicand,
            } => {
                let coeff = if irrational.abs().is_one() {
                    String::new()
                } else {
                    fmt_ratio(&irrational.abs())
                };
                let sign = if irrational.is_negative() { "-" } else { "+" };
                if rational.is_zero() {
                    let lead = if irrational.is_negative() { "-" } else { "" };
                    write!(f, "{lead}{coeff}√{radicand}")
                } else {
                    write!(f, "{}{sign}{coeff}√{radicand}", fmt_ratio(rational))
                }
            }
            Scalar::Float(x) => write!(f, "{x:?}"),
        }
    }
}

fn parse_ratio(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    } else {
        Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
    }
}

/// Parses the rendering produced by `Display`: `3`, `-1/2`, `√5`,
/// `-1/2-1/2√5`, `2/3√3`. Decimal inputs such as `0.25` parse as floats.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let Some(root_at) = s.find('√') else {
            if s.contains('.') || s.contains('e') {
                return s
                    .parse::<f64>()
                    .map(Scalar::Float)
                    .map_err(|_| Error::Parse(format!("invalid number `{s}`")));
            }
            return parse_ratio(s).map(Scalar::Rational);
        };
        let radicand: u32 = s[root_at + '√'.len_utf8()..]
            .parse()
            .map_err(|_| Error::Parse(format!("invalid radicand in `{s}`")))?;
        if !RADICANDS.contains(&radicand) {
            return Err(Error::Parse(format!("unsupported radicand {radicand}")));
        }
        let head = &s[..root_at];
        // split head into rational part and signed coefficient at the last +/- not in front
        let split = head
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (rat, coeff) = match split {
            Some(i) => (parse_ratio(&head[..i])?, &head[i..]),
            None => (BigRational::zero(), head),
        };
        let coeff = match coeff {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            c => parse_ratio(c.trim_start_matches('+'))?,
        };
        Ok(Scalar::from_parts(rat, coeff, radicand))
    }
}
