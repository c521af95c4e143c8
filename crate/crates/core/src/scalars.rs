//! Exact scalars: rationals and elements `a + b*sqrt(d)` of a fixed quadratic
//! field. Every coefficient in the crate lives here; nothing is ever rounded.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::is_squarefree_i64;
use crate::error::{Error, Result};

/// Field tag of a quadratic field Q(sqrt(d)); `None` is plain Q.
pub type FieldTag = Option<i64>;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Joins two field tags, coercing Q into any quadratic field.
pub fn join_fields(x: FieldTag, y: FieldTag) -> Result<FieldTag> {
    match (x, y) {
        (None, t) | (t, None) => Ok(t),
        (Some(a), Some(b)) if a == b => Ok(Some(a)),
        (Some(a), Some(b)) => Err(Error::FieldMismatch(a, b)),
    }
}

/// `a + b*sqrt(d)`. Canonical: when `b == 0` the tag is dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
    d: FieldTag,
}

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational, d: FieldTag) -> Result<Self> {
        if let Some(t) = d {
            if t == 1 || !is_squarefree_i64(t) {
                return Err(Error::InvalidFieldTag(t));
            }
        } else if !b.is_zero() {
            return Err(Error::InvalidArgument("irrational part requires a field tag".into()));
        }
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: BigRational, b: BigRational, d: FieldTag) -> Self {
        if b.is_zero() {
            QuadScalar { a, b, d: None }
        } else {
            QuadScalar { a, b, d }
        }
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(a: BigRational) -> Self {
        QuadScalar {
            a,
            b: BigRational::zero(),
            d: None,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(int(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::rational(BigRational::from_integer(n))
    }

    /// `b * sqrt(d)`.
    pub fn surd(b: BigRational, d: i64) -> Result<Self> {
        Self::new(BigRational::zero(), b, Some(d))
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn field(&self) -> FieldTag {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    fn tag_value(&self) -> BigRational {
        int(self.d.unwrap_or(0))
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - self.tag_value() * &self.b * &self.b
    }

    pub fn conj(&self) -> Self {
        Self::canonical(self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn neg(&self) -> Self {
        Self::canonical(-self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::canonical(&self.a * r, &self.b * r, self.d)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = join_fields(self.d, other.d)?;
        Ok(Self::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = join_fields(self.d, other.d)?;
        Ok(Self::canonical(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = join_fields(self.d, other.d)?;
        if self.b.is_zero() {
            return Ok(other.scale(&self.a));
        }
        if other.b.is_zero() {
            return Ok(self.scale(&other.a));
        }
        let t = int(d.unwrap_or(0));
        let a = &self.a * &other.a + t * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::canonical(a, b, d))
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::canonical(&self.a / &n, -(&self.b / &n), self.d))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.try_inv()?)
    }

    /// Accumulates `self += x * y` in place.
    pub(crate) fn add_product(&mut self, x: &Self, y: &Self) -> Result<()> {
        let p = x.try_mul(y)?;
        *self = self.try_add(&p)?;
        Ok(())
    }

    /// Exact sign of the real number `a + b*sqrt(d)`; `None` for imaginary
    /// irrational values.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.b.is_zero() {
            return Some(self.a.cmp(&BigRational::zero()));
        }
        let d = self.d?;
        if d < 0 {
            return None;
        }
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sa == sb || sa == Ordering::Equal {
            return Some(sb);
        }
        // Opposite signs: compare a^2 with d b^2.
        let lhs = &self.a * &self.a;
        let rhs = int(d) * &self.b * &self.b;
        Some(match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        })
    }

    /// Upper bound check `|x|^2 <= bound` taken over every complex
    /// embedding: the norm for imaginary fields, the larger real conjugate
    /// for real ones.
    pub fn abs_sq_at_most(&self, bound: &BigRational) -> bool {
        match self.d {
            None => &self.a * &self.a <= *bound,
            Some(d) if d < 0 => self.norm() <= *bound,
            Some(d) => {
                // (|a| + |b| sqrt d)^2 = a^2 + d b^2 + 2|ab| sqrt d
                let rest = bound - &self.a * &self.a - int(d) * &self.b * &self.b;
                let surd = -(int(2) * (&self.a * &self.b).abs());
                let diff = QuadScalar::canonical(rest, surd, Some(d));
                diff.real_sign() != Some(Ordering::Less)
            }
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational: {s:?}"),
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical text: `a` or `a/b`, followed by ` + c/e*sqrt(d)` when irrational.
impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_rational(&self.a))?;
        if let (false, Some(d)) = (self.b.is_zero(), self.d) {
            write!(f, " + {}*sqrt({})", fmt_rational(&self.b), d)?;
        }
        Ok(())
    }
}

impl FromStr for QuadScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(" + ") {
            None => Ok(QuadScalar::rational(parse_rational(s)?)),
            Some((a, rest)) => {
                let (b, tail) = rest.split_once("*sqrt(").ok_or(Error::Parse {
                    pos: a.len() + 3,
                    msg: "expected '*sqrt('".into(),
                })?;
                let d = tail.strip_suffix(')').ok_or(Error::Parse {
                    pos: s.len(),
                    msg: "expected ')'".into(),
                })?;
                let d: i64 = d.trim().parse().map_err(|_| Error::Parse {
                    pos: s.len() - tail.len(),
                    msg: "bad field tag".into(),
                })?;
                QuadScalar::new(parse_rational(a)?, parse_rational(b)?, Some(d))
            }
        }
    }
}
