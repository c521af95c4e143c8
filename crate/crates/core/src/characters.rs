//! Real Dirichlet characters given by Kronecker symbols, plus generalized
//! Bernoulli numbers for the constant terms of Eisenstein series.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::squarefree_kernel;
use crate::error::{Error, Result};
use crate::scalars::int;

/// Kronecker symbol `(D/n)` for every integer `n`, with `(D/-1) = sign(D)`
/// and `(D/2)` read off `D mod 8`.
pub fn kronecker(d: i64, n: i64) -> i8 {
    assert!(d != 0, "kronecker symbol with D = 0");
    if n == 0 {
        return if d.abs() == 1 { 1 } else { 0 };
    }
    let mut sign = 1i8;
    let mut m = n.unsigned_abs();
    if n < 0 && d < 0 {
        sign = -sign;
    }
    let tz = m.trailing_zeros();
    if tz > 0 {
        if d % 2 == 0 {
            return 0;
        }
        if tz % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
        m >>= tz;
    }
    sign * jacobi(d.rem_euclid(m as i64) as u64, m)
}

/// Jacobi symbol `(a/m)` for odd positive `m`.
fn jacobi(mut a: u64, mut m: u64) -> i8 {
    debug_assert!(m % 2 == 1);
    let mut r = 1i8;
    a %= m;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                r = -r;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            r = -r;
        }
        a %= m;
    }
    if m == 1 {
        r
    } else {
        0
    }
}

/// Fundamental discriminant of Q(sqrt(d)), or 1 when `d` is a square.
pub fn fundamental_discriminant(d: i64) -> i64 {
    assert!(d != 0, "discriminant 0");
    let k = squarefree_kernel(d.unsigned_abs()) as i64 * d.signum();
    if k == 1 {
        1
    } else if k.rem_euclid(4) == 1 {
        k
    } else {
        4 * k
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

/// A primitive real character: trivial, or `chi_D` for a fundamental
/// discriminant `D != 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DirichletChar {
    Trivial,
    Kronecker(i64),
}

impl DirichletChar {
    /// The primitive character attached to `(D/.)`; `D` is reduced to its
    /// fundamental discriminant first.
    pub fn from_discriminant(d: i64) -> Self {
        match fundamental_discriminant(d) {
            1 => DirichletChar::Trivial,
            f => DirichletChar::Kronecker(f),
        }
    }

    /// `chi_D` for the discriminant of the kernel of a rational `num/den`,
    /// signed. Used for the `s = prod delta^r` of eta-quotients.
    pub fn from_signed_kernel(sign: i64, num: u64, den: u64) -> Self {
        let k = squarefree_kernel(num) * squarefree_kernel(den);
        Self::from_discriminant(sign.signum() * squarefree_kernel(k) as i64)
    }

    pub fn eval(&self, n: i64) -> i8 {
        match self {
            DirichletChar::Trivial => 1,
            DirichletChar::Kronecker(d) => kronecker(*d, n),
        }
    }

    pub fn conductor(&self) -> u64 {
        match self {
            DirichletChar::Trivial => 1,
            DirichletChar::Kronecker(d) => d.unsigned_abs(),
        }
    }

    pub fn parity(&self) -> Parity {
        if self.eval(-1) == 1 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, DirichletChar::Trivial)
    }

    /// Discriminant label: 1 for the trivial character.
    pub fn discriminant(&self) -> i64 {
        match self {
            DirichletChar::Trivial => 1,
            DirichletChar::Kronecker(d) => *d,
        }
    }

    /// Primitive character inducing the pointwise product.
    pub fn mul(&self, other: &Self) -> Self {
        Self::from_discriminant(self.discriminant() * other.discriminant())
    }

    pub fn pow(&self, e: u32) -> Self {
        if e.is_multiple_of(2) {
            DirichletChar::Trivial
        } else {
            *self
        }
    }

    /// `chi_{4 delta}`, the twist appearing in the half-integral operator rules.
    pub fn four_delta(delta: u64) -> Self {
        Self::from_discriminant(4 * delta as i64)
    }
}

impl fmt::Display for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_{}", self.discriminant())
    }
}

impl FromStr for DirichletChar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d: i64 = s
            .trim()
            .strip_prefix("chi_")
            .and_then(|t| t.parse().ok())
            .filter(|&d| d != 0)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected chi_D, got {s:?}"),
            })?;
        Ok(Self::from_discriminant(d))
    }
}

impl serde::Serialize for DirichletChar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Bernoulli numbers `B_0..=B_k` with `B_1 = -1/2`.
pub fn bernoulli_numbers(k: u32) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(k as usize + 1);
    b.push(BigRational::one());
    for m in 1..=k {
        let mut s = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += BigRational::from_integer(binomial(m + 1, j as u32)) * bj;
        }
        b.push(-s / int(i64::from(m) + 1));
    }
    b
}

/// Bernoulli polynomial `B_k(x)`.
pub fn bernoulli_poly(k: u32, x: &BigRational) -> BigRational {
    let b = bernoulli_numbers(k);
    let mut acc = BigRational::zero();
    let mut xp = BigRational::one();
    for j in (0..=k).rev() {
        acc += BigRational::from_integer(binomial(k, j)) * &b[j as usize] * &xp;
        xp *= x;
    }
    acc
}

static GEN_BERNOULLI: RwLock<Option<HashMap<(u32, i64), BigRational>>> = RwLock::new(None);

/// `B_{k,chi} = N^(k-1) * sum_{a=1}^{N} chi(a) B_k(a/N)` with `N` the conductor.
pub fn gen_bernoulli(k: u32, chi: DirichletChar) -> BigRational {
    assert!(k >= 1);
    let key = (k, chi.discriminant());
    if let Some(v) = GEN_BERNOULLI.read().unwrap().as_ref().and_then(|m| m.get(&key)) {
        return v.clone();
    }
    let n = chi.conductor();
    let big_n = int(n as i64);
    let mut s = BigRational::zero();
    for a in 1..=n {
        let c = chi.eval(a as i64);
        if c != 0 {
            s += int(i64::from(c)) * bernoulli_poly(k, &(int(a as i64) / &big_n));
        }
    }
    let v = s * num_traits::pow(big_n, (k - 1) as usize);
    GEN_BERNOULLI
        .write()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert(key, v.clone());
    v
}

/// `L(1 - k, chi) = -B_{k,chi} / k`.
pub fn l_value(k: u32, chi: DirichletChar) -> BigRational {
    -gen_bernoulli(k, chi) / int(i64::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use proptest::prelude::*;

    /// Legendre symbols by Euler's criterion, extended multiplicatively.
    fn oracle(d: i64, n: i64) -> i8 {
        fn legendre(a: i64, p: i64) -> i8 {
            let a = a.rem_euclid(p);
            if a == 0 {
                return 0;
            }
            let mut r = 1i64;
            let mut b = a;
            let mut e = (p - 1) / 2;
            while e > 0 {
                if e & 1 == 1 {
                    r = r * b % p;
                }
                b = b * b % p;
                e >>= 1;
            }
            if r == 1 {
                1
            } else {
                -1
            }
        }
        let mut out = if n < 0 && d < 0 { -1 } else { 1 };
        let mut m = n.abs();
        let mut p = 2;
        while m > 1 {
            while m % p == 0 {
                m /= p;
                out *= if p == 2 {
                    match d.rem_euclid(8) {
                        1 | 7 => 1,
                        3 | 5 => -1,
                        _ => 0,
                    }
                } else {
                    legendre(d, p)
                };
            }
            p += 1;
        }
        out
    }

    #[test]
    fn symbol_values() {
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(12, 7), -1);
        assert_eq!(kronecker(17, 1), 1);
        assert_eq!(kronecker(-3, -1), -1);
        assert_eq!(kronecker(8, -1), 1);
        assert_eq!(kronecker(-8, -1), -1);
        for d in [-8i64, -7, -4, -3, 5, 8, 12, 13, 24] {
            for n in -60i64..=60 {
                if n != 0 {
                    assert_eq!(kronecker(d, n), oracle(d, n), "({d}/{n})");
                }
            }
        }
    }

    #[test]
    fn conductors_and_parity() {
        let c = |d| DirichletChar::from_discriminant(d);
        assert_eq!(c(-4).conductor(), 4);
        assert_eq!(c(12).conductor(), 12);
        assert_eq!(DirichletChar::Trivial.conductor(), 1);
        assert_eq!(c(36), DirichletChar::Trivial);
        assert_eq!(c(-3).parity(), Parity::Odd);
        assert_eq!(c(8).parity(), Parity::Even);
        assert_eq!(c(-8).parity(), Parity::Odd);
        assert_eq!(DirichletChar::Trivial.parity(), Parity::Even);
        assert_eq!(c(-3).mul(&c(-4)), c(12));
        assert_eq!(c(8).mul(&c(8)), DirichletChar::Trivial);
        assert_eq!(DirichletChar::four_delta(2), c(8));
        assert_eq!(DirichletChar::four_delta(9), DirichletChar::Trivial);
        assert_eq!(c(-4).to_string(), "chi_-4");
        assert_eq!("chi_12".parse::<DirichletChar>().unwrap(), c(12));
        assert_eq!(DirichletChar::Trivial.to_string(), "chi_1");
    }

    #[test]
    fn products_agree_pointwise() {
        let c = |d| DirichletChar::from_discriminant(d);
        for (a, b) in [(-3, -4), (-4, 8), (-8, -4), (12, -3), (-4, -4)] {
            let p = c(a).mul(&c(b));
            for n in 1..=200i64 {
                if num_integer::gcd(n, 24) == 1 {
                    assert_eq!(p.eval(n), c(a).eval(n) * c(b).eval(n));
                }
            }
        }
    }

    #[test]
    fn bernoulli_constants() {
        assert_eq!(bernoulli_numbers(4)[2], rat(1, 6));
        assert_eq!(bernoulli_numbers(4)[4], rat(-1, 30));
        assert_eq!(gen_bernoulli(2, DirichletChar::Trivial), rat(1, 6));
        let chi12 = DirichletChar::from_discriminant(12);
        // 12 * sum chi(a) B_2(a/12) over a in {1, 5, 7, 11}
        let by_hand: BigRational = [(1, 1), (5, -1), (7, -1), (11, 1)]
            .iter()
            .map(|&(a, s)| {
                let x = rat(a, 12);
                int(s) * (&x * &x - &x + rat(1, 6))
            })
            .sum::<BigRational>()
            * int(12);
        assert_eq!(by_hand, int(4));
        assert_eq!(gen_bernoulli(2, chi12), int(4));
        assert_eq!(l_value(2, chi12), int(-2));
        let chim4 = DirichletChar::from_discriminant(-4);
        assert_eq!(gen_bernoulli(1, chim4), rat(-1, 2));
        assert_eq!(l_value(1, chim4), rat(1, 2));
        assert_eq!(l_value(2, DirichletChar::Trivial), rat(-1, 12));
    }

    #[test]
    fn periodic_mod_conductor() {
        for d in -50i64..=50 {
            if d == 0 || fundamental_discriminant(d) != d {
                continue;
            }
            let n0 = d.abs();
            for n in 1..=1000 {
                assert_eq!(kronecker(d, n), kronecker(d, n + n0));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn completely_multiplicative(d in -200i64..200, m in -500i64..500, n in -500i64..500) {
            prop_assume!(d != 0 && m != 0 && n != 0);
            prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
        }
    }
}
