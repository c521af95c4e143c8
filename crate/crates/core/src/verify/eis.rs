//! The two Eisenstein combinations `𝓔1 ∈ M_2(36, χ12)` and `𝓔2 ∈ M_2(72, χ12)`:
//! divisor-sum definitions, closed forms, and the combinations of
//! `E_{2,χ,ψ}|V_d` they are built from.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::recipe::Recipe;
use crate::arith::{divisors, factorize, ord_p};
use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::scalars::{rat, QuadScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EisId {
    E1,
    E2,
}

impl fmt::Display for EisId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EisId::E1 => "E1",
            EisId::E2 => "E2",
        })
    }
}

impl FromStr for EisId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "E1" | "e1" => Ok(EisId::E1),
            "E2" | "e2" => Ok(EisId::E2),
            _ => Err(Error::UnknownId(s.into())),
        }
    }
}

use DirichletChar::{Kronecker as K, Trivial};

/// The four weight 2 series `(χ, ψ)`: `E(1,χ12)`, `E(χ-3,χ-4)`, `E(χ-4,χ-3)`, `E(χ12,1)`.
const PAIRS: [(DirichletChar, DirichletChar); 4] = [(Trivial, K(12)), (K(-3), K(-4)), (K(-4), K(-3)), (K(12), Trivial)];

/// `(d, [coefficients of the four series | V_d])`, numerators over 4.
fn combination(which: EisId) -> &'static [(u64, [i64; 4])] {
    match which {
        EisId::E1 => &[(1, [1, 1, 4, 4]), (3, [-3, 9, 12, -36])],
        EisId::E2 => &[
            (1, [-1, -1, 2, 2]),
            (3, [3, -9, 6, -18]),
            (2, [2, -2, 8, -8]),
            (6, [-6, -18, 24, 72]),
        ],
    }
}

/// `Σ_{d|n} χ(n/d) ψ(d) d`.
fn twisted_sigma(n: u64, chi: DirichletChar, psi: DirichletChar) -> i64 {
    divisors(n)
        .into_iter()
        .map(|d| chi.eval((n / d) as i64) as i64 * psi.eval(d as i64) as i64 * d as i64)
        .sum()
}

/// Coefficient of `q^n`, `n >= 1`, from the divisor-sum definition.
pub fn eisenstein_divisor_def(which: EisId, n: u64) -> BigRational {
    let mut t = BigRational::zero();
    for &(d, co) in combination(which) {
        if !n.is_multiple_of(d) {
            continue;
        }
        let m = n / d;
        for (c, (chi, psi)) in co.iter().zip(PAIRS) {
            // the series carry a factor 2 in front of the divisor sum
            t += rat(2 * c * twisted_sigma(m, chi, psi), 4);
        }
    }
    t
}

/// The linear combination of `E_{2,χ,ψ} | V_d` defining the series.
pub fn eisenstein_combination(which: EisId) -> Recipe {
    let mut terms = Vec::new();
    for &(d, co) in combination(which) {
        for (c, (chi, psi)) in co.iter().zip(PAIRS) {
            let e = Recipe::Eisenstein { kappa: 2, chi, psi };
            let e = if d == 1 { e } else { e.op(&format!("V:{d}")) };
            terms.push((QuadScalar::rational(rat(*c, 4)), e));
        }
    }
    Recipe::Lin(terms)
}

/// `∏_{p^e || m} (1 - t^{e+1}) / (1 - t)` with `t = χ12(p) p`.
fn geometric_part(m: u64) -> BigRational {
    let mut r = BigRational::one();
    for (p, e) in factorize(m) {
        let t = BigInt::from(K(12).eval(p as i64) as i64 * p as i64);
        let num = BigInt::one() - t.pow(e + 1);
        r *= BigRational::new(num, BigInt::one() - t);
    }
    r
}

fn chi(d: i64, n: u64) -> BigRational {
    rat(K(d).eval(n as i64) as i64, 1)
}

fn pw(b: i64, e: u32) -> BigRational {
    rat(b, 1).pow(e as i32)
}

/// Coefficient of `q^n`, `n >= 1`, from the closed form in terms of
/// `n = 2^{v2} 3^{v3} m`.
pub fn eisenstein_closed_form(which: EisId, n: u64) -> BigRational {
    assert!(n >= 1, "closed form needs n >= 1");
    let v2 = ord_p(n, 2);
    let v3 = ord_p(n, 3);
    let m = n / (2u64.pow(v2) * 3u64.pow(v3));
    let half = rat(1, 2);
    let t = match which {
        EisId::E1 => {
            let s = if (v2 + v3).is_multiple_of(2) {
                rat(1, 1)
            } else {
                rat(-1, 1)
            };
            let mut t = half.clone()
                + &s * pw(3, v3) * &half * chi(-3, m)
                + &s * pw(2, v2 + 1) * chi(-4, m)
                + pw(2, v2 + 1) * pw(3, v3) * chi(12, m);
            if v3 > 0 {
                t -= rat(3, 2)
                    + &s * pw(3, v3 + 1) * &half * chi(-3, m)
                    + &s * rat(3, 1) * pw(2, v2 + 1) * chi(-4, m)
                    + pw(2, v2 + 1) * pw(3, v3 + 1) * chi(12, m);
            }
            t
        }
        EisId::E2 => {
            let b2 = 2u64.pow(v2);
            let b3 = 3u64.pow(v3);
            let mut t = -half.clone() - pw(3, v3) * &half * chi(-3, b2 * m) * chi(-4, b3)
                + pw(2, v2) * chi(-3, b2) * chi(-4, b3 * m)
                + pw(2, v2) * pw(3, v3) * chi(12, m);
            if v3 > 0 {
                let b3m = b3 / 3;
                t += rat(3, 2) - &half * pw(3, v3 + 1) * chi(-3, b2 * m) * chi(-4, b3m)
                    + rat(3, 1) * pw(2, v2) * chi(-3, b2) * chi(-4, b3m * m)
                    - pw(2, v2) * pw(3, v3 + 1) * chi(12, m);
            }
            if v2 > 0 {
                let b2m = b2 / 2;
                t += rat(1, 1) - pw(3, v3) * chi(-3, b2m * m) * chi(-4, b3)
                    + pw(2, v2 + 1) * chi(-3, b2m) * chi(-4, b3 * m)
                    - pw(2, v2 + 1) * pw(3, v3) * chi(12, m);
            }
            if v2 > 0 && v3 > 0 {
                let (b2m, b3m) = (b2 / 2, b3 / 3);
                t += rat(-3, 1) - pw(3, v3 + 1) * chi(-3, b2m * m) * chi(-4, b3m)
                    + pw(2, v2 + 1) * rat(3, 1) * chi(-3, b2m) * chi(-4, b3m * m)
                    + pw(2, v2 + 1) * pw(3, v3 + 1) * chi(12, m);
            }
            t
        }
    };
    t * geometric_part(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::Exec;

    #[test]
    fn first_coefficients() {
        assert_eq!(eisenstein_divisor_def(EisId::E1, 1), rat(5, 1));
        assert_eq!(eisenstein_divisor_def(EisId::E1, 3), rat(-6, 1));
        assert_eq!(eisenstein_divisor_def(EisId::E2, 1), rat(1, 1));
        assert_eq!(eisenstein_divisor_def(EisId::E2, 3), rat(-6, 1));
    }

    #[test]
    fn closed_forms_small() {
        for w in [EisId::E1, EisId::E2] {
            for n in 1..600 {
                assert_eq!(eisenstein_closed_form(w, n), eisenstein_divisor_def(w, n), "{w} n={n}");
            }
        }
    }

    #[test]
    fn combination_constant_term() {
        for w in [EisId::E1, EisId::E2] {
            let f = eisenstein_combination(w).eval(30, Exec::Sequential).unwrap();
            assert_eq!(f.coeff(0), Some(QuadScalar::one()));
            for n in 1..=30 {
                assert_eq!(
                    f.coeff(n).unwrap().as_rational(),
                    Some(&eisenstein_divisor_def(w, n as u64))
                );
            }
        }
    }

    #[test]
    fn e2_vanishes_on_two_mod_three() {
        for n in (2..3000).step_by(3) {
            assert!(eisenstein_closed_form(EisId::E2, n).is_zero(), "n={n}");
        }
    }
}
