//! The newforms `g1..g8`, built from products of theta series, together with
//! case-split lattice-sum formulas for their coefficients.

use std::fmt;
use std::str::FromStr;

use super::theta::{theta_aux, theta_unary_v, AuxTheta};
use super::{FormMeta, Weight};
use crate::arith::exact_sqrt;
use crate::characters::{kronecker, DirichletChar};
use crate::error::{Error, Result};
use crate::operators::op_sieve;
use crate::par::Exec;
use crate::qseries::{qx_linear, qx_mul, qx_sub, QExpansion};
use crate::scalars::{rat, QuadScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NewformId {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
    G7,
    G8,
}

use DirichletChar::{Kronecker as K, Trivial};

impl NewformId {
    pub const ALL: [NewformId; 8] = [
        NewformId::G1,
        NewformId::G2,
        NewformId::G3,
        NewformId::G4,
        NewformId::G5,
        NewformId::G6,
        NewformId::G7,
        NewformId::G8,
    ];

    pub fn meta(self) -> FormMeta {
        let (k, n, chi) = match self {
            NewformId::G1 | NewformId::G2 => (2, 36, K(12)),
            NewformId::G3 => (2, 144, K(12)),
            NewformId::G4 => (3, 36, K(-4)),
            NewformId::G5 => (2, 256, Trivial),
            NewformId::G6 => (2, 64, K(8)),
            NewformId::G7 => (3, 128, K(-8)),
            NewformId::G8 => (3, 32, K(-8)),
        };
        FormMeta::s(Weight::integral(k), n, chi)
    }

    /// The quadratic field holding the coefficients, `None` for `Q`.
    pub fn field(self) -> Option<i64> {
        match self {
            NewformId::G1 | NewformId::G2 | NewformId::G3 => Some(-2),
            NewformId::G4 | NewformId::G8 => None,
            NewformId::G5 | NewformId::G7 => Some(2),
            NewformId::G6 => Some(-1),
        }
    }
}

impl fmt::Display for NewformId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = NewformId::ALL.iter().position(|g| g == self).expect("listed") + 1;
        write!(f, "g{i}")
    }
}

impl FromStr for NewformId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().strip_prefix('g').and_then(|d| d.parse::<usize>().ok()) {
            Some(i @ 1..=8) => Ok(NewformId::ALL[i - 1]),
            _ => Err(Error::UnknownId(s.into())),
        }
    }
}

fn surd(num: i64, den: i64, d: i64) -> QuadScalar {
    QuadScalar::surd(rat(num, den), d).expect("valid field tag")
}

fn q(num: i64, den: i64) -> QuadScalar {
    QuadScalar::rational(rat(num, den))
}

fn th(d: i64, j: u8, scale: u64, limit: i64) -> Result<QExpansion> {
    theta_unary_v(DirichletChar::from_discriminant(d), j, scale, limit)
}

fn g1_or_g2(sign: i64, limit: i64) -> Result<QExpansion> {
    let t = th(1, 0, 1, limit)?;
    let t9 = th(1, 0, 9, limit)?;
    let t3 = th(-3, 1, 1, limit)?;
    let a = qx_mul(&qx_sub(&t, &t9)?, &t3)?;
    let b = qx_mul(&t3, &t9)?;
    qx_linear(&[(surd(sign, 4, -2), &a), (q(1, 2), &b)])
}

/// Expansion of the newform through `q^limit`.
pub fn newform_expand(id: NewformId, limit: i64) -> Result<QExpansion> {
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    match id {
        NewformId::G1 => g1_or_g2(1, limit),
        NewformId::G2 => g1_or_g2(-1, limit),
        NewformId::G3 => {
            let p = qx_mul(&th(-3, 1, 4, limit)?, &th(1, 0, 1, limit)?)?;
            let r = qx_mul(&th(-3, 1, 1, limit)?, &th(1, 0, 4, limit)?)?;
            qx_linear(&[
                (q(1, 1), &op_sieve(&p, 12, 1)?),
                (q(1, 2), &op_sieve(&r, 12, 1)?),
                (surd(1, 2, -2), &op_sieve(&p, 12, 5)?),
                (surd(1, 4, -2), &op_sieve(&r, 12, 5)?),
            ])
        }
        NewformId::G4 => {
            let t1 = theta_aux(AuxTheta::T1, limit)?;
            let t2 = theta_aux(AuxTheta::T2, limit)?;
            let t3 = theta_aux(AuxTheta::T3, limit)?;
            qx_linear(&[(q(-1, 4), &t1), (q(1, 2), &t2), (q(-1, 2), &t3)])
        }
        NewformId::G5 => {
            let a = qx_mul(&th(-8, 1, 1, limit)?, &th(1, 0, 8, limit)?)?;
            let b = qx_mul(&th(8, 0, 1, limit)?, &th(-4, 1, 2, limit)?)?;
            qx_linear(&[(q(1, 2), &a), (surd(1, 2, 2), &b)])
        }
        NewformId::G6 => {
            let p = qx_mul(&th(-4, 1, 1, limit)?, &th(1, 0, 2, limit)?)?;
            qx_linear(&[(q(1, 2), &op_sieve(&p, 8, 1)?), (surd(1, 2, -1), &op_sieve(&p, 8, 3)?)])
        }
        NewformId::G7 => {
            let t4 = theta_aux(AuxTheta::T4, limit)?;
            let t5 = theta_aux(AuxTheta::T5, limit)?;
            qx_linear(&[(surd(1, 1, 2), &t4), (q(1, 2), &t5)])
        }
        NewformId::G8 => {
            let t6 = theta_aux(AuxTheta::T6, limit)?;
            let t7 = theta_aux(AuxTheta::T7, limit)?;
            qx_linear(&[(q(1, 2), &t6), (q(-1, 2), &t7)])
        }
    }
}

/// Sum of `w(x, y)` over positive `x, y` with `a x^2 + b y^2 = n`.
fn pos_sum(a: i64, b: i64, n: i64, w: impl Fn(i64, i64) -> i64) -> i64 {
    let mut s = 0;
    let mut x = 1;
    while a * x * x < n {
        let rest = n - a * x * x;
        if rest % b == 0 {
            if let Some(y) = exact_sqrt((rest / b) as u64) {
                if y > 0 {
                    s += w(x, y as i64);
                }
            }
        }
        x += 1;
    }
    s
}

/// `1_{n = m^2} f(m)`.
fn on_square(n: i64, f: impl Fn(i64) -> i64) -> i64 {
    exact_sqrt(n as u64).map_or(0, |m| f(m as i64))
}

fn chi(d: i64, n: i64) -> i64 {
    kronecker(d, n) as i64
}

/// The integer `γ1(n)` with `c1(n) = γ1(n)` for `n ≡ 1 (mod 3)` and
/// `c1(n) = γ1(n) sqrt(-2)` for `n ≡ 2 (mod 3)`.
pub fn gamma1(n: i64) -> i64 {
    match n.rem_euclid(3) {
        2 => pos_sum(1, 1, n, |_, y| chi(-3, y) * y),
        1 => on_square(n, |m| chi(-3, m) * m) + 2 * pos_sum(1, 9, n, |x, _| chi(-3, x) * x),
        _ => 0,
    }
}

/// `n`-th coefficient from the closed lattice-sum formula, independent of
/// [`newform_expand`].
pub fn newform_coeff_closed(id: NewformId, n: i64) -> QuadScalar {
    assert!(n >= 1, "coefficients are indexed from 1");
    let int = QuadScalar::from_int;
    let rt = |c: i64, d: i64| surd(c, 1, d);
    match id {
        NewformId::G1 | NewformId::G2 => {
            let g = gamma1(n);
            let c = if n % 3 == 2 { rt(g, -2) } else { int(g) };
            if id == NewformId::G1 {
                c
            } else {
                c.conj()
            }
        }
        NewformId::G3 => match n % 12 {
            1 => int(on_square(n, |m| chi(-3, m) * m)
                + 4 * pos_sum(4, 9, n, |x, _| chi(-3, x) * x)
                + 2 * pos_sum(1, 36, n, |x, _| chi(-3, x) * x)),
            5 => rt(
                2 * pos_sum(4, 1, n, |x, _| chi(-3, x) * x) + pos_sum(1, 4, n, |x, _| chi(-3, x) * x),
                -2,
            ),
            _ => int(0),
        },
        NewformId::G4 => int(match n % 3 {
            1 => on_square(n, |_| n) + 2 * pos_sum(1, 9, n, |x, y| x * x - 9 * y * y),
            2 => -2 * pos_sum(1, 1, n, |x, y| chi(-3, x * y) * x * y),
            _ => 0,
        }),
        NewformId::G5 => match n % 8 {
            1 => int(on_square(n, |m| chi(-8, m) * m) + 2 * pos_sum(1, 8, n, |x, _| chi(-8, x) * x)),
            3 => rt(2 * pos_sum(1, 2, n, |x, y| chi(8, x) * chi(-4, y) * y), 2),
            _ => int(0),
        },
        NewformId::G6 => match n % 8 {
            1 => int(on_square(n, |m| chi(-4, m) * m) + 2 * pos_sum(1, 2, n, |x, _| chi(-4, x) * x)),
            3 => rt(2 * pos_sum(1, 2, n, |x, _| chi(-4, x) * x), -1),
            _ => int(0),
        },
        NewformId::G7 => match n % 8 {
            1 => int(on_square(n, |_| n)
                + 2 * pos_sum(1, 8, n, |x, y| if y % 2 == 0 { 1 } else { -1 } * (x * x - 8 * y * y))),
            3 => rt(4 * pos_sum(1, 2, n, |x, y| chi(-4, x * y) * x * y), 2),
            _ => int(0),
        },
        NewformId::G8 => int(match n % 8 {
            1 => on_square(n, |_| n) + 2 * pos_sum(1, 8, n, |x, y| x * x - 8 * y * y),
            3 => -2 * pos_sum(1, 2, n, |x, y| x * x - 2 * y * y),
            _ => 0,
        }),
    }
}

/// `sum_{1 <= n <= limit} c(n) q^n` from the closed formulas.
pub fn newform_closed_series(id: NewformId, limit: i64, exec: Exec) -> Result<QExpansion> {
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    let mut coeffs = vec![QuadScalar::zero()];
    coeffs.extend(exec.map_range(1..limit as u64 + 1, |n| newform_coeff_closed(id, n as i64)));
    QExpansion::from_integer_coeffs(0, coeffs)
}
