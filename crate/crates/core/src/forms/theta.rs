//! Unary theta functions, the binary lattice sums `Θ1..Θ7`, and diagonal
//! representation counts.

use std::fmt;
use std::str::FromStr;

use super::{FormMeta, Weight};
use crate::arith::{exact_sqrt, isqrt};
use crate::characters::{kronecker, DirichletChar, Parity};
use crate::error::{Error, Result};
use crate::qseries::QExpansion;

fn int_series(vals: Vec<i64>) -> QExpansion {
    QExpansion::from_ints(0, &vals)
}

/// `θ(χ, j, scale·z) = sum_{n in Z} χ(n) n^j q^{scale n^2}` through `q^limit`.
pub fn theta_unary_v(chi: DirichletChar, j: u8, scale: u64, limit: i64) -> Result<QExpansion> {
    let want = match chi.parity() {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    if j != want {
        return Err(Error::ParityMismatch(j));
    }
    if limit < 1 || scale == 0 {
        return Err(Error::InvalidArgument("limit and scale must be positive".into()));
    }
    let mut v = vec![0i64; limit as usize + 1];
    let m = isqrt(limit as u64 / scale) as i64;
    for n in -m..=m {
        let c = chi.eval(n) as i64 * if j == 1 { n } else { 1 };
        v[(scale as i64 * n * n) as usize] += c;
    }
    Ok(int_series(v))
}

pub fn theta_unary(chi: DirichletChar, j: u8, limit: i64) -> Result<QExpansion> {
    theta_unary_v(chi, j, 1, limit)
}

/// `θ(χ,0) ∈ M_{1/2}(Γ0(4N²), χ)` and `θ(χ,1) ∈ S_{3/2}(Γ0(4N²), χχ_{-4})`.
pub fn theta_meta(chi: DirichletChar, j: u8) -> Result<FormMeta> {
    let n = chi.conductor();
    match (chi.parity(), j) {
        (Parity::Even, 0) => FormMeta::new(Weight::half(0), 4 * n * n, chi, false),
        (Parity::Odd, 1) => FormMeta::new(Weight::half(1), 4 * n * n, chi.mul(&DirichletChar::Kronecker(-4)), true),
        _ => Err(Error::ParityMismatch(j)),
    }
}

/// `sum_{(x,y) in Z^2, a x^2 + b y^2 <= limit} w(x, y) q^{a x^2 + b y^2}`.
pub fn lattice_sum(a: i64, b: i64, limit: i64, w: impl Fn(i64, i64) -> i64) -> Vec<i64> {
    let mut v = vec![0i64; limit as usize + 1];
    let mx = isqrt((limit / a) as u64) as i64;
    for x in -mx..=mx {
        let rest = limit - a * x * x;
        let my = isqrt((rest / b) as u64) as i64;
        for y in -my..=my {
            v[(a * x * x + b * y * y) as usize] += w(x, y);
        }
    }
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AuxTheta {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
}

impl AuxTheta {
    pub const ALL: [AuxTheta; 7] = [
        AuxTheta::T1,
        AuxTheta::T2,
        AuxTheta::T3,
        AuxTheta::T4,
        AuxTheta::T5,
        AuxTheta::T6,
        AuxTheta::T7,
    ];
}

impl fmt::Display for AuxTheta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = AuxTheta::ALL.iter().position(|t| t == self).expect("listed") + 1;
        write!(f, "Theta{i}")
    }
}

impl FromStr for AuxTheta {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix("Theta").or_else(|| t.strip_prefix('T')).unwrap_or(t);
        match digits.parse::<usize>() {
            Ok(i @ 1..=7) => Ok(AuxTheta::ALL[i - 1]),
            _ => Err(Error::UnknownId(s.into())),
        }
    }
}

fn odd(x: i64) -> bool {
    x % 2 != 0
}

/// The binary sums
/// `Θ1 = 2 Σ χ-3(xy) xy q^{x²+y²}`, `Θ2 = Σ x² q^{x²+9y²}`, `Θ3 = 9 Σ y² q^{x²+9y²}`,
/// `Θ4 = Σ χ-4(xy) xy q^{x²+2y²}`, `Θ5 = Σ_{x odd} (-1)^y (x²-8y²) q^{x²+8y²}`,
/// `Θ6 = Σ_{x odd} (x²-8y²) q^{x²+8y²}`, `Θ7 = Σ_{x,y odd} (x²-2y²) q^{x²+2y²}`.
pub fn theta_aux(which: AuxTheta, limit: i64) -> Result<QExpansion> {
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    let v = match which {
        AuxTheta::T1 => lattice_sum(1, 1, limit, |x, y| 2 * kronecker(-3, x * y) as i64 * x * y),
        AuxTheta::T2 => lattice_sum(1, 9, limit, |x, _| x * x),
        AuxTheta::T3 => lattice_sum(1, 9, limit, |_, y| 9 * y * y),
        AuxTheta::T4 => lattice_sum(1, 2, limit, |x, y| kronecker(-4, x * y) as i64 * x * y),
        AuxTheta::T5 => lattice_sum(1, 8, limit, |x, y| {
            if odd(x) {
                let s = if odd(y) { -1 } else { 1 };
                s * (x * x - 8 * y * y)
            } else {
                0
            }
        }),
        AuxTheta::T6 => lattice_sum(1, 8, limit, |x, y| if odd(x) { x * x - 8 * y * y } else { 0 }),
        AuxTheta::T7 => lattice_sum(1, 2, limit, |x, y| if odd(x) && odd(y) { x * x - 2 * y * y } else { 0 }),
    };
    Ok(int_series(v))
}

/// `#{x in Z^k : sum a_i x_i^2 = n}`.
pub fn rep_diagonal(coeffs: &[u64], n: u64) -> u64 {
    match coeffs {
        [] => u64::from(n == 0),
        [a] => {
            if !n.is_multiple_of(*a) {
                0
            } else {
                match exact_sqrt(n / a) {
                    Some(0) => 1,
                    Some(_) => 2,
                    None => 0,
                }
            }
        }
        [a, rest @ ..] => {
            let m = isqrt(n / a);
            let mut total = rep_diagonal(rest, n);
            for x in 1..=m {
                total += 2 * rep_diagonal(rest, n - a * x * x);
            }
            total
        }
    }
}

/// `r(0..=limit)` for the diagonal form, by convolving unary counts.
pub fn rep_series(coeffs: &[u64], limit: usize) -> Vec<u64> {
    let mut acc = vec![0u64; limit + 1];
    acc[0] = 1;
    for &a in coeffs {
        let mut next = vec![0u64; limit + 1];
        let m = isqrt(limit as u64 / a);
        for x in 0..=m {
            let e = (a * x * x) as usize;
            let mult = if x == 0 { 1 } else { 2 };
            for k in 0..=limit - e {
                next[k + e] += mult * acc[k];
            }
        }
        acc = next;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{qx_agree, qx_mul, qx_scale};
    use crate::scalars::QuadScalar;

    fn ints(f: &QExpansion, upto: i64) -> Vec<i64> {
        (0..=upto)
            .map(|n| f.coeff(n).unwrap().a().to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn unary_values() {
        let t = theta_unary(DirichletChar::Trivial, 0, 16).unwrap();
        assert_eq!(ints(&t, 9), vec![1, 2, 0, 0, 2, 0, 0, 0, 0, 2]);
        let t3 = theta_unary(DirichletChar::Kronecker(-3), 1, 20).unwrap();
        assert_eq!(
            [1, 4, 9, 16].map(|n| t3.coeff(n).unwrap()),
            [2, -4, 0, 8].map(QuadScalar::from_int)
        );
        assert_eq!(
            theta_unary(DirichletChar::Kronecker(-3), 0, 20),
            Err(Error::ParityMismatch(0))
        );
        let m = theta_meta(DirichletChar::Kronecker(-3), 1).unwrap();
        assert_eq!(m.to_string(), "S_3/2(Gamma0(36), chi_12)");
    }

    #[test]
    fn supported_on_squares() {
        for (d, j) in [(1, 0u8), (-3, 1), (-4, 1), (8, 0), (-8, 1), (12, 0)] {
            let t = theta_unary(DirichletChar::from_discriminant(d), j, 2000).unwrap();
            assert!(t.terms().all(|(e, _)| exact_sqrt((e / 24) as u64).is_some()));
        }
    }

    #[test]
    fn aux_relations() {
        let t1 = theta_aux(AuxTheta::T1, 500).unwrap();
        let th = theta_unary(DirichletChar::Kronecker(-3), 1, 500).unwrap();
        let sq = qx_scale(&qx_mul(&th, &th).unwrap(), &QuadScalar::from_int(2)).unwrap();
        assert!(qx_agree(&t1, &sq).unwrap());
        let t2 = theta_aux(AuxTheta::T2, 10).unwrap();
        let t3 = theta_aux(AuxTheta::T3, 10).unwrap();
        assert_eq!(
            t2.coeff(1).unwrap().try_sub(&t3.coeff(1).unwrap()).unwrap(),
            QuadScalar::from_int(2)
        );
        let t5 = theta_aux(AuxTheta::T5, 400).unwrap();
        assert!(t5.terms().all(|(e, _)| (e / 24) % 2 == 1));
        assert_eq!("Theta4".parse::<AuxTheta>().unwrap(), AuxTheta::T4);
        assert_eq!(AuxTheta::T7.to_string(), "Theta7");
    }

    #[test]
    fn representation_counts() {
        assert_eq!(rep_diagonal(&[1, 1], 5), 8);
        assert_eq!(rep_diagonal(&[1, 2], 3), 4);
        assert_eq!(rep_diagonal(&[1, 1, 1], 7), 0);
        assert_eq!(rep_diagonal(&[1, 1, 1, 1], 1), 8);
        assert_eq!(rep_diagonal(&[1, 1, 1], 0), 1);
        let s = rep_series(&[1, 1, 1], 300);
        for n in 0..=300u64 {
            assert_eq!(s[n as usize], rep_diagonal(&[1, 1, 1], n));
        }
    }
}
