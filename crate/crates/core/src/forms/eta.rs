//! Eta-quotients `prod eta(delta z)^r` and their modularity data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{FormMeta, Weight};
use crate::arith::{divisors, gcd};
use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::qseries::int::c_series_int;
use crate::qseries::{EtaSpec, QExpansion};
use crate::scalars::QuadScalar;

/// The eta-quotient with its `q^{sum delta r / 24}` prefactor, known for all
/// exponents up to and including `q^limit`.
pub fn eta_expand(spec: &EtaSpec, limit: i64) -> Result<QExpansion> {
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    let off = spec.offset24();
    let k_max = (24 * limit - off).div_euclid(24).max(0) as usize;
    let s = c_series_int(spec, k_max, true);
    let coeffs = (0..s.len()).map(|k| QuadScalar::from_bigint(s.get(k))).collect();
    QExpansion::new(off, 24, off + 24 * (k_max as i64 + 1), coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition")]
pub enum EtaRejection {
    /// `sum r` is odd, so the weight is not an integer.
    NonIntegralWeight { twice_weight: i64 },
    /// `sum delta r` is not divisible by 24.
    OrderAtInfinity { sum: i64 },
    /// `sum (N/delta) r` is not divisible by 24.
    OrderAtZero { sum: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum EtaModularity {
    Modular { meta: FormMeta },
    Rejected { reason: EtaRejection },
}

impl EtaModularity {
    pub fn meta(&self) -> Option<FormMeta> {
        match self {
            EtaModularity::Modular { meta } => Some(*meta),
            EtaModularity::Rejected { .. } => None,
        }
    }
}

/// Order of vanishing at the cusp `c/N`, in units of the local parameter;
/// used only to flag cusp forms.
fn cusp_order(spec: &EtaSpec, level: u64, c: u64) -> BigRational {
    let mut s = BigRational::zero();
    for &(d, r) in spec.factors() {
        let g = gcd(c, d);
        s += BigRational::new(BigInt::from(g * g) * r, BigInt::from(d));
    }
    s * BigRational::new(BigInt::from(level), BigInt::from(24 * gcd(c, level / c) * c))
}

/// Modularity test for an eta-quotient of level `level`: integral weight,
/// both order conditions mod 24, and the character `chi_{(-1)^k s}` with
/// `s = prod delta^r` reduced to its squarefree kernel.
pub fn eta_meta(spec: &EtaSpec, level: u64) -> Result<EtaModularity> {
    for &(d, _) in spec.factors() {
        if !level.is_multiple_of(d) {
            return Err(Error::DeltaNotDividingLevel { delta: d, level });
        }
    }
    let w2 = spec.weight2();
    if w2 % 2 != 0 {
        return Ok(EtaModularity::Rejected {
            reason: EtaRejection::NonIntegralWeight { twice_weight: w2 },
        });
    }
    let inf = spec.offset24();
    if inf.mod_floor(&24) != 0 {
        return Ok(EtaModularity::Rejected {
            reason: EtaRejection::OrderAtInfinity { sum: inf },
        });
    }
    let zero: i64 = spec.factors().iter().map(|&(d, r)| (level / d) as i64 * r).sum();
    if zero.mod_floor(&24) != 0 {
        return Ok(EtaModularity::Rejected {
            reason: EtaRejection::OrderAtZero { sum: zero },
        });
    }
    let k = w2 / 2;
    let (mut num, mut den) = (1u64, 1u64);
    for &(d, r) in spec.factors() {
        // only the parity of the exponent matters for the kernel
        if r % 2 != 0 {
            if r > 0 {
                num *= d;
            } else {
                den *= d;
            }
        }
    }
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let character = DirichletChar::from_signed_kernel(sign, num, den);
    let cuspidal = divisors(level)
        .into_iter()
        .all(|c| cusp_order(spec, level, c) > BigRational::zero());
    Ok(EtaModularity::Modular {
        meta: FormMeta::new(Weight::integral(k), level, character, cuspidal)?,
    })
}

/// Smallest level (a multiple of the bases' lcm, at most `max_level`) at
/// which the quotient passes [`eta_meta`].
pub fn eta_min_level(spec: &EtaSpec, max_level: u64) -> Result<Option<FormMeta>> {
    let base = spec.lcm_of_bases();
    let mut n = base;
    while n <= max_level {
        if let Some(m) = eta_meta(spec, n)?.meta() {
            return Ok(Some(m));
        }
        n += base;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> EtaSpec {
        EtaSpec::parse(s).unwrap()
    }

    #[test]
    fn offsets() {
        let f = eta_expand(&spec("8^1 16^2 32^1"), 20).unwrap();
        assert_eq!(f.start24(), 72);
        assert_eq!(f.coeff(3), Some(QuadScalar::one()));
        assert_eq!(f.coeff(2), Some(QuadScalar::zero()));
        let g = eta_expand(&spec("1^2 2^-1"), 30).unwrap();
        let want = [1, -2, 0, 0, 2, 0, 0, 0, 0, -2];
        for (n, w) in want.iter().enumerate() {
            assert_eq!(g.coeff(n as i64), Some(QuadScalar::from_int(*w)));
        }
        let l = spec("1^-8 2^20 4^-8");
        assert_eq!((l.offset24(), l.weight2()), (0, 4));
        let d = eta_expand(&spec("1^-1"), 5).unwrap();
        assert_eq!(d.start24(), -1);
        assert_eq!(d.coeff_at24(4 * 24 - 1), Some(QuadScalar::from_int(5)));
    }

    #[test]
    fn modularity() {
        let m = eta_meta(&spec("8^3 16^3"), 128).unwrap().meta().unwrap();
        assert_eq!(m.weight, Weight::integral(3));
        assert_eq!(m.character, DirichletChar::Kronecker(-8));
        assert!(m.cuspidal);
        assert_eq!(
            eta_meta(&spec("1^-1 3^3 4^2"), 12).unwrap(),
            EtaModularity::Rejected {
                reason: EtaRejection::OrderAtInfinity { sum: 16 }
            }
        );
        let d = eta_meta(&spec("1^24"), 1).unwrap().meta().unwrap();
        assert_eq!(
            (d.weight, d.character, d.cuspidal),
            (Weight::integral(12), DirichletChar::Trivial, true)
        );
        assert_eq!(
            eta_meta(&spec("3^1"), 4),
            Err(Error::DeltaNotDividingLevel { delta: 3, level: 4 })
        );
        let l = eta_meta(&spec("3^-1 9^3 12^2"), 144).unwrap().meta().unwrap();
        assert_eq!(l.character, DirichletChar::Kronecker(12));
    }

    #[test]
    fn minimal_levels() {
        let m = eta_min_level(&spec("1^24"), 100).unwrap().unwrap();
        assert_eq!(m.level, 1);
        let m = eta_min_level(&spec("8^1 16^2 32^1"), 1000).unwrap().unwrap();
        assert_eq!(m.level, 256);
    }
}
