//! Eisenstein series `E_{k,χ,ψ}` with the normalization
//! `1_{χ=1} L(1-k,ψ) + 1_{ψ=1} 1_{k=1} L(0,χ) + 2 Σ_n Σ_{d|n} χ(n/d) ψ(d) d^{k-1} q^n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FormMeta, Weight};
use crate::characters::{l_value, DirichletChar};
use crate::error::{Error, Result};
use crate::qseries::QExpansion;

fn sign_ok(kappa: u32, chi: DirichletChar, psi: DirichletChar) -> bool {
    let s = chi.eval(-1) * psi.eval(-1);
    s == if kappa.is_multiple_of(2) { 1 } else { -1 }
}

pub fn eisenstein_constant(kappa: u32, chi: DirichletChar, psi: DirichletChar) -> BigRational {
    let mut c = BigRational::zero();
    if chi.is_trivial() {
        c += l_value(kappa, psi);
    }
    if psi.is_trivial() && kappa == 1 {
        c += l_value(1, chi);
    }
    c
}

/// Twisted divisor sums `Σ_{d|n} χ(n/d) ψ(d) d^{k-1}` for `n = 0..=limit`
/// (index 0 unused), by a multiplicative sieve over `d`.
pub fn twisted_divisor_sums(kappa: u32, chi: DirichletChar, psi: DirichletChar, limit: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); limit + 1];
    for d in 1..=limit {
        let pd = psi.eval(d as i64);
        if pd == 0 {
            continue;
        }
        let w = BigInt::from(d).pow(kappa - 1) * pd;
        for m in 1..=limit / d {
            match chi.eval(m as i64) {
                1 => out[d * m] += &w,
                -1 => out[d * m] -= &w,
                _ => {}
            }
        }
    }
    out
}

pub fn eisenstein(kappa: u32, chi: DirichletChar, psi: DirichletChar, limit: i64) -> Result<QExpansion> {
    if kappa == 0 {
        return Err(Error::InvalidArgument("weight must be positive".into()));
    }
    if !sign_ok(kappa, chi, psi) {
        return Err(Error::ParityObstruction(kappa));
    }
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    let sums = twisted_divisor_sums(kappa, chi, psi, limit as usize);
    let mut coeffs = Vec::with_capacity(sums.len());
    coeffs.push(eisenstein_constant(kappa, chi, psi));
    coeffs.extend(sums.into_iter().skip(1).map(|s| BigRational::from_integer(s * 2)));
    QExpansion::from_rationals(0, coeffs)
}

/// Space of `E_{k,χ,ψ} | V_d`: level `N_χ N_ψ d`, character `χψ`. The weight 2
/// series with both characters trivial is only quasimodular and is rejected.
pub fn eisenstein_meta(kappa: u32, chi: DirichletChar, psi: DirichletChar, d: u64) -> Result<FormMeta> {
    if !sign_ok(kappa, chi, psi) {
        return Err(Error::ParityObstruction(kappa));
    }
    if kappa == 2 && chi.is_trivial() && psi.is_trivial() {
        return Err(Error::HypothesisViolation(
            "E_2 with trivial characters is not modular; use the combination E - dE|V_d".into(),
        ));
    }
    FormMeta::new(
        Weight::integral(kappa as i64),
        chi.conductor() * psi.conductor() * d,
        chi.mul(&psi),
        false,
    )
}

/// `E_{2,1,1} - d E_{2,1,1} | V_d`, a holomorphic form on `Γ0(d)`.
pub fn eis_quasi_combo(d: u64, limit: i64) -> Result<QExpansion> {
    if d < 2 {
        return Err(Error::InvalidArgument("d must be at least 2".into()));
    }
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    let t = DirichletChar::Trivial;
    let sigma = twisted_divisor_sums(2, t, t, limit as usize);
    let d = d as usize;
    let mut coeffs = Vec::with_capacity(sigma.len());
    coeffs.push(l_value(2, t) * BigRational::from_integer(BigInt::one() - BigInt::from(d)));
    for n in 1..sigma.len() {
        let mut c = &sigma[n] * 2;
        if n % d == 0 {
            c -= &sigma[n / d] * 2 * d;
        }
        coeffs.push(BigRational::from_integer(c));
    }
    QExpansion::from_rationals(0, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, QuadScalar};

    fn r(x: BigRational) -> QuadScalar {
        QuadScalar::rational(x)
    }

    #[test]
    fn examples() {
        let e = eisenstein(2, DirichletChar::Trivial, DirichletChar::Kronecker(12), 10).unwrap();
        assert_eq!(e.coeff(0), Some(QuadScalar::from_int(-2)));
        assert_eq!(e.coeff(1), Some(QuadScalar::from_int(2)));
        let e = eisenstein(2, DirichletChar::Kronecker(-4), DirichletChar::Kronecker(-3), 10).unwrap();
        assert_eq!(e.coeff(0), Some(QuadScalar::zero()));
        assert_eq!(e.coeff(1), Some(QuadScalar::from_int(2)));
        assert_eq!(
            eisenstein(1, DirichletChar::Trivial, DirichletChar::Kronecker(12), 10),
            Err(Error::ParityObstruction(1))
        );
        // weight 1 with trivial χ: constant L(0, χ-4) = 1/2
        let e = eisenstein(1, DirichletChar::Trivial, DirichletChar::Kronecker(-4), 10).unwrap();
        assert_eq!(e.coeff(0), Some(r(rat(1, 2))));
        // 2 Σ_{d|5} χ-4(d) = 4 = r_2(5) / 2
        assert_eq!(e.coeff(5), Some(QuadScalar::from_int(4)));
    }

    #[test]
    fn quasi_combination() {
        let f = eis_quasi_combo(2, 10).unwrap();
        assert_eq!(f.coeff(1), Some(QuadScalar::from_int(2)));
        assert_eq!(f.coeff(2), Some(QuadScalar::from_int(2)));
        assert_eq!(f.coeff(0), Some(r(rat(1, 12))));
        let f = eis_quasi_combo(4, 10).unwrap();
        assert_eq!(f.coeff(0), Some(r(rat(1, 4))));
    }

    #[test]
    fn metadata() {
        let t = DirichletChar::Trivial;
        let m = eisenstein_meta(2, t, DirichletChar::Kronecker(12), 3).unwrap();
        assert_eq!(m.to_string(), "M_2(Gamma0(36), chi_12)");
        let m = eisenstein_meta(2, DirichletChar::Kronecker(-3), DirichletChar::Kronecker(-4), 1).unwrap();
        assert_eq!(m.character, DirichletChar::Kronecker(12));
        assert!(matches!(
            eisenstein_meta(2, t, t, 1),
            Err(Error::HypothesisViolation(_))
        ));
    }
}
