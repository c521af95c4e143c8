//! U, V, sieving and Hecke operators on coefficients, and the bookkeeping of
//! how each one moves weight, level and character.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{is_prime, lcm, radical};
use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::forms::{FormMeta, Weight};
use crate::qseries::QExpansion;
use crate::scalars::QuadScalar;

fn need_integer_grid(f: &QExpansion) -> Result<()> {
    if f.is_integer_grid() {
        Ok(())
    } else {
        Err(Error::FractionalGrid)
    }
}

/// `f | U_l = sum c(l n) q^n`.
pub fn op_u(f: &QExpansion, ell: u64) -> Result<QExpansion> {
    need_integer_grid(f)?;
    if ell == 0 {
        return Err(Error::InvalidArgument("U_0 is undefined".into()));
    }
    let l = ell as i64;
    let lim = f.limit().div_euclid(l);
    let start = f.start24().div_euclid(24).div_euclid(l);
    if start > lim {
        return Err(Error::EmptyWindow);
    }
    let coeffs = (start..=lim).map(|n| f.coeff(l * n).expect("inside window")).collect();
    QExpansion::from_integer_coeffs(start, coeffs)
}

/// `f | V_l = f(l z)`; fractional exponents are scaled as well.
pub fn op_v(f: &QExpansion, ell: u64) -> Result<QExpansion> {
    if ell == 0 {
        return Err(Error::InvalidArgument("V_0 is undefined".into()));
    }
    let l = ell as i64;
    QExpansion::new(f.start24() * l, f.step24() * l, f.trunc24() * l, f.coeffs().to_vec())
}

/// Keeps the coefficients with `n ≡ m (mod M)`.
pub fn op_sieve(f: &QExpansion, modulus: u64, residue: u64) -> Result<QExpansion> {
    need_integer_grid(f)?;
    if modulus == 0 || residue >= modulus {
        return Err(Error::InvalidArgument(format!(
            "sieve S_{{{modulus},{residue}}} needs 0 <= m < M"
        )));
    }
    let (m, r) = (modulus as i64 * 24, residue as i64 * 24);
    f.map_coeffs(|e, c| {
        Ok(if e.rem_euclid(m) == r {
            c.clone()
        } else {
            QuadScalar::zero()
        })
    })
}

/// Weight `k` Hecke operator: `c(p n) + χ(p) p^{k-1} c(n/p)`.
pub fn op_hecke(f: &QExpansion, p: u64, kappa: u32, chi: DirichletChar) -> Result<QExpansion> {
    need_integer_grid(f)?;
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let pi = p as i64;
    let lim = f.limit().div_euclid(pi);
    let start = f.start24().div_euclid(24).min(0);
    let factor = QuadScalar::from_bigint(BigInt::from(p).pow(kappa.saturating_sub(1)) * chi.eval(pi));
    let coeffs = (start..=lim)
        .map(|n| {
            let mut c = f.coeff(pi * n).expect("inside window");
            if n % pi == 0 && !factor.is_zero() {
                c = c.try_add(&f.coeff(n / pi).expect("inside window").try_mul(&factor)?)?;
            }
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    QExpansion::from_integer_coeffs(start, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpDescriptor {
    U(u64),
    V(u64),
    Sieve { modulus: u64, residue: u64 },
    Hecke(u64),
}

impl OpDescriptor {
    pub fn sieve(modulus: u64, residue: u64) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::InvalidArgument(format!(
                "sieve S:{modulus}:{residue} needs 0 <= m < M"
            )));
        }
        Ok(OpDescriptor::Sieve { modulus, residue })
    }

    pub fn hecke(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        Ok(OpDescriptor::Hecke(p))
    }

    /// Applies the operator; Hecke needs the weight and character of `f`.
    pub fn apply(&self, f: &QExpansion, meta: Option<&FormMeta>) -> Result<QExpansion> {
        match *self {
            OpDescriptor::U(l) => op_u(f, l),
            OpDescriptor::V(l) => op_v(f, l),
            OpDescriptor::Sieve { modulus, residue } => op_sieve(f, modulus, residue),
            OpDescriptor::Hecke(p) => {
                let m = meta.ok_or_else(|| Error::InvalidArgument("T_p needs form metadata".into()))?;
                let k = m
                    .weight
                    .as_integer()
                    .ok_or_else(|| Error::HypothesisViolation("T_p is only defined here for integral weight".into()))?;
                op_hecke(f, p, k as u32, m.character)
            }
        }
    }
}

impl fmt::Display for OpDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpDescriptor::U(l) => write!(f, "U:{l}"),
            OpDescriptor::V(l) => write!(f, "V:{l}"),
            OpDescriptor::Sieve { modulus, residue } => write!(f, "S:{modulus}:{residue}"),
            OpDescriptor::Hecke(p) => write!(f, "T:{p}"),
        }
    }
}

impl FromStr for OpDescriptor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |i: usize| -> Result<u64> {
            let t = parts.get(i).ok_or_else(|| Error::Parse {
                pos: s.len(),
                msg: "missing operator parameter".into(),
            })?;
            t.parse().map_err(|_| Error::Parse {
                pos: parts[..i].iter().map(|p| p.len() + 1).sum(),
                msg: format!("bad operator parameter {t:?}"),
            })
        };
        let arity = |n: usize| -> Result<()> {
            if parts.len() == n {
                Ok(())
            } else {
                Err(Error::Parse {
                    pos: 0,
                    msg: format!("{s:?} needs {} parameter(s)", n - 1),
                })
            }
        };
        match parts[0] {
            "U" => arity(2).and_then(|_| Ok(OpDescriptor::U(num(1)?))),
            "V" => arity(2).and_then(|_| Ok(OpDescriptor::V(num(1)?))),
            "S" => {
                arity(3)?;
                OpDescriptor::sieve(num(1)?, num(2)?)
            }
            "T" => {
                arity(2)?;
                OpDescriptor::hecke(num(1)?)
            }
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown operator {other:?}"),
            }),
        }
    }
}

impl Serialize for OpDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn violation(msg: impl Into<String>) -> Error {
    Error::HypothesisViolation(msg.into())
}

/// New space after applying `op` to a form in `meta`. Only the cases covered
/// by the standard operator lemmas are accepted; anything else is an error
/// rather than a guessed level.
pub fn meta_transform(op: OpDescriptor, meta: &FormMeta) -> Result<FormMeta> {
    let n = meta.level;
    let chi = meta.character;
    let half = !meta.weight.is_integral();
    let (level, character) = match op {
        OpDescriptor::U(d) if half => {
            if !n.is_multiple_of(4) {
                return Err(violation("half-integral U_d needs 4 | N"));
            }
            (4 * lcm(n / 4, radical(d)), chi.mul(&DirichletChar::four_delta(d)))
        }
        OpDescriptor::U(_) => {
            return Err(violation(
                "U_d on integral weight is outside the supported operator rules",
            ))
        }
        OpDescriptor::V(d) if half => (n * d, chi.mul(&DirichletChar::four_delta(d))),
        OpDescriptor::V(d) => (n * d, chi),
        OpDescriptor::Sieve { modulus: m, .. } => {
            if 24 % m != 0 {
                return Err(violation(format!("sieving needs M | 24, got M = {m}")));
            }
            if half && m % 4 == 2 {
                return Err(violation(format!(
                    "half-integral sieving needs M not congruent to 2 mod 4, got M = {m}"
                )));
            }
            (lcm(lcm(n, m * m), m * chi.conductor()), chi)
        }
        OpDescriptor::Hecke(_) => {
            if half {
                return Err(violation("T_p on half-integral weight is not supported"));
            }
            (n, chi)
        }
    };
    let cusp = meta.cuspidal && !matches!(op, OpDescriptor::Sieve { .. });
    FormMeta::new(meta.weight, level, character, cusp)
}

/// Space of a product `f g`.
pub fn meta_product(a: &FormMeta, b: &FormMeta) -> Result<FormMeta> {
    let level = lcm(a.level, b.level);
    let chi4 = DirichletChar::Kronecker(-4);
    let character = match (a.weight.half_index(), b.weight.half_index()) {
        (None, None) => a.character.mul(&b.character),
        (Some(k1), Some(k2)) => a.character.mul(&b.character).mul(&chi4.pow((k1 + k2 + 1) as u32)),
        (Some(_), None) => a
            .character
            .mul(&b.character)
            .mul(&chi4.pow(b.weight.twice() as u32 / 2)),
        (None, Some(_)) => return meta_product(b, a),
    };
    FormMeta::new(a.weight + b.weight, level, character, a.cuspidal || b.cuspidal)
}

/// Space of the bracket `[f, g]_l`: the product space shifted by `2l` in weight.
/// Brackets with `l >= 1` are cusp forms.
pub fn meta_bracket(a: &FormMeta, b: &FormMeta, ell: u32) -> Result<FormMeta> {
    let p = meta_product(a, b)?;
    FormMeta::new(
        p.weight + Weight::integral(2 * ell as i64),
        p.level,
        p.character,
        ell >= 1 || p.cuspidal,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{hurwitz_combo, theta_unary};
    use crate::qseries::{qx_add, qx_agree, qx_scale};
    use crate::scalars::rat;
    use proptest::prelude::*;

    use DirichletChar::{Kronecker as K, Trivial};

    fn series(c: &[i64]) -> QExpansion {
        QExpansion::from_ints(0, c)
    }

    #[test]
    fn u_and_v() {
        let f = series(&[1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(op_u(&f, 1).unwrap(), f);
        assert_eq!(op_v(&f, 1).unwrap(), f);
        let u = op_u(&f, 3).unwrap();
        assert_eq!(u.limit(), 2);
        assert_eq!(u.coeff(2), Some(QuadScalar::from_int(7)));
        let h = hurwitz_combo(1, 2, 20).unwrap();
        let hu = op_u(&h, 2).unwrap();
        assert_eq!(hu.coeff(1).unwrap().as_rational(), Some(&rat(1, 2)));
        let t = theta_unary(Trivial, 0, 40).unwrap();
        let t9 = op_v(&t, 9).unwrap();
        assert_eq!(t9.coeff(9), Some(QuadScalar::from_int(2)));
        assert_eq!(t9.coeff(36), Some(QuadScalar::from_int(2)));
        assert_eq!(t9.coeff(4), Some(QuadScalar::zero()));
        let t4 = op_u(&t, 4).unwrap();
        assert!((0..=10).all(|k| t4.coeff(k).unwrap().is_zero() == crate::arith::exact_sqrt(4 * k as u64).is_none()));
        let frac = QExpansion::new(3, 24, 240, vec![QuadScalar::one()]).unwrap();
        assert_eq!(op_u(&frac, 2), Err(Error::FractionalGrid));
        assert_eq!(op_sieve(&frac, 2, 1), Err(Error::FractionalGrid));
        assert_eq!(op_v(&frac, 8).unwrap().start24(), 24);
    }

    #[test]
    fn hecke() {
        let zero = QExpansion::zero(24 * 50).unwrap();
        assert!(op_hecke(&zero, 5, 2, K(12)).unwrap().is_zero());
        assert!(op_hecke(&zero, 4, 2, K(12)).is_err());
    }

    #[test]
    fn descriptors() {
        for s in ["U:2", "V:9", "S:12:5", "T:7"] {
            assert_eq!(s.parse::<OpDescriptor>().unwrap().to_string(), s);
        }
        assert!("S:4:4".parse::<OpDescriptor>().is_err());
        assert!("T:9".parse::<OpDescriptor>().is_err());
        assert!("X:1".parse::<OpDescriptor>().is_err());
        assert!("U".parse::<OpDescriptor>().is_err());
    }

    #[test]
    fn metadata_rules() {
        let h = FormMeta::m(Weight::half(1), 8, K(8));
        let u = meta_transform(OpDescriptor::U(2), &h).unwrap();
        assert_eq!((u.level, u.character), (8, Trivial));
        let s = meta_transform(OpDescriptor::sieve(4, 1).unwrap(), &u).unwrap();
        assert_eq!(s.level, 16);
        assert!(matches!(
            meta_transform(OpDescriptor::sieve(6, 1).unwrap(), &u),
            Err(Error::HypothesisViolation(_))
        ));
        let g1 = FormMeta::s(Weight::integral(2), 36, K(12));
        let m = meta_transform(OpDescriptor::sieve(12, 2).unwrap(), &g1).unwrap();
        assert_eq!(m.level, 144);
        let m = meta_transform(OpDescriptor::sieve(2, 0).unwrap(), &g1).unwrap();
        assert_eq!(m.level, 72);
        let g5 = FormMeta::s(Weight::integral(2), 256, Trivial);
        assert_eq!(
            meta_transform(OpDescriptor::sieve(8, 3).unwrap(), &g5).unwrap().level,
            256
        );
        assert!(meta_transform(OpDescriptor::U(2), &g1).is_err());
        assert!(meta_transform(OpDescriptor::sieve(5, 1).unwrap(), &g1).is_err());
        let v = meta_transform(OpDescriptor::V(9), &FormMeta::m(Weight::half(0), 4, Trivial)).unwrap();
        assert_eq!((v.level, v.character), (36, Trivial));
    }

    #[test]
    fn product_rules() {
        let th = FormMeta::m(Weight::half(0), 4, Trivial);
        let th9 = FormMeta::m(Weight::half(0), 36, Trivial);
        let b = meta_bracket(&th, &th9, 1).unwrap();
        assert_eq!(b.to_string(), "S_3(Gamma0(36), chi_-4)");
        let cube = meta_product(&meta_product(&th, &th).unwrap(), &th).unwrap();
        assert_eq!(cube.weight, Weight::half(1));
        assert_eq!(cube.character, Trivial);
        let t3 = crate::forms::theta_meta(K(-3), 1).unwrap();
        let p = meta_product(&th9, &t3).unwrap();
        assert_eq!((p.weight, p.level, p.character), (Weight::integral(2), 36, K(12)));
    }

    fn arb_series() -> impl Strategy<Value = QExpansion> {
        prop::collection::vec(-20i64..20, 1..60).prop_map(|v| series(&v))
    }

    proptest! {
        #[test]
        fn u_after_v_is_identity(f in arb_series(), l in 1u64..6) {
            let g = op_u(&op_v(&f, l).unwrap(), l).unwrap();
            prop_assert!(qx_agree(&g, &f).unwrap());
        }

        #[test]
        fn sieves_partition(f in arb_series(), m in 1u64..9) {
            let mut acc = op_sieve(&f, m, 0).unwrap();
            for r in 1..m {
                acc = qx_add(&acc, &op_sieve(&f, m, r).unwrap()).unwrap();
            }
            prop_assert_eq!(acc, f);
        }

        #[test]
        fn hecke_is_linear(f in arb_series(), g in arb_series(), a in -5i64..5, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
            let c = QuadScalar::surd(rat(a, 3), -2).unwrap_or_else(|_| QuadScalar::zero());
            let lhs = op_hecke(&qx_add(&qx_scale(&f, &c).unwrap(), &g).unwrap(), p, 2, K(12)).unwrap();
            let rhs = qx_add(
                &qx_scale(&op_hecke(&f, p, 2, K(12)).unwrap(), &c).unwrap(),
                &op_hecke(&g, p, 2, K(12)).unwrap(),
            ).unwrap();
            prop_assert!(qx_agree(&lhs, &rhs).unwrap());
        }
    }
}
