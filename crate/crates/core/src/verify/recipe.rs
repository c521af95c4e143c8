//! Series recipes: small expression trees over the constructors in
//! [`crate::forms`] and the operators, evaluated to a requested precision.

use std::fmt;

use num_rational::BigRational;

use super::eis::{eisenstein_closed_form, eisenstein_divisor_def, EisId};
use crate::arith::lcm;
use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::forms::eisenstein::eisenstein_meta;
use crate::forms::theta::theta_meta;
use crate::forms::{
    eisenstein, eta_expand, eta_min_level, hurwitz_combo, hurwitz_combo_meta, newform_closed_series, newform_expand,
    rankin_cohen, rep_diagonal, theta_aux, theta_unary, AuxTheta, FormMeta, NewformId, Weight,
};
use crate::operators::{meta_bracket, meta_product, meta_transform, OpDescriptor};
use crate::par::Exec;
use crate::qseries::{qx_linear, qx_mul, EtaSpec, QExpansion};
use crate::scalars::{rat, QuadScalar};

/// Brute-force lattice series used as independent right-hand sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeOracle {
    /// `(1/4) sum_n (-1)^n r_{(1,2)}(8n+3) q^{8n+3}`.
    SignedR12Progression,
    /// `sum_n (-1)^n r_{(1,1,1)}(n) q^n`.
    SignedR3,
    /// `sum_n r_{(1,1,1)}(n) q^n`.
    R3,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Recipe {
    Eta(EtaSpec),
    Newform(NewformId),
    NewformClosed(NewformId),
    Theta {
        chi: DirichletChar,
        j: u8,
    },
    Aux(AuxTheta),
    Eisenstein {
        kappa: u32,
        chi: DirichletChar,
        psi: DirichletChar,
    },
    EisDefinition(EisId),
    EisClosed(EisId),
    Hurwitz {
        l1: u64,
        l2: u64,
    },
    Lattice(LatticeOracle),
    Op(OpDescriptor, Box<Recipe>),
    Mul(Box<Recipe>, Box<Recipe>),
    Pow(Box<Recipe>, u32),
    Bracket {
        f: Box<Recipe>,
        k1: Weight,
        g: Box<Recipe>,
        k2: Weight,
        ell: u32,
    },
    Lin(Vec<(QuadScalar, Recipe)>),
}

impl Recipe {
    pub fn eta(s: &str) -> Self {
        Recipe::Eta(EtaSpec::parse(s).expect("valid eta spec"))
    }

    pub fn op(self, op: &str) -> Self {
        Recipe::Op(op.parse().expect("valid operator"), Box::new(self))
    }

    pub fn times(self, other: Recipe) -> Self {
        Recipe::Mul(Box::new(self), Box::new(other))
    }

    pub fn pow(self, e: u32) -> Self {
        Recipe::Pow(Box::new(self), e)
    }

    /// The space this recipe lands in, where the constructors and operator
    /// rules determine it; `Ok(None)` for oracle series and eta-quotients of
    /// half-integral weight.
    pub fn meta(&self) -> Result<Option<FormMeta>> {
        let m = match self {
            Recipe::Eta(s) => eta_min_level(s, 4096).ok().flatten(),
            Recipe::Newform(id) | Recipe::NewformClosed(id) => Some(id.meta()),
            Recipe::Theta { chi, j } => Some(theta_meta(*chi, *j)?),
            Recipe::Eisenstein { kappa, chi, psi } => Some(eisenstein_meta(*kappa, *chi, *psi, 1)?),
            Recipe::Hurwitz { l1, l2 } => Some(hurwitz_combo_meta(*l1, *l2)?),
            Recipe::Aux(_) | Recipe::EisDefinition(_) | Recipe::EisClosed(_) | Recipe::Lattice(_) => None,
            Recipe::Op(op, inner) => match inner.meta()? {
                Some(m) => Some(meta_transform(*op, &m)?),
                None => None,
            },
            Recipe::Mul(a, b) => match (a.meta()?, b.meta()?) {
                (Some(x), Some(y)) => Some(meta_product(&x, &y)?),
                _ => None,
            },
            Recipe::Pow(a, e) => match a.meta()? {
                Some(x) => {
                    let mut acc = x;
                    for _ in 1..*e {
                        acc = meta_product(&acc, &x)?;
                    }
                    Some(acc)
                }
                None => None,
            },
            Recipe::Bracket { f, g, ell, .. } => match (f.meta()?, g.meta()?) {
                (Some(x), Some(y)) => Some(meta_bracket(&x, &y, *ell)?),
                _ => None,
            },
            Recipe::Lin(terms) => {
                let mut acc: Option<FormMeta> = None;
                for (c, r) in terms {
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(x) = r.meta()? {
                        acc = Some(match acc {
                            None => x,
                            Some(a) => common_space(&a, &x)?,
                        });
                    }
                }
                acc
            }
        };
        Ok(m)
    }

    /// Expansion known through `q^limit` (at least).
    pub fn eval(&self, limit: i64, exec: Exec) -> Result<QExpansion> {
        let limit = limit.max(1);
        match self {
            Recipe::Eta(s) => eta_expand(s, limit),
            Recipe::Newform(id) => newform_expand(*id, limit),
            Recipe::NewformClosed(id) => newform_closed_series(*id, limit, exec),
            Recipe::Theta { chi, j } => theta_unary(*chi, *j, limit),
            Recipe::Aux(t) => theta_aux(*t, limit),
            Recipe::Eisenstein { kappa, chi, psi } => eisenstein(*kappa, *chi, *psi, limit),
            Recipe::EisDefinition(w) => eis_series(limit, exec, |n| eisenstein_divisor_def(*w, n)),
            Recipe::EisClosed(w) => eis_series(limit, exec, |n| eisenstein_closed_form(*w, n)),
            Recipe::Hurwitz { l1, l2 } => hurwitz_combo(*l1, *l2, limit),
            Recipe::Lattice(o) => lattice(o, limit, exec),
            Recipe::Op(op, inner) => {
                let need = match op {
                    OpDescriptor::U(l) => limit * *l as i64,
                    OpDescriptor::Hecke(p) => limit * *p as i64,
                    OpDescriptor::V(l) => limit.div_euclid(*l as i64),
                    OpDescriptor::Sieve { .. } => limit,
                };
                op.apply(&inner.eval(need, exec)?, None)
            }
            Recipe::Mul(a, b) => {
                let (fa, fb) = exec.join(|| a.eval(limit, exec), || b.eval(limit, exec));
                qx_mul(&fa?, &fb?)
            }
            Recipe::Pow(a, e) => {
                let f = a.eval(limit, exec)?;
                let mut acc = f.clone();
                for _ in 1..*e {
                    acc = qx_mul(&acc, &f)?;
                }
                if *e == 0 {
                    return Err(Error::RecipeEvaluation("zeroth power in recipe".into()));
                }
                Ok(acc)
            }
            Recipe::Bracket { f, k1, g, k2, ell } => {
                let (ff, gg) = exec.join(|| f.eval(limit, exec), || g.eval(limit, exec));
                rankin_cohen(&ff?, *k1, &gg?, *k2, *ell as i64)
            }
            Recipe::Lin(terms) => {
                if terms.is_empty() {
                    return Err(Error::RecipeEvaluation("empty linear combination".into()));
                }
                let parts = exec.map_slice(terms, |(_, r)| r.eval(limit, exec));
                let parts = parts.into_iter().collect::<Result<Vec<_>>>()?;
                let refs: Vec<(QuadScalar, &QExpansion)> =
                    terms.iter().zip(&parts).map(|((c, _), p)| (c.clone(), p)).collect();
                qx_linear(&refs)
            }
        }
    }
}

/// Smallest space containing both, when weights and characters agree.
pub fn common_space(a: &FormMeta, b: &FormMeta) -> Result<FormMeta> {
    if a.weight != b.weight || a.character != b.character {
        return Err(Error::RecipeEvaluation(format!("{a} and {b} have no common space")));
    }
    FormMeta::new(a.weight, lcm(a.level, b.level), a.character, a.cuspidal && b.cuspidal)
}

fn eis_series(limit: i64, exec: Exec, f: impl Fn(u64) -> BigRational + Sync + Send) -> Result<QExpansion> {
    let coeffs = exec.map_range(0..limit as u64 + 1, |n| if n == 0 { rat(1, 1) } else { f(n) });
    QExpansion::from_rationals(0, coeffs)
}

fn lattice(o: &LatticeOracle, limit: i64, exec: Exec) -> Result<QExpansion> {
    let sign = |n: u64| if n.is_multiple_of(2) { 1i64 } else { -1 };
    let coeffs: Vec<QuadScalar> = exec.map_range(0..limit as u64 + 1, |n| match o {
        LatticeOracle::SignedR12Progression => {
            if n % 8 == 3 {
                let k = (n - 3) / 8;
                QuadScalar::rational(rat(sign(k) * rep_diagonal(&[1, 2], n) as i64, 4))
            } else {
                QuadScalar::zero()
            }
        }
        LatticeOracle::SignedR3 => QuadScalar::from_int(sign(n) * rep_diagonal(&[1, 1, 1], n) as i64),
        LatticeOracle::R3 => QuadScalar::from_int(rep_diagonal(&[1, 1, 1], n) as i64),
    });
    QExpansion::from_integer_coeffs(0, coeffs)
}

impl fmt::Display for LatticeOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LatticeOracle::SignedR12Progression => "1/4*sum (-1)^n r_(1,2)(8n+3) q^(8n+3)",
            LatticeOracle::SignedR3 => "sum (-1)^n r_(1,1,1)(n) q^n",
            LatticeOracle::R3 => "sum r_(1,1,1)(n) q^n",
        })
    }
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Eta(s) => write!(f, "eta[{s}]"),
            Recipe::Newform(id) => write!(f, "{id}"),
            Recipe::NewformClosed(id) => write!(f, "closed({id})"),
            Recipe::Theta { chi, j } => write!(f, "theta({chi},{j})"),
            Recipe::Aux(t) => write!(f, "{t}"),
            Recipe::Eisenstein { kappa, chi, psi } => write!(f, "E_{kappa}({chi},{psi})"),
            Recipe::EisDefinition(w) => write!(f, "{w}"),
            Recipe::EisClosed(w) => write!(f, "closed({w})"),
            Recipe::Hurwitz { l1, l2 } => write!(f, "H_{l1},{l2}"),
            Recipe::Lattice(o) => write!(f, "[{o}]"),
            Recipe::Op(op, inner) => write!(f, "{inner}|{op}"),
            Recipe::Mul(a, b) => write!(f, "({a})*({b})"),
            Recipe::Pow(a, e) => write!(f, "({a})^{e}"),
            Recipe::Bracket { f: a, g, ell, .. } => write!(f, "[{a},{g}]_{ell}"),
            Recipe::Lin(terms) => {
                for (i, (c, r)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "({c})*{r}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_precision_propagates() {
        let r = Recipe::Hurwitz { l1: 1, l2: 2 }.op("U:2");
        let f = r.eval(50, Exec::Sequential).unwrap();
        assert!(f.limit() >= 50);
        let v = Recipe::Theta {
            chi: DirichletChar::Trivial,
            j: 0,
        }
        .op("V:9");
        assert!(v.eval(100, Exec::Sequential).unwrap().limit() >= 100);
    }

    #[test]
    fn display() {
        let r = Recipe::Newform(NewformId::G1).op("S:12:2");
        assert_eq!(r.to_string(), "g1|S:12:2");
    }
}
