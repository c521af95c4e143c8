//! Constructors for the named modular objects: eta-quotients, unary and
//! binary theta series, Eisenstein series, Hurwitz class number series, and
//! the eight newforms `g1..g8`, each with weight/level/character metadata.

pub mod eisenstein;
pub mod eta;
pub mod hurwitz;
pub mod newforms;
pub mod theta;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::qseries::{qx_linear, qx_mul, qx_theta_derivative, QExpansion};
use crate::scalars::{rat, QuadScalar};

pub use eisenstein::{eis_quasi_combo, eisenstein, eisenstein_meta};
pub use eta::{eta_expand, eta_meta, eta_min_level, EtaModularity, EtaRejection};
pub use hurwitz::{hurwitz, hurwitz_combo, hurwitz_combo_meta, hurwitz_table};
pub use newforms::{gamma1, newform_closed_series, newform_coeff_closed, newform_expand, NewformId};
pub use theta::{rep_diagonal, rep_series, theta_aux, theta_meta, theta_unary, theta_unary_v, AuxTheta};

/// A weight in `(1/2)Z`, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(i64);

impl Weight {
    pub const fn integral(k: i64) -> Self {
        Weight(2 * k)
    }

    /// Weight `k + 1/2`.
    pub const fn half(k: i64) -> Self {
        Weight(2 * k + 1)
    }

    pub const fn from_twice(t: i64) -> Self {
        Weight(t)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integral(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn as_integer(self) -> Option<i64> {
        self.is_integral().then_some(self.0 / 2)
    }

    /// The `k` with weight `k + 1/2`, for half-integral weights.
    pub fn half_index(self) -> Option<i64> {
        (!self.is_integral()).then_some((self.0 - 1).div_euclid(2))
    }

    pub fn as_rational(self) -> BigRational {
        rat(self.0, 2)
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight(self.0 + o.0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("expected a weight like 2 or 3/2, got {s:?}"),
        };
        match s.trim().split_once('/') {
            None => s.trim().parse::<i64>().map(Weight::integral).map_err(|_| bad()),
            Some((n, "2")) => n.trim().parse::<i64>().map(Weight).map_err(|_| bad()),
            Some((n, "1")) => n.trim().parse::<i64>().map(Weight::integral).map_err(|_| bad()),
            Some(_) => Err(bad()),
        }
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The space `M_k(Gamma0(N), chi)` (or `S_k` when `cuspidal`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FormMeta {
    pub weight: Weight,
    pub level: u64,
    pub character: DirichletChar,
    pub cuspidal: bool,
}

impl FormMeta {
    pub fn new(weight: Weight, level: u64, character: DirichletChar, cuspidal: bool) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        if !weight.is_integral() && !level.is_multiple_of(4) {
            return Err(Error::HypothesisViolation(format!(
                "half-integral weight {weight} needs 4 | N, got N = {level}"
            )));
        }
        if !level.is_multiple_of(character.conductor()) {
            return Err(Error::HypothesisViolation(format!(
                "conductor of {character} does not divide {level}"
            )));
        }
        Ok(FormMeta {
            weight,
            level,
            character,
            cuspidal,
        })
    }

    /// Shorthand for a full space of modular forms; panics on inconsistent data.
    pub fn m(weight: Weight, level: u64, character: DirichletChar) -> Self {
        Self::new(weight, level, character, false).expect("consistent metadata")
    }

    pub fn s(weight: Weight, level: u64, character: DirichletChar) -> Self {
        Self::new(weight, level, character, true).expect("consistent metadata")
    }
}

impl fmt::Display for FormMeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sp = if self.cuspidal { 'S' } else { 'M' };
        write!(f, "{sp}_{}(Gamma0({}), {})", self.weight, self.level, self.character)
    }
}

/// Rising factorial `x (x+1) ... (x+n-1)`.
fn rising(x: &BigRational, n: i64) -> BigRational {
    let mut r = rat(1, 1);
    for i in 0..n {
        r *= x + rat(i, 1);
    }
    r
}

fn factorial(n: i64) -> BigRational {
    rising(&rat(1, 1), n)
}

/// Weights `w_r` of the Rankin-Cohen bracket
/// `[f,g]_l = sum_r (-1)^r w_r D^r f D^{l-r} g`, where
/// `w_r = Gamma(k1+l) Gamma(k2+l) / (r! (l-r)! Gamma(k1+r) Gamma(k2+l-r))`.
pub fn rankin_cohen_weights(k1: Weight, k2: Weight, ell: i64) -> Vec<BigRational> {
    let (a, b) = (k1.as_rational(), k2.as_rational());
    (0..=ell)
        .map(|r| {
            rising(&(&a + rat(r, 1)), ell - r) * rising(&(&b + rat(ell - r, 1)), r)
                / (factorial(r) * factorial(ell - r))
        })
        .collect()
}

/// The `l`-th Rankin-Cohen bracket with the normalized derivative `q d/dq`.
pub fn rankin_cohen(f: &QExpansion, k1: Weight, g: &QExpansion, k2: Weight, ell: i64) -> Result<QExpansion> {
    if ell < 0 {
        return Err(Error::InvalidArgument("bracket order must be nonnegative".into()));
    }
    let mut df = vec![f.clone()];
    let mut dg = vec![g.clone()];
    for _ in 0..ell {
        df.push(qx_theta_derivative(df.last().expect("nonempty")));
        dg.push(qx_theta_derivative(dg.last().expect("nonempty")));
    }
    let weights = rankin_cohen_weights(k1, k2, ell);
    let mut parts = Vec::with_capacity(weights.len());
    for (r, w) in weights.iter().enumerate() {
        let p = qx_mul(&df[r], &dg[ell as usize - r])?;
        let c = if r % 2 == 0 { w.clone() } else { -w.clone() };
        parts.push((QuadScalar::rational(c), p));
    }
    let refs: Vec<(QuadScalar, &QExpansion)> = parts.iter().map(|(c, p)| (c.clone(), p)).collect();
    qx_linear(&refs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{qx_agree, qx_sub};

    #[test]
    fn weight_text() {
        for s in ["2", "3/2", "1/2", "12"] {
            assert_eq!(s.parse::<Weight>().unwrap().to_string(), s);
        }
        assert_eq!(Weight::half(1), "3/2".parse().unwrap());
        assert_eq!(Weight::half(1).half_index(), Some(1));
        assert!("3/4".parse::<Weight>().is_err());
    }

    #[test]
    fn meta_validation() {
        assert!(FormMeta::new(Weight::half(0), 6, DirichletChar::Trivial, false).is_err());
        assert!(FormMeta::new(Weight::integral(2), 30, DirichletChar::Kronecker(12), false).is_err());
        let m = FormMeta::s(Weight::integral(2), 36, DirichletChar::Kronecker(12));
        assert_eq!(m.to_string(), "S_2(Gamma0(36), chi_12)");
    }

    #[test]
    fn bracket_weights() {
        let h = Weight::half(0);
        assert_eq!(rankin_cohen_weights(h, h, 1), vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(
            rankin_cohen_weights(Weight::integral(1), Weight::integral(1), 0),
            vec![rat(1, 1)]
        );
        // l = 2, k1 = k2 = 1: Gamma(3)^2 / (r!(2-r)! Gamma(1+r) Gamma(3-r)).
        let w = rankin_cohen_weights(Weight::integral(1), Weight::integral(1), 2);
        assert_eq!(w, vec![rat(1, 1), rat(4, 1), rat(1, 1)]);
    }

    #[test]
    fn bracket_basics() {
        let f = theta_unary(DirichletChar::Trivial, 0, 200).unwrap();
        let g = theta_unary_v(DirichletChar::Trivial, 0, 9, 200).unwrap();
        let h = Weight::half(0);
        let b0 = rankin_cohen(&f, h, &g, h, 0).unwrap();
        assert!(qx_agree(&b0, &qx_mul(&f, &g).unwrap()).unwrap());
        let self_bracket = rankin_cohen(&f, h, &f, h, 1).unwrap();
        assert!(self_bracket.is_zero());
        let b1 = rankin_cohen(&f, h, &g, h, 1).unwrap();
        let b1r = rankin_cohen(&g, h, &f, h, 1).unwrap();
        assert!(qx_agree(&b1, &qx_sub(&QExpansion::zero(24 * 201).unwrap(), &b1r).unwrap()).unwrap());
    }
}
