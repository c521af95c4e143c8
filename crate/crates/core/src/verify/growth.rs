//! Growth bounds for the Eisenstein parts of `f1 = 1^-1 2^10 3^-1 4^-4` and
//! `f2 = 1^7 2^-2 3^-1`, and the nonvanishing scans built on them.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use super::Status;
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::qseries::{c_series_int, EtaSpec};
use crate::scalars::rat;

/// Largest scan accepted without an explicit override.
pub const SCAN_BUDGET: u64 = 2_000_000;

fn big_pow(b: u64, e: u32) -> BigInt {
    BigInt::from(b).pow(e)
}

/// `F_p(ν)`; `p = 3` never occurs (the products run over `n` prime to 3).
pub fn growth_f(p: u64, nu: u32) -> Result<BigRational> {
    let one = BigInt::one();
    let r = match p % 12 {
        _ if p == 2 => BigRational::new(big_pow(2, nu + 2) - &one, BigInt::from(3)),
        1 | 11 => BigRational::new(big_pow(p, nu + 1) - &one, BigInt::from(p - 1)),
        5 | 7 if nu.is_multiple_of(2) => BigRational::new(big_pow(p, nu + 1) + &one, BigInt::from(p + 1)),
        5 | 7 => BigRational::new(big_pow(p, nu + 1) - &one, BigInt::from(p + 1)),
        _ => return Err(Error::HypothesisViolation(format!("F_p is not defined for p = {p}"))),
    };
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GrowthId {
    G1,
    G2,
}

/// `G(n)^2`, exact.
pub fn growth_g_squared(which: GrowthId, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut g = BigRational::one();
    for (p, nu) in factorize(n) {
        let den = BigInt::from((nu + 1) as u64).pow(2) * big_pow(p, nu);
        let num = if p == 2 && which == GrowthId::G2 {
            big_pow(2, nu + 1) - BigInt::one()
        } else {
            let f = growth_f(p, nu)?;
            g *= BigRational::new(f.numer().pow(2), f.denom().pow(2) * den);
            continue;
        };
        g *= BigRational::new(num.pow(2), den);
    }
    Ok(g)
}

/// `f_{α,ν}(x) = x^{ν+1} - 1 - α(ν+1)(x+1)x^{ν/2} >= 0`, decided by comparing
/// squares.
pub fn growth_f_nonneg(alpha: &BigRational, nu: u32, x: u64) -> bool {
    assert!(x >= 3 && !alpha.is_negative());
    let lhs = BigRational::from_integer(big_pow(x, nu + 1) - BigInt::one());
    let rhs2 = alpha.pow(2)
        * rat(((nu + 1) as i64).pow(2), 1)
        * BigRational::from_integer(BigInt::from(x + 1).pow(2) * big_pow(x, nu));
    lhs.pow(2) >= rhs2
}

/// `(α, ν, x)` with the expected sign `f_{α,ν}(x) >= 0`.
pub fn f_alpha_nu_checks() -> Vec<(BigRational, u32, u64, bool)> {
    let a = rat(21, 10);
    let b = rat(10, 1);
    vec![
        (a.clone(), 1, 20, true),
        (a.clone(), 2, 8, true),
        (a, 3, 5, true),
        (b.clone(), 1, 402, true),
        (b.clone(), 2, 31, true),
        (b.clone(), 3, 13, true),
        (b.clone(), 4, 8, true),
        (b.clone(), 5, 6, true),
        (b.clone(), 6, 5, true),
        (b, 1, 300, false),
    ]
}

pub(crate) fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ScanTarget {
    F1,
    F2,
}

impl ScanTarget {
    pub fn spec(self) -> EtaSpec {
        EtaSpec::parse(match self {
            ScanTarget::F1 => "1^-1 2^10 3^-1 4^-4",
            ScanTarget::F2 => "1^7 2^-2 3^-1",
        })
        .expect("valid spec")
    }

    pub fn growth(self) -> GrowthId {
        match self {
            ScanTarget::F1 => GrowthId::G1,
            ScanTarget::F2 => GrowthId::G2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueClass {
    pub modulus: u64,
    pub residue: u64,
}

impl ResidueClass {
    pub fn new(modulus: u64, residue: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidArgument("modulus must be positive".into()));
        }
        Ok(ResidueClass {
            modulus,
            residue: residue % modulus,
        })
    }

    pub fn contains(&self, n: u64) -> bool {
        n % self.modulus == self.residue
    }

    fn avoids_three(&self) -> bool {
        self.modulus.is_multiple_of(3) && !self.residue.is_multiple_of(3)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthMin {
    pub n: u64,
    #[serde(serialize_with = "ser_rational")]
    pub g_squared: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub id: String,
    pub status: Status,
    pub class: ResidueClass,
    pub limit: u64,
    pub checked: u64,
    pub positive: u64,
    pub negative: u64,
    pub zeros: Vec<u64>,
    pub min_growth: Option<GrowthMin>,
    pub elapsed_ms: u64,
}

fn min_growth(which: GrowthId, ns: &[u64], exec: Exec) -> Result<Option<GrowthMin>> {
    let vals = exec.map_slice(ns, |&n| growth_g_squared(which, n).map(|g| (n, g)));
    let mut best: Option<GrowthMin> = None;
    for v in vals {
        let (n, g) = v?;
        if best.as_ref().is_none_or(|b| g < b.g_squared) {
            best = Some(GrowthMin { n, g_squared: g });
        }
    }
    Ok(best)
}

/// Expands `f1`/`f2` through `limit` and records every zero coefficient with
/// index `1 <= n <= limit` in `class`.
pub fn scan_nonvanishing(target: ScanTarget, class: ResidueClass, limit: u64, exec: Exec) -> Result<ScanReport> {
    if limit > SCAN_BUDGET {
        return Err(Error::ResourceBudgetExceeded(format!(
            "scan limit {limit} exceeds the budget {SCAN_BUDGET}"
        )));
    }
    let start = Instant::now();
    let s = c_series_int(&target.spec(), limit as usize, exec == Exec::Parallel);
    let ns: Vec<u64> = (1..=limit).filter(|&n| class.contains(n)).collect();
    let signs = exec.map_slice(&ns, |&n| {
        let i = n as usize;
        if s.is_zero_at(i) {
            0i8
        } else if s.is_positive_at(i) {
            1
        } else {
            -1
        }
    });
    let zeros: Vec<u64> = ns
        .iter()
        .zip(&signs)
        .filter(|(_, &s)| s == 0)
        .map(|(&n, _)| n)
        .collect();
    let min_growth = if class.avoids_three() {
        min_growth(target.growth(), &ns, exec)?
    } else {
        None
    };
    Ok(ScanReport {
        id: format!("{target:?}").to_lowercase(),
        status: if zeros.is_empty() { Status::Pass } else { Status::Fail },
        class,
        limit,
        checked: ns.len() as u64,
        positive: signs.iter().filter(|&&s| s > 0).count() as u64,
        negative: signs.iter().filter(|&&s| s < 0).count() as u64,
        zeros,
        min_growth,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthScanReport {
    pub id: String,
    pub status: Status,
    pub from: u64,
    pub limit: u64,
    pub checked: u64,
    #[serde(serialize_with = "ser_rational")]
    pub threshold: BigRational,
    pub min: Option<GrowthMin>,
    /// Indices with `G(n) <= threshold`.
    pub violations: Vec<u64>,
    pub elapsed_ms: u64,
}

/// Checks `G(n) > threshold` for `from < n <= limit`, `n ≡ 1 (mod 3)`.
pub fn scan_growth(
    which: GrowthId,
    from: u64,
    limit: u64,
    threshold: &BigRational,
    exec: Exec,
) -> Result<GrowthScanReport> {
    if threshold.is_negative() {
        return Err(Error::InvalidArgument("threshold must be nonnegative".into()));
    }
    let start = Instant::now();
    let t2 = threshold.pow(2);
    let ns: Vec<u64> = ((from + 1)..=limit).filter(|n| n % 3 == 1).collect();
    let vals = exec.map_slice(&ns, |&n| growth_g_squared(which, n));
    let vals = vals.into_iter().collect::<Result<Vec<_>>>()?;
    let violations = ns
        .iter()
        .zip(&vals)
        .filter(|(_, g)| **g <= t2)
        .map(|(&n, _)| n)
        .collect::<Vec<_>>();
    let min = ns.iter().zip(vals).fold(None::<GrowthMin>, |best, (&n, g)| match best {
        Some(b) if b.g_squared <= g => Some(b),
        _ => Some(GrowthMin { n, g_squared: g }),
    });
    Ok(GrowthScanReport {
        id: format!("{which:?}"),
        status: if violations.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        from,
        limit,
        checked: ns.len() as u64,
        threshold: threshold.clone(),
        min,
        violations,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
