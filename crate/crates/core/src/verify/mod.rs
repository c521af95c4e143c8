//! Identity certification by the Sturm bound, vanishing-set cross-checks,
//! growth bounds and nonvanishing scans.

mod eis;
mod growth;
mod hecke;
mod recipe;
mod registry;
mod vanishing;

use serde::Serialize;

pub use crate::arith::divisor_count;
pub use eis::{eisenstein_closed_form, eisenstein_combination, eisenstein_divisor_def, EisId};
pub use growth::{
    f_alpha_nu_checks, growth_f, growth_f_nonneg, growth_g_squared, scan_growth, scan_nonvanishing, GrowthId,
    GrowthMin, GrowthScanReport, ResidueClass, ScanReport, ScanTarget, SCAN_BUDGET,
};
pub use hecke::{hecke_deligne_check, HeckeReport};
pub use recipe::{LatticeOracle, Recipe};
pub use registry::{
    find_identity, negative_controls, registry, verify_identity, IdentityRecord, Mismatch, VerificationReport,
};
pub use vanishing::{
    crosscheck_newform_zeros, crosscheck_vanishing, families, find_family, newform_zero_predicate, vanishing_predicate,
    zero_pattern, CrosscheckReport, PredicateId, VanishingFamily, VanishingMismatch,
};

use crate::arith::{divisors, factorize};
use crate::characters::kronecker;
use crate::forms::Weight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        })
    }
}

/// `⌊N (k/12) ∏_{p|N} (1 + 1/p)⌋`.
pub fn sturm_bound(weight: Weight, level: u64) -> u64 {
    assert!(level >= 1 && weight.twice() > 0, "need N >= 1 and k > 0");
    let mut num = level as u128 * weight.twice() as u128;
    let mut den = 24u128;
    for (p, _) in factorize(level) {
        num *= p as u128 + 1;
        den *= p as u128;
    }
    (num / den) as u64
}

/// `r_{(1,b)}(n)` for `b = 1, 2` from the divisor-sum formulas
/// `4 Σ_{d|n} (-4/d)` and `2 Σ_{d|n} (-8/d)`.
pub fn r2_divisor_form(b: u64, n: u64) -> u64 {
    assert!(n >= 1);
    let (scale, disc) = match b {
        1 => (4, -4),
        2 => (2, -8),
        _ => panic!("only x^2 + y^2 and x^2 + 2y^2 have a one-class divisor formula here"),
    };
    let s: i64 = divisors(n).into_iter().map(|d| kronecker(disc, d as i64) as i64).sum();
    (scale * s) as u64
}
