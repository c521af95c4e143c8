//! Vanishing sets of eta-quotient coefficients and the arithmetic predicates
//! describing them.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

use super::Status;
use crate::arith::{factorize, gcd};
use crate::error::{Error, Result};
use crate::forms::{newform_expand, NewformId};
use crate::par::Exec;
use crate::qseries::{c_series_int, EtaSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PredicateId {
    /// Some `p ≡ 3 (mod 4)` divides `3n+2` to an odd power.
    ThreeNPlusTwo,
    /// Some `p ≡ 5, 7 (mod 8)` divides `8n+3` to an odd power.
    EightNPlusThree,
    /// `n ≡ 2 (mod 3)` and some `p ≡ 3 (mod 4)` divides `n` to an odd power.
    TwoModThree,
    /// `n = 4^k (8m + 7)`.
    NotSumOfThreeSquares,
    /// Some `p ≡ 2 (mod 3)` divides `3n+1` to an odd power.
    ThreeNPlusOne,
    /// Never true.
    Empty,
    /// `3 | n` or some `p ≡ 3 (mod 4)` divides `n` to an odd power.
    DivThreeOrOddThreeModFour,
    /// `gcd(n, 6) > 1` or some `p ≡ 3 (mod 4)` divides `n` to an odd power.
    CoprimeSixFails,
}

impl PredicateId {
    /// The affine map `n -> u n + v` applied before factoring.
    pub fn arg_map(self) -> (u64, u64) {
        match self {
            PredicateId::ThreeNPlusTwo => (3, 2),
            PredicateId::EightNPlusThree => (8, 3),
            PredicateId::ThreeNPlusOne => (3, 1),
            _ => (1, 0),
        }
    }
}

impl fmt::Display for PredicateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PredicateId::ThreeNPlusTwo => "exists p = 3 mod 4 with ord_p(3n+2) odd",
            PredicateId::EightNPlusThree => "exists p = 5,7 mod 8 with ord_p(8n+3) odd",
            PredicateId::TwoModThree => "n = 2 mod 3 and exists p = 3 mod 4 with ord_p(n) odd",
            PredicateId::NotSumOfThreeSquares => "n = 4^k(8m+7)",
            PredicateId::ThreeNPlusOne => "exists p = 2 mod 3 with ord_p(3n+1) odd",
            PredicateId::Empty => "never",
            PredicateId::DivThreeOrOddThreeModFour => "3 | n or exists p = 3 mod 4 with ord_p(n) odd",
            PredicateId::CoprimeSixFails => "gcd(n,6) > 1 or exists p = 3 mod 4 with ord_p(n) odd",
        })
    }
}

fn odd_power_in_class(m: u64, class: impl Fn(u64) -> bool) -> bool {
    factorize(m).into_iter().any(|(p, e)| e % 2 == 1 && class(p))
}

fn three_mod_four(p: u64) -> bool {
    p % 4 == 3
}

/// Evaluates the predicate at `n` by full factorization of the mapped
/// argument. At `n = 0` the argument-mapped predicates see `v`; the others
/// are false.
pub fn vanishing_predicate(pred: PredicateId, n: u64) -> bool {
    let (u, v) = pred.arg_map();
    let m = u * n + v;
    match pred {
        PredicateId::ThreeNPlusTwo => odd_power_in_class(m, three_mod_four),
        PredicateId::EightNPlusThree => odd_power_in_class(m, |p| p % 8 == 5 || p % 8 == 7),
        PredicateId::ThreeNPlusOne => odd_power_in_class(m, |p| p % 3 == 2),
        PredicateId::Empty => false,
        _ if n == 0 => false,
        PredicateId::TwoModThree => n % 3 == 2 && odd_power_in_class(n, three_mod_four),
        PredicateId::NotSumOfThreeSquares => {
            let mut k = n;
            while k.is_multiple_of(4) {
                k /= 4;
            }
            k % 8 == 7
        }
        PredicateId::DivThreeOrOddThreeModFour => n.is_multiple_of(3) || odd_power_in_class(n, three_mod_four),
        PredicateId::CoprimeSixFails => gcd(n, 6) > 1 || odd_power_in_class(n, three_mod_four),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingFamily {
    pub id: &'static str,
    pub spec: EtaSpec,
    pub predicate: PredicateId,
}

impl VanishingFamily {
    fn new(id: &'static str, spec: &str, predicate: PredicateId) -> Self {
        VanishingFamily {
            id,
            spec: EtaSpec::parse(spec).expect("valid family spec"),
            predicate,
        }
    }
}

pub fn families() -> Vec<VanishingFamily> {
    use PredicateId::*;
    vec![
        VanishingFamily::new("L52-1", "1^-1 3^3 4^2", ThreeNPlusTwo),
        VanishingFamily::new("L52-2", "1^4 2^-2 4^4", ThreeNPlusTwo),
        VanishingFamily::new("L95-1", "1^1 2^-2 4^3", EightNPlusThree),
        VanishingFamily::new("L95-2", "1^1 2^2 4^1", EightNPlusThree),
        VanishingFamily::new("L95-3", "1^3 2^-1 4^2", EightNPlusThree),
        VanishingFamily::new("L95-4", "1^3 2^3", EightNPlusThree),
        VanishingFamily::new("L95-5", "1^7 2^-3 4^2", EightNPlusThree),
        VanishingFamily::new("L65-1", "1^-1 2^10 3^-1 4^-4", TwoModThree),
        VanishingFamily::new("L65-2", "1^7 2^-2 3^-1", TwoModThree),
        VanishingFamily::new("L133-1", "1^2 2^3 4^-2", NotSumOfThreeSquares),
        VanishingFamily::new("L133-2", "1^6 2^-3", NotSumOfThreeSquares),
        VanishingFamily::new("INTRO-1", "1^8", ThreeNPlusOne),
        VanishingFamily::new("INTRO-2", "1^-1 3^3", ThreeNPlusOne),
        VanishingFamily::new("INTRO-3", "1^2 3^2", ThreeNPlusOne),
        VanishingFamily::new("LAGRANGE", "1^-8 2^20 4^-8", Empty),
        VanishingFamily::new("PARTITION", "1^-1", Empty),
        VanishingFamily::new("LEHMER", "1^24", Empty),
    ]
}

/// Looks a family up by id, or by `PREFIX-<spec>` / bare spec text with
/// `_` allowed in place of spaces (`INTRO-1^8`, `1^-1_3^3_4^2`).
pub fn find_family(name: &str) -> Result<VanishingFamily> {
    let all = families();
    if let Some(f) = all.iter().find(|f| f.id.eq_ignore_ascii_case(name)) {
        return Ok(f.clone());
    }
    let spec_text = match name.split_once('-') {
        Some((prefix, rest)) if prefix.chars().all(|c| c.is_ascii_alphabetic()) && !prefix.is_empty() => rest,
        _ => name,
    };
    let parsed = EtaSpec::parse(&spec_text.replace('_', " ")).map_err(|_| Error::UnknownId(name.into()))?;
    all.into_iter()
        .find(|f| f.spec == parsed)
        .ok_or_else(|| Error::UnknownId(name.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingMismatch {
    pub n: u64,
    pub coefficient: String,
    pub predicate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub id: String,
    pub spec: String,
    pub predicate: String,
    pub status: Status,
    pub from: u64,
    pub limit: u64,
    pub checked: u64,
    pub zeros: u64,
    pub nonzeros: u64,
    pub mismatches: Vec<VanishingMismatch>,
    pub elapsed_ms: u64,
}

/// Indices `from..=limit` where `C_spec(n) = 0`.
pub fn zero_pattern(spec: &EtaSpec, limit: u64, exec: Exec) -> Vec<bool> {
    let s = c_series_int(spec, limit as usize, exec == Exec::Parallel);
    exec.map_range(0..limit + 1, |n| s.is_zero_at(n as usize))
}

#[allow(clippy::too_many_arguments)]
fn compare(
    id: String,
    spec: String,
    pred: PredicateId,
    from: u64,
    limit: u64,
    exec: Exec,
    start: Instant,
    is_zero: impl Fn(u64) -> bool + Sync + Send,
    show: impl Fn(u64) -> String + Sync + Send,
) -> CrosscheckReport {
    let rows = exec.map_range(from..limit + 1, |n| (is_zero(n), vanishing_predicate(pred, n)));
    let mut zeros = 0;
    let mut mismatches = Vec::new();
    for (i, &(z, p)) in rows.iter().enumerate() {
        let n = from + i as u64;
        zeros += z as u64;
        if z != p {
            mismatches.push(VanishingMismatch {
                n,
                coefficient: show(n),
                predicate: p,
            });
        }
    }
    let checked = rows.len() as u64;
    CrosscheckReport {
        id,
        spec,
        predicate: pred.to_string(),
        status: if mismatches.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        },
        from,
        limit,
        checked,
        zeros,
        nonzeros: checked - zeros,
        mismatches,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// Compares the zero set of `C_spec(n)` with the family predicate on
/// `1..=limit` (`0..=limit` with `include_n0`).
pub fn crosscheck_vanishing(
    family: &VanishingFamily,
    limit: u64,
    include_n0: bool,
    exec: Exec,
) -> Result<CrosscheckReport> {
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    let start = Instant::now();
    let s = c_series_int(&family.spec, limit as usize, exec == Exec::Parallel);
    Ok(compare(
        family.id.into(),
        family.spec.to_string(),
        family.predicate,
        if include_n0 { 0 } else { 1 },
        limit,
        exec,
        start,
        |n| s.is_zero_at(n as usize),
        |n| s.get(n as usize).to_string(),
    ))
}

/// Predicate governing the zeros of a newform's coefficients, where one is
/// known in closed form.
pub fn newform_zero_predicate(id: NewformId) -> Option<PredicateId> {
    match id {
        NewformId::G1 | NewformId::G2 | NewformId::G4 => Some(PredicateId::DivThreeOrOddThreeModFour),
        NewformId::G3 => Some(PredicateId::CoprimeSixFails),
        _ => None,
    }
}

/// Zero set of the theta-built newform against its predicate on `1..=limit`.
pub fn crosscheck_newform_zeros(id: NewformId, limit: u64, exec: Exec) -> Result<CrosscheckReport> {
    let pred = newform_zero_predicate(id)
        .ok_or_else(|| Error::InvalidArgument(format!("no zero predicate recorded for {id}")))?;
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be at least 1".into()));
    }
    let start = Instant::now();
    let f = newform_expand(id, limit as i64)?;
    let coeff = |n: u64| f.coeff(n as i64).expect("inside window");
    Ok(compare(
        id.to_string(),
        String::new(),
        pred,
        1,
        limit,
        exec,
        start,
        |n| coeff(n).is_zero(),
        |n| coeff(n).to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use PredicateId::*;

    #[test]
    fn predicate_examples() {
        assert!(vanishing_predicate(ThreeNPlusTwo, 4));
        assert!(!vanishing_predicate(ThreeNPlusTwo, 1));
        assert!(vanishing_predicate(EightNPlusThree, 4));
        assert!(!vanishing_predicate(EightNPlusThree, 0));
        assert!(vanishing_predicate(NotSumOfThreeSquares, 15));
        assert!(!vanishing_predicate(NotSumOfThreeSquares, 14));
        assert!(vanishing_predicate(NotSumOfThreeSquares, 28));
        assert!(vanishing_predicate(NotSumOfThreeSquares, 7));
        // 3*1 + 1 = 4 = 2^2: even power of 2
        assert!(!vanishing_predicate(ThreeNPlusOne, 1));
        // 3*3 + 1 = 10 = 2 * 5
        assert!(vanishing_predicate(ThreeNPlusOne, 3));
        assert!(vanishing_predicate(TwoModThree, 11));
        assert!(!vanishing_predicate(TwoModThree, 5));
        assert!(vanishing_predicate(CoprimeSixFails, 2));
        assert!(!vanishing_predicate(CoprimeSixFails, 5));
    }

    #[test]
    fn lookup() {
        assert_eq!(find_family("L133-1").unwrap().spec.to_string(), "1^2 2^3 4^-2");
        assert_eq!(find_family("INTRO-1^8").unwrap().id, "INTRO-1");
        assert_eq!(find_family("1^-1_3^3_4^2").unwrap().id, "L52-1");
        assert!(matches!(find_family("NOPE"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn small_crosschecks() {
        for f in families() {
            let r = crosscheck_vanishing(&f, 300, true, Exec::Sequential).unwrap();
            assert_eq!(
                r.status,
                Status::Pass,
                "{}: {:?}",
                f.id,
                &r.mismatches[..r.mismatches.len().min(3)]
            );
            assert_eq!(r.checked, 301);
        }
    }

    #[test]
    fn jobs_do_not_change_reports() {
        let f = find_family("L95-3").unwrap();
        let mut a = crosscheck_vanishing(&f, 500, false, Exec::Sequential).unwrap();
        let mut b = crosscheck_vanishing(&f, 500, false, Exec::Parallel).unwrap();
        a.elapsed_ms = 0;
        b.elapsed_ms = 0;
        assert_eq!(a, b);
    }
}
