use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::Status;
use crate::arith::{divisor_count, factorize};
use crate::error::{Error, Result};
use crate::forms::{newform_expand, NewformId};
use crate::par::Exec;
use crate::scalars::QuadScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeReport {
    pub id: String,
    pub status: Status,
    pub limit: u64,
    pub multiplicative_checked: u64,
    pub recursion_checked: u64,
    pub deligne_checked: u64,
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
}

/// Checks on the theta-built expansion of a newform through `limit`:
/// `a(1) = 1`, `a(n) = ∏ a(p^e)`, the prime-power recursion
/// `a(p^{r+1}) = a(p) a(p^r) - χ(p) p^{k-1} a(p^{r-1})`, and
/// `|a(n)|^2 <= d(n)^2 n^{k-1}`.
pub fn hecke_deligne_check(id: NewformId, limit: u64, exec: Exec) -> Result<HeckeReport> {
    if limit < 2 {
        return Err(Error::InvalidArgument("limit must be at least 2".into()));
    }
    let start = Instant::now();
    let meta = id.meta();
    let k = meta.weight.as_integer().expect("integral weight newform") as u32;
    let f = newform_expand(id, limit as i64)?;
    let a = |n: u64| f.coeff(n as i64).expect("inside window");
    let mut failures = Vec::new();
    if a(1) != QuadScalar::one() {
        failures.push("a(1) != 1".to_string());
    }

    let mult = exec.map_range(2..limit + 1, |n| {
        let fs = factorize(n);
        if fs.len() < 2 {
            return Ok::<_, crate::error::Error>(None);
        }
        let mut prod = QuadScalar::one();
        for (p, e) in fs {
            prod = prod.try_mul(&a(p.pow(e)))?;
        }
        Ok(Some(prod == a(n)))
    });
    let mut multiplicative_checked = 0;
    for (i, r) in mult.into_iter().enumerate() {
        if let Some(ok) = r? {
            multiplicative_checked += 1;
            if !ok {
                failures.push(format!("multiplicativity at n={}", i + 2));
            }
        }
    }

    let mut recursion_checked = 0;
    for p in crate::arith::primes_up_to(limit)
        .iter()
        .copied()
        .take_while(|&p| p <= limit)
    {
        // the Nebentypus is a character mod N, so it vanishes at p | N
        let chi_p = if meta.level.is_multiple_of(p) {
            0
        } else {
            meta.character.eval(p as i64)
        };
        let c = BigRational::from_integer(BigInt::from(chi_p) * BigInt::from(p).pow(k - 1));
        let mut prev = QuadScalar::one();
        let mut cur = a(p);
        let mut pr = p;
        while pr <= limit / p {
            let next = pr * p;
            let want = a(p).try_mul(&cur)?.try_sub(&prev.scale(&c))?;
            recursion_checked += 1;
            if want != a(next) {
                failures.push(format!("recursion at p={p}, p^r={next}"));
            }
            prev = cur;
            cur = a(next);
            pr = next;
        }
    }

    let deligne = exec.map_range(1..limit + 1, |n| {
        let d = BigInt::from(divisor_count(n));
        let bound = BigRational::from_integer(&d * &d * BigInt::from(n).pow(k - 1));
        a(n).abs_sq_at_most(&bound)
    });
    for (i, ok) in deligne.iter().enumerate() {
        if !ok {
            failures.push(format!("Deligne bound at n={}", i + 1));
        }
    }

    Ok(HeckeReport {
        id: id.to_string(),
        status: Status::from_ok(failures.is_empty()),
        limit,
        multiplicative_checked,
        recursion_checked,
        deligne_checked: deligne.len() as u64,
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_newforms_small() {
        for id in NewformId::ALL {
            let r = hecke_deligne_check(id, 300, Exec::Sequential).unwrap();
            assert_eq!(r.status, Status::Pass, "{id}: {:?}", r.failures);
            assert!(r.recursion_checked > 0 && r.multiplicative_checked > 0);
        }
    }
}
