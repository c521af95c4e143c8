//! Hurwitz class numbers and the weight 3/2 series `H_{l1,l2}`.

use std::sync::{Arc, RwLock};

use num_rational::BigRational;

use super::{FormMeta, Weight};
use crate::arith::{gcd, is_squarefree, radical};
use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::qseries::QExpansion;
use crate::scalars::rat;

/// `6 H(D)` for `D > 0`, counting reduced forms `(a, b, c)` of discriminant
/// `-D` with weight 3 for `(a,0,a)` and 2 for `(a,a,a)`.
fn hurwitz_sixths(d: u64) -> i64 {
    if d % 4 == 1 || d % 4 == 2 {
        return 0;
    }
    let d = d as i64;
    let mut total = 0;
    let mut a = 1i64;
    while 3 * a * a <= d {
        for b in (1 - a)..=a {
            let num = b * b + d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && c == a) {
                continue;
            }
            total += if a == b && b == c {
                2
            } else if b == 0 && a == c {
                3
            } else {
                6
            };
        }
        a += 1;
    }
    total
}

/// `H(D)` with `H(0) = -1/12`.
pub fn hurwitz(d: u64) -> BigRational {
    if d == 0 {
        rat(-1, 12)
    } else {
        rat(hurwitz_sixths(d), 6)
    }
}

static TABLE: RwLock<Option<Arc<Vec<BigRational>>>> = RwLock::new(None);

/// `H(0..=limit)`, memoized; a longer table replaces a shorter one.
pub fn hurwitz_table(limit: usize) -> Arc<Vec<BigRational>> {
    if let Some(t) = TABLE.read().expect("hurwitz cache").as_ref() {
        if t.len() > limit {
            return Arc::clone(t);
        }
    }
    let t = Arc::new(Exec::Parallel.map_range(0..limit as u64 + 1, hurwitz));
    let mut w = TABLE.write().expect("hurwitz cache");
    match w.as_ref() {
        Some(old) if old.len() >= t.len() => Arc::clone(old),
        _ => {
            *w = Some(Arc::clone(&t));
            t
        }
    }
}

fn check_pair(l1: u64, l2: u64) -> Result<()> {
    if l1 == 0 || l2 == 0 {
        return Err(Error::HypothesisViolation("l1 and l2 must be positive".into()));
    }
    if gcd(l1, l2) != 1 {
        return Err(Error::HypothesisViolation(format!("gcd({l1}, {l2}) != 1")));
    }
    if !is_squarefree(l2) {
        return Err(Error::HypothesisViolation(format!("{l2} is not squarefree")));
    }
    Ok(())
}

/// `M_{3/2}(Γ0(4 rad(l1) l2), χ_{4 l1 l2})`.
pub fn hurwitz_combo_meta(l1: u64, l2: u64) -> Result<FormMeta> {
    check_pair(l1, l2)?;
    FormMeta::new(
        Weight::half(1),
        4 * radical(l1) * l2,
        DirichletChar::four_delta(l1 * l2),
        false,
    )
}

/// Coefficients `H(l1 l2 n) - l2 H(l1 n / l2)`, the second term only when
/// `l2 | n`.
pub fn hurwitz_combo(l1: u64, l2: u64, limit: i64) -> Result<QExpansion> {
    check_pair(l1, l2)?;
    if limit < 0 {
        return Err(Error::InvalidArgument("limit must be nonnegative".into()));
    }
    let n_max = limit as u64;
    let table = hurwitz_table((l1 * l2 * n_max) as usize);
    let coeffs = (0..=n_max)
        .map(|n| {
            let mut c = table[(l1 * l2 * n) as usize].clone();
            if n % l2 == 0 {
                c -= &table[(l1 * n / l2) as usize] * rat(l2 as i64, 1);
            }
            c
        })
        .collect();
    QExpansion::from_rationals(0, coeffs)
}
