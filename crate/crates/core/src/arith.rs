//! Small-integer arithmetic: factorization, divisors, radicals and squarefree
//! kernels. Trial division runs over a sieved prime list that is grown on
//! demand and published atomically, so concurrent readers never block on
//! each other once the list is large enough.

use std::sync::{Arc, RwLock};

static PRIMES: RwLock<Option<(u64, Arc<Vec<u64>>)>> = RwLock::new(None);

fn sieve_primes(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Every prime `<= bound` (the list may extend further). The table is
/// sieved to at least 10^6 on first use.
pub fn primes_up_to(bound: u64) -> Arc<Vec<u64>> {
    if let Some((b, p)) = PRIMES.read().unwrap().as_ref() {
        if *b >= bound {
            return Arc::clone(p);
        }
    }
    let mut guard = PRIMES.write().unwrap();
    if let Some((b, p)) = guard.as_ref() {
        if *b >= bound {
            return Arc::clone(p);
        }
    }
    let target = bound.max(1_000_000);
    let fresh = Arc::new(sieve_primes(target));
    *guard = Some((target, Arc::clone(&fresh)));
    fresh
}

/// Prime factorization `[(p, e)]` with `p` increasing. `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize(0)");
    let mut out = Vec::new();
    if n == 1 {
        return out;
    }
    let root = isqrt(n);
    let primes = primes_up_to(root.max(2));
    for &p in primes.iter() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// `Some(r)` with `r*r == n`, else `None`.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && matches!(factorize(n).as_slice(), [(_, 1)])
}

/// Exponent of `p` in `n` (n > 0).
pub fn ord_p(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// Number of divisors d(n).
pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| u64::from(e) + 1).product()
}

/// All positive divisors of n, increasing.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product()
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Product of the primes dividing `n` to an odd power.
pub fn squarefree_kernel(n: u64) -> u64 {
    factorize(n)
        .iter()
        .filter(|&&(_, e)| e % 2 == 1)
        .map(|&(p, _)| p)
        .product()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

/// Signed squarefree check used for quadratic field tags.
pub fn is_squarefree_i64(d: i64) -> bool {
    d != 0 && is_squarefree(d.unsigned_abs())
}
