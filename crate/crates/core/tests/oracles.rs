//! Expansions checked against independent brute-force computations.

use etaq::forms::{gamma1, newform_coeff_closed, NewformId};
use etaq::qseries::{c_series, EtaSpec};
use etaq::scalars::{int, rat};
use etaq::verify::{eisenstein_divisor_def, growth_g_squared, EisId, GrowthId};
use etaq::QuadScalar;
use num_bigint::BigInt;

fn coeffs(spec: &str, limit: usize) -> Vec<BigInt> {
    let f = c_series(&EtaSpec::parse(spec).unwrap(), limit).unwrap();
    (0..=limit as i64)
        .map(|n| {
            let c = f.coeff(n).unwrap();
            c.as_rational().expect("rational").to_integer()
        })
        .collect()
}

fn surd(b: i64, d: i64) -> QuadScalar {
    QuadScalar::new(int(0), int(b), Some(d)).unwrap()
}

fn quad(a: i64, b: i64, d: i64) -> QuadScalar {
    QuadScalar::new(int(a), int(b), Some(d)).unwrap()
}

/// Partition numbers by the coin-change recurrence.
#[test]
fn partitions_match_counting() {
    let limit = 400;
    let mut p = vec![BigInt::from(0); limit + 1];
    p[0] = BigInt::from(1);
    for part in 1..=limit {
        for n in part..=limit {
            let add = p[n - part].clone();
            p[n] += add;
        }
    }
    assert_eq!(coeffs("1^-1", limit), p);
    assert_eq!(p[100].to_string(), "190569292");
}

/// Ramanujan's tau: tabulated values plus multiplicativity and the prime
/// square recursion.
#[test]
fn ramanujan_tau() {
    let c = coeffs("1^24", 600);
    let tau = |n: usize| c[n - 1].clone();
    let known: [(usize, i64); 8] = [
        (1, 1),
        (2, -24),
        (3, 252),
        (4, -1472),
        (5, 4830),
        (6, -6048),
        (11, 534612),
        (12, -370944),
    ];
    for (n, t) in known {
        assert_eq!(tau(n), BigInt::from(t), "tau({n})");
    }
    for (m, n) in [(2, 3), (3, 5), (7, 11), (4, 9), (5, 49)] {
        assert_eq!(tau(m * n), tau(m) * tau(n));
    }
    for p in [2usize, 3, 5, 7, 11, 13, 17, 19, 23] {
        let p11 = BigInt::from(p).pow(11);
        assert_eq!(tau(p * p), tau(p) * tau(p) - p11);
    }
}

fn r3_brute(limit: usize) -> Vec<i64> {
    let mut r = vec![0i64; limit + 1];
    let b = (limit as f64).sqrt() as i64 + 1;
    for x in -b..=b {
        for y in -b..=b {
            for z in -b..=b {
                let n = (x * x + y * y + z * z) as usize;
                if n <= limit {
                    r[n] += 1;
                }
            }
        }
    }
    r
}

#[test]
fn signed_three_squares() {
    let limit = 600;
    let r = r3_brute(limit);
    let c = coeffs("1^6 2^-3", limit);
    for n in 0..=limit {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        assert_eq!(c[n], BigInt::from(sign * r[n]), "n={n}");
    }
}

/// Four squares: `r4(n) = 8 sum_{d | n, 4 ∤ d} d`, with `theta(q)^4` written
/// as `2^20 1^-8 4^-8`.
#[test]
fn jacobi_four_squares() {
    let limit = 500;
    let c = coeffs("1^-8 2^20 4^-8", limit);
    for n in 1..=limit as i64 {
        let s: i64 = (1..=n).filter(|d| n % d == 0 && d % 4 != 0).sum();
        assert_eq!(c[n as usize], BigInt::from(8 * s), "n={n}");
    }
}

/// Euler's pentagonal number theorem.
#[test]
fn pentagonal_numbers() {
    let limit = 2000i64;
    let mut want = vec![0i64; limit as usize + 1];
    for k in -40i64..=40 {
        let e = k * (3 * k - 1) / 2;
        if (0..=limit).contains(&e) {
            want[e as usize] += if k % 2 == 0 { 1 } else { -1 };
        }
    }
    let c = coeffs("1^1", limit as usize);
    assert!(c.iter().zip(&want).all(|(a, b)| *a == BigInt::from(*b)));
}

/// On `n = 2 (mod 3)` the cusp parts of `f1` and `f2` are fixed multiples of
/// `c1(n)`, so their zeros are the zeros of `c1`.
#[test]
fn cusp_parts_on_two_mod_three() {
    let f1 = coeffs("1^-1 2^10 3^-1 4^-4", 6000);
    let f2 = coeffs("1^7 2^-2 3^-1", 6000);
    let w1 = quad(-2, 2, -2);
    let w2 = quad(-2, -2, -2);
    for n in (2..=6000u64).step_by(3) {
        let c1 = newform_coeff_closed(NewformId::G1, n as i64);
        let c2 = newform_coeff_closed(NewformId::G2, n as i64);
        let a1 = w1.try_mul(&c1).unwrap().try_add(&w2.try_mul(&c2).unwrap()).unwrap();
        let eis1 = QuadScalar::rational(eisenstein_divisor_def(EisId::E1, n));
        let got1 = QuadScalar::from_bigint(f1[n as usize].clone());
        assert_eq!(got1.try_sub(&eis1).unwrap(), a1, "f1, n={n}");
        assert_eq!(a1.is_zero(), c1.is_zero());

        let sign = if n % 2 == 0 { -1 } else { 1 };
        let a2 = surd(8 * sign, -2).try_mul(&c1).unwrap();
        let eis2 = QuadScalar::rational(eisenstein_divisor_def(EisId::E2, n));
        let got2 = QuadScalar::from_bigint(f2[n as usize].clone());
        assert_eq!(got2.try_sub(&eis2).unwrap(), a2, "f2, n={n}");
        assert_eq!(c1, surd(gamma1(n as i64), -2));
    }
}

/// `G(n)^2` from its definition as a product of prime-power factors.
#[test]
fn growth_values_by_hand() {
    // n = 4: F_2(2) = 5, divided by 3^2 * 2^2 / 1 -> G1^2 = 25 / (9 * 4)
    assert_eq!(growth_g_squared(GrowthId::G1, 4).unwrap(), rat(25, 36));
    // G2 uses 2^{nu+1} - 1 = 7 at p = 2
    assert_eq!(growth_g_squared(GrowthId::G2, 4).unwrap(), rat(49, 36));
    // n = 5 * 7: F_5(1) = 4, F_7(1) = 6
    assert_eq!(growth_g_squared(GrowthId::G1, 35).unwrap(), rat(16 * 36, 16 * 35));
}
