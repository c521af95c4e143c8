//! Integer C-series engine. Products of Pochhammer symbols are built by
//! sparse multiplication (pentagonal or Jacobi-cube support) and sparse
//! in-place division, first in checked `i128` and, on overflow, again in
//! `BigInt`.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::EtaSpec;

/// Sparse factor: `(exponent, coefficient)` pairs with leading `(0, 1)`.
pub type Sparse = Vec<(usize, i64)>;

/// `(q^j; q^j)_inf` truncated below `len`, by the pentagonal number theorem.
pub fn pentagonal(j: usize, len: usize) -> Sparse {
    let mut out = vec![(0usize, 1i64)];
    let mut k = 1usize;
    loop {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        let a = j * k * (3 * k - 1) / 2;
        if a >= len {
            break;
        }
        out.push((a, sign));
        let b = j * k * (3 * k + 1) / 2;
        if b < len {
            out.push((b, sign));
        }
        k += 1;
    }
    out.sort_unstable();
    out
}

/// `(q^j; q^j)_inf^3 = sum (-1)^k (2k+1) q^{j k(k+1)/2}`, truncated below `len`.
pub fn jacobi_cube(j: usize, len: usize) -> Sparse {
    let mut out = Vec::new();
    let mut k = 0usize;
    loop {
        let e = j * k * (k + 1) / 2;
        if e >= len {
            break;
        }
        let c = (2 * k + 1) as i64;
        out.push((e, if k.is_multiple_of(2) { c } else { -c }));
        k += 1;
    }
    out
}

pub(crate) trait Coeff: Clone + Send + Sync + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    /// `self + c * x`, or `None` on overflow.
    fn add_scaled(&self, x: &Self, c: i64) -> Option<Self>;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add_scaled(&self, x: &Self, c: i64) -> Option<Self> {
        x.checked_mul(i128::from(c)).and_then(|p| self.checked_add(p))
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn add_scaled(&self, x: &Self, c: i64) -> Option<Self> {
        Some(self + x * c)
    }
}

fn mul_sparse<T: Coeff>(f: &[T], s: &Sparse, parallel: bool) -> Option<Vec<T>> {
    let at = |n: usize| -> Option<T> {
        let mut acc = T::zero();
        for &(e, c) in s {
            if e > n {
                break;
            }
            acc = acc.add_scaled(&f[n - e], c)?;
        }
        Some(acc)
    };
    #[cfg(feature = "parallel")]
    if parallel && f.len() >= 4096 {
        use rayon::prelude::*;
        return (0..f.len()).into_par_iter().map(at).collect();
    }
    let _ = parallel;
    (0..f.len()).map(at).collect()
}

/// In-place `f / s` for a sparse `s` with `s[0] = (0, 1)`.
fn div_sparse<T: Coeff>(f: &mut [T], s: &Sparse) -> Option<()> {
    debug_assert_eq!(s.first(), Some(&(0, 1)));
    for n in 1..f.len() {
        let mut acc = f[n].clone();
        for &(e, c) in &s[1..] {
            if e > n {
                break;
            }
            acc = acc.add_scaled(&f[n - e], -c)?;
        }
        f[n] = acc;
    }
    Some(())
}

/// Factor schedule for one `(delta, r)`: Jacobi cubes first, then single
/// pentagonal factors.
fn factors(delta: usize, r: i64, len: usize) -> Vec<Sparse> {
    let a = r.unsigned_abs() as usize;
    let mut out = Vec::new();
    if a >= 3 {
        let cube = jacobi_cube(delta, len);
        out.extend(std::iter::repeat_n(cube, a / 3));
    }
    if !a.is_multiple_of(3) {
        let p = pentagonal(delta, len);
        out.extend(std::iter::repeat_n(p, a % 3));
    }
    out
}

fn build<T: Coeff>(spec: &EtaSpec, len: usize, parallel: bool) -> Option<Vec<T>> {
    let mut f = vec![T::zero(); len];
    f[0] = T::one();
    for &(delta, r) in spec.factors().iter().filter(|(_, r)| *r > 0) {
        for s in factors(delta as usize, r, len) {
            f = mul_sparse(&f, &s, parallel)?;
        }
    }
    for &(delta, r) in spec.factors().iter().filter(|(_, r)| *r < 0) {
        for s in factors(delta as usize, r, len) {
            div_sparse(&mut f, &s)?;
        }
    }
    Some(f)
}

/// Integer coefficients `C(0..len)` of `prod (q^delta; q^delta)^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntSeries {
    Small(Vec<i128>),
    Big(Vec<BigInt>),
}

impl IntSeries {
    pub fn len(&self) -> usize {
        match self {
            IntSeries::Small(v) => v.len(),
            IntSeries::Big(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_zero_at(&self, n: usize) -> bool {
        match self {
            IntSeries::Small(v) => v[n] == 0,
            IntSeries::Big(v) => v[n].is_zero(),
        }
    }

    pub fn is_positive_at(&self, n: usize) -> bool {
        match self {
            IntSeries::Small(v) => v[n] > 0,
            IntSeries::Big(v) => v[n].sign() == num_bigint::Sign::Plus,
        }
    }

    pub fn get(&self, n: usize) -> BigInt {
        match self {
            IntSeries::Small(v) => BigInt::from(v[n]),
            IntSeries::Big(v) => v[n].clone(),
        }
    }

    pub fn get_i64(&self, n: usize) -> Option<i64> {
        match self {
            IntSeries::Small(v) => i64::try_from(v[n]).ok(),
            IntSeries::Big(v) => v[n].to_i64(),
        }
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        (0..self.len()).map(|n| self.get(n)).collect()
    }
}

/// Coefficients `C(0..=limit)`. `parallel` enables data-parallel sparse
/// multiplication; divisions are inherently sequential.
pub fn c_series_int(spec: &EtaSpec, limit: usize, parallel: bool) -> IntSeries {
    let len = limit + 1;
    match build::<i128>(spec, len, parallel) {
        Some(v) => IntSeries::Small(v),
        None => IntSeries::Big(build::<BigInt>(spec, len, parallel).expect("BigInt arithmetic cannot overflow")),
    }
}
