//! Truncated q-expansions on the 1/24-exponent grid.
//!
//! A [`QExpansion`] stores the coefficients of `q^{e/24}` for the exponents
//! `e = start24 + k * step24` below `trunc24`. Exponents off that lattice
//! carry a known zero coefficient; exponents at or beyond `trunc24` are
//! unknown and every operation propagates the smallest valid window.

pub mod cache;
pub mod int;

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalars::{int, join_fields, FieldTag, QuadScalar};

pub use int::{c_series_int, IntSeries};

/// `prod eta(delta z)^r` as sorted `(delta, r)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EtaSpec {
    factors: Vec<(u64, i64)>,
}

impl EtaSpec {
    pub fn new(mut factors: Vec<(u64, i64)>) -> Result<Self> {
        factors.sort_unstable();
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidArgument(format!("repeated base {} in eta spec", w[0].0)));
            }
        }
        if factors.is_empty() {
            return Err(Error::InvalidArgument("empty eta spec".into()));
        }
        if let Some(&(d, r)) = factors.iter().find(|&&(d, r)| d == 0 || r == 0) {
            return Err(Error::InvalidArgument(format!("bad factor {d}^{r}")));
        }
        Ok(EtaSpec { factors })
    }

    /// Parses whitespace-separated `base^exp` tokens, e.g. `"1^-1 3^3 4^2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut pos = 0;
        for tok in s.split_inclusive(char::is_whitespace) {
            let start = pos;
            pos += tok.len();
            let t = tok.trim_end();
            if t.is_empty() {
                continue;
            }
            let err = |off: usize, msg: &str| Error::Parse {
                pos: start + off,
                msg: msg.to_string(),
            };
            let (b, e) = t.split_once('^').ok_or_else(|| err(0, "expected base^exp"))?;
            let base: u64 = b
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| err(0, "base must be a positive integer"))?;
            let exp: i64 = e
                .parse()
                .ok()
                .filter(|&v| v != 0)
                .ok_or_else(|| err(b.len() + 1, "exponent must be a nonzero integer"))?;
            factors.push((base, exp));
        }
        EtaSpec::new(factors)
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    /// Twice the weight: `sum r`.
    pub fn weight2(&self) -> i64 {
        self.factors.iter().map(|&(_, r)| r).sum()
    }

    /// Leading exponent in 1/24 units: `sum delta * r`.
    pub fn offset24(&self) -> i64 {
        self.factors.iter().map(|&(d, r)| d as i64 * r).sum()
    }

    /// The spec of `f(l z)`.
    pub fn rescale(&self, l: u64) -> EtaSpec {
        EtaSpec {
            factors: self.factors.iter().map(|&(d, r)| (d * l, r)).collect(),
        }
    }

    pub fn lcm_of_bases(&self) -> u64 {
        self.factors.iter().fold(1, |a, &(d, _)| a.lcm(&d))
    }
}

impl fmt::Display for EtaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|(d, r)| format!("{d}^{r}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl std::str::FromStr for EtaSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        EtaSpec::parse(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QExpansion {
    field: FieldTag,
    start24: i64,
    step24: i64,
    trunc24: i64,
    coeffs: Vec<QuadScalar>,
}

fn grid_len(start24: i64, step24: i64, trunc24: i64) -> usize {
    ((trunc24 - start24 + step24 - 1) / step24) as usize
}

impl QExpansion {
    /// Builds an expansion from grid coefficients; `coeffs` may be shorter
    /// than the window, in which case the tail is zero.
    pub fn new(start24: i64, step24: i64, trunc24: i64, mut coeffs: Vec<QuadScalar>) -> Result<Self> {
        if step24 <= 0 {
            return Err(Error::InvalidArgument("grid step must be positive".into()));
        }
        if start24 >= trunc24 {
            return Err(Error::EmptyWindow);
        }
        let len = grid_len(start24, step24, trunc24);
        if coeffs.len() > len {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients exceed window of {len}",
                coeffs.len()
            )));
        }
        coeffs.resize(len, QuadScalar::zero());
        let mut field = None;
        for c in &coeffs {
            field = join_fields(field, c.field())?;
        }
        Ok(QExpansion {
            field,
            start24,
            step24,
            trunc24,
            coeffs,
        })
    }

    /// Integer-grid series `sum_{k} coeffs[k] q^{start + k}` known through
    /// `q^{start + coeffs.len() - 1}`.
    pub fn from_integer_coeffs(start: i64, coeffs: Vec<QuadScalar>) -> Result<Self> {
        let n = coeffs.len() as i64;
        Self::new(24 * start, 24, 24 * (start + n), coeffs)
    }

    pub fn from_rationals(start: i64, coeffs: Vec<BigRational>) -> Result<Self> {
        Self::from_integer_coeffs(start, coeffs.into_iter().map(QuadScalar::rational).collect())
    }

    pub fn from_ints(start: i64, coeffs: &[i64]) -> Self {
        Self::from_integer_coeffs(start, coeffs.iter().map(|&c| QuadScalar::from_int(c)).collect())
            .expect("valid window")
    }

    /// The zero series known below `q^{trunc24/24}`.
    pub fn zero(trunc24: i64) -> Result<Self> {
        Self::new(0, 24, trunc24, Vec::new())
    }

    /// `c * q^{e24/24}`, known below `trunc24`.
    pub fn monomial(c: QuadScalar, e24: i64, trunc24: i64) -> Result<Self> {
        Self::new(e24, 24, trunc24, vec![c])
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn start24(&self) -> i64 {
        self.start24
    }

    pub fn step24(&self) -> i64 {
        self.step24
    }

    pub fn trunc24(&self) -> i64 {
        self.trunc24
    }

    pub fn coeffs(&self) -> &[QuadScalar] {
        &self.coeffs
    }

    /// Largest integer `n` with `q^n` inside the window.
    pub fn limit(&self) -> i64 {
        (self.trunc24 - 1).div_euclid(24)
    }

    /// Coefficient of `q^{e24/24}`; `None` when it lies beyond the window.
    pub fn coeff_at24(&self, e24: i64) -> Option<QuadScalar> {
        if e24 >= self.trunc24 {
            return None;
        }
        if e24 < self.start24 || (e24 - self.start24) % self.step24 != 0 {
            return Some(QuadScalar::zero());
        }
        Some(self.coeffs[((e24 - self.start24) / self.step24) as usize].clone())
    }

    pub fn coeff_ref_at24(&self, e24: i64) -> Option<&QuadScalar> {
        if e24 < self.start24 || e24 >= self.trunc24 || (e24 - self.start24) % self.step24 != 0 {
            return None;
        }
        Some(&self.coeffs[((e24 - self.start24) / self.step24) as usize])
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> Option<QuadScalar> {
        self.coeff_at24(24 * n)
    }

    /// Nonzero terms as `(e24, coefficient)`, increasing.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &QuadScalar)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.start24 + k as i64 * self.step24, c))
    }

    pub fn is_integer_grid(&self) -> bool {
        self.terms().all(|(e, _)| e % 24 == 0)
    }

    /// True when every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QuadScalar::is_zero)
    }

    /// Coefficients of `q^0 .. q^limit` for integer-grid expansions.
    pub fn integer_coeffs(&self) -> Result<Vec<QuadScalar>> {
        if !self.is_integer_grid() {
            return Err(Error::FractionalGrid);
        }
        Ok((0..=self.limit())
            .map(|n| self.coeff(n).expect("inside window"))
            .collect())
    }

    /// Restricts the window to exponents below `trunc24`.
    pub fn truncate(&self, trunc24: i64) -> Result<Self> {
        if trunc24 >= self.trunc24 {
            return Ok(self.clone());
        }
        if trunc24 <= self.start24 {
            return Err(Error::EmptyWindow);
        }
        let len = grid_len(self.start24, self.step24, trunc24);
        let mut out = self.clone();
        out.coeffs.truncate(len);
        out.trunc24 = trunc24;
        Ok(out)
    }

    /// Re-expresses the series on a finer or shifted lattice.
    fn regrid(&self, start24: i64, step24: i64, trunc24: i64) -> Vec<QuadScalar> {
        let mut out = vec![QuadScalar::zero(); grid_len(start24, step24, trunc24)];
        for (e, c) in self.terms() {
            if e < trunc24 {
                debug_assert!(e >= start24 && (e - start24) % step24 == 0);
                out[((e - start24) / step24) as usize] = c.clone();
            }
        }
        out
    }

    fn from_parts(field: FieldTag, start24: i64, step24: i64, trunc24: i64, coeffs: Vec<QuadScalar>) -> Self {
        debug_assert_eq!(coeffs.len(), grid_len(start24, step24, trunc24));
        QExpansion {
            field,
            start24,
            step24,
            trunc24,
            coeffs,
        }
    }

    /// Applies `f` to every stored coefficient, keeping the window.
    pub fn map_coeffs(&self, f: impl Fn(i64, &QuadScalar) -> Result<QuadScalar>) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| f(self.start24 + k as i64 * self.step24, c))
            .collect::<Result<Vec<_>>>()?;
        QExpansion::new(self.start24, self.step24, self.trunc24, coeffs)
    }
}

fn common_lattice(f: &QExpansion, g: &QExpansion) -> (i64, i64) {
    let start = f.start24.min(g.start24);
    let step = f.step24.gcd(&g.step24).gcd(&(f.start24 - g.start24).abs());
    (start, step)
}

/// Termwise sum; the window is the smaller of the two.
pub fn qx_add(f: &QExpansion, g: &QExpansion) -> Result<QExpansion> {
    combine(f, g, QuadScalar::try_add)
}

pub fn qx_sub(f: &QExpansion, g: &QExpansion) -> Result<QExpansion> {
    combine(f, g, QuadScalar::try_sub)
}

fn combine(
    f: &QExpansion,
    g: &QExpansion,
    op: impl Fn(&QuadScalar, &QuadScalar) -> Result<QuadScalar>,
) -> Result<QExpansion> {
    let field = join_fields(f.field, g.field)?;
    let trunc = f.trunc24.min(g.trunc24);
    let (start, step) = common_lattice(f, g);
    if start >= trunc {
        return Err(Error::EmptyWindow);
    }
    let a = f.regrid(start, step, trunc);
    let b = g.regrid(start, step, trunc);
    let coeffs = a.iter().zip(&b).map(|(x, y)| op(x, y)).collect::<Result<Vec<_>>>()?;
    Ok(QExpansion::from_parts(field, start, step, trunc, coeffs))
}

/// `sum c_i f_i` over a nonempty list.
pub fn qx_linear(terms: &[(QuadScalar, &QExpansion)]) -> Result<QExpansion> {
    let mut it = terms.iter();
    let (c0, f0) = it
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))?;
    let mut acc = qx_scale(f0, c0)?;
    for (c, f) in it {
        acc = qx_add(&acc, &qx_scale(f, c)?)?;
    }
    Ok(acc)
}

pub fn qx_scale(f: &QExpansion, c: &QuadScalar) -> Result<QExpansion> {
    let field = join_fields(f.field, c.field())?;
    let coeffs = f.coeffs.iter().map(|x| x.try_mul(c)).collect::<Result<Vec<_>>>()?;
    Ok(QExpansion::from_parts(field, f.start24, f.step24, f.trunc24, coeffs))
}

pub fn qx_neg(f: &QExpansion) -> QExpansion {
    let coeffs = f.coeffs.iter().map(QuadScalar::neg).collect();
    QExpansion::from_parts(f.field, f.start24, f.step24, f.trunc24, coeffs)
}

/// Cauchy product. Only nonzero terms are visited, so sparse factors such as
/// theta series cost `O(nnz(f) * nnz(g))`.
pub fn qx_mul(f: &QExpansion, g: &QExpansion) -> Result<QExpansion> {
    let field = join_fields(f.field, g.field)?;
    let start = f.start24 + g.start24;
    let step = f.step24.gcd(&g.step24);
    let trunc = (f.start24 + g.trunc24).min(g.start24 + f.trunc24);
    if start >= trunc {
        return Err(Error::EmptyWindow);
    }
    let mut out = vec![QuadScalar::zero(); grid_len(start, step, trunc)];
    let gt: Vec<(i64, &QuadScalar)> = g.terms().collect();
    for (ef, cf) in f.terms() {
        for &(eg, cg) in &gt {
            let e = ef + eg;
            if e >= trunc {
                break;
            }
            out[((e - start) / step) as usize].add_product(cf, cg)?;
        }
    }
    Ok(QExpansion::from_parts(field, start, step, trunc, out))
}

/// Multiplicative inverse. With `f = q^s (f_0 + ...)` known on a relative
/// window of length `L`, the inverse is `q^{-s} (...)` known on the same
/// relative window. Zero terms of `f` are skipped in the recurrence.
pub fn qx_invert(f: &QExpansion) -> Result<QExpansion> {
    let lead = &f.coeffs[0];
    if lead.is_zero() {
        return Err(Error::NonInvertibleLeadingTerm);
    }
    let inv0 = lead.try_inv()?;
    let neg_inv0 = inv0.neg();
    let len = f.coeffs.len();
    let sparse: Vec<(usize, &QuadScalar)> = f
        .coeffs
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let mut g: Vec<QuadScalar> = Vec::with_capacity(len);
    g.push(inv0);
    for k in 1..len {
        let mut acc = QuadScalar::zero();
        for &(j, fj) in &sparse {
            if j > k {
                break;
            }
            acc.add_product(fj, &g[k - j])?;
        }
        g.push(acc.try_mul(&neg_inv0)?);
    }
    let start = -f.start24;
    let trunc = f.trunc24 - 2 * f.start24;
    Ok(QExpansion::from_parts(f.field, start, f.step24, trunc, g))
}

/// `f^e`; negative exponents invert first.
pub fn qx_pow(f: &QExpansion, e: i64) -> Result<QExpansion> {
    if e < 0 {
        return qx_pow(&qx_invert(f)?, -e);
    }
    let rel = f.trunc24 - f.start24;
    let mut result = QExpansion::monomial(QuadScalar::one(), 0, rel)?;
    let mut base = f.clone();
    let mut k = e;
    while k > 0 {
        if k & 1 == 1 {
            result = qx_mul(&result, &base)?;
        }
        k >>= 1;
        if k > 0 {
            base = qx_mul(&base, &base)?;
        }
    }
    Ok(result)
}

/// The normalized derivative `(1/2 pi i) d/dz`: `c q^{e/24} -> (e/24) c q^{e/24}`.
pub fn qx_theta_derivative(f: &QExpansion) -> QExpansion {
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let e = f.start24 + k as i64 * f.step24;
            c.scale(&(int(e) / int(24)))
        })
        .collect();
    QExpansion::from_parts(f.field, f.start24, f.step24, f.trunc24, coeffs)
}

/// `(q^j; q^j)_inf` known below `q^{trunc24/24}`.
pub fn pochhammer(j: u64, trunc24: i64) -> Result<QExpansion> {
    if trunc24 <= 0 || trunc24 % 24 != 0 {
        return Err(Error::InvalidArgument(
            "pochhammer window must be a positive multiple of 24".into(),
        ));
    }
    let len = (trunc24 / 24) as usize;
    let mut coeffs = vec![QuadScalar::zero(); len];
    for (e, c) in int::pentagonal(j as usize, len) {
        coeffs[e] = QuadScalar::from_int(c);
    }
    QExpansion::from_integer_coeffs(0, coeffs)
}

pub(crate) fn int_series_to_qx(s: &IntSeries, start: i64) -> QExpansion {
    let coeffs = (0..s.len()).map(|n| QuadScalar::from_bigint(s.get(n))).collect();
    QExpansion::from_integer_coeffs(start, coeffs).expect("nonempty window")
}

/// `prod (q^delta; q^delta)^r = sum C(n) q^n` through `q^limit`, without the
/// eta prefactor.
pub fn c_series(spec: &EtaSpec, limit: usize) -> Result<QExpansion> {
    let s = c_series_int(spec, limit, true);
    Ok(int_series_to_qx(&s, 0))
}

/// Exact equality of two expansions on their common window, comparing
/// every exponent of the joint lattice.
pub fn qx_agree(f: &QExpansion, g: &QExpansion) -> Result<bool> {
    Ok(qx_sub(f, g)?.is_zero())
}

impl Zero for QExpansion {
    fn zero() -> Self {
        QExpansion::zero(24).expect("nonempty window")
    }
    fn is_zero(&self) -> bool {
        QExpansion::is_zero(self)
    }
}

impl std::ops::Add for QExpansion {
    type Output = QExpansion;
    fn add(self, rhs: Self) -> Self {
        qx_add(&self, &rhs).expect("compatible fields")
    }
}
