//! The identity registry and the Sturm-bound comparator.

use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;

use super::eis::{eisenstein_combination, EisId};
use super::recipe::{LatticeOracle, Recipe};
use super::{sturm_bound, Status};
use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::forms::{AuxTheta, FormMeta, NewformId, Weight};
use crate::par::Exec;
use crate::qseries::qx_sub;
use crate::scalars::{rat, QuadScalar};

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRecord {
    pub id: &'static str,
    pub lhs: Recipe,
    pub rhs: Recipe,
    /// The common space of both sides; the Sturm bound is read from here.
    pub meta: FormMeta,
    pub extra_check_limit: i64,
}

impl IdentityRecord {
    fn new(id: &'static str, meta: FormMeta, lhs: Recipe, rhs: Recipe) -> Self {
        IdentityRecord {
            id,
            lhs,
            rhs,
            meta,
            extra_check_limit: 2000,
        }
    }

    pub fn bound(&self) -> u64 {
        sturm_bound(self.meta.weight, self.meta.level)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    /// Exponent of `q`, a fraction when the series live on a finer grid.
    pub n: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub status: Status,
    pub space: String,
    pub bound: u64,
    /// Coefficients were compared for every exponent `<= compared_through`.
    pub compared_through: i64,
    pub checked: u64,
    pub mismatch_count: u64,
    /// The first few mismatches in increasing order of `n`.
    pub mismatches: Vec<Mismatch>,
    pub lhs: String,
    pub rhs: String,
    pub elapsed_ms: u64,
}

const REPORTED_MISMATCHES: usize = 20;

fn exponent_text(e24: i64) -> String {
    let r = rat(e24, 24);
    r.to_string()
}

/// Compares both sides for every exponent up to `max(limit, Sturm bound)`.
pub fn verify_identity(rec: &IdentityRecord, limit: i64, exec: Exec) -> Result<VerificationReport> {
    let start = Instant::now();
    let bound = rec.bound();
    let upto = limit.max(bound as i64).max(1);
    let (l, r) = exec.join(|| rec.lhs.eval(upto, exec), || rec.rhs.eval(upto, exec));
    let (l, r) = (l?, r?);
    if l.limit() < upto || r.limit() < upto {
        return Err(Error::RecipeEvaluation(format!(
            "{}: a side is known only through q^{}",
            rec.id,
            l.limit().min(r.limit())
        )));
    }
    let trunc = 24 * upto + 1;
    let (l, r) = (l.truncate(trunc)?, r.truncate(trunc)?);
    let diff = qx_sub(&l, &r)?;
    let mut mismatches = Vec::new();
    let mut mismatch_count = 0;
    for (e24, c) in diff.terms() {
        if c.is_zero() {
            continue;
        }
        mismatch_count += 1;
        if mismatches.len() < REPORTED_MISMATCHES {
            let side = |f: &crate::qseries::QExpansion| f.coeff_at24(e24).unwrap_or_else(QuadScalar::zero).to_string();
            mismatches.push(Mismatch {
                n: exponent_text(e24),
                lhs: side(&l),
                rhs: side(&r),
            });
        }
    }
    Ok(VerificationReport {
        id: rec.id.into(),
        status: Status::from_ok(mismatch_count == 0),
        space: rec.meta.to_string(),
        bound,
        compared_through: upto,
        checked: upto as u64 + 1,
        mismatch_count,
        mismatches,
        lhs: rec.lhs.to_string(),
        rhs: rec.rhs.to_string(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn q(a: BigRational) -> QuadScalar {
    QuadScalar::rational(a)
}

/// `a + b sqrt(d)`.
fn qs(a: BigRational, b: BigRational, d: i64) -> QuadScalar {
    QuadScalar::new(a, b, Some(d)).expect("valid field")
}

fn lin(terms: Vec<(QuadScalar, Recipe)>) -> Recipe {
    Recipe::Lin(terms)
}

use DirichletChar::{Kronecker as K, Trivial};
use NewformId::*;

fn nf(id: NewformId) -> Recipe {
    Recipe::Newform(id)
}

fn aux(t: AuxTheta) -> Recipe {
    Recipe::Aux(t)
}

fn big_theta() -> Recipe {
    Recipe::Theta { chi: Trivial, j: 0 }
}

fn m(k: i64, n: u64, chi: DirichletChar) -> FormMeta {
    FormMeta::m(Weight::integral(k), n, chi)
}

fn mh(k: i64, n: u64, chi: DirichletChar) -> FormMeta {
    FormMeta::m(Weight::half(k), n, chi)
}

fn l42_rhs(g3_sign: i64) -> Recipe {
    lin(vec![
        (qs(rat(0, 1), rat(-1, 2), -2), nf(G1).op("S:12:2")),
        (qs(rat(0, 1), rat(1, 2), -2), nf(G1).op("S:12:8")),
        (qs(rat(0, 1), rat(-g3_sign, 6), -2), nf(G3).op("S:6:5")),
    ])
}

fn f1_rhs(conj: i64) -> Recipe {
    lin(vec![
        (q(rat(1, 1)), Recipe::EisDefinition(EisId::E1)),
        (qs(rat(-2, 1), rat(2 * conj, 1), -2), nf(G1)),
        (qs(rat(-2, 1), rat(-2 * conj, 1), -2), nf(G2)),
    ])
}

fn hurwitz_u2() -> Recipe {
    Recipe::Hurwitz { l1: 1, l2: 2 }.op("U:2")
}

/// Every identity certified by the tool.
pub fn registry() -> Vec<IdentityRecord> {
    let s36 = m(2, 36, K(12));
    let s144 = m(2, 144, K(12));
    let m3_36 = m(3, 36, K(-4));
    let half = |x: i64| q(rat(x, 2));
    let quarter = |x: i64| q(rat(x, 4));
    let w_half = Weight::half(0);
    let mut v = vec![
        IdentityRecord::new(
            "INTRO-THETA",
            mh(0, 4, Trivial),
            big_theta(),
            Recipe::eta("1^-2 2^5 4^-2"),
        ),
        IdentityRecord::new(
            "S36-SIEVE-0",
            s36,
            nf(G1).op("S:3:0"),
            lin(vec![(QuadScalar::zero(), nf(G1))]),
        ),
        IdentityRecord::new(
            "S36-SIEVE-1",
            s36,
            nf(G1).op("S:3:1"),
            lin(vec![(half(1), nf(G1)), (half(1), nf(G2))]),
        ),
        IdentityRecord::new(
            "S36-SIEVE-2",
            s36,
            nf(G1).op("S:3:2"),
            lin(vec![(half(1), nf(G1)), (half(-1), nf(G2))]),
        ),
        IdentityRecord::new("S36-THETA-G1", s36, nf(G1), Recipe::NewformClosed(G1)),
        IdentityRecord::new("S36-THETA-G2", s36, nf(G2), Recipe::NewformClosed(G2)),
        IdentityRecord::new("L52-A", s144, Recipe::eta("3^-1 9^3 12^2"), l42_rhs(1)),
        IdentityRecord::new("L52-G3", s144, nf(G3), Recipe::NewformClosed(G3)),
        IdentityRecord::new(
            "L52-B",
            m3_36,
            Recipe::eta("3^4 6^-2 12^4"),
            lin(vec![(half(-1), nf(G4).op("S:3:2"))]),
        ),
        IdentityRecord::new("L52-G4", m3_36, nf(G4), Recipe::NewformClosed(G4)),
        IdentityRecord::new(
            "L52-G4-S0",
            m3_36,
            nf(G4).op("S:3:0"),
            lin(vec![(QuadScalar::zero(), nf(G4))]),
        ),
        IdentityRecord::new(
            "L52-G4-S1",
            m3_36,
            nf(G4).op("S:3:1"),
            lin(vec![(half(1), aux(AuxTheta::T2)), (half(-1), aux(AuxTheta::T3))]),
        ),
        IdentityRecord::new(
            "L52-G4-S2",
            m3_36,
            nf(G4).op("S:3:2"),
            lin(vec![(quarter(-1), aux(AuxTheta::T1))]),
        ),
        IdentityRecord::new(
            "L52-RC",
            m3_36,
            lin(vec![
                (q(rat(1, 1)), aux(AuxTheta::T3)),
                (q(rat(-1, 1)), aux(AuxTheta::T2)),
            ]),
            lin(vec![(
                q(rat(2, 1)),
                Recipe::Bracket {
                    f: Box::new(big_theta()),
                    k1: w_half,
                    g: Box::new(big_theta().op("V:9")),
                    k2: w_half,
                    ell: 1,
                },
            )]),
        ),
        IdentityRecord::new(
            "L52-THETA1",
            m3_36,
            aux(AuxTheta::T1),
            lin(vec![(q(rat(2, 1)), Recipe::Theta { chi: K(-3), j: 1 }.pow(2))]),
        ),
        IdentityRecord::new(
            "L95-A",
            m(1, 256, K(-4)),
            Recipe::eta("8^1 16^-2 32^3"),
            Recipe::Lattice(LatticeOracle::SignedR12Progression),
        ),
        IdentityRecord::new(
            "L95-B",
            m(2, 256, Trivial),
            Recipe::eta("8^1 16^2 32^1"),
            lin(vec![(qs(rat(0, 1), rat(1, 4), 2), nf(G5).op("S:8:3"))]),
        ),
        IdentityRecord::new(
            "L95-C",
            m(2, 64, K(8)),
            Recipe::eta("8^3 16^-1 32^2"),
            lin(vec![(qs(rat(0, 1), rat(-1, 2), -1), nf(G6).op("S:8:3"))]),
        ),
        IdentityRecord::new(
            "L95-D",
            m(3, 128, K(-8)),
            Recipe::eta("8^3 16^3"),
            lin(vec![(qs(rat(0, 1), rat(1, 8), 2), nf(G7).op("S:8:3"))]),
        ),
        IdentityRecord::new(
            "L95-E",
            m(3, 64, K(-8)),
            Recipe::eta("8^7 16^-3 32^2"),
            lin(vec![(half(1), nf(G8).op("S:8:3"))]),
        ),
    ];
    for id in [G5, G6, G7, G8] {
        let name = match id {
            G5 => "L95-G5",
            G6 => "L95-G6",
            G7 => "L95-G7",
            _ => "L95-G8",
        };
        v.push(IdentityRecord::new(name, id.meta(), nf(id), Recipe::NewformClosed(id)));
    }
    let s72 = m(2, 72, K(12));
    v.extend([
        IdentityRecord::new(
            "E1-DECOMP",
            s36,
            eisenstein_combination(EisId::E1),
            Recipe::EisDefinition(EisId::E1),
        ),
        IdentityRecord::new(
            "E1-CLOSED",
            s36,
            Recipe::EisClosed(EisId::E1),
            Recipe::EisDefinition(EisId::E1),
        ),
        IdentityRecord::new("L65-A", s36, Recipe::eta("1^-1 2^10 3^-1 4^-4"), f1_rhs(1)),
        IdentityRecord::new(
            "E2-DECOMP",
            s72,
            eisenstein_combination(EisId::E2),
            Recipe::EisDefinition(EisId::E2),
        ),
        IdentityRecord::new(
            "E2-CLOSED",
            s72,
            Recipe::EisClosed(EisId::E2),
            Recipe::EisDefinition(EisId::E2),
        ),
        IdentityRecord::new(
            "L65-B",
            s72,
            Recipe::eta("1^7 2^-2 3^-1"),
            lin(vec![
                (q(rat(1, 1)), Recipe::EisDefinition(EisId::E2)),
                (qs(rat(-4, 1), rat(4, 1), -2), nf(G1)),
                (qs(rat(-4, 1), rat(-4, 1), -2), nf(G2)),
                (qs(rat(8, 1), rat(-8, 1), -2), nf(G1).op("S:2:0")),
                (qs(rat(8, 1), rat(8, 1), -2), nf(G2).op("S:2:0")),
            ]),
        ),
        IdentityRecord::new(
            "L133-A",
            mh(1, 16, Trivial),
            Recipe::eta("1^2 2^3 4^-2"),
            lin(vec![
                (q(rat(12, 1)), hurwitz_u2().op("S:4:0")),
                (q(rat(-4, 1)), hurwitz_u2().op("S:4:1")),
                (q(rat(-4, 1)), hurwitz_u2().op("S:4:2")),
                (q(rat(12, 1)), hurwitz_u2().op("S:4:3")),
            ]),
        ),
        IdentityRecord::new(
            "L133-THETA3",
            mh(1, 8, Trivial),
            big_theta().pow(3),
            lin(vec![(q(rat(12, 1)), hurwitz_u2())]),
        ),
        IdentityRecord::new(
            "L133-B",
            mh(1, 16, Trivial),
            Recipe::eta("1^6 2^-3"),
            Recipe::Lattice(LatticeOracle::SignedR3),
        ),
    ]);
    v
}

/// Deliberately corrupted identities; every one must FAIL.
pub fn negative_controls() -> Vec<IdentityRecord> {
    vec![
        IdentityRecord::new(
            "NC-F1-CONJUGATES",
            m(2, 36, K(12)),
            Recipe::eta("1^-1 2^10 3^-1 4^-4"),
            f1_rhs(-1),
        ),
        IdentityRecord::new(
            "NC-R3-UNSIGNED",
            mh(1, 16, Trivial),
            Recipe::eta("1^6 2^-3"),
            Recipe::Lattice(LatticeOracle::R3),
        ),
        IdentityRecord::new(
            "NC-L52-A-SIGN",
            m(2, 144, K(12)),
            Recipe::eta("3^-1 9^3 12^2"),
            l42_rhs(-1),
        ),
    ]
}

pub fn find_identity(id: &str) -> Result<IdentityRecord> {
    registry()
        .into_iter()
        .chain(negative_controls())
        .find(|r| r.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| Error::UnknownId(id.into()))
}
