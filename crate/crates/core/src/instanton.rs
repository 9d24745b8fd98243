//! `r_0` values of oriented Brieskorn spheres and linear-independence
//! certificates in the rational homology cobordism group.
//!
//! Only two rules are used: a sphere bounding a negative definite plumbing has
//! `r_s = ∞`, and `r_s(-Σ(a1,a2,a3)) = 1/(4 a1 a2 a3)` when `R(Σ) > 0`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seifert::{rational_string, BrieskornTriple, Orientation, SeifertSummary};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ExtendedRational {
    Finite(BigRational),
    Infinity,
}

impl ExtendedRational {
    pub fn finite(n: i64, d: i64) -> Self {
        ExtendedRational::Finite(BigRational::new(n.into(), d.into()))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtendedRational::Finite(q) => Some(q),
            ExtendedRational::Infinity => None,
        }
    }
}

impl Ord for ExtendedRational {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedRational::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinity) => Ordering::Less,
            (Infinity, Finite(_)) => Ordering::Greater,
            (Infinity, Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtendedRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&BigRational> for &ExtendedRational {
    type Output = ExtendedRational;
    fn add(self, rhs: &BigRational) -> ExtendedRational {
        match self {
            ExtendedRational::Finite(q) => ExtendedRational::Finite(q + rhs),
            ExtendedRational::Infinity => ExtendedRational::Infinity,
        }
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(q) => f.write_str(&rational_string(q)),
            ExtendedRational::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(ExtendedRational::Infinity);
        }
        let bad = || Error::InvalidBound(format!("cannot parse rational {s:?}"));
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        Ok(ExtendedRational::Finite(BigRational::new(n, d)))
    }
}

impl From<ExtendedRational> for String {
    fn from(e: ExtendedRational) -> String {
        e.to_string()
    }
}

impl TryFrom<String> for ExtendedRational {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// `r_0` of an oriented sphere.
pub fn r_zero(t: &BrieskornTriple) -> Result<ExtendedRational> {
    match t.orientation() {
        Orientation::Positive => Ok(ExtendedRational::Infinity),
        Orientation::Negative => {
            let r = SeifertSummary::of(&t.unoriented())?.r_invariant();
            r_zero_negative(t, r)
        }
    }
}

/// The negative-side formula given a known Fintushel-Stern invariant.
pub fn r_zero_negative(t: &BrieskornTriple, r_invariant: i64) -> Result<ExtendedRational> {
    if r_invariant <= 0 {
        return Err(Error::FormulaInapplicable {
            triple: t.unoriented().to_string(),
            r_invariant,
        });
    }
    let denom = BigInt::from(t.product()?) * 4;
    Ok(ExtendedRational::Finite(BigRational::new(1.into(), denom)))
}

/// Folds `r_(s1+s2)(Y1#Y2) >= min(r_s1(Y1) + s2, r_s2(Y2) + s1)` from the left.
/// Returns the lower bound for `r_(sum s_i)` of the whole sum.
pub fn connected_sum_bound(terms: &[(ExtendedRational, BigRational)]) -> Result<ExtendedRational> {
    let (first, rest) = terms
        .split_first()
        .ok_or_else(|| Error::InvalidBound("empty connected sum".into()))?;
    if let Some((_, s)) = terms.iter().find(|(_, s)| s.is_positive()) {
        return Err(Error::InvalidBound(format!("s = {s} is positive")));
    }
    let (mut bound, mut s_acc) = first.clone();
    for (r, s) in rest {
        let left = &bound + s;
        let right = r + &s_acc;
        bound = left.min(right);
        s_acc += s;
    }
    Ok(bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    #[serde(rename = "allPositiveSideInfinite")]
    pub all_positive_side_infinite: bool,
    #[serde(rename = "allFinite")]
    pub all_finite: bool,
    #[serde(rename = "allDistinct")]
    pub all_distinct: bool,
    #[serde(rename = "rInvariantsPositive")]
    pub r_invariants_positive: bool,
}

impl CertificateChecks {
    pub fn all(&self) -> bool {
        self.all_positive_side_infinite && self.all_finite && self.all_distinct && self.r_invariants_positive
    }
}

/// Hypotheses of the `r_0` independence criterion for a family `{Y_i}`:
/// `r_0(Y_i) = ∞`, `r_0(-Y_i)` finite and pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceCertificate {
    pub family: Vec<BrieskornTriple>,
    /// `r_0(-Y_i)`; `None` where the formula does not apply.
    pub r0_neg: Vec<Option<ExtendedRational>>,
    pub checks: CertificateChecks,
    pub verdict: bool,
    pub theorem: String,
}

pub const INDEPENDENCE_THEOREM: &str = "NST24 r0 independence";

pub fn independence_certificate(family: &[BrieskornTriple]) -> Result<IndependenceCertificate> {
    let mut r_values = Vec::with_capacity(family.len());
    let mut r_positive = true;
    let mut positive_infinite = true;
    for t in family {
        let plus = t.unoriented();
        positive_infinite &= r_zero(&plus)? == ExtendedRational::Infinity;
        let r = SeifertSummary::of(&plus)?.r_invariant();
        r_positive &= r > 0;
        r_values.push(r_zero_negative(&plus.reversed(), r).ok());
    }
    let all_finite = r_values
        .iter()
        .all(|v| v.as_ref().is_some_and(ExtendedRational::is_finite));
    let distinct: BTreeSet<&ExtendedRational> = r_values.iter().flatten().collect();
    let all_distinct = all_finite && distinct.len() == family.len();
    let checks = CertificateChecks {
        all_positive_side_infinite: positive_infinite,
        all_finite,
        all_distinct,
        r_invariants_positive: r_positive,
    };
    Ok(IndependenceCertificate {
        family: family.iter().map(BrieskornTriple::unoriented).collect(),
        r0_neg: r_values,
        verdict: checks.all(),
        checks,
        theorem: INDEPENDENCE_THEOREM.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n_max: u64,
    pub parity_checks: u64,
    pub not_thirty_checks: u64,
    pub interleaving_checks: u64,
    pub monotonicity_checks: u64,
    pub mod4_checks: u64,
}

fn prod3(a: u64, b: u64, c: u64) -> u128 {
    u128::from(a) * u128::from(b) * u128::from(c)
}

/// Elementary number theory behind the distinctness of the `r_0` values,
/// checked for every index up to `n_max`.
pub fn family_scan(n_max: u64) -> Result<ScanReport> {
    if n_max == 0 {
        return Err(Error::InvalidBound("n_max must be at least 1".into()));
    }
    let mut report = ScanReport {
        n_max,
        parity_checks: 0,
        not_thirty_checks: 0,
        interleaving_checks: 0,
        monotonicity_checks: 0,
        mod4_checks: 0,
    };
    let fail = |claim, n| Err(Error::CounterexampleFound { claim, n });
    let f = |a: u64| prod3(4 * a + 1, 3 * a + 1, 12 * a + 1);
    let g = |b: u64| prod3(4 * b - 1, 3 * b - 1, 12 * b - 1);
    for n in 1..=n_max {
        let b = prod3(2 * n + 1, 4 * n + 1, 4 * n + 3);
        let y1 = prod3(4 * n + 1, 6 * n + 2, 12 * n + 1);
        let y2 = prod3(4 * n - 1, 6 * n - 2, 12 * n - 1);
        if b % 2 != 1 {
            return fail("B(n) product is odd", n);
        }
        if y1 % 2 != 0 || y2 % 2 != 0 {
            return fail("Y1/Y2 products are even", n);
        }
        report.parity_checks += 3;
        if [b, y1, y2].contains(&30) {
            return fail("products differ from 30", n);
        }
        report.not_thirty_checks += 3;
        if y1 != 2 * f(n) || y2 != 2 * g(n) {
            return fail("halved products are f and g", n);
        }
        if !(g(n) < f(n) && f(n) < g(n + 1)) {
            return fail("g(a) < f(a) < g(a+1)", n);
        }
        report.interleaving_checks += 1;
        if g(n) >= g(n + 1) {
            return fail("g strictly increasing", n);
        }
        report.monotonicity_checks += 1;
        let b4n = prod3(8 * n + 1, 16 * n + 1, 16 * n + 3);
        let y3 = prod3(8 * n + 1, 12 * n + 1, 24 * n + 5);
        if b4n % 4 == y3 % 4 {
            return fail("B(4n) and Y3(n) products differ mod 4", n);
        }
        report.mod4_checks += 1;
    }
    Ok(report)
}
