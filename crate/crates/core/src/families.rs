//! The Brieskorn families `B(n)`, `Y1(n)`, `Y2(n)`, `Y3(n)` with their
//! closed-form monotone subroots and the kernel expressions built from them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monotone::MonotoneSubroot;
use crate::seifert::BrieskornTriple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `Σ(2,3,5)` for `n = 0`, `Σ(2n+1, 4n+1, 4n+3)` otherwise.
    B,
    /// `Σ(4n+1, 6n+2, 12n+1)`.
    Y1,
    /// `Σ(4n-1, 6n-2, 12n-1)`.
    Y2,
    /// `Σ(8n+1, 12n+1, 24n+5)`.
    Y3,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::B, Family::Y1, Family::Y2, Family::Y3];

    pub fn min_index(self) -> u64 {
        match self {
            Family::B => 0,
            _ => 1,
        }
    }

    pub fn exponents(self, n: u64) -> Result<[u64; 3]> {
        if n < self.min_index() {
            return Err(Error::TripleSyntax(format!("{self}({n}) needs n >= {}", self.min_index())));
        }
        let e = match (self, n) {
            (Family::B, 0) => [2, 3, 5],
            (Family::B, n) => [2 * n + 1, 4 * n + 1, 4 * n + 3],
            (Family::Y1, n) => [4 * n + 1, 6 * n + 2, 12 * n + 1],
            (Family::Y2, n) => [4 * n - 1, 6 * n - 2, 12 * n - 1],
            (Family::Y3, n) => [8 * n + 1, 12 * n + 1, 24 * n + 5],
        };
        Ok(e)
    }

    pub fn triple(self, n: u64) -> Result<BrieskornTriple> {
        let [a, b, c] = self.exponents(n)?;
        BrieskornTriple::new(a, b, c)
    }

    /// Parameter list as stated for the family; may be degenerate (`Y2(1)`).
    pub fn stated_params(self, n: u64) -> Result<Vec<(i64, i64)>> {
        if n < self.min_index() {
            return Err(Error::InvalidParams(format!("{self}({n}) is not defined")));
        }
        let n = i64::try_from(n).map_err(|_| Error::Overflow("family index"))?;
        Ok(match (self, n) {
            (Family::B, 0) => vec![(2, 2)],
            (Family::B, n) => vec![(2 * n, 0)],
            (Family::Y1, n) => vec![(4 * n, 0), (2 * n, 2 * n)],
            (Family::Y2, n) => vec![(4 * n - 2, 0), (2 * n, 2 * n)],
            (Family::Y3, n) => vec![(8 * n, 0)],
        })
    }

    /// Closed-form monotone subroot (the stated list, reduced when degenerate).
    pub fn closed_form_subroot(self, n: u64) -> Result<MonotoneSubroot> {
        MonotoneSubroot::reduced(&self.stated_params(n)?)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::B => "B",
            Family::Y1 => "Y1",
            Family::Y2 => "Y2",
            Family::Y3 => "Y3",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => Ok(Family::B),
            "Y1" => Ok(Family::Y1),
            "Y2" => Ok(Family::Y2),
            "Y3" => Ok(Family::Y3),
            _ => Err(Error::TripleSyntax(s.to_string())),
        }
    }
}

/// A family member with a signed multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTerm {
    pub family: Family,
    pub index: u64,
    pub multiplicity: i64,
}

impl FamilyTerm {
    pub fn new(family: Family, index: u64, multiplicity: i64) -> Self {
        FamilyTerm {
            family,
            index,
            multiplicity,
        }
    }
}

/// `Y1(n) # -B(2n) # B(n) # -n B(0)`.
pub fn kernel_family_y1(n: u64) -> Vec<FamilyTerm> {
    vec![
        FamilyTerm::new(Family::Y1, n, 1),
        FamilyTerm::new(Family::B, 2 * n, -1),
        FamilyTerm::new(Family::B, n, 1),
        FamilyTerm::new(Family::B, 0, -(n as i64)),
    ]
}

/// `Y2(n) # -B(2n-1) # B(n) # -n B(0)`.
pub fn kernel_family_y2(n: u64) -> Vec<FamilyTerm> {
    vec![
        FamilyTerm::new(Family::Y2, n, 1),
        FamilyTerm::new(Family::B, 2 * n - 1, -1),
        FamilyTerm::new(Family::B, n, 1),
        FamilyTerm::new(Family::B, 0, -(n as i64)),
    ]
}

/// `Y3(n) # -B(4n)`.
pub fn kernel_family_y3(n: u64) -> Vec<FamilyTerm> {
    vec![
        FamilyTerm::new(Family::Y3, n, 1),
        FamilyTerm::new(Family::B, 4 * n, -1),
    ]
}

/// Members of `{B(0..=n_max)} ∪ {Y1(1..=n_max)} ∪ {Y2(1..=n_max)}`.
pub fn independence_family_a(n_max: u64) -> Result<Vec<BrieskornTriple>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        out.push(Family::B.triple(n)?);
    }
    for n in 1..=n_max {
        out.push(Family::Y1.triple(n)?);
        out.push(Family::Y2.triple(n)?);
    }
    Ok(out)
}

/// Members of `{B(4n)}_(0 <= n <= n_max) ∪ {Y3(n)}_(1 <= n <= n_max)`.
pub fn independence_family_b(n_max: u64) -> Result<Vec<BrieskornTriple>> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        out.push(Family::B.triple(4 * n)?);
    }
    for n in 1..=n_max {
        out.push(Family::Y3.triple(n)?);
    }
    Ok(out)
}
