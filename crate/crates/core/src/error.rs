use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {0} is smaller than 2")]
    ExponentTooSmall(u64),
    #[error("exponents {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("could not parse triple {0:?}")]
    TripleSyntax(String),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("no normalized Seifert invariants for {0}")]
    NoNormalization(String),
    #[error("continued fraction needs 0 < omega < alpha, got alpha = {alpha}, omega = {omega}")]
    ContinuedFractionDomain { alpha: i64, omega: i64 },
    #[error("plumbing is not negative definite (pivot {index} is {pivot})")]
    NegativeDefinitenessFailure { index: usize, pivot: String },
    #[error("grading shift (K^2 + s)/4 = {0} is not an even integer")]
    NonIntegralShift(String),
    #[error("Delta({0}) <= 0 beyond the truncation horizon")]
    NotStabilized(u64),
    #[error("graded root is not symmetric")]
    AsymmetricRoot,
    #[error("malformed graded root: {0}")]
    MalformedRoot(String),
    #[error("invalid monotone subroot parameters: {0}")]
    InvalidParams(String),
    #[error("odd U-exponent between leaf grading {leaf} and angle grading {angle}")]
    OddExponent { leaf: i64, angle: i64 },
    #[error("complex violates an axiom: {0}")]
    AxiomViolation(String),
    #[error("odd grading in atom M({h},{r})")]
    OddGrading { h: i64, r: i64 },
    #[error("atom M({h},{r}) needs h >= r")]
    AtomOrder { h: i64, r: i64 },
    #[error("r0 formula does not apply to {triple}: R = {r_invariant} <= 0")]
    FormulaInapplicable { triple: String, r_invariant: i64 },
    #[error("connected sum bound: {0}")]
    InvalidBound(String),
    #[error("counterexample to {claim} at n = {n}")]
    CounterexampleFound { claim: &'static str, n: u64 },
}

impl Error {
    /// True when the error signals a broken internal invariant rather than bad user input.
    pub fn is_internal(&self) -> bool {
        !matches!(
            self,
            Error::ExponentTooSmall(_)
                | Error::NotCoprime(..)
                | Error::TripleSyntax(_)
                | Error::ContinuedFractionDomain { .. }
                | Error::InvalidParams(_)
                | Error::OddGrading { .. }
                | Error::AtomOrder { .. }
                | Error::FormulaInapplicable { .. }
                | Error::InvalidBound(_)
        )
    }
}
