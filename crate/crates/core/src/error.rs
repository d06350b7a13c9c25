use thiserror::Error;

/// Errors raised by the algebra, quiver and Kac-polynomial engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KacError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("denominator is not a product of cyclotomic polynomials (residue {residue})")]
    NotCyclotomic { residue: String },
    #[error("dimension vector or multiplicity vector does not match the quiver: {0}")]
    KeyMismatch(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("series boxes differ: {left:?} vs {right:?}")]
    BoxMismatch { left: Vec<u32>, right: Vec<u32> },
    #[error("series has constant term {found}, expected {expected}")]
    BadConstantTerm { expected: &'static str, found: String },
    #[error("multidegree {0:?} lies outside the truncation box")]
    OutOfBox(Vec<u32>),
    #[error("result is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("invariant violated for {instance}: {detail}")]
    InvariantViolation { instance: String, detail: String },
    #[error("parametric term count {count} exceeds the cap {cap}")]
    TermExplosion { count: usize, cap: usize },
    #[error("zero polynomial has no coefficient graph")]
    ZeroPolynomial,
    #[error("limit is empty: no group of the decomposition survives")]
    EmptyLimit,
    #[error("no group of the decomposition has the linear part of the degree function")]
    NoDegreeGroup,
    #[error("every group survives the limit; the difference is identically zero")]
    EmptyComplement,
    #[error("invalid limit specification: {0}")]
    InvalidLimit(String),
}

pub type Result<T> = std::result::Result<T, KacError>;
