use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series with constant term {constant} has no integer inverse")]
    NonUnit { constant: String },

    #[error(
        "invalid q-Pochhammer factor (q^{offset}; q^{step}): offset and step must be positive"
    )]
    InvalidPochhammer { offset: u32, step: u32 },

    #[error("theta series f(q^{r}, q^{s}) diverges: r + s must be positive")]
    DivergentTheta { r: u32, s: u32 },

    #[error("invalid triple-product specialization z = q^{j}, q -> q^{t}: need 1 <= j < t")]
    InvalidSpecialization { j: u32, t: u32 },

    #[error("invalid dissection: residue {r} modulo {t} at order {order}")]
    InvalidDissection { t: usize, r: usize, order: usize },

    #[error("index tuple {0:?} is not a strictly increasing sequence of positive integers")]
    InvalidIndexTuple(Vec<u32>),

    #[error("crank of a partition of weight {weight} is fixed by convention; use the table route")]
    CrankConvention { weight: u32 },

    #[error("residue difference series is only defined for moduli 2 and 3, got {0}")]
    UnsupportedModulus(u32),

    #[error("residue class {k} is out of range for modulus {t}")]
    InvalidResidue { k: u32, t: u32 },

    #[error("weight {n} exceeds table order {order}")]
    OutOfRange { n: usize, order: usize },

    #[error("omega: {0}")]
    Omega(String),

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}
