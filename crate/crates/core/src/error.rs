use thiserror::Error;

/// Errors raised by field construction, evaluation and the permutation engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported characteristic {0}; only 2 and 3 are supported")]
    UnsupportedCharacteristic(u32),
    #[error("extension degree 2*{k} over F_{p} exceeds the supported bound")]
    DegreeOverflow { p: u32, k: u32 },
    #[error("modulus has degree {got}, expected {expected}")]
    ModulusDegree { expected: usize, got: usize },
    #[error("modulus is not monic")]
    ModulusNotMonic,
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("zero raised to the negative power {0}")]
    ZeroToNegativePower(i64),
    #[error("{d} does not divide the group order {order}")]
    NotADivisor { d: u64, order: u64 },
    #[error("operation requires odd characteristic")]
    RequiresOddCharacteristic,
    #[error("operation requires characteristic {0}")]
    RequiresCharacteristic(u32),
    #[error("element is not in the subfield F_q")]
    NotInSubfield,
    #[error("unsupported trace-power exponent {0}; expected 2, 5 or 8")]
    UnsupportedTraceExponent(u32),
    #[error("exponent {0} is a nonpositive multiple of the group order")]
    ZeroExponent(i64),
    #[error("exponents collide after reduction modulo {modulus}: {exps:?}")]
    ExponentCollision { exps: Vec<u64>, modulus: u64 },
    #[error("negative exponent evaluated at zero")]
    NegativeExponentAtZero,
    #[error("denominator vanishes at element with index {0}")]
    DenominatorVanishes(u32),
    #[error("image of element with index {0} leaves the subgroup")]
    ImageOutsideSubgroup(u32),
    #[error("field of {size} elements is too large for full enumeration (limit {limit})")]
    FieldTooLarge { size: u64, limit: u64 },
    #[error("characteristic mismatch: family is over characteristic {family}, field has {field}")]
    CharacteristicMismatch { family: u32, field: u32 },
    #[error("b must be nonzero")]
    ZeroCubicConstant,
    #[error("3 does not divide the multiplicative group order {0}")]
    NoCubeRoots(u64),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
