use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("series not invertible: constant term is not a unit")]
    NotInvertible,
    #[error("unknown L-function {0:?}")]
    UnknownSpec(String),
    #[error("{0} is not square-free")]
    NotSquareFree(i64),
    #[error("class number of Q(sqrt {0}) is not 1")]
    ClassNumber(i64),
    #[error("no generator found for a prime ideal above {0}")]
    NoGenerator(u64),
    #[error("character condition |eps|^(i v1) = sgn(N eps)^m fails: residual {0:e}")]
    CharacterCondition(f64),
    #[error("need {needed} coefficients, only {available} available")]
    NotEnoughCoefficients { needed: usize, available: usize },
    #[error("truncation bound inapplicable: Re(s) = {0} is below -L-1")]
    TruncationBound(f64),
    #[error("log-gamma pole at a nonpositive integer")]
    GammaPole,
    #[error("zero on contour near {re}+{im}i (|L| = {abs:e})")]
    ZeroOnContour { re: f64, im: f64, abs: f64 },
    #[error("argument jump could not be resolved near {re}+{im}i")]
    ArgumentJump { re: f64, im: f64 },
    #[error("contour too close to a zero: winding residual {0:e}")]
    WindingResidual(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
