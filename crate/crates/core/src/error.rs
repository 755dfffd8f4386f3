use thiserror::Error;

use crate::field::FieldSpec;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("operation undefined in characteristic 2")]
    CharTwo,
    #[error("operation requires characteristic 2")]
    CharNotTwo,
    #[error("matrix is scalar")]
    ScalarInput,
    #[error("conjugating matrix is singular")]
    SingularP,
    #[error("m = tr^2 - 4 det vanishes")]
    VanishingM,
    #[error("generator {0} is not invertible")]
    NonInvertibleGenerator(usize),
    #[error("letter {letter} is out of range for {gens} generators")]
    BadLetter { letter: i64, gens: usize },
    #[error("inverse letters are only allowed in group mode")]
    InverseInMonoid,
    #[error("a representation needs at least one generator")]
    EmptyTuple,
    #[error("tuples are incompatible: {0}")]
    Incompatible(&'static str),
    #[error("representation is not semi-simple")]
    NotSemiSimple,
    #[error("no increasing product of generators has m != 0")]
    NoSplitGenerator,
    #[error("representation is not unipotent")]
    NotUnipotent,
    #[error("representation is not unipotent over F_2")]
    NotUnipotentF2,
    #[error("representation is not scalar")]
    NotScalar,
    #[error("chart overlap is empty: b(beta) = 0")]
    ChartOverlapEmpty,
    #[error("census needs {needed} tuples, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
