use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("binary field degree {0} outside supported range 1..=16")]
    DegreeOutOfRange(u32),
    #[error("modulus {modulus:#b} is not an irreducible polynomial of degree {degree}")]
    NotIrreducible { modulus: u32, degree: u32 },
    #[error("value {value} is not an element of a field of order {order}")]
    InvalidElement { value: u64, order: u32 },
    #[error("{sub} does not divide the extension degree {t}")]
    NotASubfieldDegree { sub: u32, t: u32 },
    #[error("operation requires a binary field")]
    NotBinaryField,
    #[error("element {0} appears more than once")]
    DuplicateElement(u32),
    #[error("set of size {size} exceeds the enumeration limit {limit}")]
    SetTooLarge { size: usize, limit: usize },
    #[error("sets share element {0}")]
    NotDisjoint(u32),
    #[error("instance too large: {what} = {size} exceeds {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("graph is not regular: vertex {vertex} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("no prime in [{lo}, {hi}]: the interval theorem is falsified")]
    NoPrimeInInterval { lo: u64, hi: u64 },
    #[error("ground size {n} is not of the form required by {construction}")]
    ArithmeticMismatch { n: usize, construction: String },
    #[error("subfield GF(2^{t_prime}) too small: need 2^{t_prime} >= r + 2 = {need}")]
    SubfieldTooSmall { t_prime: u32, need: usize },
    #[error("vertices {0} and {1} of the clique witness are not adjacent")]
    NotAClique(u64, u64),
    #[error("color space {order}^{r} does not fit in 64 bits")]
    ColorSpaceOverflow { order: u32, r: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
}
