use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("level {level} exceeds the tile budget of {budget}")]
    Budget { level: usize, budget: usize },
    #[error("stars within radius {radius} of P_{level} not complete by level {bound}")]
    Padding { level: usize, radius: usize, bound: usize },
    #[error("vertex {0} not present")]
    UnknownVertex(String),
    #[error("algebra construction: {0}")]
    Algebra(String),
    #[error("degree {0} still nonzero; the algebra did not terminate")]
    NotFiniteDimensional(usize),
    #[error("module calculus: {0}")]
    Module(String),
    #[error("characteristic 2 requested without opting in")]
    CharacteristicTwo,
    #[error("census: {0}")]
    Census(String),
}

pub type Result<T> = core::result::Result<T, Error>;
