use alloc::string::String;
use alloc::vec::Vec;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("integer overflow converting an exact value to i64")]
    Overflow,

    #[error("zero vector cannot generate a ray")]
    ZeroRay,
    #[error("generators {0} and {1} coincide")]
    DuplicateGenerator(usize, usize),
    #[error("cone is not strongly convex")]
    NotStronglyConvex,
    #[error("cone is not smooth")]
    NotSmooth,
    #[error("cone is not full-dimensional ({dim} rays in dimension {ambient})")]
    NotFullDimensional { dim: usize, ambient: usize },
    #[error("ray index {index} out of range ({len} rays)")]
    RayIndexOutOfRange { index: usize, len: usize },
    #[error("maximal cone {cone} lists ray {ray} twice")]
    RepeatedRayInCone { cone: usize, ray: usize },
    #[error("fan has no maximal cones")]
    EmptyFan,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("unknown gallery fan `{0}`")]
    UnknownName(String),
    #[error("bad parameters for `{name}`: {reason}")]
    BadParams { name: String, reason: String },

    #[error("no maximal cone contains the cone {0:?}")]
    NoContainingMaxCone(Vec<usize>),
    #[error("cone {0:?} is not a cone of the fan")]
    ConeNotInFan(Vec<usize>),

    #[error("coefficient matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("entry ({0}, {0}) lies on the diagonal")]
    DiagonalEntry(usize),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("entry ({i}, {j}) is undefined: coordinate {coord} is zero with exponent {exponent}")]
    UndefinedEntry {
        i: usize,
        j: usize,
        coord: usize,
        exponent: i64,
    },
    #[error("no maximal cone is the standard orthant and no base frame was supplied")]
    NoBaseChart,
    #[error("maximal cone index {0} out of range")]
    ChartOutOfRange(usize),
    #[error(
        "bivector is not regular: chart {chart}, entry ({i}, {j}) has exponent {exponent} at coordinate {coord}"
    )]
    NotRegular {
        chart: usize,
        i: usize,
        j: usize,
        coord: usize,
        exponent: i64,
    },
    #[error("bivector is identically zero")]
    ZeroBivector,
    #[error("numeric oracle disagreement on cone {cone:?}: ranks {ranks:?}")]
    OracleDisagreement { cone: Vec<usize>, ranks: Vec<usize> },
    #[error("at least one seed is required")]
    NoSeeds,
}
