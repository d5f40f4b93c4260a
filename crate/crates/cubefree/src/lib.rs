//! Exact computation and verification toolkit for forbidden configurations in
//! the hypercube.
//!
//! A *configuration* is a finite set of vertices of the `d`-dimensional cube
//! `Q_d`. A vertex subset `S` of `Q_n` is *free* of a configuration `F` when no
//! embedding of `Q_d` into `Q_n` maps `F` entirely into `S`. This crate
//! provides:
//!
//! * bitset-backed cube primitives (vertices, point sets, spheres, layers),
//! * generators for the named forbidden configurations and layer constructions,
//! * embedding enumeration and exact freeness decisions with witnesses,
//! * a branch-and-bound solver for the extremal number `exc(n, F)` via the
//!   complement hitting-set formulation,
//! * exact verification of the double-counting identities relating sphere
//!   counts `h_l`,
//! * local-stability statistics, and
//! * density tables plus a periodic layer-pattern search.
//!
//! Everything on an exact path uses integer (or big-integer) arithmetic; there
//! is no floating point in any result that a test asserts on.

pub mod cube;
pub mod config;
pub mod density;
pub mod embed;
pub mod identities;
pub mod io;
pub mod rational;
pub mod report;
pub mod solver;
pub mod stability;

pub use cube::{PointSet, Vertex};
pub use config::{Configuration, ConfigurationFamily, Construction};
pub use rational::Rational;

/// Largest dimension for which a `PointSet` membership table is allocated
/// (`2^24` bits, about 2 MiB).
pub const DIM_MAX: u32 = 24;

/// Largest dimension for purely streaming operations that never allocate a
/// `2^n` table (vertices, weights, distances, spheres).
pub const DIM_MAX_STREAM: u32 = 63;

/// Errors shared by every module of the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },
    #[error("dimension {dim} out of range (expected {min}..={max})")]
    DimensionOutOfRange { dim: u32, min: u32, max: u32 },
    #[error("radius {radius} out of range for dimension {dim}")]
    RadiusOutOfRange { radius: u32, dim: u32 },
    #[error("weight {weight} out of range for dimension {dim}")]
    WeightOutOfRange { weight: u32, dim: u32 },
    #[error("vertex bits 0x{bits:x} have a set bit at or above dimension {dim}")]
    BitsOutOfRange { bits: u64, dim: u32 },
    #[error("configuration must contain at least one point")]
    EmptyConfiguration,
    #[error("configuration family must contain at least one member")]
    EmptyFamily,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("construction requires an even dimension, got {dim}")]
    OddDimension { dim: u32 },
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("orbit enumeration capped at dimension {max}, got {dim}")]
    OrbitDimTooLarge { dim: u32, max: u32 },
    #[error("period {period} out of range (1..={max})")]
    PeriodOutOfRange { period: u32, max: u32 },
    #[error("invalid rational: {0}")]
    BadRational(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate vertex at line {line}")]
    DuplicateVertex { line: usize },
    #[error("vertex {vertex} is not a member of the set")]
    NotAMember { vertex: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
