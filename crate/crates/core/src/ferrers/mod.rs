//! Ferrers diagram combinatorics: classes, the `ν` bound, diagonals and the
//! `S`/`T`/`L` regions.

mod diagram;
mod profile;
mod region;

use thiserror::Error;

pub use diagram::{Cell, FerrersDiagram};
pub use profile::{DiagramProfile, DistanceProfile, PrimeProfile};
pub use region::{diagonal, region, Region, RegionKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("diagram order must be positive")]
    EmptyOrder,
    #[error("column {column} is shorter than the column before it")]
    NotNondecreasing { column: usize },
    #[error("column {column} has {value} cells, more than the order {n}")]
    ColumnExceedsOrder { column: usize, value: usize, n: usize },
    #[error("cell ({row}, {column}) breaks top-right justification")]
    NotTopRightJustified { row: usize, column: usize },
    #[error("cell ({row}, {column}) lies outside the {n}x{n} grid")]
    CellOutOfGrid { row: usize, column: usize, n: usize },
    #[error("order {n} does not match {len} columns")]
    LengthMismatch { n: usize, len: usize },
    #[error("{0}")]
    OutOfRange(String),
    #[error("diagram is not strictly {p}-monotone")]
    NotStrictlyPMonotone { p: u32 },
    #[error("bad column count {token:?} at position {position}")]
    Parse { position: usize, token: String },
}
