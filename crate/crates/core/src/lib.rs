pub mod codes;
pub mod ferrers;
pub mod field;
pub mod golden;
pub mod linalg;
pub mod skewflag;
pub mod verify;

pub use codes::{construct, ConstructOptions, FerrersCode};
pub use ferrers::FerrersDiagram;

/// The scalar field of every code.
pub type Gf = field::SmallField;
/// Matrices over [`Gf`], entries in its index encoding.
pub type FMatrix = linalg::Matrix<u32>;
