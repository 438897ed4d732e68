//! Exact arithmetic in finite fields `GF(p^k)` and in the tower `F ⊂ L`
//! carrying the `q`-Frobenius `σ` and `σ̄ = σ - id`.

mod poly;
mod small;
mod spec;
mod tower;

use thiserror::Error;

pub use small::{FiniteField, PrimeField, SmallField, MAX_SMALL_FIELD_ORDER};
pub use spec::{make_field, FieldElement, FieldSpec, MAX_CHARACTERISTIC};
pub use tower::{make_tower, TowerSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic {0} is too large")]
    CharacteristicTooLarge(u32),
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("coefficient {value} is not a residue mod {p}")]
    CoefficientOutOfRange { value: u32, p: u32 },
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("GF({p}^{e}) is too large for table arithmetic")]
    FieldTooLarge { p: u32, e: usize },
    #[error("fixed field has F_p-dimension {found}, expected {expected}")]
    SubfieldDimension { expected: usize, found: usize },
    #[error("element does not lie in the base field")]
    NotInSubfield,
    #[error("modulus root does not generate the extension")]
    NotAGenerator,
}

/// Parses a comma-separated ascending coefficient list such as `"3,4,0,0,0,1"`.
pub fn parse_coefficients(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .enumerate()
        .map(|(i, tok)| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| format!("entry {} ({:?}) is not a nonnegative integer", i + 1, tok.trim()))
        })
        .collect()
}

/// Parses a field string `"p^e"` (or a bare prime `"p"`).
pub fn parse_field(s: &str) -> Result<(u32, usize), String> {
    let (p, e) = match s.split_once('^') {
        Some((p, e)) => (p.trim(), e.trim()),
        None => (s.trim(), "1"),
    };
    let p = p.parse::<u32>().map_err(|_| format!("bad characteristic {p:?} in field {s:?}"))?;
    let e = e.parse::<usize>().map_err(|_| format!("bad exponent {e:?} in field {s:?}"))?;
    if e == 0 {
        return Err(format!("exponent must be positive in field {s:?}"));
    }
    Ok((p, e))
}
