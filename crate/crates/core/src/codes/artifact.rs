use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ConstructionPath, FerrersCode, Trace};
use crate::ferrers::{DiagramError, FerrersDiagram};
use crate::field::{FieldError, SmallField};
use crate::linalg::Matrix;

/// A matrix entry: a residue when `e = 1`, otherwise the coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Residue(u32),
    Coeffs(Vec<u32>),
}

/// JSON form of a [`FerrersCode`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeArtifact {
    pub q: u64,
    pub p: u32,
    pub e: usize,
    pub n: usize,
    pub d: usize,
    pub diagram: Vec<usize>,
    pub dimension: usize,
    pub path: ConstructionPath,
    pub trace: Trace,
    /// Modulus of the base field over `F_p`, ascending.
    pub subfield_modulus: Vec<u32>,
    pub generators: Vec<Vec<Vec<Entry>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtifactError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{0}")]
    Shape(String),
}

impl FerrersCode {
    pub fn to_artifact(&self) -> CodeArtifact {
        let f = &self.field;
        let entry = |x: u32| if f.e() == 1 { Entry::Residue(x) } else { Entry::Coeffs(f.to_coeffs(x)) };
        CodeArtifact {
            q: f.q(),
            p: f.p(),
            e: f.e(),
            n: self.n(),
            d: self.d,
            diagram: self.diagram.columns().to_vec(),
            dimension: self.dimension(),
            path: self.path,
            trace: self.trace.clone(),
            subfield_modulus: f.modulus().to_vec(),
            generators: self
                .generators
                .iter()
                .map(|g| (0..g.rows()).map(|r| g.row(r).iter().map(|&x| entry(x)).collect()).collect())
                .collect(),
        }
    }

    pub fn from_artifact(a: &CodeArtifact) -> Result<FerrersCode, ArtifactError> {
        let field = SmallField::new(a.p, a.e, Some(&a.subfield_modulus))?;
        if field.q() != a.q {
            return Err(ArtifactError::Shape(format!("q = {} does not match p^e = {}", a.q, field.q())));
        }
        let diagram = FerrersDiagram::from_columns(&a.diagram)?;
        if diagram.order() != a.n {
            return Err(ArtifactError::Shape(format!("diagram order {} but n = {}", diagram.order(), a.n)));
        }
        let n = a.n;
        let mut generators = Vec::with_capacity(a.generators.len());
        for (k, g) in a.generators.iter().enumerate() {
            if g.len() != n || g.iter().any(|r| r.len() != n) {
                return Err(ArtifactError::Shape(format!("generator {} is not {n}x{n}", k + 1)));
            }
            let mut data = Vec::with_capacity(n * n);
            for x in g.iter().flatten() {
                let v = match x {
                    Entry::Residue(v) if field.e() == 1 && *v < field.p() => *v,
                    Entry::Coeffs(c) if c.len() == field.e() => field.from_coeffs(c)?,
                    other => return Err(ArtifactError::Shape(format!("entry {other:?} does not fit GF({})", a.q))),
                };
                data.push(v);
            }
            generators.push(Matrix::from_vec(n, n, data));
        }
        Ok(FerrersCode { field, diagram, d: a.d, generators, path: a.path, trace: a.trace.clone() })
    }
}
