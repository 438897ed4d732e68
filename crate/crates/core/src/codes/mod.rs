//! Constructions of Ferrers diagram codes of dimension `ν_min(D, d)`.

mod artifact;
mod cache;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ferrers::{diagonal, region, Cell, DiagramError, FerrersDiagram, RegionKind};
use crate::field::{FieldError, FiniteField, SmallField};
use crate::linalg::{self, Matrix};
use crate::skewflag::{monotone_space_matrices, SkewError};

pub use artifact::{ArtifactError, CodeArtifact, Entry};
pub use cache::flag_for;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("diagram {0} is not {1}-monotone")]
    NotPMonotone(FerrersDiagram, u32),
    #[error("diagram {0} is not {1}-convex")]
    NotPConvex(FerrersDiagram, u32),
    #[error("order {n} is not a power of the characteristic {p}")]
    OrderNotPowerOfChar { n: usize, p: u32 },
    #[error("invalid compatible basis: {0}")]
    InvalidBasis(String),
    #[error("diagram {0} is not strictly monotone")]
    NotStrictlyMonotone(FerrersDiagram),
    #[error("diagram {0} is not initially convex")]
    NotInitiallyConvex(FerrersDiagram),
    #[error("({0}, d = {1}) is not MDS-constructible")]
    NotMdsConstructible(FerrersDiagram, usize),
    #[error("target support is not contained in the code's diagram")]
    NotSubdiagram,
    #[error(
        "({diagram}, d = {d}) over GF({q}) is outside the supported classes; \
         general p-monotone or p-convex diagrams need the order to be a power of the characteristic {p}"
    )]
    UnsupportedDiagramClass { diagram: FerrersDiagram, d: usize, p: u32, q: u64 },
    #[error("distance {d} not in 1..={n}")]
    InvalidDistance { d: usize, n: usize },
    #[error("cropping discarded a nonzero entry")]
    CropLoss,
    #[error("intermediate support {0:?} is not a Ferrers diagram")]
    IrregularSupport(Vec<Cell>),
    #[error(transparent)]
    Skew(SkewError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl From<SkewError> for CodeError {
    fn from(e: SkewError) -> Self {
        match e {
            SkewError::InvalidBasis { .. } => CodeError::InvalidBasis(e.to_string()),
            SkewError::Field(f) => CodeError::Field(f),
            other => CodeError::Skew(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionPath {
    Trivial,
    PMonotone,
    PConvex,
    StrictlyMonotone,
    InitiallyConvex,
    MdsConstructible,
}

impl fmt::Display for ConstructionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConstructionPath::Trivial => "trivial",
            ConstructionPath::PMonotone => "p-monotone",
            ConstructionPath::PConvex => "p-convex",
            ConstructionPath::StrictlyMonotone => "strictly-monotone",
            ConstructionPath::InitiallyConvex => "initially-convex",
            ConstructionPath::MdsConstructible => "mds-constructible",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingTrace {
    pub order: usize,
    pub offset: usize,
    pub diagram: FerrersDiagram,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdsTrace {
    pub j: usize,
    pub y: Vec<usize>,
    pub ell: Option<usize>,
    pub d_prime: Option<FerrersDiagram>,
    pub d_double_prime: Option<FerrersDiagram>,
    pub nu_min_d_double_prime: Option<usize>,
    pub removed_cells: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub steps: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub embedding: Option<EmbeddingTrace>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mds: Option<MdsTrace>,
    /// Modulus of the extension used for the flag, when one was built.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tower_modulus: Option<Vec<u32>>,
    /// The compatible basis, as coefficient lists in that extension.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub basis: Option<Vec<Vec<u32>>>,
}

/// Optional overrides for the extension field and the compatible basis used
/// by the flag-based constructions. They refer to the order at which the flag
/// is built, which may exceed `n` after embedding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstructOptions {
    pub modulus: Option<Vec<u32>>,
    pub basis_exponents: Option<Vec<u128>>,
}

/// A linear space of `n × n` matrices over `F` supported on a diagram.
#[derive(Debug, Clone)]
pub struct FerrersCode {
    pub field: SmallField,
    pub diagram: FerrersDiagram,
    pub d: usize,
    pub generators: Vec<Matrix<u32>>,
    pub path: ConstructionPath,
    pub trace: Trace,
}

impl FerrersCode {
    pub fn n(&self) -> usize {
        self.diagram.order()
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    /// Generators replaced by the reduced echelon basis of their span, with
    /// matrices flattened row-major.
    pub fn echelonized(&self) -> FerrersCode {
        let n = self.n();
        let mut out = self.clone();
        out.generators = echelon_generators(&self.field, n, &self.generators);
        out
    }
}

fn echelon_generators(f: &SmallField, n: usize, gens: &[Matrix<u32>]) -> Vec<Matrix<u32>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let flat = Matrix::from_rows(gens.iter().map(|g| g.as_slice().to_vec()).collect());
    let basis = linalg::row_space_basis(f, &flat);
    (0..basis.rows()).map(|r| Matrix::from_vec(n, n, basis.row(r).to_vec())).collect()
}

fn check_distance(dia: &FerrersDiagram, d: usize) -> Result<(), CodeError> {
    if d == 0 || d > dia.order() {
        return Err(CodeError::InvalidDistance { d, n: dia.order() });
    }
    Ok(())
}

fn is_power_of(n: usize, p: u32) -> bool {
    let mut m = n;
    while m > 1 && m.is_multiple_of(p as usize) {
        m /= p as usize;
    }
    m == 1
}

/// `E_{ij}` for every cell, ordered by row then column.
fn trivial_code(dia: &FerrersDiagram, field: &SmallField) -> FerrersCode {
    let n = dia.order();
    let mut gens = Vec::with_capacity(dia.size());
    for (i, j) in dia.to_cells() {
        let mut m = linalg::zeros(field, n, n);
        m.set(i - 1, j - 1, field.one());
        gens.push(m);
    }
    FerrersCode {
        field: field.clone(),
        diagram: dia.clone(),
        d: 1,
        generators: gens,
        path: ConstructionPath::Trivial,
        trace: Trace { steps: vec!["distance 1: elementary matrices on every cell".into()], ..Trace::default() },
    }
}

fn zero_code(dia: &FerrersDiagram, d: usize, field: &SmallField, path: ConstructionPath, trace: Trace) -> FerrersCode {
    FerrersCode { field: field.clone(), diagram: dia.clone(), d, generators: Vec::new(), path, trace }
}

/// Code on a `p`-monotone diagram of order `p^m`: the images under `φ_B` of
/// `β_t σ̄^{i-1}` for `i ≤ n-d+1`, `t ≤ c_i`, in that order.
pub fn construct_p_monotone(
    dia: &FerrersDiagram,
    d: usize,
    field: &SmallField,
    opts: &ConstructOptions,
) -> Result<FerrersCode, CodeError> {
    let n = dia.order();
    let p = field.p();
    check_distance(dia, d)?;
    if !is_power_of(n, p) {
        return Err(CodeError::OrderNotPowerOfChar { n, p });
    }
    if !dia.is_p_monotone(p) {
        return Err(CodeError::NotPMonotone(dia.clone(), p));
    }
    let mut flag = flag_for(field, n, opts.modulus.as_deref())?;
    if let Some(exps) = &opts.basis_exponents {
        flag = std::sync::Arc::new(flag.with_gamma_exponents(exps)?);
    }
    let generators = monotone_space_matrices(dia, &flag, Some(n - d))?;
    let trace = Trace {
        steps: vec![format!("generators β_t σ̄^(i-1) for i ≤ {}, t ≤ c_i", n - d + 1)],
        tower_modulus: Some(flag.tower().big().modulus().to_vec()),
        basis: Some(flag.basis().iter().map(|b| b.coeffs().to_vec()).collect()),
        ..Trace::default()
    };
    Ok(FerrersCode { field: field.clone(), diagram: dia.clone(), d, generators, path: ConstructionPath::PMonotone, trace })
}

/// Embeds a strictly (`p`-)monotone diagram into order `p^m`, builds the
/// `p`-monotone code there and crops to the top-right `n × n` block.
pub fn construct_strictly_monotone(
    dia: &FerrersDiagram,
    d: usize,
    field: &SmallField,
    opts: &ConstructOptions,
) -> Result<FerrersCode, CodeError> {
    let n = dia.order();
    let p = field.p();
    check_distance(dia, d)?;
    if !dia.is_strictly_monotone() && !dia.is_strictly_p_monotone(p) {
        return Err(CodeError::NotStrictlyMonotone(dia.clone()));
    }
    let (big, offset) = dia.embed_strictly_monotone(p)?;
    let inner = construct_p_monotone(&big, d, field, opts)?;
    let big_n = big.order();
    let mut generators = Vec::with_capacity(inner.generators.len());
    for g in &inner.generators {
        for r in 0..big_n {
            for c in 0..big_n {
                if (r >= n || c < offset) && !field.is_zero(g.get(r, c)) {
                    return Err(CodeError::CropLoss);
                }
            }
        }
        generators.push(g.block(0, offset, n, n));
    }
    let mut trace = inner.trace;
    trace.steps.insert(0, format!("prepended {offset} zero columns to reach order {big_n}"));
    trace.steps.push(format!("cropped rows 1..{n}, columns {}..{big_n}", offset + 1));
    trace.embedding = Some(EmbeddingTrace { order: big_n, offset, diagram: big });
    Ok(FerrersCode {
        field: field.clone(),
        diagram: dia.clone(),
        d,
        generators,
        path: ConstructionPath::StrictlyMonotone,
        trace,
    })
}

fn antitranspose_code(mut code: FerrersCode, dia: &FerrersDiagram, path: ConstructionPath) -> FerrersCode {
    code.generators = code.generators.iter().map(Matrix::antitranspose).collect();
    code.diagram = dia.clone();
    code.path = path;
    code.trace.steps.push("antitransposed every generator".into());
    code
}

/// Builds on the adjoint (strictly monotone) and antitransposes back.
pub fn construct_initially_convex(
    dia: &FerrersDiagram,
    d: usize,
    field: &SmallField,
    opts: &ConstructOptions,
) -> Result<FerrersCode, CodeError> {
    check_distance(dia, d)?;
    let p = field.p();
    if !dia.is_initially_convex() && !dia.is_initially_p_convex(p) {
        return Err(CodeError::NotInitiallyConvex(dia.clone()));
    }
    let adj = dia.adjoint();
    let mut code = construct_strictly_monotone(&adj, d, field, opts)?;
    code.trace.steps.insert(0, format!("adjoint diagram {adj}"));
    Ok(antitranspose_code(code, dia, ConstructionPath::InitiallyConvex))
}

/// Builds on the `p`-monotone adjoint of a `p`-convex diagram of order `p^m`.
pub fn construct_p_convex(
    dia: &FerrersDiagram,
    d: usize,
    field: &SmallField,
    opts: &ConstructOptions,
) -> Result<FerrersCode, CodeError> {
    check_distance(dia, d)?;
    let p = field.p();
    if !is_power_of(dia.order(), p) {
        return Err(CodeError::OrderNotPowerOfChar { n: dia.order(), p });
    }
    if !dia.is_p_convex(p) {
        return Err(CodeError::NotPConvex(dia.clone(), p));
    }
    let adj = dia.adjoint();
    let mut code = construct_p_monotone(&adj, d, field, opts)?;
    code.trace.steps.insert(0, format!("adjoint diagram {adj}"));
    Ok(antitranspose_code(code, dia, ConstructionPath::PConvex))
}

/// Subcode of `code` whose members vanish outside `target`, echelonized.
pub fn intersect_with_support(code: &FerrersCode, target: &FerrersDiagram) -> Result<FerrersCode, CodeError> {
    if !target.is_subdiagram_of(&code.diagram) {
        return Err(CodeError::NotSubdiagram);
    }
    let f = &code.field;
    let n = code.n();
    let k = code.generators.len();
    let outside: Vec<(usize, usize)> =
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).filter(|&c| !target.contains(c)).collect();
    let generators = if k == 0 {
        Vec::new()
    } else if outside.is_empty() {
        echelon_generators(f, n, &code.generators)
    } else {
        // one equation per outside cell, one unknown per generator
        let eqs = Matrix::from_rows(
            outside.iter().map(|&(i, j)| code.generators.iter().map(|g| g.get(i - 1, j - 1)).collect()).collect(),
        );
        let kernel = linalg::nullspace(f, &eqs);
        let combos: Vec<Matrix<u32>> = (0..kernel.rows())
            .map(|r| {
                let mut acc = linalg::zeros(f, n, n);
                for (x, g) in kernel.row(r).iter().zip(&code.generators) {
                    if !f.is_zero(*x) {
                        acc = linalg::add(f, &acc, &linalg::scale(f, *x, g));
                    }
                }
                acc
            })
            .collect();
        echelon_generators(f, n, &combos)
    };
    let mut trace = code.trace.clone();
    trace.steps.push(format!("restricted support to {target}: dimension {k} -> {}", generators.len()));
    Ok(FerrersCode { field: f.clone(), diagram: target.clone(), d: code.d, generators, path: code.path, trace })
}

/// The `D → D' → D''` route for MDS-constructible pairs.
pub fn construct_mds_constructible(
    dia: &FerrersDiagram,
    d: usize,
    field: &SmallField,
    opts: &ConstructOptions,
) -> Result<FerrersCode, CodeError> {
    let n = dia.order();
    if d < 2 || d > n {
        return Err(CodeError::InvalidDistance { d, n });
    }
    if !dia.is_mds_constructible(d)? {
        return Err(CodeError::NotMdsConstructible(dia.clone(), d));
    }
    let j = dia.singleton_indices(d)?[0];
    let s = region(RegionKind::S, n, d, j)?;
    let l = region(RegionKind::L, n, d, j)?;
    let y: Vec<usize> = (1..=n + 1 - d)
        .filter(|&i| diagonal(n, i).into_iter().any(|c| dia.contains(c) && s.contains(c)))
        .collect();
    let mut mds = MdsTrace {
        j,
        y: y.clone(),
        ell: None,
        d_prime: None,
        d_double_prime: None,
        nu_min_d_double_prime: None,
        removed_cells: None,
    };
    let Some(&ell) = y.first() else {
        let trace = Trace {
            steps: vec![format!("{j}-Singleton with no diagonal meeting S: zero code")],
            mds: Some(mds),
            ..Trace::default()
        };
        return Ok(zero_code(dia, d, field, ConstructionPath::MdsConstructible, trace));
    };
    let dpp_cols: Vec<usize> = (1..=n).map(|c| (c + 1).saturating_sub(ell)).collect();
    let dpp = FerrersDiagram::from_columns(&dpp_cols)?;
    let mut dp_cells: BTreeSet<Cell> = dia.cells().filter(|&c| s.contains(c)).collect();
    for i in ell..=n {
        dp_cells.extend(diagonal(n, i).into_iter().filter(|&c| l.contains(c)));
    }
    let dp = FerrersDiagram::from_cells(n, &dp_cells)
        .map_err(|_| CodeError::IrregularSupport(dp_cells.iter().copied().collect()))?;
    if !dp.is_subdiagram_of(dia) || !dp.is_subdiagram_of(&dpp) {
        return Err(CodeError::NotSubdiagram);
    }
    let removed = dpp.size() - dp.size();
    mds.ell = Some(ell);
    mds.d_prime = Some(dp.clone());
    mds.d_double_prime = Some(dpp.clone());
    mds.nu_min_d_double_prime = Some(dpp.nu_min(d)?);
    mds.removed_cells = Some(removed);

    let big = construct_strictly_monotone(&dpp, d, field, opts)?;
    let sub = intersect_with_support(&big, &dp)?;
    let mut trace = sub.trace;
    trace.steps.insert(0, format!("{j}-Singleton, Y = {y:?}, ell = {ell}, D' = {dp}, D'' = {dpp}"));
    trace.steps.push(format!("relabelled as a code on {dia}"));
    trace.mds = Some(mds);
    Ok(FerrersCode {
        field: field.clone(),
        diagram: dia.clone(),
        d,
        generators: sub.generators,
        path: ConstructionPath::MdsConstructible,
        trace,
    })
}

/// Routes `(D, d)` to the first applicable construction.
pub fn construct(
    dia: &FerrersDiagram,
    d: usize,
    field: &SmallField,
    opts: &ConstructOptions,
) -> Result<FerrersCode, CodeError> {
    check_distance(dia, d)?;
    let p = field.p();
    let n = dia.order();
    if d == 1 {
        return Ok(trivial_code(dia, field));
    }
    if dia.is_strictly_monotone() {
        return construct_strictly_monotone(dia, d, field, opts);
    }
    if dia.is_initially_convex() {
        return construct_initially_convex(dia, d, field, opts);
    }
    if is_power_of(n, p) {
        if dia.is_p_monotone(p) {
            return construct_p_monotone(dia, d, field, opts);
        }
        if dia.is_p_convex(p) {
            return construct_p_convex(dia, d, field, opts);
        }
    }
    if dia.is_strictly_p_monotone(p) {
        return construct_strictly_monotone(dia, d, field, opts);
    }
    if dia.is_initially_p_convex(p) {
        return construct_initially_convex(dia, d, field, opts);
    }
    if dia.is_mds_constructible(d)? {
        return construct_mds_constructible(dia, d, field, opts);
    }
    Err(CodeError::UnsupportedDiagramClass { diagram: dia.clone(), d, p, q: field.q() })
}
