//! Skew polynomials in the `σ̄`-monomial basis, the kernel flag
//! `F_i = ker σ̄^i`, compatible bases and the matrix representation `φ_B`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ferrers::FerrersDiagram;
use crate::field::{FieldElement, FieldError, FiniteField, SmallField, TowerSpec};
use crate::linalg::{self, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("order {n} is not a power of the characteristic {p}")]
    NotPrimePowerOrder { n: usize, p: u32 },
    #[error("expected order {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("basis is not compatible with the flag at position {position}: {reason}")]
    InvalidBasis { position: usize, reason: String },
    #[error("coordinate outside the base field")]
    CoordinateNotInSubfield,
    #[error("kernel of the {i}-th power has dimension {found}")]
    FlagDimension { i: usize, found: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// `Σ_i λ_i σ̄^{i-1}` with exactly `n` coefficients in `L`.
#[derive(Debug, Clone)]
pub struct SkewPoly {
    tower: Arc<TowerSpec>,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.tower.big() == other.tower.big() && self.tower.n() == other.tower.n() && self.coeffs == other.coeffs
    }
}

impl Eq for SkewPoly {}

/// Serialized form: nonzero terms as `(σ̄-power, coefficient list)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewTerm {
    pub power: usize,
    pub coeffs: Vec<u32>,
}

impl SkewPoly {
    pub fn new(tower: &Arc<TowerSpec>, coeffs: Vec<FieldElement>) -> Result<Self, SkewError> {
        if coeffs.len() != tower.n() {
            return Err(SkewError::OrderMismatch { expected: tower.n(), found: coeffs.len() });
        }
        for c in &coeffs {
            if c.field() != tower.big() {
                return Err(FieldError::SpecMismatch.into());
            }
        }
        Ok(SkewPoly { tower: tower.clone(), coeffs })
    }

    pub fn zero(tower: &Arc<TowerSpec>) -> Self {
        SkewPoly { tower: tower.clone(), coeffs: vec![tower.big().zero(); tower.n()] }
    }

    pub fn identity(tower: &Arc<TowerSpec>) -> Self {
        Self::monomial(tower, tower.big().one(), 0)
    }

    /// `λ σ̄^power`; powers at or beyond `n` give the zero polynomial.
    pub fn monomial(tower: &Arc<TowerSpec>, lambda: FieldElement, power: usize) -> Self {
        let mut p = Self::zero(tower);
        if power < tower.n() {
            p.coeffs[power] = lambda;
        }
        p
    }

    /// Builds `Σ γ^{e_k} σ̄^{s_k}` from `(s_k, e_k)` pairs.
    pub fn from_gamma_terms(tower: &Arc<TowerSpec>, terms: &[(usize, u128)]) -> Self {
        let mut p = Self::zero(tower);
        for &(s, e) in terms {
            if s < tower.n() {
                p.coeffs[s] = &p.coeffs[s] + &tower.gamma_power(e);
            }
        }
        p
    }

    pub fn tower(&self) -> &Arc<TowerSpec> {
        &self.tower
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// `σ̄`-degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn add(&self, other: &SkewPoly) -> Result<SkewPoly, SkewError> {
        if self.tower.big() != other.tower.big() || self.tower.n() != other.tower.n() {
            return Err(FieldError::SpecMismatch.into());
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(SkewPoly { tower: self.tower.clone(), coeffs })
    }

    /// `Σ λ_i σ̄^{i-1}(α)`.
    pub fn evaluate(&self, alpha: &FieldElement) -> Result<FieldElement, SkewError> {
        if alpha.field() != self.tower.big() {
            return Err(FieldError::SpecMismatch.into());
        }
        let mut acc = self.tower.big().zero();
        let mut cur = alpha.clone();
        let Some(top) = self.degree() else { return Ok(acc) };
        for (i, lambda) in self.coeffs.iter().enumerate().take(top + 1) {
            if i > 0 {
                cur = self.tower.sigma_bar(&cur)?;
            }
            if !lambda.is_zero() {
                acc = acc.checked_add(&lambda.checked_mul(&cur)?)?;
            }
        }
        Ok(acc)
    }

    pub fn terms(&self) -> Vec<SkewTerm> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(power, c)| SkewTerm { power, coeffs: c.coeffs().to_vec() })
            .collect()
    }

    pub fn from_terms(tower: &Arc<TowerSpec>, terms: &[SkewTerm]) -> Result<Self, SkewError> {
        let mut p = Self::zero(tower);
        for t in terms {
            if t.power >= tower.n() {
                return Err(SkewError::OrderMismatch { expected: tower.n(), found: t.power + 1 });
            }
            p.coeffs[t.power] = &p.coeffs[t.power] + &tower.big().try_element(&t.coeffs)?;
        }
        Ok(p)
    }
}

/// The flag `F_0 ⊂ … ⊂ F_n` together with a compatible basis `B`.
#[derive(Debug, Clone)]
pub struct FlagData {
    tower: Arc<TowerSpec>,
    /// Matrix of `σ̄` on `γ`-power coordinates over `F`.
    sigma_bar: Matrix<u32>,
    /// Echelonized `F`-basis of `F_i` as rows, `i = 0..=n`.
    subspaces: Vec<Matrix<u32>>,
    basis: Vec<FieldElement>,
    /// Column `c` holds the coordinates of `β_{c+1}`.
    basis_matrix: Matrix<u32>,
    basis_inverse: Matrix<u32>,
}

fn is_power_of(n: usize, p: u32) -> bool {
    let mut m = n;
    while m > 1 && m.is_multiple_of(p as usize) {
        m /= p as usize;
    }
    m == 1
}

/// Echelon basis over `F` of the span of `vectors` in `L`.
pub fn f_linear_solve(tower: &TowerSpec, vectors: &[FieldElement]) -> Result<Vec<FieldElement>, SkewError> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let rows = vectors.iter().map(|v| tower.coords_over_f(v)).collect::<Result<Vec<_>, _>>()?;
    let basis = linalg::row_space_basis(tower.subfield(), &Matrix::from_rows(rows));
    (0..basis.rows()).map(|r| tower.from_coords_over_f(basis.row(r)).map_err(SkewError::from)).collect()
}

/// Builds the flag for a tower whose order `n` is a power of its characteristic,
/// with the deterministic echelon-extension compatible basis.
pub fn build_flag(tower: &Arc<TowerSpec>) -> Result<FlagData, SkewError> {
    let n = tower.n();
    let p = tower.characteristic();
    if !is_power_of(n, p) {
        return Err(SkewError::NotPrimePowerOrder { n, p });
    }
    let f = tower.subfield();
    let sigma_bar = tower.linear_map_matrix(|a| tower.sigma_bar(a))?;
    let mut subspaces = vec![Matrix::from_vec(0, n, Vec::new())];
    let mut power = linalg::identity(f, n);
    for i in 1..=n {
        power = linalg::mat_mul(f, &sigma_bar, &power);
        let kernel = linalg::row_space_basis(f, &linalg::nullspace(f, &power));
        if kernel.rows() != i {
            return Err(SkewError::FlagDimension { i, found: kernel.rows() });
        }
        subspaces.push(kernel);
    }

    let mut coords: Vec<Vec<u32>> = Vec::with_capacity(n);
    for i in 1..=n {
        let (prev, pivots) = if coords.is_empty() {
            (Matrix::from_vec(0, n, Vec::new()), Vec::new())
        } else {
            linalg::rref(f, &Matrix::from_rows(coords.clone()))
        };
        let fresh = (0..subspaces[i].rows())
            .map(|r| subspaces[i].row(r).to_vec())
            .find(|v| !linalg::in_row_space(f, &prev, v))
            .expect("F_i strictly contains F_{i-1}");
        let mut v = fresh;
        for (k, &pc) in pivots.iter().enumerate() {
            let c = v[pc];
            if !f.is_zero(c) {
                for (x, &y) in v.iter_mut().zip(prev.row(k)) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        let lead = *v.iter().find(|&&x| !f.is_zero(x)).expect("nonzero after reduction");
        let inv = f.inv(lead).expect("nonzero");
        v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        coords.push(v);
    }
    let basis = coords.iter().map(|c| tower.from_coords_over_f(c)).collect::<Result<Vec<_>, _>>()?;
    FlagData::assemble(tower, sigma_bar, subspaces, basis)
}

impl FlagData {
    fn assemble(
        tower: &Arc<TowerSpec>,
        sigma_bar: Matrix<u32>,
        subspaces: Vec<Matrix<u32>>,
        basis: Vec<FieldElement>,
    ) -> Result<Self, SkewError> {
        let cols = basis.iter().map(|b| tower.coords_over_f(b)).collect::<Result<Vec<_>, _>>()?;
        let basis_matrix = Matrix::from_columns(&cols);
        let basis_inverse = linalg::inverse(tower.subfield(), &basis_matrix).ok_or(SkewError::InvalidBasis {
            position: 0,
            reason: "vectors are linearly dependent".into(),
        })?;
        Ok(FlagData { tower: tower.clone(), sigma_bar, subspaces, basis, basis_matrix, basis_inverse })
    }

    /// Replaces the compatible basis after checking it.
    pub fn with_basis(&self, basis: Vec<FieldElement>) -> Result<Self, SkewError> {
        self.check_compatible(&basis)?;
        FlagData::assemble(&self.tower, self.sigma_bar.clone(), self.subspaces.clone(), basis)
    }

    /// Replaces the compatible basis by `(γ^{e_1}, …, γ^{e_n})`.
    pub fn with_gamma_exponents(&self, exponents: &[u128]) -> Result<Self, SkewError> {
        self.with_basis(exponents.iter().map(|&e| self.tower.gamma_power(e)).collect())
    }

    pub fn tower(&self) -> &Arc<TowerSpec> {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.tower.n()
    }

    pub fn field(&self) -> &SmallField {
        self.tower.subfield()
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// Echelon rows spanning `F_i` in `γ`-power coordinates.
    pub fn subspace(&self, i: usize) -> &Matrix<u32> {
        &self.subspaces[i]
    }

    pub fn subspace_elements(&self, i: usize) -> Result<Vec<FieldElement>, SkewError> {
        let m = &self.subspaces[i];
        (0..m.rows()).map(|r| self.tower.from_coords_over_f(m.row(r)).map_err(SkewError::from)).collect()
    }

    pub fn sigma_bar_matrix(&self) -> &Matrix<u32> {
        &self.sigma_bar
    }

    /// Whether `α ∈ F_i`.
    pub fn contains(&self, i: usize, alpha: &FieldElement) -> Result<bool, SkewError> {
        let v = self.tower.coords_over_f(alpha)?;
        Ok(linalg::in_row_space(self.field(), &self.subspaces[i], &v))
    }

    /// Checks `β_t ∈ F_t \ F_{t-1}` for every `t`, which is equivalent to each
    /// prefix spanning the matching flag member.
    pub fn check_compatible(&self, candidate: &[FieldElement]) -> Result<(), SkewError> {
        let n = self.n();
        if candidate.len() != n {
            return Err(SkewError::OrderMismatch { expected: n, found: candidate.len() });
        }
        for (idx, b) in candidate.iter().enumerate() {
            let t = idx + 1;
            if b.field() != self.tower.big() {
                return Err(FieldError::SpecMismatch.into());
            }
            if !self.contains(t, b)? {
                return Err(SkewError::InvalidBasis {
                    position: t,
                    reason: format!("element {b} is not in F_{t}"),
                });
            }
            if self.contains(t - 1, b)? {
                return Err(SkewError::InvalidBasis {
                    position: t,
                    reason: format!("element {b} already lies in F_{}", t - 1),
                });
            }
        }
        Ok(())
    }

    /// Coordinates in `B` of an element of `L`.
    pub fn coords_in_basis(&self, alpha: &FieldElement) -> Result<Vec<u32>, SkewError> {
        let v = self.tower.coords_over_f(alpha)?;
        Ok(linalg::mat_vec(self.field(), &self.basis_inverse, &v))
    }

    /// Matrix of `α ↦ λα` in `γ`-power coordinates.
    fn multiplication_matrix(&self, lambda: &FieldElement) -> Result<Matrix<u32>, SkewError> {
        Ok(self.tower.linear_map_matrix(|a| a.checked_mul(lambda))?)
    }

    /// `Σ mult(λ_i) · S^{i-1}` in `γ`-power coordinates.
    fn power_basis_matrix(&self, f: &SkewPoly) -> Result<Matrix<u32>, SkewError> {
        let fld = self.field();
        let n = self.n();
        let mut acc = linalg::zeros(fld, n, n);
        let mut sp = linalg::identity(fld, n);
        let Some(top) = f.degree() else { return Ok(acc) };
        for (i, lambda) in f.coeffs.iter().enumerate().take(top + 1) {
            if i > 0 {
                sp = linalg::mat_mul(fld, &self.sigma_bar, &sp);
            }
            if !lambda.is_zero() {
                let m = self.multiplication_matrix(lambda)?;
                acc = linalg::add(fld, &acc, &linalg::mat_mul(fld, &m, &sp));
            }
        }
        Ok(acc)
    }

    /// Expresses a `γ`-coordinate matrix in the basis `B`.
    fn change_to_basis(&self, a: &Matrix<u32>) -> Matrix<u32> {
        let fld = self.field();
        linalg::mat_mul(fld, &self.basis_inverse, &linalg::mat_mul(fld, a, &self.basis_matrix))
    }
}

fn check_same_tower(flag: &FlagData, f: &SkewPoly) -> Result<(), SkewError> {
    if f.tower.big() != flag.tower.big() || f.tower.n() != flag.n() || f.tower.e() != flag.tower.e() {
        return Err(FieldError::SpecMismatch.into());
    }
    Ok(())
}

/// `Ok(())` when `candidate` is an `F`-compatible basis.
pub fn verify_compatible_basis(flag: &FlagData, candidate: &[FieldElement]) -> Result<(), SkewError> {
    flag.check_compatible(candidate)
}

/// `φ_B(f)`: column `c` holds the `B`-coordinates of `f(β_c)`.
pub fn matrix_of(f: &SkewPoly, flag: &FlagData) -> Result<Matrix<u32>, SkewError> {
    check_same_tower(flag, f)?;
    Ok(flag.change_to_basis(&flag.power_basis_matrix(f)?))
}

/// `φ_B` computed directly from evaluations, column by column.
pub fn matrix_by_evaluation<M>(flag: &FlagData, mut map: M) -> Result<Matrix<u32>, SkewError>
where
    M: FnMut(&FieldElement) -> Result<FieldElement, SkewError>,
{
    let cols = flag
        .basis
        .iter()
        .map(|b| map(b).and_then(|img| flag.coords_in_basis(&img)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_columns(&cols))
}

/// Matrix of `f ∘ g` through composed evaluation.
pub fn composed_matrix(f: &SkewPoly, g: &SkewPoly, flag: &FlagData) -> Result<Matrix<u32>, SkewError> {
    check_same_tower(flag, f)?;
    check_same_tower(flag, g)?;
    matrix_by_evaluation(flag, |a| f.evaluate(&g.evaluate(a)?))
}

/// `{β_t σ̄^{i-1} : 1 ≤ i ≤ levels, 1 ≤ t ≤ c_i}` ordered by `i`, then `t`,
/// where `levels = n` or `max_degree + 1`.
pub fn monotone_space_basis(
    dia: &FerrersDiagram,
    flag: &FlagData,
    max_degree: Option<usize>,
) -> Result<Vec<SkewPoly>, SkewError> {
    let n = flag.n();
    if dia.order() != n {
        return Err(SkewError::OrderMismatch { expected: n, found: dia.order() });
    }
    let levels = max_degree.map_or(n, |m| (m + 1).min(n));
    let mut out = Vec::new();
    for i in 1..=levels {
        for t in 1..=dia.column(i) {
            out.push(SkewPoly::monomial(&flag.tower, flag.basis[t - 1].clone(), i - 1));
        }
    }
    Ok(out)
}

/// `φ_B` of [`monotone_space_basis`], computed through cached products.
pub fn monotone_space_matrices(
    dia: &FerrersDiagram,
    flag: &FlagData,
    max_degree: Option<usize>,
) -> Result<Vec<Matrix<u32>>, SkewError> {
    let n = flag.n();
    if dia.order() != n {
        return Err(SkewError::OrderMismatch { expected: n, found: dia.order() });
    }
    let fld = flag.field();
    let levels = max_degree.map_or(n, |m| (m + 1).min(n));
    let tmax = (1..=levels).map(|i| dia.column(i)).max().unwrap_or(0);
    let left: Vec<Matrix<u32>> = flag.basis[..tmax]
        .iter()
        .map(|b| Ok(linalg::mat_mul(fld, &flag.basis_inverse, &flag.multiplication_matrix(b)?)))
        .collect::<Result<_, SkewError>>()?;
    let mut right = flag.basis_matrix.clone();
    let mut out = Vec::new();
    for i in 1..=levels {
        if i > 1 {
            right = linalg::mat_mul(fld, &flag.sigma_bar, &right);
        }
        for l in left.iter().take(dia.column(i)) {
            out.push(linalg::mat_mul(fld, l, &right));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_tower;
    use crate::golden;

    fn f5() -> Arc<TowerSpec> {
        make_tower(5, 1, 5, Some(&golden::F5_MODULUS), None).unwrap()
    }

    fn f2_8() -> Arc<TowerSpec> {
        make_tower(2, 1, 8, Some(&golden::F2_MODULUS), None).unwrap()
    }

    #[test]
    fn flag_dimensions() {
        let flag = build_flag(&f5()).unwrap();
        for i in 0..=5 {
            assert_eq!(flag.subspace(i).rows(), i);
        }
        assert!(flag.basis()[0].is_one());
        flag.check_compatible(flag.basis()).unwrap();
    }

    #[test]
    fn rejects_non_power_order() {
        let t = make_tower(2, 1, 6, None, None).unwrap();
        assert_eq!(build_flag(&t).unwrap_err(), SkewError::NotPrimePowerOrder { n: 6, p: 2 });
    }

    #[test]
    fn reference_bases_are_compatible() {
        let flag = build_flag(&f5()).unwrap();
        flag.with_gamma_exponents(&golden::F5_BASIS_EXPONENTS).unwrap();
        let flag2 = build_flag(&f2_8()).unwrap();
        flag2.with_gamma_exponents(&golden::F2_BASIS_EXPONENTS).unwrap();
        let mut swapped = golden::F5_BASIS_EXPONENTS;
        swapped.swap(0, 1);
        assert!(matches!(
            flag.with_gamma_exponents(&swapped),
            Err(SkewError::InvalidBasis { position: 1, .. })
        ));
    }

    #[test]
    fn phi_of_reference_polynomial() {
        let t = f2_8();
        let flag = build_flag(&t).unwrap().with_gamma_exponents(&golden::F2_BASIS_EXPONENTS).unwrap();
        let f = SkewPoly::from_gamma_terms(&t, &golden::F2_PHI_TERMS);
        assert_eq!(f.degree(), Some(2));
        let m = matrix_of(&f, &flag).unwrap();
        assert_eq!(m, golden::matrix(&golden::F2_PHI_MATRIX));
        let by_eval = matrix_by_evaluation(&flag, |a| f.evaluate(a)).unwrap();
        assert_eq!(by_eval, m);
    }

    #[test]
    fn identity_and_sigma_bar() {
        let t = f5();
        let flag = build_flag(&t).unwrap();
        let id = SkewPoly::identity(&t);
        let fld = flag.field();
        assert_eq!(matrix_of(&id, &flag).unwrap(), linalg::identity(fld, 5));
        let sb = SkewPoly::monomial(&t, t.big().one(), 1);
        assert!(sb.evaluate(&t.big().constant(3)).unwrap().is_zero());
        let m = matrix_of(&sb, &flag).unwrap();
        for r in 0..5 {
            for c in 0..5 {
                if r >= c {
                    assert_eq!(m.get(r, c), 0);
                }
            }
        }
        assert_eq!(SkewPoly::zero(&t).degree(), None);
    }

    #[test]
    fn monotone_space_reference() {
        let t = f5();
        let flag = build_flag(&t).unwrap().with_gamma_exponents(&golden::F5_BASIS_EXPONENTS).unwrap();
        let dia = FerrersDiagram::from_columns(&golden::F5_DIAGRAM).unwrap();
        assert_eq!(monotone_space_basis(&dia, &flag, None).unwrap().len(), 18);
        let gens = monotone_space_basis(&dia, &flag, Some(5 - golden::F5_DISTANCE)).unwrap();
        assert_eq!(gens.len(), 4);
        assert_eq!(gens[3].coeffs()[1], t.gamma_power(1531));
        let fast = monotone_space_matrices(&dia, &flag, Some(1)).unwrap();
        for (g, (m, want)) in gens.iter().zip(fast.iter().zip(&golden::F5_GENERATORS)) {
            assert_eq!(&matrix_of(g, &flag).unwrap(), m);
            assert_eq!(*m, golden::matrix(want));
        }
        assert!(monotone_space_basis(&FerrersDiagram::empty(5), &flag, None).unwrap().is_empty());
        assert!(monotone_space_basis(&FerrersDiagram::empty(4), &flag, None).is_err());
    }

    #[test]
    fn terms_round_trip() {
        let t = f2_8();
        let f = SkewPoly::from_gamma_terms(&t, &golden::F2_PHI_TERMS);
        let back = SkewPoly::from_terms(&t, &f.terms()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn f_linear_solve_kernel() {
        let t = f5();
        let one = t.big().one();
        let span = f_linear_solve(&t, &[one.clone(), one.scale(3), t.big().constant(2)]).unwrap();
        assert_eq!(span.len(), 1);
        let flag = build_flag(&t).unwrap();
        assert_eq!(flag.subspace_elements(1).unwrap(), vec![one]);
    }
}
