//! The tower `F = GF(q) ⊂ L = GF(q^n)`, `q = p^e`, realised inside a single
//! extension of `F_p` of degree `e·n`.

use std::sync::Arc;

use super::small::{FiniteField, PrimeField, SmallField};
use super::spec::{make_field, FieldElement, FieldSpec};
use super::FieldError;
use crate::linalg::{self, Matrix};

#[derive(Debug)]
pub struct TowerSpec {
    p: u32,
    e: usize,
    n: usize,
    big: Arc<FieldSpec>,
    subfield: SmallField,
    /// Echelonized `F_p`-basis of `{α : α^q = α}`.
    subfield_basis: Vec<FieldElement>,
    /// `ω^0 … ω^{e-1}` where `ω ∈ L` is a root of the subfield modulus.
    omega_powers: Vec<FieldElement>,
    /// `1, γ, …, γ^{n-1}`: the `F`-basis of `L` used for coordinates.
    gamma_powers: Vec<FieldElement>,
    /// Inverse of the `F_p`-matrix whose column `i·e + s` holds `ω^s γ^i`.
    coord_inverse: Matrix<u32>,
}

/// Builds the tower for `F = GF(p^e)` and `[L : F] = n`.
///
/// `modulus` fixes `L` (degree `e·n` over `F_p`); `subfield_modulus` fixes the
/// standalone representation of `F` (degree `e`). Both default to the smallest
/// monic irreducible.
pub fn make_tower(
    p: u32,
    e: usize,
    n: usize,
    modulus: Option<&[u32]>,
    subfield_modulus: Option<&[u32]>,
) -> Result<Arc<TowerSpec>, FieldError> {
    if n == 0 || e == 0 {
        return Err(FieldError::DegreeMismatch { expected: 1, found: 0 });
    }
    let subfield = SmallField::new(p, e, subfield_modulus)?;
    let big = make_field(p, e * n, modulus)?;
    let fp = PrimeField::new(p)?;
    let k = e * n;
    let q = subfield.q() as u128;

    // Frobenius_q - id as an F_p-linear map on power-basis coordinates
    let x = big.generator();
    let mut cols = Vec::with_capacity(k);
    let mut basis_elem = big.one();
    for _ in 0..k {
        let image = basis_elem.pow(q).checked_sub(&basis_elem)?;
        cols.push(image.coeffs().to_vec());
        basis_elem = &basis_elem * &x;
    }
    let frob_minus_id = Matrix::from_columns(&cols);
    let kernel = linalg::row_space_basis(&fp, &linalg::nullspace(&fp, &frob_minus_id));
    if kernel.rows() != e {
        return Err(FieldError::SubfieldDimension { expected: e, found: kernel.rows() });
    }
    let subfield_basis: Vec<FieldElement> =
        (0..kernel.rows()).map(|r| big.try_element(kernel.row(r))).collect::<Result<_, _>>()?;

    let omega = if e == 1 {
        big.one()
    } else {
        find_subfield_root(&big, &subfield, &subfield_basis)?
    };
    let mut omega_powers = Vec::with_capacity(e);
    let mut w = big.one();
    for _ in 0..e {
        omega_powers.push(w.clone());
        w = &w * &omega;
    }
    let mut gamma_powers = Vec::with_capacity(n);
    let mut g = big.one();
    for _ in 0..n {
        gamma_powers.push(g.clone());
        g = &g * &x;
    }

    let mut wcols = Vec::with_capacity(k);
    for gp in &gamma_powers {
        for op in &omega_powers {
            wcols.push((gp * op).coeffs().to_vec());
        }
    }
    let coord_inverse = linalg::inverse(&fp, &Matrix::from_columns(&wcols)).ok_or(FieldError::NotAGenerator)?;

    Ok(Arc::new(TowerSpec { p, e, n, big, subfield, subfield_basis, omega_powers, gamma_powers, coord_inverse }))
}

/// First element of the fixed field (enumerated through its echelon basis)
/// that is a root of the subfield modulus.
fn find_subfield_root(
    big: &Arc<FieldSpec>,
    subfield: &SmallField,
    basis: &[FieldElement],
) -> Result<FieldElement, FieldError> {
    let p = subfield.p();
    let modulus = subfield.modulus();
    for idx in 1..subfield.q() {
        let mut cand = big.zero();
        let mut i = idx;
        for b in basis {
            let d = (i % p as u64) as u32;
            i /= p as u64;
            if d != 0 {
                cand = &cand + &b.scale(d);
            }
        }
        let mut acc = big.zero();
        for &c in modulus.iter().rev() {
            acc = &(&acc * &cand) + &big.constant(c);
        }
        if acc.is_zero() {
            return Ok(cand);
        }
    }
    Err(FieldError::NotAGenerator)
}

impl TowerSpec {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// `[L : F]`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.subfield.q()
    }

    pub fn big(&self) -> &Arc<FieldSpec> {
        &self.big
    }

    /// The scalar field `F` in its standalone representation.
    pub fn subfield(&self) -> &SmallField {
        &self.subfield
    }

    pub fn subfield_basis(&self) -> &[FieldElement] {
        &self.subfield_basis
    }

    pub fn gamma(&self) -> FieldElement {
        self.big.generator()
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if Arc::ptr_eq(a.field(), &self.big) || **a.field() == *self.big {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch)
        }
    }

    /// `γ^exponent`.
    pub fn gamma_power(&self, exponent: u128) -> FieldElement {
        self.big.generator().pow(exponent)
    }

    /// `σ(α) = α^q`.
    pub fn frobenius_q(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(a.pow(self.q() as u128))
    }

    /// `σ̄(α) = α^q - α`.
    pub fn sigma_bar(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.frobenius_q(a)?.checked_sub(a)
    }

    pub fn sigma_bar_power(&self, a: &FieldElement, j: usize) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        let mut cur = a.clone();
        for _ in 0..j {
            if cur.is_zero() {
                break;
            }
            cur = self.sigma_bar(&cur)?;
        }
        Ok(cur)
    }

    pub fn is_in_base_subfield(&self, a: &FieldElement) -> Result<bool, FieldError> {
        Ok(self.frobenius_q(a)? == *a)
    }

    /// Image of an `F`-element in `L`.
    pub fn embed(&self, a: u32) -> FieldElement {
        let coeffs = self.subfield.to_coeffs(a);
        let mut out = self.big.zero();
        for (c, w) in coeffs.iter().zip(&self.omega_powers) {
            if *c != 0 {
                out = &out + &w.scale(*c);
            }
        }
        out
    }

    /// Inverse of [`embed`](Self::embed) on the fixed field.
    pub fn restrict(&self, a: &FieldElement) -> Result<u32, FieldError> {
        let coords = self.coords_over_f(a)?;
        if coords[1..].iter().any(|&c| c != 0) {
            return Err(FieldError::NotInSubfield);
        }
        Ok(coords[0])
    }

    /// `(λ_0, …, λ_{n-1}) ∈ F^n` with `α = Σ λ_i γ^i`.
    pub fn coords_over_f(&self, a: &FieldElement) -> Result<Vec<u32>, FieldError> {
        self.check(a)?;
        let fp = PrimeField::new(self.p)?;
        let x = linalg::mat_vec(&fp, &self.coord_inverse, a.coeffs());
        let coords = (0..self.n)
            .map(|i| self.subfield.from_coeffs(&x[i * self.e..(i + 1) * self.e]))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(coords)
    }

    /// `Σ λ_i γ^i`.
    pub fn from_coords_over_f(&self, coords: &[u32]) -> Result<FieldElement, FieldError> {
        if coords.len() != self.n {
            return Err(FieldError::DegreeMismatch { expected: self.n, found: coords.len() });
        }
        let mut out = self.big.zero();
        for (c, g) in coords.iter().zip(&self.gamma_powers) {
            if !self.subfield.contains(*c) {
                return Err(FieldError::NotInSubfield);
            }
            if *c != 0 {
                out = &out + &(&self.embed(*c) * g);
            }
        }
        Ok(out)
    }

    /// Matrix over `F` of an `F`-linear map `L → L` in the basis `1, γ, …, γ^{n-1}`.
    pub fn linear_map_matrix<M>(&self, mut map: M) -> Result<Matrix<u32>, FieldError>
    where
        M: FnMut(&FieldElement) -> Result<FieldElement, FieldError>,
    {
        let cols = self
            .gamma_powers
            .iter()
            .map(|g| map(g).and_then(|img| self.coords_over_f(&img)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_columns(&cols))
    }

    /// `F`-linear combination `Σ c_i v_i` of elements of `L`.
    pub fn combine(&self, scalars: &[u32], vectors: &[FieldElement]) -> FieldElement {
        let mut out = self.big.zero();
        for (&c, v) in scalars.iter().zip(vectors) {
            if !self.subfield.is_zero(c) {
                out = &out + &(&self.embed(c) * v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5_tower() -> Arc<TowerSpec> {
        make_tower(5, 1, 5, Some(&[3, 4, 0, 0, 0, 1]), None).unwrap()
    }

    #[test]
    fn gamma_powers_reduce() {
        let t = f5_tower();
        assert!(t.gamma_power(0).is_one());
        assert_eq!(t.gamma_power(5).coeffs(), &[2, 1, 0, 0, 0]);
        let t2 = make_tower(2, 1, 8, Some(&[1, 0, 1, 1, 1, 0, 0, 0, 1]), None).unwrap();
        assert_eq!(t2.gamma_power(8).coeffs(), &[1, 0, 1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn frobenius_basics() {
        let t = f5_tower();
        let one = t.big().one();
        assert_eq!(t.frobenius_q(&one).unwrap(), one);
        assert_eq!(t.frobenius_q(&t.gamma()).unwrap().coeffs(), &[2, 1, 0, 0, 0]);
        assert!(!t.is_in_base_subfield(&t.gamma()).unwrap());
        assert!(t.is_in_base_subfield(&t.big().zero()).unwrap());
        assert!(t.is_in_base_subfield(&one).unwrap());
        let a = t.big().element(&[1, 4, 2, 0, 3]);
        let mut s = a.clone();
        for _ in 0..5 {
            s = t.frobenius_q(&s).unwrap();
        }
        assert_eq!(s, a);
    }

    #[test]
    fn sigma_bar_nilpotent_on_f2_degree_8() {
        let t = make_tower(2, 1, 8, Some(&[1, 0, 1, 1, 1, 0, 0, 0, 1]), None).unwrap();
        let a = t.big().element(&[1, 1, 0, 1, 0, 0, 1, 1]);
        assert!(t.sigma_bar_power(&a, 8).unwrap().is_zero());
        assert!(!t.sigma_bar_power(&t.gamma_power(5), 7).unwrap().is_zero());
        assert_eq!(t.sigma_bar_power(&a, 0).unwrap(), a);
    }

    #[test]
    fn nontrivial_subfield() {
        // F = GF(4), L = GF(4^3) = GF(64)
        let t = make_tower(2, 2, 3, None, None).unwrap();
        assert_eq!(t.q(), 4);
        assert_eq!(t.subfield_basis().len(), 2);
        for b in t.subfield_basis() {
            assert!(t.is_in_base_subfield(b).unwrap());
        }
        // embedding is a ring homomorphism
        let f = t.subfield().clone();
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(t.embed(f.mul(a, b)), &t.embed(a) * &t.embed(b));
                assert_eq!(t.embed(f.add(a, b)), &t.embed(a) + &t.embed(b));
                assert_eq!(t.restrict(&t.embed(a)).unwrap(), a);
            }
        }
        // exactly q fixed elements among all 64
        let fixed = (0..64u32)
            .filter(|&i| {
                let coeffs: Vec<u32> = (0..6).map(|b| (i >> b) & 1).collect();
                t.is_in_base_subfield(&t.big().element(&coeffs)).unwrap()
            })
            .count();
        assert_eq!(fixed, 4);
    }

    #[test]
    fn coordinates_roundtrip() {
        let t = make_tower(3, 2, 2, None, None).unwrap();
        let a = t.big().element(&[2, 0, 1, 1]);
        let c = t.coords_over_f(&a).unwrap();
        assert_eq!(t.from_coords_over_f(&c).unwrap(), a);
        assert_eq!(t.restrict(&t.gamma()), Err(FieldError::NotInSubfield));
    }
}
