use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::poly;
use super::FieldError;

/// The finite field `GF(p^k) = F_p[x] / (modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    k: usize,
    modulus: Vec<u32>,
}

/// Largest characteristic accepted; keeps every intermediate product in `u64`.
pub const MAX_CHARACTERISTIC: u32 = 1 << 20;

/// Builds and validates a field. Without an explicit modulus the
/// lexicographically smallest monic irreducible of degree `k` is used.
pub fn make_field(p: u32, k: usize, modulus: Option<&[u32]>) -> Result<Arc<FieldSpec>, FieldError> {
    if !poly::is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p > MAX_CHARACTERISTIC {
        return Err(FieldError::CharacteristicTooLarge(p));
    }
    if k == 0 {
        return Err(FieldError::DegreeMismatch { expected: 1, found: 0 });
    }
    let modulus = match modulus {
        None => poly::smallest_irreducible(p, k),
        Some(m) => {
            if let Some(&c) = m.iter().find(|&&c| c >= p) {
                return Err(FieldError::CoefficientOutOfRange { value: c, p });
            }
            let m = poly::trim(m.to_vec());
            let found = poly::degree(&m).unwrap_or(0);
            if m.is_empty() || found != k {
                return Err(FieldError::DegreeMismatch { expected: k, found });
            }
            if m[k] != 1 {
                return Err(FieldError::NotMonic);
            }
            if !poly::is_irreducible(&m, p) {
                return Err(FieldError::ReducibleModulus(m));
            }
            m
        }
    };
    Ok(Arc::new(FieldSpec { p, k, modulus }))
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `p^k`, when it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.k as u32)
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement { field: Arc::clone(self), coeffs: vec![0; self.k] }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, c: u32) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        coeffs[0] = c % self.p;
        FieldElement { field: Arc::clone(self), coeffs }
    }

    /// The class of `x`, i.e. the root `γ` of the modulus.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        self.element(&[0, 1])
    }

    /// Element from a (possibly short or long) ascending coefficient list; reduced mod the modulus.
    pub fn element(self: &Arc<Self>, coeffs: &[u32]) -> FieldElement {
        let reduced: Vec<u32> = coeffs.iter().map(|&c| c % self.p).collect();
        self.from_poly(poly::rem(&reduced, &self.modulus, self.p))
    }

    /// Element from exactly `k` coordinates in `[0, p)`.
    pub fn try_element(self: &Arc<Self>, coeffs: &[u32]) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.k {
            return Err(FieldError::DegreeMismatch { expected: self.k, found: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(FieldError::CoefficientOutOfRange { value: c, p: self.p });
        }
        Ok(FieldElement { field: Arc::clone(self), coeffs: coeffs.to_vec() })
    }

    fn from_poly(self: &Arc<Self>, mut v: Vec<u32>) -> FieldElement {
        v.resize(self.k, 0);
        FieldElement { field: Arc::clone(self), coeffs: v }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod [", self.p, self.k)?;
        for (i, c) in self.modulus.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// An element of a [`FieldSpec`]: `k` residues mod `p`, the coordinates in
/// the power basis of the modulus root.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FieldSpec>,
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::SpecMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + b) % p).collect();
        Ok(FieldElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| (a + p - b) % p).collect();
        Ok(FieldElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        let f = &self.field;
        Ok(f.from_poly(poly::mul_rem(&self.coeffs, &other.coeffs, &f.modulus, f.p)))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        let f = &self.field;
        poly::inv_rem(&self.coeffs, &f.modulus, f.p)
            .map(|v| f.from_poly(v))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Square-and-multiply power.
    pub fn pow(&self, exp: u128) -> Self {
        let f = &self.field;
        f.from_poly(poly::pow_rem(&self.coeffs, exp, &f.modulus, f.p))
    }

    /// Multiplies by an `F_p` scalar.
    pub fn scale(&self, c: u32) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| poly::mul_mod(a, c % p, p)).collect();
        FieldElement { field: Arc::clone(&self.field), coeffs }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other).is_ok() && self.coeffs == other.coeffs
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("operands from different fields")
            }
        }

        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.zero().checked_sub(self).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Arc<FieldSpec> {
        make_field(5, 5, Some(&[3, 4, 0, 0, 0, 1])).unwrap()
    }

    #[test]
    fn validation_errors() {
        assert_eq!(make_field(4, 2, None).unwrap_err(), FieldError::NotPrime(4));
        assert!(matches!(make_field(2, 3, Some(&[1, 0, 0, 1])), Err(FieldError::ReducibleModulus(_))));
        assert!(matches!(
            make_field(2, 3, Some(&[1, 1, 1])),
            Err(FieldError::DegreeMismatch { expected: 3, found: 2 })
        ));
        assert!(make_field(2, 3, Some(&[1, 1, 0, 1])).is_ok());
        assert_eq!(make_field(3, 2, Some(&[1, 0, 2])).unwrap_err(), FieldError::NotMonic);
    }

    #[test]
    fn gamma_fifth_power_reduces() {
        // γ^5 = -4γ - 3 = γ + 2 over F_5
        let f = f5();
        assert_eq!(f.generator().pow(5).coeffs(), &[2, 1, 0, 0, 0]);
    }

    #[test]
    fn gamma_eighth_power_reduces() {
        let f = make_field(2, 8, Some(&[1, 0, 1, 1, 1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.generator().pow(8).coeffs(), &[1, 0, 1, 1, 1, 0, 0, 0]);
    }

    #[test]
    fn inverse_and_division() {
        let f = f5();
        let a = f.element(&[1, 2, 3, 4]);
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
        assert_eq!(f.zero().inv().unwrap_err(), FieldError::DivisionByZero);
        assert_eq!(a.checked_div(&a).unwrap(), f.one());
    }

    #[test]
    fn fermat_little_theorem() {
        let f = make_field(3, 4, None).unwrap();
        let a = f.element(&[2, 0, 1, 1]);
        assert_eq!(a.pow(81), a);
        assert!(a.pow(80).is_one());
    }

    #[test]
    fn mismatched_fields_rejected() {
        let a = f5().one();
        let b = make_field(5, 2, None).unwrap().one();
        assert_eq!(a.checked_add(&b).unwrap_err(), FieldError::SpecMismatch);
        assert_eq!(a.checked_mul(&b).unwrap_err(), FieldError::SpecMismatch);
    }

    #[test]
    fn default_modulus_is_deterministic() {
        assert_eq!(make_field(5, 3, None).unwrap(), make_field(5, 3, None).unwrap());
    }
}
