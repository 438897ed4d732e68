//! Small finite fields with `Copy` elements, used as the scalar field of
//! matrices. Elements are encoded as integers `Σ a_s p^s` where `a_s` is the
//! coefficient of `y^s` in the field's polynomial representation.

use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use super::poly;
use super::spec::make_field;
use super::FieldError;

/// A finite field whose elements are small `Copy` values.
///
/// All matrix routines in [`crate::linalg`] are generic over this trait.
pub trait FiniteField: Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync + 'static;

    fn characteristic(&self) -> u32;
    fn order(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    /// Element number `i` in a fixed enumeration, `0 ≤ i < order`; index 0 is zero.
    fn from_index(&self, i: u64) -> Self::Elem;
    fn to_index(&self, a: Self::Elem) -> u64;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    /// `a + c·b`, the row-operation kernel.
    fn mul_add(&self, a: Self::Elem, c: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.mul(c, b))
    }
}

/// `F_p` with residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, FieldError> {
        if !poly::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }
}

impl FiniteField for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }
    fn order(&self) -> u64 {
        self.p as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        poly::mul_mod(a, b, self.p)
    }
    fn inv(&self, a: u32) -> Option<u32> {
        poly::inv_mod(a, self.p)
    }
    fn from_index(&self, i: u64) -> u32 {
        i as u32
    }
    fn to_index(&self, a: u32) -> u64 {
        a as u64
    }
}

/// Above this order, addition for `e > 1` is done digit by digit instead of by table.
const ADD_TABLE_LIMIT: u64 = 256;
/// Largest field order for which log/exp tables are built.
pub const MAX_SMALL_FIELD_ORDER: u64 = 1 << 22;

#[derive(Debug, PartialEq, Eq)]
struct Tables {
    p: u32,
    e: usize,
    q: u64,
    modulus: Vec<u32>,
    /// exp[i] = g^i for 0 ≤ i < 2(q-1)
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// `GF(p^e) = F_p[y] / (modulus)` with table-driven multiplication.
///
/// Cloning is cheap (the tables are shared).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallField {
    t: Arc<Tables>,
}

impl SmallField {
    /// Builds `GF(p^e)`; without a modulus, the smallest monic irreducible is used.
    pub fn new(p: u32, e: usize, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        let spec = make_field(p, e, modulus)?;
        let q = (p as u64)
            .checked_pow(e as u32)
            .filter(|&q| q <= MAX_SMALL_FIELD_ORDER)
            .ok_or(FieldError::FieldTooLarge { p, e })?;
        let modulus = spec.modulus().to_vec();
        let digits = |mut i: u64| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let d = (i % p as u64) as u32;
                    i /= p as u64;
                    d
                })
                .collect()
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64) as u32 };

        let neg: Vec<u32> = (0..q)
            .map(|i| encode(&digits(i).iter().map(|&d| (p - d) % p).collect::<Vec<_>>()))
            .collect();

        // primitive element: g^((q-1)/r) != 1 for every prime r | q-1
        let factors = poly::prime_factors(q - 1);
        let one = vec![1u32];
        let mut generator = None;
        for cand in 1..q {
            let g = poly::trim(digits(cand));
            if factors
                .iter()
                .all(|&r| poly::pow_rem(&g, ((q - 1) / r) as u128, &modulus, p) != one)
            {
                generator = Some(g);
                break;
            }
        }
        let g = generator.expect("multiplicative group of a finite field is cyclic");
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for i in 0..order {
            let mut c = cur.clone();
            c.resize(e, 0);
            let code = encode(&c);
            exp[i] = code;
            log[code as usize] = i as u32;
            cur = poly::mul_rem(&cur, &g, &modulus, p);
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        if order == 0 {
            exp[0] = 1;
        }

        let add = (e > 1 && p != 2 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                let da = digits(a);
                for b in 0..q {
                    let db = digits(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                    table[(a * q + b) as usize] = encode(&s);
                }
            }
            table
        });

        Ok(SmallField { t: Arc::new(Tables { p, e, q, modulus, exp, log, neg, add }) })
    }

    pub fn prime(p: u32) -> Result<Self, FieldError> {
        Self::new(p, 1, Some(&[0, 1]))
    }

    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn e(&self) -> usize {
        self.t.e
    }

    pub fn q(&self) -> u64 {
        self.t.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    /// Coefficients `a_0 … a_{e-1}` of an element.
    pub fn to_coeffs(&self, a: u32) -> Vec<u32> {
        let p = self.t.p;
        let mut i = a;
        (0..self.t.e)
            .map(|_| {
                let d = i % p;
                i /= p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<u32, FieldError> {
        let p = self.t.p;
        if coeffs.len() != self.t.e {
            return Err(FieldError::DegreeMismatch { expected: self.t.e, found: coeffs.len() });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(FieldError::CoefficientOutOfRange { value: c, p });
        }
        Ok(coeffs.iter().rev().fold(0u32, |acc, &d| acc * p + d))
    }

    pub fn contains(&self, a: u32) -> bool {
        (a as u64) < self.t.q
    }

    pub fn pow(&self, a: u32, exp: u64) -> u32 {
        if exp == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = self.t.q - 1;
        let l = (self.t.log[a as usize] as u64 * (exp % order)) % order;
        self.t.exp[l as usize]
    }
}

impl FiniteField for SmallField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.t.p
    }
    fn order(&self) -> u64 {
        self.t.q
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        let t = &*self.t;
        if t.e == 1 {
            let s = a + b;
            return if s >= t.p { s - t.p } else { s };
        }
        if t.p == 2 {
            return a ^ b;
        }
        if let Some(table) = &t.add {
            return table[(a as u64 * t.q + b as u64) as usize];
        }
        let (mut x, mut y, mut out, mut place) = (a, b, 0u32, 1u32);
        for _ in 0..t.e {
            let d = (x % t.p + y % t.p) % t.p;
            out += d * place;
            place *= t.p;
            x /= t.p;
            y /= t.p;
        }
        out
    }

    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.t.neg[a as usize]
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.t;
        if t.e == 1 {
            return poly::mul_mod(a, b, t.p);
        }
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = &*self.t;
        let order = (t.q - 1) as u32;
        Some(t.exp[((order - t.log[a as usize]) % order.max(1)) as usize])
    }

    fn from_index(&self, i: u64) -> u32 {
        i as u32
    }

    fn to_index(&self, a: u32) -> u64 {
        a as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axioms<F: FiniteField<Elem = u32>>(f: &F) {
        let q = f.order();
        for a in 0..q {
            let a = f.from_index(a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            assert_eq!(f.mul(a, f.one()), a);
            if a != f.zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in 0..q {
                let b = f.from_index(b);
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in [0, 1, q - 1] {
                    let c = f.from_index(c);
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms() {
        axioms(&PrimeField::new(7).unwrap());
        axioms(&SmallField::prime(5).unwrap());
        axioms(&SmallField::new(2, 3, None).unwrap());
        axioms(&SmallField::new(3, 2, None).unwrap());
        axioms(&SmallField::new(5, 2, None).unwrap());
        axioms(&SmallField::new(2, 1, None).unwrap());
    }

    #[test]
    fn digitwise_addition_for_large_odd_fields() {
        // 3^6 = 729 exceeds the add-table limit
        let f = SmallField::new(3, 6, None).unwrap();
        let a = f.from_coeffs(&[1, 2, 0, 1, 2, 2]).unwrap();
        let b = f.from_coeffs(&[2, 2, 1, 0, 2, 1]).unwrap();
        assert_eq!(f.to_coeffs(f.add(a, b)), vec![0, 1, 1, 1, 1, 0]);
        assert_eq!(f.add(a, f.neg(a)), 0);
    }

    #[test]
    fn multiplication_agrees_with_polynomials() {
        let f = SmallField::new(2, 4, None).unwrap();
        let m = f.modulus().to_vec();
        for a in 0..16u32 {
            for b in 0..16u32 {
                let pa = poly::trim(f.to_coeffs(a));
                let pb = poly::trim(f.to_coeffs(b));
                let mut prod = poly::mul_rem(&pa, &pb, &m, 2);
                prod.resize(4, 0);
                assert_eq!(f.to_coeffs(f.mul(a, b)), prod);
            }
        }
    }
}
