//! Reference data: moduli, compatible bases given as
//! exponents of the modulus root `γ`, and the expected matrices.

/// `γ^5 + 4γ + 3` over `F_5`.
pub const F5_MODULUS: [u32; 6] = [3, 4, 0, 0, 0, 1];
pub const F5_BASIS_EXPONENTS: [u128; 5] = [0, 2968, 1531, 1556, 1566];
pub const F5_DIAGRAM: [usize; 5] = [1, 3, 4, 5, 5];
pub const F5_DISTANCE: usize = 4;

/// Generators of the `[D, 4, 4]` code over `F_5`, in construction order.
pub const F5_GENERATORS: [[[u32; 5]; 5]; 4] = [
    [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]],
    [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1], [0, 0, 0, 0, 0]],
    [[0, 0, 0, 0, 4], [0, 1, 1, 0, 0], [0, 0, 2, 2, 0], [0, 0, 0, 3, 3], [0, 0, 0, 0, 4]],
    [[0, 0, 0, 1, 0], [0, 0, 0, 0, 0], [0, 1, 2, 1, 0], [0, 0, 3, 1, 3], [0, 0, 0, 1, 2]],
];

/// `γ^8 + γ^4 + γ^3 + γ^2 + 1` over `F_2`.
pub const F2_MODULUS: [u32; 9] = [1, 0, 1, 1, 1, 0, 0, 0, 1];
pub const F2_BASIS_EXPONENTS: [u128; 8] = [0, 170, 136, 204, 222, 38, 143, 5];

/// `f = id + γ^68 σ̄²` as `(σ̄-power, γ-exponent)` terms.
pub const F2_PHI_TERMS: [(usize, u128); 2] = [(0, 0), (2, 68)];

pub const F2_PHI_MATRIX: [[u32; 8]; 8] = [
    [1, 0, 1, 1, 0, 0, 1, 0],
    [0, 1, 1, 1, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, 0, 1, 1],
    [0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
];

pub const F2_UT_DIAGRAM: [usize; 6] = [1, 2, 3, 4, 5, 6];
pub const F2_UT_DISTANCE: usize = 4;

/// The six cropped generators of the `[D, 6, 4]` code over `F_2`.
pub const F2_UT_GENERATORS: [[[u32; 6]; 6]; 6] = [
    [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ],
    [
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0],
    ],
    [
        [0, 0, 1, 0, 1, 0],
        [0, 1, 1, 1, 0, 1],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 1, 1],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1],
    ],
    [
        [0, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ],
    [
        [0, 0, 0, 1, 0, 1],
        [0, 0, 1, 1, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 0, 1, 1],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ],
    [
        [0, 0, 0, 0, 0, 1],
        [0, 0, 0, 1, 1, 1],
        [0, 0, 1, 0, 1, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0],
    ],
];

pub const MDS_DIAGRAM: [usize; 8] = [0, 2, 2, 3, 3, 5, 6, 8];
pub const MDS_DISTANCE: usize = 4;
pub const MDS_SINGLETON_J: usize = 1;
pub const MDS_Y: [usize; 4] = [2, 3, 4, 5];
pub const MDS_ELL: usize = 2;
pub const MDS_D_PRIME: [usize; 8] = [0, 1, 2, 3, 3, 5, 6, 7];
pub const MDS_D_DOUBLE_PRIME: [usize; 8] = [0, 1, 2, 3, 4, 5, 6, 7];
pub const MDS_NU_MIN_D_DOUBLE_PRIME: usize = 10;
pub const MDS_DIMENSION: usize = 9;

pub const FER5_DIAGRAM: [usize; 5] = [0, 1, 1, 4, 5];
pub const FER5_DISTANCE: usize = 3;
pub const FER5_NU: [usize; 3] = [5, 3, 2];
pub const FER5_ADJOINT: [usize; 5] = [1, 2, 2, 2, 4];

pub const NU_TABLE_D1: [usize; 5] = [0, 0, 1, 3, 4];
pub const NU_TABLE_D2: [usize; 5] = [1, 2, 4, 5, 5];
/// Rows `(d, ν_min(D1), ν_MDS(D1), ν_min(D2), ν_MDS(D2))`.
pub const NU_TABLE: [(usize, usize, usize, usize, usize); 4] =
    [(2, 4, 4, 12, 10), (3, 1, 1, 7, 6), (4, 0, 0, 3, 3), (5, 0, 0, 1, 1)];

/// Converts a fixed-size array of rows into a [`crate::linalg::Matrix`].
pub fn matrix<const N: usize>(rows: &[[u32; N]; N]) -> crate::linalg::Matrix<u32> {
    crate::linalg::Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
}
