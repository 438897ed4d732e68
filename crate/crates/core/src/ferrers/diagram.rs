use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::DiagramError;

/// A cell `(row, column)`, both 1-based, row 1 at the top.
pub type Cell = (usize, usize);

/// A top-right justified Ferrers diagram of order `n`, stored as its column
/// counts `0 ≤ c_1 ≤ … ≤ c_n ≤ n`. Column `j` holds rows `1..=c_j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct FerrersDiagram {
    n: usize,
    columns: Vec<usize>,
}

#[derive(Deserialize)]
struct RawDiagram {
    n: usize,
    columns: Vec<usize>,
}

impl TryFrom<RawDiagram> for FerrersDiagram {
    type Error = DiagramError;

    fn try_from(raw: RawDiagram) -> Result<Self, Self::Error> {
        if raw.columns.len() != raw.n {
            return Err(DiagramError::LengthMismatch { n: raw.n, len: raw.columns.len() });
        }
        FerrersDiagram::from_columns(&raw.columns)
    }
}

impl FerrersDiagram {
    /// Validates nondecreasing column counts bounded by the order `n = c.len()`.
    pub fn from_columns(columns: &[usize]) -> Result<Self, DiagramError> {
        let n = columns.len();
        if n == 0 {
            return Err(DiagramError::EmptyOrder);
        }
        for (i, &c) in columns.iter().enumerate() {
            if c > n {
                return Err(DiagramError::ColumnExceedsOrder { column: i + 1, value: c, n });
            }
            if i > 0 && columns[i - 1] > c {
                return Err(DiagramError::NotNondecreasing { column: i + 1 });
            }
        }
        Ok(FerrersDiagram { n, columns: columns.to_vec() })
    }

    /// Rebuilds a diagram from its cell set, checking both closure properties.
    pub fn from_cells<'a, I>(n: usize, cells: I) -> Result<Self, DiagramError>
    where
        I: IntoIterator<Item = &'a Cell>,
    {
        if n == 0 {
            return Err(DiagramError::EmptyOrder);
        }
        let set: BTreeSet<Cell> = cells.into_iter().copied().collect();
        if let Some(&(i, j)) = set.iter().find(|&&(i, j)| i == 0 || j == 0 || i > n || j > n) {
            return Err(DiagramError::CellOutOfGrid { row: i, column: j, n });
        }
        for &(i, j) in &set {
            let right_closed = (j..=n).all(|jj| set.contains(&(i, jj)));
            let up_closed = (1..=i).all(|ii| set.contains(&(ii, j)));
            if !right_closed || !up_closed {
                return Err(DiagramError::NotTopRightJustified { row: i, column: j });
            }
        }
        let columns = (1..=n).map(|j| set.iter().filter(|&&(_, c)| c == j).count()).collect();
        Ok(FerrersDiagram { n, columns })
    }

    pub fn empty(n: usize) -> Self {
        FerrersDiagram { n, columns: vec![0; n] }
    }

    pub fn full(n: usize) -> Self {
        FerrersDiagram { n, columns: vec![n; n] }
    }

    /// `T_n = (1, 2, …, n)`, the upper-triangular diagram.
    pub fn upper_triangular(n: usize) -> Self {
        FerrersDiagram { n, columns: (1..=n).collect() }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// `c_j`, 1-based.
    pub fn column(&self, j: usize) -> usize {
        self.columns[j - 1]
    }

    pub fn contains(&self, (i, j): Cell) -> bool {
        (1..=self.n).contains(&j) && i >= 1 && i <= self.columns[j - 1]
    }

    pub fn size(&self) -> usize {
        self.columns.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.iter().all(|&c| c == 0)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.columns.iter().enumerate().flat_map(|(j, &c)| (1..=c).map(move |i| (i, j + 1)))
    }

    pub fn to_cells(&self) -> BTreeSet<Cell> {
        self.cells().collect()
    }

    pub fn is_subdiagram_of(&self, other: &FerrersDiagram) -> bool {
        self.n == other.n && self.columns.iter().zip(&other.columns).all(|(a, b)| a <= b)
    }

    /// Reflection across the antidiagonal: `{(n+1-j, n+1-i) : (i, j) ∈ D}`.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let columns = (1..=n).map(|jp| self.columns.iter().filter(|&&c| c + jp > n).count()).collect();
        FerrersDiagram { n, columns }
    }

    /// Largest `h` such that `p^h` divides `n` and every `c_i`, and the columns
    /// are constant on each block of `p^h` columns counted from the right.
    pub fn p_height(&self, p: u32) -> u32 {
        let p = p as usize;
        let mut max_h = 0u32;
        let mut block = 1usize;
        while self.n.is_multiple_of(block * p) {
            block *= p;
            max_h += 1;
        }
        (0..=max_h).rev().find(|&h| self.height_conditions_hold(p.pow(h))).unwrap_or(0)
    }

    fn height_conditions_hold(&self, block: usize) -> bool {
        if !self.n.is_multiple_of(block) || self.columns.iter().any(|&c| c % block != 0) {
            return false;
        }
        // the right-aligned blocks coincide with the left-aligned ones since block | n
        self.columns.chunks(block).all(|chunk| chunk.iter().all(|&c| c == chunk[0]))
    }

    /// The diagram of order `n / p^h` with `c'_i = c_{p^h i} / p^h`.
    pub fn p_contraction(&self, p: u32) -> Self {
        let block = (p as usize).pow(self.p_height(p));
        let columns = (1..=self.n / block).map(|i| self.columns[block * i - 1] / block).collect();
        FerrersDiagram { n: self.n / block, columns }
    }

    pub fn is_monotone(&self) -> bool {
        let n = self.n;
        self.columns.windows(2).all(|w| !(w[0] > 0 && w[0] < n) || w[1] > w[0])
    }

    pub fn is_strictly_monotone(&self) -> bool {
        self.columns.windows(2).all(|w| w[0] == 0 || w[1] > w[0])
    }

    pub fn is_convex(&self) -> bool {
        self.columns.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_initially_convex(&self) -> bool {
        self.columns[0] <= 1 && self.is_convex()
    }

    pub fn is_p_monotone(&self, p: u32) -> bool {
        self.p_contraction(p).is_monotone()
    }

    pub fn is_p_convex(&self, p: u32) -> bool {
        self.p_contraction(p).is_convex()
    }

    pub fn is_strictly_p_monotone(&self, p: u32) -> bool {
        self.p_contraction(p).is_strictly_monotone()
    }

    pub fn is_initially_p_convex(&self, p: u32) -> bool {
        self.p_contraction(p).is_initially_convex()
    }

    fn check_distance(&self, d: usize) -> Result<(), DiagramError> {
        if d == 0 || d > self.n {
            return Err(DiagramError::OutOfRange(format!("distance {d} not in 1..={}", self.n)));
        }
        Ok(())
    }

    /// `ν_j(D, d) = Σ_{i=1}^{n-j} max(0, c_i - d + 1 + j)`.
    pub fn nu_j(&self, d: usize, j: usize) -> Result<usize, DiagramError> {
        self.check_distance(d)?;
        if j >= d {
            return Err(DiagramError::OutOfRange(format!("index j = {j} not in 0..{d}")));
        }
        Ok(self.columns[..self.n - j].iter().map(|&c| (c + 1 + j).saturating_sub(d)).sum())
    }

    /// `(ν_0, …, ν_{d-1})`.
    pub fn nu_values(&self, d: usize) -> Result<Vec<usize>, DiagramError> {
        (0..d).map(|j| self.nu_j(d, j)).collect()
    }

    /// The upper bound on the dimension of a code on `D` with minimum rank `d`.
    pub fn nu_min(&self, d: usize) -> Result<usize, DiagramError> {
        self.check_distance(d)?;
        if d == 1 {
            return Ok(self.size());
        }
        Ok(self.nu_values(d)?.into_iter().min().expect("d ≥ 1"))
    }

    /// `|D ∩ Δ_i|` where `Δ_i = {(r, r+i-1) : 1 ≤ r ≤ n-i+1}`.
    pub fn diagonal_count(&self, i: usize) -> Result<usize, DiagramError> {
        if i == 0 || i > self.n {
            return Err(DiagramError::OutOfRange(format!("diagonal {i} not in 1..={}", self.n)));
        }
        Ok((1..=self.n + 1 - i).filter(|&r| r <= self.columns[r + i - 2]).count())
    }

    /// `Σ_i max(0, |D ∩ Δ_i| - d + 1)`.
    pub fn nu_mds(&self, d: usize) -> Result<usize, DiagramError> {
        self.check_distance(d)?;
        let mut total = 0;
        for i in 1..=self.n {
            total += (self.diagonal_count(i)? + 1).saturating_sub(d);
        }
        Ok(total)
    }

    pub fn is_mds_constructible(&self, d: usize) -> Result<bool, DiagramError> {
        Ok(self.nu_min(d)? == self.nu_mds(d)?)
    }

    fn check_singleton_distance(&self, d: usize) -> Result<(), DiagramError> {
        if d < 2 || d > self.n {
            return Err(DiagramError::OutOfRange(format!("distance {d} not in 2..={}", self.n)));
        }
        Ok(())
    }

    /// All `j` with `ν_j(D, d) = ν_min(D, d)`, ascending.
    pub fn singleton_indices(&self, d: usize) -> Result<Vec<usize>, DiagramError> {
        self.check_singleton_distance(d)?;
        let nu = self.nu_values(d)?;
        let min = *nu.iter().min().expect("d ≥ 2");
        Ok(nu.iter().enumerate().filter(|&(_, &v)| v == min).map(|(j, _)| j).collect())
    }

    pub fn is_j_singleton(&self, d: usize, j: usize) -> Result<bool, DiagramError> {
        self.check_singleton_distance(d)?;
        Ok(self.nu_j(d, j)? == self.nu_min(d)?)
    }

    /// Prepends zero columns to reach order `p^m`, `m = min{i : p^i ≥ n}`.
    /// Returns the embedded diagram and the number of prepended columns.
    pub fn embed_strictly_monotone(&self, p: u32) -> Result<(FerrersDiagram, usize), DiagramError> {
        if !self.is_strictly_p_monotone(p) {
            return Err(DiagramError::NotStrictlyPMonotone { p });
        }
        let mut big = 1usize;
        while big < self.n {
            big *= p as usize;
        }
        let offset = big - self.n;
        let mut columns = vec![0; offset];
        columns.extend_from_slice(&self.columns);
        Ok((FerrersDiagram { n: big, columns }, offset))
    }

    /// `D ∩ E` for diagrams of the same order.
    pub fn intersection(&self, other: &FerrersDiagram) -> Self {
        assert_eq!(self.n, other.n);
        let columns = self.columns.iter().zip(&other.columns).map(|(&a, &b)| a.min(b)).collect();
        FerrersDiagram { n: self.n, columns }
    }
}

impl fmt::Display for FerrersDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FerrersDiagram {
    type Err = DiagramError;

    /// Parses `"0,1,1,4,5"`; the order is the number of entries.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut columns = Vec::new();
        let mut offset = 0;
        for tok in s.split(',') {
            let t = tok.trim();
            let v = t.parse::<usize>().map_err(|_| DiagramError::Parse {
                position: offset + tok.find(t).unwrap_or(0) + 1,
                token: t.to_string(),
            })?;
            columns.push(v);
            offset += tok.len() + 1;
        }
        FerrersDiagram::from_columns(&columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(cols: &[usize]) -> FerrersDiagram {
        FerrersDiagram::from_columns(cols).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(
            FerrersDiagram::from_columns(&[0, 2, 1]).unwrap_err(),
            DiagramError::NotNondecreasing { column: 3 }
        );
        assert_eq!(
            FerrersDiagram::from_columns(&[0, 1, 4]).unwrap_err(),
            DiagramError::ColumnExceedsOrder { column: 3, value: 4, n: 3 }
        );
        let holes: BTreeSet<Cell> = [(2, 2)].into_iter().collect();
        assert!(matches!(
            FerrersDiagram::from_cells(2, &holes),
            Err(DiagramError::NotTopRightJustified { .. })
        ));
    }

    #[test]
    fn fer5_cells() {
        let dia = d(&[0, 1, 1, 4, 5]);
        let cells = dia.to_cells();
        assert_eq!(cells.len(), 11);
        let expected: BTreeSet<Cell> = [
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 5),
            (4, 4),
            (4, 5),
            (5, 5),
        ]
        .into_iter()
        .collect();
        assert_eq!(cells, expected);
        assert_eq!(FerrersDiagram::from_cells(5, &cells).unwrap(), dia);
        assert!(FerrersDiagram::empty(4).to_cells().is_empty());
    }

    #[test]
    fn adjoint_examples() {
        assert_eq!(d(&[0, 1, 1, 4, 5]).adjoint(), d(&[1, 2, 2, 2, 4]));
        let t = FerrersDiagram::upper_triangular(6);
        assert_eq!(t.adjoint(), t);
        // monotone examples are adjoint to the convex examples, in order
        let monotone = [[0, 0, 1, 3, 4], [1, 2, 4, 5, 5], [2, 3, 5, 5, 5], [0, 1, 4, 5, 5]];
        let convex = [[0, 1, 2, 2, 3], [2, 3, 3, 4, 5], [3, 3, 4, 5, 5], [2, 3, 3, 3, 4]];
        for (m, c) in monotone.iter().zip(&convex) {
            assert_eq!(d(m).adjoint(), d(c));
        }
    }

    #[test]
    fn p_height_examples() {
        let dia = d(&[4, 4, 4, 4, 8, 8, 8, 8]);
        assert_eq!(dia.p_height(2), 2);
        assert_eq!(dia.p_contraction(2), d(&[1, 2]));
        assert!(dia.is_p_monotone(2));
        assert_eq!(d(&[1, 2, 3, 4, 5, 6]).p_height(2), 0);
        assert_eq!(d(&[0, 0, 1, 2]).p_height(3), 0);
        // the left block {c_1, c_2} = {0, 2} is not constant
        let odd = d(&[0, 2, 2, 2]);
        assert_eq!(odd.p_height(2), 0);
        assert_eq!(odd.p_contraction(2), odd);
        // a genuinely 2-blocked one
        assert_eq!(d(&[0, 0, 2, 2]).p_height(2), 1);
        assert_eq!(d(&[0, 0, 2, 2]).p_contraction(2), d(&[0, 1]));
    }

    #[test]
    fn class_predicates_on_examples() {
        for m in [[0, 0, 1, 3, 4], [1, 2, 4, 5, 5], [2, 3, 5, 5, 5], [0, 1, 4, 5, 5]] {
            assert!(d(&m).is_monotone(), "{m:?}");
        }
        for c in [[0, 1, 2, 2, 3], [2, 3, 3, 4, 5], [3, 3, 4, 5, 5], [2, 3, 3, 3, 4]] {
            assert!(d(&c).is_convex(), "{c:?}");
        }
        for n in 1..6 {
            let (e, f) = (FerrersDiagram::empty(n), FerrersDiagram::full(n));
            assert!(e.is_monotone() && e.is_convex() && e.is_strictly_monotone() && e.is_initially_convex());
            assert!(f.is_monotone() && f.is_convex());
            assert_eq!(f.is_strictly_monotone(), n == 1);
            assert_eq!(f.is_initially_convex(), n == 1);
        }
        assert!(d(&[0, 0, 1, 3, 4]).is_strictly_monotone());
        assert!(!d(&[1, 2, 4, 5, 5]).is_strictly_monotone());
        assert!(!d(&[1, 2, 2, 2, 4]).is_convex());
        assert!(d(&[2, 3, 3, 3, 4]).is_convex() && !d(&[2, 3, 3, 3, 4]).is_initially_convex());
        assert!(d(&[0, 1, 2, 2, 3]).is_initially_convex());
    }

    #[test]
    fn nu_values_fer5() {
        let dia = d(&[0, 1, 1, 4, 5]);
        assert_eq!(dia.nu_values(3).unwrap(), vec![5, 3, 2]);
        assert_eq!(dia.nu_min(3).unwrap(), 2);
        assert_eq!(dia.nu_min(1).unwrap(), 11);
        assert!(dia.nu_j(3, 3).is_err());
        assert!(dia.nu_min(6).is_err());
    }

    #[test]
    fn nu_table() {
        let d1 = d(&[0, 0, 1, 3, 4]);
        let d2 = d(&[1, 2, 4, 5, 5]);
        let rows = [(2, 4, 4, 12, 10), (3, 1, 1, 7, 6), (4, 0, 0, 3, 3), (5, 0, 0, 1, 1)];
        for (dd, a, b, c, e) in rows {
            assert_eq!(d1.nu_min(dd).unwrap(), a);
            assert_eq!(d1.nu_mds(dd).unwrap(), b);
            assert_eq!(d2.nu_min(dd).unwrap(), c);
            assert_eq!(d2.nu_mds(dd).unwrap(), e);
        }
        assert!(!d2.is_mds_constructible(2).unwrap());
        assert!(d2.is_mds_constructible(4).unwrap());
    }

    #[test]
    fn mds_and_singleton_example() {
        let dia = d(&[0, 2, 2, 3, 3, 5, 6, 8]);
        assert_eq!(dia.nu_min(4).unwrap(), 9);
        assert_eq!(dia.nu_mds(4).unwrap(), 9);
        assert_eq!(dia.singleton_indices(4).unwrap(), vec![1]);
        assert!(dia.is_j_singleton(4, 1).unwrap());
        assert!(dia.singleton_indices(1).is_err());
    }

    #[test]
    fn triangular_closed_forms() {
        for n in 1..=9 {
            let t = FerrersDiagram::upper_triangular(n);
            for dd in 1..=n {
                let k = n - dd + 1;
                assert_eq!(t.nu_min(dd).unwrap(), k * (k + 1) / 2);
                assert!(t.is_mds_constructible(dd).unwrap());
                if dd >= 2 {
                    assert_eq!(t.singleton_indices(dd).unwrap(), (0..dd).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let dia = d(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(dia.embed_strictly_monotone(2).unwrap(), (d(&[0, 0, 1, 2, 3, 4, 5, 6]), 2));
        assert_eq!(dia.embed_strictly_monotone(3).unwrap(), (d(&[0, 0, 0, 1, 2, 3, 4, 5, 6]), 3));
        let t8 = FerrersDiagram::upper_triangular(8);
        assert_eq!(t8.embed_strictly_monotone(2).unwrap(), (t8.clone(), 0));
        assert_eq!(
            d(&[1, 2, 4, 5, 5]).embed_strictly_monotone(2).unwrap_err(),
            DiagramError::NotStrictlyPMonotone { p: 2 }
        );
        // strictly 2-monotone but not strictly monotone: (2,2,4,4,6,6) has 2-height 1
        let blocky = d(&[2, 2, 4, 4, 6, 6]);
        let (big, off) = blocky.embed_strictly_monotone(2).unwrap();
        assert_eq!((big.columns(), off), (&[0, 0, 2, 2, 4, 4, 6, 6][..], 2));
        assert!(big.is_strictly_p_monotone(2));
    }

    #[test]
    fn parse_and_display() {
        let dia: FerrersDiagram = "0, 1,1,4,5".parse().unwrap();
        assert_eq!(dia.to_string(), "0,1,1,4,5");
        match "0,1,x".parse::<FerrersDiagram>() {
            Err(DiagramError::Parse { position, token }) => {
                assert_eq!(position, 5);
                assert_eq!(token, "x");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_shape() {
        let dia = d(&[0, 1, 1, 4, 5]);
        let s = serde_json::to_string(&dia).unwrap();
        assert_eq!(s, r#"{"n":5,"columns":[0,1,1,4,5]}"#);
        assert_eq!(serde_json::from_str::<FerrersDiagram>(&s).unwrap(), dia);
        assert!(serde_json::from_str::<FerrersDiagram>(r#"{"n":4,"columns":[0,1,1,4,5]}"#).is_err());
    }
}
