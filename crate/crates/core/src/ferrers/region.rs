use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Cell, DiagramError, FerrersDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionKind {
    /// Rows `d-j..=n`, columns `1..=n-j`.
    S,
    /// `S ∩ T_n`.
    T,
    /// The complement of `S` in the grid.
    L,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub kind: RegionKind,
    pub n: usize,
    pub d: usize,
    pub j: usize,
    pub cells: BTreeSet<Cell>,
}

fn in_s(n: usize, d: usize, j: usize, (r, c): Cell) -> bool {
    r + j >= d && r <= n && c >= 1 && c + j <= n
}

/// Builds `S_{n,d,j}`, `T_{n,d,j}` or `L_{n,d,j}` for `2 ≤ d ≤ n`, `j < d`.
pub fn region(kind: RegionKind, n: usize, d: usize, j: usize) -> Result<Region, DiagramError> {
    if d < 2 || d > n {
        return Err(DiagramError::OutOfRange(format!("distance {d} not in 2..={n}")));
    }
    if j >= d {
        return Err(DiagramError::OutOfRange(format!("index j = {j} not in 0..{d}")));
    }
    let grid = (1..=n).flat_map(|r| (1..=n).map(move |c| (r, c)));
    let cells = match kind {
        RegionKind::S => grid.filter(|&x| in_s(n, d, j, x)).collect(),
        RegionKind::T => grid.filter(|&(r, c)| r <= c && in_s(n, d, j, (r, c))).collect(),
        RegionKind::L => grid.filter(|&x| !in_s(n, d, j, x)).collect(),
    };
    Ok(Region { kind, n, d, j, cells })
}

impl Region {
    pub fn contains(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// `|D ∩ R|`.
    pub fn count_in(&self, dia: &FerrersDiagram) -> usize {
        self.cells.iter().filter(|&&c| dia.contains(c)).count()
    }
}

/// The cells `(r, r+i-1)` of the `i`-th diagonal of the `n × n` grid.
pub fn diagonal(n: usize, i: usize) -> Vec<Cell> {
    if i == 0 || i > n {
        return Vec::new();
    }
    (1..=n + 1 - i).map(|r| (r, r + i - 1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_n8_d4_j1() {
        let s = region(RegionKind::S, 8, 4, 1).unwrap();
        let l = region(RegionKind::L, 8, 4, 1).unwrap();
        let t = region(RegionKind::T, 8, 4, 1).unwrap();
        assert_eq!((s.len(), l.len(), t.len()), (42, 22, 15));
        assert!(s.cells.is_disjoint(&l.cells));
        assert!(t.cells.is_subset(&s.cells));
    }

    #[test]
    fn last_index_is_leading_columns() {
        let s = region(RegionKind::S, 6, 3, 2).unwrap();
        let expected: BTreeSet<Cell> = (1..=6).flat_map(|r| (1..=4).map(move |c| (r, c))).collect();
        assert_eq!(s.cells, expected);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(region(RegionKind::S, 5, 1, 0).is_err());
        assert!(region(RegionKind::S, 5, 6, 0).is_err());
        assert!(region(RegionKind::L, 5, 3, 3).is_err());
    }

    #[test]
    fn s_count_is_nu() {
        let dia = FerrersDiagram::from_columns(&[0, 1, 1, 4, 5]).unwrap();
        for j in 0..3 {
            let s = region(RegionKind::S, 5, 3, j).unwrap();
            assert_eq!(s.count_in(&dia), dia.nu_j(3, j).unwrap());
        }
    }

    #[test]
    fn diagonals() {
        assert_eq!(diagonal(4, 1), vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(diagonal(4, 4), vec![(1, 4)]);
        assert!(diagonal(4, 5).is_empty());
    }
}
