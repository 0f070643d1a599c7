//! Dense linear algebra over a prime field.

use crate::ring::PrimeField;

/// Incremental row echelon form. Rows are inserted one at a time and
/// reduced against the pivots found so far.
pub struct Echelon {
    field: PrimeField,
    ncols: usize,
    pivot_of_col: Vec<Option<usize>>,
    rows: Vec<Vec<u32>>,
    pivot_cols: Vec<usize>,
}

impl Echelon {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        Echelon { field, ncols, pivot_of_col: vec![None; ncols], rows: Vec::new(), pivot_cols: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Reduces `row` against the current pivots, in place.
    pub fn reduce(&self, row: &mut [u32]) {
        let p = self.field.characteristic() as u64;
        for col in 0..self.ncols {
            let c = row[col];
            if c == 0 {
                continue;
            }
            if let Some(k) = self.pivot_of_col[col] {
                let piv = &self.rows[k];
                let m = p - c as u64;
                for j in col..self.ncols {
                    let v = piv[j];
                    if v != 0 {
                        row[j] = ((row[j] as u64 + m * v as u64) % p) as u32;
                    }
                }
            }
        }
    }

    /// Inserts a row; returns whether it was independent of the previous ones.
    pub fn insert(&mut self, mut row: Vec<u32>) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        if self.is_full() {
            return false;
        }
        self.reduce(&mut row);
        let Some(lead) = row.iter().position(|&v| v != 0) else { return false };
        let inv = self.field.inv(row[lead]);
        for v in row.iter_mut().skip(lead) {
            *v = self.field.mul(*v, inv);
        }
        self.pivot_of_col[lead] = Some(self.rows.len());
        self.pivot_cols.push(lead);
        self.rows.push(row);
        true
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_cols
    }
}

/// Rank of a matrix given by sparse rows `(column, value)`.
pub fn sparse_rank(rows: Vec<Vec<(usize, u32)>>, ncols: usize, field: &PrimeField) -> usize {
    let mut ech = Echelon::new(*field, ncols);
    for r in rows {
        if ech.is_full() {
            break;
        }
        let mut dense = vec![0u32; ncols];
        for (c, v) in r {
            dense[c] = field.add(dense[c], v);
        }
        ech.insert(dense);
    }
    ech.rank()
}

pub fn rank(rows: &[Vec<u32>], field: &PrimeField) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut ech = Echelon::new(*field, first.len());
    for r in rows {
        ech.insert(r.clone());
    }
    ech.rank()
}

/// Basis of `{v : M v = 0}` for `M` given by its rows with `ncols` columns.
pub fn nullspace(rows: &[Vec<u32>], ncols: usize, field: &PrimeField) -> Vec<Vec<u32>> {
    let f = *field;
    // reduced row echelon form
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..m.len()).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, sel);
        let inv = f.inv(m[r][col]);
        for v in m[r].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][col] != 0 {
                let c = m[i][col];
                for j in 0..ncols {
                    let pv = m[r][j];
                    if pv != 0 {
                        m[i][j] = f.sub(m[i][j], f.mul(c, pv));
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[k][free]);
        }
        basis.push(v);
    }
    basis
}

/// Basis of `{c : c^T M = 0}`, i.e. linear relations among the rows.
pub fn left_kernel(rows: &[Vec<u32>], ncols: usize, field: &PrimeField) -> Vec<Vec<u32>> {
    let transposed: Vec<Vec<u32>> = (0..ncols).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    nullspace(&transposed, rows.len(), field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_kernel() {
        let f = PrimeField::new(101).unwrap();
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(&rows, &f), 2);
        let ker = nullspace(&rows, 3, &f);
        assert_eq!(ker.len(), 1);
        for r in &rows {
            let s: u64 = r.iter().zip(&ker[0]).map(|(a, b)| (*a as u64) * (*b as u64)).sum();
            assert_eq!(s % 101, 0);
        }
        let lk = left_kernel(&rows, 3, &f);
        assert_eq!(lk.len(), 1);
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let f = PrimeField::new(32003).unwrap();
        let rows = vec![vec![(0, 1), (2, 5)], vec![(1, 3)], vec![(0, 2), (2, 10)]];
        assert_eq!(sparse_rank(rows, 3, &f), 2);
    }
}
