//! Matrices of polynomials viewed as maps of graded free modules.
//!
//! Column `j` is the image of the `j`-th basis vector of the source. With
//! generator degrees `col_degrees` on the source and `row_degrees` on the
//! target, entry `(i, j)` of a graded matrix is homogeneous of degree
//! `col_degrees[j] - row_degrees[i]` or zero.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groebner::{minimal_generator_indices, vec_component, vec_from_terms, vec_is_homogeneous, GbEngine, ModVec};
use crate::ideal::Ideal;
use crate::parse::parse_polynomial;
use crate::ring::{Polynomial, RingRef};

#[derive(Clone, PartialEq)]
pub struct PolyMatrix {
    ring: RingRef,
    nrows: usize,
    ncols: usize,
    entries: Vec<Polynomial>,
    row_degrees: Vec<i64>,
    col_degrees: Vec<i64>,
}

fn column_degree(ring: &RingRef, entries: &[Polynomial], nrows: usize, ncols: usize, j: usize, rows: &[i64]) -> i64 {
    (0..nrows)
        .filter_map(|i| {
            let e = &entries[i * ncols + j];
            e.leading_monomial().map(|m| ring.weighted_degree(&m) as i64 + rows[i])
        })
        .max()
        .unwrap_or(0)
}

impl PolyMatrix {
    /// Builds a matrix from its rows. Row degrees default to zero and each
    /// column degree to the largest entry degree in that column.
    pub fn new(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Invalid("ragged matrix".into()));
        }
        if rows.iter().flatten().any(|e| **e.ring() != **ring) {
            return Err(Error::RingMismatch);
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        let row_degrees = vec![0; nrows];
        let col_degrees = (0..ncols).map(|j| column_degree(ring, &entries, nrows, ncols, j, &row_degrees)).collect();
        Ok(PolyMatrix { ring: ring.clone(), nrows, ncols, entries, row_degrees, col_degrees })
    }

    pub fn parse(ring: &RingRef, rows: &[&[&str]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_polynomial(ring, s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(ring, rows)
    }

    pub fn zero(ring: &RingRef, nrows: usize, ncols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            nrows,
            ncols,
            entries: vec![Polynomial::zero(ring); nrows * ncols],
            row_degrees: vec![0; nrows],
            col_degrees: vec![0; ncols],
        }
    }

    pub fn identity(ring: &RingRef, n: usize) -> Self {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(ring);
        }
        m
    }

    /// A one-row matrix whose entries are the given polynomials.
    pub fn row(ring: &RingRef, entries: &[Polynomial]) -> Result<Self> {
        PolyMatrix::new(ring, vec![entries.to_vec()])
    }

    /// Matrix with the given columns as module vectors over `row_degrees`.
    pub fn from_columns(ring: &RingRef, row_degrees: Vec<i64>, cols: &[ModVec], col_degrees: Vec<i64>) -> Self {
        let nrows = row_degrees.len();
        let ncols = cols.len();
        let mut entries = vec![Polynomial::zero(ring); nrows * ncols];
        for (j, v) in cols.iter().enumerate() {
            for i in 0..nrows {
                entries[i * ncols + j] = vec_component(ring, v, i as u32);
            }
        }
        PolyMatrix { ring: ring.clone(), nrows, ncols, entries, row_degrees, col_degrees }
    }

    /// Declares degree shifts; fails unless every entry has the forced degree.
    pub fn with_degrees(mut self, row_degrees: Vec<i64>, col_degrees: Vec<i64>) -> Result<Self> {
        if row_degrees.len() != self.nrows || col_degrees.len() != self.ncols {
            return Err(Error::Invalid("shift list length does not match the matrix".into()));
        }
        self.row_degrees = row_degrees;
        self.col_degrees = col_degrees;
        if !self.is_graded() {
            return Err(Error::NotHomogeneous("entries do not match the declared shifts".into()));
        }
        Ok(self)
    }

    /// Keeps the row degrees and recomputes column degrees from the entries.
    pub fn with_row_degrees(mut self, row_degrees: Vec<i64>) -> Result<Self> {
        if row_degrees.len() != self.nrows {
            return Err(Error::Invalid("shift list length does not match the matrix".into()));
        }
        self.col_degrees = (0..self.ncols)
            .map(|j| column_degree(&self.ring, &self.entries, self.nrows, self.ncols, j, &row_degrees))
            .collect();
        self.row_degrees = row_degrees;
        Ok(self)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.ncols + j] = p;
    }

    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    /// Whether each entry is homogeneous of its forced degree.
    pub fn is_graded(&self) -> bool {
        (0..self.nrows).all(|i| {
            (0..self.ncols).all(|j| {
                let e = self.get(i, j);
                let want = self.col_degrees[j] - self.row_degrees[i];
                e.terms().iter().all(|(m, _)| self.ring.weighted_degree(m) as i64 == want)
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn column(&self, j: usize) -> ModVec {
        let terms = (0..self.nrows)
            .flat_map(|i| self.get(i, j).terms().iter().map(move |&(m, c)| (i as u32, m, c)))
            .collect();
        vec_from_terms(&self.ring, terms)
    }

    pub fn columns(&self) -> Vec<ModVec> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    /// Entries of a one-row or one-column matrix.
    pub fn entries_flat(&self) -> &[Polynomial] {
        &self.entries
    }

    /// The dual map, with negated shifts.
    pub fn transpose(&self) -> PolyMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            ring: self.ring.clone(),
            nrows: self.ncols,
            ncols: self.nrows,
            entries,
            row_degrees: self.col_degrees.iter().map(|d| -d).collect(),
            col_degrees: self.row_degrees.iter().map(|d| -d).collect(),
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if *self.ring != *other.ring {
            return Err(Error::RingMismatch);
        }
        if self.ncols != other.nrows {
            return Err(Error::Invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut entries = Vec::with_capacity(self.nrows * other.ncols);
        for i in 0..self.nrows {
            for j in 0..other.ncols {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.ncols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.combine(&a.mul_unchecked(b), 1);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            nrows: self.nrows,
            ncols: other.ncols,
            entries,
            row_degrees: self.row_degrees.clone(),
            col_degrees: other.col_degrees.clone(),
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix {
            ring: self.ring.clone(),
            nrows: rows.len(),
            ncols: cols.len(),
            entries,
            row_degrees: rows.iter().map(|&i| self.row_degrees[i]).collect(),
            col_degrees: cols.iter().map(|&j| self.col_degrees[j]).collect(),
        }
    }

    /// Columns of `self` followed by those of `other`.
    pub fn concat_columns(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.nrows != other.nrows {
            return Err(Error::Invalid("row counts differ".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        let mut degs = self.col_degrees.clone();
        degs.extend_from_slice(&other.col_degrees);
        Ok(PolyMatrix::from_columns(&self.ring, self.row_degrees.clone(), &cols, degs))
    }

    /// Entries mapped into another ring sharing variable names.
    pub fn map_to(&self, target: &RingRef) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|e| e.map_to(target)).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: target.clone(), entries, ..self.clone() })
    }

    /// Substitutes a value for a variable; the result lives in the ring
    /// without that variable.
    pub fn substitute_scalar(&self, var: &str, value: i64) -> Result<PolyMatrix> {
        let v = self.ring.var_index(var).ok_or_else(|| Error::UnknownVariable(var.into()))?;
        let target = self.ring.dropping(v)?;
        let entries = self
            .entries
            .iter()
            .map(|e| if e.is_zero() { Ok(Polynomial::zero(&target)) } else { e.substitute_scalar(var, value) })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { ring: target, entries, ..self.clone() })
    }

    /// Reduces every entry modulo an ideal.
    pub fn reduce_mod(&self, ideal: &Ideal) -> PolyMatrix {
        let entries = self.entries.iter().map(|e| ideal.normal_form(e)).collect();
        PolyMatrix { entries, ..self.clone() }
    }

    /// Ideal generated by the entries.
    pub fn entry_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.entries.clone())
    }

    /// Generators of the full syzygy module of the columns, as the columns
    /// of a matrix whose target is the source of `self`. Minimal when the
    /// matrix is graded.
    pub fn syzygies(&self) -> PolyMatrix {
        let (m, n) = (self.nrows, self.ncols);
        let mut degrees = self.row_degrees.clone();
        degrees.extend_from_slice(&self.col_degrees);
        // the F part sits in the first components, so it is eliminated first
        let mut engine = GbEngine::new(&self.ring, degrees);
        for j in 0..n {
            let mut v = self.column(j);
            v.push(((m + j) as u32, crate::ring::Monomial::ONE, 1));
            engine.add_generator(v);
        }
        let gb = engine.into_reduced();
        let syz: Vec<ModVec> = gb
            .elements()
            .iter()
            .filter(|v| v[0].0 as usize >= m)
            .map(|v| v.iter().map(|&(k, mon, c)| (k - m as u32, mon, c)).collect())
            .collect();
        self.kernel_matrix(syz)
    }

    fn kernel_matrix(&self, syz: Vec<ModVec>) -> PolyMatrix {
        let graded = self.is_graded();
        let degs = &self.col_degrees;
        let syz: Vec<ModVec> = if graded && syz.iter().all(|v| vec_is_homogeneous(&self.ring, degs, v)) {
            let keep = minimal_generator_indices(&self.ring, degs, &syz);
            keep.into_iter().map(|k| syz[k].clone()).collect()
        } else {
            syz
        };
        let col_degrees = syz.iter().map(|v| crate::groebner::vec_degree(&self.ring, degs, v).unwrap_or(0)).collect();
        PolyMatrix::from_columns(&self.ring, degs.clone(), &syz, col_degrees)
    }

    /// All nonzero `r x r` minors, by Laplace expansion memoized over
    /// column subsets.
    pub fn minors(&self, r: usize) -> Result<Vec<Polynomial>> {
        if r == 0 || r > self.nrows.min(self.ncols) {
            return Err(Error::OutOfRange(format!("minor size {r} for a {}x{} matrix", self.nrows, self.ncols)));
        }
        if self.ncols > 63 {
            return Err(Error::OutOfRange("more than 63 columns".into()));
        }
        let mut out: Vec<Polynomial> = Vec::new();
        let col_sets: Vec<Vec<u64>> = (0..=r).map(|k| subsets(self.ncols, k)).collect();
        for rows in combinations(self.nrows, r) {
            // level k holds determinants of the last k chosen rows
            let mut prev: HashMap<u64, Polynomial> = HashMap::new();
            prev.insert(0, Polynomial::one(&self.ring));
            for k in 1..=r {
                let row = rows[r - k];
                let mut cur: HashMap<u64, Polynomial> = HashMap::with_capacity(col_sets[k].len());
                for &set in &col_sets[k] {
                    let mut acc = Polynomial::zero(&self.ring);
                    let mut pos = 0;
                    for c in 0..self.ncols {
                        if set & (1 << c) == 0 {
                            continue;
                        }
                        let e = self.get(row, c);
                        if !e.is_zero() {
                            if let Some(sub) = prev.get(&(set & !(1 << c))) {
                                if !sub.is_zero() {
                                    let term = e.mul_unchecked(sub);
                                    let sign = if pos % 2 == 0 { 1 } else { self.ring.field().neg(1) };
                                    acc = acc.combine(&term, sign);
                                }
                            }
                        }
                        pos += 1;
                    }
                    cur.insert(set, acc);
                }
                prev = cur;
            }
            for &set in &col_sets[r] {
                if let Some(d) = prev.remove(&set) {
                    if !d.is_zero() {
                        out.push(d);
                    }
                }
            }
        }
        out.sort_by_key(|p| p.to_string());
        out.dedup();
        Ok(out)
    }

    /// Ideal of the `r x r` minors.
    pub fn minors_ideal(&self, r: usize) -> Result<Ideal> {
        Ok(Ideal::new(&self.ring, self.minors(r)?))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> =
            (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j).to_string()).collect()).collect();
        json!({
            "rows": self.nrows,
            "cols": self.ncols,
            "row_degrees": self.row_degrees,
            "col_degrees": self.col_degrees,
            "entries": rows,
        })
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    combinations(n, k).into_iter().map(|c| c.iter().fold(0u64, |acc, &i| acc | (1 << i))).collect()
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nrows {
            let row: Vec<String> = (0..self.ncols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::ring::{MonomialOrder, Ring};

    fn line_ring() -> RingRef {
        Ring::new(&["z", "w"], 32003, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn koszul_syzygy() {
        let r = Ring::projective(32003);
        let m = PolyMatrix::parse(&r, &[&["x", "y"]]).unwrap();
        let s = m.syzygies();
        assert_eq!(s.ncols(), 1);
        assert!(m.mul(&s).unwrap().is_zero());
        assert_eq!(s.col_degrees(), &[2]);
        let (a, b) = (s.get(0, 0).to_string(), s.get(1, 0).to_string());
        assert!((a == "-y" && b == "x") || (a == "y" && b == "-x"), "{a} {b}");
    }

    #[test]
    fn coprime_forms() {
        let r = line_ring();
        let m = PolyMatrix::parse(&r, &[&["z^4", "w^4"]]).unwrap();
        let s = m.syzygies();
        assert_eq!(s.ncols(), 1);
        assert!(m.mul(&s).unwrap().is_zero());
        assert_eq!(s.col_degrees(), &[8]);
    }

    /// Dimension of the degree-`d` kernel of a one-row matrix over k[z,w],
    /// by linear algebra on monomial coordinates.
    fn kernel_dim(m: &PolyMatrix, d: i64) -> usize {
        let r = m.ring();
        let f = *r.field();
        let mut src: Vec<(usize, crate::ring::Monomial)> = Vec::new();
        for j in 0..m.ncols() {
            let e = d - m.col_degrees()[j];
            if e >= 0 {
                for mon in r.monomials_of_degree(e as u32) {
                    src.push((j, mon));
                }
            }
        }
        let target = r.monomials_of_degree(d as u32);
        let rows: Vec<Vec<u32>> = src
            .iter()
            .map(|(j, mon)| {
                let p = m.get(0, *j).mul_term(mon, 1);
                target.iter().map(|t| p.coefficient(t)).collect()
            })
            .collect();
        if rows.is_empty() {
            return 0;
        }
        rows.len() - linalg::rank(&rows, &f)
    }

    fn span_dim(s: &PolyMatrix, d: i64) -> usize {
        let r = s.ring();
        let f = *r.field();
        let mut basis: Vec<(usize, crate::ring::Monomial)> = Vec::new();
        for i in 0..s.nrows() {
            let e = d - s.row_degrees()[i];
            if e >= 0 {
                for mon in r.monomials_of_degree(e as u32) {
                    basis.push((i, mon));
                }
            }
        }
        let mut rows = Vec::new();
        for j in 0..s.ncols() {
            let e = d - s.col_degrees()[j];
            if e < 0 {
                continue;
            }
            for mon in r.monomials_of_degree(e as u32) {
                let row: Vec<u32> = basis.iter().map(|(i, b)| s.get(*i, j).mul_term(&mon, 1).coefficient(b)).collect();
                rows.push(row);
            }
        }
        linalg::rank(&rows, &f)
    }

    #[test]
    fn syzygies_match_graded_kernels() {
        let r = line_ring();
        let m = PolyMatrix::parse(&r, &[&["z^4", "w^4", "z^2*w^2"]]).unwrap();
        let s = m.syzygies();
        assert!(m.mul(&s).unwrap().is_zero());
        assert!(s.is_graded());
        for d in 0..=12 {
            assert_eq!(kernel_dim(&m, d), span_dim(&s, d), "degree {d}");
        }
        let mut degs = s.col_degrees().to_vec();
        degs.sort();
        assert_eq!(degs, vec![6, 6]);
    }

    #[test]
    fn minors() {
        let r = Ring::projective(32003);
        let id = PolyMatrix::identity(&r, 2);
        assert!(id.minors_ideal(2).unwrap().is_unit());
        let m = PolyMatrix::parse(&r, &[&["x", "y", "z"], &["y", "z", "w"]]).unwrap();
        let i = m.minors_ideal(2).unwrap();
        assert_eq!(i.generators().len(), 3);
        assert!(i.contains(&parse_polynomial(&r, "x*z-y^2").unwrap()));
        assert!(m.minors(3).is_err());
        let det = PolyMatrix::parse(&r, &[&["x", "y", "0"], &["0", "z", "w"], &["1", "0", "x"]]).unwrap();
        assert_eq!(det.minors(3).unwrap()[0].to_string(), "x^2*z + y*w");
    }

    #[test]
    fn transpose_and_shifts() {
        let r = Ring::projective(32003);
        let m = PolyMatrix::parse(&r, &[&["x", "y^2"]]).unwrap();
        assert_eq!(m.col_degrees(), &[1, 2]);
        assert!(m.is_graded());
        let t = m.transpose();
        assert_eq!(t.row_degrees(), &[-1, -2]);
        assert!(t.is_graded());
        assert!(m.clone().with_degrees(vec![0], vec![1, 1]).is_err());
    }
}
