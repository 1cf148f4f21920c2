use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::labels::{subset_elements, subset_string, Labels};
use crate::error::{Error, Result};
use crate::semiring::Semiring;

/// Below this many multiply-adds a product is computed on one thread.
const PARALLEL_WORK: usize = 1 << 15;

/// A dense matrix over `S` whose rows and columns are indexed by subsets.
#[derive(Clone, Debug, PartialEq)]
pub struct IndexedMatrix<S: Semiring> {
    semiring: S,
    rows: Labels,
    cols: Labels,
    data: Vec<S::Elem>,
}

impl<S: Semiring> IndexedMatrix<S> {
    pub fn new(semiring: S, rows: Labels, cols: Labels, data: Vec<S::Elem>) -> Result<Self> {
        if data.len() != rows.len() * cols.len() {
            return Err(Error::LabelMismatch(format!(
                "{} entries for a {}x{} grid",
                data.len(),
                rows.len(),
                cols.len()
            )));
        }
        Ok(IndexedMatrix {
            semiring,
            rows,
            cols,
            data,
        })
    }

    pub fn from_fn(
        semiring: S,
        rows: Labels,
        cols: Labels,
        mut f: impl FnMut(u32, u32) -> S::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &x in rows.masks() {
            for &y in cols.masks() {
                data.push(f(x, y));
            }
        }
        IndexedMatrix {
            semiring,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(semiring: S, rows: Labels, cols: Labels) -> Self {
        let data = vec![semiring.zero(); rows.len() * cols.len()];
        IndexedMatrix {
            semiring,
            rows,
            cols,
            data,
        }
    }

    pub fn identity(semiring: S, labels: Labels) -> Self {
        let (one, zero) = (semiring.one(), semiring.zero());
        Self::from_fn(semiring, labels.clone(), labels, |x, y| {
            if x == y {
                one.clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn semiring(&self) -> &S {
        &self.semiring
    }

    pub fn rows(&self) -> &Labels {
        &self.rows
    }

    pub fn cols(&self) -> &Labels {
        &self.cols
    }

    pub fn data(&self) -> &[S::Elem] {
        &self.data
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn get(&self, r: usize, c: usize) -> &S::Elem {
        &self.data[r * self.cols.len() + c]
    }

    pub fn row(&self, r: usize) -> &[S::Elem] {
        let w = self.cols.len();
        &self.data[r * w..(r + 1) * w]
    }

    /// Entry at row label `x` and column label `y`.
    pub fn at(&self, x: u32, y: u32) -> Option<&S::Elem> {
        Some(self.get(self.rows.position(x)?, self.cols.position(y)?))
    }

    fn check_semiring(&self, other: &Self) -> Result<()> {
        if self.semiring != other.semiring {
            return Err(Error::SemiringMismatch {
                left: self.semiring.descriptor().name,
                right: other.semiring.descriptor().name,
            });
        }
        Ok(())
    }

    /// The product `self · other`; the column labels of `self` must equal
    /// the row labels of `other` as sequences.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.check_semiring(other)?;
        if self.cols != other.rows {
            return Err(Error::LabelMismatch(format!(
                "columns ({} over [{}]) do not match rows ({} over [{}])",
                self.cols.len(),
                self.cols.ground(),
                other.rows.len(),
                other.rows.ground()
            )));
        }
        let s = &self.semiring;
        let (r, k, c) = (self.rows.len(), self.cols.len(), other.cols.len());
        let mut data = vec![s.zero(); r * c];
        let row_product = |(i, out): (usize, &mut [S::Elem])| {
            for (l, a) in self.row(i).iter().enumerate() {
                if s.is_zero(a) {
                    continue;
                }
                for (o, b) in out.iter_mut().zip(other.row(l)) {
                    if !s.is_zero(b) {
                        *o = s.add(o, &s.mul(a, b));
                    }
                }
            }
        };
        if c > 0 {
            if r * k * c >= PARALLEL_WORK {
                data.par_chunks_mut(c).enumerate().for_each(row_product);
            } else {
                data.chunks_mut(c).enumerate().for_each(row_product);
            }
        }
        Ok(IndexedMatrix {
            semiring: s.clone(),
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = self.dims();
        let mut data = Vec::with_capacity(r * c);
        for j in 0..c {
            for i in 0..r {
                data.push(self.get(i, j).clone());
            }
        }
        IndexedMatrix {
            semiring: self.semiring.clone(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            data,
        }
    }

    /// Kronecker product on labels: entry `(X ∪ (U+m), Y ∪ (V+n))` is
    /// `self[X,Y] · other[U,V]`, where `m, n` are the ground sizes of `self`.
    ///
    /// Output labels list `other`'s labels as the major index, so two complete
    /// binary labellings produce a complete binary labelling.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        self.check_semiring(other)?;
        let s = &self.semiring;
        let (m, n) = (self.rows.ground(), self.cols.ground());
        let combine = |outer: &Labels, inner: &Labels, shift: usize| -> Result<Labels> {
            let mut masks = Vec::with_capacity(outer.len() * inner.len());
            for &u in outer.masks() {
                for &x in inner.masks() {
                    masks.push(x | u << shift);
                }
            }
            Labels::new(inner.ground() + outer.ground(), masks)
        };
        let rows = combine(&other.rows, &self.rows, m)?;
        let cols = combine(&other.cols, &self.cols, n)?;
        let (r1, c1) = self.dims();
        let (r2, c2) = other.dims();
        let mut data = Vec::with_capacity(r1 * r2 * c1 * c2);
        for u in 0..r2 {
            for x in 0..r1 {
                for v in 0..c2 {
                    let b = other.get(u, v);
                    for y in 0..c1 {
                        data.push(s.mul(self.get(x, y), b));
                    }
                }
            }
        }
        Ok(IndexedMatrix {
            semiring: s.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Textbook positional Kronecker product (`self` is the major factor).
    ///
    /// Labels are reassigned as complete binary labellings of the combined
    /// ground sets, so both operands must have `2^ground` rows and columns.
    pub fn kronecker_positional(&self, other: &Self) -> Result<Self> {
        self.check_semiring(other)?;
        for l in [&self.rows, &self.cols, &other.rows, &other.cols] {
            if l.len() != 1 << l.ground() {
                return Err(Error::LabelMismatch(
                    "positional Kronecker needs full subset axes".into(),
                ));
            }
        }
        let s = &self.semiring;
        let rows = Labels::binary(self.rows.ground() + other.rows.ground())?;
        let cols = Labels::binary(self.cols.ground() + other.cols.ground())?;
        let (r1, c1) = self.dims();
        let (r2, c2) = other.dims();
        let mut data = Vec::with_capacity(r1 * r2 * c1 * c2);
        for i in 0..r1 {
            for k in 0..r2 {
                for j in 0..c1 {
                    for l in 0..c2 {
                        data.push(s.mul(self.get(i, j), other.get(k, l)));
                    }
                }
            }
        }
        Ok(IndexedMatrix {
            semiring: s.clone(),
            rows,
            cols,
            data,
        })
    }

    /// The submatrix (or reordering) on the given row and column labels.
    pub fn restrict(&self, rows: &Labels, cols: &Labels) -> Result<Self> {
        if rows.ground() != self.rows.ground() || cols.ground() != self.cols.ground() {
            return Err(Error::LabelMismatch(
                "restriction labels use a different ground set".into(),
            ));
        }
        let lookup = |have: &Labels, want: &Labels| -> Result<Vec<usize>> {
            let index = have.index_map();
            want.masks()
                .iter()
                .map(|x| {
                    index.get(x).copied().ok_or_else(|| {
                        Error::LabelMismatch(format!("label {} not present", subset_string(*x)))
                    })
                })
                .collect()
        };
        let ri = lookup(&self.rows, rows)?;
        let ci = lookup(&self.cols, cols)?;
        let mut data = Vec::with_capacity(ri.len() * ci.len());
        for &i in &ri {
            for &j in &ci {
                data.push(self.get(i, j).clone());
            }
        }
        Ok(IndexedMatrix {
            semiring: self.semiring.clone(),
            rows: rows.clone(),
            cols: cols.clone(),
            data,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_semiring(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::LabelMismatch(
                "sum of differently labelled matrices".into(),
            ));
        }
        let s = &self.semiring;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| s.add(a, b))
            .collect();
        Ok(IndexedMatrix {
            semiring: s.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data,
        })
    }

    pub fn scale(&self, c: &S::Elem) -> Self {
        let s = &self.semiring;
        let data = self.data.iter().map(|a| s.mul(c, a)).collect();
        IndexedMatrix {
            semiring: s.clone(),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data,
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|a| self.semiring.is_zero(a))
    }

    /// Label pairs `(X, Y)` with a nonzero entry.
    pub fn support(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (i, &x) in self.rows.masks().iter().enumerate() {
            for (j, &y) in self.cols.masks().iter().enumerate() {
                if !self.semiring.is_zero(self.get(i, j)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Whether every nonzero position of `other` is nonzero here.
    pub fn support_contains(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| other.semiring.is_zero(b) || !self.semiring.is_zero(a))
    }

    pub fn to_json(&self) -> Value {
        let labels = |l: &Labels| -> Vec<Vec<usize>> {
            l.masks().iter().map(|&x| subset_elements(x)).collect()
        };
        let (_, c) = self.dims();
        let data: Vec<Vec<Value>> = if c == 0 {
            vec![Vec::new(); self.rows.len()]
        } else {
            self.data
                .chunks(c)
                .map(|row| row.iter().map(|a| self.semiring.to_json(a)).collect())
                .collect()
        };
        json!({
            "semiring": self.semiring.descriptor().name,
            "row_ground": self.rows.ground(),
            "col_ground": self.cols.ground(),
            "rows": labels(&self.rows),
            "cols": labels(&self.cols),
            "data": data,
        })
    }

    /// CSV with bitmask labels in the header row and first column.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label");
        for y in self.cols.masks() {
            write!(out, ",{y}").unwrap();
        }
        out.push('\n');
        for (i, x) in self.rows.masks().iter().enumerate() {
            write!(out, "{x}").unwrap();
            for j in 0..self.cols.len() {
                write!(out, ",{}", self.semiring.render(self.get(i, j))).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Aligned grid with subset labels.
    pub fn to_text(&self) -> String {
        let row_names: Vec<String> = self
            .rows
            .masks()
            .iter()
            .map(|&x| subset_string(x))
            .collect();
        let col_names: Vec<String> = self
            .cols
            .masks()
            .iter()
            .map(|&x| subset_string(x))
            .collect();
        let cells: Vec<String> = self.data.iter().map(|a| self.semiring.render(a)).collect();
        let lw = row_names.iter().map(String::len).max().unwrap_or(0);
        let c = self.cols.len();
        let widths: Vec<usize> = (0..c)
            .map(|j| {
                let w = (0..self.rows.len())
                    .map(|i| cells[i * c + j].len())
                    .max()
                    .unwrap_or(0);
                w.max(col_names[j].len())
            })
            .collect();
        let mut out = format!("{:lw$} |", "");
        for (j, name) in col_names.iter().enumerate() {
            write!(out, " {:>w$}", name, w = widths[j]).unwrap();
        }
        out.push('\n');
        for (i, name) in row_names.iter().enumerate() {
            write!(out, "{name:lw$} |").unwrap();
            for j in 0..c {
                write!(out, " {:>w$}", cells[i * c + j], w = widths[j]).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::{Boolean, Integer, Natural};
    use num_bigint::BigInt;

    fn int_matrix(rows: usize, cols: usize, entries: &[i64]) -> IndexedMatrix<Integer> {
        IndexedMatrix::new(
            Integer,
            Labels::binary(rows).unwrap(),
            Labels::binary(cols).unwrap(),
            entries.iter().map(|&v| BigInt::from(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = int_matrix(1, 2, &[1, 2, 3, 4, 5, 6, 7, 8]);
        let i1 = IndexedMatrix::identity(Integer, Labels::binary(1).unwrap());
        let i2 = IndexedMatrix::identity(Integer, Labels::binary(2).unwrap());
        assert_eq!(i1.mat_mul(&a).unwrap(), a);
        assert_eq!(a.mat_mul(&i2).unwrap(), a);
        assert!(a.mat_mul(&a).is_err());
    }

    #[test]
    fn label_kronecker_versus_positional() {
        let a = int_matrix(1, 1, &[1, 2, 3, 4]);
        let b = int_matrix(1, 1, &[5, 6, 7, 8]);
        // On labels, `a` is the minor factor; positionally it is the major one.
        assert_eq!(
            a.kronecker(&b).unwrap(),
            b.kronecker_positional(&a).unwrap()
        );
        assert_ne!(
            a.kronecker(&b).unwrap(),
            a.kronecker_positional(&b).unwrap()
        );
        let i = |n| IndexedMatrix::identity(Boolean, Labels::binary(n).unwrap());
        assert_eq!(i(2).kronecker(&i(1)).unwrap(), i(3));
    }

    #[test]
    fn restrict_and_transpose() {
        let a = int_matrix(1, 1, &[1, 2, 3, 4]);
        let swapped = Labels::new(1, vec![1, 0]).unwrap();
        let r = a.restrict(&swapped, &swapped).unwrap();
        assert_eq!(r.get(0, 0), &BigInt::from(4));
        assert_eq!(r.at(0, 1), Some(&BigInt::from(2)));
        assert_eq!(a.transpose().get(0, 1), &BigInt::from(3));
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn semiring_mismatch_is_reported() {
        let a = IndexedMatrix::identity(
            crate::semiring::IntegerMod::pow2(2).unwrap(),
            Labels::binary(1).unwrap(),
        );
        let b = IndexedMatrix::identity(
            crate::semiring::IntegerMod::pow2(3).unwrap(),
            Labels::binary(1).unwrap(),
        );
        assert!(matches!(a.mat_mul(&b), Err(Error::SemiringMismatch { .. })));
    }

    #[test]
    fn output_formats() {
        let a = IndexedMatrix::identity(Natural, Labels::binary(1).unwrap());
        assert_eq!(a.to_csv(), "label,0,1\n0,1,0\n1,0,1\n");
        let j = a.to_json();
        assert_eq!(j["rows"], json!([[], [1]]));
        assert_eq!(j["data"], json!([[1, 0], [0, 1]]));
        assert_eq!(j["semiring"], "nat");
        assert!(a.to_text().contains("{1}"));
    }
}
