//! Small exact linear algebra: 4x4 rational matrices, row reduction,
//! and null spaces. Everything here is plumbing for the Lie-theoretic
//! modules; no floating point.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::Scalar;

pub type Row = [Scalar; 4];

pub fn zero_row() -> Row {
    [Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero()]
}

/// A 4x4 matrix over the rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat4 {
    rows: [Row; 4],
}

impl Mat4 {
    pub fn zero() -> Self {
        Mat4 {
            rows: [zero_row(), zero_row(), zero_row(), zero_row()],
        }
    }

    pub fn identity() -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: [Row; 4]) -> Self {
        Mat4 { rows }
    }

    pub fn row(&self, i: usize) -> &Row {
        &self.rows[i]
    }

    pub fn mul(&self, other: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Scalar::zero();
                for k in 0..4 {
                    acc = acc + &self[(i, k)] * &other[(k, j)];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Row) -> Row {
        let mut out = zero_row();
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for k in 0..4 {
                acc = acc + &self[(i, k)] * &v[k];
            }
            *slot = acc;
        }
        out
    }

    pub fn add(&self, other: &Mat4) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] = &self[(i, j)] + &other[(i, j)];
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Mat4 {
        let mut out = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                out[(i, j)] = c * &self[(i, j)];
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self.rows.to_vec()).len()
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == 4
    }
}

impl Index<(usize, usize)> for Mat4 {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.rows[i][j]
    }
}

impl IndexMut<(usize, usize)> for Mat4 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.rows[i][j]
    }
}

impl fmt::Display for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}[{}]", if i == 0 { "" } else { " " }, cells.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Reduced row echelon form. Returns only the nonzero rows, with unit
/// pivots, pivots cleared above and below, and rows ordered by pivot
/// column. The output is a canonical basis for the row space.
pub fn rref(mut rows: Vec<Row>) -> Vec<Row> {
    let mut pivot_row = 0;
    for col in 0..4 {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = Scalar::one() / rows[pivot_row][col].clone();
        for j in col..4 {
            rows[pivot_row][j] = &rows[pivot_row][j] * &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for j in col..4 {
                    rows[r][j] = &rows[r][j] - &(&factor * &rows[pivot_row][j]);
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Canonical basis of `{v : Mv = 0}` for the linear map whose rows are
/// `constraints` (any number of rows, four columns).
pub fn kernel(constraints: &[Row]) -> Vec<Row> {
    let reduced = rref(constraints.to_vec());
    let mut pivot_cols = Vec::new();
    for row in &reduced {
        if let Some(col) = (0..4).find(|&c| !row[c].is_zero()) {
            pivot_cols.push(col);
        }
    }
    let mut basis = Vec::new();
    for free in (0..4).filter(|c| !pivot_cols.contains(c)) {
        let mut v = zero_row();
        v[free] = Scalar::one();
        for (row, &pc) in reduced.iter().zip(&pivot_cols) {
            v[pc] = -&row[free];
        }
        basis.push(v);
    }
    rref(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn identity_is_neutral() {
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m[(i, j)] = Scalar::new((i * 4 + j) as i64 + 1, 3);
            }
        }
        assert_eq!(Mat4::identity().mul(&m), m);
        assert_eq!(m.mul(&Mat4::identity()), m);
    }

    #[test]
    fn rref_canonicalizes_scaled_rows() {
        let a = rref(vec![[s(2), s(0), s(4), s(0)], [s(0), s(0), s(0), s(3)]]);
        let b = rref(vec![[s(0), s(0), s(0), s(-1)], [s(1), s(0), s(2), s(0)]]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
        assert_eq!(a[0], [s(1), s(0), s(2), s(0)]);
    }

    #[test]
    fn kernel_of_rank_two_map() {
        // Constraints x0 = 0 and x2 = 0 leave span{e1, e3}.
        let k = kernel(&[[s(1), s(0), s(0), s(0)], [s(0), s(0), s(1), s(0)]]);
        assert_eq!(k, vec![[s(0), s(1), s(0), s(0)], [s(0), s(0), s(0), s(1)]]);
    }

    #[test]
    fn kernel_of_invertible_map_is_trivial() {
        let m = Mat4::identity();
        assert!(kernel(&[
            m.row(0).clone(),
            m.row(1).clone(),
            m.row(2).clone(),
            m.row(3).clone()
        ])
        .is_empty());
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn transpose_involutive() {
        let mut m = Mat4::zero();
        m[(0, 3)] = s(5);
        m[(2, 1)] = Scalar::new(-1, 2);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose()[(3, 0)], s(5));
    }
}
