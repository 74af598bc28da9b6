//! Dense matrices over a coefficient field: rank and symmetric congruence
//! diagonalization.

use crate::polyalg::{Coefficient, Field, PolyError, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Coefficient>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Coefficient>>) -> Result<Matrix, PolyError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(PolyError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, c) in row.into_iter().enumerate() {
                if c.field() != field {
                    return Err(PolyError::FieldMismatch {
                        left: field,
                        right: c.field(),
                    });
                }
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// The symmetric matrix `A` with `q(z) = z^T A z` for a quadratic form `q`.
    ///
    /// Off-diagonal entries are half the cross coefficients, so the field
    /// must not have characteristic 2.
    pub fn of_quadratic_form(q: &Polynomial) -> Result<Matrix, PolyError> {
        let field = q.field();
        let n = q.nvars();
        if field.characteristic() == 2 {
            return Err(PolyError::EvenCharacteristic);
        }
        let half = field.from_i64(2).inv().expect("2 is invertible");
        let mut a = Matrix::zeros(field, n, n);
        for (e, c) in q.terms() {
            let support: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            match (support.as_slice(), e.iter().sum::<u32>()) {
                ([i], 2) => a.set(*i, *i, c.clone()),
                ([i, j], 2) => {
                    let h = c * &half;
                    a.set(*i, *j, h.clone());
                    a.set(*j, *i, h);
                }
                _ => return Err(PolyError::NotQuadratic),
            }
        }
        Ok(a)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coefficient {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, c: Coefficient) {
        self.data[i * self.cols + j] = c;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &(a * other.get(k, j)) + out.get(i, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let inv = m.get(rank, col).inv().expect("nonzero pivot");
            for r in rank + 1..m.rows {
                let f = m.get(r, col) * &inv;
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &(&f * m.get(rank, c));
                    m.set(r, c, v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Gauss–Jordan inverse; `None` for singular or non-square matrices.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let s = a.get(col, col).inv().expect("nonzero pivot");
            for c in 0..n {
                a.set(col, c, &s * a.get(col, c));
                inv.set(col, c, &s * inv.get(col, c));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = -a.get(r, col);
                a.add_row(r, col, &f);
                inv.add_row(r, col, &f);
            }
        }
        Some(inv)
    }

    /// For symmetric `A`, returns `(d, P)` with `P^T A P = diag(d)`, nonzero
    /// entries of `d` first.
    ///
    /// When no diagonal pivot is left but `A[k][j] != 0`, the pivot pair is
    /// replaced by `e_k + e_j`, `e_k - e_j`, turning `2 z_k z_j` into
    /// `2 a (u_k^2 - u_j^2)`.
    pub fn diagonalize_symmetric(&self) -> Result<(Vec<Coefficient>, Matrix), PolyError> {
        if self.rows != self.cols {
            return Err(PolyError::NotSquare {
                components: self.rows,
                variables: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut p = Matrix::identity(self.field, n);
        for k in 0..n {
            if a.get(k, k).is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                    a.swap_congruent(k, j);
                    p.swap_cols(k, j);
                } else if let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_zero())
                {
                    if self.field.characteristic() == 2 {
                        return Err(PolyError::EvenCharacteristic);
                    }
                    if i != k {
                        a.swap_congruent(k, i);
                        p.swap_cols(k, i);
                    }
                    a.hyperbolic(k, j);
                    p.hyperbolic_cols(k, j);
                } else {
                    break;
                }
            }
            let inv = a.get(k, k).inv().expect("nonzero pivot");
            for j in k + 1..n {
                let f = a.get(k, j) * &inv;
                if f.is_zero() {
                    continue;
                }
                a.add_congruent(j, k, &-&f);
                p.add_col(j, k, &-&f);
            }
        }
        let d = (0..n).map(|i| a.get(i, i).clone()).collect();
        Ok((d, p))
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn swap_congruent(&mut self, i: usize, j: usize) {
        self.swap_rows(i, j);
        self.swap_cols(i, j);
    }

    /// column `dst += f * column src`
    fn add_col(&mut self, dst: usize, src: usize, f: &Coefficient) {
        for r in 0..self.rows {
            let v = self.get(r, dst) + &(f * self.get(r, src));
            self.set(r, dst, v);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, f: &Coefficient) {
        for c in 0..self.cols {
            let v = self.get(dst, c) + &(f * self.get(src, c));
            self.set(dst, c, v);
        }
    }

    fn add_congruent(&mut self, dst: usize, src: usize, f: &Coefficient) {
        self.add_col(dst, src, f);
        self.add_row(dst, src, f);
    }

    /// columns `(k, j) <- (k + j, k - j)`
    fn hyperbolic_cols(&mut self, k: usize, j: usize) {
        for r in 0..self.rows {
            let a = self.get(r, k).clone();
            let b = self.get(r, j).clone();
            self.set(r, k, &a + &b);
            self.set(r, j, &a - &b);
        }
    }

    fn hyperbolic(&mut self, k: usize, j: usize) {
        self.hyperbolic_cols(k, j);
        for c in 0..self.cols {
            let a = self.get(k, c).clone();
            let b = self.get(j, c).clone();
            self.set(k, c, &a + &b);
            self.set(j, c, &a - &b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq(vars: &[&str], s: &str) -> Polynomial {
        Polynomial::parse(Field::Rationals, vars, s).unwrap()
    }

    fn diag_matrix(d: &[Coefficient]) -> Matrix {
        let mut m = Matrix::zeros(Field::Rationals, d.len(), d.len());
        for (i, c) in d.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    #[test]
    fn hyperbolic_pair_becomes_difference_of_squares() {
        let a = Matrix::of_quadratic_form(&qq(&["x", "y"], "x*y")).unwrap();
        let (d, p) = a.diagonalize_symmetric().unwrap();
        assert_eq!(d, vec![Coefficient::rational(1, 1), Coefficient::rational(-1, 1)]);
        assert_eq!(p.transpose().mul(&a).mul(&p), diag_matrix(&d));
    }

    #[test]
    fn congruence_reproduces_diagonal() {
        let v = ["a", "b", "c", "d"];
        let a = Matrix::of_quadratic_form(&qq(&v, "a*b + 2*b*c - c^2 + 3*a*d")).unwrap();
        let (d, p) = a.diagonalize_symmetric().unwrap();
        assert_eq!(p.transpose().mul(&a).mul(&p), diag_matrix(&d));
        assert!(p.is_invertible());
        let nonzero = d.iter().take_while(|c| !c.is_zero()).count();
        assert_eq!(nonzero, a.rank());
        assert!(d[nonzero..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn rank_of_perfect_square() {
        let a = Matrix::of_quadratic_form(&qq(&["x", "y"], "x^2 + 2*x*y + y^2")).unwrap();
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let r = |n| Coefficient::rational(n, 1);
        let m = Matrix::from_rows(Field::Rationals, vec![vec![r(0), r(2), r(1)], vec![r(1), r(1), r(0)], vec![r(3), r(0), r(1)]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(Field::Rationals, 3));
        let singular = Matrix::from_rows(Field::Rationals, vec![vec![r(1), r(2)], vec![r(2), r(4)]]).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn rejects_cubic() {
        assert!(Matrix::of_quadratic_form(&qq(&["x", "y"], "x^2*y")).is_err());
    }
}
