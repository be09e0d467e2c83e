//! Dense exact matrices over the rationals.

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, Rational};
use crate::upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// `M v` for a column vector.
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `vᵀ M` for a row vector.
    pub fn vec_mul(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, a) in self.row(i).iter().enumerate() {
                if !a.is_zero() {
                    out[j] += vi * a;
                }
            }
        }
        out
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            let row = o.vec_mul(self.row(i));
            out.data[i * o.cols..(i + 1) * o.cols].clone_from_slice(&row);
        }
        out
    }

    /// Gauss-Jordan inverse; fails on singular input.
    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::Domain("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or_else(|| Error::Invariant(format!("singular matrix at column {col}")))?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] /= &p;
                inv[(col, j)] /= &p;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    if !a[(col, j)].is_zero() {
                        let d = &f * &a[(col, j)];
                        a[(r, j)] -= d;
                    }
                    if !inv[(col, j)].is_zero() {
                        let d = &f * &inv[(col, j)];
                        inv[(r, j)] -= d;
                    }
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            for c in 0..self.cols {
                self.data.swap(i * self.cols + c, j * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + i, r * self.cols + j);
            }
        }
    }

    /// Characteristic polynomial `det(t I - M)`, via reduction to Hessenberg form.
    pub fn charpoly(&self) -> UPoly {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            h.swap_rows(i, m);
            h.swap_cols(i, m);
            let pivot = h[(m, m - 1)].clone();
            for i in m + 1..n {
                if h[(i, m - 1)].is_zero() {
                    continue;
                }
                let u = &h[(i, m - 1)] / &pivot;
                for j in 0..n {
                    let d = &u * &h[(m, j)];
                    h[(i, j)] -= d;
                }
                for r in 0..n {
                    let d = &u * &h[(r, i)];
                    h[(r, m)] += d;
                }
            }
        }
        let mut p: Vec<UPoly> = vec![UPoly::constant(Rational::one())];
        for k in 1..=n {
            let diag = &UPoly::var() - &UPoly::constant(h[(k - 1, k - 1)].clone());
            let mut pk = &diag * &p[k - 1];
            let mut prod = Rational::one();
            for i in 1..k {
                prod *= &h[(k - i, k - i - 1)];
                if prod.is_zero() {
                    break;
                }
                let c = &h[(k - i - 1, k - 1)] * &prod;
                pk = &pk - &p[k - i - 1].scale(&c);
            }
            p.push(pk);
        }
        p.pop().expect("nonempty")
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    /// Cofactor expansion of `det(t I - M)` with polynomial entries.
    fn charpoly_by_cofactors(a: &QMatrix) -> UPoly {
        fn det(rows: Vec<Vec<UPoly>>) -> UPoly {
            if rows.is_empty() {
                return UPoly::constant(int(1));
            }
            let mut acc = UPoly::zero();
            for (j, entry) in rows[0].iter().enumerate() {
                let minor: Vec<Vec<UPoly>> = rows[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = entry * &det(minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
        let n = a.rows();
        det((0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = UPoly::constant(-a[(i, j)].clone());
                        if i == j {
                            &UPoly::var() + &c
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect())
    }

    #[test]
    fn inverse_and_products() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMatrix::identity(3));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_err());
        assert_eq!(a.mul_vec(&[int(1), int(0), int(0)]), vec![int(2), int(1), int(0)]);
        assert_eq!(a.vec_mul(&[int(1), int(0), int(0)]), vec![int(2), int(1), int(0)]);
    }

    #[test]
    fn charpoly_small() {
        let t = QMatrix::from_rows(vec![vec![ratio(15, 16), ratio(1, 16)], vec![ratio(1, 2), ratio(1, 2)]]);
        let p = t.charpoly();
        assert_eq!(p, UPoly::from_roots([&int(1), &ratio(7, 16)]));
    }

    #[test]
    fn charpoly_matches_cofactor_oracle() {
        let cases = [
            m(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]),
            m(&[&[1, 2, 3, 4], &[0, 0, 1, 5], &[2, 0, 0, 1], &[7, 1, 1, 0]]),
            m(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[3, 0, 2, 0]]),
        ];
        for a in cases {
            assert_eq!(a.charpoly(), charpoly_by_cofactors(&a));
        }
    }
}
