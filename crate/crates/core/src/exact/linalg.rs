//! Dense matrices over [`ParamScalar`] with exact elimination.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::{Param, ParamScalar, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ParamScalar>,
}

fn weight(s: &ParamScalar) -> usize {
    if s.is_zero() {
        usize::MAX
    } else {
        s.numer().len() + s.denom().len()
    }
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix { rows, cols, data: vec![ParamScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        ScalarMatrix::scalar(n, ParamScalar::one())
    }

    pub fn scalar(n: usize, c: ParamScalar) -> Self {
        let mut m = ScalarMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ParamScalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(ScalarMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(cols: Vec<Vec<ParamScalar>>) -> Result<Self> {
        Ok(ScalarMatrix::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ParamScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ParamScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ParamScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ParamScalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> ScalarMatrix {
        let mut t = ScalarMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ParamScalar::is_zero)
    }

    pub fn trace(&self) -> ParamScalar {
        (0..self.rows.min(self.cols)).fold(ParamScalar::zero(), |acc, i| &acc + self.get(i, i))
    }

    pub fn scale(&self, c: &ParamScalar) -> ScalarMatrix {
        ScalarMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn checked_mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = ScalarMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        Ok(&self.checked_mul(other)? - &other.checked_mul(self)?)
    }

    pub fn map<F>(&self, mut f: F) -> Result<ScalarMatrix>
    where
        F: FnMut(&ParamScalar) -> Result<ParamScalar>,
    {
        Ok(ScalarMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect::<Result<_>>()? })
    }

    pub fn evaluate_params(&self, values: &HashMap<Param, Rational>) -> Result<ScalarMatrix> {
        self.map(|v| v.evaluate(values).map(ParamScalar::from_rational))
    }

    /// Row echelon form in place; returns the pivot columns.
    fn eliminate(&mut self, augmented_from: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..augmented_from {
            if r == self.rows {
                break;
            }
            // cheapest nonzero pivot keeps intermediate fractions small
            let best = (r..self.rows).filter(|&i| !self.get(i, c).is_zero()).min_by_key(|&i| weight(self.get(i, c)));
            let Some(p) = best else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).recip().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let rv = self.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * rv);
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank over the field of rational functions in the parameters.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let cols = m.cols;
        m.eliminate(cols).len()
    }

    /// Solves `self * X = rhs` for the unique `X`.
    pub fn solve(&self, rhs: &ScalarMatrix) -> Result<ScalarMatrix> {
        if rhs.rows != self.rows {
            return Err(Error::Dimension("right-hand side row count".into()));
        }
        let n = self.cols;
        let mut aug = ScalarMatrix::zeros(self.rows, n + rhs.cols);
        for i in 0..self.rows {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            for j in 0..rhs.cols {
                aug.set(i, n + j, rhs.get(i, j).clone());
            }
        }
        let pivots = aug.eliminate(n);
        for i in pivots.len()..self.rows {
            if (n..aug.cols).any(|j| !aug.get(i, j).is_zero()) {
                return Err(Error::Inconsistent);
            }
        }
        if pivots.len() < n {
            return Err(Error::Underdetermined);
        }
        let mut x = ScalarMatrix::zeros(n, rhs.cols);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(c, j, aug.get(r, n + j).clone());
            }
        }
        Ok(x)
    }
}

impl Add for &ScalarMatrix {
    type Output = ScalarMatrix;
    fn add(self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ScalarMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &ScalarMatrix {
    type Output = ScalarMatrix;
    fn sub(self, rhs: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        ScalarMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &ScalarMatrix {
    type Output = ScalarMatrix;
    fn mul(self, rhs: &ScalarMatrix) -> ScalarMatrix {
        self.checked_mul(rhs).expect("shape mismatch")
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> ParamScalar {
        ParamScalar::int(n)
    }

    #[test]
    fn solve_two_by_two() {
        let a = ScalarMatrix::from_rows(vec![vec![s(2), s(1)], vec![s(1), s(3)]]).unwrap();
        let b = ScalarMatrix::from_rows(vec![vec![s(3)], vec![s(4)]]).unwrap();
        let x = a.solve(&b).unwrap();
        assert_eq!(x.column(0), vec![s(1), s(1)]);
    }

    #[test]
    fn symbolic_solve() {
        let nu = ParamScalar::nu(1);
        let a = ScalarMatrix::from_rows(vec![vec![nu.clone(), s(1)], vec![s(0), s(1)]]).unwrap();
        let b = ScalarMatrix::from_rows(vec![vec![s(1)], vec![s(0)]]).unwrap();
        let x = a.solve(&b).unwrap();
        assert_eq!(x.get(0, 0), &nu.recip().unwrap());
        assert_eq!(&(&a * &x), &b);
    }

    #[test]
    fn singular_systems() {
        let a = ScalarMatrix::from_rows(vec![vec![s(1), s(2)], vec![s(2), s(4)]]).unwrap();
        assert_eq!(a.rank(), 1);
        let incons = ScalarMatrix::from_rows(vec![vec![s(1)], vec![s(0)]]).unwrap();
        assert_eq!(a.solve(&incons), Err(Error::Inconsistent));
        let cons = ScalarMatrix::from_rows(vec![vec![s(1)], vec![s(2)]]).unwrap();
        assert_eq!(a.solve(&cons), Err(Error::Underdetermined));
    }

    #[test]
    fn overdetermined_consistent() {
        let a = ScalarMatrix::from_rows(vec![vec![s(1)], vec![s(2)], vec![s(3)]]).unwrap();
        let b = ScalarMatrix::from_rows(vec![vec![s(2)], vec![s(4)], vec![s(6)]]).unwrap();
        assert_eq!(a.solve(&b).unwrap().get(0, 0), &s(2));
    }
}
