//! Exact dense linear algebra over a [`Field`].
//!
//! Elimination always pivots on the first nonzero entry in column order, so
//! echelon forms (and the code bases built from them) are canonical.

use std::fmt;
use std::ops::Mul;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::poly::Polynomial;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fe>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("rows have different lengths".into()));
        }
        Ok(Matrix { field: field.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &Field, cols: &[Vec<Fe>]) -> Result<Matrix> {
        Ok(Matrix::from_rows(field, cols.to_vec())?.transpose())
    }

    /// Parses rows of field literals: `[[1,0],[0,1]]`.
    pub fn parse(field: &Field, text: &str) -> Result<Matrix> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::parse(0, "matrix must be enclosed in `[...]`"))?;
        let mut rows = Vec::new();
        for row in crate::expr::split_top_level(inner, ',') {
            let row = row.trim();
            let body = row
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| Error::parse(0, "each row must be enclosed in `[...]`"))?;
            rows.push(
                crate::expr::split_top_level(body, ',')
                    .into_iter()
                    .map(|e| field.parse_literal(e))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Matrix::from_rows(field, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert!(self.rows == other.rows && self.cols == other.cols, "shape mismatch");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Fe) -> Matrix {
        let f = &self.field;
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        self.require_square()?;
        let mut acc = Matrix::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Fe> {
        self.require_square()?;
        let f = &self.field;
        Ok((0..self.rows).fold(Fe::ZERO, |acc, i| f.add(acc, self.get(i, i))))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                m.set(r, j, f.mul(m.get(r, j), inv));
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Dimension of the kernel of `self^n`.
    pub fn kernel_dim_of_power(&self, n: u64) -> Result<usize> {
        Ok(self.pow(n)?.kernel_dim())
    }

    /// Nonzero rows of the reduced echelon form: the canonical basis of the
    /// row space.
    pub fn row_space_basis(&self) -> Vec<Vec<Fe>> {
        let (m, pivots) = self.rref();
        (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
    }

    pub fn invert(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, Fe::ONE);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Ok(inv)
    }

    /// Characteristic polynomial `det(xI - M)` via reduction to upper
    /// Hessenberg form.
    pub fn char_poly(&self) -> Result<Polynomial> {
        self.require_square()?;
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        // similarity transforms to Hessenberg form
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            h.swap_rows(i, m);
            h.swap_cols(i, m);
            let inv = f.inv(h.get(m, m - 1)).expect("nonzero pivot");
            for i in m + 1..n {
                let u = f.mul(h.get(i, m - 1), inv);
                if u.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = f.sub(h.get(i, j), f.mul(u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for j in 0..n {
                    let v = f.add(h.get(j, m), f.mul(u, h.get(j, i)));
                    h.set(j, m, v);
                }
            }
        }
        // p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i h[i-1][m-1] * prod_{j=i}^{m-1} h[j][j-1] * p_{i-1}
        let x = Polynomial::x(f);
        let mut ps = vec![Polynomial::one(f)];
        for m in 1..=n {
            let mut pm = &(&x - &Polynomial::constant(f, h.get(m - 1, m - 1))) * &ps[m - 1];
            let mut t = Fe::ONE;
            for i in (1..m).rev() {
                t = f.mul(t, h.get(i, i - 1));
                if t.is_zero() {
                    break;
                }
                let c = f.mul(h.get(i - 1, m - 1), t);
                pm = &pm - &ps[i - 1].scale(c);
            }
            ps.push(pm);
        }
        Ok(ps.pop().unwrap())
    }

    /// Minimal polynomial: the lcm over the standard basis vectors of the
    /// minimal polynomial of each Krylov sequence `e_j, M e_j, M^2 e_j, ...`.
    pub fn min_poly(&self) -> Result<Polynomial> {
        self.require_square()?;
        let f = &self.field;
        let n = self.rows;
        let mut acc = Polynomial::one(f);
        for j in 0..n {
            let mut v = vec![Fe::ZERO; n];
            v[j] = Fe::ONE;
            if acc.degree() == Some(n) || self.eval_poly_on(&acc, &v).iter().all(|c| c.is_zero()) {
                continue;
            }
            acc = acc.lcm(&self.krylov_min_poly(v));
        }
        debug_assert!(acc.divides(&self.char_poly()?), "minimal polynomial must divide the characteristic polynomial");
        Ok(acc)
    }

    fn krylov_min_poly(&self, start: Vec<Fe>) -> Polynomial {
        let f = &self.field;
        let n = self.rows;
        // echelon rows (vector, combination over the Krylov iterates, pivot)
        let mut basis: Vec<(Vec<Fe>, Vec<Fe>, usize)> = Vec::new();
        let mut v = start;
        for i in 0..=n {
            let mut w = v.clone();
            let mut comb = vec![Fe::ZERO; i + 1];
            comb[i] = Fe::ONE;
            for (b, bc, piv) in &basis {
                let c = w[*piv];
                if c.is_zero() {
                    continue;
                }
                for (x, &y) in w.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
                for (x, &y) in comb.iter_mut().zip(bc) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
            match w.iter().position(|c| !c.is_zero()) {
                None => return Polynomial::new(f, comb),
                Some(piv) => {
                    let inv = f.inv(w[piv]).unwrap();
                    for x in w.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    for x in comb.iter_mut() {
                        *x = f.mul(*x, inv);
                    }
                    basis.push((w, comb, piv));
                }
            }
            v = self.mul_vec(&v);
        }
        unreachable!("n + 1 vectors in dimension n are dependent")
    }

    fn eval_poly_on(&self, g: &Polynomial, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let mut acc = vec![Fe::ZERO; v.len()];
        for &c in g.coeffs().iter().rev() {
            acc = self.mul_vec(&acc);
            for (a, &x) in acc.iter_mut().zip(v) {
                *a = f.add(*a, f.mul(c, x));
            }
        }
        acc
    }

    /// `g(M)` by Horner's rule.
    pub fn eval_poly(&self, g: &Polynomial) -> Result<Matrix> {
        self.require_square()?;
        let f = &self.field;
        let n = self.rows;
        let mut acc = Matrix::zeros(f, n, n);
        for &c in g.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Same matrix with entries mapped into another field.
    pub fn map_entries(&self, target: &Field, map: impl Fn(Fe) -> Fe) -> Matrix {
        Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| map(v)).collect() }
    }

    /// Entries as field-literal strings, row-major.
    pub fn to_literal_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|&v| self.field.format(v)).collect()).collect()
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        assert!(self.field == rhs.field, "matrices over different fields");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl fmt::Display for Matrix {
    /// Row-major bracketed text: `[[1,0],[0,1]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.to_literal_rows().into_iter().map(|r| format!("[{}]", r.join(","))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix({self})")
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = self.to_literal_rows();
        let mut seq = s.serialize_seq(Some(rows.len()))?;
        for r in &rows {
            seq.serialize_element(r)?;
        }
        seq.end()
    }
}
