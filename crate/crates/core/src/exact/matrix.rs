//! Dense rectangular matrices, plus the polynomial-matrix operations used by
//! the tensor layer (fraction-free elimination, determinant, inverse).

use std::fmt;
use std::ops::{Index, IndexMut};

use super::poly::MultiPoly;
use super::ratfun::RationalFunction;
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<MultiPoly>;
pub type RatFunMatrix = Matrix<RationalFunction>;

impl<T> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T: PartialEq + Clone> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Matrix<MultiPoly> {
    pub fn zeros(n: usize, nvars: usize) -> Self {
        Matrix::filled(n, n, MultiPoly::zero(nvars))
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { MultiPoly::one(nvars) } else { MultiPoly::zero(nvars) })
    }

    pub fn from_rational(m: &Matrix<Rational>, nvars: usize) -> Self {
        m.map(|c| MultiPoly::constant(nvars, c.clone()))
    }

    pub fn nvars(&self) -> usize {
        self.data.first().map_or(0, MultiPoly::nvars)
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(MultiPoly::is_constant)
    }

    pub fn constant_part(&self) -> Matrix<Rational> {
        self.map(MultiPoly::constant_term)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(MultiPoly::is_zero)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let nv = self.nvars();
        Ok(Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = MultiPoly::zero(nv);
            for k in 0..self.cols {
                let a = self.get(i, k);
                let b = o.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc.add_assign_ref(&a.mul_ref(b));
                }
            }
            acc
        }))
    }

    pub fn add(&self, o: &Self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + o.get(i, j))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - o.get(i, j))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> Self {
        self.map(|p| p.mul_ref(c))
    }

    pub fn eval(&self, point: &[Rational]) -> Matrix<Rational> {
        self.map(|p| p.eval(point))
    }

    /// Fraction-free Gauss-Jordan elimination. Returns `(delta, adj)` with
    /// `self * adj = delta * I`; `delta` equals the determinant up to sign.
    pub fn fraction_free_inverse(&self) -> Result<(MultiPoly, Self)> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let nv = self.nvars();
        let mut a = self.clone();
        let mut b = Matrix::identity(n, nv);
        let mut prev = MultiPoly::one(nv);
        for k in 0..n {
            let pivot_row = (k..n)
                .filter(|&r| !a.get(r, k).is_zero())
                .min_by_key(|&r| a.get(r, k).len())
                .ok_or(Error::IdenticallySingular)?;
            a.swap_rows(k, pivot_row);
            b.swap_rows(k, pivot_row);
            let p = a.get(k, k).clone();
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a.get(i, k).clone();
                for j in 0..n {
                    let na = &p.mul_ref(a.get(i, j)) - &f.mul_ref(a.get(k, j));
                    a[(i, j)] = na.exact_div(&prev).expect("fraction-free step is exact");
                    let nb = &p.mul_ref(b.get(i, j)) - &f.mul_ref(b.get(k, j));
                    b[(i, j)] = nb.exact_div(&prev).expect("fraction-free step is exact");
                }
            }
            prev = p;
        }
        // Rows not touched after their pivot step carry a stale scale; bring
        // every row to the common denominator `prev`.
        for i in 0..n {
            let d = a.get(i, i).clone();
            if d != prev {
                let f = prev.exact_div(&d).expect("diagonal divides final pivot");
                for j in 0..n {
                    b[(i, j)] = b.get(i, j).mul_ref(&f);
                }
            }
        }
        Ok((prev, b))
    }

    /// Determinant via fraction-free elimination.
    pub fn det(&self) -> Result<MultiPoly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let nv = self.nvars();
        if n == 0 {
            return Ok(MultiPoly::one(nv));
        }
        let mut a = self.clone();
        let mut prev = MultiPoly::one(nv);
        let mut negate = false;
        for k in 0..n {
            let pivot_row = match (k..n).filter(|&r| !a.get(r, k).is_zero()).min_by_key(|&r| a.get(r, k).len()) {
                Some(r) => r,
                None => return Ok(MultiPoly::zero(nv)),
            };
            if pivot_row != k {
                a.swap_rows(k, pivot_row);
                negate = !negate;
            }
            let p = a.get(k, k).clone();
            for i in k + 1..n {
                let f = a.get(i, k).clone();
                for j in k + 1..n {
                    let na = &p.mul_ref(a.get(i, j)) - &f.mul_ref(a.get(k, j));
                    a[(i, j)] = na.exact_div(&prev).expect("Bareiss step is exact");
                }
                a[(i, k)] = MultiPoly::zero(nv);
            }
            prev = p;
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    /// Exact inverse with entries reduced to lowest terms.
    pub fn inverse(&self) -> Result<RatFunMatrix> {
        let (delta, adj) = self.fraction_free_inverse()?;
        adj.map(|p| RationalFunction::new(p.clone(), delta.clone())).try_map()
    }
}

impl<T> Matrix<Result<T>> {
    fn try_map(self) -> Result<Matrix<T>> {
        let Matrix { rows, cols, data } = self;
        Ok(Matrix { rows, cols, data: data.into_iter().collect::<Result<Vec<T>>>()? })
    }
}

impl Matrix<RationalFunction> {
    pub fn mul_poly(&self, o: &PolyMatrix) -> Result<Self> {
        if self.cols != o.rows() {
            return Err(Error::DimensionMismatch("incompatible shapes".into()));
        }
        let nv = o.nvars();
        Ok(Matrix::from_fn(self.rows, o.cols(), |i, j| {
            let mut acc = RationalFunction::zero(nv);
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(&RationalFunction::from_poly(o.get(k, j).clone())));
            }
            acc
        }))
    }

    pub fn is_identity(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }
}
