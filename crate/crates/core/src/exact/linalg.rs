//! Linear algebra over exact fields (the rationals and the Gaussian rationals).

use std::fmt::{Debug, Display};

use super::gaussian::GaussianRational;
use super::matrix::Matrix;
use super::rational::Rational;
use super::univariate::UniPoly;

pub trait Field: Clone + PartialEq + Debug + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
}

impl Field for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn from_rational(r: &Rational) -> Self {
        GaussianRational::real(r.clone())
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
}

pub fn identity<F: Field>(n: usize) -> Matrix<F> {
    Matrix::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    assert_eq!(a.cols(), b.rows(), "incompatible shapes");
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut acc = F::zero();
        for k in 0..a.cols() {
            let x = a.get(i, k);
            if !x.is_zero() {
                acc = acc.add(&x.mul(b.get(k, j)));
            }
        }
        acc
    })
}

pub fn mat_sub<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a.get(i, j).sub(b.get(i, j)))
}

pub fn mat_scale<F: Field>(a: &Matrix<F>, c: &F) -> Matrix<F> {
    a.map(|x| x.mul(c))
}

/// Reduced row echelon form with pivots chosen left to right (first nonzero
/// entry in each column), together with the pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).inv().expect("nonzero pivot");
        for j in c..a.cols() {
            a[(r, j)] = a.get(r, j).mul(&inv);
        }
        for i in 0..a.rows() {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols() {
                a[(i, j)] = a.get(i, j).sub(&f.mul(a.get(r, j)));
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Nullspace basis: one vector per free column (in increasing order), with a
/// 1 in that column and zeros in the other free columns.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); m.cols()];
            v[f] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r.get(row, f).neg();
            }
            v
        })
        .collect()
}

pub fn det<F: Field>(m: &Matrix<F>) -> F {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut d = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap_rows(p, c);
            d = d.neg();
        }
        let piv = a.get(c, c).clone();
        d = d.mul(&piv);
        let inv = piv.inv().expect("nonzero pivot");
        for i in c + 1..n {
            if a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).mul(&inv);
            for j in c..n {
                a[(i, j)] = a.get(i, j).sub(&f.mul(a.get(c, j)));
            }
        }
    }
    d
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Option<Matrix<F>> {
    assert!(m.is_square());
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            F::one()
        } else {
            F::zero()
        }
    });
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}

/// Characteristic polynomial `det(x I - m)` by Faddeev–LeVerrier.
pub fn charpoly(m: &Matrix<Rational>) -> UniPoly {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::filled(n, n, Rational::zero());
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
        let mut next = mat_mul(m, &mk);
        for i in 0..n {
            next[(i, i)] = next.get(i, i) + &coeffs[n - k + 1];
        }
        let am = mat_mul(m, &next);
        let tr: Rational = (0..n).map(|i| am.get(i, i).clone()).sum();
        coeffs[n - k] = -(tr / Rational::from(k));
        mk = next;
    }
    UniPoly::new(coeffs)
}

/// Row-space containment: every row of `b` lies in the row space of `a`.
pub fn row_space_contains<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> bool {
    let stacked = stack_rows(a, b);
    rank(&stacked) == rank(a)
}

pub fn stack_rows<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    assert_eq!(a.cols(), b.cols());
    Matrix::from_fn(a.rows() + b.rows(), a.cols(), |i, j| {
        if i < a.rows() {
            a.get(i, j).clone()
        } else {
            b.get(i - a.rows(), j).clone()
        }
    })
}
