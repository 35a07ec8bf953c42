#![allow(dead_code)]

use hydroham::exact::{Matrix, MultiPoly, PolyMatrix, Rational};
use hydroham::tensor::LinearMetric;

pub fn r(p: i64) -> Rational {
    Rational::from(p)
}

/// Metric from 1-based symmetric entries: constants `(i, j, c)` and linear
/// terms `(i, j, k, c)` meaning `c u^k` at `(i, j)` and `(j, i)`.
pub fn metric(n: usize, constants: &[(usize, usize, i64)], linear: &[(usize, usize, usize, i64)]) -> LinearMetric {
    let mut g0 = Matrix::from_fn(n, n, |_, _| Rational::zero());
    for &(i, j, c) in constants {
        g0[(i - 1, j - 1)] = r(c);
        g0[(j - 1, i - 1)] = r(c);
    }
    let mut lin = Vec::new();
    for &(i, j, k, c) in linear {
        lin.push((i - 1, j - 1, k - 1, r(c)));
        if i != j {
            lin.push((j - 1, i - 1, k - 1, r(c)));
        }
    }
    LinearMetric::from_parts(&g0, &lin).unwrap()
}

pub fn antidiag(n: usize) -> LinearMetric {
    LinearMetric::antidiagonal(n, n)
}

/// Independent transcription of `μ^{(n;k)ij} = [3(i+j) - 2(n+2-k)] u^{i+j-1+k}`.
pub fn mu(n: usize, k: usize) -> LinearMetric {
    let mut lin = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            let a = i + j - 1 + k;
            let c = 3 * (i + j) as i64 - 2 * (n as i64 + 2 - k as i64);
            if a <= n && c != 0 {
                lin.push((i, j, a, c));
            }
        }
    }
    metric(n, &[], &lin)
}

/// The 2-component operator with `g = antidiag(1, 1)` and
/// `g̃ = [[-2u1, u2], [u2, 0]]`.
pub fn two_component_pair() -> (LinearMetric, LinearMetric) {
    (antidiag(2), metric(2, &[], &[(1, 1, 1, -2), (1, 2, 2, 1)]))
}

pub fn poly_matrix(m: &LinearMetric) -> PolyMatrix {
    m.matrix().clone()
}

pub fn u(nvars: usize, k: usize) -> MultiPoly {
    MultiPoly::var(nvars, k - 1)
}

/// Like [`metric`], but every value is given doubled, so `1` means `1/2`.
pub fn metric_halves(
    n: usize,
    constants: &[(usize, usize, i64)],
    linear: &[(usize, usize, usize, i64)],
) -> LinearMetric {
    let m = metric(n, constants, linear);
    m.scale(&Rational::frac(1, 2))
}

pub fn rational_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect(),
    )
    .unwrap()
}
