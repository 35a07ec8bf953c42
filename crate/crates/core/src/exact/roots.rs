//! Rational and Gaussian-rational root extraction for univariate polynomials.
//!
//! Each square-free factor is located numerically, candidate roots are
//! rationalized by continued fractions, and every accepted root is confirmed
//! by exact division. Anything not confirmed stays in the residual.

use super::gaussian::GaussianRational;
use super::poly::MultiPoly;
use super::rational::Rational;
use super::univariate::UniPoly;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RootReport {
    /// Rational roots with multiplicity, sorted by value.
    pub rational: Vec<(Rational, usize)>,
    /// Non-real Gaussian-rational roots with multiplicity; conjugates both listed.
    pub gaussian: Vec<(GaussianRational, usize)>,
    /// Monic factor left after deflation (1 when fully split).
    pub residual: UniPoly,
}

impl RootReport {
    pub fn is_split(&self) -> bool {
        self.residual.degree() == 0
    }

    /// All roots as Gaussian rationals, real roots first.
    pub fn all_roots(&self) -> Vec<(GaussianRational, usize)> {
        self.rational
            .iter()
            .map(|(r, m)| (GaussianRational::real(r.clone()), *m))
            .chain(self.gaussian.iter().cloned())
            .collect()
    }
}

/// Roots of a polynomial in at most one variable.
pub fn rational_roots(p: &MultiPoly) -> Result<RootReport> {
    if p.is_zero() {
        return Err(Error::InvalidMetric("rational_roots of the zero polynomial".into()));
    }
    let (u, _) = UniPoly::from_multi(p)?;
    Ok(univariate_roots(&u))
}

pub fn univariate_roots(p: &UniPoly) -> RootReport {
    let mut rational = Vec::new();
    let mut gaussian = Vec::new();
    let mut residual = UniPoly::one();
    for (k, f) in p.square_free_decomposition().into_iter().enumerate() {
        let mult = k + 1;
        if f.degree() == 0 {
            continue;
        }
        let (lin, quad, rest) = split_square_free(&f);
        rational.extend(lin.into_iter().map(|r| (r, mult)));
        gaussian.extend(quad.into_iter().map(|z| (z, mult)));
        residual = residual.mul(&rest.pow(mult as u32));
    }
    rational.sort();
    gaussian.sort();
    RootReport { rational, gaussian, residual }
}

fn split_square_free(f: &UniPoly) -> (Vec<Rational>, Vec<GaussianRational>, UniPoly) {
    let mut rest = f.monic();
    let mut lin = Vec::new();
    let mut quad = Vec::new();
    // Zero root first; it needs no numerics.
    if rest.coeffs()[0].is_zero() {
        lin.push(Rational::zero());
        rest = rest.exact_div(&UniPoly::from_ints(&[0, 1])).expect("x divides");
    }
    if rest.degree() == 1 {
        lin.push(-&rest.coeffs()[0]);
        return (lin, quad, UniPoly::one());
    }
    if rest.degree() == 2 {
        if let Some((l, q)) = split_quadratic(&rest) {
            lin.extend(l);
            quad.extend(q);
            return (lin, quad, UniPoly::one());
        }
        return (lin, quad, rest);
    }
    if rest.degree() == 0 {
        return (lin, quad, UniPoly::one());
    }
    for z in numeric_roots(&rest) {
        if rest.degree() == 0 {
            break;
        }
        if z.1.abs() < 1e-7 * (1.0 + z.0.abs()) {
            if let Some(r) = rationalize(z.0).filter(|r| rest.eval(r).is_zero()) {
                if !lin.contains(&r) {
                    rest = rest.exact_div(&UniPoly::linear(&r)).expect("root divides");
                    lin.push(r);
                }
            }
        } else if z.1 > 0.0 {
            let (Some(re), Some(im)) = (rationalize(z.0), rationalize(z.1)) else { continue };
            // (x - z)(x - conj z) = x^2 - 2 re x + |z|^2
            let q = UniPoly::new(vec![&re * &re + &im * &im, -(&re * &Rational::from(2)), Rational::one()]);
            if let Some(d) = rest.exact_div(&q) {
                rest = d;
                quad.push(GaussianRational::new(re.clone(), im.clone()));
                quad.push(GaussianRational::new(re, -im));
            }
        }
    }
    if rest.degree() == 1 {
        lin.push(-&rest.coeffs()[0]);
        rest = UniPoly::one();
    } else if rest.degree() == 2 {
        if let Some((l, q)) = split_quadratic(&rest) {
            lin.extend(l);
            quad.extend(q);
            rest = UniPoly::one();
        }
    }
    (lin, quad, rest)
}

/// Roots of a monic quadratic over Q or Q(i), if it splits there.
fn split_quadratic(p: &UniPoly) -> Option<(Vec<Rational>, Vec<GaussianRational>)> {
    let b = &p.coeffs()[1];
    let c = &p.coeffs()[0];
    let disc = b * b - c * &Rational::from(4);
    let half = Rational::frac(1, 2);
    let mid = -(b * &half);
    if let Some(s) = disc.sqrt_exact() {
        let s = &s * &half;
        return Some((vec![&mid - &s, &mid + &s], Vec::new()));
    }
    let s = (-&disc).sqrt_exact()?;
    let s = &s * &half;
    Some((Vec::new(), vec![GaussianRational::new(mid.clone(), s.clone()), GaussianRational::new(mid, -s)]))
}

/// Best rational approximation with bounded denominator, by continued fractions.
fn rationalize(x: f64) -> Option<Rational> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    const MAX_DEN: i64 = 1_000_000;
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    let mut best = None;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > MAX_DEN {
            break;
        }
        best = Some(Rational::frac(h2, k2));
        if ((h2 as f64) / (k2 as f64) - x).abs() <= 1e-9 * (1.0 + x.abs()) {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    best
}

/// Aberth iteration on a square-free monic polynomial; returns complex roots
/// as `(re, im)` pairs.
fn numeric_roots(p: &UniPoly) -> Vec<(f64, f64)> {
    let n = p.degree();
    let dp = p.derivative();
    let radius = 1.0 + p.coeffs().iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            (0.5 * radius * t.cos(), 0.5 * radius * t.sin())
        })
        .collect();
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let pv = p.eval_f64(z[i]);
            if pv.0 == 0.0 && pv.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(pv, dp.eval_f64(z[i]));
            let mut s = (0.0, 0.0);
            for j in 0..n {
                if i != j {
                    let r = cdiv((1.0, 0.0), (z[i].0 - z[j].0, z[i].1 - z[j].1));
                    s = (s.0 + r.0, s.1 + r.1);
                }
            }
            let prod = (ratio.0 * s.0 - ratio.1 * s.1, ratio.0 * s.1 + ratio.1 * s.0);
            let w = cdiv(ratio, (1.0 - prod.0, -prod.1));
            if w.0.is_finite() && w.1.is_finite() {
                z[i] = (z[i].0 - w.0, z[i].1 - w.1);
                moved = moved.max(w.0.abs() + w.1.abs());
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}
