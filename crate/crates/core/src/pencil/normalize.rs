//! Normal forms of single-Jordan-block pencils by Lie series along the
//! isometries `X_{(k)}`, and the scaling law behind `ξ0 = 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::linalg;
use crate::exact::{Matrix, MultiPoly, PolyMatrix, Rational};
use crate::tensor::lie_derivative_bivector;

use super::families::{jordan_g0, mu, p_coeff, x_field};

/// `g̃ = g̃0(λ) + Σ_m ξ_m μ^{(n;m)}`, `m = 0..n-2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JordanFamilyCoeffs {
    pub n: usize,
    pub xi: Vec<Rational>,
    pub lambda: Rational,
}

impl JordanFamilyCoeffs {
    pub fn new(n: usize, xi: Vec<Rational>, lambda: Rational) -> Result<Self> {
        if n < 2 {
            return Err(Error::ParameterOutOfRange(format!("n must be at least 2, got {n}")));
        }
        if xi.len() != n - 1 {
            return Err(Error::LengthMismatch { expected: n - 1, got: xi.len() });
        }
        Ok(JordanFamilyCoeffs { n, xi, lambda })
    }

    pub fn bivector(&self) -> PolyMatrix {
        let n = self.n;
        let mut m = PolyMatrix::from_rational(&jordan_g0(n, &self.lambda), n);
        for (k, c) in self.xi.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&mu(n, k).scale(c));
            }
        }
        m
    }

    /// `ξ0 (n-1) u^n + λ`.
    pub fn eigenvalue(&self) -> MultiPoly {
        let n = self.n;
        let mut p = MultiPoly::var(n, n - 1).scale(&(&self.xi[0] * &Rational::from(n - 1)));
        p.add_assign_ref(&MultiPoly::constant(n, self.lambda.clone()));
        p
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowStep {
    pub k: usize,
    /// `p_{[n,k,α]}` for the leading index `α`.
    pub weight: i64,
    /// `None` when the weight vanishes and the step is skipped.
    pub t: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub n: usize,
    /// Index of the leading `μ`.
    pub alpha: usize,
    /// Coefficients of `μ^{(n;0)}..μ^{(n;n-2)}` after the flow.
    pub coeffs: Vec<Rational>,
    /// Constant part after the final translation.
    #[serde(serialize_with = "serialize_matrix")]
    pub constant: Matrix<Rational>,
    pub steps: Vec<FlowStep>,
    /// Shift `u -> u + a` applied before the flows.
    pub initial_shift: Vec<Rational>,
    /// Constant part that no translation removes; the flows then act on the
    /// linear part alone.
    #[serde(serialize_with = "serialize_opt_matrix")]
    pub set_aside: Option<Matrix<Rational>>,
    /// Shift applied after the flows to clean up the constant part.
    pub final_shift: Vec<Rational>,
    #[serde(skip)]
    pub bivector: PolyMatrix,
}

fn serialize_matrix<S: serde::Serializer>(m: &Matrix<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    m.to_rows().serialize(s)
}

fn serialize_opt_matrix<S: serde::Serializer>(
    m: &Option<Matrix<Rational>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    m.as_ref().map(Matrix::to_rows).serialize(s)
}

impl NormalForm {
    /// Indices `m` with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&m| !self.coeffs[m].is_zero()).collect()
    }
}

/// `exp(t Lie_X) h`, which terminates for the nilpotent linear fields used
/// here.
pub fn lie_series(h: &PolyMatrix, x: &[MultiPoly], t: &Rational) -> Result<PolyMatrix> {
    let mut out = h.clone();
    let mut term = h.clone();
    let limit = 4 * h.rows() + 4;
    for s in 1..=limit {
        term = lie_derivative_bivector(&term, x)?.scale(&(t / &Rational::from(s)));
        if term.is_zero() {
            return Ok(out);
        }
        out = out.add(&term);
    }
    Err(Error::ParameterOutOfRange("Lie series did not terminate".into()))
}

/// Coefficients of the `μ^{(n;m)}` in the linear part of `h`, read from the
/// `(1,1)` entry and confirmed by reassembling.
fn mu_coeffs(n: usize, h: &PolyMatrix) -> Result<Vec<Rational>> {
    let coeffs: Vec<Rational> = (0..n - 1)
        .map(|m| {
            let c = h.get(0, 0).coefficient(&crate::exact::Monomial::var(n, m));
            c / Rational::from(2 * m as i64 + 2 - 2 * n as i64)
        })
        .collect();
    let mut lin = PolyMatrix::zeros(n, n);
    for (m, c) in coeffs.iter().enumerate() {
        lin = lin.add(&mu(n, m).scale(c));
    }
    if lin != h.map(|p| p.homogeneous_part(n, 1)) {
        return Err(Error::InvalidMetric("linear part is not a combination of the μ bivectors".into()));
    }
    Ok(coeffs)
}

/// Translation `a` with `Σ c_m μ^{(n;m)}(a) = target - current`, if any.
fn translation_to(n: usize, coeffs: &[Rational], current: &Matrix<Rational>, target: &Matrix<Rational>) -> Option<Vec<Rational>> {
    let mut lin = PolyMatrix::zeros(n, n);
    for (m, c) in coeffs.iter().enumerate() {
        lin = lin.add(&mu(n, m).scale(c));
    }
    // augmented system, one row per entry
    let rows: Vec<Vec<Rational>> = (0..n * n)
        .map(|e| {
            let (i, j) = (e / n, e % n);
            let mut row: Vec<Rational> =
                (0..n).map(|a| lin.get(i, j).coefficient(&crate::exact::Monomial::var(n, a))).collect();
            row.push(target.get(i, j) - current.get(i, j));
            row
        })
        .collect();
    let aug = Matrix::from_rows(rows).ok()?;
    let (r, pivots) = linalg::rref(&aug);
    if pivots.contains(&n) {
        return None;
    }
    let mut a = vec![Rational::zero(); n];
    for (row, &p) in pivots.iter().enumerate() {
        a[p] = r.get(row, n).clone();
    }
    Some(a)
}

fn shift_by(h: &PolyMatrix, a: &[Rational]) -> PolyMatrix {
    let n = a.len();
    let shift: Vec<MultiPoly> = (0..n)
        .map(|i| {
            let mut p = MultiPoly::var(n, i);
            p.add_assign_ref(&MultiPoly::constant(n, a[i].clone()));
            p
        })
        .collect();
    h.map(|p| p.compose(&shift))
}

/// Optional translation to `initial`, the flows, then a translation to the
/// first reachable constant in `finals` (kept as is when none is).
fn run_flow(
    n: usize,
    alpha: usize,
    h: PolyMatrix,
    initial: Option<Matrix<Rational>>,
    finals: &[Matrix<Rational>],
) -> Result<NormalForm> {
    let mut h = h;
    let mut initial_shift = vec![Rational::zero(); n];
    let mut set_aside = None;
    if let Some(target) = initial {
        let c = mu_coeffs(n, &h)?;
        match translation_to(n, &c, &h.constant_part(), &target) {
            Some(a) => {
                h = shift_by(&h, &a);
                initial_shift = a;
            }
            None => {
                set_aside = Some(h.constant_part());
                h = h.map(|p| p.homogeneous_part(n, 1));
            }
        }
    }
    let mut steps = Vec::new();
    for k in 1..(n - 1).saturating_sub(alpha) {
        let weight = p_coeff(n, k, alpha);
        if weight == 0 {
            steps.push(FlowStep { k, weight, t: None });
            continue;
        }
        let c = mu_coeffs(n, &h)?;
        let t = -(&c[alpha + k]) / Rational::from(weight);
        if !t.is_zero() {
            h = lie_series(&h, &x_field(n, k), &t)?;
        }
        steps.push(FlowStep { k, weight, t: Some(t) });
    }
    let coeffs = mu_coeffs(n, &h)?;
    let current = h.constant_part();
    let final_shift =
        finals.iter().find_map(|t| translation_to(n, &coeffs, &current, t)).unwrap_or_else(|| vec![Rational::zero(); n]);
    let bivector = shift_by(&h, &final_shift);
    Ok(NormalForm {
        n,
        alpha,
        coeffs,
        constant: bivector.constant_part(),
        steps,
        initial_shift,
        set_aside,
        final_shift,
        bivector,
    })
}

/// Reduce `g̃0 + μ^{(n;0)} + Σ_{m≥1} ξ_m μ^{(n;m)}`: translate away `g̃0`
/// (or set it aside when no translation does so, which happens for generic
/// `ξ` when `n ≡ 1 mod 3`, `n ≥ 7`), then apply `exp(t_k Lie_{X_{(k)}})`, `k = 1..n-2`, each killing the
/// coefficient of `μ^{(n;k)}` unless `p_{[n,k,0]} = 0`. For `n = 4` the
/// constant part cannot be removed and is brought back to `g̃0` at the end.
pub fn lie_flow_normalize(c: &JordanFamilyCoeffs) -> Result<NormalForm> {
    if !c.xi[0].is_one() {
        return Err(Error::ScalingNotNormalized(c.xi[0].to_string()));
    }
    let n = c.n;
    if n == 4 {
        return run_flow(n, 0, c.bivector(), None, &[jordan_g0(n, &c.lambda)]);
    }
    run_flow(n, 0, c.bivector(), Some(Matrix::filled(n, n, Rational::zero())), &[])
}

/// Constant-eigenvalue variant: `ξ_0 = .. = ξ_{α-1} = 0`, `ξ_α = 1`. The
/// coefficients of `μ^{(n;α+k)}` are removed except for `k = (n-1+2α)/3`.
/// The flows also move the constant part; a final translation restores
/// `g̃0(λ)` when one exists, otherwise the moved constant is reported.
pub fn lie_flow_normalize_constant_eig(c: &JordanFamilyCoeffs) -> Result<NormalForm> {
    let n = c.n;
    let alpha = c
        .xi
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::ScalingNotNormalized("all coefficients vanish".into()))?;
    if !c.xi[alpha].is_one() {
        return Err(Error::ScalingNotNormalized(c.xi[alpha].to_string()));
    }
    if alpha == 0 {
        return Err(Error::ParameterOutOfRange("leading index 0 is the non-constant eigenvalue case".into()));
    }
    run_flow(n, alpha, c.bivector(), None, &[jordan_g0(n, &c.lambda)])
}

/// `γ^{(n-1)/2 + k}`, the factor in `μ^{(n;k)}(u) = γ^{(n-1)/2+k} μ^{(n;k)}(v)`
/// under `v^i = γ^{(n+1)/2 - i} u^i`.
pub fn scaling_action(n: usize, k: usize, gamma: &Rational) -> Result<Rational> {
    if gamma.is_zero() {
        return Err(Error::ParameterOutOfRange("γ must be nonzero".into()));
    }
    let twice = (n as i32 - 1) + 2 * k as i32;
    if twice % 2 == 0 {
        return Ok(gamma.pow(twice / 2));
    }
    let root = gamma.sqrt_exact().ok_or_else(|| Error::NonSquareGamma(gamma.to_string()))?;
    Ok(root.pow(twice))
}
