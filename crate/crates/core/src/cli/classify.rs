//! Classification of a pencil read from a file: Segre data, eigenvalues as
//! polynomials when they are affine in `u`, and the closest catalog entries.

use serde::{Deserialize, Serialize};

use crate::catalog::{CatalogEntry, ExpectedEigenvalue};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, MultiPoly, Rational};
use crate::pencil::{affinor, default_points, segre_at, segre_type, EigenBlocks, SegreReport};
use crate::tensor::{Affinor, OperatorSpec};

/// Step along coordinate lines when fitting eigenvalues. Larger than the
/// sampling range of [`default_points`], so shifted points never hit `0`
/// or `±1`.
const LINE_STEP: i64 = 101;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvalueValues {
    pub point: Vec<Rational>,
    pub eigenvalues: Vec<EigenBlocks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub n: usize,
    pub d: usize,
    pub symbol: String,
    pub segre: SegreReport,
    /// `re + i*(im)` per eigenvalue, when every eigenvalue is affine in `u`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue_polynomials: Option<Vec<String>>,
    /// Values at each sample point, when no polynomial fit exists.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalue_values: Option<Vec<EigenvalueValues>>,
    /// Two or more eigenvalue groups (a complex pair counts once): the pair
    /// splits along the generalized eigenspaces.
    pub reducible_hint: bool,
    /// Best catalog match, then every entry with the same score.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_match: Option<String>,
    pub matches: Vec<String>,
}

/// Classify `g^2 (g^1)^{-1}` and compare with `entries`.
pub fn classify(spec: &OperatorSpec, entries: &[CatalogEntry]) -> Result<ClassifyReport> {
    if spec.d() < 2 {
        return Err(Error::ParameterOutOfRange("classification needs at least two metrics".into()));
    }
    let l = affinor(spec.metric(0), spec.metric(1))?;
    let segre = segre_type(&l, None)?;
    let symbol = segre.symbol();
    let fitted = fit_affine_eigenvalues(&l)?;
    let eigenvalue_values = match fitted {
        Some(_) => None,
        None => Some(
            default_points(spec.nvars())
                .into_iter()
                .map(|p| Ok(EigenvalueValues { eigenvalues: segre_at(&l.matrix().eval(&p))?, point: p }))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let groups = segre.eigenvalues.iter().filter(|e| e.value.im.is_zero() || e.value.im.is_positive()).count();
    let (best_match, matches) = rank_matches(spec, &symbol, fitted.as_deref(), entries);
    Ok(ClassifyReport {
        n: spec.n(),
        d: spec.d(),
        symbol,
        reducible_hint: groups > 1,
        segre,
        eigenvalue_polynomials: fitted.map(|f| f.iter().map(ExpectedEigenvalue::render).collect()),
        eigenvalue_values,
        best_match,
        matches,
    })
}

/// Eigenvalues as affine functions of all variables, or `None` when they
/// are not. Each eigenvalue is followed along the lines `p0 + t h e_k`,
/// `t = 0, 1, 2`; an affine branch satisfies `λ(2) = 2 λ(1) - λ(0)`. The fit
/// is then checked at every default point.
pub fn fit_affine_eigenvalues(l: &Affinor) -> Result<Option<Vec<ExpectedEigenvalue>>> {
    let nv = l.matrix().nvars();
    let points = default_points(nv);
    let p0 = &points[0];
    let at = |p: &[Rational]| segre_at(&l.matrix().eval(p));
    let base = at(p0)?;
    let h = Rational::from(LINE_STEP);
    let mut slopes: Vec<Vec<GaussianRational>> = vec![Vec::with_capacity(nv); base.len()];
    for k in 0..nv {
        let shifted = |t: i64| {
            let mut p = p0.clone();
            p[k] = &p[k] + &Rational::from(t * LINE_STEP);
            at(&p)
        };
        let (one, two) = (shifted(1)?, shifted(2)?);
        for (x, slope) in base.iter().zip(slopes.iter_mut()) {
            let hits: Vec<&EigenBlocks> = one
                .iter()
                .filter(|y| y.blocks == x.blocks)
                .filter(|y| {
                    let z = &(&y.value + &y.value) - &x.value;
                    two.iter().any(|w| w.blocks == x.blocks && w.value == z)
                })
                .collect();
            let [y] = hits.as_slice() else { return Ok(None) };
            let diff = &y.value - &x.value;
            slope.push(GaussianRational::new(diff.re.checked_div(&h)?, diff.im.checked_div(&h)?));
        }
    }
    let fitted: Vec<ExpectedEigenvalue> = base
        .iter()
        .zip(&slopes)
        .map(|(x, s)| {
            let part = |value: &Rational, coeff: &dyn Fn(&GaussianRational) -> Rational| {
                let mut p = MultiPoly::constant(nv, value.clone());
                for (k, c) in s.iter().enumerate() {
                    let c = coeff(c);
                    p.add_assign_ref(&MultiPoly::constant(nv, -(&c * &p0[k])));
                    p.add_assign_ref(&MultiPoly::var(nv, k).scale(&c));
                }
                p
            };
            ExpectedEigenvalue {
                re: part(&x.value.re, &|c| c.re.clone()),
                im: part(&x.value.im, &|c| c.im.clone()),
                blocks: x.blocks.clone(),
            }
        })
        .collect();
    for p in &points {
        let mut want: Vec<EigenBlocks> =
            fitted.iter().map(|e| EigenBlocks { value: e.at(p), blocks: e.blocks.clone() }).collect();
        let mut got = at(p)?;
        want.sort_by(|a, b| a.value.cmp(&b.value));
        got.sort_by(|a, b| a.value.cmp(&b.value));
        if want != got {
            return Ok(None);
        }
    }
    Ok(Some(fitted))
}

/// Entries with the same `n`, `d` and Segre symbol, scored by how well their
/// recorded eigenvalues agree: identical polynomials, then the same pattern
/// of constant and non-constant eigenvalues.
fn rank_matches(
    spec: &OperatorSpec,
    symbol: &str,
    fitted: Option<&[ExpectedEigenvalue]>,
    entries: &[CatalogEntry],
) -> (Option<String>, Vec<String>) {
    let constancy = |e: &[ExpectedEigenvalue]| {
        let mut v: Vec<(bool, Vec<usize>)> =
            e.iter().map(|x| (x.re.is_constant() && x.im.is_constant(), x.blocks.clone())).collect();
        v.sort();
        v
    };
    let same_polys = |a: &[ExpectedEigenvalue], b: &[ExpectedEigenvalue]| {
        let key = |e: &[ExpectedEigenvalue]| {
            let mut v: Vec<(String, String, Vec<usize>)> =
                e.iter().map(|x| (x.re.to_string(), x.im.to_string(), x.blocks.clone())).collect();
            v.sort();
            v
        };
        key(a) == key(b)
    };
    let mut scored: Vec<(u8, &CatalogEntry)> = entries
        .iter()
        .filter(|e| e.n() == spec.n() && e.d() == spec.d() && e.segre.as_deref() == Some(symbol))
        .map(|e| {
            let score = match (fitted, &e.eigenvalues) {
                (Some(f), Some(exp)) if e.params.is_empty() && same_polys(f, exp) => 2,
                (Some(f), Some(exp)) if constancy(f) == constancy(exp) => 1,
                _ => 0,
            };
            (score, e)
        })
        .collect();
    let Some(top) = scored.iter().map(|(s, _)| *s).max() else { return (None, Vec::new()) };
    scored.retain(|(s, _)| *s == top);
    let ids: Vec<String> = scored.iter().map(|(_, e)| e.id.clone()).collect();
    (ids.first().cloned(), ids)
}
