//! Segre type of an affinor: eigenvalues and Jordan block sizes at sample
//! points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::linalg::{self, Field};
use crate::exact::roots::univariate_roots;
use crate::exact::{GaussianRational, Matrix, Rational};
use crate::tensor::Affinor;

/// Number of seeded points used when none are given.
pub const SEGRE_POINTS: usize = 5;
const SEGRE_SEED: u64 = 0x5e67_e000;
/// Coordinates are drawn from `±[SEGRE_MIN, SEGRE_MAX]`: zero and `±1` are
/// typical special values of entries like `1 - u4` or `(n-4) u^{n-1}`.
const SEGRE_MIN: i64 = 2;
const SEGRE_MAX: i64 = 99;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenBlocks {
    pub value: GaussianRational,
    /// Jordan block sizes, descending.
    pub blocks: Vec<usize>,
}

impl EigenBlocks {
    pub fn multiplicity(&self) -> usize {
        self.blocks.iter().sum()
    }
}

/// Shape of a Segre type with the eigenvalues forgotten: one
/// `(is_real, partition)` entry per eigenvalue, sorted.
pub type SegreShape = Vec<(bool, Vec<usize>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegreReport {
    /// Point at which `eigenvalues` was computed.
    pub point: Vec<Rational>,
    pub eigenvalues: Vec<EigenBlocks>,
    /// All sample points gave the same shape.
    pub consistent: bool,
    /// Distinct shapes seen across the sample points.
    pub observed: Vec<SegreShape>,
}

impl SegreReport {
    pub fn shape(&self) -> SegreShape {
        shape_of(&self.eigenvalues)
    }

    /// Bracket notation: `[3]`, `[2,2]` for a single eigenvalue, groups in
    /// parentheses otherwise, e.g. `[(2,1),1]`. Complex pairs are marked `c`.
    pub fn symbol(&self) -> String {
        segre_symbol(&self.eigenvalues)
    }

    /// Block sizes of the single eigenvalue, if there is only one.
    pub fn partition(&self) -> Option<&[usize]> {
        match self.eigenvalues.as_slice() {
            [e] => Some(&e.blocks),
            _ => None,
        }
    }
}

fn shape_of(eigs: &[EigenBlocks]) -> SegreShape {
    let mut s: SegreShape = eigs.iter().map(|e| (e.value.is_real(), e.blocks.clone())).collect();
    s.sort();
    s
}

/// Bracket notation of a list of eigenvalues with their blocks, as in
/// [`SegreReport::symbol`].
pub fn segre_symbol(eigs: &[EigenBlocks]) -> String {
    // Canonical order: larger groups first, then real before complex.
    let mut eigs = eigs.to_vec();
    eigs.sort_by(|a, b| b.blocks.cmp(&a.blocks).then(b.value.is_real().cmp(&a.value.is_real())));
    let eigs = eigs.as_slice();
    let join = |b: &[usize]| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    if let [e] = eigs {
        return format!("[{}]", join(&e.blocks));
    }
    let parts: Vec<String> = eigs
        .iter()
        .map(|e| {
            let body = if e.blocks.len() == 1 { join(&e.blocks) } else { format!("({})", join(&e.blocks)) };
            if e.value.is_real() {
                body
            } else {
                format!("c{body}")
            }
        })
        .collect();
    format!("[{}]", parts.join(","))
}

/// Seeded integer points in the affinor's variables, avoiding `0` and `±1`.
pub fn default_points(nvars: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEGRE_SEED);
    (0..SEGRE_POINTS)
        .map(|_| {
            (0..nvars)
                .map(|_| {
                    let v = rng.gen_range(SEGRE_MIN..=SEGRE_MAX);
                    Rational::from(if rng.gen_bool(0.5) { v } else { -v })
                })
                .collect()
        })
        .collect()
}

/// Eigenvalues and block partitions of a rational matrix.
pub fn segre_at(m: &Matrix<Rational>) -> Result<Vec<EigenBlocks>> {
    let n = m.rows();
    let roots = univariate_roots(&linalg::charpoly(m));
    if !roots.is_split() {
        return Err(Error::UnsupportedEigenvalueField(roots.residual.to_string()));
    }
    let mut out = Vec::new();
    for (value, mult) in roots.rational {
        out.push(EigenBlocks { blocks: partition_for(m, &value, mult), value: GaussianRational::real(value) });
    }
    let gm = m.map(GaussianRational::from_rational);
    for (value, mult) in roots.gaussian {
        out.push(EigenBlocks { blocks: partition_for(&gm, &value, mult), value });
    }
    debug_assert_eq!(out.iter().map(EigenBlocks::multiplicity).sum::<usize>(), n);
    Ok(out)
}

/// Block sizes from `r_k = rank (M - λ)^k`: there are `r_{k-1} - r_k` blocks
/// of size at least `k`.
fn partition_for<F: Field>(m: &Matrix<F>, lambda: &F, mult: usize) -> Vec<usize> {
    let n = m.rows();
    let shifted = linalg::mat_sub(m, &linalg::mat_scale(&linalg::identity(n), lambda));
    let mut at_least = Vec::new();
    let mut prev = n;
    let mut power = linalg::identity::<F>(n);
    while at_least.iter().sum::<usize>() < mult {
        power = linalg::mat_mul(&power, &shifted);
        let r = linalg::rank(&power);
        at_least.push(prev - r);
        prev = r;
    }
    // at_least[k-1] = #blocks of size >= k
    let mut blocks = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let bigger = at_least.get(k).copied().unwrap_or(0);
        for _ in 0..(at_least[k - 1] - bigger) {
            blocks.push(k);
        }
    }
    blocks
}

/// Segre type of `L`, sampled at `points` (seeded defaults when `None`).
///
/// The reported type is the most generic one attained: most distinct
/// eigenvalues, then fewest Jordan blocks (ranks only drop at special
/// points), ties going to the type seen most often.
pub fn segre_type(l: &Affinor, points: Option<&[Vec<Rational>]>) -> Result<SegreReport> {
    let nv = l.matrix().nvars();
    let pts = match points {
        Some(p) => p.to_vec(),
        None => default_points(nv),
    };
    if pts.is_empty() {
        return Err(Error::ParameterOutOfRange("no sample points".into()));
    }
    let mut results = Vec::with_capacity(pts.len());
    for p in &pts {
        if p.len() != nv {
            return Err(Error::LengthMismatch { expected: nv, got: p.len() });
        }
        results.push(segre_at(&l.matrix().eval(p))?);
    }
    let shapes: Vec<SegreShape> = results.iter().map(|e| shape_of(e)).collect();
    let mut observed: Vec<SegreShape> = Vec::new();
    for s in &shapes {
        if !observed.contains(s) {
            observed.push(s.clone());
        }
    }
    let count = |s: &SegreShape| shapes.iter().filter(|t| *t == s).count();
    let blocks = |s: &SegreShape| s.iter().map(|(_, b)| b.len()).sum::<usize>();
    let best = observed
        .iter()
        .max_by_key(|s| (s.len(), std::cmp::Reverse(blocks(s)), count(s)))
        .expect("at least one point")
        .clone();
    let idx = shapes.iter().position(|s| *s == best).expect("shape observed");
    Ok(SegreReport {
        point: pts[idx].clone(),
        eigenvalues: results.swap_remove(idx),
        consistent: observed.len() == 1,
        observed,
    })
}
