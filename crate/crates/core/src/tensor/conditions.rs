//! Hamiltonianity criteria and the operator verifier.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arr::{first_nonzero, Arr};
use super::backend::{Backend, JetBackend, Scalar, SymbolicBackend};
use super::geometry::{
    affinor_of, connection, contravariant_curvature, covariant_derivative3, killing_poly, nijenhuis, obstruction,
    second_covariant_derivative,
};
use super::metric::LinearMetric;
use super::operator::OperatorSpec;
use super::report::{
    ConditionResult, Mode, VerificationReport, VerifyOptions, Witness, MAX_REJECTIONS, SAMPLE_POINTS, SAMPLE_RANGE,
};
use crate::error::{Error, Result};
use crate::exact::{MultiPoly, PolyMatrix, Rational};

/// One evaluated condition before merging across sample points.
struct Check {
    name: String,
    metrics: Option<Vec<usize>>,
    required: bool,
    residual: Option<(Vec<usize>, String)>,
}

impl Check {
    fn new<S: Scalar>(name: &str, metrics: Option<Vec<usize>>, required: bool, arr: &Arr<S>) -> Self {
        Check { name: name.to_string(), metrics, required, residual: first_nonzero(arr) }
    }

    fn into_result(self) -> ConditionResult {
        ConditionResult {
            name: self.name,
            metrics: self.metrics,
            passed: self.residual.is_none(),
            required: self.required,
            witness: self.residual.map(|(indices, residual)| Witness { indices, residual }),
        }
    }
}

/// Evaluate checks symbolically, or at seeded random points and merge.
fn run_checks<FS, FJ>(
    opts: VerifyOptions,
    n: usize,
    nvars: usize,
    invert: &[&PolyMatrix],
    symbolic: FS,
    mut sampled: FJ,
) -> Result<Vec<ConditionResult>>
where
    FS: FnOnce(&SymbolicBackend) -> Result<Vec<Check>>,
    FJ: FnMut(&JetBackend) -> Result<Vec<Check>>,
{
    match opts.mode {
        Mode::Symbolic => {
            let be = SymbolicBackend::new(n, nvars, invert)?;
            Ok(symbolic(&be)?.into_iter().map(Check::into_result).collect())
        }
        Mode::Sampled => {
            let dets: Vec<MultiPoly> = invert.iter().map(|m| m.det()).collect::<Result<_>>()?;
            if dets.iter().any(MultiPoly::is_zero) {
                return Err(Error::IdenticallySingular);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let mut merged: Option<Vec<Check>> = None;
            let mut accepted = 0;
            let mut rejected = 0;
            while accepted < SAMPLE_POINTS {
                let point: Vec<Rational> =
                    (0..nvars).map(|_| Rational::from(rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE))).collect();
                if dets.iter().any(|d| d.eval(&point).is_zero()) {
                    rejected += 1;
                    if rejected >= MAX_REJECTIONS {
                        return Err(Error::DegenerateEverywhere { attempts: rejected });
                    }
                    continue;
                }
                accepted += 1;
                let checks = sampled(&JetBackend::new(n, point))?;
                merged = Some(match merged {
                    None => checks,
                    Some(prev) => prev
                        .into_iter()
                        .zip(checks)
                        .map(|(p, c)| if p.residual.is_some() { p } else { c })
                        .collect(),
                });
            }
            Ok(merged.unwrap_or_default().into_iter().map(Check::into_result).collect())
        }
    }
}

fn mokhov_checks<B: Backend>(be: &B, g: &PolyMatrix, h: &PolyMatrix) -> Result<Vec<Check>> {
    let n = be.n();
    let cg = connection(be, g)?;
    let ch = connection(be, h)?;
    let mut out = vec![
        Check::new("flatness[1]", Some(vec![1]), true, &contravariant_curvature(be, g, &cg)),
        Check::new("flatness[2]", Some(vec![2]), true, &contravariant_curvature(be, h, &ch)),
    ];
    let ob = obstruction(be, g, h, &cg, &ch);
    let t = &ob.t_raised;
    let tm = &ob.t_mixed;
    let t1 = Arr::from_fn(n, 3, |x| t.at3(x[0], x[1], x[2]).sub(t.at3(x[2], x[1], x[0])));
    let t2 = Arr::from_fn(n, 3, |x| {
        let (i, j, k) = (x[0], x[1], x[2]);
        t.at3(i, j, k).add(t.at3(j, k, i)).add(t.at3(k, i, j))
    });
    let t3 = Arr::from_fn(n, 4, |x| {
        let (i, j, r, tt) = (x[0], x[1], x[2], x[3]);
        let mut acc = be.zero();
        for s in 0..n {
            acc = acc.add(&t.at3(i, j, s).mul(tm.at3(r, s, tt)));
            acc = acc.sub(&t.at3(i, r, s).mul(tm.at3(j, s, tt)));
        }
        acc
    });
    out.push(Check::new("T1", None, true, &t1));
    out.push(Check::new("T2", None, true, &t2));
    out.push(Check::new("T3", None, true, &t3));
    out.push(Check::new("T4", None, true, &covariant_derivative3(be, t, &cg)));
    out.push(Check::new("T5", None, true, &covariant_derivative3(be, t, &ch)));
    Ok(out)
}

/// Mokhov's criterion for the pair `(g, h)`: flatness of both metrics and the
/// five obstruction-tensor conditions
/// `T^{ijk}=T^{kji}`, `T^{(ijk)}` cyclic sum zero,
/// `T^{ijs}T^r_{st}=T^{irs}T^j_{st}`, `∇T = 0`, `∇̃T = 0`.
pub fn mokhov_conditions(g: &LinearMetric, h: &LinearMetric, opts: VerifyOptions) -> Result<VerificationReport> {
    check_pair(g, h)?;
    let (gm, hm) = (g.matrix(), h.matrix());
    let conditions = run_checks(
        opts,
        g.n(),
        g.nvars(),
        &[gm, hm],
        |be| mokhov_checks(be, gm, hm),
        |be| mokhov_checks(be, gm, hm),
    )?;
    Ok(VerificationReport::new("mokhov", opts, conditions))
}

fn check_pair(g: &LinearMetric, h: &LinearMetric) -> Result<()> {
    if g.n() != h.n() || g.nvars() != h.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "metrics over {} and {} components ({} and {} variables)",
            g.n(),
            h.n(),
            g.nvars(),
            h.nvars()
        )));
    }
    Ok(())
}

pub(crate) fn constant_inverse(g: &LinearMetric) -> Result<PolyMatrix> {
    if !g.is_constant() {
        return Err(Error::FirstMetricNotConstant);
    }
    let inv = g.matrix().inverse()?;
    let mut out = PolyMatrix::zeros(g.n(), g.nvars());
    for i in 0..g.n() {
        for j in 0..g.n() {
            out[(i, j)] = inv.get(i, j).as_poly().ok_or_else(|| {
                Error::InvalidMetric("inverse of the constant metric is not polynomial in the parameters".into())
            })?;
        }
    }
    Ok(out)
}

/// Affinor `L = h g^{-1}` for a constant `g`, as a polynomial matrix.
pub fn affinor_matrix(g: &LinearMetric, h: &LinearMetric) -> Result<PolyMatrix> {
    check_pair(g, h)?;
    let gi = constant_inverse(g)?;
    h.matrix().mul(&gi)
}

/// Second partial derivatives `∂_a∂_b h^{ij}` (indexed `[a][b][i][j]`), which
/// vanish iff `h` is linear in the flat coordinates of the constant `g`.
pub fn linearity_residual(g: &LinearMetric, h: &PolyMatrix) -> Result<Arr<MultiPoly>> {
    if !g.is_constant() {
        return Err(Error::FirstMetricNotConstant);
    }
    let n = g.n();
    Ok(Arr::from_fn(n, 4, |x| h.get(x[2], x[3]).partial(x[0]).partial(x[1])))
}

/// Killing residual of `h` with respect to `g`; fully symmetric, zero iff
/// `h` is a Killing bivector of `g`.
pub fn killing_residual(g: &LinearMetric, h: &LinearMetric) -> Arr<MultiPoly> {
    killing_poly(g.n(), g.matrix(), h.matrix())
}

/// The three flat-coordinate conditions for a constant `g` and linear `h`:
/// linearity of `h`, vanishing Nijenhuis torsion of `L = h g^{-1}`, and the
/// Killing condition for `h`. Flatness of `h` is recorded alongside but does
/// not enter the verdict.
pub fn nijenhuis_killing_conditions(
    g: &LinearMetric,
    h: &LinearMetric,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    check_pair(g, h)?;
    let n = g.n();
    let lin = linearity_residual(g, h.matrix())?;
    let l = affinor_matrix(g, h)?;
    let nij = nijenhuis(&l, &MultiPoly::zero(g.nvars()));
    let kil = killing_residual(g, h);
    let mut conditions = vec![
        Check::new("linearity", None, true, &lin).into_result(),
        Check::new("nijenhuis", None, true, &nij).into_result(),
        Check::new("killing", None, true, &kil).into_result(),
    ];
    let hm = h.matrix();
    let flat = run_checks(
        opts,
        n,
        g.nvars(),
        &[hm],
        |be| flatness_check(be, hm, 2, false),
        |be| flatness_check(be, hm, 2, false),
    )?;
    conditions.extend(flat);
    Ok(VerificationReport::new("nijenhuis-killing", opts, conditions))
}

fn flatness_check<B: Backend>(be: &B, g: &PolyMatrix, label: usize, required: bool) -> Result<Vec<Check>> {
    let c = connection(be, g)?;
    Ok(vec![Check::new(&format!("flatness[{label}]"), Some(vec![label]), required, &contravariant_curvature(be, g, &c))])
}

/// Flatness of a single metric.
pub fn is_flat(g: &LinearMetric, opts: VerifyOptions) -> Result<bool> {
    let gm = g.matrix();
    let r = run_checks(
        opts,
        g.n(),
        g.nvars(),
        &[gm],
        |be| flatness_check(be, gm, 1, true),
        |be| flatness_check(be, gm, 1, true),
    )?;
    Ok(r.iter().all(|c| c.passed))
}

fn pairwise_checks<B: Backend>(be: &B, metrics: &[&PolyMatrix]) -> Result<Vec<Check>> {
    let d = metrics.len();
    let conns = metrics.iter().map(|g| connection(be, g)).collect::<Result<Vec<_>>>()?;
    let mut out = vec![Check::new("flatness[1]", Some(vec![1]), true, &contravariant_curvature(be, metrics[0], &conns[0]))];
    for beta in 0..d {
        for gamma in 0..d {
            if beta == gamma {
                continue;
            }
            let tag = Some(vec![beta + 1, gamma + 1]);
            let lin = second_covariant_derivative(be, metrics[beta], &conns[gamma]);
            out.push(Check::new(&format!("linearity[{},{}]", beta + 1, gamma + 1), tag.clone(), true, &lin));
            let l = affinor_of(be, metrics[beta], metrics[gamma])?;
            let nij = nijenhuis(&l, &be.zero());
            out.push(Check::new(&format!("nijenhuis[{},{}]", beta + 1, gamma + 1), tag, true, &nij));
        }
    }
    Ok(out)
}

/// Replace degenerate metrics by non-degenerate combinations. The change is
/// an invertible linear change of the independent variables, which preserves
/// Hamiltonianity. Returns the new metrics and a note per replacement.
pub fn nondegenerate_basis(spec: &OperatorSpec) -> Result<(Vec<LinearMetric>, Vec<String>)> {
    let mut metrics: Vec<LinearMetric> = spec.metrics().to_vec();
    let mut notes = Vec::new();
    if !metrics[0].is_constant() {
        return Err(Error::FirstMetricNotConstant);
    }
    if !metrics[0].is_nondegenerate() {
        let mut found = false;
        'search: for s in 1..=5i64 {
            for a in 1..metrics.len() {
                if !metrics[a].is_constant() {
                    continue;
                }
                let cand = metrics[0].add(&metrics[a].scale(&Rational::from(s)));
                if cand.is_nondegenerate() {
                    notes.push(format!("g1 replaced by g1 + {s}*g{}", a + 1));
                    metrics[0] = cand;
                    found = true;
                    break 'search;
                }
            }
        }
        if !found {
            return Err(Error::InvalidMetric("no non-degenerate constant combination of the metrics".into()));
        }
    }
    for a in 1..metrics.len() {
        if metrics[a].is_nondegenerate() {
            continue;
        }
        let mut found = false;
        for t in 1..=10i64 {
            let cand = metrics[a].add(&metrics[0].scale(&Rational::from(t)));
            if cand.is_nondegenerate() {
                notes.push(format!("g{} replaced by g{} + {t}*g1", a + 1, a + 1));
                metrics[a] = cand;
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::InvalidMetric(format!("metric g{} stays degenerate under shifts by g1", a + 1)));
        }
    }
    Ok((metrics, notes))
}

/// Full Hamiltonianity check of a `d`-dimensional operator.
///
/// `d = 1`: flatness. `d = 2`: both Mokhov's criterion and the
/// Nijenhuis–Killing criterion, which must agree. `d >= 3`: flatness of the
/// first metric and, for every ordered pair `(β, γ)`, linearity of `g^β` in
/// flat coordinates of `g^γ` (as a vanishing second covariant derivative),
/// vanishing Nijenhuis torsion of `g^β (g^γ)^{-1}`, and the Killing condition
/// for `g^γ` with respect to `g^β`.
pub fn verify_operator(spec: &OperatorSpec, opts: VerifyOptions) -> Result<VerificationReport> {
    let n = spec.n();
    let nv = spec.nvars();
    match spec.d() {
        1 => {
            let g = spec.metrics()[0].matrix();
            let conditions = run_checks(
                opts,
                n,
                nv,
                &[g],
                |be| flatness_check(be, g, 1, true),
                |be| flatness_check(be, g, 1, true),
            )?;
            Ok(VerificationReport::new("flatness", opts, conditions))
        }
        2 => {
            let (metrics, notes) = nondegenerate_basis(spec)?;
            let m = mokhov_conditions(&metrics[0], &metrics[1], opts)?;
            let t = nijenhuis_killing_conditions(&metrics[0], &metrics[1], opts)?;
            if m.verdict != t.verdict {
                return Err(Error::DisagreementBug(format!(
                    "mokhov verdict {} but nijenhuis-killing verdict {}",
                    m.verdict, t.verdict
                )));
            }
            let mut conditions = m.conditions;
            conditions.extend(t.conditions.into_iter().filter(|c| c.required));
            let mut report = VerificationReport::new("mokhov+nijenhuis-killing", opts, conditions);
            report.notes = notes;
            Ok(report)
        }
        _ => {
            let (metrics, notes) = nondegenerate_basis(spec)?;
            let mats: Vec<&PolyMatrix> = metrics.iter().map(LinearMetric::matrix).collect();
            let mut conditions = run_checks(
                opts,
                n,
                nv,
                &mats,
                |be| pairwise_checks(be, &mats),
                |be| pairwise_checks(be, &mats),
            )?;
            for beta in 0..metrics.len() {
                for gamma in 0..metrics.len() {
                    if beta != gamma {
                        let k = killing_poly(n, mats[beta], mats[gamma]);
                        let name = format!("killing[{},{}]", beta + 1, gamma + 1);
                        conditions.push(Check::new(&name, Some(vec![beta + 1, gamma + 1]), true, &k).into_result());
                    }
                }
            }
            let mut report = VerificationReport::new("pairwise", opts, conditions);
            report.notes = notes;
            Ok(report)
        }
    }
}
