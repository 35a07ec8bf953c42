//! Named operator families with their expected classification data.
//!
//! Every entry is an exact [`OperatorSpec`]. Free constants `κ_i` of a family
//! are formal parameters: variables `n+1, n+2, ...` after `u1..un`. The
//! constant `λ` of the normal forms is fixed to [`DEFAULT_LAMBDA`] in
//! [`catalog`], and every constructor accepts other values.

mod families;

pub use families::{
    complex_pair_normal_form, constant_eigenvalue_has_kappa, constant_eigenvalue_normal_form, constant_one_component,
    direct_sum, jordan_normal_form, mokhov_operator, mu_bivector, n_dimensional_operator, shifted_mokhov_operator,
    three_component_constant_eigenvalue, three_component_nonconstant_eigenvalue, three_dimensional_irreducible,
    three_dimensional_reducible, two_component_operator, Coef,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, MultiPoly, Rational};
use crate::pencil::{affinor, default_points, segre_at, segre_symbol, EigenBlocks};
use crate::tensor::OperatorSpec;
use families::{block_4, blocks_2_2, blocks_3_1, complex_pair, Member, PencilFamily};

/// Value of `λ` used for catalog entries.
pub const DEFAULT_LAMBDA: i64 = 2;
/// Value of `ν` (real part at `u = 0`) for the complex-pair family.
pub const DEFAULT_NU: i64 = 1;
/// Version of the serialized manifest layout.
pub const MANIFEST_VERSION: u32 = 1;

/// An expected eigenvalue `re + i·im` of `g^2 (g^1)^{-1}` with its Jordan
/// blocks. `re` and `im` live in the entry's variables, parameters included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedEigenvalue {
    pub re: MultiPoly,
    pub im: MultiPoly,
    pub blocks: Vec<usize>,
}

impl ExpectedEigenvalue {
    pub fn real(re: MultiPoly, blocks: Vec<usize>) -> Self {
        let im = MultiPoly::zero(re.nvars());
        ExpectedEigenvalue { re, im, blocks }
    }

    pub fn at(&self, point: &[Rational]) -> GaussianRational {
        GaussianRational::new(self.re.eval(point), self.im.eval(point))
    }

    pub fn render(&self) -> String {
        if self.im.is_zero() {
            self.re.to_string()
        } else {
            format!("{} + i*({})", self.re, self.im)
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    /// Unique id, e.g. `mokhov-n3`.
    pub id: String,
    /// Family name shared by entries differing only in `n` or a branch.
    pub family: String,
    pub description: String,
    pub spec: OperatorSpec,
    /// Names of the formal parameters, in variable order after `u1..un`.
    pub params: Vec<String>,
    /// Expected Segre symbol of the pencil of the first two metrics, in the
    /// notation of [`crate::pencil::SegreReport::symbol`]. `None` when the
    /// first metric is degenerate.
    pub segre: Option<String>,
    /// Expected eigenvalues, when known in closed form.
    pub eigenvalues: Option<Vec<ExpectedEigenvalue>>,
    pub reducible: bool,
}

impl CatalogEntry {
    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn d(&self) -> usize {
        self.spec.d()
    }

    /// The operator `-P`: every metric negated. The affinor, and hence the
    /// classification data, is unchanged.
    pub fn negated(&self) -> Result<CatalogEntry> {
        let metrics = self.spec.metrics().iter().map(|m| m.scale(&Rational::from(-1))).collect();
        Ok(CatalogEntry {
            id: format!("{}-negated", self.id),
            spec: OperatorSpec::new(metrics)?,
            ..self.clone()
        })
    }

    /// Compare the expected Segre data with the eigenvalues and blocks of
    /// `g^2 (g^1)^{-1}` at the seeded default points.
    pub fn check_classification(&self) -> Result<ClassificationCheck> {
        let Some(expected) = &self.segre else {
            return Err(Error::InvalidMetric(format!("{}: no pencil classification recorded", self.id)));
        };
        let l = affinor(self.spec.metric(0), self.spec.metric(1))?;
        let mut mismatches = Vec::new();
        let points = default_points(self.spec.nvars());
        for p in &points {
            let eigs = segre_at(&l.matrix().eval(p))?;
            let symbol = segre_symbol(&eigs);
            if &symbol != expected {
                mismatches.push(format!("at {}: Segre {symbol}, expected {expected}", render_point(p)));
            }
            if let Some(exp) = &self.eigenvalues {
                let mut want: Vec<EigenBlocks> =
                    exp.iter().map(|e| EigenBlocks { value: e.at(p), blocks: e.blocks.clone() }).collect();
                let mut got = eigs;
                want.sort_by(|a, b| a.value.cmp(&b.value));
                got.sort_by(|a, b| a.value.cmp(&b.value));
                if want != got {
                    mismatches.push(format!("at {}: eigenvalues {got:?}, expected {want:?}", render_point(p)));
                }
            }
        }
        Ok(ClassificationCheck { id: self.id.clone(), points: points.len(), mismatches })
    }

    pub fn manifest_entry(&self) -> ManifestEntry {
        ManifestEntry {
            id: self.id.clone(),
            family: self.family.clone(),
            description: self.description.clone(),
            n: self.n(),
            d: self.d(),
            params: self
                .params
                .iter()
                .enumerate()
                .map(|(a, p)| format!("{p} = u{}", self.n() + a + 1))
                .collect(),
            segre: self.segre.clone(),
            eigenvalues: self.eigenvalues.as_ref().map(|v| v.iter().map(ExpectedEigenvalue::render).collect()),
            reducible: self.reducible,
        }
    }
}

fn render_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationCheck {
    pub id: String,
    pub points: usize,
    pub mismatches: Vec<String>,
}

impl ClassificationCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub family: String,
    pub description: String,
    pub n: usize,
    pub d: usize,
    pub params: Vec<String>,
    pub segre: Option<String>,
    pub eigenvalues: Option<Vec<String>>,
    pub reducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub entries: Vec<ManifestEntry>,
}

pub fn manifest(entries: &[CatalogEntry]) -> Manifest {
    Manifest { version: MANIFEST_VERSION, entries: entries.iter().map(CatalogEntry::manifest_entry).collect() }
}

/// Builder shorthand for entries.
struct Draft {
    id: String,
    family: &'static str,
    description: String,
    spec: OperatorSpec,
    params: Vec<String>,
    segre: Option<&'static str>,
    eigenvalues: Option<Vec<ExpectedEigenvalue>>,
    reducible: bool,
}

impl Draft {
    fn new(id: impl Into<String>, family: &'static str, description: impl Into<String>, spec: OperatorSpec) -> Self {
        Draft {
            id: id.into(),
            family,
            description: description.into(),
            spec,
            params: vec![],
            segre: None,
            eigenvalues: None,
            reducible: false,
        }
    }

    fn segre(mut self, s: &'static str, eigs: Option<Vec<ExpectedEigenvalue>>) -> Self {
        self.segre = Some(s);
        self.eigenvalues = eigs;
        self
    }

    /// Single real eigenvalue with the given blocks.
    fn single(self, s: &'static str, value: MultiPoly, blocks: Vec<usize>) -> Self {
        self.segre(s, Some(vec![ExpectedEigenvalue::real(value, blocks)]))
    }

    fn params(mut self, names: &[&str]) -> Self {
        self.params = names.iter().map(|s| s.to_string()).collect();
        self
    }

    fn reducible(mut self) -> Self {
        self.reducible = true;
        self
    }

    fn done(self) -> CatalogEntry {
        CatalogEntry {
            id: self.id,
            family: self.family.to_string(),
            description: self.description,
            spec: self.spec,
            params: self.params,
            segre: self.segre.map(str::to_string),
            eigenvalues: self.eigenvalues,
            reducible: self.reducible,
        }
    }
}

fn kappa_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("kappa{i}")).collect()
}

fn u(nv: usize, k: usize) -> MultiPoly {
    MultiPoly::var(nv, k - 1)
}

fn c(nv: usize, x: &Rational) -> MultiPoly {
    MultiPoly::constant(nv, x.clone())
}

fn member_entry(
    id: String,
    family: &'static str,
    description: String,
    m: Member,
    segre: &'static str,
    blocks: Vec<usize>,
) -> Result<CatalogEntry> {
    let eigs = m.eigenvalue.map(|e| vec![ExpectedEigenvalue::real(e, blocks)]);
    let mut d = Draft::new(id, family, description, OperatorSpec::new(vec![m.g, m.h])?).segre(segre, eigs);
    d.params = kappa_names(m.nparams);
    Ok(d.done())
}

/// Members of a four-component family: the general member plus the listed
/// branches `(suffix, terms)`.
fn family_entries(
    out: &mut Vec<CatalogEntry>,
    prefix: &str,
    family: &'static str,
    what: &str,
    f: &PencilFamily,
    branches: &[(&str, Vec<(usize, Coef)>)],
    segre: &'static str,
    blocks: Vec<usize>,
) -> Result<()> {
    out.push(member_entry(
        format!("{prefix}-general"),
        family,
        format!("{what}: general solution, all basis coefficients formal"),
        f.general(),
        segre,
        blocks.clone(),
    )?);
    for (suffix, terms) in branches {
        out.push(member_entry(
            format!("{prefix}-{suffix}"),
            family,
            format!("{what}: normal form {suffix}"),
            f.member(terms),
            segre,
            blocks.clone(),
        )?);
    }
    Ok(())
}

fn four_component_entries(lambda: &Rational, nu: &Rational) -> Result<Vec<CatalogEntry>> {
    use Coef::Kappa;
    let one = || Coef::int(1);
    let minus = || Coef::int(-1);
    let mut out = Vec::new();

    let f = blocks_2_2(1, lambda);
    family_entries(
        &mut out,
        "blocks-2-2-split",
        "blocks-2-2",
        "two 2x2 Jordan blocks, g of signature (2,2) split as (+,+)",
        &f,
        &[("normal", vec![(0, Kappa), (1, Kappa)])],
        "[2,2]",
        vec![2, 2],
    )?;
    let f = blocks_2_2(-1, lambda);
    family_entries(
        &mut out,
        "blocks-2-2-opposite",
        "blocks-2-2",
        "two 2x2 Jordan blocks, second block of g negated",
        &f,
        &[
            ("a", vec![(0, Kappa), (3, Kappa)]),
            ("b", vec![(1, Kappa), (2, Kappa)]),
            ("c-plus", vec![(1, one()), (3, one())]),
            ("c-minus", vec![(1, one()), (3, minus())]),
            ("d-plus", vec![(0, one()), (2, one()), (3, Kappa)]),
            ("d-minus", vec![(0, one()), (2, minus()), (3, Kappa)]),
        ],
        "[2,2]",
        vec![2, 2],
    )?;
    for (sign, tag) in [(1, "positive"), (-1, "negative")] {
        let f = blocks_3_1(sign, lambda);
        family_entries(
            &mut out,
            &format!("blocks-3-1-{tag}"),
            "blocks-3-1",
            &format!("Jordan blocks of sizes 3 and 1, 1x1 block of g {tag}"),
            &f,
            &[
                ("a", vec![(1, Kappa), (2, Kappa)]),
                ("b", vec![(2, Kappa), (3, Kappa)]),
                ("c", vec![(0, Kappa), (1, Kappa), (3, Kappa)]),
            ],
            "[3,1]",
            vec![3, 1],
        )?;
    }
    let f = block_4(lambda);
    family_entries(
        &mut out,
        "block-4",
        "block-4",
        "single 4x4 Jordan block",
        &f,
        &[
            ("nonconstant", vec![(0, one()), (1, Kappa)]),
            ("constant-a", vec![(1, one())]),
            ("constant-b", vec![(2, Kappa)]),
        ],
        "[4]",
        vec![4],
    )?;
    let f = complex_pair(nu, lambda);
    out.push(member_entry(
        "complex-pair-general".into(),
        "complex-pair",
        "two complex conjugate 2x2 Jordan blocks: general solution".into(),
        f.general(),
        "[c2,c2]",
        vec![],
    )?);
    let (g, h) = complex_pair_normal_form();
    let eig = |s: i64| ExpectedEigenvalue { re: u(4, 3), im: u(4, 4).scale(&Rational::from(s)), blocks: vec![2] };
    out.push(
        Draft::new(
            "complex-pair-normal",
            "complex-pair",
            "two complex conjugate 2x2 Jordan blocks: normal form, complexified two-component operator",
            OperatorSpec::new(vec![g, h])?,
        )
        .segre("[c2,c2]", Some(vec![eig(1), eig(-1)]))
        .done(),
    );
    Ok(out)
}

/// Every catalog entry, with `λ = DEFAULT_LAMBDA` and `ν = DEFAULT_NU`.
pub fn catalog() -> Result<Vec<CatalogEntry>> {
    build(&Rational::from(DEFAULT_LAMBDA), &Rational::from(DEFAULT_NU))
}

pub fn build(lambda: &Rational, nu: &Rational) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    out.push(
        Draft::new("two-component", "two-component", "two-component operator with a 2x2 Jordan block", two_component_operator())
            .single("[2]", u(2, 2), vec![2])
            .done(),
    );
    out.push(
        Draft::new(
            "three-component-constant-eigenvalue",
            "three-component",
            "three components, single Jordan block with constant eigenvalue",
            three_component_constant_eigenvalue(lambda),
        )
        .single("[3]", c(3, lambda), vec![3])
        .done(),
    );
    out.push(
        Draft::new(
            "three-component-nonconstant-eigenvalue",
            "three-component",
            "three components, single Jordan block with eigenvalue u3",
            three_component_nonconstant_eigenvalue(),
        )
        .single("[3]", u(3, 3), vec![3])
        .done(),
    );
    out.extend(four_component_entries(lambda, nu)?);
    for n in 2..=7 {
        let eig = u(n, n).scale(&Rational::from(n as i64 - 1));
        let (segre, blocks) = if n == 4 { ("[2,2]", vec![2, 2]) } else { (SINGLE[n], vec![n]) };
        out.push(
            Draft::new(format!("mokhov-n{n}"), "mokhov", format!("Mokhov's {n}-component operator"), mokhov_operator(n)?)
                .single(segre, eig, blocks)
                .done(),
        );
    }
    for n in 3..=6 {
        out.push(
            Draft::new(
                format!("shifted-mokhov-n{n}"),
                "shifted-mokhov",
                format!("{n} components, mu(n;1) + lambda g: single Jordan block with constant eigenvalue"),
                shifted_mokhov_operator(n, lambda)?,
            )
            .single(SINGLE[n], c(n, lambda), vec![n])
            .done(),
        );
    }
    for n in 3..=7 {
        let spec = jordan_normal_form(n, None, lambda)?;
        let nv = spec.nvars();
        let mut eig = u(nv, n).scale(&Rational::from(n as i64 - 1));
        if n == 4 {
            eig = &eig + &c(nv, lambda);
        }
        let mut d = Draft::new(
            format!("jordan-block-n{n}"),
            "jordan-block",
            format!("{n}-component canonical form, single Jordan block with non-constant eigenvalue"),
            spec,
        )
        .single(SINGLE[n], eig, vec![n]);
        if nv > n {
            d = d.params(&["kappa1"]);
        }
        out.push(d.done());
    }
    for n in 3..=6 {
        for alpha in 1..=n - 2 {
            let spec = constant_eigenvalue_normal_form(n, alpha, None, lambda)?;
            let nv = spec.nvars();
            let mut d = Draft::new(
                format!("jordan-block-constant-n{n}-a{alpha}"),
                "jordan-block-constant",
                format!("{n}-component canonical form with constant eigenvalue, first {alpha} coefficient(s) zero"),
                spec,
            )
            .single(SINGLE[n], c(nv, lambda), vec![n]);
            if nv > n {
                d = d.params(&["kappa1"]);
            }
            out.push(d.done());
        }
    }
    out.push(
        Draft::new(
            "three-dimensional-irreducible",
            "three-dimensional",
            "irreducible three-component operator in three dimensions",
            three_dimensional_irreducible(),
        )
        .single("[3]", MultiPoly::zero(3), vec![3])
        .done(),
    );
    out.push(
        Draft::new(
            "three-dimensional-reducible",
            "three-dimensional",
            "two-component operator in (x, y) plus d/dz on the third component",
            three_dimensional_reducible(),
        )
        .reducible()
        .done(),
    );
    for big_n in 3..=5 {
        out.push(
            Draft::new(
                format!("n-dimensional-n{big_n}"),
                "n-dimensional",
                format!("irreducible {big_n}-component operator in {big_n} dimensions"),
                n_dimensional_operator(big_n, lambda)?,
            )
            .single(SINGLE[big_n], c(big_n, lambda), vec![big_n])
            .done(),
        );
    }
    let sum = direct_sum(&two_component_operator(), &constant_one_component(lambda))?;
    out.push(
        Draft::new("two-component-plus-constant", "direct-sum", "two-component operator plus a constant one-component operator", sum)
            .segre(
                "[2,1]",
                Some(vec![ExpectedEigenvalue::real(u(3, 2), vec![2]), ExpectedEigenvalue::real(c(3, lambda), vec![1])]),
            )
            .reducible()
            .done(),
    );
    Ok(out)
}

const SINGLE: [&str; 8] = ["[]", "[1]", "[2]", "[3]", "[4]", "[5]", "[6]", "[7]"];

/// Look up an entry by exact id.
pub fn find<'a>(entries: &'a [CatalogEntry], id: &str) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| e.id == id)
}
