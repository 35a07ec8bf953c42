mod common;

use common::*;
use hydroham::exact::linalg;
use hydroham::exact::{GaussianRational, Matrix, MultiPoly, PolyMatrix, Rational};
use hydroham::pencil::{
    affinor, complexify, default_points, jordan_g0, killing_bivector_space, killing_vector_basis, lie_flow_normalize,
    lie_flow_normalize_constant_eig, p_coeff, same_span, scaling_action, segre_type, solve_jordan_family,
    solve_linear_conditions, symmetrized_products, x_field, ComplexLinearMetric, EigenBlocks, JordanFamilyCoeffs,
};
use hydroham::tensor::{
    lie_derivative_bivector, nijenhuis_killing_conditions, verify_operator, Affinor, LinearMetric, VerifyOptions,
};
use hydroham::Error;
use proptest::prelude::*;

fn q(a: i64, b: i64) -> Rational {
    Rational::frac(a, b)
}

fn g(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(r(re), r(im))
}

fn point(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| r(x)).collect()
}

fn mats(v: &[LinearMetric]) -> Vec<PolyMatrix> {
    v.iter().map(|m| m.matrix().clone()).collect()
}

// ---- reference data for the four-component normal forms ----

struct Case {
    name: &'static str,
    g: LinearMetric,
    g0: Matrix<Rational>,
    basis: Vec<LinearMetric>,
}

fn lam() -> i64 {
    3
}

fn single_block_3() -> Case {
    let l = lam();
    Case {
        name: "single block of size 3",
        g: antidiag(3),
        g0: metric(3, &[(1, 2, 1), (1, 3, l), (2, 2, l)], &[]).constant_rational().unwrap(),
        basis: vec![
            metric_halves(3, &[], &[(1, 1, 1, -4), (1, 2, 2, -1), (1, 3, 3, 2), (2, 2, 3, 2)]),
            metric(3, &[], &[(1, 1, 2, -2), (1, 2, 3, 1)]),
        ],
    }
}

fn two_blocks_of_two() -> Case {
    let l = lam();
    Case {
        name: "two blocks of size 2",
        g: metric(4, &[(1, 2, 1), (3, 4, 1)], &[]),
        g0: metric(4, &[(1, 1, 1), (1, 2, l), (3, 3, 1), (3, 4, l)], &[]).constant_rational().unwrap(),
        basis: vec![
            metric_halves(4, &[], &[(1, 1, 1, 2), (1, 2, 2, -1), (1, 3, 3, 1), (3, 4, 2, -1)]),
            metric_halves(4, &[], &[(1, 1, 4, 2), (1, 3, 2, -1)]),
            metric_halves(4, &[], &[(1, 2, 4, 1), (1, 3, 1, -1), (3, 3, 3, -2), (3, 4, 4, 1)]),
            metric_halves(4, &[], &[(1, 3, 4, 1), (3, 3, 2, -2)]),
        ],
    }
}

fn blocks_three_one() -> Case {
    let l = lam();
    Case {
        name: "blocks of size 3 and 1",
        g: metric(4, &[(1, 3, 1), (2, 2, 1), (4, 4, 1)], &[]),
        g0: metric(4, &[(1, 2, 1), (1, 3, l), (2, 2, l), (4, 4, l)], &[]).constant_rational().unwrap(),
        basis: vec![
            metric_halves(4, &[], &[(1, 1, 1, 4), (1, 2, 2, 1), (1, 3, 3, -2), (1, 4, 4, 1), (2, 2, 3, -2), (4, 4, 3, -2)]),
            metric_halves(4, &[], &[(1, 1, 2, 2), (1, 2, 3, -1)]),
            metric_halves(4, &[], &[(1, 1, 4, 2), (1, 4, 3, -1)]),
            metric_halves(4, &[], &[(1, 2, 4, 1), (1, 4, 2, -1)]),
        ],
    }
}

fn single_block_4() -> Case {
    let l = lam();
    Case {
        name: "single block of size 4",
        g: antidiag(4),
        g0: metric(4, &[(1, 3, 1), (2, 2, 1), (1, 4, l), (2, 3, l)], &[]).constant_rational().unwrap(),
        basis: vec![
            metric_halves(4, &[], &[(1, 1, 1, -2), (1, 2, 2, -1), (1, 4, 4, 1), (2, 3, 4, 1)]),
            metric_halves(4, &[], &[(1, 1, 2, 4), (1, 2, 3, 1), (1, 3, 4, -2), (2, 2, 4, -2)]),
            metric_halves(4, &[], &[(1, 1, 3, 2), (1, 2, 4, -1)]),
        ],
    }
}

fn complex_pair_blocks() -> Case {
    let (l, nu) = (lam(), 1);
    Case {
        name: "complex conjugate blocks",
        g: antidiag(4),
        g0: metric(4, &[(1, 2, 1), (1, 3, -l), (1, 4, nu), (2, 3, nu), (2, 4, l)], &[]).constant_rational().unwrap(),
        basis: vec![complex_normal_form(), {
            metric(4, &[], &[(1, 1, 1, 2), (1, 2, 2, 2), (1, 3, 3, -1), (1, 4, 4, -1), (2, 2, 1, -2), (2, 3, 4, -1), (2, 4, 3, 1)])
        }],
    }
}

fn complex_normal_form() -> LinearMetric {
    metric(4, &[], &[(1, 1, 2, 2), (1, 2, 1, -2), (1, 3, 4, -1), (1, 4, 3, 1), (2, 2, 2, -2), (2, 3, 3, 1), (2, 4, 4, 1)])
}

fn all_cases() -> Vec<Case> {
    vec![single_block_3(), two_blocks_of_two(), blocks_three_one(), single_block_4(), complex_pair_blocks()]
}

// ---- affinor ----

#[test]
fn affinor_examples() {
    let (g2, h2) = two_component_pair();
    let id = affinor(&g2, &g2).unwrap();
    assert_eq!(id.matrix(), &PolyMatrix::identity(2, 2));
    let l = affinor(&g2, &h2).unwrap();
    let expected = PolyMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) | (1, 1) => u(2, 2),
        (0, 1) => u(2, 1).scale(&r(-2)),
        _ => MultiPoly::zero(2),
    });
    assert_eq!(l.matrix(), &expected);
    assert!(l.is_self_adjoint(&g2).unwrap());
}

#[test]
fn mokhov_affinor_matches_closed_form() {
    for n in 2..=7 {
        let l = affinor(&antidiag(n), &mu(n, 0)).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                let a = n + i - j;
                let expected = if a <= n {
                    u(n, a).scale(&r(3 * (i as i64 - j as i64) + n as i64 - 1))
                } else {
                    MultiPoly::zero(n)
                };
                assert_eq!(l.entry(i - 1, j - 1), &expected, "n={n} ({i},{j})");
            }
        }
    }
}

#[test]
fn affinor_needs_constant_first_metric() {
    let (g2, h2) = two_component_pair();
    assert_eq!(affinor(&h2, &g2).unwrap_err(), Error::FirstMetricNotConstant);
}

// ---- Segre types ----

#[test]
fn segre_of_two_component_operator() {
    let (g2, h2) = two_component_pair();
    let l = affinor(&g2, &h2).unwrap();
    let rep = segre_type(&l, Some(&[point(&[1, 2])])).unwrap();
    assert_eq!(rep.eigenvalues, vec![EigenBlocks { value: g(2, 0), blocks: vec![2] }]);
    assert_eq!(rep.symbol(), "[2]");
    let generic = segre_type(&l, None).unwrap();
    assert!(generic.consistent);
    assert_eq!(generic.partition(), Some(&[2][..]));
}

#[test]
fn segre_of_single_block_of_size_three() {
    let c = single_block_3();
    let h = c.basis[0].clone();
    let rep = segre_type(&affinor(&c.g, &h).unwrap(), None).unwrap();
    assert_eq!(rep.partition(), Some(&[3][..]));
    assert!(rep.consistent);
}

#[test]
fn segre_of_complex_case() {
    // normal form plus the nilpotent part of g̃0 (λ = ν = 0)
    let h = complex_normal_form().add(&metric(4, &[(1, 2, 1)], &[]));
    let l = affinor(&antidiag(4), &h).unwrap();
    let rep = segre_type(&l, Some(&[point(&[0, 0, 1, 1])])).unwrap();
    let mut eigs = rep.eigenvalues.clone();
    eigs.sort_by(|a, b| a.value.cmp(&b.value));
    assert_eq!(
        eigs,
        vec![EigenBlocks { value: g(1, -1), blocks: vec![2] }, EigenBlocks { value: g(1, 1), blocks: vec![2] }]
    );
    assert_eq!(rep.symbol(), "[c2,c2]");
}

#[test]
fn segre_of_four_component_normal_forms() {
    let expect = ["[3]", "[2,2]", "[3,1]", "[4]", "[c2,c2]"];
    for (c, sym) in all_cases().into_iter().zip(expect) {
        // generic member: g̃0 plus a combination of the basis
        let mut h = PolyMatrix::from_rational(&c.g0, c.g.n());
        for (a, b) in c.basis.iter().enumerate() {
            h = h.add(&b.matrix().scale(&r(a as i64 + 2)));
        }
        let h = LinearMetric::new(c.g.n(), h).unwrap();
        let rep = segre_type(&affinor(&c.g, &h).unwrap(), None).unwrap();
        // the [3,1] and [2,2] families carry a single eigenvalue
        let shape: String = rep.symbol().replace(['(', ')'], "");
        assert_eq!(shape, sym, "{}", c.name);
    }
}

#[test]
fn segre_rejects_irreducible_cubic() {
    // companion matrix of x^3 - 2
    let m = rational_matrix(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]);
    let l = Affinor::new(PolyMatrix::from_rational(&m, 1)).unwrap();
    assert!(matches!(segre_type(&l, None), Err(Error::UnsupportedEigenvalueField(_))));
}

#[test]
fn segre_flags_inconsistent_points() {
    let (g2, h2) = two_component_pair();
    let l = affinor(&g2, &h2.add(&metric(2, &[(1, 1, 1)], &[]))).unwrap();
    // at u1 = 0 the nilpotent part vanishes
    let rep = segre_type(&l, Some(&[point(&[0, 1]), point(&[1, 1]), point(&[2, 1])])).unwrap();
    assert!(rep.consistent);
    // L = [[0, u1], [0, 0]] is diagonalizable only on u1 = 0
    let nil = affinor(&g2, &metric(2, &[], &[(1, 1, 1, 1)])).unwrap();
    let rep = segre_type(&nil, Some(&[point(&[0, 1]), point(&[1, 1])])).unwrap();
    assert!(!rep.consistent);
    assert_eq!(rep.observed.len(), 2);
    // the generic type has fewer blocks
    assert_eq!(rep.symbol(), "[2]");
    assert_eq!(rep.point, point(&[1, 1]));
}

fn conjugate(l: &PolyMatrix, p: &Matrix<Rational>) -> PolyMatrix {
    let pinv = linalg::inverse(p).unwrap();
    let nv = l.nvars();
    PolyMatrix::from_rational(p, nv).mul(l).unwrap().mul(&PolyMatrix::from_rational(&pinv, nv)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn segre_type_is_conjugation_invariant(entries in prop::collection::vec(-3i64..=3, 16), which in 0usize..5) {
        let p = Matrix::from_fn(4, 4, |i, j| r(entries[i * 4 + j]));
        prop_assume!(!linalg::det(&p).is_zero());
        let c = &all_cases()[which];
        if c.g.n() != 4 {
            return Ok(());
        }
        let mut h = PolyMatrix::from_rational(&c.g0, 4);
        for b in &c.basis {
            h = h.add(b.matrix());
        }
        let l = affinor(&c.g, &LinearMetric::new(4, h).unwrap()).unwrap();
        let lc = Affinor::new(conjugate(l.matrix(), &p)).unwrap();
        let pts = default_points(4);
        let a = segre_type(&l, Some(&pts)).unwrap();
        let b = segre_type(&lc, Some(&pts)).unwrap();
        prop_assert_eq!(a, b);
    }
}

// ---- Killing vectors and bivectors ----

fn rotation(n: usize, alpha: usize, beta: usize) -> Vec<MultiPoly> {
    // u^α ∂_β - u^{n+1-β} ∂_{n+1-α}
    let mut x = vec![MultiPoly::zero(n); n];
    x[beta - 1].add_assign_ref(&u(n, alpha));
    x[n - alpha].sub_assign_ref(&u(n, n + 1 - beta));
    x
}

#[test]
fn killing_vector_examples() {
    let b2 = killing_vector_basis(&antidiag(2)).unwrap();
    assert_eq!(b2.dimension(), 3);
    assert!(b2.contains(&[u(2, 1), u(2, 2).scale(&r(-1))]));
    assert!(b2.contains(&[MultiPoly::one(2), MultiPoly::zero(2)]));

    let b3 = killing_vector_basis(&antidiag(3)).unwrap();
    assert_eq!(b3.dimension(), 6);
    let euclid = killing_vector_basis(&metric(2, &[(1, 1, 1), (2, 2, 1)], &[])).unwrap();
    assert_eq!(euclid.dimension(), 3);
    assert!(euclid.contains(&[u(2, 2), u(2, 1).scale(&r(-1))]));
}

#[test]
fn killing_basis_contains_listed_rotations() {
    for n in 2..=5 {
        let basis = killing_vector_basis(&antidiag(n)).unwrap();
        assert_eq!(basis.dimension(), n * (n + 1) / 2);
        let g = antidiag(n).matrix().clone();
        for x in &basis.vectors {
            assert!(lie_derivative_bivector(&g, x).unwrap().is_zero());
        }
        for alpha in 1..=n {
            for beta in 1..=n {
                assert!(basis.contains(&rotation(n, alpha, beta)), "n={n} ({alpha},{beta})");
            }
        }
    }
}

#[test]
fn killing_bivector_examples() {
    // one component: only translations are isometries, so only constants
    let one = killing_bivector_space(&metric(1, &[(1, 1, 1)], &[])).unwrap();
    assert_eq!(one.len(), 1);
    assert!(one[0].is_constant());

    let (g2, h2) = two_component_pair();
    let space = killing_bivector_space(&g2).unwrap();
    let linear: Vec<PolyMatrix> = space.iter().map(|h| h.map(|p| p.homogeneous_part(2, 1))).collect();
    let lin_dim = linalg::rank(&Matrix::from_rows(linear.iter().map(|h| flatten(h)).collect()).unwrap());
    // spanned by (u1∂1 - u2∂2) ⊙ ∂1 and (u1∂1 - u2∂2) ⊙ ∂2
    assert_eq!(lin_dim, 2);
    assert_eq!(space.len(), 3 + 2);
    let mut with = space.clone();
    with.push(h2.matrix().clone());
    assert!(same_span(2, &space, &with));
}

fn flatten(h: &PolyMatrix) -> Vec<Rational> {
    let n = h.rows();
    let mut out = Vec::new();
    for p in h.iter() {
        out.push(p.constant_term());
        for k in 1..=n {
            out.push(p.coefficient(&hydroham::exact::Monomial::var(h.nvars(), k - 1)));
        }
    }
    out
}

#[test]
fn killing_bivectors_are_symmetrized_products() {
    let metrics = [
        antidiag(2),
        antidiag(3),
        antidiag(4),
        metric(2, &[(1, 1, 1), (2, 2, 1)], &[]),
        metric(3, &[(1, 1, 1), (2, 2, -1), (3, 3, 2)], &[]),
        metric(4, &[(1, 2, 1), (3, 4, 1)], &[]),
    ];
    for g in &metrics {
        let space = killing_bivector_space(g).unwrap();
        let products = symmetrized_products(&killing_vector_basis(g).unwrap());
        assert!(same_span(g.n(), &space, &products), "n={}", g.n());
    }
}

// ---- linear families ----

#[test]
fn linear_families_match_listed_bases() {
    let dims = [2, 4, 4, 3, 2];
    for (c, d) in all_cases().into_iter().zip(dims) {
        let fam = solve_linear_conditions(&c.g, &c.g0).unwrap();
        assert_eq!(fam.dimension, d, "{}", c.name);
        assert!(fam.spans(&mats(&c.basis)), "{}", c.name);
    }
}

#[test]
fn formal_family_members_are_hamiltonian() {
    for c in all_cases() {
        let fam = solve_linear_conditions(&c.g, &c.g0).unwrap();
        let rep = nijenhuis_killing_conditions(&fam.formal_first(), &fam.formal_member().unwrap(), VerifyOptions::symbolic())
            .unwrap();
        assert!(rep.verdict, "{}: {:?}", c.name, rep.failures().collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn family_members_pass_for_random_parameters(which in 0usize..5, k in prop::collection::vec(-20i64..=20, 4)) {
        let c = &all_cases()[which];
        let fam = solve_linear_conditions(&c.g, &c.g0).unwrap();
        let kappa: Vec<Rational> = k[..fam.dimension].iter().map(|&x| r(x)).collect();
        let h = fam.member(&kappa).unwrap();
        let rep = nijenhuis_killing_conditions(&fam.g, &h, VerifyOptions::symbolic()).unwrap();
        prop_assert!(rep.verdict);
    }
}

#[test]
fn jordan_family_is_spanned_by_mu() {
    for n in 2..=7 {
        let fam = solve_jordan_family(n).unwrap();
        assert_eq!(fam.dimension, n - 1);
        let mus: Vec<LinearMetric> = (0..n - 1).map(|k| mu(n, k)).collect();
        assert!(fam.spans(&mats(&mus)), "n={n}");
        for k in 0..n - 1 {
            assert_eq!(&hydroham::pencil::mu(n, k), mus[k].matrix());
        }
    }
    assert!(solve_jordan_family(1).is_err());
}

#[test]
fn jordan_family_eigenvalue() {
    for n in 2..=6 {
        let xi: Vec<Rational> = (0..n - 1).map(|m| r(m as i64 * 2 - 3)).collect();
        let c = JordanFamilyCoeffs::new(n, xi, q(5, 2)).unwrap();
        let h = LinearMetric::new(n, c.bivector()).unwrap();
        let l = affinor(&antidiag(n), &h).unwrap();
        let shifted = l.matrix().sub(&PolyMatrix::identity(n, n).scale_poly(&c.eigenvalue()));
        let mut pow = shifted.clone();
        for _ in 1..n {
            pow = pow.mul(&shifted).unwrap();
        }
        assert!(pow.is_zero(), "n={n}");
        // and the eigenvalue is ξ0(n-1)u^n + λ
        let mut expected = u(n, n).scale(&r(-3 * (n as i64 - 1)));
        expected.add_assign_ref(&MultiPoly::constant(n, q(5, 2)));
        assert_eq!(c.eigenvalue(), expected);
    }
}

// ---- Lie series machinery ----

#[test]
fn isometry_shift_identities() {
    for n in 2..=7 {
        let g = antidiag(n).matrix().clone();
        for k in 1..n {
            let x = x_field(n, k);
            assert!(lie_derivative_bivector(&g, &x).unwrap().is_zero(), "n={n} k={k}");
            for alpha in 0..n - 1 {
                let m0 = mu(n, alpha).matrix().clone();
                let lhs = lie_derivative_bivector(&m0, &x).unwrap();
                let rhs = mu(n, alpha + k).matrix().scale(&r(p_coeff(n, k, alpha)));
                assert_eq!(lhs, rhs, "n={n} k={k} α={alpha}");
                // iterated: Lie^m μ^α = Π_{s<m} (p - 2ks) μ^{α+mk}
                let mut iter = m0.clone();
                let mut factor = 1i64;
                for m in 1..=3 {
                    iter = lie_derivative_bivector(&iter, &x).unwrap();
                    factor *= p_coeff(n, k, alpha) - 2 * k as i64 * (m - 1);
                    assert_eq!(iter, mu(n, alpha + m as usize * k).matrix().scale(&r(factor)));
                }
            }
        }
    }
}

fn jordan(n: usize, xi: Vec<i64>, lambda: i64) -> JordanFamilyCoeffs {
    JordanFamilyCoeffs::new(n, xi.into_iter().map(r).collect(), r(lambda)).unwrap()
}

#[test]
fn flow_reduces_to_leading_bivector() {
    for (n, xi) in [(5, vec![1, 3, -2, 7]), (6, vec![1, -1, 2, 5, 1]), (3, vec![1, 4]), (2, vec![1])] {
        let nf = lie_flow_normalize(&jordan(n, xi, 2)).unwrap();
        assert_eq!(nf.support(), vec![0], "n={n}");
        assert_eq!(&nf.bivector, mu(n, 0).matrix(), "n={n}");
    }
}

#[test]
fn flow_keeps_one_modulus_when_n_is_one_mod_three() {
    let nf = lie_flow_normalize(&jordan(7, vec![1, 2, -3, 1, 4, -1], 1)).unwrap();
    assert_eq!(nf.support(), vec![0, 2]);
    // the constant part is not removable by a translation for generic ξ
    assert!(nf.set_aside.is_some());
    assert!(nf.constant.iter().all(Rational::is_zero));
    assert_eq!(nf.steps.iter().find(|s| s.k == 2).unwrap().t, None);
    let kappa = nf.coeffs[2].clone();
    assert_eq!(nf.bivector, mu(7, 0).matrix().add(&mu(7, 2).matrix().scale(&kappa)));
}

#[test]
fn translation_removes_constant_part_off_the_exceptional_sizes() {
    for (n, xi) in [(5, vec![1, 3, -2, 7]), (6, vec![1, -1, 2, 5, 1]), (8, vec![1, 2, 0, 1, -1, 3, 2])] {
        let nf = lie_flow_normalize(&jordan(n, xi, 4)).unwrap();
        assert!(nf.set_aside.is_none(), "n={n}");
        assert!(nf.constant.iter().all(Rational::is_zero));
    }
    // n = 7 with ξ1 = ξ2 = 0: the obstruction on i + j = 6 disappears
    let nf = lie_flow_normalize(&jordan(7, vec![1, 0, 0, 1, 4, -1], 1)).unwrap();
    assert!(nf.set_aside.is_none());
}

#[test]
fn flow_at_four_components_keeps_constant_part() {
    let nf = lie_flow_normalize(&jordan(4, vec![1, 2, 5], 1)).unwrap();
    assert!(nf.support().iter().all(|&m| m <= 1));
    assert_eq!(nf.constant, jordan_g0(4, &r(1)));
}

#[test]
fn flow_is_trivial_on_normal_form() {
    let nf = lie_flow_normalize(&jordan(6, vec![1, 0, 0, 0, 0], 0)).unwrap();
    assert!(nf.steps.iter().all(|s| s.t.as_ref().map_or(true, Rational::is_zero)));
    assert_eq!(&nf.bivector, mu(6, 0).matrix());
}

#[test]
fn flow_requires_unit_leading_coefficient() {
    assert!(matches!(lie_flow_normalize(&jordan(5, vec![2, 0, 0, 0], 0)), Err(Error::ScalingNotNormalized(_))));
    assert!(matches!(
        lie_flow_normalize_constant_eig(&jordan(5, vec![0, 3, 0, 0], 0)),
        Err(Error::ScalingNotNormalized(_))
    ));
}

#[test]
fn constant_eigenvalue_normal_forms() {
    let nf = lie_flow_normalize_constant_eig(&jordan(5, vec![0, 1, 4, -2], 3)).unwrap();
    assert!(nf.support().iter().all(|&m| m == 1 || m == 3));
    assert_eq!(nf.coeffs[1], r(1));
    assert_single_block(&nf.constant, 3);

    let nf = lie_flow_normalize_constant_eig(&jordan(5, vec![0, 0, 1, 6], 3)).unwrap();
    assert_eq!(nf.support(), vec![2]);
    assert_single_block(&nf.constant, 3);
}

/// The constant part still gives a single Jordan block with eigenvalue `λ`.
fn assert_single_block(c: &Matrix<Rational>, lambda: i64) {
    let n = c.rows();
    let gcov = antidiag(n).constant_rational().unwrap();
    let l = linalg::mat_mul(c, &gcov);
    let rep = segre_type(&Affinor::new(PolyMatrix::from_rational(&l, 1)).unwrap(), None).unwrap();
    assert_eq!(rep.eigenvalues, vec![EigenBlocks { value: g(lambda, 0), blocks: vec![n] }]);
}

#[test]
fn constant_eigenvalue_three_components() {
    let lambda = 2;
    let nf = lie_flow_normalize_constant_eig(&jordan(3, vec![0, 1], lambda)).unwrap();
    // μ^{(3;1)} + g̃0; shifting u3 by -1 removes the 1 on the antidiagonal
    // above the λ entries
    let shift = vec![u(3, 1), u(3, 2), {
        let mut p = u(3, 3);
        p.add_assign_ref(&MultiPoly::constant(3, r(-1)));
        p
    }];
    let shifted = nf.bivector.map(|p| p.compose(&shift));
    let expected = metric(3, &[(1, 3, lambda), (2, 2, lambda)], &[(1, 1, 2, -2), (1, 2, 3, 1)]);
    assert_eq!(&shifted, expected.matrix());
}

// ---- scaling ----

#[test]
fn scaling_action_examples() {
    assert_eq!(scaling_action(3, 0, &r(4)).unwrap(), r(4));
    assert_eq!(scaling_action(2, 0, &r(9)).unwrap(), r(3));
    for n in 2..6 {
        for k in 0..3 {
            assert_eq!(scaling_action(n, k, &r(1)).unwrap(), r(1));
        }
    }
    assert!(matches!(scaling_action(2, 0, &r(2)), Err(Error::NonSquareGamma(_))));
    assert!(scaling_action(3, 0, &r(0)).is_err());
}

/// Rescale `v^i = f_i u^i` and compare `f_a f_b μ^{ab}(u(v))` with the
/// factor times `μ^{ab}(v)`.
fn check_scaling(n: usize, k: usize, factors: &[Rational], gamma: &Rational) {
    let m = mu(n, k).matrix().clone();
    let back: Vec<MultiPoly> = (0..n).map(|i| u(n, i + 1).scale(&factors[i].recip().unwrap())).collect();
    let transformed = PolyMatrix::from_fn(n, n, |a, b| m.get(a, b).compose(&back).scale(&(&factors[a] * &factors[b])));
    let c = scaling_action(n, k, gamma).unwrap();
    assert_eq!(transformed, m.scale(&c), "n={n} k={k}");
}

#[test]
fn scaling_law_holds_symbolically() {
    for n in [3usize, 5, 7] {
        let gamma = q(2, 3);
        let factors: Vec<Rational> = (1..=n).map(|i| gamma.pow((n as i32 + 1) / 2 - i as i32)).collect();
        for k in 0..n - 1 {
            check_scaling(n, k, &factors, &gamma);
        }
    }
    for n in [2usize, 4, 6] {
        let s = q(3, 2);
        let gamma = &s * &s;
        let factors: Vec<Rational> = (1..=n).map(|i| s.pow(n as i32 + 1 - 2 * i as i32)).collect();
        for k in 0..n - 1 {
            check_scaling(n, k, &factors, &gamma);
        }
    }
}

// ---- complexification ----

fn complex_two_component() -> Vec<ComplexLinearMetric> {
    let z = GaussianRational::zero;
    let first = ComplexLinearMetric { constant: Matrix::from_fn(2, 2, |i, j| if i + j == 1 { g(1, 0) } else { z() }), linear: vec![] };
    let second = ComplexLinearMetric {
        constant: Matrix::filled(2, 2, z()),
        linear: vec![(0, 0, 0, g(-2, 0)), (0, 1, 1, g(1, 0)), (1, 0, 1, g(1, 0))],
    };
    vec![first, second]
}

#[test]
fn complexified_two_component_operator_is_the_complex_normal_form() {
    let spec = complexify(&complex_two_component()).unwrap();
    assert_eq!(spec.metric(0), &antidiag(4));
    assert_eq!(spec.metric(1), &complex_normal_form());
    let rep = verify_operator(&spec, VerifyOptions::symbolic()).unwrap();
    assert!(rep.verdict);
}

#[test]
fn real_input_gives_off_diagonal_blocks() {
    let m = ComplexLinearMetric { constant: Matrix::from_fn(1, 1, |_, _| g(5, 0)), linear: vec![] };
    let real = m.realify().unwrap();
    assert_eq!(real, metric(2, &[(1, 2, 5)], &[]));
}

