//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive content/primitive-part scheme: pick a shared variable, split off
//! the content with respect to it, and run a primitive pseudo-remainder
//! sequence on the primitive parts.

use super::poly::{Monomial, MultiPoly};
use super::rational::Rational;

/// Default bound on intermediate term counts before gcd computation gives up.
pub const DEFAULT_TERM_CAP: usize = 100_000;

/// Normalized gcd: integer coefficients with unit content and positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    gcd_capped(a, b, usize::MAX).expect("uncapped gcd always succeeds")
}

/// Like [`gcd`], but returns `None` once an intermediate polynomial exceeds
/// `cap` terms.
pub fn gcd_capped(a: &MultiPoly, b: &MultiPoly, cap: usize) -> Option<MultiPoly> {
    assert_eq!(a.nvars(), b.nvars());
    let nv = a.nvars();
    if a.is_zero() {
        return Some(b.primitive_part().1);
    }
    if b.is_zero() {
        return Some(a.primitive_part().1);
    }
    if a.is_constant() || b.is_constant() {
        return Some(MultiPoly::one(nv));
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let a = strip_monomial(a, &ma);
    let b = strip_monomial(b, &mb);
    let core = gcd_no_monomial(&a, &b, cap)?;
    let x = MultiPoly::monomial(nv, mono.exps(), Rational::one());
    Some(normalize(&core.mul_ref(&x)))
}

fn normalize(p: &MultiPoly) -> MultiPoly {
    p.primitive_part().1
}

fn strip_monomial(p: &MultiPoly, m: &Monomial) -> MultiPoly {
    if m.is_one() {
        return p.clone();
    }
    MultiPoly::from_terms(p.nvars(), p.terms().map(|(t, c)| (m.quotient_of(t), c.clone())))
}

fn gcd_no_monomial(a: &MultiPoly, b: &MultiPoly, cap: usize) -> Option<MultiPoly> {
    let nv = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Some(MultiPoly::one(nv));
    }
    let (_, pa) = a.primitive_part();
    let (_, pb) = b.primitive_part();
    if pa == pb {
        return Some(pa);
    }
    if pa.len() >= pb.len() {
        if pa.exact_div(&pb).is_some() {
            return Some(pb);
        }
    } else if pb.exact_div(&pa).is_some() {
        return Some(pa);
    }
    let va = pa.variables();
    let vb = pb.variables();
    let common: Vec<usize> = va.intersection(&vb).copied().collect();
    if common.is_empty() {
        return Some(MultiPoly::one(nv));
    }
    // A variable occurring in only one argument cannot occur in the gcd.
    if let Some(&v) = va.symmetric_difference(&vb).next() {
        let (with_v, other) = if va.contains(&v) { (&pa, &pb) } else { (&pb, &pa) };
        let mut g = other.clone();
        for coeff in with_v.coefficients_in(v) {
            if coeff.is_zero() {
                continue;
            }
            g = gcd_capped(&g, &coeff, cap)?;
            if g.is_constant() {
                return Some(MultiPoly::one(nv));
            }
        }
        return Some(g);
    }
    let v = *common.iter().min_by_key(|&&v| pa.degree_in(v).max(pb.degree_in(v)))?;
    let (conta, ppa) = content_in(&pa, v, cap)?;
    let (contb, ppb) = content_in(&pb, v, cap)?;
    let cont = gcd_capped(&conta, &contb, cap)?;
    let prs = primitive_prs(&ppa, &ppb, v, cap)?;
    Some(normalize(&cont.mul_ref(&prs)))
}

/// Content with respect to `v` (gcd of the coefficients in `v`) and the
/// corresponding primitive part.
fn content_in(p: &MultiPoly, v: usize, cap: usize) -> Option<(MultiPoly, MultiPoly)> {
    let mut coeffs: Vec<MultiPoly> = p.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(MultiPoly::len);
    let mut g = coeffs[0].clone();
    for c in &coeffs[1..] {
        if g.is_constant() {
            break;
        }
        g = gcd_capped(&g, c, cap)?;
    }
    let g = normalize(&g);
    if g.is_constant() {
        return Some((MultiPoly::one(p.nvars()), normalize(p)));
    }
    let q = p.exact_div(&g).expect("content divides");
    Some((g, normalize(&q)))
}

fn leading_in(p: &MultiPoly, v: usize) -> MultiPoly {
    p.coefficient_in(v, p.degree_in(v))
}

fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: usize, cap: usize) -> Option<MultiPoly> {
    let db = b.degree_in(v);
    let lb = leading_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = leading_in(&r, v);
        let mut shift = Monomial::one(a.nvars());
        shift.0[v] = dr - db;
        let mut next = r.mul_ref(&lb);
        let t = MultiPoly::from_terms(a.nvars(), lr.terms().map(|(m, c)| (m.mul(&shift), c.clone())));
        next.sub_assign_ref(&t.mul_ref(b));
        r = next;
        if r.len() > cap {
            return None;
        }
    }
    Some(r)
}

fn primitive_prs(a: &MultiPoly, b: &MultiPoly, v: usize, cap: usize) -> Option<MultiPoly> {
    let (mut r0, mut r1) = if a.degree_in(v) >= b.degree_in(v) { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
    loop {
        if r1.degree_in(v) == 0 {
            return Some(MultiPoly::one(a.nvars()));
        }
        let r = pseudo_rem(&r0, &r1, v, cap)?;
        if r.is_zero() {
            return Some(r1);
        }
        if r.degree_in(v) == 0 {
            return Some(MultiPoly::one(a.nvars()));
        }
        let (_, pr) = content_in(&r, v, cap)?;
        r0 = r1;
        r1 = pr;
    }
}
