//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are stored 0-based; the public text form names them `u1..un`.
//! Terms are kept in a `BTreeMap` keyed by graded-lexicographic monomial
//! order, so iteration is ascending and the leading term is the last entry.
//! Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::rational::Rational;

pub type Exponents = SmallVec<[u32; 8]>;

/// Exponent vector ordered graded-lexicographically: total degree first, then
/// a larger exponent in an earlier variable wins.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[v] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().cmp(other.0.iter()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The 0-based variable `v`.
    pub fn var(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable {v} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, v), Rational::one());
        p
    }

    /// The 1-based coordinate `u^alpha` of an `n`-component system, with the
    /// convention that `u^alpha` vanishes for `alpha > n` (and for `alpha = 0`).
    pub fn u(nvars: usize, n: usize, alpha: usize) -> Self {
        if alpha == 0 || alpha > n {
            Self::zero(nvars)
        } else {
            Self::var(nvars, alpha - 1)
        }
    }

    pub fn monomial(nvars: usize, exps: &[u32], c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps.iter().copied().collect()), c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars);
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.keys().next().unwrap().is_one(),
            _ => false,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Total degree counting only the first `k` variables.
    pub fn degree_in_first(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m.0[..k].iter().sum()).max().unwrap_or(0)
    }

    /// Variables that occur with positive exponent.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    out.insert(v);
                }
            }
        }
        out
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &MultiPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different variable counts ({} vs {})",
            self.nvars, other.nvars
        );
    }

    pub fn add_assign_ref(&mut self, other: &MultiPoly) {
        self.check_nvars(other);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &MultiPoly) {
        self.check_nvars(other);
        for (m, c) in &other.terms {
            self.add_term(m.clone(), &-c);
        }
    }

    /// `self += c * x^m * other`
    pub fn add_scaled_shifted(&mut self, other: &MultiPoly, m: &Monomial, c: &Rational) {
        self.check_nvars(other);
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), &(oc * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_ref(&self, other: &MultiPoly) -> MultiPoly {
        self.check_nvars(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }

    /// Formal partial derivative in the 0-based variable `v`.
    pub fn partial(&self, v: usize) -> MultiPoly {
        assert!(v < self.nvars, "variable {v} out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[v] -= 1;
            out.terms.insert(dm, c * &Rational::from(e as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.0.iter()) {
                if e > 0 {
                    t *= &x.pow(e as i32);
                }
            }
            total += &t;
        }
        total
    }

    /// Substitute values for some variables; the variable count is kept and
    /// substituted variables no longer occur.
    pub fn substitute(&self, values: &[(usize, Rational)]) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut m = m.clone();
            for (v, x) in values {
                let e = m.0[*v];
                if e > 0 {
                    c *= &x.pow(e as i32);
                    m.0[*v] = 0;
                }
            }
            out.add_term(m, &c);
        }
        out
    }

    /// Replace every variable `v` by the polynomial `subs[v]` (all over the
    /// same target variable count).
    pub fn compose(&self, subs: &[MultiPoly]) -> MultiPoly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<MultiPoly>> = subs.iter().map(|p| vec![Self::one(p.nvars), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[v].len() <= e as usize {
                    let next = cache[v].last().unwrap().mul_ref(&subs[v]);
                    cache[v].push(next);
                }
                t = t.mul_ref(&cache[v][e as usize]);
            }
            out.add_assign_ref(&t);
        }
        out
    }

    /// Same polynomial viewed over `nvars >= self.nvars()` variables.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        MultiPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drop trailing variables, which must not occur.
    pub fn restrict_vars(&self, nvars: usize) -> MultiPoly {
        MultiPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    assert!(m.0[nvars..].iter().all(|&e| e == 0), "restricted variable occurs");
                    (Monomial(m.0[..nvars].iter().copied().collect()), c.clone())
                })
                .collect(),
        }
    }

    /// Coefficient of `x_v^d`, as a polynomial not involving `x_v`.
    pub fn coefficient_in(&self, v: usize, d: u32) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[v] == d {
                let mut m = m.clone();
                m.0[v] = 0;
                out.terms.insert(m, c.clone());
            }
        }
        out
    }

    /// All coefficients in `x_v`, indexed by degree.
    pub fn coefficients_in(&self, v: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let d = m.0[v] as usize;
            let mut m = m.clone();
            m.0[v] = 0;
            out[d].terms.insert(m, c.clone());
        }
        out
    }

    /// Terms of total degree (in the first `k` variables) exactly `d`.
    pub fn homogeneous_part(&self, k: usize, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[..k].iter().sum::<u32>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_nvars(d);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip().ok()?));
        }
        for v in 0..self.nvars {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = Self::zero(self.nvars);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let tm = dm.quotient_of(rm);
            let tc = rc / &dc;
            r.add_scaled_shifted(d, &tm, &-&tc);
            q.terms.insert(tm, tc);
        }
        Some(q)
    }

    /// Write `self = c * p` with `p` having coprime integer coefficients and a
    /// positive leading coefficient. Returns `(c, p)`; zero maps to `(0, 0)`.
    pub fn primitive_part(&self) -> (Rational, MultiPoly) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let mut c = Rational::gcd_of(self.terms.values());
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        let inv = c.recip().expect("nonzero content");
        (c, self.scale(&inv))
    }

    /// Gcd of the monomials occurring in `self`.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(self.nvars),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Canonical text form: terms in descending graded-lex order, coefficients
    /// as `p/q`, variables `u1..un`, e.g. `-4/1*u1 + 1/1`.
    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*u{}", v + 1)?,
                    _ => write!(f, "*u{}^{}", v + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_assign_ref(o);
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.sub_assign_ref(o);
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.mul_ref(o)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&Rational::from(-1))
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, o: MultiPoly) -> MultiPoly {
        self.add_assign_ref(&o);
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(mut self, o: MultiPoly) -> MultiPoly {
        self.sub_assign_ref(&o);
        self
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        self.mul_ref(&o)
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        (&self).neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize, a: usize) -> MultiPoly {
        MultiPoly::u(n, n, a)
    }

    fn c(n: usize, v: i64) -> MultiPoly {
        MultiPoly::constant(n, Rational::from(v))
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&u(1, 1) + &c(1, 1)) * &(&u(1, 1) - &c(1, 1));
        assert_eq!(p.to_string(), "1/1*u1^2 + -1/1");
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = &u(2, 1).scale(&Rational::from(2)) + &u(2, 2).scale(&Rational::from(3));
        let b = u(2, 1).scale(&Rational::from(-2));
        let s = &a + &b;
        assert_eq!(s.len(), 1);
        assert_eq!(s.to_string(), "3/1*u2");
    }

    #[test]
    fn zero_annihilates() {
        let p = &u(3, 1) * &u(3, 2);
        assert!((&p * &MultiPoly::zero(3)).is_zero());
    }

    #[test]
    fn out_of_range_coordinate_vanishes() {
        assert!(MultiPoly::u(3, 3, 4).is_zero());
        assert!(!MultiPoly::u(3, 3, 3).is_zero());
    }

    #[test]
    fn graded_lex_leading_term() {
        let p = &(&u(2, 2).pow(2) + &u(2, 1)) + &(&u(2, 1) * &u(2, 2));
        assert_eq!(p.to_string(), "1/1*u1*u2 + 1/1*u2^2 + 1/1*u1");
    }

    #[test]
    fn exact_division() {
        let a = &u(2, 1) + &u(2, 2);
        let b = &u(2, 1) - &c(2, 3);
        let p = &a * &b;
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(p.exact_div(&b), Some(a.clone()));
        assert_eq!(p.exact_div(&(&u(2, 1) + &c(2, 1))), None);
    }

    #[test]
    fn compose_substitutes_polynomials() {
        // (u1 u2) with u1 -> u1 + 1, u2 -> 2 u2
        let p = &u(2, 1) * &u(2, 2);
        let q = p.compose(&[&u(2, 1) + &c(2, 1), u(2, 2).scale(&Rational::from(2))]);
        assert_eq!(q.to_string(), "2/1*u1*u2 + 2/1*u2");
    }

    #[test]
    fn primitive_part_normalizes() {
        let p = &u(2, 1).scale(&Rational::frac(-2, 3)) + &c(2, 4);
        let (k, q) = p.primitive_part();
        assert_eq!(q.to_string(), "1/1*u1 + -6/1");
        assert_eq!(q.scale(&k), p);
    }
}
