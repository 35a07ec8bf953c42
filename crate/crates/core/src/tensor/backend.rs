//! Scalar backends for tensor computations.
//!
//! Tensor formulas are written once against [`Backend`]. The symbolic backend
//! represents every value as `N / D^e` for one fixed polynomial `D` (the
//! product of the determinants of all matrices that get inverted), so no
//! multivariate gcd is needed and a value vanishes iff its numerator does.
//! The sampled backend evaluates at a point with second-order Taylor jets, so
//! derivatives up to order two are exact at that point.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{linalg, Matrix, Monomial, MultiPoly, PolyMatrix, Rational, RationalFunction};

pub trait Scalar: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    /// Partial derivative in the 0-based coordinate `k` of the `u` block.
    fn partial(&self, k: usize) -> Self;
    fn is_zero(&self) -> bool;
    /// Human-readable residual for witnesses.
    fn describe(&self) -> String;
    /// Cheaper equivalent representation, where the backend has one.
    fn simplify(&self) -> Self {
        self.clone()
    }
}

impl Scalar for MultiPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self.mul_ref(o)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        MultiPoly::scale(self, c)
    }
    fn partial(&self, k: usize) -> Self {
        MultiPoly::partial(self, k)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn describe(&self) -> String {
        self.to_string()
    }
}

pub trait Backend {
    type S: Scalar;
    /// Size of the `u` block.
    fn n(&self) -> usize;
    fn lift(&self, p: &MultiPoly) -> Self::S;
    fn zero(&self) -> Self::S;
    fn inverse(&self, m: &PolyMatrix) -> Result<Matrix<Self::S>>;

    fn lift_matrix(&self, m: &PolyMatrix) -> Matrix<Self::S> {
        m.map(|p| self.lift(p))
    }
}

/// Sum of `terms` starting from zero.
pub fn sum<S: Scalar>(zero: &S, terms: impl IntoIterator<Item = S>) -> S {
    terms.into_iter().fold(zero.clone(), |a, b| a.add(&b))
}

// ---------------------------------------------------------------------------
// Symbolic backend

struct DenCtx {
    d: MultiPoly,
    d_partials: Vec<MultiPoly>,
    /// `(coefficient, exponents)` when `D` is a single term.
    monomial: Option<(Rational, Monomial)>,
    powers: RefCell<Vec<MultiPoly>>,
}

impl DenCtx {
    fn new(d: MultiPoly, n: usize) -> Self {
        let d_partials = (0..n).map(|k| d.partial(k)).collect();
        let monomial = if d.is_monomial() {
            d.leading().map(|(m, c)| (c.clone(), m.clone()))
        } else {
            None
        };
        let powers = RefCell::new(vec![MultiPoly::one(d.nvars()), d.clone()]);
        DenCtx { d, d_partials, monomial, powers }
    }

    fn power(&self, e: u32) -> MultiPoly {
        let mut p = self.powers.borrow_mut();
        while p.len() <= e as usize {
            let next = p.last().unwrap().mul_ref(&self.d);
            p.push(next);
        }
        p[e as usize].clone()
    }
}

/// `num / D^exp` for the backend's shared denominator `D`.
#[derive(Clone)]
pub struct Frac {
    num: MultiPoly,
    exp: u32,
    ctx: Rc<DenCtx>,
}

impl Frac {
    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn denominator(&self) -> MultiPoly {
        self.ctx.power(self.exp)
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        RationalFunction::new(self.num.clone(), self.denominator()).expect("nonzero denominator")
    }

    fn make(num: MultiPoly, exp: u32, ctx: &Rc<DenCtx>) -> Frac {
        let mut f = Frac { num, exp, ctx: ctx.clone() };
        f.reduce_monomial();
        f
    }

    /// Cancel powers of a monomial denominator against the numerator.
    fn reduce_monomial(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        if self.exp == 0 {
            return;
        }
        let Some((c, m)) = &self.ctx.monomial else { return };
        let content = self.num.monomial_content();
        let mut t = self.exp;
        for (v, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                t = t.min(content.exps()[v] / e);
            }
        }
        if t == 0 {
            return;
        }
        let shift = Monomial(m.exps().iter().map(|e| e * t).collect());
        let inv = c.pow(t as i32).recip().expect("nonzero coefficient");
        self.num = MultiPoly::from_terms(
            self.num.nvars(),
            self.num.terms().map(|(mm, cc)| (shift.quotient_of(mm), cc * &inv)),
        );
        self.exp -= t;
    }

    /// Cancel as many factors of `D` as divide the numerator exactly.
    pub fn reduce(&self) -> Frac {
        let mut f = self.clone();
        f.reduce_monomial();
        while f.exp > 0 {
            match f.num.exact_div(&f.ctx.d) {
                Some(q) => {
                    f.num = q;
                    f.exp -= 1;
                }
                None => break,
            }
        }
        f
    }

    fn aligned(&self, o: &Frac) -> (MultiPoly, MultiPoly, u32) {
        use std::cmp::Ordering::*;
        match self.exp.cmp(&o.exp) {
            Equal => (self.num.clone(), o.num.clone(), self.exp),
            Less => (self.num.mul_ref(&self.ctx.power(o.exp - self.exp)), o.num.clone(), o.exp),
            Greater => (self.num.clone(), o.num.mul_ref(&self.ctx.power(self.exp - o.exp)), self.exp),
        }
    }
}

impl Scalar for Frac {
    fn add(&self, o: &Self) -> Self {
        if o.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return o.clone();
        }
        let (a, b, e) = self.aligned(o);
        Frac::make(&a + &b, e, &self.ctx)
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Frac { num: MultiPoly::zero(self.num.nvars()), exp: 0, ctx: self.ctx.clone() };
        }
        Frac::make(self.num.mul_ref(&o.num), self.exp + o.exp, &self.ctx)
    }

    fn neg(&self) -> Self {
        Frac { num: -&self.num, exp: self.exp, ctx: self.ctx.clone() }
    }

    fn scale(&self, c: &Rational) -> Self {
        Frac::make(self.num.scale(c), self.exp, &self.ctx)
    }

    fn partial(&self, k: usize) -> Self {
        if self.exp == 0 {
            return Frac { num: self.num.partial(k), exp: 0, ctx: self.ctx.clone() };
        }
        let dk = &self.ctx.d_partials[k];
        let mut num = self.num.partial(k).mul_ref(&self.ctx.d);
        num.sub_assign_ref(&self.num.mul_ref(dk).scale(&Rational::from(self.exp as i64)));
        Frac::make(num, self.exp + 1, &self.ctx)
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn describe(&self) -> String {
        match self.exp {
            0 => self.num.to_string(),
            1 => format!("({})/({})", self.num, self.ctx.d),
            e => format!("({})/({})^{e}", self.num, self.ctx.d),
        }
    }

    fn simplify(&self) -> Self {
        self.reduce()
    }
}

pub struct SymbolicBackend {
    n: usize,
    ctx: Rc<DenCtx>,
    inverses: Vec<(PolyMatrix, Matrix<Frac>)>,
}

impl SymbolicBackend {
    /// Backend able to invert exactly the given matrices.
    pub fn new(n: usize, nvars: usize, to_invert: &[&PolyMatrix]) -> Result<Self> {
        let mut pre = Vec::new();
        let mut factors: Vec<MultiPoly> = Vec::new();
        for m in to_invert {
            let (delta, adj) = m.fraction_free_inverse()?;
            let (c, prim) = delta.primitive_part();
            if !prim.is_constant() && !factors.contains(&prim) {
                factors.push(prim.clone());
            }
            pre.push(((*m).clone(), c, prim, adj));
        }
        let d = factors.iter().fold(MultiPoly::one(nvars), |a, f| a.mul_ref(f));
        let ctx = Rc::new(DenCtx::new(d.clone(), n));
        let mut inverses = Vec::new();
        for (m, c, prim, adj) in pre {
            let cinv = c.recip()?;
            let inv = if prim.is_constant() {
                let s = cinv * prim.constant_term().recip()?;
                adj.map(|p| Frac::make(p.scale(&s), 0, &ctx))
            } else {
                let cof = d.exact_div(&prim).expect("factor divides the shared denominator");
                adj.map(|p| Frac::make(p.mul_ref(&cof).scale(&cinv), 1, &ctx))
            };
            inverses.push((m, inv));
        }
        Ok(SymbolicBackend { n, ctx, inverses })
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.ctx.d
    }
}

impl Backend for SymbolicBackend {
    type S = Frac;

    fn n(&self) -> usize {
        self.n
    }

    fn lift(&self, p: &MultiPoly) -> Frac {
        Frac { num: p.clone(), exp: 0, ctx: self.ctx.clone() }
    }

    fn zero(&self) -> Frac {
        Frac { num: MultiPoly::zero(self.ctx.d.nvars()), exp: 0, ctx: self.ctx.clone() }
    }

    fn inverse(&self, m: &PolyMatrix) -> Result<Matrix<Frac>> {
        self.inverses
            .iter()
            .find(|(k, _)| k == m)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::DimensionMismatch("matrix was not registered for inversion".into()))
    }
}

// ---------------------------------------------------------------------------
// Sampled backend

/// Truncation order of the jets.
pub const JET_ORDER: u32 = 2;

struct JetCtx {
    n: usize,
    order: u32,
    monos: Vec<Vec<u32>>,
    /// `mul_tables[v]`: products `(a, b, target)` with target degree `<= v`.
    mul_tables: Vec<Vec<(usize, usize, usize)>>,
    /// For each variable `k`: `(target, source, factor)` with
    /// `∂_k ε^source = factor * ε^target`.
    deriv: Vec<Vec<(usize, usize, BigInt)>>,
    /// Full point: `u` coordinates followed by parameter values.
    point: Vec<Rational>,
}

impl JetCtx {
    fn new(n: usize, order: u32, point: Vec<Rational>) -> Self {
        let mut monos: Vec<Vec<u32>> = vec![vec![0; n]];
        let mut frontier = monos.clone();
        for _ in 0..order {
            let mut next = Vec::new();
            for m in &frontier {
                let last = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for v in last..n {
                    let mut e = m.clone();
                    e[v] += 1;
                    next.push(e);
                }
            }
            monos.extend(next.iter().cloned());
            frontier = next;
        }
        let index: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let degs: Vec<u32> = monos.iter().map(|m| m.iter().sum()).collect();
        let mul_tables = (0..=order)
            .map(|v| {
                let mut table = Vec::new();
                for (a, ma) in monos.iter().enumerate() {
                    for (b, mb) in monos.iter().enumerate() {
                        if degs[a] + degs[b] <= v {
                            let s: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                            table.push((a, b, index[&s]));
                        }
                    }
                }
                table
            })
            .collect();
        let deriv = (0..n)
            .map(|k| {
                monos
                    .iter()
                    .enumerate()
                    .filter_map(|(t, m)| {
                        let mut s = m.clone();
                        s[k] += 1;
                        index.get(&s).map(|&si| (t, si, BigInt::from(m[k] + 1)))
                    })
                    .collect()
            })
            .collect();
        JetCtx { n, order, monos, mul_tables, deriv, point }
    }
}

/// Truncated Taylor expansion around the backend's point, valid up to
/// total degree `valid`. Coefficients are `num[i] / den` with one shared
/// positive denominator, so arithmetic needs few gcds.
#[derive(Clone)]
pub struct Jet {
    num: Vec<BigInt>,
    den: BigInt,
    valid: i32,
    ctx: Rc<JetCtx>,
}

/// Denominators above this many bits trigger a content reduction.
const JET_REDUCE_BITS: u64 = 256;

impl Jet {
    pub fn value(&self) -> Rational {
        assert!(self.valid >= 0, "jet differentiated beyond its order");
        Rational::from_big(BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn constant(ctx: &Rc<JetCtx>, v: &Rational) -> Jet {
        let mut num = vec![BigInt::zero(); ctx.monos.len()];
        num[0] = v.numer().clone();
        Jet { num, den: v.denom().clone(), valid: ctx.order as i32, ctx: ctx.clone() }
    }

    fn from_rationals(ctx: &Rc<JetCtx>, c: &[Rational], valid: i32) -> Jet {
        let den = c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let num = c.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        Jet { num, den, valid, ctx: ctx.clone() }
    }

    /// All stored coefficients vanish.
    fn is_null(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn with(&self, num: Vec<BigInt>, den: BigInt, valid: i32) -> Jet {
        let mut j = Jet { num, den, valid, ctx: self.ctx.clone() };
        if j.den.bits() > JET_REDUCE_BITS {
            j.reduce();
        }
        j
    }

    fn reduce(&mut self) {
        let g = self.num.iter().fold(self.den.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() && !g.is_zero() {
            for x in &mut self.num {
                *x /= &g;
            }
            self.den /= &g;
        }
    }

    fn combine(&self, o: &Self, sign: i32) -> Self {
        let valid = self.valid.min(o.valid);
        if o.is_null() {
            return Jet { valid, ..self.clone() };
        }
        if self.is_null() {
            let j = if sign < 0 { o.neg() } else { o.clone() };
            return Jet { valid, ..j };
        }
        let op = |a: BigInt, b: BigInt| if sign < 0 { a - b } else { a + b };
        if self.den == o.den {
            let num = self.num.iter().zip(&o.num).map(|(a, b)| op(a.clone(), b.clone())).collect();
            return self.with(num, self.den.clone(), valid);
        }
        let g = self.den.gcd(&o.den);
        let fa = &o.den / &g;
        let fb = &self.den / &g;
        let num = self.num.iter().zip(&o.num).map(|(a, b)| op(a * &fa, b * &fb)).collect();
        self.with(num, &self.den * &fa, valid)
    }
}

impl Scalar for Jet {
    fn add(&self, o: &Self) -> Self {
        self.combine(o, 1)
    }

    fn sub(&self, o: &Self) -> Self {
        self.combine(o, -1)
    }

    fn mul(&self, o: &Self) -> Self {
        let valid = self.valid.min(o.valid);
        let mut num = vec![BigInt::zero(); self.num.len()];
        if valid < 0 || self.is_null() || o.is_null() {
            return Jet { num, den: BigInt::one(), valid, ctx: self.ctx.clone() };
        }
        for &(a, b, t) in &self.ctx.mul_tables[valid as usize] {
            if !self.num[a].is_zero() && !o.num[b].is_zero() {
                num[t] += &self.num[a] * &o.num[b];
            }
        }
        self.with(num, &self.den * &o.den, valid)
    }

    fn neg(&self) -> Self {
        Jet { num: self.num.iter().map(|a| -a).collect(), den: self.den.clone(), valid: self.valid, ctx: self.ctx.clone() }
    }

    fn scale(&self, k: &Rational) -> Self {
        // Rational keeps its denominator positive.
        let num = self.num.iter().map(|a| a * k.numer()).collect();
        self.with(num, &self.den * k.denom(), self.valid)
    }

    fn partial(&self, k: usize) -> Self {
        let mut num = vec![BigInt::zero(); self.num.len()];
        for (t, s, f) in &self.ctx.deriv[k] {
            num[*t] = &self.num[*s] * f;
        }
        Jet { num, den: self.den.clone(), valid: self.valid - 1, ctx: self.ctx.clone() }
    }

    fn is_zero(&self) -> bool {
        assert!(self.valid >= 0, "jet differentiated beyond its order");
        self.num[0].is_zero()
    }

    fn describe(&self) -> String {
        let pt: Vec<String> = self.ctx.point[..self.ctx.n].iter().map(|r| r.to_string()).collect();
        format!("{} at u = ({})", self.value(), pt.join(", "))
    }

    fn simplify(&self) -> Self {
        let mut j = self.clone();
        j.reduce();
        j
    }
}

pub struct JetBackend {
    ctx: Rc<JetCtx>,
}

impl JetBackend {
    /// `point` holds the `u` coordinates followed by values for every
    /// parameter variable.
    pub fn new(n: usize, point: Vec<Rational>) -> Self {
        JetBackend { ctx: Rc::new(JetCtx::new(n, JET_ORDER, point)) }
    }

    pub fn point(&self) -> &[Rational] {
        &self.ctx.point
    }
}

impl Backend for JetBackend {
    type S = Jet;

    fn n(&self) -> usize {
        self.ctx.n
    }

    fn lift(&self, p: &MultiPoly) -> Jet {
        let n = self.ctx.n;
        let nv = p.nvars();
        assert_eq!(nv, self.ctx.point.len(), "point does not match the variable count");
        let subs: Vec<MultiPoly> = (0..nv)
            .map(|v| {
                let c = MultiPoly::constant(n, self.ctx.point[v].clone());
                if v < n {
                    &c + &MultiPoly::var(n, v)
                } else {
                    c
                }
            })
            .collect();
        let shifted = p.compose(&subs);
        let c: Vec<Rational> = self
            .ctx
            .monos
            .iter()
            .map(|m| shifted.coefficient(&Monomial(m.iter().copied().collect())))
            .collect();
        Jet::from_rationals(&self.ctx, &c, self.ctx.order as i32)
    }

    fn zero(&self) -> Jet {
        Jet::constant(&self.ctx, &Rational::zero())
    }

    /// `A^{-1} = (I - X + X^2 - ...) A0^{-1}` with `A0` the value at the point
    /// and `X = A0^{-1}(A - A0)`, truncated at the jet order since `X` has no
    /// constant term.
    fn inverse(&self, m: &PolyMatrix) -> Result<Matrix<Jet>> {
        let n = m.rows();
        let a = self.lift_matrix(m);
        let a0 = a.map(|j| j.value());
        let a0_inv = linalg::inverse(&a0).ok_or(Error::IdenticallySingular)?;
        let m0 = a0_inv.map(|v| Jet::constant(&self.ctx, v));
        let e = a.map(|j| {
            let mut j = j.clone();
            j.num[0] = BigInt::zero();
            j
        });
        let zero = self.zero();
        let prod = |x: &Matrix<Jet>, y: &Matrix<Jet>| {
            Matrix::from_fn(n, n, |i, k| sum(&zero, (0..n).map(|l| x.get(i, l).mul(y.get(l, k)))))
        };
        let x = prod(&m0, &e);
        let mut term = m0.clone();
        let mut acc = m0;
        for p in 1..=self.ctx.order {
            term = prod(&x, &term);
            acc = Matrix::from_fn(n, n, |i, k| {
                if p % 2 == 1 {
                    acc.get(i, k).sub(term.get(i, k))
                } else {
                    acc.get(i, k).add(term.get(i, k))
                }
            });
        }
        Ok(acc)
    }
}
