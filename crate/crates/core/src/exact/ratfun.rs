//! Quotients of multivariate polynomials kept in lowest terms.
//!
//! The denominator is normalized to integer coefficients with unit content and
//! a positive leading coefficient. When a gcd computation exceeds the term cap
//! the value is stored unreduced and compared by cross-multiplication, or by
//! seeded random evaluation if even that would exceed the cap.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::gcd::{gcd_capped, DEFAULT_TERM_CAP};
use super::poly::MultiPoly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Seed and point count for the probabilistic equality fallback.
pub const EQUALITY_SEED: u64 = 0x5eed;
pub const EQUALITY_POINTS: usize = 20;

#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
    reduced: bool,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        Self::with_cap(num, den, DEFAULT_TERM_CAP)
    }

    pub fn with_cap(num: MultiPoly, den: MultiPoly, cap: usize) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.nvars() != den.nvars() {
            return Err(Error::NvarsMismatch { left: num.nvars(), right: den.nvars() });
        }
        let nv = num.nvars();
        if num.is_zero() {
            return Ok(Self::zero(nv));
        }
        let (num, den, reduced) = match gcd_capped(&num, &den, cap) {
            Some(g) if g.is_constant() => (num, den, true),
            Some(g) => (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
                true,
            ),
            None => (num, den, false),
        };
        let (c, den) = den.primitive_part();
        let num = num.scale(&c.recip().expect("nonzero content"));
        Ok(RationalFunction { num, den, reduced })
    }

    pub fn zero(nvars: usize) -> Self {
        RationalFunction { num: MultiPoly::zero(nvars), den: MultiPoly::one(nvars), reduced: true }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars))
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let nv = p.nvars();
        RationalFunction { num: p, den: MultiPoly::one(nv), reduced: true }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial value, if the denominator is constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        let d = self.den.as_constant()?;
        Some(self.num.scale(&d.recip().ok()?))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone()).expect("nonzero denominator");
        }
        let g = gcd_capped(&self.den, &o.den, DEFAULT_TERM_CAP).unwrap_or_else(|| MultiPoly::one(self.nvars()));
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = o.den.exact_div(&g).expect("gcd divides");
        let num = &self.num.mul_ref(&b) + &o.num.mul_ref(&a);
        Self::new(num, a.mul_ref(&o.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone(), reduced: self.reduced }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.nvars());
        }
        let cap = DEFAULT_TERM_CAP;
        let one = || MultiPoly::one(self.nvars());
        let g1 = gcd_capped(&self.num, &o.den, cap).unwrap_or_else(one);
        let g2 = gcd_capped(&o.num, &self.den, cap).unwrap_or_else(one);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = o.den.exact_div(&g1).expect("gcd divides");
        let n2 = o.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = n1.mul_ref(&n2);
        let den = d1.mul_ref(&d2);
        let (c, den) = den.primitive_part();
        RationalFunction {
            num: num.scale(&c.recip().expect("nonzero content")),
            den,
            reduced: self.reduced && o.reduced,
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone(), reduced: self.reduced }
    }

    /// Partial derivative in the 0-based variable `v` (quotient rule).
    pub fn partial(&self, v: usize) -> Self {
        if self.den.is_constant() {
            return RationalFunction { num: self.num.partial(v), den: self.den.clone(), reduced: true };
        }
        let num = &self.num.partial(v).mul_ref(&self.den) - &self.num.mul_ref(&self.den.partial(v));
        Self::new(num, self.den.mul_ref(&self.den)).expect("nonzero denominator")
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point);
        self.num.eval(point).checked_div(&d)
    }

    fn probably_equal(&self, o: &Self) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(EQUALITY_SEED);
        let mut checked = 0;
        let mut attempts = 0;
        while checked < EQUALITY_POINTS && attempts < 100 * EQUALITY_POINTS {
            attempts += 1;
            let p: Vec<Rational> =
                (0..self.nvars()).map(|_| Rational::from(rng.gen_range(-1_000_000i64..=1_000_000))).collect();
            match (self.eval(&p), o.eval(&p)) {
                (Ok(a), Ok(b)) => {
                    if a != b {
                        return false;
                    }
                    checked += 1;
                }
                _ => continue,
            }
        }
        true
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        if self.nvars() != o.nvars() {
            return false;
        }
        if self.reduced && o.reduced {
            return self.num == o.num && self.den == o.den;
        }
        let cost = self.num.len() * o.den.len() + o.num.len() * self.den.len();
        if cost > DEFAULT_TERM_CAP {
            return self.probably_equal(o);
        }
        self.num.mul_ref(&o.den) == o.num.mul_ref(&self.den)
    }
}

impl Eq for RationalFunction {}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            let c = self.den.constant_term();
            if c.is_one() {
                return write!(f, "{}", self.num);
            }
            return write!(f, "{}", self.num.scale(&c.recip().expect("nonzero")));
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
