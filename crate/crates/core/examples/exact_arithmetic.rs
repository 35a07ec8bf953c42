//! Exact rationals and sparse polynomials: parse, combine, differentiate,
//! evaluate.

use hydroham::exact::{MultiPoly, Rational};

fn main() -> hydroham::Result<()> {
    let a: Rational = "3/4".parse()?;
    let b: Rational = "-5/6".parse()?;
    println!("{a} + {b} = {}", &a + &b);
    println!("{a} * {b} = {}", &a * &b);
    println!("1 / {b} = {}", b.recip()?);

    // p = u1^2 u2 - 3/2 u3 in three variables
    let mut p = MultiPoly::monomial(3, &[2, 1, 0], Rational::one());
    p.add_assign_ref(&MultiPoly::var(3, 2).scale(&Rational::frac(-3, 2)));
    println!("p = {p}");
    println!("dp/du1 = {}", p.partial(0));
    let at = [Rational::from(2), Rational::from(-1), a];
    println!("p(2, -1, 3/4) = {}", p.eval(&at));
    Ok(())
}
