//! Rational functions in lowest terms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::monomial::TermOrder;
use super::poly::MultiPoly;
use super::{AlgebraError, Rational};

/// `num / den` with `gcd(num, den) = 1` and `den` monic under graded reverse
/// lexicographic order.
///
/// The zero function is `0 / 1`. With these normalizations two rational
/// functions are equal exactly when their representations are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.nvars() != den.nvars() {
            return Err(AlgebraError::SignatureMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        let num = num.with_order(TermOrder::GrevLex);
        let den = den.with_order(TermOrder::GrevLex);
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatFunc {
                den: MultiPoly::one(num.nvars(), num.order()),
                num,
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides numerator"),
                    den.exact_div(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let p = p.with_order(TermOrder::GrevLex);
        let den = MultiPoly::one(p.nvars(), p.order());
        RatFunc { num: p, den }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(nvars, TermOrder::GrevLex))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(nvars, TermOrder::GrevLex))
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, TermOrder::GrevLex, c))
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, TermOrder::GrevLex, var))
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

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn pow_i(&self, e: i64) -> Result<RatFunc, AlgebraError> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv()?.pow((-e) as u32))
        }
    }

    /// Partial derivative by the quotient rule.
    pub fn derivative(&self, var: usize) -> RatFunc {
        let dn = self.num.derivative(var);
        let dd = self.den.derivative(var);
        if dd.is_zero() {
            return Self::normalize(dn, self.den.clone());
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Self::normalize(num, &self.den * &self.den)
    }

    /// Substitutes a rational value for a variable, keeping the signature.
    /// Fails when the denominator vanishes.
    pub fn eval_var_keep(&self, var: usize, value: &Rational) -> Result<RatFunc, AlgebraError> {
        let c = MultiPoly::constant(self.nvars(), self.num.order(), value.clone());
        let den = self.den.subst_var(var, &c);
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        RatFunc::new(self.num.subst_var(var, &c), den)
    }

    pub fn render(&self, names: &[String]) -> String {
        let wrap = |p: &MultiPoly| {
            let s = p.render(names);
            if p.len() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            self.num.render(names)
        } else {
            let den = if self.den.len() == 1 && self.den.leading_monomial().unwrap().degree() <= 1
            {
                self.den.render(names)
            } else {
                format!("({})", self.den.render(names))
            };
            format!("{}/{}", wrap(&self.num), den)
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&MultiPoly::default_names(self.nvars())))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalize(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn lowest_terms_and_monic_denominator() {
        let o = TermOrder::GrevLex;
        let x = MultiPoly::var(2, o, 0);
        let y = MultiPoly::var(2, o, 1);
        let r = &x + &y;
        let f = RatFunc::new(&x * &r, (&y * &r).scale(&rat(3, 1))).unwrap();
        assert_eq!(f.num(), &x.scale(&rat(1, 3)));
        assert_eq!(f.den(), &y);
    }

    #[test]
    fn zero_denominator_rejected() {
        let o = TermOrder::GrevLex;
        assert_eq!(
            RatFunc::new(MultiPoly::one(1, o), MultiPoly::zero(1, o)),
            Err(AlgebraError::ZeroDenominator)
        );
    }

    #[test]
    fn quotient_rule() {
        // d/dt (t-1)/(t+1) = 2/(t+1)^2
        let o = TermOrder::GrevLex;
        let t = MultiPoly::var(1, o, 0);
        let one = MultiPoly::one(1, o);
        let f = RatFunc::new(&t - &one, &t + &one).unwrap();
        let expected = RatFunc::new(
            MultiPoly::constant(1, o, rat(2, 1)),
            (&t + &one).pow(2),
        )
        .unwrap();
        assert_eq!(f.derivative(0), expected);
    }
}
