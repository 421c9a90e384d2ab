//! Rational functions in one variable v over Q, used for generic q = v².

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::QPoly;

/// num/den with gcd(num, den) = 1 and den monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_int(0));
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        let l = den.lead().unwrap().recip();
        Ok(RatFunc { num: num.scale(&l), den: den.scale(&l) })
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        RatFunc { num: QPoly::constant(r), den: QPoly::one() }
    }

    /// v^k for any integer k.
    pub fn vpow(k: i64) -> Self {
        let m = QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RatFunc { num: m, den: QPoly::one() }
        } else {
            RatFunc { num: QPoly::one(), den: m }
        }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
            .expect("nonzero denominators")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// Value at a rational point.
    pub fn eval_rational(&self, v: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return Err(Error::Degenerate(format!("pole at v = {v}")));
        }
        Ok(self.num.eval(v) / d)
    }

    /// Value at a cyclotomic point.
    pub fn eval_cyclo(&self, v: &CycNum) -> Result<CycNum> {
        let d = horner(&self.den, v);
        if d.is_zero() {
            return Err(Error::Degenerate(format!("pole at v = {v}")));
        }
        Ok(&horner(&self.num, v) * &d.inv()?)
    }

    /// The substitution v ↦ 1/v, which is complex conjugation on the unit circle.
    pub fn bar(&self) -> Self {
        let flip = |p: &QPoly| QPoly::from_coeffs(p.coeffs().iter().rev().cloned().collect());
        let (dn, dd) = (self.num.degree().unwrap_or(0), self.den.degree().unwrap_or(0));
        let (mut n, mut d) = (flip(&self.num), flip(&self.den));
        // f(1/v) = v^{dd-dn}·rev(num)/rev(den).
        let shift = QPoly::monomial(BigRational::one(), dn.abs_diff(dd));
        if dd >= dn {
            n = n.mul(&shift);
        } else {
            d = d.mul(&shift);
        }
        if self.num.is_zero() {
            return self.clone();
        }
        Self::new(n, d).expect("nonzero denominator")
    }
}

fn horner(p: &QPoly, v: &CycNum) -> CycNum {
    let mut acc = CycNum::zero(v.order());
    for a in p.coeffs().iter().rev() {
        acc = &(&acc * v) + &CycNum::from_rational(v.order(), a);
    }
    acc
}

impl Field for RatFunc {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero_in(_: ()) -> Self {
        Self::from_int(0)
    }
    fn one_in(_: ()) -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RatFunc::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFunc::add(self, &o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        RatFunc::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        RatFunc::inv(self)
    }
    fn conj(&self) -> Self {
        self.bar()
    }
}

fn fmt_poly(p: &QPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "{c}")?,
            _ => write!(f, "({c})v^{k}")?,
        }
    }
    Ok(())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_poly(&self.num, f)?;
        write!(f, ")/(")?;
        fmt_poly(&self.den, f)?;
        write!(f, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::zeta;

    #[test]
    fn canonical_after_cancellation() {
        // (v^4 - v^-4)/(v^2 - v^-2) = v^2 + v^-2.
        let a = RatFunc::vpow(4).add(&RatFunc::vpow(-4).neg());
        let b = RatFunc::vpow(2).add(&RatFunc::vpow(-2).neg());
        let c = RatFunc::vpow(2).add(&RatFunc::vpow(-2));
        assert_eq!(a.div(&b).unwrap(), c);
    }

    #[test]
    fn evaluation() {
        let f = RatFunc::vpow(2).add(&RatFunc::vpow(-2));
        assert_eq!(f.eval_rational(&BigRational::one()).unwrap(), BigRational::from_integer(2.into()));
        let z = f.eval_cyclo(&zeta(8, 1)).unwrap();
        assert!(z.is_zero());
        let g = RatFunc::from_int(1).div(&f).unwrap();
        assert!(g.eval_cyclo(&zeta(8, 1)).is_err());
    }

    #[test]
    fn bar_is_involution() {
        let f = RatFunc::vpow(3).add(&RatFunc::from_int(2)).div(&RatFunc::vpow(-1).add(&RatFunc::from_int(5))).unwrap();
        assert_eq!(f.bar().bar(), f);
        let v = zeta(12, 1);
        assert_eq!(f.bar().eval_cyclo(&v).unwrap(), f.eval_cyclo(&v).unwrap().conj());
    }
}
