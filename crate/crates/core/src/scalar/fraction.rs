//! The fraction field of the polynomial ring.
//!
//! No canonical GCD form: equality is decided by cross-multiplication, and
//! the only simplification ever applied is exact single-divisor cancellation
//! (numerator by denominator or vice versa) plus folding constant
//! denominators. That keeps representations small in practice without
//! needing a multivariate GCD.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::chart::Var;

use super::poly::{exact_divide, reduce_single_divisor};
use super::{GaussianRational, Poly, ScalarError};

/// An exact rational expression `num/den` with `den != 0`.
#[derive(Clone, Debug)]
pub struct ExactScalar {
    num: Poly,
    den: Poly,
}

impl ExactScalar {
    pub fn new(num: Poly, den: Poly) -> Result<ExactScalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(ExactScalar { num, den }.normalized())
    }

    pub fn from_poly(p: Poly) -> ExactScalar {
        ExactScalar { num: p, den: Poly::one() }
    }

    pub fn from_constant(c: GaussianRational) -> ExactScalar {
        ExactScalar::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> ExactScalar {
        ExactScalar::from_poly(Poly::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> ExactScalar {
        ExactScalar::from_constant(GaussianRational::from_ratio(num, den))
    }

    pub fn zero() -> ExactScalar {
        ExactScalar::from_poly(Poly::zero())
    }

    pub fn one() -> ExactScalar {
        ExactScalar::from_poly(Poly::one())
    }

    pub fn var(v: Var) -> ExactScalar {
        ExactScalar::from_poly(Poly::var(v))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &ExactScalar::one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn normalized(mut self) -> ExactScalar {
        if self.num.is_zero() {
            self.den = Poly::one();
            return self;
        }
        if let Some(c) = self.den.as_constant() {
            let inv = c.inv().expect("denominator nonzero");
            self.num = self.num.scale(&inv);
            self.den = Poly::one();
            return self;
        }
        // Opportunistic exact cancellation, both directions.
        if let Some(q) = exact_divide(&self.num, &self.den) {
            return ExactScalar { num: q, den: Poly::one() };
        }
        if let Some(q) = exact_divide(&self.den, &self.num) {
            // num/den = 1/q; re-normalize to fold a possibly constant q.
            return ExactScalar { num: Poly::one(), den: q }.normalized_light();
        }
        // Monic denominator for stable printing and cheap equality hits.
        let (den, lc) = self.den.monic();
        let lc_inv = lc.inv().expect("leading coefficient nonzero");
        ExactScalar { num: self.num.scale(&lc_inv), den }
    }

    fn normalized_light(mut self) -> ExactScalar {
        if let Some(c) = self.den.as_constant() {
            let inv = c.inv().expect("denominator nonzero");
            self.num = self.num.scale(&inv);
            self.den = Poly::one();
            return self;
        }
        let (den, lc) = self.den.monic();
        let lc_inv = lc.inv().expect("leading coefficient nonzero");
        ExactScalar { num: self.num.scale(&lc_inv), den }
    }

    pub fn inv(&self) -> Result<ExactScalar, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::ZeroInverse);
        }
        Ok(ExactScalar {
            num: self.den.clone(),
            den: self.num.clone(),
        }
        .normalized_light())
    }

    pub fn pow(&self, exp: i64) -> Result<ExactScalar, ScalarError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = ExactScalar::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &GaussianRational) -> ExactScalar {
        ExactScalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .normalized_light()
    }

    /// Formal partial derivative (quotient rule).
    pub fn partial_derivative(&self, v: &Var) -> ExactScalar {
        let dn = self.num.partial_derivative(v);
        if self.den.is_one() {
            return ExactScalar::from_poly(dn);
        }
        let dd = self.den.partial_derivative(v);
        if dd.is_zero() {
            return ExactScalar { num: dn, den: self.den.clone() }.normalized();
        }
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        ExactScalar { num, den }.normalized()
    }

    /// Exact evaluation at a point.
    pub fn eval(&self, point: &BTreeMap<Var, GaussianRational>) -> Result<GaussianRational, ScalarError> {
        let den = self.den.eval(point)?;
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        let num = self.num.eval(point)?;
        Ok(&num / &den)
    }

    pub fn bar_swapped(&self) -> ExactScalar {
        ExactScalar {
            num: self.num.bar_swapped(),
            den: self.den.bar_swapped(),
        }
        .normalized_light()
    }

    pub fn variables(&self) -> impl Iterator<Item = &Var> {
        self.num.variables().chain(self.den.variables())
    }

    pub fn max_chart_index(&self) -> u32 {
        self.num.max_chart_index().max(self.den.max_chart_index())
    }
}

impl From<Poly> for ExactScalar {
    fn from(p: Poly) -> Self {
        ExactScalar::from_poly(p)
    }
}

/// Equality by cross-multiplication: `a/b == c/d  ⟺  a*d - c*b == 0`.
impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ExactScalar {}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return ExactScalar {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .normalized();
        }
        // Try to reuse one denominator as the common one.
        if let Some(q) = exact_divide(&self.den, &rhs.den) {
            return ExactScalar {
                num: &self.num + &(&rhs.num * &q),
                den: self.den.clone(),
            }
            .normalized();
        }
        if let Some(q) = exact_divide(&rhs.den, &self.den) {
            return ExactScalar {
                num: &(&self.num * &q) + &rhs.num,
                den: rhs.den.clone(),
            }
            .normalized();
        }
        ExactScalar {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
        .normalized()
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        // Cross-cancel before multiplying to keep degrees down.
        let (a_num, b_den) = match exact_divide(&self.num, &rhs.den) {
            Some(q) => (q, Poly::one()),
            None => (self.num.clone(), rhs.den.clone()),
        };
        let (b_num, a_den) = match exact_divide(&rhs.num, &self.den) {
            Some(q) => (q, Poly::one()),
            None => (rhs.num.clone(), self.den.clone()),
        };
        ExactScalar {
            num: &a_num * &b_num,
            den: &a_den * &b_den,
        }
        .normalized()
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `(quotient, remainder)` of `num` under the divisor, as scalars.
pub fn scalar_reduce(p: &ExactScalar, d: &Poly) -> (ExactScalar, ExactScalar) {
    let (q, r) = reduce_single_divisor(p.numerator(), d);
    let den = ExactScalar::from_poly(p.denominator().clone());
    (
        &ExactScalar::from_poly(q) / &den,
        &ExactScalar::from_poly(r) / &den,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Var;

    fn z() -> Poly {
        Poly::var(Var::hol(1))
    }

    fn zb() -> Poly {
        Poly::var(Var::anti(1))
    }

    #[test]
    fn equality_is_cross_multiplied() {
        // a/b == (a*c)/(b*c) without any GCD
        let a = ExactScalar::new(z(), &zb() + &Poly::one()).unwrap();
        let c = &(&z() * &zb()) + &Poly::from_int(3);
        let scaled = ExactScalar::new(&z() * &c, &(&zb() + &Poly::one()) * &c).unwrap();
        assert_eq!(a, scaled);
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dzb ( 1/(1 - z zb) ) = z/(1 - z zb)^2, checked by cross-multiplication
        let one_minus = &Poly::one() - &(&z() * &zb());
        let s = ExactScalar::new(Poly::one(), one_minus.clone()).unwrap();
        let d = s.partial_derivative(&Var::anti(1));
        let expect = ExactScalar::new(z(), &one_minus * &one_minus).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn eval_cases() {
        let psi = ExactScalar::from_poly(&(&z() * &zb()) - &Poly::one());
        let mut point = BTreeMap::new();
        point.insert(Var::hol(1), GaussianRational::from_int(1));
        point.insert(Var::anti(1), GaussianRational::from_int(1));
        assert_eq!(psi.eval(&point).unwrap(), GaussianRational::zero());

        // zb/(z*zb) at z=2, zb=1/2 -> 1/2
        let s = ExactScalar::new(zb(), &z() * &zb()).unwrap();
        let mut point = BTreeMap::new();
        point.insert(Var::hol(1), GaussianRational::from_int(2));
        point.insert(Var::anti(1), GaussianRational::from_ratio(1, 2));
        assert_eq!(s.eval(&point).unwrap(), GaussianRational::from_ratio(1, 2));

        // 1/(z + zb) at z=i, zb=-i -> pole
        let s = ExactScalar::new(Poly::one(), &z() + &zb()).unwrap();
        let mut point = BTreeMap::new();
        point.insert(Var::hol(1), GaussianRational::i());
        point.insert(Var::anti(1), -GaussianRational::i());
        assert_eq!(s.eval(&point).unwrap_err(), ScalarError::DenominatorVanishes);
    }

    #[test]
    fn opportunistic_cancellation() {
        // psi^2 / psi becomes a polynomial
        let psi = &(&z() * &zb()) - &Poly::one();
        let s = ExactScalar::new(&psi * &psi, psi.clone()).unwrap();
        assert!(s.is_polynomial());
        assert_eq!(s.numerator(), &psi);
        // psi / psi^3 becomes 1/psi^2 (denominator collapse the other way)
        let s = ExactScalar::new(psi.clone(), psi.pow(3)).unwrap();
        assert_eq!(s, ExactScalar::new(Poly::one(), psi.pow(2)).unwrap());
    }

    #[test]
    fn inverse_and_pow() {
        let s = ExactScalar::new(&z() + &Poly::one(), zb()).unwrap();
        let inv = s.inv().unwrap();
        assert!((&s * &inv).is_one());
        assert_eq!(s.pow(-2).unwrap(), &inv * &inv);
        assert_eq!(ExactScalar::zero().inv().unwrap_err(), ScalarError::ZeroInverse);
    }
}
