//! Sparse multivariate polynomials under a fixed graded-lex monomial order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};

use crate::chart::Var;

use super::{GaussianRational, ScalarError};

/// A monomial: a finite map variable → positive exponent.
///
/// `Ord` is the global monomial order: graded lexicographic with respect to
/// the canonical [`Var`] order (total degree first, then the earliest
/// variable with differing exponent decides, larger exponent winning).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Monomial {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(v, e);
        }
        Monomial(m)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut m = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *m.entry(v).or_insert(0) += e;
            }
        }
        m.retain(|_, e| *e > 0);
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (&Var, u32)> {
        self.0.iter().map(|(v, e)| (v, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(out)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// `other / self`; requires `self.divides(other)`.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut out = other.0.clone();
        for (v, e) in &self.0 {
            let slot = out.get_mut(v).expect("divisibility checked");
            *slot -= e;
            if *slot == 0 {
                out.remove(v);
            }
        }
        Monomial(out)
    }

    /// Remove one power of `v`, returning the old exponent (0 if absent).
    fn step_down(&self, v: &Var) -> (u32, Monomial) {
        let e = self.exponent(v);
        if e == 0 {
            return (0, self.clone());
        }
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(v);
        } else {
            *out.get_mut(v).unwrap() -= 1;
        }
        (e, Monomial(out))
    }

    pub fn bar_swapped(&self) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|(v, e)| (v.bar_swapped(), *e))
                .collect(),
        )
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Lex on the merged, canonically ordered variable set.
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                // Remaining exponents sit on strictly later variables, so
                // the side that still has an entry on the earlier variable
                // has the larger exponent there.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse polynomial with Gaussian-rational coefficients.
///
/// Invariant: no zero coefficients are stored; the term map iterates in the
/// global monomial order (ascending, so the last entry is the leading term).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Poly {
        Poly::constant(GaussianRational::from_int(n))
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Monomial::var(v), GaussianRational::one())
    }

    pub fn term(m: Monomial, c: GaussianRational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<GaussianRational> {
        if self.terms.is_empty() {
            return Some(GaussianRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Leading term under the global monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                let sum = &*slot + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial_derivative(&self, v: &Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, lowered) = m.step_down(v);
            if e > 0 {
                out.add_term(lowered, c * &GaussianRational::from_int(e as i64));
            }
        }
        out
    }

    /// Exact evaluation; every variable of the polynomial must be assigned.
    pub fn eval(&self, point: &BTreeMap<Var, GaussianRational>) -> Result<GaussianRational, ScalarError> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.vars() {
                let val = point
                    .get(v)
                    .ok_or_else(|| ScalarError::MissingAssignment(v.clone()))?;
                term = &term * &val.pow(e);
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Evaluate with polynomial-in-the-field values (used by τ and symbol
    /// machinery, where variables stand for exact scalars).
    pub fn eval_scalar<T, F>(&self, zero: T, one: &T, lookup: F, mul: impl Fn(&T, &T) -> T, add: impl Fn(&T, &T) -> T, scale: impl Fn(&T, &GaussianRational) -> T) -> Result<T, ScalarError>
    where
        T: Clone,
        F: Fn(&Var) -> Option<T>,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut term = one.clone();
            for (v, e) in m.vars() {
                let val = lookup(v).ok_or_else(|| ScalarError::MissingAssignment(v.clone()))?;
                for _ in 0..e {
                    term = mul(&term, &val);
                }
            }
            acc = add(&acc, &scale(&term, c));
        }
        Ok(acc)
    }

    pub fn variables(&self) -> impl Iterator<Item = &Var> {
        self.terms.keys().flat_map(|m| m.vars().map(|(v, _)| v))
    }

    /// Max chart index appearing (used to infer a chart for parsed input).
    pub fn max_chart_index(&self) -> u32 {
        self.variables()
            .filter_map(|v| match v {
                Var::Hol(k) | Var::Anti(k) => Some(*k),
                Var::Aux(_) => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn bar_swapped(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.bar_swapped(), c.clone()))
                .collect(),
        }
    }

    /// Divide all coefficients by the leading coefficient.
    pub fn monic(&self) -> (Poly, GaussianRational) {
        match self.leading_term() {
            None => (Poly::zero(), GaussianRational::one()),
            Some((_, lc)) => {
                let lc = lc.clone();
                let inv = lc.inv().expect("leading coefficient nonzero");
                (self.scale(&inv), lc)
            }
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Multivariate division by a single divisor under the global monomial
/// order: returns `(q, r)` with `p = q*d + r` and no term of `r` divisible
/// by the leading monomial of `d`. A single polynomial is a Gröbner basis
/// of the principal ideal it generates, so `r` is unique and `r == 0` iff
/// `d` divides `p`.
pub fn reduce_single_divisor(p: &Poly, d: &Poly) -> (Poly, Poly) {
    let (lead_m, lead_c) = d.leading_term().expect("divisor must be nonzero");
    let lead_c_inv = lead_c.inv().expect("leading coefficient nonzero");
    let mut quotient = Poly::zero();
    let mut remainder = Poly::zero();
    let mut work = p.clone();
    while let Some((m, c)) = work.leading_term() {
        let m = m.clone();
        let c = c.clone();
        if lead_m.divides(&m) {
            let qm = lead_m.quotient_into(&m);
            let qc = &c * &lead_c_inv;
            // work -= (qc * qm) * d
            let chunk = d.mul_monomial(&qm).scale(&qc);
            work = &work - &chunk;
            quotient.add_term(qm, qc);
        } else {
            remainder.add_term(m.clone(), c.clone());
            work.terms.remove(&m);
        }
    }
    (quotient, remainder)
}

/// `Some(q)` iff `d` divides `p` exactly.
pub fn exact_divide(p: &Poly, d: &Poly) -> Option<Poly> {
    let (q, r) = reduce_single_divisor(p, d);
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

impl fmt::Display for Poly {
    /// Canonical printing: terms in descending monomial order; the output
    /// round-trips through the expression parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.print_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                // Bare coefficient.
                if mag.is_real() || mag.re().is_zero() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else if mag.is_real() || mag.re().is_zero() {
                write!(f, "{mag}*{m}")?;
            } else {
                write!(f, "({mag})*{m}")?;
            }
        }
        Ok(())
    }
}

/// Helper for binomial coefficients in Leibniz expansions.
pub(crate) fn binomial(n: u32, k: u32) -> BigRational {
    if k > n {
        return BigRational::from_integer(BigInt::from(0));
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    BigRational::new(num, den)
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
    fn difference_of_squares() {
        let p = &(&z() + &zb()) * &(&z() - &zb());
        let expect = &(&z() * &z()) - &(&zb() * &zb());
        assert_eq!(p, expect);
    }

    #[test]
    fn square_expansion() {
        // (z*zb - 1)^2 = z^2*zb^2 - 2*z*zb + 1
        let psi = &(&z() * &zb()) - &Poly::one();
        let sq = &psi * &psi;
        let mut expect = Poly::zero();
        expect.add_term(
            Monomial::from_pairs([(Var::hol(1), 2), (Var::anti(1), 2)]),
            GaussianRational::one(),
        );
        expect.add_term(
            Monomial::from_pairs([(Var::hol(1), 1), (Var::anti(1), 1)]),
            GaussianRational::from_int(-2),
        );
        expect.add_term(Monomial::one(), GaussianRational::one());
        assert_eq!(sq, expect);
    }

    #[test]
    fn imaginary_unit_multiplies() {
        let i = Poly::constant(GaussianRational::i());
        assert_eq!(&i * &i, Poly::from_int(-1));
    }

    #[test]
    fn derivative_basic() {
        // d/dz (z^2 zb) = 2 z zb;  d/dz zb = 0
        let p = &(&z() * &z()) * &zb();
        let dz = p.partial_derivative(&Var::hol(1));
        let expect = (&z() * &zb()).scale(&GaussianRational::from_int(2));
        assert_eq!(dz, expect);
        assert_eq!(zb().partial_derivative(&Var::hol(1)), Poly::zero());
    }

    #[test]
    fn mixed_partials_commute() {
        let p = {
            let zz = &z() * &z();
            let t = &zz * &zb();
            &t + &(&z() * &zb())
        };
        let a = p.partial_derivative(&Var::hol(1)).partial_derivative(&Var::anti(1));
        let b = p.partial_derivative(&Var::anti(1)).partial_derivative(&Var::hol(1));
        assert_eq!(a, b);
    }

    #[test]
    fn reduce_examples() {
        let psi = &(&z() * &zb()) - &Poly::one();
        // (z*zb - 1)^2 reduces to (psi, 0)
        let (q, r) = reduce_single_divisor(&(&psi * &psi), &psi);
        assert_eq!(q, psi);
        assert!(r.is_zero());
        // z is below the leading term of psi
        let (q, r) = reduce_single_divisor(&z(), &psi);
        assert!(q.is_zero());
        assert_eq!(r, z());
        // z*zb = 1*(z*zb - 1) + 1
        let (q, r) = reduce_single_divisor(&(&z() * &zb()), &psi);
        assert_eq!(q, Poly::one());
        assert_eq!(r, Poly::one());
    }

    #[test]
    fn reduce_reconstructs() {
        // p = q*d + r exactly for a few structured cases.
        let d = &(&z() * &zb()) - &Poly::from_int(2);
        let p = {
            let t = &(&z() * &z()) * &zb();
            &t + &(&zb() + &Poly::from_int(5))
        };
        let (q, r) = reduce_single_divisor(&p, &d);
        let back = &(&q * &d) + &r;
        assert_eq!(back, p);
    }

    #[test]
    fn graded_lex_order() {
        let m_z2 = Monomial::var_pow(Var::hol(1), 2);
        let m_zzb = Monomial::from_pairs([(Var::hol(1), 1), (Var::anti(1), 1)]);
        let m_zb2 = Monomial::var_pow(Var::anti(1), 2);
        let m_z = Monomial::var(Var::hol(1));
        assert!(m_z2 > m_zzb);
        assert!(m_zzb > m_zb2);
        assert!(m_zb2 > m_z);
        assert!(m_z > Monomial::one());
    }

    #[test]
    fn display_round_shape() {
        let p = {
            let t = (&z() * &zb()).scale(&GaussianRational::from_int(-2));
            &(&(&z() * &z()) + &t) + &Poly::one()
        };
        assert_eq!(p.to_string(), "z1^2 - 2*z1*zb1 + 1");
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), BigRational::from_integer(6.into()));
        assert_eq!(binomial(5, 0), BigRational::from_integer(1.into()));
        assert_eq!(binomial(3, 3), BigRational::from_integer(1.into()));
        assert_eq!(binomial(2, 3), BigRational::from_integer(0.into()));
    }
}
