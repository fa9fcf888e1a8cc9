//! Finite-order differential operators on a chart, with exact rational
//! coefficients, in the normal form "coefficients to the left of
//! derivatives":
//!
//! ```text
//!     A = Σ_α  a_α(z, z̄) ∂^α
//! ```
//!
//! The derivative multi-index α reuses [`Monomial`] over the chart
//! variables, so multi-index bookkeeping (ordering, products, sub-indices)
//! comes from the polynomial engine. All rewriting happens in [`DiffOp::compose`],
//! which restores the normal form with the generalized Leibniz rule.

mod formal;
mod json;
mod symbol;

pub use formal::{verify_equal_power_roots, FormalOp};
pub use json::{formal_op_from_json, formal_op_to_json, FormalOpComponentJson, OpTermJson};
pub use symbol::{differential, nested_commutator, polarized_principal_symbol, Covector, PolarizedSymbol};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::BigRational;
use thiserror::Error;

use crate::chart::{Chart, Var};
use crate::scalar::{ExactScalar, GaussianRational, Monomial, Poly};
use crate::series::FormalFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error("operators live on different charts")]
    ChartMismatch,
    #[error("operator is not invertible: zeroth ν-component is not multiplication by a nonzero scalar")]
    NotInvertible,
    #[error("operator order {order} exceeds the requested symbol degree {degree}")]
    OrderExceedsDegree { order: usize, degree: usize },
    #[error("expected a pure vector field (first order, no multiplication part)")]
    NotVectorField,
    #[error("mismatched zeroth components or non-unit leading scalar")]
    PreconditionViolated,
    #[error("truncation order {have} is smaller than required {need}")]
    TruncationTooSmall { have: usize, need: usize },
}

/// A finite-order differential operator with coefficients left of the
/// derivatives. Immutable after construction; all operations are pure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOp {
    chart: Chart,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl DiffOp {
    pub fn zero(chart: Chart) -> DiffOp {
        DiffOp { chart, terms: BTreeMap::new() }
    }

    pub fn identity(chart: Chart) -> DiffOp {
        DiffOp::multiplication(chart, ExactScalar::one())
    }

    /// The operator of multiplication by `s`.
    pub fn multiplication(chart: Chart, s: ExactScalar) -> DiffOp {
        let mut terms = BTreeMap::new();
        if !s.is_zero() {
            terms.insert(Monomial::one(), s);
        }
        DiffOp { chart, terms }
    }

    /// The partial derivative ∂ in the direction of a chart variable.
    pub fn derivative(chart: Chart, v: Var) -> DiffOp {
        assert!(v.is_chart(), "derivatives only in chart directions");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), ExactScalar::one());
        DiffOp { chart, terms }
    }

    pub fn from_terms(
        chart: Chart,
        terms: impl IntoIterator<Item = (Monomial, ExactScalar)>,
    ) -> DiffOp {
        let mut op = DiffOp::zero(chart);
        for (m, c) in terms {
            op.add_term(m, c);
        }
        op
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max total derivative degree.
    pub fn order(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.total_degree() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn coefficient(&self, idx: &Monomial) -> ExactScalar {
        self.terms.get(idx).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: ExactScalar) {
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

    /// `Some(s)` iff this is the multiplication operator by `s` (order 0).
    pub fn as_multiplication(&self) -> Option<ExactScalar> {
        if self.terms.is_empty() {
            return Some(ExactScalar::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::one()) {
                return Some(c.clone());
            }
        }
        None
    }

    /// True for Σ a_v ∂_v with no multiplication part.
    pub fn is_vector_field(&self) -> bool {
        !self.terms.is_empty()
            && self
                .terms
                .keys()
                .all(|m| m.total_degree() == 1)
    }

    /// Applying to the constant 1 returns the zero-index coefficient.
    pub fn apply_to_one(&self) -> ExactScalar {
        self.coefficient(&Monomial::one())
    }

    /// Exact Leibniz evaluation on a scalar.
    pub fn apply_scalar(&self, f: &ExactScalar) -> ExactScalar {
        let mut table = DerivTable::new(f.clone());
        let mut acc = ExactScalar::zero();
        for (idx, coeff) in &self.terms {
            let d = table.get(idx);
            acc = &acc + &(coeff * &d);
        }
        acc
    }

    /// Componentwise application to a formal function (ν-linear).
    pub fn apply_func(&self, f: &FormalFunc) -> FormalFunc {
        FormalFunc::from_components(
            f.components().iter().map(|c| self.apply_scalar(c)).collect(),
        )
    }

    /// Left multiplication by a scalar: `(s·) ∘ A`.
    pub fn left_mul_scalar(&self, s: &ExactScalar) -> DiffOp {
        if s.is_zero() {
            return DiffOp::zero(self.chart);
        }
        let mut out = DiffOp::zero(self.chart);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), s * c);
        }
        out
    }

    pub fn scale_constant(&self, c: &GaussianRational) -> DiffOp {
        self.left_mul_scalar(&ExactScalar::from_constant(c.clone()))
    }

    /// Coefficientwise derivative ∂_v(A) = [∂_v, A] + ... i.e. the operator
    /// whose coefficients are the v-derivatives of this one's.
    pub fn coefficient_derivative(&self, v: &Var) -> DiffOp {
        let mut out = DiffOp::zero(self.chart);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.partial_derivative(v));
        }
        out
    }

    /// Operator composition with the normal form restored:
    /// `∂^α ∘ (b ∂^β) = Σ_{γ ≤ α} C(α,γ) ∂^γ(b) ∂^{α−γ+β}`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp, OpError> {
        if self.chart != other.chart {
            return Err(OpError::ChartMismatch);
        }
        let mut out = DiffOp::zero(self.chart);
        for (beta, b) in &other.terms {
            let mut table = DerivTable::new(b.clone());
            for (alpha, a) in &self.terms {
                for (gamma, binom) in sub_indices(alpha) {
                    let db = table.get(&gamma);
                    if db.is_zero() {
                        continue;
                    }
                    let key = gamma.quotient_into(alpha).mul(beta);
                    let coeff = &(a * &db)
                        .scale(&GaussianRational::new(binom, BigRational::from_integer(0.into())));
                    out.add_term(key, coeff.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp, OpError> {
        Ok(&self.compose(other)? - &other.compose(self)?)
    }

    /// Swap holomorphic and antiholomorphic roles everywhere.
    pub fn bar_swapped(&self) -> DiffOp {
        let mut out = DiffOp::zero(self.chart);
        for (m, c) in &self.terms {
            out.add_term(m.bar_swapped(), c.bar_swapped());
        }
        out
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        assert_eq!(self.chart, rhs.chart, "chart mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self + &(-rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            chart: self.chart,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for DiffOp {
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
            if m.is_one() {
                write!(f, "({c})")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            let mut first_var = true;
            for (v, e) in m.vars() {
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                if e == 1 {
                    write!(f, "∂{v}")?;
                } else {
                    write!(f, "∂{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Memoized iterated partial derivatives of one scalar.
struct DerivTable {
    memo: BTreeMap<Monomial, ExactScalar>,
}

impl DerivTable {
    fn new(base: ExactScalar) -> DerivTable {
        let mut memo = BTreeMap::new();
        memo.insert(Monomial::one(), base);
        DerivTable { memo }
    }

    fn get(&mut self, idx: &Monomial) -> ExactScalar {
        if let Some(hit) = self.memo.get(idx) {
            return hit.clone();
        }
        // Peel one derivative off the first variable present.
        let (v, _) = idx.vars().next().expect("nonempty index");
        let v = v.clone();
        let lower = Monomial::var(v.clone()).quotient_into(idx);
        let below = self.get(&lower);
        let value = below.partial_derivative(&v);
        self.memo.insert(idx.clone(), value.clone());
        value
    }
}

/// All γ ≤ α with the product-of-binomials coefficient C(α, γ).
pub(crate) fn sub_indices(alpha: &Monomial) -> Vec<(Monomial, BigRational)> {
    let vars: Vec<(Var, u32)> = alpha.vars().map(|(v, e)| (v.clone(), e)).collect();
    let mut out = vec![(Monomial::one(), BigRational::from_integer(1.into()))];
    for (v, e) in vars {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for (m, c) in &out {
            for k in 0..=e {
                let binom = crate::scalar::poly_binomial(e, k);
                next.push((m.mul(&Monomial::var_pow(v.clone(), k)), c * binom));
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn chart1() -> Chart {
        Chart::new(1)
    }

    fn z() -> Var {
        Var::hol(1)
    }

    fn zb() -> Var {
        Var::anti(1)
    }

    fn s(text: &str) -> ExactScalar {
        parse_scalar(text).unwrap()
    }

    #[test]
    fn apply_leibniz_step() {
        // (zb + ν ∂z) applied to z at the ν^0/ν^1 level is checked in the
        // formal tests; here the plain pieces: ∂z∂zb (z zb) = 1.
        let ch = chart1();
        let op = DiffOp::derivative(ch, z()).compose(&DiffOp::derivative(ch, zb())).unwrap();
        assert_eq!(op.apply_scalar(&s("z1*zb1")), ExactScalar::one());
        // zero operator annihilates everything
        assert_eq!(DiffOp::zero(ch).apply_scalar(&s("z1^3 + i")), ExactScalar::zero());
    }

    #[test]
    fn compose_restores_normal_form() {
        // ∂z ∘ (z·) = z ∂z + 1
        let ch = chart1();
        let dz = DiffOp::derivative(ch, z());
        let mz = DiffOp::multiplication(ch, s("z1"));
        let comp = dz.compose(&mz).unwrap();
        let mut expect = DiffOp::multiplication(ch, ExactScalar::one());
        expect.add_term(Monomial::var(z()), s("z1"));
        assert_eq!(comp, expect);
    }

    #[test]
    fn commutators() {
        let ch = chart1();
        let dz = DiffOp::derivative(ch, z());
        let mzzb = DiffOp::multiplication(ch, s("z1*zb1"));
        // [∂z, z zb ·] = zb ·
        assert_eq!(
            dz.commutator(&mzzb).unwrap(),
            DiffOp::multiplication(ch, s("zb1"))
        );
        // multiplication operators commute
        let mz = DiffOp::multiplication(ch, s("z1"));
        let mzb = DiffOp::multiplication(ch, s("zb1"));
        assert!(mz.commutator(&mzb).unwrap().is_zero());
    }

    #[test]
    fn compose_is_associative_and_apply_compatible() {
        let ch = chart1();
        let a = DiffOp::from_terms(
            ch,
            [
                (Monomial::var_pow(z(), 2), s("z1")),
                (Monomial::one(), s("zb1 + 1")),
            ],
        );
        let b = DiffOp::from_terms(
            ch,
            [
                (Monomial::var(zb()), s("z1*zb1")),
                (Monomial::var(z()), s("i")),
            ],
        );
        let c = DiffOp::from_terms(ch, [(Monomial::var(z()), s("zb1^2"))]);
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        assert_eq!(left, right);

        let f = s("z1^2*zb1 + i*z1");
        let via_compose = a.compose(&b).unwrap().apply_scalar(&f);
        let via_apply = a.apply_scalar(&b.apply_scalar(&f));
        assert_eq!(via_compose, via_apply);
    }

    #[test]
    fn order_and_multiplication_detection() {
        let ch = chart1();
        let op = DiffOp::from_terms(ch, [(Monomial::var_pow(z(), 3), s("1"))]);
        assert_eq!(op.order(), 3);
        assert!(op.as_multiplication().is_none());
        assert_eq!(
            DiffOp::multiplication(ch, s("z1")).as_multiplication(),
            Some(s("z1"))
        );
        assert!(DiffOp::derivative(ch, z()).is_vector_field());
        assert!(!DiffOp::identity(ch).is_vector_field());
    }
}
