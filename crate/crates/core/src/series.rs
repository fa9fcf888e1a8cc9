//! ν-truncated formal functions: `f = f_0 + ν f_1 + ... + ν^R f_R`.
//!
//! The truncation order is data, not a global. Binary operations clip to
//! the smaller order of the two operands, so the error budget of every
//! computation is explicit.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalFunc {
    components: Vec<ExactScalar>,
}

impl FormalFunc {
    /// Build from components; `components[r]` is the coefficient of ν^r.
    pub fn from_components(components: Vec<ExactScalar>) -> FormalFunc {
        assert!(!components.is_empty(), "need at least the ν^0 component");
        FormalFunc { components }
    }

    pub fn constant(s: ExactScalar, order: usize) -> FormalFunc {
        let mut components = vec![ExactScalar::zero(); order + 1];
        components[0] = s;
        FormalFunc { components }
    }

    pub fn zero(order: usize) -> FormalFunc {
        FormalFunc {
            components: vec![ExactScalar::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> FormalFunc {
        FormalFunc::constant(ExactScalar::one(), order)
    }

    /// Truncation order R.
    pub fn order(&self) -> usize {
        self.components.len() - 1
    }

    pub fn component(&self, r: usize) -> &ExactScalar {
        &self.components[r]
    }

    pub fn components(&self) -> &[ExactScalar] {
        &self.components
    }

    pub fn set_component(&mut self, r: usize, s: ExactScalar) {
        self.components[r] = s;
    }

    pub fn leading(&self) -> &ExactScalar {
        &self.components[0]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(ExactScalar::is_zero)
    }

    pub fn truncate(&self, order: usize) -> FormalFunc {
        let mut components: Vec<_> = self.components.iter().take(order + 1).cloned().collect();
        components.resize(order + 1, ExactScalar::zero());
        FormalFunc { components }
    }

    /// Multiply by ν^k (shifting components up, dropping overflow).
    pub fn nu_shift(&self, k: usize) -> FormalFunc {
        let order = self.order();
        let mut components = vec![ExactScalar::zero(); order + 1];
        for (r, c) in self.components.iter().enumerate() {
            if r + k <= order {
                components[r + k] = c.clone();
            }
        }
        FormalFunc { components }
    }

    pub fn scale(&self, s: &ExactScalar) -> FormalFunc {
        FormalFunc {
            components: self.components.iter().map(|c| c * s).collect(),
        }
    }

    /// Pointwise (commutative) product, truncated: Cauchy rule in ν.
    pub fn mul(&self, other: &FormalFunc) -> FormalFunc {
        let order = self.order().min(other.order());
        let mut components = vec![ExactScalar::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                let prod = &self.components[i] * &other.components[j];
                components[i + j] = &components[i + j] + &prod;
            }
        }
        FormalFunc { components }
    }

    pub fn bar_swapped(&self) -> FormalFunc {
        FormalFunc {
            components: self.components.iter().map(ExactScalar::bar_swapped).collect(),
        }
    }
}

impl From<ExactScalar> for FormalFunc {
    fn from(s: ExactScalar) -> FormalFunc {
        FormalFunc { components: vec![s] }
    }
}

impl Add for &FormalFunc {
    type Output = FormalFunc;
    fn add(self, rhs: &FormalFunc) -> FormalFunc {
        let order = self.order().min(rhs.order());
        FormalFunc {
            components: (0..=order)
                .map(|r| &self.components[r] + &rhs.components[r])
                .collect(),
        }
    }
}

impl Sub for &FormalFunc {
    type Output = FormalFunc;
    fn sub(self, rhs: &FormalFunc) -> FormalFunc {
        let order = self.order().min(rhs.order());
        FormalFunc {
            components: (0..=order)
                .map(|r| &self.components[r] - &rhs.components[r])
                .collect(),
        }
    }
}

impl Neg for &FormalFunc {
    type Output = FormalFunc;
    fn neg(self) -> FormalFunc {
        FormalFunc {
            components: self.components.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for FormalFunc {
    /// `f0 + ν*(f1) + ν^2*(f2)`, omitting zero components (but always
    /// printing the ν^0 part).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.components[0])?;
        for (r, c) in self.components.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let nu = if r == 1 { "ν".to_string() } else { format!("ν^{r}") };
            if c.is_one() {
                write!(f, " + {nu}")?;
            } else {
                write!(f, " + {nu}*({c})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Var;

    #[test]
    fn clip_to_min_order() {
        let a = FormalFunc::constant(ExactScalar::var(Var::hol(1)), 3);
        let b = FormalFunc::one(2);
        assert_eq!((&a + &b).order(), 2);
        assert_eq!(a.mul(&b).order(), 2);
    }

    #[test]
    fn cauchy_product() {
        // (1 + ν z)^2 = 1 + 2νz + ν^2 z^2
        let z = ExactScalar::var(Var::hol(1));
        let mut f = FormalFunc::one(2);
        f.set_component(1, z.clone());
        let sq = f.mul(&f);
        assert_eq!(sq.component(0), &ExactScalar::one());
        assert_eq!(sq.component(1), &z.scale(&crate::scalar::GaussianRational::from_int(2)));
        assert_eq!(sq.component(2), &(&z * &z));
    }

    #[test]
    fn display_omits_zeros() {
        let z = ExactScalar::var(Var::hol(1));
        let zb = ExactScalar::var(Var::anti(1));
        let mut f = FormalFunc::constant(&z * &zb, 2);
        f.set_component(1, ExactScalar::one());
        assert_eq!(f.to_string(), "z1*zb1 + ν");
    }
}
