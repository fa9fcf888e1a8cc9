//! Chart coordinates and the global variable namespace.
//!
//! A chart has `dim` holomorphic coordinates `z1..z<dim>` with conjugates
//! `zb1..zb<dim>`. Auxiliary symbols (shift-algebra generators `t0, t1, ...`,
//! covector slots, adjoined roots) live in the same namespace so that one
//! polynomial ring serves the whole engine.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// A variable of the global polynomial ring.
///
/// Ordering is total and fixed once and for all: holomorphic coordinates by
/// index, then antiholomorphic by index, then auxiliary names in shortlex
/// order. The monomial order (graded lex) is built on top of this, so every
/// normal form in the engine is reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// Holomorphic coordinate `z<k>`, 1-based.
    Hol(u32),
    /// Antiholomorphic coordinate `zb<k>`, 1-based.
    Anti(u32),
    /// Auxiliary symbol (e.g. `t0`, `chi`, covector slots).
    Aux(Arc<str>),
}

impl Var {
    pub fn hol(k: u32) -> Var {
        Var::Hol(k)
    }

    pub fn anti(k: u32) -> Var {
        Var::Anti(k)
    }

    pub fn aux(name: &str) -> Var {
        Var::Aux(Arc::from(name))
    }

    /// Interpret an identifier: `z<digits>` and `zb<digits>` are chart
    /// coordinates, anything else is an auxiliary symbol.
    pub fn from_name(name: &str) -> Var {
        if let Some(rest) = name.strip_prefix("zb") {
            if let Ok(k) = rest.parse::<u32>() {
                if k > 0 {
                    return Var::Anti(k);
                }
            }
        }
        if let Some(rest) = name.strip_prefix('z') {
            if let Ok(k) = rest.parse::<u32>() {
                if k > 0 {
                    return Var::Hol(k);
                }
            }
        }
        Var::aux(name)
    }

    pub fn is_chart(&self) -> bool {
        matches!(self, Var::Hol(_) | Var::Anti(_))
    }

    /// Swap `z<k>` with `zb<k>`; auxiliary symbols are fixed.
    pub fn bar_swapped(&self) -> Var {
        match self {
            Var::Hol(k) => Var::Anti(*k),
            Var::Anti(k) => Var::Hol(*k),
            aux => aux.clone(),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Var::Hol(_) => 0,
            Var::Anti(_) => 1,
            Var::Aux(_) => 2,
        }
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Var::Hol(a), Var::Hol(b)) | (Var::Anti(a), Var::Anti(b)) => a.cmp(b),
            // Shortlex keeps t2 < t10.
            (Var::Aux(a), Var::Aux(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Hol(k) => write!(f, "z{k}"),
            Var::Anti(k) => write!(f, "zb{k}"),
            Var::Aux(name) => write!(f, "{name}"),
        }
    }
}

/// Handle for a coordinate chart: `dim` holomorphic directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chart {
    dim: usize,
}

impl Chart {
    pub fn new(dim: usize) -> Chart {
        assert!(dim >= 1, "chart must have at least one coordinate");
        Chart { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hol_vars(&self) -> Vec<Var> {
        (1..=self.dim as u32).map(Var::Hol).collect()
    }

    pub fn anti_vars(&self) -> Vec<Var> {
        (1..=self.dim as u32).map(Var::Anti).collect()
    }

    /// All chart directions, holomorphic first. This is the row/column order
    /// used by frame matrices and covectors.
    pub fn all_vars(&self) -> Vec<Var> {
        let mut v = self.hol_vars();
        v.extend(self.anti_vars());
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order_is_hol_anti_aux() {
        assert!(Var::hol(1) < Var::hol(2));
        assert!(Var::hol(2) < Var::anti(1));
        assert!(Var::anti(3) < Var::aux("t0"));
        assert!(Var::aux("t2") < Var::aux("t10"));
        assert!(Var::aux("t9") < Var::aux("chi"));
    }

    #[test]
    fn from_name_round_trips() {
        assert_eq!(Var::from_name("z2"), Var::Hol(2));
        assert_eq!(Var::from_name("zb11"), Var::Anti(11));
        assert_eq!(Var::from_name("t0"), Var::aux("t0"));
        assert_eq!(Var::from_name("z0"), Var::aux("z0"));
        assert_eq!(Var::from_name("zb2").to_string(), "zb2");
    }
}
