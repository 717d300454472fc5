//! Winning conditions.

use crate::arena::Arena;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;
use std::fmt;

/// A winning condition for Eve. Parity-type conditions read the arena colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    Safety(VertexSet),
    Buchi(VertexSet),
    CoBuchi(VertexSet),
    Parity,
    /// `sup_k dist_k(π, F) ≤ N`
    BndUniformBuchi(VertexSet, usize),
    /// `limsup_k dist_k(π, F) ≤ N`
    UniformBuchi(VertexSet, usize),
    FinitaryBuchi(VertexSet),
    /// `sup_k dist_k(π, c) < ∞`
    BndParity,
    /// `limsup_k dist_k(π, c) < ∞`
    FinitaryParity,
    /// One counter per odd color, bounded by `N`: every request is
    /// answered within `N + 1` steps.
    CounterParity(usize),
}

/// Condition names accepted on the command line.
pub const CONDITION_NAMES: [&str; 10] = [
    "safety",
    "buchi",
    "cobuchi",
    "parity",
    "bnd-uniform-buchi",
    "uniform-buchi",
    "finitary-buchi",
    "bnd-parity",
    "finitary-parity",
    "counter-parity",
];

impl Condition {
    pub fn name(&self) -> &'static str {
        match self {
            Condition::Safety(_) => "safety",
            Condition::Buchi(_) => "buchi",
            Condition::CoBuchi(_) => "cobuchi",
            Condition::Parity => "parity",
            Condition::BndUniformBuchi(..) => "bnd-uniform-buchi",
            Condition::UniformBuchi(..) => "uniform-buchi",
            Condition::FinitaryBuchi(_) => "finitary-buchi",
            Condition::BndParity => "bnd-parity",
            Condition::FinitaryParity => "finitary-parity",
            Condition::CounterParity(_) => "counter-parity",
        }
    }

    /// Builds a condition from its name. `set` defaults to `color⁻¹(0)`.
    pub fn from_name(
        arena: &Arena,
        name: &str,
        n: Option<usize>,
        set: Option<VertexSet>,
    ) -> Result<Condition> {
        let f = set.unwrap_or_else(|| arena.buchi_set());
        let need_n = matches!(name, "bnd-uniform-buchi" | "uniform-buchi" | "counter-parity");
        if need_n && n.is_none() {
            return Err(Error::BadParams(format!("{name} needs a bound N")));
        }
        if !need_n && n.is_some() {
            return Err(Error::BadParams(format!("{name} takes no bound")));
        }
        let n = n.unwrap_or(0);
        Ok(match name {
            "safety" => Condition::Safety(f),
            "buchi" => Condition::Buchi(f),
            "cobuchi" => Condition::CoBuchi(f),
            "parity" => Condition::Parity,
            "bnd-uniform-buchi" => Condition::BndUniformBuchi(f, n),
            "uniform-buchi" => Condition::UniformBuchi(f, n),
            "finitary-buchi" => Condition::FinitaryBuchi(f),
            "bnd-parity" => Condition::BndParity,
            "finitary-parity" => Condition::FinitaryParity,
            "counter-parity" => Condition::CounterParity(n),
            other => return Err(Error::BadParams(format!("unknown condition {other}"))),
        })
    }

    /// The vertex set parameter, if any.
    pub fn set(&self) -> Option<&VertexSet> {
        match self {
            Condition::Safety(s)
            | Condition::Buchi(s)
            | Condition::CoBuchi(s)
            | Condition::BndUniformBuchi(s, _)
            | Condition::UniformBuchi(s, _)
            | Condition::FinitaryBuchi(s) => Some(s),
            _ => None,
        }
    }

    pub fn bound(&self) -> Option<usize> {
        match self {
            Condition::BndUniformBuchi(_, n)
            | Condition::UniformBuchi(_, n)
            | Condition::CounterParity(n) => Some(*n),
            _ => None,
        }
    }

    pub fn check(&self, arena: &Arena) -> Result<()> {
        if let Some(s) = self.set() {
            if s.universe() != arena.num_vertices() {
                return Err(Error::BadParams(format!(
                    "set over {} vertices, arena has {}",
                    s.universe(),
                    arena.num_vertices()
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let Some(s) = self.set() {
            write!(f, " F={s}")?;
        }
        if let Some(n) = self.bound() {
            write!(f, " N={n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::Player;

    #[test]
    fn names_round_trip() {
        let a = Arena::buchi("x", vec![Player::Eve], &[0], vec![vec![0]]).unwrap();
        for name in CONDITION_NAMES {
            let n = matches!(name, "bnd-uniform-buchi" | "uniform-buchi" | "counter-parity")
                .then_some(2);
            let c = Condition::from_name(&a, name, n, None).unwrap();
            assert_eq!(c.name(), name);
        }
        assert!(Condition::from_name(&a, "uniform-buchi", None, None).is_err());
        assert!(Condition::from_name(&a, "buchi", Some(1), None).is_err());
        assert!(Condition::from_name(&a, "nope", None, None).is_err());
    }
}
