//! Maximum-weight subgraph selection from ordinal preference data.
//!
//! Agents sit on the nodes of a complete graph with hidden non-negative
//! symmetric edge weights. Each agent reports a strict ranking of the other
//! agents, consistent with the hidden weights. The `greedy` module selects a
//! feasible edge set using only those rankings, where feasibility is an
//! attachment set combined with a per-node degree cap `b` and a component
//! size cap `c` (the `constraints` module). The `oracles` module holds exact
//! full-information solvers and the binary-weight reduction used to stress
//! the approximation guarantees, and `instances` generates the adversarial
//! families on which those guarantees are tight.

pub mod constraints;
pub mod graph;
pub mod greedy;
pub mod instances;
pub mod oracles;

mod error;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Exact rational scalar used for all weights and ratios.
pub type Rat = num_rational::BigRational;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Shorthand for building an exact rational from small integers.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// An approximation ratio `opt / sol` under the conventions used throughout:
/// `0/0` counts as 1 (nothing was achievable, nothing was lost) and
/// `x/0` with `x > 0` is unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatioValue {
    Finite(Rat),
    Infinite,
}

impl RatioValue {
    pub fn is_infinite(&self) -> bool {
        matches!(self, RatioValue::Infinite)
    }

    /// True when this ratio is `<=` the given finite bound.
    pub fn within(&self, bound: &Rat) -> bool {
        match self {
            RatioValue::Finite(r) => r <= bound,
            RatioValue::Infinite => false,
        }
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            RatioValue::Finite(r) => Some(r),
            RatioValue::Infinite => None,
        }
    }
}

impl std::fmt::Display for RatioValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RatioValue::Finite(r) => write!(f, "{}", r),
            RatioValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Ratio of optimum weight to solution weight with the 0/0 and x/0 conventions.
pub fn ratio_of(opt: &Rat, sol: &Rat) -> RatioValue {
    if sol.is_zero() {
        if opt.is_zero() {
            RatioValue::Finite(Rat::one())
        } else {
            RatioValue::Infinite
        }
    } else {
        RatioValue::Finite(opt / sol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_conventions() {
        assert_eq!(ratio_of(&rat(0, 1), &rat(0, 1)), RatioValue::Finite(rat(1, 1)));
        assert_eq!(ratio_of(&rat(3, 1), &rat(0, 1)), RatioValue::Infinite);
        assert_eq!(ratio_of(&rat(3, 1), &rat(2, 1)), RatioValue::Finite(rat(3, 2)));
        assert!(ratio_of(&rat(3, 1), &rat(2, 1)).within(&rat(2, 1)));
        assert!(!ratio_of(&rat(5, 1), &rat(2, 1)).within(&rat(2, 1)));
        assert!(!RatioValue::Infinite.within(&rat(100, 1)));
    }
}
