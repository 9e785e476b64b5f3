//! The three-layer generalized combination network and its linear solutions.
//!
//! A source holds `h` messages and feeds `r` middle nodes over `ell` parallel
//! links each. One receiver sits on every `alpha`-subset of middle nodes and
//! additionally gets `eps` direct links from the source.

mod solution;
pub(crate) mod verify;

pub use solution::{NetworkSolution, SolutionFile};
pub use verify::{
    complete_direct_links, receiver_count, simulate, verify_solution, ReceiverOutcome, Simulation,
    Verification, SUBSET_GUARD,
};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::GfError;
use crate::qcombinatorics::binomial;

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("invalid network parameters: {0}")]
    InvalidParams(String),
    #[error("solution does not match the network: {0}")]
    ShapeMismatch(String),
    #[error("{count} receivers exceed the enumeration guard of {guard}")]
    TooManySubsets { count: BigUint, guard: u64 },
    #[error("receiver {0:?} does not satisfy the rank condition")]
    RankConditionUnmet(Vec<usize>),
    #[error("receiver {0:?} could not decode a valid solution")]
    DecodeFailure(Vec<usize>),
    #[error(transparent)]
    Gf(#[from] GfError),
}

/// `(h, r, alpha, ell, eps)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NetworkParams {
    pub h: u64,
    pub r: u64,
    pub alpha: u64,
    pub ell: u64,
    pub eps: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolvabilityClass {
    TriviallySolvable,
    NonTrivial,
    Unsolvable,
}

impl NetworkParams {
    pub fn new(h: u64, r: u64, alpha: u64, ell: u64, eps: u64) -> Result<Self, NetworkError> {
        let p = NetworkParams {
            h,
            r,
            alpha,
            ell,
            eps,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), NetworkError> {
        let fail = |m: &str| Err(NetworkError::InvalidParams(m.to_string()));
        if self.alpha < 2 {
            return fail("alpha must be at least 2");
        }
        if self.ell < 1 {
            return fail("ell must be at least 1");
        }
        if self.h < 1 {
            return fail("h must be at least 1");
        }
        if self.r < self.alpha {
            return fail("r must be at least alpha");
        }
        Ok(())
    }

    /// `alpha * ell + eps`, the min-cut of every receiver.
    pub fn min_cut(&self) -> u64 {
        self.alpha * self.ell + self.eps
    }

    pub fn classify(&self) -> SolvabilityClass {
        if self.h <= self.ell + self.eps {
            SolvabilityClass::TriviallySolvable
        } else if self.h > self.min_cut() {
            SolvabilityClass::Unsolvable
        } else {
            SolvabilityClass::NonTrivial
        }
    }

    pub fn is_nontrivial(&self) -> bool {
        self.classify() == SolvabilityClass::NonTrivial
    }

    pub fn is_minimal(&self) -> bool {
        self.h == self.min_cut()
    }

    /// Number of receivers, `C(r, alpha)`.
    pub fn receivers(&self) -> BigUint {
        binomial(self.r, self.alpha)
    }

    /// Rank every receiver needs from its middle nodes, `(h - eps) t`.
    pub fn required_rank(&self, t: u64) -> u64 {
        self.h.saturating_sub(self.eps) * t
    }
}

pub fn classify(params: &NetworkParams) -> SolvabilityClass {
    params.classify()
}
