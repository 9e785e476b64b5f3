//! Builders for covering Grassmannian codes and for network solutions.

mod covering;
mod mrd;
mod oracle;
mod random;

pub use covering::{
    check_covering, covering_code_mrd_dual, covering_to_solution, mrd_dual_codewords,
    network_code_params, DEFAULT_CODE_CAP,
};
pub use mrd::{gabidulin_mrd, lift, MrdCode};
pub use oracle::{oracle_max_code, oracle_max_code_within, OracleResult, DEFAULT_ORACLE_CAP};
pub use random::{lll_feasible, randomized_solution, LllFeasibility, RandomizedOutcome};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldSpec, GfError, MatrixGF, Subspace};
use crate::network::NetworkError;

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("parameter violation: {0}")]
    ParamViolation(String),
    #[error("rank distance {d} exceeds the smaller matrix side {max}")]
    InvalidDistance { d: usize, max: usize },
    #[error("code has {size} codewords, above the cap of {cap}")]
    SizeGuard { size: BigUint, cap: u64 },
    #[error("code has {have} codewords but {need} are needed")]
    NotEnoughCodewords { have: u64, need: u64 },
    #[error("no valid solution after {0} attempts")]
    Exhausted(u64),
    #[error("Grassmannian has {size} elements, above the oracle cap of {cap}")]
    TooLarge { size: BigUint, cap: u64 },
    #[error("search stopped after {nodes} nodes with best size {best} and bound {bound}")]
    SearchBudget { nodes: u64, best: u64, bound: u64 },
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

/// `(n, k, delta, alpha, q)`: `k`-subspaces of `F_q^n` where any `alpha`
/// codewords span at least `k + delta` dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoveringCodeParams {
    pub n: u64,
    pub k: u64,
    pub delta: u64,
    pub alpha: u64,
    pub q: u64,
}

impl CoveringCodeParams {
    pub fn new(n: u64, k: u64, delta: u64, alpha: u64, q: u64) -> Result<Self, ConstructError> {
        let p = CoveringCodeParams {
            n,
            k,
            delta,
            alpha,
            q,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ConstructError> {
        let fail = |m: String| Err(ConstructError::ParamViolation(m));
        if self.k < 1 || self.delta < 1 {
            return fail("k and delta must be positive".into());
        }
        if self.k + self.delta > self.n {
            return fail(format!(
                "k + delta = {} exceeds n = {}",
                self.k + self.delta,
                self.n
            ));
        }
        if self.alpha < 2 {
            return fail("alpha must be at least 2".into());
        }
        if self.k + self.delta > self.alpha * self.k {
            return fail("alpha codewords cannot span k + delta dimensions".into());
        }
        FieldSpec::new(self.q)?;
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec::new(self.q).expect("validated field order")
    }
}

/// A multiset of `k`-subspaces, kept sorted by the canonical subspace order
/// with explicit multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringCode {
    params: CoveringCodeParams,
    entries: Vec<(Subspace, u64)>,
}

impl CoveringCode {
    /// Collects codewords, merging repeats into multiplicities.
    pub fn from_multiset<I>(params: CoveringCodeParams, words: I) -> Result<Self, ConstructError>
    where
        I: IntoIterator<Item = (Subspace, u64)>,
    {
        let mut entries: Vec<(Subspace, u64)> = Vec::new();
        for (w, m) in words {
            if w.dim() as u64 != params.k || w.ambient_dim() as u64 != params.n {
                return Err(ConstructError::ParamViolation(format!(
                    "codeword of dimension {} in F^{}, expected {} in F^{}",
                    w.dim(),
                    w.ambient_dim(),
                    params.k,
                    params.n
                )));
            }
            if m > 0 {
                entries.push((w, m));
            }
        }
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Subspace, u64)> = Vec::with_capacity(entries.len());
        for (w, m) in entries {
            match merged.last_mut() {
                Some((last, lm)) if *last == w => *lm += m,
                _ => merged.push((w, m)),
            }
        }
        Ok(CoveringCode {
            params,
            entries: merged,
        })
    }

    pub fn params(&self) -> &CoveringCodeParams {
        &self.params
    }

    /// Distinct codewords with their multiplicities.
    pub fn entries(&self) -> &[(Subspace, u64)] {
        &self.entries
    }

    /// Size counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// Codewords with repeats spelled out, in canonical order.
    pub fn expanded(&self) -> impl Iterator<Item = &Subspace> + '_ {
        self.entries
            .iter()
            .flat_map(|(w, m)| std::iter::repeat_n(w, *m as usize))
    }

    pub fn to_file(&self) -> CoveringCodeFile {
        CoveringCodeFile {
            n: self.params.n,
            k: self.params.k,
            delta: self.params.delta,
            alpha: self.params.alpha,
            q: self.params.q,
            codewords: self
                .entries
                .iter()
                .map(|(w, m)| CodewordEntry {
                    basis: w.basis().as_slice().to_vec(),
                    multiplicity: *m,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodewordEntry {
    /// Row-major `k x n` RREF basis.
    pub basis: Vec<u32>,
    pub multiplicity: u64,
}

/// On-disk form of a covering code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringCodeFile {
    pub n: u64,
    pub k: u64,
    pub delta: u64,
    pub alpha: u64,
    pub q: u64,
    pub codewords: Vec<CodewordEntry>,
}

impl CoveringCodeFile {
    pub fn into_code(self) -> Result<CoveringCode, ConstructError> {
        let params = CoveringCodeParams::new(self.n, self.k, self.delta, self.alpha, self.q)?;
        let f = params.field();
        let words = self
            .codewords
            .into_iter()
            .map(|e| {
                let m = MatrixGF::from_vec(&f, params.k as usize, params.n as usize, e.basis)?;
                Ok((Subspace::from_rows(&m), e.multiplicity))
            })
            .collect::<Result<Vec<_>, ConstructError>>()?;
        CoveringCode::from_multiset(params, words)
    }
}
