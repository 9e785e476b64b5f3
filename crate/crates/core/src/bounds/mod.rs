//! Upper and lower bounds on `r_max`, the thresholds on `q^t` derived from
//! them, and the scalar-versus-vector gap estimates.
//!
//! Bounds that are exact integers carry the integer in
//! [`BoundReport::value_exact`]; everything else lives in the `log2` domain
//! because figure-scale quantities overflow every fixed-width type.

mod compare;
mod constants;
mod gap;
mod lower;
mod upper;

pub use compare::{best_bounds, compare_upper_bounds, BestBounds, UpperComparison};
pub use constants::DerivedConstants;
pub use gap::{
    figure_curves, gap_bounds, necessary_qt, sufficient_qt, CurveRow, GapReport, Regime,
};
pub use lower::{
    covering_lower_recursive, dual_lifted_mrd_lower, rmax_lower_lll, rmax_lower_mrd, CoveringLower,
};
pub use upper::{rmax_upper_alpha2, rmax_upper_ez, rmax_upper_subspace};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::qcombinatorics::log2_big;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Upper,
    Lower,
}

/// Which argument a bound comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Counting codewords inside the `(h - eps) t`-subspaces through a fixed
    /// subspace; needs `h - eps >= 2 ell`.
    SubspaceCounting,
    /// Packing argument for `alpha = 2`.
    Alpha2Packing,
    /// Counting codewords per `(h - eps) t - 1`-subspace.
    CoveringCounting,
    /// Random coding with the local lemma.
    LocalLemma,
    /// `alpha - 1` copies of a dual lifted MRD code, in network terms.
    LiftedMrd,
    /// `alpha - 1` copies of a dual lifted MRD code, in code terms.
    DualLiftedMrd,
    /// Recursive construction of covering codes.
    RecursiveCovering,
}

impl BoundSource {
    pub fn tag(&self) -> &'static str {
        match self {
            BoundSource::SubspaceCounting => "subspace_counting",
            BoundSource::Alpha2Packing => "alpha2_packing",
            BoundSource::CoveringCounting => "covering_counting",
            BoundSource::LocalLemma => "local_lemma",
            BoundSource::LiftedMrd => "lifted_mrd",
            BoundSource::DualLiftedMrd => "dual_lifted_mrd",
            BoundSource::RecursiveCovering => "recursive_covering",
        }
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(D::Error::custom))
            .transpose()
    }
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub source: BoundSource,
    pub kind: BoundKind,
    /// `log2` of the bound; equals `log2(value_exact)` when that is present.
    pub value_log2: f64,
    /// Written as a decimal string.
    #[serde(with = "decimal")]
    pub value_exact: Option<BigUint>,
    /// `log2` of the closed γ-approximation, for bounds that have one.
    pub approx_log2: Option<f64>,
    /// Whether the hypotheses of the underlying result hold.
    pub valid: bool,
    pub notes: String,
}

impl BoundReport {
    fn exact(
        source: BoundSource,
        kind: BoundKind,
        value: BigUint,
        approx_log2: Option<f64>,
        valid: bool,
        notes: String,
    ) -> Self {
        BoundReport {
            source,
            kind,
            value_log2: log2_big(&value),
            value_exact: Some(value),
            approx_log2,
            valid,
            notes,
        }
    }

    fn log_only(
        source: BoundSource,
        kind: BoundKind,
        value_log2: f64,
        valid: bool,
        notes: String,
    ) -> Self {
        BoundReport {
            source,
            kind,
            value_log2,
            value_exact: None,
            approx_log2: None,
            valid,
            notes,
        }
    }

    /// Placeholder for a bound whose formula is undefined at these
    /// parameters.
    fn undefined(source: BoundSource, kind: BoundKind, notes: String) -> Self {
        let value_log2 = match kind {
            BoundKind::Upper => f64::INFINITY,
            BoundKind::Lower => f64::NEG_INFINITY,
        };
        BoundReport::log_only(source, kind, value_log2, false, notes)
    }
}

/// Joins the failed preconditions into a note, or `"ok"`.
fn notes_from(failed: &[&str]) -> String {
    if failed.is_empty() {
        "ok".to_string()
    } else {
        failed.join("; ")
    }
}
