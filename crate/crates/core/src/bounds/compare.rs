use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::upper::{alpha2_exponent, ez_ratio, subspace_bound_exact};
use super::{
    rmax_lower_lll, rmax_lower_mrd, rmax_upper_alpha2, rmax_upper_ez, rmax_upper_subspace,
    BoundReport, BoundSource,
};
use crate::bounds::DerivedConstants;
use crate::network::NetworkParams;
use crate::qcombinatorics::gaussian_binomial;

/// Result of comparing the upper bounds at one `(q, t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperComparison {
    /// Source of the smallest valid upper bound, if any is valid.
    pub winner: Option<BoundSource>,
    pub candidates: Vec<BoundReport>,
    /// Hypotheses under which the subspace-counting bound beats the
    /// codeword-counting bound: the small-binomial case.
    pub compare2: bool,
    /// Same conclusion, large-binomial case with `8 theta < alpha - 1`.
    pub compare: bool,
    /// Hypotheses under which the `alpha = 2` exponent is below the
    /// codeword-counting exponent.
    pub compare_alpha2: bool,
    /// Every ordering predicted by a satisfied predicate holds.
    pub consistent: bool,
}

/// Shared hypotheses of the two subspace-vs-codeword lemmas: `h >= 2 ell + eps`
/// and `2 <= alpha <= [ht - eps t - 1 choose ell t]_q + 1`.
fn common_hypotheses(p: &NetworkParams, q: u64, t: u64) -> bool {
    let (ht, lt, et) = (p.h * t, p.ell * t, p.eps * t);
    p.h >= 2 * p.ell + p.eps
        && ht > et
        && BigUint::from(p.alpha) <= gaussian_binomial(ht - et - 1, lt, q) + 1u32
}

fn compare2_holds(p: &NetworkParams, q: u64, t: u64) -> bool {
    if !common_hypotheses(p, q, t) {
        return false;
    }
    let theta = DerivedConstants::new(p).theta;
    let (lt, et) = (p.ell * t, p.eps * t);
    if gaussian_binomial(lt + et, et, q) > BigUint::from(p.alpha) || theta < 1 {
        return false;
    }
    // 2 theta alpha / (alpha - 1) <= q^{ell eps t^2}
    BigUint::from(2 * theta as u64 * p.alpha)
        <= BigUint::from(p.alpha - 1) * BigUint::from(q).pow((p.ell * p.eps * t * t) as u32)
}

fn compare_holds(p: &NetworkParams, q: u64, t: u64) -> bool {
    if !common_hypotheses(p, q, t) {
        return false;
    }
    let theta = DerivedConstants::new(p).theta;
    let (lt, et) = (p.ell * t, p.eps * t);
    gaussian_binomial(lt + et, et, q) >= BigUint::from(p.alpha)
        && p.h >= 2 * p.eps
        && 8 * theta < p.alpha as i64 - 1
}

fn compare_alpha2_holds(p: &NetworkParams, t: u64) -> bool {
    if p.alpha != 2 {
        return false;
    }
    let (h, l, e, t) = (p.h as i64, p.ell as i64, p.eps as i64, t as i64);
    let (lhs, rhs) = (e * t + 1, l * t);
    // h < l + e + 1/t and h > l + e + 1/t, scaled by t
    let below = h * t < (l + e) * t + 1;
    let above = h * t > (l + e) * t + 1;
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Less => h > 2 * l || below,
        std::cmp::Ordering::Greater => above || h < 2 * l,
        std::cmp::Ordering::Equal => h != 2 * l,
    }
}

/// `ell t (eps t + 1)`, the codeword-counting exponent.
fn ez_exponent(p: &NetworkParams, t: u64) -> i64 {
    (p.ell * t * (p.eps * t + 1)) as i64
}

/// Evaluates the upper bounds and the comparison lemmas, checking each
/// lemma's conclusion against the exact values.
pub fn compare_upper_bounds(p: &NetworkParams, q: u64, t: u64) -> UpperComparison {
    let mut candidates = vec![rmax_upper_subspace(p, q, t), rmax_upper_ez(p, q, t)];
    if p.alpha == 2 {
        candidates.push(rmax_upper_alpha2(p, q, t));
    }
    let winner = candidates
        .iter()
        .filter(|r| r.valid)
        .min_by(|a, b| a.value_log2.total_cmp(&b.value_log2))
        .map(|r| r.source);

    let compare2 = compare2_holds(p, q, t);
    let compare = compare_holds(p, q, t);
    let compare_alpha2 = compare_alpha2_holds(p, t);

    let mut consistent = true;
    if compare2 || compare {
        // U_A < U_B with U_B the unfloored ratio
        consistent &= match (subspace_bound_exact(p, q, t), ez_ratio(p, q, t)) {
            (Some(ua), Some((num, den))) => ua * den < num,
            _ => false,
        };
    }
    if compare_alpha2 {
        consistent &= alpha2_exponent(p, t) < ez_exponent(p, t);
    }

    UpperComparison {
        winner,
        candidates,
        compare2,
        compare,
        compare_alpha2,
        consistent,
    }
}

/// The bounds a summary table would pick, plus everything else that holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestBounds {
    pub upper: BoundReport,
    pub lower: BoundReport,
    /// Every individually valid bound at these parameters.
    pub all: Vec<BoundReport>,
}

impl BestBounds {
    pub fn tightest_upper(&self) -> Option<&BoundReport> {
        self.all
            .iter()
            .filter(|r| r.kind == super::BoundKind::Upper)
            .min_by(|a, b| a.value_log2.total_cmp(&b.value_log2))
    }

    pub fn tightest_lower(&self) -> Option<&BoundReport> {
        self.all
            .iter()
            .filter(|r| r.kind == super::BoundKind::Lower)
            .max_by(|a, b| a.value_log2.total_cmp(&b.value_log2))
    }
}

/// Picks the upper and lower bound by regime: codeword counting and lifted
/// MRD codes below `h = 2 ell + eps`, subspace counting and the local lemma
/// from there on. For `alpha = 2` the upper bound with the smaller exponent
/// is taken.
pub fn best_bounds(p: &NetworkParams, q: u64, t: u64) -> BestBounds {
    let low = p.h < 2 * p.ell + p.eps;
    let subspace = rmax_upper_subspace(p, q, t);
    let ez = rmax_upper_ez(p, q, t);
    let alpha2 = rmax_upper_alpha2(p, q, t);
    let lll = rmax_lower_lll(p, q, t);
    let mrd = rmax_lower_mrd(p, q, t);

    let upper = if p.alpha == 2 {
        let a2 = alpha2.approx_log2.unwrap_or(f64::INFINITY);
        let e = ez.approx_log2.unwrap_or(f64::INFINITY);
        if a2 < e {
            alpha2.clone()
        } else {
            ez.clone()
        }
    } else if low {
        ez.clone()
    } else {
        subspace.clone()
    };
    let lower = if low { mrd.clone() } else { lll.clone() };
    let all = [subspace, ez, alpha2, lll, mrd]
        .into_iter()
        .filter(|r| r.valid)
        .collect();
    BestBounds { upper, lower, all }
}
