use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{notes_from, BoundKind, BoundReport, BoundSource};
use crate::bounds::DerivedConstants;
use crate::constructor::ConstructError;
use crate::network::NetworkParams;

/// Exponents above this many bits are reported in the log domain only.
const MAX_EXACT_BITS: f64 = 1e6;

/// Lower bound on `r_max` from a random code and the local lemma,
/// `beta q^{f(t)/(alpha-1)}`.
pub fn rmax_lower_lll(p: &NetworkParams, q: u64, t: u64) -> BoundReport {
    let c = DerivedConstants::new(p);
    let mut failed = Vec::new();
    if p.h > p.min_cut() {
        failed.push("requires h <= alpha ell + eps");
    }
    let v = c.log2_beta + c.f(t) as f64 / (p.alpha - 1) as f64 * (q as f64).log2();
    BoundReport::log_only(
        BoundSource::LocalLemma,
        BoundKind::Lower,
        v,
        failed.is_empty(),
        notes_from(&failed),
    )
}

/// `(alpha - 1) q^e` as a report, exact when small enough.
fn copies_times_power(
    src: BoundSource,
    alpha: u64,
    q: u64,
    e: i64,
    valid: bool,
    notes: String,
) -> BoundReport {
    if e < 0 {
        return BoundReport::undefined(src, BoundKind::Lower, "negative exponent".into());
    }
    let log2 = ((alpha - 1) as f64).log2() + e as f64 * (q as f64).log2();
    if log2 > MAX_EXACT_BITS {
        return BoundReport::log_only(src, BoundKind::Lower, log2, valid, notes);
    }
    let v = BigUint::from(alpha - 1) * BigUint::from(q).pow(e as u32);
    BoundReport::exact(src, BoundKind::Lower, v, None, valid, notes)
}

/// Lower bound on `r_max` from `alpha - 1` copies of a lifted MRD code,
/// `(alpha - 1) q^{g(t)}`. Requires `h <= 2 ell + eps`.
pub fn rmax_lower_mrd(p: &NetworkParams, q: u64, t: u64) -> BoundReport {
    let mut failed = Vec::new();
    if p.h > 2 * p.ell + p.eps {
        failed.push("requires h <= 2 ell + eps");
    }
    if !p.is_nontrivial() {
        failed.push("network is not non-trivially solvable");
    }
    let g = DerivedConstants::new(p).g(t);
    copies_times_power(
        BoundSource::LiftedMrd,
        p.alpha,
        q,
        g,
        failed.is_empty(),
        notes_from(&failed),
    )
}

fn covering_exponent(n: u64, k: u64, delta: u64) -> i64 {
    let (n, k, d) = (n as i64, k as i64, delta as i64);
    k.max(n - k) * (k.min(n - k) - d + 1)
}

/// `(alpha - 1) q^{max(k,n-k)(min(k,n-k)-delta+1)}`, the size of `alpha - 1`
/// copies of a dual lifted MRD code. Requires `delta <= min(k, n - k)`.
pub fn dual_lifted_mrd_lower(n: u64, k: u64, delta: u64, alpha: u64, q: u64) -> BoundReport {
    let mut failed = Vec::new();
    if delta < 1 || delta > k || k + delta > n {
        failed.push("requires 1 <= delta <= k and k + delta <= n");
    }
    if alpha < 2 {
        failed.push("requires alpha >= 2");
    }
    let e = covering_exponent(n, k, delta);
    copies_times_power(
        BoundSource::DualLiftedMrd,
        alpha.max(2),
        q,
        e,
        failed.is_empty(),
        notes_from(&failed),
    )
}

/// The recursive covering-code bound alongside the one-shot construction it
/// starts from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringLower {
    pub recursive: BoundReport,
    pub direct: BoundReport,
}

impl CoveringLower {
    /// The larger of the two valid reports; either may win.
    pub fn best(&self) -> &BoundReport {
        match (self.recursive.valid, self.direct.valid) {
            (true, true) if self.recursive.value_log2 >= self.direct.value_log2 => &self.recursive,
            (true, false) => &self.recursive,
            _ => &self.direct,
        }
    }
}

struct Recursion {
    k: u64,
    delta: u64,
    alpha: u64,
    q: u64,
    memo: HashMap<u64, BigUint>,
}

impl Recursion {
    fn pow(&self, e: u64) -> BigUint {
        BigUint::from(self.q).pow(e as u32)
    }

    fn value(&mut self, n: u64) -> BigUint {
        if let Some(v) = self.memo.get(&n) {
            return v.clone();
        }
        let (k, d) = (self.k, self.delta);
        let copies = BigUint::from(self.alpha - 1);
        let v = if n < k {
            BigUint::ZERO
        } else if n < k + d {
            // every alpha-subset is allowed to fall short here, so alpha - 1
            // copies of any single space work
            copies
        } else if n < k + 2 * d {
            &copies * self.pow(covering_exponent(n, k, d) as u64)
        } else {
            let mut best = BigUint::ZERO;
            for t in d..=n - k - d {
                let cand = if t < k {
                    &copies * self.pow(k * (t - d + 1)) * self.value(n - t)
                } else {
                    &copies * self.pow(t * (k - d + 1)) * self.value(n - t) + self.value(t + k - d)
                };
                best = best.max(cand);
            }
            best
        };
        self.memo.insert(n, v.clone());
        v
    }
}

/// Lower bound on the size of an `alpha-(n, k, delta)_q` covering code,
/// built recursively from smaller ambient dimensions.
///
/// Needs `1 <= delta <= k`, `k + delta <= n` and `alpha >= 2`; the recursive
/// value is additionally flagged invalid when `alpha > q^k + 1`.
///
/// The recursion multiplies by `alpha - 1` at every level, so for
/// `alpha >= 3` it can overshoot the true maximum: `(3, 1, 1)` with
/// `alpha = 3` over `GF(2)` evaluates to 18, while no code has more than 14
/// codewords (each of the 7 points at most twice).
pub fn covering_lower_recursive(
    n: u64,
    k: u64,
    delta: u64,
    alpha: u64,
    q: u64,
) -> Result<CoveringLower, ConstructError> {
    if delta < 1 || delta > k || k + delta > n || alpha < 2 {
        return Err(ConstructError::ParamViolation(format!(
            "need 1 <= delta <= k, k + delta <= n and alpha >= 2, got n={n} k={k} delta={delta} alpha={alpha}"
        )));
    }
    let direct = dual_lifted_mrd_lower(n, k, delta, alpha, q);
    let cap_ok = BigUint::from(q).pow(k as u32) >= BigUint::from(alpha - 1);
    let mut failed = Vec::new();
    if !cap_ok {
        failed.push("requires alpha <= q^k + 1");
    }
    let mut rec = Recursion {
        k,
        delta,
        alpha,
        q,
        memo: HashMap::new(),
    };
    let v = rec.value(n);
    let recursive = BoundReport::exact(
        BoundSource::RecursiveCovering,
        BoundKind::Lower,
        v,
        None,
        failed.is_empty(),
        notes_from(&failed),
    );
    Ok(CoveringLower { recursive, direct })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(h: u64, alpha: u64, ell: u64, eps: u64) -> NetworkParams {
        NetworkParams::new(h, alpha + 5, alpha, ell, eps).unwrap()
    }

    #[test]
    fn lll_exponent() {
        let r = rmax_lower_lll(&net(12, 20, 1, 2), 2, 1);
        let c = DerivedConstants::new(&net(12, 20, 1, 2));
        assert!(r.valid);
        assert!((r.value_log2 - (c.log2_beta + 33.0 / 19.0)).abs() < 1e-12);
    }

    #[test]
    fn mrd_smallest_case() {
        let r = rmax_lower_mrd(&net(2, 2, 1, 0), 2, 1);
        assert!(r.valid);
        assert_eq!(r.value_exact, Some(BigUint::from(2u32)));
        assert!(!rmax_lower_mrd(&net(5, 3, 1, 2), 2, 1).valid);
    }

    #[test]
    fn recursion_small_instance() {
        let b = covering_lower_recursive(4, 1, 1, 2, 2).unwrap();
        assert_eq!(b.recursive.value_exact, Some(BigUint::from(11u32)));
        assert_eq!(b.direct.value_exact, Some(BigUint::from(8u32)));
        assert_eq!(b.best().source, BoundSource::RecursiveCovering);
    }

    #[test]
    fn recursion_base_is_direct() {
        for (n, k, d) in [(4, 2, 2), (5, 2, 2), (6, 3, 2), (7, 3, 3)] {
            let b = covering_lower_recursive(n, k, d, 3, 2).unwrap();
            assert!(n < k + 2 * d);
            assert_eq!(b.recursive.value_exact, b.direct.value_exact);
        }
    }

    #[test]
    fn alpha_cap_only_affects_recursion() {
        let b = covering_lower_recursive(4, 1, 1, 4, 2).unwrap();
        assert!(!b.recursive.valid);
        assert!(b.direct.valid);
        assert_eq!(b.best().source, BoundSource::DualLiftedMrd);
    }

    #[test]
    fn bad_covering_params() {
        assert!(covering_lower_recursive(3, 1, 2, 2, 2).is_err());
        assert!(covering_lower_recursive(3, 2, 2, 2, 2).is_err());
    }
}
