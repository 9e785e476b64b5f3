use serde::{Deserialize, Serialize};

use crate::bounds::DerivedConstants;
use crate::gf::is_prime_power;
use crate::network::NetworkParams;
use crate::qcombinatorics::log2_gamma;

/// Searches for the smallest qualifying `t` stop here.
const T_LIMIT: u64 = 1 << 20;

/// Which pair of thresholds applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `h >= 2 ell + eps`: subspace-counting necessary condition, local
    /// lemma sufficient condition.
    High,
    /// `h < 2 ell + eps`: codeword-counting necessary condition, lifted MRD
    /// sufficient condition.
    Low,
}

impl Regime {
    pub fn of(p: &NetworkParams) -> Self {
        if p.h >= 2 * p.ell + p.eps {
            Regime::High
        } else {
            Regime::Low
        }
    }
}

/// `log2` of the numerator term in the necessary condition:
/// `log2((r + theta - alpha) / (gamma theta))` or `log2(r / (gamma (alpha-1)))`.
fn necessary_log_term(p: &NetworkParams) -> f64 {
    match Regime::of(p) {
        Regime::High => {
            let theta = DerivedConstants::new(p).theta;
            let num = p.r as f64 + (theta - p.alpha as i64) as f64;
            if num <= 0.0 || theta <= 0 {
                return f64::NEG_INFINITY;
            }
            num.log2() - log2_gamma() - (theta as f64).log2()
        }
        Regime::Low => (p.r as f64).log2() - log2_gamma() - ((p.alpha - 1) as f64).log2(),
    }
}

/// `log2` of the smallest `q^t` a `(q, t)`-linear solution can have.
pub fn necessary_qt(p: &NetworkParams, t: u64) -> f64 {
    necessary_log_term(p) / (p.ell * (p.eps * t + 1)) as f64
}

/// `log2` of a `q^t` above which a `(q, t)`-linear solution is guaranteed;
/// `+inf` when the governing exponent is not positive.
pub fn sufficient_qt(p: &NetworkParams, t: u64) -> f64 {
    let c = DerivedConstants::new(p);
    match Regime::of(p) {
        Regime::High => {
            let f = c.f(t);
            if f <= 0 {
                return f64::INFINITY;
            }
            ((p.r as f64).log2() - c.log2_beta) * (p.alpha - 1) as f64 * t as f64 / f as f64
        }
        Regime::Low => {
            let g = c.g(t);
            if g <= 0 {
                return f64::INFINITY;
            }
            ((p.r as f64).log2() - ((p.alpha - 1) as f64).log2()) * t as f64 / g as f64
        }
    }
}

/// One row of the threshold curves, values in the `log2` domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub t: u64,
    pub necessary_log2: f64,
    pub sufficient_log2: f64,
}

impl CurveRow {
    pub fn necessary(&self) -> f64 {
        self.necessary_log2.exp2()
    }

    pub fn sufficient(&self) -> f64 {
        self.sufficient_log2.exp2()
    }

    pub fn two_pow_t(&self) -> f64 {
        (self.t as f64).exp2()
    }
}

/// Necessary and sufficient thresholds on `q^t` for `t = 1..=t_max`.
pub fn figure_curves(p: &NetworkParams, t_max: u64) -> Vec<CurveRow> {
    (1..=t_max)
        .map(|t| CurveRow {
            t,
            necessary_log2: necessary_qt(p, t),
            sufficient_log2: sufficient_qt(p, t),
        })
        .collect()
}

/// Bounds on `log2 q_s - log2 q_v` together with the integers that witness
/// them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub regime: Regime,
    /// Sufficient threshold at `t = 1` minus [`GapReport::min_log2_qt`].
    pub gap_upper_bits: f64,
    /// Necessary threshold at `t = 1` minus [`GapReport::t_sufficient`];
    /// `None` when no `t` reaches the sufficient threshold with `q = 2`.
    pub gap_lower_bits: Option<f64>,
    /// Smallest `t >= 1` with `2^t` at or above the necessary threshold.
    pub t_necessary: u64,
    /// Smallest `t >= 1` with `2^t` at or above the sufficient threshold.
    pub t_sufficient: Option<u64>,
    /// Smallest `t log2 q` over prime powers `q` meeting the necessary
    /// threshold, and the pair attaining it.
    pub min_log2_qt: f64,
    pub argmin_q: u64,
    pub argmin_t: u64,
    /// Real root of `2^t = necessary threshold`; needs `eps >= 1`.
    pub t_prime: Option<f64>,
    /// Closed-form counterparts of the two gap bounds.
    pub closed_upper_bits: Option<f64>,
    pub closed_lower_bits: Option<f64>,
    pub notes: Vec<String>,
}

fn smallest_t(mut pred: impl FnMut(u64) -> bool) -> Option<u64> {
    (1..=T_LIMIT).find(|&t| pred(t))
}

/// Smallest prime power `q` with `t log2 q >= target`, if one exists with
/// `t log2 q <= ceiling`.
fn smallest_prime_power(t: u64, target: f64, ceiling: f64) -> Option<u64> {
    if target > ceiling {
        return None;
    }
    let start = ((target / t as f64).exp2().ceil() as u64)
        .saturating_sub(1)
        .max(2);
    let mut q = start;
    loop {
        let bits = t as f64 * (q as f64).log2();
        if bits > ceiling {
            return None;
        }
        if bits >= target - 1e-12 && is_prime_power(q) {
            return Some(q);
        }
        q += 1;
    }
}

/// Evaluates both gap bounds for a network.
pub fn gap_bounds(p: &NetworkParams) -> GapReport {
    let regime = Regime::of(p);
    let mut notes = Vec::new();
    if !p.is_nontrivial() {
        notes.push("network is not non-trivially solvable".to_string());
    }

    let t_nec = smallest_t(|t| t as f64 >= necessary_qt(p, t)).unwrap_or(T_LIMIT);
    let (mut best, mut arg) = (t_nec as f64, (2, t_nec));
    for t in 1..=t_nec {
        if let Some(q) = smallest_prime_power(t, necessary_qt(p, t), best) {
            let bits = t as f64 * (q as f64).log2();
            if bits < best {
                best = bits;
                arg = (q, t);
            }
        }
    }
    let suf1 = sufficient_qt(p, 1);
    let nec1 = necessary_qt(p, 1);
    let gap_upper_bits = suf1 - best;

    let t_suf = smallest_t(|t| t as f64 >= sufficient_qt(p, t));
    if t_suf.is_none() {
        notes.push("no t reaches the sufficient threshold over GF(2)".to_string());
    }
    let gap_lower_bits = t_suf.map(|t| nec1 - t as f64);

    let (ell, eps) = (p.ell as f64, p.eps as f64);
    let log_term = necessary_log_term(p);
    let t_prime = (p.eps >= 1 && log_term.is_finite())
        .then(|| (log_term / (ell * eps) + 1.0 / (4.0 * eps * eps)).sqrt() - 1.0 / (2.0 * eps));
    let closed_upper_bits = t_prime.map(|tp| suf1 - (tp - 1.0).max(1.0));

    let log_r = (p.r as f64).log2();
    let closed_lower_bits = match regime {
        _ if p.eps == 0 => None,
        Regime::High if p.is_minimal() => {
            notes.push("closed-form lower bound needs h != alpha ell + eps".to_string());
            None
        }
        Regime::High => {
            let c = DerivedConstants::new(p);
            let slack = (p.min_cut() - p.h) as f64 * eps;
            let root = ((p.alpha - 1) as f64 * (log_r - c.log2_beta) / slack).sqrt();
            Some(log_term / (ell * (eps + 1.0)) - root)
        }
        Regime::Low => {
            let l = log_r - ((p.alpha - 1) as f64).log2();
            Some((l - 2.0) / (ell * (eps + 1.0)) - (l / (ell * eps)).sqrt())
        }
    };

    GapReport {
        regime,
        gap_upper_bits,
        gap_lower_bits,
        t_necessary: t_nec,
        t_sufficient: t_suf,
        min_log2_qt: best,
        argmin_q: arg.0,
        argmin_t: arg.1,
        t_prime,
        closed_upper_bits,
        closed_lower_bits,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig(h: u64, eps: u64, alpha: u64, r: u64) -> NetworkParams {
        NetworkParams::new(h, r, alpha, 1, eps).unwrap()
    }

    #[test]
    fn threshold_anchors() {
        let p = fig(12, 2, 20, 800_000);
        assert!((necessary_qt(&p, 1).exp2() - 27.544680).abs() < 1e-5);
        assert!((necessary_qt(&p, 5).exp2() - 2.470231).abs() < 1e-5);
        assert!((sufficient_qt(&p, 1).exp2() - 910.202123).abs() < 1e-3);
        assert!((sufficient_qt(&p, 4).exp2() - 11.443355).abs() < 1e-5);
        let p = fig(8, 5, 3, 800_000);
        assert!((necessary_qt(&p, 1).exp2() - 7.826813).abs() < 1e-5);
        let p = fig(13, 5, 8, 800_000);
        assert!((sufficient_qt(&p, 1).exp2() / 4297331.400977 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn gap_anchor() {
        let g = gap_bounds(&fig(12, 2, 20, 800_000));
        assert_eq!(g.regime, Regime::High);
        assert!((g.gap_upper_bits - 6.83).abs() < 0.01);
        assert!((g.gap_lower_bits.unwrap() - 0.78).abs() < 0.01);
    }

    #[test]
    fn witnesses_are_minimal() {
        for (h, eps, alpha, r) in [
            (12, 2, 20, 800_000),
            (8, 5, 3, 800_000),
            (13, 5, 8, 8_000_000),
        ] {
            let p = fig(h, eps, alpha, r);
            let g = gap_bounds(&p);
            let ta = g.t_necessary;
            assert!(ta as f64 >= necessary_qt(&p, ta));
            assert!(ta == 1 || ((ta - 1) as f64) < necessary_qt(&p, ta - 1));
            let td = g.t_sufficient.unwrap();
            assert!(td as f64 >= sufficient_qt(&p, td));
            assert!(td == 1 || ((td - 1) as f64) < sufficient_qt(&p, td - 1));
            let tp = g.t_prime.unwrap();
            assert_eq!(ta, (tp.ceil() as u64).max(1));
            assert!(g.min_log2_qt <= ta as f64);
            assert!(is_prime_power(g.argmin_q));
        }
    }

    #[test]
    fn zero_eps_minimal_network_has_no_t() {
        // f(t) = 1 for every t, so the sufficient threshold grows linearly
        let g = gap_bounds(&NetworkParams::new(6, 1000, 3, 2, 0).unwrap());
        assert!(g.t_sufficient.is_none());
        assert!(g.gap_lower_bits.is_none());
        assert!(g.t_prime.is_none());
    }

    #[test]
    fn curves_have_exact_powers() {
        let rows = figure_curves(&fig(12, 2, 20, 800_000), 20);
        assert_eq!(rows.len(), 20);
        for r in rows {
            assert_eq!(r.two_pow_t(), (1u64 << r.t) as f64);
        }
    }
}
