use num_bigint::BigUint;
use num_integer::Integer;

use super::{notes_from, BoundKind, BoundReport, BoundSource};
use crate::bounds::DerivedConstants;
use crate::network::NetworkParams;
use crate::qcombinatorics::{gaussian_binomial, log2_gamma};

/// `log2(2^x + c)` for a small integer offset `c`.
pub(crate) fn log2_plus(x: f64, c: i64) -> f64 {
    if c == 0 {
        return x;
    }
    x + (c as f64 * (-x).exp2()).ln_1p() / std::f64::consts::LN_2
}

/// `[(eps+ell)t choose eps t]_q (theta (q^{ell t+1}-1)/(q-1) - 1) + floor((h-eps)/ell) - 1`,
/// or `None` when `theta < 1`.
pub(crate) fn subspace_bound_exact(p: &NetworkParams, q: u64, t: u64) -> Option<BigUint> {
    let c = DerivedConstants::new(p);
    if c.theta < 1 || p.h < p.eps {
        return None;
    }
    let (ell, eps) = (p.ell, p.eps);
    let geom = (BigUint::from(q).pow((ell * t + 1) as u32) - 1u32) / (q - 1);
    let inner = BigUint::from(c.theta as u64) * geom - 1u32;
    let tail = (p.h - eps) / ell;
    // tail >= 1 whenever theta is usable and h - eps >= ell
    let out = gaussian_binomial((eps + ell) * t, eps * t, q) * inner + tail;
    (out >= BigUint::from(1u32)).then(|| out - 1u32)
}

/// Upper bound on `r_max` from counting codewords in the subspaces through a
/// fixed `(h - eps) t`-dimensional space. Requires `h - eps >= 2 ell`.
pub fn rmax_upper_subspace(p: &NetworkParams, q: u64, t: u64) -> BoundReport {
    let src = BoundSource::SubspaceCounting;
    let mut failed = Vec::new();
    if p.h < p.eps + 2 * p.ell {
        failed.push("requires h - eps >= 2 ell");
    }
    if p.h > p.min_cut() {
        failed.push("network is not solvable");
    }
    let Some(exact) = subspace_bound_exact(p, q, t) else {
        return BoundReport::undefined(src, BoundKind::Upper, "theta < 1".into());
    };
    let c = DerivedConstants::new(p);
    let e = p.ell * t * (p.eps * t + 1);
    let main = log2_gamma() + (c.theta as f64).log2() + e as f64 * (q as f64).log2();
    let approx = log2_plus(main, p.alpha as i64 - c.theta);
    BoundReport::exact(
        src,
        BoundKind::Upper,
        exact,
        Some(approx),
        failed.is_empty(),
        notes_from(&failed),
    )
}

/// `2 ell t - (h - eps) t + 1`, the dimension in the `alpha = 2` bound.
fn alpha2_s(p: &NetworkParams, t: u64) -> i64 {
    (2 * p.ell * t) as i64 - ((p.h as i64 - p.eps as i64) * t as i64) + 1
}

/// Exponent `(h-ell)(2 ell+eps-h) t^2 + (h-ell) t` of the `alpha = 2` bound.
pub(crate) fn alpha2_exponent(p: &NetworkParams, t: u64) -> i64 {
    let (h, l, e, t) = (p.h as i64, p.ell as i64, p.eps as i64, t as i64);
    (h - l) * (2 * l + e - h) * t * t + (h - l) * t
}

/// Upper bound on `r_max` for `alpha = 2`: any two codewords meet in at most
/// `s - 1` dimensions, so `r [ell t choose s] <= [h t choose s]`.
pub fn rmax_upper_alpha2(p: &NetworkParams, q: u64, t: u64) -> BoundReport {
    let src = BoundSource::Alpha2Packing;
    let s = alpha2_s(p, t);
    if s < 1 || s as u64 > p.ell * t {
        return BoundReport::undefined(
            src,
            BoundKind::Upper,
            "requires 1 <= 2 ell t - (h-eps) t + 1 <= ell t".into(),
        );
    }
    let s = s as u64;
    let mut failed = Vec::new();
    if p.alpha != 2 {
        failed.push("requires alpha = 2");
    }
    let exact = gaussian_binomial(p.h * t, s, q) / gaussian_binomial(p.ell * t, s, q);
    let approx = log2_gamma() + alpha2_exponent(p, t) as f64 * (q as f64).log2();
    BoundReport::exact(
        src,
        BoundKind::Upper,
        exact,
        Some(approx),
        failed.is_empty(),
        notes_from(&failed),
    )
}

/// The ratio behind the codeword-counting bound as `(numerator, denominator)`,
/// without the floor. `None` if `eps t > (h - ell) t - 1`.
pub(crate) fn ez_ratio(p: &NetworkParams, q: u64, t: u64) -> Option<(BigUint, BigUint)> {
    let (ht, lt, et) = (p.h * t, p.ell * t, p.eps * t);
    if lt > ht || et + 1 > ht - lt {
        return None;
    }
    let num = BigUint::from(p.alpha - 1) * gaussian_binomial(ht, ht - et - 1, q);
    let den = gaussian_binomial(ht - lt, ht - lt - et - 1, q);
    Some((num, den))
}

/// Upper bound on `r_max` from counting codewords per hyperplane of the
/// `(h - eps) t`-dimensional receiver spaces.
///
/// The value is computed whenever the formula is defined; `valid` also
/// requires `1 < ell t < h t` and `alpha <= [ht-eps t-1 choose ell t]_q + 1`.
pub fn rmax_upper_ez(p: &NetworkParams, q: u64, t: u64) -> BoundReport {
    let src = BoundSource::CoveringCounting;
    let Some((num, den)) = ez_ratio(p, q, t) else {
        return BoundReport::undefined(
            src,
            BoundKind::Upper,
            "requires eps t <= (h - ell) t - 1".into(),
        );
    };
    let (ht, lt, et) = (p.h * t, p.ell * t, p.eps * t);
    let mut failed = Vec::new();
    if lt <= 1 {
        failed.push("requires ell t > 1");
    }
    if lt >= ht {
        failed.push("requires ell t < h t");
    }
    if BigUint::from(p.alpha) > gaussian_binomial(ht - et - 1, lt, q) + 1u32 {
        failed.push("alpha exceeds [ht - eps t - 1 choose ell t]_q + 1");
    }
    let exact = num.div_floor(&den);
    let approx =
        log2_gamma() + ((p.alpha - 1) as f64).log2() + (lt * (et + 1)) as f64 * (q as f64).log2();
    BoundReport::exact(
        src,
        BoundKind::Upper,
        exact,
        Some(approx),
        failed.is_empty(),
        notes_from(&failed),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(h: u64, alpha: u64, ell: u64, eps: u64) -> NetworkParams {
        NetworkParams::new(h, alpha + 5, alpha, ell, eps).unwrap()
    }

    #[test]
    fn subspace_bound_needs_room() {
        assert!(!rmax_upper_subspace(&net(3, 3, 2, 0), 2, 1).valid);
        let r = rmax_upper_subspace(&net(12, 20, 1, 2), 2, 1);
        assert!(r.valid);
        // [3 2]_2 (11 * 3 - 1) + 9 = 7 * 32 + 9
        assert_eq!(r.value_exact, Some(BigUint::from(233u32)));
    }

    #[test]
    fn subspace_bound_above_small_code() {
        // h=4, ell=1, eps=1, alpha=3 has the same exact form as a 3-(4,1,2)_2 code
        let r = rmax_upper_subspace(&net(4, 3, 1, 1), 2, 1);
        assert!(r.valid);
        assert_eq!(r.value_exact, Some(BigUint::from(3u32 * 2 + 2)));
    }

    #[test]
    fn alpha2_smallest_case() {
        let r = rmax_upper_alpha2(&net(2, 2, 1, 0), 2, 1);
        assert!(r.valid);
        assert_eq!(r.value_exact, Some(BigUint::from(3u32)));
        assert!(!rmax_upper_alpha2(&net(2, 3, 1, 0), 2, 1).valid);
    }

    #[test]
    fn alpha2_exponent_on_balanced_family() {
        for ell in 1..5u64 {
            let p = net(2 * ell + 1, 2, ell, ell);
            for t in 1..4u64 {
                let (l, t) = (ell as i64, t as i64);
                assert_eq!(
                    alpha2_exponent(&p, t as u64),
                    (l * l - 1) * t * t + (l + 1) * t
                );
            }
        }
    }

    #[test]
    fn ez_smallest_case() {
        let r = rmax_upper_ez(&net(2, 2, 1, 0), 2, 1);
        assert_eq!(r.value_exact, Some(BigUint::from(3u32)));
        // ell t = 1 is outside the stated hypotheses
        assert!(!r.valid);
        assert!(r.approx_log2.unwrap() >= r.value_log2);
    }

    #[test]
    fn ez_alpha_cap() {
        // [ht-eps t-1 choose ell t] = [3 2]_2 = 7 at h=4, ell=2, eps=0
        assert!(rmax_upper_ez(&net(4, 8, 2, 0), 2, 1).valid);
        assert!(!rmax_upper_ez(&net(4, 9, 2, 0), 2, 1).valid);
    }

    #[test]
    fn log2_plus_matches_direct() {
        assert!((log2_plus(10.0, 3) - 1027f64.log2()).abs() < 1e-12);
        assert!((log2_plus(3.0, -1) - 7f64.log2()).abs() < 1e-12);
    }
}
