use crate::network::NetworkParams;
use crate::qcombinatorics::log2_gamma;

/// Network-dependent quantities shared by many bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    h: i64,
    alpha: i64,
    ell: i64,
    eps: i64,
    /// `alpha - floor((h - eps) / ell) + 1`.
    pub theta: i64,
    /// `log2 ((alpha-1)! / (2 e γ alpha))^{1/(alpha-1)}`.
    pub log2_beta: f64,
}

impl DerivedConstants {
    pub fn new(p: &NetworkParams) -> Self {
        let (h, alpha, ell, eps) = (p.h as i64, p.alpha as i64, p.ell as i64, p.eps as i64);
        let log2_fact: f64 = (2..alpha).map(|i| (i as f64).log2()).sum();
        let log2_den = 1.0 + std::f64::consts::E.log2() + log2_gamma() + (alpha as f64).log2();
        DerivedConstants {
            h,
            alpha,
            ell,
            eps,
            theta: alpha - (h - eps).div_euclid(ell) + 1,
            log2_beta: (log2_fact - log2_den) / (alpha - 1) as f64,
        }
    }

    pub fn beta(&self) -> f64 {
        self.log2_beta.exp2()
    }

    /// `(alpha ell + eps - h) eps t^2 + (alpha ell + 2 eps - h) t + 1`.
    pub fn f(&self, t: u64) -> i64 {
        let t = t as i64;
        let (h, a, l, e) = (self.h, self.alpha, self.ell, self.eps);
        (a * l + e - h) * e * t * t + (a * l + 2 * e - h) * t + 1
    }

    /// `max(ell t, (h-ell) t) (min(ell t, (h-ell) t) - (h - ell - eps) t + 1)`.
    pub fn g(&self, t: u64) -> i64 {
        let t = t as i64;
        let (h, l, e) = (self.h, self.ell, self.eps);
        let (x, y) = (l * t, (h - l) * t);
        x.max(y) * (x.min(y) - (h - l - e) * t + 1)
    }
}
