use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ConstructError;
use crate::bounds::DerivedConstants;
use crate::gf::{FieldSpec, MatrixGF};
use crate::network::verify::is_valid_sequential;
use crate::network::{receiver_count, NetworkParams, NetworkSolution, SUBSET_GUARD};
use crate::qcombinatorics::{binomial, log2_big, log2_gamma};

/// The local-lemma condition `e p d <= 1` for a random `(q, t)` solution.
#[derive(Debug, Clone, PartialEq)]
pub struct LllFeasibility {
    pub feasible: bool,
    /// `log2` of the bound `2 γ q^{-f(t)}` on the failure probability of one
    /// receiver.
    pub p_bound_log2: f64,
    /// `alpha C(r-1, alpha-1)`, the union-bound count of dependent receivers.
    pub d_bound: BigUint,
    pub epd_log2: f64,
    /// `C(r, alpha) - C(r-alpha, alpha)`, receivers sharing a middle node with
    /// a fixed one (itself included).
    pub d_exact: BigUint,
    pub epd_exact_log2: f64,
    pub feasible_exact: bool,
}

pub fn lll_feasible(params: &NetworkParams, q: u64, t: u64) -> LllFeasibility {
    let c = DerivedConstants::new(params);
    let p_bound_log2 = 1.0 + log2_gamma() - c.f(t) as f64 * (q as f64).log2();
    let (r, alpha) = (params.r, params.alpha);
    let d_bound = binomial(r - 1, alpha - 1) * alpha;
    let d_exact = binomial(r, alpha) - binomial(r - alpha, alpha);
    let log2_e = std::f64::consts::E.log2();
    let epd_log2 = log2_e + p_bound_log2 + log2_big(&d_bound);
    let epd_exact_log2 = log2_e + p_bound_log2 + log2_big(&d_exact);
    LllFeasibility {
        feasible: epd_log2 <= 0.0,
        p_bound_log2,
        d_bound,
        epd_log2,
        d_exact,
        epd_exact_log2,
        feasible_exact: epd_exact_log2 <= 0.0,
    }
}

#[derive(Debug, Clone)]
pub struct RandomizedOutcome {
    pub solution: NetworkSolution,
    /// 1-based index of the accepted sample.
    pub attempts: u64,
}

/// Draws every `A_i` uniformly at random until the sample is a solution.
///
/// Each attempt resamples all matrices; the generator is ChaCha8 seeded with
/// `seed`, so the outcome is reproducible.
pub fn randomized_solution(
    params: &NetworkParams,
    q: u64,
    t: u64,
    max_attempts: u64,
    seed: u64,
) -> Result<RandomizedOutcome, ConstructError> {
    params.validate()?;
    receiver_count(params, SUBSET_GUARD)?;
    if t == 0 {
        return Err(ConstructError::ParamViolation("t must be positive".into()));
    }
    let f = FieldSpec::new(q)?;
    let (rows, cols) = ((params.ell * t) as usize, (params.h * t) as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let a = (0..params.r)
            .map(|_| MatrixGF::random(&f, rows, cols, &mut rng))
            .collect();
        let sol = NetworkSolution::new(&f, t, a)?;
        if is_valid_sequential(params, &sol)? {
            return Ok(RandomizedOutcome {
                solution: sol,
                attempts: attempt,
            });
        }
    }
    Err(ConstructError::Exhausted(max_attempts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::verify_solution;

    #[test]
    fn three_lines_found() {
        let p = NetworkParams::new(2, 3, 2, 1, 0).unwrap();
        let out = randomized_solution(&p, 2, 1, 1000, 1).unwrap();
        assert!(verify_solution(&p, &out.solution).unwrap().valid);
        let again = randomized_solution(&p, 2, 1, 1000, 1).unwrap();
        assert_eq!(out.attempts, again.attempts);
        assert_eq!(out.solution, again.solution);
    }

    #[test]
    fn four_lines_impossible() {
        let p = NetworkParams::new(2, 4, 2, 1, 0).unwrap();
        assert!(matches!(
            randomized_solution(&p, 2, 1, 300, 0),
            Err(ConstructError::Exhausted(300))
        ));
    }

    #[test]
    fn trivial_network_is_easy() {
        let p = NetworkParams::new(2, 5, 2, 1, 1).unwrap();
        assert!(randomized_solution(&p, 3, 1, 50, 0).is_ok());
    }

    #[test]
    fn exact_dependency_count_is_smaller() {
        for r in 3..30 {
            let p = NetworkParams::new(4, r, 3, 2, 1).unwrap();
            let l = lll_feasible(&p, 5, 2);
            assert!(l.d_exact <= l.d_bound);
            assert!(l.epd_exact_log2 <= l.epd_log2);
        }
        let huge = NetworkParams::new(4, 1 << 40, 3, 2, 1).unwrap();
        assert!(!lll_feasible(&huge, 2, 1).feasible);
    }
}
