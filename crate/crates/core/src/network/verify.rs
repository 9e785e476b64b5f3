use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{NetworkError, NetworkParams, NetworkSolution};
use crate::gf::{FieldElement, MatrixGF};

/// Largest number of receivers [`verify_solution`] will enumerate.
pub const SUBSET_GUARD: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub valid: bool,
    /// Lexicographically first receiver (0-based middle-node indices) whose
    /// middle nodes do not reach rank `(h - eps) t`.
    pub first_failure: Option<Vec<usize>>,
    pub receivers_checked: u64,
}

/// `C(r, alpha)` as a `u64`, or `TooManySubsets` beyond `guard`.
pub fn receiver_count(params: &NetworkParams, guard: u64) -> Result<u64, NetworkError> {
    let n = params.receivers();
    match n.to_u64() {
        Some(v) if v <= guard => Ok(v),
        _ => Err(NetworkError::TooManySubsets { count: n, guard }),
    }
}

fn stack(sol: &NetworkSolution, subset: &[usize]) -> Result<MatrixGF, NetworkError> {
    let a = sol.matrices();
    let cols = a[subset[0]].cols();
    Ok(MatrixGF::vstack(
        sol.field(),
        cols,
        subset.iter().map(|&i| &a[i]),
    )?)
}

fn subset_ok(sol: &NetworkSolution, subset: &[usize], need: usize) -> Result<bool, NetworkError> {
    Ok(stack(sol, subset)?.rank() >= need)
}

/// Checks the rank condition at every receiver.
///
/// Receivers are split by their smallest middle node and checked in
/// parallel; the reported failure is still the lexicographically first one.
pub fn verify_solution(
    params: &NetworkParams,
    sol: &NetworkSolution,
) -> Result<Verification, NetworkError> {
    sol.check_against(params)?;
    let total = receiver_count(params, SUBSET_GUARD)?;
    let r = params.r as usize;
    let alpha = params.alpha as usize;
    let need = params.required_rank(sol.t()) as usize;

    let failure = (0..=r - alpha)
        .into_par_iter()
        .map(|first| -> Result<Option<Vec<usize>>, NetworkError> {
            for rest in (first + 1..r).combinations(alpha - 1) {
                let mut subset = Vec::with_capacity(alpha);
                subset.push(first);
                subset.extend(rest);
                if !subset_ok(sol, &subset, need)? {
                    return Ok(Some(subset));
                }
            }
            Ok(None)
        })
        .find_map_first(|res| match res {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()?
        .flatten();

    Ok(Verification {
        valid: failure.is_none(),
        first_failure: failure,
        receivers_checked: total,
    })
}

/// Sequential early-exit check, cheaper than [`verify_solution`] when most
/// candidates fail quickly.
pub(crate) fn is_valid_sequential(
    params: &NetworkParams,
    sol: &NetworkSolution,
) -> Result<bool, NetworkError> {
    sol.check_against(params)?;
    receiver_count(params, SUBSET_GUARD)?;
    let need = params.required_rank(sol.t()) as usize;
    for subset in (0..params.r as usize).combinations(params.alpha as usize) {
        if !subset_ok(sol, &subset, need)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedily appends standard basis vectors until the stack has full column
/// rank or `eps t` rows are used, then zero-pads to `eps t` rows.
fn greedy_direct_links(
    params: &NetworkParams,
    sol: &NetworkSolution,
    subset: &[usize],
) -> Result<MatrixGF, NetworkError> {
    let f = sol.field();
    let ht = (params.h * sol.t()) as usize;
    let et = (params.eps * sol.t()) as usize;
    let mut current = stack(sol, subset)?;
    let mut rank = current.rank();
    let mut b = MatrixGF::zeros(f, et, ht);
    let mut used = 0;
    for j in 0..ht {
        if rank == ht || used == et {
            break;
        }
        let mut e = MatrixGF::zeros(f, 1, ht);
        e.set(0, j, 1);
        let trial = MatrixGF::vstack(f, ht, [&current, &e])?;
        let tr = trial.rank();
        if tr > rank {
            b.set(used, j, 1);
            used += 1;
            current = trial;
            rank = tr;
        }
    }
    Ok(b)
}

/// Direct-link coefficients `B` (`eps t x h t`) for one receiver, chosen so
/// that the receiver's full system has rank `h t`.
pub fn complete_direct_links(
    params: &NetworkParams,
    sol: &NetworkSolution,
    subset: &[usize],
) -> Result<MatrixGF, NetworkError> {
    sol.check_against(params)?;
    check_subset(params, subset)?;
    let need = params.required_rank(sol.t()) as usize;
    if !subset_ok(sol, subset, need)? {
        return Err(NetworkError::RankConditionUnmet(subset.to_vec()));
    }
    greedy_direct_links(params, sol, subset)
}

fn check_subset(params: &NetworkParams, subset: &[usize]) -> Result<(), NetworkError> {
    let ok = subset.len() as u64 == params.alpha
        && subset.windows(2).all(|w| w[0] < w[1])
        && subset.iter().all(|&i| (i as u64) < params.r);
    if ok {
        Ok(())
    } else {
        Err(NetworkError::InvalidParams(format!(
            "{subset:?} is not an increasing {}-subset of 0..{}",
            params.alpha, params.r
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceiverOutcome {
    pub subset: Vec<usize>,
    /// Everything the receiver sees: middle-node symbols, then direct links.
    pub y: Vec<FieldElement>,
    /// Some solution of the receiver's system.
    pub decoded: Vec<FieldElement>,
    /// Whether the receiver's system pins down the message.
    pub unique: bool,
}

impl ReceiverOutcome {
    pub fn recovered(&self, x: &[FieldElement]) -> bool {
        self.unique && self.decoded == x
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulation {
    pub outcomes: Vec<ReceiverOutcome>,
    /// `true` when only a seeded sample of receivers was simulated.
    pub sampled: bool,
}

impl Simulation {
    pub fn all_recovered(&self, x: &[FieldElement]) -> bool {
        self.outcomes.iter().all(|o| o.recovered(x))
    }
}

/// Sends `x` (length `h t`) through the network and decodes at each receiver.
///
/// With at most `max_receivers` receivers all of them are simulated in
/// lexicographic order; otherwise `max_receivers` receivers are drawn with a
/// ChaCha8 generator seeded by `seed`.
pub fn simulate(
    params: &NetworkParams,
    sol: &NetworkSolution,
    x: &[FieldElement],
    seed: u64,
    max_receivers: u64,
) -> Result<Simulation, NetworkError> {
    sol.check_against(params)?;
    let f = sol.field();
    let ht = (params.h * sol.t()) as usize;
    if x.len() != ht || x.iter().any(|&v| !f.contains(v)) {
        return Err(NetworkError::ShapeMismatch(format!(
            "message must be {ht} elements of {f}"
        )));
    }
    let r = params.r as usize;
    let alpha = params.alpha as usize;
    let exhaustive = params.receivers() <= BigUint::from(max_receivers);
    let subsets: Vec<Vec<usize>> = if exhaustive {
        (0..r).combinations(alpha).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..max_receivers)
            .map(|_| sample(&mut rng, r, alpha).into_iter().sorted().collect())
            .collect()
    };
    let outcomes = subsets
        .into_par_iter()
        .map(|subset| receive(params, sol, &subset, x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Simulation {
        outcomes,
        sampled: !exhaustive,
    })
}

fn receive(
    params: &NetworkParams,
    sol: &NetworkSolution,
    subset: &[usize],
    x: &[FieldElement],
) -> Result<ReceiverOutcome, NetworkError> {
    let f = sol.field();
    let ht = (params.h * sol.t()) as usize;
    let b = greedy_direct_links(params, sol, subset)?;
    let a = stack(sol, subset)?;
    let system = MatrixGF::vstack(f, ht, [&a, &b])?;
    let y = system.mul_vec(x)?;
    let sol_x = system
        .solve(&y)
        .map_err(|_| NetworkError::DecodeFailure(subset.to_vec()))?;
    Ok(ReceiverOutcome {
        subset: subset.to_vec(),
        y,
        decoded: sol_x.x,
        unique: sol_x.unique,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    fn lines(rows: &[[u32; 2]]) -> NetworkSolution {
        let f = FieldSpec::new(2).unwrap();
        let a = rows
            .iter()
            .map(|r| MatrixGF::from_vec(&f, 1, 2, r.to_vec()).unwrap())
            .collect();
        NetworkSolution::new(&f, 1, a).unwrap()
    }

    #[test]
    fn three_lines_are_valid() {
        let p = NetworkParams::new(2, 3, 2, 1, 0).unwrap();
        let v = verify_solution(&p, &lines(&[[1, 0], [0, 1], [1, 1]])).unwrap();
        assert!(v.valid);
        assert_eq!(v.receivers_checked, 3);
    }

    #[test]
    fn repeated_line_fails_first_in_order() {
        let p = NetworkParams::new(2, 4, 2, 1, 0).unwrap();
        let v = verify_solution(&p, &lines(&[[1, 0], [0, 1], [1, 1], [0, 1]])).unwrap();
        assert!(!v.valid);
        assert_eq!(v.first_failure, Some(vec![1, 3]));
    }

    #[test]
    fn zero_matrix_reported() {
        let p = NetworkParams::new(2, 3, 2, 1, 0).unwrap();
        let v = verify_solution(&p, &lines(&[[1, 0], [0, 0], [1, 1]])).unwrap();
        assert_eq!(v.first_failure, Some(vec![0, 1]));
    }

    #[test]
    fn direct_link_completion() {
        let p = NetworkParams::new(2, 2, 2, 1, 1).unwrap();
        let sol = lines(&[[1, 0], [1, 0]]);
        let b = complete_direct_links(&p, &sol, &[0, 1]).unwrap();
        assert_eq!(b.as_slice(), &[0, 1]);

        let full = lines(&[[1, 0], [0, 1]]);
        let b = complete_direct_links(&p, &full, &[0, 1]).unwrap();
        assert_eq!((b.rows(), b.cols()), (1, 2));
        assert!(b.is_zero());

        let p0 = NetworkParams::new(2, 2, 2, 1, 0).unwrap();
        let b = complete_direct_links(&p0, &full, &[0, 1]).unwrap();
        assert_eq!((b.rows(), b.cols()), (0, 2));

        let bad = lines(&[[0, 0], [0, 0]]);
        assert!(matches!(
            complete_direct_links(&p, &bad, &[0, 1]),
            Err(NetworkError::RankConditionUnmet(_))
        ));
    }

    #[test]
    fn simulation_round_trip() {
        let p = NetworkParams::new(2, 3, 2, 1, 0).unwrap();
        let sol = lines(&[[1, 0], [0, 1], [1, 1]]);
        for x in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            let sim = simulate(&p, &sol, &x, 0, 100).unwrap();
            assert!(!sim.sampled);
            assert_eq!(sim.outcomes.len(), 3);
            assert!(sim.all_recovered(&x));
            if x == [0, 0] {
                assert!(sim.outcomes.iter().all(|o| o.y.iter().all(|&v| v == 0)));
            }
        }
    }

    #[test]
    fn invalid_solution_decodes_ambiguously() {
        let p = NetworkParams::new(2, 3, 2, 1, 0).unwrap();
        let sol = lines(&[[1, 0], [1, 0], [1, 1]]);
        let sim = simulate(&p, &sol, &[1, 1], 0, 100).unwrap();
        assert!(sim.outcomes.iter().any(|o| !o.unique));
    }

    #[test]
    fn sampling_is_seeded() {
        let p = NetworkParams::new(2, 3, 2, 1, 0).unwrap();
        let sol = lines(&[[1, 0], [0, 1], [1, 1]]);
        let a = simulate(&p, &sol, &[1, 0], 7, 2).unwrap();
        let b = simulate(&p, &sol, &[1, 0], 7, 2).unwrap();
        assert!(a.sampled);
        assert_eq!(a, b);
    }
}
