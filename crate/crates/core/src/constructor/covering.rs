use itertools::Itertools;
use num_bigint::BigUint;

use super::{gabidulin_mrd, lift, ConstructError, CoveringCode, CoveringCodeParams};
use crate::gf::{MatrixGF, Subspace};
use crate::network::{NetworkParams, NetworkSolution};

/// Largest number of distinct codewords [`covering_code_mrd_dual`] will
/// materialize.
pub const DEFAULT_CODE_CAP: u64 = 1 << 16;

fn check_mrd_dual(p: &CoveringCodeParams) -> Result<(), ConstructError> {
    p.validate()?;
    if p.delta > p.k {
        return Err(ConstructError::ParamViolation(format!(
            "delta = {} exceeds k = {}",
            p.delta, p.k
        )));
    }
    Ok(())
}

/// Distinct codewords of the dual-lifted MRD code, generated lazily.
///
/// With `m = n - k`, every codeword `C` of an MRD code of `m x k` matrices
/// with rank distance `delta` is lifted to `[I_m | C]` and replaced by the
/// dual of that lifting, a `k`-subspace.
pub fn mrd_dual_codewords(
    p: &CoveringCodeParams,
) -> Result<(BigUint, impl Iterator<Item = Subspace>), ConstructError> {
    check_mrd_dual(p)?;
    let f = p.field();
    let m = (p.n - p.k) as usize;
    let code = gabidulin_mrd(&f, m, p.k as usize, p.delta as usize)?;
    let size = code.size();
    let count = code.size_u64().ok_or_else(|| ConstructError::SizeGuard {
        size: size.clone(),
        cap: u64::MAX,
    })?;
    Ok((
        size,
        (0..count).map(move |i| lift(&code.codeword(i)).dual()),
    ))
}

/// The multiset union of `alpha - 1` copies of the dual-lifted MRD code.
///
/// Fails with `SizeGuard` when the code has more than `cap` distinct
/// codewords; [`mrd_dual_codewords`] still streams them.
pub fn covering_code_mrd_dual(
    p: &CoveringCodeParams,
    cap: u64,
) -> Result<CoveringCode, ConstructError> {
    let (size, words) = mrd_dual_codewords(p)?;
    if size > BigUint::from(cap) {
        return Err(ConstructError::SizeGuard { size, cap });
    }
    CoveringCode::from_multiset(*p, words.map(|w| (w, p.alpha - 1)))
}

/// First `alpha`-subset of the expanded codeword list (positions in
/// [`CoveringCode::expanded`] order) spanning fewer than `k + delta`
/// dimensions, or `None` if the code is a valid covering code.
pub fn check_covering(code: &CoveringCode) -> Result<Option<Vec<usize>>, ConstructError> {
    let p = code.params();
    let words: Vec<&Subspace> = code.expanded().collect();
    let need = (p.k + p.delta) as usize;
    let f = p.field();
    for subset in (0..words.len()).combinations(p.alpha as usize) {
        let stacked = MatrixGF::vstack(&f, p.n as usize, subset.iter().map(|&i| words[i].basis()))?;
        if stacked.rank() < need {
            return Ok(Some(subset));
        }
    }
    Ok(None)
}

/// Covering-code parameters equivalent to a `(q, t)`-linear solution of the
/// network: `(h t, ell t, (h - ell - eps) t, alpha, q)`.
pub fn network_code_params(
    params: &NetworkParams,
    q: u64,
    t: u64,
) -> Result<CoveringCodeParams, ConstructError> {
    if !params.is_nontrivial() {
        return Err(ConstructError::ParamViolation(format!(
            "network is {:?}, not non-trivially solvable",
            params.classify()
        )));
    }
    let delta = (params.h - params.ell - params.eps) * t;
    CoveringCodeParams::new(params.h * t, params.ell * t, delta, params.alpha, q)
}

/// Uses the first `r` codewords (expanded order) as the coding matrices.
pub fn covering_to_solution(
    params: &NetworkParams,
    q: u64,
    t: u64,
    code: &CoveringCode,
) -> Result<NetworkSolution, ConstructError> {
    let want = network_code_params(params, q, t)?;
    if *code.params() != want {
        return Err(ConstructError::ParamViolation(format!(
            "code parameters {:?} do not match the network's {:?}",
            code.params(),
            want
        )));
    }
    if code.len() < params.r {
        return Err(ConstructError::NotEnoughCodewords {
            have: code.len(),
            need: params.r,
        });
    }
    let a = code
        .expanded()
        .take(params.r as usize)
        .map(|w| w.basis().clone())
        .collect();
    Ok(NetworkSolution::new(&want.field(), t, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::verify_solution;

    #[test]
    fn two_lines_in_the_plane() {
        let p = CoveringCodeParams::new(2, 1, 1, 2, 2).unwrap();
        let code = covering_code_mrd_dual(&p, DEFAULT_CODE_CAP).unwrap();
        assert_eq!(code.len(), 2);
        assert_eq!(code.distinct(), 2);
        assert_eq!(check_covering(&code).unwrap(), None);
    }

    #[test]
    fn four_two_one_alpha_three() {
        let p = CoveringCodeParams::new(4, 2, 1, 3, 2).unwrap();
        let code = covering_code_mrd_dual(&p, DEFAULT_CODE_CAP).unwrap();
        assert_eq!(code.len(), 32);
        assert_eq!(code.distinct(), 16);
        assert!(code.entries().iter().all(|e| e.1 == 2));
        assert_eq!(check_covering(&code).unwrap(), None);
    }

    #[test]
    fn lifted_codewords_meet_in_small_dimension() {
        // distinct lifted MRD codewords intersect in at most m - delta dims
        let f = crate::gf::FieldSpec::new(2).unwrap();
        let code = gabidulin_mrd(&f, 2, 2, 1).unwrap();
        let lifted: Vec<_> = code.iter().map(|c| lift(&c)).collect();
        for i in 0..lifted.len() {
            for j in i + 1..lifted.len() {
                assert!(lifted[i].intersection_dim(&lifted[j]).unwrap() <= 1);
            }
        }
    }

    #[test]
    fn size_guard() {
        let p = CoveringCodeParams::new(6, 3, 1, 2, 2).unwrap();
        assert!(matches!(
            covering_code_mrd_dual(&p, 10),
            Err(ConstructError::SizeGuard { .. })
        ));
        let (size, words) = mrd_dual_codewords(&p).unwrap();
        assert_eq!(size, BigUint::from(512u32));
        assert_eq!(words.take(3).count(), 3);
    }

    #[test]
    fn rejects_delta_above_k() {
        let p = CoveringCodeParams::new(4, 1, 2, 3, 2).unwrap();
        assert!(covering_code_mrd_dual(&p, DEFAULT_CODE_CAP).is_err());
    }

    #[test]
    fn solution_from_code() {
        let net = NetworkParams::new(2, 2, 2, 1, 0).unwrap();
        let p = network_code_params(&net, 2, 1).unwrap();
        let code = covering_code_mrd_dual(&p, DEFAULT_CODE_CAP).unwrap();
        let sol = covering_to_solution(&net, 2, 1, &code).unwrap();
        assert!(verify_solution(&net, &sol).unwrap().valid);

        let too_many = NetworkParams::new(2, 3, 2, 1, 0).unwrap();
        assert!(matches!(
            covering_to_solution(&too_many, 2, 1, &code),
            Err(ConstructError::NotEnoughCodewords { .. })
        ));
        let other = NetworkParams::new(3, 2, 2, 1, 1).unwrap();
        assert!(matches!(
            covering_to_solution(&other, 2, 1, &code),
            Err(ConstructError::ParamViolation(_))
        ));
    }
}
