use gcnet::bounds::{rmax_upper_alpha2, rmax_upper_ez, BoundReport};
use gcnet::gf::{grassmannian, FieldSpec, MatrixGF, Subspace};
use gcnet::qcombinatorics::{
    count_matrices_of_rank, gamma_exact, gaussian_binomial, gaussian_bounds, log2_big,
};
use gcnet::NetworkParams;
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn matrix(q: u64, rows: usize, cols: usize, entries: &[u32]) -> MatrixGF {
    let f = FieldSpec::new(q).unwrap();
    let v = entries
        .iter()
        .take(rows * cols)
        .map(|&e| e % q as u32)
        .collect();
    MatrixGF::from_vec(&f, rows, cols, v).unwrap()
}

fn space() -> impl Strategy<Value = (u64, usize, Vec<u32>, Vec<u32>)> {
    (
        prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]),
        1usize..6,
    )
        .prop_flat_map(|(q, n)| {
            (
                Just(q),
                Just(n),
                prop::collection::vec(any::<u32>(), n * n),
                prop::collection::vec(any::<u32>(), n * n),
            )
        })
}

proptest! {
    #[test]
    fn dual_is_an_involution((q, n, a, _b) in space(), rows in 0usize..6) {
        let rows = rows.min(n);
        let u = Subspace::from_rows(&matrix(q, rows, n, &a));
        prop_assert_eq!(u.dim() + u.dual().dim(), n);
        prop_assert_eq!(u.dual().dual(), u);
    }

    #[test]
    fn modular_law((q, n, a, b) in space(), ra in 0usize..6, rb in 0usize..6) {
        let u = Subspace::from_rows(&matrix(q, ra.min(n), n, &a));
        let v = Subspace::from_rows(&matrix(q, rb.min(n), n, &b));
        let sum = u.sum(&v).unwrap();
        let meet = u.intersection(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(meet.is_subspace_of(&u).unwrap() && meet.is_subspace_of(&v).unwrap());
        prop_assert!(u.is_subspace_of(&sum).unwrap() && v.is_subspace_of(&sum).unwrap());
    }

    #[test]
    fn row_operations_keep_the_canonical_basis((q, n, a, b) in space(), rows in 1usize..6) {
        let rows = rows.min(n);
        let m = matrix(q, rows, n, &a);
        let g = matrix(q, rows, rows, &b);
        prop_assume!(g.rank() == rows);
        let mixed = g.mul(&m).unwrap();
        prop_assert_eq!(Subspace::from_rows(&mixed), Subspace::from_rows(&m));
        let rref = m.rref();
        prop_assert_eq!(rref.matrix.rref().matrix, rref.matrix);
    }

    #[test]
    fn gaussian_sandwich(n in 0u64..14, k in 0u64..14, q in prop::sample::select(vec![2u64, 3, 4, 5, 7])) {
        prop_assume!(k <= n);
        let g = gaussian_binomial(n, k, q);
        let b = gaussian_bounds(n, k, q);
        prop_assert!(b.lower <= g);
        // [n k]_q * 25 < 87 q^{k(n-k)}
        let gamma = gamma_exact();
        let lhs = BigInt::from(g.clone()) * gamma.denom();
        let rhs = BigInt::from(b.lower.clone()) * gamma.numer();
        prop_assert!(lhs < rhs);
        prop_assert_eq!(gaussian_binomial(n, n - k, q), g.clone());
        if k >= 1 && n >= 1 {
            let pascal = gaussian_binomial(n - 1, k - 1, q)
                + BigUint::from(q).pow(k as u32) * gaussian_binomial(n - 1, k, q);
            prop_assert_eq!(pascal, g);
        }
    }

    #[test]
    fn matrices_partition_by_rank(m in 0u64..5, n in 0u64..5, q in prop::sample::select(vec![2u64, 3, 4])) {
        let total: BigUint = (0..=m.min(n)).map(|s| count_matrices_of_rank(m, n, s, q)).sum();
        prop_assert_eq!(total, BigUint::from(q).pow((m * n) as u32));
    }

    #[test]
    fn counting_bounds_below_their_approximations(
        alpha in 2u64..6, ell in 1u64..4, eps in 0u64..4, extra in 1u64..12,
        q in prop::sample::select(vec![2u64, 3, 4]), t in 1u64..4,
    ) {
        let h = (ell + eps + extra).min(alpha * ell + eps);
        prop_assume!(h > ell + eps);
        let p = NetworkParams::new(h, alpha + 1, alpha, ell, eps).unwrap();
        for r in [rmax_upper_ez(&p, q, t), rmax_upper_alpha2(&p, q, t)] {
            check_report(&r)?;
            if r.valid {
                prop_assert!(r.value_log2 <= r.approx_log2.unwrap() + 1e-9, "{:?}", r);
            }
        }
    }
}

fn check_report(r: &BoundReport) -> Result<(), TestCaseError> {
    if let Some(v) = &r.value_exact {
        let l = log2_big(v);
        prop_assert!((l - r.value_log2).abs() <= 1e-9 * l.abs().max(1.0));
    }
    Ok(())
}

#[test]
fn enumeration_matches_gaussian_binomial() {
    for q in [2u64, 3, 4] {
        let f = FieldSpec::new(q).unwrap();
        for n in 0..=5usize {
            for k in 0..=n {
                if q == 4 && n == 5 && (k == 2 || k == 3) {
                    // 11253 subspaces each; covered by the other sizes
                    continue;
                }
                let all: Vec<Subspace> = grassmannian(&f, n, k).collect();
                assert_eq!(
                    BigUint::from(all.len()),
                    gaussian_binomial(n as u64, k as u64, q),
                    "q={q} n={n} k={k}"
                );
                let mut sorted = all.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), all.len());
                assert!(all.iter().all(|u| u.dim() == k));
            }
        }
    }
}
