use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gcnet::bounds::{best_bounds, figure_curves, gap_bounds};
use gcnet::constructor::{
    covering_code_mrd_dual, covering_to_solution, network_code_params, oracle_max_code,
    CoveringCodeParams, DEFAULT_CODE_CAP, DEFAULT_ORACLE_CAP,
};
use gcnet::gf::{FieldSpec, MatrixGF};
use gcnet::network::{verify_solution, NetworkParams};
use gcnet::qcombinatorics::gaussian_binomial;

fn gf(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for q in [2u64, 256] {
        let f = FieldSpec::new(q).unwrap();
        let m = MatrixGF::random(&f, 64, 64, &mut rng);
        c.bench_function(&format!("rank 64x64 over GF({q})"), |b| {
            b.iter(|| black_box(&m).rank())
        });
    }
    c.bench_function("gaussian binomial [200 100]_2", |b| {
        b.iter(|| gaussian_binomial(black_box(200), 100, 2))
    });
}

fn bounds(c: &mut Criterion) {
    let p = NetworkParams::new(12, 800_000, 20, 1, 2).unwrap();
    c.bench_function("figure curves, 20 rows", |b| {
        b.iter(|| figure_curves(black_box(&p), 20))
    });
    c.bench_function("gap bounds", |b| b.iter(|| gap_bounds(black_box(&p))));
    c.bench_function("best bounds", |b| {
        b.iter(|| best_bounds(black_box(&p), 2, 3))
    });
}

fn construction(c: &mut Criterion) {
    let code = CoveringCodeParams::new(4, 2, 1, 3, 2).unwrap();
    c.bench_function("lifted MRD covering code (4,2,1;3)_2", |b| {
        b.iter(|| covering_code_mrd_dual(black_box(&code), DEFAULT_CODE_CAP).unwrap())
    });

    let net = NetworkParams::new(4, 32, 3, 2, 1).unwrap();
    let built = covering_code_mrd_dual(&network_code_params(&net, 2, 1).unwrap(), DEFAULT_CODE_CAP)
        .unwrap();
    let sol = covering_to_solution(&net, 2, 1, &built).unwrap();
    c.bench_function("verify 4960 receivers", |b| {
        b.iter(|| verify_solution(&net, black_box(&sol)).unwrap())
    });

    let small = CoveringCodeParams::new(4, 2, 2, 3, 2).unwrap();
    c.bench_function("oracle (4,2,2;3)_2", |b| {
        b.iter(|| oracle_max_code(black_box(&small), true, DEFAULT_ORACLE_CAP).unwrap())
    });
}

criterion_group!(benches, gf, bounds, construction);
criterion_main!(benches);
