use criterion::{criterion_group, criterion_main, Criterion};
use pstnet::{certify_network, solve, verify_table, catalog, GadgetLibrary, SolveMode, DEFAULT_TOLERANCE};
use pstnet_bench::{cube_routing, square_routing};

fn solvers(c: &mut Criterion) {
    let lib = GadgetLibrary::default();
    let square = square_routing();
    let cube = cube_routing();
    c.bench_function("solve/exact/square", |b| b.iter(|| solve(&square, &lib, SolveMode::Exact, 8).unwrap()));
    c.bench_function("solve/greedy/cube", |b| b.iter(|| solve(&cube, &lib, SolveMode::Greedy, 8).unwrap()));
    let table = solve(&cube, &lib, SolveMode::Greedy, 8).unwrap();
    c.bench_function("verify/cube", |b| b.iter(|| verify_table(&cube, &table, DEFAULT_TOLERANCE)));
}

fn certify(c: &mut Criterion) {
    let lib = GadgetLibrary::default();
    let g = catalog::four_squares();
    c.bench_function("certify/four_squares", |b| b.iter(|| certify_network(&g, 2, &lib)));
}

criterion_group!(benches, solvers, certify);
criterion_main!(benches);
