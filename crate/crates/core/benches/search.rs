use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use runoff_core::election::CandidateId;
use runoff_core::experiments::{desk_scale_x3c, random_election, veto_sweep};
use runoff_core::instance::ManipulationInstance;
use runoff_core::protocol::ScoringProtocol;
use runoff_core::reductions::{gen_veto_construction, X3CInstance};
use runoff_core::runoff::{Mode, ThenSemantics};
use runoff_core::solvers::{solve_exhaustive, SolverConfig};

fn configs() -> [(&'static str, SolverConfig); 2] {
    [("sequential", SolverConfig::sequential()), ("parallel", SolverConfig { parallel: true, ..SolverConfig::default() })]
}

fn exhaustive(c: &mut Criterion) {
    // No exact cover, so the search cannot stop early.
    let x3c = X3CInstance::new(2, vec![[1, 2, 3], [1, 4, 5], [2, 4, 6], [3, 5, 6]]).unwrap();
    let veto = gen_veto_construction(&x3c, Mode::RevotingRunoff).unwrap().instance;
    // A no-instance: every plan is evaluated.
    let e = random_election(&mut ChaCha8Rng::seed_from_u64(15), 5, 8, 1);
    let borda = ManipulationInstance::unweighted(e, ScoringProtocol::Borda, 3, CandidateId(0), Mode::RevotingRunoff).unwrap();

    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    for (name, config) in configs() {
        group.bench_with_input(BenchmarkId::new("veto-construction", name), &config, |b, config| {
            b.iter(|| solve_exhaustive(black_box(&veto), ThenSemantics::DecisiveStop, config))
        });
        group.bench_with_input(BenchmarkId::new("borda-m5-k3-no", name), &config, |b, config| {
            b.iter(|| solve_exhaustive(black_box(&borda), ThenSemantics::DecisiveStop, config))
        });
    }
    group.finish();
}

fn sweep(c: &mut Criterion) {
    let instances: Vec<X3CInstance> = desk_scale_x3c().into_iter().filter(|x| x.k() == 2 && x.n() == 3).collect();
    let mut group = c.benchmark_group("veto-sweep");
    group.sample_size(10);
    for (name, config) in configs() {
        group.bench_with_input(BenchmarkId::new("k2-n3", name), &config, |b, config| {
            b.iter(|| veto_sweep(black_box(&instances), config))
        });
    }
    group.finish();
}

criterion_group!(benches, exhaustive, sweep);
criterion_main!(benches);
