use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use rfrs_core::arith::prime::prime_of_norm;
use rfrs_core::arith::ring::RingKind;
use rfrs_core::congsub::lemma::{congruence_quotient_check, Scheme, DEFAULT_BUDGET};
use rfrs_core::congsub::pu::pu_identity_congruent_count;
use rfrs_core::par::{self, Mode};
use rfrs_core::tower;

fn modes() -> [(Mode, &'static str); 2] {
    [(Mode::Sequential, "seq"), (Mode::Parallel, "par")]
}

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("seq_vs_par");
    g.sample_size(10);
    let prime = prime_of_norm(RingKind::ImagQuadratic(1), 2, 2).unwrap();
    let ex = tower::example("pu21").unwrap();
    for (mode, label) in modes() {
        par::set_mode(mode);
        g.bench_with_input(BenchmarkId::new("pu_count", label), &(), |b, _| b.iter(|| pu_identity_congruent_count().unwrap()));
        g.bench_with_input(BenchmarkId::new("lemma_sl2_2_4", label), &(), |b, _| {
            b.iter(|| congruence_quotient_check(&Scheme::SL, 2, &prime, 2, 4, DEFAULT_BUDGET).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("tower_pu21_3", label), &(), |b, _| b.iter(|| tower::build_tower(&ex, 3).unwrap()));
    }
    par::set_mode(Mode::Parallel);
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
