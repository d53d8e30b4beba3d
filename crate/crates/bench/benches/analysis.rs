use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hokdv::evolution::InitialShape;
use hokdv::oscillatory::{oscillatory_quadrature, Amplitude, Cutoff, Phase, PhaseSpec};
use hokdv::profile::{duhamel_rhs, principal_rhs};
use hokdv::resonance::{self, PhaseH};
use hokdv::spectral::{self, Grid1D};
use hokdv::EquationParams;

fn quadrature(c: &mut Criterion) {
    let one = PhaseSpec::new(Phase::diagonal(&[1.0]), Amplitude::Constant { value: 1.0 }, Cutoff::Smooth, 400.0);
    c.bench_function("quadrature d=1 λ=400", |b| b.iter(|| oscillatory_quadrature(black_box(&one)).unwrap()));
    // ~0.4 s per call
    let two = PhaseSpec::new(Phase::diagonal(&[1.0, -1.0]), Amplitude::Constant { value: 1.0 }, Cutoff::Smooth, 100.0);
    let mut slow = c.benchmark_group("quadrature d=2");
    slow.sample_size(10);
    slow.bench_function("λ=100", |b| b.iter(|| oscillatory_quadrature(black_box(&two)).unwrap()));
    slow.finish();
}

fn hessians(c: &mut Criterion) {
    c.bench_function("resonant Hessian signature p=13 n=7", |b| {
        b.iter(|| {
            let phase = PhaseH::with_orders(7, 13, black_box(1.0));
            resonance::resonant_indices(13)
                .into_iter()
                .map(|j| {
                    let point = resonance::stationary_point(13, j, 1.0).unwrap();
                    resonance::signature(&resonance::hessian_at(&phase, &point.coordinates).unwrap()).unwrap()
                })
                .sum::<i32>()
        })
    });
}

fn profile_terms(c: &mut Criterion) {
    let params = EquationParams::new(5, 3).unwrap();
    let grid = Grid1D::new(4096.0, 4096).unwrap();
    let u = InitialShape::gaussian(6.0).sample(grid).unwrap().scaled(0.05);
    let t = 50.0;
    c.bench_function("duhamel_rhs (5,3) N=4096", |b| b.iter(|| duhamel_rhs(&params, black_box(&u), t)));
    let f = spectral::to_profile(&u, 5, t).f;
    c.bench_function("principal_rhs (5,3) N=4096", |b| b.iter(|| principal_rhs(&params, black_box(&f), t).unwrap()));
}

criterion_group!(benches, quadrature, hessians, profile_terms);
criterion_main!(benches);
