use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hokdv::evolution::{InitialShape, SimulationState};
use hokdv::spectral::{self, transform, Grid1D};
use hokdv::{EquationParams, NonlinearSign};
use num_complex::Complex64;

fn fft(c: &mut Criterion) {
    let mut group = c.benchmark_group("forward transform");
    for count in [1024usize, 4096, 32768] {
        let grid = Grid1D::new(count as f64, count).unwrap();
        let data: Vec<Complex64> = grid.nodes().iter().map(|x| Complex64::new((-(x / 30.0).powi(2)).exp(), 0.0)).collect();
        group.bench_with_input(BenchmarkId::from_parameter(count), &data, |b, data| {
            b.iter(|| transform::forward(&grid, black_box(data)))
        });
    }
    group.finish();
}

fn propagator(c: &mut Criterion) {
    let grid = Grid1D::new(4096.0, 4096).unwrap();
    let u = InitialShape::gaussian(6.0).sample(grid).unwrap();
    c.bench_function("linear propagator n=5 N=4096", |b| b.iter(|| spectral::apply_propagator(black_box(&u), 5, 100.0)));
}

fn stepper(c: &mut Criterion) {
    let mut group = c.benchmark_group("IFRK4 step");
    for (n, p) in [(5, 2), (5, 3), (7, 4)] {
        let params = EquationParams::new(n, p).unwrap().with_sign(NonlinearSign::Minus);
        let grid = Grid1D::new(4096.0, 4096).unwrap();
        let u0 = InitialShape::WindowedGaussian { center: 0.0, width: 6.0, cutoff: 0.5 }.sample(grid).unwrap().scaled(0.05);
        let mut state = SimulationState::new(params, &u0, 1.0, 0.1, 0.05).unwrap();
        group.bench_function(format!("({n},{p}) N=4096"), |b| b.iter(|| state.step().unwrap()));
    }
    group.finish();
}

criterion_group!(benches, fft, propagator, stepper);
criterion_main!(benches);
