//! Acceptance suite: one line per criterion, `PASS`/`FAIL` plus the measured
//! numbers. Advisory criteria are reported but never fail the target.

use std::f64::consts::PI;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use hokdv::evolution::{geometric_times, InitialShape, SimulationState};
use hokdv::harness::{self, check_linear_decay, check_lp_decay, DecayOptions, RunConfig};
use hokdv::oscillatory::{
    error_order_probe, oscillatory_quadrature, stationary_phase_leading, Amplitude, Cutoff, Phase, PhaseSpec, ProbeKind,
};
use hokdv::profile::{compute_coefficients, duhamel_rhs, principal_rhs, GaugeHistory};
use hokdv::resonance::{self, PhaseH};
use hokdv::spectral::{self, transform, Grid1D, SpectralField};
use hokdv::{EquationParams, NonlinearSign};
use num_complex::Complex64;

type Outcome = Result<String, String>;

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Smooth, non-symmetric, complex test data.
fn test_signal(grid: Grid1D) -> Vec<Complex64> {
    let l = grid.length();
    grid.nodes()
        .into_iter()
        .map(|x| {
            let s = x / l;
            Complex64::new((-(40.0 * s).powi(2)).exp() * (3.0 * x).cos(), (-(25.0 * (s - 0.1)).powi(2)).exp() * 0.5)
                + (2.0 * PI * 7.0 * s).sin()
        })
        .collect()
}

fn transforms() -> Outcome {
    let (mut roundtrip, mut plancherel, mut group) = (0.0f64, 0.0f64, 0.0f64);
    for count in [256, 1024, 4096] {
        let grid = Grid1D::new(count as f64 / 4.0, count).unwrap();
        let u = test_signal(grid);
        let uh = transform::forward(&grid, &u);
        let back = transform::inverse(&grid, &uh);
        roundtrip = roundtrip.max(max_diff(&back, &u) / max_norm(&u));
        let phys: f64 = u.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.dx();
        let four: f64 = uh.iter().map(|z| z.norm_sqr()).sum::<f64>() / grid.length();
        plancherel = plancherel.max((phys - four).abs() / phys);
        let field = SpectralField::from_physical(grid, u);
        for n in [3, 5, 7] {
            let (s, t) = (0.3, 0.55);
            let two = spectral::apply_propagator(&spectral::apply_propagator(&field, n, s), n, t);
            let one = spectral::apply_propagator(&field, n, s + t);
            group = group.max(max_diff(&two.physical(), &one.physical()) / max_norm(&field.physical()));
        }
    }
    ensure(
        roundtrip <= 1e-12 && plancherel <= 1e-10 && group <= 1e-12,
        format!("roundtrip {roundtrip:.1e}, plancherel {plancherel:.1e}, group law {group:.1e}"),
    )
}

fn conservation() -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, p) in [(5, 2), (5, 3), (7, 2), (7, 4)] {
        let config = RunConfig::from_json(&format!(
            r#"{{ "version": 1, "params": {{ "n": {n}, "p": {p} }},
                  "grid": {{ "length": 4096.0, "count": 4096 }},
                  "epsilon": 0.05, "t_final": 500.0, "dt": 0.1,
                  "initial": {{ "kind": "windowed_gaussian", "center": 0.0, "width": 6.0, "cutoff": 0.5 }},
                  "samples": {{ "kind": "uniform", "count": 10 }}, "checks": ["conservation"] }}"#
        ))
        .map_err(|e| e.to_string())?;
        let out = harness::simulate(&config).map_err(|e| e.to_string())?;
        ok &= out.pass;
        worst = (worst.0.max(out.mass_drift), worst.1.max(out.hamiltonian_drift));
        if !out.pass {
            parts.push(format!("({n},{p}) mass {:.1e} H {:.1e} {:?}", out.mass_drift, out.hamiltonian_drift, out.invalid));
        }
    }
    parts.insert(0, format!("max mass drift {:.1e}, max hamiltonian drift {:.1e}", worst.0, worst.1));
    ensure(ok, parts.join("; "))
}

fn hessian_signatures() -> Outcome {
    let mut checked = 0;
    for n in [5, 7, 9] {
        for p in (3..=13).step_by(2) {
            for xi in [1.0, -1.0, 2.5, -2.5] {
                let phase = PhaseH::with_orders(n, p, xi);
                for j in resonance::resonant_indices(p) {
                    let point = resonance::stationary_point(p, j, xi).map_err(|e| e.to_string())?;
                    let hess = resonance::hessian_at(&phase, &point.coordinates).map_err(|e| e.to_string())?;
                    let sig = resonance::signature(&hess).map_err(|e| e.to_string())?;
                    if sig != 0 {
                        return Err(format!("signature {sig} at n={n} p={p} j={j} ξ={xi}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    let mut spectrum = 0.0f64;
    for p in (3..=13).step_by(2) {
        spectrum = spectrum.max(resonance::m1_spectrum_check(p).map_err(|e| e.to_string())?.max_error);
    }
    ensure(spectrum <= 1e-9, format!("{checked} resonant Hessians with signature 0, M1 spectrum error {spectrum:.1e}"))
}

fn stationary_points() -> Outcome {
    let (mut grad, mut value) = (0.0f64, 0.0f64);
    for n in [3, 5, 7, 9] {
        for p in 2..=10 {
            for xi in [1.0, -1.0, 2.5, -0.7] {
                let phase = PhaseH::with_orders(n, p, xi);
                let scale = n as f64 * xi.abs().powi(n as i32 - 1);
                for sp in resonance::stationary_points(p, xi).map_err(|e| e.to_string())? {
                    let g = phase.gradient(&sp.coordinates).map_err(|e| e.to_string())?;
                    grad = grad.max(g.iter().fold(0.0f64, |m, v| m.max(v.abs())) / scale);
                    let direct = phase.eval(&sp.coordinates).map_err(|e| e.to_string())?;
                    let closed = resonance::phase_at(n, p, sp.j, xi).map_err(|e| e.to_string())?;
                    value = value.max((direct - closed).abs() / xi.abs().powi(n as i32));
                    let resonant = resonance::is_time_resonant(p, sp.j);
                    if resonant != (sp.divisor(p).abs() == 1) || resonant != (closed == 0.0) {
                        return Err(format!("time-resonance mismatch at n={n} p={p} j={}", sp.j));
                    }
                }
            }
        }
    }
    ensure(grad <= 1e-10 && value <= 1e-12, format!("relative |∇H| {grad:.1e}, phase value error {value:.1e}"))
}

fn oscillatory() -> Outcome {
    let lambdas = [50.0, 100.0, 200.0, 400.0];
    let s1 = PhaseSpec::new(
        Phase::QuadraticCubic { matrix: vec![vec![1.0]], cubic: vec![0.8] },
        Amplitude::Gaussian { center: vec![0.2], width: 0.6 },
        Cutoff::Smooth,
        1.0,
    )
    .with_stationary_point(vec![0.0]);
    let s2 = PhaseSpec::new(
        Phase::QuadraticCubic { matrix: vec![vec![1.0, 0.3], vec![0.3, -1.0]], cubic: vec![0.5, -0.4] },
        Amplitude::Gaussian { center: vec![0.2, -0.1], width: 0.6 },
        Cutoff::Smooth,
        1.0,
    )
    .with_stationary_point(vec![0.0, 0.0]);
    let o1 = error_order_probe(&s1, &lambdas, ProbeKind::Remainder).map_err(|e| e.to_string())?.order;
    let o2 = error_order_probe(&s2, &lambdas, ProbeKind::Remainder).map_err(|e| e.to_string())?.order;
    let fresnel = PhaseSpec::new(Phase::diagonal(&[1.0]), Amplitude::Constant { value: 1.0 }, Cutoff::Smooth, 400.0)
        .with_stationary_point(vec![0.0]);
    let q = oscillatory_quadrature(&fresnel).map_err(|e| e.to_string())?.value;
    let lead = stationary_phase_leading(&fresnel).map_err(|e| e.to_string())?.value;
    let rel = (q - lead).norm() / lead.norm();
    ensure(
        o1 >= 1.35 && o2 >= 1.85 && rel <= 0.01,
        format!("remainder order d=1 {o1:.2}, d=2 {o2:.2}; Fresnel λ=400 relative error {rel:.1e}"),
    )
}

fn linear_decay() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    let windowed = InitialShape::WindowedGaussian { center: 0.0, width: 0.7, cutoff: 1.0 };
    let times = geometric_times(16.0, 4096.0, 9);
    for (n, log2) in [(5, 19), (7, 21)] {
        let grid = Grid1D::new((1u64 << log2) as f64, 1 << log2).unwrap();
        let f0 = windowed.sample(grid).map_err(|e| e.to_string())?;
        let r = check_linear_decay(&f0, n, &times, &[0.0, 1.0], &DecayOptions::default()).map_err(|e| e.to_string())?;
        let lp = check_lp_decay(&f0, n, &times, 0.0, 8.0, &DecayOptions::default()).map_err(|e| e.to_string())?;
        ok &= r.pass && lp.fit.pass;
        for f in r.fits.iter().filter(|f| f.beta == 0.0) {
            parts.push(format!("n={n} {} {:.3} (pred {:.3})", f.name, f.fitted, f.predicted));
        }
        parts.push(format!("n={n} L^8 {:.3} (pred {:.3})", lp.fit.fitted, lp.fit.predicted));

        let extent = 16384.0;
        let tail = InitialShape::AlgebraicTail { width: 4.0, extent, cutoff: 1.0 }.sample(grid).map_err(|e| e.to_string())?;
        let opts = DecayOptions { elliptic_outer: Some(extent / 10.0), spatial_fit_time: Some(256.0), ..Default::default() };
        let e = check_linear_decay(&tail, n, &[256.0], &[0.0, 1.0], &opts).map_err(|e| e.to_string())?;
        for f in e.fits.iter().filter(|f| f.name == "elliptic_x") {
            ok &= f.pass;
            let side = if f.one_sided { " upper bound" } else { "" };
            parts.push(format!("n={n} elliptic β={} {:.3} (pred {:.3}{side})", f.beta, f.fitted, f.predicted));
        }
    }
    ensure(ok, parts.join(", "))
}

/// Max over ξ of |centered difference of f̂ − ∂ₜf̂| at t = 2, on a coarse grid.
fn fd_error(delta: f64) -> f64 {
    let params = EquationParams::new(5, 3).unwrap();
    let grid = Grid1D::new(64.0, 64).unwrap();
    let u0 = InitialShape::gaussian(4.0).sample(grid).unwrap().scaled(0.5);
    let t = 2.0;
    let mut state = SimulationState::new(params, &u0, 1.0, 2e-4, 0.5).unwrap();
    let profile_hat = |s: &SimulationState| spectral::to_profile(&s.field(), 5, s.t()).f.fourier().into_owned();
    state.advance_to(t - delta).unwrap();
    let before = profile_hat(&state);
    state.advance_to(t).unwrap();
    let rhs = duhamel_rhs(&params, &state.field(), t);
    state.advance_to(t + delta).unwrap();
    let after = profile_hat(&state);
    before
        .iter()
        .zip(&after)
        .zip(&rhs)
        .map(|((a, b), r)| ((b - a) / (2.0 * delta) - r).norm())
        .fold(0.0, f64::max)
}

/// `±(iξ/p) L^{1−p} Σ e^{−itH} f̂(ξ₁)⋯f̂(ξ_p)` by brute force over integer tuples.
fn convolution(params: &EquationParams, f_hat: &[Complex64], grid: &Grid1D, t: f64, m: i64) -> Complex64 {
    let (n, p) = (params.n() as i32, params.p() as usize);
    let half = grid.count() as i64 / 2;
    let xi = |m: i64| grid.frequency(grid.slot(m));
    let mut total = Complex64::new(0.0, 0.0);
    let mut idx = vec![-half + 1; p - 1];
    'outer: loop {
        let last = m - idx.iter().sum::<i64>();
        if last.abs() < half {
            let h = xi(m).powi(n) - idx.iter().map(|&a| xi(a).powi(n)).sum::<f64>() - xi(last).powi(n);
            let prod = idx.iter().fold(f_hat[grid.slot(last)], |acc, &a| acc * f_hat[grid.slot(a)]);
            total += Complex64::from_polar(1.0, -t * h) * prod;
        }
        for k in 0..p - 1 {
            idx[k] += 1;
            if idx[k] < half {
                continue 'outer;
            }
            idx[k] = -half + 1;
        }
        break;
    }
    Complex64::new(0.0, params.sign().value() * xi(m) / p as f64) * total * grid.length().powi(1 - p as i32)
}

fn duhamel() -> Outcome {
    let errs: Vec<f64> = [0.02, 0.01, 0.005].iter().map(|&d| fd_error(d)).collect();
    let order = errs.windows(2).map(|w| (w[0] / w[1]).log2()).fold(f64::INFINITY, f64::min);

    let mut oracle_err = 0.0f64;
    for (n, p) in [(5, 2), (5, 3), (7, 3)] {
        let params = EquationParams::new(n, p).unwrap().with_sign(NonlinearSign::Minus);
        let grid = Grid1D::new(20.0, 64).unwrap();
        // a few real modes on 1 ≤ |m| ≤ 6
        let mut coeffs = vec![Complex64::new(0.0, 0.0); grid.count()];
        for m in 1..=6i64 {
            let v = Complex64::new((m as f64 * 1.3).sin(), (m as f64 * 0.7 + p as f64).cos()) * 0.1 * grid.length();
            coeffs[grid.slot(m)] = v;
            coeffs[grid.slot(-m)] = v.conj();
        }
        let u = SpectralField::from_fourier(grid, coeffs);
        let t = 1.7;
        let rhs = duhamel_rhs(&params, &u, t);
        let f_hat = spectral::to_profile(&u, n, t).f.fourier().into_owned();
        for m in [1, 4, 9] {
            let oracle = convolution(&params, &f_hat, &grid, t, m);
            oracle_err = oracle_err.max((rhs[grid.slot(m)] - oracle).norm() / (1.0 + oracle.norm()));
        }
    }

    let mut real_part = 0.0f64;
    for (n, p) in [(5, 3), (7, 3), (7, 5), (9, 3)] {
        for c in compute_coefficients(n, p, NonlinearSign::Plus).map_err(|e| e.to_string())? {
            if c.resonant {
                real_part = real_part.max(c.c_plus.re.abs() / c.c_plus.norm());
            }
        }
    }
    ensure(
        order >= 1.8 && oracle_err <= 1e-8 && real_part <= 1e-10,
        format!("FD order {order:.2}, convolution error {oracle_err:.1e}, resonant |Re c|/|c| {real_part:.1e}"),
    )
}

fn gauge() -> Outcome {
    let grid = Grid1D::new(40.0, 256).unwrap();
    let f = InitialShape::gaussian(1.5).sample(grid).unwrap();
    let fhat = f.fourier().into_owned();
    let coeffs = compute_coefficients(5, 3, NonlinearSign::Plus).map_err(|e| e.to_string())?;
    let c = hokdv::profile::gauge_constant(&coeffs);
    let run = |p: u32| -> Result<(Vec<f64>, Vec<Complex64>), String> {
        let mut history = GaugeHistory::new(5, p, c, grid.frequencies());
        for k in 0..=200 {
            let t = 1.0 + 0.05 * k as f64;
            // profile drifting in phase and amplitude
            let g: Vec<Complex64> = fhat
                .iter()
                .zip(grid.frequencies())
                .map(|(v, xi)| v * Complex64::from_polar(1.0 + 0.1 * (t * xi).sin(), 0.3 * t * xi))
                .collect();
            history.push(t, &g).map_err(|e| e.to_string())?;
        }
        let b = history.b().map_err(|e| e.to_string())?;
        let w = history.renormalize(&fhat).map_err(|e| e.to_string())?;
        Ok((b, w))
    };
    let (b_odd, w) = run(3)?;
    let modulus = w
        .iter()
        .zip(&fhat)
        .map(|(a, b)| (a.norm() - b.norm()).abs() / f64::EPSILON / b.norm().max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max);
    let nontrivial = b_odd.iter().any(|&b| b != 0.0);
    let (b_even, _) = run(2)?;
    let even_zero = b_even.iter().all(|&b| b == 0.0);

    let mut indicator = true;
    for (n, p) in [(5, 2), (5, 3), (7, 4)] {
        let params = EquationParams::new(n, p).unwrap();
        for t in [1.0, 10.0, 1000.0] {
            let rhs = principal_rhs(&params, &f, t).map_err(|e| e.to_string())?;
            let cut = t.powf(-1.0 / n as f64);
            indicator &= grid
                .frequencies()
                .into_iter()
                .zip(&rhs)
                .all(|(xi, v)| xi.abs() > cut || *v == Complex64::new(0.0, 0.0));
        }
    }
    ensure(
        modulus <= 4.0 && nontrivial && even_zero && indicator,
        format!(
            "|w| vs |f̂| within {modulus:.1} ulp, B nonzero for odd p: {nontrivial}, B = 0 for even p: {even_zero}, \
             low-frequency indicator: {indicator}"
        ),
    )
}

fn sweep() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/sweep_5_2.json");
    let config = RunConfig::load(&path).map_err(|e| e.to_string())?;
    let r = harness::sweep(&config).map_err(|e| e.to_string())?;
    let rows: Vec<String> = r
        .rows
        .iter()
        .map(|row| {
            let growth = row.final_linf / row.initial_linf;
            let tag = if row.censored { "censored" } else { "T*" };
            format!("ε={} {tag} t={:.0} growth {growth:.2}", row.epsilon, row.t_star)
        })
        .collect();
    let slope = r.slope.map_or("none".to_string(), |s| format!("{s:.2}"));
    let predicted = r.predicted.map_or("none".to_string(), |s| format!("{s:.2}"));
    ensure(r.pass, format!("slope {slope} vs predicted {predicted}; {}", rows.join(", ")))
}

fn determinism() -> Outcome {
    let config = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/simulate_5_2.json");
    let run = |dir: &Path| -> Result<Vec<(String, Vec<u8>)>, String> {
        let status = Command::new(env!("CARGO_BIN_EXE_hokdv"))
            .args(["--seed", "42", "--out"])
            .arg(dir)
            .args(["simulate", "--config"])
            .arg(&config)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("hokdv exited with {status}"));
        }
        let mut files: Vec<_> = fs::read_dir(dir)
            .map_err(|e| e.to_string())?
            .map(|e| {
                let e = e.unwrap();
                (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
            })
            .collect();
        files.sort();
        Ok(files)
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (first, second) = (run(a.path())?, run(b.path())?);
    let bytes: usize = first.iter().map(|(_, v)| v.len()).sum();
    ensure(
        first == second && !first.is_empty(),
        format!("{} files, {bytes} bytes, identical: {}", first.len(), first == second),
    )
}

struct Criterion {
    index: usize,
    name: &'static str,
    advisory: bool,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { index: 1, name: "spectral transforms", advisory: false, run: transforms },
        Criterion { index: 2, name: "conservation", advisory: false, run: conservation },
        Criterion { index: 3, name: "resonant Hessian signature", advisory: false, run: hessian_signatures },
        Criterion { index: 4, name: "stationary points and phase values", advisory: false, run: stationary_points },
        Criterion { index: 5, name: "oscillatory integrals", advisory: false, run: oscillatory },
        Criterion { index: 6, name: "linear decay exponents", advisory: false, run: linear_decay },
        Criterion { index: 7, name: "Duhamel form and coefficients", advisory: false, run: duhamel },
        Criterion { index: 8, name: "gauge and principal terms", advisory: false, run: gauge },
        Criterion { index: 9, name: "breakdown-time scaling (advisory)", advisory: true, run: sweep },
        Criterion { index: 10, name: "CLI determinism", advisory: false, run: determinism },
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut gating_failures = 0;
    for c in criteria.iter().filter(|c| filter.is_empty() || filter.contains(&c.index)) {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag}: {} — {detail} ({secs:.1} s)", c.index, c.name);
        if outcome.is_err() && !c.advisory {
            gating_failures += 1;
        }
    }
    if gating_failures > 0 {
        std::process::exit(1);
    }
}
