//! Smooth cutoffs built from the standard `e^{-1/s}` transition.

/// C^∞ transition from 0 (for `s <= 0`) to 1 (for `s >= 1`).
pub fn smooth_step(s: f64) -> f64 {
    if s <= 0.0 {
        return 0.0;
    }
    if s >= 1.0 {
        return 1.0;
    }
    let a = (-1.0 / s).exp();
    let b = (-1.0 / (1.0 - s)).exp();
    a / (a + b)
}

/// Equal to 1 on `[0, inner]`, 0 on `[outer, ∞)`, smooth and monotone in between.
pub fn plateau(r: f64, inner: f64, outer: f64) -> f64 {
    debug_assert!(outer > inner);
    1.0 - smooth_step((r.abs() - inner) / (outer - inner))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_is_monotone_and_symmetric() {
        let mut prev = 0.0;
        for k in 0..=100 {
            let s = k as f64 / 100.0;
            let v = smooth_step(s);
            assert!(v >= prev);
            assert!((v + smooth_step(1.0 - s) - 1.0).abs() < 1e-15);
            prev = v;
        }
        assert_eq!(plateau(0.5, 1.0, 2.0), 1.0);
        assert_eq!(plateau(-2.5, 1.0, 2.0), 0.0);
    }
}
