//! Adaptive Simpson quadrature over `f64`. Generic plumbing used by the
//! numerical layer and by cross-check oracles in the test suites.

/// Adaptive Simpson with absolute tolerance `tol` on `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fb, fm, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let err = left + right - whole;
    if depth == 0 || err.abs() <= 15.0 * tol {
        return left + right + err / 15.0;
    }
    rec(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1)
        + rec(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1)
}

/// Trapezoid cumulative integral of samples `y` on a uniform grid of step `h`.
pub fn cumulative_trapezoid(y: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(y.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..y.len() {
        acc += 0.5 * h * (y[i - 1] + y[i]);
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_smooth_functions() {
        let v = adaptive_simpson(&|x: f64| x.exp(), 0.0, 1.0, 1e-12);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-11);
        let v = adaptive_simpson(&|x: f64| (2.0 * x).sin(), 0.0, 3.0, 1e-12);
        assert!((v - 0.5 * (1.0 - (6f64).cos())).abs() < 1e-10);
    }
}
