//! Bracketing root finders used by the equilibrium and calibration solvers.

use crate::error::{Error, Result};

/// Stopping rule for [`bisect`].
#[derive(Debug, Clone, Copy)]
pub struct RootTol {
    /// Stop when the bracket is narrower than this.
    pub x_tol: f64,
    /// Stop when `|f| <= f_tol`.
    pub f_tol: f64,
}

impl Default for RootTol {
    fn default() -> Self {
        RootTol { x_tol: 1e-12, f_tol: 1e-10 }
    }
}

/// Bisection on a sign-changing bracket followed by a guarded secant polish.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: RootTol) -> Result<f64> {
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoRoot(format!("no sign change on [{a}, {b}] (f = {fa}, {fb})")));
    }
    let mut fb = fb;
    for _ in 0..200 {
        if b - a <= tol.x_tol {
            break;
        }
        let m = a + 0.5 * (b - a);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }
    let (mut best, mut f_best) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    if f_best.abs() <= tol.f_tol {
        return Ok(best);
    }
    // secant polish, accepted only while it stays in the bracket and improves |f|
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    for _ in 0..20 {
        if f1 == f0 {
            break;
        }
        let x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if !(x2 >= a && x2 <= b) {
            break;
        }
        let f2 = f(x2);
        if f2.abs() >= f_best.abs() {
            break;
        }
        best = x2;
        f_best = f2;
        if f2.abs() <= tol.f_tol {
            break;
        }
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f2;
    }
    Ok(best)
}

/// Sub-intervals of a uniform `n`-cell scan of `[lo, hi]` on which `f` changes
/// sign or hits zero exactly at the left end.
pub fn scan_brackets<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let n = n.max(1);
    let xs: Vec<f64> = (0..=n)
        .map(|i| if i == n { hi } else { lo + (hi - lo) * i as f64 / n as f64 })
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        let (fa, fb) = (fs[i], fs[i + 1]);
        if !(fa.is_finite() && fb.is_finite()) {
            continue;
        }
        if fa == 0.0 {
            out.push((xs[i], xs[i]));
        } else if fb != 0.0 && fa.signum() != fb.signum() {
            out.push((xs[i], xs[i + 1]));
        } else if fb == 0.0 && i + 1 == n {
            out.push((xs[n], xs[n]));
        }
    }
    out
}

/// All roots found by a pre-scan of `n` cells followed by bisection per bracket.
pub fn find_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, tol: RootTol) -> Vec<f64> {
    scan_brackets(&f, lo, hi, n)
        .into_iter()
        .filter_map(|(a, b)| if a == b { Some(a) } else { bisect(&f, a, b, tol).ok() })
        .collect()
}
