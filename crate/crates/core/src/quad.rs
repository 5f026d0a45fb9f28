//! Adaptive panel quadrature for complex-valued integrands.
//!
//! Panels are integrated with embedded Gauss–Legendre rules (16 and 32
//! points); the difference of the two estimates drives adaptive bisection.
//! Nodes and weights are computed at startup by Newton iteration on the
//! Legendre recurrence, so no tabulated constants are needed.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

const GAUSS_LO: usize = 16;
const GAUSS_HI: usize = 32;

/// Nodes and weights of an n-point Gauss–Legendre rule on [-1, 1].
fn gauss_rule(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for k in 1..=(n + 1) / 2 {
        // Chebyshev-like initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (k as f64 - 0.25) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
        if 2 * k <= n {
            rule.push((-x, w));
        }
    }
    rule
}

/// Legendre polynomial P_n and derivative P_n' at x via the three-term
/// recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn rule_lo() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_rule(GAUSS_LO))
}

fn rule_hi() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| gauss_rule(GAUSS_HI))
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Absolute tolerance on the integral.
    pub abs_tol: f64,
    /// Hard cap on the number of panels.
    pub max_panels: usize,
    /// Initial uniform subdivision; raise this for oscillatory integrands.
    pub init_panels: usize,
}

impl QuadOptions {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadOptions { abs_tol, max_panels: 400_000, init_panels: 1 }
    }

    /// Seeds the initial subdivision so that each panel spans roughly one
    /// radian of a phase factor e^{i freq x}; Gauss panels lose accuracy
    /// once several wavelengths fall inside one panel.
    pub fn oscillatory(abs_tol: f64, freq: f64, length: f64) -> Self {
        let panels = ((freq.abs() * length) / 5.0).ceil() as usize;
        QuadOptions {
            abs_tol,
            max_panels: 800_000,
            init_panels: panels.clamp(1, 400_000),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.lo == other.lo
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on error, deterministic tiebreak on position.
        self.error
            .total_cmp(&other.error)
            .then(self.lo.total_cmp(&other.lo))
    }
}

fn eval_panel<F: Fn(f64) -> Complex64>(f: &F, lo: f64, hi: f64) -> (Panel, usize) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let mut coarse = Complex64::new(0.0, 0.0);
    for &(x, w) in rule_lo() {
        coarse += f(c + h * x) * w;
    }
    let mut fine = Complex64::new(0.0, 0.0);
    for &(x, w) in rule_hi() {
        fine += f(c + h * x) * w;
    }
    coarse *= h;
    fine *= h;
    let error = (fine - coarse).norm();
    (Panel { lo, hi, value: fine, error }, GAUSS_LO + GAUSS_HI)
}

/// Adaptive integration of `f` over `[lo, hi]`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, lo: f64, hi: f64, opts: &QuadOptions) -> QuadResult {
    if lo >= hi {
        return QuadResult {
            value: Complex64::new(0.0, 0.0),
            abs_error: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    let n0 = opts.init_panels.max(1);
    let step = (hi - lo) / n0 as f64;
    for j in 0..n0 {
        let a = lo + step * j as f64;
        let b = if j + 1 == n0 { hi } else { lo + step * (j + 1) as f64 };
        let (panel, ev) = eval_panel(&f, a, b);
        evaluations += ev;
        heap.push(panel);
    }
    let mut total_error: f64 = heap.iter().map(|p| p.error).sum();
    while total_error > opts.abs_tol && heap.len() < opts.max_panels {
        let worst = heap.pop().expect("heap nonempty");
        if worst.hi - worst.lo < 1e-15 * (hi - lo).max(1.0) {
            // Cannot refine further; keep as-is.
            heap.push(worst);
            break;
        }
        total_error -= worst.error;
        let mid = 0.5 * (worst.lo + worst.hi);
        let (left, ev_l) = eval_panel(&f, worst.lo, mid);
        let (right, ev_r) = eval_panel(&f, mid, worst.hi);
        evaluations += ev_l + ev_r;
        total_error += left.error + right.error;
        heap.push(left);
        heap.push(right);
    }
    let value = heap.iter().map(|p| p.value).sum();
    QuadResult {
        value,
        abs_error: total_error,
        evaluations,
        converged: total_error <= opts.abs_tol,
    }
}

/// Adaptive integration of a real integrand.
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, opts: &QuadOptions) -> QuadResult {
    integrate(|x| Complex64::new(f(x), 0.0), lo, hi, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(tol: f64) -> QuadOptions {
        QuadOptions::with_tol(tol)
    }

    #[test]
    fn polynomial_is_near_exact() {
        let r = integrate_real(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, &opts(1e-13));
        // exact: 4 - 4 + 2 = 2
        assert!((r.value.re - 2.0).abs() < 1e-13, "{}", r.value.re);
        assert!(r.converged);
    }

    #[test]
    fn gaussian_integral() {
        let r = integrate_real(|x| (-x * x).exp(), -9.0, 9.0, &opts(1e-12));
        assert!((r.value.re - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn full_period_oscillation_cancels() {
        let two_pi = 2.0 * std::f64::consts::PI;
        let o = QuadOptions::oscillatory(1e-12, 40.0, two_pi);
        let r = integrate(|x| Complex64::new(0.0, 40.0 * x).exp(), 0.0, two_pi, &o);
        assert!(r.value.norm() < 1e-12, "{}", r.value.norm());
    }

    #[test]
    fn kink_is_handled_adaptively() {
        let r = integrate_real(|x| x.abs().sqrt(), -1.0, 1.0, &opts(1e-10));
        assert!((r.value.re - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn legendre_rule_integrates_high_degree() {
        // 16-point rule is exact through degree 31.
        let rule = gauss_rule(16);
        let integral: f64 = rule.iter().map(|&(x, w)| w * x.powi(30)).sum();
        assert!((integral - 2.0 / 31.0).abs() < 1e-14);
        let weight_sum: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((weight_sum - 2.0).abs() < 1e-14);
    }
}
