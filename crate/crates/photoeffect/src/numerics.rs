//! Small numerical kernels shared across the crate: Gauss-Legendre rules,
//! complex and real tridiagonal solvers, and Sturm-sequence bisection for
//! symmetric tridiagonal eigenvalues.
//!
//! Everything here is deterministic: fixed node orders, fixed summation
//! order, no threading.

use num_complex::Complex64;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; converges to machine
/// precision in a handful of steps for every n used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        let (_, d) = legendre_and_derivative(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (d * d);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes and weights of a composite Gauss rule over consecutive panels.
///
/// `breaks` are the panel boundaries (ascending); each panel carries
/// `nodes_per_panel` Gauss points.
pub fn composite_gauss(breaks: &[f64], nodes_per_panel: usize) -> (Vec<f64>, Vec<f64>) {
    let (gn, gw) = gauss_legendre(nodes_per_panel);
    let mut nodes = Vec::with_capacity((breaks.len() - 1) * nodes_per_panel);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in gn.iter().zip(&gw) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    (nodes, weights)
}

/// Solve a complex tridiagonal system in place (Thomas algorithm).
///
/// `lower`, `diag`, `upper` have lengths n-1, n, n-1. Returns the solution.
pub fn solve_tridiagonal_complex(
    lower: &[Complex64],
    diag: &[Complex64],
    upper: &[Complex64],
    rhs: &[Complex64],
) -> Vec<Complex64> {
    let n = diag.len();
    assert_eq!(lower.len(), n - 1);
    assert_eq!(upper.len(), n - 1);
    assert_eq!(rhs.len(), n);
    let mut c_star = vec![Complex64::default(); n - 1];
    let mut d_star = vec![Complex64::default(); n];
    c_star[0] = upper[0] / diag[0];
    d_star[0] = rhs[0] / diag[0];
    for i in 1..n {
        let denom = diag[i] - lower[i - 1] * c_star[i - 1];
        if i < n - 1 {
            c_star[i] = upper[i] / denom;
        }
        d_star[i] = (rhs[i] - lower[i - 1] * d_star[i - 1]) / denom;
    }
    let mut x = vec![Complex64::default(); n];
    x[n - 1] = d_star[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d_star[i] - c_star[i] * x[i + 1];
    }
    x
}

/// Solve a real symmetric tridiagonal shifted system `(T - sigma I) x = b`.
pub fn solve_tridiagonal_real(diag: &[f64], off: &[f64], sigma: f64, rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c_star = vec![0.0; n - 1];
    let mut d_star = vec![0.0; n];
    c_star[0] = off[0] / (diag[0] - sigma);
    d_star[0] = rhs[0] / (diag[0] - sigma);
    for i in 1..n {
        let denom = (diag[i] - sigma) - off[i - 1] * c_star[i - 1];
        if i < n - 1 {
            c_star[i] = off[i] / denom;
        }
        d_star[i] = (rhs[i] - off[i - 1] * d_star[i - 1]) / denom;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d_star[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d_star[i] - c_star[i] * x[i + 1];
    }
    x
}

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly
/// below `lambda`, via the Sturm sequence of the shifted LDL^T pivots.
pub fn sturm_count_below(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let n = diag.len();
    let mut count = 0;
    let mut d = diag[0] - lambda;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let denom = if d.abs() < 1e-300 { 1e-300_f64.copysign(d) } else { d };
        d = (diag[i] - lambda) - off[i - 1] * off[i - 1] / denom;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// k-th smallest eigenvalue (k = 1 is the lowest) of a symmetric
/// tridiagonal matrix by Sturm bisection, to absolute tolerance `tol`.
pub fn sturm_eigenvalue(diag: &[f64], off: &[f64], k: usize, tol: f64) -> f64 {
    // Gershgorin bounds.
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = (if i > 0 { off[i - 1].abs() } else { 0.0 })
            + (if i < n - 1 { off[i].abs() } else { 0.0 });
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if sturm_count_below(diag, off, mid) >= k {
            hi = mid;
        } else {
            lo = mid;
        }
        if !(0.5 * (lo + hi)).is_finite() || hi - lo < f64::EPSILON * (lo.abs() + hi.abs()) {
            break;
        }
    }
    0.5 * (lo + hi)
}
