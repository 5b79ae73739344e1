//! Limiting amplitudes of the driven stationary problem.
//!
//! For incident frequency `omega = c k > 0` the two stationary profiles are
//! computed as free-space kernel convolutions over the exponentially
//! localized source:
//!
//! * `w_plus`: outgoing oscillatory kernel `exp(i k_r s)/(4 pi s)` with
//!   `k_r = sqrt(2 m (omega_1 + omega)/hbar) > 0` (requires
//!   `omega > |omega_1|`),
//! * `w_minus`: decaying kernel `exp(-kappa s)/(4 pi s)` with
//!   `kappa = sqrt(-2 m (omega_1 - omega)/hbar) > 0`.
//!
//! Both are `w(x) = -int K(|x-y|) f(y) dy` with source
//! `f_pm(y) = (e / hbar c) exp(pm i k y^1) grad_3 psi_1(y)`.
//!
//! The Coulomb term `2 e^2 m/(hbar^2 |x|) w` is dropped from the right
//! side; no Born-series correction is applied. The correction is of
//! relative order `alpha^2` near the atom and decays at infinity.
//!
//! # Quadrature
//!
//! Two deterministic product-Gauss spherical schemes share one complex
//! radial wavenumber `ktilde` (real for `w_plus`, `i kappa` for `w_minus`,
//! complex for the absorbing regularization):
//!
//! * far evaluation points (`|x| >= radial_cutoff + 2`): source-centered
//!   spherical grid with the polar axis along `x`, so the kernel phase is
//!   azimuth-free and the azimuthal integrand is a low-degree trigonometric
//!   polynomial handled exactly by a short trapezoid rule;
//! * near points: target-centered spherical grid, where the volume element
//!   cancels the `1/|x-y|` singularity exactly and the oscillation
//!   `exp(i ktilde r)` is purely radial. Radial panels break at the source
//!   cusp radius `r = |x|` and refine inside `singular_shell_radius` of it;
//!   polar panels grade toward the source direction.
//!
//! Error estimates come from nested refinement: the same panel layout is
//! re-evaluated with half the Gauss order per axis (1/8 of the budget) and
//! the difference is reported.

use crate::hydrogen::{norm3, HydrogenGroundState};
use crate::numerics::composite_gauss;
use crate::units::{light_speed_au, ELECTRON_CHARGE};
use num_complex::Complex64;
use thiserror::Error;

/// Which limiting amplitude a driven problem targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

#[derive(Debug, Error)]
pub enum HelmholtzError {
    #[error("frequency must be positive, got omega = {0}")]
    InvalidFrequency(f64),
    #[error("omega = {omega} is at or below the threshold |omega_1| = {threshold}; no outgoing wave")]
    BelowThreshold { omega: f64, threshold: f64 },
    #[error("invalid evaluation request: {0}")]
    InvalidRange(String),
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("quadrature did not converge: estimated relative error {estimate:.3e} above target {target:.3e}")]
    QuadratureNonconvergence { estimate: f64, target: f64 },
}

/// Incident-wave data for one branch of the stationary problem.
#[derive(Debug, Clone, Copy)]
pub struct DrivenProblem {
    /// Incident wavenumber `k = omega/c`, a.u.
    pub k: f64,
    /// Incident angular frequency `omega = c k > 0`, a.u.
    pub omega: f64,
    pub ground: HydrogenGroundState,
    pub branch: Branch,
}

impl DrivenProblem {
    pub fn new(
        omega: f64,
        ground: HydrogenGroundState,
        branch: Branch,
    ) -> Result<Self, HelmholtzError> {
        if !(omega > 0.0) {
            return Err(HelmholtzError::InvalidFrequency(omega));
        }
        if branch == Branch::Plus && omega + ground.omega1 <= 0.0 {
            return Err(HelmholtzError::BelowThreshold {
                omega,
                threshold: ground.omega1.abs(),
            });
        }
        Ok(Self { k: omega / light_speed_au(), omega, ground, branch })
    }
}

/// Radiated wavenumber `k_r = sqrt(2 m (omega_1 + omega)/hbar)`.
pub fn k_r(problem: &DrivenProblem) -> Result<f64, HelmholtzError> {
    let arg = 2.0 * (problem.ground.omega1 + problem.omega);
    if arg <= 0.0 {
        return Err(HelmholtzError::BelowThreshold {
            omega: problem.omega,
            threshold: problem.ground.omega1.abs(),
        });
    }
    Ok(arg.sqrt())
}

/// Decay rate `kappa_minus = sqrt(-2 m (omega_1 - omega)/hbar)`,
/// positive for every `omega > 0`.
pub fn kappa_minus(problem: &DrivenProblem) -> f64 {
    (-2.0 * (problem.ground.omega1 - problem.omega)).sqrt()
}

/// Source of the `w_plus` equation:
/// `f_plus(x) = (e/(hbar c)) exp(i k x^1) grad_3 psi_1(x)`.
pub fn source_f_plus(x: [f64; 3], problem: &DrivenProblem) -> Complex64 {
    source(x, problem, 1.0)
}

/// Source of the `w_minus` equation, with the conjugate plane-wave phase.
pub fn source_f_minus(x: [f64; 3], problem: &DrivenProblem) -> Complex64 {
    source(x, problem, -1.0)
}

fn source(x: [f64; 3], problem: &DrivenProblem, phase_sign: f64) -> Complex64 {
    let pref = ELECTRON_CHARGE / light_speed_au();
    let phase = Complex64::from_polar(1.0, phase_sign * problem.k * x[0]);
    pref * phase * problem.ground.grad3_psi1(x)
}

/// Quadrature controls for the convolution evaluators.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Truncation radius of the source integral; the source decays like
    /// `exp(-r/r_1)`, so the default `20 r_1` truncates below `exp(-20)`.
    pub radial_cutoff: f64,
    /// Upper bound on quadrature nodes per evaluation (refined + coarse).
    pub node_budget: usize,
    /// Half-width of the refined radial band around the kernel/cusp radius
    /// in target-centered coordinates.
    pub singular_shell_radius: f64,
    /// Convergence target for the nested-refinement estimate.
    pub target_rel_error: f64,
}

impl QuadratureSpec {
    pub fn validated(self) -> Result<Self, HelmholtzError> {
        if self.radial_cutoff < 20.0 {
            return Err(HelmholtzError::InvalidSpec(format!(
                "radial_cutoff {} below 20 r_1",
                self.radial_cutoff
            )));
        }
        if !(self.target_rel_error > 0.0 && self.target_rel_error <= 0.1) {
            return Err(HelmholtzError::InvalidSpec(format!(
                "target_rel_error {} outside (0, 0.1]",
                self.target_rel_error
            )));
        }
        if self.singular_shell_radius <= 0.0 {
            return Err(HelmholtzError::InvalidSpec(
                "singular_shell_radius must be positive".into(),
            ));
        }
        Ok(self)
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            radial_cutoff: 20.0,
            node_budget: 6_000_000,
            singular_shell_radius: 1.0,
            target_rel_error: 1e-3,
        }
    }
}

/// One convolution value with its nested-refinement error estimate.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: Complex64,
    /// |refined - coarse|.
    pub abs_error: f64,
    /// `abs_error` relative to `max(|value|, local amplitude scale)`.
    pub rel_error: f64,
    pub nodes_used: usize,
}

/// Both limiting amplitudes of one incident frequency above threshold.
#[derive(Debug, Clone)]
pub struct LimitingAmplitudePair {
    pub k_r: f64,
    pub kappa_minus: f64,
    pub spec: QuadratureSpec,
    problem_plus: DrivenProblem,
    problem_minus: DrivenProblem,
}

impl LimitingAmplitudePair {
    pub fn new(
        omega: f64,
        ground: HydrogenGroundState,
        spec: QuadratureSpec,
    ) -> Result<Self, HelmholtzError> {
        let spec = spec.validated()?;
        let problem_plus = DrivenProblem::new(omega, ground, Branch::Plus)?;
        let problem_minus = DrivenProblem::new(omega, ground, Branch::Minus)?;
        Ok(Self {
            k_r: k_r(&problem_plus)?,
            kappa_minus: kappa_minus(&problem_minus),
            spec,
            problem_plus,
            problem_minus,
        })
    }

    pub fn w_plus(&self, x: [f64; 3]) -> Result<QuadratureResult, HelmholtzError> {
        w_plus(x, &self.problem_plus, &self.spec)
    }

    pub fn w_minus(&self, x: [f64; 3]) -> Result<QuadratureResult, HelmholtzError> {
        w_minus(x, &self.problem_minus, &self.spec)
    }

    pub fn problem_plus(&self) -> &DrivenProblem {
        &self.problem_plus
    }

    pub fn problem_minus(&self) -> &DrivenProblem {
        &self.problem_minus
    }
}

/// Outgoing limiting amplitude
/// `w_plus(x) = -int exp(i k_r |x-y|)/(4 pi |x-y|) f_plus(y) dy`.
pub fn w_plus(
    x: [f64; 3],
    problem: &DrivenProblem,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult, HelmholtzError> {
    let kr = k_r(problem)?;
    convolve(x, Complex64::new(kr, 0.0), 1.0, problem, spec)
}

/// Decaying limiting amplitude
/// `w_minus(x) = -int exp(-kappa |x-y|)/(4 pi |x-y|) f_minus(y) dy`.
pub fn w_minus(
    x: [f64; 3],
    problem: &DrivenProblem,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult, HelmholtzError> {
    let kappa = kappa_minus(problem);
    convolve(x, Complex64::new(0.0, kappa), -1.0, problem, spec)
}

/// `w_plus` computed with the complexified kernel wavenumber
/// `k_r(omega + i epsilon)` (positive imaginary part); converges to
/// `w_plus` as `epsilon -> 0+` and is identical to it at `epsilon = 0`.
pub fn limiting_absorption_w_plus(
    x: [f64; 3],
    problem: &DrivenProblem,
    spec: &QuadratureSpec,
    epsilon: f64,
) -> Result<QuadratureResult, HelmholtzError> {
    if epsilon < 0.0 {
        return Err(HelmholtzError::InvalidRange("epsilon must be >= 0".into()));
    }
    let ktilde = k_r_complex(problem, epsilon)?;
    convolve(x, ktilde, 1.0, problem, spec)
}

/// Complexified radiated wavenumber `sqrt(2 m (omega_1 + omega + i eps)/hbar)`
/// on the branch with positive imaginary part.
pub fn k_r_complex(problem: &DrivenProblem, epsilon: f64) -> Result<Complex64, HelmholtzError> {
    if problem.ground.omega1 + problem.omega <= 0.0 {
        return Err(HelmholtzError::BelowThreshold {
            omega: problem.omega,
            threshold: problem.ground.omega1.abs(),
        });
    }
    let z = 2.0 * Complex64::new(problem.ground.omega1 + problem.omega, epsilon);
    Ok(z.sqrt())
}

/// Finite-difference residual `(Delta_h + k_r^2) w_plus(x) - f_plus(x)`
/// with the 7-point Laplacian of step `h`.
///
/// All seven stencil evaluations share one target-centered node layout and
/// one frame, so the discrete values sit on a single smooth function and
/// the stencil does not amplify quadrature noise.
pub fn helmholtz_residual(
    problem: &DrivenProblem,
    spec: &QuadratureSpec,
    x: [f64; 3],
    h: f64,
) -> Result<Complex64, HelmholtzError> {
    let spec = spec.validated()?;
    let kr = k_r(problem)?;
    let d = norm3(x);
    if d < 10.0 * h {
        return Err(HelmholtzError::InvalidRange(format!(
            "stencil center |x| = {d} closer than 10 h = {} to the origin",
            10.0 * h
        )));
    }
    let ktilde = Complex64::new(kr, 0.0);
    let rule = NearRule::build(d + 2.0 * h, ktilde, &spec);
    let frame = Frame::toward_origin(x);

    let center = rule.eval(x, &frame, ktilde, 1.0, problem, 12, 24);
    let mut lap = -6.0 * center;
    for axis in 0..3 {
        for sign in [-1.0, 1.0] {
            let mut p = x;
            p[axis] += sign * h;
            lap += rule.eval(p, &frame, ktilde, 1.0, problem, 12, 24);
        }
    }
    lap /= h * h;
    Ok(lap + kr * kr * center - source_f_plus(x, problem))
}

/// Distance beyond the source cutoff from which the source-centered grid
/// is used.
const FAR_MARGIN: f64 = 2.0;

fn convolve(
    x: [f64; 3],
    ktilde: Complex64,
    phase_sign: f64,
    problem: &DrivenProblem,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult, HelmholtzError> {
    let spec = spec.validated()?;
    let d = norm3(x);
    if d > 10.0 * spec.radial_cutoff * (1.0 + 1e-12) {
        return Err(HelmholtzError::InvalidRange(format!(
            "|x| = {d} beyond validated range 10 * radial_cutoff = {}",
            10.0 * spec.radial_cutoff
        )));
    }
    if ktilde.re * spec.radial_cutoff > 1e4 {
        return Err(HelmholtzError::InvalidRange(format!(
            "k_r * radial_cutoff = {} beyond validated oscillation budget 1e4",
            ktilde.re * spec.radial_cutoff
        )));
    }

    let (refined, coarse, nodes_used) = if d >= spec.radial_cutoff + FAR_MARGIN {
        let rule = FarRule::build(ktilde, &spec);
        let frame = Frame::along(x);
        (
            rule.eval(x, &frame, ktilde, phase_sign, problem, 12, 24),
            rule.eval(x, &frame, ktilde, phase_sign, problem, 6, 12),
            rule.node_count(12, 24) + rule.node_count(6, 12),
        )
    } else {
        let rule = NearRule::build(d, ktilde, &spec);
        let frame = Frame::toward_origin(x);
        (
            rule.eval(x, &frame, ktilde, phase_sign, problem, 12, 24),
            rule.eval(x, &frame, ktilde, phase_sign, problem, 6, 12),
            rule.node_count(12, 24) + rule.node_count(6, 12),
        )
    };

    let abs_error = (refined - coarse).norm();
    let scale = refined.norm().max(amplitude_scale(d, problem));
    let rel_error = abs_error / scale;
    if rel_error > spec.target_rel_error {
        return Err(HelmholtzError::QuadratureNonconvergence {
            estimate: rel_error,
            target: spec.target_rel_error,
        });
    }
    Ok(QuadratureResult { value: refined, abs_error, rel_error, nodes_used })
}

/// Natural magnitude of `w` at distance `d`: the L1 norm of the source
/// times the kernel bound `1/(4 pi max(1, d))`. Used as the floor of the
/// relative-error denominator so nodal-set evaluations (true value 0)
/// report convergence instead of a 0/0 ratio.
fn amplitude_scale(d: f64, problem: &DrivenProblem) -> f64 {
    let source_l1 = 4.0 * std::f64::consts::PI * problem.ground.c1 / light_speed_au();
    source_l1 / (4.0 * std::f64::consts::PI * d.max(1.0))
}

/// Orthonormal frame with a chosen polar axis.
struct Frame {
    axis: [f64; 3],
    p1: [f64; 3],
    p2: [f64; 3],
}

impl Frame {
    fn along(x: [f64; 3]) -> Self {
        let d = norm3(x);
        let axis = if d > 0.0 { [x[0] / d, x[1] / d, x[2] / d] } else { [0.0, 0.0, 1.0] };
        Self::from_axis(axis)
    }

    fn toward_origin(x: [f64; 3]) -> Self {
        let d = norm3(x);
        let axis =
            if d > 0.0 { [-x[0] / d, -x[1] / d, -x[2] / d] } else { [0.0, 0.0, 1.0] };
        Self::from_axis(axis)
    }

    fn from_axis(axis: [f64; 3]) -> Self {
        let trial = if axis[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
        let dot = trial[0] * axis[0] + trial[1] * axis[1] + trial[2] * axis[2];
        let mut p1 = [trial[0] - dot * axis[0], trial[1] - dot * axis[1], trial[2] - dot * axis[2]];
        let n = norm3(p1);
        p1 = [p1[0] / n, p1[1] / n, p1[2] / n];
        let p2 = [
            axis[1] * p1[2] - axis[2] * p1[1],
            axis[2] * p1[0] - axis[0] * p1[2],
            axis[0] * p1[1] - axis[1] * p1[0],
        ];
        Self { axis, p1, p2 }
    }

    fn direction(&self, cos_t: f64, sin_t: f64, cos_p: f64, sin_p: f64) -> [f64; 3] {
        [
            cos_t * self.axis[0] + sin_t * (cos_p * self.p1[0] + sin_p * self.p2[0]),
            cos_t * self.axis[1] + sin_t * (cos_p * self.p1[1] + sin_p * self.p2[1]),
            cos_t * self.axis[2] + sin_t * (cos_p * self.p1[2] + sin_p * self.p2[2]),
        ]
    }
}

/// Panel layout shared by the refined and coarse passes. Node positions
/// depend on the Gauss order, the panels do not.
struct PanelLayout {
    radial_breaks: Vec<f64>,
    polar_breaks: Vec<f64>,
}

impl PanelLayout {
    fn node_count(&self, per_panel: usize, n_phi: usize) -> usize {
        (self.radial_breaks.len() - 1) * (self.polar_breaks.len() - 1) * per_panel * per_panel * n_phi
    }

    /// Scale panel counts down uniformly if the refined pass would exceed
    /// the node budget. Accuracy loss is then caught by the error estimate.
    fn clamp_to_budget(&mut self, budget: usize) {
        let planned = self.node_count(12, 24) + self.node_count(6, 12);
        if planned <= budget {
            return;
        }
        let factor = (budget as f64 / planned as f64).powf(0.5);
        self.radial_breaks = thin_breaks(&self.radial_breaks, factor);
        self.polar_breaks = thin_breaks(&self.polar_breaks, factor);
    }
}

fn thin_breaks(breaks: &[f64], factor: f64) -> Vec<f64> {
    let panels = breaks.len() - 1;
    let target = ((panels as f64 * factor).ceil() as usize).max(4).min(panels);
    if target == panels {
        return breaks.to_vec();
    }
    let mut out = Vec::with_capacity(target + 1);
    for j in 0..=target {
        let idx = (j as f64 / target as f64 * panels as f64).round() as usize;
        out.push(breaks[idx.min(panels)]);
    }
    out.dedup();
    out
}

fn fill_panels(breaks: &mut Vec<f64>, a: f64, b: f64, max_len: f64) {
    let n = ((b - a) / max_len).ceil().max(1.0) as usize;
    for j in 1..=n {
        breaks.push(a + (b - a) * j as f64 / n as f64);
    }
}

/// Source-centered rule for distant evaluation points.
struct FarRule {
    layout: PanelLayout,
}

impl FarRule {
    fn build(ktilde: Complex64, spec: &QuadratureSpec) -> Self {
        let r_max = spec.radial_cutoff;
        let osc = ktilde.re.abs();
        let radial_len = if osc > 1e-9 { (std::f64::consts::PI / (2.0 * osc)).min(1.0) } else { 1.0 };
        let mut radial_breaks = vec![0.0];
        fill_panels(&mut radial_breaks, 0.0, r_max, radial_len);

        // Kernel phase sweeps about 2 k_r r_max across the polar range.
        let periods = osc * r_max / std::f64::consts::PI;
        let m_polar = (10.0 + 3.0 * periods).ceil() as usize;
        let polar_breaks: Vec<f64> = (0..=m_polar)
            .map(|j| std::f64::consts::PI * j as f64 / m_polar as f64)
            .collect();

        let mut layout = PanelLayout { radial_breaks, polar_breaks };
        layout.clamp_to_budget(spec.node_budget);
        Self { layout }
    }

    fn node_count(&self, per_panel: usize, n_phi: usize) -> usize {
        self.layout.node_count(per_panel, n_phi)
    }

    fn eval(
        &self,
        x: [f64; 3],
        frame: &Frame,
        ktilde: Complex64,
        phase_sign: f64,
        problem: &DrivenProblem,
        per_panel: usize,
        n_phi: usize,
    ) -> Complex64 {
        let d = norm3(x);
        let (r_nodes, r_weights) = composite_gauss(&self.layout.radial_breaks, per_panel);
        let (t_nodes, t_weights) = composite_gauss(&self.layout.polar_breaks, per_panel);
        let phis = phi_table(n_phi);
        let w_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let pref = ELECTRON_CHARGE / light_speed_au();
        let ground = &problem.ground;
        let k = phase_sign * problem.k;

        let mut total = Complex64::default();
        for (&r, &wr) in r_nodes.iter().zip(&r_weights) {
            let envelope = ground.c1 * (-r / ground.r1).exp() / ground.r1;
            let radial_factor = wr * r * r * envelope;
            for (&theta, &wt) in t_nodes.iter().zip(&t_weights) {
                let (sin_t, cos_t) = theta.sin_cos();
                // |x - y| depends only on (r, theta) with the axis along x.
                let s = (d * d + r * r - 2.0 * d * r * cos_t).sqrt();
                let kernel = (Complex64::i() * ktilde * s).exp()
                    / (4.0 * std::f64::consts::PI * s);
                let shell = radial_factor * wt * sin_t * kernel;
                let mut phi_sum = Complex64::default();
                for &(cos_p, sin_p) in &phis {
                    let u = frame.direction(cos_t, sin_t, cos_p, sin_p);
                    // grad_3 psi_1(r u) = -u_3 C_1 exp(-r/r_1)/r_1; the
                    // envelope is folded into radial_factor.
                    let (s1, c1) = (k * r * u[0]).sin_cos();
                    phi_sum += Complex64::new(c1, s1) * (-u[2]);
                }
                total += shell * phi_sum * w_phi;
            }
        }
        -(pref * total)
    }
}

/// Target-centered rule; valid everywhere, required near and inside the
/// source region.
struct NearRule {
    layout: PanelLayout,
}

impl NearRule {
    fn build(d: f64, ktilde: Complex64, spec: &QuadratureSpec) -> Self {
        let r_max = d + spec.radial_cutoff;
        let osc = ktilde.re.abs();
        let base_len = if osc > 1e-9 { (std::f64::consts::PI / (2.0 * osc)).min(1.8) } else { 1.8 };
        let fine_len = base_len / 3.0;
        let shell = spec.singular_shell_radius;

        let mut radial_breaks = vec![0.0];
        let lo = (d - shell).max(0.0);
        let hi = (d + shell).min(r_max);
        if lo > 0.0 {
            fill_panels(&mut radial_breaks, 0.0, lo, base_len);
        }
        if hi > lo {
            fill_panels(&mut radial_breaks, lo, hi, fine_len);
        }
        if r_max > hi {
            fill_panels(&mut radial_breaks, hi, r_max, base_len);
        }

        // Polar panels graded quadratically toward the source direction
        // (theta = 0 points at the origin).
        let m_polar = ((0.9 * r_max).ceil() as usize).clamp(12, 48);
        let polar_breaks: Vec<f64> = (0..=m_polar)
            .map(|j| {
                let t = j as f64 / m_polar as f64;
                std::f64::consts::PI * t * t
            })
            .collect();

        let mut layout = PanelLayout { radial_breaks, polar_breaks };
        layout.clamp_to_budget(spec.node_budget);
        Self { layout }
    }

    fn node_count(&self, per_panel: usize, n_phi: usize) -> usize {
        self.layout.node_count(per_panel, n_phi)
    }

    fn eval(
        &self,
        x: [f64; 3],
        frame: &Frame,
        ktilde: Complex64,
        phase_sign: f64,
        problem: &DrivenProblem,
        per_panel: usize,
        n_phi: usize,
    ) -> Complex64 {
        let (r_nodes, r_weights) = composite_gauss(&self.layout.radial_breaks, per_panel);
        let (t_nodes, t_weights) = composite_gauss(&self.layout.polar_breaks, per_panel);
        let phis = phi_table(n_phi);
        let w_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let pref = ELECTRON_CHARGE / light_speed_au();
        let ground = &problem.ground;
        let k = phase_sign * problem.k;
        let inv_4pi = 1.0 / (4.0 * std::f64::consts::PI);

        let mut total = Complex64::default();
        for (&r, &wr) in r_nodes.iter().zip(&r_weights) {
            // Kernel times volume element: (r/4 pi) exp(i ktilde r).
            let kernel = (Complex64::i() * ktilde * r).exp() * (wr * r * inv_4pi);
            let mut angular = Complex64::default();
            for (&theta, &wt) in t_nodes.iter().zip(&t_weights) {
                let (sin_t, cos_t) = theta.sin_cos();
                let wt_s = wt * sin_t;
                for &(cos_p, sin_p) in &phis {
                    let u = frame.direction(cos_t, sin_t, cos_p, sin_p);
                    let y = [x[0] + r * u[0], x[1] + r * u[1], x[2] + r * u[2]];
                    let ry = norm3(y);
                    if ry == 0.0 {
                        continue;
                    }
                    let grad = -(y[2] / (ground.r1 * ry))
                        * ground.c1
                        * (-ry / ground.r1).exp();
                    let (s1, c1) = (k * y[0]).sin_cos();
                    angular += Complex64::new(c1, s1) * (grad * wt_s);
                }
            }
            total += kernel * angular * w_phi;
        }
        -(pref * total)
    }
}

fn phi_table(n_phi: usize) -> Vec<(f64, f64)> {
    (0..n_phi)
        .map(|j| {
            let phi = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n_phi as f64;
            (phi.cos(), phi.sin())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ground() -> HydrogenGroundState {
        HydrogenGroundState::new()
    }

    #[test]
    fn k_r_closed_form_points() {
        let p = DrivenProblem::new(1.0, ground(), Branch::Plus).unwrap();
        assert_relative_eq!(k_r(&p).unwrap(), 1.0, max_relative = 1e-14);
        let p = DrivenProblem::new(2.5, ground(), Branch::Plus).unwrap();
        assert_relative_eq!(k_r(&p).unwrap(), 2.0, max_relative = 1e-14);
        assert!(DrivenProblem::new(0.5, ground(), Branch::Plus).is_err());
    }

    #[test]
    fn kappa_minus_closed_form_points() {
        let p = DrivenProblem::new(1.0, ground(), Branch::Minus).unwrap();
        assert_relative_eq!(kappa_minus(&p), 3.0f64.sqrt(), max_relative = 1e-14);
        let p = DrivenProblem::new(0.5, ground(), Branch::Minus).unwrap();
        assert_relative_eq!(kappa_minus(&p), 2.0f64.sqrt(), max_relative = 1e-14);
        // Strictly increasing in omega.
        let mut prev = 0.0;
        for i in 1..40 {
            let p = DrivenProblem::new(0.1 * i as f64, ground(), Branch::Minus).unwrap();
            let k = kappa_minus(&p);
            assert!(k > prev);
            prev = k;
        }
    }

    #[test]
    fn sources_vanish_on_symmetry_plane_and_relate_by_conjugation() {
        let p = DrivenProblem::new(1.0, ground(), Branch::Plus).unwrap();
        assert_eq!(source_f_plus([0.7, -0.3, 0.0], &p), Complex64::default());
        assert_eq!(source_f_minus([0.7, -0.3, 0.0], &p), Complex64::default());

        let x = [0.4, 0.8, -1.3];
        let plus = source_f_plus(x, &p);
        let minus = source_f_minus(x, &p);
        assert!((minus - plus.conj()).norm() < 1e-15);
        // |f(x)| = |f(-x)|: unit-modulus phase times odd real factor.
        let mirrored = [-x[0], -x[1], -x[2]];
        assert_relative_eq!(
            source_f_plus(mirrored, &p).norm(),
            plus.norm(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn source_value_on_polarization_axis() {
        let p = DrivenProblem::new(1.0, ground(), Branch::Plus).unwrap();
        let got = source_f_plus([0.0, 0.0, 1.0], &p);
        let expected = ELECTRON_CHARGE / light_speed_au() * (-ground().c1 / std::f64::consts::E);
        assert_relative_eq!(got.re, expected, max_relative = 1e-12);
        assert_eq!(got.im, 0.0);
    }

    #[test]
    fn w_plus_vanishes_on_symmetry_plane() {
        let spec = QuadratureSpec::default();
        let p = DrivenProblem::new(1.0, ground(), Branch::Plus).unwrap();
        for x in [[0.0, 0.0, 0.0], [2.0, 1.0, 0.0], [-4.0, 0.5, 0.0]] {
            let res = w_plus(x, &p, &spec).unwrap();
            let floor = super::amplitude_scale(norm3(x), &p);
            assert!(
                res.value.norm() < 20.0 * spec.target_rel_error * floor,
                "w_plus({x:?}) = {} not small (floor {floor})",
                res.value.norm()
            );
        }
    }

    #[test]
    fn w_minus_vanishes_on_symmetry_plane() {
        let spec = QuadratureSpec::default();
        let p = DrivenProblem::new(1.0, ground(), Branch::Minus).unwrap();
        let res = w_minus([1.5, -2.0, 0.0], &p, &spec).unwrap();
        let floor = super::amplitude_scale(2.5, &p);
        assert!(res.value.norm() < 20.0 * spec.target_rel_error * floor);
    }

    #[test]
    fn w_plus_odd_under_x3_reflection() {
        let spec = QuadratureSpec::default();
        let p = DrivenProblem::new(1.0, ground(), Branch::Plus).unwrap();
        let x = [1.0, 0.5, 2.0];
        let a = w_plus(x, &p, &spec).unwrap();
        let b = w_plus([x[0], x[1], -x[2]], &p, &spec).unwrap();
        let err = (a.value + b.value).norm();
        assert!(
            err < 10.0 * (a.abs_error + b.abs_error).max(1e-3 * a.value.norm()),
            "antisymmetry violated: {err}"
        );
    }

    #[test]
    fn w_minus_decays_at_analytic_rate() {
        // epsilon_- = min(1/r_1, kappa_-) = 1 at omega = 1.
        let spec = QuadratureSpec::default();
        let p = DrivenProblem::new(1.0, ground(), Branch::Minus).unwrap();
        let values: Vec<f64> = [5.0, 10.0, 15.0]
            .iter()
            .map(|&z| w_minus([0.0, 0.0, z], &p, &spec).unwrap().value.norm())
            .collect();
        let slope_a = (values[1].ln() - values[0].ln()) / 5.0;
        let slope_b = (values[2].ln() - values[1].ln()) / 5.0;
        assert!(slope_a <= -0.9, "slope {slope_a}");
        assert!(slope_b <= -0.9, "slope {slope_b}");
    }

    #[test]
    fn limiting_absorption_reduces_to_w_plus() {
        let spec = QuadratureSpec::default();
        let p = DrivenProblem::new(1.0, ground(), Branch::Plus).unwrap();
        let x = [0.0, 1.0, 2.0];
        let exact = w_plus(x, &p, &spec).unwrap().value;
        let at_zero = limiting_absorption_w_plus(x, &p, &spec, 0.0).unwrap().value;
        assert_eq!(exact, at_zero);

        let err_small = (limiting_absorption_w_plus(x, &p, &spec, 1e-2).unwrap().value - exact).norm();
        let err_large = (limiting_absorption_w_plus(x, &p, &spec, 1e-1).unwrap().value - exact).norm();
        assert!(err_small <= err_large, "{err_small} vs {err_large}");
    }

    #[test]
    fn complexified_wavenumber_has_positive_imaginary_part() {
        let p = DrivenProblem::new(1.0, ground(), Branch::Plus).unwrap();
        for eps in [1e-3, 1e-2, 1e-1] {
            assert!(k_r_complex(&p, eps).unwrap().im > 0.0);
        }
    }

    #[test]
    fn range_validation() {
        let spec = QuadratureSpec::default();
        let p = DrivenProblem::new(1.0, ground(), Branch::Plus).unwrap();
        assert!(matches!(
            w_plus([300.0, 0.0, 0.0], &p, &spec),
            Err(HelmholtzError::InvalidRange(_))
        ));
        let bad = QuadratureSpec { radial_cutoff: 5.0, ..spec };
        assert!(matches!(
            w_plus([1.0, 0.0, 0.0], &p, &bad),
            Err(HelmholtzError::InvalidSpec(_))
        ));
    }
}
