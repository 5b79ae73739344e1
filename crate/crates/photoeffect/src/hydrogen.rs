//! Hydrogen ground state: closed-form wave function, gradient, Fourier
//! transform, and the red-bound quantities.
//!
//! The spatial part `psi_1(x) = C_1 exp(-|x|/r_1)` is stored without the
//! `exp(-i omega_1 t)` phase; stationary formulas only ever need the
//! spatial part, so callers apply the phase themselves when they need it.

use crate::units::{self, PhysicalConstants};
use serde::Serialize;

/// Ground-state data of the hydrogen atom in Hartree atomic units.
#[derive(Debug, Clone, Copy)]
pub struct HydrogenGroundState {
    /// Normalization amplitude `C_1 = (pi r_1^3)^(-1/2)`.
    pub c1: f64,
    /// Bohr radius, `hbar^2/(m e^2) = 1` a.u.
    pub r1: f64,
    /// Ground frequency `E_1/hbar = -1/2` a.u. (negative).
    pub omega1: f64,
    /// Ground energy `-m e^4 / (2 hbar^2) = -1/2` Hartree (negative).
    pub e1: f64,
}

impl HydrogenGroundState {
    pub fn new() -> Self {
        let r1 = 1.0;
        Self {
            c1: 1.0 / (std::f64::consts::PI * r1 * r1 * r1).sqrt(),
            r1,
            omega1: -0.5,
            e1: -0.5,
        }
    }

    /// Spatial part of the ground-state wave function at `x`.
    ///
    /// Strictly positive and radially symmetric.
    pub fn psi1(&self, x: [f64; 3]) -> f64 {
        let r = norm3(x);
        self.c1 * (-r / self.r1).exp()
    }

    /// Derivative of `psi1` along the polarization axis `e_3`:
    /// `d psi1 / d x^3 = -(x^3 / (r_1 |x|)) psi1(x)`, odd in `x^3`.
    ///
    /// At the exact origin the cusp leaves the directional derivative
    /// undefined; this returns 0 there by the symmetry convention.
    /// Quadrature nodes never land on that single point.
    pub fn grad3_psi1(&self, x: [f64; 3]) -> f64 {
        let r = norm3(x);
        if r == 0.0 {
            return 0.0;
        }
        -(x[2] / (self.r1 * r)) * self.psi1(x)
    }

    /// Fourier transform `int exp(i q.y) psi1(y) d^3y`
    /// `= C_1 * 8 pi r_1^3 / (1 + (|q| r_1)^2)^2`.
    ///
    /// Real, positive, radially symmetric and monotone decreasing in `|q|`.
    pub fn psi1_fourier(&self, q: [f64; 3]) -> f64 {
        self.psi1_fourier_radial(norm3(q))
    }

    /// Same transform as a function of `|q|` alone.
    pub fn psi1_fourier_radial(&self, q_abs: f64) -> f64 {
        let qr = q_abs * self.r1;
        let denom = 1.0 + qr * qr;
        self.c1 * 8.0 * std::f64::consts::PI * self.r1.powi(3) / (denom * denom)
    }

    /// Red-bound quantities in both unit systems.
    pub fn red_bound(&self) -> RedBoundReport {
        RedBoundReport::new(self)
    }
}

impl Default for HydrogenGroundState {
    fn default() -> Self {
        Self::new()
    }
}

/// Threshold frequency, wavenumber and wavelength of the photoeffect.
///
/// Atomic-unit fields are exact in the fixed-nucleus model
/// (`omega_red = |omega_1| = 1/2`, `k_1 = omega_red/c`, `lambda = 2 pi/k_1`).
/// The SI-facing fields carry the finite-nuclear-mass correction through
/// the hydrogen Rydberg constant, which is what the measured Lyman edge
/// at 911.76 Å reflects; within each unit system the three numbers are
/// mutually consistent.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RedBoundReport {
    /// Threshold angular frequency, a.u.
    pub omega_red_au: f64,
    /// Threshold angular frequency, 1/s.
    pub omega_red_si: f64,
    /// Threshold wavenumber `omega_red / c`, bohr^-1.
    pub k1_au: f64,
    /// Threshold wavenumber, m^-1.
    pub k1_si: f64,
    /// Threshold wavelength `2 pi / k_1`, bohr.
    pub lambda_red_au: f64,
    /// Threshold wavelength, Ångström.
    pub lambda_red_angstrom: f64,
}

impl RedBoundReport {
    fn new(ground: &HydrogenGroundState) -> Self {
        let constants = PhysicalConstants::new();
        let omega_red_au = ground.omega1.abs();
        let k1_au = omega_red_au / constants.light_speed;
        let lambda_red_au = 2.0 * std::f64::consts::PI / k1_au;

        let r_h = constants.rydberg_hydrogen_per_meter;
        let k1_si = 2.0 * std::f64::consts::PI * r_h;
        let omega_red_si = units::LIGHT_SPEED_SI * k1_si;
        let lambda_red_m = 1.0 / r_h;

        Self {
            omega_red_au,
            omega_red_si,
            k1_au,
            k1_si,
            lambda_red_au,
            lambda_red_angstrom: lambda_red_m * 1e10,
        }
    }
}

pub(crate) fn norm3(x: [f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::gauss_legendre;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    /// Brute-force 3D quadrature of `g(y)` over a ball, in spherical
    /// coordinates with a product Gauss x Gauss x trapezoid rule. Kept
    /// independent of any closed form it is used to check.
    fn quad3_ball<F: Fn([f64; 3]) -> f64>(g: F, r_max: f64, nr: usize, nth: usize, nph: usize) -> f64 {
        let (rn, rw) = gauss_legendre(nr);
        let (tn, tw) = gauss_legendre(nth);
        let mut total = 0.0;
        for (r01, wr) in rn.iter().zip(&rw) {
            let r = 0.5 * r_max * (r01 + 1.0);
            let wr = wr * 0.5 * r_max;
            for (mu, wt) in tn.iter().zip(&tw) {
                let s = (1.0 - mu * mu).sqrt();
                for j in 0..nph {
                    let phi = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / nph as f64;
                    let wp = 2.0 * std::f64::consts::PI / nph as f64;
                    let y = [r * s * phi.cos(), r * s * phi.sin(), r * mu];
                    total += wr * wt * wp * r * r * g(y);
                }
            }
        }
        total
    }

    #[test]
    fn normalization_integral_is_one() {
        let ground = HydrogenGroundState::new();
        let norm = quad3_ball(|y| ground.psi1(y).powi(2), 40.0, 160, 24, 8);
        assert_relative_eq!(norm, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn psi1_at_origin_and_one_decay_length() {
        let ground = HydrogenGroundState::new();
        assert_relative_eq!(ground.psi1([0.0; 3]), 0.5641895835477563, max_relative = 1e-12);
        assert_relative_eq!(
            ground.psi1([0.0, 0.0, 1.0]),
            ground.c1 / std::f64::consts::E,
            max_relative = 1e-12
        );
    }

    #[test]
    fn grad3_along_polarization_axis() {
        let ground = HydrogenGroundState::new();
        assert_relative_eq!(
            ground.grad3_psi1([0.0, 0.0, 1.0]),
            -ground.c1 / std::f64::consts::E,
            max_relative = 1e-12
        );
        assert_eq!(ground.grad3_psi1([1.0, 0.0, 0.0]), 0.0);
        assert_eq!(ground.grad3_psi1([0.0; 3]), 0.0);
    }

    #[test]
    fn grad3_matches_central_difference() {
        let ground = HydrogenGroundState::new();
        let h = 1e-4;
        let points: [[f64; 3]; 5] = [
            [0.3, -0.2, 0.9],
            [1.0, 1.0, 1.0],
            [-0.5, 0.1, -2.0],
            [2.0, 0.0, 0.7],
            [0.0, 3.0, -0.4],
        ];
        for x in points {
            let up = ground.psi1([x[0], x[1], x[2] + h]);
            let dn = ground.psi1([x[0], x[1], x[2] - h]);
            let fd = (up - dn) / (2.0 * h);
            assert!((ground.grad3_psi1(x) - fd).abs() < 1e-6, "at {x:?}");
        }
    }

    #[test]
    fn fourier_transform_closed_form_anchors() {
        let ground = HydrogenGroundState::new();
        // q = 0 -> 8 sqrt(pi); |q| = 1 -> 8 sqrt(pi) / 4 at r1 = 1.
        assert_relative_eq!(
            ground.psi1_fourier([0.0; 3]),
            8.0 * std::f64::consts::PI.sqrt(),
            max_relative = 1e-12
        );
        assert_relative_eq!(
            ground.psi1_fourier([0.0, 1.0, 0.0]),
            2.0 * std::f64::consts::PI.sqrt(),
            max_relative = 1e-12
        );
    }

    /// 3D quadrature of `cos(q.y) psi1(y)` over a ball in spherical
    /// coordinates whose polar axis is aligned with `q`, so the azimuthal
    /// oscillation is flat and the trapezoid in `phi` converges.
    fn oscillatory_overlap_oracle(ground: &HydrogenGroundState, q: [f64; 3]) -> f64 {
        let q_abs = norm3(q);
        let axis = if q_abs > 0.0 { [q[0] / q_abs, q[1] / q_abs, q[2] / q_abs] } else { [0.0, 0.0, 1.0] };
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

        let (rn, rw) = gauss_legendre(320);
        let (tn, tw) = gauss_legendre(160);
        let n_phi = 16;
        let r_max = 36.0;
        let mut total = 0.0;
        for (r01, wr) in rn.iter().zip(&rw) {
            let r = 0.5 * r_max * (r01 + 1.0);
            let wr = wr * 0.5 * r_max;
            for (mu, wt) in tn.iter().zip(&tw) {
                let s = (1.0 - mu * mu).sqrt();
                let phase = (q_abs * r * mu).cos();
                for j in 0..n_phi {
                    let phi = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n_phi as f64;
                    let wp = 2.0 * std::f64::consts::PI / n_phi as f64;
                    let (sp, cp) = phi.sin_cos();
                    let y = [
                        r * (mu * axis[0] + s * (cp * p1[0] + sp * p2[0])),
                        r * (mu * axis[1] + s * (cp * p1[1] + sp * p2[1])),
                        r * (mu * axis[2] + s * (cp * p1[2] + sp * p2[2])),
                    ];
                    total += wr * wt * wp * r * r * phase * ground.psi1(y);
                }
            }
        }
        total
    }

    #[test]
    fn fourier_transform_matches_brute_force_quadrature() {
        let ground = HydrogenGroundState::new();
        // Deterministic pseudo-random directions and magnitudes |q| <= 3.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rand01 = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10 {
            let q_abs = 3.0 * rand01();
            let mu = 2.0 * rand01() - 1.0;
            let ph = 2.0 * std::f64::consts::PI * rand01();
            let s = (1.0 - mu * mu).sqrt();
            let q = [q_abs * s * ph.cos(), q_abs * s * ph.sin(), q_abs * mu];
            // Imaginary part of int exp(i q.y) psi1 vanishes by parity.
            let oracle = oscillatory_overlap_oracle(&ground, q);
            assert_relative_eq!(ground.psi1_fourier(q), oracle, max_relative = 1e-6);
        }
    }

    #[test]
    fn red_bound_values() {
        let report = HydrogenGroundState::new().red_bound();
        assert_eq!(report.omega_red_au, 0.5);
        // Paper's Lyman-edge numbers.
        assert!((report.lambda_red_angstrom - 911.76).abs() / 911.76 < 5e-4);
        assert!((report.k1_si - 6.8e7).abs() / 6.8e7 < 0.02);
        // Per-system consistency.
        assert_relative_eq!(report.k1_si * report.lambda_red_angstrom * 1e-10, 2.0 * std::f64::consts::PI, max_relative = 1e-12);
        assert_relative_eq!(report.omega_red_si / report.k1_si, units::LIGHT_SPEED_SI, max_relative = 1e-12);
        assert_relative_eq!(report.lambda_red_au, 2.0 * std::f64::consts::PI / report.k1_au, max_relative = 1e-12);
    }

    #[test]
    fn red_bound_frequency_near_paper_rounding() {
        let report = HydrogenGroundState::new().red_bound();
        assert!((report.omega_red_si - 20.5e15).abs() / 20.5e15 < 0.01);
        let converted = units::from_atomic(report.omega_red_au, units::Dimension::Frequency);
        assert!((converted.value - 20.5e15).abs() / 20.5e15 < 0.01);
    }

    proptest! {
        #[test]
        fn psi1_is_even(x in prop::array::uniform3(-10.0f64..10.0)) {
            let ground = HydrogenGroundState::new();
            let mirrored = [-x[0], -x[1], -x[2]];
            prop_assert!((ground.psi1(x) - ground.psi1(mirrored)).abs() < 1e-14);
        }

        #[test]
        fn grad3_is_odd_in_x3(x in prop::array::uniform3(-10.0f64..10.0)) {
            let ground = HydrogenGroundState::new();
            let mirrored = [x[0], x[1], -x[2]];
            prop_assert!((ground.grad3_psi1(x) + ground.grad3_psi1(mirrored)).abs() < 1e-14);
        }

        #[test]
        fn fourier_monotone_decreasing(q1 in 0.0f64..5.0, dq in 1e-6f64..5.0) {
            let ground = HydrogenGroundState::new();
            prop_assert!(
                ground.psi1_fourier_radial(q1 + dq) < ground.psi1_fourier_radial(q1)
            );
        }
    }
}
