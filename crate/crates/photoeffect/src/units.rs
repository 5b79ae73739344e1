//! Hartree atomic units and exact conversions to SI-facing units.
//!
//! Internally everything is expressed in Hartree atomic units:
//! `hbar = m_e = |e| = 1`, `c = 1/alpha`. The electron charge is `e = -1`.
//! In this system the hydrogen formulas reduce to exact small rationals
//! (`r_1 = 1`, `omega_1 = -1/2`), which keeps float noise out of the core.
//!
//! Conversion factors are CODATA 2018 values compiled in as configuration
//! data; they are mutually consistent to better than 1e-9 relative.

use serde::Serialize;

/// Fine structure constant (CODATA 2018).
pub const FINE_STRUCTURE_ALPHA: f64 = 7.297_352_569_3e-3;

/// Hartree energy in electron volts (CODATA 2018).
pub const HARTREE_IN_EV: f64 = 27.211_386_245_988;

/// Bohr radius in meters (CODATA 2018).
pub const BOHR_IN_METERS: f64 = 5.291_772_109_03e-11;

/// Atomic unit of time in seconds (CODATA 2018), `hbar / E_h`.
pub const ATOMIC_TIME_IN_SECONDS: f64 = 2.418_884_326_585_7e-17;

/// Proton-to-electron mass ratio (CODATA 2018).
pub const PROTON_ELECTRON_MASS_RATIO: f64 = 1836.152_673_43;

/// Speed of light in vacuum, m/s (exact).
pub const LIGHT_SPEED_SI: f64 = 299_792_458.0;

/// Electron charge in atomic units (`e < 0`).
pub const ELECTRON_CHARGE: f64 = -1.0;

/// The atomic-unit constant set plus the SI conversion factors.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, atomic units (identically 1).
    pub hbar: f64,
    /// Electron mass, atomic units (identically 1).
    pub electron_mass: f64,
    /// Magnitude of the elementary charge, atomic units (identically 1).
    pub elementary_charge_magnitude: f64,
    /// Speed of light in atomic units, `1/alpha`.
    pub light_speed: f64,
    /// Fine structure constant.
    pub fine_structure_alpha: f64,
    /// One Hartree in eV.
    pub hartree_in_ev: f64,
    /// One bohr in meters.
    pub bohr_in_meters: f64,
    /// One atomic time unit in seconds.
    pub atomic_time_in_seconds: f64,
    /// Rydberg constant for an infinite-mass nucleus, m^-1.
    /// Derived as `alpha / (4 pi a_0)`.
    pub rydberg_infinite_per_meter: f64,
    /// Rydberg constant of physical hydrogen, m^-1: the infinite-mass value
    /// scaled by the reduced-mass ratio `1/(1 + m_e/m_p)`. This is the
    /// constant behind the measured Lyman edge at 911.76 Å.
    pub rydberg_hydrogen_per_meter: f64,
    /// Reduced-mass ratio `mu/m_e = 1/(1 + m_e/m_p)`.
    pub reduced_mass_ratio: f64,
}

impl PhysicalConstants {
    pub fn new() -> Self {
        let alpha = FINE_STRUCTURE_ALPHA;
        let rydberg_infinite = alpha / (4.0 * std::f64::consts::PI * BOHR_IN_METERS);
        let reduced_mass_ratio = 1.0 / (1.0 + 1.0 / PROTON_ELECTRON_MASS_RATIO);
        Self {
            hbar: 1.0,
            electron_mass: 1.0,
            elementary_charge_magnitude: 1.0,
            light_speed: 1.0 / alpha,
            fine_structure_alpha: alpha,
            hartree_in_ev: HARTREE_IN_EV,
            bohr_in_meters: BOHR_IN_METERS,
            atomic_time_in_seconds: ATOMIC_TIME_IN_SECONDS,
            rydberg_infinite_per_meter: rydberg_infinite,
            rydberg_hydrogen_per_meter: rydberg_infinite * reduced_mass_ratio,
            reduced_mass_ratio,
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// Speed of light in atomic units.
pub fn light_speed_au() -> f64 {
    1.0 / FINE_STRUCTURE_ALPHA
}

/// Physical dimensions supported by the conversion layer.
///
/// Each dimension converts to one fixed SI-facing unit:
/// energy <-> eV, length <-> m, time <-> s, frequency <-> s^-1 (angular),
/// wavenumber <-> m^-1, voltage <-> V, velocity <-> m/s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Dimension {
    Energy,
    Length,
    Time,
    Frequency,
    Wavenumber,
    Voltage,
    Velocity,
    Dimensionless,
}

impl Dimension {
    pub const ALL: [Dimension; 8] = [
        Dimension::Energy,
        Dimension::Length,
        Dimension::Time,
        Dimension::Frequency,
        Dimension::Wavenumber,
        Dimension::Voltage,
        Dimension::Velocity,
        Dimension::Dimensionless,
    ];
}

/// A value tagged with its physical dimension, expressed in the SI-facing
/// unit of that dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantity {
    pub value: f64,
    pub dimension: Dimension,
}

impl Quantity {
    pub fn new(value: f64, dimension: Dimension) -> Self {
        Self { value, dimension }
    }
}

/// SI-facing value of one atomic unit of the given dimension.
///
/// 1 a.u. energy = 27.211 eV, 1 a.u. length = a_0 m, 1 a.u. voltage =
/// 27.211 V, and so on. Voltage shares the Hartree number because the
/// charge unit is |e| and the SI-facing energy unit is the eV.
pub fn si_per_atomic(dim: Dimension) -> f64 {
    match dim {
        Dimension::Energy => HARTREE_IN_EV,
        Dimension::Length => BOHR_IN_METERS,
        Dimension::Time => ATOMIC_TIME_IN_SECONDS,
        Dimension::Frequency => 1.0 / ATOMIC_TIME_IN_SECONDS,
        Dimension::Wavenumber => 1.0 / BOHR_IN_METERS,
        Dimension::Voltage => HARTREE_IN_EV,
        Dimension::Velocity => BOHR_IN_METERS / ATOMIC_TIME_IN_SECONDS,
        Dimension::Dimensionless => 1.0,
    }
}

/// Convert an SI-facing quantity to Hartree atomic units.
pub fn to_atomic(q: Quantity) -> f64 {
    q.value / si_per_atomic(q.dimension)
}

/// Convert a value in Hartree atomic units to the SI-facing unit of `dim`.
pub fn from_atomic(x: f64, dim: Dimension) -> Quantity {
    Quantity::new(x * si_per_atomic(dim), dim)
}

/// Angular wavenumber (a.u.) of light with the given vacuum wavelength in
/// Ångström: `k = 2 pi / lambda` converted to bohr^-1.
pub fn wavelength_angstrom_to_wavenumber_au(lambda_angstrom: f64) -> f64 {
    let lambda_m = lambda_angstrom * 1e-10;
    let k_si = 2.0 * std::f64::consts::PI / lambda_m;
    to_atomic(Quantity::new(k_si, Dimension::Wavenumber))
}

/// Angular frequency (a.u.) of light with the given vacuum wavelength in
/// Ångström: `omega = c k`.
pub fn wavelength_angstrom_to_omega_au(lambda_angstrom: f64) -> f64 {
    light_speed_au() * wavelength_angstrom_to_wavenumber_au(lambda_angstrom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn constants_mutually_consistent() {
        // (a_0 / t_au) / c_SI must equal alpha: the velocity unit is alpha*c.
        let v_au = BOHR_IN_METERS / ATOMIC_TIME_IN_SECONDS;
        assert_relative_eq!(
            v_au / LIGHT_SPEED_SI,
            FINE_STRUCTURE_ALPHA,
            max_relative = 1e-9
        );
        let c = PhysicalConstants::new();
        assert_relative_eq!(c.light_speed * c.fine_structure_alpha, 1.0, epsilon = 1e-15);
        assert!(c.hartree_in_ev > 0.0 && c.bohr_in_meters > 0.0 && c.atomic_time_in_seconds > 0.0);
    }

    #[test]
    fn one_bohr_is_one_au() {
        let q = Quantity::new(BOHR_IN_METERS, Dimension::Length);
        assert_relative_eq!(to_atomic(q), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn light_speed_converts_to_inverse_alpha() {
        let q = Quantity::new(LIGHT_SPEED_SI, Dimension::Velocity);
        assert_relative_eq!(to_atomic(q), 1.0 / FINE_STRUCTURE_ALPHA, max_relative = 1e-9);
    }

    #[test]
    fn lyman_edge_wavelength_to_wavenumber() {
        // 911.76 Å -> 2 pi / lambda in bohr^-1.
        let k = wavelength_angstrom_to_wavenumber_au(911.76);
        assert_relative_eq!(k, 0.003646, max_relative = 2e-4);
    }

    #[test]
    fn one_hartree_in_ev() {
        let q = from_atomic(1.0, Dimension::Energy);
        assert!((q.value - 27.211).abs() < 0.001);
    }

    #[test]
    fn half_au_frequency_near_paper_value() {
        // |omega_1| = 0.5 a.u.; the paper rounds to 20.5e15 1/s.
        let q = from_atomic(0.5, Dimension::Frequency);
        assert_relative_eq!(q.value, 2.07e16, max_relative = 2e-3);
        assert!((q.value - 20.5e15).abs() / 20.5e15 < 0.01);
    }

    #[test]
    fn zero_converts_to_zero_everywhere() {
        for dim in Dimension::ALL {
            assert_eq!(from_atomic(0.0, dim).value, 0.0);
            assert_eq!(to_atomic(Quantity::new(0.0, dim)), 0.0);
        }
    }

    #[test]
    fn rydberg_constants() {
        let c = PhysicalConstants::new();
        assert_relative_eq!(c.rydberg_infinite_per_meter, 1.0973731568e7, max_relative = 1e-9);
        // 1/R_H is the hydrogen Lyman edge.
        assert_relative_eq!(1e10 / c.rydberg_hydrogen_per_meter, 911.763, max_relative = 1e-5);
    }

    proptest! {
        #[test]
        fn roundtrip_all_dimensions(x in -1e12f64..1e12, idx in 0usize..8) {
            let dim = Dimension::ALL[idx];
            let q = from_atomic(x, dim);
            let back = to_atomic(q);
            prop_assert!((back - x).abs() <= 1e-12 * x.abs().max(1e-300));
        }
    }
}
