//! Plain-text `key = value` configuration for the numeric defaults.
//! Unknown keys and malformed lines are rejected with their line number.

use photoeffect::helmholtz::QuadratureSpec;

/// Numeric defaults the config file may override; command-line flags take
/// precedence over anything set here.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub quadrature: QuadratureSpec,
    pub lap_x_max: f64,
    pub lap_n_points: usize,
    pub lap_dt: f64,
    pub lap_stride: usize,
    pub lap_absorber_fraction: f64,
    pub lap_absorber_strength: f64,
    pub lap_source_width: f64,
    pub minimax_r_max: f64,
    pub minimax_n_points: usize,
    pub minimax_decay_width: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            quadrature: QuadratureSpec::default(),
            lap_x_max: 40.0,
            lap_n_points: 4096,
            lap_dt: 0.01,
            lap_stride: 50,
            lap_absorber_fraction: 0.2,
            lap_absorber_strength: 4.0,
            lap_source_width: 1.0,
            minimax_r_max: 60.0,
            minimax_n_points: 6000,
            minimax_decay_width: 10.0,
        }
    }
}

impl RunConfig {
    /// Parse `key = value` lines; `#` starts a comment. Errors carry the
    /// 1-based line number.
    pub fn apply_file(&mut self, text: &str) -> Result<(), String> {
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("config line {line_no}: expected `key = value`, got `{raw}`"));
            };
            let key = key.trim();
            let value = value.trim();
            self.apply_pair(key, value)
                .map_err(|e| format!("config line {line_no}: {e}"))?;
        }
        Ok(())
    }

    fn apply_pair(&mut self, key: &str, value: &str) -> Result<(), String> {
        let as_f64 = || value.parse::<f64>().map_err(|_| format!("`{value}` is not a number"));
        let as_usize =
            || value.parse::<usize>().map_err(|_| format!("`{value}` is not a count"));
        match key {
            "quadrature.radial_cutoff" => self.quadrature.radial_cutoff = as_f64()?,
            "quadrature.node_budget" => self.quadrature.node_budget = as_usize()?,
            "quadrature.singular_shell_radius" => {
                self.quadrature.singular_shell_radius = as_f64()?
            }
            "quadrature.target_rel_error" => self.quadrature.target_rel_error = as_f64()?,
            "lap.x_max" => self.lap_x_max = as_f64()?,
            "lap.n_points" => self.lap_n_points = as_usize()?,
            "lap.dt" => self.lap_dt = as_f64()?,
            "lap.stride" => self.lap_stride = as_usize()?,
            "lap.absorber_fraction" => self.lap_absorber_fraction = as_f64()?,
            "lap.absorber_strength" => self.lap_absorber_strength = as_f64()?,
            "lap.source_width" => self.lap_source_width = as_f64()?,
            "minimax.r_max" => self.minimax_r_max = as_f64()?,
            "minimax.n_points" => self.minimax_n_points = as_usize()?,
            "minimax.decay_width" => self.minimax_decay_width = as_f64()?,
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }
}
