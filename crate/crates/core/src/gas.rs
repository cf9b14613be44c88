//! Polytropic (gamma-law) closures for isentropic potential flow.
//!
//! Pressure is `p = c_ref^2 rho_ref / gamma * (rho/rho_ref)^gamma`; every other
//! thermodynamic quantity follows from it. `pi` is the enthalpy-like potential
//! with `pi' = p'/rho`, normalized so that `pi(rho_ref) = 0`.

use crate::error::{Error, Result};

/// Below this distance from 1 the isothermal (logarithmic) formulas are used.
pub const ISOTHERMAL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    gamma: f64,
    rho_ref: f64,
    c_ref: f64,
}

impl GasModel {
    pub fn new(gamma: f64, rho_ref: f64, c_ref: f64) -> Result<Self> {
        if !(gamma >= 1.0) || !gamma.is_finite() {
            return Err(Error::Domain(format!("gamma must be >= 1, got {gamma}")));
        }
        if !(rho_ref > 0.0) || !rho_ref.is_finite() {
            return Err(Error::Domain(format!("rho_ref must be > 0, got {rho_ref}")));
        }
        if !(c_ref > 0.0) || !c_ref.is_finite() {
            return Err(Error::Domain(format!("c_ref must be > 0, got {c_ref}")));
        }
        Ok(GasModel { gamma, rho_ref, c_ref })
    }

    /// Gas with `rho_ref = c_ref = 1`, the normalization used throughout the
    /// reflection module (`rho_I = c_I = 1`).
    pub fn normalized(gamma: f64) -> Result<Self> {
        GasModel::new(gamma, 1.0, 1.0)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn rho_ref(&self) -> f64 {
        self.rho_ref
    }

    pub fn c_ref(&self) -> f64 {
        self.c_ref
    }

    pub fn is_isothermal(&self) -> bool {
        (self.gamma - 1.0).abs() < ISOTHERMAL_EPS
    }

    fn check_density(rho: f64) -> Result<()> {
        if rho > 0.0 && rho.is_finite() {
            Ok(())
        } else {
            Err(Error::Domain(format!("density must be positive, got {rho}")))
        }
    }

    /// `pi(rho)`: strictly increasing, zero at `rho_ref`.
    pub fn pi(&self, rho: f64) -> Result<f64> {
        Self::check_density(rho)?;
        let ln_ratio = (rho / self.rho_ref).ln();
        let c2 = self.c_ref * self.c_ref;
        if self.is_isothermal() {
            Ok(c2 * ln_ratio)
        } else {
            let gm1 = self.gamma - 1.0;
            Ok(c2 * (gm1 * ln_ratio).exp_m1() / gm1)
        }
    }

    /// Lowest attainable value of `pi` (the vacuum limit `rho -> 0`), if finite.
    pub fn vacuum_bound(&self) -> Option<f64> {
        if self.is_isothermal() {
            None
        } else {
            Some(-self.c_ref * self.c_ref / (self.gamma - 1.0))
        }
    }

    /// Inverse of [`GasModel::pi`].
    pub fn pi_inv(&self, q: f64) -> Result<f64> {
        if !q.is_finite() {
            return Err(Error::Domain(format!("enthalpy must be finite, got {q}")));
        }
        let c2 = self.c_ref * self.c_ref;
        if self.is_isothermal() {
            return Ok(self.rho_ref * (q / c2).exp());
        }
        let gm1 = self.gamma - 1.0;
        let arg = gm1 * q / c2;
        if arg <= -1.0 {
            return Err(Error::Vacuum { q, bound: -c2 / gm1 });
        }
        Ok(self.rho_ref * (arg.ln_1p() / gm1).exp())
    }

    pub fn sound_speed(&self, rho: f64) -> Result<f64> {
        Self::check_density(rho)?;
        if self.is_isothermal() {
            return Ok(self.c_ref);
        }
        Ok(self.c_ref * (0.5 * (self.gamma - 1.0) * (rho / self.rho_ref).ln()).exp())
    }

    pub fn pressure(&self, rho: f64) -> Result<f64> {
        Self::check_density(rho)?;
        Ok(self.c_ref * self.c_ref * self.rho_ref / self.gamma * (rho / self.rho_ref).powf(self.gamma))
    }

    /// Density whose sound speed is `c`. For isothermal gas only `c = c_ref`
    /// is attainable and `rho_ref` is returned.
    pub fn density_for_sound_speed(&self, c: f64) -> Result<f64> {
        if !(c > 0.0) {
            return Err(Error::Domain(format!("sound speed must be positive, got {c}")));
        }
        if self.is_isothermal() {
            if ((c - self.c_ref) / self.c_ref).abs() > 1e-12 {
                return Err(Error::Domain(format!(
                    "isothermal gas has constant sound speed {}, requested {c}",
                    self.c_ref
                )));
            }
            return Ok(self.rho_ref);
        }
        Ok(self.rho_ref * (2.0 * (c / self.c_ref).ln() / (self.gamma - 1.0)).exp())
    }

    /// `(pi(rho (1+s)) - pi(rho)) / (c(rho)^2 s)` for a compression `s > -1`.
    ///
    /// Depends only on `gamma` and `s`; tends to 1 as `s -> 0` and keeps full
    /// relative precision there, which the weak-shock solver relies on.
    pub fn pi_jump_ratio(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 1.0;
        }
        let l = s.ln_1p();
        if self.is_isothermal() {
            l / s
        } else {
            let gm1 = self.gamma - 1.0;
            (gm1 * l).exp_m1() / (gm1 * s)
        }
    }
}
