//! Shock polars: all admissible shocks through one point for a fixed
//! upstream state, parametrized by the normal angle `beta`.
//!
//! `beta` is the counterclockwise angle from the upstream pseudo-velocity
//! `z_u` to the downstream normal. Positive `beta` turns the flow clockwise
//! (negative turning), so counterclockwise turning needs `beta < 0`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gas::GasModel;
use crate::roots;
use crate::shock::{downstream_state, FlowState, ShockSolution};
use crate::vec2::Vec2;

/// Turning angles within this distance of the critical one are treated as
/// critical.
pub const CRITICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarPoint {
    pub beta: f64,
    pub n: Vec2,
    pub downstream: FlowState,
    pub mach_d: f64,
    /// Signed angle from `z_u` to `z_d`.
    pub turning: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarCurve {
    /// Upstream state at the origin, so its velocity equals `z_u`.
    pub upstream: FlowState,
    pub samples: Vec<PolarPoint>,
    pub beta_vanish: f64,
    /// Largest turning magnitude and the positive `beta` attaining it.
    pub tau_star: f64,
    pub beta_star: f64,
    /// Turning magnitude and positive `beta` where `L_d = 1`; absent when
    /// the downstream state is supersonic along the whole polar.
    pub tau_sonic: Option<f64>,
    pub beta_sonic: Option<f64>,
}

/// Which way the flow is turned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Counterclockwise turning (`beta < 0`).
    Left,
    /// Clockwise turning (`beta > 0`).
    Right,
}

/// Both solutions of a turning problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningSolution {
    /// Larger `|beta|`, weaker shock, larger `L_d`.
    pub weak: ShockSolution,
    pub strong: ShockSolution,
    /// Critical (detachment) turning magnitude of the polar.
    pub tau_star: f64,
}

/// One-parameter shock family at the origin with upstream velocity `z_u`.
#[derive(Debug, Clone, Copy)]
pub struct ShockFamily {
    gas: GasModel,
    upstream: FlowState,
    dir: Vec2,
    beta_vanish: f64,
}

impl ShockFamily {
    pub fn new(gas: &GasModel, rho_u: f64, z_u: Vec2) -> Result<Self> {
        let upstream = FlowState::new(rho_u, z_u)?;
        let c_u = gas.sound_speed(rho_u)?;
        let speed = z_u.norm();
        if !(speed > c_u) || !speed.is_finite() {
            return Err(Error::SubsonicUpstream { mach: speed / c_u });
        }
        Ok(ShockFamily { gas: *gas, upstream, dir: z_u * (1.0 / speed), beta_vanish: (c_u / speed).acos() })
    }

    pub fn upstream(&self) -> FlowState {
        self.upstream
    }

    pub fn beta_vanish(&self) -> f64 {
        self.beta_vanish
    }

    pub fn shock(&self, beta: f64) -> Result<ShockSolution> {
        downstream_state(&self.gas, &self.upstream, Vec2::ZERO, self.dir.rotated(beta))
    }

    /// Signed turning of the shock at `beta`.
    pub fn turning(&self, beta: f64) -> Result<f64> {
        Ok(self.turning_of(beta, &self.shock(beta)?))
    }

    /// In shock coordinates `z_u` sits at angle `-beta` from the normal and
    /// `z_d = (zn_d, zt)` with `zt = -|z_u| sin(beta)`. Using the exact `zt`
    /// keeps the normal shock at zero turning even when `zn_d` underflows
    /// toward zero for very strong shocks.
    fn turning_of(&self, beta: f64, sol: &ShockSolution) -> f64 {
        if sol.vanishing {
            return 0.0;
        }
        let zt = -self.upstream.v.norm() * beta.sin();
        zt.atan2(sol.zn_d) + beta
    }

    pub fn point(&self, beta: f64) -> Result<PolarPoint> {
        let sol = self.shock(beta)?;
        Ok(PolarPoint {
            beta,
            n: sol.n,
            downstream: sol.downstream,
            mach_d: sol.mach_d(),
            turning: self.turning_of(beta, &sol),
        })
    }

    /// Rate of change of the turning angle along the polar, from the analytic
    /// derivative of the downstream velocity.
    fn turning_rate(&self, beta: f64) -> f64 {
        match self.shock(beta) {
            Ok(mut sol) => {
                sol.zt = -self.upstream.v.norm() * beta.sin();
                let (a, b) = polar_derivatives(&sol);
                (sol.zn_d * b - sol.zt * a) / (sol.zn_d * sol.zn_d + sol.zt * sol.zt)
            }
            Err(_) => f64::NAN,
        }
    }

    /// `(beta_star, tau_star)` for clockwise turning (`beta_star > 0`).
    pub fn critical(&self) -> Result<(f64, f64)> {
        let bv = self.beta_vanish;
        let mag = |b: f64| self.turning(b).map(|t| -t).unwrap_or(f64::NEG_INFINITY);
        let (b0, _) = roots::golden_max(mag, 0.0, bv, 1e-6 * bv);
        // the maximum is a simple root of the turning rate; polish it there
        let h = 1e-4 * bv;
        let (mut lo, mut hi) = ((b0 - h).max(0.0), (b0 + h).min(bv));
        let mut rate = |b: f64| self.turning_rate(b);
        let (mut flo, mut fhi) = (rate(lo), rate(hi));
        let mut widen = 0;
        while flo.signum() == fhi.signum() && widen < 20 {
            lo = (lo - h).max(bv * 1e-9);
            hi = (hi + h).min(bv * (1.0 - 1e-9));
            flo = rate(lo);
            fhi = rate(hi);
            widen += 1;
        }
        let beta = roots::brent_with_values(&mut rate, lo, flo, hi, fhi, 1e-15).unwrap_or(b0);
        Ok((beta, -self.turning(beta)?))
    }

    /// Positive `beta` with `L_d = 1`, if the polar crosses sonic.
    pub fn sonic(&self) -> Result<Option<f64>> {
        let f = |b: f64| self.shock(b).map(|s| s.mach_d() - 1.0).unwrap_or(f64::NAN);
        let f0 = f(0.0);
        if f0 >= 0.0 {
            return Ok(if f0 == 0.0 { Some(0.0) } else { None });
        }
        let bv = self.beta_vanish;
        let fv = f(bv);
        if !(fv > 0.0) {
            return Ok(None);
        }
        let mut g = f;
        roots::brent_with_values(&mut g, 0.0, f0, bv, fv, 1e-14).map(Some)
    }
}

/// Sampled shock polar with its critical, sonic and vanishing angles.
pub fn polar_curve(gas: &GasModel, rho_u: f64, z_u: Vec2, n_samples: usize) -> Result<PolarCurve> {
    if n_samples < 64 {
        return Err(Error::Domain(format!("need at least 64 polar samples, got {n_samples}")));
    }
    let fam = ShockFamily::new(gas, rho_u, z_u)?;
    let bv = fam.beta_vanish;
    let last = (n_samples - 1) as f64;
    let samples = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let beta = if i == 0 {
                -bv
            } else if i == n_samples - 1 {
                bv
            } else {
                -bv + 2.0 * bv * (i as f64 / last)
            };
            fam.point(beta)
        })
        .collect::<Result<Vec<_>>>()?;
    let (beta_star, tau_star) = fam.critical()?;
    let beta_sonic = fam.sonic()?;
    let tau_sonic = match beta_sonic {
        Some(b) => Some(-fam.turning(b)?),
        None => None,
    };
    Ok(PolarCurve { upstream: fam.upstream, samples, beta_vanish: bv, tau_star, beta_star, tau_sonic, beta_sonic })
}

/// Components of `d v_d / d beta` along the normal and tangent of `sol`.
///
/// Uses `d zn_d / d zn_u = zn_d (zn_u^2 - c_d^2) / (zn_u (zn_d^2 - c_d^2))`,
/// from differentiating mass and Bernoulli at fixed upstream density.
pub fn polar_derivatives(sol: &ShockSolution) -> (f64, f64) {
    if sol.vanishing {
        return (0.0, 0.0);
    }
    let c2 = sol.c_d * sol.c_d;
    let dzn = sol.zn_d * (sol.zn_u * sol.zn_u - c2) / (sol.zn_u * (sol.zn_d * sol.zn_d - c2));
    (sol.zt * (dzn - 1.0), sol.zn_d - sol.zn_u)
}

/// Weak and strong shocks turning `z_u` by `tau` toward `side`.
pub fn solve_turning(gas: &GasModel, rho_u: f64, z_u: Vec2, tau: f64, side: Side) -> Result<TurningSolution> {
    if !(tau >= 0.0) {
        return Err(Error::Domain(format!("turning angle must be non-negative, got {tau}")));
    }
    let fam = ShockFamily::new(gas, rho_u, z_u)?;
    let (beta_star, tau_star) = fam.critical()?;
    if tau > tau_star + CRITICAL_TOL {
        return Err(Error::NoReflectedShock { tau, tau_star });
    }
    let sign = match side {
        Side::Left => -1.0,
        Side::Right => 1.0,
    };
    if tau >= tau_star - CRITICAL_TOL {
        let s = fam.shock(sign * beta_star)?;
        return Ok(TurningSolution { weak: s, strong: s, tau_star });
    }
    let excess = |b: f64| fam.turning(b).map(|t| -t - tau).unwrap_or(f64::NAN);
    let root = |a: f64, b: f64| -> Result<f64> {
        let (fa, fb) = (excess(a), excess(b));
        // an endpoint already on or past tau is the root (tau = 0 hits both ends)
        if fa >= 0.0 && a != beta_star {
            return Ok(a);
        }
        if fb >= 0.0 && b != beta_star {
            return Ok(b);
        }
        let mut f = excess;
        roots::brent_with_values(&mut f, a, fa, b, fb, 1e-15)
    };
    let strong = root(0.0, beta_star)?;
    let weak = root(fam.beta_vanish, beta_star)?;
    Ok(TurningSolution { weak: fam.shock(sign * weak)?, strong: fam.shock(sign * strong)?, tau_star })
}
