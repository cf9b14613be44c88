//! Jump conditions for shocks in self-similar potential flow.
//!
//! At a shock point `xi` with downstream-pointing unit normal `n` the
//! conditions are continuity of the tangential pseudo-velocity, conservation
//! of mass flux `rho_u zn_u = rho_d zn_d`, and continuity of the Bernoulli
//! expression `pi(rho) + |z|^2 / 2`. Pseudo-velocities are `z = v - xi`.

use crate::error::{Error, Result};
use crate::gas::GasModel;
use crate::roots;
use crate::vec2::Vec2;

/// Upstream normal pseudo-Mach numbers within this distance of 1 yield the
/// zero-strength (vanishing) shock.
pub const VANISH_TOL: f64 = 1e-10;

/// Constant state: density and velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowState {
    pub rho: f64,
    pub v: Vec2,
}

impl FlowState {
    pub fn new(rho: f64, v: Vec2) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Domain(format!("density must be positive, got {rho}")));
        }
        Ok(FlowState { rho, v })
    }

    /// The state as seen from the similarity point `xi`.
    pub fn pseudo(&self, gas: &GasModel, xi: Vec2) -> Result<PseudoState> {
        let z = self.v - xi;
        let c = gas.sound_speed(self.rho)?;
        Ok(PseudoState { xi, z, mach: z.norm() / c })
    }
}

/// Pseudo-velocity `z = v - xi` and pseudo-Mach number `L = |z| / c` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PseudoState {
    pub xi: Vec2,
    pub z: Vec2,
    pub mach: f64,
}

/// One point of a shock with both adjacent states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockSolution {
    pub xi: Vec2,
    /// Unit normal pointing downstream.
    pub n: Vec2,
    /// `n` rotated counterclockwise by 90 degrees.
    pub t: Vec2,
    pub upstream: FlowState,
    pub downstream: FlowState,
    pub zn_u: f64,
    pub zn_d: f64,
    /// Tangential pseudo-velocity, shared by both sides.
    pub zt: f64,
    /// Shock speed `xi . n`.
    pub sigma: f64,
    pub c_u: f64,
    pub c_d: f64,
    /// Zero-strength shock: the upstream state was normal-sonic.
    pub vanishing: bool,
}

impl ShockSolution {
    pub fn z_u(&self) -> Vec2 {
        self.upstream.v - self.xi
    }

    pub fn z_d(&self) -> Vec2 {
        self.downstream.v - self.xi
    }

    /// Downstream pseudo-Mach number `L_d`.
    pub fn mach_d(&self) -> f64 {
        self.z_d().norm() / self.c_d
    }

    pub fn mach_u(&self) -> f64 {
        self.z_u().norm() / self.c_u
    }

    /// Upstream normal pseudo-Mach number `zn_u / c_u`.
    pub fn normal_mach_u(&self) -> f64 {
        self.zn_u / self.c_u
    }

    /// Galilean shift: moves the shock point and both velocities by `d`.
    pub fn translated(&self, d: Vec2) -> ShockSolution {
        let xi = self.xi + d;
        ShockSolution {
            xi,
            upstream: FlowState { v: self.upstream.v + d, ..self.upstream },
            downstream: FlowState { v: self.downstream.v + d, ..self.downstream },
            sigma: xi.dot(self.n),
            ..*self
        }
    }

    /// The same straight shock evaluated at another point of its line.
    /// States are constant along a straight shock; only `xi` moves.
    pub fn moved_to(&self, xi: Vec2) -> ShockSolution {
        let s = (xi - self.xi).dot(self.t);
        let xi = self.xi + s * self.t;
        ShockSolution { xi, zt: (self.upstream.v - xi).dot(self.t), ..*self }
    }
}

/// Signed residuals `(mass, bernoulli)` of a shock:
/// `rho_d zn_d - rho_u zn_u` and `pi(rho_d) - pi(rho_u) - (zn_u^2 - zn_d^2) / 2`,
/// with the normal components recomputed from the stored states.
pub fn shock_residual(gas: &GasModel, sol: &ShockSolution) -> Result<(f64, f64)> {
    let zn_u = (sol.upstream.v - sol.xi).dot(sol.n);
    let zn_d = (sol.downstream.v - sol.xi).dot(sol.n);
    let mass = sol.downstream.rho * zn_d - sol.upstream.rho * zn_u;
    let bern = gas.pi(sol.downstream.rho)? - gas.pi(sol.upstream.rho)? - 0.5 * (zn_u - zn_d) * (zn_u + zn_d);
    Ok((mass, bern))
}

/// Compression `s = rho_d / rho_u - 1` of the admissible shock with upstream
/// normal pseudo-Mach number `mach_n > 1`.
///
/// Eliminating `zn_d = zn_u / (1 + s)` leaves
/// `J(s) = mach_n^2 (2 + s) / (2 (1 + s)^2)` where `J` is
/// [`GasModel::pi_jump_ratio`]; the trivial root `s = 0` has been divided out.
pub fn normal_compression(gas: &GasModel, mach_n: f64) -> Result<f64> {
    if !(mach_n > 1.0) {
        return Err(Error::NoShock { mach_n });
    }
    let m2 = mach_n * mach_n;
    let resid = |s: f64| gas.pi_jump_ratio(s) - m2 * (2.0 + s) / (2.0 * (1.0 + s) * (1.0 + s));
    let f0 = 1.0 - m2;
    let mut hi = 1.0;
    let mut fhi = resid(hi);
    let mut lo = 0.0;
    let mut flo = f0;
    let mut k = 0;
    while fhi < 0.0 {
        lo = hi;
        flo = fhi;
        hi *= 2.0;
        fhi = resid(hi);
        k += 1;
        if k > 200 || !fhi.is_finite() {
            return Err(Error::Overflow { mach_n });
        }
    }
    let mut f = resid;
    roots::brent_with_values(&mut f, lo, flo, hi, fhi, 0.0)
}

/// Downstream state of the shock through `xi` with downstream normal `n`.
pub fn downstream_state(gas: &GasModel, upstream: &FlowState, xi: Vec2, n: Vec2) -> Result<ShockSolution> {
    let n = n.normalized().ok_or_else(|| Error::Domain("shock normal must be a nonzero finite vector".into()))?;
    let t = n.perp();
    let z_u = upstream.v - xi;
    let zn_u = z_u.dot(n);
    let zt = z_u.dot(t);
    if !(zn_u > 0.0) {
        return Err(Error::Orientation { zn_u });
    }
    let c_u = gas.sound_speed(upstream.rho)?;
    let mach_n = zn_u / c_u;

    let (rho_d, zn_d, vanishing) = if (mach_n - 1.0).abs() <= VANISH_TOL {
        (upstream.rho, zn_u, true)
    } else if mach_n < 1.0 {
        return Err(Error::NoShock { mach_n });
    } else {
        let s = normal_compression(gas, mach_n)?;
        (upstream.rho * (1.0 + s), zn_u / (1.0 + s), false)
    };
    let c_d = gas.sound_speed(rho_d)?;
    let v_d = xi + zt * t + zn_d * n;
    Ok(ShockSolution {
        xi,
        n,
        t,
        upstream: *upstream,
        downstream: FlowState { rho: rho_d, v: v_d },
        zn_u,
        zn_d,
        zt,
        sigma: xi.dot(n),
        c_u,
        c_d,
        vanishing,
    })
}

/// Straight incident shock separating the quiescent-side state `Q` (upstream)
/// from the `I` state (downstream). The shock is the line `xi . normal = sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentShock {
    /// Unit normal pointing from `Q` into `I`.
    pub normal: Vec2,
    pub sigma: f64,
    pub rho_i: f64,
    pub c_i: f64,
    pub v_i: Vec2,
    pub rho_q: f64,
    pub c_q: f64,
    pub v_q: Vec2,
}

impl IncidentShock {
    /// Position of a vertical shock on the x-axis (equals its speed).
    pub fn xi_s(&self) -> f64 {
        -self.sigma
    }

    /// Normal pseudo-velocity on the `Q` side (the shock's speed relative to `Q`).
    pub fn zn_q(&self) -> f64 {
        self.v_q.dot(self.normal) - self.sigma
    }

    pub fn zn_i(&self) -> f64 {
        self.v_i.dot(self.normal) - self.sigma
    }

    pub fn residuals(&self, gas: &GasModel) -> Result<(f64, f64)> {
        let (zq, zi) = (self.zn_q(), self.zn_i());
        let mass = self.rho_i * zi - self.rho_q * zq;
        let bern = gas.pi(self.rho_i)? - gas.pi(self.rho_q)? - 0.5 * (zq - zi) * (zq + zi);
        Ok((mass, bern))
    }

    /// Whether `xi` lies on the `I` side of the shock line.
    pub fn on_i_side(&self, xi: Vec2) -> bool {
        xi.dot(self.normal) > self.sigma
    }
}

/// Incident shock with `Q` state velocity `v_q`, `I` state velocity `v_i`
/// (the `I` state is the gas reference state) and downstream normal `normal`.
/// `v_i - v_q` must be parallel to `normal`.
fn solve_incident(gas: &GasModel, mach_i: f64, v_i: Vec2, v_q: Vec2, normal: Vec2) -> Result<IncidentShock> {
    let rho_i = gas.rho_ref();
    let c_i = gas.c_ref();
    let none = || Error::NoIncidentShock { mach: mach_i, gamma: gas.gamma() };
    // normal velocity jump; Q is upstream so zn_q = zn_i + jump with jump > 0
    let jump = (v_q - v_i).dot(normal);
    if !(jump > 0.0) {
        return Err(none());
    }
    let j2 = jump * jump;
    if let Some(bound) = gas.vacuum_bound() {
        if 0.5 * j2 + bound >= 0.0 {
            return Err(none());
        }
    }
    // Unknown l = ln(rho_q / rho_i) < 0; with w = 1 - rho_q / rho_i the Q-side
    // normal speed is jump / w and Bernoulli becomes h(l) = 0, h decreasing.
    // The log keeps strong isothermal shocks (rho_q ~ 1e-20) representable.
    let h = |l: f64| -> f64 {
        let w = -l.exp_m1();
        match gas.pi(rho_i * l.exp()) {
            Ok(p) => p + j2 / w - 0.5 * j2,
            Err(_) => f64::NEG_INFINITY,
        }
    };
    let mut hi = -std::f64::consts::LN_2;
    let mut hhi = h(hi);
    while hhi <= 0.0 {
        hi *= 0.5;
        hhi = h(hi);
        if hi > -1e-300 {
            return Err(none());
        }
    }
    let mut lo = hi;
    let mut hlo = hhi;
    while hlo > 0.0 {
        lo *= 2.0;
        hlo = h(lo);
        if lo < -1e4 {
            return Err(none());
        }
    }
    let mut f = h;
    let l = roots::brent_with_values(&mut f, lo, hlo, hi, hhi, 0.0)?;
    let w = -l.exp_m1();
    let rho_q = rho_i * l.exp();
    let zn_q = jump / w;
    let sigma = v_q.dot(normal) - zn_q;
    Ok(IncidentShock { normal, sigma, rho_i, c_i, v_i, rho_q, c_q: gas.sound_speed(rho_q)?, v_q })
}

/// Vertical incident shock moving into gas at rest: `v_Q = 0`,
/// `v_I = (M_I c_I, 0)`, `rho_I = rho_ref`, `c_I = c_ref`, normal `(-1, 0)`.
///
/// Fails with [`Error::NoIncidentShock`] when matching the `I` state would
/// need a vacuum ahead of the shock.
pub fn vertical_incident_shock(gas: &GasModel, mach_i: f64) -> Result<IncidentShock> {
    if !(mach_i > 0.0) || !mach_i.is_finite() {
        return Err(Error::Domain(format!("M_I must be positive, got {mach_i}")));
    }
    let v_i = Vec2::new(mach_i * gas.c_ref(), 0.0);
    solve_incident(gas, mach_i, v_i, Vec2::ZERO, Vec2::new(-1.0, 0.0))
}

/// Incident shock inclined by `beta_q` from vertical (positive tilts its top
/// toward the downstream wall), for a downstream wall at polar angle `theta`.
///
/// The `Q` state moves along that wall (slip) and `v_I = (M_I c_I, 0)` moves
/// along the upstream wall; tangential continuity fixes the speed of `Q`.
/// `beta_q = 0` is the vertical shock with `Q` at rest.
pub fn incident_shock(gas: &GasModel, mach_i: f64, beta_q: f64, theta: f64) -> Result<IncidentShock> {
    if beta_q == 0.0 {
        return vertical_incident_shock(gas, mach_i);
    }
    if !(mach_i > 0.0) || !mach_i.is_finite() {
        return Err(Error::Domain(format!("M_I must be positive, got {mach_i}")));
    }
    let line_angle = std::f64::consts::FRAC_PI_2 - beta_q;
    if !(line_angle > theta && line_angle < std::f64::consts::PI) {
        return Err(Error::Domain(format!(
            "incident inclination {beta_q} must leave a Q sector between the shock and the wall at {theta}"
        )));
    }
    let tangent = Vec2::from_angle(line_angle);
    let normal = tangent.perp();
    let v_i = Vec2::new(mach_i * gas.c_ref(), 0.0);
    let q_speed = v_i.dot(tangent) / (line_angle - theta).cos();
    let v_q = q_speed * Vec2::from_angle(theta);
    solve_incident(gas, mach_i, v_i, v_q, normal)
}
