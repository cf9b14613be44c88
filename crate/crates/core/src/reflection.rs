//! Local regular reflection at a wedge corner.
//!
//! Frame: the corner is the origin, the upstream wall `A` is the negative
//! x-axis, the downstream wall `B` is the ray at polar angle `theta`, and the
//! gas fills the sector between them above `A`. Behind the incident shock the
//! state `I` moves along `A` with `v_I = (M_I, 0)`, `rho_I = c_I = 1`; ahead of
//! it lies `Q`. The incident shock meets `B` at the reflection point `xi_R`,
//! where a straight reflected shock turns `I` parallel to `B` into the state `R`.

use rayon::prelude::*;

use crate::envelope::{integrate_envelope, EnvelopeCurve, EnvelopeStops, Termination, Wall};
use crate::error::{Error, Result};
use crate::gas::GasModel;
use crate::polar::{solve_turning, ShockFamily, Side};
use crate::roots;
use crate::shock::{downstream_state, incident_shock, normal_compression, FlowState, IncidentShock, ShockSolution};
use crate::vec2::Vec2;

/// Step of the downward sweep that brackets every transition angle.
pub const SWEEP_STEP: f64 = 1e-3;
/// Bisection tolerance for transition angles.
pub const ANGLE_TOL: f64 = 1e-10;

/// Verdicts on the three hypotheses of the existence result for regular
/// reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdicts {
    /// `L_R > 1`: the state behind the reflected shock is pseudo-supersonic at `xi_R`.
    pub sonic_ok: bool,
    /// `|v_I . n_B| <= c_I`.
    pub v_in_b_ok: bool,
    /// The envelope from the sonic point reaches wall `A` first.
    pub envelope_ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SonicPoints {
    /// Ordered along the shock tangent.
    pub points: [Vec2; 2],
}

impl SonicPoints {
    pub fn nearest_to(&self, p: Vec2) -> Vec2 {
        let [a, b] = self.points;
        if a.dist(p) <= b.dist(p) {
            a
        } else {
            b
        }
    }
}

/// Reflection without the envelope verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalReflection {
    pub gas: GasModel,
    pub mach_i: f64,
    pub beta_q: f64,
    pub theta: f64,
    pub wall_a: Wall,
    pub wall_b: Wall,
    pub v_i: Vec2,
    pub incident: IncidentShock,
    pub xi_r: Vec2,
    /// Turning magnitude needed to make the flow parallel to `B`.
    pub tau: f64,
    pub tau_star: f64,
    /// Weak reflected shock at `xi_r`.
    pub reflected: ShockSolution,
    pub mach_r: f64,
    pub xi_c0: Vec2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RRConfiguration {
    pub local: LocalReflection,
    pub envelope: EnvelopeCheck,
    pub verdicts: Verdicts,
}

impl std::ops::Deref for RRConfiguration {
    type Target = LocalReflection;
    fn deref(&self) -> &LocalReflection {
        &self.local
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeCheck {
    pub ok: bool,
    pub termination: Termination,
    pub end_point: Vec2,
    pub curve: EnvelopeCurve,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionAngles {
    pub theta_d: f64,
    pub theta_s: f64,
    pub theta_n: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FeasibilityStatus {
    NoIncidentShock,
    EnvelopeFails,
    Feasible,
}

impl FeasibilityStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FeasibilityStatus::NoIncidentShock => "NoIncidentShock",
            FeasibilityStatus::EnvelopeFails => "EnvelopeFails",
            FeasibilityStatus::Feasible => "Feasible",
        }
    }
}

impl std::fmt::Display for FeasibilityStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityRecord {
    pub gamma: f64,
    pub mach_i: f64,
    pub status: FeasibilityStatus,
    pub theta_s: Option<f64>,
}

/// Result of [`vdzero_shock`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VdZero {
    pub eta_star: f64,
    pub downstream: FlowState,
    pub shock: ShockSolution,
}

fn walls(theta: f64) -> Result<(Wall, Wall)> {
    let interior = Vec2::from_angle(0.5 * (std::f64::consts::PI + theta));
    let a = Wall::new(Vec2::ZERO, Vec2::new(-1.0, 0.0), interior)?;
    let b = Wall::new(Vec2::ZERO, Vec2::from_angle(theta), interior)?;
    Ok((a, b))
}

impl LocalReflection {
    /// Points strictly inside the gas sector.
    pub fn in_domain(&self, p: Vec2) -> bool {
        self.wall_a.side(p) > 0.0 && self.wall_b.side(p) > 0.0
    }

    pub fn in_i_region(&self, p: Vec2) -> bool {
        self.in_domain(p) && self.incident.on_i_side(p)
    }

    pub fn in_q_region(&self, p: Vec2) -> bool {
        self.in_domain(p) && !self.incident.on_i_side(p)
    }

    /// `v_I . n_B`, with `n_B` the unit normal of wall `B`.
    pub fn v_i_normal_b(&self) -> f64 {
        self.v_i.dot(self.wall_b.dir.perp())
    }
}

/// Incident shock, reflection point and the turning the reflected shock must
/// provide. Shared by the full construction and the detachment sweep.
struct Approach {
    incident: IncidentShock,
    xi_r: Vec2,
    z_i: Vec2,
    tau: f64,
    side: Side,
}

fn approach(gas: &GasModel, mach_i: f64, beta_q: f64, theta: f64) -> Result<Approach> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::Domain(format!("wedge angle must lie in (0, pi), got {theta}")));
    }
    let incident = incident_shock(gas, mach_i, beta_q, theta)?;
    let e_b = Vec2::from_angle(theta);
    let cos_bn = e_b.dot(incident.normal);
    if cos_bn.abs() <= 1e-12 {
        return Err(Error::NoReflectionPoint);
    }
    let s = incident.sigma / cos_bn;
    if !(s > 0.0) {
        return Err(Error::NoReflectionPoint);
    }
    let xi_r = s * e_b;
    let z_i = incident.v_i - xi_r;
    // R must move along B; of the two wall directions take the nearer one
    let (ta, tb) = (z_i.angle_to(e_b), z_i.angle_to(-e_b));
    let turn = if ta.abs() <= tb.abs() { ta } else { tb };
    let side = if turn >= 0.0 { Side::Left } else { Side::Right };
    Ok(Approach { incident, xi_r, z_i, tau: turn.abs(), side })
}

/// Local reflection at wedge angle `theta` without the envelope check.
pub fn local_reflection(gas: &GasModel, mach_i: f64, beta_q: f64, theta: f64) -> Result<LocalReflection> {
    let ap = approach(gas, mach_i, beta_q, theta)?;
    let (wall_a, wall_b) = walls(theta)?;
    let turning = solve_turning(gas, ap.incident.rho_i, ap.z_i, ap.tau, ap.side)?;
    let reflected = turning.weak.translated(ap.xi_r);
    let xi_c0 = sonic_points(&reflected, 0.0)?.nearest_to(ap.xi_r);
    Ok(LocalReflection {
        gas: *gas,
        mach_i,
        beta_q,
        theta,
        wall_a,
        wall_b,
        v_i: ap.incident.v_i,
        incident: ap.incident,
        xi_r: ap.xi_r,
        tau: ap.tau,
        tau_star: turning.tau_star,
        mach_r: reflected.mach_d(),
        reflected,
        xi_c0,
    })
}

/// Full local configuration including all three verdicts.
pub fn build_local_rr(gas: &GasModel, mach_i: f64, beta_q: f64, theta: f64) -> Result<RRConfiguration> {
    let local = local_reflection(gas, mach_i, beta_q, theta)?;
    let envelope = envelope_check(&local)?;
    let verdicts = Verdicts {
        sonic_ok: local.mach_r > 1.0,
        v_in_b_ok: local.v_i_normal_b().abs() <= local.incident.c_i,
        envelope_ok: envelope.ok,
    };
    Ok(RRConfiguration { local, envelope, verdicts })
}

fn envelope_check(local: &LocalReflection) -> Result<EnvelopeCheck> {
    let stops = EnvelopeStops { wall_a: Some(local.wall_a), wall_b: Some(local.wall_b), ..EnvelopeStops::default() };
    let c_i = local.incident.c_i;
    let start = local.xi_c0;
    // a sonic point within roundoff of the circle counts as on it
    let r0 = (start - local.v_i).norm();
    let start = if r0 < c_i && r0 > c_i * (1.0 - 1e-9) { local.v_i + (start - local.v_i) * (c_i / r0) } else { start };
    let curve = integrate_envelope(&local.gas, start, local.v_i, c_i, &stops)?;
    Ok(EnvelopeCheck {
        ok: curve.termination == Termination::HitWallA,
        termination: curve.termination,
        end_point: curve.end_point,
        curve,
    })
}

/// Envelope from `xi_C0` about `v_I`; passes when it ends on wall `A`.
pub fn check_envelope_condition(config: &RRConfiguration) -> Result<EnvelopeCheck> {
    envelope_check(&config.local)
}

/// Intersections of a straight shock with the circle about its downstream
/// velocity of radius `c_d sqrt(1 - epsilon)`, where `L_d = sqrt(1 - epsilon)`.
pub fn sonic_points(sol: &ShockSolution, epsilon: f64) -> Result<SonicPoints> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::Domain(format!("epsilon must lie in [0, 1), got {epsilon}")));
    }
    let radius = sol.c_d * (1.0 - epsilon).sqrt();
    let zt = (sol.downstream.v - sol.xi).dot(sol.t);
    let zn = (sol.downstream.v - sol.xi).dot(sol.n);
    let disc = (radius - zn.abs()) * (radius + zn.abs());
    if disc < 0.0 {
        return Err(Error::NoSonicPoint);
    }
    let root = disc.sqrt();
    Ok(SonicPoints { points: [sol.xi + (zt - root) * sol.t, sol.xi + (zt + root) * sol.t] })
}

/// Shock through `(0, eta)` with downstream normal `(sin beta, -cos beta)`
/// behind which the flow has no vertical velocity, for upstream `(0, v_u_y)`.
pub fn vdzero_shock(gas: &GasModel, v_u_y: f64, rho_u: f64, beta: f64) -> Result<VdZero> {
    if !(v_u_y < 0.0) {
        return Err(Error::Domain(format!("upstream must move downward, got v_y = {v_u_y}")));
    }
    if !(beta.abs() < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!("|beta| must be below pi/2, got {beta}")));
    }
    let upstream = FlowState::new(rho_u, Vec2::new(0.0, v_u_y))?;
    let c_u = gas.sound_speed(rho_u)?;
    let cos_b = beta.cos();
    // parametrize by the upstream normal Mach number m > 1:
    // eta = v_u_y + m c_u / cos(beta), v_d_y = v_u_y + m c_u cos(beta) s / (1 + s)
    let vy = |m: f64| -> f64 {
        match normal_compression(gas, m) {
            Ok(s) => v_u_y + m * c_u * cos_b * s / (1.0 + s),
            Err(_) => f64::NAN,
        }
    };
    let (mut lo, mut hi) = (1.0, 2.0);
    let flo = v_u_y;
    let mut fhi = vy(hi);
    while fhi < 0.0 {
        lo = hi;
        hi *= 2.0;
        fhi = vy(hi);
        if !fhi.is_finite() || hi > 1e12 {
            return Err(Error::NoShock { mach_n: hi });
        }
    }
    let flo = if lo == 1.0 { flo } else { vy(lo) };
    let mut f = vy;
    let m = roots::brent_with_values(&mut f, lo, flo, hi, fhi, 0.0)?;
    let eta_star = v_u_y + m * c_u / cos_b;
    let n = Vec2::new(beta.sin(), -cos_b);
    let shock = downstream_state(gas, &upstream, Vec2::new(0.0, eta_star), n)?;
    Ok(VdZero { eta_star, downstream: shock.downstream, shock })
}

/// Largest wedge angle at which the downward sweep starts.
fn sweep_top(beta_q: f64) -> f64 {
    let line = std::f64::consts::FRAC_PI_2 - beta_q;
    std::f64::consts::FRAC_PI_2.min(line) - SWEEP_STEP
}

/// Sweeps `theta` down from the top in fixed steps until `g` changes sign,
/// then bisects. `g` is positive at the top for a regular reflection.
fn sweep_root<G: Fn(f64) -> Option<f64>>(g: G, top: f64, bottom: f64, tol: f64) -> Result<Option<f64>> {
    let mut hi = top;
    let Some(mut ghi) = g(hi) else {
        return Err(Error::Bracket(format!("transition function undefined at the top of the sweep {top}")));
    };
    let mut k = 1;
    loop {
        let lo = top - k as f64 * SWEEP_STEP;
        if lo <= bottom {
            return Ok(None);
        }
        let Some(glo) = g(lo) else { return Ok(None) };
        if glo == 0.0 {
            return Ok(Some(lo));
        }
        if glo.signum() != ghi.signum() {
            let f = |t: f64| g(t).unwrap_or(f64::NAN);
            return roots::bisect(f, lo, hi, tol).map(Some);
        }
        hi = lo;
        ghi = glo;
        k += 1;
    }
}

/// Detachment margin `tau_star - tau`; negative past detachment.
fn detachment_margin(gas: &GasModel, mach_i: f64, beta_q: f64, theta: f64) -> Option<f64> {
    let ap = approach(gas, mach_i, beta_q, theta).ok()?;
    let fam = ShockFamily::new(gas, ap.incident.rho_i, ap.z_i).ok()?;
    let (_, tau_star) = fam.critical().ok()?;
    Some(tau_star - ap.tau)
}

/// `L_R - 1`; past detachment, where no reflected shock exists, `-1`.
fn sonic_margin(gas: &GasModel, mach_i: f64, beta_q: f64, theta: f64) -> Option<f64> {
    match local_reflection(gas, mach_i, beta_q, theta) {
        Ok(l) => Some(l.mach_r - 1.0),
        Err(Error::NoReflectedShock { .. }) | Err(Error::SubsonicUpstream { .. }) => Some(-1.0),
        Err(_) => None,
    }
}

/// Sonic angle alone.
pub fn theta_sonic(gas: &GasModel, mach_i: f64, beta_q: f64) -> Result<f64> {
    theta_sonic_with(gas, mach_i, beta_q, ANGLE_TOL)
}

/// Sonic angle with bisection tolerance `tol` in radians.
pub fn theta_sonic_with(gas: &GasModel, mach_i: f64, beta_q: f64, tol: f64) -> Result<f64> {
    incident_shock(gas, mach_i, beta_q, sweep_top(beta_q))?;
    sweep_root(|t| sonic_margin(gas, mach_i, beta_q, t), sweep_top(beta_q), 0.0, tol)?
        .ok_or_else(|| Error::Bracket("no sonic transition found in the sweep".into()))
}

/// Pressure behind a stem through `xi_r` normal to wall `B` minus the
/// pressure of `R`. The stem's upstream is `Q`; a stem too weak to be a
/// shock leaves `Q` unchanged, and one whose compression overflows has an
/// unbounded pressure.
fn stem_mismatch(gas: &GasModel, local: &LocalReflection) -> Option<f64> {
    let e_b = local.wall_b.dir;
    let inc = &local.incident;
    let z_q = inc.v_q - local.xi_r;
    let n = if z_q.dot(e_b) > 0.0 { e_b } else { -e_b };
    let q = FlowState { rho: inc.rho_q, v: inc.v_q };
    let rho_stem = match downstream_state(gas, &q, local.xi_r, n) {
        Ok(s) => s.downstream.rho,
        Err(Error::NoShock { .. }) | Err(Error::Orientation { .. }) => inc.rho_q,
        Err(Error::Overflow { .. }) => return Some(f64::INFINITY),
        Err(_) => return None,
    };
    Some(gas.pressure(rho_stem).ok()? - gas.pressure(local.reflected.downstream.rho).ok()?)
}

pub fn transition_angles(gas: &GasModel, mach_i: f64, beta_q: f64) -> Result<TransitionAngles> {
    transition_angles_with(gas, mach_i, beta_q, ANGLE_TOL)
}

/// Transition angles with bisection tolerance `tol` in radians.
pub fn transition_angles_with(gas: &GasModel, mach_i: f64, beta_q: f64, tol: f64) -> Result<TransitionAngles> {
    let top = sweep_top(beta_q);
    incident_shock(gas, mach_i, beta_q, top)?;
    let theta_s = sweep_root(|t| sonic_margin(gas, mach_i, beta_q, t), top, 0.0, tol)?
        .ok_or_else(|| Error::Bracket("no sonic transition found in the sweep".into()))?;
    let theta_d = sweep_root(|t| detachment_margin(gas, mach_i, beta_q, t), top, 0.0, tol)?
        .ok_or_else(|| Error::Bracket("no detachment found in the sweep".into()))?;
    let mismatch = |t: f64| -> Option<f64> {
        if t <= theta_d {
            return None;
        }
        let local = local_reflection(gas, mach_i, beta_q, t).ok()?;
        stem_mismatch(gas, &local)
    };
    let theta_n = sweep_root(mismatch, top, theta_d, tol)?;
    Ok(TransitionAngles { theta_d, theta_s, theta_n })
}

/// Classifies one `(gamma, M_I)` cell for vertical incident shocks.
pub fn classify(gamma: f64, mach_i: f64) -> FeasibilityRecord {
    classify_with(gamma, mach_i, ANGLE_TOL)
}

/// [`classify`] with the sonic angle located to `tol` radians.
pub fn classify_with(gamma: f64, mach_i: f64, tol: f64) -> FeasibilityRecord {
    let record = |status, theta_s| FeasibilityRecord { gamma, mach_i, status, theta_s };
    let Ok(gas) = GasModel::normalized(gamma) else {
        return record(FeasibilityStatus::NoIncidentShock, None);
    };
    if crate::shock::vertical_incident_shock(&gas, mach_i).is_err() {
        return record(FeasibilityStatus::NoIncidentShock, None);
    }
    let Ok(theta_s) = theta_sonic_with(&gas, mach_i, 0.0, tol) else {
        return record(FeasibilityStatus::EnvelopeFails, None);
    };
    let ok = build_local_rr(&gas, mach_i, 0.0, theta_s).map(|c| c.verdicts.envelope_ok).unwrap_or(false);
    let status = if ok { FeasibilityStatus::Feasible } else { FeasibilityStatus::EnvelopeFails };
    record(status, Some(theta_s))
}

/// Classifies every cell of the grid, row-major over `(gamma, M_I)`.
pub fn feasibility_scan(gammas: &[f64], machs: &[f64]) -> Vec<FeasibilityRecord> {
    feasibility_scan_with(gammas, machs, ANGLE_TOL)
}

pub fn feasibility_scan_with(gammas: &[f64], machs: &[f64], tol: f64) -> Vec<FeasibilityRecord> {
    let cells: Vec<(f64, f64)> = gammas.iter().flat_map(|&g| machs.iter().map(move |&m| (g, m))).collect();
    cells.par_iter().map(|&(g, m)| classify_with(g, m, tol)).collect()
}

/// Bisects on `gamma` at fixed `M_I` for the boundary between two different
/// statuses at `lo` and `hi`.
pub fn gamma_boundary(mach_i: f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let s_lo = classify(lo, mach_i).status;
    let s_hi = classify(hi, mach_i).status;
    if s_lo == s_hi {
        return Err(Error::Bracket(format!("status {s_lo} at both gamma = {lo} and gamma = {hi}")));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if classify(mid, mach_i).status == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
