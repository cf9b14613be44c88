//! One function per subcommand. Each validates its arguments, calls the
//! library and returns the table plus the parameter echo for provenance.

use shockfront::reflection::ANGLE_TOL;
use shockfront::{
    build_local_rr, feasibility_scan_with, incident_shock, polar_curve, theta_sonic_with, transition_angles_with,
    vertical_incident_shock, FeasibilityStatus, GasModel, Vec2,
};

use crate::args::{EnvelopeArgs, IncidentArgs, MachGrid, PolarArgs, ReflectArgs, ScanArgs, TransitionArgs};
use crate::table::{degrees, number, text, Field, Table};
use crate::CliError;

/// Tables for the CSV file and for plot data, and the parameter echo.
pub struct Outcome {
    pub csv: Table,
    pub plot: Table,
    pub params: ParamEcho,
    /// Set when some records carry a domain failure; the output is still
    /// written.
    pub domain_failure: Option<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn gas(gamma: f64) -> Result<GasModel, CliError> {
    if !(gamma.is_finite() && gamma >= 1.0) {
        return Err(usage(format!("--gamma must be a finite number >= 1, got {gamma}")));
    }
    GasModel::normalized(gamma).map_err(|e| usage(e.to_string()))
}

fn positive(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(usage(format!("--{name} must be a finite positive number, got {x}")))
    }
}

fn wedge(theta_deg: f64) -> Result<f64, CliError> {
    if theta_deg.is_finite() && theta_deg > 0.0 && theta_deg < 180.0 {
        Ok(theta_deg.to_radians())
    } else {
        Err(usage(format!("--theta-deg must lie in (0, 180), got {theta_deg}")))
    }
}

fn inclination(beta_q_deg: f64) -> Result<f64, CliError> {
    if beta_q_deg.is_finite() && beta_q_deg.abs() < 90.0 {
        Ok(beta_q_deg.to_radians())
    } else {
        Err(usage(format!("--beta-q-deg must lie in (-90, 90), got {beta_q_deg}")))
    }
}

/// Evenly spaced values, geometric when `log` is set. A single point is
/// allowed only for a degenerate range.
pub fn grid(name: &str, lo: f64, hi: f64, n: usize, log: bool) -> Result<Vec<f64>, CliError> {
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(usage(format!("{name} range must satisfy min <= max, got [{lo}, {hi}]")));
    }
    if n == 0 || (n == 1 && lo != hi) {
        return Err(usage(format!("{name} grid needs at least 2 points over a nonempty range, got {n}")));
    }
    if log && !(lo > 0.0) {
        return Err(usage(format!("logarithmic {name} grid needs a positive minimum, got {lo}")));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let s = i as f64 / last;
            if i == n - 1 {
                hi
            } else if log {
                lo * (hi / lo).powf(s)
            } else {
                lo + (hi - lo) * s
            }
        })
        .collect())
}

fn domain(e: shockfront::Error) -> CliError {
    CliError::Domain(e.to_string())
}

pub fn polar(a: &PolarArgs) -> Result<Outcome, CliError> {
    let gm = gas(a.gamma)?;
    if !(a.mi.is_finite() && a.mi > 1.0) {
        return Err(usage(format!("--mi must exceed 1 for a shock polar, got {}", a.mi)));
    }
    if a.samples < 64 {
        return Err(usage(format!("--samples must be at least 64, got {}", a.samples)));
    }
    let pc = polar_curve(&gm, 1.0, Vec2::new(a.mi, 0.0), a.samples).map_err(domain)?;
    let mut csv = Table::new(&["beta_rad", "rho_d", "Ld", "turning_rad", "vd_x", "vd_y"]);
    for p in &pc.samples {
        csv.push(vec![
            number(p.beta),
            number(p.downstream.rho),
            number(p.mach_d),
            number(p.turning),
            number(p.downstream.v.x),
            number(p.downstream.v.y),
        ]);
    }
    csv.notes.push(format!("beta_vanish_deg: {}", field_text(degrees(pc.beta_vanish))));
    csv.notes.push(format!("tau_star_deg: {}", field_text(degrees(pc.tau_star))));
    if let Some(ts) = pc.tau_sonic {
        csv.notes.push(format!("tau_sonic_deg: {}", field_text(degrees(ts))));
    }
    let plot = csv.select(&["vd_x", "vd_y", "beta_rad", "turning_rad"]);
    let params = vec![("gamma", a.gamma.to_string()), ("mi", a.mi.to_string()), ("samples", a.samples.to_string())];
    Ok(Outcome { csv, plot, params, domain_failure: None })
}

pub fn incident(a: &IncidentArgs) -> Result<Outcome, CliError> {
    let gm = gas(a.gamma)?;
    let mi = positive("mi", a.mi)?;
    let beta_q = inclination(a.beta_q_deg)?;
    let inc = if beta_q == 0.0 {
        vertical_incident_shock(&gm, mi)
    } else {
        let theta_deg = a.theta_deg.ok_or_else(|| usage("an inclined incident shock needs --theta-deg"))?;
        incident_shock(&gm, mi, beta_q, wedge(theta_deg)?)
    }
    .map_err(domain)?;
    let mut csv = Table::new(&[
        "gamma",
        "mi",
        "beta_q_deg",
        "normal_x",
        "normal_y",
        "sigma",
        "rho_q",
        "c_q",
        "vq_x",
        "vq_y",
        "vi_x",
        "vi_y",
    ]);
    csv.push(vec![
        number(a.gamma),
        number(mi),
        degrees(beta_q),
        number(inc.normal.x),
        number(inc.normal.y),
        number(inc.sigma),
        number(inc.rho_q),
        number(inc.c_q),
        number(inc.v_q.x),
        number(inc.v_q.y),
        number(inc.v_i.x),
        number(inc.v_i.y),
    ]);
    let plot = csv.select(&["mi", "sigma", "rho_q"]);
    let mut params =
        vec![("gamma", a.gamma.to_string()), ("mi", mi.to_string()), ("beta-q-deg", a.beta_q_deg.to_string())];
    if let Some(t) = a.theta_deg {
        params.push(("theta-deg", t.to_string()));
    }
    Ok(Outcome { csv, plot, params, domain_failure: None })
}

const REFLECT_COLUMNS: [&str; 18] = [
    "gamma",
    "mi",
    "theta_deg",
    "xi_r_x",
    "xi_r_y",
    "tau_deg",
    "tau_star_deg",
    "rho_r",
    "L_R",
    "xi_c0_x",
    "xi_c0_y",
    "vi_normal_b",
    "sonic_ok",
    "v_in_b_ok",
    "envelope_ok",
    "termination",
    "end_x",
    "end_y",
];

pub fn reflect(a: &ReflectArgs) -> Result<Outcome, CliError> {
    let gm = gas(a.gamma)?;
    let mi = positive("mi", a.mi)?;
    let theta = wedge(a.theta_deg)?;
    let beta_q = inclination(a.beta_q_deg)?;
    let cfg = build_local_rr(&gm, mi, beta_q, theta).map_err(domain)?;
    let mut csv = Table::new(&REFLECT_COLUMNS);
    csv.push(vec![
        number(a.gamma),
        number(mi),
        degrees(theta),
        number(cfg.xi_r.x),
        number(cfg.xi_r.y),
        degrees(cfg.tau),
        degrees(cfg.tau_star),
        number(cfg.reflected.downstream.rho),
        number(cfg.mach_r),
        number(cfg.xi_c0.x),
        number(cfg.xi_c0.y),
        number(cfg.v_i_normal_b()),
        text(cfg.verdicts.sonic_ok.to_string()),
        text(cfg.verdicts.v_in_b_ok.to_string()),
        text(cfg.verdicts.envelope_ok.to_string()),
        text(cfg.envelope.termination.as_str()),
        number(cfg.envelope.end_point.x),
        number(cfg.envelope.end_point.y),
    ]);
    let plot = csv.select(&["theta_deg", "L_R", "end_x", "end_y"]);
    let params = vec![
        ("gamma", a.gamma.to_string()),
        ("mi", mi.to_string()),
        ("theta-deg", a.theta_deg.to_string()),
        ("beta-q-deg", a.beta_q_deg.to_string()),
    ];
    Ok(Outcome { csv, plot, params, domain_failure: None })
}

type ParamEcho = Vec<(&'static str, String)>;

fn mach_values(g: &MachGrid) -> Result<(Vec<f64>, ParamEcho), CliError> {
    match (g.mi, g.mi_min, g.mi_max, g.mi_steps) {
        (Some(mi), None, None, None) => Ok((vec![positive("mi", mi)?], vec![("mi", mi.to_string())])),
        (None, Some(lo), Some(hi), Some(n)) => {
            positive("mi-min", lo)?;
            let values = grid("mi", lo, hi, n, g.mi_log)?;
            let mut echo = vec![("mi-min", lo.to_string()), ("mi-max", hi.to_string()), ("mi-steps", n.to_string())];
            if g.mi_log {
                echo.push(("mi-log", "true".into()));
            }
            Ok((values, echo))
        }
        _ => Err(usage("give either --mi or all of --mi-min, --mi-max and --mi-steps")),
    }
}

pub const STEM_NOTE: &str = "stem model: straight shock through xi_R normal to wall B with the resting state upstream";

pub fn transition(a: &TransitionArgs, tol: f64) -> Result<Outcome, CliError> {
    let gm = gas(a.gamma)?;
    let beta_q = inclination(a.beta_q_deg)?;
    let (machs, mut params) = mach_values(&a.grid)?;
    use rayon::prelude::*;
    let results: Vec<_> = machs.par_iter().map(|&m| transition_angles_with(&gm, m, beta_q, tol)).collect();
    let mut csv = Table::new(&["gamma", "mi", "theta_d_deg", "theta_s_deg", "theta_n_deg"]);
    let mut failures = Vec::new();
    for (&m, r) in machs.iter().zip(&results) {
        match r {
            Ok(t) => csv.push(vec![
                number(a.gamma),
                number(m),
                degrees(t.theta_d),
                degrees(t.theta_s),
                t.theta_n.map_or(Field::Absent, degrees),
            ]),
            Err(e) => {
                failures.push(format!("M_I = {m}: {e}"));
                csv.push(vec![number(a.gamma), number(m), Field::Absent, Field::Absent, Field::Absent]);
            }
        }
    }
    csv.notes.push(STEM_NOTE.into());
    let plot = csv.select(&["mi", "theta_d_deg", "theta_s_deg", "theta_n_deg"]);
    params.insert(0, ("gamma", a.gamma.to_string()));
    params.push(("beta-q-deg", a.beta_q_deg.to_string()));
    let domain_failure = (!failures.is_empty()).then(|| failures.join("; "));
    Ok(Outcome { csv, plot, params, domain_failure })
}

pub fn envelope(a: &EnvelopeArgs, tol: f64) -> Result<Outcome, CliError> {
    let gm = gas(a.gamma)?;
    let mi = positive("mi", a.mi)?;
    let beta_q = inclination(a.beta_q_deg)?;
    let theta = match a.theta_deg {
        Some(t) => wedge(t)?,
        None => theta_sonic_with(&gm, mi, beta_q, tol).map_err(domain)?,
    };
    let cfg = build_local_rr(&gm, mi, beta_q, theta).map_err(domain)?;
    let curve = &cfg.envelope.curve;
    let mut csv = Table::new(&["phi_deg", "r", "x", "y"]);
    for p in &curve.points {
        let xy = curve.cartesian(p);
        csv.push(vec![degrees(p.phi), number(p.r), number(xy.x), number(xy.y)]);
    }
    csv.notes.push(format!("theta_deg: {}", field_text(degrees(theta))));
    csv.notes.push(format!("termination: {}", curve.termination));
    csv.notes.push(format!(
        "end_point: {},{}",
        field_text(number(curve.end_point.x)),
        field_text(number(curve.end_point.y))
    ));
    let plot = csv.select(&["x", "y"]);
    let mut params = vec![("gamma", a.gamma.to_string()), ("mi", mi.to_string())];
    if let Some(t) = a.theta_deg {
        params.push(("theta-deg", t.to_string()));
    }
    params.push(("beta-q-deg", a.beta_q_deg.to_string()));
    Ok(Outcome { csv, plot, params, domain_failure: None })
}

pub fn scan(a: &ScanArgs, tol: f64) -> Result<Outcome, CliError> {
    if !(a.gamma_min >= 1.0) {
        return Err(usage(format!("--gamma-min must be >= 1, got {}", a.gamma_min)));
    }
    positive("mi-min", a.mi_min)?;
    // log spacing applies to gamma - 1, the axis the region is drawn on
    let gammas: Vec<f64> = if a.log {
        if !(a.gamma_min > 1.0) {
            return Err(usage("a logarithmic scan needs --gamma-min > 1"));
        }
        grid("gamma - 1", a.gamma_min - 1.0, a.gamma_max - 1.0, a.gamma_steps, true)?
            .into_iter()
            .map(|g| 1.0 + g)
            .collect()
    } else {
        grid("gamma", a.gamma_min, a.gamma_max, a.gamma_steps, false)?
    };
    let machs = grid("mi", a.mi_min, a.mi_max, a.mi_steps, a.log)?;
    let records = feasibility_scan_with(&gammas, &machs, tol);
    let mut csv = Table::new(&["gamma", "mi", "status", "theta_s_deg", "gamma_minus_1"]);
    let mut missing = 0;
    for r in &records {
        if r.status == FeasibilityStatus::NoIncidentShock {
            missing += 1;
        }
        csv.push(vec![
            number(r.gamma),
            number(r.mach_i),
            text(r.status.as_str()),
            r.theta_s.map_or(Field::Absent, degrees),
            number(r.gamma - 1.0),
        ]);
    }
    let plot = csv.select(&["mi", "gamma_minus_1", "status", "theta_s_deg"]);
    csv = csv.select(&["gamma", "mi", "status", "theta_s_deg"]);
    let mut params = vec![
        ("gamma-min", a.gamma_min.to_string()),
        ("gamma-max", a.gamma_max.to_string()),
        ("gamma-steps", a.gamma_steps.to_string()),
        ("mi-min", a.mi_min.to_string()),
        ("mi-max", a.mi_max.to_string()),
        ("mi-steps", a.mi_steps.to_string()),
    ];
    if a.log {
        params.push(("log", "true".into()));
    }
    let domain_failure = (missing > 0).then(|| format!("{missing} of {} cells have no incident shock", records.len()));
    Ok(Outcome { csv, plot, params, domain_failure })
}

fn field_text(f: Field) -> String {
    match f {
        Field::Value(s) => s,
        Field::Absent => String::new(),
    }
}

/// Root tolerance from the flag, then `SHOCKFRONT_TOL`, then the default.
pub fn resolve_tolerance(flag: Option<f64>, env: Option<String>) -> Result<f64, CliError> {
    let tol = match (flag, env) {
        (Some(t), _) => t,
        (None, Some(s)) => {
            s.trim().parse::<f64>().map_err(|_| usage(format!("SHOCKFRONT_TOL is not a number: '{s}'")))?
        }
        (None, None) => ANGLE_TOL,
    };
    if !(1e-14..=1e-4).contains(&tol) {
        return Err(usage(format!("tolerance must lie in [1e-14, 1e-4], got {tol}")));
    }
    Ok(tol)
}
