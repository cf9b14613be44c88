//! Regular shock reflection in self-similar potential flow of a polytropic gas.
//!
//! Layers, bottom up: [`gas`] thermodynamic closures, [`shock`] jump
//! conditions, [`polar`] shock polars and turning, [`envelope`] the envelope
//! ODE for sonic shock tangents, and [`reflection`] which assembles local
//! regular-reflection configurations, transition angles and feasibility scans.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod envelope;
pub mod error;
pub mod gas;
pub mod ode;
pub mod polar;
pub mod reflection;
pub mod roots;
pub mod shock;
pub mod vec2;

pub use envelope::{
    compare_shock_envelope, envelope_rhs, integrate_envelope, EnvelopeCurve, EnvelopeStops, RhsMode, Termination,
    Verdict, Wall,
};
pub use error::{Error, Result};
pub use gas::GasModel;
pub use polar::{
    polar_curve, polar_derivatives, solve_turning, PolarCurve, PolarPoint, ShockFamily, Side, TurningSolution,
};
pub use reflection::{
    build_local_rr, check_envelope_condition, classify, feasibility_scan, feasibility_scan_with, gamma_boundary,
    local_reflection, sonic_points, theta_sonic, theta_sonic_with, transition_angles, transition_angles_with,
    vdzero_shock, FeasibilityRecord, FeasibilityStatus, LocalReflection, RRConfiguration, TransitionAngles,
};
pub use shock::{
    downstream_state, incident_shock, shock_residual, vertical_incident_shock, FlowState, IncidentShock, PseudoState,
    ShockSolution,
};
pub use vec2::Vec2;
