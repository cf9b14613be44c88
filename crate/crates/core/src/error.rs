use thiserror::Error;

/// Failures raised by the gas-dynamics routines.
///
/// Several variants are not bugs but physical verdicts (a shock that does not
/// exist, a reflection beyond detachment); callers such as the feasibility
/// scan turn them into statuses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("vacuum: enthalpy {q} is at or below the vacuum bound {bound}")]
    Vacuum { q: f64, bound: f64 },

    #[error("shock normal does not point downstream (normal pseudo-velocity {zn_u})")]
    Orientation { zn_u: f64 },

    #[error("no admissible shock: upstream normal pseudo-Mach {mach_n} is below 1")]
    NoShock { mach_n: f64 },

    #[error("no incident shock with quiescent region ahead (M_I = {mach}, gamma = {gamma})")]
    NoIncidentShock { mach: f64, gamma: f64 },

    #[error("upstream state is pseudo-subsonic (L = {mach})")]
    SubsonicUpstream { mach: f64 },

    #[error("turning angle {tau} exceeds the detachment angle {tau_star}")]
    NoReflectedShock { tau: f64, tau_star: f64 },

    #[error("incident shock does not meet the downstream wall")]
    NoReflectionPoint,

    #[error("shock line does not meet the sonic circle")]
    NoSonicPoint,

    #[error("radius {r} is not outside the sonic circle of radius {c}")]
    CircleDomain { r: f64, c: f64 },

    #[error("closed-form envelope slope needs gamma > 1; use the numeric mode")]
    UnsupportedBranch,

    #[error("parameter ranges do not overlap: {0}")]
    ParameterRange(String),

    #[error("root not bracketed: {0}")]
    Bracket(String),

    #[error("shock compression exceeds the floating-point range (M_n = {mach_n})")]
    Overflow { mach_n: f64 },

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
