//! Brute-force oracles shared by the integration suites. They use only the
//! gas closures and plain scans, never the solvers under test.

#![allow(dead_code)]

use shockfront::GasModel;

/// Downstream `(rho_d, zn_d)` of a normal shock: eliminate `rho_d` through
/// Bernoulli, scan `zn_d` over `(0, zn_u)` for a sign change of the mass
/// residual, then bisect.
pub fn downstream_by_scan(gm: &GasModel, rho_u: f64, zn_u: f64, n_grid: usize) -> (f64, f64) {
    let pu = gm.pi(rho_u).unwrap();
    let mass = |zd: f64| -> f64 {
        match gm.pi_inv(pu + 0.5 * (zn_u * zn_u - zd * zd)) {
            Ok(rd) => rho_u * zn_u - rd * zd,
            Err(_) => f64::NAN,
        }
    };
    let mut prev_x = zn_u * 1e-9;
    let mut prev = mass(prev_x);
    let mut bracket = None;
    for i in 1..n_grid {
        let x = zn_u * i as f64 / n_grid as f64;
        let v = mass(x);
        if prev.is_finite() && v.is_finite() && prev.signum() != v.signum() {
            bracket = Some((prev_x, x));
            break;
        }
        prev_x = x;
        prev = v;
    }
    let (mut a, mut b) = bracket.expect("no sign change in the scan");
    let fa = mass(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        if mass(m).signum() == fa.signum() {
            a = m;
        } else {
            b = m;
        }
    }
    let zd = 0.5 * (a + b);
    (gm.pi_inv(pu + 0.5 * (zn_u * zn_u - zd * zd)).unwrap(), zd)
}

/// Signed turning angle from `a` to `b`.
pub fn angle_between(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 * b.1 - a.1 * b.0).atan2(a.0 * b.0 + a.1 * b.1)
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}
