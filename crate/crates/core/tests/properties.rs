//! Property tests over randomized states, polars, envelopes and
//! configurations.

mod common;

use proptest::prelude::*;
use shockfront::envelope::{integrate_envelope_with, EnvelopeOptions};
use shockfront::reflection::local_reflection;
use shockfront::{
    build_local_rr, compare_shock_envelope, downstream_state, envelope_rhs, integrate_envelope, polar_curve,
    shock_residual, transition_angles, vdzero_shock, EnvelopeStops, FlowState, GasModel, RhsMode, ShockFamily,
    Termination, Vec2, Verdict,
};

use common::downstream_by_scan;

fn gammas() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), 1.05f64..3.0]
}

/// Upstream state ahead of a shock through `xi` with normal `n`.
fn upstream(gm: &GasModel, rho: f64, mach_n: f64, zt: f64, xi: Vec2, n: Vec2) -> FlowState {
    let c = gm.sound_speed(rho).unwrap();
    FlowState::new(rho, xi + mach_n * c * n + zt * n.perp()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jump_conditions_hold(
        g in gammas(), rho in 0.2f64..4.0, m in 1.01f64..4.0, zt in -3.0f64..3.0,
        a in -3.1f64..3.1, x in -2.0f64..2.0, y in -2.0f64..2.0,
    ) {
        let gm = GasModel::normalized(g).unwrap();
        let xi = Vec2::new(x, y);
        let n = Vec2::from_angle(a);
        let up = upstream(&gm, rho, m, zt, xi, n);
        let sol = downstream_state(&gm, &up, xi, n).unwrap();
        let (mass, bern) = shock_residual(&gm, &sol).unwrap();
        prop_assert!(mass.abs() <= 1e-10 * rho * sol.zn_u);
        prop_assert!(bern.abs() <= 1e-10);
        prop_assert!(sol.zn_u >= sol.zn_d && sol.zn_d > 0.0);
        prop_assert!(sol.downstream.rho > rho);
        prop_assert!(((sol.downstream.v - xi).dot(sol.t) - sol.zt).abs() <= 1e-12 * (1.0 + sol.zt.abs() + sol.zn_u));
        prop_assert!((sol.n.norm() - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn density_jump_ignores_tangential_flow(
        g in gammas(), rho in 0.2f64..4.0, m in 1.01f64..4.0, zt in -5.0f64..5.0,
    ) {
        let gm = GasModel::normalized(g).unwrap();
        let n = Vec2::new(1.0, 0.0);
        let base = downstream_state(&gm, &upstream(&gm, rho, m, 0.0, Vec2::ZERO, n), Vec2::ZERO, n).unwrap();
        let slid = downstream_state(&gm, &upstream(&gm, rho, m, zt, Vec2::ZERO, n), Vec2::ZERO, n).unwrap();
        prop_assert_eq!(base.downstream.rho, slid.downstream.rho);
        prop_assert_eq!(base.zn_d, slid.zn_d);
    }

    #[test]
    fn galilean_and_rotation_invariance(
        g in gammas(), rho in 0.2f64..4.0, m in 1.01f64..4.0, zt in -3.0f64..3.0,
        a in -3.1f64..3.1, dx in -5.0f64..5.0, dy in -5.0f64..5.0, rot in -3.1f64..3.1,
    ) {
        let gm = GasModel::normalized(g).unwrap();
        let n = Vec2::from_angle(a);
        let up = upstream(&gm, rho, m, zt, Vec2::ZERO, n);
        let sol = downstream_state(&gm, &up, Vec2::ZERO, n).unwrap();
        let d = Vec2::new(dx, dy);
        let shifted = downstream_state(&gm, &FlowState::new(rho, up.v + d).unwrap(), d, n).unwrap();
        let turned =
            downstream_state(&gm, &FlowState::new(rho, up.v.rotated(rot)).unwrap(), Vec2::ZERO, n.rotated(rot)).unwrap();
        for other in [shifted, turned] {
            prop_assert!((other.downstream.rho - sol.downstream.rho).abs() <= 1e-12 * sol.downstream.rho);
            prop_assert!((other.zn_d - sol.zn_d).abs() <= 1e-12 * sol.zn_u);
        }
        prop_assert!((shifted.downstream.v - d - sol.downstream.v).norm() <= 1e-12 * (1.0 + up.v.norm() + d.norm()));
        prop_assert!((turned.downstream.v - sol.downstream.v.rotated(rot)).norm() <= 1e-12 * (1.0 + up.v.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solver_matches_scan_oracle(g in gammas(), rho in 0.3f64..3.0, m in 1.05f64..3.5) {
        let gm = GasModel::normalized(g).unwrap();
        let n = Vec2::new(0.0, 1.0);
        let sol = downstream_state(&gm, &upstream(&gm, rho, m, 0.0, Vec2::ZERO, n), Vec2::ZERO, n).unwrap();
        let (rho_o, zn_o) = downstream_by_scan(&gm, rho, sol.zn_u, 20_000);
        prop_assert!((sol.downstream.rho - rho_o).abs() <= 1e-8 * rho_o.max(1.0));
        prop_assert!((sol.zn_d - zn_o).abs() <= 1e-8 * sol.zn_u);
    }

    #[test]
    fn polar_shape(g in gammas(), rho in 0.3f64..3.0, l_u in 1.1f64..5.0) {
        let gm = GasModel::normalized(g).unwrap();
        let speed = l_u * gm.sound_speed(rho).unwrap();
        let pc = polar_curve(&gm, rho, Vec2::new(speed, 0.0), 129).unwrap();
        let s = &pc.samples;
        prop_assert!((pc.beta_vanish - (1.0 / l_u).acos()).abs() <= 1e-10);
        // density falls with |beta| and the polar is mirror symmetric
        for i in 64..128 {
            prop_assert!(s[i + 1].downstream.rho < s[i].downstream.rho);
            let j = 128 - i;
            prop_assert!((s[i].downstream.rho - s[j].downstream.rho).abs() <= 1e-12 * s[i].downstream.rho);
            prop_assert!((s[i].turning + s[j].turning).abs() <= 1e-12);
        }
        prop_assert!(s[64].turning.abs() <= 1e-15);
        prop_assert!(s[128].turning.abs() <= 1e-9 && s[0].turning.abs() <= 1e-9);
        // |turning| rises to its maximum and falls back
        let mags: Vec<f64> = s[64..].iter().map(|p| p.turning.abs()).collect();
        let peak = mags.iter().enumerate().fold(0, |k, (i, &v)| if v > mags[k] { i } else { k });
        prop_assert!(mags[..=peak].windows(2).all(|w| w[1] >= w[0]));
        prop_assert!(mags[peak..].windows(2).all(|w| w[1] <= w[0]));
        prop_assert!(pc.tau_star >= mags[peak] - 1e-12);
        let bs = pc.beta_sonic.unwrap();
        prop_assert!(0.0 < pc.beta_star && pc.beta_star < bs && bs < pc.beta_vanish);
    }

    #[test]
    fn envelope_slope_modes_agree(g in 1.05f64..3.0, k in 0.0f64..1.0) {
        let gm = GasModel::normalized(g).unwrap();
        let r = 1.0 + 1e-6 * 1e9f64.powf(k);
        let e = envelope_rhs(&gm, r, 1.0, RhsMode::Explicit).unwrap();
        let n = envelope_rhs(&gm, r, 1.0, RhsMode::Numeric).unwrap();
        prop_assert!((e - n).abs() <= 1e-8 * e, "explicit {} numeric {}", e, n);
    }

    #[test]
    fn envelope_decreases_towards_circle(g in gammas(), r0 in 1.05f64..4.0, phi0 in -3.0f64..3.0) {
        let gm = GasModel::normalized(g).unwrap();
        let center = Vec2::new(0.3, -0.2);
        let curve = integrate_envelope(&gm, center + r0 * Vec2::from_angle(phi0), center, 1.0, &EnvelopeStops::default())
            .unwrap();
        let pts = &curve.points;
        prop_assert!(pts.windows(2).all(|w| w[1].phi > w[0].phi && w[1].r <= w[0].r));
        prop_assert!(pts[..pts.len() - 1].iter().all(|p| p.r > 1.0));
        let last = pts[pts.len() - 1];
        prop_assert_eq!(curve.termination == Termination::AtCircle, last.r - 1.0 < 1e-9);
    }

    #[test]
    fn envelope_stable_under_tolerance_halving(theta_deg in 56.0f64..89.0) {
        let gm = GasModel::normalized(5.0 / 3.0).unwrap();
        let cfg = build_local_rr(&gm, 1.0, 0.0, theta_deg.to_radians()).unwrap();
        let stops = EnvelopeStops { wall_a: Some(cfg.wall_a), wall_b: Some(cfg.wall_b), ..EnvelopeStops::default() };
        let base = EnvelopeOptions::default();
        let half = EnvelopeOptions { rtol: base.rtol / 2.0, event_tol: base.event_tol / 2.0, ..base };
        let start = cfg.envelope.curve.cartesian(&cfg.envelope.curve.points[0]);
        let fine = integrate_envelope_with(&gm, start, cfg.v_i, 1.0, &stops, &half).unwrap();
        prop_assert_eq!(fine.termination, cfg.envelope.termination);
        prop_assert!(fine.end_point.dist(cfg.envelope.end_point) <= 1e-9);
    }

    #[test]
    fn comparison_follows_slope(g in 1.05f64..3.0, r0 in 1.1f64..3.0, k in prop_oneof![0.5f64..0.95, 1.05f64..1.5]) {
        let gm = GasModel::normalized(g).unwrap();
        let stops = EnvelopeStops { max_angle: 1.0, ..EnvelopeStops::default() };
        let env = integrate_envelope(&gm, Vec2::new(r0, 0.0), Vec2::ZERO, 1.0, &stops).unwrap();
        // a curve with k times the envelope slope, by fine explicit midpoint steps
        let (_, hi) = env.phi_range();
        let steps = 4000;
        let h = hi / steps as f64;
        let f = |r: f64| if r > 1.0 { k * envelope_rhs(&gm, r, 1.0, RhsMode::Explicit).unwrap() } else { 0.0 };
        let mut r = r0;
        let mut samples = Vec::new();
        for i in 1..=steps {
            let mid = r - 0.5 * h * f(r);
            r -= h * f(mid);
            // both curves crowd the circle at the end; stay clear of it
            if r <= 1.0 + 0.2 * (r0 - 1.0) {
                break;
            }
            samples.push((i as f64 * h, r));
        }
        let verdict = compare_shock_envelope(&samples, &env).unwrap();
        prop_assert_eq!(verdict, if k < 1.0 { Verdict::Outside } else { Verdict::Inside });
    }

    #[test]
    fn configuration_invariants(g in 1.3f64..3.0, m in 0.3f64..1.2, frac in 0.05f64..0.95) {
        let gm = GasModel::normalized(g).unwrap();
        prop_assume!(shockfront::vertical_incident_shock(&gm, m).is_ok());
        let t = transition_angles(&gm, m, 0.0).unwrap();
        prop_assert!(t.theta_d <= t.theta_s + 1e-8);
        if let Some(tn) = t.theta_n {
            prop_assert!(t.theta_d <= tn + 1e-8);
        }
        let at = local_reflection(&gm, m, 0.0, t.theta_s).unwrap();
        prop_assert!((at.mach_r - 1.0).abs() <= 1e-8);
        prop_assert!(at.xi_c0.dist(at.xi_r) <= 1e-6);
        let theta = t.theta_s + frac * (std::f64::consts::FRAC_PI_2 - 1e-3 - t.theta_s);
        let cfg = local_reflection(&gm, m, 0.0, theta).unwrap();
        prop_assert!(cfg.reflected.downstream.v.dot(cfg.wall_b.dir.perp()).abs() <= 1e-10);
        prop_assert!(cfg.mach_r > 1.0);
    }

    #[test]
    fn vdzero_grows_with_inclination(g in gammas(), rho in 0.3f64..3.0, l in 1.1f64..4.0) {
        let gm = GasModel::normalized(g).unwrap();
        let v_y = -l * gm.sound_speed(rho).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=12 {
            let beta = 0.1 * i as f64;
            let v = vdzero_shock(&gm, v_y, rho, beta).unwrap();
            let mirrored = vdzero_shock(&gm, v_y, rho, -beta).unwrap();
            prop_assert!(v.eta_star > prev);
            prop_assert!((v.eta_star - mirrored.eta_star).abs() <= 1e-12 * (1.0 + v.eta_star.abs()));
            prop_assert!(v.downstream.v.y.abs() <= 1e-10 * (1.0 + v_y.abs()));
            prev = v.eta_star;
        }
    }
}

#[test]
fn polar_family_agrees_with_curve() {
    let gm = GasModel::normalized(1.4).unwrap();
    let fam = ShockFamily::new(&gm, 1.0, Vec2::new(2.0, 0.0)).unwrap();
    let pc = polar_curve(&gm, 1.0, Vec2::new(2.0, 0.0), 65).unwrap();
    for p in &pc.samples {
        assert_eq!(fam.turning(p.beta).unwrap(), p.turning);
    }
}
