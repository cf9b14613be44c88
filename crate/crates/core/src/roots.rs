//! Bracketing scalar root finders and a golden-section maximizer.

use crate::error::{Error, Result};

const MAX_ITER: usize = 500;

/// Brent's method on `[a, b]`.
///
/// Requires `f(a)` and `f(b)` of opposite sign (or one of them zero). Each step
/// is an inverse-quadratic or secant step, falling back to bisection whenever
/// the interpolant leaves the bracket or converges too slowly. Stops once the
/// bracket is narrower than `2 * (4 eps |x| + xtol)`.
pub fn brent<F>(mut f: F, a: f64, b: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let fa = f(a);
    let fb = f(b);
    brent_with_values(&mut f, a, fa, b, fb, xtol)
}

/// [`brent`] with the endpoint values already known.
pub fn brent_with_values<F>(f: &mut F, a: f64, fa: f64, b: f64, fb: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::Bracket(format!("NaN at bracket end ({a}, {b})")));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Bracket(format!("f({a}) = {fa} and f({b}) = {fb} have the same sign")));
    }

    let (mut a, mut fa, mut b, mut fb) = (a, fa, b, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::NoConvergence(format!("NaN at {b} during Brent iteration")));
        }
    }
    Err(Error::NoConvergence("Brent iteration limit reached".into()))
}

/// Plain bisection to an absolute tolerance. Used where the function is only
/// known to be monotone and robustness matters more than speed.
pub fn bisect<F>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::Bracket(format!("f({a}) = {fa} and f({b}) = {fb} do not bracket a root")));
    }
    for _ in 0..MAX_ITER {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= xtol || m == a || m == b {
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
/// Returns `(argmax, max)`.
pub fn golden_max<F>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..MAX_ITER {
        if (b - a).abs() <= xtol {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_sqrt2() {
        let mut evals = 0;
        let r = brent(
            |x| {
                evals += 1;
                x * x - 2.0
            },
            0.0,
            2.0,
            1e-15,
        )
        .unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        assert!(evals < 20, "{evals} evaluations");
    }

    #[test]
    fn brent_handles_flat_and_steep() {
        let r = brent(|x: f64| (x - 1.0).powi(3), 0.0, 3.0, 1e-14).unwrap();
        assert!((r - 1.0).abs() < 1e-4);
        let r = brent(|x: f64| (20.0 * (x - 0.3)).exp() - 1.0, 0.0, 1.0, 1e-15).unwrap();
        assert!((r - 0.3).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        assert!(matches!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12), Err(Error::Bracket(_))));
    }

    #[test]
    fn brent_returns_zero_endpoint() {
        assert_eq!(brent(|x| x, 0.0, 1.0, 1e-12).unwrap(), 0.0);
    }

    #[test]
    fn bisect_matches_brent() {
        let f = |x: f64| x.cos() - x;
        let a = bisect(f, 0.0, 1.0, 1e-14).unwrap();
        let b = brent(f, 0.0, 1.0, 1e-14).unwrap();
        assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, v) = golden_max(|x| -(x - 0.7) * (x - 0.7) + 2.0, 0.0, 3.0, 1e-10);
        assert!((x - 0.7).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-14);
    }
}
