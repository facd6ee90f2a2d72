//! Classical reference implementations: theta q-series and their
//! z-derivatives, Eisenstein series, the Kronecker q-series and theta
//! quotient, theta-based zeta and p, the slowly convergent defining sum of
//! zeta, and the directly convergent Epstein sum.
//!
//! None of these touch the Gaussian series; they are the ground truth the
//! series are checked against.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, DEFAULT_SHELL_CAP};
use crate::sum::CompensatedSum;

/// Largest nome modulus accepted by the Eisenstein q-series.
pub const MAX_NOME: f64 = 0.9;

/// Terms whose log-magnitude falls this far below the largest term are dropped
/// (`e^-40 ~ 4e-18`).
const LOG_CUTOFF: f64 = 40.0;

const MAX_Q_TERMS: usize = 1_000_000;

fn i_c(im: f64) -> Complex64 {
    Complex64::new(0.0, im)
}

fn check_tau(tau: Complex64) -> Result<()> {
    if !(tau.im > 0.0) {
        return Err(Error::BadModulus { im: tau.im });
    }
    Ok(())
}

/// Index window for a theta series with exponent
/// `-pi*Im(tau)*nu^2 - 2*pi*nu*Im(z)`, `nu = n + shift`.
fn theta_window(tau: Complex64, z: Complex64, shift: f64, order: u32) -> (i64, i64) {
    let peak = -z.im / tau.im;
    let extra = order as f64 * (2.0 + peak.abs()).ln().max(1.0);
    let half = ((LOG_CUTOFF + extra) / (PI * tau.im)).sqrt() + 2.0;
    ((peak - half - shift).floor() as i64, (peak + half - shift).ceil() as i64)
}

/// Odd theta function with characteristics (1/2, 1/2),
/// `sum_n (-1)^n exp(pi i (n+1/2)^2 tau + 2 pi i (n+1/2) z)`,
/// differentiated `order` times in `z` term by term.
pub fn theta11(tau: Complex64, z: Complex64, order: u32) -> Result<Complex64> {
    theta11_counted(tau, z, order).map(|(v, _)| v)
}

/// [`theta11`] together with the number of series terms used.
pub fn theta11_counted(tau: Complex64, z: Complex64, order: u32) -> Result<(Complex64, usize)> {
    check_tau(tau)?;
    if order > 3 {
        return Err(Error::InvalidArgument(format!("theta derivative order {order} > 3")));
    }
    let (lo, hi) = theta_window(tau, z, 0.5, order);
    let mut acc = CompensatedSum::new();
    for n in lo..=hi {
        let nu = n as f64 + 0.5;
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let term = (i_c(PI) * nu * nu * tau + i_c(2.0 * PI * nu) * z).exp();
        acc.add(sign * term * i_c(2.0 * PI * nu).powu(order));
    }
    Ok((acc.value(), (hi - lo + 1) as usize))
}

/// `theta(z, tau) = sum_n exp(pi i tau n^2 + 2 pi i n z)`.
pub fn theta00(tau: Complex64, z: Complex64) -> Result<Complex64> {
    theta00_counted(tau, z).map(|(v, _)| v)
}

pub fn theta00_counted(tau: Complex64, z: Complex64) -> Result<(Complex64, usize)> {
    check_tau(tau)?;
    let (lo, hi) = theta_window(tau, z, 0.0, 0);
    let acc: CompensatedSum = (lo..=hi)
        .map(|n| {
            let n = n as f64;
            (i_c(PI) * n * n * tau + i_c(2.0 * PI * n) * z).exp()
        })
        .collect();
    Ok((acc.value(), (hi - lo + 1) as usize))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EisensteinValues {
    pub e2: Complex64,
    pub g2: Complex64,
    pub g3: Complex64,
}

fn nome(tau: Complex64) -> Result<Complex64> {
    check_tau(tau)?;
    let q = (i_c(2.0 * PI) * tau).exp();
    if q.norm() > MAX_NOME {
        return Err(Error::SlowConvergence { q_abs: q.norm() });
    }
    Ok(q)
}

/// Lambert series `sum_{n>=1} n^p q^n / (1 - q^n) = sum sigma_p(n) q^n`.
fn lambert(q: Complex64, p: i32) -> Complex64 {
    let mut acc = CompensatedSum::new();
    let mut qn = q;
    let r = q.norm();
    for n in 1..=MAX_Q_TERMS {
        let term = (n as f64).powi(p) * qn / (1.0 - qn);
        acc.add(term);
        // Remaining terms are bounded by a geometric tail in |q|.
        let bound = term.norm() * (1.0 + p as f64) / (1.0 - r);
        if bound <= 1e-17 * (1.0 + acc.value().norm()) {
            break;
        }
        qn *= q;
    }
    acc.value()
}

/// Quasimodular `E2(tau) = 1 - 24 sum sigma_1(n) q^n`.
pub fn e2(tau: Complex64) -> Result<Complex64> {
    let q = nome(tau)?;
    Ok(1.0 - 24.0 * lambert(q, 1))
}

/// `E2`, and the invariants `g2`, `g3` of the lattice `Z + Z*tau`.
pub fn eisenstein(tau: Complex64) -> Result<EisensteinValues> {
    let q = nome(tau)?;
    let pi4 = PI.powi(4);
    Ok(EisensteinValues {
        e2: 1.0 - 24.0 * lambert(q, 1),
        g2: 4.0 * pi4 / 3.0 * (1.0 + 240.0 * lambert(q, 3)),
        g3: 8.0 * pi4 * PI * PI / 27.0 * (1.0 - 504.0 * lambert(q, 5)),
    })
}

/// `g2`, `g3` of a general lattice, from homogeneity in `omega1`.
pub fn lattice_invariants(lattice: &Lattice) -> Result<(Complex64, Complex64)> {
    let ev = eisenstein(lattice.tau())?;
    let w = lattice.omega1();
    Ok((ev.g2 / w.powu(4), ev.g3 / w.powu(6)))
}

/// The Kronecker double q-series
/// `-sum_{(m+1/2)(n+1/2) > 0} sign(m+1/2) exp(2 pi i (m n tau + m x + n y))`,
/// valid for `0 < Im x, Im y < Im tau`.
///
/// The two quadrants `m, n >= 0` and `m, n <= -1` are summed separately;
/// within each the inner geometric sum over `n` is taken in closed form.
pub fn f_qseries(tau: Complex64, x: Complex64, y: Complex64) -> Result<Complex64> {
    f_qseries_counted(tau, x, y).map(|(v, _)| v)
}

pub fn f_qseries_counted(tau: Complex64, x: Complex64, y: Complex64) -> Result<(Complex64, usize)> {
    check_tau(tau)?;
    if !(x.im > 0.0 && x.im < tau.im) {
        return Err(Error::OutsideStrip { which: "x" });
    }
    if !(y.im > 0.0 && y.im < tau.im) {
        return Err(Error::OutsideStrip { which: "y" });
    }
    let q = (i_c(2.0 * PI) * tau).exp();
    let xq = (i_c(2.0 * PI) * x).exp();
    let yq = (i_c(2.0 * PI) * y).exp();
    let y_inv = 1.0 / yq;

    // m >= 0, n >= 0: -sum_m X^m / (1 - q^m Y)
    let ratio = xq.norm();
    let mut upper = CompensatedSum::new();
    let (mut xm, mut qm) = (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
    let mut terms = 0;
    for _ in 0..MAX_Q_TERMS {
        let t = xm / (1.0 - qm * yq);
        upper.add(t);
        terms += 1;
        if t.norm() / (1.0 - ratio) <= 1e-17 * upper.value().norm() {
            break;
        }
        xm *= xq;
        qm *= q;
    }

    // m, n <= -1: sum_{m>=1} (q/X)^m Y^-1 / (1 - q^m Y^-1)
    let step = q / xq;
    let ratio = step.norm();
    let mut lower = CompensatedSum::new();
    let (mut sm, mut qm) = (step, q);
    for _ in 0..MAX_Q_TERMS {
        let t = sm * y_inv / (1.0 - qm * y_inv);
        lower.add(t);
        terms += 1;
        if t.norm() / (1.0 - ratio) <= 1e-17 * (lower.value().norm() + upper.value().norm()) {
            break;
        }
        sm *= step;
        qm *= q;
    }
    if terms >= 2 * MAX_Q_TERMS {
        return Err(Error::SlowConvergence { q_abs: xq.norm().max(step.norm()) });
    }
    Ok((lower.value() - upper.value(), terms))
}

fn tau_guard(tau: Complex64) -> f64 {
    crate::lattice::POLE_GUARD_SCALE * tau.norm().max(1.0)
}

fn check_off_tau_lattice(tau: Complex64, z: Complex64) -> Result<()> {
    let l = Lattice::from_tau(tau)?;
    let distance = l.nearest_lattice_distance(z);
    let guard = tau_guard(tau);
    if !(distance >= guard) {
        return Err(Error::TooCloseToPole { distance, guard });
    }
    Ok(())
}

/// The Kronecker function as a theta quotient,
/// `(theta11'(0)/(2 pi i)) * theta11(x+y) / (theta11(x) theta11(y))`.
pub fn f_theta(tau: Complex64, x: Complex64, y: Complex64) -> Result<Complex64> {
    check_off_tau_lattice(tau, x)?;
    check_off_tau_lattice(tau, y)?;
    let d0 = theta11(tau, Complex64::new(0.0, 0.0), 1)?;
    let num = theta11(tau, x + y, 0)?;
    Ok(d0 / i_c(2.0 * PI) * num / (theta11(tau, x, 0)? * theta11(tau, y, 0)?))
}

/// Weierstrass zeta on `Z + Z*tau` as `eta1*x + theta11'(x)/theta11(x)`.
pub fn zeta_theta_oracle(tau: Complex64, x: Complex64) -> Result<Complex64> {
    check_off_tau_lattice(tau, x)?;
    let eta1 = PI * PI / 3.0 * e2(tau)?;
    Ok(eta1 * x + theta11(tau, x, 1)? / theta11(tau, x, 0)?)
}

/// Weierstrass p on `Z + Z*tau` as `-eta1 - (theta''/theta - (theta'/theta)^2)`.
pub fn wp_theta_oracle(tau: Complex64, x: Complex64) -> Result<Complex64> {
    check_off_tau_lattice(tau, x)?;
    let eta1 = PI * PI / 3.0 * e2(tau)?;
    let t0 = theta11(tau, x, 0)?;
    let l1 = theta11(tau, x, 1)? / t0;
    let l2 = theta11(tau, x, 2)? / t0;
    Ok(-eta1 - (l2 - l1 * l1))
}

/// Partial sum of the defining series
/// `1/x + sum_{0 < |omega| <= R} (1/(x+omega) - 1/omega + x/omega^2)`.
pub fn zeta_classical(lattice: &Lattice, x: Complex64, radius: f64) -> Result<Complex64> {
    zeta_classical_counted(lattice, x, radius).map(|(v, _)| v)
}

pub fn zeta_classical_counted(lattice: &Lattice, x: Complex64, radius: f64) -> Result<(Complex64, usize)> {
    lattice.check_off_lattice(x)?;
    if !(radius >= 5.0 * lattice.basis_length()) {
        return Err(Error::InvalidArgument(format!(
            "classical radius {radius} below 5 * basis length {}",
            lattice.basis_length()
        )));
    }
    let points = lattice.shell_with_cap(radius, false, DEFAULT_SHELL_CAP)?;
    let mut acc = CompensatedSum::new();
    acc.add(1.0 / x);
    for &w in &points {
        acc.add(1.0 / (x + w) - 1.0 / w + x / (w * w));
    }
    Ok((acc.value(), points.len() + 1))
}

/// Partial sum of Epstein's
/// `phi1(s, L, x) = sum_{|omega+x| <= R} 1 / ((omega+x) |omega+x|^(2s-1))`.
///
/// Only the absolutely convergent range is supported; the continuation to
/// `s = 1/2` is not computed here.
pub fn epstein_phi1(lattice: &Lattice, x: Complex64, s: f64, radius: f64) -> Result<Complex64> {
    if !(s >= 1.25) {
        return Err(Error::BadExponent { s });
    }
    lattice.check_off_lattice(x)?;
    let acc: CompensatedSum = lattice
        .points_in_disc(-x, radius, DEFAULT_SHELL_CAP)?
        .into_iter()
        .map(|p| {
            let z = p.value + x;
            1.0 / (z * z.norm().powf(2.0 * s - 1.0))
        })
        .collect();
    Ok(acc.value())
}

/// Tail estimate `~ (2 pi / a) R^(2-2s) / (2s-2)` for [`epstein_phi1`].
pub fn epstein_tail_estimate(lattice: &Lattice, s: f64, radius: f64) -> f64 {
    2.0 * PI / lattice.area() * radius.powf(2.0 - 2.0 * s) / (2.0 * s - 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn theta11_basic() {
        let tau = c(0.3, 1.2);
        assert!(theta11(tau, c(0.0, 0.0), 0).unwrap().norm() < 1e-16);
        let z = c(0.21, 0.37);
        let t = theta11(tau, z, 0).unwrap();
        assert!((theta11(tau, z + 1.0, 0).unwrap() + t).norm() <= 1e-13 * t.norm());
        let shifted = theta11(tau, z + tau, 0).unwrap();
        let factor = -(i_c(-PI) * tau - i_c(2.0 * PI) * z).exp();
        assert!((shifted - factor * t).norm() <= 1e-12 * (factor * t).norm());
        assert!((theta11(tau, -z, 0).unwrap() + t).norm() <= 1e-13 * t.norm());
        assert!(matches!(theta11(tau, z, 4), Err(Error::InvalidArgument(_))));
        assert!(matches!(theta11(c(0.0, -1.0), z, 0), Err(Error::BadModulus { .. })));
    }

    #[test]
    fn theta11_derivatives_match_finite_differences() {
        let (tau, z, h) = (c(0.3, 1.2), c(0.21, 0.37), 1e-4);
        for order in 1..=3 {
            let fd = (theta11(tau, z + h, order - 1).unwrap() - theta11(tau, z - h, order - 1).unwrap()) / (2.0 * h);
            let exact = theta11(tau, z, order).unwrap();
            assert!((fd - exact).norm() <= 1e-6 * (1.0 + exact.norm()), "order {order}");
        }
    }

    #[test]
    fn theta00_basic() {
        let tau = c(0.0, 1.0);
        let v = theta00(tau, c(0.0, 0.0)).unwrap();
        // pi^(1/4) / Gamma(3/4)
        assert!((v - c(1.086_434_811_213_308, 0.0)).norm() < 1e-15);
        let tau = c(0.3, 1.2);
        let z = c(0.21, 0.37);
        let t = theta00(tau, z).unwrap();
        assert!((theta00(tau, z + 1.0).unwrap() - t).norm() <= 1e-14 * t.norm());
        let factor = (i_c(-PI) * tau - i_c(2.0 * PI) * z).exp();
        assert!((theta00(tau, z + tau).unwrap() - factor * t).norm() <= 1e-12 * t.norm());
    }

    #[test]
    fn eisenstein_at_i() {
        let ev = eisenstein(c(0.0, 1.0)).unwrap();
        assert!((ev.e2 - c(3.0 / PI, 0.0)).norm() < 1e-14);
        assert!(ev.g3.norm() <= 1e-12 * ev.g2.norm());
        let far = eisenstein(c(0.1, 8.0)).unwrap();
        assert!((far.e2 - 1.0).norm() < 1e-20f64.max(24.0 * (-16.0 * PI).exp() * 1.01));
        assert!(matches!(eisenstein(c(0.0, 0.01)), Err(Error::SlowConvergence { .. })));
    }

    #[test]
    fn e2_quasimodular_anomaly() {
        for tau in [c(0.3, 1.2), c(-0.2, 0.9), c(0.1, 1.05)] {
            let lhs = e2(-1.0 / tau).unwrap() - tau * tau * e2(tau).unwrap();
            let rhs = -6.0 * i_c(1.0) * tau / PI;
            assert!((lhs - rhs).norm() <= 1e-10, "{tau}");
        }
    }

    #[test]
    fn kronecker_oracles_agree() {
        let tau = c(0.0, 1.2);
        let x = c(0.0, 0.4);
        let q = f_qseries(tau, x, x).unwrap();
        let t = f_theta(tau, x, x).unwrap();
        assert!((q - t).norm() <= 1e-12 * (1.0 + t.norm()));
        assert!(q.im.abs() <= 1e-12 * q.norm());
        let (x, y) = (c(0.2, 0.3), c(0.1, 0.4));
        assert!((f_qseries(tau, x, y).unwrap() - f_qseries(tau, y, x).unwrap()).norm() <= 1e-12);
        assert!(matches!(f_qseries(tau, c(0.1, -0.1), y), Err(Error::OutsideStrip { .. })));
        assert!(matches!(f_qseries(tau, x, c(0.1, 1.3)), Err(Error::OutsideStrip { .. })));
    }

    #[test]
    fn f_theta_zero_and_residue() {
        let tau = c(0.3, 1.2);
        assert!(f_theta(tau, c(0.2, 0.3), c(-0.2, -0.3)).unwrap().norm() < 1e-14);
        let x = c(1e-4, 0.0);
        let v = x * f_theta(tau, x, c(0.1, 0.4)).unwrap();
        assert!((v - 1.0 / i_c(2.0 * PI)).norm() <= 1e-4);
        assert!(matches!(f_theta(tau, c(0.0, 0.0), c(0.1, 0.4)), Err(Error::TooCloseToPole { .. })));
    }

    #[test]
    fn zeta_oracle_half_period_and_oddness() {
        let tau = c(0.0, 1.0);
        let lg = theta11(tau, c(0.5, 0.0), 1).unwrap() / theta11(tau, c(0.5, 0.0), 0).unwrap();
        assert!(lg.norm() < 1e-14);
        let tau = c(0.3, 1.2);
        let x = c(0.21, 0.37);
        let z = zeta_theta_oracle(tau, x).unwrap();
        assert!((zeta_theta_oracle(tau, -x).unwrap() + z).norm() <= 1e-12 * z.norm());
    }

    #[test]
    fn wp_oracle_laurent_and_parity() {
        let tau = c(0.3, 1.2);
        let x = c(1e-3, 0.0);
        assert!((x * x * wp_theta_oracle(tau, x).unwrap() - 1.0).norm() <= 1e-4);
        let x = c(0.21, 0.37);
        let p = wp_theta_oracle(tau, x).unwrap();
        assert!((wp_theta_oracle(tau, -x).unwrap() - p).norm() <= 1e-11 * (1.0 + p.norm()));
    }

    #[test]
    fn classical_sum() {
        let l = Lattice::from_tau(c(0.0, 1.0)).unwrap();
        let x = c(0.3, 0.2);
        let a = zeta_classical(&l, x, 100.0).unwrap();
        let b = zeta_classical(&l, -x, 100.0).unwrap();
        assert!((a + b).norm() <= 1e-10);
        let oracle = zeta_theta_oracle(c(0.0, 1.0), x).unwrap();
        assert!((a - oracle).norm() <= 1e-2);
        assert!(matches!(zeta_classical(&l, x, 2.0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn epstein() {
        let l = Lattice::from_tau(c(0.0, 1.0)).unwrap();
        let x = c(0.5, 0.5);
        let a = epstein_phi1(&l, x, 2.0, 50.0).unwrap();
        let b = epstein_phi1(&l, x, 2.0, 100.0).unwrap();
        assert!((a - b).norm() <= epstein_tail_estimate(&l, 2.0, 50.0));
        let x = c(0.31, 0.17);
        let p = epstein_phi1(&l, x, 1.5, 30.0).unwrap();
        let m = epstein_phi1(&l, -x, 1.5, 30.0).unwrap();
        assert!((p + m).norm() <= epstein_tail_estimate(&l, 1.5, 30.0));
        assert!(matches!(epstein_phi1(&l, x, 1.0, 10.0), Err(Error::BadExponent { .. })));
    }
}
