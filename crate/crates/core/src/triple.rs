//! Coefficients of the triple product `m3(t_u* theta, alpha, t_v* theta)` on the
//! elliptic curve `C / (Z + Z*tau)`, computed from the Fourier coefficients of
//! `h_w = Q(t_w* theta * alpha)` and of the theta-product expansion.
//!
//! The operators behind `m3` are never built; the coefficient is assembled
//! from the `(m, n)` double sums, and the simplified lattice-sum form is
//! evaluated alongside so the simplification can be checked numerically.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::{trunc_radius, Lattice, LatticePoint, DEFAULT_SHELL_CAP};
use crate::oracles;
use crate::series::{check_tol, exp_turns};
use crate::sum::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TripleCase {
    /// Both `L(u) L^-1` and `L(v) L^-1` nontrivial: `u`, `v` off the lattice.
    CaseA { u: Complex64, v: Complex64 },
    /// `u = 0`; only `v` is off the lattice.
    CaseB { v: Complex64 },
}

impl TripleCase {
    pub fn u(&self) -> Complex64 {
        match *self {
            TripleCase::CaseA { u, .. } => u,
            TripleCase::CaseB { .. } => Complex64::new(0.0, 0.0),
        }
    }

    pub fn v(&self) -> Complex64 {
        match *self {
            TripleCase::CaseA { v, .. } | TripleCase::CaseB { v } => v,
        }
    }
}

/// Raw and simplified forms of the normalized pairing
/// `sqrt(2a) exp(-2 pi a (u2+v2)^2) <h_u t_v* theta, t_{u+v}* theta>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pairing {
    /// `sum_{m,n} a_{mn}(u) conj(b_{mn}(u, v))`, unnormalized.
    pub raw: Complex64,
    /// `raw` times `sqrt(2a) exp(-2 pi a (u2+v2)^2)`.
    pub normalized: Complex64,
    /// `exp((pi/a) u (v - conj v)) sum_omega exp(-(pi/a)|omega+u|^2 + 2 pi i E(omega,v))/(omega+u)`.
    pub simplified: Complex64,
}

fn parity_sign(m: i64, n: i64) -> f64 {
    if (m * n).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `t = m*tau - n` and `m*conj(tau) - n`.
fn lattice_vectors(tau: Complex64, m: i64, n: i64) -> (Complex64, Complex64) {
    let (mf, nf) = (m as f64, n as f64);
    (tau * mf - nf, tau.conj() * mf - nf)
}

fn a_coeff_unchecked(tau: Complex64, w: Complex64, m: i64, n: i64) -> Complex64 {
    let a = tau.im;
    let (t, tb) = lattice_vectors(tau, m, n);
    let expo = -PI / (2.0 * a) * (t.norm_sqr() + 2.0 * tb * w + w * w);
    parity_sign(m, n) * expo.exp() / (t + w)
}

fn b_coeff_unchecked(tau: Complex64, u: Complex64, v: Complex64, m: i64, n: i64) -> Complex64 {
    let a = tau.im;
    let (t, tb) = lattice_vectors(tau, m, n);
    let s = u + v - v.conj();
    let expo = -PI / (2.0 * a) * (t.norm_sqr() + 2.0 * tb * (u + v) - 2.0 * t * v.conj() + s * s);
    parity_sign(m, n) * expo.exp() / (2.0 * a).sqrt()
}

fn check_tau(tau: Complex64) -> Result<()> {
    if !(tau.im > 0.0) {
        return Err(Error::BadModulus { im: tau.im });
    }
    Ok(())
}

/// Fourier coefficient of `h_w` on `phi_{w,m,n}`:
/// `(-1)^{mn} exp(-(pi/2a)(|m tau - n|^2 + 2(m conj(tau) - n) w + w^2)) / (m tau - n + w)`.
pub fn a_coeff(tau: Complex64, w: Complex64, m: i64, n: i64) -> Result<Complex64> {
    check_tau(tau)?;
    let (t, _) = lattice_vectors(tau, m, n);
    let distance = (t + w).norm();
    let guard = crate::lattice::POLE_GUARD_SCALE * tau.norm().max(1.0);
    if !(distance >= guard) {
        return Err(Error::TooCloseToPole { distance, guard });
    }
    Ok(a_coeff_unchecked(tau, w, m, n))
}

/// Fourier coefficient of `t_{u+v}* theta * conj(t_v* theta) * exp(-2 pi a (x2^2 + 2 x2 v2))`
/// on `phi_{u,m,n}`.
pub fn b_coeff(tau: Complex64, u: Complex64, v: Complex64, m: i64, n: i64) -> Result<Complex64> {
    check_tau(tau)?;
    Ok(b_coeff_unchecked(tau, u, v, m, n))
}

/// `||t_u* theta||^2 = exp(2 pi a u2^2) / sqrt(2a)`.
pub fn theta_norm(tau: Complex64, u: Complex64) -> Result<f64> {
    let l = Lattice::from_tau(tau)?;
    let a = tau.im;
    let u2 = l.real_coords(u).x2;
    Ok((2.0 * PI * a * u2 * u2).exp() / (2.0 * a).sqrt())
}

/// Points `t = m*tau - n` with `|t - center| <= cutoff`, as `(m, n)`.
fn index_disc(lattice: &Lattice, center: Complex64, cutoff: f64) -> Result<Vec<(i64, i64)>> {
    // t = m*tau - n is the lattice point with coordinates (-n, m) in (1, tau).
    Ok(lattice.points_in_disc(center, cutoff, DEFAULT_SHELL_CAP)?.into_iter().map(|p| (p.n, -p.m)).collect())
}

fn normalization(lattice: &Lattice, u: Complex64, v: Complex64) -> f64 {
    let a = lattice.area();
    let s = lattice.real_coords(u).x2 + lattice.real_coords(v).x2;
    (2.0 * a).sqrt() * (-2.0 * PI * a * s * s).exp()
}

fn raw_pairing(
    lattice: &Lattice,
    tau: Complex64,
    u: Complex64,
    v: Complex64,
    cutoff: f64,
    skip_zero: bool,
) -> Result<Complex64> {
    // Both coefficient families are Gaussians in t centred at t = -u.
    let acc: CompensatedSum = index_disc(lattice, -u, cutoff)?
        .into_iter()
        .filter(|&(m, n)| !(skip_zero && m == 0 && n == 0))
        .map(|(m, n)| a_coeff_unchecked(tau, u, m, n) * b_coeff_unchecked(tau, u, v, m, n).conj())
        .collect();
    Ok(acc.value())
}

fn simplified_pairing(lattice: &Lattice, u: Complex64, v: Complex64, cutoff: f64) -> Result<Complex64> {
    let k = PI / lattice.area();
    let vc = lattice.real_coords(v);
    let acc: CompensatedSum = lattice
        .points_in_disc(-u, cutoff, DEFAULT_SHELL_CAP)?
        .iter()
        .map(|p: &LatticePoint| {
            let s = p.value + u;
            exp_turns(-k * s.norm_sqr(), p.m as f64 * vc.x2 - p.n as f64 * vc.x1) / s
        })
        .collect();
    Ok((k * u * (v - v.conj())).exp() * acc.value())
}

/// The pairing `<h_u t_v* theta, t_{u+v}* theta>` in both forms. The double sum
/// runs over `|m tau - n + u| <= cutoff`; the simplified lattice sum over
/// `|omega + u| <= cutoff`.
pub fn pairing(tau: Complex64, u: Complex64, v: Complex64, cutoff: f64) -> Result<Pairing> {
    let lattice = Lattice::from_tau(tau)?;
    lattice.check_off_lattice(u)?;
    let raw = raw_pairing(&lattice, tau, u, v, cutoff, false)?;
    Ok(Pairing {
        raw,
        normalized: raw * normalization(&lattice, u, v),
        simplified: simplified_pairing(&lattice, u, v, cutoff)?,
    })
}

/// Cutoff for the `(m, n)` sums at tolerance `tol`: these Gaussians decay at
/// half the rate of the lattice series, hence the factor `sqrt(2)`.
pub fn cutoff_for(tau: Complex64, tol: f64) -> f64 {
    std::f64::consts::SQRT_2 * trunc_radius(tau.im, tol).radius
}

/// Coefficient of the triple product along `t_{u+v}* theta`.
///
/// Case A equals `2 pi i F(u, -v; tau)`; case B equals `-Z(v, Z + Z*tau)`.
pub fn triple_coefficient(case: TripleCase, tau: Complex64, tol: f64) -> Result<Complex64> {
    check_tol(tol)?;
    let lattice = Lattice::from_tau(tau)?;
    let cutoff = cutoff_for(tau, tol);
    let (u, v) = (case.u(), case.v());
    lattice.check_off_lattice(v)?;
    let first = match case {
        TripleCase::CaseA { .. } => {
            lattice.check_off_lattice(u)?;
            raw_pairing(&lattice, tau, u, v, cutoff, false)?
        }
        // Q kills the constant mode, so h_0 has no (0, 0) coefficient.
        TripleCase::CaseB { .. } => raw_pairing(&lattice, tau, u, v, cutoff, true)?,
    };
    let second = raw_pairing(&lattice, tau, v, u, cutoff, false)?;
    let value = first * normalization(&lattice, u, v) - second * normalization(&lattice, v, u);
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::ToleranceNotReached { tol, achieved: f64::INFINITY });
    }
    Ok(value)
}

/// Residual of the theta-product expansion
/// `theta(x+y) conj(theta(x+z)) exp(-2 pi a (x2^2 + 2 x2 z2))
///   = (2a)^(-1/2) sum_{m,n} (-1)^{mn} exp(-(pi/2a)(...)) phi_{y-z,m,n}(x)`,
/// summing `|m tau - n + y - z| <= cutoff`.
pub fn thpr_residual(tau: Complex64, x: Complex64, y: Complex64, z: Complex64, cutoff: f64) -> Result<Complex64> {
    let lattice = Lattice::from_tau(tau)?;
    let a = tau.im;
    let xc = lattice.real_coords(x);
    let z2 = lattice.real_coords(z).x2;
    let lhs = oracles::theta00(tau, x + y)?
        * oracles::theta00(tau, x + z)?.conj()
        * (-2.0 * PI * a * (xc.x2 * xc.x2 + 2.0 * xc.x2 * z2)).exp();

    let w = y - z;
    let s = y - z.conj();
    let i2pi = Complex64::new(0.0, 2.0 * PI);
    let acc: CompensatedSum = index_disc(&lattice, -w, cutoff)?
        .into_iter()
        .map(|(m, n)| {
            let (t, tb) = lattice_vectors(tau, m, n);
            let expo = -PI / (2.0 * a) * (t.norm_sqr() + 2.0 * tb * y - 2.0 * t * z.conj() + s * s);
            let phi = i2pi * (m as f64 * xc.x1 + (n as f64 - w) * xc.x2);
            parity_sign(m, n) * (expo + phi).exp()
        })
        .collect();
    Ok(lhs - acc.value() / (2.0 * a).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn a_coeff_special_values() {
        let tau = c(0.3, 1.2);
        let w = c(0.2, 0.1);
        let expected = (-PI / (2.0 * 1.2) * w * w).exp() / w;
        assert!((a_coeff(tau, w, 0, 0).unwrap() - expected).norm() < 1e-15);

        // tau = i, real w, m = 0
        let w = c(0.37, 0.0);
        for n in -3..=3 {
            let nf = n as f64;
            let expected = (-PI / 2.0 * (nf - 0.37).powi(2)).exp() / (0.37 - nf);
            assert!((a_coeff(c(0.0, 1.0), w, 0, n).unwrap() - c(expected, 0.0)).norm() < 1e-15);
        }
        assert!(matches!(a_coeff(tau, c(1.0, 0.0), 0, 1), Err(Error::TooCloseToPole { .. })));
    }

    #[test]
    fn b_coeff_at_origin() {
        let (tau, u, v) = (c(0.3, 1.2), c(0.3, 0.2), c(0.1, 0.4));
        let s = u + v - v.conj();
        let expected = (-PI / 2.4 * s * s).exp() / 2.4f64.sqrt();
        assert!((b_coeff(tau, u, v, 0, 0).unwrap() - expected).norm() < 1e-15);
        assert!(matches!(b_coeff(c(0.0, -1.0), u, v, 0, 0), Err(Error::BadModulus { .. })));
    }

    #[test]
    fn theta_norms() {
        let i = c(0.0, 1.0);
        assert!((theta_norm(i, c(0.0, 0.0)).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
        let tau = c(0.3, 1.2);
        assert!((theta_norm(tau, c(0.77, 0.0)).unwrap() - 1.0 / 2.4f64.sqrt()).abs() < 1e-15);
        let expected = 0.5f64.sqrt() * (PI / 2.0).exp();
        assert!((theta_norm(i, c(0.0, 0.5)).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn pairing_forms_agree() {
        let (tau, u, v) = (c(0.0, 1.1), c(0.3, 0.2), c(0.1, 0.4));
        let p = pairing(tau, u, v, 10.0).unwrap();
        assert!((p.normalized - p.simplified).norm() <= 1e-10);
        let p11 = pairing(tau, u, v, 11.0).unwrap();
        assert!((p11.raw - p.raw).norm() <= 1e-12);
    }

    #[test]
    fn pairing_at_v_zero() {
        let (tau, u) = (c(0.0, 1.1), c(0.3, 0.2));
        let p = pairing(tau, u, c(0.0, 0.0), 10.0).unwrap();
        let l = Lattice::from_tau(tau).unwrap();
        let k = PI / 1.1;
        let direct: Complex64 = l
            .points_in_disc(-u, 10.0, DEFAULT_SHELL_CAP)
            .unwrap()
            .iter()
            .map(|p| {
                let s = p.value + u;
                (-k * s.norm_sqr()).exp() / s
            })
            .sum();
        assert!((p.simplified - direct).norm() <= 1e-14);
    }

    #[test]
    fn case_a_antisymmetry() {
        let (tau, u, v) = (c(0.3, 1.2), c(0.3, 0.2), c(0.1, 0.4));
        let a = triple_coefficient(TripleCase::CaseA { u, v }, tau, 1e-12).unwrap();
        let b = triple_coefficient(TripleCase::CaseA { u: v, v: u }, tau, 1e-12).unwrap();
        assert!((a + b).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn case_b_vanishes_at_half_period() {
        let v = triple_coefficient(TripleCase::CaseB { v: c(0.5, 0.0) }, c(0.0, 1.1), 1e-12).unwrap();
        assert!(v.norm() <= 1e-12);
    }

    #[test]
    fn thpr_examples() {
        let cut = cutoff_for(c(0.0, 1.0), 1e-12);
        assert!(thpr_residual(c(0.0, 1.0), c(0.2, 0.3), c(0.1, 0.0), c(0.0, 0.4), cut).unwrap().norm() <= 1e-10);
        let y = c(0.15, 0.25);
        assert!(thpr_residual(c(0.3, 1.2), c(0.2, 0.3), y, y, cut).unwrap().norm() <= 1e-10);
        assert!(thpr_residual(c(0.3, 1.2), c(0.0, 0.0), y, c(-0.1, 0.3), cut).unwrap().norm() <= 1e-10);
    }
}
