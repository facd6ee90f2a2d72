//! Quasi-periods `eta1`, `eta2`, the constant `c` with
//! `eta_i = c*omega_i + (pi/a)*conj(omega_i)`, and the full Weierstrass zeta.
//!
//! `eta1` cannot come from the Gaussian series (Z vanishes at the half
//! periods), so it is taken from the quasimodular Eisenstein series:
//! `eta1 = (pi^2/3) * E2(tau) / omega1` with `tau = omega2/omega1`.
//! `eta2` then follows from the Legendre relation.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::oracles;
use crate::series::{self, EvalResult};

/// Threshold for the internal check of `eta2 = c*omega2 + (pi/a)*conj(omega2)`.
const CONSISTENCY_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiPeriods {
    pub eta1: Complex64,
    pub eta2: Complex64,
    pub c: Complex64,
}

impl QuasiPeriods {
    /// `eta(m*omega1 + n*omega2) = m*eta1 + n*eta2`.
    pub fn eta(&self, m: i64, n: i64) -> Complex64 {
        self.eta1 * m as f64 + self.eta2 * n as f64
    }

    /// `|eta1*omega2 - eta2*omega1 - 2 pi i|`.
    pub fn legendre_residual(&self, lattice: &Lattice) -> f64 {
        (self.eta1 * lattice.omega2() - self.eta2 * lattice.omega1() - Complex64::new(0.0, 2.0 * PI)).norm()
    }

    /// Residuals of `eta_i - c*omega_i - (pi/a)*conj(omega_i)` for i = 1, 2.
    pub fn constant_residuals(&self, lattice: &Lattice) -> [f64; 2] {
        let k = PI / lattice.area();
        let res = |eta: Complex64, w: Complex64| (eta - self.c * w - k * w.conj()).norm();
        [res(self.eta1, lattice.omega1()), res(self.eta2, lattice.omega2())]
    }
}

pub fn quasi_periods(lattice: &Lattice) -> Result<QuasiPeriods> {
    let (w1, w2) = (lattice.omega1(), lattice.omega2());
    let e2 = oracles::e2(lattice.tau())?;
    let eta1 = PI * PI / 3.0 * e2 / w1;
    let eta2 = (eta1 * w2 - Complex64::new(0.0, 2.0 * PI)) / w1;
    let c = (eta1 - PI / lattice.area() * w1.conj()) / w1;
    let qp = QuasiPeriods { eta1, eta2, c };

    let [_, r2] = qp.constant_residuals(lattice);
    let scale = 1.0f64.max(eta2.norm());
    if !(r2 <= CONSISTENCY_THRESHOLD * scale) {
        return Err(Error::ConsistencyFailure { residual: r2 });
    }
    Ok(qp)
}

/// Weierstrass zeta, `zeta(x) = Z(x) + x1*eta1 + x2*eta2`.
pub fn zeta(lattice: &Lattice, x: Complex64, tol: f64) -> Result<EvalResult> {
    let qp = quasi_periods(lattice)?;
    zeta_with(lattice, &qp, x, tol)
}

pub fn zeta_with(lattice: &Lattice, qp: &QuasiPeriods, x: Complex64, tol: f64) -> Result<EvalResult> {
    let mut r = series::zee(lattice, x, tol)?;
    let xc = lattice.real_coords(x);
    r.value += qp.eta1 * xc.x1 + qp.eta2 * xc.x2;
    Ok(r)
}
