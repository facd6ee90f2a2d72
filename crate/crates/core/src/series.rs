//! Gaussian lattice series for Hecke's Z, Weierstrass p and p', and the
//! Kronecker function.
//!
//! Every function here is a combination of sums of the shape
//! `sum_omega g(omega) * exp(-(pi/a)|omega - center|^2)`, so all of them share
//! one adaptive summation engine: lattice points are enumerated in a disc
//! around each sum's Gaussian center, sorted by distance, and accumulated band
//! by band until the extension test passes.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::{trunc_radius, Lattice, LatticePoint, DEFAULT_SHELL_CAP};
use crate::quasiperiods;
use crate::sum::CompensatedSum;

/// A series value with its truncation bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    /// Size of the last adaptive-extension correction plus the tail bound and
    /// a rounding floor. Can exceed the requested tolerance only through the
    /// rounding floor.
    pub abs_error_estimate: f64,
    /// Number of lattice terms summed, over all constituent sums.
    pub terms_used: usize,
    /// Final truncation radius.
    pub radius: f64,
}

/// One lattice sum inside a series.
pub(crate) struct Branch<'a> {
    /// The sum runs over lattice points with `|omega - center| <= R`.
    pub center: Complex64,
    pub skip_origin: bool,
    pub prefactor: Complex64,
    /// Bound on `|term| / exp(-(pi/a) d^2)` at distance `d` from the center.
    pub envelope: &'a dyn Fn(f64) -> f64,
    pub term: &'a dyn Fn(&LatticePoint) -> Complex64,
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// `exp(re + i*2*pi*turns)` with the phase given in turns.
pub(crate) fn exp_turns(re: f64, turns: f64) -> Complex64 {
    Complex64::from_polar(re.exp(), 2.0 * PI * turns.rem_euclid(1.0))
}

pub(crate) fn adaptive_sum(lattice: &Lattice, tol: f64, branches: &[Branch<'_>]) -> Result<EvalResult> {
    check_tol(tol)?;
    let k = PI / lattice.area();
    let plan = trunc_radius(lattice.area(), tol);
    let radii = plan.radii(lattice.basis_length());
    let outer = *radii.last().unwrap();

    let mut items: Vec<(f64, usize, LatticePoint)> = Vec::new();
    for (b, branch) in branches.iter().enumerate() {
        for p in lattice.points_in_disc(branch.center, outer, DEFAULT_SHELL_CAP)? {
            if branch.skip_origin && p.m == 0 && p.n == 0 {
                continue;
            }
            items.push(((p.value - branch.center).norm(), b, p));
        }
    }
    items.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then((a.2.m, a.2.n).cmp(&(b.2.m, b.2.n))));

    let mut acc = vec![CompensatedSum::new(); branches.len()];
    // Rounding floor: a few ulps of the absolute term mass.
    let mut mass = 0.0;
    let total =
        |acc: &[CompensatedSum]| -> Complex64 { acc.iter().zip(branches).map(|(s, b)| b.prefactor * s.value()).sum() };
    let tail = |r: f64| -> f64 {
        2.0 * branches.iter().map(|b| b.prefactor.norm() * (b.envelope)(r)).sum::<f64>() * (-k * r * r).exp()
    };

    let mut next = 0;
    let mut previous: Option<Complex64> = None;
    let mut outcome = None;
    for &r in &radii {
        while next < items.len() && items[next].0 <= r {
            let (_, b, ref p) = items[next];
            let t = (branches[b].term)(p);
            mass += branches[b].prefactor.norm() * t.norm();
            acc[b].add(t);
            next += 1;
        }
        let value = total(&acc);
        let change = previous.map(|prev| (value - prev).norm());
        outcome = Some((value, r, change));
        if matches!(change, Some(ch) if ch <= tol / 2.0) {
            break;
        }
        previous = Some(value);
    }
    let (value, radius, change) = outcome.unwrap();
    // With a single radius (extensions clamped away) only the tail bound is available.
    let truncation = change.unwrap_or(0.0) + tail(radius);
    if !(truncation <= tol) {
        return Err(Error::ToleranceNotReached { tol, achieved: truncation });
    }
    Ok(EvalResult {
        value,
        abs_error_estimate: truncation + 4.0 * f64::EPSILON * mass,
        terms_used: next.max(1),
        radius,
    })
}

/// Hecke's Z-function `Z(x, L) = zeta(x) - x1*eta1 - x2*eta2`, evaluated as the
/// difference of the two Gaussian sums
///
/// `sum_{omega} exp(-(pi/a)|omega+x|^2)/(omega+x)
///   - sum_{omega != 0} exp(-(pi/a)|omega|^2 + 2 pi i E(omega, x))/omega`.
pub fn zee(lattice: &Lattice, x: Complex64, tol: f64) -> Result<EvalResult> {
    lattice.check_off_lattice(x)?;
    let k = PI / lattice.area();
    let xc = lattice.real_coords(x);
    let shifted = |p: &LatticePoint| {
        let s = p.value + x;
        (-k * s.norm_sqr()).exp() / s
    };
    let dual = |p: &LatticePoint| exp_turns(-k * p.value.norm_sqr(), p.m as f64 * xc.x2 - p.n as f64 * xc.x1) / p.value;
    let inv = |d: f64| 1.0 / d;
    adaptive_sum(
        lattice,
        tol,
        &[
            Branch { center: -x, skip_origin: false, prefactor: 1.0.into(), envelope: &inv, term: &shifted },
            Branch { center: 0.0.into(), skip_origin: true, prefactor: (-1.0).into(), envelope: &inv, term: &dual },
        ],
    )
}

/// Weierstrass p. The constant `c` of the quasi-period decomposition comes
/// from [`quasiperiods::quasi_periods`].
pub fn wp(lattice: &Lattice, x: Complex64, tol: f64) -> Result<EvalResult> {
    let qp = quasiperiods::quasi_periods(lattice)?;
    wp_with_constant(lattice, qp.c, x, tol)
}

/// Weierstrass p with a precomputed constant `c`:
///
/// `p(x) = -c + sum (1 + k|omega+x|^2) e^{-k|omega+x|^2}/(omega+x)^2
///        + k sum_{omega != 0} |omega|^2 e^{-k|omega|^2 + 2 pi i E(omega,x)}/omega^2`
/// with `k = pi/a`.
pub fn wp_with_constant(lattice: &Lattice, c: Complex64, x: Complex64, tol: f64) -> Result<EvalResult> {
    lattice.check_off_lattice(x)?;
    let k = PI / lattice.area();
    let xc = lattice.real_coords(x);
    let shifted = |p: &LatticePoint| {
        let s = p.value + x;
        let r = k * s.norm_sqr();
        (1.0 + r) * (-r).exp() / (s * s)
    };
    let dual = |p: &LatticePoint| {
        let w = p.value;
        let phase = exp_turns(-k * w.norm_sqr(), p.m as f64 * xc.x2 - p.n as f64 * xc.x1);
        w.norm_sqr() * phase / (w * w)
    };
    let env_shifted = |d: f64| (1.0 + k * d * d) / (d * d);
    let env_dual = |_: f64| 1.0;
    let mut r = adaptive_sum(
        lattice,
        tol,
        &[
            Branch { center: -x, skip_origin: false, prefactor: 1.0.into(), envelope: &env_shifted, term: &shifted },
            Branch { center: 0.0.into(), skip_origin: true, prefactor: k.into(), envelope: &env_dual, term: &dual },
        ],
    )?;
    r.value -= c;
    Ok(r)
}

/// Derivative of Weierstrass p:
///
/// `p'(x) = -sum (1 + (1 + k|omega+x|^2)^2) e^{-k|omega+x|^2}/(omega+x)^3
///         + k^2 sum_{omega != 0} |omega|^4 e^{-k|omega|^2 + 2 pi i E(omega,x)}/omega^3`.
pub fn wp_prime(lattice: &Lattice, x: Complex64, tol: f64) -> Result<EvalResult> {
    lattice.check_off_lattice(x)?;
    let k = PI / lattice.area();
    let xc = lattice.real_coords(x);
    let shifted = |p: &LatticePoint| {
        let s = p.value + x;
        let r = k * s.norm_sqr();
        (1.0 + (1.0 + r) * (1.0 + r)) * (-r).exp() / (s * s * s)
    };
    let dual = |p: &LatticePoint| {
        let w = p.value;
        let n2 = w.norm_sqr();
        let phase = exp_turns(-k * n2, p.m as f64 * xc.x2 - p.n as f64 * xc.x1);
        n2 * n2 * phase / (w * w * w)
    };
    let env_shifted = |d: f64| {
        let r = k * d * d;
        (1.0 + (1.0 + r) * (1.0 + r)) / (d * d * d)
    };
    let env_dual = |d: f64| d;
    adaptive_sum(
        lattice,
        tol,
        &[
            Branch { center: -x, skip_origin: false, prefactor: (-1.0).into(), envelope: &env_shifted, term: &shifted },
            Branch {
                center: 0.0.into(),
                skip_origin: true,
                prefactor: (k * k).into(),
                envelope: &env_dual,
                term: &dual,
            },
        ],
    )
}

/// The Kronecker function `F(x, y; tau)` for any `x`, `y` off the lattice
/// `Z + Z*tau`, from its symmetric pair of Gaussian sums:
///
/// `2 pi i F = e^{-k x (y - conj y)} sum e^{-k|omega+x|^2 - 2 pi i E(omega,y)}/(omega+x)
///           + (x <-> y)` with `k = pi/Im(tau)`.
pub fn kronecker_f(tau: Complex64, x: Complex64, y: Complex64, tol: f64) -> Result<EvalResult> {
    let lattice = Lattice::from_tau(tau)?;
    lattice.check_off_lattice(x)?;
    lattice.check_off_lattice(y)?;
    let k = PI / lattice.area();
    let xc = lattice.real_coords(x);
    let yc = lattice.real_coords(y);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let pre_x = (-k * x * (y - y.conj())).exp() / two_pi_i;
    let pre_y = (-k * y * (x - x.conj())).exp() / two_pi_i;
    let around_x = |p: &LatticePoint| {
        let s = p.value + x;
        exp_turns(-k * s.norm_sqr(), -(p.m as f64 * yc.x2 - p.n as f64 * yc.x1)) / s
    };
    let around_y = |p: &LatticePoint| {
        let s = p.value + y;
        exp_turns(-k * s.norm_sqr(), -(p.m as f64 * xc.x2 - p.n as f64 * xc.x1)) / s
    };
    let inv = |d: f64| 1.0 / d;
    adaptive_sum(
        &lattice,
        tol,
        &[
            Branch { center: -x, skip_origin: false, prefactor: pre_x, envelope: &inv, term: &around_x },
            Branch { center: -y, skip_origin: false, prefactor: pre_y, envelope: &inv, term: &around_y },
        ],
    )
}

/// Residual of
/// `sum (omega+x) e^{-k|omega+x|^2} = sum omega e^{-k|omega|^2 + 2 pi i E(omega,x)}`,
/// the identity behind holomorphy of the Z series in the periods.
pub fn remark1_residual(lattice: &Lattice, x: Complex64, tol: f64) -> Result<EvalResult> {
    let k = PI / lattice.area();
    let xc = lattice.real_coords(x);
    let shifted = |p: &LatticePoint| {
        let s = p.value + x;
        s * (-k * s.norm_sqr()).exp()
    };
    let dual = |p: &LatticePoint| p.value * exp_turns(-k * p.value.norm_sqr(), p.m as f64 * xc.x2 - p.n as f64 * xc.x1);
    let lin = |d: f64| d;
    adaptive_sum(
        lattice,
        tol,
        &[
            Branch { center: -x, skip_origin: false, prefactor: 1.0.into(), envelope: &lin, term: &shifted },
            Branch { center: 0.0.into(), skip_origin: false, prefactor: (-1.0).into(), envelope: &lin, term: &dual },
        ],
    )
}
