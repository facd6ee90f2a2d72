//! Oriented period lattices in the complex plane.
//!
//! A [`Lattice`] is `Z*omega1 + Z*omega2` with `Im(conj(omega1)*omega2) > 0`.
//! Besides the basic geometry (area, real coordinates, the symplectic form)
//! this module enumerates lattice points inside discs, which every series in
//! the crate is built on, and provides the truncation policy and pole guard.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Default cap on the number of points a single shell may contain.
pub const DEFAULT_SHELL_CAP: usize = 10_000_000;

/// Relative size of the pole guard: evaluation points closer than
/// `POLE_GUARD_SCALE * max(|omega1|, |omega2|)` to the lattice are rejected.
pub const POLE_GUARD_SCALE: f64 = 1e-8;

/// Margin added to `ln(1/tol)` when choosing a truncation radius. Absorbs
/// polynomial prefactors and shell multiplicity.
const TRUNCATION_MARGIN: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    omega1: Complex64,
    omega2: Complex64,
    area: f64,
}

/// Coefficients of a point in the basis `(omega1, omega2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealCoords {
    pub x1: f64,
    pub x2: f64,
}

/// A lattice point together with its integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePoint {
    pub m: i64,
    pub n: i64,
    pub value: Complex64,
}

impl Lattice {
    pub fn new(omega1: Complex64, omega2: Complex64) -> Result<Self> {
        let finite = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        if !finite(omega1) || !finite(omega2) || omega1.norm() == 0.0 || omega2.norm() == 0.0 {
            return Err(Error::DegenerateLattice);
        }
        let area = (omega1.conj() * omega2).im;
        if area.abs() <= 1e-14 * omega1.norm() * omega2.norm() {
            return Err(Error::DegenerateLattice);
        }
        if area < 0.0 {
            return Err(Error::WrongOrientation { area });
        }
        Ok(Self { omega1, omega2, area })
    }

    /// The lattice `Z + Z*tau`.
    pub fn from_tau(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::BadModulus { im: tau.im });
        }
        Self::new(Complex64::new(1.0, 0.0), tau)
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    /// Area of the fundamental parallelogram, `Im(conj(omega1)*omega2)`.
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Modular parameter `omega2 / omega1` (upper half plane).
    pub fn tau(&self) -> Complex64 {
        self.omega2 / self.omega1
    }

    /// Length of the longer generator.
    pub fn basis_length(&self) -> f64 {
        self.omega1.norm().max(self.omega2.norm())
    }

    pub fn point(&self, m: i64, n: i64) -> Complex64 {
        self.omega1 * m as f64 + self.omega2 * n as f64
    }

    /// The lattice scaled by `lambda` (orientation is preserved).
    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        Self::new(self.omega1 * lambda, self.omega2 * lambda)
    }

    /// `E_L(x, y) = Im(conj(x)*y) / area`.
    pub fn symplectic(&self, x: Complex64, y: Complex64) -> f64 {
        (x.conj() * y).im / self.area
    }

    /// Solves `x = x1*omega1 + x2*omega2` for real `x1`, `x2`.
    pub fn real_coords(&self, x: Complex64) -> RealCoords {
        // x1 = E(x, omega2), x2 = E(omega1, x); Cramer's rule on the 2x2 real system.
        RealCoords { x1: self.symplectic(x, self.omega2), x2: self.symplectic(self.omega1, x) }
    }

    pub fn from_coords(&self, c: RealCoords) -> Complex64 {
        self.omega1 * c.x1 + self.omega2 * c.x2
    }

    /// Pole guard radius for this lattice.
    pub fn pole_guard(&self) -> f64 {
        POLE_GUARD_SCALE * self.basis_length()
    }

    /// Rejects points within the pole guard of the lattice.
    pub fn check_off_lattice(&self, x: Complex64) -> Result<()> {
        let distance = self.nearest_lattice_distance(x);
        let guard = self.pole_guard();
        if !(distance >= guard) {
            return Err(Error::TooCloseToPole { distance, guard });
        }
        Ok(())
    }

    /// Distance from `x` to the closest lattice point.
    pub fn nearest_lattice_distance(&self, x: Complex64) -> f64 {
        let c = self.real_coords(x);
        let (m0, n0) = (c.x1.floor() as i64, c.x2.floor() as i64);
        let mut best = f64::INFINITY;
        for dm in -2..=2 {
            for dn in -2..=2 {
                best = best.min((x - self.point(m0 + dm, n0 + dn)).norm());
            }
        }
        if !best.is_finite() {
            return best;
        }
        // For skew bases the 5x5 block may miss the true neighbour; the disc
        // of radius `best` around x certainly contains it.
        match self.points_in_disc(x, best, DEFAULT_SHELL_CAP) {
            Ok(points) => points.iter().map(|p| (x - p.value).norm()).fold(best, f64::min),
            Err(_) => best,
        }
    }

    /// Every lattice point with `|omega| <= radius`, in lexicographic `(m, n)`
    /// order, with the origin included iff `include_origin`.
    pub fn shell(&self, radius: f64, include_origin: bool) -> Result<Vec<Complex64>> {
        self.shell_with_cap(radius, include_origin, DEFAULT_SHELL_CAP)
    }

    pub fn shell_with_cap(&self, radius: f64, include_origin: bool, cap: usize) -> Result<Vec<Complex64>> {
        Ok(self
            .points_in_disc(Complex64::new(0.0, 0.0), radius, cap)?
            .into_iter()
            .filter(|p| include_origin || p.m != 0 || p.n != 0)
            .map(|p| p.value)
            .collect())
    }

    /// Lattice points `omega` with `|omega - center| <= radius`, lexicographic
    /// in `(m, n)`.
    ///
    /// The range of `m` comes from the inverse Gram matrix
    /// (`|m - c1| <= radius*|omega2|/area`), and for each `m` the admissible `n`
    /// solve a quadratic, so skew bases are handled without basis reduction.
    pub fn points_in_disc(&self, center: Complex64, radius: f64, cap: usize) -> Result<Vec<LatticePoint>> {
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!("shell radius {radius}")));
        }
        let c = self.real_coords(center);
        let g11 = self.omega1.norm_sqr();
        let g12 = (self.omega1.conj() * self.omega2).re;
        let g22 = self.omega2.norm_sqr();
        let r2 = radius * radius;

        let m_span = radius * self.omega2.norm() / self.area;
        let m_lo = (c.x1 - m_span).floor() as i64 - 1;
        let m_hi = (c.x1 + m_span).ceil() as i64 + 1;

        // n-interval for a given m, widened by one to absorb rounding; the
        // exact distance filter below decides membership.
        let n_range = |m: i64| -> Option<(i64, i64)> {
            let s = m as f64 - c.x1;
            let disc = s * s * g12 * g12 - g22 * (s * s * g11 - r2);
            if disc < 0.0 {
                return None;
            }
            let root = disc.sqrt();
            let t_lo = (-s * g12 - root) / g22;
            let t_hi = (-s * g12 + root) / g22;
            Some(((c.x2 + t_lo).floor() as i64 - 1, (c.x2 + t_hi).ceil() as i64 + 1))
        };

        let estimate: usize = (m_lo..=m_hi).filter_map(n_range).map(|(lo, hi)| (hi - lo - 1).max(0) as usize).sum();
        if estimate > cap {
            return Err(Error::ShellTooLarge { radius, count: estimate, cap });
        }

        let mut out = Vec::with_capacity(estimate);
        for m in m_lo..=m_hi {
            let Some((n_lo, n_hi)) = n_range(m) else { continue };
            for n in n_lo..=n_hi {
                let value = self.point(m, n);
                if (value - center).norm_sqr() <= r2 {
                    out.push(LatticePoint { m, n, value });
                }
            }
        }
        Ok(out)
    }
}

/// Truncation policy for the Gaussian series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPlan {
    pub tol: f64,
    pub radius: f64,
    pub max_radius: f64,
}

impl TruncationPlan {
    /// Radii for the planned sum and up to three adaptive extensions of
    /// `step` each, clamped to `max_radius`.
    pub fn radii(&self, step: f64) -> Vec<f64> {
        let mut radii = vec![self.radius];
        for k in 1..=3 {
            let r = (self.radius + k as f64 * step).min(self.max_radius);
            if r > *radii.last().unwrap() {
                radii.push(r);
            }
        }
        radii
    }
}

/// Shell radius at which `exp(-pi*R^2/area)` drops below `tol` with margin:
/// `R = sqrt((area/pi) * (ln(1/tol) + 8))`.
pub fn trunc_radius(area: f64, tol: f64) -> TruncationPlan {
    let log_term = (1.0 / tol).ln().max(0.0);
    let radius = (area / PI * (log_term + TRUNCATION_MARGIN)).sqrt();
    TruncationPlan { tol, radius, max_radius: 2.0 * radius }
}
