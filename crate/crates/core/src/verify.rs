//! Identity ledger: runs every identity the library relies on over
//! deterministic grids and records each residual against its threshold.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::time::Instant;

use crate::cli::format_complex;
use crate::error::{Error, Result};
use crate::lattice::{Lattice, DEFAULT_SHELL_CAP};
use crate::oracles;
use crate::quasiperiods::{self, QuasiPeriods};
use crate::series::{self, exp_turns};
use crate::sum::CompensatedSum;
use crate::triple::{self, TripleCase};

/// Thresholds used by the suite and by the acceptance tests.
pub mod thresholds {
    pub const HALF_LATTICE: f64 = 1e-12;
    pub const Z_PERIODICITY: f64 = 1e-11;
    pub const ZETA_QUASI_PERIODICITY: f64 = 1e-10;
    pub const ZETA_ORACLE: f64 = 1e-10;
    /// Relative to `|eta1*omega2| + |eta2*omega1|`.
    pub const LEGENDRE: f64 = 1e-12;
    pub const ETA_CONSTANT: f64 = 1e-11;
    pub const ETA1_SYMMETRIC: f64 = 1e-12;
    pub const DBAR: f64 = 1e-5;
    pub const REMARK1: f64 = 1e-12;
    pub const POISSON: f64 = 1e-12;
    pub const KRONECKER_AGREEMENT: f64 = 1e-9;
    pub const KRONECKER_SYMMETRY: f64 = 1e-11;
    pub const COROLLARY: f64 = 1e-2;
    /// Halving `y_small` must shrink the corollary residual by at least 1.8x.
    pub const COROLLARY_RATIO: f64 = 1.0 / 1.8;
    /// Relative to `1 + |value|`.
    pub const PARITY: f64 = 1e-10;
    pub const WP_PRIME_HALF_PERIOD: f64 = 1e-10;
    /// Relative to `1 + |p|^3`.
    pub const CUBIC: f64 = 1e-7;
    /// Relative to `1 + |value|`.
    pub const HOMOGENEITY: f64 = 1e-9;
    /// Relative to `1 + |p|`.
    pub const WP_ORACLE: f64 = 1e-9;
    pub const TRIPLE: f64 = 1e-8;
    pub const PAIRING: f64 = 1e-10;
    pub const THPR: f64 = 1e-10;
}

/// The corollary residual is first order in `y` with a coefficient of size
/// `|p(x)|`, so those checks use grid points at least this far (in units of
/// the shorter generator) from the lattice.
pub const COROLLARY_POLE_DISTANCE: f64 = 0.3;

/// Finite-difference step for every derivative check.
pub const FD_STEP: f64 = 1e-4;

/// Check names the default suite must cover.
pub const REQUIRED_CHECKS: &[&str] = &[
    "corollary",
    "corollary_order",
    "corollary_symmetrized",
    "cubic_identity",
    "dbar_wp",
    "dbar_z",
    "eta_constant",
    "homogeneity_wp",
    "homogeneity_wp_prime",
    "homogeneity_zeta",
    "kronecker_antidiagonal",
    "kronecker_gauss_vs_qseries",
    "kronecker_gauss_vs_theta",
    "kronecker_symmetry",
    "kronecker_theta_vs_qseries",
    "lattice_construction",
    "legendre",
    "pairing_raw_vs_simplified",
    "poisson",
    "remark1",
    "thpr",
    "triple_case_a",
    "triple_case_b",
    "wp_even",
    "wp_oracle",
    "wp_prime_half_period",
    "wp_prime_odd",
    "z_half_lattice",
    "z_periodicity",
    "zeta_oracle",
    "zeta_quasi_periodicity",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n: usize,
    pub offset1: f64,
    pub offset2: f64,
    /// In units of the shorter generator.
    pub min_pole_distance: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { n: 4, offset1: 0.137, offset2: 0.071, min_pole_distance: 0.05 }
    }
}

impl GridSpec {
    pub fn with_n(n: usize) -> Self {
        Self { n, ..Self::default() }
    }

    /// `((i + offset1)/n) omega1 + ((j + offset2)/n) omega2`, minus points too
    /// close to the lattice.
    pub fn points(&self, lattice: &Lattice) -> Vec<Complex64> {
        let floor = self.min_pole_distance * lattice.omega1().norm().min(lattice.omega2().norm());
        let n = self.n as f64;
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let x = lattice.omega1() * ((i as f64 + self.offset1) / n)
                    + lattice.omega2() * ((j as f64 + self.offset2) / n);
                if lattice.nearest_lattice_distance(x) >= floor {
                    out.push(x);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub lattice: String,
    pub point: String,
    /// `None` when the evaluation itself failed.
    pub residual: Option<f64>,
    pub threshold: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageItem {
    pub check: String,
    pub present: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub pass: bool,
    pub records: Vec<CheckRecord>,
    pub coverage: Vec<CoverageItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn count(&self, check: &str) -> usize {
        self.records.iter().filter(|r| r.check == check).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Residual of the Poisson identity for the self-dual Gaussian
/// `phi(z) = exp(-(pi/a)|z|^2)` on `Z + Z*tau`:
/// `sum phi(omega+x) e^{-2 pi i E(omega+x, y)} - sum phi(omega+y) e^{-2 pi i E(omega, x)}`.
pub fn poisson_residual(tau: Complex64, x: Complex64, y: Complex64, cutoff: f64) -> Result<Complex64> {
    let l = Lattice::from_tau(tau)?;
    let k = PI / l.area();
    let (xc, yc) = (l.real_coords(x), l.real_coords(y));
    let e_xy = l.symplectic(x, y);
    let lhs: CompensatedSum = l
        .points_in_disc(-x, cutoff, DEFAULT_SHELL_CAP)?
        .iter()
        .map(|p| {
            let s = p.value + x;
            exp_turns(-k * s.norm_sqr(), -(p.m as f64 * yc.x2 - p.n as f64 * yc.x1) - e_xy)
        })
        .collect();
    let rhs: CompensatedSum = l
        .points_in_disc(-y, cutoff, DEFAULT_SHELL_CAP)?
        .iter()
        .map(|p| {
            let s = p.value + y;
            exp_turns(-k * s.norm_sqr(), -(p.m as f64 * xc.x2 - p.n as f64 * xc.x1))
        })
        .collect();
    Ok(lhs.value() - rhs.value())
}

/// Residuals of the limits
/// `(2 pi i F(x, y) - 1/y) -> zeta(x) - x eta1` and
/// `pi i (F(x, y) + F(x, -y)) -> zeta(x) - x eta1`
/// at `y = y_small (1+i)/sqrt(2)`, on `Z + Z*tau`.
pub fn corollary_residual(tau: Complex64, x: Complex64, y_small: f64) -> Result<(Complex64, Complex64)> {
    if !(y_small > 0.0 && y_small <= 1e-2) {
        return Err(Error::InvalidArgument(format!("y_small = {y_small} outside (0, 1e-2]")));
    }
    let tol = 1e-12;
    let l = Lattice::from_tau(tau)?;
    let qp = quasiperiods::quasi_periods(&l)?;
    let limit = quasiperiods::zeta_with(&l, &qp, x, tol)?.value - x * qp.eta1;
    let y = Complex64::new(y_small, y_small) / 2f64.sqrt();
    let i = Complex64::new(0.0, 1.0);
    let f_plus = series::kronecker_f(tau, x, y, tol)?.value;
    let f_minus = series::kronecker_f(tau, x, -y, tol)?.value;
    let first = 2.0 * PI * i * f_plus - 1.0 / y - limit;
    let symmetrized = PI * i * (f_plus + f_minus) - limit;
    Ok((first, symmetrized))
}

/// Wirtinger `d/d(conj x)` by central differences with steps [`FD_STEP`] and
/// `FD_STEP/2`, Richardson-combined to fourth order.
pub fn dbar<F: Fn(Complex64) -> Result<Complex64>>(f: F, x: Complex64) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    let central = |h: f64| -> Result<Complex64> {
        let dx = (f(x + h)? - f(x - h)?) / (2.0 * h);
        let dy = (f(x + i * h)? - f(x - i * h)?) / (2.0 * h);
        Ok((dx + i * dy) / 2.0)
    };
    let coarse = central(FD_STEP)?;
    let fine = central(FD_STEP / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

struct Recorder {
    records: Vec<CheckRecord>,
}

impl Recorder {
    fn push(&mut self, check: &str, lattice: &str, point: String, outcome: Result<f64>, threshold: f64) {
        let (residual, error) = match outcome {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let pass = matches!(residual, Some(r) if r <= threshold);
        self.records.push(CheckRecord {
            check: check.to_string(),
            lattice: lattice.to_string(),
            point,
            residual,
            threshold,
            pass,
            error,
        });
    }
}

fn rel(diff: f64, scale: f64) -> f64 {
    diff / (1.0 + scale)
}

/// Deterministic (u, v) pairs in lattice coordinates for the triple-product checks.
fn triple_pairs(l: &Lattice) -> Vec<(Complex64, Complex64)> {
    (0..5)
        .map(|j| {
            let j = j as f64;
            let u = l.omega1() * (0.31 + 0.05 * j) + l.omega2() * (0.17 + 0.06 * j);
            let v = l.omega1() * (0.12 + 0.07 * j) + l.omega2() * (0.36 - 0.04 * j);
            (u, v)
        })
        .collect()
}

/// Deterministic points in the strip `0 < Im < Im(tau)` for the Kronecker checks.
pub fn strip_points(tau: Complex64) -> Vec<(Complex64, Complex64)> {
    (0..10)
        .map(|j| {
            let j = j as f64;
            let x = Complex64::new(0.137 + 0.09 * j, tau.im * (0.2 + 0.06 * j));
            let y = Complex64::new(0.071 - 0.07 * j, tau.im * (0.75 - 0.05 * j));
            (x, y)
        })
        .collect()
}

fn label_pair(a: Complex64, b: Complex64) -> String {
    format!("{};{}", format_complex(a), format_complex(b))
}

/// Runs the full identity ledger on each `(omega1, omega2)` pair.
pub fn run_suite(lattices: &[(Complex64, Complex64)], grid: &GridSpec, tol: f64) -> Report {
    let mut rec = Recorder { records: Vec::new() };
    for &(w1, w2) in lattices {
        let label = format!("omega1={},omega2={}", format_complex(w1), format_complex(w2));
        match Lattice::new(w1, w2) {
            Ok(l) => {
                rec.push("lattice_construction", &label, String::new(), Ok(0.0), 0.0);
                lattice_checks(&mut rec, &l, &label, grid, tol);
            }
            Err(e) => rec.push("lattice_construction", &label, String::new(), Err(e), 0.0),
        }
    }
    let mut records = rec.records;
    records.sort_by(|a, b| {
        (a.check.as_str(), a.lattice.as_str(), a.point.as_str()).cmp(&(
            b.check.as_str(),
            b.lattice.as_str(),
            b.point.as_str(),
        ))
    });
    let coverage = REQUIRED_CHECKS
        .iter()
        .map(|&check| CoverageItem { check: check.to_string(), present: records.iter().any(|r| r.check == check) })
        .collect();
    Report { pass: records.iter().all(|r| r.pass), records, coverage, wall_time_s: None }
}

/// [`run_suite`] with the elapsed wall time recorded.
pub fn run_suite_timed(lattices: &[(Complex64, Complex64)], grid: &GridSpec, tol: f64) -> Report {
    let start = Instant::now();
    let mut report = run_suite(lattices, grid, tol);
    report.wall_time_s = Some(start.elapsed().as_secs_f64());
    report
}

/// The three default lattices `(1, tau)` for `tau` in `{i, e^{i pi/3}, 0.3+1.2i}`.
pub fn default_lattices() -> Vec<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    vec![(one, Complex64::new(0.0, 1.0)), (one, Complex64::from_polar(1.0, PI / 3.0)), (one, Complex64::new(0.3, 1.2))]
}

fn lattice_checks(rec: &mut Recorder, l: &Lattice, label: &str, grid: &GridSpec, tol: f64) {
    use thresholds as t;
    let points = grid.points(l);
    let few: Vec<Complex64> = points.iter().copied().take(5).collect();
    let tau = l.tau();
    let w1 = l.omega1();

    let qp = match quasiperiods::quasi_periods(l) {
        Ok(qp) => qp,
        Err(e) => {
            rec.push("legendre", label, String::new(), Err(e), t::LEGENDRE);
            return;
        }
    };

    // Quasi-periods.
    let scale = (qp.eta1 * l.omega2()).norm() + (qp.eta2 * l.omega1()).norm();
    rec.push("legendre", label, String::new(), Ok(qp.legendre_residual(l) / scale), t::LEGENDRE);
    let [r1, r2] = qp.constant_residuals(l);
    rec.push("eta_constant", label, "omega1".into(), Ok(r1), t::ETA_CONSTANT);
    rec.push("eta_constant", label, "omega2".into(), Ok(r2), t::ETA_CONSTANT);

    // Half-lattice vanishing of Z.
    for (name, h) in
        [("omega1/2", w1 / 2.0), ("omega2/2", l.omega2() / 2.0), ("(omega1+omega2)/2", (w1 + l.omega2()) / 2.0)]
    {
        let r = series::zee(l, h, tol).map(|r| r.value.norm());
        rec.push("z_half_lattice", label, name.into(), r, t::HALF_LATTICE);
    }

    for &x in &points {
        let px = format_complex(x);
        let z = series::zee(l, x, tol);

        // Periodicity of Z.
        for w in [w1, l.omega2(), w1 + l.omega2()] {
            let r = z.clone().and_then(|z0| Ok((series::zee(l, x + w, tol)?.value - z0.value).norm()));
            rec.push("z_periodicity", label, format!("{px}+{}", format_complex(w)), r, t::Z_PERIODICITY);
        }

        // Quasi-periodicity of zeta and agreement with the theta oracle.
        let zeta = quasiperiods::zeta_with(l, &qp, x, tol);
        for (w, eta) in [(w1, qp.eta1), (l.omega2(), qp.eta2)] {
            let r = zeta
                .clone()
                .and_then(|z0| Ok((quasiperiods::zeta_with(l, &qp, x + w, tol)?.value - z0.value - eta).norm()));
            rec.push(
                "zeta_quasi_periodicity",
                label,
                format!("{px}+{}", format_complex(w)),
                r,
                t::ZETA_QUASI_PERIODICITY,
            );
        }
        let r = zeta.clone().and_then(|z0| {
            let oracle = oracles::zeta_theta_oracle(tau, x / w1)? / w1;
            Ok((z0.value - oracle).norm())
        });
        rec.push("zeta_oracle", label, px.clone(), r, t::ZETA_ORACLE);

        // dbar Z = -pi/a, dbar p = 0.
        let r = dbar(|p| series::zee(l, p, tol).map(|r| r.value), x).map(|d| (d + PI / l.area()).norm());
        rec.push("dbar_z", label, px.clone(), r, t::DBAR);
        let r = dbar(|p| series::wp_with_constant(l, qp.c, p, tol).map(|r| r.value), x).map(|d| d.norm());
        rec.push("dbar_wp", label, px.clone(), r, t::DBAR);

        // Parity of p and p', agreement of p with the theta oracle.
        let r = (|| {
            let p = series::wp_with_constant(l, qp.c, x, tol)?.value;
            let pm = series::wp_with_constant(l, qp.c, -x, tol)?.value;
            Ok(rel((p - pm).norm(), p.norm()))
        })();
        rec.push("wp_even", label, px.clone(), r, t::PARITY);
        let r = (|| {
            let d = series::wp_prime(l, x, tol)?.value;
            let dm = series::wp_prime(l, -x, tol)?.value;
            Ok(rel((d + dm).norm(), d.norm()))
        })();
        rec.push("wp_prime_odd", label, px.clone(), r, t::PARITY);
        let r = (|| {
            let p = series::wp_with_constant(l, qp.c, x, tol)?.value;
            let oracle = oracles::wp_theta_oracle(tau, x / w1)? / (w1 * w1);
            Ok(rel((p - oracle).norm(), p.norm()))
        })();
        rec.push("wp_oracle", label, px.clone(), r, t::WP_ORACLE);
    }

    // Weierstrass cubic.
    match oracles::lattice_invariants(l) {
        Ok((g2, g3)) => {
            for &x in points.iter().take(10) {
                let r = (|| {
                    let p = series::wp_with_constant(l, qp.c, x, tol)?.value;
                    let d = series::wp_prime(l, x, tol)?.value;
                    let res = d * d - (4.0 * p * p * p - g2 * p - g3);
                    Ok(res.norm() / (1.0 + p.norm().powi(3)))
                })();
                rec.push("cubic_identity", label, format_complex(x), r, t::CUBIC);
            }
        }
        Err(e) => rec.push("cubic_identity", label, String::new(), Err(e), t::CUBIC),
    }

    // Half-period zeros of p'.
    for (name, h) in
        [("omega1/2", w1 / 2.0), ("omega2/2", l.omega2() / 2.0), ("(omega1+omega2)/2", (w1 + l.omega2()) / 2.0)]
    {
        let r = series::wp_prime(l, h, tol).map(|r| r.value.norm());
        rec.push("wp_prime_half_period", label, name.into(), r, t::WP_PRIME_HALF_PERIOD);
    }

    // Homogeneity: zeta degree -1, p degree -2, p' degree -3.
    for lambda in [Complex64::new(2.0, 0.0), Complex64::new(1.0, 1.0)] {
        let scaled = l.scaled(lambda).and_then(|s| Ok((s, quasiperiods::quasi_periods(&s)?)));
        for &x in &few {
            let pl = format!("lambda={};x={}", format_complex(lambda), format_complex(x));
            let homog =
                |f: &dyn Fn(&Lattice, &QuasiPeriods, Complex64) -> Result<Complex64>, degree: i32| -> Result<f64> {
                    let (s, sqp) = scaled.clone()?;
                    let big = f(&s, &sqp, lambda * x)?;
                    let small = f(l, &qp, x)?;
                    let expected = small * lambda.powi(degree);
                    Ok(rel((big - expected).norm(), expected.norm()))
                };
            let r = homog(&|l, qp, x| Ok(quasiperiods::zeta_with(l, qp, x, tol)?.value), -1);
            rec.push("homogeneity_zeta", label, pl.clone(), r, t::HOMOGENEITY);
            let r = homog(&|l, qp, x| Ok(series::wp_with_constant(l, qp.c, x, tol)?.value), -2);
            rec.push("homogeneity_wp", label, pl.clone(), r, t::HOMOGENEITY);
            let r = homog(&|l, _, x| Ok(series::wp_prime(l, x, tol)?.value), -3);
            rec.push("homogeneity_wp_prime", label, pl, r, t::HOMOGENEITY);
        }
    }

    // Period-holomorphy identity and the Poisson identity.
    let cutoff = triple::cutoff_for(tau, tol.min(1e-12));
    for &x in &few {
        let r = series::remark1_residual(l, x, tol.min(1e-12)).map(|r| r.value.norm());
        rec.push("remark1", label, format_complex(x), r, t::REMARK1);
    }
    let tl = Lattice::from_tau(tau);
    for (j, &x) in few.iter().enumerate() {
        let y = few[(j + 2) % few.len()] / w1;
        let r = poisson_residual(tau, x / w1, y, cutoff).map(|r| r.norm());
        rec.push("poisson", label, label_pair(x / w1, y), r, t::POISSON);
    }

    // Kronecker function: Gaussian series vs theta quotient vs q-series.
    for (x, y) in strip_points(tau) {
        let pl = label_pair(x, y);
        let gauss = series::kronecker_f(tau, x, y, tol.min(1e-12)).map(|r| r.value);
        let theta = oracles::f_theta(tau, x, y);
        let qs = oracles::f_qseries(tau, x, y);
        let diff =
            |a: &Result<Complex64>, b: &Result<Complex64>| -> Result<f64> { Ok((a.clone()? - b.clone()?).norm()) };
        rec.push("kronecker_gauss_vs_theta", label, pl.clone(), diff(&gauss, &theta), t::KRONECKER_AGREEMENT);
        rec.push("kronecker_gauss_vs_qseries", label, pl.clone(), diff(&gauss, &qs), t::KRONECKER_AGREEMENT);
        rec.push("kronecker_theta_vs_qseries", label, pl.clone(), diff(&theta, &qs), t::KRONECKER_AGREEMENT);
        let swapped = series::kronecker_f(tau, y, x, tol.min(1e-12)).map(|r| r.value);
        rec.push("kronecker_symmetry", label, pl.clone(), diff(&gauss, &swapped), t::KRONECKER_SYMMETRY);
        let r = series::kronecker_f(tau, x, -x, tol.min(1e-12)).map(|r| r.value.norm());
        rec.push("kronecker_antidiagonal", label, format_complex(x), r, t::KRONECKER_SYMMETRY);
    }

    // Corollary limits on Z + Z*tau.
    if let Ok(tl) = &tl {
        let far = GridSpec { min_pole_distance: COROLLARY_POLE_DISTANCE, ..GridSpec::default() };
        for &x in far.points(tl).iter().take(2) {
            let px = format_complex(x);
            match (corollary_residual(tau, x, 1e-3), corollary_residual(tau, x, 5e-4)) {
                (Ok((a, s)), Ok((b, _))) => {
                    rec.push("corollary", label, px.clone(), Ok(a.norm()), t::COROLLARY);
                    rec.push("corollary_symmetrized", label, px.clone(), Ok(s.norm()), t::COROLLARY);
                    rec.push("corollary_order", label, px, Ok(b.norm() / a.norm()), t::COROLLARY_RATIO);
                }
                (Err(e), _) | (_, Err(e)) => rec.push("corollary", label, px, Err(e), t::COROLLARY),
            }
        }
    }

    // Triple products on Z + Z*tau.
    let ttol = tol.min(1e-12);
    if let Ok(tl) = &tl {
        for (u, v) in triple_pairs(tl) {
            let pl = label_pair(u, v);
            let r = (|| {
                let coef = triple::triple_coefficient(TripleCase::CaseA { u, v }, tau, ttol)?;
                let reference = Complex64::new(0.0, 2.0 * PI) * series::kronecker_f(tau, u, -v, ttol)?.value;
                Ok((coef - reference).norm())
            })();
            rec.push("triple_case_a", label, pl.clone(), r, t::TRIPLE);
            let r = (|| {
                let coef = triple::triple_coefficient(TripleCase::CaseB { v }, tau, ttol)?;
                Ok((coef + series::zee(tl, v, ttol)?.value).norm())
            })();
            rec.push("triple_case_b", label, format_complex(v), r, t::TRIPLE);
            let r =
                triple::pairing(tau, u, v, triple::cutoff_for(tau, ttol)).map(|p| (p.normalized - p.simplified).norm());
            rec.push("pairing_raw_vs_simplified", label, pl, r, t::PAIRING);
        }
        for j in 0..5 {
            let jf = j as f64;
            let x = tl.omega1() * (0.2 + 0.1 * jf) + tl.omega2() * (0.25 + 0.05 * jf);
            let y = Complex64::new(0.1 - 0.05 * jf, 0.05 * jf);
            let z = Complex64::new(0.03 * jf, 0.4 - 0.06 * jf);
            let r = triple::thpr_residual(tau, x, y, z, cutoff).map(|r| r.norm());
            rec.push("thpr", label, format!("{};{}", label_pair(x, y), format_complex(z)), r, t::THPR);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grid_excludes_points_near_poles() {
        let l = Lattice::from_tau(c(0.0, 1.0)).unwrap();
        let pts = GridSpec::default().points(&l);
        // ((0.137)/4, (0.071)/4) is 0.039 from the origin.
        assert_eq!(pts.len(), 15);
        assert_eq!(GridSpec::with_n(2).points(&l).len(), 4);
    }

    #[test]
    fn poisson_examples() {
        let tau = c(0.0, 1.0);
        assert_eq!(poisson_residual(tau, c(0.0, 0.0), c(0.0, 0.0), 7.0).unwrap(), c(0.0, 0.0));
        assert!(poisson_residual(tau, c(0.3, 0.0), c(0.0, 0.4), 7.0).unwrap().norm() <= 1e-12);
        assert!(poisson_residual(tau, c(0.0, 0.4), c(0.3, 0.0), 7.0).unwrap().norm() <= 1e-12);
        let tau = c(0.3, 1.2);
        assert!(poisson_residual(tau, c(0.21, 0.5), c(-0.4, 0.9), 8.0).unwrap().norm() <= 1e-12);
    }

    #[test]
    fn corollary_example() {
        let (a, s) = corollary_residual(c(0.0, 1.1), c(0.3, 0.2), 1e-3).unwrap();
        assert!(a.norm() <= 1e-2 && s.norm() <= 1e-2);
        let (b, s2) = corollary_residual(c(0.0, 1.1), c(0.3, 0.2), 5e-4).unwrap();
        assert!(b.norm() / a.norm() < 0.6);
        // Even in y, so quadratic convergence.
        assert!(s2.norm() / s.norm() < 0.3);
        let (h, _) = corollary_residual(c(0.0, 1.0), c(0.5, 0.0), 1e-3).unwrap();
        assert!(h.norm() <= 1e-2);
        assert!(corollary_residual(c(0.0, 1.0), c(0.5, 0.0), 0.1).is_err());
    }

    #[test]
    fn bad_lattice_is_recorded_not_fatal() {
        let lattices = vec![(c(1.0, 0.0), c(0.0, -1.0)), (c(1.0, 0.0), c(0.0, 1.0))];
        let report = run_suite(&lattices, &GridSpec::with_n(2), 1e-10);
        let failed: Vec<_> = report.failures().collect();
        assert_eq!(failed.len(), 1, "{failed:#?}");
        assert_eq!(failed[0].check, "lattice_construction");
        assert!(report.count("zeta_oracle") > 0);
    }
}
