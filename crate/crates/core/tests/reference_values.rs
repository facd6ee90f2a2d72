//! Values frozen from an independent 40-digit evaluation (theta functions and
//! Eisenstein q-series in arbitrary precision). Lattice `Z + Z*tau` with
//! `tau = 0.3+1.2i`, evaluation point `x = 0.21+0.37i` unless stated.

#![allow(clippy::excessive_precision)]

use ellzeta::{oracles, quasiperiods, series, trunc_radius, Complex64, Lattice};

const TAU: Complex64 = Complex64::new(0.3, 1.2);
const X: Complex64 = Complex64::new(0.21, 0.37);
const TOL: f64 = 1e-13;

fn close(got: Complex64, re: f64, im: f64, tol: f64) {
    let want = Complex64::new(re, im);
    let err = (got - want).norm() / (1.0 + want.norm());
    assert!(err <= tol, "got {got}, want {want}, relative error {err:e}");
}

fn lattice() -> Lattice {
    Lattice::from_tau(TAU).unwrap()
}

#[test]
fn eisenstein_e2_g2_g3() {
    let e = oracles::eisenstein(TAU).unwrap();
    close(e.e2, 1.0039582044157630555, -0.012119531521432221243, 1e-14);
    close(e.g2, 124.69526933258961189, 15.709581125777163184, 1e-14);
    close(e.g3, 309.51405911878251479, -71.780594701385531679, 1e-14);
}

#[test]
fn quasi_periods_and_constant() {
    let qp = quasiperiods::quasi_periods(&lattice()).unwrap();
    close(qp.eta1, 3.3028901042705283349, -0.039871660547689553732, 1e-14);
    close(qp.eta2, 1.0387130239383859265, -2.3316786802192594874, 1e-14);
    close(qp.c, 0.68489622627903387261, -0.039871660547689553732, 1e-14);
}

#[test]
fn weierstrass_zeta() {
    let r = quasiperiods::zeta(&lattice(), X, TOL).unwrap();
    close(r.value, 1.3092916100476106257, -1.9951706910745026632, 1e-12);
}

#[test]
fn hecke_z() {
    let r = series::zee(&lattice(), X, TOL).unwrap();
    close(r.value, 0.60093217374815456635, -1.2715515112258774476, 1e-12);
}

#[test]
fn weierstrass_p_and_derivative() {
    close(series::wp(&lattice(), X, TOL).unwrap().value, -3.7147898058334127101, -4.088679336312488915, 1e-12);
    close(series::wp_prime(&lattice(), X, TOL).unwrap().value, 25.516231662004222499, 4.6306852379814021971, 1e-12);
}

#[test]
fn kronecker_function() {
    let (x, y) = (Complex64::new(0.2, 0.3), Complex64::new(0.1, 0.4));
    let (re, im) = (-1.0496131927932510727, -0.20942384247108226681);
    close(series::kronecker_f(TAU, x, y, TOL).unwrap().value, re, im, 1e-12);
    close(oracles::f_theta(TAU, x, y).unwrap(), re, im, 1e-13);
    close(oracles::f_qseries(TAU, x, y).unwrap(), re, im, 1e-13);
}

#[test]
fn theta_functions() {
    let expected = [
        (-1.0526777195681867428, 0.6087969803654253648),
        (1.3209606181139765549, 3.7437484686754403703),
        (9.8599515630495091949, -6.0843183593108573791),
        (-13.743396786976828264, -31.963716964143354794),
    ];
    for (order, (re, im)) in expected.into_iter().enumerate() {
        close(oracles::theta11(TAU, X, order as u32).unwrap(), re, im, 1e-14);
    }
    close(oracles::theta00(TAU, X).unwrap(), 1.2177373976967685285, -0.085008329438564689641, 1e-14);
    close(oracles::theta00(Complex64::i(), Complex64::new(0.0, 0.0)).unwrap(), 1.0864348112133080146, 0.0, 1e-15);
}

#[test]
fn truncation_radius() {
    for (area, tol, r) in
        [(1.0, 1e-12, 3.3677449838168356), (1.0, 1e-6, 2.6351646405389724), (4.0, 1e-12, 6.7354899676336712)]
    {
        let plan = trunc_radius(area, tol);
        assert!((plan.radius - r).abs() <= 1e-13 * r, "{area} {tol}: {}", plan.radius);
    }
}
