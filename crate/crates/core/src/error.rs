use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate lattice: generators are zero, non-finite or collinear")]
    DegenerateLattice,

    #[error("wrong orientation: Im(conj(omega1)*omega2) = {area} < 0 (swap the generators)")]
    WrongOrientation { area: f64 },

    #[error("shell of radius {radius} would hold about {count} points, above the cap of {cap}")]
    ShellTooLarge { radius: f64, count: usize, cap: usize },

    #[error("point is {distance:e} from the lattice, inside the pole guard {guard:e}")]
    TooCloseToPole { distance: f64, guard: f64 },

    #[error("tolerance {tol:e} not reached: achieved error estimate {achieved:e}")]
    ToleranceNotReached { tol: f64, achieved: f64 },

    #[error("bad modulus: Im(tau) = {im} must be positive")]
    BadModulus { im: f64 },

    #[error("quasi-period consistency check failed: residual {residual:e}")]
    ConsistencyFailure { residual: f64 },

    #[error("q-series converges too slowly: |q| = {q_abs} > 0.9")]
    SlowConvergence { q_abs: f64 },

    #[error("argument outside the q-series strip 0 < Im < Im(tau): {which}")]
    OutsideStrip { which: &'static str },

    #[error("Epstein exponent s = {s} below the supported range s >= 1.25")]
    BadExponent { s: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}
