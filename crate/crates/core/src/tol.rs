//! Numeric tolerances and size guards, pinned in one place.
//!
//! Two kinds of comparison show up in the test oracles:
//!
//! * absolute, for quantities that should vanish or match to machine
//!   precision (Fourier identities, kernel constancy checks);
//! * relative against `max(1, |value|)`, for identities whose magnitudes
//!   grow with the graph (Tutte evaluations, partition functions).

use crate::C64;

/// Absolute tolerance for Fourier-side identities and exact-zero tests.
pub const ABS_TOL: f64 = 1e-9;

/// Relative tolerance for graph identities: `|lhs - rhs| <= REL_TOL * max(1, |lhs|)`.
pub const REL_TOL: f64 = 1e-6;

/// Coefficients below this modulus are dropped while accumulating expansions.
pub const PRUNE_ACCUMULATE: f64 = 1e-12;

/// Coefficients below this modulus are dropped from finished coefficient maps.
pub const PRUNE_FINAL: f64 = 1e-9;

/// Ceiling on brute-force enumeration sizes (`q^|V|`, `q^|E|`, expansion terms).
pub const ENUM_GUARD: usize = 10_000_000;

/// Ceiling on edge count for subset expansions (`2^|E|` subsets).
pub const SUBSET_EDGE_GUARD: usize = 24;

/// `true` when `lhs` and `rhs` agree within [`REL_TOL`] scaled by `max(1, |lhs|)`.
pub fn close_rel(lhs: C64, rhs: C64) -> bool {
    (lhs - rhs).norm() <= REL_TOL * f64::max(1.0, lhs.norm())
}

/// `true` when `lhs` and `rhs` agree within [`ABS_TOL`].
pub fn close_abs(lhs: C64, rhs: C64) -> bool {
    (lhs - rhs).norm() <= ABS_TOL
}

/// Checked `base^exp` against [`ENUM_GUARD`]; `None` means the guard is exceeded.
pub fn guarded_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc > ENUM_GUARD {
            return None;
        }
    }
    Some(acc)
}
