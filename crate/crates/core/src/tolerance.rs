//! Numerical tolerances shared by every check.

use serde::{Deserialize, Serialize};

/// Default absolute tolerance for identities between morphisms and matrices.
pub const DEFAULT_ATOL: f64 = 1e-9;
/// Default distance within which a Verlinde sum is accepted as an integer.
pub const DEFAULT_INTEGER_SNAP: f64 = 1e-6;
/// Longer composition chains in the Frobenius suite get one extra decade.
pub const FROBENIUS_FACTOR: f64 = 10.0;
/// The twist round trip is a pure scalar cancellation and is held tighter.
pub const TWIST_ROUND_TRIP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub atol: f64,
    pub integer_snap: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            atol: DEFAULT_ATOL,
            integer_snap: DEFAULT_INTEGER_SNAP,
        }
    }
}

impl ToleranceConfig {
    /// Builds a config with the given absolute tolerance; the snap distance
    /// keeps its default unless that would break `atol < integer_snap < 1`.
    pub fn with_atol(atol: f64) -> Self {
        let snap = if atol < DEFAULT_INTEGER_SNAP {
            DEFAULT_INTEGER_SNAP
        } else {
            (atol * 10.0).min(0.5)
        };
        Self {
            atol,
            integer_snap: snap,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.atol > 0.0 && self.atol < self.integer_snap && self.integer_snap < 1.0
    }

    pub fn frobenius(&self) -> f64 {
        self.atol * FROBENIUS_FACTOR
    }
}
