//! Numerical tolerances.
//!
//! Every check in the crate reads its threshold from a [`Tolerances`] value.
//! The plain entry points use [`Tolerances::DEFAULT`]; the `*_with` variants
//! take an explicit set so callers can tighten or relax individual bounds.

/// Hermiticity, unitarity, projector and normalization checks.
pub const STRUCTURE: f64 = 1e-10;
/// Relative gap below which two eigenvalues are treated as one.
pub const EIGEN_MERGE: f64 = 1e-8;
/// Minimum |overlap| for two rays to count as equal.
pub const RAY_MATCH: f64 = 1e-9;
/// Smallest branch probability for which a post-measurement state is formed.
pub const ZERO_BRANCH: f64 = 1e-12;
/// Window inside which probabilities slightly outside [0, 1] are clamped.
pub const CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub structure: f64,
    pub eigen_merge: f64,
    pub ray_match: f64,
    pub zero_branch: f64,
    pub clamp: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        structure: STRUCTURE,
        eigen_merge: EIGEN_MERGE,
        ray_match: RAY_MATCH,
        zero_branch: ZERO_BRANCH,
        clamp: CLAMP,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Two eigenvalues belong to the same eigenspace when their gap is below
/// `merge * (1 + |u|)`.
pub(crate) fn same_eigenvalue(a: f64, b: f64, merge: f64) -> bool {
    (a - b).abs() < merge * (1.0 + a.abs().max(b.abs()))
}

/// Clamp a probability into [0, 1] if it lies within `window` of the interval.
/// Values further out are returned unchanged so callers can flag them.
pub(crate) fn clamp_probability(p: f64, window: f64) -> f64 {
    if (-window..0.0).contains(&p) {
        0.0
    } else if p > 1.0 && p <= 1.0 + window {
        1.0
    } else {
        p
    }
}
