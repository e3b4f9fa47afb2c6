use num_rational::Ratio;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::born::{spin_half_transition, spin_half_transition_abstract};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::spin::Direction;

/// Previously published value of the Bayesian answer, kept for comparison.
pub const PUBLISHED_VALUE: f64 = 0.43;

type Q = Ratio<i64>;

/// Contrast weights against treatment means `(μa, μb, μc, μd)`.
const ZETA_A: [(i64, i64); 4] = [(1, 1), (-1, 3), (-1, 3), (-1, 3)];
const ZETA_B: [(i64, i64); 4] = [(-1, 3), (1, 1), (-1, 3), (-1, 3)];

/// Orthogonal transform rows, each scaled by ½.
const PSI: [[i64; 4]; 4] = [[1, 1, 1, 1], [-1, -1, 1, 1], [-1, 1, -1, 1], [-1, 1, 1, -1]];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contrasts {
    /// Exact covariance entries as `(numerator, denominator)`.
    pub covariance: [[(i64, i64); 2]; 2],
    pub rho: (i64, i64),
}

impl Contrasts {
    pub fn covariance_f64(&self) -> [[f64; 2]; 2] {
        self.covariance
            .map(|row| row.map(|(n, d)| n as f64 / d as f64))
    }

    pub fn rho_f64(&self) -> f64 {
        self.rho.0 as f64 / self.rho.1 as f64
    }
}

/// Covariance of `ζa = μa - (μb+μc+μd)/3` and `ζb = μb - (μa+μc+μd)/3` for
/// iid standard-normal means, in exact rationals.
pub fn medical_contrasts() -> Contrasts {
    let q = |w: [(i64, i64); 4]| w.map(|(n, d)| Q::new(n, d));
    let (za, zb) = (q(ZETA_A), q(ZETA_B));
    let cov = |x: &[Q; 4], y: &[Q; 4]| {
        x.iter()
            .zip(y)
            .map(|(a, b)| a * b)
            .fold(Q::from(0), |s, t| s + t)
    };
    let m = [
        [cov(&za, &za), cov(&za, &zb)],
        [cov(&zb, &za), cov(&zb, &zb)],
    ];
    // both variances are equal, so rho = cov / var
    let rho = m[0][1] / m[0][0];
    let pair = |r: Q| (*r.numer(), *r.denom());
    Contrasts {
        covariance: m.map(|row| row.map(pair)),
        rho: pair(rho),
    }
}

/// `ψ = ½ M μ` with the fixed orthogonal matrix `M/2`.
pub fn psi_transform(mu: [f64; 4]) -> [f64; 4] {
    PSI.map(|row| 0.5 * row.iter().zip(&mu).map(|(&c, m)| c as f64 * m).sum::<f64>())
}

/// `(2M)(2M)ᵀ`, which equals `4I`.
pub fn psi_gram() -> [[i64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| PSI[i][k] * PSI[j][k]).sum()))
}

/// `P(Y > 0 | X > 0)` for a standard bivariate normal with correlation
/// `rho`: `½ + asin(ρ)/π`.
pub fn orthant_conditional(rho: f64) -> f64 {
    0.5 + rho.asin() / std::f64::consts::PI
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BayesEstimate {
    pub rho: f64,
    pub closed: f64,
    pub mc: f64,
    pub se: f64,
    /// Draws with `ζa > 0`.
    pub conditioning_count: usize,
    pub samples: usize,
}

impl BayesEstimate {
    pub fn agrees(&self, k: f64) -> bool {
        (self.mc - self.closed).abs() <= k * self.se
    }
}

const MIN_SAMPLES: usize = 10_000;

fn conditional_mc<F>(
    rho: f64,
    n: usize,
    seed: u64,
    exec: Execution,
    draw: F,
) -> Result<BayesEstimate>
where
    F: Fn(&mut crate::exec::Rng) -> (f64, f64) + Sync + Send,
{
    if n < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    let (cond, both) = exec
        .map_chunks(n, seed, |rng, _, len| {
            let (mut cond, mut both) = (0usize, 0usize);
            for _ in 0..len {
                let (za, zb) = draw(rng);
                if za > 0.0 {
                    cond += 1;
                    if zb > 0.0 {
                        both += 1;
                    }
                }
            }
            (cond, both)
        })
        .into_iter()
        .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if cond == 0 {
        return Err(Error::ZeroEvidence);
    }
    let p = both as f64 / cond as f64;
    Ok(BayesEstimate {
        rho,
        closed: orthant_conditional(rho),
        mc: p,
        se: (p * (1.0 - p) / cond as f64).sqrt(),
        conditioning_count: cond,
        samples: n,
    })
}

/// Monte Carlo `P(ζb > 0 | ζa > 0)` from iid standard-normal treatment
/// means, next to the orthant closed form.
pub fn medical_bayes(n: usize, seed: u64, exec: Execution) -> Result<BayesEstimate> {
    let rho = medical_contrasts().rho_f64();
    let wa = ZETA_A.map(|(n, d)| n as f64 / d as f64);
    let wb = ZETA_B.map(|(n, d)| n as f64 / d as f64);
    conditional_mc(rho, n, seed, exec, |rng| {
        let mu: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(rng));
        let dot = |w: &[f64; 4]| w.iter().zip(&mu).map(|(a, b)| a * b).sum::<f64>();
        (dot(&wa), dot(&wb))
    })
}

/// Same estimator for a standard bivariate normal with correlation `rho`.
pub fn medical_bayes_synthetic(
    rho: f64,
    n: usize,
    seed: u64,
    exec: Execution,
) -> Result<BayesEstimate> {
    if !(-1.0..=1.0).contains(&rho) {
        return Err(Error::InvalidInput(format!(
            "correlation {rho} outside [-1, 1]"
        )));
    }
    let c = (1.0 - rho * rho).sqrt();
    conditional_mc(rho, n, seed, exec, |rng| {
        let z1: f64 = StandardNormal.sample(rng);
        let z2: f64 = StandardNormal.sample(rng);
        (z1, rho * z1 + c * z2)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumAnswer {
    pub a_dot_b: f64,
    /// `½(1 + a·b)`.
    pub closed: f64,
    /// Squared overlap of spin-½ eigenvectors.
    pub abstract_route: f64,
}

/// Spin-½ answer with `a = -(1,1,1)/√3` and `b = -(1,-1,-1)/√3`.
pub fn medical_quantum() -> Result<QuantumAnswer> {
    let a = Direction::normalized(-1.0, -1.0, -1.0)?;
    let b = Direction::normalized(-1.0, 1.0, 1.0)?;
    Ok(QuantumAnswer {
        a_dot_b: a.dot(b),
        closed: spin_half_transition(a, b, 1),
        abstract_route: spin_half_transition_abstract(a, b, 1)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MedicalReport {
    pub rho: f64,
    pub bayes_closed: f64,
    pub bayes_mc: f64,
    pub mc_se: f64,
    pub quantum: f64,
    pub paper_reported: f64,
    /// `paper_reported` differs from `bayes_closed` by more than its
    /// rounding to two decimals.
    pub reported_discrepancy: bool,
}

pub fn medical_report(n: usize, seed: u64, exec: Execution) -> Result<MedicalReport> {
    let bayes = medical_bayes(n, seed, exec)?;
    let quantum = medical_quantum()?;
    Ok(MedicalReport {
        rho: bayes.rho,
        bayes_closed: bayes.closed,
        bayes_mc: bayes.mc,
        mc_se: bayes.se,
        quantum: quantum.closed,
        paper_reported: PUBLISHED_VALUE,
        reported_discrepancy: (PUBLISHED_VALUE - bayes.closed).abs() > 0.005,
    })
}
