//! Classical inference: discrete Bayes posteriors and seeded Monte Carlo
//! for mean squared error, interval coverage and p-values.
//!
//! Monte Carlo replicates run in chunks with per-chunk substreams (see
//! [`crate::exec`]), so results do not depend on the execution strategy.

use rand::Rng as _;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::exec::{Execution, Rng};

/// Finite prior or posterior over real parameter values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretePrior {
    values: Vec<f64>,
    weights: Vec<f64>,
}

impl DiscretePrior {
    /// Nonnegative weights summing to 1 within `1e-12`.
    pub fn new(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.len() != weights.len() {
            return Err(Error::BadDistribution(format!(
                "{} values, {} weights",
                values.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|&w| !(w.is_finite() && w >= 0.0)) {
            return Err(Error::BadDistribution(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > 1e-12 {
            return Err(Error::BadDistribution(format!("weights sum to {s}")));
        }
        Ok(DiscretePrior { values, weights })
    }

    pub fn uniform(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        Self::new(values, vec![1.0 / n as f64; n])
    }

    pub fn point_mass(values: Vec<f64>, at: usize) -> Result<Self> {
        let mut w = vec![0.0; values.len()];
        *w.get_mut(at)
            .ok_or_else(|| Error::BadDistribution("index out of range".into()))? = 1.0;
        Self::new(values, w)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Posterior weights `∝ likelihood(θ)·prior(θ)`.
pub fn bayes_posterior(
    prior: &DiscretePrior,
    likelihood: impl Fn(f64) -> f64,
) -> Result<DiscretePrior> {
    let joint: Vec<f64> = prior
        .values
        .iter()
        .zip(&prior.weights)
        .map(|(&v, &w)| w * likelihood(v))
        .collect();
    if joint.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return Err(Error::InvalidInput(
            "likelihood must be finite and nonnegative".into(),
        ));
    }
    let evidence: f64 = joint.iter().sum();
    if evidence <= 0.0 {
        return Err(Error::ZeroEvidence);
    }
    Ok(DiscretePrior {
        values: prior.values.clone(),
        weights: joint.into_iter().map(|x| x / evidence).collect(),
    })
}

/// `Σ θ·w(θ)`.
pub fn posterior_mean(posterior: &DiscretePrior) -> f64 {
    posterior
        .values
        .iter()
        .zip(&posterior.weights)
        .map(|(v, w)| v * w)
        .sum()
}

/// Replicate count, seed and true parameter of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationSpec {
    pub replicates: usize,
    pub seed: u64,
    pub theta: f64,
}

impl SimulationSpec {
    pub fn new(replicates: usize, seed: u64, theta: f64) -> Result<Self> {
        if replicates == 0 {
            return Err(Error::InvalidInput(
                "replicate count must be at least 1".into(),
            ));
        }
        Ok(SimulationSpec {
            replicates,
            seed,
            theta,
        })
    }
}

/// Point estimate with its Monte Carlo standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub se: f64,
}

impl McEstimate {
    /// Proportion `hits / n` with binomial standard error.
    pub fn proportion(hits: f64, n: usize) -> Self {
        let p = hits / n as f64;
        McEstimate {
            value: p,
            se: (p * (1.0 - p) / n as f64).max(0.0).sqrt(),
        }
    }

    /// `|value - target| ≤ k·se`.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.se
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalEstimate {
    pub lower: f64,
    pub upper: f64,
    pub level: f64,
}

impl IntervalEstimate {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// `X ~ N(θ, 1)^n`.
pub fn normal_sampler(n: usize) -> impl Fn(&mut Rng, f64) -> Vec<f64> + Sync + Send {
    move |rng, theta| {
        (0..n)
            .map(|_| {
                let z: f64 = StandardNormal.sample(rng);
                theta + z
            })
            .collect()
    }
}

pub fn sample_mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

/// Estimator values over all replicates, in replicate order.
fn replicate_estimates<E, S>(
    estimator: &E,
    sampler: &S,
    spec: &SimulationSpec,
    exec: Execution,
) -> Vec<f64>
where
    E: Fn(&[f64]) -> f64 + Sync,
    S: Fn(&mut Rng, f64) -> Vec<f64> + Sync,
{
    exec.map_chunks(spec.replicates, spec.seed, |rng, _, len| {
        (0..len)
            .map(|_| estimator(&sampler(rng, spec.theta)))
            .collect::<Vec<f64>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Empirical `E(θ̂ - θ)²`, `Var(θ̂)` and `(Eθ̂ - θ)²` over one set of
/// replicates. Moments use divisor N, so `mse = variance + bias_squared`
/// up to rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MseDecomposition {
    pub mse: f64,
    pub variance: f64,
    pub bias_squared: f64,
    /// Standard error of `mse`.
    pub mse_se: f64,
}

pub fn mse_decompose<E, S>(
    estimator: E,
    sampler: S,
    spec: &SimulationSpec,
    exec: Execution,
) -> MseDecomposition
where
    E: Fn(&[f64]) -> f64 + Sync,
    S: Fn(&mut Rng, f64) -> Vec<f64> + Sync,
{
    let est = replicate_estimates(&estimator, &sampler, spec, exec);
    let n = est.len() as f64;
    let mean = est.iter().sum::<f64>() / n;
    let sq: Vec<f64> = est.iter().map(|t| (t - spec.theta).powi(2)).collect();
    let mse = sq.iter().sum::<f64>() / n;
    let variance = est.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / n;
    let bias_squared = (mean - spec.theta).powi(2);
    let sq_var = sq.iter().map(|s| (s - mse).powi(2)).sum::<f64>() / n;
    MseDecomposition {
        mse,
        variance,
        bias_squared,
        mse_se: (sq_var / n).sqrt(),
    }
}

fn validate_level(level: f64) -> Result<()> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::InvalidInput(format!("level {level} not in (0, 1)")));
    }
    Ok(())
}

/// Linear-interpolation quantile of sorted data.
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Equal-tail interval from posterior samples: the `α/2` and `1 - α/2`
/// sample quantiles.
pub fn credibility_interval_samples(samples: &[f64], level: f64) -> Result<IntervalEstimate> {
    validate_level(level)?;
    if samples.is_empty() || samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("need finite posterior samples".into()));
    }
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let alpha = 1.0 - level;
    Ok(IntervalEstimate {
        lower: quantile_sorted(&s, alpha / 2.0),
        upper: quantile_sorted(&s, 1.0 - alpha / 2.0),
        level,
    })
}

/// Equal-tail interval of a discrete posterior: smallest values whose
/// cumulative weight reaches `α/2` and `1 - α/2`.
pub fn credibility_interval_discrete(
    posterior: &DiscretePrior,
    level: f64,
) -> Result<IntervalEstimate> {
    validate_level(level)?;
    let mut pairs: Vec<(f64, f64)> = posterior
        .values
        .iter()
        .cloned()
        .zip(posterior.weights.iter().cloned())
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let alpha = 1.0 - level;
    let quantile = |q: f64| {
        let mut acc = 0.0;
        for &(v, w) in &pairs {
            acc += w;
            if w > 0.0 && acc >= q - 1e-12 {
                return v;
            }
        }
        pairs
            .iter()
            .rev()
            .find(|p| p.1 > 0.0)
            .map(|p| p.0)
            .unwrap_or(pairs[pairs.len() - 1].0)
    };
    Ok(IntervalEstimate {
        lower: quantile(alpha / 2.0),
        upper: quantile(1.0 - alpha / 2.0),
        level,
    })
}

/// Posterior given either as draws or as a finite distribution.
#[derive(Debug, Clone, Copy)]
pub enum Posterior<'a> {
    Samples(&'a [f64]),
    Discrete(&'a DiscretePrior),
}

/// Equal-tail credibility interval at `level`.
pub fn credibility_interval(posterior: Posterior<'_>, level: f64) -> Result<IntervalEstimate> {
    match posterior {
        Posterior::Samples(s) => credibility_interval_samples(s, level),
        Posterior::Discrete(p) => credibility_interval_discrete(p, level),
    }
}

/// Fraction of replicates whose interval `rule(X)` contains the true θ.
pub fn confidence_coverage<R, S>(
    rule: R,
    sampler: S,
    spec: &SimulationSpec,
    exec: Execution,
) -> McEstimate
where
    R: Fn(&[f64]) -> (f64, f64) + Sync,
    S: Fn(&mut Rng, f64) -> Vec<f64> + Sync,
{
    let hits: usize = exec
        .map_chunks(spec.replicates, spec.seed, |rng, _, len| {
            (0..len)
                .filter(|_| {
                    let (lo, hi) = rule(&sampler(rng, spec.theta));
                    lo <= spec.theta && spec.theta <= hi
                })
                .count()
        })
        .into_iter()
        .sum();
    McEstimate::proportion(hits as f64, spec.replicates)
}

/// How replicates with `θ̂(X) = observed` count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Ties {
    /// Strict `>`: ties count zero.
    #[default]
    Strict,
    /// Ties count one half (for discrete samplers).
    Half,
}

/// Monte Carlo `P^{θ0}(θ̂(X) > observed)` with `spec.theta` as `θ0`.
pub fn p_value_one_sided<E, S>(
    sampler: S,
    estimator: E,
    observed: f64,
    spec: &SimulationSpec,
    ties: Ties,
    exec: Execution,
) -> McEstimate
where
    E: Fn(&[f64]) -> f64 + Sync,
    S: Fn(&mut Rng, f64) -> Vec<f64> + Sync,
{
    let est = replicate_estimates(&estimator, &sampler, spec, exec);
    let score: f64 = est
        .iter()
        .map(|&t| {
            if t > observed {
                1.0
            } else if t == observed && ties == Ties::Half {
                0.5
            } else {
                0.0
            }
        })
        .sum();
    McEstimate::proportion(score, spec.replicates)
}

pub fn normal_cdf(x: f64) -> f64 {
    Normal::standard().cdf(x)
}

/// Outcome of the translation-model experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Prop2Result {
    pub c1: f64,
    pub c2: f64,
    /// Posterior probability of `[X + c1, X + c2]` under the flat prior.
    pub credibility: McEstimate,
    /// Frequentist coverage of `[X + c1, X + c2]`.
    pub coverage: McEstimate,
    /// `Φ(-c1) - Φ(-c2)`.
    pub exact: f64,
}

impl Prop2Result {
    /// `sqrt(se_cred² + se_cov²)`.
    pub fn combined_se(&self) -> f64 {
        self.credibility.se.hypot(self.coverage.se)
    }

    /// Both estimates within `k` combined standard errors of the exact value
    /// and of each other.
    pub fn consistent(&self, k: f64) -> bool {
        let se = self.combined_se();
        (self.credibility.value - self.exact).abs() <= k * se
            && (self.coverage.value - self.exact).abs() <= k * se
            && (self.credibility.value - self.coverage.value).abs() <= k * se
    }
}

/// `X ~ N(θ, 1)` under the translation group, flat (right-invariant) prior,
/// equivariant interval `[X + c1, X + c2]`. Each replicate draws `X` given
/// `θ` for coverage and `θ*` from the posterior `N(X, 1)` for credibility.
pub fn prop2_experiment(
    c1: f64,
    c2: f64,
    spec: &SimulationSpec,
    exec: Execution,
) -> Result<Prop2Result> {
    if c1.is_nan() || c2.is_nan() || c1 >= c2 {
        return Err(Error::InvalidInput(format!("need c1 < c2, got {c1}, {c2}")));
    }
    let theta = spec.theta;
    let counts = exec.map_chunks(spec.replicates, spec.seed, |rng, _, len| {
        let mut cred = 0usize;
        let mut cov = 0usize;
        for _ in 0..len {
            let z: f64 = StandardNormal.sample(rng);
            let x = theta + z;
            if x + c1 <= theta && theta <= x + c2 {
                cov += 1;
            }
            let w: f64 = StandardNormal.sample(rng);
            let theta_star = x + w;
            if x + c1 <= theta_star && theta_star <= x + c2 {
                cred += 1;
            }
        }
        (cred, cov)
    });
    let (cred, cov) = counts
        .into_iter()
        .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(Prop2Result {
        c1,
        c2,
        credibility: McEstimate::proportion(cred as f64, spec.replicates),
        coverage: McEstimate::proportion(cov as f64, spec.replicates),
        exact: normal_cdf(-c1) - normal_cdf(-c2),
    })
}

/// `count` seeded interval offsets `c1 < c2`, both uniform in `[-3, 3]`.
pub fn random_interval_pairs(count: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = crate::exec::substream(seed, u64::MAX);
    (0..count)
        .map(|_| {
            let a = -3.0 + 6.0 * rng.random::<f64>();
            let b = -3.0 + 6.0 * rng.random::<f64>();
            (a.min(b), a.max(b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::substream;

    const SEQ: Execution = Execution::Sequential;

    #[test]
    fn posterior_examples() {
        let vals = vec![0.0, 1.0, 2.0];
        let u = DiscretePrior::uniform(vals.clone()).unwrap();
        let post = bayes_posterior(&u, |_| 0.3).unwrap();
        for w in post.weights() {
            assert!((w - 1.0 / 3.0).abs() < 1e-15);
        }

        let half = DiscretePrior::uniform(vec![0.0, 1.0]).unwrap();
        let post = bayes_posterior(&half, |t| if t == 0.0 { 0.8 } else { 0.2 }).unwrap();
        assert!((post.weights()[0] - 0.8).abs() < 1e-15 && (post.weights()[1] - 0.2).abs() < 1e-15);

        let pm = DiscretePrior::point_mass(vals, 1).unwrap();
        let post = bayes_posterior(&pm, |t| 1.0 + t).unwrap();
        assert_eq!(post.weights(), &[0.0, 1.0, 0.0]);

        assert_eq!(
            bayes_posterior(&pm, |t| if t == 1.0 { 0.0 } else { 1.0 }).unwrap_err(),
            Error::ZeroEvidence
        );
        assert!(DiscretePrior::new(vec![1.0, 2.0], vec![0.5, 0.6]).is_err());
    }

    #[test]
    fn posterior_mean_examples() {
        assert_eq!(
            posterior_mean(&DiscretePrior::point_mass(vec![1.0, 3.0], 1).unwrap()),
            3.0
        );
        assert_eq!(
            posterior_mean(&DiscretePrior::uniform(vec![0.0, 1.0]).unwrap()),
            0.5
        );
        let p = DiscretePrior::new(vec![0.0, 1.0], vec![0.8, 0.2]).unwrap();
        assert!((posterior_mean(&p) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn sufficiency_of_the_sum() {
        // Bernoulli(θ) data; the full-data likelihood Π θ^x (1-θ)^(1-x) and
        // the likelihood of T = Σx, C(n,T) θ^T (1-θ)^(n-T), differ by a θ-free factor.
        let prior = DiscretePrior::new(vec![0.1, 0.3, 0.5, 0.9], vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        static X1: [u8; 7] = [1u8, 0, 1, 1, 0, 0, 1];
        static X2: [u8; 7] = [0u8, 1, 1, 0, 1, 1, 0];
        let full = |x: &'static [u8]| {
            move |t: f64| {
                x.iter()
                    .map(|&xi| if xi == 1 { t } else { 1.0 - t })
                    .product::<f64>()
            }
        };
        let n = 7;
        let total: i32 = X1.iter().map(|&x| x as i32).sum();
        let binom = |t: f64| 35.0 * t.powi(total) * (1.0 - t).powi(n - total);
        let p1 = bayes_posterior(&prior, full(&X1)).unwrap();
        let p2 = bayes_posterior(&prior, full(&X2)).unwrap();
        let pt = bayes_posterior(&prior, binom).unwrap();
        for k in 0..4 {
            assert!((p1.weights()[k] - pt.weights()[k]).abs() < 1e-15);
            assert!((p2.weights()[k] - pt.weights()[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn proportional_likelihoods_agree() {
        let prior = DiscretePrior::new(vec![-1.0, 0.0, 2.0], vec![0.2, 0.5, 0.3]).unwrap();
        let l = |t: f64| (-(t - 0.4f64).powi(2)).exp();
        let a = bayes_posterior(&prior, l).unwrap();
        let b = bayes_posterior(&prior, |t| 17.5 * l(t)).unwrap();
        for (x, y) in a.weights().iter().zip(b.weights()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn mse_examples() {
        let spec = SimulationSpec::new(1000, 1, 2.5).unwrap();
        let oracle = mse_decompose(|_| 2.5, normal_sampler(4), &spec, SEQ);
        assert_eq!(
            (oracle.mse, oracle.variance, oracle.bias_squared),
            (0.0, 0.0, 0.0)
        );

        // Var(x̄) = 1/n = ¼ for n = 4 unit-variance draws
        let spec = SimulationSpec::new(100_000, 2, 1.0).unwrap();
        let m = mse_decompose(sample_mean, normal_sampler(4), &spec, SEQ);
        assert!((m.mse - 0.25).abs() < 3.0 * m.mse_se, "{m:?}");
        assert!((m.mse - m.variance - m.bias_squared).abs() < 1e-12);

        let m = mse_decompose(|_| 4.0, normal_sampler(4), &spec, SEQ);
        assert!(m.variance.abs() < 1e-20);
        assert!((m.bias_squared - 9.0).abs() < 1e-12);
    }

    #[test]
    fn credibility_examples() {
        let pm = DiscretePrior::point_mass(vec![1.0, 2.0, 3.0], 1).unwrap();
        let i = credibility_interval_discrete(&pm, 0.9).unwrap();
        assert_eq!((i.lower, i.upper), (2.0, 2.0));

        let mut rng = substream(5, 0);
        let z: Vec<f64> = (0..1_000_000)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        let i = credibility_interval_samples(&z, 0.95).unwrap();
        assert!(
            (i.lower + 1.959964).abs() < 0.03 && (i.upper - 1.959964).abs() < 0.03,
            "{i:?}"
        );

        let u: Vec<f64> = (0..200_000).map(|_| rng.random::<f64>()).collect();
        let i = credibility_interval_samples(&u, 0.5).unwrap();
        assert!((i.lower - 0.25).abs() < 0.01 && (i.upper - 0.75).abs() < 0.01);

        assert!(credibility_interval_samples(&u, 1.0).is_err());
        assert_eq!(
            credibility_interval(Posterior::Samples(&u), 0.5).unwrap(),
            i
        );
        let j = credibility_interval(Posterior::Discrete(&pm), 0.9).unwrap();
        assert_eq!((j.lower, j.upper), (2.0, 2.0));
        let p = DiscretePrior::new(vec![1.0, 2.0, 3.0, 4.0], vec![0.1, 0.4, 0.4, 0.1]).unwrap();
        let i = credibility_interval_discrete(&p, 0.8).unwrap();
        assert_eq!((i.lower, i.upper), (1.0, 3.0));
    }

    #[test]
    fn coverage_examples() {
        let spec = SimulationSpec::new(20_000, 3, 0.7).unwrap();
        let all = confidence_coverage(
            |_| (f64::NEG_INFINITY, f64::INFINITY),
            normal_sampler(4),
            &spec,
            SEQ,
        );
        assert_eq!(all.value, 1.0);
        let none = confidence_coverage(|_| (1.0, 0.0), normal_sampler(4), &spec, SEQ);
        assert_eq!(none.value, 0.0);

        let n = 4;
        let rule = |x: &[f64]| {
            let m = sample_mean(x);
            let h = 1.96 / (n as f64).sqrt();
            (m - h, m + h)
        };
        let c = confidence_coverage(rule, normal_sampler(n), &spec, SEQ);
        let target = normal_cdf(1.96) - normal_cdf(-1.96);
        assert!(c.within(target, 3.0), "{c:?}");
    }

    #[test]
    fn p_value_examples() {
        let spec = SimulationSpec::new(100_000, 4, 0.0).unwrap();
        let s = normal_sampler(1);
        assert_eq!(
            p_value_one_sided(&s, sample_mean, f64::NEG_INFINITY, &spec, Ties::Strict, SEQ).value,
            1.0
        );
        assert_eq!(
            p_value_one_sided(&s, sample_mean, f64::INFINITY, &spec, Ties::Strict, SEQ).value,
            0.0
        );
        let p = p_value_one_sided(&s, sample_mean, 1.645, &spec, Ties::Strict, SEQ);
        assert!(p.within(1.0 - normal_cdf(1.645), 3.0), "{p:?}");
    }

    #[test]
    fn p_value_ties() {
        // a discrete sampler that always returns 1
        let spec = SimulationSpec::new(10, 4, 0.0).unwrap();
        let s = |_: &mut Rng, _: f64| vec![1.0];
        assert_eq!(
            p_value_one_sided(s, sample_mean, 1.0, &spec, Ties::Strict, SEQ).value,
            0.0
        );
        assert_eq!(
            p_value_one_sided(s, sample_mean, 1.0, &spec, Ties::Half, SEQ).value,
            0.5
        );
    }

    #[test]
    fn prop2_examples() {
        let spec = SimulationSpec::new(100_000, 6, 0.3).unwrap();
        let r = prop2_experiment(-1.96, 1.96, &spec, SEQ).unwrap();
        assert!((r.exact - 0.9500042).abs() < 1e-6);
        assert!(r.consistent(3.0), "{r:?}");

        let r = prop2_experiment(0.5 - 1e-9, 0.5, &spec, SEQ).unwrap();
        assert!(r.credibility.value < 1e-3 && r.coverage.value < 1e-3);

        let r = prop2_experiment(-50.0, 50.0, &spec, SEQ).unwrap();
        assert_eq!((r.credibility.value, r.coverage.value), (1.0, 1.0));

        assert!(prop2_experiment(1.0, 1.0, &spec, SEQ).is_err());
    }

    #[test]
    fn random_pairs_are_ordered_and_seeded() {
        let p = random_interval_pairs(10, 4);
        assert_eq!(p, random_interval_pairs(10, 4));
        assert!(p.iter().all(|&(a, b)| -3.0 <= a && a <= b && b <= 3.0));
        let spec = SimulationSpec::new(50_000, 12, -0.4).unwrap();
        for (k, &(c1, c2)) in p.iter().enumerate() {
            let spec = SimulationSpec {
                seed: spec.seed + k as u64,
                ..spec
            };
            assert!(prop2_experiment(c1, c2, &spec, SEQ)
                .unwrap()
                .consistent(3.0));
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let spec = SimulationSpec::new(50_000, 9, 0.0).unwrap();
        let a = prop2_experiment(-1.0, 2.0, &spec, SEQ).unwrap();
        let b = prop2_experiment(-1.0, 2.0, &spec, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        let a = mse_decompose(sample_mean, normal_sampler(3), &spec, SEQ);
        let b = mse_decompose(sample_mean, normal_sampler(3), &spec, Execution::Parallel);
        assert_eq!(a, b);
    }
}
