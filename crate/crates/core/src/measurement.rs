//! Likelihood effects, POVMs, density construction and Kraus updates.
//!
//! Every evidence computation here takes a density and an effect (or an
//! instrument) as input. Two statistical models that produce the same
//! effect therefore produce the same data probabilities and posteriors.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::epistemic::AccessibleVariable;
use crate::error::{Error, Result};
use crate::hilbert::{random, trace_product, DensityOperator, Operator, C64};
use crate::tol::{clamp_probability, Tolerances};

/// `p(x | θ = u_j)` over finitely many sample points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelForm", into = "ModelForm")]
pub struct StatisticalModel {
    parameters: Vec<f64>,
    samples: Vec<String>,
    /// `likelihood[x][j]`.
    likelihood: Vec<Vec<f64>>,
}

/// Structured-text form: parameter values, sample labels and the likelihood
/// matrix with one row per sample point.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelForm {
    parameters: Vec<f64>,
    samples: Vec<String>,
    likelihood: Vec<Vec<f64>>,
}

impl TryFrom<ModelForm> for StatisticalModel {
    type Error = Error;
    fn try_from(f: ModelForm) -> Result<Self> {
        StatisticalModel::new(f.parameters, f.samples, f.likelihood)
    }
}

impl From<StatisticalModel> for ModelForm {
    fn from(m: StatisticalModel) -> Self {
        ModelForm {
            parameters: m.parameters,
            samples: m.samples,
            likelihood: m.likelihood,
        }
    }
}

impl StatisticalModel {
    /// Entries in [0, 1]; for each parameter the probabilities over sample
    /// points sum to 1 within `1e-10`.
    pub fn new(
        parameters: Vec<f64>,
        samples: Vec<String>,
        likelihood: Vec<Vec<f64>>,
    ) -> Result<Self> {
        if parameters.is_empty() || samples.is_empty() {
            return Err(Error::InvalidInput(
                "model needs parameters and sample points".into(),
            ));
        }
        if likelihood.len() != samples.len()
            || likelihood.iter().any(|r| r.len() != parameters.len())
        {
            return Err(Error::InvalidInput(
                "likelihood matrix must be samples × parameters".into(),
            ));
        }
        if likelihood
            .iter()
            .flatten()
            .any(|&p| !(0.0..=1.0).contains(&p))
        {
            return Err(Error::InvalidInput(
                "likelihood entries must lie in [0, 1]".into(),
            ));
        }
        for j in 0..parameters.len() {
            let s: f64 = likelihood.iter().map(|r| r[j]).sum();
            if (s - 1.0).abs() > Tolerances::DEFAULT.structure {
                return Err(Error::InvalidInput(format!(
                    "likelihood for parameter {} sums to {s}",
                    parameters[j]
                )));
            }
        }
        Ok(StatisticalModel {
            parameters,
            samples,
            likelihood,
        })
    }

    /// Perfect measurement: sample `x_j` observed iff `θ = u_j`.
    pub fn deterministic(parameters: Vec<f64>) -> Self {
        let n = parameters.len();
        let samples = (0..n).map(|j| format!("x{j}")).collect();
        let likelihood = (0..n)
            .map(|x| (0..n).map(|j| if x == j { 1.0 } else { 0.0 }).collect())
            .collect();
        StatisticalModel {
            parameters,
            samples,
            likelihood,
        }
    }

    /// Random model with `n_samples` sample points.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, parameters: Vec<f64>, n_samples: usize) -> Self {
        let cols: Vec<Vec<f64>> = parameters
            .iter()
            .map(|_| random::simplex(rng, n_samples))
            .collect();
        let likelihood = (0..n_samples)
            .map(|x| cols.iter().map(|c| c[x]).collect())
            .collect();
        let samples = (0..n_samples).map(|x| format!("x{x}")).collect();
        StatisticalModel {
            parameters,
            samples,
            likelihood,
        }
    }

    pub fn parameters(&self) -> &[f64] {
        &self.parameters
    }

    pub fn samples(&self) -> &[String] {
        &self.samples
    }

    pub fn n_samples(&self) -> usize {
        self.samples.len()
    }

    /// `p(x | θ = parameters[j])`.
    pub fn likelihood(&self, x: usize, j: usize) -> f64 {
        self.likelihood[x][j]
    }

    /// For each variable value index, the matching model parameter index.
    fn align(&self, v: &AccessibleVariable) -> Result<Vec<usize>> {
        if self.parameters.len() != v.len() {
            return Err(Error::ValueMismatch(format!(
                "model has {} parameter values, variable has {}",
                self.parameters.len(),
                v.len()
            )));
        }
        let mut map = vec![usize::MAX; v.len()];
        for (j, &u) in self.parameters.iter().enumerate() {
            let k = v.index_of(u).ok_or_else(|| {
                Error::ValueMismatch(format!("parameter {u} is not a value of {}", v.name()))
            })?;
            if map[k] != usize::MAX {
                return Err(Error::ValueMismatch(format!("parameter {u} listed twice")));
            }
            map[k] = j;
        }
        Ok(map)
    }

    fn require_sample(&self, x: usize) -> Result<()> {
        if x >= self.samples.len() {
            return Err(Error::InvalidInput(format!(
                "sample index {x} out of range"
            )));
        }
        Ok(())
    }
}

/// Hermitian operator with spectrum in [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Operator", into = "Operator")]
pub struct LikelihoodEffect(Operator);

impl TryFrom<Operator> for LikelihoodEffect {
    type Error = Error;
    fn try_from(op: Operator) -> Result<Self> {
        LikelihoodEffect::new(op)
    }
}

impl From<LikelihoodEffect> for Operator {
    fn from(f: LikelihoodEffect) -> Self {
        f.0
    }
}

/// Distance of the spectrum of a Hermitian operator from [0, 1].
fn effect_deviation(op: &Operator) -> f64 {
    let eig = SymmetricEigen::new(op.hermitian_part().into_matrix());
    let lo = eig
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let hi = eig
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    (-lo).max(hi - 1.0).max(0.0)
}

impl LikelihoodEffect {
    pub fn new(op: Operator) -> Result<Self> {
        let tol = Tolerances::DEFAULT.structure;
        op.require_hermitian(tol)?;
        let deviation = effect_deviation(&op);
        if deviation > tol {
            return Err(Error::NotEffect { deviation });
        }
        Ok(LikelihoodEffect(op))
    }

    pub fn op(&self) -> &Operator {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `F1 + F2`, if it is again an effect.
    pub fn sum(&self, other: &LikelihoodEffect) -> Result<LikelihoodEffect> {
        other.0.require_dim(self.dim())?;
        LikelihoodEffect::new(&self.0 + &other.0)
    }
}

/// Effects summing to the identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Povm {
    effects: Vec<LikelihoodEffect>,
}

impl Povm {
    pub fn new(effects: Vec<LikelihoodEffect>) -> Result<Self> {
        let Some(first) = effects.first() else {
            return Err(Error::InvalidInput("empty POVM".into()));
        };
        let d = first.dim();
        let mut sum = Operator::zeros(d);
        for f in &effects {
            f.op().require_dim(d)?;
            sum = &sum + f.op();
        }
        let dev = (&sum - &Operator::identity(d)).norm_max();
        if dev > Tolerances::DEFAULT.structure {
            return Err(Error::InvalidInput(format!(
                "POVM effects sum to I only within {dev:.3e}"
            )));
        }
        Ok(Povm { effects })
    }

    pub fn effects(&self) -> &[LikelihoodEffect] {
        &self.effects
    }

    pub fn dim(&self) -> usize {
        self.effects[0].dim()
    }

    /// `max |Σ M - I|`.
    pub fn completeness_deviation(&self) -> f64 {
        let d = self.dim();
        let sum = self
            .effects
            .iter()
            .fold(Operator::zeros(d), |acc, f| &acc + f.op());
        (&sum - &Operator::identity(d)).norm_max()
    }
}

/// Operators `A_j` with `Σ A_j†A_j = I`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KrausInstrument {
    kraus: Vec<Operator>,
}

impl KrausInstrument {
    pub fn new(kraus: Vec<Operator>) -> Result<Self> {
        let Some(first) = kraus.first() else {
            return Err(Error::InvalidInput("empty instrument".into()));
        };
        let d = first.dim();
        for a in &kraus {
            a.require_dim(d)?;
        }
        let instrument = KrausInstrument { kraus };
        let dev = instrument.completeness_deviation();
        if dev > Tolerances::DEFAULT.structure {
            return Err(Error::InvalidInput(format!(
                "Σ A†A differs from I by {dev:.3e}"
            )));
        }
        Ok(instrument)
    }

    /// Projective instrument `{Π_j}` of a variable.
    pub fn projective(v: &AccessibleVariable) -> Self {
        KrausInstrument {
            kraus: v.projectors().to_vec(),
        }
    }

    /// `A_j = √M_j`.
    pub fn luders(povm: &Povm) -> Self {
        KrausInstrument {
            kraus: povm.effects.iter().map(|f| psd_sqrt(f.op())).collect(),
        }
    }

    /// Diagonal instrument with `A_j = diag(√l_j(n))` for a likelihood table
    /// `l[j][n] = P(j | n)`.
    pub fn diagonal_from_likelihood(l: &[Vec<f64>]) -> Result<Self> {
        Self::new(
            l.iter()
                .map(|row| Operator::diagonal(&row.iter().map(|p| p.sqrt()).collect::<Vec<_>>()))
                .collect(),
        )
    }

    /// Random instrument of `count` operators: the blocks of a random
    /// `count·dim × dim` isometry.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dim: usize, count: usize) -> Self {
        let w = random::isometry(rng, dim * count, dim);
        let kraus = (0..count)
            .map(|j| Operator::from_matrix(w.rows(j * dim, dim).into_owned()).expect("square"))
            .collect();
        KrausInstrument { kraus }
    }

    pub fn kraus(&self) -> &[Operator] {
        &self.kraus
    }

    pub fn len(&self) -> usize {
        self.kraus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    pub fn completeness_deviation(&self) -> f64 {
        let d = self.dim();
        let sum = self
            .kraus
            .iter()
            .fold(Operator::zeros(d), |acc, a| &acc + &(&a.adjoint() * a));
        (&sum - &Operator::identity(d)).norm_max()
    }

    /// `M(j) = A_j†A_j`.
    pub fn povm(&self) -> Povm {
        Povm {
            effects: self
                .kraus
                .iter()
                .map(|a| LikelihoodEffect((&a.adjoint() * a).hermitian_part()))
                .collect(),
        }
    }

    /// `p_j = trace(A_j†A_jσ)` for every branch.
    pub fn branch_probabilities(&self, sigma: &DensityOperator) -> Result<Vec<f64>> {
        self.kraus
            .iter()
            .map(|a| branch_probability(a, sigma))
            .collect()
    }
}

fn branch_probability(a: &Operator, sigma: &DensityOperator) -> Result<f64> {
    a.require_dim(sigma.dim())?;
    let p = trace_product(&(&a.adjoint() * a), sigma.op())?.re;
    Ok(clamp_probability(p, Tolerances::DEFAULT.clamp))
}

/// Square root of a positive semidefinite Hermitian operator.
fn psd_sqrt(op: &Operator) -> Operator {
    let eig = SymmetricEigen::new(op.hermitian_part().into_matrix());
    let roots = eig.eigenvalues.map(|u| C64::new(u.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    Operator::from_matrix(v * DMatrix::from_diagonal(&roots) * v.adjoint()).expect("square")
}

/// `F(x) = Σ_j p(x | u_j) Π_j`.
pub fn likelihood_effect(
    m: &StatisticalModel,
    v: &AccessibleVariable,
    x: usize,
) -> Result<LikelihoodEffect> {
    let align = m.align(v)?;
    m.require_sample(x)?;
    let op = v
        .projectors()
        .iter()
        .zip(&align)
        .fold(Operator::zeros(v.dim()), |acc, (p, &j)| {
            &acc + &p.scale(m.likelihood(x, j))
        });
    LikelihoodEffect::new(op)
}

/// `{F(x)}` over all sample points.
pub fn povm_of_model(m: &StatisticalModel, v: &AccessibleVariable) -> Result<Povm> {
    let effects = (0..m.n_samples())
        .map(|x| likelihood_effect(m, v, x))
        .collect::<Result<Vec<_>>>()?;
    Povm::new(effects)
}

/// `σ = Σ_j π_j Π_j / rank(Π_j)`; for a maximal variable this is
/// `Σ_j π_j |a;j⟩⟨a;j|`.
pub fn density_of(pi: &[f64], v: &AccessibleVariable) -> Result<DensityOperator> {
    if pi.len() != v.len() {
        return Err(Error::BadDistribution(format!(
            "{} weights for {} values",
            pi.len(),
            v.len()
        )));
    }
    if pi.iter().any(|&p| !(p.is_finite() && p >= 0.0)) {
        return Err(Error::BadDistribution(
            "weights must be finite and nonnegative".into(),
        ));
    }
    let total: f64 = pi.iter().sum();
    if (total - 1.0).abs() > Tolerances::DEFAULT.structure {
        return Err(Error::BadDistribution(format!("weights sum to {total}")));
    }
    let op = v
        .projectors()
        .iter()
        .zip(pi)
        .enumerate()
        .fold(Operator::zeros(v.dim()), |acc, (j, (p, &w))| {
            &acc + &p.scale(w / v.rank(j) as f64)
        });
    DensityOperator::new(op).map_err(|e| Error::BadDistribution(e.to_string()))
}

/// Evidence functional `q(F) = trace(σF)` on effects.
#[derive(Debug, Clone)]
pub struct Evidence {
    sigma: DensityOperator,
}

pub fn evidence(sigma: &DensityOperator) -> Evidence {
    Evidence {
        sigma: sigma.clone(),
    }
}

impl Evidence {
    pub fn q(&self, f: &LikelihoodEffect) -> Result<f64> {
        f.op().require_dim(self.sigma.dim())?;
        Ok(trace_product(self.sigma.op(), f.op())?.re)
    }

    /// Validates `op` as an effect before evaluating.
    pub fn q_operator(&self, op: &Operator) -> Result<f64> {
        self.q(&LikelihoodEffect::new(op.clone())?)
    }
}

/// Branch `j` of an instrument: `p_j = trace(A_j†A_jσ)` and
/// `σ_j = A_jσA_j† / p_j`. Fails with `ZeroProbabilityBranch` (carrying
/// `p_j`) when `p_j ≤ 1e-12`.
pub fn kraus_update(
    k: &KrausInstrument,
    sigma: &DensityOperator,
    j: usize,
) -> Result<(f64, DensityOperator)> {
    let a = k
        .kraus
        .get(j)
        .ok_or_else(|| Error::InvalidInput(format!("branch {j} out of range")))?;
    let p = branch_probability(a, sigma)?;
    if p <= Tolerances::DEFAULT.zero_branch {
        return Err(Error::ZeroProbabilityBranch { probability: p });
    }
    let post = (&(a * sigma.op()) * &a.adjoint())
        .scale(1.0 / p)
        .hermitian_part();
    Ok((p, DensityOperator::new(post)?))
}

/// Update by a single effect with Kraus operator `√F`:
/// `(q(F), √F σ √F / q(F))`.
pub fn effect_update(
    sigma: &DensityOperator,
    f: &LikelihoodEffect,
) -> Result<(f64, DensityOperator)> {
    f.op().require_dim(sigma.dim())?;
    let a = psd_sqrt(f.op());
    let p = clamp_probability(
        trace_product(f.op(), sigma.op())?.re,
        Tolerances::DEFAULT.clamp,
    );
    if p <= Tolerances::DEFAULT.zero_branch {
        return Err(Error::ZeroProbabilityBranch { probability: p });
    }
    let post = (&(&a * sigma.op()) * &a).scale(1.0 / p).hermitian_part();
    Ok((p, DensityOperator::new(post)?))
}

/// Posterior on the diagonal basis two ways: from the Kraus update of
/// `σ = Σ prior(n)|n⟩⟨n|` and from Bayes' rule with likelihood
/// `P(j | n) = |A_j(n, n)|²`. Returns `(kraus, bayes)`.
pub fn diagonal_kraus_vs_bayes(
    k: &KrausInstrument,
    prior: &[f64],
    j: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let d = k.dim();
    for (index, a) in k.kraus.iter().enumerate() {
        let deviation = a.off_diagonal_norm();
        if deviation > Tolerances::DEFAULT.structure {
            return Err(Error::NotDiagonal { index, deviation });
        }
    }
    if prior.len() != d {
        return Err(Error::BadDistribution(format!(
            "prior of length {} in dimension {d}",
            prior.len()
        )));
    }
    let sigma =
        DensityOperator::from_diagonal(prior).map_err(|e| Error::BadDistribution(e.to_string()))?;
    let (_, post) = kraus_update(k, &sigma, j)?;
    let from_kraus = post.op().diagonal_re();

    let a = &k.kraus[j];
    let joint: Vec<f64> = (0..d).map(|n| prior[n] * a.get(n, n).norm_sqr()).collect();
    let evidence: f64 = joint.iter().sum();
    let from_bayes = joint.into_iter().map(|w| w / evidence).collect();
    Ok((from_kraus, from_bayes))
}

/// `P(X = x | σ) = trace(M(x)σ)`.
pub fn data_probability(
    sigma: &DensityOperator,
    m: &StatisticalModel,
    v: &AccessibleVariable,
    x: usize,
) -> Result<f64> {
    let f = likelihood_effect(m, v, x)?;
    crate::born::likelihood_density(sigma, &f)
}
