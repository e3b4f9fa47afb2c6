//! Accessible variables as operators.
//!
//! An [`AccessibleVariable`] pairs distinct real values `u_j` with mutually
//! orthogonal projectors `Π_j` resolving the identity. Its operator is
//! `A = Σ_j u_j Π_j`. The variable is maximal when every `Π_j` has rank one;
//! each eigenvector `|a;j⟩` then answers the question "what is the value of
//! this variable?" with `u_j`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{conjugate_with, eig_hermitian_with, Operator, StateVector};
use crate::spin::{component_operator, Direction, SpinQuantumNumber};
use crate::tol::{same_eigenvalue, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "VariableForm", into = "VariableForm")]
pub struct AccessibleVariable {
    name: String,
    values: Vec<f64>,
    projectors: Vec<Operator>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableForm {
    name: String,
    values: Vec<f64>,
    projectors: Vec<Operator>,
}

impl TryFrom<VariableForm> for AccessibleVariable {
    type Error = Error;
    fn try_from(f: VariableForm) -> Result<Self> {
        AccessibleVariable::new(f.name, f.values, f.projectors)
    }
}

impl From<AccessibleVariable> for VariableForm {
    fn from(v: AccessibleVariable) -> Self {
        VariableForm {
            name: v.name,
            values: v.values,
            projectors: v.projectors,
        }
    }
}

impl AccessibleVariable {
    pub fn new(
        name: impl Into<String>,
        values: Vec<f64>,
        projectors: Vec<Operator>,
    ) -> Result<Self> {
        Self::new_with(name, values, projectors, &Tolerances::DEFAULT)
    }

    /// Validates the spectral invariants and sorts by value.
    pub fn new_with(
        name: impl Into<String>,
        values: Vec<f64>,
        projectors: Vec<Operator>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if values.is_empty() || values.len() != projectors.len() {
            return Err(Error::InvalidInput(format!(
                "{} values for {} projectors",
                values.len(),
                projectors.len()
            )));
        }
        if values.iter().any(|u| !u.is_finite()) {
            return Err(Error::InvalidInput("non-finite value".into()));
        }
        let d = projectors[0].dim();
        let mut pairs: Vec<(f64, Operator)> = values.into_iter().zip(projectors).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in pairs.windows(2) {
            if same_eigenvalue(w[0].0, w[1].0, tol.eigen_merge) {
                return Err(Error::InvalidInput(format!(
                    "values {} and {} are not distinct",
                    w[0].0, w[1].0
                )));
            }
        }
        let mut sum = Operator::zeros(d);
        for (i, (_, p)) in pairs.iter().enumerate() {
            p.require_dim(d)?;
            p.require_projector(tol.structure)?;
            for (_, q) in &pairs[i + 1..] {
                let overlap = (p * q).norm_max();
                if overlap > tol.structure {
                    return Err(Error::InvalidInput(format!(
                        "projectors not orthogonal ({overlap:.3e})"
                    )));
                }
            }
            sum = &sum + p;
        }
        let dev = (&sum - &Operator::identity(d)).norm_max();
        if dev > tol.structure {
            return Err(Error::InvalidInput(format!(
                "projectors do not sum to I ({dev:.3e})"
            )));
        }
        let (values, projectors) = pairs.into_iter().unzip();
        Ok(AccessibleVariable {
            name: name.into(),
            values,
            projectors,
        })
    }

    /// Build from orthonormal basis vectors, one value each. Equal values
    /// share an eigenspace.
    pub fn from_basis(
        name: impl Into<String>,
        values: &[f64],
        basis: &[StateVector],
    ) -> Result<Self> {
        if values.len() != basis.len() {
            return Err(Error::InvalidInput(format!(
                "{} values for {} vectors",
                values.len(),
                basis.len()
            )));
        }
        let mut groups: Vec<(f64, Operator)> = Vec::new();
        for (&u, v) in values.iter().zip(basis) {
            let p = v.projector();
            match groups
                .iter_mut()
                .find(|(w, _)| same_eigenvalue(*w, u, Tolerances::DEFAULT.eigen_merge))
            {
                Some((_, acc)) => *acc = &*acc + &p,
                None => groups.push((u, p)),
            }
        }
        let (values, projectors) = groups.into_iter().unzip();
        Self::new(name, values, projectors)
    }

    /// Spectral decomposition of a Hermitian operator.
    pub fn from_operator(name: impl Into<String>, op: &Operator) -> Result<Self> {
        let e = eig_hermitian_with(op, &Tolerances::DEFAULT)?;
        Self::new(name, e.eigenvalues().to_vec(), e.projectors().to_vec())
    }

    /// Spin component `a·A`.
    pub fn spin_component(
        name: impl Into<String>,
        spin: SpinQuantumNumber,
        a: Direction,
    ) -> Result<Self> {
        Self::from_operator(name, &component_operator(spin, a))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn projectors(&self) -> &[Operator] {
        &self.projectors
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].dim()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn rank(&self, j: usize) -> usize {
        self.projectors[j].trace().re.round() as usize
    }

    /// Index of the value equal to `u` within the merge tolerance.
    pub fn index_of(&self, u: f64) -> Option<usize> {
        self.values
            .iter()
            .position(|&w| same_eigenvalue(w, u, Tolerances::DEFAULT.eigen_merge))
    }

    /// `|a;j⟩` when `Π_j` has rank one, with canonical phase.
    pub fn eigenvector(&self, j: usize) -> Option<StateVector> {
        if (self.projectors[j].trace().re - 1.0).abs() > 1e-8 {
            return None;
        }
        let p = self.projectors[j].matrix();
        let k = (0..self.dim())
            .max_by(|&a, &b| p.column(a).norm().total_cmp(&p.column(b).norm()))
            .expect("nonempty");
        StateVector::normalized(p.column(k).into_owned())
            .ok()
            .map(|s| s.canonical_phase())
    }

    pub(crate) fn require_maximal(&self) -> Result<()> {
        if !is_maximal(self) {
            return Err(Error::NotMaximal(self.name.clone()));
        }
        Ok(())
    }
}

/// `A = Σ_j u_j Π_j`.
pub fn operator_of(v: &AccessibleVariable) -> Operator {
    v.values
        .iter()
        .zip(&v.projectors)
        .fold(Operator::zeros(v.dim()), |acc, (&u, p)| &acc + &p.scale(u))
}

/// The variable `t(θ)`: values are the distinct images `s_k` and the
/// projector of `s_k` is the sum of `Π_i` over `{i : t(u_i) = s_k}`.
pub fn derived_variable(
    v: &AccessibleVariable,
    t: impl Fn(f64) -> f64,
) -> Result<AccessibleVariable> {
    let mut groups: Vec<(f64, Operator)> = Vec::new();
    for (&u, p) in v.values.iter().zip(&v.projectors) {
        let s = t(u);
        match groups
            .iter_mut()
            .find(|(w, _)| same_eigenvalue(*w, s, Tolerances::DEFAULT.eigen_merge))
        {
            Some((_, acc)) => *acc = &*acc + p,
            None => groups.push((s, p.clone())),
        }
    }
    let (values, projectors) = groups.into_iter().unzip();
    AccessibleVariable::new(format!("t({})", v.name), values, projectors)
}

/// Maximal iff every eigenspace is one-dimensional.
pub fn is_maximal(v: &AccessibleVariable) -> bool {
    v.projectors
        .iter()
        .all(|p| (p.trace().re - 1.0).abs() < 1e-8)
}

/// A question ("what is the value of `question`?") with a definite answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuestionAnswer {
    pub question: String,
    pub answer: f64,
}

pub fn state_to_question(
    s: &StateVector,
    catalog: &[AccessibleVariable],
) -> Result<Vec<QuestionAnswer>> {
    state_to_question_with(s, catalog, &Tolerances::DEFAULT)
}

/// Every `(variable, value)` whose rank-one eigenvector equals `s` up to
/// phase (`|⟨a;j|s⟩| > 1 - ray_match`). All hits are reported.
pub fn state_to_question_with(
    s: &StateVector,
    catalog: &[AccessibleVariable],
    tol: &Tolerances,
) -> Result<Vec<QuestionAnswer>> {
    let mut hits = Vec::new();
    for v in catalog {
        if v.dim() != s.dim() {
            return Err(Error::DimMismatch {
                expected: s.dim(),
                found: v.dim(),
            });
        }
        for (j, &u) in v.values.iter().enumerate() {
            if let Some(e) = v.eigenvector(j) {
                if e.same_ray(s, tol.ray_match) {
                    hits.push(QuestionAnswer {
                        question: v.name.clone(),
                        answer: u,
                    });
                }
            }
        }
    }
    Ok(hits)
}

/// The variable transformed by a unitary: operator `U†AU`, projectors
/// `U†Π_jU`, same value list. `value_action` must permute the values.
pub fn conjugated_variable(
    v: &AccessibleVariable,
    u: &Operator,
    value_action: impl Fn(f64) -> f64,
) -> Result<AccessibleVariable> {
    let tol = Tolerances::DEFAULT;
    u.require_dim(v.dim())?;
    u.require_unitary(tol.structure)?;
    let mut hit = vec![false; v.len()];
    for &x in &v.values {
        let y = value_action(x);
        let k = v
            .index_of(y)
            .ok_or_else(|| Error::NotPermutation(format!("{x} ↦ {y} leaves the value set")))?;
        if std::mem::replace(&mut hit[k], true) {
            return Err(Error::NotPermutation(format!(
                "value {} is hit twice",
                v.values[k]
            )));
        }
    }
    let projectors = v
        .projectors
        .iter()
        .map(|p| conjugate_with(u, p, &tol))
        .collect::<Result<Vec<_>>>()?;
    AccessibleVariable::new(format!("{}'", v.name), v.values.clone(), projectors)
}
