//! Born probabilities.
//!
//! Four equivalent forms are provided: the transition probability
//! `|⟨a;i|b;j⟩|²` between eigenvectors of two maximal variables, `⟨s|P|s⟩`
//! for a pure state, `trace(Pσ)` for a density, and `trace(Fσ)` for a
//! likelihood effect. The spin-½ closed form and the two-particle singlet
//! law are built on top.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;

use nalgebra::DVector;
use serde::Serialize;

use crate::epistemic::AccessibleVariable;
use crate::error::{Error, Result};
use crate::hilbert::{tensor, trace_product, DensityOperator, Operator, StateVector, C64};
use crate::measurement::LikelihoodEffect;
use crate::spin::{component_operator, Direction, SpinQuantumNumber};
use crate::tol::{clamp_probability, Tolerances};

/// Reject values outside `[0, 1]` by more than the structure tolerance,
/// then clamp.
fn checked(p: f64, tol: &Tolerances) -> Result<f64> {
    if !(p >= -tol.structure && p <= 1.0 + tol.structure) {
        return Err(Error::InvalidInput(format!(
            "probability {p} outside [0, 1]"
        )));
    }
    Ok(clamp_probability(p, tol.clamp).clamp(0.0, 1.0))
}

/// `P(θ^b = v_j | θ^a = u_i)` for all `i, j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionTable {
    pub row_variable: String,
    pub column_variable: String,
    pub row_values: Vec<f64>,
    pub column_values: Vec<f64>,
    pub p: Vec<Vec<f64>>,
}

impl TransitionTable {
    pub fn max_row_deviation(&self) -> f64 {
        self.p
            .iter()
            .map(|r| (r.iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_column_deviation(&self) -> f64 {
        (0..self.column_values.len())
            .map(|j| (self.p.iter().map(|r| r[j]).sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with the column values as header and the row value leading each row.
    pub fn to_csv(&self) -> String {
        let mut s = format!("{}\\{}", self.row_variable, self.column_variable);
        for v in &self.column_values {
            write!(s, ",{v}").unwrap();
        }
        s.push('\n');
        for (u, row) in self.row_values.iter().zip(&self.p) {
            write!(s, "{u}").unwrap();
            for p in row {
                write!(s, ",{p}").unwrap();
            }
            s.push('\n');
        }
        s
    }
}

/// `|⟨a;i|b;j⟩|²`.
pub fn transition_probability(
    va: &AccessibleVariable,
    i: usize,
    vb: &AccessibleVariable,
    j: usize,
) -> Result<f64> {
    va.require_maximal()?;
    vb.require_maximal()?;
    if va.dim() != vb.dim() {
        return Err(Error::DimMismatch {
            expected: va.dim(),
            found: vb.dim(),
        });
    }
    if i >= va.len() || j >= vb.len() {
        return Err(Error::InvalidInput(format!(
            "outcome index ({i}, {j}) out of range"
        )));
    }
    let ai = va.eigenvector(i).expect("rank one");
    let bj = vb.eigenvector(j).expect("rank one");
    checked(ai.inner(&bj).norm_sqr(), &Tolerances::DEFAULT)
}

pub fn transition_table(
    va: &AccessibleVariable,
    vb: &AccessibleVariable,
) -> Result<TransitionTable> {
    let p = (0..va.len())
        .map(|i| {
            (0..vb.len())
                .map(|j| transition_probability(va, i, vb, j))
                .collect()
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(TransitionTable {
        row_variable: va.name().to_string(),
        column_variable: vb.name().to_string(),
        row_values: va.values().to_vec(),
        column_values: vb.values().to_vec(),
        p,
    })
}

/// `⟨s|P|s⟩`.
pub fn born_projector(s: &StateVector, p: &Operator) -> Result<f64> {
    let tol = Tolerances::DEFAULT;
    p.require_dim(s.dim())?;
    p.require_projector(tol.structure)?;
    checked(p.expectation(s).re, &tol)
}

/// `trace(Pσ)`.
pub fn born_density(sigma: &DensityOperator, p: &Operator) -> Result<f64> {
    let tol = Tolerances::DEFAULT;
    p.require_dim(sigma.dim())?;
    p.require_projector(tol.structure)?;
    checked(trace_product(p, sigma.op())?.re, &tol)
}

/// `f(x|σ) = trace(F(x)σ)`.
pub fn likelihood_density(sigma: &DensityOperator, f: &LikelihoodEffect) -> Result<f64> {
    f.op().require_dim(sigma.dim())?;
    checked(trace_product(f.op(), sigma.op())?.re, &Tolerances::DEFAULT)
}

/// `P(θ^b = sign | θ^a = +1) = ½(1 + sign·a·b)` for spin ½, where `a·b`
/// is the cosine of the angle between the unit directions.
pub fn spin_half_transition(a: Direction, b: Direction, sign: i8) -> f64 {
    let s = if sign >= 0 { 1.0 } else { -1.0 };
    0.5 * (1.0 + s * a.dot(b))
}

/// The same probability through eigenvectors of the component operators.
pub fn spin_half_transition_abstract(a: Direction, b: Direction, sign: i8) -> Result<f64> {
    let half = SpinQuantumNumber::HALF;
    let va = AccessibleVariable::spin_component("a", half, a)?;
    let vb = AccessibleVariable::spin_component("b", half, b)?;
    let i = va.index_of(0.5).expect("spin-½ spectrum");
    let j = vb
        .index_of(if sign >= 0 { 0.5 } else { -0.5 })
        .expect("spin-½ spectrum");
    transition_probability(&va, i, &vb, j)
}

/// Joint law of `(α, β) ∈ {±1}²`; index 0 is `+1`, index 1 is `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointTable {
    pub p: [[f64; 2]; 2],
}

impl JointTable {
    pub fn total(&self) -> f64 {
        self.p.iter().flatten().sum()
    }

    /// `E[αβ]`.
    pub fn correlation(&self) -> f64 {
        self.p[0][0] + self.p[1][1] - self.p[0][1] - self.p[1][0]
    }

    pub fn marginal_a(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[0][1], self.p[1][0] + self.p[1][1]]
    }

    pub fn marginal_b(&self) -> [f64; 2] {
        [self.p[0][0] + self.p[1][0], self.p[0][1] + self.p[1][1]]
    }
}

/// `(|+−⟩ − |−+⟩)/√2` in the z-basis product ordering.
pub fn singlet() -> StateVector {
    let h = FRAC_1_SQRT_2;
    let v = DVector::from_vec(vec![
        C64::new(0.0, 0.0),
        C64::new(h, 0.0),
        C64::new(-h, 0.0),
        C64::new(0.0, 0.0),
    ]);
    StateVector::new(v).expect("unit norm")
}

/// Spectral projector of `σ·a` for outcome `±1`: `½(I ± σ·a)`.
fn spin_half_outcome_projector(a: Direction, outcome: f64) -> Operator {
    let sigma_a = component_operator(SpinQuantumNumber::HALF, a).scale(2.0);
    (&Operator::identity(2) + &sigma_a.scale(outcome)).scale(0.5)
}

/// Born probabilities for measuring the singlet along `a` (first particle)
/// and `b` (second particle).
pub fn singlet_joint(a: Direction, b: Direction) -> JointTable {
    let psi = singlet();
    let mut p = [[0.0; 2]; 2];
    for (ia, alpha) in [1.0, -1.0].into_iter().enumerate() {
        let pa = spin_half_outcome_projector(a, alpha);
        for (ib, beta) in [1.0, -1.0].into_iter().enumerate() {
            let pb = spin_half_outcome_projector(b, beta);
            let joint = tensor(&pa, &pb);
            p[ia][ib] = checked(joint.expectation(&psi).re, &Tolerances::DEFAULT)
                .expect("projector on unit vector");
        }
    }
    JointTable { p }
}
