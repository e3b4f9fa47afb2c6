//! Seeded validation sweeps shared by the command-line front end and the
//! acceptance tests. Each sweep returns worst-case residuals; none of them
//! asserts a tolerance.

use rand::Rng as _;
use serde::Serialize;

use crate::born::{spin_half_transition, spin_half_transition_abstract};
use crate::epistemic::AccessibleVariable;
use crate::error::Result;
use crate::exec::{substream, Execution};
use crate::groups::{
    check_permissible, fixtures, induce_action, maximal_permissible_subgroup, orbit_labels, orbits,
    GroupAction, VariableMap,
};
use crate::hilbert::{random, Operator, StateVector};
use crate::measurement::{
    diagonal_kraus_vs_bayes, evidence, povm_of_model, KrausInstrument, LikelihoodEffect,
    StatisticalModel,
};
use crate::spin::{
    full_turn_sign, resolution_deviation_with, spin_operators, Direction, SpinQuantumNumber,
};

fn fold_max(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, f64::max)
}

/// Random direction pairs: largest gap between the abstract Born route and
/// `½(1 ± a·b)` over both signs.
pub fn born_cross_validation(pairs: usize, seed: u64, exec: Execution) -> Result<f64> {
    let gaps = exec.map(pairs, |i| -> Result<f64> {
        let mut rng = substream(seed, i as u64);
        let a = Direction::from_array(random::direction(&mut rng))?;
        let b = Direction::from_array(random::direction(&mut rng))?;
        let mut gap = 0.0f64;
        for sign in [1i8, -1] {
            gap = gap.max(
                (spin_half_transition_abstract(a, b, sign)? - spin_half_transition(a, b, sign))
                    .abs(),
            );
        }
        Ok(gap)
    });
    Ok(fold_max(gaps.into_iter().collect::<Result<Vec<_>>>()?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpinAlgebraReport {
    pub max_two_r: u32,
    /// Largest Frobenius residual of the three commutation relations.
    pub commutation: f64,
    /// Largest `‖A² - r(r+1)I‖`.
    pub casimir: f64,
    /// `(two_r, sign, deviation)` of the full-turn rotation about z.
    pub full_turn: Vec<(u32, i32, f64)>,
}

pub fn spin_algebra(max_two_r: u32) -> SpinAlgebraReport {
    let mut commutation = 0.0f64;
    let mut casimir = 0.0f64;
    for two_r in 0..=max_two_r {
        let r = spin_operators(SpinQuantumNumber::new(two_r)).residuals();
        commutation = commutation.max(r.commutation());
        casimir = casimir.max(r.casimir);
    }
    let full_turn = [1, 2]
        .into_iter()
        .map(|two_r| {
            let (s, dev) = full_turn_sign(SpinQuantumNumber::new(two_r), Direction::Z);
            (two_r, s, dev)
        })
        .collect();
    SpinAlgebraReport {
        max_two_r,
        commutation,
        casimir,
        full_turn,
    }
}

/// `(two_r, order, deviation)` of the coherent-state resolution of identity,
/// with quadrature order `2r + 2 + extra`.
pub fn resolution_of_identity(
    two_rs: &[u32],
    extra: usize,
    exec: Execution,
) -> Result<Vec<(u32, usize, f64)>> {
    two_rs
        .iter()
        .map(|&two_r| {
            let spin = SpinQuantumNumber::new(two_r);
            let order = spin.dim() + 1 + extra;
            Ok((two_r, order, resolution_deviation_with(spin, order, exec)?))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasurementReport {
    pub cases: usize,
    /// Largest `‖Σ F(x) - I‖` over random statistical models.
    pub povm_completeness: f64,
    /// Largest `|Σ p_j - 1|` over random instruments and states.
    pub branch_sum: f64,
    /// Largest gap between the diagonal-Kraus posterior and Bayes' rule.
    pub kraus_vs_bayes: f64,
    pub kraus_vs_bayes_cases: usize,
}

fn random_variable(rng: &mut crate::exec::Rng, dim: usize) -> Result<AccessibleVariable> {
    let u = random::unitary(rng, dim);
    let basis: Vec<StateVector> = (0..dim)
        .map(|k| StateVector::from_slice(u.matrix().column(k).as_slice()))
        .collect::<Result<_>>()?;
    let values: Vec<f64> = (0..dim).map(|k| k as f64).collect();
    AccessibleVariable::from_basis("v", &values, &basis)
}

/// `cases` random models and instruments in dimensions 2 to 6, and
/// `bayes_cases` random diagonal instruments.
pub fn measurement_sweep(
    cases: usize,
    bayes_cases: usize,
    seed: u64,
    exec: Execution,
) -> Result<MeasurementReport> {
    let rows = exec.map(cases, |i| -> Result<(f64, f64)> {
        let mut rng = substream(seed, i as u64);
        let dim = rng.random_range(2..=6);
        let v = random_variable(&mut rng, dim)?;
        let n_samples = rng.random_range(2..=5);
        let model = StatisticalModel::random(&mut rng, v.values().to_vec(), n_samples);
        let povm = povm_of_model(&model, &v)?.completeness_deviation();
        let count = rng.random_range(2..=4);
        let k = KrausInstrument::random(&mut rng, dim, count);
        let sigma = random::density(&mut rng, dim);
        let total: f64 = k.branch_probabilities(&sigma)?.iter().sum();
        Ok((povm, (total - 1.0).abs()))
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let bayes = exec.map(bayes_cases, |i| -> Result<f64> {
        let mut rng = substream(seed ^ 0x9e37_79b9_7f4a_7c15, i as u64);
        let dim = rng.random_range(2..=6);
        let outcomes = rng.random_range(2..=4);
        let cols: Vec<Vec<f64>> = (0..dim)
            .map(|_| random::simplex(&mut rng, outcomes))
            .collect();
        let l: Vec<Vec<f64>> = (0..outcomes)
            .map(|j| cols.iter().map(|c| c[j]).collect())
            .collect();
        let k = KrausInstrument::diagonal_from_likelihood(&l)?;
        let prior = random::simplex(&mut rng, dim);
        let j = rng.random_range(0..outcomes);
        let (from_kraus, from_bayes) = diagonal_kraus_vs_bayes(&k, &prior, j)?;
        Ok(fold_max(
            from_kraus
                .iter()
                .zip(&from_bayes)
                .map(|(a, b)| (a - b).abs()),
        ))
    });
    Ok(MeasurementReport {
        cases,
        povm_completeness: fold_max(rows.iter().map(|r| r.0)),
        branch_sum: fold_max(rows.iter().map(|r| r.1)),
        kraus_vs_bayes: fold_max(bayes.into_iter().collect::<Result<Vec<_>>>()?),
        kraus_vs_bayes_cases: bayes_cases,
    })
}

/// Random effect with spectrum in `[0, ½]`, so that any two sum to an effect.
fn half_effect(rng: &mut crate::exec::Rng, dim: usize) -> Result<LikelihoodEffect> {
    let u = random::unitary(rng, dim);
    let spectrum: Vec<f64> = (0..dim).map(|_| 0.5 * rng.random::<f64>()).collect();
    let op = &(&u * &Operator::diagonal(&spectrum)) * &u.adjoint();
    LikelihoodEffect::new(op.hermitian_part())
}

/// Largest `|q(F1 + F2) - q(F1) - q(F2)|` over random states and effect pairs.
pub fn evidence_additivity(pairs: usize, seed: u64, exec: Execution) -> Result<f64> {
    let gaps = exec.map(pairs, |i| -> Result<f64> {
        let mut rng = substream(seed, i as u64);
        let dim = rng.random_range(2..=6);
        let q = evidence(&random::density(&mut rng, dim));
        let f1 = half_effect(&mut rng, dim)?;
        let f2 = half_effect(&mut rng, dim)?;
        Ok((q.q(&f1.sum(&f2)?)? - q.q(&f1)? - q.q(&f2)?).abs())
    });
    Ok(fold_max(gaps.into_iter().collect::<Result<Vec<_>>>()?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixtureCheck {
    pub fixture: String,
    pub group_order: usize,
    pub permissible: bool,
    /// Every product `g·h` induces the composition of the induced maps.
    pub homomorphism: Option<bool>,
    pub maximal_subgroup_order: usize,
    /// The subgroup is permissible and every element outside it breaks
    /// permissibility on its own.
    pub maximality: bool,
}

fn element_permissible(theta: &VariableMap, action: &GroupAction, g: usize) -> bool {
    (0..action.len()).all(|x| {
        (0..action.len()).all(|y| {
            theta.value(x) != theta.value(y)
                || theta.value(action.act(g, x)) == theta.value(action.act(g, y))
        })
    })
}

fn check_fixture(name: &str, theta: &VariableMap, action: &GroupAction) -> Result<FixtureCheck> {
    let permissible = check_permissible(theta, action)?;
    let homomorphism = if permissible {
        let induced = induce_action(theta, action)?;
        let n = action.group().order();
        let ok = (0..n).all(|g| {
            (0..n).all(|h| {
                let gh = action.group().product(g, h);
                (0..induced.len()).all(|u| induced.act(gh, u) == induced.act(g, induced.act(h, u)))
            })
        }) && (0..n).all(|g| {
            (0..action.len())
                .all(|x| induced.act(g, theta.value(x)) == theta.value(action.act(g, x)))
        });
        Some(ok)
    } else {
        None
    };
    let sub = maximal_permissible_subgroup(theta, action)?;
    let restricted_ok = check_permissible(theta, &action.restrict(&sub))?;
    let outside_ok = (0..action.group().order())
        .filter(|&g| !sub.contains(g))
        .all(|g| !element_permissible(theta, action, g));
    Ok(FixtureCheck {
        fixture: name.to_string(),
        group_order: action.group().order(),
        permissible,
        homomorphism,
        maximal_subgroup_order: sub.order(),
        maximality: restricted_ok && outside_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupReport {
    pub fixtures: Vec<FixtureCheck>,
    /// Orbits of `φ ↦ -φ` on `{-2, -1, 1, 2}`, as point labels.
    pub sign_flip_orbits: Vec<Vec<String>>,
}

impl GroupReport {
    /// Expected permissibility and subgroup orders on the documented fixtures,
    /// and two `±c` orbits.
    pub fn passes(&self) -> bool {
        let expect = [
            ("square-swap/first", false, 1),
            ("square-dihedral/first", false, 4),
            ("six-shift/parity", true, 3),
            ("six-shift/identity", true, 3),
            ("square-dihedral/identity", true, 8),
            ("sign-flip/abs", true, 2),
        ];
        self.fixtures.len() == expect.len()
            && self
                .fixtures
                .iter()
                .zip(expect)
                .all(|(f, (name, perm, order))| {
                    f.fixture == name
                        && f.permissible == perm
                        && f.homomorphism.unwrap_or(true)
                        && f.maximal_subgroup_order == order
                        && f.maximality
                })
            && self.sign_flip_orbits.len() == 2
            && self.sign_flip_orbits.iter().all(|o| {
                o.len() == 2
                    && o[0].trim_start_matches('-') == o[1].trim_start_matches('-')
                    && o[0] != o[1]
            })
    }
}

/// Exhaustive checks on the 4-point and 6-point fixtures.
pub fn group_fixtures() -> Result<GroupReport> {
    use fixtures::*;
    let fixtures = vec![
        check_fixture(
            "square-swap/first",
            &square_first_coordinate(),
            &square_swap(),
        )?,
        check_fixture(
            "square-dihedral/first",
            &square_first_coordinate(),
            &square_dihedral(),
        )?,
        check_fixture("six-shift/parity", &six_parity(), &six_shift_by_two())?,
        check_fixture(
            "six-shift/identity",
            &VariableMap::identity(six_points()),
            &six_shift_by_two(),
        )?,
        check_fixture(
            "square-dihedral/identity",
            &VariableMap::identity(square_points()),
            &square_dihedral(),
        )?,
        check_fixture("sign-flip/abs", &absolute_value(), &sign_flip())?,
    ];
    let action = sign_flip();
    debug_assert_eq!(orbits(&action).blocks.len(), 2);
    Ok(GroupReport {
        fixtures,
        sign_flip_orbits: orbit_labels(&action).into_values().collect(),
    })
}
