use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use qvar::born::{
    singlet_joint, spin_half_transition, spin_half_transition_abstract, transition_table,
};
use qvar::epistemic::AccessibleVariable;
use qvar::experiments::{
    chsh_classical_max, chsh_quantum_max, chsh_s_exact, chsh_simulate, medical_bayes_synthetic,
    medical_contrasts, medical_report, ChshConfig, Setting,
};
use qvar::groups::{
    check_permissible, induce_action, maximal_permissible_subgroup, orbit_labels, orbits,
    ActionSpec, VariableMap,
};
use qvar::hilbert::{DenseForm, DensityOperator, StateVector};
use qvar::inference::{
    mse_decompose, normal_sampler, prop2_experiment, random_interval_pairs, sample_mean,
    SimulationSpec,
};
use qvar::measurement::{effect_update, povm_of_model, StatisticalModel};
use qvar::spin::{
    coherent_state, component_operator, full_turn_sign, resolution_deviation_with, spin_operators,
    Direction, SpinQuantumNumber,
};
use qvar::{validation, Execution};

use crate::args::{
    BornArgs, ChshArgs, GroupsArgs, InferenceArgs, MeasureArgs, MedicalArgs, SpinArgs,
};
use crate::config::Config;
use crate::output::Report;
use crate::CliError;

/// Settings shared by every subcommand after merging flags and config.
pub struct Common {
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub exec: Execution,
}

impl Common {
    fn seed(&self, command: &str) -> Result<u64, CliError> {
        self.seed.ok_or_else(|| {
            CliError::Usage(format!(
                "`{command}` draws random numbers and requires --seed <u64>"
            ))
        })
    }

    fn n_or(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn direction(v: &[f64], flag: &str) -> Result<Direction, CliError> {
    match v {
        [x, y, z] => Ok(Direction::normalized(*x, *y, *z)?),
        _ => Err(CliError::Usage(format!(
            "--{flag} takes three components x,y,z"
        ))),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Domain(qvar::Error::Parse(format!("{}: {e}", path.display()))))
}

fn spin_from_r(r: f64) -> Result<SpinQuantumNumber, CliError> {
    Ok(SpinQuantumNumber::from_r(r)?)
}

pub fn spin(a: SpinArgs, cfg: &Config, common: &Common) -> Result<Report, CliError> {
    let r = cfg.pick(a.r, "r")?.unwrap_or(0.5);
    let direction_arg: Option<Vec<f64>> = cfg.pick(a.direction, "direction")?;
    let sweep: Option<u32> = cfg.pick(a.sweep, "sweep")?;
    let resolution: Option<Vec<f64>> = cfg.pick(a.resolution, "resolution")?;
    let extra = cfg.pick(a.order_extra, "order_extra")?.unwrap_or(4);
    let check = cfg.switch(a.check, "check")?;
    let only_check = check || (direction_arg.is_none() && sweep.is_none() && resolution.is_none());

    let spin = spin_from_r(r)?;
    let mut out = json!({ "r": spin.r(), "two_r": spin.two_r, "dim": spin.dim() });
    if only_check {
        let res = spin_operators(spin).residuals();
        let (sign, deviation) = full_turn_sign(spin, Direction::Z);
        let order = spin.dim() + 1 + extra;
        out["check"] = json!({
            "residuals": to_value(&res),
            "commutation": res.commutation(),
            "full_turn": { "sign": sign, "deviation": deviation },
            "resolution": { "order": order, "deviation": resolution_deviation_with(spin, order, common.exec)? },
        });
    }
    if let Some(d) = direction_arg {
        let n = direction(&d, "direction")?;
        out["direction"] = to_value(&n);
        out["coherent_state"] = to_value(&coherent_state(spin, n));
        out["component_operator"] = to_value(&component_operator(spin, n));
    }
    if let Some(max) = sweep {
        out["sweep"] = to_value(&validation::spin_algebra(max));
    }
    if let Some(rs) = resolution {
        let two_rs = rs
            .iter()
            .map(|&r| spin_from_r(r).map(|s| s.two_r))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = validation::resolution_of_identity(&two_rs, extra, common.exec)?;
        out["resolution"] = Value::Array(
            rows.into_iter()
                .map(|(two_r, order, deviation)| json!({ "r": two_r as f64 / 2.0, "order": order, "deviation": deviation }))
                .collect(),
        );
    }
    Ok(Report::json(out))
}

pub fn born(a: BornArgs, cfg: &Config, common: &Common) -> Result<Report, CliError> {
    if cfg.switch(a.sweep, "sweep")? {
        let seed = common.seed("born --sweep")?;
        let pairs = common.n_or(500);
        let max = validation::born_cross_validation(pairs, seed, common.exec)?;
        return Ok(Report::json(
            json!({ "pairs": pairs, "seed": seed, "max_deviation": max }),
        ));
    }
    let da = match cfg.pick(a.a, "a")? {
        Some(v) => direction(&v, "a")?,
        None => Direction::Z,
    };
    let db = match (cfg.pick(a.b, "b")?, cfg.pick(a.angle, "angle")?) {
        (Some(v), _) => direction(&v, "b")?,
        (None, Some(angle)) => Direction::in_xz_plane(f64::to_radians(angle)),
        (None, None) => {
            return Err(CliError::Usage(
                "`born` needs --b x,y,z or --angle <degrees>".into(),
            ))
        }
    };
    let joint = singlet_joint(da, db);
    let value = json!({
        "a": to_value(&da),
        "b": to_value(&db),
        "a_dot_b": da.dot(db),
        "angle_deg": da.angle_to(db).to_degrees(),
        "transition": { "plus": spin_half_transition(da, db, 1), "minus": spin_half_transition(da, db, -1) },
        "abstract": {
            "plus": spin_half_transition_abstract(da, db, 1)?,
            "minus": spin_half_transition_abstract(da, db, -1)?,
        },
        "singlet": { "p": joint.p, "correlation": joint.correlation() },
    });
    let half = SpinQuantumNumber::HALF;
    let table = transition_table(
        &AccessibleVariable::spin_component("a", half, da)?,
        &AccessibleVariable::spin_component("b", half, db)?,
    )?;
    Ok(Report {
        value,
        csv: Some(table.to_csv()),
    })
}

fn setting_label(s: Setting, observer: char) -> String {
    match s {
        Setting::Plain => observer.to_string(),
        Setting::Primed => format!("{observer}'"),
    }
}

pub fn chsh(a: ChshArgs, cfg: &Config, common: &Common) -> Result<Report, CliError> {
    let seed = common.seed("chsh")?;
    let angles: Vec<f64> = cfg
        .pick(a.angles, "angles")?
        .unwrap_or_else(|| vec![0.0, 90.0, 45.0, 135.0]);
    let angles: [f64; 4] = angles
        .try_into()
        .map_err(|_| CliError::Usage("--angles takes four values a,a',b,b' in degrees".into()))?;
    let n = common.n_or(100_000);
    let grid: Option<f64> = cfg.pick(a.grid, "grid")?;
    let log: Option<std::path::PathBuf> = cfg.pick(a.log, "log")?;

    let c = ChshConfig::from_degrees(angles, n, seed)?;
    let run = chsh_simulate(&c, common.exec);
    let alice = |s| if s == Setting::Plain { c.a } else { c.a_prime };
    let bob = |s| if s == Setting::Plain { c.b } else { c.b_prime };
    let mut cells = Vec::new();
    for sa in Setting::BOTH {
        for sb in Setting::BOTH {
            let exact = singlet_joint(
                Direction::in_xz_plane(alice(sa)),
                Direction::in_xz_plane(bob(sb)),
            )
            .correlation();
            let est = run.cell(sa, sb);
            cells.push(json!({
                "alice": setting_label(sa, 'a'),
                "bob": setting_label(sb, 'b'),
                "count": est.map_or(0, |e| e.count),
                "correlation": est.map(|e| e.correlation),
                "se": est.map(|e| e.se),
                "exact": exact,
            }));
        }
    }
    let mut value = json!({
        "angles_deg": angles,
        "n_trials": n,
        "seed": seed,
        "cells": cells,
        "s": run.s_statistic,
        "s_se": run.s_se,
        "s_exact": chsh_s_exact(c.a, c.a_prime, c.b, c.b_prime),
        "classical_max": chsh_classical_max(),
    });
    if let Some(res) = grid {
        value["quantum_max"] = to_value(&chsh_quantum_max(res, common.exec)?);
        value["quantum_max"]["resolution_deg"] = json!(res);
    }
    let csv = run.trial_log_csv();
    if let Some(path) = log {
        std::fs::write(&path, &csv)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(Report {
        value,
        csv: Some(csv),
    })
}

pub fn medical(a: MedicalArgs, cfg: &Config, common: &Common) -> Result<Report, CliError> {
    let seed = common.seed("medical")?;
    let n = common.n_or(1_000_000);
    if let Some(rho) = cfg.pick(a.rho, "rho")? {
        return Ok(Report::json(to_value(&medical_bayes_synthetic(
            rho,
            n,
            seed,
            common.exec,
        )?)));
    }
    let report = medical_report(n, seed, common.exec)?;
    let mut value = to_value(&report);
    value["samples"] = json!(n);
    value["seed"] = json!(seed);
    value["covariance"] = to_value(&medical_contrasts().covariance_f64());
    Ok(Report::json(value))
}

fn read_state(path: &Path) -> Result<DensityOperator, CliError> {
    let form: DenseForm = read_json(path)?;
    if form.re.len() == form.dim * form.dim {
        return read_json(path);
    }
    let s: StateVector = read_json(path)?;
    Ok(DensityOperator::pure(&s))
}

pub fn measure(a: MeasureArgs, cfg: &Config, common: &Common) -> Result<Report, CliError> {
    if cfg.switch(a.sweep, "sweep")? {
        let seed = common.seed("measure --sweep")?;
        let n = common.n_or(100);
        let report = validation::measurement_sweep(n, 2 * n, seed, common.exec)?;
        let additivity = validation::evidence_additivity(n, seed, common.exec)?;
        return Ok(Report::json(json!({
            "seed": seed,
            "measurement": to_value(&report),
            "evidence_additivity": { "pairs": n, "max_deviation": additivity },
        })));
    }
    let model_path: std::path::PathBuf = cfg.pick(a.model, "model")?.ok_or_else(|| {
        CliError::Usage("`measure` needs --model and --variable, or --sweep".into())
    })?;
    let variable_path: std::path::PathBuf = cfg.pick(a.variable, "variable")?.ok_or_else(|| {
        CliError::Usage("`measure` needs --model and --variable, or --sweep".into())
    })?;
    let model: StatisticalModel = read_json(&model_path)?;
    let v: AccessibleVariable = read_json(&variable_path)?;
    let sigma = match cfg.pick::<std::path::PathBuf>(a.state, "state")? {
        Some(p) => read_state(&p)?,
        None => DensityOperator::maximally_mixed(v.dim()),
    };
    let povm = povm_of_model(&model, &v)?;
    let mut outcomes = Vec::new();
    for (x, f) in povm.effects().iter().enumerate() {
        let (probability, posterior) = match effect_update(&sigma, f) {
            Ok((p, post)) => (p, Some(post)),
            Err(qvar::Error::ZeroProbabilityBranch { probability }) => (probability, None),
            Err(e) => return Err(e.into()),
        };
        outcomes.push(json!({
            "sample": model.samples()[x],
            "effect": to_value(f),
            "probability": probability,
            "posterior": posterior.as_ref().map(to_value),
        }));
    }
    Ok(Report::json(json!({
        "variable": v.name(),
        "completeness_deviation": povm.completeness_deviation(),
        "outcomes": outcomes,
    })))
}

pub fn inference(a: InferenceArgs, cfg: &Config, common: &Common) -> Result<Report, CliError> {
    let seed = common.seed("inference")?;
    let n = common.n_or(100_000);
    let c1 = cfg.pick(a.c1, "c1")?.unwrap_or(-1.96);
    let c2 = cfg.pick(a.c2, "c2")?.unwrap_or(1.96);
    let theta = cfg.pick(a.theta, "theta")?.unwrap_or(0.0);
    let extra = cfg.pick(a.random_pairs, "random_pairs")?.unwrap_or(0);
    let mse: Option<usize> = cfg.pick(a.mse, "mse")?;

    let mut pairs = vec![(c1, c2)];
    pairs.extend(random_interval_pairs(extra, seed));
    let mut experiments = Vec::new();
    for (k, &(c1, c2)) in pairs.iter().enumerate() {
        let spec = SimulationSpec::new(n, seed.wrapping_add(k as u64), theta)?;
        let r = prop2_experiment(c1, c2, &spec, common.exec)?;
        let mut v = to_value(&r);
        v["seed"] = json!(spec.seed);
        v["combined_se"] = json!(r.combined_se());
        v["consistent_3se"] = json!(r.consistent(3.0));
        experiments.push(v);
    }
    let mut value = json!({ "theta": theta, "replicates": n, "experiments": experiments });
    if let Some(size) = mse {
        if size == 0 {
            return Err(CliError::Usage("--mse needs a positive sample size".into()));
        }
        let spec = SimulationSpec::new(n, seed, theta)?;
        let d = mse_decompose(sample_mean, normal_sampler(size), &spec, common.exec);
        value["mse"] = to_value(&d);
        value["mse"]["sample_size"] = json!(size);
    }
    Ok(Report::json(value))
}

pub fn groups(a: GroupsArgs, cfg: &Config) -> Result<Report, CliError> {
    let spec_path: Option<std::path::PathBuf> = cfg.pick(a.spec, "spec")?;
    let map_path: Option<std::path::PathBuf> = cfg.pick(a.map, "map")?;
    let Some(spec_path) = spec_path else {
        if map_path.is_some() {
            return Err(CliError::Usage("--map needs --spec".into()));
        }
        let report = validation::group_fixtures()?;
        let mut value = to_value(&report);
        value["passes"] = json!(report.passes());
        return Ok(Report::json(value));
    };
    let spec: ActionSpec = read_json(&spec_path)?;
    let action = spec.build()?;
    let o = orbits(&action);
    let mut value = json!({
        "orbits": orbit_labels(&action).into_values().collect::<Vec<_>>(),
        "transitive": o.is_transitive(),
        "kernel": action.kernel(),
    });
    if let Some(p) = map_path {
        let labels: Vec<String> = read_json(&p)?;
        let theta = VariableMap::from_labels(action.space().to_vec(), &labels)?;
        let permissible = check_permissible(&theta, &action)?;
        value["permissible"] = json!(permissible);
        value["maximal_subgroup"] = json!(maximal_permissible_subgroup(&theta, &action)?.elements);
        if permissible {
            value["induced"] = to_value(&ActionSpec::from(&induce_action(&theta, &action)?));
        }
    }
    Ok(Report::json(value))
}
