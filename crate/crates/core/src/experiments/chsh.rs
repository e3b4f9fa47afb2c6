use std::fmt::Write as _;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::born::{singlet_joint, JointTable};
use crate::error::{Error, Result};
use crate::exec::{Execution, Rng};
use crate::spin::Direction;

/// Measurement angles in the x–z plane, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChshConfig {
    pub a: f64,
    pub a_prime: f64,
    pub b: f64,
    pub b_prime: f64,
    pub n_trials: usize,
    pub seed: u64,
}

impl ChshConfig {
    pub fn from_degrees(angles: [f64; 4], n_trials: usize, seed: u64) -> Result<Self> {
        if n_trials == 0 {
            return Err(Error::InvalidInput("n_trials must be at least 1".into()));
        }
        if angles.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("angles must be finite".into()));
        }
        let [a, a_prime, b, b_prime] = angles.map(f64::to_radians);
        Ok(ChshConfig {
            a,
            a_prime,
            b,
            b_prime,
            n_trials,
            seed,
        })
    }

    fn alice(&self, s: Setting) -> f64 {
        match s {
            Setting::Plain => self.a,
            Setting::Primed => self.a_prime,
        }
    }

    fn bob(&self, s: Setting) -> f64 {
        match s {
            Setting::Plain => self.b,
            Setting::Primed => self.b_prime,
        }
    }
}

/// Unprimed or primed setting of one observer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Setting {
    Plain,
    Primed,
}

impl Setting {
    pub const BOTH: [Setting; 2] = [Setting::Plain, Setting::Primed];

    fn index(self) -> usize {
        self as usize
    }

    fn label(self, observer: char) -> String {
        match self {
            Setting::Plain => observer.to_string(),
            Setting::Primed => format!("{observer}'"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub setting_a: Setting,
    pub setting_b: Setting,
    pub outcome_a: i8,
    pub outcome_b: i8,
}

/// Conditional correlation estimate for one setting pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellEstimate {
    pub correlation: f64,
    pub count: usize,
    /// `sqrt((1 - Ê²) / count)`.
    pub se: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChshRun {
    pub records: Vec<TrialRecord>,
    /// Indexed `[alice][bob]`; `None` when no trial used that pair.
    pub cells: [[Option<CellEstimate>; 2]; 2],
    /// `Ê(AB) + Ê(AB') + Ê(A'B) - Ê(A'B')`, absent if any cell is empty.
    pub s_statistic: Option<f64>,
    pub s_se: Option<f64>,
}

const SIGNS: [[f64; 2]; 2] = [[1.0, 1.0], [1.0, -1.0]];

impl ChshRun {
    fn from_records(records: Vec<TrialRecord>) -> Self {
        let mut sum = [[0i64; 2]; 2];
        let mut count = [[0usize; 2]; 2];
        for r in &records {
            let (i, j) = (r.setting_a.index(), r.setting_b.index());
            sum[i][j] += (r.outcome_a * r.outcome_b) as i64;
            count[i][j] += 1;
        }
        let mut cells = [[None; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                if count[i][j] > 0 {
                    let e = sum[i][j] as f64 / count[i][j] as f64;
                    let se = ((1.0 - e * e).max(0.0) / count[i][j] as f64).sqrt();
                    cells[i][j] = Some(CellEstimate {
                        correlation: e,
                        count: count[i][j],
                        se,
                    });
                }
            }
        }
        let all: Option<Vec<(usize, usize, CellEstimate)>> = (0..4)
            .map(|k| cells[k / 2][k % 2].map(|c| (k / 2, k % 2, c)))
            .collect();
        let (s_statistic, s_se) = match all {
            Some(all) => {
                let s = all
                    .iter()
                    .map(|&(i, j, c)| SIGNS[i][j] * c.correlation)
                    .sum();
                let v: f64 = all.iter().map(|&(_, _, c)| c.se * c.se).sum();
                (Some(s), Some(v.sqrt()))
            }
            None => (None, None),
        };
        ChshRun {
            records,
            cells,
            s_statistic,
            s_se,
        }
    }

    pub fn cell(&self, alice: Setting, bob: Setting) -> Option<CellEstimate> {
        self.cells[alice.index()][bob.index()]
    }

    pub fn populated_cells(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.is_some()).count()
    }

    /// CSV with columns `trial,setting_a,setting_b,outcome_a,outcome_b`.
    pub fn trial_log_csv(&self) -> String {
        let mut out = String::from("trial,setting_a,setting_b,outcome_a,outcome_b\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.trial,
                r.setting_a.label('a'),
                r.setting_b.label('b'),
                r.outcome_a,
                r.outcome_b
            );
        }
        out
    }
}

/// `E(AB) + E(AB') + E(A'B) - E(A'B')` from the exact singlet correlation.
pub fn chsh_s_exact(a: f64, a_prime: f64, b: f64, b_prime: f64) -> f64 {
    let e = |x: f64, y: f64| {
        singlet_joint(Direction::in_xz_plane(x), Direction::in_xz_plane(y)).correlation()
    };
    e(a, b) + e(a, b_prime) + e(a_prime, b) - e(a_prime, b_prime)
}

fn draw_outcome(rng: &mut Rng, joint: &JointTable) -> (i8, i8) {
    let u: f64 = rng.random();
    let p = &joint.p;
    let mut acc = 0.0;
    for (i, row) in p.iter().enumerate() {
        for (j, &q) in row.iter().enumerate() {
            acc += q;
            if u < acc {
                return (1 - 2 * i as i8, 1 - 2 * j as i8);
            }
        }
    }
    (-1, -1)
}

fn draw_setting(rng: &mut Rng) -> Setting {
    if rng.random::<bool>() {
        Setting::Primed
    } else {
        Setting::Plain
    }
}

fn simulate<F>(n: usize, seed: u64, exec: Execution, outcome: F) -> ChshRun
where
    F: Fn(&mut Rng, Setting, Setting) -> (i8, i8) + Sync + Send,
{
    let records = exec
        .map_chunks(n, seed, |rng, start, len| {
            (start..start + len)
                .map(|trial| {
                    let setting_a = draw_setting(rng);
                    let setting_b = draw_setting(rng);
                    let (outcome_a, outcome_b) = outcome(rng, setting_a, setting_b);
                    TrialRecord {
                        trial,
                        setting_a,
                        setting_b,
                        outcome_a,
                        outcome_b,
                    }
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    ChshRun::from_records(records)
}

/// Independent uniform settings per trial; outcomes drawn from the singlet
/// joint distribution at the chosen pair of directions.
pub fn chsh_simulate(cfg: &ChshConfig, exec: Execution) -> ChshRun {
    let mut joints = [[JointTable { p: [[0.0; 2]; 2] }; 2]; 2];
    for sa in Setting::BOTH {
        for sb in Setting::BOTH {
            joints[sa.index()][sb.index()] = singlet_joint(
                Direction::in_xz_plane(cfg.alice(sa)),
                Direction::in_xz_plane(cfg.bob(sb)),
            );
        }
    }
    simulate(cfg.n_trials, cfg.seed, exec, |rng, sa, sb| {
        draw_outcome(rng, &joints[sa.index()][sb.index()])
    })
}

/// Local deterministic model: each trial draws one assignment
/// `(A, A', B, B') ∈ {±1}⁴` with the given weights (bit 3 = A, bit 0 = B';
/// a set bit means -1) and reports the entries selected by the settings.
pub fn chsh_simulate_local(
    weights: &[f64; 16],
    n_trials: usize,
    seed: u64,
    exec: Execution,
) -> Result<ChshRun> {
    let total: f64 = weights.iter().sum();
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) || total <= 0.0 {
        return Err(Error::BadDistribution(
            "assignment weights must be nonnegative with positive sum".into(),
        ));
    }
    if n_trials == 0 {
        return Err(Error::InvalidInput("n_trials must be at least 1".into()));
    }
    let cumulative: Vec<f64> = weights
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w / total;
            Some(*acc)
        })
        .collect();
    Ok(simulate(n_trials, seed, exec, |rng, sa, sb| {
        let u: f64 = rng.random();
        let k = cumulative.iter().position(|&c| u < c).unwrap_or(15);
        let [a, a_prime, b, b_prime] = assignment(k);
        let oa = if sa == Setting::Plain { a } else { a_prime };
        let ob = if sb == Setting::Plain { b } else { b_prime };
        (oa, ob)
    }))
}

fn assignment(k: usize) -> [i8; 4] {
    [3, 2, 1, 0].map(|bit| if k >> bit & 1 == 1 { -1 } else { 1 })
}

/// Maximum of `AB + AB' + A'B - A'B'` over all sixteen `±1` assignments.
pub fn chsh_classical_max() -> i32 {
    (0..16)
        .map(|k| {
            let [a, ap, b, bp] = assignment(k).map(i32::from);
            a * b + a * bp + ap * b - ap * bp
        })
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantumMax {
    /// `(a, a', b, b')` in degrees.
    pub angles_deg: [f64; 4],
    /// Signed statistic at the maximizing angles.
    pub s: f64,
}

/// Grid search for the largest `|s|` over angle quadruples on a grid of
/// `resolution_deg` degrees. `a` is fixed at 0 since `s` depends only on
/// angle differences.
pub fn chsh_quantum_max(resolution_deg: f64, exec: Execution) -> Result<QuantumMax> {
    if !(resolution_deg > 0.0 && resolution_deg <= 5.0) {
        return Err(Error::InvalidInput(format!(
            "resolution {resolution_deg}° must lie in (0, 5]"
        )));
    }
    let steps = (360.0 / resolution_deg).round();
    if (steps * resolution_deg - 360.0).abs() > 1e-9 {
        return Err(Error::InvalidInput(format!(
            "resolution {resolution_deg}° must divide 360°"
        )));
    }
    let n = steps as usize;
    let e: Vec<f64> = (0..n)
        .map(|k| {
            let d = (k as f64 * resolution_deg).to_radians();
            singlet_joint(Direction::in_xz_plane(0.0), Direction::in_xz_plane(d)).correlation()
        })
        .collect();
    let corr = |x: usize, y: usize| e[(y + n - x) % n];
    let best = exec
        .map(n, |ap| {
            let mut best = (0.0f64, [0usize; 4]);
            for b in 0..n {
                for bp in 0..n {
                    let s = corr(0, b) + corr(0, bp) + corr(ap, b) - corr(ap, bp);
                    if s.abs() > best.0.abs() {
                        best = (s, [0, ap, b, bp]);
                    }
                }
            }
            best
        })
        .into_iter()
        .fold((0.0f64, [0usize; 4]), |acc, x| {
            if x.0.abs() > acc.0.abs() {
                x
            } else {
                acc
            }
        });
    Ok(QuantumMax {
        angles_deg: best.1.map(|k| k as f64 * resolution_deg),
        s: best.0,
    })
}
