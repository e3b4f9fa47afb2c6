use serde::Serialize;

use super::{orbits, GroupAction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
    Both,
}

/// How each orbit's total mass is fixed. Any positive scale per orbit gives
/// an invariant measure.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum OrbitNormalization {
    /// Each orbit carries total mass 1 (a probability on every orbit).
    #[default]
    UnitMass,
    /// Weight 1 on every point.
    Counting,
    /// Total mass per orbit, in orbit order.
    OrbitMass(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantMeasure {
    pub weights: Vec<f64>,
    pub side: Side,
}

impl InvariantMeasure {
    /// `μ(E)`.
    pub fn mass(&self, subset: &[usize]) -> f64 {
        subset.iter().map(|&x| self.weights[x]).sum()
    }

    /// Largest `|μ(gE) - μ(E)|` over group elements and subsets. Subsets are
    /// enumerated exhaustively up to 12 points; beyond that singletons are
    /// checked, which is equivalent for a finite action.
    pub fn invariance_violation(&self, action: &GroupAction) -> f64 {
        let n = action.len();
        let mut worst: f64 = 0.0;
        let check = |subset: &[usize], worst: &mut f64| {
            let m = self.mass(subset);
            for g in 0..action.group().order() {
                let image: Vec<usize> = subset.iter().map(|&x| action.act(g, x)).collect();
                *worst = worst.max((self.mass(&image) - m).abs());
            }
        };
        if n <= 12 {
            for bits in 0u32..(1u32 << n) {
                let subset: Vec<usize> = (0..n).filter(|&i| bits >> i & 1 == 1).collect();
                check(&subset, &mut worst);
            }
        } else {
            for x in 0..n {
                check(&[x], &mut worst);
            }
        }
        worst
    }
}

/// Measure constant on each orbit. For a finite group the left and right
/// invariant measures on the space coincide.
pub fn invariant_measure(
    action: &GroupAction,
    norm: &OrbitNormalization,
) -> Result<InvariantMeasure> {
    let o = orbits(action);
    let masses: Vec<f64> = match norm {
        OrbitNormalization::UnitMass => vec![1.0; o.blocks.len()],
        OrbitNormalization::Counting => o.blocks.iter().map(|b| b.len() as f64).collect(),
        OrbitNormalization::OrbitMass(m) => {
            if m.len() != o.blocks.len() {
                return Err(Error::InvalidInput(format!(
                    "{} orbit masses for {} orbits",
                    m.len(),
                    o.blocks.len()
                )));
            }
            if m.iter().any(|&x| !(x.is_finite() && x >= 0.0)) {
                return Err(Error::InvalidInput(
                    "orbit masses must be finite and nonnegative".into(),
                ));
            }
            m.clone()
        }
    };
    let mut weights = vec![0.0; action.len()];
    for (b, mass) in o.blocks.iter().zip(masses) {
        for &x in b {
            weights[x] = mass / b.len() as f64;
        }
    }
    Ok(InvariantMeasure {
        weights,
        side: Side::Both,
    })
}
