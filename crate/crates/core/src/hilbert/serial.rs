use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::{DensityOperator, Operator, StateVector, C64};
use crate::error::Error;

/// Structured-text form: `{"dim": n, "re": [...], "im": [...]}`, row-major.
/// States carry `n` entries, operators `n²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DenseForm {
    pub dim: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl DenseForm {
    fn entries(&self, expected: usize) -> Result<Vec<C64>, Error> {
        if self.re.len() != expected || self.im.len() != expected {
            return Err(Error::Parse(format!(
                "dim {} needs {expected} entries, got re={} im={}",
                self.dim,
                self.re.len(),
                self.im.len()
            )));
        }
        Ok(self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| C64::new(r, i))
            .collect())
    }

    fn from_entries(dim: usize, entries: &[C64]) -> Self {
        DenseForm {
            dim,
            // `+ 0.0` maps -0.0 to 0.0 so equal operators print identically
            re: entries.iter().map(|z| z.re + 0.0).collect(),
            im: entries.iter().map(|z| z.im + 0.0).collect(),
        }
    }
}

impl From<&Operator> for DenseForm {
    fn from(op: &Operator) -> Self {
        DenseForm::from_entries(op.dim(), &op.to_row_major())
    }
}

impl TryFrom<&DenseForm> for Operator {
    type Error = Error;
    fn try_from(f: &DenseForm) -> Result<Self, Error> {
        Operator::from_rows(f.dim, &f.entries(f.dim * f.dim)?)
    }
}

impl From<&StateVector> for DenseForm {
    fn from(s: &StateVector) -> Self {
        DenseForm::from_entries(s.dim(), s.amplitudes().as_slice())
    }
}

impl TryFrom<&DenseForm> for StateVector {
    type Error = Error;
    fn try_from(f: &DenseForm) -> Result<Self, Error> {
        StateVector::new(DVector::from_vec(f.entries(f.dim)?))
    }
}

macro_rules! serde_via_dense {
    ($t:ty, $into:expr, $from:expr) => {
        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                let form: DenseForm = $into(self);
                form.serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let form = DenseForm::deserialize(d)?;
                $from(&form).map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_via_dense!(Operator, |o: &Operator| DenseForm::from(o), |f| {
    Operator::try_from(f)
});
serde_via_dense!(StateVector, |s: &StateVector| DenseForm::from(s), |f| {
    StateVector::try_from(f)
});
serde_via_dense!(
    DensityOperator,
    |s: &DensityOperator| DenseForm::from(s.op()),
    |f| Operator::try_from(f).and_then(DensityOperator::new)
);
