//! Finite-dimensional complex linear algebra.
//!
//! [`Operator`], [`StateVector`] and [`DensityOperator`] are thin validated
//! wrappers around `nalgebra` dense storage. Values are immutable once built;
//! arithmetic returns new values.

mod eig;
pub mod random;
mod serial;

use std::ops::{Add, Mul, Neg, Sub};

pub use nalgebra::Complex;
use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tol::Tolerances;

pub use eig::{eig_hermitian, eig_hermitian_with, EigenDecomposition};
pub use serial::DenseForm;

pub type C64 = Complex<f64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator(DMatrix<C64>);

impl Operator {
    pub fn from_matrix(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::InvalidInput(
                "operator dimension must be positive".into(),
            ));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput(
                "operator has non-finite entries".into(),
            ));
        }
        Ok(Operator(m))
    }

    /// Build from row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Build from real row-major entries.
    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        let c: Vec<C64> = entries.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::from_rows(dim, &c)
    }

    pub fn zeros(dim: usize) -> Self {
        Operator(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Operator(DMatrix::identity(dim, dim))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let d = DVector::from_iterator(values.len(), values.iter().map(|&x| C64::new(x, 0.0)));
        Operator(DMatrix::from_diagonal(&d))
    }

    /// `|ket⟩⟨bra|`.
    pub fn outer(ket: &StateVector, bra: &StateVector) -> Self {
        Operator(&ket.0 * bra.0.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Operator(self.0.adjoint())
    }

    pub fn scale(&self, s: f64) -> Self {
        Operator(self.0.map(|z| z * s))
    }

    pub fn scale_complex(&self, s: C64) -> Self {
        Operator(self.0.map(|z| z * s))
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Largest entry modulus.
    pub fn norm_max(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A - A†|`.
    pub fn hermitian_deviation(&self) -> f64 {
        (&self.0 - self.0.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |U†U - I|`.
    pub fn unitary_deviation(&self) -> f64 {
        let d = self.dim();
        (self.0.adjoint() * &self.0 - DMatrix::<C64>::identity(d, d))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |P² - P|` combined with the Hermitian deviation.
    pub fn projector_deviation(&self) -> f64 {
        let sq = (&self.0 * &self.0 - &self.0)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        sq.max(self.hermitian_deviation())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitary_deviation() <= tol
    }

    pub(crate) fn require_hermitian(&self, tol: f64) -> Result<()> {
        let deviation = self.hermitian_deviation();
        if deviation > tol {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    pub(crate) fn require_unitary(&self, tol: f64) -> Result<()> {
        let deviation = self.unitary_deviation();
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(())
    }

    pub(crate) fn require_projector(&self, tol: f64) -> Result<()> {
        let deviation = self.projector_deviation();
        if deviation > tol {
            return Err(Error::NotProjector { deviation });
        }
        Ok(())
    }

    pub(crate) fn require_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Operator((&self.0 + self.0.adjoint()).map(|z| z * 0.5))
    }

    /// `A|s⟩` as raw amplitudes (not renormalized).
    pub fn apply(&self, s: &StateVector) -> DVector<C64> {
        &self.0 * &s.0
    }

    /// `⟨s|A|s⟩`.
    pub fn expectation(&self, s: &StateVector) -> C64 {
        s.0.dotc(&(&self.0 * &s.0))
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Operator) -> Self {
        Operator(&self.0 * &other.0 - &other.0 * &self.0)
    }

    /// Real diagonal entries.
    pub fn diagonal_re(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.0[(i, i)].re).collect()
    }

    /// Largest modulus of an off-diagonal entry.
    pub fn off_diagonal_norm(&self) -> f64 {
        let d = self.dim();
        let mut m: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    m = m.max(self.0[(i, j)].norm());
                }
            }
        }
        m
    }

    /// Row-major entries.
    pub fn to_row_major(&self) -> Vec<C64> {
        let d = self.dim();
        let mut v = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                v.push(self.0[(i, j)]);
            }
        }
        v
    }
}

impl<'a> Add<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn add(self, rhs: &'a Operator) -> Operator {
        Operator(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn sub(self, rhs: &'a Operator) -> Operator {
        Operator(&self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn mul(self, rhs: &'a Operator) -> Operator {
        Operator(&self.0 * &rhs.0)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator(-&self.0)
    }
}

/// Pauli matrices in the basis order (|0⟩, |1⟩).
pub mod pauli {
    use super::*;

    pub fn x() -> Operator {
        Operator::from_real_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn y() -> Operator {
        Operator::from_rows(2, &[ZERO, -I, I, ZERO]).unwrap()
    }

    pub fn z() -> Operator {
        Operator::diagonal(&[1.0, -1.0])
    }
}

/// Unit-norm complex vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(DVector<C64>);

impl StateVector {
    pub fn new(amplitudes: DVector<C64>) -> Result<Self> {
        Self::new_with(amplitudes, &Tolerances::DEFAULT)
    }

    pub fn new_with(amplitudes: DVector<C64>, tol: &Tolerances) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::NotNormalized("empty vector".into()));
        }
        let n = amplitudes.norm();
        if (n - 1.0).abs() > tol.structure {
            return Err(Error::NotNormalized(format!("norm {n}")));
        }
        Ok(StateVector(amplitudes))
    }

    /// Rescale to unit norm. Fails on the zero vector.
    pub fn normalized(amplitudes: DVector<C64>) -> Result<Self> {
        let n = amplitudes.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NotNormalized(format!(
                "cannot normalize vector of norm {n}"
            )));
        }
        Ok(StateVector(amplitudes.map(|z| z / n)))
    }

    pub fn from_slice(amplitudes: &[C64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(amplitudes))
    }

    /// Basis vector `|k⟩` in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = DVector::zeros(dim);
        v[k] = ONE;
        StateVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.0
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.0.dotc(&other.0)
    }

    /// `|s⟩⟨s|`.
    pub fn projector(&self) -> Operator {
        Operator::outer(self, self)
    }

    /// Multiply by the phase that makes the first amplitude with modulus
    /// above `1e-12` real and positive.
    pub fn canonical_phase(&self) -> Self {
        match self.0.iter().find(|z| z.norm() > 1e-12) {
            Some(z) => {
                let phase = z.conj() / z.norm();
                StateVector(self.0.map(|a| a * phase))
            }
            None => self.clone(),
        }
    }

    /// True if the two vectors define the same ray.
    pub fn same_ray(&self, other: &StateVector, tol: f64) -> bool {
        self.dim() == other.dim() && self.inner(other).norm() > 1.0 - tol
    }
}

/// Hermitian, positive semidefinite, trace-one operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator(Operator);

impl DensityOperator {
    pub fn new(op: Operator) -> Result<Self> {
        Self::new_with(op, &Tolerances::DEFAULT)
    }

    pub fn new_with(op: Operator, tol: &Tolerances) -> Result<Self> {
        op.require_hermitian(tol.structure)
            .map_err(|e| Error::NotDensity(e.to_string()))?;
        let tr = op.trace();
        if (tr.re - 1.0).abs() > tol.structure || tr.im.abs() > tol.structure {
            return Err(Error::NotDensity(format!("trace {tr}")));
        }
        let min = nalgebra::SymmetricEigen::new(op.hermitian_part().into_matrix())
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min < -tol.structure {
            return Err(Error::NotDensity(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(DensityOperator(op))
    }

    pub fn pure(s: &StateVector) -> Self {
        DensityOperator(s.projector())
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityOperator(Operator::identity(dim).scale(1.0 / dim as f64))
    }

    /// Diagonal density with the given weights.
    pub fn from_diagonal(weights: &[f64]) -> Result<Self> {
        Self::new(Operator::diagonal(weights))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn op(&self) -> &Operator {
        &self.0
    }

    pub fn into_op(self) -> Operator {
        self.0
    }

    /// Convex combination `λ·self + (1-λ)·other`.
    pub fn mix(&self, other: &DensityOperator, lambda: f64) -> Result<Self> {
        self.0.require_dim(other.dim())?;
        Self::new(&self.0.scale(lambda) + &other.0.scale(1.0 - lambda))
    }
}

/// Kronecker product `A ⊗ B`.
pub fn tensor(a: &Operator, b: &Operator) -> Operator {
    Operator(a.0.kronecker(&b.0))
}

/// `U†AU`, after checking that `U` is unitary.
pub fn conjugate(u: &Operator, a: &Operator) -> Result<Operator> {
    conjugate_with(u, a, &Tolerances::DEFAULT)
}

pub fn conjugate_with(u: &Operator, a: &Operator, tol: &Tolerances) -> Result<Operator> {
    a.require_dim(u.dim())?;
    u.require_unitary(tol.structure)?;
    Ok(Operator(u.0.adjoint() * &a.0 * &u.0))
}

/// `trace(AB) = Σ_ik A_ik B_ki`, without forming the product.
pub fn trace_product(a: &Operator, b: &Operator) -> Result<C64> {
    b.require_dim(a.dim())?;
    let d = a.dim();
    let mut acc = ZERO;
    for i in 0..d {
        for k in 0..d {
            acc += a.0[(i, k)] * b.0[(k, i)];
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn tensor_identities() {
        let i4 = tensor(&Operator::identity(2), &Operator::identity(2));
        assert_eq!(i4, Operator::identity(4));

        // Kronecker oracle: (A⊗B)_{(i,k),(j,l)} = A_ij B_kl
        let z = pauli::z();
        let zz = tensor(&z, &z);
        let mut expect = vec![ZERO; 16];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        expect[(2 * i + k) * 4 + (2 * j + l)] = z.get(i, j) * z.get(k, l);
                    }
                }
            }
        }
        assert_eq!(zz.to_row_major(), expect);
        assert_eq!(zz, Operator::diagonal(&[1.0, -1.0, -1.0, 1.0]));

        let a = tensor(&pauli::z(), &Operator::identity(2));
        let b = tensor(&Operator::identity(2), &pauli::x());
        assert!(a.commutator(&b).norm_frobenius() < 1e-12);
        let ab = &a * &b;
        assert!((&ab - &tensor(&pauli::z(), &pauli::x())).norm_max() < 1e-10);
    }

    #[test]
    fn conjugate_examples() {
        let a = pauli::z();
        assert_eq!(conjugate(&Operator::identity(2), &a).unwrap(), a);
        // σx σz σx = -σz, by direct 2×2 multiplication
        let out = conjugate(&pauli::x(), &a).unwrap();
        assert!((&out + &a).norm_max() < 1e-15);
        let not_unitary = Operator::diagonal(&[1.0, 2.0]);
        assert_eq!(
            conjugate(&not_unitary, &a).unwrap_err().name(),
            "NotUnitary"
        );
    }

    #[test]
    fn trace_product_examples() {
        let d = 5;
        let t = trace_product(&Operator::identity(d), &Operator::identity(d)).unwrap();
        assert_eq!(t, c(5.0, 0.0));

        let sigma = Operator::identity(2).scale(0.5);
        let proj = Operator::diagonal(&[1.0, 0.0]);
        assert!((trace_product(&sigma, &proj).unwrap() - c(0.5, 0.0)).norm() < 1e-15);

        // σx σy = iσz, traceless
        let t = trace_product(&pauli::x(), &pauli::y()).unwrap();
        assert!(t.norm() < 1e-15);

        let err = trace_product(&Operator::identity(2), &Operator::identity(3)).unwrap_err();
        assert_eq!(err.name(), "DimMismatch");
    }

    #[test]
    fn state_vector_validation() {
        let v = DVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(
            StateVector::new(v.clone()).unwrap_err().name(),
            "NotNormalized"
        );
        let s = StateVector::normalized(v).unwrap();
        assert!((s.amplitudes().norm() - 1.0).abs() < 1e-15);
        assert!(StateVector::normalized(DVector::zeros(3)).is_err());
    }

    #[test]
    fn canonical_phase_is_real_positive() {
        let s = StateVector::from_slice(&[c(0.0, 0.0), c(0.0, -0.6), c(0.8, 0.0)]).unwrap();
        let t = s.canonical_phase();
        assert!((t.amplitudes()[1] - c(0.6, 0.0)).norm() < 1e-15);
        assert!(t.same_ray(&s, 1e-12));
    }

    #[test]
    fn density_validation() {
        assert!(DensityOperator::from_diagonal(&[0.7, 0.3]).is_ok());
        assert_eq!(
            DensityOperator::from_diagonal(&[0.7, 0.4])
                .unwrap_err()
                .name(),
            "NotDensity"
        );
        assert_eq!(
            DensityOperator::from_diagonal(&[1.2, -0.2])
                .unwrap_err()
                .name(),
            "NotDensity"
        );
        let not_herm =
            Operator::from_rows(2, &[c(0.5, 0.0), c(1.0, 0.0), ZERO, c(0.5, 0.0)]).unwrap();
        assert!(DensityOperator::new(not_herm).is_err());
    }

    #[test]
    fn operator_rejects_bad_shapes() {
        assert!(Operator::from_matrix(DMatrix::zeros(2, 3)).is_err());
        assert!(Operator::from_real_rows(2, &[1.0, f64::NAN, 0.0, 1.0]).is_err());
        assert!(Operator::from_real_rows(2, &[1.0, 0.0, 1.0]).is_err());
    }
}
