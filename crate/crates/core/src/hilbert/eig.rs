use nalgebra::{DMatrix, SymmetricEigen};

use super::{Operator, StateVector, C64};
use crate::error::Result;
use crate::tol::{same_eigenvalue, Tolerances};

/// Spectral decomposition `H = Σ_j u_j Π_j` with distinct `u_j`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    projectors: Vec<Operator>,
    bases: Vec<Vec<StateVector>>,
}

impl EigenDecomposition {
    /// Distinct eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[Operator] {
        &self.projectors
    }

    /// Orthonormal basis of the `j`-th eigenspace.
    pub fn eigenspace_basis(&self, j: usize) -> &[StateVector] {
        &self.bases[j]
    }

    pub fn rank(&self, j: usize) -> usize {
        self.bases[j].len()
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `Σ_j u_j Π_j`.
    pub fn reconstruct(&self) -> Operator {
        let d = self.projectors[0].dim();
        self.eigenvalues
            .iter()
            .zip(&self.projectors)
            .fold(Operator::zeros(d), |acc, (&u, p)| &acc + &p.scale(u))
    }

    /// Eigenvalues with multiplicity, ascending.
    pub fn spectrum(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.bases)
            .flat_map(|(&u, b)| std::iter::repeat_n(u, b.len()))
            .collect()
    }
}

pub fn eig_hermitian(h: &Operator) -> Result<EigenDecomposition> {
    eig_hermitian_with(h, &Tolerances::DEFAULT)
}

/// Eigendecomposition of a Hermitian operator. Eigenvalues closer than
/// `eigen_merge * (1 + |u|)` share one projector.
pub fn eig_hermitian_with(h: &Operator, tol: &Tolerances) -> Result<EigenDecomposition> {
    h.require_hermitian(tol.structure)?;
    let d = h.dim();
    let eig = SymmetricEigen::new(h.hermitian_part().into_matrix());

    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &k in &order {
        let u = eig.eigenvalues[k];
        match groups.last_mut() {
            // compare against the group's first member so long runs of small
            // gaps do not chain into one eigenspace
            Some(g) if same_eigenvalue(eig.eigenvalues[g[0]], u, tol.eigen_merge) => g.push(k),
            _ => groups.push(vec![k]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut projectors = Vec::with_capacity(groups.len());
    let mut bases = Vec::with_capacity(groups.len());
    for g in groups {
        let mean = g.iter().map(|&k| eig.eigenvalues[k]).sum::<f64>() / g.len() as f64;
        let mut p = DMatrix::<C64>::zeros(d, d);
        let mut basis = Vec::with_capacity(g.len());
        for &k in &g {
            let v = eig.eigenvectors.column(k).into_owned();
            p += &v * v.adjoint();
            basis.push(StateVector::normalized(v)?);
        }
        eigenvalues.push(mean);
        projectors.push(Operator::from_matrix(p)?);
        bases.push(basis);
    }
    Ok(EigenDecomposition {
        eigenvalues,
        projectors,
        bases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{pauli, random};

    #[test]
    fn diagonal_case() {
        let e = eig_hermitian(&Operator::diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.len(), 3);
        for (got, want) in e.eigenvalues().iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        // eigenvalue 1 sits at coordinate 1
        assert!((&e.projectors()[0] - &Operator::diagonal(&[0.0, 1.0, 0.0])).norm_max() < 1e-12);
        assert!((&e.projectors()[2] - &Operator::diagonal(&[1.0, 0.0, 0.0])).norm_max() < 1e-12);
    }

    #[test]
    fn pauli_x_by_hand() {
        // σx |±⟩ = ±|±⟩ with |±⟩ = (1, ±1)/√2, so Π± = ½(I ± σx)
        let e = eig_hermitian(&pauli::x()).unwrap();
        assert_eq!(e.eigenvalues().len(), 2);
        assert!((e.eigenvalues()[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues()[1] - 1.0).abs() < 1e-14);
        let half_i = Operator::identity(2).scale(0.5);
        let half_x = pauli::x().scale(0.5);
        assert!((&e.projectors()[0] - &(&half_i - &half_x)).norm_max() < 1e-12);
        assert!((&e.projectors()[1] - &(&half_i + &half_x)).norm_max() < 1e-12);
    }

    #[test]
    fn identity_is_one_eigenspace() {
        let e = eig_hermitian(&Operator::identity(4)).unwrap();
        assert_eq!(e.eigenvalues(), &[1.0]);
        assert_eq!(e.rank(0), 4);
        assert!((&e.projectors()[0] - &Operator::identity(4)).norm_max() < 1e-12);
    }

    #[test]
    fn near_degenerate_values_merge() {
        let e = eig_hermitian(&Operator::diagonal(&[1.0, 1.0 + 1e-12, 2.0])).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.rank(0), 2);
        let e = eig_hermitian(&Operator::diagonal(&[1.0, 1.0 + 1e-6, 2.0])).unwrap();
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = Operator::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(eig_hermitian(&a).unwrap_err().name(), "NotHermitian");
    }

    #[test]
    fn degenerate_random_spectrum() {
        let mut rng = crate::exec::substream(3, 0);
        let u = random::unitary(&mut rng, 6);
        let h =
            crate::hilbert::conjugate(&u, &Operator::diagonal(&[1.0, 1.0, -2.0, 0.5, 0.5, 0.5]))
                .unwrap();
        let e = eig_hermitian(&h).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!((e.rank(0), e.rank(1), e.rank(2)), (1, 3, 2));
        assert!((&e.reconstruct() - &h).norm_max() < 1e-10);
    }
}
