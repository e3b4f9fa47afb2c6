//! Spin-r representation of SU(2).
//!
//! Basis order is `|r; m⟩` for `m = r, r-1, ..., -r`. Rotations are
//! `exp[iω (n·A)]`, so conjugation acts on directions by the right-handed
//! rotation about `n` through `ω`:
//! `U†(a·A)U = (R(n, ω) a)·A`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::hilbert::{Operator, StateVector, C64, I};
use crate::quadrature::gauss_legendre;

/// Spin `r = two_r / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinQuantumNumber {
    pub two_r: u32,
}

impl SpinQuantumNumber {
    pub const HALF: SpinQuantumNumber = SpinQuantumNumber { two_r: 1 };
    pub const ONE: SpinQuantumNumber = SpinQuantumNumber { two_r: 2 };

    pub fn new(two_r: u32) -> Self {
        SpinQuantumNumber { two_r }
    }

    /// From `r` given as an integer or half-integer.
    pub fn from_r(r: f64) -> Result<Self> {
        let two = 2.0 * r;
        if !(two.is_finite() && two >= 0.0 && (two - two.round()).abs() < 1e-9 && two <= 1e6) {
            return Err(Error::InvalidInput(format!(
                "spin r = {r} is not a nonnegative half-integer"
            )));
        }
        Ok(SpinQuantumNumber {
            two_r: two.round() as u32,
        })
    }

    pub fn r(self) -> f64 {
        self.two_r as f64 / 2.0
    }

    pub fn dim(self) -> usize {
        self.two_r as usize + 1
    }

    /// `m` values in basis order.
    pub fn m_values(self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.r() - k as f64).collect()
    }

    pub fn is_integer(self) -> bool {
        self.two_r.is_multiple_of(2)
    }
}

impl fmt::Display for SpinQuantumNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.two_r / 2)
        } else {
            write!(f, "{}/2", self.two_r)
        }
    }
}

/// Unit vector in R³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Direction {
    pub const X: Direction = Direction {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: Direction = Direction {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const Z: Direction = Direction {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };

    /// Requires unit norm within `1e-12`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("direction has norm {n}")));
        }
        Ok(Direction { x, y, z })
    }

    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidInput("zero or non-finite direction".into()));
        }
        Ok(Direction {
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    /// Polar angle from +z, azimuth from +x.
    pub fn from_angles(polar: f64, azimuth: f64) -> Self {
        Direction {
            x: polar.sin() * azimuth.cos(),
            y: polar.sin() * azimuth.sin(),
            z: polar.cos(),
        }
    }

    /// Direction at `angle` radians from +z towards +x in the x–z plane.
    pub fn in_xz_plane(angle: f64) -> Self {
        Direction {
            x: angle.sin(),
            y: 0.0,
            z: angle.cos(),
        }
    }

    pub fn from_array(v: [f64; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Direction) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    fn cross(self, o: Direction) -> [f64; 3] {
        [
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        ]
    }

    /// Angle between the two directions, in [0, π].
    pub fn angle_to(self, o: Direction) -> f64 {
        self.dot(o).clamp(-1.0, 1.0).acos()
    }
}

impl std::ops::Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

/// Right-handed rotation of R³ about `n` through `omega` (Rodrigues).
pub fn rotation_matrix_3d(n: Direction, omega: f64) -> [[f64; 3]; 3] {
    let (s, c) = omega.sin_cos();
    let t = 1.0 - c;
    let (x, y, z) = (n.x, n.y, n.z);
    [
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ]
}

pub fn rotate_direction(r: &[[f64; 3]; 3], a: Direction) -> Direction {
    let v = a.to_array();
    let w: Vec<f64> = r
        .iter()
        .map(|row| row.iter().zip(&v).map(|(p, q)| p * q).sum())
        .collect();
    Direction {
        x: w[0],
        y: w[1],
        z: w[2],
    }
}

/// Spin matrices in the `|r; m⟩` basis, `m` descending.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub spin: SpinQuantumNumber,
    pub ax: Operator,
    pub ay: Operator,
    pub az: Operator,
    pub a_plus: Operator,
    pub a_minus: Operator,
}

/// Residuals of the defining relations of a spin representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinResiduals {
    /// `‖[A0, A+] - A+‖`
    pub raise: f64,
    /// `‖[A0, A-] + A-‖`
    pub lower: f64,
    /// `‖[A-, A+] + 2A0‖`
    pub ladder: f64,
    /// `‖A² - r(r+1)I‖`
    pub casimir: f64,
    /// `max_m ‖A0|m⟩ - m|m⟩‖`
    pub eigen: f64,
}

impl SpinResiduals {
    pub fn commutation(&self) -> f64 {
        self.raise.max(self.lower).max(self.ladder)
    }
}

impl SpinOperators {
    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    /// `A² = Ax² + Ay² + Az²`.
    pub fn casimir(&self) -> Operator {
        let xx = &self.ax * &self.ax;
        let yy = &self.ay * &self.ay;
        let zz = &self.az * &self.az;
        &(&xx + &yy) + &zz
    }

    /// Frobenius norms of the residuals.
    pub fn residuals(&self) -> SpinResiduals {
        let d = self.dim();
        let r = self.spin.r();
        let a0 = &self.az;
        let raise = (&a0.commutator(&self.a_plus) - &self.a_plus).norm_frobenius();
        let lower = (&a0.commutator(&self.a_minus) + &self.a_minus).norm_frobenius();
        let ladder = (&self.a_minus.commutator(&self.a_plus) + &a0.scale(2.0)).norm_frobenius();
        let casimir =
            (&self.casimir() - &Operator::identity(d).scale(r * (r + 1.0))).norm_frobenius();
        let eigen = self
            .spin
            .m_values()
            .iter()
            .enumerate()
            .map(|(k, &m)| {
                let v = a0.apply(&StateVector::basis(d, k));
                let mut target = nalgebra::DVector::<C64>::zeros(d);
                target[k] = C64::new(m, 0.0);
                (v - target).norm()
            })
            .fold(0.0, f64::max);
        SpinResiduals {
            raise,
            lower,
            ladder,
            casimir,
            eigen,
        }
    }
}

pub fn spin_operators(spin: SpinQuantumNumber) -> SpinOperators {
    let d = spin.dim();
    let r = spin.r();
    let m = spin.m_values();
    let mut plus = DMatrix::<C64>::zeros(d, d);
    // A+|m⟩ = √(r(r+1) - m(m+1)) |m+1⟩; |m+1⟩ sits one index earlier
    for k in 1..d {
        plus[(k - 1, k)] = C64::new((r * (r + 1.0) - m[k] * (m[k] + 1.0)).sqrt(), 0.0);
    }
    let minus = plus.adjoint();
    let ax = (&plus + &minus).map(|z| z * 0.5);
    let ay = (&plus - &minus).map(|z| z / (2.0 * I));
    let az = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        d,
        m.iter().map(|&x| C64::new(x, 0.0)),
    ));
    SpinOperators {
        spin,
        ax: Operator::from_matrix(ax).expect("square"),
        ay: Operator::from_matrix(ay).expect("square"),
        az: Operator::from_matrix(az).expect("square"),
        a_plus: Operator::from_matrix(plus).expect("square"),
        a_minus: Operator::from_matrix(minus).expect("square"),
    }
}

fn component_from(ops: &SpinOperators, a: Direction) -> Operator {
    let x = ops.ax.scale(a.x);
    let y = ops.ay.scale(a.y);
    let z = ops.az.scale(a.z);
    &(&x + &y) + &z
}

/// `a·A`.
pub fn component_operator(spin: SpinQuantumNumber, a: Direction) -> Operator {
    component_from(&spin_operators(spin), a)
}

/// `exp(iωH)` for Hermitian `H`.
fn exp_i_hermitian(h: &Operator, omega: f64) -> Operator {
    let eig = SymmetricEigen::new(h.hermitian_part().into_matrix());
    let phases = eig.eigenvalues.map(|u| C64::from_polar(1.0, omega * u));
    let v = &eig.eigenvectors;
    let m = v * DMatrix::from_diagonal(&phases) * v.adjoint();
    Operator::from_matrix(m).expect("square")
}

/// `exp[iω(n·A)]`.
pub fn rotation(spin: SpinQuantumNumber, n: Direction, omega: f64) -> Operator {
    exp_i_hermitian(&component_operator(spin, n), omega)
}

/// Axis and angle of the geodesic rotation of R³ carrying -z onto `a`.
/// For `a = ±z` the axis is +x.
pub fn geodesic_from_minus_z(a: Direction) -> (Direction, f64) {
    let minus_z = -Direction::Z;
    let c = minus_z.cross(a);
    let s = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    let angle = minus_z.angle_to(a);
    if s < 1e-12 {
        return (Direction::X, if a.z < 0.0 { 0.0 } else { PI });
    }
    (
        Direction {
            x: c[0] / s,
            y: c[1] / s,
            z: c[2] / s,
        },
        angle,
    )
}

fn coherent_from(ops: &SpinOperators, a: Direction) -> StateVector {
    let d = ops.dim();
    let (axis, angle) = geodesic_from_minus_z(a);
    let lowest = StateVector::basis(d, d - 1);
    if angle == 0.0 {
        return lowest;
    }
    // exp[iω'(n·A)] acts on directions by R(n, ω'); carrying the state on
    // -z to a needs ω' = -angle
    let u = exp_i_hermitian(&component_from(ops, axis), -angle);
    StateVector::normalized(u.apply(&lowest))
        .expect("unitary image")
        .canonical_phase()
}

/// Spin coherent state along `a`: the image of `|r; -r⟩` under the geodesic
/// rotation carrying -z to `a`, with canonical phase. It satisfies
/// `(a·A)|a⟩ = r|a⟩`.
pub fn coherent_state(spin: SpinQuantumNumber, a: Direction) -> StateVector {
    coherent_from(&spin_operators(spin), a)
}

/// `max |(d/4π) ∮ |a⟩⟨a| dΩ - I|` using `order` Gauss–Legendre nodes in
/// `cos θ` and `2·order` trapezoid nodes in azimuth.
pub fn resolution_deviation(spin: SpinQuantumNumber, order: usize) -> Result<f64> {
    resolution_deviation_with(spin, order, Execution::default())
}

pub fn resolution_deviation_with(
    spin: SpinQuantumNumber,
    order: usize,
    exec: Execution,
) -> Result<f64> {
    if order < spin.dim() + 1 {
        return Err(Error::InvalidInput(format!(
            "quadrature order {order} below 2r+2 = {} for r = {spin}",
            spin.dim() + 1
        )));
    }
    let d = spin.dim();
    let ops = spin_operators(spin);
    let (nodes, weights) = gauss_legendre(order);
    let n_phi = 2 * order;
    let scale = d as f64 / (4.0 * PI) * (2.0 * PI / n_phi as f64);
    let rows: Vec<DMatrix<C64>> = exec.map(order, |i| {
        let polar = nodes[i].clamp(-1.0, 1.0).acos();
        let mut acc = DMatrix::<C64>::zeros(d, d);
        for k in 0..n_phi {
            let phi = 2.0 * PI * k as f64 / n_phi as f64;
            let s = coherent_from(&ops, Direction::from_angles(polar, phi));
            let v = s.amplitudes();
            acc += v * v.adjoint();
        }
        acc.map(|z| z * weights[i] * scale)
    });
    let total = rows
        .into_iter()
        .fold(DMatrix::<C64>::zeros(d, d), |a, b| a + b);
    let dev = (total - DMatrix::<C64>::identity(d, d))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    Ok(dev)
}

/// Sign `s` with `exp[2πi(n·A)] ≈ s·I`, together with the deviation from `s·I`.
pub fn full_turn_sign(spin: SpinQuantumNumber, n: Direction) -> (i32, f64) {
    let u = rotation(spin, n, 2.0 * PI);
    let id = Operator::identity(spin.dim());
    let plus = (&u - &id).norm_max();
    let minus = (&u + &id).norm_max();
    if plus <= minus {
        (1, plus)
    } else {
        (-1, minus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{conjugate, eig_hermitian, ZERO};

    const HALF: SpinQuantumNumber = SpinQuantumNumber::HALF;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn spin_half_matrices() {
        // ladder construction: A+ = [[0,1],[0,0]] for r = ½
        let ops = spin_operators(HALF);
        assert_eq!(ops.az, Operator::diagonal(&[0.5, -0.5]));
        assert_eq!(
            ops.a_plus,
            Operator::from_real_rows(2, &[0.0, 1.0, 0.0, 0.0]).unwrap()
        );
        assert_eq!(
            ops.ax,
            Operator::from_real_rows(2, &[0.0, 0.5, 0.5, 0.0]).unwrap()
        );
        assert_eq!(
            ops.ay,
            Operator::from_rows(2, &[ZERO, c(0.0, -0.5), c(0.0, 0.5), ZERO]).unwrap()
        );
    }

    #[test]
    fn spin_one_casimir() {
        let ops = spin_operators(SpinQuantumNumber::ONE);
        assert!((&ops.casimir() - &Operator::identity(3).scale(2.0)).norm_max() < 1e-14);
    }

    #[test]
    fn spin_zero_is_trivial() {
        let ops = spin_operators(SpinQuantumNumber::new(0));
        for op in [&ops.ax, &ops.ay, &ops.az, &ops.a_plus, &ops.a_minus] {
            assert_eq!(op, &Operator::zeros(1));
        }
    }

    #[test]
    fn relations_hold_up_to_spin_ten() {
        for two_r in 0..=20 {
            let res = spin_operators(SpinQuantumNumber::new(two_r)).residuals();
            assert!(res.commutation() < 1e-12, "two_r={two_r}: {res:?}");
            assert!(res.casimir < 1e-10, "two_r={two_r}: {res:?}");
            assert!(res.eigen < 1e-10);
        }
    }

    #[test]
    fn from_r_parses_half_integers() {
        assert_eq!(SpinQuantumNumber::from_r(1.5).unwrap().two_r, 3);
        assert!(SpinQuantumNumber::from_r(0.3).is_err());
        assert!(SpinQuantumNumber::from_r(-1.0).is_err());
        assert_eq!(SpinQuantumNumber::new(3).to_string(), "3/2");
    }

    #[test]
    fn rotation_examples() {
        let n = Direction::normalized(0.3, -0.4, 0.8).unwrap();
        assert!((&rotation(HALF, n, 0.0) - &Operator::identity(2)).norm_max() < 1e-14);
        assert_eq!(full_turn_sign(HALF, n).0, -1);
        assert!(full_turn_sign(HALF, n).1 < 1e-10);
        assert_eq!(full_turn_sign(SpinQuantumNumber::ONE, n).0, 1);
        assert!(full_turn_sign(SpinQuantumNumber::ONE, n).1 < 1e-10);
        assert_eq!(
            full_turn_sign(SpinQuantumNumber::new(3), Direction::Y).0,
            -1
        );
        assert!(rotation(SpinQuantumNumber::new(4), n, 1.234).unitary_deviation() < 1e-10);
    }

    #[test]
    fn component_spectra() {
        for two_r in 0..=8 {
            let s = SpinQuantumNumber::new(two_r);
            let mut want = s.m_values();
            want.reverse();
            for a in [
                Direction::Z,
                Direction::X,
                Direction::normalized(1.0, 2.0, -0.5).unwrap(),
            ] {
                let e = eig_hermitian(&component_operator(s, a)).unwrap();
                assert_eq!(e.len(), s.dim());
                for (got, want) in e.eigenvalues().iter().zip(&want) {
                    assert!((got - want).abs() < 1e-9);
                }
            }
        }
        assert_eq!(
            component_operator(HALF, Direction::Z),
            Operator::diagonal(&[0.5, -0.5])
        );
    }

    #[test]
    fn conjugation_rotates_directions() {
        let mut rng = crate::exec::substream(11, 0);
        for two_r in 1..=4 {
            let s = SpinQuantumNumber::new(two_r);
            for _ in 0..10 {
                let n = Direction::from_array(crate::hilbert::random::direction(&mut rng)).unwrap();
                let a = Direction::from_array(crate::hilbert::random::direction(&mut rng)).unwrap();
                let omega = 2.0 * rand::Rng::random::<f64>(&mut rng) * PI;
                let u = rotation(s, n, omega);
                let lhs = conjugate(&u, &component_operator(s, a)).unwrap();
                let ra = rotate_direction(&rotation_matrix_3d(n, omega), a);
                let rhs = component_operator(s, ra);
                assert!((&lhs - &rhs).norm_max() < 1e-9);
            }
        }
    }

    #[test]
    fn coherent_state_examples() {
        for two_r in 0..=6 {
            let s = SpinQuantumNumber::new(two_r);
            let d = s.dim();
            assert_eq!(
                coherent_state(s, -Direction::Z),
                StateVector::basis(d, d - 1)
            );
            let up = coherent_state(s, Direction::Z);
            assert!(up.same_ray(&StateVector::basis(d, 0), 1e-12));
        }
        // r = ½ along +x: (|+⟩ + |−⟩)/√2
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let sx = coherent_state(HALF, Direction::X);
        assert!((sx.amplitudes()[0] - c(h, 0.0)).norm() < 1e-12);
        assert!((sx.amplitudes()[1] - c(h, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn coherent_state_is_top_eigenvector() {
        let mut rng = crate::exec::substream(5, 0);
        for two_r in 0..=6 {
            let s = SpinQuantumNumber::new(two_r);
            for _ in 0..10 {
                let a = Direction::from_array(crate::hilbert::random::direction(&mut rng)).unwrap();
                let psi = coherent_state(s, a);
                let img = component_operator(s, a).apply(&psi);
                let resid = (img - psi.amplitudes().map(|z| z * s.r())).norm();
                assert!(resid < 1e-9, "two_r={two_r} resid={resid}");
                let first = psi.amplitudes().iter().find(|z| z.norm() > 1e-12).unwrap();
                assert!(first.im.abs() < 1e-14 && first.re > 0.0);
            }
        }
    }

    #[test]
    fn antipodal_half_states_orthogonal() {
        let mut rng = crate::exec::substream(6, 0);
        for _ in 0..50 {
            let a = Direction::from_array(crate::hilbert::random::direction(&mut rng)).unwrap();
            let ov = coherent_state(HALF, a).inner(&coherent_state(HALF, -a));
            assert!(ov.norm() < 1e-10);
        }
    }

    #[test]
    fn resolution_of_identity() {
        assert!(resolution_deviation(HALF, 16).unwrap() < 1e-10);
        assert!(resolution_deviation(SpinQuantumNumber::new(4), 32).unwrap() < 1e-8);
        assert!(resolution_deviation(SpinQuantumNumber::new(0), 2).unwrap() < 1e-15);
        assert!(resolution_deviation(SpinQuantumNumber::new(4), 5).is_err());
        let coarse =
            resolution_deviation_with(SpinQuantumNumber::new(6), 8, Execution::Sequential).unwrap();
        assert!(coarse < 1e-8);
    }
}
