//! Small actions used throughout the tests and the `groups` subcommand.

use super::{GroupAction, VariableMap};

fn labels(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Points of `{±1}²`, ordered (1,1), (1,-1), (-1,1), (-1,-1).
pub fn square_points() -> Vec<String> {
    labels(&["(1,1)", "(1,-1)", "(-1,1)", "(-1,-1)"])
}

pub const SWAP: [usize; 4] = [0, 2, 1, 3];
pub const FLIP_FIRST: [usize; 4] = [2, 3, 0, 1];
pub const FLIP_SECOND: [usize; 4] = [1, 0, 3, 2];

/// `{e, swap}` acting on `{±1}²` by exchanging coordinates.
pub fn square_swap() -> GroupAction {
    GroupAction::from_generators(square_points(), &[SWAP.to_vec()]).expect("valid")
}

/// The order-8 symmetry group of `{±1}²` generated by the swap and both sign flips.
pub fn square_dihedral() -> GroupAction {
    GroupAction::from_generators(
        square_points(),
        &[SWAP.to_vec(), FLIP_FIRST.to_vec(), FLIP_SECOND.to_vec()],
    )
    .expect("valid")
}

/// First coordinate on `{±1}²`.
pub fn square_first_coordinate() -> VariableMap {
    VariableMap::from_labels(square_points(), &["1", "1", "-1", "-1"]).expect("valid")
}

/// Points `1..=6`.
pub fn six_points() -> Vec<String> {
    (1..=6).map(|i| i.to_string()).collect()
}

/// Cyclic shift by 2 on `1..=6` (order 3).
pub fn six_shift_by_two() -> GroupAction {
    GroupAction::from_generators(six_points(), &[vec![2, 3, 4, 5, 0, 1]]).expect("valid")
}

/// Parity on `1..=6`.
pub fn six_parity() -> VariableMap {
    VariableMap::from_labels(six_points(), &["odd", "even", "odd", "even", "odd", "even"])
        .expect("valid")
}

/// `{-2, -1, 1, 2}`.
pub fn signed_points() -> Vec<String> {
    labels(&["-2", "-1", "1", "2"])
}

/// `φ ↦ -φ` on `{-2, -1, 1, 2}`.
pub fn sign_flip() -> GroupAction {
    GroupAction::from_generators(signed_points(), &[vec![3, 2, 1, 0]]).expect("valid")
}

/// `|φ|` on `{-2, -1, 1, 2}`.
pub fn absolute_value() -> VariableMap {
    VariableMap::from_labels(signed_points(), &["2", "1", "1", "2"]).expect("valid")
}

/// `φ ↦ -φ` on `{-1, 1}`.
pub fn sign_flip_pair() -> GroupAction {
    GroupAction::from_generators(labels(&["-1", "1"]), &[vec![1, 0]]).expect("valid")
}
