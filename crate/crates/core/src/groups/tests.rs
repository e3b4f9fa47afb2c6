use super::fixtures::*;
use super::*;

fn pts(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

#[test]
fn rejects_bad_tables() {
    assert!(FiniteGroup::new(vec![vec![0, 1], vec![0, 1]]).is_err());
    assert!(FiniteGroup::new(vec![]).is_err());
    // Latin square without associativity: the order-5 loop below has an
    // identity but is not a group
    let loop5 = vec![
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 3, 4, 2],
        vec![2, 4, 0, 1, 3],
        vec![3, 2, 4, 0, 1],
        vec![4, 3, 1, 2, 0],
    ];
    assert!(FiniteGroup::new(loop5).is_err());
    let g = FiniteGroup::cyclic(5);
    assert!(FiniteGroup::new(g.cayley().to_vec()).is_ok());
    assert_eq!(g.inverse(2), 3);
}

#[test]
fn action_axioms_checked() {
    let g = FiniteGroup::cyclic(2);
    // identity row moves points
    assert!(GroupAction::new(g.clone(), pts(2), vec![vec![1, 0], vec![0, 1]]).is_err());
    assert!(GroupAction::new(g, pts(2), vec![vec![0, 1], vec![1, 0]]).is_ok());
    assert_eq!(square_dihedral().group().order(), 8);
    assert_eq!(six_shift_by_two().group().order(), 3);
}

#[test]
fn permissibility_examples() {
    let a = square_dihedral();
    assert!(check_permissible(&VariableMap::identity(square_points()), &a).unwrap());
    assert!(check_permissible(&VariableMap::constant(square_points(), "c"), &a).unwrap());

    // Enumeration: fiber {(1,1),(1,-1)} goes to {(1,1),(-1,1)} under swap,
    // which has first coordinates 1 and -1.
    assert!(!check_permissible(&square_first_coordinate(), &square_swap()).unwrap());

    let wrong = VariableMap::constant(pts(3), "c");
    assert_eq!(
        check_permissible(&wrong, &a).unwrap_err().name(),
        "SpaceMismatch"
    );
}

#[test]
fn induced_action_examples() {
    let a = six_shift_by_two();
    let induced = induce_action(&VariableMap::identity(six_points()), &a).unwrap();
    assert_eq!(induced.table(), a.table());

    // shift by 2 preserves parity, so every element fixes both values
    let induced = induce_action(&six_parity(), &a).unwrap();
    assert_eq!(induced.space(), &["odd".to_string(), "even".to_string()]);
    assert_eq!(induced.kernel(), vec![0, 1, 2]);

    let induced = induce_action(&absolute_value(), &sign_flip()).unwrap();
    assert_eq!(induced.space(), &["2".to_string(), "1".to_string()]);
    assert_eq!(induced.kernel().len(), 2);

    let err = induce_action(&square_first_coordinate(), &square_swap()).unwrap_err();
    assert_eq!(err, Error::NotPermissible);
}

#[test]
fn induced_action_is_a_homomorphism() {
    for (theta, action) in [
        (six_parity(), six_shift_by_two()),
        (absolute_value(), sign_flip()),
        (VariableMap::identity(square_points()), square_dihedral()),
    ] {
        let induced = induce_action(&theta, &action).unwrap();
        assert_eq!(induced.axiom_violation(), None);
        // (gθ)(φ) = θ(kφ) on every point
        for g in 0..action.group().order() {
            for x in 0..action.len() {
                assert_eq!(
                    induced.act(g, theta.value(x)),
                    theta.value(action.act(g, x))
                );
            }
        }
    }
}

#[test]
fn maximal_subgroup_examples() {
    let whole = maximal_permissible_subgroup(&six_parity(), &six_shift_by_two()).unwrap();
    assert_eq!(whole.order(), 3);

    let sub = maximal_permissible_subgroup(&square_first_coordinate(), &square_swap()).unwrap();
    assert_eq!(sub.order(), 1);

    // In the dihedral group, exactly the elements generated by the two sign
    // flips keep first-coordinate fibers together.
    let a = square_dihedral();
    let theta = square_first_coordinate();
    let sub = maximal_permissible_subgroup(&theta, &a).unwrap();
    assert_eq!(sub.order(), 4);
    let mut images: Vec<Vec<usize>> = sub.elements.iter().map(|&g| a.table()[g].clone()).collect();
    images.sort();
    let mut expect = vec![
        vec![0, 1, 2, 3],
        FLIP_FIRST.to_vec(),
        FLIP_SECOND.to_vec(),
        vec![3, 2, 1, 0],
    ];
    expect.sort();
    assert_eq!(images, expect);
    assert!(check_permissible(&theta, &a.restrict(&sub)).unwrap());

    let trivial = GroupAction::trivial(pts(4));
    let theta = VariableMap::from_labels(pts(4), &["a", "b", "a", "c"]).unwrap();
    assert_eq!(
        maximal_permissible_subgroup(&theta, &trivial)
            .unwrap()
            .order(),
        1
    );
}

#[test]
fn orbit_examples() {
    let o = orbits(&sign_flip_pair());
    assert!(o.is_transitive());

    let o = orbits(&sign_flip());
    assert_eq!(o.blocks, vec![vec![0, 3], vec![1, 2]]);
    assert_eq!(
        orbit_labels(&sign_flip()).into_values().collect::<Vec<_>>(),
        vec![
            vec!["-2".to_string(), "2".to_string()],
            vec!["-1".to_string(), "1".to_string()]
        ]
    );

    let o = orbits(&GroupAction::trivial(pts(5)));
    assert_eq!(o.blocks.len(), 5);
    assert!(!o.is_transitive());
}

#[test]
fn refines_examples() {
    let d: Vec<String> = (1..=4).map(|i| i.to_string()).collect();
    let value = VariableMap::identity(d.clone());
    let parity = VariableMap::from_labels(d.clone(), &["odd", "even", "odd", "even"]).unwrap();
    assert!(refines(&parity, &parity).unwrap());
    assert!(refines(&value, &parity).unwrap());
    assert!(!refines(&parity, &value).unwrap());
    assert_eq!(
        maximal_elements(&[parity.clone(), value.clone()]).unwrap(),
        vec![1]
    );
    let other = VariableMap::identity(pts(3));
    assert!(refines(&other, &parity).is_err());
}

#[test]
fn invariant_measure_examples() {
    let m = invariant_measure(&sign_flip_pair(), &OrbitNormalization::UnitMass).unwrap();
    assert_eq!(m.weights, vec![0.5, 0.5]);

    // orbits {0,1} and {2,3,4,5}
    let a = GroupAction::from_generators(pts(6), &[vec![1, 0, 3, 4, 5, 2]]).unwrap();
    let m = invariant_measure(&a, &OrbitNormalization::UnitMass).unwrap();
    assert_eq!(m.weights, vec![0.5, 0.5, 0.25, 0.25, 0.25, 0.25]);
    assert_eq!(m.invariance_violation(&a), 0.0);

    let t = GroupAction::trivial(pts(3));
    let m = invariant_measure(&t, &OrbitNormalization::OrbitMass(vec![0.2, 3.0, 7.0])).unwrap();
    assert_eq!(m.weights, vec![0.2, 3.0, 7.0]);
    assert!(invariant_measure(&t, &OrbitNormalization::OrbitMass(vec![1.0])).is_err());

    let m = invariant_measure(&a, &OrbitNormalization::Counting).unwrap();
    assert_eq!(m.weights, vec![1.0; 6]);
}

#[test]
fn non_invariant_measure_detected() {
    let m = InvariantMeasure {
        weights: vec![0.3, 0.7],
        side: Side::Both,
    };
    assert!(m.invariance_violation(&sign_flip_pair()) > 0.3);
}

#[test]
fn permutation_representation_is_homomorphic() {
    let rep = UnitaryRepresentation::permutation(&square_dihedral());
    assert_eq!(rep.ops.len(), 8);
    assert_eq!(rep.homomorphism_deviation(), 0.0);
    assert!(rep.ops.iter().all(|u| u.unitary_deviation() == 0.0));
}

#[test]
fn action_spec_round_trip() {
    let a = sign_flip();
    let json = serde_json::to_string(&ActionSpec::from(&a)).unwrap();
    assert_eq!(ActionSpec::from_json(&json).unwrap(), a);
    let bad = r#"{"order":2,"cayley":[[0,1],[1,0]],"space":["a","b"],"action":[[1,0],[1,0]]}"#;
    assert_eq!(
        ActionSpec::from_json(bad).unwrap_err().name(),
        "InvalidGroup"
    );
}
