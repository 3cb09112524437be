//! Hand-computed normal orderings in small doubles.

use braided_fock::fock::{make_double, DoubleElement, Family, Flavor, Gen};
use braided_fock::{Braiding, Scalar};

#[test]
fn weyl_word_of_length_four() {
    // x^1 x_1 x^1 x_1 = x_1 x_1 x^1 x^1 + 3 x_1 x^1 + 1
    let d = make_double(&Braiding::flip(2), Flavor::Bosonic, Family::Hecke, false).unwrap();
    let lhs = d.normal_order(&[Gen::A(0), Gen::B(0), Gen::A(0), Gen::B(0)]);
    let rhs = d
        .normal_order(&[Gen::B(0), Gen::B(0), Gen::A(0), Gen::A(0)])
        .add(
            &d.normal_order(&[Gen::B(0), Gen::A(0)])
                .scale(&Scalar::int(3)),
        )
        .add(&DoubleElement::one());
    assert_eq!(lhs, rhs);
}

#[test]
fn distinct_indices_commute_classically() {
    let d = make_double(&Braiding::flip(2), Flavor::Bosonic, Family::Hecke, false).unwrap();
    let lhs = d.normal_order(&[Gen::A(1), Gen::B(0), Gen::A(0), Gen::B(1)]);
    // x^2 x_1 x^1 x_2 = x_1 (x_2 x^2 + 1) x^1
    let rhs = d
        .normal_order(&[Gen::B(0), Gen::B(1), Gen::A(1), Gen::A(0)])
        .add(&d.normal_order(&[Gen::B(0), Gen::A(0)]));
    assert_eq!(lhs, rhs);
}

#[test]
fn fermionic_flip_anticommutes() {
    // classical fermions: x^1 x_1 = -x_1 x^1 + 1, x_1 x_1 = 0
    let d = make_double(&Braiding::flip(2), Flavor::Fermionic, Family::Hecke, false).unwrap();
    let lhs = d.normal_order(&[Gen::A(0), Gen::B(0)]);
    let rhs = d
        .normal_order(&[Gen::B(0), Gen::A(0)])
        .scale(&Scalar::int(-1))
        .add(&DoubleElement::one());
    assert_eq!(lhs, rhs);
    assert!(d.normal_order(&[Gen::B(0), Gen::B(0)]).is_zero());
    assert!(d.normal_order(&[Gen::A(1), Gen::A(1)]).is_zero());
}
