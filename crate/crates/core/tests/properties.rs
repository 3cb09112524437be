//! Algebraic invariants of the scalar field and the tensor layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use braided_fock::scalar::Laurent;
use braided_fock::tensor::{LinOperator, Matrix};
use braided_fock::Scalar;

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3i32..=3, -4i64..=4), 0..4)
        .prop_map(|ts| Laurent::from_terms(ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (laurent(), laurent())
        .prop_filter("non-zero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| Scalar::from_parts(n, d).expect("non-zero denominator"))
}

/// Small entries keep exact elimination fast.
fn entry() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        (-2i64..=2).prop_map(Scalar::int),
        (-1i32..=1, -2i64..=2).prop_map(|(e, c)| &Scalar::q_pow(e) * &Scalar::int(c)),
    ]
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(entry(), rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |r, c| v[r * cols + c].clone()))
}

fn point() -> impl Strategy<Value = BigRational> {
    (-7i64..=7, 1i64..=5).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_unique(a in scalar(), b in scalar()) {
        prop_assume!(!b.is_zero());
        let back = &(&a * &b) / &b;
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), x in point()) {
        if let (Ok(va), Ok(vb)) = (a.evaluate(&x), b.evaluate(&x)) {
            prop_assert_eq!((&a + &b).evaluate(&x).unwrap(), &va + &vb);
            prop_assert_eq!((&a * &b).evaluate(&x).unwrap(), &va * &vb);
        }
    }

    #[test]
    fn placing_commutes_with_composition(a in matrix(4, 4), b in matrix(4, 4), first in 1usize..=2) {
        let a = LinOperator::on_v(2, a).unwrap();
        let b = LinOperator::on_v(2, b).unwrap();
        let lhs = a.place(first, 3).unwrap().then(&b.place(first, 3).unwrap()).unwrap();
        let rhs = a.then(&b).unwrap().place(first, 3).unwrap();
        prop_assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn trace_is_cyclic(a in matrix(3, 3), b in matrix(3, 3)) {
        prop_assert_eq!(a.mul(&b).trace(), b.mul(&a).trace());
    }

    #[test]
    fn partial_trace_of_product_operator(a in matrix(2, 2), b in matrix(2, 2)) {
        let op = LinOperator::on_v(2, a.kron(&b)).unwrap();
        prop_assert_eq!(op.partial_trace(&[2]).unwrap(), a.scale(&b.trace()));
        prop_assert_eq!(op.partial_trace(&[1]).unwrap(), b.scale(&a.trace()));
    }

    #[test]
    fn kernel_is_annihilated(m in matrix(3, 5)) {
        let ki = m.kernel_image();
        prop_assert_eq!(ki.rank + ki.kernel.len(), 5);
        for v in &ki.kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }
}
