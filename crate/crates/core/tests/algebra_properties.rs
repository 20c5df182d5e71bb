use proptest::prelude::*;
use tetrad_em::algebra::{grade_of, Multivector, ETA};

fn mv() -> impl Strategy<Value = Multivector> {
    prop::array::uniform16(-1.0f64..1.0).prop_map(|c| Multivector { c })
}

fn vector() -> impl Strategy<Value = Multivector> {
    prop::array::uniform4(-1.0f64..1.0).prop_map(Multivector::vector)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn geometric_product_is_associative(a in mv(), b in mv(), c in mv()) {
        let lhs = a.gp(&b).gp(&c);
        let rhs = a.gp(&b.gp(&c));
        prop_assert!((lhs - rhs).norm_inf() <= 1e-12);
    }
}

proptest! {
    #[test]
    fn vectors_anticommute_to_the_metric(a in vector(), b in vector()) {
        let dot = a.scalar_product(&b);
        let sym = a.gp(&b) + b.gp(&a) - Multivector::scalar(2.0 * dot);
        prop_assert!(sym.norm_inf() <= 1e-14);
        let eta: f64 = (0..4).map(|i| ETA[i] * a.c[1 << i] * b.c[1 << i]).sum();
        prop_assert!((dot - eta).abs() <= 1e-15);
    }

    #[test]
    fn contractions_are_adjoint_to_wedge(x in mv(), y in mv(), z in mv()) {
        // (X⌟Y)·Z = Y·(X̃∧Z) and (Y⌞X)·Z = Y·(Z∧X̃)
        let l = x.left_contract(&y).scalar_product(&z) - y.scalar_product(&x.reverse().wedge(&z));
        let r = y.right_contract(&x).scalar_product(&z) - y.scalar_product(&z.wedge(&x.reverse()));
        prop_assert!(l.abs() <= 1e-12, "{l}");
        prop_assert!(r.abs() <= 1e-12, "{r}");
    }

    #[test]
    fn scalar_part_is_cyclic(a in mv(), b in mv()) {
        prop_assert!((a.gp(&b).c[0] - b.gp(&a).c[0]).abs() <= 1e-13);
        prop_assert!((a.scalar_product(&b) - b.scalar_product(&a)).abs() <= 1e-13);
    }

    #[test]
    fn reverse_is_an_involution(x in mv()) {
        prop_assert_eq!(x.reverse().reverse(), x);
    }

    #[test]
    fn commutator_obeys_jacobi(a in mv(), b in mv(), c in mv()) {
        let j = a.commutator(&b.commutator(&c))
            + b.commutator(&c.commutator(&a))
            + c.commutator(&a.commutator(&b));
        prop_assert!(j.norm_inf() <= 1e-11);
        prop_assert_eq!(a.commutator(&a).norm_inf(), 0.0);
    }

    #[test]
    fn unit_is_neutral(x in mv()) {
        let one = Multivector::scalar(1.0);
        prop_assert_eq!(one.gp(&x), x.clone());
        prop_assert_eq!(one.left_contract(&x), x);
    }

    #[test]
    fn vector_wedges_itself_to_zero(a in vector()) {
        prop_assert_eq!(a.wedge(&a).norm_inf(), 0.0);
    }

    #[test]
    fn double_star_of_a_bivector(x in mv()) {
        let b = x.grade(2);
        prop_assert!((b.hodge_star().hodge_star() + b).norm_inf() <= 1e-15);
    }
}

#[test]
fn double_star_sign_table() {
    let table = [-1.0, 1.0, -1.0, 1.0, -1.0];
    for (p, sign) in table.iter().enumerate() {
        let expected = -(-1.0f64).powi(p as i32);
        assert_eq!(*sign, expected);
        for m in (0..16).filter(|&m| grade_of(m) == p) {
            let x = Multivector::blade(m, 1.0);
            assert_eq!(x.hodge_star().hodge_star(), x.scale(*sign));
        }
    }
}

#[test]
fn worked_products() {
    let g = Multivector::basis;
    assert_eq!(g(0).scalar_product(&g(0)), 1.0);
    assert_eq!(g(1).scalar_product(&g(1)), -1.0);
    let tau = Multivector::pseudoscalar();
    assert_eq!(tau.gp(&tau), Multivector::scalar(-1.0));
    assert_eq!(g(0).wedge(&g(1)), Multivector::blade(0b0011, 1.0));
    let g12 = g(1).wedge(&g(2));
    // ⟨(𝔤²𝔤¹)(𝔤¹𝔤²)⟩₀ = η₁₁η₂₂
    assert_eq!(g12.scalar_product(&g12), 1.0);
    assert_eq!(g(0).left_contract(&tau), g(1).wedge(&g(2)).wedge(&g(3)));
    let g01 = g(0).wedge(&g(1));
    assert_eq!(g01.reverse(), g01.scale(-1.0));
    assert_eq!(tau.reverse(), tau);
    assert_eq!(Multivector::scalar(1.0).hodge_star(), tau);
    assert_eq!(tau.hodge_star(), Multivector::scalar(-1.0));
    assert_eq!(g01.commutator(&g(0)), g(1).scale(-2.0));
}
