//! Central terms of the bracket against residues, and bracket axioms on
//! random generators.

use std::sync::Arc;

use proptest::prelude::*;
use toroidal_core::{q, qi, Exponent, KTerm, Lc, LieAlgebra, RingSpec, ToroidalAlgebra, ToroidalElement};

/// `Res_t(t^m d(tⁿ)) = n δ_{m+n,0}`; the cocycle is `½⟨,⟩ Res(r ds − s dr)`.
fn residue_pairing(m: i64, n: i64) -> toroidal_core::Rational {
    if m + n == 0 {
        q(n - m, 2)
    } else {
        qi(0)
    }
}

#[test]
fn affine_central_term_is_a_residue() {
    let lie = Arc::new(LieAlgebra::sl2());
    let alg = ToroidalAlgebra::new(lie.clone(), RingSpec::laurent(&["t"]));
    for i in 0..3 {
        for j in 0..3 {
            for m in -4..=4 {
                for n in -4..=4 {
                    let x = alg.generator(i, Exponent(vec![m])).unwrap();
                    let y = alg.generator(j, Exponent(vec![n])).unwrap();
                    let b = alg.bracket_hat(&x, &y).unwrap();
                    let expected = residue_pairing(m, n) * lie.form(i, j);
                    let kbar = KTerm::new(Exponent(vec![-1]), 0);
                    assert_eq!(b.central_terms().coeff(&kbar), expected);
                    assert!(b.central_terms().keys().all(|k| *k == kbar));
                }
            }
        }
    }
}

#[test]
fn two_torus_degree_zero_term() {
    // in degree 0 the classes t₀⁻¹dt₀ and t₁⁻¹dt₁ are independent, and the
    // coefficient of each is the residue along that coordinate
    let lie = Arc::new(LieAlgebra::sl2());
    let alg = ToroidalAlgebra::new(lie.clone(), RingSpec::laurent(&["t0", "t1"]));
    for a in [-2i64, 0, 1, 3] {
        for b in [-1i64, 0, 2] {
            let x = alg.generator(0, Exponent(vec![a, b])).unwrap();
            let y = alg.generator(2, Exponent(vec![-a, -b])).unwrap();
            let c = alg.bracket_hat(&x, &y).unwrap();
            let k0 = KTerm::new(Exponent(vec![-1, 0]), 0);
            let k1 = KTerm::new(Exponent(vec![0, -1]), 1);
            assert_eq!(c.central_terms().coeff(&k0), residue_pairing(a, -a));
            assert_eq!(c.central_terms().coeff(&k1), residue_pairing(b, -b));
        }
    }
}

fn gen(alg: &ToroidalAlgebra, (i, a, b): (usize, i64, i64)) -> ToroidalElement {
    alg.generator(i, Exponent(vec![a, b])).unwrap()
}

fn key() -> impl Strategy<Value = (usize, i64, i64)> {
    (0usize..8, -3i64..=3, -3i64..=3)
}

proptest! {
    #[test]
    fn sl3_two_torus_axioms(x in key(), y in key(), z in key(), c in -3i64..=3) {
        let alg = ToroidalAlgebra::new(Arc::new(LieAlgebra::sl3()), RingSpec::laurent(&["x", "t"]));
        let (x, y, z) = (gen(&alg, x), gen(&alg, y), gen(&alg, z));
        let xy = alg.bracket_hat(&x, &y).unwrap();
        prop_assert_eq!(xy.clone(), alg.bracket_hat(&y, &x).unwrap().scale(&qi(-1)));
        let lin = alg.bracket_hat(&x.add(&z.scale(&qi(c))).unwrap(), &y).unwrap();
        prop_assert_eq!(lin, xy.add(&alg.bracket_hat(&z, &y).unwrap().scale(&qi(c))).unwrap());
        let mut jac = alg.zero();
        for (a, b, d) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
            jac = jac.add(&alg.bracket_hat(a, &alg.bracket_hat(b, d).unwrap()).unwrap()).unwrap();
        }
        prop_assert!(jac.is_zero());
    }
}

#[test]
fn loops_carry_the_lie_bracket() {
    let alg = ToroidalAlgebra::new(Arc::new(LieAlgebra::sl2()), RingSpec::laurent(&["x", "t"]));
    let x = alg.generator(1, Exponent(vec![1, 2])).unwrap();
    let y = alg.generator(0, Exponent(vec![-3, 0])).unwrap();
    let b = alg.bracket_hat(&x, &y).unwrap();
    assert_eq!(b.loops(), &Lc::single((0, Exponent(vec![-2, 2])), qi(2)));
}
