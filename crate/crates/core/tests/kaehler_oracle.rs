//! Graded dimensions of `Ω¹_R / dR` against a relation-rank count.

use proptest::prelude::*;
use toroidal_core::kaehler::{box_points, graded_dimension, universal_d};
use toroidal_core::{qi, Exponent, KaehlerElement, RingElement, RingSpec, Variable};

/// In degree `m` the basis differentials are `x^{m−eᵢ}dxᵢ` with a legal
/// exponent, and the only relation is `d(x^m)`, which is nonzero exactly
/// when `x^m` is legal and `m ≠ 0`.
fn oracle(spec: &RingSpec, m: &Exponent) -> usize {
    let gens = (0..spec.nvars()).filter(|&i| spec.is_legal(&m.shifted(i, -1))).count();
    let relation = spec.is_legal(m) && (0..spec.nvars()).any(|i| m.get(i) != 0 && spec.is_legal(&m.shifted(i, -1)));
    gens - usize::from(relation)
}

#[test]
fn laurent_one_variable() {
    let spec = RingSpec::laurent(&["t"]);
    for (m, d) in graded_dimension(&spec, &Exponent(vec![-10]), &Exponent(vec![10])) {
        assert_eq!(d, usize::from(m.is_zero()), "degree {m:?}");
    }
}

#[test]
fn toroidal_rings() {
    for n in [2usize, 3] {
        let names: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let spec = RingSpec::laurent(&refs);
        let lo = Exponent(vec![-3; n]);
        let hi = Exponent(vec![3; n]);
        let dims = graded_dimension(&spec, &lo, &hi);
        assert_eq!(dims.len(), 7usize.pow(n as u32));
        for (m, d) in dims {
            assert_eq!(d, oracle(&spec, &m));
            assert_eq!(d, if m.is_zero() { n } else { n - 1 });
        }
    }
}

#[test]
fn mixed_ring() {
    let spec = RingSpec::new(vec![Variable::poly("u"), Variable::laurent("t")], Some(1)).unwrap();
    for (m, d) in graded_dimension(&spec, &Exponent(vec![-1, -3]), &Exponent(vec![3, 3])) {
        assert_eq!(d, oracle(&spec, &m), "degree {m:?}");
    }
}

fn element(spec: &std::sync::Arc<RingSpec>, cs: &[(i64, i64, i64)]) -> RingElement {
    let mut r = RingElement::zero(spec);
    for &(a, b, c) in cs {
        r = r.add(&RingElement::monomial(spec, Exponent(vec![a, b]), qi(c)).unwrap()).unwrap();
    }
    r
}

proptest! {
    #[test]
    fn exact_forms_vanish(rs in prop::collection::vec((-3i64..=3, -3i64..=3, -4i64..=4), 0..6),
                          ws in prop::collection::vec((-3i64..=3, -3i64..=3, 0usize..2, -4i64..=4), 0..6)) {
        let spec = RingSpec::laurent(&["x", "t"]);
        let r = element(&spec, &rs);
        let mut w = KaehlerElement::zero(&spec);
        for (a, b, v, c) in ws {
            w = w.add(&KaehlerElement::basis(&spec, Exponent(vec![a, b]), v, qi(c)).unwrap()).unwrap();
        }
        let shifted = w.add(&universal_d(&r)).unwrap();
        prop_assert_eq!(shifted.normal_form(), w.normal_form());
        prop_assert!(universal_d(&r).normal_form().is_zero());
        let nf = w.normal_form();
        prop_assert_eq!(nf.representative().normal_form(), nf.clone());
    }
}

#[test]
fn box_is_lexicographic() {
    let pts = box_points(&Exponent(vec![0, -1]), &Exponent(vec![1, 0]));
    assert_eq!(pts, vec![Exponent(vec![0, -1]), Exponent(vec![0, 0]), Exponent(vec![1, -1]), Exponent(vec![1, 0])]);
}
