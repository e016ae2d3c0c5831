use std::sync::Arc;

use toroidal_cli::parse::{
    parse_chi, parse_element, parse_field, parse_hom, parse_modes, parse_ring, Context, Element, ParseError,
};
use toroidal_core::{LieAlgebra, VacuumModule};

mod common;
use common::{rings, CORPUS};

#[test]
fn corpus_round_trips() {
    assert_eq!(CORPUS.len(), 50);
    let rings = rings();
    let lie = Arc::new(LieAlgebra::sl2());
    for (ri, src) in CORPUS {
        let ctx = Context { ring: &rings[*ri], lie: Some(&lie) };
        let first = parse_element(src, ctx).unwrap_or_else(|e| panic!("{src}: {e}"));
        let shown = first.to_string();
        let second = parse_element(&shown, ctx).unwrap_or_else(|e| panic!("{src} -> {shown}: {e}"));
        assert_eq!(first, second, "{src} -> {shown}");
        assert_eq!(second.to_string(), shown);
    }
}

#[test]
fn element_kinds() {
    let rings = rings();
    let lie = Arc::new(LieAlgebra::sl2());
    let ctx = Context { ring: &rings[1], lie: Some(&lie) };
    assert!(matches!(parse_element("x*t", ctx), Ok(Element::Ring(_))));
    assert!(matches!(parse_element("x*dt", ctx), Ok(Element::Kaehler(_))));
    assert!(matches!(parse_element("J[e] + dt", ctx), Ok(Element::Toroidal(_))));
    // exact forms cancel in the central part
    let Ok(Element::Toroidal(x)) = parse_element("J[e] + d(x*t)", ctx) else { panic!() };
    assert!(x.central().is_zero());
}

fn error_at(src: &str, ring: usize) -> ParseError {
    let rings = rings();
    let lie = Arc::new(LieAlgebra::sl2());
    parse_element(src, Context { ring: &rings[ring], lie: Some(&lie) }).unwrap_err()
}

#[test]
fn error_positions() {
    let e = error_at("t + q", 0);
    assert_eq!((e.line, e.column), (1, 5));
    assert!(e.message.contains("`q`"));
    let e = error_at("J[e]*t + J[z]", 0);
    assert_eq!((e.line, e.column), (1, 12));
    let e = error_at("x +\n  2*x^", 1);
    assert_eq!((e.line, e.column), (2, 7));
    let e = error_at("J[e]*dt", 0);
    assert!(e.message.contains("Lie generator cannot multiply"));
    let e = error_at("u^-1", 3);
    assert!(e.message.contains("negative exponent"), "{e}");
    let e = error_at("k1", 3);
    assert!(e.message.contains("not invertible"), "{e}");
    let e = error_at("t + dt", 0);
    assert_eq!((e.line, e.column), (1, 1));
    let e = error_at("t $ 1", 0);
    assert_eq!((e.line, e.column, e.message.as_str()), (1, 3, "unexpected character `$`"));
    assert!(error_at("1/0", 0).message.contains("zero denominator"));
    assert!(error_at("", 0).message.contains("empty"));
}

#[test]
fn ring_specs() {
    let r = parse_ring("laurent:x,t").unwrap();
    assert_eq!(r.t(), Some(1));
    let r = parse_ring("laurent:x,s;t=s").unwrap();
    assert_eq!(r.t(), Some(1));
    assert_eq!(parse_ring("laurent:x").unwrap().t(), None);
    assert_eq!(parse_ring("poly:t").unwrap().t(), None);
    assert!(parse_ring("laurent:x;poly:u;t=u").unwrap_err().message.contains("Laurent"));
    assert!(parse_ring("laurent:x,x").unwrap_err().message.contains("duplicate"));
    let e = parse_ring("laurent:x;frob:y").unwrap_err();
    assert_eq!(e.column, 11);
}

#[test]
fn fields_modes_homs() {
    let ring = parse_ring("laurent:x,t").unwrap();
    let m = VacuumModule::new(Arc::new(LieAlgebra::sl2()), ring.clone()).unwrap();
    assert!(parse_field("J[e;u=x^2]", &m).is_ok());
    assert!(parse_field("J[e + 1/2*h]", &m).is_ok());
    assert!(parse_field("Kdt[u=x^-1]", &m).is_ok());
    assert!(parse_field("Kom[w=x^-1*dx]", &m).is_ok());
    assert!(parse_field("Kdt[u=t]", &m).is_err());
    assert!(parse_field("Foo[u=1]", &m).is_err());
    let ms = parse_modes("J[e](1), J[f;u=x](-1) Kdt[u=1](0)", &m).unwrap();
    assert_eq!(ms.iter().map(|(_, n)| *n).collect::<Vec<_>>(), [1, -1, 0]);

    let target = parse_ring("laurent:y,t").unwrap();
    let h = parse_hom("hom: x -> y^2; t -> t", &ring, &target).unwrap();
    assert_eq!(h.images()[0].to_string(), "y^2");
    let e = parse_hom("hom: x -> y^2", &ring, &target).unwrap_err();
    assert!(e.message.contains("no image given for `t`"));
    assert!(parse_hom("hom: x -> y + 1; t -> t", &ring, &target).is_err());

    let chi = parse_chi("chi: 1 -> 2; x -> -1/2", &ring).unwrap();
    assert_eq!(chi.values().len(), 2);
    assert!(parse_chi("chi: t -> 1", &ring).is_err());
}
