//! Monomial coefficient algebras: mixed Laurent / polynomial rings over the
//! rationals, their sparse elements, and homomorphisms between them.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Zero};

use crate::lc::Lc;
use crate::{Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    /// Laurent variable if `true`, polynomial variable otherwise.
    pub invertible: bool,
}

impl Variable {
    pub fn laurent(name: &str) -> Self {
        Variable { name: name.into(), invertible: true }
    }

    pub fn poly(name: &str) -> Self {
        Variable { name: name.into(), invertible: false }
    }
}

/// A commutative algebra `Q[x₁^(±1), …]` generated by monomials, optionally
/// with a distinguished invertible loop variable `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    vars: Vec<Variable>,
    t: Option<usize>,
}

impl RingSpec {
    pub fn new(vars: Vec<Variable>, t: Option<usize>) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if v.name.is_empty() {
                return Err(Error::InvalidRing("empty variable name".into()));
            }
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::InvalidRing(format!("duplicate variable `{}`", v.name)));
            }
        }
        if let Some(t) = t {
            match vars.get(t) {
                None => return Err(Error::InvalidRing(format!("loop variable index {t} out of range"))),
                Some(v) if !v.invertible => {
                    return Err(Error::InvalidRing(format!("loop variable `{}` must be invertible", v.name)))
                }
                Some(_) => {}
            }
        }
        Ok(Arc::new(RingSpec { vars, t }))
    }

    /// `Q[x₁^±, …, xₙ^±]`.
    pub fn laurent(names: &[&str]) -> Arc<Self> {
        Self::new(names.iter().map(|n| Variable::laurent(n)).collect(), None).expect("valid names")
    }

    /// `Q[x₁^±, …][t^±]` with `t` appended last and marked as the loop variable.
    pub fn loop_ring(fiber: &[Variable], t_name: &str) -> Result<Arc<Self>> {
        let mut vars = fiber.to_vec();
        vars.push(Variable::laurent(t_name));
        let t = vars.len() - 1;
        Self::new(vars, Some(t))
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn t(&self) -> Option<usize> {
        self.t
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn is_legal(&self, e: &Exponent) -> bool {
        e.0.len() == self.vars.len() && self.vars.iter().zip(&e.0).all(|(v, &k)| v.invertible || k >= 0)
    }

    pub fn check_legal(&self, e: &Exponent) -> Result<()> {
        if e.0.len() != self.vars.len() {
            return Err(Error::IllegalMonomial(format!("exponent {e:?} has wrong length")));
        }
        for (v, &k) in self.vars.iter().zip(&e.0) {
            if !v.invertible && k < 0 {
                return Err(Error::IllegalMonomial(format!("negative power of polynomial variable `{}`", v.name)));
            }
        }
        Ok(())
    }

    /// Whether `x^e` is a unit, i.e. only invertible variables occur.
    pub fn is_unit_monomial(&self, e: &Exponent) -> bool {
        self.vars.iter().zip(&e.0).all(|(v, &k)| v.invertible || k == 0)
    }

    pub fn zero_exp(&self) -> Exponent {
        Exponent::zero(self.vars.len())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let laurent: Vec<&str> = self.vars.iter().filter(|v| v.invertible).map(|v| v.name.as_str()).collect();
        let poly: Vec<&str> = self.vars.iter().filter(|v| !v.invertible).map(|v| v.name.as_str()).collect();
        let mut parts = Vec::new();
        if !laurent.is_empty() {
            parts.push(format!("laurent:{}", laurent.join(",")));
        }
        if !poly.is_empty() {
            parts.push(format!("poly:{}", poly.join(",")));
        }
        if let Some(t) = self.t {
            parts.push(format!("t={}", self.vars[t].name));
        }
        write!(f, "{}", parts.join(";"))
    }
}

/// Exponent vector of a monomial, one entry per ring variable.
///
/// Ordered graded-lexicographically: total degree first, then entries in
/// declared variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.0[i] = 1;
        e
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }

    pub fn shifted(&self, i: usize, by: i64) -> Exponent {
        let mut e = self.clone();
        e.0[i] += by;
        e
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn same_spec(a: &Arc<RingSpec>, b: &Arc<RingSpec>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Multiply two raw term maps (no legality checks; exponents just add).
pub(crate) fn mul_terms(a: &Lc<Exponent>, b: &Lc<Exponent>) -> Lc<Exponent> {
    let mut out = Lc::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            out.add_term(ea.add(eb), ca * cb);
        }
    }
    out
}

/// Write `c · x^e` the way the element grammar reads it back.
pub(crate) fn fmt_monomial(spec: &RingSpec, e: &Exponent, out: &mut String) -> bool {
    let mut first = true;
    for (v, &k) in spec.vars.iter().zip(&e.0) {
        if k == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&v.name);
        if k != 1 {
            out.push_str(&format!("^{k}"));
        }
    }
    !first
}

/// Join `(coefficient, body)` pairs into `a + b - c` form. An empty body means
/// a bare scalar.
pub(crate) fn fmt_sum<'a>(terms: impl Iterator<Item = (&'a Rational, String)>) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        let piece = if body.is_empty() {
            format!("{mag}")
        } else if mag.is_one() {
            body
        } else {
            format!("{mag}*{body}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&piece);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A finite sum of monomials with nonzero rational coefficients.
#[derive(Clone, Debug)]
pub struct RingElement {
    spec: Arc<RingSpec>,
    terms: Lc<Exponent>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        same_spec(&self.spec, &other.spec) && self.terms == other.terms
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        RingElement { spec: spec.clone(), terms: Lc::new() }
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::constant(spec, Rational::one())
    }

    pub fn constant(spec: &Arc<RingSpec>, c: Rational) -> Self {
        RingElement { spec: spec.clone(), terms: Lc::single(spec.zero_exp(), c) }
    }

    pub fn monomial(spec: &Arc<RingSpec>, e: Exponent, c: Rational) -> Result<Self> {
        spec.check_legal(&e)?;
        Ok(RingElement { spec: spec.clone(), terms: Lc::single(e, c) })
    }

    /// The `i`-th variable.
    pub fn var(spec: &Arc<RingSpec>, i: usize) -> Self {
        RingElement { spec: spec.clone(), terms: Lc::basis(Exponent::unit(spec.nvars(), i)) }
    }

    pub fn from_terms(spec: &Arc<RingSpec>, terms: Lc<Exponent>) -> Result<Self> {
        for e in terms.keys() {
            spec.check_legal(e)?;
        }
        Ok(RingElement { spec: spec.clone(), terms })
    }

    pub(crate) fn from_terms_unchecked(spec: &Arc<RingSpec>, terms: Lc<Exponent>) -> Self {
        RingElement { spec: spec.clone(), terms }
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn terms(&self) -> &Lc<Exponent> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if same_spec(&self.spec, &other.spec) {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(RingElement { spec: self.spec.clone(), terms })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(RingElement { spec: self.spec.clone(), terms: self.terms.sub(&other.terms) })
    }

    pub fn scale(&self, c: &Rational) -> RingElement {
        RingElement { spec: self.spec.clone(), terms: self.terms.scaled(c) }
    }

    /// Sparse product.
    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(RingElement { spec: self.spec.clone(), terms: mul_terms(&self.terms, &other.terms) })
    }

    pub fn pow(&self, k: u32) -> RingElement {
        let mut acc = RingElement::one(&self.spec);
        for _ in 0..k {
            acc = acc.mul(self).expect("same spec");
        }
        acc
    }

    /// `Some((c, e))` if the element is `c · x^e` with `x^e` a unit.
    pub fn as_unit(&self) -> Option<(Rational, Exponent)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        self.spec.is_unit_monomial(e).then(|| (c.clone(), e.clone()))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = fmt_sum(self.terms.iter().rev().map(|(e, c)| {
            let mut body = String::new();
            fmt_monomial(&self.spec, e, &mut body);
            (c, body)
        }));
        f.write_str(&s)
    }
}

/// Diagnostics from [`RingHom::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomReport {
    pub violations: Vec<String>,
}

impl HomReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// An algebra homomorphism given by the images of the source variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    source: Arc<RingSpec>,
    target: Arc<RingSpec>,
    images: Vec<RingElement>,
}

impl RingHom {
    /// Build and validate. Homs that send an invertible variable to a non-unit
    /// (or move `t` off `unit · t`) are rejected.
    pub fn new(source: &Arc<RingSpec>, target: &Arc<RingSpec>, images: Vec<RingElement>) -> Result<Self> {
        let h = Self::unchecked(source, target, images)?;
        let report = h.validate();
        if report.is_valid() {
            Ok(h)
        } else {
            Err(Error::InvalidHom(report.violations.join("; ")))
        }
    }

    /// Build without the unit-image check (shape is still checked). Use
    /// [`RingHom::validate`] to inspect the result.
    pub fn unchecked(source: &Arc<RingSpec>, target: &Arc<RingSpec>, images: Vec<RingElement>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::InvalidHom(format!(
                "{} images given for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        if images.iter().any(|im| !same_spec(im.spec(), target)) {
            return Err(Error::SpecMismatch);
        }
        Ok(RingHom { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(spec: &Arc<RingSpec>) -> Self {
        let images = (0..spec.nvars()).map(|i| RingElement::var(spec, i)).collect();
        RingHom { source: spec.clone(), target: spec.clone(), images }
    }

    pub fn source(&self) -> &Arc<RingSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingSpec> {
        &self.target
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    pub fn validate(&self) -> HomReport {
        let mut report = HomReport::default();
        for (v, im) in self.source.vars().iter().zip(&self.images) {
            if v.invertible && im.as_unit().is_none() {
                report.violations.push(format!("image of invertible `{}` is `{im}`, not a unit", v.name));
            }
        }
        if let (Some(ts), Some(tt)) = (self.source.t(), self.target.t()) {
            let ok = self.images[ts].as_unit().map(|(_, e)| e.get(tt) == 1).unwrap_or(false);
            if !ok {
                report.violations.push(format!(
                    "loop variable `{}` must map to a unit times `{}`, got `{}`",
                    self.source.vars()[ts].name,
                    self.target.vars()[tt].name,
                    self.images[ts]
                ));
            }
        }
        report
    }

    /// Image of the monomial `x^e`.
    pub(crate) fn apply_monomial(&self, e: &Exponent) -> Lc<Exponent> {
        let mut acc = Lc::basis(self.target.zero_exp());
        for (i, &k) in e.0.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let im = &self.images[i];
            if let Some((c, u)) = im.as_unit() {
                let c = num_traits::pow::Pow::pow(&c, k as i32);
                acc = acc.map_keys(|m| m.add(&u.scale(k)));
                acc = acc.scaled(&c);
            } else {
                debug_assert!(k > 0, "negative power of a non-unit image");
                for _ in 0..k {
                    acc = mul_terms(&acc, im.terms());
                }
            }
        }
        acc
    }

    pub(crate) fn apply_terms(&self, terms: &Lc<Exponent>) -> Lc<Exponent> {
        let mut out = Lc::new();
        for (e, c) in terms {
            out.add_scaled(&self.apply_monomial(e), c);
        }
        out
    }

    pub fn apply(&self, a: &RingElement) -> Result<RingElement> {
        if !same_spec(a.spec(), &self.source) {
            return Err(Error::SpecMismatch);
        }
        Ok(RingElement::from_terms_unchecked(&self.target, self.apply_terms(a.terms())))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if !same_spec(&self.target, &other.source) {
            return Err(Error::SpecMismatch);
        }
        let images = self.images.iter().map(|im| other.apply(im)).collect::<Result<Vec<_>>>()?;
        Ok(RingHom { source: self.source.clone(), target: other.target.clone(), images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qi};
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn el(spec: &Arc<RingSpec>, terms: &[(&[i64], Rational)]) -> RingElement {
        let lc = terms.iter().map(|(e, c)| (Exponent(e.to_vec()), c.clone())).collect();
        RingElement::from_terms(spec, lc).unwrap()
    }

    #[test]
    fn inverse_monomials_multiply_to_one() {
        let r = RingSpec::laurent(&["t"]);
        let a = el(&r, &[(&[1], qi(1))]);
        let b = el(&r, &[(&[-1], qi(1))]);
        assert_eq!(a.mul(&b).unwrap(), RingElement::one(&r));
    }

    #[test]
    fn distributivity_example() {
        let r = RingSpec::laurent(&["x"]);
        let a = el(&r, &[(&[1], qi(1)), (&[-1], qi(1))]);
        let x = RingElement::var(&r, 0);
        let p = a.mul(&x).unwrap();
        assert_eq!(p, el(&r, &[(&[2], qi(1)), (&[0], qi(1))]));
        assert_eq!(p.to_string(), "x^2 + 1");
    }

    #[test]
    fn two_variable_product() {
        let r = RingSpec::laurent(&["t0", "t1"]);
        let a = el(&r, &[(&[1, 1], qi(2))]);
        let b = el(&r, &[(&[-1, 0], qi(3))]);
        assert_eq!(a.mul(&b).unwrap(), el(&r, &[(&[0, 1], qi(6))]));
    }

    #[test]
    fn mismatched_specs_are_rejected() {
        let a = RingElement::one(&RingSpec::laurent(&["x"]));
        let b = RingElement::one(&RingSpec::laurent(&["y"]));
        assert_eq!(a.mul(&b), Err(Error::SpecMismatch));
    }

    #[test]
    fn ring_spec_invariants() {
        assert!(RingSpec::new(vec![Variable::laurent("x"), Variable::laurent("x")], None).is_err());
        assert!(RingSpec::new(vec![Variable::poly("t")], Some(0)).is_err());
        assert!(RingSpec::new(vec![Variable::laurent("t")], Some(0)).is_ok());
    }

    #[test]
    fn polynomial_variables_reject_negative_powers() {
        let r = RingSpec::new(vec![Variable::poly("u")], None).unwrap();
        assert!(RingElement::monomial(&r, Exponent(vec![-1]), qi(1)).is_err());
    }

    #[test]
    fn hom_examples() {
        let x = RingSpec::laurent(&["x"]);
        let y = RingSpec::laurent(&["y"]);
        let h = RingHom::new(&x, &y, vec![el(&y, &[(&[2], qi(1))])]).unwrap();
        assert_eq!(h.apply(&el(&x, &[(&[-1], qi(1))])).unwrap(), el(&y, &[(&[-2], qi(1))]));

        let id = RingHom::identity(&x);
        let a = el(&x, &[(&[3], q(1, 2)), (&[-2], qi(7))]);
        assert_eq!(id.apply(&a).unwrap(), a);

        let h2 = RingHom::new(&x, &y, vec![el(&y, &[(&[1], qi(2))])]).unwrap();
        let a = el(&x, &[(&[2], qi(1)), (&[1], qi(1))]);
        assert_eq!(h2.apply(&a).unwrap(), el(&y, &[(&[2], qi(4)), (&[1], qi(2))]));
    }

    #[test]
    fn validate_hom_examples() {
        let x = RingSpec::laurent(&["x"]);
        let y = RingSpec::laurent(&["y"]);
        let good = RingHom::unchecked(&x, &y, vec![el(&y, &[(&[2], qi(1))])]).unwrap();
        assert!(good.validate().is_valid());

        let bad = RingHom::unchecked(&x, &y, vec![el(&y, &[(&[1], qi(1)), (&[0], qi(1))])]).unwrap();
        let report = bad.validate();
        assert_eq!(report.violations.len(), 1);
        assert!(report.violations[0].contains("not a unit"));
        assert!(RingHom::new(&x, &y, bad.images().to_vec()).is_err());

        let src = RingSpec::loop_ring(&[Variable::laurent("x")], "t").unwrap();
        let dst = RingSpec::loop_ring(&[Variable::laurent("y")], "t").unwrap();
        let ok =
            RingHom::unchecked(&src, &dst, vec![el(&dst, &[(&[1, 0], qi(1))]), el(&dst, &[(&[1, 1], qi(1))])]).unwrap();
        assert!(ok.validate().is_valid());
        let off =
            RingHom::unchecked(&src, &dst, vec![el(&dst, &[(&[1, 0], qi(1))]), el(&dst, &[(&[0, 2], qi(1))])]).unwrap();
        assert!(!off.validate().is_valid());
    }

    fn arb_elem() -> impl Strategy<Value = Vec<(i64, i64, i64)>> {
        prop::collection::vec((-3i64..=3, -3i64..=3, -5i64..=5), 0..5)
    }

    fn build(spec: &Arc<RingSpec>, raw: &[(i64, i64, i64)]) -> RingElement {
        let lc = raw.iter().map(|&(a, b, c)| (Exponent(vec![a, b]), qi(c))).collect();
        RingElement::from_terms(spec, lc).unwrap()
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_elem(), b in arb_elem(), c in arb_elem()) {
            let r = RingSpec::laurent(&["x", "y"]);
            let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(a.mul(&b.mul(&c).unwrap()).unwrap(), a.mul(&b).unwrap().mul(&c).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        }

        #[test]
        fn hom_is_multiplicative(a in arb_elem(), b in arb_elem(), k in 1i64..3) {
            let r = RingSpec::laurent(&["x", "y"]);
            let s = RingSpec::laurent(&["u", "v"]);
            // x -> 2 u^k v^-1, y -> -v
            let h = RingHom::new(&r, &s, vec![
                RingElement::monomial(&s, Exponent(vec![k, -1]), qi(2)).unwrap(),
                RingElement::monomial(&s, Exponent(vec![0, 1]), qi(-1)).unwrap(),
            ]).unwrap();
            let (a, b) = (build(&r, &a), build(&r, &b));
            prop_assert_eq!(h.apply(&a.mul(&b).unwrap()).unwrap(), h.apply(&a).unwrap().mul(&h.apply(&b).unwrap()).unwrap());
            prop_assert_eq!(h.apply(&RingElement::one(&r)).unwrap(), RingElement::one(&s));
        }
    }
}
