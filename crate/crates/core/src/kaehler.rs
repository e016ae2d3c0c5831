//! Kähler differentials `Ω¹_R` of a monomial algebra, the universal
//! derivation, and canonical representatives for `Ω¹_R / dR`.
//!
//! The basis is `x^a dxᵢ`. Each such monomial is homogeneous of degree
//! `a + eᵢ`, and `d` preserves this degree, so the quotient by exact forms
//! splits degree by degree. In degree `m` the only relation is
//! `d(x^m) = Σ mᵢ x^{m-eᵢ} dxᵢ`; the normal form eliminates the coordinate
//! with the largest index `i` such that `mᵢ ≠ 0`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::lc::Lc;
use crate::linalg;
use crate::ring::{fmt_monomial, fmt_sum, same_spec, Exponent, RingElement, RingSpec};
use crate::{qi, Error, Rational, Result};

/// The basis differential `x^exp dx_var`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KTerm {
    pub exp: Exponent,
    pub var: usize,
}

impl KTerm {
    pub fn new(exp: Exponent, var: usize) -> Self {
        KTerm { exp, var }
    }

    /// Homogeneous degree `exp + e_var`.
    pub fn degree(&self) -> Exponent {
        self.exp.shifted(self.var, 1)
    }
}

pub(crate) fn d_monomial(e: &Exponent) -> Lc<KTerm> {
    let mut out = Lc::new();
    for (i, &k) in e.0.iter().enumerate() {
        if k != 0 {
            out.add_term(KTerm::new(e.shifted(i, -1), i), qi(k));
        }
    }
    out
}

pub(crate) fn d_terms(r: &Lc<Exponent>) -> Lc<KTerm> {
    let mut out = Lc::new();
    for (e, c) in r {
        out.add_scaled(&d_monomial(e), c);
    }
    out
}

/// `r · ω` on raw terms.
pub(crate) fn mul_ring_terms(r: &Lc<Exponent>, w: &Lc<KTerm>) -> Lc<KTerm> {
    let mut out = Lc::new();
    for (e, c) in r {
        for (k, v) in w {
            out.add_term(KTerm::new(k.exp.add(e), k.var), c * v);
        }
    }
    out
}

/// Pivot coordinate of the degree-`m` relation, if the degree has one.
pub(crate) fn pivot(spec: &RingSpec, m: &Exponent) -> Option<usize> {
    (0..spec.nvars()).rev().find(|&i| m.get(i) != 0 && spec.is_legal(&m.shifted(i, -1)))
}

/// Canonical representative of the class of `w` modulo exact forms.
pub(crate) fn normal_form_terms(spec: &RingSpec, w: &Lc<KTerm>) -> Lc<KTerm> {
    let mut by_degree: BTreeMap<Exponent, Vec<(usize, Rational)>> = BTreeMap::new();
    for (k, c) in w {
        by_degree.entry(k.degree()).or_default().push((k.var, c.clone()));
    }
    let mut out = Lc::new();
    for (m, coeffs) in by_degree {
        let mut local = Lc::<usize>::new();
        for (i, c) in coeffs {
            local.add_term(i, c);
        }
        if let Some(p) = pivot(spec, &m) {
            let cp = local.coeff(&p);
            if !cp.is_zero() {
                let ratio = cp / qi(m.get(p));
                for i in 0..spec.nvars() {
                    if m.get(i) != 0 {
                        local.add_term(i, -(&ratio * qi(m.get(i))));
                    }
                }
            }
        }
        for (i, c) in local {
            out.add_term(KTerm::new(m.shifted(i, -1), i), c);
        }
    }
    out
}

/// An element of `Ω¹_R`.
#[derive(Clone, Debug)]
pub struct KaehlerElement {
    spec: Arc<RingSpec>,
    terms: Lc<KTerm>,
}

impl PartialEq for KaehlerElement {
    fn eq(&self, other: &Self) -> bool {
        same_spec(&self.spec, &other.spec) && self.terms == other.terms
    }
}

impl Eq for KaehlerElement {}

impl KaehlerElement {
    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        KaehlerElement { spec: spec.clone(), terms: Lc::new() }
    }

    pub fn from_terms(spec: &Arc<RingSpec>, terms: Lc<KTerm>) -> Result<Self> {
        for k in terms.keys() {
            spec.check_legal(&k.exp)?;
            if k.var >= spec.nvars() {
                return Err(Error::InvalidRing(alloc::format!("differential index {} out of range", k.var)));
            }
        }
        Ok(KaehlerElement { spec: spec.clone(), terms })
    }

    pub(crate) fn from_terms_unchecked(spec: &Arc<RingSpec>, terms: Lc<KTerm>) -> Self {
        KaehlerElement { spec: spec.clone(), terms }
    }

    /// `x^exp dx_var`.
    pub fn basis(spec: &Arc<RingSpec>, exp: Exponent, var: usize, c: Rational) -> Result<Self> {
        Self::from_terms(spec, Lc::single(KTerm::new(exp, var), c))
    }

    /// The logarithmic differential `kᵢ = xᵢ⁻¹ dxᵢ`; needs `xᵢ` invertible.
    pub fn log_differential(spec: &Arc<RingSpec>, i: usize) -> Result<Self> {
        if !spec.vars().get(i).map(|v| v.invertible).unwrap_or(false) {
            return Err(Error::IllegalMonomial(alloc::format!("k{i} needs an invertible variable")));
        }
        Self::basis(spec, Exponent::unit(spec.nvars(), i).neg(), i, qi(1))
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn terms(&self) -> &Lc<KTerm> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &KaehlerElement) -> Result<KaehlerElement> {
        if !same_spec(&self.spec, &other.spec) {
            return Err(Error::SpecMismatch);
        }
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        Ok(KaehlerElement { spec: self.spec.clone(), terms })
    }

    pub fn sub(&self, other: &KaehlerElement) -> Result<KaehlerElement> {
        self.add(&other.scale(&qi(-1)))
    }

    pub fn scale(&self, c: &Rational) -> KaehlerElement {
        KaehlerElement { spec: self.spec.clone(), terms: self.terms.scaled(c) }
    }

    /// Module action `r · ω`.
    pub fn mul_ring(&self, r: &RingElement) -> Result<KaehlerElement> {
        if !same_spec(&self.spec, r.spec()) {
            return Err(Error::SpecMismatch);
        }
        Ok(KaehlerElement { spec: self.spec.clone(), terms: mul_ring_terms(r.terms(), &self.terms) })
    }

    pub fn normal_form(&self) -> CentralClass {
        CentralClass(KaehlerElement { spec: self.spec.clone(), terms: normal_form_terms(&self.spec, &self.terms) })
    }

    /// Split `normal_form(self)` into the classes carried by `A[t]` (t-degree
    /// ≥ 0) and by `A ⊗ t⁻¹Q[t⁻¹]` (t-degree < 0). The t-degree of `u tᵏ dt`
    /// and of `tᵏ du` is `k`.
    pub fn split_nf(&self) -> Result<(CentralClass, CentralClass)> {
        let t = self.spec.t().ok_or(Error::MissingLoopVariable)?;
        let nf = normal_form_terms(&self.spec, &self.terms);
        let plus = nf.filtered(|k| k.exp.get(t) >= 0);
        let minus = nf.filtered(|k| k.exp.get(t) < 0);
        Ok((
            CentralClass(KaehlerElement::from_terms_unchecked(&self.spec, plus)),
            CentralClass(KaehlerElement::from_terms_unchecked(&self.spec, minus)),
        ))
    }
}

pub(crate) fn fmt_kterm(spec: &RingSpec, k: &KTerm) -> String {
    let mut body = String::new();
    if fmt_monomial(spec, &k.exp, &mut body) {
        body.push('*');
    }
    body.push('d');
    body.push_str(&spec.vars()[k.var].name);
    body
}

pub(crate) fn fmt_kterms(spec: &RingSpec, terms: &Lc<KTerm>) -> String {
    fmt_sum(terms.iter().rev().map(|(k, c)| (c, fmt_kterm(spec, k))))
}

impl fmt::Display for KaehlerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_kterms(&self.spec, &self.terms))
    }
}

/// The universal derivation `d: R → Ω¹_R`.
pub fn universal_d(r: &RingElement) -> KaehlerElement {
    KaehlerElement { spec: r.spec().clone(), terms: d_terms(r.terms()) }
}

/// A class in `Ω¹_R / dR`, stored by its normal-form representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralClass(KaehlerElement);

impl CentralClass {
    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        CentralClass(KaehlerElement::zero(spec))
    }

    pub fn representative(&self) -> &KaehlerElement {
        &self.0
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        self.0.spec()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &CentralClass) -> Result<CentralClass> {
        self.0.add(&other.0).map(CentralClass)
    }

    pub fn scale(&self, c: &Rational) -> CentralClass {
        CentralClass(self.0.scale(c))
    }
}

impl fmt::Display for CentralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn normal_form(w: &KaehlerElement) -> CentralClass {
    w.normal_form()
}

/// Dimension of each degree-`m` piece of `Ω¹_R / dR` for `m` in the box
/// `lo ≤ m ≤ hi` (coordinate-wise), computed from normal forms of the
/// degree-`m` basis differentials.
pub fn graded_dimension(spec: &Arc<RingSpec>, lo: &Exponent, hi: &Exponent) -> Vec<(Exponent, usize)> {
    let mut out = Vec::new();
    for m in box_points(lo, hi) {
        let images = (0..spec.nvars())
            .map(|i| KTerm::new(m.shifted(i, -1), i))
            .filter(|k| spec.is_legal(&k.exp))
            .map(|k| normal_form_terms(spec, &Lc::basis(k)));
        let r = linalg::rank(images);
        out.push((m, r));
    }
    out
}

/// All lattice points of `lo ≤ m ≤ hi`, lexicographic.
pub fn box_points(lo: &Exponent, hi: &Exponent) -> Vec<Exponent> {
    let n = lo.0.len();
    let mut out = Vec::new();
    if lo.0.iter().zip(&hi.0).any(|(a, b)| a > b) {
        return out;
    }
    let mut cur = lo.clone();
    loop {
        out.push(cur.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur.0[i] < hi.0[i] {
                cur.0[i] += 1;
                break;
            }
            cur.0[i] = lo.0[i];
        }
    }
}
