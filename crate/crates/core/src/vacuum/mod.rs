//! The vacuum module `V(ĝ_R) = Ind_{ĝ⁺_R} Q` for `R = A[t, t⁻¹]`.
//!
//! `ĝ_R` splits as `ĝ⁺_R ⊕ ĝ⁻_R` with `ĝ⁺_R = g ⊗ A[t] ⊕ (classes of
//! t-degree ≥ 0)`, so states are spanned by ordered products of negative
//! generators applied to `|0⟩`. Positive generators are commuted to the right
//! where they kill the vacuum.
//!
//! Weights: `J ⊗ u tⁿ` has weight `−n`; a class `u tᵏ dt` or `tᵏ ω` has
//! weight `−k`, so `k̄ = t⁻¹dt` has weight 0. Every mode `f_n` of the three
//! field families shifts weight by `−n`.

mod basis;
mod checks;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub use basis::{character, Window};
pub use checks::Prediction;

use crate::kaehler::{d_terms, fmt_kterm, mul_ring_terms, normal_form_terms, KTerm, KaehlerElement};
use crate::lc::Lc;
use crate::lie::{LieAlgebra, LieElement};
use crate::ring::{fmt_monomial, fmt_sum, same_spec, Exponent, RingElement, RingSpec};
use crate::toroidal::{LoopKey, ToroidalAlgebra, ToroidalElement};
use crate::{qi, Error, Result};

/// A negative generator of `ĝ_R`, i.e. a basis element of `ĝ⁻_R`.
///
/// The derived order is the PBW order: central before loop, then weight,
/// then exponent (graded-lex), then the Lie index or differential variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NegGenerator {
    /// A minus-side normal-form monomial `x^exp dx_var`.
    Central { weight: i64, term: KTerm },
    /// `J_lie ⊗ x^exp`, with t-exponent ≤ −1.
    Loop { weight: i64, exp: Exponent, lie: usize },
}

impl NegGenerator {
    pub fn weight(&self) -> i64 {
        match self {
            NegGenerator::Central { weight, .. } | NegGenerator::Loop { weight, .. } => *weight,
        }
    }

    pub fn is_central(&self) -> bool {
        matches!(self, NegGenerator::Central { .. })
    }
}

/// An ordered (non-decreasing) PBW monomial; the empty monomial is `|0⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial(Vec<NegGenerator>);

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial(Vec::new())
    }

    /// `None` unless `gens` is already in PBW order.
    pub fn from_sorted(gens: Vec<NegGenerator>) -> Option<Self> {
        gens.windows(2).all(|w| w[0] <= w[1]).then_some(PbwMonomial(gens))
    }

    pub fn generators(&self) -> &[NegGenerator] {
        &self.0
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(NegGenerator::weight).sum()
    }

    fn inserted(&self, g: &NegGenerator) -> PbwMonomial {
        let pos = self.0.partition_point(|x| x <= g);
        let mut v = self.0.clone();
        v.insert(pos, g.clone());
        PbwMonomial(v)
    }

    fn prepended(&self, g: NegGenerator) -> PbwMonomial {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(g);
        v.extend_from_slice(&self.0);
        PbwMonomial(v)
    }
}

/// A vector of `V(ĝ_R)` in the PBW basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VacuumState {
    terms: Lc<PbwMonomial>,
}

impl VacuumState {
    pub fn zero() -> Self {
        VacuumState::default()
    }

    pub fn vacuum() -> Self {
        VacuumState { terms: Lc::basis(PbwMonomial::vacuum()) }
    }

    pub fn from_terms(terms: Lc<PbwMonomial>) -> Self {
        VacuumState { terms }
    }

    pub fn terms(&self) -> &Lc<PbwMonomial> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &VacuumState) -> VacuumState {
        let mut terms = self.terms.clone();
        terms.add_assign(&other.terms);
        VacuumState { terms }
    }

    pub fn sub(&self, other: &VacuumState) -> VacuumState {
        VacuumState { terms: self.terms.sub(&other.terms) }
    }

    pub fn scale(&self, c: &crate::Rational) -> VacuumState {
        VacuumState { terms: self.terms.scaled(c) }
    }
}

/// Data of a generating field. All data lives over the fiber `A`: no `t`
/// and no `dt` may occur.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    /// `J_u(z) = Σ (J ⊗ u tⁿ) z^{−n−1}`.
    J { lie: LieElement, u: RingElement },
    /// `K_{u dt/t}(z) = Σ (u t^{n−1} dt) z^{−n}`.
    Kdt { u: RingElement },
    /// `K_{t⁻¹ω}(z) = Σ (tⁿ ω) z^{−n−1}`.
    Kom { omega: KaehlerElement },
}

/// `V(ĝ_R)` together with its distinguished loop variable.
#[derive(Clone, Debug)]
pub struct VacuumModule {
    alg: ToroidalAlgebra,
    t: usize,
}

/// Memoised straightening. Results only depend on the module, so a cache may
/// be reused for any number of actions on the same module.
pub(crate) struct Straightener<'a> {
    m: &'a VacuumModule,
    cache: BTreeMap<(LoopKey, PbwMonomial), Lc<PbwMonomial>>,
}

impl VacuumModule {
    pub fn new(lie: Arc<LieAlgebra>, ring: Arc<RingSpec>) -> Result<Self> {
        let t = ring.t().ok_or(Error::MissingLoopVariable)?;
        Ok(VacuumModule { alg: ToroidalAlgebra::new(lie, ring), t })
    }

    /// The affine case `A = Q`, `R = Q[t, t⁻¹]`.
    pub fn affine(lie: Arc<LieAlgebra>) -> Self {
        VacuumModule::new(lie, RingSpec::loop_ring(&[], "t").expect("valid ring")).expect("t is distinguished")
    }

    pub fn algebra(&self) -> &ToroidalAlgebra {
        &self.alg
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.alg.ring()
    }

    pub fn lie(&self) -> &Arc<LieAlgebra> {
        self.alg.lie()
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub(crate) fn straightener(&self) -> Straightener<'_> {
        Straightener { m: self, cache: BTreeMap::new() }
    }

    /// `Some` iff `Jⁱ ⊗ x^e` lies in `ĝ⁻_R`.
    pub fn loop_generator(&self, key: &LoopKey) -> Option<NegGenerator> {
        let n = key.1.get(self.t);
        (n <= -1).then(|| NegGenerator::Loop { weight: -n, exp: key.1.clone(), lie: key.0 })
    }

    /// `Some` iff the normal-form monomial `k` lies on the minus side.
    pub fn central_generator(&self, k: &KTerm) -> Option<NegGenerator> {
        let n = k.exp.get(self.t);
        let weight = -(n + i64::from(k.var == self.t));
        (n < 0).then(|| NegGenerator::Central { weight, term: k.clone() })
    }

    /// `A`-degree of a generator: its total degree with the t-coordinate
    /// removed.
    pub fn fiber_degree(&self, g: &NegGenerator) -> Exponent {
        let mut d = match g {
            NegGenerator::Central { term, .. } => term.degree(),
            NegGenerator::Loop { exp, .. } => exp.clone(),
        };
        d.0[self.t] = 0;
        d
    }

    pub fn act_mode(&self, x: &ToroidalElement, v: &VacuumState) -> Result<VacuumState> {
        if !same_spec(x.ring(), self.ring()) {
            return Err(Error::SpecMismatch);
        }
        if !(Arc::ptr_eq(x.lie(), self.lie()) || x.lie() == self.lie()) {
            return Err(Error::AlgebraMismatch);
        }
        let mut s = self.straightener();
        Ok(VacuumState { terms: s.element_on_state(x.loops(), x.central_terms(), &v.terms) })
    }

    /// The product `x₁ x₂ ⋯ x_k |0⟩`.
    pub fn product(&self, xs: &[ToroidalElement]) -> Result<VacuumState> {
        let mut v = VacuumState::vacuum();
        for x in xs.iter().rev() {
            v = self.act_mode(x, &v)?;
        }
        Ok(v)
    }

    /// The translation operator, acting as the derivation `L_{−∂t}`.
    pub fn apply_t(&self, v: &VacuumState) -> VacuumState {
        let mut s = self.straightener();
        VacuumState { terms: s.t_on_state(&v.terms) }
    }

    /// `[T, Jⁱ ⊗ x^e] = −e_t Jⁱ ⊗ x^{e − e_t}`.
    pub(crate) fn t_bracket_loop(&self, key: &LoopKey) -> Lc<LoopKey> {
        let n = key.1.get(self.t);
        if n == 0 {
            return Lc::new();
        }
        Lc::single((key.0, key.1.shifted(self.t, -1)), qi(-n))
    }

    /// `L_{−∂t}` on a differential, as a normal form.
    pub(crate) fn t_bracket_central(&self, terms: &Lc<KTerm>) -> Lc<KTerm> {
        let mut out = Lc::new();
        for (k, c) in terms {
            let n = k.exp.get(self.t);
            if n != 0 {
                out.add_term(KTerm::new(k.exp.shifted(self.t, -1), k.var), c * qi(-n));
            }
        }
        normal_form_terms(self.ring(), &out)
    }

    fn shift_t(&self, e: &Exponent, n: i64) -> Exponent {
        e.shifted(self.t, n)
    }

    /// Coefficient of the mode `f_n` as raw loop and central parts.
    pub(crate) fn mode_parts(&self, f: &FieldSpec, n: i64) -> (Lc<LoopKey>, Lc<KTerm>) {
        match f {
            FieldSpec::J { lie, u } => {
                let mut loops = Lc::new();
                for (i, c) in lie.support() {
                    for (e, v) in u.terms() {
                        loops.add_term((i, self.shift_t(e, n)), c * v);
                    }
                }
                (loops, Lc::new())
            }
            FieldSpec::Kdt { u } => {
                let central =
                    u.terms().iter().map(|(e, c)| (KTerm::new(self.shift_t(e, n - 1), self.t), c.clone())).collect();
                (Lc::new(), normal_form_terms(self.ring(), &central))
            }
            FieldSpec::Kom { omega } => {
                let central = omega
                    .terms()
                    .iter()
                    .map(|(k, c)| (KTerm::new(self.shift_t(&k.exp, n), k.var), c.clone()))
                    .collect();
                (Lc::new(), normal_form_terms(self.ring(), &central))
            }
        }
    }

    /// The coefficient element of `f` in front of its `n`-th mode.
    pub fn field_mode(&self, f: &FieldSpec, n: i64) -> ToroidalElement {
        let (loops, central) = self.mode_parts(f, n);
        ToroidalElement::from_raw(&self.alg, loops, central)
    }

    fn fiber_only(&self, e: &Exponent) -> bool {
        e.get(self.t) == 0
    }

    pub fn field_j(&self, lie: LieElement, u: RingElement) -> Result<FieldSpec> {
        if !same_spec(u.spec(), self.ring()) {
            return Err(Error::SpecMismatch);
        }
        if lie.coeffs.len() != self.lie().dim() {
            return Err(Error::AlgebraMismatch);
        }
        if !u.terms().keys().all(|e| self.fiber_only(e)) {
            return Err(Error::Unsupported("field data must not involve t".into()));
        }
        Ok(FieldSpec::J { lie, u })
    }

    pub fn field_kdt(&self, u: RingElement) -> Result<FieldSpec> {
        if !same_spec(u.spec(), self.ring()) {
            return Err(Error::SpecMismatch);
        }
        if !u.terms().keys().all(|e| self.fiber_only(e)) {
            return Err(Error::Unsupported("field data must not involve t".into()));
        }
        Ok(FieldSpec::Kdt { u })
    }

    pub fn field_kom(&self, omega: KaehlerElement) -> Result<FieldSpec> {
        if !same_spec(omega.spec(), self.ring()) {
            return Err(Error::SpecMismatch);
        }
        if !omega.terms().keys().all(|k| self.fiber_only(&k.exp) && k.var != self.t) {
            return Err(Error::Unsupported("field data must not involve t or dt".into()));
        }
        Ok(FieldSpec::Kom { omega })
    }

    /// `u dv` over the fiber.
    pub(crate) fn u_dv(&self, u: &RingElement, v: &RingElement) -> Lc<KTerm> {
        mul_ring_terms(u.terms(), &d_terms(v.terms()))
    }

    pub fn format_generator(&self, g: &NegGenerator) -> String {
        match g {
            NegGenerator::Loop { exp, lie, .. } => {
                let mut s = format!("J[{}]", self.lie().names()[*lie]);
                let mut mono = String::new();
                if fmt_monomial(self.ring(), exp, &mut mono) {
                    s.push('*');
                    s.push_str(&mono);
                }
                s
            }
            NegGenerator::Central { term, .. } => fmt_kterm(self.ring(), term),
        }
    }

    pub fn format_monomial(&self, m: &PbwMonomial) -> String {
        let mut s = String::new();
        for g in &m.0 {
            s.push('(');
            s.push_str(&self.format_generator(g));
            s.push(')');
        }
        s.push_str("|0>");
        s
    }

    pub fn format_state(&self, v: &VacuumState) -> String {
        fmt_sum(v.terms.iter().map(|(m, c)| (c, self.format_monomial(m))))
    }
}

impl Straightener<'_> {
    fn loop_key(g: &NegGenerator) -> LoopKey {
        match g {
            NegGenerator::Loop { exp, lie, .. } => (*lie, exp.clone()),
            NegGenerator::Central { .. } => unreachable!("central generator has no loop key"),
        }
    }

    /// `x · mono|0⟩` for a loop generator `x`.
    pub(crate) fn loop_on_mono(&mut self, x: &LoopKey, mono: &PbwMonomial) -> Lc<PbwMonomial> {
        let neg = self.m.loop_generator(x);
        match (&neg, mono.0.first()) {
            (None, None) => return Lc::new(),
            (Some(g), None) => return Lc::basis(PbwMonomial(vec![g.clone()])),
            (Some(g), Some(first)) if g <= first => return Lc::basis(mono.prepended(g.clone())),
            _ => {}
        }
        let key = (x.clone(), mono.clone());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let first = &mono.0[0];
        let rest = PbwMonomial(mono.0[1..].to_vec());
        let inner = self.loop_on_mono(x, &rest);
        let out = if first.is_central() {
            inner.map_keys(|m| m.inserted(first))
        } else {
            let g1 = Self::loop_key(first);
            let mut out = self.loop_on_state(&g1, &inner);
            let (loops, central) = self.m.alg.bracket_generators(x, &g1);
            out.add_assign(&self.element_on_state(&loops, &central, &Lc::basis(rest)));
            out
        };
        self.cache.insert(key, out.clone());
        out
    }

    pub(crate) fn loop_on_state(&mut self, x: &LoopKey, v: &Lc<PbwMonomial>) -> Lc<PbwMonomial> {
        let mut out = Lc::new();
        for (m, c) in v {
            out.add_scaled(&self.loop_on_mono(x, m), c);
        }
        out
    }

    /// A normal-form central element acting on `v`: minus-side classes
    /// multiply, plus-side classes act by zero.
    pub(crate) fn central_on_state(&self, central: &Lc<KTerm>, v: &Lc<PbwMonomial>) -> Lc<PbwMonomial> {
        let mut out = Lc::new();
        for (k, c) in central {
            if let Some(g) = self.m.central_generator(k) {
                for (m, a) in v {
                    out.add_term(m.inserted(&g), c * a);
                }
            }
        }
        out
    }

    pub(crate) fn element_on_state(
        &mut self,
        loops: &Lc<LoopKey>,
        central: &Lc<KTerm>,
        v: &Lc<PbwMonomial>,
    ) -> Lc<PbwMonomial> {
        let mut out = self.central_on_state(central, v);
        for (x, c) in loops {
            out.add_scaled(&self.loop_on_state(x, v), c);
        }
        out
    }

    pub(crate) fn mode_on_state(&mut self, f: &FieldSpec, n: i64, v: &Lc<PbwMonomial>) -> Lc<PbwMonomial> {
        let (loops, central) = self.m.mode_parts(f, n);
        self.element_on_state(&loops, &central, v)
    }

    fn t_on_mono(&mut self, mono: &PbwMonomial) -> Lc<PbwMonomial> {
        let Some(first) = mono.0.first() else {
            return Lc::new();
        };
        let rest = PbwMonomial(mono.0[1..].to_vec());
        let t_rest = self.t_on_mono(&rest);
        let rest = Lc::basis(rest);
        match first {
            NegGenerator::Central { term, .. } => {
                let mut out = t_rest.map_keys(|m| m.inserted(first));
                let tc = self.m.t_bracket_central(&Lc::basis(term.clone()));
                out.add_assign(&self.central_on_state(&tc, &rest));
                out
            }
            NegGenerator::Loop { .. } => {
                let g1 = Self::loop_key(first);
                let mut out = self.loop_on_state(&g1, &t_rest);
                let tl = self.m.t_bracket_loop(&g1);
                out.add_assign(&self.element_on_state(&tl, &Lc::new(), &rest));
                out
            }
        }
    }

    pub(crate) fn t_on_state(&mut self, v: &Lc<PbwMonomial>) -> Lc<PbwMonomial> {
        let mut out = Lc::new();
        for (m, c) in v {
            out.add_scaled(&self.t_on_mono(m), c);
        }
        out
    }
}

/// Weight of a state if it is homogeneous.
pub fn homogeneous_weight(v: &VacuumState) -> Option<i64> {
    let mut it = v.terms.keys().map(PbwMonomial::weight);
    let w = it.next()?;
    it.all(|x| x == w).then_some(w)
}
