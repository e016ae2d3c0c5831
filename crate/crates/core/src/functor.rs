//! Functoriality of `A ↦ V(ĝ_{A[t,t⁻¹]})`, level specialization, and the
//! Segal–Sugawara vector in the affine case.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::kaehler::{normal_form_terms, KTerm};
use crate::lc::Lc;
use crate::lie::LieAlgebra;
use crate::linalg::Echelon;
use crate::report::{instance, Report};
use crate::ring::{fmt_sum, Exponent, RingHom, RingSpec};
use crate::toroidal::LoopKey;
use crate::vacuum::{FieldSpec, NegGenerator, PbwMonomial, VacuumModule, VacuumState, Window};
use crate::{qi, Error, Rational, Result};

/// How `ψ_*` acts on differentials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChainRule {
    /// `ψ_*(r dr') = ψ(r) dψ(r')`.
    #[default]
    Applied,
    /// `dψ(xⱼ)` taken as if every exponent of `ψ(xⱼ)` were one. Only for
    /// exercising the suites.
    Dropped,
}

/// `ψ̃: V(ĝ_{A[t^±]}) → V(ĝ_{B[t^±]})` induced by `ψ: A[t^±] → B[t^±]` with
/// `t ↦ t`.
#[derive(Clone, Debug)]
pub struct InducedHom {
    base: RingHom,
    source: VacuumModule,
    target: VacuumModule,
    chain: ChainRule,
}

pub fn induce_hom(lie: Arc<LieAlgebra>, psi: RingHom) -> Result<InducedHom> {
    InducedHom::new(lie, psi)
}

impl InducedHom {
    pub fn new(lie: Arc<LieAlgebra>, psi: RingHom) -> Result<Self> {
        let report = psi.validate();
        if !report.is_valid() {
            return Err(Error::InvalidHom(report.violations.join("; ")));
        }
        let (Some(ts), Some(tt)) = (psi.source().t(), psi.target().t()) else {
            return Err(Error::MissingLoopVariable);
        };
        let image = psi.images()[ts].as_unit();
        if image != Some((Rational::one(), Exponent::unit(psi.target().nvars(), tt))) {
            return Err(Error::InvalidHom(format!("loop variable must map to itself, got `{}`", psi.images()[ts])));
        }
        for (i, im) in psi.images().iter().enumerate() {
            if i != ts && im.terms().keys().any(|e| e.get(tt) != 0) {
                return Err(Error::InvalidHom(format!("fiber variable image `{im}` involves the loop variable")));
            }
        }
        let source = VacuumModule::new(lie.clone(), psi.source().clone())?;
        let target = VacuumModule::new(lie, psi.target().clone())?;
        Ok(InducedHom { base: psi, source, target, chain: ChainRule::Applied })
    }

    pub fn with_chain_rule(mut self, chain: ChainRule) -> Self {
        self.chain = chain;
        self
    }

    pub fn base(&self) -> &RingHom {
        &self.base
    }

    pub fn source(&self) -> &VacuumModule {
        &self.source
    }

    pub fn target(&self) -> &VacuumModule {
        &self.target
    }

    fn image_loops(&self, loops: &Lc<LoopKey>) -> Lc<LoopKey> {
        let mut out = Lc::new();
        for ((i, e), c) in loops {
            for (f, v) in &self.base.apply_monomial(e) {
                out.add_term((*i, f.clone()), c * v);
            }
        }
        out
    }

    /// `d ψ(x_j)`, honouring the chain-rule setting.
    fn d_image(&self, j: usize) -> Lc<KTerm> {
        let im = self.base.images()[j].terms();
        let mut out = Lc::new();
        for (e, c) in im {
            for (l, &k) in e.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let factor = match self.chain {
                    ChainRule::Applied => qi(k),
                    ChainRule::Dropped => Rational::one(),
                };
                out.add_term(KTerm::new(e.shifted(l, -1), l), c * factor);
            }
        }
        out
    }

    /// `ψ_*` on raw differentials, reduced to normal form in the target.
    fn image_central(&self, central: &Lc<KTerm>) -> Lc<KTerm> {
        let mut out = Lc::new();
        for (k, c) in central {
            let r = self.base.apply_monomial(&k.exp);
            let dr = self.d_image(k.var);
            for (e, a) in &r {
                for (dk, b) in &dr {
                    out.add_term(KTerm::new(dk.exp.add(e), dk.var), c * a * b);
                }
            }
        }
        normal_form_terms(self.target.ring(), &out)
    }

    /// `ψ̄` on an element of `ĝ_R` given by raw parts.
    pub fn map_element(&self, loops: &Lc<LoopKey>, central: &Lc<KTerm>) -> (Lc<LoopKey>, Lc<KTerm>) {
        (self.image_loops(loops), self.image_central(central))
    }

    fn generator_parts(g: &NegGenerator) -> (Lc<LoopKey>, Lc<KTerm>) {
        match g {
            NegGenerator::Loop { exp, lie, .. } => (Lc::basis((*lie, exp.clone())), Lc::new()),
            NegGenerator::Central { term, .. } => (Lc::new(), Lc::basis(term.clone())),
        }
    }

    /// `ψ̃(g₁ ⋯ g_k |0⟩) = ψ̄(g₁) ⋯ ψ̄(g_k) |0⟩`.
    pub fn apply(&self, v: &VacuumState) -> VacuumState {
        let mut s = self.target.straightener();
        let mut out = Lc::new();
        for (m, c) in v.terms() {
            let mut acc = Lc::basis(PbwMonomial::vacuum());
            for g in m.generators().iter().rev() {
                let (loops, central) = Self::generator_parts(g);
                let (loops, central) = self.map_element(&loops, &central);
                acc = s.element_on_state(&loops, &central, &acc);
            }
            out.add_scaled(&acc, c);
        }
        VacuumState::from_terms(out)
    }

    /// `ψ̃(x v) = ψ̄(x) ψ̃(v)` for loop modes with t-exponent in `[−W, W]`
    /// and minus-side central generators in the window, on every window
    /// state of the source.
    pub fn intertwines_check(&self, window: &Window) -> Report {
        let mut report = Report::new("functor");
        let src = &self.source;
        let mut modes: Vec<(Lc<LoopKey>, Lc<KTerm>, String)> = Vec::new();
        for a in src.fiber_box(window.a_radius) {
            if src.fiber_cost(&a) > window.a_budget {
                continue;
            }
            for n in -window.weight..=window.weight {
                for i in 0..src.lie().dim() {
                    let g = (i, a.shifted(src.t(), n));
                    let name = src.algebra().generator(i, g.1.clone()).map(|x| format!("{x}")).unwrap_or_default();
                    modes.push((Lc::basis(g), Lc::new(), name));
                }
            }
        }
        for g in src.window_generators(window).into_iter().filter(NegGenerator::is_central) {
            let (l, c) = Self::generator_parts(&g);
            modes.push((l, c, src.format_generator(&g)));
        }
        let states = src.basis(window);
        let mut ss = src.straightener();
        let mut st = self.target.straightener();
        for (loops, central, name) in &modes {
            let (il, ic) = self.map_element(loops, central);
            for v in &states {
                let vs = Lc::basis(v.clone());
                let xv = VacuumState::from_terms(ss.element_on_state(loops, central, &vs));
                let lhs = self.apply(&xv);
                let psi_v = self.apply(&VacuumState::from_terms(vs));
                let rhs = VacuumState::from_terms(st.element_on_state(&il, &ic, psi_v.terms()));
                report.record(lhs == rhs, || {
                    instance(
                        "psi(x v) = psi(x) psi(v)",
                        format!("{name}, {}", src.format_monomial(v)),
                        self.target.format_state(&lhs),
                        self.target.format_state(&rhs),
                    )
                });
            }
        }
        report
    }
}

pub fn hom_intertwines_check(lie: Arc<LieAlgebra>, psi: RingHom, window: &Window) -> Result<Report> {
    Ok(InducedHom::new(lie, psi)?.intertwines_check(window))
}

/// The structure map `Q[t^±] → A[t^±]` induces a map of vacuum modules that
/// is injective on every weight piece `≤ W` (with up to `level_factors`
/// factors of `k̄`).
pub fn embedding_check(lie: Arc<LieAlgebra>, target: &Arc<RingSpec>, window: &Window) -> Result<Report> {
    let tt = target.t().ok_or(Error::MissingLoopVariable)?;
    let source = RingSpec::loop_ring(&[], target.vars()[tt].name.as_str())?;
    let image = crate::ring::RingElement::var(target, tt);
    let psi = RingHom::new(&source, target, alloc::vec![image])?;
    let ind = InducedHom::new(lie, psi)?;
    let mut report = Report::new("embedding");
    let affine = Window { a_radius: 0, a_budget: 0, ..*window };
    let mut by_weight: BTreeMap<i64, Vec<PbwMonomial>> = BTreeMap::new();
    for m in ind.source.basis(&affine) {
        by_weight.entry(m.weight()).or_default().push(m);
    }
    for (w, monos) in by_weight {
        let mut ech = Echelon::new();
        for m in &monos {
            ech.insert(ind.apply(&VacuumState::from_terms(Lc::basis(m.clone()))).terms().clone());
        }
        let rank = ech.rank();
        report.record(rank == monos.len(), || {
            instance(
                "injective on weight piece",
                format!("weight {w}"),
                format!("rank {rank}"),
                format!("dim {}", monos.len()),
            )
        });
    }
    Ok(report)
}

/// A linear functional on the weight-0 central classes `u t⁻¹dt`, one value
/// per fiber monomial `u`. Monomials without a value map to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelSpecialization {
    values: BTreeMap<Exponent, Rational>,
}

impl LevelSpecialization {
    /// `values` are keyed by full exponents of the ring with t-exponent 0.
    pub fn new(values: BTreeMap<Exponent, Rational>) -> Self {
        LevelSpecialization { values }
    }

    /// `χ(1) = k`, zero elsewhere.
    pub fn constant(nvars: usize, k: Rational) -> Self {
        let mut values = BTreeMap::new();
        values.insert(Exponent::zero(nvars), k);
        LevelSpecialization { values }
    }

    pub fn values(&self) -> &BTreeMap<Exponent, Rational> {
        &self.values
    }

    /// `χ(1)`.
    pub fn level(&self) -> Rational {
        self.values.iter().find(|(e, _)| e.is_zero()).map(|(_, v)| v.clone()).unwrap_or_default()
    }

    fn value(&self, m: &VacuumModule, term: &KTerm) -> Rational {
        let mut e = term.exp.clone();
        e.0[m.t()] = 0;
        self.values.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn apply_terms(&self, m: &VacuumModule, v: &Lc<PbwMonomial>) -> Lc<PbwMonomial> {
        let mut out = Lc::new();
        for (mono, c) in v {
            let mut coeff = c.clone();
            let mut kept = Vec::new();
            for g in mono.generators() {
                match g {
                    NegGenerator::Central { weight: 0, term } => coeff *= self.value(m, term),
                    _ => kept.push(g.clone()),
                }
            }
            if !coeff.is_zero() {
                out.add_term(PbwMonomial::from_sorted(kept).expect("subsequence of a sorted list"), coeff);
            }
        }
        out
    }
}

/// Replace every weight-0 central factor `u t⁻¹dt` by `χ(u)`.
pub fn specialize_level(chi: &LevelSpecialization, m: &VacuumModule, v: &VacuumState) -> VacuumState {
    VacuumState::from_terms(chi.apply_terms(m, v.terms()))
}

/// The Segal–Sugawara modes on the level-`K` affine vacuum module.
///
/// In `ĝ_R` one has `[J ⊗ tᵐ, J' ⊗ tⁿ] = [J,J'] ⊗ t^{m+n} − m⟨J,J'⟩δ_{m+n,0} k̄`,
/// so the level in the usual normalisation is `−χ(k̄)`; level `K` means
/// `χ(1) = −K`.
pub struct Sugawara {
    module: VacuumModule,
    chi: LevelSpecialization,
    basis: Vec<FieldSpec>,
    dual: Vec<FieldSpec>,
    scale: Rational,
}

impl Sugawara {
    pub fn new(lie: Arc<LieAlgebra>, level: Rational) -> Result<Self> {
        let h = lie.dual_coxeter().cloned().ok_or(Error::MissingDualCoxeter)?;
        let denom = &level + &h;
        if denom.is_zero() {
            return Err(Error::CriticalLevel);
        }
        let dual = lie.dual_basis().ok_or_else(|| Error::InvalidLieAlgebra("degenerate form".into()))?;
        let module = VacuumModule::affine(lie.clone());
        let one = crate::ring::RingElement::one(module.ring());
        let basis = (0..lie.dim()).map(|i| FieldSpec::J { lie: lie.basis_element(i), u: one.clone() }).collect();
        let dual = dual.into_iter().map(|d| FieldSpec::J { lie: d, u: one.clone() }).collect();
        let chi = LevelSpecialization::constant(1, -level);
        Ok(Sugawara { module, chi, basis, dual, scale: (qi(2) * denom).recip() })
    }

    pub fn module(&self) -> &VacuumModule {
        &self.module
    }

    /// `L_m v` in `V_K`, for `v` without `k̄` factors.
    pub fn l_mode(&self, m: i64, v: &Lc<PbwMonomial>) -> Lc<PbwMonomial> {
        let mut s = self.module.straightener();
        let mut out = Lc::new();
        for (mono, c) in v {
            let w = mono.weight();
            let single = Lc::single(mono.clone(), c.clone());
            for (a, b) in self.basis.iter().zip(&self.dual) {
                for n in (m - w)..=w {
                    // :a_(n) b_(m−n): with creation modes to the left
                    let term = if n <= -1 {
                        let bv = s.mode_on_state(b, m - n, &single);
                        s.mode_on_state(a, n, &bv)
                    } else {
                        let av = s.mode_on_state(a, n, &single);
                        s.mode_on_state(b, m - n, &av)
                    };
                    out.add_assign(&term);
                }
            }
        }
        self.chi.apply_terms(&self.module, &out.scaled(&self.scale))
    }

    fn show(&self, v: &Lc<PbwMonomial>) -> String {
        fmt_sum(v.iter().map(|(m, c)| (c, self.module.format_monomial(m))))
    }

    /// `L₋₁ = T`, `L₀ = weight`, `[L₁, L₋₁] = 2L₀` on states of weight `≤ W`.
    pub fn check(&self, weight_bound: i64) -> Report {
        let mut report = Report::new("sugawara");
        let mut s = self.module.straightener();
        for mono in self.module.basis(&Window::new(weight_bound)) {
            let v = Lc::basis(mono.clone());
            let name = self.module.format_monomial(&mono);
            let lm1 = self.l_mode(-1, &v);
            let tv = s.t_on_state(&v);
            report.record(lm1 == tv, || instance("L_-1 = T", name.clone(), self.show(&lm1), self.show(&tv)));
            let l0 = self.l_mode(0, &v);
            let wv = v.scaled(&qi(mono.weight()));
            report.record(l0 == wv, || instance("L_0 = weight", name.clone(), self.show(&l0), self.show(&wv)));
            let mut lhs = self.l_mode(1, &lm1);
            lhs.sub_assign(&self.l_mode(-1, &self.l_mode(1, &v)));
            let rhs = l0.scaled(&qi(2));
            report
                .record(lhs == rhs, || instance("[L_1, L_-1] = 2 L_0", name.clone(), self.show(&lhs), self.show(&rhs)));
        }
        report
    }

    /// `c` from `L₂ L₋₂ |0⟩ = (c/2)|0⟩`.
    pub fn central_charge(&self) -> Rational {
        let vac = Lc::basis(PbwMonomial::vacuum());
        let v = self.l_mode(2, &self.l_mode(-2, &vac));
        v.coeff(&PbwMonomial::vacuum()) * qi(2)
    }
}

pub fn sugawara_check(lie: Arc<LieAlgebra>, level: Rational, weight_bound: i64) -> Result<Report> {
    let sug = Sugawara::new(lie, level)?;
    let mut report = sug.check(weight_bound);
    if weight_bound >= 2 {
        report.note(format!("central charge c = {}", sug.central_charge()));
    }
    Ok(report)
}

/// Composition check: `ind(ψ∘φ) = ind(ψ)∘ind(φ)` on window states of the
/// source of `φ`.
pub fn functoriality_check(lie: Arc<LieAlgebra>, phi: RingHom, psi: RingHom, window: &Window) -> Result<Report> {
    let composite = phi.then(&psi)?;
    let a = InducedHom::new(lie.clone(), phi)?;
    let b = InducedHom::new(lie.clone(), psi)?;
    let ab = InducedHom::new(lie, composite)?;
    let mut report = Report::new("functoriality");
    for m in a.source.basis(window) {
        let v = VacuumState::from_terms(Lc::basis(m.clone()));
        let lhs = ab.apply(&v);
        let rhs = b.apply(&a.apply(&v));
        report.record(lhs == rhs, || {
            instance(
                "ind(psi.phi) = ind(psi).ind(phi)",
                a.source.format_monomial(&m),
                ab.target.format_state(&lhs),
                ab.target.format_state(&rhs),
            )
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kaehler::KaehlerElement;
    use crate::ring::{RingElement, Variable};
    use crate::{q, ToroidalElement};
    use alloc::vec;

    fn ring(name: &str) -> Arc<RingSpec> {
        RingSpec::loop_ring(&[Variable::laurent(name)], "t").unwrap()
    }

    fn square() -> RingHom {
        let (a, b) = (ring("x"), ring("y"));
        let y2 = RingElement::var(&b, 0).pow(2);
        RingHom::new(&a, &b, vec![y2, RingElement::var(&b, 1)]).unwrap()
    }

    fn sl2() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::sl2())
    }

    fn state(m: &VacuumModule, xs: &[ToroidalElement]) -> VacuumState {
        m.product(xs).unwrap()
    }

    #[test]
    fn identity_hom_is_identity() {
        let r = ring("x");
        let ind = induce_hom(sl2(), RingHom::identity(&r)).unwrap();
        for m in ind.source().basis(&Window::new(2).with_fiber(1, 1)) {
            let v = VacuumState::from_terms(Lc::basis(m));
            assert_eq!(ind.apply(&v), v);
        }
    }

    #[test]
    fn square_map_examples() {
        let ind = induce_hom(sl2(), square()).unwrap();
        let (s, t) = (ind.source(), ind.target());
        let v = state(s, &[s.algebra().generator(0, Exponent(vec![1, -1])).unwrap()]);
        let w = state(t, &[t.algebra().generator(0, Exponent(vec![2, -1])).unwrap()]);
        assert_eq!(ind.apply(&v), w);

        let om = KaehlerElement::basis(s.ring(), Exponent(vec![-1, -1]), 0, qi(1)).unwrap();
        let (_, c) = ind.map_element(&Lc::new(), om.terms());
        assert_eq!(c, Lc::single(KTerm::new(Exponent(vec![-1, -1]), 0), qi(2)));
        let dropped = induce_hom(sl2(), square()).unwrap().with_chain_rule(ChainRule::Dropped);
        let (_, c) = dropped.map_element(&Lc::new(), om.terms());
        assert_eq!(c, Lc::single(KTerm::new(Exponent(vec![-1, -1]), 0), qi(1)));
    }

    #[test]
    fn hom_must_fix_t() {
        let (a, b) = (ring("x"), ring("y"));
        let bad = RingHom::new(&a, &b, vec![RingElement::var(&b, 0), RingElement::var(&b, 1).scale(&qi(2))]).unwrap();
        assert!(matches!(induce_hom(sl2(), bad), Err(Error::InvalidHom(_))));
        let mixed = RingHom::new(&a, &b, vec![RingElement::var(&b, 1), RingElement::var(&b, 1)]).unwrap();
        assert!(matches!(induce_hom(sl2(), mixed), Err(Error::InvalidHom(_))));
    }

    #[test]
    fn intertwining() {
        let w = Window::new(2).with_fiber(1, 2);
        let r = hom_intertwines_check(sl2(), square(), &w).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        let bad = induce_hom(sl2(), square()).unwrap().with_chain_rule(ChainRule::Dropped);
        assert!(!bad.intertwines_check(&w).passed());
    }

    #[test]
    fn composition() {
        let (b, c) = (ring("y"), ring("z"));
        let inv = RingHom::new(
            &b,
            &c,
            vec![RingElement::monomial(&c, Exponent(vec![-1, 0]), q(1, 3)).unwrap(), RingElement::var(&c, 1)],
        )
        .unwrap();
        let r =
            functoriality_check(sl2(), square(), inv, &Window::new(2).with_fiber(1, 2).with_level_factors(1)).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert!(r.checked > 10);
    }

    #[test]
    fn embedding() {
        let r = embedding_check(sl2(), &ring("x"), &Window::new(3).with_level_factors(1)).unwrap();
        assert!(r.passed());
        assert_eq!(r.checked, 4);
    }

    #[test]
    fn specialization_examples() {
        let m = VacuumModule::new(sl2(), ring("x")).unwrap();
        let kbar = m.algebra().central(&KaehlerElement::log_differential(m.ring(), 1).unwrap()).unwrap();
        let chi = LevelSpecialization::constant(2, qi(5));
        assert_eq!(specialize_level(&chi, &m, &state(&m, &[kbar.clone()])), VacuumState::vacuum().scale(&qi(5)));
        assert_eq!(specialize_level(&chi, &m, &VacuumState::vacuum()), VacuumState::vacuum());
        let mut values = BTreeMap::new();
        values.insert(Exponent(vec![0, 0]), qi(1));
        values.insert(Exponent(vec![1, 0]), qi(0));
        let chi = LevelSpecialization::new(values);
        let xk = KaehlerElement::basis(m.ring(), Exponent(vec![1, -1]), 1, qi(1)).unwrap();
        let xk = m.algebra().central(&xk).unwrap();
        let e = m.algebra().generator(0, Exponent(vec![0, -1])).unwrap();
        assert!(specialize_level(&chi, &m, &state(&m, &[xk, e.clone()])).is_zero());
        assert_eq!(specialize_level(&chi, &m, &state(&m, &[kbar, e.clone()])), state(&m, &[e]));
        assert_eq!(chi.level(), qi(1));
    }

    #[test]
    fn sugawara() {
        let r = sugawara_check(sl2(), qi(1), 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures.first());
        assert_eq!(r.notes, vec![String::from("central charge c = 1")]);
        let sug = Sugawara::new(sl2(), qi(1)).unwrap();
        assert!(sug.l_mode(0, &Lc::basis(PbwMonomial::vacuum())).is_zero());
        assert_eq!(Sugawara::new(sl2(), qi(-2)).err().map(|e| e == Error::CriticalLevel), Some(true));
        assert!(matches!(Sugawara::new(Arc::new(LieAlgebra::abelian(1)), qi(1)), Err(Error::MissingDualCoxeter)));
        let sl3 = Sugawara::new(Arc::new(LieAlgebra::sl3()), qi(1)).unwrap();
        assert!(sl3.check(1).passed());
        assert_eq!(sl3.central_charge(), qi(2));
        // a non-integral level
        assert_eq!(Sugawara::new(sl2(), q(1, 2)).unwrap().central_charge(), q(3, 5));
    }
}
