//! Generator-level vertex-algebra axioms, checked operator-exactly on
//! windows of PBW states.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{FieldSpec, NegGenerator, PbwMonomial, Straightener, VacuumModule, Window};
use crate::kaehler::{d_terms, normal_form_terms, KTerm, KaehlerElement};
use crate::lc::Lc;
use crate::qi;
use crate::report::{instance, Report};
use crate::ring::{fmt_sum, RingElement};
use crate::toroidal::LoopKey;

/// Which `∂δ` coefficient the commutator prediction uses for
/// `[J¹_u(z), J²_v(w)]` at modes `(m, n)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Prediction {
    /// `n ⟨J¹,J²⟩ K_{uv dt/t}` at mode `m + n`, i.e. the class of `r ds`
    /// for `r = u tᵐ`, `s = v tⁿ`.
    #[default]
    Exact,
    /// No `∂δ` term.
    DropDerivative,
    /// Coefficient `m` instead of `n`.
    MirroredDerivative,
}

impl VacuumModule {
    pub fn format_field(&self, f: &FieldSpec) -> String {
        match f {
            FieldSpec::J { lie, u } => {
                let names = self.lie().names();
                let l = fmt_sum(lie.support().map(|(i, c)| (c, names[i].clone())));
                format!("J[{l};u={u}]")
            }
            FieldSpec::Kdt { u } => format!("Kdt[u={u}]"),
            FieldSpec::Kom { omega } => format!("Kom[w={omega}]"),
        }
    }

    fn field_cost(&self, f: &FieldSpec) -> i64 {
        match f {
            FieldSpec::J { u, .. } | FieldSpec::Kdt { u } => {
                u.terms().keys().map(|e| self.fiber_cost(e)).max().unwrap_or(0)
            }
            FieldSpec::Kom { omega } => omega.terms().keys().map(|k| self.fiber_cost(&k.degree())).max().unwrap_or(0),
        }
    }

    fn states_within(&self, window: &Window, spent: i64) -> Vec<PbwMonomial> {
        let mut w = *window;
        w.a_budget = window.a_budget - spent;
        if w.a_budget < 0 {
            return Vec::new();
        }
        self.basis(&w)
    }

    fn show(&self, v: &Lc<PbwMonomial>) -> String {
        fmt_sum(v.iter().map(|(m, c)| (c, self.format_monomial(m))))
    }

    /// Right-hand side of the field commutator at modes `(m, n)`, as the
    /// mode of an element of `ĝ_R`.
    pub fn predicted_commutator(
        &self,
        f: &FieldSpec,
        g: &FieldSpec,
        m: i64,
        n: i64,
        prediction: Prediction,
    ) -> (Lc<LoopKey>, Lc<KTerm>) {
        let (FieldSpec::J { lie: j1, u }, FieldSpec::J { lie: j2, u: v }) = (f, g) else {
            return (Lc::new(), Lc::new());
        };
        let lie = self.lie().bracket(j1, j2).expect("dimensions checked at construction");
        let uv = u.mul(v).expect("same ring");
        let pair = self.lie().pairing(j1, j2);
        let (loops, _) = self.mode_parts(&FieldSpec::J { lie, u: uv.clone() }, m + n);
        let omega = KaehlerElement::from_terms_unchecked(self.ring(), self.u_dv(u, v));
        let (_, mut central) = self.mode_parts(&FieldSpec::Kom { omega }, m + n);
        central = central.scaled(&pair);
        let coeff = match prediction {
            Prediction::Exact => n,
            Prediction::DropDerivative => 0,
            Prediction::MirroredDerivative => m,
        };
        let (_, kdt) = self.mode_parts(&FieldSpec::Kdt { u: uv }, m + n);
        central.add_scaled(&kdt, &(pair * qi(coeff)));
        (loops, normal_form_terms(self.ring(), &central))
    }

    fn commutator_on(
        &self,
        s: &mut Straightener<'_>,
        f: &FieldSpec,
        m: i64,
        g: &FieldSpec,
        n: i64,
        v: &Lc<PbwMonomial>,
    ) -> Lc<PbwMonomial> {
        let gv = s.mode_on_state(g, n, v);
        let mut out = s.mode_on_state(f, m, &gv);
        let fv = s.mode_on_state(f, m, v);
        out.sub_assign(&s.mode_on_state(g, n, &fv));
        out
    }

    /// `[f_m, g_n] = (predicted)_{m+n}` as operators, `|m|, |n| ≤ W`.
    pub fn commutator_check(&self, f: &FieldSpec, g: &FieldSpec, window: &Window, prediction: Prediction) -> Report {
        let mut report = Report::new("commutator");
        let states = self.states_within(window, self.field_cost(f) + self.field_cost(g));
        let mut s = self.straightener();
        let w = window.weight;
        for m in -w..=w {
            for n in -w..=w {
                let (loops, central) = self.predicted_commutator(f, g, m, n, prediction);
                for st in &states {
                    let v = Lc::basis(st.clone());
                    let lhs = self.commutator_on(&mut s, f, m, g, n, &v);
                    let rhs = s.element_on_state(&loops, &central, &v);
                    report.record(lhs == rhs, || {
                        instance(
                            "[f_m, g_n] = prediction",
                            format!(
                                "{}_{m}, {}_{n}, {}",
                                self.format_field(f),
                                self.format_field(g),
                                self.format_monomial(st)
                            ),
                            self.show(&lhs),
                            self.show(&rhs),
                        )
                    });
                }
            }
        }
        report
    }

    /// `Σ_j C(2,j) (−1)^j [f_{m−j}, g_{n−2+j}] = 0` as operators.
    pub fn locality_check(&self, f: &FieldSpec, g: &FieldSpec, window: &Window) -> Report {
        let mut report = Report::new("locality");
        let states = self.states_within(window, self.field_cost(f) + self.field_cost(g));
        let mut s = self.straightener();
        let w = window.weight;
        let binom = [qi(1), qi(-2), qi(1)];
        for m in -w..=w {
            for n in -w..=w {
                for st in &states {
                    let v = Lc::basis(st.clone());
                    let mut acc = Lc::new();
                    for (j, c) in binom.iter().enumerate() {
                        let j = j as i64;
                        acc.add_scaled(&self.commutator_on(&mut s, f, m - j, g, n - 2 + j, &v), c);
                    }
                    report.record(acc.is_zero(), || {
                        instance(
                            "(z-w)^2 [f(z), g(w)] = 0",
                            format!(
                                "{}, {}, m={m}, n={n}, {}",
                                self.format_field(f),
                                self.format_field(g),
                                self.format_monomial(st)
                            ),
                            self.show(&acc),
                            "0".into(),
                        )
                    });
                }
            }
        }
        report
    }

    /// Mode index whose coefficient is the creation term `Y(a, z)|0⟩|_{z=0}`.
    fn creation_mode(f: &FieldSpec) -> i64 {
        match f {
            FieldSpec::Kdt { .. } => 0,
            _ => -1,
        }
    }

    /// The state labelling `f`, built straight from its data.
    pub fn labelling_state(&self, f: &FieldSpec) -> Lc<PbwMonomial> {
        let t = self.t;
        let mut out = Lc::new();
        match f {
            FieldSpec::J { lie, u } => {
                for (i, c) in lie.support() {
                    for (e, a) in u.terms() {
                        let g = NegGenerator::Loop { weight: 1, exp: e.shifted(t, -1), lie: i };
                        out.add_term(PbwMonomial(alloc::vec![g]), c * a);
                    }
                }
            }
            FieldSpec::Kdt { .. } | FieldSpec::Kom { .. } => {
                let raw: Lc<KTerm> = match f {
                    FieldSpec::Kdt { u } => {
                        u.terms().iter().map(|(e, c)| (KTerm::new(e.shifted(t, -1), t), c.clone())).collect()
                    }
                    FieldSpec::Kom { omega } => omega
                        .terms()
                        .iter()
                        .map(|(k, c)| (KTerm::new(k.exp.shifted(t, -1), k.var), c.clone()))
                        .collect(),
                    FieldSpec::J { .. } => unreachable!(),
                };
                for (k, c) in normal_form_terms(self.ring(), &raw) {
                    if let Some(g) = self.central_generator(&k) {
                        out.add_term(PbwMonomial(alloc::vec![g]), c);
                    }
                }
            }
        }
        out
    }

    /// Vacuum axiom `Y(a, z)|0⟩ ∈ a + zV⟦z⟧` for the field `f`, plus the
    /// exactness of `d(tⁿu)` for fiber monomials `u` in the window box.
    pub fn vacuum_axiom_check(&self, f: &FieldSpec, window: &Window) -> Report {
        let mut report = Report::new("vacuum");
        let mut s = self.straightener();
        let vac = Lc::basis(PbwMonomial::vacuum());
        let c = Self::creation_mode(f);
        for n in (c + 1)..=(c + 1 + window.weight) {
            let out = s.mode_on_state(f, n, &vac);
            report.record(out.is_zero(), || {
                instance("f_n|0> = 0", format!("{}_{n}", self.format_field(f)), self.show(&out), "0".into())
            });
        }
        let created = s.mode_on_state(f, c, &vac);
        let label = self.labelling_state(f);
        report.record(created == label, || {
            instance("creation", format!("{}_{c}", self.format_field(f)), self.show(&created), self.show(&label))
        });
        report.merge(self.exactness_check(window.a_radius.max(1), window.weight + 2));
        report
    }

    /// `K_{t⁻¹du}` mode `n` plus `n·K_{u dt/t}` mode `n`, i.e. the class of
    /// `d(tⁿu)`, vanishes for every fiber monomial `u` with `|uᵢ| ≤ radius`
    /// and `|n| ≤ n_bound`.
    pub fn exactness_check(&self, radius: i64, n_bound: i64) -> Report {
        let mut report = Report::new("exactness");
        for a in self.fiber_box(radius) {
            let u = RingElement::from_terms_unchecked(self.ring(), Lc::basis(a.clone()));
            let du = KaehlerElement::from_terms_unchecked(self.ring(), d_terms(u.terms()));
            for n in -n_bound..=n_bound {
                let (_, mut w) = self.mode_parts(&FieldSpec::Kom { omega: du.clone() }, n);
                let (_, kdt) = self.mode_parts(&FieldSpec::Kdt { u: u.clone() }, n);
                w.add_scaled(&kdt, &qi(n));
                let w = normal_form_terms(self.ring(), &w);
                report.record(w.is_zero(), || {
                    instance(
                        "nf(d(t^n u)) = 0",
                        format!("u={u}, n={n}"),
                        crate::kaehler::fmt_kterms(self.ring(), &w),
                        "0".into(),
                    )
                });
            }
        }
        report
    }

    /// `[T, f_n] = −n f_{n−1}` (`J`, `K_{t⁻¹ω}`) and `[T, f_n] = −(n−1) f_{n−1}`
    /// (`K_{u dt/t}`, whose modes are indexed by `z^{−n}`).
    pub fn translation_axiom_check(&self, f: &FieldSpec, window: &Window) -> Report {
        let mut report = Report::new("translation");
        let states = self.states_within(window, self.field_cost(f));
        let mut s = self.straightener();
        let w = window.weight;
        for n in -w..=w {
            let coeff = match f {
                FieldSpec::Kdt { .. } => -(n - 1),
                _ => -n,
            };
            for st in &states {
                let v = Lc::basis(st.clone());
                let fv = s.mode_on_state(f, n, &v);
                let mut lhs = s.t_on_state(&fv);
                let tv = s.t_on_state(&v);
                lhs.sub_assign(&s.mode_on_state(f, n, &tv));
                let rhs = s.mode_on_state(f, n - 1, &v).scaled(&qi(coeff));
                report.record(lhs == rhs, || {
                    instance(
                        "[T, f_n] = d/dz mode",
                        format!("{}_{n}, {}", self.format_field(f), self.format_monomial(st)),
                        self.show(&lhs),
                        self.show(&rhs),
                    )
                });
            }
        }
        report
    }

    /// `x(yv) − y(xv) = [x, y]v` for loop generators with t-exponent in
    /// `[−W, W]` and fiber exponents in the window box.
    pub fn module_axiom_check(&self, window: &Window) -> Report {
        let mut report = Report::new("module");
        let w = window.weight;
        let mut gens: Vec<LoopKey> = Vec::new();
        for a in self.fiber_box(window.a_radius) {
            for n in -w..=w {
                for i in 0..self.lie().dim() {
                    gens.push((i, a.shifted(self.t, n)));
                }
            }
        }
        let mut by_budget: alloc::collections::BTreeMap<i64, Vec<PbwMonomial>> = alloc::collections::BTreeMap::new();
        let mut s = self.straightener();
        for (ix, x) in gens.iter().enumerate() {
            for y in &gens[ix + 1..] {
                let spent = self.fiber_cost(&x.1) + self.fiber_cost(&y.1);
                if spent > window.a_budget {
                    continue;
                }
                let states = by_budget.entry(spent).or_insert_with(|| self.states_within(window, spent)).clone();
                let (loops, central) = self.algebra().bracket_generators(x, y);
                for st in &states {
                    let v = Lc::basis(st.clone());
                    let yv = s.loop_on_state(y, &v);
                    let mut lhs = s.loop_on_state(x, &yv);
                    let xv = s.loop_on_state(x, &v);
                    lhs.sub_assign(&s.loop_on_state(y, &xv));
                    let rhs = s.element_on_state(&loops, &central, &v);
                    report.record(lhs == rhs, || {
                        let name = |k: &LoopKey| {
                            let mut sname = format!("J[{}]", self.lie().names()[k.0]);
                            let mut mono = String::new();
                            if crate::ring::fmt_monomial(self.ring(), &k.1, &mut mono) {
                                sname.push('*');
                                sname.push_str(&mono);
                            }
                            sname
                        };
                        instance(
                            "x(yv) - y(xv) = [x,y]v",
                            format!("{}, {}, {}", name(x), name(y), self.format_monomial(st)),
                            self.show(&lhs),
                            self.show(&rhs),
                        )
                    });
                }
            }
        }
        report
    }
}
