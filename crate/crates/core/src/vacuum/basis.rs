//! Finite windows of the PBW basis.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{NegGenerator, PbwMonomial, VacuumModule};
use crate::kaehler::{box_points, normal_form_terms, KTerm};
use crate::lc::Lc;
use crate::lie::LieAlgebra;
use crate::ring::Exponent;
use crate::{Error, Result};

/// Which PBW states a suite quantifies over.
///
/// Weight spaces are infinite-dimensional once `A` is nontrivial, so states
/// are also cut by the `A`-degree: every generator has `|aᵢ| ≤ a_radius` in
/// each fiber coordinate, and the L1 norms of all `A`-degrees in one checked
/// instance (operators and state together) sum to at most `a_budget`.
/// `level_factors` caps the number of weight-0 central factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub weight: i64,
    pub a_radius: i64,
    pub a_budget: i64,
    pub level_factors: usize,
}

impl Window {
    pub fn new(weight: i64) -> Self {
        Window { weight, a_radius: 0, a_budget: 0, level_factors: 0 }
    }

    pub fn with_fiber(mut self, a_radius: i64, a_budget: i64) -> Self {
        self.a_radius = a_radius;
        self.a_budget = a_budget;
        self
    }

    pub fn with_level_factors(mut self, n: usize) -> Self {
        self.level_factors = n;
        self
    }
}

impl VacuumModule {
    pub(crate) fn fiber_cost(&self, e: &Exponent) -> i64 {
        e.0.iter().enumerate().filter(|(i, _)| *i != self.t).map(|(_, a)| a.abs()).sum()
    }

    pub(crate) fn generator_cost(&self, g: &NegGenerator) -> i64 {
        self.fiber_cost(&self.fiber_degree(g))
    }

    /// Fiber exponents in the window box (t-coordinate 0).
    pub(crate) fn fiber_box(&self, radius: i64) -> Vec<Exponent> {
        let spec = self.ring();
        let lo = Exponent(
            spec.vars()
                .iter()
                .enumerate()
                .map(|(i, v)| if i == self.t || !v.invertible { 0 } else { -radius })
                .collect(),
        );
        let hi = Exponent((0..spec.nvars()).map(|i| if i == self.t { 0 } else { radius }).collect());
        box_points(&lo, &hi)
    }

    /// Negative generators of weight `1..=W` (and weight 0 central ones if
    /// `level_factors > 0`) inside the window, in PBW order.
    pub fn window_generators(&self, window: &Window) -> Vec<NegGenerator> {
        let spec = self.ring();
        let fibers = self.fiber_box(window.a_radius);
        let mut out = Vec::new();
        let lowest = if window.level_factors > 0 { 0 } else { 1 };
        for w in lowest..=window.weight {
            for a in &fibers {
                if self.fiber_cost(a) > window.a_budget {
                    continue;
                }
                if w >= 1 {
                    for i in 0..self.lie().dim() {
                        out.push(NegGenerator::Loop { weight: w, exp: a.shifted(self.t, -w), lie: i });
                    }
                }
            }
            // central: x^e dx_var with fiber degree in the box
            for d in &fibers {
                if self.fiber_cost(d) > window.a_budget {
                    continue;
                }
                for var in 0..spec.nvars() {
                    let mut exp = d.shifted(var, -1);
                    exp.0[self.t] = if var == self.t { -w - 1 } else { -w };
                    if !spec.is_legal(&exp) {
                        continue;
                    }
                    let k = KTerm::new(exp, var);
                    let basis = Lc::basis(k.clone());
                    if normal_form_terms(spec, &basis) != basis {
                        continue;
                    }
                    if let Some(g) = self.central_generator(&k) {
                        out.push(g);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// All PBW monomials of weight `≤ W` inside the window, in PBW order of
    /// their generator lists.
    pub fn basis(&self, window: &Window) -> Vec<PbwMonomial> {
        let gens = self.window_generators(window);
        let costs: Vec<i64> = gens.iter().map(|g| self.generator_cost(g)).collect();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.extend(&gens, &costs, 0, window, 0, 0, 0, &mut stack, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        gens: &[NegGenerator],
        costs: &[i64],
        from: usize,
        window: &Window,
        weight: i64,
        cost: i64,
        levels: usize,
        stack: &mut Vec<NegGenerator>,
        out: &mut Vec<PbwMonomial>,
    ) {
        out.push(PbwMonomial(stack.clone()));
        for j in from..gens.len() {
            let g = &gens[j];
            let w = weight + g.weight();
            let c = cost + costs[j];
            let l = levels + usize::from(g.weight() == 0);
            if w > window.weight || c > window.a_budget || l > window.level_factors {
                continue;
            }
            stack.push(g.clone());
            self.extend(gens, costs, j, window, w, c, l, stack, out);
            stack.pop();
        }
    }

    /// Ranks of the weight pieces `0..=W` of `V(ĝ)` over `Q[k̄]`. Only the
    /// trivial fiber `A = Q` is supported.
    pub fn character(&self, weight_bound: i64) -> Result<Vec<(i64, usize)>> {
        if self.ring().nvars() != 1 {
            return Err(Error::Unsupported("character needs a trivial fiber algebra".into()));
        }
        let mut counts = vec![0usize; usize::try_from(weight_bound.max(-1) + 1).unwrap_or(0)];
        for m in self.basis(&Window::new(weight_bound)) {
            counts[m.weight() as usize] += 1;
        }
        Ok(counts.into_iter().enumerate().map(|(w, c)| (w as i64, c)).collect())
    }
}

/// Ranks of the weight pieces `0..=W` of the affine vacuum module of `lie`.
pub fn character(lie: &LieAlgebra, weight_bound: i64) -> Vec<(i64, usize)> {
    VacuumModule::affine(Arc::new(lie.clone())).character(weight_bound).expect("affine ring")
}
