//! Finite-dimensional Lie algebras given by structure constants, with an
//! invariant symmetric bilinear form.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::lc::Lc;
use crate::{qi, Error, Rational, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    /// `brackets[i][j]` lists `(k, c_ij^k)` with nonzero coefficients.
    brackets: Vec<Vec<Vec<(usize, Rational)>>>,
    form: Vec<Vec<Rational>>,
    dual_coxeter: Option<Rational>,
}

impl LieAlgebra {
    /// Assemble from dense structure constants `structure[i][j][k] = c_ij^k`.
    /// Only shapes are checked here; see [`LieAlgebra::validate`].
    pub fn new(
        names: Vec<String>,
        structure: Vec<Vec<Vec<Rational>>>,
        form: Vec<Vec<Rational>>,
        dual_coxeter: Option<Rational>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidLieAlgebra("dimension must be positive".into()));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::InvalidLieAlgebra(format!("duplicate basis name `{name}`")));
            }
        }
        let shape_ok = structure.len() == n
            && structure.iter().all(|row| row.len() == n && row.iter().all(|c| c.len() == n))
            && form.len() == n
            && form.iter().all(|row| row.len() == n);
        if !shape_ok {
            return Err(Error::InvalidLieAlgebra(format!("tables must be {n}x{n}(x{n})")));
        }
        let brackets = structure
            .into_iter()
            .map(|row| {
                row.into_iter().map(|c| c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()).collect()
            })
            .collect();
        Ok(LieAlgebra { names, brackets, form, dual_coxeter })
    }

    /// `sl₂` in the basis `e, h, f`, trace form of the defining representation.
    pub fn sl2() -> Self {
        let mut s = table(3);
        let (e, h, f) = (0, 1, 2);
        set(&mut s, h, e, e, 2);
        set(&mut s, h, f, f, -2);
        set(&mut s, e, f, h, 1);
        let mut form = vec![vec![Rational::zero(); 3]; 3];
        form[h][h] = qi(2);
        form[e][f] = qi(1);
        form[f][e] = qi(1);
        Self::new(names(&["e", "h", "f"]), s, form, Some(qi(2))).expect("sl2 preset")
    }

    /// `sl₃` in the Chevalley basis `e1 = E12, e2 = E23, e3 = E13, h1, h2,
    /// f1 = E21, f2 = E32, f3 = E31`, trace form (so `⟨θ, θ⟩ = 2`).
    pub fn sl3() -> Self {
        let (e1, e2, e3, h1, h2, f1, f2, f3) = (0, 1, 2, 3, 4, 5, 6, 7);
        let mut s = table(8);
        set(&mut s, e1, e2, e3, 1);
        set(&mut s, f1, f2, f3, -1);
        set(&mut s, e1, f1, h1, 1);
        set(&mut s, e2, f2, h2, 1);
        set(&mut s, e3, f3, h1, 1);
        set(&mut s, e3, f3, h2, 1);
        set(&mut s, e1, f3, f2, -1);
        set(&mut s, e2, f3, f1, 1);
        set(&mut s, e3, f1, e2, -1);
        set(&mut s, e3, f2, e1, 1);
        // [h, x_α] = α(h) x_α with α(h1), α(h2) for α = α1, α2, α1+α2
        for (x, a1, a2) in [(e1, 2, -1), (e2, -1, 2), (e3, 1, 1)] {
            set(&mut s, h1, x, x, a1);
            set(&mut s, h2, x, x, a2);
        }
        for (y, a1, a2) in [(f1, 2, -1), (f2, -1, 2), (f3, 1, 1)] {
            set(&mut s, h1, y, y, -a1);
            set(&mut s, h2, y, y, -a2);
        }
        let mut form = vec![vec![Rational::zero(); 8]; 8];
        for (x, y) in [(e1, f1), (e2, f2), (e3, f3)] {
            form[x][y] = qi(1);
            form[y][x] = qi(1);
        }
        form[h1][h1] = qi(2);
        form[h2][h2] = qi(2);
        form[h1][h2] = qi(-1);
        form[h2][h1] = qi(-1);
        Self::new(names(&["e1", "e2", "e3", "h1", "h2", "f1", "f2", "f3"]), s, form, Some(qi(3))).expect("sl3 preset")
    }

    /// One-dimensional abelian algebra with form `⟨x, x⟩ = 1`.
    pub fn abelian(dim: usize) -> Self {
        let mut form = vec![vec![Rational::zero(); dim]; dim];
        for (i, row) in form.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        let names = (0..dim).map(|i| format!("x{i}")).collect();
        Self::new(names, table(dim), form, None).expect("abelian")
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "sl2" => Some(Self::sl2()),
            "sl3" => Some(Self::sl3()),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `[Jⁱ, Jʲ]` as `(k, c_ij^k)` pairs.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.brackets[i][j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.brackets[i][j].iter().find(|(kk, _)| *kk == k).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn form(&self, i: usize, j: usize) -> &Rational {
        &self.form[i][j]
    }

    pub fn form_matrix(&self) -> &[Vec<Rational>] {
        &self.form
    }

    pub fn dual_coxeter(&self) -> Option<&Rational> {
        self.dual_coxeter.as_ref()
    }

    pub fn with_form(mut self, form: Vec<Vec<Rational>>) -> Result<Self> {
        let n = self.dim();
        if form.len() != n || form.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLieAlgebra(format!("form must be {n}x{n}")));
        }
        self.form = form;
        Ok(self)
    }

    pub fn with_structure_constant(mut self, i: usize, j: usize, k: usize, c: Rational) -> Self {
        self.brackets[i][j].retain(|(kk, _)| *kk != k);
        if !c.is_zero() {
            self.brackets[i][j].push((k, c));
            self.brackets[i][j].sort_by_key(|(kk, _)| *kk);
        }
        self
    }

    pub fn basis_element(&self, i: usize) -> LieElement {
        let mut coeffs = vec![Rational::zero(); self.dim()];
        coeffs[i] = Rational::one();
        LieElement { coeffs }
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        if x.coeffs.len() != self.dim() || y.coeffs.len() != self.dim() {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, xi) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, c) in &self.brackets[i][j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        Ok(LieElement { coeffs: out })
    }

    pub fn pairing(&self, x: &LieElement, y: &LieElement) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                acc += xi * yj * &self.form[i][j];
            }
        }
        acc
    }

    /// `[Jⁱ, Jʲ]` as a sparse combination.
    pub(crate) fn bracket_lc(&self, i: usize, j: usize) -> Lc<usize> {
        self.brackets[i][j].iter().cloned().collect()
    }

    /// `⟨[Jⁱ, Jʲ], Jᵏ⟩`.
    pub(crate) fn bracket_pairing(&self, i: usize, j: usize, k: usize) -> Rational {
        let mut acc = Rational::zero();
        for (l, c) in &self.brackets[i][j] {
            acc += c * &self.form[*l][k];
        }
        acc
    }

    /// `K(x, y) = tr(ad x ∘ ad y)` on basis elements.
    pub fn killing_form(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut k = vec![vec![Rational::zero(); n]; n];
        for (i, row) in k.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                // Σ_{a,b} c_{i a}^b c_{j b}^a
                for a in 0..n {
                    for (b, c1) in &self.brackets[i][a] {
                        *entry += c1 * self.structure_constant(j, *b, a);
                    }
                }
            }
        }
        k
    }

    /// Exact check of antisymmetry, Jacobi, symmetry of the form and its
    /// invariance, over all basis pairs and triples.
    pub fn validate(&self) -> LieReport {
        let n = self.dim();
        let mut report = LieReport::default();
        for i in 0..n {
            for j in 0..n {
                report.checked += 2;
                let mut sum = self.bracket_lc(i, j);
                sum.add_assign(&self.bracket_lc(j, i));
                if !sum.is_zero() {
                    report.failures.push(LieFailure::Antisymmetry { i, j });
                }
                if self.form[i][j] != self.form[j][i] {
                    report.failures.push(LieFailure::Symmetry { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    report.checked += 2;
                    if !self.jacobiator(i, j, k).is_zero() {
                        report.failures.push(LieFailure::Jacobi { i, j, k });
                    }
                    // ⟨[x,y],z⟩ = ⟨x,[y,z]⟩
                    let lhs = self.bracket_pairing(i, j, k);
                    let mut rhs = Rational::zero();
                    for (l, c) in &self.brackets[j][k] {
                        rhs += c * &self.form[i][*l];
                    }
                    if lhs != rhs {
                        report.failures.push(LieFailure::Invariance { i, j, k });
                    }
                }
            }
        }
        report
    }

    fn jacobiator(&self, i: usize, j: usize, k: usize) -> Lc<usize> {
        let mut out = Lc::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            // [a, [b, c]]
            for (l, x) in &self.brackets[b][c] {
                for (m, y) in &self.brackets[a][*l] {
                    out.add_term(*m, x * y);
                }
            }
        }
        out
    }

    /// Basis dual to `{Jᵢ}` under the form: `⟨Jᵢ, Jʲ⟩ = δᵢʲ`. `None` if the
    /// form is degenerate.
    pub fn dual_basis(&self) -> Option<Vec<LieElement>> {
        let inv = invert(&self.form)?;
        // Jʲ = Σ_k (G⁻¹)_{kj} J_k
        Some(
            (0..self.dim())
                .map(|j| LieElement { coeffs: (0..self.dim()).map(|k| inv[k][j].clone()).collect() })
                .collect(),
        )
    }
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| String::from(*s)).collect()
}

fn table(n: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::zero(); n]; n]; n]
}

/// `[x_i, x_j] += c x_k` together with its antisymmetric partner.
fn set(s: &mut [Vec<Vec<Rational>>], i: usize, j: usize, k: usize, c: i64) {
    s[i][j][k] += qi(c);
    s[j][i][k] -= qi(c);
}

fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = Rational::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(pivot_row) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// An element of `g` in the chosen basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieElement {
    pub coeffs: Vec<Rational>,
}

impl LieElement {
    pub fn zero(dim: usize) -> Self {
        LieElement { coeffs: vec![Rational::zero(); dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieFailure {
    Antisymmetry { i: usize, j: usize },
    Symmetry { i: usize, j: usize },
    Jacobi { i: usize, j: usize, k: usize },
    Invariance { i: usize, j: usize, k: usize },
}

impl fmt::Display for LieFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieFailure::Antisymmetry { i, j } => write!(f, "antisymmetry ({i},{j})"),
            LieFailure::Symmetry { i, j } => write!(f, "form symmetry ({i},{j})"),
            LieFailure::Jacobi { i, j, k } => write!(f, "jacobi ({i},{j},{k})"),
            LieFailure::Invariance { i, j, k } => write!(f, "invariance ({i},{j},{k})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieReport {
    pub checked: usize,
    pub failures: Vec<LieFailure>,
}

impl LieReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_brackets() {
        let g = LieAlgebra::sl2();
        let (e, h, f) = (g.basis_element(0), g.basis_element(1), g.basis_element(2));
        assert_eq!(g.bracket(&h, &e).unwrap(), e.clone().scaled(2));
        assert!(g.bracket(&e, &e).unwrap().is_zero());
        assert_eq!(g.bracket(&e, &f).unwrap(), h);
    }

    impl LieElement {
        fn scaled(mut self, k: i64) -> Self {
            for c in self.coeffs.iter_mut() {
                *c *= qi(k);
            }
            self
        }
    }

    #[test]
    fn presets_validate() {
        assert!(LieAlgebra::sl2().validate().passed());
        assert!(LieAlgebra::sl3().validate().passed());
        assert!(LieAlgebra::abelian(1).validate().passed());
    }

    #[test]
    fn perturbed_sl2_fails() {
        // rescaling [e,f] is an isomorphism, so tilt it towards e instead
        let g = LieAlgebra::sl2().with_structure_constant(0, 2, 0, qi(1)).with_structure_constant(2, 0, 0, qi(-1));
        let r = g.validate();
        assert!(r.failures.iter().any(|f| matches!(f, LieFailure::Jacobi { .. })));
        assert!(r.failures.iter().any(|f| matches!(f, LieFailure::Invariance { .. })));
        assert!(!r.failures.iter().any(|f| matches!(f, LieFailure::Antisymmetry { .. })));
    }

    #[test]
    fn killing_forms() {
        let g = LieAlgebra::sl2();
        let k = g.killing_form();
        assert_eq!(k[1][1], qi(8));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(k[i][j], g.form(i, j) * qi(4));
            }
        }
        let a = LieAlgebra::abelian(1);
        assert!(a.killing_form()[0][0].is_zero());
        let g3 = LieAlgebra::sl3();
        let k3 = g3.killing_form();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(k3[i][j], g3.form(i, j) * qi(6));
            }
        }
        assert!(g3.clone().with_form(k3).unwrap().validate().passed());
    }

    #[test]
    fn dual_basis_pairs_to_identity() {
        for g in [LieAlgebra::sl2(), LieAlgebra::sl3()] {
            let dual = g.dual_basis().unwrap();
            for i in 0..g.dim() {
                for (j, d) in dual.iter().enumerate() {
                    let p = g.pairing(&g.basis_element(i), d);
                    assert_eq!(p, if i == j { qi(1) } else { qi(0) });
                }
            }
        }
    }
}
