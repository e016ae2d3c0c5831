//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use toroidal_cli::parse::{parse_element, parse_field, parse_ring, Context};
use toroidal_core::functor::{embedding_check, hom_intertwines_check, sugawara_check, ChainRule, InducedHom};
use toroidal_core::kaehler::graded_dimension;
use toroidal_core::vacuum::character;
use toroidal_core::{
    CeConvention, Error, Exponent, FieldSpec, LieAlgebra, Rational, Report, RingHom, RingSpec, ToroidalAlgebra,
    VacuumModule, VacuumState, Window,
};

mod common;

type Outcome = Result<String, String>;

fn require(r: &Report) -> Result<(), String> {
    match r.failures.first() {
        None => Ok(()),
        Some(f) => Err(format!(
            "{}: {} of {} failed, first {} at {} ({} vs {})",
            r.suite,
            r.failures.len(),
            r.checked,
            f.identity,
            f.tuple,
            f.lhs,
            f.rhs
        )),
    }
}

fn ring(s: &str) -> Arc<RingSpec> {
    parse_ring(s).unwrap()
}

fn sl2() -> Arc<LieAlgebra> {
    Arc::new(LieAlgebra::sl2())
}

fn fibered() -> VacuumModule {
    VacuumModule::new(sl2(), ring("laurent:x,t")).unwrap()
}

fn fields(m: &VacuumModule) -> Vec<FieldSpec> {
    ["J[e;u=x]", "J[f;u=x^-1]", "J[h]", "Kdt[u=x]", "Kom[w=x^-1*dx]"]
        .iter()
        .map(|s| parse_field(s, m).unwrap())
        .collect()
}

fn c1_lie_presets() -> Outcome {
    let mut checked = 0;
    for l in [LieAlgebra::sl2(), LieAlgebra::sl3()] {
        let r = l.validate();
        if !r.passed() {
            return Err(format!("{}", r.failures[0]));
        }
        checked += r.checked;
    }
    let g = LieAlgebra::sl2();
    let four = Rational::from_integer(4.into());
    let k = g.killing_form();
    for i in 0..3 {
        for j in 0..3 {
            if k[i][j] != g.form(i, j) * &four {
                return Err(format!("Killing({i},{j}) = {}", k[i][j]));
            }
        }
    }
    Ok(format!("{checked} axiom instances, Killing = 4 x trace"))
}

fn c2_residue() -> Outcome {
    let r = ring("laurent:t");
    let dims = graded_dimension(&r, &Exponent(vec![-10]), &Exponent(vec![10]));
    for (m, d) in &dims {
        let want = usize::from(m.0[0] == 0);
        if *d != want {
            return Err(format!("degree {} has dimension {d}", m.0[0]));
        }
    }
    Ok(format!("{} degrees", dims.len()))
}

/// Rank of the integer matrix by fraction-free elimination.
fn int_rank(mut rows: Vec<Vec<i64>>) -> usize {
    let mut rank = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let (a, b) = (rows[rank][c], rows[r][c]);
                for k in 0..cols {
                    rows[r][k] = rows[r][k] * a - rows[rank][k] * b;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn c3_toroidal_dims() -> Outcome {
    let mut total = 0;
    for spec in ["laurent:t0,t1", "laurent:t0,t1,t2"] {
        let r = ring(spec);
        let n1 = r.nvars();
        let dims = graded_dimension(&r, &Exponent(vec![-3; n1]), &Exponent(vec![3; n1]));
        for (m, d) in &dims {
            // degree-m forms: x^{m - e_i} dx_i; relation: d(x^m) = Σ m_i x^{m-e_i} dx_i
            let oracle = n1 - int_rank(vec![m.0.clone()]);
            let expected = if m.is_zero() { n1 } else { n1 - 1 };
            if *d != oracle || *d != expected {
                return Err(format!("{spec} degree {:?}: {d}, oracle {oracle}", m.0));
            }
        }
        total += dims.len();
    }
    Ok(format!("{total} degrees"))
}

fn c4_jacobi() -> Outcome {
    let a = ToroidalAlgebra::new(sl2(), ring("laurent:t")).jacobi_suite(2);
    let b = ToroidalAlgebra::new(sl2(), ring("laurent:t0,t1")).jacobi_suite(1);
    require(&a)?;
    require(&b)?;
    Ok(format!("{} + {} triples", a.checked, b.checked))
}

fn c5_cocycle() -> Outcome {
    let alg = ToroidalAlgebra::new(sl2(), ring("laurent:t"));
    let r = alg.cocycle_check(2, CeConvention::Coderivation);
    require(&r)?;
    let mutated = alg.cocycle_check(2, CeConvention::Classical);
    if mutated.passed() {
        return Err("sign mutation was not detected".into());
    }
    Ok(format!("{} tuples; mutation fails {} of {}", r.checked, mutated.failures.len(), mutated.checked))
}

fn c6_h0() -> Outcome {
    let r = ToroidalAlgebra::new(sl2(), ring("laurent:t")).h0_iso_check(2);
    require(&r)?;
    Ok(format!("{} pairs", r.checked))
}

fn c7_module_axiom() -> Outcome {
    let a = VacuumModule::affine(sl2()).module_axiom_check(&Window::new(3));
    require(&a)?;
    let b = fibered().module_axiom_check(&Window::new(3).with_fiber(2, 2));
    require(&b)?;
    Ok(format!("A = Q: {}, A = Q[x^±1]: {}", a.checked, b.checked))
}

fn ope_window() -> Window {
    Window::new(3).with_fiber(1, 3)
}

fn c8_commutators() -> Outcome {
    let m = fibered();
    let fs = fields(&m);
    let mut checked = 0;
    for f in &fs {
        for g in &fs {
            let r = m.commutator_check(f, g, &ope_window(), Default::default());
            require(&r)?;
            checked += r.checked;
            let central = |x: &FieldSpec| !matches!(x, FieldSpec::J { .. });
            if central(f) || central(g) {
                for n in -3..=3 {
                    let (l, c) = m.predicted_commutator(f, g, n, -n, Default::default());
                    if !l.is_zero() || !c.is_zero() {
                        return Err(format!("{} and {} do not commute", m.format_field(f), m.format_field(g)));
                    }
                }
            }
        }
    }
    Ok(format!("{} ordered pairs, {checked} instances", fs.len() * fs.len()))
}

fn c9_locality() -> Outcome {
    let m = fibered();
    let fs = fields(&m);
    let mut checked = 0;
    for f in &fs {
        for g in &fs {
            let r = m.locality_check(f, g, &ope_window());
            require(&r)?;
            checked += r.checked;
        }
    }
    Ok(format!("{checked} instances"))
}

fn c10_exactness() -> Outcome {
    let mut checked = 0;
    for spec in ["laurent:x,t", "laurent:x,y,t"] {
        let m = VacuumModule::new(sl2(), ring(spec)).unwrap();
        let r = m.exactness_check(3, 5);
        require(&r)?;
        checked += r.checked;
    }
    Ok(format!("{checked} pairs (u, n)"))
}

fn c11_translation() -> Outcome {
    let m = fibered();
    if !m.apply_t(&VacuumState::vacuum()).is_zero() {
        return Err("T|0> != 0".into());
    }
    let w = Window::new(3).with_fiber(1, 2);
    let mut checked = 0;
    for src in ["J[e;u=x]", "Kdt[u=x]", "Kom[w=x^-1*dx]"] {
        let f = parse_field(src, &m).unwrap();
        let r = m.translation_axiom_check(&f, &w);
        require(&r)?;
        checked += r.checked;
    }
    Ok(format!("{checked} instances"))
}

/// Coefficients of Π_{k≥1} (1 − q^k)^{−d} up to q^w.
fn product_oracle(d: usize, w: usize) -> Vec<usize> {
    let mut c = vec![0usize; w + 1];
    c[0] = 1;
    for k in 1..=w {
        for _ in 0..d {
            for n in k..=w {
                c[n] += c[n - k];
            }
        }
    }
    c
}

fn c12_character() -> Outcome {
    let ranks: Vec<usize> = character(&LieAlgebra::sl2(), 4).into_iter().map(|(_, r)| r).collect();
    if ranks != [1, 3, 9, 22, 51] || ranks != product_oracle(3, 4) {
        return Err(format!("{ranks:?}"));
    }
    Ok(format!("{ranks:?}"))
}

fn c13_functor() -> Outcome {
    let (src, tgt) = (ring("laurent:x,t"), ring("laurent:y,t"));
    let ctx = Context { ring: &tgt, lie: None };
    let image = |s: &str| match parse_element(s, ctx).unwrap() {
        toroidal_cli::parse::Element::Ring(r) => r,
        _ => unreachable!(),
    };
    let psi = RingHom::new(&src, &tgt, vec![image("y^2"), image("t")]).unwrap();
    let w = Window::new(3).with_fiber(1, 1);
    let r = hom_intertwines_check(sl2(), psi.clone(), &w).map_err(|e| e.to_string())?;
    require(&r)?;
    let dropped = InducedHom::new(sl2(), psi).unwrap().with_chain_rule(ChainRule::Dropped).intertwines_check(&w);
    if dropped.passed() {
        return Err("dropped chain rule was not detected".into());
    }
    let e = embedding_check(sl2(), &src, &Window::new(4)).map_err(|e| e.to_string())?;
    require(&e)?;
    Ok(format!("{} intertwining instances, {} weight pieces injective", r.checked, e.checked))
}

fn c14_sugawara() -> Outcome {
    let r = sugawara_check(sl2(), Rational::from_integer(1.into()), 2).map_err(|e| e.to_string())?;
    require(&r)?;
    match sugawara_check(sl2(), Rational::from_integer((-2).into()), 2) {
        Err(Error::CriticalLevel) => {}
        other => return Err(format!("K = -2 gave {:?}", other.map(|r| r.passed()))),
    }
    Ok(format!("{} instances, {}", r.checked, r.notes.join("; ")))
}

fn c15_cli() -> Outcome {
    let rings = common::rings();
    let lie = sl2();
    for (ri, src) in common::CORPUS {
        let ctx = Context { ring: &rings[*ri], lie: Some(&lie) };
        let a = parse_element(src, ctx).map_err(|e| format!("{src}: {e}"))?;
        let b = parse_element(&a.to_string(), ctx).map_err(|e| format!("{a}: {e}"))?;
        if a != b || a.to_string() != b.to_string() {
            return Err(format!("{src} does not round-trip"));
        }
    }
    let exe = env!("CARGO_BIN_EXE_toroidal");
    let run = |args: &[&str]| Command::new(exe).args(args).output().expect("spawn toroidal");
    let json_cases: &[&[&str]] = &[
        &["--json", "character", "--max-weight", "4"],
        &["--json", "verify", "cocycle", "--bound", "1"],
        &["--json", "bracket", "--a", "J[e]*t^2 + t^-1*dt", "--b", "J[f]*t^-2"],
    ];
    for args in json_cases {
        let (x, y) = (run(args), run(args));
        if x.stdout != y.stdout || x.stdout.is_empty() {
            return Err(format!("{args:?}: output differs between runs"));
        }
        let v: serde_json::Value = serde_json::from_slice(&x.stdout).map_err(|e| e.to_string())?;
        if format!("{v}\n").into_bytes() != x.stdout {
            return Err(format!("{args:?}: not canonical JSON"));
        }
    }
    let codes: &[(&[&str], i32)] = &[
        (&["verify", "jacobi", "--bound", "1"], 0),
        (&["verify", "cocycle", "--bound", "1", "--convention", "classical"], 1),
        (&["nf", "--expr", "t^-1*dt +"], 2),
        (&["verify", "no-such-suite"], 2),
        (&["verify", "sugawara", "--level", "-2"], 2),
        (&["--help"], 0),
    ];
    for (args, want) in codes {
        let got = run(args).status.code();
        if got != Some(*want) {
            return Err(format!("{args:?} exited with {got:?}, expected {want}"));
        }
    }
    Ok(format!("{} expressions, {} JSON commands, {} exit codes", common::CORPUS.len(), json_cases.len(), codes.len()))
}

fn main() -> ExitCode {
    let criteria: &[(&str, u64, fn() -> Outcome)] = &[
        ("Lie presets and Killing form", 1, c1_lie_presets),
        ("residue case Q[t^±1]", 1, c2_residue),
        ("toroidal central dimensions", 5, c3_toroidal_dims),
        ("Jacobi for the central extension", 30, c4_jacobi),
        ("cocycle identities and sign mutation", 60, c5_cocycle),
        ("H^0 bracket identification", 10, c6_h0),
        ("module axiom", 60, c7_module_axiom),
        ("generating-field commutators", 60, c8_commutators),
        ("locality N = 2", 60, c9_locality),
        ("exact forms act by zero", 1, c10_exactness),
        ("translation axioms", 30, c11_translation),
        ("character of V(sl2^)", 5, c12_character),
        ("functoriality and embedding", 60, c13_functor),
        ("Sugawara vector", 60, c14_sugawara),
        ("CLI contract", 5, c15_cli),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => {
                Err(format!("{detail}; took {:.2}s, limit {limit}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("[{:>2}] PASS {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[{:>2}] FAIL {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
