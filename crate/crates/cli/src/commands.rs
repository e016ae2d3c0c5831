use std::ffi::OsString;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use toroidal_core::functor::{self, specialize_level, ChainRule, InducedHom};
use toroidal_core::kaehler::{self, graded_dimension};
use toroidal_core::lie::LieReport;
use toroidal_core::vacuum;
use toroidal_core::{
    CeConvention, CocycleVariant, Exponent, LieAlgebra, Prediction, Rational, Report, RingSpec, ToroidalAlgebra,
    VacuumModule, VacuumState, Window,
};

use crate::{lie_file, parse, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

/// What a run printed and how it ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "toroidal", version, about = "Toroidal Lie algebras, Kähler differentials and vacuum modules")]
struct Cli {
    /// Machine-readable output (compact JSON, sorted keys).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a Lie algebra with invariant form.
    Validate(LieArg),
    /// Bracket of two elements of the central extension.
    Bracket {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Normal form of a differential modulo exact forms.
    Nf {
        #[arg(long, default_value = "laurent:t")]
        ring: String,
        #[arg(long)]
        expr: String,
    },
    /// Graded dimensions of the central term over a box of degrees.
    Dim {
        #[arg(long, default_value = "laurent:t")]
        ring: String,
        /// Degrees range over `[-N, N]` in each coordinate.
        #[arg(long = "box", default_value_t = 3)]
        radius: i64,
    },
    /// Apply a sequence of modes to the vacuum (rightmost first).
    Act {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long)]
        modes: String,
        /// Specialize weight-0 central factors, e.g. `chi: 1 -> 1`.
        #[arg(long)]
        chi: Option<String>,
    },
    /// Commutator and locality of two fields on a window.
    Ope {
        #[command(flatten)]
        ctx: Ctx,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long, default_value_t = 3)]
        max_weight: i64,
        #[command(flatten)]
        fiber: Fiber,
        #[arg(long, value_enum, default_value_t = PredictionArg::Exact)]
        prediction: PredictionArg,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Ranks of the weight pieces of the affine vacuum module.
    Character {
        #[command(flatten)]
        lie: LieArg,
        #[arg(long, default_value_t = 4)]
        max_weight: i64,
    },
}

#[derive(Args)]
struct LieArg {
    /// Preset (`sl2`, `sl3`, `abelian:N`) or path to a JSON description.
    #[arg(long, default_value = "sl2")]
    lie: String,
}

#[derive(Args)]
struct Ctx {
    /// Ring, e.g. `laurent:x,t;t=t`.
    #[arg(long, default_value = "laurent:t")]
    ring: String,
    #[command(flatten)]
    lie: LieArg,
}

#[derive(Args, Clone, Copy)]
struct Fiber {
    /// Largest |exponent| of a fiber variable in one generator.
    #[arg(long, default_value_t = 1)]
    radius: i64,
    /// Total fiber degree allowed in one checked instance.
    #[arg(long, default_value_t = 2)]
    budget: i64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lie,
    Jacobi,
    Cocycle,
    H0,
    Module,
    Commutator,
    Locality,
    Vacuum,
    Exactness,
    Translation,
    Functor,
    Functoriality,
    Embedding,
    Sugawara,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PredictionArg {
    Exact,
    DropDerivative,
    Mirrored,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    Coderivation,
    Classical,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Standard,
    DropHalf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[command(flatten)]
    ctx: Ctx,
    /// Degree bound for the algebra suites, weight bound for the module ones.
    #[arg(long, default_value_t = 3)]
    bound: i64,
    #[command(flatten)]
    fiber: Fiber,
    #[arg(long)]
    field: Option<String>,
    #[arg(long)]
    field2: Option<String>,
    /// `hom: x -> y^2; t -> t`; its source is `--ring`.
    #[arg(long)]
    hom: Option<String>,
    /// Second hom for `functoriality`, from `--target` to `--target2`.
    #[arg(long)]
    hom2: Option<String>,
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    target2: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    level: String,
    #[arg(long, value_enum, default_value_t = PredictionArg::Exact)]
    prediction: PredictionArg,
    #[arg(long, value_enum, default_value_t = ConventionArg::Coderivation)]
    convention: ConventionArg,
    #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
    variant: VariantArg,
    /// Take dψ(x) as if every exponent of ψ(x) were one.
    #[arg(long)]
    drop_chain_rule: bool,
    /// Central factors of weight 0 allowed in module states.
    #[arg(long, default_value_t = 0)]
    level_factors: usize,
    /// Failures listed in the output.
    #[arg(long, default_value_t = 20)]
    max_failures: usize,
}

/// Parse `args` (program name first) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = Outcome::default();
    let started = Instant::now();
    match execute(&cli, &mut out) {
        Ok(pass) => out.code = if pass { EXIT_OK } else { EXIT_FAILED },
        Err(msg) => {
            out.code = EXIT_USAGE;
            let _ = writeln!(out.stderr, "error: {msg}");
        }
    }
    if matches!(cli.command, Command::Verify(_) | Command::Ope { .. }) {
        let _ = writeln!(out.stderr, "elapsed {:.3}s", started.elapsed().as_secs_f64());
    }
    out
}

type CmdResult = Result<bool, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn ring(spec: &str) -> Result<Arc<RingSpec>, String> {
    parse::parse_ring(spec).map_err(|e| format!("ring `{spec}`: {e}"))
}

fn lie(arg: &LieArg) -> Result<Arc<LieAlgebra>, String> {
    lie_file::load(&arg.lie).map(Arc::new)
}

fn module(ctx: &Ctx) -> Result<VacuumModule, String> {
    VacuumModule::new(lie(&ctx.lie)?, ring(&ctx.ring)?).map_err(err)
}

fn field(src: &str, m: &VacuumModule) -> Result<toroidal_core::FieldSpec, String> {
    parse::parse_field(src, m).map_err(|e| format!("field `{src}`: {e}"))
}

fn print(out: &mut Outcome, json: bool, value: Value, text: String) {
    if json {
        out.stdout.push_str(&value.to_string());
        out.stdout.push('\n');
    } else {
        out.stdout.push_str(&text);
        if !text.ends_with('\n') {
            out.stdout.push('\n');
        }
    }
}

fn report_json(r: &Report, cap: usize) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .take(cap)
        .map(|f| json!({"identity": f.identity, "tuple": f.tuple, "lhs": f.lhs, "rhs": f.rhs}))
        .collect();
    json!({
        "suite": r.suite,
        "checked": r.checked,
        "failed": r.failures.len(),
        "failures": failures,
        "notes": r.notes,
        "pass": r.passed(),
    })
}

fn report_text(r: &Report, cap: usize) -> String {
    let mut s = String::new();
    if r.passed() {
        let _ = writeln!(s, "{}: PASS ({} checked)", r.suite, r.checked);
    } else {
        let _ = writeln!(s, "{}: FAIL ({} of {} failed)", r.suite, r.failures.len(), r.checked);
        for f in r.failures.iter().take(cap) {
            let _ = writeln!(s, "  {} at {}", f.identity, f.tuple);
            let _ = writeln!(s, "    lhs = {}", f.lhs);
            let _ = writeln!(s, "    rhs = {}", f.rhs);
        }
        if r.failures.len() > cap {
            let _ = writeln!(s, "  ... {} more", r.failures.len() - cap);
        }
    }
    for n in &r.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

fn lie_report(r: &LieReport) -> Report {
    let mut out = Report::new("lie");
    out.checked = r.checked;
    for f in &r.failures {
        out.failures.push(toroidal_core::Instance {
            identity: f.to_string(),
            tuple: String::new(),
            lhs: String::new(),
            rhs: String::new(),
            pass: false,
        });
    }
    out
}

fn emit_reports(out: &mut Outcome, json: bool, reports: &[Report], cap: usize) -> bool {
    let pass = reports.iter().all(Report::passed);
    let value = if reports.len() == 1 {
        report_json(&reports[0], cap)
    } else {
        Value::Array(reports.iter().map(|r| report_json(r, cap)).collect())
    };
    let text = reports.iter().map(|r| report_text(r, cap)).collect::<String>();
    print(out, json, value, text);
    pass
}

fn execute(cli: &Cli, out: &mut Outcome) -> CmdResult {
    let json = cli.json;
    match &cli.command {
        Command::Validate(arg) => {
            let l = lie(arg)?;
            let r = lie_report(&l.validate());
            Ok(emit_reports(out, json, &[r], usize::MAX))
        }
        Command::Bracket { ctx, a, b } => {
            let (r, l) = (ring(&ctx.ring)?, lie(&ctx.lie)?);
            let x = parse::parse_toroidal(a, &r, &l).map_err(|e| format!("--a: {e}"))?;
            let y = parse::parse_toroidal(b, &r, &l).map_err(|e| format!("--b: {e}"))?;
            let z = ToroidalAlgebra::new(l, r).bracket_hat(&x, &y).map_err(err)?;
            print(out, json, json!({"a": x.to_string(), "b": y.to_string(), "bracket": z.to_string()}), z.to_string());
            Ok(true)
        }
        Command::Nf { ring: spec, expr } => {
            let r = ring(spec)?;
            let w = parse::parse_kaehler(expr, &r).map_err(|e| format!("--expr: {e}"))?;
            let nf = kaehler::normal_form(&w);
            print(
                out,
                json,
                json!({"input": w.to_string(), "nf": nf.to_string(), "exact": nf.is_zero()}),
                nf.to_string(),
            );
            Ok(true)
        }
        Command::Dim { ring: spec, radius } => {
            let r = ring(spec)?;
            if *radius < 0 {
                return Err("--box must be non-negative".into());
            }
            let lo = Exponent(r.vars().iter().map(|v| if v.invertible { -radius } else { 0 }).collect());
            let hi = Exponent(vec![*radius; r.nvars()]);
            let dims = graded_dimension(&r, &lo, &hi);
            let value = Value::Array(dims.iter().map(|(m, d)| json!({"degree": m.0, "dim": d})).collect());
            let mut text = String::new();
            for (m, d) in &dims {
                let deg: Vec<String> = m.0.iter().map(i64::to_string).collect();
                let _ = writeln!(text, "({}) {d}", deg.join(","));
            }
            print(out, json, value, text);
            Ok(true)
        }
        Command::Act { ctx, modes, chi } => {
            let m = module(ctx)?;
            let ms = parse::parse_modes(modes, &m).map_err(|e| format!("--modes: {e}"))?;
            let mut v = VacuumState::vacuum();
            for (f, n) in ms.iter().rev() {
                v = m.act_mode(&m.field_mode(f, *n), &v).map_err(err)?;
            }
            if let Some(c) = chi {
                let chi = parse::parse_chi(c, m.ring()).map_err(|e| format!("--chi: {e}"))?;
                v = specialize_level(&chi, &m, &v);
            }
            let s = m.format_state(&v);
            print(out, json, json!({"state": s, "weight": vacuum::homogeneous_weight(&v)}), s.clone());
            Ok(true)
        }
        Command::Ope { ctx, f1, f2, max_weight, fiber, prediction } => {
            let m = module(ctx)?;
            let (f, g) = (field(f1, &m)?, field(f2, &m)?);
            let w = Window::new(*max_weight).with_fiber(fiber.radius, fiber.budget);
            let reports = [m.commutator_check(&f, &g, &w, prediction_of(*prediction)), m.locality_check(&f, &g, &w)];
            Ok(emit_reports(out, json, &reports, 20))
        }
        Command::Verify(args) => verify(args, json, out),
        Command::Character { lie: arg, max_weight } => {
            let l = lie(arg)?;
            if *max_weight < 0 {
                return Err("--max-weight must be non-negative".into());
            }
            let ranks: Vec<usize> = vacuum::character(&l, *max_weight).into_iter().map(|(_, r)| r).collect();
            let text = ranks.iter().enumerate().map(|(w, r)| format!("{w} {r}\n")).collect();
            print(out, json, json!(ranks), text);
            Ok(true)
        }
    }
}

fn prediction_of(p: PredictionArg) -> Prediction {
    match p {
        PredictionArg::Exact => Prediction::Exact,
        PredictionArg::DropDerivative => Prediction::DropDerivative,
        PredictionArg::Mirrored => Prediction::MirroredDerivative,
    }
}

fn verify(a: &VerifyArgs, json: bool, out: &mut Outcome) -> CmdResult {
    let window = Window::new(a.bound).with_fiber(a.fiber.radius, a.fiber.budget).with_level_factors(a.level_factors);
    let need = |o: &Option<String>, flag: &str| o.clone().ok_or_else(|| format!("this suite needs --{flag}"));
    let algebra = || -> Result<ToroidalAlgebra, String> {
        let variant = match a.variant {
            VariantArg::Standard => CocycleVariant::Standard,
            VariantArg::DropHalf => CocycleVariant::DropHalf,
        };
        Ok(ToroidalAlgebra::new(lie(&a.ctx.lie)?, ring(&a.ctx.ring)?).with_variant(variant))
    };
    let report = match a.suite {
        Suite::Lie => lie_report(&lie(&a.ctx.lie)?.validate()),
        Suite::Jacobi => algebra()?.jacobi_suite(a.bound),
        Suite::Cocycle => {
            let conv = match a.convention {
                ConventionArg::Coderivation => CeConvention::Coderivation,
                ConventionArg::Classical => CeConvention::Classical,
            };
            algebra()?.cocycle_check(a.bound, conv)
        }
        Suite::H0 => algebra()?.h0_iso_check(a.bound),
        Suite::Module => module(&a.ctx)?.module_axiom_check(&window),
        Suite::Exactness => module(&a.ctx)?.exactness_check(a.fiber.radius, a.bound),
        Suite::Commutator | Suite::Locality => {
            let m = module(&a.ctx)?;
            let f = field(&need(&a.field, "field")?, &m)?;
            let g = field(&need(&a.field2, "field2")?, &m)?;
            if a.suite == Suite::Commutator {
                m.commutator_check(&f, &g, &window, prediction_of(a.prediction))
            } else {
                m.locality_check(&f, &g, &window)
            }
        }
        Suite::Vacuum | Suite::Translation => {
            let m = module(&a.ctx)?;
            let f = field(&need(&a.field, "field")?, &m)?;
            if a.suite == Suite::Vacuum {
                m.vacuum_axiom_check(&f, &window)
            } else {
                m.translation_axiom_check(&f, &window)
            }
        }
        Suite::Functor | Suite::Functoriality => {
            let (src, tgt) = (ring(&a.ctx.ring)?, ring(&need(&a.target, "target")?)?);
            let h = need(&a.hom, "hom")?;
            let psi = parse::parse_hom(&h, &src, &tgt).map_err(|e| format!("--hom: {e}"))?;
            let l = lie(&a.ctx.lie)?;
            if a.suite == Suite::Functor {
                let chain = if a.drop_chain_rule { ChainRule::Dropped } else { ChainRule::Applied };
                InducedHom::new(l, psi).map_err(err)?.with_chain_rule(chain).intertwines_check(&window)
            } else {
                let tgt2 = ring(&need(&a.target2, "target2")?)?;
                let h2 = need(&a.hom2, "hom2")?;
                let psi2 = parse::parse_hom(&h2, &tgt, &tgt2).map_err(|e| format!("--hom2: {e}"))?;
                functor::functoriality_check(l, psi, psi2, &window).map_err(err)?
            }
        }
        Suite::Embedding => {
            let tgt = ring(&need(&a.target, "target")?)?;
            functor::embedding_check(lie(&a.ctx.lie)?, &tgt, &window).map_err(err)?
        }
        Suite::Sugawara => {
            let k: Rational =
                a.level.trim().parse().map_err(|_| format!("--level: `{}` is not a rational", a.level))?;
            functor::sugawara_check(lie(&a.ctx.lie)?, k, a.bound).map_err(err)?
        }
    };
    Ok(emit_reports(out, json, &[report], a.max_failures))
}
