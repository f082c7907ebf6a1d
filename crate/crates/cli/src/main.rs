use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use w3_core::exact::{parse_rational, Poly, Rational, Var};
use w3_core::singvec::{find_singular_in, w0_structure};
use w3_core::w3core::{AlgebraParams, W3Module};
use w3_core::zhu::{self, Strategy, ZhuElement};
use w3_core::{checks, freefield, winf, Error, ENGINE_VERSION};

#[derive(Parser)]
#[command(
    name = "w3",
    version,
    about = "Exact computations for the W3 algebra at c = -2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Singular vectors in a graded component.
    Sing(SingArgs),
    /// Zhu algebra reduction.
    #[command(subcommand)]
    Zhu(ZhuCommand),
    /// The classification curve and its parametrization.
    #[command(subcommand)]
    Curve(CurveCommand),
    /// Free-field realizations.
    #[command(subcommand)]
    Ff(FfCommand),
    /// Differential operators on the circle.
    #[command(subcommand)]
    Winf(WinfCommand),
    /// Run every acceptance check.
    VerifyAll(Output),
}

#[derive(Args, Clone, Copy)]
struct Output {
    /// Emit the machine-readable JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleChoice {
    Vacuum,
    Verma,
}

#[derive(Args)]
struct SingArgs {
    #[arg(long)]
    level: i64,
    #[arg(long, default_value = "-2", value_parser = rational, allow_hyphen_values = true)]
    c: Rational,
    /// `verma` is the Verma module with highest weight (0, 0).
    #[arg(long, value_enum, default_value = "vacuum")]
    module: ModuleChoice,
    #[command(flatten)]
    out: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyChoice {
    Peel,
    Star,
}

#[derive(Subcommand)]
enum ZhuCommand {
    /// Reduce a vacuum vector to a polynomial in t, w.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value = "peel")]
        strategy: StrategyChoice,
        #[command(flatten)]
        out: Output,
    },
    /// The curve polynomial and the images of the level-6 singular vectors.
    Curve(Output),
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Highest weight (t, w) for a rational or symbolic alpha.
    Weights(AlphaArgs),
    /// The other parameter 1 - alpha with the same t.
    Partner {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Rational,
        #[command(flatten)]
        out: Output,
    },
    /// Reduce a polynomial in t, w modulo the curve.
    NormalForm {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct AlphaArgs {
    /// A rational p/q, or `sym` for the symbolic parameter.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[command(flatten)]
    out: Output,
}

#[derive(Subcommand)]
enum FfCommand {
    /// Highest weight of the Fock module, computed on the boson vacuum.
    Weights(AlphaArgs),
    /// Check the W3 relations (and optionally bosonization) on Fock states.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_level: i64,
        #[arg(long)]
        bosonization: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum WinfCommand {
    /// Antisymmetry and Jacobi on seeded random triples.
    Jacobi {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
        #[arg(long, default_value_t = 4)]
        max_grade: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Central charge of W_n from sl_n at level k.
    Dsr {
        #[arg(long)]
        n: i64,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        k: Rational,
        #[command(flatten)]
        out: Output,
    },
    /// Module label and W3 highest weight for (alpha, s).
    Classify {
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        alpha: Rational,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        s: Rational,
        #[command(flatten)]
        out: Output,
    },
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn alpha_poly(text: &str) -> Result<Poly, Error> {
    match text {
        "sym" | "alpha" => Ok(Poly::var(Var::Alpha)),
        _ => parse_rational(text).map(Poly::constant),
    }
}

struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    passed: bool,
    /// Replaces the generic text view when set.
    text: Option<String>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Self {
            command,
            inputs: Map::new(),
            results: Map::new(),
            passed: true,
            text: None,
        }
    }

    fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "exact": true,
            "engineVersion": ENGINE_VERSION,
        })
    }

    fn render_text(&self) -> String {
        if let Some(t) = &self.text {
            return t.clone();
        }
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.results {
            out.push_str(&format!("  {}: {}\n", k, text_value(v)));
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(text_value).collect::<Vec<_>>().join("; "),
        other => other.to_string(),
    }
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Value {
    Value::Array(
        items
            .into_iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}

fn run_sing(a: &SingArgs) -> Result<Report, Error> {
    let params = AlgebraParams::new(a.c.clone())?;
    let (module, name) = match a.module {
        ModuleChoice::Vacuum => (W3Module::vacuum(params.clone()), "vacuum"),
        ModuleChoice::Verma => (
            W3Module::verma(params.clone(), Poly::zero(), Poly::zero()),
            "verma",
        ),
    };
    let mut r = Report::new("sing")
        .input("level", a.level)
        .input("c", a.c.to_string())
        .input("module", name);
    let rep = find_singular_in(&module, a.level)?;
    r.result("kernelDim", rep.kernel_dim);
    r.result("basis", strings(&rep.basis));
    r.result("checkedModes", strings(&rep.checked_modes));
    if a.level == 6
        && rep.kernel_dim == 2
        && module.is_vacuum()
        && params == AlgebraParams::c_minus_two()
    {
        let w0 = w0_structure(&module, &rep.basis[0])?;
        r.result(
            "w0",
            json!({
                "vsToPrime": w0.vs_to_prime.to_string(),
                "primeToVs": w0.prime_to_vs.to_string(),
                "eigenvalues": strings(&w0.eigenvalues),
                "unrescaledEigenvalueSquared": w0.unrescaled_eigenvalue_squared.to_string(),
                "matchesClaimedPlusMinusSix": w0.matches_claimed_plus_minus_six,
            }),
        );
    }
    Ok(r)
}

fn run_zhu(cmd: &ZhuCommand) -> Result<(Report, Output), Error> {
    let z = zhu::c_minus_two();
    match cmd {
        ZhuCommand::Reduce {
            expr,
            strategy,
            out,
        } => {
            let (s, name) = match strategy {
                StrategyChoice::Peel => (Strategy::LeftmostPeel, "peel"),
                StrategyChoice::Star => (Strategy::StarExpansion, "star"),
            };
            let v = z.module().parse_vector(expr)?;
            let class = z.reduce_with(&v, s)?;
            let mut r = Report::new("zhu reduce")
                .input("expr", expr.as_str())
                .input("strategy", name);
            r.result("vector", v.to_string());
            r.result("class", class.to_string());
            r.result("normalForm", zhu::quotient_normal_form(&class).to_string());
            Ok((r, *out))
        }
        ZhuCommand::Curve(out) => {
            let vm = z.module();
            let mut r = Report::new("zhu curve");
            r.result("curve", zhu::curve_poly().generator.to_string());
            r.result(
                "vs",
                z.reduce(&w3_core::w3core::singular_vs(vm))?.to_string(),
            );
            r.result(
                "vsPrime",
                z.reduce(&w3_core::w3core::singular_vs_prime(vm))?
                    .to_string(),
            );
            Ok((r, *out))
        }
    }
}

fn run_curve(cmd: &CurveCommand) -> Result<(Report, Output), Error> {
    match cmd {
        CurveCommand::Weights(a) => {
            let (t, w) = zhu::weight_from_alpha(&alpha_poly(&a.alpha)?);
            let mut r = Report::new("curve weights").input("alpha", a.alpha.as_str());
            r.result("t", t.to_string());
            r.result("w", w.to_string());
            Ok((r, a.out))
        }
        CurveCommand::Partner { alpha, out } => {
            let partner = zhu::iso_partner(alpha);
            let same = zhu::weight_from_alpha_rat(alpha) == zhu::weight_from_alpha_rat(&partner);
            let mut r = Report::new("curve partner").input("alpha", alpha.to_string());
            r.result("partner", partner.to_string());
            r.result("sameWeights", same);
            Ok((r, *out))
        }
        CurveCommand::NormalForm { poly, out } => {
            let p: Poly = poly.parse()?;
            let nf = zhu::quotient_normal_form(&ZhuElement::new(p));
            let mut r = Report::new("curve normal-form").input("poly", poly.as_str());
            r.result("normalForm", nf.to_string());
            Ok((r, *out))
        }
    }
}

fn run_ff(cmd: &FfCommand) -> Result<(Report, Output), Error> {
    match cmd {
        FfCommand::Weights(a) => {
            let (t, w) = freefield::highest_weight(&alpha_poly(&a.alpha)?);
            let mut r = Report::new("ff weights").input("alpha", a.alpha.as_str());
            r.result("t", t.to_string());
            r.result("w", w.to_string());
            Ok((r, a.out))
        }
        FfCommand::Verify {
            max_level,
            bosonization,
            out,
        } => {
            let mut r = Report::new("ff verify")
                .input("maxLevel", *max_level)
                .input("bosonization", *bosonization);
            let rel = freefield::verify_w3_relations(*max_level)?;
            r.result(
                "relations",
                json!({
                    "pairsChecked": rel.pairs_checked,
                    "statesChecked": rel.states_checked,
                    "mismatches": strings(rel.mismatches.iter().map(|m| format!("{} on {}", m.operator, m.state))),
                    "ok": rel.ok(),
                }),
            );
            r.passed &= rel.ok();
            if *bosonization {
                let b = freefield::verify_bosonization(*max_level)?;
                let levels: Vec<Value> = b
                    .levels
                    .iter()
                    .map(|d| json!({"level": d.level, "boson": d.boson, "fermion": d.fermion, "rank": d.rank}))
                    .collect();
                r.result(
                    "bosonization",
                    json!({
                        "levels": levels,
                        "operatorsChecked": b.operators_checked,
                        "mismatches": strings(b.mismatches.iter().map(|m| format!("{} on {}", m.operator, m.state))),
                        "ok": b.ok(),
                    }),
                );
                r.passed &= b.ok();
            }
            Ok((r, *out))
        }
    }
}

fn run_winf(cmd: &WinfCommand) -> Result<(Report, Output), Error> {
    match cmd {
        WinfCommand::Jacobi {
            samples,
            seed,
            max_deg,
            max_grade,
            out,
        } => {
            let rep = winf::check_jacobi(*samples, *seed, *max_grade, *max_deg);
            let mut r = Report::new("winf jacobi")
                .input("samples", *samples)
                .input("seed", *seed)
                .input("maxDeg", *max_deg)
                .input("maxGrade", *max_grade);
            r.result("antisymmetryFailures", rep.antisymmetry_failures);
            r.result("jacobiFailures", rep.jacobi_failures);
            r.result("gradingFailures", rep.grading_failures);
            r.result("ok", rep.ok());
            r.passed = rep.ok();
            Ok((r, *out))
        }
        WinfCommand::Dsr { n, k, out } => {
            let c = winf::dsr_central_charge(*n, k)?;
            let mut r = Report::new("winf dsr")
                .input("n", *n)
                .input("k", k.to_string());
            r.result("c", c.to_string());
            Ok((r, *out))
        }
        WinfCommand::Classify { alpha, s, out } => {
            let l = winf::classify(alpha, s)?;
            let mut r = Report::new("winf classify")
                .input("alpha", alpha.to_string())
                .input("s", s.to_string());
            r.result("alpha", l.alpha.to_string());
            r.result("s", l.s.to_string());
            r.result("t", l.t.to_string());
            r.result("w", l.w.to_string());
            Ok((r, *out))
        }
    }
}

fn run_verify_all() -> Result<Report, Error> {
    let outcomes = checks::verify_all()?;
    let mut r = Report::new("verify-all");
    let items: Vec<Value> = outcomes
        .iter()
        .map(|o| json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}))
        .collect();
    r.passed = outcomes.iter().all(|o| o.passed);
    let mut text = String::new();
    for o in &outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        text.push_str(&format!("{} {:>2} {}: {}\n", mark, o.id, o.title, o.detail));
    }
    r.text = Some(text);
    r.result("criteria", items);
    r.result("passed", r.passed);
    Ok(r)
}

fn dispatch(cli: &Cli) -> Result<(Report, Output), Error> {
    match &cli.command {
        Command::Sing(a) => Ok((run_sing(a)?, a.out)),
        Command::Zhu(c) => run_zhu(c),
        Command::Curve(c) => run_curve(c),
        Command::Ff(c) => run_ff(c),
        Command::Winf(c) => run_winf(c),
        Command::VerifyAll(out) => Ok((run_verify_all()?, *out)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((report, out)) => {
            let body = if out.json {
                let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
                s.push('\n');
                s
            } else {
                report.render_text()
            };
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().write_all(body.as_bytes());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
