use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qec_core::aq::{self, is_sigma_witness, is_z_witness, sigma_divide, z_divide, DivMode};
use qec_core::cohomology::{cohomology_within, euler_form_within};
use qec_core::ideals::Bounds;
use qec_core::modules::{
    pic_class, pic_inv, pic_mul, ModuleDescriptor, ModulePresentation, PicClass, RankS,
};
use qec_core::scalars::set_q;
use qec_core::verify::verify_suite;
use qec_core::{AqElement, Error, QParam, Scalar};

/// Bumped whenever the shape of `--json` output changes.
const FORMAT_VERSION: u64 = 1;

#[derive(Parser)]
#[command(
    name = "qec",
    version,
    about = "Exact computations over the quantum torus σz = qzσ"
)]
struct Cli {
    /// Deformation parameter, a rational other than 0, 1 and -1.
    #[arg(long, global = true, env = "QEC_Q", default_value = "2")]
    q: String,
    /// Versioned JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 when an answer is not certified.
    #[arg(long, global = true)]
    strict: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long = "bound-sigma", global = true)]
    bound_sigma: Option<usize>,
    #[arg(long = "bound-z", global = true)]
    bound_z: Option<usize>,
    #[arg(long, global = true)]
    window: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression in z, s (for σ) and q.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Division with remainder `g·r = h·w + rem`.
    Div {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Which extreme coefficient of `w` is eliminated.
        #[arg(long, value_enum, default_value = "top")]
        side: Side,
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        w: String,
    },
    Mod {
        #[command(subcommand)]
        command: ModCommand,
    },
    Dual {
        module: String,
    },
    Tensor {
        a: String,
        b: String,
    },
    Hom {
        a: String,
        b: String,
    },
    /// h⁰, h¹ and χ of a module.
    Coh {
        module: String,
    },
    /// χ(A, B) = −rk_S Hom(A, B).
    Euler {
        a: String,
        b: String,
    },
    /// Picard group of line bundles `σ(1) = c·z^m`.
    Pic {
        #[command(subcommand)]
        op: PicOp,
    },
    /// Runs a randomized property suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

#[derive(Subcommand)]
enum ModCommand {
    /// Ranks, class and goodness of a module.
    Info { module: String },
}

#[derive(Subcommand)]
enum PicOp {
    Class {
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_negative_numbers = true)]
        m: i64,
    },
    Inv {
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_negative_numbers = true)]
        m: i64,
    },
    Mul {
        #[arg(allow_hyphen_values = true)]
        c1: String,
        #[arg(allow_negative_numbers = true)]
        m1: i64,
        #[arg(allow_hyphen_values = true)]
        c2: String,
        #[arg(allow_negative_numbers = true)]
        m2: i64,
    },
    Eq {
        #[arg(allow_hyphen_values = true)]
        c1: String,
        #[arg(allow_negative_numbers = true)]
        m1: i64,
        #[arg(allow_hyphen_values = true)]
        c2: String,
        #[arg(allow_negative_numbers = true)]
        m2: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Sigma,
    Z,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Top,
    Bottom,
}

enum Failure {
    Usage(String),
    Computation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchExhausted { .. } | Error::NonSplitSpectrum => {
                Failure::Computation(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// A command result in both renderings. `definite` is false for answers
/// that are not certified.
struct Output {
    text: String,
    json: Value,
    definite: bool,
}

impl Output {
    fn definite(text: String, json: Value) -> Self {
        Output {
            text,
            json,
            definite: true,
        }
    }

    fn structured(json: Value, definite: bool) -> Self {
        Output {
            text: json.to_string(),
            json,
            definite,
        }
    }
}

fn module(text: &str) -> Result<ModulePresentation, Failure> {
    Ok(ModuleDescriptor::parse_json(text)?.to_module()?)
}

fn descriptor(m: &ModulePresentation) -> Output {
    Output::structured(ModuleDescriptor::from_module(m).to_json(), true)
}

fn scalar(text: &str) -> Result<Scalar, Failure> {
    let c: Scalar = text.parse()?;
    if c.is_zero() {
        return Err(Error::ZeroInput.into());
    }
    Ok(c)
}

fn pic_output(p: &PicClass) -> Output {
    Output::definite(
        format!("c={} m={}", p.c_rep, p.m),
        json!({"c": p.c_rep.to_string(), "m": p.m}),
    )
}

fn info(m: &ModulePresentation, bounds: &Bounds) -> Output {
    let rank_s = m.rank_s_within(bounds);
    let (exact, upper) = match rank_s {
        RankS::Exact(r) => (Some(r), Some(r)),
        RankS::Unknown { upper_bound } => (None, upper_bound),
    };
    let mut v = json!({
        "kind": m.kind(),
        "rank_a": m.rank_a(),
        "rank_s": exact,
        "rank_s_upper_bound": upper,
        "torsion": m.is_torsion(),
    });
    match m {
        ModulePresentation::Good { p } => {
            v["sigma_good"] = json!(p.is_sigma_good());
            v["z_good"] = json!(p.is_z_good());
        }
        ModulePresentation::Line { c, m } => {
            let p = pic_class(c, *m);
            v["pic_class"] = json!({"c": p.c_rep.to_string(), "m": p.m});
        }
        _ => {}
    }
    Output::structured(v, exact.is_some())
}

fn divide(mode: Mode, side: Side, r: &str, w: &str) -> Result<Output, Failure> {
    let (r, w) = (aq::parse(r)?, aq::parse(w)?);
    let side = match side {
        Side::Top => DivMode::Top,
        Side::Bottom => DivMode::Bottom,
    };
    let (d, g, valid) = match mode {
        Mode::Sigma => {
            let d = sigma_divide(&r, &w, side)?;
            let valid = is_sigma_witness(&r, &w, &d.g, &d.h, &d.rem);
            let g = AqElement::from_laurent(d.g.clone());
            (d, g, valid)
        }
        Mode::Z => {
            let d = z_divide(&r, &w, side)?;
            let valid = is_z_witness(&r, &w, &d.g, &d.h, &d.rem);
            let g = AqElement::from_sigma_poly(&d.g);
            (d, g, valid)
        }
    };
    if !valid {
        return Err(Failure::Computation(
            "division produced an invalid witness".into(),
        ));
    }
    let text = format!("g = {g}\nh = {}\nrem = {}", d.h, d.rem);
    Ok(Output::definite(
        text,
        json!({"g": g.to_string(), "h": d.h.to_string(), "rem": d.rem.to_string()}),
    ))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let qv: QParam = cli.q.parse()?;
    set_q(qv);
    let defaults = Bounds::default();
    let bounds = Bounds {
        sigma: cli.bound_sigma.unwrap_or(defaults.sigma),
        z: cli.bound_z.unwrap_or(defaults.z),
        window: cli.window.unwrap_or(defaults.window),
    };
    Ok(match &cli.command {
        Command::Eval { expr } => {
            let x = aq::parse(expr)?;
            Output::definite(x.to_string(), json!({"element": x.to_string()}))
        }
        Command::Div { mode, side, r, w } => divide(*mode, *side, r, w)?,
        Command::Mod {
            command: ModCommand::Info { module: m },
        } => info(&module(m)?, &bounds),
        Command::Dual { module: m } => descriptor(&module(m)?.dual()),
        Command::Tensor { a, b } => descriptor(&module(a)?.tensor(&module(b)?)),
        Command::Hom { a, b } => descriptor(&module(a)?.hom(&module(b)?)),
        Command::Coh { module: m } => {
            let r = cohomology_within(&module(m)?, &bounds);
            let definite = r.certified && r.h1.is_some();
            Output::structured(
                serde_json::to_value(&r).expect("reports serialize"),
                definite,
            )
        }
        Command::Euler { a, b } => match euler_form_within(&module(a)?, &module(b)?, &bounds) {
            Some(chi) => Output::definite(chi.to_string(), json!({"chi": chi})),
            None => Output {
                text: "Unknown".into(),
                json: json!({"chi": null}),
                definite: false,
            },
        },
        Command::Pic { op } => match op {
            PicOp::Class { c, m } => pic_output(&pic_class(&scalar(c)?, *m)),
            PicOp::Inv { c, m } => pic_output(&pic_inv(&pic_class(&scalar(c)?, *m))),
            PicOp::Mul { c1, m1, c2, m2 } => pic_output(&pic_mul(
                &pic_class(&scalar(c1)?, *m1),
                &pic_class(&scalar(c2)?, *m2),
            )),
            PicOp::Eq { c1, m1, c2, m2 } => {
                let eq = pic_class(&scalar(c1)?, *m1) == pic_class(&scalar(c2)?, *m2);
                Output::definite(eq.to_string(), json!({"equal": eq}))
            }
        },
        Command::Verify { suite, cases } => {
            let report = verify_suite(suite, cli.seed, *cases, &bounds)?;
            let mut text = format!(
                "{}: {}/{} passed, {} unknown, {} failed (seed {})",
                report.suite,
                report.passed,
                report.cases,
                report.skipped_unknown,
                report.failures.len(),
                report.seed
            );
            for f in &report.failures {
                text.push_str(&format!("\ncase {}: {}", f.case, f.detail));
            }
            let json = serde_json::to_value(&report).expect("reports serialize");
            if !report.failures.is_empty() {
                print(cli, "verify", &Output::definite(text, json));
                return Err(Failure::Computation(format!(
                    "{} cases failed",
                    report.failures.len()
                )));
            }
            Output {
                text,
                json,
                definite: report.skipped_unknown == 0,
            }
        }
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Div { .. } => "div",
        Command::Mod { .. } => "mod info",
        Command::Dual { .. } => "dual",
        Command::Tensor { .. } => "tensor",
        Command::Hom { .. } => "hom",
        Command::Coh { .. } => "coh",
        Command::Euler { .. } => "euler",
        Command::Pic { .. } => "pic",
        Command::Verify { .. } => "verify",
    }
}

fn print(cli: &Cli, name: &str, out: &Output) {
    if cli.json {
        println!(
            "{}",
            json!({"version": FORMAT_VERSION, "command": name, "result": out.json})
        );
    } else {
        println!("{}", out.text);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli) {
        Ok(out) => {
            print(&cli, name, &out);
            if cli.strict && !out.definite {
                eprintln!("error: result is not certified");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, kind, msg) = match failure {
                Failure::Usage(m) => (2, "usage", m),
                Failure::Computation(m) => (1, "computation", m),
            };
            if cli.json {
                println!(
                    "{}",
                    json!({"version": FORMAT_VERSION, "command": name, "error": {"kind": kind, "message": msg}})
                );
            }
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
