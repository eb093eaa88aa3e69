//! The `hfc` command line.
//!
//! [`run`] takes the argument vector and returns the exit code together with
//! what would be written to stdout and stderr, so the binary is a thin
//! wrapper and tests can drive the interface in-process.
//!
//! Exit codes: `0` success, `1` domain error (or a failed check), `2` usage
//! error. The Abel–Jacobi working precision is read from the
//! `HFC_AJ_PRECISION` environment variable (decimal digits, default 40).

use std::ffi::OsString;
use std::ops::RangeInclusive;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abel_jacobi::{CurvePoint, Divisor, EllipticCurveData, DEFAULT_DIGITS};
use crate::checks::{self, Comparison};
use crate::coefficients::CoefficientTheory;
use crate::engine::{hfc_group, point_table, HFGroupDescriptor, Notation, Variant};
use crate::error::Error;
use crate::io;
use crate::numeric::{bits_for_digits, Cx, Real};
use crate::space::Space;

/// Environment variable holding the Abel–Jacobi working precision.
pub const PRECISION_ENV: &str = "HFC_AJ_PRECISION";

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "hfc",
    version,
    about = "Hodge filtered cohomology groups of spaces presented by cohomological data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute one group E^n(p)(X).
    Compute(ComputeArgs),
    /// Tabulate the groups of a point over ranges of n and p.
    PointTable(PointTableArgs),
    /// Run a consistency check.
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Abel–Jacobi image of a degree-zero divisor on an elliptic curve.
    Aj(AjArgs),
    /// Print the explicit tables of a space as a JSON document.
    Describe {
        /// Space document (file) or builtin name: pt, P<n>, C<g>, A<n>, Gm.
        #[arg(long)]
        space: String,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Plain ASCII group notation.
    #[arg(long)]
    ascii: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Analytic,
    Log,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// Space document (file) or builtin name: pt, P<n>, C<g>, A<n>, Gm.
    #[arg(long)]
    space: String,
    /// MU, HZ, HQ, MUQ or a theory document.
    #[arg(long)]
    theory: String,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    #[arg(long, allow_hyphen_values = true)]
    p: i64,
    /// Defaults to analytic on compact Kaehler models and log otherwise.
    #[arg(long, value_enum)]
    variant: Option<VariantArg>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct PointTableArgs {
    #[arg(long)]
    theory: String,
    /// Inclusive range `A..B`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    n_range: RangeInclusive<i64>,
    /// Inclusive range `C..D`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    p_range: RangeInclusive<i64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// (MU ^ HQ)_D^n(p)(X) against the sum of HQ groups weighted by pi_{2j}MU.
    Splitting {
        #[arg(long)]
        space: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Mayer-Vietoris balance for X = U ∪ V with W = U ∩ V.
    Mv {
        #[arg(long)]
        space: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long)]
        theory: String,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// E_log^n(p)(X × A^1) against E_log^n(p)(X).
    A1 {
        #[arg(long)]
        space: String,
        #[arg(long)]
        theory: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Projective bundle formula for a rank r bundle with trivial Chern classes.
    Pbf {
        #[arg(long)]
        space: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        theory: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        p: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Grothendieck relation in the ring of P(V).
    Grothendieck {
        #[arg(long)]
        space: String,
        #[arg(long)]
        r: usize,
        /// Chern classes c_1, c_2, .. in the base ring (repeat the flag).
        #[arg(long, allow_hyphen_values = true)]
        chern: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Transfer normalization i_*(1) = c_1(O(D)).
    Transfer {
        #[arg(long)]
        space: String,
        /// Divisor class as a degree-2 ring element.
        #[arg(long, allow_hyphen_values = true)]
        class: String,
        /// Optional model of the divisor itself.
        #[arg(long)]
        divisor: Option<String>,
        #[arg(long)]
        theory: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct AjArgs {
    /// Weierstrass invariant g2 (complex literal such as `1.5-2i`).
    #[arg(long, allow_hyphen_values = true)]
    g2: String,
    /// Weierstrass invariant g3.
    #[arg(long, allow_hyphen_values = true)]
    g3: String,
    /// Divisor `(x,y):m;(x,y):m;inf:m`; the multiplicity defaults to 1.
    #[arg(long, allow_hyphen_values = true)]
    divisor: String,
    #[command(flatten)]
    output: OutputArgs,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = std::result::Result<(bool, String), Failure>;

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<i64>, String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected A..B, got `{s}`"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start `{a}`"))?;
    let b: i64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((ok, stdout)) => CliOutput {
            code: if ok { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Domain(msg)) => CliOutput {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Compute(args) => compute(args),
        Command::PointTable(args) => table(args),
        Command::Check { check } => run_check(check),
        Command::Aj(args) => aj(args),
        Command::Describe { space } => {
            let x = load_space(&space)?;
            let text =
                serde_json::to_string_pretty(&io::space_to_value(&x)).expect("documents serialize");
            Ok((true, format!("{text}\n")))
        }
    }
}

fn load_space(arg: &str) -> std::result::Result<Space, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Domain(format!("cannot read {arg}: {e}")))?;
        return io::parse_space(&text).map_err(|e| match e {
            Error::Parse { location, detail } => Failure::Domain(
                Error::Parse {
                    location: format!("{arg}: {location}"),
                    detail,
                }
                .to_string(),
            ),
            other => other.into(),
        });
    }
    io::builtin_space(arg).ok_or_else(|| {
        Failure::Usage(format!(
            "`{arg}` is neither a readable space document nor a builtin space (pt, P<n>, C<g>, A<n>, Gm)"
        ))
    })
}

fn load_theory(arg: &str) -> std::result::Result<CoefficientTheory, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Domain(format!("cannot read {arg}: {e}")))?;
        return Ok(io::parse_theory(&text)?);
    }
    CoefficientTheory::builtin(arg).map_err(|e| Failure::Usage(e.to_string()))
}

fn notation(output: &OutputArgs) -> Notation {
    if output.ascii {
        Notation::Ascii
    } else {
        Notation::Unicode
    }
}

fn symbol(theory: &str, variant: Variant, n: i64, p: i64, space: &str) -> String {
    let v = match variant {
        Variant::Analytic => "D",
        Variant::Log => "log",
    };
    format!("{theory}_{v}^{n}({p})({space})")
}

fn descriptor_lines(d: &HFGroupDescriptor) -> String {
    let torsion = if d.torsion().is_empty() {
        "none".to_string()
    } else {
        d.torsion()
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let torus = d
        .complex_torus_dim()
        .map_or("none".to_string(), |t| t.to_string());
    let rows = [
        ("field", d.field().as_str().to_string()),
        ("free_rank", d.free_rank().to_string()),
        ("torsion", torsion),
        ("circle_rank", d.circle_rank().to_string()),
        ("real_rank", d.real_rank().to_string()),
        ("complex_torus_dim", torus),
        ("exactness", d.exactness().as_str().to_string()),
    ];
    rows.iter()
        .map(|(k, v)| format!("  {k:<18} {v}\n"))
        .collect()
}

fn json_text(v: &Value) -> String {
    format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("json serializes")
    )
}

fn compute(args: ComputeArgs) -> Outcome {
    let x = load_space(&args.space)?;
    let e = load_theory(&args.theory)?;
    let variant = match args.variant {
        Some(VariantArg::Analytic) => Variant::Analytic,
        Some(VariantArg::Log) => Variant::Log,
        None => checks::natural_variant(&x),
    };
    let d = hfc_group(&x, &e, args.n, args.p, variant)?;
    let rendered = d.render(notation(&args.output));
    let text = match args.output.format {
        Format::Table => format!(
            "{} = {rendered}\n{}",
            symbol(e.name(), variant, args.n, args.p, x.name()),
            descriptor_lines(&d)
        ),
        Format::Json => json_text(&json!({
            "command": "compute",
            "space": x.name(),
            "theory": e.name(),
            "variant": variant.as_str(),
            "n": args.n,
            "p": args.p,
            "group": io::descriptor_to_value(&d),
            "rendered": rendered,
        })),
    };
    Ok((true, text))
}

fn table(args: PointTableArgs) -> Outcome {
    let e = load_theory(&args.theory)?;
    let t = point_table(&e, args.n_range.clone(), args.p_range.clone())?;
    let notation = notation(&args.output);
    let text = match args.output.format {
        Format::Json => {
            let cells: Vec<Value> = t
                .cells
                .iter()
                .map(|(&(n, p), d)| {
                    json!({
                        "n": n,
                        "p": p,
                        "group": io::descriptor_to_value(d),
                        "rendered": d.render(notation),
                    })
                })
                .collect();
            json_text(&json!({
                "command": "point-table",
                "theory": t.theory,
                "n_range": [t.n_range.start(), t.n_range.end()],
                "p_range": [t.p_range.start(), t.p_range.end()],
                "cells": cells,
            }))
        }
        Format::Table => {
            let ps: Vec<i64> = t.p_range.clone().collect();
            let mut rows: Vec<Vec<String>> = Vec::new();
            let mut header = vec!["n \\ p".to_string()];
            header.extend(ps.iter().map(|p| p.to_string()));
            rows.push(header);
            for n in t.n_range.clone() {
                let mut row = vec![n.to_string()];
                row.extend(ps.iter().map(|&p| t.cells[&(n, p)].render(notation)));
                rows.push(row);
            }
            let widths: Vec<usize> = (0..rows[0].len())
                .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
                .collect();
            let mut out = format!("{}_D^n(p)(pt)\n", t.theory);
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, &w)| {
                        let pad = w - cell.chars().count();
                        format!("{cell}{}", " ".repeat(pad))
                    })
                    .collect();
                out.push_str(cells.join(" | ").trim_end());
                out.push('\n');
                if i == 0 {
                    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
                    out.push_str(&rule.join("-+-"));
                    out.push('\n');
                }
            }
            out
        }
    };
    Ok((true, text))
}

fn comparison_output(
    name: &str,
    cmp: &Comparison,
    lhs_label: &str,
    rhs_label: &str,
    output: &OutputArgs,
) -> Outcome {
    let notation = notation(output);
    let text = match output.format {
        Format::Table => format!(
            "check {name}: {}\n  lhs  {lhs_label} = {}\n  rhs  {rhs_label} = {}\n",
            if cmp.holds { "OK" } else { "FAIL" },
            cmp.lhs.render(notation),
            cmp.rhs.render(notation),
        ),
        Format::Json => json_text(&json!({
            "command": "check",
            "check": name,
            "holds": cmp.holds,
            "lhs": io::descriptor_to_value(&cmp.lhs),
            "rhs": io::descriptor_to_value(&cmp.rhs),
        })),
    };
    Ok((cmp.holds, text))
}

fn verdict_output(name: &str, holds: bool, detail: &str, output: &OutputArgs) -> Outcome {
    let text = match output.format {
        Format::Table => format!(
            "check {name}: {}\n  {detail}\n",
            if holds { "OK" } else { "FAIL" }
        ),
        Format::Json => json_text(&json!({
            "command": "check",
            "check": name,
            "holds": holds,
            "detail": detail,
        })),
    };
    Ok((holds, text))
}

fn run_check(check: CheckCommand) -> Outcome {
    match check {
        CheckCommand::Splitting {
            space,
            n,
            p,
            output,
        } => {
            let x = load_space(&space)?;
            let cmp = checks::rational_splitting_check(&x, n, p)?;
            let v = checks::natural_variant(&x);
            let lhs = symbol("MUQ", v, n, p, x.name());
            let rhs = format!(
                "⊕_j {} ⊗ π_2j MU",
                symbol("HQ", v, n, p, x.name())
                    .replace(&format!("^{n}({p})"), &format!("^{{{n}+2j}}({p}+j)"),)
            );
            comparison_output("splitting", &cmp, &lhs, &ascii_if(&rhs, &output), &output)
        }
        CheckCommand::Mv {
            space,
            u,
            v,
            w,
            theory,
            p,
            output,
        } => {
            let (x, u, v, w) = (
                load_space(&space)?,
                load_space(&u)?,
                load_space(&v)?,
                load_space(&w)?,
            );
            let e = load_theory(&theory)?;
            let holds = checks::mv_consistency(&x, &u, &v, &w, &e, p)?;
            let detail = format!(
                "filtered Euler characteristics of {} = {} ∪ {} with intersection {} at p = {p}",
                x.name(),
                u.name(),
                v.name(),
                w.name()
            );
            verdict_output("mv", holds, &ascii_if(&detail, &output), &output)
        }
        CheckCommand::A1 {
            space,
            theory,
            n,
            p,
            output,
        } => {
            let x = load_space(&space)?.to_quasi_projective()?;
            let e = load_theory(&theory)?;
            let cmp = checks::a1_invariance_check(&x, &e, n, p)?;
            let lhs = symbol(e.name(), Variant::Log, n, p, &format!("{} x A1", x.name()));
            let rhs = symbol(e.name(), Variant::Log, n, p, x.name());
            comparison_output("a1", &cmp, &lhs, &rhs, &output)
        }
        CheckCommand::Pbf {
            space,
            r,
            theory,
            n,
            p,
            output,
        } => {
            let x = load_space(&space)?;
            let e = load_theory(&theory)?;
            let cmp = checks::pbf_check(&x, r, n, p, &e)?;
            let v = checks::natural_variant(&x);
            let lhs = symbol(e.name(), v, n, p, &format!("P{r}({})", x.name()));
            let rhs = format!(
                "sum over i < {r} of {}",
                symbol(e.name(), v, n, p, x.name())
                    .replace(&format!("^{n}({p})"), &format!("^{{{n}-2i}}({p}-i)"))
            );
            comparison_output("pbf", &cmp, &lhs, &rhs, &output)
        }
        CheckCommand::Grothendieck {
            space,
            r,
            chern,
            output,
        } => {
            let x = load_space(&space)?;
            let classes = io::chern_classes(&x, &json!(chern), "--chern")?;
            let holds = checks::grothendieck_check(&x, r, &classes)?;
            let ring = x.ring().expect("checked by chern_classes");
            let c: Vec<String> = classes.iter().map(|c| ring.format_poly(c)).collect();
            let detail = format!(
                "sum_q (-1)^q c_q xi^({r}-q) = 0 in H^*(P{r}({})) with c = [{}]",
                x.name(),
                c.join(", ")
            );
            verdict_output("grothendieck", holds, &detail, &output)
        }
        CheckCommand::Transfer {
            space,
            class,
            divisor,
            theory,
            output,
        } => {
            let x = load_space(&space)?;
            let e = load_theory(&theory)?;
            let ring = x
                .ring()
                .ok_or_else(|| Error::MissingRing(x.name().to_string()))?;
            let class_poly = ring.parse_poly(&class)?;
            let d = divisor.as_deref().map(load_space).transpose()?;
            let report = checks::transfer_normalization_check(&x, &class_poly, d.as_ref(), &e)?;
            let notation = notation(&output);
            let text = match output.format {
                Format::Table => {
                    let mut t = format!(
                        "check transfer: {}\n  contribution rank {} in {}\n  target = {}\n",
                        if report.holds { "OK" } else { "FAIL" },
                        report.contribution_rank,
                        symbol(e.name(), Variant::Log, 2, 1, x.name()),
                        report.target.render(notation),
                    );
                    if let Some(u) = &report.unit {
                        t.push_str(&format!("  unit group = {}\n", u.render(notation)));
                    }
                    t
                }
                Format::Json => json_text(&json!({
                    "command": "check",
                    "check": "transfer",
                    "holds": report.holds,
                    "contribution_rank": report.contribution_rank,
                    "target": io::descriptor_to_value(&report.target),
                    "unit": report.unit.as_ref().map(io::descriptor_to_value),
                })),
            };
            Ok((report.holds, text))
        }
    }
}

fn ascii_if(text: &str, output: &OutputArgs) -> String {
    if output.ascii {
        text.replace('⊕', "+")
            .replace('⊗', "x")
            .replace('∪', "u")
            .replace('π', "pi")
    } else {
        text.to_string()
    }
}

fn precision_from_env() -> std::result::Result<u32, Failure> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_DIGITS),
        Ok(v) => v.trim().parse::<u32>().map_err(|_| {
            Failure::Usage(format!(
                "{PRECISION_ENV} must be a positive integer, got `{v}`"
            ))
        }),
    }
}

/// Parses `(x,y):m;inf:m` with complex coordinates.
fn parse_divisor(text: &str, bits: u32) -> std::result::Result<Divisor, Failure> {
    let mut divisor = Divisor::new();
    for (i, part) in text.split(';').enumerate() {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let bad =
            |detail: &str| Failure::Usage(format!("divisor term {} `{part}`: {detail}", i + 1));
        let (point, mult) = match part.rfind(':') {
            Some(k) if !part[k..].contains(')') => (&part[..k], Some(&part[k + 1..])),
            _ => (part, None),
        };
        let m = match mult {
            Some(m) => m
                .trim()
                .parse::<i64>()
                .map_err(|_| bad("bad multiplicity"))?,
            None => 1,
        };
        let point = point.trim();
        let p = if point.eq_ignore_ascii_case("inf") || point == "O" {
            CurvePoint::Infinity
        } else {
            let inner = point
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| bad("expected (x,y) or inf"))?;
            let (x, y) = inner.split_once(',').ok_or_else(|| bad("expected (x,y)"))?;
            let x = Cx::parse(x, bits).ok_or_else(|| bad("bad x coordinate"))?;
            let y = Cx::parse(y, bits).ok_or_else(|| bad("bad y coordinate"))?;
            CurvePoint::affine(x, y)
        };
        divisor.push(p, m);
    }
    Ok(divisor)
}

fn cx_json(z: &Cx, digits: usize) -> Value {
    json!({"re": format!("{:.*}", digits, z.re), "im": format!("{:.*}", digits, z.im)})
}

fn real_text(r: &Real, digits: usize) -> String {
    format!("{r:.digits$}")
}

fn aj(args: AjArgs) -> Outcome {
    let digits = precision_from_env()?;
    let bits = bits_for_digits(digits);
    let g2 = Cx::parse(&args.g2, bits)
        .ok_or_else(|| Failure::Usage(format!("bad value for --g2: `{}`", args.g2)))?;
    let g3 = Cx::parse(&args.g3, bits)
        .ok_or_else(|| Failure::Usage(format!("bad value for --g3: `{}`", args.g3)))?;
    let divisor = parse_divisor(&args.divisor, bits)?;
    let curve = EllipticCurveData::new(&g2, &g3, digits)?;
    let image = curve.aj(&divisor)?;
    let (w1, w2) = curve.periods();
    let shown = (digits as usize).saturating_sub(10).clamp(6, 30);
    let text = match args.output.format {
        Format::Table => {
            let rows = [
                (
                    "curve",
                    format!(
                        "y^2 = 4x^3 - g2 x - g3, g2 = {}, g3 = {}",
                        args.g2.trim(),
                        args.g3.trim()
                    ),
                ),
                ("precision", format!("{digits} digits")),
                ("divisor degree", divisor.degree().to_string()),
                ("omega1", format!("{w1:.shown$}")),
                ("omega2", format!("{w2:.shown$}")),
                ("tau", format!("{:.shown$}", curve.tau())),
                ("z", format!("{:.shown$}", image.z)),
                ("a", real_text(&image.a, shown)),
                ("b", real_text(&image.b, shown)),
            ];
            rows.iter().map(|(k, v)| format!("{k:<15} {v}\n")).collect()
        }
        Format::Json => json_text(&json!({
            "command": "aj",
            "g2": args.g2.trim(),
            "g3": args.g3.trim(),
            "digits": digits,
            "omega1": cx_json(w1, shown),
            "omega2": cx_json(w2, shown),
            "z": cx_json(&image.z, shown),
            "a": real_text(&image.a, shown),
            "b": real_text(&image.b, shown),
        })),
    };
    Ok((true, text))
}
