//! `jetcalc` command line interface.
//!
//! Exit codes: 0 success (and all-match for `appendix`), 1 usage error,
//! 2 expression parse error, 3 domain error, 4 reference mismatch.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;

use jetcalc::{
    commutator_check, final_argument, h0_lower_bound, height_bound, morse_certificate,
    nef_cone_bounds, schwarz_min_lambda, wronskian_closed_form, wronskian_det, Assignment,
    MorseOptions, MorseReport, Rational, TowerContext, Var,
};
use jetcalc_cli::appendix::{run_appendix, AppendixCase};
use jetcalc_cli::{expr, jetexpr, ParseError};

#[derive(Parser)]
#[command(
    name = "jetcalc",
    version,
    about = "Exact intersection theory and positivity certificates on jet towers over families of hypersurfaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the alternating binomial sums L(e, f) for f <= max-f.
    Lnumbers {
        #[arg(long, default_value_t = 9)]
        max_f: u32,
    },
    /// Print the Segre classes of the relative bundles up to level k.
    Segre {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
    },
    /// Evaluate a generator expression on level k and take its top
    /// intersection number.
    Intersect {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        expr: String,
    },
    /// Exact bigness difference A^D - D*A^(D-1)*B for degree-one classes.
    Morse {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Substitute eps -> r/((n+1)d) before reporting.
        #[arg(long)]
        subst_eps: bool,
        /// Sample point, e.g. `r=5,d=2,chi=2,x=1`.
        #[arg(long)]
        sample: Option<String>,
    },
    /// Assemble the depth-(n+1) certificate and report sign and side
    /// condition at a sample point (`r`, `d`, `x` required).
    FinalArgument {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        sample: String,
        /// Covering ratio chi_rho/deg(rho).
        #[arg(long, default_value = "1")]
        ratio: String,
    },
    /// Minimal base-twist degree forced by the vanishing argument.
    Schwarz {
        #[arg(long)]
        total_weight: String,
        #[arg(long, default_value = "1")]
        ratio: String,
    },
    /// Height bound for sections whose top jet avoids the certificate locus.
    Height {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: String,
        #[arg(long, default_value = "1")]
        ratio: String,
    },
    /// Nef-cone sandwich of the total space.
    NefCone {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        deg_lambda0: i64,
        #[arg(long)]
        d0: i64,
    },
    /// Exact section-count lower bound for the (lambda, d) bundle.
    H0Bound {
        #[arg(long)]
        deg_lambda: i64,
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        d0: i64,
        #[arg(long)]
        deg_lambda0: i64,
        #[arg(long)]
        n: u32,
    },
    /// Wronskian determinant of successive total derivatives of
    /// 1, z, ..., z^kappa.
    Wronskian {
        #[arg(long)]
        kappa: u32,
        /// Also print the fully expanded determinant.
        #[arg(long)]
        expand: bool,
    },
    /// Check the commutator identity for the special field built from a
    /// jet polynomial P and optional coefficient components.
    Commutator {
        /// Jet polynomial, e.g. `z^2`.
        #[arg(long)]
        p: String,
        #[arg(long)]
        kappa: u32,
        /// Coefficient component (repeatable), e.g. `--coeff z --coeff 1`.
        #[arg(long = "coeff")]
        coeffs: Vec<String>,
    },
    /// Diff engine output against the built-in golden tables.
    Appendix {
        #[arg(long, value_enum)]
        case: CaseArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CaseArg {
    Ltable,
    X1,
    X2,
    X3,
}

impl From<CaseArg> for AppendixCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Ltable => AppendixCase::LTable,
            CaseArg::X1 => AppendixCase::X1,
            CaseArg::X2 => AppendixCase::X2,
            CaseArg::X3 => AppendixCase::X3,
        }
    }
}

enum AppError {
    Usage(String),
    Expr(ParseError),
    Engine(jetcalc::Error),
    Mismatch,
}

impl From<jetcalc::Error> for AppError {
    fn from(e: jetcalc::Error) -> Self {
        AppError::Engine(e)
    }
}

impl From<ParseError> for AppError {
    fn from(e: ParseError) -> Self {
        AppError::Expr(e)
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let format = cli.format;
    match run(cli.command, format) {
        Ok(()) => {}
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(AppError::Expr(e)) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
        Err(AppError::Engine(e)) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
        Err(AppError::Mismatch) => std::process::exit(4),
    }
}

fn parse_rational(text: &str) -> Result<Rational, AppError> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| AppError::Usage(format!("`{text}` is not an integer or p/q rational")))
}

fn parse_sample(text: &str) -> Result<Assignment, AppError> {
    let mut sample = Assignment::new();
    for pair in text.split(',') {
        let pair = pair.trim();
        if pair.is_empty() {
            continue;
        }
        let Some((name, value)) = pair.split_once('=') else {
            return Err(AppError::Usage(format!(
                "sample entry `{pair}` is not of the form name=value"
            )));
        };
        let var = Var::from_name(name.trim())
            .ok_or_else(|| AppError::Usage(format!("unknown parameter `{}`", name.trim())))?;
        sample.set(var, parse_rational(value)?);
    }
    Ok(sample)
}

fn emit(format: Format, text: String, json: serde_json::Value) {
    use std::io::Write;
    let payload = match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&json).expect("valid json"),
    };
    // A closed pipe (e.g. `jetcalc segre ... | head`) is not an error.
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{payload}").is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

fn morse_json(report: &MorseReport) -> serde_json::Value {
    serde_json::json!({
        "dimension": report.dimension,
        "difference": {
            "text": report.difference.to_string(),
            "terms": report.difference.to_json(),
        },
        "dominant": {
            "text": report.dominant.to_string(),
            "terms": report.dominant.to_json(),
        },
        "leading_rd": report.leading_rd.to_string(),
        "asymptotic_verdict": report.asymptotic_verdict.map(|s| s.to_string()),
        "sample_value": report.sample_value.as_ref().map(|v| v.to_string()),
        "verdict": report.verdict.map(|s| s.to_string()),
    })
}

fn run(command: Command, format: Format) -> Result<(), AppError> {
    match command {
        Command::Lnumbers { max_f } => {
            let table = jetcalc::LTable::build(max_f);
            let mut text = String::from("L(e, f)");
            for e in 0..=max_f {
                text.push_str(&format!("{:>8}", format!("e={e}")));
            }
            let mut json_rows = serde_json::Map::new();
            for f in 0..=max_f {
                text.push_str(&format!("\nf={f:<5}"));
                let mut json_row = serde_json::Map::new();
                for e in 0..=f {
                    let value = table.get(e, f).expect("in range");
                    text.push_str(&format!("{value:>8}"));
                    json_row.insert(e.to_string(), serde_json::Value::String(value.to_string()));
                }
                json_rows.insert(f.to_string(), serde_json::Value::Object(json_row));
            }
            emit(
                format,
                text,
                serde_json::json!({ "max_f": max_f, "table": json_rows }),
            );
            Ok(())
        }
        Command::Segre { n, k } => {
            let ctx = TowerContext::new(n, k)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for level in 0..=k {
                let row = ctx.segre().row(level).expect("built");
                let classes: Vec<String> = row.iter().map(|c| c.to_string()).collect();
                for (i, rendered) in classes.iter().enumerate() {
                    text.push_str(&format!("s_{i}(level {level}) = {rendered}\n"));
                }
                rows.push(serde_json::json!({ "level": level, "classes": classes }));
            }
            text.pop();
            emit(
                format,
                text,
                serde_json::json!({ "n": n, "k": k, "rows": rows }),
            );
            Ok(())
        }
        Command::Intersect { n, k, expr: text } => {
            let ctx = TowerContext::new(n, k)?;
            let parsed = expr::parse(&text)?;
            let class = expr::eval(&parsed, &ctx)?;
            let value = class.top_intersection(&ctx)?;
            emit(
                format,
                value.to_string(),
                serde_json::json!({
                    "n": n, "k": k, "expr": text,
                    "value": { "text": value.to_string(), "terms": value.to_json() },
                }),
            );
            Ok(())
        }
        Command::Morse {
            n,
            k,
            a,
            b,
            subst_eps,
            sample,
        } => {
            let ctx = TowerContext::new(n, k)?;
            let a_class = expr::eval(&expr::parse(&a)?, &ctx)?;
            let b_class = expr::eval(&expr::parse(&b)?, &ctx)?;
            let opts = MorseOptions {
                substitute_eps: subst_eps.then_some(n),
                sample: sample.as_deref().map(parse_sample).transpose()?,
            };
            let report = morse_certificate(&a_class, &b_class, &ctx, &opts)?;
            let mut text = format!(
                "dimension: {}\ndifference: {}\ndominant:   {}\nleading for r >> d >> 1: {}{}",
                report.dimension,
                report.difference,
                report.dominant,
                report.leading_rd,
                match report.asymptotic_verdict {
                    Some(sign) => format!(" ({sign} for positive weights)"),
                    None => " (mixed signs)".to_string(),
                },
            );
            if let (Some(value), Some(verdict)) = (&report.sample_value, report.verdict) {
                text.push_str(&format!("\nsample value: {value} ({verdict})"));
            }
            emit(format, text, morse_json(&report));
            Ok(())
        }
        Command::FinalArgument { n, sample, ratio } => {
            let sample = parse_sample(&sample)?;
            let ratio = parse_rational(&ratio)?;
            let report = final_argument(n, &sample, &ratio)?;
            let text = format!(
                "dimension: {}\ndominant: {}\nsample value: {} ({})\nside condition: {} * ratio = {} must stay below r/((n+1)d) = {} -> {}",
                report.morse.dimension,
                report.morse.dominant,
                report
                    .morse
                    .sample_value
                    .as_ref()
                    .expect("final argument evaluates a sample"),
                report.morse.verdict.expect("final argument has a verdict"),
                report.schwarz_factor,
                report.schwarz_threshold,
                report.schwarz_rhs,
                if report.side_condition_met { "met" } else { "not met" },
            );
            let json = serde_json::json!({
                "n": n,
                "morse": morse_json(&report.morse),
                "schwarz": {
                    "factor": report.schwarz_factor.to_string(),
                    "threshold": report.schwarz_threshold.to_string(),
                    "rhs": report.schwarz_rhs.to_string(),
                    "met": report.side_condition_met,
                },
            });
            emit(format, text, json);
            Ok(())
        }
        Command::Schwarz {
            total_weight,
            ratio,
        } => {
            let value = schwarz_min_lambda(&parse_rational(&total_weight)?, &parse_rational(&ratio)?)?;
            emit(
                format,
                format!("deg lambda must exceed {value}"),
                serde_json::json!({ "min_deg_lambda": value.to_string() }),
            );
            Ok(())
        }
        Command::Height { n, x, ratio } => {
            let value = height_bound(n, &parse_rational(&x)?, &parse_rational(&ratio)?)?;
            emit(
                format,
                format!("height bound: {value}"),
                serde_json::json!({ "n": n, "bound": value.to_string() }),
            );
            Ok(())
        }
        Command::NefCone {
            n,
            deg_lambda0,
            d0,
        } => {
            let bounds = nef_cone_bounds(n, deg_lambda0, d0)?;
            let text = format!(
                "lower slope: {}\n{}  c  {}  c  {}",
                bounds.nef_lower_slope, bounds.sandwich[0], bounds.sandwich[1], bounds.sandwich[2]
            );
            emit(
                format,
                text,
                serde_json::json!({
                    "slope": bounds.nef_lower_slope.to_string(),
                    "sandwich": bounds.sandwich,
                }),
            );
            Ok(())
        }
        Command::H0Bound {
            deg_lambda,
            genus,
            d,
            d0,
            deg_lambda0,
            n,
        } => {
            let value = h0_lower_bound(deg_lambda, genus, d, d0, deg_lambda0, n)?;
            let vacuous = value.is_negative();
            emit(
                format,
                format!(
                    "h0 lower bound: {value}{}",
                    if vacuous { " (vacuous)" } else { "" }
                ),
                serde_json::json!({ "bound": value.to_string(), "vacuous": vacuous }),
            );
            Ok(())
        }
        Command::Wronskian { kappa, expand } => {
            let closed = wronskian_closed_form(kappa);
            let expanded = wronskian_det(kappa)?;
            let mut text = format!("wronskian({kappa}) = {closed}");
            if expand {
                text.push_str(&format!("\nexpanded: {expanded}"));
            }
            let json = serde_json::json!({
                "kappa": kappa,
                "closed_form": closed.to_string(),
                "expanded": expand.then(|| expanded.to_string()),
            });
            emit(format, text, json);
            Ok(())
        }
        Command::Commutator { p, kappa, coeffs } => {
            let p_poly = jetexpr::eval_jet(&jetexpr::parse_jet(&p)?);
            let coeff_polys: Vec<_> = coeffs
                .iter()
                .map(|c| jetexpr::parse_jet(c).map(|e| jetexpr::eval_jet(&e)))
                .collect::<Result<_, _>>()?;
            let holds = commutator_check(&p_poly, &coeff_polys, kappa)?;
            emit(
                format,
                format!(
                    "commutator identity {} for P = {p_poly}, kappa = {kappa}",
                    if holds { "holds" } else { "FAILS" }
                ),
                serde_json::json!({ "kappa": kappa, "p": p_poly.to_string(), "holds": holds }),
            );
            if holds {
                Ok(())
            } else {
                Err(AppError::Mismatch)
            }
        }
        Command::Appendix { case } => {
            let report = run_appendix(case.into())?;
            let mut text = String::new();
            for line in &report.lines {
                if line.matched {
                    text.push_str(&format!("MATCH    {}: {}\n", line.label, line.expected));
                } else {
                    text.push_str(&format!(
                        "MISMATCH {}: expected {}, computed {}\n",
                        line.label, line.expected, line.computed
                    ));
                }
            }
            let matched = report.lines.iter().filter(|l| l.matched).count();
            text.push_str(&format!(
                "{}: {matched}/{} checks match",
                report.case.name(),
                report.lines.len()
            ));
            let json = serde_json::json!({
                "case": report.case.name(),
                "lines": report.lines.iter().map(|l| serde_json::json!({
                    "label": l.label,
                    "expected": l.expected,
                    "computed": l.computed,
                    "match": l.matched,
                })).collect::<Vec<_>>(),
                "all_match": report.all_match(),
            });
            emit(format, text, json);
            if report.all_match() {
                Ok(())
            } else {
                Err(AppError::Mismatch)
            }
        }
    }
}
