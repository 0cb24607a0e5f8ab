use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cyclosum::catalan::{catalan_a, extract_coefficient_family, h_global_series};
use cyclosum::dsl::{parse_formula_with, parse_n_poly, parse_qpoly, ParseOptions, DEFAULT_MAX_DEGREE};
use cyclosum::invariants::{
    cos_power_sum, multiplicative_invariant, punctured_min_poly, punctured_power_sum, sin_power_sum,
};
use cyclosum::oracle::{
    cross_check, float_eval, rational_to_float, residual, to_decimal, DEFAULT_PRECISION,
    DEFAULT_TOLERANCE,
};
use cyclosum::rigidity::{eventual_polynomial, general_eval, stable_eval, verify_identity, AdmissibleFormula};
use cyclosum::{Error, Rational};

#[derive(Parser)]
#[command(name = "cyclosum", version, about = "Exact symmetric sums at the punctured cosine points cos(2πk/n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Also print a decimal rendering of exact values
    #[arg(long, global = true)]
    decimal: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Args)]
struct FormulaArgs {
    /// Formula text, e.g. "z*p2 - p1^2", "h(6)", "energy * prod(1 - t)"
    #[arg(long, conflicts_with = "file")]
    formula: Option<String>,

    /// File holding one formula; `#` starts a comment
    #[arg(long)]
    file: Option<PathBuf>,

    /// Largest power-sum index accepted by the parser
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,
}

impl FormulaArgs {
    fn load(&self) -> Result<AdmissibleFormula, Failure> {
        let text = match (&self.formula, &self.file) {
            (Some(t), _) => t.clone(),
            (None, Some(path)) => std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
            (None, None) => return Err(Failure::Usage("one of --formula or --file is required".into())),
        };
        Ok(parse_formula_with(&text, ParseOptions { max_degree: self.max_degree })?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// P_h(n) = Σ_{k=1}^{n-1} (2 cos(2πk/n))^h
    PowerSum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        h: u64,
    },
    /// Σ_{k=0}^{n-1} cos^h(2πk/n)
    CosSum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        h: u64,
    },
    /// Σ_{k=0}^{n-1} sin^h(2πk/n)
    SinSum {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        h: u64,
    },
    /// W_n(t), the monic polynomial with roots cos(2πk/n), 1 ≤ k ≤ n-1
    Minpoly {
        #[arg(long)]
        n: u64,
    },
    /// M_Q(n) = ∏_k Q(n-1, cos(2πk/n)) via a resultant
    Mq {
        /// Polynomial in t (and z) with constant term 1
        #[arg(long)]
        q: String,
        #[arg(long)]
        n: u64,
    },
    /// Exact evaluation of a formula at level n
    Eval {
        #[command(flatten)]
        src: FormulaArgs,
        #[arg(long)]
        n: u64,
        /// Allow levels below the stable threshold (exact general-regime route)
        #[arg(long)]
        below_threshold: bool,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
    /// The eventual polynomial R(n) of a product-free formula
    Eventual {
        #[command(flatten)]
        src: FormulaArgs,
    },
    /// Check a formula against a conjectured polynomial in n
    Verify {
        #[command(flatten)]
        src: FormulaArgs,
        #[arg(long)]
        conjecture: String,
        /// Also check every level 2 ≤ n < n_star
        #[arg(long)]
        below_threshold: bool,
        /// Exact per-level sweep, e.g. 5..20
        #[arg(long)]
        range: Option<String>,
    },
    /// Coefficients of Σ_r h_r s^r at the punctured cosine points of level n
    Hseries {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        order: usize,
    },
    /// Catalan coefficient a_l(n) of A(t)^n
    CatalanA {
        #[arg(long)]
        l: u64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
    },
    /// Power-sum presentation of [s^r] ∏_j Q(z, s x_j)
    Extract {
        /// Polynomial in t (and z) with constant term 1
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: usize,
        /// Use 1/Q instead of Q, e.g. --q "1 - t" --inverse for complete homogeneous sums
        #[arg(long)]
        inverse: bool,
    },
    /// Compare the exact value with a high-precision float evaluation
    Oracle {
        #[command(flatten)]
        src: FormulaArgs,
        #[arg(long, conflicts_with = "range")]
        n: Option<u64>,
        /// Inclusive level range, e.g. 2..30
        #[arg(long)]
        range: Option<String>,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long, default_value = DEFAULT_TOLERANCE)]
        tolerance: String,
    },
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

struct Output {
    text: String,
    json: Value,
    tsv: String,
    ok: bool,
}

impl Output {
    fn passing(text: String, json: Value, tsv: String) -> Self {
        Output { text, json, tsv, ok: true }
    }
}

fn decimal(q: &Rational) -> String {
    rational_to_float(q, DEFAULT_PRECISION)
        .map(|x| to_decimal(&x, 30))
        .unwrap_or_else(|_| "NaN".into())
}

fn scalar(cli_decimal: bool, header: &[(&str, String)], value: &Rational) -> Output {
    let mut text = value.to_string();
    let mut obj = serde_json::Map::new();
    for (k, v) in header {
        obj.insert((*k).into(), Value::String(v.clone()));
    }
    obj.insert("value".into(), Value::String(value.to_string()));
    let mut cols: Vec<String> = header.iter().map(|(k, _)| k.to_string()).collect();
    let mut row: Vec<String> = header.iter().map(|(_, v)| v.clone()).collect();
    cols.push("value".into());
    row.push(value.to_string());
    if cli_decimal {
        let d = decimal(value);
        text = format!("{text}  (≈ {d})");
        obj.insert("decimal".into(), Value::String(d.clone()));
        cols.push("decimal".into());
        row.push(d);
    }
    Output::passing(text, Value::Object(obj), format!("{}\n{}", cols.join("\t"), row.join("\t")))
}

fn parse_range(s: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::Usage(format!("range must look like LO..HI, got {s:?}"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let dec = cli.decimal;
    match &cli.command {
        Command::PowerSum { n, h } => {
            let v = punctured_power_sum(*n, *h)?;
            Ok(scalar(dec, &[("n", n.to_string()), ("h", h.to_string())], &v))
        }
        Command::CosSum { n, h } => {
            let v = cos_power_sum(*n, *h)?;
            Ok(scalar(dec, &[("n", n.to_string()), ("h", h.to_string())], &v))
        }
        Command::SinSum { n, h } => {
            let v = sin_power_sum(*n, *h)?;
            Ok(scalar(dec, &[("n", n.to_string()), ("h", h.to_string())], &v))
        }
        Command::Minpoly { n } => {
            let w = punctured_min_poly(*n)?;
            let coeffs: Vec<String> = w.poly.coeffs().iter().map(|c| c.to_string()).collect();
            let tsv = std::iter::once("k\tcoefficient".to_string())
                .chain(coeffs.iter().enumerate().map(|(k, c)| format!("{k}\t{c}")))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::passing(
                w.poly.to_string(),
                json!({"n": n.to_string(), "poly": w.poly.to_string(), "coefficients": coeffs}),
                tsv,
            ))
        }
        Command::Mq { q, n } => {
            let q = parse_qpoly(q)?;
            let v = multiplicative_invariant(&q, *n)?;
            Ok(scalar(dec, &[("q", q.to_string()), ("n", n.to_string())], &v))
        }
        Command::Eval { src, n, below_threshold, precision } => {
            let f = src.load()?;
            let mut rep = if *below_threshold { general_eval(&f, *n)? } else { stable_eval(&f, *n)? };
            let x = float_eval(&f, *n, *precision)?;
            let res = residual(&x, &rep.value, *precision)?;
            rep.residual = Some(to_decimal(&res, 6));
            let mut text = String::new();
            writeln!(text, "formula: {}", f.render()).unwrap();
            writeln!(text, "d = {}, n_star = {}, n = {}, mode = {}", f.d, f.n_star, n, serde_json::to_value(rep.mode).unwrap().as_str().unwrap()).unwrap();
            for (h, p) in rep.power_sums.iter().enumerate() {
                writeln!(text, "P_{}({n}) = {p}", h + 1).unwrap();
            }
            for ((q, _), (m, e)) in f.products.factors.iter().zip(&rep.multiplicative) {
                writeln!(text, "M[{q}]({n}) = {m}  (exponent {e})").unwrap();
            }
            writeln!(text, "float residual: {} ({precision} bits)", rep.residual.as_deref().unwrap_or("")).unwrap();
            write!(text, "value: {}", rep.value).unwrap();
            if dec {
                write!(text, "  (≈ {})", decimal(&rep.value)).unwrap();
            }
            let mut json = serde_json::to_value(&rep).unwrap();
            json["formula"] = Value::String(f.render());
            json["precision_bits"] = Value::String(precision.to_string());
            if dec {
                json["decimal"] = Value::String(decimal(&rep.value));
            }
            let tsv = format!("n\tvalue\tmode\tresidual\n{n}\t{}\t{}\t{}", rep.value, json["mode"].as_str().unwrap(), rep.residual.as_deref().unwrap_or(""));
            Ok(Output::passing(text, json, tsv))
        }
        Command::Eventual { src } => {
            let f = src.load()?;
            let r = eventual_polynomial(&f)?;
            Ok(Output::passing(
                r.to_string(),
                json!({"formula": f.render(), "d": f.d.to_string(), "n_star": f.n_star.to_string(), "eventual_polynomial": r.to_string()}),
                format!("formula\tn_star\teventual_polynomial\n{}\t{}\t{}", f.render(), f.n_star, r),
            ))
        }
        Command::Verify { src, conjecture, below_threshold, range } => {
            let f = src.load()?;
            let conj = parse_n_poly(conjecture)?;
            let sweep = range.as_deref().map(parse_range).transpose()?;
            let rep = verify_identity(&f, &conj, *below_threshold, sweep)?;
            let mut text = String::new();
            writeln!(text, "formula: {}", rep.formula).unwrap();
            writeln!(text, "conjecture: {conj}").unwrap();
            writeln!(text, "d = {}, n_star = {}", rep.d, rep.n_star).unwrap();
            match (rep.symbolic_match, &rep.eventual_polynomial) {
                (Some(true), Some(r)) => {
                    writeln!(text, "eventual polynomial: {r}").unwrap();
                    writeln!(text, "symbolic: PASS (identity in Q[n], all n >= {})", rep.n_star).unwrap();
                }
                (Some(false), Some(r)) => {
                    writeln!(text, "eventual polynomial: {r}").unwrap();
                    writeln!(text, "symbolic: FAIL (difference {})", rep.difference.as_deref().unwrap_or("?")).unwrap();
                }
                _ => writeln!(text, "symbolic: skipped (product factors present)").unwrap(),
            }
            for c in &rep.per_level {
                let verdict = if c.pass { "PASS" } else { "MISMATCH" };
                writeln!(text, "n = {}: expected {}, got {}  {verdict}", c.n, c.expected, c.got).unwrap();
            }
            write!(text, "overall: {}", if rep.passed() { "PASS" } else { "FAIL" }).unwrap();
            let tsv = std::iter::once("n\texpected\tgot\tpass".to_string())
                .chain(rep.per_level.iter().map(|c| format!("{}\t{}\t{}\t{}", c.n, c.expected, c.got, c.pass)))
                .collect::<Vec<_>>()
                .join("\n");
            let ok = rep.passed();
            Ok(Output { text, json: serde_json::to_value(&rep).unwrap(), tsv, ok })
        }
        Command::Hseries { n, order } => {
            let h = h_global_series(*n, *order)?;
            let text = h
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| format!("h_{k} = {c}"))
                .collect::<Vec<_>>()
                .join("\n");
            let tsv = std::iter::once("r\th_r".to_string())
                .chain(h.coeffs.iter().enumerate().map(|(k, c)| format!("{k}\t{c}")))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::passing(text, serde_json::to_value(&h).unwrap(), tsv))
        }
        Command::CatalanA { l, n } => {
            let v = catalan_a(*l, *n);
            Ok(scalar(dec, &[("l", l.to_string()), ("n", n.to_string())], &v))
        }
        Command::Extract { q, r, inverse } => {
            let qp = parse_qpoly(q)?;
            let mut series = qp.to_series(*r);
            if *inverse {
                series = series.inv()?;
            }
            let psi = extract_coefficient_family(&series, *r)?;
            let label = if *inverse { format!("1/({qp})") } else { qp.to_string() };
            Ok(Output::passing(
                psi.to_string(),
                json!({"q": label, "r": r.to_string(), "family": psi.to_string(), "d": psi.weighted_degree().to_string()}),
                format!("q\tr\tfamily\n{label}\t{r}\t{psi}"),
            ))
        }
        Command::Oracle { src, n, range, precision, tolerance } => {
            let f = src.load()?;
            let levels: Vec<u64> = match (n, range) {
                (Some(n), _) => vec![*n],
                (None, Some(r)) => {
                    let (lo, hi) = parse_range(r)?;
                    (lo..=hi).collect()
                }
                (None, None) => return Err(Failure::Usage("one of --n or --range is required".into())),
            };
            let reports = levels
                .iter()
                .map(|&n| cross_check(&f, n, tolerance, *precision))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = reports.iter().all(|r| r.pass);
            let text = reports
                .iter()
                .map(|r| {
                    format!(
                        "n = {}: exact {}, float {}, residual {} (tol {}, {} bits)  {}",
                        r.level, r.exact, r.float_value, r.residual, r.tolerance, r.precision_bits,
                        if r.pass { "PASS" } else { "FAIL" }
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            let tsv = std::iter::once("n\texact\tfloat\tresidual\tpass".to_string())
                .chain(reports.iter().map(|r| format!("{}\t{}\t{}\t{}\t{}", r.level, r.exact, r.float_value, r.residual, r.pass)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output { text, json: json!({"formula": f.render(), "checks": reports}), tsv, ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).unwrap()),
                Format::Tsv => println!("{}", out.tsv),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
