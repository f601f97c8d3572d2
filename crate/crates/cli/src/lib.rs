//! `patcount` subcommands. Every command prints one JSON document, except
//! `verify --format csv`. Integers are always decimal strings.

use std::ffi::OsString;
use std::fmt::Display;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use patcount_core::classes::{
    canonical_class, generate_avoiders, phi1, phi1_inv, phi2, phi2_inv, phi4, phi4_inv, phi5,
    phi5_inv, psi1, psi1_inv, structural_swap, ClassId, PatternSet, TwoSubset,
};
use patcount_core::compositions::Composition;
use patcount_core::formulas::{
    closed_form_for, composition_sum, form, pair_sum, pattern_name, Form, COMPOSITION_SUM_KEYS,
};
use patcount_core::genfunc::{f312_via_maj, named_gf, FibWord, RationalGF};
use patcount_core::oracle::{
    filter_avoiders, pattern_total, verify_all_with, FormOverride, OracleConfig, Status,
    VerifyOptions,
};
use patcount_core::perm::{count_occurrences, pattern3_index};
use patcount_core::trees::{rho, rho_inv, varrho, varrho_inv, ColoredTree};
use patcount_core::{Occurrence, Pattern, Permutation};
use serde::Deserialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Longest permutations the structural generators are asked for.
const STRUCTURAL_N_MAX: usize = 22;
const FORMULA_N_MAX: usize = 10_000;
const VERIFY_N_MAX: usize = 60;
const GF_TERMS_MAX: usize = 10_000;

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(doc: &Value) -> Self {
        Self {
            code: EXIT_OK,
            stdout: pretty(doc),
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Display) -> Self {
        Self {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn pretty(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json values serialize");
    s.push('\n');
    s
}

#[derive(Parser)]
#[command(
    name = "patcount",
    version,
    about = "Exact length-3 pattern counts over avoidance classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List S_n(R).
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Two or three patterns, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        avoid: Vec<String>,
        #[arg(long, value_enum, default_value_t = EnumerateMethod::Structural)]
        method: EnumerateMethod,
    },
    /// Total occurrences of a pattern over S_n(R).
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        avoid: Vec<String>,
        #[arg(long)]
        pattern: String,
        #[arg(long, value_enum, default_value_t = CountMethod::Formula)]
        method: CountMethod,
    },
    /// Cross-check every method against every other; exit 1 on any disagreement.
    Verify {
        #[arg(long = "max-n")]
        max_n: usize,
        /// Canonical class ids (D1..D6, T1..T5, DEGEN); default all.
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// JSON file replacing closed forms of selected cells.
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Skip the symmetric images of the canonical sets.
        #[arg(long)]
        canonical_only: bool,
    },
    /// Apply one of the bijections, or its inverse.
    Bijection {
        #[arg(long, value_enum)]
        name: BijectionName,
        #[arg(long)]
        input: String,
        #[arg(long)]
        inverse: bool,
        /// Length for phi5.
        #[arg(long)]
        n: Option<usize>,
        /// Black positions for rho, varrho and swap, e.g. 1,3,4.
        #[arg(long)]
        occurrence: Option<String>,
        /// Class for swap (T2, T3 or T4).
        #[arg(long)]
        class: Option<String>,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: Option<String>,
        /// Include Graphviz renderings of the colored trees.
        #[arg(long)]
        dot: bool,
    },
    /// Expand a rational generating function.
    Gf {
        /// t1_312, t1_231, t1_321, fib, fib_shift, binomial_fib or custom.
        #[arg(long)]
        name: String,
        #[arg(long)]
        num: Option<String>,
        #[arg(long)]
        den: Option<String>,
        /// Highest power of x to print.
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateMethod {
    Structural,
    Filter,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountMethod {
    Formula,
    Structural,
    Oracle,
    Gf,
    Sum,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum BijectionName {
    Phi1,
    Phi2,
    Phi4,
    Phi5,
    Psi1,
    Rho,
    Varrho,
    Swap,
}

impl BijectionName {
    fn as_str(self) -> &'static str {
        match self {
            Self::Phi1 => "phi1",
            Self::Phi2 => "phi2",
            Self::Phi4 => "phi4",
            Self::Phi5 => "phi5",
            Self::Psi1 => "psi1",
            Self::Rho => "rho",
            Self::Varrho => "varrho",
            Self::Swap => "swap",
        }
    }
}

/// Contents of a `--fixture` file; other top-level keys are ignored.
#[derive(Deserialize)]
struct Fixture {
    overrides: Vec<FormOverride>,
}

type CmdResult = Result<Outcome, String>;

fn err(e: impl Display) -> String {
    e.to_string()
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: e.to_string(),
            }
        }
        // --help and --version
        Err(e) => {
            return Outcome {
                code: EXIT_OK,
                stdout: e.to_string(),
                stderr: String::new(),
            }
        }
    };
    let result = match cli.command {
        Command::Enumerate { n, avoid, method } => enumerate(n, &avoid, method),
        Command::Count {
            n,
            avoid,
            pattern,
            method,
        } => count(n, &avoid, &pattern, method),
        Command::Verify {
            max_n,
            classes,
            format,
            fixture,
            canonical_only,
        } => verify(max_n, &classes, format, fixture, canonical_only),
        Command::Bijection {
            name,
            input,
            inverse,
            n,
            occurrence,
            class,
            from,
            to,
            dot,
        } => bijection(BijectionArgs {
            name,
            input,
            inverse,
            n,
            occurrence,
            class,
            from,
            to,
            dot,
        }),
        Command::Gf {
            name,
            num,
            den,
            terms,
        } => gf(&name, num, den, terms),
    };
    result.unwrap_or_else(Outcome::usage)
}

fn parse_set(avoid: &[String]) -> Result<PatternSet, String> {
    let patterns: Vec<Pattern> = avoid
        .iter()
        .map(|s| parse_pattern3(s))
        .collect::<Result<_, _>>()?;
    let set = PatternSet::from_patterns(&patterns).map_err(err)?;
    if set.len() != patterns.len() || !matches!(set.len(), 2 | 3) {
        return Err(format!(
            "--avoid needs 2 or 3 distinct length-3 patterns, got {}",
            avoid.join(",")
        ));
    }
    Ok(set)
}

fn parse_pattern3(s: &str) -> Result<Pattern, String> {
    let q: Pattern = s.trim().parse().map_err(err)?;
    if pattern3_index(&q).is_none() {
        return Err(format!("{s:?} is not a pattern of length 3"));
    }
    Ok(q)
}

fn parse_occurrence(s: &str) -> Result<Occurrence, String> {
    let idx: Vec<usize> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| format!("bad position {t:?} in occurrence"))
        })
        .collect::<Result<_, _>>()?;
    Occurrence::new(idx).map_err(err)
}

fn strings<T: ToString>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

fn canonical_json(
    set: PatternSet,
) -> Result<(ClassId, Value, patcount_core::SymmetryWord), String> {
    let (id, word) = canonical_class(set).map_err(err)?;
    let doc = json!({
        "class": id.name(),
        "word": word.to_string(),
        "set": strings(id.canonical_set().patterns().iter().map(|q| q.compact())),
    });
    Ok((id, doc, word))
}

fn oracle_config() -> Result<OracleConfig, String> {
    OracleConfig::from_env().map_err(err)
}

fn enumerate(n: usize, avoid: &[String], method: EnumerateMethod) -> CmdResult {
    let set = parse_set(avoid)?;
    let (_, canonical, _) = canonical_json(set)?;
    let (perms, label): (Vec<Permutation>, _) = match method {
        EnumerateMethod::Structural => {
            if n > STRUCTURAL_N_MAX {
                return Err(format!(
                    "n = {n} is above {STRUCTURAL_N_MAX} for structural enumeration"
                ));
            }
            (
                generate_avoiders(set, n).map_err(err)?.collect(),
                "structural",
            )
        }
        EnumerateMethod::Filter => (
            filter_avoiders(n, &set.patterns(), &oracle_config()?).map_err(err)?,
            "filter",
        ),
    };
    Ok(Outcome::ok(&json!({
        "command": "enumerate",
        "n": n.to_string(),
        "avoid": strings(set.patterns().iter().map(|q| q.compact())),
        "method": label,
        "canonical": canonical,
        "count": perms.len().to_string(),
        "permutations": strings(&perms),
    })))
}

fn count(n: usize, avoid: &[String], pattern: &str, method: CountMethod) -> CmdResult {
    let set = parse_set(avoid)?;
    let (id, canonical, word) = canonical_json(set)?;
    let q: Pattern = pattern.trim().parse().map_err(err)?;
    // The cell of the canonical class this request maps to.
    let back = pattern3_index(&q.apply_word(&word.inverse()));
    let need3 = |what: &str| {
        back.ok_or_else(|| format!("--method {what} needs a pattern of length 3, got {pattern}"))
    };
    let (value, label, extra): (BigInt, &str, Option<&str>) = match method {
        CountMethod::Formula => {
            need3("formula")?;
            if n > FORMULA_N_MAX {
                return Err(format!("n = {n} is above {FORMULA_N_MAX}"));
            }
            (closed_form_for(set, &q, n).map_err(err)?, "formula", None)
        }
        CountMethod::Structural => {
            if n > STRUCTURAL_N_MAX {
                return Err(format!(
                    "n = {n} is above {STRUCTURAL_N_MAX} for structural counting"
                ));
            }
            let total: u64 = generate_avoiders(set, n)
                .map_err(err)?
                .map(|s| count_occurrences(&s, &q))
                .sum();
            (BigInt::from(total), "structural", None)
        }
        CountMethod::Oracle => (
            pattern_total(n, &set.patterns(), &q, &oracle_config()?).map_err(err)?,
            "oracle",
            None,
        ),
        CountMethod::Gf => {
            let b = need3("gf")?;
            match form(id, b) {
                Form::Gf(g) if n >= 3 => (g.coefficient(n), "gf", None),
                Form::Gf(_) => (BigInt::from(0), "gf", None),
                _ => {
                    return Err(format!(
                        "no generating function for pattern {} on {id}; --method gf applies to T1",
                        pattern_name(b)
                    ))
                }
            }
        }
        CountMethod::Sum => {
            let b = need3("sum")?;
            let qb: Pattern = pattern_name(b).parse().expect("static pattern");
            if COMPOSITION_SUM_KEYS.contains(&(id, b)) {
                if n > STRUCTURAL_N_MAX {
                    return Err(format!(
                        "n = {n} is above {STRUCTURAL_N_MAX} for composition sums"
                    ));
                }
                (
                    composition_sum(id, &qb, n).map_err(err)?,
                    "sum",
                    Some("composition_sum"),
                )
            } else if id == ClassId::D5 && matches!(b, 2 | 4) {
                (pair_sum(&qb, n).map_err(err)?, "sum", Some("pair_sum"))
            } else if id == ClassId::T1 && matches!(b, 3 | 4) {
                if n > 30 {
                    return Err(format!("n = {n} is above 30 for maj sums"));
                }
                let v = if n < 3 {
                    BigInt::from(0)
                } else {
                    f312_via_maj(n).map_err(err)?
                };
                (v, "sum", Some("maj_sum"))
            } else {
                return Err(format!(
                    "no summation formula for pattern {} on {id}",
                    pattern_name(b)
                ));
            }
        }
    };
    let mut doc = json!({
        "command": "count",
        "n": n.to_string(),
        "avoid": strings(set.patterns().iter().map(|q| q.compact())),
        "pattern": q.compact(),
        "method": label,
        "canonical": canonical,
        "value": value.to_string(),
    });
    if let Some(b) = back {
        doc["canonical"]["pattern"] = json!(pattern_name(b));
    }
    if let Some(kind) = extra {
        doc["sum_kind"] = json!(kind);
    }
    Ok(Outcome::ok(&doc))
}

fn verify(
    max_n: usize,
    classes: &[String],
    format: Format,
    fixture: Option<PathBuf>,
    canonical_only: bool,
) -> CmdResult {
    if max_n > VERIFY_N_MAX {
        return Err(format!("--max-n {max_n} is above {VERIFY_N_MAX}"));
    }
    let mut opts = VerifyOptions::new(max_n);
    opts.oracle = oracle_config()?;
    opts.canonical_only = canonical_only;
    if !classes.is_empty() {
        let ids = classes
            .iter()
            .map(|c| c.parse::<ClassId>().map_err(err))
            .collect::<Result<Vec<_>, _>>()?;
        opts.classes = Some(ids);
    }
    if let Some(path) = fixture {
        let text =
            std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let fx: Fixture =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        opts.overrides = fx.overrides;
    }
    let report = verify_all_with(&opts).map_err(err)?;
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).map_err(err)?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for cell in &report.cells {
                w.serialize(cell).map_err(err)?;
            }
            String::from_utf8(w.into_inner().map_err(err)?).map_err(err)?
        }
    };
    let mut stderr = String::new();
    for cell in report.cells.iter().filter(|c| c.status == Status::Fail) {
        stderr.push_str(&format!(
            "FAIL {}: {}\n",
            cell.name(),
            cell.note.as_deref().unwrap_or_default()
        ));
    }
    Ok(Outcome {
        code: if report.passed() { EXIT_OK } else { EXIT_FAIL },
        stdout,
        stderr,
    })
}

struct BijectionArgs {
    name: BijectionName,
    input: String,
    inverse: bool,
    n: Option<usize>,
    occurrence: Option<String>,
    class: Option<String>,
    from: Option<String>,
    to: Option<String>,
    dot: bool,
}

fn bijection(a: BijectionArgs) -> CmdResult {
    let perm = |s: &str| s.parse::<Permutation>().map_err(err);
    let comp = |s: &str| s.parse::<Composition>().map_err(err);
    let mut doc = json!({
        "command": "bijection",
        "name": a.name.as_str(),
        "direction": if a.inverse { "inverse" } else { "forward" },
        "input": a.input,
    });
    match (a.name, a.inverse) {
        (BijectionName::Phi1, false) => doc["output"] = json!(phi1(&comp(&a.input)?).to_string()),
        (BijectionName::Phi2, false) => doc["output"] = json!(phi2(&comp(&a.input)?).to_string()),
        (BijectionName::Phi4, false) => doc["output"] = json!(phi4(&comp(&a.input)?).to_string()),
        (BijectionName::Phi1, true) => {
            doc["output"] = json!(phi1_inv(&perm(&a.input)?).map_err(err)?.to_string())
        }
        (BijectionName::Phi2, true) => {
            doc["output"] = json!(phi2_inv(&perm(&a.input)?).map_err(err)?.to_string())
        }
        (BijectionName::Phi4, true) => {
            doc["output"] = json!(phi4_inv(&perm(&a.input)?).map_err(err)?.to_string())
        }
        (BijectionName::Phi5, false) => {
            let n = a.n.ok_or("phi5 needs --n")?;
            let parts: Vec<usize> = a
                .input
                .trim_matches(|c| c == '{' || c == '}')
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| format!("bad two-subset {:?}", a.input))
                })
                .collect::<Result<_, _>>()?;
            let [k, m] = parts[..] else {
                return Err(format!("phi5 input is k,m with k < m, got {:?}", a.input));
            };
            doc["n"] = json!(n.to_string());
            doc["output"] = json!(phi5(TwoSubset::new(k, m).map_err(err)?, n)
                .map_err(err)?
                .to_string());
        }
        (BijectionName::Phi5, true) => {
            doc["output"] = match phi5_inv(&perm(&a.input)?).map_err(err)? {
                Some(s) => json!(s.to_string()),
                None => json!("identity"),
            }
        }
        (BijectionName::Psi1, false) => {
            let w: FibWord = a.input.parse().map_err(err)?;
            doc["output"] = json!(psi1(&w).to_string());
        }
        (BijectionName::Psi1, true) => {
            doc["output"] = json!(psi1_inv(&perm(&a.input)?).map_err(err)?.to_string())
        }
        (BijectionName::Rho | BijectionName::Varrho, inverse) => {
            let sigma = perm(&a.input)?;
            let occ = parse_occurrence(a.occurrence.as_deref().ok_or("--occurrence is required")?)?;
            let t = ColoredTree::from_occurrence(&sigma, &occ).map_err(err)?;
            let map = match (a.name, inverse) {
                (BijectionName::Rho, false) => rho,
                (BijectionName::Rho, true) => rho_inv,
                (_, false) => varrho,
                (_, true) => varrho_inv,
            };
            let image = map(&t).map_err(err)?;
            let (out, out_occ) = image.to_occurrence();
            doc["occurrence"] = json!(strings(occ.indices()));
            doc["output"] = json!(out.to_string());
            doc["output_occurrence"] = json!(strings(out_occ.indices()));
            if a.dot {
                doc["dot_input"] = json!(t.to_dot());
                doc["dot_output"] = json!(image.to_dot());
            }
        }
        (BijectionName::Swap, inverse) => {
            let id: ClassId = a
                .class
                .as_deref()
                .ok_or("swap needs --class")?
                .parse()
                .map_err(err)?;
            let mut from = parse_pattern3(a.from.as_deref().ok_or("swap needs --from")?)?;
            let mut to = parse_pattern3(a.to.as_deref().ok_or("swap needs --to")?)?;
            if inverse {
                std::mem::swap(&mut from, &mut to);
            }
            let sigma = perm(&a.input)?;
            let occ = parse_occurrence(a.occurrence.as_deref().ok_or("--occurrence is required")?)?;
            let (out, out_occ) = structural_swap(id, &sigma, &occ, &from, &to).map_err(err)?;
            doc["class"] = json!(id.name());
            doc["from"] = json!(from.compact());
            doc["to"] = json!(to.compact());
            doc["occurrence"] = json!(strings(occ.indices()));
            doc["output"] = json!(out.to_string());
            doc["output_occurrence"] = json!(strings(out_occ.indices()));
        }
    }
    Ok(Outcome::ok(&doc))
}

fn gf(name: &str, num: Option<String>, den: Option<String>, terms: usize) -> CmdResult {
    if terms > GF_TERMS_MAX {
        return Err(format!("--terms {terms} is above {GF_TERMS_MAX}"));
    }
    let g: RationalGF = if name == "custom" {
        let (Some(num), Some(den)) = (num, den) else {
            return Err("--name custom needs --num and --den".into());
        };
        RationalGF::parse(&num, &den).map_err(err)?
    } else {
        if num.is_some() || den.is_some() {
            return Err("--num and --den only go with --name custom".into());
        }
        named_gf(name).ok_or_else(|| format!("unknown generating function {name:?}"))?
    };
    Ok(Outcome::ok(&json!({
        "command": "gf",
        "name": name,
        "numerator": g.numerator().to_string(),
        "denominator": g.denominator().to_string(),
        "terms": terms.to_string(),
        "coefficients": strings(g.coefficients(terms)),
    })))
}
