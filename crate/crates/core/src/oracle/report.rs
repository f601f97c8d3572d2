//! Cross-method verification over every 2- and 3-subset of `S_3`.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use super::{pattern_totals3, OracleConfig};
use crate::classes::{
    canonical_class, generate_avoiders, transport_pattern_index, ClassId, PatternSet,
};
use crate::error::{Error, Result};
use crate::formulas::{
    composition_sum, form, pair_sum, pattern_name, table_form, ExpPoly, Form, COMPOSITION_SUM_KEYS,
};
use crate::genfunc::{f312_via_maj, RationalGF};
use crate::perm::{pattern_counts3, Pattern, PATTERNS3};
use crate::SymmetryWord;

/// Structural generation is skipped above this length.
pub const STRUCTURAL_MAX: usize = 16;
/// Composition and maj sums enumerate `2^(n-1)` resp. `F_(n+1)` objects.
const SUM_MAX: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

fn as_decimal<S: Serializer>(n: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// One `(set, pattern, n)` entry. Each method column holds a decimal
/// string, or nothing when the method does not apply at this `n`.
#[derive(Clone, Debug, Serialize)]
pub struct Cell {
    pub set: String,
    pub class: ClassId,
    pub word: String,
    pub pattern: String,
    #[serde(serialize_with = "as_decimal")]
    pub n: usize,
    pub oracle: Option<String>,
    pub structural: Option<String>,
    pub closed_form: Option<String>,
    pub table: Option<String>,
    pub composition_sum: Option<String>,
    pub pair_sum: Option<String>,
    pub maj_sum: Option<String>,
    pub status: Status,
    pub note: Option<String>,
}

impl Cell {
    pub fn name(&self) -> String {
        format!(
            "{} pattern {} n={} ({} via {})",
            self.set, self.pattern, self.n, self.class, self.word
        )
    }

    pub fn values(&self) -> Vec<(&'static str, &str)> {
        [
            ("oracle", &self.oracle),
            ("structural", &self.structural),
            ("closed_form", &self.closed_form),
            ("table", &self.table),
            ("composition_sum", &self.composition_sum),
            ("pair_sum", &self.pair_sum),
            ("maj_sum", &self.maj_sum),
        ]
        .into_iter()
        .filter_map(|(k, v)| v.as_deref().map(|v| (k, v)))
        .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    #[serde(serialize_with = "as_decimal")]
    pub n_max: usize,
    #[serde(serialize_with = "as_decimal")]
    pub oracle_ceiling: usize,
    #[serde(serialize_with = "as_decimal")]
    pub elapsed_ms: usize,
    pub cells: Vec<Cell>,
    /// Names of the failing cells.
    pub failures: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A replacement formula for one canonical cell, as read from a fixture.
#[derive(Clone, Debug, Deserialize)]
pub struct FormOverride {
    pub class: String,
    pub pattern: String,
    pub form: FormSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormSpec {
    Zero,
    ExpPoly(ExpPoly),
    Gf {
        numerator: String,
        denominator: String,
    },
    Finite(Vec<String>),
}

impl FormOverride {
    pub fn resolve(&self) -> Result<(ClassId, usize, Form)> {
        let id: ClassId = self.class.parse()?;
        let q: Pattern = self.pattern.parse()?;
        let idx = crate::perm::pattern3_index(&q).ok_or_else(|| {
            Error::InvalidArgument(format!("{} is not a length-3 pattern", self.pattern))
        })?;
        let form = match &self.form {
            FormSpec::Zero => Form::Zero,
            FormSpec::ExpPoly(e) => Form::ExpPoly(e.clone()),
            FormSpec::Gf {
                numerator,
                denominator,
            } => Form::Gf(RationalGF::parse(numerator, denominator)?),
            FormSpec::Finite(values) => Form::Finite(
                values
                    .iter()
                    .map(|v| {
                        v.parse::<BigInt>()
                            .map_err(|_| Error::InvalidArgument(format!("{v:?} is not an integer")))
                    })
                    .collect::<Result<_>>()?,
            ),
        };
        Ok((id, idx, form))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub n_max: usize,
    /// Restrict to sets whose canonical class is listed.
    pub classes: Option<Vec<ClassId>>,
    /// Only the canonical representative of each class.
    pub canonical_only: bool,
    pub oracle: OracleConfig,
    pub overrides: Vec<FormOverride>,
}

impl VerifyOptions {
    pub fn new(n_max: usize) -> Self {
        Self {
            n_max,
            classes: None,
            canonical_only: false,
            oracle: OracleConfig::default(),
            overrides: Vec::new(),
        }
    }
}

/// Every set and pattern for `3 ≤ n ≤ n_max` with the default oracle.
pub fn verify_all(n_max: usize) -> VerificationReport {
    verify_all_with(&VerifyOptions::new(n_max)).expect("no overrides to resolve")
}

/// Errors only for overrides that do not parse; disagreements are
/// reported as failing cells.
pub fn verify_all_with(opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut forms: BTreeMap<(ClassId, usize), Form> = BTreeMap::new();
    for o in &opts.overrides {
        let (id, idx, f) = o.resolve()?;
        forms.insert((id, idx), f);
    }
    let mut jobs: Vec<(PatternSet, ClassId, SymmetryWord, usize)> = Vec::new();
    for set in PatternSet::all_pairs_and_triples() {
        let (id, word) = canonical_class(set)?;
        let wanted = opts.classes.as_ref().is_none_or(|c| c.contains(&id));
        if wanted && (!opts.canonical_only || set == id.canonical_set()) {
            for n in 3..=opts.n_max {
                jobs.push((set, id, word.clone(), n));
            }
        }
    }
    let cells: Vec<Cell> = jobs
        .par_iter()
        .flat_map_iter(|(set, id, word, n)| cells_for(*set, *id, word, *n, opts, &forms))
        .collect();
    let failures = cells
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(Cell::name)
        .collect();
    Ok(VerificationReport {
        n_max: opts.n_max,
        oracle_ceiling: opts.oracle.ceiling(),
        elapsed_ms: start.elapsed().as_millis() as usize,
        cells,
        failures,
    })
}

fn cells_for(
    set: PatternSet,
    id: ClassId,
    word: &SymmetryWord,
    n: usize,
    opts: &VerifyOptions,
    forms: &BTreeMap<(ClassId, usize), Form>,
) -> Vec<Cell> {
    let patterns = set.patterns();
    let oracle = (n <= opts.oracle.ceiling()).then(|| {
        pattern_totals3(n, &patterns, &opts.oracle)
            .expect("n within ceiling")
            .1
    });
    let structural = (n <= STRUCTURAL_MAX).then(|| {
        let mut totals = [0u64; 6];
        for sigma in generate_avoiders(set, n).expect("set of size 2 or 3") {
            for (t, c) in totals.iter_mut().zip(pattern_counts3(&sigma)) {
                *t += c;
            }
        }
        totals
    });
    let back_word = word.inverse();
    (0..PATTERNS3.len())
        .map(|idx| {
            // Occurrences of q over S_n(w(C)) are occurrences of w⁻¹(q) over S_n(C).
            let back = transport_pattern_index(idx, &back_word);
            let q: Pattern = pattern_name(back).parse().expect("static pattern");
            let mut notes = Vec::new();
            let mut eval = |label: &str, f: &Form| match f.eval(n) {
                Ok(v) => Some(v.to_string()),
                Err(e) => {
                    notes.push(format!("{label}: {e}"));
                    None
                }
            };
            let closed = forms
                .get(&(id, back))
                .cloned()
                .unwrap_or_else(|| form(id, back));
            let closed_form = eval("closed_form", &closed);
            let table = table_form(id, back).and_then(|f| eval("table", &f));
            let composition_sum = (COMPOSITION_SUM_KEYS.contains(&(id, back)) && n <= SUM_MAX)
                .then(|| composition_sum(id, &q, n).expect("listed key").to_string());
            let pair_sum = (id == ClassId::D5 && matches!(back, 2 | 4))
                .then(|| pair_sum(&q, n).expect("213 or 312").to_string());
            let maj_sum = (id == ClassId::T1 && matches!(back, 3 | 4) && n <= SUM_MAX)
                .then(|| f312_via_maj(n).expect("n >= 3").to_string());
            let mut cell = Cell {
                set: set.to_string(),
                class: id,
                word: word.to_string(),
                pattern: pattern_name(idx),
                n,
                oracle: oracle.map(|t| t[idx].to_string()),
                structural: structural.map(|t| t[idx].to_string()),
                closed_form,
                table,
                composition_sum,
                pair_sum,
                maj_sum,
                status: Status::Pass,
                note: None,
            };
            let values = cell.values();
            let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
            if !agree {
                let listed: Vec<String> = values.iter().map(|(k, v)| format!("{k}={v}")).collect();
                notes.push(format!("disagreement: {}", listed.join(" ")));
            }
            if !notes.is_empty() {
                cell.status = Status::Fail;
                cell.note = Some(notes.join("; "));
            }
            cell
        })
        .collect()
}
