//! Permutations in one-line notation, pattern occurrences, and the three
//! symmetries (complement, reverse, inverse) of the square.
//!
//! Positions and values are 1-based at the API surface, matching the usual
//! one-line notation `σ = σ_1 σ_2 … σ_n`. An occurrence of a pattern `q` of
//! length `k` is a strictly increasing tuple of positions whose entries are
//! order-isomorphic to `q`.

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

/// Patterns are ordinary permutations; this artifact mostly uses length 3.
pub type Pattern = Permutation;

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation { values, len: n });
            }
            seen[v] = true;
        }
        Ok(Self { values })
    }

    /// Caller guarantees `values` is a rearrangement of `1..=n`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok(), "{values:?}");
        Self { values }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            values: (1..=n).collect(),
        }
    }

    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// Entry at 1-based position `pos`.
    pub fn at(&self, pos: usize) -> usize {
        self.values[pos - 1]
    }

    /// 1-based position of `value`.
    pub fn position_of(&self, value: usize) -> Option<usize> {
        self.values.iter().position(|&v| v == value).map(|p| p + 1)
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Self {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn reverse(&self) -> Self {
        Self {
            values: self.values.iter().rev().copied().collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (pos, &v) in self.values.iter().enumerate() {
            inv[v - 1] = pos + 1;
        }
        Self { values: inv }
    }

    pub fn apply(&self, op: Symmetry) -> Self {
        match op {
            Symmetry::Complement => self.complement(),
            Symmetry::Reverse => self.reverse(),
            Symmetry::Inverse => self.inverse(),
        }
    }

    /// Applies the word left to right.
    pub fn apply_word(&self, word: &SymmetryWord) -> Self {
        word.ops()
            .iter()
            .fold(self.clone(), |acc, &op| acc.apply(op))
    }

    /// 1-based positions of the right-to-left maxima, ascending.
    pub fn right_to_left_maxima(&self) -> Vec<usize> {
        let mut best = 0;
        let mut out = Vec::new();
        for (i, &v) in self.values.iter().enumerate().rev() {
            if v > best {
                best = v;
                out.push(i + 1);
            }
        }
        out.reverse();
        out
    }

    /// 1-based positions of the left-to-right maxima, ascending.
    pub fn left_to_right_maxima(&self) -> Vec<usize> {
        let mut best = 0;
        let mut out = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            if v > best {
                best = v;
                out.push(i + 1);
            }
        }
        out
    }

    /// Digit string such as `231` when every entry is a single digit,
    /// otherwise the space separated form.
    pub fn compact(&self) -> String {
        if self.len() <= 9 {
            self.values.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.values {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Accepts `231`, `2 3 1` and `2,3,1`. The undelimited form reads one digit
/// per entry.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Self::empty());
        }
        let delimited = s.contains(|c: char| c.is_whitespace() || c == ',');
        let parsed: Option<Vec<usize>> = if delimited {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().ok())
                .collect()
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let values = parsed.ok_or_else(|| Error::ParsePermutation(s.to_string()))?;
        Self::new(values).map_err(|_| Error::ParsePermutation(s.to_string()))
    }
}

/// The six patterns of length 3 in lexicographic order:
/// 123, 132, 213, 231, 312, 321.
pub fn patterns3() -> [Pattern; 6] {
    PATTERNS3.map(|p| Permutation::from_vec_unchecked(p.to_vec()))
}

pub(crate) const PATTERNS3: [[usize; 3]; 6] = [
    [1, 2, 3],
    [1, 3, 2],
    [2, 1, 3],
    [2, 3, 1],
    [3, 1, 2],
    [3, 2, 1],
];

/// Index of a length-3 pattern in [`patterns3`] order.
pub fn pattern3_index(q: &Pattern) -> Option<usize> {
    PATTERNS3.iter().position(|p| p[..] == q.values[..])
}

/// A strictly increasing tuple of 1-based positions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    indices: Vec<usize>,
}

impl Occurrence {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        let ok = indices.first().is_none_or(|&i| i >= 1) && indices.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "occurrence indices must be strictly increasing and 1-based: {indices:?}"
            )));
        }
        Ok(Self { indices })
    }

    pub(crate) fn from_zero_based(idx: &[usize]) -> Self {
        Self {
            indices: idx.iter().map(|i| i + 1).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Entries of `sigma` at these positions, left to right.
    pub fn values_in(&self, sigma: &Permutation) -> Vec<usize> {
        self.indices.iter().map(|&i| sigma.at(i)).collect()
    }

    /// Occurrence of the listed values, whatever order they sit in `sigma`.
    pub fn of_values(sigma: &Permutation, values: &[usize]) -> Result<Self> {
        let mut idx = Vec::with_capacity(values.len());
        for &v in values {
            idx.push(sigma.position_of(v).ok_or_else(|| {
                Error::InvalidArgument(format!("value {v} does not occur in {sigma}"))
            })?);
        }
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != values.len() {
            return Err(Error::InvalidArgument(format!(
                "repeated values {values:?}"
            )));
        }
        Ok(Self { indices: idx })
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Occurrence{self}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    Complement,
    Reverse,
    Inverse,
}

impl Symmetry {
    pub const ALL: [Symmetry; 3] = [Symmetry::Complement, Symmetry::Reverse, Symmetry::Inverse];

    pub fn letter(self) -> char {
        match self {
            Symmetry::Complement => 'c',
            Symmetry::Reverse => 'r',
            Symmetry::Inverse => 'i',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Symmetry::Complement => "complement",
            Symmetry::Reverse => "reverse",
            Symmetry::Inverse => "inverse",
        }
    }
}

/// A finite word over the symmetries, applied left to right.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetryWord(Vec<Symmetry>);

impl SymmetryWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn from_ops(ops: Vec<Symmetry>) -> Self {
        Self(ops)
    }

    pub fn ops(&self) -> &[Symmetry] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every letter is an involution, so the inverse is the reversed word.
    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().copied().collect())
    }

    pub fn then(&self, op: Symmetry) -> Self {
        let mut ops = self.0.clone();
        ops.push(op);
        Self(ops)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.0.iter().map(|op| op.name()).collect()
    }
}

impl fmt::Display for SymmetryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for op in &self.0 {
            write!(f, "{}", op.letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymmetryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetryWord({self})")
    }
}

impl FromStr for SymmetryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(Self::identity());
        }
        let ops = s
            .chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| match c {
                'c' => Ok(Symmetry::Complement),
                'r' => Ok(Symmetry::Reverse),
                'i' => Ok(Symmetry::Inverse),
                _ => Err(Error::InvalidArgument(format!(
                    "unknown symmetry letter {c:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self(ops))
    }
}

#[inline]
fn consistent(values: &[usize], q: &[usize], chosen: &[usize], j: usize) -> bool {
    let t = chosen.len();
    chosen
        .iter()
        .enumerate()
        .all(|(s, &i)| (q[s] < q[t]) == (values[i] < values[j]))
}

/// Depth-first walk over index tuples (0-based) order-isomorphic to `q`, in
/// lexicographic order. With `last = Some(e)` only tuples ending at `e` are
/// visited.
fn walk(
    values: &[usize],
    q: &[usize],
    chosen: &mut Vec<usize>,
    from: usize,
    last: Option<usize>,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let t = chosen.len();
    if t == q.len() {
        return visit(chosen);
    }
    let (lo, hi) = match last {
        Some(e) if t + 1 == q.len() => (e.max(from), e + 1),
        Some(e) => (from, e),
        None => (from, values.len()),
    };
    // Not enough room left for the remaining slots.
    let remaining = q.len() - t - 1;
    for j in lo..hi {
        if last.is_none() && j + remaining >= values.len() {
            break;
        }
        if consistent(values, q, chosen, j) {
            chosen.push(j);
            let flow = walk(values, q, chosen, j + 1, last, visit);
            chosen.pop();
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Number of occurrences by direct index-tuple scan, `O(n^k)`.
pub fn count_occurrences_scan(sigma: &Permutation, q: &Pattern) -> u64 {
    if q.len() > sigma.len() {
        return 0;
    }
    if q.is_empty() {
        return 1;
    }
    let mut count = 0u64;
    let _ = walk(
        sigma.values(),
        q.values(),
        &mut Vec::new(),
        0,
        None,
        &mut |_| {
            count += 1;
            ControlFlow::Continue(())
        },
    );
    count
}

/// Number of occurrences of `q` in `sigma`. Length-3 patterns go through
/// the quadratic counter [`pattern_counts3`]; everything else is scanned.
pub fn count_occurrences(sigma: &Permutation, q: &Pattern) -> u64 {
    match pattern3_index(q) {
        Some(idx) => pattern_counts3(sigma)[idx],
        None => count_occurrences_scan(sigma, q),
    }
}

/// All occurrences in lexicographic index order.
pub fn list_occurrences(sigma: &Permutation, q: &Pattern) -> Vec<Occurrence> {
    let mut out = Vec::new();
    if q.len() > sigma.len() {
        return out;
    }
    if q.is_empty() {
        out.push(Occurrence {
            indices: Vec::new(),
        });
        return out;
    }
    let _ = walk(
        sigma.values(),
        q.values(),
        &mut Vec::new(),
        0,
        None,
        &mut |idx| {
            out.push(Occurrence::from_zero_based(idx));
            ControlFlow::Continue(())
        },
    );
    out
}

pub fn is_occurrence(sigma: &Permutation, q: &Pattern, occ: &Occurrence) -> bool {
    let idx = occ.indices();
    if idx.len() != q.len() || idx.iter().any(|&i| i == 0 || i > sigma.len()) {
        return false;
    }
    let v = sigma.values();
    let qv = q.values();
    (0..idx.len())
        .all(|a| (a + 1..idx.len()).all(|b| (qv[a] < qv[b]) == (v[idx[a] - 1] < v[idx[b] - 1])))
}

/// Short-circuiting containment test.
pub fn contains(sigma: &Permutation, q: &Pattern) -> bool {
    contains_in(sigma.values(), q.values())
}

fn contains_in(values: &[usize], q: &[usize]) -> bool {
    if q.len() > values.len() {
        return false;
    }
    if q.is_empty() {
        return true;
    }
    walk(values, q, &mut Vec::new(), 0, None, &mut |_| {
        ControlFlow::Break(())
    })
    .is_break()
}

pub fn avoids(sigma: &Permutation, patterns: &[Pattern]) -> bool {
    patterns.iter().all(|q| !contains(sigma, q))
}

/// Whether some pattern of `patterns` has an occurrence in `values` that
/// uses the last entry. Extending a prefix one entry at a time, this is
/// exactly the test for the first violation.
pub(crate) fn ends_with_occurrence(values: &[usize], patterns: &[Pattern]) -> bool {
    let Some(e) = values.len().checked_sub(1) else {
        return false;
    };
    patterns.iter().any(|q| {
        let k = q.len();
        k > 0
            && k <= values.len()
            && walk(values, q.values(), &mut Vec::new(), 0, Some(e), &mut |_| {
                ControlFlow::Break(())
            })
            .is_break()
    })
}

/// Counts of all six length-3 patterns at once, indexed as [`patterns3`].
///
/// For a middle entry `j` let `ls, ll` be the numbers of smaller/larger
/// entries to its left and `rs, rl` those to its right. Then
/// `Σ ls·rl = f123`, `Σ ll·rs = f321`, `Σ ls·rs = f132 + f231`,
/// `Σ ll·rl = f213 + f312`; the first entry splits `f123 + f132 = Σ C(rl,2)`
/// and the last splits `f123 + f213 = Σ C(ls,2)`.
pub fn pattern_counts3(sigma: &Permutation) -> [u64; 6] {
    let v = sigma.values();
    let n = v.len();
    let (mut f123, mut f321, mut ss, mut llrl) = (0u64, 0u64, 0u64, 0u64);
    let (mut first_pairs, mut last_pairs) = (0u64, 0u64);
    for j in 0..n {
        let ls = v[..j].iter().filter(|&&x| x < v[j]).count() as u64;
        let ll = j as u64 - ls;
        let rs = (v[j] as u64 - 1) - ls;
        let rl = (n - 1 - j) as u64 - rs;
        f123 += ls * rl;
        f321 += ll * rs;
        ss += ls * rs;
        llrl += ll * rl;
        first_pairs += rl * rl.saturating_sub(1) / 2;
        last_pairs += ls * ls.saturating_sub(1) / 2;
    }
    let f132 = first_pairs - f123;
    let f213 = last_pairs - f123;
    [f123, f132, f213, ss - f132, llrl - f213, f321]
}

/// Rearranges `v` into its lexicographic successor; `false` at the last one.
pub fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order, produced by successor steps.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<usize>> = Some((1..=n).collect());
    std::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            current = Some(next);
        }
        Some(Permutation::from_vec_unchecked(out))
    })
}

#[cfg(test)]
pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("231").values(), &[2, 3, 1]);
        assert_eq!(p("2 3 1"), p("2,3,1"));
        assert_eq!(p("10 1 2 3 4 5 6 7 8 9").len(), 10);
        assert_eq!(p("8 9 7 5 4 3 6 1 2").to_string(), "8 9 7 5 4 3 6 1 2");
        assert_eq!(p("231").compact(), "231");
        assert!("221".parse::<Permutation>().is_err());
        assert!("2a1".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!(p("").is_empty());
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_occurrences(&p("213"), &p("213")), 1);
        assert_eq!(count_occurrences(&p("123456"), &p("123")), 20);
        assert_eq!(count_occurrences(&p("897543612"), &p("231")), 13);
        assert_eq!(count_occurrences_scan(&p("897543612"), &p("231")), 13);
        assert_eq!(count_occurrences(&p("12"), &p("123")), 0);
        assert_eq!(count_occurrences(&Permutation::empty(), &p("123")), 0);
    }

    #[test]
    fn count_general_k() {
        // 2413 in itself once, 1234 in 12345 C(5,4) times.
        assert_eq!(count_occurrences(&p("2413"), &p("2413")), 1);
        assert_eq!(count_occurrences(&p("12345"), &p("1234")), 5);
        assert_eq!(count_occurrences(&p("321"), &p("1")), 3);
    }

    #[test]
    fn list_examples() {
        let occ = list_occurrences(&p("213"), &p("213"));
        assert_eq!(occ, vec![Occurrence::new(vec![1, 2, 3]).unwrap()]);
        assert!(list_occurrences(&p("321"), &p("123")).is_empty());
        assert_eq!(
            list_occurrences(&p("231"), &p("231")),
            vec![Occurrence::new(vec![1, 2, 3]).unwrap()]
        );
        let many = list_occurrences(&p("1234"), &p("123"));
        let got: Vec<Vec<usize>> = many.iter().map(|o| o.indices().to_vec()).collect();
        assert_eq!(
            got,
            vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]
        );
    }

    #[test]
    fn avoids_examples() {
        assert!(avoids(&p("897543612"), &[p("123"), p("132")]));
        assert!(!avoids(&p("123"), &[p("123")]));
        assert!(avoids(&Permutation::empty(), &[p("123"), p("321")]));
    }

    #[test]
    fn symmetry_examples() {
        assert_eq!(p("231").complement(), p("213"));
        assert_eq!(p("231").reverse(), p("132"));
        assert_eq!(p("231").inverse(), p("312"));
        let w: SymmetryWord = "cr".parse().unwrap();
        assert_eq!(p("231").apply_word(&w), p("231").complement().reverse());
        assert_eq!(w.inverse().to_string(), "rc");
        assert_eq!(SymmetryWord::identity().to_string(), "id");
    }

    #[test]
    fn occurrence_validation() {
        assert!(Occurrence::new(vec![1, 1, 2]).is_err());
        assert!(Occurrence::new(vec![0, 1, 2]).is_err());
        assert!(Occurrence::new(vec![3, 2]).is_err());
        let sigma = p("7542163");
        let occ = Occurrence::of_values(&sigma, &[4, 2, 6]).unwrap();
        assert_eq!(occ.indices(), &[3, 4, 6]);
        assert!(is_occurrence(&sigma, &p("213"), &occ));
        assert!(!is_occurrence(&sigma, &p("123"), &occ));
    }

    #[test]
    fn occurrence_at_the_end() {
        let r = [p("123")];
        assert!(ends_with_occurrence(&[1, 2, 4], &r));
        assert!(ends_with_occurrence(&[1, 2, 4, 3], &[p("132")]));
        assert!(!ends_with_occurrence(&[3, 2, 1], &r));
        assert!(!ends_with_occurrence(&[2, 4, 1, 3], &r));
        assert!(ends_with_occurrence(&[2, 4, 1, 3, 5], &r));
        assert!(!ends_with_occurrence(&[], &r));
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<String> = all_permutations(3).map(|s| s.compact()).collect();
        assert_eq!(all, ["123", "132", "213", "231", "312", "321"]);
        assert_eq!(all_permutations(0).count(), 1);
        assert_eq!(all_permutations(6).count(), 720);
    }

    #[test]
    fn symmetry_transport_exhaustive() {
        let qs = patterns3();
        for n in 0..=8 {
            for sigma in all_permutations(n) {
                let counts = pattern_counts3(&sigma);
                for op in Symmetry::ALL {
                    let image = sigma.apply(op);
                    let image_counts = pattern_counts3(&image);
                    for (i, q) in qs.iter().enumerate() {
                        let j = pattern3_index(&q.apply(op)).unwrap();
                        assert_eq!(counts[i], image_counts[j], "{sigma} {op:?} {q}");
                    }
                }
            }
        }
    }

    #[test]
    fn avoidance_transport_exhaustive() {
        let qs = patterns3();
        for n in 0..=7 {
            let perms: Vec<Permutation> = all_permutations(n).collect();
            for mask in 1u32..64 {
                let set: Vec<Pattern> = (0..6)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| qs[i].clone())
                    .collect();
                for op in Symmetry::ALL {
                    let image_set: Vec<Pattern> = set.iter().map(|q| q.apply(op)).collect();
                    for sigma in &perms {
                        assert_eq!(avoids(sigma, &set), avoids(&sigma.apply(op), &image_set));
                    }
                }
            }
        }
    }

    #[test]
    fn fast_counter_agrees_with_scan_exhaustive() {
        let qs = patterns3();
        for n in 0..=8 {
            for sigma in all_permutations(n) {
                let fast = pattern_counts3(&sigma);
                for (i, q) in qs.iter().enumerate() {
                    assert_eq!(fast[i], count_occurrences_scan(&sigma, q));
                }
                assert_eq!(fast.iter().sum::<u64>(), binomial(n as u64, 3));
            }
        }
    }

    fn arb_perm(max: usize) -> impl Strategy<Value = Permutation> {
        (0..=max)
            .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
            .prop_map(Permutation::from_vec_unchecked)
    }

    proptest! {
        #[test]
        fn involutions_and_commutation(sigma in arb_perm(14)) {
            for op in Symmetry::ALL {
                prop_assert_eq!(sigma.apply(op).apply(op), sigma.clone());
            }
            prop_assert_eq!(sigma.reverse().complement(), sigma.complement().reverse());
        }

        #[test]
        fn count_matches_listing(sigma in arb_perm(12), qi in 0usize..6) {
            let q = &patterns3()[qi];
            let listed = list_occurrences(&sigma, q);
            prop_assert_eq!(listed.len() as u64, count_occurrences(&sigma, q));
            prop_assert!(listed.iter().all(|o| is_occurrence(&sigma, q, o)));
            prop_assert!(listed.windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn six_counts_sum_to_binomial(sigma in arb_perm(30)) {
            let total: u64 = pattern_counts3(&sigma).iter().sum();
            prop_assert_eq!(total, binomial(sigma.len() as u64, 3));
        }
    }
}
