//! Registry of doubly and triply restricted avoidance classes of length-3
//! patterns: canonical representatives, cardinalities, and structural
//! generators that never touch all of `S_n`.
//!
//! Every 2- or 3-subset of `S_3` is carried onto exactly one canonical set by
//! a word in the symmetries, and a permutation avoids the canonical set iff
//! its image under that word avoids the image set. Non-canonical classes are
//! generated by pushing the canonical generator forward along the word.

mod bijections;
mod insertion;
mod swap;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

pub use bijections::{
    phi1, phi1_inv, phi2, phi2_inv, phi4, phi4_inv, phi5, phi5_inv, psi1, psi1_inv, TwoSubset,
};
pub use insertion::{insertion_family, insertion_member};
pub use swap::{structural_swap, swap_pairs};

use crate::compositions::enumerate_compositions;
use crate::error::{Error, Result};
use crate::genfunc::{fib_words, fibonacci};
use crate::perm::{
    all_permutations, avoids, pattern3_index, patterns3, Pattern, Permutation, Symmetry,
    SymmetryWord, PATTERNS3,
};

/// A set of length-3 patterns, stored as a bitmask over [`patterns3`] order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSet {
    mask: u8,
}

impl PatternSet {
    pub fn from_patterns(patterns: &[Pattern]) -> Result<Self> {
        let mut mask = 0u8;
        for q in patterns {
            let idx = pattern3_index(q).ok_or_else(|| {
                Error::InvalidArgument(format!("{q} is not a pattern of length 3"))
            })?;
            mask |= 1 << idx;
        }
        Ok(Self { mask })
    }

    pub(crate) const fn from_mask(mask: u8) -> Self {
        Self { mask }
    }

    pub fn mask(self) -> u8 {
        self.mask
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains_index(self, idx: usize) -> bool {
        self.mask >> idx & 1 == 1
    }

    pub fn contains(self, q: &Pattern) -> bool {
        pattern3_index(q).is_some_and(|i| self.contains_index(i))
    }

    pub fn patterns(self) -> Vec<Pattern> {
        let all = patterns3();
        (0..6)
            .filter(|&i| self.contains_index(i))
            .map(|i| all[i].clone())
            .collect()
    }

    pub fn apply(self, op: Symmetry) -> Self {
        let all = patterns3();
        let mut mask = 0;
        for i in (0..6).filter(|&i| self.contains_index(i)) {
            mask |= 1 << pattern3_index(&all[i].apply(op)).expect("length 3");
        }
        Self { mask }
    }

    pub fn apply_word(self, word: &SymmetryWord) -> Self {
        word.ops().iter().fold(self, |acc, &op| acc.apply(op))
    }

    /// Every 2- and 3-element subset of `S_3` (15 + 20 sets).
    pub fn all_pairs_and_triples() -> Vec<PatternSet> {
        (1u8..64)
            .filter(|m| matches!(m.count_ones(), 2 | 3))
            .map(Self::from_mask)
            .collect()
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.patterns().iter().map(|q| q.compact()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

impl fmt::Debug for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PatternSet{self}")
    }
}

/// Parses `123,132` (braces optional).
impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let patterns = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .split(',')
            .map(|t| t.trim().parse::<Permutation>())
            .collect::<Result<Vec<_>>>()?;
        let set = Self::from_patterns(&patterns)?;
        if set.len() != patterns.len() {
            return Err(Error::InvalidArgument(format!("repeated pattern in {s:?}")));
        }
        Ok(set)
    }
}

impl Serialize for PatternSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.patterns().iter().map(|q| q.compact()))
    }
}

/// Canonical avoidance classes. `D*` avoid two patterns, `T*` three;
/// `Degen` stands for every triple containing both 123 and 321.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassId {
    D1,
    D2,
    D3,
    D4,
    D5,
    D6,
    T1,
    T2,
    T3,
    T4,
    T5,
    Degen,
}

const fn mask_of(patterns: [usize; 3], len: usize) -> u8 {
    let mut mask = 0u8;
    let mut i = 0;
    while i < len {
        mask |= 1 << patterns[i];
        i += 1;
    }
    mask
}

// Indices into PATTERNS3: 123=0, 132=1, 213=2, 231=3, 312=4, 321=5.
const D1_SET: PatternSet = PatternSet::from_mask(mask_of([0, 1, 0], 2));
const D2_SET: PatternSet = PatternSet::from_mask(mask_of([1, 2, 0], 2));
const D3_SET: PatternSet = PatternSet::from_mask(mask_of([1, 3, 0], 2));
const D4_SET: PatternSet = PatternSet::from_mask(mask_of([1, 4, 0], 2));
const D5_SET: PatternSet = PatternSet::from_mask(mask_of([1, 5, 0], 2));
const D6_SET: PatternSet = PatternSet::from_mask(mask_of([0, 5, 0], 2));
const T1_SET: PatternSet = PatternSet::from_mask(mask_of([0, 1, 2], 3));
const T2_SET: PatternSet = PatternSet::from_mask(mask_of([0, 1, 3], 3));
const T3_SET: PatternSet = PatternSet::from_mask(mask_of([1, 2, 3], 3));
const T4_SET: PatternSet = PatternSet::from_mask(mask_of([0, 1, 4], 3));
const T5_SET: PatternSet = PatternSet::from_mask(mask_of([0, 3, 4], 3));
const DEGEN_SET: PatternSet = PatternSet::from_mask(mask_of([0, 1, 5], 3));

impl ClassId {
    pub const CANONICAL: [ClassId; 11] = [
        ClassId::D1,
        ClassId::D2,
        ClassId::D3,
        ClassId::D4,
        ClassId::D5,
        ClassId::D6,
        ClassId::T1,
        ClassId::T2,
        ClassId::T3,
        ClassId::T4,
        ClassId::T5,
    ];

    pub const ALL: [ClassId; 12] = [
        ClassId::D1,
        ClassId::D2,
        ClassId::D3,
        ClassId::D4,
        ClassId::D5,
        ClassId::D6,
        ClassId::T1,
        ClassId::T2,
        ClassId::T3,
        ClassId::T4,
        ClassId::T5,
        ClassId::Degen,
    ];

    pub fn canonical_set(self) -> PatternSet {
        match self {
            ClassId::D1 => D1_SET,
            ClassId::D2 => D2_SET,
            ClassId::D3 => D3_SET,
            ClassId::D4 => D4_SET,
            ClassId::D5 => D5_SET,
            ClassId::D6 => D6_SET,
            ClassId::T1 => T1_SET,
            ClassId::T2 => T2_SET,
            ClassId::T3 => T3_SET,
            ClassId::T4 => T4_SET,
            ClassId::T5 => T5_SET,
            ClassId::Degen => DEGEN_SET,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassId::D1 => "D1",
            ClassId::D2 => "D2",
            ClassId::D3 => "D3",
            ClassId::D4 => "D4",
            ClassId::D5 => "D5",
            ClassId::D6 => "D6",
            ClassId::T1 => "T1",
            ClassId::T2 => "T2",
            ClassId::T3 => "T3",
            ClassId::T4 => "T4",
            ClassId::T5 => "T5",
            ClassId::Degen => "DEGEN",
        }
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown class {s:?}")))
    }
}

impl Serialize for ClassId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Symmetry words up to length 4 in shortlex order (letters ordered
/// complement < reverse < inverse). Length 3 already reaches all eight
/// symmetries of the square.
fn shortlex_words() -> &'static [SymmetryWord] {
    static WORDS: OnceLock<Vec<SymmetryWord>> = OnceLock::new();
    WORDS.get_or_init(|| {
        let mut out = vec![SymmetryWord::identity()];
        let mut layer = vec![SymmetryWord::identity()];
        for _ in 0..4 {
            layer = layer
                .iter()
                .flat_map(|w| Symmetry::ALL.map(|op| w.then(op)))
                .collect();
            out.extend(layer.iter().cloned());
        }
        out
    })
}

/// The canonical class of `set` together with the shortlex-least word `w`
/// carrying the canonical set onto `set`.
pub fn canonical_class(set: PatternSet) -> Result<(ClassId, SymmetryWord)> {
    if !matches!(set.len(), 2 | 3) {
        return Err(Error::PatternSetSize(set.len()));
    }
    for word in shortlex_words() {
        for id in ClassId::ALL {
            let canon = id.canonical_set();
            if canon.len() == set.len() && canon.apply_word(word) == set {
                return Ok((id, word.clone()));
            }
        }
    }
    unreachable!("every 2- and 3-subset of S_3 lies in a known orbit")
}

pub fn canonical_class_of(patterns: &[Pattern]) -> Result<(ClassId, SymmetryWord)> {
    let set = PatternSet::from_patterns(patterns)?;
    if set.len() != patterns.len() {
        return Err(Error::PatternSetSize(set.len()));
    }
    canonical_class(set)
}

fn count_by_filter(set: PatternSet, n: usize) -> BigInt {
    let patterns = set.patterns();
    BigInt::from(all_permutations(n).filter(|s| avoids(s, &patterns)).count())
}

/// `|S_n(R)|` for the canonical set of `id`. `n = 0` gives 1 (the empty
/// permutation).
pub fn cardinality(id: ClassId, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let big = BigInt::from(n);
    match id {
        ClassId::D1 | ClassId::D2 | ClassId::D3 | ClassId::D4 => BigInt::one() << (n - 1),
        ClassId::D5 => &big * (&big - 1) / 2 + 1,
        ClassId::D6 | ClassId::Degen if n >= 5 => BigInt::from(0),
        ClassId::D6 | ClassId::Degen => count_by_filter(id.canonical_set(), n),
        ClassId::T1 => fibonacci(n + 1),
        ClassId::T2 | ClassId::T3 | ClassId::T4 | ClassId::T5 => big,
    }
}

pub type PermStream = Box<dyn Iterator<Item = Permutation> + Send>;

/// `n, n-1, …, k+1, k-1, …, 1, k`: the members of `S_n(123,132,231)`.
pub(crate) fn t2_member(n: usize, k: usize) -> Permutation {
    let mut v: Vec<usize> = (k + 1..=n).rev().collect();
    v.extend((1..k).rev());
    v.push(k);
    Permutation::from_vec_unchecked(v)
}

/// `n, n-1, …, k+1, 1, 2, …, k`: the members of `S_n(132,213,231)`.
pub(crate) fn t3_member(n: usize, k: usize) -> Permutation {
    let mut v: Vec<usize> = (k + 1..=n).rev().collect();
    v.extend(1..=k);
    Permutation::from_vec_unchecked(v)
}

/// `n-1, …, k+1, n, k, k-1, …, 1` for `0 ≤ k ≤ n-1`: the members of
/// `S_n(123,132,312)`.
pub(crate) fn t4_member(n: usize, k: usize) -> Permutation {
    let mut v: Vec<usize> = (k + 1..n).rev().collect();
    v.push(n);
    v.extend((1..=k).rev());
    Permutation::from_vec_unchecked(v)
}

/// `k-1, …, 1, n, n-1, …, k`: the members of `S_n(123,231,312)`.
pub(crate) fn t5_member(n: usize, k: usize) -> Permutation {
    let mut v: Vec<usize> = (1..k).rev().collect();
    v.extend((k..=n).rev());
    Permutation::from_vec_unchecked(v)
}

/// Members of `S_n(132,231)`: each of `2, …, n` in turn goes to the left or
/// the right end, so `n` ends up first or last, `n-1` first or last once `n`
/// is removed, and so on. Bit `v-2` of `choices` (MSB first) sends `v` right.
fn d3_member(n: usize, choices: u64) -> Permutation {
    let mut v = std::collections::VecDeque::with_capacity(n);
    v.push_back(1);
    for value in 2..=n {
        if choices >> (n - value) & 1 == 1 {
            v.push_back(value);
        } else {
            v.push_front(value);
        }
    }
    Permutation::from_vec_unchecked(v.into())
}

/// Streams the canonical class `id` at length `n` from its structural
/// description: compositions for D1, D2, D4; two-element subsets for D5;
/// Fibonacci words for T1; end-placement for D3; the one-parameter families
/// for T2–T5. D6 and `Degen` are empty from `n = 5` on and filtered below.
pub fn generate(id: ClassId, n: usize) -> PermStream {
    if n == 0 {
        return Box::new(std::iter::once(Permutation::empty()));
    }
    match id {
        ClassId::D1 => Box::new(enumerate_compositions(n).expect("n >= 1").map(|c| phi1(&c))),
        ClassId::D2 => Box::new(enumerate_compositions(n).expect("n >= 1").map(|c| phi2(&c))),
        ClassId::D4 => Box::new(enumerate_compositions(n).expect("n >= 1").map(|c| phi4(&c))),
        ClassId::D3 => Box::new((0..1u64 << (n - 1)).map(move |bits| d3_member(n, bits))),
        ClassId::D5 => {
            let pairs = (1..=n).flat_map(move |k| (k + 1..=n).map(move |m| (k, m)));
            Box::new(std::iter::once(Permutation::identity(n)).chain(
                pairs.map(move |(k, m)| {
                    phi5(TwoSubset::new(k, m).expect("k < m"), n).expect("m <= n")
                }),
            ))
        }
        ClassId::T1 => Box::new(fib_words(n - 1).into_iter().map(|w| psi1(&w))),
        ClassId::T2 => Box::new((1..=n).map(move |k| t2_member(n, k))),
        ClassId::T3 => Box::new((1..=n).map(move |k| t3_member(n, k))),
        ClassId::T4 => Box::new((0..n).map(move |k| t4_member(n, k))),
        ClassId::T5 => Box::new((1..=n).map(move |k| t5_member(n, k))),
        ClassId::D6 | ClassId::Degen if n >= 5 => Box::new(std::iter::empty()),
        ClassId::D6 | ClassId::Degen => {
            let patterns = id.canonical_set().patterns();
            Box::new(all_permutations(n).filter(move |s| avoids(s, &patterns)))
        }
    }
}

/// `S_n(set)` for any 2- or 3-subset of `S_3`, pushed forward from the
/// canonical generator.
pub fn generate_avoiders(set: PatternSet, n: usize) -> Result<PermStream> {
    let (id, word) = canonical_class(set)?;
    if word.is_empty() {
        return Ok(generate(id, n));
    }
    Ok(Box::new(generate(id, n).map(move |s| s.apply_word(&word))))
}

/// Index of a length-3 pattern after transport along `word`.
pub(crate) fn transport_pattern_index(idx: usize, word: &SymmetryWord) -> usize {
    let q = Permutation::from_vec_unchecked(PATTERNS3[idx].to_vec());
    pattern3_index(&q.apply_word(word)).expect("length 3")
}
