//! Brute-force ground truth. Permutations are grown left to right and a
//! prefix is dropped as soon as it contains a forbidden pattern, so the
//! search only ever visits prefixes of class members.

mod report;

pub use report::{
    verify_all, verify_all_with, Cell, FormOverride, FormSpec, Status, VerificationReport,
    VerifyOptions, STRUCTURAL_MAX,
};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::{count_occurrences, ends_with_occurrence, pattern_counts3, Pattern, Permutation};
use num_bigint::BigInt;

pub const DEFAULT_CEILING: usize = 9;
/// Largest length the oracle will ever run at.
pub const HARD_MAX: usize = 12;
pub const CEILING_ENV: &str = "PATCOUNT_ORACLE_CEILING";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    ceiling: usize,
    shards: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_CEILING,
            shards: rayon::current_num_threads(),
        }
    }
}

impl OracleConfig {
    pub fn new(ceiling: usize) -> Result<Self> {
        if ceiling > HARD_MAX {
            return Err(Error::OracleCeiling {
                n: ceiling,
                ceiling: HARD_MAX,
            });
        }
        Ok(Self {
            ceiling,
            ..Self::default()
        })
    }

    /// Default ceiling unless `PATCOUNT_ORACLE_CEILING` is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CEILING_ENV) {
            Ok(raw) => {
                let ceiling = raw.trim().parse().map_err(|_| {
                    Error::InvalidArgument(format!("{CEILING_ENV}={raw:?} is not a length"))
                })?;
                Self::new(ceiling)
            }
            Err(_) => Ok(Self::default()),
        }
    }

    /// Number of prefix groups searched in parallel; 1 searches serially.
    pub fn with_shards(mut self, shards: usize) -> Self {
        self.shards = shards.max(1);
        self
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    pub fn shards(&self) -> usize {
        self.shards
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.ceiling {
            return Err(Error::OracleCeiling {
                n,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }
}

fn extend(
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    patterns: &[Pattern],
    visit: &mut dyn FnMut(&[usize]),
) {
    let n = used.len();
    if prefix.len() == n {
        visit(prefix);
        return;
    }
    for v in 1..=n {
        if used[v - 1] {
            continue;
        }
        prefix.push(v);
        if !ends_with_occurrence(prefix, patterns) {
            used[v - 1] = true;
            extend(prefix, used, patterns, visit);
            used[v - 1] = false;
        }
        prefix.pop();
    }
}

/// Surviving prefixes of length `depth`, in lexicographic order.
fn seeds(n: usize, depth: usize, patterns: &[Pattern]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (1..=n)
                    .filter(|v| !p.contains(v))
                    .map(|v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .filter(|q| !ends_with_occurrence(q, patterns))
            .collect();
    }
    out
}

/// Folds `visit` over every member of `S_n(patterns)` in lexicographic
/// order within each shard; shard results are combined left to right.
fn fold_class<T, F, M>(
    n: usize,
    patterns: &[Pattern],
    cfg: &OracleConfig,
    visit: F,
    merge: M,
) -> Result<T>
where
    T: Default + Send,
    F: Fn(&mut T, &[usize]) + Sync,
    M: Fn(T, T) -> T + Sync,
{
    cfg.check(n)?;
    if n == 0 {
        let mut acc = T::default();
        visit(&mut acc, &[]);
        return Ok(acc);
    }
    let depth = n.min(2);
    let seeds = seeds(n, depth, patterns);
    let chunk = seeds.len().div_ceil(cfg.shards).max(1);
    let run = |group: &[Vec<usize>]| {
        let mut acc = T::default();
        for seed in group {
            let mut prefix = seed.clone();
            let mut used = vec![false; n];
            for &v in seed {
                used[v - 1] = true;
            }
            extend(&mut prefix, &mut used, patterns, &mut |p| {
                visit(&mut acc, p)
            });
        }
        acc
    };
    let parts: Vec<T> = if cfg.shards == 1 {
        vec![run(&seeds)]
    } else {
        seeds.par_chunks(chunk).map(run).collect()
    };
    Ok(parts.into_iter().fold(T::default(), &merge))
}

/// All of `S_n(R)` in lexicographic order.
pub fn filter_avoiders(
    n: usize,
    patterns: &[Pattern],
    cfg: &OracleConfig,
) -> Result<Vec<Permutation>> {
    fold_class(
        n,
        patterns,
        cfg,
        |acc: &mut Vec<Permutation>, p| acc.push(Permutation::from_vec_unchecked(p.to_vec())),
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}

pub fn class_size(n: usize, patterns: &[Pattern], cfg: &OracleConfig) -> Result<u64> {
    fold_class(n, patterns, cfg, |acc: &mut u64, _| *acc += 1, |a, b| a + b)
}

/// Total occurrences of `q` (any length) over `S_n(R)`.
pub fn pattern_total(
    n: usize,
    patterns: &[Pattern],
    q: &Pattern,
    cfg: &OracleConfig,
) -> Result<BigInt> {
    let total = fold_class(
        n,
        patterns,
        cfg,
        |acc: &mut u64, p| {
            *acc += count_occurrences(&Permutation::from_vec_unchecked(p.to_vec()), q);
        },
        |a, b| a + b,
    )?;
    Ok(BigInt::from(total))
}

/// Class size and the totals of all six length-3 patterns in one pass.
pub fn pattern_totals3(
    n: usize,
    patterns: &[Pattern],
    cfg: &OracleConfig,
) -> Result<(u64, [u64; 6])> {
    fold_class(
        n,
        patterns,
        cfg,
        |acc: &mut (u64, [u64; 6]), p| {
            acc.0 += 1;
            let counts = pattern_counts3(&Permutation::from_vec_unchecked(p.to_vec()));
            for (t, c) in acc.1.iter_mut().zip(counts) {
                *t += c;
            }
        },
        |mut a, b| {
            a.0 += b.0;
            for (t, c) in a.1.iter_mut().zip(b.1) {
                *t += c;
            }
            a
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::{canonical_class, cardinality, PatternSet};
    use crate::perm::{all_permutations, avoids, patterns3};

    fn pats(list: &[&str]) -> Vec<Pattern> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn small_examples() {
        let got: Vec<String> = filter_avoiders(3, &pats(&["123", "132"]), &cfg())
            .unwrap()
            .iter()
            .map(|s| s.compact())
            .collect();
        assert_eq!(got, ["213", "231", "312", "321"]);
        assert!(filter_avoiders(5, &pats(&["123", "321"]), &cfg())
            .unwrap()
            .is_empty());
        let one = filter_avoiders(1, &pats(&["123", "132"]), &cfg()).unwrap();
        assert_eq!(one, vec![Permutation::identity(1)]);
        assert_eq!(
            filter_avoiders(0, &pats(&["123"]), &cfg()).unwrap().len(),
            1
        );
    }

    #[test]
    fn pattern_total_examples() {
        let p = |s: &str| -> Pattern { s.parse().unwrap() };
        let total = |n, r: &[&str], q| pattern_total(n, &pats(r), &p(q), &cfg()).unwrap();
        assert_eq!(total(4, &["123", "132"], "231"), BigInt::from(7));
        assert_eq!(total(5, &["132", "321"], "123"), BigInt::from(47));
        assert_eq!(total(3, &["123", "132", "213"], "321"), BigInt::from(1));
        // Longer patterns go through the general counter.
        assert_eq!(total(4, &["132", "231"], "1234"), BigInt::from(1));
    }

    #[test]
    fn ceiling_is_enforced() {
        let low = OracleConfig::new(5).unwrap();
        assert!(matches!(
            filter_avoiders(6, &pats(&["123", "132"]), &low),
            Err(Error::OracleCeiling { n: 6, ceiling: 5 })
        ));
        assert!(OracleConfig::new(HARD_MAX + 1).is_err());
        assert!(OracleConfig::new(HARD_MAX).is_ok());
    }

    #[test]
    fn matches_plain_filter() {
        for set in PatternSet::all_pairs_and_triples() {
            let r = set.patterns();
            for n in 0..=7 {
                let plain: Vec<Permutation> =
                    all_permutations(n).filter(|s| avoids(s, &r)).collect();
                assert_eq!(
                    filter_avoiders(n, &r, &cfg()).unwrap(),
                    plain,
                    "{set} n={n}"
                );
            }
        }
    }

    #[test]
    fn sizes_match_cardinality() {
        for set in PatternSet::all_pairs_and_triples() {
            let (id, _) = canonical_class(set).unwrap();
            for n in 1..=8 {
                let size = class_size(n, &set.patterns(), &cfg()).unwrap();
                assert_eq!(BigInt::from(size), cardinality(id, n), "{set} n={n}");
            }
        }
    }

    #[test]
    fn shard_count_does_not_matter() {
        let r = pats(&["132", "321"]);
        let serial = cfg().with_shards(1);
        for n in 0..=8 {
            let base = pattern_totals3(n, &r, &serial).unwrap();
            for shards in [2, 3, 7, 64] {
                let c = cfg().with_shards(shards);
                assert_eq!(pattern_totals3(n, &r, &c).unwrap(), base);
                assert_eq!(
                    filter_avoiders(n, &r, &c).unwrap(),
                    filter_avoiders(n, &r, &serial).unwrap()
                );
            }
        }
    }

    #[test]
    fn totals_are_symmetry_invariant() {
        use crate::perm::Symmetry;
        for set in PatternSet::all_pairs_and_triples() {
            for op in [Symmetry::Complement, Symmetry::Reverse, Symmetry::Inverse] {
                let image = set.apply(op);
                for n in 3..=7 {
                    let (_, a) = pattern_totals3(n, &set.patterns(), &cfg()).unwrap();
                    let (_, b) = pattern_totals3(n, &image.patterns(), &cfg()).unwrap();
                    for (i, q) in patterns3().iter().enumerate() {
                        let j = crate::perm::pattern3_index(&q.apply(op)).unwrap();
                        assert_eq!(a[i], b[j], "{set} {q} n={n}");
                    }
                }
            }
        }
    }
}
