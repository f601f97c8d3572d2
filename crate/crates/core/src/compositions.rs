//! Integer compositions and the four part statistics used by the
//! doubly-restricted recurrences.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An ordered sum `n = c_1 + … + c_k` with every part positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!("zero part in {parts:?}")));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn last(&self) -> usize {
        *self.parts.last().expect("compositions are nonempty")
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Composition({self})")
    }
}

/// Parses `2+1+4+2` (commas and spaces also accepted as separators).
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Option<Vec<usize>> = s
            .split(|c: char| c == '+' || c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().ok())
            .collect();
        match parts {
            Some(p) => Self::new(p),
            None => Err(Error::InvalidComposition(format!("cannot parse {s:?}"))),
        }
    }
}

/// Lexicographic stream of the compositions of `n`, from `1+1+…+1` to `n`.
pub struct Compositions {
    next: Option<Vec<usize>>,
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let current = self.next.take()?;
        let k = current.len();
        if k > 1 {
            // Merge the last cut away: (.., a, b) -> (.., a + 1, 1, …, 1).
            let mut succ = current[..k - 2].to_vec();
            succ.push(current[k - 2] + 1);
            succ.extend(std::iter::repeat_n(1, current[k - 1] - 1));
            self.next = Some(succ);
        }
        Some(Composition { parts: current })
    }
}

pub fn enumerate_compositions(n: usize) -> Result<Compositions> {
    if n == 0 {
        return Err(Error::InvalidArgument("compositions need n >= 1".into()));
    }
    Ok(Compositions {
        next: Some(vec![1; n]),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StatKind {
    /// Σ c_k, the last part.
    A,
    /// Σ c_k (c_k − 1).
    B,
    /// Σ k, the number of parts.
    C,
    /// Σ k (k − 1).
    D,
}

impl StatKind {
    pub const ALL: [StatKind; 4] = [StatKind::A, StatKind::B, StatKind::C, StatKind::D];

    fn term(self, c: &Composition) -> BigInt {
        let last = c.last() as u64;
        let k = c.num_parts() as u64;
        BigInt::from(match self {
            StatKind::A => last,
            StatKind::B => last * (last - 1),
            StatKind::C => k,
            StatKind::D => k * (k - 1),
        })
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(StatKind::A),
            "b" | "B" => Ok(StatKind::B),
            "c" | "C" => Ok(StatKind::C),
            "d" | "D" => Ok(StatKind::D),
            _ => Err(Error::InvalidArgument(format!("unknown statistic {s:?}"))),
        }
    }
}

fn exact_div(num: BigInt, den: u32) -> BigInt {
    let (q, r) = num.div_rem(&BigInt::from(den));
    assert!(r.is_zero(), "closed form not integral");
    q
}

/// Closed forms: a(n) = 2^n − 1, b(n) = 2^{n+1} − 2n − 2,
/// c(n) = (n+1) 2^{n−2}, d(n) = (n−1)(n+2) 2^{n−3}.
///
/// Negative powers of two are cleared by multiplying through by `2^n` and
/// dividing last, so `c(1) = 1` and `d(1) = d(2)/2 = 0` come out exactly.
pub fn composition_stat(kind: StatKind, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "composition statistics need n >= 1".into(),
        ));
    }
    let two_n = BigInt::one() << n;
    let n_big = BigInt::from(n);
    Ok(match kind {
        StatKind::A => &two_n - 1,
        StatKind::B => (&two_n << 1) - 2 * &n_big - 2,
        StatKind::C => exact_div((&n_big + 1) * &two_n, 4),
        StatKind::D => exact_div((&n_big - 1) * (&n_big + 2) * &two_n, 8),
    })
}

/// The same statistic summed over an explicit enumeration.
pub fn composition_stat_brute(kind: StatKind, n: usize) -> Result<BigInt> {
    Ok(enumerate_compositions(n)?.map(|c| kind.term(&c)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn listing(n: usize) -> Vec<String> {
        enumerate_compositions(n)
            .unwrap()
            .map(|c| c.to_string())
            .collect()
    }

    #[test]
    fn small_listings() {
        assert_eq!(listing(1), ["1"]);
        assert_eq!(listing(3), ["1+1+1", "1+2", "2+1", "3"]);
        assert_eq!(
            listing(4),
            ["1+1+1+1", "1+1+2", "1+2+1", "1+3", "2+1+1", "2+2", "3+1", "4"]
        );
        assert_eq!(enumerate_compositions(10).unwrap().count(), 512);
        assert!(enumerate_compositions(0).is_err());
    }

    #[test]
    fn counts_and_parts() {
        for n in 1..=14usize {
            let all: Vec<Composition> = enumerate_compositions(n).unwrap().collect();
            assert_eq!(all.len(), 1 << (n - 1));
            assert!(
                all.windows(2).all(|w| w[0] < w[1]),
                "not strictly lexicographic"
            );
            assert!(all.iter().all(|c| c.n() == n));
            for k in 1..=n {
                let with_k = all.iter().filter(|c| c.num_parts() == k).count() as u64;
                assert_eq!(with_k, crate::perm::binomial(n as u64 - 1, k as u64 - 1));
            }
        }
    }

    #[test]
    fn stat_examples() {
        assert_eq!(composition_stat(StatKind::A, 3).unwrap(), BigInt::from(7));
        assert_eq!(composition_stat(StatKind::B, 2).unwrap(), BigInt::from(2));
        assert_eq!(composition_stat(StatKind::C, 2).unwrap(), BigInt::from(3));
        assert_eq!(composition_stat(StatKind::D, 3).unwrap(), BigInt::from(10));
        assert_eq!(composition_stat(StatKind::C, 1).unwrap(), BigInt::from(1));
        assert_eq!(composition_stat(StatKind::D, 1).unwrap(), BigInt::from(0));
        assert!(composition_stat(StatKind::A, 0).is_err());
    }

    #[test]
    fn closed_forms_match_brute_sums() {
        for n in 1..=18 {
            for kind in StatKind::ALL {
                assert_eq!(
                    composition_stat(kind, n).unwrap(),
                    composition_stat_brute(kind, n).unwrap(),
                    "{kind:?} n={n}"
                );
            }
        }
    }

    #[test]
    fn parse_roundtrip() {
        let c: Composition = "2+1+4+2".parse().unwrap();
        assert_eq!(c.parts(), &[2, 1, 4, 2]);
        assert_eq!(c.n(), 9);
        assert!("2+0".parse::<Composition>().is_err());
        assert!("".parse::<Composition>().is_err());
    }
}
