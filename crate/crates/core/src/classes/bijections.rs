//! Block bijections between small avoidance classes and compositions,
//! two-element subsets, and Fibonacci words.
//!
//! Each inverse rebuilds the image of its answer and compares, so a
//! permutation outside the class is reported rather than silently mapped.

use std::fmt;

use crate::compositions::Composition;
use crate::error::{Error, Result};
use crate::genfunc::FibWord;
use crate::perm::Permutation;

/// `{k, m}` with `1 ≤ k < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoSubset {
    k: usize,
    m: usize,
}

impl TwoSubset {
    pub fn new(k: usize, m: usize) -> Result<Self> {
        if k == 0 || k >= m {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= k < m, got k={k}, m={m}"
            )));
        }
        Ok(Self { k, m })
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn m(self) -> usize {
        self.m
    }
}

impl fmt::Display for TwoSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.k, self.m)
    }
}

fn outside(sigma: &Permutation, map: &'static str) -> Error {
    Error::OutsideDomain {
        perm: sigma.to_string(),
        map,
    }
}

fn check_round_trip<T>(
    sigma: &Permutation,
    map: &'static str,
    found: T,
    forward: impl Fn(&T) -> Permutation,
) -> Result<T> {
    if &forward(&found) == sigma {
        Ok(found)
    } else {
        Err(outside(sigma, map))
    }
}

/// Gaps between consecutive right-to-left maxima, read left to right.
fn rl_maxima_gaps(sigma: &Permutation) -> Vec<usize> {
    let mut prev = 0;
    sigma
        .right_to_left_maxima()
        .into_iter()
        .map(|i| {
            let gap = i - prev;
            prev = i;
            gap
        })
        .collect()
}

/// Blocks `m_i − 1, …, m_i − c_i + 1, m_i` with `m_i = n − (c_1 + … + c_{i−1})`;
/// the image avoids 123 and 132.
pub fn phi1(c: &Composition) -> Permutation {
    let mut top = c.n();
    let mut v = Vec::with_capacity(top);
    for &part in c.parts() {
        v.extend((top + 1 - part..top).rev());
        v.push(top);
        top -= part;
    }
    Permutation::from_vec_unchecked(v)
}

/// Block lengths are the gaps between right-to-left maxima.
pub fn phi1_inv(sigma: &Permutation) -> Result<Composition> {
    if sigma.is_empty() {
        return Err(outside(sigma, "phi1"));
    }
    let c = Composition::new(rl_maxima_gaps(sigma))?;
    check_round_trip(sigma, "phi1", c, phi1)
}

/// Ascending blocks `m_i − c_i + 1, …, m_i`; the image avoids 132 and 213.
pub fn phi2(c: &Composition) -> Permutation {
    let mut top = c.n();
    let mut v = Vec::with_capacity(top);
    for &part in c.parts() {
        v.extend(top + 1 - part..=top);
        top -= part;
    }
    Permutation::from_vec_unchecked(v)
}

pub fn phi2_inv(sigma: &Permutation) -> Result<Composition> {
    if sigma.is_empty() {
        return Err(outside(sigma, "phi2"));
    }
    let c = Composition::new(rl_maxima_gaps(sigma))?;
    check_round_trip(sigma, "phi2", c, phi2)
}

/// Parts are read right to left as `c_1, c_2, …`. Block `i` (counted from
/// the right) is `n − i + 1` followed by `m_i + c_i − 2, …, m_i` with
/// `m_i = c_1 + … + c_{i−1} − i + 2`. The image avoids 132 and 312 and its
/// left-to-right maxima start the blocks.
pub fn phi4(c: &Composition) -> Permutation {
    let n = c.n();
    let k = c.num_parts();
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut before = 0;
    for (idx, &part) in c.parts().iter().rev().enumerate() {
        let i = idx + 1;
        let mut block = vec![n - i + 1];
        if part > 1 {
            let m = before + 2 - i;
            block.extend((m..=m + part - 2).rev());
        }
        blocks.push(block);
        before += part;
    }
    Permutation::from_vec_unchecked(blocks.into_iter().rev().flatten().collect())
}

/// Block lengths are the gaps between left-to-right maxima (the last block
/// runs to the end).
pub fn phi4_inv(sigma: &Permutation) -> Result<Composition> {
    if sigma.is_empty() {
        return Err(outside(sigma, "phi4"));
    }
    let maxima = sigma.left_to_right_maxima();
    let mut parts: Vec<usize> = maxima.windows(2).map(|w| w[1] - w[0]).collect();
    parts.push(sigma.len() + 1 - maxima.last().expect("nonempty"));
    let c = Composition::new(parts)?;
    check_round_trip(sigma, "phi4", c, phi4)
}

/// `m−k+1, …, m, 1, …, m−k, m+1, …, n`; its `k`-th entry is `m`.
pub fn phi5(s: TwoSubset, n: usize) -> Result<Permutation> {
    if s.m > n {
        return Err(Error::InvalidArgument(format!(
            "{s} is not a subset of [{n}]"
        )));
    }
    let (k, m) = (s.k, s.m);
    let mut v: Vec<usize> = (m - k + 1..=m).collect();
    v.extend(1..=m - k);
    v.extend(m + 1..=n);
    Ok(Permutation::from_vec_unchecked(v))
}

/// `None` for the identity, the one member of `S_n(132,321)` without a
/// preimage; otherwise `{k, σ_k}` where `k` is the first descent.
pub fn phi5_inv(sigma: &Permutation) -> Result<Option<TwoSubset>> {
    let v = sigma.values();
    let Some(k) = v.windows(2).position(|w| w[0] > w[1]).map(|i| i + 1) else {
        return Ok(None);
    };
    let s = TwoSubset::new(k, v[k - 1]).map_err(|_| outside(sigma, "phi5"))?;
    check_round_trip(sigma, "phi5", s, |s| phi5(*s, v.len()).expect("m <= n"))?;
    Ok(Some(s))
}

/// Reads the word left to right: a 0 takes the largest unused value, a 1
/// the second largest; the last entry is whatever remains. The image has
/// length `|w| + 1` and avoids 123, 132 and 213.
pub fn psi1(w: &FibWord) -> Permutation {
    let n = w.len() + 1;
    // Unused values, ascending.
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut v = Vec::with_capacity(n);
    for &bit in w.bits() {
        let idx = pool.len() - 1 - usize::from(bit);
        v.push(pool.remove(idx));
    }
    v.push(pool[0]);
    Permutation::from_vec_unchecked(v)
}

pub fn psi1_inv(sigma: &Permutation) -> Result<FibWord> {
    if sigma.is_empty() {
        return Err(outside(sigma, "psi1"));
    }
    let n = sigma.len();
    let mut pool: Vec<usize> = (1..=n).collect();
    let mut bits = Vec::with_capacity(n - 1);
    for &x in &sigma.values()[..n - 1] {
        let idx = pool.binary_search(&x).expect("values are a permutation");
        match pool.len() - 1 - idx {
            0 => bits.push(false),
            1 => bits.push(true),
            _ => return Err(outside(sigma, "psi1")),
        }
        pool.remove(idx);
    }
    let w = FibWord::new(bits).map_err(|_| outside(sigma, "psi1"))?;
    check_round_trip(sigma, "psi1", w, psi1)
}
