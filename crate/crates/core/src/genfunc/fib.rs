//! Fibonacci numbers, Fibonacci binary words (no two adjacent ones) and the
//! major index statistic on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// `F_0 = 0, F_1 = 1, F_n = F_{n-1} + F_{n-2}`.
pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// A 0/1 word without two consecutive ones.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FibWord {
    bits: Vec<bool>,
}

impl FibWord {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        let word = Self { bits };
        if word.bits.windows(2).any(|w| w[0] && w[1]) {
            return Err(Error::ConsecutiveOnes(word.to_string()));
        }
        Ok(word)
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Ascent positions `i` (1-based) with `w_i < w_{i+1}`.
    pub fn asc(&self) -> Vec<usize> {
        self.bits
            .windows(2)
            .enumerate()
            .filter(|(_, w)| !w[0] && w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn maj(&self) -> usize {
        self.asc().iter().sum()
    }
}

impl fmt::Display for FibWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for FibWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FibWord({self})")
    }
}

impl FromStr for FibWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidArgument(format!("not a binary word: {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }
}

/// All Fibonacci words of length `m` in lexicographic order (`F_{m+2}` of
/// them).
pub fn fib_words(m: usize) -> Vec<FibWord> {
    fn extend(prefix: &mut Vec<bool>, m: usize, out: &mut Vec<FibWord>) {
        if prefix.len() == m {
            out.push(FibWord {
                bits: prefix.clone(),
            });
            return;
        }
        prefix.push(false);
        extend(prefix, m, out);
        prefix.pop();
        if prefix.last() != Some(&true) {
            prefix.push(true);
            extend(prefix, m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(m), m, &mut out);
    out
}

/// `M_m(q) = Σ_{w ∈ B_m} q^{maj(w)}` as a polynomial in `q`.
#[derive(Clone, PartialEq, Eq)]
pub struct QPolynomial(IntPolynomial);

impl QPolynomial {
    pub fn new(poly: IntPolynomial) -> Self {
        Self(poly)
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.0
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.0.eval(&BigInt::one())
    }

    pub fn derivative_at_one(&self) -> BigInt {
        self.0.derivative().eval(&BigInt::one())
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.display_in("q"))
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

/// Tallies `q^{maj(w)}` over every word of `B_m`.
pub fn maj_polynomial_direct(m: usize) -> QPolynomial {
    let mut tally = vec![0u64; m * m.saturating_sub(1) / 2 + 1];
    for w in fib_words(m) {
        tally[w.maj()] += 1;
    }
    QPolynomial(IntPolynomial::new(
        tally.into_iter().map(BigInt::from).collect(),
    ))
}

/// `M_m = M_{m-1} + q^{m-1} M_{m-2}` from `M_2 = 2 + q`, `M_3 = 2 + q + 2q^2`.
pub fn maj_polynomial_recurrence(m: usize) -> Result<QPolynomial> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "the maj recurrence starts at m = 2, got {m}"
        )));
    }
    let mut older = IntPolynomial::from_i64s(&[2, 1]);
    if m == 2 {
        return Ok(QPolynomial(older));
    }
    let mut newer = IntPolynomial::from_i64s(&[2, 1, 2]);
    for k in 4..=m {
        let shifted = &IntPolynomial::monomial(BigInt::one(), k - 1) * &older;
        let next = &newer + &shifted;
        older = std::mem::replace(&mut newer, next);
    }
    Ok(QPolynomial(newer))
}

pub fn maj_polynomial(m: usize) -> Result<QPolynomial> {
    maj_polynomial_recurrence(m)
}

/// `Σ_{w ∈ B_{n-1}} maj(w)`, the number of 312 occurrences over
/// `S_n(123,132,213)`.
pub fn f312_via_maj(n: usize) -> Result<BigInt> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "maj sum needs n >= 3, got {n}"
        )));
    }
    Ok(fib_words(n - 1).iter().map(|w| BigInt::from(w.maj())).sum())
}
