//! Closed forms for the total number of occurrences of each length-3
//! pattern over each canonical class, plus the composition sums, subset
//! sums and power sums they are derived from.
//!
//! Outside the Fibonacci class every count has the shape
//! `P(n)·2^(n+s) + Q(n)` with rational polynomials `P`, `Q`, so forms are
//! stored as data ([`ExpPoly`]) and evaluated exactly. The Fibonacci class
//! is read off its rational generating functions.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::classes::{canonical_class, cardinality, ClassId, PatternSet};
use crate::compositions::{enumerate_compositions, Composition};
use crate::error::{Error, Result};
use crate::genfunc::{t1_312_gf, t1_321_gf, RationalGF};
use crate::perm::{all_permutations, avoids, pattern3_index, pattern_counts3, Pattern, PATTERNS3};

/// Polynomial in `n` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        Self(coeffs)
    }

    fn from_pairs(coeffs: &[(i64, i64)]) -> Self {
        Self(coeffs.iter().map(|&(a, b)| ratio(a, b)).collect())
    }

    fn from_ints(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&a| ratio(a, 1)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn eval(&self, n: usize) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return RatPoly::default();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly(out)
    }

    fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly(self.0.iter().map(|a| a * c).collect())
    }

    /// `C(n + shift, k)` as a polynomial in `n`.
    fn binomial(shift: i64, k: u32) -> RatPoly {
        let mut p = RatPoly::from_ints(&[1]);
        for i in 0..i64::from(k) {
            p = p.mul(&RatPoly::from_ints(&[shift - i, 1]));
        }
        let fact: i64 = (1..=i64::from(k)).product();
        p.scale(&ratio(1, fact))
    }
}

impl Serialize for RatPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for RatPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        raw.iter()
            .map(|s| BigRational::from_str(s.trim()).map_err(serde::de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(RatPoly)
    }
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `poly(n)·2^(n+shift) + tail(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpPoly {
    pub poly: RatPoly,
    pub shift: i64,
    pub tail: RatPoly,
}

impl ExpPoly {
    fn new(poly: RatPoly, shift: i64, tail: RatPoly) -> Self {
        Self { poly, shift, tail }
    }

    fn polynomial(tail: RatPoly) -> Self {
        Self::new(RatPoly::default(), 0, tail)
    }

    pub fn eval_rational(&self, n: usize) -> BigRational {
        let e = n as i64 + self.shift;
        let two = BigInt::one() << e.unsigned_abs();
        let power = if e >= 0 {
            BigRational::from_integer(two)
        } else {
            BigRational::new(BigInt::one(), two)
        };
        self.poly.eval(n) * power + self.tail.eval(n)
    }
}

/// How a pattern count is computed as a function of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Form {
    Zero,
    ExpPoly(ExpPoly),
    /// Coefficient of `x^n`.
    Gf(RationalGF),
    /// Values at `n = 0, 1, …`; zero past the end.
    Finite(Vec<BigInt>),
}

impl Form {
    pub fn eval(&self, n: usize) -> Result<BigInt> {
        match self {
            Form::Zero => Ok(BigInt::zero()),
            Form::ExpPoly(e) => {
                let r = e.eval_rational(n);
                if r.is_integer() {
                    Ok(r.to_integer())
                } else {
                    Err(Error::NonIntegral {
                        value: r.to_string(),
                        n,
                    })
                }
            }
            Form::Gf(gf) => Ok(gf.coefficient(n)),
            Form::Finite(values) => Ok(values.get(n).cloned().unwrap_or_default()),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Form::Zero => f.write_str("0"),
            Form::ExpPoly(e) => {
                let show = |p: &RatPoly| {
                    let parts: Vec<String> = p.0.iter().map(|c| c.to_string()).collect();
                    format!("[{}]", parts.join(", "))
                };
                write!(
                    f,
                    "{}*2^(n{:+}) + {}",
                    show(&e.poly),
                    e.shift,
                    show(&e.tail)
                )
            }
            Form::Gf(gf) => write!(f, "[x^n] {gf}"),
            Form::Finite(v) => {
                let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                write!(f, "finite [{}]", parts.join(", "))
            }
        }
    }
}

fn binom_n3() -> RatPoly {
    RatPoly::binomial(0, 3)
}

/// Exact totals over a class small enough to list (only used for the two
/// classes that are empty from `n = 5` on).
fn finite_form(id: ClassId, idx: usize) -> Form {
    let patterns = id.canonical_set().patterns();
    let values = (0..=4)
        .map(|n| {
            let total: u64 = all_permutations(n)
                .filter(|s| avoids(s, &patterns))
                .map(|s| pattern_counts3(&s)[idx])
                .sum();
            BigInt::from(total)
        })
        .collect();
    Form::Finite(values)
}

/// The count of pattern `PATTERNS3[idx]` over the canonical class `id`.
pub fn form(id: ClassId, idx: usize) -> Form {
    assert!(idx < 6, "pattern index out of range");
    if id.canonical_set().contains_index(idx) {
        return Form::Zero;
    }
    let ep = |poly: RatPoly, shift: i64, tail: &[i64]| {
        Form::ExpPoly(ExpPoly::new(poly, shift, RatPoly::from_ints(tail)))
    };
    let pairs = RatPoly::from_pairs;
    // Pattern indices: 123=0, 132=1, 213=2, 231=3, 312=4, 321=5.
    match (id, idx) {
        (ClassId::D1, 2) => ep(pairs(&[(-3, 1), (1, 1)]), -2, &[1]),
        (ClassId::D1, 3 | 4) => ep(pairs(&[(8, 1), (-5, 1), (1, 1)]), -3, &[-1]),
        (ClassId::D1, 5) => ep(pairs(&[(-5, 1), (14, 3), (-2, 1), (1, 3)]), -2, &[1]),
        (ClassId::D2, 0) => ep(pairs(&[(-4, 1), (1, 1)]), -1, &[2, 1]),
        (ClassId::D2, 3 | 4) => ep(pairs(&[(16, 1), (-7, 1), (1, 1)]), -2, &[-4, -1]),
        (ClassId::D2, 5) => ep(pairs(&[(-24, 1), (38, 3), (-3, 1), (1, 3)]), -2, &[6, 1]),
        (ClassId::D1 | ClassId::D2, _) => unreachable!("avoided patterns return early"),
        (ClassId::D3 | ClassId::D4, _) => ep(binom_n3(), -3, &[]),
        (ClassId::D5, 0) => Form::ExpPoly(ExpPoly::polynomial(
            RatPoly::from_ints(&[0, 28, -80, 85, -40, 7]).scale(&ratio(1, 120)),
        )),
        (ClassId::D5, _) => Form::ExpPoly(ExpPoly::polynomial(RatPoly::binomial(2, 5))),
        (ClassId::D6 | ClassId::Degen, _) => finite_form(id, idx),
        (ClassId::T1, 3 | 4) => Form::Gf(t1_312_gf()),
        (ClassId::T1, _) => Form::Gf(t1_321_gf()),
        (ClassId::T2 | ClassId::T4, 5) => Form::ExpPoly(ExpPoly::polynomial(
            binom_n3().mul(&RatPoly::from_ints(&[-2, 1])),
        )),
        (ClassId::T2 | ClassId::T4, _) => Form::ExpPoly(ExpPoly::polynomial(binom_n3())),
        (ClassId::T3 | ClassId::T5, 5) => Form::ExpPoly(ExpPoly::polynomial(
            RatPoly::from_ints(&[0, -2, 5, -4, 1]).scale(&ratio(1, 12)),
        )),
        (ClassId::T3 | ClassId::T5, _) => {
            Form::ExpPoly(ExpPoly::polynomial(RatPoly::binomial(1, 4)))
        }
    }
}

/// Alternative printed forms of the same counts, written with `2^n` and
/// expanded coefficients. `None` where no second form exists.
pub fn table_form(id: ClassId, idx: usize) -> Option<Form> {
    let pairs = RatPoly::from_pairs;
    let ep = |poly: RatPoly, tail: &[i64]| {
        Some(Form::ExpPoly(ExpPoly::new(
            poly,
            0,
            RatPoly::from_ints(tail),
        )))
    };
    match (id, idx) {
        (ClassId::D2, 3 | 4) => ep(pairs(&[(4, 1), (-7, 4), (1, 4)]), &[-4, -1]),
        (ClassId::D2, 5) => ep(pairs(&[(-6, 1), (38, 12), (-3, 4), (1, 12)]), &[6, 1]),
        (ClassId::D3, 0 | 2 | 4 | 5) | (ClassId::D4, 0 | 2 | 3 | 5) => {
            ep(binom_n3().scale(&ratio(1, 8)), &[])
        }
        (ClassId::D5, 0) => Some(Form::ExpPoly(ExpPoly::polynomial(pairs(&[
            (0, 1),
            (7, 30),
            (-2, 3),
            (17, 24),
            (-1, 3),
            (7, 120),
        ])))),
        _ => None,
    }
}

fn index_of(q: &Pattern) -> Result<usize> {
    pattern3_index(q)
        .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a pattern of length 3")))
}

/// Total occurrences of `q` over the canonical class `id` at length `n`;
/// zero for `n < 3`.
pub fn closed_form(id: ClassId, q: &Pattern, n: usize) -> Result<BigInt> {
    Ok(closed_form_idx(id, index_of(q)?, n))
}

pub fn closed_form_idx(id: ClassId, idx: usize, n: usize) -> BigInt {
    if n < 3 {
        return BigInt::zero();
    }
    form(id, idx)
        .eval(n)
        .expect("built-in closed forms are integral for n >= 3")
}

/// Same count for an arbitrary 2- or 3-set: with `R = w(C)` for the
/// canonical set `C`, occurrences of `q` over `S_n(R)` are occurrences of
/// `w⁻¹(q)` over `S_n(C)`.
pub fn closed_form_for(set: PatternSet, q: &Pattern, n: usize) -> Result<BigInt> {
    let idx = index_of(q)?;
    let (id, word) = canonical_class(set)?;
    let back = crate::classes::transport_pattern_index(idx, &word.inverse());
    Ok(closed_form_idx(id, back, n))
}

/// Every `(class, pattern)` cell whose composition-sum expression is
/// implemented.
pub const COMPOSITION_SUM_KEYS: [(ClassId, usize); 5] = [
    (ClassId::D1, 2),
    (ClassId::D1, 3),
    (ClassId::D2, 0),
    (ClassId::D2, 3),
    (ClassId::D4, 0),
];

fn c2(x: usize) -> usize {
    x * x.saturating_sub(1) / 2
}

fn c3(x: usize) -> usize {
    if x < 3 {
        0
    } else {
        x * (x - 1) * (x - 2) / 6
    }
}

fn composition_term(id: ClassId, idx: usize, c: &Composition) -> BigInt {
    let parts = c.parts();
    let k = parts.len();
    // Sum over j > i of c_j, for each i.
    let mut after = vec![0usize; k];
    for i in (0..k.saturating_sub(1)).rev() {
        after[i] = after[i + 1] + parts[i + 1];
    }
    let total: usize = match (id, idx) {
        (ClassId::D1, 2) => parts.iter().map(|&p| c2(p - 1)).sum(),
        (ClassId::D1, 3) => (0..k).map(|i| after[i] * (parts[i] - 1)).sum(),
        (ClassId::D2, 0) => parts.iter().map(|&p| c3(p)).sum(),
        (ClassId::D2, 3) => (0..k).map(|i| after[i] * c2(parts[i])).sum(),
        // Parts indexed from the right: c_1 is the last written part.
        (ClassId::D4, 0) => (1..=k.saturating_sub(2))
            .map(|i| parts[k - i] * c2(k - i))
            .sum(),
        _ => unreachable!("checked by caller"),
    };
    BigInt::from(total)
}

/// Evaluates the composition-sum expression for the cell literally over
/// every composition of `n`.
pub fn composition_sum(id: ClassId, q: &Pattern, n: usize) -> Result<BigInt> {
    let idx = index_of(q)?;
    if !COMPOSITION_SUM_KEYS.contains(&(id, idx)) {
        return Err(Error::InvalidArgument(format!(
            "no composition sum for pattern {} on {id}",
            q.compact()
        )));
    }
    if n == 0 {
        return Ok(BigInt::zero());
    }
    Ok(enumerate_compositions(n)?
        .map(|c| composition_term(id, idx, &c))
        .sum())
}

/// Literal sums over `1 ≤ k < m ≤ n`: `k(m−k)(n−m)` for 213 and
/// `k·C(m−k, 2)` for 312.
pub fn pair_sum(q: &Pattern, n: usize) -> Result<BigInt> {
    let which = match index_of(q)? {
        2 => false,
        4 => true,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "pair sums exist for 213 and 312, not {}",
                q.compact()
            )))
        }
    };
    let mut total = BigInt::zero();
    for m in 1..=n {
        for k in 1..m {
            total += if which {
                k * c2(m - k)
            } else {
                k * (m - k) * (n - m)
            };
        }
    }
    Ok(total)
}

/// `Σ_{k=1}^{n−1} k^p` in closed form, `p ∈ {1,2,3,4}`.
pub fn power_sum(p: u32, n: usize) -> Result<BigInt> {
    let n = BigInt::from(n);
    let m = &n - 1;
    let value = match p {
        1 => &n * &m / 2,
        2 => &m * &n * (2 * &n - 1) / 6,
        3 => {
            let s = &n * &m / 2;
            &s * &s
        }
        // The constant in the last factor is −1; with +1 the quotient is
        // not even integral at n = 2.
        4 => {
            let num: BigInt = &n * &m * (2 * &n - 1) * (3 * &n * &n - 3 * &n - 1);
            let (q, r) = num.div_rem(&BigInt::from(30));
            assert!(r.is_zero(), "fourth-power sum not integral");
            q
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "power sums for p in 1..=4, got {p}"
            )))
        }
    };
    Ok(if value.is_negative() {
        BigInt::zero()
    } else {
        value
    })
}

pub fn power_sum_literal(p: u32, n: usize) -> BigInt {
    (1..n).map(|k| BigInt::from(k).pow(p)).sum()
}

/// `f(n+1) = 2 f(n) + g(n)` for one cell.
#[derive(Clone, Copy)]
pub struct Recurrence {
    pub class: ClassId,
    pub pattern: &'static str,
    pub description: &'static str,
    increment: fn(usize) -> BigInt,
}

impl Recurrence {
    pub fn increment(&self, n: usize) -> BigInt {
        (self.increment)(n)
    }

    /// First `n` in `3..n_max` where `f(n+1) ≠ 2 f(n) + g(n)`.
    pub fn first_failure(&self, n_max: usize) -> Option<usize> {
        let q: Pattern = self.pattern.parse().expect("static pattern");
        (3..n_max).find(|&n| {
            let f = |m| closed_form(self.class, &q, m).expect("length 3");
            f(n + 1) != 2 * f(n) + self.increment(n)
        })
    }
}

impl fmt::Debug for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.class, self.pattern, self.description)
    }
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

pub fn recurrences() -> [Recurrence; 5] {
    [
        Recurrence {
            class: ClassId::D1,
            pattern: "213",
            description: "f(n+1) = 2f(n) + 2^(n-1) - 1",
            increment: |n| pow2(n - 1) - 1,
        },
        Recurrence {
            class: ClassId::D1,
            pattern: "231",
            description: "f(n+1) = 2f(n) + (n-2)2^(n-1) + 1",
            increment: |n| BigInt::from(n - 2) * pow2(n - 1) + 1,
        },
        Recurrence {
            class: ClassId::D2,
            pattern: "123",
            description: "f(n+1) = 2f(n) + 2^n - n - 1",
            increment: |n| pow2(n) - n - 1,
        },
        Recurrence {
            class: ClassId::D2,
            pattern: "231",
            description: "f(n+1) = 2f(n) + (2n-6)2^(n-1) + n + 3",
            increment: |n| BigInt::from(2 * n - 6) * pow2(n - 1) + n + 3,
        },
        Recurrence {
            class: ClassId::D4,
            pattern: "123",
            description: "f(n+1) = 2f(n) + (n^2-n)2^(n-3)",
            increment: |n| BigInt::from(n * n - n) * pow2(n - 3),
        },
    ]
}

/// `Σ_q f_q` over the class against `C(n,3)·|S_n(R)|`.
pub fn completeness_holds(id: ClassId, n: usize) -> bool {
    let sum: BigInt = (0..6).map(|idx| closed_form_idx(id, idx, n)).sum();
    let choose = RatPoly::binomial(0, 3).eval(n).to_integer();
    let expected = if n < 3 {
        BigInt::zero()
    } else {
        choose * cardinality(id, n)
    };
    sum == expected
}

/// Pattern text for an index, e.g. `231`.
pub fn pattern_name(idx: usize) -> String {
    PATTERNS3[idx].iter().map(|d| d.to_string()).collect()
}
