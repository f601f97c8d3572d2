//! Building members of `S_n(132,231)` around a fixed occurrence `abc` by
//! inserting the remaining values from the largest down.

use crate::error::{Error, Result};
use crate::perm::{pattern3_index, Permutation};

fn check_values(n: usize, values: [usize; 3]) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "insertion needs n >= 3, got {n}"
        )));
    }
    let [a, b, c] = values;
    if values.iter().any(|&v| v == 0 || v > n) || a == b || b == c || a == c {
        return Err(Error::InvalidArgument(format!(
            "{a} {b} {c} are not three distinct values in [{n}]"
        )));
    }
    let pattern = Permutation::from_vec_unchecked(
        values
            .iter()
            .map(|v| values.iter().filter(|w| *w <= v).count())
            .collect(),
    );
    // 132 and 231 (indices 1 and 3) cannot occur in the class at all.
    if matches!(pattern3_index(&pattern), Some(1 | 3)) {
        return Err(Error::InvalidArgument(format!(
            "{a} {b} {c} forms {}, which the class avoids",
            pattern.compact()
        )));
    }
    Ok(())
}

/// One member of the family. `choices[i]` places the `i`-th inserted value
/// (values outside `{a,b,c}`, largest first): `false` immediately left of
/// the leftmost smaller entry, `true` immediately right of the rightmost
/// smaller entry. With one smaller entry both sides of it are used; with
/// none, the sides of the current minimum.
pub fn insertion_member(n: usize, values: [usize; 3], choices: &[bool]) -> Result<Permutation> {
    check_values(n, values)?;
    if choices.len() != n - 3 {
        return Err(Error::InvalidArgument(format!(
            "expected {} insertion choices, got {}",
            n - 3,
            choices.len()
        )));
    }
    let mut seq: Vec<usize> = values.to_vec();
    let rest = (1..=n).rev().filter(|v| !values.contains(v));
    for (r, &right) in rest.zip(choices) {
        let smaller: Vec<usize> = (0..seq.len()).filter(|&i| seq[i] < r).collect();
        let at = match (smaller.first(), smaller.last()) {
            (Some(&first), Some(&last)) => {
                if right {
                    last + 1
                } else {
                    first
                }
            }
            _ => {
                let min = (0..seq.len()).min_by_key(|&i| seq[i]).expect("nonempty");
                if right {
                    min + 1
                } else {
                    min
                }
            }
        };
        seq.insert(at, r);
    }
    Ok(Permutation::from_vec_unchecked(seq))
}

/// All `2^{n−3}` members, indexed by the choice word read as a binary
/// number (most significant choice first).
pub fn insertion_family(n: usize, values: [usize; 3]) -> Result<Vec<Permutation>> {
    check_values(n, values)?;
    let slots = n - 3;
    (0..1u64 << slots)
        .map(|index| {
            let choices: Vec<bool> = (0..slots)
                .map(|i| index >> (slots - 1 - i) & 1 == 1)
                .collect();
            insertion_member(n, values, &choices)
        })
        .collect()
}
