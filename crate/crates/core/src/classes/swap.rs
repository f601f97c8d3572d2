//! Occurrence-level bijections that explain equal pattern counts inside the
//! one-parameter classes: 213 and 312 on `(123,132,231)`, 123 and 312 on
//! `(132,213,231)`, 213 and 231 on `(123,132,312)`.

use super::{t2_member, t3_member, t4_member, ClassId};
use crate::error::{Error, Result};
use crate::perm::{avoids, is_occurrence, Occurrence, Pattern, Permutation};

/// The supported `(class, from, to)` triples; each pair works both ways.
pub fn swap_pairs() -> [(ClassId, &'static str, &'static str); 6] {
    [
        (ClassId::T2, "213", "312"),
        (ClassId::T2, "312", "213"),
        (ClassId::T3, "123", "312"),
        (ClassId::T3, "312", "123"),
        (ClassId::T4, "213", "231"),
        (ClassId::T4, "231", "213"),
    ]
}

fn unsupported(id: ClassId, from: &Pattern, to: &Pattern) -> Error {
    Error::UnsupportedSwap {
        class: id.to_string(),
        from: from.compact(),
        to: to.compact(),
    }
}

/// Maps an occurrence of `from` in a member of class `id` to an occurrence
/// of `to` in another member of the same class.
pub fn structural_swap(
    id: ClassId,
    sigma: &Permutation,
    occ: &Occurrence,
    from: &Pattern,
    to: &Pattern,
) -> Result<(Permutation, Occurrence)> {
    let key = (from.compact(), to.compact());
    if !swap_pairs()
        .iter()
        .any(|&(c, f, t)| c == id && f == key.0 && t == key.1)
    {
        return Err(unsupported(id, from, to));
    }
    if !avoids(sigma, &id.canonical_set().patterns()) {
        return Err(Error::OutsideDomain {
            perm: sigma.to_string(),
            map: "structural_swap",
        });
    }
    if !is_occurrence(sigma, from, occ) {
        return Err(Error::NotAnOccurrence {
            occurrence: occ.to_string(),
            pattern: from.compact(),
            host: sigma.to_string(),
        });
    }
    let n = sigma.len();
    let vals = occ.values_in(sigma);
    let (image, image_values) = match (id, key.0.as_str()) {
        // n … k+1, k−1 … 1, k: a 213 is (a, b, k); a 312 is (k', b, a).
        // Reversing the triple and moving the tail to its old first value
        // is its own inverse.
        (ClassId::T2, _) => (t2_member(n, vals[0]), [vals[2], vals[1], vals[0]]),
        // n … k+1, 1 … k with k = n − pos(1) + 1.
        (ClassId::T3, "123") => {
            let k = n + 1 - sigma.position_of(1).expect("1 occurs");
            let (a, b, c) = (vals[0], vals[1], vals[2]);
            (t3_member(n, c - 1), [n - k + c, a, b])
        }
        (ClassId::T3, _) => {
            let k_img = n + 1 - sigma.position_of(1).expect("1 occurs");
            let (x, a, b) = (vals[0], vals[1], vals[2]);
            let c = k_img + 1;
            (t3_member(n, n - x + c), [a, b, c])
        }
        // n−1 … k+1, n, k … 1 with k = n − pos(n).
        (ClassId::T4, "213") => {
            let k = n - sigma.position_of(n).expect("n occurs");
            let (a, b) = (vals[0], vals[1]);
            (t4_member(n, n - a + k), [n - a + b, n, n - a])
        }
        (ClassId::T4, _) => {
            let k_img = n - sigma.position_of(n).expect("n occurs");
            let (x, y) = (vals[0], vals[2]);
            (t4_member(n, k_img - y), [n - y, x - y, n])
        }
        _ => return Err(unsupported(id, from, to)),
    };
    let image_occ = Occurrence::of_values(&image, &image_values)?;
    debug_assert!(is_occurrence(&image, to, &image_occ));
    Ok((image, image_occ))
}
