//! Exact generating-function machinery for the `(123,132,213)` class:
//! rational series, Fibonacci words and the maj polynomials.

mod fib;
mod poly;

pub use fib::{
    f312_via_maj, fib_words, fibonacci, maj_polynomial, maj_polynomial_direct,
    maj_polynomial_recurrence, FibWord, QPolynomial,
};
pub use poly::{gf_coefficients, IntPolynomial, RationalGF};

fn known(num: &str, den: &str) -> RationalGF {
    RationalGF::parse(num, den).expect("built-in generating function")
}

/// `Σ F_n x^n = x / (1 − x − x²)`.
pub fn fib_gf() -> RationalGF {
    known("x", "1-x-x^2")
}

/// 231 (equivalently 312) occurrences over `S_n(123,132,213)`.
pub fn t1_312_gf() -> RationalGF {
    known("x^3(1+2x)", "(1-x-x^2)^3")
}

/// 321 occurrences over `S_n(123,132,213)`.
pub fn t1_321_gf() -> RationalGF {
    known("x^3(1+6x+12x^2+8x^3)", "(1-x-x^2)^4")
}

/// `Σ_{n≥3} F_{n+1} x^n`.
pub fn fib_shift_gf() -> RationalGF {
    known("x^3(3+2x)", "1-x-x^2")
}

/// `Σ_{n≥3} C(n,3) F_{n+1} x^n`.
pub fn binomial_fib_gf() -> RationalGF {
    known("x^3(3+8x+6x^2+4x^3)", "(1-x-x^2)^4")
}

/// Looks up a generating function by its command-line name.
pub fn named_gf(name: &str) -> Option<RationalGF> {
    match name {
        "fib" => Some(fib_gf()),
        "t1_312" | "t1_231" => Some(t1_312_gf()),
        "t1_321" => Some(t1_321_gf()),
        "fib_shift" => Some(fib_shift_gf()),
        "binomial_fib" => Some(binomial_fib_gf()),
        _ => None,
    }
}
