//! Exact arithmetic: rationals, sparse polynomials and rational functions.

mod frac;
mod mono;
mod poly;
mod rat;
mod text;
mod var;

pub use frac::Frac;
pub use mono::Mono;
pub use poly::{binomial, factorial, pochhammer, Assignment, Poly};
pub use rat::Rat;
pub use text::{display_grouped, parse_frac, parse_poly};
pub use var::{Var, NVARS};

/// Shorthand for the polynomial consisting of one indeterminate.
pub fn var(v: Var) -> Poly {
    Poly::var(v)
}

/// Shorthand for an integer constant polynomial.
pub fn int(n: i64) -> Poly {
    Poly::int(n)
}
