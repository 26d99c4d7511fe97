//! Exact arithmetic: rationals, polynomials, rational functions and real roots.

mod bipoly;
mod rat;
mod ratfunc;
mod roots;
mod unipoly;

pub use bipoly::{bipoly_divides, BiPoly};
pub use rat::{
    abs, format_rat, int, parse_rat, pow2, rat, round_to_bits, sign, simplest_between, sqrt_rat, tenth_power,
    to_f64, Rat, Sqrt, APPROX_BITS,
};
pub use ratfunc::{normalize_ratfunc, RatFunc};
pub use roots::{default_width, real_roots, IntPoly, IsolatedRoot};
pub use unipoly::UniPoly;
