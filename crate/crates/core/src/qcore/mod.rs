//! Exact polynomials and truncated series in q on the half-integer exponent grid.

mod dense;
mod exp;
mod monomial;
mod pochhammer;
mod poly;
mod series;
mod text;

pub use exp::HalfExp;
pub use monomial::SignedPower;
pub use pochhammer::{
    inv_pochhammer, inv_pochhammer_infinite, inv_q_factorial, inv_q_infinite, pochhammer, pochhammer_infinite,
    product_list, q_binomial, q_infinite, theta_exponent, triple_product_check, ProductFactor, TripleProductCheck,
};
pub use poly::QPolynomial;
pub use series::{Disagreement, QSeries, SeriesSum};
pub use text::{parse_polynomial, parse_series};
