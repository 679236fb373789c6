//! Monomials and polynomials of the quotient ring `R_{V,k}`.

mod monomial;
mod poly;

pub use monomial::{enumerate_monomials, glex_compare, parse_monomial_pairs, ExponentVector};
pub use poly::{bayer_generators, edge_polynomial, BayerGenerators, QuotientPolynomial};
