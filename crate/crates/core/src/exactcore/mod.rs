//! Exact arithmetic substrate: rationals, Gaussian rationals, dense univariate
//! polynomials with resultants, and order-truncated formal power series.

mod gaussian;
mod poly;
mod rational;
mod resultant;
mod ring;
mod series;

pub use gaussian::GaussianRational;
pub use poly::UniPoly;
pub use rational::Rational;
pub use resultant::resultant;
pub use ring::Ring;
pub use series::Series;
