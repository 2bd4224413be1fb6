//! Triangulations of polygons with a collinearity condition, the recursive
//! lower bound on the degree of their area polynomial, closed-form
//! polynomials for the diagonal family, and exact rational drawings used to
//! check that those polynomials vanish.

pub mod complex;
pub mod degree;
pub mod draw;
pub mod fixtures;
pub mod moves;
pub mod poly;
