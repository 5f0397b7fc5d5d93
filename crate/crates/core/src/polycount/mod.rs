//! Exact polynomials in `N`, strict-map counting, and the small amount of
//! rational linear algebra the oracle needs.

mod count;
mod linalg;
mod poly;

pub use count::{count_strict_maps, shape_level_counts, MapCounter, OrderSystem};
pub use linalg::{invert_dense, trace_product, SpanSolver, SparseMatrix};
pub use poly::{
    fmt_rational, parse_rational, poly_from_samples, q, qi, InterpolationError, PolynomialQ,
};
