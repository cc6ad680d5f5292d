//! Exact, certifying computation of the metric dimension and edge
//! metric dimension of finite connected graphs, together with
//! constructors for the graph families the toolkit is built around:
//! subdivided complete graphs, their minus-a-matching variants, and
//! chains of subdivided complete graphs realizing any prescribed pair
//! of dimensions.

pub mod chain;
pub mod dsl;
pub mod families;
pub mod graph;
pub mod harness;
pub mod resolver;
pub mod subdivision;

pub use chain::{chain, ChainLayout};
pub use dsl::{eval_spec, parse_spec, ConstructionSpec, DslError, EvalOutput};
pub use families::{
    complete, complete_minus_matching, cycle, path, star, torus, ConstructError,
};
pub use graph::{Graph, GraphError};
pub use harness::{run_suite, VerificationReport};
pub use resolver::{
    certify_no_generator_of_size, exact_dimension, naive_oracle, Certificate, CertifyOutcome,
    Kind, LandmarkSet, SolveError, SolveOptions, SolveResult,
};
pub use subdivision::{subdivide, SubdivisionLabeling};
