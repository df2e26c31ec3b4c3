//! Kronecker coefficients of the symmetric group as signed sums of vector
//! partition function evaluations.
//!
//! For partitions `lambda, mu, nu` with at most `mn`, `m` and `n` parts,
//!
//! ```text
//! g(lambda, mu, nu) = sum over sigma in S_mn of sgn(sigma) * p_A(b(lambda, mu, nu; sigma))
//! ```
//!
//! where `A = A^{m,n}` is built in [`substitution`], the inputs `b` in
//! [`linear_forms`], and `p_A` is evaluated exactly in [`vpf`]. The
//! [`oracle`] module recomputes coefficients from character tables and shares
//! no code with that path.
//!
//! ```
//! use kron_core::{kronecker, PartitionTriple};
//!
//! let t = PartitionTriple::parse(2, 4, "6,4,4,1", "12,3", "5,4,3,3").unwrap();
//! assert_eq!(kronecker(&t).unwrap().to_string(), "4");
//! ```

pub mod bounds;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod linear_forms;
pub mod oracle;
pub mod partition;
pub mod permutation;
pub mod scalar;
pub mod stability;
pub mod substitution;
pub mod vanishing;
pub mod vpf;

pub use engine::{atomic, kronecker, EngineOptions, KronEngine, KronResult, TermReport};
pub use error::{Error, Result};
pub use linear_forms::{LinearForm, VpfInput};
pub use partition::{parse_partition, Partition, PartitionTriple};
pub use permutation::Permutation;
pub use scalar::{Count, Field};
pub use substitution::{build_degree_table, build_matrix, DegreeTable, VpfMatrix};

/// Arbitrary-precision count, the type of every public coefficient and bound.
pub type CountResult = num_bigint::BigUint;

/// Signed arbitrary-precision integer used for alternating sums.
pub type SignedCount = num_bigint::BigInt;

/// Exact rational scalar for elimination.
pub type Rational = num_rational::BigRational;

/// Machine-width rational for small elimination problems.
pub type SmallRational = num_rational::Ratio<i64>;
