//! Exact q-series and partition arithmetic for computing arithmetic densities
//! of subsets of the positive integers.
//!
//! The crate is organized around the pipeline the density formulas follow:
//!
//! - [`fps`]: truncated formal power series over exact rationals;
//! - [`partitions`]: partitions, the subpartition lattice, weights;
//! - [`parith`]: partition Dirichlet convolution, Moebius inversion, the
//!   q-bracket, and the auxiliary series that classify density formulas;
//! - [`classical`]: sieves, classical Dirichlet convolution, smallest-prime-
//!   factor partial sums, subsets of N, and partition zeta values;
//! - [`density`]: the q-density statistic, the generating-function
//!   representations whose radial limits recover arithmetic densities, and
//!   the worked example catalog;
//! - [`verify`]: the order-by-order identity suite behind `qpd verify`.

pub mod classical;
pub mod density;
pub mod error;
pub mod fps;
pub mod limits;
pub mod parith;
pub mod partitions;
pub mod verify;

pub use error::{Error, Result};
pub use fps::{Rat, TruncatedSeries};
pub use partitions::{Partition, PartitionFunctionDescriptor};
