//! Confluent Vandermonde forms: exact evaluation through the Laplace block
//! expansion, classification by type and class, ribbon tableaux, and
//! generation and verification of graded bases of `S_N`-harmonic
//! polynomials.

pub mod basis;
pub mod cvform;
pub mod laplace;
pub mod perm;
pub mod poly;
pub mod ribbon;
pub mod series;

pub use basis::{
    compare_bases, generate_basis, generate_standard_basis, verify_characteristic_uniqueness,
    verify_harmonicity, verify_independence, Basis, BasisError, CoefficientMatrix, RankMode,
};
pub use cvform::{CvForm, FormError, SortedForm, TypeVector, ZeroRemoval};
pub use laplace::{evaluate, expand_rowblocks, naive_oracle, Expansion, RowBlock};
pub use perm::Permutation;
pub use poly::{ExponentVector, Polynomial};
pub use ribbon::{
    class_to_ribbon, count_syt, enumerate_ribbons, enumerate_tableaux, ribbon_index, ribbon_to_class,
    ribbons_of_degree, Ribbon, RibbonError, SkewPartition, SkewTableau,
};
pub use series::{q_binomial, q_factorial, ribbon_generating_function, BivariateSeries, CountSeries};
