//! Combinatorics of quiver degeneracy-locus coefficients.
//!
//! The crate computes the tensor-power elements `P_γ` attached to a triangle
//! of rank conditions (or to any generalized rectangle diagram), enumerates
//! factor sequences of tableau diagrams, decides factor-sequence membership
//! with the canonical-factorization criterion, and applies the sign-reversing
//! involution on pairs of tableaux that underlies the cancellation argument.
//!
//! Everything here is exact integer combinatorics: partitions, semistandard
//! Young tableaux under the plactic (row insertion) product, signed
//! straightening of integer sequences into Schur-function basis elements, and
//! Littlewood-Richardson coefficients.

pub mod diagram;
pub mod factor_seq;
pub mod involution;
pub mod partition;
pub mod rng;
pub mod schur;
pub mod tableau;
pub mod tensor;

pub use diagram::{Path, RankConditions, RectDiagram, Step};
pub use involution::WeakRowDiagram;
pub use partition::Partition;
pub use schur::SignedSchur;
pub use tableau::{RectTableau, Tableau};
pub use tensor::TensorElement;
