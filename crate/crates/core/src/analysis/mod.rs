//! Hypothesis and identity checks built around the Simpson error kernel.

mod convexity;
pub mod corpus;
mod derivative;
mod kernel;
mod lemma;
mod reference;

pub use convexity::{check_s_convexity, ConvexityVerdict, Witness, CONVEXITY_TOLERANCE};
pub use derivative::{estimate_d3, estimate_d4, estimate_sup_d4, fd_step};
pub use kernel::{kernel_p, KernelPoint};
pub use lemma::{verify_lemma_identity, LemmaResidual};
pub use reference::{reference_kernel_constant, reference_moment_a, reference_moment_b};
