//! Decomposition of a set into subgroups that are themselves expressible
//! through two-sided translates of the set, with checkable certificates.

mod big;
mod cert;
mod dag;
mod engine;
mod promote;

pub use big::{big_cosets, minimal_subgroup};
pub use cert::{check_certificate, is_witness_syntax, to_left_only, DecompositionCertificate, Verdict};
pub use dag::ContainmentDag;
pub use engine::{decompose, engine_version};
pub use promote::{promote_top_level, Promotion};
