//! Integer group determinants for the two abelian groups of order 18,
//! ℤ₁₈ ≅ ℤ₂×ℤ₉ and ℤ₃×ℤ₆ ≅ ℤ₂×ℤ₃×ℤ₃.
//!
//! The crate computes determinants exactly (character product and matrix
//! oracle), decides membership in the determinant sets, builds verified
//! witness elements, re-checks the polynomial congruences the classification
//! rests on, and sweeps coefficient boxes for empirical audits.

pub mod atlas;
pub mod bigint_serde;
pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod factor;
pub mod groupring;
pub mod membership;
pub mod primeclass;
pub mod proofcheck;
pub mod witness;
mod scalar;

pub use cyclotomic::{norm9, triple_product, Cyclo9, NinthCyclotomicInt};
pub use eisenstein::{normal_form, parity, Eisenstein, EisensteinInt, NormalForm, Parity};
pub use error::{Error, Result};
pub use factor::{factorize, is_prime, FactoredInteger};
pub use groupring::{
    build_from_expression, crt_circulant, det_characters, det_matrix_oracle, DeterminantSplit,
    GroupId, GroupRingElement,
};
pub use atlas::{audit, enumerate, AtlasRecord, AtlasSpec, AuditReport, Limit};
pub use membership::{decide, decide_z18, decide_z3x6, decide_z3z3, restriction_screen, Form, MembershipVerdict};
pub use primeclass::{classify_prime, PrimeClass, PrimeTag};
pub use proofcheck::{check_f1_identity, check_lambda_identity, check_s2_s3_identities, IdentityReport};
pub use scalar::Scalar;
pub use witness::{compose, instantiate, witness_for, WitnessCertificate, WitnessFamily};
