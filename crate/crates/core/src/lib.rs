//! Exact computer algebra for semisimple Hopf algebra actions on
//! superpotential-presented algebras.
//!
//! Given a semisimple Hopf algebra H (structure constants plus an
//! Artin–Wedderburn certificate) acting on an algebra A = 𝒟(w, ℓ−m)
//! presented by a twisted superpotential w ∈ V^⊗ℓ, the crate computes
//!
//! - the homological determinant of the action, as the character by which H
//!   scales the line 𝕜w;
//! - the McKay quiver of the action and inner-faithfulness;
//! - the quiver superpotential Φ and the quiver-with-relations Λ that is
//!   Morita equivalent to the smash product A # H, with arrow maps chosen
//!   canonically or supplied by the caller;
//! - graded dimensions of Λ and Λ/⟨e₀⟩, preprojective recognition, MCM
//!   dimension vectors, and the growth-based Auslander-map verdict.
//!
//! All arithmetic is exact, over ℚ or a cyclotomic field ℚ(ζ_N).

pub mod growth;
pub mod hopf;
pub mod linalg;
pub mod oracle;
pub mod potential;
pub mod quiverpot;
pub mod rep;
pub mod scalar;

pub use growth::{AuslanderVerdict, GrowthKind, GrowthVerdict, HilbertProfile};
pub use hopf::{Character, FiniteGroup, HopfAlgebra, Irrep};
pub use linalg::Matrix;
pub use potential::{SuperpotentialPresentation, TensorElement};
pub use quiverpot::{ArrowData, QuiverAlgebra, QuiverPotential};
pub use rep::{Quiver, Rep};
pub use scalar::{Ctx, CycContext, Scalar};

#[cfg(test)]
mod concurrency {
    // value types are immutable after construction and shared freely
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_send_and_sync() {
        assert_send_sync::<crate::Scalar>();
        assert_send_sync::<crate::Matrix>();
        assert_send_sync::<crate::HopfAlgebra>();
        assert_send_sync::<crate::Rep>();
        assert_send_sync::<crate::Quiver>();
        assert_send_sync::<crate::TensorElement>();
        assert_send_sync::<crate::QuiverPotential>();
        assert_send_sync::<crate::QuiverAlgebra>();
        assert_send_sync::<crate::HilbertProfile>();
    }
}
