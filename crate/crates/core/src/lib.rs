//! Exact computational engine for ι-complexes: finitely generated graded
//! free chain complexes over F₂[U] carrying a homotopy-involution.
//!
//! Everything here is exact. Gradings are rational numbers, matrices over
//! F₂[U] are grading-forced monomial matrices stored as bit matrices, and
//! all homological invariants (homology, the correction terms d̲ ≤ d ≤ d̄,
//! connected homology, ω, graded-root invariants, surgery modules) come out
//! of integer/rational arithmetic with no floating point anywhere.
//!
//! Module map:
//!
//! * [`ufu_algebra`] — linear and homological algebra over F₂[U]: graded
//!   Smith reduction, kernels, solving, homology, and an independent
//!   truncation oracle.
//! * [`iota_complex`] — the ι-complex type and its group operations
//!   (tensor, dual, minimal-model reduction, d invariant).
//! * [`involutive`] — the involutive mapping cone and d̲ / d̄.
//! * [`connected`] — self-local-equivalence search, the connected complex,
//!   connected homology, ω, and infinite-order certificates.
//! * [`graded_roots`] — symmetric graded roots, the monotone subroot
//!   algorithm, and realization as ι-complexes.
//! * [`surgery`] — V-sequences, staircases, the modules M(V⃗, n), and the
//!   truncated mapping cone for negative surgeries on L-space knots.

pub mod connected;
pub mod samples;
pub mod graded_roots;
pub mod involutive;
pub mod iota_complex;
pub mod surgery;
pub mod ufu_algebra;

pub use connected::{
    admissible_space, certified_maximal_self_local_equivalence, connected_complex,
    connected_homology,
    connected_homology_with_certificate, filtration_member, infinite_order_certificate,
    maximal_self_local_equivalence, omega, InfiniteOrderVerdict, SearchMode, TowerLengthSet,
};
pub use involutive::{correction_terms, involutive_cone, CorrectionTerms};
pub use iota_complex::IotaComplex;
pub use ufu_algebra::{GradedModule, Grading, MonomialMatrix};
