//! Cartan-covariant quantum channels.
//!
//! Builds orthogonal Hermitian operator bases of u(D), partitions them into
//! the eigenspaces of a Cartan involution (special orthogonal or compact
//! symplectic), and studies the two-parameter covariant channels that act as
//! `1 ⊕ α·1_a ⊕ β·1_b` on those eigenspaces. The crate constructs Choi
//! states, extracts Kraus operators, computes structure constants of the
//! traceless sector together with their Cartan block decomposition, and
//! certifies the CP/PPT region geometry, including the entanglement-breaking
//! trapezoid used by the PPT-squared check.
//!
//! Everything is plain dense double-precision linear algebra on immutable
//! values; with the (default) `parallel` feature the brute-force loops run
//! on rayon, without it the same code runs sequentially.

pub mod basis;
pub mod channels;
mod exec;
pub mod lie;
pub mod matrix;
pub mod regions;

mod error;

pub use error::{Error, Result};

pub use regions::{
    contains, cp_halfplanes, extreme_ppt, intersect_halfplanes, ppt2_verify, ppt_halfplanes,
    region_sweep, web_region, CompositionCheck, Containment, HalfPlane, NamedComposition,
    Ppt2Report, Region2D, RegionSweepEntry, EXTREME_LABELS,
};
pub use channels::{
    analytic_pi, analytic_spectrum, apply_channel, choi_direct, choi_via_action, compose,
    expand_spectrum, expansion_coefficients, is_ccp, is_cp, is_cp_with_tol, is_ppt, kraus_apply,
    kraus_from_choi, max_entangled_state, numeric_spectrum, partial_transpose,
    qubit_hadamard_cp_check, qubit_hadamard_cp_check_with_tol, sample_cp_channels,
    spectrum_report, transfer_matrix, CartanChannel, ChoiMatrix, KrausSet, SpectrumReport,
};
pub use lie::{
    block_decompose, invariant_operators, projectors, structure_constants,
    structure_constants_seq, verify_appendix_a, verify_appendix_a_seq, AppendixAReport,
    CartanBlocks, IdentityCheck, InvariantOperators, ProjectorSet, StructureConstants,
};
pub use basis::{
    cartan_partition, commutation_audit, commutation_audit_seq, standard_cartan_basis,
    symplectic_form, BasisChoice, BasisFlavor, CartanBasis, CartanInvolution, CommutationAudit,
    InvolutionKind, OperatorBasis, SymplecticVariant,
};
