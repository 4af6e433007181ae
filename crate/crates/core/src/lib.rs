//! Unitary representations of the Lie superalgebra osp(1|2) that arise from
//! the Wigner quantization of the Hamiltonian H = xp.
//!
//! - [`classification`]: (μ, δ) ladder actions, exact norm sequences, the
//!   positivity gate and the two lowest-weight families.
//! - [`matrix_rep`]: truncated matrices of b±, h, e, f, Ω, C and of x̂, p̂, Ĥ.
//! - [`relations`]: the identity catalog checked on truncation interiors.
//! - [`spectral`]: Jacobi matrices, eigensolvers and the formal eigenvector
//!   recurrence.

pub mod classification;
pub mod error;
pub mod matrix_rep;
pub mod number;
pub mod relations;
pub mod spectral;

pub use classification::{
    casimir_values, classify, equivalence_shift, general_action_coeffs, norm_closed_form,
    norm_closed_form_sequence, norm_coefficient, positivity_gate, Branch, CasimirValues,
    Classification, ClassificationVerdict, Family, NormSequence, RepParams,
};
pub use error::{Error, Result};
pub use matrix_rep::{
    build_rep, physical_operators, verify_wigner_compatibility, PhysicalOps, TruncatedRep,
};
pub use number::Number;
pub use relations::{
    check_identity, defining_relation_suite, evaluate_word, star_adjoint_check, CMatrix, Generator,
    OperatorAssignment, OperatorWord, RelationIdentity, RelationReport, C64,
};
pub use spectral::{
    classical_oracle_check, eigenvalues, formal_eigenvector, jacobi_of_hamiltonian,
    jacobi_of_momentum, jacobi_of_position, FormalEigenvector, Parity, SpectrumReport, SystemLabel,
    TridiagonalSystem,
};
