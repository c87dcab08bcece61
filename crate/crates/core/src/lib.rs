//! Finite unit-norm tight frame toolkit: construction, analysis,
//! transformation, and numerical search for low-coherence uniform Parseval
//! frames in small real dimensions.

pub mod acceptance;
pub mod catalog;
pub mod equivalence;
pub mod error;
pub mod frame;
pub mod io;
pub mod linalg;
pub mod optimizer;
pub mod transforms;

pub use acceptance::{run_all, CriterionReport};
pub use catalog::{
    build, entry, known_coherence, list, rattle_feasibility_check, CatalogEntry,
    CoherenceReference, RattleReport,
};
pub use equivalence::{
    brute_force_equivalent, equivalent, fingerprint, type1_equivalent, EquivalenceStatus,
    EquivalenceVerdict, GrammianFingerprint, DEFAULT_NODE_BUDGET,
};
pub use error::{Error, Result};
pub use frame::{
    analyze, grammian, is_equiangular, max_correlation, parseval_defect, reconstruction_error,
    tightness_diagnostics, uniformity_defect, welch_bound, Frame, FrameReport, Grammian,
    TightnessDiagnostics,
};
pub use io::{parse_frame_file, write_frame_file};
pub use linalg::{nearest_isometry, sym_eig, Matrix, SymEig};
pub use optimizer::{
    certify, minimize, random_uniform_parseval, smooth_coherence, smooth_coherence_gradient,
    Certification, OptimizerConfig, OptimizerResult, StageTrace,
};
pub use transforms::{
    apply_signed_permutation, complement, rotate, scale_to_parseval, union, SignedPermutation,
};
