//! Naimark extensions of finite POVMs.
//!
//! Every POVM element is placed in the upper-left corner of a projector on an
//! enlarged space. The remaining blocks are filled in one projector at a time:
//! first to make the new projector orthogonal to all earlier ones, then to make
//! it idempotent. Elements of any rank are supported.
//!
//! The crate is organized in four layers:
//!
//! - [`linalg`]: dense complex matrices, Hermitian eigendecomposition, PSD
//!   factors, square roots, support pseudo-inverses and the ancilla-left
//!   Kronecker layout.
//! - [`povm`]: the POVM data model, validation, builtin examples and a seeded
//!   random generator.
//! - [`extension`]: idempotent and orthogonal block completion, the iterative
//!   builder and the stacked factor chain `E_m = Z_m Z_m^†`.
//! - [`verify`]: checks of every projector property against the source POVM,
//!   using only `linalg` primitives.
//!
//! ```
//! use naimark::{build_extension, builtin_povm, verify_extension, FactorMode, ToleranceConfig};
//!
//! let cfg = ToleranceConfig::default();
//! let povm = builtin_povm("trine", &[]).unwrap();
//! let (ext, _chain) = build_extension(&povm, FactorMode::Thin, &cfg).unwrap();
//! assert_eq!(ext.total_dim, 4);
//! let report = verify_extension(&povm, &ext, &cfg, 10, 0).unwrap();
//! assert!(report.passed());
//! ```

pub mod error;
pub mod extension;
pub mod io;
pub mod linalg;
pub mod povm;
pub mod verify;

pub use error::{Error, Result};
pub use extension::{
    build_extension, build_extension_with, factor_chain, idempotent_completion, orthogonal_completion, pad_to_tensor,
    BuildOptions, CompletedFactor, CompletionBlocks, Conventions, Factor, FactorChain, IdempotentCompletion,
    NaimarkExtension, OutcomeChain,
};
pub use linalg::{
    embed_upper_left, hermitian_eig, kron, partial_trace_first, pinv_on_support, psd_factor, sqrt_psd, ComplexMatrix,
    FactorMode, HermitianEigen, ToleranceConfig,
};
pub use povm::{builtin_povm, random_povm, validate_povm, LabeledMatrix, Povm, PovmValidationReport};
pub use verify::{
    born_rule_residual, check_projector, recover_element, verify_extension, DensityMatrix, VerificationReport,
};
