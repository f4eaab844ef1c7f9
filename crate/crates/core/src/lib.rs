//! Completed positive semifield algebra and the entropy machinery that
//! lives on top of it.
//!
//! The crate is organized around five pieces:
//!
//! - [`semifield`]: extended-real carriers, the dual-pair completion of a
//!   positive semifield, and the eight baseline structures (probabilities
//!   and their dual, max/min-times, max/min-plus, the Hartley pair).
//! - [`generator`]: Pap's generator-function construction and the two
//!   parametric families it yields, the power family `R_r` and the
//!   entropic family `H_r`, together with their idempotent limits.
//! - [`means`]: weighted power means, classically and in semifield form
//!   with total corner-case handling on `[0, inf]`.
//! - [`entropy`]: the shifted Rényi spectrum (entropy, cross-entropy,
//!   divergence), escort distributions, equivalent probability and
//!   information potential, and the analytic identities between them.
//! - [`path`]: semifield-generic matrices, conjugate identities, and
//!   Viterbi-style decoding parameterized by any idempotent semifield.
//!
//! Everything is immutable and purely functional; all types are safe to
//! share across threads.

pub mod entropy;
pub mod generator;
pub mod laws;
pub mod means;
pub mod numeric;
pub mod path;
pub mod semifield;
pub mod value;

pub use entropy::{
    equivalent_probability, escort, information_potential, moment_identity, shannon_decomposition,
    shifted_cross_entropy, shifted_divergence, shifted_entropy, spectrum, spectrum_derivative,
    Distribution, EntropyError, EntropySpectrum, MomentIdentity, ShannonDecomposition,
};
pub use generator::{
    entropic_family, from_generator, hartley_generator, hartley_map, hartley_map_inv, real_family,
    renyi_kernel, DegenerateFamilyError, Generator, GeneratorError, Monotonicity, OrderError,
    OrderParameter,
};
pub use means::{
    classify_indices, holder_mean, semifield_mean, semifield_mean_strict, Classification,
    IndexClasses, MeanError, WeightedVector,
};
pub use path::{
    check_alternating_identities, path_sum, viterbi_decode, AlternatingReport, Decoded, Dotting,
    PathError, SemiMatrix, SequenceModel,
};
pub use semifield::{
    complete_pair, Builtin, DualPair, OrderAlignment, Semifield, SemifieldSpec, Signature,
    SpecError, UnknownSemifield,
};
pub use value::{Carrier, ExtendedReal, NanError, ValueClass};
