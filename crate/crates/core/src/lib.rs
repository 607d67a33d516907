//! Exact weight-lattice geometry, fusion rules and quantum-group norm
//! formulas for q-deformations of simply-connected compact semisimple Lie
//! groups.
//!
//! The crate is organised bottom-up:
//!
//! - [`root_system`]: Cartan data, the normalized bilinear form (shortest
//!   roots have `(α, α) = 2`), Casimir exponents, Weyl dimensions.
//! - [`characters`]: Freudenthal weight multiplicities and a character
//!   product oracle.
//! - [`fusion`]: Brauer–Klimyk tensor product decomposition.
//! - [`bf_weights`]: central weights `w(μ) = β^{|μ|}` and
//!   `w(μ) = e^{β c(μ)^{1/2}}`, validated on truncated fusion graphs.
//! - [`qnorm`]: the norm `‖π_λ(l⁻(u^μ))‖ = q^{−(λ,μ)}` as exact exponents,
//!   cross-checked through R-matrix eigenvalues on isotypic components.
//! - [`cb_region`]: the completely-bounded extension criterion
//!   `q^{−|λ|} ≤ β` with bound / divergence certificates.
//! - [`sl2_oracle`]: explicit `U_q(sl₂)` matrices and a numeric check of
//!   the norm formula.
//!
//! Everything except the logarithms and the sl₂ oracle is exact rational
//! arithmetic.

pub mod bf_weights;
pub mod cb_region;
pub mod characters;
pub mod error;
pub mod exact;
pub mod fusion;
pub mod lie_type;
pub mod linalg;
pub mod qnorm;
pub mod real;
pub mod root_system;
pub mod sl2_oracle;
pub mod weight;

pub use bf_weights::{validate_central_weight, CentralWeightSpec, ValidationReport};
pub use cb_region::{cb_extends, cb_region_enumerate, Beta, CbDecision};
pub use characters::{
    character_product_decompose, weight_multiplicities, Character, CharacterCache,
};
pub use error::{Error, Result};
pub use exact::Rational;
pub use fusion::{contains_trivial, tensor_decompose, FusionDecomposition};
pub use lie_type::{LieType, Series, SimpleType};
pub use qnorm::{QExponent, SessionConfig};
pub use real::{Precision, Real};
pub use root_system::{DominantRep, RootSystem};
pub use weight::Weight;
