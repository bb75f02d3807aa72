//! Exact arithmetic for the group J(Z) of formal power series
//! `x + Σ_{i≥2} α_i x^i` under composition, and for its filtration by the
//! level subgroups J_k(Z):
//!
//! * truncated series arithmetic over arbitrary-precision integers
//!   ([`series`]);
//! * the derived degree bounds and useful-pair machinery ([`group`]);
//! * explicit commutator-word certificates realizing
//!   J_{c_k}(Z) ⊆ [J_k(Z), J_k(Z)] ([`witness`]);
//! * mechanical computation of the abelianization H₁(J_k(Z)) through the
//!   nilpotent quotient at truncation c_k and integer Smith normal form,
//!   with the closed-form prediction it is checked against ([`abelian`]);
//! * the reduced quotient Γ_k, its closed-form group laws, and the
//!   multinomial composition machinery, certified against
//!   lift-compose-reduce ([`gamma`]);
//! * named verification suites ([`verify`]).

pub mod abelian;
pub mod error;
pub mod gamma;
pub mod group;
pub mod series;
pub mod verify;
pub mod witness;

pub use abelian::{
    AbelianStructure, AbelianizationReport, ExponentVector, ImageOrder, RelationMatrix,
};
pub use error::{Error, Result};
pub use gamma::{GammaElement, MultiIndex, SClass};
pub use group::{Bounds, UsefulPair};
pub use series::{Level, TruncatedSeries};
pub use verify::SuiteReport;
pub use witness::{WitnessReport, WitnessWord};
