//! Skeletal premodular categories and numerical verification of the module
//! category, Frobenius algebra and permutation invariant constructions over
//! the Deligne square.

pub mod category_data;
pub mod cft;
pub mod deligne;
pub mod engine;
pub mod error;
pub mod frobenius;
pub mod module_category;
pub mod report;
pub mod suite;
pub mod tolerance;

pub use category_data::{CategorySpec, C64};
pub use engine::{Engine, Morphism};
pub use error::{MtcError, Result};
pub use report::{Check, Status, VerificationReport};
pub use tolerance::ToleranceConfig;
