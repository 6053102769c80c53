//! Arithmetic of Witt vectors over F_p((T)), the 𝔮-decomposition of
//! W(K)^x and ramification and genus data of the resulting Kummer-Artin-
//! Schreier-Witt towers.

pub mod decompose;
pub mod error;
pub mod fp;
pub mod series;
pub mod oracle;
pub mod ramification;
pub mod witt;

pub use error::{Error, Result};
pub use fp::{FpElement, Prime};
pub use series::LaurentSeries;
pub use witt::WittVector;
