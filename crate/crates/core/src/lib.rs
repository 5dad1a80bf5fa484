//! Alexander-type invariants of finitely presented groups: Fox calculus,
//! Alexander and Alexander-invariant modules, Fitting ideals, characteristic
//! varieties, Chen ranks and their infinitesimal counterparts.

pub mod abelian;
pub mod chen;
pub mod error;
pub mod extensions;
pub mod fox;
pub mod jumploci;
pub mod lie;
pub mod modtools;
pub mod presentation;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
