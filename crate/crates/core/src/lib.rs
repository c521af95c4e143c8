//! Exact q-expansions of eta-quotients and related modular forms, with
//! Sturm-bound certification of identities between them and finite
//! cross-checks of coefficient vanishing sets.

pub mod arith;
pub mod characters;
pub mod cli;
pub mod error;
pub mod forms;
pub mod operators;
pub mod par;
pub mod qseries;
pub mod scalars;
pub mod verify;

pub use characters::{DirichletChar, Parity};
pub use error::{Error, Result};
pub use par::Exec;
pub use scalars::QuadScalar;
