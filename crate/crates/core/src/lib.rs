//! Finite-set workbench for weak limit preservation by functors and monads.
//!
//! The crate models the category of finite sets ([`finset`]), extensional
//! endofunctors on it ([`functor`], [`connected`]), monad structure
//! ([`monad`]), the canonical map `F(A×B) -> F(A)×F(B)` together with the
//! product splitting for connected monads ([`preservation`]), a catalog of
//! concrete instances ([`catalog`]), and canned check suites ([`suite`]).

pub mod catalog;
pub mod connected;
pub mod elem;
pub mod error;
pub mod finset;
pub mod functor;
pub mod monad;
pub mod preservation;
pub mod report;
pub mod suite;

pub use elem::Elem;
pub use error::{Error, Result};
pub use finset::{FinMap, FinSet};
pub use functor::{Finiteness, Functor};
pub use monad::Monad;
pub use report::{Expect, Report, Verdict};
