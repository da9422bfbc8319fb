use thiserror::Error;

use crate::elem::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot compose: codomain {left} differs from domain {right}")]
    Compose { left: String, right: String },
    #[error("pullback legs have different codomains: {0} vs {1}")]
    Pullback(String, String),
    #[error("no mediating map: {0}")]
    Mediator(String),
    #[error("map is not surjective, {0} has no preimage")]
    NoSection(Elem),
    #[error("kernel maps must share a domain: {0} vs {1}")]
    Kernel(String, String),
    #[error("{elem} is not in {set}")]
    NotMember { elem: Elem, set: String },
    #[error("map table is not total: {0}")]
    NotTotal(String),
    #[error("value outside bound {bound}: {detail}")]
    BoundExceeded { bound: usize, detail: String },
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("{0} is not an element of F(1)")]
    InvalidComponent(Elem),
    #[error("monad is not connected: {0}")]
    NotConnected(String),
    #[error("internal inconsistency (broken monad data?): {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("missing table: {0}")]
    MissingTable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rejected: {0}")]
    Rejected(String),
}
