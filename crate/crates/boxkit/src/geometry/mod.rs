//! Dyadic and general box algebra: prefixes, containment, superbox
//! enumeration, interval decomposition, geometric resolution, and an indexed
//! box set supporting containment queries.

mod boxes;
mod index;
mod prefix;

pub use boxes::{geometric_resolution, interval_prefixes, DyadicBox, GeneralBox};
pub use index::DyadicBoxIndex;
pub use prefix::{BitWidth, Prefix};
