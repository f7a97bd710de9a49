//! Combinatorics of finite Weyl groups for the closure order on `G`-orbits of
//! `Z_J`: Bruhat order, parabolic quotients, the twisted specialization order
//! `⪯_{J,δ}` on `^J W`, and its application to Ekedahl-Oort strata of `A_g`.

pub mod cli;
pub mod coxeter;
pub mod error;
pub mod oracle;
pub mod parabolic;
pub mod poset;
pub mod symplectic;
pub mod twisted;
pub mod verify;

pub use coxeter::{CoxeterSystem, Element, Family, Side, SimpleSubset};
pub use error::{Error, Result};
pub use poset::Poset;
pub use twisted::TwistedOrder;
