//! Growth functions of finitely generated groups.
//!
//! Groups are realized concretely ([`groups`]) so that Cayley balls can be
//! enumerated exactly ([`growth`]). Growth tables give certified upper
//! bounds on the exponential growth rate `ω(G, X) = inf γ(n)^{1/n}`;
//! injective free-semigroup witnesses give lower bounds ([`certificates`]).
//! [`freecalc`] implements the commutator calculus in free groups used to
//! bound witness lengths, and [`topology`] compares marked groups through
//! their labelled balls.

pub mod certificates;
pub mod cli;
pub mod error;
pub mod freecalc;
pub mod groups;
pub mod growth;
pub mod hp;
pub mod topology;
pub mod word;

pub use error::{Error, Result};
