//! Analysis of finite synchronous systems.
//!
//! A synchronous system is a complete, finitely branching Moore-style
//! labelled transition system: every state carries one output symbol and
//! moves on every input symbol to at least one successor. On top of that
//! model this crate provides
//!
//! * runs, output languages, bisimulation quotients and inductive
//!   non-bisimilarity witnesses ([`system`], [`bisim`]);
//! * separating pairs, separators, strong separability, observable effects
//!   and deterministic reaction time ([`reactivity`]);
//! * sequential and parallel composition ([`compose`]);
//! * the compositional under-approximation built from deterministic
//!   observable effects and strongly separating pairs ([`abstraction`]);
//! * a compiler from a small synchronous imperative language to systems
//!   ([`psyc`]);
//! * the `.sls` text format and DOT export ([`sls`], [`dot`]).
//!
//! Every quantification over infinite input words is discharged exactly by
//! a graph argument on the finite synchronized pair graph, see
//! [`pairgraph`].

pub mod abstraction;
pub mod bisim;
pub mod compose;
pub mod dot;
pub mod effect;
mod error;
pub mod lasso;
pub mod pairgraph;
pub mod psyc;
pub mod reactivity;
pub mod report;
pub mod sls;
pub mod symbol;
pub mod system;

pub use error::{Error, Result};
pub use symbol::{Alphabet, Symbol};
pub use system::{InputId, OutputId, StateId, SynchronousSystem, SystemBuilder};
