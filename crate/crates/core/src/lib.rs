//! Lasso automata and their expressions.
//!
//! A *lasso* `(u, v)` is a pair of a finite spoke word and a nonempty loop
//! word standing for the ultimately periodic word `u v^ω`. This crate provides
//!
//! * rational expressions with Brzozowski derivatives and a small DFA algebra
//!   ([`ratexp`], [`langops`]),
//! * lassos and the γ rewrite system ([`lasso`]),
//! * rational lasso expressions and their compilation into lasso automata
//!   ([`lassoexp`]),
//! * lasso automata with Kleene extraction and an exact saturation check
//!   ([`lassoaut`]),
//! * rational ω-expressions and the pipeline turning them into saturated lasso
//!   automata ([`omega`]).
//!
//! ```
//! use lassokit::{Alphabet, lassoexp, lasso::Lasso};
//!
//! let sigma = Alphabet::from_letters("ab").unwrap();
//! let rho = lassoexp::parse_lexp("b(a*b@)", &sigma).unwrap();
//! let aut = lassoexp::compile_lasso(&rho, &sigma).unwrap();
//! assert!(aut.accepts(&Lasso::parse("baa:b").unwrap()).unwrap());
//! assert!(!aut.accepts(&Lasso::parse("b:ab").unwrap()).unwrap());
//! ```

pub mod alphabet;
pub mod error;
pub mod langops;
pub mod lasso;
pub mod lassoaut;
pub mod lassoexp;
pub mod omega;
pub mod ratexp;
mod syntax;

pub use alphabet::Alphabet;
pub use error::{Error, Result};
pub use langops::Dfa;
pub use lasso::Lasso;
pub use lassoaut::LassoAutomaton;
pub use lassoexp::{DisjunctiveForm, LassoExpr};
pub use omega::OmegaExpr;
pub use ratexp::RatExpr;

/// Upper bound on the number of states any exploration may create before
/// giving up with [`Error::StateCap`].
pub const STATE_CAP: usize = 100_000;
