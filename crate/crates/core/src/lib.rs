//! Exact solver and verifier for discrete two-player all-pay auctions with
//! complete information.
//!
//! Bids are nonnegative integers, both bidders pay their bid, the higher bid
//! wins and ties split the prize. The crate builds every mixed equilibrium
//! family of the game from uniform-on-odd/even building blocks, certifies
//! profiles by exhaustive best-response enumeration in exact rational
//! arithmetic, and compares equilibrium payoffs with the continuous-bid
//! benchmark.
//!
//! ```
//! use allpay::equilibria::{build_equilibrium, canonical_params, Valuations};
//! use allpay::certify::certify_allpay;
//! use allpay::rational::int;
//!
//! let v = Valuations::new(int(8), int(3)).unwrap();
//! let profile = build_equilibrium(&v, &canonical_params(&v)).unwrap();
//! assert_eq!(profile.predicted_p1, int(5));
//! assert!(certify_allpay(&v, &profile.x, &profile.y).unwrap().is_equilibrium);
//! ```

pub mod certify;
pub mod cli;
pub mod dist;
pub mod equilibria;
pub mod error;
pub mod payoff;
pub mod rational;
pub mod statics;

pub use error::{Error, Result};
