//! Crystal combinatorics of level-`l` Fock spaces.
//!
//! Multipartitions are studied through their shifted symbols. A vertex of the
//! crystal `G_{e,s}` is highest weight exactly when its symbol peels down to an
//! empty multipartition with a charge in the fundamental domain, and the
//! weights of highest weight vertices decompose into a level-`l` part and a
//! level-0 part counted by tableaux.
//!
//! ```
//! use fock_crystal::{EModulus, Multicharge, Symbol};
//! use fock_crystal::crystal::is_highest_weight;
//!
//! let lambda = "-|2.2|2.2.1.1.1.1".parse().unwrap();
//! let s = Multicharge(vec![3, 4, 6]);
//! let trace = Symbol::new(lambda, s.clone()).unwrap().peel(4).unwrap();
//! assert!(trace.is_totally_periodic(4));
//! assert_eq!(trace.final_charge, Multicharge(vec![-2, -1, 0]));
//! assert!(is_highest_weight(&"-|2.2|2.2.1.1.1.1".parse().unwrap(), &s, EModulus::Finite(4)).unwrap());
//! ```

pub mod cli;
pub mod crystal;
pub mod decomposition;
pub mod error;
pub mod graph;
pub mod multipartition;
pub mod symbol;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use multipartition::{EModulus, Multicharge, Multipartition, Node, Partition};
pub use symbol::{PeelTrace, Period, Symbol};
pub use weight::{WeightAff, WeightInf};
