//! Exact invariants of compact `d`-excisive functors.
//!
//! * [`combinat`]: good-subset counts `μ(i,j,k)`, Stirling numbers, `p`-power
//!   partitions and the `p`-distance `δ_p`.
//! * [`burnside`]: the Goodwillie-Burnside ring `A(d)` and its ghost map.
//! * [`zariski`], [`balmer`], [`hzspec`]: the three spectra as finite posets.
//! * [`classify`]: admissible functions and Thomason subsets.
//! * [`cli`]: the `excisive` command line.
//!
//! ```
//! use excisive_core::{combinat, Prime};
//!
//! let two = Prime::new(2).unwrap();
//! assert_eq!(combinat::mu_incl_excl(2, 2, 3).unwrap(), 4.into());
//! assert_eq!(combinat::delta_p(two, 3, 1).unwrap().to_string(), "2");
//! ```

pub mod balmer;
pub mod burnside;
pub mod classify;
pub mod cli;
pub mod combinat;
mod decimal;
pub mod error;
pub mod hzspec;
pub mod natinf;
pub mod poset;
pub mod prime;
pub mod snf;
pub mod zariski;

pub use balmer::{b_leq, b_truncation, BalmerPrime, SpectrumTruncation};
pub use burnside::{BurnsidePresentation, RingElement};
pub use classify::{AdmissibleFunction, PAdmissibleFunction, ThomasonSubset};
pub use error::{Error, Result};
pub use hzspec::HzPrime;
pub use natinf::NatInf;
pub use poset::{Poset, RankDir, SpectrumPoint};
pub use prime::Prime;
pub use zariski::ZariskiPrime;
