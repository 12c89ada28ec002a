//! Difference-set search through towers of Schurian schemes.

pub mod equidist;
pub mod error;
pub mod group;
pub mod scheme;
pub mod search;
pub mod symmetry;

pub use equidist::{Lambda, MultiFunction, Multiplicity, Parameters};
pub use error::{Error, Result};
pub use group::{FiniteGroup, Subgroup, SubgroupChain};
pub use search::{run_tower_search, Multiset, SearchConfig, SearchReport};
