//! Exact traces of Weyl group elements on zero weight spaces.

pub mod cyclo;
pub mod error;
pub mod golden;
pub mod intlin;
pub mod lattice;
pub mod oracle;
pub mod partition;
pub mod trace;
pub mod weyl;
pub mod zchar;

pub use cyclo::{CycloNum, TorusPoint};
pub use error::{Error, Result};
pub use lattice::{build_datum, datum, CartanType, CorootVec, Family, RootDatum, Weight};
pub use partition::{build_subtorus, weighted_partition, SubtorusData};
pub use trace::{trace, ClassEngine, Method, TraceRequest, TraceResult};
pub use weyl::{parse_class, WeylElement, WeylGroup};
pub use zchar::{
    character_table, decompose, full_character, search_irreducible, CharacterTable, SearchReport, Verdict,
    ZeroWeightCharacter,
};
