pub mod exec;
pub mod fields;
pub mod derivation;
pub mod mpoly;
pub mod identities;
pub mod search;
