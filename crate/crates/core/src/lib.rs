//! Exact character tables of finite p-groups and checks of kernel-based
//! structure results over a corpus of small groups.
//!
//! The pipeline is: build a [`group::Group`] from a [`group::GroupSpec`],
//! compute its [`chartab::CharacterTable`], derive the kernel and predicate
//! profiles in [`invariants`], and run claim checks in [`verifier`].

pub mod catalog;
pub mod chartab;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod invariants;
pub mod verifier;

pub use chartab::{dixon_character_table, Character, CharacterTable};
pub use cyclotomic::{CycInt, ModField};
pub use error::{Error, Result};
pub use group::{build_group, build_group_with_cap, Group, GroupSpec, Subgroup};
