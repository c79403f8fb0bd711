//! Cantor constructions with prime partial quotients.

pub mod boxdim;
pub mod checks;
pub mod eb;
pub mod luczak;
pub mod records;

pub use boxdim::{box_dimension_estimate, BoxDimension};
pub use checks::{additivity_check, diameter_check, gap_check, holder_check};
pub use eb::{eb_prefix_tree, make_eb_params, EBParams, EbOptions, EbTree};
pub use luczak::{falconer_limit, falconer_lower_bound, luczak_cover, luczak_levels, CantorLevel, LuczakParams};
