//! Finite stratified simplicial sets in Eilenberg–Zilber normal form.

mod map;
mod product;
mod search;
mod set;
mod subset;

pub use map::StratifiedMap;
pub use product::{gray_product, gray_product_capped, Product};
pub use search::{enumerate_maps, MapSearch};
pub use set::{Cell, CellId, CellJson, SetBuilder, SetJson, Simplex, SimplexJson, StratifiedSet, ValidationReport};
pub use subset::{regular_generated, regular_generated_by_name, union_regular, SubsetHandle, SubsetKind};

#[cfg(test)]
mod tests;
