//! Hierarchical tilesets: tile records, the three variants, matching
//! rules, the macro-tile painter, and structural census tools.

pub mod census;
pub mod constants;
pub mod macrotile;
pub mod model;
pub mod rules;
pub mod tileset;
pub mod variants;

pub use census::{macro_census, squares, verify_square_borders, MacroCensus, Square};
pub use macrotile::{build_macro_tile, scale_colour, scale_style, tile_at, MacroSpec};
pub use model::{Axis, Diag, Dir, EdgeSig, Mark, Role, Tile};
pub use tileset::{build_tileset, Tileset};
pub use variants::{base_figures, enumerate_tiles, Variant};
