//! Structural census of painted macro-tiles: bumpy-corner counts, the
//! square inventory by colour, and coverage of the red squares.
//!
//! Squares of scale k sit centrally in every scale-(k+1) sub-macro and
//! have side 2^k+1. Their colour is the scale colour, so which scales
//! count as red depends on the variant and on the free base bit of the
//! two-colour variant.

use std::collections::{BTreeMap, HashSet};

use crate::grid::Config;

use super::constants::{macro_side, v2};
use super::macrotile::{scale_colour, MacroSpec};
use super::model::{Axis, Mark, Role};
use super::tileset::Tileset;
use super::variants::Variant;

/// One square of the hierarchy: scale, colour, and zero-based corners.
#[derive(Clone, Copy, Debug)]
pub struct Square {
    pub scale: u32,
    pub colour: Mark,
    pub top: u64,
    pub left: u64,
    pub side: u64,
}

impl Square {
    pub fn bottom(&self) -> u64 {
        self.top + self.side - 1
    }

    pub fn right(&self) -> u64 {
        self.left + self.side - 1
    }

    /// All cells of the square's border line.
    pub fn border_cells(&self) -> Vec<(u64, u64)> {
        let mut cells = Vec::new();
        for c in self.left..=self.right() {
            cells.push((self.top, c));
            cells.push((self.bottom(), c));
        }
        for r in self.top + 1..self.bottom() {
            cells.push((r, self.left));
            cells.push((r, self.right()));
        }
        cells
    }
}

/// Enumerate every square of a scale-n macro-tile, smallest scale first.
pub fn squares(variant: Variant, spec: &MacroSpec) -> Vec<Square> {
    let mut out = Vec::new();
    for k in 1..spec.n {
        let block = 1u64 << (k + 1);
        let per_axis = 1u64 << (spec.n - k - 1);
        let offset = (1u64 << (k - 1)) - 1;
        let colour = scale_colour(variant, k, spec.base_colour);
        for p in 0..per_axis {
            for q in 0..per_axis {
                out.push(Square {
                    scale: k,
                    colour,
                    top: p * block + offset,
                    left: q * block + offset,
                    side: (1u64 << k) + 1,
                });
            }
        }
    }
    out
}

/// Census result for one painted macro-tile.
#[derive(Clone, Debug)]
pub struct MacroCensus {
    pub side: u64,
    /// Bumpy corners by colour.
    pub bumpy: BTreeMap<Mark, u64>,
    /// Number of squares by (side, colour).
    pub squares: BTreeMap<(u64, Mark), u64>,
    /// Side of the largest red square, if any.
    pub largest_red_side: Option<u64>,
    /// Cells lying in no red square region (border included in the region).
    pub outside_red: u64,
}

impl MacroCensus {
    pub fn bumpy_total(&self) -> u64 {
        self.bumpy.values().sum()
    }

    /// Distinct red square sides present, ascending.
    pub fn red_sides(&self) -> Vec<u64> {
        self.squares
            .keys()
            .filter(|(_, colour)| *colour == Mark::Red)
            .map(|(side, _)| *side)
            .collect()
    }
}

/// Count bumpy corners and squares, and measure red coverage.
pub fn macro_census(ts: &Tileset, cfg: &Config, spec: &MacroSpec) -> MacroCensus {
    let side = macro_side(spec.n);
    assert_eq!(cfg.rows() as u64, side);
    assert_eq!(cfg.cols() as u64, side);

    let mut bumpy = BTreeMap::new();
    for r in 0..cfg.rows() {
        for c in 0..cfg.cols() {
            let t = ts.tile(cfg.at(r, c));
            if t.role == Role::Bumpy {
                *bumpy.entry(t.body_mark.unwrap()).or_insert(0) += 1;
            }
        }
    }

    let all = squares(ts.variant, spec);
    let mut by_side = BTreeMap::new();
    for sq in &all {
        *by_side.entry((sq.side, sq.colour)).or_insert(0) += 1;
    }
    let largest_red_side = all
        .iter()
        .filter(|sq| sq.colour == Mark::Red)
        .map(|sq| sq.side)
        .max();

    // Red coverage by bitmap; macro-tiles this census runs on are small.
    let mut covered = vec![false; (side * side) as usize];
    for sq in all.iter().filter(|sq| sq.colour == Mark::Red) {
        for r in sq.top..=sq.bottom() {
            for c in sq.left..=sq.right() {
                covered[(r * side + c) as usize] = true;
            }
        }
    }
    let outside_red = covered.iter().filter(|&&x| !x).count() as u64;

    MacroCensus { side, bumpy, squares: by_side, largest_red_side, outside_red }
}

/// Check that every square border is drawn in its scale colour, and that
/// squares of one colour never share border cells.
pub fn verify_square_borders(
    ts: &Tileset,
    cfg: &Config,
    spec: &MacroSpec,
) -> Result<(), String> {
    let mut seen: BTreeMap<Mark, HashSet<(u64, u64)>> = BTreeMap::new();
    for sq in squares(ts.variant, spec) {
        let used = seen.entry(sq.colour).or_default();
        for (r, c) in sq.border_cells() {
            if !used.insert((r, c)) {
                return Err(format!(
                    "two {} squares share border cell ({r}, {c})",
                    sq.colour
                ));
            }
            let t = ts.tile(cfg.at(r as usize, c as usize));
            // The border strand at this cell: a cross at a corner, the
            // mid strand when the cell is the border line's midpoint,
            // the passing strand otherwise.
            let line_axis = if r == sq.top || r == sq.bottom() { Axis::H } else { Axis::V };
            let mark = match t.role {
                Role::Bumpy | Role::Cross => t.body_mark,
                _ => {
                    let (rr, cc) = (r + 1, c + 1);
                    let mid_is_h = v2(rr) < v2(cc);
                    let mid_axis = if mid_is_h { Axis::H } else { Axis::V };
                    if mid_axis == line_axis {
                        t.mid_mark
                    } else {
                        t.pass_mark
                    }
                }
            };
            if mark != Some(sq.colour) {
                return Err(format!(
                    "scale-{} square expects {} at ({r}, {c}), found {mark:?}",
                    sq.scale, sq.colour
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::macrotile::build_macro_tile;
    use crate::tiles::model::Diag;
    use crate::tiles::tileset::build_tileset;

    #[test]
    fn square_inventory_of_a_5_macro() {
        let spec = MacroSpec::new(5, Diag::NW);
        let all = squares(Variant::RedBlack, &spec);
        // 4^(5-k-1) squares of scale k.
        let count = |k: u32| all.iter().filter(|s| s.scale == k).count();
        assert_eq!(count(1), 64);
        assert_eq!(count(2), 16);
        assert_eq!(count(3), 4);
        assert_eq!(count(4), 1);
        // The central square of the whole macro-tile.
        let central = all.iter().find(|s| s.scale == 4).unwrap();
        assert_eq!((central.top, central.left, central.side), (7, 7, 17));
    }

    #[test]
    fn census_of_a_red_black_3_macro() {
        let ts = build_tileset(Variant::RedBlack);
        let spec = MacroSpec::new(3, Diag::NE);
        let cfg = build_macro_tile(&ts, &spec);
        let census = macro_census(&ts, &cfg, &spec);
        assert_eq!(census.bumpy_total(), 16);
        assert_eq!(census.bumpy.get(&Mark::Black), Some(&16));
        assert_eq!(census.largest_red_side, Some(5));
        assert_eq!(census.red_sides(), vec![5]);
        // 49 cells, one red square of 25.
        assert_eq!(census.outside_red, 24);
        verify_square_borders(&ts, &cfg, &spec).unwrap();
    }

    #[test]
    fn red_coverage_of_a_5_macro_matches_the_recurrence() {
        let ts = build_tileset(Variant::RedBlack);
        let spec = MacroSpec::new(5, Diag::SE);
        let cfg = build_macro_tile(&ts, &spec);
        let census = macro_census(&ts, &cfg, &spec);
        // Covered cells: 12 outer scale-2 squares plus the central
        // scale-4 square subsuming the inner four: 12*25 + 289 = 589.
        assert_eq!((census.side * census.side) - census.outside_red, 589);
        assert_eq!(census.largest_red_side, Some(17));
        assert_eq!(census.red_sides(), vec![5, 17]);
        verify_square_borders(&ts, &cfg, &spec).unwrap();
    }

    #[test]
    fn base_red_swaps_the_square_colours() {
        let ts = build_tileset(Variant::RedBlack);
        let spec = MacroSpec::new(3, Diag::NE).with_base(Mark::Red);
        let cfg = build_macro_tile(&ts, &spec);
        let census = macro_census(&ts, &cfg, &spec);
        assert_eq!(census.bumpy.get(&Mark::Red), Some(&16));
        // Scale-1 squares are now red (side 3), scale 2 black.
        assert_eq!(census.red_sides(), vec![3]);
        verify_square_borders(&ts, &cfg, &spec).unwrap();
    }

    #[test]
    fn four_colour_census_has_black_corners() {
        let ts = build_tileset(Variant::FourColour);
        let spec = MacroSpec::new(4, Diag::NE);
        let cfg = build_macro_tile(&ts, &spec);
        let census = macro_census(&ts, &cfg, &spec);
        assert_eq!(census.bumpy.get(&Mark::Black), Some(&64));
        assert_eq!(census.largest_red_side, Some(5));
        verify_square_borders(&ts, &cfg, &spec).unwrap();
    }
}
