//! Macro-tile painter.
//!
//! A scale-n macro-tile is a (2^n-1)-square configuration. Painting is
//! driven by coordinate valuations: a cell whose one-based row and column
//! valuations agree is a cross; any other cell is the midpoint of the
//! strand along its smaller-valuation axis, crossed by the strand of the
//! larger one. Whether a strand segment is principal or secondary falls
//! out of the orientation of the cross it belongs to, which the quadrant
//! descent provides.
//!
//! Colours alternate by scale. The two-colour variant keeps one free
//! bit, the colour of scale 1; the four-colour variant pins scale 1 to
//! black. Filler styles in the four-colour variant are slaved to the
//! colour of their scale (black and blue scales dot, red and green
//! scales dash), so a regime phase flip carries the styles with it.

use crate::grid::{Boundary, Config};

use super::constants::{
    cross_orientation, macro_side, mid_pass_scales, nearest_cross_on_line, v2,
};
use super::model::{Axis, Diag, Dir, Mark, Role, Tile};
use super::tileset::Tileset;
use super::variants::Variant;

/// Requested macro-tile: scale, central-cross orientation, and the free
/// colour bit of the two-colour variant (colour of scale 1).
#[derive(Clone, Copy, Debug)]
pub struct MacroSpec {
    pub n: u32,
    pub orientation: Diag,
    pub base_colour: Mark,
}

impl MacroSpec {
    pub fn new(n: u32, orientation: Diag) -> MacroSpec {
        MacroSpec { n, orientation, base_colour: Mark::Black }
    }

    pub fn with_base(mut self, base: Mark) -> MacroSpec {
        self.base_colour = base;
        self
    }
}

/// Colour of scale-k structures under a variant.
pub fn scale_colour(variant: Variant, k: u32, base: Mark) -> Mark {
    match variant {
        Variant::Plain => Mark::Plain,
        Variant::RedBlack => {
            if k % 2 == 1 {
                base
            } else {
                base.flip_colour()
            }
        }
        Variant::FourColour => {
            if k % 2 == 1 {
                Mark::Black
            } else {
                Mark::Red
            }
        }
    }
}

/// Style of scale-k filler strands under a variant.
pub fn scale_style(variant: Variant, k: u32, base: Mark) -> Mark {
    if variant.styled() {
        Tile::secondary_mark_for(scale_colour(variant, k, base))
    } else {
        Mark::Grey
    }
}

/// The tile at zero-based cell (i, j) of the macro-tile.
pub fn tile_at(variant: Variant, spec: &MacroSpec, i: u64, j: u64) -> Tile {
    let (r, c) = (i + 1, j + 1);
    let a = v2(r);
    let b = v2(c);
    let base = spec.base_colour;
    if a == b {
        let k = a + 1;
        let d = cross_orientation(i, j, spec.n, spec.orientation);
        let colour = scale_colour(variant, k, base);
        return if k == 1 { Tile::bumpy(d, colour) } else { Tile::cross(d, colour) };
    }

    let (k, s, mid_horizontal) = mid_pass_scales(r, c);
    let mid_axis = if mid_horizontal { Axis::H } else { Axis::V };
    // The pass runs along the other axis; find its covering cross.
    let (delta, larger) = if mid_horizontal {
        nearest_cross_on_line(r, s)
    } else {
        nearest_cross_on_line(c, s)
    };
    let head = match (mid_horizontal, larger) {
        (true, true) => Dir::S,
        (true, false) => Dir::N,
        (false, true) => Dir::E,
        (false, false) => Dir::W,
    };
    let (xi, xj) = {
        let (sr, sc) = head.step();
        (
            (i as i64 + sr * delta as i64) as u64,
            (j as i64 + sc * delta as i64) as u64,
        )
    };
    debug_assert!(xi < macro_side(spec.n) && xj < macro_side(spec.n));
    let d_x = cross_orientation(xi, xj, spec.n, spec.orientation);
    // The covering half-arm leaves its cross pointing at this cell.
    let arm_dir = head.opposite();
    let principal_pass = d_x.has(arm_dir);

    let edge_mid = s == k + 1;
    let mid_mark = if edge_mid {
        scale_colour(variant, k, base)
    } else {
        scale_style(variant, k, base)
    };
    let pass_mark = if principal_pass {
        scale_colour(variant, s, base)
    } else {
        scale_style(variant, s, base)
    };
    let role = if edge_mid { Role::CrossedEdgeMid } else { Role::CrossedFillMid };

    // Chirality notch: only the styled filler crossings of the
    // four-colour set carry one. It records on which side of the passing
    // strand's travel direction the perpendicular component of its
    // cross's orientation lies.
    let sigma = if variant == Variant::FourColour && role == Role::CrossedFillMid && !principal_pass
    {
        let lateral = match head.axis() {
            Axis::V => d_x.horizontal(),
            Axis::H => d_x.vertical(),
        };
        Some(head.left() == lateral)
    } else {
        None
    };

    Tile::crossing(role, mid_axis, head, sigma, mid_mark, pass_mark)
}

/// Paint a full macro-tile as a free-boundary configuration over the
/// tileset's symbols.
pub fn build_macro_tile(ts: &Tileset, spec: &MacroSpec) -> Config {
    assert!(spec.n >= 1);
    let side = macro_side(spec.n) as usize;
    let cells = crate::par::map_indices(side * side, |idx| {
        let i = (idx / side) as u64;
        let j = (idx % side) as u64;
        ts.sym(&tile_at(ts.variant, spec, i, j))
    });
    Config::from_rows(Boundary::Free, side, side, cells).expect("painter geometry")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::constants::designated_cells;
    use crate::tiles::tileset::build_tileset;

    #[test]
    fn scale_one_is_a_single_bumpy_corner() {
        let ts = build_tileset(Variant::Plain);
        let cfg = build_macro_tile(&ts, &MacroSpec::new(1, Diag::SW));
        assert_eq!((cfg.rows(), cfg.cols()), (1, 1));
        assert_eq!(ts.tile(cfg.at(0, 0)), &Tile::bumpy(Diag::SW, Mark::Plain));
    }

    #[test]
    fn a_3_macro_census_by_role() {
        let ts = build_tileset(Variant::Plain);
        let cfg = build_macro_tile(&ts, &MacroSpec::new(3, Diag::NE));
        let mut bumpy = 0;
        let mut cross = 0;
        let mut edge = 0;
        let mut fill = 0;
        for r in 0..7 {
            for c in 0..7 {
                match ts.tile(cfg.at(r, c)).role {
                    Role::Bumpy => bumpy += 1,
                    Role::Cross => cross += 1,
                    Role::CrossedEdgeMid => edge += 1,
                    Role::CrossedFillMid => fill += 1,
                    other => panic!("unexpected role {other:?}"),
                }
            }
        }
        // 16 bumpy corners, 4 scale-2 crosses, 1 central cross, 20
        // square-edge midpoints, 8 filler midpoints.
        assert_eq!(bumpy, 16);
        assert_eq!(cross, 5);
        assert_eq!(edge, 20);
        assert_eq!(fill, 8);
    }

    #[test]
    fn paintings_satisfy_the_matching_rules() {
        for variant in [Variant::Plain, Variant::RedBlack, Variant::FourColour] {
            let ts = build_tileset(variant);
            for n in 1..=4 {
                for d in Diag::ALL {
                    let cfg = build_macro_tile(&ts, &MacroSpec::new(n, d));
                    assert_eq!(ts.check_edges(&cfg), None, "{variant:?} n={n} {d:?}");
                }
            }
        }
    }

    #[test]
    fn pass_strands_head_at_their_covering_cross() {
        // One-based (2, 4) of a NE 3-macro: square-edge midpoint whose
        // pass belongs to the central cross below it.
        let t = tile_at(Variant::Plain, &MacroSpec::new(3, Diag::NE), 1, 3);
        assert_eq!(t.role, Role::CrossedEdgeMid);
        assert_eq!(t.inside, Some(Dir::S));
        // (4, 1): filler midpoint under the central cross's west arm,
        // heading east. West is not a NE component, so the pass is
        // secondary.
        let t = tile_at(Variant::RedBlack, &MacroSpec::new(3, Diag::NE), 3, 0);
        assert_eq!(t.role, Role::CrossedFillMid);
        assert_eq!(t.inside, Some(Dir::E));
        assert_eq!(t.pass_mark, Some(Mark::Grey));
    }

    #[test]
    fn designated_cells_are_bicoloured() {
        let spec = MacroSpec::new(3, Diag::NE);
        for (i, j) in designated_cells(0, 0, 3, spec.orientation) {
            let t = tile_at(Variant::RedBlack, &spec, i, j);
            assert_eq!(t.role, Role::CrossedEdgeMid);
            // Scale-2 midpoint (red under a black base) passed by the
            // scale-3 principal arm (black).
            assert_eq!(t.mid_mark, Some(Mark::Red));
            assert_eq!(t.pass_mark, Some(Mark::Black));
        }
    }

    #[test]
    fn mid_class_matches_the_facing_half_arms() {
        // Valuations call a midpoint square-edge exactly when the scales
        // differ by one; the orientation descent must agree through the
        // classes of the two facing half-arms.
        let spec = MacroSpec::new(4, Diag::SE);
        let side = macro_side(4);
        for i in 0..side {
            for j in 0..side {
                let (r, c) = (i + 1, j + 1);
                if v2(r) == v2(c) {
                    continue;
                }
                let (k, s, horizontal) = mid_pass_scales(r, c);
                let gap = 1u64 << (k - 1);
                let ((ai, aj), (bi, bj), toward_a, toward_b) = if horizontal {
                    ((i, j - gap), (i, j + gap), Dir::E, Dir::W)
                } else {
                    ((i - gap, j), (i + gap, j), Dir::S, Dir::N)
                };
                let da = cross_orientation(ai, aj, 4, spec.orientation);
                let db = cross_orientation(bi, bj, 4, spec.orientation);
                assert_eq!(
                    da.has(toward_a),
                    db.has(toward_b),
                    "half-arm classes disagree at ({r},{c})"
                );
                assert_eq!(da.has(toward_a), s == k + 1, "valuation class diverges at ({r},{c})");
            }
        }
    }
}
