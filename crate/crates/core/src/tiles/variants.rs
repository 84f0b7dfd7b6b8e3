//! Tile enumeration for the three tileset variants.
//!
//! Counts are part of the contract:
//!
//! * plain: 32 tiles (4 bumpy + 4 cross + 4 principal arms + 4 filler
//!   arms + 8 square-edge crossings + 8 filler crossings).
//! * red-black: 11 base figures closing to 56 concrete tiles once
//!   orientations and the colour rules are expanded.
//! * four-colour: 172 tiles. Grey and transition crossings carry a
//!   chirality notch (two versions each), which is what distinguishes
//!   their mirror images; the coloured crossings are mirror-symmetric
//!   figures and need none.
//!
//! Colour legality is baked into the enumeration: a square-edge midpoint
//! of colour c is only ever passed by the partner colour of the next
//! scale (or by a secondary strand), and only a red midpoint admits the
//! regime-switching blue or green pass.

use super::model::{Axis, Dir, Diag, Mark, Role, Tile};

/// Tileset variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Undecorated strands.
    Plain,
    /// Two alternating square colours.
    RedBlack,
    /// Four colours, styled filler strands, and regime transitions.
    FourColour,
}

impl Variant {
    pub fn tag(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::RedBlack => "red-black",
            Variant::FourColour => "four-colour",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Variant> {
        match tag {
            "plain" => Some(Variant::Plain),
            "red-black" => Some(Variant::RedBlack),
            "four-colour" => Some(Variant::FourColour),
            _ => None,
        }
    }

    /// Whether secondary strands are styled rather than plain grey.
    pub fn styled(self) -> bool {
        matches!(self, Variant::FourColour)
    }

    /// Square colours in use.
    pub fn colours(self) -> &'static [Mark] {
        match self {
            Variant::Plain => &[Mark::Plain],
            Variant::RedBlack => &[Mark::Black, Mark::Red],
            Variant::FourColour => &[Mark::Black, Mark::Red, Mark::Blue, Mark::Green],
        }
    }

    /// Marks a filler strand can carry.
    pub fn filler_marks(self) -> &'static [Mark] {
        match self {
            Variant::FourColour => &[Mark::Dot, Mark::Dash],
            _ => &[Mark::Grey],
        }
    }
}

/// All (mid-axis, pass-direction) poses of a crossing tile.
fn crossing_poses() -> [(Axis, Dir); 4] {
    [(Axis::H, Dir::N), (Axis::H, Dir::S), (Axis::V, Dir::E), (Axis::V, Dir::W)]
}

/// Pass mark of a secondary strand crossing a midpoint of colour `mid`,
/// i.e. the filler style one scale above the mid colour's scale.
fn secondary_pass_for(variant: Variant, mid: Mark) -> Mark {
    if variant.styled() {
        Tile::secondary_mark_for(mid.succ_colour())
    } else {
        Mark::Grey
    }
}

/// Enumerate the full tile list of a variant, unsorted.
pub fn enumerate_tiles(variant: Variant) -> Vec<Tile> {
    let mut tiles = Vec::new();
    let colours = variant.colours();
    let bumpy_colours: &[Mark] = match variant {
        // Bumpy corners of the four-colour tileset are pinned black.
        Variant::FourColour => &[Mark::Black],
        _ => colours,
    };

    for &c in bumpy_colours {
        for d in Diag::ALL {
            tiles.push(Tile::bumpy(d, c));
        }
    }
    for &c in colours {
        for d in Diag::ALL {
            tiles.push(Tile::cross(d, c));
        }
    }
    for &c in colours {
        for axis in [Axis::H, Axis::V] {
            for head in axis.dirs() {
                tiles.push(Tile::edge_arm(axis, head, c));
            }
        }
    }
    for &s in variant.filler_marks() {
        for axis in [Axis::H, Axis::V] {
            for head in axis.dirs() {
                tiles.push(Tile::fill_arm(axis, head, s));
            }
        }
    }

    // Square-edge midpoints: passed either by the partner colour of the
    // next scale or by a secondary strand.
    for &mid in colours {
        for (axis, inside) in crossing_poses() {
            tiles.push(Tile::crossing(
                Role::CrossedEdgeMid,
                axis,
                inside,
                None,
                mid,
                if variant == Variant::Plain { Mark::Plain } else { mid.succ_colour() },
            ));
            tiles.push(Tile::crossing(
                Role::CrossedEdgeMid,
                axis,
                inside,
                None,
                mid,
                if variant == Variant::Plain { Mark::Grey } else { secondary_pass_for(variant, mid) },
            ));
        }
    }

    // Filler midpoints under a coloured pass. The unstable colours only
    // reach fillers through the transition tiles below.
    let filler_pass: &[Mark] = match variant {
        Variant::Plain => &[Mark::Plain],
        Variant::RedBlack => &[Mark::Black, Mark::Red],
        Variant::FourColour => &[Mark::Black, Mark::Red],
    };
    for &mid in variant.filler_marks() {
        for &pass in filler_pass {
            for (axis, inside) in crossing_poses() {
                tiles.push(Tile::crossing(Role::CrossedFillMid, axis, inside, None, mid, pass));
            }
        }
    }
    // Filler midpoints under a secondary pass.
    for &mid in variant.filler_marks() {
        for &pass in variant.filler_marks() {
            for (axis, inside) in crossing_poses() {
                if variant == Variant::FourColour {
                    for sigma in [false, true] {
                        tiles.push(Tile::crossing(
                            Role::CrossedFillMid,
                            axis,
                            inside,
                            Some(sigma),
                            mid,
                            pass,
                        ));
                    }
                } else {
                    tiles.push(Tile::crossing(Role::CrossedFillMid, axis, inside, None, mid, pass));
                }
            }
        }
    }

    if variant == Variant::FourColour {
        // Regime switch: a red square-edge midpoint passed by blue or
        // green, and filler midpoints under the unstable colours.
        for &pass in &[Mark::Blue, Mark::Green] {
            for (axis, inside) in crossing_poses() {
                for sigma in [false, true] {
                    tiles.push(Tile::crossing(
                        Role::TransitionEdgeMid,
                        axis,
                        inside,
                        Some(sigma),
                        Mark::Red,
                        pass,
                    ));
                }
            }
        }
        for &mid in variant.filler_marks() {
            for &pass in &[Mark::Blue, Mark::Green] {
                for (axis, inside) in crossing_poses() {
                    for sigma in [false, true] {
                        tiles.push(Tile::crossing(
                            Role::TransitionFillMid,
                            axis,
                            inside,
                            Some(sigma),
                            mid,
                            pass,
                        ));
                    }
                }
            }
        }
    }

    tiles
}

/// The coarse base figures of a variant, before orientation and colour
/// closure. The red-black list has the classic eleven entries.
pub fn base_figures(variant: Variant) -> Vec<String> {
    let mut out = Vec::new();
    match variant {
        Variant::Plain => {
            for name in ["bumpy", "cross", "edge-arm", "fill-arm", "crossed-edge-mid", "crossed-fill-mid"] {
                out.push(name.to_string());
            }
        }
        Variant::RedBlack => {
            for name in ["bumpy", "cross", "edge-arm", "crossed-edge-mid"] {
                out.push(format!("{name}-black"));
                out.push(format!("{name}-red"));
            }
            out.push("fill-arm".to_string());
            out.push("crossed-fill-mid-black-pass".to_string());
            out.push("crossed-fill-mid-red-pass".to_string());
        }
        Variant::FourColour => {
            out.push("bumpy-black".to_string());
            for name in ["cross", "edge-arm", "crossed-edge-mid"] {
                for c in ["black", "red", "blue", "green"] {
                    out.push(format!("{name}-{c}"));
                }
            }
            for s in ["dot", "dash"] {
                out.push(format!("fill-arm-{s}"));
            }
            out.push("crossed-fill-mid".to_string());
            out.push("transition-edge-mid".to_string());
            out.push("transition-fill-mid".to_string());
        }
    }
    out
}
