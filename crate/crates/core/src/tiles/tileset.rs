//! Tileset assembly: tiles in canonical order, their alphabet, and the
//! forbidden set derived from edge signals.

use std::collections::HashMap;

use crate::grid::{Alphabet, Config, ForbiddenSet, GridError, Sym};

use super::model::{Role, Tile};
use super::rules;
use super::variants::{enumerate_tiles, Variant};

/// A complete tileset: symbols are indices into `tiles`, which is sorted
/// canonically so ids are stable across runs.
pub struct Tileset {
    pub variant: Variant,
    pub tiles: Vec<Tile>,
    pub forbidden: ForbiddenSet,
    index: HashMap<Tile, Sym>,
}

impl Tileset {
    pub fn alphabet(&self) -> &Alphabet {
        self.forbidden.alphabet()
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn tile(&self, s: Sym) -> &Tile {
        &self.tiles[s as usize]
    }

    /// Symbol of a tile record. Panics if the tile is not in the set;
    /// use `lookup` for a fallible version.
    pub fn sym(&self, t: &Tile) -> Sym {
        match self.index.get(t) {
            Some(&s) => s,
            None => panic!("tile not in {} tileset: {}", self.variant.tag(), t.to_text()),
        }
    }

    pub fn lookup(&self, t: &Tile) -> Option<Sym> {
        self.index.get(t).copied()
    }

    pub fn is_bumpy(&self, s: Sym) -> bool {
        self.tiles[s as usize].role == Role::Bumpy
    }

    /// Direct matching-rule check; equivalent to scanning the forbidden
    /// set but linear in the configuration size.
    pub fn check_edges(&self, cfg: &Config) -> Option<((usize, usize), String)> {
        rules::check_edges(cfg, &self.tiles, self.variant.styled(), &|s| self.is_bumpy(s))
    }

    /// Serialise as structured text: a header, the variant tag, and one
    /// line per tile in symbol order. The forbidden set is a function of
    /// the tile list and is rebuilt on load.
    pub fn to_text(&self) -> String {
        let mut out = String::from("tileset v1\n");
        out.push_str(&format!("variant {}\n", self.variant.tag()));
        out.push_str(&format!("tiles {}\n", self.tiles.len()));
        for t in &self.tiles {
            out.push_str(&t.to_text());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Tileset, GridError> {
        let mut lines = text.lines();
        let header = lines.next().unwrap_or_default();
        if header.trim() != "tileset v1" {
            return Err(GridError::BadHeader(format!("unexpected header: {header}")));
        }
        let variant_line = lines.next().unwrap_or_default();
        let tag = variant_line
            .strip_prefix("variant ")
            .ok_or_else(|| GridError::BadHeader("missing variant line".into()))?;
        let variant = Variant::from_tag(tag.trim())
            .ok_or_else(|| GridError::BadHeader(format!("unknown variant: {tag}")))?;
        let count_line = lines.next().unwrap_or_default();
        let count: usize = count_line
            .strip_prefix("tiles ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| GridError::BadHeader("missing tile count".into()))?;
        let mut tiles = Vec::with_capacity(count);
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let tile = Tile::from_text(line).ok_or(GridError::BadCell {
                row: i,
                msg: format!("unreadable tile: {line}"),
            })?;
            tiles.push(tile);
        }
        if tiles.len() != count {
            return Err(GridError::DimensionMismatch { expected: count, got: tiles.len() });
        }
        Ok(assemble(variant, tiles))
    }
}

fn assemble(variant: Variant, tiles: Vec<Tile>) -> Tileset {
    let alphabet = rules::alphabet_for(&tiles);
    let patterns = rules::forbidden_patterns(&tiles, variant.styled(), &alphabet);
    let forbidden = ForbiddenSet::new(alphabet, patterns);
    let index = rules::tile_index(&tiles);
    Tileset { variant, tiles, forbidden, index }
}

/// Build the tileset of a variant.
pub fn build_tileset(variant: Variant) -> Tileset {
    let tiles = rules::canonical_order(enumerate_tiles(variant));
    assemble(variant, tiles)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_are_pinned() {
        assert_eq!(build_tileset(Variant::Plain).len(), 32);
        assert_eq!(build_tileset(Variant::RedBlack).len(), 56);
        assert_eq!(build_tileset(Variant::FourColour).len(), 172);
    }

    #[test]
    fn text_roundtrip_preserves_symbol_order() {
        for v in [Variant::Plain, Variant::RedBlack, Variant::FourColour] {
            let ts = build_tileset(v);
            let text = ts.to_text();
            let back = Tileset::from_text(&text).unwrap();
            assert_eq!(back.variant, v);
            assert_eq!(back.tiles, ts.tiles);
            assert_eq!(back.to_text(), text);
        }
    }

    #[test]
    fn symbol_lookup_inverts_tile_table() {
        let ts = build_tileset(Variant::RedBlack);
        for (i, t) in ts.tiles.iter().enumerate() {
            assert_eq!(ts.sym(t), i as Sym);
        }
    }
}
