//! Matching rules, expressed as forbidden patterns.
//!
//! Three rule families:
//!
//! * horizontal dominoes: two tiles side by side whose facing edge
//!   signals differ (including one emitting a strand where the other
//!   emits none);
//! * vertical dominoes: the same across a horizontal edge;
//! * the corner rule: every 2x2 window holds exactly one bumpy corner,
//!   written as six two-bumpy patterns plus one bumpy-free pattern over
//!   symbol classes.
//!
//! The dominoes are generated from edge signals, so the explicit pattern
//! list and the direct signal comparison are two views of one rule set;
//! `check_edges` is the fast direct view and a test pins their agreement.

use std::collections::HashMap;

use crate::grid::{Alphabet, CellMatcher, Config, Pattern, Sym};

use super::model::{Dir, Tile};

/// Class names used by the corner rule.
pub const BUMPY_CLASS: &str = "bumpy";
pub const NON_BUMPY_CLASS: &str = "non-bumpy";

/// Build the alphabet for a tile list, with the bumpy classes attached.
pub fn alphabet_for(tiles: &[Tile]) -> Alphabet {
    let mut alphabet = Alphabet::plain(tiles.len() as u32);
    let bumpy: Vec<Sym> = tiles
        .iter()
        .enumerate()
        .filter(|(_, t)| t.role == super::model::Role::Bumpy)
        .map(|(i, _)| i as Sym)
        .collect();
    let non_bumpy: Vec<Sym> = (0..tiles.len() as Sym).filter(|s| !bumpy.contains(s)).collect();
    alphabet.add_class(BUMPY_CLASS, bumpy.iter().copied());
    alphabet.add_class(NON_BUMPY_CLASS, non_bumpy.iter().copied());
    alphabet
}

/// Forbidden patterns for a tile list: mismatch dominoes in both axes
/// plus the corner rule.
pub fn forbidden_patterns(tiles: &[Tile], styled: bool, alphabet: &Alphabet) -> Vec<Pattern> {
    let mut patterns = Vec::new();

    for (a, tile) in tiles.iter().enumerate() {
        let east = tile.edge_signal(Dir::E, styled);
        let south = tile.edge_signal(Dir::S, styled);
        for (b, other) in tiles.iter().enumerate() {
            if east != other.edge_signal(Dir::W, styled) {
                patterns.push(Pattern::exact(1, 2, &[a as Sym, b as Sym]));
            }
            if south != other.edge_signal(Dir::N, styled) {
                patterns.push(Pattern::exact(2, 1, &[a as Sym, b as Sym]));
            }
        }
    }

    let bumpy = alphabet.class_id(BUMPY_CLASS).expect("bumpy class");
    let non_bumpy = alphabet.class_id(NON_BUMPY_CLASS).expect("non-bumpy class");
    // Two bumpy corners anywhere in a 2x2 window.
    for first in 0..4usize {
        for second in first + 1..4 {
            let cells: Vec<CellMatcher> = (0..4)
                .map(|i| {
                    if i == first || i == second {
                        CellMatcher::Class(bumpy)
                    } else {
                        CellMatcher::Any
                    }
                })
                .collect();
            patterns.push(Pattern::from_matchers(2, 2, cells));
        }
    }
    // No bumpy corner at all.
    patterns.push(Pattern::from_matchers(2, 2, vec![CellMatcher::Class(non_bumpy); 4]));

    patterns
}

/// First matching-rule failure in a configuration, bypassing the pattern
/// list: adjacent edge signals are compared directly and every interior
/// 2x2 window is checked for exactly one bumpy corner. Returns the
/// zero-based anchor and a short description.
pub fn check_edges(
    cfg: &Config,
    tiles: &[Tile],
    styled: bool,
    bumpy_at: &dyn Fn(Sym) -> bool,
) -> Option<((usize, usize), String)> {
    let rows = cfg.rows();
    let cols = cfg.cols();
    let tile_of = |r: usize, c: usize| &tiles[cfg.at(r, c) as usize];
    for r in 0..rows {
        for c in 0..cols {
            let t = tile_of(r, c);
            if c + 1 < cols
                && t.edge_signal(Dir::E, styled) != tile_of(r, c + 1).edge_signal(Dir::W, styled)
            {
                return Some(((r, c), "horizontal edge mismatch".into()));
            }
            if r + 1 < rows
                && t.edge_signal(Dir::S, styled) != tile_of(r + 1, c).edge_signal(Dir::N, styled)
            {
                return Some(((r, c), "vertical edge mismatch".into()));
            }
            if r + 1 < rows && c + 1 < cols {
                let count = [(r, c), (r, c + 1), (r + 1, c), (r + 1, c + 1)]
                    .iter()
                    .filter(|&&(i, j)| bumpy_at(cfg.at(i, j)))
                    .count();
                if count != 1 {
                    return Some(((r, c), format!("window holds {count} bumpy corners")));
                }
            }
        }
    }
    None
}

/// Index from tile record to symbol id.
pub fn tile_index(tiles: &[Tile]) -> HashMap<Tile, Sym> {
    tiles.iter().enumerate().map(|(i, t)| (t.clone(), i as Sym)).collect()
}

/// Sorted, deduplicated tile list; the canonical symbol order.
pub fn canonical_order(mut tiles: Vec<Tile>) -> Vec<Tile> {
    tiles.sort();
    tiles.dedup();
    tiles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::ForbiddenSet;
    use crate::tiles::model::{Axis, Diag, Mark, Role};
    use crate::tiles::variants::{enumerate_tiles, Variant};

    #[test]
    fn mismatch_dominoes_catch_a_broken_strand() {
        let tiles = canonical_order(enumerate_tiles(Variant::Plain));
        let alphabet = alphabet_for(&tiles);
        let patterns = forbidden_patterns(&tiles, false, &alphabet);
        let fs = ForbiddenSet::new(alphabet, patterns);
        let index = tile_index(&tiles);

        // A west-heading arm followed by an east-heading arm breaks the
        // arrowhead flow and must be forbidden.
        let w = index[&Tile::edge_arm(Axis::H, crate::tiles::model::Dir::W, Mark::Plain)];
        let e = index[&Tile::edge_arm(Axis::H, crate::tiles::model::Dir::E, Mark::Plain)];
        let cfg = Config::from_rows(crate::grid::Boundary::Free, 1, 2, vec![w, e]).unwrap();
        assert!(!fs.is_admissible(&cfg));
        // The same arm repeated keeps the flow and the window is too
        // small for the corner rule; admissible.
        let cfg = Config::from_rows(crate::grid::Boundary::Free, 1, 2, vec![w, w]).unwrap();
        assert!(fs.is_admissible(&cfg));
    }

    #[test]
    fn corner_rule_rejects_doubled_and_missing_bumpies() {
        let tiles = canonical_order(enumerate_tiles(Variant::Plain));
        let alphabet = alphabet_for(&tiles);
        let patterns = forbidden_patterns(&tiles, false, &alphabet);
        let fs = ForbiddenSet::new(alphabet, patterns);
        let index = tile_index(&tiles);
        let b = index[&Tile::bumpy(Diag::NE, Mark::Plain)];

        let cfg = Config::filled(crate::grid::Boundary::Free, 2, 2, b);
        let violations = fs.violations(&cfg);
        assert!(violations.iter().any(|v| {
            fs.patterns()[v.pattern].cell(0, 0) != CellMatcher::Any
                && fs.patterns()[v.pattern].rows() == 2
        }));

        let c = index[&Tile::cross(Diag::NE, Mark::Plain)];
        let cfg = Config::filled(crate::grid::Boundary::Free, 2, 2, c);
        assert!(!fs.is_admissible(&cfg));
    }

    #[test]
    fn pattern_scan_and_direct_check_agree_on_random_fills() {
        use rand::{Rng, SeedableRng};
        let tiles = canonical_order(enumerate_tiles(Variant::RedBlack));
        let alphabet = alphabet_for(&tiles);
        let styled = Variant::RedBlack.styled();
        let patterns = forbidden_patterns(&tiles, styled, &alphabet);
        let fs = ForbiddenSet::new(alphabet, patterns);
        let bumpy: Vec<bool> = tiles.iter().map(|t| t.role == Role::Bumpy).collect();

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let cells: Vec<Sym> =
                (0..9).map(|_| rng.gen_range(0..tiles.len() as Sym)).collect();
            let cfg = Config::from_rows(crate::grid::Boundary::Free, 3, 3, cells).unwrap();
            let by_patterns = fs.is_admissible(&cfg);
            let by_edges =
                check_edges(&cfg, &tiles, styled, &|s| bumpy[s as usize]).is_none();
            assert_eq!(by_patterns, by_edges);
        }
    }
}
