//! Where a simulation lives inside one red square.
//!
//! A red square of structural scale 2m hosts a bounded machine run. The
//! columns of the square that stay clear of every smaller red square act
//! as tape tracks, the clear rows act as time rows, and the border ring
//! carries the anchor marker and the notice flows. This module computes
//! that geometry from the square alone; it knows nothing about tile
//! contents.
//!
//! Conventions, frozen here and relied on by the builder and the rules:
//! time runs bottom to top; track 0 is the clear column adjacent to the
//! left border and the head starts there, anchored by a marker on the
//! border cell below it; the top two clear rows are reserved for notices
//! climbing out of the diagram, so a run fits the square exactly when its
//! halting step leaves those two rows and the border row free, at
//! t <= 2^m - 2; a notice entering the border ring flows both ways around
//! it and dies at the fixed cut cell in the middle of the bottom edge.

use super::super::tiles::census::Square;

/// Clear rows above the diagram reserved for the notice climb: two notice
/// rows plus the border row. `step_capacity` is `horizon` minus this.
pub const NOTICE_MARGIN: u64 = 3;

/// Offsets from the square's left border (0 ..= 4^m inclusive) of the
/// columns avoiding every red square of smaller scale. There are 2^m + 3:
/// both border columns and 2^m + 1 interior tracks. By symmetry the same
/// offsets give the clear rows.
pub fn free_offsets(m: u32) -> Vec<u64> {
    // Checked on the canonical instance with one-based left border at
    // 2^{2m-1}; every other instance is a translate by multiples of the
    // smaller squares' pitches, so the offsets are shared.
    let left = 1u64 << (2 * m - 1);
    let side = (1u64 << (2 * m)) + 1;
    (0..side)
        .filter(|&o| {
            (1..m).all(|j| {
                let half = 1u64 << (2 * j - 1);
                let r = (left + o) % (1u64 << (2 * j + 1));
                !(half..=3 * half).contains(&r)
            })
        })
        .collect()
}

/// Flow state of one border-ring cell while a notice is out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingFlow {
    /// The fixed quiet cell breaking the ring cycle.
    Cut,
    /// The cell where the notice enters the ring.
    Src,
    /// Flow travelling clockwise away from the source.
    Cw,
    /// Flow travelling counter-clockwise away from the source.
    Ccw,
}

/// The simulation grid of one red square (structural scale 2m).
#[derive(Clone, Debug)]
pub struct SimGrid {
    /// Simulation scale m.
    pub scale: u32,
    pub top: u64,
    pub left: u64,
    pub side: u64,
    offs: Vec<u64>,
}

impl SimGrid {
    /// Red squares have even structural scale; anything else is not a
    /// simulation site.
    pub fn from_square(sq: &Square) -> Option<SimGrid> {
        if sq.scale < 2 || sq.scale % 2 != 0 {
            return None;
        }
        let m = sq.scale / 2;
        debug_assert_eq!(sq.side, (1 << (2 * m)) + 1);
        Some(SimGrid { scale: m, top: sq.top, left: sq.left, side: sq.side, offs: free_offsets(m) })
    }

    pub fn bottom(&self) -> u64 {
        self.top + self.side - 1
    }

    pub fn right(&self) -> u64 {
        self.left + self.side - 1
    }

    /// Number of tape cells: 2^m + 1, one per interior track.
    pub fn cells(&self) -> u64 {
        (1 << self.scale) + 1
    }

    fn interior(&self) -> &[u64] {
        &self.offs[1..self.offs.len() - 1]
    }

    /// Absolute column of tape cell p, leftmost first.
    pub fn track(&self, p: u64) -> u64 {
        self.left + self.interior()[p as usize]
    }

    pub fn tracks(&self) -> Vec<u64> {
        self.interior().iter().map(|o| self.left + o).collect()
    }

    /// Clear interior rows hold 2^m - 1 time rows under 2 notice rows.
    pub fn step_capacity(&self) -> u64 {
        self.horizon() - NOTICE_MARGIN
    }

    /// Clear interior row count, 2^m + 1: the span a run may use in rows,
    /// notice climb included.
    pub fn horizon(&self) -> u64 {
        (1 << self.scale) + 1
    }

    /// Absolute row of time t; t = 0 is the bottom clear row and time
    /// climbs, so t ranges over 0 ..= step_capacity().
    pub fn time_row(&self, t: u64) -> u64 {
        let interior = self.interior();
        self.top + interior[interior.len() - 1 - t as usize]
    }

    pub fn time_rows(&self) -> Vec<u64> {
        (0..=self.step_capacity()).map(|t| self.time_row(t)).collect()
    }

    /// The two clear rows above the top time row, in climb order (lower
    /// row first).
    pub fn notice_rows(&self) -> [u64; 2] {
        [self.top + self.interior()[1], self.top + self.interior()[0]]
    }

    /// Border cell anchoring the run: on the bottom edge, under track 0.
    pub fn start_cell(&self) -> (u64, u64) {
        (self.bottom(), self.track(0))
    }

    /// The ring's quiet cell: the middle of the bottom edge.
    pub fn cut_cell(&self) -> (u64, u64) {
        (self.bottom(), self.left + (self.side - 1) / 2)
    }

    /// Top-border cell over track p, where a notice climbing that track
    /// enters the ring.
    pub fn top_cell(&self, p: u64) -> (u64, u64) {
        (self.top, self.track(p))
    }

    /// Border cells in clockwise order starting at the cut cell.
    pub fn perimeter_cw(&self) -> Vec<(u64, u64)> {
        let (top, left) = (self.top, self.left);
        let (bottom, right) = (self.bottom(), self.right());
        let centre = left + (self.side - 1) / 2;
        let mut walk = Vec::with_capacity(4 * (self.side - 1) as usize);
        walk.push((bottom, centre));
        walk.extend((left..centre).rev().map(|c| (bottom, c)));
        walk.extend((top..bottom).rev().map(|r| (r, left)));
        walk.extend((left + 1..=right).map(|c| (top, c)));
        walk.extend((top + 1..=bottom).map(|r| (r, right)));
        walk.extend((centre + 1..right).rev().map(|c| (bottom, c)));
        walk
    }

    /// Flow of every border cell while a notice entered at `src` is out:
    /// both arcs from the source run to the cut cell and stop there.
    pub fn ring_flow(&self, src: (u64, u64)) -> Vec<((u64, u64), RingFlow)> {
        let walk = self.perimeter_cw();
        let i = walk.iter().position(|&cell| cell == src).expect("source on the ring");
        assert!(i > 0, "the cut cell cannot source a notice");
        walk.into_iter()
            .enumerate()
            .map(|(j, cell)| {
                let flow = if j == 0 {
                    RingFlow::Cut
                } else if j == i {
                    RingFlow::Src
                } else if j < i {
                    RingFlow::Ccw
                } else {
                    RingFlow::Cw
                };
                (cell, flow)
            })
            .collect()
    }
}

/// Simulation grids of every red square in a census, smallest first.
pub fn sim_grids(squares: &[Square]) -> Vec<SimGrid> {
    squares.iter().filter_map(SimGrid::from_square).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiles::census::squares;
    use crate::tiles::macrotile::MacroSpec;
    use crate::tiles::model::Diag;
    use crate::tiles::variants::Variant;

    #[test]
    fn offset_goldens() {
        assert_eq!(free_offsets(1), vec![0, 1, 2, 3, 4]);
        assert_eq!(free_offsets(2), vec![0, 1, 7, 8, 9, 15, 16]);
        assert_eq!(free_offsets(3), vec![0, 1, 7, 25, 31, 32, 33, 39, 57, 63, 64]);
        assert_eq!(
            free_offsets(4),
            vec![
                0, 1, 7, 25, 31, 97, 103, 121, 127, 128, 129, 135, 153, 159, 225, 231, 249, 255,
                256
            ]
        );
    }

    #[test]
    fn offsets_are_symmetric_and_counted() {
        for m in 1..=6u32 {
            let offs = free_offsets(m);
            assert_eq!(offs.len() as u64, (1 << m) + 3);
            let side = (1u64 << (2 * m)) + 1;
            let mirrored: Vec<u64> = offs.iter().rev().map(|o| side - 1 - o).collect();
            assert_eq!(offs, mirrored);
            assert_eq!(offs[0], 0);
            assert_eq!(offs[1], 1, "track 0 hugs the left border");
            assert_eq!(*offs.last().unwrap(), side - 1);
            assert!(offs.contains(&((side - 1) / 2)), "centre column is clear");
        }
    }

    /// Independent oracle: a column is clear iff no smaller red square of
    /// the painted census intersects it. Checked for every red square of
    /// a scale-7 macro-tile, so translation invariance is exercised too.
    #[test]
    fn offsets_match_the_census() {
        let spec = MacroSpec::new(7, Diag::NE);
        let all = squares(Variant::FourColour, &spec);
        let reds: Vec<&Square> = all.iter().filter(|s| s.scale % 2 == 0).collect();
        assert!(!reds.is_empty());
        for sq in &reds {
            let clear: Vec<u64> = (sq.left..=sq.right())
                .filter(|&c| {
                    !reds
                        .iter()
                        .any(|s| s.scale < sq.scale && s.left <= c && c <= s.right())
                })
                .map(|c| c - sq.left)
                .collect();
            assert_eq!(clear, free_offsets(sq.scale / 2), "square {sq:?}");
        }
    }

    fn grid(m: u32) -> SimGrid {
        // the centred square of the enclosing odd-scale macro
        let centre = (1u64 << 2 * m) - 1;
        let half = 1u64 << (2 * m - 1);
        SimGrid::from_square(&Square {
            scale: 2 * m,
            colour: crate::tiles::model::Mark::Red,
            top: centre - half,
            left: centre - half,
            side: (1 << 2 * m) + 1,
        })
        .unwrap()
    }

    #[test]
    fn grid_rows_and_tracks() {
        for m in 1..=4u32 {
            let g = grid(m);
            assert_eq!(g.cells(), (1 << m) + 1);
            assert_eq!(g.tracks().len() as u64, g.cells());
            assert_eq!(g.horizon(), (1 << m) + 1);
            assert_eq!(g.step_capacity(), (1 << m) - 2);
            assert_eq!(g.track(0), g.left + 1);
            assert_eq!(g.track(g.cells() - 1), g.right() - 1);

            let rows = g.time_rows();
            assert_eq!(rows.len() as u64, g.step_capacity() + 1);
            assert!(rows.windows(2).all(|w| w[0] > w[1]), "time climbs");
            let [lower, upper] = g.notice_rows();
            assert!(upper < lower && lower < *rows.last().unwrap());
            assert_eq!(upper, g.top + 1);
            // time rows, notice rows and the two border rows exhaust the
            // clear rows of the square
            let mut all: Vec<u64> = rows.iter().copied().chain([lower, upper]).collect();
            all.sort_unstable();
            let expect: Vec<u64> = free_offsets(m)[1..(g.horizon() + 1) as usize]
                .iter()
                .map(|o| g.top + o)
                .collect();
            assert_eq!(all, expect);
        }
    }

    #[test]
    fn ring_geometry() {
        for m in 1..=3u32 {
            let g = grid(m);
            let walk = g.perimeter_cw();
            assert_eq!(walk.len() as u64, 4 * (g.side - 1));
            assert_eq!(walk[0], g.cut_cell());
            let unique: std::collections::HashSet<_> = walk.iter().collect();
            assert_eq!(unique.len(), walk.len());
            // consecutive ring cells touch
            for w in walk.windows(2) {
                let dr = w[0].0.abs_diff(w[1].0);
                let dc = w[0].1.abs_diff(w[1].1);
                assert_eq!(dr + dc, 1);
            }
            assert!(walk.contains(&g.start_cell()));

            let src = g.top_cell(0);
            let flows = g.ring_flow(src);
            assert_eq!(flows[0], (g.cut_cell(), RingFlow::Cut));
            let srcs = flows.iter().filter(|(_, f)| *f == RingFlow::Src).count();
            assert_eq!(srcs, 1);
            // every non-cut cell carries flow, so any border cell that
            // wants a licence can see one
            assert!(flows
                .iter()
                .all(|&(cell, f)| f != RingFlow::Cut || cell == g.cut_cell()));
            // arcs are contiguous: Ccw strictly between cut and src, Cw after
            let i = flows.iter().position(|(_, f)| *f == RingFlow::Src).unwrap();
            for (j, (_, f)) in flows.iter().enumerate() {
                match f {
                    RingFlow::Cut => assert_eq!(j, 0),
                    RingFlow::Src => assert_eq!(j, i),
                    RingFlow::Ccw => assert!(0 < j && j < i),
                    RingFlow::Cw => assert!(j > i),
                }
            }
        }
    }

    #[test]
    fn grids_from_the_census() {
        let spec = MacroSpec::new(5, Diag::NE);
        let grids = sim_grids(&squares(Variant::FourColour, &spec));
        // scale-5 macro: sixteen scale-2 squares and one scale-4 square
        assert_eq!(grids.len(), 17);
        assert_eq!(grids.iter().filter(|g| g.scale == 1).count(), 16);
        assert_eq!(grids.iter().filter(|g| g.scale == 2).count(), 1);
        let big = grids.iter().find(|g| g.scale == 2).unwrap();
        assert_eq!((big.top, big.left, big.side), (7, 7, 17));
        assert_eq!(big.tracks(), vec![8 + 1, 8 + 7, 8 + 8, 8 + 9, 8 + 15]);
    }
}
