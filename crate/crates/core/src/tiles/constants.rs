//! Coordinate arithmetic for the hierarchical tilings.
//!
//! Everything here is derived from one convention: inside a scale-n
//! macro-tile, cells are numbered 1..2^n-1 in each axis, and the 2-adic
//! valuation of a coordinate tells which scale's strand runs along that
//! line. A cell whose row and column valuations are both k-1 is a scale-k
//! cross; every other cell is the midpoint of the strand along the axis
//! with the smaller valuation, crossed by the strand of the larger one.

use super::model::{Diag, Dir};

/// Largest power of two dividing `x`. `x` must be positive.
pub fn v2(x: u64) -> u32 {
    assert!(x > 0, "valuation of zero");
    x.trailing_zeros()
}

/// Side length of a scale-n macro-tile.
pub fn macro_side(n: u32) -> u64 {
    (1u64 << n) - 1
}

/// Zero-based centre coordinate of a scale-n macro-tile (n >= 1).
pub fn macro_centre(n: u32) -> u64 {
    (1u64 << (n - 1)) - 1
}

/// Side length of the scale-k central square of a (k+1)-macro-tile.
pub fn square_side(k: u32) -> u64 {
    (1u64 << k) + 1
}

/// Side of the largest red square inside a scale-n macro-tile, or `None`
/// below scale 3. Red squares occur at even scales; the largest even
/// scale in play is the largest even k <= n-1.
pub fn largest_red_square_side(n: u32) -> Option<u64> {
    if n < 3 {
        return None;
    }
    let k = if (n - 1).is_multiple_of(2) { n - 1 } else { n - 2 };
    Some(square_side(k))
}

/// Orientation of the sub-macro occupying quadrant (`south`, `east`) of a
/// larger macro-tile: it points at the parent centre.
pub fn quadrant_orientation(south: bool, east: bool) -> Diag {
    match (south, east) {
        (false, false) => Diag::SE,
        (false, true) => Diag::SW,
        (true, false) => Diag::NE,
        (true, true) => Diag::NW,
    }
}

/// Orientation of the cross at zero-based cell (i, j) of a scale-n
/// macro-tile whose central cross points along `top`. Panics if the cell
/// is not a cross cell. Crosses away from the centre point at the centre
/// of their parent, so only the central cross depends on `top`.
pub fn cross_orientation(mut i: u64, mut j: u64, mut n: u32, top: Diag) -> Diag {
    let mut d = top;
    loop {
        assert!(n >= 1, "not a cross cell");
        let m = macro_centre(n);
        if n == 1 || (i == m && j == m) {
            debug_assert_eq!(v2(i + 1), v2(j + 1), "not a cross cell");
            return d;
        }
        assert!(i != m && j != m, "band cells are not crosses");
        let south = i > m;
        let east = j > m;
        d = quadrant_orientation(south, east);
        let half = 1u64 << (n - 1);
        if south {
            i -= half;
        }
        if east {
            j -= half;
        }
        n -= 1;
    }
}

/// The two designated cells of a scale-n macro-tile (n >= 2) anchored at
/// zero-based (ar, ac) with orientation `d`: the bi-coloured square-edge
/// midpoints one quarter-side from the centre along the two components
/// of `d`. Returned in (vertical component, horizontal component) order.
pub fn designated_cells(ar: u64, ac: u64, n: u32, d: Diag) -> [(u64, u64); 2] {
    assert!(n >= 2);
    let m = macro_centre(n);
    let off = 1u64 << (n - 2);
    let (cr, cc) = (ar + m, ac + m);
    let vert = match d.vertical() {
        Dir::N => (cr - off, cc),
        _ => (cr + off, cc),
    };
    let horiz = match d.horizontal() {
        Dir::E => (cr, cc + off),
        _ => (cr, cc - off),
    };
    [vert, horiz]
}

/// Cells excluded from a colour flip of a scale-n macro-tile: the arm
/// cells strictly between a designated cell and the macro border, along
/// each of the two orientation components. Empty for n = 2.
pub fn flip_excluded_cells(ar: u64, ac: u64, n: u32, d: Diag) -> Vec<(u64, u64)> {
    assert!(n >= 2);
    let m = macro_centre(n);
    let (cr, cc) = (ar + m, ac + m);
    let mut out = Vec::new();
    for dir in [d.vertical(), d.horizontal()] {
        let (sr, sc) = dir.step();
        for delta in (1u64 << (n - 2)) + 1..1u64 << (n - 1) {
            let r = cr as i64 + sr * delta as i64;
            let c = cc as i64 + sc * delta as i64;
            out.push((r as u64, c as u64));
        }
    }
    out
}

/// For a non-cross cell with one-based coordinates (r, c), the scale of
/// its mid strand, the scale of the passing strand, and whether the mid
/// strand is horizontal. Panics on cross cells.
pub fn mid_pass_scales(r: u64, c: u64) -> (u32, u32, bool) {
    let a = v2(r);
    let b = v2(c);
    assert_ne!(a, b, "cross cell");
    // Smaller valuation axis hosts the mid strand.
    if a < b {
        (a + 1, b + 1, true)
    } else {
        (b + 1, a + 1, false)
    }
}

/// Distance and direction from one-based coordinate `x` (on a line of
/// crosses with spacing 2^(s-1+1), i.e. pass scale s) to the nearest
/// scale-s cross coordinate. Cross coordinates are those with valuation
/// exactly s-1.
pub fn nearest_cross_on_line(x: u64, s: u32) -> (u64, bool) {
    let period = 1u64 << s;
    let half = 1u64 << (s - 1);
    let q = x % period;
    debug_assert!(q != 0 && q != half, "cell lies on a cross coordinate");
    if q < half {
        (half - q, true) // nearest cross at larger coordinate
    } else {
        (q - half, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sides_and_centres() {
        assert_eq!(macro_side(1), 1);
        assert_eq!(macro_side(3), 7);
        assert_eq!(macro_side(5), 31);
        assert_eq!(macro_centre(3), 3);
        assert_eq!(square_side(2), 5);
        assert_eq!(square_side(4), 17);
    }

    #[test]
    fn largest_red_squares() {
        // Scale 2n+1 hosts a red square of side 4^n+1.
        assert_eq!(largest_red_square_side(3), Some(5));
        assert_eq!(largest_red_square_side(4), Some(5));
        assert_eq!(largest_red_square_side(5), Some(17));
        assert_eq!(largest_red_square_side(7), Some(65));
        assert_eq!(largest_red_square_side(2), None);
    }

    #[test]
    fn orientation_descent_in_a_3_macro() {
        // Quadrant centres point at the macro centre.
        assert_eq!(cross_orientation(1, 1, 3, Diag::NE), Diag::SE);
        assert_eq!(cross_orientation(1, 5, 3, Diag::NE), Diag::SW);
        assert_eq!(cross_orientation(5, 1, 3, Diag::NE), Diag::NE);
        assert_eq!(cross_orientation(5, 5, 3, Diag::NE), Diag::NW);
        assert_eq!(cross_orientation(3, 3, 3, Diag::SW), Diag::SW);
        // Bumpy corners of the north-west quadrant point at (2, 2).
        assert_eq!(cross_orientation(0, 0, 3, Diag::NE), Diag::SE);
        assert_eq!(cross_orientation(0, 2, 3, Diag::NE), Diag::SW);
        assert_eq!(cross_orientation(2, 0, 3, Diag::NE), Diag::NE);
        assert_eq!(cross_orientation(2, 2, 3, Diag::NE), Diag::NW);
    }

    #[test]
    fn designated_cells_of_a_3_macro() {
        let cells = designated_cells(0, 0, 3, Diag::NE);
        assert_eq!(cells, [(1, 3), (3, 5)]);
        let cells = designated_cells(0, 0, 2, Diag::SE);
        assert_eq!(cells, [(2, 1), (1, 2)]);
    }

    #[test]
    fn flip_exclusions() {
        assert!(flip_excluded_cells(0, 0, 2, Diag::NE).is_empty());
        let ex = flip_excluded_cells(0, 0, 3, Diag::NE);
        assert_eq!(ex, vec![(0, 3), (3, 6)]);
    }

    #[test]
    fn mid_and_pass_scales() {
        // One-based (2, 4): horizontal mid of scale 2, pass of scale 3.
        assert_eq!(mid_pass_scales(2, 4), (2, 3, true));
        // (5, 4): horizontal mid of scale 1 under a scale-3 pass.
        assert_eq!(mid_pass_scales(5, 4), (1, 3, true));
        // (4, 1): vertical mid of scale 1 under a scale-3 pass.
        assert_eq!(mid_pass_scales(4, 1), (1, 3, false));
    }

    #[test]
    fn nearest_cross_lookup() {
        // Scale-3 crosses sit at coordinates 4, 12, 20, ...
        assert_eq!(nearest_cross_on_line(2, 3), (2, true));
        assert_eq!(nearest_cross_on_line(6, 3), (2, false));
        assert_eq!(nearest_cross_on_line(10, 3), (2, true));
        assert_eq!(nearest_cross_on_line(3, 2), (1, false));
    }
}
