//! Read-only input ribbons.
//!
//! A machine input is threaded through the square hierarchy one letter per
//! scale: letter k rides on the border columns of the scale-2k squares, and
//! the squares of odd scale carry wall placeholders instead of letters.
//! Inside one simulation square the machine therefore sees its input as an
//! interleaving: the first letter on every second readable column, the
//! second letter on every fourth, and so on. This module computes that
//! interleaving and the exact per-scale ribbon, independently of any
//! tileset machinery.
//!
//! The ribbon at scale n reads w_{n-1} $ $ w_{n-1} u_n, where w_k is the
//! interleaving of the first k letters (|w_k| = 2^k - 1) and the two central
//! wall cells are the border columns of an innermost square and of the
//! square enclosing the whole simulation region. A decoder walking the
//! ribbon from the left sees u_1 .. u_{n-1} and then hits the wall; the
//! final u_n cell exists for the channel consistency rules, not for the
//! decoder.

use super::machine::{TapeSym, TuringMachine, BLANK};

/// One cell of the read-only ribbon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViewSym {
    /// A letter column: an input letter, or the blank past the end.
    Letter(TapeSym),
    /// Wall cell whose column's scale still carries a letter.
    WallLetter,
    /// Wall cell whose column's scale is past the end of the word.
    WallBlank,
}

impl ViewSym {
    /// Both wall flavours read as a wall to the decoder.
    pub fn is_wall(self) -> bool {
        matches!(self, ViewSym::WallLetter | ViewSym::WallBlank)
    }
}

/// u_k of the blank-padded word, k one-based.
fn padded_letter(u: &[TapeSym], k: usize) -> TapeSym {
    u.get(k - 1).copied().unwrap_or(BLANK)
}

/// Letter at 0-based position p of the infinite interleaving: position p
/// belongs to letter k+1 where 2^k is the lowest set bit of p+1.
pub fn toeplitz_letter(u: &[TapeSym], p: u64) -> TapeSym {
    padded_letter(u, (p + 1).trailing_zeros() as usize + 1)
}

/// w_n, the interleaving of the first n letters: w_0 is empty and
/// w_k = w_{k-1} u_k w_{k-1}, so |w_n| = 2^n - 1.
pub fn toeplitz_prefix(u: &[TapeSym], n: u32) -> Vec<TapeSym> {
    let mut w = Vec::with_capacity((1usize << n) - 1);
    for k in 1..=n as usize {
        let tail = w.clone();
        w.push(padded_letter(u, k));
        w.extend(tail);
    }
    w
}

/// The ribbon a machine sees inside a scale-n simulation square, n >= 1:
/// w_{n-1} $ $ w_{n-1} u_n, of length 2^n + 1. The first wall cell sits on
/// an innermost-scale border whose channel announces whether u_1 is a
/// letter; the second sits on the enclosing square's border and announces
/// whether the word continues past u_n.
pub fn readonly_tape_view(u: &[TapeSym], n: u32) -> Vec<ViewSym> {
    assert!(n >= 1, "the smallest simulation square is scale 1");
    let wall = |a: TapeSym| if a == BLANK { ViewSym::WallBlank } else { ViewSym::WallLetter };
    let w = toeplitz_prefix(u, n - 1);
    let mut v = Vec::with_capacity((1usize << n) + 1);
    v.extend(w.iter().map(|&a| ViewSym::Letter(a)));
    v.push(wall(padded_letter(u, 1)));
    v.push(wall(padded_letter(u, n as usize + 1)));
    v.extend(w.iter().map(|&a| ViewSym::Letter(a)));
    v.push(ViewSym::Letter(padded_letter(u, n as usize)));
    v
}

/// Render a ribbon with the machine's symbol names, walls as `$`.
/// Only useful for alphabets with one-character names.
pub fn render_view(m: &TuringMachine, view: &[ViewSym]) -> String {
    view.iter()
        .map(|&v| match v {
            ViewSym::Letter(a) => m.symbol_name(a).to_string(),
            ViewSym::WallLetter | ViewSym::WallBlank => "$".to_string(),
        })
        .collect()
}
