//! Tile records and the edge signals used to derive matching rules.
//!
//! A tile is a decorated unit square. Its figure consists of up to two
//! perpendicular strand segments (line pieces with arrowheads) plus marks
//! (colours for principal strands, grey or a dash style for secondary
//! ones). Matching rules compare the signal a tile emits on each of its
//! four edges with the signal its neighbour emits on the facing edge.
//!
//! Conventions frozen here:
//!
//! * A cross (or bumpy corner) has four half-arms. The two along its
//!   orientation diagonal are principal; the other two are secondary.
//! * Arm and pass segments carry one arrowhead; both edges pierced by the
//!   segment report the same travel direction, pointing at the cross the
//!   segment belongs to. Crosses therefore see arrowheads coming in on
//!   all four edges, and midpoints emit heads outward on both sides.
//! * Crossing tiles are described by the mid strand's axis and by the
//!   travel direction of the passing strand (`inside`); the passing
//!   strand is always perpendicular to the mid strand.
//! * A chirality notch (`sigma`) exists only on the grey and transition
//!   crossings of the four-colour tileset. It never enters edge signals.

use std::fmt;

/// Cardinal direction. Rows grow south, columns grow east.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    N,
    E,
    S,
    W,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::N, Dir::E, Dir::S, Dir::W];

    pub fn opposite(self) -> Dir {
        match self {
            Dir::N => Dir::S,
            Dir::E => Dir::W,
            Dir::S => Dir::N,
            Dir::W => Dir::E,
        }
    }

    /// Quarter turn clockwise (N -> E -> S -> W).
    pub fn cw(self) -> Dir {
        match self {
            Dir::N => Dir::E,
            Dir::E => Dir::S,
            Dir::S => Dir::W,
            Dir::W => Dir::N,
        }
    }

    /// Direction to the left of travel.
    pub fn left(self) -> Dir {
        match self {
            Dir::N => Dir::W,
            Dir::W => Dir::S,
            Dir::S => Dir::E,
            Dir::E => Dir::N,
        }
    }

    pub fn axis(self) -> Axis {
        match self {
            Dir::N | Dir::S => Axis::V,
            Dir::E | Dir::W => Axis::H,
        }
    }

    /// Row/column step of one move in this direction.
    pub fn step(self) -> (i64, i64) {
        match self {
            Dir::N => (-1, 0),
            Dir::E => (0, 1),
            Dir::S => (1, 0),
            Dir::W => (0, -1),
        }
    }

    /// Mirror across a vertical axis (E and W swap).
    pub fn mirror_h(self) -> Dir {
        match self {
            Dir::E => Dir::W,
            Dir::W => Dir::E,
            d => d,
        }
    }
}

/// Strand axis: horizontal strands run along a row, vertical along a column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    H,
    V,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::H => Axis::V,
            Axis::V => Axis::H,
        }
    }

    /// The two directions a strand on this axis can travel.
    pub fn dirs(self) -> [Dir; 2] {
        match self {
            Axis::H => [Dir::E, Dir::W],
            Axis::V => [Dir::N, Dir::S],
        }
    }
}

/// Diagonal orientation of a cross or macro-tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Diag {
    NE,
    NW,
    SE,
    SW,
}

impl Diag {
    pub const ALL: [Diag; 4] = [Diag::NE, Diag::NW, Diag::SE, Diag::SW];

    /// The two cardinal components of the diagonal.
    pub fn components(self) -> (Dir, Dir) {
        match self {
            Diag::NE => (Dir::N, Dir::E),
            Diag::NW => (Dir::N, Dir::W),
            Diag::SE => (Dir::S, Dir::E),
            Diag::SW => (Dir::S, Dir::W),
        }
    }

    pub fn has(self, d: Dir) -> bool {
        let (a, b) = self.components();
        a == d || b == d
    }

    /// Vertical component (N or S).
    pub fn vertical(self) -> Dir {
        self.components().0
    }

    /// Horizontal component (E or W).
    pub fn horizontal(self) -> Dir {
        self.components().1
    }

    pub fn from_components(v: Dir, h: Dir) -> Diag {
        match (v, h) {
            (Dir::N, Dir::E) => Diag::NE,
            (Dir::N, Dir::W) => Diag::NW,
            (Dir::S, Dir::E) => Diag::SE,
            (Dir::S, Dir::W) => Diag::SW,
            _ => panic!("not a diagonal: {v:?},{h:?}"),
        }
    }

    /// Quarter turn clockwise. The vertical component rotates onto the
    /// horizontal axis and vice versa.
    pub fn cw(self) -> Diag {
        Diag::from_components(self.horizontal().cw(), self.vertical().cw())
    }

    /// Mirror across a vertical axis.
    pub fn mirror_h(self) -> Diag {
        Diag::from_components(self.vertical(), self.horizontal().mirror_h())
    }

    /// Diagonal pointing the opposite way.
    pub fn opposite(self) -> Diag {
        Diag::from_components(self.vertical().opposite(), self.horizontal().opposite())
    }
}

/// Mark carried by a strand segment.
///
/// `Plain` is the undecorated strand of the plain tileset. `Grey` is the
/// undecorated secondary strand. `Dot`/`Dash` are the two grey line styles
/// of the four-colour tileset; the four colours are its main channel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mark {
    Plain,
    Black,
    Red,
    Blue,
    Green,
    Grey,
    Dot,
    Dash,
}

impl Mark {
    pub fn is_colour(self) -> bool {
        matches!(self, Mark::Black | Mark::Red | Mark::Blue | Mark::Green)
    }

    /// Swap the two colours of a colour pair; identity on everything else.
    /// In the two-colour tileset the pair is Black/Red; the four-colour
    /// regime channel swaps Blue/Green the same way.
    pub fn flip_colour(self) -> Mark {
        match self {
            Mark::Black => Mark::Red,
            Mark::Red => Mark::Black,
            Mark::Blue => Mark::Green,
            Mark::Green => Mark::Blue,
            m => m,
        }
    }

    /// Partner colour at the next scale within the same regime.
    pub fn succ_colour(self) -> Mark {
        match self {
            Mark::Black => Mark::Red,
            Mark::Red => Mark::Black,
            Mark::Blue => Mark::Green,
            Mark::Green => Mark::Blue,
            m => panic!("not a colour: {m:?}"),
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Mark::Plain => "plain",
            Mark::Black => "black",
            Mark::Red => "red",
            Mark::Blue => "blue",
            Mark::Green => "green",
            Mark::Grey => "grey",
            Mark::Dot => "dot",
            Mark::Dash => "dash",
        };
        f.write_str(s)
    }
}

/// Coarse figure class of a tile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// Scale-1 cross. Distinguished from larger crosses by the corner rule.
    Bumpy,
    /// Cross of scale 2 or more.
    Cross,
    /// Principal arm segment with no perpendicular strand.
    EdgeArm,
    /// Secondary arm segment with no perpendicular strand.
    FillArm,
    /// Midpoint of a square edge, crossed by the next scale's arm.
    CrossedEdgeMid,
    /// Midpoint of a filler strand, crossed by a larger arm.
    CrossedFillMid,
    /// Square-edge midpoint whose passing strand switches colour regime.
    TransitionEdgeMid,
    /// Filler midpoint passed by a strand of the unstable regime.
    TransitionFillMid,
}

/// One tile. Fields not used by a role stay `None`; construction goes
/// through the role constructors so invalid mixes cannot be built.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub role: Role,
    /// Orientation diagonal (crosses and bumpy corners).
    pub d: Option<Diag>,
    /// Arm axis (arms) or mid-strand axis (crossings).
    pub axis: Option<Axis>,
    /// Arm travel direction (arms only).
    pub head: Option<Dir>,
    /// Travel direction of the passing strand (crossings only).
    pub inside: Option<Dir>,
    /// Chirality notch on grey and transition crossings of the
    /// four-colour tileset.
    pub sigma: Option<bool>,
    /// Colour of a cross or bumpy corner, colour of a principal arm, or
    /// style of a secondary arm.
    pub body_mark: Option<Mark>,
    /// Mark of the mid strand (crossings only).
    pub mid_mark: Option<Mark>,
    /// Mark of the passing strand (crossings only).
    pub pass_mark: Option<Mark>,
}

impl Tile {
    pub fn bumpy(d: Diag, colour: Mark) -> Tile {
        Tile {
            role: Role::Bumpy,
            d: Some(d),
            axis: None,
            head: None,
            inside: None,
            sigma: None,
            body_mark: Some(colour),
            mid_mark: None,
            pass_mark: None,
        }
    }

    pub fn cross(d: Diag, colour: Mark) -> Tile {
        Tile { role: Role::Cross, ..Tile::bumpy(d, colour) }
    }

    pub fn edge_arm(axis: Axis, head: Dir, colour: Mark) -> Tile {
        debug_assert_eq!(head.axis(), axis);
        Tile {
            role: Role::EdgeArm,
            d: None,
            axis: Some(axis),
            head: Some(head),
            inside: None,
            sigma: None,
            body_mark: Some(colour),
            mid_mark: None,
            pass_mark: None,
        }
    }

    pub fn fill_arm(axis: Axis, head: Dir, style: Mark) -> Tile {
        Tile { role: Role::FillArm, ..Tile::edge_arm(axis, head, style) }
    }

    pub fn crossing(
        role: Role,
        mid_axis: Axis,
        inside: Dir,
        sigma: Option<bool>,
        mid_mark: Mark,
        pass_mark: Mark,
    ) -> Tile {
        debug_assert_eq!(inside.axis(), mid_axis.other());
        debug_assert!(matches!(
            role,
            Role::CrossedEdgeMid
                | Role::CrossedFillMid
                | Role::TransitionEdgeMid
                | Role::TransitionFillMid
        ));
        Tile {
            role,
            d: None,
            axis: Some(mid_axis),
            head: None,
            inside: Some(inside),
            sigma,
            body_mark: None,
            mid_mark: Some(mid_mark),
            pass_mark: Some(pass_mark),
        }
    }

    pub fn is_crossing(&self) -> bool {
        self.inside.is_some()
    }

    /// Mark of the secondary half-arms of a cross with this body mark.
    /// Plain and two-colour strands drop to plain grey; in the four-colour
    /// tileset the style copies the scale parity carried by the colour.
    pub fn secondary_mark_for(colour: Mark) -> Mark {
        match colour {
            Mark::Black | Mark::Blue => Mark::Dot,
            Mark::Red | Mark::Green => Mark::Dash,
            _ => Mark::Grey,
        }
    }

    /// Signal emitted on `side`, or `None` when no strand pierces it.
    pub fn edge_signal(&self, side: Dir, styled: bool) -> Option<EdgeSig> {
        match self.role {
            Role::Bumpy | Role::Cross => {
                let d = self.d.unwrap();
                let colour = self.body_mark.unwrap();
                let mark = if d.has(side) {
                    colour
                } else if styled {
                    Tile::secondary_mark_for(colour)
                } else {
                    Mark::Grey
                };
                // Arrowheads travel into the cross.
                Some(EdgeSig { mark, head: side.opposite() })
            }
            Role::EdgeArm | Role::FillArm => {
                let axis = self.axis.unwrap();
                if side.axis() == axis {
                    Some(EdgeSig { mark: self.body_mark.unwrap(), head: self.head.unwrap() })
                } else {
                    None
                }
            }
            Role::CrossedEdgeMid
            | Role::CrossedFillMid
            | Role::TransitionEdgeMid
            | Role::TransitionFillMid => {
                let mid_axis = self.axis.unwrap();
                if side.axis() == mid_axis {
                    // Mid strand: heads point outward on both sides.
                    Some(EdgeSig { mark: self.mid_mark.unwrap(), head: side })
                } else {
                    Some(EdgeSig { mark: self.pass_mark.unwrap(), head: self.inside.unwrap() })
                }
            }
        }
    }

    /// Image under a quarter turn clockwise.
    pub fn rotate_cw(&self) -> Tile {
        Tile {
            role: self.role,
            d: self.d.map(Diag::cw),
            axis: self.axis.map(Axis::other),
            head: self.head.map(Dir::cw),
            inside: self.inside.map(Dir::cw),
            sigma: self.sigma,
            body_mark: self.body_mark,
            mid_mark: self.mid_mark,
            pass_mark: self.pass_mark,
        }
    }

    /// Image under a mirror across a vertical axis. The chirality notch flips.
    pub fn mirror_h(&self) -> Tile {
        Tile {
            role: self.role,
            d: self.d.map(Diag::mirror_h),
            axis: self.axis,
            head: self.head.map(Dir::mirror_h),
            inside: self.inside.map(Dir::mirror_h),
            sigma: self.sigma.map(|s| !s),
            body_mark: self.body_mark,
            mid_mark: self.mid_mark,
            pass_mark: self.pass_mark,
        }
    }

    /// Tile with every colour swapped within its pair; geometry unchanged.
    pub fn flip_colours(&self) -> Tile {
        Tile {
            role: self.role,
            d: self.d,
            axis: self.axis,
            head: self.head,
            inside: self.inside,
            sigma: self.sigma,
            body_mark: self.body_mark.map(Mark::flip_colour),
            mid_mark: self.mid_mark.map(Mark::flip_colour),
            pass_mark: self.pass_mark.map(Mark::flip_colour),
        }
    }

    /// Compact stable text form, used by the tileset serialisation.
    pub fn to_text(&self) -> String {
        let mut s = format!("{:?}", self.role);
        if let Some(d) = self.d {
            s.push_str(&format!(" d={d:?}"));
        }
        if let Some(a) = self.axis {
            s.push_str(&format!(" axis={a:?}"));
        }
        if let Some(h) = self.head {
            s.push_str(&format!(" head={h:?}"));
        }
        if let Some(i) = self.inside {
            s.push_str(&format!(" inside={i:?}"));
        }
        if let Some(g) = self.sigma {
            s.push_str(&format!(" notch={}", if g { "L" } else { "R" }));
        }
        if let Some(m) = self.body_mark {
            s.push_str(&format!(" mark={m}"));
        }
        if let Some(m) = self.mid_mark {
            s.push_str(&format!(" mid={m}"));
        }
        if let Some(m) = self.pass_mark {
            s.push_str(&format!(" pass={m}"));
        }
        s
    }

    pub fn from_text(line: &str) -> Option<Tile> {
        let mut parts = line.split_whitespace();
        let role = match parts.next()? {
            "Bumpy" => Role::Bumpy,
            "Cross" => Role::Cross,
            "EdgeArm" => Role::EdgeArm,
            "FillArm" => Role::FillArm,
            "CrossedEdgeMid" => Role::CrossedEdgeMid,
            "CrossedFillMid" => Role::CrossedFillMid,
            "TransitionEdgeMid" => Role::TransitionEdgeMid,
            "TransitionFillMid" => Role::TransitionFillMid,
            _ => return None,
        };
        let mut t = Tile {
            role,
            d: None,
            axis: None,
            head: None,
            inside: None,
            sigma: None,
            body_mark: None,
            mid_mark: None,
            pass_mark: None,
        };
        for p in parts {
            let (k, v) = p.split_once('=')?;
            match k {
                "d" => {
                    t.d = Some(match v {
                        "NE" => Diag::NE,
                        "NW" => Diag::NW,
                        "SE" => Diag::SE,
                        "SW" => Diag::SW,
                        _ => return None,
                    })
                }
                "axis" => {
                    t.axis = Some(match v {
                        "H" => Axis::H,
                        "V" => Axis::V,
                        _ => return None,
                    })
                }
                "head" | "inside" => {
                    let d = match v {
                        "N" => Dir::N,
                        "E" => Dir::E,
                        "S" => Dir::S,
                        "W" => Dir::W,
                        _ => return None,
                    };
                    if k == "head" {
                        t.head = Some(d)
                    } else {
                        t.inside = Some(d)
                    }
                }
                "notch" => t.sigma = Some(v == "L"),
                "mark" | "mid" | "pass" => {
                    let m = match v {
                        "plain" => Mark::Plain,
                        "black" => Mark::Black,
                        "red" => Mark::Red,
                        "blue" => Mark::Blue,
                        "green" => Mark::Green,
                        "grey" => Mark::Grey,
                        "dot" => Mark::Dot,
                        "dash" => Mark::Dash,
                        _ => return None,
                    };
                    match k {
                        "mark" => t.body_mark = Some(m),
                        "mid" => t.mid_mark = Some(m),
                        _ => t.pass_mark = Some(m),
                    }
                }
                _ => return None,
            }
        }
        Some(t)
    }
}

/// Signal on one tile edge: the mark of the strand piercing the edge and
/// the absolute travel direction of its arrowhead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSig {
    pub mark: Mark,
    pub head: Dir,
}
