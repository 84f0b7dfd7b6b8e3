//! Alphabets with symbol classes, and patterns whose cells match exactly, by
//! class, or not at all.

use super::config::Config;

/// Symbol in a finite alphabet. Compiled product alphabets (structure times
/// machine content) can run into the tens of thousands, hence 32 bits.
pub type Sym = u32;

/// Identifier of a symbol class within an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassId(pub(crate) u16);

/// Finite alphabet. Symbols are `0..size`. Classes are named subsets used by
/// [`CellMatcher::Class`] so that rules like "at most one marked cell per
/// window" stay a handful of patterns instead of an |A|^4 expansion.
/// Membership is one bitset over symbols per class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    size: u32,
    class_bits: Vec<Vec<u64>>,
    class_names: Vec<String>,
}

impl Alphabet {
    /// Alphabet with no classes.
    pub fn plain(size: u32) -> Self {
        Alphabet { size, class_bits: Vec::new(), class_names: Vec::new() }
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Register a class; returns its id. Panics on a duplicate name or past
    /// 2^16 classes (both are construction bugs, not runtime conditions).
    pub fn add_class(&mut self, name: &str, members: impl IntoIterator<Item = Sym>) -> ClassId {
        assert!(self.class_names.len() < u16::MAX as usize, "class id space exhausted");
        assert!(
            self.class_names.iter().all(|n| n != name),
            "duplicate class name {name:?}"
        );
        let id = ClassId(self.class_names.len() as u16);
        self.class_names.push(name.to_owned());
        let mut bits = vec![0u64; (self.size as usize).div_ceil(64)];
        for s in members {
            assert!(s < self.size, "class member {s} out of range");
            bits[s as usize / 64] |= 1 << (s % 64);
        }
        self.class_bits.push(bits);
        id
    }

    pub fn class_id(&self, name: &str) -> Option<ClassId> {
        self.class_names.iter().position(|n| n == name).map(|i| ClassId(i as u16))
    }

    pub fn in_class(&self, s: Sym, c: ClassId) -> bool {
        self.class_bits[c.0 as usize][s as usize / 64] & (1 << (s % 64)) != 0
    }

    pub fn class_members(&self, c: ClassId) -> impl Iterator<Item = Sym> + '_ {
        (0..self.size).filter(move |&s| self.in_class(s, c))
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }
}

/// One cell of a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellMatcher {
    Exact(Sym),
    Any,
    Class(ClassId),
}

impl CellMatcher {
    pub fn matches(&self, s: Sym, alph: &Alphabet) -> bool {
        match *self {
            CellMatcher::Exact(t) => s == t,
            CellMatcher::Any => true,
            CellMatcher::Class(c) => alph.in_class(s, c),
        }
    }
}

/// A finite rectangular pattern. Row-major, anchored at its top-left cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    rows: usize,
    cols: usize,
    cells: Vec<CellMatcher>,
}

impl Pattern {
    pub fn exact(rows: usize, cols: usize, syms: &[Sym]) -> Self {
        assert_eq!(syms.len(), rows * cols);
        Pattern {
            rows,
            cols,
            cells: syms.iter().map(|&s| CellMatcher::Exact(s)).collect(),
        }
    }

    pub fn from_matchers(rows: usize, cols: usize, cells: Vec<CellMatcher>) -> Self {
        assert_eq!(cells.len(), rows * cols);
        Pattern { rows, cols, cells }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, r: usize, c: usize) -> CellMatcher {
        self.cells[r * self.cols + c]
    }

    /// True when every cell is an exact symbol, the common fast-indexable case.
    pub fn is_exact(&self) -> bool {
        self.cells.iter().all(|m| matches!(m, CellMatcher::Exact(_)))
    }

    /// The exact symbol content, if [`is_exact`](Self::is_exact).
    pub fn exact_content(&self) -> Option<Vec<Sym>> {
        self.cells
            .iter()
            .map(|m| match m {
                CellMatcher::Exact(s) => Some(*s),
                _ => None,
            })
            .collect()
    }

    /// Match with the pattern's top-left cell on `(r, c)`. Out-of-range cells
    /// under free boundary make the match fail.
    pub fn matches_at(&self, cfg: &Config, alph: &Alphabet, r: i64, c: i64) -> bool {
        for pr in 0..self.rows {
            for pc in 0..self.cols {
                let s = match cfg.get(r + pr as i64, c + pc as i64) {
                    Some(s) => s,
                    None => return false,
                };
                if !self.cells[pr * self.cols + pc].matches(s, alph) {
                    return false;
                }
            }
        }
        true
    }
}
