//! Finite rectangular configurations and boolean masks.

use super::{GridError, Sym};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Reads outside the rectangle see nothing; patterns must fit inside.
    Free,
    /// The rectangle is a fundamental domain of a torus; reads wrap.
    Periodic,
}

/// A finite rectangle of symbols, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    rows: usize,
    cols: usize,
    boundary: Boundary,
    cells: Vec<Sym>,
}

impl Config {
    pub fn filled(boundary: Boundary, rows: usize, cols: usize, sym: Sym) -> Self {
        assert!(rows > 0 && cols > 0);
        Config { rows, cols, boundary, cells: vec![sym; rows * cols] }
    }

    pub fn from_rows(
        boundary: Boundary,
        rows: usize,
        cols: usize,
        cells: Vec<Sym>,
    ) -> Result<Self, GridError> {
        if cells.len() != rows * cols {
            return Err(GridError::DimensionMismatch { expected: rows * cols, got: cells.len() });
        }
        Ok(Config { rows, cols, boundary, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    pub fn cells(&self) -> &[Sym] {
        &self.cells
    }

    /// Read cell `(r, c)`. Free boundary returns `None` out of range;
    /// periodic boundary wraps (negative coordinates included).
    #[inline]
    pub fn get(&self, r: i64, c: i64) -> Option<Sym> {
        match self.boundary {
            Boundary::Free => {
                if r < 0 || c < 0 || r as usize >= self.rows || c as usize >= self.cols {
                    None
                } else {
                    Some(self.cells[r as usize * self.cols + c as usize])
                }
            }
            Boundary::Periodic => {
                let r = (r.rem_euclid(self.rows as i64)) as usize;
                let c = (c.rem_euclid(self.cols as i64)) as usize;
                Some(self.cells[r * self.cols + c])
            }
        }
    }

    /// In-range read without the boundary dance.
    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Sym {
        debug_assert!(r < self.rows && c < self.cols);
        self.cells[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Sym) {
        assert!(r < self.rows && c < self.cols);
        self.cells[r * self.cols + c] = s;
    }

    /// Torus translate: cell `(r, c)` of the result reads `(r+dr, c+dc)` of
    /// `self`. Periodic configs only.
    pub fn shifted(&self, dr: i64, dc: i64) -> Config {
        assert_eq!(self.boundary, Boundary::Periodic, "shift needs a torus");
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.cells[r * self.cols + c] =
                    self.get(r as i64 + dr, c as i64 + dc).unwrap();
            }
        }
        out
    }

    /// Cells where the two rectangles disagree. Same dimensions required.
    pub fn disagreement_count(&self, other: &Config) -> usize {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.cells.iter().zip(&other.cells).filter(|(a, b)| a != b).count()
    }

    /// Plain-text serialization, stable across runs.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("shiftlab-config v1\n");
        s.push_str(&format!("rows {}\n", self.rows));
        s.push_str(&format!("cols {}\n", self.cols));
        s.push_str(&format!(
            "boundary {}\n",
            match self.boundary {
                Boundary::Free => "free",
                Boundary::Periodic => "periodic",
            }
        ));
        s.push_str("data\n");
        for r in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Config, GridError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| GridError::BadHeader("empty input".into()))?;
        if header.trim() != "shiftlab-config v1" {
            return Err(GridError::BadHeader(format!("unknown header {header:?}")));
        }
        let mut rows = None;
        let mut cols = None;
        let mut boundary = None;
        for line in lines.by_ref() {
            let line = line.trim();
            if line == "data" {
                break;
            }
            let (key, val) = line
                .split_once(' ')
                .ok_or_else(|| GridError::BadHeader(format!("bad field {line:?}")))?;
            match key {
                "rows" => rows = Some(val.parse().map_err(|_| GridError::BadHeader(line.into()))?),
                "cols" => cols = Some(val.parse().map_err(|_| GridError::BadHeader(line.into()))?),
                "boundary" => {
                    boundary = Some(match val {
                        "free" => Boundary::Free,
                        "periodic" => Boundary::Periodic,
                        _ => return Err(GridError::BadHeader(format!("bad boundary {val:?}"))),
                    })
                }
                _ => return Err(GridError::BadHeader(format!("unknown field {key:?}"))),
            }
        }
        let rows = rows.ok_or_else(|| GridError::BadHeader("missing rows".into()))?;
        let cols = cols.ok_or_else(|| GridError::BadHeader("missing cols".into()))?;
        let boundary = boundary.ok_or_else(|| GridError::BadHeader("missing boundary".into()))?;
        let mut cells = Vec::with_capacity(rows * cols);
        for (i, line) in lines.enumerate() {
            for tok in line.split_whitespace() {
                let v: u32 = tok
                    .parse()
                    .map_err(|_| GridError::BadCell { row: i, msg: format!("bad token {tok:?}") })?;
                cells.push(v as Sym);
            }
        }
        Config::from_rows(boundary, rows, cols, cells)
    }
}

/// Boolean cell mask with the same geometry as a config. Used for noise
/// supports and violation exemptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mask {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl Mask {
    pub fn empty(rows: usize, cols: usize) -> Self {
        Mask { rows, cols, bits: vec![false; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    /// Wrapping read, for masks over periodic configs.
    #[inline]
    pub fn get_wrapped(&self, r: i64, c: i64) -> bool {
        let r = r.rem_euclid(self.rows as i64) as usize;
        let c = c.rem_euclid(self.cols as i64) as usize;
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.bits[r * self.cols + c] = v;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn density(&self) -> f64 {
        self.count() as f64 / (self.rows * self.cols) as f64
    }
}
