//! Forbidden pattern sets and admissibility scanning.
//!
//! Scans are indexed by pattern shape: fully exact patterns of one shape live
//! in a hash set keyed by window content, so a scan costs one window
//! extraction and one lookup per anchor per shape; patterns with `Any` or
//! `Class` cells (always few) fall back to a matcher loop.

use std::collections::HashMap;

use super::config::{Boundary, Config, Mask};
use super::pattern::{Alphabet, CellMatcher, ClassId, Pattern, Sym};
use super::GridError;
use crate::par;

/// An occurrence of a forbidden pattern: anchor cell plus pattern index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub r: usize,
    pub c: usize,
    pub pattern: usize,
}

#[derive(Debug, Clone)]
struct Shape {
    rows: usize,
    cols: usize,
    /// window content -> index of (one) exact pattern with that content
    exact: HashMap<Vec<Sym>, usize>,
    /// patterns needing the matcher loop, each registered once under its most
    /// selective cell: key cell offset -> accepted symbol -> pattern indices.
    /// Compiled tilesets carry thousands of class dominoes whose wildcard
    /// side would make a fixed top-left index useless; keying on the
    /// narrowest cell keeps scans near O(cells)
    keyed: Vec<KeyedIndex>,
}

#[derive(Debug, Clone)]
struct KeyedIndex {
    dr: usize,
    dc: usize,
    by_sym: HashMap<Sym, Vec<usize>>,
}

/// A finite set of forbidden patterns over one alphabet.
#[derive(Debug, Clone)]
pub struct ForbiddenSet {
    alphabet: Alphabet,
    patterns: Vec<Pattern>,
    shapes: Vec<Shape>,
}

impl ForbiddenSet {
    pub fn new(alphabet: Alphabet, patterns: Vec<Pattern>) -> Self {
        let mut fs = ForbiddenSet { alphabet, patterns: Vec::new(), shapes: Vec::new() };
        fs.extend(patterns);
        fs
    }

    pub fn extend(&mut self, patterns: impl IntoIterator<Item = Pattern>) {
        for p in patterns {
            let id = self.patterns.len();
            let alphabet_size = self.alphabet.size();
            // Pick the key cell before borrowing the shape table: the cell
            // accepting the fewest symbols, ties broken towards the top-left.
            let key = if p.exact_content().is_none() {
                let mut best = (0usize, 0usize, Vec::new());
                let mut best_count = usize::MAX;
                for dr in 0..p.rows() {
                    for dc in 0..p.cols() {
                        let m = p.cell(dr, dc);
                        let mut accepted = Vec::new();
                        for s in 0..alphabet_size {
                            if m.matches(s, &self.alphabet) {
                                accepted.push(s);
                                if accepted.len() >= best_count {
                                    break;
                                }
                            }
                        }
                        if accepted.len() < best_count {
                            best_count = accepted.len();
                            best = (dr, dc, accepted);
                        }
                    }
                }
                Some(best)
            } else {
                None
            };
            let shape = match self
                .shapes
                .iter_mut()
                .find(|s| s.rows == p.rows() && s.cols == p.cols())
            {
                Some(s) => s,
                None => {
                    self.shapes.push(Shape {
                        rows: p.rows(),
                        cols: p.cols(),
                        exact: HashMap::new(),
                        keyed: Vec::new(),
                    });
                    self.shapes.last_mut().unwrap()
                }
            };
            match p.exact_content() {
                Some(content) => {
                    shape.exact.entry(content).or_insert(id);
                }
                None => {
                    let (dr, dc, accepted) = key.unwrap();
                    let idx = match shape.keyed.iter_mut().find(|k| k.dr == dr && k.dc == dc) {
                        Some(k) => k,
                        None => {
                            shape.keyed.push(KeyedIndex { dr, dc, by_sym: HashMap::new() });
                            shape.keyed.last_mut().unwrap()
                        }
                    };
                    for s in accepted {
                        idx.by_sym.entry(s).or_default().push(id);
                    }
                }
            }
            self.patterns.push(p);
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    fn anchor_ranges(&self, cfg: &Config, shape_rows: usize, shape_cols: usize) -> (usize, usize) {
        match cfg.boundary() {
            Boundary::Free => (
                cfg.rows().saturating_sub(shape_rows - 1),
                cfg.cols().saturating_sub(shape_cols - 1),
            ),
            Boundary::Periodic => (cfg.rows(), cfg.cols()),
        }
    }

    /// Violations anchored in row `r`, appended to `out`. `buf` is a scratch
    /// window reused across anchors.
    fn scan_row(&self, cfg: &Config, r: usize, buf: &mut Vec<Sym>, out: &mut Vec<Violation>) {
        for shape in &self.shapes {
            let (ar, ac) = self.anchor_ranges(cfg, shape.rows, shape.cols);
            if r >= ar {
                continue;
            }
            for c in 0..ac {
                if !shape.exact.is_empty() {
                    buf.clear();
                    let mut complete = true;
                    'fill: for pr in 0..shape.rows {
                        for pc in 0..shape.cols {
                            match cfg.get(r as i64 + pr as i64, c as i64 + pc as i64) {
                                Some(s) => buf.push(s),
                                None => {
                                    complete = false;
                                    break 'fill;
                                }
                            }
                        }
                    }
                    if complete {
                        if let Some(&id) = shape.exact.get(buf.as_slice()) {
                            out.push(Violation { r, c, pattern: id });
                        }
                    }
                }
                for idx in &shape.keyed {
                    // key cells lie inside the window, so they exist for
                    // every in-range anchor
                    let s = cfg.get(r as i64 + idx.dr as i64, c as i64 + idx.dc as i64).unwrap();
                    if let Some(ids) = idx.by_sym.get(&s) {
                        for &id in ids {
                            if self.patterns[id].matches_at(cfg, &self.alphabet, r as i64, c as i64)
                            {
                                out.push(Violation { r, c, pattern: id });
                            }
                        }
                    }
                }
            }
        }
    }

    /// All forbidden-pattern occurrences, sorted by (row, col, pattern).
    pub fn violations(&self, cfg: &Config) -> Vec<Violation> {
        let per_row = par::map_indices(cfg.rows(), |r| {
            let mut buf = Vec::new();
            let mut out = Vec::new();
            self.scan_row(cfg, r, &mut buf, &mut out);
            out
        });
        let mut all: Vec<Violation> = per_row.into_iter().flatten().collect();
        all.sort_by_key(|v| (v.r, v.c, v.pattern));
        all
    }

    pub fn is_admissible(&self, cfg: &Config) -> bool {
        !par::any_index(cfg.rows(), |r| {
            let mut buf = Vec::new();
            let mut out = Vec::new();
            self.scan_row(cfg, r, &mut buf, &mut out);
            !out.is_empty()
        })
    }

    /// True when the footprint of `v` (the pattern's constrained cells, i.e.
    /// everything but `Any`) touches a masked cell. Such occurrences are
    /// exempt under noisy admissibility.
    pub fn touches_mask(&self, cfg: &Config, mask: &Mask, v: &Violation) -> bool {
        let p = &self.patterns[v.pattern];
        for pr in 0..p.rows() {
            for pc in 0..p.cols() {
                if matches!(p.cell(pr, pc), CellMatcher::Any) {
                    continue;
                }
                let (rr, cc) = (v.r as i64 + pr as i64, v.c as i64 + pc as i64);
                let hit = match cfg.boundary() {
                    Boundary::Periodic => mask.get_wrapped(rr, cc),
                    Boundary::Free => {
                        rr >= 0
                            && cc >= 0
                            && (rr as usize) < mask.rows()
                            && (cc as usize) < mask.cols()
                            && mask.get(rr as usize, cc as usize)
                    }
                };
                if hit {
                    return true;
                }
            }
        }
        false
    }

    /// Violations whose constrained cells avoid the mask entirely.
    pub fn violations_outside(&self, cfg: &Config, mask: &Mask) -> Vec<Violation> {
        self.violations(cfg)
            .into_iter()
            .filter(|v| !self.touches_mask(cfg, mask, v))
            .collect()
    }

    /// Admissible up to violations touching the mask.
    pub fn noisy_admissible(&self, cfg: &Config, mask: &Mask) -> bool {
        self.violations_outside(cfg, mask).is_empty()
    }

    /// Smallest window scale `k` such that every pattern fits in a box of
    /// side `k + 1`.
    pub fn bounding_k(&self) -> u64 {
        self.patterns
            .iter()
            .map(|p| p.rows().max(p.cols()) as u64 - 1)
            .max()
            .unwrap_or(0)
    }

    /// Plain-text serialization: alphabet, classes, then one block per
    /// pattern. Cells are decimal symbols, `*` for wildcards, `c<id>` for
    /// class matchers.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("shiftlab-rules v1\n");
        s.push_str(&format!("alphabet {}\n", self.alphabet.size()));
        let names = self.alphabet.class_names();
        s.push_str(&format!("classes {}\n", names.len()));
        for (i, name) in names.iter().enumerate() {
            debug_assert!(!name.chars().any(char::is_whitespace));
            s.push_str(&format!("class {name}"));
            for m in self.alphabet.class_members(ClassId(i as u16)) {
                s.push_str(&format!(" {m}"));
            }
            s.push('\n');
        }
        s.push_str(&format!("patterns {}\n", self.patterns.len()));
        for p in &self.patterns {
            s.push_str(&format!("pattern {} {}\n", p.rows(), p.cols()));
            for r in 0..p.rows() {
                let row: Vec<String> = (0..p.cols())
                    .map(|c| match p.cell(r, c) {
                        CellMatcher::Exact(sym) => sym.to_string(),
                        CellMatcher::Any => "*".into(),
                        CellMatcher::Class(id) => format!("c{}", id.0),
                    })
                    .collect();
                s.push_str(&row.join(" "));
                s.push('\n');
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<ForbiddenSet, GridError> {
        let bad = |msg: String| GridError::BadHeader(msg);
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty input".into()))?;
        if header.trim() != "shiftlab-rules v1" {
            return Err(bad(format!("unknown header {header:?}")));
        }
        let size: u32 = next_field(&mut lines, "alphabet")?
            .parse()
            .map_err(|_| bad("bad alphabet size".into()))?;
        let mut alph = Alphabet::plain(size);
        let nclasses: usize = next_field(&mut lines, "classes")?
            .parse()
            .map_err(|_| bad("bad class count".into()))?;
        for _ in 0..nclasses {
            let spec = next_field(&mut lines, "class")?;
            let mut toks = spec.split_whitespace();
            let name = toks.next().ok_or_else(|| bad("class without a name".into()))?;
            let members: Vec<Sym> = toks
                .map(|t| t.parse().map_err(|_| bad(format!("bad class member {t:?}"))))
                .collect::<Result<_, _>>()?;
            alph.add_class(name, members);
        }
        let npatterns: usize = next_field(&mut lines, "patterns")?
            .parse()
            .map_err(|_| bad("bad pattern count".into()))?;
        let mut patterns = Vec::with_capacity(npatterns);
        for _ in 0..npatterns {
            let shape = next_field(&mut lines, "pattern")?;
            let (r, c) = shape
                .split_once(' ')
                .ok_or_else(|| bad(format!("bad pattern shape {shape:?}")))?;
            let rows: usize = r.trim().parse().map_err(|_| bad("bad pattern rows".into()))?;
            let cols: usize = c.trim().parse().map_err(|_| bad("bad pattern cols".into()))?;
            let mut cells = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                let line = lines.next().ok_or_else(|| bad("truncated pattern".into()))?;
                for tok in line.split_whitespace() {
                    cells.push(parse_matcher(tok, &alph, i)?);
                }
            }
            if cells.len() != rows * cols {
                return Err(GridError::DimensionMismatch {
                    expected: rows * cols,
                    got: cells.len(),
                });
            }
            patterns.push(Pattern::from_matchers(rows, cols, cells));
        }
        Ok(ForbiddenSet::new(alph, patterns))
    }
}

fn next_field(lines: &mut std::str::Lines<'_>, name: &str) -> Result<String, GridError> {
    let line = lines
        .next()
        .ok_or_else(|| GridError::BadHeader(format!("missing {name}")))?;
    line.trim()
        .strip_prefix(name)
        .map(|v| v.trim().to_owned())
        .ok_or_else(|| GridError::BadHeader(format!("expected {name}, got {line:?}")))
}

fn parse_matcher(tok: &str, alph: &Alphabet, row: usize) -> Result<CellMatcher, GridError> {
    let cell_err =
        |msg: String| GridError::BadCell { row, msg };
    if tok == "*" {
        return Ok(CellMatcher::Any);
    }
    if let Some(id) = tok.strip_prefix('c') {
        if let Ok(id) = id.parse::<u16>() {
            if (id as usize) < alph.class_names().len() {
                return Ok(CellMatcher::Class(ClassId(id)));
            }
            return Err(cell_err(format!("class id {id} out of range")));
        }
    }
    let v: u32 = tok.parse().map_err(|_| cell_err(format!("bad token {tok:?}")))?;
    if v >= alph.size() {
        return Err(GridError::SymbolOutOfRange(v, alph.size()));
    }
    Ok(CellMatcher::Exact(v as Sym))
}

/// Anchors where `pattern` occurs in `cfg` (all anchors on a torus, fitting
/// anchors under free boundary).
pub fn occurrence_positions(
    cfg: &Config,
    alph: &Alphabet,
    pattern: &Pattern,
) -> Vec<(usize, usize)> {
    let (ar, ac) = match cfg.boundary() {
        Boundary::Free => (
            cfg.rows().saturating_sub(pattern.rows() - 1),
            cfg.cols().saturating_sub(pattern.cols() - 1),
        ),
        Boundary::Periodic => (cfg.rows(), cfg.cols()),
    };
    let rows: Vec<Vec<(usize, usize)>> = par::map_indices(ar, |r| {
        (0..ac)
            .filter(|&c| pattern.matches_at(cfg, alph, r as i64, c as i64))
            .map(|c| (r, c))
            .collect()
    });
    rows.into_iter().flatten().collect()
}

pub fn count_occurrences(cfg: &Config, alph: &Alphabet, pattern: &Pattern) -> usize {
    occurrence_positions(cfg, alph, pattern).len()
}
