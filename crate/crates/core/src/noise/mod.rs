//! Bernoulli noise fields and the colour-flip process.
//!
//! A [`NoiseField`] marks each cell independently obscured with a fixed
//! rate. [`flip_process`] walks the block hierarchy of a red-black macro
//! tile from small scales up: a block whose two bi-coloured designated
//! cells are both obscured is flippable, and a fair coin decides whether
//! its colour channels are exchanged. The cells of the central arm past
//! the designated cells keep their original colours, so every matching
//! violation the flips introduce sits on an obscured designated cell and
//! the output stays admissible for the noisy forbidden set.
//!
//! Noise bits and flip coins come from separate streams of one seedable
//! generator, so a run is reproducible from `(config, noise, seed)` alone.
//! Runs over independent trials parallelise at the trial level; a single
//! run is cheap and stays sequential to keep coin order fixed.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::grid::{Config, Mask};
use crate::tiles::constants::{
    cross_orientation, designated_cells, flip_excluded_cells, macro_side,
};
use crate::tiles::{MacroSpec, Tileset, Variant};

/// Stream id for noise bits within the seeded generator.
const NOISE_STREAM: u64 = 1;
/// Stream id for flip coins.
const COIN_STREAM: u64 = 2;

#[derive(Debug, Error)]
pub enum NoiseError {
    #[error("noise rate {0} outside [0, 1]")]
    RateOutOfRange(f64),
    #[error("configuration is {rows}x{cols}, not a full macro tile of scale {n}")]
    ShapeMismatch { rows: usize, cols: usize, n: u32 },
    #[error("noise field is {nr}x{nc}, configuration is {cr}x{cc}")]
    FieldMismatch { nr: usize, nc: usize, cr: usize, cc: usize },
    #[error("scale range {start}..={max} not processable, need 2 <= start <= max <= {n}")]
    BadScales { start: u32, max: u32, n: u32 },
    #[error("flip process needs the red-black structure, got {0}")]
    UnknownStructure(String),
    #[error("bad noise text: {0}")]
    BadText(String),
}

/// An i.i.d. Bernoulli field of obscured cells, reproducible from its seed.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseField {
    rows: usize,
    cols: usize,
    epsilon: f64,
    seed: u64,
    bits: Mask,
}

/// Sample a `rows x cols` field with rate `epsilon` from `seed`.
pub fn sample_noise(
    rows: usize,
    cols: usize,
    epsilon: f64,
    seed: u64,
) -> Result<NoiseField, NoiseError> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(NoiseError::RateOutOfRange(epsilon));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(NOISE_STREAM);
    let mut bits = Mask::empty(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            bits.set(r, c, rng.gen_bool(epsilon));
        }
    }
    Ok(NoiseField { rows, cols, epsilon, seed, bits })
}

impl NoiseField {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// True when cell `(r, c)` is obscured.
    pub fn obscured(&self, r: usize, c: usize) -> bool {
        self.bits.get(r, c)
    }

    pub fn mask(&self) -> &Mask {
        &self.bits
    }

    pub fn density(&self) -> f64 {
        self.bits.density()
    }

    /// Plain-text serialization; bit-exact, including the rate and seed.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str("shiftlab-noise v1\n");
        s.push_str(&format!("rows {}\n", self.rows));
        s.push_str(&format!("cols {}\n", self.cols));
        s.push_str(&format!("epsilon {:?}\n", self.epsilon));
        s.push_str(&format!("seed {}\n", self.seed));
        s.push_str("data\n");
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.bits.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<NoiseField, NoiseError> {
        let bad = |msg: &str| NoiseError::BadText(msg.into());
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("shiftlab-noise v1") {
            return Err(bad("unknown header"));
        }
        let mut take = |name: &str| -> Result<String, NoiseError> {
            lines
                .next()
                .and_then(|l| l.trim().strip_prefix(name))
                .map(|v| v.trim().to_owned())
                .ok_or_else(|| bad(&format!("missing {name}")))
        };
        let rows: usize = take("rows")?.parse().map_err(|_| bad("bad rows"))?;
        let cols: usize = take("cols")?.parse().map_err(|_| bad("bad cols"))?;
        let epsilon: f64 = take("epsilon")?.parse().map_err(|_| bad("bad epsilon"))?;
        let seed: u64 = take("seed")?.parse().map_err(|_| bad("bad seed"))?;
        if !take("data")?.is_empty() {
            return Err(bad("expected bare data line"));
        }
        let mut bits = Mask::empty(rows, cols);
        for r in 0..rows {
            let line = lines.next().ok_or_else(|| bad("truncated data"))?;
            let line = line.trim();
            if line.len() != cols {
                return Err(bad(&format!("row {r} has {} bits, want {cols}", line.len())));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => bits.set(r, c, true),
                    _ => return Err(bad(&format!("bad bit {ch:?}"))),
                }
            }
        }
        Ok(NoiseField { rows, cols, epsilon, seed, bits })
    }
}

/// One block visit of the flip process.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlipEvent {
    pub scale: u32,
    pub anchor: (u64, u64),
    pub flippable: bool,
    pub flipped: bool,
}

/// Record of every block visited, smallest scale first, row-major within a
/// scale. `flipped` implies `flippable`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipLog {
    pub start_scale: u32,
    pub max_scale: u32,
    pub events: Vec<FlipEvent>,
}

impl FlipLog {
    pub fn events_at(&self, scale: u32) -> impl Iterator<Item = &FlipEvent> {
        self.events.iter().filter(move |e| e.scale == scale)
    }

    pub fn total_flipped(&self) -> usize {
        self.events.iter().filter(|e| e.flipped).count()
    }

    /// Parity of flips among blocks containing cell `(r, c)`.
    pub fn flip_parity(&self, r: u64, c: u64) -> bool {
        self.events
            .iter()
            .filter(|e| {
                let side = macro_side(e.scale);
                e.flipped
                    && r >= e.anchor.0
                    && r < e.anchor.0 + side
                    && c >= e.anchor.1
                    && c < e.anchor.1 + side
            })
            .count()
            % 2
            == 1
    }

    /// True when some flipped block contains cell `(r, c)`.
    pub fn ever_flipped(&self, r: u64, c: u64) -> bool {
        self.events.iter().any(|e| {
            let side = macro_side(e.scale);
            e.flipped
                && r >= e.anchor.0
                && r < e.anchor.0 + side
                && c >= e.anchor.1
                && c < e.anchor.1 + side
        })
    }

    /// True when some flippable block contains cell `(r, c)`. Conditioned
    /// on this, the flip parity is an xor of fair coins over a nonempty
    /// noise-determined set, hence uniform.
    pub fn ever_flippable(&self, r: u64, c: u64) -> bool {
        self.events.iter().any(|e| {
            let side = macro_side(e.scale);
            e.flippable
                && r >= e.anchor.0
                && r < e.anchor.0 + side
                && c >= e.anchor.1
                && c < e.anchor.1 + side
        })
    }
}

/// Exchange colour channels of every block cell except the arm cells past
/// the designated crossings.
fn apply_flip(ts: &Tileset, out: &mut Config, ar: u64, ac: u64, n: u32, excluded: &[(u64, u64)]) {
    let skip: HashSet<(u64, u64)> = excluded.iter().copied().collect();
    let side = macro_side(n);
    for r in ar..ar + side {
        for c in ac..ac + side {
            if skip.contains(&(r, c)) {
                continue;
            }
            let t = ts.tile(out.at(r as usize, c as usize));
            let f = t.flip_colours();
            if f != *t {
                out.set(r as usize, c as usize, ts.sym(&f));
            }
        }
    }
}

/// Run the colour-flip process over `cfg`, a macro tile built from `spec`.
///
/// Scales `start_scale..=max_scale` are processed in increasing order; one
/// fair coin per block is drawn from `coin_seed` in visit order whether or
/// not the block is flippable, so coin assignment does not depend on the
/// noise.
pub fn flip_process(
    ts: &Tileset,
    cfg: &Config,
    spec: &MacroSpec,
    noise: &NoiseField,
    start_scale: u32,
    max_scale: u32,
    coin_seed: u64,
) -> Result<(Config, FlipLog), NoiseError> {
    if ts.variant != Variant::RedBlack {
        return Err(NoiseError::UnknownStructure(ts.variant.tag().into()));
    }
    let side = macro_side(spec.n) as usize;
    if cfg.rows() != side || cfg.cols() != side {
        return Err(NoiseError::ShapeMismatch { rows: cfg.rows(), cols: cfg.cols(), n: spec.n });
    }
    if noise.rows() != cfg.rows() || noise.cols() != cfg.cols() {
        return Err(NoiseError::FieldMismatch {
            nr: noise.rows(),
            nc: noise.cols(),
            cr: cfg.rows(),
            cc: cfg.cols(),
        });
    }
    if start_scale < 2 || start_scale > max_scale || max_scale > spec.n {
        return Err(NoiseError::BadScales { start: start_scale, max: max_scale, n: spec.n });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(coin_seed);
    rng.set_stream(COIN_STREAM);
    let mut out = cfg.clone();
    let mut events = Vec::new();
    for n in start_scale..=max_scale {
        let blocks = 1u64 << (spec.n - n);
        let block_side = macro_side(n);
        for p in 0..blocks {
            for q in 0..blocks {
                let (ar, ac) = (p * (block_side + 1), q * (block_side + 1));
                let centre = (ar + (1 << (n - 1)) - 1, ac + (1 << (n - 1)) - 1);
                let d = cross_orientation(centre.0, centre.1, spec.n, spec.orientation);
                let [d1, d2] = designated_cells(ar, ac, n, d);
                let flippable = noise.obscured(d1.0 as usize, d1.1 as usize)
                    && noise.obscured(d2.0 as usize, d2.1 as usize);
                let coin = rng.gen_bool(0.5);
                let flipped = flippable && coin;
                if flipped {
                    let excluded = flip_excluded_cells(ar, ac, n, d);
                    apply_flip(ts, &mut out, ar, ac, n, &excluded);
                }
                events.push(FlipEvent { scale: n, anchor: (ar, ac), flippable, flipped });
            }
        }
    }
    Ok((out, FlipLog { start_scale, max_scale, events }))
}

/// Counts and z-scores for one processed scale.
#[derive(Debug, Clone, Copy)]
pub struct ScaleStats {
    pub scale: u32,
    pub blocks: u64,
    pub flippable: u64,
    pub flipped: u64,
}

impl ScaleStats {
    pub fn flippable_rate(&self) -> f64 {
        self.flippable as f64 / self.blocks as f64
    }

    pub fn flip_rate(&self) -> Option<f64> {
        (self.flippable > 0).then(|| self.flipped as f64 / self.flippable as f64)
    }

    /// Standard score of the flippable count against Binomial(blocks, eps^2).
    /// `None` when the nominal variance vanishes.
    pub fn z_flippable(&self, epsilon: f64) -> Option<f64> {
        let p = epsilon * epsilon;
        let var = self.blocks as f64 * p * (1.0 - p);
        (var > 0.0).then(|| (self.flippable as f64 - self.blocks as f64 * p) / var.sqrt())
    }

    /// Standard score of the flip count against Binomial(flippable, 1/2).
    pub fn z_flip(&self) -> Option<f64> {
        let var = self.flippable as f64 * 0.25;
        (var > 0.0).then(|| (self.flipped as f64 - self.flippable as f64 * 0.5) / var.sqrt())
    }
}

/// Per-scale flip statistics of one or more merged logs.
#[derive(Debug, Clone)]
pub struct FlipReport {
    pub epsilon: f64,
    pub scales: Vec<ScaleStats>,
}

pub fn flip_statistics(log: &FlipLog, epsilon: f64) -> FlipReport {
    let mut scales = Vec::new();
    for scale in log.start_scale..=log.max_scale {
        let mut s = ScaleStats { scale, blocks: 0, flippable: 0, flipped: 0 };
        for e in log.events_at(scale) {
            s.blocks += 1;
            s.flippable += e.flippable as u64;
            s.flipped += e.flipped as u64;
        }
        scales.push(s);
    }
    FlipReport { epsilon, scales }
}

impl FlipReport {
    /// Merge the per-scale counts of another report taken at the same rate.
    pub fn absorb(&mut self, other: &FlipReport) {
        assert_eq!(self.epsilon.to_bits(), other.epsilon.to_bits());
        assert_eq!(self.scales.len(), other.scales.len());
        for (a, b) in self.scales.iter_mut().zip(&other.scales) {
            assert_eq!(a.scale, b.scale);
            a.blocks += b.blocks;
            a.flippable += b.flippable;
            a.flipped += b.flipped;
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("flip report, rate {:?}\n", self.epsilon);
        for st in &self.scales {
            let z1 = st
                .z_flippable(self.epsilon)
                .map_or("undefined".into(), |z| format!("{z:.3}"));
            let z2 = st.z_flip().map_or("undefined".into(), |z| format!("{z:.3}"));
            s.push_str(&format!(
                "scale {}: blocks {}, flippable {} (rate {:.4}, z {}), flipped {} (z {})\n",
                st.scale,
                st.blocks,
                st.flippable,
                st.flippable_rate(),
                z1,
                st.flipped,
                z2,
            ));
        }
        s
    }
}
