//! Binary symbols on the time-frequency lattice grid: generation of the
//! benchmark shapes, circular shifts and complements, and geometric
//! measurement (area, chain-code perimeter, component count) with the
//! lattice scaling `area × a/M`, `perimeter × √(a/M)`.

use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dgt::LatticeParams;
use crate::error::{Error, Result};

/// Boolean symbol grid; rows are frequency channels, columns time shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    channels: usize,
    shifts: usize,
    data: Vec<bool>,
}

impl BinaryMask {
    pub fn new(channels: usize, shifts: usize) -> Self {
        Self {
            channels,
            shifts,
            data: vec![false; channels * shifts],
        }
    }

    pub fn ones(channels: usize, shifts: usize) -> Self {
        Self {
            channels,
            shifts,
            data: vec![true; channels * shifts],
        }
    }

    pub fn from_fn(channels: usize, shifts: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut mask = Self::new(channels, shifts);
        for m in 0..channels {
            for n in 0..shifts {
                mask.set(m, n, f(m, n));
            }
        }
        mask
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn shifts(&self) -> usize {
        self.shifts
    }

    pub fn get(&self, m: usize, n: usize) -> bool {
        self.data[m * self.shifts + n]
    }

    pub fn set(&mut self, m: usize, n: usize, value: bool) {
        self.data[m * self.shifts + n] = value;
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// Pointwise negation.
    pub fn complement(&self) -> Self {
        Self {
            channels: self.channels,
            shifts: self.shifts,
            data: self.data.iter().map(|b| !b).collect(),
        }
    }

    /// Circular shift by `dm` channels and `dn` time steps.
    pub fn shifted(&self, dm: i64, dn: i64) -> Self {
        let ch = self.channels as i64;
        let sh = self.shifts as i64;
        Self::from_fn(self.channels, self.shifts, |m, n| {
            let src_m = (m as i64 - dm).rem_euclid(ch) as usize;
            let src_n = (n as i64 - dn).rem_euclid(sh) as usize;
            self.get(src_m, src_n)
        })
    }

    /// (min row, max row, min col, max col) of the set pixels.
    pub fn bounding_box(&self) -> Option<(usize, usize, usize, usize)> {
        let mut bb: Option<(usize, usize, usize, usize)> = None;
        for m in 0..self.channels {
            for n in 0..self.shifts {
                if self.get(m, n) {
                    bb = Some(match bb {
                        None => (m, m, n, n),
                        Some((r0, r1, c0, c1)) => (r0.min(m), r1.max(m), c0.min(n), c1.max(n)),
                    });
                }
            }
        }
        bb
    }

    /// Smallest distance from the support to any grid edge, as a fraction
    /// of the grid dimension. An empty mask reports 0.5 (nothing to wrap).
    pub fn margin_fraction(&self) -> f64 {
        match self.bounding_box() {
            None => 0.5,
            Some((r0, r1, c0, c1)) => {
                let row_margin = r0.min(self.channels - 1 - r1) as f64 / self.channels as f64;
                let col_margin = c0.min(self.shifts - 1 - c1) as f64 / self.shifts as f64;
                row_margin.min(col_margin)
            }
        }
    }
}

/// The benchmark symbol families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeKind {
    Disk,
    Annulus,
    Ellipse,
    Square,
    Star,
    Tiles,
    Blobs,
    LinesAndCircles,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 8] = [
        ShapeKind::Disk,
        ShapeKind::Annulus,
        ShapeKind::Ellipse,
        ShapeKind::Square,
        ShapeKind::Star,
        ShapeKind::Tiles,
        ShapeKind::Blobs,
        ShapeKind::LinesAndCircles,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ShapeKind::Disk => "disk",
            ShapeKind::Annulus => "annulus",
            ShapeKind::Ellipse => "ellipse",
            ShapeKind::Square => "square",
            ShapeKind::Star => "star",
            ShapeKind::Tiles => "tiles",
            ShapeKind::Blobs => "blobs",
            ShapeKind::LinesAndCircles => "lines_and_circles",
        }
    }
}

impl FromStr for ShapeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "disk" => Ok(ShapeKind::Disk),
            "annulus" => Ok(ShapeKind::Annulus),
            "ellipse" => Ok(ShapeKind::Ellipse),
            "square" => Ok(ShapeKind::Square),
            "star" => Ok(ShapeKind::Star),
            "tiles" => Ok(ShapeKind::Tiles),
            "blobs" => Ok(ShapeKind::Blobs),
            "lines_and_circles" | "lines" => Ok(ShapeKind::LinesAndCircles),
            other => Err(Error::InvalidParameter(format!(
                "unknown shape kind '{other}'"
            ))),
        }
    }
}

/// Deterministic shape rasterizer on an `grid × grid` symbol grid.
///
/// Shapes are centered, keep at least a 5% margin to every edge, and cover
/// roughly a third of the grid at `scale = 1`. `seed` only affects the
/// randomized families (tiles, blobs).
pub fn make_shape(kind: ShapeKind, grid: usize, scale: f64, seed: u64) -> Result<BinaryMask> {
    if grid < 16 {
        return Err(Error::InvalidParameter(format!(
            "shape grid must be at least 16, got {grid}"
        )));
    }
    if !(scale > 0.0 && scale <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "shape scale must lie in (0, 1], got {scale}"
        )));
    }
    let m = grid as f64;
    let mask = match kind {
        ShapeKind::Disk => {
            let radius = 0.35 * scale * m;
            raster(grid, |dr, dc| dr * dr + dc * dc <= radius * radius)
        }
        ShapeKind::Annulus => {
            let outer = 0.35 * scale * m;
            let inner = 0.6 * outer;
            raster(grid, |dr, dc| {
                let rr = dr * dr + dc * dc;
                rr <= outer * outer && rr > inner * inner
            })
        }
        ShapeKind::Ellipse => {
            let semi_major = 0.45 * scale * m;
            let semi_minor = 0.5 * semi_major;
            raster(grid, |dr, dc| {
                let x = dc / semi_major;
                let y = dr / semi_minor;
                x * x + y * y <= 1.0
            })
        }
        ShapeKind::Square => {
            let half = 0.3 * scale * m;
            raster(grid, |dr, dc| dr.abs() <= half && dc.abs() <= half)
        }
        ShapeKind::Star => {
            let outer = 0.45 * scale * m;
            let inner = 0.24 * scale * m;
            let vertices: Vec<(f64, f64)> = (0..10)
                .map(|k| {
                    let angle = -std::f64::consts::FRAC_PI_2
                        + k as f64 * std::f64::consts::PI / 5.0;
                    let radius = if k % 2 == 0 { outer } else { inner };
                    (radius * angle.cos(), radius * angle.sin())
                })
                .collect();
            raster(grid, |dr, dc| point_in_polygon(dc, dr, &vertices))
        }
        ShapeKind::Tiles => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pitch = ((0.15 * scale * m).round() as usize).max(3);
            let cells = 5usize;
            let span = cells * pitch;
            let origin = (grid.saturating_sub(span)) / 2;
            let mut mask = BinaryMask::new(grid, grid);
            for u in 0..cells {
                for v in 0..cells {
                    let lo = ((0.65 * pitch as f64).round() as usize).max(1);
                    let hi = ((0.85 * pitch as f64).round() as usize)
                        .min(pitch - 2)
                        .max(lo);
                    let h = rng.gen_range(lo..=hi);
                    let w = rng.gen_range(lo..=hi);
                    let jr = rng.gen_range(0..=(pitch - 1 - h));
                    let jc = rng.gen_range(0..=(pitch - 1 - w));
                    let r0 = origin + u * pitch + jr;
                    let c0 = origin + v * pitch + jc;
                    for r in r0..(r0 + h).min(grid) {
                        for cc in c0..(c0 + w).min(grid) {
                            mask.set(r, cc, true);
                        }
                    }
                }
            }
            mask
        }
        ShapeKind::Blobs => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut disks: Vec<(f64, f64, f64)> = (0..5)
                .map(|_| {
                    let radius = (0.12 + 0.08 * rng.gen::<f64>()) * scale * m;
                    let dr = (rng.gen::<f64>() * 2.0 - 1.0) * 0.22 * scale * m;
                    let dc = (rng.gen::<f64>() * 2.0 - 1.0) * 0.22 * scale * m;
                    (dr, dc, radius)
                })
                .collect();
            // Recenter on the mean so the union stays centered, clamping to
            // keep every disk inside the 5% margin.
            let mean_r = disks.iter().map(|d| d.0).sum::<f64>() / disks.len() as f64;
            let mean_c = disks.iter().map(|d| d.1).sum::<f64>() / disks.len() as f64;
            for d in &mut disks {
                let reach = 0.25 * scale * m;
                d.0 = (d.0 - mean_r).clamp(-reach, reach);
                d.1 = (d.1 - mean_c).clamp(-reach, reach);
                d.2 = d.2.min(0.45 * scale * m - d.0.abs().max(d.1.abs()));
            }
            raster(grid, |dr, dc| {
                disks.iter().any(|&(br, bc, radius)| {
                    let x = dr - br;
                    let y = dc - bc;
                    x * x + y * y <= radius * radius
                })
            })
        }
        ShapeKind::LinesAndCircles => {
            let thickness = (0.015 * scale * m).max(0.75);
            let reach = 0.40 * scale * m;
            let rings = [0.30 * scale * m, 0.20 * scale * m, 0.10 * scale * m];
            raster(grid, |dr, dc| {
                let radial = (dr * dr + dc * dc).sqrt();
                let in_ring = rings.iter().any(|&rr| (radial - rr).abs() <= thickness);
                let in_frame = (dr.abs() - reach).abs() <= thickness && dc.abs() <= reach
                    || (dc.abs() - reach).abs() <= thickness && dr.abs() <= reach;
                let in_cross =
                    dr.abs() <= thickness && dc.abs() <= reach || dc.abs() <= thickness && dr.abs() <= reach;
                in_ring || in_frame || in_cross
            })
        }
    };
    Ok(mask)
}

fn raster(grid: usize, inside: impl Fn(f64, f64) -> bool) -> BinaryMask {
    let c = (grid as f64 - 1.0) / 2.0;
    BinaryMask::from_fn(grid, grid, |m, n| {
        let dr = m as f64 - c;
        let dc = n as f64 - c;
        inside(dr, dc)
    })
}

/// Even-odd ray casting; `(x, y)` against polygon vertices in order.
fn point_in_polygon(x: f64, y: f64, vertices: &[(f64, f64)]) -> bool {
    let mut inside = false;
    let n = vertices.len();
    let mut j = n - 1;
    for i in 0..n {
        let (xi, yi) = vertices[i];
        let (xj, yj) = vertices[j];
        if (yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi {
            inside = !inside;
        }
        j = i;
    }
    inside
}

/// Area, perimeter and component count of a mask, in lattice units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolMeasure {
    /// Pixel count scaled by `a/M`.
    pub area: f64,
    /// Chain length scaled by `√(a/M)`.
    pub perimeter: f64,
    /// Number of 8-connected components.
    pub components: usize,
    pub raw_pixels: usize,
    pub raw_chain: f64,
}

/// Measure a symbol against its lattice.
///
/// The perimeter is the summed chain-code length (1 per axis step, √2 per
/// diagonal step) over every traced boundary, exterior and interior alike,
/// so multiply-connected symbols count their hole boundaries.
pub fn measure(mask: &BinaryMask, lattice: &LatticeParams) -> Result<SymbolMeasure> {
    if mask.channels() != lattice.channels() || mask.shifts() != lattice.shifts() {
        return Err(Error::DimensionMismatch(format!(
            "mask is {}x{} but the lattice needs {}x{}",
            mask.channels(),
            mask.shifts(),
            lattice.channels(),
            lattice.shifts()
        )));
    }
    let raw_pixels = mask.count_ones();
    let boundaries = trace_boundaries(mask);
    let mut raw_chain = 0.0;
    let mut degenerate = 0usize;
    for b in &boundaries {
        raw_chain += b.chain_length;
        if b.is_outer && b.enclosed_area < 0.5 && b.pixel_count >= 1 {
            degenerate += 1;
        }
    }
    if degenerate > 0 {
        log::warn!(
            "{degenerate} degenerate component(s) (isolated pixels or 1-px lines) in symbol; \
             chain-code perimeter uses the 2(n-1) convention for them"
        );
    }
    let components = count_components(mask);
    let ratio = lattice.time_hop() as f64 / lattice.channels() as f64;
    Ok(SymbolMeasure {
        area: raw_pixels as f64 * ratio,
        perimeter: raw_chain * ratio.sqrt(),
        components,
        raw_pixels,
        raw_chain,
    })
}

struct Boundary {
    chain_length: f64,
    enclosed_area: f64,
    pixel_count: usize,
    is_outer: bool,
}

/// Clockwise direction table in (row, col) steps: W, NW, N, NE, E, SE, S, SW.
const DIRS: [(i64, i64); 8] = [
    (0, -1),
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
];

fn dir_index(dr: i64, dc: i64) -> usize {
    DIRS.iter()
        .position(|&d| d == (dr, dc))
        .expect("unit neighborhood step")
}

/// Border following in the Suzuki-Abe style: raster scan starts an outer
/// border at a foreground pixel with background to the west and a hole
/// border at one with background to the east, with visited marks preventing
/// duplicates. Each border is walked pixel-to-pixel, which yields exactly
/// the chain-code semantics (degenerate lines are walked down and back).
fn trace_boundaries(mask: &BinaryMask) -> Vec<Boundary> {
    let rows = mask.channels() as i64;
    let cols = mask.shifts() as i64;
    let mut field: Vec<i32> = (0..rows * cols)
        .map(|i| {
            let (r, c) = (i / cols, i % cols);
            i32::from(mask.get(r as usize, c as usize))
        })
        .collect();
    let at = |field: &Vec<i32>, r: i64, c: i64| -> i32 {
        if r < 0 || r >= rows || c < 0 || c >= cols {
            0
        } else {
            field[(r * cols + c) as usize]
        }
    };

    let mut boundaries = Vec::new();
    let mut border_number = 1i32;

    for r in 0..rows {
        for c in 0..cols {
            let value = field[(r * cols + c) as usize];
            let (start_adj, is_outer) = if value == 1 && at(&field, r, c - 1) == 0 {
                ((r, c - 1), true)
            } else if value >= 1 && at(&field, r, c + 1) == 0 {
                ((r, c + 1), false)
            } else {
                continue;
            };
            border_number += 1;

            // Clockwise scan from the known-background start neighbor.
            let base = dir_index(start_adj.0 - r, start_adj.1 - c);
            let first = (0..8).find_map(|k| {
                let d = DIRS[(base + k) % 8];
                let (nr, nc) = (r + d.0, c + d.1);
                (at(&field, nr, nc) != 0).then_some((nr, nc))
            });

            let Some(first) = first else {
                // Isolated pixel: zero chain, zero enclosed area.
                field[(r * cols + c) as usize] = -border_number;
                boundaries.push(Boundary {
                    chain_length: 0.0,
                    enclosed_area: 0.0,
                    pixel_count: 1,
                    is_outer,
                });
                continue;
            };

            let start = (r, c);
            let mut prev = first;
            let mut curr = start;
            let mut chain = 0.0;
            let mut shoelace = 0.0;
            let mut pixel_count = 0usize;
            loop {
                pixel_count += 1;
                // Counter-clockwise scan from the previous pixel.
                let base = dir_index(prev.0 - curr.0, prev.1 - curr.1);
                let next = (0..8)
                    .rev()
                    .find_map(|k| {
                        let d = DIRS[(base + k) % 8];
                        let (nr, nc) = (curr.0 + d.0, curr.1 + d.1);
                        (at(&field, nr, nc) != 0).then_some((nr, nc))
                    })
                    .expect("a border pixel always has the previous pixel as neighbor");

                // Mark: negative when the east neighbor was examined as
                // background during this rotation (Suzuki-Abe bookkeeping).
                let mut east_examined = curr.1 + 1 == cols;
                for k in (0..8).rev() {
                    let d = DIRS[(base + k) % 8];
                    if (curr.0 + d.0, curr.1 + d.1) == next {
                        break;
                    }
                    if d == (0, 1) {
                        east_examined = true;
                        break;
                    }
                }
                let idx = (curr.0 * cols + curr.1) as usize;
                if east_examined {
                    field[idx] = -border_number;
                } else if field[idx] == 1 {
                    field[idx] = border_number;
                }

                chain += step_length(curr, next);
                shoelace += (curr.1 * next.0 - next.1 * curr.0) as f64;

                if next == start && curr == first {
                    break;
                }
                prev = curr;
                curr = next;
            }
            boundaries.push(Boundary {
                chain_length: chain,
                enclosed_area: 0.5 * shoelace.abs(),
                pixel_count,
                is_outer,
            });
        }
    }
    boundaries
}

fn step_length(a: (i64, i64), b: (i64, i64)) -> f64 {
    if (a.0 - b.0).abs() + (a.1 - b.1).abs() == 2 {
        std::f64::consts::SQRT_2
    } else {
        1.0
    }
}

fn count_components(mask: &BinaryMask) -> usize {
    let rows = mask.channels();
    let cols = mask.shifts();
    let mut seen = vec![false; rows * cols];
    let mut components = 0;
    let mut stack = Vec::new();
    for start in 0..rows * cols {
        if seen[start] || !mask.get(start / cols, start % cols) {
            continue;
        }
        components += 1;
        seen[start] = true;
        stack.push(start);
        while let Some(p) = stack.pop() {
            let (r, c) = ((p / cols) as i64, (p % cols) as i64);
            for d in DIRS {
                let (nr, nc) = (r + d.0, c + d.1);
                if nr < 0 || nr >= rows as i64 || nc < 0 || nc >= cols as i64 {
                    continue;
                }
                let q = (nr as usize) * cols + nc as usize;
                if !seen[q] && mask.get(nr as usize, nc as usize) {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
    }
    components
}
