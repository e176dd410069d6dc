//! Netpbm I/O for masks and images: PBM (P1/P4) and PGM (P2/P5) readers,
//! a PBM (P4) mask writer, and a PPM (P6) RGB writer.
//!
//! Masks map image rows to frequency channels and columns to time shifts.
//! PBM bit 1 means a set pixel; PGM pixels are thresholded at 50% of
//! maxval. Mask files carry no lattice metadata.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::mask::BinaryMask;

struct Scanner<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self { data, pos: 0 }
    }

    fn skip_separators(&mut self) {
        loop {
            while self.pos < self.data.len() && self.data[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.data.len() && self.data[self.pos] == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                return;
            }
        }
    }

    fn next_number(&mut self) -> Result<usize> {
        self.skip_separators();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedImage("expected a number".into()));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedImage("unreadable number".into()))
    }

    /// P1 bitmaps may pack digits without separators.
    fn next_bit(&mut self) -> Result<bool> {
        self.skip_separators();
        if self.pos >= self.data.len() {
            return Err(Error::MalformedImage("truncated bitmap raster".into()));
        }
        let byte = self.data[self.pos];
        self.pos += 1;
        match byte {
            b'0' => Ok(false),
            b'1' => Ok(true),
            other => Err(Error::MalformedImage(format!(
                "unexpected byte {other:#x} in bitmap raster"
            ))),
        }
    }

    /// Binary rasters start after exactly one whitespace byte.
    fn raster(&mut self) -> Result<&'a [u8]> {
        if self.pos >= self.data.len() || !self.data[self.pos].is_ascii_whitespace() {
            return Err(Error::MalformedImage(
                "missing separator before binary raster".into(),
            ));
        }
        Ok(&self.data[self.pos + 1..])
    }
}

fn read_dimensions(scanner: &mut Scanner) -> Result<(usize, usize)> {
    let width = scanner.next_number()?;
    let height = scanner.next_number()?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedImage(format!(
            "non-positive dimensions {width}x{height}"
        )));
    }
    Ok((width, height))
}

/// Read a PBM (P1/P4) or PGM (P2/P5) file as a binary mask.
pub fn load_mask(path: &Path) -> Result<BinaryMask> {
    let data = fs::read(path)?;
    if data.len() < 2 {
        return Err(Error::MalformedImage("file too short for a magic".into()));
    }
    let magic = &data[..2];
    let mut scanner = Scanner::new(&data[2..]);
    match magic {
        b"P1" => {
            let (width, height) = read_dimensions(&mut scanner)?;
            let mut mask = BinaryMask::new(height, width);
            for m in 0..height {
                for n in 0..width {
                    mask.set(m, n, scanner.next_bit()?);
                }
            }
            Ok(mask)
        }
        b"P4" => {
            let (width, height) = read_dimensions(&mut scanner)?;
            let raster = scanner.raster()?;
            let row_bytes = width.div_ceil(8);
            if raster.len() < row_bytes * height {
                return Err(Error::MalformedImage("truncated P4 raster".into()));
            }
            let mut mask = BinaryMask::new(height, width);
            for m in 0..height {
                let row = &raster[m * row_bytes..(m + 1) * row_bytes];
                for n in 0..width {
                    let bit = (row[n / 8] >> (7 - n % 8)) & 1;
                    mask.set(m, n, bit == 1);
                }
            }
            Ok(mask)
        }
        b"P2" => {
            let (width, height) = read_dimensions(&mut scanner)?;
            let maxval = scanner.next_number()?;
            if maxval == 0 || maxval > 65535 {
                return Err(Error::MalformedImage(format!("bad maxval {maxval}")));
            }
            let mut mask = BinaryMask::new(height, width);
            for m in 0..height {
                for n in 0..width {
                    let v = scanner.next_number()?;
                    mask.set(m, n, 2 * v > maxval);
                }
            }
            Ok(mask)
        }
        b"P5" => {
            let (width, height) = read_dimensions(&mut scanner)?;
            let maxval = scanner.next_number()?;
            if maxval == 0 || maxval > 65535 {
                return Err(Error::MalformedImage(format!("bad maxval {maxval}")));
            }
            let raster = scanner.raster()?;
            let bytes_per = if maxval < 256 { 1 } else { 2 };
            if raster.len() < width * height * bytes_per {
                return Err(Error::MalformedImage("truncated P5 raster".into()));
            }
            let mut mask = BinaryMask::new(height, width);
            for m in 0..height {
                for n in 0..width {
                    let i = (m * width + n) * bytes_per;
                    let v = if bytes_per == 1 {
                        raster[i] as usize
                    } else {
                        ((raster[i] as usize) << 8) | raster[i + 1] as usize
                    };
                    mask.set(m, n, 2 * v > maxval);
                }
            }
            Ok(mask)
        }
        other => Err(Error::MalformedImage(format!(
            "unsupported magic {:?}",
            String::from_utf8_lossy(other)
        ))),
    }
}

/// Write a mask as binary PBM (P4); round-trips through [`load_mask`].
pub fn save_mask(mask: &BinaryMask, path: &Path) -> Result<()> {
    let width = mask.shifts();
    let height = mask.channels();
    let row_bytes = width.div_ceil(8);
    let mut out = format!("P4\n{width} {height}\n").into_bytes();
    for m in 0..height {
        let mut row = vec![0u8; row_bytes];
        for n in 0..width {
            if mask.get(m, n) {
                row[n / 8] |= 1 << (7 - n % 8);
            }
        }
        out.extend_from_slice(&row);
    }
    fs::write(path, out)?;
    Ok(())
}

/// Write an RGB image as binary PPM (P6). Channel values are clamped to
/// [0, 1] and quantized to 8 bits; all three channel slices are row-major
/// `height × width`.
pub fn write_ppm(
    path: &Path,
    width: usize,
    height: usize,
    red: &[f64],
    green: &[f64],
    blue: &[f64],
) -> Result<()> {
    let pixels = width * height;
    if red.len() != pixels || green.len() != pixels || blue.len() != pixels {
        return Err(Error::DimensionMismatch(format!(
            "channel buffers must hold {pixels} values"
        )));
    }
    let quantize = |v: f64| (v.clamp(0.0, 1.0) * 255.0).round() as u8;
    let mut out = format!("P6\n{width} {height}\n255\n").into_bytes();
    out.reserve(3 * pixels);
    for i in 0..pixels {
        out.push(quantize(red[i]));
        out.push(quantize(green[i]));
        out.push(quantize(blue[i]));
    }
    fs::write(path, out)?;
    Ok(())
}
