//! Discrete Gabor analysis on a separable lattice: window construction,
//! time-frequency atoms, the discrete Gabor transform, the frame operator
//! and its Parseval normalization, and binary-symbol frame multipliers.
//!
//! Conventions: signal length `L = a·M` with time hop `a` and `M` frequency
//! channels, so there are `N = L/a = M` time shifts. The atom at lattice
//! point `(n, m)` is `l ↦ e^{2πi m l / M} · w[(l − n a) mod L]`.

use num_complex::Complex64;

use crate::eig::{hermitian_eig, DEFAULT_EIG_TOL};
use crate::error::{Error, Result};
use crate::mask::BinaryMask;
use crate::matrix::ComplexMatrix;

/// Separable Gabor lattice: time hop `a`, channels `M`, length `L = a·M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeParams {
    time_hop: usize,
    channels: usize,
}

impl LatticeParams {
    pub fn new(time_hop: usize, channels: usize) -> Result<Self> {
        if time_hop == 0 || channels == 0 {
            return Err(Error::InvalidParameter(
                "lattice parameters must be positive".into(),
            ));
        }
        if time_hop >= channels {
            return Err(Error::InvalidParameter(format!(
                "redundancy M/a must exceed 1 for a frame; got a = {time_hop}, M = {channels}"
            )));
        }
        Ok(Self { time_hop, channels })
    }

    pub fn time_hop(&self) -> usize {
        self.time_hop
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn signal_len(&self) -> usize {
        self.time_hop * self.channels
    }

    pub fn shifts(&self) -> usize {
        self.channels
    }

    pub fn redundancy(&self) -> f64 {
        self.channels as f64 / self.time_hop as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Gauss,
    Box { width: usize },
    Custom,
}

/// Length-L window vector. The public constructors normalize to unit ℓ²
/// norm; [`tight_window`] returns the Parseval-scaled variant whose norm is
/// `√(a/M)` by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    values: Vec<Complex64>,
    kind: WindowKind,
}

impl Window {
    /// Periodized Gaussian `values[l] ∝ Σ_j exp(−π(l + jL)²/L)` on the
    /// signed coordinates {−L/2, …, L/2−1} stored circularly. Self-dual
    /// under the unitary DFT.
    pub fn periodized_gaussian(len: usize) -> Result<Self> {
        if len < 4 {
            return Err(Error::InvalidParameter(format!(
                "periodized Gaussian needs length >= 4, got {len}"
            )));
        }
        let l = len as f64;
        // Dropped periodization tails are below 1e-15 with this reach.
        let reach = ((36.0 * l / std::f64::consts::PI).sqrt() / l).ceil() as i64 + 1;
        let mut values = Vec::with_capacity(len);
        for i in 0..len {
            let coord = signed_coordinate(i, len) as f64;
            let mut acc = 0.0;
            for j in -reach..=reach {
                let t = coord + j as f64 * l;
                acc += (-std::f64::consts::PI * t * t / l).exp();
            }
            values.push(Complex64::new(acc, 0.0));
        }
        Ok(Self::normalized(values, WindowKind::Gauss))
    }

    /// Box window: `width` contiguous circular samples centered at zero,
    /// each `1/√width`.
    pub fn boxcar(len: usize, width: usize) -> Result<Self> {
        if width == 0 || width > len {
            return Err(Error::InvalidParameter(format!(
                "box width must lie in [1, {len}], got {width}"
            )));
        }
        let mut values = vec![Complex64::new(0.0, 0.0); len];
        let amplitude = 1.0 / (width as f64).sqrt();
        let half = (width / 2) as i64;
        for offset in 0..width as i64 {
            let idx = (offset - half).rem_euclid(len as i64) as usize;
            values[idx] = Complex64::new(amplitude, 0.0);
        }
        Ok(Self {
            values,
            kind: WindowKind::Box { width },
        })
    }

    /// User-provided window, normalized to unit ℓ² norm.
    pub fn custom(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidParameter("empty window".into()));
        }
        let norm = l2_norm(&values);
        if norm < 1e-12 {
            return Err(Error::InvalidParameter(
                "window norm too small to normalize".into(),
            ));
        }
        Ok(Self::normalized(values, WindowKind::Custom))
    }

    fn normalized(mut values: Vec<Complex64>, kind: WindowKind) -> Self {
        let norm = l2_norm(&values);
        for v in &mut values {
            *v /= norm;
        }
        Self { values, kind }
    }

    pub(crate) fn raw(values: Vec<Complex64>, kind: WindowKind) -> Self {
        Self { values, kind }
    }

    /// Default box width: √L rounded to the nearest even integer, the
    /// natural time width of the periodized Gaussian.
    pub fn default_box_width(len: usize) -> usize {
        let w = ((len as f64).sqrt() / 2.0).round() as usize * 2;
        w.clamp(2, len)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.values)
    }
}

fn l2_norm(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Signed circular coordinate for storage index `i`: {−L/2, …, L/2−1}.
fn signed_coordinate(i: usize, len: usize) -> i64 {
    if i < (len + 1) / 2 {
        i as i64
    } else {
        i as i64 - len as i64
    }
}

/// `e^{2πi q / m}` for `q` in `[0, m)`.
fn unit_roots(m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|q| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * q as f64 / m as f64))
        .collect()
}

/// Time-frequency atom at time shift `n`, frequency channel `m`.
pub fn gabor_atom(
    window: &Window,
    lattice: &LatticeParams,
    n: usize,
    m: usize,
) -> Result<Vec<Complex64>> {
    check_window(window, lattice)?;
    if n >= lattice.shifts() || m >= lattice.channels() {
        return Err(Error::InvalidParameter(format!(
            "lattice index ({n}, {m}) outside {}x{}",
            lattice.shifts(),
            lattice.channels()
        )));
    }
    let len = lattice.signal_len();
    let channels = lattice.channels();
    let roots = unit_roots(channels);
    let shift = n * lattice.time_hop();
    let w = window.values();
    Ok((0..len)
        .map(|l| roots[(m * l) % channels] * w[(l + len - shift) % len])
        .collect())
}

/// M×N complex coefficient grid, row = frequency channel, column = time shift.
#[derive(Debug, Clone, PartialEq)]
pub struct TfGrid {
    channels: usize,
    shifts: usize,
    data: Vec<Complex64>,
}

impl TfGrid {
    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn shifts(&self) -> usize {
        self.shifts
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.data[m * self.shifts + n]
    }

    /// Σ |c[m,n]|².
    pub fn energy(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// |c[m,n]|² grid, row-major.
    pub fn power(&self) -> Vec<f64> {
        self.data.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn max_power_index(&self) -> (usize, usize) {
        let (idx, _) = self
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .expect("non-empty grid");
        (idx / self.shifts, idx % self.shifts)
    }
}

/// Discrete Gabor transform `c[m,n] = ⟨f, atom(n, m)⟩`.
///
/// The length-L inner sums are folded onto residues mod M first, which is
/// an exact regrouping of the direct summation.
pub fn dgt(signal: &[Complex64], window: &Window, lattice: &LatticeParams) -> Result<TfGrid> {
    check_window(window, lattice)?;
    let len = lattice.signal_len();
    if signal.len() != len {
        return Err(Error::DimensionMismatch(format!(
            "signal length {} does not match lattice length {len}",
            signal.len()
        )));
    }
    let channels = lattice.channels();
    let shifts = lattice.shifts();
    let hop = lattice.time_hop();
    let w = window.values();
    let conj_roots: Vec<Complex64> = unit_roots(channels).iter().map(|z| z.conj()).collect();
    let mut data = vec![Complex64::new(0.0, 0.0); channels * shifts];
    let mut folded = vec![Complex64::new(0.0, 0.0); channels];
    for n in 0..shifts {
        let shift = n * hop;
        for v in folded.iter_mut() {
            *v = Complex64::new(0.0, 0.0);
        }
        for l in 0..len {
            let win = w[(l + len - shift) % len];
            folded[l % channels] += signal[l] * win.conj();
        }
        for m in 0..channels {
            let mut acc = Complex64::new(0.0, 0.0);
            for (d, h) in folded.iter().enumerate() {
                acc += h * conj_roots[(m * d) % channels];
            }
            data[m * shifts + n] = acc;
        }
    }
    Ok(TfGrid {
        channels,
        shifts,
        data,
    })
}

fn check_window(window: &Window, lattice: &LatticeParams) -> Result<()> {
    if window.len() != lattice.signal_len() {
        return Err(Error::DimensionMismatch(format!(
            "window length {} does not match lattice length {}",
            window.len(),
            lattice.signal_len()
        )));
    }
    Ok(())
}

/// Shared assembly: `A[i][j] = Σ_n w[i−na] conj(w[j−na]) t_n[(i−j) mod M]`
/// with `t_n[d] = Σ_{m ∈ Ω_n} e^{2πi m d / M}` — an exact regrouping of
/// `Σ_{(m,n) ∈ Ω} atom·atom^H` over the frequency sums.
fn assemble_multiplier(
    symbol: &BinaryMask,
    window_values: &[Complex64],
    lattice: &LatticeParams,
) -> ComplexMatrix {
    let len = lattice.signal_len();
    let channels = lattice.channels();
    let shifts = lattice.shifts();
    let hop = lattice.time_hop();

    // Shifted-window table, layout [l][n] for contiguous n-sums.
    let mut shifted = vec![Complex64::new(0.0, 0.0); len * shifts];
    for l in 0..len {
        let row = &mut shifted[l * shifts..(l + 1) * shifts];
        for (n, slot) in row.iter_mut().enumerate() {
            *slot = window_values[(l + len - n * hop) % len];
        }
    }

    // Per-shift frequency sums, layout [d][n].
    let roots = unit_roots(channels);
    let mut tables = vec![Complex64::new(0.0, 0.0); channels * shifts];
    for n in 0..shifts {
        for m in 0..channels {
            if !symbol.get(m, n) {
                continue;
            }
            for (d, table_row) in tables.chunks_exact_mut(shifts).enumerate() {
                table_row[n] += roots[(m * d) % channels];
            }
        }
    }

    let mut matrix = ComplexMatrix::zeros(len, len);
    for i in 0..len {
        let wi = &shifted[i * shifts..(i + 1) * shifts];
        for j in 0..=i {
            let wj = &shifted[j * shifts..(j + 1) * shifts];
            let table_row = &tables[((i - j) % channels) * shifts..][..shifts];
            let mut acc = Complex64::new(0.0, 0.0);
            for ((x, y), t) in wi.iter().zip(wj).zip(table_row) {
                acc += x * y.conj() * t;
            }
            matrix[(i, j)] = acc;
            matrix[(j, i)] = acc.conj();
        }
    }
    matrix
}

/// Frame operator `S = Σ_{m,n} atom·atom^H` (the all-ones multiplier).
pub fn frame_operator(window: &Window, lattice: &LatticeParams) -> Result<ComplexMatrix> {
    check_window(window, lattice)?;
    let ones = BinaryMask::ones(lattice.channels(), lattice.shifts());
    Ok(assemble_multiplier(&ones, window.values(), lattice))
}

/// Parseval normalization `S^{−1/2}·w`.
///
/// S couples only indices congruent mod M (the frequency sum of unit roots
/// vanishes elsewhere), so S splits into M Hermitian blocks of size a; each
/// block is diagonalized and inverted-square-rooted explicitly. Fails when
/// the smallest eigenvalue of S drops below 1e-10 of the largest.
pub fn tight_window(window: &Window, lattice: &LatticeParams) -> Result<Window> {
    check_window(window, lattice)?;
    let len = lattice.signal_len();
    let channels = lattice.channels();
    let shifts = lattice.shifts();
    let hop = lattice.time_hop();
    let block = len / channels; // = a
    let w = window.values();

    let mut specs = Vec::with_capacity(channels);
    let mut min_eig = f64::INFINITY;
    let mut max_eig = f64::NEG_INFINITY;
    for residue in 0..channels {
        let mut b = ComplexMatrix::zeros(block, block);
        for j in 0..block {
            for k in 0..=j {
                let mut acc = Complex64::new(0.0, 0.0);
                for n in 0..shifts {
                    let shift = n * hop;
                    let x = w[(residue + j * channels + len - shift) % len];
                    let y = w[(residue + k * channels + len - shift) % len];
                    acc += x * y.conj();
                }
                acc *= channels as f64;
                b[(j, k)] = acc;
                b[(k, j)] = acc.conj();
            }
        }
        let spec = hermitian_eig(&b, true, DEFAULT_EIG_TOL)?;
        for &l in spec.eigenvalues() {
            min_eig = min_eig.min(l);
            max_eig = max_eig.max(l);
        }
        specs.push(spec);
    }
    if !(min_eig > 1e-10 * max_eig) {
        return Err(Error::NotAFrame {
            min: min_eig,
            max: max_eig,
        });
    }

    let mut tight = vec![Complex64::new(0.0, 0.0); len];
    for (residue, spec) in specs.iter().enumerate() {
        let vectors = spec.eigenvectors().expect("requested above");
        let w_block: Vec<Complex64> = (0..block).map(|j| w[residue + j * channels]).collect();
        // S^{-1/2} restricted to the block: V diag(λ^{-1/2}) V^H.
        for j in 0..block {
            let mut acc = Complex64::new(0.0, 0.0);
            for (col, &lambda) in spec.eigenvalues().iter().enumerate() {
                let mut dot = Complex64::new(0.0, 0.0);
                for row in 0..block {
                    dot += vectors[(row, col)].conj() * w_block[row];
                }
                acc += vectors[(j, col)] * dot / lambda.sqrt();
            }
            tight[residue + j * channels] = acc;
        }
    }
    Ok(Window::raw(tight, WindowKind::Custom))
}

/// A binary-symbol Gabor frame multiplier with its assembled matrix.
#[derive(Debug, Clone)]
pub struct FrameMultiplier {
    matrix: ComplexMatrix,
    lattice: LatticeParams,
    symbol: BinaryMask,
    normalized: bool,
}

impl FrameMultiplier {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn lattice(&self) -> &LatticeParams {
        &self.lattice
    }

    pub fn symbol(&self) -> &BinaryMask {
        &self.symbol
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }
}

/// Assemble `A = Σ_{m,n} symbol[m,n]·atom(n,m)·atom(n,m)^H`.
///
/// With `normalize` set, the window is Parseval-normalized first (tight
/// window on both analysis and synthesis sides), so the all-ones symbol
/// yields the identity and all eigenvalues land in [0, 1].
pub fn frame_multiplier(
    symbol: &BinaryMask,
    window: &Window,
    lattice: &LatticeParams,
    normalize: bool,
) -> Result<FrameMultiplier> {
    check_window(window, lattice)?;
    if symbol.channels() != lattice.channels() || symbol.shifts() != lattice.shifts() {
        return Err(Error::DimensionMismatch(format!(
            "symbol is {}x{} but the lattice needs {}x{}",
            symbol.channels(),
            symbol.shifts(),
            lattice.channels(),
            lattice.shifts()
        )));
    }
    let values: Vec<Complex64> = if normalize {
        tight_window(window, lattice)?.values().to_vec()
    } else {
        window.values().to_vec()
    };
    let matrix = assemble_multiplier(symbol, &values, lattice);
    Ok(FrameMultiplier {
        matrix,
        lattice: *lattice,
        symbol: symbol.clone(),
        normalized: normalize,
    })
}
