//! The frame-multiplier experiment pipeline: build a symbol and lattice,
//! assemble the Parseval-normalized multiplier, decompose it, measure the
//! symbol geometry, and compare the spectrum against the measured erfc
//! profile. Artifacts (eigenvalue CSV, SVG plot, report CSV) are written
//! deterministically so identical configs yield identical bytes.

use std::path::{Path, PathBuf};

use plunge_core::{
    frame_multiplier, hermitian_eig, linf_profile_error, load_mask, make_shape, measure,
    plunge_stats, BinaryMask, ErfcProfile, Error, LatticeParams, PlungeStats, Result, ShapeKind,
    Spectrum, SymbolMeasure, Window, DEFAULT_EIG_TOL, MAX_EIG_DIM,
};

use crate::csvio::{fmt, Csv};
use crate::svg;

/// Where the binary symbol comes from.
#[derive(Debug, Clone)]
pub enum SymbolSource {
    Shape { kind: ShapeKind, scale: f64 },
    MaskFile(PathBuf),
}

impl SymbolSource {
    pub fn label(&self) -> String {
        match self {
            SymbolSource::Shape { kind, .. } => kind.name().to_string(),
            SymbolSource::MaskFile(path) => path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "mask".into()),
        }
    }
}

/// Window selection; the box width falls back to the even-rounded √L.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowChoice {
    Gauss,
    Box { width: Option<usize> },
}

impl WindowChoice {
    pub fn build(&self, len: usize) -> Result<Window> {
        match self {
            WindowChoice::Gauss => Window::periodized_gaussian(len),
            WindowChoice::Box { width } => {
                Window::boxcar(len, width.unwrap_or_else(|| Window::default_box_width(len)))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WindowChoice::Gauss => "gauss",
            WindowChoice::Box { .. } => "box",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub symbol: SymbolSource,
    pub time_hop: usize,
    pub channels: usize,
    pub window: WindowChoice,
    pub delta: f64,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub want_vectors: bool,
}

impl ExperimentConfig {
    pub fn new(symbol: SymbolSource, time_hop: usize, channels: usize, out_dir: &Path) -> Self {
        Self {
            symbol,
            time_hop,
            channels,
            window: WindowChoice::Gauss,
            delta: 0.1,
            seed: 0x5EED,
            out_dir: out_dir.to_path_buf(),
            want_vectors: false,
        }
    }

    pub fn label(&self) -> String {
        format!(
            "{}_a{}_M{}_{}",
            self.symbol.label(),
            self.time_hop,
            self.channels,
            self.window.name()
        )
    }

    fn validate(&self) -> Result<LatticeParams> {
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(Error::Domain {
                value: self.delta,
                domain: "(0, 1/2)",
            });
        }
        let lattice = LatticeParams::new(self.time_hop, self.channels)?;
        if lattice.signal_len() > MAX_EIG_DIM {
            return Err(Error::InvalidParameter(format!(
                "signal length {} exceeds the supported {MAX_EIG_DIM}",
                lattice.signal_len()
            )));
        }
        Ok(lattice)
    }
}

/// Scalar results of one experiment, with paths to the emitted artifacts.
#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub label: String,
    pub measure: SymbolMeasure,
    pub linf_error: f64,
    pub plunge: PlungeStats,
    /// perimeter / plunge count; `None` when the plunge region is empty.
    pub ratio: Option<f64>,
    pub residual: f64,
    pub eigenvalues_csv: PathBuf,
    pub plot_svg: PathBuf,
    pub report_csv: PathBuf,
}

/// Full outcome: the report plus the in-memory objects downstream
/// consumers (spectrogram, acceptance checks) need.
pub struct ExperimentOutcome {
    pub report: ExperimentReport,
    pub spectrum: Spectrum,
    pub mask: BinaryMask,
    pub profile: ErfcProfile,
    pub window: Window,
    pub lattice: LatticeParams,
}

pub fn build_symbol(config: &ExperimentConfig, lattice: &LatticeParams) -> Result<BinaryMask> {
    let mask = match &config.symbol {
        SymbolSource::Shape { kind, scale } => {
            make_shape(*kind, lattice.channels(), *scale, config.seed)?
        }
        SymbolSource::MaskFile(path) => load_mask(path)?,
    };
    if mask.channels() != lattice.channels() || mask.shifts() != lattice.shifts() {
        return Err(Error::DimensionMismatch(format!(
            "symbol is {}x{} but the lattice needs {}x{}",
            mask.channels(),
            mask.shifts(),
            lattice.channels(),
            lattice.shifts()
        )));
    }
    Ok(mask)
}

/// Run one experiment end to end and write its artifacts.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    let lattice = config.validate()?;
    let mask = build_symbol(config, &lattice)?;
    let window = config.window.build(lattice.signal_len())?;

    let multiplier = frame_multiplier(&mask, &window, &lattice, true)?;
    let spectrum = hermitian_eig(multiplier.matrix(), config.want_vectors, DEFAULT_EIG_TOL)?;

    let symbol_measure = measure(&mask, &lattice)?;
    let profile = ErfcProfile::new(symbol_measure.area, symbol_measure.perimeter)?;
    let linf = linf_profile_error(&spectrum, &profile);
    let plunge = plunge_stats(&spectrum, config.delta)?;
    let ratio = (plunge.count > 0).then(|| symbol_measure.perimeter / plunge.count as f64);

    let label = config.label();
    std::fs::create_dir_all(&config.out_dir)?;
    let eigenvalues_csv = config.out_dir.join(format!("{label}_eigenvalues.csv"));
    let plot_svg = config.out_dir.join(format!("{label}_plot.svg"));
    let report_csv = config.out_dir.join(format!("{label}_report.csv"));

    let profile_samples: Vec<f64> = (1..=spectrum.len())
        .map(|k| profile.eval(k as f64))
        .collect();

    let mut csv = Csv::new(vec!["k", "eigenvalue", "erfc_profile", "abs_error"]);
    for (i, &value) in spectrum.eigenvalues().iter().enumerate() {
        csv.push(vec![
            (i + 1).to_string(),
            fmt(value),
            fmt(profile_samples[i]),
            fmt((value - profile_samples[i]).abs()),
        ]);
    }
    csv.write(&eigenvalues_csv)?;

    let band = match (plunge.first_index, plunge.last_index) {
        (Some(first), Some(last)) => Some((first + 1, last + 1)),
        _ => None,
    };
    let title = format!(
        "{} symbol, a = {}, M = {}, {} window",
        config.symbol.label(),
        config.time_hop,
        config.channels,
        config.window.name()
    );
    let svg_text = svg::eigenvalue_plot(&title, spectrum.eigenvalues(), &profile_samples, band);
    std::fs::write(&plot_svg, svg_text)?;

    let mut report = Csv::new(vec![
        "symbol",
        "a",
        "M",
        "L",
        "window",
        "area",
        "perimeter",
        "components",
        "plunge_count",
        "ratio",
        "linf_error",
        "residual",
    ]);
    report.push(vec![
        config.symbol.label(),
        config.time_hop.to_string(),
        config.channels.to_string(),
        lattice.signal_len().to_string(),
        config.window.name().to_string(),
        fmt(symbol_measure.area),
        fmt(symbol_measure.perimeter),
        symbol_measure.components.to_string(),
        plunge.count.to_string(),
        ratio.map(fmt).unwrap_or_default(),
        fmt(linf),
        fmt(spectrum.residual()),
    ]);
    report.write(&report_csv)?;

    Ok(ExperimentOutcome {
        report: ExperimentReport {
            label,
            measure: symbol_measure,
            linf_error: linf,
            plunge,
            ratio,
            residual: spectrum.residual(),
            eigenvalues_csv,
            plot_svg,
            report_csv,
        },
        spectrum,
        mask,
        profile,
        window,
        lattice,
    })
}
