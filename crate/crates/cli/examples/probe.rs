use plunge_cli::experiment::*;
use plunge_core::ShapeKind;
use std::time::Instant;

fn main() {
    let kind: ShapeKind = std::env::args().nth(1).unwrap_or("disk".into()).parse().unwrap();
    let a: usize = std::env::args().nth(2).map(|s| s.parse().unwrap()).unwrap_or(10);
    let m: usize = std::env::args().nth(3).map(|s| s.parse().unwrap()).unwrap_or(100);
    let window = std::env::args().nth(4).unwrap_or("gauss".into());
    let t0 = Instant::now();
    let mut config = ExperimentConfig::new(
        SymbolSource::Shape { kind, scale: 1.0 },
        a,
        m,
        std::path::Path::new("/tmp/probe_out"),
    );
    if window == "box" {
        config.window = WindowChoice::Box { width: None };
    }
    let outcome = run_experiment(&config).unwrap();
    let r = &outcome.report;
    println!(
        "{} a={} M={} window={}: linf={:.5} ratio={:?} count={} area={:.2} perim={:.2} comps={} residual={:.2e} [{:.1?}]",
        r.label, a, m, window,
        r.linf_error, r.ratio, r.plunge.count,
        r.measure.area, r.measure.perimeter, r.measure.components,
        r.residual, t0.elapsed()
    );
}
