use plunge_core::*;
use std::time::Instant;

fn main() {
    // Projection-like: QL on clustered spectra {0,1}.
    for n in [64usize, 256, 512] {
        let lattice = LatticeParams::new(4, n / 4).unwrap();
        let w = Window::periodized_gaussian(lattice.signal_len()).unwrap();
        let symbol = make_shape(ShapeKind::Disk, lattice.channels(), 1.0, 0).unwrap();
        let mult = frame_multiplier(&symbol, &w, &lattice, true).unwrap();
        let t = Instant::now();
        match hermitian_eig(mult.matrix(), false, DEFAULT_EIG_TOL) {
            Ok(s) => println!(
                "n={}: ok, residual {:.2e}, lambda[0] = {:.6}, time {:.1?}",
                lattice.signal_len(), s.residual(), s.eigenvalues()[0], t.elapsed()
            ),
            Err(e) => println!("n={}: FAILED {e}", lattice.signal_len()),
        }
    }
}
