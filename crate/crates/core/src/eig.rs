//! Dense Hermitian eigendecomposition with a residual certificate, plus the
//! plunge-region statistics and profile-error metrics computed from spectra.
//!
//! The solver reduces the complex Hermitian matrix to real symmetric
//! tridiagonal form with Householder reflectors, diagonalizes that with
//! implicit-shift QL iterations while accumulating the unitary transform,
//! and certifies the result by measuring max_k ‖A v_k − λ_k v_k‖₂ directly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::profiles::ErfcProfile;

/// Default relative residual tolerance for [`hermitian_eig`].
pub const DEFAULT_EIG_TOL: f64 = 1e-8;

/// Largest matrix the dense solver accepts.
pub const MAX_EIG_DIM: usize = 4096;

/// Relative Hermitian-asymmetry tolerance on inputs.
const HERMITIAN_INPUT_TOL: f64 = 1e-10;

/// QL iteration budget per eigenvalue.
const QL_MAX_ITER: usize = 50;

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: Option<ComplexMatrix>,
    residual: f64,
}

impl Spectrum {
    /// Assemble a spectrum from already-sorted data (used by tests and by
    /// callers that compute spectra analytically). Order is enforced.
    pub fn from_sorted(eigenvalues: Vec<f64>, residual: f64) -> Result<Self> {
        if eigenvalues.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "spectrum eigenvalues must be non-increasing".into(),
            ));
        }
        Ok(Self {
            eigenvalues,
            eigenvectors: None,
            residual,
        })
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Eigenvalues in non-increasing order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Unitary eigenvector matrix (columns match eigenvalue order), when kept.
    pub fn eigenvectors(&self) -> Option<&ComplexMatrix> {
        self.eigenvectors.as_ref()
    }

    /// max_k ‖A v_k − λ_k v_k‖₂ measured against the input matrix.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Spectral norm (largest eigenvalue magnitude).
    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| l.abs())
            .fold(0.0, f64::max)
    }
}

/// Count and location of eigenvalues strictly inside `(delta, 1 - delta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlungeStats {
    pub delta: f64,
    pub count: usize,
    pub first_index: Option<usize>,
    pub last_index: Option<usize>,
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Eigenvectors are always accumulated internally so the residual
/// certificate can be computed; `want_vectors` only controls whether they
/// are retained in the returned [`Spectrum`]. Fails if the input is not
/// Hermitian to 1e-10 relative, if QL stalls, or if the certified residual
/// exceeds `tol · ‖A‖₂`.
pub fn hermitian_eig(a: &ComplexMatrix, want_vectors: bool, tol: f64) -> Result<Spectrum> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: vec![],
            eigenvectors: Some(ComplexMatrix::zeros(0, 0)),
            residual: 0.0,
        });
    }
    if n > MAX_EIG_DIM {
        return Err(Error::InvalidParameter(format!(
            "matrix dimension {n} exceeds the dense solver limit {MAX_EIG_DIM}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "residual tolerance must be positive, got {tol}"
        )));
    }
    let scale = a.max_abs();
    let defect = a.hermitian_defect();
    if scale > 0.0 && defect > HERMITIAN_INPUT_TOL * scale {
        return Err(Error::NotHermitian {
            asymmetry: defect,
            limit: HERMITIAN_INPUT_TOL * scale,
        });
    }

    // Work on the symmetrized copy; assembly noise below the input
    // tolerance is folded away here.
    let mut work = a.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let h = 0.5 * (work[(i, j)] + work[(j, i)].conj());
            work[(i, j)] = h;
            work[(j, i)] = h.conj();
        }
        let d = work[(i, i)].re;
        work[(i, i)] = Complex64::new(d, 0.0);
    }

    let (mut diag, mut off, mut vectors) = tridiagonalize(&mut work);
    ql_implicit(&mut diag, &mut off, &mut vectors)?;

    // Stable descending order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite").then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut sorted_vectors = ComplexMatrix::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        for r in 0..n {
            sorted_vectors[(r, new)] = vectors[(r, old)];
        }
    }

    let residual = max_residual(a, &sorted_vectors, &eigenvalues);
    let spectral_norm = eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
    if spectral_norm > 0.0 && residual > tol * spectral_norm {
        return Err(Error::NoConvergence(format!(
            "residual {residual:.3e} exceeds {tol:.1e} x spectral norm {spectral_norm:.3e}"
        )));
    }

    Ok(Spectrum {
        eigenvalues,
        eigenvectors: want_vectors.then_some(sorted_vectors),
        residual,
    })
}

/// Householder reduction of a Hermitian matrix to real symmetric
/// tridiagonal form; returns (diagonal, off-diagonal, accumulated unitary).
fn tridiagonalize(work: &mut ComplexMatrix) -> (Vec<f64>, Vec<f64>, ComplexMatrix) {
    let n = work.rows();
    let mut reflectors: Vec<Vec<Complex64>> = Vec::with_capacity(n.saturating_sub(2));
    let mut taus: Vec<f64> = Vec::with_capacity(n.saturating_sub(2));

    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1; // length of the column below the diagonal
        let mut u: Vec<Complex64> = (0..m).map(|i| work[(k + 1 + i, k)]).collect();

        // Scaled norm of the column.
        let col_scale = u.iter().map(|z| z.re.abs() + z.im.abs()).fold(0.0, f64::max);
        if col_scale == 0.0 {
            reflectors.push(Vec::new());
            taus.push(0.0);
            continue;
        }
        let sigma = {
            let mut acc = 0.0;
            for z in &u {
                let zr = z.re / col_scale;
                let zi = z.im / col_scale;
                acc += zr * zr + zi * zi;
            }
            col_scale * acc.sqrt()
        };
        // beta = -phase(u[0]) * sigma, so u[0] - beta never cancels.
        let phase = if u[0].norm() > 0.0 {
            u[0] / u[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let beta = -phase * sigma;
        u[0] -= beta;
        let unorm_sqr: f64 = u.iter().map(|z| z.norm_sqr()).sum();
        if unorm_sqr == 0.0 {
            reflectors.push(Vec::new());
            taus.push(0.0);
            continue;
        }
        let tau = 2.0 / unorm_sqr;

        // p = tau * A u on the trailing block.
        let mut p = vec![Complex64::new(0.0, 0.0); m];
        for i in 0..m {
            let row = &work.row(k + 1 + i)[k + 1..];
            let mut acc = Complex64::new(0.0, 0.0);
            for (r, uj) in row.iter().zip(&u) {
                acc += r * uj;
            }
            p[i] = acc * tau;
        }
        // w = p - (tau/2) (u^H p) u ; u^H A u is real for Hermitian A.
        let udotp: Complex64 = u.iter().zip(&p).map(|(ui, pi)| ui.conj() * pi).sum();
        let half_k = 0.5 * tau * udotp.re;
        let w: Vec<Complex64> = p
            .iter()
            .zip(&u)
            .map(|(pi, ui)| pi - half_k * ui)
            .collect();
        // A <- A - u w^H - w u^H on the trailing block.
        for i in 0..m {
            let ui = u[i];
            let wi = w[i];
            let row = &mut work.row_mut(k + 1 + i)[k + 1..];
            for ((r, uj), wj) in row.iter_mut().zip(&u).zip(&w) {
                *r -= ui * wj.conj() + wi * uj.conj();
            }
        }
        // Column k collapses to the single sub-diagonal entry beta.
        work[(k + 1, k)] = beta;
        work[(k, k + 1)] = beta.conj();
        for i in 1..m {
            work[(k + 1 + i, k)] = Complex64::new(0.0, 0.0);
            work[(k, k + 1 + i)] = Complex64::new(0.0, 0.0);
        }
        reflectors.push(u);
        taus.push(tau);
    }

    // Backward accumulation of Q = H_0 H_1 ... into an identity.
    let mut q = ComplexMatrix::identity(n);
    let mut scratch = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..reflectors.len()).rev() {
        let u = &reflectors[k];
        let tau = taus[k];
        if u.is_empty() || tau == 0.0 {
            continue;
        }
        let lo = k + 1;
        // v = u^H Q over the trailing rows; then Q -= tau u v.
        for s in scratch[lo..].iter_mut() {
            *s = Complex64::new(0.0, 0.0);
        }
        for (i, ui) in u.iter().enumerate() {
            let uc = ui.conj();
            let row = &q.row(lo + i)[lo..];
            for (s, r) in scratch[lo..].iter_mut().zip(row) {
                *s += uc * r;
            }
        }
        for (i, ui) in u.iter().enumerate() {
            let f = tau * ui;
            let row = &mut q.row_mut(lo + i)[lo..];
            for (r, s) in row.iter_mut().zip(&scratch[lo..]) {
                *r -= f * s;
            }
        }
    }

    // Phase-normalize the sub-diagonal to be real nonnegative, folding the
    // unit phases into the columns of Q.
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    for i in 0..n {
        diag[i] = work[(i, i)].re;
    }
    let mut delta = Complex64::new(1.0, 0.0);
    for k in 0..n.saturating_sub(1) {
        let e = work[(k + 1, k)];
        let mag = e.norm();
        off[k] = mag;
        let s = if mag > 0.0 {
            e / mag
        } else {
            Complex64::new(1.0, 0.0)
        };
        delta *= s;
        let col = k + 1;
        for r in 0..n {
            let v = q[(r, col)] * delta;
            q[(r, col)] = v;
        }
    }
    (diag, off, q)
}

/// Implicit-shift QL on a real symmetric tridiagonal, rotating the complex
/// columns of `vectors` along.
fn ql_implicit(diag: &mut [f64], off: &mut [f64], vectors: &mut ComplexMatrix) -> Result<()> {
    let n = diag.len();
    if n <= 1 {
        return Ok(());
    }
    // off[i] couples i and i+1; off[n-1] is a sentinel.
    off[n - 1] = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::NoConvergence(format!(
                    "QL iteration stalled on eigenvalue {l} after {QL_MAX_ITER} sweeps"
                )));
            }
            // Wilkinson-style shift.
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflowed = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                // Rotate eigenvector columns i and i+1.
                for row in 0..vectors.rows() {
                    let a = vectors[(row, i)];
                    let bb = vectors[(row, i + 1)];
                    vectors[(row, i)] = a * c - bb * s;
                    vectors[(row, i + 1)] = a * s + bb * c;
                }
            }
            if underflowed {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

/// max_k ‖A v_k − λ_k v_k‖₂ via a blocked matrix product.
fn max_residual(a: &ComplexMatrix, vectors: &ComplexMatrix, eigenvalues: &[f64]) -> f64 {
    let n = a.rows();
    let mut norms_sqr = vec![0.0_f64; n];
    const BLOCK: usize = 32;
    let mut buffer = ComplexMatrix::zeros(BLOCK, n);
    let mut i0 = 0;
    while i0 < n {
        let i1 = (i0 + BLOCK).min(n);
        for i in 0..(i1 - i0) {
            for v in buffer.row_mut(i) {
                *v = Complex64::new(0.0, 0.0);
            }
        }
        for k in 0..n {
            let vec_row = vectors.row(k);
            for i in i0..i1 {
                let coeff = a[(i, k)];
                if coeff.norm_sqr() == 0.0 {
                    continue;
                }
                let out = buffer.row_mut(i - i0);
                for (o, v) in out.iter_mut().zip(vec_row) {
                    *o += coeff * v;
                }
            }
        }
        for i in i0..i1 {
            let av = buffer.row(i - i0);
            let v = vectors.row(i);
            for j in 0..n {
                let diff = av[j] - eigenvalues[j] * v[j];
                norms_sqr[j] += diff.norm_sqr();
            }
        }
        i0 = i1;
    }
    norms_sqr.iter().map(|s| s.sqrt()).fold(0.0, f64::max)
}

/// Number of eigenvalues strictly between `delta` and `1 - delta`.
pub fn plunge_stats(spectrum: &Spectrum, delta: f64) -> Result<PlungeStats> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::Domain {
            value: delta,
            domain: "(0, 1/2)",
        });
    }
    let mut first = None;
    let mut last = None;
    for (i, &l) in spectrum.eigenvalues().iter().enumerate() {
        if l > delta && l < 1.0 - delta {
            if first.is_none() {
                first = Some(i);
            }
            last = Some(i);
        }
    }
    let count = match (first, last) {
        (Some(f), Some(l)) => l - f + 1,
        _ => 0,
    };
    Ok(PlungeStats {
        delta,
        count,
        first_index: first,
        last_index: last,
    })
}

/// max over k = 1..L of |λ_k − profile(k)|, `λ_k` the k-th largest
/// eigenvalue and the profile evaluated at the 1-based index.
pub fn linf_profile_error(spectrum: &Spectrum, profile: &ErfcProfile) -> f64 {
    spectrum
        .eigenvalues()
        .iter()
        .enumerate()
        .map(|(i, &l)| (l - profile.eval((i + 1) as f64)).abs())
        .fold(0.0, f64::max)
}

/// The `count` (eigenvalue, eigenvector) pairs closest to `target`,
/// tie-broken toward the smaller index.
pub fn eigenvectors_near(
    spectrum: &Spectrum,
    target: f64,
    count: usize,
) -> Result<Vec<(f64, Vec<Complex64>)>> {
    let vectors = spectrum.eigenvectors().ok_or_else(|| {
        Error::InvalidParameter("spectrum was computed without eigenvectors".into())
    })?;
    if count > spectrum.len() {
        return Err(Error::InvalidParameter(format!(
            "requested {count} eigenvectors from a spectrum of {}",
            spectrum.len()
        )));
    }
    let mut order: Vec<usize> = (0..spectrum.len()).collect();
    order.sort_by(|&i, &j| {
        let di = (spectrum.eigenvalues()[i] - target).abs();
        let dj = (spectrum.eigenvalues()[j] - target).abs();
        di.partial_cmp(&dj).expect("finite").then(i.cmp(&j))
    });
    Ok(order[..count]
        .iter()
        .map(|&i| (spectrum.eigenvalues()[i], vectors.column(i)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in (i + 1)..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                a[(i, j)] = z;
                a[(j, i)] = z.conj();
            }
        }
        a
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let spectrum = hermitian_eig(&ComplexMatrix::identity(5), false, DEFAULT_EIG_TOL).unwrap();
        for &l in spectrum.eigenvalues() {
            assert!((l - 1.0).abs() < 1e-14);
        }
        assert!(spectrum.residual() < 1e-13);
    }

    #[test]
    fn diagonal_matrix_sorts_descending() {
        let mut a = ComplexMatrix::zeros(3, 3);
        a[(0, 0)] = Complex64::new(3.0, 0.0);
        a[(1, 1)] = Complex64::new(1.0, 0.0);
        a[(2, 2)] = Complex64::new(2.0, 0.0);
        let s = hermitian_eig(&a, false, DEFAULT_EIG_TOL).unwrap();
        assert_eq!(s.eigenvalues(), &[3.0, 2.0, 1.0]);
    }

    #[test]
    fn two_by_two_known_eigenvalues() {
        // [[0, -i], [i, 0]] has eigenvalues ±1.
        let mut a = ComplexMatrix::zeros(2, 2);
        a[(0, 1)] = Complex64::new(0.0, -1.0);
        a[(1, 0)] = Complex64::new(0.0, 1.0);
        let s = hermitian_eig(&a, true, DEFAULT_EIG_TOL).unwrap();
        assert!((s.eigenvalues()[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues()[1] + 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        let a = random_hermitian(8, 42);
        let s = hermitian_eig(&a, true, DEFAULT_EIG_TOL).unwrap();
        let v = s.eigenvectors().unwrap();
        // V Λ V^H = A entrywise to 1e-10.
        let mut lam_vh = v.conj_transpose();
        for (i, &l) in s.eigenvalues().iter().enumerate() {
            for z in lam_vh.row_mut(i) {
                *z *= l;
            }
        }
        let rebuilt = v.mul(&lam_vh);
        for i in 0..8 {
            for j in 0..8 {
                assert!(
                    (rebuilt[(i, j)] - a[(i, j)]).norm() < 1e-10,
                    "mismatch at ({i},{j})"
                );
            }
        }
        assert!(s.residual() < 1e-12);
    }

    #[test]
    fn eigenvector_columns_are_orthonormal() {
        let a = random_hermitian(12, 7);
        let s = hermitian_eig(&a, true, DEFAULT_EIG_TOL).unwrap();
        let v = s.eigenvectors().unwrap();
        let gram = v.conj_transpose().mul(v);
        for i in 0..12 {
            for j in 0..12 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((gram[(i, j)] - want).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn spectrum_invariant_under_unitary_conjugation() {
        let a = random_hermitian(10, 99);
        // Build a unitary from the eigenvectors of another Hermitian matrix.
        let q = {
            let helper = random_hermitian(10, 100);
            hermitian_eig(&helper, true, DEFAULT_EIG_TOL)
                .unwrap()
                .eigenvectors()
                .unwrap()
                .clone()
        };
        let conjugated = q.conj_transpose().mul(&a).mul(&q);
        let s1 = hermitian_eig(&a, false, DEFAULT_EIG_TOL).unwrap();
        let s2 = hermitian_eig(&conjugated, false, DEFAULT_EIG_TOL).unwrap();
        for (x, y) in s1.eigenvalues().iter().zip(s2.eigenvalues()) {
            assert!((x - y).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut a = ComplexMatrix::identity(3);
        a[(0, 1)] = Complex64::new(1.0, 0.0);
        let err = hermitian_eig(&a, false, DEFAULT_EIG_TOL).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn plunge_stats_counts_open_interval() {
        let s = Spectrum::from_sorted(vec![1.0, 1.0, 0.0, 0.0], 0.0).unwrap();
        assert_eq!(plunge_stats(&s, 0.1).unwrap().count, 0);
        let s = Spectrum::from_sorted(vec![1.0, 0.5, 0.0], 0.0).unwrap();
        let stats = plunge_stats(&s, 0.1).unwrap();
        assert_eq!(stats.count, 1);
        assert_eq!(stats.first_index, Some(1));
        assert_eq!(stats.last_index, Some(1));
        assert!(plunge_stats(&s, 0.0).is_err());
        assert!(plunge_stats(&s, 0.5).is_err());
    }

    #[test]
    fn profile_error_vanishes_on_profile_samples() {
        let profile = ErfcProfile::new(10.0, 4.0).unwrap();
        let values: Vec<f64> = (1..=30).map(|k| profile.eval(k as f64)).collect();
        let s = Spectrum::from_sorted(values, 0.0).unwrap();
        assert!(linf_profile_error(&s, &profile) < 1e-15);
    }

    #[test]
    fn eigenvectors_near_selects_closest() {
        let mut a = ComplexMatrix::zeros(4, 4);
        for (i, &v) in [1.0, 0.6, 0.5, 0.1].iter().enumerate() {
            a[(i, i)] = Complex64::new(v, 0.0);
        }
        let s = hermitian_eig(&a, true, DEFAULT_EIG_TOL).unwrap();
        let picks = eigenvectors_near(&s, 0.5, 1).unwrap();
        assert!((picks[0].0 - 0.5).abs() < 1e-14);
        let all = eigenvectors_near(&s, 0.5, 4).unwrap();
        assert_eq!(all.len(), 4);
        let no_vectors = hermitian_eig(&a, false, DEFAULT_EIG_TOL).unwrap();
        assert!(eigenvectors_near(&no_vectors, 0.5, 1).is_err());
    }
}
