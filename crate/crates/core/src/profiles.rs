//! Closed-form eigenvalue sequences for rotationally invariant symbols and
//! the erfc plunge profile they converge to.
//!
//! A disk of radius R carries the eigenvalues `1 - e^{-πR²} Σ_{j≤k} (πR²)^j/j!`
//! (the upper tail of a Poisson distribution with mean πR²), an annulus the
//! difference of two such sequences, and a union of annuli the sum over its
//! parts. After decreasing rearrangement these all approach
//! `½·erfc(√(2π)(k − area)/boundary)`.

use crate::error::{Error, Result};
use crate::special::{erfc, erfc_inv, reg_lower_gamma};

const SQRT_2PI: f64 = 2.5066282746310002;

/// Disk symbol of radius `R`; the center is immaterial for the spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskSpec {
    radius: f64,
}

impl DiskSpec {
    pub fn new(radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "disk radius must be positive and finite, got {radius}"
            )));
        }
        Ok(Self { radius })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// k-th eigenvalue (0-based, already in decreasing order).
    ///
    /// Evaluated as the regularized lower incomplete gamma P(k+1, πR²) in
    /// log space; no overflow for πR² up to 1e6.
    pub fn eigenvalue(&self, k: u64) -> f64 {
        let mean = std::f64::consts::PI * self.radius * self.radius;
        reg_lower_gamma((k + 1) as f64, mean)
            .expect("incomplete gamma converges for k+1 >= 1 and finite mean")
    }

    /// The erfc approximant `½·erfc((k − πR²)/(√(2π)·R))` of the eigenvalue
    /// sequence; `k` may be fractional.
    pub fn profile(&self, k: f64) -> f64 {
        let mean = std::f64::consts::PI * self.radius * self.radius;
        0.5 * erfc((k - mean) / (SQRT_2PI * self.radius))
    }

    /// Same approximant as an [`ErfcProfile`] with area πR², boundary 2πR.
    pub fn erfc_profile(&self) -> ErfcProfile {
        let r = self.radius;
        ErfcProfile::new(
            std::f64::consts::PI * r * r,
            2.0 * std::f64::consts::PI * r,
        )
        .expect("positive radius yields a valid profile")
    }
}

/// Annulus with outer radius `R` and inner radius `r·R`, `0 ≤ r < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusSpec {
    outer: f64,
    inner_ratio: f64,
}

impl AnnulusSpec {
    pub fn new(outer: f64, inner_ratio: f64) -> Result<Self> {
        if !(outer > 0.0) || !outer.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "annulus outer radius must be positive, got {outer}"
            )));
        }
        if !(0.0..1.0).contains(&inner_ratio) {
            return Err(Error::InvalidParameter(format!(
                "annulus inner ratio must lie in [0, 1), got {inner_ratio}"
            )));
        }
        Ok(Self { outer, inner_ratio })
    }

    pub fn outer(&self) -> f64 {
        self.outer
    }

    pub fn inner_ratio(&self) -> f64 {
        self.inner_ratio
    }

    /// Unordered k-th eigenvalue: the Hermite basis diagonalizes every
    /// rotationally invariant symbol, so this is a plain difference of two
    /// disk sequences and not yet monotone in `k`.
    pub fn unordered_eigenvalue(&self, k: u64) -> f64 {
        let outer = DiskSpec::new(self.outer).expect("validated on construction");
        if self.inner_ratio == 0.0 {
            return outer.eigenvalue(k);
        }
        let inner = DiskSpec::new(self.inner_ratio * self.outer).expect("ratio > 0");
        (outer.eigenvalue(k) - inner.eigenvalue(k)).clamp(0.0, 1.0)
    }

    /// Profile with area πR²(1−r²) and boundary 2πR(1+r).
    pub fn erfc_profile(&self) -> ErfcProfile {
        let r = self.inner_ratio;
        let big_r = self.outer;
        ErfcProfile::new(
            std::f64::consts::PI * big_r * big_r * (1.0 - r * r),
            2.0 * std::f64::consts::PI * big_r * (1.0 + r),
        )
        .expect("valid annulus yields a valid profile")
    }
}

/// Rotationally invariant symbol given as disjoint annuli
/// `inner_1 < outer_1 < inner_2 < …`, with `inner_1 = 0` allowed (a disk).
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSet {
    annuli: Vec<(f64, f64)>,
}

impl RadialSet {
    pub fn new(annuli: Vec<(f64, f64)>) -> Result<Self> {
        if annuli.is_empty() {
            return Err(Error::InvalidParameter(
                "radial set needs at least one annulus".into(),
            ));
        }
        let mut previous_outer = -1.0_f64;
        for &(inner, outer) in &annuli {
            if !(inner >= 0.0 && inner < outer && outer.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "annulus radii must satisfy 0 <= inner < outer, got ({inner}, {outer})"
                )));
            }
            if inner <= previous_outer {
                return Err(Error::InvalidParameter(
                    "annuli must be strictly interleaved and disjoint".into(),
                ));
            }
            previous_outer = outer;
        }
        Ok(Self { annuli })
    }

    pub fn annuli(&self) -> &[(f64, f64)] {
        &self.annuli
    }

    /// Unordered k-th eigenvalue: sum of per-annulus disk differences.
    pub fn unordered_eigenvalue(&self, k: u64) -> f64 {
        let total: f64 = self
            .annuli
            .iter()
            .map(|&(inner, outer)| {
                let hi = DiskSpec::new(outer).expect("validated").eigenvalue(k);
                let lo = if inner > 0.0 {
                    DiskSpec::new(inner).expect("validated").eigenvalue(k)
                } else {
                    0.0
                };
                hi - lo
            })
            .sum();
        total.clamp(0.0, 1.0)
    }

    /// Profile with total area Σπ(outer²−inner²), boundary Σ2π(outer+inner).
    pub fn erfc_profile(&self) -> ErfcProfile {
        let pi = std::f64::consts::PI;
        let area = self
            .annuli
            .iter()
            .map(|&(i, o)| pi * (o * o - i * i))
            .sum();
        let boundary = self.annuli.iter().map(|&(i, o)| 2.0 * pi * (o + i)).sum();
        ErfcProfile::new(area, boundary).expect("valid radial set yields a valid profile")
    }

    /// The same set with all radii multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be positive, got {factor}"
            )));
        }
        Self::new(
            self.annuli
                .iter()
                .map(|&(i, o)| (i * factor, o * factor))
                .collect(),
        )
    }

    pub fn max_radius(&self) -> f64 {
        self.annuli.last().map(|&(_, o)| o).unwrap_or(0.0)
    }
}

/// The conjectured universal plunge profile `k ↦ ½·erfc(√(2π)(k − area)/boundary)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErfcProfile {
    area: f64,
    boundary: f64,
}

impl ErfcProfile {
    pub fn new(area: f64, boundary: f64) -> Result<Self> {
        if !(area >= 0.0) || !area.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "profile area must be nonnegative, got {area}"
            )));
        }
        if !(boundary > 0.0) || !boundary.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "profile boundary must be positive, got {boundary}"
            )));
        }
        Ok(Self { area, boundary })
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn boundary(&self) -> f64 {
        self.boundary
    }

    /// Profile value at (possibly fractional) eigenvalue index `k`;
    /// strictly decreasing in `k` and exactly 1/2 at `k = area`.
    pub fn eval(&self, k: f64) -> f64 {
        0.5 * erfc(SQRT_2PI * (k - self.area) / self.boundary)
    }

    /// Counting-function form: the index at which the profile passes
    /// `lambda`, i.e. `area + boundary·erfc⁻¹(2λ)/√(2π)`.
    pub fn counting(&self, lambda: f64) -> Result<f64> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::Domain {
                value: lambda,
                domain: "(0, 1)",
            });
        }
        Ok(self.area + self.boundary * erfc_inv(2.0 * lambda)? / SQRT_2PI)
    }
}

/// Parameters of `f(x) = erfc((x−c_o)/w_o) − erfc((x−c_i)/w_i)` whose
/// decreasing rearrangement has a closed form; requires the outer step to
/// dominate: `c_o > c_i > 0` and `w_o > w_i > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoErfcParams {
    outer_center: f64,
    inner_center: f64,
    outer_width: f64,
    inner_width: f64,
}

impl TwoErfcParams {
    pub fn new(
        outer_center: f64,
        inner_center: f64,
        outer_width: f64,
        inner_width: f64,
    ) -> Result<Self> {
        let ok = outer_center > inner_center
            && inner_center > 0.0
            && outer_width > inner_width
            && inner_width > 0.0
            && outer_center.is_finite()
            && outer_width.is_finite();
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "two-erfc parameters need c_o > c_i > 0 and w_o > w_i > 0, got \
                 c_o = {outer_center}, c_i = {inner_center}, w_o = {outer_width}, w_i = {inner_width}"
            )));
        }
        Ok(Self {
            outer_center,
            inner_center,
            outer_width,
            inner_width,
        })
    }

    /// The parameters arising from an annulus with inner ratio > 0:
    /// centers πR², π(rR)² and widths √(2π)R, √(2π)rR.
    pub fn from_annulus(spec: &AnnulusSpec) -> Result<Self> {
        let pi = std::f64::consts::PI;
        let big_r = spec.outer();
        let small_r = spec.inner_ratio() * big_r;
        Self::new(
            pi * big_r * big_r,
            pi * small_r * small_r,
            SQRT_2PI * big_r,
            SQRT_2PI * small_r,
        )
    }

    pub fn outer_center(&self) -> f64 {
        self.outer_center
    }

    pub fn inner_center(&self) -> f64 {
        self.inner_center
    }

    pub fn outer_width(&self) -> f64 {
        self.outer_width
    }

    pub fn inner_width(&self) -> f64 {
        self.inner_width
    }

    /// The two-step function itself, before rearrangement.
    pub fn sample(&self, x: f64) -> f64 {
        erfc((x - self.outer_center) / self.outer_width)
            - erfc((x - self.inner_center) / self.inner_width)
    }

    /// Exact decreasing rearrangement of [`sample`](Self::sample) under the
    /// symmetrization argument:
    /// `erfc((x−Δc)/W) − erfc((w_o(x−Δc)/W + Δc)/w_i)` with `Δc = c_o − c_i`
    /// and `W = w_o + w_i`.
    pub fn rearranged(&self, x: f64) -> f64 {
        let dc = self.outer_center - self.inner_center;
        let w = self.outer_width + self.inner_width;
        let t = (x - dc) / w;
        erfc(t) - erfc((self.outer_width * t + dc) / self.inner_width)
    }

    /// The leading single-erfc term of [`rearranged`](Self::rearranged).
    pub fn leading_term(&self, x: f64) -> f64 {
        let dc = self.outer_center - self.inner_center;
        erfc((x - dc) / (self.outer_width + self.inner_width))
    }

    /// Upper bound `(w_o + w_i)/(c_o − c_i)` on the dropped second term.
    pub fn rearrangement_error_bound(&self) -> f64 {
        (self.outer_width + self.inner_width) / (self.outer_center - self.inner_center)
    }
}

/// Non-increasing rearrangement of a finite sample sequence.
///
/// Stable: equal values keep their original relative order. All inputs must
/// be finite.
pub fn decreasing_rearrangement(samples: &[f64]) -> Vec<f64> {
    assert!(
        samples.iter().all(|v| v.is_finite()),
        "decreasing_rearrangement requires finite samples"
    );
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite values compare"));
    sorted
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_close(got: f64, want: f64, tol: f64) {
        assert!(
            (got - want).abs() <= tol,
            "got {got}, want {want} (tol {tol})"
        );
    }

    /// Oracle: plain term-by-term evaluation of 1 − e^{−μ} Σ_{j≤k} μ^j/j!,
    /// valid while μ^k/k! stays in range (small μ only).
    fn naive_disk_eigenvalue(k: u64, radius: f64) -> f64 {
        let mean = std::f64::consts::PI * radius * radius;
        let mut term = 1.0;
        let mut sum = 1.0;
        for j in 1..=k {
            term *= mean / j as f64;
            sum += term;
        }
        1.0 - (-mean).exp() * sum
    }

    /// Oracle: Poisson upper tail by anchored recurrence with compensated
    /// summation. The anchor log-probability is itself a compensated sum of
    /// logs, so nothing here shares code with the incomplete-gamma path.
    fn poisson_tail_oracle(k: u64, mean: f64) -> f64 {
        let anchor = (mean.round() as u64).min(k);
        // ln p(anchor) = anchor·ln μ − μ − ln(anchor!)
        let mut lp = 0.0_f64;
        let mut comp = 0.0_f64;
        for i in 1..=anchor {
            let term = mean.ln() - (i as f64).ln();
            let y = term - comp;
            let t = lp + y;
            comp = (t - lp) - y;
            lp = t;
        }
        lp -= mean;
        let p_anchor = lp.exp();
        // CDF = Σ_{j≤k} p_j, spreading out from the anchor by recurrence.
        let mut cdf = p_anchor;
        let mut c = 0.0_f64;
        let mut add = |v: f64, cdf: &mut f64, c: &mut f64| {
            let y = v - *c;
            let t = *cdf + y;
            *c = (t - *cdf) - y;
            *cdf = t;
        };
        let mut p = p_anchor;
        let mut j = anchor;
        while j > 0 {
            p *= j as f64 / mean;
            j -= 1;
            add(p, &mut cdf, &mut c);
            if p < 1e-320 {
                break;
            }
        }
        let mut p = p_anchor;
        let mut j = anchor;
        while j < k {
            j += 1;
            p *= mean / j as f64;
            add(p, &mut cdf, &mut c);
            if p < 1e-320 && j as f64 > mean {
                break;
            }
        }
        1.0 - cdf
    }

    #[test]
    fn disk_first_eigenvalue_is_single_term() {
        for &r in &[0.5_f64, 1.0, 2.0] {
            let disk = DiskSpec::new(r).unwrap();
            let mean = std::f64::consts::PI * r * r;
            assert_close(disk.eigenvalue(0), 1.0 - (-mean).exp(), 1e-14);
        }
    }

    #[test]
    fn disk_matches_naive_summation_at_small_mean() {
        let disk = DiskSpec::new(1.0).unwrap();
        assert_close(disk.eigenvalue(5), naive_disk_eigenvalue(5, 1.0), 1e-14);
        for k in 0..40 {
            let want = naive_disk_eigenvalue(k, 1.7);
            assert_close(DiskSpec::new(1.7).unwrap().eigenvalue(k), want, 1e-13);
        }
    }

    #[test]
    fn disk_matches_poisson_recurrence_oracle() {
        for &r in &[2.0, 15.0, 30.0] {
            let disk = DiskSpec::new(r).unwrap();
            let mean = std::f64::consts::PI * r * r;
            for &k in &[0, mean as u64 / 2, mean as u64, 2 * mean as u64] {
                assert_close(disk.eigenvalue(k), poisson_tail_oracle(k, mean), 1e-12);
            }
        }
    }

    #[test]
    fn disk_median_eigenvalue_near_half() {
        let disk = DiskSpec::new(15.0).unwrap();
        let mean = std::f64::consts::PI * 225.0;
        let k = mean.floor() as u64;
        let lambda = disk.eigenvalue(k);
        assert!((lambda - 0.5).abs() < 0.03, "got {lambda}");
        assert_close(lambda, poisson_tail_oracle(k, mean), 1e-12);
    }

    #[test]
    fn disk_eigenvalue_monotone_in_k_and_radius() {
        let radii = [0.5, 1.0, 2.0, 5.0, 10.0, 15.0, 22.0, 30.0];
        for w in radii.windows(2) {
            let small = DiskSpec::new(w[0]).unwrap();
            let large = DiskSpec::new(w[1]).unwrap();
            let mut previous = f64::INFINITY;
            for k in 0..=2000_u64 {
                let v = large.eigenvalue(k);
                assert!(v <= previous + 1e-15, "not decreasing at k = {k}");
                assert!(
                    v >= small.eigenvalue(k) - 1e-15,
                    "not increasing in radius at k = {k}"
                );
                previous = v;
            }
        }
    }

    #[test]
    fn disk_profile_half_at_area() {
        let disk = DiskSpec::new(7.0).unwrap();
        assert_close(disk.profile(std::f64::consts::PI * 49.0), 0.5, 1e-15);
    }

    #[test]
    fn disk_profile_error_shrinks_with_radius() {
        let sup_error = |radius: f64| {
            let disk = DiskSpec::new(radius).unwrap();
            let k_max = (3.0 * std::f64::consts::PI * radius * radius).ceil() as u64;
            (0..=k_max)
                .map(|k| (disk.eigenvalue(k) - disk.profile(k as f64)).abs())
                .fold(0.0, f64::max)
        };
        let e15 = sup_error(15.0);
        let e30 = sup_error(30.0);
        assert!(e15 < 1.0 / 15.0, "epsilon(15) = {e15}");
        assert!(e30 < e15, "epsilon(30) = {e30} vs epsilon(15) = {e15}");
    }

    #[test]
    fn annulus_reduces_to_disk_at_zero_ratio() {
        let annulus = AnnulusSpec::new(3.0, 0.0).unwrap();
        let disk = DiskSpec::new(3.0).unwrap();
        for k in 0..200 {
            assert_close(annulus.unordered_eigenvalue(k), disk.eigenvalue(k), 1e-15);
        }
    }

    #[test]
    fn annulus_vanishes_as_ratio_tends_to_one() {
        let thin = AnnulusSpec::new(5.0, 0.999).unwrap();
        for k in (0..300).step_by(17) {
            assert!(thin.unordered_eigenvalue(k) < 0.02);
        }
    }

    #[test]
    fn annulus_sorted_matches_proposition_profile() {
        // sup |sorted samples − profile| < 5/R for R >= 10, r = 0.6.
        for &radius in &[10.0, 15.0] {
            let annulus = AnnulusSpec::new(radius, 0.6).unwrap();
            let k_max = (3.0 * std::f64::consts::PI * radius * radius).ceil() as u64;
            let samples: Vec<f64> = (0..=k_max)
                .map(|k| annulus.unordered_eigenvalue(k))
                .collect();
            let sorted = decreasing_rearrangement(&samples);
            let profile = annulus.erfc_profile();
            let sup = sorted
                .iter()
                .enumerate()
                .map(|(k, &v)| (v - profile.eval(k as f64)).abs())
                .fold(0.0, f64::max);
            assert!(sup < 5.0 / radius, "R = {radius}: sup = {sup}");
        }
    }

    #[test]
    fn radial_single_annulus_reduction() {
        let set = RadialSet::new(vec![(9.0, 15.0)]).unwrap();
        let annulus = AnnulusSpec::new(15.0, 0.6).unwrap();
        for k in (0..2200).step_by(7) {
            assert_close(
                set.unordered_eigenvalue(k),
                annulus.unordered_eigenvalue(k),
                1e-15,
            );
        }
    }

    #[test]
    fn radial_two_annuli_additivity() {
        let both = RadialSet::new(vec![(2.0, 4.0), (6.0, 9.0)]).unwrap();
        let first = RadialSet::new(vec![(2.0, 4.0)]).unwrap();
        let second = RadialSet::new(vec![(6.0, 9.0)]).unwrap();
        for k in (0..400).step_by(3) {
            assert_close(
                both.unordered_eigenvalue(k),
                first.unordered_eigenvalue(k) + second.unordered_eigenvalue(k),
                1e-14,
            );
        }
    }

    #[test]
    fn radial_profile_error_decreases_under_dilation() {
        let base = RadialSet::new(vec![(0.3, 0.5), (0.8, 1.0)]).unwrap();
        let sup_error = |set: &RadialSet| {
            let k_max =
                (3.0 * std::f64::consts::PI * set.max_radius() * set.max_radius()).ceil() as u64;
            let samples: Vec<f64> = (0..=k_max).map(|k| set.unordered_eigenvalue(k)).collect();
            let sorted = decreasing_rearrangement(&samples);
            let profile = set.erfc_profile();
            sorted
                .iter()
                .enumerate()
                .map(|(k, &v)| (v - profile.eval(k as f64)).abs())
                .fold(0.0, f64::max)
        };
        let errors: Vec<f64> = [10.0, 20.0, 40.0]
            .iter()
            .map(|&r| sup_error(&base.scaled(r).unwrap()))
            .collect();
        assert!(
            errors[1] < errors[0] && errors[2] < errors[1],
            "errors not decreasing: {errors:?}"
        );
    }

    #[test]
    fn radial_rejects_overlapping_annuli() {
        assert!(RadialSet::new(vec![(0.0, 2.0), (1.5, 3.0)]).is_err());
        assert!(RadialSet::new(vec![(2.0, 2.0)]).is_err());
        assert!(RadialSet::new(vec![]).is_err());
    }

    #[test]
    fn rearrangement_sorts_and_is_stable() {
        assert_eq!(
            decreasing_rearrangement(&[0.1, 0.9, 0.5]),
            vec![0.9, 0.5, 0.1]
        );
        let sorted = vec![5.0, 4.0, 3.0, 1.0];
        assert_eq!(decreasing_rearrangement(&sorted), sorted);
        assert!(decreasing_rearrangement(&[]).is_empty());
    }

    proptest! {
        #[test]
        fn rearrangement_is_a_sup_norm_contraction(
            pairs in prop::collection::vec((-1e3_f64..1e3, -1e3_f64..1e3), 1..200)
        ) {
            let u: Vec<f64> = pairs.iter().map(|p| p.0).collect();
            let v: Vec<f64> = pairs.iter().map(|p| p.1).collect();
            let raw = u.iter().zip(&v).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            let su = decreasing_rearrangement(&u);
            let sv = decreasing_rearrangement(&v);
            let sorted = su.iter().zip(&sv).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            prop_assert!(sorted <= raw + 1e-12);
        }

        #[test]
        fn rearrangement_is_a_permutation(values in prop::collection::vec(-1e6_f64..1e6, 0..100)) {
            let mut a = values.clone();
            let mut b = decreasing_rearrangement(&values);
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            prop_assert_eq!(a, b);
        }
    }

    fn fig1_params() -> TwoErfcParams {
        TwoErfcParams::from_annulus(&AnnulusSpec::new(15.0, 0.6).unwrap()).unwrap()
    }

    #[test]
    fn two_erfc_value_at_center_gap() {
        let p = fig1_params();
        let dc = p.outer_center() - p.inner_center();
        assert_close(
            p.rearranged(dc),
            1.0 - erfc(dc / p.inner_width()),
            1e-14,
        );
    }

    #[test]
    fn two_erfc_second_term_identity_at_zero() {
        // At x = 0 the dropped term equals erfc(Δc/W) ≤ W/Δc.
        let p = fig1_params();
        let dc = p.outer_center() - p.inner_center();
        let w = p.outer_width() + p.inner_width();
        let second = p.leading_term(0.0) - p.rearranged(0.0);
        assert_close(second, erfc(dc / w), 1e-14);
        assert!(second <= p.rearrangement_error_bound());
    }

    #[test]
    fn two_erfc_rearranged_is_non_increasing_and_bounded() {
        let p = fig1_params();
        let sup_f = (0..200_000)
            .map(|i| p.sample(i as f64 * 0.006))
            .fold(0.0, f64::max);
        let mut previous = f64::INFINITY;
        for i in 0..5000 {
            let x = i as f64 * 0.25;
            let v = p.rearranged(x);
            assert!(v <= previous + 1e-12);
            assert!(v >= -1e-15 && v <= sup_f + 1e-12);
            previous = v;
        }
    }

    #[test]
    fn two_erfc_matches_dense_manual_sort() {
        // Fig-1 style check at reduced sample count; the acceptance suite
        // runs the full 1e5-sample version.
        let p = fig1_params();
        let n = 20_000_usize;
        let x_max = p.outer_center() + 12.0 * p.outer_width();
        let step = x_max / (n - 1) as f64;
        let samples: Vec<f64> = (0..n).map(|i| p.sample(i as f64 * step)).collect();
        let sorted = decreasing_rearrangement(&samples);
        let tolerance = 2.0 * p.rearrangement_error_bound();
        for (i, &v) in sorted.iter().enumerate().step_by(11) {
            let x = i as f64 * step;
            assert!(
                (v - p.rearranged(x)).abs() <= tolerance,
                "index {i}: sorted {v} vs closed form {}",
                p.rearranged(x)
            );
        }
    }

    #[test]
    fn profile_half_at_area_and_disk_identity() {
        let profile = ErfcProfile::new(100.0, 25.0).unwrap();
        assert_close(profile.eval(100.0), 0.5, 1e-15);
        // area πR², boundary 2πR reproduces the disk profile exactly.
        let disk = DiskSpec::new(9.0).unwrap();
        let as_profile = disk.erfc_profile();
        for k in (0..1200).step_by(13) {
            assert_close(as_profile.eval(k as f64), disk.profile(k as f64), 1e-15);
        }
    }

    #[test]
    fn profile_counting_inverts_eval() {
        let profile = ErfcProfile::new(384.0, 69.5).unwrap();
        assert_close(profile.counting(0.5).unwrap(), profile.area(), 1e-12);
        for &lambda in &[0.05, 0.5, 0.95] {
            let k = profile.counting(lambda).unwrap();
            assert_close(profile.eval(k), lambda, 1e-9);
        }
        let width = profile.counting(0.1).unwrap() - profile.counting(0.9).unwrap();
        assert_close(
            width,
            profile.boundary() / 1.3831,
            1e-3 * profile.boundary(),
        );
        assert!(profile.counting(0.0).is_err());
        assert!(profile.counting(1.0).is_err());
    }

    #[test]
    fn profile_rejects_bad_parameters() {
        assert!(ErfcProfile::new(-1.0, 2.0).is_err());
        assert!(ErfcProfile::new(1.0, 0.0).is_err());
        assert!(TwoErfcParams::new(1.0, 2.0, 3.0, 1.0).is_err());
        assert!(TwoErfcParams::new(2.0, 1.0, 1.0, 3.0).is_err());
    }
}
