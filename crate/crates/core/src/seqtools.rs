//! Bi-infinite sequences stored over a finite window, their convolution
//! algebra, ℓ_p norms, and empirical decay classification.
//!
//! A decay class is always a verdict on the stored data, never a claim about
//! the underlying infinite sequence; the polynomial class carries its fit
//! quality so downstream code can judge how much to trust it.

use num_complex::Complex64;

/// How the stored window of a sequence was terminated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailFlag {
    /// Expansion stopped because boundary magnitudes fell below a threshold.
    Threshold,
    /// A hard cap on the index range was hit before the tail converged.
    CapHit,
}

/// A sequence that is semantically zero outside its stored window.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSequence {
    /// Index of the first stored entry.
    pub offset: i64,
    pub values: Vec<Complex64>,
    pub tail_flag: TailFlag,
}

impl TruncatedSequence {
    pub fn new(offset: i64, values: Vec<Complex64>, tail_flag: TailFlag) -> Self {
        TruncatedSequence { offset, values, tail_flag }
    }

    pub fn from_real(offset: i64, values: &[f64], tail_flag: TailFlag) -> Self {
        TruncatedSequence {
            offset,
            values: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            tail_flag,
        }
    }

    pub fn delta() -> Self {
        TruncatedSequence::new(0, vec![Complex64::new(1.0, 0.0)], TailFlag::Threshold)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entry at absolute index n (zero outside the stored window).
    pub fn get(&self, n: i64) -> Complex64 {
        let i = n - self.offset;
        if i < 0 || i as usize >= self.values.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.values[i as usize]
        }
    }

    /// Inclusive index range of the stored window, if nonempty.
    pub fn support(&self) -> Option<(i64, i64)> {
        if self.values.is_empty() {
            None
        } else {
            Some((self.offset, self.offset + self.values.len() as i64 - 1))
        }
    }

    pub fn iter_indexed(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.offset + i as i64, v))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Stored window with literal zero entries stripped from both ends.
    pub fn nonzero_core(&self) -> Option<(i64, i64)> {
        let first = self.values.iter().position(|v| v.norm() != 0.0)?;
        let last = self.values.iter().rposition(|v| v.norm() != 0.0)?;
        Some((self.offset + first as i64, self.offset + last as i64))
    }

    /// The same sequence restricted to indices in [lo, hi].
    pub fn restricted(&self, lo: i64, hi: i64) -> TruncatedSequence {
        let values = (lo..=hi).map(|n| self.get(n)).collect();
        TruncatedSequence::new(lo, values, self.tail_flag)
    }
}

/// Exact finite convolution, (x*y)_n = Σ_s x_s y_{n-s}.
///
/// The operands are put into a canonical order first, so the floating-point
/// accumulation order is identical for (x, y) and (y, x) and commutativity
/// holds bit for bit.
pub fn convolve(x: &TruncatedSequence, y: &TruncatedSequence) -> TruncatedSequence {
    if x.is_empty() || y.is_empty() {
        return TruncatedSequence::new(0, Vec::new(), TailFlag::Threshold);
    }
    let (x, y) = if operand_key(x) <= operand_key(y) { (x, y) } else { (y, x) };
    let flag = if x.tail_flag == TailFlag::CapHit || y.tail_flag == TailFlag::CapHit {
        TailFlag::CapHit
    } else {
        TailFlag::Threshold
    };
    let n = x.len() + y.len() - 1;
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    for (i, &xv) in x.values.iter().enumerate() {
        if xv.norm() == 0.0 {
            continue;
        }
        for (j, &yv) in y.values.iter().enumerate() {
            values[i + j] += xv * yv;
        }
    }
    TruncatedSequence::new(x.offset + y.offset, values, flag)
}

fn operand_key(x: &TruncatedSequence) -> (usize, i64, Vec<(u64, u64)>) {
    (
        x.len(),
        x.offset,
        x.values
            .iter()
            .map(|v| (v.re.to_bits(), v.im.to_bits()))
            .collect(),
    )
}

/// ℓ_p norm over the stored window; requires p ≥ 1.
pub fn lp_norm(x: &TruncatedSequence, p: f64) -> f64 {
    assert!(p >= 1.0, "lp_norm requires p >= 1, got {p}");
    if p == 1.0 {
        return x.values.iter().map(|v| v.norm()).sum();
    }
    if p == 2.0 {
        return x.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    }
    x.values
        .iter()
        .map(|v| v.norm().powf(p))
        .sum::<f64>()
        .powf(1.0 / p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecayClass {
    /// Only finitely many nonzero entries, as far as the data shows.
    FiniteSupport,
    /// Decays faster than any inverse power of the index.
    Superpolynomial,
    /// |x_n| ~ |n|^{-exponent}; r_squared is the log-log fit quality.
    Polynomial { exponent: f64, r_squared: f64 },
    Undetermined,
}

impl DecayClass {
    pub fn label(&self) -> String {
        match self {
            DecayClass::FiniteSupport => "finite-support".into(),
            DecayClass::Superpolynomial => "superpolynomial".into(),
            DecayClass::Polynomial { exponent, r_squared } => {
                format!("polynomial(exponent={exponent:.3}, r2={r_squared:.4})")
            }
            DecayClass::Undetermined => "undetermined".into(),
        }
    }
}

/// Regression needs at least this many usable tail points.
const MIN_REGRESSION_POINTS: usize = 4;
/// A log-log slope at or below this is treated as faster than polynomial.
const SUPERPOLY_SLOPE: f64 = -12.0;

/// Classifies the decay of the stored magnitudes.
///
/// The tail is measured relative to the dominant entry so that index-shifted
/// sequences classify the same way. Interior zeros (parity-structured
/// sequences) are skipped, not treated as the end of the support. When the
/// tail is too short to regress, a threshold-truncated sequence is finite
/// support for all the data shows; a capped one is undetermined.
pub fn classify_decay(x: &TruncatedSequence) -> DecayClass {
    let Some((core_lo, core_hi)) = x.nonzero_core() else {
        return DecayClass::FiniteSupport;
    };
    // Center at the dominant entry.
    let peak = x
        .iter_indexed()
        .filter(|(n, _)| *n >= core_lo && *n <= core_hi)
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(n, _)| n)
        .expect("nonempty core");
    let reach = (core_hi - peak).max(peak - core_lo).max(0) as u64;

    let mut points = collect_tail_points(x, peak, (reach / 2).max(4));
    if points.len() < MIN_REGRESSION_POINTS {
        points = collect_tail_points(x, peak, (reach / 2).max(2));
    }
    if points.len() < MIN_REGRESSION_POINTS {
        points = collect_tail_points(x, peak, 1);
    }
    if points.len() < MIN_REGRESSION_POINTS {
        return match x.tail_flag {
            TailFlag::Threshold => DecayClass::FiniteSupport,
            TailFlag::CapHit => DecayClass::Undetermined,
        };
    }

    // Oscillating sequences (sign patterns, modulated envelopes) make a
    // direct log-log fit meaningless; an O-type decay bound concerns the
    // upper envelope, so regress per-bin maxima over geometrically spaced
    // distance bins whenever enough bins exist.
    let fit_points = envelope_bins(&points).unwrap_or(points);

    let (slope, r_squared) = linear_fit(&fit_points);
    if slope <= SUPERPOLY_SLOPE {
        return DecayClass::Superpolynomial;
    }
    // Scale-dependence test: a power law keeps the same log-log slope on the
    // inner and outer halves of the window, while exponential-type decay
    // steepens in proportion to the distance itself (the slope ratio across
    // a geometric split approaches the split ratio).
    if fit_points.len() >= 8 {
        let x_mid = 0.5 * (fit_points[0].0 + fit_points[fit_points.len() - 1].0);
        let split = fit_points.partition_point(|p| p.0 < x_mid);
        let (inner, outer) = fit_points.split_at(split);
        if inner.len() >= 3 && outer.len() >= 3 {
            let (s_inner, _) = linear_fit(inner);
            let (s_outer, _) = linear_fit(outer);
            if s_inner <= -0.3 && s_outer <= -1.0 && s_outer <= 1.25 * s_inner - 0.05 {
                return DecayClass::Superpolynomial;
            }
        }
    }
    if r_squared < 0.9 {
        return DecayClass::Undetermined;
    }
    DecayClass::Polynomial { exponent: -slope, r_squared }
}

/// Per-bin maxima of (ln d, ln |x|) over geometric distance bins. For a pure
/// power law the maximum sits at the left edge of each bin and carries its
/// own abscissa, so the slope is unbiased. Returns None when the distance
/// range is too narrow to form enough bins.
fn envelope_bins(points: &[(f64, f64)]) -> Option<Vec<(f64, f64)>> {
    let lo = points.first()?.0;
    let hi = points.last()?.0;
    if hi <= lo {
        return None;
    }
    let n_bins = (points.len() / 3).clamp(4, 24);
    let width = (hi - lo) / n_bins as f64;
    let mut best: Vec<Option<(f64, f64)>> = vec![None; n_bins];
    for &(x, y) in points {
        let b = (((x - lo) / width) as usize).min(n_bins - 1);
        if best[b].map_or(true, |(_, by)| y > by) {
            best[b] = Some((x, y));
        }
    }
    let bins: Vec<(f64, f64)> = best.into_iter().flatten().collect();
    (bins.len() >= 4).then_some(bins)
}

/// (ln d, ln |x|) for nonzero entries at distance d ≥ min_dist from the peak,
/// sorted by distance.
fn collect_tail_points(x: &TruncatedSequence, peak: i64, min_dist: u64) -> Vec<(f64, f64)> {
    let mut points: Vec<(f64, f64)> = x
        .iter_indexed()
        .filter_map(|(n, v)| {
            let d = n.abs_diff(peak);
            if d >= min_dist && v.norm() > 0.0 {
                Some(((d as f64).ln(), v.norm().ln()))
            } else {
                None
            }
        })
        .collect();
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    points
}

/// Least-squares slope and coefficient of determination.
fn linear_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return (0.0, 0.0);
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (slope, r2)
}

/// Predicted decay class of a convolution from the classes of its factors.
pub fn convolution_class(x: &DecayClass, y: &DecayClass) -> DecayClass {
    use DecayClass::*;
    match (x, y) {
        (Undetermined, _) | (_, Undetermined) => Undetermined,
        (FiniteSupport, other) | (other, FiniteSupport) => *other,
        (Superpolynomial, Superpolynomial) => Superpolynomial,
        (Superpolynomial, p @ Polynomial { .. }) | (p @ Polynomial { .. }, Superpolynomial) => *p,
        (
            Polynomial { exponent: e1, r_squared: q1 },
            Polynomial { exponent: e2, r_squared: q2 },
        ) => {
            // The slower factor dominates the tail.
            if e1 <= e2 {
                Polynomial { exponent: *e1, r_squared: q1.min(*q2) }
            } else {
                Polynomial { exponent: *e2, r_squared: q1.min(*q2) }
            }
        }
    }
}
