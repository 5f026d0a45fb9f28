//! Synthesis of the orthonormalized function and its filter coefficients.
//!
//! From the spectral series S(0,p) the 1D weights are the Fourier
//! coefficients of e^{iφ(p)} / √(S(0,p)); the 2D weights play the same role
//! for the full series S(p₁,p₂). The filter sequence is
//! H_n = √a Σ_s c_s ĥ((n+2s)a), assembled either directly or through the
//! even/odd convolution split, and the orthonormalized function itself is
//! H(P) = Σ_l f_l h(P − a l₁) e^{-2 i a P l₂}.

use crate::error::{Error, Result};
use crate::overlap::{self, IntegralForm, OverlapTable, SpectralSeries};
use crate::quad::{self, QuadOptions};
use crate::seed::{SeedFamily, SeedFunction};
use crate::seqtools::{self, TailFlag, TruncatedSequence};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Phase choice entering the synthesis weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseSpec {
    Zero,
    /// φ(p) = K₀ p; shifts the weight indices by K₀.
    Linear(i64),
    /// φ(p) = γ p²; γ must be nonzero.
    Quadratic(f64),
}

impl PhaseSpec {
    pub fn eval(&self, p: f64) -> f64 {
        match self {
            PhaseSpec::Zero => 0.0,
            PhaseSpec::Linear(k0) => *k0 as f64 * p,
            PhaseSpec::Quadratic(gamma) => gamma * p * p,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let PhaseSpec::Quadratic(gamma) = self {
            if *gamma == 0.0 || !gamma.is_finite() {
                return Err(Error::InvalidConfig(
                    "quadratic phase coefficient must be finite and nonzero".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn descriptor(&self) -> String {
        match self {
            PhaseSpec::Zero => "none".into(),
            PhaseSpec::Linear(k0) => format!("linear:{k0}"),
            PhaseSpec::Quadratic(g) => format!("quadratic:{g}"),
        }
    }
}

/// Strict positivity threshold for the spectral series.
pub const POS_TOL: f64 = 1e-8;
/// Tail magnitude above which a weight sequence is flagged slow.
pub const C_TAIL_TOL: f64 = 1e-10;
/// Entries below this fraction of the peak are quadrature noise and are
/// snapped to exact zero.
const SNAP_REL: f64 = 1e-14;
/// Filter entries below this stop the range expansion.
pub const FILTER_BOUNDARY_TOL: f64 = 1e-12;
/// Default hard cap on filter indices.
pub const DEFAULT_N_CAP: i64 = 512;

/// 1D synthesis weights c_s.
#[derive(Debug, Clone)]
pub struct CWeights {
    pub s_max: i64,
    pub values: TruncatedSequence,
    pub phase: PhaseSpec,
    /// Agreement reached between the last two quadrature grids.
    pub achieved_tol: f64,
    pub grid_size: usize,
    /// max(|c_{s_max}|, |c_{-s_max}|) before snapping.
    pub tail_magnitude: f64,
    /// Tail magnitude above the tolerance: decay too slow for the requested
    /// range, downstream users should record a decay class instead.
    pub slow_tail: bool,
}

impl CWeights {
    pub fn get(&self, s: i64) -> Complex64 {
        self.values.get(s)
    }

    pub fn sum(&self) -> Complex64 {
        self.values.values.iter().sum()
    }
}

/// Fourier coefficients of e^{iφ(p)} / √(S(0,p)) on a periodic grid, doubling
/// the grid until successive passes agree (the integrand is smooth and
/// periodic for the zero and linear phases, so convergence is spectral; for
/// rough integrands the doubling stalls and the achieved agreement is
/// recorded instead).
pub fn c_weights(series: &SpectralSeries, phase: PhaseSpec, s_max: i64) -> Result<CWeights> {
    phase.validate()?;
    if s_max < 0 {
        return Err(Error::InvalidConfig("s_max must be nonnegative".into()));
    }
    if series.min_value <= POS_TOL {
        return Err(Error::Positivity {
            min_value: series.min_value,
            min_location: series.min_location,
        });
    }
    let mut n = usize::max(4096, 16 * s_max as usize).next_power_of_two();
    const N_CAP: usize = 1 << 20;
    let mut prev = coeff_pass(series, phase, s_max, n);
    let mut achieved = f64::INFINITY;
    loop {
        let next_n = n * 2;
        if next_n > N_CAP {
            break;
        }
        let next = coeff_pass(series, phase, s_max, next_n);
        achieved = prev
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        prev = next;
        n = next_n;
        if achieved < 1e-12 {
            break;
        }
    }

    let mut values = prev;
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for v in values.iter_mut() {
        if v.norm() <= SNAP_REL * peak {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    let tail_magnitude = values[0].norm().max(values[values.len() - 1].norm());
    let slow_tail = tail_magnitude > C_TAIL_TOL;
    let flag = if slow_tail { TailFlag::CapHit } else { TailFlag::Threshold };
    Ok(CWeights {
        s_max,
        values: TruncatedSequence::new(-s_max, values, flag),
        phase,
        achieved_tol: achieved,
        grid_size: n,
        tail_magnitude,
        slow_tail,
    })
}

fn coeff_pass(series: &SpectralSeries, phase: PhaseSpec, s_max: i64, n: usize) -> Vec<Complex64> {
    let step = 2.0 * PI / n as f64;
    let samples: Vec<Complex64> = (0..n)
        .map(|j| {
            let p = step * j as f64;
            Complex64::new(0.0, phase.eval(p)).exp() / series.eval(p).sqrt()
        })
        .collect();
    // e^{-i p_j s} = roots[(j·s) mod n]: exact angles, no rotation drift
    let roots: Vec<Complex64> = (0..n)
        .map(|j| Complex64::new(0.0, -step * j as f64).exp())
        .collect();
    let mut out = vec![Complex64::new(0.0, 0.0); (2 * s_max + 1) as usize];
    for (j, g) in samples.iter().enumerate() {
        for (i, acc) in out.iter_mut().enumerate() {
            let s = i as i64 - s_max;
            let idx = (j as i64 * s).rem_euclid(n as i64) as usize;
            *acc += g * roots[idx];
        }
    }
    for acc in out.iter_mut() {
        *acc /= n as f64;
    }
    out
}

/// 2D synthesis weights f_l.
#[derive(Debug, Clone)]
pub struct SynthesisWeights2D {
    pub radius: i64,
    values: Vec<Complex64>,
    pub achieved_tol: f64,
    pub grid_size: usize,
}

impl SynthesisWeights2D {
    pub fn get(&self, l1: i64, l2: i64) -> Complex64 {
        let r = self.radius;
        if l1.abs() > r || l2.abs() > r {
            return Complex64::new(0.0, 0.0);
        }
        let n = (2 * r + 1) as usize;
        self.values[((l1 + r) as usize) * n + (l2 + r) as usize]
    }

    pub fn iter_indexed(&self) -> impl Iterator<Item = (i64, i64, Complex64)> + '_ {
        let r = self.radius;
        let n = 2 * r + 1;
        self.values.iter().enumerate().map(move |(i, &v)| {
            (i as i64 / n - r, i as i64 % n - r, v)
        })
    }

    /// Column sums Σ_{l1} f_{l1,s}; these must reproduce the 1D weights.
    pub fn column_sum(&self, s: i64) -> Complex64 {
        (-self.radius..=self.radius).map(|l1| self.get(l1, s)).sum()
    }
}

/// Tensor-grid Fourier coefficients of e^{iφ(p₂)} / √(S(p₁,p₂)).
pub fn f_weights(table: &OverlapTable, phase: PhaseSpec, radius: i64) -> Result<SynthesisWeights2D> {
    phase.validate()?;
    if radius < 0 {
        return Err(Error::InvalidConfig("f radius must be nonnegative".into()));
    }
    let mut g = 128usize;
    const G_CAP: usize = 1024;
    let mut prev = f_pass(table, phase, radius, g)?;
    let mut achieved = f64::INFINITY;
    loop {
        let next_g = g * 2;
        if next_g > G_CAP {
            break;
        }
        let next = f_pass(table, phase, radius, next_g)?;
        achieved = prev
            .iter()
            .zip(next.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        prev = next;
        g = next_g;
        if achieved < 1e-12 {
            break;
        }
    }
    Ok(SynthesisWeights2D { radius, values: prev, achieved_tol: achieved, grid_size: g })
}

fn f_pass(
    table: &OverlapTable,
    phase: PhaseSpec,
    radius: i64,
    g: usize,
) -> Result<Vec<Complex64>> {
    let step = 2.0 * PI / g as f64;
    let tr = table.radius();
    // inner transform over l2 for each l1 and grid point of p2
    let inner: Vec<Vec<Complex64>> = (-tr..=tr)
        .map(|l1| {
            (0..g)
                .map(|k| {
                    let p2 = step * k as f64;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for l2 in -tr..=tr {
                        acc += table.get(l1, l2) * Complex64::new(0.0, p2 * l2 as f64).exp();
                    }
                    acc
                })
                .collect()
        })
        .collect();
    // assemble S on the grid and check positivity
    let mut s_grid = vec![0.0f64; g * g];
    let mut min_s = f64::INFINITY;
    let mut min_at = (0usize, 0usize);
    for j in 0..g {
        let p1 = step * j as f64;
        let phases: Vec<Complex64> = (-tr..=tr)
            .map(|l1| Complex64::new(0.0, p1 * l1 as f64).exp())
            .collect();
        for k in 0..g {
            let mut acc = Complex64::new(0.0, 0.0);
            for (idx, row) in inner.iter().enumerate() {
                acc += phases[idx] * row[k];
            }
            let v = acc.re;
            s_grid[j * g + k] = v;
            if v < min_s {
                min_s = v;
                min_at = (j, k);
            }
        }
    }
    if min_s <= POS_TOL {
        return Err(Error::Positivity {
            min_value: min_s,
            min_location: step * min_at.1 as f64,
        });
    }
    // weight samples and two-stage Fourier extraction
    let w: Vec<Complex64> = (0..g * g)
        .map(|i| {
            let k = i % g;
            let p2 = step * k as f64;
            Complex64::new(0.0, phase.eval(p2)).exp() / s_grid[i].sqrt()
        })
        .collect();
    let roots: Vec<Complex64> = (0..g)
        .map(|j| Complex64::new(0.0, -step * j as f64).exp())
        .collect();
    let root_at = |j: usize, l: i64| -> Complex64 {
        roots[(j as i64 * l).rem_euclid(g as i64) as usize]
    };
    let n_out = (2 * radius + 1) as usize;
    let mut half = vec![Complex64::new(0.0, 0.0); n_out * g];
    for (li, l1) in (-radius..=radius).enumerate() {
        for k in 0..g {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..g {
                acc += w[j * g + k] * root_at(j, l1);
            }
            half[li * g + k] = acc;
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); n_out * n_out];
    for li in 0..n_out {
        for (mi, l2) in (-radius..=radius).enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..g {
                acc += half[li * g + k] * root_at(k, l2);
            }
            out[li * n_out + mi] = acc / (g * g) as f64;
        }
    }
    Ok(out)
}

/// The filter sequence H_n with its provenance.
#[derive(Debug, Clone)]
pub struct FilterSequence {
    pub values: TruncatedSequence,
    pub seed_descriptor: String,
    pub phase: PhaseSpec,
    /// The index cap was reached before the boundary magnitude fell under
    /// the threshold.
    pub cap_hit: bool,
    pub boundary_magnitude: f64,
    pub n_cap: i64,
}

impl FilterSequence {
    pub fn get(&self, n: i64) -> Complex64 {
        self.values.get(n)
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        self.values.support()
    }

    pub fn sum(&self) -> Complex64 {
        self.values.values.iter().sum()
    }

    pub fn sum_sq(&self) -> f64 {
        self.values.values.iter().map(|v| v.norm_sqr()).sum()
    }

    /// H(ω) = 2^{-1/2} Σ_n H_n e^{-iωn}.
    pub fn symbol(&self, omega: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (n, v) in self.values.iter_indexed() {
            acc += v * Complex64::new(0.0, -omega * n as f64).exp();
        }
        acc / 2f64.sqrt()
    }
}

/// Index window where lattice samples of ĥ are non-negligible, clamped to
/// the cap.
fn sample_index_window(seed: &SeedFunction, cap: i64) -> (i64, i64) {
    let a = seed.lattice().a();
    if let Some((lo, hi)) = seed.momentum_support() {
        // half-open support: the right edge sample is zero
        let n_lo = (lo / a).ceil() as i64;
        let mut n_hi = (hi / a).floor() as i64;
        if (n_hi as f64 * a - hi).abs() < 1e-12 {
            n_hi -= 1;
        }
        (n_lo.max(-cap), n_hi.min(cap))
    } else if let Some((lo, hi)) = seed.momentum_window(1e-13) {
        (((lo / a).floor() as i64).max(-cap), ((hi / a).ceil() as i64).min(cap))
    } else {
        (-cap, cap)
    }
}

/// Direct assembly of H_n = √a Σ_s c_s ĥ((n+2s)a).
pub fn filter_coefficients(seed: &SeedFunction, c: &CWeights, n_cap: i64) -> FilterSequence {
    let a = seed.lattice().a();
    let sqrt_a = a.sqrt();
    let (cand_lo, cand_hi, m_lo, m_hi, s_lo, s_hi) = candidate_range(seed, c, n_cap);
    let samples: Vec<Complex64> = (m_lo..=m_hi)
        .map(|m| seed.eval_ft(m as f64 * a))
        .collect();
    let sample = |m: i64| -> Complex64 {
        if m < m_lo || m > m_hi {
            Complex64::new(0.0, 0.0)
        } else {
            samples[(m - m_lo) as usize]
        }
    };
    let raw: Vec<Complex64> = (cand_lo..=cand_hi)
        .map(|n| {
            let mut acc = Complex64::new(0.0, 0.0);
            for s in s_lo..=s_hi {
                let cs = c.get(s);
                if cs.norm() != 0.0 {
                    acc += cs * sample(n + 2 * s);
                }
            }
            sqrt_a * acc
        })
        .collect();
    finish_filter(seed, c, raw, cand_lo, cand_hi, n_cap)
}

/// The same sequence assembled through the even/odd convolution split:
/// H_{2n} = √a (c̄ * ĥ_even)_n and H_{2n+1} = √a (c̄ * ĥ_odd)_n, where
/// c̄_s = c_{-s} and ĥ_even/odd are the even- and odd-index lattice samples.
pub fn filter_via_convolution(seed: &SeedFunction, c: &CWeights, n_cap: i64) -> FilterSequence {
    let a = seed.lattice().a();
    let sqrt_a = a.sqrt();
    let (cand_lo, cand_hi, m_lo, m_hi, _, _) = candidate_range(seed, c, n_cap);

    // c̄_s = c_{-s}
    let mut rev = c.values.values.clone();
    rev.reverse();
    let c_bar = TruncatedSequence::new(
        -(c.values.offset + c.values.values.len() as i64 - 1),
        rev,
        c.values.tail_flag,
    );

    let k_even_lo = div_ceil(m_lo, 2);
    let k_even_hi = div_floor(m_hi, 2);
    let even = TruncatedSequence::new(
        k_even_lo,
        (k_even_lo..=k_even_hi)
            .map(|k| seed.eval_ft(2.0 * k as f64 * a))
            .collect(),
        TailFlag::Threshold,
    );
    let k_odd_lo = div_ceil(m_lo - 1, 2);
    let k_odd_hi = div_floor(m_hi - 1, 2);
    let odd = TruncatedSequence::new(
        k_odd_lo,
        (k_odd_lo..=k_odd_hi)
            .map(|k| seed.eval_ft((2 * k + 1) as f64 * a))
            .collect(),
        TailFlag::Threshold,
    );
    let conv_even = seqtools::convolve(&c_bar, &even);
    let conv_odd = seqtools::convolve(&c_bar, &odd);

    let raw: Vec<Complex64> = (cand_lo..=cand_hi)
        .map(|n| {
            let half = if n.rem_euclid(2) == 0 {
                conv_even.get(div_floor(n, 2))
            } else {
                conv_odd.get(div_floor(n, 2))
            };
            sqrt_a * half
        })
        .collect();
    finish_filter(seed, c, raw, cand_lo, cand_hi, n_cap)
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

fn candidate_range(
    seed: &SeedFunction,
    c: &CWeights,
    n_cap: i64,
) -> (i64, i64, i64, i64, i64, i64) {
    let (s_lo, s_hi) = c.values.nonzero_core().unwrap_or((0, 0));
    let reach = 2 * c.s_max + n_cap;
    let (m_lo, m_hi) = sample_index_window(seed, reach);
    let cand_lo = (m_lo - 2 * s_hi).max(-n_cap);
    let cand_hi = (m_hi - 2 * s_lo).min(n_cap);
    (cand_lo.min(cand_hi), cand_hi.max(cand_lo), m_lo, m_hi, s_lo, s_hi)
}

fn finish_filter(
    seed: &SeedFunction,
    c: &CWeights,
    mut raw: Vec<Complex64>,
    cand_lo: i64,
    cand_hi: i64,
    n_cap: i64,
) -> FilterSequence {
    let peak = raw.iter().map(|v| v.norm()).fold(0.0, f64::max);
    for v in raw.iter_mut() {
        if v.norm() <= SNAP_REL * peak {
            *v = Complex64::new(0.0, 0.0);
        }
    }
    // trim ends, keeping up to two sub-threshold boundary entries per side
    let below: Vec<bool> = raw.iter().map(|v| v.norm() < FILTER_BOUNDARY_TOL).collect();
    let mut lo_i = 0usize;
    while lo_i + 2 < below.len() && below[lo_i] && below[lo_i + 1] && below[lo_i + 2] {
        lo_i += 1;
    }
    let mut hi_i = below.len() - 1;
    while hi_i >= 2 && below[hi_i] && below[hi_i - 1] && below[hi_i - 2] && hi_i > lo_i + 1 {
        hi_i -= 1;
    }
    let values = raw[lo_i..=hi_i].to_vec();
    let offset = cand_lo + lo_i as i64;
    // Largest magnitude near either end; parity-structured sequences carry
    // exact zeros between live entries, so a single boundary value is not
    // representative.
    let edge = values.len().min(4);
    let boundary_magnitude = values[..edge]
        .iter()
        .chain(values[values.len() - edge..].iter())
        .map(|v| v.norm())
        .fold(0.0f64, f64::max);
    let cap_hit = (offset == -n_cap && boundary_magnitude >= FILTER_BOUNDARY_TOL)
        || (cand_hi == n_cap
            && offset + values.len() as i64 - 1 == n_cap
            && boundary_magnitude >= FILTER_BOUNDARY_TOL);
    let flag = if cap_hit { TailFlag::CapHit } else { TailFlag::Threshold };
    FilterSequence {
        values: TruncatedSequence::new(offset, values, flag),
        seed_descriptor: seed.descriptor(),
        phase: c.phase,
        cap_hit,
        boundary_magnitude,
        n_cap,
    }
}

/// Filter assembly through the 2D weights: H_n = √a Σ_l f_l ĥ((n+2 l₂)a).
/// The summand only sees l₂, so the column sums of f act as 1D weights.
pub fn filter_from_f2d(
    seed: &SeedFunction,
    f: &SynthesisWeights2D,
    phase: PhaseSpec,
    n_cap: i64,
) -> FilterSequence {
    let values: Vec<Complex64> = (-f.radius..=f.radius).map(|s| f.column_sum(s)).collect();
    let tail_magnitude = values
        .first()
        .map(|v| v.norm())
        .unwrap_or(0.0)
        .max(values.last().map(|v| v.norm()).unwrap_or(0.0));
    let weights = CWeights {
        s_max: f.radius,
        values: TruncatedSequence::new(-f.radius, values, TailFlag::Threshold),
        phase,
        achieved_tol: f.achieved_tol,
        grid_size: f.grid_size,
        tail_magnitude,
        slow_tail: tail_magnitude > C_TAIL_TOL,
    };
    filter_coefficients(seed, &weights, n_cap)
}

/// Point value of the orthonormalized function
/// H(P) = Σ_l f_l h(P − a l₁) e^{-2 i a P l₂}.
pub fn synthesize_h(seed: &SeedFunction, f: &SynthesisWeights2D, big_p: f64) -> Complex64 {
    let a = seed.lattice().a();
    let mut acc = Complex64::new(0.0, 0.0);
    for l1 in -f.radius..=f.radius {
        let h_shift = seed.eval(big_p - a * l1 as f64);
        if h_shift.norm() == 0.0 {
            continue;
        }
        let mut inner = Complex64::new(0.0, 0.0);
        for l2 in -f.radius..=f.radius {
            let w = f.get(l1, l2);
            if w.norm() != 0.0 {
                inner += w * Complex64::new(0.0, -2.0 * a * big_p * l2 as f64).exp();
            }
        }
        acc += h_shift * inner;
    }
    acc
}

/// Momentum-side counterpart Ĥ(q) = Σ_l f_l e^{-i(q + 2 a l₂) a l₁} ĥ(q + 2 a l₂).
pub fn synthesize_h_ft(seed: &SeedFunction, f: &SynthesisWeights2D, q: f64) -> Complex64 {
    let a = seed.lattice().a();
    let mut acc = Complex64::new(0.0, 0.0);
    for l2 in -f.radius..=f.radius {
        let ft = seed.eval_ft(q + 2.0 * a * l2 as f64);
        if ft.norm() == 0.0 {
            continue;
        }
        let mut inner = Complex64::new(0.0, 0.0);
        for l1 in -f.radius..=f.radius {
            let w = f.get(l1, l2);
            if w.norm() != 0.0 {
                inner += w
                    * Complex64::new(0.0, -(q + 2.0 * a * l2 as f64) * a * l1 as f64).exp();
            }
        }
        acc += ft * inner;
    }
    acc
}

/// Orthonormality residual of the synthesized function:
/// ∫ H(P) conj(H(P − a l₁)) e^{-2 i a P l₂} dP − δ_{l,0}.
///
/// The integral runs on whichever side of the transform has fast decay for
/// this seed; both sides are unitarily equivalent.
pub fn onc_residual(
    seed: &SeedFunction,
    f: &SynthesisWeights2D,
    l1: i64,
    l2: i64,
) -> Result<Complex64> {
    let a = seed.lattice().a();
    let delta = if l1 == 0 && l2 == 0 { 1.0 } else { 0.0 };
    let reach = a * f.radius as f64;
    let integral = match preferred_onc_form(seed) {
        IntegralForm::Position => {
            let (lo, hi) = seed
                .position_window(1e-15)
                .or(seed.position_support())
                .ok_or_else(|| Error::Integration {
                    what: "orthonormality residual: no position window".into(),
                    residual: f64::INFINITY,
                })?;
            let lo = lo - reach - (l1.max(0) as f64) * a;
            let hi = hi + reach + ((-l1).max(0) as f64) * a;
            let freq = 2.0 * a * (f.radius + l2.abs()) as f64 + a * l1.abs() as f64;
            let r = quad::integrate(
                |p| {
                    synthesize_h(seed, f, p)
                        * synthesize_h(seed, f, p - l1 as f64 * a).conj()
                        * Complex64::new(0.0, -2.0 * l2 as f64 * a * p).exp()
                },
                lo,
                hi,
                &QuadOptions::oscillatory(1e-9, freq, hi - lo),
            );
            if !r.converged {
                return Err(Error::Integration {
                    what: format!("orthonormality residual ({l1},{l2})"),
                    residual: r.abs_error,
                });
            }
            r.value
        }
        IntegralForm::Momentum => {
            // Unitarily equivalent form with ĥ-side shifts:
            // ∫ e^{i l₁ a q} conj(Ĥ(q − 2 l₂ a)) Ĥ(q) dq.
            let (lo, hi) = seed
                .momentum_support()
                .or(seed.momentum_window(1e-15))
                .ok_or_else(|| Error::Integration {
                    what: "orthonormality residual: no momentum window".into(),
                    residual: f64::INFINITY,
                })?;
            let lo = lo - 2.0 * reach - 2.0 * (l2.max(0) as f64) * a;
            let hi = hi + 2.0 * reach + 2.0 * ((-l2).max(0) as f64) * a;
            let freq = a * (f.radius + l1.abs()) as f64 + a;
            let r = quad::integrate(
                |q| {
                    Complex64::new(0.0, l1 as f64 * a * q).exp()
                        * synthesize_h_ft(seed, f, q - 2.0 * l2 as f64 * a).conj()
                        * synthesize_h_ft(seed, f, q)
                },
                lo,
                hi,
                &QuadOptions::oscillatory(1e-9, freq, hi - lo),
            );
            if !r.converged {
                return Err(Error::Integration {
                    what: format!("orthonormality residual ({l1},{l2})"),
                    residual: r.abs_error,
                });
            }
            r.value
        }
    };
    Ok(integral - Complex64::new(delta, 0.0))
}

fn preferred_onc_form(seed: &SeedFunction) -> IntegralForm {
    match seed.family() {
        SeedFamily::BoxMomentum { .. } | SeedFamily::Tabulated(_) => IntegralForm::Momentum,
        SeedFamily::BoxPosition { .. } | SeedFamily::LorentzianFt | SeedFamily::Gaussian => {
            IntegralForm::Position
        }
    }
}

/// ∫ |H(P)|² dP for the synthesized function.
pub fn synthesized_norm_sq(seed: &SeedFunction, f: &SynthesisWeights2D) -> Result<f64> {
    let v = onc_residual(seed, f, 0, 0)?;
    Ok(v.re + 1.0)
}

/// Convenience wrapper building the full numeric pipeline for one seed.
#[derive(Debug, Clone)]
pub struct RunParams {
    pub radius: i64,
    pub s_max: i64,
    pub n_cap: i64,
    pub phase: PhaseSpec,
    pub f_radius: Option<i64>,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            radius: 8,
            s_max: 32,
            n_cap: DEFAULT_N_CAP,
            phase: PhaseSpec::Zero,
            f_radius: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub table: OverlapTable,
    pub series: SpectralSeries,
    pub weights: CWeights,
    pub filter: FilterSequence,
}

/// Overlap table → spectral series → weights → filter.
pub fn run_pipeline(seed: &SeedFunction, params: &RunParams) -> Result<PipelineRun> {
    let table = overlap::overlap_table(seed, params.radius)?;
    let series = overlap::spectral_series(&table);
    let weights = c_weights(&series, params.phase, params.s_max)?;
    let filter = filter_coefficients(seed, &weights, params.n_cap);
    Ok(PipelineRun { table, series, weights, filter })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlap::{overlap_table, spectral_series};
    use crate::seed::{SeedFamily, SeedFunction};

    const A: f64 = 2.5066282746310002;

    fn pipeline(family: SeedFamily, radius: i64, s_max: i64) -> (SeedFunction, PipelineRun) {
        let seed = SeedFunction::new(family).unwrap();
        let run = run_pipeline(
            &seed,
            &RunParams { radius, s_max, ..RunParams::default() },
        )
        .unwrap();
        (seed, run)
    }

    #[test]
    fn unit_series_gives_delta_weights() {
        let (_, run) = pipeline(SeedFamily::BoxMomentum { width: 1.0 }, 2, 8);
        assert!((run.weights.get(0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        for s in 1..=8 {
            assert_eq!(run.weights.get(s).norm(), 0.0, "c_{s} should snap to zero");
            assert_eq!(run.weights.get(-s).norm(), 0.0);
        }
    }

    #[test]
    fn linear_phase_shifts_delta_weights() {
        let seed = SeedFunction::new(SeedFamily::BoxMomentum { width: 1.0 }).unwrap();
        let table = overlap_table(&seed, 2).unwrap();
        let series = spectral_series(&table);
        let w = c_weights(&series, PhaseSpec::Linear(3), 8).unwrap();
        assert!((w.get(3) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(w.get(0).norm(), 0.0);
    }

    #[test]
    fn gaussian_weights_match_quadrature_oracle() {
        let (_, run) = pipeline(SeedFamily::Gaussian, 5, 12);
        assert!((run.weights.get(0).re - 0.8393326697305034).abs() < 1e-8);
        assert!((run.weights.get(1).re - (-0.0007837059214657294)).abs() < 1e-9);
        assert!((run.weights.get(2).re - 1.0976433286838568e-6).abs() < 1e-9);
        assert!(run.weights.get(1).im.abs() < 1e-12);
        // conjugate symmetry at zero phase
        assert!((run.weights.get(-1) - run.weights.get(1).conj()).norm() < 1e-12);
        assert!(!run.weights.slow_tail);
    }

    #[test]
    fn positivity_gate_rejects_even_box() {
        let seed = SeedFunction::new(SeedFamily::BoxMomentum { width: 4.0 }).unwrap();
        let table = overlap_table(&seed, 4).unwrap();
        let series = spectral_series(&table);
        match c_weights(&series, PhaseSpec::Zero, 8) {
            Err(Error::Positivity { min_value, .. }) => {
                assert!(min_value.abs() < 1e-6, "min {min_value}")
            }
            other => panic!("expected positivity error, got {other:?}"),
        }
    }

    #[test]
    fn haar_filter_taps() {
        let (_, run) = pipeline(SeedFamily::BoxMomentum { width: 2.0 }, 3, 8);
        let h = &run.filter;
        assert!((h.get(0).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-11);
        assert!((h.get(1).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-11);
        let (lo, hi) = h.support().unwrap();
        for n in lo..=hi {
            if n != 0 && n != 1 {
                assert!(h.get(n).norm() < 1e-12, "H_{n} = {}", h.get(n));
            }
        }
        assert!(!h.cap_hit);
    }

    #[test]
    fn unit_box_filter_is_single_tap() {
        let (_, run) = pipeline(SeedFamily::BoxMomentum { width: 1.0 }, 2, 8);
        assert!((run.filter.get(0).re - 1.0).abs() < 1e-11);
        assert!((run.filter.sum_sq() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn integer_position_box_filter_is_single_tap() {
        let (_, run) = pipeline(SeedFamily::BoxPosition { width: 2.0 }, 3, 8);
        assert!((run.filter.get(0).re - 1.0).abs() < 1e-10, "{}", run.filter.get(0));
        for n in 1..=4 {
            assert!(run.filter.get(n).norm() < 1e-10);
            assert!(run.filter.get(-n).norm() < 1e-10);
        }
    }

    #[test]
    fn gaussian_filter_values() {
        let (_, run) = pipeline(SeedFamily::Gaussian, 5, 12);
        assert!((run.filter.get(0).re - 0.9981403761974166).abs() < 1e-8);
        // side taps sit near the crude estimate H₀ e^{-π}
        let crude = 0.9981403761974166 * (-std::f64::consts::PI).exp();
        assert!((run.filter.get(1).re - crude).abs() < 1e-3 * crude.abs());
        assert!((run.filter.get(1).re - 0.043093282031985906).abs() < 1e-8);
        assert!((run.filter.sum_sq() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn convolution_route_matches_direct() {
        for (family, radius, s_max) in [
            (SeedFamily::BoxMomentum { width: 1.0 }, 2, 8),
            (SeedFamily::BoxMomentum { width: 2.0 }, 2, 8),
            (SeedFamily::BoxMomentum { width: 3.0 }, 4, 24),
            (SeedFamily::Gaussian, 5, 12),
        ] {
            let (seed, run) = pipeline(family.clone(), radius, s_max);
            let direct = &run.filter;
            let conv = filter_via_convolution(&seed, &run.weights, DEFAULT_N_CAP);
            let (lo1, hi1) = direct.support().unwrap();
            let (lo2, hi2) = conv.support().unwrap();
            let (lo, hi) = (lo1.min(lo2), hi1.max(hi2));
            for n in lo..=hi {
                assert!(
                    (direct.get(n) - conv.get(n)).norm() < 1e-12,
                    "{family:?} at n={n}: {} vs {}",
                    direct.get(n),
                    conv.get(n)
                );
            }
        }
    }

    #[test]
    fn f_weights_delta_for_orthonormal_seeds() {
        for w in [1.0, 2.0] {
            let seed = SeedFunction::new(SeedFamily::BoxMomentum { width: w }).unwrap();
            let table = overlap_table(&seed, 2).unwrap();
            let f = f_weights(&table, PhaseSpec::Zero, 2).unwrap();
            for (l1, l2, v) in f.iter_indexed() {
                let want = if l1 == 0 && l2 == 0 { 1.0 } else { 0.0 };
                assert!(
                    (v - Complex64::new(want, 0.0)).norm() < 1e-10,
                    "w={w} f({l1},{l2}) = {v}"
                );
            }
        }
    }

    #[test]
    fn f_column_sums_reproduce_c_weights() {
        let seed = SeedFunction::new(SeedFamily::Gaussian).unwrap();
        let table = overlap_table(&seed, 5).unwrap();
        let series = spectral_series(&table);
        let c = c_weights(&series, PhaseSpec::Zero, 4).unwrap();
        // the factor coefficients decay like e^{-π|l1|/2}, so the truncated
        // column sums converge at about one digit per unit of radius
        let f = f_weights(&table, PhaseSpec::Zero, 12).unwrap();
        for s in -4..=4 {
            assert!(
                (f.column_sum(s) - c.get(s)).norm() < 1e-9,
                "s={s}: {} vs {}",
                f.column_sum(s),
                c.get(s)
            );
        }
    }

    #[test]
    fn synthesized_h_equals_seed_when_already_orthonormal() {
        let seed = SeedFunction::new(SeedFamily::BoxMomentum { width: 2.0 }).unwrap();
        let table = overlap_table(&seed, 2).unwrap();
        let f = f_weights(&table, PhaseSpec::Zero, 2).unwrap();
        for p in [0.0, 0.3, 1.7] {
            let h = synthesize_h(&seed, &f, p);
            assert!((h - seed.eval(p)).norm() < 1e-10, "P={p}");
        }
    }

    #[test]
    fn gaussian_synthesized_h_is_normalized() {
        let seed = SeedFunction::new(SeedFamily::Gaussian).unwrap();
        let table = overlap_table(&seed, 5).unwrap();
        let f = f_weights(&table, PhaseSpec::Zero, 8).unwrap();
        let norm = synthesized_norm_sq(&seed, &f).unwrap();
        assert!((norm - 1.0).abs() < 1e-6, "∫|H|² = {norm}");
    }

    #[test]
    fn gaussian_onc_residuals_small() {
        let seed = SeedFunction::new(SeedFamily::Gaussian).unwrap();
        let table = overlap_table(&seed, 5).unwrap();
        let f = f_weights(&table, PhaseSpec::Zero, 8).unwrap();
        for (l1, l2) in [(0i64, 0i64), (1, 0)] {
            let r = onc_residual(&seed, &f, l1, l2).unwrap();
            assert!(r.norm() < 1e-6, "({l1},{l2}): {r}");
        }
    }

    #[test]
    fn orthonormal_seed_onc_residuals_vanish() {
        let seed = SeedFunction::new(SeedFamily::BoxMomentum { width: 2.0 }).unwrap();
        let table = overlap_table(&seed, 2).unwrap();
        let f = f_weights(&table, PhaseSpec::Zero, 2).unwrap();
        for (l1, l2) in [(1i64, 0i64), (0, 1), (2, 2)] {
            let r = onc_residual(&seed, &f, l1, l2).unwrap();
            assert!(r.norm() < 1e-8, "({l1},{l2}): {r}");
        }
    }

    #[test]
    fn quadratic_phase_weights_decay_slowly() {
        let seed = SeedFunction::new(SeedFamily::BoxMomentum { width: 2.0 }).unwrap();
        let table = overlap_table(&seed, 2).unwrap();
        let series = spectral_series(&table);
        let c = c_weights(&series, PhaseSpec::Quadratic(1.0), 64).unwrap();
        assert!(c.slow_tail);
        // |c_s| ~ 1/|s| for large |s|; endpoint asymptotics of the
        // oscillatory integral give |1 − e^{4π²iγ}| / (2π|s|).
        let amp = (Complex64::new(1.0, 0.0)
            - Complex64::new(0.0, 4.0 * PI * PI).exp())
        .norm()
            / (2.0 * PI);
        for s in [40i64, 56, 64] {
            let got = c.get(s).norm();
            let want = amp / s as f64;
            assert!(
                (got - want).abs() < 0.35 * want,
                "s={s}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn filter_support_tracks_linear_phase() {
        let seed = SeedFunction::new(SeedFamily::BoxMomentum { width: 2.0 }).unwrap();
        let table = overlap_table(&seed, 2).unwrap();
        let series = spectral_series(&table);
        let c = c_weights(&series, PhaseSpec::Linear(3), 8).unwrap();
        let h = filter_coefficients(&seed, &c, DEFAULT_N_CAP);
        assert!((h.get(-6).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-11);
        assert!((h.get(-5).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-11);
        assert!(h.get(0).norm() < 1e-12);
    }

    #[test]
    fn slow_seed_hits_filter_cap() {
        let seed = SeedFunction::new(SeedFamily::BoxPosition { width: 1.5 }).unwrap();
        let run = run_pipeline(
            &seed,
            &RunParams { radius: 4, s_max: 8, n_cap: 64, ..RunParams::default() },
        )
        .unwrap();
        assert!(run.filter.cap_hit);
        assert!(run.filter.boundary_magnitude > FILTER_BOUNDARY_TOL);
    }

    #[test]
    fn half_lattice_example_filter_values() {
        let (_, run) = pipeline(SeedFamily::BoxPosition { width: 1.5 }, 4, 8);
        // H₀ = √(9/10); odd taps decay like √(2/5)/(π|n|)
        assert!((run.filter.get(0).re - 0.9486832980505138).abs() < 1e-9);
        let h1 = run.filter.get(1);
        assert!((h1.norm() - 0.20131684841794814).abs() < 1e-9, "{h1}");
        assert!(run.filter.get(2).norm() < 1e-10);
        let h3 = run.filter.get(3).norm();
        assert!((h3 - 0.20131684841794814 / 3.0).abs() < 1e-9);
    }
}
