//! Lattice overlap coefficients of a seed function, the 1D spectral series
//! built from them, Poisson-summation cross-checks, and the summation rules
//! tying everything together.
//!
//! The overlap coefficient with indices (l1, l2) has two equivalent integral
//! representations,
//!
//!   ∫ e^{-2 i l2 a x} conj(h(x − l1 a)) h(x) dx
//! = ∫ e^{+i l1 a p} conj(ĥ(p − 2 l2 a)) ĥ(p) dp,
//!
//! and each entry is computed in whichever representation decays fastest for
//! the seed at hand. The factor 2 on l2 reflects the half-filled lattice the
//! construction lives on.

use crate::error::{Error, Result};
use crate::quad::{self, QuadOptions};
use crate::seed::{SeedFamily, SeedFunction};
use num_complex::Complex64;
use rayon::prelude::*;

/// Which of the two integral representations to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralForm {
    Position,
    Momentum,
}

/// Truncated table of overlap coefficients for |l1|, |l2| ≤ radius.
#[derive(Debug, Clone)]
pub struct OverlapTable {
    radius: i64,
    values: Vec<Complex64>,
    tail_bound: f64,
}

impl OverlapTable {
    pub fn radius(&self) -> i64 {
        self.radius
    }

    /// Largest entry magnitude (computed or bounded) on the boundary ring.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn under_truncated(&self, tail_tol: f64) -> bool {
        self.tail_bound > tail_tol
    }

    pub fn get(&self, l1: i64, l2: i64) -> Complex64 {
        let r = self.radius;
        if l1.abs() > r || l2.abs() > r {
            return Complex64::new(0.0, 0.0);
        }
        let n = (2 * r + 1) as usize;
        self.values[((l1 + r) as usize) * n + (l2 + r) as usize]
    }

    /// Σ over the stored table of all entries.
    pub fn total_sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn iter_indexed(&self) -> impl Iterator<Item = (i64, i64, Complex64)> + '_ {
        let r = self.radius;
        let n = 2 * r + 1;
        self.values.iter().enumerate().map(move |(i, &v)| {
            let l1 = i as i64 / n - r;
            let l2 = i as i64 % n - r;
            (l1, l2, v)
        })
    }
}

fn default_tol(seed: &SeedFunction) -> f64 {
    match seed.family() {
        SeedFamily::Tabulated(_) => 1e-9,
        _ => 1e-11,
    }
}

fn preferred_form(seed: &SeedFunction) -> IntegralForm {
    match seed.family() {
        SeedFamily::BoxPosition { .. } | SeedFamily::LorentzianFt => IntegralForm::Position,
        _ => IntegralForm::Momentum,
    }
}

/// Interval where the product |f(t − shift) f(t)| is non-negligible, with a
/// truncation-tail budget of roughly `tol`. `None` means the product is zero
/// (disjoint compact supports) or the form is unavailable for this family.
fn product_window(
    seed: &SeedFunction,
    form: IntegralForm,
    shift: f64,
    tol: f64,
) -> Option<Option<(f64, f64)>> {
    let support = match form {
        IntegralForm::Position => seed.position_support(),
        IntegralForm::Momentum => seed.momentum_support(),
    };
    if let Some((lo, hi)) = support {
        let ilo = lo.max(lo + shift);
        let ihi = hi.min(hi + shift);
        if ilo >= ihi {
            return Some(None);
        }
        return Some(Some((ilo, ihi)));
    }
    match (seed.family(), form) {
        (SeedFamily::Gaussian, _) => {
            let (lo, hi) = seed.position_window(1e-16).expect("gaussian window");
            let ilo = lo.max(lo + shift);
            let ihi = hi.min(hi + shift);
            if ilo >= ihi {
                Some(None)
            } else {
                Some(Some((ilo, ihi)))
            }
        }
        (SeedFamily::LorentzianFt, IntegralForm::Position) => {
            let (lo, hi) = seed.position_window(1e-16).expect("lorentzian window");
            let ilo = lo.max(lo + shift);
            let ihi = hi.min(hi + shift);
            if ilo >= ihi {
                Some(None)
            } else {
                Some(Some((ilo, ihi)))
            }
        }
        (SeedFamily::LorentzianFt, IntegralForm::Momentum) => {
            // |ĥ(p−c)ĥ(p)| decays like p⁻⁴ away from both lumps; reach X keeps
            // the discarded tail below ~tol.
            let a = seed.lattice().a();
            let x = (8.0 / (3.0 * a * a * tol.max(1e-14))).cbrt().max(50.0);
            Some(Some((shift.min(0.0) - x, shift.max(0.0) + x)))
        }
        _ => None,
    }
}

/// Overlap integral in an explicitly chosen representation.
pub fn overlap_coefficient_in(
    seed: &SeedFunction,
    l1: i64,
    l2: i64,
    form: IntegralForm,
) -> Result<Complex64> {
    let a = seed.lattice().a();
    let tol = default_tol(seed);
    let (shift, freq) = match form {
        IntegralForm::Position => (l1 as f64 * a, 2.0 * l2 as f64 * a),
        IntegralForm::Momentum => (2.0 * l2 as f64 * a, l1 as f64 * a),
    };
    let window = product_window(seed, form, shift, tol).ok_or_else(|| Error::Integration {
        what: format!("overlap ({l1},{l2}): no usable window in {form:?} form"),
        residual: f64::INFINITY,
    })?;
    let Some((lo, hi)) = window else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let opts = QuadOptions::oscillatory(tol, freq, hi - lo);
    let r = match form {
        IntegralForm::Position => quad::integrate(
            |x| {
                Complex64::new(0.0, -2.0 * l2 as f64 * a * x).exp()
                    * seed.eval(x - shift).conj()
                    * seed.eval(x)
            },
            lo,
            hi,
            &opts,
        ),
        IntegralForm::Momentum => quad::integrate(
            |p| {
                Complex64::new(0.0, l1 as f64 * a * p).exp()
                    * seed.eval_ft(p - shift).conj()
                    * seed.eval_ft(p)
            },
            lo,
            hi,
            &opts,
        ),
    };
    if !r.converged {
        return Err(Error::Integration {
            what: format!("overlap coefficient ({l1},{l2})"),
            residual: r.abs_error,
        });
    }
    Ok(r.value)
}

/// Overlap integral in the representation best suited to the seed.
pub fn overlap_coefficient(seed: &SeedFunction, l1: i64, l2: i64) -> Result<Complex64> {
    overlap_coefficient_in(seed, l1, l2, preferred_form(seed))
}

/// A priori bound |S_{l1,l2}| ≤ ∫|f(t−shift)||f(t)| dt, independent of the
/// phase index. Returns None when the form is unavailable.
fn amplitude_bound(seed: &SeedFunction, form: IntegralForm, shift: f64) -> Option<f64> {
    let window = product_window(seed, form, shift, 1e-12)?;
    let Some((lo, hi)) = window else { return Some(0.0) };
    let r = match form {
        IntegralForm::Position => quad::integrate_real(
            |x| (seed.eval(x - shift) * seed.eval(x)).norm(),
            lo,
            hi,
            &QuadOptions { abs_tol: 1e-12, max_panels: 20_000, init_panels: 32 },
        ),
        IntegralForm::Momentum => quad::integrate_real(
            |p| (seed.eval_ft(p - shift) * seed.eval_ft(p)).norm(),
            lo,
            hi,
            &QuadOptions { abs_tol: 1e-12, max_panels: 20_000, init_panels: 32 },
        ),
    };
    Some(r.value.re.max(0.0))
}

/// Entries whose amplitude bound falls below this are recorded as zero
/// without integrating.
const SKIP_BOUND: f64 = 1e-13;

/// Full table for |l1|, |l2| ≤ radius. Entries are independent integrals and
/// are evaluated in parallel; lattice symmetry S_{-l} = conj(S_l) halves the
/// work.
pub fn overlap_table(seed: &SeedFunction, radius: i64) -> Result<OverlapTable> {
    if radius < 1 {
        return Err(Error::InvalidConfig(format!(
            "table radius must be >= 1, got {radius}"
        )));
    }
    let a = seed.lattice().a();
    let n = (2 * radius + 1) as usize;

    // Cache amplitude bounds along each axis.
    let pos_available = matches!(
        seed.family(),
        SeedFamily::BoxPosition { .. } | SeedFamily::Gaussian | SeedFamily::LorentzianFt
    );
    let mom_available = !matches!(seed.family(), SeedFamily::BoxPosition { .. });
    let amp_pos: Option<Vec<f64>> = pos_available.then(|| {
        (0..=radius)
            .map(|l1| {
                amplitude_bound(seed, IntegralForm::Position, l1 as f64 * a).unwrap_or(f64::INFINITY)
            })
            .collect()
    });
    let amp_mom: Option<Vec<f64>> = mom_available.then(|| {
        (0..=radius)
            .map(|l2| {
                amplitude_bound(seed, IntegralForm::Momentum, 2.0 * l2 as f64 * a)
                    .unwrap_or(f64::INFINITY)
            })
            .collect()
    });
    let bound = |l1: i64, l2: i64| -> f64 {
        let mut b = f64::INFINITY;
        if let Some(ap) = &amp_pos {
            b = b.min(ap[l1.unsigned_abs() as usize]);
        }
        if let Some(am) = &amp_mom {
            b = b.min(am[l2.unsigned_abs() as usize]);
        }
        b
    };

    let mut pairs = Vec::new();
    for l1 in 0..=radius {
        let l2_lo = if l1 == 0 { 0 } else { -radius };
        for l2 in l2_lo..=radius {
            pairs.push((l1, l2));
        }
    }
    let computed: Result<Vec<(i64, i64, Complex64, f64)>> = pairs
        .par_iter()
        .map(|&(l1, l2)| {
            let b = bound(l1, l2);
            if b < SKIP_BOUND {
                // recorded as zero; b itself bounds the discarded magnitude
                Ok((l1, l2, Complex64::new(0.0, 0.0), b))
            } else {
                let v = overlap_coefficient(seed, l1, l2)?;
                Ok((l1, l2, v, v.norm()))
            }
        })
        .collect();
    let computed = computed?;

    let mut values = vec![Complex64::new(0.0, 0.0); n * n];
    let mut magnitudes = vec![0.0f64; n * n];
    let idx = |l1: i64, l2: i64| ((l1 + radius) as usize) * n + (l2 + radius) as usize;
    for (l1, l2, v, mag) in computed {
        values[idx(l1, l2)] = v;
        values[idx(-l1, -l2)] = v.conj();
        magnitudes[idx(l1, l2)] = mag;
        magnitudes[idx(-l1, -l2)] = mag;
    }

    let mut tail_bound: f64 = 0.0;
    for l1 in -radius..=radius {
        for l2 in [-radius, radius] {
            tail_bound = tail_bound.max(magnitudes[idx(l1, l2)]);
        }
    }
    for l2 in -radius..=radius {
        for l1 in [-radius, radius] {
            tail_bound = tail_bound.max(magnitudes[idx(l1, l2)]);
        }
    }

    Ok(OverlapTable { radius, values, tail_bound })
}

/// The 1D Fourier series S(0,p) = Σ_r T_r e^{ipr} with T_r = Σ_{l1} S_{l1,r},
/// together with a certified minimum over [0, 2π).
#[derive(Debug, Clone)]
pub struct SpectralSeries {
    radius: i64,
    coeffs: Vec<Complex64>,
    pub min_value: f64,
    pub min_location: f64,
}

impl SpectralSeries {
    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn coeff(&self, r: i64) -> Complex64 {
        if r.abs() > self.radius {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(r + self.radius) as usize]
        }
    }

    /// Real value of the series; the coefficients satisfy T_{-r} = conj(T_r),
    /// so the imaginary parts cancel pairwise.
    pub fn eval(&self, p: f64) -> f64 {
        let mut s = self.coeff(0).re;
        for r in 1..=self.radius {
            let t = self.coeff(r);
            s += 2.0 * (t.re * (p * r as f64).cos() - t.im * (p * r as f64).sin());
        }
        s
    }

    /// Raw complex sum, exposing any asymmetry of the coefficients.
    pub fn eval_complex(&self, p: f64) -> Complex64 {
        let mut s = Complex64::new(0.0, 0.0);
        for r in -self.radius..=self.radius {
            s += self.coeff(r) * Complex64::new(0.0, p * r as f64).exp();
        }
        s
    }

    /// Series value at the origin: the truncated total lattice sum.
    pub fn origin_value(&self) -> f64 {
        self.eval(0.0)
    }
}

const MIN_SEARCH_GRID: usize = 4096;

/// Column sums of the table plus a dense-grid minimum search with
/// golden-section refinement.
pub fn spectral_series(table: &OverlapTable) -> SpectralSeries {
    let radius = table.radius();
    let coeffs: Vec<Complex64> = (-radius..=radius)
        .map(|r| {
            let mut t = Complex64::new(0.0, 0.0);
            for l1 in -radius..=radius {
                t += table.get(l1, r);
            }
            t
        })
        .collect();
    let mut series = SpectralSeries { radius, coeffs, min_value: 0.0, min_location: 0.0 };

    let two_pi = 2.0 * std::f64::consts::PI;
    let mut best = (series.eval(0.0), 0.0);
    for j in 1..MIN_SEARCH_GRID {
        let p = two_pi * j as f64 / MIN_SEARCH_GRID as f64;
        let v = series.eval(p);
        if v < best.0 {
            best = (v, p);
        }
    }
    let h = two_pi / MIN_SEARCH_GRID as f64;
    let (mut lo, mut hi) = (best.1 - h, best.1 + h);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - phi * (hi - lo);
    let mut x2 = lo + phi * (hi - lo);
    let mut f1 = series.eval(x1);
    let mut f2 = series.eval(x2);
    for _ in 0..80 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = series.eval(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = series.eval(x2);
        }
    }
    let p_min = 0.5 * (lo + hi);
    let v_min = series.eval(p_min);
    if v_min < best.0 {
        best = (v_min, p_min);
    }
    series.min_value = best.0;
    series.min_location = best.1.rem_euclid(two_pi);
    series
}

/// One row comparison of a lattice sum against its sample-sum counterpart.
#[derive(Debug, Clone)]
pub struct PsfRow {
    pub index: i64,
    pub lattice_sum: Complex64,
    pub sample_sum: Complex64,
    pub residual: f64,
    /// Estimated contribution lost to the table truncation for this row.
    pub row_tail: f64,
}

impl PsfRow {
    /// Pass within the larger of the tolerance and the truncation budget.
    pub fn passes(&self, tol: f64) -> bool {
        self.residual <= tol.max(3.0 * self.row_tail)
    }
}

/// Cross-check report: momentum rows compare Σ_{l1} S_{l1,r2} against
/// a Σ_n ĥ(na) conj(ĥ((n−2 r2)a)); position rows compare Σ_{l2} S_{r1,l2}
/// against (a/2) Σ_n h(na/2) conj(h(a(n−2 r1)/2)).
#[derive(Debug, Clone)]
pub struct PsfReport {
    pub momentum_rows: Vec<PsfRow>,
    pub position_rows: Vec<PsfRow>,
    pub tol: f64,
}

impl PsfReport {
    pub fn all_pass(&self) -> bool {
        self.momentum_rows.iter().all(|r| r.passes(self.tol))
            && self.position_rows.iter().all(|r| r.passes(self.tol))
    }

    pub fn max_residual(&self) -> f64 {
        self.momentum_rows
            .iter()
            .chain(self.position_rows.iter())
            .map(|r| r.residual)
            .fold(0.0, f64::max)
    }
}

const PSF_TOL: f64 = 1e-6;
const PSF_ROW_LIMIT: i64 = 6;

/// Evaluates both summation identities row by row. Disagreements are data:
/// they flag seeds for which the Poisson summation step is not valid at the
/// achievable truncation, and are never errors.
pub fn psf_crosscheck(seed: &SeedFunction, table: &OverlapTable) -> PsfReport {
    let a = seed.lattice().a();
    let radius = table.radius();
    let row_limit = radius.min(PSF_ROW_LIMIT);

    let momentum_rows = (-row_limit..=row_limit)
        .map(|r2| {
            let mut lattice_sum = Complex64::new(0.0, 0.0);
            for l1 in -radius..=radius {
                lattice_sum += table.get(l1, r2);
            }
            let row_tail =
                2.0 * (table.get(radius, r2).norm().max(table.get(-radius, r2).norm()))
                    * radius as f64;
            let sample_sum = a * lattice_pair_sum(seed, |n| n as f64 * a, |n| (n - 2 * r2) as f64 * a);
            let residual = (lattice_sum - sample_sum).norm();
            PsfRow { index: r2, lattice_sum, sample_sum, residual, row_tail }
        })
        .collect();

    let position_rows = (-row_limit..=row_limit)
        .map(|r1| {
            let mut lattice_sum = Complex64::new(0.0, 0.0);
            for l2 in -radius..=radius {
                lattice_sum += table.get(r1, l2);
            }
            let row_tail =
                2.0 * (table.get(r1, radius).norm().max(table.get(r1, -radius).norm()))
                    * radius as f64;
            let sample_sum = 0.5
                * a
                * position_pair_sum(seed, |n| n as f64 * a / 2.0, |n| (n - 2 * r1) as f64 * a / 2.0);
            let residual = (lattice_sum - sample_sum).norm();
            PsfRow { index: r1, lattice_sum, sample_sum, residual, row_tail }
        })
        .collect();

    PsfReport { momentum_rows, position_rows, tol: PSF_TOL }
}

/// Σ_n ĥ(f(n)) conj(ĥ(g(n))) with adaptive symmetric range.
fn lattice_pair_sum(
    seed: &SeedFunction,
    f: impl Fn(i64) -> f64,
    g: impl Fn(i64) -> f64,
) -> Complex64 {
    pair_sum(|n| seed.eval_ft(f(n)) * seed.eval_ft(g(n)).conj())
}

fn position_pair_sum(
    seed: &SeedFunction,
    f: impl Fn(i64) -> f64,
    g: impl Fn(i64) -> f64,
) -> Complex64 {
    pair_sum(|n| seed.eval(f(n)) * seed.eval(g(n)).conj())
}

fn pair_sum(term: impl Fn(i64) -> Complex64) -> Complex64 {
    const CAP: i64 = 400_000;
    let mut sum = term(0);
    let mut n = 1i64;
    let mut quiet = 0;
    while n < CAP {
        let t = term(n) + term(-n);
        sum += t;
        if t.norm() < 1e-14 {
            quiet += 1;
            if quiet >= 4 && n >= 16 {
                break;
            }
        } else {
            quiet = 0;
        }
        n += 1;
    }
    sum
}

/// One summation-rule comparison.
#[derive(Debug, Clone)]
pub struct SumRule {
    pub name: &'static str,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SumRulesReport {
    pub rules: Vec<SumRule>,
}

impl SumRulesReport {
    pub fn max_residual(&self) -> f64 {
        self.rules.iter().map(|r| r.residual).fold(0.0, f64::max)
    }
}

/// Evaluates the global summation rules: the total lattice sum against both
/// sample-sum routes, Parseval for the synthesis weights, and the weight sum
/// against the series origin.
pub fn sum_rules(
    seed: &SeedFunction,
    table: &OverlapTable,
    series: &SpectralSeries,
    weights: &crate::synthesis::CWeights,
) -> SumRulesReport {
    let a = seed.lattice().a();
    let mut rules = Vec::new();

    // Total overlap sum vs momentum samples: Σ_r S_r = a (|E|² + |O|²)
    // where E and O are the even- and odd-index lattice sample sums.
    let total = table.total_sum();
    let (e_m, o_m) = parity_sums(|n| seed.eval_ft(n as f64 * a));
    let rhs_m = a * (e_m.norm_sqr() + o_m.norm_sqr());
    rules.push(SumRule {
        name: "total_overlap_vs_momentum_samples",
        lhs: total,
        rhs: Complex64::new(rhs_m, 0.0),
        residual: (total - rhs_m).norm(),
        note: table_tail_note(table),
    });

    // Total overlap sum vs position samples on the half lattice.
    if !matches!(seed.family(), SeedFamily::Tabulated(_)) {
        let (e_p, o_p) = parity_sums(|n| seed.eval(n as f64 * a / 2.0));
        let rhs_p = 0.5 * a * (e_p.norm_sqr() + o_p.norm_sqr());
        rules.push(SumRule {
            name: "total_overlap_vs_position_samples",
            lhs: total,
            rhs: Complex64::new(rhs_p, 0.0),
            residual: (total - rhs_p).norm(),
            note: table_tail_note(table),
        });
    }

    // Parseval: Σ|c_s|² = (1/2π) ∫ dp / |S(0,p)|.
    let energy: f64 = weights.values.values.iter().map(|c| c.norm_sqr()).sum();
    let integral = quad::integrate_real(
        |p| 1.0 / series.eval(p).abs(),
        0.0,
        2.0 * std::f64::consts::PI,
        &QuadOptions { abs_tol: 1e-11, max_panels: 100_000, init_panels: 64 },
    );
    let rhs_e = integral.value.re / (2.0 * std::f64::consts::PI);
    rules.push(SumRule {
        name: "weight_energy_parseval",
        lhs: Complex64::new(energy, 0.0),
        rhs: Complex64::new(rhs_e, 0.0),
        residual: (energy - rhs_e).abs(),
        note: None,
    });

    // Σ c_s = S(0,0)^{-1/2}.
    let weight_sum: Complex64 = weights.values.values.iter().sum();
    let origin = series.origin_value();
    let rhs_s = Complex64::new(1.0 / origin.sqrt(), 0.0);
    rules.push(SumRule {
        name: "weight_sum_vs_origin",
        lhs: weight_sum,
        rhs: rhs_s,
        residual: (weight_sum - rhs_s).norm(),
        note: None,
    });

    SumRulesReport { rules }
}

fn table_tail_note(table: &OverlapTable) -> Option<String> {
    if table.under_truncated(1e-10) {
        Some(format!(
            "table tail bound {:.3e}; slow tails limit this comparison",
            table.tail_bound()
        ))
    } else {
        None
    }
}

/// (Σ_{n even} f(n), Σ_{n odd} f(n)) with adaptive symmetric range.
fn parity_sums(term: impl Fn(i64) -> Complex64) -> (Complex64, Complex64) {
    const CAP: i64 = 400_000;
    let mut even = term(0);
    let mut odd = Complex64::new(0.0, 0.0);
    let mut n = 1i64;
    let mut quiet = 0;
    while n < CAP {
        let t = term(n) + term(-n);
        if n % 2 == 0 {
            even += t;
        } else {
            odd += t;
        }
        if t.norm() < 1e-14 {
            quiet += 1;
            if quiet >= 4 && n >= 16 {
                break;
            }
        } else {
            quiet = 0;
        }
        n += 1;
    }
    (even, odd)
}
