//! The built-in worked examples: nine seed choices with frozen expected
//! outcomes, used by the example runner command and the acceptance suite.
//!
//! Each outcome carries golden checks (value, expectation, tolerance) plus
//! notes documenting the few places where the verified numerics disagree
//! with the original prose; those conflicts are reported, never papered
//! over.

use crate::error::{Error, Result};
use crate::lattice::LATTICE_A;
use crate::overlap::{self, PsfReport};
use crate::relevance::{self, RelevanceOptions, RelevanceReport, Tolerances};
use crate::seed::{SeedFamily, SeedFunction, TabulatedData};
use crate::seqtools::DecayClass;
use crate::synthesis::{self, PhaseSpec, PipelineRun, RunParams};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const EXAMPLE_COUNT: usize = 9;

/// One golden comparison inside an example run.
#[derive(Debug, Clone)]
pub struct GoldenCheck {
    pub label: String,
    pub computed: f64,
    pub expected: f64,
    pub tol: f64,
    pub pass: bool,
}

impl GoldenCheck {
    fn value(label: &str, computed: f64, expected: f64, tol: f64) -> Self {
        GoldenCheck {
            label: label.to_string(),
            computed,
            expected,
            tol,
            pass: (computed - expected).abs() <= tol,
        }
    }

    fn flag(label: &str, got: bool, want: bool) -> Self {
        GoldenCheck {
            label: label.to_string(),
            computed: if got { 1.0 } else { 0.0 },
            expected: if want { 1.0 } else { 0.0 },
            tol: 0.5,
            pass: got == want,
        }
    }

    fn upper(label: &str, computed: f64, bound: f64) -> Self {
        GoldenCheck {
            label: label.to_string(),
            computed,
            expected: 0.0,
            tol: bound,
            pass: computed.abs() <= bound,
        }
    }
}

#[derive(Debug)]
pub struct ExampleOutcome {
    pub index: usize,
    pub title: &'static str,
    pub seed: SeedFunction,
    pub run: PipelineRun,
    pub psf: PsfReport,
    pub report: RelevanceReport,
    pub checks: Vec<GoldenCheck>,
    pub notes: Vec<String>,
}

impl ExampleOutcome {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Seed for a catalog entry.
pub fn example_seed(index: usize) -> Result<SeedFunction> {
    let family = match index {
        1 => SeedFamily::BoxMomentum { width: 1.0 },
        2 => SeedFamily::BoxMomentum { width: 2.0 },
        3 => SeedFamily::BoxPosition { width: 2.0 },
        4 => SeedFamily::BoxMomentum { width: 3.0 },
        5 => SeedFamily::Gaussian,
        6 => SeedFamily::Tabulated(example6_tabulated_data()),
        7 => SeedFamily::BoxMomentum { width: 5.0 }, // odd-width family at k = 2
        8 => SeedFamily::BoxPosition { width: 1.5 },
        9 => SeedFamily::LorentzianFt,
        _ => {
            return Err(Error::InvalidConfig(format!(
                "example index must be 1..={EXAMPLE_COUNT}, got {index}"
            )))
        }
    };
    SeedFunction::new(family)
}

/// Run parameters tuned per example (slow-tail seeds need larger windows).
pub fn example_params(index: usize) -> RunParams {
    let mut p = RunParams::default();
    match index {
        1 | 2 => {
            p.radius = 3;
            p.s_max = 8;
        }
        3 => {
            p.radius = 4;
            p.s_max = 8;
        }
        4 => {
            p.radius = 5;
            p.s_max = 48;
        }
        5 => {
            p.radius = 6;
            p.s_max = 16;
        }
        6 => {
            p.radius = 12;
            p.s_max = 8;
        }
        7 => {
            p.radius = 5;
            p.s_max = 64;
        }
        8 => {
            p.radius = 6;
            p.s_max = 12;
            // 1/|n| filter tails: the square-sum residual falls like 1/cap
            p.n_cap = 1 << 17;
        }
        9 => {
            // the weights follow a 1/s² law up to the series band limit;
            // matching s_max to the radius keeps the classification window
            // inside the resolved band, and the band-limited weights beyond
            // it are negligible anyway
            p.radius = 64;
            p.s_max = 64;
        }
        _ => {}
    }
    p
}

fn example_tolerances(index: usize) -> Tolerances {
    let mut t = Tolerances::default();
    if index == 9 {
        // slow polynomial tails limit the series truncation; see the notes
        t.r1 = 1e-4;
        t.r3 = 1e-4;
    }
    t
}

/// Momentum profile of the tabulated example: c (1 + sin²(πp/(2a))) on
/// [0, 2a). The squared profile is a trigonometric polynomial whose
/// derivatives match at the interval ends, so the overlap table is
/// numerically finite and every expected quantity has a closed form:
/// S_{±1,0} = 1/38, the series is the constant 20/19, and the filter is
/// (1, 2)/√5 on indices {0, 1}.
pub fn example6_tabulated_data() -> TabulatedData {
    let a = LATTICE_A;
    let n = 8193usize;
    let c = 2.0 / (19.0 * a).sqrt();
    let p_max = 2.0 * a;
    let step = p_max / (n - 1) as f64;
    let values = (0..n)
        .map(|j| {
            let p = step * j as f64;
            let s = (PI * p / (2.0 * a)).sin();
            Complex64::new(c * (1.0 + s * s), 0.0)
        })
        .collect();
    TabulatedData { p_min: 0.0, p_max, values }
}

fn assess_example(
    index: usize,
    seed: &SeedFunction,
    run: &PipelineRun,
    psf: &PsfReport,
) -> RelevanceReport {
    let opts = RelevanceOptions { tols: example_tolerances(index), ..Default::default() };
    relevance::assess(seed, &run.table, &run.series, &run.weights, &run.filter, psf, &opts)
}

/// Executes one catalog entry and compares against its golden values.
pub fn run_example(index: usize) -> Result<ExampleOutcome> {
    let seed = example_seed(index)?;
    let params = example_params(index);
    let run = synthesis::run_pipeline(&seed, &params)?;
    let psf = overlap::psf_crosscheck(&seed, &run.table);
    let report = assess_example(index, &seed, &run, &psf);

    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let title = example_title(index);

    // every entry: the seed-level criterion verdict must agree with the
    // measured filter sum verdict
    checks.push(GoldenCheck::flag(
        "criterion agrees with measured sum",
        report.criterion_r3.pass == report.r3.pass,
        true,
    ));

    match index {
        1 => {
            let mut max_dev: f64 = 0.0;
            for (l1, l2, v) in run.table.iter_indexed() {
                let want = if l1 == 0 && l2 == 0 { 1.0 } else { 0.0 };
                max_dev = max_dev.max((v - Complex64::new(want, 0.0)).norm());
            }
            checks.push(GoldenCheck::upper("overlap table is identity", max_dev, 1e-10));
            checks.push(GoldenCheck::value("H_0", run.filter.get(0).re, 1.0, 1e-10));
            let spur = spurious_mass(&run, &[0]);
            checks.push(GoldenCheck::upper("off-support filter mass", spur, 1e-12));
            checks.push(GoldenCheck::upper(
                "orthonormality residual",
                report.r1.max_residual,
                1e-10,
            ));
            checks.push(GoldenCheck::flag("sum condition fails", report.r3.pass, false));
            checks.push(GoldenCheck::value(
                "filter sum",
                report.r3.sum.re,
                1.0,
                1e-10,
            ));
            notes.push(
                "single-tap filter has unit value, forced by unit square sum; the original \
                 write-up prints √a here and claims the √2 sum holds, which its own sum \
                 criterion contradicts"
                    .into(),
            );
        }
        2 => {
            checks.push(GoldenCheck::value(
                "H_0",
                run.filter.get(0).re,
                std::f64::consts::FRAC_1_SQRT_2,
                1e-10,
            ));
            checks.push(GoldenCheck::value(
                "H_1",
                run.filter.get(1).re,
                std::f64::consts::FRAC_1_SQRT_2,
                1e-10,
            ));
            let spur = spurious_mass(&run, &[0, 1]);
            checks.push(GoldenCheck::upper("off-support filter mass", spur, 1e-12));
            checks.push(GoldenCheck::upper(
                "orthonormality residual",
                report.r1.max_residual,
                1e-10,
            ));
            checks.push(GoldenCheck::upper(
                "sum residual vs sqrt2",
                report.r3.residual,
                1e-10,
            ));
            checks.push(GoldenCheck::value(
                "symbol minimum",
                report.r4.min_modulus,
                (PI / 4.0).cos(),
                1e-6,
            ));
            checks.push(GoldenCheck::flag("decay verdict", report.r2.pass == Some(true), true));
        }
        3 => {
            checks.push(GoldenCheck::value("H_0", run.filter.get(0).re, 1.0, 1e-9));
            let spur = spurious_mass(&run, &[0]);
            checks.push(GoldenCheck::upper("off-support filter mass", spur, 1e-9));
            checks.push(GoldenCheck::flag("sum condition fails", report.r3.pass, false));
            notes.push(
                "integer-width position boxes reproduce the single-tap outcome of the \
                 unit momentum box"
                    .into(),
            );
        }
        4 => {
            checks.push(GoldenCheck::value(
                "series coefficient 0",
                run.series.coeff(0).re,
                1.0,
                1e-8,
            ));
            checks.push(GoldenCheck::value(
                "series coefficient 1",
                run.series.coeff(1).re,
                1.0 / 3.0,
                1e-8,
            ));
            checks.push(GoldenCheck::value(
                "series minimum",
                run.series.min_value,
                1.0 / 3.0,
                1e-6,
            ));
            checks.push(GoldenCheck::value(
                "series argmin",
                run.series.min_location,
                PI,
                1e-4,
            ));
            checks.push(GoldenCheck::upper(
                "orthonormality residual",
                report.r1.max_residual,
                1e-8,
            ));
            checks.push(GoldenCheck::flag(
                "weights decay superpolynomially",
                matches!(report.weight_class, DecayClass::Superpolynomial),
                true,
            ));
            checks.push(GoldenCheck::flag("sum condition fails", report.r3.pass, false));
        }
        5 => {
            checks.push(GoldenCheck::value(
                "series coefficient 0",
                run.series.coeff(0).re,
                1.4195,
                5e-4,
            ));
            checks.push(GoldenCheck::value(
                "weight c_0",
                run.weights.get(0).re,
                0.8393326697305034,
                1e-6,
            ));
            checks.push(GoldenCheck::value(
                "H_0",
                run.filter.get(0).re,
                0.9981403761974166,
                1e-6,
            ));
            checks.push(GoldenCheck::value("square sum", run.filter.sum_sq(), 1.0, 1e-8));
            checks.push(GoldenCheck::value(
                "filter sum",
                report.r3.sum.re,
                1.0823922002923940,
                1e-5,
            ));
            checks.push(GoldenCheck::upper(
                "orthonormality residual",
                report.r1.max_residual,
                1e-7,
            ));
            checks.push(GoldenCheck::flag(
                "filter decays superpolynomially",
                matches!(report.r2.class, DecayClass::Superpolynomial),
                true,
            ));
            checks.push(GoldenCheck::flag("sum condition fails", report.r3.pass, false));
            checks.push(GoldenCheck::flag(
                "symbol bounded below",
                report.r4.min_modulus > 0.5,
                true,
            ));
        }
        6 => {
            let inv_sqrt5 = 1.0 / 5f64.sqrt();
            checks.push(GoldenCheck::value("H_0", run.filter.get(0).re, inv_sqrt5, 1e-5));
            checks.push(GoldenCheck::value(
                "H_1",
                run.filter.get(1).re,
                2.0 * inv_sqrt5,
                1e-5,
            ));
            checks.push(GoldenCheck::value(
                "filter sum",
                report.r3.sum.re,
                3.0 * inv_sqrt5,
                1e-5,
            ));
            checks.push(GoldenCheck::value(
                "series value",
                run.series.origin_value(),
                20.0 / 19.0,
                1e-5,
            ));
            checks.push(GoldenCheck::upper(
                "orthonormality residual",
                report.r1.max_residual,
                1e-5,
            ));
            checks.push(GoldenCheck::flag("sum condition fails", report.r3.pass, false));
            notes.push(
                "two-tap filter from a seed supported on [0, 2a): the sum condition holds \
                 exactly when the two boundary lattice samples are equal, which this profile \
                 deliberately violates"
                    .into(),
            );
        }
        7 => {
            let k = 2usize;
            let closed = example7_series_closed_form(k);
            let max_dev = (0..129)
                .map(|j| {
                    let p = 2.0 * PI * j as f64 / 128.0;
                    (run.series.eval(p) - closed(p)).abs()
                })
                .fold(0.0f64, f64::max);
            checks.push(GoldenCheck::upper("series closed form deviation", max_dev, 1e-8));
            checks.push(GoldenCheck::flag("series positive", run.series.min_value > 0.0, true));
            checks.push(GoldenCheck::value(
                "series minimum",
                run.series.min_value,
                0.15,
                1e-6,
            ));
            checks.push(GoldenCheck::upper(
                "orthonormality residual",
                report.r1.max_residual,
                1e-6,
            ));
            checks.push(GoldenCheck::flag(
                "weights decay superpolynomially",
                matches!(report.weight_class, DecayClass::Superpolynomial),
                true,
            ));
            checks.push(GoldenCheck::flag("sum condition fails", report.r3.pass, false));
            let even_rejected = matches!(
                even_width_positivity_probe(),
                Err(Error::Positivity { .. })
            );
            checks.push(GoldenCheck::flag(
                "even-width box rejected by positivity gate",
                even_rejected,
                true,
            ));
            notes.push("odd-width box family at k = 2 (width 5a)".into());
        }
        8 => {
            checks.push(GoldenCheck::value(
                "H_0",
                run.filter.get(0).re,
                0.9486832980505138,
                1e-8,
            ));
            checks.push(GoldenCheck::value(
                "|H_1|",
                run.filter.get(1).norm(),
                0.20131684841794814,
                1e-8,
            ));
            checks.push(GoldenCheck::upper(
                "orthonormality residual",
                report.r1.max_residual,
                1e-6,
            ));
            let exp = match report.r2.class {
                DecayClass::Polynomial { exponent, .. } => exponent,
                _ => f64::NAN,
            };
            checks.push(GoldenCheck::value("filter decay exponent", exp, 1.0, 0.2));
            checks.push(GoldenCheck::flag(
                "decay verdict fails",
                report.r2.pass == Some(false),
                true,
            ));
            checks.push(GoldenCheck::flag("sum condition fails", report.r3.pass, false));
            notes.push("half-integer position box (l = 3): 1/|n| filter tails".into());
        }
        9 => {
            checks.push(GoldenCheck::upper(
                "orthonormality residual",
                report.r1.max_residual,
                1e-4,
            ));
            checks.push(GoldenCheck::flag(
                "weights decay polynomially",
                matches!(report.weight_class, DecayClass::Polynomial { .. }),
                true,
            ));
            checks.push(GoldenCheck::value(
                "lattice sample sum",
                report.criterion_r3.lhs.re,
                1.1775645254404782,
                1e-5,
            ));
            checks.push(GoldenCheck::flag("sum condition fails", report.r3.pass, false));
            checks.push(GoldenCheck::flag(
                "criterion fails consistently",
                report.criterion_r3.pass,
                false,
            ));
            notes.push(
                "the verified overlap row at zero momentum shift carries an extra \
                 (1 + |l1| a) factor from a double pole; with it, both the total-sum rule \
                 and both square-sum routes agree to machine precision, and the √2 sum \
                 condition fails (the original write-up drops the factor and concludes the \
                 opposite)"
                    .into(),
            );
        }
        _ => unreachable!(),
    }

    let seed2 = example_seed(index)?;
    debug_assert_eq!(seed2.descriptor(), seed.descriptor());
    Ok(ExampleOutcome { index, title, seed, run, psf, report, checks, notes })
}

/// ℓ² mass of filter entries outside the expected integer support.
fn spurious_mass(run: &PipelineRun, expected: &[i64]) -> f64 {
    run.filter
        .values
        .iter_indexed()
        .filter(|(n, _)| !expected.contains(n))
        .map(|(_, v)| v.norm())
        .fold(0.0, f64::max)
}

pub fn example_title(index: usize) -> &'static str {
    match index {
        1 => "unit momentum box",
        2 => "double-width momentum box (two-tap filter)",
        3 => "integer-width position box",
        4 => "triple-width momentum box",
        5 => "gaussian",
        6 => "tabulated bump on [0, 2a)",
        7 => "odd-width momentum box family",
        8 => "half-integer position box",
        9 => "lorentzian transform",
        _ => "unknown",
    }
}

/// Closed-form spectral series of the odd-width box family:
/// 1 + (2/(2k+1)) Σ_{j=0}^{k-1} (2j+1) cos(p(k−j)).
pub fn example7_series_closed_form(k: usize) -> impl Fn(f64) -> f64 {
    move |p: f64| {
        let w = (2 * k + 1) as f64;
        let mut s = 1.0;
        for j in 0..k {
            s += (2.0 / w) * (2 * j + 1) as f64 * (p * (k - j) as f64).cos();
        }
        s
    }
}

/// Runs the odd-width family member at the given k and returns the pipeline
/// along with its relevance report.
pub fn run_example7_member(k: usize) -> Result<(SeedFunction, PipelineRun, RelevanceReport)> {
    let width = (2 * k + 1) as f64;
    let seed = SeedFunction::new(SeedFamily::BoxMomentum { width })?;
    let params = RunParams {
        radius: k as i64 + 2,
        // the spectral minimum shrinks like 1/width and sits at an interior
        // point with a shallow well, so the weight decay rate falls roughly
        // like 1/k²; both the weight range and the filter cap must grow
        s_max: (64 + 40 * k as i64).min(896),
        n_cap: 2048,
        ..Default::default()
    };
    let run = synthesis::run_pipeline(&seed, &params)?;
    let psf = overlap::psf_crosscheck(&seed, &run.table);
    let report = relevance::assess(
        &seed,
        &run.table,
        &run.series,
        &run.weights,
        &run.filter,
        &psf,
        &RelevanceOptions::default(),
    );
    Ok((seed, run, report))
}

/// The even-width counterpart has a spectral zero; the positivity gate must
/// refuse to synthesize weights for it.
pub fn even_width_positivity_probe() -> Result<synthesis::CWeights> {
    let seed = SeedFunction::new(SeedFamily::BoxMomentum { width: 4.0 })?;
    let table = overlap::overlap_table(&seed, 4)?;
    let series = overlap::spectral_series(&table);
    synthesis::c_weights(&series, PhaseSpec::Zero, 16)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_indices_validated() {
        assert!(example_seed(0).is_err());
        assert!(example_seed(10).is_err());
        for i in 1..=EXAMPLE_COUNT {
            assert!(example_seed(i).is_ok(), "example {i}");
        }
    }

    #[test]
    fn example6_profile_has_exact_series_value() {
        let data = example6_tabulated_data();
        let seed = SeedFunction::new(SeedFamily::Tabulated(data)).unwrap();
        let table = overlap::overlap_table(&seed, 4).unwrap();
        // S_{±1,0} = 1/38 for the exact profile
        assert!(
            (table.get(1, 0).re - 1.0 / 38.0).abs() < 1e-6,
            "{}",
            table.get(1, 0).re
        );
        assert!(table.get(0, 1).norm() < 1e-8);
        let series = overlap::spectral_series(&table);
        assert!((series.origin_value() - 20.0 / 19.0).abs() < 1e-5);
    }

    #[test]
    fn quick_examples_pass_their_goldens() {
        for index in [1usize, 2, 3] {
            let outcome = run_example(index).unwrap();
            for c in &outcome.checks {
                assert!(
                    c.pass,
                    "example {index} check '{}': computed {} expected {} tol {}",
                    c.label, c.computed, c.expected, c.tol
                );
            }
        }
    }
}
