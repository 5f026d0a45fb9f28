//! JSON and CSV report builders. All emitters are deterministic: sorted
//! keys, fixed float formatting, no timestamps.

use crate::jsonout::Json;
use crate::overlap::{OverlapTable, PsfReport, PsfRow, SpectralSeries, SumRulesReport};
use crate::relevance::RelevanceReport;
use crate::seqtools::DecayClass;
use crate::synthesis::{CWeights, FilterSequence};
use std::f64::consts::PI;
use std::fmt::Write as _;

pub const SCHEMA_VERSION: i64 = 1;

fn complex_fields(re: f64, im: f64) -> (Json, Json) {
    (Json::Float(re), Json::Float(im))
}

pub fn filter_to_json(filter: &FilterSequence) -> Json {
    let rows: Vec<Json> = filter
        .values
        .iter_indexed()
        .map(|(n, v)| {
            Json::obj(vec![
                ("n", Json::Int(n)),
                ("re", Json::Float(v.re)),
                ("im", Json::Float(v.im)),
            ])
        })
        .collect();
    let (n_min, n_max) = filter.support().unwrap_or((0, -1));
    Json::obj(vec![
        ("schema", Json::Int(SCHEMA_VERSION)),
        ("seed", Json::Str(filter.seed_descriptor.clone())),
        ("phase", Json::Str(filter.phase.descriptor())),
        ("n_min", Json::Int(n_min)),
        ("n_max", Json::Int(n_max)),
        ("n_cap", Json::Int(filter.n_cap)),
        ("cap_hit", Json::Bool(filter.cap_hit)),
        ("boundary_magnitude", Json::Float(filter.boundary_magnitude)),
        ("rows", Json::Array(rows)),
    ])
}

/// Two-column plot data: index and real part (zero-phase filters are real).
pub fn filter_to_csv(filter: &FilterSequence) -> String {
    let mut out = String::from("n,re\n");
    for (n, v) in filter.values.iter_indexed() {
        let _ = writeln!(out, "{n},{}", crate::jsonout::format_float(v.re));
    }
    out
}

pub fn spectrum_to_csv(series: &SpectralSeries, points: usize) -> String {
    let mut out = String::from("p,value\n");
    for j in 0..points {
        let p = 2.0 * PI * j as f64 / points as f64;
        let _ = writeln!(
            out,
            "{},{}",
            crate::jsonout::format_float(p),
            crate::jsonout::format_float(series.eval(p))
        );
    }
    out
}

pub fn symbol_to_csv(filter: &FilterSequence, points: usize) -> String {
    let mut out = String::from("omega,modulus\n");
    let points = points.max(3);
    for j in 0..points {
        let omega = -PI / 2.0 + PI * j as f64 / (points - 1) as f64;
        let _ = writeln!(
            out,
            "{},{}",
            crate::jsonout::format_float(omega),
            crate::jsonout::format_float(filter.symbol(omega).norm())
        );
    }
    out
}

pub fn table_to_json(seed_desc: &str, table: &OverlapTable, series: &SpectralSeries) -> Json {
    let entries: Vec<Json> = table
        .iter_indexed()
        .map(|(l1, l2, v)| {
            let (re, im) = complex_fields(v.re, v.im);
            Json::obj(vec![
                ("l1", Json::Int(l1)),
                ("l2", Json::Int(l2)),
                ("re", re),
                ("im", im),
            ])
        })
        .collect();
    let coeffs: Vec<Json> = (-series.radius()..=series.radius())
        .map(|r| {
            let t = series.coeff(r);
            Json::obj(vec![
                ("r", Json::Int(r)),
                ("re", Json::Float(t.re)),
                ("im", Json::Float(t.im)),
            ])
        })
        .collect();
    Json::obj(vec![
        ("schema", Json::Int(SCHEMA_VERSION)),
        ("seed", Json::Str(seed_desc.to_string())),
        ("radius", Json::Int(table.radius())),
        ("tail_bound", Json::Float(table.tail_bound())),
        ("entries", Json::Array(entries)),
        (
            "series",
            Json::obj(vec![
                ("radius", Json::Int(series.radius())),
                ("min_value", Json::Float(series.min_value)),
                ("min_location", Json::Float(series.min_location)),
                ("coeffs", Json::Array(coeffs)),
            ]),
        ),
    ])
}

fn decay_class_json(class: &DecayClass) -> Json {
    match class {
        DecayClass::FiniteSupport => Json::obj(vec![("kind", Json::Str("finite-support".into()))]),
        DecayClass::Superpolynomial => {
            Json::obj(vec![("kind", Json::Str("superpolynomial".into()))])
        }
        DecayClass::Polynomial { exponent, r_squared } => Json::obj(vec![
            ("kind", Json::Str("polynomial".into())),
            ("exponent", Json::Float(*exponent)),
            ("r_squared", Json::Float(*r_squared)),
        ]),
        DecayClass::Undetermined => Json::obj(vec![("kind", Json::Str("undetermined".into()))]),
    }
}

fn psf_rows_json(rows: &[PsfRow]) -> Json {
    Json::Array(
        rows.iter()
            .map(|r| {
                Json::obj(vec![
                    ("index", Json::Int(r.index)),
                    ("lattice_re", Json::Float(r.lattice_sum.re)),
                    ("lattice_im", Json::Float(r.lattice_sum.im)),
                    ("samples_re", Json::Float(r.sample_sum.re)),
                    ("samples_im", Json::Float(r.sample_sum.im)),
                    ("residual", Json::Float(r.residual)),
                    ("row_tail", Json::Float(r.row_tail)),
                ])
            })
            .collect(),
    )
}

pub fn psf_to_json(psf: &PsfReport) -> Json {
    Json::obj(vec![
        ("tol", Json::Float(psf.tol)),
        ("pass", Json::Bool(psf.all_pass())),
        ("max_residual", Json::Float(psf.max_residual())),
        ("momentum_rows", psf_rows_json(&psf.momentum_rows)),
        ("position_rows", psf_rows_json(&psf.position_rows)),
    ])
}

pub fn sum_rules_to_json(seed_desc: &str, rules: &SumRulesReport, psf: &PsfReport) -> Json {
    let items: Vec<Json> = rules
        .rules
        .iter()
        .map(|r| {
            let mut fields = vec![
                ("name", Json::Str(r.name.to_string())),
                ("lhs_re", Json::Float(r.lhs.re)),
                ("lhs_im", Json::Float(r.lhs.im)),
                ("rhs_re", Json::Float(r.rhs.re)),
                ("rhs_im", Json::Float(r.rhs.im)),
                ("residual", Json::Float(r.residual)),
            ];
            if let Some(note) = &r.note {
                fields.push(("note", Json::Str(note.clone())));
            }
            Json::obj(fields)
        })
        .collect();
    Json::obj(vec![
        ("schema", Json::Int(SCHEMA_VERSION)),
        ("seed", Json::Str(seed_desc.to_string())),
        ("rules", Json::Array(items)),
        ("psf", psf_to_json(psf)),
    ])
}

pub fn relevance_to_json(
    seed_desc: &str,
    phase_desc: &str,
    report: &RelevanceReport,
    weights: &CWeights,
    psf: &PsfReport,
) -> Json {
    let residual_map = Json::Object(
        report
            .r1
            .residuals
            .iter()
            .map(|(l, r)| (l.to_string(), Json::Float(*r)))
            .collect(),
    );
    let r2_pass = match report.r2.pass {
        Some(b) => Json::Bool(b),
        None => Json::Null,
    };
    let mut corollary = vec![
        ("double_sum_re", Json::Float(report.corollary.double_sum.re)),
        ("double_sum_im", Json::Float(report.corollary.double_sum.im)),
        (
            "alternating_re",
            Json::Float(report.corollary.alternating_sum.re),
        ),
        (
            "alternating_im",
            Json::Float(report.corollary.alternating_sum.im),
        ),
        ("compact_support", Json::Bool(report.corollary.compact_support)),
        ("necessary_pass", Json::Bool(report.corollary.necessary_pass)),
    ];
    if let Some(idr) = report.corollary.identity_residual {
        corollary.push(("identity_residual", Json::Float(idr)));
    }
    let mut r3_fields = vec![
        ("sum_re", Json::Float(report.r3.sum.re)),
        ("sum_im", Json::Float(report.r3.sum.im)),
        ("residual", Json::Float(report.r3.residual)),
        ("tol", Json::Float(report.r3.tol)),
        ("pass", Json::Bool(report.r3.pass)),
    ];
    if let Some(note) = &report.r3.tail_note {
        r3_fields.push(("note", Json::Str(note.clone())));
    }
    Json::obj(vec![
        ("schema", Json::Int(SCHEMA_VERSION)),
        ("seed", Json::Str(seed_desc.to_string())),
        ("phase", Json::Str(phase_desc.to_string())),
        (
            "positivity",
            Json::obj(vec![
                ("min_value", Json::Float(report.positivity_min)),
                ("min_location", Json::Float(report.positivity_location)),
                ("certified", Json::Bool(report.positivity_min > 0.0)),
            ]),
        ),
        (
            "r1",
            Json::obj(vec![
                ("residuals", residual_map),
                ("max_residual", Json::Float(report.r1.max_residual)),
                ("tol", Json::Float(report.r1.tol)),
                ("pass", Json::Bool(report.r1.pass)),
            ]),
        ),
        (
            "r2",
            Json::obj(vec![
                ("class", decay_class_json(&report.r2.class)),
                ("pass", r2_pass),
            ]),
        ),
        ("r3", Json::obj(r3_fields)),
        (
            "r4",
            Json::obj(vec![
                ("min_modulus", Json::Float(report.r4.min_modulus)),
                ("argmin", Json::Float(report.r4.argmin)),
                ("grid", Json::Int(report.r4.grid_size as i64)),
                ("tol", Json::Float(report.r4.tol)),
                ("pass", Json::Bool(report.r4.pass)),
            ]),
        ),
        (
            "criterion_r3",
            Json::obj(vec![
                ("lhs_re", Json::Float(report.criterion_r3.lhs.re)),
                ("lhs_im", Json::Float(report.criterion_r3.lhs.im)),
                ("rhs", Json::Float(report.criterion_r3.rhs)),
                ("residual", Json::Float(report.criterion_r3.residual)),
                ("tol", Json::Float(report.criterion_r3.tol)),
                ("pass", Json::Bool(report.criterion_r3.pass)),
                ("lattice_tail", Json::Float(report.criterion_r3.lattice_tail)),
            ]),
        ),
        ("corollary", Json::obj(corollary)),
        (
            "weights",
            Json::obj(vec![
                ("class", decay_class_json(&report.weight_class)),
                ("tail_magnitude", Json::Float(weights.tail_magnitude)),
                ("slow_tail", Json::Bool(weights.slow_tail)),
                ("grid", Json::Int(weights.grid_size as i64)),
                ("achieved_tol", Json::Float(weights.achieved_tol)),
            ]),
        ),
        ("psf", psf_to_json(psf)),
        (
            "notes",
            Json::Array(report.notes.iter().map(|n| Json::Str(n.clone())).collect()),
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlap::{overlap_table, psf_crosscheck, spectral_series, sum_rules};
    use crate::relevance::{assess, RelevanceOptions};
    use crate::seed::{SeedFamily, SeedFunction};
    use crate::synthesis::{run_pipeline, RunParams};

    #[test]
    fn reports_are_deterministic_and_versioned() {
        let seed = SeedFunction::new(SeedFamily::BoxMomentum { width: 2.0 }).unwrap();
        let run = run_pipeline(&seed, &RunParams { radius: 2, s_max: 8, ..Default::default() })
            .unwrap();
        let psf = psf_crosscheck(&seed, &run.table);
        let rep = assess(
            &seed,
            &run.table,
            &run.series,
            &run.weights,
            &run.filter,
            &psf,
            &RelevanceOptions::default(),
        );
        let a = relevance_to_json(&seed.descriptor(), "none", &rep, &run.weights, &psf).to_string();
        let b = relevance_to_json(&seed.descriptor(), "none", &rep, &run.weights, &psf).to_string();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\":1"));
        assert!(a.contains("\"residuals\":{\"-1\""));

        let fj = filter_to_json(&run.filter).to_string();
        assert!(fj.contains("\"rows\":[{"));
        let csv = filter_to_csv(&run.filter);
        assert!(csv.starts_with("n,re\n"));

        let table = overlap_table(&seed, 2).unwrap();
        let series = spectral_series(&table);
        let tj = table_to_json(&seed.descriptor(), &table, &series).to_string();
        assert!(tj.contains("\"tail_bound\""));
        assert!(tj.contains("\"min_value\""));

        let sr = sum_rules(&seed, &run.table, &run.series, &run.weights);
        let sj = sum_rules_to_json(&seed.descriptor(), &sr, &psf).to_string();
        assert!(sj.contains("weight_sum_vs_origin"));
    }
}
