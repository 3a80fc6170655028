//! Bundled reference scenarios: the `reproduce` subcommand regenerates
//! the project's reference figure datasets from scratch, CSV plus SVG,
//! with no external data.
//!
//! All four datasets use the 20-spin chain with unit coupling and probe
//! the tenth spin (or centred blocks):
//!
//! * fig2 — truncation comparison at alpha = 3: coherence curves and
//!   effective-frequency histograms for nearest, next-nearest,
//!   next-next-nearest and untruncated couplings;
//! * fig3 — the same truncation comparison at alpha = 2, 1, 0.1;
//! * fig4 — exact-model curves across alpha, fast-relaxing (3, 2, 1) and
//!   near-uniform (0.1, 0.05, 0), with histograms down to alpha = 0.05;
//! * fig5 — normalized block coherence for block sizes 4-10 at
//!   alpha = 3, 2, 1, plus the final-value summary at Jt = 40.

use std::path::Path;

use clap::ValueEnum;

use crate::errors::CliError;
use crate::output::{fmt_f64, histogram_csv, param, series_csv, table_csv, OutputWriter, Params};
use crate::scenario::range_label;
use crate::svg::{self, Curve};
use lrising::{
    coherence, effective_frequencies, histogram, uniform_grid, Bins, BlockSpec, CoherenceSeries64,
    CouplingModel64, Method, Normalization, Target, Truncation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl Figure {
    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
        }
    }
}

const N: usize = 20;
const SPIN: usize = 10;
const BINS: usize = 201;

const TRUNCATIONS: [(Truncation, &str, &str); 4] = [
    (Truncation::Range(1), "range1", "nearest"),
    (Truncation::Range(2), "range2", "next-nearest"),
    (Truncation::Range(3), "range3", "next-next-nearest"),
    (Truncation::Exact, "exact", "exact"),
];

pub fn execute(figure: Figure, out: &Path) -> Result<(), CliError> {
    let header = vec![
        param("command", "reproduce"),
        param("figure", figure.name()),
    ];
    let mut writer = OutputWriter::create(out, header)?;
    match figure {
        Figure::Fig2 => fig2(&mut writer)?,
        Figure::Fig3 => fig3(&mut writer)?,
        Figure::Fig4 => fig4(&mut writer)?,
        Figure::Fig5 => fig5(&mut writer)?,
    }
    writer.finish()
}

fn model(alpha: f64, truncation: Truncation) -> Result<CouplingModel64, CliError> {
    CouplingModel64::new(N, 1.0, alpha, truncation).map_err(CliError::from)
}

fn series_params(
    m: &CouplingModel64,
    target: Target,
    t_max: f64,
    steps: usize,
    normalize: bool,
) -> Params {
    let mut p = vec![
        param("n", m.n()),
        param("j", m.j()),
        param("alpha", m.alpha()),
        param("range", range_label(m.truncation())),
    ];
    match target {
        Target::Spin(j) => p.push(param("spin", j)),
        Target::Block(b) => {
            p.push(param("block_start", b.start()));
            p.push(param("block_size", b.len()));
        }
    }
    p.push(param("t_max", t_max));
    p.push(param("steps", steps));
    p.push(param("normalize", normalize));
    p.push(param("method", "factorized"));
    p.push(param("kind", "series"));
    p
}

fn write_series(
    writer: &mut OutputWriter,
    file: &str,
    m: &CouplingModel64,
    target: Target,
    grid: &[f64],
    normalize: bool,
) -> Result<CoherenceSeries64, CliError> {
    let series = coherence::series(m, target, grid, normalize, Method::Factorized)?;
    let params = series_params(m, target, grid[grid.len() - 1], grid.len(), normalize);
    writer.write(file, &series_csv(&params, &series), params)?;
    Ok(series)
}

fn write_histogram(
    writer: &mut OutputWriter,
    csv_file: &str,
    svg_file: &str,
    title: &str,
    m: &CouplingModel64,
) -> Result<(), CliError> {
    let freqs = effective_frequencies(m, SPIN)?;
    let hist = histogram(&freqs, Bins::Count(BINS), Normalization::UnitSum)?;
    let mut params = vec![
        param("n", m.n()),
        param("j", m.j()),
        param("alpha", m.alpha()),
        param("range", range_label(m.truncation())),
        param("spin", SPIN),
        param("bins", BINS),
        param("hist_norm", "unit-sum"),
        param("total_frequencies", hist.total_count()),
    ];
    params.push(param("kind", "spectrum"));
    writer.write(csv_file, &histogram_csv(&params, &hist), params.clone())?;
    let chart = svg::histogram_chart(title, "omega / J", "N(omega)", hist.bin_edges(), hist.mass());
    writer.write(svg_file, &chart, params)?;
    Ok(())
}

fn write_chart(
    writer: &mut OutputWriter,
    file: &str,
    title: &str,
    y_label: &str,
    labelled: &[(String, &CoherenceSeries64)],
) -> Result<(), CliError> {
    let curves: Vec<Curve> = labelled
        .iter()
        .map(|(label, series)| Curve {
            label: label.clone(),
            xs: series.times(),
            ys: series.values(),
        })
        .collect();
    let chart = svg::line_chart(title, "Jt", y_label, &curves);
    writer.write(file, &chart, vec![param("kind", "chart")])?;
    Ok(())
}

/// Truncation comparison at one exponent: four series plus a combined
/// chart, file stem like `fig2a` or `fig3b`.
fn truncation_panel(writer: &mut OutputWriter, stem: &str, alpha: f64) -> Result<(), CliError> {
    let grid = uniform_grid(10.0, 1000)?;
    let mut labelled = Vec::new();
    for (truncation, tag, label) in TRUNCATIONS {
        let m = model(alpha, truncation)?;
        let series = write_series(
            writer,
            &format!("{stem}_series_{tag}.csv"),
            &m,
            Target::Spin(SPIN),
            &grid,
            false,
        )?;
        labelled.push((label.to_string(), series));
    }
    let refs: Vec<(String, &CoherenceSeries64)> =
        labelled.iter().map(|(l, s)| (l.clone(), s)).collect();
    write_chart(
        writer,
        &format!("{stem}.svg"),
        &format!("single-spin coherence, alpha={alpha}, spin {SPIN} of {N}"),
        "C",
        &refs,
    )
}

fn fig2(writer: &mut OutputWriter) -> Result<(), CliError> {
    truncation_panel(writer, "fig2a", 3.0)?;
    for ((truncation, tag, label), panel) in TRUNCATIONS.into_iter().zip(["b", "c", "d", "e"]) {
        let m = model(3.0, truncation)?;
        write_histogram(
            writer,
            &format!("fig2{panel}_hist_{tag}.csv"),
            &format!("fig2{panel}.svg"),
            &format!("effective frequencies, alpha=3, {label}"),
            &m,
        )?;
    }
    Ok(())
}

fn fig3(writer: &mut OutputWriter) -> Result<(), CliError> {
    for (panel, alpha) in [("a", 2.0), ("b", 1.0), ("c", 0.1)] {
        truncation_panel(writer, &format!("fig3{panel}"), alpha)?;
    }
    Ok(())
}

fn fig4(writer: &mut OutputWriter) -> Result<(), CliError> {
    for (stem, t_max, alphas) in [
        ("fig4a", 10.0, [3.0, 2.0, 1.0]),
        ("fig4b", 2.5, [0.1, 0.05, 0.0]),
    ] {
        let grid = uniform_grid(t_max, 1000)?;
        let mut labelled = Vec::new();
        for alpha in alphas {
            let m = model(alpha, Truncation::Exact)?;
            let series = write_series(
                writer,
                &format!("{stem}_series_alpha{alpha}.csv"),
                &m,
                Target::Spin(SPIN),
                &grid,
                false,
            )?;
            labelled.push((format!("alpha={alpha}"), series));
        }
        let refs: Vec<(String, &CoherenceSeries64)> =
            labelled.iter().map(|(l, s)| (l.clone(), s)).collect();
        write_chart(
            writer,
            &format!("{stem}.svg"),
            &format!("single-spin coherence, exact couplings, spin {SPIN} of {N}"),
            "C",
            &refs,
        )?;
    }

    for (panel, alpha) in [
        ("c", 3.0),
        ("d", 2.0),
        ("e", 1.0),
        ("f", 0.5),
        ("g", 0.1),
        ("h", 0.05),
    ] {
        let m = model(alpha, Truncation::Exact)?;
        write_histogram(
            writer,
            &format!("fig4{panel}_hist_alpha{alpha}.csv"),
            &format!("fig4{panel}.svg"),
            &format!("effective frequencies, alpha={alpha}"),
            &m,
        )?;
    }
    Ok(())
}

fn fig5(writer: &mut OutputWriter) -> Result<(), CliError> {
    let grid = uniform_grid(40.0, 400)?;
    let block_sizes = [10usize, 8, 6, 4];
    let mut summary_rows: Vec<Vec<String>> = Vec::new();
    let mut finals: Vec<(f64, Vec<(usize, f64)>)> = Vec::new();

    for (panel, alpha) in [("a", 3.0), ("b", 2.0), ("c", 1.0)] {
        let m = model(alpha, Truncation::Exact)?;
        let mut labelled = Vec::new();
        let mut endpoints = Vec::new();
        for len in block_sizes {
            let start = (N - len) / 2 + 1;
            let block = BlockSpec::new(start, len).map_err(CliError::from)?;
            let series = write_series(
                writer,
                &format!("fig5{panel}_series_ni{len}.csv"),
                &m,
                Target::Block(block),
                &grid,
                true,
            )?;
            summary_rows.push(vec![
                alpha.to_string(),
                len.to_string(),
                fmt_f64(series.final_value()),
                fmt_f64(series.steady_state_mean()),
            ]);
            endpoints.push((len, series.final_value()));
            labelled.push((format!("N_I={len}"), series));
        }
        let refs: Vec<(String, &CoherenceSeries64)> =
            labelled.iter().map(|(l, s)| (l.clone(), s)).collect();
        write_chart(
            writer,
            &format!("fig5{panel}.svg"),
            &format!("normalized block coherence, alpha={alpha}, centred blocks of {N}"),
            "C/C(0)",
            &refs,
        )?;
        endpoints.sort_by_key(|&(len, _)| len);
        finals.push((alpha, endpoints));
    }

    let summary_params: Params = vec![
        param("n", N),
        param("t_f", 40.0),
        param("steps", 400),
        param("kind", "fig5-summary"),
    ];
    writer.write(
        "fig5_summary.csv",
        &table_csv(
            &summary_params,
            "alpha,n_i,c_norm_final,steady_state_mean",
            &summary_rows,
        ),
        summary_params,
    )?;

    let xs: Vec<Vec<f64>> = finals
        .iter()
        .map(|(_, pts)| pts.iter().map(|&(len, _)| len as f64).collect())
        .collect();
    let ys: Vec<Vec<f64>> = finals
        .iter()
        .map(|(_, pts)| pts.iter().map(|&(_, v)| v).collect())
        .collect();
    let curves: Vec<Curve> = finals
        .iter()
        .zip(xs.iter().zip(&ys))
        .map(|((alpha, _), (x, y))| Curve {
            label: format!("alpha={alpha}"),
            xs: x,
            ys: y,
        })
        .collect();
    let chart = svg::line_chart(
        "final normalized coherence at Jt = 40",
        "N_I",
        "C/C(0)",
        &curves,
    );
    writer.write("fig5_inset.svg", &chart, vec![param("kind", "chart")])?;
    Ok(())
}
