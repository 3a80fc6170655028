//! Execution of `run` and `scan-alpha` scenarios.

use crate::errors::CliError;
use crate::output::{fmt_f64, param, series_csv, table_csv, OutputWriter, Params};
use crate::scenario::{OutputKind, Scenario};
use crate::svg::{self, Curve};
use lrising::{
    coherence, effective_frequencies, histogram, uniform_grid, Bins, CoherenceSeries64,
    CouplingModel64, Relaxation, Target,
};

pub fn build_model(sc: &Scenario) -> Result<CouplingModel64, CliError> {
    CouplingModel64::new(sc.n, sc.j, sc.alpha, sc.truncation).map_err(CliError::from)
}

fn relaxation_cell(relaxation: &Relaxation<f64>) -> String {
    match relaxation {
        Relaxation::Relaxed(t) => fmt_f64(*t),
        Relaxation::NotRelaxed => "NotRelaxed".to_string(),
    }
}

fn target_label(target: Target) -> String {
    match target {
        Target::Spin(j) => format!("spin {j}"),
        Target::Block(b) => format!("block {}..={}", b.start(), b.end()),
    }
}

/// Run one scenario: series, optional spectrum, relaxation and
/// steady-state summaries, the manifest.
pub fn execute_run(sc: &Scenario) -> Result<(), CliError> {
    let model = build_model(sc)?;
    let header = {
        let mut h = vec![param("command", "run")];
        h.extend(sc.model_params());
        h.push(param("t_max", sc.t_max));
        h.push(param("steps", sc.steps));
        h.push(param("normalize", sc.normalize));
        h.push(param("method", crate::scenario::method_label(sc.method)));
        h.push(param("bins", sc.bins));
        h
    };
    let mut writer = OutputWriter::create(&sc.out_dir, header)?;

    let needs_series = sc.outputs.contains(&OutputKind::Series)
        || sc.outputs.contains(&OutputKind::Relaxation)
        || sc.outputs.contains(&OutputKind::SteadyState);

    if needs_series {
        let grid = uniform_grid(sc.t_max, sc.steps)?;
        let series = coherence::series(&model, sc.target, &grid, sc.normalize, sc.method)?;

        if sc.outputs.contains(&OutputKind::Series) {
            writer.write(
                "series.csv",
                &series_csv(&sc.series_params(), &series),
                sc.series_params(),
            )?;
            if sc.svg {
                let chart = svg::line_chart(
                    &format!("coherence, {}", target_label(sc.target)),
                    "Jt",
                    if sc.normalize { "C/C(0)" } else { "C" },
                    &[Curve {
                        label: format!("alpha={}", sc.alpha),
                        xs: series.times(),
                        ys: series.values(),
                    }],
                );
                writer.write("series.svg", &chart, sc.series_params())?;
            }
        }

        let mut rows: Vec<Vec<String>> = Vec::new();
        if sc.outputs.contains(&OutputKind::Relaxation) {
            let relaxation = series.relaxation_time()?;
            rows.push(vec!["t_r".into(), relaxation_cell(&relaxation)]);
            rows.push(vec![
                "relaxation_rate".into(),
                relaxation
                    .rate()
                    .map(fmt_f64)
                    .unwrap_or_else(|| "NotRelaxed".to_string()),
            ]);
        }
        if sc.outputs.contains(&OutputKind::SteadyState) {
            rows.push(vec![
                "steady_state_mean".into(),
                fmt_f64(series.steady_state_mean()),
            ]);
            rows.push(vec!["final_value".into(), fmt_f64(series.final_value())]);
        }
        if !rows.is_empty() {
            for row in &rows {
                println!("  {} = {}", row[0], row[1]);
            }
            writer.write(
                "summary.csv",
                &table_csv(&sc.series_params(), "metric,value", &rows),
                sc.series_params(),
            )?;
        }
    }

    if sc.outputs.contains(&OutputKind::Spectrum) {
        let Target::Spin(j) = sc.target else {
            return Err(CliError::Args(
                "spectrum output needs a single-spin target".into(),
            ));
        };
        let freqs = effective_frequencies(&model, j)?;
        let hist = histogram(&freqs, Bins::Count(sc.bins), sc.hist_norm)?;
        let mut params = sc.spectrum_params();
        params.push(param("total_frequencies", hist.total_count()));
        writer.write(
            "spectrum.csv",
            &crate::output::histogram_csv(&params, &hist),
            params.clone(),
        )?;
        if sc.svg {
            let chart = svg::histogram_chart(
                &format!("effective frequencies, spin {j}"),
                "omega / J",
                "N(omega)",
                hist.bin_edges(),
                hist.mass(),
            );
            writer.write("spectrum.svg", &chart, params)?;
        }
    }

    writer.finish()
}

/// One series per exponent plus a summary table of relaxation time and
/// steady-state coherence.
pub fn execute_scan(alphas: &[f64], sc: &Scenario) -> Result<(), CliError> {
    if alphas.is_empty() {
        return Err(CliError::Args("scan needs at least one alpha".into()));
    }
    let header = {
        let mut h = vec![
            param("command", "scan-alpha"),
            param(
                "alphas",
                alphas
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
        ];
        // the template alpha is overridden per series; keep it out of the header
        h.extend(sc.model_params().into_iter().filter(|(k, _)| k != "alpha"));
        h.push(param("t_max", sc.t_max));
        h.push(param("steps", sc.steps));
        h.push(param("normalize", sc.normalize));
        h.push(param("method", crate::scenario::method_label(sc.method)));
        h
    };
    let mut writer = OutputWriter::create(&sc.out_dir, header)?;

    let grid = uniform_grid(sc.t_max, sc.steps)?;
    let mut all: Vec<(f64, CoherenceSeries64)> = Vec::new();
    let mut rows: Vec<Vec<String>> = Vec::new();

    println!(
        "{:>8}  {:>22}  {:>22}",
        "alpha", "t_r", "steady_state_mean"
    );
    for &alpha in alphas {
        let scenario = Scenario {
            alpha,
            ..sc.clone()
        };
        let model = build_model(&scenario)?;
        let series = coherence::series(&model, sc.target, &grid, sc.normalize, sc.method)?;
        let relaxation = series.relaxation_time()?;
        let steady = series.steady_state_mean();
        println!(
            "{alpha:>8}  {:>22}  {steady:>22.15}",
            match relaxation {
                Relaxation::Relaxed(t) => format!("{t:.15}"),
                Relaxation::NotRelaxed => "NotRelaxed".to_string(),
            }
        );
        rows.push(vec![
            alpha.to_string(),
            relaxation_cell(&relaxation),
            fmt_f64(steady),
        ]);

        let name = format!("scan_series_alpha{alpha}.csv");
        let mut params = scenario.series_params();
        params.push(param("scan_alpha", alpha));
        writer.write(&name, &series_csv(&params, &series), params)?;
        all.push((alpha, series));
    }

    let summary_params: Params = vec![param("kind", "scan-summary")];
    writer.write(
        "scan_summary.csv",
        &table_csv(
            &summary_params,
            "alpha,t_r,steady_state_mean",
            &rows,
        ),
        summary_params,
    )?;

    if sc.svg {
        let curves: Vec<Curve> = all
            .iter()
            .map(|(alpha, series)| Curve {
                label: format!("alpha={alpha}"),
                xs: series.times(),
                ys: series.values(),
            })
            .collect();
        let chart = svg::line_chart(
            &format!("coherence scan, {}", target_label(sc.target)),
            "Jt",
            if sc.normalize { "C/C(0)" } else { "C" },
            &curves,
        );
        writer.write("scan.svg", &chart, vec![param("kind", "scan-chart")])?;
    }

    writer.finish()
}
