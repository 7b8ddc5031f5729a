use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use diffscale::io::read_points;
use diffscale::scaling::{
    fit_power_law, frontier_fit, invert_budget, pareto_split, predict_score, PowerLawFit,
    ScalePoint, ScalingReport,
};
use serde::Serialize;

use crate::output::{emit, full, sig3, Table};
use crate::Ctx;

#[derive(Debug, Args)]
pub struct ParetoArgs {
    /// CSV file of `label,x,score` records.
    points: PathBuf,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    points: PathBuf,

    /// x values to predict scores at, comma separated.
    #[arg(long, value_delimiter = ',')]
    predict_at: Vec<f64>,

    /// Fit every point rather than only the Pareto frontier.
    #[arg(long)]
    all_points: bool,
}

/// Published fits on the Pareto frontiers of the three scaling axes.
#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Law {
    /// Score against training compute in GFLOPs.
    Compute,
    /// Score against model size in millions of parameters.
    Params,
    /// Score against image-noun pairs in millions.
    Data,
}

impl Law {
    fn fit(self) -> PowerLawFit {
        match self {
            Law::Compute => PowerLawFit::exact(0.47, 0.02),
            Law::Params => PowerLawFit::exact(0.77, 0.11),
            Law::Data => PowerLawFit::exact(0.64, 0.03),
        }
    }
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Use a published fit instead of `--a`/`--b`.
    #[arg(long, value_enum, conflicts_with_all = ["a", "b"])]
    law: Option<Law>,

    #[arg(long, requires = "b", allow_negative_numbers = true)]
    a: Option<f64>,

    #[arg(long, requires = "a", allow_negative_numbers = true)]
    b: Option<f64>,

    /// Resource values to score, comma separated.
    #[arg(long, value_delimiter = ',')]
    x: Vec<f64>,

    /// Target scores to invert into resource values, comma separated.
    #[arg(long, value_delimiter = ',')]
    target: Vec<f64>,
}

#[derive(Debug, Serialize)]
struct ParetoRecord {
    frontier: Vec<ScalePoint>,
    dominated: Vec<ScalePoint>,
}

pub fn pareto(ctx: &mut Ctx, args: ParetoArgs) -> Result<()> {
    let points = read_points(&args.points)?;
    let (frontier, dominated) = pareto_split(&points)?;
    let mut table = Table::new(&["label", "x", "score", "frontier"]);
    for (set, on) in [(&frontier, true), (&dominated, false)] {
        for p in set {
            table.row(vec![
                p.label.clone(),
                full(p.x),
                full(p.score),
                on.to_string(),
            ]);
        }
    }
    emit(
        &mut ctx.out,
        ctx.format,
        &table,
        &ParetoRecord {
            frontier,
            dominated,
        },
    )
}

fn fit_rows(table: &mut Table, fit: &PowerLawFit) {
    for (name, v) in [("a", fit.a), ("b", fit.b), ("rss", fit.rss)] {
        table.row(vec![
            "fit".into(),
            name.into(),
            String::new(),
            full(v),
            sig3(v),
        ]);
    }
    table.row(vec![
        "fit".into(),
        "n_points".into(),
        String::new(),
        fit.n_points.to_string(),
        fit.n_points.to_string(),
    ]);
}

pub fn fit(ctx: &mut Ctx, args: FitArgs) -> Result<()> {
    let points = read_points(&args.points)?;
    let report = if args.all_points {
        let fit = fit_power_law(&points)?;
        ScalingReport {
            predictions: args
                .predict_at
                .iter()
                .map(|&x| (x, predict_score(&fit, x)))
                .collect(),
            frontier: points,
            fit,
        }
    } else {
        frontier_fit(&points, &args.predict_at)?
    };
    let mut table = Table::new(&["section", "name", "x", "value", "display"]);
    for p in &report.frontier {
        table.row(vec![
            "frontier".into(),
            p.label.clone(),
            full(p.x),
            full(p.score),
            sig3(p.score),
        ]);
    }
    fit_rows(&mut table, &report.fit);
    for &(x, s) in &report.predictions {
        table.row(vec![
            "prediction".into(),
            String::new(),
            full(x),
            full(s),
            sig3(s),
        ]);
    }
    emit(&mut ctx.out, ctx.format, &table, &report)
}

#[derive(Debug, Serialize)]
struct Evaluation {
    x: f64,
    score: f64,
}

#[derive(Debug, Serialize)]
struct PredictRecord {
    fit: PowerLawFit,
    predictions: Vec<Evaluation>,
    inversions: Vec<Evaluation>,
}

pub fn predict(ctx: &mut Ctx, args: PredictArgs) -> Result<()> {
    let fit = match (args.law, args.a, args.b) {
        (Some(law), _, _) => law.fit(),
        (None, Some(a), Some(b)) => PowerLawFit::exact(a, b),
        _ => anyhow::bail!(diffscale::Error::Domain(
            "give --law or both --a and --b".into()
        )),
    };
    if !(fit.a > 0.0 && fit.a.is_finite() && fit.b.is_finite()) {
        anyhow::bail!(diffscale::Error::Domain(format!(
            "invalid power law a={} b={}",
            fit.a, fit.b
        )));
    }
    let mut predictions = Vec::new();
    for &x in &args.x {
        if !(x > 0.0 && x.is_finite()) {
            anyhow::bail!(diffscale::Error::Domain(format!(
                "x must be positive, got {x}"
            )));
        }
        predictions.push(Evaluation {
            x,
            score: predict_score(&fit, x),
        });
    }
    let inversions = args
        .target
        .iter()
        .map(|&score| invert_budget(&fit, score).map(|x| Evaluation { x, score }))
        .collect::<diffscale::Result<Vec<_>>>()?;
    let mut table = Table::new(&["direction", "x", "x_display", "score", "score_display"]);
    for (dir, set) in [("predict", &predictions), ("invert", &inversions)] {
        for e in set {
            table.row(vec![
                dir.into(),
                full(e.x),
                sig3(e.x),
                full(e.score),
                sig3(e.score),
            ]);
        }
    }
    let record = PredictRecord {
        fit,
        predictions,
        inversions,
    };
    emit(&mut ctx.out, ctx.format, &table, &record)
}
