use std::collections::HashMap;
use std::path::PathBuf;

use anyhow::{anyhow, Result};
use clap::Args;
use diffscale::backbone::{builtin, count_macs};
use diffscale::curves::{compute_to_threshold, speedup, steps_to_threshold};
use diffscale::io::read_curves;
use serde::Serialize;

use crate::output::{emit, full, opt, sig3, Table};
use crate::Ctx;

#[derive(Debug, Args)]
pub struct CurvesArgs {
    /// CSV file of `label,metric_name,step,value` records.
    curves: PathBuf,

    /// Metric level to reach.
    #[arg(long, allow_negative_numbers = true)]
    threshold: f64,

    /// Curve label that speedups are measured against.
    #[arg(long)]
    baseline: Option<String>,

    /// MACs per forward pass for a label, as `label=count` or
    /// `label=builtin-name` (counted at 256). Repeatable.
    #[arg(long = "macs", value_parser = parse_macs)]
    macs: Vec<(String, MacsSource)>,

    /// Training batch size for compute-to-threshold.
    #[arg(long, default_value_t = 2048)]
    batch_size: u64,
}

#[derive(Debug, Clone)]
enum MacsSource {
    Count(u64),
    Builtin(String),
}

fn parse_macs(raw: &str) -> Result<(String, MacsSource), String> {
    let (label, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected label=value, got `{raw}`"))?;
    let source = match value.parse::<f64>() {
        Ok(v) if v > 0.0 && v.fract() == 0.0 && v < u64::MAX as f64 => MacsSource::Count(v as u64),
        Ok(v) => return Err(format!("MACs must be a positive integer, got {v}")),
        Err(_) => MacsSource::Builtin(value.to_string()),
    };
    Ok((label.to_string(), source))
}

#[derive(Debug, Serialize)]
struct CurveRow {
    label: String,
    metric_name: String,
    steps_to_threshold: Option<f64>,
    speedup: Option<f64>,
    macs_per_step: Option<u64>,
    flops_to_threshold: Option<f64>,
}

#[derive(Debug, Serialize)]
struct CurvesRecord {
    threshold: f64,
    baseline: Option<String>,
    batch_size: u64,
    curves: Vec<CurveRow>,
}

pub fn curves(ctx: &mut Ctx, args: CurvesArgs) -> Result<()> {
    let curves = read_curves(&args.curves)?;
    let mut macs = HashMap::new();
    for (label, source) in args.macs {
        let m = match source {
            MacsSource::Count(m) => m,
            MacsSource::Builtin(name) => count_macs(&builtin(&name)?.spec, 256)?.total_macs,
        };
        macs.insert(label, m);
    }
    if let Some(b) = &args.baseline {
        if !curves.iter().any(|c| &c.label == b) {
            return Err(anyhow!(diffscale::Error::Domain(format!(
                "no curve labelled `{b}`"
            ))));
        }
    }
    let mut rows = Vec::new();
    for c in &curves {
        let base = args.baseline.as_ref().and_then(|b| {
            curves
                .iter()
                .find(|o| &o.label == b && o.metric_name == c.metric_name)
        });
        let sp = match base {
            Some(b) => speedup(b, c, args.threshold)?,
            None => None,
        };
        let m = macs.get(&c.label).copied();
        let flops = match m {
            Some(m) => compute_to_threshold(c, args.threshold, m, args.batch_size)?,
            None => None,
        };
        rows.push(CurveRow {
            label: c.label.clone(),
            metric_name: c.metric_name.clone(),
            steps_to_threshold: steps_to_threshold(c, args.threshold),
            speedup: sp,
            macs_per_step: m,
            flops_to_threshold: flops,
        });
    }
    let mut table = Table::new(&[
        "label",
        "metric",
        "steps_to_threshold",
        "steps_display",
        "speedup",
        "flops_to_threshold",
        "flops_display",
    ]);
    for r in &rows {
        table.row(vec![
            r.label.clone(),
            r.metric_name.clone(),
            opt(r.steps_to_threshold, full),
            opt(r.steps_to_threshold, sig3),
            opt(r.speedup, full),
            opt(r.flops_to_threshold, full),
            opt(r.flops_to_threshold, sig3),
        ]);
    }
    let record = CurvesRecord {
        threshold: args.threshold,
        baseline: args.baseline,
        batch_size: args.batch_size,
        curves: rows,
    };
    emit(&mut ctx.out, ctx.format, &table, &record)
}
