use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use diffscale::backbone::{
    builtin, builtin_specs, count_macs, layers, validate, ArchSpec, CostReport, Layer,
};
use diffscale::io::{read_spec, spec_to_toml};
use diffscale::scaling::{enumerate_variants, training_flops, ComputeBudget, SkippedVariant};
use serde::Serialize;

use crate::output::{emit, full, opt, sig3, Table};
use crate::{Ctx, SpecSource};

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    source: SpecSource,

    /// Image resolution in pixels.
    #[arg(long, default_value_t = 256)]
    resolution: u32,

    /// Built-in architecture to report ratios against. Defaults to the
    /// family baseline for built-in architectures.
    #[arg(long)]
    baseline: Option<String>,

    /// List every counted layer instead of the summary.
    #[arg(long)]
    layers: bool,
}

#[derive(Debug, Args)]
pub struct CatalogArgs {
    #[arg(long, default_value_t = 256)]
    resolution: u32,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Built-in UNet to vary.
    #[arg(
        long,
        default_value = "sdxl-c320-td0_2_10",
        conflicts_with = "base_spec"
    )]
    base: String,

    /// UNet spec document to vary instead of a built-in.
    #[arg(long)]
    base_spec: Option<PathBuf>,

    /// Base channel counts, comma separated. Defaults to the base's.
    #[arg(long, value_delimiter = ',')]
    channels: Vec<u32>,

    /// Transformer depth per level, comma separated; repeat for several.
    #[arg(long = "td", value_parser = parse_depths)]
    depths: Vec<Depths>,

    #[arg(long, default_value_t = 256)]
    resolution: u32,

    /// Write each valid variant's spec document into this directory.
    #[arg(long)]
    write_specs: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct MacsSource {
    /// MACs of one forward pass at batch 1.
    #[arg(long)]
    macs: Option<u64>,

    #[arg(long)]
    builtin: Option<String>,

    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BudgetArgs {
    #[command(flatten)]
    source: MacsSource,

    /// Resolution used when counting MACs of an architecture.
    #[arg(long, default_value_t = 256)]
    resolution: u32,

    #[arg(long)]
    batch_size: u64,

    #[arg(long)]
    steps: u64,
}

#[derive(Debug, Clone)]
struct Depths(Vec<u32>);

fn parse_depths(raw: &str) -> Result<Depths, String> {
    raw.split(['_', ','])
        .map(|d| {
            d.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad depth `{d}`: {e}"))
        })
        .collect::<Result<_, _>>()
        .map(Depths)
}

struct Resolved {
    name: String,
    spec: ArchSpec,
    baseline: Option<String>,
}

fn resolve(source: &SpecSource) -> Result<Resolved> {
    if let Some(name) = &source.builtin {
        let b = builtin(name)?;
        return Ok(Resolved {
            name: b.name.to_string(),
            spec: b.spec,
            baseline: Some(b.baseline.to_string()),
        });
    }
    let path = source.spec.as_ref().expect("clap enforces one source");
    let spec = read_spec(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(Resolved {
        name,
        spec,
        baseline: None,
    })
}

#[derive(Debug, Serialize)]
struct Ratios {
    baseline: String,
    params_ratio: f64,
    macs_ratio: f64,
    attention_macs_ratio: f64,
}

#[derive(Debug, Serialize)]
struct AnalyzeRecord {
    name: String,
    kind: &'static str,
    spec: ArchSpec,
    #[serde(flatten)]
    cost: CostReport,
    forward_flops: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratios: Option<Ratios>,
    #[serde(skip_serializing_if = "Option::is_none")]
    layers: Option<Vec<Layer>>,
}

fn metric_row(t: &mut Table, name: &str, value: String, display: String) {
    t.row(vec![name.to_string(), value, display]);
}

pub fn analyze(ctx: &mut Ctx, args: AnalyzeArgs) -> Result<()> {
    let r = resolve(&args.source)?;
    validate(&r.spec)?;
    let cost = count_macs(&r.spec, args.resolution)?;
    let baseline = args.baseline.or(r.baseline);
    let ratios = match baseline {
        Some(name) => {
            let base = count_macs(&builtin(&name)?.spec, args.resolution)?;
            Some(Ratios {
                params_ratio: cost.params as f64 / base.params as f64,
                macs_ratio: cost.total_macs as f64 / base.total_macs as f64,
                attention_macs_ratio: if base.attention_macs == 0 {
                    f64::NAN
                } else {
                    cost.attention_macs as f64 / base.attention_macs as f64
                },
                baseline: name,
            })
        }
        None => None,
    };
    let inventory = if args.layers {
        Some(layers(&r.spec, args.resolution)?)
    } else {
        None
    };

    let mut table;
    if let Some(inv) = &inventory {
        table = Table::new(&["layer", "params", "macs", "attention"]);
        for l in inv {
            table.row(vec![
                l.name.clone(),
                l.params.to_string(),
                l.macs.to_string(),
                l.attention.to_string(),
            ]);
        }
    } else {
        table = Table::new(&["metric", "value", "display"]);
        metric_row(&mut table, "name", r.name.clone(), r.name.clone());
        metric_row(
            &mut table,
            "kind",
            r.spec.kind_name().into(),
            r.spec.kind_name().into(),
        );
        metric_row(
            &mut table,
            "resolution",
            cost.resolution.to_string(),
            cost.resolution.to_string(),
        );
        metric_row(
            &mut table,
            "params",
            cost.params.to_string(),
            format!("{}B", sig3(cost.params_billions())),
        );
        metric_row(
            &mut table,
            "total_macs",
            cost.total_macs.to_string(),
            format!("{}G", sig3(cost.gmacs())),
        );
        metric_row(
            &mut table,
            "attention_macs",
            cost.attention_macs.to_string(),
            format!("{}G", sig3(cost.attention_gmacs())),
        );
        metric_row(
            &mut table,
            "attention_share",
            full(cost.attention_share),
            format!("{}%", sig3(100.0 * cost.attention_share)),
        );
        metric_row(
            &mut table,
            "forward_flops",
            cost.forward_flops().to_string(),
            sig3(cost.forward_flops() as f64),
        );
        if let Some(x) = &ratios {
            metric_row(
                &mut table,
                "baseline",
                x.baseline.clone(),
                x.baseline.clone(),
            );
            metric_row(
                &mut table,
                "params_ratio",
                full(x.params_ratio),
                sig3(x.params_ratio),
            );
            metric_row(
                &mut table,
                "macs_ratio",
                full(x.macs_ratio),
                sig3(x.macs_ratio),
            );
            metric_row(
                &mut table,
                "attention_macs_ratio",
                full(x.attention_macs_ratio),
                sig3(x.attention_macs_ratio),
            );
        }
    }
    let record = AnalyzeRecord {
        name: r.name,
        kind: r.spec.kind_name(),
        spec: r.spec,
        forward_flops: cost.forward_flops(),
        cost,
        ratios,
        layers: inventory,
    };
    emit(&mut ctx.out, ctx.format, &table, &record)
}

#[derive(Debug, Serialize)]
struct CatalogRow {
    name: &'static str,
    family: &'static str,
    kind: &'static str,
    #[serde(flatten)]
    cost: CostReport,
    published_params_b: f64,
    published_gmacs: f64,
    published_attention_gmacs: Option<f64>,
    published_attention_pct: Option<f64>,
}

pub fn catalog(ctx: &mut Ctx, args: CatalogArgs) -> Result<()> {
    let mut table = Table::new(&[
        "name",
        "family",
        "kind",
        "params",
        "params_b",
        "total_macs",
        "gmacs",
        "attention_macs",
        "attention_gmacs",
        "attention_share",
        "attention_pct",
        "published_params_b",
        "published_gmacs",
        "published_attention_gmacs",
        "published_attention_pct",
    ]);
    let mut rows = Vec::new();
    for b in builtin_specs() {
        let cost = count_macs(&b.spec, args.resolution).with_context(|| b.name)?;
        table.row(vec![
            b.name.into(),
            b.family.into(),
            b.spec.kind_name().into(),
            cost.params.to_string(),
            sig3(cost.params_billions()),
            cost.total_macs.to_string(),
            sig3(cost.gmacs()),
            cost.attention_macs.to_string(),
            sig3(cost.attention_gmacs()),
            full(cost.attention_share),
            sig3(100.0 * cost.attention_share),
            full(b.published.params_b),
            full(b.published.gmacs),
            opt(b.published.attention_gmacs, full),
            opt(b.published.attention_pct, full),
        ]);
        rows.push(CatalogRow {
            name: b.name,
            family: b.family,
            kind: b.spec.kind_name(),
            cost,
            published_params_b: b.published.params_b,
            published_gmacs: b.published.gmacs,
            published_attention_gmacs: b.published.attention_gmacs,
            published_attention_pct: b.published.attention_pct,
        });
    }
    emit(&mut ctx.out, ctx.format, &table, &rows)
}

#[derive(Debug, Serialize)]
struct VariantRow {
    name: String,
    #[serde(flatten)]
    cost: CostReport,
}

#[derive(Debug, Serialize)]
struct EnumerateRecord {
    variants: Vec<VariantRow>,
    skipped: Vec<SkippedVariant>,
}

pub fn enumerate(ctx: &mut Ctx, args: EnumerateArgs) -> Result<()> {
    let base = match &args.base_spec {
        Some(path) => read_spec(path)?,
        None => builtin(&args.base)?.spec,
    };
    let ArchSpec::Unet(base) = base else {
        bail!(diffscale::Error::Domain(
            "enumeration varies UNet specs only".into()
        ));
    };
    let channels = if args.channels.is_empty() {
        vec![base.base_channels]
    } else {
        args.channels
    };
    let depths = if args.depths.is_empty() {
        vec![base.transformer_depth.clone()]
    } else {
        args.depths.into_iter().map(|d| d.0).collect()
    };
    let e = enumerate_variants(&base, &channels, &depths);
    if let Some(dir) = &args.write_specs {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (name, spec) in &e.variants {
            let path = dir.join(format!("{name}.toml"));
            fs::write(&path, spec_to_toml(&spec.clone().into()))
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    for s in &e.skipped {
        let reasons: Vec<String> = s.reasons.iter().map(|v| v.to_string()).collect();
        eprintln!("skipped {}: {}", s.name, reasons.join("; "));
    }
    let mut table = Table::new(&[
        "variant",
        "params",
        "params_b",
        "total_macs",
        "gmacs",
        "attention_macs",
        "attention_share",
        "attention_pct",
    ]);
    let mut variants = Vec::new();
    for (name, spec) in e.variants {
        let cost = count_macs(&spec.into(), args.resolution)?;
        table.row(vec![
            name.clone(),
            cost.params.to_string(),
            sig3(cost.params_billions()),
            cost.total_macs.to_string(),
            sig3(cost.gmacs()),
            cost.attention_macs.to_string(),
            full(cost.attention_share),
            sig3(100.0 * cost.attention_share),
        ]);
        variants.push(VariantRow { name, cost });
    }
    let record = EnumerateRecord {
        variants,
        skipped: e.skipped,
    };
    emit(&mut ctx.out, ctx.format, &table, &record)
}

#[derive(Debug, Serialize)]
struct BudgetRecord {
    #[serde(flatten)]
    budget: ComputeBudget,
    flops_per_sample_step: u128,
}

pub fn budget(ctx: &mut Ctx, args: BudgetArgs) -> Result<()> {
    let macs = match args.source.macs {
        Some(m) => m,
        None => {
            let source = SpecSource {
                builtin: args.source.builtin,
                spec: args.source.spec,
            };
            count_macs(&resolve(&source)?.spec, args.resolution)?.total_macs
        }
    };
    let b = training_flops(macs, args.batch_size, args.steps)?;
    let per_sample = ComputeBudget::flops_per_sample(macs);
    let mut table = Table::new(&["metric", "value", "display"]);
    for (name, value) in [
        ("macs_per_step", macs as u128),
        ("batch_size", args.batch_size as u128),
        ("steps", args.steps as u128),
        ("flops_per_sample_step", per_sample),
        ("total_flops", b.total_flops),
    ] {
        table.row(vec![name.into(), value.to_string(), sig3(value as f64)]);
    }
    let record = BudgetRecord {
        budget: b,
        flops_per_sample_step: per_sample,
    };
    emit(&mut ctx.out, ctx.format, &table, &record)
}
