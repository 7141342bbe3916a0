//! `ela report` — render tables and SVG boxplots from previously produced
//! artifacts: a passing-subset grid plus a minimal-size table from the
//! `select` summaries, per-function feature-distribution boxplots from the
//! feature files, and per-run accuracy boxplots from the `validate` reports.

use std::fmt::Write as _;
use std::path::Path;

use ela_core::classify::ClassifierKind;
use ela_core::features::FeatureName;

use crate::commands::{cell_stem, Ctx};
use crate::error::{io_err, CliError, CliResult};
use crate::svg::{boxplot_svg, Group};

pub fn run(ctx: &Ctx) -> CliResult<()> {
    let dir = ctx.subdir("report")?;
    let classifiers = ctx.cfg.classifiers()?;
    let mut produced = 0usize;

    produced += grids(ctx, &dir, &classifiers)?;
    produced += feature_plots(ctx, &dir)?;
    produced += accuracy_plots(ctx, &dir, &classifiers)?;

    if produced == 0 {
        return Err(CliError::Data(format!(
            "nothing to report under {}; run `ela features`, `ela select`, or `ela validate` first",
            ctx.out().display()
        )));
    }
    println!("report: wrote {produced} file(s) under {}", dir.display());
    ctx.log_completion("report");
    Ok(())
}

/// Passing-subset grid and minimal-size table from the `select` summaries.
fn grids(ctx: &Ctx, dir: &Path, classifiers: &[ClassifierKind]) -> CliResult<usize> {
    let e = &ctx.cfg.experiment;
    let mut grid = format!("# config-hash: {}\n", ctx.hash);
    let mut sizes = format!("# config-hash: {}\n", ctx.hash);
    let mut any = false;

    for &clf in classifiers {
        let mut grid_rows = Vec::new();
        let mut size_rows = Vec::new();
        for &dim in &e.dimensions {
            for n in ctx.cfg.sample_sizes(dim) {
                let path = ctx
                    .out()
                    .join("select")
                    .join(format!("{}_summary.json", cell_stem(dim, n, clf)));
                let Ok(text) = std::fs::read_to_string(&path) else {
                    continue;
                };
                let doc: serde_json::Value = serde_json::from_str(&text)
                    .map_err(|err| CliError::Data(format!("{}: {err}", path.display())))?;
                let mut marked = [false; 10];
                for subset in doc["passing"]
                    .as_array()
                    .map(|v| v.as_slice())
                    .unwrap_or_default()
                {
                    for name in subset["subset"].as_array().map(|v| v.as_slice()).unwrap_or_default()
                    {
                        if let Some(f) = name
                            .as_str()
                            .and_then(|s| s.parse::<FeatureName>().ok())
                        {
                            marked[f.index()] = true;
                        }
                    }
                }
                let cell = format!("d{dim}/n{n}");
                let marks: Vec<String> = marked
                    .iter()
                    .map(|m| if *m { "X" } else { "." }.to_string())
                    .collect();
                grid_rows.push((cell.clone(), marks));
                size_rows.push((cell, doc["minimal_size"].to_string()));
                any = true;
            }
        }
        if grid_rows.is_empty() {
            continue;
        }
        let _ = writeln!(grid, "\nclassifier: {clf}");
        let _ = write!(grid, "{:<14}", "cell");
        for f in FeatureName::ALL {
            let _ = write!(grid, " {:>9}", f.as_str());
        }
        grid.push('\n');
        for (cell, marks) in &grid_rows {
            let _ = write!(grid, "{cell:<14}");
            for m in marks {
                let _ = write!(grid, " {m:>9}");
            }
            grid.push('\n');
        }
        let _ = writeln!(sizes, "\nclassifier: {clf}");
        for (cell, size) in &size_rows {
            let _ = writeln!(sizes, "{cell:<14} minimal portfolio size {size}");
        }
    }

    if !any {
        return Ok(0);
    }
    let path = dir.join("portfolio_grid.txt");
    std::fs::write(&path, grid).map_err(|e| io_err(&path, e))?;
    let path = dir.join("minimal_sizes.txt");
    std::fs::write(&path, sizes).map_err(|e| io_err(&path, e))?;
    Ok(2)
}

/// One SVG per (feature, cell): raw feature distributions, one box per
/// function, pooled over instances and repetitions.
fn feature_plots(ctx: &Ctx, dir: &Path) -> CliResult<usize> {
    let e = &ctx.cfg.experiment;
    let mut written = 0;
    for &dim in &e.dimensions {
        for n in ctx.cfg.sample_sizes(dim) {
            let path = ctx.features_path(dim, n);
            if !path.exists() {
                continue;
            }
            let ds = ela_core::dataset::FeatureDataset::load(&path)?;
            for (j, feature) in FeatureName::ALL.iter().enumerate() {
                let groups: Vec<Group> = (1..=24u8)
                    .map(|fid| Group {
                        label: format!("f{fid:02}"),
                        values: ds
                            .rows()
                            .iter()
                            .filter(|r| r.meta.function_id == fid)
                            .map(|r| r.values[j])
                            .collect(),
                    })
                    .filter(|g| !g.values.is_empty())
                    .collect();
                if groups.is_empty() {
                    continue;
                }
                let svg = boxplot_svg(
                    &format!("{feature} at d={dim}, n={n}"),
                    feature.as_str(),
                    &groups,
                    &format!("config-hash: {}", ctx.hash),
                );
                let out = dir.join(format!("feature_{feature}_d{dim}_n{n}.svg"));
                std::fs::write(&out, svg).map_err(|e| io_err(&out, e))?;
                written += 1;
            }
        }
    }
    Ok(written)
}

/// One SVG per cell with a box of per-run accuracies for every
/// (classifier, protocol) validation report found.
fn accuracy_plots(ctx: &Ctx, dir: &Path, classifiers: &[ClassifierKind]) -> CliResult<usize> {
    let e = &ctx.cfg.experiment;
    let protocols = ["subsample", "multi", "loio"];
    let mut written = 0;
    for &dim in &e.dimensions {
        for n in ctx.cfg.sample_sizes(dim) {
            let mut groups = Vec::new();
            for &clf in classifiers {
                for proto in protocols {
                    let path = ctx.out().join("validate").join(format!(
                        "{}_{proto}_runs.csv",
                        cell_stem(dim, n, clf)
                    ));
                    let Ok(text) = std::fs::read_to_string(&path) else {
                        continue;
                    };
                    let values = parse_accuracies(&path, &text)?;
                    if !values.is_empty() {
                        groups.push(Group {
                            label: format!("{clf}/{proto}"),
                            values,
                        });
                    }
                }
            }
            if groups.is_empty() {
                continue;
            }
            let svg = boxplot_svg(
                &format!("per-run accuracy at d={dim}, n={n}"),
                "accuracy",
                &groups,
                &format!("config-hash: {}", ctx.hash),
            );
            let out = dir.join(format!("accuracy_d{dim}_n{n}.svg"));
            std::fs::write(&out, svg).map_err(|e| io_err(&out, e))?;
            written += 1;
        }
    }
    Ok(written)
}

fn parse_accuracies(path: &Path, text: &str) -> CliResult<Vec<f64>> {
    let mut out = Vec::new();
    for line in text.lines().skip_while(|l| l.starts_with('#')).skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let acc = line
            .rsplit(',')
            .next()
            .and_then(|f| f.parse::<f64>().ok())
            .ok_or_else(|| {
                CliError::Data(format!("{}: malformed accuracy row {line:?}", path.display()))
            })?;
        out.push(acc);
    }
    Ok(out)
}
