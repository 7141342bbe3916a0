//! `ela validate` — score one configured feature subset under the chosen
//! protocol and write the per-run report. Unlike `select`, this command
//! always exits 0 on a completed evaluation: the report itself carries the
//! pass/fail verdict.

use std::fmt::Write as _;

use ela_core::validate::{run_validation, ValidationReport};

use crate::commands::select::{confusion_csv, slug, validation_options};
use crate::commands::{cell_stem, load_cell, Ctx};
use crate::error::{io_err, CliResult};

pub fn run(ctx: &Ctx) -> CliResult<()> {
    let dir = ctx.subdir("validate")?;
    let e = &ctx.cfg.experiment;
    let classifiers = ctx.cfg.classifiers()?;
    let subset = ctx.cfg.subset()?;

    for &dim in &e.dimensions {
        for n in ctx.cfg.sample_sizes(dim) {
            let (ds, _) = load_cell(ctx, dim, n)?.normalize()?;
            for &clf in &classifiers {
                let opts = validation_options(ctx)?;
                let report = run_validation(&ds, &subset, clf, &opts)?;
                let stem = format!("{}_{}", cell_stem(dim, n, clf), e.protocol);

                let path = dir.join(format!("{stem}.json"));
                std::fs::write(&path, report_json(ctx, dim, n, &report))
                    .map_err(|e| io_err(&path, e))?;
                let path = dir.join(format!("{stem}_runs.csv"));
                std::fs::write(&path, runs_csv(ctx, &report)).map_err(|e| io_err(&path, e))?;
                let path = dir.join(format!("{stem}_confusion.csv"));
                std::fs::write(&path, confusion_csv(ctx, &report))
                    .map_err(|e| io_err(&path, e))?;

                println!(
                    "validate {stem}: min {:.4} mean {:.4} over {} runs ({})",
                    report.min_accuracy(),
                    report.mean_accuracy(),
                    report.per_run_accuracies.len(),
                    if report.pass { "passes gate" } else { "below gate" },
                );
            }
        }
    }
    ctx.log_completion("validate");
    Ok(())
}

fn report_json(ctx: &Ctx, dim: usize, n: usize, r: &ValidationReport) -> String {
    let doc = serde_json::json!({
        "config_hash": ctx.hash,
        "dimension": dim,
        "sample_size": n,
        "classifier": r.classifier.as_str(),
        "protocol": r.protocol.as_str(),
        "subset": r.subset.iter().map(|f| f.as_str()).collect::<Vec<_>>(),
        "gate": r.gate,
        "pass": r.pass,
        "min_accuracy": r.min_accuracy(),
        "mean_accuracy": r.mean_accuracy(),
        "per_run_accuracies": r.per_run_accuracies,
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
    text.push('\n');
    text
}

fn runs_csv(ctx: &Ctx, r: &ValidationReport) -> String {
    let mut out = format!("# config-hash: {}\nsubset,run,accuracy\n", ctx.hash);
    let s = slug(r);
    for (run, acc) in r.per_run_accuracies.iter().enumerate() {
        let _ = writeln!(out, "{s},{run},{acc}");
    }
    out
}
