//! `ela select` — exhaustive search for the smallest feature subsets whose
//! per-run accuracy clears the gate in every validation run.

use std::fmt::Write as _;

use ela_core::classify::ClassifierKind;
use ela_core::validate::{enumerate_minimal_portfolios, PortfolioResult, ValidationReport};

use crate::commands::{cell_stem, load_cell, Ctx};
use crate::error::{io_err, CliError, CliResult};

pub fn run(ctx: &Ctx) -> CliResult<()> {
    let dir = ctx.subdir("select")?;
    let e = &ctx.cfg.experiment;
    let classifiers = ctx.cfg.classifiers()?;
    let mut unmet: Vec<String> = Vec::new();

    for &dim in &e.dimensions {
        for n in ctx.cfg.sample_sizes(dim) {
            let (ds, _) = load_cell(ctx, dim, n)?.normalize()?;
            for &clf in &classifiers {
                let opts = validation_options(ctx)?;
                let portfolio = enumerate_minimal_portfolios(&ds, clf, &opts)?;
                let stem = cell_stem(dim, n, clf);

                let path = dir.join(format!("{stem}_summary.json"));
                std::fs::write(&path, summary_json(ctx, &portfolio, clf))
                    .map_err(|e| io_err(&path, e))?;
                let path = dir.join(format!("{stem}_runs.csv"));
                std::fs::write(&path, runs_csv(ctx, &portfolio))
                    .map_err(|e| io_err(&path, e))?;
                for report in portfolio.passing.iter().chain(&portfolio.best_found) {
                    let path = dir.join(format!("{stem}_confusion_{}.csv", slug(report)));
                    std::fs::write(&path, confusion_csv(ctx, report))
                        .map_err(|e| io_err(&path, e))?;
                }

                if portfolio.passing.is_empty() {
                    unmet.push(format!(
                        "{stem}: no subset reached {} in every run ({} examined)",
                        opts.gate, portfolio.subsets_examined
                    ));
                } else {
                    println!(
                        "select {stem}: minimal size {} with {} passing subset(s)",
                        portfolio.minimal_size,
                        portfolio.passing.len()
                    );
                }
            }
        }
    }
    ctx.log_completion("select");
    if unmet.is_empty() {
        Ok(())
    } else {
        Err(CliError::GateNotMet(unmet.join("; ")))
    }
}

pub fn validation_options(ctx: &Ctx) -> CliResult<ela_core::validate::ValidationOptions> {
    let e = &ctx.cfg.experiment;
    Ok(ela_core::validate::ValidationOptions {
        protocol: ctx.cfg.protocol()?,
        runs: e.runs,
        master_seed: e.seed,
        gate: e.gate,
        knn_k: e.knn_k,
        ..Default::default()
    })
}

pub fn slug(report: &ValidationReport) -> String {
    report
        .subset
        .iter()
        .map(|f| f.as_str())
        .collect::<Vec<_>>()
        .join("-")
}

fn summary_json(ctx: &Ctx, p: &PortfolioResult, clf: ClassifierKind) -> String {
    let entry = |r: &ValidationReport| {
        serde_json::json!({
            "subset": r.subset.iter().map(|f| f.as_str()).collect::<Vec<_>>(),
            "min_accuracy": r.min_accuracy(),
            "mean_accuracy": r.mean_accuracy(),
            "pass": r.pass,
        })
    };
    let doc = serde_json::json!({
        "config_hash": ctx.hash,
        "dimension": p.dimension,
        "sample_size": p.sample_size,
        "classifier": clf.as_str(),
        "protocol": ctx.cfg.experiment.protocol,
        "gate": ctx.cfg.experiment.gate,
        "runs": ctx.cfg.experiment.runs,
        "minimal_size": p.minimal_size,
        "subsets_examined": p.subsets_examined,
        "passing": p.passing.iter().map(entry).collect::<Vec<_>>(),
        "best_found": p.best_found.as_ref().map(entry),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("summary serializes");
    text.push('\n');
    text
}

fn runs_csv(ctx: &Ctx, p: &PortfolioResult) -> String {
    let mut out = format!("# config-hash: {}\nsubset,run,accuracy\n", ctx.hash);
    for report in p.passing.iter().chain(&p.best_found) {
        let s = slug(report);
        for (run, acc) in report.per_run_accuracies.iter().enumerate() {
            let _ = writeln!(out, "{s},{run},{acc}");
        }
    }
    out
}

pub fn confusion_csv(ctx: &Ctx, report: &ValidationReport) -> String {
    let mut out = format!(
        "# config-hash: {}\n# subset: {}\ntrue_function",
        ctx.hash,
        slug(report)
    );
    for p in 1..=24 {
        let _ = write!(out, ",predicted_{p}");
    }
    out.push('\n');
    for (t, row) in report.confusion.iter().enumerate() {
        let _ = write!(out, "{}", t + 1);
        for c in row {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
    }
    out
}
