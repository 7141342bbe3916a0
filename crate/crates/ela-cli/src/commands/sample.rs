//! `ela sample` — materialize the raw designs as one CSV per
//! (function, instance, repetition).

use std::fmt::Write as _;
use std::path::Path;

use ela_core::bbob::ProblemInstance;
use ela_core::features::Sample;
use ela_core::pipeline::{generate_sample, skip_offset};

use crate::commands::Ctx;
use crate::error::{io_err, CliError, CliResult};

pub fn run(ctx: &Ctx) -> CliResult<()> {
    let e = &ctx.cfg.experiment;
    let mut written = 0usize;
    for &dim in &e.dimensions {
        for n in ctx.cfg.sample_sizes(dim) {
            let dir = ctx.samples_dir(dim, n);
            std::fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
            for fid in 1..=ela_core::bbob::FUNCTION_COUNT {
                for &iid in &e.instances {
                    let inst = ProblemInstance::new(fid, iid, dim)?;
                    for rep in 0..e.repetitions {
                        let skip = skip_offset(e.seed, fid, iid, dim, n, rep);
                        let sample = generate_sample(&inst, n, skip)?;
                        let path = dir.join(file_name(fid, iid, rep));
                        std::fs::write(&path, render(&sample, &ctx.hash, fid, iid, rep, skip))
                            .map_err(|e| io_err(&path, e))?;
                        written += 1;
                    }
                }
            }
        }
    }
    println!("sample: wrote {written} design files under {}", ctx.out().display());
    ctx.log_completion("sample");
    Ok(())
}

pub fn file_name(fid: u8, iid: u32, rep: u32) -> String {
    format!("f{fid:02}_i{iid:02}_r{rep:03}.csv")
}

fn render(sample: &Sample, hash: &str, fid: u8, iid: u32, rep: u32, skip: u64) -> String {
    let d = sample.dimension();
    let mut out = String::new();
    let _ = writeln!(out, "# config-hash: {hash}");
    let _ = writeln!(
        out,
        "# function: {fid} instance: {iid} dimension: {d} sample-size: {} repetition: {rep} seed: {skip}",
        sample.len()
    );
    for j in 1..=d {
        let _ = write!(out, "x{j},");
    }
    out.push_str("y\n");
    for i in 0..sample.len() {
        for v in sample.x().row(i) {
            let _ = write!(out, "{v},");
        }
        let _ = writeln!(out, "{}", sample.y()[i]);
    }
    out
}

/// Parses one design file back; the inverse of [`render`]. Returns the
/// sample plus the recorded Sobol' skip offset.
pub fn parse(path: &Path) -> CliResult<(Sample, u64)> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut seed: Option<u64> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut y = Vec::new();
    let mut header_seen = false;
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let bad = |what: String| {
            CliError::Data(format!("{}:{lineno}: {what}", path.display()))
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut tokens = comment.split_whitespace().peekable();
            while let Some(t) = tokens.next() {
                if t == "seed:" {
                    let v = tokens
                        .peek()
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("malformed seed comment".into()))?;
                    seed = Some(v);
                }
            }
            continue;
        }
        if !header_seen {
            if !trimmed.starts_with("x1,") || !trimmed.ends_with(",y") {
                return Err(bad(format!("unexpected header {trimmed:?}")));
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() < 2 {
            return Err(bad("row needs at least one coordinate and a value".into()));
        }
        let mut parsed = Vec::with_capacity(fields.len());
        for f in &fields {
            parsed.push(
                f.parse::<f64>()
                    .map_err(|e| bad(format!("bad number {f:?}: {e}")))?,
            );
        }
        y.push(parsed.pop().unwrap());
        rows.push(parsed);
    }
    if rows.is_empty() {
        return Err(CliError::Data(format!("{}: no data rows", path.display())));
    }
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) {
        return Err(CliError::Data(format!(
            "{}: ragged rows in design file",
            path.display()
        )));
    }
    let seed = seed
        .ok_or_else(|| CliError::Data(format!("{}: missing seed comment", path.display())))?;
    let sample = Sample::new(ela_core::util::Matrix::from_rows(&rows), y)?;
    Ok((sample, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse_round_trip_bit_exactly() {
        let inst = ProblemInstance::new(7, 2, 3).unwrap();
        let skip = skip_offset(9, 7, 2, 3, 60, 4);
        let sample = generate_sample(&inst, 60, skip).unwrap();
        let text = render(&sample, "cafe", 7, 2, 4, skip);

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(file_name(7, 2, 4));
        std::fs::write(&path, &text).unwrap();
        let (back, seed) = parse(&path).unwrap();
        assert_eq!(seed, skip);
        assert_eq!(back, sample);
    }

    #[test]
    fn parse_rejects_missing_seed_and_bad_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let no_seed = dir.path().join("a.csv");
        std::fs::write(&no_seed, "x1,x2,y\n1,2,3\n").unwrap();
        assert!(matches!(parse(&no_seed), Err(CliError::Data(_))));

        let bad_num = dir.path().join("b.csv");
        std::fs::write(&bad_num, "# seed: 5\nx1,x2,y\n1,zwei,3\n").unwrap();
        let err = parse(&bad_num).unwrap_err();
        assert!(err.to_string().contains("b.csv:3"), "{err}");
    }

    #[test]
    fn file_names_sort_in_generation_order() {
        let mut names = vec![
            file_name(10, 1, 2),
            file_name(2, 1, 0),
            file_name(2, 1, 10),
            file_name(2, 2, 0),
        ];
        let generated = names.clone();
        names.sort();
        assert_eq!(
            names,
            vec![
                generated[1].clone(),
                generated[2].clone(),
                generated[3].clone(),
                generated[0].clone()
            ]
        );
    }
}
