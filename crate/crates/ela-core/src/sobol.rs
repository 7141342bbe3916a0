//! Sobol' low-discrepancy sample designs.
//!
//! Direction numbers come from the published Joe–Kuo "new-joe-kuo-6" table
//! (D(6) search criterion, <https://web.maths.unsw.edu.au/~fkuo/sobol/>); the
//! first 39 primitive-polynomial rows are vendored in `data/` and parsed at
//! first use, which covers dimensions up to 40. An alternative table file in
//! the same `d s a m_1 .. m_s` format can be supplied at runtime.
//!
//! Points are produced in Gray-code order with random access by index: point
//! `k` XORs the direction integers selected by the bits of `k ^ (k >> 1)`.
//! Index 0 is the all-zeros point and is never emitted; a design with skip
//! offset `seed` consists of the points at indices `seed+1 ..= seed+n`. Every
//! emitted coordinate is strictly inside `(0, 1)`.

use std::path::Path;
use std::sync::OnceLock;

use crate::error::{CoreError, Result};
use crate::util::Matrix;

const EMBEDDED_TABLE: &str = include_str!("../data/new-joe-kuo-6.d40.txt");
const INDEX_BITS: u32 = 32;

/// One primitive-polynomial row: degree `s`, interior coefficient bits `a`,
/// and the initial direction values `m_1 .. m_s`.
#[derive(Clone, Debug)]
struct PolyRow {
    s: u32,
    a: u32,
    m: Vec<u32>,
}

/// Parsed direction-number table. Row `k` of the file describes dimension
/// `k + 1` of the sequence; dimension 1 is the built-in van der Corput
/// radical inverse and needs no table entry.
#[derive(Clone, Debug)]
pub struct SobolTable {
    rows: Vec<PolyRow>,
}

impl SobolTable {
    /// The vendored Joe–Kuo table (dimensions up to 40).
    pub fn embedded() -> &'static SobolTable {
        static TABLE: OnceLock<SobolTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            SobolTable::parse(EMBEDDED_TABLE).expect("embedded direction-number table is valid")
        })
    }

    /// Parses a table in the published text format. The header line and blank
    /// lines are skipped; each data line reads `d s a m_1 .. m_s`.
    pub fn parse(text: &str) -> Result<SobolTable> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line_1 = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('d') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() < 4 {
                return Err(CoreError::parse(
                    line_1,
                    Some(fields.len()),
                    format!("expected at least 4 fields (d s a m_1..), got {}", fields.len()),
                ));
            }
            let parse_u32 = |idx: usize| -> Result<u32> {
                fields[idx].parse::<u32>().map_err(|_| {
                    CoreError::parse(
                        line_1,
                        Some(idx + 1),
                        format!("expected unsigned integer, got {:?}", fields[idx]),
                    )
                })
            };
            let d = parse_u32(0)?;
            let s = parse_u32(1)?;
            let a = parse_u32(2)?;
            if fields.len() != 3 + s as usize {
                return Err(CoreError::parse(
                    line_1,
                    Some(fields.len()),
                    format!("row for dimension {d} declares degree {s} but carries {} m-values", fields.len() - 3),
                ));
            }
            let expected_dim = rows.len() as u32 + 2;
            if d != expected_dim {
                return Err(CoreError::parse(
                    line_1,
                    Some(1),
                    format!("rows must be consecutive: expected dimension {expected_dim}, got {d}"),
                ));
            }
            let mut m = Vec::with_capacity(s as usize);
            for k in 0..s as usize {
                let v = parse_u32(3 + k)?;
                if v % 2 == 0 || v >= (1 << (k + 1)) {
                    return Err(CoreError::parse(
                        line_1,
                        Some(4 + k),
                        format!("m_{} = {v} must be odd and below 2^{}", k + 1, k + 1),
                    ));
                }
                m.push(v);
            }
            rows.push(PolyRow { s, a, m });
        }
        if rows.is_empty() {
            return Err(CoreError::parse(1, None, "table contains no data rows"));
        }
        Ok(SobolTable { rows })
    }

    /// Reads and parses a table file.
    pub fn from_file(path: &Path) -> Result<SobolTable> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CoreError::io(path.display().to_string(), e))?;
        SobolTable::parse(&text)
    }

    /// Largest sequence dimension this table supports.
    pub fn max_dimension(&self) -> usize {
        self.rows.len() + 1
    }

    /// Direction integers `v_1 .. v_32` for one sequence dimension (1-based),
    /// scaled so that `v_j` occupies the top bits of a `u32`.
    fn direction_integers(&self, dim: usize) -> [u32; INDEX_BITS as usize] {
        let mut v = [0u32; INDEX_BITS as usize];
        if dim == 1 {
            for (j, slot) in v.iter_mut().enumerate() {
                *slot = 1u32 << (INDEX_BITS - 1 - j as u32);
            }
            return v;
        }
        let row = &self.rows[dim - 2];
        let s = row.s as usize;
        for j in 0..INDEX_BITS as usize {
            if j < s {
                v[j] = row.m[j] << (INDEX_BITS - 1 - j as u32);
            } else {
                let mut t = v[j - s] ^ (v[j - s] >> row.s);
                for k in 1..s {
                    if (row.a >> (s - 1 - k)) & 1 == 1 {
                        t ^= v[j - k];
                    }
                }
                v[j] = t;
            }
        }
        v
    }
}

/// Generates `n` Sobol' points in `(0, 1)^d` at sequence indices
/// `seed+1 ..= seed+n`, skipping the all-zeros point at index 0.
pub fn sobol_points(d: usize, n: usize, seed: u64, table: &SobolTable) -> Result<Matrix> {
    if d == 0 || d > table.max_dimension() {
        return Err(CoreError::invalid(format!(
            "dimension {d} outside supported range 1..={}",
            table.max_dimension()
        )));
    }
    let last = seed
        .checked_add(n as u64)
        .filter(|&l| l < (1u64 << INDEX_BITS))
        .ok_or_else(|| {
            CoreError::invalid(format!(
                "seed {seed} + n {n} exceeds the 2^{INDEX_BITS} index range"
            ))
        })?;
    let _ = last;

    let directions: Vec<[u32; INDEX_BITS as usize]> =
        (1..=d).map(|dim| table.direction_integers(dim)).collect();

    let mut out = Matrix::zeros(n, d);
    let scale = (1u64 << INDEX_BITS) as f64;
    for i in 0..n {
        let index = seed + 1 + i as u64;
        let gray = index ^ (index >> 1);
        let row = out.row_mut(i);
        for (dim, dirs) in directions.iter().enumerate() {
            let mut acc = 0u32;
            let mut bits = gray;
            let mut j = 0;
            while bits != 0 {
                if bits & 1 == 1 {
                    acc ^= dirs[j];
                }
                bits >>= 1;
                j += 1;
            }
            row[dim] = acc as f64 / scale;
        }
    }
    Ok(out)
}

/// Affinely rescales unit-cube points into `[lo, hi]^d`: `u -> lo + (hi-lo)u`.
pub fn scale_to_domain(points: &Matrix, lo: f64, hi: f64) -> Result<Matrix> {
    if !(lo < hi) {
        return Err(CoreError::invalid(format!(
            "domain bounds must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }
    let mut out = points.clone();
    let span = hi - lo;
    for i in 0..out.rows() {
        for v in out.row_mut(i) {
            *v = lo + span * *v;
        }
    }
    Ok(out)
}
