use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// `j^k` with the convention `0^0 = 0`, which lets the recurrence also cover
/// the zero-dimensional case.
pub fn pow_zero_convention(j: u64, k: u32) -> BigUint {
    if j == 0 {
        BigUint::zero()
    } else {
        num_traits::pow(BigUint::from(j), k as usize)
    }
}

/// `(n!)^k`.
pub fn factorial_pow(n: u64, k: u32) -> BigUint {
    let fact: BigUint = (1..=n).map(BigUint::from).product();
    num_traits::pow(fact, k as usize)
}

/// Triangle of counts `T(n, m)` for `0 <= m <= n <= n_max`.
///
/// Used both for sequential optimization numbers (where `k` is the
/// dimension) and for the classical unsigned Stirling triangle (`k = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqOptTable {
    k: u32,
    n_max: usize,
    #[serde(with = "crate::report::decimal::rows")]
    rows: Vec<Vec<BigUint>>,
}

impl SeqOptTable {
    pub(crate) fn from_rows(k: u32, rows: Vec<Vec<BigUint>>) -> Self {
        debug_assert!(!rows.is_empty());
        debug_assert!(rows.iter().enumerate().all(|(n, r)| r.len() == n + 1));
        SeqOptTable { k, n_max: rows.len() - 1, rows }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Entry `(n, m)`; zero outside the triangle.
    ///
    /// Panics if `n > n_max`.
    pub fn get(&self, n: usize, m: usize) -> BigUint {
        assert!(n <= self.n_max, "row {n} beyond n_max {}", self.n_max);
        self.rows[n].get(m).cloned().unwrap_or_default()
    }

    /// Row `n`, entries `m = 0..=n`.
    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigUint]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }

    /// Tab-separated triangle, one row per line, each padded with zeros to
    /// `n_max + 1` columns.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = (0..=self.n_max)
                .map(|m| row.get(m).map_or_else(|| "0".to_string(), BigUint::to_string))
                .collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    /// Parses the output of [`SeqOptTable::to_tsv`]. The dimension is not
    /// part of the format and has to be supplied.
    pub fn parse_tsv(k: u32, text: &str) -> Result<Self, ParseError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| (i + 1, l))
            .collect();
        if lines.is_empty() {
            return Err(ParseError::Empty);
        }
        let width = lines.len();
        let mut rows = Vec::with_capacity(width);
        for (n, (line_no, line)) in lines.into_iter().enumerate() {
            let bad = |message: String| ParseError::Line { line: line_no, message };
            let cells = line
                .split('\t')
                .map(|c| {
                    c.trim()
                        .parse::<BigUint>()
                        .map_err(|_| bad(format!("not a nonnegative integer: {c:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if cells.len() != width {
                return Err(bad(format!("expected {width} columns, found {}", cells.len())));
            }
            if cells[n + 1..].iter().any(|c| !c.is_zero()) {
                return Err(bad(format!("nonzero entry beyond column {n}")));
            }
            rows.push(cells[..=n].to_vec());
        }
        Ok(SeqOptTable::from_rows(k, rows))
    }

    /// One `index value` pair per line with `index = n*(n_max+1) + m`,
    /// covering the full padded square.
    pub fn to_bfile(&self) -> String {
        let width = self.n_max + 1;
        let mut out = String::new();
        for n in 0..=self.n_max {
            for m in 0..=self.n_max {
                let _ = writeln!(out, "{} {}", n * width + m, self.get(n, m));
            }
        }
        out
    }

    /// Parses [`SeqOptTable::to_bfile`] output; `#` lines are comments.
    pub fn parse_bfile(k: u32, text: &str) -> Result<Self, ParseError> {
        let mut values = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |message: String| ParseError::Line { line: idx + 1, message };
            let (i, v) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| bad("expected `index value`".into()))?;
            let i: usize = i.parse().map_err(|_| bad(format!("bad index {i:?}")))?;
            if i != values.len() {
                return Err(bad(format!("expected index {}, found {i}", values.len())));
            }
            values.push(v.trim().parse::<BigUint>().map_err(|_| bad(format!("bad value {v:?}")))?);
        }
        let width = (values.len() as f64).sqrt().round() as usize;
        if width == 0 || width * width != values.len() {
            return Err(ParseError::Empty);
        }
        let rows = (0..width)
            .map(|n| values[n * width..=n * width + n].to_vec())
            .collect();
        Ok(SeqOptTable::from_rows(k, rows))
    }
}

/// Builds `O_k(n, m)` for all `n <= n_max` from
/// `O(n+1, m+1) = n^k O(n, m+1) + ((n+1)^k - n^k) O(n, m)`,
/// with `O(0,0) = 1`, `O(n,0) = 0` for `n > 0`, and `O(n,m) = 0` for `m > n`.
pub fn build_table(k: u32, n_max: usize) -> SeqOptTable {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![BigUint::one()]);
    for n in 0..n_max {
        let stay = pow_zero_convention(n as u64, k);
        let step = pow_zero_convention(n as u64 + 1, k) - &stay;
        let prev = &rows[n];
        let mut next = vec![BigUint::zero(); n + 2];
        for m in 0..=n {
            let mut v = &step * &prev[m];
            if let Some(above) = prev.get(m + 1) {
                v += &stay * above;
            }
            next[m + 1] = v;
        }
        rows.push(next);
    }
    SeqOptTable::from_rows(k, rows)
}

/// Unsigned Stirling numbers of the first kind, from the classical
/// `s(n+1, m) = n s(n, m) + s(n, m-1)`.
pub fn stirling_u(n_max: usize) -> SeqOptTable {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let next: Vec<BigUint> = (0..=n + 1)
            .map(|m| {
                let same = prev.get(m).map(|v| v * n).unwrap_or_default();
                let lower = if m > 0 { prev.get(m - 1).cloned().unwrap_or_default() } else { BigUint::zero() };
                same + lower
            })
            .collect();
        rows.push(next);
    }
    SeqOptTable::from_rows(1, rows)
}
