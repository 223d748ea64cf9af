//! Stirling numbers of the first and second kinds.
//!
//! The memoized [`StirlingTable`] built from the triangular recurrence is the
//! canonical source of values. Every other engine in [`second`] and [`first`]
//! exists to cross-check it, and [`oracle`] counts the underlying
//! combinatorial objects directly for small `n`.

use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Integer;
use crate::{Error, Result};

pub mod first;
pub mod oracle;
pub mod second;

/// Which Stirling triangle a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    /// Signed Stirling numbers of the first kind `s(n,k)`.
    First,
    /// Stirling numbers of the second kind `S(n,k)`.
    Second,
}

impl Kind {
    pub fn tag(self) -> &'static str {
        match self {
            Kind::First => "1",
            Kind::Second => "2",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Kind::First),
            "2" => Ok(Kind::Second),
            other => Err(Error::Validation(format!("unknown Stirling kind {other:?} (expected 1 or 2)"))),
        }
    }
}

/// Algorithm used to produce a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineChoice {
    Explicit,
    Triangular,
    DiagonalFull,
    DiagonalSimplified,
    Egf,
    Oracle,
}

impl EngineChoice {
    pub const ALL: [EngineChoice; 6] = [
        EngineChoice::Explicit,
        EngineChoice::Triangular,
        EngineChoice::DiagonalFull,
        EngineChoice::DiagonalSimplified,
        EngineChoice::Egf,
        EngineChoice::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EngineChoice::Explicit => "explicit",
            EngineChoice::Triangular => "triangular",
            EngineChoice::DiagonalFull => "diagonal-full",
            EngineChoice::DiagonalSimplified => "diagonal-simplified",
            EngineChoice::Egf => "egf",
            EngineChoice::Oracle => "oracle",
        }
    }
}

impl fmt::Display for EngineChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Memoized triangle `0 <= k <= n <= max_n` of one kind of Stirling number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    kind: Kind,
    rows: Vec<Vec<Integer>>,
    zero: Integer,
}

impl StirlingTable {
    /// Table holding only row 0.
    pub fn new(kind: Kind) -> Self {
        StirlingTable {
            kind,
            rows: vec![vec![Integer::one()]],
            zero: Integer::zero(),
        }
    }

    pub fn build(kind: Kind, max_n: usize) -> Self {
        let mut t = Self::new(kind);
        t.extend_to(max_n);
        t
    }

    pub fn second(max_n: usize) -> Self {
        Self::build(Kind::Second, max_n)
    }

    pub fn first(max_n: usize) -> Self {
        Self::build(Kind::First, max_n)
    }

    /// Grows the table with the triangular recurrence until it covers `max_n`.
    pub fn extend_to(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let n = self.rows.len();
            let row = next_row(self.kind, n, &self.rows[n - 1]);
            self.rows.push(row);
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Result<&[Integer]> {
        self.rows
            .get(n)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::range("n", n, self.max_n()))
    }

    /// Value at `(n, k)`; zero for `k > n`, range error for `n > max_n`.
    pub fn get(&self, n: usize, k: usize) -> Result<&Integer> {
        let row = self.row(n)?;
        Ok(row.get(k).unwrap_or(&self.zero))
    }

    /// Like [`get`](Self::get) but total in `k`: any `k < 0` yields zero.
    pub fn value(&self, n: usize, k: i64) -> Result<&Integer> {
        if k < 0 {
            self.row(n)?;
            return Ok(&self.zero);
        }
        self.get(n, k as usize)
    }

    /// Overwrites one cell. The table no longer satisfies its recurrence
    /// afterwards; this is meant for fault-injection and dependency tests.
    pub fn with_entry(mut self, n: usize, k: usize, value: Integer) -> Self {
        self.rows[n][k] = value;
        self
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Integer)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, v)| (n, k, v)))
    }

    /// Writes the cache format: one `kind n k value` record per line, decimal.
    pub fn write_cache<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (n, k, v) in self.iter() {
            writeln!(out, "{} {n} {k} {v}", self.kind)?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let io_err = |source| Error::Io {
            path: path.to_path_buf(),
            source,
        };
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(io_err)?;
        }
        let file = fs::File::create(path).map_err(io_err)?;
        let mut out = BufWriter::new(file);
        self.write_cache(&mut out).map_err(io_err)?;
        out.flush().map_err(io_err)
    }

    /// Reads a cache file. Every cell of the triangle must be present exactly
    /// once and the values must satisfy the triangular recurrence.
    pub fn load(path: &Path) -> Result<Self> {
        let file = fs::File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let bad = |line: usize, reason: String| Error::CacheFormat {
            path: path.to_path_buf(),
            line,
            reason,
        };

        let mut kind = None;
        let mut cells: Vec<Vec<Option<Integer>>> = Vec::new();
        for (idx, line) in BufReader::new(file).lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [k_tag, n, k, v] = fields[..] else {
                return Err(bad(lineno, format!("expected 4 fields, got {}", fields.len())));
            };
            let this_kind: Kind = k_tag.parse().map_err(|e: Error| bad(lineno, e.to_string()))?;
            if *kind.get_or_insert(this_kind) != this_kind {
                return Err(bad(lineno, "mixed kinds in one cache file".into()));
            }
            let n: usize = n.parse().map_err(|_| bad(lineno, format!("bad n {n:?}")))?;
            let k: usize = k.parse().map_err(|_| bad(lineno, format!("bad k {k:?}")))?;
            let v: Integer = v.parse().map_err(|_| bad(lineno, format!("bad value {v:?}")))?;
            if k > n {
                return Err(bad(lineno, format!("k = {k} exceeds n = {n}")));
            }
            if cells.len() <= n {
                cells.resize_with(n + 1, Vec::new);
            }
            let row = &mut cells[n];
            if row.len() <= n {
                row.resize(n + 1, None);
            }
            if row[k].replace(v).is_some() {
                return Err(bad(lineno, format!("duplicate record for ({n},{k})")));
            }
        }

        let kind = kind.ok_or_else(|| bad(0, "empty cache file".into()))?;
        let mut rows = Vec::with_capacity(cells.len());
        for (n, row) in cells.into_iter().enumerate() {
            let row: Option<Vec<Integer>> = if row.len() == n + 1 { row.into_iter().collect() } else { None };
            rows.push(row.ok_or_else(|| bad(0, format!("row {n} is incomplete")))?);
        }

        let table = StirlingTable {
            kind,
            rows,
            zero: Integer::zero(),
        };
        if table.rows[0] != [Integer::one()] {
            return Err(bad(0, "row 0 must be exactly [1]".into()));
        }
        for n in 1..table.rows.len() {
            if table.rows[n] != next_row(kind, n, &table.rows[n - 1]) {
                return Err(bad(0, format!("row {n} violates the triangular recurrence")));
            }
        }
        Ok(table)
    }
}

fn next_row(kind: Kind, n: usize, prev: &[Integer]) -> Vec<Integer> {
    let mut row = vec![Integer::zero(); n + 1];
    for k in 1..=n {
        let stay = prev.get(k).cloned().unwrap_or_default();
        row[k] = match kind {
            // S(n,k) = k S(n-1,k) + S(n-1,k-1)
            Kind::Second => stay * k + &prev[k - 1],
            // s(n,k) = s(n-1,k-1) - (n-1) s(n-1,k)
            Kind::First => &prev[k - 1] - stay * (n - 1),
        };
    }
    row
}
