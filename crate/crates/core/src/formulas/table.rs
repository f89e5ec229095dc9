use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded Betti numbers `beta_{i,j}` of a module over a polynomial ring in
/// `n` variables. Zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn new(n: usize) -> Self {
        BettiTable {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I: IntoIterator<Item = ((usize, usize), u64)>>(n: usize, entries: I) -> Self {
        let mut t = BettiTable::new(n);
        for ((i, j), b) in entries {
            t.add(i, j, b);
        }
        t
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, beta: u64) {
        if beta == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), beta);
        }
    }

    pub fn add(&mut self, i: usize, j: usize, beta: u64) {
        if beta > 0 {
            *self.entries.entry((i, j)).or_insert(0) += beta;
        }
    }

    /// Nonzero entries sorted by `(i, j)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological index with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Largest row `j - i` with a nonzero entry; the socle degree for an
    /// Artinian cyclic module.
    pub fn top_row(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j.saturating_sub(i)).max()
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..(i + 1, 0)).map(|(_, &v)| v).sum()
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.length()).map(|i| self.total(i)).collect()
    }

    /// Entry in the displayed grid: column `i`, row `r`.
    pub fn at_row(&self, i: usize, r: usize) -> u64 {
        self.get(i, i + r)
    }

    /// Row `r` of the displayed grid, columns `0..=length`.
    pub fn row(&self, r: usize) -> Vec<u64> {
        (0..=self.length()).map(|i| self.at_row(i, r)).collect()
    }

    /// `sum_i (-1)^i beta_{i,j}` for `j = 0..=max j`.
    pub fn alternating_sums(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut out = vec![0i64; top + 1];
        for (&(i, j), &b) in &self.entries {
            let b = b as i64;
            out[j] += if i % 2 == 0 { b } else { -b };
        }
        out
    }

    /// Compare the alternating sums with a Hilbert numerator
    /// `HS(T) * (1 - T)^n`.
    pub fn matches_numerator(&self, numerator: &[i64]) -> bool {
        let sums = self.alternating_sums();
        let len = sums.len().max(numerator.len());
        (0..len).all(|j| sums.get(j).copied().unwrap_or(0) == numerator.get(j).copied().unwrap_or(0))
    }

    /// `beta_{i,j} + beta_{i-1,j-2}`: the table of a module after one
    /// extra variable acting through a quadric.
    pub fn shifted_sum(&self, shift: usize) -> BettiTable {
        let mut t = BettiTable::new(self.n + 1);
        for (&(i, j), &b) in &self.entries {
            t.add(i, j, b);
            t.add(i + 1, j + shift, b);
        }
        t
    }

    /// `beta_{i,j} = beta_{n-i, top-j}` for every entry.
    pub fn is_self_dual(&self, top: usize) -> bool {
        self.entries
            .iter()
            .all(|(&(i, j), &b)| i <= self.n && j <= top && self.get(self.n - i, top - j) == b)
    }

    /// Last column concentrated in `j = n + s`.
    pub fn last_column_concentrated(&self, s: usize) -> bool {
        self.entries
            .keys()
            .filter(|&&(i, _)| i == self.n)
            .all(|&(_, j)| j == self.n + s)
    }

    /// First `(i, j)` in sorted order where the tables differ, with both values.
    pub fn first_difference(&self, other: &BettiTable) -> Option<((usize, usize), u64, u64)> {
        let keys: std::collections::BTreeSet<(usize, usize)> =
            self.entries.keys().chain(other.entries.keys()).copied().collect();
        keys.into_iter()
            .map(|k| (k, self.get(k.0, k.1), other.get(k.0, k.1)))
            .find(|(_, a, b)| a != b)
    }

    /// Grid layout: columns are homological degrees, row `r` holds
    /// `beta_{i,i+r}`, zeros shown as `.`, with a `total:` line.
    pub fn render_text(&self) -> String {
        let cols = self.length() + 1;
        let rows = self.top_row().map_or(1, |r| r + 1);
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend((0..cols).map(|i| i.to_string()));
        cells.push(header);
        let mut total = vec!["total:".to_string()];
        total.extend(self.totals().iter().map(u64::to_string));
        cells.push(total);
        for r in 0..rows {
            let mut line = vec![format!("{r}:")];
            line.extend((0..cols).map(|i| match self.at_row(i, r) {
                0 => ".".to_string(),
                b => b.to_string(),
            }));
            cells.push(line);
        }
        let label_w = cells.iter().map(|l| l[0].len()).max().unwrap_or(0);
        let cell_w = cells
            .iter()
            .flat_map(|l| l[1..].iter())
            .map(String::len)
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        for line in &cells {
            let mut s = format!("{:>label_w$}", line[0]);
            for c in &line[1..] {
                let _ = write!(s, " {c:>cell_w$}");
            }
            out.push_str(s.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json_value(&self) -> BettiJson {
        BettiJson {
            n: self.n,
            socle_degree: self.top_row(),
            entries: self.entries().map(|((i, j), beta)| BettiEntry { i, j, beta }).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: BettiJson =
            serde_json::from_str(s).map_err(|e| Error::OutOfRange(format!("invalid table JSON: {e}")))?;
        BettiTable::try_from(v)
    }

    /// `i,j,beta` rows sorted by `(i, j)` under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,beta\n");
        for ((i, j), b) in self.entries() {
            let _ = writeln!(out, "{i},{j},{b}");
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_text())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: usize,
    pub beta: u64,
}

/// Serialized form of a [`BettiTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiJson {
    pub n: usize,
    pub socle_degree: Option<usize>,
    pub entries: Vec<BettiEntry>,
}

impl TryFrom<BettiJson> for BettiTable {
    type Error = Error;

    fn try_from(v: BettiJson) -> Result<Self> {
        let mut t = BettiTable::new(v.n);
        for e in &v.entries {
            if e.beta == 0 || t.get(e.i, e.j) != 0 {
                return Err(Error::OutOfRange(format!("bad entry ({}, {})", e.i, e.j)));
            }
            t.set(e.i, e.j, e.beta);
        }
        if t.top_row() != v.socle_degree {
            return Err(Error::OutOfRange("socle_degree disagrees with entries".into()));
        }
        Ok(t)
    }
}
