//! Closed-form Betti tables for almost complete intersections of powers of
//! the variables and of `l = x1 + ... + xn`, and for the Gorenstein algebras
//! they are linked to.

pub mod table;

pub use table::{BettiEntry, BettiJson, BettiTable};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{froberg_series, gorenstein_linked_hilbert, DegreeSequence, HilbertSeries};

/// Which quotient a formula describes: `R/I` or the linked `R/G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientKind {
    Aci,
    Gorenstein,
}

impl fmt::Display for QuotientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuotientKind::Aci => "aci",
            QuotientKind::Gorenstein => "gorenstein",
        })
    }
}

impl FromStr for QuotientKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "aci" => Ok(QuotientKind::Aci),
            "gorenstein" | "gor" => Ok(QuotientKind::Gorenstein),
            other => Err(Error::OutOfRange(format!("unknown quotient kind `{other}`"))),
        }
    }
}

/// Betti numbers of the Koszul complex on forms of the given degrees:
/// `beta_{i,j}` counts `i`-subsets with degree sum `j`.
pub fn koszul_betti(degrees: &[u32]) -> BettiTable {
    let r = degrees.len();
    let mut t = BettiTable::new(r);
    // dp over (size, degree sum)
    let total: usize = degrees.iter().map(|&d| d as usize).sum();
    let mut counts = vec![vec![0u64; total + 1]; r + 1];
    counts[0][0] = 1;
    for &d in degrees {
        let d = d as usize;
        for i in (0..r).rev() {
            for j in (0..=total - d).rev() {
                let c = counts[i][j];
                if c > 0 {
                    counts[i + 1][j + d] += c;
                }
            }
        }
    }
    for (i, row) in counts.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            t.add(i, j, c);
        }
    }
    t
}

fn require_odd(t: i64) -> Result<()> {
    if t % 2 == 0 {
        Err(Error::Parity { t, expected: "odd" })
    } else {
        Ok(())
    }
}

/// Fill row `s` from the Hilbert numerator, given every other row.
fn solve_row(table: &mut BettiTable, n: usize, s: usize, numerator: &[i64]) -> Result<()> {
    for i in 0..=n {
        let j = i + s;
        let known: i64 = (0..=n)
            .filter(|&k| k != i)
            .map(|k| {
                let b = table.get(k, j) as i64;
                if k % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        let nj = numerator.get(j).copied().unwrap_or(0);
        let val = if i % 2 == 0 { nj - known } else { known - nj };
        if val < 0 {
            return Err(Error::Consistency(format!("solved beta_({i},{j}) = {val} is negative")));
        }
        if i == 0 && s > 0 && val != 0 {
            return Err(Error::Consistency(format!("solved beta_(0,{j}) = {val} is nonzero")));
        }
        table.set(i, j, val as u64);
    }
    if !table.matches_numerator(numerator) {
        return Err(Error::Consistency(
            "table does not reproduce the Hilbert numerator".into(),
        ));
    }
    Ok(())
}

/// Betti table of `R/I`, `I = (x_1^{d_1}, ..., x_n^{d_n}, l^{d_{n+1}})`, when
/// `sum_{i=1}^{n+1} (d_i - 1)` is odd: Koszul rows below the socle degree,
/// the last row forced by the Hilbert series.
pub fn betti_aci_odd(ds: &DegreeSequence) -> Result<BettiTable> {
    ds.require_ell_outside_ci()?;
    require_odd(ds.total_t())?;
    let n = ds.n();
    let all = ds.all_degrees();
    let hs = froberg_series(n, &all)?.series;
    let s = hs.socle_degree().unwrap_or(0);
    let koszul = koszul_betti(&all);
    let mut t = BettiTable::new(n);
    for ((i, j), b) in koszul.entries() {
        if i <= n && j - i < s {
            t.set(i, j, b);
        }
    }
    solve_row(&mut t, n, s, &hs.numerator(n))?;
    Ok(t)
}

/// Betti table of `R/G`, `G = (x_1^{d_1}, ..., x_n^{d_n}) : l^{d_{n+1}}`, when
/// `sum_{i=1}^{n+1} (d_i - 1)` is odd. The socle degree is `2s`; rows below
/// `s` come from the Koszul complex on the variable powers, rows above by
/// Gorenstein duality, row `s` from the Hilbert series.
pub fn betti_gorenstein_odd(ds: &DegreeSequence) -> Result<BettiTable> {
    let e = ds.require_ell_outside_ci()? as i64;
    require_odd(ds.total_t())?;
    let n = ds.n();
    let socle = ds.ci_socle_degree() - e;
    debug_assert!(socle % 2 == 0);
    let s = (socle / 2) as usize;
    let top = 2 * s + n;
    let koszul = koszul_betti(ds.degrees());
    let mut t = BettiTable::new(n);
    for ((i, j), b) in koszul.entries() {
        if j - i < s {
            t.set(i, j, b);
            t.set(n - i, top - j, b);
        }
    }
    let hs = gorenstein_linked_hilbert(ds)?;
    solve_row(&mut t, n, s, &hs.numerator(n))?;
    Ok(t)
}

/// Position of the first square among the variable powers.
pub fn quadric_position(degrees: &[u32]) -> Option<usize> {
    degrees.iter().position(|&d| d == 2)
}

/// The sequence with the first square removed: `(d_1, ..., d_{n-1}; d_{n+1})`
/// in one variable fewer.
pub fn reduced_sequence(ds: &DegreeSequence) -> Result<(usize, DegreeSequence)> {
    let e = ds.require_ell()?;
    let q = quadric_position(ds.degrees()).ok_or_else(|| Error::NoQuadric(ds.degrees().to_vec()))?;
    if ds.n() < 2 {
        return Err(Error::InvalidDegrees("need at least two variables".into()));
    }
    let mut others = ds.degrees().to_vec();
    others.remove(q);
    Ok((q, DegreeSequence::with_ell(others, e)?))
}

/// Betti table of `R/I` or `R/G` when some variable power is a square and
/// the remaining exponents give an odd `t`: the table of the sequence with
/// the square removed, plus a copy shifted by one step and two degrees.
pub fn betti_sum_formula(ds: &DegreeSequence, kind: QuotientKind) -> Result<BettiTable> {
    let (_, bar) = reduced_sequence(ds)?;
    require_odd(bar.total_t())?;
    ds.require_minimal()?;
    let base = match kind {
        QuotientKind::Aci => betti_aci_odd(&bar)?,
        QuotientKind::Gorenstein => betti_gorenstein_odd(&bar)?,
    };
    Ok(base.shifted_sum(2))
}

/// Level iff the last column sits in the single degree `n + s`.
pub fn predict_level(table: &BettiTable, s: usize) -> bool {
    table.last_column_concentrated(s)
}

/// `sum_{j=0}^{floor((d-1)/2)} (d - 1 - 2j)^2`, the coefficient of
/// `x^{d-2} x_n^2` (up to sign) in the lifted product of degree `d`.
pub fn syzygy_coefficient(d: u32) -> i64 {
    let d = d as i64;
    (0..=(d - 1).max(0) / 2).map(|j| (d - 1 - 2 * j).pow(2)).sum()
}

pub fn syzygy_coefficients(degrees: &[u32]) -> Vec<i64> {
    degrees.iter().map(|&d| syzygy_coefficient(d)).collect()
}

/// The Hilbert series the formula tables are solved against.
pub fn formula_hilbert(ds: &DegreeSequence, kind: QuotientKind) -> Result<HilbertSeries> {
    match kind {
        QuotientKind::Aci => Ok(froberg_series(ds.n(), &ds.all_degrees())?.series),
        QuotientKind::Gorenstein => gorenstein_linked_hilbert(ds),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(d: &[u32], e: u32) -> DegreeSequence {
        DegreeSequence::with_ell(d.to_vec(), e).unwrap()
    }

    fn rows(t: &BettiTable) -> Vec<Vec<u64>> {
        (0..=t.top_row().unwrap()).map(|r| t.row(r)).collect()
    }

    #[test]
    fn koszul_examples() {
        let k = koszul_betti(&[2, 2, 2]);
        assert_eq!(k.get(1, 2), 3);
        assert_eq!(k.get(2, 4), 3);
        assert_eq!(k.get(3, 6), 1);
        let k5 = koszul_betti(&[4; 5]);
        for (i, c) in [1, 5, 10, 10, 5, 1].into_iter().enumerate() {
            assert_eq!(k5.get(i, 4 * i), c);
        }
        let k23 = koszul_betti(&[2, 3]);
        assert_eq!(k23.entries().count(), 4);
        assert_eq!(k23.get(2, 5), 1);
    }

    #[test]
    fn aci_quartic_example() {
        let t = betti_aci_odd(&ds(&[4, 4, 4, 4], 4)).unwrap();
        assert_eq!(t.totals(), vec![1, 5, 30, 46, 20]);
        assert_eq!(t.get(1, 4), 5);
        assert_eq!(t.get(2, 8), 10);
        assert_eq!(t.get(2, 9), 20);
        assert_eq!(t.get(3, 10), 46);
        assert_eq!(t.get(4, 11), 20);
        assert_eq!(t.entries().count(), 6);
        assert!(predict_level(&t, 7));
    }

    #[test]
    fn gorenstein_quartic_example() {
        let t = betti_gorenstein_odd(&ds(&[4, 4, 4, 4], 4)).unwrap();
        assert_eq!(t.totals(), vec![1, 24, 46, 24, 1]);
        assert_eq!(t.get(1, 4), 4);
        assert_eq!(t.get(1, 5), 20);
        assert_eq!(t.get(2, 6), 46);
        assert_eq!(t.get(3, 7), 20);
        assert_eq!(t.get(3, 8), 4);
        assert_eq!(t.get(4, 12), 1);
        assert!(t.is_self_dual(12));
    }

    #[test]
    fn sum_formula_examples() {
        let a = betti_sum_formula(&ds(&[4, 4, 4, 4, 2], 4), QuotientKind::Aci).unwrap();
        assert_eq!(a.totals(), vec![1, 6, 35, 76, 66, 20]);
        assert_eq!(
            rows(&a)[7..].to_vec(),
            vec![vec![0, 0, 20, 56, 20, 0], vec![0, 0, 0, 20, 46, 20]]
        );
        assert!(predict_level(&a, 8));
        let g = betti_sum_formula(&ds(&[4, 4, 4, 4, 2], 4), QuotientKind::Gorenstein).unwrap();
        assert_eq!(g.totals(), vec![1, 25, 70, 70, 25, 1]);
        assert_eq!(g.get(2, 6), 50);
        assert_eq!(g.get(5, 14), 1);
        // square position does not matter
        let b = betti_sum_formula(&ds(&[2, 4, 4, 4, 4], 4), QuotientKind::Aci).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            betti_aci_odd(&ds(&[2, 2, 2], 2)),
            Err(Error::Parity { t: 4, .. })
        ));
        assert!(matches!(
            betti_sum_formula(&ds(&[3, 3, 3], 3), QuotientKind::Aci),
            Err(Error::NoQuadric(_))
        ));
        assert!(matches!(
            betti_gorenstein_odd(&ds(&[2, 2], 3)),
            Err(Error::NotMinimal(_))
        ));
    }

    #[test]
    fn small_cases() {
        // (x1^2, x2^2, l^2): HS 1,2 and a level table
        let t = betti_aci_odd(&ds(&[2, 2], 2)).unwrap();
        assert_eq!(t.totals(), vec![1, 3, 2]);
        assert_eq!(t.get(1, 2), 3);
        assert_eq!(t.get(2, 3), 2);
        let g = betti_gorenstein_odd(&ds(&[2, 2, 2], 1)).unwrap();
        assert!(g.is_self_dual(2 + 3));
        assert_eq!(g.totals(), vec![1, 5, 5, 1]);
        // one variable: the complete intersection of the smaller power
        let c = betti_aci_odd(&ds(&[4], 3)).unwrap();
        assert_eq!(c, BettiTable::from_entries(1, [((0, 0), 1), ((1, 3), 1)]));
    }

    #[test]
    fn syzygy_coefficient_values() {
        assert_eq!(syzygy_coefficients(&[1, 2, 3, 4, 5]), vec![0, 1, 4, 10, 20]);
    }
}
