//! Hilbert series of Artinian quotients: complete intersections, Fröberg
//! truncations, the series of the linked Gorenstein algebra, and the
//! coefficient identities used by the lifting argument.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients `h_0, ..., h_s` of a polynomial Hilbert series. Trailing
/// zeros are trimmed, so `socle_degree` is the top nonzero degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    coeffs: Vec<i64>,
}

impl HilbertSeries {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        HilbertSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `h_j`, zero outside the stored range.
    pub fn get(&self, j: usize) -> i64 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    /// Top degree with nonzero value; `None` for the zero module.
    pub fn socle_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Total dimension, which is the multiplicity for an Artinian module.
    pub fn multiplicity(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len()).all(|j| c[j] == c[c.len() - 1 - j])
    }

    pub fn max_value(&self) -> i64 {
        self.coeffs.iter().copied().max().unwrap_or(0)
    }

    /// Coefficients of `HS(T) * (1 - T)^n`, the numerator the Betti numbers
    /// must reproduce through their alternating sums.
    pub fn numerator(&self, n: usize) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        for _ in 0..n {
            let mut next = vec![0i64; v.len() + 1];
            for (j, &c) in v.iter().enumerate() {
                next[j] += c;
                next[j + 1] -= c;
            }
            v = next;
        }
        v
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `(d_1, ..., d_n; d_{n+1})`: powers of the variables and, optionally, of
/// `l = x1 + ... + xn`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeSequence {
    degrees: Vec<u32>,
    ell_power: Option<u32>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<u32>, ell_power: Option<u32>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidDegrees("need at least one variable".into()));
        }
        if degrees.iter().chain(ell_power.iter()).any(|&d| d == 0) {
            return Err(Error::InvalidDegrees("degrees must be at least 1".into()));
        }
        Ok(DegreeSequence { degrees, ell_power })
    }

    pub fn ci(degrees: Vec<u32>) -> Result<Self> {
        DegreeSequence::new(degrees, None)
    }

    pub fn with_ell(degrees: Vec<u32>, ell_power: u32) -> Result<Self> {
        DegreeSequence::new(degrees, Some(ell_power))
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn ell_power(&self) -> Option<u32> {
        self.ell_power
    }

    pub fn require_ell(&self) -> Result<u32> {
        self.ell_power
            .ok_or_else(|| Error::InvalidDegrees("missing power of l".into()))
    }

    /// All degrees, the power of `l` last.
    pub fn all_degrees(&self) -> Vec<u32> {
        let mut v = self.degrees.clone();
        v.extend(self.ell_power);
        v
    }

    /// `sum (d_i - 1)` over the variable powers.
    pub fn ci_socle_degree(&self) -> i64 {
        self.degrees.iter().map(|&d| d as i64 - 1).sum()
    }

    /// `sum (d_i - 1)` over all `n + 1` degrees.
    pub fn total_t(&self) -> i64 {
        self.all_degrees().iter().map(|&d| d as i64 - 1).sum()
    }

    /// `l^{d_{n+1}}` avoids `(x_1^{d_1}, ..., x_n^{d_n})`; by the strong
    /// Lefschetz property of monomial complete intersections this is
    /// `d_{n+1} <= sum (d_i - 1)`.
    pub fn ell_power_outside_ci(&self) -> bool {
        match self.ell_power {
            Some(e) => (e as i64) <= self.ci_socle_degree(),
            None => true,
        }
    }

    /// No generator of `(x_1^{d_1}, ..., x_n^{d_n}, l^{d_{n+1}})` lies in the
    /// ideal of the others. Any `n` of the forms are a complete intersection
    /// in which the remaining linear form acts as a strong Lefschetz element,
    /// so the condition reads `2 d_k <= 1 + sum_m (d_m - 1)` for every `k`.
    pub fn is_minimally_generated(&self) -> bool {
        let all = self.all_degrees();
        let total: i64 = all.iter().map(|&d| d as i64 - 1).sum();
        all.iter().all(|&d| 2 * d as i64 <= total + 1)
    }

    pub fn require_minimal(&self) -> Result<()> {
        if self.is_minimally_generated() {
            Ok(())
        } else {
            Err(Error::NotMinimal(format!("{self} has a redundant generator")))
        }
    }

    pub fn require_ell_outside_ci(&self) -> Result<u32> {
        let e = self.require_ell()?;
        if !self.ell_power_outside_ci() {
            return Err(Error::NotMinimal(format!(
                "l^{e} lies in (x_i^d_i) since {e} > {}",
                self.ci_socle_degree()
            )));
        }
        Ok(e)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        match self.ell_power {
            Some(e) => write!(f, "({}; {e})", ds.join(",")),
            None => write!(f, "({})", ds.join(",")),
        }
    }
}

/// `prod (1 + T + ... + T^{d_i - 1})`.
pub fn ci_series(degrees: &[u32]) -> Vec<i64> {
    let mut acc = vec![1i64];
    for &d in degrees {
        let d = d as usize;
        let mut next = vec![0i64; acc.len() + d - 1];
        // sliding window sum
        let mut window = 0i64;
        for (j, slot) in next.iter_mut().enumerate() {
            if j < acc.len() {
                window += acc[j];
            }
            if j >= d {
                window -= acc[j - d];
            }
            *slot = window;
        }
        acc = next;
    }
    acc
}

/// Hilbert series of `k[x_1..x_n]/(x_1^{d_1}, ..., x_n^{d_n})`.
pub fn ci_hilbert(ds: &DegreeSequence) -> HilbertSeries {
    HilbertSeries::new(ci_series(ds.degrees()))
}

/// Maximal interval on which the complete-intersection Hilbert function
/// takes its peak value, read off from the degrees alone.
pub fn ci_peak_interval(ds: &DegreeSequence) -> (usize, usize) {
    let mut d: Vec<i64> = ds.degrees().iter().map(|&x| x as i64).collect();
    d.sort_unstable();
    let t: i64 = d.iter().map(|x| x - 1).sum();
    let dn = *d.last().expect("nonempty");
    if 2 * dn <= t + 1 {
        if t % 2 == 0 {
            ((t / 2) as usize, (t / 2) as usize)
        } else {
            (((t - 1) / 2) as usize, ((t + 1) / 2) as usize)
        }
    } else {
        let t_prime = t - (dn - 1);
        (t_prime as usize, (dn - 1) as usize)
    }
}

/// The series `prod (1 - T^{d_i}) / (1 - T)^n` cut at its first
/// non-positive coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobergSeries {
    pub series: HilbertSeries,
    /// Degree and value of the first non-positive coefficient; `None` when
    /// none occurs within the computed range.
    pub first_nonpositive: Option<(usize, i64)>,
}

impl FrobergSeries {
    /// The cut happened at an exact zero.
    pub fn cut_at_zero(&self) -> bool {
        matches!(self.first_nonpositive, Some((_, 0)))
    }
}

/// Truncated Fröberg series. With at least `n` forms the untruncated
/// series is a polynomial and the cut always happens; with fewer forms the
/// expansion runs to `sum d_i + n` and reports no cut.
pub fn froberg_series(n: usize, degrees: &[u32]) -> Result<FrobergSeries> {
    let bound = degrees.iter().map(|&d| d as usize).sum::<usize>() + n + 1;
    froberg_series_bounded(n, degrees, bound)
}

pub fn froberg_series_bounded(n: usize, degrees: &[u32], bound: usize) -> Result<FrobergSeries> {
    if degrees.is_empty() {
        return Err(Error::InvalidDegrees("need at least one form".into()));
    }
    if degrees.contains(&0) {
        return Err(Error::InvalidDegrees("degrees must be at least 1".into()));
    }
    let len = bound + 1;
    let mut num = vec![0i64; len];
    num[0] = 1;
    for &d in degrees {
        let d = d as usize;
        for j in (d..len).rev() {
            num[j] -= num[j - d];
        }
    }
    for _ in 0..n {
        for j in 1..len {
            num[j] += num[j - 1];
        }
    }
    let cut = num.iter().position(|&c| c <= 0);
    let (coeffs, first) = match cut {
        Some(j) => (num[..j].to_vec(), Some((j, num[j]))),
        None => (num, None),
    };
    Ok(FrobergSeries {
        series: HilbertSeries::new(coeffs),
        first_nonpositive: first,
    })
}

/// Hilbert series of `R/G`, `G = (x_1^{d_1}, ..., x_n^{d_n}) : l^{d_{n+1}}`.
/// Socle degree `sum (d_i - 1) - d_{n+1}`; the lower half agrees with the
/// complete intersection and the rest follows by symmetry.
pub fn gorenstein_linked_hilbert(ds: &DegreeSequence) -> Result<HilbertSeries> {
    let e = ds.require_ell_outside_ci()? as i64;
    let socle = (ds.ci_socle_degree() - e) as usize;
    let ci = ci_hilbert(ds);
    let coeffs = (0..=socle).map(|j| ci.get(j.min(socle - j))).collect();
    Ok(HilbertSeries::new(coeffs))
}

/// `[T^{(t-1)/2}] prod_{i=1}^n (1 - T^{d_i}) / (1 - T)^n` for `t = sum (d_i - 1)` odd:
/// the length of `R/(I + (x_n))` in the lifting argument.
pub fn multiplicity_of_truncation(degrees: &[u32]) -> Result<i64> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidDegrees("degrees must be positive".into()));
    }
    let t: i64 = degrees.iter().map(|&d| d as i64 - 1).sum();
    if t % 2 == 0 {
        return Err(Error::Parity { t, expected: "odd" });
    }
    let series = ci_series(degrees);
    Ok(series[((t - 1) / 2) as usize])
}
