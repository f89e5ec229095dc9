//! The linear-algebra oracle: Hilbert functions, colon ideals, socles,
//! minimal generators, syzygies and graded Betti numbers of homogeneous
//! ideals, computed degree by degree.

pub mod algebra;
pub mod slices;
pub mod tor;

pub use algebra::{GradedAlgebra, RewriteAlgebra};
pub use slices::GradedIdealSlices;
pub use tor::{betti_by_iterated_syzygies, betti_by_koszul_homology};

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{kernel_of_images, Echelon, Field};
use crate::formulas::BettiTable;
use crate::hilbert::{DegreeSequence, HilbertSeries};
use crate::polyring::{MonomialBasis, Polynomial};

use slices::generator_degrees;

/// How [`minimal_betti_oracle`] computes Tor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    /// Homology of the Koszul complex on the variables with coefficients in `R/I`.
    #[default]
    KoszulHomology,
    /// Minimal resolution built from iterated syzygy modules.
    IteratedSyzygies,
}

impl fmt::Display for OracleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMethod::KoszulHomology => "koszul",
            OracleMethod::IteratedSyzygies => "syzygies",
        })
    }
}

impl FromStr for OracleMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "koszul" | "koszul-homology" => Ok(OracleMethod::KoszulHomology),
            "syzygies" | "iterated-syzygies" => Ok(OracleMethod::IteratedSyzygies),
            other => Err(Error::OutOfRange(format!("unknown oracle method `{other}`"))),
        }
    }
}

/// Degree by which an Artinian ideal generated in degrees `<= D` must
/// contain all of `R_j`: it contains a regular sequence of `n` forms of
/// degree `<= D`, so the quotient vanishes past `n (D - 1)`.
pub fn artinian_bound(n: usize, gens: &[Polynomial]) -> usize {
    let d = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(1).max(1);
    n * (d - 1) + 1
}

/// Slices of `(gens)` up to the first degree where the quotient vanishes.
pub fn ideal_slices<F: Field>(field: &F, n: usize, gens: &[Polynomial]) -> Result<GradedIdealSlices<F>> {
    GradedIdealSlices::until_artinian(field, n, gens, artinian_bound(n, gens))
}

/// Hilbert function of `R/(gens)`; errors when the quotient is not Artinian.
pub fn quotient_hilbert<F: Field>(field: &F, n: usize, gens: &[Polynomial]) -> Result<HilbertSeries> {
    let s = ideal_slices(field, n, gens)?;
    Ok(HilbertSeries::new(s.quotient_dims()))
}

/// Hilbert function of `R/(gens)` in degrees `0..=bound`, and whether the
/// quotient was seen to vanish within the bound.
pub fn quotient_hilbert_bounded<F: Field>(
    field: &F,
    n: usize,
    gens: &[Polynomial],
    bound: usize,
) -> Result<(Vec<i64>, bool)> {
    let s = GradedIdealSlices::from_generators(field, n, gens, bound)?;
    Ok((s.quotient_dims(), s.artinian_degree().is_some()))
}

/// A minimal generating set, degree by degree: a basis of `I_j` modulo
/// `R_1 I_{j-1}`.
pub fn minimal_generators<F: Field>(slices: &GradedIdealSlices<F>) -> Vec<(usize, Polynomial)> {
    let mut out = Vec::new();
    for j in 0..=slices.bound() {
        let mut acc = slices.lower_part(j);
        if acc.rank() == slices.dim(j) {
            continue;
        }
        for row in slices.slice(j).rows() {
            if acc.insert(&row).is_some() {
                out.push((
                    j,
                    Polynomial::from_sparse(slices.field(), slices.basis(j), slices.nvars(), &row),
                ));
            }
        }
    }
    out
}

/// Graded Betti numbers of `R/(gens)`.
pub fn minimal_betti_oracle<F: Field>(
    field: &F,
    n: usize,
    gens: &[Polynomial],
    method: OracleMethod,
) -> Result<BettiTable> {
    let slices = ideal_slices(field, n, gens)?;
    betti_of_slices(&slices, method)
}

pub fn betti_of_slices<F: Field>(slices: &GradedIdealSlices<F>, method: OracleMethod) -> Result<BettiTable> {
    match method {
        OracleMethod::KoszulHomology => betti_by_koszul_homology(&GradedAlgebra::from_slices(slices)),
        OracleMethod::IteratedSyzygies => betti_by_iterated_syzygies(slices),
    }
}

/// `J : f` as slices, computed as the kernel of `R_j -> R_{j + deg f} / J`.
/// Slices run up to the first degree where the colon is everything.
pub fn colon_ideal<F: Field>(
    field: &F,
    n: usize,
    j_gens: &[Polynomial],
    f: &Polynomial,
) -> Result<GradedIdealSlices<F>> {
    let e = match f.homogeneous_degree()? {
        Some(e) => e,
        None => {
            // J : 0 = R
            let full = GradedIdealSlices::from_generators(field, n, &[Polynomial::one(n)], 0)?;
            return Ok(full);
        }
    };
    let jslices = ideal_slices(field, n, j_gens)?;
    let d_j = jslices.artinian_degree().expect("Artinian by construction");
    let bound = d_j.saturating_sub(e);
    let mut out = Vec::with_capacity(bound + 1);
    for j in 0..=bound {
        let src = MonomialBasis::new(n, j);
        let tgt = jslices.basis(j + e).clone();
        let mut images = Vec::with_capacity(src.len());
        for m in src.monomials() {
            let prod = f.mul_monomial(m);
            let v = if j + e <= jslices.bound() {
                jslices.slice(j + e).reduce(&prod.to_sparse(field, &tgt)?)
            } else {
                Vec::new()
            };
            images.push(v);
        }
        let kernel = kernel_of_images(field, &images, tgt.len());
        out.push(Echelon::from_rows(field.clone(), src.len(), kernel));
    }
    Ok(GradedIdealSlices::from_echelons(field, n, out))
}

/// Socle dimension of `A` in each degree.
pub fn socle_dims<F: Field>(a: &GradedAlgebra<F>) -> Vec<usize> {
    (0..=a.top()).map(|j| a.socle_in_degree(j).len()).collect()
}

/// Socle dimensions of `R/(gens)`.
pub fn socle_dims_of<F: Field>(field: &F, n: usize, gens: &[Polynomial]) -> Result<Vec<usize>> {
    let slices = ideal_slices(field, n, gens)?;
    Ok(socle_dims(&GradedAlgebra::from_slices(&slices)))
}

/// Socle concentrated in a single degree.
pub fn is_level(socle: &[usize]) -> bool {
    socle.iter().filter(|&&d| d > 0).count() == 1
}

/// `(a_1, ..., a_r)` with `sum a_i g_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVector {
    pub components: Vec<Polynomial>,
}

impl RelationVector {
    /// `sum a_i g_i`.
    pub fn evaluate(&self, gens: &[Polynomial]) -> Result<Polynomial> {
        if gens.len() != self.components.len() {
            return Err(Error::InvalidRelation(format!(
                "{} components for {} generators",
                self.components.len(),
                gens.len()
            )));
        }
        let n = gens.first().map_or(0, Polynomial::nvars);
        let mut acc = Polynomial::zero(n);
        for (a, g) in self.components.iter().zip(gens) {
            acc = acc.try_add(&a.try_mul(g)?)?;
        }
        Ok(acc)
    }

    /// The relation holds exactly in the given field.
    pub fn holds_in<F: Field>(&self, field: &F, gens: &[Polynomial]) -> Result<bool> {
        Ok(self.evaluate(gens)?.is_zero_in(field)?)
    }
}

/// Basis of the degree-`j` first syzygies of `gens`: the kernel of
/// `(a_i) -> sum a_i g_i` on `sum_i R_{j - deg g_i}`.
pub fn syzygies_in_degree<F: Field>(field: &F, n: usize, gens: &[Polynomial], j: usize) -> Result<Vec<RelationVector>> {
    let degrees = generator_degrees(n, gens)?;
    let target = MonomialBasis::new(n, j);
    let mut layout = Vec::new();
    let mut images = Vec::new();
    for (t, (g, d)) in gens.iter().zip(&degrees).enumerate() {
        let Some(d) = *d else { continue };
        if d > j {
            continue;
        }
        for m in MonomialBasis::new(n, j - d).monomials() {
            layout.push((t, m.clone()));
            images.push(g.mul_monomial(m).to_sparse(field, &target)?);
        }
    }
    let kernel = kernel_of_images(field, &images, target.len());
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut comps = vec![Polynomial::zero(n); gens.len()];
            for (c, e) in v {
                let (t, m) = &layout[c];
                comps[*t].add_term(m.clone(), field.to_rational(&e));
            }
            RelationVector { components: comps }
        })
        .collect())
}

/// `f` lies in `(gens)`, decided in degree `deg f`.
pub fn membership<F: Field>(field: &F, n: usize, f: &Polynomial, gens: &[Polynomial]) -> Result<bool> {
    let Some(d) = f.homogeneous_degree()? else {
        return Ok(true);
    };
    if f.is_zero_in(field)? {
        return Ok(true);
    }
    let slices = GradedIdealSlices::from_generators(field, n, gens, d)?;
    slices.contains(f)
}

/// `x_1^{d_1}, ..., x_n^{d_n}` and, when present, `l^{d_{n+1}}`.
pub fn sequence_generators(ds: &DegreeSequence) -> Vec<Polynomial> {
    let n = ds.n();
    let mut gens: Vec<Polynomial> = ds
        .degrees()
        .iter()
        .enumerate()
        .map(|(i, &d)| Polynomial::var_power(n, i, d))
        .collect();
    if let Some(e) = ds.ell_power() {
        gens.push(Polynomial::ell(n).pow(e));
    }
    gens
}

fn ones<F: Field>(field: &F, n: usize) -> Vec<F::Elem> {
    vec![field.one(); n]
}

/// `k[x]/(x_1^{d_1}, ..., x_n^{d_n})`.
pub fn ci_algebra<F: Field>(field: &F, degrees: &[u32]) -> GradedAlgebra<F> {
    let r = RewriteAlgebra::monomial_ci(degrees);
    let top = r.socle_degree().unwrap_or(0);
    r.build(field, top)
}

/// `l^e B_{j-e}` in every degree of `B`.
pub fn linear_power_image<F: Field>(b: &GradedAlgebra<F>, e: usize) -> Vec<Echelon<F>> {
    let coeffs = ones(b.field(), b.nvars());
    (0..=b.top())
        .map(|j| {
            let mut ech = Echelon::new(b.field().clone(), b.dim(j));
            if j >= e {
                for v in b.linear_power_images(j - e, &coeffs, e) {
                    ech.insert(&v);
                    if ech.is_full() {
                        break;
                    }
                }
            }
            ech
        })
        .collect()
}

/// `0 : l^e` in every degree of `B`.
pub fn linear_power_kernel<F: Field>(b: &GradedAlgebra<F>, e: usize) -> Vec<Echelon<F>> {
    let coeffs = ones(b.field(), b.nvars());
    (0..=b.top())
        .map(|j| {
            let images = b.linear_power_images(j, &coeffs, e);
            let kernel = kernel_of_images(b.field(), &images, b.dim(j + e));
            Echelon::from_rows(b.field().clone(), b.dim(j), kernel)
        })
        .collect()
}

/// `R/I` for `I = (x_1^{d_1}, ..., x_n^{d_n}, l^{d_{n+1}})`, as a quotient
/// of the monomial complete intersection.
pub fn aci_algebra<F: Field>(field: &F, ds: &DegreeSequence) -> Result<GradedAlgebra<F>> {
    let e = ds.require_ell()? as usize;
    let b = ci_algebra(field, ds.degrees());
    let w = linear_power_image(&b, e);
    Ok(b.quotient(w))
}

/// `R/G` for `G = (x_1^{d_1}, ..., x_n^{d_n}) : l^{d_{n+1}}`.
pub fn linked_algebra<F: Field>(field: &F, ds: &DegreeSequence) -> Result<GradedAlgebra<F>> {
    let e = ds.require_ell()? as usize;
    let b = ci_algebra(field, ds.degrees());
    let w = linear_power_kernel(&b, e);
    let a = b.quotient(w);
    if a.dim(0) == 0 {
        return Err(Error::UnitColon);
    }
    Ok(a)
}

/// Hilbert function of a graded algebra as a series.
pub fn algebra_hilbert<F: Field>(a: &GradedAlgebra<F>) -> HilbertSeries {
    HilbertSeries::new(a.dims().iter().map(|&d| d as i64).collect())
}

/// Number of minimal generators of the ideal, from `beta_1`.
pub fn generator_count(table: &BettiTable) -> u64 {
    table.total(1)
}

/// All coefficients of `p` are integers (after clearing nothing).
pub fn is_integral(p: &Polynomial) -> bool {
    p.terms().all(|(_, c)| c.is_integer() || c.is_zero())
}

#[cfg(test)]
mod tests;
