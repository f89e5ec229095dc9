//! Inverse systems: annihilators of dual forms through catalecticant
//! kernels, dual generators of colon ideals, and Lefschetz rank checks.
//!
//! The dual ring `S = k[X_1..X_n]` shares the [`Polynomial`] type with `R`;
//! `x_i` acts on `S` as `d/dX_i`, so every computation here needs the
//! characteristic to exceed the degrees involved.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{kernel_of_images, rank_of_images, Echelon, Field, FieldSpec};
use crate::polyring::{elementary_symmetric, power_of_linear, Monomial, MonomialBasis, Polynomial};
use crate::resolver::{ideal_slices, GradedAlgebra, GradedIdealSlices};

/// A nonzero homogeneous form of the dual ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualForm {
    form: Polynomial,
    degree: usize,
}

impl DualForm {
    pub fn new(form: Polynomial) -> Result<Self> {
        match form.homogeneous_degree()? {
            Some(degree) => Ok(DualForm { form, degree }),
            None => Err(Error::ZeroForm),
        }
    }

    /// `X_1^{d_1 - 1} ... X_n^{d_n - 1}`, the dual generator of `(x_i^{d_i})`.
    pub fn monomial_ci(degrees: &[u32]) -> Result<Self> {
        if degrees.contains(&0) {
            return Err(Error::InvalidDegrees("degrees must be positive".into()));
        }
        let m = Monomial::new(degrees.iter().map(|d| d - 1).collect());
        DualForm::new(Polynomial::monomial(m))
    }

    pub fn form(&self) -> &Polynomial {
        &self.form
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.form.nvars()
    }
}

impl fmt::Display for DualForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.form.render("X"))
    }
}

fn guard<F: Field>(field: &F, degree: usize) -> Result<()> {
    field.spec().check_characteristic(degree)?;
    Ok(())
}

/// `Ann(F)` degree by degree: the kernel of `R_j -> S_{e-j}`, `g -> g o F`,
/// for `j <= e`, and all of `R_{e+1}`.
pub fn annihilator<F: Field>(field: &F, dual: &DualForm) -> Result<GradedIdealSlices<F>> {
    let e = dual.degree();
    let n = dual.nvars();
    guard(field, e)?;
    let terms: Vec<(&Monomial, &BigRational)> = dual.form().terms().collect();
    let slices: Vec<Echelon<F>> = (0..=e + 1)
        .into_par_iter()
        .map(|j| -> Result<Echelon<F>> {
            let src = MonomialBasis::new(n, j);
            if j > e {
                let all = (0..src.len()).map(|c| vec![(c, field.one())]);
                return Ok(Echelon::from_rows(field.clone(), src.len(), all));
            }
            let tgt = MonomialBasis::new(n, e - j);
            let mut images = Vec::with_capacity(src.len());
            for m in src.monomials() {
                let mut img = Vec::new();
                for (b, c) in &terms {
                    if let Some(rest) = m.quotient_of(b) {
                        let mut factor = BigInt::one();
                        for i in 0..n {
                            for k in 0..m.exp(i) {
                                factor *= BigInt::from(b.exp(i) - k);
                            }
                        }
                        let v = field.from_rational(&(*c * BigRational::from_integer(factor)))?;
                        let idx = tgt.index_of(&rest).expect("degree matches");
                        img.push((idx, v));
                    }
                }
                img.sort_unstable_by_key(|(c, _)| *c);
                images.push(img);
            }
            let kernel = kernel_of_images(field, &images, tgt.len());
            Ok(Echelon::from_rows(field.clone(), src.len(), kernel))
        })
        .collect::<Result<_>>()?;
    Ok(GradedIdealSlices::from_echelons(field, n, slices))
}

/// `f o G`, the dual generator of `J : f` when `G` is the dual generator of `J`.
pub fn dual_generator_of_colon<F: Field>(field: &F, dual: &DualForm, f: &Polynomial) -> Result<DualForm> {
    guard(field, dual.degree())?;
    let c = f.contract(dual.form())?;
    if c.is_zero_in(field)? {
        return Err(Error::UnitColon);
    }
    DualForm::new(c.canonical_in(field)?)
}

/// `l^d o (X_1 ... X_n)` checked against `d! e_{n-d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EsymDual {
    pub form: DualForm,
    pub scalar: BigInt,
}

/// Contract `l^d` into the squarefree monomial of full support and confirm
/// the result is `d!` times the elementary symmetric form of degree `n - d`.
pub fn elementary_symmetric_dual(n: usize, d: usize) -> Result<EsymDual> {
    if n == 0 || d >= n {
        return Err(Error::OutOfRange(format!("need d < n, got d = {d}, n = {n}")));
    }
    let top = Polynomial::monomial(Monomial::new(vec![1; n]));
    let ones = vec![BigRational::one(); n];
    let c = power_of_linear(&ones, d as u32).contract(&top)?;
    let scalar: BigInt = (1..=d).map(BigInt::from).product();
    let e = elementary_symmetric(n, n - d);
    if c != e.scale(&BigRational::from_integer(scalar.clone())) {
        return Err(Error::Consistency(format!(
            "l^{d} o X1..X{n} is not {scalar} e_{}",
            n - d
        )));
    }
    Ok(EsymDual {
        form: DualForm::new(e)?,
        scalar,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LefschetzMode {
    Weak,
    Strong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LefschetzVerdict {
    /// Every power has maximal rank in every degree.
    Slp,
    /// Only the first power was tested, and it has maximal rank.
    Wlp,
    /// The first power has maximal rank but a higher one does not.
    WlpOnly,
    Neither,
}

impl fmt::Display for LefschetzVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LefschetzVerdict::Slp => "SLP",
            LefschetzVerdict::Wlp => "WLP",
            LefschetzVerdict::WlpOnly => "WLP-only",
            LefschetzVerdict::Neither => "neither",
        })
    }
}

/// Rank of `(l*)^power : A_degree -> A_{degree + power}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRecord {
    pub degree: usize,
    pub power: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl RankRecord {
    pub fn is_maximal(&self) -> bool {
        self.rank == self.source_dim.min(self.target_dim)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub algebra: String,
    /// Coefficients of the tested linear form.
    pub form: Vec<String>,
    pub field: FieldSpec,
    pub mode: LefschetzMode,
    pub records: Vec<RankRecord>,
    pub verdict: LefschetzVerdict,
}

impl LefschetzReport {
    fn verdict_from(mode: LefschetzMode, records: &[RankRecord]) -> LefschetzVerdict {
        let weak = records.iter().filter(|r| r.power == 1).all(RankRecord::is_maximal);
        let strong = records.iter().all(RankRecord::is_maximal);
        match (mode, weak, strong) {
            (_, false, _) => LefschetzVerdict::Neither,
            (LefschetzMode::Weak, true, _) => LefschetzVerdict::Wlp,
            (LefschetzMode::Strong, true, true) => LefschetzVerdict::Slp,
            (LefschetzMode::Strong, true, false) => LefschetzVerdict::WlpOnly,
        }
    }

    /// The verdict agrees with the recorded ranks.
    pub fn is_consistent(&self) -> bool {
        self.verdict == Self::verdict_from(self.mode, &self.records)
    }

    pub fn has_slp(&self) -> bool {
        self.verdict == LefschetzVerdict::Slp
    }

    pub fn has_wlp(&self) -> bool {
        self.verdict != LefschetzVerdict::Neither
    }

    /// First record without maximal rank.
    pub fn first_failure(&self) -> Option<&RankRecord> {
        self.records.iter().find(|r| !r.is_maximal())
    }
}

/// Maximal-rank check of powers of `l* = sum c_k x_k` on an Artinian algebra;
/// `coeffs = None` means `x_1 + ... + x_n`.
pub fn lefschetz_check<F: Field>(
    algebra: &GradedAlgebra<F>,
    coeffs: Option<&[BigRational]>,
    mode: LefschetzMode,
    descriptor: &str,
) -> Result<LefschetzReport> {
    if !algebra.is_artinian() {
        return Err(Error::NonArtinian { bound: algebra.top() });
    }
    let field = algebra.field();
    let n = algebra.nvars();
    let top = (0..=algebra.top()).rev().find(|&j| algebra.dim(j) > 0).unwrap_or(0);
    guard(field, top)?;
    let rational: Vec<BigRational> = match coeffs {
        Some(c) if c.len() != n => {
            return Err(Error::OutOfRange(format!("{} coefficients for {n} variables", c.len())))
        }
        Some(c) => c.to_vec(),
        None => vec![BigRational::one(); n],
    };
    let elems = rational
        .iter()
        .map(|c| field.from_rational(c))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let pairs: Vec<(usize, usize)> = (0..top)
        .flat_map(|i| {
            let max_power = match mode {
                LefschetzMode::Weak => 1,
                LefschetzMode::Strong => top - i,
            };
            (1..=max_power).map(move |j| (i, j))
        })
        .collect();
    let records: Vec<RankRecord> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let images = algebra.linear_power_images(i, &elems, j);
            RankRecord {
                degree: i,
                power: j,
                source_dim: algebra.dim(i),
                target_dim: algebra.dim(i + j),
                rank: rank_of_images(field, &images, algebra.dim(i + j)),
            }
        })
        .collect();
    let verdict = LefschetzReport::verdict_from(mode, &records);
    Ok(LefschetzReport {
        algebra: descriptor.to_string(),
        form: rational.iter().map(|c| c.to_string()).collect(),
        field: field.spec(),
        mode,
        records,
        verdict,
    })
}

/// [`lefschetz_check`] on `R/(gens)`.
pub fn lefschetz_check_ideal<F: Field>(
    field: &F,
    n: usize,
    gens: &[Polynomial],
    coeffs: Option<&[BigRational]>,
    mode: LefschetzMode,
) -> Result<LefschetzReport> {
    let slices = ideal_slices(field, n, gens)?;
    let a = GradedAlgebra::from_slices(&slices);
    let name: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    lefschetz_check(&a, coeffs, mode, &format!("R/({})", name.join(", ")))
}

/// Multiplication by each form has maximal rank on the quotient by the
/// preceding ones, in every degree up to `bound`.
pub fn semiregularity_check_bounded<F: Field>(field: &F, n: usize, gens: &[Polynomial], bound: usize) -> Result<bool> {
    for k in 0..gens.len() {
        let g = &gens[k];
        let Some(d) = g.homogeneous_degree()? else {
            return Ok(false);
        };
        let slices = GradedIdealSlices::from_generators(field, n, &gens[..k], bound)?;
        let a = GradedAlgebra::from_slices(&slices);
        for j in 0..=bound.saturating_sub(d) {
            let images = a.poly_images(j, g)?;
            let rank = rank_of_images(field, &images, a.dim(j + d));
            if rank != a.dim(j).min(a.dim(j + d)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`semiregularity_check_bounded`] up to one past the degree where the
/// full quotient is known to vanish.
pub fn semiregularity_check<F: Field>(field: &F, n: usize, gens: &[Polynomial]) -> Result<bool> {
    let max_deg = gens.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let bound = crate::resolver::artinian_bound(n, gens) + max_deg;
    semiregularity_check_bounded(field, n, gens, bound)
}

/// Catalecticant rank `dim R_j - dim Ann(F)_j`.
pub fn catalecticant_rank<F: Field>(slices: &GradedIdealSlices<F>, j: usize) -> usize {
    if j > slices.bound() {
        return 0;
    }
    slices.codim(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, PrimeField, RationalField, DEFAULT_PRIME};
    use crate::hilbert::DegreeSequence;
    use crate::polyring::parse_polynomial_list;
    use crate::resolver::{colon_ideal, linked_algebra, sequence_generators, socle_dims};

    fn fp() -> PrimeField {
        PrimeField::new(DEFAULT_PRIME).unwrap()
    }

    fn dual(s: &str, n: usize) -> DualForm {
        DualForm::new(parse_polynomial_list(s, n).unwrap().remove(0)).unwrap()
    }

    #[test]
    fn power_of_variable() {
        let a = annihilator(&fp(), &dual("x1^5", 1)).unwrap();
        assert_eq!(a.quotient_dims(), vec![1, 1, 1, 1, 1, 1, 0]);
        assert!(DualForm::new(Polynomial::zero(2)).is_err());
    }

    #[test]
    fn esym_two_in_three() {
        let a = annihilator(&RationalField, &dual("x1*x2 + x1*x3 + x2*x3", 3)).unwrap();
        assert_eq!(a.dim(2), 5);
        for p in parse_polynomial_list("x1^2, x2^2, x3^2, (x1-x2)*x3, (x1-x3)*x2", 3).unwrap() {
            assert!(a.contains(&p).unwrap());
        }
        assert!(!a.contains(&parse_polynomial_list("x1*x2", 3).unwrap()[0]).unwrap());
    }

    #[test]
    fn squarefree_top_is_squares() {
        let n = 4;
        let a = annihilator(&fp(), &DualForm::monomial_ci(&[2; 4]).unwrap()).unwrap();
        let ci = ideal_slices(&fp(), n, &sequence_generators(&DegreeSequence::ci(vec![2; 4]).unwrap())).unwrap();
        assert!(a.same_slices(&ci));
        let soc = socle_dims(&GradedAlgebra::from_slices(&a));
        assert_eq!(soc, vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn colon_dual_generator() {
        let g = DualForm::monomial_ci(&[2, 2, 2]).unwrap();
        assert_eq!(
            dual_generator_of_colon(&RationalField, &g, &Polynomial::one(3)).unwrap(),
            g
        );
        let c = dual_generator_of_colon(&RationalField, &g, &Polynomial::ell(3)).unwrap();
        assert_eq!(c.form(), &elementary_symmetric(3, 2));
        let top = dual_generator_of_colon(&RationalField, &g, &Polynomial::ell(3).pow(3)).unwrap();
        assert_eq!(top.degree(), 0);
        assert!(matches!(
            dual_generator_of_colon(&RationalField, &g, &Polynomial::ell(3).pow(4)),
            Err(Error::UnitColon)
        ));
    }

    #[test]
    fn annihilator_of_contraction_is_colon() {
        let degrees = [3u32, 3, 4];
        let j = sequence_generators(&DegreeSequence::ci(degrees.to_vec()).unwrap());
        let g = DualForm::monomial_ci(&degrees).unwrap();
        for e in 1..4 {
            let f = Polynomial::ell(3).pow(e);
            let c = dual_generator_of_colon(&fp(), &g, &f).unwrap();
            let ann = annihilator(&fp(), &c).unwrap();
            let colon = colon_ideal(&fp(), 3, &j, &f).unwrap();
            assert!(ann.same_slices(&colon), "e = {e}");
            assert_eq!(ann.quotient_dims()[..=c.degree()], colon.quotient_dims()[..=c.degree()]);
        }
    }

    #[test]
    fn esym_identity() {
        let r = elementary_symmetric_dual(3, 1).unwrap();
        assert_eq!(r.scalar, BigInt::from(1));
        assert_eq!(r.form.form(), &elementary_symmetric(3, 2));
        let r = elementary_symmetric_dual(2, 0).unwrap();
        assert_eq!(r.form.to_string(), "X1*X2");
        let r = elementary_symmetric_dual(4, 2).unwrap();
        assert_eq!(r.scalar, BigInt::from(2));
        assert_eq!(r.form.form().num_terms(), 6);
        assert!(elementary_symmetric_dual(3, 3).is_err());
    }

    #[test]
    fn lefschetz_small_cases() {
        let gens = parse_polynomial_list("x1^2, x2^2", 2).unwrap();
        let r = lefschetz_check_ideal(&fp(), 2, &gens, None, LefschetzMode::Strong).unwrap();
        assert!(r.has_slp());
        assert!(r.is_consistent());
        assert_eq!(
            r.records.iter().find(|x| x.degree == 0 && x.power == 2).unwrap().rank,
            1
        );
        // x1 alone is not a Lefschetz element here
        let r = lefschetz_check_ideal(&fp(), 2, &gens, Some(&[rat(1), rat(0)]), LefschetzMode::Strong).unwrap();
        assert!(!r.has_slp());
        assert!(r.first_failure().is_some());
        // char 2 kills the square of l
        let f2 = PrimeField::new(2).unwrap();
        assert!(lefschetz_check_ideal(&f2, 2, &gens, None, LefschetzMode::Strong).is_err());
        let a = linked_algebra(&fp(), &DegreeSequence::with_ell(vec![3, 3, 4], 2).unwrap()).unwrap();
        let r = lefschetz_check(&a, None, LefschetzMode::Strong, "R/G").unwrap();
        assert_eq!(r.verdict, LefschetzVerdict::Slp);
        let r = lefschetz_check(&a, None, LefschetzMode::Weak, "R/G").unwrap();
        assert_eq!(r.verdict, LefschetzVerdict::Wlp);
        assert!(r.records.iter().all(|x| x.power == 1));
    }

    #[test]
    fn wlp_without_slp() {
        let records = vec![
            RankRecord {
                degree: 0,
                power: 1,
                source_dim: 1,
                target_dim: 2,
                rank: 1,
            },
            RankRecord {
                degree: 0,
                power: 2,
                source_dim: 1,
                target_dim: 1,
                rank: 0,
            },
        ];
        assert_eq!(
            LefschetzReport::verdict_from(LefschetzMode::Strong, &records),
            LefschetzVerdict::WlpOnly
        );
        assert_eq!(LefschetzVerdict::WlpOnly.to_string(), "WLP-only");
    }

    #[test]
    fn semiregular_sequences() {
        let n = 3;
        let ci = parse_polynomial_list("x1^2, x2^3, x3^2", n).unwrap();
        assert!(semiregularity_check(&fp(), n, &ci).unwrap());
        let aci = parse_polynomial_list("x1^3, x2^3, x3^3, (x1+x2+x3)^3", n).unwrap();
        assert!(semiregularity_check(&fp(), n, &aci).unwrap());
        let bad = parse_polynomial_list("x1^2, x1*x2", 2).unwrap();
        assert!(!semiregularity_check(&fp(), 2, &bad).unwrap());
    }
}
