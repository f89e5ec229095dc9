use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{rank_of_images, Echelon, Field};
use crate::formulas::{reduced_sequence, syzygy_coefficient};
use crate::hilbert::{multiplicity_of_truncation, DegreeSequence};
use crate::polyring::{Monomial, Polynomial};
use crate::resolver::{
    aci_algebra, ci_algebra, ideal_slices, linear_power_kernel, linked_algebra, membership, quotient_hilbert_bounded,
    GradedAlgebra, RelationVector, RewriteAlgebra,
};

/// `I = (x_1^{d_1}, ..., x_{n-1}^{d_{n-1}}, x_n^2, l^e)` with the square on
/// the last variable, and `J` the same without `l^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareSetup {
    powers: Vec<u32>,
    ell: u32,
}

impl SquareSetup {
    pub fn new(powers: Vec<u32>, ell: u32) -> Result<Self> {
        if powers.contains(&0) || ell == 0 {
            return Err(Error::InvalidDegrees("degrees must be positive".into()));
        }
        Ok(SquareSetup { powers, ell })
    }

    /// From a sequence with some square variable power; the first square is
    /// moved to the last variable.
    pub fn from_sequence(ds: &DegreeSequence) -> Result<Self> {
        let (_, bar) = reduced_sequence(ds)?;
        SquareSetup::new(bar.degrees().to_vec(), bar.require_ell()?)
    }

    pub fn n(&self) -> usize {
        self.powers.len() + 1
    }

    pub fn powers(&self) -> &[u32] {
        &self.powers
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// `(d_1, ..., d_{n-1}, e)`.
    pub fn lifted_degrees(&self) -> Vec<u32> {
        let mut v = self.powers.clone();
        v.push(self.ell);
        v
    }

    /// `sum (d_i - 1) + (e - 1)`, the square excluded.
    pub fn t(&self) -> i64 {
        self.lifted_degrees().iter().map(|&d| d as i64 - 1).sum()
    }

    pub fn require_odd(&self) -> Result<i64> {
        let t = self.t();
        if t % 2 == 0 {
            return Err(Error::Parity { t, expected: "odd" });
        }
        Ok(t)
    }

    /// The full sequence `(d_1, ..., d_{n-1}, 2; e)`.
    pub fn sequence(&self) -> DegreeSequence {
        let mut d = self.powers.clone();
        d.push(2);
        DegreeSequence::with_ell(d, self.ell).expect("positive degrees")
    }

    pub fn ci_degrees(&self) -> Vec<u32> {
        let mut d = self.powers.clone();
        d.push(2);
        d
    }

    /// Generators of `I` in the order `x_1^{d_1}, ..., x_n^2, l^e`.
    pub fn generators(&self) -> Vec<Polynomial> {
        crate::resolver::sequence_generators(&self.sequence())
    }

    pub fn ci_generators(&self) -> Vec<Polynomial> {
        let mut g = self.generators();
        g.pop();
        g
    }
}

impl fmt::Display for SquareSetup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.sequence().fmt(f)
    }
}

/// `prod_{j=0}^{d-1} (base - ((d-1) - 2j) x_n)`.
fn lifted_product(n: usize, base: &Polynomial, d: u32) -> Polynomial {
    let xn = Polynomial::var(n, n - 1);
    let mut acc = Polynomial::one(n);
    for j in 0..d as i64 {
        let c = BigRational::from_integer(((d as i64 - 1) - 2 * j).into());
        let factor = base - &xn.scale(&c);
        acc = &acc * &factor;
    }
    acc
}

/// Terms whose `x_n` exponent is below `k`.
fn truncate_last(p: &Polynomial, k: u32) -> Polynomial {
    let n = p.nvars();
    Polynomial::from_terms(
        n,
        p.terms()
            .filter(|(m, _)| m.exp(n - 1) < k)
            .map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// The lifted forms `f_1, ..., f_n`: `f_i` a product of `x_i - a x_n` and
/// `f_n` a product of `l - a x_n`, with `a` running over `d-1, d-3, ..., 1-d`.
#[derive(Clone, Debug)]
pub struct LiftedFamily {
    setup: SquareSetup,
    forms: Vec<Polynomial>,
}

impl LiftedFamily {
    pub fn setup(&self) -> &SquareSetup {
        &self.setup
    }

    /// `f_1, ..., f_n`.
    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    /// Generators of `J' = (f_1, ..., f_{n-1})`.
    pub fn j_prime(&self) -> &[Polynomial] {
        &self.forms[..self.forms.len() - 1]
    }

    pub fn f_last(&self) -> &Polynomial {
        self.forms.last().expect("n >= 1")
    }

    /// `R/J'` with the rewrite `x_i^{d_i} -> x_i^{d_i} - f_i`; `x_n` is free.
    pub fn rewrite_algebra(&self) -> RewriteAlgebra {
        let n = self.setup.n();
        let rels = self
            .setup
            .powers
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let lead = Polynomial::var_power(n, i, d);
                (i, d, &lead - &self.forms[i])
            })
            .collect();
        RewriteAlgebra::with_relations(n, rels)
    }
}

/// Build `f_1, ..., f_n` and confirm `f ≡ g^d - c g^{d-2} x_n^2 (mod x_n^4)`
/// for `g = x_i` or `l`, and `I' + (x_n^2) = I` in every degree.
pub fn build_lifted_family<F: Field>(field: &F, setup: &SquareSetup) -> Result<LiftedFamily> {
    let n = setup.n();
    let ell = Polynomial::ell(n);
    let xn2 = Polynomial::var_power(n, n - 1, 2);
    let mut forms = Vec::with_capacity(n);
    for (i, &d) in setup.lifted_degrees().iter().enumerate() {
        let base = if i + 1 < n { Polynomial::var(n, i) } else { ell.clone() };
        let f = lifted_product(n, &base, d);
        let c = BigRational::from_integer(syzygy_coefficient(d).into());
        let mut expect = base.pow(d);
        if d >= 2 {
            expect = &expect - &(&base.pow(d - 2) * &xn2).scale(&c);
        }
        if truncate_last(&(&f - &expect), 4).terms().any(|(_, c)| !c.is_zero()) {
            return Err(Error::Consistency(format!("lifted form {} fails to specialize", i + 1)));
        }
        forms.push(f);
    }
    let family = LiftedFamily {
        setup: setup.clone(),
        forms,
    };
    let mut lifted = family.forms.clone();
    lifted.push(xn2);
    let a = ideal_slices(field, n, &setup.generators())?;
    let b = ideal_slices(field, n, &lifted)?;
    if a.bound() != b.bound() || !a.same_slices(&b) {
        return Err(Error::Consistency("I' + (x_n^2) differs from I".into()));
    }
    Ok(family)
}

/// Points `(a_1, ..., a_{n-1}, 1)` with `a_i in {d_i - 1 - 2j}` and
/// `1 + sum a_i in {e - 1 - 2j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePointSet {
    pub points: Vec<Vec<i64>>,
}

impl ProjectivePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn roots(d: u32) -> Vec<i64> {
    (0..d as i64).map(|j| (d as i64 - 1) - 2 * j).collect()
}

/// The common zeros of the lifted forms, checked against the truncated
/// multiplicity and by evaluation.
pub fn enumerate_point_set(family: &LiftedFamily) -> Result<ProjectivePointSet> {
    let setup = family.setup();
    setup.require_odd()?;
    let ell_roots = roots(setup.ell());
    let mut points = Vec::new();
    let mut cur = Vec::with_capacity(setup.n());
    fn rec(powers: &[u32], ell_roots: &[i64], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == powers.len() {
            let s = 1 + cur.iter().sum::<i64>();
            if ell_roots.contains(&s) {
                let mut p = cur.clone();
                p.push(1);
                out.push(p);
            }
            return;
        }
        for a in roots(powers[cur.len()]) {
            cur.push(a);
            rec(powers, ell_roots, cur, out);
            cur.pop();
        }
    }
    rec(setup.powers(), &ell_roots, &mut cur, &mut points);
    let expected = multiplicity_of_truncation(&setup.lifted_degrees())?;
    if points.len() as i64 != expected {
        return Err(Error::Consistency(format!(
            "{} points, truncated multiplicity {expected}",
            points.len()
        )));
    }
    for p in &points {
        let q: Vec<BigRational> = p.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        if family.forms().iter().any(|f| !f.evaluate(&q).is_zero()) {
            return Err(Error::Consistency(format!("lifted forms do not vanish at {p:?}")));
        }
    }
    Ok(ProjectivePointSet { points })
}

/// `x_n` is a nonzerodivisor on `R/I'` and `R/G'` in degrees up to
/// `sum d_i`, and `HF_{R/I'}` has first difference `HF_{R/(I + (x_n))}` there.
pub fn check_xn_regular<F: Field>(field: &F, family: &LiftedFamily) -> Result<bool> {
    let setup = family.setup();
    setup.require_odd()?;
    let n = setup.n();
    let last = n - 1;
    let bound: usize = setup.lifted_degrees().iter().map(|&d| d as usize).sum();
    let e = setup.ell() as usize;
    let b = family.rewrite_algebra().build(field, bound + e + 1);
    let fnl = family.f_last();

    // R/J' itself
    if (0..=bound).any(|j| b.var_rank(j, last) != b.dim(j)) {
        return Ok(false);
    }
    // R/I' = B' / f_n B'
    let l = b.quotient(b.principal_ideal(fnl)?);
    if (0..=bound).any(|j| l.var_rank(j, last) != l.dim(j)) {
        return Ok(false);
    }
    let mut plus = setup.generators();
    plus.push(Polynomial::var(n, last));
    let (hf, _) = quotient_hilbert_bounded(field, n, &plus, bound)?;
    for (j, &h) in hf.iter().enumerate() {
        let prev = if j == 0 { 0 } else { l.dim(j - 1) as i64 };
        if l.dim(j) as i64 - prev != h {
            return Ok(false);
        }
    }
    // R/G' embeds in R/J' via f_n: x_n is regular iff ker(x_n f_n) = ker(f_n)
    let xfn = &Polynomial::var(n, last) * fnl;
    for j in 0..=bound {
        let r1 = rank_of_images(field, &b.poly_images(j, fnl)?, b.dim(j + e));
        let r2 = rank_of_images(field, &b.poly_images(j, &xfn)?, b.dim(j + e + 1));
        if r1 != r2 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `G = G' + (x_n^2)` with `G' = J' : f_n`, compared inside
/// `R/J = B'/x_n^2 B'` in every degree.
pub fn check_lift_of_colon<F: Field>(field: &F, family: &LiftedFamily) -> Result<bool> {
    let setup = family.setup();
    setup.require_odd()?;
    let e = setup.ell() as usize;
    let ci = ci_algebra(field, &setup.ci_degrees());
    let g = linear_power_kernel(&ci, e);
    let top = ci.top();
    let rw = family.rewrite_algebra();
    let b = rw.build(field, top + e);
    let ci_rw = RewriteAlgebra::monomial_ci(&setup.ci_degrees());
    for (j, gj) in g.iter().enumerate() {
        let kernel = crate::exactalg::kernel_of_images(field, &b.poly_images(j, family.f_last())?, b.dim(j + e));
        let src = rw.standard_basis(j);
        let tgt = ci_rw.standard_basis(j);
        let mut projected = Echelon::new(field.clone(), tgt.len());
        for v in &kernel {
            let w: Vec<_> = v
                .iter()
                .filter_map(|(c, x)| {
                    let m: &Monomial = src.get(*c);
                    tgt.index_of(m).map(|t| (t, x.clone()))
                })
                .collect();
            projected.insert(&w);
        }
        let mut gj = gj.clone();
        if !projected.same_span(&mut gj) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `I : (x_n) = I + (x_n)` and `G : (x_n) = G + (x_n)`. Both ideals contain
/// `x_n^2`, so `x_n A ⊆ 0 :_A x_n` and equal dimensions decide equality.
pub fn check_colon_equals_plus<F: Field>(field: &F, setup: &SquareSetup) -> Result<bool> {
    setup.require_odd()?;
    let ds = setup.sequence();
    ds.require_minimal()?;
    let last = setup.n() - 1;
    let check = |a: &GradedAlgebra<F>| {
        (0..=a.top()).all(|j| {
            let ker = a.dim(j) - a.var_rank(j, last);
            let img = if j == 0 { 0 } else { a.var_rank(j - 1, last) };
            ker == img
        })
    };
    Ok(check(&aci_algebra(field, &ds)?) && check(&linked_algebra(field, &ds)?))
}

/// `sum_{i<n} c_i a_i x_i^{d_i - 2} + a_n + c_n a_{n+1} l^{e-2}` for a
/// relation `(a_1, ..., a_{n+1})` on the generators of `I`.
pub fn syzygy_combination(setup: &SquareSetup, relation: &RelationVector) -> Result<Polynomial> {
    let n = setup.n();
    if relation.components.len() != n + 1 {
        return Err(Error::InvalidRelation(format!(
            "{} components for {} generators",
            relation.components.len(),
            n + 1
        )));
    }
    let mut acc = relation.components[n - 1].clone();
    let mut add = |a: &Polynomial, d: u32, base: &Polynomial| {
        let c = syzygy_coefficient(d);
        if c != 0 && d >= 2 {
            let term = (a * &base.pow(d - 2)).scale(&BigRational::from_integer(c.into()));
            acc = &acc + &term;
        }
    };
    for (i, &d) in setup.powers().iter().enumerate() {
        add(&relation.components[i], d, &Polynomial::var(n, i));
    }
    add(&relation.components[n], setup.ell(), &Polynomial::ell(n));
    Ok(acc)
}

/// The weighted combination of a relation lies in `I`.
pub fn check_syzygy_property<F: Field>(field: &F, setup: &SquareSetup, relation: &RelationVector) -> Result<bool> {
    setup.require_odd()?;
    let gens = setup.generators();
    if !relation.holds_in(field, &gens)? {
        return Err(Error::InvalidRelation(
            "components do not annihilate the generators".into(),
        ));
    }
    let comb = syzygy_combination(setup, relation)?;
    if comb.is_zero_in(field)? {
        return Ok(true);
    }
    if !comb.is_homogeneous() {
        return Err(Error::InvalidRelation("relation is not homogeneous".into()));
    }
    membership(field, setup.n(), &comb, &gens)
}

/// [`check_syzygy_property`] on a basis of the first syzygies in each degree
/// up to `max_degree`; returns the number of relations checked.
pub fn check_syzygies_up_to<F: Field>(field: &F, setup: &SquareSetup, max_degree: usize) -> Result<(usize, bool)> {
    let gens = setup.generators();
    let mut count = 0;
    for j in 0..=max_degree {
        for rel in crate::resolver::syzygies_in_degree(field, setup.n(), &gens, j)? {
            count += 1;
            if !check_syzygy_property(field, setup, &rel)? {
                return Ok((count, false));
            }
        }
    }
    Ok((count, true))
}
