use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{collect_sparse, kernel_of_images, sparse_axpy, Echelon, Field, SparseVec};
use crate::polyring::{monomials_of_degree, Monomial, MonomialBasis, Polynomial};

use super::slices::GradedIdealSlices;

/// A graded quotient `R/I` of `k[x_1..x_n]`, or its truncation to degrees
/// `0..=top`, given by a basis of each graded piece and the matrices of
/// multiplication by each variable.
#[derive(Clone, Debug)]
pub struct GradedAlgebra<F: Field> {
    field: F,
    n: usize,
    dims: Vec<usize>,
    /// `mult[j][k][b]`: `x_k` times basis vector `b` of `A_j`, in `A_{j+1}`.
    mult: Vec<Vec<Vec<SparseVec<F::Elem>>>>,
    /// Degrees past `top` vanish (rather than being cut off).
    artinian: bool,
}

fn unit<F: Field>(f: &F, b: usize) -> SparseVec<F::Elem> {
    vec![(b, f.one())]
}

impl<F: Field> GradedAlgebra<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn is_artinian(&self) -> bool {
        self.artinian
    }

    pub fn dim(&self, j: usize) -> usize {
        if j < self.dims.len() {
            self.dims[j]
        } else {
            0
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `x_k v` for `v` in degree `j`; empty past the top degree.
    pub fn mul_var(&self, j: usize, k: usize, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        if j >= self.mult.len() {
            return Vec::new();
        }
        let f = &self.field;
        let table = &self.mult[j][k];
        collect_sparse(
            f,
            v.iter()
                .flat_map(|(b, c)| table[*b].iter().map(move |(t, e)| (*t, f.mul(c, e)))),
        )
    }

    /// `(sum c_k x_k) v` for `v` in degree `j`.
    pub fn mul_linear(&self, j: usize, coeffs: &[F::Elem], v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc: SparseVec<F::Elem> = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            acc = sparse_axpy(f, &acc, c, &self.mul_var(j, k, v));
        }
        acc
    }

    /// `m v` for a monomial `m`.
    pub fn mul_monomial(&self, j: usize, m: &Monomial, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut cur = v.to_vec();
        let mut deg = j;
        for (k, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                if cur.is_empty() {
                    return cur;
                }
                cur = self.mul_var(deg, k, &cur);
                deg += 1;
            }
        }
        cur
    }

    /// `p v` for a homogeneous polynomial `p`.
    pub fn mul_poly(&self, j: usize, p: &Polynomial, v: &[(usize, F::Elem)]) -> Result<SparseVec<F::Elem>> {
        let f = &self.field;
        let mut acc = Vec::new();
        for (m, c) in p.terms() {
            let c = f.from_rational(c)?;
            acc = sparse_axpy(f, &acc, &c, &self.mul_monomial(j, m, v));
        }
        Ok(acc)
    }

    /// Images of the basis of `A_j` under `l^e`, `l = sum c_k x_k`.
    pub fn linear_power_images(&self, j: usize, coeffs: &[F::Elem], e: usize) -> Vec<SparseVec<F::Elem>> {
        (0..self.dim(j))
            .map(|b| {
                let mut v = unit(&self.field, b);
                for step in 0..e {
                    v = self.mul_linear(j + step, coeffs, &v);
                }
                v
            })
            .collect()
    }

    /// Images of the basis of `A_j` under a homogeneous polynomial.
    pub fn poly_images(&self, j: usize, p: &Polynomial) -> Result<Vec<SparseVec<F::Elem>>> {
        (0..self.dim(j))
            .map(|b| self.mul_poly(j, p, &unit(&self.field, b)))
            .collect()
    }

    /// Rank of `l^e : A_j -> A_{j+e}`.
    pub fn linear_power_rank(&self, j: usize, coeffs: &[F::Elem], e: usize) -> usize {
        let images = self.linear_power_images(j, coeffs, e);
        let mut ech = Echelon::new(self.field.clone(), self.dim(j + e));
        for v in &images {
            ech.insert(v);
        }
        ech.rank()
    }

    /// Joint kernel of multiplication by all variables on `A_j`.
    pub fn socle_in_degree(&self, j: usize) -> Vec<SparseVec<F::Elem>> {
        let d = self.dim(j);
        if d == 0 {
            return Vec::new();
        }
        if j >= self.mult.len() {
            // past the computed range only an Artinian algebra is known to vanish
            return if self.artinian {
                (0..d).map(|b| unit(&self.field, b)).collect()
            } else {
                Vec::new()
            };
        }
        let next = self.dim(j + 1);
        // stack the n multiplication maps into one target of dimension n * next
        let images: Vec<SparseVec<F::Elem>> = (0..d)
            .map(|b| {
                let mut v = Vec::new();
                for k in 0..self.n {
                    v.extend(self.mult[j][k][b].iter().map(|(t, e)| (k * next + t, e.clone())));
                }
                v
            })
            .collect();
        kernel_of_images(&self.field, &images, self.n * next)
    }

    /// Quotient by a graded ideal of this algebra, `w[j]` a subspace of
    /// `A_j` (degrees past `w.len()` are taken as zero). The basis of each
    /// quotient piece is the set of non-pivot coordinates.
    pub fn quotient(&self, w: Vec<Echelon<F>>) -> GradedAlgebra<F> {
        let mut w = w;
        for e in &mut w {
            e.make_reduced();
        }
        let top = self.top();
        let free: Vec<Vec<usize>> = (0..=top)
            .map(|j| match w.get(j) {
                Some(e) => e.free_columns(),
                None => (0..self.dim(j)).collect(),
            })
            .collect();
        let index: Vec<HashMap<usize, usize>> = free
            .iter()
            .map(|cols| cols.iter().enumerate().map(|(i, &c)| (c, i)).collect())
            .collect();
        let mut last = top;
        while last > 0 && free[last].is_empty() {
            last -= 1;
        }
        let artinian = self.artinian || last < top;
        let mult = (0..last)
            .into_par_iter()
            .map(|j| {
                (0..self.n)
                    .map(|k| {
                        free[j]
                            .iter()
                            .map(|&c| {
                                let img = &self.mult[j][k][c];
                                let red = match w.get(j + 1) {
                                    Some(e) => e.reduce(img),
                                    None => img.clone(),
                                };
                                red.into_iter().map(|(t, e)| (index[j + 1][&t], e)).collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GradedAlgebra {
            field: self.field.clone(),
            n: self.n,
            dims: free[..=last].iter().map(Vec::len).collect(),
            mult,
            artinian,
        }
    }

    /// `R/I` from ideal slices; exact up to the slice bound, Artinian when
    /// the last slice is everything.
    pub fn from_slices(slices: &GradedIdealSlices<F>) -> GradedAlgebra<F> {
        let field = slices.field().clone();
        let n = slices.nvars();
        let bound = slices.bound();
        let ambient = RewriteAlgebra::polynomial_ring(n).build(&field, bound);
        let w = (0..=bound).map(|j| slices.slice(j).clone()).collect();
        let mut a = ambient.quotient(w);
        a.artinian = slices.is_full(bound);
        a
    }

    /// The ideal `I/J` of `A = R/J` spanned in degree `j` by images of a
    /// homogeneous element: `p A_{j - deg p}`.
    pub fn principal_ideal(&self, p: &Polynomial) -> Result<Vec<Echelon<F>>> {
        let d = p.homogeneous_degree()?.unwrap_or(0);
        (0..=self.top())
            .map(|j| {
                let mut e = Echelon::new(self.field.clone(), self.dim(j));
                if j >= d && !p.is_zero() {
                    for v in self.poly_images(j - d, p)? {
                        e.insert(&v);
                    }
                }
                Ok(e)
            })
            .collect()
    }

    /// Annihilator `0 : p` in every degree: kernels of `p : A_j -> A_{j+deg p}`.
    pub fn annihilator_of(&self, p: &Polynomial) -> Result<Vec<Echelon<F>>> {
        let d = p.homogeneous_degree()?.unwrap_or(0);
        if !self.artinian && d > 0 {
            return Err(Error::OutOfRange("annihilator needs an Artinian algebra".into()));
        }
        (0..=self.top())
            .map(|j| {
                let images = self.poly_images(j, p)?;
                let kernel = kernel_of_images(&self.field, &images, self.dim(j + d));
                Ok(Echelon::from_rows(self.field.clone(), self.dim(j), kernel))
            })
            .collect()
    }

    /// Rank of `x_k : A_j -> A_{j+1}`.
    pub fn var_rank(&self, j: usize, k: usize) -> usize {
        if j >= self.mult.len() {
            return 0;
        }
        let mut e = Echelon::new(self.field.clone(), self.dim(j + 1));
        for v in &self.mult[j][k] {
            e.insert(v);
        }
        e.rank()
    }
}

/// Presentation of `k[x_1..x_n]/(g_k)` where each `g_k = x_k^{d_k} - tail_k`
/// and `tail_k` only involves lower powers of `x_k` and unbounded variables.
/// Standard monomials (`a_k < d_k` for bounded `k`) form a basis.
#[derive(Clone, Debug)]
pub struct RewriteAlgebra {
    n: usize,
    bounds: Vec<Option<u32>>,
    tails: Vec<Option<Polynomial>>,
}

impl RewriteAlgebra {
    pub fn polynomial_ring(n: usize) -> Self {
        RewriteAlgebra {
            n,
            bounds: vec![None; n],
            tails: vec![None; n],
        }
    }

    /// `k[x]/(x_1^{d_1}, ..., x_n^{d_n})`.
    pub fn monomial_ci(degrees: &[u32]) -> Self {
        RewriteAlgebra {
            n: degrees.len(),
            bounds: degrees.iter().map(|&d| Some(d)).collect(),
            tails: vec![None; degrees.len()],
        }
    }

    /// Relations `x_k^{d_k} = tail_k` for the listed variables; the other
    /// variables are free.
    pub fn with_relations(n: usize, relations: Vec<(usize, u32, Polynomial)>) -> Self {
        let mut r = RewriteAlgebra::polynomial_ring(n);
        for (k, d, tail) in relations {
            r.bounds[k] = Some(d);
            r.tails[k] = if tail.is_zero() { None } else { Some(tail) };
        }
        r
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        self.bounds
            .iter()
            .zip(m.exponents())
            .all(|(b, &e)| b.is_none_or(|b| e < b))
    }

    /// Largest degree with a standard monomial when every variable is bounded.
    pub fn socle_degree(&self) -> Option<usize> {
        self.bounds.iter().map(|b| b.map(|b| b as usize - 1)).sum()
    }

    pub fn standard_basis(&self, j: usize) -> MonomialBasis {
        let mons = monomials_of_degree(self.n, j)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect();
        MonomialBasis::from_monomials(j, mons)
    }

    /// Normal form of a monomial as rational combination of standard monomials.
    pub fn normal_form(&self, m: &Monomial) -> Vec<(Monomial, num_rational::BigRational)> {
        use num_traits::{One, Zero};
        let mut out: std::collections::BTreeMap<Monomial, num_rational::BigRational> = Default::default();
        let mut work = vec![(m.clone(), num_rational::BigRational::one())];
        while let Some((mon, c)) = work.pop() {
            let hit = (0..self.n).find(|&k| self.bounds[k].is_some_and(|b| mon.exp(k) >= b));
            match hit {
                None => {
                    let slot = out.entry(mon).or_insert_with(num_rational::BigRational::zero);
                    *slot += c;
                }
                Some(k) => {
                    let Some(tail) = &self.tails[k] else { continue };
                    let b = self.bounds[k].expect("bounded");
                    let rest = Monomial::var_power(self.n, k, b)
                        .quotient_of(&mon)
                        .expect("exponent checked");
                    for (t, tc) in tail.terms() {
                        work.push((rest.mul(t), &c * tc));
                    }
                }
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Multiplication tables in degrees `0..=top`.
    pub fn build<F: Field>(&self, field: &F, top: usize) -> GradedAlgebra<F> {
        let top = match self.socle_degree() {
            Some(s) => top.min(s),
            None => top,
        };
        let bases: Vec<MonomialBasis> = (0..=top).map(|j| self.standard_basis(j)).collect();
        let mult = (0..top)
            .into_par_iter()
            .map(|j| {
                (0..self.n)
                    .map(|k| {
                        bases[j]
                            .monomials()
                            .iter()
                            .map(|m| {
                                let prod = m.mul_var(k);
                                if self.is_standard(&prod) {
                                    return unit(field, bases[j + 1].index_of(&prod).expect("standard"));
                                }
                                collect_sparse(
                                    field,
                                    self.normal_form(&prod).into_iter().map(|(t, c)| {
                                        (
                                            bases[j + 1].index_of(&t).expect("normal form is standard"),
                                            field.from_rational(&c).expect("integral tails"),
                                        )
                                    }),
                                )
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        GradedAlgebra {
            field: field.clone(),
            n: self.n,
            dims: bases.iter().map(MonomialBasis::len).collect(),
            mult,
            artinian: self.socle_degree().is_some(),
        }
    }

    /// Coordinates of a homogeneous polynomial in the standard basis.
    pub fn coordinates<F: Field>(&self, field: &F, p: &Polynomial) -> Result<SparseVec<F::Elem>> {
        let Some(j) = p.homogeneous_degree()? else {
            return Ok(Vec::new());
        };
        let basis = self.standard_basis(j);
        let mut items = Vec::new();
        for (m, c) in p.terms() {
            for (t, tc) in self.normal_form(m) {
                items.push((basis.index_of(&t).expect("standard"), field.from_rational(&(c * tc))?));
            }
        }
        Ok(collect_sparse(field, items))
    }
}
