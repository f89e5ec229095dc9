use crate::error::{Error, Result};
use crate::exactalg::{Echelon, Field, SparseVec};
use crate::polyring::{MonomialBasis, PolyError, Polynomial};

/// `shift[k][a]`: index in `R_{j+1}` of `x_k` times monomial `a` of `R_j`.
pub(crate) fn shift_table(n: usize, from: &MonomialBasis, to: &MonomialBasis) -> Vec<Vec<usize>> {
    (0..n)
        .map(|k| {
            from.monomials()
                .iter()
                .map(|m| to.index_of(&m.mul_var(k)).expect("degree shifts by one"))
                .collect()
        })
        .collect()
}

pub(crate) fn shift_vec<E: Clone>(v: &[(usize, E)], map: &[usize]) -> SparseVec<E> {
    let mut out: SparseVec<E> = v.iter().map(|(c, e)| (map[*c], e.clone())).collect();
    out.sort_unstable_by_key(|(c, _)| *c);
    out
}

/// Check homogeneity and ring size of a generator list; returns degrees.
pub(crate) fn generator_degrees(n: usize, gens: &[Polynomial]) -> Result<Vec<Option<usize>>> {
    gens.iter()
        .map(|g| {
            if g.nvars() != n {
                return Err(PolyError::RingMismatch {
                    left: n,
                    right: g.nvars(),
                }
                .into());
            }
            Ok(g.homogeneous_degree()?)
        })
        .collect()
}

/// Homogeneous ideal of `k[x_1..x_n]` held degree by degree: `I_j` as an
/// echelon subspace of `R_j` in the monomial basis (largest monomial first),
/// for `j = 0..=bound`.
#[derive(Clone, Debug)]
pub struct GradedIdealSlices<F: Field> {
    field: F,
    n: usize,
    bases: Vec<MonomialBasis>,
    slices: Vec<Echelon<F>>,
    generators: Vec<Polynomial>,
}

impl<F: Field> GradedIdealSlices<F> {
    /// Slices of the ideal generated by `gens` in degrees `0..=bound`.
    pub fn from_generators(field: &F, n: usize, gens: &[Polynomial], bound: usize) -> Result<Self> {
        Self::build(field, n, gens, bound, false)
    }

    /// Grow degree by degree until `I_j = R_j` (the quotient is Artinian)
    /// or `max_bound` is passed.
    pub fn until_artinian(field: &F, n: usize, gens: &[Polynomial], max_bound: usize) -> Result<Self> {
        let s = Self::build(field, n, gens, max_bound, true)?;
        if !s.is_full(s.bound()) {
            return Err(Error::NonArtinian { bound: max_bound });
        }
        Ok(s)
    }

    fn build(field: &F, n: usize, gens: &[Polynomial], bound: usize, stop_when_full: bool) -> Result<Self> {
        let degrees = generator_degrees(n, gens)?;
        let mut out = GradedIdealSlices {
            field: field.clone(),
            n,
            bases: Vec::new(),
            slices: Vec::new(),
            generators: gens.to_vec(),
        };
        for j in 0..=bound {
            let basis = MonomialBasis::new(n, j);
            let mut ech = Echelon::new(field.clone(), basis.len());
            if j > 0 && out.slices[j - 1].is_full() {
                for c in 0..basis.len() {
                    ech.insert(&[(c, field.one())]);
                }
            } else {
                if j > 0 {
                    let shift = shift_table(n, &out.bases[j - 1], &basis);
                    let prev = out.slices[j - 1].rows();
                    'outer: for row in &prev {
                        for map in &shift {
                            ech.insert(&shift_vec(row, map));
                            if ech.is_full() {
                                break 'outer;
                            }
                        }
                    }
                }
                for (g, d) in gens.iter().zip(&degrees) {
                    if *d == Some(j) && !ech.is_full() {
                        ech.insert(&g.to_sparse(field, &basis)?);
                    }
                }
            }
            ech.make_reduced();
            let full = ech.is_full();
            out.bases.push(basis);
            out.slices.push(ech);
            if stop_when_full && full && degrees.iter().all(|d| d.is_none_or(|d| d <= j)) {
                break;
            }
        }
        Ok(out)
    }

    /// Slices given directly, `slices[j]` a subspace of `R_j`. The caller
    /// guarantees closure under multiplication by the variables.
    pub fn from_echelons(field: &F, n: usize, mut slices: Vec<Echelon<F>>) -> Self {
        let bases: Vec<MonomialBasis> = (0..slices.len()).map(|j| MonomialBasis::new(n, j)).collect();
        for s in &mut slices {
            s.make_reduced();
        }
        GradedIdealSlices {
            field: field.clone(),
            n,
            bases,
            slices,
            generators: Vec::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> usize {
        self.slices.len() - 1
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn basis(&self, j: usize) -> &MonomialBasis {
        &self.bases[j]
    }

    pub fn slice(&self, j: usize) -> &Echelon<F> {
        &self.slices[j]
    }

    /// `dim I_j`.
    pub fn dim(&self, j: usize) -> usize {
        self.slices[j].rank()
    }

    /// `dim (R/I)_j`.
    pub fn codim(&self, j: usize) -> usize {
        self.bases[j].len() - self.slices[j].rank()
    }

    pub fn is_full(&self, j: usize) -> bool {
        self.slices[j].is_full()
    }

    /// First degree in which the ideal is everything.
    pub fn artinian_degree(&self) -> Option<usize> {
        (0..self.slices.len()).find(|&j| self.is_full(j))
    }

    /// Hilbert function of `R/I` on `0..=bound`.
    pub fn quotient_dims(&self) -> Vec<i64> {
        (0..self.slices.len()).map(|j| self.codim(j) as i64).collect()
    }

    /// Reduced echelon basis of `I_j` as polynomials.
    pub fn polynomials(&self, j: usize) -> Vec<Polynomial> {
        self.slices[j]
            .rows()
            .iter()
            .map(|r| Polynomial::from_sparse(&self.field, &self.bases[j], self.n, r))
            .collect()
    }

    /// Membership of a homogeneous polynomial of degree at most `bound`.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        let Some(d) = f.homogeneous_degree()? else {
            return Ok(true);
        };
        if d > self.bound() {
            return Err(Error::OutOfRange(format!(
                "degree {d} beyond slice bound {}",
                self.bound()
            )));
        }
        Ok(self.slices[d].contains(&f.to_sparse(&self.field, &self.bases[d])?))
    }

    /// `span(x_1 I_{j-1}, ..., x_n I_{j-1})` inside `R_j`.
    pub fn lower_part(&self, j: usize) -> Echelon<F> {
        let mut ech = Echelon::new(self.field.clone(), self.bases[j].len());
        if j == 0 {
            return ech;
        }
        let shift = shift_table(self.n, &self.bases[j - 1], &self.bases[j]);
        'outer: for row in self.slices[j - 1].rows() {
            for map in &shift {
                ech.insert(&shift_vec(&row, map));
                if ech.is_full() {
                    break 'outer;
                }
            }
        }
        ech
    }

    /// Slice-by-slice equality on the common range of degrees.
    pub fn same_slices(&self, other: &GradedIdealSlices<F>) -> bool {
        let top = self.bound().min(other.bound());
        self.n == other.n
            && (0..=top).all(|j| {
                let mut a = self.slices[j].clone();
                let mut b = other.slices[j].clone();
                a.same_span(&mut b)
            })
    }
}
