use std::collections::BTreeMap;

use super::echelon::{Echelon, SparseVec};
use super::{ExactAlgError, Field, FieldElement, FieldSpec};
use crate::with_field;

/// Sparse matrix whose entries all live in one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), FieldElement>,
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: ExactMatrix,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Build from `(row, col, value)` triples; zeros are dropped, repeated positions overwrite.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self, ExactAlgError>
    where
        I: IntoIterator<Item = (usize, usize, FieldElement)>,
    {
        let mut m = ExactMatrix::zeros(rows, cols);
        for (r, c, e) in entries {
            m.set(r, c, e)?;
        }
        Ok(m)
    }

    pub fn from_integers(rows: &[Vec<i64>], spec: FieldSpec) -> Result<Self, ExactAlgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = ExactMatrix::zeros(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != ncols {
                return Err(ExactAlgError::DimensionMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, FieldElement::from_rational_in(spec, &super::rat(v))?)?;
            }
        }
        Ok(m)
    }

    pub fn identity(n: usize, spec: FieldSpec) -> Result<Self, ExactAlgError> {
        let one = FieldElement::from_rational_in(spec, &super::rat(1))?;
        ExactMatrix::from_entries(n, n, (0..n).map(|i| (i, i, one.clone())))
    }

    pub fn set(&mut self, r: usize, c: usize, e: FieldElement) -> Result<(), ExactAlgError> {
        if r >= self.rows || c >= self.cols {
            return Err(ExactAlgError::IndexOutOfRange {
                row: r,
                col: c,
                rows: self.rows,
                cols: self.cols,
            });
        }
        if e.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), e);
        }
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&FieldElement> {
        self.entries.get(&(r, c))
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &FieldElement)> {
        self.entries.iter().map(|((r, c), e)| (*r, *c, e))
    }

    /// The common field of all entries; rationals for an empty matrix.
    pub fn field(&self) -> Result<FieldSpec, ExactAlgError> {
        let mut spec: Option<FieldSpec> = None;
        for e in self.entries.values() {
            let s = e.spec();
            match spec {
                None => spec = Some(s),
                Some(prev) if prev != s => {
                    return Err(ExactAlgError::FieldMismatch {
                        left: prev.to_string(),
                        right: s.to_string(),
                    })
                }
                _ => {}
            }
        }
        Ok(spec.unwrap_or(FieldSpec::Rational))
    }

    /// Column `c` as a vector of length `nrows`.
    pub fn column(&self, c: usize) -> Vec<Option<FieldElement>> {
        (0..self.rows).map(|r| self.get(r, c).cloned()).collect()
    }

    pub(crate) fn typed_rows<F: Field>(&self, f: &F) -> Result<Vec<SparseVec<F::Elem>>, ExactAlgError> {
        let mut rows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.rows];
        for ((r, c), e) in &self.entries {
            rows[*r].push((*c, f.from_rational(&e.to_rational())?));
        }
        Ok(rows)
    }

    pub(crate) fn from_typed_rows<F: Field>(f: &F, rows: usize, cols: usize, data: &[SparseVec<F::Elem>]) -> Self {
        let spec = f.spec();
        let mut m = ExactMatrix::zeros(rows, cols);
        for (r, row) in data.iter().enumerate() {
            for (c, e) in row {
                let fe = typed_to_element(f, spec, e);
                m.entries.insert((r, *c), fe);
            }
        }
        m
    }
}

fn typed_to_element<F: Field>(f: &F, spec: FieldSpec, e: &F::Elem) -> FieldElement {
    match spec {
        FieldSpec::Rational => FieldElement::Rational(f.to_rational(e)),
        FieldSpec::Prime(m) => {
            let q = f.to_rational(e);
            FieldElement::from_rational_in(FieldSpec::Prime(m), &q).expect("residue is representable")
        }
    }
}

/// Reduced row echelon form. Pivot columns come out in increasing order.
pub fn rref(m: &ExactMatrix) -> Result<RrefResult, ExactAlgError> {
    let spec = m.field()?;
    with_field!(spec, f => {
        let mut ech = Echelon::new(f, m.ncols());
        for r in m.typed_rows(&f)? {
            ech.insert(&r);
        }
        ech.make_reduced();
        let rows = ech.rows();
        Ok(RrefResult {
            rank: ech.rank(),
            pivots: ech.pivots(),
            reduced: ExactMatrix::from_typed_rows(&f, m.nrows(), m.ncols(), &rows),
        })
    })
}

/// Basis of `{v : m v = 0}`; each vector's first nonzero coordinate is one.
pub fn kernel_basis(m: &ExactMatrix) -> Result<Vec<Vec<FieldElement>>, ExactAlgError> {
    let spec = m.field()?;
    with_field!(spec, f => {
        let mut ech = Echelon::new(f, m.ncols());
        for r in m.typed_rows(&f)? {
            ech.insert(&r);
        }
        let zero = FieldElement::from_rational_in(spec, &super::rat(0))?;
        Ok(ech
            .null_space()
            .into_iter()
            .map(|v| {
                let mut dense = vec![zero.clone(); m.ncols()];
                for (c, e) in v {
                    dense[c] = typed_to_element(&f, spec, &e);
                }
                dense
            })
            .collect())
    })
}

/// Whether `target` lies in the column space of `generators`; when it does,
/// returns coefficients `c` with `generators * c = target`.
pub fn in_span(target: &[FieldElement], generators: &ExactMatrix) -> Result<Option<Vec<FieldElement>>, ExactAlgError> {
    if target.len() != generators.nrows() {
        return Err(ExactAlgError::DimensionMismatch {
            expected: generators.nrows(),
            found: target.len(),
        });
    }
    let mut spec = generators.field()?;
    if generators.nnz() == 0 {
        if let Some(e) = target.iter().find(|e| !e.is_zero()) {
            spec = e.spec();
        }
    }
    for e in target {
        if !e.is_zero() && e.spec() != spec {
            return Err(ExactAlgError::FieldMismatch {
                left: spec.to_string(),
                right: e.spec().to_string(),
            });
        }
    }
    let k = generators.ncols();
    with_field!(spec, f => {
        // rows of the augmented matrix [G | t]
        let mut rows = generators.typed_rows(&f)?;
        for (r, e) in target.iter().enumerate() {
            if !e.is_zero() {
                rows[r].push((k, f.from_rational(&e.to_rational())?));
            }
        }
        let mut ech = Echelon::new(f, k + 1);
        for r in &rows {
            ech.insert(r);
        }
        if ech.is_pivot(k) {
            return Ok(None);
        }
        ech.make_reduced();
        let zero = FieldElement::from_rational_in(spec, &super::rat(0))?;
        let mut c = vec![zero; k];
        for r in ech.rows() {
            let p = r[0].0;
            if let Some((_, e)) = r.iter().find(|(col, _)| *col == k) {
                c[p] = typed_to_element(&f, spec, e);
            }
        }
        Ok(Some(c))
    })
}

/// `m * v` with all values in one field.
pub fn mat_vec(m: &ExactMatrix, v: &[FieldElement]) -> Result<Vec<FieldElement>, ExactAlgError> {
    if v.len() != m.ncols() {
        return Err(ExactAlgError::DimensionMismatch {
            expected: m.ncols(),
            found: v.len(),
        });
    }
    let spec = m.field()?;
    with_field!(spec, f => {
        let mut acc = vec![f.zero(); m.nrows()];
        for (r, c, e) in m.entries() {
            let a = f.from_rational(&e.to_rational())?;
            let b = f.from_rational(&v[c].to_rational())?;
            acc[r] = f.add(&acc[r], &f.mul(&a, &b));
        }
        Ok(acc.iter().map(|e| typed_to_element(&f, spec, e)).collect())
    })
}
