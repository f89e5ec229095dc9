//! Incremental row echelon forms over a [`Field`].
//!
//! Vectors are inserted one at a time; the basis is kept in echelon form
//! and brought to reduced row echelon form on demand. Since the RREF of a
//! subspace is unique, the result does not depend on insertion order.

use super::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

const NO_ROW: usize = usize::MAX;

#[derive(Clone, Debug)]
enum Row<E> {
    Sparse(SparseVec<E>),
    Dense { start: usize, vals: Vec<E> },
}

impl<E: Clone> Row<E> {
    fn entries<'a, F: Field<Elem = E>>(&'a self, field: &'a F) -> Box<dyn Iterator<Item = (usize, &'a E)> + 'a> {
        match self {
            Row::Sparse(v) => Box::new(v.iter().map(|(c, e)| (*c, e))),
            Row::Dense { start, vals } => Box::new(
                vals.iter()
                    .enumerate()
                    .filter(move |(_, e)| !field.is_zero(e))
                    .map(move |(k, e)| (start + k, e)),
            ),
        }
    }
}

/// A subspace of `F^ncols` held as an echelon basis.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Row<F::Elem>>,
    pivots: Vec<usize>,
    row_of_col: Vec<usize>,
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![NO_ROW; ncols],
            reduced: true,
        }
    }

    /// The span of the given vectors.
    pub fn from_rows<I>(field: F, ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = SparseVec<F::Elem>>,
    {
        let mut e = Echelon::new(field, ncols);
        for r in rows {
            e.insert(&r);
        }
        e
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p = self.pivots.clone();
        p.sort_unstable();
        p
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_col[col] != NO_ROW
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    fn dense_from(&self, v: &[(usize, F::Elem)]) -> Vec<F::Elem> {
        let mut acc = vec![self.field.zero(); self.ncols];
        for (c, e) in v {
            acc[*c] = self.field.add(&acc[*c], e);
        }
        acc
    }

    fn axpy_row(&self, acc: &mut [F::Elem], factor: &F::Elem, row: usize) {
        let f = &self.field;
        match &self.rows[row] {
            Row::Sparse(v) => {
                for (c, e) in v {
                    acc[*c] = f.sub_mul(&acc[*c], factor, e);
                }
            }
            Row::Dense { start, vals } => {
                for (k, e) in vals.iter().enumerate() {
                    if !f.is_zero(e) {
                        acc[start + k] = f.sub_mul(&acc[start + k], factor, e);
                    }
                }
            }
        }
    }

    /// Eliminate every pivot column from a dense accumulator, starting at `from`.
    /// Returns the multiplier applied to each basis row.
    fn reduce_dense_from(&self, acc: &mut [F::Elem], from: usize, mut record: Option<&mut Vec<(usize, F::Elem)>>) {
        for c in from..self.ncols {
            let r = self.row_of_col[c];
            if r == NO_ROW || self.field.is_zero(&acc[c]) {
                continue;
            }
            let factor = acc[c].clone();
            self.axpy_row(acc, &factor, r);
            if let Some(rec) = record.as_deref_mut() {
                rec.push((r, factor));
            }
        }
    }

    fn store(&self, acc: Vec<F::Elem>, start: usize) -> Row<F::Elem> {
        let nnz = acc[start..].iter().filter(|e| !self.field.is_zero(e)).count();
        if 2 * nnz > self.ncols - start {
            Row::Dense {
                start,
                vals: acc[start..].to_vec(),
            }
        } else {
            Row::Sparse(
                acc.into_iter()
                    .enumerate()
                    .skip(start)
                    .filter(|(_, e)| !self.field.is_zero(e))
                    .collect(),
            )
        }
    }

    /// Add a vector to the span. Returns the new pivot column when the
    /// vector was independent of the current basis.
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> Option<usize> {
        if v.is_empty() || self.is_full() {
            return None;
        }
        let mut acc = self.dense_from(v);
        let first = v.iter().map(|(c, _)| *c).min().unwrap_or(0);
        self.reduce_dense_from(&mut acc, first, None);
        let pivot = (first..self.ncols).find(|&c| !self.field.is_zero(&acc[c]))?;
        let inv = self.field.inv(&acc[pivot]);
        for e in acc[pivot..].iter_mut() {
            if !self.field.is_zero(e) {
                *e = self.field.mul(e, &inv);
            }
        }
        let row = self.store(acc, pivot);
        self.row_of_col[pivot] = self.rows.len();
        self.rows.push(row);
        self.pivots.push(pivot);
        if self.rows.len() > 1 {
            self.reduced = false;
        }
        Some(pivot)
    }

    /// Insert a dense vector.
    pub fn insert_dense(&mut self, v: &[F::Elem]) -> Option<usize> {
        let s: SparseVec<F::Elem> = v
            .iter()
            .enumerate()
            .filter(|(_, e)| !self.field.is_zero(e))
            .map(|(c, e)| (c, e.clone()))
            .collect();
        self.insert(&s)
    }

    /// Bring the basis into reduced row echelon form, rows sorted by pivot.
    pub fn make_reduced(&mut self) {
        if self.reduced {
            return;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&r| self.pivots[r]);
        let old_rows = std::mem::take(&mut self.rows);
        let old_pivots = std::mem::take(&mut self.pivots);
        self.rows = order.iter().map(|&r| old_rows[r].clone()).collect();
        self.pivots = order.iter().map(|&r| old_pivots[r]).collect();
        for (i, &p) in self.pivots.iter().enumerate() {
            self.row_of_col[p] = i;
        }
        for i in (0..self.rows.len()).rev() {
            let p = self.pivots[i];
            let needs = self.rows[i]
                .entries(&self.field)
                .any(|(c, _)| c > p && self.row_of_col[c] != NO_ROW);
            if !needs {
                continue;
            }
            let mut acc = vec![self.field.zero(); self.ncols];
            for (c, e) in self.rows[i].entries(&self.field) {
                acc[c] = e.clone();
            }
            // rows below i are already reduced
            self.reduce_dense_from(&mut acc, p + 1, None);
            self.rows[i] = self.store(acc, p);
        }
        self.reduced = true;
    }

    /// Reduce `v` modulo the span; zero result means membership.
    pub fn reduce(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = self.dense_from(v);
        let first = v.iter().map(|(c, _)| *c).min().unwrap_or(0);
        self.reduce_dense_from(&mut acc, first, None);
        acc.into_iter()
            .enumerate()
            .filter(|(_, e)| !self.field.is_zero(e))
            .collect()
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Express `v` as a combination of the basis rows (row index, coefficient).
    pub fn express(&self, v: &[(usize, F::Elem)]) -> Option<Vec<(usize, F::Elem)>> {
        let mut acc = self.dense_from(v);
        let mut rec = Vec::new();
        self.reduce_dense_from(&mut acc, 0, Some(&mut rec));
        if acc.iter().any(|e| !self.field.is_zero(e)) {
            return None;
        }
        Some(rec)
    }

    /// Basis rows as sparse vectors, in storage order (pivot order once reduced).
    pub fn rows(&self) -> Vec<SparseVec<F::Elem>> {
        self.rows
            .iter()
            .map(|r| r.entries(&self.field).map(|(c, e)| (c, e.clone())).collect())
            .collect()
    }

    pub fn row(&self, i: usize) -> SparseVec<F::Elem> {
        self.rows[i].entries(&self.field).map(|(c, e)| (c, e.clone())).collect()
    }

    /// Row whose pivot sits in column `col`.
    pub fn row_for_pivot(&self, col: usize) -> Option<SparseVec<F::Elem>> {
        match self.row_of_col[col] {
            NO_ROW => None,
            r => Some(self.row(r)),
        }
    }

    /// Basis of the null space of the matrix whose rows span this subspace.
    /// Each vector has first nonzero coordinate equal to one.
    pub fn null_space(&mut self) -> Vec<SparseVec<F::Elem>> {
        self.make_reduced();
        let f = self.field.clone();
        let mut out = Vec::new();
        for free in self.free_columns() {
            let mut v: SparseVec<F::Elem> = Vec::new();
            for (i, &p) in self.pivots.iter().enumerate() {
                if p > free {
                    break;
                }
                if let Some(e) = self.rows[i]
                    .entries(&f)
                    .find(|(c, _)| *c == free)
                    .map(|(_, e)| e.clone())
                {
                    v.push((p, f.neg(&e)));
                }
            }
            v.push((free, f.one()));
            v.sort_unstable_by_key(|(c, _)| *c);
            normalize_leading(&f, &mut v);
            out.push(v);
        }
        out
    }

    /// Same subspace check; both sides are reduced first.
    pub fn same_span(&mut self, other: &mut Echelon<F>) -> bool {
        if self.ncols != other.ncols || self.rank() != other.rank() {
            return false;
        }
        self.make_reduced();
        other.make_reduced();
        self.pivots == other.pivots && self.rows() == other.rows()
    }

    /// Sum of two subspaces.
    pub fn union(&self, other: &Echelon<F>) -> Echelon<F> {
        let mut e = self.clone();
        for r in other.rows() {
            e.insert(&r);
        }
        e
    }
}

/// Scale so the first stored entry is one.
pub fn normalize_leading<F: Field>(f: &F, v: &mut SparseVec<F::Elem>) {
    if let Some((_, lead)) = v.first() {
        let inv = f.inv(lead);
        for (_, e) in v.iter_mut() {
            *e = f.mul(e, &inv);
        }
    }
}

/// Null space of a linear map given by the images of the source basis
/// vectors (`images[k]` is the image of basis vector `k`, a sparse vector in
/// a target of dimension `target_dim`).
pub fn kernel_of_images<F: Field>(
    field: &F,
    images: &[SparseVec<F::Elem>],
    target_dim: usize,
) -> Vec<SparseVec<F::Elem>> {
    let mut rows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); target_dim];
    for (k, img) in images.iter().enumerate() {
        for (t, e) in img {
            rows[*t].push((k, e.clone()));
        }
    }
    let mut ech = Echelon::new(field.clone(), images.len());
    for r in &rows {
        ech.insert(r);
    }
    ech.null_space()
}

/// Rank of the map given by images of basis vectors.
pub fn rank_of_images<F: Field>(field: &F, images: &[SparseVec<F::Elem>], target_dim: usize) -> usize {
    let mut ech = Echelon::new(field.clone(), target_dim);
    for img in images {
        ech.insert(img);
        if ech.is_full() {
            break;
        }
    }
    ech.rank()
}

/// `acc += factor * v` on sparse vectors.
pub fn sparse_axpy<F: Field>(
    f: &F,
    acc: &SparseVec<F::Elem>,
    factor: &F::Elem,
    v: &SparseVec<F::Elem>,
) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(acc.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < v.len() {
        if j == v.len() || (i < acc.len() && acc[i].0 < v[j].0) {
            out.push(acc[i].clone());
            i += 1;
        } else if i == acc.len() || v[j].0 < acc[i].0 {
            let e = f.mul(factor, &v[j].1);
            if !f.is_zero(&e) {
                out.push((v[j].0, e));
            }
            j += 1;
        } else {
            let e = f.add(&acc[i].1, &f.mul(factor, &v[j].1));
            if !f.is_zero(&e) {
                out.push((acc[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Accumulate `(index, value)` pairs into a sorted sparse vector.
pub fn collect_sparse<F: Field, I>(f: &F, items: I) -> SparseVec<F::Elem>
where
    I: IntoIterator<Item = (usize, F::Elem)>,
{
    let mut v: Vec<(usize, F::Elem)> = items.into_iter().collect();
    v.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (c, e) in v {
        match out.last_mut() {
            Some((lc, le)) if *lc == c => *le = f.add(le, &e),
            _ => out.push((c, e)),
        }
    }
    out.retain(|(_, e)| !f.is_zero(e));
    out
}
