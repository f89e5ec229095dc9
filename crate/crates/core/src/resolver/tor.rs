//! Graded Betti numbers `beta_{i,j} = dim Tor_i(R/I, k)_j`, two ways:
//! homology of the Koszul complex on the variables tensored with `R/I`, and
//! a degree-by-degree minimal resolution built from iterated syzygies.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::{Echelon, Field, SparseVec};
use crate::formulas::BettiTable;
use crate::polyring::{Monomial, MonomialBases};

use super::algebra::GradedAlgebra;
use super::slices::GradedIdealSlices;

/// Subsets of `{0..n}` of each size, with a bitmask index.
struct Subsets {
    by_size: Vec<Vec<u32>>,
    index: Vec<usize>,
}

impl Subsets {
    fn new(n: usize) -> Self {
        let mut by_size = vec![Vec::new(); n + 1];
        for mask in 0u32..(1 << n) {
            by_size[mask.count_ones() as usize].push(mask);
        }
        let mut index = vec![0; 1 << n];
        for list in &by_size {
            for (i, &m) in list.iter().enumerate() {
                index[m as usize] = i;
            }
        }
        Subsets { by_size, index }
    }
}

/// Rank of the Koszul differential `K_i (x) A_{j-i} -> K_{i-1} (x) A_{j-i+1}`.
fn koszul_rank<F: Field>(a: &GradedAlgebra<F>, subsets: &Subsets, i: usize, j: usize) -> usize {
    let n = a.nvars();
    if i == 0 || i > n || j < i {
        return 0;
    }
    let src_deg = j - i;
    let src_dim = a.dim(src_deg);
    let tgt_dim = a.dim(src_deg + 1);
    if src_dim == 0 || tgt_dim == 0 {
        return 0;
    }
    let f = a.field();
    let target_len = subsets.by_size[i - 1].len() * tgt_dim;
    let mut ech = Echelon::new(f.clone(), target_len);
    for &mask in &subsets.by_size[i] {
        let members: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
        for b in 0..src_dim {
            let mut img: SparseVec<F::Elem> = Vec::new();
            for (t, &k) in members.iter().enumerate() {
                let block = subsets.index[(mask & !(1 << k)) as usize] * tgt_dim;
                let prod = a.mul_var(src_deg, k, &[(b, f.one())]);
                for (c, e) in prod {
                    img.push((block + c, if t % 2 == 0 { e } else { f.neg(&e) }));
                }
            }
            img.sort_unstable_by_key(|(c, _)| *c);
            ech.insert(&img);
            if ech.is_full() {
                return ech.rank();
            }
        }
    }
    ech.rank()
}

/// Betti numbers of an Artinian graded algebra `A = R/I` over `R`, from the
/// homology of `K(x_1..x_n) (x) A`.
pub fn betti_by_koszul_homology<F: Field>(a: &GradedAlgebra<F>) -> Result<BettiTable> {
    if !a.is_artinian() {
        return Err(Error::NonArtinian { bound: a.top() });
    }
    let n = a.nvars();
    let top = a.top();
    let subsets = Subsets::new(n);
    let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=i + top).map(move |j| (i, j))).collect();
    let ranks: std::collections::HashMap<(usize, usize), usize> = pairs
        .par_iter()
        .map(|&(i, j)| ((i, j), koszul_rank(a, &subsets, i, j)))
        .collect();
    let rank = |i: usize, j: usize| ranks.get(&(i, j)).copied().unwrap_or(0);
    let mut t = BettiTable::new(n);
    for i in 0..=n {
        let count = subsets.by_size[i].len();
        for j in i..=i + top {
            let c = count * a.dim(j - i);
            let h = c as i64 - rank(i, j) as i64 - rank(i + 1, j) as i64;
            if h < 0 {
                return Err(Error::Consistency(format!("negative homology at ({i},{j})")));
            }
            t.set(i, j, h as u64);
        }
    }
    Ok(t)
}

/// Graded free module `sum_t R(-a_t)` with degree-`j` coordinates laid out
/// block by block, each block in the monomial basis of `R_{j - a_t}`.
struct FreeModule {
    shifts: Vec<usize>,
}

impl FreeModule {
    fn offsets(&self, bases: &mut MonomialBases, j: usize) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.shifts.len() + 1);
        let mut acc = 0;
        off.push(0);
        for &a in &self.shifts {
            if j >= a {
                acc += bases.basis(j - a).len();
            }
            off.push(acc);
        }
        off
    }

    fn dim(&self, bases: &mut MonomialBases, j: usize) -> usize {
        *self.offsets(bases, j).last().expect("nonempty")
    }
}

/// A map `F -> G` of free modules: the image of each generator of `F` as a
/// vector in `G` of the generator's degree.
struct FreeMap<E> {
    source: FreeModule,
    images: Vec<SparseVec<E>>,
}

/// `m * v` for `v` in degree `j` of `module`.
fn shift_module_vec<E: Clone>(
    module: &FreeModule,
    bases: &mut MonomialBases,
    j: usize,
    m: &Monomial,
    v: &[(usize, E)],
) -> SparseVec<E> {
    let d = m.degree();
    let off_src = module.offsets(bases, j);
    let off_tgt = module.offsets(bases, j + d);
    let mut out = Vec::with_capacity(v.len());
    for (c, e) in v {
        let t = off_src.partition_point(|&o| o <= *c) - 1;
        let local = c - off_src[t];
        let a = module.shifts[t];
        let mon = bases.basis(j - a).get(local).mul(m);
        let idx = bases.basis(j + d - a).index_of(&mon).expect("degree matches");
        out.push((off_tgt[t] + idx, e.clone()));
    }
    out.sort_unstable_by_key(|(c, _)| *c);
    out
}

/// Degree-`j` matrix of a free map, as images of the source coordinates.
fn map_in_degree<F: Field>(
    map: &FreeMap<F::Elem>,
    target: &FreeModule,
    bases: &mut MonomialBases,
    j: usize,
) -> Vec<SparseVec<F::Elem>> {
    let mut out = Vec::new();
    for (t, &a) in map.source.shifts.iter().enumerate() {
        if j < a {
            continue;
        }
        let mons: Vec<Monomial> = bases.basis(j - a).monomials().to_vec();
        for m in &mons {
            out.push(shift_module_vec(target, bases, a, m, &map.images[t]));
        }
    }
    out
}

/// Betti numbers of `R/I` by building a minimal free resolution degree by
/// degree: at each step the kernel of the current map is computed in every
/// degree up to `i + s` and its minimal generators become the next module.
pub fn betti_by_iterated_syzygies<F: Field>(slices: &GradedIdealSlices<F>) -> Result<BettiTable> {
    let field = slices.field().clone();
    let n = slices.nvars();
    let s = slices
        .artinian_degree()
        .ok_or(Error::NonArtinian { bound: slices.bound() })?
        .saturating_sub(1);
    let mut bases = MonomialBases::new(n);
    let mut table = BettiTable::new(n);
    if slices.is_full(0) {
        return Ok(table);
    }
    table.set(0, 0, 1);

    // first step: minimal generators of I, as vectors of R = R(0)
    let mut shifts = Vec::new();
    let mut images = Vec::new();
    for j in 1..=s + 1 {
        let lower = slices.lower_part(j);
        let mut acc = lower.clone();
        for row in slices.slice(j).rows() {
            if acc.insert(&row).is_some() {
                shifts.push(j);
                images.push(row);
            }
        }
    }
    let mut target = FreeModule { shifts: vec![0] };
    let mut map = FreeMap {
        source: FreeModule { shifts },
        images,
    };
    let mut i = 1;
    loop {
        for &a in &map.source.shifts {
            table.add(i, a, 1);
        }
        if map.source.shifts.is_empty() || i == n {
            break;
        }
        // kernel of map in degrees up to i + 1 + s, minimal generators
        let lo = map.source.shifts.iter().copied().min().expect("nonempty") + 1;
        let mut next_shifts = Vec::new();
        let mut next_images = Vec::new();
        let mut prev_kernel: Option<(usize, Echelon<F>)> = None;
        for j in lo..=i + 1 + s {
            let cols = map_in_degree::<F>(&map, &target, &mut bases, j);
            let src_dim = map.source.dim(&mut bases, j);
            debug_assert_eq!(cols.len(), src_dim);
            let tgt_dim = target.dim(&mut bases, j);
            let kernel = crate::exactalg::kernel_of_images(&field, &cols, tgt_dim);
            let mut generated = Echelon::new(field.clone(), src_dim);
            if let Some((pj, pk)) = &prev_kernel {
                debug_assert_eq!(*pj + 1, j);
                for row in pk.rows() {
                    for k in 0..n {
                        let xk = Monomial::var_power(n, k, 1);
                        generated.insert(&shift_module_vec(&map.source, &mut bases, *pj, &xk, &row));
                    }
                }
            }
            for v in &kernel {
                if generated.insert(v).is_some() {
                    next_shifts.push(j);
                    next_images.push(v.clone());
                }
            }
            prev_kernel = Some((j, Echelon::from_rows(field.clone(), src_dim, kernel)));
        }
        target = FreeModule {
            shifts: map.source.shifts.clone(),
        };
        map = FreeMap {
            source: FreeModule { shifts: next_shifts },
            images: next_images,
        };
        i += 1;
    }
    Ok(table)
}
