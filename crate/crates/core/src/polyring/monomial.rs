use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponent vector. Ordered by graded lex with `x1 > x2 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    /// `x_i^e` (0-based variable index).
    pub fn var_power(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut v = self.0.clone();
        v[i] += 1;
        Monomial(v)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Variables (0-based) with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut v = vec![0; self.0.len()];
        for (i, &e) in self.0.iter().enumerate() {
            v[perm[i]] = e;
        }
        Monomial(v)
    }

    /// Render with the given variable prefix (`x` or `X`), 1-based indices.
    pub fn render(&self, prefix: &str) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("{prefix}{}", i + 1)),
                _ => parts.push(format!("{prefix}{}^{e}", i + 1)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

/// All monomials of degree `j` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, j: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    if n == 0 {
        if j == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    let mut cur = vec![0u32; n];
    fill(&mut cur, 0, j as u32, &mut out);
    out
}

fn fill(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Monomial>) {
    let n = cur.len();
    if i == n - 1 {
        cur[i] = left;
        out.push(Monomial(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

/// `C(n + j - 1, j)`, the dimension of `R_j`.
pub fn count_of_degree(n: usize, j: usize) -> usize {
    if n == 0 {
        return usize::from(j == 0);
    }
    binomial((n + j - 1) as u64, j as u64) as usize
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Indexed basis of `R_j`: monomials largest first, with reverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: usize) -> Self {
        let monomials = monomials_of_degree(n, degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis {
            degree,
            monomials,
            index,
        }
    }

    /// Basis of a subspace spanned by the given monomials, in the given order.
    pub fn from_monomials(degree: usize, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonomialBasis {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Lazily grown family of monomial bases, one per degree.
#[derive(Clone, Debug)]
pub struct MonomialBases {
    n: usize,
    bases: Vec<MonomialBasis>,
}

impl MonomialBases {
    pub fn new(n: usize) -> Self {
        MonomialBases { n, bases: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn ensure(&mut self, j: usize) {
        while self.bases.len() <= j {
            let d = self.bases.len();
            self.bases.push(MonomialBasis::new(self.n, d));
        }
    }

    /// Requires a prior `ensure(j)`.
    pub fn get(&self, j: usize) -> &MonomialBasis {
        &self.bases[j]
    }

    pub fn basis(&mut self, j: usize) -> &MonomialBasis {
        self.ensure(j);
        &self.bases[j]
    }
}
