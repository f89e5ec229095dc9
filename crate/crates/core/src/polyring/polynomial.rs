use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::PolyError;
use crate::exactalg::{Field, SparseVec};
use crate::polyring::monomial::MonomialBasis;

/// Sparse polynomial with exact rational coefficients.
///
/// The same type carries elements of `R = k[x1..xn]` and of the dual ring
/// `S = k[X1..Xn]`; which one is meant is up to the caller. Results of
/// prime-field computations come back as integer representatives.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Polynomial::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        Polynomial::term(c, Monomial::one(n))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let n = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { n, terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Polynomial::term(BigRational::one(), m)
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(n: usize, i: usize) -> Self {
        Polynomial::monomial(Monomial::var_power(n, i, 1))
    }

    pub fn var_power(n: usize, i: usize, e: u32) -> Self {
        Polynomial::monomial(Monomial::var_power(n, i, e))
    }

    /// `x1 + ... + xn`.
    pub fn ell(n: usize) -> Self {
        Polynomial::linear(&vec![BigRational::one(); n])
    }

    pub fn linear(coeffs: &[BigRational]) -> Self {
        let n = coeffs.len();
        let mut p = Polynomial::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var_power(n, i, 1), c.clone());
        }
        p
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Polynomial::zero(n);
        for (m, c) in terms {
            assert_eq!(m.nvars(), n, "monomial from a different ring");
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Highest total degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Degree of a homogeneous polynomial; `Ok(None)` for zero.
    pub fn homogeneous_degree(&self) -> Result<Option<usize>, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous(self.to_string()));
        }
        Ok(self.degree())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::RingMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = Polynomial::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(t, v)| (t.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The apolarity action `self ∘ form`: each `x_i` acts on the dual ring as
    /// the partial derivative in `X_i`, without divided powers.
    pub fn contract(&self, form: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(form)?;
        let mut out = Polynomial::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &form.terms {
                if let Some(rest) = a.quotient_of(b) {
                    let mut factor = BigInt::one();
                    for i in 0..self.n {
                        for k in 0..a.exp(i) {
                            factor *= BigInt::from(b.exp(i) - k);
                        }
                    }
                    out.add_term(rest, ca * cb * BigRational::from_integer(factor));
                }
            }
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.n);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            acc += v;
        }
        acc
    }

    /// Rename variables: `x_i` goes to `x_{perm[i]}`.
    pub fn permuted(&self, perm: &[usize]) -> Polynomial {
        Polynomial::from_terms(self.n, self.terms.iter().map(|(m, c)| (m.permuted(perm), c.clone())))
    }

    /// Scale so the leading coefficient is positive; used to compare up to sign.
    pub fn sign_normalized(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Scale so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Map every coefficient into `field`.
    pub fn reduce_into<F: Field>(&self, field: &F) -> Result<Vec<(Monomial, F::Elem)>, PolyError> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = field.from_rational(c)?;
            if !field.is_zero(&e) {
                out.push((m.clone(), e));
            }
        }
        Ok(out)
    }

    /// Canonical representative over `field` (identity over the rationals).
    pub fn canonical_in<F: Field>(&self, field: &F) -> Result<Polynomial, PolyError> {
        Ok(Polynomial::from_terms(
            self.n,
            self.reduce_into(field)?
                .into_iter()
                .map(|(m, e)| (m, field.to_rational(&e))),
        ))
    }

    pub fn is_zero_in<F: Field>(&self, field: &F) -> Result<bool, PolyError> {
        Ok(self.reduce_into(field)?.is_empty())
    }

    /// Coordinates in a degree basis. All terms must have that basis' degree.
    pub fn to_sparse<F: Field>(&self, field: &F, basis: &MonomialBasis) -> Result<SparseVec<F::Elem>, PolyError> {
        let mut out: SparseVec<F::Elem> = Vec::with_capacity(self.terms.len());
        for (m, e) in self.reduce_into(field)? {
            let idx = basis.index_of(&m).ok_or_else(|| PolyError::DegreeMismatch {
                expected: basis.degree(),
                found: m.degree(),
            })?;
            out.push((idx, e));
        }
        out.sort_by_key(|(c, _)| *c);
        Ok(out)
    }

    pub fn from_sparse<F: Field>(field: &F, basis: &MonomialBasis, n: usize, v: &[(usize, F::Elem)]) -> Polynomial {
        Polynomial::from_terms(n, v.iter().map(|(i, e)| (basis.get(*i).clone(), field.to_rational(e))))
    }

    /// Render with the given variable prefix (`x` for R, `X` for the dual ring).
    pub fn render(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.render(prefix);
            if mono == "1" {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("x"))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(&-rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Multiply by a checked product, failing on mismatched rings.
pub fn multiply(p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PolyError> {
    p.try_mul(q)
}

/// `f ∘ form` in the dual ring.
pub fn contract(f: &Polynomial, form: &Polynomial) -> Result<Polynomial, PolyError> {
    f.contract(form)
}

/// `(c1 x1 + ... + cn xn)^d` by multinomial expansion.
pub fn power_of_linear(coeffs: &[BigRational], d: u32) -> Polynomial {
    let n = coeffs.len();
    let mut out = Polynomial::zero(n);
    if n == 0 {
        return if d == 0 { Polynomial::one(0) } else { out };
    }
    let mut fact = vec![BigInt::one()];
    for k in 1..=d {
        let next = &fact[k as usize - 1] * BigInt::from(k);
        fact.push(next);
    }
    for m in super::monomial::monomials_of_degree(n, d as usize) {
        let mut c = BigRational::from_integer(fact[d as usize].clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            c /= BigRational::from_integer(fact[e as usize].clone());
            for _ in 0..e {
                c *= &coeffs[i];
            }
        }
        out.add_term(m, c);
    }
    out
}

/// Elementary symmetric polynomial `e_k` in `n` variables.
pub fn elementary_symmetric(n: usize, k: usize) -> Polynomial {
    let mut out = Polynomial::zero(n);
    for m in super::monomial::monomials_of_degree(n, k) {
        if m.is_squarefree() {
            out.add_term(m, BigRational::one());
        }
    }
    out
}
