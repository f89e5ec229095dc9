//! Sparse graded polynomials, the contraction action on the dual ring, and
//! Macaulay matrices.

pub mod monomial;
pub mod parse;
pub mod polynomial;

pub use monomial::{binomial, count_of_degree, monomials_of_degree, Monomial, MonomialBases, MonomialBasis};
pub use parse::{parse_homogeneous, parse_polynomial, parse_polynomial_list};
pub use polynomial::{contract, elementary_symmetric, multiply, power_of_linear, Polynomial};

use thiserror::Error;

use crate::exactalg::{ExactAlgError, ExactMatrix, Field, FieldElement, FieldSpec, SparseVec};
use crate::with_field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomials live in rings with {left} and {right} variables")]
    RingMismatch { left: usize, right: usize },
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cannot parse `{input}`: {message}")]
    Parse { input: String, message: String },
    #[error(transparent)]
    Field(#[from] ExactAlgError),
}

/// Columns of the degree-`j` Macaulay matrix as sparse vectors in the
/// monomial basis of `R_j`: one column `m * g` per generator `g` and monomial
/// `m` of degree `j - deg g`, generators in input order and monomials largest first.
pub fn macaulay_columns<F: Field>(
    field: &F,
    generators: &[Polynomial],
    basis: &MonomialBasis,
) -> Result<Vec<SparseVec<F::Elem>>, PolyError> {
    let j = basis.degree();
    let mut cols = Vec::new();
    for g in generators {
        let Some(d) = g.homogeneous_degree()? else { continue };
        if d > j {
            continue;
        }
        let n = g.nvars();
        let reduced = g.reduce_into(field)?;
        for m in monomials_of_degree(n, j - d) {
            let mut col: SparseVec<F::Elem> = reduced
                .iter()
                .map(|(t, e)| (basis.index_of(&t.mul(&m)).expect("degree checked"), e.clone()))
                .collect();
            col.sort_by_key(|(c, _)| *c);
            cols.push(col);
        }
    }
    Ok(cols)
}

/// The Macaulay matrix of `generators` in degree `j`: rows are the degree-`j`
/// monomials (largest first), columns are the products `m * g`. Its column
/// space is `I_j`.
pub fn macaulay_matrix(
    generators: &[Polynomial],
    nvars: usize,
    j: usize,
    spec: FieldSpec,
) -> Result<ExactMatrix, PolyError> {
    for g in generators {
        if g.nvars() != nvars {
            return Err(PolyError::RingMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
        g.homogeneous_degree()?;
    }
    let basis = MonomialBasis::new(nvars, j);
    with_field!(spec, f => {
        let cols = macaulay_columns(&f, generators, &basis)?;
        let mut entries = Vec::new();
        for (c, col) in cols.iter().enumerate() {
            for (r, e) in col {
                entries.push((*r, c, FieldElement::from_rational_in(spec, &f.to_rational(e))?));
            }
        }
        Ok(ExactMatrix::from_entries(basis.len(), cols.len(), entries)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rref;

    #[test]
    fn single_square_in_degree_three() {
        let g = vec![Polynomial::var_power(2, 0, 2)];
        let m = macaulay_matrix(&g, 2, 3, FieldSpec::Rational).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (4, 2));
        // columns x1^3 and x1^2*x2
        assert!(m.get(0, 0).is_some());
        assert!(m.get(1, 1).is_some());
    }

    #[test]
    fn empty_generators() {
        let m = macaulay_matrix(&[], 3, 4, FieldSpec::default_prime()).unwrap();
        assert_eq!(m.ncols(), 0);
        assert_eq!(m.nrows(), 15);
    }

    #[test]
    fn two_squares_degree_two() {
        let g = vec![Polynomial::var_power(2, 0, 2), Polynomial::var_power(2, 1, 2)];
        let m = macaulay_matrix(&g, 2, 2, FieldSpec::Rational).unwrap();
        let r = rref(&m).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(m.nrows() - r.rank, 1);
    }

    #[test]
    fn non_homogeneous_rejected() {
        let g = vec![&Polynomial::var(2, 0) + &Polynomial::one(2)];
        assert!(matches!(
            macaulay_matrix(&g, 2, 2, FieldSpec::Rational),
            Err(PolyError::NotHomogeneous(_))
        ));
    }
}
