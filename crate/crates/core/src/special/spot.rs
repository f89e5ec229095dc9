use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{PrimeField, PARANOID_PRIME};
use crate::hilbert::froberg_series;
use crate::polyring::{monomials_of_degree, Polynomial};
use crate::resolver::{ideal_slices, is_level, socle_dims, GradedAlgebra};

/// Outcome of one random draw that reached the expected Hilbert function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub degrees: Vec<u32>,
    pub seed: u64,
    pub attempts: usize,
    pub hilbert: Vec<i64>,
    pub socle: Vec<usize>,
    pub level: bool,
}

pub const DEFAULT_RETRIES: usize = 5;

fn random_form(rng: &mut ChaCha8Rng, n: usize, d: u32, p: u64) -> Polynomial {
    Polynomial::from_terms(
        n,
        monomials_of_degree(n, d as usize)
            .into_iter()
            .map(|m| (m, BigRational::from_integer(rng.gen_range(0..p).into()))),
    )
}

/// Draw `n + 1` dense forms of the given degrees over the large prime field,
/// redrawing while the quotient misses the truncated Froberg series, and
/// report whether the socle sits in one degree.
pub fn random_generic_level_spotcheck(n: usize, degrees: &[u32], seed: u64, retries: usize) -> Result<SpotCheck> {
    if degrees.len() != n + 1 {
        return Err(Error::InvalidDegrees(format!(
            "need {} degrees, got {}",
            n + 1,
            degrees.len()
        )));
    }
    if !degrees.contains(&2) {
        return Err(Error::NoQuadric(degrees.to_vec()));
    }
    let expected = froberg_series(n, degrees)?.series;
    let field = PrimeField::new(PARANOID_PRIME)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=retries.max(1) {
        let gens: Vec<Polynomial> = degrees
            .iter()
            .map(|&d| random_form(&mut rng, n, d, PARANOID_PRIME))
            .collect();
        let Ok(slices) = ideal_slices(&field, n, &gens) else {
            continue;
        };
        let hilbert = slices.quotient_dims();
        let trimmed = crate::hilbert::HilbertSeries::new(hilbert.clone());
        if trimmed != expected {
            continue;
        }
        let socle = socle_dims(&GradedAlgebra::from_slices(&slices));
        return Ok(SpotCheck {
            degrees: degrees.to_vec(),
            seed,
            attempts: attempt,
            hilbert: trimmed.coeffs().to_vec(),
            level: is_level(&socle),
            socle,
        });
    }
    Err(Error::RetriesExhausted { retries })
}
