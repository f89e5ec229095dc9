use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::Field;
use crate::polyring::{binomial, Monomial, Polynomial};
use crate::resolver::{colon_ideal, membership, GradedIdealSlices};

fn check_range(n: usize, d: usize) -> Result<()> {
    if d == 0 || d >= n {
        return Err(Error::OutOfRange(format!("need 1 <= d <= n - 1, got d = {d}, n = {n}")));
    }
    Ok(())
}

/// `floor((n - d) / 2)`.
pub fn half_gap(n: usize, d: usize) -> usize {
    (n - d) / 2
}

/// Product of `x_{v0} - x_{v1}`, `x_{v2} - x_{v3}`, ... over consecutive
/// pairs of `vars`, times the last variable when `vars` has odd length.
fn paired_product(n: usize, vars: &[usize]) -> Polynomial {
    let mut acc = Polynomial::one(n);
    for pair in vars.chunks(2) {
        let f = match pair {
            [a, b] => &Polynomial::var(n, *a) - &Polynomial::var(n, *b),
            [a] => Polynomial::var(n, *a),
            _ => unreachable!(),
        };
        acc = &acc * &f;
    }
    acc
}

/// Ordered selections of `k` distinct indices from `0..n`.
fn arrangements(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, k, used, cur, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut vec![false; n], &mut Vec::with_capacity(k), &mut out);
    out
}

/// The squares `x_i^2` followed by the distinct (up to sign) permutations of
/// `(x_1 - x_2)(x_3 - x_4)...`: `l + 1` factors, the last one a bare
/// variable when `n + d` is even.
pub fn esym_annihilator_generators(n: usize, d: usize) -> Result<Vec<Polynomial>> {
    check_range(n, d)?;
    let l = half_gap(n, d);
    let used = if (n + d) % 2 == 1 { 2 * (l + 1) } else { 2 * l + 1 };
    let mut orbit: BTreeMap<String, Polynomial> = BTreeMap::new();
    for sel in arrangements(n, used) {
        let p = paired_product(n, &sel).sign_normalized();
        orbit.entry(p.to_string()).or_insert(p);
    }
    let mut out: Vec<Polynomial> = (0..n).map(|i| Polynomial::var_power(n, i, 2)).collect();
    out.extend(orbit.into_values());
    Ok(out)
}

/// Each product lies in `(x_i^2) : l^d`, and the generated ideal equals the
/// colon ideal in every degree.
pub fn check_esym_generators<F: Field>(field: &F, n: usize, d: usize) -> Result<bool> {
    let gens = esym_annihilator_generators(n, d)?;
    let squares: Vec<Polynomial> = gens[..n].to_vec();
    let ld = Polynomial::ell(n).pow(d as u32);
    for g in &gens[n..] {
        if !membership(field, n, &(g * &ld), &squares)? {
            return Ok(false);
        }
    }
    let colon = colon_ideal(field, n, &squares, &ld)?;
    let generated = GradedIdealSlices::from_generators(field, n, &gens, colon.bound())?;
    Ok(generated.same_slices(&colon))
}

/// Squarefree `x_{i_1} ... x_{i_{l+1}}`, `i_1 < ... < i_{l+1}` (1-based),
/// with `i_j <= d + 2(j - 1)`.
pub fn sqfree_leading_set(n: usize, d: usize) -> Result<Vec<Monomial>> {
    check_range(n, d)?;
    let k = half_gap(n, d) + 1;
    let mut out = Vec::new();
    fn rec(n: usize, d: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Monomial>) {
        if cur.len() == k {
            let mut e = vec![0u32; n];
            for &i in cur.iter() {
                e[i - 1] = 1;
            }
            out.push(Monomial::new(e));
            return;
        }
        let j = cur.len() + 1;
        let cap = (d + 2 * (j - 1)).min(n);
        for i in start..=cap {
            cur.push(i);
            rec(n, d, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, d, k, 1, &mut Vec::new(), &mut out);
    let expected = lattice_path_count(n, d)?;
    if out.len() as u64 != expected {
        return Err(Error::Consistency(format!(
            "{} leading monomials, lattice paths give {expected}",
            out.len()
        )));
    }
    Ok(out)
}

/// `C(n, l + 1) - C(n, l + 1 + d)`.
pub fn lattice_path_count(n: usize, d: usize) -> Result<u64> {
    check_range(n, d)?;
    let k = (half_gap(n, d) + 1) as u64;
    Ok(binomial(n as u64, k) - binomial(n as u64, k + d as u64))
}
