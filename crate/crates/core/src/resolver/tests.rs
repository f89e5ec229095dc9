use super::*;
use crate::exactalg::{PrimeField, RationalField, DEFAULT_PRIME};
use crate::formulas::{betti_aci_odd, betti_gorenstein_odd, koszul_betti};
use crate::hilbert::gorenstein_linked_hilbert;
use crate::polyring::parse_polynomial_list;

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

fn gens(s: &str, n: usize) -> Vec<Polynomial> {
    parse_polynomial_list(s, n).unwrap()
}

fn ds(d: &[u32], e: u32) -> DegreeSequence {
    DegreeSequence::with_ell(d.to_vec(), e).unwrap()
}

#[test]
fn hilbert_of_small_quotients() {
    let h = quotient_hilbert(&RationalField, 2, &gens("x1^2, x2^2", 2)).unwrap();
    assert_eq!(h.coeffs(), &[1, 2, 1]);
    let h = quotient_hilbert(&fp(), 3, &gens("x1^2, x2^2, x3^2, (x1+x2+x3)^2", 3)).unwrap();
    assert_eq!(h.coeffs(), &[1, 3, 2]);
    assert!(matches!(
        quotient_hilbert(&fp(), 2, &[]),
        Err(Error::NonArtinian { .. })
    ));
    let (vals, done) = quotient_hilbert_bounded(&fp(), 2, &gens("x1^2", 2), 4).unwrap();
    assert_eq!(vals, vec![1, 2, 2, 2, 2]);
    assert!(!done);
}

#[test]
fn minimal_generators_drop_redundancy() {
    let s = GradedIdealSlices::from_generators(&fp(), 2, &gens("x1^2, x1^3, x2^5", 2), 6).unwrap();
    let mg = minimal_generators(&s);
    assert_eq!(mg.len(), 2);
    assert_eq!(mg[0].0, 2);
    assert_eq!(mg[0].1.to_string(), "x1^2");
    let g = linked_algebra(&fp(), &ds(&[2, 2, 2], 1)).unwrap();
    assert_eq!(g.dims(), &[1, 3, 1]);
}

#[test]
fn colon_examples() {
    let c = colon_ideal(&fp(), 2, &gens("x1^2, x2^2", 2), &gens("x1*x2", 2)[0]).unwrap();
    assert!(!c.is_full(0));
    assert!(c.is_full(1));
    let j = gens("x1^2, x2^2", 2);
    let c1 = colon_ideal(&fp(), 2, &j, &Polynomial::one(2)).unwrap();
    let direct = ideal_slices(&fp(), 2, &j).unwrap();
    assert!(c1.same_slices(&direct));
    // the colon by l^2 in four variables is symmetric
    let j4 = gens("x1^2, x2^2, x3^2, x4^2", 4);
    let c = colon_ideal(&fp(), 4, &j4, &Polynomial::ell(4).pow(2)).unwrap();
    let h = HilbertSeries::new(c.quotient_dims());
    assert_eq!(h, gorenstein_linked_hilbert(&ds(&[2, 2, 2, 2], 2)).unwrap());
    assert!(h.is_symmetric());
}

#[test]
fn colon_matches_fast_linked_algebra() {
    let d = ds(&[3, 3, 4], 3);
    let j: Vec<Polynomial> = sequence_generators(&DegreeSequence::ci(vec![3, 3, 4]).unwrap());
    let c = colon_ideal(&fp(), 3, &j, &Polynomial::ell(3).pow(3)).unwrap();
    let fast = linked_algebra(&fp(), &d).unwrap();
    assert_eq!(HilbertSeries::new(c.quotient_dims()), algebra_hilbert(&fast));
    let slow = betti_of_slices(&c, OracleMethod::KoszulHomology).unwrap();
    assert_eq!(slow, betti_by_koszul_homology(&fast).unwrap());
}

#[test]
fn complete_intersection_is_koszul() {
    for degrees in [vec![2, 2], vec![2, 3, 4], vec![3, 3, 3]] {
        let n = degrees.len();
        let g = sequence_generators(&DegreeSequence::ci(degrees.clone()).unwrap());
        let expected = koszul_betti(&degrees);
        for m in [OracleMethod::KoszulHomology, OracleMethod::IteratedSyzygies] {
            assert_eq!(
                minimal_betti_oracle(&fp(), n, &g, m).unwrap(),
                expected,
                "{degrees:?} {m}"
            );
        }
        let a = ci_algebra(&fp(), &degrees);
        let soc = socle_dims(&a);
        assert!(is_level(&soc));
        assert_eq!(soc.last(), Some(&1));
    }
}

#[test]
fn cubes_example_both_methods() {
    let d = ds(&[3, 3, 3, 3], 3);
    let g = sequence_generators(&d);
    let expected = BettiTable::from_entries(
        4,
        [
            ((0, 0), 1),
            ((1, 3), 5),
            ((2, 6), 16),
            ((2, 7), 1),
            ((3, 7), 10),
            ((3, 8), 10),
            ((4, 8), 1),
            ((4, 9), 6),
        ],
    );
    let fast = betti_by_koszul_homology(&aci_algebra(&fp(), &d).unwrap()).unwrap();
    assert_eq!(fast.totals(), vec![1, 5, 17, 20, 7]);
    assert_eq!(fast, expected);
    let slow = minimal_betti_oracle(&fp(), 4, &g, OracleMethod::IteratedSyzygies).unwrap();
    assert_eq!(slow, expected);
    let soc = socle_dims(&aci_algebra(&fp(), &d).unwrap());
    assert_eq!(soc, vec![0, 0, 0, 0, 1, 6]);
    assert!(!is_level(&soc));
}

#[test]
fn formulas_agree_with_oracle_on_small_cases() {
    for (d, e) in [
        (vec![2, 2], 2),
        (vec![2, 2, 2], 1),
        (vec![2, 2, 3], 2),
        (vec![3, 3, 3], 2),
        (vec![2, 3, 4], 2),
        (vec![3, 3, 3], 4),
    ] {
        let s = ds(&d, e);
        if let Ok(t) = betti_aci_odd(&s) {
            let a = aci_algebra(&fp(), &s).unwrap();
            assert_eq!(betti_by_koszul_homology(&a).unwrap(), t, "aci {s}");
            let gens = sequence_generators(&s);
            let q = minimal_betti_oracle(&RationalField, s.n(), &gens, OracleMethod::IteratedSyzygies).unwrap();
            assert_eq!(q, t, "aci syzygies {s}");
        }
        if let Ok(t) = betti_gorenstein_odd(&s) {
            let a = linked_algebra(&fp(), &s).unwrap();
            assert_eq!(betti_by_koszul_homology(&a).unwrap(), t, "gor {s}");
        }
    }
}

#[test]
fn syzygies_of_complete_intersection() {
    let g = gens("x1^2, x2^2", 2);
    assert!(syzygies_in_degree(&fp(), 2, &g, 3).unwrap().is_empty());
    let rel = syzygies_in_degree(&RationalField, 2, &g, 4).unwrap();
    assert_eq!(rel.len(), 1);
    assert!(rel[0].holds_in(&RationalField, &g).unwrap());
    assert!(rel[0].components.iter().all(|p| p.num_terms() == 1));
    let bad = RelationVector {
        components: vec![Polynomial::one(2), Polynomial::zero(2)],
    };
    assert!(!bad.holds_in(&RationalField, &g).unwrap());
    assert!(matches!(bad.evaluate(&g[..1]), Err(Error::InvalidRelation(_))));
}

#[test]
fn syzygy_count_matches_table() {
    let g = gens("x1^2, x2^2, x3^2, (x1+x2+x3)^2", 3);
    let t = minimal_betti_oracle(&fp(), 3, &g, OracleMethod::KoszulHomology).unwrap();
    let rel = syzygies_in_degree(&fp(), 3, &g, 3).unwrap();
    assert_eq!(rel.len() as u64, t.get(2, 3));
    assert!(!rel.is_empty());
}

#[test]
fn membership_examples() {
    let n = 3;
    assert!(membership(&fp(), n, &gens("x1*x2", n)[0], &gens("x1", n)).unwrap());
    assert!(membership(&fp(), n, &Polynomial::zero(n), &gens("x1", n)).unwrap());
    let ci = gens("x1^2, x2^2, x3^2", n);
    assert!(!membership(&fp(), n, &Polynomial::ell(n).pow(3), &ci).unwrap());
    assert!(membership(&fp(), n, &Polynomial::ell(n).pow(4), &ci).unwrap());
}

#[test]
fn oracle_method_parsing() {
    assert_eq!("koszul".parse::<OracleMethod>().unwrap(), OracleMethod::KoszulHomology);
    assert_eq!(
        "syzygies".parse::<OracleMethod>().unwrap(),
        OracleMethod::IteratedSyzygies
    );
    assert!("other".parse::<OracleMethod>().is_err());
    assert_eq!(OracleMethod::default().to_string(), "koszul");
}

#[test]
fn unit_ideal_has_empty_table() {
    let t = minimal_betti_oracle(&fp(), 2, &[Polynomial::one(2)], OracleMethod::IteratedSyzygies).unwrap();
    assert!(t.is_empty());
}

#[test]
fn rewrite_algebra_with_tails() {
    let tail = gens("x2^2", 2).remove(0);
    let r = RewriteAlgebra::with_relations(2, vec![(0, 2, tail)]);
    let nf = r.normal_form(&crate::polyring::Monomial::new(vec![3, 1]));
    assert_eq!(nf.len(), 1);
    assert_eq!(nf[0].0, crate::polyring::Monomial::new(vec![1, 3]));
    let a = r.build(&fp(), 5);
    assert_eq!(a.dims(), &[1, 2, 2, 2, 2, 2]);
    let slices = GradedIdealSlices::from_generators(&fp(), 2, &gens("x1^2 - x2^2", 2), 5).unwrap();
    assert_eq!(
        slices.quotient_dims(),
        a.dims().iter().map(|&d| d as i64).collect::<Vec<_>>()
    );
    assert_eq!(r.coordinates(&fp(), &gens("x1^2", 2)[0]).unwrap().len(), 1);
}
