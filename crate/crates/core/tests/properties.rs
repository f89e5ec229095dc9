use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use bettiforge::exactalg::{PrimeField, DEFAULT_PRIME};
use bettiforge::formulas::{betti_aci_odd, betti_gorenstein_odd, formula_hilbert, BettiTable, QuotientKind};
use bettiforge::hilbert::DegreeSequence;
use bettiforge::polyring::{monomials_of_degree, parse_polynomial, Polynomial};
use bettiforge::resolver::{aci_algebra, betti_by_koszul_homology, linked_algebra};

fn odd_sequence(max_n: usize) -> impl Strategy<Value = DegreeSequence> {
    (2..=max_n)
        .prop_flat_map(|n| (prop::collection::vec(2u32..=5, n), 2u32..=5))
        .prop_filter_map("needs odd t and minimal generation", |(d, e)| {
            let ds = DegreeSequence::with_ell(d, e).ok()?;
            (ds.total_t() % 2 == 1 && ds.is_minimally_generated()).then_some(ds)
        })
}

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn json_round_trip(ds in odd_sequence(5)) {
        for t in [betti_aci_odd(&ds).unwrap(), betti_gorenstein_odd(&ds).unwrap()] {
            prop_assert_eq!(BettiTable::from_json(&t.to_json()).unwrap(), t);
        }
    }

    #[test]
    fn tables_are_well_formed(ds in odd_sequence(5)) {
        for kind in [QuotientKind::Aci, QuotientKind::Gorenstein] {
            let t = match kind {
                QuotientKind::Aci => betti_aci_odd(&ds).unwrap(),
                QuotientKind::Gorenstein => betti_gorenstein_odd(&ds).unwrap(),
            };
            prop_assert_eq!(t.get(0, 0), 1);
            prop_assert_eq!(t.entries().filter(|&((i, _), _)| i == 0).count(), 1);
            let hs = formula_hilbert(&ds, kind).unwrap();
            prop_assert!(t.matches_numerator(&hs.numerator(ds.n())));
        }
    }

    #[test]
    fn gorenstein_tables_are_self_dual(ds in odd_sequence(5)) {
        let g = betti_gorenstein_odd(&ds).unwrap();
        let s = formula_hilbert(&ds, QuotientKind::Gorenstein).unwrap().socle_degree().unwrap();
        prop_assert!(g.is_self_dual(s + ds.n()));
    }

    #[test]
    fn formulas_match_oracle(ds in odd_sequence(3)) {
        let f = fp();
        prop_assert_eq!(betti_aci_odd(&ds).unwrap(), betti_by_koszul_homology(&aci_algebra(&f, &ds).unwrap()).unwrap());
        prop_assert_eq!(
            betti_gorenstein_odd(&ds).unwrap(),
            betti_by_koszul_homology(&linked_algebra(&f, &ds).unwrap()).unwrap()
        );
    }

    #[test]
    fn polynomial_text_round_trip(
        n in 1usize..=4,
        d in 0usize..=4,
        coeffs in prop::collection::vec((-20i64..=20, 1i64..=6), 40),
    ) {
        let terms = monomials_of_degree(n, d)
            .into_iter()
            .zip(coeffs)
            .map(|(m, (a, b))| (m, BigRational::new(BigInt::from(a), BigInt::from(b))));
        let p = Polynomial::from_terms(n, terms);
        prop_assert_eq!(parse_polynomial(&p.to_string(), n).unwrap(), p);
    }
}
