use dfsets_core::character::v_of;
use dfsets_core::fox::{fox_alexander_matrix, Presentation};
use dfsets_core::jump::tau_d;
use dfsets_core::laurent::{admissible_tau1, hypersurface_positive_dim, restrict_to_coset};
use dfsets_core::{Arrangement, Bounds, FgAbGroup, LaurentPolynomial, Subgroup, TorsionCharacter};
use proptest::prelude::*;

fn poly(n: usize) -> impl Strategy<Value = LaurentPolynomial> {
    proptest::collection::vec((proptest::collection::vec(-2i64..=2, n), -3i64..=3), 0..=4)
        .prop_map(move |t| LaurentPolynomial::from_int_terms(&FgAbGroup::free(n), &t).unwrap())
}

fn word(gens: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec((1..=gens as i64, any::<bool>()), 0..=8)
        .prop_map(|v| v.into_iter().map(|(g, inv)| if inv { -g } else { g }).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fox_identity(gens in 1usize..=3, rels in proptest::collection::vec(word(3), 1..=3)) {
        let words: Vec<String> = rels
            .iter()
            .map(|r| {
                let letters: Vec<String> = r
                    .iter()
                    .filter(|l| l.unsigned_abs() as usize <= gens)
                    .map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) })
                    .collect();
                if letters.is_empty() { "1".to_string() } else { letters.join(" ") }
            })
            .collect();
        let refs: Vec<&str> = words.iter().map(String::as_str).collect();
        let p = Presentation::parse(gens, &refs).unwrap();
        let h = p.abelianization().clone();
        for row in fox_alexander_matrix(&p) {
            let mut acc = LaurentPolynomial::zero(&h);
            for (i, e) in row.iter().enumerate() {
                acc = acc.add(&e.mul(&p.generator_minus_one(i)).unwrap()).unwrap();
            }
            prop_assert!(acc.is_zero());
        }
    }

    #[test]
    fn binomial_products_match_xi_one(
        pairs in proptest::collection::vec(
            (proptest::collection::vec(-2i64..=2, 3), proptest::collection::vec(-2i64..=2, 3)),
            1..=3,
        ),
    ) {
        let h = FgAbGroup::free(3);
        let mut f = LaurentPolynomial::one(&h);
        let mut w = Arrangement::new(&h);
        for (a, b) in &pairs {
            prop_assume!(a != b);
            let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            let binomial = LaurentPolynomial::from_int_terms(&h, &[(a.clone(), 1), (b.clone(), -1)]).unwrap();
            f = f.mul(&binomial).unwrap();
            w = w.with_component(v_of(&Subgroup::from_i64(&h, &[diff]).unwrap())).unwrap();
        }
        let expected = tau_d(&w, 1, &Bounds::default()).unwrap();
        prop_assert_eq!(admissible_tau1(&f, &Bounds::default()).unwrap(), expected);
    }

    #[test]
    fn restriction_is_multiplicative(
        f in poly(3),
        g in poly(3),
        ker in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 3), 0..=2),
        alpha in proptest::collection::vec((0i64..6, proptest::sample::select(vec![1i64, 2, 3, 6])), 3),
    ) {
        let h = FgAbGroup::free(3);
        let k = Subgroup::from_i64(&h, &ker).unwrap();
        let a = TorsionCharacter::from_fractions(&h, &alpha).unwrap();
        let lhs = restrict_to_coset(&f.mul(&g).unwrap(), &k, &a).unwrap();
        let rhs = restrict_to_coset(&f, &k, &a).unwrap().mul(&restrict_to_coset(&g, &k, &a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = restrict_to_coset(&f.add(&g).unwrap(), &k, &a).unwrap();
        let parts = restrict_to_coset(&f, &k, &a).unwrap().add(&restrict_to_coset(&g, &k, &a).unwrap()).unwrap();
        prop_assert_eq!(sum, parts);
    }

    #[test]
    fn positive_dimension_is_unit_invariant(
        n in 0usize..=3,
        terms in proptest::collection::vec((proptest::collection::vec(-2i64..=2, 3), -3i64..=3), 0..=4),
        shift in proptest::collection::vec(-3i64..=3, 3),
        c in prop_oneof![Just(1i64), Just(-1), Just(2)],
    ) {
        let h = FgAbGroup::free(n);
        let terms: Vec<(Vec<i64>, i64)> = terms.into_iter().map(|(e, c)| (e[..n].to_vec(), c)).collect();
        let f = LaurentPolynomial::from_int_terms(&h, &terms).unwrap();
        let m = LaurentPolynomial::from_int_terms(&h, &[(shift[..n].to_vec(), c)]).unwrap();
        prop_assert_eq!(hypersurface_positive_dim(&f), hypersurface_positive_dim(&f.mul(&m).unwrap()));
    }
}
