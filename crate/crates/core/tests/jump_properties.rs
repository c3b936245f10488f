use dfsets_core::gamma::fiber_representatives;
use dfsets_core::jump::{
    maximal_translated_tori, omega_closed_form, sigma_member, theta_member, u_member, upsilon_member, xi_d,
    Variety,
};
use dfsets_core::oracle::oracle_xi;
use dfsets_core::{Arrangement, Bounds, FgAbGroup, Homomorphism, Subgroup, TorsionCharacter, TranslatedSubgroup};
use proptest::prelude::*;

type Gens = Vec<Vec<i64>>;
type Translation = Vec<(i64, i64)>;

fn subgroup_gens(n: usize, max_gens: usize, entries: i64) -> impl Strategy<Value = Gens> {
    proptest::collection::vec(proptest::collection::vec(-entries..=entries, n), 1..=max_gens)
}

fn translation(n: usize, dens: Vec<i64>) -> impl Strategy<Value = Translation> {
    proptest::collection::vec((0i64..12, proptest::sample::select(dens)), n)
}

fn component(n: usize, dens: Vec<i64>) -> impl Strategy<Value = (Gens, Translation)> {
    (subgroup_gens(n, n - 1, 3), translation(n, dens))
}

fn arrangement(n: usize, comps: &[(Gens, Translation)], deleted: &[Gens]) -> Arrangement {
    let h = FgAbGroup::free(n);
    let mut w = Arrangement::new(&h);
    for (g, t) in comps {
        let xi = Subgroup::from_i64(&h, g).unwrap();
        let eta = TorsionCharacter::from_fractions(&h, t).unwrap();
        w = w.with_component(TranslatedSubgroup::new(xi, eta).unwrap()).unwrap();
    }
    for g in deleted {
        w = w.with_deleted(Subgroup::from_i64(&h, g).unwrap()).unwrap();
    }
    w
}

fn arrangement_strategy(n: usize) -> impl Strategy<Value = Arrangement> {
    (
        proptest::collection::vec(component(n, vec![1, 2, 3, 4]), 1..=3),
        proptest::collection::vec(subgroup_gens(n, n - 1, 3), 0..=1),
    )
        .prop_map(move |(c, d)| arrangement(n, &c, &d))
}

/// Target groups of rank 1 with small torsion.
fn target() -> impl Strategy<Value = FgAbGroup> {
    prop_oneof![
        Just(FgAbGroup::free(1)),
        Just(FgAbGroup::new(1, vec![2]).unwrap()),
        Just(FgAbGroup::new(1, vec![3]).unwrap()),
        Just(FgAbGroup::new(1, vec![4]).unwrap()),
    ]
}

/// An epimorphism `ℤ^n ↠ A` built from a primitive row and a torsion row.
fn epimorphism(n: usize, a: &FgAbGroup, free: &[i64], tors: &[i64]) -> Option<Homomorphism> {
    let h = FgAbGroup::free(n);
    let mut rows = vec![free.to_vec()];
    if a.dim() > 1 {
        rows.push(tors.to_vec());
    }
    let nu = Homomorphism::from_i64(&h, a, &rows).ok()?;
    nu.is_epimorphism().then_some(nu)
}

fn b() -> Bounds {
    Bounds::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn xi_monotone(w in arrangement_strategy(3)) {
        for (d, m) in [(1, 2), (1, 3), (2, 4), (2, 6), (3, 6), (4, 12)] {
            let small = xi_d(&w, d, &b()).unwrap();
            let big = xi_d(&w, m, &b()).unwrap();
            prop_assert!(small.iter().all(|x| big.contains(x)), "d = {}, m = {}", d, m);
        }
    }

    #[test]
    fn xi_union_rule(w1 in arrangement_strategy(3), w2 in arrangement_strategy(3), d in 1u64..=6) {
        let mut w = w1.clone();
        w.components.extend(w2.components.clone());
        w.deleted.extend(w2.deleted.clone());
        let union = xi_d(&w, d, &b()).unwrap();
        let mut parts = xi_d(&w1, d, &b()).unwrap();
        parts.extend(xi_d(&w2, d, &b()).unwrap());
        prop_assert!(union.iter().all(|x| parts.contains(x)));
        let maximal = maximal_translated_tori(&w, &b()).unwrap();
        for x in parts.iter().filter(|x| !union.contains(x)) {
            let sat = x.saturation();
            prop_assert!(
                maximal.iter().any(|c| sat.contains(c.xi()) && sat != *c.xi()),
                "{:?} dropped without a larger coset", x
            );
        }
    }

    #[test]
    fn u_inside_sigma_and_sigma_saturation_blind(
        a in target(),
        free in proptest::collection::vec(-3i64..=3, 3),
        tors in proptest::collection::vec(0i64..4, 3),
        g in subgroup_gens(3, 2, 4),
    ) {
        let nu = epimorphism(3, &a, &free, &tors);
        prop_assume!(nu.is_some());
        let nu = nu.unwrap();
        let xi = Subgroup::from_i64(&FgAbGroup::free(3), &g).unwrap();
        if u_member(&nu, &xi).unwrap() {
            prop_assert!(sigma_member(&nu, &xi).unwrap());
        }
        prop_assert_eq!(sigma_member(&nu, &xi).unwrap(), sigma_member(&nu, &xi.saturation()).unwrap());
    }

    #[test]
    fn u_side_lower_bound_and_exactness(
        w in arrangement_strategy(3),
        a in target(),
        free in proptest::collection::vec(-3i64..=3, 3),
        tors in proptest::collection::vec(0i64..4, 3),
    ) {
        let nu = epimorphism(3, &a, &free, &tors);
        prop_assume!(nu.is_some());
        let nu = nu.unwrap();
        let v: Variety = w.clone().into();
        let upsilon = upsilon_member(&nu, &v, &b()).unwrap();
        for xi in xi_d(&w, a.cyclic_exponent(), &b()).unwrap() {
            if u_member(&nu, &xi).unwrap() {
                prop_assert!(upsilon);
            }
        }
        prop_assert_eq!(!upsilon, omega_closed_form(&nu, &w, &b()).unwrap());
    }

    #[test]
    fn sigma_constant_on_fibers(
        free in proptest::collection::vec(-3i64..=3, 3),
        a in prop_oneof![Just(FgAbGroup::new(1, vec![2]).unwrap()), Just(FgAbGroup::new(1, vec![3]).unwrap())],
        g in subgroup_gens(3, 2, 4),
    ) {
        let h = FgAbGroup::free(3);
        let nu_bar = Homomorphism::from_i64(&h, &FgAbGroup::free(1), &[free]).unwrap();
        prop_assume!(nu_bar.is_epimorphism());
        let xi = Subgroup::from_i64(&h, &g).unwrap();
        let base = sigma_member(&nu_bar, &xi).unwrap();
        for nu in fiber_representatives(&nu_bar, &a, &b()).unwrap() {
            prop_assert_eq!(sigma_member(&nu, &xi).unwrap(), base);
        }
    }

    #[test]
    fn deleted_subgroup_identity(
        free in proptest::collection::vec(-3i64..=3, 3),
        a in prop_oneof![Just(FgAbGroup::new(1, vec![2]).unwrap()), Just(FgAbGroup::new(1, vec![4]).unwrap()), Just(FgAbGroup::new(1, vec![3]).unwrap())],
        g in subgroup_gens(3, 2, 4),
    ) {
        let h = FgAbGroup::free(3);
        let nu_bar = Homomorphism::from_i64(&h, &FgAbGroup::free(1), &[free]).unwrap();
        prop_assume!(nu_bar.is_epimorphism());
        let xi = Subgroup::from_i64(&h, &g).unwrap();
        prop_assume!(xi.determinant_order() <= 24.into());
        let w: Variety = Arrangement::new(&h).with_deleted(xi.clone()).unwrap().into();
        for nu in fiber_representatives(&nu_bar, &a, &b()).unwrap() {
            let lhs = upsilon_member(&nu, &w, &b()).unwrap();
            let rhs = sigma_member(&nu, &xi).unwrap() && theta_member(&nu, &xi, &b()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn xi_matches_exhaustive_search(
        comps in proptest::collection::vec(component(2, vec![1, 2, 4]), 1..=3),
        d in 1u64..=4,
    ) {
        let w = arrangement(2, &comps, &[]);
        prop_assume!(w.components.iter().all(|c| c.xi().determinant_order() <= 4.into()));
        prop_assert_eq!(oracle_xi(&w, d, 16, &b()).unwrap(), xi_d(&w, d, &b()).unwrap());
    }
}
