use dfsets_core::character::{coset_intersection, determinant_dual, v_of};
use dfsets_core::gamma::{enumerate_epis_mod_aut, equivalent, fiber_representatives, gamma_count};
use dfsets_core::oracle::oracle_gamma_count;
use dfsets_core::{Bounds, FgAbGroup, Homomorphism, Subgroup, TorsionCharacter, TranslatedSubgroup};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;

/// Invariant factor chains with product at most `n`.
fn finite_groups(n: u64) -> Vec<Vec<u64>> {
    fn go(left: u64, chain: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        out.push(chain.clone());
        let step = chain.last().copied().unwrap_or(1);
        let mut d = if chain.is_empty() { 2 } else { step };
        while d <= left {
            chain.push(d);
            go(left / d, chain, out);
            chain.pop();
            d += step;
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

fn enumeration_cost(h: &[u64], a: &[u64]) -> u64 {
    let order: u64 = a.iter().product();
    (order as f64).powi((h.len() + a.len()) as i32).min(u64::MAX as f64) as u64
}

#[test]
fn finite_group_list() {
    // 1, ℤ2, ℤ3, ℤ4, ℤ2², ℤ5, ℤ6, ℤ7, ℤ8, ℤ2×ℤ4, ℤ2³
    assert_eq!(finite_groups(8).len(), 11);
}

#[test]
fn gamma_matches_orbits_exhaustively() {
    let b = Bounds::default();
    let groups = finite_groups(32);
    let mut checked = 0;
    for th in &groups {
        for ta in &groups {
            if enumeration_cost(th, ta) > 200_000 {
                continue;
            }
            let h = FgAbGroup::new(0, th.clone()).unwrap();
            let a = FgAbGroup::new(0, ta.clone()).unwrap();
            let reps = enumerate_epis_mod_aut(&h, &a, &b).unwrap();
            let count = gamma_count(&h, &a).unwrap();
            assert_eq!(BigUint::from(reps.len()), count, "Γ({h}, {a})");
            assert_eq!(oracle_gamma_count(&h, &a, &b).unwrap(), count, "Γ({h}, {a})");
            checked += 1;
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn gamma_matches_free_product_formula() {
    for p in [2u64, 3] {
        for s in 1..=3u32 {
            for n in 1..=5i32 {
                let h = FgAbGroup::free(n as usize);
                let elem = FgAbGroup::finite(vec![p; s as usize]).unwrap();
                let mut num = BigRational::from_integer(1.into());
                for i in 0..s as i32 {
                    let pn = BigRational::from_integer(BigInt::from(p).pow(n as u32));
                    let pi = BigRational::from_integer(BigInt::from(p).pow(i as u32));
                    let ps = BigRational::from_integer(BigInt::from(p).pow(s));
                    num *= (pn - &pi) / (ps - &pi);
                }
                let expect = num.to_integer().to_biguint().unwrap();
                if (s as i32) <= n {
                    assert_eq!(gamma_count(&h, &elem).unwrap(), expect);
                }
            }
        }
    }
}

fn small_finite() -> impl Strategy<Value = Vec<u64>> {
    prop_oneof![
        Just(vec![]),
        Just(vec![2]),
        Just(vec![3]),
        Just(vec![4]),
        Just(vec![2, 2]),
        Just(vec![6]),
        Just(vec![2, 4]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_random_up_to_256(
        th in proptest::sample::select(finite_groups(256)),
        ta in proptest::sample::select(finite_groups(256)),
    ) {
        prop_assume!(enumeration_cost(&th, &ta) <= 500_000);
        let b = Bounds::default();
        let h = FgAbGroup::new(0, th).unwrap();
        let a = FgAbGroup::new(0, ta).unwrap();
        let reps = enumerate_epis_mod_aut(&h, &a, &b).unwrap();
        prop_assert_eq!(BigUint::from(reps.len()), gamma_count(&h, &a).unwrap());
    }

    #[test]
    fn fiber_classes_are_distinct_and_complete(
        n in 1usize..=3,
        th in small_finite(),
        ta in prop_oneof![Just(vec![2u64]), Just(vec![3]), Just(vec![4]), Just(vec![2, 2])],
        row in proptest::collection::vec(-3i64..=3, 6),
    ) {
        let b = Bounds::default();
        let h = FgAbGroup::new(n, th.clone()).unwrap();
        let mut r: Vec<i64> = row[..h.dim()].to_vec();
        for x in r[n..].iter_mut() {
            *x = 0;
        }
        let z = FgAbGroup::free(1);
        let nu_bar = Homomorphism::from_i64(&h, &z, &[r]).unwrap();
        prop_assume!(nu_bar.is_epimorphism());
        let a = FgAbGroup::new(1, ta).unwrap();
        let reps = fiber_representatives(&nu_bar, &a, &b).unwrap();
        prop_assert_eq!(BigUint::from(reps.len()), gamma_count(&h, &a).unwrap());
        for (i, x) in reps.iter().enumerate() {
            prop_assert!(x.is_epimorphism());
            prop_assert_eq!(&x.free_part(), &nu_bar);
            prop_assert_eq!(x.kernel().rank() as i64, h.rank() as i64 - a.rank() as i64);
            for y in &reps[i + 1..] {
                prop_assert!(!equivalent(x, y, &b).unwrap());
            }
        }
    }

    #[test]
    fn determinant_group_detects_saturation(
        gens in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 4), 0..=3),
        th in small_finite(),
    ) {
        let h = FgAbGroup::new(2, th).unwrap();
        let gens: Vec<Vec<i64>> = gens.into_iter().map(|g| g[..h.dim()].to_vec()).collect();
        let xi = Subgroup::from_i64(&h, &gens).unwrap();
        prop_assert_eq!(xi.determinant_group().torsion().is_empty(), xi.saturation() == xi);
        prop_assert_eq!(xi.is_saturated(), xi.saturation() == xi);
    }

    #[test]
    fn epimorphism_kernel_rank(
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..=3),
    ) {
        let h = FgAbGroup::free(4);
        let a = FgAbGroup::free(rows.len());
        let nu = Homomorphism::from_i64(&h, &a, &rows).unwrap();
        prop_assume!(nu.is_epimorphism());
        prop_assert_eq!(nu.kernel().rank(), 4 - rows.len());
    }

    #[test]
    fn duality_round_trip(
        gens in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 0..=3),
    ) {
        let b = Bounds::default();
        let h = FgAbGroup::free(3);
        let xi = Subgroup::from_i64(&h, &gens).unwrap();
        // common kernel of every character in V(ξ) = ⋃ ρV(ξ̄)
        let mut common = xi.saturation();
        for rho in determinant_dual(&xi, &b).unwrap() {
            common = common.intersection(&rho.kernel()).unwrap();
        }
        prop_assert_eq!(common, xi.clone());
        prop_assert_eq!(v_of(&xi).xi().clone(), xi);
    }
}

/// Characters of `H` with values in `(1/N)ℤ/ℤ`, enumerated exhaustively.
fn torsion_points(h: &FgAbGroup, n: u64) -> Vec<TorsionCharacter> {
    let mut out = vec![vec![]];
    for i in 0..h.dim() {
        let step = if i < h.rank() { n } else { h.torsion()[i - h.rank()] };
        let mut next = Vec::new();
        for v in &out {
            for k in 0..step {
                let mut w: Vec<BigRational> = v.clone();
                w.push(BigRational::new(BigInt::from(k), BigInt::from(step)));
                next.push(w);
            }
        }
        out = next;
    }
    out.into_iter().filter_map(|v| TorsionCharacter::new(h, v).ok()).collect()
}

fn in_coset(chi: &TorsionCharacter, c: &TranslatedSubgroup) -> bool {
    chi.sub(c.eta()).unwrap().vanishes_on(c.xi().preimage())
}

fn character(h: &FgAbGroup, vals: &[(i64, i64)]) -> TorsionCharacter {
    let mut v: Vec<(i64, i64)> = vals[..h.dim()].to_vec();
    for (i, &d) in h.torsion().iter().enumerate() {
        let k = h.rank() + i;
        v[k] = (v[k].0 % d as i64, d as i64);
    }
    TorsionCharacter::from_fractions(h, &v).unwrap()
}

fn coset_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<(i64, i64)>)> {
    (
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 0..=2),
        proptest::collection::vec((0i64..12, prop_oneof![Just(1i64), Just(2), Just(3), Just(4), Just(6)]), 3),
    )
}

fn exponent_bound(xi: &Subgroup) -> u64 {
    xi.determinant_group().cyclic_exponent()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn coset_intersection_matches_enumeration(
        rank in 1usize..=3,
        th in prop_oneof![Just(vec![]), Just(vec![2u64]), Just(vec![3]), Just(vec![4])],
        (g1, e1) in coset_strategy(),
        (g2, e2) in coset_strategy(),
    ) {
        let h = FgAbGroup::new(rank, th).unwrap();
        prop_assume!(h.dim() <= 3);
        let cut = |gs: Vec<Vec<i64>>| -> Vec<Vec<i64>> { gs.into_iter().map(|g| g[..h.dim()].to_vec()).collect() };
        let x1 = Subgroup::from_i64(&h, &cut(g1)).unwrap();
        let x2 = Subgroup::from_i64(&h, &cut(g2)).unwrap();
        let c1 = TranslatedSubgroup::new(x1.clone(), character(&h, &e1)).unwrap();
        let c2 = TranslatedSubgroup::new(x2.clone(), character(&h, &e2)).unwrap();
        let sum = x1.sum(&x2).unwrap();
        let n = c1.eta().order().lcm(&c2.eta().order()).to_u64().unwrap()
            * exponent_bound(&sum)
            * h.cyclic_exponent();
        prop_assume!(n.pow(h.dim() as u32) <= 60_000);
        let brute = torsion_points(&h, n).iter().any(|chi| in_coset(chi, &c1) && in_coset(chi, &c2));
        let (nonempty, dim) = coset_intersection(&c1, &c2).unwrap();
        prop_assert_eq!(nonempty, brute);
        if nonempty {
            prop_assert_eq!(dim, h.rank() as i64 - sum.rank() as i64);
        }
    }

    #[test]
    fn translation_dimension_and_coprime_emptiness(
        (g1, a1) in coset_strategy(),
        (_, a2) in coset_strategy(),
        (g2, e) in coset_strategy(),
    ) {
        let h = FgAbGroup::free(3);
        let c = Subgroup::from_i64(&h, &g1).unwrap();
        let v = Subgroup::from_i64(&h, &g2).unwrap();
        let alpha1 = character(&h, &a1);
        let alpha2 = character(&h, &a2);
        let eta = character(&h, &e);
        let ev = TranslatedSubgroup::new(v.clone(), eta.clone()).unwrap();
        let m1 = coset_intersection(&TranslatedSubgroup::new(c.clone(), alpha1.clone()).unwrap(), &ev).unwrap();
        let m2 = coset_intersection(&TranslatedSubgroup::new(c.clone(), alpha2).unwrap(), &ev).unwrap();
        if m1.0 && m2.0 {
            prop_assert_eq!(m1.1, m2.1);
        }
        let base = coset_intersection(&v_of(&c), &ev).unwrap();
        if !base.0 && alpha1.order().gcd(&eta.order()) == BigInt::from(1) {
            prop_assert!(!m1.0);
        }
    }
}
