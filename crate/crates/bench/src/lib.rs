//! Fixed inputs for the benchmarks.

use dfsets_core::character::v_of;
use dfsets_core::space::SimplicialComplex;
use dfsets_core::{Arrangement, FgAbGroup, IntMatrix, Subgroup, TorsionCharacter, TranslatedSubgroup};

/// A dense `n × n` integer matrix with entries in `[-9, 9]` from a linear congruential sequence.
pub fn dense_matrix(n: usize, seed: u64) -> IntMatrix {
    let mut x = seed;
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((x >> 33) % 19) as i64 - 9
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows)
}

/// The ruled-surface skeleton: four translated planes in `(ℂ*)³`.
pub fn ruled_skeleton() -> Arrangement {
    let h = FgAbGroup::free(3);
    let comps = [
        (vec![vec![1, 0, 0], vec![0, 1, 0]], [(1, 2), (0, 1), (0, 1)]),
        (vec![vec![0, 1, 0], vec![0, 0, 1]], [(0, 1), (0, 1), (0, 1)]),
        (vec![vec![2, -1, 0], vec![-1, 0, 1]], [(0, 1), (0, 1), (0, 1)]),
        (vec![vec![2, -1, 0], vec![-1, 0, 1]], [(1, 2), (0, 1), (1, 2)]),
    ];
    comps.iter().fold(Arrangement::new(&h), |w, (g, e)| {
        let xi = Subgroup::from_i64(&h, g).unwrap();
        let eta = TorsionCharacter::from_fractions(&h, e).unwrap();
        w.with_component(TranslatedSubgroup::new(xi, eta).unwrap()).unwrap()
    })
}

/// `V(ξ)` for the rank-2 subgroup spanned by `(6, 0, 0, …)` and `(0, 10, 0, …)` in `ℤⁿ`.
pub fn torsion_heavy(n: usize) -> Arrangement {
    let h = FgAbGroup::free(n);
    let mut a = vec![0i64; n];
    let mut b = vec![0i64; n];
    a[0] = 6;
    b[1] = 10;
    Arrangement::new(&h).with_component(v_of(&Subgroup::from_i64(&h, &[a, b]).unwrap())).unwrap()
}

/// The cycle on `n` vertices.
pub fn cycle(n: usize) -> SimplicialComplex {
    SimplicialComplex::new(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect()).unwrap()
}
