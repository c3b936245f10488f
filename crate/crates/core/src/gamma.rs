//! The parameter sets `Γ(H, A) = Epi(H, A)/Aut(A)`: closed-form counts, explicit
//! orbit representatives, and representatives of the fibers of `q: Γ(H, A) → Γ(H, Ā)`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Bounds, Error, Result};
use crate::finite::{for_each_tuple, FiniteGroup};
use crate::group::{FgAbGroup, Homomorphism};
use crate::lattice::{IntMatrix, Lattice};

/// Distinct primes dividing the product of `factors`, ascending.
pub fn primes_dividing(factors: &[u64]) -> Vec<u64> {
    let mut primes = Vec::new();
    for &d in factors {
        let mut n = d;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                primes.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            primes.push(n);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}

/// Partition of the `p`-primary part: the exponents of `p` in the factors, descending.
pub fn p_partition(factors: &[u64], p: u64) -> Vec<u32> {
    let mut parts: Vec<u32> = factors
        .iter()
        .map(|&d| {
            let (mut n, mut k) = (d, 0);
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            k
        })
        .filter(|&k| k > 0)
        .collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    parts
}

fn pow(p: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(p.clone(), e as usize)
    } else {
        num_traits::pow(p.recip(), (-e) as usize)
    }
}

fn theta_i(mu: i64, tau: &[u32]) -> i64 {
    tau.iter().map(|&t| mu.min(t as i64)).sum()
}

/// Local factor of the counting formula at `p`, for `λ` (target) and `τ` (source torsion)
/// with `m` extra free generators.
fn local_factor(p: u64, lam: &[u32], tau: &[u32], m: i64) -> BigRational {
    let pp = BigRational::from_integer(BigInt::from(p));
    let l = lam.len() as i64;
    let size: i64 = lam.iter().map(|&x| x as i64).sum();
    let minus: Vec<i64> = lam.iter().map(|&x| x as i64 - 1).collect();
    let theta_minus: i64 = minus.iter().map(|&x| theta_i(x, tau)).sum();
    let mut num = pow(&pp, (size - l) * m + theta_minus);
    for (i, &li) in lam.iter().enumerate() {
        let e = m + theta_i(li as i64, tau) - theta_i(minus[i], tau);
        num *= pow(&pp, e) - pow(&pp, i as i64);
    }
    let bracket: i64 = lam.iter().enumerate().map(|(i, &x)| i as i64 * x as i64).sum();
    let mut den = pow(&pp, size + 2 * bracket);
    let mut mult: BTreeMap<u32, i64> = BTreeMap::new();
    for &x in lam {
        *mult.entry(x).or_default() += 1;
    }
    for &mk in mult.values() {
        for i in 1..=mk {
            den *= BigRational::one() - pow(&pp, -i);
        }
    }
    num / den
}

/// The closed product formula for `|Γ(ℤ^m ⊕ T(H), T(A))|`, evaluated as printed.
pub fn gamma_formula(h: &FgAbGroup, a: &FgAbGroup) -> Option<BigRational> {
    if a.rank() > h.rank() {
        return None;
    }
    let m = (h.rank() - a.rank()) as i64;
    let mut total = BigRational::one();
    for p in primes_dividing(a.torsion()) {
        let lam = p_partition(a.torsion(), p);
        let tau = p_partition(h.torsion(), p);
        total *= local_factor(p, &lam, &tau, m);
    }
    Some(total)
}

/// `|Γ(H/Ā, A/Ā)|`, the common size of the fibers of `q: Γ(H, A) → Γ(H, Ā)`.
/// Returns 0 when `A` is not a quotient of `H`.
pub fn gamma_count(h: &FgAbGroup, a: &FgAbGroup) -> Result<BigUint> {
    if !h.has_quotient(a) {
        return Ok(BigUint::zero());
    }
    let v = gamma_formula(h, a).expect("rank checked");
    if !v.is_integer() || v.is_negative() {
        return Err(Error::Invariant(format!(
            "counting formula gave {v} for Γ({h}, {a})"
        )));
    }
    Ok(v.to_integer().to_biguint().expect("non-negative"))
}

fn finite_target(a: &FgAbGroup, bounds: &Bounds) -> Result<FiniteGroup> {
    if !a.is_finite() {
        return Err(Error::Unsupported(format!(
            "brute-force enumeration needs a finite target, got {a}"
        )));
    }
    FiniteGroup::new(a.torsion(), bounds)
}

fn allowed_images(h: &FgAbGroup, fg: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut allowed = vec![fg.killed_by(0); h.rank()];
    allowed.extend(h.torsion().iter().map(|&d| fg.killed_by(d)));
    allowed
}

fn tuple_matrix(fg: &FiniteGroup, imgs: &[usize]) -> IntMatrix {
    let k = fg.factors().len();
    let mut m = IntMatrix::zeros(k, imgs.len());
    for (j, &x) in imgs.iter().enumerate() {
        for (i, c) in fg.decode(x).into_iter().enumerate() {
            m[(i, j)] = BigInt::from(c);
        }
    }
    m
}

/// One representative per `Aut(A)`-orbit of `Epi(H, A)`, for finite `A`.
/// Representatives are the lexicographically smallest tuples of generator images.
pub fn enumerate_epis_mod_aut(
    h: &FgAbGroup,
    a: &FgAbGroup,
    bounds: &Bounds,
) -> Result<Vec<Homomorphism>> {
    let fg = finite_target(a, bounds)?;
    let allowed = allowed_images(h, &fg);
    let total = allowed
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .unwrap_or(u64::MAX);
    bounds.check("homomorphism enumeration", bounds.max_enumeration, total)?;
    let auts = fg.automorphisms(bounds)?;
    let mut reps = Vec::new();
    let mut image = vec![0usize; h.dim()];
    for_each_tuple(&allowed, &mut |imgs| {
        if !fg.generates(imgs) {
            return;
        }
        let minimal = auts.iter().all(|alpha| {
            for (slot, &x) in image.iter_mut().zip(imgs) {
                *slot = alpha[x];
            }
            image.as_slice() >= imgs
        });
        if minimal {
            reps.push(tuple_matrix(&fg, imgs));
        }
    });
    reps.into_iter()
        .map(|m| Homomorphism::new(h, a, m))
        .collect()
}

/// `|Epi(H, A)|` for finite `A`, counted exhaustively over generator images.
pub fn count_epis(h: &FgAbGroup, a: &FgAbGroup, bounds: &Bounds) -> Result<BigUint> {
    let fg = finite_target(a, bounds)?;
    Ok(fg.count_generating_tuples(&allowed_images(h, &fg)))
}

/// `|Aut(A)|` for finite `A`.
pub fn count_automorphisms(a: &FgAbGroup, bounds: &Bounds) -> Result<BigUint> {
    Ok(finite_target(a, bounds)?.automorphism_count())
}

/// The group `K = ker ν̄` in standard form together with a coordinate map from
/// preimage vectors lying in `ker ν̄` to coordinates of `K`.
struct KernelModel {
    group: FgAbGroup,
    basis: Lattice,
    // rows of U_c giving SNF coordinates; (row index, modulus or 0 for free)
    coords: Vec<(Vec<BigInt>, u64)>,
}

impl KernelModel {
    fn new(h: &FgAbGroup, kernel: &Lattice) -> Result<Self> {
        let rel = h.relation_matrix();
        let coeffs: Vec<Vec<BigInt>> = rel
            .columns()
            .iter()
            .map(|c| {
                kernel
                    .solve(c)
                    .ok_or_else(|| Error::Invariant("relations outside the kernel".into()))
            })
            .collect::<Result<_>>()?;
        let c = IntMatrix::from_columns(kernel.rank(), &coeffs)?;
        let (d, u, _) = crate::lattice::smith_normal_form(&c);
        let k = h.torsion().len();
        let mut free = Vec::new();
        let mut tors = Vec::new();
        for i in 0..kernel.rank() {
            let di = if i < k { d[(i, i)].clone() } else { BigInt::zero() };
            if di.is_one() {
                continue;
            }
            let m = di.to_u64().ok_or_else(|| Error::Input("torsion overflow".into()))?;
            if m == 0 {
                free.push((u.row(i), 0));
            } else {
                tors.push((u.row(i), m));
            }
        }
        let group = FgAbGroup::new(free.len(), tors.iter().map(|t| t.1).collect())?;
        free.extend(tors);
        Ok(KernelModel {
            group,
            basis: kernel.clone(),
            coords: free,
        })
    }

    fn coordinates(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        let y = self
            .basis
            .solve(v)
            .ok_or_else(|| Error::Invariant("vector outside the kernel".into()))?;
        Ok(self
            .coords
            .iter()
            .map(|(row, _)| row.iter().zip(&y).map(|(a, b)| a * b).sum())
            .collect())
    }
}

/// One `ν ∈ Epi(H, A)` for each class in the fiber `q⁻¹([ν̄])`, where `ν̄: H ↠ Ā`.
pub fn fiber_representatives(
    nu_bar: &Homomorphism,
    a: &FgAbGroup,
    bounds: &Bounds,
) -> Result<Vec<Homomorphism>> {
    let h = nu_bar.source();
    if *nu_bar.target() != a.free_part() {
        return Err(Error::Input(format!(
            "ν̄ must map onto {}, not {}",
            a.free_part(),
            nu_bar.target()
        )));
    }
    let splitting = nu_bar.free_splitting()?;
    let kernel = nu_bar.kernel();
    let model = KernelModel::new(h, kernel.preimage())?;
    let gammas = enumerate_epis_mod_aut(&model.group, &a.torsion_part(), bounds)?;
    let r = a.rank();
    let fm = nu_bar.matrix();
    let mut out = Vec::with_capacity(gammas.len());
    // K-coordinates of e_j − s(ν̄(e_j)) for every generator e_j of H
    let mut kcoords = Vec::with_capacity(h.dim());
    for j in 0..h.dim() {
        let mut v = vec![BigInt::zero(); h.dim()];
        v[j] = BigInt::one();
        for (l, s) in splitting.iter().enumerate() {
            let c = &fm[(l, j)];
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(s) {
                    *x -= c * y;
                }
            }
        }
        kcoords.push(model.coordinates(&v)?);
    }
    for gamma in gammas {
        let mut m = IntMatrix::zeros(a.dim(), h.dim());
        for j in 0..h.dim() {
            for l in 0..r {
                m[(l, j)] = fm[(l, j)].clone();
            }
            let t = gamma.matrix().mul_vec(&kcoords[j])?;
            for (i, x) in t.into_iter().enumerate() {
                m[(r + i, j)] = x;
            }
        }
        out.push(Homomorphism::new(h, a, m)?);
    }
    Ok(out)
}

/// Whether `[ν₁] = [ν₂]` in `Γ(H, A)`, i.e. `α∘ν₁ = ν₂` for some `α ∈ Aut(A)`.
pub fn equivalent(nu1: &Homomorphism, nu2: &Homomorphism, bounds: &Bounds) -> Result<bool> {
    if nu1.source() != nu2.source() || nu1.target() != nu2.target() {
        return Err(Error::Dimension("maps between different groups".into()));
    }
    let a = nu1.target();
    let (f1, f2) = (nu1.free_part(), nu2.free_part());
    // free block: P·F₁ = F₂ with P ∈ GL_r(ℤ)
    let split = f1.free_splitting()?;
    let s = IntMatrix::from_columns(nu1.source().dim(), &split)?;
    let p = f2.matrix().mul(&s)?;
    if p.mul(f1.matrix())? != *f2.matrix() || !f2.is_epimorphism() {
        return Ok(false);
    }
    // torsion block: T₂ − S·T₁ must vanish on ker F₁ for some S ∈ Aut(T(A))
    let fg = finite_target(&a.torsion_part(), bounds)?;
    let (t1, t2) = (nu1.torsion_part(), nu2.torsion_part());
    let kernel = f1.kernel();
    let gens = kernel.preimage().generators();
    let img1: Vec<usize> = gens
        .iter()
        .map(|g| Ok(fg.encode_big(&t1.matrix().mul_vec(g)?)))
        .collect::<Result<_>>()?;
    let img2: Vec<usize> = gens
        .iter()
        .map(|g| Ok(fg.encode_big(&t2.matrix().mul_vec(g)?)))
        .collect::<Result<_>>()?;
    for alpha in fg.automorphisms(bounds)? {
        if img1.iter().zip(&img2).all(|(&x, &y)| alpha[x] == y) {
            return Ok(true);
        }
    }
    Ok(false)
}
