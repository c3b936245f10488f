//! Characteristic varieties of toric complexes and Brieskorn manifolds.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::character::{v_of, Arrangement, TorsionCharacter, TranslatedSubgroup};
use crate::error::{input, Bounds, Error, Result};
use crate::group::{FgAbGroup, Homomorphism, Subgroup};
use crate::jump::{omega_describe, ObstructionReport, Variety};
use crate::lattice::IntMatrix;

/// A simplicial complex on vertices `0..vertices`, given by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(vertices: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        if vertices > 63 {
            return input("at most 63 vertices");
        }
        if facets.iter().flatten().any(|&v| v >= vertices) {
            return input("facet vertex out of range");
        }
        Ok(SimplicialComplex { vertices, facets })
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            vertices: n,
            facets: vec![(0..n).collect()],
        }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// All faces as bitmasks, including the empty face; isolated vertices count as faces.
    pub fn faces(&self) -> HashSet<u64> {
        let mut out = HashSet::new();
        out.insert(0);
        for f in &self.facets {
            let mask: u64 = f.iter().fold(0, |m, &v| m | (1 << v));
            let mut sub = mask;
            loop {
                out.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        out
    }
}

/// Rank of `H̃_j` over `ℚ` of the complex with the given faces (which must contain `∅`).
fn reduced_homology(faces: &[u64], j: i64) -> usize {
    if j < -1 {
        return 0;
    }
    let of_dim = |d: i64| -> Vec<u64> {
        let mut v: Vec<u64> = faces.iter().copied().filter(|f| f.count_ones() as i64 == d + 1).collect();
        v.sort_unstable();
        v
    };
    let cj = of_dim(j);
    if cj.is_empty() {
        return 0;
    }
    let rank_boundary = |d: i64| -> usize {
        // ∂_d : C_d → C_{d−1}
        let src = of_dim(d);
        let dst = of_dim(d - 1);
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        let mut m = IntMatrix::zeros(dst.len(), src.len());
        for (c, &s) in src.iter().enumerate() {
            let mut sign = 1i64;
            for v in 0..64 {
                if s & (1 << v) != 0 {
                    let face = s & !(1 << v);
                    let r = dst.binary_search(&face).expect("closed under faces");
                    m[(r, c)] = BigInt::from(sign);
                    sign = -sign;
                }
            }
        }
        m.rank()
    };
    cj.len() - rank_boundary(j) - rank_boundary(j + 1)
}

/// Rank of the reduced homology `H̃_j(K; ℚ)`.
pub fn reduced_homology_rank(k: &SimplicialComplex, j: i64) -> usize {
    let faces: Vec<u64> = k.faces().into_iter().collect();
    reduced_homology(&faces, j)
}

fn xi_w(h: &FgAbGroup, n: usize, w: u64) -> Subgroup {
    let gens: Vec<Vec<i64>> = (0..n)
        .filter(|i| w & (1 << i) == 0)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    Subgroup::from_i64(h, &gens).expect("unit vectors")
}

/// Subsets `W` for which `V(ξ_W)` lies in `V^i(T_L)`.
fn toric_subsets(l: &SimplicialComplex, i: i64, bounds: &Bounds) -> Result<Vec<u64>> {
    let n = l.vertices();
    bounds.check("vertex count", bounds.max_vertices as u64, n as u64)?;
    let faces = l.faces();
    let all: Vec<u64> = faces.iter().copied().collect();
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let hit: Vec<u64> = (0..=full)
        .into_par_iter()
        .filter(|&w| {
            let lw: Vec<u64> = all.iter().copied().filter(|f| f & !w == 0).collect();
            all.iter().filter(|&&s| s & w == 0).any(|&s| {
                let link: Vec<u64> = lw.iter().copied().filter(|t| faces.contains(&(t | s))).collect();
                let size = s.count_ones() as i64;
                (0..=i).any(|j| reduced_homology(&link, j - 1 - size) != 0)
            })
        })
        .collect();
    Ok(hit)
}

/// `V^i(T_L)` as a union of coordinate subtori `V(ξ_W)`; the trivial character, when present
/// only as `V(ξ_∅)`, is recorded as a point.
pub fn toric_char_variety(l: &SimplicialComplex, i: i64, bounds: &Bounds) -> Result<Arrangement> {
    let n = l.vertices();
    let h = FgAbGroup::free(n);
    let hit = toric_subsets(l, i, bounds)?;
    let mut arr = Arrangement::new(&h);
    if hit.contains(&0) {
        arr = arr.with_point(TorsionCharacter::trivial(&h))?;
    }
    let mut maximal: Vec<u64> = hit
        .iter()
        .copied()
        .filter(|&w| w != 0 && !hit.iter().any(|&o| o != w && o & w == w))
        .collect();
    maximal.sort_unstable();
    for w in maximal {
        arr = arr.with_component(v_of(&xi_w(&h, n, w)))?;
    }
    Ok(arr)
}

pub fn toric_omega(l: &SimplicialComplex, i: i64, a: &FgAbGroup, bounds: &Bounds) -> Result<ObstructionReport> {
    let arr = toric_char_variety(l, i, bounds)?;
    omega_describe(&Variety::from(arr), a, bounds)
}

/// Seifert invariants of the Brieskorn manifold `Σ(a_1,…,a_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertData {
    pub exponents: Vec<u64>,
    /// `(α_j, β_j, s_j)` with the `α_j = 1` entries removed.
    pub orbits: Vec<(u64, u64, u64)>,
    pub genus: u64,
    pub euler: BigRational,
    pub torsion_order: BigInt,
    /// `α = α₁^{s₁}···αₙ^{sₙ} / lcm(α_j)`.
    pub alpha: BigInt,
}

pub fn brieskorn_invariants(a: &[u64]) -> Result<SeifertData> {
    if a.len() < 2 || a.iter().any(|&x| x < 2) {
        return input("Brieskorn exponents must be at least 2, and at least two of them");
    }
    let n = a.len();
    let big = |x: u64| BigInt::from(x);
    let l = a.iter().fold(BigInt::one(), |acc, &x| acc.lcm(&big(x)));
    let prod: BigInt = a.iter().map(|&x| big(x)).product();
    let mut sum_s = BigInt::zero();
    let mut orbits = Vec::new();
    let mut torsion = BigRational::one();
    let mut lcm_alpha = BigInt::one();
    for j in 0..n {
        let lj = a
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .fold(BigInt::one(), |acc, (_, &x)| acc.lcm(&big(x)));
        let alpha = &l / &lj;
        let s = &prod / (big(a[j]) * &lj);
        sum_s += &s;
        lcm_alpha = lcm_alpha.lcm(&alpha);
        torsion *= BigRational::from_integer(num_traits::pow(alpha.clone(), s.to_usize().unwrap_or(0)));
        if alpha.is_one() {
            continue;
        }
        // smallest β ≥ 0 with β·l ≡ a_j (mod α_j)
        let beta = (0..alpha.to_u64().unwrap_or(0))
            .find(|&b| ((big(b) * &l - big(a[j])).mod_floor(&alpha)).is_zero())
            .ok_or_else(|| Error::Invariant(format!("no β_{} solves β·l ≡ a_j", j + 1)))?;
        orbits.push((
            alpha.to_u64().ok_or_else(|| Error::Unsupported("multiplicity too large".into()))?,
            beta,
            s.to_u64().ok_or_else(|| Error::Unsupported("repetition too large".into()))?,
        ));
    }
    let two_g = BigRational::from_integer(big(2))
        + BigRational::new(big(n as u64 - 2) * &prod, l.clone())
        - BigRational::from_integer(sum_s);
    let g = two_g / BigRational::from_integer(big(2));
    if !g.is_integer() || g.is_negative() {
        return Err(Error::Invariant(format!("genus {g} is not a non-negative integer")));
    }
    let euler = -BigRational::new(prod, &l * &l);
    let t = &torsion * euler.abs();
    if !t.is_integer() || t.is_zero() {
        return Err(Error::Invariant(format!("torsion order {t} is not a positive integer")));
    }
    let alpha = torsion.to_integer() / lcm_alpha;
    Ok(SeifertData {
        exponents: a.to_vec(),
        orbits,
        genus: g.to_integer().to_u64().ok_or_else(|| Error::Unsupported("genus too large".into()))?,
        euler,
        torsion_order: t.to_integer(),
        alpha,
    })
}

fn squarefree(n: &BigInt) -> bool {
    let mut p = BigInt::from(2);
    let mut m = n.clone();
    while &p * &p <= m {
        if (&m % (&p * &p)).is_zero() {
            return false;
        }
        if (&m % &p).is_zero() {
            m /= &p;
        }
        p += 1;
    }
    true
}

/// `H_1(M) = ℤ^{2g} ⊕ Tors`, with the torsion factors supplied or, for squarefree order, cyclic.
pub fn brieskorn_group(data: &SeifertData, torsion: Option<&[u64]>) -> Result<FgAbGroup> {
    let rank = 2 * data.genus as usize;
    match torsion {
        Some(t) => {
            let g = FgAbGroup::from_factors(rank, t)?;
            if g.torsion_order() != data.torsion_order {
                return input(format!(
                    "torsion factors have order {}, expected {}",
                    g.torsion_order(),
                    data.torsion_order
                ));
            }
            Ok(g)
        }
        None if squarefree(&data.torsion_order) => {
            let t = data
                .torsion_order
                .to_u64()
                .ok_or_else(|| Error::Unsupported("torsion too large".into()))?;
            FgAbGroup::from_factors(rank, &[t])
        }
        None => input(format!(
            "torsion of order {} is not determined by its order; supply the factors",
            data.torsion_order
        )),
    }
}

/// Default characters indexing the translated copies: the order-2 character of the last cyclic
/// factor when `α = 2` and that factor has even order.
pub fn default_h_characters(data: &SeifertData, h: &FgAbGroup) -> Result<Vec<TorsionCharacter>> {
    if data.alpha.is_one() {
        return Ok(Vec::new());
    }
    let last = h.torsion().last().copied();
    match last {
        Some(d) if data.alpha == BigInt::from(2) && d % 2 == 0 => {
            let mut v = vec![(0, 1); h.dim()];
            v[h.dim() - 1] = (1, 2);
            Ok(vec![TorsionCharacter::from_fractions(h, &v)?])
        }
        _ => input("the translated copies are not determined; supply the h characters"),
    }
}

/// Positive-dimensional part of `V^1(M)` (plus the trivial character when `g = 1`).
pub fn brieskorn_v1(data: &SeifertData, h: &FgAbGroup, hs: &[TorsionCharacter]) -> Result<Arrangement> {
    if data.genus == 0 {
        return Err(Error::Unsupported("genus-0 base curves are not covered".into()));
    }
    if h.rank() != 2 * data.genus as usize || h.torsion_order() != data.torsion_order {
        return input(format!("H = {h} does not match the Seifert data"));
    }
    let expected = (&data.alpha - BigInt::one()).to_usize().unwrap_or(usize::MAX);
    if hs.len() != expected {
        return input(format!("expected {expected} translating characters, got {}", hs.len()));
    }
    let tors_gens: Vec<Vec<i64>> = (0..h.torsion().len())
        .map(|i| {
            let mut e = vec![0; h.dim()];
            e[h.rank() + i] = 1;
            e
        })
        .collect();
    let t = Subgroup::from_i64(h, &tors_gens)?;
    let mut arr = Arrangement::new(h);
    if data.genus > 1 {
        arr = arr.with_component(v_of(&t))?;
    } else {
        arr = arr.with_point(TorsionCharacter::trivial(h))?;
    }
    for c in hs {
        if c.values()[..h.rank()].iter().any(|v| !v.is_zero()) {
            return input("translating characters must be trivial on the free part");
        }
        arr = arr.with_component(TranslatedSubgroup::new(t.clone(), c.clone())?)?;
    }
    Ok(arr)
}

pub fn brieskorn_omega(
    data: &SeifertData,
    h: &FgAbGroup,
    hs: &[TorsionCharacter],
    a: &FgAbGroup,
    bounds: &Bounds,
) -> Result<ObstructionReport> {
    omega_describe(&Variety::from(brieskorn_v1(data, h, hs)?), a, bounds)
}

/// The element of `Tors H` matching a character under `ℤ_d^∨ ≅ ℤ_d`, `k/d ↦ k`.
pub fn character_to_element(c: &TorsionCharacter) -> Vec<BigInt> {
    let h = c.parent();
    let mut out = vec![BigInt::zero(); h.dim()];
    for (i, &d) in h.torsion().iter().enumerate() {
        let k = h.rank() + i;
        out[k] = (&c.values()[k] * BigRational::from_integer(BigInt::from(d))).to_integer();
    }
    out
}

/// Membership by the closed form: empty for `g > 1`, `ν(h_i) = 0` for `g = 1`.
pub fn brieskorn_closed_form_member(data: &SeifertData, nu: &Homomorphism, hs: &[TorsionCharacter]) -> Result<bool> {
    if data.genus > 1 {
        return Ok(false);
    }
    for c in hs {
        if !nu.target().is_zero_element(&nu.apply(&character_to_element(c))?) {
            return Ok(false);
        }
    }
    Ok(true)
}
