//! The sets `Ξ_d`, `τ_d`, `σ_A`, `U_A`, `θ_A`, `Υ_A` and `Ω_A`, as membership predicates
//! and as explicit complement descriptions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::character::{
    coset_containment, coset_intersection, determinant_dual, epsilon_of_cyclic_extension, v_of, Arrangement,
    TorsionCharacter, TranslatedSubgroup,
};
use crate::error::{Bounds, Error, Result};
use crate::gamma::fiber_representatives;
use crate::group::{FgAbGroup, Homomorphism, Subgroup};
use crate::lattice::Lattice;
use crate::laurent::{admissible_tau1, hypersurface_positive_dim, maximal_lattices, restrict_to_coset, LaurentPolynomial};

/// A characteristic variety: an arrangement, optionally together with a hypersurface `Z(f)`.
#[derive(Clone, Debug)]
pub struct Variety {
    pub arrangement: Arrangement,
    pub hypersurface: Option<LaurentPolynomial>,
}

impl Variety {
    pub fn parent(&self) -> &FgAbGroup {
        self.arrangement.parent()
    }

    pub fn hypersurface(f: LaurentPolynomial) -> Self {
        Variety {
            arrangement: Arrangement::new(f.ambient()),
            hypersurface: Some(f),
        }
    }
}

impl From<Arrangement> for Variety {
    fn from(arrangement: Arrangement) -> Self {
        Variety {
            arrangement,
            hypersurface: None,
        }
    }
}

/// Maximal positive-dimensional connected cosets `βV(χ̄)` contained in `W`, sorted.
pub fn maximal_translated_tori(w: &Arrangement, bounds: &Bounds) -> Result<Vec<TranslatedSubgroup>> {
    let cosets = w.cosets(bounds)?;
    let mut out = Vec::new();
    for (i, c) in cosets.iter().enumerate() {
        let mut dominated = false;
        for (j, o) in cosets.iter().enumerate() {
            if i != j && o != c && coset_containment(c, o)? {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push(c.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// Order of the translation of a connected coset, as a machine integer.
fn coset_order(c: &TranslatedSubgroup) -> Result<u64> {
    c.translation_order()
        .to_u64()
        .ok_or_else(|| Error::Unsupported("translation order too large".into()))
}

/// `Ξ_d(W)`: the subgroups `χ̄ ∩ ker β` over maximal cosets `βV(χ̄)` whose translation order divides `d`.
pub fn xi_d(w: &Arrangement, d: u64, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    Ok(xi_d_with_cosets(w, d, bounds)?.into_iter().map(|(xi, _)| xi).collect())
}

fn xi_d_with_cosets(w: &Arrangement, d: u64, bounds: &Bounds) -> Result<Vec<(Subgroup, TranslatedSubgroup)>> {
    let mut out: Vec<(Subgroup, TranslatedSubgroup)> = Vec::new();
    for c in maximal_translated_tori(w, bounds)? {
        if !d.is_multiple_of(coset_order(&c)?) {
            continue;
        }
        let xi = epsilon_of_cyclic_extension(c.xi(), c.eta())?;
        if !out.iter().any(|(x, _)| *x == xi) {
            out.push((xi, c));
        }
    }
    out.sort();
    Ok(out)
}

/// `τ_d(W)`: inclusion-maximal dual lattices `(H/ξ)^∨` over `ξ ∈ Ξ_d(W)`.
pub fn tau_d(w: &Arrangement, d: u64, bounds: &Bounds) -> Result<Vec<Lattice>> {
    Ok(maximal_lattices(
        xi_d(w, d, bounds)?.iter().map(Subgroup::dual_lattice).collect(),
    ))
}

fn same_source(nu: &Homomorphism, xi: &Subgroup) -> Result<()> {
    if nu.source() != xi.parent() {
        return Err(Error::Dimension("homomorphism and subgroup live in different groups".into()));
    }
    Ok(())
}

/// `σ_A(ξ)`: `rank(ker ν + ξ) < rank H`.
pub fn sigma_member(nu: &Homomorphism, xi: &Subgroup) -> Result<bool> {
    same_source(nu, xi)?;
    Ok(nu.kernel().sum(xi)?.rank() < xi.parent().rank())
}

/// `U_A(ξ)`: `σ_A(ξ)` and `ker ν ∩ ξ̄ ⊆ ξ`.
pub fn u_member(nu: &Homomorphism, xi: &Subgroup) -> Result<bool> {
    if !sigma_member(nu, xi)? {
        return Ok(false);
    }
    Ok(xi.contains(&nu.kernel().intersection(&xi.saturation())?))
}

/// `θ_A(ξ)`: some `ξ ≤ ξ′ ⊊ ξ̄` with cyclic `ξ̄/ξ′` contains `ker ν ∩ ξ̄`.
pub fn theta_member(nu: &Homomorphism, xi: &Subgroup, bounds: &Bounds) -> Result<bool> {
    Ok(theta_witness(nu, xi, bounds)?.is_some())
}

/// A character `ρ ≠ 1` of `ξ̄/ξ` whose kernel `ξ′` witnesses `θ_A(ξ)`.
pub fn theta_witness(nu: &Homomorphism, xi: &Subgroup, bounds: &Bounds) -> Result<Option<TorsionCharacter>> {
    same_source(nu, xi)?;
    let meet = nu.kernel().intersection(&xi.saturation())?;
    for rho in determinant_dual(xi, bounds)?.into_iter().skip(1) {
        if rho.vanishes_on(meet.preimage()) {
            return Ok(Some(rho));
        }
    }
    Ok(None)
}

/// Where `V(ker ν)` meets `W` in positive dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpsilonWitness {
    /// The component `κV(ker ν)‾` of `im ν̂`.
    pub kappa: TorsionCharacter,
    /// The coset of `W` met, or `None` when the hypersurface is responsible.
    pub coset: Option<TranslatedSubgroup>,
    pub dimension: i64,
}

/// The first positive-dimensional meeting of `im ν̂` with `W`, scanning components in a fixed order.
pub fn upsilon_witness(nu: &Homomorphism, w: &Variety, bounds: &Bounds) -> Result<Option<UpsilonWitness>> {
    if nu.source() != w.parent() {
        return Err(Error::Dimension("homomorphism and variety over different groups".into()));
    }
    let ker = nu.kernel();
    let kbar = ker.saturation();
    let kappas = determinant_dual(&ker, bounds)?;
    let cosets = w.arrangement.cosets(bounds)?;
    for kappa in &kappas {
        let comp = TranslatedSubgroup::new(kbar.clone(), kappa.clone())?;
        for c in &cosets {
            let (meets, dim) = coset_intersection(&comp, c)?;
            if meets && dim > 0 {
                return Ok(Some(UpsilonWitness {
                    kappa: kappa.clone(),
                    coset: Some(c.clone()),
                    dimension: dim,
                }));
            }
        }
        if let Some(f) = &w.hypersurface {
            let g = restrict_to_coset(f, &ker, kappa)?;
            if hypersurface_positive_dim(&g) {
                let r = g.ambient().rank() as i64;
                return Ok(Some(UpsilonWitness {
                    kappa: kappa.clone(),
                    coset: None,
                    dimension: if g.is_zero() { r } else { r - 1 },
                }));
            }
        }
    }
    Ok(None)
}

/// `Υ_A(W)`: `dim(V(ker ν) ∩ W) > 0`.
pub fn upsilon_member(nu: &Homomorphism, w: &Variety, bounds: &Bounds) -> Result<bool> {
    Ok(upsilon_witness(nu, w, bounds)?.is_some())
}

/// `Ω`-membership for an arrangement by the closed form: no component `η_jV(ξ_j)` has
/// `σ_A(ξ_j)` and `ker η_j ⊇ ker ν ∩ ξ_j`, and no deleted subgroup has `σ_A(ξ) ∩ θ_A(ξ)`.
pub fn omega_closed_form(nu: &Homomorphism, w: &Arrangement, bounds: &Bounds) -> Result<bool> {
    let ker = nu.kernel();
    for c in &w.components {
        if sigma_member(nu, c.xi())? && c.eta().vanishes_on(ker.intersection(c.xi())?.preimage()) {
            return Ok(false);
        }
    }
    for xi in &w.deleted {
        if sigma_member(nu, xi)? && theta_member(nu, xi, bounds)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[ν] ∈ Ω_A(W)`, i.e. `im ν̂ ∩ W` is finite.
pub fn omega_member(nu: &Homomorphism, w: &Variety, bounds: &Bounds) -> Result<bool> {
    let scan = !upsilon_member(nu, w, bounds)?;
    if w.hypersurface.is_none() {
        let closed = omega_closed_form(nu, &w.arrangement, bounds)?;
        if closed != scan {
            return Err(Error::Invariant(format!(
                "coset scan says {scan} but the closed form says {closed} for ν = {nu:?}"
            )));
        }
    }
    Ok(scan)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportMode {
    Rank1Exact,
    ArrangementExact,
    UpperBoundOnly,
}

impl fmt::Display for ReportMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportMode::Rank1Exact => "rank1-exact",
            ReportMode::ArrangementExact => "arrangement-exact",
            ReportMode::UpperBoundOnly => "upper-bound-only",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstituentKind {
    U,
    Sigma,
    SigmaAndTheta,
}

impl fmt::Display for ConstituentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstituentKind::U => "U_A",
            ConstituentKind::Sigma => "sigma_A",
            ConstituentKind::SigmaAndTheta => "sigma_and_theta",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub xi: Subgroup,
    pub kind: ConstituentKind,
    pub witness_eta: Option<TorsionCharacter>,
}

impl Constituent {
    pub fn contains(&self, nu: &Homomorphism, bounds: &Bounds) -> Result<bool> {
        match self.kind {
            ConstituentKind::U => u_member(nu, &self.xi),
            ConstituentKind::Sigma => sigma_member(nu, &self.xi),
            ConstituentKind::SigmaAndTheta => Ok(sigma_member(nu, &self.xi)? && theta_member(nu, &self.xi, bounds)?),
        }
    }
}

/// `Ω_A = Γ(H,A) ∖ ⋃ constituents` (exact modes) or `⊆` (upper-bound mode).
#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub h: FgAbGroup,
    pub a: FgAbGroup,
    pub mode: ReportMode,
    pub constituents: Vec<Constituent>,
    pub constant: u64,
}

impl ObstructionReport {
    /// Whether `[ν]` avoids every constituent.
    pub fn admits(&self, nu: &Homomorphism, bounds: &Bounds) -> Result<bool> {
        for c in &self.constituents {
            if c.contains(nu, bounds)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn push_constituent(out: &mut Vec<Constituent>, c: Constituent) {
    if !out.iter().any(|o| o.xi == c.xi && o.kind == c.kind) {
        out.push(c);
    }
}

fn arrangement_constant(w: &Arrangement) -> Result<u64> {
    let mut c = BigInt::one();
    for comp in &w.components {
        let exp = comp.xi().determinant_group().cyclic_exponent();
        c = c.lcm(&(comp.eta().order() * BigInt::from(exp)));
    }
    for xi in &w.deleted {
        c = c.lcm(&BigInt::from(xi.determinant_group().cyclic_exponent()));
    }
    c.to_u64().ok_or_else(|| Error::Unsupported("constant too large".into()))
}

/// The complement description of `Ω_A(W)`.
pub fn omega_describe(w: &Variety, a: &FgAbGroup, bounds: &Bounds) -> Result<ObstructionReport> {
    let h = w.parent().clone();
    let arr = &w.arrangement;
    let mut constituents = Vec::new();
    let untranslated = arr.components.iter().all(TranslatedSubgroup::is_untranslated);
    let (mode, constant) = if let Some(f) = &w.hypersurface {
        // U_{A,1}(Z(f)) from the admissible partitions, plus U over all maximal cosets of the arrangement part
        if h.is_torsion_free() {
            for l in admissible_tau1(f, bounds)? {
                let xi = Subgroup::from_preimage(&h, l.annihilator())?;
                push_constituent(&mut constituents, Constituent { xi, kind: ConstituentKind::U, witness_eta: None });
            }
        }
        let c = arrangement_constant(arr)?;
        for (xi, coset) in xi_d_with_cosets(arr, c, bounds)? {
            let eta = (!coset.eta().is_trivial()).then(|| coset.eta().clone());
            push_constituent(&mut constituents, Constituent { xi, kind: ConstituentKind::U, witness_eta: eta });
        }
        (ReportMode::UpperBoundOnly, c)
    } else if untranslated {
        for comp in &arr.components {
            if comp.dimension() > 0 {
                push_constituent(
                    &mut constituents,
                    Constituent { xi: comp.xi().clone(), kind: ConstituentKind::Sigma, witness_eta: None },
                );
            }
        }
        for xi in &arr.deleted {
            if !xi.is_saturated() && h.rank() > xi.rank() {
                push_constituent(
                    &mut constituents,
                    Constituent { xi: xi.clone(), kind: ConstituentKind::SigmaAndTheta, witness_eta: None },
                );
            }
        }
        (ReportMode::ArrangementExact, arrangement_constant(arr)?)
    } else {
        let (mode, c) = if a.rank() == 1 {
            (ReportMode::Rank1Exact, a.cyclic_exponent())
        } else {
            (ReportMode::ArrangementExact, arrangement_constant(arr)?)
        };
        for (xi, coset) in xi_d_with_cosets(arr, c, bounds)? {
            let eta = (!coset.eta().is_trivial()).then(|| coset.eta().clone());
            push_constituent(&mut constituents, Constituent { xi, kind: ConstituentKind::U, witness_eta: eta });
        }
        (mode, c)
    };
    Ok(ObstructionReport {
        h,
        a: a.clone(),
        mode,
        constituents,
        constant,
    })
}

/// Fiber of `q` over `[ν̄]` and how much of it lies in `Ω_A`.
#[derive(Clone, Debug)]
pub struct SingularProbe {
    pub base_in_omega: bool,
    pub fiber_size: usize,
    pub in_omega_count: usize,
    pub members: Vec<Homomorphism>,
}

impl SingularProbe {
    /// `[ν̄] ∈ Σ_A`.
    pub fn is_singular(&self) -> bool {
        self.base_in_omega && self.in_omega_count < self.fiber_size
    }
}

pub fn singular_set_probe(
    w: &Variety,
    a: &FgAbGroup,
    nu_bar: &Homomorphism,
    bounds: &Bounds,
) -> Result<SingularProbe> {
    let base_in_omega = omega_member(nu_bar, w, bounds)?;
    let fiber = fiber_representatives(nu_bar, a, bounds)?;
    let mut members = Vec::new();
    for nu in &fiber {
        if omega_member(nu, w, bounds)? {
            members.push(nu.clone());
        }
    }
    Ok(SingularProbe {
        base_in_omega,
        fiber_size: fiber.len(),
        in_omega_count: members.len(),
        members,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PullbackVerdict {
    GuaranteedPullback,
    GuaranteedStrict,
    Inconclusive,
}

impl fmt::Display for PullbackVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PullbackVerdict::GuaranteedPullback => "guaranteed-pullback",
            PullbackVerdict::GuaranteedStrict => "guaranteed-strict",
            PullbackVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnosis {
    pub verdict: PullbackVerdict,
    pub reason: String,
}

fn intersect_all(parent: &FgAbGroup, xs: &[&Subgroup]) -> Result<Subgroup> {
    xs.iter().try_fold(Subgroup::whole(parent), |acc, x| acc.intersection(x))
}

/// Whether `Ω_A(W) = q⁻¹(Ω_Ā(W))`, decided from sufficient conditions only.
pub fn pullback_diagnostics(w: &Arrangement, a: &FgAbGroup) -> Result<Diagnosis> {
    let h = w.parent();
    let tors = a.torsion_order();
    let c_a = BigInt::from(a.cyclic_exponent());
    let positive: Vec<&TranslatedSubgroup> = w.components.iter().filter(|c| c.dimension() > 0).collect();
    let deleted: Vec<&Subgroup> = w
        .deleted
        .iter()
        .filter(|x| !x.is_saturated() && h.rank() > x.rank())
        .collect();

    let orders: Vec<BigInt> = positive
        .iter()
        .map(|c| c.translation_order())
        .chain(deleted.iter().map(|x| x.determinant_order()))
        .collect();
    if orders.iter().all(|o| o.gcd(&tors).is_one()) {
        return Ok(Diagnosis {
            verdict: PullbackVerdict::GuaranteedPullback,
            reason: format!("every translation order is coprime to |Tors A| = {tors}"),
        });
    }
    if !h.is_torsion_free() || a.rank() >= h.rank() {
        return Ok(Diagnosis {
            verdict: PullbackVerdict::Inconclusive,
            reason: "strictness criteria need a torsion-free H and rank A < rank H".into(),
        });
    }

    let translated: Vec<&TranslatedSubgroup> = positive.iter().copied().filter(|c| !c.is_untranslated()).collect();
    if translated.len() == 1 && deleted.is_empty() && positive.len() == 1 {
        let c = translated[0];
        let c_h = Subgroup::new(
            h,
            &(0..h.dim())
                .map(|i| {
                    let mut v = vec![BigInt::zero(); h.dim()];
                    v[i] = c_a.clone();
                    v
                })
                .collect::<Vec<_>>(),
        )?;
        if c.eta().vanishes_on(c.xi().intersection(&c_h)?.preimage()) {
            return Ok(Diagnosis {
                verdict: PullbackVerdict::GuaranteedStrict,
                reason: format!(
                    "single translated component of order {} dividing c(A) = {c_a}, rank A < rank H",
                    c.translation_order()
                ),
            });
        }
    }

    let all: Vec<&Subgroup> = positive.iter().map(|c| c.xi()).chain(deleted.iter().copied()).collect();
    for (j, c) in positive.iter().enumerate() {
        if c.is_untranslated() || !c_a.is_multiple_of(&c.translation_order()) {
            continue;
        }
        let others: Vec<&Subgroup> = all.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect();
        let meet = intersect_all(h, &others)?;
        if !c.xi().saturation().contains(&meet) && a.rank() < meet.rank() {
            return Ok(Diagnosis {
                verdict: PullbackVerdict::GuaranteedStrict,
                reason: format!("component {j} is transverse to the others and its order divides c(A) = {c_a}"),
            });
        }
    }
    for (j, x) in deleted.iter().enumerate() {
        let k = positive.len() + j;
        let others: Vec<&Subgroup> = all.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, x)| *x).collect();
        let meet = intersect_all(h, &others)?;
        let shares_prime = x.determinant_order().gcd(&c_a) > BigInt::one();
        if shares_prime && !x.saturation().contains(&meet) && a.rank() < meet.rank() {
            return Ok(Diagnosis {
                verdict: PullbackVerdict::GuaranteedStrict,
                reason: format!("deleted subgroup {j} is transverse to the others and shares a prime with c(A) = {c_a}"),
            });
        }
    }
    Ok(Diagnosis {
        verdict: PullbackVerdict::Inconclusive,
        reason: "no sufficient condition applies".into(),
    })
}

/// `V(ξ)` as a single-component arrangement.
pub fn subgroup_arrangement(xi: &Subgroup) -> Result<Arrangement> {
    Arrangement::new(xi.parent()).with_component(v_of(xi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Bounds {
        Bounds::default()
    }

    fn sub(h: &FgAbGroup, gens: &[Vec<i64>]) -> Subgroup {
        Subgroup::from_i64(h, gens).unwrap()
    }

    fn chr(h: &FgAbGroup, v: &[(i64, i64)]) -> TorsionCharacter {
        TorsionCharacter::from_fractions(h, v).unwrap()
    }

    fn hom(h: &FgAbGroup, a: &FgAbGroup, rows: &[Vec<i64>]) -> Homomorphism {
        Homomorphism::from_i64(h, a, rows).unwrap()
    }

    fn ruled_skeleton() -> Arrangement {
        let h = FgAbGroup::free(3);
        let comps = [
            (vec![vec![2, 0, 0], vec![0, 1, 0]], [(1, 2), (0, 1), (0, 1)]),
            (vec![vec![0, 1, 0], vec![0, 0, 1]], [(0, 1), (0, 1), (0, 1)]),
            (vec![vec![2, -1, 0], vec![-1, 0, 1]], [(0, 1), (0, 1), (0, 1)]),
            (vec![vec![2, -1, 0], vec![-2, 0, 2]], [(1, 2), (0, 1), (1, 2)]),
        ];
        comps.iter().fold(Arrangement::new(&h), |w, (g, e)| {
            let xi = sub(&h, g).saturation();
            w.with_component(TranslatedSubgroup::new(xi, chr(&h, e)).unwrap()).unwrap()
        })
    }

    #[test]
    fn xi_example_two_lines() {
        let h = FgAbGroup::free(2);
        let w = Arrangement::new(&h)
            .with_component(v_of(&sub(&h, &[vec![0, 1]])))
            .unwrap()
            .with_component(TranslatedSubgroup::new(sub(&h, &[vec![1, 0]]), chr(&h, &[(1, 2), (0, 1)])).unwrap())
            .unwrap();
        assert_eq!(maximal_translated_tori(&w, &b()).unwrap().len(), 2);
        assert_eq!(xi_d(&w, 3, &b()).unwrap(), vec![sub(&h, &[vec![0, 1]])]);
        let mut even = vec![sub(&h, &[vec![0, 1]]), sub(&h, &[vec![2, 0]])];
        even.sort();
        assert_eq!(xi_d(&w, 4, &b()).unwrap(), even);
        assert_eq!(tau_d(&w, 1, &b()).unwrap(), vec![Lattice::from_i64(2, &[vec![1, 0]]).unwrap()]);
    }

    #[test]
    fn ruled_xi_and_tau() {
        let w = ruled_skeleton();
        let h = w.parent().clone();
        let xi2 = sub(&h, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let xi3 = sub(&h, &[vec![2, -1, 0], vec![-1, 0, 1]]);
        let mut one = vec![xi2.clone(), xi3.clone()];
        one.sort();
        assert_eq!(xi_d(&w, 1, &b()).unwrap(), one);
        let mut tau = vec![
            Lattice::from_i64(3, &[vec![1, 0, 0]]).unwrap(),
            Lattice::from_i64(3, &[vec![1, 2, 1]]).unwrap(),
        ];
        tau.sort();
        assert_eq!(tau_d(&w, 1, &b()).unwrap(), tau);
        // the fourth translation is trivial on ξ̄₄ = ξ₃, so only ξ₁ is new at d = 2
        let two = xi_d(&w, 2, &b()).unwrap();
        assert_eq!(two.len(), 3);
        assert!(two.contains(&sub(&h, &[vec![2, 0, 0], vec![0, 1, 0]])));
    }

    #[test]
    fn sigma_and_u() {
        let h = FgAbGroup::free(2);
        let z = FgAbGroup::free(1);
        let xi = sub(&h, &[vec![1, 2]]);
        assert!(sigma_member(&hom(&h, &z, &[vec![-2, 1]]), &xi).unwrap());
        assert!(!sigma_member(&hom(&h, &z, &[vec![1, 0]]), &xi).unwrap());
        assert!(sigma_member(&hom(&h, &z, &[vec![1, 0]]), &Subgroup::trivial(&h)).unwrap());
        assert!(!sigma_member(&hom(&h, &z, &[vec![1, 0]]), &Subgroup::whole(&h)).unwrap());

        let a = FgAbGroup::new(1, vec![2]).unwrap();
        let nu = hom(&h, &a, &[vec![1, 0], vec![0, 1]]);
        let xi = nu.kernel();
        assert!(u_member(&nu, &xi).unwrap());
        assert!(!u_member(&nu.free_part(), &xi).unwrap());

        let nu = hom(&h, &a, &[vec![1, 1], vec![1, 0]]);
        assert!(u_member(&nu, &sub(&h, &[vec![2, -2]])).unwrap());
    }

    #[test]
    fn theta_on_deleted_subgroup() {
        let h = FgAbGroup::free(6);
        let a = FgAbGroup::new(1, vec![2]).unwrap();
        let xi = sub(&h, &[vec![0, 0, 2, 0, 0, 0], vec![0, 0, 0, 1, 0, 0], vec![0, 0, 0, 0, 1, 0], vec![0, 0, 0, 0, 0, 1]]);
        let yes = hom(&h, &a, &[vec![1, 0, 0, 0, 0, 0], vec![0, 0, 1, 0, 0, 0]]);
        let no = hom(&h, &a, &[vec![1, 0, 0, 0, 0, 0], vec![0, 1, 0, 0, 0, 0]]);
        assert!(theta_member(&yes, &xi, &b()).unwrap());
        assert!(!theta_member(&no, &xi, &b()).unwrap());
        assert!(!theta_member(&yes, &xi.saturation(), &b()).unwrap());
    }

    #[test]
    fn four_two_one() {
        let h = FgAbGroup::free(2);
        let a = FgAbGroup::new(1, vec![2]).unwrap();
        let w: Variety = Arrangement::new(&h)
            .with_component(TranslatedSubgroup::new(sub(&h, &[vec![1, -1]]), chr(&h, &[(1, 2), (0, 1)])).unwrap())
            .unwrap()
            .into();
        let nu = hom(&h, &a, &[vec![1, 1], vec![1, 0]]);
        assert!(upsilon_member(&nu, &w, &b()).unwrap());
        assert!(!omega_member(&nu, &w, &b()).unwrap());
        assert!(omega_member(&nu.free_part(), &w, &b()).unwrap());

        let r = omega_describe(&w, &FgAbGroup::free(1), &b()).unwrap();
        assert_eq!(r.mode, ReportMode::Rank1Exact);
        assert!(r.constituents.is_empty());
        let r = omega_describe(&w, &a, &b()).unwrap();
        assert_eq!(r.constant, 2);
        assert_eq!(r.constituents.len(), 1);
        assert_eq!(r.constituents[0].xi, sub(&h, &[vec![2, -2]]));
        assert!(!r.admits(&nu, &b()).unwrap());
    }

    fn strata() -> Variety {
        let h = FgAbGroup::free(3);
        Arrangement::new(&h)
            .with_point(TorsionCharacter::trivial(&h))
            .unwrap()
            .with_component(TranslatedSubgroup::new(sub(&h, &[vec![1, 0, 0]]), chr(&h, &[(1, 2), (0, 1), (0, 1)])).unwrap())
            .unwrap()
            .into()
    }

    #[test]
    fn strata_infinite() {
        let w = strata();
        let h = w.parent().clone();
        let a = FgAbGroup::new(1, vec![2]).unwrap();
        assert!(omega_member(&hom(&h, &a, &[vec![0, 1, 0], vec![0, 0, 1]]), &w, &b()).unwrap());
        assert!(!omega_member(&hom(&h, &a, &[vec![0, 1, 0], vec![1, 0, 1]]), &w, &b()).unwrap());
        let nu_bar = hom(&h, &FgAbGroup::free(1), &[vec![0, 1, 0]]);
        let p = singular_set_probe(&w, &a, &nu_bar, &b()).unwrap();
        assert_eq!((p.fiber_size, p.in_omega_count), (3, 1));
        assert!(p.is_singular());
        let d = pullback_diagnostics(&w.arrangement, &a).unwrap();
        assert_eq!(d.verdict, PullbackVerdict::GuaranteedStrict);
        let generic = hom(&h, &FgAbGroup::free(1), &[vec![1, 1, 0]]);
        let p = singular_set_probe(&w, &a, &generic, &b()).unwrap();
        assert_eq!((p.fiber_size, p.in_omega_count), (3, 3));
    }

    #[test]
    fn untranslated_is_pullback() {
        let h = FgAbGroup::free(3);
        let w = Arrangement::new(&h).with_component(v_of(&sub(&h, &[vec![1, 0, 0]]))).unwrap();
        let a = FgAbGroup::new(1, vec![2]).unwrap();
        let d = pullback_diagnostics(&w, &a).unwrap();
        assert_eq!(d.verdict, PullbackVerdict::GuaranteedPullback);
        let r = omega_describe(&w.clone().into(), &a, &b()).unwrap();
        assert_eq!(r.constituents[0].kind, ConstituentKind::Sigma);
        assert!(!omega_member(&hom(&h, &FgAbGroup::free(1), &[vec![0, 1, 0]]), &w.clone().into(), &b()).unwrap());
        assert!(omega_member(&hom(&h, &FgAbGroup::free(1), &[vec![1, 0, 0]]), &w.clone().into(), &b()).unwrap());
        let points = Arrangement::new(&h).with_point(TorsionCharacter::trivial(&h)).unwrap();
        assert!(omega_member(&hom(&h, &FgAbGroup::free(2), &[vec![1, 0, 0], vec![0, 1, 0]]), &points.into(), &b()).unwrap());
    }

    #[test]
    fn ruled_hypersurface() {
        let h = FgAbGroup::free(3);
        let f = LaurentPolynomial::from_int_terms(
            &h,
            &[
                (vec![0, 1, 0], 1),
                (vec![1, 0, 1], -1),
                (vec![1, 0, 0], 1),
                (vec![0, 0, 1], -1),
            ],
        )
        .unwrap();
        let a = FgAbGroup::new(2, vec![2]).unwrap();
        let nu = hom(&h, &a, &[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        let w = Variety::hypersurface(f);
        assert!(upsilon_member(&nu, &w, &b()).unwrap());
        let r = omega_describe(&w, &a, &b()).unwrap();
        assert_eq!(r.mode, ReportMode::UpperBoundOnly);
        assert_eq!(r.constituents.len(), 2);
        // im ν̂ = {t₂ = ±1} contains the line V(ξ₂) = {t₂ = t₃ = 1}
        assert!(!r.admits(&nu, &b()).unwrap());
        // excluded from Ω although it avoids every constituent
        let strict = hom(&h, &a, &[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, 0]]);
        assert_eq!(strict.kernel(), sub(&h, &[vec![2, 2, 2]]));
        assert!(r.admits(&strict, &b()).unwrap());
        assert!(!omega_member(&strict, &w, &b()).unwrap());
    }
}
