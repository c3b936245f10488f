//! Brute-force oracles used to cross-check the closed-form algorithms.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;

use crate::character::{coset_containment, determinant_dual, Arrangement, TranslatedSubgroup};
use crate::error::{input, Bounds, Error, Result};
use crate::gamma::{count_automorphisms, count_epis};
use crate::group::{FgAbGroup, Homomorphism, Subgroup};
use crate::jump::{omega_closed_form, omega_describe, upsilon_member, ReportMode, Variety};

/// `|Γ(H/Ā, A/Ā)|` by counting `Epi` on a finite reduction and dividing by `|Aut|`.
///
/// The free factor `ℤ^{n−r}` is replaced by `(ℤ_N)^{n−r}` with `N` the exponent of `Tors(A)`.
pub fn oracle_gamma_count(h: &FgAbGroup, a: &FgAbGroup, bounds: &Bounds) -> Result<BigUint> {
    if !h.has_quotient(a) {
        return Ok(BigUint::zero());
    }
    let t = a.torsion_part();
    let n = a.cyclic_exponent();
    let mut factors = vec![n; h.rank() - a.rank()];
    factors.extend_from_slice(h.torsion());
    let reduced = FgAbGroup::from_factors(0, &factors)?;
    let epis = count_epis(&reduced, &t, bounds)?;
    let auts = count_automorphisms(&t, bounds)?;
    let (q, r) = epis.div_rem(&auts);
    if !r.is_zero() {
        return Err(Error::Invariant(format!("|Aut| = {auts} does not divide |Epi| = {epis}")));
    }
    Ok(q)
}

/// Sublattices of the lattice spanned by `basis` of index at most `bound`, via column
/// Hermite forms `T` (upper triangular, `0 ≤ T_ij < T_ii`).
fn sublattices(basis: &[Vec<BigInt>], bound: u64) -> Vec<(Vec<Vec<BigInt>>, u64)> {
    let r = basis.len();
    let mut out = Vec::new();
    let mut diag = vec![1u64; r];
    fn diagonals(i: usize, left: u64, diag: &mut Vec<u64>, acc: &mut Vec<Vec<u64>>) {
        if i == diag.len() {
            acc.push(diag.clone());
            return;
        }
        for d in 1..=left {
            diag[i] = d;
            diagonals(i + 1, left / d, diag, acc);
        }
    }
    let mut diags = Vec::new();
    diagonals(0, bound, &mut diag, &mut diags);
    for d in diags {
        // entries T[i][j] for i < j, each in 0..d[i]
        let slots: Vec<(usize, usize)> = (0..r).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let choices: Vec<Vec<usize>> = slots.iter().map(|&(i, _)| (0..d[i] as usize).collect()).collect();
        crate::finite::for_each_tuple(&choices, &mut |vals| {
            let mut t = vec![vec![0i64; r]; r];
            for k in 0..r {
                t[k][k] = d[k] as i64;
            }
            for (&(i, j), &v) in slots.iter().zip(vals) {
                t[i][j] = v as i64;
            }
            let cols: Vec<Vec<BigInt>> = (0..r)
                .map(|j| {
                    let dim = basis.first().map_or(0, Vec::len);
                    let mut c = vec![BigInt::zero(); dim];
                    for (i, b) in basis.iter().enumerate() {
                        if t[i][j] != 0 {
                            for (x, y) in c.iter_mut().zip(b) {
                                *x += y * t[i][j];
                            }
                        }
                    }
                    c
                })
                .collect();
            out.push((cols, d.iter().product()));
        });
    }
    out
}

/// `Ξ_d(W)` by exhaustive search over subgroups of index at most `index_bound` in the
/// saturations of the components, each tested against the defining conditions.
pub fn oracle_xi(w: &Arrangement, d: u64, index_bound: u64, bounds: &Bounds) -> Result<Vec<Subgroup>> {
    let h = w.parent();
    if !h.is_torsion_free() || !(1..=3).contains(&h.rank()) {
        return input("the Ξ oracle runs over ℤ, ℤ² or ℤ³");
    }
    bounds.check("oracle index bound", bounds.max_det_order, index_bound)?;
    let cosets = w.cosets(bounds)?;
    let mut saturations: Vec<Subgroup> = Vec::new();
    for c in &cosets {
        if !saturations.contains(c.xi()) {
            saturations.push(c.xi().clone());
        }
    }
    let mut out: Vec<Subgroup> = Vec::new();
    for s in saturations {
        for (gens, index) in sublattices(&s.preimage().generators(), index_bound) {
            if !d.is_multiple_of(index) {
                continue;
            }
            let xi = Subgroup::new(h, &gens)?;
            if xi.determinant_group().torsion().len() > 1 || out.contains(&xi) {
                continue;
            }
            let mut found = false;
            for eta in determinant_dual(&xi, bounds)? {
                if eta.order_on(s.preimage()) != BigInt::from(index) {
                    continue;
                }
                let c = TranslatedSubgroup::new(s.clone(), eta)?.canonical()?;
                let mut inside = false;
                let mut maximal = true;
                for o in &cosets {
                    if coset_containment(&c, o)? {
                        inside = true;
                        if o.dimension() > c.dimension() {
                            maximal = false;
                        }
                    }
                }
                if inside && maximal && c.dimension() > 0 {
                    found = true;
                    break;
                }
            }
            if found {
                out.push(xi);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Outcome of comparing the independent descriptions of `Ω` on a sample.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OmegaAgreement {
    pub checked: usize,
    pub in_omega: usize,
    pub disagreements: Vec<String>,
}

impl OmegaAgreement {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// For each sampled `ν`, compare the scan `¬Υ`, the closed form, and (when exact) the
/// obstruction report.
pub fn oracle_omega_agreement(
    w: &Variety,
    a: &FgAbGroup,
    sample: &[Homomorphism],
    bounds: &Bounds,
) -> Result<OmegaAgreement> {
    let report = omega_describe(w, a, bounds)?;
    let rows: Vec<Result<(bool, Option<String>)>> = sample
        .par_iter()
        .map(|nu| {
            let scan = !upsilon_member(nu, w, bounds)?;
            let mut verdicts = vec![("scan", scan)];
            if w.hypersurface.is_none() {
                verdicts.push(("closed form", omega_closed_form(nu, &w.arrangement, bounds)?));
            }
            if report.mode != ReportMode::UpperBoundOnly {
                verdicts.push(("report", report.admits(nu, bounds)?));
            }
            let bad = verdicts.iter().any(|&(_, v)| v != scan);
            let trace = bad.then(|| {
                let parts: Vec<String> = verdicts.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("ν = {:?}: {}", nu.matrix().to_rows(), parts.join(", "))
            });
            Ok((scan, trace))
        })
        .collect();
    let mut out = OmegaAgreement::default();
    for row in rows {
        let (member, trace) = row?;
        out.checked += 1;
        out.in_omega += member as usize;
        out.disagreements.extend(trace);
    }
    Ok(out)
}

/// All surjections `ℤ^n ↠ ℤ` with entries in `[-m, m]`, up to sign.
pub fn primitive_rows(n: usize, m: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let choices: Vec<Vec<usize>> = vec![(0..(2 * m + 1) as usize).collect(); n];
    crate::finite::for_each_tuple(&choices, &mut |t| {
        let v: Vec<i64> = t.iter().map(|&x| x as i64 - m).collect();
        let g = v.iter().fold(0i64, |g, x| g.gcd(x));
        let lead = v.iter().find(|x| **x != 0).copied().unwrap_or(0);
        if g == 1 && lead > 0 {
            out.push(v);
        }
    });
    out
}
