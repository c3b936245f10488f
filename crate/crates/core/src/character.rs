//! Torsion points and torsion-translated algebraic subgroups `ηV(ξ)` of the character group `Ĥ`.
//!
//! A character is stored additively: `h ↦ exp(2πi Σ v_j h_j)` with `v_j ∈ ℚ/ℤ`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{input, Bounds, Error, Result};
use crate::group::{FgAbGroup, Subgroup};
use crate::lattice::{self, smith_normal_form, IntMatrix, Lattice};

pub(crate) fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionCharacter {
    parent: FgAbGroup,
    values: Vec<BigRational>,
}

impl fmt::Debug for TorsionCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

impl TorsionCharacter {
    pub fn new(parent: &FgAbGroup, values: Vec<BigRational>) -> Result<Self> {
        parent_len(parent, values.len())?;
        let values: Vec<BigRational> = values.iter().map(frac).collect();
        for (i, &d) in parent.torsion().iter().enumerate() {
            let v = &values[parent.rank() + i] * BigRational::from_integer(BigInt::from(d));
            if !v.is_integer() {
                return input(format!(
                    "value {} on a generator of order {d} is not a character",
                    values[parent.rank() + i]
                ));
            }
        }
        Ok(TorsionCharacter {
            parent: parent.clone(),
            values,
        })
    }

    /// Character with values `num_j / den_j`.
    pub fn from_fractions(parent: &FgAbGroup, values: &[(i64, i64)]) -> Result<Self> {
        let v = values
            .iter()
            .map(|&(p, q)| {
                if q == 0 {
                    input("zero denominator")
                } else {
                    Ok(BigRational::new(BigInt::from(p), BigInt::from(q)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent, v)
    }

    pub fn trivial(parent: &FgAbGroup) -> Self {
        TorsionCharacter {
            parent: parent.clone(),
            values: vec![BigRational::zero(); parent.dim()],
        }
    }

    pub fn parent(&self) -> &FgAbGroup {
        &self.parent
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Value on an element, in `[0, 1)`.
    pub fn evaluate(&self, x: &[BigInt]) -> BigRational {
        let s: BigRational = self
            .values
            .iter()
            .zip(x)
            .filter(|(v, _)| !v.is_zero())
            .map(|(v, a)| v * BigRational::from_integer(a.clone()))
            .sum();
        frac(&s)
    }

    pub fn order(&self) -> BigInt {
        self.values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    /// Order of the restriction to the subgroup with the given preimage lattice.
    pub fn order_on(&self, l: &Lattice) -> BigInt {
        l.generators()
            .iter()
            .fold(BigInt::one(), |acc, g| acc.lcm(self.evaluate(g).denom()))
    }

    pub fn vanishes_on(&self, l: &Lattice) -> bool {
        l.generators().iter().all(|g| self.evaluate(g).is_zero())
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Result<Self> {
        if self.parent != other.parent {
            return Err(Error::Dimension("characters of different groups".into()));
        }
        Ok(TorsionCharacter {
            parent: self.parent.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| frac(&f(a, b)))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        TorsionCharacter {
            parent: self.parent.clone(),
            values: self
                .values
                .iter()
                .map(|v| frac(&(v * BigRational::from_integer(k.clone()))))
                .collect(),
        }
    }

    /// `ker η = {x : η(x) = 0}`.
    pub fn kernel(&self) -> Subgroup {
        let d = self.order();
        let m = self.parent.dim();
        // x ↦ Σ (d v_j) x_j mod d
        let mut row = IntMatrix::zeros(1, m + 1);
        for (j, v) in self.values.iter().enumerate() {
            row[(0, j)] = (v * BigRational::from_integer(d.clone())).to_integer();
        }
        row[(0, m)] = d;
        let k = lattice::kernel(&row);
        let top: Vec<usize> = (0..m).collect();
        let pre = Lattice::new(&k.basis().select_rows(&top));
        Subgroup::from_preimage(&self.parent, pre).expect("characters vanish on relations")
    }
}

fn parent_len(parent: &FgAbGroup, len: usize) -> Result<()> {
    if len != parent.dim() {
        return Err(Error::Dimension(format!(
            "{len} values for a group with {} coordinates",
            parent.dim()
        )));
    }
    Ok(())
}

/// `character_kernel(η)`.
pub fn character_kernel(eta: &TorsionCharacter) -> Subgroup {
    eta.kernel()
}

/// Characters `ρ` vanishing on `ξ`, one per element of `dual(ξ̄/ξ)`, in a fixed order
/// (the trivial character first).
pub fn determinant_dual(xi: &Subgroup, bounds: &Bounds) -> Result<Vec<TorsionCharacter>> {
    let parent = xi.parent();
    let b = xi.preimage().basis();
    let (d, u, _) = smith_normal_form(b);
    let mut gens: Vec<(Vec<BigRational>, u64)> = Vec::new();
    let mut order: u64 = 1;
    for i in 0..b.cols().min(b.rows()) {
        let di = &d[(i, i)];
        if di.is_one() || di.is_zero() {
            continue;
        }
        let di = di
            .to_u64()
            .filter(|&x| x <= bounds.max_det_order)
            .ok_or_else(|| Error::Bound {
                what: "determinant group order",
                limit: bounds.max_det_order,
                actual: di.to_string(),
            })?;
        order = order.saturating_mul(di);
        bounds.check("determinant group order", bounds.max_det_order, order)?;
        let row: Vec<BigRational> = u
            .row(i)
            .into_iter()
            .map(|x| BigRational::new(x, BigInt::from(di)))
            .collect();
        gens.push((row, di));
    }
    let mut out = vec![TorsionCharacter::trivial(parent)];
    for (row, di) in gens {
        let base = TorsionCharacter::new(parent, row)?;
        let mut next = Vec::with_capacity(out.len() * di as usize);
        for c in 0..di {
            let shift = base.scale(&BigInt::from(c));
            for r in &out {
                next.push(r.add(&shift)?);
            }
        }
        out = next;
    }
    Ok(out)
}

/// The coset `ηV(ξ) ⊆ Ĥ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TranslatedSubgroup {
    xi: Subgroup,
    eta: TorsionCharacter,
}

impl fmt::Debug for TranslatedSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·V({:?})", self.eta, self.xi.preimage())
    }
}

impl TranslatedSubgroup {
    pub fn new(xi: Subgroup, eta: TorsionCharacter) -> Result<Self> {
        if xi.parent() != eta.parent() {
            return Err(Error::Dimension("subgroup and character of different groups".into()));
        }
        Ok(TranslatedSubgroup { xi, eta })
    }

    pub fn xi(&self) -> &Subgroup {
        &self.xi
    }

    pub fn eta(&self) -> &TorsionCharacter {
        &self.eta
    }

    pub fn parent(&self) -> &FgAbGroup {
        self.xi.parent()
    }

    pub fn dimension(&self) -> i64 {
        self.parent().rank() as i64 - self.xi.rank() as i64
    }

    /// Number of connected components `|ξ̄/ξ|`.
    pub fn component_count(&self) -> BigInt {
        self.xi.determinant_order()
    }

    /// Whether the translation is trivial, i.e. `ηV(ξ) = V(ξ)`.
    pub fn is_untranslated(&self) -> bool {
        self.eta.vanishes_on(self.xi.preimage())
    }

    /// Order of `η` in `Ĥ/V(ξ)`, i.e. of its restriction to `ξ`.
    pub fn translation_order(&self) -> BigInt {
        self.eta.order_on(self.xi.preimage())
    }

    /// Same coset with `ξ` saturated and a canonical translation. Requires `ξ` saturated.
    pub fn canonical(&self) -> Result<Self> {
        if !self.xi.is_saturated() {
            return input("canonical translations need a saturated subgroup");
        }
        let b = self.xi.preimage().basis();
        let s = b.cols();
        let (_, u, v) = smith_normal_form(b);
        // Y = V·U[0..s] is a left inverse of the basis
        let top: Vec<usize> = (0..s).collect();
        let y = v.mul(&u.select_rows(&top))?;
        let vals: Vec<BigRational> = self
            .xi
            .preimage()
            .generators()
            .iter()
            .map(|g| self.eta.evaluate(g))
            .collect();
        let m = self.parent().dim();
        let mut out = vec![BigRational::zero(); m];
        for (j, val) in vals.iter().enumerate() {
            for (k, o) in out.iter_mut().enumerate() {
                *o += val * BigRational::from_integer(y[(j, k)].clone());
            }
        }
        Ok(TranslatedSubgroup {
            xi: self.xi.clone(),
            eta: TorsionCharacter::new(self.parent(), out)?,
        })
    }

    /// The connected components `(η+ρ)V(ξ̄)`, with canonical translations.
    pub fn components(&self, bounds: &Bounds) -> Result<Vec<TranslatedSubgroup>> {
        let sat = self.xi.saturation();
        let mut out = Vec::new();
        for rho in determinant_dual(&self.xi, bounds)? {
            let c = TranslatedSubgroup::new(sat.clone(), self.eta.add(&rho)?)?.canonical()?;
            if !out.contains(&c) {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Sort key for deterministic output: subgroup, then translation.
    pub fn sort_key(&self) -> (&Lattice, &[BigRational]) {
        (self.xi.preimage(), self.eta.values())
    }
}

impl PartialOrd for TranslatedSubgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TranslatedSubgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

/// `V(ξ) = Hom(H/ξ, ℂ*)` as an untranslated coset.
pub fn v_of(xi: &Subgroup) -> TranslatedSubgroup {
    TranslatedSubgroup {
        xi: xi.clone(),
        eta: TorsionCharacter::trivial(xi.parent()),
    }
}

/// `ε(⟨β⟩·V(χ)) = χ ∩ ker β` for saturated `χ`.
pub fn epsilon_of_cyclic_extension(chi: &Subgroup, beta: &TorsionCharacter) -> Result<Subgroup> {
    if !chi.is_saturated() {
        return input("the subgroup must be saturated");
    }
    chi.intersection(&beta.kernel())
}

/// Whether `c1 ∩ c2` is nonempty, and its dimension (`-1` when empty).
pub fn coset_intersection(c1: &TranslatedSubgroup, c2: &TranslatedSubgroup) -> Result<(bool, i64)> {
    if c1.parent() != c2.parent() {
        return Err(Error::Dimension("cosets in different character groups".into()));
    }
    let meet = c1.xi.intersection(&c2.xi)?;
    let diff = c1.eta.sub(&c2.eta)?;
    if !diff.vanishes_on(meet.preimage()) {
        return Ok((false, -1));
    }
    let sum = c1.xi.sum(&c2.xi)?;
    Ok((true, c1.parent().rank() as i64 - sum.rank() as i64))
}

/// Whether `c1 ⊆ c2`, for cosets of connected subgroups.
pub fn coset_containment(c1: &TranslatedSubgroup, c2: &TranslatedSubgroup) -> Result<bool> {
    if !c1.xi.is_saturated() || !c2.xi.is_saturated() {
        return input("containment is decided for saturated subgroups only");
    }
    Ok(c1.xi.contains(&c2.xi) && coset_intersection(c1, c2)?.0)
}

/// A finite union of translated subgroups, "deleted" subgroups `V(ξ) ∖ V(ξ̄)`, and points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    parent: FgAbGroup,
    pub components: Vec<TranslatedSubgroup>,
    pub deleted: Vec<Subgroup>,
    pub points: Vec<TorsionCharacter>,
}

impl Arrangement {
    pub fn new(parent: &FgAbGroup) -> Self {
        Arrangement {
            parent: parent.clone(),
            components: Vec::new(),
            deleted: Vec::new(),
            points: Vec::new(),
        }
    }

    pub fn parent(&self) -> &FgAbGroup {
        &self.parent
    }

    pub fn with_component(mut self, c: TranslatedSubgroup) -> Result<Self> {
        if c.parent() != &self.parent {
            return Err(Error::Dimension("component of a different group".into()));
        }
        self.components.push(c);
        Ok(self)
    }

    pub fn with_deleted(mut self, xi: Subgroup) -> Result<Self> {
        if xi.parent() != &self.parent {
            return Err(Error::Dimension("component of a different group".into()));
        }
        self.deleted.push(xi);
        Ok(self)
    }

    pub fn with_point(mut self, p: TorsionCharacter) -> Result<Self> {
        if p.parent() != &self.parent {
            return Err(Error::Dimension("point of a different group".into()));
        }
        self.points.push(p);
        Ok(self)
    }

    /// All connected cosets `(η+ρ)V(ξ̄)` of the positive-dimensional part, deduplicated.
    pub fn cosets(&self, bounds: &Bounds) -> Result<Vec<TranslatedSubgroup>> {
        let mut out: Vec<TranslatedSubgroup> = Vec::new();
        let mut push = |c: TranslatedSubgroup| {
            if c.dimension() > 0 && !out.contains(&c) {
                out.push(c);
            }
        };
        for comp in &self.components {
            for c in comp.components(bounds)? {
                push(c);
            }
        }
        for xi in &self.deleted {
            let sat = xi.saturation();
            for rho in determinant_dual(xi, bounds)?.into_iter().skip(1) {
                push(TranslatedSubgroup::new(sat.clone(), rho)?.canonical()?);
            }
        }
        Ok(out)
    }

    /// Whether the positive-dimensional part is empty.
    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.dimension() <= 0)
            && self.deleted.iter().all(|xi| {
                xi.is_saturated() || self.parent.rank() as i64 - xi.rank() as i64 <= 0
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FgAbGroup {
        FgAbGroup::free(2)
    }

    fn sub(h: &FgAbGroup, g: &[Vec<i64>]) -> Subgroup {
        Subgroup::from_i64(h, g).unwrap()
    }

    fn chr(h: &FgAbGroup, v: &[(i64, i64)]) -> TorsionCharacter {
        TorsionCharacter::from_fractions(h, v).unwrap()
    }

    #[test]
    fn v_of_examples() {
        let h = z2();
        assert_eq!(v_of(&Subgroup::trivial(&h)).dimension(), 2);
        assert_eq!(v_of(&Subgroup::whole(&h)).dimension(), 0);
        let diag = v_of(&sub(&h, &[vec![1, -1]]));
        assert_eq!(diag.dimension(), 1);
        assert_eq!(diag.component_count(), BigInt::one());
    }

    #[test]
    fn epsilon_examples() {
        let h = z2();
        let chi = sub(&h, &[vec![1, 0]]);
        let beta = chr(&h, &[(1, 2), (0, 1)]);
        assert_eq!(epsilon_of_cyclic_extension(&chi, &TorsionCharacter::trivial(&h)).unwrap(), chi);
        assert_eq!(epsilon_of_cyclic_extension(&chi, &beta).unwrap(), sub(&h, &[vec![2, 0]]));
        assert_eq!(
            epsilon_of_cyclic_extension(&Subgroup::whole(&h), &beta).unwrap(),
            sub(&h, &[vec![2, 0], vec![0, 1]])
        );
    }

    #[test]
    fn intersections() {
        let h = z2();
        let a = v_of(&sub(&h, &[vec![0, 1]]));
        let b = TranslatedSubgroup::new(sub(&h, &[vec![1, 0]]), chr(&h, &[(1, 2), (0, 1)])).unwrap();
        assert_eq!(coset_intersection(&a, &b).unwrap(), (true, 0));
        assert_eq!(coset_intersection(&b, &b).unwrap(), (true, 1));
        let ker = sub(&h, &[vec![2, -2]]);
        let c = TranslatedSubgroup::new(sub(&h, &[vec![1, -1]]), chr(&h, &[(1, 2), (1, 2)])).unwrap();
        assert_eq!(coset_intersection(&v_of(&ker), &c).unwrap(), (true, 1));
    }

    #[test]
    fn containment() {
        let h = z2();
        let line = TranslatedSubgroup::new(sub(&h, &[vec![1, 0]]), chr(&h, &[(1, 2), (0, 1)])).unwrap();
        let other = v_of(&sub(&h, &[vec![0, 1]]));
        assert!(coset_containment(&line, &line).unwrap());
        assert!(!coset_containment(&line, &other).unwrap());
        let point = TranslatedSubgroup::new(Subgroup::whole(&h), chr(&h, &[(1, 2), (0, 1)])).unwrap();
        assert!(coset_containment(&point, &line).unwrap());
        let p2 = TranslatedSubgroup::new(Subgroup::whole(&h), chr(&h, &[(0, 1), (1, 2)])).unwrap();
        assert!(!coset_containment(&p2, &line).unwrap());
        assert!(coset_containment(&line, &v_of(&Subgroup::trivial(&h))).unwrap());
        assert!(coset_containment(&line, &other.clone()).is_ok());
        assert!(coset_containment(&v_of(&sub(&h, &[vec![2, 0]])), &other).is_err());
    }

    #[test]
    fn kernels() {
        let h = z2();
        assert_eq!(TorsionCharacter::trivial(&h).kernel(), Subgroup::whole(&h));
        assert_eq!(chr(&h, &[(1, 2), (0, 1)]).kernel(), sub(&h, &[vec![2, 0], vec![0, 1]]));
        let h4 = FgAbGroup::new(2, vec![4]).unwrap();
        let eta = chr(&h4, &[(0, 1), (0, 1), (1, 2)]);
        let k = eta.kernel();
        assert_eq!(k.index_in(&Subgroup::whole(&h4)), Some(BigInt::from(2)));
        assert!(k.contains_element(&[BigInt::zero(), BigInt::zero(), BigInt::from(2)]));
        assert!(!k.contains_element(&[BigInt::zero(), BigInt::zero(), BigInt::one()]));
        assert!(TorsionCharacter::from_fractions(&h4, &[(0, 1), (0, 1), (1, 3)]).is_err());
    }

    #[test]
    fn component_expansion() {
        let h = z2();
        let chi = sub(&h, &[vec![2, 0]]);
        let c = v_of(&chi);
        let comps = c.components(&Bounds::default()).unwrap();
        assert_eq!(comps.len(), 2);
        let mut etas: Vec<_> = comps.iter().map(|c| c.eta().evaluate(&[BigInt::one(), BigInt::zero()])).collect();
        etas.sort();
        assert_eq!(etas, vec![BigRational::zero(), BigRational::new(1.into(), 2.into())]);
        // ρV(χ̄) with ρ the nontrivial character of χ̄/χ collapses onto the same cosets
        let rho = chr(&h, &[(1, 2), (0, 1)]);
        let arr = Arrangement::new(&h)
            .with_component(c)
            .unwrap()
            .with_component(TranslatedSubgroup::new(chi.saturation(), rho).unwrap())
            .unwrap();
        assert_eq!(arr.cosets(&Bounds::default()).unwrap().len(), 2);
    }
}
