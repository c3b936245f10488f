//! Finitely generated abelian groups `ℤⁿ ⊕ ℤ_{d_1} ⊕ … ⊕ ℤ_{d_k}`, subgroups and homomorphisms.
//!
//! Everything is expressed in preimage coordinates: an element of `H` is a vector in
//! `ℤ^{n+k}` (free coordinates first), and `H = ℤ^{n+k}/R` with `R = span{d_i e_{n+i}}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::lattice::{self, hermite_normal_form, IntMatrix, Lattice};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<u64>,
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FgAbGroup {
    /// `ℤ^rank ⊕ ⊕ ℤ_{d_i}`; the factors must form a divisibility chain of integers ≥ 2.
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if torsion.iter().any(|&d| d < 2) {
            return input("torsion factors must be at least 2");
        }
        if torsion.windows(2).any(|w| w[1] % w[0] != 0) {
            return input(format!("torsion factors {torsion:?} do not form a divisibility chain"));
        }
        Ok(FgAbGroup { rank, torsion })
    }

    /// Normalizes arbitrary cyclic factors (`1`s dropped, `0`s free) into invariant factors.
    pub fn from_factors(rank: usize, factors: &[u64]) -> Result<Self> {
        let free = rank + factors.iter().filter(|&&d| d == 0).count();
        let finite: Vec<u64> = factors.iter().copied().filter(|&d| d > 1).collect();
        let mut m = IntMatrix::zeros(finite.len(), finite.len());
        for (i, &d) in finite.iter().enumerate() {
            m[(i, i)] = BigInt::from(d);
        }
        let torsion = lattice::invariant_factors(&m)
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().ok_or_else(|| Error::Input("torsion factor overflow".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(free, torsion)
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    pub fn finite(torsion: Vec<u64>) -> Result<Self> {
        Self::new(0, torsion)
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    /// Number of preimage coordinates `n + k`.
    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().map(|&d| BigInt::from(d)).product()
    }

    /// Largest order of a torsion element (1 when torsion-free).
    pub fn cyclic_exponent(&self) -> u64 {
        self.torsion.last().copied().unwrap_or(1)
    }

    /// `A/Ā`-style finite part `Tors(A)`.
    pub fn torsion_part(&self) -> FgAbGroup {
        FgAbGroup {
            rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// Free part `Ā = ℤ^rank`.
    pub fn free_part(&self) -> FgAbGroup {
        Self::free(self.rank)
    }

    pub fn relation_lattice(&self) -> Lattice {
        let n = self.dim();
        let cols: Vec<Vec<BigInt>> = self
            .torsion
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut c = vec![BigInt::zero(); n];
                c[self.rank + i] = BigInt::from(d);
                c
            })
            .collect();
        Lattice::from_columns(n, &cols).expect("relation columns")
    }

    /// Relation generators as columns of an `(n+k) × k` matrix.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zeros(n, self.torsion.len());
        for (i, &d) in self.torsion.iter().enumerate() {
            m[(self.rank + i, i)] = BigInt::from(d);
        }
        m
    }

    /// Reduces torsion coordinates into `[0, d_i)`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .enumerate()
            .map(|(i, x)| {
                if i < self.rank {
                    x.clone()
                } else {
                    x.mod_floor(&BigInt::from(self.torsion[i - self.rank]))
                }
            })
            .collect()
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub(crate) fn check_element(&self, v: &[BigInt]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "element of length {} in a group with {} coordinates",
                v.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Whether `self` surjects onto `other`.
    pub fn has_quotient(&self, other: &FgAbGroup) -> bool {
        if other.rank > self.rank {
            return false;
        }
        // ℤ^{n-r} ⊕ T(H) must surject onto T(A): compare p-partitions part by part.
        let spare = self.rank - other.rank;
        for p in crate::gamma::primes_dividing(&other.torsion) {
            let lam = crate::gamma::p_partition(&other.torsion, p);
            let mut tau = crate::gamma::p_partition(&self.torsion, p);
            if lam.len() > tau.len() + spare {
                return false;
            }
            let mut big = vec![u32::MAX; spare];
            big.append(&mut tau);
            if lam.iter().zip(big.iter()).any(|(l, t)| l > t) {
                return false;
            }
        }
        true
    }
}

/// A subgroup `ξ ≤ H`, stored as its preimage lattice in `ℤ^{n+k}` (which contains `R`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subgroup {
    parent: FgAbGroup,
    preimage: Lattice,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?} in {}>", self.preimage, self.parent)
    }
}

impl Subgroup {
    /// Subgroup generated by the given elements.
    pub fn new(parent: &FgAbGroup, generators: &[Vec<BigInt>]) -> Result<Self> {
        for g in generators {
            parent.check_element(g)?;
        }
        let span = Lattice::from_columns(parent.dim(), generators)?;
        Ok(Subgroup {
            parent: parent.clone(),
            preimage: span.sum(&parent.relation_lattice())?,
        })
    }

    pub fn from_i64(parent: &FgAbGroup, generators: &[Vec<i64>]) -> Result<Self> {
        let g: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::new(parent, &g)
    }

    pub fn from_preimage(parent: &FgAbGroup, preimage: Lattice) -> Result<Self> {
        if preimage.ambient_rank() != parent.dim() {
            return Err(Error::Dimension("preimage lattice in the wrong ambient rank".into()));
        }
        if !preimage.contains(&parent.relation_lattice()) {
            return input("preimage lattice does not contain the relations");
        }
        Ok(Subgroup {
            parent: parent.clone(),
            preimage,
        })
    }

    pub fn whole(parent: &FgAbGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            preimage: Lattice::full(parent.dim()),
        }
    }

    pub fn trivial(parent: &FgAbGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            preimage: parent.relation_lattice(),
        }
    }

    pub fn parent(&self) -> &FgAbGroup {
        &self.parent
    }

    pub fn preimage(&self) -> &Lattice {
        &self.preimage
    }

    /// Rank of `ξ` as an abelian group.
    pub fn rank(&self) -> usize {
        self.preimage.rank() - self.parent.torsion.len()
    }

    fn same_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::Dimension(format!(
                "subgroups of {} and {}",
                self.parent, other.parent
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_parent(other)?;
        Ok(Subgroup {
            parent: self.parent.clone(),
            preimage: self.preimage.sum(&other.preimage)?,
        })
    }

    pub fn intersection(&self, other: &Subgroup) -> Result<Subgroup> {
        self.same_parent(other)?;
        Ok(Subgroup {
            parent: self.parent.clone(),
            preimage: self.preimage.intersection(&other.preimage)?,
        })
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.preimage.contains(&other.preimage)
    }

    pub fn contains_element(&self, v: &[BigInt]) -> bool {
        self.preimage.contains_vector(v)
    }

    /// Primitive closure `ξ̄`.
    pub fn saturation(&self) -> Subgroup {
        Subgroup {
            parent: self.parent.clone(),
            preimage: self.preimage.saturation(),
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.preimage.is_saturated()
    }

    /// `H/ξ`.
    pub fn quotient(&self) -> FgAbGroup {
        let m = self.preimage.basis();
        let free = self.parent.dim() - m.cols();
        let torsion = lattice::invariant_factors(m)
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.to_u64().expect("torsion factor fits in u64"))
            .collect();
        FgAbGroup::new(free, torsion).expect("Smith form gives a divisibility chain")
    }

    /// Determinant group `ξ̄/ξ ≅ Tors(H/ξ)`.
    pub fn determinant_group(&self) -> FgAbGroup {
        self.quotient().torsion_part()
    }

    /// Order of `ξ̄/ξ`.
    pub fn determinant_order(&self) -> BigInt {
        self.determinant_group().torsion_order()
    }

    /// `|other/self|` when `self ⊆ other` has finite index.
    pub fn index_in(&self, other: &Subgroup) -> Option<BigInt> {
        other.preimage.index_of(&self.preimage)
    }

    /// Generators of `ξ` (canonical preimage basis with the relation columns reduced away).
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.preimage
            .generators()
            .into_iter()
            .map(|g| self.parent.reduce(&g))
            .filter(|g| !g.iter().all(Zero::is_zero))
            .collect()
    }

    /// `(H/ξ)^∨ = {x ∈ Hom(H, ℤ) : x(ξ) = 0}` as a lattice in `ℤⁿ`.
    pub fn dual_lattice(&self) -> Lattice {
        let n = self.parent.rank;
        let free_rows: Vec<usize> = (0..n).collect();
        let proj = self.preimage.basis().select_rows(&free_rows);
        lattice::kernel(&proj.transpose())
    }
}

/// A homomorphism `H → A` given by an integer matrix on preimage coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Homomorphism {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} by {:?}", self.source, self.target, self.matrix)
    }
}

impl Homomorphism {
    /// Checks well-definedness and reduces torsion rows.
    pub fn new(source: &FgAbGroup, target: &FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension(format!(
                "a {}x{} matrix cannot map {} to {}",
                matrix.rows(),
                matrix.cols(),
                source,
                target
            )));
        }
        let mut m = matrix;
        for j in 0..m.cols() {
            let col = target.reduce(&m.column(j));
            for (i, x) in col.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        let relations = m.mul(&source.relation_matrix())?;
        for c in relations.columns() {
            if !target.is_zero_element(&c) {
                return input(format!(
                    "matrix {m:?} does not respect the relations of {source}"
                ));
            }
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: m,
        })
    }

    pub fn from_i64(source: &FgAbGroup, target: &FgAbGroup, rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(source, target, IntMatrix::from_rows(rows))
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.dim()),
        }
    }

    /// The projection `H ↠ H̄ = ℤⁿ`.
    pub fn free_projection(g: &FgAbGroup) -> Self {
        let mut m = IntMatrix::zeros(g.rank, g.dim());
        for i in 0..g.rank {
            m[(i, i)] = BigInt::one();
        }
        Homomorphism {
            source: g.clone(),
            target: g.free_part(),
            matrix: m,
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        Ok(self.target.reduce(&self.matrix.mul_vec(v)?))
    }

    pub fn is_epimorphism(&self) -> bool {
        let span = self
            .matrix
            .hconcat(&self.target.relation_matrix())
            .expect("same row count");
        let (h, _) = hermite_normal_form(&span);
        let n = self.target.dim();
        (0..n).all(|i| h[(i, i)].is_one())
    }

    pub fn kernel(&self) -> Subgroup {
        let rel = self.target.relation_matrix();
        let k = lattice::kernel(&self.matrix.hconcat(&rel).expect("same row count"));
        let top: Vec<usize> = (0..self.source.dim()).collect();
        let proj = k.basis().select_rows(&top);
        let preimage = Lattice::new(&proj)
            .sum(&self.source.relation_lattice())
            .expect("same ambient");
        Subgroup {
            parent: self.source.clone(),
            preimage,
        }
    }

    pub fn image(&self) -> Subgroup {
        let cols = self.matrix.columns();
        Subgroup::new(&self.target, &cols).expect("columns live in the target")
    }

    /// `ν̄ = π ∘ ν : H → Ā`.
    pub fn free_part(&self) -> Homomorphism {
        let rows: Vec<usize> = (0..self.target.rank).collect();
        Homomorphism {
            source: self.source.clone(),
            target: self.target.free_part(),
            matrix: self.matrix.select_rows(&rows),
        }
    }

    /// Torsion rows of the matrix (the composite `H → A → Tors(A)` for the fixed splitting).
    pub fn torsion_part(&self) -> Homomorphism {
        let rows: Vec<usize> = (self.target.rank..self.target.dim()).collect();
        Homomorphism {
            source: self.source.clone(),
            target: self.target.torsion_part(),
            matrix: self.matrix.select_rows(&rows),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.target != other.source {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        Homomorphism::new(&self.source, &other.target, other.matrix.mul(&self.matrix)?)
    }

    /// Preimages `x_j` with `ν(x_j) = e_j` for an epimorphism onto a free group.
    pub(crate) fn free_splitting(&self) -> Result<Vec<Vec<BigInt>>> {
        if !self.target.is_torsion_free() {
            return Err(Error::Input("splitting requires a free target".into()));
        }
        if !self.is_epimorphism() {
            return input("map is not surjective");
        }
        let (_, u) = hermite_normal_form(&self.matrix);
        Ok((0..self.target.rank).map(|j| u.column(j)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn quotient_examples() {
        let h = FgAbGroup::free(2);
        let xi = Subgroup::from_i64(&h, &[vec![2, 0]]).unwrap();
        assert_eq!(xi.quotient(), FgAbGroup::new(1, vec![2]).unwrap());
        assert_eq!(Subgroup::whole(&h).quotient(), FgAbGroup::trivial());
        let h4 = FgAbGroup::new(2, vec![4]).unwrap();
        assert_eq!(Subgroup::trivial(&h4).quotient(), h4);
    }

    #[test]
    fn determinant_groups() {
        let h = FgAbGroup::free(2);
        let xi = Subgroup::from_i64(&h, &[vec![2, 0]]).unwrap();
        assert_eq!(xi.determinant_group(), FgAbGroup::finite(vec![2]).unwrap());
        let h6 = FgAbGroup::free(6);
        let xi2 = Subgroup::from_i64(
            &h6,
            &[
                vec![0, 0, 2, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 0],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 0, 1],
            ],
        )
        .unwrap();
        assert_eq!(xi2.determinant_group(), FgAbGroup::finite(vec![2]).unwrap());
        let prim = Subgroup::from_i64(&h, &[vec![1, -1]]).unwrap();
        assert_eq!(prim.determinant_group(), FgAbGroup::trivial());
    }

    #[test]
    fn normalization_and_exponent() {
        let g = FgAbGroup::from_factors(0, &[2, 3, 1, 4]).unwrap();
        assert_eq!(g, FgAbGroup::finite(vec![2, 12]).unwrap());
        assert_eq!(FgAbGroup::new(1, vec![2]).unwrap().cyclic_exponent(), 2);
        assert_eq!(FgAbGroup::free(2).cyclic_exponent(), 1);
        assert_eq!(FgAbGroup::new(1, vec![2, 4]).unwrap().cyclic_exponent(), 4);
        assert!(FgAbGroup::new(0, vec![4, 2]).is_err());
    }

    #[test]
    fn kernels() {
        let h = FgAbGroup::free(2);
        let a = FgAbGroup::new(1, vec![2]).unwrap();
        let canonical = Homomorphism::from_i64(&h, &a, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(canonical.is_epimorphism());
        assert_eq!(canonical.kernel(), Subgroup::from_i64(&h, &[vec![0, 2]]).unwrap());
        let nu = Homomorphism::from_i64(&h, &a, &[vec![1, 1], vec![1, 0]]).unwrap();
        assert_eq!(nu.kernel(), Subgroup::from_i64(&h, &[vec![2, -2]]).unwrap());
        assert_eq!(Homomorphism::identity(&a).kernel(), Subgroup::trivial(&a));
        assert!(!Homomorphism::from_i64(&h, &a, &[vec![2, 0], vec![0, 1]])
            .unwrap()
            .is_epimorphism());
    }

    #[test]
    fn well_definedness() {
        let h = FgAbGroup::new(1, vec![4]).unwrap();
        let a = FgAbGroup::finite(vec![2]).unwrap();
        assert!(Homomorphism::from_i64(&h, &a, &[vec![0, 1]]).is_ok());
        let b = FgAbGroup::finite(vec![8]).unwrap();
        assert!(Homomorphism::from_i64(&h, &b, &[vec![0, 1]]).is_err());
        assert!(Homomorphism::from_i64(&h, &b, &[vec![0, 2]]).is_ok());
        let free = FgAbGroup::free(1);
        assert!(Homomorphism::from_i64(&h, &free, &[vec![1, 1]]).is_err());
    }

    #[test]
    fn dual_lattice_of_axis() {
        let h = FgAbGroup::free(2);
        let xi = Subgroup::from_i64(&h, &[vec![0, 1]]).unwrap();
        assert_eq!(xi.dual_lattice(), Lattice::from_i64(2, &[vec![1, 0]]).unwrap());
        let v = vec![z(0), z(3)];
        assert!(xi.contains_element(&v));
    }

    #[test]
    fn quotient_test() {
        let h = FgAbGroup::free(2);
        assert!(h.has_quotient(&FgAbGroup::new(1, vec![4]).unwrap()));
        assert!(!h.has_quotient(&FgAbGroup::new(1, vec![2, 2]).unwrap()));
        let h = FgAbGroup::new(0, vec![2, 4]).unwrap();
        assert!(h.has_quotient(&FgAbGroup::finite(vec![2, 2]).unwrap()));
        assert!(!h.has_quotient(&FgAbGroup::finite(vec![8]).unwrap()));
    }
}
