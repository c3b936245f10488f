//! Laurent polynomials `f ∈ ℤ[H]` (coefficients in cyclotomic fields after restriction),
//! restriction to torsion-translated subtori, and the admissible-partition computation of `τ₁`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::character::TorsionCharacter;
use crate::cyclotomic::CyclotomicScalar;
use crate::error::{Bounds, Error, Result};
use crate::group::{FgAbGroup, Subgroup};
use crate::lattice::{self, IntMatrix, Lattice};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    ambient: FgAbGroup,
    terms: BTreeMap<Vec<i64>, CyclotomicScalar>,
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| if x == 1 { format!("t{}", i + 1) } else { format!("t{}^{x}", i + 1) })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl LaurentPolynomial {
    pub fn zero(ambient: &FgAbGroup) -> Self {
        LaurentPolynomial {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(ambient: &FgAbGroup, terms: Vec<(Vec<i64>, CyclotomicScalar)>) -> Result<Self> {
        let mut p = Self::zero(ambient);
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn from_int_terms(ambient: &FgAbGroup, terms: &[(Vec<i64>, i64)]) -> Result<Self> {
        Self::from_terms(
            ambient,
            terms
                .iter()
                .map(|(e, c)| (e.clone(), CyclotomicScalar::from_integer(BigInt::from(*c))))
                .collect(),
        )
    }

    pub fn monomial(ambient: &FgAbGroup, exp: Vec<i64>, c: CyclotomicScalar) -> Result<Self> {
        Self::from_terms(ambient, vec![(exp, c)])
    }

    pub fn one(ambient: &FgAbGroup) -> Self {
        Self::monomial(ambient, vec![0; ambient.dim()], CyclotomicScalar::from_integer(BigInt::one()))
            .expect("right length")
    }

    fn reduce_exp(&self, mut e: Vec<i64>) -> Result<Vec<i64>> {
        if e.len() != self.ambient.dim() {
            return Err(Error::Dimension(format!(
                "exponent of length {} in a group with {} coordinates",
                e.len(),
                self.ambient.dim()
            )));
        }
        for (i, &d) in self.ambient.torsion().iter().enumerate() {
            let k = self.ambient.rank() + i;
            e[k] = e[k].rem_euclid(d as i64);
        }
        Ok(e)
    }

    pub fn add_term(&mut self, exp: Vec<i64>, c: CyclotomicScalar) -> Result<()> {
        let e = self.reduce_exp(exp)?;
        let sum = match self.terms.remove(&e) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
        Ok(())
    }

    pub fn ambient(&self) -> &FgAbGroup {
        &self.ambient
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, CyclotomicScalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("polynomials over different groups".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            ambient: self.ambient.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = Self::zero(&self.ambient);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.mul(c2))?;
            }
        }
        Ok(out)
    }

    /// Integer coefficients, if every coefficient is an integer.
    pub fn integer_terms(&self) -> Option<Vec<(Vec<i64>, BigInt)>> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let r = c.as_rational()?;
                r.is_integer().then(|| (e.clone(), r.to_integer()))
            })
            .collect()
    }

    /// Sum of the coefficients, i.e. the value at the trivial character.
    pub fn augmentation(&self) -> CyclotomicScalar {
        self.terms
            .values()
            .fold(CyclotomicScalar::zero(), |acc, c| acc.add(c))
    }
}

/// Substitutes the parametrization of the coset `α·V(K̄)` into `f`.
///
/// The result lives in `ℤ[ℤ^r]` with `r = rank H − rank K`, its variables being the coordinates
/// `s_j = y_j·x` for the canonical basis `y_1..y_r` of the annihilator of `K̄`.
pub fn restrict_to_coset(
    f: &LaurentPolynomial,
    ker: &Subgroup,
    alpha: &TorsionCharacter,
) -> Result<LaurentPolynomial> {
    if ker.parent() != f.ambient() || alpha.parent() != f.ambient() {
        return Err(Error::Dimension("polynomial, subgroup and character disagree".into()));
    }
    let sat = ker.preimage().saturation();
    let ann = sat.annihilator();
    let y = ann.basis().transpose();
    let r = y.rows();
    let target = FgAbGroup::free(r);
    let order = alpha
        .order()
        .to_u64()
        .ok_or_else(|| Error::Unsupported("character order too large".into()))?;
    let mut out = LaurentPolynomial::zero(&target);
    for (a, c) in f.terms() {
        let av: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let s = y.mul_vec(&av)?;
        let exp = s
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::Unsupported("exponent overflow".into())))
            .collect::<Result<Vec<_>>>()?;
        let k = (alpha.evaluate(&av) * BigRational::from_integer(BigInt::from(order)))
            .to_integer()
            .to_u64()
            .expect("value in [0, 1)");
        out.add_term(exp, c.mul(&CyclotomicScalar::root_of_unity(order, k)))?;
    }
    Ok(out)
}

/// Whether the zero locus of a restricted polynomial in the `r`-torus is positive-dimensional.
pub fn hypersurface_positive_dim(g: &LaurentPolynomial) -> bool {
    let r = g.ambient().rank();
    if g.is_zero() {
        return r >= 1;
    }
    r >= 2 && g.support_size() >= 2
}

/// Maximal lattices `L(p)` over the admissible partitions `p` of the support of `f`.
pub fn admissible_tau1(f: &LaurentPolynomial, bounds: &Bounds) -> Result<Vec<Lattice>> {
    if !f.ambient().is_torsion_free() {
        return Err(Error::Unsupported("admissible partitions need a torsion-free ambient".into()));
    }
    let terms = f
        .integer_terms()
        .ok_or_else(|| Error::Unsupported("admissible partitions need integer coefficients".into()))?;
    bounds.check("support size", bounds.max_support as u64, terms.len() as u64)?;
    let n = f.ambient().rank();
    let mut found: Vec<Lattice> = Vec::new();
    let mut blocks: Vec<usize> = Vec::with_capacity(terms.len());
    let mut sums: Vec<BigInt> = Vec::new();
    partitions(&terms, &mut blocks, &mut sums, &mut |blocks| {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, &b) in blocks.iter().enumerate() {
            match first.get(&b) {
                None => {
                    first.insert(b, i);
                }
                Some(&f0) => rows.push(
                    terms[i]
                        .0
                        .iter()
                        .zip(&terms[f0].0)
                        .map(|(a, c)| BigInt::from(a - c))
                        .collect(),
                ),
            }
        }
        let m = IntMatrix::from_big_rows(n, &rows).expect("rows of length n");
        let l = lattice::kernel(&m);
        if !found.contains(&l) {
            found.push(l);
        }
    });
    Ok(maximal_lattices(found))
}

fn partitions(
    terms: &[(Vec<i64>, BigInt)],
    blocks: &mut Vec<usize>,
    sums: &mut Vec<BigInt>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let i = blocks.len();
    let open = sums.iter().filter(|s| !s.is_zero()).count();
    if open > terms.len() - i {
        return;
    }
    if i == terms.len() {
        emit(blocks);
        return;
    }
    let c = &terms[i].1;
    let k = sums.len();
    for b in 0..=k {
        if b == k {
            sums.push(c.clone());
        } else {
            sums[b] += c;
        }
        blocks.push(b);
        partitions(terms, blocks, sums, emit);
        blocks.pop();
        if b == k {
            sums.pop();
        } else {
            sums[b] -= c;
        }
    }
}

/// Inclusion-maximal members, sorted.
pub fn maximal_lattices(mut ls: Vec<Lattice>) -> Vec<Lattice> {
    ls.sort();
    ls.dedup();
    let keep: Vec<Lattice> = ls
        .iter()
        .filter(|l| !ls.iter().any(|o| o != *l && o.contains(l)))
        .cloned()
        .collect();
    keep
}
