//! Finite presentations, abelianized Fox derivatives and Alexander matrices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::CyclotomicScalar;
use crate::error::{input, Error, Result};
use crate::group::FgAbGroup;
use crate::lattice::{smith_normal_form, IntMatrix};
use crate::laurent::LaurentPolynomial;
use crate::poly::{self, Poly};

/// A freely reduced word; letter `±(i+1)` stands for `x_i^{±1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    alphabet: usize,
    letters: Vec<i64>,
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}^-1", -l) })
            .collect();
        write!(f, "{}", s.join(" "))
    }
}

impl GroupWord {
    pub fn new(alphabet: usize, letters: &[i64]) -> Result<Self> {
        let mut out: Vec<i64> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > alphabet {
                return input(format!("letter {l} outside an alphabet of {alphabet} generators"));
            }
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(GroupWord { alphabet, letters: out })
    }

    /// Parses words such as `x1 x2 x1^-1 x2^-1` (tokens may also be joined by `*`).
    pub fn parse(alphabet: usize, s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            if tok == "1" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i64>().map_err(|_| Error::Input(format!("bad exponent in {tok:?}")))?),
                None => (tok, 1),
            };
            let idx: i64 = base
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::Input(format!("bad generator {base:?}, expected x1, x2, …")))?;
            for _ in 0..exp.unsigned_abs() {
                letters.push(if exp > 0 { idx } else { -idx });
            }
        }
        Self::new(alphabet, &letters)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut e = vec![0; self.alphabet];
        for &l in &self.letters {
            e[l.unsigned_abs() as usize - 1] += l.signum();
        }
        e
    }
}

#[derive(Clone, Debug)]
pub struct Presentation {
    generators: usize,
    relators: Vec<GroupWord>,
    abelianization: FgAbGroup,
    images: Vec<Vec<i64>>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<GroupWord>) -> Result<Self> {
        if relators.iter().any(|r| r.alphabet != generators) {
            return input("relator over a different alphabet");
        }
        // H = ℤ^q / (row space of the exponent-sum matrix)
        let rows: Vec<Vec<i64>> = relators.iter().map(GroupWord::exponent_sums).collect();
        let et = if rows.is_empty() {
            IntMatrix::zeros(generators, 0)
        } else {
            IntMatrix::from_rows(&rows).transpose()
        };
        let (d, u, _) = smith_normal_form(&et);
        let diag: Vec<BigInt> = (0..generators)
            .map(|i| if i < d.cols() { d[(i, i)].clone() } else { BigInt::zero() })
            .collect();
        let free: Vec<usize> = (0..generators).filter(|&i| diag[i].is_zero()).collect();
        let tors: Vec<usize> = (0..generators).filter(|&i| diag[i] > BigInt::one()).collect();
        let torsion = tors
            .iter()
            .map(|&i| diag[i].to_u64().ok_or_else(|| Error::Unsupported("torsion too large".into())))
            .collect::<Result<Vec<_>>>()?;
        let abelianization = FgAbGroup::new(free.len(), torsion)?;
        let images = (0..generators)
            .map(|g| {
                free.iter()
                    .chain(&tors)
                    .map(|&i| u[(i, g)].to_i64().ok_or_else(|| Error::Unsupported("coordinate overflow".into())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Presentation {
            generators,
            relators,
            abelianization,
            images,
        })
    }

    pub fn parse(generators: usize, relators: &[&str]) -> Result<Self> {
        let words = relators
            .iter()
            .map(|r| GroupWord::parse(generators, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(generators, words)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    pub fn abelianization(&self) -> &FgAbGroup {
        &self.abelianization
    }

    /// Image of the generator `x_i` in the abelianization.
    pub fn image(&self, i: usize) -> &[i64] {
        &self.images[i]
    }

    /// `t_i − 1` in `ℤ[H]`.
    pub fn generator_minus_one(&self, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::from_int_terms(
            &self.abelianization,
            &[(self.images[i].clone(), 1), (vec![0; self.abelianization.dim()], -1)],
        )
        .expect("coordinates match")
    }
}

/// The `m × q` matrix of abelianized Fox derivatives `φ(∂r_j/∂x_i)`.
pub fn fox_alexander_matrix(p: &Presentation) -> Vec<Vec<LaurentPolynomial>> {
    let h = p.abelianization();
    let one = CyclotomicScalar::from_integer(BigInt::one());
    p.relators()
        .iter()
        .map(|r| {
            let mut row = vec![LaurentPolynomial::zero(h); p.generators()];
            let mut prefix = vec![0i64; h.dim()];
            for &l in r.letters() {
                let i = l.unsigned_abs() as usize - 1;
                let img = p.image(i);
                if l > 0 {
                    row[i].add_term(prefix.clone(), one.clone()).expect("length");
                    prefix.iter_mut().zip(img).for_each(|(a, b)| *a += b);
                } else {
                    prefix.iter_mut().zip(img).for_each(|(a, b)| *a -= b);
                    row[i].add_term(prefix.clone(), one.neg()).expect("length");
                }
            }
            row
        })
        .collect()
}

fn determinant(m: &[Vec<&LaurentPolynomial>], h: &FgAbGroup) -> Result<LaurentPolynomial> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPolynomial::one(h));
    }
    let mut acc = LaurentPolynomial::zero(h);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<&LaurentPolynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, e)| *e).collect())
            .collect();
        let term = m[0][j].mul(&determinant(&minor, h)?)?;
        acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn to_poly(f: &LaurentPolynomial) -> Result<Poly> {
    let n = f.ambient().rank();
    let terms = f
        .integer_terms()
        .ok_or_else(|| Error::Unsupported("minors need integer coefficients".into()))?;
    let mins: Vec<i64> = (0..n).map(|v| terms.iter().map(|(e, _)| e[v]).min().unwrap_or(0)).collect();
    Ok(Poly::from_terms(
        n,
        terms.into_iter().map(|(e, c)| {
            let e = e.iter().zip(&mins).map(|(a, m)| (a - m) as u32).collect();
            (e, c)
        }),
    ))
}

/// Gcd of the `(q − codim)`-minors, with monomial units removed and positive leading coefficient.
pub fn minors_gcd(matrix: &[Vec<LaurentPolynomial>], h: &FgAbGroup, codim: usize) -> Result<LaurentPolynomial> {
    if !h.is_torsion_free() {
        return Err(Error::Unsupported("minors gcd needs a free abelianization".into()));
    }
    let q = matrix.first().map_or(0, Vec::len);
    if matrix.iter().any(|r| r.len() != q || r.iter().any(|e| e.ambient() != h)) {
        return Err(Error::Dimension("ragged Alexander matrix".into()));
    }
    let k = q.saturating_sub(codim);
    let mut minors = Vec::new();
    for rows in subsets(matrix.len(), k) {
        for cols in subsets(q, k) {
            let sub: Vec<Vec<&LaurentPolynomial>> = rows
                .iter()
                .map(|&i| cols.iter().map(|&j| &matrix[i][j]).collect())
                .collect();
            let d = determinant(&sub, h)?;
            if !d.is_zero() {
                minors.push(to_poly(&d)?);
            }
        }
    }
    let g = poly::gcd_all(&minors, h.rank());
    let g = if g.is_zero() { g } else { to_poly(&from_poly(&g, h))? };
    Ok(from_poly(&g, h))
}

fn from_poly(p: &Poly, h: &FgAbGroup) -> LaurentPolynomial {
    let terms = p
        .terms()
        .iter()
        .map(|(e, c)| (e.iter().map(|&x| x as i64).collect(), CyclotomicScalar::from_integer(c.clone())))
        .collect();
    LaurentPolynomial::from_terms(h, terms).expect("coordinates match")
}
