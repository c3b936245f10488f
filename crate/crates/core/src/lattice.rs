//! Exact integer matrices, Hermite and Smith normal forms, and sublattices of ℤⁿ.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Extended gcd with a non-negative gcd: `x*a + y*b = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// Builds a matrix from rows of small integers; panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let data = rows.iter().flatten().map(|&x| x.into()).collect();
        IntMatrix { rows: r, cols: c, data }
    }

    pub fn from_big_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        if rows.iter().any(|row| row.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    /// Matrix whose columns are the given vectors of length `n`.
    pub fn from_columns(n: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        let mut m = Self::zeros(n, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != n {
                return Err(Error::Dimension(format!(
                    "column of length {} in ambient rank {}",
                    c.len(),
                    n
                )));
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut p = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        p[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .map(|j| &self[(i, j)] * &v[j])
                    .sum()
            })
            .collect())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Dimension(format!(
                "cannot concatenate {} rows with {} rows",
                self.rows, other.rows
            )));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(m)
    }

    /// Vertical concatenation.
    pub fn vconcat(&self, other: &IntMatrix) -> Result<Self> {
        Ok(self.transpose().hconcat(&other.transpose())?.transpose())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m[(r, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                m[(i, c)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Determinant by fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * if n == 0 { BigInt::one() } else { prev })
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        hnf_pivots(self).len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
    fn combine_cols(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        for r in 0..self.rows {
            let x = self[(r, i)].clone();
            let y = self[(r, j)].clone();
            self[(r, i)] = a * &x + b * &y;
            self[(r, j)] = c * &x + d * &y;
        }
    }

    fn combine_rows(&mut self, i: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
        for k in 0..self.cols {
            let x = self[(i, k)].clone();
            let y = self[(j, k)].clone();
            self[(i, k)] = a * &x + b * &y;
            self[(j, k)] = c * &x + d * &y;
        }
    }

    /// col_i <- col_i - q col_j
    fn sub_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in 0..self.rows {
            let t = q * &self[(r, j)];
            self[(r, i)] -= t;
        }
    }

    fn neg_col(&mut self, i: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self[(r, i)]);
            self[(r, i)] = v;
        }
    }

    fn neg_row(&mut self, i: usize) {
        for k in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, k)]);
            self[(i, k)] = v;
        }
    }
}

fn hnf_pivots(m: &IntMatrix) -> Vec<usize> {
    let (h, _) = hermite_normal_form(m);
    pivot_rows(&h)
}

/// Pivot row of each nonzero column of a column-style HNF.
fn pivot_rows(h: &IntMatrix) -> Vec<usize> {
    (0..h.cols())
        .map_while(|j| (0..h.rows()).find(|&i| !h[(i, j)].is_zero()))
        .collect()
}

/// Column-style Hermite normal form: returns `(H, U)` with `M·U = H`, `U` unimodular,
/// pivots positive with strictly increasing pivot rows, entries left of a pivot reduced
/// into `[0, pivot)` and zero columns last.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.cols);
    let mut piv = 0;
    for i in 0..h.rows {
        if piv == h.cols {
            break;
        }
        for k in piv + 1..h.cols {
            if h[(i, k)].is_zero() {
                continue;
            }
            let a = h[(i, piv)].clone();
            let b = h[(i, k)].clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let p = &a / &g;
            let q = -(&b / &g);
            h.combine_cols(piv, k, &x, &y, &q, &p);
            u.combine_cols(piv, k, &x, &y, &q, &p);
        }
        if h[(i, piv)].is_zero() {
            continue;
        }
        if h[(i, piv)].is_negative() {
            h.neg_col(piv);
            u.neg_col(piv);
        }
        let pv = h[(i, piv)].clone();
        for j in 0..piv {
            let q = h[(i, j)].div_floor(&pv);
            if !q.is_zero() {
                h.sub_col(j, piv, &q);
                u.sub_col(j, piv, &q);
            }
        }
        piv += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(D, U, V)` with `U·M·V = D`, `U`, `V` unimodular and
/// diagonal entries `d_1 | d_2 | ...`, all non-negative, zeros last.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !d[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let a = d[(t, t)].clone();
                let b = d[(i, t)].clone();
                if b.is_multiple_of(&a) {
                    let q = &b / &a;
                    let (one, zero) = (BigInt::one(), BigInt::zero());
                    d.combine_rows(t, i, &one, &zero, &-&q, &one);
                    u.combine_rows(t, i, &one, &zero, &-&q, &one);
                } else {
                    let (g, x, y) = ext_gcd(&a, &b);
                    let p = &a / &g;
                    let q = -(&b / &g);
                    d.combine_rows(t, i, &x, &y, &q, &p);
                    u.combine_rows(t, i, &x, &y, &q, &p);
                }
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let a = d[(t, t)].clone();
                let b = d[(t, j)].clone();
                if b.is_multiple_of(&a) {
                    let q = &b / &a;
                    d.sub_col(j, t, &q);
                    v.sub_col(j, t, &q);
                } else {
                    let (g, x, y) = ext_gcd(&a, &b);
                    let p = &a / &g;
                    let q = -(&b / &g);
                    d.combine_cols(t, j, &x, &y, &q, &p);
                    v.combine_cols(t, j, &x, &y, &q, &p);
                    clean = false;
                }
            }
            if !clean && (t + 1..r).any(|i| !d[(i, t)].is_zero()) {
                continue;
            }
            // divisibility of the trailing block
            let pv = d[(t, t)].clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&pv)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    // row_t <- row_t + row_i
                    d.combine_rows(t, i, &one, &one, &zero, &one);
                    u.combine_rows(t, i, &one, &one, &zero, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.neg_row(t);
            u.neg_row(t);
        }
    }
    (d, u, v)
}

/// Diagonal of a Smith form (length `min(rows, cols)`).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let (d, _, _) = smith_normal_form(m);
    (0..d.rows.min(d.cols)).map(|i| d[(i, i)].clone()).collect()
}

/// Integer kernel `{x ∈ ℤ^cols : M x = 0}`.
pub fn kernel(m: &IntMatrix) -> Lattice {
    let (h, u) = hermite_normal_form(m);
    let r = pivot_rows(&h).len();
    let cols: Vec<Vec<BigInt>> = (r..m.cols).map(|j| u.column(j)).collect();
    Lattice::from_columns(m.cols, &cols).expect("kernel columns have the right length")
}

/// A sublattice of ℤⁿ in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "span{:?}", self.generators_i64_lossy())
    }
}

impl Lattice {
    /// The lattice spanned by the columns of `m`.
    pub fn new(m: &IntMatrix) -> Self {
        let (h, _) = hermite_normal_form(m);
        let r = pivot_rows(&h).len();
        let keep: Vec<usize> = (0..r).collect();
        Lattice {
            ambient: m.rows,
            basis: h.select_columns(&keep),
        }
    }

    pub fn from_columns(n: usize, columns: &[Vec<BigInt>]) -> Result<Self> {
        Ok(Self::new(&IntMatrix::from_columns(n, columns)?))
    }

    pub fn from_i64(n: usize, columns: &[Vec<i64>]) -> Result<Self> {
        let cols: Vec<Vec<BigInt>> = columns
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_columns(n, &cols)
    }

    pub fn zero(n: usize) -> Self {
        Lattice {
            ambient: n,
            basis: IntMatrix::zeros(n, 0),
        }
    }

    pub fn full(n: usize) -> Self {
        Lattice {
            ambient: n,
            basis: IntMatrix::identity(n),
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.cols
    }

    /// Canonical generators as the columns of an `n × rank` matrix.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.basis.columns()
    }

    fn generators_i64_lossy(&self) -> Vec<Vec<i64>> {
        self.generators()
            .iter()
            .map(|c| c.iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect())
            .collect()
    }

    fn same_ambient(&self, other: &Lattice) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "lattices in ℤ^{} and ℤ^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        self.same_ambient(other)?;
        Ok(Lattice::new(&self.basis.hconcat(&other.basis)?))
    }

    pub fn intersection(&self, other: &Lattice) -> Result<Lattice> {
        self.same_ambient(other)?;
        let (a, b) = (self.rank(), other.rank());
        let mut neg = other.basis.clone();
        for x in neg.data.iter_mut() {
            *x = -std::mem::take(x);
        }
        let k = kernel(&self.basis.hconcat(&neg)?);
        let top: Vec<usize> = (0..a).collect();
        let coeffs = k.basis.select_rows(&top);
        debug_assert_eq!(k.basis.rows(), a + b);
        Ok(Lattice::new(&self.basis.mul(&coeffs)?))
    }

    /// Primitive closure `{x : m x ∈ L for some m ≥ 1}`.
    pub fn saturation(&self) -> Lattice {
        let left = kernel(&self.basis.transpose());
        kernel(&left.basis.transpose())
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// Coefficients of `v` with respect to the canonical generators, if `v ∈ L`.
    pub fn solve(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient {
            return None;
        }
        let pivots = pivot_rows(&self.basis);
        let mut res = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (j, &p) in pivots.iter().enumerate() {
            let (q, r) = res[p].div_rem(&self.basis[(p, j)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (i, x) in res.iter_mut().enumerate() {
                    *x -= &q * &self.basis[(i, j)];
                }
            }
            coeffs.push(q);
        }
        if res.iter().all(Zero::is_zero) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains_vector(&self, v: &[BigInt]) -> bool {
        self.solve(v).is_some()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Lattice) -> bool {
        self.ambient == other.ambient && other.generators().iter().all(|g| self.contains_vector(g))
    }

    /// `[self : other]` for a full-rank sublattice `other ⊆ self`; `None` otherwise.
    pub fn index_of(&self, other: &Lattice) -> Option<BigInt> {
        if !self.contains(other) || self.rank() != other.rank() {
            return None;
        }
        let coords: Vec<Vec<BigInt>> = other
            .generators()
            .iter()
            .map(|g| self.solve(g).expect("contained"))
            .collect();
        let m = IntMatrix::from_columns(self.rank(), &coords).ok()?;
        Some(m.determinant().ok()?.abs())
    }

    /// Annihilator `{y ∈ ℤⁿ : y·x = 0 for all x ∈ L}`.
    pub fn annihilator(&self) -> Lattice {
        kernel(&self.basis.transpose())
    }

    /// Image of the lattice under a linear map.
    pub fn image(&self, map: &IntMatrix) -> Result<Lattice> {
        if map.cols() != self.ambient {
            return Err(Error::Dimension("map does not act on this lattice".into()));
        }
        Ok(Lattice::new(&map.mul(&self.basis)?))
    }
}
