//! Multivariate polynomials over `ℤ` with non-negative exponents, and their gcd.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(e, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c * k)))
    }

    fn shift(&self, var: usize, by: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[var] += by;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Leading term in lexicographic order.
    pub fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Coefficient of `x_var^k`, as a polynomial in the other variables.
    fn coeff_in(&self, var: usize, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[var] == k)
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[var] = 0;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn divide_exact(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        let (de, dc) = (de.clone(), dc.clone());
        let mut rem = self.clone();
        let mut q = Poly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(&de).any(|(a, b)| a < b) || !rc.is_multiple_of(&dc) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            let c = rc / &dc;
            let t = Poly::from_terms(self.nvars, [(e, c)]);
            rem = rem.sub(&t.mul(d));
            q = q.add(&t);
        }
        Some(q)
    }

    fn top_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.terms.keys().any(|e| e[v] > 0))
    }

    /// Content with respect to `var`: the gcd of the coefficients of the powers of `x_var`.
    fn content_in(&self, var: usize) -> Poly {
        let deg = self.degree_in(var).unwrap_or(0);
        (0..=deg).fold(Poly::zero(self.nvars), |g, k| gcd(&g, &self.coeff_in(var, k)))
    }

    fn pseudo_remainder(&self, b: &Poly, var: usize) -> Poly {
        let db = b.degree_in(var).expect("nonzero divisor");
        let lb = b.coeff_in(var, db);
        let mut r = self.clone();
        while let Some(dr) = r.degree_in(var) {
            if dr < db {
                break;
            }
            let lr = r.coeff_in(var, dr);
            r = lb.mul(&r).sub(&lr.mul(&b.shift(var, dr - db)));
        }
        r
    }

    /// Sign-normalized: positive leading coefficient.
    pub fn normalized(&self) -> Poly {
        match self.leading() {
            Some((_, c)) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

/// Greatest common divisor, normalized to a positive leading coefficient.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    let var = match (a.top_var(), b.top_var()) {
        (None, None) => {
            return Poly::constant(a.nvars, a.integer_content().gcd(&b.integer_content()));
        }
        (x, y) => x.max(y).expect("some variable"),
    };
    let ca = a.content_in(var);
    let cb = b.content_in(var);
    let c = gcd(&ca, &cb);
    let mut p = a.divide_exact(&ca).expect("content divides");
    let mut q = b.divide_exact(&cb).expect("content divides");
    if p.degree_in(var) < q.degree_in(var) {
        std::mem::swap(&mut p, &mut q);
    }
    while !q.is_zero() {
        if q.degree_in(var) == Some(0) {
            // q is a unit up to content in the other variables, which was removed
            p = Poly::constant(a.nvars, BigInt::one());
            break;
        }
        let r = p.pseudo_remainder(&q, var);
        p = q;
        q = if r.is_zero() {
            r
        } else {
            let cr = r.content_in(var);
            r.divide_exact(&cr).expect("content divides")
        };
    }
    let pc = p.content_in(var);
    let g = p.divide_exact(&pc).expect("content divides");
    c.mul(&g).normalized()
}

/// Gcd of a list; zero for the empty list.
pub fn gcd_all<'a>(ps: impl IntoIterator<Item = &'a Poly>, nvars: usize) -> Poly {
    ps.into_iter().fold(Poly::zero(nvars), |g, p| gcd(&g, p))
}
