//! Exact elements of cyclotomic fields `ℚ(ζ_m) = ℚ[x]/Φ_m(x)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn divisors(m: u64) -> Vec<u64> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// Coefficients (constant term first) of the `m`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache").get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for the proper divisors d
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        num = exact_div(&num, &cyclotomic_polynomial(d));
    }
    cache.lock().expect("cache").insert(m, num.clone());
    num
}

fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, b) in den.iter().enumerate() {
            rem[i + j] -= &c * b;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

/// An element of `ℚ(ζ_m)` stored as a polynomial of degree `< φ(m)` in `ζ_m`.
#[derive(Clone)]
pub struct CyclotomicScalar {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z{}", self.conductor),
                _ => format!("{c}*z{}^{i}", self.conductor),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl CyclotomicScalar {
    fn reduce(conductor: u64, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let deg = phi.len() - 1;
        while poly.len() > deg {
            let top = poly.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for (j, b) in phi.iter().take(deg).enumerate() {
                poly[shift + j] -= &top * BigRational::from_integer(b.clone());
            }
        }
        poly.resize(deg, BigRational::zero());
        CyclotomicScalar {
            conductor,
            coeffs: poly,
        }
    }

    pub fn from_rational(conductor: u64, c: BigRational) -> Self {
        Self::reduce(conductor.max(1), vec![c])
    }

    pub fn from_integer(c: BigInt) -> Self {
        Self::from_rational(1, BigRational::from_integer(c))
    }

    pub fn zero() -> Self {
        Self::from_integer(BigInt::zero())
    }

    /// `ζ_m^k`.
    pub fn root_of_unity(m: u64, k: u64) -> Self {
        let m = m.max(1);
        let mut poly = vec![BigRational::zero(); (k % m) as usize + 1];
        poly[(k % m) as usize] = BigRational::one();
        Self::reduce(m, poly)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Re-expresses the element in `ℚ(ζ_{m'})` for a multiple `m'` of the conductor.
    pub fn lift(&self, m: u64) -> Self {
        assert!(m.is_multiple_of(self.conductor), "conductor must divide the target");
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); self.coeffs.len().saturating_sub(1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::reduce(m, poly)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.conductor.lcm(&other.conductor);
        (self.lift(m), other.lift(m))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CyclotomicScalar {
            conductor: a.conductor,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CyclotomicScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut poly = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        Self::reduce(a.conductor, poly)
    }
}

impl PartialEq for CyclotomicScalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicScalar {}
