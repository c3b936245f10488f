//! Explicit element tables for small finite abelian groups.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Bounds, Error, Result};

/// `ℤ_{d_1} ⊕ … ⊕ ℤ_{d_k}` with elements numbered in mixed radix.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    factors: Vec<u64>,
    order: usize,
}

impl FiniteGroup {
    pub fn new(factors: &[u64], bounds: &Bounds) -> Result<Self> {
        let mut order: u64 = 1;
        for &d in factors {
            order = order
                .checked_mul(d)
                .filter(|&o| o <= bounds.max_finite_order)
                .ok_or(Error::Bound {
                    what: "finite group order",
                    limit: bounds.max_finite_order,
                    actual: factors.iter().map(|&d| BigInt::from(d)).product::<BigInt>().to_string(),
                })?;
        }
        Ok(FiniteGroup {
            factors: factors.to_vec(),
            order: order as usize,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        let mut x = 0usize;
        for (c, &d) in coords.iter().zip(&self.factors) {
            x = x * d as usize + (*c % d) as usize;
        }
        x
    }

    pub fn encode_big(&self, coords: &[BigInt]) -> usize {
        let reduced: Vec<u64> = coords
            .iter()
            .zip(&self.factors)
            .map(|(c, &d)| c.mod_floor(&BigInt::from(d)).to_u64().expect("reduced"))
            .collect();
        self.encode(&reduced)
    }

    pub fn decode(&self, mut x: usize) -> Vec<u64> {
        let mut out = vec![0; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            let d = self.factors[i] as usize;
            out[i] = (x % d) as u64;
            x /= d;
        }
        out
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.decode(x), self.decode(y));
        let s: Vec<u64> = a.iter().zip(&b).map(|(p, q)| p + q).collect();
        self.encode(&s)
    }

    pub fn scale(&self, x: usize, k: u64) -> usize {
        let a = self.decode(x);
        let s: Vec<u64> = a
            .iter()
            .zip(&self.factors)
            .map(|(p, &d)| ((*p as u128 * k as u128) % d as u128) as u64)
            .collect();
        self.encode(&s)
    }

    /// Elements killed by `d` (all elements when `d = 0`).
    pub fn killed_by(&self, d: u64) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| d == 0 || self.scale(x, d) == 0)
            .collect()
    }

    fn addition_table(&self) -> Vec<Vec<u32>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.add(x, y) as u32).collect())
            .collect()
    }

    /// Bitset of the subgroup generated by `gens`.
    pub fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[0] = true;
        let mut members = vec![0usize];
        for &g in gens {
            if inside[g] {
                continue;
            }
            // ⟨S, g⟩ = ⋃_k (S + k g)
            let base = members.clone();
            let before = inside.clone();
            let mut shift = g;
            while !before[shift] {
                for &s in &base {
                    let y = self.add(s, shift);
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                    }
                }
                shift = self.add(shift, g);
            }
        }
        inside
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.span(gens).iter().all(|&b| b)
    }

    /// Number of tuples `(x_1, …, x_s)` with `x_i ∈ allowed[i]` that generate the group.
    pub fn count_generating_tuples(&self, allowed: &[Vec<usize>]) -> BigUint {
        let table = self.addition_table();
        let mut ids: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut states: Vec<Vec<bool>> = Vec::new();
        let mut trivial = vec![false; self.order];
        trivial[0] = true;
        ids.insert(trivial.clone(), 0);
        states.push(trivial);
        let mut counts: Vec<BigUint> = vec![BigUint::from(1u32)];
        let mut trans: HashMap<(usize, usize), usize> = HashMap::new();
        for choices in allowed {
            let mut next: Vec<BigUint> = vec![BigUint::zero(); states.len()];
            for s in 0..counts.len() {
                if counts[s].is_zero() {
                    continue;
                }
                for &a in choices {
                    let t = match trans.get(&(s, a)) {
                        Some(&t) => t,
                        None => {
                            let grown = grow(&table, &states[s], a);
                            let t = match ids.get(&grown) {
                                Some(&t) => t,
                                None => {
                                    ids.insert(grown.clone(), states.len());
                                    states.push(grown);
                                    states.len() - 1
                                }
                            };
                            trans.insert((s, a), t);
                            t
                        }
                    };
                    if t >= next.len() {
                        next.resize(states.len(), BigUint::zero());
                    }
                    next[t] += &counts[s];
                }
            }
            counts = next;
        }
        let full = vec![true; self.order];
        match ids.get(&full) {
            Some(&f) if f < counts.len() => counts[f].clone(),
            _ => BigUint::zero(),
        }
    }

    /// Number of automorphisms, counted as generating tuples of generator images.
    pub fn automorphism_count(&self) -> BigUint {
        let allowed: Vec<Vec<usize>> = self.factors.iter().map(|&d| self.killed_by(d)).collect();
        self.count_generating_tuples(&allowed)
    }

    /// All automorphisms as permutation tables of the elements.
    pub fn automorphisms(&self, bounds: &Bounds) -> Result<Vec<Vec<usize>>> {
        let allowed: Vec<Vec<usize>> = self.factors.iter().map(|&d| self.killed_by(d)).collect();
        let total: u64 = allowed.iter().map(|a| a.len() as u64).product();
        bounds.check("automorphism search", bounds.max_enumeration, total)?;
        let mut out = Vec::new();
        for_each_tuple(&allowed, &mut |imgs| {
            if self.generates(imgs) {
                out.push(self.extend(imgs));
            }
        });
        Ok(out)
    }

    /// Table of the endomorphism sending the `i`-th generator to `imgs[i]`.
    pub fn extend(&self, imgs: &[usize]) -> Vec<usize> {
        (0..self.order)
            .map(|x| {
                let c = self.decode(x);
                c.iter()
                    .zip(imgs)
                    .fold(0, |acc, (&k, &g)| self.add(acc, self.scale(g, k)))
            })
            .collect()
    }
}

fn grow(table: &[Vec<u32>], s: &[bool], a: usize) -> Vec<bool> {
    if s[a] {
        return s.to_vec();
    }
    let members: Vec<usize> = (0..s.len()).filter(|&x| s[x]).collect();
    let mut out = s.to_vec();
    let mut shift = a;
    while !s[shift] {
        for &m in &members {
            out[table[m][shift] as usize] = true;
        }
        shift = table[shift][a] as usize;
    }
    out
}

/// Calls `f` on every tuple of the cartesian product, in lexicographic order.
pub fn for_each_tuple(choices: &[Vec<usize>], f: &mut dyn FnMut(&[usize])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut cur: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&cur);
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                cur[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = choices[k][0];
        }
    }
}
