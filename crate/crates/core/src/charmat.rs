//! Permutation characters of `S_n` on the orbit classes of `R^n`.
//!
//! `K[i][j]` is the number of points of a type-`i` orbit fixed by any
//! permutation of cycle type `j`, i.e. the permutation character `χ_i` on
//! conjugacy class `j`. `V = (⟨χ_i, χ_j⟩)` is their Gram matrix, which also
//! counts orbits of the type-`i` stabilizer on a type-`j` orbit.
//!
//! Both indices always follow the descending type order of [`TypeTable`].

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{bareiss_determinant, leading_principal_minors};
use crate::symcore::{distinct_arrangements, factorial, stabilizer_elements, EnumLimit, OrbitType, TypeTable};

/// Size of the conjugacy class of cycle type `t`: `n! / Π i^{c_i} c_i!`.
pub fn class_size(t: &OrbitType) -> BigUint {
    let denom = t.counts().iter().enumerate().fold(BigUint::one(), |acc, (i, &c)| {
        acc * num_traits::pow(BigUint::from(i + 1), c) * factorial(c)
    });
    factorial(t.n()) / denom
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

/// Number of points of an orbit of type `orbit` fixed by a permutation of
/// cycle type `sigma`.
///
/// A point is fixed iff every cycle lies inside one equality block. Blocks
/// carry distinct values, so the count is the number of ways to hand the
/// cycles out to blocks with each block's cycle lengths summing to its size.
/// Blocks are processed one at a time; for each, every sub-multiset of the
/// remaining cycles with the right total is tried, weighted by the binomial
/// number of ways to pick those particular cycles.
pub fn fixed_point_count(orbit: &OrbitType, sigma: &OrbitType) -> Result<BigUint> {
    if orbit.n() != sigma.n() {
        return Err(Error::DimensionMismatch {
            expected: orbit.n(),
            found: sigma.n(),
        });
    }
    let blocks = orbit.block_sizes();
    let mut memo = HashMap::new();
    Ok(assign_cycles(&blocks, sigma.counts().to_vec(), &mut memo))
}

fn assign_cycles(blocks: &[usize], remaining: Vec<usize>, memo: &mut HashMap<(usize, Vec<usize>), BigUint>) -> BigUint {
    let Some((&size, rest)) = blocks.split_first() else {
        return if remaining.iter().all(|&c| c == 0) {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    };
    let key = (blocks.len(), remaining);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut remaining = key.1.clone();
    let mut total = BigUint::zero();
    let max_len = size.min(remaining.len());
    // Take k cycles of each length, longest first, until `size` is used up.
    #[allow(clippy::too_many_arguments)]
    fn choose(
        len: usize,
        left: usize,
        remaining: &mut Vec<usize>,
        rest: &[usize],
        weight: BigUint,
        total: &mut BigUint,
        memo: &mut HashMap<(usize, Vec<usize>), BigUint>,
    ) {
        if left == 0 {
            *total += weight * assign_cycles(rest, remaining.clone(), memo);
            return;
        }
        if len == 0 {
            return;
        }
        let avail = remaining[len - 1];
        for k in 0..=avail.min(left / len) {
            let w = &weight * binomial(avail, k);
            remaining[len - 1] -= k;
            choose(len - 1, left - k * len, remaining, rest, w, total, memo);
            remaining[len - 1] += k;
        }
    }
    choose(max_len, size, &mut remaining, rest, BigUint::one(), &mut total, memo);
    memo.insert(key, total.clone());
    total
}

fn big_number(x: impl ToString) -> Value {
    Value::Number(x.to_string().parse().expect("integer literal"))
}

fn matrix_json(n: usize, order: &[OrbitType], entries: &[Vec<BigUint>]) -> Value {
    json!({
        "n": n,
        "order": order,
        "entries": entries
            .iter()
            .map(|row| row.iter().map(big_number).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// Fixed-point counts `K[i][j] = χ_i(A_j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMatrix {
    pub n: usize,
    pub order: Vec<OrbitType>,
    pub entries: Vec<Vec<BigUint>>,
}

impl KMatrix {
    /// `K[i][j] = 0` whenever class type `j` exceeds orbit type `i`. Lower
    /// triangular in ascending type order; upper triangular as stored.
    pub fn is_triangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, v)| v.is_zero() || self.order[j] <= self.order[i])
        })
    }

    /// Rows and columns in ascending type order.
    pub fn ascending(&self) -> KMatrix {
        KMatrix {
            n: self.n,
            order: self.order.iter().rev().cloned().collect(),
            entries: self
                .entries
                .iter()
                .rev()
                .map(|row| row.iter().rev().cloned().collect())
                .collect(),
        }
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().skip(i + 1).all(Zero::is_zero))
    }

    pub fn diagonal_positive(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| !row[i].is_zero())
    }

    pub fn to_json(&self) -> Value {
        matrix_json(self.n, &self.order, &self.entries)
    }
}

impl Serialize for KMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

pub fn k_matrix(n: usize) -> Result<KMatrix> {
    let table = TypeTable::new(n)?;
    let order = table.types().to_vec();
    let entries = order
        .iter()
        .map(|orbit| order.iter().map(|sigma| fixed_point_count(orbit, sigma)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Ok(KMatrix { n, order, entries })
}

/// Gram matrix `v[i][j] = ⟨χ_i, χ_j⟩` of the permutation characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VMatrix {
    pub n: usize,
    pub order: Vec<OrbitType>,
    pub entries: Vec<Vec<BigUint>>,
}

impl VMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn signed_entries(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|v| BigInt::from(v.clone())).collect())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let c = self.size();
        (0..c).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.signed_entries())
    }

    pub fn leading_minors(&self) -> Vec<BigInt> {
        leading_principal_minors(&self.signed_entries())
    }

    /// Sylvester's criterion, exactly. Only meaningful when symmetric.
    pub fn is_positive_definite(&self) -> bool {
        self.is_symmetric() && self.leading_minors().iter().all(Signed::is_positive)
    }

    /// `V · x` for an integer vector.
    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(x).map(|(v, x)| BigInt::from(v.clone()) * x).sum())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        matrix_json(self.n, &self.order, &self.entries)
    }
}

impl Serialize for VMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// `v[i][j] = (1/n!) Σ_k |A_k| K[i][k] K[j][k]`, exact.
pub fn v_matrix(n: usize) -> Result<VMatrix> {
    let k = k_matrix(n)?;
    let sizes: Vec<BigUint> = k.order.iter().map(class_size).collect();
    let group_order = factorial(n);
    let c = k.order.len();
    let mut entries = vec![vec![BigUint::zero(); c]; c];
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let sum: BigUint = (0..c).map(|m| &sizes[m] * &k.entries[i][m] * &k.entries[j][m]).sum();
            let (q, r) = sum.div_rem(&group_order);
            if !r.is_zero() {
                return Err(Error::Internal(format!(
                    "character inner product ({}, {}) for n = {n} is not an integer",
                    i + 1,
                    j + 1
                )));
            }
            *slot = q;
        }
    }
    Ok(VMatrix {
        n,
        order: k.order,
        entries,
    })
}

/// `v[i][j]` by direct orbit counting: the stabilizer of the canonical
/// type-`i` point acting on the explicit type-`j` orbit, via Burnside's
/// average of fixed-point counts. Ranks are 1-based.
pub fn v_entry_burnside(i: usize, j: usize, n: usize, limit: EnumLimit) -> Result<BigUint> {
    limit.check(n)?;
    let table = TypeTable::new(n)?;
    let ti = table.get(i).ok_or(Error::DimensionMismatch {
        expected: table.len(),
        found: i,
    })?;
    let tj = table.get(j).ok_or(Error::DimensionMismatch {
        expected: table.len(),
        found: j,
    })?;
    let group = stabilizer_elements(ti, limit)?;
    let orbit = distinct_arrangements(&tj.canonical_values());
    let fixed: usize = group
        .iter()
        .map(|sigma| {
            orbit
                .iter()
                .filter(|y| sigma.act(y).expect("same dimension") == **y)
                .count()
        })
        .sum();
    let (q, r) = fixed.div_rem(&group.len());
    if r != 0 {
        return Err(Error::Internal(format!("Burnside average not integral for ({i}, {j})")));
    }
    Ok(BigUint::from(q))
}
