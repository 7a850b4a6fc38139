//! Permutations of `{1..n}`, cycle types and orbit types.
//!
//! An [`OrbitType`] `(c_1, .., c_n)` records how many coordinate-equality
//! classes of each size a point has. The same vectors index the conjugacy
//! classes of `S_n` (cycle types), so a single type serves both roles.
//!
//! Types are totally ordered by comparing `c_n` first, then `c_{n-1}`, down
//! to `c_1`. All lists of types in this crate are in *descending* order, so
//! rank 1 is always the one-point orbit `(0, .., 0, 1)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::nodeset::Point;

/// Largest `n` for which `S_n` is enumerated element by element.
pub const DEFAULT_ENUM_LIMIT: usize = 10;

/// Upper bound on `n` for operations that walk all of `S_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimit(pub usize);

impl Default for EnumLimit {
    fn default() -> Self {
        EnumLimit(DEFAULT_ENUM_LIMIT)
    }
}

impl EnumLimit {
    pub fn check(self, n: usize) -> Result<()> {
        if n > self.0 {
            Err(Error::Capacity { n, limit: self.0 })
        } else {
            Ok(())
        }
    }
}

/// A bijection on `{1..n}`.
///
/// Stored 0-based; every public constructor and accessor speaks 1-based
/// labels, and serialization is a JSON array of 1-based images.
///
/// The action on points is `(σx)_i = x_{σ(i)}`. The product is chosen so
/// that this is a left action: `(σ * τ).act(x) == σ.act(τ.act(x))`, which
/// makes `(σ * τ)(i) = τ(σ(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from 1-based images.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let mut seen = vec![false; n];
        for &img in &images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::InvalidPermutation { n, images });
            }
            seen[img - 1] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i - 1).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The transposition exchanging labels `i` and `j` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidPermutation { n, images: vec![i, j] });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    /// Adjacent transpositions `(1 2), (2 3), .., (n-1 n)`; they generate `S_n`.
    pub fn adjacent_transpositions(n: usize) -> Vec<Permutation> {
        (1..n)
            .map(|i| Permutation::transposition(n, i, i + 1).expect("labels in range"))
            .collect()
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of label `i` (1-based in, 1-based out).
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// The product `self * other`: act with `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    /// Permutes a coordinate vector: component `i` of the result is `xs[σ(i)]`.
    pub fn act<T: Clone>(&self, xs: &[T]) -> Result<Vec<T>> {
        if xs.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: xs.len(),
            });
        }
        Ok(self.images.iter().map(|&i| xs[i].clone()).collect())
    }

    /// Disjoint cycles, each starting at its smallest label (1-based).
    /// Fixed labels appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Number of cycles of each length, as a type.
    pub fn cycle_type(&self) -> OrbitType {
        let mut counts = vec![0; self.n()];
        for c in self.cycles() {
            counts[c.len() - 1] += 1;
        }
        OrbitType { counts }
    }

    /// Some `σ` with `σ.act(from) == to`, if `to` is a rearrangement of `from`.
    pub fn mapping<T: PartialEq>(from: &[T], to: &[T]) -> Option<Permutation> {
        if from.len() != to.len() {
            return None;
        }
        let mut used = vec![false; from.len()];
        let mut images = Vec::with_capacity(to.len());
        for y in to {
            let j = (0..from.len()).find(|&j| !used[j] && from[j] == *y)?;
            used[j] = true;
            images.push(j);
        }
        Some(Permutation { images })
    }

    /// Iterates over all of `S_n` in lexicographic order of image arrays.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutations of equal degree")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without 1-cycles; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let labels: Vec<String> = c.iter().map(|l| l.to_string()).collect();
            write!(f, "({})", labels.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::new(images).map_err(serde::de::Error::custom)
    }
}

pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

/// Advances `xs` to its lexicographic successor; returns false at the last
/// arrangement (leaving `xs` untouched).
pub(crate) fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// All distinct rearrangements of `xs`, in lexicographic order.
pub fn distinct_arrangements<T: Ord + Clone>(xs: &[T]) -> Vec<Vec<T>> {
    let mut cur = xs.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

/// Applies `σ` to a point: component `i` of the result is `x_{σ(i)}`.
pub fn apply_to_point(sigma: &Permutation, x: &Point) -> Result<Point> {
    Ok(Point::new(sigma.act(x.coords())?))
}

pub(crate) fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// The type `(c_1, .., c_n)` of an orbit in `R^n`, or the cycle type of a
/// permutation. `counts()[i - 1]` is `c_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrbitType {
    counts: Vec<usize>,
}

impl OrbitType {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let n = counts.len();
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let weight: usize = counts.iter().enumerate().map(|(i, c)| (i + 1) * c).sum();
        if weight != n {
            return Err(Error::InvalidType { n, counts });
        }
        Ok(OrbitType { counts })
    }

    /// The type whose blocks (or cycles) have the given sizes.
    pub fn from_block_sizes(n: usize, sizes: &[usize]) -> Result<Self> {
        let mut counts = vec![0; n];
        for &s in sizes {
            if s == 0 || s > n {
                return Err(Error::InvalidType {
                    n,
                    counts: sizes.to_vec(),
                });
            }
            counts[s - 1] += 1;
        }
        OrbitType::new(counts)
    }

    /// `(n, 0, .., 0)`: all coordinates distinct, or the identity's cycle type.
    pub fn free(n: usize) -> Self {
        let mut counts = vec![0; n];
        counts[0] = n;
        OrbitType { counts }
    }

    /// `(0, .., 0, 1)`: the one-point orbit, or an `n`-cycle.
    pub fn constant(n: usize) -> Self {
        let mut counts = vec![0; n];
        counts[n - 1] = 1;
        OrbitType { counts }
    }

    pub fn n(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `c_i` for `1 <= i <= n`.
    pub fn count(&self, i: usize) -> usize {
        self.counts[i - 1]
    }

    /// Block sizes in canonical order: singletons first, then pairs, and so on.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
            .collect()
    }

    /// `Π (i!)^{c_i}`, the order of the stabilizer of any point of this type.
    pub fn stabilizer_order(&self) -> BigUint {
        self.block_sizes()
            .into_iter()
            .fold(BigUint::one(), |acc, s| acc * factorial(s))
    }

    /// `n! / stabilizer_order`.
    pub fn orbit_size(&self) -> BigUint {
        factorial(self.n()) / self.stabilizer_order()
    }

    /// Block values `1, 2, 3, ..` laid out in canonical block order,
    /// e.g. `(1,1,0)` gives `[1, 2, 2]`.
    pub fn canonical_values(&self) -> Vec<usize> {
        self.block_sizes()
            .into_iter()
            .enumerate()
            .flat_map(|(b, s)| std::iter::repeat_n(b + 1, s))
            .collect()
    }

    pub fn canonical_point(&self) -> Point {
        Point::from_integers(self.canonical_values().into_iter().map(|v| v as i64))
    }

    /// Symbolic orbit member with the largest blocks first, drawing fresh
    /// parameter names from `names`; `(1,1,0)` with `a, b, ..` gives `(a,a,b)`.
    pub fn pattern(&self, names: &mut impl Iterator<Item = String>) -> String {
        let parts: Vec<String> = self
            .block_sizes()
            .into_iter()
            .rev()
            .flat_map(|s| {
                let name = names.next().unwrap_or_else(|| "?".into());
                std::iter::repeat_n(name, s)
            })
            .collect();
        format!("({})", parts.join(","))
    }
}

impl Ord for OrbitType {
    /// `a > b` iff at the highest index `k` where they differ, `c_k(a) > c_k(b)`.
    /// Types of different dimension order by dimension first; use
    /// [`compare_types`] when a mismatch should be an error.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.counts.iter().rev().cmp(other.counts.iter().rev()))
    }
}

impl PartialOrd for OrbitType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for OrbitType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.counts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrbitType {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let counts = Vec::<usize>::deserialize(deserializer)?;
        OrbitType::new(counts).map_err(serde::de::Error::custom)
    }
}

/// Compares two types of the same dimension.
pub fn compare_types(a: &OrbitType, b: &OrbitType) -> Result<Ordering> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    Ok(a.cmp(b))
}

/// Every solution of `c_1 + 2c_2 + .. + nc_n = n`, in descending order.
pub fn enumerate_types(n: usize) -> Result<Vec<OrbitType>> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut out = Vec::new();
    let mut counts = vec![0; n];
    // Largest part first; each level picks how many parts of size `part`.
    fn fill(part: usize, remaining: usize, counts: &mut Vec<usize>, out: &mut Vec<OrbitType>) {
        if part == 0 {
            if remaining == 0 {
                out.push(OrbitType { counts: counts.clone() });
            }
            return;
        }
        for k in (0..=remaining / part).rev() {
            counts[part - 1] = k;
            fill(part - 1, remaining - k * part, counts, out);
        }
        counts[part - 1] = 0;
    }
    fill(n, n, &mut counts, &mut out);
    // The recursion emits in descending order already; keep the check cheap.
    debug_assert!(out.windows(2).all(|w| w[0] > w[1]));
    Ok(out)
}

/// The descending list of types for one `n`, with rank lookup.
#[derive(Debug, Clone)]
pub struct TypeTable {
    n: usize,
    types: Vec<OrbitType>,
    ranks: HashMap<OrbitType, usize>,
}

impl TypeTable {
    pub fn new(n: usize) -> Result<Self> {
        let types = enumerate_types(n)?;
        let ranks = types.iter().enumerate().map(|(i, t)| (t.clone(), i + 1)).collect();
        Ok(TypeTable { n, types, ranks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of types `c`.
    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[OrbitType] {
        &self.types
    }

    /// Type at 1-based rank.
    pub fn get(&self, rank: usize) -> Option<&OrbitType> {
        rank.checked_sub(1).and_then(|i| self.types.get(i))
    }

    /// 1-based rank of `t` in the descending order.
    pub fn rank(&self, t: &OrbitType) -> Result<usize> {
        self.ranks.get(t).copied().ok_or(Error::DimensionMismatch {
            expected: self.n,
            found: t.n(),
        })
    }
}

/// All `σ ∈ S_n` fixing the canonical point of `t`, by enumerating `S_n`.
pub fn stabilizer_elements(t: &OrbitType, limit: EnumLimit) -> Result<Vec<Permutation>> {
    let n = t.n();
    limit.check(n)?;
    let x = t.canonical_values();
    Ok(Permutation::all(n)
        .filter(|p| p.zero_based().iter().enumerate().all(|(i, &j)| x[i] == x[j]))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(c: &[usize]) -> OrbitType {
        OrbitType::new(c.to_vec()).unwrap()
    }

    #[test]
    fn types_for_three_match_table() {
        let types = enumerate_types(3).unwrap();
        assert_eq!(types, vec![ty(&[0, 0, 1]), ty(&[1, 1, 0]), ty(&[3, 0, 0])]);
        assert_eq!(enumerate_types(1).unwrap(), vec![ty(&[1])]);
        assert_eq!(enumerate_types(0), Err(Error::InvalidDimension(0)));
    }

    #[test]
    fn invalid_type_rejected() {
        assert!(OrbitType::new(vec![1, 0, 1]).is_err());
        assert!(OrbitType::new(vec![]).is_err());
    }

    #[test]
    fn compare_examples() {
        assert_eq!(
            compare_types(&ty(&[0, 0, 1]), &ty(&[1, 1, 0])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            compare_types(&ty(&[1, 2, 0, 0, 0]), &ty(&[3, 1, 0, 0, 0])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            compare_types(&ty(&[1, 1, 0]), &ty(&[1, 1, 0])).unwrap(),
            Ordering::Equal
        );
        assert!(compare_types(&ty(&[1, 1, 0]), &ty(&[2, 1, 0, 0])).is_err());
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(3).cycle_type(), ty(&[3, 0, 0]));
        assert_eq!(
            Permutation::transposition(3, 1, 2).unwrap().cycle_type(),
            ty(&[1, 1, 0])
        );
        let p = Permutation::new(vec![2, 3, 1, 4, 6, 5]).unwrap();
        assert_eq!(p.cycle_type(), ty(&[1, 1, 1, 0, 0, 0]));
        assert_eq!(p.to_string(), "(1 2 3)(5 6)");
    }

    #[test]
    fn bad_permutations() {
        assert!(Permutation::new(vec![1, 1, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![2, 3, 1]).is_ok());
    }

    #[test]
    fn point_action_examples() {
        let x = Point::from_integers([7, 8, 9]);
        let s = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(apply_to_point(&s, &x).unwrap(), Point::from_integers([8, 9, 7]));
        let y = Point::from_integers([4, 4, 5]);
        let t = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(apply_to_point(&t, &y).unwrap(), y);
        assert_eq!(apply_to_point(&Permutation::identity(3), &x).unwrap(), x);
        assert!(apply_to_point(&Permutation::identity(2), &x).is_err());
    }

    #[test]
    fn composition_is_left_action() {
        let s = Permutation::new(vec![2, 3, 1]).unwrap();
        let t = Permutation::transposition(3, 1, 2).unwrap();
        let x = [10, 20, 30];
        let lhs = (&s * &t).act(&x).unwrap();
        let rhs = s.act(&t.act(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!((&s * &s.inverse()).is_identity());
    }

    #[test]
    fn sizes() {
        assert_eq!(ty(&[0, 0, 1]).stabilizer_order(), BigUint::from(6u32));
        assert_eq!(ty(&[1, 1, 0]).stabilizer_order(), BigUint::from(2u32));
        assert_eq!(OrbitType::free(5).stabilizer_order(), BigUint::from(1u32));
        let sizes: Vec<BigUint> = enumerate_types(3).unwrap().iter().map(|t| t.orbit_size()).collect();
        assert_eq!(sizes, vec![1u32.into(), 3u32.into(), 6u32.into()]);
        assert_eq!(ty(&[0, 2, 0, 0]).orbit_size(), BigUint::from(6u32));
        assert_eq!(OrbitType::free(5).orbit_size(), BigUint::from(120u32));
    }

    #[test]
    fn canonical_points() {
        assert_eq!(ty(&[1, 1, 0]).canonical_values(), vec![1, 2, 2]);
        assert_eq!(ty(&[0, 0, 1]).canonical_values(), vec![1, 1, 1]);
        assert_eq!(ty(&[3, 0, 0]).canonical_values(), vec![1, 2, 3]);
        assert_eq!(ty(&[1, 0, 2, 0, 0, 0, 0]).canonical_values(), vec![1, 2, 2, 2, 3, 3, 3]);
        let mut names = ["a", "b"].iter().map(|s| s.to_string());
        assert_eq!(ty(&[1, 1, 0]).pattern(&mut names), "(a,a,b)");
        let mut names = ["p", "q", "r", "s"].iter().map(|s| s.to_string());
        assert_eq!(ty(&[1, 0, 2, 0, 0, 0, 0]).pattern(&mut names), "(p,p,p,q,q,q,r)");
    }

    #[test]
    fn stabilizer_examples() {
        let lim = EnumLimit::default();
        assert_eq!(
            stabilizer_elements(&ty(&[3, 0, 0]), lim).unwrap(),
            vec![Permutation::identity(3)]
        );
        assert_eq!(stabilizer_elements(&ty(&[0, 0, 1]), lim).unwrap().len(), 6);
        let h = stabilizer_elements(&ty(&[1, 1, 0]), lim).unwrap();
        assert_eq!(
            h,
            vec![Permutation::identity(3), Permutation::transposition(3, 2, 3).unwrap()]
        );
        assert_eq!(
            stabilizer_elements(&OrbitType::free(4), EnumLimit(3)),
            Err(Error::Capacity { n: 4, limit: 3 })
        );
    }

    #[test]
    fn arrangements() {
        assert_eq!(distinct_arrangements(&[2, 1, 2]).len(), 3);
        assert_eq!(distinct_arrangements(&[1, 2, 3]).len(), 6);
        assert_eq!(distinct_arrangements(&[5, 5, 5]), vec![vec![5, 5, 5]]);
        assert_eq!(Permutation::all(4).count(), 24);
    }

    #[test]
    fn mapping_finds_witness() {
        let from = [1, 2, 2];
        let to = [2, 1, 2];
        let s = Permutation::mapping(&from, &to).unwrap();
        assert_eq!(s.act(&from).unwrap(), to);
        assert!(Permutation::mapping(&from, &[1, 1, 2]).is_none());
    }

    #[test]
    fn serde_is_one_based() {
        let p = Permutation::new(vec![2, 3, 1]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,3,1]");
        let q: Permutation = serde_json::from_str("[2,3,1]").unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
        let t: OrbitType = serde_json::from_str("[1,1,0]").unwrap();
        assert_eq!(serde_json::to_string(&t).unwrap(), "[1,1,0]");
        assert!(serde_json::from_str::<OrbitType>("[1,1,1]").is_err());
    }
}
