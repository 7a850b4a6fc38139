//! Symmetric node sets: exact points, orbit decomposition, orbit vectors and
//! the equivalence test on orbit vectors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::symcore::{
    apply_to_point, distinct_arrangements, stabilizer_elements, EnumLimit, OrbitType, Permutation, TypeTable,
};
use crate::unionfind::UnionFind;

/// A point of `R^n` with exact rational coordinates. Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<BigRational>,
}

impl Point {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Point { coords }
    }

    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Self {
        Point {
            coords: values
                .into_iter()
                .map(|v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Same coordinates, arranged in canonical block order: values occurring
    /// once first, then values occurring twice, and so on; ties by value.
    /// `(b,c,d,d,c,d,a)` becomes `(a,b,c,c,d,d,d)`.
    pub fn canonical_arrangement(&self) -> Point {
        let mut blocks: Vec<(usize, &BigRational)> =
            multiplicities(&self.coords).into_iter().map(|(v, m)| (m, v)).collect();
        blocks.sort();
        Point {
            coords: blocks
                .into_iter()
                .flat_map(|(m, v)| std::iter::repeat_n(v.clone(), m))
                .collect(),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Point {
    /// Coordinates as `"p/q"` strings (integers without the denominator).
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        parts.serialize(s)
    }
}

fn multiplicities(coords: &[BigRational]) -> BTreeMap<&BigRational, usize> {
    let mut m = BTreeMap::new();
    for c in coords {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}

/// `c_i` = number of distinct values occurring exactly `i` times.
pub fn classify_point(x: &Point) -> Result<OrbitType> {
    let mut counts = vec![0; x.n()];
    if counts.is_empty() {
        return Err(Error::InvalidDimension(0));
    }
    for m in multiplicities(&x.coords).into_values() {
        counts[m - 1] += 1;
    }
    OrbitType::new(counts)
}

/// The `S_n`-orbit of `x`: all distinct rearrangements of its coordinates.
pub fn expand_orbit(x: &Point) -> BTreeSet<Point> {
    distinct_arrangements(&x.coords).into_iter().map(Point::new).collect()
}

/// One `S_n`-orbit inside a node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub ty: OrbitType,
    /// The member in canonical block order.
    pub representative: Point,
    /// All members, sorted.
    pub points: Vec<Point>,
}

/// A finite set of distinct points closed under coordinate permutations,
/// with its orbit decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSet {
    n: usize,
    points: Vec<Point>,
    orbits: Vec<Orbit>,
}

impl NodeSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Orbits, in the order their smallest member appears.
    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }
}

/// Validates that `points` (all of dimension `n`) are distinct and closed
/// under `S_n`, and decomposes them into orbits.
pub fn validate_symmetric(n: usize, points: Vec<Point>) -> Result<NodeSet> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if let Some(p) = points.iter().find(|p| p.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: p.n(),
        });
    }
    let mut sorted = points;
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoint(w[0].to_string()));
    }
    let set: BTreeSet<&Point> = sorted.iter().collect();

    // Adjacent transpositions generate S_n, so closure under them suffices.
    let generators = Permutation::adjacent_transpositions(n);
    for p in &sorted {
        for g in &generators {
            let image = apply_to_point(g, p)?;
            if !set.contains(&image) {
                return Err(Error::NotSymmetric {
                    element: p.to_string(),
                    image: image.to_string(),
                    permutation: g.to_string(),
                });
            }
        }
    }

    let mut assigned: BTreeSet<&Point> = BTreeSet::new();
    let mut orbits = Vec::new();
    for p in &sorted {
        if assigned.contains(p) {
            continue;
        }
        let members: Vec<Point> = expand_orbit(p).into_iter().collect();
        for m in &members {
            let m = set
                .get(m)
                .ok_or_else(|| Error::Internal(format!("orbit member {m} missing after closure check")))?;
            assigned.insert(m);
        }
        orbits.push(Orbit {
            ty: classify_point(p)?,
            representative: p.canonical_arrangement(),
            points: members,
        });
    }
    Ok(NodeSet {
        n,
        points: sorted,
        orbits,
    })
}

/// Number of orbits of each type, in descending type order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitVector {
    pub n: usize,
    pub counts: Vec<usize>,
}

impl OrbitVector {
    /// Total number of points `Σ counts[i] · |orbit of type i|`.
    pub fn total_points(&self, table: &TypeTable) -> num_bigint::BigUint {
        self.counts
            .iter()
            .zip(table.types())
            .map(|(&c, t)| t.orbit_size() * c)
            .sum()
    }

    /// Total number of orbits.
    pub fn total_orbits(&self) -> usize {
        self.counts.iter().sum()
    }
}

pub fn orbit_vector(s: &NodeSet) -> Result<OrbitVector> {
    let table = TypeTable::new(s.n)?;
    let mut counts = vec![0; table.len()];
    for o in &s.orbits {
        counts[table.rank(&o.ty)? - 1] += 1;
    }
    Ok(OrbitVector { n: s.n, counts })
}

/// An equivariant bijection between two node sets, as sorted pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bijection {
    pub pairs: Vec<(Point, Point)>,
}

impl Bijection {
    pub fn image(&self, x: &Point) -> Option<&Point> {
        self.pairs
            .binary_search_by(|(a, _)| a.cmp(x))
            .ok()
            .map(|i| &self.pairs[i].1)
    }
}

/// Result of comparing two node sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub equivalent: bool,
    pub left: OrbitVector,
    pub right: OrbitVector,
    pub witness: Option<Bijection>,
}

/// Decides equivalence of the `S_n`-actions on two node sets by comparing
/// orbit vectors, and when they agree builds an equivariant bijection.
///
/// Orbits of equal type are paired in order of their canonical
/// representatives `u`, `v`; then `σu ↦ σv`. Canonical representatives of
/// one type share their block layout, hence their stabilizer, so the map is
/// well defined.
pub fn equivalent(s1: &NodeSet, s2: &NodeSet) -> Result<Equivalence> {
    if s1.n != s2.n {
        return Err(Error::DimensionMismatch {
            expected: s1.n,
            found: s2.n,
        });
    }
    let left = orbit_vector(s1)?;
    let right = orbit_vector(s2)?;
    if left != right {
        return Ok(Equivalence {
            equivalent: false,
            left,
            right,
            witness: None,
        });
    }
    fn by_type(s: &NodeSet) -> BTreeMap<OrbitType, Vec<&Orbit>> {
        let mut m: BTreeMap<OrbitType, Vec<&Orbit>> = BTreeMap::new();
        for o in &s.orbits {
            m.entry(o.ty.clone()).or_default().push(o);
        }
        for v in m.values_mut() {
            v.sort_by(|a, b| a.representative.cmp(&b.representative));
        }
        m
    }
    let (a, b) = (by_type(s1), by_type(s2));
    let mut pairs = Vec::with_capacity(s1.len());
    for (ty, us) in &a {
        let vs = &b[ty];
        for (u, v) in us.iter().zip(vs) {
            let (ru, rv) = (u.representative.coords(), v.representative.coords());
            for y in &u.points {
                let sigma = Permutation::mapping(ru, y.coords())
                    .ok_or_else(|| Error::Internal(format!("{y} is not in the orbit of {}", u.representative)))?;
                pairs.push((y.clone(), Point::new(sigma.act(rv)?)));
            }
        }
    }
    pairs.sort();
    Ok(Equivalence {
        equivalent: true,
        left,
        right,
        witness: Some(Bijection { pairs }),
    })
}

/// Number of orbits of `s` under the stabilizer of the canonical type-`t`
/// point, by union-find over the images of every stabilizer element.
pub fn subgroup_orbit_count(s: &NodeSet, t: &OrbitType, limit: EnumLimit) -> Result<usize> {
    if t.n() != s.n {
        return Err(Error::DimensionMismatch {
            expected: s.n,
            found: t.n(),
        });
    }
    let group = stabilizer_elements(t, limit)?;
    let index: BTreeMap<&Point, usize> = s.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind::new(s.points.len());
    for sigma in group.iter().filter(|g| !g.is_identity()) {
        for (i, p) in s.points.iter().enumerate() {
            let image = apply_to_point(sigma, p)?;
            let j = index[&image];
            uf.union(i, j);
        }
    }
    Ok(uf.count())
}
