//! Symmetric sets of basis functions and their orbits under `S_n` and under
//! point stabilizers.

use std::collections::{BTreeMap, VecDeque};

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interp::poly::{act_on_function, BasisFunction};
use crate::linalg::rational_rank;
use crate::nodeset::{OrbitVector, Point};
use crate::symcore::{factorial, stabilizer_elements, EnumLimit, OrbitType, Permutation, TypeTable};
use crate::unionfind::UnionFind;

/// How an orbit of functions compares with the orbit classes of `R^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitClass {
    /// Equivalent, as an `S_n`-set, to point orbits of this type.
    Realizable { ty: OrbitType },
    /// Matches no point-orbit class (its stabilizer is not a Young subgroup).
    NotRealizable { size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionOrbit {
    /// Indices into [`BasisSet::functions`].
    pub members: Vec<usize>,
    pub class: OrbitClass,
}

/// A finite set of distinct functions closed under variable permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSet {
    n: usize,
    functions: Vec<BasisFunction>,
    orbits: Vec<FunctionOrbit>,
}

impl BasisSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Functions in the order supplied.
    pub fn functions(&self) -> &[BasisFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn orbits(&self) -> &[FunctionOrbit] {
        &self.orbits
    }

    /// Orbit vector of the functions, when every orbit is realizable.
    pub fn orbit_vector(&self) -> Result<Option<OrbitVector>> {
        let table = TypeTable::new(self.n)?;
        let mut counts = vec![0; table.len()];
        for o in &self.orbits {
            match &o.class {
                OrbitClass::Realizable { ty } => counts[table.rank(ty)? - 1] += 1,
                OrbitClass::NotRealizable { .. } => return Ok(None),
            }
        }
        Ok(Some(OrbitVector { n: self.n, counts }))
    }
}

/// Checks closure under `S_n` and decomposes into orbits, in order of each
/// orbit's first member.
pub fn validate_symmetric_basis(n: usize, functions: Vec<BasisFunction>) -> Result<BasisSet> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if let Some(f) = functions.iter().find(|f| f.n() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: f.n(),
        });
    }
    let mut index: BTreeMap<&BasisFunction, usize> = BTreeMap::new();
    for (i, f) in functions.iter().enumerate() {
        if index.insert(f, i).is_some() {
            return Err(Error::DuplicateFunction(f.to_string()));
        }
    }
    let generators = Permutation::adjacent_transpositions(n);
    // images[i][g] = index of generator g applied to function i
    let mut images = Vec::with_capacity(functions.len());
    for f in &functions {
        let mut row = Vec::with_capacity(generators.len());
        for g in &generators {
            let image = act_on_function(g, f)?;
            match index.get(&image) {
                Some(&j) => row.push(j),
                None => {
                    return Err(Error::NotSymmetric {
                        element: f.to_string(),
                        image: image.to_string(),
                        permutation: g.to_string(),
                    })
                }
            }
        }
        images.push(row);
    }

    let mut seen = vec![false; functions.len()];
    let mut orbits = Vec::new();
    for start in 0..functions.len() {
        if seen[start] {
            continue;
        }
        let mut members = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &j in &images[i] {
                if !seen[j] {
                    seen[j] = true;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        let class = orbit_class(&functions[start], members.len())?;
        orbits.push(FunctionOrbit { members, class });
    }
    Ok(BasisSet { n, functions, orbits })
}

/// The transpositions fixing `f` generate a Young subgroup `Y ≤ stab(f)`.
/// The orbit is equivalent to a point orbit iff `stab(f)` is itself a Young
/// subgroup, i.e. iff `|orbit| · |Y| = n!`; the type is then the block
/// structure of `Y`.
fn orbit_class(f: &BasisFunction, orbit_size: usize) -> Result<OrbitClass> {
    let n = f.n();
    let mut labels = UnionFind::new(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let t = Permutation::transposition(n, i, j)?;
            if act_on_function(&t, f)? == *f {
                labels.union(i - 1, j - 1);
            }
        }
    }
    let mut blocks: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        *blocks.entry(labels.find(i)).or_insert(0) += 1;
    }
    let sizes: Vec<usize> = blocks.into_values().collect();
    let young = sizes
        .iter()
        .fold(num_bigint::BigUint::from(1u32), |acc, &s| acc * factorial(s));
    if young * orbit_size == factorial(n) {
        Ok(OrbitClass::Realizable {
            ty: OrbitType::from_block_sizes(n, &sizes)?,
        })
    } else {
        Ok(OrbitClass::NotRealizable { size: orbit_size })
    }
}

/// Orbits of the functions under the stabilizer of the canonical type-`t` point.
pub fn basis_orbit_count_under_stabilizer(b: &BasisSet, t: &OrbitType, limit: EnumLimit) -> Result<usize> {
    if t.n() != b.n {
        return Err(Error::DimensionMismatch {
            expected: b.n,
            found: t.n(),
        });
    }
    let group = stabilizer_elements(t, limit)?;
    let index: BTreeMap<&BasisFunction, usize> = b.functions.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut uf = UnionFind::new(b.functions.len());
    for sigma in group.iter().filter(|g| !g.is_identity()) {
        for (i, f) in b.functions.iter().enumerate() {
            let image = act_on_function(sigma, f)?;
            let j = *index
                .get(&image)
                .ok_or_else(|| Error::Internal(format!("{image} missing from a validated basis")))?;
            uf.union(i, j);
        }
    }
    Ok(uf.count())
}

/// `r[i]` = orbits of the basis under the stabilizer of type `i`, for every
/// type in descending order.
pub fn r_vector(b: &BasisSet, limit: EnumLimit) -> Result<Vec<usize>> {
    limit.check(b.n)?;
    TypeTable::new(b.n)?
        .types()
        .iter()
        .map(|t| basis_orbit_count_under_stabilizer(b, t, limit))
        .collect()
}

/// Outcome of the randomized linear-independence check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Independence {
    /// Full rank at some sample points: independent for certain.
    Certified,
    /// No full-rank sample found; probably dependent.
    Inconclusive { best_rank: usize },
}

/// Evaluates the functions at random integer points and computes the exact
/// rank. Full rank certifies independence; deficiency in every attempt is
/// strong evidence of dependence but not a proof.
pub fn check_independence(b: &BasisSet, attempts: usize, rng: &mut impl Rng) -> Independence {
    let count = b.functions.len();
    if count == 0 {
        return Independence::Certified;
    }
    let spread = 8 * count as i64 + 8;
    let mut best = 0;
    for _ in 0..attempts.max(1) {
        let points: Vec<Point> = (0..count)
            .map(|_| Point::from_integers((0..b.n).map(|_| rng.gen_range(-spread..=spread))))
            .collect();
        let m: Vec<Vec<BigRational>> = b
            .functions
            .iter()
            .map(|f| points.iter().map(|p| f.eval(p).expect("dimension checked")).collect())
            .collect();
        let rank = rational_rank(&m);
        if rank == count {
            return Independence::Certified;
        }
        best = best.max(rank);
    }
    Independence::Inconclusive { best_rank: best }
}

/// All monomials in `n` variables of total degree `<= degree`.
pub fn monomials_of_degree_at_most(n: usize, degree: u32) -> Vec<BasisFunction> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<BasisFunction>) {
        if i == exps.len() {
            out.push(BasisFunction::monomial(exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, degree, &mut exps, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn parse_all(n: usize, fs: &[&str]) -> Vec<BasisFunction> {
        fs.iter().map(|s| BasisFunction::parse(n, s).unwrap()).collect()
    }

    fn quadratic_basis() -> BasisSet {
        validate_symmetric_basis(3, parse_all(3, &["x^2", "y^2", "z^2", "x*y", "y*z", "z*x"])).unwrap()
    }

    fn ty(c: &[usize]) -> OrbitType {
        OrbitType::new(c.to_vec()).unwrap()
    }

    #[test]
    fn symmetric_validation() {
        let b = quadratic_basis();
        assert_eq!(b.orbits().len(), 2);
        assert_eq!(b.orbits()[0].members, vec![0, 1, 2]);
        assert_eq!(b.orbits()[1].members, vec![3, 4, 5]);
        assert!(b
            .orbits()
            .iter()
            .all(|o| o.class == OrbitClass::Realizable { ty: ty(&[1, 1, 0]) }));
        assert_eq!(b.orbit_vector().unwrap().unwrap().counts, vec![0, 2, 0]);

        match validate_symmetric_basis(2, parse_all(2, &["x - y"])) {
            Err(Error::NotSymmetric { image, .. }) => assert_eq!(image, "-x1 + x2"),
            other => panic!("expected NotSymmetric, got {other:?}"),
        }

        let cyclic = validate_symmetric_basis(
            3,
            parse_all(3, &["x1^2*x2 + x2^2*x3 + x3^2*x1", "x1^2*x3 + x3^2*x2 + x2^2*x1"]),
        )
        .unwrap();
        assert_eq!(cyclic.orbits().len(), 1);
        assert_eq!(cyclic.orbits()[0].class, OrbitClass::NotRealizable { size: 2 });
        assert_eq!(cyclic.orbit_vector().unwrap(), None);

        assert!(matches!(
            validate_symmetric_basis(3, parse_all(3, &["x", "x"])),
            Err(Error::DuplicateFunction(_))
        ));
    }

    #[test]
    fn stabilizer_counts_and_r() {
        let b = quadratic_basis();
        let lim = EnumLimit::default();
        assert_eq!(basis_orbit_count_under_stabilizer(&b, &ty(&[0, 0, 1]), lim).unwrap(), 2);
        assert_eq!(basis_orbit_count_under_stabilizer(&b, &ty(&[3, 0, 0]), lim).unwrap(), 6);
        assert_eq!(basis_orbit_count_under_stabilizer(&b, &ty(&[1, 1, 0]), lim).unwrap(), 4);
        assert_eq!(r_vector(&b, lim).unwrap(), vec![2, 4, 6]);

        let one = validate_symmetric_basis(3, parse_all(3, &["1"])).unwrap();
        assert_eq!(r_vector(&one, lim).unwrap(), vec![1, 1, 1]);
        let empty = validate_symmetric_basis(3, vec![]).unwrap();
        assert_eq!(r_vector(&empty, lim).unwrap(), vec![0, 0, 0]);
        assert!(matches!(r_vector(&b, EnumLimit(2)), Err(Error::Capacity { .. })));
    }

    #[test]
    fn independence() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        assert_eq!(
            check_independence(&quadratic_basis(), 3, &mut rng),
            Independence::Certified
        );
        let dep = validate_symmetric_basis(2, parse_all(2, &["x + y", "2*x + 2*y"])).unwrap();
        assert_eq!(
            check_independence(&dep, 3, &mut rng),
            Independence::Inconclusive { best_rank: 1 }
        );
    }

    #[test]
    fn degree_two_monomials() {
        let all = monomials_of_degree_at_most(3, 2);
        assert_eq!(all.len(), 10);
        let b = validate_symmetric_basis(3, all).unwrap();
        assert_eq!(b.orbits().len(), 4);
    }
}
