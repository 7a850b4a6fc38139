//! The orbit-count system `V X = r` and its exact solution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::charmat::VMatrix;
use crate::error::{Error, Result};
use crate::linalg::solve_rational;

/// Whether the solution of `V X = r` can be the orbit vector of a node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    /// Every entry is a non-negative integer.
    Admissible { orbit_vector: Vec<BigInt> },
    /// Some entry is negative or fractional: no symmetric node set can be
    /// unisolvent with this basis.
    Infeasible {
        negative: Vec<usize>,
        fractional: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSystem {
    pub v: VMatrix,
    pub r: Vec<BigInt>,
    pub solution: Vec<BigRational>,
    pub admissibility: Admissibility,
}

impl ConstraintSystem {
    pub fn is_admissible(&self) -> bool {
        matches!(self.admissibility, Admissibility::Admissible { .. })
    }

    /// The admissible orbit vector, if any.
    pub fn orbit_vector(&self) -> Option<&[BigInt]> {
        match &self.admissibility {
            Admissibility::Admissible { orbit_vector } => Some(orbit_vector),
            Admissibility::Infeasible { .. } => None,
        }
    }
}

/// Solves `V X = r` over the rationals and classifies `X`.
pub fn solve_constraints(v: &VMatrix, r: &[BigInt]) -> Result<ConstraintSystem> {
    if r.len() != v.size() {
        return Err(Error::DimensionMismatch {
            expected: v.size(),
            found: r.len(),
        });
    }
    let a: Vec<Vec<BigRational>> = v
        .signed_entries()
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let b: Vec<BigRational> = r.iter().cloned().map(BigRational::from_integer).collect();
    let solution = solve_rational(&a, &b).ok_or_else(|| Error::Internal(format!("V is singular for n = {}", v.n)))?;

    let negative: Vec<usize> = (0..solution.len()).filter(|&i| solution[i].is_negative()).collect();
    let fractional: Vec<usize> = (0..solution.len()).filter(|&i| !solution[i].is_integer()).collect();
    let admissibility = if negative.is_empty() && fractional.is_empty() {
        Admissibility::Admissible {
            orbit_vector: solution.iter().map(|x| x.to_integer()).collect(),
        }
    } else {
        Admissibility::Infeasible { negative, fractional }
    };
    debug_assert!(a.iter().zip(&b).all(|(row, rhs)| {
        let lhs: BigRational = row.iter().zip(&solution).map(|(x, y)| x * y).sum();
        (&lhs - rhs).is_zero()
    }));
    Ok(ConstraintSystem {
        v: v.clone(),
        r: r.to_vec(),
        solution,
        admissibility,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charmat::v_matrix;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn known_solutions() {
        let v = v_matrix(3).unwrap();
        let sys = solve_constraints(&v, &ints(&[2, 4, 6])).unwrap();
        assert_eq!(sys.orbit_vector().unwrap(), ints(&[0, 2, 0]).as_slice());

        let sys = solve_constraints(&v, &ints(&[1, 1, 1])).unwrap();
        assert_eq!(sys.orbit_vector().unwrap(), ints(&[1, 0, 0]).as_slice());

        // Image of e_1 is the first column.
        let col: Vec<BigInt> = v.apply(&ints(&[1, 0, 0]));
        let sys = solve_constraints(&v, &col).unwrap();
        assert_eq!(sys.orbit_vector().unwrap(), ints(&[1, 0, 0]).as_slice());
    }

    #[test]
    fn infeasible_when_negative() {
        // r of the two-element cyclic basis {x1^2x2+.., x1^2x3+..}
        let v = v_matrix(3).unwrap();
        let sys = solve_constraints(&v, &ints(&[1, 1, 2])).unwrap();
        assert!(!sys.is_admissible());
        assert_eq!(
            sys.admissibility,
            Admissibility::Infeasible {
                negative: vec![1],
                fractional: vec![]
            }
        );
        assert!(solve_constraints(&v, &ints(&[1, 1])).is_err());
    }
}
