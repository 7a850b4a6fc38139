//! Generalized Vandermonde determinant and the necessary-condition screen.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charmat::v_matrix;
use crate::error::{Error, Result};
use crate::interp::basis::{r_vector, BasisSet, OrbitClass};
use crate::interp::constraints::{solve_constraints, ConstraintSystem};
use crate::interp::poly::BasisFunction;
use crate::nodeset::{orbit_vector, NodeSet, OrbitVector, Point};
use crate::rational::to_f64;
use crate::symcore::EnumLimit;

/// Default relative threshold for the floating-point determinant.
pub const DEFAULT_DET_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Unisolvent,
    Singular,
    NumericallyIndeterminate,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Determinant {
    Exact(BigRational),
    Float(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum EvalMatrix {
    Exact(Vec<Vec<BigRational>>),
    Float(Vec<Vec<f64>>),
}

/// `Φ = (f_i(a_j))`, its determinant and the verdict drawn from it.
#[derive(Debug, Clone, PartialEq)]
pub struct UnisolvenceReport {
    pub matrix: EvalMatrix,
    pub determinant: Determinant,
    pub verdict: Verdict,
}

impl UnisolvenceReport {
    pub fn is_unisolvent(&self) -> bool {
        self.verdict == Verdict::Unisolvent
    }

    pub fn to_json(&self) -> Value {
        let (det, exact) = match &self.determinant {
            Determinant::Exact(d) => (Value::String(d.to_string()), true),
            Determinant::Float(d) => (json!(d), false),
        };
        json!({
            "verdict": self.verdict,
            "exact": exact,
            "determinant": det,
        })
    }
}

fn check_shape(functions: &[BasisFunction], nodes: &[Point]) -> Result<()> {
    if functions.len() != nodes.len() {
        return Err(Error::SizeMismatch {
            functions: functions.len(),
            points: nodes.len(),
        });
    }
    if functions.is_empty() {
        return Err(Error::Empty);
    }
    let n = functions[0].n();
    if let Some(bad) = functions
        .iter()
        .map(|f| f.n())
        .chain(nodes.iter().map(|p| p.n()))
        .find(|&m| m != n)
    {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad,
        });
    }
    Ok(())
}

/// Exact test: evaluates every function at every node over the rationals and
/// takes the determinant by fraction-free elimination. Unisolvent iff
/// the determinant is nonzero.
pub fn vandermonde(functions: &[BasisFunction], nodes: &[Point]) -> Result<UnisolvenceReport> {
    check_shape(functions, nodes)?;
    let matrix = functions
        .iter()
        .map(|f| nodes.iter().map(|a| f.eval(a)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let det = crate::linalg::rational_determinant(&matrix);
    let verdict = if det.is_zero() {
        Verdict::Singular
    } else {
        Verdict::Unisolvent
    };
    Ok(UnisolvenceReport {
        matrix: EvalMatrix::Exact(matrix),
        determinant: Determinant::Exact(det),
        verdict,
    })
}

/// Floating-point test with partial pivoting. Reports
/// `NumericallyIndeterminate` when `|det|` is below `rel_tol` times the
/// product of row norms (Hadamard's bound); it never reports `Singular`.
pub fn vandermonde_float(functions: &[BasisFunction], nodes: &[Point], rel_tol: f64) -> Result<UnisolvenceReport> {
    check_shape(functions, nodes)?;
    if !(rel_tol.is_finite() && rel_tol > 0.0) {
        return Err(Error::Parse(format!(
            "determinant tolerance must be positive, got {rel_tol}"
        )));
    }
    let coords: Vec<Vec<f64>> = nodes.iter().map(|p| p.coords().iter().map(to_f64).collect()).collect();
    let matrix: Vec<Vec<f64>> = functions
        .iter()
        .map(|f| coords.iter().map(|x| f.eval_f64(x)).collect())
        .collect();
    let det = crate::linalg::float_determinant(&matrix);
    let scale: f64 = matrix
        .iter()
        .map(|row| row.iter().map(|v| v * v).sum::<f64>().sqrt())
        .product();
    let verdict = if det.is_finite() && det.abs() > rel_tol * scale {
        Verdict::Unisolvent
    } else {
        Verdict::NumericallyIndeterminate
    };
    Ok(UnisolvenceReport {
        matrix: EvalMatrix::Float(matrix),
        determinant: Determinant::Float(det),
        verdict,
    })
}

/// The three screens, cheapest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// As many functions as nodes.
    SizeMatch,
    /// Equal numbers of `S_n`-orbits among functions and nodes.
    OrbitCount,
    /// The node orbit vector solves `V X = r`.
    OrbitVector,
}

impl Condition {
    pub fn reason(self) -> &'static str {
        match self {
            Condition::SizeMatch => "size mismatch",
            Condition::OrbitCount => "orbit count mismatch",
            Condition::OrbitVector => "orbit vector mismatch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub condition: Condition,
    pub status: Status,
    pub detail: String,
}

/// Outcome of [`check_necessary_conditions`]. Passing is necessary for
/// unisolvence, never sufficient.
#[derive(Debug, Clone, PartialEq)]
pub struct NecessaryReport {
    pub checks: Vec<ConditionCheck>,
    pub node_vector: OrbitVector,
    pub r: Option<Vec<usize>>,
    pub system: Option<ConstraintSystem>,
    pub notices: Vec<String>,
}

impl NecessaryReport {
    pub fn satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConditionCheck> {
        self.checks.iter().filter(|c| c.status == Status::Failed)
    }

    pub fn first_violation(&self) -> Option<Condition> {
        self.failures().next().map(|c| c.condition)
    }

    pub fn status(&self, condition: Condition) -> Option<Status> {
        self.checks.iter().find(|c| c.condition == condition).map(|c| c.status)
    }
}

fn check(condition: Condition, ok: bool, detail: String) -> ConditionCheck {
    ConditionCheck {
        condition,
        status: if ok { Status::Passed } else { Status::Failed },
        detail,
    }
}

fn skipped(condition: Condition, detail: &str) -> ConditionCheck {
    ConditionCheck {
        condition,
        status: Status::Skipped,
        detail: detail.to_string(),
    }
}

/// Screens a (basis, nodes) pair before any determinant work:
/// 1. `|functions| = |points|` (stops here on failure);
/// 2. the numbers of `S_n`-orbits agree;
/// 3. the node orbit vector equals the solution of `V X = r`.
///
/// Conditions 2 and 3 are both evaluated so a failing pair gets a full
/// diagnosis. When `r` needs stabilizers beyond `limit`, condition 3 is
/// skipped with a notice.
pub fn check_necessary_conditions(b: &BasisSet, s: &NodeSet, limit: EnumLimit) -> Result<NecessaryReport> {
    if b.n() != s.n() {
        return Err(Error::DimensionMismatch {
            expected: b.n(),
            found: s.n(),
        });
    }
    let node_vector = orbit_vector(s)?;
    let mut notices = Vec::new();
    for o in b.orbits() {
        if let OrbitClass::NotRealizable { size } = o.class {
            notices.push(format!(
                "basis orbit of size {size} (containing {}) is not realizable by point orbits",
                b.functions()[o.members[0]]
            ));
        }
    }

    let sizes_ok = b.len() == s.len();
    let mut checks = vec![check(
        Condition::SizeMatch,
        sizes_ok,
        format!("{} functions, {} nodes", b.len(), s.len()),
    )];
    if !sizes_ok {
        checks.push(skipped(Condition::OrbitCount, "not reached"));
        checks.push(skipped(Condition::OrbitVector, "not reached"));
        return Ok(NecessaryReport {
            checks,
            node_vector,
            r: None,
            system: None,
            notices,
        });
    }

    let (fo, no) = (b.orbits().len(), s.orbits().len());
    checks.push(check(
        Condition::OrbitCount,
        fo == no,
        format!("{fo} function orbits, {no} node orbits"),
    ));

    let (r, system) = match r_vector(b, limit) {
        Ok(r) => {
            let v = v_matrix(b.n())?;
            let rhs: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            let system = solve_constraints(&v, &rhs)?;
            let expected: Vec<BigInt> = node_vector.counts.iter().map(|&x| BigInt::from(x)).collect();
            let ok = system.orbit_vector() == Some(expected.as_slice());
            let solution: Vec<String> = system.solution.iter().map(|x| x.to_string()).collect();
            checks.push(check(
                Condition::OrbitVector,
                ok,
                format!(
                    "required orbit vector [{}], nodes have {:?}",
                    solution.join(", "),
                    node_vector.counts
                ),
            ));
            (Some(r), Some(system))
        }
        Err(Error::Capacity { n, limit }) => {
            let msg = format!(
                "r vector needs S_{n} enumeration beyond the limit {limit}; only conditions 1 and 2 were checked"
            );
            checks.push(skipped(Condition::OrbitVector, &msg));
            notices.push(msg);
            (None, None)
        }
        Err(e) => return Err(e),
    };
    Ok(NecessaryReport {
        checks,
        node_vector,
        r,
        system,
        notices,
    })
}

/// Determinant backend for [`analyze`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeterminantMode {
    Exact,
    Float { rel_tol: f64 },
}

/// Combined screen + determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub necessary: NecessaryReport,
    /// Absent when the screen already rules out unisolvence.
    pub unisolvence: Option<UnisolvenceReport>,
}

impl Analysis {
    pub fn is_unisolvent(&self) -> bool {
        self.unisolvence.as_ref().is_some_and(|u| u.is_unisolvent())
    }

    /// Human-readable reasons when not unisolvent.
    pub fn reasons(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .necessary
            .failures()
            .map(|c| c.condition.reason().to_string())
            .collect();
        if let Some(u) = &self.unisolvence {
            match u.verdict {
                Verdict::Unisolvent => {}
                Verdict::Singular => out.push("determinant is zero".into()),
                Verdict::NumericallyIndeterminate => out.push("determinant below numerical threshold".into()),
            }
        }
        out
    }
}

pub fn analyze(b: &BasisSet, s: &NodeSet, limit: EnumLimit, mode: DeterminantMode) -> Result<Analysis> {
    let necessary = check_necessary_conditions(b, s, limit)?;
    if !necessary.satisfied() {
        return Ok(Analysis {
            necessary,
            unisolvence: None,
        });
    }
    let nodes = s.points();
    let unisolvence = match mode {
        DeterminantMode::Exact => vandermonde(b.functions(), nodes)?,
        DeterminantMode::Float { rel_tol } => vandermonde_float(b.functions(), nodes, rel_tol)?,
    };
    Ok(Analysis {
        necessary,
        unisolvence: Some(unisolvence),
    })
}
