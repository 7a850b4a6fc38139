//! Multivariate polynomials with exact rational coefficients, and the
//! variable-permutation action `σf = f ∘ σ⁻¹`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::nodeset::Point;
use crate::rational::parse_rational;
use crate::symcore::Permutation;

/// `x_1^{e_1} .. x_n^{e_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exponents: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.exponents
            .iter()
            .zip(x)
            .filter(|(&e, _)| e > 0)
            .fold(BigRational::one(), |acc, (&e, v)| {
                acc * num_traits::pow(v.clone(), e as usize)
            })
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.exponents.iter().zip(x).map(|(&e, v)| v.powi(e as i32)).product()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{e}", i + 1)
                }
            })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// A polynomial in canonical form: no zero coefficients, terms ordered by
/// exponent vector. Two functions are equal iff their term maps are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisFunction {
    n: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl BasisFunction {
    /// Sums like terms and drops zeros.
    pub fn new(n: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Result<Self> {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            if m.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.n(),
                });
            }
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(BasisFunction { n, terms: map })
    }

    pub fn monomial(exponents: Vec<u32>) -> Self {
        let n = exponents.len();
        BasisFunction {
            n,
            terms: BTreeMap::from([(Monomial::new(exponents), BigRational::one())]),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single exponent vector if this is a bare monomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Point) -> Result<BigRational> {
        if x.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.n(),
            });
        }
        Ok(self.terms.iter().map(|(m, c)| c * m.eval(x.coords())).sum())
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| crate::rational::to_f64(c) * m.eval_f64(x))
            .sum()
    }

    /// Parses shorthand like `"x1^2*x3 - 3/2*x2 + 1"`. For `n <= 3` the
    /// names `x`, `y`, `z` are accepted for `x1`, `x2`, `x3`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let mut terms = Vec::new();
        let mut sign = BigRational::one();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        loop {
            let (term, tail, next_sign) = split_term(rest);
            terms.push(parse_term(n, term.trim(), sign)?);
            match (tail, next_sign) {
                (Some(t), Some(neg)) => {
                    rest = t;
                    sign = if neg { -BigRational::one() } else { BigRational::one() };
                }
                _ => break,
            }
        }
        BasisFunction::new(n, terms)
    }
}

/// Splits at the first top-level `+`/`-` that is not a leading sign.
fn split_term(s: &str) -> (&str, Option<&str>, Option<bool>) {
    let bytes = s.as_bytes();
    let mut seen_content = false;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'+' | b'-'
                if seen_content && !matches!(prev_non_space(bytes, i), Some(b'^' | b'*' | b'/' | b'e' | b'E')) =>
            {
                return (&s[..i], Some(&s[i + 1..]), Some(b == b'-'));
            }
            b' ' => {}
            _ => seen_content = true,
        }
    }
    (s, None, None)
}

fn prev_non_space(bytes: &[u8], i: usize) -> Option<u8> {
    bytes[..i].iter().rev().find(|&&b| b != b' ').copied()
}

fn parse_term(n: usize, term: &str, mut coeff: BigRational) -> Result<(Monomial, BigRational)> {
    let mut term = term.trim();
    while let Some(rest) = term.strip_prefix('-') {
        coeff = -coeff;
        term = rest.trim_start();
    }
    if let Some(rest) = term.strip_prefix('+') {
        term = rest.trim_start();
    }
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut exps = vec![0u32; n];
    for factor in term.split('*') {
        let factor = factor.trim();
        let (base, power) = match factor.split_once('^') {
            Some((b, p)) => (
                b.trim(),
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        if let Some(var) = variable_index(n, base) {
            let var = var?;
            exps[var] += power;
        } else {
            let c = parse_rational(base)?;
            coeff *= num_traits::pow(c, power as usize);
        }
    }
    Ok((Monomial::new(exps), coeff))
}

fn variable_index(n: usize, name: &str) -> Option<Result<usize>> {
    let idx = match name {
        "x" | "y" | "z" if n <= 3 => Some(match name {
            "x" => 1,
            "y" => 2,
            _ => 3,
        }),
        _ => name.strip_prefix('x').and_then(|d| d.parse::<usize>().ok()),
    };
    if idx.is_none() && name.starts_with(|c: char| c.is_ascii_alphabetic()) {
        return Some(Err(Error::Parse(format!("unknown variable {name:?}"))));
    }
    let i = idx?;
    Some(if i == 0 || i > n {
        Err(Error::Parse(format!("variable {name} out of range for n = {n}")))
    } else {
        Ok(i - 1)
    })
}

impl fmt::Display for BasisFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // Highest exponent vector first reads more naturally (x1^2 before x2).
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_one = m.degree() == 0;
            if abs.is_one() {
                write!(f, "{m}")?;
            } else if is_one {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// `σf = f ∘ σ⁻¹`. On a monomial this permutes the exponent vector exactly
/// as `σ` permutes coordinates of a point.
pub fn act_on_function(sigma: &Permutation, f: &BasisFunction) -> Result<BasisFunction> {
    if sigma.n() != f.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            found: sigma.n(),
        });
    }
    let terms = f
        .terms
        .iter()
        .map(|(m, c)| Ok((Monomial::new(sigma.act(&m.exponents)?), c.clone())))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(BasisFunction { n: f.n, terms })
}

/// Integer-coefficient shorthand for tests and examples.
pub fn integer_coeff(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(n: usize, s: &str) -> BasisFunction {
        BasisFunction::parse(n, s).unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(f(3, "x1^2*x3").to_string(), "x1^2*x3");
        assert_eq!(f(3, "x^2"), BasisFunction::monomial(vec![2, 0, 0]));
        assert_eq!(f(3, "x*y"), BasisFunction::monomial(vec![1, 1, 0]));
        assert_eq!(f(2, "x - y").to_string(), "x1 - x2");
        assert_eq!(f(3, "1").to_string(), "1");
        assert_eq!(f(3, "3/2*x2 + 2 - x2").to_string(), "1/2*x2 + 2");
        assert_eq!(f(3, "-x1 + x1").to_string(), "0");
        assert_eq!(f(4, "x1^2*x2 + x2^2*x3").terms().len(), 2);
        assert!(BasisFunction::parse(3, "x4").is_err());
        assert!(BasisFunction::parse(3, "w").is_err());
        assert!(BasisFunction::parse(3, "x1^").is_err());
        assert!(BasisFunction::parse(3, "").is_err());
        assert!(BasisFunction::parse(4, "x").is_err());
    }

    #[test]
    fn action_examples() {
        let id = Permutation::identity(3);
        let g = f(3, "x1^2*x2 - 5*x3");
        assert_eq!(act_on_function(&id, &g).unwrap(), g);

        let swap = Permutation::transposition(3, 1, 2).unwrap();
        assert_eq!(act_on_function(&swap, &f(3, "x^2")).unwrap(), f(3, "y^2"));

        let cyc = Permutation::new(vec![2, 3, 1]).unwrap();
        let h = f(3, "x1^2*x2");
        // exponents (2,1,0) -> (1,0,2)
        assert_eq!(act_on_function(&cyc, &h).unwrap(), f(3, "x1*x3^2"));
        assert!(act_on_function(&Permutation::identity(2), &h).is_err());
    }

    #[test]
    fn action_matches_composition_with_inverse() {
        let sigma = Permutation::new(vec![3, 1, 2]).unwrap();
        let g = f(3, "x1^2*x2 + 2*x3 - x1*x3^3");
        let x = Point::from_integers([2, -3, 5]);
        let lhs = act_on_function(&sigma, &g).unwrap().eval(&x).unwrap();
        let moved = crate::symcore::apply_to_point(&sigma.inverse(), &x).unwrap();
        assert_eq!(lhs, g.eval(&moved).unwrap());
    }

    #[test]
    fn evaluation() {
        let g = f(3, "x1^2 - 1/2*x2*x3");
        let x = Point::from_integers([3, 2, 4]);
        assert_eq!(g.eval(&x).unwrap(), integer_coeff(5));
        assert!((g.eval_f64(&[3.0, 2.0, 4.0]) - 5.0).abs() < 1e-12);
        assert!(g.eval(&Point::from_integers([1, 2])).is_err());
    }
}
