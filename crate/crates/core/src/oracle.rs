//! Exact rational reference path.
//!
//! Interpolants are fitted by fraction-free (Bareiss) elimination on the
//! raw Vandermonde matrix and handled in the monomial basis. Nothing here
//! shares code with the tableaux; it exists to check them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::samples::SampleSet;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("abscissae {first} and {second} are equal")]
    DuplicateNode { first: usize, second: usize },
    #[error("Vandermonde system is singular")]
    SingularSystem,
    #[error("nodes and values differ in length")]
    LengthMismatch,
    #[error("no points given")]
    Empty,
}

/// Exact `f64 -> rational` conversion (every finite double is a dyadic rational).
pub fn rational(v: f64) -> Rational {
    BigRational::from_float(v).expect("finite value")
}

pub fn int(v: i64) -> Rational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest double to a rational.
pub fn to_f64(v: &Rational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Polynomial with exact rational coefficients, ascending degree, no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn value(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `t`-th formal derivative.
    pub fn derivative_poly(&self, t: usize) -> RationalPoly {
        if t >= self.coeffs.len() {
            return RationalPoly::new(Vec::new());
        }
        let coeffs = (t..self.coeffs.len())
            .map(|i| {
                let falling: BigInt = ((i - t + 1)..=i).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
                &self.coeffs[i] * Rational::from_integer(falling)
            })
            .collect();
        RationalPoly::new(coeffs)
    }

    pub fn derivative(&self, x: &Rational, t: usize) -> Rational {
        self.derivative_poly(t).value(x)
    }

    pub fn antiderivative(&self) -> RationalPoly {
        let mut coeffs = vec![Rational::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / int(i as i64 + 1));
        }
        RationalPoly::new(coeffs)
    }

    /// `∫_x^{x+h} p`.
    pub fn integral(&self, x: &Rational, h: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.value(&(x + h)) - anti.value(x)
    }
}

pub fn oracle_value(p: &RationalPoly, x: &Rational) -> Rational {
    p.value(x)
}

pub fn oracle_derivative(p: &RationalPoly, x: &Rational, t: usize) -> Rational {
    p.derivative(x, t)
}

pub fn oracle_integral(p: &RationalPoly, x: &Rational, h: &Rational) -> Rational {
    p.integral(x, h)
}

fn check_distinct(nodes: &[Rational]) -> Result<(), OracleError> {
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(OracleError::DuplicateNode { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// Exact interpolant through `(nodes[j], values[j])`.
pub fn fit_interpolant(nodes: &[Rational], values: &[Rational]) -> Result<RationalPoly, OracleError> {
    if nodes.len() != values.len() {
        return Err(OracleError::LengthMismatch);
    }
    if nodes.is_empty() {
        return Err(OracleError::Empty);
    }
    check_distinct(nodes)?;
    let m = nodes.len();

    // Clear denominators row by row so the augmented system is integral.
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    for (x, f) in nodes.iter().zip(values) {
        let mut row: Vec<Rational> = Vec::with_capacity(m + 1);
        let mut p = Rational::one();
        for _ in 0..m {
            row.push(p.clone());
            p *= x;
        }
        row.push(f.clone());
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        rows.push(
            row.iter()
                .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
                .collect(),
        );
    }

    // Bareiss forward elimination; every division is exact.
    let mut prev = BigInt::one();
    for k in 0..m {
        if rows[k][k].is_zero() {
            let swap = (k + 1..m).find(|&i| !rows[i][k].is_zero()).ok_or(OracleError::SingularSystem)?;
            rows.swap(k, swap);
        }
        for i in k + 1..m {
            for j in k + 1..=m {
                let v = (&rows[i][j] * &rows[k][k] - &rows[i][k] * &rows[k][j]) / &prev;
                rows[i][j] = v;
            }
            rows[i][k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }

    let mut coeffs = vec![Rational::zero(); m];
    for i in (0..m).rev() {
        let mut acc = Rational::from_integer(rows[i][m].clone());
        for j in i + 1..m {
            acc -= Rational::from_integer(rows[i][j].clone()) * &coeffs[j];
        }
        coeffs[i] = acc / Rational::from_integer(rows[i][i].clone());
    }
    Ok(RationalPoly::new(coeffs))
}

/// Interpolant through a float sample set, converted exactly.
pub fn fit_sample_set(set: &SampleSet) -> RationalPoly {
    let nodes: Vec<_> = set.nodes().iter().map(|&v| rational(v)).collect();
    let values: Vec<_> = set.values().iter().map(|&v| rational(v)).collect();
    fit_interpolant(&nodes, &values).expect("sample sets have distinct nodes")
}

/// Divided difference of every listed point, by the plain recursion.
pub fn oracle_divided_difference(points: &[(Rational, Rational)]) -> Result<Rational, OracleError> {
    if points.is_empty() {
        return Err(OracleError::Empty);
    }
    let xs: Vec<Rational> = points.iter().map(|p| p.0.clone()).collect();
    check_distinct(&xs)?;
    Ok(dd(points))
}

fn dd(points: &[(Rational, Rational)]) -> Rational {
    match points {
        [only] => only.1.clone(),
        _ => {
            let k = points.len() - 1;
            (dd(&points[1..]) - dd(&points[..k])) / (&points[k].0 - &points[0].0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn fits() {
        let p = fit_interpolant(&ints(&[0, 1, 2]), &ints(&[0, 1, 4])).unwrap();
        assert_eq!(p, RationalPoly::from_integers(&[0, 0, 1]));
        let p = fit_interpolant(&ints(&[-3, 4, 7]), &ints(&[5, 5, 5])).unwrap();
        assert_eq!(p, RationalPoly::from_integers(&[5]));
        let p = fit_interpolant(&ints(&[1, 2]), &[int(1), ratio(1, 2)]).unwrap();
        assert_eq!(p.coefficients(), &[ratio(3, 2), ratio(-1, 2)]);
    }

    #[test]
    fn fit_with_rational_nodes_reproduces_samples() {
        let xs = vec![ratio(1, 3), ratio(-5, 7), int(2), ratio(9, 4)];
        let fs = vec![ratio(2, 9), int(-1), ratio(11, 5), int(0)];
        let p = fit_interpolant(&xs, &fs).unwrap();
        for (x, f) in xs.iter().zip(&fs) {
            assert_eq!(&p.value(x), f);
        }
    }

    #[test]
    fn duplicate_nodes_rejected() {
        assert_eq!(
            fit_interpolant(&ints(&[1, 1]), &ints(&[0, 1])).unwrap_err(),
            OracleError::DuplicateNode { first: 0, second: 1 }
        );
    }

    #[test]
    fn values_and_derivatives() {
        let p = RationalPoly::new(vec![ratio(3, 2), ratio(-1, 2)]);
        assert_eq!(oracle_value(&p, &int(0)), ratio(3, 2));
        assert_eq!(oracle_derivative(&p, &int(4), 2), int(0));
        let sq = RationalPoly::from_integers(&[0, 0, 1]);
        assert_eq!(oracle_derivative(&sq, &int(0), 2), int(2));
        assert_eq!(oracle_derivative(&sq, &int(3), 1), int(6));
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(RationalPoly::from_integers(&[0, 0]).degree(), None);
    }

    #[test]
    fn integrals() {
        assert_eq!(oracle_integral(&RationalPoly::from_integers(&[0, 1]), &int(0), &int(1)), ratio(1, 2));
        let c = RationalPoly::from_integers(&[7]);
        assert_eq!(oracle_integral(&c, &ratio(1, 3), &ratio(5, 2)), ratio(35, 2));
        assert_eq!(oracle_integral(&RationalPoly::from_integers(&[0, 0, 1]), &int(0), &int(1)), ratio(1, 3));
    }

    #[test]
    fn divided_differences() {
        let pts = vec![(int(0), int(0)), (int(1), int(1)), (int(2), int(4))];
        assert_eq!(oracle_divided_difference(&pts).unwrap(), int(1));
        let pts = vec![(int(3), int(4)), (int(8), int(4))];
        assert_eq!(oracle_divided_difference(&pts).unwrap(), int(0));
        assert_eq!(oracle_divided_difference(&[(int(2), ratio(5, 3))]).unwrap(), ratio(5, 3));
        assert!(oracle_divided_difference(&[(int(2), int(0)), (int(2), int(1))]).is_err());
    }

    #[test]
    fn float_round_trip() {
        for v in [0.1, -3.75, 1e-300, 6.02e23, 0.0, -1.0 / 3.0] {
            assert_eq!(to_f64(&rational(v)), v);
        }
        assert_eq!(to_f64(&ratio(11, 6)), 11.0 / 6.0);
    }
}
